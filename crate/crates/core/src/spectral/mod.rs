//! Eigenvalues, inertia and energies of a graph and of the matrices built
//! from a clique partition, plus the bound suite.

mod bounds;
mod scan;

use serde::{Deserialize, Serialize};

use crate::clique::{
    classify_regularity, clique_signless_laplacian, incidence, CliqueCover, CoverKind,
    IncidenceMode, Regularity,
};
use crate::error::{Error, Result};
use crate::graph::{independence_number, Graph};
use crate::linalg::rational::exact_rank_f64;
use crate::linalg::{singular_values, sym_eigen_with, Matrix};
use crate::tolerances::Tolerances;

pub use bounds::{bound_suite, BoundRecord, Relation};
pub use scan::{scan_partitions, PartitionScan};

/// Eigenvalues in non-increasing order (empty for a 0×0 matrix).
pub fn eigenvalues(s: &Matrix, tol: &Tolerances) -> Result<Vec<f64>> {
    if s.rows() == 0 {
        return Ok(Vec::new());
    }
    Ok(sym_eigen_with(s, tol)?.eigenvalues)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

/// Inertia of a spectrum. With `exact_rank`, the `len - rank` eigenvalues of
/// smallest magnitude are the zeros; otherwise `|λ| <= zero_tol` decides.
pub fn inertia(values: &[f64], exact_rank: Option<usize>, zero_tol: f64) -> Inertia {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&a, &b| values[a].abs().total_cmp(&values[b].abs()));
    let zero = match exact_rank {
        Some(r) => values.len() - r,
        None => values.iter().filter(|v| v.abs() <= zero_tol).count(),
    };
    let rest = &idx[zero..];
    let positive = rest.iter().filter(|&&i| values[i] > 0.0).count();
    Inertia {
        positive,
        negative: rest.len() - positive,
        zero,
    }
}

/// Inertia of an integer symmetric matrix, with the nullity taken from exact
/// rational rank.
pub fn integer_inertia(m: &Matrix, values: &[f64]) -> Inertia {
    let rank = exact_rank_f64(m);
    inertia(values, rank, 1e-9 * (1.0 + m.max_abs()))
}

/// The expressions for the energy of a graph, which must agree.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GraphEnergy {
    pub absolute_sum: f64,
    pub positive_sum: f64,
    pub negative_sum: f64,
    pub max_prefix: f64,
    pub max_suffix: f64,
}

impl GraphEnergy {
    pub fn value(&self) -> f64 {
        self.absolute_sum
    }

    pub fn spread(&self) -> f64 {
        let all = [self.absolute_sum, self.positive_sum, self.negative_sum, self.max_prefix, self.max_suffix];
        let max = all.iter().cloned().fold(f64::MIN, f64::max);
        let min = all.iter().cloned().fold(f64::MAX, f64::min);
        max - min
    }
}

pub fn energy_expressions(values: &[f64]) -> GraphEnergy {
    let absolute_sum = values.iter().map(|x| x.abs()).sum();
    let positive_sum = 2.0 * values.iter().filter(|&&x| x > 0.0).sum::<f64>();
    let negative_sum = -2.0 * values.iter().filter(|&&x| x < 0.0).sum::<f64>();
    let prefix_max = |it: &mut dyn Iterator<Item = f64>| {
        let mut acc = 0.0;
        let mut best = 0.0f64;
        for x in it {
            acc += x;
            best = best.max(acc);
        }
        2.0 * best
    };
    GraphEnergy {
        absolute_sum,
        positive_sum,
        negative_sum,
        max_prefix: prefix_max(&mut values.iter().copied()),
        max_suffix: prefix_max(&mut values.iter().rev().map(|x| -x)),
    }
}

/// Energy of `g`; fails when the expressions disagree by more than `1e-8 n`.
pub fn graph_energy(g: &Graph) -> Result<GraphEnergy> {
    let values = eigenvalues(&g.adjacency_matrix(), &Tolerances::default())?;
    let e = energy_expressions(&values);
    if e.spread() > 1e-8 * g.n().max(1) as f64 {
        return Err(Error::Verification(format!(
            "energy expressions disagree by {:e}",
            e.spread()
        )));
    }
    Ok(e)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EnergyKind {
    /// Sum of singular values.
    SingularSum,
    /// `Σ |x_i − x̄|` over the eigenvalues, `x̄` their mean.
    MeanDeviation,
}

pub fn matrix_energy(b: &Matrix, kind: EnergyKind) -> Result<f64> {
    match kind {
        EnergyKind::SingularSum => Ok(singular_values(b).iter().sum()),
        EnergyKind::MeanDeviation => {
            if !b.is_square() {
                return Err(Error::Dimension(format!(
                    "mean-deviation energy needs a square matrix, got {}x{}",
                    b.rows(),
                    b.cols()
                )));
            }
            let values = eigenvalues(b, &Tolerances::default())?;
            Ok(mean_deviation(&values))
        }
    }
}

pub fn mean_deviation(values: &[f64]) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    values.iter().map(|x| (x - mean).abs()).sum()
}

fn sqrt_sum(values: &[f64]) -> f64 {
    // round-off zeros of a PSD spectrum would otherwise contribute ~1e-8 each
    let scale = values.iter().fold(1.0f64, |a, x| a.max(x.abs()));
    let floor = 1e-12 * scale * values.len().max(1) as f64;
    values.iter().filter(|&&x| x > floor).map(|x| x.sqrt()).sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IncidenceEnergies {
    /// `Σ √q_i`
    pub ie: f64,
    /// `Σ √λ_i(Q_F)`
    pub ie_f: f64,
}

pub fn incidence_energies(g: &Graph, cover: &CliqueCover) -> Result<IncidenceEnergies> {
    if cover.kind() != CoverKind::Partition {
        return Err(Error::InvalidCover("incidence energies need a clique partition".into()));
    }
    if cover.graph() != g {
        return Err(Error::InvalidCover("cover belongs to a different graph".into()));
    }
    let tol = Tolerances::default();
    let q = eigenvalues(&g.signless_laplacian(), &tol)?;
    let inc = incidence(cover, IncidenceMode::Binary, None)?;
    let qf = eigenvalues(&clique_signless_laplacian(&inc).0, &tol)?;
    Ok(IncidenceEnergies {
        ie: sqrt_sum(&q),
        ie_f: sqrt_sum(&qf),
    })
}

/// Largest `τ` with `λ_τ > t̄ + tie` (spectrum sorted non-increasingly).
pub fn tau_index(spectrum: &[f64], t_bar: f64, tie: f64) -> usize {
    spectrum.iter().take_while(|&&x| x > t_bar + tie).count()
}

/// `2 Σ_{i ≤ τ} λ_i − 2 τ t̄`.
pub fn energy_from_tau(spectrum: &[f64], t_bar: f64, tau: usize) -> f64 {
    2.0 * spectrum[..tau].iter().sum::<f64>() - 2.0 * tau as f64 * t_bar
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Energies {
    /// `E(G)`
    pub graph: f64,
    /// `LE⁺(G)`
    pub signless_laplacian: f64,
    /// `IE(G)`
    pub incidence: f64,
    /// `IE_F(G)`
    pub clique_incidence: f64,
    /// `E(Q_F)`
    pub q_f: f64,
    /// `E(R_F)`
    pub r_f: f64,
    /// `E(P_G)`
    pub partition_graph: f64,
    /// `E(L_G)`
    pub line_graph: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CoverSummary {
    pub k: usize,
    pub provenance: String,
    pub cliques: Vec<Vec<usize>>,
    /// Clique degrees, non-increasing.
    pub t: Vec<usize>,
    /// Clique sizes, non-increasing.
    pub s: Vec<usize>,
    pub regularity: Regularity,
    /// Exact rank of the binary incidence matrix.
    pub incidence_rank: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpectralReport {
    pub n: usize,
    pub m: usize,
    pub adjacency_spectrum: Vec<f64>,
    pub signless_spectrum: Vec<f64>,
    pub q_f_spectrum: Vec<f64>,
    pub r_f_spectrum: Vec<f64>,
    pub partition_graph_spectrum: Vec<f64>,
    pub line_graph_spectrum: Vec<f64>,
    pub inertia: Inertia,
    pub partition_graph_inertia: Inertia,
    pub line_graph_inertia: Inertia,
    pub independence_number: usize,
    pub energies: Energies,
    pub tau: usize,
    pub t_bar: f64,
    pub cover: CoverSummary,
    pub bounds: Vec<BoundRecord>,
    pub tolerances: Tolerances,
}

impl SpectralReport {
    pub fn failed_bounds(&self) -> Vec<&BoundRecord> {
        self.bounds.iter().filter(|b| b.applicable && !b.holds).collect()
    }

    pub fn all_bounds_hold(&self) -> bool {
        self.failed_bounds().is_empty()
    }

    pub fn bound(&self, id: &str) -> Option<&BoundRecord> {
        self.bounds.iter().find(|b| b.theorem_id == id)
    }
}

/// Every quantity used by the bound suite, computed once.
#[derive(Debug, Clone)]
pub(crate) struct Quantities {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub lambda: Vec<f64>,
    pub q: Vec<f64>,
    pub qf: Vec<f64>,
    pub rf: Vec<f64>,
    pub pg: Vec<f64>,
    pub lg: Vec<f64>,
    pub inertia: Inertia,
    pub pg_inertia: Inertia,
    pub lg_inertia: Inertia,
    pub alpha: usize,
    pub rank_mf: usize,
    pub t: Vec<usize>,
    pub s: Vec<usize>,
    pub d: Vec<usize>,
    pub t_bar: f64,
    pub tau: usize,
    pub regularity: Regularity,
    pub is_edge_partition: bool,
    pub energies: Energies,
}

pub(crate) fn quantities(g: &Graph, cover: &CliqueCover, tol: &Tolerances) -> Result<Quantities> {
    if cover.kind() != CoverKind::Partition {
        return Err(Error::InvalidCover("the bound suite needs a clique partition".into()));
    }
    if cover.graph() != g {
        return Err(Error::InvalidCover("cover belongs to a different graph".into()));
    }
    let n = g.n();
    let a = g.adjacency_matrix();
    let lambda = eigenvalues(&a, tol)?;
    let q = eigenvalues(&g.signless_laplacian(), tol)?;
    let inc = incidence(cover, IncidenceMode::Binary, None)?;
    let (qf_m, rf_m) = clique_signless_laplacian(&inc);
    let qf = eigenvalues(&qf_m, tol)?;
    let rf = eigenvalues(&rf_m, tol)?;
    let pg_graph = cover.partition_graph();
    let pg_a = pg_graph.adjacency_matrix();
    let pg = eigenvalues(&pg_a, tol)?;
    let lg_graph = g.line_graph();
    let lg_a = lg_graph.adjacency_matrix();
    let lg = eigenvalues(&lg_a, tol)?;

    let t_unsorted = cover.clique_degrees();
    let t_bar = if n == 0 { 0.0 } else { t_unsorted.iter().sum::<usize>() as f64 / n as f64 };
    let tau = tau_index(&qf, t_bar, tol.tau_tie);
    let is_edge_partition = cover.k() == g.m() && cover.sizes().iter().all(|&s| s == 2);

    let energies = Energies {
        graph: energy_expressions(&lambda).value(),
        signless_laplacian: mean_deviation(&q),
        incidence: sqrt_sum(&q),
        clique_incidence: sqrt_sum(&qf),
        q_f: mean_deviation(&qf),
        r_f: mean_deviation(&rf),
        partition_graph: energy_expressions(&pg).value(),
        line_graph: energy_expressions(&lg).value(),
    };
    Ok(Quantities {
        n,
        m: g.m(),
        k: cover.k(),
        inertia: integer_inertia(&a, &lambda),
        pg_inertia: integer_inertia(&pg_a, &pg),
        lg_inertia: integer_inertia(&lg_a, &lg),
        lambda,
        q,
        qf,
        rf,
        pg,
        lg,
        alpha: independence_number(g)?,
        rank_mf: exact_rank_f64(&inc.matrix).expect("binary incidence is integral"),
        t: cover.t_sorted(),
        s: cover.s_sorted(),
        d: g.degree_sequence(),
        t_bar,
        tau,
        regularity: classify_regularity(cover),
        is_edge_partition,
        energies,
    })
}

/// Full spectral report of `g` with respect to the clique partition `cover`.
pub fn spectral_report(g: &Graph, cover: &CliqueCover, tol: &Tolerances) -> Result<SpectralReport> {
    let qs = quantities(g, cover, tol)?;
    let bounds = bounds::evaluate(&qs, tol);
    Ok(SpectralReport {
        n: qs.n,
        m: qs.m,
        adjacency_spectrum: qs.lambda.clone(),
        signless_spectrum: qs.q.clone(),
        q_f_spectrum: qs.qf.clone(),
        r_f_spectrum: qs.rf.clone(),
        partition_graph_spectrum: qs.pg.clone(),
        line_graph_spectrum: qs.lg.clone(),
        inertia: qs.inertia,
        partition_graph_inertia: qs.pg_inertia,
        line_graph_inertia: qs.lg_inertia,
        independence_number: qs.alpha,
        energies: qs.energies,
        tau: qs.tau,
        t_bar: qs.t_bar,
        cover: CoverSummary {
            k: qs.k,
            provenance: cover.provenance().to_string(),
            cliques: cover.cliques().to_vec(),
            t: qs.t.clone(),
            s: qs.s.clone(),
            regularity: qs.regularity.clone(),
            incidence_rank: qs.rank_mf,
        },
        bounds,
        tolerances: *tol,
    })
}

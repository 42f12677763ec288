use serde::{Deserialize, Serialize};

use super::{energy_expressions, energy_from_tau, quantities, Quantities};
use crate::clique::CliqueCover;
use crate::error::Result;
use crate::graph::Graph;
use crate::tolerances::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    /// `lhs ≤ rhs`, slack `rhs − lhs`
    Le,
    /// `lhs ≥ rhs`, slack `lhs − rhs`
    Ge,
    /// `lhs < rhs` by more than the inequality slack
    Lt,
    /// `lhs = rhs`, slack `|lhs − rhs|`
    Eq,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RecordTolerances {
    pub inequality_slack: f64,
    pub equality: f64,
}

/// One evaluated bound. Records whose preconditions fail are kept with
/// `applicable = false` and hold vacuously.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundRecord {
    pub theorem_id: String,
    pub statement: String,
    pub relation: Relation,
    pub lhs: Option<f64>,
    pub rhs: Option<f64>,
    pub slack: Option<f64>,
    pub holds: bool,
    pub applicable: bool,
    /// Inequality attained within the equality tolerance.
    pub tight: bool,
    /// Worst index for indexed families, or why the record does not apply.
    pub note: String,
    pub tolerances: RecordTolerances,
}

struct Suite<'a> {
    tol: &'a Tolerances,
    out: Vec<BoundRecord>,
}

impl Suite<'_> {
    fn rt(&self) -> RecordTolerances {
        RecordTolerances {
            inequality_slack: self.tol.inequality_slack,
            equality: self.tol.equality,
        }
    }

    fn eq_tol(&self, lhs: f64, rhs: f64) -> f64 {
        self.tol.equality * (1.0 + lhs.abs().max(rhs.abs()))
    }

    fn slack(rel: Relation, lhs: f64, rhs: f64) -> f64 {
        match rel {
            Relation::Le | Relation::Lt => rhs - lhs,
            Relation::Ge => lhs - rhs,
            Relation::Eq => (lhs - rhs).abs(),
        }
    }

    fn push(&mut self, id: &str, statement: &str, rel: Relation, lhs: f64, rhs: f64, note: String) {
        let slack = Self::slack(rel, lhs, rhs);
        let eq_tol = self.eq_tol(lhs, rhs);
        let holds = match rel {
            Relation::Le | Relation::Ge => slack >= -self.tol.inequality_slack,
            Relation::Lt => slack > self.tol.inequality_slack,
            Relation::Eq => slack <= eq_tol,
        };
        let tight = rel != Relation::Eq && slack.abs() <= eq_tol;
        let rt = self.rt();
        self.out.push(BoundRecord {
            theorem_id: id.into(),
            statement: statement.into(),
            relation: rel,
            lhs: Some(lhs),
            rhs: Some(rhs),
            slack: Some(slack),
            holds,
            applicable: true,
            tight,
            note,
            tolerances: rt,
        });
    }

    fn na(&mut self, id: &str, statement: &str, rel: Relation, reason: &str) {
        let rt = self.rt();
        self.out.push(BoundRecord {
            theorem_id: id.into(),
            statement: statement.into(),
            relation: rel,
            lhs: None,
            rhs: None,
            slack: None,
            holds: true,
            applicable: false,
            tight: false,
            note: reason.into(),
            tolerances: rt,
        });
    }

    /// Evaluate an indexed family (`i` is 1-based) and keep the worst case.
    fn family(
        &mut self,
        id: &str,
        statement: &str,
        rel: Relation,
        range: impl IntoIterator<Item = usize>,
        empty_reason: &str,
        mut term: impl FnMut(usize) -> (f64, f64),
    ) {
        let mut worst: Option<(usize, f64, f64, f64)> = None;
        for i in range {
            let (l, r) = term(i);
            let s = Self::slack(rel, l, r);
            let badness = if rel == Relation::Eq { s - self.eq_tol(l, r) } else { -s };
            if worst.is_none_or(|w| badness > w.3) {
                worst = Some((i, l, r, badness));
            }
        }
        match worst {
            Some((i, l, r, _)) => self.push(id, statement, rel, l, r, format!("worst at i = {i}")),
            None => self.na(id, statement, rel, empty_reason),
        }
    }

    fn cond(&mut self, ok: bool, id: &str, statement: &str, rel: Relation, reason: &str, f: impl FnOnce() -> (f64, f64)) {
        if ok {
            let (l, r) = f();
            self.push(id, statement, rel, l, r, String::new());
        } else {
            self.na(id, statement, rel, reason);
        }
    }
}

fn sum_first(v: &[usize], count: usize) -> f64 {
    v.iter().take(count).sum::<usize>() as f64
}

/// Evaluate every bound of the suite for `g` and the clique partition `cover`.
pub fn bound_suite(g: &Graph, cover: &CliqueCover, tol: &Tolerances) -> Result<Vec<BoundRecord>> {
    Ok(evaluate(&quantities(g, cover, tol)?, tol))
}

pub(crate) fn evaluate(qs: &Quantities, tol: &Tolerances) -> Vec<BoundRecord> {
    use Relation::*;
    let mut s = Suite { tol, out: Vec::new() };
    let (n, k, m) = (qs.n, qs.k, qs.m);
    let lam = |i: usize| qs.lambda[i - 1];
    let t = |i: usize| qs.t[i - 1] as f64;
    let sz = |i: usize| qs.s[i - 1] as f64;
    let pg = |i: usize| qs.pg[i - 1];
    let nu_minus = qs.inertia.negative;
    let nu_plus = qs.inertia.positive;
    let pg_minus = qs.pg_inertia.negative;
    let regular = qs.regularity.clique_regular;
    let uniform = qs.regularity.clique_uniform;
    let e_g = qs.energies.graph;
    let rank = qs.rank_mf;
    let min_nk = n.min(k);

    // (a)
    s.cond(n >= 1, "thm1", "λ_n(G) ≥ −t_1", Ge, "empty graph", || (lam(n), -t(1)));
    let thm1_tight = s.out.last().is_some_and(|r| r.applicable && r.tight);
    s.cond(thm1_tight, "thm1.rank_if_equal", "λ_n(G) = −t_1 ⇒ rank(𝓜_F) < n", Le, "λ_n(G) > −t_1", || {
        (rank as f64, n as f64 - 1.0)
    });
    s.cond(
        regular.is_some() && rank < n,
        "thm1.equality_if_regular",
        "clique-regular and rank(𝓜_F) < n ⇒ λ_n(G) = −t_1",
        Eq,
        "not clique-regular or rank(𝓜_F) = n",
        || (lam(n), -t(1)),
    );
    s.family("pro2.shared", "λ_i(Q_F) = λ_i(R_F), i ≤ min(n,k)", Eq, 1..=min_nk, "min(n,k) = 0", |i| {
        (qs.qf[i - 1], qs.rf[i - 1])
    });
    if k > n {
        s.family("pro2.tail", "λ_i(R_F) = 0 for i > n", Eq, n + 1..=k, "", |i| (qs.rf[i - 1], 0.0));
    } else {
        s.family("pro2.tail", "λ_i(Q_F) = 0 for i > k", Eq, k + 1..=n, "n = k", |i| (qs.qf[i - 1], 0.0));
    }

    // (b)
    s.family("thm6", "λ_{n−i+1}(G) ≥ −t_i, i ≤ ν⁻", Ge, 1..=nu_minus, "ν⁻ = 0", |i| (lam(n - i + 1), -t(i)));
    if regular.is_some() && nu_minus == n.saturating_sub(k) && nu_minus > 0 {
        s.family("thm6.equality", "clique-regular and ν⁻ = n − |F| ⇒ λ_{n−i+1}(G) = −t_i", Eq, 1..=nu_minus, "", |i| {
            (lam(n - i + 1), -t(i))
        });
    } else {
        s.na("thm6.equality", "clique-regular and ν⁻ = n − |F| ⇒ λ_{n−i+1}(G) = −t_i", Eq, "side condition fails");
    }

    // (c)
    let no_isolated = n > 0 && t(n) >= 1.0;
    // an isolated vertex lowers the rank without adding a negative eigenvalue
    s.cond(no_isolated, "thm3.inertia", "ν⁻(G) ≥ n − rank(𝓜_F)", Ge, "G has an isolated vertex", || {
        (nu_minus as f64, n as f64 - rank as f64)
    });
    s.family("thm3.window_lower", "λ_i(G) ≥ −t_1 for i > rank(𝓜_F)", Ge, rank + 1..=n, "rank(𝓜_F) = n", |i| {
        (lam(i), -t(1))
    });
    s.family("thm3.window_upper", "λ_i(G) ≤ −t_n for i > rank(𝓜_F)", Le, rank + 1..=n, "rank(𝓜_F) = n", |i| {
        (lam(i), -t(n))
    });

    // (d)
    s.cond(n > k && no_isolated, "thm2.inertia", "n > |F| ⇒ ν⁻(G) ≥ n − |F|", Ge, "n ≤ |F| or G has an isolated vertex", || {
        (nu_minus as f64, (n - k) as f64)
    });
    s.family("thm2.window_lower", "n > |F| ⇒ λ_i(G) ≥ −t_1 for i > |F|", Ge, k + 1..=n, "n ≤ |F|", |i| {
        (lam(i), -t(1))
    });
    s.family("thm2.window_upper", "n > |F| ⇒ λ_i(G) ≤ −t_n for i > |F|", Le, k + 1..=n, "n ≤ |F|", |i| {
        (lam(i), -t(n))
    });

    // (e)
    let alpha = qs.alpha as f64;
    s.push("alpha.nu_minus", "α(G) ≤ n − ν⁻", Le, alpha, (n - nu_minus) as f64, String::new());
    s.push("alpha.nu_plus", "α(G) ≤ n − ν⁺", Le, alpha, (n - nu_plus) as f64, String::new());
    s.push("inertia.alpha", "ν⁻(G) ≤ n − α(G)", Le, nu_minus as f64, n as f64 - alpha, String::new());
    s.cond(
        rank == qs.alpha && no_isolated,
        "rank_alpha.equality",
        "rank(𝓜_F) = α ⇒ ν⁻(G) = n − α",
        Eq,
        "rank(𝓜_F) ≠ α or G has an isolated vertex",
        || (nu_minus as f64, n as f64 - alpha),
    );

    // (f)
    s.cond(k >= 1, "thm10", "λ_k(P_G) ≥ −s_1", Ge, "empty partition", || (pg(k), -sz(1)));
    s.cond(
        uniform.is_some() && k > n,
        "thm10.equality",
        "s_1 clique-uniform and k > n ⇒ λ_k(P_G) = −s_1",
        Eq,
        "not clique-uniform or k ≤ n",
        || (pg(k), -sz(1)),
    );
    s.family("eq31", "λ_{k−i+1}(P_G) ≥ −s_i, i ≤ ν⁻(P_G)", Ge, 1..=pg_minus, "ν⁻(P_G) = 0", |i| {
        (pg(k - i + 1), -sz(i))
    });
    if uniform.is_some() && pg_minus > 0 && k >= n && pg_minus == k - n {
        s.family("eq31.equality", "clique-uniform and ν⁻(P_G) = k − n ⇒ λ_{k−i+1}(P_G) = −s_i", Eq, 1..=pg_minus, "", |i| {
            (pg(k - i + 1), -sz(i))
        });
    } else {
        s.na("eq31.equality", "clique-uniform and ν⁻(P_G) = k − n ⇒ λ_{k−i+1}(P_G) = −s_i", Eq, "side condition fails");
    }
    s.family("k_gt_n.window_lower", "k > n ⇒ λ_i(P_G) ≥ −s_1 for i > n", Ge, n + 1..=k, "k ≤ n", |i| {
        (pg(i), -sz(1))
    });
    s.family("k_gt_n.window_upper", "k > n ⇒ λ_i(P_G) ≤ −s_k for i > n", Le, n + 1..=k, "k ≤ n", |i| {
        (pg(i), -sz(k))
    });
    s.cond(k > n, "k_gt_n.inertia", "k > n ⇒ ν⁻(P_G) ≥ k − n", Ge, "k ≤ n", || {
        (pg_minus as f64, (k - n) as f64)
    });

    // (g)
    match regular {
        Some(tr) => s.family("signless.t", "t clique-regular ⇒ q_i − λ_i(G) ≥ t", Ge, 1..=min_nk, "min(n,k) = 0", |i| {
            (qs.q[i - 1] - lam(i), tr as f64)
        }),
        None => s.na("signless.t", "t clique-regular ⇒ q_i − λ_i(G) ≥ t", Ge, "not clique-regular"),
    }
    match uniform {
        Some(su) => s.family("signless.s", "s clique-uniform ⇒ q_i − λ_i(P_G) ≥ s", Ge, 1..=min_nk, "min(n,k) = 0", |i| {
            (qs.q[i - 1] - pg(i), su as f64)
        }),
        None => s.na("signless.s", "s clique-uniform ⇒ q_i − λ_i(P_G) ≥ s", Ge, "not clique-uniform"),
    }

    // (h)
    s.family("line.shared", "q_i(G) = 2 + λ_i(L_G), i ≤ min(n,m)", Eq, 1..=n.min(m), "no edges", |i| {
        (qs.q[i - 1], 2.0 + qs.lg[i - 1])
    });
    s.family("line.tail_edges", "m > n ⇒ λ_i(L_G) = −2 for i > n", Eq, n + 1..=m, "m ≤ n", |i| {
        (qs.lg[i - 1], -2.0)
    });
    s.family("line.tail_vertices", "n > m ⇒ q_i(G) = 0 for i > m", Eq, m + 1..=n, "n ≤ m", |i| {
        (qs.q[i - 1], 0.0)
    });

    // (i)
    match qs.regularity.st_regular {
        Some((ss, tt)) => {
            let (ss, tt) = (ss as f64, tt as f64);
            s.family("pro1.shared", "(s,t) regular ⇒ λ_i(G) − λ_i(P_G) = s − t", Eq, 1..=min_nk, "min(n,k) = 0", |i| {
                (lam(i) - pg(i), ss - tt)
            });
            s.family("pro1.tail_cliques", "(s,t) regular, n < k ⇒ λ_i(P_G) = −s for i > n", Eq, n + 1..=k, "k ≤ n", |i| {
                (pg(i), -ss)
            });
            s.family("pro1.tail_vertices", "(s,t) regular, k < n ⇒ λ_i(G) = −t for i > k", Eq, k + 1..=n, "n ≤ k", |i| {
                (lam(i), -tt)
            });
        }
        None => {
            for id in ["pro1.shared", "pro1.tail_cliques", "pro1.tail_vertices"] {
                s.na(id, "(s,t) regular identities", Eq, "not (s,t) regular");
            }
        }
    }

    // (j)
    s.push("thm7", "E(G) ≤ 2 Σ_{i≤ν⁻} t_i", Le, e_g, 2.0 * sum_first(&qs.t, nu_minus), String::new());
    s.cond(
        regular.is_some() && k + nu_minus == n,
        "thm7.equality",
        "clique-regular and |F| = n − ν⁻ ⇒ E(G) = 2 Σ_{i≤ν⁻} t_i",
        Eq,
        "side condition fails",
        || (e_g, 2.0 * sum_first(&qs.t, nu_minus)),
    );
    let h = nu_plus.min(nu_minus);
    s.push("thm8", "E(G) ≤ 2 Σ_{i≤h} d_i, h = min(ν⁺, ν⁻)", Le, e_g, 2.0 * sum_first(&qs.d, h), String::new());
    let na = qs.n - qs.alpha;
    s.push("alpha_energy.clique", "E(G) ≤ 2 Σ_{i≤n−α} t_i", Le, e_g, 2.0 * sum_first(&qs.t, na), String::new());
    s.push(
        "alpha_energy.degree",
        "2 Σ_{i≤n−α} t_i ≤ 2 Σ_{i≤n−α} d_i",
        Le,
        2.0 * sum_first(&qs.t, na),
        2.0 * sum_first(&qs.d, na),
        String::new(),
    );

    // (k)
    let e_pg = qs.energies.partition_graph;
    s.push("thm9", "E(P_G) ≤ 2 Σ_{i≤ν⁻(P_G)} s_i", Le, e_pg, 2.0 * sum_first(&qs.s, pg_minus), String::new());
    s.cond(
        uniform.is_some() && k == n + pg_minus,
        "thm9.equality",
        "clique-uniform and |F| = n + ν⁻(P_G) ⇒ E(P_G) = 2 Σ s_i",
        Eq,
        "side condition fails",
        || (e_pg, 2.0 * sum_first(&qs.s, pg_minus)),
    );

    // (l)
    let e_qf = qs.energies.q_f;
    let dev: f64 = qs.t.iter().map(|&x| (x as f64 - qs.t_bar).abs()).sum();
    s.push("qf_deviation", "E(Q_F) − E(G) ≤ Σ |t_i − t̄|", Le, e_qf - e_g, dev, String::new());
    s.cond(regular.is_some(), "thm4", "clique-regular ⇒ E(Q_F) = E(G)", Eq, "not clique-regular", || (e_qf, e_g));
    s.cond(uniform.is_some(), "thm5", "clique-uniform ⇒ E(R_F) = E(P_G)", Eq, "not clique-uniform", || {
        (qs.energies.r_f, e_pg)
    });
    s.cond(n >= 1, "equ7.tau", "E(Q_F) = 2 Σ_{i≤τ} λ_i(Q_F) − 2τ t̄", Eq, "empty graph", || {
        (e_qf, energy_from_tau(&qs.qf, qs.t_bar, qs.tau))
    });
    s.cond(n >= 1, "equ7.max", "E(Q_F) = max_j {2 Σ_{i≤j} λ_i(Q_F) − 2j t̄}", Eq, "empty graph", || {
        let shifted: Vec<f64> = qs.qf.iter().map(|x| x - qs.t_bar).collect();
        (e_qf, energy_expressions(&shifted).max_prefix)
    });
    match uniform {
        Some(su) => s.family("lem5", "s clique-uniform ⇒ λ_i(Q_F) = λ_i(P_G) + s", Eq, 1..=min_nk, "min(n,k) = 0", |i| {
            (qs.qf[i - 1], pg(i) + su as f64)
        }),
        None => s.na("lem5", "s clique-uniform ⇒ λ_i(Q_F) = λ_i(P_G) + s", Eq, "not clique-uniform"),
    }

    // (m)
    let m_stmt = "s clique-uniform: E(P_G) vs E(Q_F) + 2ks/n − 2s";
    match uniform {
        Some(su) if n > 0 => {
            let su = su as f64;
            let rhs = e_qf + 2.0 * k as f64 * su / n as f64 - 2.0 * su;
            let (id, rel) = match k.cmp(&n) {
                std::cmp::Ordering::Less => ("pg_qf.k_lt_n", Le),
                std::cmp::Ordering::Greater => ("pg_qf.k_gt_n", Ge),
                std::cmp::Ordering::Equal => ("pg_qf.k_eq_n", Eq),
            };
            if rel == Eq {
                s.push(id, "s clique-uniform, k = n ⇒ E(P_G) = E(Q_F)", Eq, e_pg, e_qf, String::new());
            } else {
                s.push(id, m_stmt, rel, e_pg, rhs, String::new());
            }
        }
        _ => s.na("pg_qf", m_stmt, Le, "not clique-uniform"),
    }

    // (n)
    s.push(
        "equ10",
        "E(L_G) ≤ 4 ν⁻(L_G)",
        Le,
        qs.energies.line_graph,
        4.0 * qs.lg_inertia.negative as f64,
        String::new(),
    );

    // incidence energies
    let (ie, ie_f) = (qs.energies.incidence, qs.energies.clique_incidence);
    s.push("ie_f.le_ie", "IE_F(G) ≤ IE(G)", Le, ie_f, ie, String::new());
    if qs.is_edge_partition {
        s.push("ie_f.equality", "F = E ⇒ IE_F(G) = IE(G)", Eq, ie_f, ie, String::new());
    } else {
        s.push("ie_f.equality", "F ≠ E ⇒ IE_F(G) < IE(G)", Lt, ie_f, ie, String::new());
    }
    let sqrt_t: f64 = qs.t.iter().map(|&x| (x as f64).sqrt()).sum();
    s.push("ie_f.sqrt_t", "IE_F(G) ≤ Σ √t_i", Le, ie_f, sqrt_t, String::new());

    s.out
}

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::gram::{gram_complete, GramTarget};
use super::{Provenance, Q2Certificate};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::{gram_schmidt_columns, pattern_of, Matrix};
use crate::tolerances::Tolerances;

fn sqrt<T: Into<f64>>(x: T) -> f64 {
    x.into().sqrt()
}

/// Entry as `(printed expression, value)`.
macro_rules! x {
    ($e:expr) => {
        (stringify!($e).replace(' ', ""), ($e) as f64)
    };
}

type Printed = Vec<Vec<(String, f64)>>;

fn split(rows: Printed) -> (Matrix, Vec<Vec<String>>) {
    let m = Matrix::from_fn(rows.len(), rows.first().map_or(0, |r| r.len()), |i, j| rows[i][j].1);
    let s = rows.into_iter().map(|r| r.into_iter().map(|e| e.0).collect()).collect();
    (m, s)
}

fn int_rows(rows: &[&[i64]]) -> Printed {
    rows.iter().map(|r| r.iter().map(|&v| (v.to_string(), v as f64)).collect()).collect()
}

fn named(name: &str) -> Provenance {
    Provenance::PrintedConstruction { name: name.into() }
}

/// Rank-one projection `(1/n) J`, realizing `K_n`.
pub fn construct_complete(n: usize, tol: &Tolerances) -> Result<Q2Certificate> {
    if n < 2 {
        return Err(Error::InvalidParameters("K_n needs n ≥ 2".into()));
    }
    let v = 1.0 / (n as f64).sqrt();
    let m = Matrix::from_fn(n, 1, |_, _| v);
    let exact = vec![vec![format!("1/sqrt({n})")]; n];
    Ok(Q2Certificate::new(Graph::complete(n)?, m, named("complete"), tol)?.with_exact_entries(exact))
}

fn prism_blocks(s: usize) -> (Vec<Vec<i64>>, Vec<Vec<i64>>) {
    let s_i = s as i64;
    let m1 = (0..s).map(|i| (0..s).map(|j| if i == j { 2 - s_i } else { 1 }).collect()).collect();
    let m2 = (0..s).map(|i| (0..s).map(|j| i64::from(i != j)).collect()).collect();
    (m1, m2)
}

fn from_int_blocks(blocks: &[Vec<Vec<i64>>]) -> (Matrix, Vec<Vec<String>>) {
    let rows: Vec<&[i64]> = blocks.iter().flat_map(|b| b.iter().map(|r| r.as_slice())).collect();
    split(int_rows(&rows))
}

/// `K_s □ K_2` from `M₁ = J − (s−1)I` over `M₂ = J − I`; `c = s² − 2s + 2`.
pub fn construct_prism(s: usize, tol: &Tolerances) -> Result<Q2Certificate> {
    if s < 3 {
        return Err(Error::InvalidParameters(format!("prism needs s ≥ 3, got {s}")));
    }
    let (m1, m2) = prism_blocks(s);
    let (m, exact) = from_int_blocks(&[m1, m2]);
    // copies are 0..s and s..2s, rung i ~ s+i
    let target = Graph::from_fn(2 * s, |u, v| (u < s) == (v < s) || u.abs_diff(v) == s);
    Ok(Q2Certificate::new(target, m, named(&format!("prism(s={s})")), tol)?.with_exact_entries(exact))
}

/// `(K_s □ K_2) ∨ sK_1` minus a perfect matching from the added vertices
/// into one copy of `K_s`; `c = s² − 2s + 3`.
pub fn construct_prism_join(s: usize, tol: &Tolerances) -> Result<Q2Certificate> {
    if s < 3 {
        return Err(Error::InvalidParameters(format!("prism join needs s ≥ 3, got {s}")));
    }
    let (m1, m2) = prism_blocks(s);
    let id: Vec<Vec<i64>> = (0..s).map(|i| (0..s).map(|j| i64::from(i == j)).collect()).collect();
    let (m, exact) = from_int_blocks(&[m1, m2, id]);
    let part = |v: usize| v / s;
    let target = Graph::from_fn(3 * s, |u, v| match (part(u), part(v)) {
        (2, 2) => false,
        (a, b) if a == b => true,
        (0, 1) | (1, 0) => u % s == v % s,
        // added vertex i misses vertex i of the second copy
        (1, 2) | (2, 1) => u % s != v % s,
        _ => true,
    });
    Ok(Q2Certificate::new(target, m, named(&format!("prism-join(s={s})")), tol)?.with_exact_entries(exact))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FixedName {
    T1,
    K13K3,
    H2N7,
    BullJoin,
    C5Join,
    K3Star(usize),
    Fig414,
}

pub const FIXED_NAMES: [&str; 7] = ["T1", "K13_K3", "H2_n7", "bull_join", "C5_join", "K3_star(n)", "fig414"];

impl fmt::Display for FixedName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FixedName::T1 => write!(f, "T1"),
            FixedName::K13K3 => write!(f, "K13_K3"),
            FixedName::H2N7 => write!(f, "H2_n7"),
            FixedName::BullJoin => write!(f, "bull_join"),
            FixedName::C5Join => write!(f, "C5_join"),
            FixedName::K3Star(n) => write!(f, "K3_star({n})"),
            FixedName::Fig414 => write!(f, "fig414"),
        }
    }
}

impl FromStr for FixedName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        Ok(match lower.as_str() {
            "t1" => FixedName::T1,
            "k13_k3" => FixedName::K13K3,
            "h2_n7" => FixedName::H2N7,
            "bull_join" => FixedName::BullJoin,
            "c5_join" => FixedName::C5Join,
            "fig414" => FixedName::Fig414,
            other => {
                let n = other
                    .strip_prefix("k3_star(")
                    .and_then(|r| r.strip_suffix(')'))
                    .or_else(|| other.strip_prefix("k3_star:"))
                    .and_then(|n| n.parse().ok())
                    .ok_or_else(|| Error::UnknownName(format!("'{s}'; known: {}", FIXED_NAMES.join(", "))))?;
                FixedName::K3Star(n)
            }
        })
    }
}

impl FixedName {
    /// Graphs whose complements are realized, as stated in the text.
    pub fn complement_edges(&self) -> Vec<(usize, usize)> {
        match *self {
            FixedName::T1 => vec![(0, 3), (0, 6), (1, 5), (1, 6), (2, 4), (2, 6)],
            FixedName::K13K3 => vec![(0, 1), (0, 2), (1, 2), (3, 5), (4, 5), (5, 6)],
            FixedName::H2N7 => vec![(0, 2), (0, 6), (1, 6), (2, 6)],
            FixedName::BullJoin => vec![(0, 3), (0, 4), (1, 3), (2, 4), (2, 5), (3, 4)],
            FixedName::C5Join => vec![(0, 3), (0, 4), (1, 2), (1, 4), (2, 3), (2, 5)],
            FixedName::K3Star(n) => {
                let mut e = vec![(0, 1), (0, 2), (1, 2)];
                e.extend((4..n).map(|leaf| (3, leaf)));
                e
            }
            FixedName::Fig414 => vec![(0, 1), (0, 2), (0, 3), (0, 4), (1, 7), (2, 7), (3, 4)],
        }
    }

    pub fn order(&self) -> usize {
        match *self {
            FixedName::T1 | FixedName::K13K3 | FixedName::H2N7 => 7,
            FixedName::BullJoin | FixedName::C5Join | FixedName::Fig414 => 8,
            FixedName::K3Star(n) => n,
        }
    }

    pub fn target(&self) -> Result<Graph> {
        Ok(Graph::from_edges(self.order(), &self.complement_edges())?.complement())
    }

    /// Matrix as printed, before any Gram–Schmidt step.
    pub fn printed(&self) -> Printed {
        match *self {
            FixedName::T1 => int_rows(&[
                &[1, -2, 2, 1],
                &[2, -1, -2, 2],
                &[2, 2, 1, 2],
                &[1, 2, 2, 0],
                &[-2, -1, 2, 0],
                &[2, -2, 1, 0],
                &[1, 0, 0, 0],
            ]),
            FixedName::K13K3 => vec![
                vec![x!(1), x!(2), x!(2)],
                vec![x!(2), x!(1), x!(-2)],
                vec![x!(2), x!(-2), x!(1)],
                vec![x!(1), x!(1), x!(1)],
                vec![x!(1), x!(-1), x!(1)],
                vec![x!(-sqrt(2)), x!(0), x!(sqrt(2))],
                vec![x!(0), x!(sqrt(2)), x!(0)],
            ],
            FixedName::H2N7 => int_rows(&[
                &[1, -2, 1],
                &[2, -1, 2],
                &[2, 2, 2],
                &[1, 2, 0],
                &[-2, -1, 0],
                &[2, -2, 0],
                &[1, 0, 0],
            ]),
            FixedName::BullJoin => vec![
                vec![x!(1), x!(0), x!(0)],
                vec![x!(1), x!(0), x!(1)],
                vec![x!(1), x!(1), x!(0)],
                vec![x!(0), x!(sqrt(2)), x!(0)],
                vec![x!(0), x!(0), x!(sqrt(2))],
                vec![x!(1), x!(-1), x!((2. * sqrt(51) - 1.) / 7.)],
                vec![x!(-1), x!(2), x!((6. * sqrt(51) + 4.) / 35.)],
                vec![x!(2), x!(1), x!(-(2. * sqrt(51) + 13.) / 35.)],
            ],
            FixedName::C5Join => vec![
                vec![x!(1), x!(0), x!(0)],
                vec![x!(1), x!(1), x!(0)],
                vec![x!(-1), x!(1), x!(1)],
                vec![x!(0), x!(-1), x!(1)],
                vec![x!(0), x!(0), x!(1)],
                vec![x!(1. / sqrt(3)), x!(0), x!(1. / sqrt(3))],
                vec![x!(1. / sqrt(3)), x!(1. / sqrt(2)), x!(1. / sqrt(3))],
                vec![x!(1. / sqrt(3)), x!(-1. / sqrt(2)), x!(1. / sqrt(3))],
            ],
            FixedName::K3Star(n) => {
                let leaves = n.saturating_sub(4).max(1) as f64;
                let mut rows = vec![
                    vec![x!(1), x!(2), x!(2)],
                    vec![x!(2), x!(1), x!(-2)],
                    vec![x!(2), x!(-2), x!(1)],
                    vec![x!(-sqrt(2)), x!(0), x!(sqrt(2))],
                ];
                let leaf = (format!("sqrt(2/{})", n.saturating_sub(4)), (2.0 / leaves).sqrt());
                for _ in 4..n {
                    rows.push(vec![x!(0), leaf.clone(), x!(0)]);
                }
                rows
            }
            FixedName::Fig414 => vec![
                vec![x!(sqrt(7.5)), x!(0), x!(0)],
                vec![x!(0), x!(1), x!(1)],
                vec![x!(0), x!(1), x!(1)],
                vec![x!(0), x!(1), x!(2)],
                vec![x!(0), x!(-2), x!(1)],
                vec![x!(1), x!(-1), x!(0)],
                vec![x!(1), x!(0), x!(1)],
                vec![x!(sqrt(1. / 2.)), x!(sqrt(2)), x!(-sqrt(2))],
            ],
        }
    }
}

/// One of the fixed constructions. Gram–Schmidt is applied where the
/// printed matrix only has orthogonal column span. For `K3_star` the
/// printed rows below the triangle give `MᵀM` an off-diagonal `−2`, so
/// those rows are rebuilt by Gram completion against the triangle rows.
pub fn construct_fixed(name: FixedName, tol: &Tolerances) -> Result<Q2Certificate> {
    let target = name.target()?;
    let provenance = named(&name.to_string());
    let (printed, exact) = split(name.printed());
    let cert = match name {
        FixedName::T1 | FixedName::H2N7 => {
            let m = gram_schmidt_columns(&printed)?;
            Q2Certificate::new(target, m, provenance, tol)?
        }
        FixedName::K3Star(n) => {
            if n < 7 {
                return Err(Error::InvalidParameters(format!("K3_star needs n ≥ 7, got {n}")));
            }
            let triangle = printed.select_rows(&[0, 1, 2]);
            let rest = gram_complete(&triangle, 11.0, &GramTarget::from_graph(&target, 3), n as u64, tol)?;
            let m = Matrix::vstack(&[&triangle, &rest])?;
            let mut cert = Q2Certificate::new(target, m, provenance, tol)?;
            cert.provenance = Provenance::GramCompletion { base: name.to_string(), seed: n as u64 };
            cert
        }
        _ => Q2Certificate::new(target, printed, provenance, tol)?.with_exact_entries(exact),
    };
    Ok(cert)
}

/// The graph realized by the printed matrix (after Gram–Schmidt where the
/// construction applies it), read off its entries.
pub fn printed_pattern(name: FixedName) -> Result<Graph> {
    let (m, _) = split(name.printed());
    let m = match name {
        FixedName::T1 | FixedName::H2N7 => gram_schmidt_columns(&m)?,
        _ => m,
    };
    Ok(pattern_of(&m.gram_rows(), None))
}

//! Numerical tolerances shared by every module.
//!
//! All thresholds live here so that reports can echo exactly what was used.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Relative symmetry tolerance accepted by the eigensolver.
    pub symmetry: f64,
    /// Jacobi stops once off-diagonal Frobenius mass drops below `jacobi * ||S||_F`.
    pub jacobi: f64,
    pub max_sweeps: usize,
    /// Relative gap that separates eigenvalue clusters.
    pub cluster: f64,
    /// Relative threshold (times `1 + ||M||_max`) below which an entry counts as zero.
    pub zero_pattern: f64,
    /// Strict inequality tie tolerance for the tau index.
    pub tau_tie: f64,
    /// Allowed negative slack for inequality bounds.
    pub inequality_slack: f64,
    /// Absolute equality tolerance, scaled by `1 + ||.||`.
    pub equality: f64,
    /// Relative singular-value cutoff used by the SSP kernel computation.
    pub ssp_rank: f64,
    /// Gram residual allowed on a verified certificate, scaled by `1 + c`.
    pub gram: f64,
    /// Smallest magnitude an edge entry may take during numeric search.
    pub entry_floor: f64,
    /// Residual at which the numeric search stops.
    pub search_residual: f64,
    pub search_iterations: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            symmetry: 1e-12,
            jacobi: 1e-14,
            max_sweeps: 100,
            cluster: 1e-7,
            zero_pattern: 1e-6,
            tau_tie: 1e-9,
            inequality_slack: 1e-9,
            equality: 1e-7,
            ssp_rank: 1e-9,
            gram: 1e-8,
            entry_floor: 1e-4,
            search_residual: 1e-10,
            search_iterations: 5000,
        }
    }
}

impl Tolerances {
    /// Override one field by name, as accepted on the command line (`name=value`).
    pub fn set(&mut self, name: &str, value: &str) -> Result<(), String> {
        let float = || value.parse::<f64>().map_err(|e| format!("{name}: {e}"));
        let int = || value.parse::<usize>().map_err(|e| format!("{name}: {e}"));
        match name {
            "symmetry" => self.symmetry = float()?,
            "jacobi" => self.jacobi = float()?,
            "max_sweeps" => self.max_sweeps = int()?,
            "cluster" => self.cluster = float()?,
            "zero_pattern" => self.zero_pattern = float()?,
            "tau_tie" => self.tau_tie = float()?,
            "inequality_slack" => self.inequality_slack = float()?,
            "equality" => self.equality = float()?,
            "ssp_rank" => self.ssp_rank = float()?,
            "gram" => self.gram = float()?,
            "entry_floor" => self.entry_floor = float()?,
            "search_residual" => self.search_residual = float()?,
            "search_iterations" => self.search_iterations = int()?,
            other => return Err(format!("unknown tolerance '{other}'")),
        }
        Ok(())
    }
}

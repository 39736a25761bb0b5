use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::potts::CoeffSeq;
use crate::scalar::{rational, Mode, Rational};

/// Sampling plan for a verification campaign.
#[derive(Debug, Clone, PartialEq)]
pub struct CampaignConfig {
    pub campaign: String,
    /// Fixed values of `q`; `q = 1` is always added.
    pub q_grid: Vec<Rational>,
    /// Additional seeded random `q` in `(0, 1]`.
    pub random_q: usize,
    /// Points `w` per `(matroid, q)`.
    pub w_samples: usize,
    /// Random coordinates are `a/b` with `a, b` uniform in `1..=w_max`.
    pub w_max: u64,
    /// Replace the first samples by stress points near equality manifolds.
    pub adversarial: bool,
    /// Ratios `r > 1` of the `c_k = r^{k(n-k)}` family.
    pub c_ratios: Vec<Rational>,
    /// An explicit coefficient sequence used instead of the family.
    pub c_override: Option<Vec<Rational>>,
    /// Multi-indices per `(matroid, c)` in the `cqHR` campaign.
    pub alpha_samples: usize,
    /// `(q, w)` pairs per `(matroid, c, alpha)` in the `cqHR` campaign.
    pub qw_samples: usize,
    pub seed: u64,
    pub mode: Mode,
    /// Worker threads; `None` uses the available parallelism.
    pub workers: Option<usize>,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        CampaignConfig {
            campaign: "default".into(),
            q_grid: vec![
                rational(1, 1),
                rational(1, 2),
                rational(1, 4),
                rational(1, 10),
                rational(1, 100),
            ],
            random_q: 0,
            w_samples: 20,
            w_max: 100,
            adversarial: true,
            c_ratios: vec![
                rational(2, 1),
                rational(3, 2),
                rational(5, 4),
                rational(9, 8),
                rational(17, 16),
            ],
            c_override: None,
            alpha_samples: 10,
            qw_samples: 10,
            seed: 0,
            mode: Mode::Exact,
            workers: None,
        }
    }
}

impl CampaignConfig {
    /// Checks the sampling invariants before any computation runs.
    pub fn validate(&self) -> Result<()> {
        if let Some(q) = self
            .q_grid
            .iter()
            .find(|q| !q.is_positive() || **q > Rational::one())
        {
            return Err(Error::Config(format!("q = {q} is outside (0, 1]")));
        }
        if self.w_max == 0 {
            return Err(Error::Config("w_max must be at least 1".into()));
        }
        if let Some(r) = self.c_ratios.iter().find(|r| **r <= Rational::one()) {
            return Err(Error::Config(format!(
                "coefficient ratio {r} must exceed 1 for strict log-concavity"
            )));
        }
        if let Some(c) = &self.c_override {
            if c.iter().any(|v| v.is_negative() || v.is_zero()) {
                return Err(Error::Config("coefficients must be positive".into()));
            }
            let seq = CoeffSeq::new(c.clone())?;
            if !seq.is_strictly_log_concave() {
                return Err(Error::Config(format!(
                    "coefficient sequence {} is not strictly log-concave",
                    c.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
                )));
            }
        }
        if self.workers == Some(0) {
            return Err(Error::Config("workers must be at least 1".into()));
        }
        Ok(())
    }

    /// The `q` grid with `1` included, deduplicated, in grid order.
    pub fn grid_with_one(&self) -> Vec<Rational> {
        let mut out = Vec::with_capacity(self.q_grid.len() + 1);
        if !self.q_grid.contains(&Rational::one()) {
            out.push(Rational::one());
        }
        for q in &self.q_grid {
            if !out.contains(q) {
                out.push(q.clone());
            }
        }
        out
    }
}

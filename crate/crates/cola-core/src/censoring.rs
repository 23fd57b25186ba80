//! Censoring thresholds and the transmit/suppress decision.
//!
//! A node may broadcast its freshly computed primal variable only if it has
//! moved at least `tau^k` (Euclidean distance) away from the last value it
//! actually transmitted. All three threshold families are non-increasing
//! and summable, which is what the convergence theory asks of them.

use alloc::vec::Vec;

use crate::linalg::dist;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ScheduleError {
    #[error("alpha must be nonnegative, got {0}")]
    NegativeAlpha(f64),
    #[error("beta must be in (0,1), got {0}")]
    BetaOutOfRange(f64),
    #[error("r must be greater than 1, got {0}")]
    ExponentOutOfRange(f64),
}

/// Censoring threshold sequence `tau^k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ThresholdSchedule {
    /// `tau^k = alpha * beta^k` with `beta` in (0,1).
    Linear { alpha: f64, beta: f64 },
    /// `tau^k = alpha * k^(-r)` for `k >= 1`, with `tau^0 = alpha` so the
    /// sequence stays defined and non-increasing at the first round.
    Sublinear { alpha: f64, r: f64 },
    /// `tau^k = 0`: no censoring (COLA becomes DLM, COCA becomes ADMM).
    Zero,
}

impl ThresholdSchedule {
    pub fn linear(alpha: f64, beta: f64) -> Result<Self, ScheduleError> {
        if !(alpha >= 0.0) {
            return Err(ScheduleError::NegativeAlpha(alpha));
        }
        if !(beta > 0.0 && beta < 1.0) {
            return Err(ScheduleError::BetaOutOfRange(beta));
        }
        Ok(ThresholdSchedule::Linear { alpha, beta })
    }

    pub fn sublinear(alpha: f64, r: f64) -> Result<Self, ScheduleError> {
        if !(alpha >= 0.0) {
            return Err(ScheduleError::NegativeAlpha(alpha));
        }
        if !(r > 1.0) {
            return Err(ScheduleError::ExponentOutOfRange(r));
        }
        Ok(ThresholdSchedule::Sublinear { alpha, r })
    }

    /// Threshold at iteration `k`.
    pub fn threshold_at(&self, k: usize) -> f64 {
        match *self {
            ThresholdSchedule::Linear { alpha, beta } => alpha * libm::pow(beta, k as f64),
            ThresholdSchedule::Sublinear { alpha, r } => {
                if k == 0 {
                    alpha
                } else {
                    alpha * libm::pow(k as f64, -r)
                }
            }
            ThresholdSchedule::Zero => 0.0,
        }
    }

    /// The first threshold, which the energy diagnostics use as `tau^0`.
    pub fn initial(&self) -> f64 {
        self.threshold_at(0)
    }
}

/// Outcome of one transmit/suppress decision.
#[derive(Debug, Clone, PartialEq)]
pub struct CensorOutcome {
    /// True iff the candidate must be broadcast (`xi >= tau`; ties transmit).
    pub transmit: bool,
    /// The state variable after the decision: the candidate if transmitted,
    /// otherwise the previous state.
    pub state: Vec<f64>,
    /// Euclidean distance between the previous state and the candidate.
    pub xi: f64,
}

/// Decide whether `candidate` is informative enough to broadcast, given the
/// previously transmitted `state_prev` and threshold `tau`.
pub fn censor_decide(state_prev: &[f64], candidate: &[f64], tau: f64) -> CensorOutcome {
    assert!(tau >= 0.0, "censoring threshold must be nonnegative");
    let xi = dist(state_prev, candidate);
    let transmit = xi >= tau;
    CensorOutcome {
        transmit,
        state: if transmit {
            candidate.to_vec()
        } else {
            state_prev.to_vec()
        },
        xi,
    }
}

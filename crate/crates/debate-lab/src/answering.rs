//! The answering phase as a symmetric zero-sum matrix game.
//!
//! Once optimal argumentation is priced in, the payoff for answering `b`
//! against `a` while arguing second is `|a - b| - dist(b, L)`, where `L` is
//! the interval between the two extreme optimal-play beliefs. Randomising the
//! argumentation order makes the answering game symmetric, and the optimal
//! pure answers are exactly the interval. A brute-force grid game serves as
//! an independent check of that closed form.

use crate::error::{Error, NashViolation, Result};
use crate::solver::MinimaxResult;

const TOL: f64 = 1e-9;

/// The equilibrium answer interval `[value_up_down, value_down_up]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnswerInterval {
    lo: f64,
    hi: f64,
}

impl AnswerInterval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite()) || lo < -TOL || hi > 1.0 + TOL || lo > hi + TOL {
            return Err(Error::invalid(
                "answer interval",
                format!("[{lo}, {hi}] is not a subinterval of [0, 1]"),
            ));
        }
        Ok(AnswerInterval {
            lo: lo.min(hi),
            hi: hi.max(lo),
        })
    }

    pub fn from_minimax(result: &MinimaxResult) -> Result<Self> {
        AnswerInterval::new(result.value_up_down, result.value_down_up)
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn midpoint(&self) -> f64 {
        (self.lo + self.hi) / 2.0
    }

    /// Distance from `answer` to the interval: `max(lo - b, b - hi, 0)`.
    pub fn dist(&self, answer: f64) -> f64 {
        (self.lo - answer).max(answer - self.hi).max(0.0)
    }

    pub fn contains(&self, answer: f64) -> bool {
        self.dist(answer) <= TOL
    }

    /// The smallest debate error any equilibrium answer can guarantee is half
    /// the interval width, attained when the truth sits at the midpoint.
    pub fn minimal_worst_error(&self) -> f64 {
        self.width() / 2.0
    }
}

/// Utility of the debater who argues second: they answered `b`, their
/// opponent answered `a`, and both argue optimally.
pub fn second_mover_value(a: f64, b: f64, interval: &AnswerInterval) -> f64 {
    (a - b).abs() - interval.dist(b)
}

/// Expected utility of player 1 when answers `(a1, a2)` are fixed and the
/// argumentation order is a fair coin. Antisymmetric in its arguments.
pub fn expected_payoff(a1: f64, a2: f64, interval: &AnswerInterval) -> f64 {
    0.5 * interval.dist(a2) - 0.5 * interval.dist(a1)
}

/// The exact set of optimal pure answers: the interval itself.
pub fn equilibrium_answers(interval: &AnswerInterval) -> AnswerInterval {
    *interval
}

/// Result of the brute-force grid check.
#[derive(Debug, Clone)]
pub struct NashReport {
    pub grid_step: f64,
    /// Grid answers that are pure maximin strategies of the grid game.
    pub equilibria: Vec<f64>,
}

/// Brute-force the answering game over the grid `{0, step, ..., 1}` and
/// check that its pure equilibria coincide with the interval, up to one grid
/// step at the boundary. Errors with the violating answers on mismatch.
pub fn verify_nash(interval: &AnswerInterval, grid_step: f64) -> Result<NashReport> {
    if !(grid_step > 0.0 && grid_step <= 0.1) {
        return Err(Error::invalid(
            "grid step",
            format!("{grid_step} outside (0, 0.1]"),
        ));
    }
    let steps = (1.0 / grid_step).round() as usize;
    let grid: Vec<f64> = (0..=steps).map(|k| (k as f64 * grid_step).min(1.0)).collect();

    // Pure maximin answers; in this symmetric zero-sum game they are exactly
    // the pure equilibrium strategies.
    let guarantees: Vec<f64> = grid
        .iter()
        .map(|&a| {
            grid.iter()
                .map(|&b| expected_payoff(a, b, interval))
                .fold(f64::INFINITY, f64::min)
        })
        .collect();
    let best = guarantees.iter().fold(f64::NEG_INFINITY, |m, &g| m.max(g));
    let equilibria: Vec<f64> = grid
        .iter()
        .zip(&guarantees)
        .filter(|(_, &g)| g >= best - TOL)
        .map(|(&a, _)| a)
        .collect();

    let mut violations = Vec::new();
    for &a in &equilibria {
        if interval.dist(a) > grid_step + TOL {
            violations.push(NashViolation {
                answer: a,
                spurious: true,
            });
        }
    }
    for &a in &grid {
        if interval.contains(a) && !equilibria.iter().any(|&e| (e - a).abs() <= TOL) {
            violations.push(NashViolation {
                answer: a,
                spurious: false,
            });
        }
    }
    if violations.is_empty() {
        Ok(NashReport {
            grid_step,
            equilibria,
        })
    } else {
        Err(Error::NashMismatch { violations })
    }
}

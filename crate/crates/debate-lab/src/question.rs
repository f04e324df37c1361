//! Questions: total functions from worlds to `[0, 1]`, with the stock
//! families used by the counterexample scenarios.
//!
//! Every question carries an explicit relevant-feature set; evaluation must
//! agree on any two worlds that match on those features, and the solver and
//! judge restrict their enumeration to them.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::world::{values_match, World, VALUE_TOL};

type Evaluator = Arc<dyn Fn(&World) -> f64 + Send + Sync>;

/// A question about a function of the world.
#[derive(Clone)]
pub struct Question {
    label: String,
    relevant: BTreeSet<usize>,
    eval: Evaluator,
}

impl std::fmt::Debug for Question {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Question")
            .field("label", &self.label)
            .field("relevant", &self.relevant)
            .finish()
    }
}

fn is_one(v: f64) -> bool {
    (v - 1.0).abs() <= VALUE_TOL
}

/// The stalling gate: `S(x, y) = 0` exactly when `x = 1` and `y != 1`, and
/// `1` otherwise. The "problem" `x = 1` is cancelled by the "fix" `y = 1`.
pub fn stall_gate(x: f64, y: f64) -> f64 {
    if is_one(x) && !is_one(y) {
        0.0
    } else {
        1.0
    }
}

impl Question {
    /// Wrap an arbitrary evaluator. The caller is responsible for the range
    /// `[0, 1]` and for the relevant set actually covering the dependence.
    pub fn from_fn(
        label: impl Into<String>,
        relevant: impl IntoIterator<Item = usize>,
        eval: impl Fn(&World) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Question {
            label: label.into(),
            relevant: relevant.into_iter().collect(),
            eval: Arc::new(eval),
        }
    }

    /// `W_0 AND ... AND W_{k-1}` on Boolean-valued features: 1 when every
    /// relevant feature equals 1.
    pub fn conjunction(k: usize) -> Self {
        Question::from_fn(format!("conjunction({k})"), 0..k, move |w| {
            if (0..k).all(|i| is_one(w.value(i).unwrap_or(0.0))) {
                1.0
            } else {
                0.0
            }
        })
    }

    /// Parity of the number of ones among `W_0 .. W_{k-1}`.
    pub fn xor(k: usize) -> Self {
        Question::from_fn(format!("xor({k})"), 0..k, move |w| {
            let ones = (0..k)
                .filter(|&i| is_one(w.value(i).unwrap_or(0.0)))
                .count();
            (ones % 2) as f64
        })
    }

    /// Product of the first `k` feature values.
    pub fn product(k: usize) -> Self {
        Question::from_fn(format!("product({k})"), 0..k, move |w| {
            (0..k).map(|i| w.value(i).unwrap_or(0.0)).product()
        })
    }

    pub fn constant(value: f64) -> Self {
        Question::from_fn(format!("const({value})"), std::iter::empty(), move |_| value)
    }

    /// Lookup table over tuples of relevant-feature values. Tuples follow the
    /// order of `features`; worlds matching no entry evaluate to 0.
    pub fn table(
        label: impl Into<String>,
        features: Vec<usize>,
        entries: Vec<(Vec<f64>, f64)>,
    ) -> Result<Self> {
        for (key, value) in &entries {
            if key.len() != features.len() {
                return Err(Error::invalid(
                    "table question",
                    "key length does not match the feature list",
                ));
            }
            if !value.is_finite() || *value < 0.0 || *value > 1.0 {
                return Err(Error::invalid(
                    "table question",
                    format!("value {value} outside [0, 1]"),
                ));
            }
        }
        let feats = features.clone();
        Ok(Question::from_fn(label, features, move |w| {
            let key: Vec<f64> = feats.iter().map(|&i| w.value(i).unwrap_or(f64::NAN)).collect();
            entries
                .iter()
                .find(|(k, _)| values_match(k, &key))
                .map(|(_, v)| *v)
                .unwrap_or(0.0)
        }))
    }

    /// `sum_i 2^-i * w_{i-1}` over the first `d` features (1-based weights),
    /// which is 1-Lipschitz under the weighted metric used by bit debates.
    pub fn weighted_linear(d: usize) -> Self {
        Question::from_fn(format!("weighted_linear({d})"), 0..d, move |w| {
            (0..d)
                .map(|i| w.value(i).unwrap_or(0.0) / f64::powi(2.0, i as i32 + 1))
                .sum()
        })
    }

    /// Multiply `base` by one stall gate `S(w_m, w_n)` per `(m, n)` pair.
    pub fn stall_wrapped(base: Question, gates: &[(usize, usize)]) -> Self {
        let mut relevant = base.relevant.clone();
        for (m, n) in gates {
            relevant.insert(*m);
            relevant.insert(*n);
        }
        let gates = gates.to_vec();
        let label = format!("stall({}, {:?})", base.label, gates);
        let base_eval = base.eval.clone();
        Question {
            label,
            relevant,
            eval: Arc::new(move |w| {
                let mut v = base_eval(w);
                for (m, n) in &gates {
                    v *= stall_gate(w.value(*m).unwrap_or(0.0), w.value(*n).unwrap_or(0.0));
                }
                v
            }),
        }
    }

    /// Multiply `base` by the chained gate `S(w_m, w_{y_1} AND ... AND w_{y_k})`:
    /// one problem whose fix takes `k` separate reveals.
    pub fn chain_stall(base: Question, problem: usize, fixes: &[usize]) -> Self {
        let mut relevant = base.relevant.clone();
        relevant.insert(problem);
        relevant.extend(fixes.iter().copied());
        let fixes = fixes.to_vec();
        let label = format!("chain_stall({}, {problem}, {fixes:?})", base.label);
        let base_eval = base.eval.clone();
        Question {
            label,
            relevant,
            eval: Arc::new(move |w| {
                let fix = if fixes.iter().all(|&y| is_one(w.value(y).unwrap_or(0.0))) {
                    1.0
                } else {
                    0.0
                };
                base_eval(w) * stall_gate(w.value(problem).unwrap_or(0.0), fix)
            }),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn relevant_features(&self) -> &BTreeSet<usize> {
        &self.relevant
    }

    pub fn max_relevant(&self) -> Option<usize> {
        self.relevant.iter().next_back().copied()
    }

    pub fn evaluate(&self, world: &World) -> f64 {
        (self.eval)(world)
    }

    /// Deviation from truth: `|f(w) - answer|`.
    pub fn deviation(&self, answer: f64, world: &World) -> f64 {
        (self.evaluate(world) - answer).abs()
    }
}

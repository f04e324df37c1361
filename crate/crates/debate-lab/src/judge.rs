//! The Bayesian judge: exact posterior-mean beliefs given revealed features.
//!
//! The judge treats revealed evidence as if it were neutrally generated (it
//! conditions on the event, not on the fact that a strategic debater chose to
//! reveal it) and will happily evaluate any reveal set it is handed; debate
//! length limits are the engine's business.

use crate::error::{Error, Result};
use crate::question::Question;
use crate::world::{Prior, RevealSet, World};

/// Posterior mean of the question value given the revealed claims:
/// the judge's belief `E[f | W_i = w_i for revealed i]`.
///
/// Explicit priors are scanned in `O(|support|)`; product priors marginalise
/// only over the unrevealed relevant features.
pub fn posterior_mean(prior: &Prior, question: &Question, reveals: &RevealSet) -> Result<f64> {
    let dim = prior.dimension();
    if let Some(max) = question.max_relevant() {
        if max >= dim {
            return Err(Error::IndexOutOfRange { index: max, dim });
        }
    }
    for (index, _) in reveals.features() {
        if index >= dim {
            return Err(Error::IndexOutOfRange { index, dim });
        }
    }
    match prior {
        Prior::Explicit { .. } => {
            // Conditioning already filters and renormalises the atoms.
            let conditioned = prior.condition(reveals)?;
            let atoms = match &conditioned {
                Prior::Explicit { atoms } => atoms,
                Prior::Product { .. } => unreachable!("conditioning preserves the prior form"),
            };
            Ok(atoms
                .iter()
                .map(|(w, p)| p * question.evaluate(w))
                .sum::<f64>())
        }
        Prior::Product { features } => {
            for (index, value) in reveals.features() {
                if features[index].prob_of(value) <= 0.0 {
                    return Err(Error::ZeroProbabilityEvent);
                }
            }
            // Template world: revealed values where claimed, an arbitrary
            // support value elsewhere. Unrevealed relevant features get
            // enumerated; irrelevant ones cannot change the evaluation.
            let mut template: Vec<f64> = features.iter().map(|f| f.values[0]).collect();
            for (index, value) in reveals.features() {
                template[index] = value;
            }
            let free: Vec<usize> = question
                .relevant_features()
                .iter()
                .copied()
                .filter(|i| !reveals.contains_feature(*i))
                .collect();
            let mut mean = 0.0;
            for (assignment, prob) in prior.enumerate_assignments(&free)? {
                let mut values = template.clone();
                for (&i, &v) in free.iter().zip(&assignment) {
                    values[i] = v;
                }
                let world = World::new(values).expect("support values are valid");
                mean += prob * question.evaluate(&world);
            }
            Ok(mean)
        }
    }
}

/// Same computation under a judge whose prior is `biased_prior` rather than
/// the true world distribution. The biased prior may exclude the revealed
/// evidence entirely, in which case this errors.
pub fn biased_posterior_mean(
    biased_prior: &Prior,
    question: &Question,
    reveals: &RevealSet,
) -> Result<f64> {
    posterior_mean(biased_prior, question, reveals)
}

/// The judge's belief after each prefix of a reveal sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct BeliefTrajectory {
    entries: Vec<(RevealSet, f64)>,
}

impl BeliefTrajectory {
    pub fn entries(&self) -> &[(RevealSet, f64)] {
        &self.entries
    }

    /// Belief values in order, starting with the prior mean.
    pub fn beliefs(&self) -> Vec<f64> {
        self.entries.iter().map(|(_, b)| *b).collect()
    }

    pub fn prior_mean(&self) -> f64 {
        self.entries[0].1
    }

    pub fn final_belief(&self) -> f64 {
        self.entries.last().expect("trajectory never empty").1
    }

    /// Beliefs after each argument (the prior entry dropped).
    pub fn post_argument_beliefs(&self) -> Vec<f64> {
        self.entries.iter().skip(1).map(|(_, b)| *b).collect()
    }
}

/// Prefix scan of [`posterior_mean`]: entry `k` conditions on the first `k`
/// reveals, entry 0 on nothing.
pub fn belief_trajectory(
    prior: &Prior,
    question: &Question,
    reveals: &RevealSet,
) -> Result<BeliefTrajectory> {
    let mut entries = Vec::with_capacity(reveals.len() + 1);
    for k in 0..=reveals.len() {
        let prefix = reveals.prefix(k);
        let belief = posterior_mean(prior, question, &prefix)?;
        entries.push((prefix, belief));
    }
    Ok(BeliefTrajectory { entries })
}

//! Debates where arguments are statistically independent evidence about a
//! hidden binary variable.
//!
//! Conditional on the hidden `X`, features are mutually independent, so each
//! reveal shifts the judge's log-odds belief by a fixed weight
//! `ev_j(w) = log(P(W_j = w_j | X=1) / P(W_j = w_j | X=0))` and reveals
//! combine additively. Arguments split into a raising pile, a lowering pile,
//! and irrelevant ones; optimal play spends each round on the strongest
//! remaining argument from one's own pile, which yields closed forms for the
//! optimal answer, the residual error, an early-stopping rule, and a bound on
//! the distance to the truth when the question depends on at most K features.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::question::Question;
use crate::world::{Prior, RevealSet, World, PROB_TOL, VALUE_TOL};

pub fn prob_to_log_odds(p: f64) -> f64 {
    (p / (1.0 - p)).ln()
}

pub fn log_odds_to_prob(l: f64) -> f64 {
    1.0 / (1.0 + (-l).exp())
}

/// Class-conditional table for one feature.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureEvidence {
    pub values: Vec<f64>,
    pub p_given_x1: Vec<f64>,
    pub p_given_x0: Vec<f64>,
}

impl FeatureEvidence {
    pub fn new(values: Vec<f64>, p_given_x1: Vec<f64>, p_given_x0: Vec<f64>) -> Result<Self> {
        if values.is_empty() || values.len() != p_given_x1.len() || values.len() != p_given_x0.len()
        {
            return Err(Error::invalid(
                "feature evidence",
                "values and both probability rows must share a positive length",
            ));
        }
        for row in [&p_given_x1, &p_given_x0] {
            let sum: f64 = row.iter().sum();
            // Strictly positive entries keep every weight finite.
            if row.iter().any(|p| !p.is_finite() || *p <= 0.0) || (sum - 1.0).abs() > PROB_TOL {
                return Err(Error::invalid(
                    "feature evidence",
                    "conditional probabilities must be strictly positive and sum to 1",
                ));
            }
        }
        Ok(FeatureEvidence {
            values,
            p_given_x1,
            p_given_x0,
        })
    }

    /// Binary feature whose value 1 carries log-odds weight `weight` (and
    /// value 0 the opposite weight).
    pub fn binary_with_weight(weight: f64) -> Result<Self> {
        let a = log_odds_to_prob(weight);
        FeatureEvidence::new(vec![0.0, 1.0], vec![1.0 - a, a], vec![a, 1.0 - a])
    }

    fn value_position(&self, value: f64) -> Option<usize> {
        self.values
            .iter()
            .position(|v| (v - value).abs() <= VALUE_TOL)
    }
}

/// Which way an argument pushes the judge's belief.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Direction {
    Up,
    Down,
}

/// Partition of the feature indices by the sign of their weight in a world.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PileDecomposition {
    pub up: Vec<usize>,
    pub down: Vec<usize>,
    pub irrelevant: Vec<usize>,
}

/// Remaining evidence after `n` rounds per side, and their difference: the
/// log-odds gap between the truth and the debate's optimal answer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Residual {
    pub up: f64,
    pub down: f64,
    pub gap: f64,
}

/// Whether a running debate can already be called.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StopDecision {
    Continue,
    Stop { winner: Direction },
}

/// Joint model over (features, hidden bit), with features conditionally
/// independent given the bit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvidenceModel {
    /// P(X = 1).
    #[serde(rename = "p0_prob")]
    pub p1: f64,
    pub features: Vec<FeatureEvidence>,
}

impl EvidenceModel {
    pub fn new(p1: f64, features: Vec<FeatureEvidence>) -> Result<Self> {
        if !(p1 > 0.0 && p1 < 1.0) {
            return Err(Error::invalid(
                "evidence model",
                "P(X=1) must lie strictly in (0, 1)",
            ));
        }
        if features.is_empty() {
            return Err(Error::invalid("evidence model", "no features"));
        }
        Ok(EvidenceModel { p1, features })
    }

    pub fn dimension(&self) -> usize {
        self.features.len()
    }

    /// Prior log-odds `p_0 = log(P(X=1) / P(X=0))`.
    pub fn prior_log_odds(&self) -> f64 {
        prob_to_log_odds(self.p1)
    }

    /// Log-likelihood-ratio weight of the claim `W_index = value`.
    pub fn evidence_weight(&self, index: usize, value: f64) -> Result<f64> {
        let feature = self.features.get(index).ok_or(Error::IndexOutOfRange {
            index,
            dim: self.dimension(),
        })?;
        let pos = feature
            .value_position(value)
            .ok_or(Error::UnsupportedValue { index, value })?;
        Ok((feature.p_given_x1[pos] / feature.p_given_x0[pos]).ln())
    }

    /// Weights of every feature's true value in `world`.
    pub fn weights_for(&self, world: &World) -> Result<Vec<f64>> {
        (0..self.dimension())
            .map(|i| self.evidence_weight(i, world.value(i)?))
            .collect()
    }

    /// Split the arguments into raising, lowering, and irrelevant piles.
    pub fn piles(&self, world: &World) -> Result<PileDecomposition> {
        let weights = self.weights_for(world)?;
        let mut piles = PileDecomposition {
            up: Vec::new(),
            down: Vec::new(),
            irrelevant: Vec::new(),
        };
        for (i, w) in weights.iter().enumerate() {
            if *w > 0.0 {
                piles.up.push(i);
            } else if *w < 0.0 {
                piles.down.push(i);
            } else {
                piles.irrelevant.push(i);
            }
        }
        Ok(piles)
    }

    /// Log-odds belief after the reveals: `p_0` plus the revealed weights,
    /// independent of order.
    pub fn log_odds_belief(&self, reveals: &RevealSet) -> Result<f64> {
        let mut belief = self.prior_log_odds();
        for (index, value) in reveals.features() {
            belief += self.evidence_weight(index, value)?;
        }
        Ok(belief)
    }

    /// Probability-form belief after the reveals.
    pub fn belief_prob(&self, reveals: &RevealSet) -> Result<f64> {
        Ok(log_odds_to_prob(self.log_odds_belief(reveals)?))
    }

    /// Total evidence strength a side can muster in `n` arguments: the sum of
    /// the `n` strongest weights of its pile (as a non-negative number),
    /// padding with irrelevant arguments once the pile runs dry.
    pub fn evidence_budget(&self, world: &World, n: usize, direction: Direction) -> Result<f64> {
        let weights = self.weights_for(world)?;
        Ok(budget_from_weights(&weights, n, direction))
    }

    /// The unique equilibrium answer of an `n`-round debate: both sides spend
    /// every argument on their strongest remaining evidence.
    pub fn optimal_answer(&self, world: &World, n: usize) -> Result<f64> {
        let weights = self.weights_for(world)?;
        let up = budget_from_weights(&weights, n, Direction::Up);
        let down = budget_from_weights(&weights, n, Direction::Down);
        Ok(log_odds_to_prob(self.prior_log_odds() + up - down))
    }

    /// Evidence left unspent after `n` rounds per side, and the resulting
    /// log-odds gap between the truth and the optimal answer.
    pub fn residual_error(&self, world: &World, n: usize) -> Result<Residual> {
        let weights = self.weights_for(world)?;
        let total_up: f64 = weights.iter().filter(|w| **w > 0.0).sum();
        let total_down: f64 = weights.iter().filter(|w| **w < 0.0).map(|w| -w).sum();
        let up = total_up - budget_from_weights(&weights, n, Direction::Up);
        let down = total_down - budget_from_weights(&weights, n, Direction::Down);
        Ok(Residual {
            up,
            down,
            gap: up - down,
        })
    }

    /// True posterior `P(X=1 | W = w)`: the prior plus every weight.
    pub fn true_answer(&self, world: &World) -> Result<f64> {
        let weights = self.weights_for(world)?;
        Ok(log_odds_to_prob(
            self.prior_log_odds() + weights.iter().sum::<f64>(),
        ))
    }

    /// Strength of a side's `n`-th argument (1-based) under strongest-first
    /// play, zero once the pile is exhausted.
    pub fn argument_strength(
        &self,
        world: &World,
        direction: Direction,
        n: usize,
    ) -> Result<f64> {
        if n == 0 {
            return Err(Error::invalid("argument round", "rounds are 1-based"));
        }
        let weights = self.weights_for(world)?;
        let mut pile = sorted_pile(&weights, direction);
        Ok(if n <= pile.len() {
            pile.remove(n - 1)
        } else {
            0.0
        })
    }

    /// When the question depends on at most `k` features, the truth's
    /// log-odds sit within `max_p s_{p,N} * (k - 2N)` of the final belief.
    /// The bound presumes both sides can fill their `N` arguments from within
    /// those `k` features.
    pub fn k_feature_bound(&self, world: &World, rounds: usize, k: usize) -> Result<f64> {
        if 2 * rounds > k {
            return Err(Error::BoundInapplicable {
                two_n: 2 * rounds,
                k,
            });
        }
        if rounds == 0 {
            return Err(Error::invalid("rounds", "must be at least 1"));
        }
        let s_up = self.argument_strength(world, Direction::Up, rounds)?;
        let s_down = self.argument_strength(world, Direction::Down, rounds)?;
        Ok(s_up.max(s_down) * (k - 2 * rounds) as f64)
    }

    /// The equivalent feature debate: the prior is the marginal over worlds
    /// and the question asks for `P(X=1 | W = w)`. Materialises the full
    /// cartesian support; keep dimensions small.
    pub fn to_feature_debate(&self) -> Result<(Prior, Question)> {
        let mut rows: Vec<(Vec<f64>, f64, f64)> = vec![(Vec::new(), self.p1, 1.0 - self.p1)];
        for feature in &self.features {
            let mut next = Vec::with_capacity(rows.len() * feature.values.len());
            for (prefix, w1, w0) in &rows {
                for (pos, v) in feature.values.iter().enumerate() {
                    let mut key = prefix.clone();
                    key.push(*v);
                    next.push((
                        key,
                        w1 * feature.p_given_x1[pos],
                        w0 * feature.p_given_x0[pos],
                    ));
                }
            }
            rows = next;
        }
        let atoms: Vec<(World, f64)> = rows
            .iter()
            .map(|(values, w1, w0)| Ok((World::new(values.clone())?, w1 + w0)))
            .collect::<Result<_>>()?;
        let prior = Prior::explicit(atoms)?;
        let model = self.clone();
        let question = Question::from_fn(
            "hidden_bit_posterior",
            0..self.dimension(),
            move |w: &World| model.true_answer(w).unwrap_or(0.0),
        );
        Ok((prior, question))
    }
}

fn sorted_pile(weights: &[f64], direction: Direction) -> Vec<f64> {
    let mut pile: Vec<f64> = match direction {
        Direction::Up => weights.iter().copied().filter(|w| *w > 0.0).collect(),
        Direction::Down => weights.iter().filter(|w| **w < 0.0).map(|w| -w).collect(),
    };
    pile.sort_by(|a, b| b.partial_cmp(a).unwrap());
    pile
}

/// Sum of the `n` strongest weights in the given direction, zero-padded.
pub fn budget_from_weights(weights: &[f64], n: usize, direction: Direction) -> f64 {
    sorted_pile(weights, direction).iter().take(n).sum()
}

/// Online check after `round` full rounds of an `rounds`-round debate with
/// fixed `answers`: if the currently losing side can no longer push the
/// belief past the answers' midpoint even by spending every remaining
/// argument at its latest strength, the winner is settled.
///
/// Assumes strongest-evidence-first play (which optimal play satisfies).
/// Returns `Continue` when the debate is still open or the answers tie.
pub fn early_stop_check(
    model: &EvidenceModel,
    world: &World,
    rounds: usize,
    round: usize,
    answers: (f64, f64),
) -> Result<StopDecision> {
    if round == 0 || round > rounds {
        return Ok(StopDecision::Continue);
    }
    let (a1, a2) = answers;
    if (a1 - a2).abs() <= VALUE_TOL {
        return Ok(StopDecision::Continue);
    }
    let midpoint = (a1 + a2) / 2.0;
    if midpoint <= 0.0 || midpoint >= 1.0 {
        return Ok(StopDecision::Continue);
    }
    let threshold = prob_to_log_odds(midpoint);

    let weights = model.weights_for(world)?;
    let belief = model.prior_log_odds()
        + budget_from_weights(&weights, round, Direction::Up)
        - budget_from_weights(&weights, round, Direction::Down);
    if belief == threshold {
        return Ok(StopDecision::Continue);
    }
    let leader = if belief > threshold {
        Direction::Up
    } else {
        Direction::Down
    };
    let loser = match leader {
        Direction::Up => Direction::Down,
        Direction::Down => Direction::Up,
    };
    let latest = model.argument_strength(world, loser, round)?;
    let reach = (rounds - round) as f64 * latest;
    let settled = match leader {
        Direction::Up => belief - reach > threshold,
        Direction::Down => belief + reach < threshold,
    };
    if settled {
        Ok(StopDecision::Stop { winner: leader })
    } else {
        Ok(StopDecision::Continue)
    }
}

/// Winner of the full `rounds`-round debate under optimal play, `None` when
/// the final belief lands exactly on the answers' midpoint.
pub fn full_debate_winner(
    model: &EvidenceModel,
    world: &World,
    rounds: usize,
    answers: (f64, f64),
) -> Result<Option<Direction>> {
    let (a1, a2) = answers;
    if (a1 - a2).abs() <= VALUE_TOL {
        return Ok(None);
    }
    let midpoint = (a1 + a2) / 2.0;
    let final_belief = model.optimal_answer(world, rounds)?;
    Ok(if final_belief > midpoint {
        Some(Direction::Up)
    } else if final_belief < midpoint {
        Some(Direction::Down)
    } else {
        None
    })
}

/// Scan the rounds in order and report the first round at which the debate
/// can stop, with the predicted winner.
pub fn earliest_stop(
    model: &EvidenceModel,
    world: &World,
    rounds: usize,
    answers: (f64, f64),
) -> Result<Option<(usize, Direction)>> {
    for round in 1..=rounds {
        if let StopDecision::Stop { winner } =
            early_stop_check(model, world, rounds, round, answers)?
        {
            return Ok(Some((round, winner)));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-9
    }

    /// Model with binary features carrying exactly these weights at value 1,
    /// and a world where every feature reads 1.
    fn model_with_weights(p1: f64, weights: &[f64]) -> (EvidenceModel, World) {
        let features = weights
            .iter()
            .map(|w| FeatureEvidence::binary_with_weight(*w).unwrap())
            .collect();
        let model = EvidenceModel::new(p1, features).unwrap();
        let world = World::new(vec![1.0; weights.len()]).unwrap();
        (model, world)
    }

    #[test]
    fn empty_reveal_set_gives_the_prior() {
        let (model, _) = model_with_weights(0.3, &[1.0, -2.0]);
        assert!(close(
            model.log_odds_belief(&RevealSet::new()).unwrap(),
            prob_to_log_odds(0.3)
        ));
    }

    #[test]
    fn single_reveal_shifts_by_the_likelihood_ratio() {
        let feature =
            FeatureEvidence::new(vec![0.0, 1.0], vec![0.2, 0.8], vec![0.8, 0.2]).unwrap();
        let model = EvidenceModel::new(0.5, vec![feature]).unwrap();
        let mut reveals = RevealSet::new();
        reveals.push_feature(0, 1.0).unwrap();
        assert!(close(
            model.log_odds_belief(&reveals).unwrap(),
            4.0f64.ln()
        ));
    }

    #[test]
    fn symmetric_feature_carries_no_evidence() {
        let feature =
            FeatureEvidence::new(vec![0.0, 1.0], vec![0.3, 0.7], vec![0.3, 0.7]).unwrap();
        let model = EvidenceModel::new(0.4, vec![feature]).unwrap();
        let mut reveals = RevealSet::new();
        reveals.push_feature(0, 1.0).unwrap();
        assert!(close(
            model.log_odds_belief(&reveals).unwrap(),
            model.prior_log_odds()
        ));
    }

    #[test]
    fn unsupported_value_is_an_error() {
        let (model, _) = model_with_weights(0.5, &[1.0]);
        assert!(matches!(
            model.evidence_weight(0, 0.5),
            Err(Error::UnsupportedValue { .. })
        ));
    }

    #[test]
    fn budgets_take_the_strongest_arguments() {
        let weights = [2.0, 1.0, -3.0];
        assert!(close(budget_from_weights(&weights, 0, Direction::Up), 0.0));
        assert!(close(budget_from_weights(&weights, 1, Direction::Up), 2.0));
        assert!(close(budget_from_weights(&weights, 1, Direction::Down), 3.0));
        assert!(close(budget_from_weights(&weights, 2, Direction::Up), 3.0));
        // Padding beyond the pile adds nothing.
        assert!(close(budget_from_weights(&weights, 5, Direction::Up), 3.0));
        assert!(close(budget_from_weights(&[0.0, 0.0], 2, Direction::Up), 0.0));
        assert!(close(budget_from_weights(&[0.0, 0.0], 2, Direction::Down), 0.0));
    }

    #[test]
    fn piles_partition_the_features() {
        let (model, world) = model_with_weights(0.5, &[2.0, -1.0, 0.0, 0.5]);
        let piles = model.piles(&world).unwrap();
        assert_eq!(piles.up, vec![0, 3]);
        assert_eq!(piles.down, vec![1]);
        assert_eq!(piles.irrelevant, vec![2]);
    }

    #[test]
    fn optimal_answer_limits() {
        let (model, world) = model_with_weights(0.4, &[1.5, -0.5, 0.25]);
        // No arguments: the prior.
        assert!(close(model.optimal_answer(&world, 0).unwrap(), 0.4));
        // Enough rounds to drain both piles: the truth.
        assert!(close(
            model.optimal_answer(&world, 3).unwrap(),
            model.true_answer(&world).unwrap()
        ));
    }

    #[test]
    fn residuals_by_hand() {
        let (model, world) = model_with_weights(0.5, &[3.0, 1.0, -2.0]);
        let r = model.residual_error(&world, 1).unwrap();
        assert!(close(r.up, 1.0));
        assert!(close(r.down, 0.0));
        assert!(close(r.gap, 1.0));

        // Enough rounds for both piles: no gap.
        let r = model.residual_error(&world, 2).unwrap();
        assert!(close(r.gap, 0.0));

        // Symmetric piles cancel.
        let (model, world) = model_with_weights(0.5, &[1.5, -1.5]);
        let r = model.residual_error(&world, 1).unwrap();
        assert!(close(r.gap, 0.0));
    }

    #[test]
    fn residual_gap_is_the_log_odds_error() {
        let (model, world) = model_with_weights(0.35, &[2.5, 0.7, -1.2, -0.3, 0.1]);
        for n in 0..=5 {
            let r = model.residual_error(&world, n).unwrap();
            let truth = prob_to_log_odds(model.true_answer(&world).unwrap());
            let answer = prob_to_log_odds(model.optimal_answer(&world, n).unwrap());
            assert!(close(truth - answer, r.gap), "n={n}");
        }
    }

    #[test]
    fn k_feature_bound_examples() {
        let (model, world) = model_with_weights(0.5, &[1.0, -1.0, 0.5, -0.5]);
        // K = 2N: everything revealed, zero bound, belief exact.
        assert!(close(model.k_feature_bound(&world, 2, 4).unwrap(), 0.0));
        assert!(close(
            model.optimal_answer(&world, 2).unwrap(),
            model.true_answer(&world).unwrap()
        ));
        assert!(matches!(
            model.k_feature_bound(&world, 3, 4),
            Err(Error::BoundInapplicable { two_n: 6, k: 4 })
        ));

        // Uniform strengths s with K = 2N + 2 give a bound of 2s.
        let (model, world) = model_with_weights(0.5, &[0.7, 0.7, -0.7, -0.7]);
        assert!(close(model.k_feature_bound(&world, 1, 4).unwrap(), 1.4));
    }

    #[test]
    fn early_stop_examples() {
        // Round 0 is always open.
        let (model, world) = model_with_weights(0.5, &[1.0, -1.0]);
        assert_eq!(
            early_stop_check(&model, &world, 2, 0, (1.0, 0.0)).unwrap(),
            StopDecision::Continue
        );

        // One-sided evidence: the down side has nothing, so the debate is
        // settled at round 1.
        let (model, world) = model_with_weights(0.5, &[2.0, 1.5, 1.0]);
        assert_eq!(
            early_stop_check(&model, &world, 3, 1, (1.0, 0.0)).unwrap(),
            StopDecision::Stop {
                winner: Direction::Up
            }
        );

        // Crafted decay: at round 1 the trailing side could still reach the
        // midpoint (lead 0.6, reach 2 * 1.4), at round 2 it no longer can
        // (lead 1.1, reach 1 * 0.1).
        let (model, world) = model_with_weights(0.5, &[2.0, 0.6, 0.5, -1.4, -0.1, -0.05]);
        assert_eq!(
            early_stop_check(&model, &world, 3, 1, (1.0, 0.0)).unwrap(),
            StopDecision::Continue
        );
        let stop = earliest_stop(&model, &world, 3, (1.0, 0.0)).unwrap();
        let full = full_debate_winner(&model, &world, 3, (1.0, 0.0)).unwrap();
        assert_eq!(stop, Some((2, Direction::Up)));
        assert_eq!(full, Some(Direction::Up));
    }

    #[test]
    fn equal_answers_never_stop() {
        let (model, world) = model_with_weights(0.5, &[2.0, 1.0]);
        for round in 0..=2 {
            assert_eq!(
                early_stop_check(&model, &world, 2, round, (0.5, 0.5)).unwrap(),
                StopDecision::Continue
            );
        }
    }

    #[test]
    fn induced_feature_debate_matches_the_closed_form() {
        let (model, world) = model_with_weights(0.3, &[1.2, -0.4]);
        let (prior, question) = model.to_feature_debate().unwrap();
        assert!(prior.contains(&world));
        // The question's value is the true posterior at each support world.
        for (w, _) in prior.support() {
            assert!(close(
                question.evaluate(&w),
                model.true_answer(&w).unwrap()
            ));
        }
        // Judge beliefs match log-odds addition on every reveal subset.
        let mut reveals = RevealSet::new();
        reveals.push_feature(1, 1.0).unwrap();
        let lhs = crate::judge::posterior_mean(&prior, &question, &reveals).unwrap();
        let rhs = model.belief_prob(&reveals).unwrap();
        assert!(close(lhs, rhs), "{lhs} vs {rhs}");
    }

    #[test]
    fn greedy_budget_selection_is_optimal() {
        // Swapping any chosen argument for a weaker unchosen one from the
        // same pile cannot increase the budget.
        let weights = [2.0, 1.4, 0.9, 0.3, -0.8];
        let n = 2;
        let chosen = budget_from_weights(&weights, n, Direction::Up);
        let ups: Vec<f64> = weights.iter().copied().filter(|w| *w > 0.0).collect();
        for i in 0..ups.len() {
            for j in 0..ups.len() {
                if i == j {
                    continue;
                }
                // Every size-n subset sum is at most the greedy budget.
                let mut subset = [ups[i], ups[j]];
                subset.sort_by(|a, b| b.partial_cmp(a).unwrap());
                assert!(subset.iter().sum::<f64>() <= chosen + 1e-12);
            }
        }
    }
}

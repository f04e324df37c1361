//! Full debate playouts and truth-promotion metrics.
//!
//! A playout samples a world, fixes both answers, randomises who argues
//! first, replays the solver's optimal argument line for that order, and
//! settles utilities, outcome, and debate error. The aggregate metrics
//! (worst-case and expected error) quantify how far optimal play can leave
//! the judge from the truth.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::answering::AnswerInterval;
use crate::error::{Error, Result};
use crate::judge::{belief_trajectory, posterior_mean, BeliefTrajectory};
use crate::question::Question;
use crate::solver::{solve, truth_promotion_bound, ArgGameSpec};
use crate::world::{FeatureIndex, Prior, RevealSet, World};

const TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Player {
    One,
    Two,
}

impl Player {
    pub fn other(self) -> Player {
        match self {
            Player::One => Player::Two,
            Player::Two => Player::One,
        }
    }
}

/// How the debaters pick their simultaneous answers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AnswerPolicy {
    /// Both answer the low end of the equilibrium interval.
    OptimalLo,
    /// Both answer the high end.
    OptimalHi,
    /// Both answer the midpoint.
    Midpoint,
    /// Fixed answers, not necessarily optimal.
    Scripted { a1: f64, a2: f64 },
}

/// Which equilibrium answer stands in for "the" outcome when averaging the
/// debate error over worlds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AnswerSelection {
    /// The interval endpoint farthest from the truth.
    WorstInLambda,
    /// The interval midpoint.
    MidpointOfLambda,
}

/// Which argument line a diagnostic playout follows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LinePolicy {
    /// The solver's optimal line (first mover maximising).
    Minimax,
    /// Each mover takes the single reveal that most improves the belief for
    /// their side right now, passing only when nothing does. This is the
    /// myopic play that produces the textbook oscillation pattern.
    Greedy,
}

/// One finished debate.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Transcript {
    pub question: String,
    pub world: World,
    pub answers: (f64, f64),
    pub first_mover: Player,
    pub arguments: Vec<FeatureIndex>,
    pub final_belief: f64,
    pub utilities: (f64, f64),
    pub outcome: f64,
    pub error: f64,
    /// Post-debate verification of one revealed feature; a no-op under
    /// truthful claims, recorded for completeness.
    pub experiment: Option<(usize, f64)>,
    pub seed: u64,
}

/// Sample a world, fix answers, randomise the order, and play optimally.
pub fn play_debate(
    prior: &Prior,
    question: &Question,
    rounds: usize,
    policy: AnswerPolicy,
    seed: u64,
) -> Result<Transcript> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let world = prior.sample(&mut rng);
    let spec = ArgGameSpec::new(prior, question, world.clone(), rounds)?;
    let result = solve(&spec)?;
    let interval = AnswerInterval::from_minimax(&result)?;

    let (a1, a2) = match policy {
        AnswerPolicy::OptimalLo => (interval.lo(), interval.lo()),
        AnswerPolicy::OptimalHi => (interval.hi(), interval.hi()),
        AnswerPolicy::Midpoint => (interval.midpoint(), interval.midpoint()),
        AnswerPolicy::Scripted { a1, a2 } => {
            for a in [a1, a2] {
                if !(0.0..=1.0).contains(&a) {
                    return Err(Error::invalid("answer", format!("{a} outside [0, 1]")));
                }
            }
            (a1, a2)
        }
    };

    let first_mover = if rng.gen_bool(0.5) {
        Player::One
    } else {
        Player::Two
    };
    // The player with the higher answer gains from a higher final belief and
    // argues to raise it; ties default to player 1 raising.
    let max_side = if a1 >= a2 { Player::One } else { Player::Two };
    let (line, final_belief) = if first_mover == max_side {
        (result.line_up_down.clone(), result.value_up_down)
    } else {
        (result.line_down_up.clone(), result.value_down_up)
    };

    let u1 = (final_belief - a2).abs() - (final_belief - a1).abs();
    let utilities = (u1, -u1);
    let outcome = if u1 > 0.0 {
        a1
    } else if u1 < 0.0 {
        a2
    } else if rng.gen_bool(0.5) {
        a1
    } else {
        a2
    };
    let error = question.deviation(outcome, &world);

    let revealed: Vec<usize> = line.iter().filter_map(FeatureIndex::as_feature).collect();
    let experiment = if revealed.is_empty() {
        None
    } else {
        let i = revealed[rng.gen_range(0..revealed.len())];
        Some((i, world.value(i)?))
    };

    Ok(Transcript {
        question: question.label().to_string(),
        world,
        answers: (a1, a2),
        first_mover,
        arguments: line,
        final_belief,
        utilities,
        outcome,
        error,
        experiment,
        seed,
    })
}

/// Worst deviation any equilibrium outcome can have from the truth in `world`.
pub fn worst_case_error(
    prior: &Prior,
    question: &Question,
    rounds: usize,
    world: &World,
) -> Result<f64> {
    let spec = ArgGameSpec::new(prior, question, world.clone(), rounds)?;
    truth_promotion_bound(&spec)
}

/// Expected debate error over the prior, with one equilibrium answer chosen
/// per world according to `selection`. Product priors are enumerated over
/// relevant-feature assignments only.
pub fn expected_error(
    prior: &Prior,
    question: &Question,
    rounds: usize,
    selection: AnswerSelection,
) -> Result<f64> {
    let mut total = 0.0;
    for (world, prob) in representative_worlds(prior, question)? {
        let spec = ArgGameSpec::new(prior, question, world.clone(), rounds)?;
        let result = solve(&spec)?;
        let truth = question.evaluate(&world);
        let err = match selection {
            AnswerSelection::WorstInLambda => (result.value_up_down - truth)
                .abs()
                .max((result.value_down_up - truth).abs()),
            AnswerSelection::MidpointOfLambda => {
                ((result.value_up_down + result.value_down_up) / 2.0 - truth).abs()
            }
        };
        total += prob * err;
    }
    Ok(total)
}

/// Support worlds grouped so that members of a group agree on every relevant
/// feature (and hence on the question value and the solved interval).
pub fn representative_worlds(prior: &Prior, question: &Question) -> Result<Vec<(World, f64)>> {
    match prior {
        Prior::Explicit { .. } => Ok(prior.support()),
        Prior::Product { features } => {
            let relevant: Vec<usize> = question.relevant_features().iter().copied().collect();
            let template: Vec<f64> = features.iter().map(|f| f.values[0]).collect();
            let mut worlds = Vec::new();
            for (assignment, prob) in prior.enumerate_assignments(&relevant)? {
                let mut values = template.clone();
                for (&i, &v) in relevant.iter().zip(&assignment) {
                    values[i] = v;
                }
                worlds.push((World::new(values)?, prob));
            }
            Ok(worlds)
        }
    }
}

/// Second-mover utility realised when both answers sit inside the
/// equilibrium interval; averages the two argumentation orders and equals
/// `|a1 - a2|` under optimal play.
pub fn last_mover_advantage(
    prior: &Prior,
    question: &Question,
    rounds: usize,
    world: &World,
    a1: f64,
    a2: f64,
) -> Result<f64> {
    let spec = ArgGameSpec::new(prior, question, world.clone(), rounds)?;
    last_mover_advantage_for(&spec, a1, a2)
}

/// [`last_mover_advantage`] against an already-built game spec.
pub fn last_mover_advantage_for(spec: &ArgGameSpec, a1: f64, a2: f64) -> Result<f64> {
    let result = solve(spec)?;
    let interval = AnswerInterval::from_minimax(&result)?;
    if !interval.contains(a1) || !interval.contains(a2) {
        return Err(Error::AnswersOutsideLambda {
            a1,
            a2,
            lo: interval.lo(),
            hi: interval.hi(),
        });
    }
    let max_side = if a1 >= a2 { Player::One } else { Player::Two };
    let mut total = 0.0;
    for first in [Player::One, Player::Two] {
        let belief = if first == max_side {
            result.value_up_down
        } else {
            result.value_down_up
        };
        let u1 = (belief - a2).abs() - (belief - a1).abs();
        let second_mover_utility = match first {
            Player::One => -u1,
            Player::Two => u1,
        };
        total += 0.5 * second_mover_utility;
    }
    Ok(total)
}

/// Belief trajectory of a played line plus how often the judge switched sides
/// relative to their prior belief.
#[derive(Debug, Clone)]
pub struct OscillationProfile {
    pub line: Vec<FeatureIndex>,
    pub trajectory: BeliefTrajectory,
    /// Sign changes of (belief - prior mean) across the post-argument
    /// beliefs, ignoring exact ties.
    pub side_changes: usize,
}

/// Replay a debate line and count the judge's side switches.
pub fn oscillation_profile(
    prior: &Prior,
    question: &Question,
    rounds: usize,
    world: &World,
    policy: LinePolicy,
) -> Result<OscillationProfile> {
    let spec = ArgGameSpec::new(prior, question, world.clone(), rounds)?;
    oscillation_profile_for(&spec, policy)
}

/// [`oscillation_profile`] against an already-built game spec.
pub fn oscillation_profile_for(
    spec: &ArgGameSpec,
    policy: LinePolicy,
) -> Result<OscillationProfile> {
    let line = match policy {
        LinePolicy::Minimax => solve(spec)?.line_up_down,
        LinePolicy::Greedy => greedy_line(spec)?,
    };
    let reveals = RevealSet::from_world(spec.world(), &line)?;
    let trajectory = belief_trajectory(spec.prior(), spec.question(), &reveals)?;
    let side_changes = count_side_changes(&trajectory);
    Ok(OscillationProfile {
        line,
        trajectory,
        side_changes,
    })
}

fn count_side_changes(trajectory: &BeliefTrajectory) -> usize {
    let baseline = trajectory.prior_mean();
    let mut changes = 0;
    let mut last_sign = 0i8;
    for belief in trajectory.post_argument_beliefs() {
        let diff = belief - baseline;
        let sign = if diff.abs() <= 1e-12 {
            0
        } else if diff > 0.0 {
            1
        } else {
            -1
        };
        if sign != 0 {
            if last_sign != 0 && sign != last_sign {
                changes += 1;
            }
            last_sign = sign;
        }
    }
    changes
}

/// One-step-lookahead play: the raising side makes the reveal that lifts the
/// belief the most, the lowering side the one that drops it the most; passes
/// only when no reveal helps. First mover raises.
fn greedy_line(spec: &ArgGameSpec) -> Result<Vec<FeatureIndex>> {
    let mut line = Vec::with_capacity(spec.rounds() * 2);
    let mut reveals = RevealSet::new();
    for ply in 0..spec.rounds() * 2 {
        let maximize = ply % 2 == 0;
        let current = posterior_mean(spec.prior(), spec.question(), &reveals)?;
        let mut best: Option<(f64, FeatureIndex)> = None;
        let mut candidates: Vec<FeatureIndex> = spec
            .legal_indices()
            .iter()
            .filter(|i| !reveals.contains_feature(**i))
            .map(|i| FeatureIndex::Feature(*i))
            .collect();
        if spec.pass_allowed() || candidates.is_empty() {
            candidates.push(FeatureIndex::Pass);
        }
        for arg in candidates {
            let value = match arg {
                FeatureIndex::Feature(i) => {
                    let mut next = reveals.clone();
                    next.push_feature(i, spec.world().value(i)?)?;
                    posterior_mean(spec.prior(), spec.question(), &next)?
                }
                FeatureIndex::Pass => current,
            };
            let improves = match &best {
                None => true,
                Some((v, _)) => {
                    if maximize {
                        value > *v
                    } else {
                        value < *v
                    }
                }
            };
            if improves {
                best = Some((value, arg));
            }
        }
        let (_, arg) = best.expect("pass is always available");
        match arg {
            FeatureIndex::Feature(i) => reveals.push_feature(i, spec.world().value(i)?)?,
            FeatureIndex::Pass => reveals.push_pass(),
        }
        line.push(arg);
    }
    Ok(line)
}

/// Per-world intervals and errors plus the expectation, for one debate setup.
#[derive(Debug, Clone)]
pub struct PromotionReport {
    pub per_world: Vec<WorldOutcome>,
    pub expected_error: f64,
    pub epsilon: f64,
    /// True when every supported world's worst-case error is within epsilon.
    pub truth_promoting: bool,
}

#[derive(Debug, Clone)]
pub struct WorldOutcome {
    pub world: World,
    pub prob: f64,
    pub interval: AnswerInterval,
    pub worst_error: f64,
}

/// Evaluate truth promotion across the whole support. Worlds that agree on
/// every relevant feature are reported once, with their combined mass.
pub fn promotion_report(
    prior: &Prior,
    question: &Question,
    rounds: usize,
    selection: AnswerSelection,
    epsilon: f64,
) -> Result<PromotionReport> {
    let mut per_world = Vec::new();
    for (world, prob) in representative_worlds(prior, question)? {
        let spec = ArgGameSpec::new(prior, question, world.clone(), rounds)?;
        let result = solve(&spec)?;
        let truth = question.evaluate(&world);
        let worst_error = (result.value_up_down - truth)
            .abs()
            .max((result.value_down_up - truth).abs());
        per_world.push(WorldOutcome {
            world,
            prob,
            interval: AnswerInterval::from_minimax(&result)?,
            worst_error,
        });
    }
    let expected_error = expected_error(prior, question, rounds, selection)?;
    let truth_promoting = per_world.iter().all(|o| o.worst_error <= epsilon + TOL);
    Ok(PromotionReport {
        per_world,
        expected_error,
        epsilon,
        truth_promoting,
    })
}

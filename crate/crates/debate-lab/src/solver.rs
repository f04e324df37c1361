//! Exact solver for the argumentation phase.
//!
//! Given a sampled world and a debate length `N`, the two debaters alternate
//! revealing features (or passing), and after `2N` arguments the judge's
//! posterior mean is the payoff-relevant belief. This module computes the two
//! extreme beliefs under optimal play —`value_up_down` when the first mover
//! drives the belief up, `value_down_up` when the first mover drives it
//! down — together with argument lines achieving them.
//!
//! States are memoised on (revealed set, arguments remaining, side to move);
//! this is sound because the judge's belief is reveal-order invariant. Ties
//! break toward the smallest feature index, with pass last, so lines are
//! reproducible; the values themselves are tie-break independent.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::judge::posterior_mean;
use crate::question::Question;
use crate::world::{FeatureIndex, Prior, RevealSet, World};

/// Bounds tighter than this count as "truth-promoting" when sweeping for the
/// critical debate length.
pub const PROMOTION_TOL: f64 = 1e-9;

/// One argumentation game: prior, question, sampled world, and the rules.
#[derive(Debug, Clone)]
pub struct ArgGameSpec<'a> {
    prior: &'a Prior,
    question: &'a Question,
    world: World,
    rounds: usize,
    pass_allowed: bool,
    legal: Vec<usize>,
}

impl<'a> ArgGameSpec<'a> {
    /// A game over `question.relevant_features()` with pass allowed, the
    /// default setup. `rounds` is `N`; the debate has `2N` arguments.
    pub fn new(
        prior: &'a Prior,
        question: &'a Question,
        world: World,
        rounds: usize,
    ) -> Result<Self> {
        if rounds == 0 {
            return Err(Error::invalid("game spec", "rounds must be at least 1"));
        }
        let dim = prior.dimension();
        if world.dimension() != dim {
            return Err(Error::invalid(
                "game spec",
                "world dimension does not match the prior",
            ));
        }
        if !prior.contains(&world) {
            return Err(Error::invalid(
                "game spec",
                "world is outside the prior's support",
            ));
        }
        if let Some(max) = question.max_relevant() {
            if max >= dim {
                return Err(Error::IndexOutOfRange { index: max, dim });
            }
        }
        let legal: Vec<usize> = question.relevant_features().iter().copied().collect();
        let spec = ArgGameSpec {
            prior,
            question,
            world,
            rounds,
            pass_allowed: true,
            legal,
        };
        spec.check_legal()?;
        Ok(spec)
    }

    /// Allow additional argument indices beyond the question's relevant set.
    pub fn with_extra_indices(mut self, extra: impl IntoIterator<Item = usize>) -> Result<Self> {
        let dim = self.prior.dimension();
        for i in extra {
            if i >= dim {
                return Err(Error::IndexOutOfRange { index: i, dim });
            }
            if !self.legal.contains(&i) {
                self.legal.push(i);
            }
        }
        self.legal.sort_unstable();
        self.check_legal()?;
        Ok(self)
    }

    pub fn with_pass(mut self, allowed: bool) -> Self {
        self.pass_allowed = allowed;
        self
    }

    fn check_legal(&self) -> Result<()> {
        if self.legal.len() > 63 {
            return Err(Error::invalid(
                "game spec",
                "at most 63 legal argument indices are supported",
            ));
        }
        Ok(())
    }

    pub fn prior(&self) -> &Prior {
        self.prior
    }

    pub fn question(&self) -> &Question {
        self.question
    }

    pub fn world(&self) -> &World {
        &self.world
    }

    pub fn rounds(&self) -> usize {
        self.rounds
    }

    pub fn pass_allowed(&self) -> bool {
        self.pass_allowed
    }

    pub fn legal_indices(&self) -> &[usize] {
        &self.legal
    }
}

/// The two extreme optimal-play beliefs and lines achieving them.
#[derive(Debug, Clone, PartialEq)]
pub struct MinimaxResult {
    /// Final belief when the first mover maximises and the second minimises.
    pub value_up_down: f64,
    /// Final belief when the first mover minimises and the second maximises.
    pub value_down_up: f64,
    pub line_up_down: Vec<FeatureIndex>,
    pub line_down_up: Vec<FeatureIndex>,
}

impl MinimaxResult {
    /// Width of the equilibrium answer interval.
    pub fn width(&self) -> f64 {
        self.value_down_up - self.value_up_down
    }
}

struct Search<'s, 'a> {
    spec: &'s ArgGameSpec<'a>,
    memo: HashMap<(u64, u8, bool), (f64, Vec<FeatureIndex>)>,
    leaves: HashMap<u64, f64>,
}

impl<'s, 'a> Search<'s, 'a> {
    fn reveals_for(&self, mask: u64) -> Result<RevealSet> {
        let mut reveals = RevealSet::new();
        for (pos, &index) in self.spec.legal.iter().enumerate() {
            if mask & (1 << pos) != 0 {
                reveals.push_feature(index, self.spec.world.value(index)?)?;
            }
        }
        Ok(reveals)
    }

    fn leaf(&mut self, mask: u64) -> Result<f64> {
        if let Some(&v) = self.leaves.get(&mask) {
            return Ok(v);
        }
        let reveals = self.reveals_for(mask)?;
        let v = posterior_mean(self.spec.prior, self.spec.question, &reveals)?;
        self.leaves.insert(mask, v);
        Ok(v)
    }

    fn best(&mut self, mask: u64, remaining: u8, maximize: bool) -> Result<(f64, Vec<FeatureIndex>)> {
        if remaining == 0 {
            return Ok((self.leaf(mask)?, Vec::new()));
        }
        let key = (mask, remaining, maximize);
        if let Some(hit) = self.memo.get(&key) {
            return Ok(hit.clone());
        }

        // Move order fixes the tie-break: smallest index first, pass last. A
        // player with no legal move passes; the argument slot is spent.
        let mut moves: Vec<Option<usize>> = (0..self.spec.legal.len())
            .filter(|pos| mask & (1 << pos) == 0)
            .map(Some)
            .collect();
        if self.spec.pass_allowed || moves.is_empty() {
            moves.push(None);
        }

        let mut best: Option<(f64, Vec<FeatureIndex>)> = None;
        for mv in moves {
            let next_mask = match mv {
                Some(pos) => mask | (1 << pos),
                None => mask,
            };
            let (value, rest) = self.best(next_mask, remaining - 1, !maximize)?;
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
                let arg = match mv {
                    Some(pos) => FeatureIndex::Feature(self.spec.legal[pos]),
                    None => FeatureIndex::Pass,
                };
                let mut line = Vec::with_capacity(rest.len() + 1);
                line.push(arg);
                line.extend(rest);
                best = Some((value, line));
            }
        }
        let best = best.expect("at least the pass move exists");
        self.memo.insert(key, best.clone());
        Ok(best)
    }
}

/// Exhaustive alternating max/min evaluation of the argumentation game.
pub fn solve(spec: &ArgGameSpec) -> Result<MinimaxResult> {
    let mut search = Search {
        spec,
        memo: HashMap::new(),
        leaves: HashMap::new(),
    };
    let plies = (spec.rounds * 2) as u8;
    let (value_up_down, line_up_down) = search.best(0, plies, true)?;
    let (value_down_up, line_down_up) = search.best(0, plies, false)?;
    Ok(MinimaxResult {
        value_up_down,
        value_down_up,
        line_up_down,
        line_down_up,
    })
}

/// How far optimal play can leave the judge from the truth:
/// `max(|value_up_down - f(w)|, |value_down_up - f(w)|)`. Zero exactly when
/// the debate is truth-promoting in this world.
pub fn truth_promotion_bound(spec: &ArgGameSpec) -> Result<f64> {
    let result = solve(spec)?;
    let truth = spec.question.evaluate(&spec.world);
    Ok((result.value_up_down - truth)
        .abs()
        .max((result.value_down_up - truth).abs()))
}

/// Smallest `N <= max_rounds` at which the debate about `question` is
/// truth-promoting in `world`.
pub fn promoting_rounds(
    question: &Question,
    prior: &Prior,
    world: &World,
    max_rounds: usize,
) -> Result<usize> {
    for rounds in 1..=max_rounds {
        let spec = ArgGameSpec::new(prior, question, world.clone(), rounds)?;
        if truth_promotion_bound(&spec)? <= PROMOTION_TOL {
            return Ok(rounds);
        }
    }
    Err(Error::NotPromotedWithin(max_rounds))
}

/// Minimal truth-promoting round counts for a base question and a stalled
/// variant of it. The wrapped count exceeds the base count by at least the
/// number of rounds the gates force the honest side to waste.
pub fn stall_depth(
    base: &Question,
    wrapped: &Question,
    prior: &Prior,
    world: &World,
    max_rounds: usize,
) -> Result<(usize, usize)> {
    let n_base = promoting_rounds(base, prior, world, max_rounds)?;
    let n_wrapped = promoting_rounds(wrapped, prior, world, max_rounds)?;
    Ok((n_base, n_wrapped))
}

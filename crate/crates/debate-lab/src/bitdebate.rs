//! Information-limited debates: each argument reveals one binary digit of
//! one feature, zooming the judge in on a dyadic cell around the true world.
//!
//! Worlds live on the `budget`-bit dyadic grid per feature, the prior is
//! uniform over that grid, and the judge's belief is the mean of the question
//! over the grid points still inside the cell. Under the weighted metric
//! `rho(w, w') = sum_i 2^-i |w_i - w'_i|` (1-based `i`), an L-Lipschitz
//! question debated for `N` rounds stays within `L / 2^floor(sqrt(N))` of the
//! truth; the triangular revelation sequence realises that guarantee.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::question::Question;
use crate::world::World;

/// One bit-revelation claim: bit `position` (1-based) of `feature` is `value`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BitArgument {
    pub feature: usize,
    pub position: u32,
    pub value: bool,
}

/// A move in a bit debate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BitMove {
    Reveal(BitArgument),
    Pass,
}

/// The `position`-th binary digit (1-based) of a value in `[0, 1)`.
pub fn feature_bit(value: f64, position: u32) -> bool {
    let scaled = value * f64::powi(2.0, position as i32);
    (scaled.floor() as u64) & 1 == 1
}

/// Whether `value` sits on the `bits`-bit dyadic grid `{ k / 2^bits, k < 2^bits }`.
pub fn is_on_grid(value: f64, bits: u32) -> bool {
    if !(0.0..1.0).contains(&value) {
        return false;
    }
    let scaled = value * f64::powi(2.0, bits as i32);
    (scaled - scaled.round()).abs() <= 1e-9
}

/// Product of per-feature dyadic intervals containing the sampled world.
#[derive(Debug, Clone, PartialEq)]
pub struct Cell {
    lows: Vec<f64>,
    bits: Vec<u32>,
    budget: u32,
}

impl Cell {
    /// The whole unit cube, before any bits are revealed.
    pub fn root(dims: usize, budget: u32) -> Result<Self> {
        if dims == 0 {
            return Err(Error::invalid("cell", "dimension must be positive"));
        }
        if budget == 0 || budget > 20 {
            return Err(Error::invalid("cell", "bit budget must lie in 1..=20"));
        }
        Ok(Cell {
            lows: vec![0.0; dims],
            bits: vec![0; dims],
            budget,
        })
    }

    pub fn dims(&self) -> usize {
        self.lows.len()
    }

    pub fn budget(&self) -> u32 {
        self.budget
    }

    /// Bits revealed so far for one feature.
    pub fn bits_revealed(&self, feature: usize) -> u32 {
        self.bits[feature]
    }

    /// Current interval `[lo, hi)` along one feature.
    pub fn interval(&self, feature: usize) -> (f64, f64) {
        let len = f64::powi(2.0, -(self.bits[feature] as i32));
        (self.lows[feature], self.lows[feature] + len)
    }

    /// Halve one feature's interval by the next truthful bit of `world`.
    pub fn zoom(&self, arg: &BitArgument, world: &World) -> Result<Cell> {
        let dim = self.dims();
        if arg.feature >= dim {
            return Err(Error::IndexOutOfRange {
                index: arg.feature,
                dim,
            });
        }
        let expected = self.bits[arg.feature] + 1;
        if arg.position != expected || expected > self.budget {
            return Err(Error::OutOfOrderBit {
                index: arg.feature,
                position: arg.position,
                expected,
            });
        }
        let truth = feature_bit(world.value(arg.feature)?, arg.position);
        if arg.value != truth {
            return Err(Error::UntruthfulBit {
                index: arg.feature,
                position: arg.position,
            });
        }
        let mut next = self.clone();
        let half = f64::powi(2.0, -(arg.position as i32));
        if arg.value {
            next.lows[arg.feature] += half;
        }
        next.bits[arg.feature] = arg.position;
        Ok(next)
    }

    /// Diameter under the weighted metric: `sum_i 2^-i * |interval_i|` with
    /// 1-based feature weights.
    pub fn diameter(&self) -> f64 {
        self.bits
            .iter()
            .enumerate()
            .map(|(i, b)| f64::powi(2.0, -(i as i32 + 1)) * f64::powi(2.0, -(*b as i32)))
            .sum()
    }

    /// Mean of `f` over the budget-resolution grid points inside the cell,
    /// the judge's belief under the uniform grid prior restricted to it.
    pub fn grid_mean(&self, f: impl Fn(&World) -> f64) -> f64 {
        let step = f64::powi(2.0, -(self.budget as i32));
        let counts: Vec<u64> = self
            .bits
            .iter()
            .map(|b| 1u64 << (self.budget - b))
            .collect();
        let total: u64 = counts.iter().product();
        let mut world = World::new(self.lows.clone()).expect("cell corners are valid");
        let mut index = vec![0u64; self.dims()];
        let mut sum = 0.0;
        loop {
            sum += f(&world);
            let mut d = 0;
            loop {
                if d == self.dims() {
                    return sum / total as f64;
                }
                index[d] += 1;
                if index[d] < counts[d] {
                    world.set_value(d, self.lows[d] + index[d] as f64 * step);
                    break;
                }
                index[d] = 0;
                world.set_value(d, self.lows[d]);
                d += 1;
            }
        }
    }

    /// All budget-resolution grid points inside the cell.
    pub fn grid_points(&self) -> Vec<World> {
        let step = f64::powi(2.0, -(self.budget as i32));
        let mut worlds: Vec<Vec<f64>> = vec![Vec::new()];
        for (lo, bits) in self.lows.iter().zip(&self.bits) {
            let count = 1u64 << (self.budget - bits);
            let mut next = Vec::with_capacity(worlds.len() * count as usize);
            for prefix in &worlds {
                for k in 0..count {
                    let mut values = prefix.clone();
                    values.push(lo + k as f64 * step);
                    next.push(values);
                }
            }
            worlds = next;
        }
        worlds
            .into_iter()
            .map(|v| World::new(v).expect("grid values are valid"))
            .collect()
    }

    pub fn contains(&self, world: &World) -> bool {
        (0..self.dims()).all(|i| {
            let (lo, hi) = self.interval(i);
            world
                .value(i)
                .map(|v| v >= lo - 1e-12 && v < hi)
                .unwrap_or(false)
        })
    }
}

/// First `len` terms of the revelation order `1, 1, 2, 1, 2, 3, ...`
/// (1-based feature numbers, block `j` being `1..=j`).
pub fn triangular_sequence(len: usize) -> Vec<usize> {
    let mut seq = Vec::with_capacity(len);
    let mut block = 1;
    while seq.len() < len {
        for feature in 1..=block {
            if seq.len() == len {
                break;
            }
            seq.push(feature);
        }
        block += 1;
    }
    seq
}

/// Cell diameter guaranteed after one player spends `N = 1 + ... + n` reveals
/// following the triangular sequence: `(n + 2) / 2^(n+1)`.
pub fn triangular_diameter_bound(n: u32) -> f64 {
    (n as f64 + 2.0) / f64::powi(2.0, n as i32 + 1)
}

/// Truth-promotion guarantee for an `L`-Lipschitz question debated `rounds`
/// rounds: `L / 2^floor(sqrt(rounds))`.
pub fn lipschitz_error_bound(lipschitz: f64, rounds: usize) -> f64 {
    lipschitz / f64::powi(2.0, isqrt(rounds) as i32)
}

fn isqrt(n: usize) -> usize {
    let mut k = 0;
    while (k + 1) * (k + 1) <= n {
        k += 1;
    }
    k
}

/// Extreme optimal-play beliefs of a bit debate, with the achieving lines.
#[derive(Debug, Clone, PartialEq)]
pub struct BitMinimaxResult {
    pub value_up_down: f64,
    pub value_down_up: f64,
    pub line_up_down: Vec<BitMove>,
    pub line_down_up: Vec<BitMove>,
}

impl BitMinimaxResult {
    pub fn width(&self) -> f64 {
        self.value_down_up - self.value_up_down
    }

    /// `max(|value_up_down - truth|, |value_down_up - truth|)`.
    pub fn truth_promotion_bound(&self, truth: f64) -> f64 {
        (self.value_up_down - truth)
            .abs()
            .max((self.value_down_up - truth).abs())
    }
}

struct BitSearch<'a> {
    question: &'a Question,
    world: &'a World,
    budget: u32,
    memo: HashMap<(u64, u8, bool), (f64, Vec<BitMove>)>,
    leaves: HashMap<u64, f64>,
}

impl<'a> BitSearch<'a> {
    fn key(bits: &[u32]) -> u64 {
        bits.iter().fold(0u64, |acc, b| (acc << 5) | *b as u64)
    }

    fn leaf(&mut self, cell: &Cell) -> f64 {
        let key = Self::key(&cell.bits);
        if let Some(&v) = self.leaves.get(&key) {
            return v;
        }
        let v = cell.grid_mean(|w| self.question.evaluate(w));
        self.leaves.insert(key, v);
        v
    }

    fn best(&mut self, cell: &Cell, remaining: u8, maximize: bool) -> Result<(f64, Vec<BitMove>)> {
        if remaining == 0 {
            return Ok((self.leaf(cell), Vec::new()));
        }
        let key = (Self::key(&cell.bits), remaining, maximize);
        if let Some(hit) = self.memo.get(&key) {
            return Ok(hit.clone());
        }
        let mut moves: Vec<BitMove> = (0..cell.dims())
            .filter(|&i| cell.bits_revealed(i) < self.budget)
            .map(|i| {
                let position = cell.bits_revealed(i) + 1;
                BitMove::Reveal(BitArgument {
                    feature: i,
                    position,
                    value: feature_bit(self.world.value(i).expect("dims match"), position),
                })
            })
            .collect();
        moves.push(BitMove::Pass);

        let mut best: Option<(f64, Vec<BitMove>)> = None;
        for mv in moves {
            let next_cell = match mv {
                BitMove::Reveal(arg) => cell.zoom(&arg, self.world)?,
                BitMove::Pass => cell.clone(),
            };
            let (value, rest) = self.best(&next_cell, remaining - 1, !maximize)?;
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
                let mut line = Vec::with_capacity(rest.len() + 1);
                line.push(mv);
                line.extend(rest);
                best = Some((value, line));
            }
        }
        let best = best.expect("pass is always available");
        self.memo.insert(key, best.clone());
        Ok(best)
    }
}

/// Alternating minimax over bit reveals under the uniform grid prior. The
/// leaf belief is the mean of the question over the final cell's grid
/// points. The world must sit on the `budget`-bit grid.
pub fn solve_bit_debate(
    question: &Question,
    world: &World,
    rounds: usize,
    budget: u32,
) -> Result<BitMinimaxResult> {
    if rounds == 0 {
        return Err(Error::invalid("bit debate", "rounds must be at least 1"));
    }
    for i in 0..world.dimension() {
        let v = world.value(i)?;
        if !is_on_grid(v, budget) {
            return Err(Error::invalid(
                "bit debate",
                format!("feature {i} value {v} is not on the {budget}-bit grid"),
            ));
        }
    }
    if let Some(max) = question.max_relevant() {
        if max >= world.dimension() {
            return Err(Error::IndexOutOfRange {
                index: max,
                dim: world.dimension(),
            });
        }
    }
    let root = Cell::root(world.dimension(), budget)?;
    let mut search = BitSearch {
        question,
        world,
        budget,
        memo: HashMap::new(),
        leaves: HashMap::new(),
    };
    let plies = (rounds * 2) as u8;
    let (value_up_down, line_up_down) = search.best(&root, plies, true)?;
    let (value_down_up, line_down_up) = search.best(&root, plies, false)?;
    Ok(BitMinimaxResult {
        value_up_down,
        value_down_up,
        line_up_down,
        line_down_up,
    })
}

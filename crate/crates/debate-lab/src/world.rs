//! Worlds, priors, and revealed evidence.
//!
//! A world is a finite vector of feature values in `[0, 1]`. A prior is a
//! discrete distribution over worlds, either an explicit list of atoms or a
//! product of per-feature categorical distributions. Arguments reveal one
//! feature of the sampled world; the distinguished [`FeatureIndex::Pass`]
//! argument reveals nothing and stands in for "some feature nobody cares
//! about", which keeps the modelled dimension finite.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance for probability-mass checks (sums to one, etc.).
pub const PROB_TOL: f64 = 1e-12;
/// Tolerance when matching feature values against a prior's support.
pub const VALUE_TOL: f64 = 1e-9;

/// One argument slot: reveal a concrete feature, or pass.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum FeatureIndex {
    /// Reveal coordinate `W_i`.
    Feature(usize),
    /// The always-legal no-op argument. Repeatable, conditions on nothing.
    Pass,
}

impl FeatureIndex {
    pub fn as_feature(&self) -> Option<usize> {
        match self {
            FeatureIndex::Feature(i) => Some(*i),
            FeatureIndex::Pass => None,
        }
    }

    pub fn is_pass(&self) -> bool {
        matches!(self, FeatureIndex::Pass)
    }
}

impl std::fmt::Display for FeatureIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FeatureIndex::Feature(i) => write!(f, "W{i}"),
            FeatureIndex::Pass => write!(f, "pass"),
        }
    }
}

/// A sampled world: a finite vector of feature values in `[0, 1]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct World {
    values: Vec<f64>,
}

impl World {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::invalid("world", "dimension must be positive"));
        }
        for (i, v) in values.iter().enumerate() {
            if !v.is_finite() || *v < 0.0 || *v > 1.0 {
                return Err(Error::invalid(
                    "world",
                    format!("feature {i} has value {v}, outside [0, 1]"),
                ));
            }
        }
        Ok(World { values })
    }

    pub fn dimension(&self) -> usize {
        self.values.len()
    }

    pub fn value(&self, index: usize) -> Result<f64> {
        self.values.get(index).copied().ok_or(Error::IndexOutOfRange {
            index,
            dim: self.values.len(),
        })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    // Grid enumerators overwrite one scratch world instead of allocating per
    // point; callers keep values inside [0, 1].
    pub(crate) fn set_value(&mut self, index: usize, value: f64) {
        self.values[index] = value;
    }

    /// The judge's post-debate experiment: read one feature off the world.
    pub fn run_experiment(&self, index: usize) -> Result<f64> {
        self.value(index)
    }
}

impl From<World> for Vec<f64> {
    fn from(w: World) -> Vec<f64> {
        w.values
    }
}

/// A single revealed claim, or a pass.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Reveal {
    Feature { index: usize, value: f64 },
    Pass,
}

/// An ordered, truthful sequence of reveals. Non-pass indices never repeat.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct RevealSet {
    items: Vec<Reveal>,
}

impl RevealSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, reveal: Reveal) -> Result<()> {
        if let Reveal::Feature { index, .. } = reveal {
            if self.contains_feature(index) {
                return Err(Error::invalid(
                    "reveal set",
                    format!("feature {index} revealed twice"),
                ));
            }
        }
        self.items.push(reveal);
        Ok(())
    }

    pub fn push_feature(&mut self, index: usize, value: f64) -> Result<()> {
        self.push(Reveal::Feature { index, value })
    }

    pub fn push_pass(&mut self) {
        self.items.push(Reveal::Pass);
    }

    /// Build a reveal sequence by reading the named features off `world`,
    /// which makes every claim truthful by construction.
    pub fn from_world(world: &World, args: &[FeatureIndex]) -> Result<Self> {
        let mut set = RevealSet::new();
        for arg in args {
            match arg {
                FeatureIndex::Feature(i) => set.push_feature(*i, world.value(*i)?)?,
                FeatureIndex::Pass => set.push_pass(),
            }
        }
        Ok(set)
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn items(&self) -> &[Reveal] {
        &self.items
    }

    pub fn contains_feature(&self, index: usize) -> bool {
        self.features().any(|(i, _)| i == index)
    }

    /// Iterate over the concrete (index, value) claims, skipping passes.
    pub fn features(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.items.iter().filter_map(|r| match r {
            Reveal::Feature { index, value } => Some((*index, *value)),
            Reveal::Pass => None,
        })
    }

    /// The prefix containing the first `len` reveals.
    pub fn prefix(&self, len: usize) -> RevealSet {
        RevealSet {
            items: self.items[..len.min(self.items.len())].to_vec(),
        }
    }
}

/// A categorical distribution over a finite set of feature values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureDistribution {
    pub values: Vec<f64>,
    pub probs: Vec<f64>,
}

impl FeatureDistribution {
    pub fn new(values: Vec<f64>, probs: Vec<f64>) -> Result<Self> {
        if values.is_empty() || values.len() != probs.len() {
            return Err(Error::invalid(
                "feature distribution",
                "values and probs must be non-empty and of equal length",
            ));
        }
        for v in &values {
            if !v.is_finite() || *v < 0.0 || *v > 1.0 {
                return Err(Error::invalid(
                    "feature distribution",
                    format!("value {v} outside [0, 1]"),
                ));
            }
        }
        for (i, v) in values.iter().enumerate() {
            for w in &values[i + 1..] {
                if (v - w).abs() <= VALUE_TOL {
                    return Err(Error::invalid(
                        "feature distribution",
                        format!("duplicate value {v}"),
                    ));
                }
            }
        }
        let sum: f64 = probs.iter().sum();
        if probs.iter().any(|p| !p.is_finite() || *p <= 0.0) || (sum - 1.0).abs() > PROB_TOL {
            return Err(Error::invalid(
                "feature distribution",
                "probabilities must be strictly positive and sum to 1",
            ));
        }
        Ok(FeatureDistribution { values, probs })
    }

    pub fn bernoulli(p_one: f64) -> Result<Self> {
        FeatureDistribution::new(vec![0.0, 1.0], vec![1.0 - p_one, p_one])
    }

    pub fn degenerate(value: f64) -> Result<Self> {
        FeatureDistribution::new(vec![value], vec![1.0])
    }

    pub fn prob_of(&self, value: f64) -> f64 {
        self.values
            .iter()
            .zip(&self.probs)
            .find(|(v, _)| (*v - value).abs() <= VALUE_TOL)
            .map(|(_, p)| *p)
            .unwrap_or(0.0)
    }
}

/// A discrete prior over worlds.
#[derive(Debug, Clone, PartialEq)]
pub enum Prior {
    /// Explicit list of (world, probability) atoms.
    Explicit { atoms: Vec<(World, f64)> },
    /// Independent features, each with its own categorical distribution.
    Product { features: Vec<FeatureDistribution> },
}

impl Prior {
    pub fn explicit(atoms: Vec<(World, f64)>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::invalid("prior", "empty support"));
        }
        let dim = atoms[0].0.dimension();
        if atoms.iter().any(|(w, _)| w.dimension() != dim) {
            return Err(Error::invalid("prior", "worlds of mixed dimension"));
        }
        let sum: f64 = atoms.iter().map(|(_, p)| p).sum();
        if atoms.iter().any(|(_, p)| !p.is_finite() || *p <= 0.0) || (sum - 1.0).abs() > PROB_TOL {
            return Err(Error::invalid(
                "prior",
                "probabilities must be strictly positive and sum to 1",
            ));
        }
        Ok(Prior::Explicit { atoms })
    }

    pub fn product(features: Vec<FeatureDistribution>) -> Result<Self> {
        if features.is_empty() {
            return Err(Error::invalid("prior", "dimension must be positive"));
        }
        Ok(Prior::Product { features })
    }

    /// Independent `Bernoulli(delta)` features: each is 1 with probability
    /// `delta` and 0 otherwise.
    pub fn bernoulli(delta: f64, dims: usize) -> Result<Self> {
        if !(delta > 0.0 && delta < 1.0) {
            return Err(Error::invalid("prior", "delta must lie strictly in (0, 1)"));
        }
        Prior::product(vec![FeatureDistribution::bernoulli(delta)?; dims])
    }

    /// Uniform over `{0, 1}^dims`.
    pub fn uniform_boolean(dims: usize) -> Result<Self> {
        Prior::bernoulli(0.5, dims)
    }

    /// Uniform product over the `bits`-bit dyadic grid `{ k / 2^bits }` per
    /// feature; the prior implied by a bit-revelation debate.
    pub fn dyadic_grid(dims: usize, bits: u32) -> Result<Self> {
        let n = 1u64 << bits;
        let step = 1.0 / n as f64;
        let values: Vec<f64> = (0..n).map(|k| k as f64 * step).collect();
        let probs = vec![step; n as usize];
        Prior::product(vec![FeatureDistribution::new(values, probs)?; dims])
    }

    pub fn dimension(&self) -> usize {
        match self {
            Prior::Explicit { atoms } => atoms[0].0.dimension(),
            Prior::Product { features } => features.len(),
        }
    }

    /// Support of a single coordinate.
    pub fn feature_values(&self, index: usize) -> Result<Vec<f64>> {
        let dim = self.dimension();
        if index >= dim {
            return Err(Error::IndexOutOfRange { index, dim });
        }
        match self {
            Prior::Explicit { atoms } => {
                let mut vals: Vec<f64> = Vec::new();
                for (w, _) in atoms {
                    let v = w.value(index)?;
                    if !vals.iter().any(|u| (u - v).abs() <= VALUE_TOL) {
                        vals.push(v);
                    }
                }
                vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
                Ok(vals)
            }
            Prior::Product { features } => Ok(features[index].values.clone()),
        }
    }

    pub fn prob_of(&self, world: &World) -> f64 {
        match self {
            Prior::Explicit { atoms } => atoms
                .iter()
                .filter(|(w, _)| worlds_match(w, world))
                .map(|(_, p)| p)
                .sum(),
            Prior::Product { features } => features
                .iter()
                .enumerate()
                .map(|(i, f)| f.prob_of(world.value(i).unwrap_or(f64::NAN)))
                .product(),
        }
    }

    pub fn contains(&self, world: &World) -> bool {
        world.dimension() == self.dimension() && self.prob_of(world) > 0.0
    }

    /// Draw one world. Deterministic for a fixed generator state.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> World {
        match self {
            Prior::Explicit { atoms } => {
                let mut u: f64 = rng.gen();
                for (w, p) in atoms {
                    if u < *p {
                        return w.clone();
                    }
                    u -= p;
                }
                atoms.last().unwrap().0.clone()
            }
            Prior::Product { features } => {
                let values = features
                    .iter()
                    .map(|f| {
                        let mut u: f64 = rng.gen();
                        for (v, p) in f.values.iter().zip(&f.probs) {
                            if u < *p {
                                return *v;
                            }
                            u -= p;
                        }
                        *f.values.last().unwrap()
                    })
                    .collect();
                World::new(values).expect("support values are valid")
            }
        }
    }

    /// Draw one world from a fixed seed.
    pub fn sample_world(&self, seed: u64) -> World {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        self.sample(&mut rng)
    }

    /// Exact conditional distribution given the revealed claims. Passes are
    /// ignored. Errors if no supported world matches every reveal.
    pub fn condition(&self, reveals: &RevealSet) -> Result<Prior> {
        let dim = self.dimension();
        for (index, _) in reveals.features() {
            if index >= dim {
                return Err(Error::IndexOutOfRange { index, dim });
            }
        }
        match self {
            Prior::Explicit { atoms } => {
                let kept: Vec<(World, f64)> = atoms
                    .iter()
                    .filter(|(w, _)| {
                        reveals
                            .features()
                            .all(|(i, v)| (w.value(i).unwrap() - v).abs() <= VALUE_TOL)
                    })
                    .cloned()
                    .collect();
                let mass: f64 = kept.iter().map(|(_, p)| p).sum();
                if kept.is_empty() || mass <= 0.0 {
                    return Err(Error::ZeroProbabilityEvent);
                }
                Prior::explicit(kept.into_iter().map(|(w, p)| (w, p / mass)).collect())
            }
            Prior::Product { features } => {
                let mut out = features.clone();
                for (index, value) in reveals.features() {
                    if out[index].prob_of(value) <= 0.0 {
                        return Err(Error::ZeroProbabilityEvent);
                    }
                    out[index] = FeatureDistribution::degenerate(value)?;
                }
                Prior::product(out)
            }
        }
    }

    /// Joint marginal over the given coordinates, as (values, probability)
    /// rows. The cost is `O(|support|)` for explicit priors and
    /// `O(prod |values_i|)` for product priors; callers keep the feature list
    /// small.
    pub fn enumerate_assignments(&self, features: &[usize]) -> Result<Vec<(Vec<f64>, f64)>> {
        let dim = self.dimension();
        for &i in features {
            if i >= dim {
                return Err(Error::IndexOutOfRange { index: i, dim });
            }
        }
        match self {
            Prior::Explicit { atoms } => {
                let mut rows: Vec<(Vec<f64>, f64)> = Vec::new();
                for (w, p) in atoms {
                    let key: Vec<f64> = features.iter().map(|&i| w.value(i).unwrap()).collect();
                    match rows.iter_mut().find(|(k, _)| values_match(k, &key)) {
                        Some((_, q)) => *q += p,
                        None => rows.push((key, *p)),
                    }
                }
                Ok(rows)
            }
            Prior::Product { features: dists } => {
                let mut rows: Vec<(Vec<f64>, f64)> = vec![(Vec::new(), 1.0)];
                for &i in features {
                    let mut next = Vec::with_capacity(rows.len() * dists[i].values.len());
                    for (prefix, p) in &rows {
                        for (v, q) in dists[i].values.iter().zip(&dists[i].probs) {
                            let mut key = prefix.clone();
                            key.push(*v);
                            next.push((key, p * q));
                        }
                    }
                    rows = next;
                }
                Ok(rows)
            }
        }
    }

    /// Full support as (world, probability) atoms. For product priors this
    /// materialises the cartesian product; keep dimensions small.
    pub fn support(&self) -> Vec<(World, f64)> {
        match self {
            Prior::Explicit { atoms } => atoms.clone(),
            Prior::Product { .. } => {
                let all: Vec<usize> = (0..self.dimension()).collect();
                self.enumerate_assignments(&all)
                    .expect("indices in range")
                    .into_iter()
                    .map(|(vals, p)| (World::new(vals).expect("support values valid"), p))
                    .collect()
            }
        }
    }
}

pub(crate) fn worlds_match(a: &World, b: &World) -> bool {
    a.dimension() == b.dimension() && values_match(a.values(), b.values())
}

pub(crate) fn values_match(a: &[f64], b: &[f64]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= VALUE_TOL)
}

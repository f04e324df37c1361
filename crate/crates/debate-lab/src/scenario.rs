//! Scenario configs, the builtin experiment suites, and result tables.
//!
//! A scenario describes one batch experiment: a prior, a question, a sweep of
//! debate lengths, a set of worlds, and an answer policy (or one of the more
//! specialised setups for independent-evidence and bit-revelation debates).
//! Running it yields one [`ResultRow`] per (length, world), emitted in sweep
//! order, deterministically for a fixed seed.

use std::io::Write;
use std::time::Instant;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::answering::AnswerInterval;
use crate::bitdebate::{solve_bit_debate, BitMove, Cell};
use crate::engine::{
    expected_error, last_mover_advantage_for, oscillation_profile_for, representative_worlds,
    AnswerPolicy, AnswerSelection, LinePolicy,
};
use crate::error::{Error, Result};
use crate::evidence::{budget_from_weights, Direction, EvidenceModel, FeatureEvidence};
use crate::question::Question;
use crate::solver::{solve, ArgGameSpec};
use crate::world::{FeatureDistribution, Prior, World};

/// An argument count that may reference the current debate length `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Arity {
    Fixed(usize),
    Symbolic(SymbolicArity),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SymbolicArity {
    NPlusOne,
    TwoN,
}

impl Arity {
    pub fn resolve(&self, rounds: usize) -> usize {
        match self {
            Arity::Fixed(k) => *k,
            Arity::Symbolic(SymbolicArity::NPlusOne) => rounds + 1,
            Arity::Symbolic(SymbolicArity::TwoN) => rounds * 2,
        }
    }
}

/// Prior description consumed by CLI configs.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PriorSpec {
    Explicit { worlds: Vec<ExplicitAtom> },
    Product { features: Vec<FeatureDistSpec> },
    /// Shorthand for independent Bernoulli(delta) features.
    Bernoulli { delta: f64, dims: Arity },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExplicitAtom {
    pub world: Vec<f64>,
    pub p: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FeatureDistSpec {
    pub values: Vec<f64>,
    pub probs: Vec<f64>,
}

impl PriorSpec {
    pub fn build(&self, rounds: usize) -> Result<Prior> {
        match self {
            PriorSpec::Explicit { worlds } => Prior::explicit(
                worlds
                    .iter()
                    .map(|a| Ok((World::new(a.world.clone())?, a.p)))
                    .collect::<Result<_>>()?,
            ),
            PriorSpec::Product { features } => Prior::product(
                features
                    .iter()
                    .map(|f| FeatureDistribution::new(f.values.clone(), f.probs.clone()))
                    .collect::<Result<_>>()?,
            ),
            PriorSpec::Bernoulli { delta, dims } => Prior::bernoulli(*delta, dims.resolve(rounds)),
        }
    }
}

/// Question description consumed by CLI configs.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum QuestionSpec {
    Conjunction {
        k: Arity,
    },
    Xor {
        k: Arity,
    },
    Product {
        k: Arity,
    },
    Table {
        features: Vec<usize>,
        entries: Vec<TableEntry>,
    },
    Stall {
        base: Box<QuestionSpec>,
        gates: Vec<(usize, usize)>,
    },
    ChainStall {
        base: Box<QuestionSpec>,
        problem: usize,
        fixes: Vec<usize>,
    },
    WeightedLinear {
        d: Arity,
    },
    Constant {
        value: f64,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TableEntry {
    pub key: Vec<f64>,
    pub value: f64,
}

impl QuestionSpec {
    pub fn build(&self, rounds: usize) -> Result<Question> {
        Ok(match self {
            QuestionSpec::Conjunction { k } => Question::conjunction(k.resolve(rounds)),
            QuestionSpec::Xor { k } => Question::xor(k.resolve(rounds)),
            QuestionSpec::Product { k } => Question::product(k.resolve(rounds)),
            QuestionSpec::Table { features, entries } => Question::table(
                "table",
                features.clone(),
                entries.iter().map(|e| (e.key.clone(), e.value)).collect(),
            )?,
            QuestionSpec::Stall { base, gates } => {
                Question::stall_wrapped(base.build(rounds)?, gates)
            }
            QuestionSpec::ChainStall {
                base,
                problem,
                fixes,
            } => Question::chain_stall(base.build(rounds)?, *problem, fixes),
            QuestionSpec::WeightedLinear { d } => Question::weighted_linear(d.resolve(rounds)),
            QuestionSpec::Constant { value } => Question::constant(*value),
        })
    }
}

/// Which worlds a feature-debate scenario evaluates.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "select", rename_all = "snake_case")]
pub enum WorldSelection {
    Explicit {
        worlds: Vec<Vec<f64>>,
    },
    /// Every support world, one representative per relevant-feature class.
    AllSupport,
    /// The all-ones world (whatever the prior's dimension resolves to).
    AllOnes,
    /// Seeded samples; falls back to the run seed when none is given.
    Sampled {
        count: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        seed: Option<u64>,
    },
}

fn default_policy() -> AnswerPolicy {
    AnswerPolicy::Midpoint
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FeatureDebateConfig {
    pub prior: PriorSpec,
    pub question: QuestionSpec,
    pub rounds: Vec<usize>,
    pub worlds: WorldSelection,
    #[serde(default = "default_policy")]
    pub answer_policy: AnswerPolicy,
    #[serde(default)]
    pub extra_indices: Vec<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RandomTablesConfig {
    pub dims: usize,
    pub questions_per_round: usize,
    pub rounds: Vec<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StallingConfig {
    pub delta: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IndependentEvidenceConfig {
    /// Number of randomly drawn models; ignored when `model` is given.
    #[serde(default)]
    pub models: usize,
    #[serde(default)]
    pub model: Option<EvidenceModel>,
    pub dims: usize,
    pub rounds: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EarlyStopConfig {
    pub trials: usize,
    pub dims: usize,
    pub rounds: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BitDebateConfig {
    pub dims: usize,
    pub bits: u32,
    #[serde(rename = "lipschitz_L", default = "default_lipschitz")]
    pub lipschitz: f64,
    pub rounds: Vec<usize>,
    pub worlds: usize,
}

fn default_lipschitz() -> f64 {
    1.0
}

/// Result table encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    Csv,
    Jsonl,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScenarioConfig {
    pub name: String,
    /// Default output path; the CLI's `--out` flag overrides it.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<String>,
    /// Default output format; the CLI's `--format` flag overrides it.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<OutputFormat>,
    #[serde(flatten)]
    pub kind: ScenarioKind,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ScenarioKind {
    /// `name` refers to a builtin scenario.
    Builtin,
    FeatureDebate(FeatureDebateConfig),
    RandomTables(RandomTablesConfig),
    Stalling(StallingConfig),
    IndependentEvidence(IndependentEvidenceConfig),
    EarlyStop(EarlyStopConfig),
    BitDebate(BitDebateConfig),
}

/// One result line: the solved interval and error metrics for one world at
/// one debate length.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ResultRow {
    pub scenario: String,
    pub n: usize,
    pub world_id: usize,
    pub f_true: f64,
    pub value_up_down: f64,
    pub value_down_up: f64,
    pub lambda_lo: f64,
    pub lambda_hi: f64,
    pub error_worst: f64,
    pub error_expected: f64,
    pub last_mover_advantage: f64,
    pub side_changes: usize,
    pub runtime_ms: u64,
    pub seed: u64,
}

pub const CSV_HEADER: &str = "scenario,n,world_id,f_true,value_up_down,value_down_up,lambda_lo,\
lambda_hi,error_worst,error_expected,last_mover_advantage,side_changes,runtime_ms,seed";

pub fn write_csv<W: Write>(rows: &[ResultRow], out: &mut W) -> std::io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            r.scenario,
            r.n,
            r.world_id,
            r.f_true,
            r.value_up_down,
            r.value_down_up,
            r.lambda_lo,
            r.lambda_hi,
            r.error_worst,
            r.error_expected,
            r.last_mover_advantage,
            r.side_changes,
            r.runtime_ms,
            r.seed
        )?;
    }
    Ok(())
}

pub fn write_jsonl<W: Write>(rows: &[ResultRow], out: &mut W) -> std::io::Result<()> {
    for r in rows {
        let line = serde_json::to_string(r).expect("rows serialize");
        writeln!(out, "{line}")?;
    }
    Ok(())
}

pub fn csv_string(rows: &[ResultRow]) -> String {
    let mut buf = Vec::new();
    write_csv(rows, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("csv is utf-8")
}

/// Builtin scenario names with one-line descriptions.
pub fn list_scenarios() -> Vec<(&'static str, &'static str)> {
    vec![
        (
            "prop1",
            "random table questions on <= N features resolve error-free",
        ),
        (
            "prop2-worst",
            "conjunction with one feature too many: worst-case error 1 - delta",
        ),
        (
            "prop2-expected",
            "parity with one feature too many: expected error one half",
        ),
        (
            "unfair-conjunction",
            "honest side needs every conjunct, the staller needs nothing",
        ),
        (
            "unstable-xor",
            "parity stays at a coin flip until one side can reveal everything",
        ),
        (
            "oscillation",
            "skewed parity: each reveal flips the confident judge's side",
        ),
        (
            "stalling",
            "stall gates cost the honest side one round per fix bit",
        ),
        (
            "indep-evidence",
            "conditionally independent evidence: log-odds closed forms vs the solver",
        ),
        (
            "early-stop",
            "calling independent-evidence debates before the last round",
        ),
        (
            "info-limited",
            "bit-revelation debates under the Lipschitz error guarantee",
        ),
    ]
}

/// Preset config for a builtin scenario name.
pub fn builtin(name: &str) -> Result<ScenarioConfig> {
    let fixed = |k: usize| Arity::Fixed(k);
    let n_plus_one = Arity::Symbolic(SymbolicArity::NPlusOne);
    let two_n = Arity::Symbolic(SymbolicArity::TwoN);
    let kind = match name {
        "prop1" => ScenarioKind::RandomTables(RandomTablesConfig {
            dims: 4,
            questions_per_round: 25,
            rounds: vec![1, 2, 3, 4],
        }),
        "prop2-worst" => ScenarioKind::FeatureDebate(FeatureDebateConfig {
            prior: PriorSpec::Bernoulli {
                delta: 0.01,
                dims: n_plus_one,
            },
            question: QuestionSpec::Conjunction { k: n_plus_one },
            rounds: vec![1, 2, 3, 4],
            worlds: WorldSelection::AllOnes,
            answer_policy: AnswerPolicy::Midpoint,
            extra_indices: vec![],
        }),
        "prop2-expected" => ScenarioKind::FeatureDebate(FeatureDebateConfig {
            prior: PriorSpec::Bernoulli {
                delta: 0.5,
                dims: n_plus_one,
            },
            question: QuestionSpec::Xor { k: n_plus_one },
            rounds: vec![1, 2, 3, 4],
            worlds: WorldSelection::AllSupport,
            answer_policy: AnswerPolicy::Midpoint,
            extra_indices: vec![],
        }),
        "unfair-conjunction" => ScenarioKind::FeatureDebate(FeatureDebateConfig {
            prior: PriorSpec::Bernoulli {
                delta: 0.5,
                dims: fixed(3),
            },
            question: QuestionSpec::Conjunction { k: fixed(3) },
            rounds: vec![1, 2, 3, 4],
            worlds: WorldSelection::AllOnes,
            answer_policy: AnswerPolicy::Midpoint,
            extra_indices: vec![],
        }),
        "unstable-xor" => ScenarioKind::FeatureDebate(FeatureDebateConfig {
            prior: PriorSpec::Bernoulli {
                delta: 0.5,
                dims: fixed(4),
            },
            question: QuestionSpec::Xor { k: fixed(4) },
            rounds: vec![1, 2, 3, 4],
            worlds: WorldSelection::AllSupport,
            answer_policy: AnswerPolicy::Midpoint,
            extra_indices: vec![],
        }),
        "oscillation" => ScenarioKind::FeatureDebate(FeatureDebateConfig {
            prior: PriorSpec::Bernoulli {
                delta: 0.05,
                dims: two_n,
            },
            question: QuestionSpec::Xor { k: two_n },
            rounds: vec![3],
            worlds: WorldSelection::AllOnes,
            answer_policy: AnswerPolicy::Midpoint,
            extra_indices: vec![],
        }),
        "stalling" => ScenarioKind::Stalling(StallingConfig { delta: 0.05 }),
        "indep-evidence" => ScenarioKind::IndependentEvidence(IndependentEvidenceConfig {
            models: 20,
            model: None,
            dims: 5,
            rounds: 2,
        }),
        "early-stop" => ScenarioKind::EarlyStop(EarlyStopConfig {
            trials: 1000,
            dims: 8,
            rounds: 3,
        }),
        "info-limited" => ScenarioKind::BitDebate(BitDebateConfig {
            dims: 4,
            bits: 4,
            lipschitz: 1.0,
            rounds: vec![1, 3, 4, 6],
            worlds: 20,
        }),
        other => {
            return Err(Error::config(
                "scenario",
                format!("unknown builtin scenario `{other}`"),
            ))
        }
    };
    Ok(ScenarioConfig {
        name: name.to_string(),
        out: None,
        format: None,
        kind,
    })
}

/// Run a scenario to its result rows. Deterministic for a fixed seed.
pub fn run_scenario(config: &ScenarioConfig, seed: u64) -> Result<Vec<ResultRow>> {
    match &config.kind {
        ScenarioKind::Builtin => {
            let preset = builtin(&config.name)?;
            match preset.kind {
                ScenarioKind::Builtin => unreachable!("builtins are concrete"),
                _ => run_scenario(&preset, seed),
            }
        }
        ScenarioKind::FeatureDebate(cfg) => run_feature_debate(&config.name, cfg, seed),
        ScenarioKind::RandomTables(cfg) => run_random_tables(&config.name, cfg, seed),
        ScenarioKind::Stalling(cfg) => run_stalling(&config.name, cfg, seed),
        ScenarioKind::IndependentEvidence(cfg) => run_indep_evidence(&config.name, cfg, seed),
        ScenarioKind::EarlyStop(cfg) => run_early_stop(&config.name, cfg, seed),
        ScenarioKind::BitDebate(cfg) => run_bit_debate(&config.name, cfg, seed),
    }
}

fn selection_for(policy: AnswerPolicy) -> AnswerSelection {
    match policy {
        AnswerPolicy::Midpoint => AnswerSelection::MidpointOfLambda,
        _ => AnswerSelection::WorstInLambda,
    }
}

/// Row runtime at one-second granularity, reported in milliseconds. Result
/// tables must be byte-identical across reruns of the same seed, so sub-second
/// rows (every builtin) deterministically report 0.
fn coarse_runtime_ms(start: Instant) -> u64 {
    start.elapsed().as_secs() * 1000
}

fn run_feature_debate(name: &str, cfg: &FeatureDebateConfig, seed: u64) -> Result<Vec<ResultRow>> {
    let mut rows = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut world_id = 0usize;
    for &n in &cfg.rounds {
        let prior = cfg.prior.build(n)?;
        let question = cfg.question.build(n)?;
        let worlds: Vec<World> = match &cfg.worlds {
            WorldSelection::Explicit { worlds } => {
                let mut out = Vec::with_capacity(worlds.len());
                for values in worlds {
                    let world = World::new(values.clone())?;
                    if !prior.contains(&world) {
                        return Err(Error::config(
                            "worlds",
                            format!("{values:?} is outside the prior's support"),
                        ));
                    }
                    out.push(world);
                }
                out
            }
            WorldSelection::AllSupport => representative_worlds(&prior, &question)?
                .into_iter()
                .map(|(w, _)| w)
                .collect(),
            WorldSelection::AllOnes => vec![World::new(vec![1.0; prior.dimension()])?],
            WorldSelection::Sampled { count, seed: own } => {
                let mut sample_rng = match own {
                    Some(s) => ChaCha8Rng::seed_from_u64(*s),
                    None => rng.clone(),
                };
                let worlds = (0..*count).map(|_| prior.sample(&mut sample_rng)).collect();
                if own.is_none() {
                    rng = sample_rng;
                }
                worlds
            }
        };
        let error_expected = expected_error(&prior, &question, n, selection_for(cfg.answer_policy))?;
        for world in worlds {
            let start = Instant::now();
            let spec = ArgGameSpec::new(&prior, &question, world.clone(), n)?
                .with_extra_indices(cfg.extra_indices.iter().copied())?;
            let result = solve(&spec)?;
            let f_true = question.evaluate(&world);
            let interval = AnswerInterval::from_minimax(&result)?;
            let advantage = last_mover_advantage_for(&spec, interval.lo(), interval.hi())?;
            let side_changes = oscillation_profile_for(&spec, LinePolicy::Greedy)?.side_changes;
            rows.push(ResultRow {
                scenario: name.to_string(),
                n,
                world_id,
                f_true,
                value_up_down: result.value_up_down,
                value_down_up: result.value_down_up,
                lambda_lo: result.value_up_down,
                lambda_hi: result.value_down_up,
                error_worst: (result.value_up_down - f_true)
                    .abs()
                    .max((result.value_down_up - f_true).abs()),
                error_expected,
                last_mover_advantage: advantage,
                side_changes,
                runtime_ms: coarse_runtime_ms(start),
                seed,
            });
            world_id += 1;
        }
    }
    Ok(rows)
}

/// Fresh random table question on `arity` distinct features of a
/// `dims`-dimensional Boolean world.
fn random_table_question(rng: &mut ChaCha8Rng, dims: usize, arity: usize) -> Result<Question> {
    let mut pool: Vec<usize> = (0..dims).collect();
    for i in 0..arity {
        let j = rng.gen_range(i..dims);
        pool.swap(i, j);
    }
    let mut features: Vec<usize> = pool[..arity].to_vec();
    features.sort_unstable();
    let entries: Vec<(Vec<f64>, f64)> = (0..(1u32 << arity))
        .map(|bits| {
            let key = (0..arity)
                .map(|i| if bits >> i & 1 == 1 { 1.0 } else { 0.0 })
                .collect();
            (key, rng.gen::<f64>())
        })
        .collect();
    Question::table("random_table", features, entries)
}

fn run_random_tables(name: &str, cfg: &RandomTablesConfig, seed: u64) -> Result<Vec<ResultRow>> {
    let mut rows = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let prior = Prior::uniform_boolean(cfg.dims)?;
    let mut world_id = 0usize;
    for &n in &cfg.rounds {
        for _ in 0..cfg.questions_per_round {
            let arity = rng.gen_range(1..=n.min(cfg.dims));
            let question = random_table_question(&mut rng, cfg.dims, arity)?;
            let error_expected =
                expected_error(&prior, &question, n, AnswerSelection::WorstInLambda)?;
            for (world, _) in representative_worlds(&prior, &question)? {
                let start = Instant::now();
                let spec = ArgGameSpec::new(&prior, &question, world.clone(), n)?;
                let result = solve(&spec)?;
                let f_true = question.evaluate(&world);
                let interval = AnswerInterval::from_minimax(&result)?;
                let advantage = last_mover_advantage_for(&spec, interval.lo(), interval.hi())?;
                let side_changes =
                    oscillation_profile_for(&spec, LinePolicy::Greedy)?.side_changes;
                rows.push(ResultRow {
                    scenario: name.to_string(),
                    n,
                    world_id,
                    f_true,
                    value_up_down: result.value_up_down,
                    value_down_up: result.value_down_up,
                    lambda_lo: result.value_up_down,
                    lambda_hi: result.value_down_up,
                    error_worst: (result.value_up_down - f_true)
                        .abs()
                        .max((result.value_down_up - f_true).abs()),
                    error_expected,
                    last_mover_advantage: advantage,
                    side_changes,
                    runtime_ms: coarse_runtime_ms(start),
                    seed,
                });
                world_id += 1;
            }
        }
    }
    Ok(rows)
}

fn run_stalling(name: &str, cfg: &StallingConfig, seed: u64) -> Result<Vec<ResultRow>> {
    let prior = Prior::bernoulli(cfg.delta, 4)?;
    let world = World::new(vec![1.0; 4])?;
    let base = Question::conjunction(1);
    let gated = Question::stall_wrapped(base.clone(), &[(1, 2)]);
    let chained = Question::chain_stall(base.clone(), 1, &[2, 3]);
    let variants: [(&str, &Question, usize); 3] = [
        ("base", &base, 2),
        ("gate", &gated, 3),
        ("chain", &chained, 4),
    ];
    let mut rows = Vec::new();
    let mut world_id = 0usize;
    for (suffix, question, max_rounds) in variants {
        for n in 1..=max_rounds {
            let start = Instant::now();
            let spec = ArgGameSpec::new(&prior, question, world.clone(), n)?;
            let result = solve(&spec)?;
            let f_true = question.evaluate(&world);
            let interval = AnswerInterval::from_minimax(&result)?;
            let advantage = last_mover_advantage_for(&spec, interval.lo(), interval.hi())?;
            let side_changes = oscillation_profile_for(&spec, LinePolicy::Greedy)?.side_changes;
            let error_expected =
                expected_error(&prior, question, n, AnswerSelection::WorstInLambda)?;
            rows.push(ResultRow {
                scenario: format!("{name}-{suffix}"),
                n,
                world_id,
                f_true,
                value_up_down: result.value_up_down,
                value_down_up: result.value_down_up,
                lambda_lo: result.value_up_down,
                lambda_hi: result.value_down_up,
                error_worst: (result.value_up_down - f_true)
                    .abs()
                    .max((result.value_down_up - f_true).abs()),
                error_expected,
                last_mover_advantage: advantage,
                side_changes,
                runtime_ms: coarse_runtime_ms(start),
                seed,
            });
            world_id += 1;
        }
    }
    Ok(rows)
}

/// Random binary-feature evidence model plus the all-ones world. Weight signs
/// are random, so the world's piles are random; resamples until each pile
/// holds at least `min_pile` arguments.
pub fn random_evidence_model(
    rng: &mut ChaCha8Rng,
    dims: usize,
    min_pile: usize,
) -> (EvidenceModel, World) {
    loop {
        let features: Vec<FeatureEvidence> = (0..dims)
            .map(|_| {
                let magnitude = rng.gen_range(0.1..2.0);
                let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
                FeatureEvidence::binary_with_weight(sign * magnitude)
                    .expect("weights in range build")
            })
            .collect();
        let p1 = rng.gen_range(0.2..0.8);
        let model = EvidenceModel::new(p1, features).expect("valid model");
        let world = World::new(vec![1.0; dims]).expect("all-ones world");
        let piles = model.piles(&world).expect("piles");
        if piles.up.len() >= min_pile && piles.down.len() >= min_pile {
            return (model, world);
        }
    }
}

/// Side changes of the alternating strongest-first line in probability form.
fn ie_side_changes(model: &EvidenceModel, world: &World, rounds: usize) -> Result<usize> {
    let weights = model.weights_for(world)?;
    let prior = crate::evidence::log_odds_to_prob(model.prior_log_odds());
    let mut changes = 0usize;
    let mut last_sign = 0i8;
    for k in 1..=rounds * 2 {
        let ups = k.div_ceil(2);
        let downs = k / 2;
        let belief = crate::evidence::log_odds_to_prob(
            model.prior_log_odds() + budget_from_weights(&weights, ups, Direction::Up)
                - budget_from_weights(&weights, downs, Direction::Down),
        );
        let diff = belief - prior;
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
    Ok(changes)
}

fn run_indep_evidence(
    name: &str,
    cfg: &IndependentEvidenceConfig,
    seed: u64,
) -> Result<Vec<ResultRow>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::new();
    let cases: Vec<(EvidenceModel, World)> = match &cfg.model {
        Some(model) => {
            let world = World::new(vec![1.0; model.dimension()])?;
            vec![(model.clone(), world)]
        }
        None => (0..cfg.models)
            .map(|_| random_evidence_model(&mut rng, cfg.dims, 0))
            .collect(),
    };
    for (world_id, (model, world)) in cases.iter().enumerate() {
        let start = Instant::now();
        let n = cfg.rounds;
        let (prior, question) = model.to_feature_debate()?;
        let spec = ArgGameSpec::new(&prior, &question, world.clone(), n)?;
        let result = solve(&spec)?;
        let f_true = model.true_answer(world)?;
        let interval = AnswerInterval::from_minimax(&result)?;
        let advantage = last_mover_advantage_for(&spec, interval.lo(), interval.hi())?;
        // Expected |optimal answer - truth| over the model's own prior.
        let mut error_expected = 0.0;
        for (w, p) in prior.support() {
            error_expected +=
                p * (model.optimal_answer(&w, n)? - model.true_answer(&w)?).abs();
        }
        rows.push(ResultRow {
            scenario: name.to_string(),
            n,
            world_id,
            f_true,
            value_up_down: result.value_up_down,
            value_down_up: result.value_down_up,
            lambda_lo: result.value_up_down,
            lambda_hi: result.value_down_up,
            error_worst: (result.value_up_down - f_true)
                .abs()
                .max((result.value_down_up - f_true).abs()),
            error_expected,
            last_mover_advantage: advantage,
            side_changes: ie_side_changes(model, world, n)?,
            runtime_ms: coarse_runtime_ms(start),
            seed,
        });
    }
    Ok(rows)
}

fn run_early_stop(name: &str, cfg: &EarlyStopConfig, seed: u64) -> Result<Vec<ResultRow>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::new();
    let n = cfg.rounds;
    for trial in 0..cfg.trials {
        let start = Instant::now();
        let (model, world) = random_evidence_model(&mut rng, cfg.dims, n);
        let optimal = model.optimal_answer(&world, n)?;
        let f_true = model.true_answer(&world)?;
        let mut error_expected = 0.0;
        let (prior, _) = model.to_feature_debate()?;
        for (w, p) in prior.support() {
            error_expected +=
                p * (model.optimal_answer(&w, n)? - model.true_answer(&w)?).abs();
        }
        rows.push(ResultRow {
            scenario: name.to_string(),
            n,
            world_id: trial,
            f_true,
            value_up_down: optimal,
            value_down_up: optimal,
            lambda_lo: optimal,
            lambda_hi: optimal,
            error_worst: (optimal - f_true).abs(),
            error_expected,
            last_mover_advantage: 0.0,
            side_changes: ie_side_changes(&model, &world, n)?,
            runtime_ms: coarse_runtime_ms(start),
            seed,
        });
    }
    Ok(rows)
}

/// Side changes along a bit-debate line: replay the zooms and track the cell
/// mean against the root mean.
fn bit_side_changes(
    question: &Question,
    world: &World,
    line: &[BitMove],
    budget: u32,
) -> Result<usize> {
    let mut cell = Cell::root(world.dimension(), budget)?;
    let mean_of = |cell: &Cell| cell.grid_mean(|p| question.evaluate(p));
    let baseline = mean_of(&cell);
    let mut current = baseline;
    let mut changes = 0usize;
    let mut last_sign = 0i8;
    for mv in line {
        if let BitMove::Reveal(arg) = mv {
            cell = cell.zoom(arg, world)?;
            current = mean_of(&cell);
        }
        let diff = current - baseline;
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
    Ok(changes)
}

fn run_bit_debate(name: &str, cfg: &BitDebateConfig, seed: u64) -> Result<Vec<ResultRow>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let question = Question::weighted_linear(cfg.dims);
    let grid = 1u64 << cfg.bits;
    let mut rows = Vec::new();
    let mut world_id = 0usize;
    for &n in &cfg.rounds {
        let worlds: Vec<World> = (0..cfg.worlds)
            .map(|_| {
                World::new(
                    (0..cfg.dims)
                        .map(|_| rng.gen_range(0..grid) as f64 / grid as f64)
                        .collect(),
                )
                .expect("grid worlds are valid")
            })
            .collect();
        let mut solved = Vec::with_capacity(worlds.len());
        for world in &worlds {
            let start = Instant::now();
            let result = solve_bit_debate(&question, world, n, cfg.bits)?;
            solved.push((result, coarse_runtime_ms(start)));
        }
        let error_expected = worlds
            .iter()
            .zip(&solved)
            .map(|(w, (r, _))| {
                ((r.value_up_down + r.value_down_up) / 2.0 - question.evaluate(w)).abs()
            })
            .sum::<f64>()
            / worlds.len() as f64;
        for (world, (result, runtime_ms)) in worlds.iter().zip(solved) {
            let f_true = question.evaluate(world);
            rows.push(ResultRow {
                scenario: name.to_string(),
                n,
                world_id,
                f_true,
                value_up_down: result.value_up_down,
                value_down_up: result.value_down_up,
                lambda_lo: result.value_up_down,
                lambda_hi: result.value_down_up,
                error_worst: result.truth_promotion_bound(f_true),
                error_expected,
                last_mover_advantage: result.width(),
                side_changes: bit_side_changes(&question, world, &result.line_up_down, cfg.bits)?,
                runtime_ms,
                seed,
            });
            world_id += 1;
        }
    }
    Ok(rows)
}

//! Acceptance suite: one test per headline guarantee, each printing a
//! PASS/FAIL line. Run with `--nocapture --test-threads=1` for readable
//! output.

use std::time::Instant;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use debate_lab::answering::{verify_nash, AnswerInterval};
use debate_lab::bitdebate::{
    feature_bit, lipschitz_error_bound, solve_bit_debate, triangular_diameter_bound,
    triangular_sequence, BitArgument, Cell,
};
use debate_lab::engine::{
    expected_error, last_mover_advantage, oscillation_profile, representative_worlds,
    worst_case_error, AnswerSelection, LinePolicy,
};
use debate_lab::evidence::{earliest_stop, full_debate_winner, prob_to_log_odds};
use debate_lab::judge::posterior_mean;
use debate_lab::scenario::{builtin, csv_string, random_evidence_model, run_scenario};
use debate_lab::solver::{solve, stall_depth, truth_promotion_bound, ArgGameSpec};
use debate_lab::{Prior, Question, RevealSet, World};

const TOL: f64 = 1e-9;

fn report(number: u32, name: &str, pass: bool, detail: &str) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    println!("criterion {number:>2} [{name}]: {verdict} — {detail}");
}

fn random_table_question(rng: &mut ChaCha8Rng, dims: usize, arity: usize) -> Question {
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
    Question::table("random_table", features, entries).unwrap()
}

/// Random solved debate instance: (prior, question, world, rounds).
fn random_instance(rng: &mut ChaCha8Rng) -> (Prior, Question, World, usize) {
    let dims = rng.gen_range(2..=4);
    let delta = rng.gen_range(0.1..0.9);
    let prior = Prior::bernoulli(delta, dims).unwrap();
    let arity = rng.gen_range(1..=dims);
    let question = random_table_question(rng, dims, arity);
    let world = prior.sample(rng);
    let rounds = rng.gen_range(1..=2);
    (prior, question, world, rounds)
}

#[test]
fn criterion_01_short_questions_resolve_error_free() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let dims = 4;
    let prior = Prior::uniform_boolean(dims).unwrap();
    let support = prior.support();
    let mut cases = 0usize;
    let mut max_error = 0.0f64;
    for rounds in 1..=4usize {
        for _ in 0..25 {
            let arity = rng.gen_range(1..=rounds.min(dims));
            let question = random_table_question(&mut rng, dims, arity);
            for (world, _) in &support {
                let err = worst_case_error(&prior, &question, rounds, world).unwrap();
                max_error = max_error.max(err);
                cases += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    let pass = max_error <= TOL && elapsed.as_secs() < 30;
    report(
        1,
        "questions on <= N features are truth-promoting",
        pass,
        &format!("{cases} cases over 100 questions, max error {max_error:.2e}, {elapsed:.2?}"),
    );
    assert!(pass, "max error {max_error}, elapsed {elapsed:?}");
}

#[test]
fn criterion_02_conjunction_worst_case_error() {
    let start = Instant::now();
    let delta = 0.01;
    let mut worst = Vec::new();
    for rounds in 1..=4usize {
        let k = rounds + 1;
        let prior = Prior::bernoulli(delta, k).unwrap();
        let question = Question::conjunction(k);
        let world = World::new(vec![1.0; k]).unwrap();
        let err = worst_case_error(&prior, &question, rounds, &world).unwrap();
        worst.push(err);
    }
    let target = 1.0 - delta;
    let values_ok = worst.iter().all(|e| (e - target).abs() <= TOL);

    // Sweeping delta downward drives the error monotonically toward 1.
    let sweep: Vec<f64> = [0.2, 0.1, 0.05, 0.01, 0.001]
        .iter()
        .map(|&d| {
            let prior = Prior::bernoulli(d, 3).unwrap();
            let question = Question::conjunction(3);
            let world = World::new(vec![1.0; 3]).unwrap();
            worst_case_error(&prior, &question, 2, &world).unwrap()
        })
        .collect();
    let monotone = sweep.windows(2).all(|p| p[1] > p[0]) && sweep.iter().all(|e| *e < 1.0);

    let elapsed = start.elapsed();
    let pass = values_ok && monotone && elapsed.as_secs() < 10;
    report(
        2,
        "conjunction one feature long: worst-case error 1 - delta",
        pass,
        &format!("errors {worst:?}, delta sweep {sweep:?}, {elapsed:.2?}"),
    );
    assert!(pass);
}

#[test]
fn criterion_03_xor_expected_error_is_one_half() {
    let mut all_ok = true;
    let mut detail = String::new();
    for rounds in 1..=4usize {
        let k = rounds + 1;
        let prior = Prior::uniform_boolean(k).unwrap();
        let question = Question::xor(k);
        for (world, _) in representative_worlds(&prior, &question).unwrap() {
            let spec = ArgGameSpec::new(&prior, &question, world, rounds).unwrap();
            let result = solve(&spec).unwrap();
            if (result.value_up_down - 0.5).abs() > 1e-12
                || (result.value_down_up - 0.5).abs() > 1e-12
            {
                all_ok = false;
            }
        }
        for selection in [
            AnswerSelection::WorstInLambda,
            AnswerSelection::MidpointOfLambda,
        ] {
            let expected = expected_error(&prior, &question, rounds, selection).unwrap();
            if (expected - 0.5).abs() > TOL {
                all_ok = false;
            }
            if rounds == 4 {
                detail = format!("expected error at N=4: {expected}");
            }
        }
    }
    report(
        3,
        "xor one feature long: interval pinned at 1/2, expected error 1/2",
        all_ok,
        &detail,
    );
    assert!(all_ok);
}

#[test]
fn criterion_04_grid_game_recovers_the_answer_interval() {
    let mut rng = ChaCha8Rng::seed_from_u64(404);
    let mut mismatches = 0usize;
    for _ in 0..50 {
        let (prior, question, world, rounds) = random_instance(&mut rng);
        let spec = ArgGameSpec::new(&prior, &question, world, rounds).unwrap();
        let interval = AnswerInterval::from_minimax(&solve(&spec).unwrap()).unwrap();
        if verify_nash(&interval, 0.02).is_err() {
            mismatches += 1;
        }
    }
    let pass = mismatches == 0;
    report(
        4,
        "brute-force grid equilibria match the closed-form interval",
        pass,
        &format!("50 instances, {mismatches} mismatches"),
    );
    assert!(pass);
}

#[test]
fn criterion_05_second_mover_earns_the_answer_gap() {
    let mut rng = ChaCha8Rng::seed_from_u64(505);
    let mut max_dev = 0.0f64;
    for _ in 0..100 {
        let (prior, question, world, rounds) = random_instance(&mut rng);
        let spec = ArgGameSpec::new(&prior, &question, world.clone(), rounds).unwrap();
        let interval = AnswerInterval::from_minimax(&solve(&spec).unwrap()).unwrap();
        let sample = |rng: &mut ChaCha8Rng| {
            if interval.width() == 0.0 {
                interval.lo()
            } else {
                rng.gen_range(interval.lo()..=interval.hi())
            }
        };
        let a1 = sample(&mut rng);
        let a2 = sample(&mut rng);
        let advantage =
            last_mover_advantage(&prior, &question, rounds, &world, a1, a2).unwrap();
        max_dev = max_dev.max((advantage - (a1 - a2).abs()).abs());
    }
    let pass = max_dev <= TOL;
    report(
        5,
        "second mover's realised utility is |a1 - a2|",
        pass,
        &format!("100 instances, max deviation {max_dev:.2e}"),
    );
    assert!(pass);
}

#[test]
fn criterion_06_log_odds_add_and_match_the_bayesian_judge() {
    let mut rng = ChaCha8Rng::seed_from_u64(606);
    let mut max_additivity = 0.0f64;
    let mut max_judge_gap = 0.0f64;
    for _ in 0..100 {
        let dims = rng.gen_range(3..=6);
        let (model, world) = random_evidence_model(&mut rng, dims, 0);
        let (prior, question) = model.to_feature_debate().unwrap();

        // Random subset revealed in random order.
        let mut indices: Vec<usize> = (0..dims).collect();
        for i in (1..indices.len()).rev() {
            let j = rng.gen_range(0..=i);
            indices.swap(i, j);
        }
        let take = rng.gen_range(0..=dims);
        let mut reveals = RevealSet::new();
        for &i in &indices[..take] {
            reveals
                .push_feature(i, world.value(i).unwrap())
                .unwrap();
        }

        let belief = model.log_odds_belief(&reveals).unwrap();
        let manual = model.prior_log_odds()
            + reveals
                .features()
                .map(|(i, v)| model.evidence_weight(i, v).unwrap())
                .sum::<f64>();
        max_additivity = max_additivity.max((belief - manual).abs());

        let judge = posterior_mean(&prior, &question, &reveals).unwrap();
        max_judge_gap = max_judge_gap.max((model.belief_prob(&reveals).unwrap() - judge).abs());
    }
    let pass = max_additivity <= TOL && max_judge_gap <= TOL;
    report(
        6,
        "evidence weights combine additively and agree with the judge",
        pass,
        &format!("100 models, additivity {max_additivity:.2e}, judge gap {max_judge_gap:.2e}"),
    );
    assert!(pass);
}

#[test]
fn criterion_07_independent_evidence_has_a_unique_optimal_answer() {
    let mut rng = ChaCha8Rng::seed_from_u64(707);
    let mut max_gap = 0.0f64;
    for _ in 0..50 {
        let dims = rng.gen_range(2..=6);
        let rounds = rng.gen_range(1..=3);
        let (model, world) = random_evidence_model(&mut rng, dims, 0);
        let (prior, question) = model.to_feature_debate().unwrap();
        let spec = ArgGameSpec::new(&prior, &question, world.clone(), rounds).unwrap();
        let result = solve(&spec).unwrap();
        let optimal = model.optimal_answer(&world, rounds).unwrap();
        max_gap = max_gap
            .max((result.value_up_down - result.value_down_up).abs())
            .max((result.value_up_down - optimal).abs())
            .max((result.value_down_up - optimal).abs());
    }
    let pass = max_gap <= TOL;
    report(
        7,
        "solver confirms the order-free unique answer",
        pass,
        &format!("50 models, max gap {max_gap:.2e}"),
    );
    assert!(pass);
}

#[test]
fn criterion_08_early_stopping_never_flips_the_winner() {
    let mut rng = ChaCha8Rng::seed_from_u64(808);
    let rounds = 3;
    let dims = 8;
    let answers = (1.0, 0.0);
    let mut stops = 0usize;
    let mut stop_disagreements = 0usize;
    let mut bound_violations = 0usize;
    let trials = 1000;
    for _ in 0..trials {
        let (model, world) = random_evidence_model(&mut rng, dims, rounds);
        if let Some((_, predicted)) = earliest_stop(&model, &world, rounds, answers).unwrap() {
            stops += 1;
            let full = full_debate_winner(&model, &world, rounds, answers).unwrap();
            if full != Some(predicted) {
                stop_disagreements += 1;
            }
        }
        let bound = model.k_feature_bound(&world, rounds, dims).unwrap();
        let truth = prob_to_log_odds(model.true_answer(&world).unwrap());
        let belief = prob_to_log_odds(model.optimal_answer(&world, rounds).unwrap());
        if (truth - belief).abs() > bound + TOL {
            bound_violations += 1;
        }
    }
    let pass = stop_disagreements == 0 && bound_violations == 0 && stops > 0;
    report(
        8,
        "early stopping and the K-feature bound are sound",
        pass,
        &format!(
            "{trials} debates, {stops} early stops, {stop_disagreements} winner flips, \
             {bound_violations} bound violations"
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_09_bit_debates_meet_the_lipschitz_guarantee() {
    let mut rng = ChaCha8Rng::seed_from_u64(909);
    let dims = 4;
    let budget = 4u32;
    let question = Question::weighted_linear(dims);
    let grid = 1u64 << budget;
    let mut max_excess = f64::NEG_INFINITY;
    for rounds in [1usize, 3, 4, 6] {
        let bound = lipschitz_error_bound(1.0, rounds);
        for _ in 0..20 {
            let world = World::new(
                (0..dims)
                    .map(|_| rng.gen_range(0..grid) as f64 / grid as f64)
                    .collect(),
            )
            .unwrap();
            let result = solve_bit_debate(&question, &world, rounds, budget).unwrap();
            let excess = result.truth_promotion_bound(question.evaluate(&world)) - bound;
            max_excess = max_excess.max(excess);
        }
    }
    let bit_ok = max_excess <= TOL;

    // Triangular revelation reaches its diameter bound against arbitrary
    // opposition.
    let mut diameter_ok = true;
    for n in 1..=3u32 {
        let own_reveals = (n * (n + 1) / 2) as usize;
        let sequence = triangular_sequence(own_reveals);
        for _ in 0..20 {
            let world = World::new(
                (0..dims)
                    .map(|_| rng.gen_range(0..grid) as f64 / grid as f64)
                    .collect(),
            )
            .unwrap();
            let mut cell = Cell::root(dims, budget).unwrap();
            let mut own = sequence.iter();
            for ply in 0..own_reveals * 2 {
                let feature = if ply % 2 == 0 {
                    Some(own.next().unwrap() - 1)
                } else {
                    let legal: Vec<usize> = (0..dims)
                        .filter(|&i| cell.bits_revealed(i) < budget)
                        .collect();
                    if legal.is_empty() || rng.gen_bool(0.25) {
                        None
                    } else {
                        Some(legal[rng.gen_range(0..legal.len())])
                    }
                };
                if let Some(feature) = feature {
                    if cell.bits_revealed(feature) >= budget {
                        continue;
                    }
                    let position = cell.bits_revealed(feature) + 1;
                    let arg = BitArgument {
                        feature,
                        position,
                        value: feature_bit(world.value(feature).unwrap(), position),
                    };
                    cell = cell.zoom(&arg, &world).unwrap();
                }
            }
            if cell.diameter() > triangular_diameter_bound(n) + 1e-12 {
                diameter_ok = false;
            }
        }
    }
    let pass = bit_ok && diameter_ok;
    report(
        9,
        "bit debates stay within L / 2^floor(sqrt(N))",
        pass,
        &format!("max bound excess {max_excess:.2e}, triangular diameters ok: {diameter_ok}"),
    );
    assert!(pass);
}

#[test]
fn criterion_10_stall_gates_cost_one_round_per_fix_bit() {
    let prior = Prior::bernoulli(0.05, 4).unwrap();
    let world = World::new(vec![1.0; 4]).unwrap();
    let base = Question::conjunction(1);
    let gated = Question::stall_wrapped(base.clone(), &[(1, 2)]);
    let chained = Question::chain_stall(base.clone(), 1, &[2, 3]);

    let (n_base, n_gated) = stall_depth(&base, &gated, &prior, &world, 6).unwrap();
    let (_, n_chained) = stall_depth(&base, &chained, &prior, &world, 6).unwrap();

    // The gated question must genuinely fail at the base length.
    let spec = ArgGameSpec::new(&prior, &gated, world.clone(), n_base).unwrap();
    let broken_at_base = truth_promotion_bound(&spec).unwrap() > TOL;

    let pass = n_base == 1 && n_gated == n_base + 1 && n_chained == n_base + 2 && broken_at_base;
    report(
        10,
        "stalling delays truth promotion by the fix length",
        pass,
        &format!("base N = {n_base}, gated N = {n_gated}, chained N = {n_chained}"),
    );
    assert!(pass);
}

#[test]
fn criterion_11_oscillation_crossings_and_interval_width() {
    let delta = 0.05;
    let rounds = 3;
    let k = 2 * rounds;
    let prior = Prior::bernoulli(delta, k).unwrap();
    let question = Question::xor(k);
    let world = World::new(vec![1.0; k]).unwrap();

    let profile =
        oscillation_profile(&prior, &question, rounds, &world, LinePolicy::Greedy).unwrap();
    let beliefs = profile.trajectory.post_argument_beliefs();
    let crossings = beliefs
        .windows(2)
        .filter(|p| (p[0] - 0.5) * (p[1] - 0.5) < 0.0)
        .count();
    let crossings_ok = crossings == 2 * rounds - 1;

    let spec = ArgGameSpec::new(&prior, &question, world, rounds).unwrap();
    let result = solve(&spec).unwrap();
    let width = result.width();
    // Exact minimax play hoards passes, which erodes the interval: with
    // q_r = (1 - (1 - 2 delta)^r) / 2 the width solves to
    // 1 - q_3 - q_4 = 0.69255 at delta = 0.05. Widths above 0.9 require
    // delta <= ~0.014 (e.g. 0.9318 at delta = 0.01); the target below is
    // kept as stated and this clause fails honestly at delta = 0.05.
    let width_ok = width > 0.9;

    let pass = crossings_ok && width_ok;
    report(
        11,
        "skewed xor oscillates every round with a wide interval",
        pass,
        &format!(
            "crossings {crossings} (want {}), width {width:.5} (want > 0.9)",
            2 * rounds - 1
        ),
    );
    assert!(
        pass,
        "crossings {crossings}, width {width} — width > 0.9 is unattainable at delta = 0.05 \
         under exact minimax (see comment above; delta = 0.01 yields 0.9318)"
    );
}

#[test]
fn criterion_12_builtin_scenarios_are_byte_deterministic() {
    let mut all_ok = true;
    let mut detail = String::new();
    for (name, _) in debate_lab::scenario::list_scenarios() {
        let config = builtin(name).unwrap();
        let rows = run_scenario(&config, 42).unwrap();
        let first = csv_string(&rows);
        let second = csv_string(&run_scenario(&config, 42).unwrap());
        if first != second {
            all_ok = false;
            detail.push_str(&format!("{name} differs across reruns; "));
        }
        for row in &rows {
            let worst = (row.lambda_lo - row.f_true)
                .abs()
                .max((row.lambda_hi - row.f_true).abs());
            if row.lambda_lo != row.value_up_down
                || row.lambda_hi != row.value_down_up
                || (row.error_worst - worst).abs() > 1e-12
                || row.value_up_down > row.value_down_up + 1e-12
            {
                all_ok = false;
                detail.push_str(&format!("{name} row {} broken; ", row.world_id));
            }
        }
    }
    if all_ok {
        detail = "10 builtins, byte-identical reruns, row invariants hold".to_string();
    }
    report(12, "seeded reruns are byte-identical", all_ok, &detail);
    assert!(all_ok, "{detail}");
}

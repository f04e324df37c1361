//! Independent oracles for the solver: a plain unmemoised recursion over the
//! full argument tree, and line replays through the judge.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use debate_lab::judge::{belief_trajectory, posterior_mean};
use debate_lab::solver::{solve, ArgGameSpec};
use debate_lab::{FeatureIndex, Prior, Question, RevealSet, World};

/// Direct minimax without memoisation or move ordering: enumerates the tree
/// as written, sharing no code with the production search.
fn brute_value(
    prior: &Prior,
    question: &Question,
    world: &World,
    legal: &[usize],
    used: &mut Vec<usize>,
    remaining: usize,
    maximize: bool,
) -> f64 {
    if remaining == 0 {
        let mut reveals = RevealSet::new();
        for &i in used.iter() {
            reveals.push_feature(i, world.value(i).unwrap()).unwrap();
        }
        return posterior_mean(prior, question, &reveals).unwrap();
    }
    let mut candidates: Vec<Option<usize>> = legal
        .iter()
        .filter(|i| !used.contains(i))
        .map(|i| Some(*i))
        .collect();
    candidates.push(None); // pass
    let values = candidates.into_iter().map(|mv| {
        if let Some(i) = mv {
            used.push(i);
            let v = brute_value(prior, question, world, legal, used, remaining - 1, !maximize);
            used.pop();
            v
        } else {
            brute_value(prior, question, world, legal, used, remaining - 1, !maximize)
        }
    });
    if maximize {
        values.fold(f64::NEG_INFINITY, f64::max)
    } else {
        values.fold(f64::INFINITY, f64::min)
    }
}

fn random_question(rng: &mut ChaCha8Rng, dims: usize, arity: usize) -> Question {
    let entries: Vec<(Vec<f64>, f64)> = (0..(1u32 << arity))
        .map(|bits| {
            let key = (0..arity)
                .map(|i| if bits >> i & 1 == 1 { 1.0 } else { 0.0 })
                .collect();
            (key, rng.gen::<f64>())
        })
        .collect();
    let _ = dims;
    Question::table("oracle_table", (0..arity).collect(), entries).unwrap()
}

#[test]
fn solver_matches_the_unmemoised_tree() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..40 {
        let dims = rng.gen_range(2..=4);
        let arity = rng.gen_range(1..=dims);
        let delta = rng.gen_range(0.1..0.9);
        let prior = Prior::bernoulli(delta, dims).unwrap();
        let question = random_question(&mut rng, dims, arity);
        let world = prior.sample(&mut rng);
        let rounds = rng.gen_range(1..=2);
        let spec = ArgGameSpec::new(&prior, &question, world.clone(), rounds).unwrap();
        let result = solve(&spec).unwrap();

        let legal: Vec<usize> = question.relevant_features().iter().copied().collect();
        let up = brute_value(
            &prior,
            &question,
            &world,
            &legal,
            &mut Vec::new(),
            rounds * 2,
            true,
        );
        let down = brute_value(
            &prior,
            &question,
            &world,
            &legal,
            &mut Vec::new(),
            rounds * 2,
            false,
        );
        assert!(
            (result.value_up_down - up).abs() <= 1e-12,
            "up mismatch: {} vs {up}",
            result.value_up_down
        );
        assert!(
            (result.value_down_up - down).abs() <= 1e-12,
            "down mismatch: {} vs {down}",
            result.value_down_up
        );
    }
}

#[test]
fn optimal_lines_replay_to_their_values() {
    let mut rng = ChaCha8Rng::seed_from_u64(34);
    for _ in 0..25 {
        let dims = rng.gen_range(2..=4);
        let arity = rng.gen_range(1..=dims);
        let prior = Prior::bernoulli(rng.gen_range(0.1..0.9), dims).unwrap();
        let question = random_question(&mut rng, dims, arity);
        let world = prior.sample(&mut rng);
        let rounds = rng.gen_range(1..=2);
        let spec = ArgGameSpec::new(&prior, &question, world.clone(), rounds).unwrap();
        let result = solve(&spec).unwrap();
        for (line, value) in [
            (&result.line_up_down, result.value_up_down),
            (&result.line_down_up, result.value_down_up),
        ] {
            assert_eq!(line.len(), rounds * 2);
            let non_pass: Vec<usize> = line.iter().filter_map(FeatureIndex::as_feature).collect();
            let mut dedup = non_pass.clone();
            dedup.sort_unstable();
            dedup.dedup();
            assert_eq!(dedup.len(), non_pass.len(), "line repeats a feature");

            let reveals = RevealSet::from_world(&world, line).unwrap();
            let trajectory = belief_trajectory(&prior, &question, &reveals).unwrap();
            assert!((trajectory.final_belief() - value).abs() <= 1e-12);
        }
    }
}

#[test]
fn concurrent_solves_agree_with_sequential_ones() {
    let mut rng = ChaCha8Rng::seed_from_u64(78);
    let prior = Prior::bernoulli(0.2, 4).unwrap();
    let question = random_question(&mut rng, 4, 3);
    let cases: Vec<(World, usize)> = (0..8)
        .map(|_| (prior.sample(&mut rng), rng.gen_range(1..=2)))
        .collect();
    let sequential: Vec<(f64, f64)> = cases
        .iter()
        .map(|(world, rounds)| {
            let spec = ArgGameSpec::new(&prior, &question, world.clone(), *rounds).unwrap();
            let r = solve(&spec).unwrap();
            (r.value_up_down, r.value_down_up)
        })
        .collect();
    let parallel: Vec<(f64, f64)> = std::thread::scope(|scope| {
        let handles: Vec<_> = cases
            .iter()
            .map(|(world, rounds)| {
                let prior = &prior;
                let question = &question;
                scope.spawn(move || {
                    let spec =
                        ArgGameSpec::new(prior, question, world.clone(), *rounds).unwrap();
                    let r = solve(&spec).unwrap();
                    (r.value_up_down, r.value_down_up)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    assert_eq!(sequential, parallel);
}

#[test]
fn values_do_not_depend_on_tie_break_order() {
    // Relabelling irrelevant features permutes the move order the solver
    // explores; the values must not move.
    let mut rng = ChaCha8Rng::seed_from_u64(56);
    for _ in 0..10 {
        let prior = Prior::bernoulli(rng.gen_range(0.1..0.9), 5).unwrap();
        let question = random_question(&mut rng, 5, 2);
        let world_a = World::new(vec![1.0, 1.0, 0.0, 1.0, 0.0]).unwrap();
        let world_b = World::new(vec![1.0, 1.0, 0.0, 0.0, 1.0]).unwrap();
        let spec_a = ArgGameSpec::new(&prior, &question, world_a, 2)
            .unwrap()
            .with_extra_indices([2, 3])
            .unwrap();
        let spec_b = ArgGameSpec::new(&prior, &question, world_b, 2)
            .unwrap()
            .with_extra_indices([2, 4])
            .unwrap();
        let a = solve(&spec_a).unwrap();
        let b = solve(&spec_b).unwrap();
        assert!((a.value_up_down - b.value_up_down).abs() <= 1e-12);
        assert!((a.value_down_up - b.value_down_up).abs() <= 1e-12);
    }
}

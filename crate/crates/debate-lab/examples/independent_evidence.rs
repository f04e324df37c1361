//! Independent-evidence debates: every argument shifts the judge's log-odds
//! by a fixed weight, so optimal play and the residual error have closed
//! forms, debates can stop early, and a K-feature bound caps the distance to
//! the truth.
//!
//! ```sh
//! cargo run --example independent_evidence
//! ```

use debate_lab::evidence::{
    earliest_stop, full_debate_winner, prob_to_log_odds, Direction, EvidenceModel,
    FeatureEvidence,
};
use debate_lab::solver::{solve, ArgGameSpec};
use debate_lab::World;

fn main() -> debate_lab::Result<()> {
    // Six binary features with hand-picked log-odds weights at value 1.
    let weights = [2.0, 0.6, 0.5, -1.4, -0.1, -0.05];
    let features: Vec<FeatureEvidence> = weights
        .iter()
        .map(|w| FeatureEvidence::binary_with_weight(*w))
        .collect::<debate_lab::Result<_>>()?;
    let model = EvidenceModel::new(0.5, features)?;
    let world = World::new(vec![1.0; weights.len()])?;
    let rounds = 2;

    let piles = model.piles(&world)?;
    println!("weights: {weights:?}");
    println!("raising pile {:?}, lowering pile {:?}", piles.up, piles.down);
    println!(
        "budgets at N = {rounds}: up {:.3}, down {:.3}",
        model.evidence_budget(&world, rounds, Direction::Up)?,
        model.evidence_budget(&world, rounds, Direction::Down)?,
    );

    let optimal = model.optimal_answer(&world, rounds)?;
    let truth = model.true_answer(&world)?;
    let residual = model.residual_error(&world, rounds)?;
    println!();
    println!("optimal answer: {optimal:.4}   truth: {truth:.4}");
    println!(
        "residual evidence: up {:.3}, down {:.3}, log-odds gap {:.3}",
        residual.up, residual.down, residual.gap
    );
    println!(
        "gap check: logit(truth) - logit(answer) = {:.3}",
        prob_to_log_odds(truth) - prob_to_log_odds(optimal)
    );

    // The general solver reproduces the closed form on the induced debate.
    let (prior, question) = model.to_feature_debate()?;
    let spec = ArgGameSpec::new(&prior, &question, world.clone(), rounds)?;
    let result = solve(&spec)?;
    println!();
    println!(
        "general solver: raising-first {:.4}, lowering-first {:.4} (order-free)",
        result.value_up_down, result.value_down_up
    );

    // Early stopping: the debate is settled before all rounds have run.
    let rounds = 3;
    let answers = (1.0, 0.0);
    match earliest_stop(&model, &world, rounds, answers)? {
        Some((round, winner)) => {
            println!();
            println!("debate can stop after round {round}: {winner:?} side wins");
        }
        None => println!("no early stop"),
    }
    println!(
        "full {rounds}-round winner: {:?}",
        full_debate_winner(&model, &world, rounds, answers)?
    );

    println!(
        "K-feature bound at N = {rounds}, K = {}: {:.4}",
        weights.len(),
        model.k_feature_bound(&world, rounds, weights.len())?
    );
    Ok(())
}

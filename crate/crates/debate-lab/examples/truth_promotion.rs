//! Truth promotion across debate lengths: enough rounds resolve any
//! question, one round too few can be maximally wrong.
//!
//! ```sh
//! cargo run --example truth_promotion
//! ```

use debate_lab::engine::{promotion_report, AnswerSelection};
use debate_lab::{Prior, Question};

fn main() -> debate_lab::Result<()> {
    // A three-conjunct question needs three rounds; below that the sceptic
    // stalls and the judge never leaves their prior's neighbourhood.
    let prior = Prior::uniform_boolean(3)?;
    let question = Question::conjunction(3);
    println!("{} under the uniform Boolean prior:", question.label());
    for rounds in 1..=4 {
        let report = promotion_report(
            &prior,
            &question,
            rounds,
            AnswerSelection::WorstInLambda,
            0.0,
        )?;
        let worst = report
            .per_world
            .iter()
            .map(|o| o.worst_error)
            .fold(0.0f64, f64::max);
        println!(
            "  N = {rounds}: truth-promoting = {}, worst error {:.4}, expected error {:.4}",
            report.truth_promoting, worst, report.expected_error
        );
    }

    // The skewed conjunction shows the worst case approaching 1 as the
    // "unlikely" features get rarer.
    println!();
    println!("skewed conjunction, one feature more than the rounds allow:");
    for delta in [0.2, 0.1, 0.05, 0.01] {
        let rounds = 2;
        let prior = Prior::bernoulli(delta, rounds + 1)?;
        let question = Question::conjunction(rounds + 1);
        let world = debate_lab::World::new(vec![1.0; rounds + 1])?;
        let err = debate_lab::engine::worst_case_error(&prior, &question, rounds, &world)?;
        println!("  delta = {delta:<5} worst-case error = {err:.4}");
    }
    Ok(())
}

//! Distracting evidence: a gate that multiplies the question by an unlikely
//! "problem" with an equally unlikely "fix" forces the honest side to waste
//! one round explaining it away; a chained fix wastes one round per bit.
//!
//! ```sh
//! cargo run --example stalling
//! ```

use debate_lab::solver::{stall_depth, truth_promotion_bound, ArgGameSpec};
use debate_lab::{Prior, Question, World};

fn main() -> debate_lab::Result<()> {
    let prior = Prior::bernoulli(0.05, 4)?;
    let world = World::new(vec![1.0; 4])?;
    let base = Question::conjunction(1);
    let gated = Question::stall_wrapped(base.clone(), &[(1, 2)]);
    let chained = Question::chain_stall(base.clone(), 1, &[2, 3]);

    for question in [&base, &gated, &chained] {
        println!("{}", question.label());
        for rounds in 1..=3 {
            let spec = ArgGameSpec::new(&prior, question, world.clone(), rounds)?;
            let bound = truth_promotion_bound(&spec)?;
            println!("  N = {rounds}: worst-case error {bound:.4}");
        }
    }

    let (n_base, n_gated) = stall_depth(&base, &gated, &prior, &world, 6)?;
    let (_, n_chained) = stall_depth(&base, &chained, &prior, &world, 6)?;
    println!();
    println!("rounds until truth-promoting: base {n_base}, gated {n_gated}, chained {n_chained}");
    Ok(())
}

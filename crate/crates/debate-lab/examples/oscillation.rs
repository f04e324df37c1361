//! The unstable-debate pattern: under a skewed prior, every revealed "1"
//! flips which side the confident judge currently favours.
//!
//! ```sh
//! cargo run --example oscillation
//! ```

use debate_lab::engine::{oscillation_profile, LinePolicy};
use debate_lab::solver::{solve, ArgGameSpec};
use debate_lab::{Prior, Question, World};

fn main() -> debate_lab::Result<()> {
    let delta = 0.05;
    let rounds = 3;
    let k = 2 * rounds;
    let prior = Prior::bernoulli(delta, k)?;
    let question = Question::xor(k);
    let world = World::new(vec![1.0; k])?;

    println!("xor over {k} features, all ones, P(W_i = 1) = {delta}");
    for policy in [LinePolicy::Greedy, LinePolicy::Minimax] {
        let profile = oscillation_profile(&prior, &question, rounds, &world, policy)?;
        let line: Vec<String> = profile.line.iter().map(|a| a.to_string()).collect();
        let beliefs: Vec<String> = profile
            .trajectory
            .beliefs()
            .iter()
            .map(|b| format!("{b:.3}"))
            .collect();
        println!();
        println!("{policy:?} line:   {}", line.join(" -> "));
        println!("beliefs:        {}", beliefs.join(" -> "));
        println!("side changes:   {}", profile.side_changes);
    }

    // How the equilibrium interval widens as the skew sharpens: at small
    // delta nearly every answer becomes defensible.
    println!();
    println!("equilibrium interval vs delta (N = {rounds}):");
    for delta in [0.2, 0.1, 0.05, 0.02, 0.01] {
        let prior = Prior::bernoulli(delta, k)?;
        let spec = ArgGameSpec::new(&prior, &question, world.clone(), rounds)?;
        let result = solve(&spec)?;
        println!(
            "  delta = {delta:<5} interval [{:.4}, {:.4}], width {:.4}",
            result.value_up_down,
            result.value_down_up,
            result.width()
        );
    }
    Ok(())
}

//! The answering phase as a matrix game: any answer inside the interval
//! between the two extreme optimal-play beliefs is optimal, and a
//! brute-force grid game recovers exactly that set.
//!
//! ```sh
//! cargo run --example answer_game
//! ```

use debate_lab::answering::{
    equilibrium_answers, expected_payoff, second_mover_value, verify_nash, AnswerInterval,
};

fn main() -> debate_lab::Result<()> {
    let interval = AnswerInterval::new(0.4, 0.6)?;
    println!(
        "equilibrium answers: [{}, {}]",
        equilibrium_answers(&interval).lo(),
        equilibrium_answers(&interval).hi()
    );

    println!();
    println!("second-mover utility v*(a, b) = |a - b| - dist(b, interval):");
    for (a, b) in [(0.0, 0.5), (0.5, 0.5), (0.4, 0.6), (0.5, 0.9)] {
        println!(
            "  opponent {a:.1}, second mover {b:.1}: {:+.3}",
            second_mover_value(a, b, &interval)
        );
    }

    println!();
    println!("expected payoff to player 1 under a random order:");
    for (a1, a2) in [(0.5, 0.5), (0.5, 0.0), (0.0, 1.0), (0.45, 0.8)] {
        println!(
            "  answers ({a1:.2}, {a2:.2}): {:+.3}",
            expected_payoff(a1, a2, &interval)
        );
    }

    println!();
    let report = verify_nash(&interval, 0.05)?;
    println!(
        "grid check at step {}: {} equilibrium answers {:?}",
        report.grid_step,
        report.equilibria.len(),
        report.equilibria
    );
    Ok(())
}

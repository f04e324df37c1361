//! Solve a single argumentation game exactly and inspect optimal play.
//!
//! ```sh
//! cargo run --example minimax_values
//! ```

use debate_lab::answering::AnswerInterval;
use debate_lab::solver::{solve, truth_promotion_bound, ArgGameSpec};
use debate_lab::{Prior, Question, World};

fn main() -> debate_lab::Result<()> {
    // Two-conjunct question under a heavily skewed prior: the honest side
    // can only reveal one conjunct per round, so at N=1 the sceptic holds
    // the belief at delta.
    let delta = 0.01;
    let prior = Prior::bernoulli(delta, 2)?;
    let question = Question::conjunction(2);
    let world = World::new(vec![1.0, 1.0])?;

    println!("question: {}", question.label());
    println!("world:    {:?}", world.values());
    println!("truth:    {}", question.evaluate(&world));
    println!();

    for rounds in 1..=2 {
        let spec = ArgGameSpec::new(&prior, &question, world.clone(), rounds)?;
        let result = solve(&spec)?;
        let interval = AnswerInterval::from_minimax(&result)?;
        println!("N = {rounds}");
        println!("  first mover raises:  belief {:.6}", result.value_up_down);
        println!("  first mover lowers:  belief {:.6}", result.value_down_up);
        println!(
            "  equilibrium answers: [{:.6}, {:.6}]",
            interval.lo(),
            interval.hi()
        );
        let line: Vec<String> = result.line_up_down.iter().map(|a| a.to_string()).collect();
        println!("  raising line:        {}", line.join(" -> "));
        println!(
            "  worst-case error:    {:.6}",
            truth_promotion_bound(&spec)?
        );
    }
    Ok(())
}

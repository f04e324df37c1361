//! Full debate playouts: sample a world, fix answers, randomise who argues
//! first, replay optimal lines, and settle utilities and the outcome.
//!
//! ```sh
//! cargo run --example full_debate
//! ```

use debate_lab::engine::{play_debate, AnswerPolicy};
use debate_lab::{Prior, Question};

fn main() -> debate_lab::Result<()> {
    let prior = Prior::bernoulli(0.3, 3)?;
    let question = Question::xor(3);

    for seed in [1u64, 2, 3] {
        let transcript = play_debate(&prior, &question, 1, AnswerPolicy::Scripted {
            a1: 0.8,
            a2: 0.2,
        }, seed)?;
        println!("{}", serde_json::to_string_pretty(&transcript).expect("serializes"));
        println!();
    }

    // With both answers at the interval midpoint the debate always ties.
    let transcript = play_debate(&prior, &question, 3, AnswerPolicy::Midpoint, 7)?;
    println!(
        "midpoint policy: answers ({:.3}, {:.3}), utilities ({:.3}, {:.3}), error {:.3}",
        transcript.answers.0,
        transcript.answers.1,
        transcript.utilities.0,
        transcript.utilities.1,
        transcript.error
    );
    Ok(())
}

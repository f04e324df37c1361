//! Information-limited debates: each argument reveals one bit of one
//! feature, shrinking a dyadic cell around the sampled world. An L-Lipschitz
//! question stays within L / 2^floor(sqrt(N)) of the truth.
//!
//! ```sh
//! cargo run --example bit_zoom
//! ```

use debate_lab::bitdebate::{
    feature_bit, lipschitz_error_bound, solve_bit_debate, triangular_diameter_bound,
    triangular_sequence, BitArgument, Cell,
};
use debate_lab::{Question, World};

fn main() -> debate_lab::Result<()> {
    // Zoom in on w = (0.6, 0.25): two bits of the first feature, one of the
    // second.
    let world = World::new(vec![0.6, 0.25])?;
    let mut cell = Cell::root(2, 4)?;
    println!("world {:?}", world.values());
    println!(
        "root cell: x {:?}, y {:?}, diameter {:.4}",
        cell.interval(0),
        cell.interval(1),
        cell.diameter()
    );
    for (feature, position) in [(0, 1), (0, 2), (1, 1)] {
        let value = feature_bit(world.value(feature)?, position);
        cell = cell.zoom(
            &BitArgument {
                feature,
                position,
                value,
            },
            &world,
        )?;
        println!(
            "reveal bit {position} of W{feature} (= {}): x {:?}, y {:?}, diameter {:.4}",
            value as u8,
            cell.interval(0),
            cell.interval(1),
            cell.diameter()
        );
    }

    println!();
    println!("triangular revelation order: {:?}", triangular_sequence(10));
    for n in 1..=3 {
        println!(
            "  after 1+..+{n} own reveals the diameter is at most {:.4}",
            triangular_diameter_bound(n)
        );
    }

    // Exact bit debates against the guarantee.
    let dims = 4;
    let budget = 4;
    let question = Question::weighted_linear(dims);
    let world = World::new(vec![0.5625, 0.25, 0.8125, 0.0])?;
    println!();
    println!("{} at w = {:?}:", question.label(), world.values());
    println!("truth {:.4}", question.evaluate(&world));
    for rounds in [1usize, 3, 4, 6] {
        let result = solve_bit_debate(&question, &world, rounds, budget)?;
        println!(
            "  N = {rounds}: interval [{:.4}, {:.4}], error {:.4}, guarantee {:.4}",
            result.value_up_down,
            result.value_down_up,
            result.truth_promotion_bound(question.evaluate(&world)),
            lipschitz_error_bound(1.0, rounds)
        );
    }
    Ok(())
}

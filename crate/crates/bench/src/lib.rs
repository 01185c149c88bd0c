//! Shared instance builders for the solver benchmarks.

use hgctl_core::gen::{gen_random, RandomSpec};
use hgctl_core::{AdditiveGame, FriendGame, Game, Model};

/// Random friend game with a 30% additional pool.
pub fn friend_instance(n: usize, density: f64, seed: u64) -> FriendGame {
    let spec = RandomSpec {
        model: Model::Friends,
        n,
        arc_density: density,
        split_fraction: 0.3,
        seed,
        ..RandomSpec::default()
    };
    match gen_random(&spec).expect("valid spec") {
        Game::Friends(fg) => fg,
        Game::Additive(_) => unreachable!(),
    }
}

/// Random additive game with `n_additional` agents in the pool.
pub fn additive_instance(n: usize, n_additional: usize, density: f64, seed: u64) -> AdditiveGame {
    let spec = RandomSpec {
        model: Model::Additive,
        n,
        arc_density: density,
        min_weight: -3,
        max_weight: 3,
        split_fraction: n_additional as f64 / n as f64,
        seed,
        ..RandomSpec::default()
    };
    match gen_random(&spec).expect("valid spec") {
        Game::Additive(g) => g,
        Game::Friends(_) => unreachable!(),
    }
}

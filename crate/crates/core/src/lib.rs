//! Solvers for agent-addition and agent-deletion control problems in
//! hedonic games with additive or friend-oriented preferences.
//!
//! Given a game, a stability concept (IR/IS/NS/CS), a control goal (keep a
//! designated agent out of a singleton, keep a pair together, or make the
//! grand coalition stable) and a budget of agents to add or delete, the
//! top-level [`solve`] decides the instance and produces a verified witness.
//! Each query is routed to a dedicated polynomial algorithm, a
//! budget-exponential subset enumeration, an immunity or never short-circuit,
//! or the exhaustive ground-truth search in [`exact`], which doubles as the
//! oracle the fast paths are validated against.

pub mod control;
pub mod control_add;
pub mod control_fri;
pub mod error;
pub mod exact;
pub mod game;
pub mod gen;
pub mod graphs;
pub mod partition;
pub mod stability;
pub mod testutil;

pub use control::{Action, ControlQuery, Route, SolveOutcome, Witness};
pub use error::{Error, Result};
pub use game::{
    agent, classify_additive, classify_friends, friends_to_additive, AdditiveGame, AgentId,
    FriendGame, Game, GameClass, Model, Preference,
};
pub use partition::Partition;
pub use stability::{Goal, Stability, StabilityViolation};

/// Solver-wide knobs: the exhaustive-search caps and the core-stability
/// verification cap.
#[derive(Debug, Clone, Copy)]
pub struct SolverConfig {
    pub exact: exact::ExactConfig,
    pub cs_verify_cap: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            exact: exact::ExactConfig::default(),
            cs_verify_cap: stability::DEFAULT_CS_CAP,
        }
    }
}

/// Solves a control query, dispatching on the preference model.
pub fn solve(game: &Game, query: &ControlQuery, cfg: &SolverConfig) -> Result<SolveOutcome> {
    match game {
        Game::Additive(g) => control_add::solve_add(g, query, cfg),
        Game::Friends(g) => control_fri::solve_fri(g, query, cfg),
    }
}

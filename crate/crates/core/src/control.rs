//! Control-problem queries and outcomes shared by the solvers.

use crate::error::{Error, Result};
use crate::game::{AgentId, Game};
use crate::partition::Partition;
use crate::stability::{self, Goal, Stability};

/// Control action: extend the original agents from the additional pool, or
/// delete original agents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Action {
    AddAgents,
    DeleteAgents,
}

impl std::fmt::Display for Action {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Action::AddAgents => write!(f, "add"),
            Action::DeleteAgents => write!(f, "del"),
        }
    }
}

/// How a query was decided, mirroring the complexity landscape: dedicated
/// polynomial algorithm, budget-exponential subset enumeration, exhaustive
/// ground-truth search, an immunity short-circuit, a structural never-rule,
/// or a degenerate instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Route {
    Poly,
    Xp,
    Exact,
    Immune,
    Never,
    Trivial,
}

impl std::fmt::Display for Route {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Route::Poly => "poly",
            Route::Xp => "xp",
            Route::Exact => "exact",
            Route::Immune => "immune",
            Route::Never => "never",
            Route::Trivial => "trivial",
        };
        write!(f, "{s}")
    }
}

/// A control query against a game: reach `goal` with an `stability`-stable
/// partition using at most `budget` applications of `action`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ControlQuery {
    pub stability: Stability,
    pub goal: Goal,
    pub action: Action,
    pub budget: usize,
}

/// Witness for a yes-decision: the chosen control subset and a stable
/// partition of the post-control agent set achieving the goal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    /// Added agents (for [`Action::AddAgents`]) or deleted agents.
    pub chosen: Vec<AgentId>,
    /// Stability- and goal-verified partition of the resulting agent set.
    pub partition: Partition,
}

/// Decision plus routing metadata and, for yes-instances, a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveOutcome {
    pub decision: bool,
    pub route: Route,
    pub witness: Option<Witness>,
}

impl SolveOutcome {
    pub fn no(route: Route) -> Self {
        SolveOutcome {
            decision: false,
            route,
            witness: None,
        }
    }

    pub fn yes(route: Route, chosen: Vec<AgentId>, partition: Partition) -> Self {
        let mut chosen = chosen;
        chosen.sort_unstable();
        chosen.dedup();
        SolveOutcome {
            decision: true,
            route,
            witness: Some(Witness { chosen, partition }),
        }
    }
}

/// Validates the query against the game: at least one original agent, goal
/// agents original and distinct, and deletion instances without an
/// additional pool.
pub fn validate_query(game: &Game, query: &ControlQuery) -> Result<()> {
    if game.original_agents().is_empty() {
        return Err(Error::InvalidQuery(
            "the game has no original agents".into(),
        ));
    }
    let check_original = |a: AgentId| -> Result<()> {
        if a.idx() >= game.n_agents() {
            return Err(Error::InvalidQuery(format!("agent {a} outside the game")));
        }
        if game.is_additional(a) {
            return Err(Error::InvalidQuery(format!(
                "goal agent {a} must be original"
            )));
        }
        Ok(())
    };
    match query.goal {
        Goal::NotAlone(x) => check_original(x)?,
        Goal::Together(x, y) => {
            if x == y {
                return Err(Error::InvalidQuery("pair agents must be distinct".into()));
            }
            check_original(x)?;
            check_original(y)?;
        }
        Goal::GrandCoalition => {}
    }
    if query.action == Action::DeleteAgents && !game.additional_agents().is_empty() {
        return Err(Error::InvalidQuery(
            "deletion instances must not carry additional agents".into(),
        ));
    }
    Ok(())
}

/// The agent set after applying `chosen` under `action`.
pub fn resulting_agents(game: &Game, action: Action, chosen: &[AgentId]) -> Vec<AgentId> {
    match action {
        Action::AddAgents => {
            let mut set = game.original_agents();
            set.extend_from_slice(chosen);
            set.sort_unstable();
            set.dedup();
            set
        }
        Action::DeleteAgents => game
            .original_agents()
            .into_iter()
            .filter(|a| !chosen.contains(a))
            .collect(),
    }
}

/// Re-verifies a yes-outcome: budget respected, chosen agents drawn from the
/// right pool, partition covers the post-control agent set, goal holds, and
/// the claimed stability verifier passes. Core-stability verification uses
/// the SCC recognition shortcut for friend games and the exhaustive search
/// when the instance is within the cap; out-of-cap additive CS witnesses are
/// rejected here rather than trusted.
pub fn verify_outcome(
    game: &Game,
    query: &ControlQuery,
    outcome: &SolveOutcome,
    cs_cap: usize,
) -> Result<()> {
    let Some(witness) = &outcome.witness else {
        if outcome.decision {
            return Err(Error::WitnessVerification("yes without witness".into()));
        }
        return Ok(());
    };
    if witness.chosen.len() > query.budget {
        return Err(Error::WitnessVerification(format!(
            "witness uses {} actions with budget {}",
            witness.chosen.len(),
            query.budget
        )));
    }
    for a in &witness.chosen {
        let from_pool = match query.action {
            Action::AddAgents => game.is_additional(*a),
            Action::DeleteAgents => !game.is_additional(*a),
        };
        if !from_pool {
            return Err(Error::WitnessVerification(format!(
                "chosen agent {a} is not in the {} pool",
                query.action
            )));
        }
    }
    let expected = resulting_agents(game, query.action, &witness.chosen);
    witness
        .partition
        .check_covers(&expected)
        .map_err(|e| Error::WitnessVerification(e.to_string()))?;
    if !stability::goal_holds(&witness.partition, query.goal) {
        return Err(Error::WitnessVerification("goal does not hold".into()));
    }
    let verdict = match stability::verify(game, &witness.partition, query.stability, cs_cap) {
        // Beyond the exhaustive cap, core stability on an acyclic additive
        // game coincides with individual rationality.
        Err(Error::CapExceeded { .. })
            if query.stability == Stability::Cs
                && matches!(game, Game::Additive(_))
                && game.classify().is_dag =>
        {
            stability::verify(game, &witness.partition, Stability::Ir, cs_cap)?
        }
        other => other?,
    };
    match verdict {
        Ok(()) => Ok(()),
        Err(v) => Err(Error::WitnessVerification(format!(
            "partition is not {}: {v:?}",
            query.stability
        ))),
    }
}

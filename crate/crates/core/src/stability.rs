//! Stability verifiers and witness-finders: individual rationality (IR),
//! individual stability (IS), Nash stability (NS), and core stability (CS),
//! plus the goal predicates and two structural conversions used by the
//! solvers.
//!
//! IR/IS/NS run in polynomial time. CS verification is a subset search over
//! candidate blocking coalitions and is therefore cap-gated; for friend
//! games the partition into strongly connected components is recognized
//! directly and accepted without search.

use crate::error::{Error, Result};
use crate::game::{agent, AgentId, FriendGame, Game, Preference};
use crate::graphs::friend_sccs;
use crate::partition::Partition;

/// Default cap on the agent count for exhaustive core-stability checks.
pub const DEFAULT_CS_CAP: usize = 20;

/// Evidence that a partition fails a stability concept.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StabilityViolation {
    /// An agent strictly prefers its singleton coalition.
    DeviatingAgent { agent: AgentId },
    /// An agent strictly gains by joining `target` and every member of
    /// `target` consents (IS), or gains regardless of consent (NS, where
    /// `target` may be empty for the singleton deviation).
    BlockingTuple {
        agent: AgentId,
        target: Vec<AgentId>,
    },
    /// Every member of `coalition` strictly prefers it to their current
    /// coalition.
    BlockingCoalition { coalition: Vec<AgentId> },
}

/// Verification result: stable, or the first violation in canonical agent
/// order.
pub type Verdict = std::result::Result<(), StabilityViolation>;

/// Which stability concept a query or verifier refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Stability {
    Ir,
    Is,
    Ns,
    Cs,
}

impl Stability {
    /// All four concepts, in the conventional order.
    pub const ALL: [Stability; 4] = [Stability::Ir, Stability::Is, Stability::Ns, Stability::Cs];
}

impl std::fmt::Display for Stability {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Stability::Ir => "IR",
            Stability::Is => "IS",
            Stability::Ns => "NS",
            Stability::Cs => "CS",
        };
        write!(f, "{s}")
    }
}

/// Control goals over a partition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Goal {
    /// The designated agent must not be in a singleton coalition.
    NotAlone(AgentId),
    /// The designated pair must share a coalition.
    Together(AgentId, AgentId),
    /// The partition must be the single grand coalition.
    GrandCoalition,
}

/// Whether `goal` holds in `partition`.
pub fn goal_holds(partition: &Partition, goal: Goal) -> bool {
    match goal {
        Goal::NotAlone(x) => partition.coalition_of(x).is_some_and(|c| c.len() >= 2),
        Goal::Together(x, y) => match (
            partition.coalition_index_of(x),
            partition.coalition_index_of(y),
        ) {
            (Some(a), Some(b)) => a == b,
            _ => false,
        },
        Goal::GrandCoalition => partition.len() == 1,
    }
}

fn check_partition(game: &Game, partition: &Partition) -> Result<()> {
    for a in partition.agents() {
        if a.idx() >= game.n_agents() {
            return Err(Error::InvalidPartition(format!(
                "agent {a} outside the game"
            )));
        }
    }
    Ok(())
}

/// Individual rationality: no agent strictly prefers its singleton.
pub fn is_ir(game: &Game, partition: &Partition) -> Result<Verdict> {
    check_partition(game, partition)?;
    for c in partition.coalitions() {
        for &a in c {
            if game.compare_coalitions(a, &[a], c) == Preference::StrictFirst {
                return Ok(Err(StabilityViolation::DeviatingAgent { agent: a }));
            }
        }
    }
    Ok(Ok(()))
}

/// Individual stability: no agent and coalition `B` in the partition (or the
/// empty coalition) form a blocking tuple. Members of `B` must weakly prefer
/// `B ∪ {i}`; since `B` is `i`'s own coalition only in the vacuous case, that
/// case is skipped.
pub fn is_is(game: &Game, partition: &Partition) -> Result<Verdict> {
    check_partition(game, partition)?;
    for c in partition.coalitions() {
        for &a in c {
            // B = ∅: reduces to the IR condition.
            if game.compare_coalitions(a, &[a], c) == Preference::StrictFirst {
                return Ok(Err(StabilityViolation::DeviatingAgent { agent: a }));
            }
            for b in partition.coalitions() {
                if std::ptr::eq(b, c) {
                    continue;
                }
                let joined = with_agent(b, a);
                if game.compare_coalitions(a, &joined, c) != Preference::StrictFirst {
                    continue;
                }
                let consent = b.iter().all(|&m| {
                    game.compare_coalitions(m, &joined, b) != Preference::StrictSecond
                });
                if consent {
                    return Ok(Err(StabilityViolation::BlockingTuple {
                        agent: a,
                        target: b.clone(),
                    }));
                }
            }
        }
    }
    Ok(Ok(()))
}

/// Nash stability: no agent strictly gains by joining another existing
/// coalition or by going alone.
pub fn is_ns(game: &Game, partition: &Partition) -> Result<Verdict> {
    check_partition(game, partition)?;
    for c in partition.coalitions() {
        for &a in c {
            if game.compare_coalitions(a, &[a], c) == Preference::StrictFirst {
                return Ok(Err(StabilityViolation::DeviatingAgent { agent: a }));
            }
            for b in partition.coalitions() {
                if std::ptr::eq(b, c) {
                    continue;
                }
                let joined = with_agent(b, a);
                if game.compare_coalitions(a, &joined, c) == Preference::StrictFirst {
                    return Ok(Err(StabilityViolation::BlockingTuple {
                        agent: a,
                        target: b.clone(),
                    }));
                }
            }
        }
    }
    Ok(Ok(()))
}

fn with_agent(coalition: &[AgentId], a: AgentId) -> Vec<AgentId> {
    let mut v = Vec::with_capacity(coalition.len() + 1);
    let pos = coalition.partition_point(|&m| m < a);
    v.extend_from_slice(&coalition[..pos]);
    v.push(a);
    v.extend_from_slice(&coalition[pos..]);
    v
}

/// Core stability: no coalition whose members all strictly prefer it.
///
/// For a friend game whose partition is exactly the strongly-connected-
/// component decomposition of the friendship graph (restricted to the
/// partition's agents), stability is accepted without search. Otherwise the
/// check enumerates candidate coalitions by ascending size over the agents
/// that could possibly improve, gated by `search_cap` on the partition size.
pub fn is_cs(game: &Game, partition: &Partition, search_cap: usize) -> Result<Verdict> {
    check_partition(game, partition)?;
    if let Game::Friends(fg) = game {
        if partition_is_scc_decomposition(fg, partition) {
            return Ok(Ok(()));
        }
    }
    let agents = partition.agents();
    if agents.len() > search_cap {
        return Err(Error::CapExceeded {
            what: "core-stability verification",
            n: agents.len(),
            cap: search_cap,
        });
    }
    // Only agents that strictly prefer their best conceivable coalition can
    // join a blocking coalition.
    let candidates: Vec<AgentId> = agents
        .iter()
        .copied()
        .filter(|&a| {
            let own = partition.coalition_of(a).expect("covered agent");
            let best = best_conceivable(game, a, &agents);
            game.compare_coalitions(a, &best, own) == Preference::StrictFirst
        })
        .collect();
    let m = candidates.len();
    if m == 0 {
        return Ok(Ok(()));
    }
    // Ascending size, then lexicographic on the candidate order, so the
    // first witness is deterministic.
    for size in 1..=m {
        let mut indices: Vec<usize> = (0..size).collect();
        loop {
            let coalition: Vec<AgentId> = indices.iter().map(|&i| candidates[i]).collect();
            if blocks(game, partition, &coalition) {
                return Ok(Err(StabilityViolation::BlockingCoalition { coalition }));
            }
            if !next_combination(&mut indices, m) {
                break;
            }
        }
    }
    Ok(Ok(()))
}

/// Advances `indices` to the next size-`k` combination of `0..m` in
/// lexicographic order; false when exhausted.
pub(crate) fn next_combination(indices: &mut [usize], m: usize) -> bool {
    let k = indices.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if indices[i] != i + m - k {
            indices[i] += 1;
            for j in i + 1..k {
                indices[j] = indices[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Whether every member of `coalition` strictly prefers it to their current
/// coalition.
pub fn blocks(game: &Game, partition: &Partition, coalition: &[AgentId]) -> bool {
    coalition.iter().all(|&a| {
        let own = partition.coalition_of(a).expect("covered agent");
        game.compare_coalitions(a, coalition, own) == Preference::StrictFirst
    })
}

fn best_conceivable(game: &Game, a: AgentId, agents: &[AgentId]) -> Vec<AgentId> {
    match game {
        Game::Additive(g) => {
            let mut best = vec![a];
            for &b in agents {
                if b != a && g.utility(a, b) > 0 {
                    best.push(b);
                }
            }
            best.sort_unstable();
            best
        }
        Game::Friends(g) => {
            let mut best = vec![a];
            for &b in agents {
                if b != a && g.is_friend(a, b) {
                    best.push(b);
                }
            }
            best.sort_unstable();
            best
        }
    }
}

/// True when the partition's coalitions are exactly the SCCs of the
/// friendship graph induced by the partition's agents.
fn partition_is_scc_decomposition(fg: &FriendGame, partition: &Partition) -> bool {
    let mut active = vec![false; fg.n_agents()];
    for a in partition.agents() {
        active[a.idx()] = true;
    }
    let decomposition = friend_sccs(fg, Some(&active));
    let mut comps: Vec<Vec<AgentId>> = decomposition
        .components
        .iter()
        .map(|c| c.iter().map(|&v| agent(v)).collect())
        .collect();
    comps.sort_unstable_by_key(|c| c[0]);
    comps == partition.coalitions()
}

/// Runs the verifier matching `stability`.
pub fn verify(game: &Game, partition: &Partition, stability: Stability, cs_cap: usize) -> Result<Verdict> {
    match stability {
        Stability::Ir => is_ir(game, partition),
        Stability::Is => is_is(game, partition),
        Stability::Ns => is_ns(game, partition),
        Stability::Cs => is_cs(game, partition, cs_cap),
    }
}

/// Turns an IR partition of a friend game with `x` and `y` together into an
/// individually stable one that keeps them together.
///
/// The construction collects in one coalition `M`: all size-two-or-larger
/// coalitions of the input, the agents of every size-two-or-larger strongly
/// connected component, and every agent that can reach `M`; everyone else is
/// a singleton.
pub fn ir_to_is_friend(
    fg: &FriendGame,
    ir_partition: &Partition,
    x: AgentId,
    y: AgentId,
) -> Result<Partition> {
    if x == y {
        return Err(Error::InvalidQuery("pair agents must be distinct".into()));
    }
    let game = Game::Friends(fg.clone());
    if is_ir(&game, ir_partition)?.is_err() {
        return Err(Error::InvalidQuery("input partition is not IR".into()));
    }
    if partition_coalition_index(ir_partition, x)? != partition_coalition_index(ir_partition, y)? {
        return Err(Error::InvalidQuery(
            "pair agents are not together in the input partition".into(),
        ));
    }
    let agents = ir_partition.agents();
    let mut active = vec![false; fg.n_agents()];
    for a in &agents {
        active[a.idx()] = true;
    }
    let mut in_m = vec![false; fg.n_agents()];
    // Step 1: union of size >= 2 coalitions.
    for c in ir_partition.coalitions() {
        if c.len() >= 2 {
            for a in c {
                in_m[a.idx()] = true;
            }
        }
    }
    // Step 2: size >= 2 strongly connected components.
    for comp in friend_sccs(fg, Some(&active)).components {
        if comp.len() >= 2 {
            for v in comp {
                in_m[v] = true;
            }
        }
    }
    // Step 3: agents that can reach M (reverse reachability).
    let mut stack: Vec<usize> = (0..fg.n_agents()).filter(|&v| in_m[v]).collect();
    while let Some(v) = stack.pop() {
        for &u in &agents {
            let u = u.idx();
            if !in_m[u] && fg.is_friend(agent(u), agent(v)) {
                in_m[u] = true;
                stack.push(u);
            }
        }
    }
    let m: Vec<AgentId> = agents.iter().copied().filter(|a| in_m[a.idx()]).collect();
    Partition::coalition_plus_singletons(m, &agents)
}

fn partition_coalition_index(p: &Partition, a: AgentId) -> Result<usize> {
    p.coalition_index_of(a).ok_or(Error::AgentMissing {
        agent: a,
        place: "partition",
    })
}

/// Reduces a not-alone query to pair queries: tries to pair the designated
/// agent with every other agent, moving additional partners into the
/// original set and charging one unit of budget. Original partners are tried
/// first so cheaper witnesses win.
///
/// `solve_pair(partner, budget, partner_was_additional)` must solve the pair
/// version on the instance where `partner` counts as original.
pub fn na_via_pa<F>(
    x: AgentId,
    original: &[AgentId],
    additional: &[AgentId],
    budget: usize,
    mut solve_pair: F,
) -> Result<Option<(Vec<AgentId>, Partition)>>
where
    F: FnMut(AgentId, usize, bool) -> Result<Option<(Vec<AgentId>, Partition)>>,
{
    for &a in original {
        if a == x {
            continue;
        }
        if let Some((chosen, partition)) = solve_pair(a, budget, false)? {
            return Ok(Some((chosen, partition)));
        }
    }
    for &a in additional {
        if budget == 0 {
            break;
        }
        if let Some((mut chosen, partition)) = solve_pair(a, budget - 1, true)? {
            if !chosen.contains(&a) {
                chosen.push(a);
                chosen.sort_unstable();
            }
            return Ok(Some((chosen, partition)));
        }
    }
    Ok(None)
}

/// Canonical agent set of a game.
pub fn all_agents(game: &Game) -> Vec<AgentId> {
    (0..game.n_agents() as u32).map(AgentId).collect()
}


#[cfg(test)]
mod scc_shortcut_tests {
    use super::*;
    use crate::game::{agent, FriendGame};
    use rand::prelude::*;

    #[test]
    fn scc_decomposition_has_no_blocker_by_brute_force() {
        // The recognition shortcut accepts the SCC decomposition without
        // searching; confirm against an exhaustive blocking scan.
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(59);
        for _ in 0..200 {
            let n = rng.gen_range(2..=7usize);
            let mut fg = FriendGame::new(n);
            for i in 0..n {
                for j in 0..n {
                    if i != j && rng.gen_bool(0.35) {
                        fg.add_friend(agent(i), agent(j));
                    }
                }
            }
            let decomposition = crate::graphs::friend_sccs(&fg, None);
            let p = Partition::new(
                decomposition
                    .components
                    .into_iter()
                    .map(|c| c.into_iter().map(agent).collect())
                    .collect(),
            )
            .unwrap();
            let game = Game::Friends(fg);
            assert!(is_cs(&game, &p, 20).unwrap().is_ok());
            for mask in 1u32..(1 << n) {
                let coalition: Vec<AgentId> =
                    (0..n).filter(|&i| mask & (1 << i) != 0).map(agent).collect();
                assert!(
                    !blocks(&game, &p, &coalition),
                    "{coalition:?} blocks the component partition {p}"
                );
            }
        }
    }
}

//! Game representations: additive and friend-oriented hedonic games.
//!
//! Both representations index agents densely as `0..n`. Utilities are exact
//! integers; an absent arc is equivalent to weight zero and is never stored.
//! Each game also carries a split of its agent set into *original* agents and
//! *additional* agents (the pool a control action may add from).

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// Dense agent index, stable across operations on the same game.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AgentId(pub u32);

impl AgentId {
    /// The index as a usize, for table lookups.
    #[inline]
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

impl std::fmt::Display for AgentId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Convenience constructor used throughout tests and generators.
#[inline]
pub fn agent(i: usize) -> AgentId {
    AgentId(i as u32)
}

/// Outcome of comparing two coalitions from one agent's perspective.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preference {
    /// The agent strictly prefers the first coalition.
    StrictFirst,
    /// The agent is indifferent.
    Indifferent,
    /// The agent strictly prefers the second coalition.
    StrictSecond,
}

/// Which compact preference representation a game uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Model {
    Additive,
    Friends,
}

/// Structural flags computed by [`classify_additive`] and
/// [`classify_friends`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GameClass {
    /// The non-zero-arc digraph has no directed cycle.
    pub is_dag: bool,
    /// For every ordered pair the stored weights (absent = 0) coincide.
    pub is_symmetric: bool,
}

/// Additively separable hedonic game over agents `0..n`.
///
/// Preferences are a dense integer matrix; `utility[i][j]` is agent `i`'s
/// utility towards agent `j`, with `utility[i][i] = 0` always.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdditiveGame {
    n: usize,
    utility: Vec<i64>,
    additional: Vec<bool>,
}

impl AdditiveGame {
    /// Creates a game with all-zero utilities and every agent original.
    pub fn new(n: usize) -> Self {
        AdditiveGame {
            n,
            utility: vec![0; n * n],
            additional: vec![false; n],
        }
    }

    /// Number of agents.
    #[inline]
    pub fn n_agents(&self) -> usize {
        self.n
    }

    /// Utility of `from` towards `to` (0 when no arc is stored).
    #[inline]
    pub fn utility(&self, from: AgentId, to: AgentId) -> i64 {
        self.utility[from.idx() * self.n + to.idx()]
    }

    /// Sets a single utility entry. Self-utilities must stay zero.
    pub fn set_utility(&mut self, from: AgentId, to: AgentId, w: i64) {
        assert_ne!(from, to, "self-utility must remain zero");
        self.utility[from.idx() * self.n + to.idx()] = w;
    }

    /// Sets `u(a,b) = u(b,a) = w`.
    pub fn set_symmetric(&mut self, a: AgentId, b: AgentId, w: i64) {
        self.set_utility(a, b, w);
        self.set_utility(b, a, w);
    }

    /// Marks an agent as additional (part of the addable pool).
    pub fn mark_additional(&mut self, a: AgentId) {
        self.additional[a.idx()] = true;
    }

    /// Whether `a` belongs to the additional pool.
    #[inline]
    pub fn is_additional(&self, a: AgentId) -> bool {
        self.additional[a.idx()]
    }

    /// All agents, in index order.
    pub fn agents(&self) -> impl Iterator<Item = AgentId> + '_ {
        (0..self.n as u32).map(AgentId)
    }

    /// The original agent set, in index order.
    pub fn original_agents(&self) -> Vec<AgentId> {
        self.agents().filter(|a| !self.is_additional(*a)).collect()
    }

    /// The additional agent set, in index order.
    pub fn additional_agents(&self) -> Vec<AgentId> {
        self.agents().filter(|a| self.is_additional(*a)).collect()
    }

    /// Sum of `agent`'s utilities towards members of `coalition`.
    pub fn utility_towards(&self, agent: AgentId, coalition: &[AgentId]) -> i64 {
        let row = &self.utility[agent.idx() * self.n..(agent.idx() + 1) * self.n];
        coalition.iter().map(|m| row[m.idx()]).sum()
    }

    /// All stored arcs `(from, to, weight)` with non-zero weight.
    pub fn arcs(&self) -> Vec<(AgentId, AgentId, i64)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                let w = self.utility[i * self.n + j];
                if w != 0 {
                    out.push((agent(i), agent(j), w));
                }
            }
        }
        out
    }
}

/// Friend-oriented hedonic game: a directed friendship graph over `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FriendGame {
    n: usize,
    friends: Vec<BTreeSet<AgentId>>,
    additional: Vec<bool>,
}

impl FriendGame {
    /// Creates a friendless game with every agent original.
    pub fn new(n: usize) -> Self {
        FriendGame {
            n,
            friends: vec![BTreeSet::new(); n],
            additional: vec![false; n],
        }
    }

    /// Number of agents.
    #[inline]
    pub fn n_agents(&self) -> usize {
        self.n
    }

    /// Adds the friendship arc `from -> to`.
    pub fn add_friend(&mut self, from: AgentId, to: AgentId) {
        assert_ne!(from, to, "no self-loops");
        self.friends[from.idx()].insert(to);
    }

    /// Adds both arcs between `a` and `b`.
    pub fn add_mutual(&mut self, a: AgentId, b: AgentId) {
        self.add_friend(a, b);
        self.add_friend(b, a);
    }

    /// Whether `from` considers `to` a friend.
    #[inline]
    pub fn is_friend(&self, from: AgentId, to: AgentId) -> bool {
        self.friends[from.idx()].contains(&to)
    }

    /// Out-neighborhood of `a` in the friendship graph.
    pub fn friends_of(&self, a: AgentId) -> &BTreeSet<AgentId> {
        &self.friends[a.idx()]
    }

    /// Marks an agent as additional.
    pub fn mark_additional(&mut self, a: AgentId) {
        self.additional[a.idx()] = true;
    }

    /// Whether `a` belongs to the additional pool.
    #[inline]
    pub fn is_additional(&self, a: AgentId) -> bool {
        self.additional[a.idx()]
    }

    /// All agents, in index order.
    pub fn agents(&self) -> impl Iterator<Item = AgentId> + '_ {
        (0..self.n as u32).map(AgentId)
    }

    /// The original agent set, in index order.
    pub fn original_agents(&self) -> Vec<AgentId> {
        self.agents().filter(|a| !self.is_additional(*a)).collect()
    }

    /// The additional agent set, in index order.
    pub fn additional_agents(&self) -> Vec<AgentId> {
        self.agents().filter(|a| self.is_additional(*a)).collect()
    }

    /// Number of friends of `agent` inside `coalition` (self never counts).
    pub fn friends_in(&self, agent: AgentId, coalition: &[AgentId]) -> usize {
        coalition
            .iter()
            .filter(|m| self.friends[agent.idx()].contains(m))
            .count()
    }

    /// All friendship arcs `(from, to)`.
    pub fn arcs(&self) -> Vec<(AgentId, AgentId)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for &j in &self.friends[i] {
                out.push((agent(i), j));
            }
        }
        out
    }
}

/// Either compact representation, for code that handles both.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Game {
    Additive(AdditiveGame),
    Friends(FriendGame),
}

impl Game {
    /// Number of agents.
    pub fn n_agents(&self) -> usize {
        match self {
            Game::Additive(g) => g.n_agents(),
            Game::Friends(g) => g.n_agents(),
        }
    }

    /// Which representation this game uses.
    pub fn model(&self) -> Model {
        match self {
            Game::Additive(_) => Model::Additive,
            Game::Friends(_) => Model::Friends,
        }
    }

    /// Whether `a` belongs to the additional pool.
    pub fn is_additional(&self, a: AgentId) -> bool {
        match self {
            Game::Additive(g) => g.is_additional(a),
            Game::Friends(g) => g.is_additional(a),
        }
    }

    /// The original agent set, in index order.
    pub fn original_agents(&self) -> Vec<AgentId> {
        match self {
            Game::Additive(g) => g.original_agents(),
            Game::Friends(g) => g.original_agents(),
        }
    }

    /// The additional agent set, in index order.
    pub fn additional_agents(&self) -> Vec<AgentId> {
        match self {
            Game::Additive(g) => g.additional_agents(),
            Game::Friends(g) => g.additional_agents(),
        }
    }

    /// Structural flags of the preference/friendship graph.
    pub fn classify(&self) -> GameClass {
        match self {
            Game::Additive(g) => classify_additive(g),
            Game::Friends(g) => classify_friends(g),
        }
    }

    /// Compares two coalitions from `agent`'s perspective.
    ///
    /// Both coalitions must contain the agent. Additive games compare utility
    /// sums; friend-oriented games compare lexicographically (more friends
    /// first, then fewer non-friends, counting the agent itself literally on
    /// both sides).
    pub fn prefers(&self, a: AgentId, first: &[AgentId], second: &[AgentId]) -> Result<Preference> {
        if !first.contains(&a) {
            return Err(Error::AgentMissing {
                agent: a,
                place: "first coalition",
            });
        }
        if !second.contains(&a) {
            return Err(Error::AgentMissing {
                agent: a,
                place: "second coalition",
            });
        }
        Ok(self.compare_coalitions(a, first, second))
    }

    /// Coalition comparison without the membership precondition; used by the
    /// verifiers, which compare `B ∪ {i}` against `Π(i)` where `i ∉ B`.
    /// Membership of the agent itself is weightless in both representations
    /// (zero self-utility, self is never a friend), so it is safe to compare
    /// raw member lists and account for the agent literally.
    pub(crate) fn compare_coalitions(
        &self,
        a: AgentId,
        first: &[AgentId],
        second: &[AgentId],
    ) -> Preference {
        match self {
            Game::Additive(g) => {
                let ua = g.utility_towards(a, first);
                let ub = g.utility_towards(a, second);
                cmp_to_pref(ua.cmp(&ub))
            }
            Game::Friends(g) => {
                let fa = g.friends_in(a, first);
                let fb = g.friends_in(a, second);
                // Non-friend counts include the agent itself when present; it
                // appears on both sides whenever both coalitions contain it.
                let ea = size_with(first, a) - fa;
                let eb = size_with(second, a) - fb;
                cmp_to_pref(fa.cmp(&fb).then(eb.cmp(&ea)))
            }
        }
    }
}

fn size_with(coalition: &[AgentId], a: AgentId) -> usize {
    if coalition.contains(&a) {
        coalition.len()
    } else {
        coalition.len() + 1
    }
}

fn cmp_to_pref(o: std::cmp::Ordering) -> Preference {
    match o {
        std::cmp::Ordering::Greater => Preference::StrictFirst,
        std::cmp::Ordering::Equal => Preference::Indifferent,
        std::cmp::Ordering::Less => Preference::StrictSecond,
    }
}

/// Flags for an additive game: acyclicity of the non-zero-arc digraph and
/// weight symmetry.
pub fn classify_additive(g: &AdditiveGame) -> GameClass {
    let n = g.n_agents();
    let mut sym = true;
    'outer: for i in 0..n {
        for j in (i + 1)..n {
            if g.utility(agent(i), agent(j)) != g.utility(agent(j), agent(i)) {
                sym = false;
                break 'outer;
            }
        }
    }
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| j != i && g.utility(agent(i), agent(j)) != 0)
                .collect()
        })
        .collect();
    GameClass {
        is_dag: is_acyclic(&adj),
        is_symmetric: sym,
    }
}

/// Flags for a friend game: arc `(i,j)` present iff `(j,i)` present, and
/// acyclicity of the friendship graph.
pub fn classify_friends(g: &FriendGame) -> GameClass {
    let n = g.n_agents();
    let mut sym = true;
    'outer: for i in 0..n {
        for &j in g.friends_of(agent(i)) {
            if !g.is_friend(j, agent(i)) {
                sym = false;
                break 'outer;
            }
        }
    }
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|i| g.friends_of(agent(i)).iter().map(|a| a.idx()).collect())
        .collect();
    GameClass {
        is_dag: is_acyclic(&adj),
        is_symmetric: sym,
    }
}

/// Kahn-style acyclicity check on an adjacency list.
fn is_acyclic(adj: &[Vec<usize>]) -> bool {
    let n = adj.len();
    let mut indeg = vec![0usize; n];
    for out in adj {
        for &v in out {
            indeg[v] += 1;
        }
    }
    let mut queue: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut seen = 0;
    while let Some(v) = queue.pop() {
        seen += 1;
        for &w in &adj[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                queue.push(w);
            }
        }
    }
    seen == n
}

/// Embeds a friend game into an additive game: friend arcs get weight `n`,
/// every other ordered pair (excluding self) gets weight `-1`. Preserves the
/// original/additional split.
pub fn friends_to_additive(fg: &FriendGame) -> AdditiveGame {
    let n = fg.n_agents();
    let mut g = AdditiveGame::new(n);
    for i in 0..n {
        if fg.is_additional(agent(i)) {
            g.mark_additional(agent(i));
        }
        for j in 0..n {
            if i == j {
                continue;
            }
            let w = if fg.is_friend(agent(i), agent(j)) {
                n as i64
            } else {
                -1
            };
            g.set_utility(agent(i), agent(j), w);
        }
    }
    g
}

//! Exhaustive ground-truth solvers: set-partition enumeration, stable-
//! partition existence under a goal, and full control search. These are the
//! oracle the polynomial solvers are validated against and the production
//! path for the hard complexity cells at small instance sizes.
//!
//! Internally the searches run over bitmask coalitions (at most
//! [`MASK_LIMIT`] active agents); the public partition stream uses
//! restricted-growth strings.

use crate::control::{resulting_agents, validate_query, Action, ControlQuery, Route, SolveOutcome};
use crate::error::{Error, Result};
use crate::game::{AgentId, Game};
use crate::partition::Partition;
use crate::stability::{next_combination, Goal, Stability};

/// Hard limit of the bitmask search engine.
pub const MASK_LIMIT: usize = 16;

/// Caps for the exhaustive searches.
#[derive(Debug, Clone, Copy)]
pub struct ExactConfig {
    /// Maximum active agents for partition enumeration (Bell-number growth).
    pub partition_cap: usize,
    /// Maximum active agents for the individual-rationality coalition scan
    /// (single-exponential growth).
    pub ir_subset_cap: usize,
    /// Maximum active agents when the sought concept is core stability
    /// (each candidate partition incurs a blocking-coalition search).
    pub cs_partition_cap: usize,
}

impl Default for ExactConfig {
    fn default() -> Self {
        ExactConfig {
            partition_cap: 12,
            ir_subset_cap: 22,
            cs_partition_cap: 10,
        }
    }
}

// ---------------------------------------------------------------------------
// Public partition stream (restricted growth strings)
// ---------------------------------------------------------------------------

/// Streams every set partition of `agents` exactly once, in restricted-
/// growth-string order.
pub fn enumerate_partitions(agents: &[AgentId], cap: usize) -> Result<PartitionStream> {
    if agents.len() > cap {
        return Err(Error::CapExceeded {
            what: "partition enumeration",
            n: agents.len(),
            cap,
        });
    }
    Ok(PartitionStream {
        agents: agents.to_vec(),
        rgs: Vec::new(),
        started: false,
    })
}

/// Iterator produced by [`enumerate_partitions`].
#[derive(Debug)]
pub struct PartitionStream {
    agents: Vec<AgentId>,
    rgs: Vec<usize>,
    started: bool,
}

impl Iterator for PartitionStream {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let m = self.agents.len();
        if m == 0 {
            if self.started {
                return None;
            }
            self.started = true;
            return Some(Partition::new(Vec::new()).expect("empty partition"));
        }
        if !self.started {
            self.started = true;
            self.rgs = vec![0; m];
        } else if !advance_rgs(&mut self.rgs) {
            return None;
        }
        let blocks = self.rgs.iter().copied().max().unwrap_or(0) + 1;
        let mut coalitions: Vec<Vec<AgentId>> = vec![Vec::new(); blocks];
        for (i, &b) in self.rgs.iter().enumerate() {
            coalitions[b].push(self.agents[i]);
        }
        Some(Partition::new(coalitions).expect("RGS blocks are disjoint"))
    }
}

/// Lexicographic successor of a restricted growth string.
fn advance_rgs(rgs: &mut [usize]) -> bool {
    let m = rgs.len();
    let mut prefix_max = vec![0usize; m];
    for i in 1..m {
        prefix_max[i] = prefix_max[i - 1].max(rgs[i - 1]);
    }
    for i in (1..m).rev() {
        if rgs[i] <= prefix_max[i] {
            rgs[i] += 1;
            for v in rgs[i + 1..].iter_mut() {
                *v = 0;
            }
            return true;
        }
    }
    false
}

// ---------------------------------------------------------------------------
// Bitmask search engine
// ---------------------------------------------------------------------------

/// Per-active-set tables for fast stability checks over mask coalitions.
struct MaskCtx {
    agents: Vec<AgentId>,
    flavor: Flavor,
}

enum Flavor {
    Additive {
        /// `sums[p]
        /// [mask]`: utility of position `p` towards the members of `mask`.
        sums: Vec<Vec<i64>>,
        /// Positions whose utility towards `p` is non-negative (consenters).
        consenters: Vec<u32>,
        /// Positions with strictly positive utility from `p`.
        positive: Vec<u32>,
    },
    Friends {
        /// Out-friends of position `p` among the active set.
        fmask: Vec<u32>,
        /// Positions that consider `p` a friend.
        fans: Vec<u32>,
    },
}

impl MaskCtx {
    fn new(game: &Game, agents: &[AgentId]) -> Self {
        let m = agents.len();
        assert!(m <= MASK_LIMIT);
        let flavor = match game {
            Game::Additive(g) => {
                let mut sums = Vec::with_capacity(m);
                for &a in agents {
                    let mut row = vec![0i64; 1 << m];
                    for mask in 1usize..(1 << m) {
                        let low = mask.trailing_zeros() as usize;
                        row[mask] = row[mask & (mask - 1)] + g.utility(a, agents[low]);
                    }
                    sums.push(row);
                }
                let mut consenters = vec![0u32; m];
                let mut positive = vec![0u32; m];
                for (p, &a) in agents.iter().enumerate() {
                    for (q, &b) in agents.iter().enumerate() {
                        if g.utility(b, a) >= 0 {
                            consenters[p] |= 1 << q;
                        }
                        if p != q && g.utility(a, b) > 0 {
                            positive[p] |= 1 << q;
                        }
                    }
                }
                Flavor::Additive {
                    sums,
                    consenters,
                    positive,
                }
            }
            Game::Friends(g) => {
                let mut fmask = vec![0u32; m];
                let mut fans = vec![0u32; m];
                for (p, &a) in agents.iter().enumerate() {
                    for (q, &b) in agents.iter().enumerate() {
                        if g.is_friend(a, b) {
                            fmask[p] |= 1 << q;
                            fans[q] |= 1 << p;
                        }
                    }
                }
                Flavor::Friends { fmask, fans }
            }
        };
        MaskCtx {
            agents: agents.to_vec(),
            flavor,
        }
    }

    fn m(&self) -> usize {
        self.agents.len()
    }

    /// Lexicographic value of `p`'s view of coalition mask `c` (which must
    /// contain `p`): higher compares as preferred.
    #[inline]
    fn value_in(&self, p: usize, c: u32) -> (i64, i64) {
        match &self.flavor {
            Flavor::Additive { sums, .. } => (sums[p][c as usize], 0),
            Flavor::Friends { fmask, .. } => {
                let friends = (fmask[p] & c).count_ones() as i64;
                let nonfriends = c.count_ones() as i64 - friends;
                (friends, -nonfriends)
            }
        }
    }

    /// `p`'s view of joining coalition mask `b` (which must not contain `p`).
    #[inline]
    fn value_joining(&self, p: usize, b: u32) -> (i64, i64) {
        self.value_in(p, b | (1 << p))
    }

    /// Whether `p` weakly prefers its own block to the singleton.
    #[inline]
    fn individually_rational(&self, p: usize, own: u32) -> bool {
        self.value_in(p, own) >= self.value_in(p, 1 << p)
    }

    /// Whether every member of `b` consents to `p` joining.
    #[inline]
    fn consents(&self, p: usize, b: u32) -> bool {
        match &self.flavor {
            Flavor::Additive { consenters, .. } => b & !consenters[p] == 0,
            Flavor::Friends { fans, .. } => b & !fans[p] == 0,
        }
    }

    /// Positions that strictly prefer some conceivable coalition over their
    /// current block; only these can join a blocking coalition.
    fn improvers(&self, blocks: &[u32], block_of: &[u8]) -> u32 {
        let mut out = 0u32;
        for p in 0..self.m() {
            let own = blocks[block_of[p] as usize];
            let best = match &self.flavor {
                Flavor::Additive { positive, .. } => positive[p] | (1 << p),
                Flavor::Friends { fmask, .. } => fmask[p] | (1 << p),
            };
            if self.value_in(p, best) > self.value_in(p, own) {
                out |= 1 << p;
            }
        }
        out
    }

    /// Stability of the partition given as block masks. `block_of[p]` is the
    /// index of `p`'s block in `blocks`.
    fn stable(&self, stability: Stability, blocks: &[u32], block_of: &[u8]) -> bool {
        match stability {
            Stability::Ir => (0..self.m())
                .all(|p| self.individually_rational(p, blocks[block_of[p] as usize])),
            Stability::Ns => (0..self.m()).all(|p| {
                let own = self.value_in(p, blocks[block_of[p] as usize]);
                if own < self.value_in(p, 1 << p) {
                    return false;
                }
                blocks
                    .iter()
                    .enumerate()
                    .all(|(bi, &b)| bi == block_of[p] as usize || self.value_joining(p, b) <= own)
            }),
            Stability::Is => (0..self.m()).all(|p| {
                let own = self.value_in(p, blocks[block_of[p] as usize]);
                if own < self.value_in(p, 1 << p) {
                    return false;
                }
                blocks.iter().enumerate().all(|(bi, &b)| {
                    bi == block_of[p] as usize
                        || self.value_joining(p, b) <= own
                        || !self.consents(p, b)
                })
            }),
            Stability::Cs => {
                if !(0..self.m())
                    .all(|p| self.individually_rational(p, blocks[block_of[p] as usize]))
                {
                    return false;
                }
                let improvers = self.improvers(blocks, block_of);
                if improvers == 0 {
                    return true;
                }
                // Enumerate non-empty submasks of the improver set.
                let mut b = improvers;
                while b != 0 {
                    let all_gain = (0..self.m()).filter(|&p| b & (1 << p) != 0).all(|p| {
                        self.value_in(p, b) > self.value_in(p, blocks[block_of[p] as usize])
                    });
                    if all_gain {
                        return false;
                    }
                    b = (b - 1) & improvers;
                }
                true
            }
        }
    }

    fn to_partition(&self, blocks: &[u32]) -> Partition {
        let coalitions: Vec<Vec<AgentId>> = blocks
            .iter()
            .map(|&b| {
                (0..self.m())
                    .filter(|&p| b & (1 << p) != 0)
                    .map(|p| self.agents[p])
                    .collect()
            })
            .collect();
        Partition::new(coalitions).expect("mask blocks are disjoint")
    }
}

/// Goal expressed over positions in the active set.
#[derive(Clone, Copy)]
enum MaskGoal {
    NotAlone(usize),
    Together(usize, usize),
    Grand,
}

fn mask_goal(goal: Goal, agents: &[AgentId]) -> Result<MaskGoal> {
    let pos = |a: AgentId| -> Result<usize> {
        agents.iter().position(|&b| b == a).ok_or(Error::AgentMissing {
            agent: a,
            place: "active agent set",
        })
    };
    Ok(match goal {
        Goal::NotAlone(x) => MaskGoal::NotAlone(pos(x)?),
        Goal::Together(x, y) => MaskGoal::Together(pos(x)?, pos(y)?),
        Goal::GrandCoalition => MaskGoal::Grand,
    })
}

fn goal_holds_masks(goal: MaskGoal, blocks: &[u32], block_of: &[u8]) -> bool {
    match goal {
        MaskGoal::NotAlone(p) => blocks[block_of[p] as usize].count_ones() >= 2,
        MaskGoal::Together(p, q) => block_of[p] == block_of[q],
        MaskGoal::Grand => blocks.len() == 1,
    }
}

/// Depth-first enumeration of restricted-growth assignments with a stability
/// check at every leaf; returns the first stable partition meeting the goal.
fn search_partitions(
    ctx: &MaskCtx,
    stability: Stability,
    goal: MaskGoal,
) -> Option<Partition> {
    let m = ctx.m();
    let mut blocks: Vec<u32> = Vec::new();
    let mut block_of = vec![0u8; m];

    fn rec(
        ctx: &MaskCtx,
        stability: Stability,
        goal: MaskGoal,
        pos: usize,
        blocks: &mut Vec<u32>,
        block_of: &mut [u8],
    ) -> Option<Partition> {
        if pos == ctx.m() {
            if goal_holds_masks(goal, blocks, block_of) && ctx.stable(stability, blocks, block_of)
            {
                return Some(ctx.to_partition(blocks));
            }
            return None;
        }
        let bit = 1u32 << pos;
        for b in 0..=blocks.len() {
            if b == blocks.len() {
                blocks.push(bit);
            } else {
                blocks[b] |= bit;
            }
            block_of[pos] = b as u8;
            if let Some(found) = rec(ctx, stability, goal, pos + 1, blocks, block_of) {
                return Some(found);
            }
            if b == blocks.len() - 1 && blocks[b] == bit {
                blocks.pop();
            } else {
                blocks[b] &= !bit;
            }
        }
        None
    }

    rec(ctx, stability, goal, 0, &mut blocks, &mut block_of)
}

/// Individual-rationality fast path: a partition with the goal exists iff
/// some coalition containing the goal agents keeps every member weakly above
/// its singleton (all other agents stay singletons, which are always IR).
///
/// Works directly on the game tables, so it supports more agents than the
/// mask engine (single-exponential in the active set rather than
/// Bell-number growth).
fn search_ir_coalition(game: &Game, active: &[AgentId], goal: MaskGoal) -> Option<Partition> {
    let m = active.len();
    debug_assert!(m <= 31);
    // Member check: in a coalition of size >= 2, an additive agent needs a
    // non-negative utility sum and a friend-oriented agent needs at least
    // one friend.
    let member_ok = |p: usize, c: u32| -> bool {
        match game {
            Game::Additive(g) => {
                let mut sum = 0i64;
                let mut rest = c;
                while rest != 0 {
                    let q = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    sum += g.utility(active[p], active[q]);
                }
                sum >= 0
            }
            Game::Friends(g) => {
                let mut rest = c & !(1 << p);
                while rest != 0 {
                    let q = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    if g.is_friend(active[p], active[q]) {
                        return true;
                    }
                }
                false
            }
        }
    };
    let all_ir = |c: u32| -> bool {
        let mut rest = c;
        while rest != 0 {
            let p = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if !member_ok(p, c) {
                return false;
            }
        }
        true
    };
    let (required, free, min_extra): (u32, Vec<usize>, usize) = match goal {
        MaskGoal::Grand => {
            // Handled by the dedicated grand-coalition branch upstream.
            let full = (1u32 << m) - 1;
            return all_ir(full).then(|| {
                Partition::grand(active).expect("non-empty active set")
            });
        }
        MaskGoal::NotAlone(p) => (1 << p, (0..m).filter(|&q| q != p).collect(), 1),
        MaskGoal::Together(p, q) => (
            (1 << p) | (1 << q),
            (0..m).filter(|&r| r != p && r != q).collect(),
            0,
        ),
    };
    // Ascending extension size, then lexicographic: the first hit is the
    // deterministic witness.
    let f = free.len();
    for size in min_extra..=f {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let mut c = required;
            for &i in &idx {
                c |= 1 << free[i];
            }
            if all_ir(c) {
                let members: Vec<AgentId> = (0..m)
                    .filter(|&p| c & (1 << p) != 0)
                    .map(|p| active[p])
                    .collect();
                return Some(
                    Partition::coalition_plus_singletons(members, active)
                        .expect("coalition drawn from active agents"),
                );
            }
            if size == 0 || !next_combination(&mut idx, f) {
                break;
            }
        }
    }
    None
}

/// Whether a `stability`-stable partition of `active` meeting `goal` exists;
/// returns one such partition.
///
/// Individual rationality uses the coalition scan; the other concepts
/// enumerate partitions. The grand-coalition goal always checks the single
/// grand partition directly.
pub fn exists_stable_goal(
    game: &Game,
    stability: Stability,
    goal: Goal,
    active: &[AgentId],
    cfg: &ExactConfig,
) -> Result<Option<Partition>> {
    let m = active.len();
    if m == 0 {
        return Ok(None);
    }
    if let Goal::GrandCoalition = goal {
        // Only one candidate partition; verify it with the public verifiers
        // so arbitrarily large grand coalitions are supported.
        let partition = Partition::grand(active)?;
        let ok = match (stability, game) {
            // The grand coalition of a friend game is core stable exactly
            // when the kept friendship graph is strongly connected (a sink
            // component blocks otherwise): no search at any size.
            (Stability::Cs, Game::Friends(fg)) => {
                let mut mask = vec![false; fg.n_agents()];
                for a in active {
                    mask[a.idx()] = true;
                }
                crate::graphs::friend_sccs(fg, Some(&mask)).components.len() == 1
            }
            (Stability::Cs, Game::Additive(_)) => {
                if m > cfg.cs_partition_cap {
                    return Err(Error::CapExceeded {
                        what: "grand-coalition core check",
                        n: m,
                        cap: cfg.cs_partition_cap,
                    });
                }
                crate::stability::is_cs(game, &partition, m)?.is_ok()
            }
            (s, _) => crate::stability::verify(game, &partition, s, m)?.is_ok(),
        };
        return Ok(ok.then_some(partition));
    }
    let goal = mask_goal(goal, active)?;
    if stability == Stability::Ir {
        let cap = cfg.ir_subset_cap.min(31);
        if m > cap {
            return Err(Error::CapExceeded {
                what: "individually-rational coalition scan",
                n: m,
                cap,
            });
        }
        return Ok(search_ir_coalition(game, active, goal));
    }
    let cap = match stability {
        Stability::Cs => cfg.cs_partition_cap,
        _ => cfg.partition_cap,
    }
    .min(MASK_LIMIT);
    if m > cap {
        return Err(Error::CapExceeded {
            what: "stable-partition existence search",
            n: m,
            cap,
        });
    }
    let ctx = MaskCtx::new(game, active);
    Ok(search_partitions(&ctx, stability, goal))
}

/// Definition-level control solver: enumerates control subsets by ascending
/// size (then lexicographically) and searches each resulting agent set for a
/// stable partition meeting the goal. Returns the minimum-cardinality
/// witness.
pub fn oracle_control(game: &Game, query: &ControlQuery, cfg: &ExactConfig) -> Result<SolveOutcome> {
    validate_query(game, query)?;
    let pool: Vec<AgentId> = match query.action {
        Action::AddAgents => game.additional_agents(),
        Action::DeleteAgents => {
            let protected = protected_agents(query.goal);
            game.original_agents()
                .into_iter()
                .filter(|a| !protected.contains(a))
                .collect()
        }
    };
    let max_size = query.budget.min(pool.len());
    for size in 0..=max_size {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let chosen: Vec<AgentId> = idx.iter().map(|&i| pool[i]).collect();
            let active = resulting_agents(game, query.action, &chosen);
            if !active.is_empty() {
                if let Some(partition) =
                    exists_stable_goal(game, query.stability, query.goal, &active, cfg)?
                {
                    return Ok(SolveOutcome::yes(Route::Exact, chosen, partition));
                }
            }
            if size == 0 || !next_combination(&mut idx, pool.len()) {
                break;
            }
        }
    }
    Ok(SolveOutcome::no(Route::Exact))
}

/// Deleting a goal agent can never satisfy a not-alone or pair goal.
fn protected_agents(goal: Goal) -> Vec<AgentId> {
    match goal {
        Goal::NotAlone(x) => vec![x],
        Goal::Together(x, y) => vec![x, y],
        Goal::GrandCoalition => Vec::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{agent, AdditiveGame, FriendGame};
    use crate::stability;
    use crate::testutil::section2_example;

    fn agents(n: usize) -> Vec<AgentId> {
        (0..n).map(agent).collect()
    }

    #[test]
    fn partition_counts_match_bell_numbers() {
        let bell = [1usize, 1, 2, 5, 15, 52, 203, 877, 4140, 21147, 115975];
        for (n, &expect) in bell.iter().enumerate() {
            let count = enumerate_partitions(&agents(n), 12).unwrap().count();
            assert_eq!(count, expect, "Bell({n})");
        }
    }

    #[test]
    fn partition_stream_is_duplicate_free() {
        let all: Vec<Partition> = enumerate_partitions(&agents(5), 12).unwrap().collect();
        let mut seen = std::collections::HashSet::new();
        for p in &all {
            assert!(seen.insert(p.clone()));
        }
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            enumerate_partitions(&agents(13), 12),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn exists_on_two_friend_cycle() {
        let mut fg = FriendGame::new(2);
        fg.add_mutual(agent(0), agent(1));
        let game = Game::Friends(fg);
        let p = exists_stable_goal(
            &game,
            Stability::Ir,
            Goal::Together(agent(0), agent(1)),
            &agents(2),
            &ExactConfig::default(),
        )
        .unwrap()
        .expect("mutual friends pair");
        assert!(stability::goal_holds(&p, Goal::Together(agent(0), agent(1))));
    }

    #[test]
    fn masked_search_agrees_with_public_verifiers() {
        // Cross-validate the bitmask stability checks against the public
        // verifiers over every partition of random games.
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(41);
        for round in 0..60 {
            let n = rng.gen_range(1..=5usize);
            let game = if round % 2 == 0 {
                let mut g = AdditiveGame::new(n);
                for i in 0..n {
                    for j in 0..n {
                        if i != j && rng.gen_bool(0.5) {
                            g.set_utility(agent(i), agent(j), rng.gen_range(-3..=3));
                        }
                    }
                }
                Game::Additive(g)
            } else {
                let mut g = FriendGame::new(n);
                for i in 0..n {
                    for j in 0..n {
                        if i != j && rng.gen_bool(0.4) {
                            g.add_friend(agent(i), agent(j));
                        }
                    }
                }
                Game::Friends(g)
            };
            let ctx = MaskCtx::new(&game, &agents(n));
            for p in enumerate_partitions(&agents(n), 12).unwrap() {
                let mut blocks = Vec::new();
                let mut block_of = vec![0u8; n];
                for c in p.coalitions() {
                    let mut mask = 0u32;
                    for a in c {
                        mask |= 1 << a.idx();
                        block_of[a.idx()] = blocks.len() as u8;
                    }
                    blocks.push(mask);
                }
                for s in Stability::ALL {
                    let fast = ctx.stable(s, &blocks, &block_of);
                    let slow = stability::verify(&game, &p, s, 20).unwrap().is_ok();
                    assert_eq!(fast, slow, "{s} disagreement on {p} (round {round})");
                }
            }
        }
    }

    #[test]
    fn oracle_reproduces_worked_example() {
        let (g, u1, _) = section2_example();
        let game = Game::Additive(g);
        let cfg = ExactConfig::default();
        // Adding w2 with budget one makes u1 not alone under IR.
        let yes = oracle_control(
            &game,
            &ControlQuery {
                stability: Stability::Ir,
                goal: Goal::NotAlone(u1),
                action: Action::AddAgents,
                budget: 1,
            },
            &cfg,
        )
        .unwrap();
        assert!(yes.decision);
        assert_eq!(yes.witness.as_ref().unwrap().chosen, vec![agent(4)]);
        // Deleting agents never helps u1.
        for k in 0..=5 {
            let del_game = {
                // Deletion instances carry no additional pool.
                let mut g2 = AdditiveGame::new(3);
                g2.set_utility(agent(0), agent(1), -1);
                g2.set_utility(agent(2), agent(0), -2);
                g2.set_utility(agent(2), agent(1), 2);
                Game::Additive(g2)
            };
            let no = oracle_control(
                &del_game,
                &ControlQuery {
                    stability: Stability::Ir,
                    goal: Goal::NotAlone(u1),
                    action: Action::DeleteAgents,
                    budget: k,
                },
                &cfg,
            )
            .unwrap();
            assert!(!no.decision, "k={k}");
        }
    }

    #[test]
    fn oracle_k_zero_equals_existence() {
        let mut fg = FriendGame::new(3);
        fg.add_mutual(agent(0), agent(1));
        let game = Game::Friends(fg);
        let cfg = ExactConfig::default();
        let q = ControlQuery {
            stability: Stability::Ns,
            goal: Goal::NotAlone(agent(0)),
            action: Action::AddAgents,
            budget: 0,
        };
        let direct = exists_stable_goal(&game, q.stability, q.goal, &agents(3), &cfg).unwrap();
        let via_oracle = oracle_control(&game, &q, &cfg).unwrap();
        assert_eq!(direct.is_some(), via_oracle.decision);
    }

    #[test]
    fn oracle_is_monotone_in_budget() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(43);
        let cfg = ExactConfig::default();
        for _ in 0..40 {
            let n = rng.gen_range(2..=6usize);
            let mut g = AdditiveGame::new(n);
            for i in 0..n {
                for j in 0..n {
                    if i != j && rng.gen_bool(0.5) {
                        g.set_utility(agent(i), agent(j), rng.gen_range(-2..=2));
                    }
                }
            }
            for i in n / 2..n {
                g.mark_additional(agent(i));
            }
            let game = Game::Additive(g);
            let mut prev = false;
            for k in 0..=3usize {
                let out = oracle_control(
                    &game,
                    &ControlQuery {
                        stability: Stability::Ir,
                        goal: Goal::NotAlone(agent(0)),
                        action: Action::AddAgents,
                        budget: k,
                    },
                    &cfg,
                )
                .unwrap();
                assert!(!prev || out.decision, "monotonicity violated at k={k}");
                prev = out.decision;
            }
        }
    }
}

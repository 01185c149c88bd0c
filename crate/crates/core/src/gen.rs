//! Instance generators: hardness-gadget constructions with known ground
//! truth from their combinatorial source instances, plus seeded random
//! games. Every generator audits its structural promises (acyclicity,
//! symmetry, degree bounds) at construction time, and the source instances
//! carry independent brute-force solvers so fixtures can record answer keys
//! without consulting the hedonic solvers.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::game::{
    agent, classify_additive, AdditiveGame, AgentId, FriendGame, Game, Model,
};
use crate::partition::Partition;

// ---------------------------------------------------------------------------
// Source instances
// ---------------------------------------------------------------------------

/// Exact cover by 3-sets with every element in exactly three members:
/// a `3·n_hat`-element universe and `3·n_hat` three-element subsets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rx3cInstance {
    pub n_hat: usize,
    /// Three distinct elements of `0..3*n_hat` per set.
    pub sets: Vec<[usize; 3]>,
}

impl Rx3cInstance {
    pub fn new(n_hat: usize, sets: Vec<[usize; 3]>) -> Result<Self> {
        if n_hat == 0 {
            return Err(Error::InvalidInstance("empty universe".into()));
        }
        if sets.len() != 3 * n_hat {
            return Err(Error::InvalidInstance(format!(
                "need {} sets, got {}",
                3 * n_hat,
                sets.len()
            )));
        }
        let mut occurrences = vec![0usize; 3 * n_hat];
        for s in &sets {
            if s[0] == s[1] || s[0] == s[2] || s[1] == s[2] {
                return Err(Error::InvalidInstance(format!("set {s:?} repeats an element")));
            }
            for &e in s {
                if e >= 3 * n_hat {
                    return Err(Error::InvalidInstance(format!("element {e} out of range")));
                }
                occurrences[e] += 1;
            }
        }
        if let Some(e) = occurrences.iter().position(|&c| c != 3) {
            return Err(Error::InvalidInstance(format!(
                "element {e} appears {} times instead of 3",
                occurrences[e]
            )));
        }
        Ok(Rx3cInstance { n_hat, sets })
    }

    pub fn universe_size(&self) -> usize {
        3 * self.n_hat
    }

    /// Brute-force exact-cover decision (element-driven backtracking).
    pub fn has_exact_cover(&self) -> bool {
        self.find_exact_cover().is_some()
    }

    /// One exact cover as set indices, if any.
    pub fn find_exact_cover(&self) -> Option<Vec<usize>> {
        let mut covered = vec![false; self.universe_size()];
        let mut chosen = Vec::new();
        self.cover_rec(&mut covered, &mut chosen)
            .then_some(chosen)
    }

    fn cover_rec(&self, covered: &mut [bool], chosen: &mut Vec<usize>) -> bool {
        let Some(first) = covered.iter().position(|&c| !c) else {
            return true;
        };
        for (j, s) in self.sets.iter().enumerate() {
            if s.contains(&first) && s.iter().all(|&e| !covered[e]) {
                for &e in s {
                    covered[e] = true;
                }
                chosen.push(j);
                if self.cover_rec(covered, chosen) {
                    return true;
                }
                chosen.pop();
                for &e in s {
                    covered[e] = false;
                }
            }
        }
        false
    }
}

/// Plain set cover: a universe, a collection of subsets, and a size budget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetCoverInstance {
    pub universe: usize,
    pub sets: Vec<Vec<usize>>,
    pub budget: usize,
}

impl SetCoverInstance {
    pub fn new(universe: usize, sets: Vec<Vec<usize>>, budget: usize) -> Result<Self> {
        if universe == 0 {
            return Err(Error::InvalidInstance("empty universe".into()));
        }
        let mut sets = sets;
        for s in &mut sets {
            s.sort_unstable();
            s.dedup();
            if s.is_empty() {
                return Err(Error::InvalidInstance("empty set".into()));
            }
            if s.iter().any(|&e| e >= universe) {
                return Err(Error::InvalidInstance("element out of range".into()));
            }
        }
        Ok(SetCoverInstance {
            universe,
            sets,
            budget,
        })
    }

    /// How many sets contain element `e`.
    pub fn occurrence(&self, e: usize) -> usize {
        self.sets.iter().filter(|s| s.contains(&e)).count()
    }

    /// Whether every element lies in at least one set.
    pub fn fully_covered(&self) -> bool {
        (0..self.universe).all(|e| self.occurrence(e) >= 1)
    }

    /// Brute-force minimum cover size, `None` when some element is uncovered.
    pub fn min_cover_size(&self) -> Option<usize> {
        if !self.fully_covered() {
            return None;
        }
        let m = self.sets.len();
        for size in 0..=m {
            let mut idx: Vec<usize> = (0..size).collect();
            loop {
                let mut covered = vec![false; self.universe];
                for &i in &idx {
                    for &e in &self.sets[i] {
                        covered[e] = true;
                    }
                }
                if covered.iter().all(|&c| c) {
                    return Some(size);
                }
                if size == 0 || !crate::stability::next_combination(&mut idx, m) {
                    break;
                }
            }
        }
        None
    }
}

/// Brute-force maximum clique size of a simple undirected graph.
pub fn max_clique(n: usize, edges: &[(usize, usize)]) -> usize {
    let mut adj = vec![vec![false; n]; n];
    for &(a, b) in edges {
        adj[a][b] = true;
        adj[b][a] = true;
    }
    let mut best = 0usize;
    let mut clique: Vec<usize> = Vec::new();
    fn grow(
        v: usize,
        n: usize,
        adj: &[Vec<bool>],
        clique: &mut Vec<usize>,
        best: &mut usize,
    ) {
        if v == n {
            *best = (*best).max(clique.len());
            return;
        }
        // Prune: even taking everything left cannot beat the best.
        if clique.len() + (n - v) <= *best {
            return;
        }
        if clique.iter().all(|&u| adj[u][v]) {
            clique.push(v);
            grow(v + 1, n, adj, clique, best);
            clique.pop();
        }
        grow(v + 1, n, adj, clique, best);
    }
    grow(0, n, &adj, &mut clique, &mut best);
    best
}

// ---------------------------------------------------------------------------
// Exact-cover gadgets (additive games)
// ---------------------------------------------------------------------------

/// Additive gadget whose not-alone decision under individual rationality at
/// budget zero equals exact-cover existence. Its preference graph becomes
/// acyclic after removing one feedback arc.
///
/// Agent layout: elements `u_1..u_{3n}` first, then sets `s_1..s_{3n}`, then
/// the chain anchors `y0`, `y1`, then the designated agent `x`.
#[derive(Debug, Clone)]
pub struct IrNaGadget {
    pub game: AdditiveGame,
    pub x: AgentId,
    n_hat: usize,
}

impl IrNaGadget {
    pub fn element_agent(&self, i: usize) -> AgentId {
        agent(i)
    }
    pub fn set_agent(&self, j: usize) -> AgentId {
        agent(3 * self.n_hat + j)
    }
    pub fn y0(&self) -> AgentId {
        agent(6 * self.n_hat)
    }
    pub fn y1(&self) -> AgentId {
        agent(6 * self.n_hat + 1)
    }

    /// The feedback arc whose removal makes the graph acyclic.
    pub fn feedback_arc(&self) -> (AgentId, AgentId) {
        (self.y1(), self.element_agent(0))
    }

    /// The coalition structure built from an exact cover: one coalition of
    /// `x`, all elements, both anchors, and the covering sets; everyone else
    /// a singleton.
    pub fn forward_partition(&self, cover: &[usize]) -> Result<Partition> {
        let mut c = vec![self.x, self.y0(), self.y1()];
        c.extend((0..3 * self.n_hat).map(|i| self.element_agent(i)));
        c.extend(cover.iter().map(|&j| self.set_agent(j)));
        let all: Vec<AgentId> = (0..self.game.n_agents() as u32).map(AgentId).collect();
        Partition::coalition_plus_singletons(c, &all)
    }
}

pub fn gen_rx3c_ir_na(rx3c: &Rx3cInstance) -> Result<IrNaGadget> {
    let n_hat = rx3c.n_hat;
    let m = 3 * n_hat;
    let n = 6 * n_hat + 3;
    let mut g = AdditiveGame::new(n);
    let elem = |i: usize| agent(i);
    let setag = |j: usize| agent(m + j);
    let (y0, y1, x) = (agent(2 * m), agent(2 * m + 1), agent(2 * m + 2));
    for a in 0..n - 1 {
        g.set_utility(agent(a), x, -1);
    }
    for i in 0..m - 1 {
        g.set_utility(elem(i), elem(i + 1), 1);
    }
    g.set_utility(elem(m - 1), y0, 1);
    g.set_utility(y0, y1, 1);
    g.set_utility(y1, elem(0), 1);
    for i in 0..m {
        g.set_utility(elem(i), y1, -1);
    }
    for (j, s) in rx3c.sets.iter().enumerate() {
        for &i in s {
            g.set_utility(elem(i), setag(j), 1);
        }
        g.set_utility(setag(j), y1, 1);
    }
    for j in 0..m {
        for l in j + 1..m {
            if rx3c.sets[j].iter().any(|e| rx3c.sets[l].contains(e)) {
                g.set_utility(setag(j), setag(l), -1);
            }
        }
    }
    // Structural audit: exactly one feedback arc.
    debug_assert!(!classify_additive(&g).is_dag);
    let mut without = g.clone();
    without.set_utility(y1, elem(0), 0);
    if !classify_additive(&without).is_dag {
        return Err(Error::InvalidInstance(
            "gadget should be acyclic without its feedback arc".into(),
        ));
    }
    Ok(IrNaGadget { game: g, x, n_hat })
}

/// Acyclic gadget for individual/Nash stability with the not-alone and pair
/// goals: the designated pair can only formalone-proof structure when the
/// set-agents split between element triples and auxiliary triples, which
/// forces an exact cover.
///
/// Agent layout: `y`, `x`, sets, elements, then auxiliary triples.
#[derive(Debug, Clone)]
pub struct IsNsDagGadget {
    pub game: AdditiveGame,
    pub x: AgentId,
    pub y: AgentId,
    n_hat: usize,
    sets: Vec<[usize; 3]>,
}

impl IsNsDagGadget {
    pub fn set_agent(&self, j: usize) -> AgentId {
        agent(2 + j)
    }
    pub fn element_agent(&self, i: usize) -> AgentId {
        agent(2 + 3 * self.n_hat + i)
    }
    pub fn aux_agent(&self, l: usize, z: usize) -> AgentId {
        agent(2 + 6 * self.n_hat + 3 * l + z)
    }

    /// The Nash-stable structure built from an exact cover: `{x,y}`, each
    /// covering set with its elements, each remaining set with one auxiliary
    /// triple.
    pub fn forward_partition(&self, cover: &[usize]) -> Result<Partition> {
        let mut coalitions = vec![vec![self.x, self.y]];
        let mut next_triple = 0usize;
        for j in 0..3 * self.n_hat {
            let mut c = vec![self.set_agent(j)];
            if cover.contains(&j) {
                // Set agents in the cover sit with their three elements.
                let s = &self.sets[j];
                c.extend(s.iter().map(|&i| self.element_agent(i)));
            } else {
                c.extend((0..3).map(|z| self.aux_agent(next_triple, z)));
                next_triple += 1;
            }
            coalitions.push(c);
        }
        // Leftover elements and triples (absent on valid covers) stay alone.
        let all: Vec<AgentId> = (0..self.game.n_agents() as u32).map(AgentId).collect();
        let placed: std::collections::BTreeSet<AgentId> =
            coalitions.iter().flatten().copied().collect();
        for a in all {
            if !placed.contains(&a) {
                coalitions.push(vec![a]);
            }
        }
        Partition::new(coalitions)
    }
}

pub fn gen_rx3c_isns_dag(rx3c: &Rx3cInstance) -> Result<IsNsDagGadget> {
    let n_hat = rx3c.n_hat;
    let m = 3 * n_hat;
    let n = 2 + 2 * m + 6 * n_hat;
    let mut g = AdditiveGame::new(n);
    let (y, x) = (agent(0), agent(1));
    let setag = |j: usize| agent(2 + j);
    let elem = |i: usize| agent(2 + m + i);
    let aux = |l: usize, z: usize| agent(2 + 2 * m + 3 * l + z);
    g.set_utility(y, x, 1);
    for j in 0..m {
        g.set_utility(y, setag(j), 1);
    }
    for a in 2..n {
        g.set_utility(x, agent(a), -1);
    }
    for (j, s) in rx3c.sets.iter().enumerate() {
        for &i in s {
            g.set_utility(setag(j), elem(i), 1);
        }
        for l in 0..2 * n_hat {
            for z in 0..3 {
                g.set_utility(setag(j), aux(l, z), 1);
            }
        }
    }
    for l in 0..2 * n_hat {
        g.set_utility(aux(l, 0), aux(l, 1), 1);
        g.set_utility(aux(l, 0), aux(l, 2), 1);
        g.set_utility(aux(l, 1), aux(l, 2), 1);
    }
    if !classify_additive(&g).is_dag {
        return Err(Error::InvalidInstance("gadget must be acyclic".into()));
    }
    Ok(IsNsDagGadget {
        game: g,
        x,
        y,
        n_hat,
        sets: rx3c.sets.clone(),
    })
}

/// Symmetric gadget for individual/Nash stability with the not-alone goal.
///
/// Agent layout: `x`, `y`, elements, sets, then single auxiliary agents.
#[derive(Debug, Clone)]
pub struct IsNsSymGadget {
    pub game: AdditiveGame,
    pub x: AgentId,
    pub y: AgentId,
    n_hat: usize,
    sets: Vec<[usize; 3]>,
}

impl IsNsSymGadget {
    pub fn element_agent(&self, i: usize) -> AgentId {
        agent(2 + i)
    }
    pub fn set_agent(&self, j: usize) -> AgentId {
        agent(2 + 3 * self.n_hat + j)
    }
    pub fn aux_agent(&self, l: usize) -> AgentId {
        agent(2 + 6 * self.n_hat + l)
    }

    /// Nash-stable structure from an exact cover: `{x,y}`, covering sets
    /// with their elements, remaining sets paired with one auxiliary each.
    pub fn forward_partition(&self, cover: &[usize]) -> Result<Partition> {
        let mut coalitions = vec![vec![self.x, self.y]];
        let mut next_aux = 0usize;
        for j in 0..3 * self.n_hat {
            let mut c = vec![self.set_agent(j)];
            if cover.contains(&j) {
                c.extend(self.sets[j].iter().map(|&i| self.element_agent(i)));
            } else {
                c.push(self.aux_agent(next_aux));
                next_aux += 1;
            }
            coalitions.push(c);
        }
        let all: Vec<AgentId> = (0..self.game.n_agents() as u32).map(AgentId).collect();
        let placed: std::collections::BTreeSet<AgentId> =
            coalitions.iter().flatten().copied().collect();
        for a in all {
            if !placed.contains(&a) {
                coalitions.push(vec![a]);
            }
        }
        Partition::new(coalitions)
    }
}

pub fn gen_rx3c_isns_sym(rx3c: &Rx3cInstance) -> Result<IsNsSymGadget> {
    let n_hat = rx3c.n_hat;
    let m = 3 * n_hat;
    let n = 2 + 2 * m + 2 * n_hat;
    let mut g = AdditiveGame::new(n);
    let (x, y) = (agent(0), agent(1));
    let elem = |i: usize| agent(2 + i);
    let setag = |j: usize| agent(2 + m + j);
    let aux = |l: usize| agent(2 + 2 * m + l);
    g.set_symmetric(x, y, 1);
    for a in 2..n {
        g.set_symmetric(x, agent(a), -1);
    }
    for j in 0..m {
        g.set_symmetric(y, setag(j), 1);
    }
    for (j, s) in rx3c.sets.iter().enumerate() {
        for &i in s {
            g.set_symmetric(setag(j), elem(i), 1);
        }
        for l in 0..2 * n_hat {
            g.set_symmetric(setag(j), aux(l), 3);
        }
    }
    if !classify_additive(&g).is_symmetric {
        return Err(Error::InvalidInstance("gadget must be symmetric".into()));
    }
    Ok(IsNsSymGadget {
        game: g,
        x,
        y,
        n_hat,
        sets: rx3c.sets.clone(),
    })
}

/// Acyclic max-degree-nine gadget for the pair goal under individual
/// rationality (and, on DAGs, core stability).
///
/// Agent layout: anchors `y_0..y_{3n}`, elements `u_1..u_{3n}`, sets.
#[derive(Debug, Clone)]
pub struct IrPaDagGadget {
    pub game: AdditiveGame,
    pub x: AgentId,
    pub y: AgentId,
    n_hat: usize,
}

impl IrPaDagGadget {
    pub fn anchor(&self, i: usize) -> AgentId {
        agent(i)
    }
    pub fn element_agent(&self, i: usize) -> AgentId {
        agent(3 * self.n_hat + 1 + i)
    }
    pub fn set_agent(&self, j: usize) -> AgentId {
        agent(6 * self.n_hat + 1 + j)
    }

    /// Individually rational structure from an exact cover: one coalition of
    /// all anchors, all elements and the covering sets.
    pub fn forward_partition(&self, cover: &[usize]) -> Result<Partition> {
        let m = 3 * self.n_hat;
        let mut c: Vec<AgentId> = (0..=m).map(|i| self.anchor(i)).collect();
        c.extend((0..m).map(|i| self.element_agent(i)));
        c.extend(cover.iter().map(|&j| self.set_agent(j)));
        let all: Vec<AgentId> = (0..self.game.n_agents() as u32).map(AgentId).collect();
        Partition::coalition_plus_singletons(c, &all)
    }
}

pub fn gen_rx3c_ir_pa_dag(rx3c: &Rx3cInstance) -> Result<IrPaDagGadget> {
    let n_hat = rx3c.n_hat;
    let m = 3 * n_hat;
    let n = 9 * n_hat + 1;
    let mut g = AdditiveGame::new(n);
    let anchor = |i: usize| agent(i);
    let elem = |i: usize| agent(m + 1 + i);
    let setag = |j: usize| agent(2 * m + 1 + j);
    // Anchor chain: each anchor dislikes its successor and likes the one
    // after plus the matching element.
    for i in 0..=m - 2 {
        g.set_utility(anchor(i), anchor(i + 1), -2);
        g.set_utility(anchor(i), elem(i), 1);
        g.set_utility(anchor(i), anchor(i + 2), 1);
    }
    g.set_utility(anchor(m - 1), anchor(m), -1);
    g.set_utility(anchor(m - 1), elem(m - 1), 1);
    for i in 0..m {
        g.set_utility(elem(i), anchor(i + 1), -1);
    }
    for (j, s) in rx3c.sets.iter().enumerate() {
        for &i in s {
            g.set_utility(elem(i), setag(j), 1);
        }
    }
    for j in 0..m {
        for l in j + 1..m {
            if rx3c.sets[j].iter().any(|e| rx3c.sets[l].contains(e)) {
                g.set_utility(setag(j), setag(l), -1);
            }
        }
    }
    if !classify_additive(&g).is_dag {
        return Err(Error::InvalidInstance("gadget must be acyclic".into()));
    }
    // Degree audit: every vertex touches at most nine arcs.
    let mut degree = vec![0usize; n];
    for (from, to, _) in g.arcs() {
        degree[from.idx()] += 1;
        degree[to.idx()] += 1;
    }
    if let Some(v) = degree.iter().position(|&d| d > 9) {
        return Err(Error::InvalidInstance(format!(
            "vertex {v} has degree {} > 9",
            degree[v]
        )));
    }
    Ok(IrPaDagGadget {
        game: g,
        x: anchor(0),
        y: anchor(1),
        n_hat,
    })
}

/// Symmetric gadget for the pair goal under IR, IS, and NS.
///
/// Agent layout: `x`, elements `u_1..u_{3n}` (the pair partner is `u_1`),
/// sets, then auxiliary agents.
#[derive(Debug, Clone)]
pub struct IrPaSymGadget {
    pub game: AdditiveGame,
    pub x: AgentId,
    pub y: AgentId,
    n_hat: usize,
}

impl IrPaSymGadget {
    pub fn element_agent(&self, i: usize) -> AgentId {
        agent(1 + i)
    }
    pub fn set_agent(&self, j: usize) -> AgentId {
        agent(1 + 3 * self.n_hat + j)
    }
    pub fn aux_agent(&self, l: usize) -> AgentId {
        agent(1 + 6 * self.n_hat + l)
    }

    /// Nash-stable structure from an exact cover: `x` with all elements and
    /// the covering sets; every other set with its own auxiliary.
    pub fn forward_partition(&self, cover: &[usize]) -> Result<Partition> {
        let m = 3 * self.n_hat;
        let mut big = vec![self.x];
        big.extend((0..m).map(|i| self.element_agent(i)));
        big.extend(cover.iter().map(|&j| self.set_agent(j)));
        let mut coalitions = vec![big];
        let mut next_aux = 0usize;
        for j in 0..m {
            if !cover.contains(&j) {
                coalitions.push(vec![self.set_agent(j), self.aux_agent(next_aux)]);
                next_aux += 1;
            }
        }
        let all: Vec<AgentId> = (0..self.game.n_agents() as u32).map(AgentId).collect();
        let placed: std::collections::BTreeSet<AgentId> =
            coalitions.iter().flatten().copied().collect();
        for a in all {
            if !placed.contains(&a) {
                coalitions.push(vec![a]);
            }
        }
        Partition::new(coalitions)
    }
}

pub fn gen_rx3c_ir_pa_sym(rx3c: &Rx3cInstance) -> Result<IrPaSymGadget> {
    let n_hat = rx3c.n_hat;
    let m = 3 * n_hat;
    let n = 8 * n_hat + 1;
    let mut g = AdditiveGame::new(n);
    let x = agent(0);
    let elem = |i: usize| agent(1 + i);
    let setag = |j: usize| agent(1 + m + j);
    let aux = |l: usize| agent(1 + 2 * m + l);
    for i in 0..m {
        g.set_symmetric(x, elem(i), -3);
    }
    for j in 0..m {
        g.set_symmetric(x, setag(j), 9);
    }
    // Element ring.
    for i in 0..m - 1 {
        g.set_symmetric(elem(i), elem(i + 1), 1);
    }
    g.set_symmetric(elem(0), elem(m - 1), 1);
    for (j, s) in rx3c.sets.iter().enumerate() {
        for &i in s {
            g.set_symmetric(setag(j), elem(i), 1);
        }
    }
    for j in 0..m {
        for l in j + 1..m {
            if rx3c.sets[j].iter().any(|e| rx3c.sets[l].contains(e)) {
                g.set_symmetric(setag(j), setag(l), -13);
            }
        }
    }
    for j in 0..m {
        for l in 0..2 * n_hat {
            g.set_symmetric(setag(j), aux(l), 1);
        }
    }
    for l in 0..2 * n_hat {
        g.set_symmetric(x, aux(l), -9);
        for i in 0..m {
            g.set_symmetric(aux(l), elem(i), -3);
        }
    }
    if !classify_additive(&g).is_symmetric {
        return Err(Error::InvalidInstance("gadget must be symmetric".into()));
    }
    Ok(IrPaSymGadget {
        game: g,
        x,
        y: elem(0),
        n_hat,
    })
}

// ---------------------------------------------------------------------------
// Set-cover gadgets (grand-coalition goal)
// ---------------------------------------------------------------------------

/// Friend-oriented grand-coalition gadget: element agents are original, set
/// agents form an additional clique, and adding a cover makes everyone keep
/// a friend (and the graph strongly connected). The budget equals the cover
/// budget.
#[derive(Debug, Clone)]
pub struct FriGrGadget {
    pub game: FriendGame,
    pub budget: usize,
}

impl FriGrGadget {
    pub fn element_agent(&self, i: usize) -> AgentId {
        agent(i)
    }
    pub fn set_agent(&self, universe: usize, j: usize) -> AgentId {
        agent(universe + j)
    }
}

pub fn gen_setcover_fri_gr(sc: &SetCoverInstance) -> Result<FriGrGadget> {
    let n = sc.universe + sc.sets.len();
    let mut fg = FriendGame::new(n);
    let elem = |i: usize| agent(i);
    let setag = |j: usize| agent(sc.universe + j);
    for j in 0..sc.sets.len() {
        fg.mark_additional(setag(j));
        for &i in &sc.sets[j] {
            fg.add_mutual(elem(i), setag(j));
        }
        for l in j + 1..sc.sets.len() {
            fg.add_mutual(setag(j), setag(l));
        }
    }
    Ok(FriGrGadget {
        game: fg,
        budget: sc.budget,
    })
}

/// Which of the additive set-cover constructions to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SetCoverVariant {
    /// Acyclic, adding set agents: elements dislike a sink and like their
    /// covering sets.
    DagAdd,
    /// Acyclic, deleting set agents: elements like private helpers and
    /// dislike their covering sets.
    DagDel,
    /// Symmetric, deleting set agents: as `DagDel` plus ballast agents that
    /// keep undeleted sets comfortable.
    SymDel,
}

/// Additive grand-coalition gadget; answer is yes iff a cover within the
/// budget exists. The deletion variants require every element to be covered
/// by at least one set.
#[derive(Debug, Clone)]
pub struct AddGrGadget {
    pub game: AdditiveGame,
    pub budget: usize,
    pub variant: SetCoverVariant,
    /// The agents representing sets, in set order.
    pub set_agents: Vec<AgentId>,
}

pub fn gen_setcover_add_gr(sc: &SetCoverInstance, variant: SetCoverVariant) -> Result<AddGrGadget> {
    let m = sc.sets.len();
    match variant {
        SetCoverVariant::DagAdd => {
            let n = sc.universe + 1 + m;
            let mut g = AdditiveGame::new(n);
            let elem = |i: usize| agent(i);
            let sink = agent(sc.universe);
            let setag = |j: usize| agent(sc.universe + 1 + j);
            for i in 0..sc.universe {
                g.set_utility(elem(i), sink, -1);
            }
            for j in 0..m {
                g.mark_additional(setag(j));
                for &i in &sc.sets[j] {
                    g.set_utility(elem(i), setag(j), 1);
                }
            }
            debug_assert!(classify_additive(&g).is_dag);
            Ok(AddGrGadget {
                game: g,
                budget: sc.budget,
                variant,
                set_agents: (0..m).map(setag).collect(),
            })
        }
        SetCoverVariant::DagDel | SetCoverVariant::SymDel => {
            if !sc.fully_covered() {
                return Err(Error::InvalidInstance(
                    "deletion gadgets need every element covered at least once".into(),
                ));
            }
            let helpers: Vec<usize> = (0..sc.universe).map(|e| sc.occurrence(e) - 1).collect();
            let helper_total: usize = helpers.iter().sum();
            let ballast_per_set = |j: usize| sc.sets[j].len() + m;
            let ballast_total: usize = if variant == SetCoverVariant::SymDel {
                (0..m).map(ballast_per_set).sum()
            } else {
                0
            };
            let n = sc.universe + m + helper_total + ballast_total;
            let mut g = AdditiveGame::new(n);
            let elem = |i: usize| agent(i);
            let setag = |j: usize| agent(sc.universe + j);
            let mut next = sc.universe + m;
            for (i, &h) in helpers.iter().enumerate() {
                for _ in 0..h {
                    if variant == SetCoverVariant::SymDel {
                        g.set_symmetric(elem(i), agent(next), 1);
                    } else {
                        g.set_utility(elem(i), agent(next), 1);
                    }
                    next += 1;
                }
            }
            if variant == SetCoverVariant::SymDel {
                for j in 0..m {
                    for _ in 0..ballast_per_set(j) {
                        g.set_symmetric(setag(j), agent(next), 1);
                        next += 1;
                    }
                }
                for j in 0..m {
                    for l in j + 1..m {
                        g.set_symmetric(setag(j), setag(l), -1);
                    }
                }
            }
            for j in 0..m {
                for &i in &sc.sets[j] {
                    if variant == SetCoverVariant::SymDel {
                        g.set_symmetric(elem(i), setag(j), -1);
                    } else {
                        g.set_utility(elem(i), setag(j), -1);
                    }
                }
            }
            let class = classify_additive(&g);
            match variant {
                SetCoverVariant::DagDel if !class.is_dag => {
                    return Err(Error::InvalidInstance("gadget must be acyclic".into()))
                }
                SetCoverVariant::SymDel if !class.is_symmetric => {
                    return Err(Error::InvalidInstance("gadget must be symmetric".into()))
                }
                _ => {}
            }
            Ok(AddGrGadget {
                game: g,
                budget: sc.budget,
                variant,
                set_agents: (0..m).map(setag).collect(),
            })
        }
    }
}

// ---------------------------------------------------------------------------
// Clique gadget (core stability, grand coalition)
// ---------------------------------------------------------------------------

/// Symmetric gadget whose grand coalition is core stable iff the source
/// graph has no clique of size `h`: vertex agents like neighbors, strongly
/// dislike non-neighbors, and a sweetener agent `b` tops every vertex up to
/// a total of exactly `h - 2`.
#[derive(Debug, Clone)]
pub struct CliqueGadget {
    pub game: AdditiveGame,
    pub h: usize,
    pub n_vertices: usize,
}

impl CliqueGadget {
    pub fn vertex_agent(&self, v: usize) -> AgentId {
        agent(v)
    }
    pub fn sweetener(&self) -> AgentId {
        agent(self.n_vertices)
    }
}

pub fn gen_clique_cs_gr(
    n_vertices: usize,
    edges: &[(usize, usize)],
    h: usize,
) -> Result<CliqueGadget> {
    if h == 0 {
        return Err(Error::InvalidInstance("clique bound must be positive".into()));
    }
    if n_vertices == 0 {
        return Err(Error::InvalidInstance("empty graph".into()));
    }
    let v = n_vertices as i64;
    let mut adj = vec![vec![false; n_vertices]; n_vertices];
    for &(a, b) in edges {
        if a == b || a >= n_vertices || b >= n_vertices {
            return Err(Error::InvalidInstance(format!("bad edge ({a},{b})")));
        }
        adj[a][b] = true;
        adj[b][a] = true;
    }
    let degree: Vec<i64> = adj.iter().map(|r| r.iter().filter(|&&x| x).count() as i64).collect();
    if let Some(w) = degree.iter().position(|&d| d >= v - 1) {
        return Err(Error::InvalidInstance(format!(
            "vertex {w} is adjacent to every other vertex"
        )));
    }
    let n = n_vertices + 1;
    let mut g = AdditiveGame::new(n);
    let b = agent(n_vertices);
    for a in 0..n_vertices {
        for c in a + 1..n_vertices {
            let w = if adj[a][c] { 1 } else { -v };
            g.set_symmetric(agent(a), agent(c), w);
        }
        let sweet = v * (v - degree[a] - 1) - degree[a] + h as i64 - 2;
        g.set_symmetric(agent(a), b, sweet);
    }
    // Identity audit: every vertex agent's total over the grand coalition
    // is exactly h - 2.
    let all: Vec<AgentId> = (0..n as u32).map(AgentId).collect();
    for a in 0..n_vertices {
        let total = g.utility_towards(agent(a), &all);
        if total != h as i64 - 2 {
            return Err(Error::InvalidInstance(format!(
                "vertex {a} sums to {total}, expected {}",
                h as i64 - 2
            )));
        }
    }
    Ok(CliqueGadget {
        game: g,
        h,
        n_vertices,
    })
}

// ---------------------------------------------------------------------------
// Random instances
// ---------------------------------------------------------------------------

/// Parameters for seeded random games.
#[derive(Debug, Clone)]
pub struct RandomSpec {
    pub model: Model,
    pub n: usize,
    pub arc_density: f64,
    pub min_weight: i64,
    pub max_weight: i64,
    pub symmetric: bool,
    pub dag: bool,
    pub split_fraction: f64,
    pub seed: u64,
}

impl Default for RandomSpec {
    fn default() -> Self {
        RandomSpec {
            model: Model::Friends,
            n: 5,
            arc_density: 0.3,
            min_weight: -3,
            max_weight: 3,
            symmetric: false,
            dag: false,
            split_fraction: 0.3,
            seed: 0,
        }
    }
}

/// Seed-deterministic random game honoring the structural flags.
pub fn gen_random(spec: &RandomSpec) -> Result<Game> {
    if spec.symmetric && spec.dag {
        return Err(Error::Unsupported(
            "a symmetric acyclic game has no arcs; generate it explicitly".into(),
        ));
    }
    if spec.min_weight > spec.max_weight || (spec.min_weight == 0 && spec.max_weight == 0) {
        return Err(Error::InvalidInstance("empty weight range".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let n = spec.n;
    // Additional pool: a random subset of the requested size.
    let n_additional = ((n as f64) * spec.split_fraction).round() as usize;
    let mut ids: Vec<usize> = (0..n).collect();
    ids.shuffle(&mut rng);
    let additional: Vec<usize> = ids.into_iter().take(n_additional.min(n)).collect();
    // Topological order for acyclic instances.
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let mut rank = vec![0usize; n];
    for (pos, &v) in order.iter().enumerate() {
        rank[v] = pos;
    }
    let weight = |rng: &mut ChaCha8Rng| -> i64 {
        loop {
            let w = rng.gen_range(spec.min_weight..=spec.max_weight);
            if w != 0 {
                return w;
            }
        }
    };
    let game = match spec.model {
        Model::Friends => {
            let mut fg = FriendGame::new(n);
            for &a in &additional {
                fg.mark_additional(agent(a));
            }
            for i in 0..n {
                for j in 0..n {
                    if i >= j && spec.symmetric {
                        continue;
                    }
                    if i == j {
                        continue;
                    }
                    if spec.dag && rank[i] >= rank[j] {
                        continue;
                    }
                    if rng.gen_bool(spec.arc_density) {
                        if spec.symmetric {
                            fg.add_mutual(agent(i), agent(j));
                        } else {
                            fg.add_friend(agent(i), agent(j));
                        }
                    }
                }
            }
            Game::Friends(fg)
        }
        Model::Additive => {
            let mut g = AdditiveGame::new(n);
            for &a in &additional {
                g.mark_additional(agent(a));
            }
            for i in 0..n {
                for j in 0..n {
                    if i >= j && spec.symmetric {
                        continue;
                    }
                    if i == j {
                        continue;
                    }
                    if spec.dag && rank[i] >= rank[j] {
                        continue;
                    }
                    if rng.gen_bool(spec.arc_density) {
                        let w = weight(&mut rng);
                        if spec.symmetric {
                            g.set_symmetric(agent(i), agent(j), w);
                        } else {
                            g.set_utility(agent(i), agent(j), w);
                        }
                    }
                }
            }
            Game::Additive(g)
        }
    };
    Ok(game)
}

/// Deals `copies` occurrences of each of `element_count` elements into
/// triples, then repairs duplicate elements within a triple by swapping
/// slots between triples. `copies * element_count` must be divisible by 3.
fn deal_triples(
    element_count: usize,
    copies: usize,
    rng: &mut ChaCha8Rng,
) -> Option<Vec<[usize; 3]>> {
    let num_sets = element_count * copies / 3;
    debug_assert_eq!(element_count * copies % 3, 0);
    'attempt: for _ in 0..200 {
        let mut slots: Vec<usize> = (0..element_count)
            .flat_map(|e| std::iter::repeat_n(e, copies))
            .collect();
        slots.shuffle(rng);
        let mut sets: Vec<Vec<usize>> = slots.chunks(3).map(|c| c.to_vec()).collect();
        // Swap repair: move a duplicated element into a set lacking it.
        for _ in 0..(20 * num_sets * num_sets + 100) {
            let mut dup = None;
            'scan: for (j, s) in sets.iter().enumerate() {
                for a in 0..3 {
                    for b in a + 1..3 {
                        if s[a] == s[b] {
                            dup = Some((j, a));
                            break 'scan;
                        }
                    }
                }
            }
            let Some((j, slot)) = dup else {
                return Some(
                    sets.iter()
                        .map(|s| {
                            let mut arr = [s[0], s[1], s[2]];
                            arr.sort_unstable();
                            arr
                        })
                        .collect(),
                );
            };
            let e = sets[j][slot];
            // Find a partner set without e holding an element absent from j.
            let js: Vec<usize> = (0..num_sets).filter(|&l| l != j).collect();
            let mut swapped = false;
            for &l in js.choose_multiple(rng, num_sets.saturating_sub(1)) {
                if sets[l].contains(&e) {
                    continue;
                }
                if let Some(pos) = (0..3).find(|&p| !sets[j].contains(&sets[l][p])) {
                    let f = sets[l][pos];
                    sets[l][pos] = e;
                    sets[j][slot] = f;
                    swapped = true;
                    break;
                }
            }
            if !swapped {
                continue 'attempt;
            }
        }
    }
    None
}

/// Seed-deterministic restricted exact-cover instance: deals each element
/// exactly three set slots, then repairs duplicate elements within a set by
/// swapping slots between sets.
pub fn random_rx3c(n_hat: usize, seed: u64) -> Result<Rx3cInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sets = deal_triples(3 * n_hat, 3, &mut rng).ok_or_else(|| {
        Error::InvalidInstance("could not repair a random exact-cover instance".into())
    })?;
    Rx3cInstance::new(n_hat, sets)
}

/// Random instance that is guaranteed a yes: a planted partition of the
/// universe into disjoint triples plus dealt filler sets covering each
/// element twice more. Returns the instance and the planted cover's set
/// indices.
pub fn random_rx3c_with_cover(n_hat: usize, seed: u64) -> Result<(Rx3cInstance, Vec<usize>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = 3 * n_hat;
    let mut universe: Vec<usize> = (0..m).collect();
    universe.shuffle(&mut rng);
    let planted: Vec<[usize; 3]> = universe
        .chunks(3)
        .map(|c| {
            let mut arr = [c[0], c[1], c[2]];
            arr.sort_unstable();
            arr
        })
        .collect();
    let filler = deal_triples(m, 2, &mut rng).ok_or_else(|| {
        Error::InvalidInstance("could not repair the filler sets".into())
    })?;
    // Interleave planted and filler sets at shuffled positions.
    let mut order: Vec<usize> = (0..m).collect();
    order.shuffle(&mut rng);
    let mut sets = vec![[0usize; 3]; m];
    let mut cover = Vec::with_capacity(n_hat);
    for (src, &dst) in order.iter().enumerate() {
        if src < n_hat {
            sets[dst] = planted[src];
            cover.push(dst);
        } else {
            sets[dst] = filler[src - n_hat];
        }
    }
    cover.sort_unstable();
    let inst = Rx3cInstance::new(n_hat, sets)?;
    Ok((inst, cover))
}

/// A cover of the instance by the greedy most-uncovered-first rule; `None`
/// when some element is uncovered. Not minimal, but valid, which is all the
/// forward constructions need.
pub fn greedy_cover(sc: &SetCoverInstance) -> Option<Vec<usize>> {
    if !sc.fully_covered() {
        return None;
    }
    let mut covered = vec![false; sc.universe];
    let mut cover = Vec::new();
    while covered.iter().any(|&c| !c) {
        let (best, _) = sc
            .sets
            .iter()
            .enumerate()
            .map(|(j, s)| (j, s.iter().filter(|&&e| !covered[e]).count()))
            .max_by_key(|&(j, gain)| (gain, std::cmp::Reverse(j)))?;
        cover.push(best);
        for &e in &sc.sets[best] {
            covered[e] = true;
        }
    }
    cover.sort_unstable();
    Some(cover)
}

/// Seed-deterministic set-cover instance. With `ensure_covered`, elements
/// missing from every set are inserted into a random set.
pub fn random_set_cover(
    universe: usize,
    num_sets: usize,
    budget: usize,
    ensure_covered: bool,
    seed: u64,
) -> Result<SetCoverInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sets: Vec<Vec<usize>> = (0..num_sets)
        .map(|_| {
            let size = rng.gen_range(1..=universe.max(1));
            let mut pool: Vec<usize> = (0..universe).collect();
            pool.shuffle(&mut rng);
            pool.truncate(size);
            pool
        })
        .collect();
    if ensure_covered {
        for e in 0..universe {
            if !sets.iter().any(|s| s.contains(&e)) {
                let j = rng.gen_range(0..num_sets.max(1));
                sets[j].push(e);
            }
        }
    }
    SetCoverInstance::new(universe, sets, budget)
}

/// Seed-deterministic simple graph whose every vertex misses at least one
/// neighbor (the clique gadget's precondition), as an edge list.
pub fn random_clique_graph(n_vertices: usize, density: f64, seed: u64) -> Vec<(usize, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut adj = vec![vec![false; n_vertices]; n_vertices];
    let mut edges = Vec::new();
    for a in 0..n_vertices {
        for b in a + 1..n_vertices {
            if rng.gen_bool(density) {
                adj[a][b] = true;
                adj[b][a] = true;
                edges.push((a, b));
            }
        }
    }
    // Repair vertices adjacent to everyone.
    for a in 0..n_vertices {
        if (0..n_vertices).all(|b| b == a || adj[a][b]) {
            let b = (0..n_vertices).find(|&b| b != a).expect("two vertices");
            adj[a][b] = false;
            adj[b][a] = false;
            edges.retain(|&(x, y)| !(x == a.min(b) && y == a.max(b)) && !(x == b.min(a) && y == b.max(a)));
        }
    }
    edges
}

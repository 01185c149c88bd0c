//! Weighted digraph algorithms backing the friend-oriented solvers:
//! all-pairs minimum-weight paths with reconstruction, minimum non-trivial
//! cycles, strongly connected components, and the two-terminal strongly
//! connected Steiner subgraph.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::game::{agent, AgentId, FriendGame};

/// Weight sentinel for "unreachable"; large enough that saturating sums of a
/// few entries never wrap.
pub const INF: u32 = u32::MAX / 8;

/// Adds weights, treating [`INF`] as absorbing.
#[inline]
pub fn wadd(a: u32, b: u32) -> u32 {
    if a >= INF || b >= INF {
        INF
    } else {
        a + b
    }
}

/// Directed graph with non-negative integer arc weights, at most one arc per
/// ordered pair and no self-loops.
#[derive(Debug, Clone)]
pub struct WeightedDigraph {
    n: usize,
    out: Vec<Vec<(usize, u32)>>,
    rev: Vec<Vec<(usize, u32)>>,
}

impl WeightedDigraph {
    /// An arcless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        WeightedDigraph {
            n,
            out: vec![Vec::new(); n],
            rev: vec![Vec::new(); n],
        }
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Adds the arc `from -> to`.
    pub fn add_arc(&mut self, from: usize, to: usize, weight: u32) {
        assert_ne!(from, to, "no self-loops");
        debug_assert!(
            !self.out[from].iter().any(|&(t, _)| t == to),
            "duplicate arc"
        );
        self.out[from].push((to, weight));
        self.rev[to].push((from, weight));
    }

    /// Out-arcs of `v` as `(target, weight)`.
    pub fn out_arcs(&self, v: usize) -> &[(usize, u32)] {
        &self.out[v]
    }

    /// In-arcs of `v` as `(source, weight)`.
    pub fn in_arcs(&self, v: usize) -> &[(usize, u32)] {
        &self.rev[v]
    }

    /// All arcs in vertex order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        (0..self.n).flat_map(move |u| self.out[u].iter().map(move |&(v, w)| (u, v, w)))
    }
}

/// All-pairs minimum path weights plus per-vertex minimum non-trivial cycle
/// weights, with enough data to reconstruct one optimal path or cycle.
#[derive(Debug, Clone)]
pub struct PathTables {
    n: usize,
    /// `wp[i*n+j]`: weight of a min-weight path `i -> j`, 0 on the diagonal.
    wp: Vec<u32>,
    /// `via[i*n+j]`: an intermediate vertex splitting the stored optimal
    /// path, or `usize::MAX` when the path is a single arc (or trivial).
    via: Vec<usize>,
    /// `wc[v]`: weight of a min-weight cycle through `v` of length >= 1.
    wc: Vec<u32>,
    /// First successor on the stored optimal cycle through `v`.
    cycle_succ: Vec<usize>,
}

impl PathTables {
    /// Minimum path weight `from -> to` ([`INF`] when unreachable).
    #[inline]
    pub fn path_weight(&self, from: usize, to: usize) -> u32 {
        self.wp[from * self.n + to]
    }

    /// Minimum non-trivial cycle weight through `v` ([`INF`] when `v` lies on
    /// no cycle).
    #[inline]
    pub fn cycle_weight(&self, v: usize) -> u32 {
        self.wc[v]
    }

    /// Vertices of one stored minimum-weight path `from -> to`, endpoints
    /// included; `None` when unreachable.
    pub fn path_vertices(&self, from: usize, to: usize) -> Option<Vec<usize>> {
        if self.path_weight(from, to) >= INF {
            return None;
        }
        let mut verts = vec![from];
        self.push_path(from, to, &mut verts);
        Some(verts)
    }

    fn push_path(&self, from: usize, to: usize, acc: &mut Vec<usize>) {
        if from == to {
            return;
        }
        let k = self.via[from * self.n + to];
        if k == usize::MAX {
            acc.push(to);
        } else {
            self.push_path(from, k, acc);
            self.push_path(k, to, acc);
        }
    }

    /// Vertices of one stored minimum-weight non-trivial cycle through `v`;
    /// `None` when no cycle exists. The cycle is listed from `v` without
    /// repeating the closing vertex.
    pub fn cycle_vertices(&self, v: usize) -> Option<Vec<usize>> {
        if self.cycle_weight(v) >= INF {
            return None;
        }
        // Cycle = arc (v, succ) followed by a min path succ -> v.
        let succ = self.cycle_succ[v];
        let mut verts = vec![v];
        self.push_path(succ, v, &mut verts);
        verts.pop();
        verts.insert(1, succ);
        Some(verts)
    }
}

/// Floyd-Warshall over `g`, plus the minimum non-trivial cycle entry per
/// vertex: `wc(v) = min over arcs (v,u) of w(v,u) + wp(u,v)`.
///
/// Updates use strict improvement only, so reconstruction is deterministic
/// (the lowest intermediate vertex reaching the optimum is kept).
pub fn all_pairs_min_paths(g: &WeightedDigraph) -> PathTables {
    let n = g.n();
    let mut wp = vec![INF; n * n];
    let mut via = vec![usize::MAX; n * n];
    for v in 0..n {
        wp[v * n + v] = 0;
    }
    for (u, v, w) in g.arcs() {
        if w < wp[u * n + v] {
            wp[u * n + v] = w;
        }
    }
    for k in 0..n {
        for i in 0..n {
            let wik = wp[i * n + k];
            if wik >= INF {
                continue;
            }
            for j in 0..n {
                let cand = wadd(wik, wp[k * n + j]);
                if cand < wp[i * n + j] {
                    wp[i * n + j] = cand;
                    via[i * n + j] = k;
                }
            }
        }
    }
    let mut wc = vec![INF; n];
    let mut cycle_succ = vec![usize::MAX; n];
    for v in 0..n {
        for &(u, w) in g.out_arcs(v) {
            let cand = wadd(w, wp[u * n + v]);
            if cand < wc[v] {
                wc[v] = cand;
                cycle_succ[v] = u;
            }
        }
    }
    PathTables {
        n,
        wp,
        via,
        wc,
        cycle_succ,
    }
}

/// Arc-weighted friendship graph for the control solvers: friend arcs only,
/// weight 1 iff the source agent is additional.
pub fn control_weights(fg: &FriendGame) -> WeightedDigraph {
    let n = fg.n_agents();
    let mut g = WeightedDigraph::new(n);
    for i in 0..n {
        let w = u32::from(fg.is_additional(agent(i)));
        for &j in fg.friends_of(agent(i)) {
            g.add_arc(i, j.idx(), w);
        }
    }
    g
}

/// Strongly connected components via iterative Tarjan.
///
/// Components are returned in topological order of the condensation (sources
/// first); `component_of[v]` gives each vertex's component index.
#[derive(Debug, Clone)]
pub struct SccDecomposition {
    pub components: Vec<Vec<usize>>,
    pub component_of: Vec<usize>,
}

/// Computes the SCCs of an adjacency structure (restricted to `active`
/// vertices when a mask is given).
pub fn sccs(adj: &[Vec<usize>], active: Option<&[bool]>) -> SccDecomposition {
    let n = adj.len();
    let is_active = |v: usize| active.is_none_or(|m| m[v]);
    const UNSEEN: usize = usize::MAX;
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut next_index = 0usize;
    let mut components: Vec<Vec<usize>> = Vec::new();
    let mut component_of = vec![usize::MAX; n];

    // Iterative DFS: (vertex, next child position).
    let mut call: Vec<(usize, usize)> = Vec::new();
    for root in 0..n {
        if !is_active(root) || index[root] != UNSEEN {
            continue;
        }
        call.push((root, 0));
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut ci)) = call.last_mut() {
            if *ci < adj[v].len() {
                let w = adj[v][*ci];
                *ci += 1;
                if !is_active(w) {
                    continue;
                }
                if index[w] == UNSEEN {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().expect("tarjan stack");
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comp.sort_unstable();
                    components.push(comp);
                }
            }
        }
    }
    // Tarjan emits components in reverse topological order.
    components.reverse();
    for (ci, comp) in components.iter().enumerate() {
        for &v in comp {
            component_of[v] = ci;
        }
    }
    SccDecomposition {
        components,
        component_of,
    }
}

/// SCCs of a friend game's friendship graph, optionally restricted to a
/// subset of agents.
pub fn friend_sccs(fg: &FriendGame, active: Option<&[bool]>) -> SccDecomposition {
    let adj: Vec<Vec<usize>> = (0..fg.n_agents())
        .map(|i| fg.friends_of(agent(i)).iter().map(|a| a.idx()).collect())
        .collect();
    sccs(&adj, active)
}

/// Vertex map produced by [`split_additional`].
#[derive(Debug, Clone)]
pub struct SplitMap {
    /// Vertex receiving agent `i`'s in-arcs (`w1` for additional agents).
    pub in_vertex: Vec<usize>,
    /// Vertex emitting agent `i`'s out-arcs (`w2` for additional agents).
    pub out_vertex: Vec<usize>,
    /// Agent owning each graph vertex.
    pub agent_of: Vec<AgentId>,
}

/// Moves the unit cost of using an additional agent onto an arc: each
/// additional agent becomes an in-vertex and an out-vertex joined by a
/// weight-1 arc, while original agents keep a single vertex. All rewired
/// friendship arcs have weight 0.
pub fn split_additional(fg: &FriendGame) -> (WeightedDigraph, SplitMap) {
    let n = fg.n_agents();
    let mut in_vertex = vec![0usize; n];
    let mut out_vertex = vec![0usize; n];
    let mut agent_of = Vec::new();
    for i in 0..n {
        if fg.is_additional(agent(i)) {
            in_vertex[i] = agent_of.len();
            agent_of.push(agent(i));
            out_vertex[i] = agent_of.len();
            agent_of.push(agent(i));
        } else {
            in_vertex[i] = agent_of.len();
            out_vertex[i] = in_vertex[i];
            agent_of.push(agent(i));
        }
    }
    let mut g = WeightedDigraph::new(agent_of.len());
    for i in 0..n {
        if fg.is_additional(agent(i)) {
            g.add_arc(in_vertex[i], out_vertex[i], 1);
        }
        for &j in fg.friends_of(agent(i)) {
            g.add_arc(out_vertex[i], in_vertex[j.idx()], 0);
        }
    }
    (
        g,
        SplitMap {
            in_vertex,
            out_vertex,
            agent_of,
        },
    )
}

/// Single-source minimum path weights (Dijkstra). `reversed` searches along
/// in-arcs, yielding distances *to* `source`.
pub fn dijkstra(g: &WeightedDigraph, source: usize, reversed: bool) -> Vec<u32> {
    dijkstra_with_hops(g, source, reversed).0
}

/// Dijkstra that also records, for each settled vertex, the neighbor through
/// which its distance was set. Hop pointers always reach an earlier-settled
/// vertex, so following them terminates even across zero-weight arcs.
fn dijkstra_with_hops(
    g: &WeightedDigraph,
    source: usize,
    reversed: bool,
) -> (Vec<u32>, Vec<usize>) {
    let mut dist = vec![INF; g.n()];
    let mut hop = vec![usize::MAX; g.n()];
    dist[source] = 0;
    let mut heap = BinaryHeap::new();
    heap.push(Reverse((0u32, source)));
    while let Some(Reverse((d, v))) = heap.pop() {
        if d > dist[v] {
            continue;
        }
        let arcs = if reversed { g.in_arcs(v) } else { g.out_arcs(v) };
        for &(u, w) in arcs {
            let nd = wadd(d, w);
            if nd < dist[u] {
                dist[u] = nd;
                hop[u] = v;
                heap.push(Reverse((nd, u)));
            }
        }
    }
    (dist, hop)
}

/// Minimum weight of a non-trivial cycle through `v`, with one optimal cycle
/// (as vertices starting at `v`); `None` when `v` lies on no cycle.
pub fn min_cycle_through(g: &WeightedDigraph, v: usize) -> Option<(u32, Vec<usize>)> {
    let (back, hop) = dijkstra_with_hops(g, v, true);
    let mut best: Option<(u32, usize)> = None;
    for &(u, w) in g.out_arcs(v) {
        let total = wadd(w, back[u]);
        if total < INF && best.is_none_or(|(b, _)| total < b) {
            best = Some((total, u));
        }
    }
    let (weight, succ) = best?;
    // The reversed-search hop chain from succ walks the u -> v path forward.
    let mut verts = vec![v];
    let mut cur = succ;
    while cur != v {
        verts.push(cur);
        cur = hop[cur];
    }
    Some((weight, verts))
}

/// Result of the two-terminal strongly connected Steiner search.
#[derive(Debug, Clone)]
pub struct SteinerSubgraph {
    /// Total arc weight; `None` when the terminals cannot be mutually
    /// connected.
    pub weight: Option<u32>,
    /// Arcs of one optimal subgraph.
    pub arcs: Vec<(usize, usize)>,
    /// Vertices touched by the subgraph (always contains the terminals when
    /// feasible).
    pub vertices: Vec<usize>,
}

/// Minimum total arc weight of a subgraph in which `x` and `y` are mutually
/// reachable, with one optimal subgraph.
///
/// Solved as a shortest path in a token game over vertex pairs: a forward
/// token walks `x -> y`, a backward token retraces the return path from `x`
/// back to `y`, and a joint move lets both tokens cross a shared segment
/// priced once. Single moves advance one token along one arc; the joint move
/// from `(f, b)` swaps the tokens across a minimum-weight path `f -> b`.
pub fn two_scss(g: &WeightedDigraph, x: usize, y: usize) -> SteinerSubgraph {
    if x == y {
        return SteinerSubgraph {
            weight: Some(0),
            arcs: Vec::new(),
            vertices: vec![x],
        };
    }
    let n = g.n();
    let tables = all_pairs_min_paths(g);
    let state = |f: usize, b: usize| f * n + b;

    #[derive(Debug, Clone, Copy, PartialEq, Eq)]
    enum Move {
        Forward(usize),  // previous forward position
        Backward(usize), // previous backward position
        Joint,           // tokens swapped across a shared path
    }

    let mut dist = vec![INF; n * n];
    let mut from: Vec<Option<(usize, Move)>> = vec![None; n * n];
    let start = state(x, x);
    let goal = state(y, y);
    dist[start] = 0;
    let mut heap = BinaryHeap::new();
    heap.push(Reverse((0u32, start)));
    while let Some(Reverse((d, s))) = heap.pop() {
        if d > dist[s] {
            continue;
        }
        if s == goal {
            break;
        }
        let (f, b) = (s / n, s % n);
        for &(t, w) in g.out_arcs(f) {
            let ns = state(t, b);
            let nd = wadd(d, w);
            if nd < dist[ns] {
                dist[ns] = nd;
                from[ns] = Some((s, Move::Forward(f)));
                heap.push(Reverse((nd, ns)));
            }
        }
        for &(p, w) in g.in_arcs(b) {
            let ns = state(f, p);
            let nd = wadd(d, w);
            if nd < dist[ns] {
                dist[ns] = nd;
                from[ns] = Some((s, Move::Backward(b)));
                heap.push(Reverse((nd, ns)));
            }
        }
        let joint = tables.path_weight(f, b);
        if joint < INF && f != b {
            let ns = state(b, f);
            let nd = wadd(d, joint);
            if nd < dist[ns] {
                dist[ns] = nd;
                from[ns] = Some((s, Move::Joint));
                heap.push(Reverse((nd, ns)));
            }
        }
    }
    if dist[goal] >= INF {
        return SteinerSubgraph {
            weight: None,
            arcs: Vec::new(),
            vertices: Vec::new(),
        };
    }
    // Replay the winning move sequence, collecting arcs.
    let mut arcs = std::collections::BTreeSet::new();
    let mut cur = goal;
    while cur != start {
        let (prev, mv) = from[cur].expect("reachable state has a parent");
        let (pf, pb) = (prev / n, prev % n);
        match mv {
            Move::Forward(_) => {
                arcs.insert((pf, cur / n));
            }
            Move::Backward(_) => {
                arcs.insert((cur % n, pb));
            }
            Move::Joint => {
                let path = tables
                    .path_vertices(pf, pb)
                    .expect("joint move requires a path");
                for pair in path.windows(2) {
                    arcs.insert((pair[0], pair[1]));
                }
            }
        }
        cur = prev;
    }
    let mut vertices: Vec<usize> = arcs
        .iter()
        .flat_map(|&(u, v)| [u, v])
        .chain([x, y])
        .collect();
    vertices.sort_unstable();
    vertices.dedup();
    SteinerSubgraph {
        weight: Some(dist[goal]),
        arcs: arcs.into_iter().collect(),
        vertices,
    }
}

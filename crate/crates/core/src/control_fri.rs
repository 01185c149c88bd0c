//! Control solvers for friend-oriented games, behind one dispatcher.
//!
//! Routing follows the complexity landscape: agent addition for IR/IS runs
//! on minimum-weight paths and cycles of the control-weighted friendship
//! graph, core stability reduces to Steiner connectivity on the split graph,
//! Nash stability is polynomial only under symmetry, grand-coalition goals
//! use subset enumeration (addition) or greedy removal (deletion), deletion
//! for IR/IS/CS is immune, and acyclic friendship graphs admit no
//! non-singleton stable coalition at all.

use std::collections::BTreeSet;

use crate::control::{
    validate_query, verify_outcome, Action, ControlQuery, Route, SolveOutcome,
};
use crate::error::Result;
use crate::exact;
use crate::game::{agent, classify_friends, AgentId, FriendGame, Game};
use crate::graphs::{
    all_pairs_min_paths, control_weights, friend_sccs, min_cycle_through, split_additional, wadd, INF,
};
use crate::partition::Partition;
use crate::stability::{goal_holds, ir_to_is_friend, Goal, Stability};
use crate::SolverConfig;

/// Algorithm tag per query cell, given the instance's structural flags.
pub fn fri_route(
    stability: Stability,
    goal: Goal,
    action: Action,
    is_dag: bool,
    is_symmetric: bool,
) -> Route {
    if is_dag {
        return match (goal, action) {
            // Deleting down to one agent can still stabilize the grand
            // coalition, so deletion keeps its polynomial algorithm.
            (Goal::GrandCoalition, Action::DeleteAgents) => Route::Poly,
            _ => Route::Never,
        };
    }
    match goal {
        Goal::GrandCoalition => match action {
            Action::AddAgents => Route::Xp,
            Action::DeleteAgents => Route::Poly,
        },
        _ => match stability {
            Stability::Ir | Stability::Is | Stability::Cs => match action {
                Action::AddAgents => Route::Poly,
                Action::DeleteAgents => Route::Immune,
            },
            Stability::Ns => {
                if is_symmetric {
                    match action {
                        Action::AddAgents => Route::Poly,
                        Action::DeleteAgents => Route::Immune,
                    }
                } else {
                    Route::Exact
                }
            }
        },
    }
}

/// Solves a control query on a friend-oriented game.
pub fn solve_fri(fg: &FriendGame, query: &ControlQuery, cfg: &SolverConfig) -> Result<SolveOutcome> {
    let game = Game::Friends(fg.clone());
    validate_query(&game, query)?;
    let class = classify_friends(fg);
    let originals = fg.original_agents();

    // Degenerate sizes first.
    if let Goal::GrandCoalition = query.goal {
        if originals.len() == 1 {
            let partition = Partition::grand(&originals)?;
            return Ok(SolveOutcome::yes(Route::Trivial, Vec::new(), partition));
        }
    }
    if let Goal::NotAlone(_) = query.goal {
        if fg.n_agents() == 1 {
            return Ok(SolveOutcome::no(Route::Trivial));
        }
    }

    let route = fri_route(
        query.stability,
        query.goal,
        query.action,
        class.is_dag,
        class.is_symmetric,
    );
    let outcome = match route {
        Route::Never => SolveOutcome::no(Route::Never),
        Route::Poly | Route::Xp | Route::Immune => dispatch_fast(fg, query, route, cfg)?,
        Route::Exact => exact::oracle_control(&game, query, &cfg.exact)?,
        Route::Trivial => unreachable!("trivial cases handled above"),
    };
    if outcome.decision {
        verify_outcome(&game, query, &outcome, cfg.cs_verify_cap)?;
    }
    Ok(outcome)
}

fn dispatch_fast(
    fg: &FriendGame,
    query: &ControlQuery,
    route: Route,
    cfg: &SolverConfig,
) -> Result<SolveOutcome> {
    let k = query.budget;
    match (query.goal, query.action) {
        (Goal::GrandCoalition, Action::AddAgents) => fri_gr_addag(fg, query.stability, k),
        (Goal::GrandCoalition, Action::DeleteAgents) => fri_gr_delag(fg, query.stability, k),
        (goal, Action::AddAgents) => {
            let found = match query.stability {
                Stability::Ir | Stability::Is => match goal {
                    Goal::NotAlone(x) => fri_addag_na_ir(fg, x, k, query.stability)?,
                    Goal::Together(x, y) => fri_addag_pa_ir(fg, x, y, k, query.stability)?,
                    Goal::GrandCoalition => unreachable!(),
                },
                Stability::Cs => match goal {
                    Goal::NotAlone(x) => fri_addag_cs_na(fg, x, k)?,
                    Goal::Together(x, y) => fri_addag_cs_pa(fg, x, y, k)?,
                    Goal::GrandCoalition => unreachable!(),
                },
                Stability::Ns => fri_addag_ns_sym(fg, goal, k)?,
            };
            Ok(match found {
                Some((chosen, partition)) => SolveOutcome::yes(route, chosen, partition),
                None => SolveOutcome::no(route),
            })
        }
        (goal, Action::DeleteAgents) => fri_delag_immune(fg, query.stability, goal, cfg),
    }
}

/// Structures the pair solver searches for: the designated agents' friendship
/// walks must close into a cycle-anchored subgraph, in one of three shapes.
#[derive(Debug, Clone, Copy)]
enum PairShape {
    /// Both walks meet at one anchor that reaches a cycle.
    MergedTail { meet: usize, cycle_at: usize },
    /// The walks end on a shared cycle through two distinct anchors.
    SharedCycle { from_x: usize, from_y: usize },
    /// Each walk reaches its own cycle.
    TwoCycles { from_x: usize, from_y: usize },
}

/// Minimum number of additional agents so that some individually rational
/// partition puts `x` and `y` together; also serves individual stability by
/// converting the witness partition.
fn fri_addag_pa_ir(
    fg: &FriendGame,
    x: AgentId,
    y: AgentId,
    k: usize,
    stability: Stability,
) -> Result<Option<(Vec<AgentId>, Partition)>> {
    let g = control_weights(fg);
    let t = all_pairs_min_paths(&g);
    let n = fg.n_agents();
    let (xi, yi) = (x.idx(), y.idx());
    let mut best: Option<(u32, PairShape)> = None;
    let consider = |cost: u32, shape: PairShape, best: &mut Option<(u32, PairShape)>| {
        if cost < INF && best.is_none_or(|(b, _)| cost < b) {
            *best = Some((cost, shape));
        }
    };
    for xh in 0..n {
        for yh in 0..n {
            let c1 = wadd(
                wadd(t.path_weight(xi, yh), t.path_weight(yi, yh)),
                wadd(t.path_weight(yh, xh), t.cycle_weight(xh)),
            );
            consider(
                c1,
                PairShape::MergedTail {
                    meet: yh,
                    cycle_at: xh,
                },
                &mut best,
            );
            if xh != yh {
                let c2 = wadd(
                    wadd(t.path_weight(xi, xh), t.path_weight(yi, yh)),
                    wadd(t.path_weight(xh, yh), t.path_weight(yh, xh)),
                );
                consider(
                    c2,
                    PairShape::SharedCycle {
                        from_x: xh,
                        from_y: yh,
                    },
                    &mut best,
                );
            }
            let c3 = wadd(
                wadd(t.path_weight(xi, xh), t.path_weight(yi, yh)),
                wadd(t.cycle_weight(xh), t.cycle_weight(yh)),
            );
            consider(
                c3,
                PairShape::TwoCycles {
                    from_x: xh,
                    from_y: yh,
                },
                &mut best,
            );
        }
    }
    let Some((cost, shape)) = best else {
        return Ok(None);
    };
    if cost as usize > k {
        return Ok(None);
    }
    let mut members: BTreeSet<usize> = BTreeSet::new();
    let take_path = |from: usize, to: usize, members: &mut BTreeSet<usize>| {
        members.extend(t.path_vertices(from, to).expect("finite check uses paths"));
    };
    let take_cycle = |at: usize, members: &mut BTreeSet<usize>| {
        members.extend(t.cycle_vertices(at).expect("finite check uses cycles"));
    };
    match shape {
        PairShape::MergedTail { meet, cycle_at } => {
            take_path(xi, meet, &mut members);
            take_path(yi, meet, &mut members);
            take_path(meet, cycle_at, &mut members);
            take_cycle(cycle_at, &mut members);
        }
        PairShape::SharedCycle { from_x, from_y } => {
            take_path(xi, from_x, &mut members);
            take_path(yi, from_y, &mut members);
            take_path(from_x, from_y, &mut members);
            take_path(from_y, from_x, &mut members);
        }
        PairShape::TwoCycles { from_x, from_y } => {
            take_path(xi, from_x, &mut members);
            take_path(yi, from_y, &mut members);
            take_cycle(from_x, &mut members);
            take_cycle(from_y, &mut members);
        }
    }
    finish_structural_witness(fg, members, x, Some(y), stability)
}

/// Minimum number of additional agents so that `x` joins some individually
/// rational non-singleton coalition: an agent `i` with a cheap path from `x`
/// and a cheap cycle through `i`.
fn fri_addag_na_ir(
    fg: &FriendGame,
    x: AgentId,
    k: usize,
    stability: Stability,
) -> Result<Option<(Vec<AgentId>, Partition)>> {
    let g = control_weights(fg);
    let t = all_pairs_min_paths(&g);
    let n = fg.n_agents();
    let mut best: Option<(u32, usize)> = None;
    for i in 0..n {
        let cost = wadd(t.path_weight(x.idx(), i), t.cycle_weight(i));
        if cost < INF && best.is_none_or(|(b, _)| cost < b) {
            best = Some((cost, i));
        }
    }
    let Some((cost, i)) = best else {
        return Ok(None);
    };
    if cost as usize > k {
        return Ok(None);
    }
    let mut members: BTreeSet<usize> = BTreeSet::new();
    members.extend(t.path_vertices(x.idx(), i).expect("finite cost"));
    members.extend(t.cycle_vertices(i).expect("finite cost"));
    finish_structural_witness(fg, members, x, None, stability)
}

/// Builds the witness from a structural coalition: chosen agents are the
/// additional members; the partition is the coalition plus singletons, run
/// through the IR-to-IS conversion when individual stability was asked for.
fn finish_structural_witness(
    fg: &FriendGame,
    members: BTreeSet<usize>,
    x: AgentId,
    y: Option<AgentId>,
    stability: Stability,
) -> Result<Option<(Vec<AgentId>, Partition)>> {
    let coalition: Vec<AgentId> = members.iter().map(|&v| agent(v)).collect();
    let chosen: Vec<AgentId> = coalition
        .iter()
        .copied()
        .filter(|a| fg.is_additional(*a))
        .collect();
    let mut active = fg.original_agents();
    active.extend(chosen.iter().copied());
    active.sort_unstable();
    let partition = Partition::coalition_plus_singletons(coalition.clone(), &active)?;
    let partition = if stability == Stability::Is {
        let partner = match y {
            Some(y) => y,
            None => *coalition
                .iter()
                .find(|&&a| a != x)
                .expect("structural coalition has a second member"),
        };
        ir_to_is_friend(fg, &partition, x, partner)?
    } else {
        partition
    };
    Ok(Some((chosen, partition)))
}

/// Core stability, pair goal: minimum-weight mutually-connecting subgraph of
/// the split graph; the witness partition is the strongly-connected-component
/// decomposition of the friendship graph on the kept agents.
fn fri_addag_cs_pa(
    fg: &FriendGame,
    x: AgentId,
    y: AgentId,
    k: usize,
) -> Result<Option<(Vec<AgentId>, Partition)>> {
    let (sg, map) = split_additional(fg);
    let r = crate::graphs::two_scss(&sg, map.in_vertex[x.idx()], map.in_vertex[y.idx()]);
    let Some(weight) = r.weight else {
        return Ok(None);
    };
    if weight as usize > k {
        return Ok(None);
    }
    let mut chosen: Vec<AgentId> = r
        .arcs
        .iter()
        .filter_map(|&(u, v)| {
            let a = map.agent_of[u];
            (fg.is_additional(a) && map.in_vertex[a.idx()] == u && map.out_vertex[a.idx()] == v)
                .then_some(a)
        })
        .collect();
    chosen.sort_unstable();
    chosen.dedup();
    Ok(Some((chosen.clone(), scc_partition(fg, &chosen)?)))
}

/// Core stability, not-alone goal: minimum-weight non-trivial cycle through
/// `x` in the split graph.
fn fri_addag_cs_na(
    fg: &FriendGame,
    x: AgentId,
    k: usize,
) -> Result<Option<(Vec<AgentId>, Partition)>> {
    let (sg, map) = split_additional(fg);
    let Some((weight, cycle)) = min_cycle_through(&sg, map.in_vertex[x.idx()]) else {
        return Ok(None);
    };
    if weight as usize > k {
        return Ok(None);
    }
    let mut chosen: Vec<AgentId> = cycle
        .iter()
        .map(|&v| map.agent_of[v])
        .filter(|a| fg.is_additional(*a))
        .collect();
    chosen.sort_unstable();
    chosen.dedup();
    Ok(Some((chosen.clone(), scc_partition(fg, &chosen)?)))
}

/// SCC decomposition of the friendship graph over originals plus `chosen`.
fn scc_partition(fg: &FriendGame, chosen: &[AgentId]) -> Result<Partition> {
    let mut active = vec![false; fg.n_agents()];
    for a in fg.original_agents() {
        active[a.idx()] = true;
    }
    for a in chosen {
        active[a.idx()] = true;
    }
    let decomposition = friend_sccs(fg, Some(&active));
    Partition::new(
        decomposition
            .components
            .into_iter()
            .map(|c| c.into_iter().map(agent).collect())
            .collect(),
    )
}

/// Nash stability under symmetric preferences: a goal agent only needs a
/// friend in the post-control agent set; the witness is the big coalition of
/// all agents with at least one friend.
fn fri_addag_ns_sym(
    fg: &FriendGame,
    goal: Goal,
    k: usize,
) -> Result<Option<(Vec<AgentId>, Partition)>> {
    let originals = fg.original_agents();
    let additional = fg.additional_agents();
    let has_original_friend = |a: AgentId| {
        fg.friends_of(a)
            .iter()
            .any(|f| !fg.is_additional(*f))
    };
    let helper_for = |a: AgentId| -> Option<AgentId> {
        additional
            .iter()
            .copied()
            .find(|w| fg.is_friend(a, *w))
    };
    let chosen: Option<Vec<AgentId>> = match goal {
        Goal::NotAlone(x) => {
            if has_original_friend(x) {
                Some(Vec::new())
            } else if k >= 1 {
                helper_for(x).map(|w| vec![w])
            } else {
                None
            }
        }
        Goal::Together(x, y) => {
            let fx = has_original_friend(x);
            let fy = has_original_friend(y);
            match (fx, fy) {
                (true, true) => Some(Vec::new()),
                (true, false) if k >= 1 => helper_for(y).map(|w| vec![w]),
                (false, true) if k >= 1 => helper_for(x).map(|w| vec![w]),
                (false, false) if k >= 1 => {
                    let common = additional
                        .iter()
                        .copied()
                        .find(|w| fg.is_friend(x, *w) && fg.is_friend(y, *w));
                    match common {
                        Some(w) => Some(vec![w]),
                        None if k >= 2 => match (helper_for(x), helper_for(y)) {
                            (Some(wx), Some(wy)) => Some(vec![wx, wy]),
                            _ => None,
                        },
                        None => None,
                    }
                }
                _ => None,
            }
        }
        Goal::GrandCoalition => unreachable!("grand goal routed elsewhere"),
    };
    let Some(chosen) = chosen else {
        return Ok(None);
    };
    let mut active = originals;
    active.extend(chosen.iter().copied());
    active.sort_unstable();
    Ok(Some((
        chosen,
        big_coalition_partition(fg, &active)?,
    )))
}

/// All agents with a friend inside `active` in one coalition, the rest
/// singletons.
fn big_coalition_partition(fg: &FriendGame, active: &[AgentId]) -> Result<Partition> {
    let inside: BTreeSet<AgentId> = active.iter().copied().collect();
    let social: Vec<AgentId> = active
        .iter()
        .copied()
        .filter(|a| fg.friends_of(*a).iter().any(|f| inside.contains(f)))
        .collect();
    Partition::coalition_plus_singletons(social, active)
}

/// Grand-coalition stabilization by adding agents: subsets of the additional
/// pool in ascending size. The grand coalition is stable for IR/IS/NS iff
/// every agent keeps a friend, and for CS iff the friendship graph is
/// strongly connected.
fn fri_gr_addag(fg: &FriendGame, stability: Stability, k: usize) -> Result<SolveOutcome> {
    let originals = fg.original_agents();
    let pool = fg.additional_agents();
    let max = k.min(pool.len());
    let route = Route::Xp;
    for size in 0..=max {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let chosen: Vec<AgentId> = idx.iter().map(|&i| pool[i]).collect();
            let mut cand = originals.clone();
            cand.extend(chosen.iter().copied());
            cand.sort_unstable();
            if grand_coalition_stable(fg, &cand, stability) {
                let partition = Partition::grand(&cand)?;
                return Ok(SolveOutcome::yes(route, chosen, partition));
            }
            if size == 0 || !crate::stability::next_combination(&mut idx, pool.len()) {
                break;
            }
        }
    }
    Ok(SolveOutcome::no(route))
}

fn grand_coalition_stable(fg: &FriendGame, cand: &[AgentId], stability: Stability) -> bool {
    if cand.len() <= 1 {
        return true;
    }
    match stability {
        Stability::Cs => {
            let mut active = vec![false; fg.n_agents()];
            for a in cand {
                active[a.idx()] = true;
            }
            friend_sccs(fg, Some(&active)).components.len() == 1
        }
        _ => {
            let inside: BTreeSet<AgentId> = cand.iter().copied().collect();
            cand.iter()
                .all(|a| fg.friends_of(*a).iter().any(|f| inside.contains(f)))
        }
    }
}

/// Grand-coalition stabilization by deleting agents: iterated removal of
/// friendless agents (IR/IS/NS) or keeping a largest strongly connected
/// component (CS). Falling back to a single surviving agent costs `n - 1`
/// deletions and is always stable.
fn fri_gr_delag(fg: &FriendGame, stability: Stability, k: usize) -> Result<SolveOutcome> {
    let originals = fg.original_agents();
    let n = originals.len();
    let route = Route::Poly;
    let keep: Vec<AgentId> = match stability {
        Stability::Cs => {
            let mut active = vec![false; fg.n_agents()];
            for a in &originals {
                active[a.idx()] = true;
            }
            let decomposition = friend_sccs(fg, Some(&active));
            let largest = decomposition
                .components
                .iter()
                .max_by(|a, b| a.len().cmp(&b.len()).then(b[0].cmp(&a[0])))
                .expect("non-empty game");
            largest.iter().map(|&v| agent(v)).collect()
        }
        _ => {
            let mut kept: BTreeSet<AgentId> = originals.iter().copied().collect();
            loop {
                let doomed: Vec<AgentId> = kept
                    .iter()
                    .copied()
                    .filter(|a| !fg.friends_of(*a).iter().any(|f| kept.contains(f)))
                    .collect();
                if doomed.is_empty() {
                    break;
                }
                for a in doomed {
                    kept.remove(&a);
                }
            }
            kept.into_iter().collect()
        }
    };
    let (keep, deleted_count) = if keep.is_empty() {
        // Everyone is friendless after the cascade: keep one agent.
        (vec![originals[0]], n - 1)
    } else {
        let len = keep.len();
        (keep, n - len)
    };
    if deleted_count > k {
        return Ok(SolveOutcome::no(route));
    }
    let chosen: Vec<AgentId> = originals
        .iter()
        .copied()
        .filter(|a| !keep.contains(a))
        .collect();
    let partition = Partition::grand(&keep)?;
    Ok(SolveOutcome::yes(route, chosen, partition))
}

/// Deletion immunity for IR/IS/CS (and NS under symmetry): the answer equals
/// the zero-budget answer, witnessed without deleting anyone.
fn fri_delag_immune(
    fg: &FriendGame,
    stability: Stability,
    goal: Goal,
    _cfg: &SolverConfig,
) -> Result<SolveOutcome> {
    let found = match stability {
        Stability::Ir | Stability::Is => match goal {
            Goal::NotAlone(x) => fri_addag_na_ir(fg, x, 0, stability)?,
            Goal::Together(x, y) => fri_addag_pa_ir(fg, x, y, 0, stability)?,
            Goal::GrandCoalition => unreachable!(),
        },
        Stability::Cs => {
            let decomposition = friend_sccs(fg, None);
            let ok = match goal {
                Goal::NotAlone(x) => {
                    decomposition.components[decomposition.component_of[x.idx()]].len() >= 2
                }
                Goal::Together(x, y) => {
                    decomposition.component_of[x.idx()] == decomposition.component_of[y.idx()]
                }
                Goal::GrandCoalition => unreachable!(),
            };
            ok.then(|| scc_partition(fg, &[]))
                .transpose()?
                .map(|p| (Vec::new(), p))
        }
        Stability::Ns => {
            // Symmetric instances only (checked by the router).
            let all = fg.original_agents();
            let has_friend =
                |a: AgentId| !fg.friends_of(a).is_empty();
            let ok = match goal {
                Goal::NotAlone(x) => has_friend(x),
                Goal::Together(x, y) => has_friend(x) && has_friend(y),
                Goal::GrandCoalition => unreachable!(),
            };
            ok.then(|| big_coalition_partition(fg, &all))
                .transpose()?
                .map(|p| (Vec::new(), p))
        }
    };
    Ok(match found {
        Some((chosen, partition)) => {
            debug_assert!(goal_holds(&partition, goal));
            SolveOutcome::yes(Route::Immune, chosen, partition)
        }
        None => SolveOutcome::no(Route::Immune),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{oracle_control, ExactConfig};

    fn cfg() -> SolverConfig {
        SolverConfig::default()
    }

    fn fgame(n: usize, arcs: &[(usize, usize)]) -> FriendGame {
        let mut fg = FriendGame::new(n);
        for &(a, b) in arcs {
            fg.add_friend(agent(a), agent(b));
        }
        fg
    }

    fn query(stability: Stability, goal: Goal, action: Action, budget: usize) -> ControlQuery {
        ControlQuery {
            stability,
            goal,
            action,
            budget,
        }
    }

    #[test]
    fn mutual_friends_pair_at_zero_budget() {
        let fg = fgame(3, &[(0, 1), (1, 0)]);
        let out = solve_fri(
            &fg,
            &query(
                Stability::Ir,
                Goal::Together(agent(0), agent(1)),
                Action::AddAgents,
                0,
            ),
            &cfg(),
        )
        .unwrap();
        assert!(out.decision);
        assert_eq!(out.route, Route::Poly);
        assert!(out.witness.unwrap().chosen.is_empty());
    }

    #[test]
    fn same_scc_pair_needs_nothing() {
        // 0 -> 1 -> 2 -> 0 cycle: any two agents pair at k = 0 under IR.
        let fg = fgame(4, &[(0, 1), (1, 2), (2, 0)]);
        for s in [Stability::Ir, Stability::Is, Stability::Cs] {
            let out = solve_fri(
                &fg,
                &query(s, Goal::Together(agent(0), agent(2)), Action::AddAgents, 0),
                &cfg(),
            )
            .unwrap();
            assert!(out.decision, "{s}");
        }
    }

    #[test]
    fn na_zero_weight_cycle() {
        let fg = fgame(2, &[(0, 1), (1, 0)]);
        let out = solve_fri(
            &fg,
            &query(Stability::Ir, Goal::NotAlone(agent(0)), Action::AddAgents, 0),
            &cfg(),
        )
        .unwrap();
        assert!(out.decision);
    }

    #[test]
    fn na_route_through_two_additional_agents() {
        // x=0 reaches the cycle {1<->2} only via additional agents 3 and 4:
        // 0 -> 3 -> 4 -> 1 <-> 2. Here 1,2 are original but the cycle
        // entrance costs two additions.
        let mut fg = fgame(5, &[(0, 3), (3, 4), (4, 1), (1, 2), (2, 1)]);
        fg.mark_additional(agent(3));
        fg.mark_additional(agent(4));
        for k in 0..=3usize {
            let out = solve_fri(
                &fg,
                &query(Stability::Ir, Goal::NotAlone(agent(0)), Action::AddAgents, k),
                &cfg(),
            )
            .unwrap();
            assert_eq!(out.decision, k >= 2, "k={k}");
            let oracle = oracle_control(
                &Game::Friends(fg.clone()),
                &query(Stability::Ir, Goal::NotAlone(agent(0)), Action::AddAgents, k),
                &ExactConfig::default(),
            )
            .unwrap();
            assert_eq!(out.decision, oracle.decision);
            if out.decision {
                assert_eq!(
                    out.witness.unwrap().chosen.len(),
                    oracle.witness.unwrap().chosen.len()
                );
            }
        }
    }

    #[test]
    fn isolated_agent_is_hopeless() {
        let fg = fgame(3, &[(1, 2), (2, 1)]);
        let out = solve_fri(
            &fg,
            &query(Stability::Ir, Goal::NotAlone(agent(0)), Action::AddAgents, 3),
            &cfg(),
        )
        .unwrap();
        assert!(!out.decision);
    }

    #[test]
    fn cs_pair_via_additional_bridge() {
        // x=0 and y=1: 0 -> 2 -> 1 and 1 -> 0; agent 2 additional.
        let mut fg = fgame(3, &[(0, 2), (2, 1), (1, 0)]);
        fg.mark_additional(agent(2));
        let q1 = query(Stability::Cs, Goal::Together(agent(0), agent(1)), Action::AddAgents, 1);
        let out = solve_fri(&fg, &q1, &cfg()).unwrap();
        assert!(out.decision);
        assert_eq!(out.witness.unwrap().chosen, vec![agent(2)]);
        let q0 = query(Stability::Cs, Goal::Together(agent(0), agent(1)), Action::AddAgents, 0);
        let out0 = solve_fri(&fg, &q0, &cfg()).unwrap();
        assert!(!out0.decision);
    }

    #[test]
    fn cs_pair_disconnected_components() {
        let mut fg = fgame(4, &[(0, 1), (1, 0), (2, 3), (3, 2)]);
        fg.mark_additional(agent(3));
        let out = solve_fri(
            &fg,
            &query(Stability::Cs, Goal::Together(agent(0), agent(2)), Action::AddAgents, 4),
            &cfg(),
        )
        .unwrap();
        assert!(!out.decision);
    }

    #[test]
    fn ns_symmetric_cases() {
        // x=0,y=1 friendless; 2 is a common additional friend; 3,4 are
        // separate helpers.
        let mut fg = FriendGame::new(5);
        fg.add_mutual(agent(0), agent(2));
        fg.add_mutual(agent(1), agent(2));
        fg.add_mutual(agent(0), agent(3));
        fg.add_mutual(agent(1), agent(4));
        for a in [2, 3, 4] {
            fg.mark_additional(agent(a));
        }
        let q = |k| query(Stability::Ns, Goal::Together(agent(0), agent(1)), Action::AddAgents, k);
        let out = solve_fri(&fg, &q(1), &cfg()).unwrap();
        assert!(out.decision);
        assert_eq!(out.witness.unwrap().chosen, vec![agent(2)]);

        // Without the common helper, one addition is not enough.
        let mut fg2 = FriendGame::new(5);
        fg2.add_mutual(agent(0), agent(3));
        fg2.add_mutual(agent(1), agent(4));
        fg2.add_mutual(agent(3), agent(4));
        fg2.mark_additional(agent(3));
        fg2.mark_additional(agent(4));
        let out1 = solve_fri(&fg2, &q(1), &cfg()).unwrap();
        assert!(!out1.decision);
        let out2 = solve_fri(&fg2, &q(2), &cfg()).unwrap();
        assert!(out2.decision);
        assert_eq!(out2.witness.unwrap().chosen, vec![agent(3), agent(4)]);
    }

    #[test]
    fn gr_addag_friendless_agent_blocks_everything() {
        let mut fg = fgame(3, &[(1, 2), (2, 1)]);
        fg.mark_additional(agent(2));
        // Agent 0 has no friends anywhere: the grand coalition can never be
        // individually rational.
        let out = solve_fri(
            &fg,
            &query(Stability::Ir, Goal::GrandCoalition, Action::AddAgents, 2),
            &cfg(),
        )
        .unwrap();
        assert!(!out.decision);
    }

    #[test]
    fn gr_addag_zero_budget_already_stable() {
        let fg = fgame(3, &[(0, 1), (1, 0), (2, 0), (0, 2)]);
        let out = solve_fri(
            &fg,
            &query(Stability::Ir, Goal::GrandCoalition, Action::AddAgents, 0),
            &cfg(),
        )
        .unwrap();
        assert!(out.decision);
        assert_eq!(out.route, Route::Xp);
    }

    #[test]
    fn gr_delag_strongly_connected_needs_nothing() {
        let fg = fgame(3, &[(0, 1), (1, 2), (2, 0)]);
        for s in Stability::ALL {
            let out = solve_fri(
                &fg,
                &query(s, Goal::GrandCoalition, Action::DeleteAgents, 0),
                &cfg(),
            )
            .unwrap();
            assert!(out.decision, "{s}");
        }
    }

    #[test]
    fn gr_delag_path_collapses_to_one_agent() {
        // Path 0 -> 1 -> 2 (a DAG): the friendless cascade removes everyone,
        // so two deletions (leaving one agent) are necessary and sufficient.
        let fg = fgame(3, &[(0, 1), (1, 2)]);
        for k in 0..=3usize {
            let out = solve_fri(
                &fg,
                &query(Stability::Ir, Goal::GrandCoalition, Action::DeleteAgents, k),
                &cfg(),
            )
            .unwrap();
            assert_eq!(out.decision, k >= 2, "k={k}");
        }
    }

    #[test]
    fn gr_delag_two_triangles() {
        let fg = fgame(
            6,
            &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)],
        );
        for k in 0..=4usize {
            let out = solve_fri(
                &fg,
                &query(Stability::Cs, Goal::GrandCoalition, Action::DeleteAgents, k),
                &cfg(),
            )
            .unwrap();
            assert_eq!(out.decision, k >= 3, "k={k}");
        }
        // IR only needs everyone to keep a friend; both triangles qualify.
        let out = solve_fri(
            &fg,
            &query(Stability::Ir, Goal::GrandCoalition, Action::DeleteAgents, 0),
            &cfg(),
        )
        .unwrap();
        assert!(out.decision);
    }

    #[test]
    fn delag_immunity_short_circuits() {
        // x=0 and y=1 share an SCC: deletion queries answer yes without
        // deleting anyone, whatever the budget.
        let fg = fgame(3, &[(0, 1), (1, 0), (2, 0)]);
        let out = solve_fri(
            &fg,
            &query(Stability::Cs, Goal::Together(agent(0), agent(1)), Action::DeleteAgents, 5),
            &cfg(),
        )
        .unwrap();
        assert!(out.decision);
        assert_eq!(out.route, Route::Immune);
        assert!(out.witness.unwrap().chosen.is_empty());

        // A friendless-and-unloved x can never be helped by deletion.
        let fg = fgame(3, &[(1, 2), (2, 1)]);
        let out = solve_fri(
            &fg,
            &query(Stability::Ir, Goal::NotAlone(agent(0)), Action::DeleteAgents, 3),
            &cfg(),
        )
        .unwrap();
        assert!(!out.decision);
        assert_eq!(out.route, Route::Immune);
    }

    #[test]
    fn ns_symmetric_deletion_immune() {
        let fg = fgame(4, &[(0, 1), (1, 0), (2, 3), (3, 2)]);
        let out = solve_fri(
            &fg,
            &query(Stability::Ns, Goal::Together(agent(0), agent(1)), Action::DeleteAgents, 4),
            &cfg(),
        )
        .unwrap();
        assert!(out.decision);
        assert_eq!(out.route, Route::Immune);
    }

    #[test]
    fn dag_instances_answer_never() {
        let fg = fgame(3, &[(0, 1), (1, 2)]);
        let out = solve_fri(
            &fg,
            &query(Stability::Ns, Goal::Together(agent(0), agent(1)), Action::AddAgents, 3),
            &cfg(),
        )
        .unwrap();
        assert!(!out.decision);
        assert_eq!(out.route, Route::Never);
        // Grand-coalition deletion still has its polynomial route.
        let out = solve_fri(
            &fg,
            &query(Stability::Ir, Goal::GrandCoalition, Action::DeleteAgents, 2),
            &cfg(),
        )
        .unwrap();
        assert!(out.decision);
        assert_eq!(out.route, Route::Poly);
    }

    #[test]
    fn single_agent_grand_is_trivial() {
        let fg = FriendGame::new(1);
        let out = solve_fri(
            &fg,
            &query(Stability::Cs, Goal::GrandCoalition, Action::AddAgents, 0),
            &cfg(),
        )
        .unwrap();
        assert!(out.decision);
        assert_eq!(out.route, Route::Trivial);
    }

    #[test]
    fn is_witnesses_are_individually_stable() {
        use crate::stability::is_is;
        let mut fg = fgame(5, &[(0, 3), (3, 4), (4, 3), (1, 3)]);
        fg.mark_additional(agent(4));
        let out = solve_fri(
            &fg,
            &query(Stability::Is, Goal::Together(agent(0), agent(1)), Action::AddAgents, 1),
            &cfg(),
        )
        .unwrap();
        assert!(out.decision);
        let w = out.witness.unwrap();
        assert!(is_is(&Game::Friends(fg), &w.partition).unwrap().is_ok());
    }
}

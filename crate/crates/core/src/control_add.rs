//! Control solvers for additively separable games.
//!
//! Most cells of the complexity table are hard even at budget zero and route
//! to the exhaustive searcher; the exceptions are the not-alone goal on DAG
//! or symmetric instances (a single partner suffices), deletion immunity
//! under individual rationality, and the grand-coalition goal, which is a
//! budget-exponential subset enumeration with a polynomial per-candidate
//! check (strict blocking search only for core stability on cyclic graphs).

use crate::control::{
    validate_query, verify_outcome, Action, ControlQuery, Route, SolveOutcome,
};
use crate::error::{Error, Result};
use crate::exact::{self, ExactConfig};
use crate::game::{classify_additive, AdditiveGame, AgentId, Game, GameClass};
use crate::partition::Partition;
use crate::stability::{self, next_combination, Goal, Stability};
use crate::SolverConfig;

/// Algorithm tag per query cell, given the instance's structural flags.
pub fn add_route(
    stability: Stability,
    goal: Goal,
    action: Action,
    is_dag: bool,
    is_symmetric: bool,
) -> Route {
    match goal {
        Goal::GrandCoalition => match stability {
            Stability::Cs if !is_dag => Route::Exact,
            _ => Route::Xp,
        },
        Goal::NotAlone(_) => match (stability, action) {
            (Stability::Ir, Action::AddAgents) if is_dag || is_symmetric => Route::Poly,
            (Stability::Cs, Action::AddAgents) if is_dag => Route::Poly,
            (Stability::Ir, Action::DeleteAgents) => Route::Immune,
            (Stability::Cs, Action::DeleteAgents) if is_dag => Route::Immune,
            _ => Route::Exact,
        },
        Goal::Together(..) => match (stability, action) {
            (Stability::Ir, Action::DeleteAgents) => Route::Immune,
            (Stability::Cs, Action::DeleteAgents) if is_dag => Route::Immune,
            _ => Route::Exact,
        },
    }
}

/// Solves a control query on an additive game.
pub fn solve_add(g: &AdditiveGame, query: &ControlQuery, cfg: &SolverConfig) -> Result<SolveOutcome> {
    let game = Game::Additive(g.clone());
    validate_query(&game, query)?;
    let class = classify_additive(g);
    let originals = g.original_agents();

    if let Goal::GrandCoalition = query.goal {
        if originals.len() == 1 {
            let partition = Partition::grand(&originals)?;
            return Ok(SolveOutcome::yes(Route::Trivial, Vec::new(), partition));
        }
    }
    if let Goal::NotAlone(_) = query.goal {
        if g.n_agents() == 1 {
            return Ok(SolveOutcome::no(Route::Trivial));
        }
    }

    let route = add_route(
        query.stability,
        query.goal,
        query.action,
        class.is_dag,
        class.is_symmetric,
    );
    let outcome = match route {
        Route::Poly => {
            let Goal::NotAlone(x) = query.goal else {
                unreachable!("poly route is the partner search")
            };
            match partner_search(g, x, query.budget) {
                Some((chosen, partition)) => SolveOutcome::yes(route, chosen, partition),
                None => SolveOutcome::no(route),
            }
        }
        Route::Xp | Route::Exact if matches!(query.goal, Goal::GrandCoalition) => {
            add_gr(g, query, route, class, cfg)?
        }
        Route::Immune => add_delag_immune(g, query, class, &cfg.exact)?,
        Route::Exact => exact::oracle_control(&game, query, &cfg.exact)?,
        _ => unreachable!("route {route} not produced for additive games"),
    };
    if outcome.decision {
        verify_outcome(&game, query, &outcome, cfg.cs_verify_cap)?;
    }
    Ok(outcome)
}

/// On DAG or symmetric instances the designated agent escapes the singleton
/// iff some partner is mutually non-negative; original partners come first
/// so the witness stays minimal.
fn partner_search(
    g: &AdditiveGame,
    x: AgentId,
    budget: usize,
) -> Option<(Vec<AgentId>, Partition)> {
    let pick = |pool: &[AgentId]| -> Option<AgentId> {
        pool.iter()
            .copied()
            .find(|&a| a != x && g.utility(x, a) >= 0 && g.utility(a, x) >= 0)
    };
    let (chosen, partner) = if let Some(a) = pick(&g.original_agents()) {
        (Vec::new(), a)
    } else if budget >= 1 {
        let a = pick(&g.additional_agents())?;
        (vec![a], a)
    } else {
        return None;
    };
    let mut active = g.original_agents();
    active.extend(chosen.iter().copied());
    active.sort_unstable();
    let partition = Partition::coalition_plus_singletons(vec![x, partner], &active)
        .expect("partner drawn from active agents");
    Some((chosen, partition))
}

/// Grand-coalition control: enumerate subsets of the pool by ascending size;
/// a candidate passes when every agent's utility sum over the candidate set
/// is non-negative (IR, and with it IS/NS; also CS on DAGs) or when no
/// coalition blocks the grand coalition (general CS, cap-gated).
fn add_gr(
    g: &AdditiveGame,
    query: &ControlQuery,
    route: Route,
    class: GameClass,
    cfg: &SolverConfig,
) -> Result<SolveOutcome> {
    let originals = g.original_agents();
    let pool = match query.action {
        Action::AddAgents => g.additional_agents(),
        Action::DeleteAgents => originals.clone(),
    };
    let needs_blocking_search = query.stability == Stability::Cs && !class.is_dag;
    if needs_blocking_search && originals.len() > cfg.cs_verify_cap {
        return Err(Error::CapExceeded {
            what: "grand-coalition core-stability search",
            n: originals.len(),
            cap: cfg.cs_verify_cap,
        });
    }

    let n = g.n_agents();
    // Sparse incremental state over the current candidate set: membership,
    // per-agent utility sums, member count, and the number of members with
    // negative sums. Toggling agent b touches only the agents valuing b.
    let in_arcs: Vec<Vec<(usize, i64)>> = {
        let mut lists = vec![Vec::new(); n];
        for (from, to, w) in g.arcs() {
            lists[to.idx()].push((from.idx(), w));
        }
        lists
    };
    struct GrandState {
        included: Vec<bool>,
        sums: Vec<i64>,
        count: usize,
        negatives: usize,
    }
    impl GrandState {
        fn toggle(&mut self, b: AgentId, in_arcs: &[Vec<(usize, i64)>]) {
            let b = b.idx();
            let joining = !self.included[b];
            if !joining {
                self.included[b] = false;
                self.count -= 1;
                if self.sums[b] < 0 {
                    self.negatives -= 1;
                }
            }
            for &(i, w) in &in_arcs[b] {
                let old = self.sums[i];
                self.sums[i] = if joining { old + w } else { old - w };
                if self.included[i] {
                    self.negatives =
                        self.negatives + usize::from(self.sums[i] < 0) - usize::from(old < 0);
                }
            }
            if joining {
                self.included[b] = true;
                self.count += 1;
                if self.sums[b] < 0 {
                    self.negatives += 1;
                }
            }
        }
    }
    let mut st = GrandState {
        included: vec![false; n],
        sums: vec![0i64; n],
        count: 0,
        negatives: 0,
    };
    for a in &originals {
        st.toggle(*a, &in_arcs);
    }
    let game = Game::Additive(g.clone());
    let passes = |st: &GrandState| -> Result<bool> {
        if st.count == 0 {
            return Ok(false);
        }
        if st.count == 1 {
            return Ok(true);
        }
        if st.negatives > 0 {
            // A negative agent deviates alone, which already blocks.
            return Ok(false);
        }
        if !needs_blocking_search {
            return Ok(true);
        }
        let cand: Vec<AgentId> = (0..n)
            .filter(|&i| st.included[i])
            .map(|i| AgentId(i as u32))
            .collect();
        let grand = Partition::grand(&cand)?;
        Ok(stability::is_cs(&game, &grand, cfg.cs_verify_cap)?.is_ok())
    };

    let max = query.budget.min(pool.len());
    for size in 0..=max {
        if query.action == Action::DeleteAgents && size >= originals.len() {
            break; // the remainder must stay non-empty
        }
        let mut idx: Vec<usize> = (0..size).collect();
        let mut current: Vec<usize> = Vec::new();
        loop {
            // Diff the toggles against the current combination; toggles
            // commute, so order is irrelevant.
            let mut j = 0;
            while j < current.len() {
                if idx.contains(&current[j]) {
                    j += 1;
                } else {
                    st.toggle(pool[current[j]], &in_arcs);
                    current.swap_remove(j);
                }
            }
            for &i in &idx {
                if !current.contains(&i) {
                    st.toggle(pool[i], &in_arcs);
                    current.push(i);
                }
            }
            if passes(&st)? {
                let chosen: Vec<AgentId> = idx.iter().map(|&i| pool[i]).collect();
                let cand: Vec<AgentId> = (0..n)
                    .filter(|&i| st.included[i])
                    .map(|i| AgentId(i as u32))
                    .collect();
                let partition = Partition::grand(&cand)?;
                return Ok(SolveOutcome::yes(route, chosen, partition));
            }
            if size == 0 || !next_combination(&mut idx, pool.len()) {
                break;
            }
        }
        // Reset for the next size.
        while let Some(last) = current.pop() {
            st.toggle(pool[last], &in_arcs);
        }
    }
    Ok(SolveOutcome::no(route))
}

/// Deletion immunity under individual rationality (and core stability on
/// DAGs, where the concepts coincide): the answer equals the zero-budget
/// existence answer, witnessed without deleting anyone.
fn add_delag_immune(
    g: &AdditiveGame,
    query: &ControlQuery,
    class: GameClass,
    exact_cfg: &ExactConfig,
) -> Result<SolveOutcome> {
    let found = match query.goal {
        Goal::NotAlone(x) if class.is_dag || class.is_symmetric => partner_search(g, x, 0),
        goal => {
            let game = Game::Additive(g.clone());
            exact::exists_stable_goal(&game, Stability::Ir, goal, &g.original_agents(), exact_cfg)?
                .map(|p| (Vec::new(), p))
        }
    };
    Ok(match found {
        Some((chosen, partition)) => {
            debug_assert!(chosen.is_empty());
            SolveOutcome::yes(Route::Immune, chosen, partition)
        }
        None => SolveOutcome::no(Route::Immune),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::oracle_control;
    use crate::game::agent;
    use crate::testutil::section2_example;

    fn cfg() -> SolverConfig {
        SolverConfig::default()
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
    fn dag_partner_with_positive_arc() {
        let mut g = AdditiveGame::new(3);
        g.set_utility(agent(0), agent(1), 1);
        let out = solve_add(
            &g,
            &query(Stability::Ir, Goal::NotAlone(agent(0)), Action::AddAgents, 0),
            &cfg(),
        )
        .unwrap();
        assert!(out.decision);
        assert_eq!(out.route, Route::Poly);
        assert!(out.witness.unwrap().chosen.is_empty());
    }

    #[test]
    fn symmetric_all_negative_is_hopeless() {
        let mut g = AdditiveGame::new(3);
        g.set_symmetric(agent(0), agent(1), -1);
        g.set_symmetric(agent(0), agent(2), -2);
        for k in 0..=3usize {
            let out = solve_add(
                &g,
                &query(Stability::Ir, Goal::NotAlone(agent(0)), Action::AddAgents, k),
                &cfg(),
            )
            .unwrap();
            assert!(!out.decision, "k={k}");
        }
    }

    #[test]
    fn symmetric_additional_helper_needs_budget() {
        let mut g = AdditiveGame::new(3);
        g.set_symmetric(agent(0), agent(1), -1);
        g.set_symmetric(agent(0), agent(2), 2);
        g.mark_additional(agent(2));
        let no = solve_add(
            &g,
            &query(Stability::Ir, Goal::NotAlone(agent(0)), Action::AddAgents, 0),
            &cfg(),
        )
        .unwrap();
        assert!(!no.decision);
        let yes = solve_add(
            &g,
            &query(Stability::Ir, Goal::NotAlone(agent(0)), Action::AddAgents, 1),
            &cfg(),
        )
        .unwrap();
        assert!(yes.decision);
        assert_eq!(yes.witness.unwrap().chosen, vec![agent(2)]);
    }

    #[test]
    fn gr_zero_budget_when_sums_already_nonnegative() {
        let mut g = AdditiveGame::new(3);
        g.set_utility(agent(0), agent(1), 2);
        g.set_utility(agent(0), agent(2), -1);
        g.set_utility(agent(1), agent(0), 1);
        for s in [Stability::Ir, Stability::Is, Stability::Ns] {
            let out = solve_add(
                &g,
                &query(s, Goal::GrandCoalition, Action::AddAgents, 0),
                &cfg(),
            )
            .unwrap();
            assert!(out.decision, "{s}");
            assert_eq!(out.route, Route::Xp);
        }
    }

    #[test]
    fn gr_addag_matches_oracle_on_randoms() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(47);
        for _ in 0..60 {
            let n = rng.gen_range(2..=6usize);
            let mut g = AdditiveGame::new(n);
            for i in 0..n {
                for j in 0..n {
                    if i != j && rng.gen_bool(0.5) {
                        g.set_utility(agent(i), agent(j), rng.gen_range(-2..=2));
                    }
                }
            }
            for i in n.saturating_sub(2)..n {
                g.mark_additional(agent(i));
            }
            if g.original_agents().is_empty() {
                continue;
            }
            for action in [Action::AddAgents, Action::DeleteAgents] {
                let game = if action == Action::DeleteAgents {
                    // Deletion instances carry no additional pool.
                    let mut g2 = AdditiveGame::new(n);
                    for i in 0..n {
                        for j in 0..n {
                            if i != j {
                                g2.set_utility(agent(i), agent(j), g.utility(agent(i), agent(j)));
                            }
                        }
                    }
                    g2
                } else {
                    g.clone()
                };
                for k in 0..=2usize {
                    let q = query(Stability::Ir, Goal::GrandCoalition, action, k);
                    let fast = solve_add(&game, &q, &cfg()).unwrap();
                    let slow =
                        oracle_control(&Game::Additive(game.clone()), &q, &cfg().exact).unwrap();
                    assert_eq!(fast.decision, slow.decision);
                    if fast.decision {
                        assert_eq!(
                            fast.witness.unwrap().chosen.len(),
                            slow.witness.unwrap().chosen.len()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn worked_example_routes_and_decisions() {
        let (g, u1, _) = section2_example();
        // Adding with budget 1 succeeds with exactly {w2}.
        let yes = solve_add(
            &g,
            &query(Stability::Ir, Goal::NotAlone(u1), Action::AddAgents, 1),
            &cfg(),
        )
        .unwrap();
        assert!(yes.decision);
        assert_eq!(yes.route, Route::Exact);
        assert_eq!(yes.witness.unwrap().chosen, vec![agent(4)]);
        // Deleting never helps; the cell is immune.
        let mut del = AdditiveGame::new(3);
        del.set_utility(agent(0), agent(1), -1);
        del.set_utility(agent(2), agent(0), -2);
        del.set_utility(agent(2), agent(1), 2);
        for k in 0..=5usize {
            let out = solve_add(
                &del,
                &query(Stability::Ir, Goal::NotAlone(u1), Action::DeleteAgents, k),
                &cfg(),
            )
            .unwrap();
            assert!(!out.decision, "k={k}");
            assert_eq!(out.route, Route::Immune);
        }
    }

    #[test]
    fn immune_pa_deletion_yes_without_deleting() {
        let mut g = AdditiveGame::new(3);
        g.set_symmetric(agent(0), agent(1), 3);
        g.set_symmetric(agent(1), agent(2), -5);
        let out = solve_add(
            &g,
            &query(Stability::Ir, Goal::Together(agent(0), agent(1)), Action::DeleteAgents, 2),
            &cfg(),
        )
        .unwrap();
        assert!(out.decision);
        assert_eq!(out.route, Route::Immune);
        assert!(out.witness.unwrap().chosen.is_empty());
    }

    #[test]
    fn route_table_spot_checks() {
        use Action::*;
        use Route::*;
        // DAG instance.
        assert_eq!(add_route(Stability::Ir, Goal::NotAlone(agent(0)), AddAgents, true, false), Poly);
        assert_eq!(add_route(Stability::Cs, Goal::GrandCoalition, AddAgents, true, false), Xp);
        assert_eq!(
            add_route(Stability::Is, Goal::Together(agent(0), agent(1)), DeleteAgents, true, true),
            Exact
        );
        // General instance.
        assert_eq!(add_route(Stability::Cs, Goal::GrandCoalition, AddAgents, false, true), Exact);
        assert_eq!(add_route(Stability::Ir, Goal::NotAlone(agent(0)), AddAgents, false, false), Exact);
        assert_eq!(
            add_route(Stability::Ir, Goal::Together(agent(0), agent(1)), DeleteAgents, false, false),
            Immune
        );
    }

    #[test]
    fn ns_exact_cell_agrees_with_oracle() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(53);
        for _ in 0..25 {
            let n = rng.gen_range(2..=5usize);
            let mut g = AdditiveGame::new(n);
            for i in 0..n {
                for j in 0..n {
                    if i != j && rng.gen_bool(0.5) {
                        g.set_utility(agent(i), agent(j), rng.gen_range(-2..=2));
                    }
                }
            }
            if n >= 3 {
                g.mark_additional(agent(n - 1));
            }
            let q = query(Stability::Ns, Goal::NotAlone(agent(0)), Action::AddAgents, 1);
            let fast = solve_add(&g, &q, &cfg()).unwrap();
            let slow = oracle_control(&Game::Additive(g), &q, &cfg().exact).unwrap();
            assert_eq!(fast.decision, slow.decision);
            assert_eq!(fast.route, Route::Exact);
        }
    }
}

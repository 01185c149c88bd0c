//! Cross-module invariants that do not belong to a single unit: minimality
//! of the greedy deletion solver, budget monotonicity, the acyclic
//! singleton-only law, and the pair-to-not-alone reduction on the worked
//! example.

use hgctl_core::exact::{enumerate_partitions, exists_stable_goal, oracle_control, ExactConfig};
use hgctl_core::gen::{gen_random, RandomSpec};
use hgctl_core::stability::{is_ir, na_via_pa};
use hgctl_core::{
    agent, solve, Action, AdditiveGame, AgentId, ControlQuery, FriendGame, Game, Goal, Model,
    Partition, Route, SolverConfig, Stability,
};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

fn query(stability: Stability, goal: Goal, action: Action, budget: usize) -> ControlQuery {
    ControlQuery {
        stability,
        goal,
        action,
        budget,
    }
}

#[test]
fn grand_deletion_counts_are_minimal() {
    // The greedy removal (or largest-component selection) must match the
    // exhaustive minimum over all deletion subsets.
    let cfg = SolverConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0x6e);
    for round in 0..150 {
        let n = rng.gen_range(2..=7usize);
        let mut fg = FriendGame::new(n);
        for i in 0..n {
            for j in 0..n {
                if i != j && rng.gen_bool(0.3) {
                    fg.add_friend(agent(i), agent(j));
                }
            }
        }
        let game = Game::Friends(fg.clone());
        for stability in [Stability::Ir, Stability::Cs] {
            let solved = solve(
                &game,
                &query(stability, Goal::GrandCoalition, Action::DeleteAgents, n),
                &cfg,
            )
            .unwrap();
            let solver_cost = solved.witness.as_ref().map(|w| w.chosen.len());
            // Exhaustive minimum: smallest deletion set whose remainder has
            // a stable grand coalition.
            let mut brute: Option<usize> = None;
            'sizes: for size in 0..n {
                for mask in 0u32..(1 << n) {
                    if mask.count_ones() as usize != size {
                        continue;
                    }
                    let keep: Vec<AgentId> = (0..n)
                        .filter(|&i| mask & (1 << i) == 0)
                        .map(agent)
                        .collect();
                    let stable = if keep.len() == 1 {
                        true
                    } else {
                        match stability {
                            Stability::Cs => {
                                let p = Partition::grand(&keep).unwrap();
                                hgctl_core::stability::is_cs(&game, &p, 20).unwrap().is_ok()
                            }
                            _ => {
                                let p = Partition::grand(&keep).unwrap();
                                is_ir(&game, &p).unwrap().is_ok()
                            }
                        }
                    };
                    if stable {
                        brute = Some(size);
                        break 'sizes;
                    }
                }
            }
            assert_eq!(solver_cost, brute, "round {round} {stability}");
        }
    }
}

#[test]
fn addition_solvers_are_monotone_in_budget() {
    let cfg = SolverConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0x303);
    for round in 0..120 {
        let spec = RandomSpec {
            model: if round % 2 == 0 {
                Model::Friends
            } else {
                Model::Additive
            },
            n: rng.gen_range(3..=7),
            arc_density: 0.35,
            split_fraction: 0.4,
            seed: rng.gen(),
            ..RandomSpec::default()
        };
        let game = gen_random(&spec).unwrap();
        let originals = game.original_agents();
        if originals.len() < 2 {
            continue;
        }
        for stability in Stability::ALL {
            for goal in [
                Goal::NotAlone(originals[0]),
                Goal::Together(originals[0], originals[1]),
                Goal::GrandCoalition,
            ] {
                let mut prev = false;
                for k in 0..=3usize {
                    let out = solve(&game, &query(stability, goal, Action::AddAgents, k), &cfg)
                        .unwrap();
                    assert!(
                        !prev || out.decision,
                        "yes at k-1 but no at k={k}: {stability} {goal:?} seed {}",
                        spec.seed
                    );
                    prev = out.decision;
                }
            }
        }
    }
}

#[test]
fn oracle_deletion_is_monotone_in_budget() {
    let exact = ExactConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0xde1);
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
        let game = Game::Additive(g);
        let mut prev = false;
        for k in 0..=n {
            let out = oracle_control(
                &game,
                &query(
                    Stability::Is,
                    Goal::NotAlone(agent(0)),
                    Action::DeleteAgents,
                    k,
                ),
                &exact,
            )
            .unwrap();
            assert!(!prev || out.decision, "deletion monotonicity at k={k}");
            prev = out.decision;
        }
    }
}

#[test]
fn acyclic_friend_games_only_admit_singletons() {
    // On acyclic friendship graphs the all-singleton partition is the only
    // individually rational one; exhaustive over partitions for n <= 6.
    let mut rng = ChaCha8Rng::seed_from_u64(0xda6);
    for _ in 0..40 {
        let n = rng.gen_range(2..=6usize);
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut rng);
        let mut fg = FriendGame::new(n);
        for i in 0..n {
            for j in 0..n {
                if order[i] < order[j] && rng.gen_bool(0.4) {
                    fg.add_friend(agent(i), agent(j));
                }
            }
        }
        assert!(hgctl_core::classify_friends(&fg).is_dag);
        let game = Game::Friends(fg);
        let agents: Vec<AgentId> = (0..n).map(agent).collect();
        let singletons = Partition::singletons(&agents);
        for p in enumerate_partitions(&agents, 12).unwrap() {
            let ir = is_ir(&game, &p).unwrap().is_ok();
            assert_eq!(ir, p == singletons, "partition {p}");
        }
    }
}

#[test]
fn pair_reduction_solves_worked_example() {
    // Reducing the not-alone goal to pair goals decides the worked example:
    // pairing u1 with any partner succeeds only once w2 can be added.
    let (g, u1, _) = hgctl_core::testutil::section2_example();
    let game = Game::Additive(g.clone());
    let exact = ExactConfig::default();
    let original = g.original_agents();
    let additional = g.additional_agents();
    let result = na_via_pa(u1, &original, &additional, 1, |partner, budget, was_extra| {
        // Pair solver: exhaustive existence over subsets of the remaining
        // additional pool.
        let mut active = original.clone();
        active.push(partner);
        active.sort_unstable();
        active.dedup();
        let pool: Vec<AgentId> = additional
            .iter()
            .copied()
            .filter(|a| *a != partner)
            .collect();
        let _ = was_extra;
        for size in 0..=budget.min(pool.len()) {
            let mut found = None;
            let mut pick = |subset: &[AgentId]| -> hgctl_core::Result<bool> {
                let mut set = active.clone();
                set.extend_from_slice(subset);
                set.sort_unstable();
                if let Some(p) = exists_stable_goal(
                    &game,
                    Stability::Ir,
                    Goal::Together(u1, partner),
                    &set,
                    &exact,
                )? {
                    found = Some((subset.to_vec(), p));
                    return Ok(true);
                }
                Ok(false)
            };
            if size == 0 {
                if pick(&[])? {
                    return Ok(found);
                }
            } else {
                for (i, &w) in pool.iter().enumerate() {
                    if size == 1 && pick(&[w])? {
                        return Ok(found);
                    }
                    for &w2 in pool.iter().skip(i + 1) {
                        if size == 2 && pick(&[w, w2])? {
                            return Ok(found);
                        }
                    }
                }
            }
        }
        Ok(None)
    })
    .unwrap();
    let (chosen, partition) = result.expect("adding w2 pairs u1");
    assert_eq!(chosen, vec![agent(4)]);
    assert!(is_ir(&game, &partition).unwrap().is_ok());
}

#[test]
fn large_acyclic_core_grand_coalition_verifies() {
    // A 30-agent acyclic chain where every agent values its successor: the
    // grand coalition is individually rational, hence core stable on a DAG,
    // and verification must accept it beyond the exhaustive cap.
    let n = 30;
    let mut g = AdditiveGame::new(n);
    for i in 0..n - 1 {
        g.set_utility(agent(i), agent(i + 1), 1);
    }
    let cfg = SolverConfig::default();
    let out = solve(
        &Game::Additive(g),
        &query(Stability::Cs, Goal::GrandCoalition, Action::AddAgents, 0),
        &cfg,
    )
    .unwrap();
    assert!(out.decision);
    assert_eq!(out.route, Route::Xp);
}

#[test]
fn exhaustive_tiny_friend_sweep_matches_oracle() {
    // Every labeled friendship graph up to three agents under every
    // original/additional split, and every four-agent graph under three
    // splits: all query cells, budgets zero to two.
    let cfg = SolverConfig::default();
    let exact = ExactConfig::default();
    let mut compared = 0usize;
    for n in 2..=4usize {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b)))
            .collect();
        let splits: Vec<u32> = if n <= 3 {
            (0..(1 << n)).collect()
        } else {
            vec![0b0000, 0b1000, 0b1100]
        };
        for mask in 0u64..(1u64 << pairs.len()) {
            for &split in &splits {
                // Keep at least two original agents so pair goals exist.
                if (split & 0b11) != 0 {
                    continue;
                }
                let mut fg = FriendGame::new(n);
                for (i, &(a, b)) in pairs.iter().enumerate() {
                    if mask & (1 << i) != 0 {
                        fg.add_friend(agent(a), agent(b));
                    }
                }
                for i in 0..n {
                    if split & (1 << i) != 0 {
                        fg.mark_additional(agent(i));
                    }
                }
                let has_pool = split != 0;
                let game = Game::Friends(fg);
                let (x, y) = (agent(0), agent(1));
                for stability in Stability::ALL {
                    for goal in [Goal::NotAlone(x), Goal::Together(x, y), Goal::GrandCoalition] {
                        for action in [Action::AddAgents, Action::DeleteAgents] {
                            if action == Action::DeleteAgents && has_pool {
                                continue;
                            }
                            for k in 0..=2usize {
                                let q = query(stability, goal, action, k);
                                let fast = solve(&game, &q, &cfg).unwrap();
                                let slow = oracle_control(&game, &q, &exact).unwrap();
                                assert_eq!(
                                    fast.decision, slow.decision,
                                    "n={n} mask={mask} split={split} {stability} {goal:?} {action} k={k}"
                                );
                                if fast.decision {
                                    assert_eq!(
                                        fast.witness.unwrap().chosen.len(),
                                        slow.witness.unwrap().chosen.len(),
                                        "witness size n={n} mask={mask} split={split}"
                                    );
                                }
                                compared += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    assert!(compared > 100_000, "sweep ran {compared} comparisons");
}

#[test]
fn exhaustive_partner_search_matches_oracle() {
    // The DAG/symmetric partner scan against the oracle over every
    // four-agent weighted instance with arc states {absent, -1, +1}, with
    // and without an additional helper.
    let cfg = SolverConfig::default();
    let exact = ExactConfig::default();
    let n = 4usize;
    let x = agent(0);
    let mut compared = 0usize;
    for symmetric in [true, false] {
        let pairs: Vec<(usize, usize)> = if symmetric {
            (0..n).flat_map(|a| ((a + 1)..n).map(move |b| (a, b))).collect()
        } else {
            // Acyclic: arcs i -> j only for i < j.
            (0..n).flat_map(|a| ((a + 1)..n).map(move |b| (a, b))).collect()
        };
        for code in 0..3u32.pow(pairs.len() as u32) {
            for additional_helper in [false, true] {
                let mut g = AdditiveGame::new(n);
                let mut c = code;
                for &(a, b) in &pairs {
                    let w = match c % 3 {
                        1 => -1,
                        2 => 1,
                        _ => 0,
                    };
                    c /= 3;
                    if w != 0 {
                        if symmetric {
                            g.set_symmetric(agent(a), agent(b), w);
                        } else {
                            g.set_utility(agent(a), agent(b), w);
                        }
                    }
                }
                if additional_helper {
                    g.mark_additional(agent(n - 1));
                }
                let class = hgctl_core::classify_additive(&g);
                assert!(class.is_dag || class.is_symmetric);
                let game = Game::Additive(g);
                for k in 0..=1usize {
                    let q = query(Stability::Ir, Goal::NotAlone(x), Action::AddAgents, k);
                    let fast = solve(&game, &q, &cfg).unwrap();
                    assert_eq!(fast.route, Route::Poly);
                    let slow = oracle_control(&game, &q, &exact).unwrap();
                    assert_eq!(
                        fast.decision, slow.decision,
                        "sym={symmetric} code={code} helper={additional_helper} k={k}"
                    );
                    compared += 1;
                    // On acyclic instances the same scan answers core
                    // stability.
                    if class.is_dag {
                        let q = query(Stability::Cs, Goal::NotAlone(x), Action::AddAgents, k);
                        let fast = solve(&game, &q, &cfg).unwrap();
                        let slow = oracle_control(&game, &q, &exact).unwrap();
                        assert_eq!(fast.decision, slow.decision);
                        compared += 1;
                    }
                }
            }
        }
    }
    assert!(compared > 4000, "sweep ran {compared} comparisons");
}

#[test]
fn no_instance_gadget_is_deletion_immune() {
    // Build the not-alone gadget from sources without an exact cover: the
    // deletion query answers no at every budget through the immunity route.
    let cfg = SolverConfig::default();
    let mut tested = 0usize;
    for seed in 0..40u64 {
        let inst = hgctl_core::gen::random_rx3c(2, seed).unwrap();
        if inst.has_exact_cover() {
            continue;
        }
        let g = hgctl_core::gen::gen_rx3c_ir_na(&inst).unwrap();
        for k in [0usize, 3, 15] {
            let out = solve(
                &Game::Additive(g.game.clone()),
                &query(Stability::Ir, Goal::NotAlone(g.x), Action::DeleteAgents, k),
                &cfg,
            )
            .unwrap();
            assert!(!out.decision, "seed {seed} k={k}");
            assert_eq!(out.route, Route::Immune);
        }
        tested += 1;
    }
    assert!(tested >= 2, "found {tested} no-instances");
}

#[test]
fn mid_size_ir_pair_sweep_matches_oracle() {
    // Algorithm exercise at sizes where the path-and-cycle structures span
    // several hops: the individually-rational coalition scan stays exact up
    // to twenty-plus agents, so the oracle can referee.
    let cfg = SolverConfig::default();
    let exact = ExactConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0x519);
    for round in 0..200 {
        let n = rng.gen_range(8..=12usize);
        let spec = RandomSpec {
            model: Model::Friends,
            n,
            arc_density: rng.gen_range(0.08..0.3),
            split_fraction: rng.gen_range(0.2..0.5),
            seed: rng.gen(),
            ..RandomSpec::default()
        };
        let game = gen_random(&spec).unwrap();
        let originals = game.original_agents();
        if originals.len() < 2 {
            continue;
        }
        let (x, y) = (originals[0], originals[1]);
        for goal in [Goal::NotAlone(x), Goal::Together(x, y)] {
            for k in 0..=3usize {
                let q = query(Stability::Ir, goal, Action::AddAgents, k);
                let fast = solve(&game, &q, &cfg).unwrap();
                let slow = oracle_control(&game, &q, &exact).unwrap();
                assert_eq!(
                    fast.decision, slow.decision,
                    "round {round} {goal:?} k={k} seed {}",
                    spec.seed
                );
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
fn mid_size_cs_pair_sweep_matches_oracle() {
    // The Steiner-connectivity pair solver against the oracle at nine
    // agents (the core-stability oracle cap allows ten).
    let cfg = SolverConfig::default();
    let exact = ExactConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0xc5);
    for round in 0..120 {
        let n = rng.gen_range(8..=9usize);
        let spec = RandomSpec {
            model: Model::Friends,
            n,
            arc_density: rng.gen_range(0.1..0.35),
            split_fraction: 0.35,
            seed: rng.gen(),
            ..RandomSpec::default()
        };
        let game = gen_random(&spec).unwrap();
        let originals = game.original_agents();
        if originals.len() < 2 {
            continue;
        }
        let (x, y) = (originals[0], originals[1]);
        for goal in [Goal::NotAlone(x), Goal::Together(x, y)] {
            for k in 0..=2usize {
                let q = query(Stability::Cs, goal, Action::AddAgents, k);
                let fast = solve(&game, &q, &cfg).unwrap();
                let slow = oracle_control(&game, &q, &exact).unwrap();
                assert_eq!(
                    fast.decision, slow.decision,
                    "round {round} {goal:?} k={k} seed {}",
                    spec.seed
                );
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

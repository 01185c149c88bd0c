//! The `gen` subcommands: every hardness gadget plus seeded random games.
//!
//! Each gadget command writes the instance file (with generator provenance
//! and, when the source instance was solved, an answer key in the metadata)
//! and a `<out>.fixture.json` sidecar recording the source instance and the
//! expected decision. Solvers never read the metadata.

use std::path::{Path, PathBuf};

use clap::{Args, Subcommand};
use serde_json::json;

use crate::format::{write_json, InstanceFile};
use hgctl_core::gen::{
    self, max_clique, random_clique_graph, random_rx3c, random_set_cover, RandomSpec,
    Rx3cInstance, SetCoverInstance, SetCoverVariant,
};
use hgctl_core::{Game, Model};

#[derive(Subcommand)]
pub enum GenCmd {
    /// Not-alone/IR gadget from a random exact-cover instance (one feedback arc).
    Rx3cIrNa(Rx3cArgs),
    /// Acyclic IS/NS gadget from a random exact-cover instance.
    Rx3cIsnsDag(Rx3cArgs),
    /// Symmetric IS/NS gadget from a random exact-cover instance.
    Rx3cIsnsSym(Rx3cArgs),
    /// Acyclic degree-nine pair/IR gadget from a random exact-cover instance.
    Rx3cIrPaDag(Rx3cArgs),
    /// Symmetric pair/IR-IS-NS gadget from a random exact-cover instance.
    Rx3cIrPaSym(Rx3cArgs),
    /// Friend-oriented grand-coalition gadget from a random set cover.
    SetcoverFriGr(SetCoverArgs),
    /// Additive grand-coalition gadget from a random set cover.
    SetcoverAddGr(SetCoverAddArgs),
    /// Core-stability grand-coalition gadget from a random graph.
    CliqueCsGr(CliqueArgs),
    /// Seeded random game.
    Random(RandomArgs),
}

#[derive(Args)]
pub struct Rx3cArgs {
    /// Universe size divided by three.
    #[arg(long, default_value_t = 1)]
    n_hat: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
pub struct SetCoverArgs {
    #[arg(long, default_value_t = 3)]
    universe: usize,
    #[arg(long, default_value_t = 4)]
    num_sets: usize,
    /// Cover budget (the gadget's control budget).
    #[arg(long, default_value_t = 2)]
    budget: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
pub struct SetCoverAddArgs {
    #[command(flatten)]
    base: SetCoverArgs,
    /// Construction variant.
    #[arg(long, value_enum)]
    variant: VariantArg,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum VariantArg {
    DagAdd,
    DagDel,
    SymDel,
}

#[derive(Args)]
pub struct CliqueArgs {
    #[arg(long, default_value_t = 5)]
    vertices: usize,
    #[arg(long, default_value_t = 0.5)]
    density: f64,
    /// Clique size threshold h: the grand coalition is core stable iff the
    /// graph has no clique of size h.
    #[arg(long, default_value_t = 3)]
    clique_size: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
pub struct RandomArgs {
    #[arg(long, value_enum, default_value_t = ModelArg::Friends)]
    model: ModelArg,
    #[arg(long, default_value_t = 6)]
    agents: usize,
    #[arg(long, default_value_t = 0.3)]
    density: f64,
    #[arg(long, default_value_t = -3)]
    min_weight: i64,
    #[arg(long, default_value_t = 3)]
    max_weight: i64,
    #[arg(long)]
    symmetric: bool,
    #[arg(long)]
    dag: bool,
    /// Fraction of agents placed in the additional pool.
    #[arg(long, default_value_t = 0.3)]
    split: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum ModelArg {
    Friends,
    Additive,
}

pub fn run(cmd: GenCmd) -> anyhow::Result<()> {
    match cmd {
        GenCmd::Rx3cIrNa(a) => rx3c_gadget(&a, "rx3c-ir-na"),
        GenCmd::Rx3cIsnsDag(a) => rx3c_gadget(&a, "rx3c-isns-dag"),
        GenCmd::Rx3cIsnsSym(a) => rx3c_gadget(&a, "rx3c-isns-sym"),
        GenCmd::Rx3cIrPaDag(a) => rx3c_gadget(&a, "rx3c-ir-pa-dag"),
        GenCmd::Rx3cIrPaSym(a) => rx3c_gadget(&a, "rx3c-ir-pa-sym"),
        GenCmd::SetcoverFriGr(a) => setcover_fri(&a),
        GenCmd::SetcoverAddGr(a) => setcover_add(&a),
        GenCmd::CliqueCsGr(a) => clique(&a),
        GenCmd::Random(a) => random(&a),
    }
}

fn source_json(rx3c: &Rx3cInstance) -> serde_json::Value {
    json!({
        "kind": "rx3c",
        "n_hat": rx3c.n_hat,
        "sets": rx3c.sets,
    })
}

fn rx3c_gadget(args: &Rx3cArgs, which: &str) -> anyhow::Result<()> {
    let rx3c = random_rx3c(args.n_hat, args.seed)?;
    // The answer key comes from brute force on the source; skip it for
    // sources too large to solve.
    let expected = (args.n_hat <= 12).then(|| rx3c.has_exact_cover());
    let m = 3 * args.n_hat;
    let (game, names, designated, query) = match which {
        "rx3c-ir-na" => {
            let g = gen::gen_rx3c_ir_na(&rx3c)?;
            let mut names = vec![String::new(); g.game.n_agents()];
            for i in 0..m {
                names[g.element_agent(i).idx()] = format!("u{}", i + 1);
            }
            for j in 0..m {
                names[g.set_agent(j).idx()] = format!("s{}", j + 1);
            }
            names[g.y0().idx()] = "y0".into();
            names[g.y1().idx()] = "y1".into();
            names[g.x.idx()] = "x".into();
            let x = names[g.x.idx()].clone();
            (
                Game::Additive(g.game),
                names,
                json!({ "x": x }),
                json!({ "stability": "ir", "goal": "na", "action": "add", "budget": 0 }),
            )
        }
        "rx3c-isns-dag" => {
            let g = gen::gen_rx3c_isns_dag(&rx3c)?;
            let mut names = vec![String::new(); g.game.n_agents()];
            names[g.y.idx()] = "y".into();
            names[g.x.idx()] = "x".into();
            for j in 0..m {
                names[g.set_agent(j).idx()] = format!("s{}", j + 1);
            }
            for i in 0..m {
                names[g.element_agent(i).idx()] = format!("u{}", i + 1);
            }
            for l in 0..2 * args.n_hat {
                for z in 0..3 {
                    names[g.aux_agent(l, z).idx()] = format!("d{}_{}", l + 1, z + 1);
                }
            }
            (
                Game::Additive(g.game),
                names,
                json!({ "x": "x", "y": "y" }),
                json!({ "stability": "ns", "goal": "na", "action": "add", "budget": 0 }),
            )
        }
        "rx3c-isns-sym" => {
            let g = gen::gen_rx3c_isns_sym(&rx3c)?;
            let mut names = vec![String::new(); g.game.n_agents()];
            names[g.x.idx()] = "x".into();
            names[g.y.idx()] = "y".into();
            for i in 0..m {
                names[g.element_agent(i).idx()] = format!("u{}", i + 1);
            }
            for j in 0..m {
                names[g.set_agent(j).idx()] = format!("s{}", j + 1);
            }
            for l in 0..2 * args.n_hat {
                names[g.aux_agent(l).idx()] = format!("d{}", l + 1);
            }
            (
                Game::Additive(g.game),
                names,
                json!({ "x": "x" }),
                json!({ "stability": "ns", "goal": "na", "action": "add", "budget": 0 }),
            )
        }
        "rx3c-ir-pa-dag" => {
            let g = gen::gen_rx3c_ir_pa_dag(&rx3c)?;
            let mut names = vec![String::new(); g.game.n_agents()];
            for i in 0..=m {
                names[g.anchor(i).idx()] = format!("y{i}");
            }
            for i in 0..m {
                names[g.element_agent(i).idx()] = format!("u{}", i + 1);
            }
            for j in 0..m {
                names[g.set_agent(j).idx()] = format!("s{}", j + 1);
            }
            (
                Game::Additive(g.game),
                names,
                json!({ "x": "y0", "y": "y1" }),
                json!({ "stability": "ir", "goal": "pa", "action": "add", "budget": 0 }),
            )
        }
        "rx3c-ir-pa-sym" => {
            let g = gen::gen_rx3c_ir_pa_sym(&rx3c)?;
            let mut names = vec![String::new(); g.game.n_agents()];
            names[g.x.idx()] = "x".into();
            for i in 0..m {
                names[g.element_agent(i).idx()] = format!("u{}", i + 1);
            }
            for j in 0..m {
                names[g.set_agent(j).idx()] = format!("s{}", j + 1);
            }
            for l in 0..2 * args.n_hat {
                names[g.aux_agent(l).idx()] = format!("d{}", l + 1);
            }
            (
                Game::Additive(g.game),
                names,
                json!({ "x": "x", "y": "u1" }),
                json!({ "stability": "ir", "goal": "pa", "action": "add", "budget": 0 }),
            )
        }
        _ => unreachable!(),
    };
    let metadata = json!({
        "generator": which,
        "seed": args.seed,
        "designated": designated,
        "answer_key": { "query": query, "expected": expected },
        "source": source_json(&rx3c),
    });
    emit(&args.out, &game, names, metadata, json!({
        "generator": which,
        "seed": args.seed,
        "source": source_json(&rx3c),
        "expected": expected,
    }))
}

fn setcover_source_json(sc: &SetCoverInstance) -> serde_json::Value {
    json!({
        "kind": "set-cover",
        "universe": sc.universe,
        "sets": sc.sets,
        "budget": sc.budget,
    })
}

fn setcover_fri(args: &SetCoverArgs) -> anyhow::Result<()> {
    let sc = random_set_cover(args.universe, args.num_sets, args.budget, false, args.seed)?;
    let gadget = gen::gen_setcover_fri_gr(&sc)?;
    let expected = (args.num_sets <= 20).then(|| sc.min_cover_size().is_some_and(|c| c <= sc.budget));
    let mut names = vec![String::new(); gadget.game.n_agents()];
    for i in 0..sc.universe {
        names[gadget.element_agent(i).idx()] = format!("u{}", i + 1);
    }
    for j in 0..sc.sets.len() {
        names[gadget.set_agent(sc.universe, j).idx()] = format!("s{}", j + 1);
    }
    let metadata = json!({
        "generator": "setcover-fri-gr",
        "seed": args.seed,
        "answer_key": {
            "query": { "stability": "ir", "goal": "gr", "action": "add", "budget": sc.budget },
            "expected": expected,
        },
        "source": setcover_source_json(&sc),
    });
    emit(&args.out, &Game::Friends(gadget.game), names, metadata, json!({
        "generator": "setcover-fri-gr",
        "seed": args.seed,
        "source": setcover_source_json(&sc),
        "expected": expected,
    }))
}

fn setcover_add(args: &SetCoverAddArgs) -> anyhow::Result<()> {
    let variant = match args.variant {
        VariantArg::DagAdd => SetCoverVariant::DagAdd,
        VariantArg::DagDel => SetCoverVariant::DagDel,
        VariantArg::SymDel => SetCoverVariant::SymDel,
    };
    let ensure_covered = variant != SetCoverVariant::DagAdd;
    let sc = random_set_cover(
        args.base.universe,
        args.base.num_sets,
        args.base.budget,
        ensure_covered,
        args.base.seed,
    )?;
    let gadget = gen::gen_setcover_add_gr(&sc, variant)?;
    let expected =
        (args.base.num_sets <= 20).then(|| sc.min_cover_size().is_some_and(|c| c <= sc.budget));
    let names = setcover_add_names(&sc, &gadget);
    let action = if variant == SetCoverVariant::DagAdd {
        "add"
    } else {
        "del"
    };
    let which = match variant {
        SetCoverVariant::DagAdd => "setcover-add-gr-dag-add",
        SetCoverVariant::DagDel => "setcover-add-gr-dag-del",
        SetCoverVariant::SymDel => "setcover-add-gr-sym-del",
    };
    let metadata = json!({
        "generator": which,
        "seed": args.base.seed,
        "answer_key": {
            "query": { "stability": "ir", "goal": "gr", "action": action, "budget": sc.budget },
            "expected": expected,
        },
        "source": setcover_source_json(&sc),
    });
    emit(&args.base.out, &Game::Additive(gadget.game), names, metadata, json!({
        "generator": which,
        "seed": args.base.seed,
        "source": setcover_source_json(&sc),
        "expected": expected,
    }))
}

/// Names for the additive set-cover gadgets, following their layout:
/// elements, then (for the addition variant) the sink, then sets, then
/// helper and ballast agents.
fn setcover_add_names(sc: &SetCoverInstance, gadget: &gen::AddGrGadget) -> Vec<String> {
    let n = gadget.game.n_agents();
    let mut names = vec![String::new(); n];
    for i in 0..sc.universe {
        names[i] = format!("u{}", i + 1);
    }
    for (j, a) in gadget.set_agents.iter().enumerate() {
        names[a.idx()] = format!("s{}", j + 1);
    }
    match gadget.variant {
        SetCoverVariant::DagAdd => {
            names[sc.universe] = "b".into();
        }
        SetCoverVariant::DagDel | SetCoverVariant::SymDel => {
            let mut next = sc.universe + sc.sets.len();
            for e in 0..sc.universe {
                for z in 0..sc.occurrence(e) - 1 {
                    names[next] = format!("a{}_{}", e + 1, z + 1);
                    next += 1;
                }
            }
            if gadget.variant == SetCoverVariant::SymDel {
                for j in 0..sc.sets.len() {
                    for w in 0..sc.sets[j].len() + sc.sets.len() {
                        names[next] = format!("b{}_{}", j + 1, w + 1);
                        next += 1;
                    }
                }
            }
        }
    }
    names
}

fn clique(args: &CliqueArgs) -> anyhow::Result<()> {
    let edges = random_clique_graph(args.vertices, args.density, args.seed);
    let gadget = gen::gen_clique_cs_gr(args.vertices, &edges, args.clique_size)?;
    let expected =
        (args.vertices <= 40).then(|| max_clique(args.vertices, &edges) < args.clique_size);
    let mut names: Vec<String> = (0..args.vertices).map(|v| format!("v{}", v + 1)).collect();
    names.push("b".into());
    let source = json!({
        "kind": "clique",
        "vertices": args.vertices,
        "edges": edges,
        "h": args.clique_size,
    });
    let metadata = json!({
        "generator": "clique-cs-gr",
        "seed": args.seed,
        "answer_key": {
            "query": { "stability": "cs", "goal": "gr", "action": "add", "budget": 0 },
            "expected": expected,
        },
        "source": source,
    });
    emit(&args.out, &Game::Additive(gadget.game), names, metadata, json!({
        "generator": "clique-cs-gr",
        "seed": args.seed,
        "source": source,
        "expected": expected,
    }))
}

fn random(args: &RandomArgs) -> anyhow::Result<()> {
    let spec = RandomSpec {
        model: match args.model {
            ModelArg::Friends => Model::Friends,
            ModelArg::Additive => Model::Additive,
        },
        n: args.agents,
        arc_density: args.density,
        min_weight: args.min_weight,
        max_weight: args.max_weight,
        symmetric: args.symmetric,
        dag: args.dag,
        split_fraction: args.split,
        seed: args.seed,
    };
    let game = gen::gen_random(&spec)?;
    let names: Vec<String> = (0..args.agents).map(|i| format!("a{}", i + 1)).collect();
    let metadata = json!({
        "generator": "random",
        "seed": args.seed,
    });
    let file = InstanceFile::from_game(&game, names, Some(metadata));
    write_json(&args.out, &file)?;
    println!("wrote {}", args.out.display());
    Ok(())
}

fn emit(
    out: &Path,
    game: &Game,
    names: Vec<String>,
    metadata: serde_json::Value,
    fixture: serde_json::Value,
) -> anyhow::Result<()> {
    anyhow::ensure!(
        names.iter().all(|n| !n.is_empty()),
        "generator produced an unnamed agent"
    );
    let file = InstanceFile::from_game(game, names, Some(metadata));
    write_json(out, &file)?;
    let sidecar = sidecar_path(out);
    write_json(&sidecar, &fixture)?;
    println!("wrote {} and {}", out.display(), sidecar.display());
    Ok(())
}

fn sidecar_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".fixture.json");
    PathBuf::from(s)
}

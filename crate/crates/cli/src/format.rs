//! On-disk formats: JSON instance files and partition files, plus the name
//! table translating between display names and dense agent indices.
//!
//! Serialization is deterministic (agents in declaration order, arcs sorted
//! by endpoint indices) so files round-trip byte-for-byte and fixture diffs
//! stay readable.

use std::collections::{HashMap, HashSet};

use anyhow::{bail, Context};
use serde::{Deserialize, Serialize};

use hgctl_core::{agent, AdditiveGame, AgentId, FriendGame, Game, Partition};

/// Largest allowed arc-weight magnitude: utility sums over any coalition
/// stay comfortably inside 64 bits.
pub const MAX_WEIGHT: u64 = 1 << 40;

/// A single weighted arc between named agents. For the friends model the
/// weight may be omitted and defaults to 1.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ArcEntry {
    pub from: String,
    pub to: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weight: Option<i64>,
}

/// Instance file: model, named agents, original/additional split, arcs, and
/// free-form metadata (generator provenance, answer keys).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InstanceFile {
    pub model: String,
    pub agents: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub additional: Vec<String>,
    pub arcs: Vec<ArcEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<serde_json::Value>,
}

/// Partition file: a list of coalitions over the instance's agent names.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PartitionFile {
    pub coalitions: Vec<Vec<String>>,
}

/// Maps display names to dense indices and back.
#[derive(Debug, Clone)]
pub struct NameTable {
    names: Vec<String>,
    index: HashMap<String, u32>,
}

impl NameTable {
    pub fn new(names: Vec<String>) -> anyhow::Result<Self> {
        let mut index = HashMap::new();
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() {
                bail!("agent {i} has an empty name");
            }
            if index.insert(n.clone(), i as u32).is_some() {
                bail!("duplicate agent name {n:?}");
            }
        }
        Ok(NameTable { names, index })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn id(&self, name: &str) -> anyhow::Result<AgentId> {
        self.index
            .get(name)
            .map(|&i| AgentId(i))
            .with_context(|| format!("unknown agent {name:?}"))
    }

    pub fn name(&self, a: AgentId) -> &str {
        &self.names[a.idx()]
    }

    /// Renders a set of agents as sorted names in index order.
    pub fn render_set(&self, agents: &[AgentId]) -> String {
        let mut ids = agents.to_vec();
        ids.sort_unstable();
        let names: Vec<&str> = ids.iter().map(|a| self.name(*a)).collect();
        format!("{{{}}}", names.join(","))
    }
}

impl InstanceFile {
    /// Validates and converts the file into a game plus its name table.
    pub fn to_game(&self) -> anyhow::Result<(Game, NameTable)> {
        let table = NameTable::new(self.agents.clone())?;
        let n = table.len();
        if n == 0 {
            bail!("instance declares no agents");
        }
        let mut additional = vec![false; n];
        for name in &self.additional {
            additional[table.id(name)?.idx()] = true;
        }
        let game = match self.model.as_str() {
            "friends" => {
                let mut fg = FriendGame::new(n);
                for (i, &is_add) in additional.iter().enumerate() {
                    if is_add {
                        fg.mark_additional(agent(i));
                    }
                }
                for arc in &self.arcs {
                    let from = table.id(&arc.from)?;
                    let to = table.id(&arc.to)?;
                    if from == to {
                        bail!("self-loop on {:?}", arc.from);
                    }
                    match arc.weight {
                        None | Some(1) => fg.add_friend(from, to),
                        Some(w) => bail!(
                            "friends-model arc {:?}->{:?} carries weight {w}; only 1 is allowed",
                            arc.from,
                            arc.to
                        ),
                    }
                }
                Game::Friends(fg)
            }
            "additive" => {
                let mut g = AdditiveGame::new(n);
                for (i, &is_add) in additional.iter().enumerate() {
                    if is_add {
                        g.mark_additional(agent(i));
                    }
                }
                let mut seen = HashSet::new();
                for arc in &self.arcs {
                    let from = table.id(&arc.from)?;
                    let to = table.id(&arc.to)?;
                    if from == to {
                        bail!("self-loop on {:?}", arc.from);
                    }
                    if !seen.insert((from, to)) {
                        bail!("duplicate arc {:?}->{:?}", arc.from, arc.to);
                    }
                    let w = arc
                        .weight
                        .with_context(|| format!("additive arc {:?}->{:?} needs a weight", arc.from, arc.to))?;
                    if w == 0 {
                        bail!("zero-weight arc {:?}->{:?}; omit absent arcs", arc.from, arc.to);
                    }
                    // Keep utility sums far away from integer overflow.
                    if w.unsigned_abs() > MAX_WEIGHT {
                        bail!("arc weight {w} exceeds the supported magnitude {MAX_WEIGHT}");
                    }
                    g.set_utility(from, to, w);
                }
                Game::Additive(g)
            }
            other => bail!("unknown model {other:?}; expected \"friends\" or \"additive\""),
        };
        Ok((game, table))
    }

    /// Builds the canonical file for a game under the given names.
    pub fn from_game(game: &Game, names: Vec<String>, metadata: Option<serde_json::Value>) -> Self {
        let to_name = |a: AgentId| names[a.idx()].clone();
        let additional: Vec<String> = game
            .additional_agents()
            .into_iter()
            .map(to_name)
            .collect();
        let arcs = match game {
            Game::Friends(fg) => {
                let mut arcs: Vec<ArcEntry> = fg
                    .arcs()
                    .into_iter()
                    .map(|(f, t)| ArcEntry {
                        from: to_name(f),
                        to: to_name(t),
                        weight: None,
                    })
                    .collect();
                arcs.sort_by_key(|a| (names.iter().position(|n| n == &a.from), names.iter().position(|n| n == &a.to)));
                arcs
            }
            Game::Additive(g) => g
                .arcs()
                .into_iter()
                .map(|(f, t, w)| ArcEntry {
                    from: to_name(f),
                    to: to_name(t),
                    weight: Some(w),
                })
                .collect(),
        };
        InstanceFile {
            model: match game {
                Game::Friends(_) => "friends".into(),
                Game::Additive(_) => "additive".into(),
            },
            agents: names,
            additional,
            arcs,
            metadata,
        }
    }
}

impl PartitionFile {
    pub fn to_partition(&self, table: &NameTable) -> anyhow::Result<Partition> {
        let mut coalitions = Vec::new();
        for c in &self.coalitions {
            let mut ids = Vec::new();
            for name in c {
                ids.push(table.id(name)?);
            }
            coalitions.push(ids);
        }
        Partition::new(coalitions).map_err(|e| anyhow::anyhow!(e.to_string()))
    }

    pub fn from_partition(p: &Partition, table: &NameTable) -> Self {
        PartitionFile {
            coalitions: p
                .coalitions()
                .iter()
                .map(|c| c.iter().map(|a| table.name(*a).to_string()).collect())
                .collect(),
        }
    }
}

/// Reads and parses a JSON file.
pub fn read_json<T: serde::de::DeserializeOwned>(path: &std::path::Path) -> anyhow::Result<T> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

/// Writes a value as pretty JSON with a trailing newline.
pub fn write_json<T: Serialize>(path: &std::path::Path, value: &T) -> anyhow::Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

//! Partitions of an agent set into disjoint coalitions, kept in canonical
//! form: members sorted within each coalition, coalitions sorted by their
//! minimum member.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::game::AgentId;

/// A division of an agent set into non-empty disjoint coalitions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    coalitions: Vec<Vec<AgentId>>,
}

impl Partition {
    /// Builds a canonical partition, rejecting empty or overlapping
    /// coalitions.
    pub fn new(coalitions: Vec<Vec<AgentId>>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for c in &coalitions {
            if c.is_empty() {
                return Err(Error::InvalidPartition("empty coalition".into()));
            }
            for a in c {
                if !seen.insert(*a) {
                    return Err(Error::InvalidPartition(format!(
                        "agent {a} appears in two coalitions"
                    )));
                }
            }
        }
        let mut coalitions = coalitions;
        for c in &mut coalitions {
            c.sort_unstable();
        }
        coalitions.sort_unstable_by_key(|c| c[0]);
        Ok(Partition { coalitions })
    }

    /// The all-singletons partition of `agents`.
    pub fn singletons(agents: &[AgentId]) -> Self {
        Partition::new(agents.iter().map(|a| vec![*a]).collect()).expect("singletons are disjoint")
    }

    /// The single-coalition partition of `agents`.
    pub fn grand(agents: &[AgentId]) -> Result<Self> {
        Partition::new(vec![agents.to_vec()])
    }

    /// One coalition plus singletons for every other agent of `agents`.
    pub fn coalition_plus_singletons(coalition: Vec<AgentId>, agents: &[AgentId]) -> Result<Self> {
        let inside: BTreeSet<AgentId> = coalition.iter().copied().collect();
        let mut coalitions = vec![coalition];
        for a in agents {
            if !inside.contains(a) {
                coalitions.push(vec![*a]);
            }
        }
        Partition::new(coalitions)
    }

    /// The coalitions, in canonical order.
    pub fn coalitions(&self) -> &[Vec<AgentId>] {
        &self.coalitions
    }

    /// Number of coalitions.
    pub fn len(&self) -> usize {
        self.coalitions.len()
    }

    /// True when there are no coalitions (empty agent set).
    pub fn is_empty(&self) -> bool {
        self.coalitions.is_empty()
    }

    /// The covered agent set, sorted.
    pub fn agents(&self) -> Vec<AgentId> {
        let mut out: Vec<AgentId> = self.coalitions.iter().flatten().copied().collect();
        out.sort_unstable();
        out
    }

    /// The coalition containing `a`, if present.
    pub fn coalition_of(&self, a: AgentId) -> Option<&[AgentId]> {
        self.coalitions
            .iter()
            .find(|c| c.binary_search(&a).is_ok())
            .map(|c| c.as_slice())
    }

    /// Index of the coalition containing `a`, if present.
    pub fn coalition_index_of(&self, a: AgentId) -> Option<usize> {
        self.coalitions.iter().position(|c| c.binary_search(&a).is_ok())
    }

    /// Checks that this partition covers exactly `agents`.
    pub fn check_covers(&self, agents: &[AgentId]) -> Result<()> {
        let mut expect = agents.to_vec();
        expect.sort_unstable();
        if self.agents() != expect {
            return Err(Error::InvalidPartition(
                "partition does not cover the expected agent set".into(),
            ));
        }
        Ok(())
    }
}

impl std::fmt::Display for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .coalitions
            .iter()
            .map(|c| {
                let members: Vec<String> = c.iter().map(|a| a.to_string()).collect();
                format!("{{{}}}", members.join(","))
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::agent;
    use proptest::prelude::*;

    #[test]
    fn rejects_overlap_and_empty() {
        assert!(Partition::new(vec![vec![agent(0)], vec![agent(0)]]).is_err());
        assert!(Partition::new(vec![vec![]]).is_err());
    }

    #[test]
    fn canonical_ordering() {
        let p = Partition::new(vec![vec![agent(3), agent(1)], vec![agent(0), agent(2)]]).unwrap();
        assert_eq!(
            p.coalitions(),
            &[vec![agent(0), agent(2)], vec![agent(1), agent(3)]]
        );
    }

    proptest! {
        #[test]
        fn canonicalization_is_idempotent(groups in proptest::collection::vec(0u32..5, 1..12)) {
            // Interpret the vector as a block assignment of agents 0..len.
            let mut blocks: Vec<Vec<AgentId>> = vec![Vec::new(); 5];
            for (i, g) in groups.iter().enumerate() {
                blocks[*g as usize].push(agent(i));
            }
            blocks.retain(|b| !b.is_empty());
            let p1 = Partition::new(blocks).unwrap();
            let p2 = Partition::new(p1.coalitions().to_vec()).unwrap();
            prop_assert_eq!(p1, p2);
        }
    }
}

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::{LinkKind, TokenId, VerseAlignment};
use crate::error::Error;

/// A connected component of the core-link graph of one verse.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlignmentGroup {
    pub source_ids: BTreeSet<TokenId>,
    pub target_positions: BTreeSet<usize>,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

impl VerseAlignment {
    /// Groups of source tokens and target rows joined by core links. Aux and
    /// cross-verse links never merge groups. Ordered by smallest source id.
    pub fn alignment_groups(&self) -> Result<Vec<AlignmentGroup>, Error> {
        let resolved = self.resolve_links()?;
        let n_source = self.source.len();
        let index: BTreeMap<TokenId, usize> =
            self.source.iter().enumerate().map(|(i, t)| (t.id, i)).collect();
        // nodes: source tokens first, then target rows
        let mut uf = UnionFind::new(n_source + self.target.len());
        let mut linked = BTreeSet::new();
        for link in resolved.iter().filter(|l| l.kind == LinkKind::Core) {
            let s = index[&link.source.id];
            let t = n_source + link.position;
            uf.union(s, t);
            linked.insert(s);
            linked.insert(t);
        }
        let mut groups: BTreeMap<usize, AlignmentGroup> = BTreeMap::new();
        for node in linked {
            let root = uf.find(node);
            let group = groups.entry(root).or_insert_with(|| AlignmentGroup {
                source_ids: BTreeSet::new(),
                target_positions: BTreeSet::new(),
            });
            if node < n_source {
                group.source_ids.insert(self.source[node].id);
            } else {
                group.target_positions.insert(node - n_source);
            }
        }
        let mut groups: Vec<AlignmentGroup> = groups.into_values().collect();
        groups.sort_by_key(|g| g.source_ids.first().copied());
        Ok(groups)
    }
}

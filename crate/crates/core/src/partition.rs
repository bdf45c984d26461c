use alloc::vec::Vec;

use crate::ids::EdgeId;

/// Disjoint sets over `0..n` whose representative is always the smallest
/// member.
#[derive(Clone, Debug)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(len: usize) -> Self {
        UnionFind {
            parent: (0..len).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            // path halving
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    pub(crate) fn union(&mut self, i: usize, j: usize) {
        let (a, b) = (self.find(i), self.find(j));
        if a != b {
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            self.parent[hi] = lo;
        }
    }
}

/// Cell classes of the edges of a typoid: each edge is labelled with the
/// smallest edge of its class.
///
/// Labels may be malformed when built with [`CellPartition::from_labels`];
/// well-formedness (and that a class never spans two hom-sets) is checked
/// when the owning typoid is validated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellPartition {
    labels: Vec<EdgeId>,
}

impl CellPartition {
    /// Every edge in its own class.
    pub fn discrete(edge_count: usize) -> Self {
        CellPartition {
            labels: (0..edge_count).map(EdgeId::new).collect(),
        }
    }

    /// Closure of the given pairs under reflexivity, symmetry and
    /// transitivity. Pairs mentioning out-of-range edges are ignored.
    pub fn from_pairs(edge_count: usize, pairs: impl IntoIterator<Item = (EdgeId, EdgeId)>) -> Self {
        let mut uf = UnionFind::new(edge_count);
        for (e, d) in pairs {
            if e.index() < edge_count && d.index() < edge_count {
                uf.union(e.index(), d.index());
            }
        }
        CellPartition {
            labels: (0..edge_count).map(|i| EdgeId::new(uf.find(i))).collect(),
        }
    }

    /// Groups edges by an arbitrary key; edges with equal keys share a class.
    pub fn from_keys<K: Ord>(keys: &[K]) -> Self {
        let mut order: Vec<usize> = (0..keys.len()).collect();
        order.sort_by(|&a, &b| keys[a].cmp(&keys[b]).then(a.cmp(&b)));
        let mut labels = alloc::vec![EdgeId::new(0); keys.len()];
        let mut i = 0;
        while i < order.len() {
            let rep = order[i];
            let mut j = i;
            while j < order.len() && keys[order[j]] == keys[rep] {
                labels[order[j]] = EdgeId::new(rep);
                j += 1;
            }
            i = j;
        }
        CellPartition { labels }
    }

    /// Raw labels, taken as given.
    pub fn from_labels(labels: Vec<EdgeId>) -> Self {
        CellPartition { labels }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[EdgeId] {
        &self.labels
    }

    /// Class representative of `e`.
    #[inline]
    pub fn class_of(&self, e: EdgeId) -> EdgeId {
        self.labels[e.index()]
    }

    #[inline]
    pub fn same(&self, e: EdgeId, d: EdgeId) -> bool {
        self.labels[e.index()] == self.labels[d.index()]
    }

    /// Representatives in increasing order.
    pub fn representatives(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.labels
            .iter()
            .enumerate()
            .filter(|&(i, l)| l.index() == i)
            .map(|(_, &l)| l)
    }

    pub fn class_count(&self) -> usize {
        self.representatives().count()
    }

    /// Members of every class, indexed by edge: `members()[rep]` lists the
    /// class of `rep`; non-representative slots are empty.
    pub fn members(&self) -> Vec<Vec<EdgeId>> {
        let mut out = alloc::vec![Vec::new(); self.labels.len()];
        for (i, l) in self.labels.iter().enumerate() {
            if let Some(slot) = out.get_mut(l.index()) {
                slot.push(EdgeId::new(i));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_picks_smallest_representative() {
        let p = CellPartition::from_pairs(5, [(EdgeId(4), EdgeId(2)), (EdgeId(2), EdgeId(3))]);
        assert_eq!(p.labels(), &[EdgeId(0), EdgeId(1), EdgeId(2), EdgeId(2), EdgeId(2)]);
        assert_eq!(p.class_count(), 3);
    }

    #[test]
    fn transitive_chain_collapses() {
        let p = CellPartition::from_pairs(
            4,
            [(EdgeId(3), EdgeId(2)), (EdgeId(1), EdgeId(3)), (EdgeId(0), EdgeId(1))],
        );
        assert!(p.labels().iter().all(|&l| l == EdgeId(0)));
    }

    #[test]
    fn keys_group_by_value() {
        let p = CellPartition::from_keys(&['b', 'a', 'b', 'c', 'a']);
        assert_eq!(p.labels(), &[EdgeId(0), EdgeId(1), EdgeId(0), EdgeId(3), EdgeId(1)]);
    }
}

/// Disjoint sets over `0..n` with path halving and union by size.
#[derive(Debug, Clone)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        let (big, small) = if self.size[ra] >= self.size[rb] {
            (ra, rb)
        } else {
            (rb, ra)
        };
        self.parent[small] = big;
        self.size[big] += self.size[small];
    }
}

/// Groups `items` by the union-find root of their key, preserving the
/// first-occurrence order of groups and of items within a group.
pub(crate) fn group_by_root<T: Copy>(
    uf: &mut UnionFind,
    items: impl IntoIterator<Item = (usize, T)>,
) -> Vec<Vec<T>> {
    let mut slot_of_root: Vec<Option<usize>> = vec![None; uf.parent.len()];
    let mut groups: Vec<Vec<T>> = Vec::new();
    for (key, item) in items {
        let root = uf.find(key);
        match slot_of_root[root] {
            Some(slot) => groups[slot].push(item),
            None => {
                slot_of_root[root] = Some(groups.len());
                groups.push(vec![item]);
            }
        }
    }
    groups
}

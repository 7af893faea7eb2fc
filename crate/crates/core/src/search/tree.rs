use crate::count::CountValue;
use crate::engine::Assignment;

/// Compact AND/OR representation of a solution set.
///
/// A `Leaf` is one (partial) solution over its scope. `Or` is the union of
/// its children's solution sets; `And` combines one solution of every child
/// (children have pairwise disjoint scopes) with the `fixed` values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolutionTree {
    Leaf(Assignment),
    Or(Vec<SolutionTree>),
    And {
        children: Vec<SolutionTree>,
        fixed: Assignment,
    },
}

impl SolutionTree {
    pub fn empty() -> SolutionTree {
        SolutionTree::Or(Vec::new())
    }

    /// Number of leaves in the tree (not the number of solutions).
    pub fn leaf_count(&self) -> usize {
        match self {
            SolutionTree::Leaf(_) => 1,
            SolutionTree::Or(ch) | SolutionTree::And { children: ch, .. } => {
                ch.iter().map(Self::leaf_count).sum()
            }
        }
    }

    pub fn node_count(&self) -> usize {
        match self {
            SolutionTree::Leaf(_) => 1,
            SolutionTree::Or(ch) | SolutionTree::And { children: ch, .. } => {
                1 + ch.iter().map(Self::node_count).sum::<usize>()
            }
        }
    }
}

/// Sums at `Or`, products at `And`, one per leaf.
pub fn tree_count<C: CountValue>(tree: &SolutionTree) -> C {
    match tree {
        SolutionTree::Leaf(_) => C::one(),
        SolutionTree::Or(ch) => ch.iter().fold(C::zero(), |acc, c| acc + tree_count::<C>(c)),
        SolutionTree::And { children, .. } => children
            .iter()
            .fold(C::one(), |acc, c| acc * tree_count::<C>(c)),
    }
}

/// The first `max` solutions represented by `tree`, in a deterministic order:
/// `Or` children are concatenated, `And` children are combined with the first
/// child varying slowest.
pub fn tree_expand(tree: &SolutionTree, max: usize) -> Vec<Assignment> {
    if max == 0 {
        return Vec::new();
    }
    match tree {
        SolutionTree::Leaf(a) => vec![a.clone()],
        SolutionTree::Or(children) => {
            let mut out = Vec::new();
            for c in children {
                if out.len() >= max {
                    break;
                }
                out.extend(tree_expand(c, max - out.len()));
            }
            out
        }
        SolutionTree::And { children, fixed } => {
            let parts: Vec<Vec<Assignment>> =
                children.iter().map(|c| tree_expand(c, max)).collect();
            if parts.iter().any(Vec::is_empty) {
                return Vec::new();
            }
            let mut out = Vec::new();
            let mut idx = vec![0usize; parts.len()];
            'outer: loop {
                let mut a = fixed.clone();
                for (p, &i) in parts.iter().zip(&idx) {
                    a.extend_from(&p[i]);
                }
                out.push(a);
                if out.len() >= max {
                    break;
                }
                // odometer: last child varies fastest
                for k in (0..parts.len()).rev() {
                    idx[k] += 1;
                    if idx[k] < parts[k].len() {
                        continue 'outer;
                    }
                    idx[k] = 0;
                }
                break;
            }
            out
        }
    }
}

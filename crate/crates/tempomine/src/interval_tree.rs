//! Augmented red-black tree over closed intervals supporting insertion and
//! all-overlaps search. Payloads are temporal-edge indices; duplicates are
//! allowed. No deletion: construction only ever inserts.

use crate::temporal::Interval;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Color {
    Red,
    Black,
}

const NIL: usize = usize::MAX;

#[derive(Debug, Clone)]
struct Node {
    interval: Interval,
    max: f64,
    color: Color,
    payload: usize,
    left: usize,
    right: usize,
    parent: usize,
}

/// Interval tree keyed by `interval.lo`, augmented with the subtree
/// maximum of `interval.hi`.
#[derive(Debug, Clone)]
pub struct IntervalTree {
    nodes: Vec<Node>,
    root: usize,
}

// Not derived: an empty tree's root must be the NIL sentinel, not 0.
impl Default for IntervalTree {
    fn default() -> Self {
        Self::new()
    }
}

impl IntervalTree {
    pub fn new() -> Self {
        IntervalTree {
            nodes: Vec::new(),
            root: NIL,
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn insert(&mut self, interval: Interval, payload: usize) {
        debug_assert!(interval.lo <= interval.hi);
        let z = self.nodes.len();
        self.nodes.push(Node {
            interval,
            max: interval.hi,
            color: Color::Red,
            payload,
            left: NIL,
            right: NIL,
            parent: NIL,
        });
        // Ordinary BST descent on lo; equal keys go right.
        let mut y = NIL;
        let mut x = self.root;
        while x != NIL {
            y = x;
            x = if interval.lo < self.nodes[x].interval.lo {
                self.nodes[x].left
            } else {
                self.nodes[x].right
            };
        }
        self.nodes[z].parent = y;
        if y == NIL {
            self.root = z;
        } else if interval.lo < self.nodes[y].interval.lo {
            self.nodes[y].left = z;
        } else {
            self.nodes[y].right = z;
        }
        self.update_max_upward(y);
        self.insert_fixup(z);
    }

    /// Returns every stored interval overlapping `query` under the
    /// closed-interval rule, with its payload. Order is the tree's
    /// traversal order: deterministic for a fixed shape.
    pub fn search_all(&self, query: Interval) -> Vec<(Interval, usize)> {
        let mut out = Vec::new();
        self.collect(self.root, query, &mut out);
        out
    }

    fn collect(&self, x: usize, query: Interval, out: &mut Vec<(Interval, usize)>) {
        if x == NIL {
            return;
        }
        let node = &self.nodes[x];
        // Prune: nothing under x can overlap if the subtree max ends
        // before the query begins.
        if node.max < query.lo {
            return;
        }
        self.collect(node.left, query, out);
        if node.interval.overlaps(&query) {
            out.push((node.interval, node.payload));
        }
        // Right subtree lows are >= node.lo; descend only while they can
        // still start before the query ends.
        if node.interval.lo <= query.hi {
            self.collect(node.right, query, out);
        }
    }

    fn node_max(&self, x: usize) -> f64 {
        let node = &self.nodes[x];
        let mut m = node.interval.hi;
        if node.left != NIL {
            m = m.max(self.nodes[node.left].max);
        }
        if node.right != NIL {
            m = m.max(self.nodes[node.right].max);
        }
        m
    }

    fn refresh_max(&mut self, x: usize) {
        self.nodes[x].max = self.node_max(x);
    }

    fn update_max_upward(&mut self, mut x: usize) {
        while x != NIL {
            self.refresh_max(x);
            x = self.nodes[x].parent;
        }
    }

    fn rotate_left(&mut self, x: usize) {
        let y = self.nodes[x].right;
        self.nodes[x].right = self.nodes[y].left;
        if self.nodes[y].left != NIL {
            let l = self.nodes[y].left;
            self.nodes[l].parent = x;
        }
        self.nodes[y].parent = self.nodes[x].parent;
        let p = self.nodes[x].parent;
        if p == NIL {
            self.root = y;
        } else if self.nodes[p].left == x {
            self.nodes[p].left = y;
        } else {
            self.nodes[p].right = y;
        }
        self.nodes[y].left = x;
        self.nodes[x].parent = y;
        self.refresh_max(x);
        self.refresh_max(y);
    }

    fn rotate_right(&mut self, x: usize) {
        let y = self.nodes[x].left;
        self.nodes[x].left = self.nodes[y].right;
        if self.nodes[y].right != NIL {
            let r = self.nodes[y].right;
            self.nodes[r].parent = x;
        }
        self.nodes[y].parent = self.nodes[x].parent;
        let p = self.nodes[x].parent;
        if p == NIL {
            self.root = y;
        } else if self.nodes[p].left == x {
            self.nodes[p].left = y;
        } else {
            self.nodes[p].right = y;
        }
        self.nodes[y].right = x;
        self.nodes[x].parent = y;
        self.refresh_max(x);
        self.refresh_max(y);
    }

    fn insert_fixup(&mut self, mut z: usize) {
        while z != self.root && self.color(self.nodes[z].parent) == Color::Red {
            let p = self.nodes[z].parent;
            let g = self.nodes[p].parent;
            if p == self.nodes[g].left {
                let uncle = self.nodes[g].right;
                if self.color(uncle) == Color::Red {
                    self.nodes[p].color = Color::Black;
                    self.nodes[uncle].color = Color::Black;
                    self.nodes[g].color = Color::Red;
                    z = g;
                } else {
                    if z == self.nodes[p].right {
                        z = p;
                        self.rotate_left(z);
                    }
                    let p = self.nodes[z].parent;
                    let g = self.nodes[p].parent;
                    self.nodes[p].color = Color::Black;
                    self.nodes[g].color = Color::Red;
                    self.rotate_right(g);
                }
            } else {
                let uncle = self.nodes[g].left;
                if self.color(uncle) == Color::Red {
                    self.nodes[p].color = Color::Black;
                    self.nodes[uncle].color = Color::Black;
                    self.nodes[g].color = Color::Red;
                    z = g;
                } else {
                    if z == self.nodes[p].left {
                        z = p;
                        self.rotate_right(z);
                    }
                    let p = self.nodes[z].parent;
                    let g = self.nodes[p].parent;
                    self.nodes[p].color = Color::Black;
                    self.nodes[g].color = Color::Red;
                    self.rotate_left(g);
                }
            }
        }
        let r = self.root;
        self.nodes[r].color = Color::Black;
    }

    fn color(&self, x: usize) -> Color {
        if x == NIL {
            Color::Black
        } else {
            self.nodes[x].color
        }
    }

    /// In-order interval sequence, used by tests.
    pub fn in_order(&self) -> Vec<Interval> {
        let mut out = Vec::new();
        fn walk(tree: &IntervalTree, x: usize, out: &mut Vec<Interval>) {
            if x == NIL {
                return;
            }
            walk(tree, tree.nodes[x].left, out);
            out.push(tree.nodes[x].interval);
            walk(tree, tree.nodes[x].right, out);
        }
        walk(self, self.root, &mut out);
        out
    }

    /// Verifies every structural invariant: red-black coloring, equal
    /// black height on all paths, BST order on `lo`, and stored subtree
    /// maxima matching a bottom-up recomputation. Panics with a message
    /// on the first violation.
    pub fn check_invariants(&self) {
        if self.root == NIL {
            return;
        }
        assert_eq!(
            self.color(self.root),
            Color::Black,
            "root must be black"
        );
        self.check_node(self.root);
    }

    // Returns the black height of the subtree.
    fn check_node(&self, x: usize) -> usize {
        if x == NIL {
            return 1;
        }
        let node = &self.nodes[x];
        if node.color == Color::Red {
            assert_eq!(self.color(node.left), Color::Black, "red-red violation");
            assert_eq!(self.color(node.right), Color::Black, "red-red violation");
        }
        if node.left != NIL {
            assert!(
                self.nodes[node.left].interval.lo <= node.interval.lo,
                "BST order violated on left child"
            );
            assert_eq!(self.nodes[node.left].parent, x, "broken parent link");
        }
        if node.right != NIL {
            assert!(
                self.nodes[node.right].interval.lo >= node.interval.lo,
                "BST order violated on right child"
            );
            assert_eq!(self.nodes[node.right].parent, x, "broken parent link");
        }
        assert_eq!(node.max, self.node_max(x), "stale subtree max");
        let lh = self.check_node(node.left);
        let rh = self.check_node(node.right);
        assert_eq!(lh, rh, "black height mismatch");
        lh + usize::from(node.color == Color::Black)
    }

    /// Height of the tree (0 for empty), used by the balance property test.
    pub fn height(&self) -> usize {
        fn depth(tree: &IntervalTree, x: usize) -> usize {
            if x == NIL {
                0
            } else {
                1 + depth(tree, tree.nodes[x].left).max(depth(tree, tree.nodes[x].right))
            }
        }
        depth(self, self.root)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;

    fn iv(lo: f64, hi: f64) -> Interval {
        Interval::new(lo, hi)
    }

    #[test]
    fn insert_into_empty() {
        let mut t = IntervalTree::new();
        t.insert(iv(3.0, 7.0), 0);
        assert_eq!(t.len(), 1);
        assert_eq!(t.nodes[t.root].color, Color::Black);
        assert_eq!(t.nodes[t.root].max, 7.0);
    }

    #[test]
    fn in_order_by_lo() {
        let mut t = IntervalTree::new();
        t.insert(iv(8.0, 12.0), 0);
        t.insert(iv(5.0, 7.0), 1);
        t.insert(iv(14.0, 20.0), 2);
        let lows: Vec<f64> = t.in_order().iter().map(|i| i.lo).collect();
        assert_eq!(lows, vec![5.0, 8.0, 14.0]);
    }

    #[test]
    fn textbook_walkthrough_query() {
        // Tree containing [8,12] on a left branch; query [9,11] must find it.
        let mut t = IntervalTree::new();
        for (lo, hi) in [
            (16.0, 21.0),
            (8.0, 12.0),
            (25.0, 30.0),
            (0.0, 4.0),
            (15.0, 23.0),
            (5.0, 8.0),
            (6.0, 10.0),
            (17.0, 19.0),
        ] {
            t.insert(iv(lo, hi), 0);
        }
        let hits = t.search_all(iv(9.0, 11.0));
        assert!(hits.iter().any(|(i, _)| *i == iv(8.0, 12.0)));
    }

    #[test]
    fn empty_tree_search() {
        let t = IntervalTree::new();
        assert!(t.search_all(iv(0.0, 100.0)).is_empty());
    }

    #[test]
    fn touching_endpoints_overlap() {
        let mut t = IntervalTree::new();
        t.insert(iv(0.0, 1.0), 0);
        let hits = t.search_all(iv(1.0, 2.0));
        assert_eq!(hits.len(), 1);
        assert_eq!(hits[0].0, iv(0.0, 1.0));
    }

    #[test]
    fn point_intervals() {
        let mut t = IntervalTree::new();
        t.insert(iv(3.0, 3.0), 0);
        assert_eq!(t.search_all(iv(3.0, 3.0)).len(), 1);
        assert!(t.search_all(iv(3.1, 4.0)).is_empty());
    }

    #[test]
    fn random_inserts_keep_invariants() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        let mut t = IntervalTree::new();
        for i in 0..1000 {
            let lo = rng.gen_range(0..1000) as f64;
            let hi = lo + rng.gen_range(0..100) as f64;
            t.insert(iv(lo, hi), i);
        }
        t.check_invariants();
        let n = t.len();
        assert!(t.height() <= 2 * ((n + 1) as f64).log2().ceil() as usize);
    }

    #[test]
    fn search_matches_linear_scan() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        let mut t = IntervalTree::new();
        let mut stored = Vec::new();
        for i in 0..500 {
            let lo = rng.gen_range(0..500) as f64;
            let hi = lo + rng.gen_range(0..80) as f64;
            t.insert(iv(lo, hi), i);
            stored.push(iv(lo, hi));
        }
        for _ in 0..500 {
            let lo = rng.gen_range(0..550) as f64;
            let hi = lo + rng.gen_range(0..80) as f64;
            let q = iv(lo, hi);
            let mut got: Vec<usize> = t.search_all(q).into_iter().map(|(_, p)| p).collect();
            got.sort_unstable();
            let want: Vec<usize> = stored
                .iter()
                .enumerate()
                .filter(|(_, i)| i.overlaps(&q))
                .map(|(p, _)| p)
                .collect();
            assert_eq!(got, want);
        }
    }

    #[test]
    fn duplicates_allowed() {
        let mut t = IntervalTree::new();
        t.insert(iv(1.0, 2.0), 0);
        t.insert(iv(1.0, 2.0), 1);
        assert_eq!(t.search_all(iv(1.5, 1.5)).len(), 2);
        t.check_invariants();
    }
}

//! Maximum cardinality matching in general graphs.
//!
//! Edmonds' blossom method: a greedy matching is grown first, then each
//! remaining free vertex launches an alternating-forest search that
//! contracts odd cycles on the fly. A failed search only touches the free
//! vertex's component, so near-optimal greedy starts finish in near-linear
//! time.

use super::Graph;

const NONE: usize = usize::MAX;

/// A set of pairwise disjoint edges of some host graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    edges: Vec<(usize, usize)>,
}

impl Matching {
    pub fn size(&self) -> usize {
        self.edges.len()
    }

    /// Edges as (u, v) with u < v, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Checks that every edge exists in `host` and no vertex repeats.
    pub fn is_valid_for(&self, host: &Graph) -> bool {
        let mut seen = vec![false; host.vertex_count()];
        for &(u, v) in &self.edges {
            if u >= host.vertex_count() || v >= host.vertex_count() || !host.has_edge(u, v) {
                return false;
            }
            if seen[u] || seen[v] {
                return false;
            }
            seen[u] = true;
            seen[v] = true;
        }
        true
    }
}

/// Computes a maximum matching; the returned size equals the matching number.
pub fn max_matching(g: &Graph) -> Matching {
    let n = g.vertex_count();
    let mut mate = vec![NONE; n];

    // greedy seed in canonical edge order
    for u in 0..n {
        if mate[u] != NONE {
            continue;
        }
        for v in g.neighbors(u) {
            if mate[v] == NONE {
                mate[u] = v;
                mate[v] = u;
                break;
            }
        }
    }

    let mut search = BlossomSearch {
        g,
        mate: &mut mate,
        parent: vec![NONE; n],
        base: vec![NONE; n],
        in_queue: vec![false; n],
        in_blossom: vec![false; n],
        lca_mark: vec![false; n],
        queue: Vec::with_capacity(n),
    };
    for root in 0..n {
        if search.mate[root] == NONE {
            search.augment_from(root);
        }
    }

    let mut edges: Vec<(usize, usize)> = (0..n)
        .filter(|&u| mate[u] != NONE && u < mate[u])
        .map(|u| (u, mate[u]))
        .collect();
    edges.sort_unstable();
    Matching { edges }
}

struct BlossomSearch<'a> {
    g: &'a Graph,
    mate: &'a mut Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    in_queue: Vec<bool>,
    in_blossom: Vec<bool>,
    lca_mark: Vec<bool>,
    queue: Vec<usize>,
}

impl BlossomSearch<'_> {
    /// Tries to find an augmenting path from the free vertex `root`.
    fn augment_from(&mut self, root: usize) {
        let n = self.g.vertex_count();
        for v in 0..n {
            self.parent[v] = NONE;
            self.base[v] = v;
            self.in_queue[v] = false;
        }
        self.queue.clear();
        self.queue.push(root);
        self.in_queue[root] = true;
        let mut head = 0;

        while head < self.queue.len() {
            let v = self.queue[head];
            head += 1;
            for to in self.g.neighbors(v) {
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    // `to` is an even vertex of the forest: odd cycle found
                    let cycle_base = self.lowest_common_base(v, to, root);
                    self.in_blossom.iter_mut().for_each(|b| *b = false);
                    self.mark_blossom_path(v, cycle_base, to);
                    self.mark_blossom_path(to, cycle_base, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cycle_base;
                            if !self.in_queue[i] {
                                self.in_queue[i] = true;
                                self.queue.push(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        // exposed vertex: flip the alternating path back to root
                        self.flip_path(to);
                        return;
                    }
                    let m = self.mate[to];
                    if !self.in_queue[m] {
                        self.in_queue[m] = true;
                        self.queue.push(m);
                    }
                }
            }
        }
    }

    /// First common base on the two alternating paths to the root.
    fn lowest_common_base(&mut self, a: usize, b: usize, _root: usize) -> usize {
        self.lca_mark.iter_mut().for_each(|m| *m = false);
        let mut v = a;
        loop {
            v = self.base[v];
            self.lca_mark[v] = true;
            if self.mate[v] == NONE {
                break;
            }
            v = self.parent[self.mate[v]];
        }
        let mut v = b;
        loop {
            v = self.base[v];
            if self.lca_mark[v] {
                return v;
            }
            v = self.parent[self.mate[v]];
        }
    }

    /// Walks from `v` up to the cycle base, marking blossom members and
    /// rethreading parent pointers across the odd cycle.
    fn mark_blossom_path(&mut self, mut v: usize, cycle_base: usize, mut child: usize) {
        while self.base[v] != cycle_base {
            let mv = self.mate[v];
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[mv]] = true;
            self.parent[v] = child;
            child = mv;
            v = self.parent[mv];
        }
    }

    /// Augments along parent pointers from the exposed vertex `v`.
    fn flip_path(&mut self, mut v: usize) {
        while v != NONE {
            let pv = self.parent[v];
            let next = self.mate[pv];
            self.mate[v] = pv;
            self.mate[pv] = v;
            v = next;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::petersen;
    use super::*;

    /// Independent oracle: maximum matching by recursion over edges.
    pub(crate) fn brute_force_matching_number(g: &Graph) -> usize {
        fn rec(edges: &[(usize, usize)], used: &mut Vec<bool>, idx: usize) -> usize {
            if idx == edges.len() {
                return 0;
            }
            let mut best = rec(edges, used, idx + 1);
            let (u, v) = edges[idx];
            if !used[u] && !used[v] {
                used[u] = true;
                used[v] = true;
                best = best.max(1 + rec(edges, used, idx + 1));
                used[u] = false;
                used[v] = false;
            }
            best
        }
        let edges: Vec<_> = g.edges().collect();
        rec(&edges, &mut vec![false; g.vertex_count()], 0)
    }

    #[test]
    fn known_matching_numbers() {
        assert_eq!(max_matching(&Graph::cycle(5)).size(), 2);
        assert_eq!(max_matching(&Graph::complete(6)).size(), 3);
        assert_eq!(max_matching(&petersen()).size(), 5);
        assert_eq!(brute_force_matching_number(&petersen()), 5);
        assert_eq!(max_matching(&Graph::empty(0)).size(), 0);
        assert_eq!(max_matching(&Graph::empty(7)).size(), 0);
    }

    #[test]
    fn perfect_matching_graph() {
        let n = 12;
        let g = Graph::from_edges(n, &(0..n / 2).map(|i| (2 * i, 2 * i + 1)).collect::<Vec<_>>());
        let m = max_matching(&g);
        assert_eq!(m.size(), n / 2);
        assert!(m.is_valid_for(&g));
    }

    #[test]
    fn blossom_needs_contraction() {
        // two triangles joined by a path: greedy alone can get stuck
        let g = Graph::from_edges(
            8,
            &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 6), (6, 4), (6, 7)],
        );
        assert_eq!(max_matching(&g).size(), brute_force_matching_number(&g));
    }

    #[test]
    fn matches_brute_force_on_random_graphs() {
        use rand::Rng;
        let mut rng = crate::stream::child_stream(903, "matching-oracle");
        for n in 2..=12usize {
            for _ in 0..25 {
                let p = rng.gen::<f64>();
                let mut g = Graph::empty(n);
                for u in 0..n {
                    for v in (u + 1)..n {
                        if rng.gen::<f64>() < p {
                            g.add_edge(u, v);
                        }
                    }
                }
                let m = max_matching(&g);
                assert!(m.is_valid_for(&g), "invalid matching n={n}");
                assert_eq!(m.size(), brute_force_matching_number(&g), "size n={n}");
            }
        }
    }

    #[test]
    fn matching_is_maximal() {
        use rand::Rng;
        let mut rng = crate::stream::child_stream(904, "matching-maximal");
        for _ in 0..50 {
            let n = 20;
            let mut g = Graph::empty(n);
            for u in 0..n {
                for v in (u + 1)..n {
                    if rng.gen::<f64>() < 0.2 {
                        g.add_edge(u, v);
                    }
                }
            }
            let m = max_matching(&g);
            assert!(m.is_valid_for(&g));
            let mut covered = vec![false; n];
            for &(u, v) in m.edges() {
                covered[u] = true;
                covered[v] = true;
            }
            for (u, v) in g.edges() {
                assert!(covered[u] || covered[v], "augmenting edge ({u},{v}) left over");
            }
        }
    }
}

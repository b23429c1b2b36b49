//! Dense bitset graph kernel.
//!
//! Finite simple undirected graphs on vertices `0..n-1`, stored as one
//! adjacency bitset row per vertex (machine-word blocks). Rows make triangle
//! and common-neighborhood queries word-parallel, which is what the exact
//! search kernels and the construction verifier lean on.
//!
//! Graphs are immutable once built (mutators are only used during
//! construction); all solvers keep their mutable state in per-call scratch,
//! so sharing a `&Graph` across threads is safe.

mod coloring;
mod matching;

pub use coloring::{chromatic_number, chromatic_number_limited, DEFAULT_EXACT_COLORING_LIMIT};
pub use matching::{max_matching, Matching};

/// Simple undirected graph with dense adjacency rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, e={})", self.n, self.edge_count())
    }
}

#[inline]
pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        let words = words_for(n);
        Graph { n, words, bits: vec![0u64; n * words] }
    }

    /// Complete graph K_n.
    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in (u + 1)..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    /// Cycle C_n with edges {i, i+1 mod n}; requires n >= 3.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        let mut g = Graph::empty(n);
        for i in 0..n {
            g.add_edge(i, (i + 1) % n);
        }
        g
    }

    /// Builds a graph from an edge list.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub(crate) fn words_per_row(&self) -> usize {
        self.words
    }

    /// Inserts the undirected edge {u, v}. Panics on self-loops or
    /// out-of-range endpoints.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v, "self-loop {u}");
        assert!(u < self.n && v < self.n, "edge ({u},{v}) out of range n={}", self.n);
        self.bits[u * self.words + v / 64] |= 1u64 << (v % 64);
        self.bits[v * self.words + u / 64] |= 1u64 << (u % 64);
    }

    /// Removes the edge {u, v} if present.
    pub fn remove_edge(&mut self, u: usize, v: usize) {
        assert!(u != v && u < self.n && v < self.n);
        self.bits[u * self.words + v / 64] &= !(1u64 << (v % 64));
        self.bits[v * self.words + u / 64] &= !(1u64 << (u % 64));
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        debug_assert!(u < self.n && v < self.n);
        self.bits[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    /// Adjacency row of `u` as word blocks.
    #[inline]
    pub(crate) fn row(&self, u: usize) -> &[u64] {
        &self.bits[u * self.words..(u + 1) * self.words]
    }

    #[inline]
    pub(crate) fn row_mut(&mut self, u: usize) -> &mut [u64] {
        &mut self.bits[u * self.words..(u + 1) * self.words]
    }

    pub(crate) fn rows_mut(&mut self) -> std::slice::ChunksMut<'_, u64> {
        self.bits.chunks_mut(self.words)
    }

    #[inline]
    pub fn degree(&self, u: usize) -> usize {
        self.row(u).iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Maximum degree; 0 on the empty vertex set.
    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|u| self.degree(u)).max().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum::<usize>() / 2
    }

    /// Iterates neighbors of `u` in ascending order.
    pub fn neighbors(&self, u: usize) -> BitIter<'_> {
        BitIter::new(self.row(u))
    }

    /// Iterates all edges {u, v} with u < v in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.neighbors(u).skip_while(move |&v| v <= u).map(move |v| (u, v))
        })
    }

    /// Number of common neighbors of `u` and `v`.
    pub fn common_neighbor_count(&self, u: usize, v: usize) -> usize {
        self.row(u)
            .iter()
            .zip(self.row(v))
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    #[inline]
    pub(crate) fn has_common_neighbor(&self, u: usize, v: usize) -> bool {
        self.row(u).iter().zip(self.row(v)).any(|(a, b)| a & b != 0)
    }

    /// Complement graph: edge {u,v} present iff absent here, u != v.
    pub fn complement(&self) -> Graph {
        let mut out = Graph::empty(self.n);
        if self.n == 0 {
            return out;
        }
        let tail_mask = if self.n % 64 == 0 { u64::MAX } else { (1u64 << (self.n % 64)) - 1 };
        for u in 0..self.n {
            let src = self.row(u);
            let dst = &mut out.bits[u * self.words..(u + 1) * self.words];
            for w in 0..self.words {
                dst[w] = !src[w];
            }
            dst[self.words - 1] &= tail_mask;
            dst[u / 64] &= !(1u64 << (u % 64));
        }
        out
    }

    /// True iff `other` has the same vertex count and its edges are a subset.
    pub fn contains_subgraph(&self, other: &Graph) -> bool {
        self.n == other.n
            && self
                .bits
                .iter()
                .zip(&other.bits)
                .all(|(big, small)| small & !big == 0)
    }

    /// Lists all triangles as sorted triples (u, v, w), u < v < w.
    pub fn list_triangles(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for (u, v) in self.edges() {
            let ru = self.row(u);
            let rv = self.row(v);
            // only report w > v so each triangle appears once
            let start = v / 64;
            for w_idx in start..self.words {
                let mut word = ru[w_idx] & rv[w_idx];
                if w_idx == start {
                    word &= !((1u64 << (v % 64)) - 1) & !(1u64 << (v % 64));
                }
                while word != 0 {
                    let w = w_idx * 64 + word.trailing_zeros() as usize;
                    out.push((u, v, w));
                    word &= word - 1;
                }
            }
        }
        out
    }

    /// True iff the graph has no triangle.
    pub fn is_triangle_free(&self) -> bool {
        for (u, v) in self.edges() {
            if self.has_common_neighbor(u, v) {
                return false;
            }
        }
        true
    }

    /// Maximum, over all edges, of the number of triangles containing the edge.
    pub fn max_triangles_per_edge(&self) -> usize {
        self.edges()
            .map(|(u, v)| self.common_neighbor_count(u, v))
            .max()
            .unwrap_or(0)
    }

    /// True iff the independence number is at most 2, decided via
    /// triangle-freeness of the complement.
    pub fn independence_at_most_two(&self) -> bool {
        self.complement().is_triangle_free()
    }

    /// Induced subgraph on `verts` (deduplicated, relabeled in the given
    /// order). Returns the subgraph together with the old labels.
    pub fn induced(&self, verts: &[usize]) -> (Graph, Vec<usize>) {
        let mut seen = vec![false; self.n];
        let mut labels = Vec::with_capacity(verts.len());
        for &v in verts {
            assert!(v < self.n);
            if !seen[v] {
                seen[v] = true;
                labels.push(v);
            }
        }
        let mut g = Graph::empty(labels.len());
        for i in 0..labels.len() {
            for j in (i + 1)..labels.len() {
                if self.has_edge(labels[i], labels[j]) {
                    g.add_edge(i, j);
                }
            }
        }
        (g, labels)
    }

    /// Copy with one edge removed.
    pub fn without_edge(&self, u: usize, v: usize) -> Graph {
        let mut g = self.clone();
        g.remove_edge(u, v);
        g
    }

    /// Copy with vertex `v` deleted and higher labels shifted down.
    pub fn without_vertex(&self, v: usize) -> Graph {
        assert!(v < self.n);
        let keep: Vec<usize> = (0..self.n).filter(|&u| u != v).collect();
        self.induced(&keep).0
    }

    /// Connected components as sorted vertex lists, ordered by lowest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.n];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for start in 0..self.n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut stack = vec![start];
            let mut members = vec![];
            comp[start] = id;
            while let Some(u) = stack.pop() {
                members.push(u);
                for v in self.neighbors(u) {
                    if comp[v] == usize::MAX {
                        comp[v] = id;
                        stack.push(v);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// BFS 2-coloring; `None` when an odd cycle obstructs.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let mut side = vec![None; self.n];
        for start in 0..self.n {
            if side[start].is_some() {
                continue;
            }
            side[start] = Some(false);
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                let su = side[u].unwrap();
                for v in self.neighbors(u) {
                    match side[v] {
                        None => {
                            side[v] = Some(!su);
                            queue.push_back(v);
                        }
                        Some(sv) if sv == su => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(side.into_iter().map(|s| s.unwrap()).collect())
    }
}

/// Iterator over set bit positions of a word slice.
pub struct BitIter<'a> {
    words: &'a [u64],
    idx: usize,
    current: u64,
}

impl<'a> BitIter<'a> {
    pub(crate) fn new(words: &'a [u64]) -> Self {
        let current = if words.is_empty() { 0 } else { words[0] };
        BitIter { words, idx: 0, current }
    }
}

impl Iterator for BitIter<'_> {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        while self.current == 0 {
            self.idx += 1;
            if self.idx >= self.words.len() {
                return None;
            }
            self.current = self.words[self.idx];
        }
        let bit = self.current.trailing_zeros() as usize;
        self.current &= self.current - 1;
        Some(self.idx * 64 + bit)
    }
}

#[cfg(test)]
pub(crate) fn petersen() -> Graph {
    // outer C_5, inner 5-cycle with step 2, spokes i -- i+5
    let mut g = Graph::empty(10);
    for i in 0..5 {
        g.add_edge(i, (i + 1) % 5);
        g.add_edge(5 + i, 5 + (i + 2) % 5);
        g.add_edge(i, i + 5);
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complement_of_complete_is_empty() {
        let g = Graph::complete(4).complement();
        assert_eq!(g.edge_count(), 0);
        assert_eq!(g.vertex_count(), 4);
    }

    #[test]
    fn complement_of_order_zero() {
        let g = Graph::empty(0).complement();
        assert_eq!(g.vertex_count(), 0);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn c5_is_self_complementary() {
        let c5 = Graph::cycle(5);
        let co = c5.complement();
        // complement of 0-1-2-3-4-0 is the pentagram 0-2-4-1-3-0
        for u in 0..5 {
            for v in (u + 1)..5 {
                assert_eq!(co.has_edge(u, v), !c5.has_edge(u, v));
            }
        }
        assert_eq!(co.edge_count(), 5);
        assert_eq!(co.max_degree(), 2);
        assert!(co.is_triangle_free());
    }

    #[test]
    fn triangle_listing_matches_known_counts() {
        assert_eq!(Graph::complete(4).list_triangles().len(), 4);
        assert_eq!(Graph::cycle(6).list_triangles().len(), 0);
        assert!(Graph::cycle(6).is_triangle_free());
        assert_eq!(petersen().list_triangles().len(), 0);
        assert!(petersen().is_triangle_free());
    }

    #[test]
    fn triangle_listing_is_exhaustive_triple_scan() {
        // oracle: scan all triples directly
        let gs = [Graph::complete(5), Graph::cycle(7), petersen()];
        for g in &gs {
            let n = g.vertex_count();
            let mut expect = Vec::new();
            for u in 0..n {
                for v in (u + 1)..n {
                    for w in (v + 1)..n {
                        if g.has_edge(u, v) && g.has_edge(u, w) && g.has_edge(v, w) {
                            expect.push((u, v, w));
                        }
                    }
                }
            }
            assert_eq!(g.list_triangles(), expect);
        }
    }

    #[test]
    fn independence_examples() {
        assert!(Graph::cycle(5).independence_at_most_two());
        assert!(!Graph::cycle(6).independence_at_most_two());
        assert!(Graph::empty(1).independence_at_most_two());
    }

    #[test]
    fn max_degree_examples() {
        let mut star = Graph::empty(6);
        for leaf in 1..6 {
            star.add_edge(0, leaf);
        }
        assert_eq!(star.max_degree(), 5);
        assert_eq!(Graph::empty(3).max_degree(), 0);
        assert_eq!(Graph::cycle(5).max_degree(), 2);
    }

    #[test]
    fn max_triangles_per_edge_examples() {
        assert_eq!(Graph::complete(4).max_triangles_per_edge(), 2);
        assert_eq!(Graph::complete(5).max_triangles_per_edge(), 3);
        assert_eq!(Graph::cycle(6).max_triangles_per_edge(), 0);
    }

    #[test]
    fn components_and_bipartition() {
        let g = Graph::from_edges(5, &[(0, 1), (2, 3)]);
        assert_eq!(g.components(), vec![vec![0, 1], vec![2, 3], vec![4]]);
        assert!(Graph::cycle(6).bipartition().is_some());
        assert!(Graph::cycle(5).bipartition().is_none());
        assert!(petersen().bipartition().is_none());
    }

    #[test]
    fn induced_and_deletion_helpers() {
        let g = Graph::cycle(5);
        let (sub, labels) = g.induced(&[1, 2, 4]);
        assert_eq!(labels, vec![1, 2, 4]);
        assert!(sub.has_edge(0, 1)); // 1-2
        assert!(!sub.has_edge(0, 2)); // 1-4
        let h = g.without_edge(0, 1);
        assert_eq!(h.edge_count(), 4);
        let k = g.without_vertex(0);
        assert_eq!(k.vertex_count(), 4);
        assert_eq!(k.edge_count(), 3);
    }

    #[test]
    fn edge_iteration_is_lexicographic() {
        let g = Graph::from_edges(4, &[(2, 3), (0, 2), (0, 1)]);
        let edges: Vec<_> = g.edges().collect();
        assert_eq!(edges, vec![(0, 1), (0, 2), (2, 3)]);
    }
}

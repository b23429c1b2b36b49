//! Exact chromatic number by branch and bound.
//!
//! Saturation-degree branching with a greedy clique lower bound and a DSATUR
//! greedy upper bound. All tie-breaks go to the lowest vertex index, so the
//! result and its internal search order are reproducible.

use super::Graph;
use crate::error::{Error, Result};

/// Largest graph the exact coloring solver accepts by default.
pub const DEFAULT_EXACT_COLORING_LIMIT: usize = 64;

/// Exact chromatic number with the default size limit.
pub fn chromatic_number(g: &Graph) -> Result<usize> {
    chromatic_number_limited(g, DEFAULT_EXACT_COLORING_LIMIT)
}

/// Exact chromatic number, refusing graphs larger than `limit` vertices.
/// The solver works on word-sized masks, so limits above 64 are capped.
pub fn chromatic_number_limited(g: &Graph, limit: usize) -> Result<usize> {
    let n = g.vertex_count();
    let limit = limit.min(64);
    if n > limit {
        return Err(Error::LimitExceeded { what: "chromatic number", n, limit });
    }
    if n == 0 {
        return Ok(0);
    }
    let adj: Vec<u64> = (0..n)
        .map(|u| g.neighbors(u).fold(0u64, |acc, v| acc | (1 << v)))
        .collect();
    if adj.iter().all(|&a| a == 0) {
        return Ok(1);
    }

    let clique = greedy_clique(&adj, n);
    let lower = clique.len();
    let upper = dsatur_greedy(&adj, n);
    if lower == upper {
        return Ok(lower);
    }

    let mut solver = Solver {
        adj: &adj,
        n,
        colors: vec![0u32; n],
        best: upper,
    };
    // pin a maximum greedy clique to colors 1..=k; sound because every proper
    // coloring separates a clique and colors are interchangeable
    for (c, &v) in clique.iter().enumerate() {
        solver.colors[v] = c as u32 + 1;
    }
    solver.branch(n - clique.len(), lower as u32);
    Ok(solver.best)
}

fn greedy_clique(adj: &[u64], n: usize) -> Vec<usize> {
    // grow from each start vertex, always adding the candidate with the most
    // candidate-set neighbors, ties to the lowest index
    let mut best: Vec<usize> = Vec::new();
    for start in 0..n {
        let mut clique = vec![start];
        let mut cand = adj[start];
        while cand != 0 {
            let mut pick = usize::MAX;
            let mut pick_score = 0u32;
            let mut c = cand;
            while c != 0 {
                let v = c.trailing_zeros() as usize;
                c &= c - 1;
                let score = (adj[v] & cand).count_ones();
                if pick == usize::MAX || score > pick_score {
                    pick = v;
                    pick_score = score;
                }
            }
            clique.push(pick);
            cand &= adj[pick];
        }
        if clique.len() > best.len() {
            best = clique;
        }
    }
    best.sort_unstable();
    best
}

fn dsatur_greedy(adj: &[u64], n: usize) -> usize {
    let mut color = vec![0u32; n];
    let mut used_masks = vec![0u64; n]; // bit c-1 set when a neighbor has color c
    let mut max_color = 0;
    for _ in 0..n {
        // most saturated uncolored vertex, tie: highest degree, tie: lowest index
        let mut pick = usize::MAX;
        let mut pick_key = (0u32, 0u32);
        for v in 0..n {
            if color[v] != 0 {
                continue;
            }
            let key = (used_masks[v].count_ones(), adj[v].count_ones());
            if pick == usize::MAX || key > pick_key {
                pick = v;
                pick_key = key;
            }
        }
        let c = (used_masks[pick].trailing_ones() + 1).min(64);
        color[pick] = c;
        max_color = max_color.max(c);
        let mut nb = adj[pick];
        while nb != 0 {
            let w = nb.trailing_zeros() as usize;
            nb &= nb - 1;
            used_masks[w] |= 1 << (c - 1);
        }
    }
    max_color as usize
}

struct Solver<'a> {
    adj: &'a [u64],
    n: usize,
    colors: Vec<u32>, // 0 = uncolored
    best: usize,
}

impl Solver<'_> {
    fn branch(&mut self, uncolored: usize, used: u32) {
        if used as usize >= self.best {
            return;
        }
        if uncolored == 0 {
            self.best = used as usize;
            return;
        }
        // most saturated uncolored vertex, ties to lowest index
        let mut pick = usize::MAX;
        let mut pick_sat = 0u32;
        for v in 0..self.n {
            if self.colors[v] != 0 {
                continue;
            }
            let sat = self.saturation_mask(v).count_ones();
            if pick == usize::MAX || sat > pick_sat {
                pick = v;
                pick_sat = sat;
            }
        }
        let forbidden = self.saturation_mask(pick);
        let ceiling = (used + 1).min(self.best as u32 - 1);
        for c in 1..=ceiling {
            if forbidden >> (c - 1) & 1 == 1 {
                continue;
            }
            self.colors[pick] = c;
            self.branch(uncolored - 1, used.max(c));
            self.colors[pick] = 0;
        }
    }

    #[inline]
    fn saturation_mask(&self, v: usize) -> u64 {
        let mut mask = 0u64;
        let mut nb = self.adj[v];
        while nb != 0 {
            let w = nb.trailing_zeros() as usize;
            nb &= nb - 1;
            if self.colors[w] != 0 {
                mask |= 1 << (self.colors[w] - 1);
            }
        }
        mask
    }
}

#[cfg(test)]
mod tests {
    use super::super::petersen;
    use super::*;

    /// Independent oracle: smallest k admitting a proper coloring, found by
    /// plain backtracking over vertices in index order.
    pub(crate) fn brute_force_chromatic(g: &Graph) -> usize {
        let n = g.vertex_count();
        if n == 0 {
            return 0;
        }
        for k in 1..=n {
            if can_color(g, &mut vec![0u32; n], 0, k as u32) {
                return k;
            }
        }
        unreachable!()
    }

    fn can_color(g: &Graph, colors: &mut Vec<u32>, v: usize, k: u32) -> bool {
        if v == g.vertex_count() {
            return true;
        }
        for c in 1..=k {
            if g.neighbors(v).all(|w| colors[w] != c) {
                colors[v] = c;
                if can_color(g, colors, v + 1, k) {
                    return true;
                }
                colors[v] = 0;
            }
        }
        false
    }

    #[test]
    fn known_chromatic_numbers() {
        assert_eq!(chromatic_number(&Graph::cycle(5)).unwrap(), 3);
        assert_eq!(chromatic_number(&Graph::complete(7)).unwrap(), 7);
        assert_eq!(chromatic_number(&Graph::cycle(6)).unwrap(), 2);
        assert_eq!(chromatic_number(&Graph::empty(0)).unwrap(), 0);
        assert_eq!(chromatic_number(&Graph::empty(5)).unwrap(), 1);
    }

    #[test]
    fn petersen_is_three_chromatic() {
        let g = petersen();
        assert_eq!(chromatic_number(&g).unwrap(), 3);
        assert_eq!(brute_force_chromatic(&g), 3);
    }

    #[test]
    fn limit_is_enforced() {
        let g = Graph::empty(65);
        assert!(matches!(
            chromatic_number(&g),
            Err(Error::LimitExceeded { .. })
        ));
        assert!(chromatic_number_limited(&Graph::cycle(5), 4).is_err());
    }

    #[test]
    fn matches_brute_force_on_exhaustive_small_graphs() {
        for n in 0..=4usize {
            let pairs: Vec<(usize, usize)> =
                (0..n).flat_map(|u| ((u + 1)..n).map(move |v| (u, v))).collect();
            for mask in 0u32..(1 << pairs.len()) {
                let mut g = Graph::empty(n);
                for (i, &(u, v)) in pairs.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        g.add_edge(u, v);
                    }
                }
                assert_eq!(
                    chromatic_number(&g).unwrap(),
                    brute_force_chromatic(&g),
                    "n={n} mask={mask}"
                );
            }
        }
    }

    #[test]
    fn matches_brute_force_on_random_graphs_up_to_nine() {
        use rand::Rng;
        let mut rng = crate::stream::child_stream(902, "coloring-oracle");
        for n in 5..=9usize {
            for _ in 0..40 {
                let mut g = Graph::empty(n);
                for u in 0..n {
                    for v in (u + 1)..n {
                        if rng.gen::<f64>() < 0.5 {
                            g.add_edge(u, v);
                        }
                    }
                }
                assert_eq!(chromatic_number(&g).unwrap(), brute_force_chromatic(&g));
            }
        }
    }
}

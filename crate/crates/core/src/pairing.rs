//! Odd connected pairings.
//!
//! An s-pairing is a set of ordered vertex pairs (u_i, v_i) on pairwise
//! distinct vertices. It is an odd connected pairing of a graph when every
//! two of its pairs are joined on the u-side or on the v-side. This module
//! decides validity, searches for maximum pairings exactly (with an
//! explored-node budget), measures how well a vertex map separates a
//! pairing's image pairs, and builds the graph those image pairs span.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Ordered vertex pairs on pairwise distinct vertices.
///
/// Stored as given, compared as a set of ordered pairs; serialized as a JSON
/// array of `[u, v]` pairs.
#[derive(Debug, Clone, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<(usize, usize)>", into = "Vec<(usize, usize)>")]
pub struct Pairing {
    pairs: Vec<(usize, usize)>,
}

impl PartialEq for Pairing {
    fn eq(&self, other: &Self) -> bool {
        let mut a = self.pairs.clone();
        let mut b = other.pairs.clone();
        a.sort_unstable();
        b.sort_unstable();
        a == b
    }
}

impl TryFrom<Vec<(usize, usize)>> for Pairing {
    type Error = Error;
    fn try_from(pairs: Vec<(usize, usize)>) -> Result<Self> {
        Pairing::new(pairs)
    }
}

impl From<Pairing> for Vec<(usize, usize)> {
    fn from(p: Pairing) -> Self {
        p.pairs
    }
}

impl Pairing {
    /// Builds a pairing, rejecting any repeated vertex.
    pub fn new(pairs: Vec<(usize, usize)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for &(u, v) in &pairs {
            for x in [u, v] {
                if !seen.insert(x) {
                    return Err(Error::InvalidPairing {
                        detail: format!("vertex {x} appears more than once"),
                    });
                }
            }
        }
        Ok(Pairing { pairs })
    }

    pub fn size(&self) -> usize {
        self.pairs.len()
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// All 2s paired vertices in pair order.
    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.pairs.iter().flat_map(|&(u, v)| [u, v])
    }

    fn check_range(&self, n: usize) -> Result<()> {
        match self.vertices().find(|&x| x >= n) {
            Some(x) => Err(Error::InvalidPairing {
                detail: format!("vertex {x} outside host graph of order {n}"),
            }),
            None => Ok(()),
        }
    }
}

/// True iff for every i < j at least one of {u_i, u_j}, {v_i, v_j} is an
/// edge of `g`.
pub fn is_odd_connected_pairing(g: &Graph, pairing: &Pairing) -> Result<bool> {
    pairing.check_range(g.vertex_count())?;
    let pairs = pairing.pairs();
    for i in 0..pairs.len() {
        for j in (i + 1)..pairs.len() {
            let (ui, vi) = pairs[i];
            let (uj, vj) = pairs[j];
            if !g.has_edge(ui, uj) && !g.has_edge(vi, vj) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Node-count budget for the exact searches. Budgets count explored branch
/// nodes, not wall time, so runs are reproducible.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub node_limit: Option<u64>,
}

impl Budget {
    pub fn unbounded() -> Self {
        Budget { node_limit: None }
    }

    pub fn nodes(limit: u64) -> Self {
        Budget { node_limit: Some(limit) }
    }
}

/// Whether a search proved optimality or ran out of budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchStatus {
    Exact,
    LowerBound,
}

#[derive(Debug, Clone)]
pub struct PairingSearch {
    pub size: usize,
    pub witness: Pairing,
    pub status: SearchStatus,
    pub explored_nodes: u64,
}

/// Maximum odd connected pairing by branch and bound.
///
/// Pairs are branched in canonical order (first coordinates strictly
/// increasing, second coordinate ascending), pruned by compatibility with
/// all chosen pairs and by the remaining-vertex bound.
pub fn max_odd_connected_pairing(g: &Graph, budget: Budget) -> PairingSearch {
    let mut state = PairingSearchState {
        g,
        used: vec![false; g.vertex_count()],
        chosen: Vec::new(),
        best: Vec::new(),
        nodes: 0,
        node_limit: budget.node_limit.unwrap_or(u64::MAX),
        exhausted: false,
    };
    state.branch(0);
    PairingSearch {
        size: state.best.len(),
        witness: Pairing::new(state.best).expect("search emits distinct vertices"),
        status: if state.exhausted { SearchStatus::LowerBound } else { SearchStatus::Exact },
        explored_nodes: state.nodes,
    }
}

struct PairingSearchState<'a> {
    g: &'a Graph,
    used: Vec<bool>,
    chosen: Vec<(usize, usize)>,
    best: Vec<(usize, usize)>,
    nodes: u64,
    node_limit: u64,
    exhausted: bool,
}

impl PairingSearchState<'_> {
    fn branch(&mut self, next_u: usize) {
        self.nodes += 1;
        if self.nodes > self.node_limit {
            self.exhausted = true;
            return;
        }
        if self.chosen.len() > self.best.len() {
            self.best = self.chosen.clone();
        }
        let n = self.g.vertex_count();
        let free = self.used.iter().filter(|&&u| !u).count();
        let free_above = (next_u..n).filter(|&u| !self.used[u]).count();
        if self.chosen.len() + (free / 2).min(free_above) <= self.best.len() {
            return;
        }
        for u in next_u..n {
            if self.used[u] {
                continue;
            }
            for v in 0..n {
                if self.used[v] || v == u {
                    continue;
                }
                if !self.compatible(u, v) {
                    continue;
                }
                self.used[u] = true;
                self.used[v] = true;
                self.chosen.push((u, v));
                self.branch(u + 1);
                self.chosen.pop();
                self.used[u] = false;
                self.used[v] = false;
                if self.exhausted {
                    return;
                }
            }
        }
    }

    #[inline]
    fn compatible(&self, u: usize, v: usize) -> bool {
        self.chosen
            .iter()
            .all(|&(a, b)| self.g.has_edge(a, u) || self.g.has_edge(b, v))
    }
}

/// Largest the exhaustive pairing oracle will take.
pub const BRUTE_FORCE_PAIRING_LIMIT: usize = 10;

/// Exhaustive oracle for the maximum odd connected pairing size.
///
/// Enumerates pairings vertex-by-vertex: the lowest unassigned vertex is
/// either skipped or paired (in both orders) with every other free vertex.
pub fn brute_force_max_pairing(g: &Graph) -> Result<usize> {
    let n = g.vertex_count();
    if n > BRUTE_FORCE_PAIRING_LIMIT {
        return Err(Error::LimitExceeded {
            what: "brute-force pairing",
            n,
            limit: BRUTE_FORCE_PAIRING_LIMIT,
        });
    }
    fn rec(g: &Graph, lowest: usize, free: &mut Vec<bool>, chosen: &mut Vec<(usize, usize)>) -> usize {
        let n = g.vertex_count();
        let next = (lowest..n).find(|&x| free[x]);
        let Some(a) = next else {
            return chosen.len();
        };
        free[a] = false;
        // a stays unpaired
        let mut best = rec(g, a + 1, free, chosen);
        for b in 0..n {
            if !free[b] {
                continue;
            }
            free[b] = false;
            for pair in [(a, b), (b, a)] {
                let ok = chosen
                    .iter()
                    .all(|&(x, y)| g.has_edge(x, pair.0) || g.has_edge(y, pair.1));
                if ok {
                    chosen.push(pair);
                    best = best.max(rec(g, a + 1, free, chosen));
                    chosen.pop();
                }
            }
            free[b] = true;
        }
        free[a] = true;
        best
    }
    Ok(rec(g, 0, &mut vec![true; n], &mut Vec::new()))
}

/// Number of distinct non-degenerate image pairs {pi(u_i), pi(v_i)}.
///
/// This equals the largest index set on which the map keeps the pairing's
/// image pairs distinct, so eps-respectfulness is `respectful_index >= eps*s`.
pub fn respectful_index(pairing: &Pairing, pi: &[u32]) -> Result<usize> {
    pairing.check_range(pi.len())?;
    let mut images = BTreeSet::new();
    for &(u, v) in pairing.pairs() {
        let (a, b) = (pi[u], pi[v]);
        if a != b {
            images.insert((a.min(b), a.max(b)));
        }
    }
    Ok(images.len())
}

/// True iff at least eps*s of the pairs map to distinct non-degenerate pairs.
pub fn is_eps_respectful(pairing: &Pairing, pi: &[u32], eps: f64) -> Result<bool> {
    let idx = respectful_index(pairing, pi)?;
    Ok(idx as f64 >= eps * pairing.size() as f64)
}

/// A 2-subset of the base set, normalized to (low, high).
pub type BasePair = (u32, u32);

/// Graph on 2-subsets of the base set `[m]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairGraph {
    base: usize,
    edges: BTreeSet<(BasePair, BasePair)>,
}

impl PairGraph {
    pub fn base_size(&self) -> usize {
        self.base
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = &(BasePair, BasePair)> {
        self.edges.iter()
    }

    /// Degree of every 2-subset that appears as an endpoint.
    pub fn degrees(&self) -> BTreeMap<BasePair, usize> {
        let mut deg = BTreeMap::new();
        for &(a, b) in &self.edges {
            *deg.entry(a).or_insert(0) += 1;
            *deg.entry(b).or_insert(0) += 1;
        }
        deg
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().values().copied().max().unwrap_or(0)
    }

    /// Converts to a plain graph on the 2-subsets that occur, together with
    /// the label of each vertex. Vertices are ordered lexicographically.
    pub fn to_graph(&self) -> (Graph, Vec<BasePair>) {
        let mut labels: BTreeSet<BasePair> = BTreeSet::new();
        for &(a, b) in &self.edges {
            labels.insert(a);
            labels.insert(b);
        }
        let labels: Vec<BasePair> = labels.into_iter().collect();
        let index: BTreeMap<BasePair, usize> =
            labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
        let mut g = Graph::empty(labels.len());
        for &(a, b) in &self.edges {
            g.add_edge(index[&a], index[&b]);
        }
        (g, labels)
    }
}

/// Builds the graph of image pairs a pairing spans under `pi`.
///
/// For every i < j whose u-images differ, whose v-images differ, whose two
/// image pairs differ, and where neither {u_i, u_j} nor {v_i, v_j} is
/// `forbidden`, the edge {{pi(u_i), pi(u_j)}, {pi(v_i), pi(v_j)}} is added
/// (deduplicated).
pub fn build_pi_graph<F>(pairing: &Pairing, pi: &[u32], forbidden: F) -> Result<PairGraph>
where
    F: Fn(usize, usize) -> bool,
{
    pairing.check_range(pi.len())?;
    let pairs = pairing.pairs();
    let mut edges = BTreeSet::new();
    for i in 0..pairs.len() {
        for j in (i + 1)..pairs.len() {
            let (ui, vi) = pairs[i];
            let (uj, vj) = pairs[j];
            let a = (pi[ui].min(pi[uj]), pi[ui].max(pi[uj]));
            let b = (pi[vi].min(pi[vj]), pi[vi].max(pi[vj]));
            if pi[ui] == pi[uj] || pi[vi] == pi[vj] || a == b {
                continue;
            }
            if forbidden(ui, uj) || forbidden(vi, vj) {
                continue;
            }
            edges.insert((a.min(b), a.max(b)));
        }
    }
    Ok(PairGraph { base: pi.iter().map(|&x| x as usize + 1).max().unwrap_or(0), edges })
}

/// Structural audit of a pair graph build.
#[derive(Debug, Clone)]
pub struct PairGraphAudit {
    pub graph: PairGraph,
    /// Representative index set: one index per distinct non-degenerate
    /// image pair, first occurrence wins.
    pub representative_indices: Vec<usize>,
    /// Max number of representative index pairs emitting one edge.
    pub max_edge_multiplicity: usize,
    /// Vertices whose degree exceeds the fiber product f(x)*f(y), where f
    /// counts pairing vertices in the fiber.
    pub degree_bound_violations: usize,
}

/// Builds the pair graph and checks the two structural claims behind it:
/// within a representative index set every edge arises from at most two
/// index pairs, and every vertex degree is capped by its fiber product.
pub fn audit_pair_graph<F>(pairing: &Pairing, pi: &[u32], forbidden: F) -> Result<PairGraphAudit>
where
    F: Fn(usize, usize) -> bool,
{
    let graph = build_pi_graph(pairing, pi, &forbidden)?;
    let pairs = pairing.pairs();

    let mut seen_images = BTreeSet::new();
    let mut representative = Vec::new();
    for (i, &(u, v)) in pairs.iter().enumerate() {
        let (a, b) = (pi[u], pi[v]);
        if a != b && seen_images.insert((a.min(b), a.max(b))) {
            representative.push(i);
        }
    }

    let mut multiplicity: BTreeMap<(BasePair, BasePair), usize> = BTreeMap::new();
    for (pos, &i) in representative.iter().enumerate() {
        for &j in &representative[pos + 1..] {
            let (ui, vi) = pairs[i];
            let (uj, vj) = pairs[j];
            let a = (pi[ui].min(pi[uj]), pi[ui].max(pi[uj]));
            let b = (pi[vi].min(pi[vj]), pi[vi].max(pi[vj]));
            if pi[ui] == pi[uj] || pi[vi] == pi[vj] || a == b {
                continue;
            }
            if forbidden(ui, uj) || forbidden(vi, vj) {
                continue;
            }
            *multiplicity.entry((a.min(b), a.max(b))).or_insert(0) += 1;
        }
    }
    let max_edge_multiplicity = multiplicity.values().copied().max().unwrap_or(0);

    let mut fiber: BTreeMap<u32, usize> = BTreeMap::new();
    for x in pairing.vertices() {
        *fiber.entry(pi[x]).or_insert(0) += 1;
    }
    let degree_bound_violations = graph
        .degrees()
        .iter()
        .filter(|(&(x, y), &deg)| {
            deg > fiber.get(&x).copied().unwrap_or(0) * fiber.get(&y).copied().unwrap_or(0)
        })
        .count();

    Ok(PairGraphAudit {
        graph,
        representative_indices: representative,
        max_edge_multiplicity,
        degree_bound_violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pairing(pairs: &[(usize, usize)]) -> Pairing {
        Pairing::new(pairs.to_vec()).unwrap()
    }

    #[test]
    fn rejects_repeated_vertices() {
        assert!(Pairing::new(vec![(0, 1), (1, 2)]).is_err());
        assert!(Pairing::new(vec![(0, 0)]).is_err());
    }

    #[test]
    fn validity_examples() {
        let p = pairing(&[(0, 1), (2, 3)]);
        assert!(is_odd_connected_pairing(&Graph::complete(4), &p).unwrap());
        assert!(!is_odd_connected_pairing(&Graph::empty(4), &p).unwrap());
        // C_5 pairing (0,2),(1,3) is joined through the edge {0,1}
        let c5 = Graph::cycle(5);
        assert!(is_odd_connected_pairing(&c5, &pairing(&[(0, 2), (1, 3)])).unwrap());
        // out of range
        assert!(is_odd_connected_pairing(&Graph::complete(3), &p).is_err());
    }

    #[test]
    fn search_matches_known_values() {
        let r = max_odd_connected_pairing(&Graph::cycle(5), Budget::unbounded());
        assert_eq!((r.size, r.status), (2, SearchStatus::Exact));
        assert!(is_odd_connected_pairing(&Graph::cycle(5), &r.witness).unwrap());

        let r = max_odd_connected_pairing(&Graph::empty(6), Budget::unbounded());
        assert_eq!(r.size, 1);

        let r = max_odd_connected_pairing(&Graph::complete(6), Budget::unbounded());
        assert_eq!(r.size, 3);

        let r = max_odd_connected_pairing(&Graph::empty(0), Budget::unbounded());
        assert_eq!(r.size, 0);
    }

    #[test]
    fn brute_force_examples() {
        assert_eq!(brute_force_max_pairing(&Graph::cycle(5)).unwrap(), 2);
        assert_eq!(brute_force_max_pairing(&Graph::complete(4)).unwrap(), 2);
        assert_eq!(brute_force_max_pairing(&Graph::from_edges(2, &[(0, 1)])).unwrap(), 1);
        assert!(brute_force_max_pairing(&Graph::empty(11)).is_err());
    }

    #[test]
    fn budget_exhaustion_reports_lower_bound() {
        let r = max_odd_connected_pairing(&Graph::complete(12), Budget::nodes(3));
        assert_eq!(r.status, SearchStatus::LowerBound);
        assert!(is_odd_connected_pairing(&Graph::complete(12), &r.witness).unwrap());
    }

    #[test]
    fn respectful_index_examples() {
        let p = pairing(&[(0, 1), (2, 3)]);
        assert_eq!(respectful_index(&p, &[0, 0, 0, 0]).unwrap(), 0);
        assert_eq!(respectful_index(&p, &[0, 1, 2, 3]).unwrap(), 2);
        // both pairs map onto the same base pair {5, 9}
        assert_eq!(respectful_index(&p, &[5, 9, 5, 9]).unwrap(), 1);
        assert!(is_eps_respectful(&p, &[0, 1, 2, 3], 1.0).unwrap());
        assert!(!is_eps_respectful(&p, &[5, 9, 5, 9], 0.9).unwrap());
    }

    #[test]
    fn pi_graph_examples() {
        let p2 = pairing(&[(0, 1), (2, 3)]);
        let injective = [0u32, 1, 2, 3];
        let g = build_pi_graph(&p2, &injective, |_, _| false).unwrap();
        assert_eq!(g.edge_count(), 1);

        // degenerate u-images contribute nothing
        let g = build_pi_graph(&p2, &[4, 1, 4, 3], |_, _| false).unwrap();
        assert_eq!(g.edge_count(), 0);

        let p3 = pairing(&[(0, 1), (2, 3), (4, 5)]);
        let g = build_pi_graph(&p3, &[0, 1, 2, 3, 4, 5], |_, _| false).unwrap();
        assert_eq!(g.edge_count(), 3);

        // forbidding one side removes its edge
        let g = build_pi_graph(&p3, &[0, 1, 2, 3, 4, 5], |a, b| (a, b) == (0, 2)).unwrap();
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn audit_claims_hold_on_random_instances() {
        use rand::Rng;
        let mut rng = crate::stream::child_stream(906, "pair-audit");
        for _ in 0..40 {
            let n = 60;
            let m = 7u32;
            let s = rng.gen_range(1..=n / 2);
            let mut verts: Vec<usize> = (0..n).collect();
            for i in (1..n).rev() {
                let j = rng.gen_range(0..=i);
                verts.swap(i, j);
            }
            let pairs: Vec<(usize, usize)> =
                (0..s).map(|i| (verts[2 * i], verts[2 * i + 1])).collect();
            let p = Pairing::new(pairs).unwrap();
            let pi: Vec<u32> = (0..n).map(|_| rng.gen_range(0..m)).collect();
            let audit = audit_pair_graph(&p, &pi, |_, _| false).unwrap();
            assert!(audit.max_edge_multiplicity <= 2, "multiplicity claim failed");
            assert_eq!(audit.degree_bound_violations, 0, "degree bound claim failed");
            assert!(audit.representative_indices.len() == respectful_index(&p, &pi).unwrap());
        }
    }

    #[test]
    fn respectful_index_never_exceeds_size_and_hits_it_when_injective() {
        let p = pairing(&[(1, 2), (3, 4), (5, 6)]);
        let pi: Vec<u32> = (0..8).collect();
        assert_eq!(respectful_index(&p, &pi).unwrap(), 3);
        let constant = vec![0u32; 8];
        assert_eq!(respectful_index(&p, &constant).unwrap(), 0);
    }
}

//! Independent exact oracles: maximum clique by branch and bound with
//! greedy-coloring bounds, exact chromatic number by DSATUR backtracking,
//! and the certificate combiner that settles chi = omega = k from a proper
//! k-coloring plus a k-clique.
//!
//! Both solvers are deterministic: vertices are considered in ascending
//! index order and ties break toward the lowest index. A search that runs
//! out of budget reports an explicit bracket, never a silent wrong answer.

use crate::coloring::{verify_coloring, Coloring, Provenance};
use crate::graph::Graph;
use std::time::Instant;
use thiserror::Error;

/// Search limits. Defaults: 10^7 nodes, 30 seconds per call.
#[derive(Debug, Clone, Copy)]
pub struct Budget {
    pub max_nodes: u64,
    pub max_millis: u64,
}

impl Default for Budget {
    fn default() -> Budget {
        Budget {
            max_nodes: 10_000_000,
            max_millis: 30_000,
        }
    }
}

/// A set of pairwise-adjacent vertices.
#[derive(Debug, Clone)]
pub struct CliqueWitness {
    pub vertices: Vec<usize>,
}

impl CliqueWitness {
    pub fn size(&self) -> usize {
        self.vertices.len()
    }

    /// Re-validates pairwise adjacency and distinctness on the target graph.
    pub fn validate(&self, g: &Graph) -> Result<(), CertifyError> {
        let mut seen = vec![false; g.vertex_count()];
        for &v in &self.vertices {
            if v >= g.vertex_count() || seen[v] {
                return Err(CertifyError::InvalidCliqueVertex(v));
            }
            seen[v] = true;
        }
        for (i, &u) in self.vertices.iter().enumerate() {
            for &v in &self.vertices[i + 1..] {
                if !g.adjacent(u, v) {
                    return Err(CertifyError::NotAClique(u, v));
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct CliqueOutcome {
    pub witness: CliqueWitness,
    /// True when the search ran to completion, making the witness maximum.
    pub exact: bool,
    pub nodes: u64,
    pub elapsed_ms: u64,
}

struct CliqueSearch<'g> {
    g: &'g Graph,
    best: Vec<usize>,
    nodes: u64,
    budget: Budget,
    start: Instant,
    out_of_budget: bool,
}

impl<'g> CliqueSearch<'g> {
    fn budget_exceeded(&mut self) -> bool {
        if self.out_of_budget {
            return true;
        }
        if self.nodes > self.budget.max_nodes
            || (self.nodes.is_multiple_of(1024)
                && self.start.elapsed().as_millis() as u64 > self.budget.max_millis)
        {
            self.out_of_budget = true;
        }
        self.out_of_budget
    }

    fn expand(&mut self, cur: &mut Vec<usize>, cand: &[usize]) {
        self.nodes += 1;
        if self.budget_exceeded() {
            return;
        }
        if cand.is_empty() {
            if cur.len() > self.best.len() {
                self.best = cur.clone();
            }
            return;
        }
        // Greedy-color the candidates (ascending index); the class id + 1
        // bounds the clique size reachable through each vertex.
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut bound = vec![0usize; cand.len()];
        for (i, &v) in cand.iter().enumerate() {
            let mut c = 0;
            while c < classes.len() && classes[c].iter().any(|&u| self.g.adjacent(u, v)) {
                c += 1;
            }
            if c == classes.len() {
                classes.push(Vec::new());
            }
            classes[c].push(v);
            bound[i] = c + 1;
        }
        // Process candidates by descending bound; the prefix before each
        // candidate is its remaining candidate pool.
        let mut order: Vec<usize> = (0..cand.len()).collect();
        order.sort_by_key(|&i| (bound[i], cand[i]));
        for pos in (0..order.len()).rev() {
            let i = order[pos];
            if cur.len() + bound[i] <= self.best.len() {
                return;
            }
            let v = cand[i];
            cur.push(v);
            let next: Vec<usize> = order[..pos]
                .iter()
                .map(|&j| cand[j])
                .filter(|&u| self.g.adjacent(u, v))
                .collect();
            self.expand(cur, &next);
            cur.pop();
            if self.out_of_budget {
                return;
            }
        }
    }
}

/// Maximum clique via branch and bound. With an exhausted budget the best
/// clique found so far is returned with `exact: false`.
pub fn clique_number(g: &Graph, budget: &Budget) -> CliqueOutcome {
    let start = Instant::now();
    let mut search = CliqueSearch {
        g,
        best: Vec::new(),
        nodes: 0,
        budget: *budget,
        start,
        out_of_budget: false,
    };
    let cand: Vec<usize> = (0..g.vertex_count()).collect();
    search.expand(&mut Vec::new(), &cand);
    let mut vertices = search.best;
    vertices.sort_unstable();
    let witness = CliqueWitness { vertices };
    witness.validate(g).expect("search returns a valid clique");
    CliqueOutcome {
        witness,
        exact: !search.out_of_budget,
        nodes: search.nodes,
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}

#[derive(Debug, Clone)]
pub struct ChromaticOutcome {
    pub lower: u32,
    pub upper: u32,
    /// A proper coloring with `upper` colors.
    pub coloring: Coloring,
    /// True when `lower == upper` was proven within budget.
    pub exact: bool,
    pub nodes: u64,
    pub elapsed_ms: u64,
}

impl ChromaticOutcome {
    pub fn value(&self) -> Option<u32> {
        if self.exact {
            Some(self.upper)
        } else {
            None
        }
    }
}

/// Greedy DSATUR coloring: always proper, used as the upper bound and the
/// fallback coloring.
pub fn dsatur_greedy(g: &Graph) -> Coloring {
    let n = g.vertex_count();
    let mut colors: Vec<Option<u32>> = vec![None; n];
    let mut sat: Vec<std::collections::BTreeSet<u32>> = vec![Default::default(); n];
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| colors[v].is_none())
            .max_by_key(|&v| (sat[v].len(), std::cmp::Reverse(v)))
            .unwrap();
        let mut c = 0u32;
        while sat[v].contains(&c) {
            c += 1;
        }
        colors[v] = Some(c);
        for u in 0..n {
            if g.adjacent(u, v) {
                sat[u].insert(c);
            }
        }
    }
    Coloring::from_colors(
        colors.into_iter().map(Option::unwrap).collect(),
        Provenance::Solver,
    )
}

enum Search {
    Found(Vec<u32>),
    Impossible,
    OutOfBudget,
}

struct ColorSearch<'g> {
    g: &'g Graph,
    k: u32,
    colors: Vec<Option<u32>>,
    sat_words: usize,
    sat: Vec<u64>,
    sat_count: Vec<u32>,
    nodes: u64,
    budget: Budget,
    start: Instant,
}

impl<'g> ColorSearch<'g> {
    fn sat_has(&self, v: usize, c: u32) -> bool {
        self.sat[v * self.sat_words + c as usize / 64] >> (c % 64) & 1 == 1
    }

    fn sat_set(&mut self, v: usize, c: u32) {
        self.sat[v * self.sat_words + c as usize / 64] |= 1 << (c % 64);
        self.sat_count[v] += 1;
    }

    fn sat_clear(&mut self, v: usize, c: u32) {
        self.sat[v * self.sat_words + c as usize / 64] &= !(1 << (c % 64));
        self.sat_count[v] -= 1;
    }

    fn rec(&mut self, colored: usize, max_used: u32) -> Search {
        self.nodes += 1;
        if self.nodes > self.budget.max_nodes
            || (self.nodes.is_multiple_of(1024)
                && self.start.elapsed().as_millis() as u64 > self.budget.max_millis)
        {
            return Search::OutOfBudget;
        }
        let n = self.g.vertex_count();
        if colored == n {
            return Search::Found(self.colors.iter().map(|c| c.unwrap()).collect());
        }
        // DSATUR pick: highest saturation, ties to the lowest index.
        let v = (0..n)
            .filter(|&v| self.colors[v].is_none())
            .max_by_key(|&v| (self.sat_count[v], std::cmp::Reverse(v)))
            .unwrap();
        let limit = self.k.min(max_used + 2);
        for c in 0..limit {
            if self.sat_has(v, c) {
                continue;
            }
            self.colors[v] = Some(c);
            let mut touched = Vec::new();
            for u in 0..n {
                if self.g.adjacent(u, v) && self.colors[u].is_none() && !self.sat_has(u, c) {
                    self.sat_set(u, c);
                    touched.push(u);
                }
            }
            match self.rec(colored + 1, max_used.max(c)) {
                Search::Impossible => {}
                other => return other,
            }
            for u in touched {
                self.sat_clear(u, c);
            }
            self.colors[v] = None;
        }
        Search::Impossible
    }
}

fn k_colorable(g: &Graph, k: u32, budget: &Budget, start: Instant) -> Search {
    let n = g.vertex_count();
    if k == 0 {
        return if n == 0 {
            Search::Found(Vec::new())
        } else {
            Search::Impossible
        };
    }
    let sat_words = (k as usize).div_ceil(64);
    let mut search = ColorSearch {
        g,
        k,
        colors: vec![None; n],
        sat_words,
        sat: vec![0; n * sat_words],
        sat_count: vec![0; n],
        nodes: 0,
        budget: *budget,
        start,
    };
    search.rec(0, 0)
}

/// Exact chromatic number by iterated k-colorability, seeded below by the
/// clique solver and above by greedy DSATUR. On budget exhaustion the
/// result is an open bracket with the best proper coloring found.
pub fn chromatic_number(g: &Graph, budget: &Budget) -> ChromaticOutcome {
    let start = Instant::now();
    let n = g.vertex_count();
    if n == 0 {
        return ChromaticOutcome {
            lower: 0,
            upper: 0,
            coloring: Coloring::from_colors(Vec::new(), Provenance::Solver),
            exact: true,
            nodes: 0,
            elapsed_ms: 0,
        };
    }
    let clique = clique_number(g, budget);
    let mut nodes = clique.nodes;
    let mut lower = clique.witness.size() as u32;
    let greedy = dsatur_greedy(g);
    let upper = greedy.k();
    let mut best = greedy;
    lower = lower.max(1);

    let mut k = lower;
    let exact = loop {
        if k >= upper {
            break true;
        }
        match k_colorable(g, k, budget, start) {
            Search::Found(cols) => {
                best = Coloring::from_colors(cols, Provenance::Solver);
                debug_assert_eq!(best.k(), k);
                break true;
            }
            Search::Impossible => {
                k += 1;
                lower = k;
            }
            Search::OutOfBudget => break false,
        }
    };
    nodes += 1; // accounting for the driver itself
    let upper = best.k();
    debug_assert!(verify_coloring(g, &best).unwrap().is_none());
    ChromaticOutcome {
        lower: if exact { upper } else { lower },
        upper,
        coloring: best,
        exact,
        nodes,
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertStatus {
    /// coloring k = clique size: chi = omega = k.
    Certified,
    /// Only the chromatic side is pinned (by an exact solver run).
    ChiOnly,
    /// Only the clique side is pinned.
    OmegaOnly,
    /// A gap remains between the bounds.
    Open,
}

#[derive(Debug, Error)]
pub enum CertifyError {
    #[error("coloring is improper at edge ({0}, {1})")]
    ImproperColoring(usize, usize),
    #[error("coloring size mismatch: {0}")]
    ColoringMismatch(#[from] crate::coloring::ColoringError),
    #[error("clique vertices {0} and {1} are not adjacent")]
    NotAClique(usize, usize),
    #[error("clique vertex {0} is out of range or repeated")]
    InvalidCliqueVertex(usize),
}

/// A proof object: a proper k-coloring plus a k-clique pins chi = omega = k.
#[derive(Debug, Clone)]
pub struct ChromaticCertificate {
    /// The certified value, present when status is `Certified`.
    pub k: Option<u32>,
    pub coloring: Coloring,
    pub clique: CliqueWitness,
    pub status: CertStatus,
}

impl ChromaticCertificate {
    pub fn lower(&self) -> u32 {
        self.clique.size() as u32
    }

    pub fn upper(&self) -> u32 {
        self.coloring.k()
    }
}

/// Re-verifies both witnesses against the graph and combines them. Neither
/// input is trusted: an improper coloring or a non-clique is an error, not
/// an open certificate.
pub fn certify(
    g: &Graph,
    coloring: Coloring,
    clique: CliqueWitness,
) -> Result<ChromaticCertificate, CertifyError> {
    if let Some((u, v)) = verify_coloring(g, &coloring)? {
        return Err(CertifyError::ImproperColoring(u, v));
    }
    clique.validate(g)?;
    let status = if coloring.k() as usize == clique.size() {
        CertStatus::Certified
    } else {
        CertStatus::Open
    };
    let k = match status {
        CertStatus::Certified => Some(coloring.k()),
        _ => None,
    };
    Ok(ChromaticCertificate {
        k,
        coloring,
        clique,
        status,
    })
}

/// Plain reference implementations, kept deliberately simple and separate
/// from the production search paths; tests use them as oracles.
pub mod naive {
    use crate::graph::Graph;

    fn colorable(g: &Graph, k: u32, colors: &mut [u32], v: usize) -> bool {
        let n = g.vertex_count();
        if v == n {
            return true;
        }
        let max_used = colors[..v].iter().copied().max().unwrap_or(0);
        let limit = k.min(if v == 0 { 1 } else { max_used + 2 });
        for c in 0..limit {
            if (0..v).any(|u| g.adjacent(u, v) && colors[u] == c) {
                continue;
            }
            colors[v] = c;
            if colorable(g, k, colors, v + 1) {
                return true;
            }
        }
        false
    }

    /// Chromatic number by exhaustive k-colorability in vertex order.
    pub fn chromatic(g: &Graph) -> u32 {
        let n = g.vertex_count();
        if n == 0 {
            return 0;
        }
        let mut colors = vec![0u32; n];
        (1..=n as u32)
            .find(|&k| colorable(g, k, &mut colors, 0))
            .unwrap()
    }

    fn extend(g: &Graph, cur: &mut Vec<usize>, start: usize, best: &mut usize) {
        *best = (*best).max(cur.len());
        for v in start..g.vertex_count() {
            if cur.iter().all(|&u| g.adjacent(u, v)) {
                cur.push(v);
                extend(g, cur, v + 1, best);
                cur.pop();
            }
        }
    }

    /// Maximum clique size by exhaustive extension.
    pub fn max_clique(g: &Graph) -> usize {
        let mut best = 0;
        extend(g, &mut Vec::new(), 0, &mut best);
        best
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{total_graph, Graph};
    use crate::ring::ring_from_spec;

    fn k33() -> Graph {
        let mut g = Graph::new(6);
        for u in 0..3 {
            for v in 3..6 {
                g.add_edge(u, v);
            }
        }
        g
    }

    #[test]
    fn clique_of_z3z3_total_graph_is_four() {
        let r = ring_from_spec("Z3 x Z3").unwrap();
        let g = total_graph(&r).unwrap();
        let out = clique_number(&g, &Budget::default());
        assert!(out.exact);
        assert_eq!(out.witness.size(), 4);
        // exhaustive confirmation on all 4-subsets
        assert_eq!(naive::max_clique(&g), 4);
    }

    #[test]
    fn clique_of_k33_is_two() {
        let out = clique_number(&k33(), &Budget::default());
        assert!(out.exact);
        assert_eq!(out.witness.size(), 2);
    }

    #[test]
    fn clique_of_z4_total_graph_is_two() {
        let r = ring_from_spec("Z4").unwrap();
        let g = total_graph(&r).unwrap();
        let out = clique_number(&g, &Budget::default());
        assert_eq!(out.witness.size(), 2);
    }

    #[test]
    fn chromatic_of_z3z3_total_graph_is_four() {
        let r = ring_from_spec("Z3 x Z3").unwrap();
        let g = total_graph(&r).unwrap();
        let out = chromatic_number(&g, &Budget::default());
        assert!(out.exact);
        assert_eq!(out.value(), Some(4));
    }

    #[test]
    fn chromatic_of_k33_is_two() {
        let out = chromatic_number(&k33(), &Budget::default());
        assert_eq!(out.value(), Some(2));
    }

    #[test]
    fn solvers_agree_with_naive_oracles_on_small_graphs() {
        // orders up to 20 vertices
        for spec in [
            "Z4",
            "Z6",
            "Z8",
            "Z9",
            "Z3 x Z3",
            "Z12",
            "GF(8)",
            "Z2 x GF(4)",
            "Z16",
            "GF(16)",
            "Z4 x Z4",
            "Z2 x Z9",
            "Z20",
        ] {
            let r = ring_from_spec(spec).unwrap();
            let g = total_graph(&r).unwrap();
            let chi = chromatic_number(&g, &Budget::default());
            assert!(chi.exact, "{spec}");
            assert_eq!(chi.value().unwrap(), naive::chromatic(&g), "{spec}");
            let om = clique_number(&g, &Budget::default());
            assert_eq!(om.witness.size(), naive::max_clique(&g), "{spec}");
            assert!(om.witness.size() as u32 <= chi.value().unwrap(), "{spec}");
        }
    }

    #[test]
    fn solver_reruns_are_identical() {
        let r = ring_from_spec("Z12").unwrap();
        let g = total_graph(&r).unwrap();
        let a = chromatic_number(&g, &Budget::default());
        let b = chromatic_number(&g, &Budget::default());
        assert_eq!(a.value(), b.value());
        assert_eq!(a.coloring.colors(), b.coloring.colors());
        let ca = clique_number(&g, &Budget::default());
        let cb = clique_number(&g, &Budget::default());
        assert_eq!(ca.witness.vertices, cb.witness.vertices);
    }

    #[test]
    fn exhausted_budget_reports_open_bracket() {
        // a graph large enough that 2 nodes of search cannot finish
        let r = ring_from_spec("Z3 x Z3 x Z3").unwrap();
        let g = total_graph(&r).unwrap();
        let tiny = Budget {
            max_nodes: 2,
            max_millis: 30_000,
        };
        let out = chromatic_number(&g, &tiny);
        assert!(!out.exact);
        assert!(out.lower <= out.upper);
        assert_eq!(verify_coloring(&g, &out.coloring).unwrap(), None);
    }

    #[test]
    fn certify_accepts_matching_witnesses() {
        let r = ring_from_spec("Z6").unwrap();
        let g = total_graph(&r).unwrap();
        let budget = Budget::default();
        let coloring = crate::coloring::color_total(&r, &g, &budget);
        let clique = CliqueWitness {
            vertices: crate::coloring::max_ideal_clique(&r),
        };
        let cert = certify(&g, coloring, clique).unwrap();
        assert_eq!(cert.status, CertStatus::Certified);
        assert_eq!(cert.k, Some(3));
    }

    #[test]
    fn certify_reports_gaps_as_open() {
        // K4 with a 4-coloring and only a triangle: bracket [3, 4]
        let mut g = Graph::new(4);
        for u in 0..4 {
            for v in u + 1..4 {
                g.add_edge(u, v);
            }
        }
        let coloring = Coloring::from_colors(vec![0, 1, 2, 3], Provenance::Solver);
        let clique = CliqueWitness {
            vertices: vec![0, 1, 2],
        };
        let cert = certify(&g, coloring, clique).unwrap();
        assert_eq!(cert.status, CertStatus::Open);
        assert_eq!(cert.k, None);
        assert_eq!((cert.lower(), cert.upper()), (3, 4));
    }

    #[test]
    fn certify_on_edgeless_graph() {
        let r = ring_from_spec("GF(4)").unwrap();
        let g = total_graph(&r).unwrap();
        let coloring = Coloring::from_colors(vec![0; 4], Provenance::Solver);
        let clique = CliqueWitness { vertices: vec![0] };
        let cert = certify(&g, coloring, clique).unwrap();
        assert_eq!(cert.k, Some(1));
    }

    #[test]
    fn certify_rejects_improper_inputs() {
        let mut g = Graph::new(2);
        g.add_edge(0, 1);
        let bad = Coloring::from_colors(vec![0, 0], Provenance::Solver);
        let clique = CliqueWitness { vertices: vec![0] };
        assert!(matches!(
            certify(&g, bad, clique),
            Err(CertifyError::ImproperColoring(0, 1))
        ));
        let good = Coloring::from_colors(vec![0, 1], Provenance::Solver);
        let fake = CliqueWitness {
            vertices: vec![0, 0],
        };
        assert!(certify(&g, good, fake).is_err());
    }
}

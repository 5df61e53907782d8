//! Simple undirected graphs over ring elements, stored as bitset adjacency
//! rows, with the total-graph builders, the blow-up operator, and the
//! component-structure check for rings whose zero-divisors form an ideal.

use crate::ring::FiniteRing;
use serde_json::json;
use thiserror::Error;

/// Default cap on total-graph vertex counts.
pub const GRAPH_CAP: usize = 1024;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("graph on {vertices} vertices exceeds cap {cap}")]
    CapExceeded { vertices: usize, cap: usize },
    #[error("blow-up parts must all have the same positive size")]
    UnevenParts,
}

/// An undirected simple graph. Vertices may carry ring-element labels.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
    labels: Option<Vec<usize>>,
}

impl Graph {
    pub fn new(n: usize) -> Graph {
        let words = n.div_ceil(64).max(1);
        Graph {
            n,
            words,
            rows: vec![0; n * words],
            labels: None,
        }
    }

    pub fn with_labels(n: usize, labels: Vec<usize>) -> Graph {
        assert_eq!(labels.len(), n);
        let mut g = Graph::new(n);
        g.labels = Some(labels);
        g
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn labels(&self) -> Option<&[usize]> {
        self.labels.as_deref()
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v, "no loops");
        self.rows[u * self.words + v / 64] |= 1 << (v % 64);
        self.rows[v * self.words + u / 64] |= 1 << (u % 64);
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.rows[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    /// Adjacency row of `u` as bitset words.
    pub fn row(&self, u: usize) -> &[u64] {
        &self.rows[u * self.words..(u + 1) * self.words]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.row(u).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|u| self.degree(u)).sum::<usize>() / 2
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.adjacent(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn neighbors(&self, u: usize) -> Vec<usize> {
        (0..self.n).filter(|&v| self.adjacent(u, v)).collect()
    }

    /// Induced subgraph on `vertices` (kept in the given order); labels are
    /// carried over from the host graph or default to the vertex ids.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let labels: Vec<usize> = match &self.labels {
            Some(l) => vertices.iter().map(|&v| l[v]).collect(),
            None => vertices.to_vec(),
        };
        let mut g = Graph::with_labels(vertices.len(), labels);
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.adjacent(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Connected components as sorted vertex lists, ordered by smallest
    /// vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.n];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for start in 0..self.n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut stack = vec![start];
            let mut members = Vec::new();
            comp[start] = id;
            while let Some(u) = stack.pop() {
                members.push(u);
                for v in 0..self.n {
                    if comp[v] == usize::MAX && self.adjacent(u, v) {
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

    pub fn is_complete_on(&self, vertices: &[usize]) -> bool {
        vertices
            .iter()
            .enumerate()
            .all(|(i, &u)| vertices[i + 1..].iter().all(|&v| self.adjacent(u, v)))
    }

    /// Tests adjacency-matrix equality after sending vertex `i` of `self`
    /// to `map[i]` of `other`.
    pub fn equals_under_map(&self, other: &Graph, map: &[usize]) -> bool {
        if self.n != other.n || map.len() != self.n {
            return false;
        }
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.adjacent(u, v) != other.adjacent(map[u], map[v]) {
                    return false;
                }
            }
        }
        true
    }

    /// DOT rendering; labels come from the ring, colors (if given) become a
    /// `color` attribute per vertex.
    pub fn to_dot(&self, ring: Option<&FiniteRing>, colors: Option<&[u32]>) -> String {
        let mut out = String::from("graph {\n");
        for v in 0..self.n {
            let label = match (ring, &self.labels) {
                (Some(r), Some(l)) => r.element_label(l[v]),
                (Some(r), None) => r.element_label(v),
                _ => format!("{v}"),
            };
            let color = colors
                .map(|c| format!(", color={}", c[v]))
                .unwrap_or_default();
            out.push_str(&format!("  v{v} [label=\"{label}\"{color}];\n"));
        }
        for (u, v) in self.edges() {
            out.push_str(&format!("  v{u} -- v{v};\n"));
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self, ring: Option<&FiniteRing>) -> serde_json::Value {
        let labels: Vec<String> = (0..self.n)
            .map(|v| {
                let elem = self.labels.as_ref().map_or(v, |l| l[v]);
                ring.map_or(format!("{elem}"), |r| r.element_label(elem))
            })
            .collect();
        json!({
            "n": self.n,
            "edges": self.edges().iter().map(|&(u, v)| vec![u, v]).collect::<Vec<_>>(),
            "labels": labels,
        })
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, m={})", self.n, self.edge_count())
    }
}

/// The total graph: vertices are all ring elements, `x ~ y` iff `x != y`
/// and `x + y` is a zero-divisor.
pub fn total_graph(ring: &FiniteRing) -> Result<Graph, GraphError> {
    total_graph_with_cap(ring, GRAPH_CAP)
}

pub fn total_graph_with_cap(ring: &FiniteRing, cap: usize) -> Result<Graph, GraphError> {
    let n = ring.order();
    if n > cap {
        return Err(GraphError::CapExceeded { vertices: n, cap });
    }
    let mut g = Graph::with_labels(n, (0..n).collect());
    for x in 0..n {
        for y in x + 1..n {
            if ring.is_zero_divisor(ring.add(x, y)) {
                g.add_edge(x, y);
            }
        }
    }
    Ok(g)
}

/// Induced subgraph of the total graph on the zero-divisors.
pub fn zdiv_subgraph(ring: &FiniteRing) -> Result<Graph, GraphError> {
    let t = total_graph(ring)?;
    Ok(t.induced(ring.zero_divisors()))
}

/// Induced subgraph of the total graph on the regular elements.
pub fn reg_subgraph(ring: &FiniteRing) -> Result<Graph, GraphError> {
    let t = total_graph(ring)?;
    Ok(t.induced(&ring.regular_elements()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PartKind {
    Complete,
    Empty,
}

/// A blow-up plan: each base vertex is replaced by a part of size `m`,
/// complete or empty, with cross edges following base adjacency.
pub struct BlowUpSpec {
    pub base: Graph,
    pub parts: Vec<PartKind>,
    pub part_size: usize,
}

/// Builds the blow-up. Vertex order is base-vertex major, part-internal
/// index minor.
pub fn blow_up(spec: &BlowUpSpec) -> Result<Graph, GraphError> {
    let m = spec.part_size;
    if m == 0 || spec.parts.len() != spec.base.vertex_count() {
        return Err(GraphError::UnevenParts);
    }
    let nb = spec.base.vertex_count();
    let mut g = Graph::new(nb * m);
    for i in 0..nb {
        if spec.parts[i] == PartKind::Complete {
            for a in 0..m {
                for b in a + 1..m {
                    g.add_edge(i * m + a, i * m + b);
                }
            }
        }
        for j in i + 1..nb {
            if spec.base.adjacent(i, j) {
                for a in 0..m {
                    for b in 0..m {
                        g.add_edge(i * m + a, j * m + b);
                    }
                }
            }
        }
    }
    Ok(g)
}

#[derive(Debug, Error)]
pub enum ZIdealError {
    #[error("Z(R) is not an ideal: witness {x} + {y} = {sum} is a unit")]
    NotIdeal { x: usize, y: usize, sum: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Outcome of the component-structure check when Z(R) is an ideal: with
/// 2 in Z(R) the total graph is a disjoint union of |R/Z| complete graphs
/// K_{|Z|}; otherwise it is one K_{|Z|} plus (|R/Z|-1)/2 copies of
/// K_{|Z|,|Z|}.
#[derive(Debug, Clone)]
pub struct ZIdealReport {
    pub two_in_z: bool,
    pub z_size: usize,
    pub coset_count: usize,
    pub component_count: usize,
    pub complete_components: usize,
    pub bipartite_components: usize,
    pub pass: bool,
}

pub fn structure_check_zideal(ring: &FiniteRing) -> Result<ZIdealReport, ZIdealError> {
    let z = ring.zero_divisors();
    // Z(R) absorbs multiplication always; being an ideal reduces to
    // closure under addition.
    for &x in z {
        for &y in z {
            let s = ring.add(x, y);
            if !ring.is_zero_divisor(s) {
                return Err(ZIdealError::NotIdeal { x, y, sum: s });
            }
        }
    }
    let g = total_graph(ring)?;
    let comps = g.components();
    let zn = z.len();
    let cosets = ring.order() / zn;
    let two_in_z = ring.is_zero_divisor(ring.two());

    let mut complete = 0usize;
    let mut bipartite = 0usize;
    let mut ok = true;
    for comp in &comps {
        if comp.len() == zn && g.is_complete_on(comp) {
            complete += 1;
        } else if comp.len() == 2 * zn && is_complete_bipartite(&g, comp, zn) {
            bipartite += 1;
        } else {
            ok = false;
        }
    }
    let pass = ok
        && if two_in_z {
            complete == cosets && bipartite == 0
        } else {
            complete == 1 && bipartite == (cosets - 1) / 2
        };
    Ok(ZIdealReport {
        two_in_z,
        z_size: zn,
        coset_count: cosets,
        component_count: comps.len(),
        complete_components: complete,
        bipartite_components: bipartite,
        pass,
    })
}

/// Checks that the component is K_{part, part}: split along adjacency to the
/// first vertex, then demand all cross edges and no inner edges.
fn is_complete_bipartite(g: &Graph, comp: &[usize], part: usize) -> bool {
    let v0 = comp[0];
    let (a, b): (Vec<usize>, Vec<usize>) =
        comp.iter().partition(|&&v| v == v0 || !g.adjacent(v0, v));
    if a.len() != part || b.len() != part {
        return false;
    }
    for &u in &a {
        for &v in &b {
            if !g.adjacent(u, v) {
                return false;
            }
        }
    }
    for side in [&a, &b] {
        for (i, &u) in side.iter().enumerate() {
            for &v in &side[i + 1..] {
                if g.adjacent(u, v) {
                    return false;
                }
            }
        }
    }
    true
}

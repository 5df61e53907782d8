//! Proper-coloring constructions for total graphs and their regular
//! subgraphs, plus the universal coloring verifier.
//!
//! The workhorse is the product-of-fields map: look a vertex's first
//! coordinate up against each later coordinate in a Latin-sum array and
//! use the tuple of entries as the color. Everything else reduces to that
//! map through the radical quotient, with a handful of special schemes for
//! the small cases the general construction cannot reach.

use crate::graph::Graph;
use crate::latin::{build_latin_sum, build_latin_sum_reg, field_char};
use crate::ring::{build_ring, FiniteRing, RingDescriptor};
use serde_json::json;
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ColoringError {
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("coloring covers {got} vertices, graph has {want}")]
    SizeMismatch { got: usize, want: usize },
    #[error(transparent)]
    Latin(#[from] crate::latin::LatinError),
}

/// Which construction produced a coloring.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    /// Latin-sum tuple map on a product of fields.
    FMap,
    /// Quotient coloring lifted through the radical with coset positions.
    Lift,
    /// Coset scheme for a local ring.
    LocalCoset,
    /// The special 4-coloring of the 3x3 product of 3-element fields.
    Z3z3Special,
    /// Coset scheme for rings whose reduction is that 3x3 product.
    Z3z3Coset,
    /// The stored 9-class coloring of the triple product of 3-element fields.
    Z3CubedFixture,
    /// Latin-sum tuple map on the regular elements.
    GMap,
    /// Sign-vector coloring of the regular subgraph, odd residues.
    RegOddSign,
    /// Unit-coset scheme for a local ring's regular subgraph.
    RegLocalCoset,
    /// Produced by the exact solver or its greedy fallback.
    Solver,
}

impl std::fmt::Display for Provenance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Provenance::FMap => "f-map",
            Provenance::Lift => "lift",
            Provenance::LocalCoset => "local-coset",
            Provenance::Z3z3Special => "z3z3-special",
            Provenance::Z3z3Coset => "z3z3-coset",
            Provenance::Z3CubedFixture => "z3cubed-fixture",
            Provenance::GMap => "g-map",
            Provenance::RegOddSign => "reg-odd-sign",
            Provenance::RegLocalCoset => "reg-local-coset",
            Provenance::Solver => "solver",
        };
        f.write_str(s)
    }
}

/// A vertex coloring with dense color ids `0..k`.
#[derive(Debug, Clone)]
pub struct Coloring {
    colors: Vec<u32>,
    k: u32,
    pub provenance: Provenance,
}

impl Coloring {
    /// Wraps raw color codes, renumbering them densely in order of first
    /// appearance.
    pub fn from_codes(codes: &[u64], provenance: Provenance) -> Coloring {
        let mut ids: HashMap<u64, u32> = HashMap::new();
        let mut colors = Vec::with_capacity(codes.len());
        for &c in codes {
            let next = ids.len() as u32;
            let id = *ids.entry(c).or_insert(next);
            colors.push(id);
        }
        Coloring {
            colors,
            k: ids.len() as u32,
            provenance,
        }
    }

    pub fn from_colors(colors: Vec<u32>, provenance: Provenance) -> Coloring {
        let codes: Vec<u64> = colors.iter().map(|&c| c as u64).collect();
        Coloring::from_codes(&codes, provenance)
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn color(&self, v: usize) -> u32 {
        self.colors[v]
    }

    /// Vertices grouped by color id.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.k as usize];
        for (v, &c) in self.colors.iter().enumerate() {
            out[c as usize].push(v);
        }
        out
    }

    /// Restriction to a vertex subset (given as host-vertex ids), with
    /// colors re-densified.
    pub fn restrict(&self, vertices: &[usize]) -> Coloring {
        let codes: Vec<u64> = vertices.iter().map(|&v| self.colors[v] as u64).collect();
        Coloring::from_codes(&codes, self.provenance)
    }

    pub fn to_json(
        &self,
        ring_name: &str,
        graph_kind: &str,
        labels: Option<&[usize]>,
    ) -> serde_json::Value {
        let classes: Vec<Vec<usize>> = self
            .classes()
            .iter()
            .map(|class| class.iter().map(|&v| labels.map_or(v, |l| l[v])).collect())
            .collect();
        json!({
            "ring": ring_name,
            "graph_kind": graph_kind,
            "k": self.k,
            "classes": classes,
            "provenance": self.provenance.to_string(),
        })
    }
}

/// Checks properness. `Ok(None)` means proper; `Ok(Some((u, v)))` is the
/// lexicographically first edge joining equal colors.
pub fn verify_coloring(g: &Graph, c: &Coloring) -> Result<Option<(usize, usize)>, ColoringError> {
    if c.colors.len() != g.vertex_count() {
        return Err(ColoringError::SizeMismatch {
            got: c.colors.len(),
            want: g.vertex_count(),
        });
    }
    for u in 0..g.vertex_count() {
        for v in u + 1..g.vertex_count() {
            if g.adjacent(u, v) && c.colors[u] == c.colors[v] {
                return Ok(Some((u, v)));
            }
        }
    }
    Ok(None)
}

fn block_fields(s: &FiniteRing) -> Result<Vec<FiniteRing>, ColoringError> {
    s.descriptor()
        .blocks()
        .iter()
        .map(|b| {
            let d = RingDescriptor::new(vec![b.clone()], b.to_string());
            build_ring(&d).map_err(|e| ColoringError::Hypothesis(e.to_string()))
        })
        .collect()
}

/// Coloring of the total graph of a product of fields `F1 x ... x Fn`
/// (sizes ascending, `n >= 2`) with exactly `|F2| ... |Fn|` colors.
///
/// Requires either `char(F1) = 2`, or all characteristics odd with
/// `(|F1|, |F2|) != (3, 3)`.
pub fn color_total_fields(s: &FiniteRing) -> Result<Coloring, ColoringError> {
    let fields = block_fields(s)?;
    if fields.len() < 2 || !fields.iter().all(|f| f.is_field()) {
        return Err(ColoringError::Hypothesis(
            "need a product of at least two fields".into(),
        ));
    }
    let chars: Vec<u64> = fields.iter().map(field_char).collect();
    let hyp_even = chars[0] == 2;
    let hyp_odd =
        chars.iter().all(|&c| c != 2) && !(fields[0].order() == 3 && fields[1].order() == 3);
    if !hyp_even && !hyp_odd {
        return Err(ColoringError::Hypothesis(format!(
            "product of fields {} is outside both hypotheses",
            s.descriptor()
        )));
    }
    let arrays: Vec<_> = fields[1..]
        .iter()
        .map(|f| build_latin_sum(&fields[0], f))
        .collect::<Result<_, _>>()?;
    let mut codes = Vec::with_capacity(s.order());
    for x in 0..s.order() {
        let digits = s.decompose(x);
        let mut code = 0u64;
        for (i, arr) in arrays.iter().enumerate() {
            let e = arr.entry_by_labels(digits[0], digits[i + 1]) as u64;
            code = code * arr.alphabet_size as u64 + e;
        }
        codes.push(code);
    }
    let coloring = Coloring::from_codes(&codes, Provenance::FMap);
    let expected: u64 = fields[1..].iter().map(|f| f.order() as u64).product();
    assert_eq!(
        coloring.k() as u64,
        expected,
        "field-product coloring must use exactly |F2|...|Fn| colors"
    );
    Ok(coloring)
}

/// The stored 4-coloring of the total graph of the 3x3 product of
/// 3-element fields (element index = 3a + b).
pub fn z3z3_special_colors() -> [u32; 9] {
    // classes: {(0,0),(1,2)}, {(0,1),(1,0),(1,1)}, {(0,2),(2,0),(2,2)}, {(2,1)}
    [0, 1, 2, 1, 1, 0, 2, 3, 2]
}

/// The stored 9-class coloring of the triple product of 3-element fields
/// (element index = 9a + 3b + c, with -1 read as 2).
pub fn z3cubed_fixture_colors() -> [u32; 27] {
    let classes: [&[usize]; 9] = [
        &[10, 12, 4, 13],
        &[19, 22, 3],
        &[20, 6, 26],
        &[18, 7],
        &[9, 5, 14],
        &[21, 2, 23],
        &[24, 25, 1],
        &[0, 16],
        &[15, 8, 17, 11],
    ];
    let mut colors = [u32::MAX; 27];
    for (c, class) in classes.iter().enumerate() {
        for &v in *class {
            colors[v] = c as u32;
        }
    }
    assert!(colors.iter().all(|&c| c != u32::MAX));
    colors
}

fn is_z3z3(desc: &RingDescriptor) -> bool {
    desc.order() == 9 && desc.blocks().len() == 2 && desc.blocks().iter().all(|b| b.order() == 3)
}

fn is_z3cubed(desc: &RingDescriptor) -> bool {
    desc.order() == 27 && desc.blocks().len() == 3 && desc.blocks().iter().all(|b| b.order() == 3)
}

/// Coset coloring of the total graph of a local ring: with 2 a
/// zero-divisor every Z(R)-coset is a clique colored by position; with 2 a
/// unit the graph is the clique on Z(R) plus complete bipartite coset
/// pairs, which take two colors.
fn color_total_local(ring: &FiniteRing) -> Coloring {
    let q = ring.quotient_by_jacobson();
    let two_in_z = ring.is_zero_divisor(ring.two());
    let n = ring.order();
    let mut colors = vec![0u32; n];
    if two_in_z {
        for x in 0..n {
            colors[x] = q.coset_pos[x] as u32;
        }
    } else {
        for x in 0..n {
            let s = q.proj[x];
            if s == 0 {
                colors[x] = q.coset_pos[x] as u32;
            } else {
                let ns = q.ring.neg(s);
                colors[x] = if s < ns { 0 } else { 1 };
            }
        }
    }
    Coloring::from_colors(colors, Provenance::LocalCoset)
}

/// Coset scheme for rings with radical quotient the 3x3 product of
/// 3-element fields and a radical of size at least 2; uses 3|J(R)| colors.
fn color_total_z3z3_coset(ring: &FiniteRing) -> Coloring {
    let q = ring.quotient_by_jacobson();
    let k = ring.jacobson().len() as u32;
    assert!(k >= 2);
    let n = ring.order();
    let mut colors = vec![0u32; n];
    for x in 0..n {
        let pos = q.coset_pos[x] as u32;
        colors[x] = match q.proj[x] {
            0 => pos,             // (0,0): a_1..a_k
            1 | 3 => k + pos,     // (0,1), (1,0): a'_1..a'_k
            2 | 6 => 2 * k + pos, // (0,-1), (-1,0): a''_1..a''_k
            4 => k,               // (1,1): a'_1
            8 => 2 * k,           // (-1,-1): a''_1
            5 => 0,               // (1,-1): a_1
            7 => 1,               // (-1,1): a_2
            other => unreachable!("quotient of order 9 has no element {other}"),
        };
    }
    let c = Coloring::from_colors(colors, Provenance::Z3z3Coset);
    assert_eq!(c.k(), 3 * k);
    c
}

/// Total-graph coloring dispatch. Always returns a proper coloring; the
/// provenance records which construction fired. `total` must be the total
/// graph of `ring`.
pub fn color_total(ring: &FiniteRing, total: &Graph, budget: &crate::solver::Budget) -> Coloring {
    let desc = ring.descriptor();
    let coloring = if is_z3z3(desc) {
        Coloring::from_colors(z3z3_special_colors().to_vec(), Provenance::Z3z3Special)
    } else if is_z3cubed(desc) {
        Coloring::from_colors(
            z3cubed_fixture_colors().to_vec(),
            Provenance::Z3CubedFixture,
        )
    } else if ring.is_local() {
        color_total_local(ring)
    } else {
        let q = ring.quotient_by_jacobson();
        if is_z3z3(q.ring.descriptor()) {
            color_total_z3z3_coset(ring)
        } else {
            match color_total_fields(&q.ring) {
                Ok(qc) => {
                    let jac = ring.jacobson().len() as u64;
                    let codes: Vec<u64> = (0..ring.order())
                        .map(|x| qc.color(q.proj[x]) as u64 * jac + q.coset_pos[x] as u64)
                        .collect();
                    let c = Coloring::from_codes(
                        &codes,
                        if jac == 1 {
                            Provenance::FMap
                        } else {
                            Provenance::Lift
                        },
                    );
                    assert_eq!(c.k() as u64, jac * qc.k() as u64);
                    c
                }
                Err(_) => {
                    let out = crate::solver::chromatic_number(total, budget);
                    out.coloring
                }
            }
        }
    };
    debug_assert_eq!(verify_coloring(total, &coloring).unwrap(), None);
    coloring
}

/// Coloring of the regular subgraph of a product of fields with
/// `char(F1) = 2`, using exactly `(|F2|-1)...(|Fn|-1)` colors. Vertices
/// follow the ascending unit order used by the subgraph builder.
pub fn color_reg_char2(s: &FiniteRing) -> Result<Coloring, ColoringError> {
    let fields = block_fields(s)?;
    if fields.len() < 2 || !fields.iter().all(|f| f.is_field()) {
        return Err(ColoringError::Hypothesis(
            "need a product of at least two fields".into(),
        ));
    }
    if field_char(&fields[0]) != 2 {
        return Err(ColoringError::Hypothesis(
            "the smallest field must have characteristic 2".into(),
        ));
    }
    let arrays: Vec<_> = fields[1..]
        .iter()
        .map(|f| build_latin_sum_reg(&fields[0], f))
        .collect::<Result<_, _>>()?;
    let units = s.regular_elements();
    let mut codes = Vec::with_capacity(units.len());
    for &u in &units {
        let digits = s.decompose(u);
        let mut code = 0u64;
        for (i, arr) in arrays.iter().enumerate() {
            let e = arr.entry_by_labels(digits[0], digits[i + 1]) as u64;
            code = code * arr.alphabet_size as u64 + e;
        }
        codes.push(code);
    }
    let coloring = Coloring::from_codes(&codes, Provenance::GMap);
    let expected: u64 = fields[1..].iter().map(|f| f.order() as u64 - 1).product();
    assert_eq!(coloring.k() as u64, expected);
    Ok(coloring)
}

/// Coloring of the regular subgraph when the smallest residue field has
/// characteristic 2: unit cosets of the maximal ideal for local rings,
/// otherwise the regular field-product coloring lifted through the radical.
/// Uses exactly `|Reg(R)| / (|R/m| - 1)` colors, `m` the largest maximal
/// ideal.
pub fn color_reg(ring: &FiniteRing) -> Result<Coloring, ColoringError> {
    let (min_size, min_char) = ring.residue_fields()[0];
    if min_char != 2 {
        return Err(ColoringError::Hypothesis(format!(
            "smallest residue field has odd characteristic {min_char}"
        )));
    }
    let units = ring.regular_elements();
    let q = ring.quotient_by_jacobson();
    let coloring = if ring.is_local() {
        let codes: Vec<u64> = units.iter().map(|&x| q.coset_pos[x] as u64).collect();
        Coloring::from_codes(&codes, Provenance::RegLocalCoset)
    } else {
        let qc = color_reg_char2(&q.ring)?;
        let s_units = q.ring.regular_elements();
        let mut s_reg_index = vec![usize::MAX; q.ring.order()];
        for (i, &u) in s_units.iter().enumerate() {
            s_reg_index[u] = i;
        }
        let jac = ring.jacobson().len() as u64;
        let codes: Vec<u64> = units
            .iter()
            .map(|&x| qc.color(s_reg_index[q.proj[x]]) as u64 * jac + q.coset_pos[x] as u64)
            .collect();
        Coloring::from_codes(
            &codes,
            if jac == 1 {
                Provenance::GMap
            } else {
                Provenance::Lift
            },
        )
    };
    assert_eq!(
        coloring.k() as usize * (min_size - 1),
        units.len(),
        "regular coloring count must be |Reg| / (|R/m| - 1)"
    );
    Ok(coloring)
}

fn residue_neg(p: u64, e: usize) -> usize {
    // negation in GF(p, d): negate each base-p digit
    let mut rest = e as u64;
    let mut out = 0u64;
    let mut mult = 1u64;
    while rest > 0 {
        let d = rest % p;
        out += if d == 0 { 0 } else { p - d } * mult;
        mult *= p;
        rest /= p;
    }
    out as usize
}

/// Sign-vector coloring of the regular subgraph when every residue field
/// has odd characteristic: split each residue field's nonzero elements into
/// negation halves and color a unit by which half each residue lands in.
/// Uses exactly `2^|Max(R)|` colors.
pub fn color_reg_odd(ring: &FiniteRing) -> Result<Coloring, ColoringError> {
    if ring.residue_fields().iter().any(|&(_, c)| c == 2) {
        return Err(ColoringError::Hypothesis(
            "every residue field must have odd characteristic".into(),
        ));
    }
    let units = ring.regular_elements();
    let blocks = ring.blocks();
    let mut codes = Vec::with_capacity(units.len());
    for &x in &units {
        let digits = ring.decompose(x);
        let mut code = 0u64;
        for (i, b) in blocks.iter().enumerate() {
            let e = b.residue_of(digits[i]);
            debug_assert_ne!(e, 0, "unit has nonzero residues");
            let in_half = e < residue_neg(b.p, e);
            code = code << 1 | in_half as u64;
        }
        codes.push(code);
    }
    let coloring = Coloring::from_codes(&codes, Provenance::RegOddSign);
    assert_eq!(coloring.k() as u64, 1 << blocks.len());
    Ok(coloring)
}

/// Clique witnesses: the largest maximal ideal, pairwise adjacent in the
/// total graph because ideals absorb addition into the zero-divisors.
pub fn max_ideal_clique(ring: &FiniteRing) -> Vec<usize> {
    ring.maximal_ideals()[0].ideal.members().to_vec()
}

/// A `2^|Max(R)|` clique of units for odd residue fields: one unit per
/// sign vector, residues +1 or -1 in each coordinate.
pub fn reg_odd_clique(ring: &FiniteRing) -> Vec<usize> {
    let q = ring.quotient_by_jacobson();
    let s = &q.ring;
    let n = ring.blocks().len();
    let mut out = Vec::with_capacity(1 << n);
    for eps in 0..1u64 << n {
        let digits: Vec<usize> = (0..n)
            .map(|i| {
                let f_order = s.blocks()[i].order;
                let p = s.blocks()[i].p;
                if eps >> (n - 1 - i) & 1 == 1 {
                    1
                } else {
                    let neg_one = residue_neg(p, 1);
                    debug_assert!(neg_one < f_order);
                    neg_one
                }
            })
            .collect();
        let s_elem = s.compose(&digits);
        out.push(q.cosets[s_elem][0]);
    }
    out
}

/// The full preimage of the clique `{1} x F2* x ... x Fn*` under the
/// radical projection; its size is `|Reg(R)| / (|R/m1| - 1)`.
pub fn reg_char2_clique(ring: &FiniteRing) -> Vec<usize> {
    let q = ring.quotient_by_jacobson();
    let s = &q.ring;
    let mut out = Vec::new();
    for su in s.regular_elements() {
        let digits = s.decompose(su);
        if digits[0] == 1 {
            out.extend_from_slice(&q.cosets[su]);
        }
    }
    out.sort_unstable();
    out
}

//! Finite commutative rings with unity, presented as products of local
//! blocks, together with their derived structure: units, zero-divisors,
//! nilradical, Jacobson radical, maximal ideals, the quotient by the
//! radical, and idempotent decomposition.
//!
//! Elements are indexed `0..order`. The index is the mixed-radix value of
//! the element's block tuple, first block most significant; index 0 is the
//! additive identity. The multiplicative identity is `one()` (index 1
//! exactly when the ring is a single local block).

pub mod block;
pub mod descriptor;
pub mod parse;
pub mod poly;

pub use block::{BlockError, LocalBlock};
pub use descriptor::{BlockDescriptor, RingDescriptor};
pub use parse::{parse_block_spec, parse_ring_spec, ParseError};

use serde_json::json;
use std::sync::OnceLock;
use thiserror::Error;

/// Upper bound on ring order for plain arithmetic realizations.
pub const ARITHMETIC_CAP: usize = 4096;
/// Orders up to this bound compute zero-divisors by the defining product
/// scan and cross-check the structural description; larger rings use the
/// structural description alone.
const ZSCAN_LIMIT: usize = 2048;
/// Cap for the idempotent decomposition oracle.
pub const IDEMPOTENT_CAP: usize = 512;

#[derive(Debug, Error)]
pub enum RingError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Block(#[from] BlockError),
    #[error("ring order {order} exceeds cap {cap}")]
    CapExceeded { order: u64, cap: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdealTag {
    Maximal,
    Jacobson,
    Nilradical,
    Custom,
}

/// A subset of ring elements known to be an ideal, with O(1) membership.
#[derive(Debug, Clone)]
pub struct IdealSet {
    members: Vec<usize>,
    mask: Vec<u64>,
    pub tag: IdealTag,
}

impl IdealSet {
    pub fn from_members(mut members: Vec<usize>, order: usize, tag: IdealTag) -> IdealSet {
        members.sort_unstable();
        members.dedup();
        let mut mask = vec![0u64; order.div_ceil(64)];
        for &m in &members {
            mask[m / 64] |= 1 << (m % 64);
        }
        IdealSet { members, mask, tag }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.mask[x / 64] >> (x % 64) & 1 == 1
    }

    /// Checks the ideal axioms against the ring: contains 0, closed under
    /// addition and negation, absorbs multiplication by every element.
    pub fn verify_ideal(&self, ring: &FiniteRing) -> Result<(), String> {
        if !self.contains(0) {
            return Err("ideal does not contain 0".into());
        }
        for &a in &self.members {
            if !self.contains(ring.neg(a)) {
                return Err(format!("not closed under negation at {a}"));
            }
            for &b in &self.members {
                if !self.contains(ring.add(a, b)) {
                    return Err(format!("not closed under addition at ({a}, {b})"));
                }
            }
            for r in 0..ring.order() {
                if !self.contains(ring.mul(a, r)) {
                    return Err(format!("does not absorb multiplication at ({a}, {r})"));
                }
            }
        }
        Ok(())
    }
}

/// A maximal ideal with its residue field data.
#[derive(Debug, Clone)]
pub struct MaximalIdeal {
    pub ideal: IdealSet,
    pub residue_size: usize,
    pub residue_char: u64,
    pub block_index: usize,
}

/// The quotient of a ring by its Jacobson radical: a product of fields,
/// together with the projection and the radical cosets.
pub struct QuotientData {
    pub ring: Box<FiniteRing>,
    /// `proj[x]` is the index of `x + J(R)` in the quotient ring.
    pub proj: Vec<usize>,
    /// `cosets[s]` lists the elements mapping to quotient element `s`,
    /// ascending.
    pub cosets: Vec<Vec<usize>>,
    /// Rank of each element inside its radical coset.
    pub coset_pos: Vec<usize>,
}

pub struct FiniteRing {
    descriptor: RingDescriptor,
    blocks: Vec<LocalBlock>,
    order: usize,
    strides: Vec<usize>,
    one: usize,
    units_cache: OnceLock<Vec<bool>>,
    zdiv_cache: OnceLock<Vec<usize>>,
    nil_cache: OnceLock<IdealSet>,
    jac_cache: OnceLock<IdealSet>,
    max_cache: OnceLock<Vec<MaximalIdeal>>,
    quot_cache: OnceLock<QuotientData>,
}

/// Parses a spec string and builds the ring under the default cap.
pub fn ring_from_spec(text: &str) -> Result<FiniteRing, RingError> {
    build_ring(&parse_ring_spec(text)?)
}

/// Builds a ring under the default arithmetic cap.
pub fn build_ring(desc: &RingDescriptor) -> Result<FiniteRing, RingError> {
    build_ring_with_cap(desc, ARITHMETIC_CAP)
}

pub fn build_ring_with_cap(desc: &RingDescriptor, cap: usize) -> Result<FiniteRing, RingError> {
    let order = desc.order();
    if order > cap as u64 {
        return Err(RingError::CapExceeded {
            order,
            cap: cap as u64,
        });
    }
    let blocks: Vec<LocalBlock> = desc
        .blocks()
        .iter()
        .map(LocalBlock::build)
        .collect::<Result<_, _>>()?;
    let order = order as usize;
    let mut strides = vec![1usize; blocks.len()];
    for i in (0..blocks.len().saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * blocks[i + 1].order;
    }
    let one = strides.iter().sum();
    Ok(FiniteRing {
        descriptor: desc.clone(),
        blocks,
        order,
        strides,
        one,
        units_cache: OnceLock::new(),
        zdiv_cache: OnceLock::new(),
        nil_cache: OnceLock::new(),
        jac_cache: OnceLock::new(),
        max_cache: OnceLock::new(),
        quot_cache: OnceLock::new(),
    })
}

impl std::fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FiniteRing({}, order {})", self.descriptor, self.order)
    }
}

impl FiniteRing {
    pub fn descriptor(&self) -> &RingDescriptor {
        &self.descriptor
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn blocks(&self) -> &[LocalBlock] {
        &self.blocks
    }

    pub fn zero(&self) -> usize {
        0
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn two(&self) -> usize {
        self.add(self.one, self.one)
    }

    pub fn decompose(&self, idx: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.blocks.len());
        for (i, b) in self.blocks.iter().enumerate() {
            out.push(idx / self.strides[i] % b.order);
        }
        out
    }

    pub fn compose(&self, digits: &[usize]) -> usize {
        digits.iter().zip(&self.strides).map(|(&d, &s)| d * s).sum()
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let mut out = 0;
        for (i, blk) in self.blocks.iter().enumerate() {
            let s = self.strides[i];
            out += blk.add(a / s % blk.order, b / s % blk.order) * s;
        }
        out
    }

    pub fn neg(&self, a: usize) -> usize {
        let mut out = 0;
        for (i, blk) in self.blocks.iter().enumerate() {
            let s = self.strides[i];
            out += blk.neg(a / s % blk.order) * s;
        }
        out
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        let mut out = 0;
        for (i, blk) in self.blocks.iter().enumerate() {
            let s = self.strides[i];
            out += blk.mul(a / s % blk.order, b / s % blk.order) * s;
        }
        out
    }

    pub fn element_label(&self, idx: usize) -> String {
        if self.blocks.len() == 1 {
            self.blocks[0].element_label(idx)
        } else {
            let parts: Vec<String> = self
                .blocks
                .iter()
                .enumerate()
                .map(|(i, b)| b.element_label(idx / self.strides[i] % b.order))
                .collect();
            format!("({})", parts.join(","))
        }
    }

    /// Unit mask, from the block structure.
    pub fn units(&self) -> &[bool] {
        self.units_cache.get_or_init(|| {
            (0..self.order)
                .map(|x| {
                    self.blocks
                        .iter()
                        .enumerate()
                        .all(|(i, b)| b.is_unit(x / self.strides[i] % b.order))
                })
                .collect()
        })
    }

    pub fn is_unit(&self, x: usize) -> bool {
        self.units()[x]
    }

    /// Regular elements; in a finite ring these are exactly the units.
    pub fn regular_elements(&self) -> Vec<usize> {
        (0..self.order).filter(|&x| self.is_unit(x)).collect()
    }

    /// Zero-divisors (0 included). Computed by the defining product scan on
    /// small rings and cross-checked against the union of the maximal
    /// ideals; a disagreement is an arithmetic bug and panics.
    pub fn zero_divisors(&self) -> &[usize] {
        self.zdiv_cache.get_or_init(|| {
            let structural: Vec<usize> = (0..self.order)
                .filter(|&x| self.maximal_ideals().iter().any(|m| m.ideal.contains(x)))
                .collect();
            if self.order <= ZSCAN_LIMIT {
                let scanned: Vec<usize> = (0..self.order)
                    .filter(|&x| (1..self.order).any(|y| self.mul(x, y) == 0))
                    .collect();
                assert_eq!(
                    scanned, structural,
                    "zero-divisor scan disagrees with the union of maximal ideals"
                );
                scanned
            } else {
                structural
            }
        })
    }

    pub fn is_zero_divisor(&self, x: usize) -> bool {
        // Kaplansky: in a zero-dimensional ring, Z(R) is the union of the
        // maximal ideals, i.e. the complement of the units.
        !self.is_unit(x)
    }

    /// Nilradical, computed elementwise by repeated squaring.
    pub fn nilradical(&self) -> &IdealSet {
        self.nil_cache.get_or_init(|| {
            let steps = usize::BITS - (self.order - 1).leading_zeros() + 1;
            let members: Vec<usize> = (0..self.order)
                .filter(|&x| {
                    let mut y = x;
                    for _ in 0..=steps {
                        if y == 0 {
                            return true;
                        }
                        y = self.mul(y, y);
                    }
                    false
                })
                .collect();
            IdealSet::from_members(members, self.order, IdealTag::Nilradical)
        })
    }

    /// Jacobson radical: intersection of the maximal ideals. Asserts the
    /// zero-dimensional identity `Nil(R) = J(R)`.
    pub fn jacobson(&self) -> &IdealSet {
        self.jac_cache.get_or_init(|| {
            let members: Vec<usize> = (0..self.order)
                .filter(|&x| self.maximal_ideals().iter().all(|m| m.ideal.contains(x)))
                .collect();
            let jac = IdealSet::from_members(members, self.order, IdealTag::Jacobson);
            assert_eq!(
                jac.members(),
                self.nilradical().members(),
                "Nil(R) != J(R): arithmetic bug"
            );
            jac
        })
    }

    /// Maximal ideals, sorted by size descending. The ideal for block `i`
    /// consists of the elements whose `i`-th coordinate is a non-unit.
    pub fn maximal_ideals(&self) -> &[MaximalIdeal] {
        self.max_cache.get_or_init(|| {
            let mut out: Vec<MaximalIdeal> = self
                .blocks
                .iter()
                .enumerate()
                .map(|(i, b)| {
                    let members: Vec<usize> = (0..self.order)
                        .filter(|&x| !b.is_unit(x / self.strides[i] % b.order))
                        .collect();
                    MaximalIdeal {
                        ideal: IdealSet::from_members(members, self.order, IdealTag::Maximal),
                        residue_size: b.residue_size,
                        residue_char: b.p,
                        block_index: i,
                    }
                })
                .collect();
            out.sort_by(|a, b| {
                b.ideal
                    .len()
                    .cmp(&a.ideal.len())
                    .then(a.block_index.cmp(&b.block_index))
            });
            out
        })
    }

    /// Size of the largest maximal ideal.
    pub fn max_ideal_size(&self) -> usize {
        self.maximal_ideals()[0].ideal.len()
    }

    /// Residue field sizes with characteristics, ascending by size.
    pub fn residue_fields(&self) -> Vec<(usize, u64)> {
        let mut out: Vec<(usize, u64)> =
            self.blocks.iter().map(|b| (b.residue_size, b.p)).collect();
        out.sort_unstable();
        out
    }

    pub fn is_field(&self) -> bool {
        self.blocks.len() == 1 && self.blocks[0].is_field()
    }

    pub fn is_local(&self) -> bool {
        self.blocks.len() == 1
    }

    pub fn is_reduced(&self) -> bool {
        self.nilradical().len() == 1
    }

    /// The reduced quotient `R/J(R)` as a product of the residue fields,
    /// with the coordinatewise residue projection.
    pub fn quotient_by_jacobson(&self) -> &QuotientData {
        self.quot_cache.get_or_init(|| {
            let sblocks: Vec<BlockDescriptor> = self
                .blocks
                .iter()
                .map(|b| {
                    let mut d = 0u32;
                    let mut t = 1usize;
                    while t < b.residue_size {
                        t *= b.p as usize;
                        d += 1;
                    }
                    BlockDescriptor::Gf {
                        p: b.p,
                        k: d.max(1),
                    }
                    .normalize()
                })
                .collect();
            let sdesc = RingDescriptor::new(
                sblocks,
                format!("quotient of {}", self.descriptor.canonical_string()),
            );
            let s = build_ring(&sdesc).expect("residue product is within cap");
            // The canonical sort keeps one field block per original block,
            // in the same order (blocks were already sorted by residue size).
            assert_eq!(s.blocks.len(), self.blocks.len());
            for (sb, rb) in s.blocks.iter().zip(&self.blocks) {
                assert_eq!(
                    sb.order, rb.residue_size,
                    "block order mismatch in quotient"
                );
            }
            let proj: Vec<usize> = (0..self.order)
                .map(|x| {
                    let digits: Vec<usize> = self
                        .blocks
                        .iter()
                        .enumerate()
                        .map(|(i, b)| b.residue_of(x / self.strides[i] % b.order))
                        .collect();
                    s.compose(&digits)
                })
                .collect();
            let mut cosets = vec![Vec::new(); s.order];
            let mut coset_pos = vec![0usize; self.order];
            for (x, &sx) in proj.iter().enumerate() {
                coset_pos[x] = cosets[sx].len();
                cosets[sx].push(x);
            }
            assert_eq!(s.order * self.jacobson().len(), self.order);
            QuotientData {
                ring: Box::new(s),
                proj,
                cosets,
                coset_pos,
            }
        })
    }

    /// Verifies the ring axioms on all triples when `order <= exhaustive_cap`,
    /// otherwise on a deterministic sample of the same count.
    pub fn verify_ring_axioms(&self, exhaustive_cap: usize) -> Result<(), String> {
        let n = self.order;
        let check = |a: usize, b: usize, c: usize| -> Result<(), String> {
            if self.add(a, b) != self.add(b, a) {
                return Err(format!("addition not commutative at ({a},{b})"));
            }
            if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                return Err(format!("addition not associative at ({a},{b},{c})"));
            }
            if self.mul(a, b) != self.mul(b, a) {
                return Err(format!("multiplication not commutative at ({a},{b})"));
            }
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                return Err(format!("multiplication not associative at ({a},{b},{c})"));
            }
            if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                return Err(format!("distributivity fails at ({a},{b},{c})"));
            }
            Ok(())
        };
        for a in 0..n {
            if self.add(a, 0) != a {
                return Err(format!("0 is not an additive identity at {a}"));
            }
            if self.add(a, self.neg(a)) != 0 {
                return Err(format!("negation fails at {a}"));
            }
            if self.mul(a, self.one) != a {
                return Err(format!("1 is not a multiplicative identity at {a}"));
            }
        }
        if n <= exhaustive_cap {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        check(a, b, c)?;
                    }
                }
            }
        } else {
            // xorshift-style deterministic sample of n^1.5 triples
            let mut state = 0x9e3779b97f4a7c15u64;
            let samples = (n * n).min(200_000);
            for _ in 0..samples {
                let mut next = || {
                    state ^= state << 13;
                    state ^= state >> 7;
                    state ^= state << 17;
                    (state % n as u64) as usize
                };
                let (a, b, c) = (next(), next(), next());
                check(a, b, c)?;
            }
        }
        Ok(())
    }

    /// JSON description of the ring and its derived sets, element indices
    /// throughout.
    pub fn to_json(&self) -> serde_json::Value {
        let units: Vec<usize> = (0..self.order).filter(|&x| self.is_unit(x)).collect();
        json!({
            "order": self.order,
            "blocks": self.descriptor.blocks().iter().map(|b| b.to_string()).collect::<Vec<_>>(),
            "zero_divisors": self.zero_divisors(),
            "units": units,
            "jacobson": self.jacobson().members(),
            "maximal_ideals": self.maximal_ideals().iter().map(|m| json!({
                "members": m.ideal.members(),
                "residue_size": m.residue_size,
                "residue_char": m.residue_char,
            })).collect::<Vec<_>>(),
        })
    }
}

#[derive(Debug, Error)]
pub enum DecomposeError {
    #[error("idempotent decomposition supports orders up to {cap}, got {order}")]
    CapExceeded { order: usize, cap: usize },
    #[error("component of idempotent {idem} is not local (arithmetic bug)")]
    ComponentNotLocal { idem: usize },
}

/// A component `eR` of an idempotent decomposition, carrying the induced
/// arithmetic. Positions index `members`; the unity is `e` itself.
pub struct ComponentRing {
    pub idempotent: usize,
    pub members: Vec<usize>,
    pos_of: Vec<usize>,
    add_tbl: Vec<usize>,
    mul_tbl: Vec<usize>,
}

impl ComponentRing {
    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn one_pos(&self) -> usize {
        self.pos_of[self.idempotent]
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add_tbl[a * self.order() + b]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul_tbl[a * self.order() + b]
    }

    /// A finite commutative ring is local iff its non-units are closed
    /// under addition (absorption under multiplication always holds).
    pub fn is_local(&self) -> bool {
        let n = self.order();
        let one = self.one_pos();
        let unit: Vec<bool> = (0..n)
            .map(|x| (0..n).any(|y| self.mul(x, y) == one))
            .collect();
        let nonunits: Vec<usize> = (0..n).filter(|&x| !unit[x]).collect();
        nonunits
            .iter()
            .all(|&a| nonunits.iter().all(|&b| !unit[self.add(a, b)]))
    }
}

/// Decomposes a ring into local components along its primitive idempotents,
/// by exhaustive scan. This is an oracle for the block presentation: it
/// never consults the descriptor.
pub fn idempotent_decompose(ring: &FiniteRing) -> Result<Vec<ComponentRing>, DecomposeError> {
    let n = ring.order();
    if n > IDEMPOTENT_CAP {
        return Err(DecomposeError::CapExceeded {
            order: n,
            cap: IDEMPOTENT_CAP,
        });
    }
    let idems: Vec<usize> = (0..n).filter(|&e| ring.mul(e, e) == e).collect();
    let primitive: Vec<usize> = idems
        .iter()
        .copied()
        .filter(|&e| e != 0)
        .filter(|&e| {
            // e is primitive iff no nonzero idempotent other than e sits
            // below it in the order f <= e iff ef = f.
            !idems
                .iter()
                .any(|&f| f != 0 && f != e && ring.mul(e, f) == f)
        })
        .collect();

    let mut out = Vec::new();
    for &e in &primitive {
        let mut members: Vec<usize> = (0..n).map(|x| ring.mul(e, x)).collect();
        members.sort_unstable();
        members.dedup();
        let mut pos_of = vec![usize::MAX; n];
        for (i, &m) in members.iter().enumerate() {
            pos_of[m] = i;
        }
        let k = members.len();
        let mut add_tbl = vec![0usize; k * k];
        let mut mul_tbl = vec![0usize; k * k];
        for a in 0..k {
            for b in 0..k {
                add_tbl[a * k + b] = pos_of[ring.add(members[a], members[b])];
                mul_tbl[a * k + b] = pos_of[ring.mul(members[a], members[b])];
            }
        }
        let comp = ComponentRing {
            idempotent: e,
            members,
            pos_of,
            add_tbl,
            mul_tbl,
        };
        if !comp.is_local() {
            return Err(DecomposeError::ComponentNotLocal { idem: e });
        }
        out.push(comp);
    }
    Ok(out)
}

//! Realization of one local block: element enumeration, arithmetic, the
//! locality check, and the projection onto the block's residue field.
//!
//! Elements of a block `Z_{p^k}[x]/(f)` with `d = deg f` are coefficient
//! tuples `(c_0, ..., c_{d-1})` with `c_i < p^k`, indexed by the base-`p^k`
//! value `sum c_i (p^k)^i`. Index 0 is zero and index 1 is one.

use super::descriptor::BlockDescriptor;
use super::poly;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum BlockError {
    #[error("block not local: non-units not additively closed in {block}: {a} + {b} is a unit")]
    NotLocal { block: String, a: String, b: String },
}

#[derive(Debug)]
pub struct LocalBlock {
    pub desc: BlockDescriptor,
    pub p: u64,
    pub base: u64,
    pub deg: usize,
    pub modulus: Vec<u64>,
    pub order: usize,
    nilpotent: Vec<bool>,
    nonunits: Vec<usize>,
    pub residue_size: usize,
    resid_proj: Vec<usize>,
    // small blocks keep multiplication tabled; arithmetic is hot in the
    // graph builders and solvers
    mul_tbl: Option<Vec<u16>>,
}

/// Orders up to this bound precompute the multiplication table.
const MUL_TABLE_CAP: usize = 256;

impl LocalBlock {
    pub fn build(desc: &BlockDescriptor) -> Result<LocalBlock, BlockError> {
        let (p, base, modulus) = match desc {
            BlockDescriptor::Zpk { p, k } => (*p, p.pow(*k), vec![0, 1]),
            BlockDescriptor::Gf { p, k } => (*p, *p, poly::find_irreducible(*p, *k)),
            BlockDescriptor::Quot { p, k, modulus } => {
                let base = p.pow(*k);
                let m = poly::trim(modulus.iter().map(|&c| c % base).collect());
                (*p, base, m)
            }
        };
        let deg = poly::degree(&modulus);
        assert!(deg >= 1 && modulus[deg] == 1, "modulus must be monic");
        let order = (base as usize).pow(deg as u32);

        let mut block = LocalBlock {
            desc: desc.clone(),
            p,
            base,
            deg,
            modulus,
            order,
            nilpotent: Vec::new(),
            nonunits: Vec::new(),
            residue_size: 0,
            resid_proj: Vec::new(),
            mul_tbl: None,
        };
        if order <= MUL_TABLE_CAP {
            let mut tbl = vec![0u16; order * order];
            for a in 0..order {
                for b in a..order {
                    let m = block.mul_raw(a, b) as u16;
                    tbl[a * order + b] = m;
                    tbl[b * order + a] = m;
                }
            }
            block.mul_tbl = Some(tbl);
        }
        block.nilpotent = block.scan_nilpotents();
        block.check_local()?;
        block.build_residue_projection();
        Ok(block)
    }

    pub fn decode(&self, idx: usize) -> Vec<u64> {
        let mut c = vec![0u64; self.deg];
        let mut rest = idx as u64;
        for co in c.iter_mut() {
            *co = rest % self.base;
            rest /= self.base;
        }
        c
    }

    pub fn encode(&self, coeffs: &[u64]) -> usize {
        let mut idx = 0u64;
        for i in (0..self.deg).rev() {
            idx = idx * self.base + coeffs.get(i).copied().unwrap_or(0) % self.base;
        }
        idx as usize
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let mut ra = a as u64;
        let mut rb = b as u64;
        let mut idx = 0u64;
        let mut mult = 1u64;
        for _ in 0..self.deg {
            let s = (ra % self.base + rb % self.base) % self.base;
            idx += s * mult;
            mult *= self.base;
            ra /= self.base;
            rb /= self.base;
        }
        idx as usize
    }

    pub fn neg(&self, a: usize) -> usize {
        let mut ra = a as u64;
        let mut idx = 0u64;
        let mut mult = 1u64;
        for _ in 0..self.deg {
            let d = ra % self.base;
            let n = if d == 0 { 0 } else { self.base - d };
            idx += n * mult;
            mult *= self.base;
            ra /= self.base;
        }
        idx as usize
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.mul_tbl {
            Some(tbl) => tbl[a * self.order + b] as usize,
            None => self.mul_raw(a, b),
        }
    }

    fn mul_raw(&self, a: usize, b: usize) -> usize {
        let ca = self.decode(a);
        let cb = self.decode(b);
        let prod = poly::mul_mod(&ca, &cb, self.base);
        let red = poly::rem_monic(&prod, &self.modulus, self.base);
        self.encode(&red)
    }

    pub fn one(&self) -> usize {
        1
    }

    pub fn is_unit(&self, a: usize) -> bool {
        !self.nilpotent[a]
    }

    /// The maximal ideal: all non-units, sorted ascending.
    pub fn nonunits(&self) -> &[usize] {
        &self.nonunits
    }

    pub fn is_field(&self) -> bool {
        self.nonunits.len() == 1
    }

    /// Projection onto the residue field, presented as the canonical
    /// `GF(p, d)` block of the same size.
    pub fn residue_of(&self, a: usize) -> usize {
        self.resid_proj[a]
    }

    pub fn element_label(&self, idx: usize) -> String {
        if self.deg == 1 {
            format!("{idx}")
        } else {
            poly::display(&self.decode(idx))
        }
    }

    fn scan_nilpotents(&self) -> Vec<bool> {
        // x is nilpotent iff repeated squaring reaches 0; 2^t >= order steps
        // always suffice in a finite ring.
        let steps = usize::BITS - (self.order - 1).leading_zeros() + 1;
        (0..self.order)
            .map(|x| {
                let mut y = x;
                for _ in 0..=steps {
                    if y == 0 {
                        return true;
                    }
                    y = self.mul(y, y);
                }
                y == 0
            })
            .collect()
    }

    fn check_local(&mut self) -> Result<(), BlockError> {
        let known_local = match &self.desc {
            BlockDescriptor::Zpk { .. } => true,
            BlockDescriptor::Gf { .. } => true,
            BlockDescriptor::Quot { p, k, modulus } => {
                // A quotient of Z_p[x] by an irreducible polynomial is a field.
                *k == 1 && poly::is_irreducible(modulus, *p)
            }
        };
        let local = known_local || self.quotient_by_nilpotents_is_domain();
        if local {
            self.nonunits = (0..self.order).filter(|&x| self.nilpotent[x]).collect();
            Ok(())
        } else {
            Err(self.not_local_witness())
        }
    }

    /// Partition into cosets of the nilradical; returns (coset id per
    /// element, representative per coset).
    fn nil_cosets(&self) -> (Vec<usize>, Vec<usize>) {
        let nil: Vec<usize> = (0..self.order).filter(|&x| self.nilpotent[x]).collect();
        let mut coset_of = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        for x in 0..self.order {
            if coset_of[x] != usize::MAX {
                continue;
            }
            let id = reps.len();
            reps.push(x);
            for &n in &nil {
                coset_of[self.add(x, n)] = id;
            }
        }
        (coset_of, reps)
    }

    fn quotient_by_nilpotents_is_domain(&self) -> bool {
        let (coset_of, reps) = self.nil_cosets();
        for a in 1..reps.len() {
            for b in a..reps.len() {
                if coset_of[self.mul(reps[a], reps[b])] == 0 {
                    return false;
                }
            }
        }
        true
    }

    fn not_local_witness(&self) -> BlockError {
        // Compute the true unit set by exhaustive inverse search, then find
        // two non-units whose sum is a unit.
        let units: Vec<bool> = (0..self.order)
            .map(|x| (0..self.order).any(|y| self.mul(x, y) == 1))
            .collect();
        let nonunits: Vec<usize> = (0..self.order).filter(|&x| !units[x]).collect();
        for &a in &nonunits {
            for &b in &nonunits {
                if units[self.add(a, b)] {
                    return BlockError::NotLocal {
                        block: self.desc.to_string(),
                        a: self.element_label(a),
                        b: self.element_label(b),
                    };
                }
            }
        }
        unreachable!("a non-local block always has an additive witness")
    }

    fn build_residue_projection(&mut self) {
        let (coset_of, reps) = self.nil_cosets();
        let q = reps.len();
        self.residue_size = q;

        // q = p^d_res
        let mut d_res = 0u32;
        let mut t = 1usize;
        while t < q {
            t *= self.p as usize;
            d_res += 1;
        }
        assert_eq!(t, q, "residue field size must be a power of p");
        let d_res = d_res.max(1);

        let qadd = |a: usize, b: usize| coset_of[self.add(reps[a], reps[b])];
        let qmul = |a: usize, b: usize| coset_of[self.mul(reps[a], reps[b])];
        let int_coset = |c: u64| coset_of[(c % self.base) as usize];

        // Find a root of the canonical irreducible polynomial inside the
        // quotient field; mapping y -> root is the field isomorphism.
        let mres = poly::find_irreducible(self.p, d_res);
        let mut root = None;
        for alpha in 0..q {
            let mut acc = 0usize;
            for &c in mres.iter().rev() {
                acc = qadd(qmul(acc, alpha), int_coset(c));
            }
            if acc == 0 {
                root = Some(alpha);
                break;
            }
        }
        let alpha = root.expect("canonical modulus has a root in any field of matching order");

        // table[f] = value of the canonical field element f inside the quotient
        let mut into_quot = vec![0usize; q];
        for (f, into) in into_quot.iter_mut().enumerate() {
            let mut digits = vec![0u64; d_res as usize];
            let mut rest = f as u64;
            for d in digits.iter_mut() {
                *d = rest % self.p;
                rest /= self.p;
            }
            let mut acc = 0usize;
            for &c in digits.iter().rev() {
                acc = qadd(qmul(acc, alpha), int_coset(c));
            }
            *into = acc;
        }
        let mut from_quot = vec![usize::MAX; q];
        for (f, &c) in into_quot.iter().enumerate() {
            assert_eq!(
                from_quot[c],
                usize::MAX,
                "field embedding must be injective"
            );
            from_quot[c] = f;
        }
        self.resid_proj = (0..self.order).map(|x| from_quot[coset_of[x]]).collect();
    }
}

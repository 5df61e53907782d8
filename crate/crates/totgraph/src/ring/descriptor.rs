//! Ring descriptors: the canonical presentation of a finite commutative
//! ring as a product of local blocks.

use super::poly;
use std::fmt;

/// Canonical ordering key of a block; see [`BlockDescriptor::sort_key`].
pub type BlockSortKey = (u64, u64, u8, Vec<u64>, u64);
/// Deduplication/ordering key of a whole descriptor.
pub type DescriptorKey = (usize, Vec<BlockSortKey>);

/// Blocks larger than this can never be realized, so canonicalization
/// skips factor searches for them and uses the prime as a sort proxy.
const CANONICAL_SEARCH_CAP: u64 = 4096;

/// One local factor of a ring presentation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BlockDescriptor {
    /// `Z_{p^k}`, integers modulo a prime power.
    Zpk { p: u64, k: u32 },
    /// The field with `p^k` elements, realized modulo the canonical
    /// irreducible polynomial of degree `k` over `Z_p`.
    Gf { p: u64, k: u32 },
    /// `Z_{p^k}[x]/(f)` for a monic `f` of degree >= 1.
    Quot { p: u64, k: u32, modulus: Vec<u64> },
}

impl BlockDescriptor {
    /// Block order, saturating at `u64::MAX` (oversized blocks are
    /// rejected by the build cap anyway).
    pub fn order(&self) -> u64 {
        let pow = |b: u64, e: u32| b.checked_pow(e).unwrap_or(u64::MAX);
        match self {
            BlockDescriptor::Zpk { p, k } => pow(*p, *k),
            BlockDescriptor::Gf { p, k } => pow(*p, *k),
            BlockDescriptor::Quot { p, k, modulus } => {
                pow(pow(*p, *k), poly::degree(modulus) as u32)
            }
        }
    }

    pub fn prime(&self) -> u64 {
        match self {
            BlockDescriptor::Zpk { p, .. }
            | BlockDescriptor::Gf { p, .. }
            | BlockDescriptor::Quot { p, .. } => *p,
        }
    }

    /// Size of the block's residue field. For a quotient block this is
    /// `p^d` where `d` is the smallest degree of an irreducible factor of
    /// the modulus mod `p`; when the block is local that factor is unique.
    pub fn residue_size(&self) -> u64 {
        match self {
            BlockDescriptor::Zpk { p, .. } => *p,
            BlockDescriptor::Gf { p, k } => p.checked_pow(*k).unwrap_or(u64::MAX),
            BlockDescriptor::Quot { p, modulus, .. } => {
                if self.order() > CANONICAL_SEARCH_CAP {
                    return *p;
                }
                p.pow(poly::min_irreducible_factor_degree(modulus, *p) as u32)
            }
        }
    }

    fn kind_rank(&self) -> u8 {
        match self {
            BlockDescriptor::Zpk { .. } => 0,
            BlockDescriptor::Gf { .. } => 1,
            BlockDescriptor::Quot { .. } => 2,
        }
    }

    /// Canonical sort key: residue-field size, then block order, then kind,
    /// then modulus coefficients (high degree first), then the prime.
    pub fn sort_key(&self) -> BlockSortKey {
        // Zpk and Gf blocks are already pinned by (residue size, order,
        // kind, prime); only quotient blocks need the modulus in the key.
        let modulus = match self {
            BlockDescriptor::Zpk { .. } | BlockDescriptor::Gf { .. } => vec![],
            BlockDescriptor::Quot { modulus, .. } => {
                let mut m = modulus.clone();
                m.reverse();
                m
            }
        };
        (
            self.residue_size(),
            self.order(),
            self.kind_rank(),
            modulus,
            self.prime(),
        )
    }

    /// Rewrites presentations with an obviously equivalent smaller form:
    /// `GF(p^1)` is `Z_p`, and a degree-one quotient `Z_{p^k}[x]/(x+c)`
    /// collapses to `Z_{p^k}`.
    pub fn normalize(self) -> BlockDescriptor {
        match self {
            BlockDescriptor::Gf { p, k: 1 } => BlockDescriptor::Zpk { p, k: 1 },
            BlockDescriptor::Quot { p, k, modulus } => {
                if poly::degree(&modulus) == 1 {
                    BlockDescriptor::Zpk { p, k }
                } else {
                    BlockDescriptor::Quot { p, k, modulus }
                }
            }
            other => other,
        }
    }
}

impl fmt::Display for BlockDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BlockDescriptor::Zpk { p, k } => write!(f, "Z{}", p.pow(*k)),
            BlockDescriptor::Gf { p, k } => write!(f, "GF({})", p.pow(*k)),
            BlockDescriptor::Quot { p, k, modulus } => {
                write!(f, "Z{}[x]/({})", p.pow(*k), poly::display(modulus))
            }
        }
    }
}

/// A finite commutative ring presented as an ordered product of local
/// blocks, kept in canonical form (blocks sorted by [`BlockDescriptor::sort_key`]).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingDescriptor {
    blocks: Vec<BlockDescriptor>,
    source_text: String,
}

impl RingDescriptor {
    /// Builds a canonical descriptor: blocks are normalized and sorted.
    pub fn new(blocks: Vec<BlockDescriptor>, source_text: impl Into<String>) -> RingDescriptor {
        assert!(!blocks.is_empty(), "a ring needs at least one block");
        let mut blocks: Vec<BlockDescriptor> =
            blocks.into_iter().map(BlockDescriptor::normalize).collect();
        blocks.sort_by_key(|a| a.sort_key());
        RingDescriptor {
            blocks,
            source_text: source_text.into(),
        }
    }

    /// Canonical descriptor whose source text is its own canonical string.
    pub fn canonical(blocks: Vec<BlockDescriptor>) -> RingDescriptor {
        let d = RingDescriptor::new(blocks, String::new());
        let text = d.canonical_string();
        RingDescriptor {
            source_text: text,
            ..d
        }
    }

    pub fn blocks(&self) -> &[BlockDescriptor] {
        &self.blocks
    }

    pub fn source_text(&self) -> &str {
        &self.source_text
    }

    pub fn order(&self) -> u64 {
        self.blocks
            .iter()
            .fold(1u64, |acc, b| acc.saturating_mul(b.order()))
    }

    /// The canonical spec string; parsing it back yields an equal descriptor.
    pub fn canonical_string(&self) -> String {
        self.blocks
            .iter()
            .map(|b| b.to_string())
            .collect::<Vec<_>>()
            .join(" x ")
    }

    /// Key used for deduplication and deterministic catalog ordering.
    pub fn key(&self) -> DescriptorKey {
        (
            self.blocks.len(),
            self.blocks.iter().map(|b| b.sort_key()).collect(),
        )
    }
}

impl fmt::Display for RingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_string())
    }
}

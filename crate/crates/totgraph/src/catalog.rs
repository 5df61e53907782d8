//! Ring catalogs: every product of pool blocks up to an order cap, in
//! canonical form, deduplicated, deterministically ordered.

use crate::ring::descriptor::DescriptorKey;
use crate::ring::{parse_block_spec, BlockDescriptor, ParseError, RingDescriptor};
use std::collections::BTreeSet;

/// The default block pool for the verification suites.
pub const DEFAULT_POOL: [&str; 12] = [
    "Z2",
    "Z3",
    "Z4",
    "Z5",
    "Z7",
    "Z8",
    "Z9",
    "GF(4)",
    "GF(8)",
    "GF(9)",
    "Z2[x]/(x^2)",
    "Z3[x]/(x^2)",
];

/// Default order cap for the verification suites.
pub const DEFAULT_MAX_ORDER: u64 = 64;
/// Default cap below which the exact solvers cross-check every value.
pub const DEFAULT_SOLVER_CAP: u64 = 32;

#[derive(Debug, Clone)]
pub struct RingCatalog {
    pub pool: Vec<BlockDescriptor>,
    pub max_order: u64,
    pub rings: Vec<RingDescriptor>,
}

pub fn parse_pool(specs: &[String]) -> Result<Vec<BlockDescriptor>, ParseError> {
    specs.iter().map(|s| parse_block_spec(s)).collect()
}

/// Enumerates all multisets of pool blocks whose product order stays within
/// the cap. Output order: by block count, then canonical key.
pub fn generate_catalog(pool: &[BlockDescriptor], max_order: u64) -> RingCatalog {
    let mut seen: BTreeSet<DescriptorKey> = BTreeSet::new();
    let mut rings = Vec::new();
    let mut stack: Vec<BlockDescriptor> = Vec::new();

    fn rec(
        pool: &[BlockDescriptor],
        start: usize,
        product: u64,
        max_order: u64,
        stack: &mut Vec<BlockDescriptor>,
        seen: &mut BTreeSet<DescriptorKey>,
        rings: &mut Vec<RingDescriptor>,
    ) {
        if !stack.is_empty() {
            let desc = RingDescriptor::canonical(stack.clone());
            if seen.insert(desc.key()) {
                rings.push(desc);
            }
        }
        for i in start..pool.len() {
            let next = product.saturating_mul(pool[i].order());
            if next <= max_order {
                stack.push(pool[i].clone());
                rec(pool, i, next, max_order, stack, seen, rings);
                stack.pop();
            }
        }
    }

    rec(pool, 0, 1, max_order, &mut stack, &mut seen, &mut rings);
    rings.sort_by_key(|d| d.key());
    RingCatalog {
        pool: pool.to_vec(),
        max_order,
        rings,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pool(specs: &[&str]) -> Vec<BlockDescriptor> {
        specs.iter().map(|s| parse_block_spec(s).unwrap()).collect()
    }

    #[test]
    fn z2_z3_pool_up_to_nine() {
        let cat = generate_catalog(&pool(&["Z2", "Z3"]), 9);
        let names: Vec<String> = cat.rings.iter().map(|d| d.canonical_string()).collect();
        assert_eq!(
            names,
            vec!["Z2", "Z3", "Z2 x Z2", "Z2 x Z3", "Z3 x Z3", "Z2 x Z2 x Z2",]
        );
    }

    #[test]
    fn single_block_pool() {
        let cat = generate_catalog(&pool(&["Z4"]), 4);
        let names: Vec<String> = cat.rings.iter().map(|d| d.canonical_string()).collect();
        assert_eq!(names, vec!["Z4"]);
    }

    #[test]
    fn pool_with_gf4_up_to_eight() {
        let cat = generate_catalog(&pool(&["Z2", "GF(4)"]), 8);
        let names: Vec<String> = cat.rings.iter().map(|d| d.canonical_string()).collect();
        assert_eq!(
            names,
            vec!["Z2", "GF(4)", "Z2 x Z2", "Z2 x GF(4)", "Z2 x Z2 x Z2",]
        );
    }

    #[test]
    fn generation_is_deterministic_and_duplicate_free() {
        let p = pool(&DEFAULT_POOL);
        let a = generate_catalog(&p, DEFAULT_MAX_ORDER);
        let b = generate_catalog(&p, DEFAULT_MAX_ORDER);
        let names: Vec<String> = a.rings.iter().map(|d| d.canonical_string()).collect();
        let names_b: Vec<String> = b.rings.iter().map(|d| d.canonical_string()).collect();
        assert_eq!(names, names_b);
        let mut dedup = names.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), names.len());
        assert!(a.rings.iter().all(|d| d.order() <= DEFAULT_MAX_ORDER));
    }
}

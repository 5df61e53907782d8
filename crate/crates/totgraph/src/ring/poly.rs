//! Dense univariate polynomial arithmetic over `Z_m`, plus the irreducible
//! search used to realize Galois fields.
//!
//! Coefficient vectors are stored low degree first, so `vec![c0, c1, c2]`
//! is `c2 x^2 + c1 x + c0`. Ordering and display treat the tuple high
//! degree first with the constant term last, which is the canonical order
//! used everywhere a "smallest" polynomial is required.

/// Drops trailing zero coefficients, keeping at least one.
pub fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.len() > 1 && *a.last().unwrap() == 0 {
        a.pop();
    }
    a
}

/// Degree of a trimmed polynomial (degree of the zero polynomial is 0 here).
pub fn degree(a: &[u64]) -> usize {
    let mut d = a.len();
    while d > 1 && a[d - 1] == 0 {
        d -= 1;
    }
    d - 1
}

pub fn is_zero(a: &[u64]) -> bool {
    a.iter().all(|&c| c == 0)
}

pub fn add_mod(a: &[u64], b: &[u64], m: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = (x + y) % m;
    }
    trim(out)
}

pub fn mul_mod(a: &[u64], b: &[u64], m: u64) -> Vec<u64> {
    if is_zero(a) || is_zero(b) {
        return vec![0];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % m;
        }
    }
    trim(out)
}

/// Remainder of `a` modulo the monic polynomial `f`, coefficients mod `m`.
pub fn rem_monic(a: &[u64], f: &[u64], m: u64) -> Vec<u64> {
    let df = degree(f);
    debug_assert_eq!(f[df] % m, 1, "divisor must be monic");
    let mut r: Vec<u64> = a.iter().map(|&c| c % m).collect();
    r = trim(r);
    while degree(&r) >= df && !is_zero(&r) {
        let dr = degree(&r);
        let lead = r[dr];
        let shift = dr - df;
        for i in 0..=df {
            let sub = (lead * f[i]) % m;
            r[shift + i] = (r[shift + i] + m * m - sub) % m;
        }
        r = trim(r);
    }
    r
}

/// Tests irreducibility over the prime field `Z_p` by trial division with
/// every monic polynomial of degree at most `deg(f)/2`.
pub fn is_irreducible(f: &[u64], p: u64) -> bool {
    let d = degree(f);
    if d == 0 {
        return false;
    }
    for e in 1..=d / 2 {
        let count = p.pow(e as u32);
        for t in 0..count {
            let g = decode_monic(t, e, p);
            if is_zero(&rem_monic(f, &g, p)) {
                return false;
            }
        }
    }
    true
}

/// Decodes `t` as the monic degree-`e` polynomial whose non-leading
/// coefficient tuple `(c_{e-1}, ..., c_0)` is the base-`p` expansion of `t`,
/// most significant digit first. Iterating `t` upward therefore walks the
/// monic polynomials in the canonical (high degree first) order.
fn decode_monic(t: u64, e: usize, p: u64) -> Vec<u64> {
    let mut g = vec![0u64; e + 1];
    g[e] = 1;
    let mut rest = t;
    for i in 0..e {
        g[i] = rest % p;
        rest /= p;
    }
    g
}

/// The canonically smallest monic irreducible polynomial of degree `k`
/// over `Z_p`. Panics if `k == 0`; callers keep `k <= 8`.
pub fn find_irreducible(p: u64, k: u32) -> Vec<u64> {
    assert!(k >= 1, "degree must be at least 1");
    let e = k as usize;
    let count = p.pow(k);
    for t in 0..count {
        let f = decode_monic(t, e, p);
        if is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists over Z_p")
}

/// Finds the smallest degree among the irreducible factors of `f` mod `p`.
/// This is the residue degree of a local quotient block, and is computed
/// here without deciding locality.
pub fn min_irreducible_factor_degree(f: &[u64], p: u64) -> usize {
    let fp: Vec<u64> = trim(f.iter().map(|&c| c % p).collect());
    let d = degree(&fp);
    for e in 1..=d {
        let count = p.pow(e as u32);
        for t in 0..count {
            let g = decode_monic(t, e, p);
            if is_irreducible(&g, p) && is_zero(&rem_monic(&fp, &g, p)) {
                return e;
            }
        }
    }
    d.max(1)
}

/// Renders a polynomial in `x`, high degree first, e.g. `x^2+2x+1`.
pub fn display(a: &[u64]) -> String {
    if is_zero(a) {
        return "0".to_string();
    }
    let mut parts = Vec::new();
    for i in (0..a.len()).rev() {
        let c = a[i];
        if c == 0 {
            continue;
        }
        let term = match i {
            0 => format!("{c}"),
            1 if c == 1 => "x".to_string(),
            1 => format!("{c}x"),
            _ if c == 1 => format!("x^{i}"),
            _ => format!("{c}x^{i}"),
        };
        parts.push(term);
    }
    parts.join("+")
}

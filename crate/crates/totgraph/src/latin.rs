//! Latin-sum arrays.
//!
//! A Latin-sum array over fields `F1` (rows) and `F2` (columns) is a
//! labelled table such that for any two distinct cells, if the row labels
//! sum to zero in `F1` the entries differ, and likewise for column labels
//! in `F2`. These arrays are the engine behind the product-of-fields
//! colorings of total graphs: looking up a vertex's coordinates in a stack
//! of Latin-sum arrays yields a proper coloring.
//!
//! Over odd characteristic, labels are listed negation-paired
//! (`0, y, -y, ...`); over characteristic 2 negation is the identity and
//! the canonical element order is used.

use crate::ring::FiniteRing;
use serde_json::json;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LatinError {
    #[error("{0} is not a finite field")]
    NotAField(String),
    #[error("|F1| = {0} must not exceed |F2| = {1}")]
    SizeOrder(usize, usize),
    #[error("the row field must have characteristic 2, got {0}")]
    WrongCharacteristic(u64),
}

/// Row or column labels: an ordered subset of a field's elements.
pub struct FieldLabels<'a> {
    pub field: &'a FiniteRing,
    pub labels: Vec<usize>,
    pos: Vec<usize>,
}

impl<'a> FieldLabels<'a> {
    fn new(field: &'a FiniteRing, labels: Vec<usize>) -> FieldLabels<'a> {
        let mut pos = vec![usize::MAX; field.order()];
        for (i, &l) in labels.iter().enumerate() {
            pos[l] = i;
        }
        FieldLabels { field, labels, pos }
    }

    /// All elements in canonical order (characteristic-2 convention).
    pub fn full_canonical(field: &'a FiniteRing) -> FieldLabels<'a> {
        FieldLabels::new(field, (0..field.order()).collect())
    }

    /// `0, y1, -y1, ..., ym, -ym` with each `y` the smallest unpaired
    /// element (odd-characteristic convention).
    pub fn full_negation_paired(field: &'a FiniteRing) -> FieldLabels<'a> {
        let mut labels = vec![0usize];
        let mut seen = vec![false; field.order()];
        seen[0] = true;
        for x in 1..field.order() {
            if seen[x] {
                continue;
            }
            let nx = field.neg(x);
            assert_ne!(nx, x, "negation pairing requires odd characteristic");
            labels.push(x);
            labels.push(nx);
            seen[x] = true;
            seen[nx] = true;
        }
        FieldLabels::new(field, labels)
    }

    pub fn nonzero_canonical(field: &'a FiniteRing) -> FieldLabels<'a> {
        FieldLabels::new(field, (1..field.order()).collect())
    }

    pub fn nonzero_negation_paired(field: &'a FiniteRing) -> FieldLabels<'a> {
        let mut l = FieldLabels::full_negation_paired(field);
        l.labels.remove(0);
        FieldLabels::new(field, l.labels)
    }

    /// Arbitrary subset labels (used by fixtures).
    pub fn subset(field: &'a FiniteRing, labels: Vec<usize>) -> FieldLabels<'a> {
        FieldLabels::new(field, labels)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Position of a field element among the labels.
    pub fn position_of(&self, elem: usize) -> Option<usize> {
        match self.pos[elem] {
            usize::MAX => None,
            p => Some(p),
        }
    }
}

/// A labelled rectangular array over a dense symbol alphabet `0..alphabet_size`.
pub struct LatinSumArray<'a> {
    pub rows: FieldLabels<'a>,
    pub cols: FieldLabels<'a>,
    entries: Vec<u32>,
    pub alphabet_size: usize,
    /// Display names per symbol (the classical `0, 1, -1, ...` presentation
    /// where applicable).
    pub symbol_names: Vec<String>,
}

/// First pair of cells violating the Latin-sum conditions, row-major.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Violation {
    pub first: (usize, usize),
    pub second: (usize, usize),
}

impl<'a> LatinSumArray<'a> {
    pub fn new(
        rows: FieldLabels<'a>,
        cols: FieldLabels<'a>,
        entries: Vec<u32>,
        alphabet_size: usize,
        symbol_names: Vec<String>,
    ) -> LatinSumArray<'a> {
        assert_eq!(entries.len(), rows.len() * cols.len());
        assert_eq!(symbol_names.len(), alphabet_size);
        LatinSumArray {
            rows,
            cols,
            entries,
            alphabet_size,
            symbol_names,
        }
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.cols.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.cols.len() + j]
    }

    /// Entry addressed by field elements rather than positions.
    pub fn entry_by_labels(&self, row_elem: usize, col_elem: usize) -> u32 {
        let i = self.rows.position_of(row_elem).expect("row label");
        let j = self.cols.position_of(col_elem).expect("column label");
        self.entry(i, j)
    }

    /// The transposed array over swapped fields.
    pub fn transpose(&self) -> LatinSumArray<'a> {
        let mut entries = vec![0u32; self.entries.len()];
        for i in 0..self.n_rows() {
            for j in 0..self.n_cols() {
                entries[j * self.n_rows() + i] = self.entry(i, j);
            }
        }
        LatinSumArray {
            rows: FieldLabels::new(self.cols.field, self.cols.labels.clone()),
            cols: FieldLabels::new(self.rows.field, self.rows.labels.clone()),
            entries,
            alphabet_size: self.alphabet_size,
            symbol_names: self.symbol_names.clone(),
        }
    }

    pub fn distinct_symbols_used(&self) -> usize {
        let mut seen = vec![false; self.alphabet_size];
        for &e in &self.entries {
            seen[e as usize] = true;
        }
        seen.iter().filter(|&&b| b).count()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let f1 = self.rows.field;
        let f2 = self.cols.field;
        json!({
            "rows": self.rows.labels.iter().map(|&l| f1.element_label(l)).collect::<Vec<_>>(),
            "cols": self.cols.labels.iter().map(|&l| f2.element_label(l)).collect::<Vec<_>>(),
            "entries": (0..self.n_rows()).map(|i| {
                (0..self.n_cols()).map(|j| self.entry(i, j)).collect::<Vec<_>>()
            }).collect::<Vec<_>>(),
            "alphabet_size": self.alphabet_size,
            "valid": is_latin_sum(self).is_none(),
        })
    }
}

/// Exhaustive check of both Latin-sum conditions over all pairs of cells.
/// Returns the first violating pair in row-major order, or `None`.
pub fn is_latin_sum(arr: &LatinSumArray<'_>) -> Option<Violation> {
    let r = arr.n_rows();
    let c = arr.n_cols();
    let f1 = arr.rows.field;
    let f2 = arr.cols.field;
    let row_zero: Vec<Vec<bool>> = (0..r)
        .map(|i| {
            (0..r)
                .map(|i2| f1.add(arr.rows.labels[i], arr.rows.labels[i2]) == 0)
                .collect()
        })
        .collect();
    let col_zero: Vec<Vec<bool>> = (0..c)
        .map(|j| {
            (0..c)
                .map(|j2| f2.add(arr.cols.labels[j], arr.cols.labels[j2]) == 0)
                .collect()
        })
        .collect();
    for p1 in 0..r * c {
        let (i1, j1) = (p1 / c, p1 % c);
        for p2 in p1 + 1..r * c {
            let (i2, j2) = (p2 / c, p2 % c);
            let clash = arr.entry(i1, j1) == arr.entry(i2, j2);
            if clash && (row_zero[i1][i2] || col_zero[j1][j2]) {
                return Some(Violation {
                    first: (i1, j1),
                    second: (i2, j2),
                });
            }
        }
    }
    None
}

fn require_field(f: &FiniteRing) -> Result<(), LatinError> {
    if f.is_field() {
        Ok(())
    } else {
        Err(LatinError::NotAField(f.descriptor().canonical_string()))
    }
}

/// Characteristic of a finite field.
pub fn field_char(f: &FiniteRing) -> u64 {
    debug_assert!(f.is_field());
    f.blocks()[0].p
}

/// Formal symbols of the odd-odd construction: `0, j, -j` mapped to dense
/// ids `0, 2j-1, 2j`.
fn dense(sym: i64) -> u32 {
    match sym {
        0 => 0,
        j if j > 0 => (2 * j - 1) as u32,
        j => (2 * -j) as u32,
    }
}

fn signed_name(d: u32) -> String {
    if d == 0 {
        "0".to_string()
    } else if d % 2 == 1 {
        format!("{}", d.div_ceil(2))
    } else {
        format!("-{}", d / 2)
    }
}

/// Builds a `|F1| x |F2|` Latin-sum array. The alphabet has exactly
/// `|F2|` symbols, except for the pair of 3-element fields where it has 4.
pub fn build_latin_sum<'a>(
    f1: &'a FiniteRing,
    f2: &'a FiniteRing,
) -> Result<LatinSumArray<'a>, LatinError> {
    require_field(f1)?;
    require_field(f2)?;
    if f1.order() > f2.order() {
        return Err(LatinError::SizeOrder(f1.order(), f2.order()));
    }
    let c1 = field_char(f1);
    let c2 = field_char(f2);
    let arr = match (c1 == 2, c2 == 2) {
        (true, true) => build_char2_char2(f1, f2),
        (false, false) => build_odd_odd(f1, f2),
        (true, false) => build_char2_odd(f1, f2),
        (false, true) => build_odd_char2(f1, f2),
    };
    let expected = if f1.order() == 3 && f2.order() == 3 {
        4
    } else {
        f2.order()
    };
    assert_eq!(arr.alphabet_size, expected, "alphabet size contract");
    assert_eq!(
        arr.distinct_symbols_used(),
        expected,
        "every alphabet symbol must occur"
    );
    assert!(
        is_latin_sum(&arr).is_none(),
        "construction must pass the checker"
    );
    Ok(arr)
}

/// Both characteristic 2: a cyclic Latin rectangle. Negation is the
/// identity, so the conditions reduce to distinctness along rows and
/// columns, which any Latin rectangle satisfies.
fn build_char2_char2<'a>(f1: &'a FiniteRing, f2: &'a FiniteRing) -> LatinSumArray<'a> {
    let rows = FieldLabels::full_canonical(f1);
    let cols = FieldLabels::full_canonical(f2);
    let (r, c) = (rows.len(), cols.len());
    let mut entries = vec![0u32; r * c];
    for i in 0..r {
        for j in 0..c {
            entries[i * c + j] = ((i + j) % c) as u32;
        }
    }
    let names = (0..c).map(|s| s.to_string()).collect();
    LatinSumArray::new(rows, cols, entries, c, names)
}

/// Both odd: the alternating-body pattern. Row 0 lists the whole alphabet;
/// each row pair `(x_i, -x_i)` carries the bodies `1,-1,1,-1,...` and
/// `2,0,2,0,...` (n odd) or `2,-2,2,-2,...` (n even), and the column-0
/// entries run through a fixed pairwise-distinct symbol sequence.
fn build_odd_odd<'a>(f1: &'a FiniteRing, f2: &'a FiniteRing) -> LatinSumArray<'a> {
    let rows = FieldLabels::full_negation_paired(f1);
    let cols = FieldLabels::full_negation_paired(f2);
    let n = (f1.order() - 1) / 2;
    let m = (f2.order() - 1) / 2;
    let (r, c) = (rows.len(), cols.len());
    let mut entries = vec![0u32; r * c];

    // row 0: 0, 1, -1, 2, -2, ..., m, -m
    entries[0] = dense(0);
    for j in 1..=m {
        entries[2 * j - 1] = dense(j as i64);
        entries[2 * j] = dense(-(j as i64));
    }

    // column-0 symbols for the row pairs
    let col0 = column_zero_symbols(n);
    let n_odd = n % 2 == 1;
    for i in 1..=n {
        let row_a = 2 * i - 1; // x_i
        let row_b = 2 * i; // -x_i
        entries[row_a * c] = dense(col0[2 * i - 2]);
        entries[row_b * c] = dense(col0[2 * i - 1]);
        for j in 1..=m {
            entries[row_a * c + 2 * j - 1] = dense(1);
            entries[row_a * c + 2 * j] = dense(-1);
            entries[row_b * c + 2 * j - 1] = dense(2);
            entries[row_b * c + 2 * j] = if n_odd { dense(0) } else { dense(-2) };
        }
    }

    let alphabet = if n == 1 && m == 1 { 4 } else { 2 * m + 1 };
    let names = (0..alphabet as u32).map(signed_name).collect();
    LatinSumArray::new(rows, cols, entries, alphabet, names)
}

/// The column-0 symbol sequence for the odd-odd pattern, one pair of
/// symbols per row pair. Chosen so that the first of each pair avoids the
/// second body, the second avoids the first body, and all 2n are distinct.
fn column_zero_symbols(n: usize) -> Vec<i64> {
    let n = n as i64;
    if n == 1 {
        return vec![1, 2];
    }
    let mut out = Vec::with_capacity(2 * n as usize);
    if n % 2 == 0 {
        for t in 1..=n / 2 {
            out.extend_from_slice(&[2 * t - 1, 2 * t, -(2 * t - 1), -2 * t]);
        }
    } else {
        for t in 1..=(n - 1) / 2 {
            out.extend_from_slice(&[2 * t - 1, 2 * t, -(2 * t - 1), -2 * t]);
        }
        out.extend_from_slice(&[n, -n]);
    }
    out
}

/// char(F1) = 2, F2 odd. Symbols `0..2m` with 0 held out as a floater:
/// the base row is `0 | 1 2 | 3 4 | ...`; each further row replaces its
/// column-0 duplicate either by floating 0 into one A-cell (odd column-0
/// symbol) or by cascading the B-cells downward (even symbol). Column
/// pairs then never share a symbol.
fn build_char2_odd<'a>(f1: &'a FiniteRing, f2: &'a FiniteRing) -> LatinSumArray<'a> {
    let rows = FieldLabels::full_canonical(f1);
    let cols = FieldLabels::full_negation_paired(f2);
    let r = rows.len();
    let m = (f2.order() - 1) / 2;
    let c = cols.len();
    debug_assert!(r <= 2 * m);

    let mut col0_syms: Vec<usize> = Vec::with_capacity(r);
    if r <= m + 1 {
        col0_syms.push(0);
        col0_syms.extend((0..m).map(|t| 2 * t + 1));
    } else {
        col0_syms.push(0);
        col0_syms.extend((1..m).map(|t| 2 * t + 1));
        col0_syms.extend((1..=m).map(|t| 2 * t));
    }
    col0_syms.truncate(r);

    let mut entries = vec![0u32; r * c];
    for (i, &s) in col0_syms.iter().enumerate() {
        let row = &mut entries[i * c..(i + 1) * c];
        row[0] = s as u32;
        for j in 1..=m {
            row[2 * j - 1] = (2 * j - 1) as u32;
            row[2 * j] = (2 * j) as u32;
        }
        if s == 0 {
            // base row
        } else if s % 2 == 1 {
            let pair = s.div_ceil(2);
            row[2 * pair - 1] = 0;
        } else {
            let jstar = s / 2;
            for k in 1..=jstar {
                row[2 * k] = (2 * (k - 1)) as u32;
            }
        }
    }
    let names = (0..f2.order() as u32)
        .map(|d| (d + 1).to_string())
        .collect();
    LatinSumArray::new(rows, cols, entries, f2.order(), names)
}

/// F1 odd, char(F2) = 2. Split the alphabet into halves; the rows of a
/// negation pair live in opposite halves, so paired rows never share a
/// symbol, while every column walks distinct offsets.
fn build_odd_char2<'a>(f1: &'a FiniteRing, f2: &'a FiniteRing) -> LatinSumArray<'a> {
    let rows = FieldLabels::full_negation_paired(f1);
    let cols = FieldLabels::full_canonical(f2);
    let mprime = (f1.order() - 1) / 2;
    let n = f2.order();
    let h = n / 2;
    debug_assert!(mprime < h);
    let (r, c) = (rows.len(), cols.len());
    let mut entries = vec![0u32; r * c];
    for k in 0..c {
        entries[k] = k as u32;
    }
    for i in 1..=mprime {
        for k in 0..c {
            entries[(2 * i - 1) * c + k] = ((k + i) % h) as u32;
            entries[(2 * i) * c + k] = (h + (k + i) % h) as u32;
        }
    }
    let names = (0..n as u32).map(|d| d.to_string()).collect();
    LatinSumArray::new(rows, cols, entries, n, names)
}

/// Builds the `(|F1|-1) x (|F2|-1)` Latin-sum array over the nonzero
/// elements used by the regular-subgraph colorings; requires char(F1) = 2.
pub fn build_latin_sum_reg<'a>(
    f1: &'a FiniteRing,
    f2: &'a FiniteRing,
) -> Result<LatinSumArray<'a>, LatinError> {
    require_field(f1)?;
    require_field(f2)?;
    if f1.order() > f2.order() {
        return Err(LatinError::SizeOrder(f1.order(), f2.order()));
    }
    let c1 = field_char(f1);
    if c1 != 2 {
        return Err(LatinError::WrongCharacteristic(c1));
    }
    let rows = FieldLabels::nonzero_canonical(f1);
    let r = rows.len();
    let arr = if field_char(f2) == 2 {
        let cols = FieldLabels::nonzero_canonical(f2);
        let c = cols.len();
        let mut entries = vec![0u32; r * c];
        for i in 0..r {
            for j in 0..c {
                entries[i * c + j] = ((i + j) % c) as u32;
            }
        }
        let names = (1..f2.order()).map(|e| f2.element_label(e)).collect();
        LatinSumArray::new(rows, cols, entries, c, names)
    } else {
        // every row is the full list of nonzero elements
        let cols = FieldLabels::nonzero_canonical(f2);
        let c = cols.len();
        let mut entries = vec![0u32; r * c];
        for i in 0..r {
            for (j, e) in entries[i * c..(i + 1) * c].iter_mut().enumerate() {
                *e = j as u32;
            }
        }
        let names = (1..f2.order()).map(|e| f2.element_label(e)).collect();
        LatinSumArray::new(rows, cols, entries, c, names)
    };
    assert_eq!(arr.alphabet_size, f2.order() - 1);
    assert_eq!(arr.distinct_symbols_used(), f2.order() - 1);
    assert!(is_latin_sum(&arr).is_none());
    Ok(arr)
}

/// The classical 7x7 mixed-characteristic square, kept as a regression
/// fixture: rows are labelled by seven elements of GF(8), columns by Z7 in
/// negation-paired order.
pub fn mixed_7x7_fixture<'a>(gf8: &'a FiniteRing, z7: &'a FiniteRing) -> LatinSumArray<'a> {
    assert_eq!(gf8.order(), 8);
    assert_eq!(z7.order(), 7);
    let rows = FieldLabels::subset(gf8, (0..7).collect());
    let cols = FieldLabels::subset(z7, vec![0, 1, 6, 2, 5, 3, 4]);
    #[rustfmt::skip]
    let table: [[u32; 7]; 7] = [
        [1, 2, 3, 4, 5, 6, 7],
        [2, 1, 3, 4, 5, 6, 7],
        [3, 1, 4, 2, 5, 6, 7],
        [4, 1, 3, 2, 5, 6, 7],
        [5, 1, 3, 2, 6, 4, 7],
        [6, 1, 3, 2, 5, 4, 7],
        [7, 6, 3, 2, 5, 4, 1],
    ];
    let entries: Vec<u32> = table.iter().flatten().map(|&s| s - 1).collect();
    let names = (1..=7u32).map(|s| s.to_string()).collect();
    LatinSumArray::new(rows, cols, entries, 7, names)
}

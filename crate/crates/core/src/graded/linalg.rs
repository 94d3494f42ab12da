//! Exact sparse linear algebra over ℚ.
//!
//! Elimination is fraction-free: rows are kept as primitive integer vectors
//! and combined as `b·r − a·p`, followed by removal of the row content.
//! Pivots are chosen as the first nonzero column of each row.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Scalar = BigRational;

/// Sparse vector: index → nonzero scalar.
pub type SparseVec = BTreeMap<usize, Scalar>;

pub fn scalar(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Scalar {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `v += c·w`, dropping entries that cancel.
pub fn axpy(v: &mut SparseVec, c: &Scalar, w: &SparseVec) {
    if c.is_zero() {
        return;
    }
    for (&i, x) in w {
        add_entry(v, i, &(c * x));
    }
}

pub fn add_entry(v: &mut SparseVec, i: usize, x: &Scalar) {
    if x.is_zero() {
        return;
    }
    let remove = match v.get_mut(&i) {
        Some(e) => {
            *e += x;
            e.is_zero()
        }
        None => {
            v.insert(i, x.clone());
            false
        }
    };
    if remove {
        v.remove(&i);
    }
}

pub fn unit_vec(i: usize) -> SparseVec {
    let mut v = SparseVec::new();
    v.insert(i, Scalar::one());
    v
}

/// Integer row, sorted by column, no zero entries.
type IntRow = Vec<(usize, BigInt)>;

fn to_primitive(v: &SparseVec) -> IntRow {
    let lcm = v.values().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let row: IntRow = v.iter().map(|(&i, x)| (i, x.numer() * (&lcm / x.denom()))).collect();
    make_primitive(row)
}

fn make_primitive(mut row: IntRow) -> IntRow {
    if row.is_empty() {
        return row;
    }
    let mut g = BigInt::zero();
    for (_, x) in &row {
        g = g.gcd(x);
        if g.is_one() {
            break;
        }
    }
    if row[0].1.is_negative() {
        g = -g;
    }
    if !g.is_one() {
        for (_, x) in row.iter_mut() {
            *x /= &g;
        }
    }
    row
}

/// `b·r − a·p`
fn combine(b: &BigInt, r: &IntRow, a: &BigInt, p: &IntRow) -> IntRow {
    let mut out = IntRow::with_capacity(r.len() + p.len());
    let (mut i, mut j) = (0, 0);
    while i < r.len() || j < p.len() {
        let ci = r.get(i).map(|e| e.0).unwrap_or(usize::MAX);
        let cj = p.get(j).map(|e| e.0).unwrap_or(usize::MAX);
        if ci < cj {
            out.push((ci, b * &r[i].1));
            i += 1;
        } else if cj < ci {
            out.push((cj, -(a * &p[j].1)));
            j += 1;
        } else {
            let x = b * &r[i].1 - a * &p[j].1;
            if !x.is_zero() {
                out.push((ci, x));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn entry(row: &IntRow, col: usize) -> Option<&BigInt> {
    row.binary_search_by_key(&col, |e| e.0).ok().map(|k| &row[k].1)
}

/// Incremental row-echelon form (fraction-free), keyed by pivot column.
#[derive(Debug, Clone, Default)]
pub struct Span {
    rows: BTreeMap<usize, IntRow>,
}

impl Span {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    fn reduce(&self, mut r: IntRow) -> IntRow {
        let mut k = 0;
        while k < r.len() {
            let col = r[k].0;
            if let Some(p) = self.rows.get(&col) {
                let a = r[k].1.clone();
                let b = p[0].1.clone();
                r = make_primitive(combine(&b, &r, &a, p));
                // entries before `col` are untouched
                k = r.partition_point(|e| e.0 <= col);
            } else {
                k += 1;
            }
        }
        r
    }

    /// Adds `v` to the span; returns whether the rank increased.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        if v.is_empty() {
            return false;
        }
        let r = self.reduce(to_primitive(v));
        match r.first() {
            Some(&(pivot, _)) => {
                self.rows.insert(pivot, r);
                true
            }
            None => false,
        }
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        v.is_empty() || self.reduce(to_primitive(v)).is_empty()
    }

    /// `v` minus an element of the span, with zero entries on every pivot column.
    pub fn remainder(&self, v: &SparseVec) -> SparseVec {
        let mut out = v.clone();
        loop {
            let hit = out.iter().find(|(c, _)| self.rows.contains_key(c)).map(|(&c, x)| (c, x.clone()));
            let Some((col, x)) = hit else { break };
            let p = &self.rows[&col];
            let lead = Scalar::from_integer(p[0].1.clone());
            let factor = -(x / lead);
            for (c, y) in p {
                add_entry(&mut out, *c, &(&factor * Scalar::from_integer(y.clone())));
            }
        }
        out
    }

    /// Reduced echelon basis with leading coefficient 1, ordered by pivot.
    pub fn reduced_basis(&self) -> Vec<SparseVec> {
        self.reduced_rows()
            .into_values()
            .map(|row| {
                let lead = row[0].1.clone();
                row.into_iter().map(|(c, x)| (c, BigRational::new(x, lead.clone()))).collect()
            })
            .collect()
    }

    /// Gauss–Jordan form: each row is zero on every pivot column but its own.
    fn reduced_rows(&self) -> BTreeMap<usize, IntRow> {
        let mut done: BTreeMap<usize, IntRow> = BTreeMap::new();
        for (&pivot, row) in self.rows.iter().rev() {
            let mut r = row.clone();
            let mut k = 1;
            while k < r.len() {
                let col = r[k].0;
                if let Some(p) = done.get(&col) {
                    let a = r[k].1.clone();
                    let b = p[0].1.clone();
                    r = make_primitive(combine(&b, &r, &a, p));
                    k = r.partition_point(|e| e.0 <= col);
                } else {
                    k += 1;
                }
            }
            done.insert(pivot, r);
        }
        done
    }
}

/// Sparse matrix stored by columns.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    nrows: usize,
    cols: Vec<SparseVec>,
}

impl Matrix {
    pub fn zero(nrows: usize, ncols: usize) -> Self {
        Matrix { nrows, cols: vec![SparseVec::new(); ncols] }
    }

    pub fn identity(n: usize) -> Self {
        Matrix { nrows: n, cols: (0..n).map(unit_vec).collect() }
    }

    pub fn from_columns(nrows: usize, cols: Vec<SparseVec>) -> Self {
        debug_assert!(cols.iter().all(|c| c.keys().all(|&i| i < nrows)));
        Matrix { nrows, cols }
    }

    pub fn from_rows(rows: &[Vec<Scalar>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
        let mut m = Matrix::zero(nrows, ncols);
        for (i, row) in rows.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                add_entry(&mut m.cols[j], i, x);
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.cols[j].get(&i).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn rows(&self) -> Vec<SparseVec> {
        let mut rows = vec![SparseVec::new(); self.nrows];
        for (j, col) in self.cols.iter().enumerate() {
            for (&i, x) in col {
                rows[i].insert(j, x.clone());
            }
        }
        rows
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (&j, x) in v {
            axpy(&mut out, x, &self.cols[j]);
        }
        out
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.ncols(), other.nrows, "composing incompatible matrices");
        Matrix { nrows: self.nrows, cols: other.cols.iter().map(|c| self.apply(c)).collect() }
    }

    pub fn rank(&self) -> usize {
        let mut span = Span::new();
        for c in &self.cols {
            span.insert(c);
        }
        span.rank()
    }

    pub fn column_span(&self) -> Span {
        let mut span = Span::new();
        for c in &self.cols {
            span.insert(c);
        }
        span
    }

    fn row_span(&self, extra: Option<&SparseVec>) -> Span {
        let n = self.ncols();
        let mut rows = self.rows();
        if let Some(v) = extra {
            for (&i, x) in v {
                rows[i].insert(n, x.clone());
            }
        }
        let mut span = Span::new();
        for r in &rows {
            span.insert(r);
        }
        span
    }

    /// Basis of the null space, one vector per free column.
    pub fn kernel(&self) -> Vec<SparseVec> {
        let reduced = self.row_span(None).reduced_rows();
        let pivots: std::collections::BTreeSet<usize> = reduced.keys().copied().collect();
        let mut basis = Vec::new();
        for f in (0..self.ncols()).filter(|c| !pivots.contains(c)) {
            let mut v = unit_vec(f);
            for (&p, row) in &reduced {
                if let Some(a) = entry(row, f) {
                    let lead = &row[0].1;
                    v.insert(p, -BigRational::new(a.clone(), lead.clone()));
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Some exact `x` with `self·x = v`, or `None` when the system is inconsistent.
    pub fn solve(&self, v: &SparseVec) -> Option<SparseVec> {
        let n = self.ncols();
        let reduced = self.row_span(Some(v)).reduced_rows();
        if reduced.contains_key(&n) {
            return None;
        }
        let mut x = SparseVec::new();
        for (&p, row) in &reduced {
            if let Some(rhs) = entry(row, n) {
                x.insert(p, BigRational::new(rhs.clone(), row[0].1.clone()));
            }
        }
        debug_assert_eq!(&self.apply(&x), v);
        Some(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vecq(xs: &[i64]) -> SparseVec {
        let mut v = SparseVec::new();
        for (i, &x) in xs.iter().enumerate() {
            add_entry(&mut v, i, &scalar(x));
        }
        v
    }

    #[test]
    fn solve_identity_returns_rhs() {
        let m = Matrix::identity(3);
        let v = vecq(&[4, -1, 7]);
        assert_eq!(m.solve(&v), Some(v));
    }

    #[test]
    fn solve_zero_matrix_nonzero_rhs_is_none() {
        let m = Matrix::zero(2, 2);
        assert_eq!(m.solve(&vecq(&[1, 0])), None);
    }

    #[test]
    fn solve_is_exact_rational() {
        let m = Matrix::from_rows(&[vec![scalar(2)]]);
        let x = m.solve(&vecq(&[1])).unwrap();
        assert_eq!(x.get(&0), Some(&ratio(1, 2)));
    }

    #[test]
    fn kernel_and_rank_agree() {
        let m = Matrix::from_rows(&[
            vec![scalar(1), scalar(2), scalar(3)],
            vec![scalar(2), scalar(4), scalar(6)],
            vec![scalar(0), scalar(1), scalar(1)],
        ]);
        assert_eq!(m.rank(), 2);
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        assert!(m.apply(&k[0]).is_empty());
    }

    #[test]
    fn remainder_is_zero_on_pivots() {
        let mut s = Span::new();
        s.insert(&vecq(&[0, 3, 1]));
        let r = s.remainder(&vecq(&[1, 1, 1]));
        assert!(!r.contains_key(&1));
        assert!(!s.contains(&vecq(&[1, 1, 1])));
        assert!(s.contains(&vecq(&[0, -6, -2])));
    }
}

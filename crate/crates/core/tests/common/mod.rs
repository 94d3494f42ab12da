//! Brute-force oracle for derivation-complex computations.
//!
//! Shares no code with the library: monomials are exponent vectors, products are signed
//! by counting odd inversions, and ranks come from dense Gaussian elimination.

#![allow(dead_code)]

pub mod random;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;
pub type Mono = Vec<u32>;
pub type Poly = BTreeMap<Mono, Q>;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Free graded-commutative algebra with a differential given on generators.
#[derive(Clone, Debug)]
pub struct Alg {
    pub deg: Vec<i32>,
    pub d: Vec<Poly>,
}

/// `terms` lists `(coefficient, [(generator, exponent)])`.
pub fn poly(n: usize, terms: &[(i64, &[(usize, u32)])]) -> Poly {
    let mut p = Poly::new();
    for (c, factors) in terms {
        let mut m = vec![0; n];
        for &(g, e) in factors.iter() {
            m[g] += e;
        }
        add(&mut p, m, q(*c));
    }
    p
}

fn add(p: &mut Poly, m: Mono, c: Q) {
    let e = p.entry(m.clone()).or_insert_with(Q::zero);
    *e += c;
    if e.is_zero() {
        p.remove(&m);
    }
}

impl Alg {
    pub fn new(deg: &[i32], d: Vec<Poly>) -> Self {
        Alg { deg: deg.to_vec(), d }
    }

    pub fn free(deg: &[i32]) -> Self {
        Alg { deg: deg.to_vec(), d: vec![Poly::new(); deg.len()] }
    }

    pub fn n(&self) -> usize {
        self.deg.len()
    }

    fn odd(&self, g: usize) -> bool {
        self.deg[g] % 2 != 0
    }

    pub fn mono_degree(&self, m: &Mono) -> i32 {
        m.iter().zip(&self.deg).map(|(e, d)| *e as i32 * d).sum()
    }

    pub fn gen(&self, g: usize) -> Poly {
        let mut m = vec![0; self.n()];
        m[g] = 1;
        Poly::from([(m, Q::one())])
    }

    pub fn one(&self) -> Poly {
        Poly::from([(vec![0; self.n()], Q::one())])
    }

    /// Product of monomials with its Koszul sign, or `None` if an odd square appears.
    pub fn mono_mul(&self, a: &Mono, b: &Mono) -> Option<(Mono, bool)> {
        let mut out = vec![0; self.n()];
        let mut negative = false;
        for g in 0..self.n() {
            out[g] = a[g] + b[g];
            if self.odd(g) && out[g] > 1 {
                return None;
            }
        }
        for (i, &eb) in b.iter().enumerate() {
            if eb == 0 || !self.odd(i) {
                continue;
            }
            for (j, &ea) in a.iter().enumerate().skip(i + 1) {
                if ea > 0 && self.odd(j) {
                    negative = !negative;
                }
            }
        }
        Some((out, negative))
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        let mut out = Poly::new();
        for (ma, ca) in a {
            for (mb, cb) in b {
                if let Some((m, neg)) = self.mono_mul(ma, mb) {
                    let c = ca * cb;
                    add(&mut out, m, if neg { -c } else { c });
                }
            }
        }
        out
    }

    /// The monomial as an ordered word of generator indices.
    fn word(m: &Mono) -> Vec<usize> {
        m.iter().enumerate().flat_map(|(g, &e)| std::iter::repeat_n(g, e as usize)).collect()
    }

    /// Applies a degree-`k` derivation `A → B` along `phi`, given by its values on generators.
    pub fn apply_der(&self, b: &Alg, phi: &[Poly], k: i32, values: &[Poly], p: &Poly) -> Poly {
        let mut out = Poly::new();
        for (m, c) in p {
            let w = Self::word(m);
            for j in 0..w.len() {
                let prefix_deg: i32 = w[..j].iter().map(|&g| self.deg[g]).sum();
                let mut term = b.one();
                for &g in &w[..j] {
                    term = b.mul(&term, &phi[g]);
                }
                term = b.mul(&term, &values[w[j]]);
                for &g in &w[j + 1..] {
                    term = b.mul(&term, &phi[g]);
                }
                let s = if (k * prefix_deg) % 2 != 0 { -c.clone() } else { c.clone() };
                for (mt, ct) in term {
                    add(&mut out, mt, ct * &s);
                }
            }
        }
        out
    }

    pub fn differential(&self, p: &Poly) -> Poly {
        let phi: Vec<Poly> = (0..self.n()).map(|g| self.gen(g)).collect();
        self.apply_der(self, &phi, 1, &self.d, p)
    }

    /// Monomials of degree `n` (all generator degrees must be positive).
    pub fn basis(&self, n: i32) -> Vec<Mono> {
        let mut out = Vec::new();
        let mut cur = vec![0; self.n()];
        self.fill(0, n, &mut cur, &mut out);
        out
    }

    fn fill(&self, g: usize, left: i32, cur: &mut Mono, out: &mut Vec<Mono>) {
        if g == self.n() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let max = if self.odd(g) { 1 } else { (left.max(0) / self.deg[g]) as u32 };
        for e in 0..=max {
            let used = e as i32 * self.deg[g];
            if used > left {
                break;
            }
            cur[g] = e;
            self.fill(g + 1, left - used, cur, out);
        }
        cur[g] = 0;
    }

    pub fn truncate(&self, p: &Poly, top: Option<i32>) -> Poly {
        p.iter()
            .filter(|(m, _)| top.is_none_or(|t| self.mono_degree(m) <= t))
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect()
    }
}

/// Dense rank over ℚ.
#[allow(clippy::needless_range_loop)]
pub fn rank(mut rows: Vec<Vec<Q>>) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = &rows[i][c] / &pivot;
                for j in c..ncols {
                    let t = &rows[r][j] * &f;
                    rows[i][j] -= t;
                }
            }
        }
        r += 1;
    }
    r
}

/// Kernel basis of the matrix whose rows are `rows` (vectors `v` with `rows · v = 0`).
#[allow(clippy::needless_range_loop)]
pub fn kernel(rows: &[Vec<Q>], ncols: usize) -> Vec<Vec<Q>> {
    let mut m: Vec<Vec<Q>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = Q::one() / &m[r][c];
        for j in 0..ncols {
            m[r][j] = &m[r][j] * &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..ncols {
                    let t = &m[r][j] * &f;
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); ncols];
            v[f] = Q::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -m[i][f].clone();
            }
            v
        })
        .collect()
}

/// Derivations `A → B` along `phi`, with `B` cut above `top`.
pub struct DerOracle<'a> {
    pub a: &'a Alg,
    pub b: &'a Alg,
    pub phi: Vec<Poly>,
    pub top: Option<i32>,
}

impl<'a> DerOracle<'a> {
    pub fn new(a: &'a Alg, b: &'a Alg, phi: Vec<Poly>, top: Option<i32>) -> Self {
        DerOracle { a, b, phi, top }
    }

    pub fn endo(a: &'a Alg) -> Self {
        let phi = (0..a.n()).map(|g| a.gen(g)).collect();
        DerOracle { a, b: a, phi, top: None }
    }

    /// Coefficients through the map sending every generator to zero.
    pub fn trivial(a: &'a Alg, b: &'a Alg) -> Self {
        DerOracle { a, b, phi: vec![Poly::new(); a.n()], top: None }
    }

    /// Basis `(generator, monomial of B)` of degree-`k` derivations.
    pub fn basis(&self, k: i32) -> Vec<(usize, Mono)> {
        let mut out = Vec::new();
        for g in 0..self.a.n() {
            let t = self.a.deg[g] + k;
            if t < 0 || self.top.is_some_and(|top| t > top) {
                continue;
            }
            for m in self.b.basis(t) {
                out.push((g, m));
            }
        }
        out
    }

    fn values(&self, k: i32, coords: &[Q]) -> Vec<Poly> {
        let mut v = vec![Poly::new(); self.a.n()];
        for ((g, m), c) in self.basis(k).into_iter().zip(coords) {
            if !c.is_zero() {
                add(&mut v[g], m, c.clone());
            }
        }
        v
    }

    /// `Dθ = d_B θ − (−1)^k θ d_A` on generators.
    pub fn differential(&self, k: i32, values: &[Poly]) -> Vec<Poly> {
        (0..self.a.n())
            .map(|g| {
                let mut out = self.b.truncate(&self.b.differential(&values[g]), self.top);
                let through = self.a.apply_der(self.b, &self.phi, k, values, &self.a.d[g]);
                let s = if k % 2 == 0 { q(-1) } else { q(1) };
                for (m, c) in self.b.truncate(&through, self.top) {
                    add(&mut out, m, c * &s);
                }
                out
            })
            .collect()
    }

    fn coords(&self, k: i32, values: &[Poly]) -> Vec<Q> {
        self.basis(k).iter().map(|(g, m)| values[*g].get(m).cloned().unwrap_or_else(Q::zero)).collect()
    }

    /// Columns of `D: Der^k → Der^{k+1}`, stored as rows of the transpose.
    pub fn matrix_rows(&self, k: i32) -> Vec<Vec<Q>> {
        let n = self.basis(k).len();
        let target = self.basis(k + 1).len();
        let cols: Vec<Vec<Q>> = (0..n)
            .map(|i| {
                let mut e = vec![Q::zero(); n];
                e[i] = Q::one();
                self.coords(k + 1, &self.differential(k, &self.values(k, &e)))
            })
            .collect();
        (0..target).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect()
    }

    pub fn dim_h(&self, k: i32) -> usize {
        let n = self.basis(k).len();
        let r_out = if n == 0 { 0 } else { rank(self.matrix_rows(k)) };
        let r_in = if self.basis(k - 1).is_empty() { 0 } else { rank(self.matrix_rows(k - 1)) };
        n - r_out - r_in
    }
}

/// `H⁰` of endomorphism derivations as a Lie algebra: its dimension and the dimension
/// of `[g, g]`.
pub fn h0_lie(a: &Alg) -> (usize, usize) {
    let o = DerOracle::endo(a);
    let n0 = o.basis(0).len();
    let z = kernel(&o.matrix_rows(0), n0);
    let boundary_rows =
        if o.basis(-1).is_empty() { Vec::new() } else { transpose(&o.matrix_rows(-1), o.basis(-1).len()) };
    let b_rank = rank(boundary_rows.clone());
    let dim = z.len() - b_rank;
    let mut span = boundary_rows;
    for x in &z {
        for y in &z {
            let vx = o.values(0, x);
            let vy = o.values(0, y);
            let br: Vec<Poly> = (0..a.n())
                .map(|g| {
                    let mut p = a.apply_der(a, &o.phi, 0, &vx, &vy[g]);
                    for (m, c) in a.apply_der(a, &o.phi, 0, &vy, &vx[g]) {
                        add(&mut p, m, -c);
                    }
                    p
                })
                .collect();
            span.push(o.coords(0, &br));
        }
    }
    (dim, rank(span) - b_rank)
}

fn transpose(rows: &[Vec<Q>], ncols: usize) -> Vec<Vec<Q>> {
    (0..ncols).map(|c| rows.iter().map(|r| r[c].clone()).collect()).collect()
}

pub fn is_integral(x: &Q) -> bool {
    x.denom().abs().is_one()
}

pub fn sphere(n: i32) -> Alg {
    if n % 2 == 1 {
        Alg::free(&[n])
    } else {
        Alg::new(&[n, 2 * n - 1], vec![Poly::new(), poly(2, &[(1, &[(0, 2)])])])
    }
}

pub fn cp(n: u32) -> Alg {
    Alg::new(&[2, 2 * n as i32 + 1], vec![Poly::new(), poly(2, &[(1, &[(0, n + 1)])])])
}

/// `S² × S²` with generators `x₁, x₂` (degree 2) and `y₁, y₂` (degree 3).
pub fn s2_times_s2() -> Alg {
    Alg::new(&[2, 2, 3, 3], vec![Poly::new(), Poly::new(), poly(4, &[(1, &[(0, 2)])]), poly(4, &[(1, &[(1, 2)])])])
}

pub fn point() -> Alg {
    Alg::free(&[])
}

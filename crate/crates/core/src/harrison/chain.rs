use std::collections::{BTreeMap, HashMap};

use num_traits::One;
use serde::Serialize;

use super::bar::{bar_differential, shuffle_product, sign, words_of_bar_degree, BarSlices, BarWord};
use crate::cdga::{require_minimal, FreeCdga, KahlerElement, KahlerModule};
use crate::error::{Error, Result};
use crate::graded::linalg::add_entry;
use crate::graded::{DegreeWindow, Element, Matrix, Monomial, Scalar, Span, SparseVec};

/// A Hochschild chain `Σ c · a⊗(p₁|…|p_ℓ)` with `ℓ ≥ 1`.
pub type HochschildChain = BTreeMap<(Monomial, BarWord), Scalar>;

fn push(x: &mut HochschildChain, a: Monomial, w: BarWord, c: Scalar) {
    let e = x.entry((a, w)).or_default();
    *e += c;
}

fn trim(mut x: HochschildChain) -> HochschildChain {
    x.retain(|_, c| *c != Scalar::default());
    x
}

/// Total degree `|a| + Σ|pᵢ| − (ℓ − 1)`.
pub fn chain_degree(alg: &FreeCdga, a: &Monomial, w: &BarWord) -> i32 {
    alg.gens().monomial_degree(a) + w.total_degree(alg)
}

/// `b(a⊗w) = da⊗w + (−1)^{|a|} a⊗Dw + (−1)^{|a|} ap₁⊗(p₂|…)
///  − (−1)^{|a|+|w'|+|p_ℓ|(|a|+|w'|)} p_ℓ a⊗w'`, where `w = (w'|p_ℓ)` and terms of
/// length zero are dropped.
pub fn hochschild_boundary(alg: &FreeCdga, a: &Monomial, w: &BarWord) -> HochschildChain {
    let g = alg.gens();
    let mut out = HochschildChain::new();
    let da = alg.differential(&Element::from_term(a.clone(), Scalar::one()));
    for (m, c) in da.terms() {
        push(&mut out, m.clone(), w.clone(), c.clone());
    }
    let deg_a = g.monomial_degree(a);
    let ea = sign(deg_a % 2 != 0);
    for (v, c) in bar_differential(alg, w) {
        push(&mut out, a.clone(), v, &ea * c);
    }
    let n = w.len();
    if n >= 2 {
        let first = &w.0[0];
        if let Some((m, neg)) = g.mul_monomials(a, first) {
            push(&mut out, m, BarWord(w.0[1..].to_vec()), &ea * sign(neg));
        }
        let last = &w.0[n - 1];
        let init = BarWord(w.0[..n - 1].to_vec());
        let s = deg_a + init.bar_degree(alg);
        let odd = (s + g.monomial_degree(last) * s) % 2 != 0;
        if let Some((m, neg)) = g.mul_monomials(last, a) {
            push(&mut out, m, init, -sign(odd ^ neg));
        }
    }
    trim(out)
}

/// The comparison map to `Ω_A`: `a⊗(p) ↦ (−1)^{|p|} a·δp`, zero on longer words.
pub fn comparison(omega: &KahlerModule, a: &Monomial, w: &BarWord) -> KahlerElement {
    let alg = omega.algebra();
    let n = alg.gens().len();
    if w.len() != 1 {
        return KahlerElement::zero(n);
    }
    let odd = alg.gens().monomial_degree(&w.0[0]) % 2 != 0;
    let dp = omega.universal(&Element::from_term(w.0[0].clone(), Scalar::one()));
    let mut out = KahlerElement::zero(n);
    out.add_scaled(&omega.scale(&Element::from_term(a.clone(), Scalar::one()), &dp), &sign(odd));
    out
}

/// `A ⊗ (B̄A / shuffles)` in total degrees `lo..=hi`.
#[derive(Debug, Clone)]
pub struct ChainQuotient {
    algebra: FreeCdga,
    bars: BarSlices,
    lo: i32,
    bases: Vec<Vec<(Monomial, i32, usize)>>,
    index: Vec<HashMap<(Monomial, i32, usize), usize>>,
}

impl ChainQuotient {
    pub fn new(alg: &FreeCdga, lo: i32, hi: i32) -> Result<Self> {
        if !alg.is_simply_connected() {
            return Err(Error::NotSimplyConnected(alg.name().to_string()));
        }
        if lo > hi {
            return Err(Error::InvalidWindow { lo, hi, reason: "empty".into() });
        }
        let max_k = hi - 1;
        let bars = BarSlices::new(alg, max_k, max_k.max(0) as usize);
        let mut bases = Vec::new();
        let mut index = Vec::new();
        for n in lo..=hi {
            let mut basis = Vec::new();
            for k in 1..n {
                let slice = bars.slice(k).expect("slice in range");
                for a in alg.basis(n - 1 - k) {
                    for q in 0..slice.quotient_dim() {
                        basis.push((a.clone(), k, q));
                    }
                }
            }
            index.push(basis.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect());
            bases.push(basis);
        }
        Ok(ChainQuotient { algebra: alg.clone(), bars, lo, bases, index })
    }

    pub fn dim(&self, n: i32) -> usize {
        self.basis(n).len()
    }

    pub fn basis(&self, n: i32) -> &[(Monomial, i32, usize)] {
        &self.bases[(n - self.lo) as usize]
    }

    pub fn word(&self, k: i32, q: usize) -> &BarWord {
        let s = self.bars.slice(k).expect("slice in range");
        &s.words[s.quotient_basis[q]]
    }

    /// Coordinates of a chain of total degree `n` in the quotient basis.
    pub fn coordinates(&self, n: i32, x: &HochschildChain) -> SparseVec {
        let index = &self.index[(n - self.lo) as usize];
        let mut v = SparseVec::new();
        for ((a, w), c) in x {
            let k = w.bar_degree(&self.algebra);
            let slice = self.bars.slice(k).expect("slice in range");
            for (q, e) in slice.class_of(w) {
                add_entry(&mut v, index[&(a.clone(), k, q)], &(c * e));
            }
        }
        v
    }

    pub fn matrix(&self, n: i32) -> Matrix {
        let cols = self
            .basis(n)
            .iter()
            .map(|(a, k, q)| self.coordinates(n + 1, &hochschild_boundary(&self.algebra, a, self.word(*k, *q))))
            .collect();
        Matrix::from_columns(self.dim(n + 1), cols)
    }

    pub fn comparison_matrix(&self, omega: &KahlerModule, n: i32) -> Matrix {
        let target = omega.basis(n);
        let cols = self
            .basis(n)
            .iter()
            .map(|(a, k, q)| omega.coordinates(&comparison(omega, a, self.word(*k, *q)), &target))
            .collect();
        Matrix::from_columns(target.len(), cols)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ChainQuotientReport {
    pub window: DegreeWindow,
    pub chain_dims: BTreeMap<i32, usize>,
    pub quotient_homology: BTreeMap<i32, usize>,
    pub omega_homology: BTreeMap<i32, usize>,
    pub chain_map: bool,
    pub surjective: bool,
    pub induces_isomorphism: bool,
}

impl ChainQuotientReport {
    pub fn dims_agree(&self) -> bool {
        self.quotient_homology == self.omega_homology
    }
}

/// Homology of `A ⊗ (B̄A / shuffles)` against `H(Ω_A)` on a window of total degrees.
pub fn aq_chain_quotient(alg: &FreeCdga, w: DegreeWindow) -> Result<ChainQuotientReport> {
    require_minimal(alg)?;
    let (lo, hi) = (w.lo - 1, w.hi + 1);
    let q = ChainQuotient::new(alg, lo, hi)?;
    let omega = KahlerModule::new(alg);
    let mats: Vec<Matrix> = (lo..hi).map(|n| q.matrix(n)).collect();
    let kappa: Vec<Matrix> = (lo..=hi).map(|n| q.comparison_matrix(&omega, n)).collect();
    let dom: Vec<Matrix> = (lo..hi).map(|n| omega.d_matrix(n)).collect();
    for (i, pair) in mats.windows(2).enumerate() {
        if !pair[1].compose(&pair[0]).is_zero() {
            return Err(Error::NonzeroSquare { degree: lo + i as i32 });
        }
    }
    let mut chain_map = true;
    for i in 0..mats.len() {
        chain_map &= kappa[i + 1].compose(&mats[i]) == dom[i].compose(&kappa[i]);
    }
    let mut surjective = true;
    let mut iso = true;
    let mut chain_dims = BTreeMap::new();
    let mut qh = BTreeMap::new();
    let mut oh = BTreeMap::new();
    for n in w.degrees() {
        let i = (n - lo) as usize;
        chain_dims.insert(n, q.dim(n));
        surjective &= kappa[i].rank() == omega.basis(n).len();
        let cycles = mats[i].kernel();
        let mut bq = mats[i - 1].column_span();
        let mut reps = Vec::new();
        for z in cycles {
            if bq.insert(&z) {
                reps.push(z);
            }
        }
        let o_cycles = dom[i].kernel();
        let o_bound = dom[i - 1].column_span();
        let mut o_span = o_bound.clone();
        let o_dim = o_cycles.iter().filter(|z| o_span.insert(z)).count();
        let mut image: Span = o_bound;
        let independent = reps.iter().filter(|z| image.insert(&kappa[i].apply(z))).count();
        iso &= independent == reps.len() && independent == o_dim;
        qh.insert(n, reps.len());
        oh.insert(n, o_dim);
    }
    Ok(ChainQuotientReport {
        window: w,
        chain_dims,
        quotient_homology: qh,
        omega_homology: oh,
        chain_map,
        surjective,
        induces_isomorphism: iso,
    })
}

/// Dimension of the bar-degree-`k` slice of `B̄A / shuffles` next to the dimension of
/// the cochains on that slice vanishing on shuffles, the latter computed as the null
/// space of the evaluation-on-shuffles matrix.
pub fn duality_check(alg: &FreeCdga, k: i32) -> Result<(usize, usize)> {
    if !alg.is_simply_connected() {
        return Err(Error::NotSimplyConnected(alg.name().to_string()));
    }
    let bars = BarSlices::new(alg, k, k.max(0) as usize);
    let quotient = bars.slice(k).map_or(0, |s| s.quotient_dim());
    let words = words_of_bar_degree(alg, k, k.max(0) as usize);
    let position: HashMap<&BarWord, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for j in 1..k {
        for u in words_of_bar_degree(alg, j, j as usize) {
            for v in words_of_bar_degree(alg, k - j, (k - j) as usize) {
                let mut row = vec![Scalar::default(); words.len()];
                for (w, c) in shuffle_product(alg, &u, &v) {
                    row[position[&w]] += c;
                }
                rows.push(row);
            }
        }
    }
    let annihilator = if rows.is_empty() { words.len() } else { Matrix::from_rows(&rows).kernel().len() };
    Ok((quotient, annihilator))
}

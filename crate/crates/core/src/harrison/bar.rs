use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use crate::cdga::FreeCdga;
use crate::graded::{Monomial, Scalar, Span, SparseVec};

/// A tensor word `(p₁|…|p_ℓ)` of basis monomials of `A⁺`.
///
/// Letters are desuspended: letter `p` has bar degree `|p| − 1`, and the word has
/// bar degree `Σ(|pᵢ| − 1)`. The total (chain) degree is the bar degree plus one,
/// i.e. `Σ|pᵢ| − (ℓ − 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BarWord(pub Vec<Monomial>);

/// A ℚ-combination of bar words.
pub type Chain = BTreeMap<BarWord, Scalar>;

pub(crate) fn add_to(chain: &mut Chain, w: BarWord, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match chain.entry(w) {
        Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
        Entry::Vacant(e) => {
            e.insert(c);
        }
    }
}

pub(crate) fn sign(odd: bool) -> Scalar {
    if odd {
        -Scalar::one()
    } else {
        Scalar::one()
    }
}

impl BarWord {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Monomial] {
        &self.0
    }

    pub fn letter_degree(a: &FreeCdga, p: &Monomial) -> i32 {
        a.gens().monomial_degree(p) - 1
    }

    pub fn bar_degree(&self, a: &FreeCdga) -> i32 {
        self.0.iter().map(|p| Self::letter_degree(a, p)).sum()
    }

    /// Internal degree `Σ|pᵢ|`.
    pub fn internal_degree(&self, a: &FreeCdga) -> i32 {
        self.0.iter().map(|p| a.gens().monomial_degree(p)).sum()
    }

    pub fn total_degree(&self, a: &FreeCdga) -> i32 {
        self.bar_degree(a) + 1
    }

    pub fn format(&self, a: &FreeCdga) -> String {
        let parts: Vec<String> = self.0.iter().map(|p| a.gens().format_monomial(p)).collect();
        format!("({})", parts.join("|"))
    }

    fn concat(&self, tail: &[Monomial]) -> BarWord {
        let mut v = self.0.clone();
        v.extend_from_slice(tail);
        BarWord(v)
    }
}

/// Words of length `ℓ` and internal degree `k`, in a deterministic order.
pub fn bar_basis(a: &FreeCdga, len: usize, k: i32) -> Vec<BarWord> {
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    fill(a, len, k, 0, &mut prefix, &mut out);
    out
}

/// All words of bar degree `k` with length at most `max_len`.
pub fn words_of_bar_degree(a: &FreeCdga, k: i32, max_len: usize) -> Vec<BarWord> {
    let mut out = Vec::new();
    for len in 1..=max_len {
        let mut prefix = Vec::new();
        fill(a, len, k, 1, &mut prefix, &mut out);
    }
    out
}

/// Letters `p` weigh `|p| − shift`; weights are at least 1 when `A` is simply connected.
fn fill(a: &FreeCdga, len: usize, k: i32, shift: i32, prefix: &mut Vec<Monomial>, out: &mut Vec<BarWord>) {
    if len == 0 {
        if k == 0 {
            out.push(BarWord(prefix.clone()));
        }
        return;
    }
    for j in 1..=k - (len as i32 - 1) {
        for p in a.basis(j + shift) {
            if p.is_unit() {
                continue;
            }
            prefix.push(p);
            fill(a, len - 1, k - j, shift, prefix, out);
            prefix.pop();
        }
    }
}

/// Shuffle product with Koszul signs computed from the desuspended letter degrees.
pub fn shuffle_product(a: &FreeCdga, u: &BarWord, v: &BarWord) -> Chain {
    let mut out = Chain::new();
    shuffle_into(a, &u.0, &v.0, &BarWord(Vec::new()), Scalar::one(), &mut out);
    out
}

fn shuffle_into(a: &FreeCdga, u: &[Monomial], v: &[Monomial], prefix: &BarWord, c: Scalar, out: &mut Chain) {
    if u.is_empty() || v.is_empty() {
        let rest = if u.is_empty() { v } else { u };
        add_to(out, prefix.concat(rest), c);
        return;
    }
    shuffle_into(a, &u[1..], v, &prefix.concat(&u[..1]), c.clone(), out);
    let u_deg: i32 = u.iter().map(|p| BarWord::letter_degree(a, p)).sum();
    let odd = (u_deg * BarWord::letter_degree(a, &v[0])) % 2 != 0;
    shuffle_into(a, u, &v[1..], &prefix.concat(&v[..1]), c * sign(odd), out);
}

/// Bilinear extension of [`shuffle_product`].
pub fn shuffle_chains(a: &FreeCdga, x: &Chain, y: &Chain) -> Chain {
    let mut out = Chain::new();
    for (u, c) in x {
        for (v, e) in y {
            for (w, f) in shuffle_product(a, u, v) {
                add_to(&mut out, w, c * e * f);
            }
        }
    }
    out
}

/// The bar differential `D = D₀ + D₁` on the reduced bar construction:
/// `D₀` applies `s̄p ↦ −s̄(dp)` to each letter and `D₁` merges neighbours via
/// `(s̄p, s̄q) ↦ (−1)^{|s̄p|} s̄(pq)`, each with the Koszul sign of the prefix.
pub fn bar_differential(a: &FreeCdga, w: &BarWord) -> Chain {
    let mut out = Chain::new();
    let letters = &w.0;
    let mut prefix_deg = 0;
    for i in 0..letters.len() {
        let p = &letters[i];
        let eps = sign(prefix_deg % 2 != 0);
        let dp = a.differential(&crate::graded::Element::from_term(p.clone(), Scalar::one()));
        for (m, c) in dp.terms() {
            let mut v = letters.clone();
            v[i] = m.clone();
            add_to(&mut out, BarWord(v), -(c * &eps));
        }
        let lp = BarWord::letter_degree(a, p);
        if i + 1 < letters.len() {
            let q = &letters[i + 1];
            if let Some((m, neg)) = a.gens().mul_monomials(p, q) {
                let mut v: Vec<Monomial> = letters[..i].to_vec();
                v.push(m);
                v.extend_from_slice(&letters[i + 2..]);
                add_to(&mut out, BarWord(v), &eps * sign(neg ^ (lp % 2 != 0)));
            }
        }
        prefix_deg += lp;
    }
    out
}

pub fn bar_differential_chain(a: &FreeCdga, x: &Chain) -> Chain {
    let mut out = Chain::new();
    for (w, c) in x {
        for (v, e) in bar_differential(a, w) {
            add_to(&mut out, v, c * e);
        }
    }
    out
}

/// Words of one bar degree together with the quotient by shuffle products.
#[derive(Debug, Clone)]
pub struct WordSlice {
    pub degree: i32,
    pub words: Vec<BarWord>,
    index: HashMap<BarWord, usize>,
    /// Word indices forming a basis of the quotient (the non-pivot columns).
    pub quotient_basis: Vec<usize>,
    /// Each word expressed in the quotient basis.
    reduce: Vec<SparseVec>,
    pub shuffle_rank: usize,
}

impl WordSlice {
    pub fn index_of(&self, w: &BarWord) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn quotient_dim(&self) -> usize {
        self.quotient_basis.len()
    }

    /// Coordinates of the class of `w` in the quotient basis.
    pub fn class_of(&self, w: &BarWord) -> SparseVec {
        match self.index.get(w) {
            Some(&i) => self.reduce[i].clone(),
            None => SparseVec::new(),
        }
    }

    pub fn class_of_chain(&self, x: &Chain) -> SparseVec {
        let mut v = SparseVec::new();
        for (w, c) in x {
            crate::graded::linalg::axpy(&mut v, c, &self.class_of(w));
        }
        v
    }

    pub fn coordinates(&self, x: &Chain) -> SparseVec {
        let mut v = SparseVec::new();
        for (w, c) in x {
            if let Some(&i) = self.index.get(w) {
                crate::graded::linalg::add_entry(&mut v, i, c);
            }
        }
        v
    }
}

/// Word slices of bar degrees `1..=max_degree`, restricted to length `≤ max_len`.
#[derive(Debug, Clone)]
pub struct BarSlices {
    algebra: FreeCdga,
    pub max_len: usize,
    slices: Vec<WordSlice>,
}

impl BarSlices {
    pub fn new(a: &FreeCdga, max_degree: i32, max_len: usize) -> Self {
        let mut slices: Vec<WordSlice> = Vec::new();
        for k in 1..=max_degree.max(0) {
            let words = words_of_bar_degree(a, k, max_len);
            let index: HashMap<BarWord, usize> = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
            let mut span = Span::new();
            for j in 1..k {
                for u in &slices[j as usize - 1].words {
                    for v in &slices[(k - j) as usize - 1].words {
                        if u.len() + v.len() > max_len || u > v && j == k - j {
                            continue;
                        }
                        let mut x = SparseVec::new();
                        for (w, c) in shuffle_product(a, u, v) {
                            x.insert(index[&w], c);
                        }
                        span.insert(&x);
                    }
                }
            }
            let rows = span.reduced_basis();
            let pivots: BTreeMap<usize, SparseVec> =
                rows.into_iter().map(|r| (*r.keys().next().expect("nonzero row"), r)).collect();
            let quotient_basis: Vec<usize> = (0..words.len()).filter(|i| !pivots.contains_key(i)).collect();
            let position: HashMap<usize, usize> = quotient_basis.iter().enumerate().map(|(q, &i)| (i, q)).collect();
            let reduce = (0..words.len())
                .map(|i| match pivots.get(&i) {
                    None => SparseVec::from([(position[&i], Scalar::one())]),
                    Some(row) => row.iter().skip(1).map(|(j, c)| (position[j], -c.clone())).collect(),
                })
                .collect();
            slices.push(WordSlice { degree: k, words, index, quotient_basis, reduce, shuffle_rank: pivots.len() });
        }
        BarSlices { algebra: a.clone(), max_len, slices }
    }

    pub fn algebra(&self) -> &FreeCdga {
        &self.algebra
    }

    pub fn max_degree(&self) -> i32 {
        self.slices.len() as i32
    }

    pub fn slice(&self, k: i32) -> Option<&WordSlice> {
        if k < 1 {
            return None;
        }
        self.slices.get(k as usize - 1)
    }
}

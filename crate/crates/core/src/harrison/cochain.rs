use std::collections::{BTreeMap, HashMap};

use num_traits::One;
use serde::Serialize;

use super::bar::{bar_differential, shuffle_product, sign, words_of_bar_degree, BarSlices, BarWord, Chain};
use crate::cdga::ModuleView;
use crate::error::{Error, Result};
use crate::graded::{ComplexWindow, DegreeWindow, Element, Matrix, Monomial, Scalar, SparseVec};

/// A Hochschild cochain of degree `t`: a map from bar words to the module with
/// `c(w) ∈ B_{|w|+t+1}` (`|w|` the bar degree). Values are complete for words of bar
/// degree at most `known_up_to`; missing words evaluate to zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cochain {
    pub degree: i32,
    pub known_up_to: i32,
    pub values: BTreeMap<BarWord, Element>,
}

impl Cochain {
    pub fn eval(&self, w: &BarWord) -> Element {
        self.values.get(w).cloned().unwrap_or_else(Element::zero)
    }

    pub fn eval_chain(&self, x: &Chain) -> Element {
        let mut out = Element::zero();
        for (w, c) in x {
            out.add_scaled(&self.eval(w), c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.values.values().all(|v| v.is_zero())
    }

    /// Whether `c(u ⧢ v) = 0` for all words with `|u| + |v| ≤ known_up_to`.
    pub fn vanishes_on_shuffles(&self, module: &ModuleView) -> bool {
        let a = module.source();
        let k = self.known_up_to;
        let words: Vec<Vec<BarWord>> = (1..k).map(|j| words_of_bar_degree(a, j, j as usize)).collect();
        for j in 1..k {
            for i in 1..=(k - j) {
                for u in &words[j as usize - 1] {
                    for v in &words[i as usize - 1] {
                        if !self.eval_chain(&shuffle_product(a, u, v)).is_zero() {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

fn parity(n: i32) -> bool {
    n.rem_euclid(2) == 1
}

/// `δc = d_M∘c − (−1)^{|c|} c∘D − τ⋆c + (−1)^{|c|} c⋆τ` with `|c| = t + 1`, where
/// `(τ⋆c)(s̄p|w) = (−1)^{|c||s̄p|} φ(p)·c(w)` and `(c⋆τ)(w|s̄p) = (−1)^{|w|} c(w)·φ(p)`.
pub fn eval_differential(module: &ModuleView, c: &Cochain, v: &BarWord) -> Element {
    let a = module.source();
    let cdeg = c.degree + 1;
    let mut out = module.d(&c.eval(v));
    out.add_scaled(&c.eval_chain(&bar_differential(a, v)), &-sign(parity(cdeg)));
    let n = v.len();
    if n >= 2 {
        let first = &v.0[0];
        let x1 = BarWord::letter_degree(a, first);
        let rest = BarWord(v.0[1..].to_vec());
        let left = module.mul(&module.image(&Element::from_term(first.clone(), Scalar::one())), &c.eval(&rest));
        out.add_scaled(&left, &-sign(parity(cdeg * x1)));
        let last = &v.0[n - 1];
        let init = BarWord(v.0[..n - 1].to_vec());
        let right = module.mul(&c.eval(&init), &module.image(&Element::from_term(last.clone(), Scalar::one())));
        out.add_scaled(&right, &sign(parity(cdeg + init.bar_degree(a))));
    }
    module.truncate(&out)
}

/// The Hochschild differential on a cochain, evaluated on every word of bar degree
/// below `c.known_up_to`.
pub fn hochschild_differential(module: &ModuleView, c: &Cochain) -> Result<Cochain> {
    let k = c.known_up_to - 1;
    if k < 1 {
        return Err(Error::InvalidWindow {
            lo: 1,
            hi: k,
            reason: "the cochain is not known on enough words to differentiate".into(),
        });
    }
    let a = module.source();
    let mut values = BTreeMap::new();
    for j in 1..=k {
        for v in words_of_bar_degree(a, j, j as usize) {
            let x = eval_differential(module, c, &v);
            if !x.is_zero() {
                values.insert(v, x);
            }
        }
    }
    Ok(Cochain { degree: c.degree + 1, known_up_to: k, values })
}

/// Basis of shuffle-vanishing cochains of degree `t`: pairs of a quotient basis word
/// and a module basis monomial.
#[derive(Debug, Clone)]
pub struct CochainBasis {
    pub degree: i32,
    pub entries: Vec<(i32, usize, Monomial)>,
    index: HashMap<(i32, usize, Monomial), usize>,
}

impl CochainBasis {
    fn new(module: &ModuleView, bars: &BarSlices, t: i32) -> Self {
        let mut entries = Vec::new();
        for k in 1..=bars.max_degree() {
            let slice = bars.slice(k).expect("slice in range");
            let basis = module.basis(k + t + 1);
            for q in 0..slice.quotient_dim() {
                for b in &basis {
                    entries.push((k, q, b.clone()));
                }
            }
        }
        let index = entries.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        CochainBasis { degree: t, entries, index }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn label(&self, module: &ModuleView, bars: &BarSlices, i: usize) -> String {
        let (k, q, b) = &self.entries[i];
        let slice = bars.slice(*k).expect("slice in range");
        let w = &slice.words[slice.quotient_basis[*q]];
        format!("{}↦{}", w.format(bars.algebra()), module.target().gens().format_monomial(b))
    }

    /// The full cochain on every word of the slices.
    pub fn cochain(&self, bars: &BarSlices, i: usize) -> Cochain {
        let (k, q, b) = &self.entries[i];
        let slice = bars.slice(*k).expect("slice in range");
        let mut values = BTreeMap::new();
        for w in &slice.words {
            if let Some(c) = slice.class_of(w).get(q) {
                values.insert(w.clone(), Element::from_term(b.clone(), c.clone()));
            }
        }
        Cochain { degree: self.degree, known_up_to: bars.max_degree(), values }
    }
}

#[derive(Default)]
struct Expanded {
    outer: Chain,
    inner: Chain,
    left: BTreeMap<Monomial, Chain>,
    right: BTreeMap<Monomial, Chain>,
}

enum Op {
    D,
    Id,
    Left(Element),
    Right(Element),
}

/// Shuffle-vanishing cochains of degrees `lo..=hi`, on words of bounded length.
#[derive(Debug, Clone)]
pub struct HarrisonComplex {
    module: ModuleView,
    bars: BarSlices,
    lo: i32,
    bases: Vec<CochainBasis>,
}

impl HarrisonComplex {
    pub fn new(module: &ModuleView, lo: i32, hi: i32, max_len: usize) -> Result<Self> {
        let a = module.source();
        if !a.is_simply_connected() {
            return Err(Error::NotSimplyConnected(format!(
                "{} has generators of degree 1; bar slices are infinite",
                a.name()
            )));
        }
        let top = module.top().ok_or(Error::UnboundedModule)?;
        if lo > hi {
            return Err(Error::InvalidWindow { lo, hi, reason: "empty".into() });
        }
        let max_degree = top - lo - 1;
        let bars = BarSlices::new(a, max_degree, max_len.min(max_degree.max(0) as usize));
        let bases = (lo..=hi).map(|t| CochainBasis::new(module, &bars, t)).collect();
        Ok(HarrisonComplex { module: module.clone(), bars, lo, bases })
    }

    pub fn bars(&self) -> &BarSlices {
        &self.bars
    }

    pub fn basis(&self, t: i32) -> &CochainBasis {
        &self.bases[(t - self.lo) as usize]
    }

    /// Matrix of `δ : C^t → C^{t+1}`.
    pub fn matrix(&self, t: i32) -> Matrix {
        let src = self.basis(t);
        let tgt = self.basis(t + 1);
        let module = &self.module;
        let a = module.source();
        let cdeg = t + 1;
        let mut cols = vec![SparseVec::new(); src.len()];
        for k in 1..=self.bars.max_degree() {
            let out_basis = module.basis(k + t + 2);
            if out_basis.is_empty() {
                continue;
            }
            let slice = self.bars.slice(k).expect("slice in range");
            for (qv, &wi) in slice.quotient_basis.iter().enumerate() {
                let v = &slice.words[wi];
                let mut terms: Vec<(i32, SparseVec, Scalar, Op)> = Vec::new();
                terms.push((k, SparseVec::from([(qv, Scalar::one())]), Scalar::one(), Op::D));
                if let Some(up) = self.bars.slice(k + 1) {
                    terms.push((k + 1, up.class_of_chain(&bar_differential(a, v)), -sign(parity(cdeg)), Op::Id));
                }
                let n = v.len();
                if n >= 2 {
                    let first = &v.0[0];
                    let x1 = BarWord::letter_degree(a, first);
                    let rest = BarWord(v.0[1..].to_vec());
                    let last = &v.0[n - 1];
                    let init = BarWord(v.0[..n - 1].to_vec());
                    let kr = k - x1;
                    let ki = init.bar_degree(a);
                    let gen = |p: &Monomial| module.image(&Element::from_term(p.clone(), Scalar::one()));
                    terms.push((
                        kr,
                        self.bars.slice(kr).expect("shorter word").class_of(&rest),
                        -sign(parity(cdeg * x1)),
                        Op::Left(gen(first)),
                    ));
                    terms.push((
                        ki,
                        self.bars.slice(ki).expect("shorter word").class_of(&init),
                        sign(parity(cdeg + ki)),
                        Op::Right(gen(last)),
                    ));
                }
                for (ks, class, eps, op) in terms {
                    for b in module.basis(ks + t + 1) {
                        let be = Element::from_term(b.clone(), Scalar::one());
                        let image = match &op {
                            Op::D => module.d(&be),
                            Op::Id => be,
                            Op::Left(f) => module.mul(f, &be),
                            Op::Right(f) => module.mul(&be, f),
                        };
                        if image.is_zero() {
                            continue;
                        }
                        for (q, c) in &class {
                            let col = src.index[&(ks, *q, b.clone())];
                            let factor = &eps * c;
                            for (m, x) in image.terms() {
                                let row = tgt.index[&(k, qv, m.clone())];
                                crate::graded::linalg::add_entry(&mut cols[col], row, &(&factor * x));
                            }
                        }
                    }
                }
            }
        }
        Matrix::from_columns(tgt.len(), cols)
    }

    pub fn complex_window(&self) -> Result<ComplexWindow> {
        let hi = self.lo + self.bases.len() as i32 - 1;
        let labels = (self.lo..=hi)
            .map(|t| (0..self.basis(t).len()).map(|i| self.basis(t).label(&self.module, &self.bars, i)).collect())
            .collect();
        let diffs = (self.lo..hi).map(|t| self.matrix(t)).collect();
        ComplexWindow::new(self.lo, labels, diffs)
    }

    /// Applies the full Hochschild differential to each basis cochain of degree `t`
    /// and tests that the result still vanishes on shuffle products.
    pub fn check_closure(&self, t: i32) -> Result<()> {
        let a = self.module.source();
        let basis = self.basis(t);
        let k = self.bars.max_degree() - 1;
        if k < 1 {
            return hochschild_differential(
                &self.module,
                &Cochain { degree: t, known_up_to: k + 1, values: BTreeMap::new() },
            )
            .map(|_| ());
        }
        let words: Vec<Vec<BarWord>> = (1..k).map(|j| words_of_bar_degree(a, j, j as usize)).collect();
        let mut shuffles: Vec<Chain> = Vec::new();
        for j in 1..k {
            for i in 1..=(k - j) {
                for u in &words[j as usize - 1] {
                    for v in &words[i as usize - 1] {
                        let x = shuffle_product(a, u, v);
                        if !x.is_empty() {
                            shuffles.push(x);
                        }
                    }
                }
            }
        }
        // δc(x) is linear in c, so each shuffle chain x is expanded once into the word
        // chains that c is evaluated on.
        let cdeg = t + 1;
        let add = |chain: &mut Chain, w: BarWord, c: Scalar| {
            let e = chain.entry(w).or_default();
            *e += c;
        };
        let expanded: Vec<Expanded> = shuffles
            .iter()
            .map(|x| {
                let mut e = Expanded::default();
                for (w, coeff) in x {
                    add(&mut e.outer, w.clone(), coeff.clone());
                    for (dw, dc) in bar_differential(a, w) {
                        add(&mut e.inner, dw, -sign(parity(cdeg)) * dc * coeff);
                    }
                    let n = w.len();
                    if n >= 2 {
                        let first = &w.0[0];
                        let s = -sign(parity(cdeg * BarWord::letter_degree(a, first)));
                        add(e.left.entry(first.clone()).or_default(), BarWord(w.0[1..].to_vec()), s * coeff);
                        let init = BarWord(w.0[..n - 1].to_vec());
                        let s = sign(parity(cdeg + init.bar_degree(a)));
                        add(e.right.entry(w.0[n - 1].clone()).or_default(), init, s * coeff);
                    }
                }
                e
            })
            .collect();
        let mut by_word: HashMap<&BarWord, Vec<usize>> = HashMap::new();
        for (s, e) in expanded.iter().enumerate() {
            let chains = [&e.outer, &e.inner].into_iter().chain(e.left.values()).chain(e.right.values());
            for chain in chains {
                for w in chain.keys() {
                    let list = by_word.entry(w).or_default();
                    if list.last() != Some(&s) {
                        list.push(s);
                    }
                }
            }
        }
        let letter = |m: &Monomial| self.module.image(&Element::from_term(m.clone(), Scalar::one()));
        for i in 0..basis.len() {
            let c = basis.cochain(&self.bars, i);
            let mut relevant: Vec<usize> = c.values.keys().filter_map(|w| by_word.get(w)).flatten().copied().collect();
            relevant.sort_unstable();
            relevant.dedup();
            for s in relevant {
                let e = &expanded[s];
                let mut total = self.module.d(&c.eval_chain(&e.outer));
                total.add_scaled(&c.eval_chain(&e.inner), &Scalar::one());
                for (m, chain) in &e.left {
                    let v = c.eval_chain(chain);
                    if !v.is_zero() {
                        total.add_scaled(&self.module.mul(&letter(m), &v), &Scalar::one());
                    }
                }
                for (m, chain) in &e.right {
                    let v = c.eval_chain(chain);
                    if !v.is_zero() {
                        total.add_scaled(&self.module.mul(&v, &letter(m)), &Scalar::one());
                    }
                }
                if !self.module.truncate(&total).is_zero() {
                    return Err(Error::HypothesisViolated(format!(
                        "δ({}) does not vanish on shuffle products",
                        basis.label(&self.module, &self.bars, i)
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Harrison-route AQ cohomology with its certification.
#[derive(Debug, Clone, Serialize)]
pub struct HarrisonCohomology {
    pub window: DegreeWindow,
    pub dims: BTreeMap<i32, usize>,
    pub length_bound: usize,
    /// Word length needed for each degree to be exact.
    pub required_length: BTreeMap<i32, usize>,
    pub certified_degrees: Vec<i32>,
}

impl HarrisonCohomology {
    pub fn dim(&self, n: i32) -> usize {
        self.dims.get(&n).copied().unwrap_or(0)
    }

    pub fn is_certified(&self, n: i32) -> bool {
        self.certified_degrees.contains(&n)
    }
}

/// Words of length `ℓ` have bar degree at least `ℓ`, so with module top `T` every
/// cochain of degree `t − 1` lives on words of length at most `T − t`.
pub fn required_length(module: &ModuleView, t: i32) -> Result<usize> {
    let top = module.top().ok_or(Error::UnboundedModule)?;
    Ok((top - t).max(0) as usize)
}

pub fn aq_cohomology_harrison(
    module: &ModuleView,
    w: DegreeWindow,
    length_bound: Option<usize>,
) -> Result<HarrisonCohomology> {
    let mut required = BTreeMap::new();
    for t in w.degrees() {
        required.insert(t, required_length(module, t)?);
    }
    let needed = required.values().copied().max().unwrap_or(0);
    let bound = length_bound.unwrap_or(needed);
    let complex = HarrisonComplex::new(module, w.lo - 1, w.hi + 1, bound)?;
    let h = complex.complex_window()?.cohomology()?;
    let dims = w.degrees().map(|t| (t, h[&t].dim)).collect();
    let certified_degrees = w.degrees().filter(|t| required[t] <= bound).collect();
    Ok(HarrisonCohomology { window: w, dims, length_bound: bound, required_length: required, certified_degrees })
}

//! Free commutative dg algebras, their morphisms and modules.

mod extension;
mod homotopy;
mod minimal;
mod module;
mod morphism;

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graded::{ComplexWindow, DegreeWindow, Element, Generator, GeneratorSet, Matrix, Monomial, Scalar};

pub use extension::{KahlerElement, KahlerModule, SquareZeroElement, SquareZeroExtension};
pub use homotopy::{
    check_homotopy, exp_homotopy, is_homotopic_to_identity, HomotopyCheck, HomotopyVerdict, PolyElement,
    PolynomialHomotopy,
};
pub use minimal::minimal_model;
pub use module::ModuleView;
pub use morphism::DgaMorphism;

/// A free graded-commutative algebra `ΛV` over ℚ with a differential of degree +1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeCdga {
    name: String,
    gens: GeneratorSet,
    d: Vec<Element>,
    minimal: bool,
}

/// Value of a φ-derivation of degree `deg` on the monomial `m`, given its values on
/// generators: `θ(u·g·v) = (−1)^{deg·|u|} φ(u) θ(g) φ(v)` summed over factors.
pub(crate) fn leibniz_monomial(
    src: &GeneratorSet,
    m: &Monomial,
    deg: i32,
    tgt: &GeneratorSet,
    phi: &[Element],
    theta: &[Element],
    top: Option<i32>,
) -> Element {
    let word = m.word();
    let k = word.len();
    if k == 0 {
        return Element::zero();
    }
    let mut suffix = vec![tgt.one(); k];
    for p in (0..k - 1).rev() {
        suffix[p] = tgt.truncate(&tgt.mul(&phi[word[p + 1]], &suffix[p + 1]), top);
    }
    let mut out = Element::zero();
    let mut prefix = tgt.one();
    let mut prefix_deg = 0;
    for p in 0..k {
        let g = word[p];
        if !theta[g].is_zero() && !prefix.is_zero() && !suffix[p].is_zero() {
            let t = tgt.truncate(&tgt.mul(&prefix, &theta[g]), top);
            let t = tgt.truncate(&tgt.mul(&t, &suffix[p]), top);
            let sign = if (deg * prefix_deg) % 2 != 0 { -1 } else { 1 };
            out.add_scaled(&t, &Scalar::from_integer(sign.into()));
        }
        prefix = tgt.truncate(&tgt.mul(&prefix, &phi[g]), top);
        prefix_deg += src.degree(g);
    }
    out
}

/// Extends a φ-derivation from generators to an arbitrary element.
pub(crate) fn leibniz(
    src: &GeneratorSet,
    e: &Element,
    deg: i32,
    tgt: &GeneratorSet,
    phi: &[Element],
    theta: &[Element],
    top: Option<i32>,
) -> Element {
    let mut out = Element::zero();
    for (m, c) in e.terms() {
        out.add_scaled(&leibniz_monomial(src, m, deg, tgt, phi, theta, top), c);
    }
    out
}

impl FreeCdga {
    /// Validates degrees of the differential and `d² = 0`; generators missing from `d`
    /// get `d = 0`.
    pub fn new(name: impl Into<String>, gens: GeneratorSet, d: BTreeMap<String, Element>) -> Result<Self> {
        let mut values = vec![Element::zero(); gens.len()];
        for (g, v) in d {
            let i = gens.index_of(&g)?;
            if !gens.owns_element(&v) {
                return Err(Error::MismatchedGenerators);
            }
            values[i] = v;
        }
        let a = FreeCdga { name: name.into(), gens, d: values, minimal: false };
        a.check_degrees()?;
        a.check_d_squared()?;
        Ok(a.with_flags())
    }

    /// Convenience constructor from expression strings, e.g. `&[("y", "x^2")]`.
    pub fn build(name: &str, gens: &[(&str, i32)], d: &[(&str, &str)]) -> Result<Self> {
        let set = GeneratorSet::new(gens.iter().map(|&(n, k)| Generator::new(n, k)).collect())?;
        let mut values = BTreeMap::new();
        for &(g, text) in d {
            values.insert(g.to_string(), crate::dsl::eval_str(text, &set)?);
        }
        FreeCdga::new(name, set, values)
    }

    /// The ground field ℚ as a CDGA with no generators.
    pub fn trivial() -> Self {
        FreeCdga { name: "Q".into(), gens: GeneratorSet::empty(), d: Vec::new(), minimal: true }
    }

    fn with_flags(mut self) -> Self {
        self.minimal = self.d.iter().all(|v| v.terms().keys().all(|m| m.length() >= 2));
        self
    }

    fn check_degrees(&self) -> Result<()> {
        for (i, v) in self.d.iter().enumerate() {
            let g = self.gens.generator(i);
            let expected = g.degree + 1;
            match self.gens.degrees(v).as_slice() {
                [] => {}
                [k] if *k == expected => {}
                [k] => return Err(Error::DifferentialDegree { generator: g.name.clone(), expected, got: *k }),
                _ => return Err(Error::Inhomogeneous { generator: g.name.clone(), expected }),
            }
        }
        Ok(())
    }

    pub fn check_d_squared(&self) -> Result<()> {
        for (i, v) in self.d.iter().enumerate() {
            let dd = self.differential(v);
            if !dd.is_zero() {
                return Err(Error::DSquareNonzero {
                    generator: self.gens.generator(i).name.clone(),
                    value: self.gens.format(&dd),
                });
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(&self, name: impl Into<String>) -> Self {
        FreeCdga { name: name.into(), ..self.clone() }
    }

    pub fn gens(&self) -> &GeneratorSet {
        &self.gens
    }

    /// `d` on the `i`-th generator.
    pub fn d_gen(&self, i: usize) -> &Element {
        &self.d[i]
    }

    pub fn d_values(&self) -> &[Element] {
        &self.d
    }

    pub fn is_connected(&self) -> bool {
        self.gens.generators().iter().all(|g| g.degree >= 1)
    }

    pub fn is_simply_connected(&self) -> bool {
        self.gens.generators().iter().all(|g| g.degree >= 2)
    }

    /// Every `d(g)` lies in `A⁺·A⁺`.
    pub fn is_minimal(&self) -> bool {
        self.minimal
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        self.gens.mul(a, b)
    }

    pub fn gen_named(&self, name: &str) -> Result<Element> {
        self.gens.gen_named(name)
    }

    pub fn parse(&self, text: &str) -> Result<Element> {
        crate::dsl::eval_str(text, &self.gens)
    }

    pub fn format(&self, e: &Element) -> String {
        self.gens.format(e)
    }

    pub fn differential(&self, e: &Element) -> Element {
        let ids: Vec<Element> = (0..self.gens.len()).map(|i| self.gens.gen(i)).collect();
        leibniz(&self.gens, e, 1, &self.gens, &ids, &self.d, None)
    }

    pub fn basis(&self, n: i32) -> Vec<Monomial> {
        self.gens.basis(n)
    }

    /// Matrix of `d : Aⁿ → Aⁿ⁺¹` in the canonical bases.
    pub fn d_matrix(&self, n: i32) -> Matrix {
        let src = self.basis(n);
        let tgt = self.basis(n + 1);
        let cols = src
            .iter()
            .map(|m| {
                let e = Element::from_term(m.clone(), Scalar::from_integer(1.into()));
                self.gens.coordinates(&self.differential(&e), &tgt)
            })
            .collect();
        Matrix::from_columns(tgt.len(), cols)
    }

    /// Slices `lo..=hi` of the algebra as a cochain complex.
    pub fn complex_window(&self, lo: i32, hi: i32) -> Result<ComplexWindow> {
        let labels = (lo..=hi).map(|n| self.basis(n).iter().map(|m| self.gens.format_monomial(m)).collect()).collect();
        let diffs = (lo..hi).map(|n| self.d_matrix(n)).collect();
        ComplexWindow::new(lo, labels, diffs)
    }

    /// `H*(A)` on the window, with cocycle representatives.
    pub fn cohomology(&self, w: DegreeWindow) -> Result<AlgebraCohomology> {
        let p = w.padded();
        let cw = self.complex_window(p.lo, p.hi)?;
        let h = cw.cohomology()?;
        let mut dims = BTreeMap::new();
        let mut reps = BTreeMap::new();
        for n in w.degrees() {
            let basis = self.basis(n);
            dims.insert(n, h[&n].dim);
            reps.insert(n, h[&n].representatives.iter().map(|v| self.gens.from_coordinates(v, &basis)).collect());
        }
        Ok(AlgebraCohomology { window: w, dims, representatives: reps })
    }

    /// Adjoins generators `V` with `d v = f(v)`; each `f(v)` must be a cocycle of `A`.
    pub fn hirsch_extension(&self, new: &[Generator], f: &[Element]) -> Result<FreeCdga> {
        if new.len() != f.len() {
            return Err(Error::DimensionMismatch("one value per new generator".into()));
        }
        for (g, v) in new.iter().zip(f) {
            if !self.gens.owns_element(v) {
                return Err(Error::MismatchedGenerators);
            }
            match self.gens.degrees(v).as_slice() {
                [] => {}
                [k] if *k == g.degree + 1 => {}
                [k] => {
                    return Err(Error::DifferentialDegree {
                        generator: g.name.clone(),
                        expected: g.degree + 1,
                        got: *k,
                    })
                }
                _ => return Err(Error::Inhomogeneous { generator: g.name.clone(), expected: g.degree + 1 }),
            }
            if !self.differential(v).is_zero() {
                return Err(Error::NotACocycle { generator: g.name.clone() });
            }
        }
        let mut all = self.gens.generators().to_vec();
        all.extend(new.iter().cloned());
        let set = GeneratorSet::new(all)?;
        let mut d = BTreeMap::new();
        for (i, v) in self.d.iter().enumerate() {
            d.insert(self.gens.generator(i).name.clone(), self.gens.embed(v, &set)?);
        }
        for (g, v) in new.iter().zip(f) {
            d.insert(g.name.clone(), self.gens.embed(v, &set)?);
        }
        FreeCdga::new(self.name.clone(), set, d)
    }

    /// The sub-CDGA on generators of degree `≤ n`, with its inclusion.
    pub fn postnikov_truncation(&self, n: i32) -> Result<(FreeCdga, DgaMorphism)> {
        if !self.is_minimal() {
            return Err(Error::NotMinimal(format!("{} has a linear differential term", self.name)));
        }
        let kept: Vec<Generator> = self.gens.generators().iter().filter(|g| g.degree <= n).cloned().collect();
        let set = GeneratorSet::new(kept.clone())?;
        let mut d = BTreeMap::new();
        for g in &kept {
            let i = self.gens.index_of(&g.name)?;
            d.insert(g.name.clone(), self.restrict(&self.d[i], &set)?);
        }
        let sub = FreeCdga::new(format!("{}_{}", self.name, n), set, d)?;
        let incl = DgaMorphism::inclusion(&sub, self)?;
        Ok((sub, incl))
    }

    /// Rewrites an element that only involves generators of `sub` over `sub`.
    fn restrict(&self, e: &Element, sub: &GeneratorSet) -> Result<Element> {
        let mut out = Element::zero();
        for (m, c) in e.terms() {
            let mut exps = vec![0u32; sub.len()];
            for (i, &k) in m.exponents().iter().enumerate() {
                if k > 0 {
                    exps[sub.index_of(&self.gens.generator(i).name)?] = k;
                }
            }
            out.add_term(Monomial::from_exponents(exps), c.clone());
        }
        Ok(out)
    }

    /// Tensor product of two algebras; generator names must be disjoint.
    pub fn tensor(&self, other: &FreeCdga, name: impl Into<String>) -> Result<FreeCdga> {
        let mut all = self.gens.generators().to_vec();
        all.extend(other.gens.generators().iter().cloned());
        let set = GeneratorSet::new(all)?;
        let mut d = BTreeMap::new();
        for a in [self, other] {
            for (i, v) in a.d.iter().enumerate() {
                d.insert(a.gens.generator(i).name.clone(), a.gens.embed(v, &set)?);
            }
        }
        FreeCdga::new(name, set, d)
    }

    /// Copy with every generator renamed by `f`.
    pub fn rename_generators(&self, name: impl Into<String>, f: impl Fn(&str) -> String) -> Result<FreeCdga> {
        let renamed: Vec<Generator> =
            self.gens.generators().iter().map(|g| Generator::new(f(&g.name), g.degree)).collect();
        let set = GeneratorSet::new(renamed.clone())?;
        // Renaming may reorder generators of equal degree, so go through words.
        let map = |e: &Element| -> Result<Element> {
            let mut out = Element::zero();
            for (m, c) in e.terms() {
                let word: Vec<usize> = m
                    .word()
                    .into_iter()
                    .map(|i| set.index_of(&f(&self.gens.generator(i).name)))
                    .collect::<Result<_>>()?;
                if let Some((mm, neg)) = set.normalize_indices(&word) {
                    out.add_term(mm, if neg { -c.clone() } else { c.clone() });
                }
            }
            Ok(out)
        };
        let mut d = BTreeMap::new();
        for (i, v) in self.d.iter().enumerate() {
            d.insert(f(&self.gens.generator(i).name), map(v)?);
        }
        FreeCdga::new(name, set, d)
    }

    /// Total dimension of `A` in degree `n`.
    pub fn dim(&self, n: i32) -> usize {
        self.basis(n).len()
    }
}

/// Cohomology of an algebra on a window.
#[derive(Debug, Clone)]
pub struct AlgebraCohomology {
    pub window: DegreeWindow,
    pub dims: BTreeMap<i32, usize>,
    pub representatives: BTreeMap<i32, Vec<Element>>,
}

impl AlgebraCohomology {
    pub fn dim(&self, n: i32) -> usize {
        self.dims.get(&n).copied().unwrap_or(0)
    }
}

/// `A` is minimal; report which generator has a linear term otherwise.
pub fn check_minimal(a: &FreeCdga) -> bool {
    a.is_minimal()
}

pub fn require_minimal(a: &FreeCdga) -> Result<()> {
    for (i, v) in a.d.iter().enumerate() {
        if v.terms().keys().any(|m| m.length() < 2) {
            return Err(Error::NotMinimal(format!(
                "d {} = {} has a linear term",
                a.gens.generator(i).name,
                a.format(v)
            )));
        }
    }
    Ok(())
}

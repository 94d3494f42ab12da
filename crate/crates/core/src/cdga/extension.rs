use super::{DgaMorphism, FreeCdga, ModuleView};
use crate::error::{Error, Result};
use crate::graded::{ComplexWindow, Element, Matrix, Monomial, Scalar, SparseVec};

fn sign(odd: bool) -> Scalar {
    Scalar::from_integer(if odd { (-1).into() } else { 1.into() })
}

/// `A ⋉ M[n]` for a module `M = B` through `φ : A → B`. An `M`-element of `B`-degree `k`
/// has degree `k + n` in the carrier.
#[derive(Debug, Clone)]
pub struct SquareZeroExtension {
    module: ModuleView,
    shift: i32,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SquareZeroElement {
    pub a: Element,
    pub m: Element,
}

impl SquareZeroExtension {
    pub fn new(module: ModuleView, shift: i32) -> Self {
        SquareZeroExtension { module, shift }
    }

    /// `A ⋉ A[n]`.
    pub fn shifted_self(a: &FreeCdga, n: i32) -> Self {
        Self::new(ModuleView::over_itself(a), n)
    }

    pub fn base(&self) -> &FreeCdga {
        self.module.source()
    }

    pub fn module(&self) -> &ModuleView {
        &self.module
    }

    pub fn shift(&self) -> i32 {
        self.shift
    }

    /// Carrier degree of a monomial of `B` viewed in `M[n]`.
    pub fn module_degree(&self, m: &Monomial) -> i32 {
        self.module.target().gens().monomial_degree(m) + self.shift
    }

    /// Carrier basis in degree `k`: `A_k` followed by `M[n]_k`.
    pub fn dim(&self, k: i32) -> usize {
        self.base().dim(k) + self.module.dim(k - self.shift)
    }

    fn act_left(&self, a: &Element, m: &Element) -> Element {
        let ga = self.base().gens();
        let mut out = Element::zero();
        for (ma, ca) in a.terms() {
            let single = Element::from_term(ma.clone(), ca.clone());
            let odd = (ga.monomial_degree(ma) * self.shift) % 2 != 0;
            out.add_scaled(&self.module.mul(&self.module.image(&single), m), &sign(odd));
        }
        out
    }

    fn act_right(&self, m: &Element, a: &Element) -> Element {
        self.module.mul(m, &self.module.image(a))
    }

    /// `(a₁,m₁)(a₂,m₂) = (a₁a₂, a₁·m₂ + m₁·a₂)`.
    pub fn mul(&self, x: &SquareZeroElement, y: &SquareZeroElement) -> SquareZeroElement {
        let a = self.base().mul(&x.a, &y.a);
        let m = self.act_left(&x.a, &y.m).plus(&self.act_right(&x.m, &y.a));
        SquareZeroElement { a, m }
    }

    pub fn d(&self, x: &SquareZeroElement) -> SquareZeroElement {
        let dm = self.module.d(&x.m);
        SquareZeroElement { a: self.base().differential(&x.a), m: if self.shift % 2 != 0 { dm.neg() } else { dm } }
    }

    /// Projection `A ⋉ M → A`.
    pub fn project(&self, x: &SquareZeroElement) -> Element {
        x.a.clone()
    }

    pub fn from_base(&self, a: Element) -> SquareZeroElement {
        SquareZeroElement { a, m: Element::zero() }
    }

    pub fn from_module(&self, m: Element) -> SquareZeroElement {
        SquareZeroElement { a: Element::zero(), m }
    }

    /// Dimension of the space of dga maps `C → A⋉M[n]` lying over `ψ : C → A`, computed in
    /// the carrier: unknowns are `M[n]`-components on generators, constraints are
    /// `d F(g) = F(d g)` with `F` extended multiplicatively.
    pub fn maps_over(&self, psi: &DgaMorphism) -> Result<usize> {
        if psi.target() != self.base() {
            return Err(Error::MismatchedGenerators);
        }
        let c = psi.source();
        let gc = c.gens();
        let gb = self.module.target().gens();
        let mut unknowns: Vec<(usize, Monomial)> = Vec::new();
        for i in 0..gc.len() {
            for m in self.module.basis(gc.degree(i) - self.shift) {
                unknowns.push((i, m));
            }
        }
        let mut rows: Vec<(usize, Monomial)> = Vec::new();
        for i in 0..gc.len() {
            for m in self.module.basis(gc.degree(i) + 1 - self.shift) {
                rows.push((i, m));
            }
        }
        let row_index = |i: usize, m: &Monomial| rows.iter().position(|(j, n)| *j == i && n == m);
        let mut cols = Vec::new();
        for (ui, um) in &unknowns {
            let images: Vec<SquareZeroElement> = (0..gc.len())
                .map(|j| SquareZeroElement {
                    a: psi.images()[j].clone(),
                    m: if j == *ui {
                        Element::from_term(um.clone(), Scalar::from_integer(1.into()))
                    } else {
                        Element::zero()
                    },
                })
                .collect();
            let mut col = SparseVec::new();
            for i in 0..gc.len() {
                let lhs = self.d(&images[i]);
                let rhs = self.apply_multiplicative(&images, c.d_gen(i));
                let diff = lhs.m.minus(&rhs.m);
                if lhs.a != rhs.a {
                    return Err(Error::NotAMorphism { generator: gc.generator(i).name.clone() });
                }
                for (m, x) in diff.terms() {
                    let r = row_index(i, m)
                        .ok_or_else(|| Error::DimensionMismatch(format!("stray term {}", gb.format_monomial(m))))?;
                    col.insert(r, x.clone());
                }
            }
            cols.push(col);
        }
        let mat = Matrix::from_columns(rows.len(), cols);
        Ok(unknowns.len() - mat.rank())
    }

    fn apply_multiplicative(&self, images: &[SquareZeroElement], e: &Element) -> SquareZeroElement {
        let mut out = SquareZeroElement::default();
        for (mono, coef) in e.terms() {
            let mut acc = self.from_base(self.base().gens().one());
            for g in mono.word() {
                acc = self.mul(&acc, &images[g]);
            }
            out.a.add_scaled(&acc.a, coef);
            out.m.add_scaled(&acc.m, coef);
        }
        out
    }
}

/// Free `A`-module `Ω_A` on symbols `δg`; an element is `Σ a_g δg`.
#[derive(Debug, Clone)]
pub struct KahlerModule {
    algebra: FreeCdga,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KahlerElement {
    pub coeffs: Vec<Element>,
}

impl KahlerElement {
    pub fn zero(n: usize) -> Self {
        KahlerElement { coeffs: vec![Element::zero(); n] }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add_scaled(&mut self, other: &KahlerElement, c: &Scalar) {
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            a.add_scaled(b, c);
        }
    }
}

impl KahlerModule {
    pub fn new(a: &FreeCdga) -> Self {
        KahlerModule { algebra: a.clone() }
    }

    pub fn algebra(&self) -> &FreeCdga {
        &self.algebra
    }

    /// Universal derivation `δ(u g v) = (−1)^{|g||v|} u v δg` summed over factors.
    pub fn universal(&self, e: &Element) -> KahlerElement {
        let ga = self.algebra.gens();
        let mut out = KahlerElement::zero(ga.len());
        for (m, c) in e.terms() {
            let word = m.word();
            for p in 0..word.len() {
                let g = word[p];
                let rest: Vec<usize> = word[..p].iter().chain(&word[p + 1..]).copied().collect();
                let suffix_deg: i32 = word[p + 1..].iter().map(|&h| ga.degree(h)).sum();
                let Some((mm, neg)) = ga.normalize_indices(&rest) else { continue };
                let odd = neg ^ ((ga.degree(g) * suffix_deg) % 2 != 0);
                out.coeffs[g].add_term(mm, if odd { -c.clone() } else { c.clone() });
            }
        }
        out
    }

    /// `a · x` for `a ∈ A`.
    pub fn scale(&self, a: &Element, x: &KahlerElement) -> KahlerElement {
        KahlerElement { coeffs: x.coeffs.iter().map(|c| self.algebra.mul(a, c)).collect() }
    }

    /// `d(a δg) = da δg + (−1)^{|a|} a δ(dg)`.
    pub fn d(&self, x: &KahlerElement) -> KahlerElement {
        let ga = self.algebra.gens();
        let mut out = KahlerElement::zero(ga.len());
        for (i, a) in x.coeffs.iter().enumerate() {
            out.coeffs[i].add_scaled(&self.algebra.differential(a), &Scalar::from_integer(1.into()));
            let ddg = self.universal(self.algebra.d_gen(i));
            for (m, c) in a.terms() {
                let single = Element::from_term(m.clone(), c.clone());
                let odd = ga.monomial_degree(m) % 2 != 0;
                out.add_scaled(&self.scale(&single, &ddg), &sign(odd));
            }
        }
        out
    }

    /// Basis of degree `n`: pairs (generator index, coefficient monomial).
    pub fn basis(&self, n: i32) -> Vec<(usize, Monomial)> {
        let ga = self.algebra.gens();
        let mut out = Vec::new();
        for i in 0..ga.len() {
            for m in ga.basis(n - ga.degree(i)) {
                out.push((i, m));
            }
        }
        out
    }

    pub fn coordinates(&self, x: &KahlerElement, basis: &[(usize, Monomial)]) -> SparseVec {
        let mut v = SparseVec::new();
        for (k, (i, m)) in basis.iter().enumerate() {
            let c = x.coeffs[*i].coefficient(m);
            if c != Scalar::from_integer(0.into()) {
                v.insert(k, c);
            }
        }
        v
    }

    pub fn basis_element(&self, i: usize, m: &Monomial) -> KahlerElement {
        let mut x = KahlerElement::zero(self.algebra.gens().len());
        x.coeffs[i] = Element::from_term(m.clone(), Scalar::from_integer(1.into()));
        x
    }

    pub fn d_matrix(&self, n: i32) -> Matrix {
        let src = self.basis(n);
        let tgt = self.basis(n + 1);
        let cols = src.iter().map(|(i, m)| self.coordinates(&self.d(&self.basis_element(*i, m)), &tgt)).collect();
        Matrix::from_columns(tgt.len(), cols)
    }

    pub fn label(&self, i: usize, m: &Monomial) -> String {
        let ga = self.algebra.gens();
        let g = &ga.generator(i).name;
        if m.is_unit() {
            format!("δ{g}")
        } else {
            format!("{}·δ{g}", ga.format_monomial(m))
        }
    }

    pub fn complex_window(&self, lo: i32, hi: i32) -> Result<ComplexWindow> {
        let labels = (lo..=hi).map(|n| self.basis(n).iter().map(|(i, m)| self.label(*i, m)).collect()).collect();
        ComplexWindow::new(lo, labels, (lo..hi).map(|n| self.d_matrix(n)).collect())
    }

    /// Degree-`k` slice of `Hom_A(Ω_A, M)`: a module map is fixed by the images of `δg`.
    pub fn hom_dim(&self, module: &ModuleView, k: i32) -> usize {
        let ga = self.algebra.gens();
        (0..ga.len()).map(|i| module.dim(ga.degree(i) + k)).sum()
    }

    /// Evaluates the module map `δg ↦ h[g]` of degree `k` on `x`:
    /// `h(a δg) = (−1)^{k|a|} φ(a) h(δg)`.
    pub fn evaluate(&self, module: &ModuleView, h: &[Element], k: i32, x: &KahlerElement) -> Element {
        let ga = self.algebra.gens();
        let mut out = Element::zero();
        for (i, a) in x.coeffs.iter().enumerate() {
            for (m, c) in a.terms() {
                let single = Element::from_term(m.clone(), c.clone());
                let odd = (k * ga.monomial_degree(m)) % 2 != 0;
                out.add_scaled(&module.mul(&module.image(&single), &h[i]), &sign(odd));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s2() -> FreeCdga {
        FreeCdga::build("S2", &[("x", 2), ("y", 3)], &[("y", "x^2")]).unwrap()
    }

    #[test]
    fn kahler_differential_of_s2() {
        let a = s2();
        let om = KahlerModule::new(&a);
        let dy = om.universal(&a.gen_named("y").unwrap());
        let d = om.d(&dy);
        assert_eq!(d.coeffs[0], a.parse("2*x").unwrap());
        assert!(d.coeffs[1].is_zero());
        let k = FreeCdga::build("K", &[("x", 2)], &[]).unwrap();
        let ok = KahlerModule::new(&k);
        assert!(ok.d(&ok.universal(&k.gen_named("x").unwrap())).is_zero());
    }

    #[test]
    fn kahler_d_squares_to_zero() {
        let a = FreeCdga::build("CP2xS3", &[("x", 2), ("y", 5), ("z", 3)], &[("y", "x^3")]).unwrap();
        let om = KahlerModule::new(&a);
        let w = om.complex_window(0, 12).unwrap();
        w.check_square_zero().unwrap();
    }

    #[test]
    fn dual_numbers_square_to_zero() {
        let q = FreeCdga::trivial();
        let ext = SquareZeroExtension::new(ModuleView::trivial(&q), 3);
        let eps = ext.from_module(q.gens().one());
        let sq = ext.mul(&eps, &eps);
        assert!(sq.a.is_zero() && sq.m.is_zero());
        assert_eq!(ext.dim(3), 1);
        assert_eq!(ext.dim(-3), 0);
    }

    #[test]
    fn product_formula() {
        let a = s2();
        let ext = SquareZeroExtension::shifted_self(&a, 0);
        let x = a.parse("x").unwrap();
        let y = a.parse("y").unwrap();
        let p = ext
            .mul(&SquareZeroElement { a: x.clone(), m: y.clone() }, &SquareZeroElement { a: x.clone(), m: x.clone() });
        assert_eq!(p.a, a.parse("x^2").unwrap());
        assert_eq!(p.m, a.parse("x^2 + x*y").unwrap());
    }
}

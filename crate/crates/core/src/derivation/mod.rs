//! The derivation complex `Der*(A, M)` of a minimal algebra and its cohomology.

mod lie;

use std::collections::BTreeMap;

use crate::cdga::{leibniz, require_minimal, FreeCdga, ModuleView};
use crate::error::{Error, Result};
use crate::graded::{ComplexWindow, DegreeWindow, Element, Matrix, Monomial, Scalar, Span, SparseVec};

pub use lie::{gerstenhaber_bracket, h0_lie_algebra, nilpotency_check, LiePresentation};

/// A degree-`d` φ-derivation `A → M`, stored by its values on generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    degree: i32,
    module: ModuleView,
    values: Vec<Element>,
}

impl Derivation {
    pub fn new(module: &ModuleView, degree: i32, values: Vec<Element>) -> Result<Self> {
        let ga = module.source().gens();
        if values.len() != ga.len() {
            return Err(Error::DimensionMismatch("one value per generator".into()));
        }
        let gb = module.target().gens();
        for (i, v) in values.iter().enumerate() {
            if !gb.owns_element(v) {
                return Err(Error::MismatchedGenerators);
            }
            let expected = ga.degree(i) + degree;
            match gb.degrees(v).as_slice() {
                [] => {}
                [k] if *k == expected => {}
                [k] => {
                    return Err(Error::DifferentialDegree {
                        generator: ga.generator(i).name.clone(),
                        expected,
                        got: *k,
                    })
                }
                _ => return Err(Error::Inhomogeneous { generator: ga.generator(i).name.clone(), expected }),
            }
        }
        let values = values.iter().map(|v| module.truncate(v)).collect();
        Ok(Derivation { degree, module: module.clone(), values })
    }

    /// From expression strings over the target, e.g. `&[("y", "x")]`.
    pub fn build(module: &ModuleView, degree: i32, values: &[(&str, &str)]) -> Result<Self> {
        let ga = module.source().gens();
        let mut vals = vec![Element::zero(); ga.len()];
        for &(g, text) in values {
            vals[ga.index_of(g)?] = module.target().parse(text)?;
        }
        Self::new(module, degree, vals)
    }

    pub fn zero(module: &ModuleView, degree: i32) -> Self {
        let n = module.source().gens().len();
        Derivation { degree, module: module.clone(), values: vec![Element::zero(); n] }
    }

    /// The derivation sending generator `i` to the monomial `m` and the rest to 0.
    pub fn elementary(module: &ModuleView, degree: i32, i: usize, m: &Monomial) -> Self {
        let mut d = Self::zero(module, degree);
        d.values[i] = Element::from_term(m.clone(), Scalar::from_integer(1.into()));
        d
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn module(&self) -> &ModuleView {
        &self.module
    }

    pub fn source(&self) -> &FreeCdga {
        self.module.source()
    }

    pub fn values(&self) -> &[Element] {
        &self.values
    }

    pub fn value(&self, name: &str) -> Result<&Element> {
        Ok(&self.values[self.source().gens().index_of(name)?])
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    fn phi_images(&self) -> Vec<Element> {
        self.module.phi().images().iter().map(|v| self.module.truncate(v)).collect()
    }

    /// Extension to all of `A` by the Leibniz rule.
    pub fn apply(&self, e: &Element) -> Element {
        leibniz(
            self.source().gens(),
            e,
            self.degree,
            self.module.target().gens(),
            &self.phi_images(),
            &self.values,
            self.module.top(),
        )
    }

    pub fn plus(&self, other: &Derivation) -> Derivation {
        self.combine(other, &Scalar::from_integer(1.into()))
    }

    /// `self + c·other`
    pub fn combine(&self, other: &Derivation, c: &Scalar) -> Derivation {
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| {
                let mut v = a.clone();
                v.add_scaled(b, c);
                v
            })
            .collect();
        Derivation { degree: self.degree, module: self.module.clone(), values }
    }

    pub fn scaled(&self, c: &Scalar) -> Derivation {
        Derivation {
            degree: self.degree,
            module: self.module.clone(),
            values: self.values.iter().map(|v| v.scaled(c)).collect(),
        }
    }

    /// `δθ = d_M ∘ θ − (−1)^{|θ|} θ ∘ d_A`
    pub fn differential(&self) -> Derivation {
        let a = self.source();
        let odd = self.degree % 2 != 0;
        let values = (0..a.gens().len())
            .map(|i| {
                let first = self.module.d(&self.values[i]);
                let second = self.apply(a.d_gen(i));
                if odd {
                    first.plus(&second)
                } else {
                    first.minus(&second)
                }
            })
            .collect();
        Derivation { degree: self.degree + 1, module: self.module.clone(), values }
    }

    /// `x↦x, y↦2*y`; generators sent to zero are omitted.
    pub fn format(&self) -> String {
        let ga = self.source().gens();
        let parts: Vec<String> = self
            .values
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, v)| format!("{}↦{}", ga.generator(i).name, self.module.format(v)))
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(", ")
        }
    }
}

/// Coordinates of derivations of one degree: pairs (generator, target monomial).
#[derive(Debug, Clone)]
pub struct DerBasis {
    pub degree: i32,
    pub entries: Vec<(usize, Monomial)>,
}

impl DerBasis {
    pub fn new(module: &ModuleView, degree: i32) -> Self {
        let ga = module.source().gens();
        let mut entries = Vec::new();
        for i in 0..ga.len() {
            for m in module.basis(ga.degree(i) + degree) {
                entries.push((i, m));
            }
        }
        DerBasis { degree, entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn coordinates(&self, theta: &Derivation) -> SparseVec {
        let mut v = SparseVec::new();
        for (k, (i, m)) in self.entries.iter().enumerate() {
            let c = theta.values[*i].coefficient(m);
            if c != Scalar::from_integer(0.into()) {
                v.insert(k, c);
            }
        }
        v
    }

    pub fn element(&self, module: &ModuleView, v: &SparseVec) -> Derivation {
        let mut d = Derivation::zero(module, self.degree);
        for (&k, c) in v {
            let (i, m) = &self.entries[k];
            d.values[*i].add_term(m.clone(), c.clone());
        }
        d
    }

    pub fn elements(&self, module: &ModuleView) -> Vec<Derivation> {
        self.entries.iter().map(|(i, m)| Derivation::elementary(module, self.degree, *i, m)).collect()
    }

    pub fn label(&self, module: &ModuleView, k: usize) -> String {
        let (i, m) = &self.entries[k];
        format!("{}↦{}", module.source().gens().generator(*i).name, module.target().gens().format_monomial(m))
    }
}

/// Basis of elementary derivations of degree `d`. Refuses a non-minimal source.
pub fn derivation_space(module: &ModuleView, d: i32) -> Result<Vec<Derivation>> {
    require_minimal(module.source())?;
    Ok(DerBasis::new(module, d).elements(module))
}

/// Matrix of `δ : Der^d → Der^{d+1}`.
pub fn der_matrix(module: &ModuleView, d: i32) -> Matrix {
    let src = DerBasis::new(module, d);
    let tgt = DerBasis::new(module, d + 1);
    let cols = src.elements(module).iter().map(|t| tgt.coordinates(&t.differential())).collect();
    Matrix::from_columns(tgt.len(), cols)
}

pub fn der_complex_window(module: &ModuleView, lo: i32, hi: i32) -> Result<ComplexWindow> {
    let labels = (lo..=hi)
        .map(|d| {
            let b = DerBasis::new(module, d);
            (0..b.len()).map(|k| b.label(module, k)).collect()
        })
        .collect();
    ComplexWindow::new(lo, labels, (lo..hi).map(|d| der_matrix(module, d)).collect())
}

/// `H*_AQ(A, M)` on a window, computed from the derivation complex.
#[derive(Debug, Clone)]
pub struct AqCohomology {
    pub window: DegreeWindow,
    pub dims: BTreeMap<i32, usize>,
    pub representatives: BTreeMap<i32, Vec<Derivation>>,
}

impl AqCohomology {
    pub fn dim(&self, n: i32) -> usize {
        self.dims.get(&n).copied().unwrap_or(0)
    }
}

/// Classes in degree `d` as reduced-echelon cocycles modulo coboundaries.
pub(crate) fn canonical_classes(module: &ModuleView, d: i32) -> (Vec<SparseVec>, Span) {
    let boundaries = der_matrix(module, d - 1).column_span();
    let mut classes = Span::new();
    for z in der_matrix(module, d).kernel() {
        classes.insert(&boundaries.remainder(&z));
    }
    (classes.reduced_basis(), boundaries)
}

pub fn aq_cohomology_der(module: &ModuleView, w: DegreeWindow) -> Result<AqCohomology> {
    require_minimal(module.source())?;
    let mut dims = BTreeMap::new();
    let mut reps = BTreeMap::new();
    for d in w.degrees() {
        let (classes, _) = canonical_classes(module, d);
        let basis = DerBasis::new(module, d);
        dims.insert(d, classes.len());
        reps.insert(d, classes.iter().map(|v| basis.element(module, v)).collect());
    }
    Ok(AqCohomology { window: w, dims, representatives: reps })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s2() -> FreeCdga {
        FreeCdga::build("S2", &[("x", 2), ("y", 3)], &[("y", "x^2")]).unwrap()
    }

    #[test]
    fn spaces_for_s2() {
        let a = s2();
        let q = ModuleView::trivial(&a);
        let b = derivation_space(&q, -2).unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].format(), "x↦1");
        assert!(derivation_space(&q, -1).unwrap().is_empty());
        let m = ModuleView::over_itself(&a);
        let b: Vec<String> = derivation_space(&m, 0).unwrap().iter().map(|t| t.format()).collect();
        assert_eq!(b, vec!["x↦x", "y↦y"]);
    }

    #[test]
    fn non_minimal_refused() {
        let a = FreeCdga::build("P", &[("u", 4), ("v", 3)], &[("v", "u")]).unwrap();
        assert!(matches!(derivation_space(&ModuleView::trivial(&a), 0), Err(Error::NotMinimal(_))));
    }

    #[test]
    fn s2_cohomology() {
        let a = s2();
        let h = aq_cohomology_der(&ModuleView::trivial(&a), DegreeWindow::new(-5, 0).unwrap()).unwrap();
        let dims: Vec<usize> = (-5..=0).map(|d| h.dim(d)).collect();
        assert_eq!(dims, vec![0, 0, 1, 1, 0, 0]);
        let h = aq_cohomology_der(&ModuleView::over_itself(&a), DegreeWindow::new(-1, 0).unwrap()).unwrap();
        assert_eq!(h.dim(0), 1);
        assert_eq!(h.dim(-1), 0);
        assert_eq!(h.representatives[&0][0].format(), "x↦x, y↦2*y");
        let s3 = FreeCdga::build("S3", &[("x", 3)], &[]).unwrap();
        let h = aq_cohomology_der(&ModuleView::trivial(&s3), DegreeWindow::new(-6, 0).unwrap()).unwrap();
        assert_eq!((-6..=0).map(|d| h.dim(d)).collect::<Vec<_>>(), vec![0, 0, 0, 1, 0, 0, 0]);
    }

    #[test]
    fn complex_squares_to_zero() {
        let a = FreeCdga::build("CP2", &[("x", 2), ("y", 5)], &[("y", "x^3")]).unwrap();
        der_complex_window(&ModuleView::over_itself(&a), -6, 4).unwrap().check_square_zero().unwrap();
    }
}

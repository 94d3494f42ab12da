use std::collections::BTreeMap;

use super::FreeCdga;
use crate::error::{Error, Result};
use crate::graded::{Element, Matrix, Monomial};

/// A dga map determined by its values on generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DgaMorphism {
    source: FreeCdga,
    target: FreeCdga,
    images: Vec<Element>,
}

impl DgaMorphism {
    /// Generators missing from `assignment` are sent to 0.
    pub fn new(source: &FreeCdga, target: &FreeCdga, assignment: BTreeMap<String, Element>) -> Result<Self> {
        let mut images = vec![Element::zero(); source.gens().len()];
        for (g, v) in assignment {
            let i = source.gens().index_of(&g)?;
            if !target.gens().owns_element(&v) {
                return Err(Error::MismatchedGenerators);
            }
            images[i] = v;
        }
        Self::from_images(source, target, images)
    }

    pub fn from_images(source: &FreeCdga, target: &FreeCdga, images: Vec<Element>) -> Result<Self> {
        if images.len() != source.gens().len() {
            return Err(Error::DimensionMismatch("one image per source generator".into()));
        }
        let f = DgaMorphism { source: source.clone(), target: target.clone(), images };
        for (i, v) in f.images.iter().enumerate() {
            let g = source.gens().generator(i);
            match target.gens().degrees(v).as_slice() {
                [] => {}
                [k] if *k == g.degree => {}
                [k] => {
                    return Err(Error::DifferentialDegree { generator: g.name.clone(), expected: g.degree, got: *k })
                }
                _ => return Err(Error::Inhomogeneous { generator: g.name.clone(), expected: g.degree }),
            }
        }
        f.check_commutes()?;
        Ok(f)
    }

    /// Map from expression strings over the target, e.g. `&[("x", "2*x")]`.
    pub fn build(source: &FreeCdga, target: &FreeCdga, assignment: &[(&str, &str)]) -> Result<Self> {
        let mut map = BTreeMap::new();
        for &(g, text) in assignment {
            map.insert(g.to_string(), target.parse(text)?);
        }
        Self::new(source, target, map)
    }

    pub fn identity(a: &FreeCdga) -> Self {
        let images = (0..a.gens().len()).map(|i| a.gens().gen(i)).collect();
        DgaMorphism { source: a.clone(), target: a.clone(), images }
    }

    /// The augmentation `A → ℚ`.
    pub fn augmentation(a: &FreeCdga) -> Self {
        DgaMorphism { source: a.clone(), target: FreeCdga::trivial(), images: vec![Element::zero(); a.gens().len()] }
    }

    /// `A → ℚ → B`.
    pub fn trivial(source: &FreeCdga, target: &FreeCdga) -> Self {
        DgaMorphism {
            source: source.clone(),
            target: target.clone(),
            images: vec![Element::zero(); source.gens().len()],
        }
    }

    /// Inclusion of a sub-CDGA whose generators are a subset (by name) of `big`'s.
    pub fn inclusion(sub: &FreeCdga, big: &FreeCdga) -> Result<Self> {
        let images = sub.gens().generators().iter().map(|g| big.gen_named(&g.name)).collect::<Result<Vec<_>>>()?;
        Self::from_images(sub, big, images)
    }

    pub fn source(&self) -> &FreeCdga {
        &self.source
    }

    pub fn target(&self) -> &FreeCdga {
        &self.target
    }

    pub fn images(&self) -> &[Element] {
        &self.images
    }

    pub fn check_commutes(&self) -> Result<()> {
        for i in 0..self.images.len() {
            let lhs = self.apply(self.source.d_gen(i));
            let rhs = self.target.differential(&self.images[i]);
            if lhs != rhs {
                return Err(Error::NotAMorphism { generator: self.source.gens().generator(i).name.clone() });
            }
        }
        Ok(())
    }

    pub fn apply_monomial(&self, m: &Monomial, top: Option<i32>) -> Element {
        let t = self.target.gens();
        let mut out = t.one();
        for g in m.word() {
            out = t.truncate(&t.mul(&out, &self.images[g]), top);
            if out.is_zero() {
                break;
            }
        }
        out
    }

    pub fn apply(&self, e: &Element) -> Element {
        self.apply_truncated(e, None)
    }

    pub fn apply_truncated(&self, e: &Element, top: Option<i32>) -> Element {
        let mut out = Element::zero();
        for (m, c) in e.terms() {
            out.add_scaled(&self.apply_monomial(m, top), c);
        }
        out
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &DgaMorphism) -> Result<DgaMorphism> {
        if first.target != self.source {
            return Err(Error::MismatchedGenerators);
        }
        let images = first.images.iter().map(|v| self.apply(v)).collect();
        Ok(DgaMorphism { source: first.source.clone(), target: self.target.clone(), images })
    }

    /// Matrix of the map on degree-`n` slices.
    pub fn matrix(&self, n: i32) -> Matrix {
        let src = self.source.basis(n);
        let tgt = self.target.basis(n);
        let cols = src.iter().map(|m| self.target.gens().coordinates(&self.apply_monomial(m, None), &tgt)).collect();
        Matrix::from_columns(tgt.len(), cols)
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.images.iter().enumerate().all(|(i, v)| *v == self.source.gens().gen(i))
    }

    pub fn describe(&self) -> String {
        let parts: Vec<String> = self
            .images
            .iter()
            .enumerate()
            .map(|(i, v)| format!("{}↦{}", self.source.gens().generator(i).name, self.target.format(v)))
            .collect();
        parts.join(", ")
    }
}

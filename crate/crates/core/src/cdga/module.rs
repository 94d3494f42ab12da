use super::{DgaMorphism, FreeCdga};
use crate::graded::{Element, Monomial};

/// `B` as a dg `A`-module through `φ : A → B`, optionally cut down to the quotient
/// module `B_{≤top}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleView {
    phi: DgaMorphism,
    top: Option<i32>,
}

impl ModuleView {
    pub fn new(phi: DgaMorphism) -> Self {
        let top = phi.target().gens().is_empty().then_some(0);
        ModuleView { phi, top }
    }

    /// `A` over itself.
    pub fn over_itself(a: &FreeCdga) -> Self {
        Self::new(DgaMorphism::identity(a))
    }

    /// The trivial module ℚ through the augmentation.
    pub fn trivial(a: &FreeCdga) -> Self {
        Self::new(DgaMorphism::augmentation(a))
    }

    pub fn truncated(mut self, top: i32) -> Self {
        self.top = Some(self.top.map_or(top, |t| t.min(top)));
        self
    }

    pub fn phi(&self) -> &DgaMorphism {
        &self.phi
    }

    pub fn source(&self) -> &FreeCdga {
        self.phi.source()
    }

    pub fn target(&self) -> &FreeCdga {
        self.phi.target()
    }

    /// Highest nonzero degree, when bounded.
    pub fn top(&self) -> Option<i32> {
        self.top
    }

    pub fn basis(&self, n: i32) -> Vec<Monomial> {
        match self.top {
            Some(t) if n > t => Vec::new(),
            _ => self.target().basis(n),
        }
    }

    pub fn dim(&self, n: i32) -> usize {
        self.basis(n).len()
    }

    pub fn truncate(&self, e: &Element) -> Element {
        self.target().gens().truncate(e, self.top)
    }

    pub fn d(&self, m: &Element) -> Element {
        self.truncate(&self.target().differential(m))
    }

    /// `φ(a)` in the module.
    pub fn image(&self, a: &Element) -> Element {
        self.phi.apply_truncated(a, self.top)
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        self.truncate(&self.target().mul(a, b))
    }

    pub fn format(&self, e: &Element) -> String {
        self.target().format(e)
    }

    pub fn label(&self) -> String {
        match (self.top, self.target().gens().is_empty()) {
            (_, true) => "Q".into(),
            (Some(t), false) => format!("{}<={}", self.target().name(), t),
            (None, false) => self.target().name().into(),
        }
    }
}

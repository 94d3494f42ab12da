//! Rational homotopy of spaces and mapping spaces from minimal models.

mod catalog;

use serde::Serialize;

pub use catalog::{catalog_entries, space_catalog, SpaceModel};

use crate::cdga::{require_minimal, DgaMorphism, FreeCdga, ModuleView};
use crate::derivation::{aq_cohomology_der, h0_lie_algebra, LiePresentation};
use crate::error::{Error, Result};
use crate::graded::{DegreeWindow, Element, Span, SparseVec};

/// `dim π_n(Y) ⊗ ℚ` by two counts.
#[derive(Debug, Clone, Serialize)]
pub struct PiReport {
    pub n: i32,
    pub dim: usize,
    pub aq_dim: usize,
    pub generator_count: usize,
}

pub fn pi_rational(y: &SpaceModel, n: i32) -> Result<PiReport> {
    if n < 1 {
        return Err(Error::InvalidWindow { lo: n, hi: n, reason: "n must be at least 1".into() });
    }
    require_minimal(&y.model)?;
    let module = ModuleView::trivial(&y.model);
    let aq_dim = aq_cohomology_der(&module, DegreeWindow::new(-n, -n)?)?.dim(-n);
    let generator_count = y.model.gens().generators().iter().filter(|g| g.degree == n).count();
    if aq_dim != generator_count {
        return Err(Error::RouteDisagreement { degree: -n, der: aq_dim, harrison: generator_count });
    }
    Ok(PiReport { n, dim: aq_dim, aq_dim, generator_count })
}

/// `dim π_n(F(X, Y), f) ⊗ ℚ` as `H^{-n}_AQ` of the `Y`-model with coefficients in the
/// `X`-model through `f`.
#[derive(Debug, Clone, Serialize)]
pub struct MappingReport {
    pub n: i32,
    pub dim: usize,
    pub representatives: Vec<String>,
    pub caveat: Option<String>,
}

pub fn mapping_space_homotopy(y: &SpaceModel, x: &SpaceModel, f: &DgaMorphism, n: i32) -> Result<MappingReport> {
    if n < 1 {
        return Err(Error::InvalidWindow { lo: n, hi: n, reason: "n must be at least 1".into() });
    }
    if f.source() != &y.model || f.target() != &x.model {
        return Err(Error::MismatchedGenerators);
    }
    require_minimal(&y.model)?;
    let module = ModuleView::new(f.clone());
    let h = aq_cohomology_der(&module, DegreeWindow::new(-n, -n)?)?;
    let caveat = (n == 1).then(|| "n = 1: set-level identification; no group structure is asserted".to_string());
    Ok(MappingReport {
        n,
        dim: h.dim(-n),
        representatives: h.representatives[&-n].iter().map(|d| d.format()).collect(),
        caveat,
    })
}

/// `Σ_k dim π_k(Y) · dim H^{k−n}(X)`.
pub fn null_component_formula(y: &SpaceModel, x: &SpaceModel, n: i32) -> Result<usize> {
    let mut total = 0;
    for g in y.model.gens().generators() {
        let k = g.degree - n;
        if k < 0 {
            continue;
        }
        total += x.model.cohomology(DegreeWindow::new(k, k)?)?.dim(k);
    }
    Ok(total)
}

/// The trivial basepoint map `A*(Y) → ℚ → A*(X)`.
pub fn trivial_map(y: &SpaceModel, x: &SpaceModel) -> DgaMorphism {
    DgaMorphism::trivial(&y.model, &x.model)
}

/// Top of the window on which `H^{>n}` is checked to vanish: the odd generator degrees
/// summed, plus the largest generator degree.
pub fn hypothesis_window(a: &FreeCdga, n: i32) -> Result<DegreeWindow> {
    let odd: i32 = a.gens().generators().iter().filter(|g| g.is_odd()).map(|g| g.degree).sum();
    let hi = odd + a.gens().max_degree();
    DegreeWindow::new(n + 1, hi.max(n + 1))
}

fn check_vanishing_above(a: &FreeCdga, n: i32) -> Result<DegreeWindow> {
    let w = hypothesis_window(a, n)?;
    let h = a.cohomology(w)?;
    if let Some(k) = w.degrees().find(|&k| h.dim(k) > 0) {
        return Err(Error::HypothesisViolated(format!("H^{k}({}) is nonzero, but n = {n}", a.name())));
    }
    Ok(w)
}

fn truncation_is_identity(a: &FreeCdga, n: i32) -> bool {
    a.gens().generators().iter().all(|g| g.degree <= n)
}

#[derive(Debug, Clone, Serialize)]
pub struct HautReport {
    pub cutoff: Option<i32>,
    pub hypothesis_window: Option<DegreeWindow>,
    #[serde(skip)]
    pub lie: LiePresentation,
}

/// `H⁰_AQ(A, A)` with its bracket, optionally after Postnikov truncation at `truncate`.
pub fn haut_lie_algebra(x: &SpaceModel, truncate: Option<i32>) -> Result<HautReport> {
    match truncate {
        Some(n) if !truncation_is_identity(&x.model, n) => {
            let w = check_vanishing_above(&x.model, n)?;
            let (a_n, _) = x.model.postnikov_truncation(n)?;
            Ok(HautReport { cutoff: Some(n), hypothesis_window: Some(w), lie: h0_lie_algebra(&a_n)? })
        }
        _ => Ok(HautReport { cutoff: None, hypothesis_window: None, lie: h0_lie_algebra(&x.model)? }),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TruncationReport {
    pub n: i32,
    pub full_dim: usize,
    pub truncated_dim: usize,
    pub restriction_rank: usize,
    pub trivial: bool,
    pub hypothesis_window: Option<DegreeWindow>,
}

impl TruncationReport {
    pub fn passes(&self) -> bool {
        self.full_dim == self.truncated_dim && self.restriction_rank == self.full_dim
    }
}

/// Compares `H⁰_AQ(A, B)` with `H⁰_AQ(A_n, B_n)` through restriction of derivations.
pub fn truncation_stability_check(f: &DgaMorphism, n: i32) -> Result<TruncationReport> {
    let (a, b) = (f.source(), f.target());
    require_minimal(a)?;
    require_minimal(b)?;
    let full = aq_cohomology_der(&ModuleView::new(f.clone()), DegreeWindow::new(0, 0)?)?;
    let full_dim = full.dim(0);
    if truncation_is_identity(a, n) && truncation_is_identity(b, n) {
        return Ok(TruncationReport {
            n,
            full_dim,
            truncated_dim: full_dim,
            restriction_rank: full_dim,
            trivial: true,
            hypothesis_window: None,
        });
    }
    let w = check_vanishing_above(a, n)?;
    let (a_n, _) = a.postnikov_truncation(n)?;
    let (b_n, _) = b.postnikov_truncation(n)?;
    let images = a_n
        .gens()
        .generators()
        .iter()
        .map(|g| {
            b.gens()
                .embed(&f.apply(&a.gen_named(&g.name)?), b_n.gens())
                .map_err(|_| Error::NotAMorphism { generator: g.name.clone() })
        })
        .collect::<Result<Vec<Element>>>()?;
    let f_n = DgaMorphism::from_images(&a_n, &b_n, images)?;
    let module_n = ModuleView::new(f_n);
    let truncated = aq_cohomology_der(&module_n, DegreeWindow::new(0, 0)?)?;
    let truncated_dim = truncated.dim(0);

    let basis_n = crate::derivation::DerBasis::new(&module_n, 0);
    let mut boundaries = Span::new();
    for c in crate::derivation::der_matrix(&module_n, -1).columns() {
        boundaries.insert(c);
    }
    let base = boundaries.rank();
    for theta in &full.representatives[&0] {
        let values = a_n
            .gens()
            .generators()
            .iter()
            .map(|g| b.gens().embed(theta.value(&g.name)?, b_n.gens()))
            .collect::<Result<Vec<Element>>>()?;
        let restricted = crate::derivation::Derivation::new(&module_n, 0, values)?;
        let v: SparseVec = basis_n.coordinates(&restricted);
        boundaries.insert(&v);
    }
    Ok(TruncationReport {
        n,
        full_dim,
        truncated_dim,
        restriction_rank: boundaries.rank() - base,
        trivial: false,
        hypothesis_window: Some(w),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cat(s: &str) -> SpaceModel {
        space_catalog(s).unwrap()
    }

    #[test]
    fn homotopy_of_spheres() {
        let s2 = cat("sphere(2)");
        let dims: Vec<usize> = (1..=5).map(|n| pi_rational(&s2, n).unwrap().dim).collect();
        assert_eq!(dims, [0, 1, 1, 0, 0]);
        let cp2 = cat("complex_projective(2)");
        let dims: Vec<usize> = (1..=6).map(|n| pi_rational(&cp2, n).unwrap().dim).collect();
        assert_eq!(dims, [0, 1, 0, 0, 1, 0]);
    }

    #[test]
    fn identity_component_of_self_maps_of_s2() {
        let s2 = cat("sphere(2)");
        let id = DgaMorphism::identity(&s2.model);
        let r1 = mapping_space_homotopy(&s2, &s2, &id, 1).unwrap();
        assert_eq!(r1.dim, 0);
        assert!(r1.caveat.is_some());
        assert_eq!(mapping_space_homotopy(&s2, &s2, &id, 2).unwrap().dim, 0);
        assert_eq!(mapping_space_homotopy(&s2, &s2, &id, 3).unwrap().dim, 1);
    }

    #[test]
    fn null_component_examples() {
        let (s2, s3, pt) = (cat("sphere(2)"), cat("sphere(3)"), cat("point"));
        assert_eq!(null_component_formula(&s3, &s2, 1).unwrap(), 1);
        assert_eq!(null_component_formula(&s3, &s2, 3).unwrap(), 1);
        let f = trivial_map(&s3, &s2);
        assert_eq!(mapping_space_homotopy(&s3, &s2, &f, 1).unwrap().dim, 1);
        let g = trivial_map(&s2, &pt);
        for n in 1..5 {
            assert_eq!(mapping_space_homotopy(&s2, &pt, &g, n).unwrap().dim, pi_rational(&s2, n).unwrap().dim);
        }
    }

    #[test]
    fn haut_of_s2() {
        let r = haut_lie_algebra(&cat("sphere(2)"), None).unwrap();
        assert_eq!(r.lie.dim(), 1);
        assert_eq!(r.lie.labels, ["x↦x, y↦2*y"]);
    }

    #[test]
    fn truncation_stability() {
        for (s, n) in [("sphere(2)", 2), ("sphere(2)", 4), ("complex_projective(2)", 4), ("complex_projective(2)", 5)] {
            let a = cat(s).model;
            let r = truncation_stability_check(&DgaMorphism::identity(&a), n).unwrap();
            assert!(r.passes(), "{s} {n}: {r:?}");
        }
        let k2 = cat("k(Q,2)").model;
        assert!(truncation_stability_check(&DgaMorphism::identity(&k2), 2).unwrap().trivial);
        let cp2 = cat("complex_projective(2)").model;
        let e = truncation_stability_check(&DgaMorphism::identity(&cp2), 3);
        assert!(matches!(e, Err(Error::HypothesisViolated(_))));
    }
}

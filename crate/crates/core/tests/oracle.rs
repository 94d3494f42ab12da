mod common;

use aqcdga::cdga::{DgaMorphism, ModuleView};
use aqcdga::derivation::{aq_cohomology_der, h0_lie_algebra};
use aqcdga::graded::DegreeWindow;
use aqcdga::mapping::{mapping_space_homotopy, space_catalog};
use common::*;
use num_traits::Zero;

fn window(lo: i32, hi: i32) -> DegreeWindow {
    DegreeWindow::new(lo, hi).unwrap()
}

#[test]
fn oracle_differentials_square_to_zero() {
    for a in [sphere(2), sphere(4), cp(2), cp(3), s2_times_s2()] {
        for n in 1..10 {
            for m in a.basis(n) {
                let p = Poly::from([(m, q(1))]);
                assert!(a.differential(&a.differential(&p)).is_empty());
            }
        }
    }
}

#[test]
fn oracle_sign_rule() {
    // x₃·y₃ = −y₃·x₃ and (x₃ y₃)·x₃ = 0.
    let a = Alg::free(&[3, 3, 2]);
    let xy = a.mul(&a.gen(0), &a.gen(1));
    let yx = a.mul(&a.gen(1), &a.gen(0));
    let sum: Vec<_> = xy.iter().map(|(m, c)| c + yx.get(m).cloned().unwrap_or_else(Q::zero)).collect();
    assert!(sum.iter().all(|c| c.is_zero()));
    assert!(a.mul(&xy, &a.gen(0)).is_empty());
    assert_eq!(a.mul(&a.gen(2), &a.gen(0)), a.mul(&a.gen(0), &a.gen(2)));
}

#[test]
fn sphere_homotopy_matches_oracle() {
    let pt = point();
    for n in 2..=7 {
        let o = sphere(n);
        let oracle = DerOracle::trivial(&o, &pt);
        let s = space_catalog(&format!("sphere({n})")).unwrap();
        let h = aq_cohomology_der(&ModuleView::trivial(&s.model), window(-(2 * n + 1), 0)).unwrap();
        for k in 0..=2 * n + 1 {
            assert_eq!(h.dim(-k), oracle.dim_h(-k), "sphere({n}) degree {}", -k);
        }
    }
}

#[test]
fn s2_times_s2_hand_check() {
    // Z⁰: θ(xᵢ) = aᵢxᵢ + bᵢxⱼ, θ(yᵢ) ∈ span(y₁, y₂); θ(xᵢ²) = dθ(yᵢ) kills the cross terms,
    // leaving θ(xᵢ) = aᵢxᵢ, θ(yᵢ) = 2aᵢyᵢ. Degree −1 derivations vanish on xᵢ, so B⁰ = 0.
    let a = s2_times_s2();
    let o = DerOracle::endo(&a);
    assert_eq!(o.basis(0).len(), 8);
    assert_eq!(kernel(&o.matrix_rows(0), 8).len(), 2);
    assert_eq!(o.basis(-1).len(), 4);
    assert_eq!(rank(o.matrix_rows(-1)), 0);
    assert_eq!(h0_lie(&a), (2, 0));
}

#[test]
fn haut_matches_oracle() {
    for (name, o) in [
        ("sphere(2)", sphere(2)),
        ("sphere(3)", sphere(3)),
        ("complex_projective(2)", cp(2)),
        ("product(sphere(2),sphere(2))", s2_times_s2()),
    ] {
        let lie = h0_lie_algebra(&space_catalog(name).unwrap().model).unwrap();
        let (dim, derived) = h0_lie(&o);
        assert_eq!(lie.dim(), dim, "{name}");
        assert_eq!(lie.is_abelian(), derived == 0, "{name}");
    }
}

#[test]
fn identity_component_of_s2_self_maps() {
    let o = sphere(2);
    let oracle = DerOracle::endo(&o);
    let s2 = space_catalog("sphere(2)").unwrap();
    let id = DgaMorphism::identity(&s2.model);
    for n in 1..=5 {
        let lib = mapping_space_homotopy(&s2, &s2, &id, n).unwrap().dim;
        assert_eq!(lib, oracle.dim_h(-n), "n = {n}");
    }
    assert_eq!(oracle.dim_h(-2), 0);
}

#[test]
fn truncated_coefficients_match_oracle() {
    let o = sphere(2);
    let oracle = DerOracle { top: Some(8), ..DerOracle::endo(&o) };
    let s2 = space_catalog("sphere(2)").unwrap().model;
    let module = ModuleView::over_itself(&s2).truncated(8);
    let h = aq_cohomology_der(&module, window(-8, 2)).unwrap();
    for k in -8..=2 {
        assert_eq!(h.dim(k), oracle.dim_h(k), "degree {k}");
    }
}

#[test]
fn heisenberg_nilpotent_model() {
    let o = Alg::new(&[1, 1, 1], vec![Poly::new(), Poly::new(), poly(3, &[(1, &[(0, 1), (1, 1)])])]);
    let model =
        aqcdga::dsl::load("algebra H { generator a : 1; generator b : 1; generator c : 1; d c = a*b; }").unwrap();
    let h = &model.algebras[0];
    let endo = aq_cohomology_der(&ModuleView::new(DgaMorphism::identity(h)), window(-2, 1)).unwrap();
    let triv = aq_cohomology_der(&ModuleView::trivial(h), window(-2, 1)).unwrap();
    let pt = point();
    let (oe, ot) = (DerOracle::endo(&o), DerOracle::trivial(&o, &pt));
    for k in -2..=1 {
        assert_eq!(endo.dim(k), oe.dim_h(k), "H over itself, degree {k}");
        assert_eq!(triv.dim(k), ot.dim_h(k), "H over Q, degree {k}");
    }
    assert_eq!((triv.dim(-1), endo.dim(-1), endo.dim(0)), (3, 1, 4));
    let lie = h0_lie_algebra(h).unwrap();
    assert_eq!(h0_lie(&o), (4, 3));
    assert_eq!((lie.dim(), lie.is_abelian()), (4, false));
    assert!(aqcdga::harrison::HarrisonComplex::new(&ModuleView::trivial(h), -2, 0, 4).is_err());
}

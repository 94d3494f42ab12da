use super::{canonical_classes, der_matrix, DerBasis, Derivation};
use crate::cdga::{require_minimal, FreeCdga, ModuleView};
use crate::error::{Error, Result};
use crate::graded::{Element, Scalar, Span, SparseVec};

fn is_endo(t: &Derivation) -> bool {
    let m = t.module();
    m.top().is_none() && m.phi().is_identity()
}

/// `[θ₁,θ₂] = θ₁∘θ₂ − (−1)^{|θ₁||θ₂|} θ₂∘θ₁` on `Der*(A, A)`.
pub fn gerstenhaber_bracket(t1: &Derivation, t2: &Derivation) -> Result<Derivation> {
    if !is_endo(t1) || !is_endo(t2) || t1.source() != t2.source() {
        return Err(Error::MismatchedGenerators);
    }
    let odd = (t1.degree() * t2.degree()) % 2 != 0;
    let values: Vec<Element> = t1
        .values()
        .iter()
        .zip(t2.values())
        .map(|(v1, v2)| {
            let a = t1.apply(v2);
            let b = t2.apply(v1);
            if odd {
                a.plus(&b)
            } else {
                a.minus(&b)
            }
        })
        .collect();
    Derivation::new(t1.module(), t1.degree() + t2.degree(), values)
}

/// Smallest `k ≤ bound` with `θᵏ = 0` on every generator.
pub fn nilpotency_check(t: &Derivation, bound: usize) -> Option<usize> {
    let a = t.source();
    let mut current: Vec<Element> = (0..a.gens().len()).map(|i| a.gens().gen(i)).collect();
    for k in 1..=bound {
        current = current.iter().map(|v| t.apply(v)).collect();
        if current.iter().all(|v| v.is_zero()) {
            return Some(k);
        }
    }
    None
}

/// Basis of `H⁰_AQ(A, A)` with the bracket table `[eᵢ, eⱼ] = Σₖ c_{ijk} eₖ`.
#[derive(Debug, Clone)]
pub struct LiePresentation {
    pub algebra: String,
    pub labels: Vec<String>,
    pub representatives: Vec<Derivation>,
    /// `table[i][j]` holds the coordinates of `[eᵢ, eⱼ]`.
    pub table: Vec<Vec<SparseVec>>,
}

impl LiePresentation {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    /// Nonzero structure constants `(i, j, k, c)` with `i < j`.
    pub fn constants(&self) -> Vec<(usize, usize, usize, Scalar)> {
        let mut out = Vec::new();
        for i in 0..self.dim() {
            for j in i + 1..self.dim() {
                for (&k, c) in &self.table[i][j] {
                    out.push((i, j, k, c.clone()));
                }
            }
        }
        out
    }

    pub fn is_abelian(&self) -> bool {
        self.table.iter().all(|row| row.iter().all(|v| v.is_empty()))
    }

    pub fn check_antisymmetry(&self) -> bool {
        (0..self.dim()).all(|i| {
            (0..self.dim()).all(|j| {
                let mut s = self.table[i][j].clone();
                for (&k, c) in &self.table[j][i] {
                    crate::graded::linalg::add_entry(&mut s, k, c);
                }
                s.is_empty()
            })
        })
    }

    fn bracket_vec(&self, u: &SparseVec, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (&i, a) in u {
            for (&j, b) in v {
                crate::graded::linalg::axpy(&mut out, &(a * b), &self.table[i][j]);
            }
        }
        out
    }

    pub fn check_jacobi(&self) -> bool {
        let e = |i: usize| crate::graded::linalg::unit_vec(i);
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let mut s = self.bracket_vec(&self.bracket_vec(&e(i), &e(j)), &e(k));
                    let one = Scalar::from_integer(1.into());
                    crate::graded::linalg::axpy(
                        &mut s,
                        &one,
                        &self.bracket_vec(&self.bracket_vec(&e(j), &e(k)), &e(i)),
                    );
                    crate::graded::linalg::axpy(
                        &mut s,
                        &one,
                        &self.bracket_vec(&self.bracket_vec(&e(k), &e(i)), &e(j)),
                    );
                    if !s.is_empty() {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Coordinates of a degree-0 cocycle's class in the reduced class basis.
fn class_coordinates(classes: &[SparseVec], boundaries: &Span, z: &SparseVec) -> Result<SparseVec> {
    let r = boundaries.remainder(z);
    let mut coords = SparseVec::new();
    let mut rebuilt = SparseVec::new();
    for (k, c) in classes.iter().enumerate() {
        let (&pivot, _) = c.iter().next().expect("class rows are nonzero");
        if let Some(x) = r.get(&pivot) {
            coords.insert(k, x.clone());
            crate::graded::linalg::axpy(&mut rebuilt, x, c);
        }
    }
    if rebuilt != r {
        return Err(Error::HypothesisViolated("bracket left the cocycles".into()));
    }
    Ok(coords)
}

fn bracket_table(
    basis: &DerBasis,
    reps: &[Derivation],
    classes: &[SparseVec],
    boundaries: &Span,
) -> Result<Vec<Vec<SparseVec>>> {
    let n = reps.len();
    let mut table = vec![vec![SparseVec::new(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let b = gerstenhaber_bracket(&reps[i], &reps[j])?;
            table[i][j] = class_coordinates(classes, boundaries, &basis.coordinates(&b))?;
        }
    }
    Ok(table)
}

/// `H⁰_AQ(A, A) = Z⁰/B⁰` with its bracket; checks independence of representatives by
/// recomputing on representatives shifted by coboundaries.
pub fn h0_lie_algebra(a: &FreeCdga) -> Result<LiePresentation> {
    require_minimal(a)?;
    let module = ModuleView::over_itself(a);
    let basis = DerBasis::new(&module, 0);
    let (classes, boundaries) = canonical_classes(&module, 0);
    let reps: Vec<Derivation> = classes.iter().map(|v| basis.element(&module, v)).collect();
    let table = bracket_table(&basis, &reps, &classes, &boundaries)?;

    let cobound = der_matrix(&module, -1);
    if cobound.columns().iter().any(|c| !c.is_empty()) {
        let shifted: Vec<Derivation> = reps
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let col = &cobound.columns()[i % cobound.ncols()];
                r.plus(&basis.element(&module, col).scaled(&Scalar::from_integer((i as i64 + 1).into())))
            })
            .collect();
        let again = bracket_table(&basis, &shifted, &classes, &boundaries)?;
        if again != table {
            return Err(Error::HypothesisViolated("bracket depends on representatives".into()));
        }
    }
    let labels = reps.iter().map(|r| r.format()).collect();
    Ok(LiePresentation { algebra: a.name().into(), labels, representatives: reps, table })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s2() -> FreeCdga {
        FreeCdga::build("S2", &[("x", 2), ("y", 3)], &[("y", "x^2")]).unwrap()
    }

    #[test]
    fn bracket_example() {
        let a = s2();
        let m = ModuleView::over_itself(&a);
        let e = Derivation::build(&m, 0, &[("x", "x"), ("y", "2*y")]).unwrap();
        let eta = Derivation::build(&m, -1, &[("y", "x")]).unwrap();
        let b = gerstenhaber_bracket(&e, &eta).unwrap();
        assert_eq!(b, eta.scaled(&Scalar::from_integer((-1).into())));
        assert!(gerstenhaber_bracket(&e, &e).unwrap().is_zero());
    }

    #[test]
    fn nilpotency() {
        let a = s2();
        let m = ModuleView::over_itself(&a);
        assert_eq!(nilpotency_check(&Derivation::zero(&m, 0), 5), Some(1));
        let eta = Derivation::build(&m, -1, &[("y", "x")]).unwrap();
        assert_eq!(nilpotency_check(&eta, 5), Some(2));
        let e = Derivation::build(&m, 0, &[("x", "x"), ("y", "2*y")]).unwrap();
        assert_eq!(nilpotency_check(&e, 20), None);
    }

    #[test]
    fn h0_of_spheres() {
        let l = h0_lie_algebra(&s2()).unwrap();
        assert_eq!(l.dim(), 1);
        assert!(l.is_abelian());
        assert_eq!(l.labels, vec!["x↦x, y↦2*y"]);
        let s3 = FreeCdga::build("S3", &[("x", 3)], &[]).unwrap();
        let l = h0_lie_algebra(&s3).unwrap();
        assert_eq!(l.dim(), 1);
        assert_eq!(l.labels, vec!["x↦x"]);
    }

    #[test]
    fn gl2_from_two_even_classes() {
        let a = FreeCdga::build("KK", &[("a", 2), ("b", 2)], &[]).unwrap();
        let l = h0_lie_algebra(&a).unwrap();
        assert_eq!(l.dim(), 4);
        assert!(!l.is_abelian());
        assert!(l.check_antisymmetry() && l.check_jacobi());
    }
}

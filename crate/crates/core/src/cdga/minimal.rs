use std::collections::BTreeMap;

use super::{DgaMorphism, FreeCdga};
use crate::error::{Error, Result};
use crate::graded::{DegreeWindow, Element, Generator, GeneratorSet, Matrix, Span};

/// Minimal model `q : M → A`, a cohomology isomorphism through degree `n` and injective in
/// degree `n + 1`. Requires `H¹(A) = 0`.
pub fn minimal_model(a: &FreeCdga, n: i32) -> Result<(FreeCdga, DgaMorphism)> {
    if a.is_minimal() && a.is_simply_connected() {
        return Ok((a.clone(), DgaMorphism::identity(a)));
    }
    let h1 = a.cohomology(DegreeWindow { lo: 1, hi: 1 })?;
    if h1.dim(1) != 0 {
        return Err(Error::NotSimplyConnected(format!("H^1({}) has dimension {}", a.name(), h1.dim(1))));
    }
    let ga = a.gens();
    let mut m = FreeCdga::new(format!("M({})", a.name()), GeneratorSet::empty(), BTreeMap::new())?;
    let mut q: BTreeMap<String, Element> = BTreeMap::new();

    for k in 2..=n {
        // Hit the cokernel of H^k(M) → H^k(A) with closed generators.
        let qmap = images_morphism(&m, a, &q)?;
        let basis_a = a.basis(k);
        let mut span = a.d_matrix(k - 1).column_span();
        for z in m.d_matrix(k).kernel() {
            let zm = m.gens().from_coordinates(&z, &m.basis(k));
            span.insert(&ga.coordinates(&qmap.apply(&zm), &basis_a));
        }
        let mut closed = Vec::new();
        for z in a.d_matrix(k).kernel() {
            if span.insert(&z) {
                let name = format!("v{}_{}", k, closed.len() + 1);
                q.insert(name.clone(), ga.from_coordinates(&z, &basis_a));
                closed.push(Generator::new(name, k));
            }
        }
        if !closed.is_empty() {
            let zeros = vec![Element::zero(); closed.len()];
            m = m.hirsch_extension(&closed, &zeros)?;
        }

        // Kill the kernel of H^{k+1}(M) → H^{k+1}(A).
        let qmap = images_morphism(&m, a, &q)?;
        let reps = m.cohomology(DegreeWindow { lo: k + 1, hi: k + 1 })?.representatives[&(k + 1)].clone();
        if reps.is_empty() {
            continue;
        }
        let basis_a1 = a.basis(k + 1);
        let mut cols: Vec<_> = reps.iter().map(|z| ga.coordinates(&qmap.apply(z), &basis_a1)).collect();
        let da = a.d_matrix(k);
        cols.extend(da.columns().iter().cloned());
        let big = Matrix::from_columns(basis_a1.len(), cols);
        let mut chosen = Span::new();
        let mut killers = Vec::new();
        let mut values = Vec::new();
        for v in big.kernel() {
            let c: crate::graded::SparseVec =
                v.iter().filter(|(&i, _)| i < reps.len()).map(|(&i, x)| (i, x.clone())).collect();
            if c.is_empty() || !chosen.insert(&c) {
                continue;
            }
            let mut z = Element::zero();
            for (&i, x) in &c {
                z.add_scaled(&reps[i], x);
            }
            let target = ga.coordinates(&qmap.apply(&z), &basis_a1);
            let pre = da
                .solve(&target)
                .ok_or_else(|| Error::HypothesisViolated("kernel class has no primitive in A".into()))?;
            let name = format!("w{}_{}", k, killers.len() + 1);
            q.insert(name.clone(), ga.from_coordinates(&pre, &basis_a));
            killers.push(Generator::new(name, k));
            values.push(z);
        }
        if !killers.is_empty() {
            m = m.hirsch_extension(&killers, &values)?;
        }
    }
    let q = images_morphism(&m, a, &q)?;
    q.check_commutes()?;
    Ok((m, q))
}

fn images_morphism(m: &FreeCdga, a: &FreeCdga, q: &BTreeMap<String, Element>) -> Result<DgaMorphism> {
    DgaMorphism::new(m, a, q.clone())
}

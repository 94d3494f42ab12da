use num_bigint::BigInt;

use super::{require_minimal, DgaMorphism, FreeCdga, ModuleView};
use crate::derivation::{der_matrix, gerstenhaber_bracket, DerBasis, Derivation};
use crate::error::{Error, Result};
use crate::graded::{Element, Scalar};

/// Polynomial in `t` with coefficients in `A`; `coeffs[j]` multiplies `tʲ`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PolyElement {
    pub coeffs: Vec<Element>,
}

impl PolyElement {
    pub fn constant(e: Element) -> Self {
        PolyElement { coeffs: vec![e] }.trimmed()
    }

    fn trimmed(mut self) -> Self {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn at(&self, j: usize) -> Element {
        self.coeffs.get(j).cloned().unwrap_or_default()
    }

    fn add_scaled(&mut self, other: &PolyElement, c: &Scalar) {
        if self.coeffs.len() < other.coeffs.len() {
            self.coeffs.resize(other.coeffs.len(), Element::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            a.add_scaled(b, c);
        }
    }

    fn mul(&self, a: &FreeCdga, other: &PolyElement) -> PolyElement {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return PolyElement::default();
        }
        let mut out = vec![Element::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            for (j, y) in other.coeffs.iter().enumerate() {
                out[i + j].add_scaled(&a.mul(x, y), &one());
            }
        }
        PolyElement { coeffs: out }.trimmed()
    }

    fn map(&self, f: impl Fn(&Element) -> Element) -> PolyElement {
        PolyElement { coeffs: self.coeffs.iter().map(f).collect() }.trimmed()
    }

    /// `∂/∂t`
    pub fn derivative(&self) -> PolyElement {
        PolyElement {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, c)| c.scaled(&Scalar::from_integer(BigInt::from(j))))
                .collect(),
        }
        .trimmed()
    }

    pub fn eval_one(&self) -> Element {
        let mut out = Element::zero();
        for c in &self.coeffs {
            out.add_scaled(c, &one());
        }
        out
    }

    pub fn eval_zero(&self) -> Element {
        self.at(0)
    }
}

fn one() -> Scalar {
    Scalar::from_integer(1.into())
}

fn sign(odd: bool) -> Scalar {
    Scalar::from_integer(if odd { (-1).into() } else { 1.into() })
}

/// A map `A → A[t,dt]`, `a ↦ F(a) + G(a)dt`, given by `F` and `G` on generators.
#[derive(Debug, Clone)]
pub struct PolynomialHomotopy {
    algebra: FreeCdga,
    f: Vec<PolyElement>,
    g: Vec<PolyElement>,
    operators: Option<(Derivation, Derivation)>,
}

impl PolynomialHomotopy {
    pub fn new(algebra: &FreeCdga, f: Vec<PolyElement>, g: Vec<PolyElement>) -> Result<Self> {
        let n = algebra.gens().len();
        if f.len() != n || g.len() != n {
            return Err(Error::DimensionMismatch("F and G need one value per generator".into()));
        }
        Ok(PolynomialHomotopy { algebra: algebra.clone(), f, g, operators: None })
    }

    /// `F(t) = id`, `G = 0`.
    pub fn constant(algebra: &FreeCdga) -> Self {
        let n = algebra.gens().len();
        PolynomialHomotopy {
            algebra: algebra.clone(),
            f: (0..n).map(|i| PolyElement::constant(algebra.gens().gen(i))).collect(),
            g: vec![PolyElement::default(); n],
            operators: None,
        }
    }

    pub fn algebra(&self) -> &FreeCdga {
        &self.algebra
    }

    pub fn f(&self) -> &[PolyElement] {
        &self.f
    }

    pub fn g(&self) -> &[PolyElement] {
        &self.g
    }

    /// `e₁ ∘ F`, the endpoint at `t = 1`.
    pub fn endpoint(&self) -> Result<DgaMorphism> {
        let images = self.f.iter().map(|p| p.eval_one()).collect();
        DgaMorphism::from_images(&self.algebra, &self.algebra, images)
    }

    fn apply_f(&self, e: &Element) -> PolyElement {
        let mut out = PolyElement::default();
        for (m, c) in e.terms() {
            let mut acc = PolyElement::constant(self.algebra.gens().one());
            for g in m.word() {
                acc = acc.mul(&self.algebra, &self.f[g]);
            }
            out.add_scaled(&acc, c);
        }
        out
    }

    /// `G` extended as an `F(t)`-derivation of degree −1.
    fn apply_g(&self, e: &Element) -> PolyElement {
        let ga = self.algebra.gens();
        let mut out = PolyElement::default();
        for (m, c) in e.terms() {
            let word = m.word();
            for p in 0..word.len() {
                let mut acc = PolyElement::constant(ga.one());
                let mut prefix_deg = 0;
                for (q, &h) in word.iter().enumerate() {
                    if q < p {
                        acc = acc.mul(&self.algebra, &self.f[h]);
                        prefix_deg += ga.degree(h);
                    } else if q == p {
                        acc = acc.mul(&self.algebra, &self.g[h]);
                    } else {
                        acc = acc.mul(&self.algebra, &self.f[h]);
                    }
                }
                out.add_scaled(&acc, &(c * sign(prefix_deg % 2 != 0)));
            }
        }
        out
    }
}

/// Outcome of [`check_homotopy`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomotopyCheck {
    pub violations: Vec<String>,
}

impl HomotopyCheck {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Verifies the homotopy conditions on generators and pairs of generators.
///
/// Multiplicativity of `F` and the derivation rule for `G` are automatic for data given on
/// generators; when the homotopy came from [`exp_homotopy`] they are checked against the
/// operator series instead.
pub fn check_homotopy(h: &PolynomialHomotopy) -> HomotopyCheck {
    let a = &h.algebra;
    let ga = a.gens();
    let n = ga.len();
    let mut violations = Vec::new();
    for i in 0..n {
        let name = &ga.generator(i).name;
        if h.f[i].eval_zero() != ga.gen(i) {
            violations.push(format!("F(0) ≠ id at {name}"));
        }
        let fd = h.apply_f(a.d_gen(i));
        let df = h.f[i].map(|c| a.differential(c));
        if fd != df {
            violations.push(format!("F∘d ≠ d∘F at {name}"));
        }
        let lhs = h.f[i].derivative();
        let mut rhs = h.apply_g(a.d_gen(i));
        rhs.add_scaled(&h.g[i].map(|c| a.differential(c)), &one());
        if lhs != rhs.trimmed() {
            violations.push(format!("∂F/∂t ≠ [G,d] at {name}"));
        }
    }
    if let Some((dd, g0)) = &h.operators {
        for i in 0..n {
            for j in 0..n {
                let prod = a.mul(&ga.gen(i), &ga.gen(j));
                let Ok(series) = exp_series(dd, &prod) else {
                    violations.push("exp(tD) does not terminate on a product".into());
                    continue;
                };
                let pair = format!("({}, {})", ga.generator(i).name, ga.generator(j).name);
                if series != h.f[i].mul(a, &h.f[j]) {
                    violations.push(format!("F not multiplicative on {pair}"));
                }
                let g_series = series.map(|c| g0.apply(c));
                let mut expected = h.g[i].mul(a, &h.f[j]);
                expected.add_scaled(&h.f[i].mul(a, &h.g[j]), &sign(ga.degree(i) % 2 != 0));
                if g_series != expected.trimmed() {
                    violations.push(format!("G not an F-derivation on {pair}"));
                }
            }
        }
    }
    HomotopyCheck { violations }
}

/// `Σⱼ tʲ Dʲ(e)/j!`, refusing if `D` is not nilpotent on the orbit of `e`.
fn exp_series(dd: &Derivation, e: &Element) -> Result<PolyElement> {
    let a = dd.source();
    let bound = a.gens().degrees(e).iter().map(|&k| a.dim(k)).max().unwrap_or(0) + 1;
    let mut coeffs = Vec::new();
    let mut term = e.clone();
    let mut fact = BigInt::from(1);
    for j in 0..=bound {
        if term.is_zero() {
            return Ok(PolyElement { coeffs }.trimmed());
        }
        if j > 0 {
            fact *= j;
        }
        coeffs.push(term.scaled(&Scalar::new(1.into(), fact.clone())));
        term = dd.apply(&term);
    }
    let name = a.gens().format(e);
    Err(Error::NotNilpotent { generator: name, bound })
}

/// The endomorphism derivation `d_A`.
fn d_as_derivation(a: &FreeCdga) -> Result<Derivation> {
    Derivation::new(&ModuleView::over_itself(a), 1, a.d_values().to_vec())
}

/// `F(t) = exp(t[G₀,d])`, `G(t) = G₀ ∘ F(t)`.
pub fn exp_homotopy(a: &FreeCdga, g0: &Derivation) -> Result<PolynomialHomotopy> {
    require_minimal(a)?;
    if g0.degree() != -1 || g0.source() != a {
        return Err(Error::DimensionMismatch("G₀ must be a degree −1 derivation of A".into()));
    }
    let dd = gerstenhaber_bracket(g0, &d_as_derivation(a)?)?;
    let mut f = Vec::new();
    for i in 0..a.gens().len() {
        f.push(exp_series(&dd, &a.gens().gen(i)).map_err(|_| Error::NotNilpotent {
            generator: a.gens().generator(i).name.clone(),
            bound: a.dim(a.gens().degree(i)) + 1,
        })?);
    }
    let g = f.iter().map(|p| p.map(|c| g0.apply(c))).collect();
    Ok(PolynomialHomotopy { algebra: a.clone(), f, g, operators: Some((dd, g0.clone())) })
}

/// Either a witness `G₀` with `F₁ = exp([G₀,d])`, or the reason there is none.
#[derive(Debug, Clone)]
pub enum HomotopyVerdict {
    Witness(Derivation),
    No(String),
}

impl HomotopyVerdict {
    pub fn witness(&self) -> Option<&Derivation> {
        match self {
            HomotopyVerdict::Witness(g) => Some(g),
            HomotopyVerdict::No(_) => None,
        }
    }
}

/// Decides whether the automorphism `F₁` of a minimal algebra lies in the identity
/// component, by solving `[G₀, d] = log F₁`.
pub fn is_homotopic_to_identity(f1: &DgaMorphism) -> Result<HomotopyVerdict> {
    let a = f1.source();
    if f1.target() != a {
        return Err(Error::NotAnAutomorphism("source and target differ".into()));
    }
    require_minimal(a)?;
    let ga = a.gens();
    for i in 0..ga.len() {
        let k = ga.degree(i);
        let target = ga.coordinates(&ga.gen(i), &a.basis(k));
        if f1.matrix(k).solve(&target).is_none() {
            return Err(Error::NotAnAutomorphism(format!("{} has no preimage", ga.generator(i).name)));
        }
    }
    let nil = |e: &Element| f1.apply(e).minus(e);
    let mut log = Vec::new();
    for i in 0..ga.len() {
        let steps = a.dim(ga.degree(i));
        let mut power = ga.gen(i);
        let mut value = Element::zero();
        for j in 1..=steps + 1 {
            power = nil(&power);
            if power.is_zero() {
                break;
            }
            if j == steps + 1 {
                return Ok(HomotopyVerdict::No(format!("F₁ − id is not nilpotent on {}", ga.generator(i).name)));
            }
            value.add_scaled(&power, &(sign(j % 2 == 0) * Scalar::new(1.into(), BigInt::from(j))));
        }
        log.push(value);
    }
    let module = ModuleView::over_itself(a);
    let l1 = Derivation::new(&module, 0, log)?;
    let b0 = DerBasis::new(&module, 0);
    let bm1 = DerBasis::new(&module, -1);
    let Some(sol) = der_matrix(&module, -1).solve(&b0.coordinates(&l1)) else {
        return Ok(HomotopyVerdict::No("log F₁ is not a coboundary".into()));
    };
    let g0 = bm1.element(&module, &sol);
    let end = exp_homotopy(a, &g0)?.endpoint()?;
    if end.images() != f1.images() {
        return Err(Error::HypothesisViolated("exp([G₀,d]) does not reproduce F₁".into()));
    }
    Ok(HomotopyVerdict::Witness(g0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s2() -> FreeCdga {
        FreeCdga::build("S2", &[("x", 2), ("y", 3)], &[("y", "x^2")]).unwrap()
    }

    #[test]
    fn constant_homotopy_is_valid() {
        assert!(check_homotopy(&PolynomialHomotopy::constant(&s2())).is_valid());
    }

    #[test]
    fn broken_commutation_reported() {
        let a = s2();
        let mut h = PolynomialHomotopy::constant(&a);
        h.f[1] = PolyElement { coeffs: vec![a.parse("y").unwrap(), Element::zero()] };
        h.f[0] = PolyElement { coeffs: vec![a.parse("x").unwrap(), a.parse("x").unwrap()] };
        let c = check_homotopy(&h);
        assert!(c.violations.iter().any(|v| v.starts_with("F∘d ≠ d∘F")));
    }

    #[test]
    fn degenerate_s2_homotopy() {
        let a = s2();
        let g0 = Derivation::build(&ModuleView::over_itself(&a), -1, &[("y", "x")]).unwrap();
        let h = exp_homotopy(&a, &g0).unwrap();
        assert!(check_homotopy(&h).is_valid());
        assert!(h.endpoint().unwrap().is_identity());
    }

    #[test]
    fn nontrivial_d_on_s2_times_k4() {
        let a = FreeCdga::build("S2xK4", &[("x", 2), ("y", 3), ("z", 4)], &[("y", "x^2")]).unwrap();
        let g0 = Derivation::build(&ModuleView::over_itself(&a), -1, &[("z", "y")]).unwrap();
        let h = exp_homotopy(&a, &g0).unwrap();
        assert!(check_homotopy(&h).is_valid(), "{:?}", check_homotopy(&h));
        let f1 = h.endpoint().unwrap();
        assert_eq!(f1.images()[2], a.parse("z + x^2").unwrap());
        let verdict = is_homotopic_to_identity(&f1).unwrap();
        assert!(verdict.witness().is_some());
    }

    #[test]
    fn scaling_is_not_homotopic_to_identity() {
        let a = s2();
        let f = DgaMorphism::build(&a, &a, &[("x", "2*x"), ("y", "4*y")]).unwrap();
        assert!(matches!(is_homotopic_to_identity(&f).unwrap(), HomotopyVerdict::No(_)));
        let id = DgaMorphism::identity(&a);
        assert!(is_homotopic_to_identity(&id).unwrap().witness().unwrap().is_zero());
    }
}

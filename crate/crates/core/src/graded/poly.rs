//! Free graded-commutative polynomials with Koszul signs.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::linalg::{scalar, Scalar};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub degree: i32,
}

impl Generator {
    pub fn new(name: impl Into<String>, degree: i32) -> Self {
        Generator { name: name.into(), degree }
    }

    pub fn is_odd(&self) -> bool {
        self.degree % 2 != 0
    }
}

/// Exponent vector over the canonically ordered generators of a [`GeneratorSet`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn unit(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn from_exponents(e: Vec<u32>) -> Self {
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn is_unit(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Number of generator factors counted with multiplicity.
    pub fn length(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Index of the generator when the monomial is a single generator.
    pub fn as_generator(&self) -> Option<usize> {
        (self.length() == 1).then(|| self.0.iter().position(|&e| e == 1).unwrap())
    }

    /// Factors as a word of generator indices in canonical order.
    pub fn word(&self) -> Vec<usize> {
        let mut w = Vec::with_capacity(self.length() as usize);
        for (i, &e) in self.0.iter().enumerate() {
            w.extend(std::iter::repeat_n(i, e as usize));
        }
        w
    }
}

/// ℚ-linear combination of monomials; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash)]
pub struct Element {
    terms: BTreeMap<Monomial, Scalar>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn from_term(m: Monomial, c: Scalar) -> Self {
        let mut e = Element::zero();
        e.add_term(m, c);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Scalar> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let remove = match self.terms.get_mut(&m) {
            Some(x) => {
                *x += &c;
                x.is_zero()
            }
            None => {
                self.terms.insert(m.clone(), c);
                false
            }
        };
        if remove {
            self.terms.remove(&m);
        }
    }

    /// `self += c·other`
    pub fn add_scaled(&mut self, other: &Element, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (m, x) in &other.terms {
            self.add_term(m.clone(), c * x);
        }
    }

    pub fn scaled(&self, c: &Scalar) -> Element {
        if c.is_zero() {
            return Element::zero();
        }
        Element { terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    pub fn neg(&self) -> Element {
        self.scaled(&-Scalar::one())
    }

    pub fn plus(&self, other: &Element) -> Element {
        let mut e = self.clone();
        e.add_scaled(other, &Scalar::one());
        e
    }

    pub fn minus(&self, other: &Element) -> Element {
        let mut e = self.clone();
        e.add_scaled(other, &-Scalar::one());
        e
    }
}

/// Canonically ordered generators: by degree, then by name.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneratorSet {
    gens: Vec<Generator>,
}

impl GeneratorSet {
    pub fn new(mut gens: Vec<Generator>) -> Result<Self> {
        for g in &gens {
            if g.degree < 1 {
                return Err(Error::InvalidDegree { name: g.name.clone(), degree: g.degree as i64 });
            }
        }
        gens.sort_by(|a, b| (a.degree, &a.name).cmp(&(b.degree, &b.name)));
        if let Some(dup) = gens.iter().enumerate().find(|(i, g)| gens[i + 1..].iter().any(|h| h.name == g.name)) {
            return Err(Error::DuplicateGenerator(dup.1.name.clone()));
        }
        Ok(GeneratorSet { gens })
    }

    pub fn empty() -> Self {
        GeneratorSet { gens: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn generator(&self, i: usize) -> &Generator {
        &self.gens[i]
    }

    pub fn degree(&self, i: usize) -> i32 {
        self.gens[i].degree
    }

    pub fn max_degree(&self) -> i32 {
        self.gens.iter().map(|g| g.degree).max().unwrap_or(0)
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.gens.iter().position(|g| g.name == name).ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn unit(&self) -> Monomial {
        Monomial::unit(self.len())
    }

    pub fn one(&self) -> Element {
        Element::from_term(self.unit(), Scalar::one())
    }

    pub fn generator_monomial(&self, i: usize) -> Monomial {
        let mut e = vec![0; self.len()];
        e[i] = 1;
        Monomial(e)
    }

    pub fn gen(&self, i: usize) -> Element {
        Element::from_term(self.generator_monomial(i), Scalar::one())
    }

    pub fn gen_named(&self, name: &str) -> Result<Element> {
        Ok(self.gen(self.index_of(name)?))
    }

    pub fn monomial_degree(&self, m: &Monomial) -> i32 {
        m.0.iter().zip(&self.gens).map(|(&e, g)| e as i32 * g.degree).sum()
    }

    fn owns(&self, m: &Monomial) -> bool {
        m.0.len() == self.len()
    }

    /// Degrees of the homogeneous pieces present in `e`.
    pub fn degrees(&self, e: &Element) -> Vec<i32> {
        let mut ds: Vec<i32> = e.terms.keys().map(|m| self.monomial_degree(m)).collect();
        ds.sort_unstable();
        ds.dedup();
        ds
    }

    /// The degree of `e` if it is homogeneous and nonzero.
    pub fn homogeneous_degree(&self, e: &Element) -> Option<i32> {
        match self.degrees(e).as_slice() {
            [d] => Some(*d),
            _ => None,
        }
    }

    pub fn homogeneous_part(&self, e: &Element, degree: i32) -> Element {
        Element {
            terms: e
                .terms
                .iter()
                .filter(|(m, _)| self.monomial_degree(m) == degree)
                .map(|(m, x)| (m.clone(), x.clone()))
                .collect(),
        }
    }

    /// Product of canonical monomials with its Koszul sign, or `None` when an odd
    /// generator repeats.
    pub fn mul_monomials(&self, a: &Monomial, b: &Monomial) -> Option<(Monomial, bool)> {
        let mut negative = false;
        let mut odd_after = 0u32; // odd factors of `a` with index > j
        let n = self.len();
        let mut out = a.0.clone();
        for j in (0..n).rev() {
            let odd = self.gens[j].is_odd();
            if b.0[j] > 0 {
                if odd {
                    if a.0[j] > 0 {
                        return None;
                    }
                    if odd_after % 2 == 1 {
                        negative = !negative;
                    }
                }
                out[j] += b.0[j];
            }
            if odd && a.0[j] > 0 {
                odd_after += 1;
            }
        }
        Some((Monomial(out), negative))
    }

    /// Sorts a word of generator indices into a canonical monomial.
    pub fn normalize_indices(&self, word: &[usize]) -> Option<(Monomial, bool)> {
        let mut m = self.unit();
        let mut negative = false;
        for &i in word {
            let (next, neg) = self.mul_monomials(&m, &self.generator_monomial(i))?;
            m = next;
            negative ^= neg;
        }
        Some((m, negative))
    }

    /// Sorts a word of generator names; `Ok(None)` means the product is zero.
    pub fn normalize_word(&self, word: &[&str]) -> Result<Option<(Monomial, i8)>> {
        let idx = word.iter().map(|w| self.index_of(w)).collect::<Result<Vec<_>>>()?;
        Ok(self.normalize_indices(&idx).map(|(m, neg)| (m, if neg { -1 } else { 1 })))
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        let mut out = Element::zero();
        for (ma, xa) in &a.terms {
            for (mb, xb) in &b.terms {
                if let Some((m, neg)) = self.mul_monomials(ma, mb) {
                    let c = xa * xb;
                    out.add_term(m, if neg { -c } else { c });
                }
            }
        }
        out
    }

    /// Checked product: both operands must be over this generator set.
    pub fn try_mul(&self, a: &Element, b: &Element) -> Result<Element> {
        if a.terms.keys().chain(b.terms.keys()).any(|m| !self.owns(m)) {
            return Err(Error::MismatchedGenerators);
        }
        Ok(self.mul(a, b))
    }

    pub fn pow(&self, a: &Element, k: u32) -> Element {
        let mut out = self.one();
        for _ in 0..k {
            out = self.mul(&out, a);
        }
        out
    }

    /// All canonical monomials of exactly this degree, in ascending order.
    pub fn basis(&self, degree: i32) -> Vec<Monomial> {
        let mut out = Vec::new();
        if degree < 0 {
            return out;
        }
        let mut exps = vec![0u32; self.len()];
        self.fill_basis(0, degree, &mut exps, &mut out);
        out.sort();
        out
    }

    fn fill_basis(&self, i: usize, remaining: i32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if remaining == 0 {
            out.push(Monomial(exps.clone()));
            return;
        }
        if i == self.len() {
            return;
        }
        let d = self.gens[i].degree;
        let max = if self.gens[i].is_odd() { 1 } else { (remaining / d) as u32 };
        for e in 0..=max.min((remaining / d) as u32) {
            exps[i] = e;
            self.fill_basis(i + 1, remaining - e as i32 * d, exps, out);
        }
        exps[i] = 0;
    }

    /// Sorted bases for every degree in `0..=top`.
    pub fn bases_up_to(&self, top: i32) -> Vec<Vec<Monomial>> {
        (0..=top.max(-1)).map(|d| self.basis(d)).collect()
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        if m.is_unit() {
            return "1".into();
        }
        let parts: Vec<String> =
            m.0.iter()
                .zip(&self.gens)
                .filter(|(&e, _)| e > 0)
                .map(|(&e, g)| if e == 1 { g.name.clone() } else { format!("{}^{}", g.name, e) })
                .collect();
        parts.join("*")
    }

    pub fn format(&self, e: &Element) -> String {
        if e.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (m, c)) in e.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = self.format_monomial(m);
            if m.is_unit() {
                s.push_str(&abs.to_string());
            } else if abs.is_one() {
                s.push_str(&mono);
            } else {
                s.push_str(&format!("{}*{}", abs, mono));
            }
        }
        s
    }

    pub fn display<'a>(&'a self, e: &'a Element) -> impl fmt::Display + 'a {
        struct D<'a>(&'a GeneratorSet, &'a Element);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0.format(self.1))
            }
        }
        D(self, e)
    }

    /// Coordinates of `e`'s degree-`degree` part in [`basis`](Self::basis)`(degree)`.
    pub fn coordinates(&self, e: &Element, basis: &[Monomial]) -> super::linalg::SparseVec {
        let mut v = super::linalg::SparseVec::new();
        for (m, x) in &e.terms {
            if let Ok(i) = basis.binary_search(m) {
                v.insert(i, x.clone());
            }
        }
        v
    }

    pub fn from_coordinates(&self, v: &super::linalg::SparseVec, basis: &[Monomial]) -> Element {
        let mut e = Element::zero();
        for (&i, x) in v {
            e.add_term(basis[i].clone(), x.clone());
        }
        e
    }

    pub fn int(&self, n: i64) -> Element {
        self.one().scaled(&scalar(n))
    }

    /// Drops every term of degree above `top`.
    pub fn truncate(&self, e: &Element, top: Option<i32>) -> Element {
        match top {
            None => e.clone(),
            Some(t) => Element {
                terms: e
                    .terms
                    .iter()
                    .filter(|(m, _)| self.monomial_degree(m) <= t)
                    .map(|(m, x)| (m.clone(), x.clone()))
                    .collect(),
            },
        }
    }

    /// Rewrites `e` over `into`, matching generators by name. Relative order of shared
    /// generators is canonical in both sets, so no sign arises.
    pub fn embed(&self, e: &Element, into: &GeneratorSet) -> Result<Element> {
        let map: Vec<Option<usize>> = self.gens.iter().map(|g| into.index_of(&g.name).ok()).collect();
        let mut out = Element::zero();
        for (m, x) in &e.terms {
            let mut exps = vec![0u32; into.len()];
            for (i, &k) in m.0.iter().enumerate() {
                if k > 0 {
                    let j = map[i].ok_or_else(|| Error::UnknownGenerator(self.gens[i].name.clone()))?;
                    exps[j] += k;
                }
            }
            out.add_term(Monomial(exps), x.clone());
        }
        Ok(out)
    }

    pub fn owns_element(&self, e: &Element) -> bool {
        e.terms.keys().all(|m| self.owns(m))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gens(spec: &[(&str, i32)]) -> GeneratorSet {
        GeneratorSet::new(spec.iter().map(|&(n, d)| Generator::new(n, d)).collect()).unwrap()
    }

    #[test]
    fn even_generator_commutes() {
        let g = gens(&[("x", 2), ("y", 3)]);
        let (m, s) = g.normalize_word(&["y", "x"]).unwrap().unwrap();
        assert_eq!(g.format_monomial(&m), "x*y");
        assert_eq!(s, 1);
    }

    #[test]
    fn odd_transposition_flips_sign() {
        let g = gens(&[("y", 3), ("z", 3)]);
        let (m, s) = g.normalize_word(&["z", "y"]).unwrap().unwrap();
        assert_eq!(g.format_monomial(&m), "y*z");
        assert_eq!(s, -1);
    }

    #[test]
    fn odd_square_vanishes() {
        let g = gens(&[("y", 3)]);
        assert_eq!(g.normalize_word(&["y", "y"]).unwrap(), None);
    }

    #[test]
    fn unknown_id_is_an_error() {
        let g = gens(&[("x", 2)]);
        assert!(matches!(g.normalize_word(&["q"]), Err(Error::UnknownGenerator(_))));
    }

    #[test]
    fn products() {
        let g = gens(&[("x", 2), ("y", 3)]);
        let x = g.gen(0);
        let y = g.gen(1);
        assert_eq!(g.format(&g.mul(&x, &x)), "x^2");
        assert!(g.mul(&y, &y).is_zero());
        assert_eq!(g.mul(&x.plus(&y), &y), g.mul(&x, &y));
    }

    #[test]
    fn bases() {
        let g = gens(&[("x", 2), ("y", 3)]);
        let f = |d| g.basis(d).iter().map(|m| g.format_monomial(m)).collect::<Vec<_>>();
        assert_eq!(f(4), vec!["x^2"]);
        assert_eq!(f(5), vec!["x*y"]);
        assert!(f(1).is_empty());
        assert!(f(-3).is_empty());
        assert_eq!(f(0), vec!["1"]);
    }

    #[test]
    fn mismatched_sets_rejected() {
        let a = gens(&[("x", 2)]);
        let b = gens(&[("x", 2), ("y", 3)]);
        assert_eq!(a.try_mul(&a.gen(0), &b.gen(1)), Err(Error::MismatchedGenerators));
    }

    #[test]
    fn rejects_degree_zero_and_duplicates() {
        assert!(GeneratorSet::new(vec![Generator::new("x", 0)]).is_err());
        assert!(GeneratorSet::new(vec![Generator::new("x", 2), Generator::new("x", 3)]).is_err());
    }
}

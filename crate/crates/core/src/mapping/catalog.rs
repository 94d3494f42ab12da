use crate::cdga::FreeCdga;
use crate::error::{Error, Result};

/// A space represented by a minimal model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpaceModel {
    pub name: String,
    pub model: FreeCdga,
    pub provenance: String,
}

impl SpaceModel {
    pub fn from_model(model: FreeCdga, provenance: impl Into<String>) -> Result<Self> {
        if !model.is_minimal() {
            return Err(Error::NotMinimal(format!("{} is not a minimal model", model.name())));
        }
        if !model.is_connected() {
            return Err(Error::InvalidDegree { name: model.name().into(), degree: 0 });
        }
        Ok(SpaceModel { name: model.name().to_string(), model, provenance: provenance.into() })
    }
}

/// Catalog entries with their argument shapes.
pub fn catalog_entries() -> Vec<(&'static str, &'static str)> {
    vec![
        ("sphere(n)", "Λ(x_n) for odd n; Λ(x_n, y_{2n-1}; dy = x^2) for even n"),
        ("complex_projective(n)", "Λ(x_2, y_{2n+1}; dy = x^{n+1})"),
        ("k(Q,n)", "Λ(x_n)"),
        ("product(A,B,...)", "tensor product; generators of factor i renamed g_i"),
        ("point", "ℚ"),
    ]
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Spec {
    Int(i64),
    Q,
    Call(String, Vec<Spec>),
}

fn parse_spec(src: &str) -> Result<Spec> {
    let chars: Vec<char> = src.chars().filter(|c| !c.is_whitespace()).collect();
    let mut at = 0;
    let s = spec(&chars, &mut at, src)?;
    if at != chars.len() {
        return Err(Error::UnknownCatalog(src.to_string()));
    }
    Ok(s)
}

fn spec(c: &[char], at: &mut usize, src: &str) -> Result<Spec> {
    let bad = || Error::UnknownCatalog(src.to_string());
    let start = *at;
    if c.get(*at).is_some_and(|x| x.is_ascii_digit()) {
        while c.get(*at).is_some_and(|x| x.is_ascii_digit()) {
            *at += 1;
        }
        let text: String = c[start..*at].iter().collect();
        return text.parse().map(Spec::Int).map_err(|_| bad());
    }
    while c.get(*at).is_some_and(|x| x.is_alphanumeric() || *x == '_') {
        *at += 1;
    }
    let name: String = c[start..*at].iter().collect();
    if name.is_empty() {
        return Err(bad());
    }
    if c.get(*at) != Some(&'(') {
        return Ok(if name == "Q" { Spec::Q } else { Spec::Call(name, Vec::new()) });
    }
    *at += 1;
    let mut args = Vec::new();
    loop {
        args.push(spec(c, at, src)?);
        match c.get(*at) {
            Some(',') => *at += 1,
            Some(')') => {
                *at += 1;
                break;
            }
            _ => return Err(bad()),
        }
    }
    Ok(Spec::Call(name, args))
}

fn degree(src: &str, args: &[Spec]) -> Result<i32> {
    match args {
        [Spec::Int(n)] | [Spec::Q, Spec::Int(n)] => {
            if *n < 1 || *n > 1000 {
                return Err(Error::InvalidDegree { name: src.to_string(), degree: *n });
            }
            Ok(*n as i32)
        }
        _ => Err(Error::UnknownCatalog(src.to_string())),
    }
}

fn build(s: &Spec, src: &str) -> Result<FreeCdga> {
    let Spec::Call(name, args) = s else {
        return Err(Error::UnknownCatalog(src.to_string()));
    };
    match name.as_str() {
        "sphere" => {
            let n = degree(src, args)?;
            if n % 2 == 1 {
                FreeCdga::build(&format!("S{n}"), &[("x", n)], &[])
            } else {
                FreeCdga::build(&format!("S{n}"), &[("x", n), ("y", 2 * n - 1)], &[("y", "x^2")])
            }
        }
        "complex_projective" => {
            let n = degree(src, args)?;
            let top = format!("x^{}", n + 1);
            FreeCdga::build(&format!("CP{n}"), &[("x", 2), ("y", 2 * n + 1)], &[("y", top.as_str())])
        }
        "k" if matches!(args.first(), Some(Spec::Q)) => {
            let n = degree(src, args)?;
            FreeCdga::build(&format!("K(Q,{n})"), &[("x", n)], &[])
        }
        "point" if args.is_empty() => Ok(FreeCdga::trivial().renamed("pt")),
        "product" if !args.is_empty() => {
            let mut out: Option<FreeCdga> = None;
            let mut names = Vec::new();
            for (i, f) in args.iter().enumerate() {
                let factor = build(f, src)?;
                names.push(factor.name().to_string());
                let renamed = factor.rename_generators(factor.name().to_string(), |g| format!("{g}_{}", i + 1))?;
                out = Some(match out {
                    None => renamed,
                    Some(acc) => acc.tensor(&renamed, "")?,
                });
            }
            Ok(out.expect("nonempty product").renamed(names.join("x")))
        }
        _ => Err(Error::UnknownCatalog(src.to_string())),
    }
}

/// Builds a catalog model from a name such as `sphere(2)` or `product(sphere(2),k(Q,3))`.
pub fn space_catalog(src: &str) -> Result<SpaceModel> {
    let model = build(&parse_spec(src)?, src)?;
    SpaceModel::from_model(model, format!("catalog:{src}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::DegreeWindow;

    #[test]
    fn spheres() {
        let s3 = space_catalog("sphere(3)").unwrap().model;
        assert_eq!(s3.gens().len(), 1);
        let s2 = space_catalog("sphere(2)").unwrap().model;
        let h = s2.cohomology(DegreeWindow::new(0, 8).unwrap()).unwrap();
        let dims: Vec<usize> = (0..=8).map(|n| h.dim(n)).collect();
        assert_eq!(dims, [1, 0, 1, 0, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn projective_plane() {
        let cp2 = space_catalog("complex_projective(2)").unwrap().model;
        assert_eq!(cp2.format(cp2.d_gen(1)), "x^3");
        let h = cp2.cohomology(DegreeWindow::new(0, 8).unwrap()).unwrap();
        let dims: Vec<usize> = (0..=8).map(|n| h.dim(n)).collect();
        assert_eq!(dims, [1, 0, 1, 0, 1, 0, 0, 0, 0]);
    }

    #[test]
    fn products_and_eilenberg_maclane() {
        let p = space_catalog("product(sphere(2), k(Q,3))").unwrap();
        assert_eq!(p.name, "S2xK(Q,3)");
        let names: Vec<&str> = p.model.gens().generators().iter().map(|g| g.name.as_str()).collect();
        assert_eq!(names, ["x_1", "x_2", "y_1"]);
        assert!(p.model.is_minimal());
    }

    #[test]
    fn bad_names() {
        for s in ["sphere(0)", "torus(2)", "sphere(2", "k(3)", "product()"] {
            assert!(space_catalog(s).is_err(), "{s}");
        }
    }
}

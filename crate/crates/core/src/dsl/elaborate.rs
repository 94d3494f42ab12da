use std::collections::BTreeMap;

use num_traits::ToPrimitive;

use super::ast::*;
use super::{eval_expr, semantic};
use crate::cdga::{DgaMorphism, FreeCdga};
use crate::error::{Error, Result};
use crate::graded::{Element, Generator, GeneratorSet};

/// Elaborated document: algebras and morphisms in declaration order.
#[derive(Debug, Clone, Default)]
pub struct Model {
    pub algebras: Vec<FreeCdga>,
    pub morphisms: Vec<(String, DgaMorphism)>,
}

impl Model {
    /// Looks up an algebra by name; `Q` is always available.
    pub fn algebra(&self, name: &str) -> Result<FreeCdga> {
        if let Some(a) = self.algebras.iter().find(|a| a.name() == name) {
            return Ok(a.clone());
        }
        if name == "Q" {
            return Ok(FreeCdga::trivial());
        }
        Err(Error::UnknownCatalog(name.to_string()))
    }

    pub fn morphism(&self, name: &str) -> Result<DgaMorphism> {
        self.morphisms
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, f)| f.clone())
            .ok_or_else(|| Error::UnknownCatalog(name.to_string()))
    }
}

pub fn elaborate(doc: &Document) -> Result<Model> {
    let mut model = Model::default();
    let mut names: Vec<String> = vec!["Q".into()];
    for b in &doc.blocks {
        let name = match b {
            Block::Algebra(a) => &a.name,
            Block::Morphism(m) => &m.name,
        };
        if names.contains(&name.name) {
            return Err(semantic(name.pos, format!("`{}` is already defined", name.name)));
        }
        names.push(name.name.clone());
        match b {
            Block::Algebra(a) => {
                let alg = algebra(a)?;
                model.algebras.push(alg);
            }
            Block::Morphism(m) => {
                let f = morphism(&model, m)?;
                model.morphisms.push((m.name.name.clone(), f));
            }
        }
    }
    Ok(model)
}

fn algebra(a: &AlgebraAst) -> Result<FreeCdga> {
    let mut gens = Vec::new();
    for d in &a.decls {
        if let Decl::Generator { name, degree, .. } = d {
            if gens.iter().any(|g: &Generator| g.name == name.name) {
                return Err(semantic(name.pos, format!("duplicate generator `{}`", name.name)));
            }
            let k = degree.to_i32().filter(|k| *k >= 1).ok_or_else(|| {
                semantic(name.pos, format!("generator `{}` has degree {degree}; degrees must be >= 1", name.name))
            })?;
            gens.push(Generator::new(name.name.clone(), k));
        }
    }
    let set = GeneratorSet::new(gens)?;
    let mut values: BTreeMap<String, Element> = BTreeMap::new();
    let mut lines: BTreeMap<String, Pos> = BTreeMap::new();
    for d in &a.decls {
        if let Decl::Differential { target, value, pos } = d {
            let i = set
                .index_of(&target.name)
                .map_err(|_| semantic(target.pos, format!("undeclared generator `{}`", target.name)))?;
            if lines.contains_key(&target.name) {
                return Err(semantic(*pos, format!("d {} is given twice", target.name)));
            }
            let v = eval_expr(value, &set)?;
            let expected = set.degree(i) + 1;
            match set.degrees(&v).as_slice() {
                [] => {}
                [k] if *k == expected => {}
                [k] => return Err(semantic(*pos, format!("degree of d {} must be {expected}, got {k}", target.name))),
                _ => {
                    return Err(semantic(*pos, format!("d {} is not homogeneous", target.name)));
                }
            }
            lines.insert(target.name.clone(), *pos);
            values.insert(target.name.clone(), v);
        }
    }
    FreeCdga::new(a.name.name.clone(), set, values).map_err(|e| match &e {
        Error::DSquareNonzero { generator, .. } => match lines.get(generator) {
            Some(p) => semantic(*p, e.to_string()),
            None => e,
        },
        _ => e,
    })
}

fn morphism(model: &Model, m: &MorphismAst) -> Result<DgaMorphism> {
    let lookup =
        |id: &Ident| model.algebra(&id.name).map_err(|_| semantic(id.pos, format!("undeclared algebra `{}`", id.name)));
    let source = lookup(&m.source)?;
    let target = lookup(&m.target)?;
    let mut images = vec![Element::zero(); source.gens().len()];
    let mut seen = vec![false; images.len()];
    for a in &m.assigns {
        let i = source
            .gens()
            .index_of(&a.generator.name)
            .map_err(|_| semantic(a.pos, format!("`{}` is not a generator of {}", a.generator.name, source.name())))?;
        if seen[i] {
            return Err(semantic(a.pos, format!("`{}` is assigned twice", a.generator.name)));
        }
        seen[i] = true;
        let v = eval_expr(&a.value, target.gens())?;
        let k = source.gens().degree(i);
        match target.gens().degrees(&v).as_slice() {
            [] => {}
            [j] if *j == k => {}
            [j] => return Err(semantic(a.pos, format!("image of {} must have degree {k}, got {j}", a.generator.name))),
            _ => return Err(semantic(a.pos, format!("image of {} is not homogeneous", a.generator.name))),
        }
        images[i] = v;
    }
    DgaMorphism::from_images(&source, &target, images).map_err(|e| match &e {
        Error::NotAMorphism { generator } => {
            let pos = m.assigns.iter().find(|a| &a.generator.name == generator).map_or(m.name.pos, |a| a.pos);
            semantic(pos, e.to_string())
        }
        _ => e,
    })
}

#[cfg(test)]
mod tests {
    use super::super::load;
    use super::*;

    #[test]
    fn loads_sphere_and_map() {
        let m = load(
            "algebra S2 { generator x : 2; generator y : 3; d y = x^2; }\n\
             morphism f : S2 -> S2 { x |-> 2*x; y |-> 4*y; }",
        )
        .unwrap();
        let a = m.algebra("S2").unwrap();
        assert!(a.is_minimal());
        assert_eq!(m.morphism("f").unwrap().describe(), "x↦2*x, y↦4*y");
    }

    #[test]
    fn degree_mismatch_message() {
        let e = load("algebra A {\n generator x : 2;\n generator y : 3;\n d y = x;\n}").unwrap_err();
        assert_eq!(e.to_string(), "4:2: degree of d y must be 4, got 2");
    }

    #[test]
    fn semantic_failures() {
        for src in [
            "algebra A { generator x : 0; }",
            "algebra A { generator x : 2; generator x : 3; }",
            "algebra A { generator x : 3; d x = 0; d x = 0; }",
            "algebra A { generator y : 3; d z = 0; }",
            "algebra A { generator x : 2; } algebra A { generator y : 2; }",
            "morphism f : A -> Q { }",
            "algebra A { generator x : 2; generator y : 3; d y = x^2; } morphism f : A -> A { y |-> y; }",
        ] {
            assert!(matches!(load(src), Err(Error::Semantic { .. })), "{src}");
        }
    }
}

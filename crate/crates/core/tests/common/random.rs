#![allow(dead_code)]

//! Seeded generators shared by the randomized suites.

use aqcdga::cdga::{FreeCdga, ModuleView};
use aqcdga::derivation::Derivation;
use aqcdga::dsl::{AlgebraAst, Assign, Block, Decl, Document, Expr, Ident, MorphismAst, Pos};
use aqcdga::graded::{scalar, Element, Scalar};
use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

pub fn algebras() -> Vec<FreeCdga> {
    vec![
        FreeCdga::build("S2", &[("x", 2), ("y", 3)], &[("y", "x^2")]).unwrap(),
        FreeCdga::build("CP2", &[("x", 2), ("y", 5)], &[("y", "x^3")]).unwrap(),
        FreeCdga::build("H", &[("x", 2), ("y", 3), ("z", 4)], &[("z", "x*y")]).unwrap(),
        FreeCdga::build("N", &[("a", 2), ("b", 2), ("c", 3)], &[("c", "a*b")]).unwrap(),
        FreeCdga::build("O", &[("u", 3), ("v", 3), ("w", 5)], &[("w", "u*v")]).unwrap(),
        FreeCdga::build("M", &[("a", 2), ("b", 3), ("e", 4), ("f", 7)], &[("b", "a^2"), ("f", "e^2")]).unwrap(),
    ]
}

pub fn random_element(a: &FreeCdga, rng: &mut StdRng, degree: i32) -> Element {
    let mut e = Element::zero();
    if degree < 0 {
        return e;
    }
    for m in a.basis(degree) {
        if rng.gen_bool(0.6) {
            e.add_term(m, scalar(rng.gen_range(-3..=3)));
        }
    }
    e
}

pub fn random_derivation(a: &FreeCdga, rng: &mut StdRng, degree: i32) -> Derivation {
    let module = ModuleView::over_itself(a);
    let values = a.gens().generators().iter().map(|g| random_element(a, rng, g.degree + degree)).collect();
    Derivation::new(&module, degree, values).unwrap()
}

pub fn sign(odd: bool) -> Scalar {
    scalar(if odd { -1 } else { 1 })
}

pub fn setup(seed: u64) -> (FreeCdga, StdRng) {
    let mut rng = StdRng::seed_from_u64(seed);
    let algs = algebras();
    let a = algs[rng.gen_range(0..algs.len())].clone();
    (a, rng)
}

const NAMES: &[&str] = &["x", "y", "z", "a1", "b_2", "u", "v", "w0", "gen", "t"];

fn ident(rng: &mut StdRng, pool: &[String]) -> Ident {
    Ident::new(pool.choose(rng).unwrap().clone())
}

fn expr(rng: &mut StdRng, vars: &[String], depth: u32) -> Expr {
    let leaf = depth == 0 || rng.gen_bool(0.3);
    if leaf {
        return match rng.gen_range(0..4) {
            0 => Expr::Int(BigInt::from(rng.gen_range(0..50))),
            1 => Expr::Rational(BigInt::from(rng.gen_range(0..20)), BigInt::from(rng.gen_range(1..9)), Pos::default()),
            _ if vars.is_empty() => Expr::Int(BigInt::from(1)),
            _ => Expr::Var(ident(rng, vars)),
        };
    }
    let sub = |rng: &mut StdRng| Box::new(expr(rng, vars, depth - 1));
    match rng.gen_range(0..5) {
        0 => Expr::Neg(sub(rng)),
        1 => Expr::Add(sub(rng), sub(rng)),
        2 => Expr::Sub(sub(rng), sub(rng)),
        3 => Expr::Mul(sub(rng), sub(rng)),
        _ => Expr::Pow(sub(rng), rng.gen_range(0..5)),
    }
}

pub fn document(rng: &mut StdRng) -> Document {
    let mut blocks = Vec::new();
    let algebra_names: Vec<String> = (0..rng.gen_range(1..4)).map(|i| format!("A{i}")).collect();
    for name in &algebra_names {
        let count = rng.gen_range(0..5);
        let gens: Vec<String> = NAMES.choose_multiple(rng, count).map(|s| s.to_string()).collect();
        let mut decls = Vec::new();
        for g in &gens {
            decls.push(Decl::Generator {
                name: Ident::new(g.clone()),
                degree: BigInt::from(rng.gen_range(-2..12)),
                pos: Pos::default(),
            });
        }
        for _ in 0..rng.gen_range(0..4) {
            if gens.is_empty() {
                break;
            }
            decls.push(Decl::Differential {
                target: ident(rng, &gens),
                value: expr(rng, &gens, 3),
                pos: Pos::default(),
            });
        }
        decls.shuffle(rng);
        blocks.push(Block::Algebra(AlgebraAst { name: Ident::new(name.clone()), decls }));
    }
    for i in 0..rng.gen_range(0..3) {
        let vars: Vec<String> = NAMES.iter().map(|s| s.to_string()).collect();
        let assigns = (0..rng.gen_range(0..4))
            .map(|_| Assign { generator: ident(rng, &vars), value: expr(rng, &vars, 3), pos: Pos::default() })
            .collect();
        let mut targets = algebra_names.clone();
        targets.push("Q".into());
        blocks.push(Block::Morphism(MorphismAst {
            name: Ident::new(format!("f{i}")),
            source: ident(rng, &algebra_names),
            target: ident(rng, &targets),
            assigns,
        }));
    }
    blocks.shuffle(rng);
    Document { blocks }
}

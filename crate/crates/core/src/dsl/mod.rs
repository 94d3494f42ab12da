//! Text format for algebra and morphism presentations.
//!
//! ```text
//! algebra S2 {
//!   generator x : 2;
//!   generator y : 3;
//!   d y = x^2;
//! }
//! morphism f : S2 -> S2 {
//!   x |-> 2*x;
//!   y |-> 4*y;
//! }
//! ```

pub mod ast;
mod elaborate;
mod lexer;
mod parser;

use num_traits::Zero;

pub use ast::{AlgebraAst, Assign, Block, Decl, Document, Expr, Ident, MorphismAst, Pos};
pub use elaborate::{elaborate, Model};
pub use parser::Parser;

use crate::error::{Error, Result};
use crate::graded::{Element, GeneratorSet, Scalar};

pub fn parse_document(src: &str) -> Result<Document> {
    parser::parse_presentation(src)
}

pub fn parse_expr(src: &str) -> Result<Expr> {
    parser::parse_expression(src)
}

/// Parses and elaborates a whole document.
pub fn load(src: &str) -> Result<Model> {
    elaborate(&parse_document(src)?)
}

pub(crate) fn semantic(pos: Pos, message: impl Into<String>) -> Error {
    Error::Semantic { line: pos.line, column: pos.column, message: message.into() }
}

pub fn eval_expr(e: &Expr, gens: &GeneratorSet) -> Result<Element> {
    Ok(match e {
        Expr::Int(n) => gens.one().scaled(&Scalar::from_integer(n.clone())),
        Expr::Rational(p, q, pos) => {
            if q.is_zero() {
                return Err(semantic(*pos, "zero denominator"));
            }
            gens.one().scaled(&Scalar::new(p.clone(), q.clone()))
        }
        Expr::Var(id) => match gens.gen_named(&id.name) {
            Ok(g) => g,
            Err(_) => return Err(semantic(id.pos, format!("undeclared generator `{}`", id.name))),
        },
        Expr::Neg(a) => eval_expr(a, gens)?.neg(),
        Expr::Add(a, b) => eval_expr(a, gens)?.plus(&eval_expr(b, gens)?),
        Expr::Sub(a, b) => eval_expr(a, gens)?.minus(&eval_expr(b, gens)?),
        Expr::Mul(a, b) => gens.mul(&eval_expr(a, gens)?, &eval_expr(b, gens)?),
        Expr::Pow(a, k) => gens.pow(&eval_expr(a, gens)?, *k),
    })
}

/// Parses and evaluates a polynomial expression over `gens`.
pub fn eval_str(src: &str, gens: &GeneratorSet) -> Result<Element> {
    eval_expr(&parse_expr(src)?, gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::Generator;

    #[test]
    fn evaluates_with_signs() {
        let g =
            GeneratorSet::new(vec![Generator::new("x", 2), Generator::new("a", 3), Generator::new("b", 3)]).unwrap();
        let e = eval_str("a*b + b*a", &g).unwrap();
        assert!(e.is_zero());
        let e = eval_str("(x + 1/2)^2 - x^2 - x", &g).unwrap();
        assert_eq!(g.format(&e), "1/4");
        assert!(eval_str("a^2", &g).unwrap().is_zero());
    }

    #[test]
    fn undeclared_is_positioned() {
        let g = GeneratorSet::new(vec![Generator::new("x", 2)]).unwrap();
        let e = eval_str("x + \n  zz", &g).unwrap_err();
        assert_eq!(e.to_string(), "2:3: undeclared generator `zz`");
        assert!(matches!(eval_str("3/0", &g), Err(Error::Semantic { .. })));
    }
}

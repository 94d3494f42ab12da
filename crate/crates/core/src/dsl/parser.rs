use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::ast::*;
use super::lexer::{tokenize, Tok};
use crate::error::{Error, Result};

pub struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

impl Parser {
    pub fn new(src: &str) -> Result<Self> {
        Ok(Parser { toks: tokenize(src)?, at: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn fail<T>(&self, expected: &str) -> Result<T> {
        let p = self.pos();
        Err(Error::Syntax {
            line: p.line,
            column: p.column,
            message: format!("expected {expected}, found {}", self.peek().describe()),
        })
    }

    fn expect(&mut self, t: Tok) -> Result<Pos> {
        if *self.peek() == t {
            Ok(self.bump().1)
        } else {
            self.fail(&t.describe())
        }
    }

    fn ident(&mut self) -> Result<Ident> {
        match self.peek().clone() {
            Tok::Ident(name) => {
                let pos = self.bump().1;
                Ok(Ident { name, pos })
            }
            _ => self.fail("identifier"),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<Pos> {
        match self.peek() {
            Tok::Ident(s) if s == kw => Ok(self.bump().1),
            _ => self.fail(&format!("`{kw}`")),
        }
    }

    fn int(&mut self) -> Result<BigInt> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(n)
            }
            _ => self.fail("integer"),
        }
    }

    pub fn document(&mut self) -> Result<Document> {
        let mut blocks = Vec::new();
        loop {
            match self.peek() {
                Tok::Eof if !blocks.is_empty() => break,
                Tok::Ident(s) if s == "algebra" => blocks.push(Block::Algebra(self.algebra()?)),
                Tok::Ident(s) if s == "morphism" => blocks.push(Block::Morphism(self.morphism()?)),
                _ => return self.fail("`algebra` or `morphism`"),
            }
        }
        Ok(Document { blocks })
    }

    fn algebra(&mut self) -> Result<AlgebraAst> {
        self.keyword("algebra")?;
        let name = self.ident()?;
        self.expect(Tok::LBrace)?;
        let mut decls = Vec::new();
        loop {
            match self.peek().clone() {
                Tok::RBrace => {
                    self.bump();
                    break;
                }
                Tok::Ident(s) if s == "generator" => {
                    let pos = self.bump().1;
                    let name = self.ident()?;
                    self.expect(Tok::Colon)?;
                    let negative = *self.peek() == Tok::Minus;
                    if negative {
                        self.bump();
                    }
                    let k = self.int()?;
                    self.expect(Tok::Semi)?;
                    decls.push(Decl::Generator { name, degree: if negative { -k } else { k }, pos });
                }
                Tok::Ident(s) if s == "d" => {
                    let pos = self.bump().1;
                    let target = self.ident()?;
                    self.expect(Tok::Eq)?;
                    let value = self.expr()?;
                    self.expect(Tok::Semi)?;
                    decls.push(Decl::Differential { target, value, pos });
                }
                _ => return self.fail("`generator`, `d` or `}`"),
            }
        }
        Ok(AlgebraAst { name, decls })
    }

    fn morphism(&mut self) -> Result<MorphismAst> {
        self.keyword("morphism")?;
        let name = self.ident()?;
        self.expect(Tok::Colon)?;
        let source = self.ident()?;
        self.expect(Tok::Arrow)?;
        let target = self.ident()?;
        self.expect(Tok::LBrace)?;
        let mut assigns = Vec::new();
        while *self.peek() != Tok::RBrace {
            let generator = self.ident()?;
            let pos = generator.pos;
            self.expect(Tok::MapsTo)?;
            let value = self.expr()?;
            self.expect(Tok::Semi)?;
            assigns.push(Assign { generator, value, pos });
        }
        self.bump();
        Ok(MorphismAst { name, source, target, assigns })
    }

    pub fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::Star {
            self.bump();
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let pos = self.pos();
        let k = self.int()?;
        let k = k.to_u32().ok_or(Error::Syntax {
            line: pos.line,
            column: pos.column,
            message: "exponent too large".into(),
        })?;
        Ok(Expr::Pow(Box::new(base), k))
    }

    fn atom(&mut self) -> Result<Expr> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                if *self.peek() == Tok::Slash {
                    self.bump();
                    let q = self.int()?;
                    return Ok(Expr::Rational(n, q, pos));
                }
                Ok(Expr::Int(n))
            }
            Tok::Ident(_) => Ok(Expr::Var(self.ident()?)),
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            _ => self.fail("expression"),
        }
    }

    pub fn finish(&mut self) -> Result<()> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            self.fail("end of input")
        }
    }
}

pub fn parse_presentation(src: &str) -> Result<Document> {
    let mut p = Parser::new(src)?;
    p.document()
}

pub fn parse_expression(src: &str) -> Result<Expr> {
    let mut p = Parser::new(src)?;
    let e = p.expr()?;
    p.finish()?;
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s2_block() {
        let d = parse_presentation("algebra S2 { generator x : 2; generator y : 3; d y = x^2; }").unwrap();
        let Block::Algebra(a) = &d.blocks[0] else { panic!() };
        assert_eq!(a.decls.len(), 3);
        let gens = a.decls.iter().filter(|d| matches!(d, Decl::Generator { .. })).count();
        assert_eq!(gens, 2);
    }

    #[test]
    fn positioned_syntax_error() {
        let e = parse_presentation("algebra A {\n  generator x 2;\n}").unwrap_err();
        assert_eq!(e, Error::Syntax { line: 2, column: 15, message: "expected `:`, found integer `2`".into() });
    }

    #[test]
    fn comments_and_rationals() {
        let d = parse_presentation(
            "# model\nalgebra A { generator x : 2; # trailing\n d x = 0; }\nmorphism f : A -> A { x |-> 1/2*x; }",
        )
        .unwrap();
        assert_eq!(d.blocks.len(), 2);
    }

    #[test]
    fn print_parse_round_trip() {
        for s in ["-(a + b)*c^2", "a - (b - c)", "(1/2)^3*x", "-x^2 - -y", "((x^2)^3)"] {
            let e = parse_expression(s).unwrap();
            let again = parse_expression(&e.to_string()).unwrap();
            assert_eq!(e, again, "{s} printed as {e}");
        }
    }
}

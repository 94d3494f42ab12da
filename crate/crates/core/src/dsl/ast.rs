use std::fmt;

use num_bigint::BigInt;

/// Source position; ignored by AST equality.
#[derive(Debug, Clone, Copy, Default)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

impl PartialEq for Pos {
    fn eq(&self, _: &Pos) -> bool {
        true
    }
}

impl Eq for Pos {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ident {
    pub name: String,
    pub pos: Pos,
}

impl Ident {
    pub fn new(name: impl Into<String>) -> Self {
        Ident { name: name.into(), pos: Pos::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    /// Literal `p/q`, kept unreduced.
    Rational(BigInt, BigInt, Pos),
    Var(Ident),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decl {
    Generator { name: Ident, degree: BigInt, pos: Pos },
    Differential { target: Ident, value: Expr, pos: Pos },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraAst {
    pub name: Ident,
    pub decls: Vec<Decl>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assign {
    pub generator: Ident,
    pub value: Expr,
    pub pos: Pos,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorphismAst {
    pub name: Ident,
    pub source: Ident,
    pub target: Ident,
    pub assigns: Vec<Assign>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Block {
    Algebra(AlgebraAst),
    Morphism(MorphismAst),
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Document {
    pub blocks: Vec<Block>,
}

// Precedence levels: 0 sum, 1 product, 2 unary, 3 atom.
fn level(e: &Expr) -> u8 {
    match e {
        Expr::Add(..) | Expr::Sub(..) => 0,
        Expr::Mul(..) => 1,
        Expr::Neg(_) => 2,
        Expr::Pow(..) => 3,
        Expr::Int(_) | Expr::Var(_) => 4,
        Expr::Rational(..) => 3,
    }
}

fn wrap(f: &mut fmt::Formatter<'_>, e: &Expr, min: u8) -> fmt::Result {
    if level(e) < min {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Int(n) => write!(f, "{n}"),
            Expr::Rational(p, q, _) => write!(f, "{p}/{q}"),
            Expr::Var(id) => f.write_str(&id.name),
            Expr::Neg(e) => {
                f.write_str("-")?;
                wrap(f, e, 2)
            }
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                wrap(f, a, 0)?;
                f.write_str(if matches!(self, Expr::Add(..)) { " + " } else { " - " })?;
                wrap(f, b, 1)
            }
            Expr::Mul(a, b) => {
                wrap(f, a, 1)?;
                f.write_str("*")?;
                wrap(f, b, 2)
            }
            Expr::Pow(b, k) => {
                wrap(f, b, 4)?;
                write!(f, "^{k}")
            }
        }
    }
}

impl fmt::Display for Document {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, b) in self.blocks.iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            match b {
                Block::Algebra(a) => {
                    writeln!(f, "algebra {} {{", a.name.name)?;
                    for d in &a.decls {
                        match d {
                            Decl::Generator { name, degree, .. } => {
                                writeln!(f, "  generator {} : {};", name.name, degree)?
                            }
                            Decl::Differential { target, value, .. } => {
                                writeln!(f, "  d {} = {};", target.name, value)?
                            }
                        }
                    }
                    writeln!(f, "}}")?;
                }
                Block::Morphism(m) => {
                    writeln!(f, "morphism {} : {} -> {} {{", m.name.name, m.source.name, m.target.name)?;
                    for a in &m.assigns {
                        writeln!(f, "  {} |-> {};", a.generator.name, a.value)?;
                    }
                    writeln!(f, "}}")?;
                }
            }
        }
        Ok(())
    }
}

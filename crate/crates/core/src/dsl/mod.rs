//! A small expression language for user-supplied scalar functions.
//!
//! Expressions range over indexed variables `x[i]`, `y[i]`, `z[i]` (the
//! three arguments of a candidate solution) or `s[i]` (the argument of a
//! `ψ` function), decimal literals, the constants `e` and `pi`, the
//! operators `+ - * / ^`, and the functions `ln`, `log2`, `log10`, `exp`,
//! `abs`.
//!
//! ```text
//! expr  := term (("+"|"-") term)*
//! term  := unary (("*"|"/") unary)*
//! unary := "-" unary | power
//! power := atom ("^" unary)?
//! atom  := number | const | var | func "(" expr ")" | "(" expr ")"
//! var   := ("x"|"y"|"z"|"s") "[" integer "]"
//! ```
//!
//! `^` is right-associative and binds tighter than unary minus, so `-2^2`
//! is `-4`.

mod eval;
mod lexer;
mod parser;
mod print;

use std::fmt;

use thiserror::Error;

pub use eval::Bindings;

/// Variable families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VarName {
    X,
    Y,
    Z,
    S,
}

impl VarName {
    pub fn as_str(self) -> &'static str {
        match self {
            VarName::X => "x",
            VarName::Y => "y",
            VarName::Z => "z",
            VarName::S => "s",
        }
    }

    fn from_ident(s: &str) -> Option<Self> {
        Some(match s {
            "x" => VarName::X,
            "y" => VarName::Y,
            "z" => VarName::Z,
            "s" => VarName::S,
            _ => return None,
        })
    }
}

impl fmt::Display for VarName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Variables visible to a `ψ` expression.
pub const PSI_VARS: &[VarName] = &[VarName::S];
/// Variables visible to a candidate solution `f(x, y, z)`.
pub const TRIPLE_VARS: &[VarName] = &[VarName::X, VarName::Y, VarName::Z];
/// Variables visible to a two-argument map `A(x, y)`.
pub const PAIR_VARS: &[VarName] = &[VarName::X, VarName::Y];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Constant {
    E,
    Pi,
}

impl Constant {
    pub fn value(self) -> f64 {
        match self {
            Constant::E => std::f64::consts::E,
            Constant::Pi => std::f64::consts::PI,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Constant::E => "e",
            Constant::Pi => "pi",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Ln,
    Log2,
    Log10,
    Exp,
    Abs,
}

impl Func {
    pub const ALL: [Func; 5] = [Func::Ln, Func::Log2, Func::Log10, Func::Exp, Func::Abs];

    pub fn as_str(self) -> &'static str {
        match self {
            Func::Ln => "ln",
            Func::Log2 => "log2",
            Func::Log10 => "log10",
            Func::Exp => "exp",
            Func::Abs => "abs",
        }
    }

    fn from_ident(s: &str) -> Option<Self> {
        Func::ALL.into_iter().find(|f| f.as_str() == s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

/// Expression tree.
#[derive(Debug, Clone, PartialEq)]
pub enum Node {
    Num(f64),
    Const(Constant),
    Var(VarName, usize),
    Neg(Box<Node>),
    Binary(BinOp, Box<Node>, Box<Node>),
    Call(Func, Box<Node>),
}

impl Node {
    pub fn binary(op: BinOp, l: Node, r: Node) -> Node {
        Node::Binary(op, Box::new(l), Box::new(r))
    }

    pub fn call(f: Func, arg: Node) -> Node {
        Node::Call(f, Box::new(arg))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(e: Node) -> Node {
        Node::Neg(Box::new(e))
    }

    fn visit_vars(&self, out: &mut impl FnMut(VarName, usize)) {
        match self {
            Node::Var(v, i) => out(*v, *i),
            Node::Num(_) | Node::Const(_) => {}
            Node::Neg(e) | Node::Call(_, e) => e.visit_vars(out),
            Node::Binary(_, l, r) => {
                l.visit_vars(out);
                r.visit_vars(out);
            }
        }
    }
}

/// A parsed expression together with the dimension it was checked against.
#[derive(Debug, Clone, PartialEq)]
pub struct Expr {
    root: Node,
    k: usize,
}

impl Expr {
    /// Parses `source`, checking every variable index against `k` and every
    /// variable family against `allowed`.
    pub fn parse(source: &str, k: usize, allowed: &[VarName]) -> Result<Self, ParseError> {
        let root = parser::parse(source, k, allowed)?;
        Ok(Self { root, k })
    }

    /// Wraps a tree built directly, validating it the same way `parse` does.
    pub fn from_node(root: Node, k: usize, allowed: &[VarName]) -> Result<Self, ParseError> {
        let mut bad = None;
        root.visit_vars(&mut |v, i| {
            if bad.is_none() && (!allowed.contains(&v) || i >= k) {
                bad = Some((v, i));
            }
        });
        match bad {
            Some((v, _)) if !allowed.contains(&v) => Err(ParseError::new(
                1,
                1,
                ParseErrorKind::DisallowedVariable(v.to_string()),
            )),
            Some((v, i)) => Err(ParseError::new(
                1,
                1,
                ParseErrorKind::IndexOutOfRange {
                    var: v.to_string(),
                    index: i,
                    k,
                },
            )),
            None => Ok(Self { root, k }),
        }
    }

    pub fn root(&self) -> &Node {
        &self.root
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// True if any occurrence of `v` appears.
    pub fn uses(&self, v: VarName) -> bool {
        let mut found = false;
        self.root.visit_vars(&mut |w, _| found |= w == v);
        found
    }

    pub fn eval(&self, bindings: &Bindings<'_>) -> Result<f64, EvalError> {
        eval::eval(&self.root, bindings)
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.root.fmt(f)
    }
}

/// Free-function form of [`Expr::parse`].
pub fn parse(source: &str, k: usize, allowed: &[VarName]) -> Result<Expr, ParseError> {
    Expr::parse(source, k, allowed)
}

/// Free-function form of [`Expr::eval`].
pub fn eval(e: &Expr, bindings: &Bindings<'_>) -> Result<f64, EvalError> {
    e.eval(bindings)
}

/// A syntax or validation error with a 1-based source position.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

impl ParseError {
    pub(crate) fn new(line: usize, column: usize, kind: ParseErrorKind) -> Self {
        Self { line, column, kind }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseErrorKind {
    #[error("empty expression")]
    Empty,
    #[error("unexpected character {0:?}")]
    UnexpectedChar(char),
    #[error("invalid number literal {0:?}")]
    InvalidNumber(String),
    #[error("expected {expected}, found {found}")]
    Unexpected { expected: String, found: String },
    #[error("unknown identifier {0:?}")]
    UnknownIdentifier(String),
    #[error("variable {0} is not available in this context")]
    DisallowedVariable(String),
    #[error("index {index} of {var} is out of range for dimension {k}")]
    IndexOutOfRange { var: String, index: usize, k: usize },
    #[error("expression nested too deeply")]
    TooDeep,
}

/// An evaluation failure, carrying the offending subexpression.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("{kind} in `{subexpr}`")]
pub struct EvalError {
    pub kind: EvalErrorKind,
    pub subexpr: String,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalErrorKind {
    #[error("logarithm of nonpositive value {0}")]
    LogNonPositive(f64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero raised to negative power {0}")]
    ZeroToNegative(f64),
    #[error("negative base {base} with non-integer exponent {exp}")]
    NegativeBase { base: f64, exp: f64 },
    #[error("non-finite result")]
    NonFinite,
    #[error("variable {0} is not bound")]
    Unbound(VarName),
    #[error("index {index} out of range for bound {var} of length {len}")]
    Index { var: VarName, index: usize, len: usize },
}

#[cfg(test)]
mod tests;

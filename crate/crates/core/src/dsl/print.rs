//! Precedence-aware printing. The output re-parses to the same tree.

use std::fmt;

use super::{BinOp, Node};

// Binding strength, loosest first.
const SUM: u8 = 1;
const PRODUCT: u8 = 2;
const UNARY: u8 = 3;
const POWER: u8 = 4;
const ATOM: u8 = 5;

impl Node {
    fn level(&self) -> u8 {
        match self {
            Node::Binary(BinOp::Add | BinOp::Sub, ..) => SUM,
            Node::Binary(BinOp::Mul | BinOp::Div, ..) => PRODUCT,
            Node::Neg(_) => UNARY,
            Node::Binary(BinOp::Pow, ..) => POWER,
            Node::Num(_) | Node::Const(_) | Node::Var(..) | Node::Call(..) => ATOM,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.level() < min {
            write!(f, "(")?;
            self.write_at(f, SUM)?;
            return write!(f, ")");
        }
        match self {
            Node::Num(v) => write!(f, "{v:?}"),
            Node::Const(c) => f.write_str(c.as_str()),
            Node::Var(v, i) => write!(f, "{v}[{i}]"),
            Node::Neg(e) => {
                write!(f, "-")?;
                e.write_at(f, UNARY)
            }
            Node::Call(func, arg) => {
                write!(f, "{}(", func.as_str())?;
                arg.write_at(f, SUM)?;
                write!(f, ")")
            }
            Node::Binary(op, l, r) => {
                let (sym, lmin, rmin) = match op {
                    BinOp::Add => (" + ", SUM, PRODUCT),
                    BinOp::Sub => (" - ", SUM, PRODUCT),
                    BinOp::Mul => ("*", PRODUCT, UNARY),
                    BinOp::Div => ("/", PRODUCT, UNARY),
                    BinOp::Pow => ("^", ATOM, UNARY),
                };
                l.write_at(f, lmin)?;
                f.write_str(sym)?;
                r.write_at(f, rmin)
            }
        }
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, SUM)
    }
}

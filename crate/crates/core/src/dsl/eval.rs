use super::{BinOp, EvalError, EvalErrorKind, Func, Node, VarName};

/// Values for the variable families an expression may reference.
#[derive(Debug, Clone, Copy, Default)]
pub struct Bindings<'a> {
    pub x: Option<&'a [f64]>,
    pub y: Option<&'a [f64]>,
    pub z: Option<&'a [f64]>,
    pub s: Option<&'a [f64]>,
}

impl<'a> Bindings<'a> {
    pub fn psi(s: &'a [f64]) -> Self {
        Self {
            s: Some(s),
            ..Self::default()
        }
    }

    pub fn triple(x: &'a [f64], y: &'a [f64], z: &'a [f64]) -> Self {
        Self {
            x: Some(x),
            y: Some(y),
            z: Some(z),
            s: None,
        }
    }

    pub fn pair(x: &'a [f64], y: &'a [f64]) -> Self {
        Self {
            x: Some(x),
            y: Some(y),
            ..Self::default()
        }
    }

    fn get(&self, v: VarName) -> Option<&'a [f64]> {
        match v {
            VarName::X => self.x,
            VarName::Y => self.y,
            VarName::Z => self.z,
            VarName::S => self.s,
        }
    }
}

fn fail(kind: EvalErrorKind, node: &Node) -> EvalError {
    EvalError {
        kind,
        subexpr: node.to_string(),
    }
}

pub(super) fn eval(node: &Node, b: &Bindings<'_>) -> Result<f64, EvalError> {
    let v = match node {
        Node::Num(v) => *v,
        Node::Const(c) => c.value(),
        Node::Var(name, i) => {
            let vals = b
                .get(*name)
                .ok_or_else(|| fail(EvalErrorKind::Unbound(*name), node))?;
            *vals.get(*i).ok_or_else(|| {
                fail(
                    EvalErrorKind::Index {
                        var: *name,
                        index: *i,
                        len: vals.len(),
                    },
                    node,
                )
            })?
        }
        Node::Neg(e) => -eval(e, b)?,
        Node::Call(func, arg) => {
            let a = eval(arg, b)?;
            match func {
                Func::Ln | Func::Log2 | Func::Log10 if a <= 0.0 => {
                    return Err(fail(EvalErrorKind::LogNonPositive(a), node))
                }
                Func::Ln => a.ln(),
                Func::Log2 => a.log2(),
                Func::Log10 => a.log10(),
                Func::Exp => a.exp(),
                Func::Abs => a.abs(),
            }
        }
        Node::Binary(op, l, r) => {
            // Left operand first, always.
            let lv = eval(l, b)?;
            let rv = eval(r, b)?;
            match op {
                BinOp::Add => lv + rv,
                BinOp::Sub => lv - rv,
                BinOp::Mul => lv * rv,
                BinOp::Div => {
                    if rv == 0.0 {
                        return Err(fail(EvalErrorKind::DivisionByZero, node));
                    }
                    lv / rv
                }
                BinOp::Pow => {
                    if lv == 0.0 && rv < 0.0 {
                        return Err(fail(EvalErrorKind::ZeroToNegative(rv), node));
                    }
                    if lv < 0.0 && rv.fract() != 0.0 {
                        return Err(fail(
                            EvalErrorKind::NegativeBase { base: lv, exp: rv },
                            node,
                        ));
                    }
                    lv.powf(rv)
                }
            }
        }
    };
    if !v.is_finite() {
        return Err(fail(EvalErrorKind::NonFinite, node));
    }
    Ok(v)
}

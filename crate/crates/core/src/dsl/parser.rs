use super::lexer::{tokenize, Spanned, Tok};
use super::{BinOp, Constant, Func, Node, ParseError, ParseErrorKind, VarName};

const MAX_DEPTH: usize = 200;

pub(super) fn parse(src: &str, k: usize, allowed: &[VarName]) -> Result<Node, ParseError> {
    let toks = tokenize(src)?;
    if matches!(toks[0].tok, Tok::Eof) {
        return Err(ParseError::new(1, 1, ParseErrorKind::Empty));
    }
    let mut p = Parser {
        toks,
        pos: 0,
        depth: 0,
        k,
        allowed,
    };
    let node = p.expr()?;
    p.expect(Tok::Eof, "an operator or end of input")?;
    Ok(node)
}

struct Parser<'a> {
    toks: Vec<Spanned>,
    pos: usize,
    depth: usize,
    k: usize,
    allowed: &'a [VarName],
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn here(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if !matches!(t.tok, Tok::Eof) {
            self.pos += 1;
        }
        t
    }

    fn error_here(&self, kind: ParseErrorKind) -> ParseError {
        let s = self.here();
        ParseError::new(s.line, s.column, kind)
    }

    fn unexpected(&self, expected: &str) -> ParseError {
        self.error_here(ParseErrorKind::Unexpected {
            expected: expected.to_string(),
            found: self.peek().describe(),
        })
    }

    fn expect(&mut self, tok: Tok, expected: &str) -> Result<Spanned, ParseError> {
        if *self.peek() == tok {
            Ok(self.bump())
        } else {
            Err(self.unexpected(expected))
        }
    }

    fn enter(&mut self) -> Result<(), ParseError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(self.error_here(ParseErrorKind::TooDeep));
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<Node, ParseError> {
        self.enter()?;
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Tok::Plus => BinOp::Add,
                Tok::Minus => BinOp::Sub,
                _ => break,
            };
            self.bump();
            let rhs = self.term()?;
            lhs = Node::binary(op, lhs, rhs);
        }
        self.depth -= 1;
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Node, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Tok::Star => BinOp::Mul,
                Tok::Slash => BinOp::Div,
                _ => break,
            };
            self.bump();
            let rhs = self.unary()?;
            lhs = Node::binary(op, lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Node, ParseError> {
        self.enter()?;
        let node = if *self.peek() == Tok::Minus {
            self.bump();
            Node::neg(self.unary()?)
        } else {
            self.power()?
        };
        self.depth -= 1;
        Ok(node)
    }

    fn power(&mut self) -> Result<Node, ParseError> {
        let base = self.atom()?;
        if *self.peek() == Tok::Caret {
            self.bump();
            let exp = self.unary()?;
            return Ok(Node::binary(BinOp::Pow, base, exp));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Node, ParseError> {
        let start = self.here().clone();
        match start.tok {
            Tok::Num(v) => {
                self.bump();
                Ok(Node::Num(v))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(inner)
            }
            Tok::Ident(ref name) => {
                self.bump();
                if let Some(f) = Func::from_ident(name) {
                    self.expect(Tok::LParen, &format!("'(' after {name}"))?;
                    let arg = self.expr()?;
                    self.expect(Tok::RParen, "')'")?;
                    return Ok(Node::call(f, arg));
                }
                match name.as_str() {
                    "e" => return Ok(Node::Const(Constant::E)),
                    "pi" => return Ok(Node::Const(Constant::Pi)),
                    _ => {}
                }
                let Some(var) = VarName::from_ident(name) else {
                    return Err(ParseError::new(
                        start.line,
                        start.column,
                        ParseErrorKind::UnknownIdentifier(name.clone()),
                    ));
                };
                self.expect(Tok::LBracket, &format!("'[' after {name}"))?;
                let idx_tok = self.here().clone();
                let index = match idx_tok.tok {
                    Tok::Num(v) if v >= 0.0 && v.fract() == 0.0 && v < 1e9 => v as usize,
                    _ => return Err(self.unexpected("a nonnegative integer index")),
                };
                self.bump();
                self.expect(Tok::RBracket, "']'")?;
                if !self.allowed.contains(&var) {
                    return Err(ParseError::new(
                        start.line,
                        start.column,
                        ParseErrorKind::DisallowedVariable(var.to_string()),
                    ));
                }
                if index >= self.k {
                    return Err(ParseError::new(
                        idx_tok.line,
                        idx_tok.column,
                        ParseErrorKind::IndexOutOfRange {
                            var: var.to_string(),
                            index,
                            k: self.k,
                        },
                    ));
                }
                Ok(Node::Var(var, index))
            }
            _ => Err(self.unexpected("a number, variable, constant, function, or '('")),
        }
    }
}

//! The cobordism expression language.
//!
//! ```text
//! expr   := term { ";" term }
//! term   := factor { "*" factor }
//! factor := "id" | "unit" | "counit" | "mul" | "comul" | "swap"
//!         | "surf" "(" int "," int "," int ")" | "(" expr ")"
//! ```
//!
//! Whitespace-insensitive; `;` binds looser than `*` and reads
//! left-to-right in diagram order, so `Z(a ; b) = Z(b) · Z(a)`.

use thiserror::Error;

use crate::cobordism::{Cobordism, Generator};

#[derive(Debug, Error)]
pub enum DslError {
    #[error("syntax error at line {line}, column {col}: {message}")]
    Syntax { line: usize, col: usize, message: String },

    #[error("arity error at line {line}, column {col}: cannot compose `{left}` ({left_inputs}→{left_outputs}) with `{right}` ({right_inputs}→{right_outputs}): {left_outputs} outputs feed {right_inputs} inputs")]
    Arity {
        left: String,
        left_inputs: usize,
        left_outputs: usize,
        right: String,
        right_inputs: usize,
        right_outputs: usize,
        line: usize,
        col: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Span {
    pub line: usize,
    pub col: usize,
}

#[derive(Clone, Debug)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ExprKind {
    Gen(Generator),
    Tensor(Box<Expr>, Box<Expr>),
    Seq(Box<Expr>, Box<Expr>),
    Surface { genus: u32, inputs: usize, outputs: usize },
}

// equality ignores spans: two parses of the same text are equal
impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}
impl Eq for Expr {}

impl Expr {
    /// (inputs, outputs) after checking composability throughout.
    pub fn arity(&self) -> Result<(usize, usize), DslError> {
        match &self.kind {
            ExprKind::Gen(g) => Ok(g.arity()),
            ExprKind::Surface { inputs, outputs, .. } => Ok((*inputs, *outputs)),
            ExprKind::Tensor(l, r) => {
                let (li, lo) = l.arity()?;
                let (ri, ro) = r.arity()?;
                Ok((li + ri, lo + ro))
            }
            ExprKind::Seq(l, r) => {
                let (li, lo) = l.arity()?;
                let (ri, ro) = r.arity()?;
                if lo != ri {
                    return Err(DslError::Arity {
                        left: l.pretty(),
                        left_inputs: li,
                        left_outputs: lo,
                        right: r.pretty(),
                        right_inputs: ri,
                        right_outputs: ro,
                        line: r.span.line,
                        col: r.span.col,
                    });
                }
                Ok((li, ro))
            }
        }
    }

    pub fn to_cobordism(&self) -> Result<Cobordism, DslError> {
        self.arity()?;
        Ok(self.build())
    }

    fn build(&self) -> Cobordism {
        match &self.kind {
            ExprKind::Gen(g) => Cobordism::generator(*g),
            ExprKind::Surface { genus, inputs, outputs } => {
                Cobordism::surface(*genus, *inputs, *outputs)
            }
            ExprKind::Tensor(l, r) => l.build().tensor(&r.build()),
            ExprKind::Seq(l, r) => {
                l.build().compose(&r.build()).expect("arity was checked before building")
            }
        }
    }

    /// Prints with the fewest parentheses that still reparse identically.
    pub fn pretty(&self) -> String {
        match &self.kind {
            ExprKind::Gen(g) => g.name().to_string(),
            ExprKind::Surface { genus, inputs, outputs } => {
                format!("surf({genus},{inputs},{outputs})")
            }
            ExprKind::Tensor(l, r) => {
                let left = match l.kind {
                    ExprKind::Seq(..) => format!("({})", l.pretty()),
                    _ => l.pretty(),
                };
                let right = match r.kind {
                    ExprKind::Seq(..) | ExprKind::Tensor(..) => format!("({})", r.pretty()),
                    _ => r.pretty(),
                };
                format!("{left} * {right}")
            }
            ExprKind::Seq(l, r) => {
                let left = l.pretty();
                let right = match r.kind {
                    ExprKind::Seq(..) => format!("({})", r.pretty()),
                    _ => r.pretty(),
                };
                format!("{left} ; {right}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(u64),
    Star,
    Semi,
    LParen,
    RParen,
    Comma,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn tokenize(src: &str) -> Result<Vec<Token>, DslError> {
    let mut out = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = src.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (tline, tcol) = (line, col);
        match c {
            '\n' => {
                chars.next();
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => {
                chars.next();
                col += 1;
            }
            '*' | ';' | '(' | ')' | ',' => {
                chars.next();
                col += 1;
                let tok = match c {
                    '*' => Tok::Star,
                    ';' => Tok::Semi,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    _ => Tok::Comma,
                };
                out.push(Token { tok, line: tline, col: tcol });
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut ident = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        ident.push(c);
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                out.push(Token { tok: Tok::Ident(ident), line: tline, col: tcol });
            }
            c if c.is_ascii_digit() => {
                let mut value = 0u64;
                while let Some(&c) = chars.peek() {
                    if let Some(d) = c.to_digit(10) {
                        value = value
                            .checked_mul(10)
                            .and_then(|v| v.checked_add(d as u64))
                            .ok_or_else(|| DslError::Syntax {
                                line: tline,
                                col: tcol,
                                message: "integer literal too large".into(),
                            })?;
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                out.push(Token { tok: Tok::Int(value), line: tline, col: tcol });
            }
            other => {
                return Err(DslError::Syntax {
                    line,
                    col,
                    message: format!("unexpected character '{other}'"),
                })
            }
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    end: Span,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), DslError> {
        match self.next() {
            Some(t) if t.tok == tok => Ok(()),
            Some(t) => Err(DslError::Syntax {
                line: t.line,
                col: t.col,
                message: format!("expected {what}, found {:?}", t.tok),
            }),
            None => {
                Err(DslError::Syntax { line: self.end.line, col: self.end.col, message: format!("expected {what}, found end of input") })
            }
        }
    }

    fn int(&mut self, what: &str) -> Result<u64, DslError> {
        match self.next() {
            Some(Token { tok: Tok::Int(v), .. }) => Ok(v),
            Some(t) => Err(DslError::Syntax {
                line: t.line,
                col: t.col,
                message: format!("expected {what}, found {:?}", t.tok),
            }),
            None => {
                Err(DslError::Syntax { line: self.end.line, col: self.end.col, message: format!("expected {what}, found end of input") })
            }
        }
    }

    fn expr(&mut self) -> Result<Expr, DslError> {
        let mut node = self.term()?;
        while matches!(self.peek(), Some(Token { tok: Tok::Semi, .. })) {
            self.next();
            let rhs = self.term()?;
            let span = node.span;
            node = Expr { kind: ExprKind::Seq(Box::new(node), Box::new(rhs)), span };
        }
        Ok(node)
    }

    fn term(&mut self) -> Result<Expr, DslError> {
        let mut node = self.factor()?;
        while matches!(self.peek(), Some(Token { tok: Tok::Star, .. })) {
            self.next();
            let rhs = self.factor()?;
            let span = node.span;
            node = Expr { kind: ExprKind::Tensor(Box::new(node), Box::new(rhs)), span };
        }
        Ok(node)
    }

    fn factor(&mut self) -> Result<Expr, DslError> {
        let token = self.next().ok_or_else(|| DslError::Syntax {
            line: self.end.line,
            col: self.end.col,
            message: "expected an expression, found end of input".into(),
        })?;
        let span = Span { line: token.line, col: token.col };
        match token.tok {
            Tok::Ident(name) => {
                let gen = match name.as_str() {
                    "id" => Some(Generator::Id),
                    "unit" => Some(Generator::Unit),
                    "counit" => Some(Generator::Counit),
                    "mul" => Some(Generator::Mul),
                    "comul" => Some(Generator::Comul),
                    "swap" => Some(Generator::Swap),
                    _ => None,
                };
                if let Some(g) = gen {
                    return Ok(Expr { kind: ExprKind::Gen(g), span });
                }
                if name == "surf" {
                    self.expect(Tok::LParen, "'(' after surf")?;
                    let genus = self.int("genus")?;
                    self.expect(Tok::Comma, "','")?;
                    let inputs = self.int("input count")?;
                    self.expect(Tok::Comma, "','")?;
                    let outputs = self.int("output count")?;
                    self.expect(Tok::RParen, "')'")?;
                    let too_large = |what: &str| DslError::Syntax {
                        line: span.line,
                        col: span.col,
                        message: format!("{what} too large"),
                    };
                    let genus = u32::try_from(genus).map_err(|_| too_large("genus"))?;
                    if inputs > 10_000 || outputs > 10_000 {
                        return Err(too_large("boundary count"));
                    }
                    return Ok(Expr {
                        kind: ExprKind::Surface {
                            genus,
                            inputs: inputs as usize,
                            outputs: outputs as usize,
                        },
                        span,
                    });
                }
                Err(DslError::Syntax {
                    line: span.line,
                    col: span.col,
                    message: format!(
                        "unknown generator `{name}` (expected id, unit, counit, mul, comul, swap, or surf)"
                    ),
                })
            }
            Tok::LParen => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(inner)
            }
            other => Err(DslError::Syntax {
                line: span.line,
                col: span.col,
                message: format!("expected an expression, found {other:?}"),
            }),
        }
    }
}

pub fn parse(src: &str) -> Result<Expr, DslError> {
    let tokens = tokenize(src)?;
    let lines = src.lines().count().max(1);
    let last_col = src.lines().last().map_or(1, |l| l.chars().count() + 1);
    let mut parser = Parser { tokens, pos: 0, end: Span { line: lines, col: last_col } };
    let expr = parser.expr()?;
    if let Some(tok) = parser.peek() {
        return Err(DslError::Syntax {
            line: tok.line,
            col: tok.col,
            message: format!("unexpected {:?} after expression", tok.tok),
        });
    }
    Ok(expr)
}

//! Lexer and recursive-descent parser for diagram expressions.
//!
//! ```text
//! expr   := term { ";" term }
//! term   := factor { "*" factor }
//! factor := prim | IDENT | "(" expr ")"
//! prim   := "id(" INT ")" | "cup(" INT ")" | "cap(" INT ")"
//!         | "swap(" INT "," INT ")"
//! ```
//!
//! `IDENT` is `[A-Za-z_][A-Za-z0-9_]*`, `INT` a positive decimal integer;
//! whitespace is insignificant and `#` comments run to the end of the line.
//! Both operators associate to the left, `*` binding tighter than `;`.

use super::{DiagramError, Expr, ExprKind, Span};

#[derive(Clone, Debug, PartialEq)]
enum TokKind {
    Semi,
    Star,
    LParen,
    RParen,
    Comma,
    Ident(String),
    Int(usize),
    Eof,
}

impl TokKind {
    fn describe(&self) -> String {
        match self {
            TokKind::Semi => "';'".to_string(),
            TokKind::Star => "'*'".to_string(),
            TokKind::LParen => "'('".to_string(),
            TokKind::RParen => "')'".to_string(),
            TokKind::Comma => "','".to_string(),
            TokKind::Ident(name) => format!("identifier '{name}'"),
            TokKind::Int(n) => format!("integer {n}"),
            TokKind::Eof => "end of input".to_string(),
        }
    }
}

#[derive(Clone, Debug)]
struct Token {
    kind: TokKind,
    line: usize,
    col: usize,
}

fn lex(input: &str) -> Result<Vec<Token>, DiagramError> {
    let mut tokens = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = input.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            '\n' => {
                chars.next();
                line += 1;
                col = 1;
            }
            _ if c.is_whitespace() => {
                chars.next();
                col += 1;
            }
            '#' => {
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    chars.next();
                    col += 1;
                }
            }
            ';' | '*' | '(' | ')' | ',' => {
                let kind = match c {
                    ';' => TokKind::Semi,
                    '*' => TokKind::Star,
                    '(' => TokKind::LParen,
                    ')' => TokKind::RParen,
                    _ => TokKind::Comma,
                };
                tokens.push(Token { kind, line, col });
                chars.next();
                col += 1;
            }
            _ if c.is_ascii_digit() => {
                let start_col = col;
                let mut digits = String::new();
                while let Some(&c) = chars.peek() {
                    if !c.is_ascii_digit() {
                        break;
                    }
                    digits.push(c);
                    chars.next();
                    col += 1;
                }
                let value = digits.parse::<usize>().map_err(|_| DiagramError::Lex {
                    line,
                    col: start_col,
                    message: format!("integer literal '{digits}' is too large"),
                })?;
                tokens.push(Token {
                    kind: TokKind::Int(value),
                    line,
                    col: start_col,
                });
            }
            _ if c.is_ascii_alphabetic() || c == '_' => {
                let start_col = col;
                let mut name = String::new();
                while let Some(&c) = chars.peek() {
                    if !(c.is_ascii_alphanumeric() || c == '_') {
                        break;
                    }
                    name.push(c);
                    chars.next();
                    col += 1;
                }
                tokens.push(Token {
                    kind: TokKind::Ident(name),
                    line,
                    col: start_col,
                });
            }
            _ => {
                return Err(DiagramError::Lex {
                    line,
                    col,
                    message: format!("unexpected character {c:?}"),
                });
            }
        }
    }
    tokens.push(Token {
        kind: TokKind::Eof,
        line,
        col,
    });
    Ok(tokens)
}

/// Parses one diagram expression spanning the whole input.
pub fn parse(input: &str) -> Result<Expr, DiagramError> {
    let tokens = lex(input)?;
    let mut parser = Parser { tokens, pos: 0 };
    let expr = parser.expr()?;
    let trailing = parser.peek().clone();
    if trailing.kind != TokKind::Eof {
        return Err(DiagramError::Syntax {
            line: trailing.line,
            col: trailing.col,
            expected: vec!["';'".into(), "'*'".into(), "end of input".into()],
            found: trailing.kind.describe(),
        });
    }
    Ok(expr)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn advance(&mut self) -> Token {
        let token = self.tokens[self.pos].clone();
        if token.kind != TokKind::Eof {
            self.pos += 1;
        }
        token
    }

    fn expr(&mut self) -> Result<Expr, DiagramError> {
        let mut expr = self.term()?;
        while self.peek().kind == TokKind::Semi {
            let op = self.advance();
            let right = self.term()?;
            expr = Expr {
                kind: ExprKind::Seq(Box::new(expr), Box::new(right)),
                span: Span {
                    line: op.line,
                    col: op.col,
                },
            };
        }
        Ok(expr)
    }

    fn term(&mut self) -> Result<Expr, DiagramError> {
        let mut expr = self.factor()?;
        while self.peek().kind == TokKind::Star {
            let op = self.advance();
            let right = self.factor()?;
            expr = Expr {
                kind: ExprKind::Tensor(Box::new(expr), Box::new(right)),
                span: Span {
                    line: op.line,
                    col: op.col,
                },
            };
        }
        Ok(expr)
    }

    fn factor(&mut self) -> Result<Expr, DiagramError> {
        let token = self.advance();
        match token.kind {
            TokKind::LParen => {
                let expr = self.expr()?;
                self.expect(&TokKind::RParen)?;
                Ok(expr)
            }
            TokKind::Ident(name) => {
                let span = Span {
                    line: token.line,
                    col: token.col,
                };
                match name.as_str() {
                    "id" => self.prim_one(span, ExprKind::Id),
                    "cup" => self.prim_one(span, ExprKind::Cup),
                    "cap" => self.prim_one(span, ExprKind::Cap),
                    "swap" => {
                        self.expect(&TokKind::LParen)?;
                        let p = self.positive_int()?;
                        self.expect(&TokKind::Comma)?;
                        let q = self.positive_int()?;
                        self.expect(&TokKind::RParen)?;
                        Ok(Expr {
                            kind: ExprKind::Swap(p, q),
                            span,
                        })
                    }
                    _ => Ok(Expr {
                        kind: ExprKind::Named(name),
                        span,
                    }),
                }
            }
            other => Err(DiagramError::Syntax {
                line: token.line,
                col: token.col,
                expected: vec!["'('".into(), "identifier".into()],
                found: other.describe(),
            }),
        }
    }

    fn prim_one(&mut self, span: Span, build: fn(usize) -> ExprKind) -> Result<Expr, DiagramError> {
        self.expect(&TokKind::LParen)?;
        let dim = self.positive_int()?;
        self.expect(&TokKind::RParen)?;
        Ok(Expr {
            kind: build(dim),
            span,
        })
    }

    fn positive_int(&mut self) -> Result<usize, DiagramError> {
        let token = self.advance();
        match token.kind {
            TokKind::Int(0) => Err(DiagramError::NonPositiveDim {
                line: token.line,
                col: token.col,
            }),
            TokKind::Int(n) => Ok(n),
            other => Err(DiagramError::Syntax {
                line: token.line,
                col: token.col,
                expected: vec!["an integer".into()],
                found: other.describe(),
            }),
        }
    }

    fn expect(&mut self, kind: &TokKind) -> Result<Token, DiagramError> {
        let token = self.advance();
        if token.kind == *kind {
            Ok(token)
        } else {
            Err(DiagramError::Syntax {
                line: token.line,
                col: token.col,
                expected: vec![kind.describe()],
                found: token.kind.describe(),
            })
        }
    }
}

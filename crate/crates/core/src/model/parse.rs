//! Parser for the structure-equation model language (`.geo` files).
//!
//! Statement forms:
//! ```text
//! frame e1 e2 e3 e4 e5
//! covector dt : dt                  # mark a covector as distinguished (dt | theta)
//! param a b != 0                    # parameters; optional nonvanishing note
//! scalar w ddt = 1/(2*w^2) d = 1/(2*w^2)*dt
//! d e5 = l*e1^e2 + e3^e4
//! endo I : e1 -> -e2, e2 -> e1, e5 -> 0
//! vector xi = e5
//! metric g = diag(1, 1, 1, 1, 1)    # or: metric g = orthonormal
//! form omega = -e1^e2 - e3^e4
//! contact S : I = I, xi = xi, eta = eta, g = g
//! hermitian H : J = J, h = g
//! su2 Q : eta = eta, omega1 = o1, omega2 = o2, omega3 = o3, g = g
//! su3 X : F = F, psi_plus = pp, psi_minus = pm, J = J
//! triple T : c1 = S1, c2 = S2, c3 = S3
//! family FAM : eta = eta, omega1 = o1, omega2 = o2, omega3 = o3, g = g
//! sample a = 3/2
//! ```
//! `#` starts a comment. Coefficients are rational expressions in the declared
//! symbols with `+ - * / ^` and integer (possibly negative) exponents.

use std::fmt;

#[derive(Clone, Debug, PartialEq)]
pub struct Span {
    pub line: usize,
    pub col: usize,
}

#[derive(Clone, Debug)]
pub struct ParseError {
    pub span: Span,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.span.line, self.span.col, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq)]
pub enum Token {
    Ident(String),
    Number(i64),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Wedge, // '^' doubles as wedge in form context; disambiguated by parser
    LParen,
    RParen,
    Comma,
    Colon,
    Equals,
    Arrow,
    Bang,
    Eof,
}

pub struct Lexer<'a> {
    src: &'a str,
    chars: std::iter::Peekable<std::str::CharIndices<'a>>,
    line: usize,
    col: usize,
}

#[derive(Clone, Debug)]
pub struct Spanned {
    pub token: Token,
    pub span: Span,
}

impl<'a> Lexer<'a> {
    pub fn new(src: &'a str) -> Lexer<'a> {
        Lexer {
            src,
            chars: src.char_indices().peekable(),
            line: 1,
            col: 1,
        }
    }

    fn bump(&mut self) -> Option<char> {
        let (_, c) = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn peek(&mut self) -> Option<char> {
        self.chars.peek().map(|&(_, c)| c)
    }

    pub fn tokenize(mut self) -> Result<Vec<Spanned>, ParseError> {
        let mut out = Vec::new();
        loop {
            // skip whitespace and comments
            loop {
                match self.peek() {
                    Some(c) if c.is_whitespace() => {
                        self.bump();
                    }
                    Some('#') => {
                        while let Some(c) = self.peek() {
                            if c == '\n' {
                                break;
                            }
                            self.bump();
                        }
                    }
                    _ => break,
                }
            }
            let span = Span {
                line: self.line,
                col: self.col,
            };
            let c = match self.peek() {
                None => {
                    out.push(Spanned {
                        token: Token::Eof,
                        span,
                    });
                    return Ok(out);
                }
                Some(c) => c,
            };
            let token = if c.is_ascii_alphabetic() || c == '_' {
                let mut ident = String::new();
                while let Some(c) = self.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        ident.push(c);
                        self.bump();
                    } else {
                        break;
                    }
                }
                Token::Ident(ident)
            } else if c.is_ascii_digit() {
                let mut num = String::new();
                while let Some(c) = self.peek() {
                    if c.is_ascii_digit() {
                        num.push(c);
                        self.bump();
                    } else {
                        break;
                    }
                }
                let value: i64 = num.parse().map_err(|_| ParseError {
                    span: span.clone(),
                    message: format!("integer literal out of range: {num}"),
                })?;
                Token::Number(value)
            } else {
                self.bump();
                match c {
                    '+' => Token::Plus,
                    '-' => {
                        if self.peek() == Some('>') {
                            self.bump();
                            Token::Arrow
                        } else {
                            Token::Minus
                        }
                    }
                    '*' => Token::Star,
                    '/' => Token::Slash,
                    '^' => Token::Caret,
                    '(' => Token::LParen,
                    ')' => Token::RParen,
                    ',' => Token::Comma,
                    ':' => Token::Colon,
                    '=' => Token::Equals,
                    '!' => {
                        if self.peek() == Some('=') {
                            self.bump();
                            Token::Bang
                        } else {
                            return Err(ParseError {
                                span,
                                message: "expected '=' after '!'".into(),
                            });
                        }
                    }
                    other => {
                        return Err(ParseError {
                            span,
                            message: format!("unexpected character {other:?}"),
                        })
                    }
                }
            };
            let _ = self.src;
            out.push(Spanned { token, span });
        }
    }
}

/// Coefficient expressions (rational functions, before binding).
#[derive(Clone, Debug, PartialEq)]
pub enum CoeffExpr {
    Int(i64),
    Symbol(String),
    Neg(Box<CoeffExpr>),
    Add(Box<CoeffExpr>, Box<CoeffExpr>),
    Sub(Box<CoeffExpr>, Box<CoeffExpr>),
    Mul(Box<CoeffExpr>, Box<CoeffExpr>),
    Div(Box<CoeffExpr>, Box<CoeffExpr>),
    Pow(Box<CoeffExpr>, i32),
}

/// A wedge monomial with an optional coefficient: `c * e1^e2^e3`.
#[derive(Clone, Debug, PartialEq)]
pub struct FormTerm {
    pub sign: i64,
    pub coeff: Option<CoeffExpr>,
    pub covectors: Vec<String>,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct FormExpr {
    pub terms: Vec<FormTerm>,
}

#[derive(Clone, Debug)]
pub enum Statement {
    Frame {
        covectors: Vec<String>,
    },
    CovectorMark {
        name: String,
        kind: String,
    },
    Params {
        names: Vec<String>,
        nonzero: bool,
    },
    Scalar {
        name: String,
        ddt: Option<CoeffExpr>,
        d: Option<FormExpr>,
    },
    Differential {
        covector: String,
        value: FormExpr,
        span: Span,
    },
    Endo {
        name: String,
        rows: Vec<(String, FormExpr, Span)>,
    },
    Vector {
        name: String,
        value: FormExpr,
        span: Span,
    },
    MetricDiag {
        name: String,
        entries: Vec<CoeffExpr>,
    },
    MetricOrthonormal {
        name: String,
    },
    Form {
        name: String,
        value: FormExpr,
        span: Span,
    },
    Structure {
        kind: String,
        name: String,
        bindings: Vec<(String, String, Span)>,
    },
    Sample {
        symbol: String,
        numer: i64,
        denom: i64,
    },
}

#[derive(Clone, Debug, Default)]
pub struct ModelAst {
    pub statements: Vec<Statement>,
}

pub struct Parser {
    tokens: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    pub fn new(tokens: Vec<Spanned>) -> Parser {
        Parser { tokens, pos: 0 }
    }

    fn peek(&self) -> &Spanned {
        &self.tokens[self.pos.min(self.tokens.len() - 1)]
    }

    fn peek2(&self) -> &Spanned {
        &self.tokens[(self.pos + 1).min(self.tokens.len() - 1)]
    }

    fn bump(&mut self) -> Spanned {
        let t = self.tokens[self.pos.min(self.tokens.len() - 1)].clone();
        if self.pos < self.tokens.len() - 1 {
            self.pos += 1;
        }
        t
    }

    fn expect_ident(&mut self) -> Result<(String, Span), ParseError> {
        let t = self.bump();
        match t.token {
            Token::Ident(s) => Ok((s, t.span)),
            other => Err(ParseError {
                span: t.span,
                message: format!("expected identifier, found {other:?}"),
            }),
        }
    }

    fn expect(&mut self, token: Token, what: &str) -> Result<Span, ParseError> {
        let t = self.bump();
        if t.token == token {
            Ok(t.span)
        } else {
            Err(ParseError {
                span: t.span,
                message: format!("expected {what}, found {:?}", t.token),
            })
        }
    }

    pub fn parse_model(mut self) -> Result<ModelAst, ParseError> {
        let mut statements = Vec::new();
        loop {
            if self.peek().token == Token::Eof {
                return Ok(ModelAst { statements });
            }
            statements.push(self.parse_statement()?);
        }
    }

    fn parse_statement(&mut self) -> Result<Statement, ParseError> {
        let (keyword, span) = self.expect_ident()?;
        match keyword.as_str() {
            "frame" => {
                let mut covectors = Vec::new();
                while let Token::Ident(_) = self.peek().token {
                    covectors.push(self.expect_ident()?.0);
                    // stop when the next ident begins a new statement
                    if self.statement_boundary() {
                        break;
                    }
                }
                if covectors.is_empty() {
                    return Err(ParseError {
                        span,
                        message: "frame declaration needs at least one covector".into(),
                    });
                }
                Ok(Statement::Frame { covectors })
            }
            "covector" => {
                let (name, _) = self.expect_ident()?;
                self.expect(Token::Colon, "':'")?;
                let (kind, kspan) = self.expect_ident()?;
                if kind != "dt" && kind != "theta" {
                    return Err(ParseError {
                        span: kspan,
                        message: "covector mark must be 'dt' or 'theta'".into(),
                    });
                }
                Ok(Statement::CovectorMark { name, kind })
            }
            "param" | "params" => {
                let mut names = Vec::new();
                while let Token::Ident(_) = self.peek().token {
                    names.push(self.expect_ident()?.0);
                    if self.statement_boundary() {
                        break;
                    }
                }
                let mut nonzero = false;
                if self.peek().token == Token::Bang {
                    self.bump();
                    let t = self.bump();
                    match t.token {
                        Token::Number(0) => nonzero = true,
                        other => {
                            return Err(ParseError {
                                span: t.span,
                                message: format!("expected 0 after '!=', found {other:?}"),
                            })
                        }
                    }
                }
                if names.is_empty() {
                    return Err(ParseError {
                        span,
                        message: "param declaration needs at least one name".into(),
                    });
                }
                Ok(Statement::Params { names, nonzero })
            }
            "scalar" => {
                let (name, _) = self.expect_ident()?;
                let mut ddt = None;
                let mut d = None;
                loop {
                    match &self.peek().token {
                        Token::Ident(k) if k == "ddt" => {
                            self.bump();
                            self.expect(Token::Equals, "'='")?;
                            ddt = Some(self.parse_coeff()?);
                        }
                        Token::Ident(k) if k == "d" && self.peek2().token == Token::Equals => {
                            self.bump();
                            self.expect(Token::Equals, "'='")?;
                            d = Some(self.parse_form_expr()?);
                        }
                        _ => break,
                    }
                }
                Ok(Statement::Scalar { name, ddt, d })
            }
            "d" => {
                let (covector, dspan) = self.expect_ident()?;
                self.expect(Token::Equals, "'='")?;
                let value = self.parse_form_expr()?;
                Ok(Statement::Differential {
                    covector,
                    value,
                    span: dspan,
                })
            }
            "endo" => {
                let (name, _) = self.expect_ident()?;
                self.expect(Token::Colon, "':'")?;
                let mut rows = Vec::new();
                loop {
                    let (cov, cspan) = self.expect_ident()?;
                    self.expect(Token::Arrow, "'->'")?;
                    let image = self.parse_form_expr()?;
                    rows.push((cov, image, cspan));
                    if self.peek().token == Token::Comma {
                        self.bump();
                    } else {
                        break;
                    }
                }
                Ok(Statement::Endo { name, rows })
            }
            "vector" => {
                let (name, vspan) = self.expect_ident()?;
                self.expect(Token::Equals, "'='")?;
                let value = self.parse_form_expr()?;
                Ok(Statement::Vector {
                    name,
                    value,
                    span: vspan,
                })
            }
            "metric" => {
                let (name, _) = self.expect_ident()?;
                self.expect(Token::Equals, "'='")?;
                let (kind, kspan) = self.expect_ident()?;
                match kind.as_str() {
                    "orthonormal" => Ok(Statement::MetricOrthonormal { name }),
                    "diag" => {
                        self.expect(Token::LParen, "'('")?;
                        let mut entries = vec![self.parse_coeff()?];
                        while self.peek().token == Token::Comma {
                            self.bump();
                            entries.push(self.parse_coeff()?);
                        }
                        self.expect(Token::RParen, "')'")?;
                        Ok(Statement::MetricDiag { name, entries })
                    }
                    other => Err(ParseError {
                        span: kspan,
                        message: format!("expected 'diag' or 'orthonormal', found {other}"),
                    }),
                }
            }
            "form" => {
                let (name, fspan) = self.expect_ident()?;
                self.expect(Token::Equals, "'='")?;
                let value = self.parse_form_expr()?;
                Ok(Statement::Form {
                    name,
                    value,
                    span: fspan,
                })
            }
            "contact" | "hermitian" | "su2" | "su3" | "triple" | "family" => {
                let (name, _) = self.expect_ident()?;
                self.expect(Token::Colon, "':'")?;
                let mut bindings = Vec::new();
                loop {
                    let (key, kspan) = self.expect_ident()?;
                    self.expect(Token::Equals, "'='")?;
                    let (value, _) = self.expect_ident()?;
                    bindings.push((key, value, kspan));
                    if self.peek().token == Token::Comma {
                        self.bump();
                    } else {
                        break;
                    }
                }
                Ok(Statement::Structure {
                    kind: keyword,
                    name,
                    bindings,
                })
            }
            "sample" => {
                let (symbol, _) = self.expect_ident()?;
                self.expect(Token::Equals, "'='")?;
                let mut sign = 1i64;
                if self.peek().token == Token::Minus {
                    self.bump();
                    sign = -1;
                }
                let t = self.bump();
                let numer = match t.token {
                    Token::Number(n) => n * sign,
                    other => {
                        return Err(ParseError {
                            span: t.span,
                            message: format!("expected rational literal, found {other:?}"),
                        })
                    }
                };
                let denom = if self.peek().token == Token::Slash {
                    self.bump();
                    let t = self.bump();
                    match t.token {
                        Token::Number(n) if n != 0 => n,
                        _ => {
                            return Err(ParseError {
                                span: t.span,
                                message: "expected nonzero integer denominator".into(),
                            })
                        }
                    }
                } else {
                    1
                };
                Ok(Statement::Sample {
                    symbol,
                    numer,
                    denom,
                })
            }
            other => Err(ParseError {
                span,
                message: format!("unknown statement keyword '{other}'"),
            }),
        }
    }

    /// True when the upcoming ident starts a new statement (so bare ident
    /// lists know where to stop).
    fn statement_boundary(&self) -> bool {
        const KEYWORDS: &[&str] = &[
            "frame",
            "covector",
            "param",
            "params",
            "scalar",
            "d",
            "endo",
            "vector",
            "metric",
            "form",
            "contact",
            "hermitian",
            "su2",
            "su3",
            "triple",
            "family",
            "sample",
        ];
        match &self.peek().token {
            Token::Ident(s) => KEYWORDS.contains(&s.as_str()),
            _ => true,
        }
    }

    /// Coefficient expression with standard precedence; exponent must be a
    /// literal integer (negative allowed).
    fn parse_coeff(&mut self) -> Result<CoeffExpr, ParseError> {
        self.parse_coeff_sum()
    }

    fn parse_coeff_sum(&mut self) -> Result<CoeffExpr, ParseError> {
        let mut lhs = self.parse_coeff_product()?;
        loop {
            match self.peek().token {
                Token::Plus => {
                    self.bump();
                    let rhs = self.parse_coeff_product()?;
                    lhs = CoeffExpr::Add(Box::new(lhs), Box::new(rhs));
                }
                Token::Minus => {
                    self.bump();
                    let rhs = self.parse_coeff_product()?;
                    lhs = CoeffExpr::Sub(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn parse_coeff_product(&mut self) -> Result<CoeffExpr, ParseError> {
        let mut lhs = self.parse_coeff_atom()?;
        loop {
            match self.peek().token {
                Token::Star => {
                    self.bump();
                    let rhs = self.parse_coeff_atom()?;
                    lhs = CoeffExpr::Mul(Box::new(lhs), Box::new(rhs));
                }
                Token::Slash => {
                    self.bump();
                    let rhs = self.parse_coeff_atom()?;
                    lhs = CoeffExpr::Div(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn parse_coeff_atom(&mut self) -> Result<CoeffExpr, ParseError> {
        let t = self.bump();
        let base = match t.token {
            Token::Minus => {
                let inner = self.parse_coeff_atom()?;
                return Ok(CoeffExpr::Neg(Box::new(inner)));
            }
            Token::Number(n) => CoeffExpr::Int(n),
            Token::Ident(s) => CoeffExpr::Symbol(s),
            Token::LParen => {
                let inner = self.parse_coeff_sum()?;
                self.expect(Token::RParen, "')'")?;
                inner
            }
            other => {
                return Err(ParseError {
                    span: t.span,
                    message: format!("expected coefficient, found {other:?}"),
                })
            }
        };
        if self.peek().token == Token::Caret {
            self.bump();
            let mut sign = 1i32;
            if self.peek().token == Token::Minus {
                self.bump();
                sign = -1;
            }
            let t = self.bump();
            match t.token {
                Token::Number(n) => Ok(CoeffExpr::Pow(Box::new(base), sign * n as i32)),
                other => Err(ParseError {
                    span: t.span,
                    message: format!("expected integer exponent, found {other:?}"),
                }),
            }
        } else {
            Ok(base)
        }
    }

    /// Form expression: signed sum of wedge terms. A term is either a plain
    /// wedge monomial, `coeff * monomial`, a parenthesized coefficient times a
    /// monomial, a bare coefficient (degree 0), or `0`.
    pub fn parse_form_expr(&mut self) -> Result<FormExpr, ParseError> {
        let mut terms = Vec::new();
        let mut sign = 1i64;
        let mut first = true;
        loop {
            if first {
                match self.peek().token {
                    Token::Minus => {
                        self.bump();
                        sign = -1;
                    }
                    Token::Plus => {
                        self.bump();
                    }
                    _ => {}
                }
            }
            let term = self.parse_form_term(sign)?;
            if let Some(t) = term {
                terms.push(t);
            }
            first = false;
            match self.peek().token {
                Token::Plus => {
                    self.bump();
                    sign = 1;
                }
                Token::Minus => {
                    self.bump();
                    sign = -1;
                }
                _ => return Ok(FormExpr { terms }),
            }
        }
    }

    /// One wedge term; `None` for a literal 0.
    fn parse_form_term(&mut self, sign: i64) -> Result<Option<FormTerm>, ParseError> {
        let span = self.peek().span.clone();
        // literal zero term
        if self.peek().token == Token::Number(0) {
            // lone zero only; 0 * ... is rejected later by binding anyway
            self.bump();
            return Ok(None);
        }
        let mut coeff: Option<CoeffExpr> = None;
        let mut covectors: Vec<String> = Vec::new();
        // leading coefficient: number or parenthesized expression; a bare
        // identifier is ambiguous (symbol vs covector) and resolved by the
        // binder through the name tables, so here we greedily read a
        // wedge-chain of identifiers and let an explicit '*' separate a
        // leading symbolic coefficient.
        match self.peek().token.clone() {
            Token::Number(_) | Token::LParen => {
                coeff = Some(self.parse_coeff_product_no_ident()?);
                if self.peek().token == Token::Star {
                    self.bump();
                } else {
                    // pure scalar term
                    return Ok(Some(FormTerm {
                        sign,
                        coeff,
                        covectors,
                        span,
                    }));
                }
            }
            _ => {}
        }
        // possibly `sym * sym * ... * mono` — collect identifier factors
        loop {
            let t = self.peek().token.clone();
            match t {
                Token::Ident(name) => {
                    self.bump();
                    // optional exponent on a symbol factor
                    let factor = if self.peek().token == Token::Caret {
                        // distinguish wedge vs power: power has a number or
                        // '-' next, wedge has an identifier
                        let save = self.pos;
                        self.bump();
                        match self.peek().token.clone() {
                            Token::Number(n) => {
                                self.bump();
                                Some(CoeffExpr::Pow(
                                    Box::new(CoeffExpr::Symbol(name.clone())),
                                    n as i32,
                                ))
                            }
                            Token::Minus => {
                                self.bump();
                                let t = self.bump();
                                match t.token {
                                    Token::Number(n) => Some(CoeffExpr::Pow(
                                        Box::new(CoeffExpr::Symbol(name.clone())),
                                        -(n as i32),
                                    )),
                                    other => {
                                        return Err(ParseError {
                                            span: t.span,
                                            message: format!(
                                                "expected integer exponent, found {other:?}"
                                            ),
                                        })
                                    }
                                }
                            }
                            Token::Ident(_) => {
                                // wedge: rewind and treat as covector chain
                                self.pos = save;
                                None
                            }
                            other => {
                                return Err(ParseError {
                                    span: self.peek().span.clone(),
                                    message: format!(
                                        "expected exponent or covector after '^', found {other:?}"
                                    ),
                                })
                            }
                        }
                    } else {
                        None
                    };
                    match factor {
                        Some(f) => {
                            coeff = Some(match coeff {
                                None => f,
                                Some(c) => CoeffExpr::Mul(Box::new(c), Box::new(f)),
                            });
                            if self.peek().token == Token::Star {
                                self.bump();
                                continue;
                            }
                            return Ok(Some(FormTerm {
                                sign,
                                coeff,
                                covectors,
                                span,
                            }));
                        }
                        None => {
                            if self.peek().token == Token::Star {
                                // identifier followed by '*': a symbol factor
                                self.bump();
                                let f = CoeffExpr::Symbol(name);
                                coeff = Some(match coeff {
                                    None => f,
                                    Some(c) => CoeffExpr::Mul(Box::new(c), Box::new(f)),
                                });
                                continue;
                            }
                            if self.peek().token == Token::Slash {
                                // identifier followed by '/': symbol numerator
                                self.bump();
                                let rhs = self.parse_coeff_atom()?;
                                let f = CoeffExpr::Div(
                                    Box::new(CoeffExpr::Symbol(name)),
                                    Box::new(rhs),
                                );
                                coeff = Some(match coeff {
                                    None => f,
                                    Some(c) => CoeffExpr::Mul(Box::new(c), Box::new(f)),
                                });
                                if self.peek().token == Token::Star {
                                    self.bump();
                                    continue;
                                }
                                return Ok(Some(FormTerm {
                                    sign,
                                    coeff,
                                    covectors,
                                    span,
                                }));
                            }
                            // begin the covector wedge chain
                            covectors.push(name);
                            while self.peek().token == Token::Caret {
                                self.bump();
                                let (cov, _) = self.expect_ident()?;
                                covectors.push(cov);
                            }
                            return Ok(Some(FormTerm {
                                sign,
                                coeff,
                                covectors,
                                span,
                            }));
                        }
                    }
                }
                Token::Number(_) | Token::LParen => {
                    let f = self.parse_coeff_product_no_ident()?;
                    coeff = Some(match coeff {
                        None => f,
                        Some(c) => CoeffExpr::Mul(Box::new(c), Box::new(f)),
                    });
                    if self.peek().token == Token::Star {
                        self.bump();
                        continue;
                    }
                    return Ok(Some(FormTerm {
                        sign,
                        coeff,
                        covectors,
                        span,
                    }));
                }
                other => {
                    return Err(ParseError {
                        span: self.peek().span.clone(),
                        message: format!("expected form term, found {other:?}"),
                    })
                }
            }
        }
    }

    /// Coefficient factor that cannot swallow identifiers (so wedge chains
    /// survive): numbers, parenthesized expressions, optional exponent and
    /// division by further such factors.
    fn parse_coeff_product_no_ident(&mut self) -> Result<CoeffExpr, ParseError> {
        let t = self.bump();
        let mut base = match t.token {
            Token::Number(n) => CoeffExpr::Int(n),
            Token::LParen => {
                let inner = self.parse_coeff_sum()?;
                self.expect(Token::RParen, "')'")?;
                inner
            }
            other => {
                return Err(ParseError {
                    span: t.span,
                    message: format!("expected numeric coefficient, found {other:?}"),
                })
            }
        };
        if self.peek().token == Token::Caret {
            self.bump();
            let mut sign = 1i32;
            if self.peek().token == Token::Minus {
                self.bump();
                sign = -1;
            }
            let t = self.bump();
            match t.token {
                Token::Number(n) => base = CoeffExpr::Pow(Box::new(base), sign * n as i32),
                other => {
                    return Err(ParseError {
                        span: t.span,
                        message: format!("expected integer exponent, found {other:?}"),
                    })
                }
            }
        }
        while self.peek().token == Token::Slash {
            self.bump();
            let rhs = self.parse_coeff_atom()?;
            base = CoeffExpr::Div(Box::new(base), Box::new(rhs));
        }
        Ok(base)
    }
}

pub fn parse(src: &str) -> Result<ModelAst, ParseError> {
    let tokens = Lexer::new(src).tokenize()?;
    Parser::new(tokens).parse_model()
}

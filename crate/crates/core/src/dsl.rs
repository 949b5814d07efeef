//! A small claim-specification language, so congruence assertions beyond
//! the built-ins can be stated in text files (`.qcl`) and verified.
//!
//! ```text
//! claim thm1_trunc {
//!   params: n % 4 == 1, n >= 1;
//!   lhs: sum k = 0 .. (n-1)/4 of
//!        (qint(8*k+1) * qpoch(1,4,k)^4 / qpoch(4,4,k)^4 * q^(2*k));
//!   rhs: qpoch(2,4,(n-1)/4) / qpoch(4,4,(n-1)/4) * qint(n) * q^((1-n)/4);
//!   modulus: qint(n) * cyclo(n)^2;
//! }
//! ```
//!
//! Builtins: `qint(x)` for `[x]`, `qintm(x,m)` for `[x]_{q^m}`,
//! `qpoch(t,d,k)` for `(q^t;q^d)_k`, `apoch(t,d,k)` for `(a q^t;q^d)_k`,
//! `iapoch(t,d,k)` for `(q^t/a;q^d)_k`, `cyclo(m)` for `Phi_m(q)`,
//! `cyclo2(m)` for `Phi_m(q^2)`. Integer expressions use exact division: a
//! bound like `(n-1)/4` fails loudly when the hypothesis `n == 1 (mod 4)`
//! is violated. `%` is the nonnegative remainder.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use thiserror::Error;

use crate::claims::{Bounds, Degrees, Params, VerificationResult};
use crate::congruence::{check_congruent, Modulus};
use crate::factored::{FactoredRatFunc, XPart};
use crate::field::{Field, ParamField};
use crate::poly::cyclotomic_in;
use crate::ratfunc::RatFunc;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pos {
    pub line: u32,
    pub col: u32,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Error, Clone)]
pub enum DslError {
    #[error("lex error at {pos}: {message}")]
    Lex { pos: Pos, message: String },
    #[error("parse error at {pos}: expected {expected}, found {found}")]
    Parse {
        pos: Pos,
        expected: String,
        found: String,
    },
    #[error("unbound identifier `{name}` at {pos}")]
    Unbound { pos: Pos, name: String },
    #[error("evaluation error: {0}")]
    Eval(String),
}

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TokenKind {
    Ident,
    Integer,
    Symbol,
    Keyword,
    Eof,
}

#[derive(Clone, Debug)]
pub struct Token {
    pub kind: TokenKind,
    pub text: String,
    pub pos: Pos,
}

const KEYWORDS: &[&str] = &["claim", "params", "lhs", "rhs", "modulus", "sum", "of"];

pub fn tokenize(source: &str) -> Result<Vec<Token>, DslError> {
    let mut tokens = Vec::new();
    let chars: Vec<char> = source.chars().collect();
    let mut i = 0usize;
    let mut line = 1u32;
    let mut col = 1u32;
    let two_char = ["..", "==", "<=", ">="];
    let one_char = "{}():;,+-*/%^<>=";
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, col };
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            col += 1;
            i += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
                col += 1;
            }
            let text: String = chars[start..i].iter().collect();
            tokens.push(Token {
                kind: TokenKind::Integer,
                text,
                pos,
            });
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
                col += 1;
            }
            let text: String = chars[start..i].iter().collect();
            let kind = if KEYWORDS.contains(&text.as_str()) {
                TokenKind::Keyword
            } else {
                TokenKind::Ident
            };
            tokens.push(Token { kind, text, pos });
            continue;
        }
        if i + 1 < chars.len() {
            let pair: String = chars[i..i + 2].iter().collect();
            if two_char.contains(&pair.as_str()) {
                tokens.push(Token {
                    kind: TokenKind::Symbol,
                    text: pair,
                    pos,
                });
                i += 2;
                col += 2;
                continue;
            }
        }
        if one_char.contains(c) {
            tokens.push(Token {
                kind: TokenKind::Symbol,
                text: c.to_string(),
                pos,
            });
            i += 1;
            col += 1;
            continue;
        }
        return Err(DslError::Lex {
            pos,
            message: format!("illegal character {c:?}"),
        });
    }
    tokens.push(Token {
        kind: TokenKind::Eof,
        text: "<eof>".into(),
        pos: Pos { line, col },
    });
    Ok(tokens)
}

// ---------------------------------------------------------------------------
// AST
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IOp {
    Add,
    Sub,
    Mul,
    Div,
    Mod,
}

/// Integer expressions (parameter arithmetic; `/` is exact).
#[derive(Clone, Debug)]
pub enum IExpr {
    Int(i64),
    Var(String, Pos),
    Bin(IOp, Box<IExpr>, Box<IExpr>),
}

// Structural equality ignores source positions, so a pretty-printed and
// re-parsed tree compares equal.
impl PartialEq for IExpr {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (IExpr::Int(a), IExpr::Int(b)) => a == b,
            (IExpr::Var(a, _), IExpr::Var(b, _)) => a == b,
            (IExpr::Bin(o1, a1, b1), IExpr::Bin(o2, a2, b2)) => o1 == o2 && a1 == a2 && b1 == b2,
            _ => false,
        }
    }
}

impl Eq for IExpr {}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CmpOp {
    Eq,
    Le,
    Ge,
    Lt,
    Gt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Constraint {
    /// `IDENT cmpop iexpr`
    Cmp(String, CmpOp, IExpr),
    /// `iexpr % iexpr == iexpr`
    ModEq(IExpr, IExpr, IExpr),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// q-expressions.
#[derive(Clone, Debug)]
pub enum Expr {
    Q,
    A(Pos),
    Int(i64),
    Call(String, Pos, Vec<IExpr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, IExpr),
    Sum {
        var: String,
        lo: IExpr,
        hi: IExpr,
        body: Box<Expr>,
    },
}

impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Expr::Q, Expr::Q) => true,
            (Expr::A(_), Expr::A(_)) => true,
            (Expr::Int(a), Expr::Int(b)) => a == b,
            (Expr::Call(n1, _, a1), Expr::Call(n2, _, a2)) => n1 == n2 && a1 == a2,
            (Expr::Bin(o1, a1, b1), Expr::Bin(o2, a2, b2)) => o1 == o2 && a1 == a2 && b1 == b2,
            (Expr::Pow(b1, e1), Expr::Pow(b2, e2)) => b1 == b2 && e1 == e2,
            (
                Expr::Sum {
                    var: v1,
                    lo: l1,
                    hi: h1,
                    body: b1,
                },
                Expr::Sum {
                    var: v2,
                    lo: l2,
                    hi: h2,
                    body: b2,
                },
            ) => v1 == v2 && l1 == l2 && h1 == h2 && b1 == b2,
            _ => false,
        }
    }
}

impl Eq for Expr {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClaimAst {
    pub name: String,
    pub constraints: Vec<Constraint>,
    pub lhs: Expr,
    pub rhs: Expr,
    pub modulus: Expr,
}

impl ClaimAst {
    /// Parameter names: the identifiers the constraints mention, sorted.
    pub fn param_names(&self) -> Vec<String> {
        let mut names = Vec::new();
        let mut add = |n: &str| {
            if !names.iter().any(|x| x == n) {
                names.push(n.to_string());
            }
        };
        fn walk(e: &IExpr, add: &mut dyn FnMut(&str)) {
            match e {
                IExpr::Int(_) => {}
                IExpr::Var(n, _) => add(n),
                IExpr::Bin(_, a, b) => {
                    walk(a, add);
                    walk(b, add);
                }
            }
        }
        for c in &self.constraints {
            match c {
                Constraint::Cmp(n, _, e) => {
                    add(n);
                    walk(e, &mut add);
                }
                Constraint::ModEq(a, b, c) => {
                    walk(a, &mut add);
                    walk(b, &mut add);
                    walk(c, &mut add);
                }
            }
        }
        names.sort();
        names
    }

    pub fn uses_a(&self) -> bool {
        fn walk(e: &Expr) -> bool {
            match e {
                Expr::A(_) => true,
                Expr::Call(name, _, _) => name == "apoch" || name == "iapoch",
                Expr::Bin(_, a, b) => walk(a) || walk(b),
                Expr::Pow(b, _) => walk(b),
                Expr::Sum { body, .. } => walk(body),
                _ => false,
            }
        }
        walk(&self.lhs) || walk(&self.rhs) || walk(&self.modulus)
    }
}

// ---------------------------------------------------------------------------
// Pretty-printing (round-trips through the parser)
// ---------------------------------------------------------------------------

impl fmt::Display for IExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn prec(op: IOp) -> u8 {
            match op {
                IOp::Add | IOp::Sub => 1,
                IOp::Mul | IOp::Div | IOp::Mod => 2,
            }
        }
        fn go(e: &IExpr, parent: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match e {
                IExpr::Int(v) => write!(f, "{v}"),
                IExpr::Var(n, _) => write!(f, "{n}"),
                IExpr::Bin(op, a, b) => {
                    let p = prec(*op);
                    let needs = p < parent;
                    if needs {
                        write!(f, "(")?;
                    }
                    go(a, p, f)?;
                    write!(
                        f,
                        " {} ",
                        match op {
                            IOp::Add => "+",
                            IOp::Sub => "-",
                            IOp::Mul => "*",
                            IOp::Div => "/",
                            IOp::Mod => "%",
                        }
                    )?;
                    // left-associative: the right child needs parens at equal
                    // precedence
                    go(b, p + 1, f)?;
                    if needs {
                        write!(f, ")")?;
                    }
                    Ok(())
                }
            }
        }
        go(self, 0, f)
    }
}

fn iexpr_atom_string(e: &IExpr) -> String {
    match e {
        IExpr::Int(_) | IExpr::Var(_, _) => format!("{e}"),
        _ => format!("({e})"),
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn prec(op: BinOp) -> u8 {
            match op {
                BinOp::Add | BinOp::Sub => 1,
                BinOp::Mul | BinOp::Div => 2,
            }
        }
        fn go(e: &Expr, parent: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match e {
                Expr::Q => write!(f, "q"),
                Expr::A(_) => write!(f, "a"),
                Expr::Int(v) => write!(f, "{v}"),
                Expr::Call(name, _, args) => {
                    let args: Vec<String> = args.iter().map(|a| format!("{a}")).collect();
                    write!(f, "{name}({})", args.join(", "))
                }
                Expr::Bin(op, a, b) => {
                    let p = prec(*op);
                    let needs = p < parent;
                    if needs {
                        write!(f, "(")?;
                    }
                    go(a, p, f)?;
                    write!(
                        f,
                        " {} ",
                        match op {
                            BinOp::Add => "+",
                            BinOp::Sub => "-",
                            BinOp::Mul => "*",
                            BinOp::Div => "/",
                        }
                    )?;
                    go(b, p + 1, f)?;
                    if needs {
                        write!(f, ")")?;
                    }
                    Ok(())
                }
                Expr::Pow(base, exp) => {
                    // base is always an atom or parenthesized
                    match base.as_ref() {
                        Expr::Q | Expr::A(_) | Expr::Int(_) | Expr::Call(_, _, _) => {
                            go(base, 3, f)?
                        }
                        _ => {
                            write!(f, "(")?;
                            go(base, 0, f)?;
                            write!(f, ")")?;
                        }
                    }
                    write!(f, "^{}", iexpr_atom_string(exp))
                }
                Expr::Sum { var, lo, hi, body } => {
                    write!(f, "sum {var} = {lo} .. {hi} of ")?;
                    match body.as_ref() {
                        Expr::Q | Expr::A(_) | Expr::Int(_) | Expr::Call(_, _, _)
                        | Expr::Pow(_, _) => go(body, 3, f),
                        _ => {
                            write!(f, "(")?;
                            go(body, 0, f)?;
                            write!(f, ")")
                        }
                    }
                }
            }
        }
        go(self, 0, f)
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Constraint::Cmp(n, op, e) => write!(
                f,
                "{n} {} {e}",
                match op {
                    CmpOp::Eq => "==",
                    CmpOp::Le => "<=",
                    CmpOp::Ge => ">=",
                    CmpOp::Lt => "<",
                    CmpOp::Gt => ">",
                }
            ),
            Constraint::ModEq(a, m, r) => write!(f, "{a} % {m} == {r}"),
        }
    }
}

impl fmt::Display for ClaimAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs: Vec<String> = self.constraints.iter().map(|c| format!("{c}")).collect();
        writeln!(f, "claim {} {{", self.name)?;
        writeln!(f, "  params: {};", cs.join(", "))?;
        writeln!(f, "  lhs: {};", self.lhs)?;
        writeln!(f, "  rhs: {};", self.rhs)?;
        writeln!(f, "  modulus: {};", self.modulus)?;
        write!(f, "}}")
    }
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

struct Parser {
    tokens: Vec<Token>,
    at: usize,
}

const BUILTINS: &[(&str, usize)] = &[
    ("qint", 1),
    ("qintm", 2),
    ("qpoch", 3),
    ("apoch", 3),
    ("iapoch", 3),
    ("cyclo", 1),
    ("cyclo2", 1),
];

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.at]
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.at].clone();
        if self.at + 1 < self.tokens.len() {
            self.at += 1;
        }
        t
    }

    fn err(&self, expected: &str) -> DslError {
        let t = self.peek();
        DslError::Parse {
            pos: t.pos,
            expected: expected.to_string(),
            found: if t.kind == TokenKind::Eof {
                "end of input".to_string()
            } else {
                format!("`{}`", t.text)
            },
        }
    }

    fn eat_symbol(&mut self, sym: &str) -> Result<(), DslError> {
        if self.peek().kind == TokenKind::Symbol && self.peek().text == sym {
            self.bump();
            Ok(())
        } else {
            Err(self.err(&format!("`{sym}`")))
        }
    }

    fn eat_keyword(&mut self, kw: &str) -> Result<(), DslError> {
        if self.peek().kind == TokenKind::Keyword && self.peek().text == kw {
            self.bump();
            Ok(())
        } else {
            Err(self.err(&format!("`{kw}`")))
        }
    }

    fn eat_ident(&mut self) -> Result<(String, Pos), DslError> {
        if self.peek().kind == TokenKind::Ident {
            let t = self.bump();
            Ok((t.text, t.pos))
        } else {
            Err(self.err("an identifier"))
        }
    }

    fn at_symbol(&self, sym: &str) -> bool {
        self.peek().kind == TokenKind::Symbol && self.peek().text == sym
    }

    fn file(&mut self) -> Result<Vec<ClaimAst>, DslError> {
        let mut claims = Vec::new();
        while self.peek().kind != TokenKind::Eof {
            claims.push(self.claim()?);
        }
        Ok(claims)
    }

    fn claim(&mut self) -> Result<ClaimAst, DslError> {
        self.eat_keyword("claim")?;
        let (name, _) = self.eat_ident()?;
        self.eat_symbol("{")?;
        self.eat_keyword("params")?;
        self.eat_symbol(":")?;
        let mut constraints = vec![self.constraint()?];
        while self.at_symbol(",") {
            self.bump();
            constraints.push(self.constraint()?);
        }
        self.eat_symbol(";")?;
        self.eat_keyword("lhs")?;
        self.eat_symbol(":")?;
        let lhs = self.expr()?;
        self.eat_symbol(";")?;
        self.eat_keyword("rhs")?;
        self.eat_symbol(":")?;
        let rhs = self.expr()?;
        self.eat_symbol(";")?;
        self.eat_keyword("modulus")?;
        self.eat_symbol(":")?;
        let modulus = self.expr()?;
        self.eat_symbol(";")?;
        self.eat_symbol("}")?;
        let ast = ClaimAst {
            name,
            constraints,
            lhs,
            rhs,
            modulus,
        };
        self.resolve(&ast)?;
        Ok(ast)
    }

    fn constraint(&mut self) -> Result<Constraint, DslError> {
        let start_pos = self.peek().pos;
        let left = self.iexpr()?;
        if let Some(op) = self.cmpop() {
            let right = self.iexpr()?;
            if op == CmpOp::Eq {
                if let IExpr::Bin(IOp::Mod, a, m) = left {
                    return Ok(Constraint::ModEq(*a, *m, right));
                }
            }
            match left {
                IExpr::Var(name, _) => Ok(Constraint::Cmp(name, op, right)),
                _ => Err(DslError::Parse {
                    pos: start_pos,
                    expected: "a parameter name or a `%` expression on the left of a constraint"
                        .to_string(),
                    found: format!("`{left}`"),
                }),
            }
        } else {
            Err(self.err("a comparison operator"))
        }
    }

    fn cmpop(&mut self) -> Option<CmpOp> {
        if self.peek().kind != TokenKind::Symbol {
            return None;
        }
        let op = match self.peek().text.as_str() {
            "==" => CmpOp::Eq,
            "<=" => CmpOp::Le,
            ">=" => CmpOp::Ge,
            "<" => CmpOp::Lt,
            ">" => CmpOp::Gt,
            _ => return None,
        };
        self.bump();
        Some(op)
    }

    fn expr(&mut self) -> Result<Expr, DslError> {
        let mut acc = self.term()?;
        loop {
            if self.at_symbol("+") {
                self.bump();
                acc = Expr::Bin(BinOp::Add, Box::new(acc), Box::new(self.term()?));
            } else if self.at_symbol("-") {
                self.bump();
                acc = Expr::Bin(BinOp::Sub, Box::new(acc), Box::new(self.term()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, DslError> {
        let mut acc = self.factor()?;
        loop {
            if self.at_symbol("*") {
                self.bump();
                acc = Expr::Bin(BinOp::Mul, Box::new(acc), Box::new(self.factor()?));
            } else if self.at_symbol("/") {
                self.bump();
                acc = Expr::Bin(BinOp::Div, Box::new(acc), Box::new(self.factor()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, DslError> {
        let base = self.base()?;
        if self.at_symbol("^") {
            self.bump();
            let exp = self.iexpr_atom()?;
            Ok(Expr::Pow(Box::new(base), exp))
        } else {
            Ok(base)
        }
    }

    fn base(&mut self) -> Result<Expr, DslError> {
        let t = self.peek().clone();
        match t.kind {
            TokenKind::Integer => {
                self.bump();
                Ok(Expr::Int(t.text.parse().map_err(|_| DslError::Parse {
                    pos: t.pos,
                    expected: "an integer that fits in 64 bits".into(),
                    found: t.text.clone(),
                })?))
            }
            TokenKind::Keyword if t.text == "sum" => {
                self.bump();
                let (var, _) = self.eat_ident()?;
                self.eat_symbol("=")?;
                let lo = self.iexpr()?;
                self.eat_symbol("..")?;
                let hi = self.iexpr()?;
                self.eat_keyword("of")?;
                let body = self.factor()?;
                Ok(Expr::Sum {
                    var,
                    lo,
                    hi,
                    body: Box::new(body),
                })
            }
            TokenKind::Ident if t.text == "q" => {
                self.bump();
                Ok(Expr::Q)
            }
            TokenKind::Ident if t.text == "a" => {
                self.bump();
                Ok(Expr::A(t.pos))
            }
            TokenKind::Ident => {
                self.bump();
                self.eat_symbol("(")?;
                let mut args = vec![self.iexpr()?];
                while self.at_symbol(",") {
                    self.bump();
                    args.push(self.iexpr()?);
                }
                self.eat_symbol(")")?;
                Ok(Expr::Call(t.text, t.pos, args))
            }
            TokenKind::Symbol if t.text == "(" => {
                self.bump();
                let e = self.expr()?;
                self.eat_symbol(")")?;
                Ok(e)
            }
            _ => Err(self.err("`q`, `a`, an integer, a call, `(`, or `sum`")),
        }
    }

    fn iexpr(&mut self) -> Result<IExpr, DslError> {
        let mut acc = self.iterm()?;
        loop {
            if self.at_symbol("+") {
                self.bump();
                acc = IExpr::Bin(IOp::Add, Box::new(acc), Box::new(self.iterm()?));
            } else if self.at_symbol("-") {
                self.bump();
                acc = IExpr::Bin(IOp::Sub, Box::new(acc), Box::new(self.iterm()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn iterm(&mut self) -> Result<IExpr, DslError> {
        let mut acc = self.iexpr_atom()?;
        loop {
            let op = if self.at_symbol("*") {
                IOp::Mul
            } else if self.at_symbol("/") {
                IOp::Div
            } else if self.at_symbol("%") {
                IOp::Mod
            } else {
                return Ok(acc);
            };
            self.bump();
            acc = IExpr::Bin(op, Box::new(acc), Box::new(self.iexpr_atom()?));
        }
    }

    fn iexpr_atom(&mut self) -> Result<IExpr, DslError> {
        let t = self.peek().clone();
        match t.kind {
            TokenKind::Integer => {
                self.bump();
                Ok(IExpr::Int(t.text.parse().map_err(|_| DslError::Parse {
                    pos: t.pos,
                    expected: "an integer that fits in 64 bits".into(),
                    found: t.text.clone(),
                })?))
            }
            TokenKind::Ident => {
                self.bump();
                Ok(IExpr::Var(t.text, t.pos))
            }
            TokenKind::Symbol if t.text == "(" => {
                self.bump();
                let e = self.iexpr()?;
                self.eat_symbol(")")?;
                Ok(e)
            }
            _ => Err(self.err("an integer, an identifier, or `(`")),
        }
    }

    /// Binding check: every identifier is a parameter, a sum variable in
    /// scope, or a builtin with the right arity.
    fn resolve(&self, ast: &ClaimAst) -> Result<(), DslError> {
        let params = ast.param_names();
        fn check_iexpr(e: &IExpr, scope: &[String]) -> Result<(), DslError> {
            match e {
                IExpr::Int(_) => Ok(()),
                IExpr::Var(n, pos) => {
                    if scope.iter().any(|s| s == n) {
                        Ok(())
                    } else {
                        Err(DslError::Unbound {
                            pos: *pos,
                            name: n.clone(),
                        })
                    }
                }
                IExpr::Bin(_, a, b) => {
                    check_iexpr(a, scope)?;
                    check_iexpr(b, scope)
                }
            }
        }
        fn check_expr(e: &Expr, scope: &mut Vec<String>) -> Result<(), DslError> {
            match e {
                Expr::Q | Expr::A(_) | Expr::Int(_) => Ok(()),
                Expr::Call(name, pos, args) => {
                    match BUILTINS.iter().find(|(b, _)| b == name) {
                        None => Err(DslError::Unbound {
                            pos: *pos,
                            name: name.clone(),
                        }),
                        Some((_, arity)) if *arity != args.len() => Err(DslError::Parse {
                            pos: *pos,
                            expected: format!("{arity} argument(s) to {name}"),
                            found: format!("{}", args.len()),
                        }),
                        Some(_) => {
                            for a in args {
                                check_iexpr(a, scope)?;
                            }
                            Ok(())
                        }
                    }
                }
                Expr::Bin(_, a, b) => {
                    check_expr(a, scope)?;
                    check_expr(b, scope)
                }
                Expr::Pow(b, e) => {
                    check_expr(b, scope)?;
                    check_iexpr(e, scope)
                }
                Expr::Sum { var, lo, hi, body } => {
                    check_iexpr(lo, scope)?;
                    check_iexpr(hi, scope)?;
                    scope.push(var.clone());
                    let r = check_expr(body, scope);
                    scope.pop();
                    r
                }
            }
        }
        let mut scope = params;
        check_expr(&ast.lhs, &mut scope)?;
        check_expr(&ast.rhs, &mut scope)?;
        check_expr(&ast.modulus, &mut scope)
    }
}

/// Parse a whole `.qcl` source.
pub fn parse(source: &str) -> Result<Vec<ClaimAst>, DslError> {
    let tokens = tokenize(source)?;
    Parser { tokens, at: 0 }.file()
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

type Binding = BTreeMap<String, i64>;

fn eval_iexpr(e: &IExpr, binding: &Binding) -> Result<i64, DslError> {
    match e {
        IExpr::Int(v) => Ok(*v),
        IExpr::Var(n, pos) => binding.get(n).copied().ok_or(DslError::Unbound {
            pos: *pos,
            name: n.clone(),
        }),
        IExpr::Bin(op, a, b) => {
            let x = eval_iexpr(a, binding)?;
            let y = eval_iexpr(b, binding)?;
            match op {
                IOp::Add => Ok(x + y),
                IOp::Sub => Ok(x - y),
                IOp::Mul => Ok(x * y),
                IOp::Div => {
                    if y == 0 || x % y != 0 {
                        Err(DslError::Eval(format!(
                            "inexact integer division {x} / {y} in `{e}`"
                        )))
                    } else {
                        Ok(x / y)
                    }
                }
                IOp::Mod => {
                    if y == 0 {
                        Err(DslError::Eval(format!("modulo by zero in `{e}`")))
                    } else {
                        Ok(x.rem_euclid(y))
                    }
                }
            }
        }
    }
}

fn eval_constraint(c: &Constraint, binding: &Binding) -> Result<bool, DslError> {
    match c {
        Constraint::Cmp(name, op, rhs) => {
            let lhs = binding.get(name).copied().ok_or_else(|| {
                DslError::Eval(format!("parameter {name} not bound"))
            })?;
            let r = eval_iexpr(rhs, binding)?;
            Ok(match op {
                CmpOp::Eq => lhs == r,
                CmpOp::Le => lhs <= r,
                CmpOp::Ge => lhs >= r,
                CmpOp::Lt => lhs < r,
                CmpOp::Gt => lhs > r,
            })
        }
        Constraint::ModEq(a, m, r) => {
            let av = eval_iexpr(a, binding)?;
            let mv = eval_iexpr(m, binding)?;
            let rv = eval_iexpr(r, binding)?;
            if mv == 0 {
                return Err(DslError::Eval("modulo by zero in constraint".into()));
            }
            Ok(av.rem_euclid(mv) == rv)
        }
    }
}

fn eval_expr<F: Field>(e: &Expr, binding: &Binding) -> Result<FactoredRatFunc<F>, DslError> {
    match e {
        Expr::Q => {
            let mut f = FactoredRatFunc::one();
            f.mul_qpow(1);
            Ok(f)
        }
        Expr::A(pos) => {
            let a = F::var_a().ok_or(DslError::Unbound {
                pos: *pos,
                name: "a".into(),
            })?;
            Ok(FactoredRatFunc::from_scalar(a))
        }
        Expr::Int(v) => Ok(FactoredRatFunc::from_i64(*v)),
        Expr::Call(name, pos, args) => {
            let vals: Vec<i64> = args
                .iter()
                .map(|a| eval_iexpr(a, binding))
                .collect::<Result<_, _>>()?;
            let mut f = FactoredRatFunc::one();
            match (name.as_str(), vals.as_slice()) {
                ("qint", [x]) => f.mul_qint(*x, 1),
                ("qintm", [x, m]) => {
                    if *m < 1 {
                        return Err(DslError::Eval(format!(
                            "qintm step must be positive, got {m}"
                        )));
                    }
                    f.mul_qint(*x, *m)
                }
                ("qpoch", [t, d, k]) | ("apoch", [t, d, k]) | ("iapoch", [t, d, k]) => {
                    if *d < 1 {
                        return Err(DslError::Eval(format!(
                            "pochhammer step must be positive, got {d}"
                        )));
                    }
                    if *k < 0 {
                        return Err(DslError::Eval(format!(
                            "pochhammer length must be nonnegative, got {k}"
                        )));
                    }
                    let x = match name.as_str() {
                        "qpoch" => XPart::One,
                        "apoch" => XPart::A,
                        _ => XPart::AInv,
                    };
                    if x != XPart::One && F::var_a().is_none() {
                        return Err(DslError::Unbound {
                            pos: *pos,
                            name: "a".into(),
                        });
                    }
                    f.mul_poch(x, *t, *d, *k as u64)
                }
                ("cyclo", [m]) | ("cyclo2", [m]) => {
                    if *m < 1 {
                        return Err(DslError::Eval(format!(
                            "cyclotomic index must be positive, got {m}"
                        )));
                    }
                    let mut phi = cyclotomic_in::<F>(*m as u64);
                    if name == "cyclo2" {
                        phi = phi.subst_power(2);
                    }
                    f = f.mul(&FactoredRatFunc::from_poly(phi));
                }
                _ => {
                    return Err(DslError::Unbound {
                        pos: *pos,
                        name: name.clone(),
                    })
                }
            }
            Ok(f)
        }
        Expr::Bin(op, a, b) => {
            let x = eval_expr::<F>(a, binding)?;
            let y = eval_expr::<F>(b, binding)?;
            Ok(match op {
                BinOp::Add => x.add(&y),
                BinOp::Sub => x.sub(&y),
                BinOp::Mul => x.mul(&y),
                BinOp::Div => {
                    if y.is_zero() {
                        return Err(DslError::Eval("division by zero".into()));
                    }
                    x.div(&y)
                }
            })
        }
        Expr::Pow(base, exp) => {
            let b = eval_expr::<F>(base, binding)?;
            let e = eval_iexpr(exp, binding)?;
            if b.is_zero() && e < 0 {
                return Err(DslError::Eval("negative power of zero".into()));
            }
            // q^e gets the monomial-denominator representation directly
            if matches!(base.as_ref(), Expr::Q) {
                let mut f = FactoredRatFunc::one();
                f.mul_qpow(e);
                return Ok(f);
            }
            Ok(b.pow_i64(e))
        }
        Expr::Sum { var, lo, hi, body } => {
            let lo = eval_iexpr(lo, binding)?;
            let hi = eval_iexpr(hi, binding)?;
            let mut acc = FactoredRatFunc::zero();
            let mut inner = binding.clone();
            let mut k = lo;
            while k <= hi {
                inner.insert(var.clone(), k);
                acc = acc.add(&eval_expr::<F>(body, &inner)?);
                k += 1;
            }
            Ok(acc)
        }
    }
}

/// Evaluate an expression to a reduced rational function over `Q`.
pub fn evaluate(e: &Expr, binding: &Binding) -> Result<RatFunc<BigRational>, DslError> {
    Ok(eval_expr::<BigRational>(e, binding)?.into_ratfunc())
}

/// Evaluate an expression to a reduced rational function over `Q(a)`.
pub fn evaluate_param(e: &Expr, binding: &Binding) -> Result<RatFunc<ParamField>, DslError> {
    Ok(eval_expr::<ParamField>(e, binding)?.into_ratfunc())
}

// ---------------------------------------------------------------------------
// File checking
// ---------------------------------------------------------------------------

/// Per-binding outcome of a file check.
#[derive(Clone, Debug)]
pub enum CheckOutcome {
    Verified(VerificationResult),
    /// The claim could not be evaluated at this binding; other bindings and
    /// claims still run.
    EvalError {
        claim_id: String,
        params: Params,
        message: String,
    },
}

/// All bindings of the claim's parameters within `1..=n_max` satisfying the
/// constraints. All but one parameter are normally pinned by equality
/// constraints, so the grid stays small.
pub fn enumerate_bindings(ast: &ClaimAst, bounds: &Bounds) -> Result<Vec<Binding>, DslError> {
    let names = ast.param_names();
    let mut out = Vec::new();
    let mut binding = Binding::new();
    fn rec(
        names: &[String],
        at: usize,
        binding: &mut Binding,
        ast: &ClaimAst,
        bounds: &Bounds,
        out: &mut Vec<Binding>,
    ) -> Result<(), DslError> {
        if at == names.len() {
            for c in &ast.constraints {
                if !eval_constraint(c, binding)? {
                    return Ok(());
                }
            }
            out.push(binding.clone());
            return Ok(());
        }
        for v in 1..=bounds.n_max {
            binding.insert(names[at].clone(), v);
            rec(names, at + 1, binding, ast, bounds, out)?;
        }
        binding.remove(&names[at]);
        Ok(())
    }
    rec(&names, 0, &mut binding, ast, bounds, &mut out)?;
    Ok(out)
}

fn check_one<F: Field>(
    ast: &ClaimAst,
    binding: &Binding,
) -> Result<VerificationResult, DslError> {
    let start = std::time::Instant::now();
    let lhs = eval_expr::<F>(&ast.lhs, binding)?.into_ratfunc();
    let rhs = eval_expr::<F>(&ast.rhs, binding)?.into_ratfunc();
    let modulus = eval_expr::<F>(&ast.modulus, binding)?.into_ratfunc();
    if !modulus.den().is_one() {
        return Err(DslError::Eval(format!(
            "modulus of `{}` is not a polynomial",
            ast.name
        )));
    }
    if modulus.num().degree_or_zero() < 1 {
        return Err(DslError::Eval(format!(
            "modulus of `{}` is constant",
            ast.name
        )));
    }
    let m = Modulus::from_poly(modulus.num().clone());
    let res = check_congruent(&lhs, &rhs, &m);
    Ok(VerificationResult {
        claim_id: ast.name.clone(),
        params: binding.clone(),
        holds: res.holds,
        conjectural: false,
        reason: res.reason.as_str().to_string(),
        witness_factor: res.witness_factor.as_ref().map(|w| w.to_string()),
        degrees: Degrees {
            lhs: lhs.degree(),
            rhs: rhs.degree(),
            modulus: m.degree() as i64,
        },
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

/// Parse a `.qcl` source and verify every claim over all admissible
/// bindings within the bounds. A parse failure fails the whole file;
/// evaluation errors are reported per binding.
pub fn check_source(source: &str, bounds: &Bounds) -> Result<Vec<CheckOutcome>, DslError> {
    let claims = parse(source)?;
    let mut out = Vec::new();
    for ast in &claims {
        let bindings = match enumerate_bindings(ast, bounds) {
            Ok(b) => b,
            Err(e) => {
                out.push(CheckOutcome::EvalError {
                    claim_id: ast.name.clone(),
                    params: Params::new(),
                    message: e.to_string(),
                });
                continue;
            }
        };
        for binding in bindings {
            let result = if ast.uses_a() {
                check_one::<ParamField>(ast, &binding)
            } else {
                check_one::<BigRational>(ast, &binding)
            };
            match result {
                Ok(r) => out.push(CheckOutcome::Verified(r)),
                Err(e) => out.push(CheckOutcome::EvalError {
                    claim_id: ast.name.clone(),
                    params: binding.clone(),
                    message: e.to_string(),
                }),
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::claims::{build_sides, params_from, ClaimSides};

    const THM1_QCL: &str = r#"
claim thm1_trunc {
  params: n % 4 == 1, n >= 1;
  lhs: sum k = 0 .. (n-1)/4 of
       (qint(8*k+1) * qpoch(1,4,k)^4 / qpoch(4,4,k)^4 * q^(2*k));
  rhs: qpoch(2,4,(n-1)/4) / qpoch(4,4,(n-1)/4) * qint(n) * q^((1-n)/4);
  modulus: qint(n) * cyclo(n)^2;
}
"#;

    #[test]
    fn tokenize_examples() {
        let toks = tokenize("qint(n)").unwrap();
        let kinds: Vec<_> = toks.iter().map(|t| (t.kind, t.text.as_str())).collect();
        assert_eq!(
            kinds,
            vec![
                (TokenKind::Ident, "qint"),
                (TokenKind::Symbol, "("),
                (TokenKind::Ident, "n"),
                (TokenKind::Symbol, ")"),
                (TokenKind::Eof, "<eof>"),
            ]
        );
        let toks = tokenize("q^(2*k) # comment\n").unwrap();
        assert_eq!(toks.len(), 8);
        assert_eq!(toks[1].text, "^");
        // illegal character with position
        match tokenize("@").unwrap_err() {
            DslError::Lex { pos, .. } => assert_eq!((pos.line, pos.col), (1, 1)),
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn positions_increase() {
        let toks = tokenize(THM1_QCL).unwrap();
        for w in toks.windows(2) {
            let a = (w[0].pos.line, w[0].pos.col);
            let b = (w[1].pos.line, w[1].pos.col);
            assert!(a < b, "{a:?} vs {b:?}");
        }
    }

    #[test]
    fn parse_examples() {
        let claims = parse(THM1_QCL).unwrap();
        assert_eq!(claims.len(), 1);
        let c = &claims[0];
        assert_eq!(c.name, "thm1_trunc");
        assert_eq!(c.param_names(), vec!["n".to_string()]);
        match &c.lhs {
            Expr::Sum { var, hi, .. } => {
                assert_eq!(var, "k");
                assert_eq!(format!("{hi}"), "(n - 1) / 4");
            }
            e => panic!("expected sum, got {e:?}"),
        }
        // missing body
        let bad = "claim x { params: n >= 1; lhs: sum k = 0 .. n of ; rhs: 1; modulus: q; }";
        assert!(matches!(parse(bad), Err(DslError::Parse { .. })));
        // unbound identifier
        let bad = "claim x { params: n >= 1; lhs: qint(m); rhs: 1; modulus: q - 1; }";
        match parse(bad).unwrap_err() {
            DslError::Unbound { name, .. } => assert_eq!(name, "m"),
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn pretty_print_round_trip() {
        let claims = parse(THM1_QCL).unwrap();
        for c in &claims {
            let printed = format!("{c}");
            let reparsed = parse(&printed).unwrap();
            assert_eq!(reparsed.len(), 1);
            assert_eq!(&reparsed[0], c, "round-trip through:\n{printed}");
        }
    }

    #[test]
    fn evaluate_examples() {
        // qint(5) = [5]
        let e = parse("claim t { params: n >= 1; lhs: qint(5); rhs: 1; modulus: q - 1; }")
            .unwrap();
        let binding: Binding = params_from(&[("n", 1)]);
        let v = evaluate(&e[0].lhs, &binding).unwrap();
        assert_eq!(
            v,
            RatFunc::from_poly(crate::Poly::from_i64_coeffs(&[1, 1, 1, 1, 1]))
        );
        // sum k = 0..1 of q^k = 1 + q
        let e = parse(
            "claim t { params: n >= 1; lhs: sum k = 0 .. 1 of q^k; rhs: 1; modulus: q - 1; }",
        )
        .unwrap();
        let v = evaluate(&e[0].lhs, &binding).unwrap();
        assert_eq!(v, RatFunc::from_poly(crate::Poly::from_i64_coeffs(&[1, 1])));
        // inexact division is an error
        let e = parse(THM1_QCL).unwrap();
        let bad: Binding = params_from(&[("n", 6)]);
        assert!(matches!(
            evaluate(&e[0].lhs, &bad),
            Err(DslError::Eval(_))
        ));
    }

    #[test]
    fn thm1_file_matches_registry_builders() {
        let claims = parse(THM1_QCL).unwrap();
        for n in [1i64, 5, 9, 13] {
            let binding: Binding = params_from(&[("n", n)]);
            let lhs = evaluate(&claims[0].lhs, &binding).unwrap();
            let rhs = evaluate(&claims[0].rhs, &binding).unwrap();
            let modulus = evaluate(&claims[0].modulus, &binding).unwrap();
            match build_sides("thm1_trunc", &params_from(&[("n", n)])).unwrap() {
                ClaimSides::Plain {
                    lhs: bl,
                    rhs: br,
                    modulus: bm,
                } => {
                    assert_eq!(lhs, bl.into_ratfunc(), "lhs at n={n}");
                    assert_eq!(rhs, br.into_ratfunc(), "rhs at n={n}");
                    assert_eq!(modulus.num(), bm.product(), "modulus at n={n}");
                }
                _ => panic!("expected plain sides"),
            }
        }
    }

    #[test]
    fn check_source_runs_claims() {
        let out = check_source(THM1_QCL, &Bounds::default()).unwrap();
        assert_eq!(out.len(), 4); // n in {1, 5, 9, 13}
        for o in &out {
            match o {
                CheckOutcome::Verified(r) => assert!(r.holds, "{r:?}"),
                CheckOutcome::EvalError { message, .. } => panic!("eval error: {message}"),
            }
        }
        // a wrong exponent makes the claim fail with remainder-nonzero
        let wrong = THM1_QCL.replace("q^(2*k)", "q^(3*k)");
        let out = check_source(&wrong, &Bounds::default()).unwrap();
        let failures: Vec<_> = out
            .iter()
            .filter_map(|o| match o {
                CheckOutcome::Verified(r) if !r.holds => Some(r.reason.clone()),
                _ => None,
            })
            .collect();
        assert!(!failures.is_empty());
        assert!(failures.iter().all(|r| r == "remainder-nonzero"));
        // empty file: no results
        assert!(check_source("", &Bounds::default()).unwrap().is_empty());
    }

    #[test]
    fn parametric_file() {
        let src = r#"
claim thm3_like {
  params: n == 5;
  lhs: sum k = 0 .. (n-1)/4 of
       (qint(8*k+1) * qpoch(1,4,k)^2 * apoch(1,4,k) * iapoch(1,4,k)
        / (qpoch(4,4,k)^2 * apoch(4,4,k) * iapoch(4,4,k)) * q^(2*k));
  rhs: qpoch(2,4,(n-1)/4) / qpoch(4,4,(n-1)/4) * qint(n) * q^((1-n)/4);
  modulus: qint(n);
}
"#;
        let out = check_source(src, &Bounds::default()).unwrap();
        assert_eq!(out.len(), 1);
        match &out[0] {
            CheckOutcome::Verified(r) => assert!(r.holds, "{r:?}"),
            CheckOutcome::EvalError { message, .. } => panic!("eval error: {message}"),
        }
    }
}

//! Morphism expressions.
//!
//! ```text
//! sum     := term (('+' | '-') term)*
//! term    := '-' term | tensor
//! tensor  := compose (('x' | '⊗') compose)*
//! compose := atom (('*' | 'o' | '∘') atom)*
//! atom    := number | [shape] matching | name | '(' sum ')'
//! name    := u_i | s_i | id_m | R_i '(' int ')' | E '(' int ')'
//!          | Pf '(' [shape] int (',' int)* [';' matching] ')'
//! ```
//!
//! A matching literal `(1,3)(2,4)` is one token, so `(` followed by a pair is never a
//! parenthesised expression. `r|s:` in front of a matching bends it into `D(r, s)`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use pfcat::brauer::{generator_s, generator_u, idempotent_constructions, r_element};
use pfcat::pfaffian::PfGenerator;
use pfcat::{BrauerError, Diagram, PerfectMatching, PfaffianError, Rational, RationalMorphism};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at {pos}: {message}")]
pub struct SyntaxError {
    pub pos: Pos,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ElabError {
    #[error("at {pos}: cannot {op} {left} with {right}")]
    Shape {
        pos: Pos,
        op: &'static str,
        left: Kind,
        right: Kind,
    },
    #[error("at {pos}: {message}")]
    Invalid { pos: Pos, message: String },
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Number(Rational),
    Diagram(Diagram),
    U(usize),
    S(usize),
    Id(usize),
    R(usize, i64),
    E(usize),
    Pf {
        shape: Option<(usize, usize)>,
        subset: Vec<usize>,
        rest: Vec<(usize, usize)>,
    },
    Neg(Box<Node>),
    Add(Box<Node>, Box<Node>),
    Sub(Box<Node>, Box<Node>),
    Compose(Box<Node>, Box<Node>),
    Tensor(Box<Node>, Box<Node>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Node {
    pub expr: Expr,
    pub pos: Pos,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Rational),
    Shape(usize, usize),
    Matching(Vec<(usize, usize)>),
    Name(String, Option<usize>),
    Plus,
    Minus,
    Compose,
    Tensor,
    LParen,
    RParen,
    Comma,
    Semi,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Num(c) => write!(f, "number {c}"),
            Tok::Shape(r, s) => write!(f, "shape {r}|{s}:"),
            Tok::Matching(_) => f.write_str("matching literal"),
            Tok::Name(n, _) => write!(f, "name {n:?}"),
            Tok::Plus => f.write_str("'+'"),
            Tok::Minus => f.write_str("'-'"),
            Tok::Compose => f.write_str("composition"),
            Tok::Tensor => f.write_str("tensor product"),
            Tok::LParen => f.write_str("'('"),
            Tok::RParen => f.write_str("')'"),
            Tok::Comma => f.write_str("','"),
            Tok::Semi => f.write_str("';'"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

struct Lexer {
    chars: Vec<char>,
    at: usize,
    line: usize,
    column: usize,
}

impl Lexer {
    fn pos(&self) -> Pos {
        Pos {
            line: self.line,
            column: self.column,
        }
    }

    fn peek(&self, ahead: usize) -> Option<char> {
        self.chars.get(self.at + ahead).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek(0)?;
        self.at += 1;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn skip_space(&mut self) {
        while self.peek(0).is_some_and(char::is_whitespace) {
            self.bump();
        }
    }

    fn error(&self, pos: Pos, message: impl Into<String>) -> SyntaxError {
        SyntaxError {
            pos,
            message: message.into(),
        }
    }

    fn digits(&mut self) -> String {
        let mut s = String::new();
        while let Some(c) = self.peek(0).filter(char::is_ascii_digit) {
            s.push(c);
            self.bump();
        }
        s
    }

    fn small(&self, digits: &str, pos: Pos) -> Result<usize, SyntaxError> {
        digits
            .parse()
            .map_err(|_| self.error(pos, format!("{digits} is too large")))
    }

    /// Length in chars of a matching literal starting at the current `(`, if there is one.
    fn matching_ahead(&self) -> Option<usize> {
        let mut i = 0;
        let mut groups = 0;
        loop {
            while self.peek(i).is_some_and(char::is_whitespace) && groups > 0 {
                i += 1;
            }
            if self.peek(i) != Some('(') {
                return (groups > 0).then_some(i);
            }
            let mut j = i + 1;
            let skip = |j: &mut usize| {
                while self.peek(*j).is_some_and(char::is_whitespace) {
                    *j += 1;
                }
            };
            skip(&mut j);
            if self.peek(j) == Some(')') {
                // `()` stands alone
                return (groups == 0).then_some(j + 1);
            }
            for expect in [',', ')'] {
                let start = j;
                while self.peek(j).is_some_and(|c| c.is_ascii_digit()) {
                    j += 1;
                }
                if j == start {
                    return (groups > 0).then_some(i);
                }
                skip(&mut j);
                if self.peek(j) != Some(expect) {
                    return (groups > 0).then_some(i);
                }
                j += 1;
                skip(&mut j);
            }
            groups += 1;
            i = j;
        }
    }

    fn matching(&mut self, len: usize) -> Result<Vec<(usize, usize)>, SyntaxError> {
        let text: String = (0..len).filter_map(|_| self.bump()).collect();
        let pos = self.pos();
        let mut pairs = Vec::new();
        for group in text.split(')').map(|g| g.trim().trim_start_matches('(')) {
            if group.trim().is_empty() {
                continue;
            }
            let (a, b) = group.split_once(',').expect("checked by matching_ahead");
            pairs.push((self.small(a.trim(), pos)?, self.small(b.trim(), pos)?));
        }
        Ok(pairs)
    }

    fn next(&mut self, after_call_name: bool) -> Result<(Tok, Pos), SyntaxError> {
        self.skip_space();
        let pos = self.pos();
        let Some(c) = self.peek(0) else {
            return Ok((Tok::Eof, pos));
        };
        if c == '(' && !after_call_name {
            if let Some(len) = self.matching_ahead() {
                return Ok((Tok::Matching(self.matching(len)?), pos));
            }
        }
        if c.is_ascii_digit() {
            let whole = self.digits();
            match self.peek(0) {
                Some('|') => {
                    self.bump();
                    let bottom = self.digits();
                    if bottom.is_empty() || self.peek(0) != Some(':') {
                        return Err(self.error(self.pos(), "expected r|s: before a matching"));
                    }
                    self.bump();
                    return Ok((Tok::Shape(self.small(&whole, pos)?, self.small(&bottom, pos)?), pos));
                }
                Some('/') => {
                    self.bump();
                    let den = self.digits();
                    if den.is_empty() {
                        return Err(self.error(self.pos(), "expected a denominator after '/'"));
                    }
                    let den: BigInt = den.parse().expect("digits");
                    if den.is_zero() {
                        return Err(self.error(pos, "zero denominator"));
                    }
                    let num: BigInt = whole.parse().expect("digits");
                    return Ok((Tok::Num(Rational::new(num, den)), pos));
                }
                _ => return Ok((Tok::Num(Rational::from_integer(whole.parse().expect("digits"))), pos)),
            }
        }
        if c.is_ascii_alphabetic() {
            let mut word = String::new();
            while let Some(c) = self.peek(0).filter(char::is_ascii_alphabetic) {
                word.push(c);
                self.bump();
            }
            let index = if self.peek(0) == Some('_') {
                self.bump();
                let at = self.pos();
                let d = self.digits();
                if d.is_empty() {
                    return Err(self.error(at, format!("expected an index after {word}_")));
                }
                Some(self.small(&d, at)?)
            } else {
                None
            };
            return Ok(match (word.as_str(), index) {
                ("x", None) => (Tok::Tensor, pos),
                ("o", None) => (Tok::Compose, pos),
                _ => (Tok::Name(word, index), pos),
            });
        }
        self.bump();
        let tok = match c {
            '+' => Tok::Plus,
            '-' | '−' => Tok::Minus,
            '*' | '∘' | '·' => Tok::Compose,
            '⊗' => Tok::Tensor,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            ';' => Tok::Semi,
            other => return Err(self.error(pos, format!("unexpected character {other:?}"))),
        };
        Ok((tok, pos))
    }
}

struct Parser {
    lexer: Lexer,
    tok: Tok,
    pos: Pos,
}

impl Parser {
    fn advance(&mut self) -> Result<(), SyntaxError> {
        let call = matches!(&self.tok, Tok::Name(n, _) if n == "R" || n == "E" || n == "Pf");
        (self.tok, self.pos) = self.lexer.next(call)?;
        Ok(())
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, SyntaxError> {
        Err(SyntaxError {
            pos: self.pos,
            message: message.into(),
        })
    }

    fn expect(&mut self, want: Tok) -> Result<(), SyntaxError> {
        if self.tok != want {
            return self.error(format!("expected {want}, found {}", self.tok));
        }
        self.advance()
    }

    fn sum(&mut self) -> Result<Node, SyntaxError> {
        let mut left = self.term()?;
        loop {
            let pos = self.pos;
            let build: fn(Box<Node>, Box<Node>) -> Expr = match self.tok {
                Tok::Plus => Expr::Add,
                Tok::Minus => Expr::Sub,
                _ => return Ok(left),
            };
            self.advance()?;
            let right = self.term()?;
            left = Node {
                expr: build(Box::new(left), Box::new(right)),
                pos,
            };
        }
    }

    fn term(&mut self) -> Result<Node, SyntaxError> {
        if self.tok == Tok::Minus {
            let pos = self.pos;
            self.advance()?;
            let inner = self.term()?;
            return Ok(Node {
                expr: Expr::Neg(Box::new(inner)),
                pos,
            });
        }
        self.tensor()
    }

    fn tensor(&mut self) -> Result<Node, SyntaxError> {
        let mut left = self.compose()?;
        while self.tok == Tok::Tensor {
            let pos = self.pos;
            self.advance()?;
            let right = self.compose()?;
            left = Node {
                expr: Expr::Tensor(Box::new(left), Box::new(right)),
                pos,
            };
        }
        Ok(left)
    }

    fn compose(&mut self) -> Result<Node, SyntaxError> {
        let mut left = self.atom()?;
        while self.tok == Tok::Compose {
            let pos = self.pos;
            self.advance()?;
            let right = self.atom()?;
            left = Node {
                expr: Expr::Compose(Box::new(left), Box::new(right)),
                pos,
            };
        }
        Ok(left)
    }

    fn integer(&mut self) -> Result<i64, SyntaxError> {
        let negative = self.tok == Tok::Minus;
        if negative {
            self.advance()?;
        }
        let Tok::Num(c) = &self.tok else {
            return self.error(format!("expected an integer, found {}", self.tok));
        };
        let value = match c.is_integer().then(|| c.to_integer().to_i64()).flatten() {
            Some(v) => v,
            None => return self.error(format!("expected an integer, found {c}")),
        };
        self.advance()?;
        Ok(if negative { -value } else { value })
    }

    fn count(&mut self) -> Result<usize, SyntaxError> {
        let pos = self.pos;
        let v = self.integer()?;
        usize::try_from(v).map_err(|_| SyntaxError {
            pos,
            message: format!("expected a nonnegative integer, found {v}"),
        })
    }

    fn matching_literal(&mut self) -> Result<Vec<(usize, usize)>, SyntaxError> {
        match std::mem::replace(&mut self.tok, Tok::Eof) {
            Tok::Matching(pairs) => {
                self.advance()?;
                Ok(pairs)
            }
            other => {
                self.tok = other;
                self.error(format!("expected a matching like (1,2)(3,4), found {}", self.tok))
            }
        }
    }

    fn diagram(&mut self, shape: Option<(usize, usize)>) -> Result<Node, SyntaxError> {
        let pos = self.pos;
        let pairs = self.matching_literal()?;
        let err = |e: pfcat::DiagramError| SyntaxError {
            pos,
            message: e.to_string(),
        };
        let m = PerfectMatching::new(pairs).map_err(err)?;
        let d = match shape {
            Some((r, s)) => Diagram::new(r, s, m).map_err(err)?,
            None => Diagram::boundary(m),
        };
        Ok(Node {
            expr: Expr::Diagram(d),
            pos,
        })
    }

    fn atom(&mut self) -> Result<Node, SyntaxError> {
        let pos = self.pos;
        let node = |expr| Node { expr, pos };
        match self.tok.clone() {
            Tok::Num(c) => {
                self.advance()?;
                Ok(node(Expr::Number(c)))
            }
            Tok::Matching(_) => self.diagram(None),
            Tok::Shape(r, s) => {
                self.advance()?;
                self.diagram(Some((r, s)))
            }
            Tok::LParen => {
                self.advance()?;
                let inner = self.sum()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            Tok::Name(name, index) => {
                let needs_index = |p: &Self| match index {
                    Some(i) if i > 0 || name == "id" => Ok(i),
                    Some(_) => p.error(format!("{name}_0 is not a generator; indices start at 1")),
                    None => p.error(format!("{name} needs an index, as in {name}_1")),
                };
                match name.as_str() {
                    "u" | "s" | "id" => {
                        let i = needs_index(self)?;
                        self.advance()?;
                        Ok(node(match name.as_str() {
                            "u" => Expr::U(i),
                            "s" => Expr::S(i),
                            _ => Expr::Id(i),
                        }))
                    }
                    "R" => {
                        let i = needs_index(self)?;
                        self.advance()?;
                        self.expect(Tok::LParen)?;
                        let k = self.integer()?;
                        self.expect(Tok::RParen)?;
                        Ok(node(Expr::R(i, k)))
                    }
                    "E" if index.is_none() => {
                        self.advance()?;
                        self.expect(Tok::LParen)?;
                        let m = self.count()?;
                        self.expect(Tok::RParen)?;
                        Ok(node(Expr::E(m)))
                    }
                    "Pf" if index.is_none() => {
                        self.advance()?;
                        self.expect(Tok::LParen)?;
                        self.pfaffian(pos)
                    }
                    _ => self.error(format!("unknown name {name:?}; expected u_i, s_i, id_m, R_i(k), E(m) or Pf(...)")),
                }
            }
            other => self.error(format!("expected an operand, found {other}")),
        }
    }

    fn pfaffian(&mut self, pos: Pos) -> Result<Node, SyntaxError> {
        let shape = match self.tok {
            Tok::Shape(r, s) => {
                self.advance()?;
                Some((r, s))
            }
            _ => None,
        };
        let mut subset = vec![self.count()?];
        while self.tok == Tok::Comma {
            self.advance()?;
            subset.push(self.count()?);
        }
        let rest = if self.tok == Tok::Semi {
            self.advance()?;
            self.matching_literal()?
        } else {
            Vec::new()
        };
        self.expect(Tok::RParen)?;
        Ok(Node {
            expr: Expr::Pf {
                shape,
                subset,
                rest,
            },
            pos,
        })
    }
}

pub fn parse_expr(text: &str) -> Result<Node, SyntaxError> {
    let lexer = Lexer {
        chars: text.chars().collect(),
        at: 0,
        line: 1,
        column: 1,
    };
    let mut p = Parser {
        lexer,
        tok: Tok::Eof,
        pos: Pos { line: 1, column: 1 },
    };
    (p.tok, p.pos) = p.lexer.next(false)?;
    if p.tok == Tok::Eof {
        return p.error("empty expression");
    }
    let node = p.sum()?;
    if p.tok != Tok::Eof {
        return p.error(format!("unexpected {} after a complete expression", p.tok));
    }
    Ok(node)
}

// printing: 1 = sum, 2 = tensor, 3 = compose, 4 = atom

fn level(e: &Expr) -> u8 {
    match e {
        Expr::Add(..) | Expr::Sub(..) | Expr::Neg(_) => 1,
        Expr::Tensor(..) => 2,
        Expr::Compose(..) => 3,
        _ => 4,
    }
}

struct Wrapped<'a>(&'a Node, bool);

impl fmt::Display for Wrapped<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.1 {
            write!(f, "({})", self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lv = |n: &Node| level(&n.expr);
        match &self.expr {
            Expr::Number(c) => write!(f, "{c}"),
            Expr::Diagram(d) => write!(f, "{d}"),
            Expr::U(i) => write!(f, "u_{i}"),
            Expr::S(i) => write!(f, "s_{i}"),
            Expr::Id(m) => write!(f, "id_{m}"),
            Expr::R(i, k) => write!(f, "R_{i}({k})"),
            Expr::E(m) => write!(f, "E({m})"),
            Expr::Pf {
                shape,
                subset,
                rest,
            } => {
                f.write_str("Pf(")?;
                if let Some((r, s)) = shape {
                    write!(f, "{r}|{s}: ")?;
                }
                let list: Vec<String> = subset.iter().map(usize::to_string).collect();
                f.write_str(&list.join(","))?;
                if !rest.is_empty() {
                    f.write_str("; ")?;
                    for (a, b) in rest {
                        write!(f, "({a},{b})")?;
                    }
                }
                f.write_str(")")
            }
            Expr::Neg(a) => write!(f, "-{}", Wrapped(a, lv(a) < 2 && !matches!(a.expr, Expr::Neg(_)))),
            Expr::Add(a, b) => write!(f, "{} + {}", a, Wrapped(b, lv(b) == 1 && !matches!(b.expr, Expr::Neg(_)))),
            Expr::Sub(a, b) => write!(f, "{} - {}", a, Wrapped(b, lv(b) == 1)),
            Expr::Tensor(a, b) => write!(f, "{} x {}", Wrapped(a, lv(a) < 2), Wrapped(b, lv(b) <= 2)),
            Expr::Compose(a, b) => write!(f, "{} * {}", Wrapped(a, lv(a) < 3), Wrapped(b, lv(b) <= 3)),
        }
    }
}

/// What an expression denotes before evaluation: a number or a morphism shape.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Scalar,
    Shape(usize, usize),
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kind::Scalar => f.write_str("a scalar"),
            Kind::Shape(r, s) => write!(f, "D({r},{s})"),
        }
    }
}

/// Evaluation settings. Generators `u_i`, `s_i`, `R_i(k)` act on `strands` strands; when
/// unset, on the fewest strands that fit every generator index in the expression.
#[derive(Debug, Clone)]
pub struct Context {
    pub n: usize,
    pub delta: Rational,
    pub strands: Option<usize>,
    pub construction: String,
}

impl Context {
    pub fn new(n: usize, delta: Rational) -> Self {
        Self {
            n,
            delta,
            strands: None,
            construction: "sum".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Scalar(Rational),
    Morphism(RationalMorphism),
}

impl Value {
    /// Scalars become multiples of the empty diagram.
    pub fn into_morphism(self) -> RationalMorphism {
        match self {
            Value::Morphism(m) => m,
            Value::Scalar(c) => RationalMorphism::identity(0).scale(&c),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Scalar(c) => write!(f, "{c}"),
            Value::Morphism(m) => write!(f, "{m}"),
        }
    }
}

fn widest_generator(node: &Node) -> usize {
    match &node.expr {
        Expr::U(i) | Expr::S(i) | Expr::R(i, _) => i + 1,
        Expr::Neg(a) => widest_generator(a),
        Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Compose(a, b) | Expr::Tensor(a, b) => {
            widest_generator(a).max(widest_generator(b))
        }
        _ => 0,
    }
}

fn pf_shape(shape: Option<(usize, usize)>, subset: &[usize], rest: &[(usize, usize)]) -> (usize, usize) {
    shape.unwrap_or_else(|| {
        let points = subset
            .iter()
            .copied()
            .chain(rest.iter().flat_map(|&(a, b)| [a, b]))
            .max()
            .unwrap_or(0);
        (0, points)
    })
}

fn invalid(pos: Pos, e: impl fmt::Display) -> ElabError {
    ElabError::Invalid {
        pos,
        message: e.to_string(),
    }
}

/// Shape-checks `node` without building anything.
pub fn check(node: &Node, ctx: &Context) -> Result<Kind, ElabError> {
    let width = ctx.strands.unwrap_or_else(|| widest_generator(node));
    kind_of(node, width)
}

fn kind_of(node: &Node, width: usize) -> Result<Kind, ElabError> {
    let pos = node.pos;
    let mismatch = |op, left, right| ElabError::Shape { pos, op, left, right };
    Ok(match &node.expr {
        Expr::Number(_) => Kind::Scalar,
        Expr::Diagram(d) => Kind::Shape(d.top(), d.bottom()),
        Expr::U(i) | Expr::S(i) | Expr::R(i, _) => {
            if i + 1 > width {
                return Err(invalid(pos, format!("generator index {i} needs at least {} strands, have {width}", i + 1)));
            }
            Kind::Shape(width, width)
        }
        Expr::Id(m) => Kind::Shape(*m, *m),
        Expr::E(m) => {
            if *m == 0 {
                return Err(invalid(pos, "E(m) needs m >= 1"));
            }
            Kind::Shape(*m, *m)
        }
        Expr::Pf {
            shape,
            subset,
            rest,
        } => {
            let (r, s) = pf_shape(*shape, subset, rest);
            Kind::Shape(r, s)
        }
        Expr::Neg(a) => kind_of(a, width)?,
        Expr::Add(a, b) | Expr::Sub(a, b) => {
            let (l, r) = (kind_of(a, width)?, kind_of(b, width)?);
            match (l, r) {
                (Kind::Scalar, k) | (k, Kind::Scalar) => match k {
                    Kind::Shape(x, y) if x != y => return Err(mismatch("add", l, r)),
                    k => k,
                },
                (l, r) if l == r => l,
                _ => return Err(mismatch("add", l, r)),
            }
        }
        Expr::Compose(a, b) => {
            let (l, r) = (kind_of(a, width)?, kind_of(b, width)?);
            match (l, r) {
                (Kind::Scalar, k) | (k, Kind::Scalar) => k,
                (Kind::Shape(x, y), Kind::Shape(z, w)) if y == z => Kind::Shape(x, w),
                _ => return Err(mismatch("compose", l, r)),
            }
        }
        Expr::Tensor(a, b) => match (kind_of(a, width)?, kind_of(b, width)?) {
            (Kind::Scalar, k) | (k, Kind::Scalar) => k,
            (Kind::Shape(x, y), Kind::Shape(z, w)) => Kind::Shape(x + z, y + w),
        },
    })
}

/// Shape-checks and then evaluates `node`.
pub fn evaluate(node: &Node, ctx: &Context) -> Result<Value, ElabError> {
    let width = ctx.strands.unwrap_or_else(|| widest_generator(node));
    kind_of(node, width)?;
    eval(node, ctx, width)
}

fn promote(v: Value, like: &RationalMorphism) -> RationalMorphism {
    match v {
        Value::Morphism(m) => m,
        Value::Scalar(c) => RationalMorphism::identity(like.top()).scale(&c),
    }
}

fn eval(node: &Node, ctx: &Context, width: usize) -> Result<Value, ElabError> {
    let pos = node.pos;
    let brauer = |e: BrauerError| invalid(pos, e);
    let morph = |m: RationalMorphism| Ok(Value::Morphism(m));
    match &node.expr {
        Expr::Number(c) => Ok(Value::Scalar(c.clone())),
        Expr::Diagram(d) => morph(RationalMorphism::from_diagram(d.clone())),
        Expr::U(i) => morph(RationalMorphism::from_diagram(generator_u(*i, width).map_err(brauer)?)),
        Expr::S(i) => morph(RationalMorphism::from_diagram(generator_s(*i, width).map_err(brauer)?)),
        Expr::Id(m) => morph(RationalMorphism::identity(*m)),
        Expr::R(i, k) => morph(r_element(*i, *k, width, &ctx.delta).map_err(brauer)?),
        Expr::E(m) => {
            let registry = idempotent_constructions();
            let construction = registry.get(&ctx.construction).map_err(|e| invalid(pos, e))?;
            morph(construction.build(m - 1, &ctx.delta).map_err(brauer)?)
        }
        Expr::Pf {
            shape,
            subset,
            rest,
        } => {
            let (r, s) = pf_shape(*shape, subset, rest);
            let g = PfGenerator::new(ctx.n, r, s, subset.iter().copied(), rest.iter().copied())
                .map_err(|e: PfaffianError| invalid(pos, e))?;
            morph(g.pfaffian())
        }
        Expr::Neg(a) => Ok(match eval(a, ctx, width)? {
            Value::Scalar(c) => Value::Scalar(-c),
            Value::Morphism(m) => Value::Morphism(m.scale(&-Rational::one())),
        }),
        Expr::Add(a, b) | Expr::Sub(a, b) => {
            let (l, r) = (eval(a, ctx, width)?, eval(b, ctx, width)?);
            let subtract = matches!(node.expr, Expr::Sub(..));
            match (l, r) {
                (Value::Scalar(x), Value::Scalar(y)) => Ok(Value::Scalar(if subtract { x - y } else { x + y })),
                (l, r) => {
                    let (l, r) = match (&l, &r) {
                        (Value::Morphism(m), _) => (promote(l.clone(), m), promote(r, m)),
                        (_, Value::Morphism(m)) => (promote(l, m), promote(r.clone(), m)),
                        _ => unreachable!(),
                    };
                    let out = if subtract { l.sub(&r) } else { l.add(&r) };
                    morph(out.map_err(brauer)?)
                }
            }
        }
        Expr::Compose(a, b) => match (eval(a, ctx, width)?, eval(b, ctx, width)?) {
            (Value::Scalar(x), Value::Scalar(y)) => Ok(Value::Scalar(x * y)),
            (Value::Scalar(c), Value::Morphism(m)) | (Value::Morphism(m), Value::Scalar(c)) => morph(m.scale(&c)),
            (Value::Morphism(x), Value::Morphism(y)) => morph(x.compose(&y, &ctx.delta).map_err(brauer)?),
        },
        Expr::Tensor(a, b) => match (eval(a, ctx, width)?, eval(b, ctx, width)?) {
            (Value::Scalar(x), Value::Scalar(y)) => Ok(Value::Scalar(x * y)),
            (Value::Scalar(c), Value::Morphism(m)) | (Value::Morphism(m), Value::Scalar(c)) => morph(m.scale(&c)),
            (Value::Morphism(x), Value::Morphism(y)) => morph(x.tensor(&y)),
        },
    }
}

/// Parses and evaluates in one go, for callers that only want the morphism.
pub fn eval_str(text: &str, ctx: &Context) -> Result<Value, String> {
    let node = parse_expr(text).map_err(|e| e.to_string())?;
    evaluate(&node, ctx).map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use pfcat::brauer::symplectic_delta;

    fn ctx(n: usize) -> Context {
        Context::new(n, symplectic_delta(n))
    }

    fn value(text: &str, n: usize) -> RationalMorphism {
        eval_str(text, &ctx(n)).unwrap().into_morphism()
    }

    #[test]
    fn precedence_and_printing() {
        let e = parse_expr("2*u_1 + s_1 o u_1 x id_1 - (u_1 + s_1)").unwrap();
        assert_eq!(e.to_string(), "2 * u_1 + s_1 * u_1 x id_1 - (u_1 + s_1)");
        let again = parse_expr(&e.to_string()).unwrap();
        assert_eq!(again.to_string(), e.to_string());
        assert_eq!(parse_expr("a ∘ b").unwrap_err().pos.column, 1);
        let e = parse_expr("(u_1 x u_1) o s_2 ⊗ E(2)").unwrap();
        assert_eq!(e.to_string(), "(u_1 x u_1) * s_2 x E(2)");
    }

    #[test]
    fn literals() {
        let e = parse_expr("(1,3)(2,4)").unwrap();
        assert_eq!(check(&e, &ctx(1)).unwrap(), Kind::Shape(0, 4));
        let e = parse_expr("2|2: (1,3) (2,4)").unwrap();
        assert_eq!(e.to_string(), "2|2:(1,3)(2,4)");
        let e = parse_expr("Pf(1,2,3,4)").unwrap();
        assert_eq!(e.to_string(), "Pf(1,2,3,4)");
        let e = parse_expr("Pf(2|4: 1,2,3,6; (4,5))").unwrap();
        assert_eq!(check(&e, &ctx(1)).unwrap(), Kind::Shape(2, 4));
        assert_eq!(parse_expr("-3/4 * (1,2)").unwrap().to_string(), "-3/4 * (1,2)");
    }

    #[test]
    fn errors_carry_positions() {
        let err = parse_expr("u_1 +\n  * s_1").unwrap_err();
        assert_eq!(err.pos, Pos { line: 2, column: 3 });
        let err = parse_expr("E(2) E(2)").unwrap_err();
        assert_eq!(err.pos.column, 6);
        assert!(parse_expr("1/0").is_err());
        assert!(parse_expr("R_1(").is_err());
        let e = parse_expr("E(2) * (1,2)").unwrap();
        let err = check(&e, &ctx(1)).unwrap_err();
        assert_eq!(err.to_string(), "at line 1, column 6: cannot compose D(2,2) with D(0,2)");
    }

    #[test]
    fn evaluation() {
        assert_eq!(value("E(2) * E(2)", 1), value("E(2)", 1));
        assert_eq!(value("u_1 o s_1", 1), value("u_1", 1));
        assert_eq!(value("u_1 * u_1", 1), value("-2 * u_1", 1));
        assert_eq!(value("s_1 * s_1", 2), value("id_2", 2));
        // scalars are promoted to multiples of the identity in sums
        assert_eq!(value("1/2 * (1 + s_1)", 1), value("1/2*id_2 + 1/2*s_1", 1));
        assert_eq!(value("Pf(1,2,3,4)", 1), value("(1,2)(3,4) + (1,3)(2,4) + (1,4)(2,3)", 1));
        assert!(eval_str("R_1(2)", &Context::new(1, Rational::from_integer((-2).into()))).is_err());
    }
}

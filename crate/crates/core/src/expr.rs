//! Scalar-field expressions in `x` and `y`.
//!
//! Grammar, loosest binding first:
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := factor (("*" | "/") factor)*
//! factor := "-" factor | power
//! power  := atom ("^" factor)?
//! atom   := number | "x" | "y" | "pi" | "e" | func "(" expr ")" | "(" expr ")"
//! func   := "sin" | "cos" | "tan" | "exp" | "log" | "sqrt" | "abs"
//! ```
//!
//! `^` is right-associative and binds tighter than unary minus, so `-x^2`
//! is `-(x^2)`. Trigonometric functions take radians.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

use crate::gasket::Point2;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown identifier {name:?} at offset {offset}")]
    UnknownIdentifier { offset: usize, name: String },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("{function} is undefined at {argument}")]
    Domain { function: &'static str, argument: f64 },
    #[error("non-finite result {value} from {operation}")]
    NonFinite { operation: &'static str, value: f64 },
    #[error("no table value at {0}")]
    NotInTable(Point2),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Sin,
    Cos,
    Tan,
    Exp,
    Log,
    Sqrt,
    Abs,
}

impl Func {
    fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Tan => "tan",
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Sqrt => "sqrt",
            Func::Abs => "abs",
        }
    }

    fn lookup(name: &str) -> Option<Func> {
        Some(match name {
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "tan" => Func::Tan,
            "exp" => Func::Exp,
            "log" => Func::Log,
            "sqrt" => Func::Sqrt,
            "abs" => Func::Abs,
            _ => return None,
        })
    }

    fn apply(self, v: f64) -> Result<f64, EvalError> {
        let domain = |ok: bool| {
            if ok {
                Ok(())
            } else {
                Err(EvalError::Domain {
                    function: self.name(),
                    argument: v,
                })
            }
        };
        let out = match self {
            Func::Sin => v.sin(),
            Func::Cos => v.cos(),
            Func::Tan => v.tan(),
            Func::Exp => v.exp(),
            Func::Log => {
                domain(v > 0.0)?;
                v.ln()
            }
            Func::Sqrt => {
                domain(v >= 0.0)?;
                v.sqrt()
            }
            Func::Abs => v.abs(),
        };
        finite(self.name(), out)
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

impl BinOp {
    fn symbol(self) -> char {
        match self {
            BinOp::Add => '+',
            BinOp::Sub => '-',
            BinOp::Mul => '*',
            BinOp::Div => '/',
            BinOp::Pow => '^',
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(f64),
    X,
    Y,
    Pi,
    E,
    Neg(Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
}

fn finite(operation: &'static str, value: f64) -> Result<f64, EvalError> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(EvalError::NonFinite { operation, value })
    }
}

impl Expr {
    pub fn eval(&self, x: f64, y: f64) -> Result<f64, EvalError> {
        Ok(match self {
            Expr::Num(v) => *v,
            Expr::X => x,
            Expr::Y => y,
            Expr::Pi => std::f64::consts::PI,
            Expr::E => std::f64::consts::E,
            Expr::Neg(inner) => -inner.eval(x, y)?,
            Expr::Call(func, arg) => func.apply(arg.eval(x, y)?)?,
            Expr::Binary(op, lhs, rhs) => {
                let a = lhs.eval(x, y)?;
                let b = rhs.eval(x, y)?;
                match op {
                    BinOp::Add => finite("+", a + b)?,
                    BinOp::Sub => finite("-", a - b)?,
                    BinOp::Mul => finite("*", a * b)?,
                    BinOp::Div => finite("/", a / b)?,
                    BinOp::Pow => {
                        if a < 0.0 && b.fract() != 0.0 {
                            return Err(EvalError::Domain {
                                function: "^",
                                argument: a,
                            });
                        }
                        finite("^", a.powf(b))?
                    }
                }
            }
        })
    }
}

/// Fully parenthesised form; reparsing it yields the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(v) => write!(f, "{v:?}"),
            Expr::X => f.write_str("x"),
            Expr::Y => f.write_str("y"),
            Expr::Pi => f.write_str("pi"),
            Expr::E => f.write_str("e"),
            Expr::Neg(inner) => write!(f, "(-{inner})"),
            Expr::Binary(op, lhs, rhs) => write!(f, "({lhs} {} {rhs})", op.symbol()),
            Expr::Call(func, arg) => write!(f, "{}({arg})", func.name()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(f64),
    Ident(String),
    Op(char),
    LParen,
    RParen,
    End,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        if c.is_ascii_digit() || c == b'.' {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            if i < bytes.len() && bytes[i] == b'.' {
                i += 1;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
            }
            // exponent only when digits follow, otherwise `e` is the constant
            if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                let mut j = i + 1;
                if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                    j += 1;
                }
                if j < bytes.len() && bytes[j].is_ascii_digit() {
                    while j < bytes.len() && bytes[j].is_ascii_digit() {
                        j += 1;
                    }
                    i = j;
                }
            }
            let literal = &text[start..i];
            let value = literal.parse::<f64>().map_err(|_| ParseError::Syntax {
                offset: start,
                message: format!("malformed number {literal:?}"),
            })?;
            tokens.push((start, Token::Num(value)));
        } else if c.is_ascii_alphabetic() || c == b'_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            tokens.push((start, Token::Ident(text[start..i].to_string())));
        } else {
            let token = match c {
                b'+' | b'-' | b'*' | b'/' | b'^' => Token::Op(c as char),
                b'(' => Token::LParen,
                b')' => Token::RParen,
                _ => {
                    let ch = text[start..].chars().next().unwrap_or('?');
                    return Err(ParseError::Syntax {
                        offset: start,
                        message: format!("unexpected character {ch:?}"),
                    });
                }
            };
            tokens.push((start, token));
            i += 1;
        }
    }
    tokens.push((text.len(), Token::End));
    Ok(tokens)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos].1
    }

    fn offset(&self) -> usize {
        self.tokens[self.pos].0
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].1.clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            offset: self.offset(),
            message: message.into(),
        })
    }

    fn expect_rparen(&mut self) -> Result<(), ParseError> {
        match self.peek() {
            Token::RParen => {
                self.bump();
                Ok(())
            }
            Token::End => self.error("expected ')' before end of input"),
            other => {
                let msg = format!("expected ')', found {}", describe(other));
                self.error(msg)
            }
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Token::Op('+') => BinOp::Add,
                Token::Op('-') => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.term()?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            let op = match self.peek() {
                Token::Op('*') => BinOp::Mul,
                Token::Op('/') => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.factor()?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        if let Token::Op('-') = self.peek() {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if let Token::Op('^') = self.peek() {
            self.bump();
            let exponent = self.factor()?;
            return Ok(Expr::Binary(BinOp::Pow, Box::new(base), Box::new(exponent)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let offset = self.offset();
        match self.bump() {
            Token::Num(v) => Ok(Expr::Num(v)),
            Token::LParen => {
                let inner = self.expr()?;
                self.expect_rparen()?;
                Ok(inner)
            }
            Token::Ident(name) => match name.as_str() {
                "x" => Ok(Expr::X),
                "y" => Ok(Expr::Y),
                "pi" => Ok(Expr::Pi),
                "e" => Ok(Expr::E),
                _ => {
                    let Some(func) = Func::lookup(&name) else {
                        return Err(ParseError::UnknownIdentifier { offset, name });
                    };
                    if *self.peek() != Token::LParen {
                        return self.error(format!("expected '(' after {name}"));
                    }
                    self.bump();
                    let arg = self.expr()?;
                    self.expect_rparen()?;
                    Ok(Expr::Call(func, Box::new(arg)))
                }
            },
            Token::End => Err(ParseError::Syntax {
                offset,
                message: "unexpected end of input".into(),
            }),
            other => Err(ParseError::Syntax {
                offset,
                message: format!("unexpected {}", describe(&other)),
            }),
        }
    }
}

fn describe(t: &Token) -> String {
    match t {
        Token::Num(v) => format!("number {v}"),
        Token::Ident(s) => format!("identifier {s:?}"),
        Token::Op(c) => format!("'{c}'"),
        Token::LParen => "'('".into(),
        Token::RParen => "')'".into(),
        Token::End => "end of input".into(),
    }
}

/// A parsed expression together with the text it came from.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldExpr {
    source: String,
    ast: Expr,
}

impl FieldExpr {
    pub fn ast(&self) -> &Expr {
        &self.ast
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn eval(&self, t: Point2) -> Result<f64, EvalError> {
        self.ast.eval(t.x, t.y)
    }
}

impl FromStr for FieldExpr {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

impl fmt::Display for FieldExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.ast.fmt(f)
    }
}

pub fn parse(text: &str) -> Result<FieldExpr, ParseError> {
    let mut parser = Parser {
        tokens: tokenize(text)?,
        pos: 0,
    };
    let ast = parser.expr()?;
    match parser.peek() {
        Token::End => Ok(FieldExpr {
            source: text.to_string(),
            ast,
        }),
        Token::RParen => parser.error("unmatched ')'"),
        other => {
            let msg = format!("unexpected {} after expression", describe(other));
            parser.error(msg)
        }
    }
}

pub fn evaluate(fe: &FieldExpr, t: Point2) -> Result<f64, EvalError> {
    fe.eval(t)
}

type FieldFn = dyn Fn(Point2) -> Result<f64, EvalError> + Send + Sync;

#[derive(Clone)]
enum FieldKind {
    Expr(Arc<FieldExpr>),
    Builtin(Arc<FieldFn>),
    Table(Arc<TableField>),
}

/// Values on a finite set of lattice points. Evaluating off the table is an
/// error.
#[derive(Debug, Clone)]
pub struct TableField {
    entries: std::collections::HashMap<crate::gasket::GridKey, f64>,
}

impl TableField {
    pub fn new(entries: impl IntoIterator<Item = (crate::gasket::GridKey, f64)>) -> Self {
        TableField {
            entries: entries.into_iter().collect(),
        }
    }

    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        self.entries.values().copied()
    }

    fn lookup(&self, t: Point2) -> Result<f64, EvalError> {
        // invert GridKey::point
        let grid = (1u32 << crate::gasket::MAX_DEPTH) as f64;
        let q = (t.y / 0.866_025_403_784_438_6 * grid).round();
        let p = (t.x * grid - 0.5 * q).round();
        if p < 0.0 || q < 0.0 {
            return Err(EvalError::NotInTable(t));
        }
        let key = crate::gasket::GridKey {
            p: p as u32,
            q: q as u32,
        };
        if key.point().distance(&t) > crate::gasket::MEMBERSHIP_TOL {
            return Err(EvalError::NotInTable(t));
        }
        self.entries
            .get(&key)
            .copied()
            .ok_or(EvalError::NotInTable(t))
    }
}

/// A real-valued map on the gasket.
#[derive(Clone)]
pub struct ScalarField {
    name: String,
    kind: FieldKind,
}

impl ScalarField {
    pub fn from_expr(expr: FieldExpr) -> Self {
        ScalarField {
            name: expr.source().to_string(),
            kind: FieldKind::Expr(Arc::new(expr)),
        }
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        parse(text).map(ScalarField::from_expr)
    }

    pub fn from_fn(
        name: impl Into<String>,
        f: impl Fn(Point2) -> Result<f64, EvalError> + Send + Sync + 'static,
    ) -> Self {
        ScalarField {
            name: name.into(),
            kind: FieldKind::Builtin(Arc::new(f)),
        }
    }

    pub fn constant(value: f64) -> Self {
        ScalarField::from_fn(format!("{value:?}"), move |_| Ok(value))
    }

    pub fn from_table(name: impl Into<String>, table: TableField) -> Self {
        ScalarField {
            name: name.into(),
            kind: FieldKind::Table(Arc::new(table)),
        }
    }

    /// Source text for expression fields, a label otherwise.
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn as_expr(&self) -> Option<&FieldExpr> {
        match &self.kind {
            FieldKind::Expr(e) => Some(e),
            _ => None,
        }
    }

    pub fn as_table(&self) -> Option<&TableField> {
        match &self.kind {
            FieldKind::Table(t) => Some(t),
            _ => None,
        }
    }

    pub fn eval(&self, t: Point2) -> Result<f64, EvalError> {
        match &self.kind {
            FieldKind::Expr(e) => e.eval(t),
            FieldKind::Builtin(f) => f(t),
            FieldKind::Table(table) => table.lookup(t),
        }
    }
}

impl fmt::Debug for ScalarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            FieldKind::Expr(_) => "expr",
            FieldKind::Builtin(_) => "builtin",
            FieldKind::Table(_) => "table",
        };
        f.debug_struct("ScalarField")
            .field("kind", &kind)
            .field("name", &self.name)
            .finish()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown figure {0}; expected 1 to 4")]
pub struct UnknownFigure(pub u32);

/// Edge term shared by the figure 2-4 base functions, i.e. `x(1-x)(y-0.866)`
/// written out the way the captions do.
const FIGURE_EDGE_TERM: &str = "- x^2*y + 0.866*x^2 + x*y - 0.866*x";

/// `(f, b)` source texts of the four reference figures.
pub fn figure_texts(figure: u32) -> Result<(String, String), UnknownFigure> {
    let (f, b) = match figure {
        1 => (
            "x/4 + y/9".to_string(),
            "x/4 + y/9 - 1.3*y*(x - 0.5)".to_string(),
        ),
        2..=4 => {
            let f = match figure {
                2 => "sin(x + 3.7) + 1.3*x",
                3 => "cos(2*x + 5) + sin(x + 2.7) - 1.5 + 1.3*x",
                _ => "cos(100*x + 5) + sin(x + 2.7) - 1.5 + 1.3*x",
            };
            (f.to_string(), format!("{f} {FIGURE_EDGE_TERM}"))
        }
        other => return Err(UnknownFigure(other)),
    };
    Ok((f, b))
}

pub fn builtin_figure_fields(figure: u32) -> Result<(ScalarField, ScalarField), UnknownFigure> {
    let (f, b) = figure_texts(figure)?;
    let parse = |s: &str| ScalarField::parse(s).expect("figure expressions are well formed");
    Ok((parse(&f), parse(&b)))
}

/// Bump text `c * l1 * l2 * l3` in barycentric coordinates; it vanishes at
/// the three corners of the base triangle.
pub fn barycentric_bump_text(c: f64) -> String {
    format!("{c:?}*(1 - x - y/sqrt(3))*(x - y/sqrt(3))*(2*y/sqrt(3))")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gasket::base_vertices;

    fn at(text: &str, x: f64, y: f64) -> f64 {
        parse(text).unwrap().ast.eval(x, y).unwrap()
    }

    #[test]
    fn precedence() {
        let e = parse("x/4 + y/9").unwrap();
        match e.ast() {
            Expr::Binary(BinOp::Add, l, r) => {
                assert!(matches!(**l, Expr::Binary(BinOp::Div, _, _)));
                assert!(matches!(**r, Expr::Binary(BinOp::Div, _, _)));
            }
            other => panic!("unexpected tree {other:?}"),
        }
        assert_eq!(
            parse("-x^2").unwrap().ast,
            Expr::Neg(Box::new(Expr::Binary(
                BinOp::Pow,
                Box::new(Expr::X),
                Box::new(Expr::Num(2.0))
            )))
        );
        assert_eq!(at("-x^2", 3.0, 0.0), -9.0);
        assert_eq!(at("2^3^2", 0.0, 0.0), 512.0);
        assert_eq!(at("2^-1", 0.0, 0.0), 0.5);
        assert_eq!(at("8/4/2", 0.0, 0.0), 1.0);
        assert_eq!(at("1 - 2 - 3", 0.0, 0.0), -4.0);
        assert_eq!(at("-2*3", 0.0, 0.0), -6.0);
        assert_eq!(at("1.5e2 + .5 + 2E-1", 0.0, 0.0), 150.7);
        assert_eq!(at("2*e", 0.0, 0.0), 2.0 * std::f64::consts::E);
        assert_eq!(at("pi", 0.0, 0.0), std::f64::consts::PI);
    }

    #[test]
    fn syntax_errors() {
        assert!(matches!(
            parse("sin(x+"),
            Err(ParseError::Syntax { offset: 6, .. })
        ));
        assert!(matches!(parse(""), Err(ParseError::Syntax { offset: 0, .. })));
        assert!(matches!(parse("x y"), Err(ParseError::Syntax { offset: 2, .. })));
        assert!(matches!(parse("(x))"), Err(ParseError::Syntax { offset: 3, .. })));
        assert!(matches!(parse("x # 2"), Err(ParseError::Syntax { offset: 2, .. })));
        assert!(matches!(parse("sin x"), Err(ParseError::Syntax { .. })));
        assert_eq!(
            parse("x + foo(y)"),
            Err(ParseError::UnknownIdentifier {
                offset: 4,
                name: "foo".into()
            })
        );
        assert!(matches!(parse("z"), Err(ParseError::UnknownIdentifier { .. })));
    }

    #[test]
    fn evaluation_examples() {
        assert_eq!(at("x/4 + y/9", 1.0, 0.0), 0.25);
        let v = at("sin(x + 3.7) + 1.3*x", 0.0, 0.0);
        assert!((v - (-0.5298361409)).abs() < 1e-9);
        let v = at("x/4 + y/9 - 1.3*y*(x-0.5)", 0.5, 0.8660254038);
        assert!((v - 0.2212250449).abs() < 1e-9);
    }

    #[test]
    fn domain_errors() {
        let e = parse("log(x)").unwrap();
        assert!(matches!(
            e.eval(Point2::new(0.0, 0.0)),
            Err(EvalError::Domain { function: "log", .. })
        ));
        let e = parse("sqrt(x - 1)").unwrap();
        assert!(matches!(e.eval(Point2::new(0.0, 0.0)), Err(EvalError::Domain { .. })));
        let e = parse("1/x").unwrap();
        assert!(matches!(e.eval(Point2::new(0.0, 0.0)), Err(EvalError::NonFinite { .. })));
        let e = parse("x^0.5").unwrap();
        assert!(e.eval(Point2::new(-1.0, 0.0)).is_err());
    }

    #[test]
    fn figure_fields() {
        let (f, b) = figure_texts(1).unwrap();
        assert_eq!(f, "x/4 + y/9");
        assert_eq!(b, "x/4 + y/9 - 1.3*y*(x - 0.5)");
        assert!(builtin_figure_fields(0).is_err());
        assert_eq!(builtin_figure_fields(5).unwrap_err(), UnknownFigure(5));

        // figure 2: b - f = x(1-x)(y - 0.866)
        let (f, b) = builtin_figure_fields(2).unwrap();
        for (x, y) in [(0.3, 0.2), (0.7, 0.1), (0.5, 0.5)] {
            let p = Point2::new(x, y);
            let want = x * (1.0 - x) * (y - 0.866);
            assert!((b.eval(p).unwrap() - f.eval(p).unwrap() - want).abs() < 1e-12);
        }
        let (f, _) = builtin_figure_fields(4).unwrap();
        let p = Point2::new(0.2, 0.1);
        let want = (100.0f64 * 0.2 + 5.0).cos() + (0.2f64 + 2.7).sin() - 1.5 + 1.3 * 0.2;
        assert!((f.eval(p).unwrap() - want).abs() < 1e-12);
    }

    #[test]
    fn figure_pairs_match_on_corners() {
        for fig in 1..=4 {
            let (f, b) = builtin_figure_fields(fig).unwrap();
            for p in base_vertices() {
                let d = (b.eval(p).unwrap() - f.eval(p).unwrap()).abs();
                // 0.866 is a rounded sqrt(3)/2
                assert!(d <= 1e-3, "figure {fig} at {p}: {d}");
                if fig == 1 {
                    assert!(d <= 1e-12);
                }
            }
        }
    }

    #[test]
    fn bump_vanishes_on_corners() {
        let bump = ScalarField::parse(&barycentric_bump_text(2.0)).unwrap();
        for p in base_vertices() {
            assert!(bump.eval(p).unwrap().abs() < 1e-15);
        }
        let centroid = Point2::new(0.5, 0.8660254037844386 / 3.0);
        assert!((bump.eval(centroid).unwrap() - 2.0 / 27.0).abs() < 1e-12);
    }

    #[test]
    fn table_fields() {
        use crate::gasket::{CellIndex, GridKey};
        let k = GridKey::corner(CellIndex::TWO).mapped(CellIndex::THREE);
        let t = ScalarField::from_table("t", TableField::new([(k, -3.0), (GridKey::corner(CellIndex::ONE), 1.0)]));
        assert_eq!(t.eval(k.point()).unwrap(), -3.0);
        assert!(t.eval(Point2::new(0.3, 0.3)).is_err());
    }
}

//! Interval calculus for `d₀`: certified atoms combined by the tensor,
//! suspension, submodule, summand, extension and finite-top rules.

use crate::error::{Error, Result};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;

/// `[lo, hi]`, with `hi = None` meaning unbounded.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Interval {
    pub lo: i64,
    pub hi: Option<i64>,
}

impl Interval {
    pub fn exact(v: i64) -> Self {
        Interval { lo: v, hi: Some(v) }
    }

    pub fn is_exact(&self) -> bool {
        self.hi == Some(self.lo)
    }

    pub fn contains(&self, v: i64) -> bool {
        self.lo <= v && self.hi.is_none_or(|h| v <= h)
    }

    fn checked(self) -> Result<Self> {
        match self.hi {
            Some(h) if h < self.lo => Err(Error::InvalidExpr(format!("empty interval [{}, {h}]", self.lo))),
            _ => Ok(self),
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.hi {
            Some(h) => write!(f, "[{},{}]", self.lo, h),
            None => write!(f, "[{},inf]", self.lo),
        }
    }
}

/// A module with a certified value or bounds for `d₀`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Atom {
    pub name: String,
    pub lo: i64,
    pub hi: Option<i64>,
    pub provenance: String,
}

impl Atom {
    pub fn new(name: &str, lo: i64, hi: Option<i64>, provenance: &str) -> Self {
        Atom { name: name.into(), lo, hi, provenance: provenance.into() }
    }
}

/// Atoms always available to the calculus.
pub fn builtin_atoms() -> Vec<Atom> {
    vec![
        Atom::new("h_e", 0, Some(0), "cohomology of an elementary abelian group"),
        Atom::new("lambda_e", 1, Some(1), "exterior algebra on a degree-1 class, nonzero only in degrees 0 and 1"),
        Atom::new("h_zp", 0, Some(0), "F_p[y] ⊗ Λ(x), the cohomology of Z/p"),
        Atom::new("sd16", 2, Some(2), "published value for the semidihedral group of order 16"),
    ]
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum D0Expr {
    Atom(Atom),
    /// `d₀(M ⊗ M') = d₀(M) + d₀(M')`.
    Tensor(Vec<D0Expr>),
    /// `d₀(Σ^n M) = d₀(M) + n`.
    Suspension(i64, Box<D0Expr>),
    /// A submodule of the product of the arguments.
    SubOf(Vec<D0Expr>),
    /// A direct summand of the argument.
    SummandOf(Box<D0Expr>),
    /// A module having the argument as a direct summand.
    HasSummand(Box<D0Expr>),
    /// An extension of the second argument by the first.
    Extension(Box<D0Expr>, Box<D0Expr>),
    /// A module concentrated in degrees `≤ n`.
    FiniteTop(i64),
    /// `d₀(T_E M) = d₀(M)`.
    TFunctor(Box<D0Expr>),
    /// Several facts about the same module.
    Both(Vec<D0Expr>),
}

impl fmt::Display for D0Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |f: &mut fmt::Formatter<'_>, name: &str, xs: &[D0Expr]| {
            write!(f, "{name}(")?;
            for (i, x) in xs.iter().enumerate() {
                if i > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")
        };
        match self {
            D0Expr::Atom(a) => write!(f, "{}", a.name),
            D0Expr::Tensor(xs) => list(f, "tensor", xs),
            D0Expr::Suspension(n, x) => write!(f, "suspend({n}, {x})"),
            D0Expr::SubOf(xs) => list(f, "sub", xs),
            D0Expr::SummandOf(x) => write!(f, "summand({x})"),
            D0Expr::HasSummand(x) => write!(f, "has_summand({x})"),
            D0Expr::Extension(a, b) => write!(f, "ext({a}, {b})"),
            D0Expr::FiniteTop(n) => write!(f, "top({n})"),
            D0Expr::TFunctor(x) => write!(f, "t({x})"),
            D0Expr::Both(xs) => list(f, "both", xs),
        }
    }
}

/// Evaluates an expression to an interval containing `d₀`.
pub fn d0_calculus(e: &D0Expr) -> Result<Interval> {
    derive(e, &mut Vec::new())
}

/// Every subexpression with its interval, innermost first.
pub fn d0_derivation(e: &D0Expr) -> Result<Vec<(String, Interval)>> {
    let mut steps = Vec::new();
    derive(e, &mut steps)?;
    Ok(steps)
}

fn nonempty(xs: &[D0Expr], what: &str) -> Result<()> {
    if xs.is_empty() {
        return Err(Error::InvalidExpr(format!("{what} needs at least one argument")));
    }
    Ok(())
}

fn derive(e: &D0Expr, steps: &mut Vec<(String, Interval)>) -> Result<Interval> {
    let all = |xs: &[D0Expr], steps: &mut Vec<(String, Interval)>| -> Result<Vec<Interval>> {
        xs.iter().map(|x| derive(x, steps)).collect()
    };
    let out = match e {
        D0Expr::Atom(a) => Interval { lo: a.lo, hi: a.hi },
        D0Expr::Tensor(xs) => {
            nonempty(xs, "tensor")?;
            let vs = all(xs, steps)?;
            Interval {
                lo: vs.iter().map(|v| v.lo).sum(),
                hi: vs.iter().map(|v| v.hi).sum::<Option<i64>>(),
            }
        }
        D0Expr::Suspension(n, x) => {
            if *n < 0 {
                return Err(Error::InvalidExpr(format!("negative suspension {n}")));
            }
            let v = derive(x, steps)?;
            Interval { lo: v.lo + n, hi: v.hi.map(|h| h + n) }
        }
        D0Expr::SubOf(xs) => {
            nonempty(xs, "sub")?;
            let vs = all(xs, steps)?;
            Interval { lo: 0, hi: vs.iter().map(|v| v.hi).collect::<Option<Vec<i64>>>().map(|h| h.into_iter().max().unwrap()) }
        }
        D0Expr::SummandOf(x) => Interval { lo: 0, hi: derive(x, steps)?.hi },
        D0Expr::HasSummand(x) => Interval { lo: derive(x, steps)?.lo, hi: None },
        D0Expr::Extension(a, b) => {
            let (va, vb) = (derive(a, steps)?, derive(b, steps)?);
            Interval { lo: va.lo, hi: va.hi.zip(vb.hi).map(|(x, y)| x.max(y)) }
        }
        D0Expr::FiniteTop(n) => {
            if *n < 0 {
                return Err(Error::InvalidExpr(format!("negative top degree {n}")));
            }
            Interval { lo: 0, hi: Some(*n) }
        }
        D0Expr::TFunctor(x) => derive(x, steps)?,
        D0Expr::Both(xs) => {
            nonempty(xs, "both")?;
            let vs = all(xs, steps)?;
            Interval {
                lo: vs.iter().map(|v| v.lo).max().unwrap(),
                hi: vs.iter().filter_map(|v| v.hi).min(),
            }
        }
    }
    .checked()?;
    steps.push((e.to_string(), out));
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Ident(String),
    Int(i64),
    Open,
    Close,
    Comma,
}

fn tokenize(s: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c == '(' || c == ')' || c == ',' {
            out.push(match c {
                '(' => Token::Open,
                ')' => Token::Close,
                _ => Token::Comma,
            });
            i += 1;
        } else if c.is_ascii_digit() || c == '-' {
            let start = i;
            i += 1;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            out.push(Token::Int(text.parse().map_err(|_| Error::InvalidExpr(format!("bad integer {text}")))?));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token::Ident(chars[start..i].iter().collect()));
        } else {
            return Err(Error::InvalidExpr(format!("unexpected character {c:?}")));
        }
    }
    Ok(out)
}

enum Arg {
    Int(i64),
    Expr(D0Expr),
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    atoms: &'a BTreeMap<String, Atom>,
}

impl Parser<'_> {
    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn arg(&mut self) -> Result<Arg> {
        match self.next() {
            Some(Token::Int(n)) => Ok(Arg::Int(n)),
            Some(Token::Ident(name)) => {
                if self.peek() != Some(&Token::Open) {
                    return self
                        .atoms
                        .get(&name)
                        .map(|a| Arg::Expr(D0Expr::Atom(a.clone())))
                        .ok_or_else(|| Error::MissingData(format!("no d0 atom named {name}")));
                }
                self.pos += 1;
                let mut args = Vec::new();
                if self.peek() != Some(&Token::Close) {
                    loop {
                        args.push(self.arg()?);
                        match self.next() {
                            Some(Token::Comma) => {}
                            Some(Token::Close) => break,
                            t => return Err(Error::InvalidExpr(format!("expected ',' or ')', found {t:?}"))),
                        }
                    }
                } else {
                    self.pos += 1;
                }
                build(&name, args).map(Arg::Expr)
            }
            t => Err(Error::InvalidExpr(format!("unexpected token {t:?}"))),
        }
    }
}

fn build(name: &str, args: Vec<Arg>) -> Result<D0Expr> {
    let arity = |n: usize| {
        if args.len() != n {
            Err(Error::InvalidExpr(format!("{name} takes {n} argument(s), got {}", args.len())))
        } else {
            Ok(())
        }
    };
    let exprs = |args: Vec<Arg>| -> Result<Vec<D0Expr>> {
        args.into_iter()
            .map(|a| match a {
                Arg::Expr(e) => Ok(e),
                Arg::Int(n) => Err(Error::InvalidExpr(format!("{name} expects expressions, got {n}"))),
            })
            .collect()
    };
    let one = |args: Vec<Arg>| -> Result<Box<D0Expr>> { Ok(Box::new(exprs(args)?.remove(0))) };
    match name {
        "tensor" => Ok(D0Expr::Tensor(exprs(args)?)),
        "sub" => Ok(D0Expr::SubOf(exprs(args)?)),
        "both" => Ok(D0Expr::Both(exprs(args)?)),
        "summand" => arity(1).and_then(|_| one(args)).map(D0Expr::SummandOf),
        "has_summand" => arity(1).and_then(|_| one(args)).map(D0Expr::HasSummand),
        "t" => arity(1).and_then(|_| one(args)).map(D0Expr::TFunctor),
        "ext" => {
            arity(2)?;
            let mut xs = exprs(args)?;
            let b = xs.pop().unwrap();
            Ok(D0Expr::Extension(Box::new(xs.pop().unwrap()), Box::new(b)))
        }
        "top" => match (arity(1), args.into_iter().next()) {
            (Ok(()), Some(Arg::Int(n))) => Ok(D0Expr::FiniteTop(n)),
            _ => Err(Error::InvalidExpr("top takes one integer".into())),
        },
        "suspend" => {
            arity(2)?;
            let mut it = args.into_iter();
            match (it.next(), it.next()) {
                (Some(Arg::Int(n)), Some(Arg::Expr(e))) => Ok(D0Expr::Suspension(n, Box::new(e))),
                _ => Err(Error::InvalidExpr("suspend takes an integer and an expression".into())),
            }
        }
        _ => Err(Error::InvalidExpr(format!("unknown rule {name}"))),
    }
}

/// Parses `tensor(lambda_e, summand(sl2))`-style expressions over the given atoms.
pub fn parse_expr(s: &str, atoms: &BTreeMap<String, Atom>) -> Result<D0Expr> {
    let mut parser = Parser { tokens: tokenize(s)?, pos: 0, atoms };
    match parser.arg()? {
        Arg::Expr(e) if parser.pos == parser.tokens.len() => Ok(e),
        Arg::Expr(_) => Err(Error::InvalidExpr("trailing input".into())),
        Arg::Int(_) => Err(Error::InvalidExpr("an expression cannot be a bare integer".into())),
    }
}

//! A small expression language for the embedded tables.
//!
//! Arithmetic over ℚ(i) with `+ - * / ^`, parentheses, the constant `i`,
//! `re(·)`, `im(·)`, `conj(·)` and named variables. Identifiers of the form
//! `e<digits>` are basis atoms: `e3` is the vector `e_3` in vector context
//! and `e134` the form `e^1∧e^3∧e^4` in form context. Conditions combine
//! comparisons (`== != < <= > >=`) with `and`, `or`, `not` and parentheses.
//!
//! Unassigned variables stay symbolic, so an expression evaluates to a
//! [`Poly`].

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{ParseError, Result};
use crate::forms::{basis_tuples, sort_with_sign};
use crate::linalg::{GaussianScalar, Scalar};
use crate::poly::Poly;

pub type GPoly = Poly<GaussianScalar>;
pub type Env = BTreeMap<String, GaussianScalar>;

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(Scalar),
    I,
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Call(Func, Box<Expr>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Func {
    Re,
    Im,
    Conj,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CmpOp {
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Cond {
    True,
    Cmp(CmpOp, Expr, Expr),
    And(Box<Cond>, Box<Cond>),
    Or(Box<Cond>, Box<Cond>),
    Not(Box<Cond>),
}

/// Basis indices (0-based) of an atom such as `e134`.
pub fn basis_atom(name: &str) -> Option<Vec<usize>> {
    let digits = name.strip_prefix('e')?;
    if digits.is_empty() || !digits.bytes().all(|b| (b'1'..=b'9').contains(&b)) {
        return None;
    }
    Some(digits.bytes().map(|b| (b - b'1') as usize).collect())
}

fn is_basis(name: &str) -> bool {
    basis_atom(name).is_some()
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(i64),
    Ident(String),
    Op(&'static str),
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let cs: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut p = 0;
    while p < cs.len() {
        let c = cs[p];
        if c.is_whitespace() {
            p += 1;
        } else if c.is_ascii_digit() {
            let st = p;
            while p < cs.len() && cs[p].is_ascii_digit() {
                p += 1;
            }
            let lit: String = cs[st..p].iter().collect();
            let n = lit.parse().map_err(|_| ParseError::new(format!("number `{lit}` too large")))?;
            out.push(Tok::Num(n));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let st = p;
            while p < cs.len() && (cs[p].is_ascii_alphanumeric() || cs[p] == '_') {
                p += 1;
            }
            out.push(Tok::Ident(cs[st..p].iter().collect()));
        } else if c == '(' {
            out.push(Tok::LParen);
            p += 1;
        } else if c == ')' {
            out.push(Tok::RParen);
            p += 1;
        } else {
            let two: String = cs[p..(p + 2).min(cs.len())].iter().collect();
            let op = ["==", "!=", "<=", ">="].into_iter().find(|o| *o == two);
            if let Some(op) = op {
                out.push(Tok::Op(op));
                p += 2;
            } else {
                let one = ["+", "-", "*", "/", "^", "<", ">"].into_iter().find(|o| o.starts_with(c));
                match one {
                    Some(op) => out.push(Tok::Op(op)),
                    None => return Err(ParseError::new(format!("unexpected character `{c}` in `{s}`")).into()),
                }
                p += 1;
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    src: &'a str,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Result<Self> {
        Ok(Self { toks: tokenize(src)?, pos: 0, src })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn err(&self, msg: &str) -> crate::Error {
        ParseError::new(format!("{msg} in `{}`", self.src)).into()
    }

    fn eat_op(&mut self, op: &str) -> bool {
        if matches!(self.peek(), Some(Tok::Op(o)) if *o == op) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn eat_ident(&mut self, word: &str) -> bool {
        if matches!(self.peek(), Some(Tok::Ident(w)) if w == word) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn done(&self) -> Result<()> {
        if self.pos == self.toks.len() {
            Ok(())
        } else {
            Err(self.err("trailing input"))
        }
    }

    fn cond(&mut self) -> Result<Cond> {
        let mut lhs = self.cond_and()?;
        while self.eat_ident("or") {
            let rhs = self.cond_and()?;
            lhs = Cond::Or(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn cond_and(&mut self) -> Result<Cond> {
        let mut lhs = self.cond_atom()?;
        while self.eat_ident("and") {
            let rhs = self.cond_atom()?;
            lhs = Cond::And(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn cond_atom(&mut self) -> Result<Cond> {
        if self.eat_ident("not") {
            return Ok(Cond::Not(Box::new(self.cond_atom()?)));
        }
        if self.eat_ident("true") {
            return Ok(Cond::True);
        }
        // a parenthesis opens either a grouped condition or an arithmetic term
        if matches!(self.peek(), Some(Tok::LParen)) {
            let save = self.pos;
            self.pos += 1;
            if let Ok(c) = self.cond() {
                if matches!(self.peek(), Some(Tok::RParen)) {
                    self.pos += 1;
                    if !matches!(self.peek(), Some(Tok::Op(_))) {
                        return Ok(c);
                    }
                }
            }
            self.pos = save;
        }
        let lhs = self.sum()?;
        let op = match self.peek() {
            Some(Tok::Op("==")) => CmpOp::Eq,
            Some(Tok::Op("!=")) => CmpOp::Ne,
            Some(Tok::Op("<")) => CmpOp::Lt,
            Some(Tok::Op("<=")) => CmpOp::Le,
            Some(Tok::Op(">")) => CmpOp::Gt,
            Some(Tok::Op(">=")) => CmpOp::Ge,
            _ => return Err(self.err("expected a comparison")),
        };
        self.pos += 1;
        let rhs = self.sum()?;
        Ok(Cond::Cmp(op, lhs, rhs))
    }

    fn sum(&mut self) -> Result<Expr> {
        let mut lhs = self.product()?;
        loop {
            if self.eat_op("+") {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.product()?));
            } else if self.eat_op("-") {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.product()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn product(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat_op("*") {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat_op("/") {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat_op("-") {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.eat_op("+") {
            return self.unary();
        }
        let base = self.atom()?;
        if self.eat_op("^") {
            match self.peek().cloned() {
                Some(Tok::Num(n)) if (0..=16).contains(&n) => {
                    self.pos += 1;
                    return Ok(Expr::Pow(Box::new(base), n as u32));
                }
                _ => return Err(self.err("exponent must be a small integer")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Expr::Num(Scalar::from(n)))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.sum()?;
                if !matches!(self.peek(), Some(Tok::RParen)) {
                    return Err(self.err("missing `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                let func = match name.as_str() {
                    "re" => Some(Func::Re),
                    "im" => Some(Func::Im),
                    "conj" => Some(Func::Conj),
                    _ => None,
                };
                if let Some(func) = func {
                    if !matches!(self.peek(), Some(Tok::LParen)) {
                        return Err(self.err("function call needs parentheses"));
                    }
                    let arg = self.atom()?;
                    return Ok(Expr::Call(func, Box::new(arg)));
                }
                if ["and", "or", "not", "true"].contains(&name.as_str()) {
                    return Err(self.err("keyword used as a value"));
                }
                if name == "i" {
                    Ok(Expr::I)
                } else {
                    Ok(Expr::Var(name))
                }
            }
            _ => Err(self.err("expected a value")),
        }
    }
}

pub fn parse_expr(s: &str) -> Result<Expr> {
    let mut p = Parser::new(s)?;
    let e = p.sum()?;
    p.done()?;
    Ok(e)
}

pub fn parse_cond(s: &str) -> Result<Cond> {
    if s.trim().is_empty() {
        return Ok(Cond::True);
    }
    let mut p = Parser::new(s)?;
    let c = p.cond()?;
    p.done()?;
    Ok(c)
}

fn eval_err(msg: impl fmt::Display) -> crate::Error {
    crate::Error::Invalid(msg.to_string())
}

impl Expr {
    /// Evaluates with `env` substituted; unassigned names stay symbolic.
    pub fn eval(&self, env: &Env) -> Result<GPoly> {
        Ok(match self {
            Expr::Num(n) => GPoly::constant(GaussianScalar::real(n.clone())),
            Expr::I => GPoly::constant(GaussianScalar::i()),
            Expr::Var(v) => match env.get(v) {
                Some(x) => GPoly::constant(x.clone()),
                None => GPoly::var(v),
            },
            Expr::Neg(a) => a.eval(env)?.neg(),
            Expr::Add(a, b) => a.eval(env)?.add(&b.eval(env)?),
            Expr::Sub(a, b) => a.eval(env)?.sub(&b.eval(env)?),
            Expr::Mul(a, b) => a.eval(env)?.mul(&b.eval(env)?),
            Expr::Div(a, b) => {
                let d = b.eval(env)?.as_constant().ok_or_else(|| eval_err("division by a non-constant"))?;
                let r = d.recip().ok_or_else(|| eval_err("division by zero"))?;
                a.eval(env)?.scale(&r)
            }
            Expr::Pow(a, e) => a.eval(env)?.pow(*e),
            Expr::Call(f, a) => {
                let v = a.eval(env)?.as_constant().ok_or_else(|| eval_err("re/im/conj of a symbolic value"))?;
                GPoly::constant(match f {
                    Func::Re => GaussianScalar::real(v.re),
                    Func::Im => GaussianScalar::real(v.im),
                    Func::Conj => v.conj(),
                })
            }
        })
    }

    /// Fully numeric evaluation.
    pub fn eval_constant(&self, env: &Env) -> Result<GaussianScalar> {
        let p = self.eval(env)?;
        p.as_constant().ok_or_else(|| eval_err(format!("unassigned variables {:?}", p.variables())))
    }

    pub fn variables(&self) -> std::collections::BTreeSet<String> {
        let mut out = std::collections::BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut std::collections::BTreeSet<String>) {
        match self {
            Expr::Var(v) => {
                out.insert(v.clone());
            }
            Expr::Neg(a) | Expr::Pow(a, _) | Expr::Call(_, a) => a.collect_vars(out),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Expr::Num(_) | Expr::I => {}
        }
    }
}

fn real(x: &GaussianScalar) -> Result<&Scalar> {
    if x.is_real() {
        Ok(&x.re)
    } else {
        Err(eval_err(format!("ordering comparison on non-real value {x}")))
    }
}

impl Cond {
    pub fn eval(&self, env: &Env) -> Result<bool> {
        Ok(match self {
            Cond::True => true,
            Cond::Cmp(op, a, b) => {
                let x = a.eval_constant(env)?;
                let y = b.eval_constant(env)?;
                match op {
                    CmpOp::Eq => x == y,
                    CmpOp::Ne => x != y,
                    CmpOp::Lt => real(&x)? < real(&y)?,
                    CmpOp::Le => real(&x)? <= real(&y)?,
                    CmpOp::Gt => real(&x)? > real(&y)?,
                    CmpOp::Ge => real(&x)? >= real(&y)?,
                }
            }
            Cond::And(a, b) => a.eval(env)? && b.eval(env)?,
            Cond::Or(a, b) => a.eval(env)? || b.eval(env)?,
            Cond::Not(a) => !a.eval(env)?,
        })
    }

    /// For a single `p != 0` condition, the polynomial `p` (with `env`
    /// substituted); `None` for any other shape.
    pub fn nonvanishing_poly(&self, env: &Env) -> Result<Option<GPoly>> {
        match self {
            Cond::Cmp(CmpOp::Ne, a, b) => Ok(Some(a.eval(env)?.sub(&b.eval(env)?))),
            _ => Ok(None),
        }
    }
}

/// Coefficients `[p_1, …, p_n]` of a linear combination of basis vectors.
pub fn to_vector(p: &GPoly, dim: usize) -> Result<Vec<GPoly>> {
    let (parts, rest) = p.linear_split(is_basis).ok_or_else(|| eval_err("product of basis vectors"))?;
    if !rest.is_zero() {
        return Err(eval_err(format!("vector expression has a scalar part {rest}")));
    }
    let mut out = vec![GPoly::zero(); dim];
    for (atom, coeff) in parts {
        let idx = basis_atom(&atom).expect("filtered by is_basis");
        if idx.len() != 1 || idx[0] >= dim {
            return Err(eval_err(format!("`{atom}` is not a basis vector of dimension {dim}")));
        }
        out[idx[0]] = out[idx[0]].add(&coeff);
    }
    Ok(out)
}

/// Lexicographic coordinates of a k-form written with basis atoms `eIJ…`.
pub fn to_form(p: &GPoly, dim: usize, degree: usize) -> Result<Vec<GPoly>> {
    let (parts, rest) = p.linear_split(is_basis).ok_or_else(|| eval_err("product of basis monomials"))?;
    if !rest.is_zero() {
        return Err(eval_err(format!("form expression has a scalar part {rest}")));
    }
    let tuples = basis_tuples(dim, degree);
    let mut out = vec![GPoly::zero(); tuples.len()];
    for (atom, coeff) in parts {
        let mut idx = basis_atom(&atom).expect("filtered by is_basis");
        if idx.len() != degree || idx.iter().any(|&i| i >= dim) {
            return Err(eval_err(format!("`{atom}` is not a basis {degree}-form in dimension {dim}")));
        }
        let Some(sign) = sort_with_sign(&mut idx) else { continue };
        let pos = tuples.iter().position(|t| *t == idx).expect("sorted tuple is a basis tuple");
        let c = if sign < 0 { coeff.neg() } else { coeff };
        out[pos] = out[pos].add(&c);
    }
    Ok(out)
}

/// Converts a parameter assignment into an evaluation environment.
pub fn env_from_params(params: &crate::lie::Params) -> Env {
    params.iter().map(|(k, v)| (k.clone(), GaussianScalar::real(v.clone()))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    fn g(re: i64, im: i64) -> GaussianScalar {
        GaussianScalar::new(q(re, 1), q(im, 1))
    }

    #[test]
    fn arithmetic() {
        let e = parse_expr("(1 + i)/2 * 2 - i^2").unwrap();
        assert_eq!(e.eval_constant(&Env::new()).unwrap(), g(2, 1));
        let e = parse_expr("im(b1)*im(d2)").unwrap();
        let env = Env::from([("b1".into(), g(1, 2)), ("d2".into(), g(0, -3))]);
        assert_eq!(e.eval_constant(&env).unwrap(), g(-6, 0));
        assert!(parse_expr("1 +").is_err());
        assert!(parse_expr("3 $ 4").is_err());
    }

    #[test]
    fn vectors_and_forms() {
        let env = Env::from([("lambda".into(), g(2, 0)), ("c2".into(), g(0, 1))]);
        let p = parse_expr("e4 - lambda*c2*e1 + c1*e3").unwrap().eval(&env).unwrap();
        let v = to_vector(&p, 4).unwrap();
        assert_eq!(v[0].as_constant(), Some(g(0, -2)));
        assert_eq!(v[3].as_constant(), Some(g(1, 0)));
        assert_eq!(v[2], GPoly::var("c1"));
        let f = parse_expr("a12_34*(e12 - e34) + a14*e41").unwrap().eval(&Env::new()).unwrap();
        let c = to_form(&f, 4, 2).unwrap();
        assert_eq!(c[0], GPoly::var("a12_34"));
        assert_eq!(c[2], GPoly::var("a14").neg());
        assert_eq!(c[5], GPoly::var("a12_34").neg());
        assert!(to_vector(&parse_expr("e1*e2").unwrap().eval(&Env::new()).unwrap(), 4).is_err());
    }

    #[test]
    fn conditions() {
        let env = Env::from([("alpha".into(), g(-1, 0)), ("beta".into(), g(1, 0))]);
        let c = parse_cond("alpha == -1 and (beta != -1 and beta != 1)").unwrap();
        assert!(!c.eval(&env).unwrap());
        let c = parse_cond("alpha - beta == -2 or not (beta >= 1)").unwrap();
        assert!(c.eval(&env).unwrap());
        let c = parse_cond("(alpha + 1)*beta == 0").unwrap();
        assert!(c.eval(&env).unwrap());
        assert_eq!(parse_cond("").unwrap(), Cond::True);
        assert!(parse_cond("i < 1").unwrap().eval(&Env::new()).is_err());
    }

    #[test]
    fn basis_atoms() {
        assert_eq!(basis_atom("e134"), Some(vec![0, 2, 3]));
        assert_eq!(basis_atom("eps"), None);
        assert_eq!(basis_atom("e"), None);
        assert_eq!(basis_atom("e0"), None);
    }
}

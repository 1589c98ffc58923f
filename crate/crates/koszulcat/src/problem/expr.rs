//! Arithmetic expressions over named basis elements:
//! `+ - *`, integer powers, parentheses and fractions such as `3/7`.

use num_bigint::BigInt;

use crate::linalg::{Field, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(BigInt, BigInt),
    Name(String, usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    /// The column of the `*`, for error messages.
    Mul(Box<Expr>, Box<Expr>, usize),
    Pow(Box<Expr>, u32),
}

/// A syntax or evaluation error at a 1-based character column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExprError {
    pub column: usize,
    pub message: String,
}

fn err<T>(column: usize, message: impl Into<String>) -> Result<T, ExprError> {
    Err(ExprError { column, message: message.into() })
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ExprError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push((Tok::Int(s.parse().expect("digits")), col));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), col));
        } else if "+-*^/()".contains(c) {
            out.push((Tok::Sym(c), col));
            i += 1;
        } else {
            return err(col, format!("unexpected character {c:?}"));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(_, c)| *c)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.unary()?;
        loop {
            let col = self.col();
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?), col);
            } else if matches!(self.peek(), Some(Tok::Ident(_)) | Some(Tok::Sym('('))) {
                // juxtaposition: `2x`, `3(x + y)`
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?), col);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ExprError> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.eat('+') {
            return self.unary();
        }
        let base = self.atom()?;
        if self.eat('^') {
            let col = self.col();
            match self.toks.get(self.pos) {
                Some((Tok::Int(k), _)) => {
                    let k: u32 = k.try_into().or_else(|_| err(col, "exponent too large"))?;
                    self.pos += 1;
                    return Ok(Expr::Pow(Box::new(base), k));
                }
                _ => return err(col, "expected a nonnegative integer exponent"),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ExprError> {
        let col = self.col();
        match self.toks.get(self.pos).cloned() {
            Some((Tok::Int(n), _)) => {
                self.pos += 1;
                if self.eat('/') {
                    let dcol = self.col();
                    match self.toks.get(self.pos).cloned() {
                        Some((Tok::Int(d), _)) => {
                            self.pos += 1;
                            if d == BigInt::from(0) {
                                return err(dcol, "division by zero");
                            }
                            Ok(Expr::Num(n, d))
                        }
                        _ => err(dcol, "only integer denominators are allowed"),
                    }
                } else {
                    Ok(Expr::Num(n, BigInt::from(1)))
                }
            }
            Some((Tok::Ident(s), _)) => {
                self.pos += 1;
                Ok(Expr::Name(s, col))
            }
            Some((Tok::Sym('('), _)) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return err(self.col(), "expected ')'");
                }
                Ok(e)
            }
            Some((Tok::Sym(c), _)) => err(col, format!("unexpected {c:?}")),
            None => err(col, "unexpected end of expression"),
        }
    }
}

pub fn parse(text: &str) -> Result<Expr, ExprError> {
    let toks = lex(text)?;
    let end = text.chars().count() + 1;
    let mut p = Parser { toks, pos: 0, end };
    let e = p.expr()?;
    if p.pos < p.toks.len() {
        return err(p.col(), "unexpected trailing input");
    }
    Ok(e)
}

/// What an expression evaluates into.
pub trait Domain {
    type Value: Clone;
    fn scalar(&self, c: Scalar) -> Self::Value;
    fn name(&self, name: &str) -> Result<Self::Value, String>;
    fn add(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value, String>;
    fn neg(&self, a: &Self::Value) -> Self::Value;
    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value, String>;
    fn field(&self) -> Field;
}

pub fn eval<D: Domain>(d: &D, e: &Expr) -> Result<D::Value, ExprError> {
    let at = |col: usize| move |message: String| ExprError { column: col, message };
    match e {
        Expr::Num(n, den) => Ok(d.scalar(
            d.field().from_fraction(n, den).map_err(|e| ExprError { column: 1, message: e.to_string() })?,
        )),
        Expr::Name(s, col) => d.name(s).map_err(at(*col)),
        Expr::Neg(a) => Ok(d.neg(&eval(d, a)?)),
        Expr::Add(a, b) => d.add(&eval(d, a)?, &eval(d, b)?).map_err(at(first_column(a))),
        Expr::Sub(a, b) => d.add(&eval(d, a)?, &d.neg(&eval(d, b)?)).map_err(at(first_column(a))),
        Expr::Mul(a, b, col) => d.mul(&eval(d, a)?, &eval(d, b)?).map_err(at(*col)),
        Expr::Pow(a, k) => {
            let base = eval(d, a)?;
            let mut acc = d.scalar(d.field().one());
            for _ in 0..*k {
                acc = d.mul(&acc, &base).map_err(at(first_column(a)))?;
            }
            Ok(acc)
        }
    }
}

fn first_column(e: &Expr) -> usize {
    match e {
        Expr::Num(..) => 1,
        Expr::Name(_, c) | Expr::Mul(_, _, c) => *c,
        Expr::Neg(a) | Expr::Add(a, _) | Expr::Sub(a, _) | Expr::Pow(a, _) => first_column(a),
    }
}

/// Linear combinations of a fixed list of basis names; products are only
/// allowed with a number.
pub struct Linear<'a> {
    pub field: Field,
    pub names: &'a [String],
}

#[derive(Clone, Debug)]
pub enum LinValue {
    Num(Scalar),
    Combo(Vec<(usize, Scalar)>),
}

impl LinValue {
    /// The combination, with a literal `0` accepted as the empty one.
    pub fn into_combo(self) -> Result<Vec<(usize, Scalar)>, String> {
        match self {
            LinValue::Combo(c) => Ok(c),
            LinValue::Num(c) if c.is_zero() => Ok(Vec::new()),
            LinValue::Num(c) => Err(format!("expected a combination of basis names, got the number {c}")),
        }
    }
}

fn normalize(mut terms: Vec<(usize, Scalar)>) -> Vec<(usize, Scalar)> {
    terms.sort_by_key(|(i, _)| *i);
    let mut out: Vec<(usize, Scalar)> = Vec::new();
    for (i, c) in terms {
        match out.last_mut() {
            Some((j, acc)) if *j == i => *acc += &c,
            _ => out.push((i, c)),
        }
    }
    out.retain(|(_, c)| !c.is_zero());
    out
}

impl Domain for Linear<'_> {
    type Value = LinValue;

    fn field(&self) -> Field {
        self.field
    }

    fn scalar(&self, c: Scalar) -> LinValue {
        LinValue::Num(c)
    }

    fn name(&self, name: &str) -> Result<LinValue, String> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| LinValue::Combo(vec![(i, self.field.one())]))
            .ok_or_else(|| format!("unknown name {name:?}"))
    }

    fn add(&self, a: &LinValue, b: &LinValue) -> Result<LinValue, String> {
        match (a, b) {
            (LinValue::Num(x), LinValue::Num(y)) => Ok(LinValue::Num(x + y)),
            (LinValue::Combo(x), LinValue::Combo(y)) => {
                Ok(LinValue::Combo(normalize(x.iter().chain(y).cloned().collect())))
            }
            (LinValue::Num(z), c @ LinValue::Combo(_)) | (c @ LinValue::Combo(_), LinValue::Num(z)) if z.is_zero() => {
                Ok(c.clone())
            }
            _ => Err("cannot add a number to a combination of basis names".into()),
        }
    }

    fn neg(&self, a: &LinValue) -> LinValue {
        match a {
            LinValue::Num(x) => LinValue::Num(-x),
            LinValue::Combo(c) => LinValue::Combo(c.iter().map(|(i, v)| (*i, -v)).collect()),
        }
    }

    fn mul(&self, a: &LinValue, b: &LinValue) -> Result<LinValue, String> {
        match (a, b) {
            (LinValue::Num(x), LinValue::Num(y)) => Ok(LinValue::Num(x * y)),
            (LinValue::Num(s), LinValue::Combo(c)) | (LinValue::Combo(c), LinValue::Num(s)) => {
                Ok(LinValue::Combo(normalize(c.iter().map(|(i, v)| (*i, v * s)).collect())))
            }
            _ => Err("basis names cannot be multiplied here".into()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lin(text: &str, names: &[&str]) -> Result<Vec<(usize, Scalar)>, ExprError> {
        let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let d = Linear { field: Field::Rational, names: &names };
        let v = eval(&d, &parse(text)?)?;
        v.into_combo().map_err(|message| ExprError { column: 1, message })
    }

    #[test]
    fn parses_combinations() {
        let q = Field::Rational;
        let c = lin("2*a - b/1 + 1/2 b - a", &["a", "b"]);
        assert!(c.is_err(), "b/1 divides a name");
        let c = lin("2*a - b + 1/2 b - a", &["a", "b"]).unwrap();
        assert_eq!(c, vec![(0, q.one()), (1, q.parse("-1/2").unwrap())]);
        assert_eq!(lin("0", &["a"]).unwrap(), vec![]);
        assert_eq!(lin("a - a", &["a"]).unwrap(), vec![]);
    }

    #[test]
    fn reports_columns() {
        let e = parse("x + * y").unwrap_err();
        assert_eq!(e.column, 5);
        let e = lin("a + c", &["a"]).unwrap_err();
        assert_eq!(e.column, 5);
        assert!(parse("x^y").is_err());
        assert!(parse("(x + y").is_err());
        assert!(parse("x $ y").is_err());
    }

    #[test]
    fn powers_and_juxtaposition() {
        let e = parse("3x^2").unwrap();
        assert!(matches!(e, Expr::Mul(_, ref b, _) if matches!(**b, Expr::Pow(_, 2))));
    }
}

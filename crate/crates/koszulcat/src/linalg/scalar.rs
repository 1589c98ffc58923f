use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coefficient field of every computation: the rationals or a prime field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    /// Prime field `F_p`. The modulus must be a prime below 2^32 so that
    /// products fit comfortably in `u64`.
    pub fn prime(p: u64) -> Result<Field> {
        if !(2..1 << 32).contains(&p) || !is_prime(p) {
            return Err(Error::Input(format!("{p} is not a supported prime modulus")));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => p,
        }
    }

    pub fn zero(self) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::zero()),
            Field::Prime(p) => Scalar::Modular { value: 0, modulus: p },
        }
    }

    pub fn one(self) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::one()),
            Field::Prime(p) => Scalar::Modular { value: 1 % p, modulus: p },
        }
    }

    pub fn from_i64(self, v: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => Scalar::Modular {
                value: v.rem_euclid(p as i64) as u64,
                modulus: p,
            },
        }
    }

    /// `num / den` in this field; fails if the denominator vanishes in it.
    pub fn from_fraction(self, num: &BigInt, den: &BigInt) -> Result<Scalar> {
        if den.is_zero() {
            return Err(Error::Input("zero denominator".into()));
        }
        match self {
            Field::Rational => Ok(Scalar::Rational(BigRational::new(num.clone(), den.clone()))),
            Field::Prime(p) => {
                let modulus = BigInt::from(p);
                let n = num.mod_floor(&modulus).to_u64().unwrap_or(0);
                let d = den.mod_floor(&modulus).to_u64().unwrap_or(0);
                if d == 0 {
                    return Err(Error::Input(format!(
                        "denominator {den} is not invertible modulo {p}"
                    )));
                }
                let value = mul_mod(n, inv_mod(d, p), p);
                Ok(Scalar::Modular { value, modulus: p })
            }
        }
    }

    /// Parse an exact field element: `"3"`, `"-3/7"`, or `"2 mod 5"`.
    pub fn parse(self, text: &str) -> Result<Scalar> {
        let text = text.trim();
        if let Some((value, modulus)) = text.split_once("mod") {
            let modulus: u64 = modulus
                .trim()
                .parse()
                .map_err(|_| Error::Input(format!("bad modulus in {text:?}")))?;
            if self != Field::Prime(modulus) {
                return Err(Error::Input(format!(
                    "element {text:?} does not belong to field {self}"
                )));
            }
            return self.parse(value);
        }
        let (num, den) = match text.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (text, "1"),
        };
        let num = BigInt::from_str(num).map_err(|_| Error::Input(format!("bad scalar {text:?}")))?;
        let den = BigInt::from_str(den).map_err(|_| Error::Input(format!("bad scalar {text:?}")))?;
        self.from_fraction(&num, &den)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Field> {
        let t = s.trim();
        match t {
            "Q" | "QQ" | "rational" | "rationals" => return Ok(Field::Rational),
            _ => {}
        }
        let digits = t
            .strip_prefix("GF(")
            .and_then(|r| r.strip_suffix(')'))
            .or_else(|| t.strip_prefix("F_"))
            .or_else(|| t.strip_prefix("Fp"))
            .or_else(|| t.strip_prefix('F'))
            .ok_or_else(|| Error::Input(format!("unknown field {s:?}")))?;
        let p: u64 = digits
            .trim()
            .parse()
            .map_err(|_| Error::Input(format!("unknown field {s:?}")))?;
        Field::prime(p)
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat: a^(p-2)
    let mut base = a % p;
    let mut exp = p - 2;
    let mut acc = 1 % p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Exact element of `Q` or `F_p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Modular { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Modular { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Modular { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Modular { value, .. } => *value == 1,
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Modular { value, modulus } => Scalar::Modular {
                value: inv_mod(*value, *modulus),
                modulus: *modulus,
            },
        })
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            Scalar::Modular { .. } => None,
        }
    }

    /// Multiply in place by `factor`; avoids a clone on the hot path.
    pub fn mul_assign_ref(&mut self, factor: &Scalar) {
        *self = &*self * factor;
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Modular { value, modulus } => write!(f, "{value} mod {modulus}"),
        }
    }
}

fn check_same(a: &Scalar, b: &Scalar) -> u64 {
    match (a, b) {
        (Scalar::Modular { modulus: p, .. }, Scalar::Modular { modulus: q, .. }) if p == q => *p,
        _ => panic!("mixed fields in scalar arithmetic: {} vs {}", a.field(), b.field()),
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            _ => {
                let p = check_same(self, rhs);
                let (Scalar::Modular { value: a, .. }, Scalar::Modular { value: b, .. }) = (self, rhs)
                else {
                    unreachable!()
                };
                Scalar::Modular { value: ((*a as u128 + *b as u128) % p as u128) as u64, modulus: p }
            }
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            _ => {
                let p = check_same(self, rhs);
                let (Scalar::Modular { value: a, .. }, Scalar::Modular { value: b, .. }) = (self, rhs)
                else {
                    unreachable!()
                };
                Scalar::Modular { value: (*a + p - *b) % p, modulus: p }
            }
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            _ => {
                let p = check_same(self, rhs);
                let (Scalar::Modular { value: a, .. }, Scalar::Modular { value: b, .. }) = (self, rhs)
                else {
                    unreachable!()
                };
                Scalar::Modular { value: mul_mod(*a, *b, p), modulus: p }
            }
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Modular { value, modulus } => Scalar::Modular {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        match (&mut *self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => *a += b,
            _ => *self = &*self + rhs,
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        match (&mut *self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => *a -= b,
            _ => *self = &*self - rhs,
        }
    }
}

/// Clear denominators of a rational row: returns integers proportional to
/// the input, with positive scale factor.
pub(crate) fn integer_row(values: &[BigRational]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for v in values {
        lcm = lcm.lcm(v.denom());
    }
    values
        .iter()
        .map(|v| (v * BigRational::from_integer(lcm.clone())).to_integer())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_arithmetic_is_reduced() {
        let q = Field::Rational;
        let a = q.parse("2/4").unwrap();
        assert_eq!(a.to_string(), "1/2");
        let b = q.parse("-3/6").unwrap();
        assert!((&a + &b).is_zero());
        assert_eq!((&a * &q.from_i64(4)).to_string(), "2");
        assert_eq!(q.parse("1/-2").unwrap().to_string(), "-1/2");
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = Field::prime(5).unwrap();
        let two = f.from_i64(2);
        let three = f.from_i64(3);
        assert!((&two + &three).is_zero());
        assert_eq!((&two * &three).to_string(), "1 mod 5");
        assert_eq!(two.inv().unwrap().to_string(), "3 mod 5");
        assert_eq!(f.parse("1/2").unwrap(), f.from_i64(3));
        assert_eq!(f.parse("4 mod 5").unwrap(), f.from_i64(-1));
        assert!(f.parse("1/5").is_err());
    }

    #[test]
    fn field_descriptors_parse() {
        assert_eq!("Q".parse::<Field>().unwrap(), Field::Rational);
        assert_eq!("F_7".parse::<Field>().unwrap(), Field::Prime(7));
        assert_eq!("GF(11)".parse::<Field>().unwrap(), Field::Prime(11));
        assert!("F_6".parse::<Field>().is_err());
    }
}

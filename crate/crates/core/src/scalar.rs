//! Exact scalars: arbitrary-precision rationals (also used for integer
//! presentations) and residues modulo a prime.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The base ring of a presentation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BaseRing {
    Rational,
    Integer,
    Prime(u64),
}

impl BaseRing {
    /// Checked constructor for a prime field.
    pub fn prime(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(BaseRing::Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    /// The field linear algebra runs over: integers lift to rationals.
    pub fn field(self) -> BaseRing {
        match self {
            BaseRing::Integer => BaseRing::Rational,
            other => other,
        }
    }

    pub fn is_field(self) -> bool {
        !matches!(self, BaseRing::Integer)
    }

    pub fn is_finite(self) -> bool {
        matches!(self, BaseRing::Prime(_))
    }

    /// 0 for rationals and integers.
    pub fn characteristic(self) -> u64 {
        match self {
            BaseRing::Prime(p) => p,
            _ => 0,
        }
    }

    pub fn zero(self) -> Scalar {
        Scalar::from_i64(self, 0)
    }

    pub fn one(self) -> Scalar {
        Scalar::from_i64(self, 1)
    }

    /// Short label used in files and reports: `Q`, `Z`, `F7`.
    pub fn label(self) -> String {
        match self {
            BaseRing::Rational => "Q".to_string(),
            BaseRing::Integer => "Z".to_string(),
            BaseRing::Prime(p) => format!("F{p}"),
        }
    }

    pub fn from_label(text: &str) -> Result<Self> {
        match text.trim() {
            "Q" | "q" => Ok(BaseRing::Rational),
            "Z" | "z" => Ok(BaseRing::Integer),
            other => {
                let digits = other
                    .strip_prefix('F')
                    .or_else(|| other.strip_prefix('f'))
                    .ok_or_else(|| Error::Parse(format!("unknown base ring `{other}`")))?;
                let p: u64 = digits
                    .parse()
                    .map_err(|_| Error::Parse(format!("unknown base ring `{other}`")))?;
                BaseRing::prime(p)
            }
        }
    }
}

impl fmt::Display for BaseRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p < 4 {
        return true;
    }
    if p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// An exact scalar.
///
/// Rationals are kept in lowest terms with a positive denominator (the
/// invariant `BigRational` maintains). Residues are canonical in `[0, p)`.
/// Mixing a rational with a residue, or residues of different moduli, is a
/// programming error and panics; public algebra entry points check bases
/// before any arithmetic happens.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Mod { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn from_i64(base: BaseRing, n: i64) -> Scalar {
        match base {
            BaseRing::Rational | BaseRing::Integer => Scalar::Rat(BigRational::from_integer(n.into())),
            BaseRing::Prime(p) => Scalar::Mod {
                value: (n as i128).rem_euclid(p as i128) as u64,
                modulus: p,
            },
        }
    }

    pub fn from_ratio(num: i64, den: i64) -> Scalar {
        Scalar::Rat(BigRational::new(num.into(), den.into()))
    }

    pub fn rational(value: BigRational) -> Scalar {
        Scalar::Rat(value)
    }

    pub fn residue(value: u64, modulus: u64) -> Scalar {
        Scalar::Mod { value: value % modulus, modulus }
    }

    pub fn zero_like(&self) -> Scalar {
        match self {
            Scalar::Rat(_) => Scalar::Rat(BigRational::zero()),
            Scalar::Mod { modulus, .. } => Scalar::Mod { value: 0, modulus: *modulus },
        }
    }

    pub fn one_like(&self) -> Scalar {
        match self {
            Scalar::Rat(_) => Scalar::Rat(BigRational::one()),
            Scalar::Mod { modulus, .. } => Scalar::Mod { value: 1 % modulus, modulus: *modulus },
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Mod { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Mod { value, modulus } => *value == 1 % modulus,
        }
    }

    /// Whether this scalar is a legal value for `base`.
    pub fn belongs_to(&self, base: BaseRing) -> bool {
        match (self, base) {
            (Scalar::Rat(_), BaseRing::Rational) => true,
            (Scalar::Rat(r), BaseRing::Integer) => r.is_integer(),
            (Scalar::Mod { modulus, .. }, BaseRing::Prime(p)) => *modulus == p,
            _ => false,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rat(r) => Some(r),
            Scalar::Mod { .. } => None,
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rat(r) => Scalar::Rat(r.recip()),
            Scalar::Mod { value, modulus } => Scalar::Mod {
                value: mod_inverse(*value, *modulus),
                modulus: *modulus,
            },
        })
    }

    pub fn pow(&self, mut exp: u32) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }

    /// Parse `text` into the base ring.
    ///
    /// Rationals and integers accept `[-]digits[/[-]digits]`; prime fields
    /// accept plain `digits`, reduced modulo p.
    pub fn parse(text: &str, base: BaseRing) -> Result<Scalar> {
        let malformed = || Error::Parse(format!("malformed scalar `{text}` for base {base}"));
        let t = text.trim();
        match base {
            BaseRing::Prime(p) => {
                if !is_prime(p) {
                    return Err(Error::NotPrime(p));
                }
                if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(malformed());
                }
                let n: BigInt = t.parse().map_err(|_| malformed())?;
                let r = (n % BigInt::from(p)).to_u64().ok_or_else(malformed)?;
                Ok(Scalar::Mod { value: r, modulus: p })
            }
            BaseRing::Rational | BaseRing::Integer => {
                let (num, den) = match t.split_once('/') {
                    Some((n, d)) => (n, Some(d)),
                    None => (t, None),
                };
                let num = parse_signed_digits(num).ok_or_else(malformed)?;
                let den = match den {
                    Some(d) => parse_signed_digits(d).ok_or_else(malformed)?,
                    None => BigInt::one(),
                };
                if den.is_zero() {
                    return Err(Error::Parse(format!("zero denominator in `{text}`")));
                }
                let r = BigRational::new(num, den);
                if base == BaseRing::Integer && !r.is_integer() {
                    return Err(Error::Parse(format!("`{text}` is not an integer")));
                }
                Ok(Scalar::Rat(r))
            }
        }
    }
}

fn parse_signed_digits(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    let e = (a as i128).extended_gcd(&(p as i128));
    debug_assert_eq!(e.gcd, 1);
    e.x.rem_euclid(p as i128) as u64
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Mod { value, .. } => write!(f, "{value}"),
        }
    }
}

fn modulus_of(a: &Scalar, b: &Scalar) -> u64 {
    match (a, b) {
        (Scalar::Mod { modulus: p, .. }, Scalar::Mod { modulus: q, .. }) if p == q => *p,
        _ => panic!("scalar base mismatch: {a:?} vs {b:?}"),
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Mod { value: a, .. }, Scalar::Mod { value: b, .. }) => {
                let p = modulus_of(self, rhs);
                Scalar::Mod { value: ((*a as u128 + *b as u128) % p as u128) as u64, modulus: p }
            }
            _ => panic!("scalar base mismatch: {self:?} vs {rhs:?}"),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a - b),
            (Scalar::Mod { value: a, .. }, Scalar::Mod { value: b, .. }) => {
                let p = modulus_of(self, rhs);
                Scalar::Mod { value: ((*a as u128 + p as u128 - *b as u128) % p as u128) as u64, modulus: p }
            }
            _ => panic!("scalar base mismatch: {self:?} vs {rhs:?}"),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Mod { value: a, .. }, Scalar::Mod { value: b, .. }) => {
                let p = modulus_of(self, rhs);
                Scalar::Mod { value: ((*a as u128 * *b as u128) % p as u128) as u64, modulus: p }
            }
            _ => panic!("scalar base mismatch: {self:?} vs {rhs:?}"),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Mod { value, modulus } => Scalar::Mod { value: (modulus - value) % modulus, modulus: *modulus },
        }
    }
}

macro_rules! owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $trait<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

/// Least common multiple of the denominators of a rational vector.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Scalar>) -> BigInt {
    values.into_iter().fold(BigInt::one(), |acc, s| match s {
        Scalar::Rat(r) => acc.lcm(r.denom()),
        Scalar::Mod { .. } => acc,
    })
}

/// Rescale a vector so it is "primitive": for rationals, an integer vector
/// with content 1 whose first non-zero entry is positive; for residues, the
/// first non-zero entry becomes 1. Zero vectors are returned unchanged.
pub fn normalize_primitive(values: &[Scalar]) -> Vec<Scalar> {
    let Some(lead) = values.iter().find(|s| !s.is_zero()) else {
        return values.to_vec();
    };
    match lead {
        Scalar::Mod { .. } => {
            let inv = lead.inv().expect("non-zero residue");
            values.iter().map(|s| s * &inv).collect()
        }
        Scalar::Rat(lead_r) => {
            let den = common_denominator(values);
            let ints: Vec<BigInt> = values
                .iter()
                .map(|s| {
                    let r = s.as_rational().expect("rational vector");
                    (r * BigRational::from_integer(den.clone())).to_integer()
                })
                .collect();
            let mut content = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
            if content.is_zero() {
                content = BigInt::one();
            }
            if lead_r.is_negative() {
                content = -content;
            }
            ints.into_iter()
                .map(|v| Scalar::Rat(BigRational::from_integer(v / &content)))
                .collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_canonical_forms() {
        let q = BaseRing::Rational;
        assert_eq!(Scalar::parse("3/4", q).unwrap(), Scalar::from_ratio(3, 4));
        assert_eq!(Scalar::parse("2/-4", q).unwrap(), Scalar::from_ratio(-1, 2));
        assert_eq!(Scalar::parse("2/-4", q).unwrap().to_string(), "-1/2");
        assert_eq!(Scalar::parse("7", BaseRing::Prime(5)).unwrap(), Scalar::residue(2, 5));
        assert_eq!(Scalar::parse("-6/3", BaseRing::Integer).unwrap().to_string(), "-2");
    }

    #[test]
    fn parse_errors() {
        let q = BaseRing::Rational;
        assert!(matches!(Scalar::parse("1/0", q), Err(Error::Parse(_))));
        assert!(Scalar::parse("", q).is_err());
        assert!(Scalar::parse("1.5", q).is_err());
        assert!(Scalar::parse("--1", q).is_err());
        assert!(Scalar::parse("1/", q).is_err());
        assert!(Scalar::parse("3/4", BaseRing::Integer).is_err());
        assert!(Scalar::parse("-1", BaseRing::Prime(5)).is_err());
        assert!(matches!(Scalar::parse("3", BaseRing::Prime(4)), Err(Error::NotPrime(4))));
        assert!(BaseRing::prime(9).is_err());
    }

    #[test]
    fn print_then_parse_is_idempotent() {
        for text in ["0", "-5", "22/7", "-1/3", "10/4"] {
            let s = Scalar::parse(text, BaseRing::Rational).unwrap();
            let again = Scalar::parse(&s.to_string(), BaseRing::Rational).unwrap();
            assert_eq!(s, again);
            assert_eq!(s.to_string(), again.to_string());
        }
    }

    #[test]
    fn residue_inverse() {
        for p in [2u64, 3, 5, 7, 101] {
            for v in 1..p {
                let s = Scalar::residue(v, p);
                assert!((&s * &s.inv().unwrap()).is_one());
            }
        }
        assert!(Scalar::residue(0, 7).inv().is_none());
    }

    #[test]
    fn primitive_normalization() {
        let v = vec![Scalar::from_ratio(-1, 2), Scalar::from_ratio(1, 3), Scalar::from_i64(BaseRing::Rational, 0)];
        let n = normalize_primitive(&v);
        assert_eq!(n, vec![Scalar::from_i64(BaseRing::Rational, 3), Scalar::from_i64(BaseRing::Rational, -2), Scalar::from_i64(BaseRing::Rational, 0)]);
        let m = normalize_primitive(&[Scalar::residue(0, 5), Scalar::residue(3, 5)]);
        assert_eq!(m, vec![Scalar::residue(0, 5), Scalar::residue(1, 5)]);
    }

    #[test]
    fn labels_round_trip() {
        for b in [BaseRing::Rational, BaseRing::Integer, BaseRing::Prime(7)] {
            assert_eq!(BaseRing::from_label(&b.label()).unwrap(), b);
        }
        assert!(BaseRing::from_label("F6").is_err());
    }
}

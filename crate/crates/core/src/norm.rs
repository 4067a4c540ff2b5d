//! The quaternion norm form `N(x) = x₀² − a x₁² − b x₂² + ab x₃²` and
//! certification of division algebras over ℚ through Hilbert symbols.
//!
//! `(a, b)_ℚ` is a division algebra iff the norm form is anisotropic iff
//! `z² = a x² + b y²` has no non-trivial rational solution iff the Hilbert
//! symbol `(a, b)_v` is `−1` at some place `v`. Only `∞`, `2` and the odd
//! primes dividing `a` or `b` can contribute a `−1`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::{is_prime, Scalar};

/// The norm form of the quaternion algebra `(a, b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormForm {
    a: Scalar,
    b: Scalar,
}

impl NormForm {
    pub fn new(a: Scalar, b: Scalar) -> Result<Self> {
        if a.is_zero() || b.is_zero() {
            return Err(Error::InvalidArgument("norm form parameters must be non-zero".into()));
        }
        Ok(NormForm { a, b })
    }

    pub fn rational(a: i64, b: i64) -> Result<Self> {
        Self::new(Scalar::from_ratio(a, 1), Scalar::from_ratio(b, 1))
    }

    pub fn a(&self) -> &Scalar {
        &self.a
    }

    pub fn b(&self) -> &Scalar {
        &self.b
    }

    /// `x₀² − a·x₁² − b·x₂² + a·b·x₃²`
    pub fn norm(&self, x: &[Scalar; 4]) -> Scalar {
        let ab = &self.a * &self.b;
        let sq = |s: &Scalar| s * s;
        &(&(&sq(&x[0]) - &(&self.a * &sq(&x[1]))) - &(&self.b * &sq(&x[2]))) + &(&ab * &sq(&x[3]))
    }
}

/// A place of ℚ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Place {
    Infinity,
    Prime(u64),
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Infinity => f.write_str("inf"),
            Place::Prime(p) => write!(f, "{p}"),
        }
    }
}

impl Serialize for Place {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Replace a non-zero rational by an integer in the same square class.
fn square_class_integer(r: &BigRational) -> BigInt {
    r.numer() * r.denom()
}

fn split_valuation(n: &BigInt, p: &BigInt) -> (u32, BigInt) {
    let mut v = 0;
    let mut u = n.clone();
    while (&u % p).is_zero() {
        u /= p;
        v += 1;
    }
    (v, u)
}

/// Legendre symbol `(u / p)` for odd prime `p` and `u` prime to `p`.
fn legendre(u: &BigInt, p: &BigInt) -> i8 {
    let r = u.mod_floor(p).modpow(&((p - 1u32) / 2u32), p);
    if r.is_one() {
        1
    } else {
        -1
    }
}

/// Classical Hilbert symbol `(a, b)_place ∈ {+1, −1}`.
pub fn hilbert_symbol(a: &BigRational, b: &BigRational, place: Place) -> Result<i8> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::InvalidArgument("Hilbert symbol arguments must be non-zero".into()));
    }
    let p = match place {
        Place::Infinity => return Ok(if a.is_negative() && b.is_negative() { -1 } else { 1 }),
        Place::Prime(p) if !is_prime(p) => return Err(Error::NotPrime(p)),
        Place::Prime(p) => p,
    };
    let (ai, bi) = (square_class_integer(a), square_class_integer(b));
    let pb = BigInt::from(p);
    let (alpha, u) = split_valuation(&ai, &pb);
    let (beta, v) = split_valuation(&bi, &pb);
    if p == 2 {
        let eps = |x: &BigInt| -> u32 { ((x.mod_floor(&BigInt::from(4)) - 1u32) / 2u32).to_u32().expect("small") & 1 };
        let omega = |x: &BigInt| -> u32 {
            let r = x.mod_floor(&BigInt::from(8)).to_u32().expect("small");
            ((r * r - 1) / 8) & 1
        };
        let e = eps(&u) * eps(&v) + alpha * omega(&v) + beta * omega(&u);
        return Ok(if e % 2 == 0 { 1 } else { -1 });
    }
    let eps_p = ((p - 1) / 2) % 2;
    let mut sign: i8 = if (alpha as u64 * beta as u64 * eps_p).is_multiple_of(2) { 1 } else { -1 };
    if beta % 2 == 1 {
        sign *= legendre(&u, &pb);
    }
    if alpha % 2 == 1 {
        sign *= legendre(&v, &pb);
    }
    Ok(sign)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DivisionStatus {
    Division,
    Split,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlaceSymbol {
    pub place: Place,
    pub symbol: i8,
}

/// Division/split verdict with its evidence: Hilbert symbols for
/// `Division`, an isotropic integer vector for `Split`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivisionVerdict {
    pub status: DivisionStatus,
    pub evidence: Vec<PlaceSymbol>,
    #[serde(serialize_with = "serialize_vector")]
    pub isotropic: Option<[BigInt; 4]>,
    pub note: String,
}

fn serialize_vector<S: Serializer>(v: &Option<[BigInt; 4]>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(arr) => s.collect_seq(arr.iter().map(ToString::to_string)),
        None => s.serialize_none(),
    }
}

impl DivisionVerdict {
    pub fn unknown(note: impl Into<String>) -> Self {
        DivisionVerdict { status: DivisionStatus::Unknown, evidence: Vec::new(), isotropic: None, note: note.into() }
    }
}

const FACTOR_LIMIT: u64 = 1 << 50;

fn odd_prime_factors(n: &BigInt, out: &mut Vec<u64>) -> bool {
    let Some(mut m) = n.abs().to_u64() else {
        return false;
    };
    if m > FACTOR_LIMIT {
        return false;
    }
    while m % 2 == 0 && m > 0 {
        m /= 2;
    }
    let mut d = 3u64;
    while d * d <= m {
        if m % d == 0 {
            out.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 2;
    }
    if m > 1 {
        out.push(m);
    }
    true
}

/// Certify whether `(a, b)_ℚ` is a division algebra.
pub fn is_division(a: &BigRational, b: &BigRational) -> DivisionVerdict {
    if a.is_zero() || b.is_zero() {
        return DivisionVerdict::unknown("parameters must be non-zero");
    }
    let mut primes = Vec::new();
    for r in [a, b] {
        if !odd_prime_factors(r.numer(), &mut primes) || !odd_prime_factors(r.denom(), &mut primes) {
            return DivisionVerdict::unknown("parameters too large to factor");
        }
    }
    primes.sort_unstable();
    primes.dedup();
    let places: Vec<Place> = [Place::Infinity, Place::Prime(2)]
        .into_iter()
        .chain(primes.into_iter().map(Place::Prime))
        .collect();
    let evidence: Vec<PlaceSymbol> = places
        .into_iter()
        .map(|place| PlaceSymbol { place, symbol: hilbert_symbol(a, b, place).expect("valid place") })
        .collect();
    if evidence.iter().any(|e| e.symbol == -1) {
        return DivisionVerdict { status: DivisionStatus::Division, evidence, isotropic: None, note: "ramified at a place with symbol -1".into() };
    }
    let found = isotropy_search(a, b, 10).or_else(|| norm_equation_search(a, b, 100)).or_else(|| norm_equation_search(a, b, 1000));
    match found {
        Some(v) => {
            DivisionVerdict { status: DivisionStatus::Split, evidence, isotropic: Some(v), note: "all local symbols are +1".into() }
        }
        None => DivisionVerdict {
            status: DivisionStatus::Unknown,
            evidence,
            isotropic: None,
            note: "split by local symbols but no isotropic vector found within height 1000".into(),
        },
    }
}

/// Integer form of the scaled norm: `ad·bd·N`, coefficients of x₀², x₁², x₂², x₃².
fn integer_coefficients(a: &BigRational, b: &BigRational) -> Option<[i128; 4]> {
    let (an, ad) = (a.numer().to_i128()?, a.denom().to_i128()?);
    let (bn, bd) = (b.numer().to_i128()?, b.denom().to_i128()?);
    Some([
        ad.checked_mul(bd)?,
        -an.checked_mul(bd)?,
        -bn.checked_mul(ad)?,
        an.checked_mul(bn)?,
    ])
}

fn exact_sqrt(n: i128) -> Option<i128> {
    if n < 0 {
        return None;
    }
    let r = n.sqrt();
    (r * r == n).then_some(r)
}

fn zigzag(v: i64) -> u64 {
    if v > 0 {
        (2 * v - 1) as u64
    } else {
        (-2 * v) as u64
    }
}

/// Order: height first, then lexicographic on `(x₃, x₂, x₁, x₀)` with
/// values ranked `0, 1, −1, 2, −2, …`.
fn search_key(v: &[i64; 4]) -> (u64, [u64; 4]) {
    let height = v.iter().map(|c| c.unsigned_abs()).max().unwrap_or(0);
    (height, [zigzag(v[3]), zigzag(v[2]), zigzag(v[1]), zigzag(v[0])])
}

fn canonical(v: [i64; 4]) -> Option<[i64; 4]> {
    let g = v.iter().fold(0i64, |acc, &c| acc.gcd(&c));
    if g != 1 {
        return None;
    }
    // Of ±v keep the one whose last non-zero coordinate is positive.
    let last = *v.iter().rev().find(|&&c| c != 0)?;
    Some(if last > 0 { v } else { v.map(|c| -c) })
}

fn to_big(v: [i64; 4]) -> [BigInt; 4] {
    v.map(BigInt::from)
}

/// Scan primitive integer vectors of height ≤ `bound` for `N = 0` and
/// return the first hit in the order of [`search_key`].
pub fn isotropy_search(a: &BigRational, b: &BigRational, bound: u64) -> Option<[BigInt; 4]> {
    let c = integer_coefficients(a, b)?;
    let bound = bound as i64;
    let mut best: Option<[i64; 4]> = None;
    for x3 in -bound..=bound {
        for x2 in -bound..=bound {
            for x1 in -bound..=bound {
                let rest = c[1] * (x1 as i128).pow(2) + c[2] * (x2 as i128).pow(2) + c[3] * (x3 as i128).pow(2);
                // c0·x0² = −rest
                if (-rest) % c[0] != 0 {
                    continue;
                }
                let Some(x0) = exact_sqrt(-rest / c[0]) else { continue };
                if x0 > bound as i128 {
                    continue;
                }
                for s in [x0, -x0] {
                    let v = [s as i64, x1, x2, x3];
                    if v.iter().all(|&t| t == 0) {
                        continue;
                    }
                    if let Some(v) = canonical(v) {
                        if best.is_none_or(|b| search_key(&v) < search_key(&b)) {
                            best = Some(v);
                        }
                    }
                }
            }
        }
    }
    best.map(to_big)
}

/// Solutions of `x₀² = a x₁² + b x₂²` (the slice `x₃ = 0`) with
/// `|x₁|, |x₂| ≤ bound`.
fn norm_equation_search(a: &BigRational, b: &BigRational, bound: u64) -> Option<[BigInt; 4]> {
    let c = integer_coefficients(a, b)?;
    let bound = bound as i64;
    let mut best: Option<[i64; 4]> = None;
    for x2 in -bound..=bound {
        for x1 in -bound..=bound {
            if x1 == 0 && x2 == 0 {
                continue;
            }
            let rest = c[1] * (x1 as i128).pow(2) + c[2] * (x2 as i128).pow(2);
            if (-rest) % c[0] != 0 {
                continue;
            }
            let Some(x0) = exact_sqrt(-rest / c[0]) else { continue };
            let Ok(x0) = i64::try_from(x0) else { continue };
            if let Some(v) = canonical([x0, x1, x2, 0]) {
                if best.is_none_or(|b| search_key(&v) < search_key(&b)) {
                    best = Some(v);
                }
            }
        }
    }
    best.map(to_big)
}

/// A non-zero pure vector `(x₁, x₂, x₃)` with `−a x₁² − b x₂² + ab x₃² = 0`,
/// i.e. a pure quaternion squaring to zero.
pub fn pure_isotropy_search(a: &BigRational, b: &BigRational, bound: u64) -> Option<[BigInt; 3]> {
    let c = integer_coefficients(a, b)?;
    let bound = bound as i64;
    for h in 1..=bound {
        for x3 in -h..=h {
            for x2 in -h..=h {
                let rest = c[2] * (x2 as i128).pow(2) + c[3] * (x3 as i128).pow(2);
                if (-rest) % c[1] != 0 {
                    continue;
                }
                let Some(x1) = exact_sqrt(-rest / c[1]) else { continue };
                let v = [x1 as i64, x2, x3];
                let height = v.iter().map(|t| t.unsigned_abs()).max().unwrap_or(0);
                if height == h as u64 && v.iter().any(|&t| t != 0) {
                    return Some(v.map(BigInt::from));
                }
            }
        }
    }
    None
}

/// Over `𝔽ₚ` (p odd) every ternary form is isotropic; find a pure
/// quaternion with square zero by enumeration. `None` for large `p`.
pub fn pure_isotropy_mod_p(a: u64, b: u64, p: u64) -> Option<[u64; 3]> {
    if p == 2 || p > 100_000 {
        return None;
    }
    let mul = |x: u64, y: u64| ((x as u128 * y as u128) % p as u128) as u64;
    let mut sqrt = vec![None; p as usize];
    for r in 0..p {
        let s = mul(r, r) as usize;
        if sqrt[s].is_none() {
            sqrt[s] = Some(r);
        }
    }
    let inv_a = {
        let e = (a as i128).extended_gcd(&(p as i128));
        e.x.rem_euclid(p as i128) as u64
    };
    let ab = mul(a, b);
    let limit = p.min(2000);
    for x3 in 0..limit {
        for x2 in 0..limit {
            if x2 == 0 && x3 == 0 {
                continue;
            }
            // a x₁² = −b x₂² + ab x₃²
            let rhs = (p - mul(b, mul(x2, x2)) + mul(ab, mul(x3, x3))) % p;
            if let Some(x1) = sqrt[mul(rhs, inv_a) as usize] {
                return Some([x1, x2, x3]);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn sc(n: i64) -> Scalar {
        Scalar::from_ratio(n, 1)
    }

    #[test]
    fn norm_examples() {
        let h = NormForm::rational(-1, -1).unwrap();
        assert_eq!(h.norm(&[sc(1), sc(1), sc(1), sc(1)]), sc(4));
        let f = NormForm::rational(2, 5).unwrap();
        assert_eq!(f.norm(&[sc(1), sc(0), sc(0), sc(0)]), sc(1));
        let s = NormForm::rational(1, 1).unwrap();
        assert_eq!(s.norm(&[sc(1), sc(1), sc(0), sc(0)]), sc(0));
        assert!(NormForm::rational(0, 1).is_err());
    }

    #[test]
    fn hilbert_examples() {
        assert_eq!(hilbert_symbol(&r(-1), &r(-1), Place::Infinity).unwrap(), -1);
        assert_eq!(hilbert_symbol(&r(-1), &r(-1), Place::Prime(2)).unwrap(), -1);
        assert_eq!(hilbert_symbol(&r(2), &r(5), Place::Prime(5)).unwrap(), -1);
        for b in [-7, -1, 2, 3, 10] {
            for p in [2, 3, 5, 7] {
                assert_eq!(hilbert_symbol(&r(1), &r(b), Place::Prime(p)).unwrap(), 1);
            }
        }
        assert!(matches!(hilbert_symbol(&r(2), &r(3), Place::Prime(9)), Err(Error::NotPrime(9))));
    }

    #[test]
    fn hilbert_reciprocity() {
        // The product over all places is 1.
        for a in [-6, -3, -1, 2, 3, 5, 7, 10, 15] {
            for b in [-5, -2, -1, 3, 6, 11, 14] {
                let (ra, rb) = (r(a), r(b));
                let mut places = vec![Place::Infinity, Place::Prime(2)];
                for p in [3, 5, 7, 11, 13] {
                    places.push(Place::Prime(p));
                }
                let prod: i8 = places.iter().map(|&p| hilbert_symbol(&ra, &rb, p).unwrap()).product();
                assert_eq!(prod, 1, "a={a} b={b}");
            }
        }
    }

    #[test]
    fn division_examples() {
        let h = is_division(&r(-1), &r(-1));
        assert_eq!(h.status, DivisionStatus::Division);
        assert!(h.evidence.contains(&PlaceSymbol { place: Place::Infinity, symbol: -1 }));

        let s = is_division(&r(1), &r(1));
        assert_eq!(s.status, DivisionStatus::Split);
        assert_eq!(s.isotropic, Some(to_big([1, 1, 0, 0])));

        let f = is_division(&r(2), &r(5));
        assert_eq!(f.status, DivisionStatus::Division);
        assert!(f.evidence.contains(&PlaceSymbol { place: Place::Prime(5), symbol: -1 }));
    }

    #[test]
    fn isotropy_examples() {
        assert_eq!(isotropy_search(&r(1), &r(1), 10), Some(to_big([1, 1, 0, 0])));
        assert_eq!(isotropy_search(&r(-1), &r(-1), 50), None);
        assert_eq!(isotropy_search(&r(2), &r(5), 50), None);
    }

    #[test]
    fn rational_parameters() {
        // (1/4, 3) ~ (1, 3): split.
        let v = is_division(&BigRational::new(1.into(), 4.into()), &r(3));
        assert_eq!(v.status, DivisionStatus::Split);
        let x = v.isotropic.unwrap().map(|c| Scalar::Rat(BigRational::from_integer(c)));
        let form = NormForm::new(Scalar::from_ratio(1, 4), sc(3)).unwrap();
        assert!(form.norm(&x).is_zero());
    }

    #[test]
    fn pure_isotropic_vectors() {
        let v = pure_isotropy_search(&r(1), &r(1), 10).unwrap();
        let (x1, x2, x3) = (&v[0], &v[1], &v[2]);
        assert!((-(x1 * x1) - x2 * x2 + x3 * x3).is_zero());
        assert!(pure_isotropy_search(&r(-1), &r(-1), 20).is_none());
        let [x1, x2, x3] = pure_isotropy_mod_p(2, 2, 3).unwrap();
        // −2x₁² − 2x₂² + 4x₃² ≡ 0 (mod 3)
        assert_eq!((2 * 3 * 3 * 3 - 2 * x1 * x1 - 2 * x2 * x2 + 4 * x3 * x3) % 3, 0);
    }
}

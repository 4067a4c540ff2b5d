//! Dense univariate polynomials over ℚ or 𝔽ₚ, just enough to decide
//! whether a minimal polynomial is irreducible.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::algebra::{Algebra, Element};
use crate::scalar::{common_denominator, BaseRing, Scalar};

/// Coefficients low degree first; the zero polynomial is empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    base: BaseRing,
    coeffs: Vec<Scalar>,
}

/// What we could establish about a polynomial's factorization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Factorization {
    Irreducible,
    /// A monic proper factor.
    ProperFactor(UniPoly),
    Undecided,
}

impl UniPoly {
    pub fn new(base: BaseRing, mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        UniPoly { base, coeffs }
    }

    pub fn monomial(base: BaseRing, degree: usize) -> Self {
        let mut c = vec![base.zero(); degree + 1];
        c[degree] = base.one();
        UniPoly::new(base, c)
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    fn lead(&self) -> &Scalar {
        self.coeffs.last().expect("non-zero polynomial")
    }

    pub fn monic(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.lead().inv().expect("non-zero lead");
        UniPoly::new(self.base, self.coeffs.iter().map(|c| c * &inv).collect())
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = self.base.zero();
        let c = (0..n)
            .map(|i| self.coeffs.get(i).unwrap_or(&z) - other.coeffs.get(i).unwrap_or(&z))
            .collect();
        UniPoly::new(self.base, c)
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::new(self.base, vec![]);
        }
        let mut c = vec![self.base.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] = &c[i + j] + &(a * b);
            }
        }
        UniPoly::new(self.base, c)
    }

    pub fn div_rem(&self, divisor: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let mut rem = self.coeffs.clone();
        let d = divisor.degree();
        let inv = divisor.lead().inv().expect("non-zero lead");
        if rem.len() <= d {
            return (UniPoly::new(self.base, vec![]), self.clone());
        }
        let mut quot = vec![self.base.zero(); rem.len() - d];
        for pos in (d..rem.len()).rev() {
            let factor = &rem[pos] * &inv;
            if factor.is_zero() {
                continue;
            }
            for (k, dc) in divisor.coeffs.iter().enumerate() {
                let idx = pos - d + k;
                rem[idx] = &rem[idx] - &(&factor * dc);
            }
            quot[pos - d] = factor;
        }
        (UniPoly::new(self.base, quot), UniPoly::new(self.base, rem))
    }

    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> UniPoly {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * &Scalar::from_i64(self.base, i as i64))
            .collect();
        UniPoly::new(self.base, c)
    }

    /// Evaluate at an algebra element by Horner's rule.
    pub fn eval_at(&self, alg: &Algebra, z: &Element) -> Element {
        self.coeffs
            .iter()
            .rev()
            .fold(alg.zero(), |acc, c| &alg.mul(&acc, z) + &alg.scalar(c))
    }

    fn eval_scalar(&self, x: &Scalar) -> Scalar {
        self.coeffs.iter().rev().fold(self.base.zero(), |acc, c| &(&acc * x) + c)
    }

    fn mul_mod(&self, other: &UniPoly, modulus: &UniPoly) -> UniPoly {
        self.mul(other).div_rem(modulus).1
    }

    fn pow_mod(&self, mut exp: u64, modulus: &UniPoly) -> UniPoly {
        let mut acc = UniPoly::new(self.base, vec![self.base.one()]).div_rem(modulus).1;
        let mut sq = self.div_rem(modulus).1;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul_mod(&sq, modulus);
            }
            sq = sq.mul_mod(&sq, modulus);
            exp >>= 1;
        }
        acc
    }

    /// Try to factor `self` over its base field.
    pub fn factorization(&self) -> Factorization {
        if self.degree() <= 1 {
            return Factorization::Irreducible;
        }
        match self.base {
            BaseRing::Prime(p) => factor_mod_p(&self.monic(), p),
            _ => factor_over_q(&self.monic()),
        }
    }
}

fn factor_mod_p(f: &UniPoly, p: u64) -> Factorization {
    let n = f.degree();
    let deriv = f.derivative();
    if deriv.is_zero() {
        // f(t) = g(t^p) = g(t)^p over 𝔽ₚ
        let g: Vec<Scalar> = f.coeffs.iter().step_by(p as usize).cloned().collect();
        return Factorization::ProperFactor(UniPoly::new(f.base, g).monic());
    }
    let g = f.gcd(&deriv);
    if g.degree() > 0 {
        return Factorization::ProperFactor(g);
    }
    let t = UniPoly::monomial(f.base, 1);
    let mut power = t.clone();
    for i in 1..=n / 2 {
        power = power.pow_mod(p, f);
        let g = power.sub(&t).gcd(f);
        if g.degree() == 0 {
            continue;
        }
        if g.degree() < n {
            return Factorization::ProperFactor(g);
        }
        // Every irreducible factor has degree i; split off a linear one by search when cheap.
        if i == 1 && p <= 1 << 16 {
            if let Some(r) = (0..p).map(|v| Scalar::residue(v, p)).find(|r| f.eval_scalar(r).is_zero()) {
                return Factorization::ProperFactor(UniPoly::new(f.base, vec![-&r, f.base.one()]));
            }
        }
        return Factorization::Undecided;
    }
    Factorization::Irreducible
}

fn factor_over_q(f: &UniPoly) -> Factorization {
    if let Some(r) = rational_root(f) {
        return Factorization::ProperFactor(UniPoly::new(f.base, vec![Scalar::Rat(-r), f.base.one()]));
    }
    if f.degree() <= 3 {
        return Factorization::Irreducible;
    }
    // Irreducible modulo a prime not dividing the leading coefficient
    // implies irreducible over ℚ (for a primitive integer polynomial).
    let ints = integer_coefficients(f);
    let lead = ints.last().expect("non-zero").clone();
    for p in [3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
        if (&lead % BigInt::from(p)).is_zero() {
            continue;
        }
        let reduced: Vec<Scalar> = ints
            .iter()
            .map(|c| Scalar::residue(c.mod_floor(&BigInt::from(p)).to_u64().expect("small residue"), p))
            .collect();
        let fp = UniPoly::new(BaseRing::Prime(p), reduced);
        if matches!(factor_mod_p(&fp.monic(), p), Factorization::Irreducible) {
            return Factorization::Irreducible;
        }
    }
    Factorization::Undecided
}

fn integer_coefficients(f: &UniPoly) -> Vec<BigInt> {
    let den = common_denominator(&f.coeffs);
    f.coeffs
        .iter()
        .map(|c| (c.as_rational().expect("rational") * BigRational::from_integer(den.clone())).to_integer())
        .collect()
}

const DIVISOR_LIMIT: u64 = 1_000_000_000_000;

fn divisors(n: &BigInt) -> Option<Vec<u64>> {
    let n = n.abs().to_u64()?;
    if n > DIVISOR_LIMIT {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d * d != n {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out.sort_unstable();
    Some(out)
}

/// A rational root by the rational root theorem, if one exists and the
/// coefficients are small enough to enumerate divisors.
fn rational_root(f: &UniPoly) -> Option<BigRational> {
    let ints = integer_coefficients(f);
    let low = ints.iter().position(|c| !c.is_zero())?;
    if low > 0 {
        return Some(BigRational::zero());
    }
    let ps = divisors(&ints[0])?;
    let qs = divisors(ints.last()?)?;
    for &p in &ps {
        for &q in &qs {
            for sign in [1i64, -1] {
                let cand = BigRational::new(BigInt::from(p) * sign, BigInt::from(q));
                let value = ints
                    .iter()
                    .rev()
                    .fold(BigRational::zero(), |acc, c| acc * &cand + BigRational::from_integer(c.clone()));
                if value.is_zero() {
                    return Some(cand);
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(coeffs: &[i64]) -> UniPoly {
        UniPoly::new(BaseRing::Rational, coeffs.iter().map(|&c| Scalar::from_i64(BaseRing::Rational, c)).collect())
    }

    fn fp(coeffs: &[u64], p: u64) -> UniPoly {
        UniPoly::new(BaseRing::Prime(p), coeffs.iter().map(|&c| Scalar::residue(c, p)).collect())
    }

    #[test]
    fn rational_factorization() {
        assert_eq!(q(&[-2, 0, 1]).factorization(), Factorization::Irreducible);
        assert_eq!(q(&[-4, 0, 1]).factorization(), Factorization::ProperFactor(q(&[-2, 1])));
        assert_eq!(q(&[0, 0, 1]).factorization(), Factorization::ProperFactor(q(&[0, 1])));
        assert_eq!(q(&[-2, 0, 0, 1]).factorization(), Factorization::Irreducible);
        // t⁴ + 1 is irreducible over ℚ but reducible modulo every prime.
        assert_eq!(q(&[1, 0, 0, 0, 1]).factorization(), Factorization::Undecided);
        // t⁴ - 2 is irreducible modulo 5.
        assert_eq!(q(&[-2, 0, 0, 0, 1]).factorization(), Factorization::Irreducible);
    }

    #[test]
    fn prime_field_factorization() {
        assert_eq!(fp(&[1, 0, 1], 3).factorization(), Factorization::Irreducible);
        assert!(matches!(fp(&[1, 0, 1], 5).factorization(), Factorization::ProperFactor(_)));
        assert_eq!(fp(&[1, 1, 1], 2).factorization(), Factorization::Irreducible);
        // (t + 1)² over 𝔽₂
        assert!(matches!(fp(&[1, 0, 1], 2).factorization(), Factorization::ProperFactor(_)));
        assert_eq!(fp(&[1, 1, 0, 1], 2).factorization(), Factorization::Irreducible);
    }

    #[test]
    fn division_identity() {
        let a = q(&[3, -1, 4, 1, 5]);
        let b = q(&[2, 7, 1]);
        let (quot, rem) = a.div_rem(&b);
        let back = quot.mul(&b);
        let diff = a.sub(&back).sub(&rem);
        assert!(diff.is_zero());
        assert!(rem.degree() < b.degree());
    }
}

//! Formal fractions `x/c` with `c` central and non-zero.
//!
//! Equality is the cross relation `x/c = y/d ⟺ dx = cy`; no fraction is
//! ever reduced. For integer presentations the fraction ring is realized by
//! the same structure constants read over ℚ, see [`localize`].

use std::fmt;

use num_rational::BigRational;
use serde::Serialize;

use crate::algebra::{Algebra, Element};
use crate::analysis::{center_basis, CenterBasis};
use crate::error::{Error, Result};
use crate::scalar::{common_denominator, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fraction {
    pub num: Element,
    pub den: Element,
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} / {}", self.num.to_coord_string(), self.den.to_coord_string())
    }
}

/// Fraction arithmetic over a fixed presentation.
#[derive(Clone, Debug)]
pub struct Localization<'a> {
    alg: &'a Algebra,
}

impl<'a> Localization<'a> {
    pub fn new(alg: &'a Algebra) -> Self {
        Localization { alg }
    }

    pub fn algebra(&self) -> &Algebra {
        self.alg
    }

    fn check_member(&self, x: &Element) -> Result<()> {
        if x.len() != self.alg.dim() {
            return Err(Error::DimensionMismatch { expected: self.alg.dim(), got: x.len() });
        }
        if !x.coords().iter().all(|s| s.belongs_to(self.alg.base())) {
            return Err(Error::BaseMismatch(self.alg.base()));
        }
        Ok(())
    }

    /// `num / den`, rejecting zero and non-central denominators.
    pub fn fraction(&self, num: Element, den: Element) -> Result<Fraction> {
        self.check_member(&num)?;
        self.check_member(&den)?;
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if !self.alg.is_central(&den) {
            return Err(Error::NonCentralDenominator);
        }
        Ok(Fraction { num, den })
    }

    /// `num / c·1` for an integer `c`.
    pub fn over_integer(&self, num: Element, c: i64) -> Result<Fraction> {
        self.fraction(num, self.alg.scalar_i64(c))
    }

    fn recheck(&self, f: &Fraction) -> Result<()> {
        if f.den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if !self.alg.is_central(&f.den) {
            return Err(Error::NonCentralDenominator);
        }
        Ok(())
    }

    /// `x/c = y/d` iff `dx = cy`.
    pub fn frac_eq(&self, f: &Fraction, g: &Fraction) -> Result<bool> {
        self.recheck(f)?;
        self.recheck(g)?;
        Ok(self.alg.mul(&g.den, &f.num) == self.alg.mul(&f.den, &g.num))
    }

    /// `x/c + y/d = (dx + cy)/(cd)`
    pub fn frac_add(&self, f: &Fraction, g: &Fraction) -> Result<Fraction> {
        self.recheck(f)?;
        self.recheck(g)?;
        let num = &self.alg.mul(&g.den, &f.num) + &self.alg.mul(&f.den, &g.num);
        self.fraction(num, self.alg.mul(&f.den, &g.den))
    }

    /// `(x/c)(y/d) = (xy)/(cd)`
    pub fn frac_mul(&self, f: &Fraction, g: &Fraction) -> Result<Fraction> {
        self.recheck(f)?;
        self.recheck(g)?;
        self.fraction(self.alg.mul(&f.num, &g.num), self.alg.mul(&f.den, &g.den))
    }

    pub fn frac_neg(&self, f: &Fraction) -> Fraction {
        Fraction { num: -&f.num, den: f.den.clone() }
    }

    /// `r ↦ r/1`
    pub fn embed(&self, r: &Element) -> Result<Fraction> {
        self.fraction(r.clone(), self.alg.unit().clone())
    }

    /// The element `num · den⁻¹` of the presentation read over its field,
    /// with the inverse taken inside the center.
    pub fn realize(&self, f: &Fraction, center: &CenterBasis) -> Result<Element> {
        self.recheck(f)?;
        let lifted = self.alg.lift_to_field();
        let inv = center
            .inverse(&lifted, &f.den)
            .ok_or_else(|| Error::Precondition("denominator is not invertible in the center".into()))?;
        Ok(lifted.mul(&f.num, &inv))
    }

    /// Write `x` of the lifted presentation as `num / n·1` with `num`
    /// integral and `n` the least common denominator of its coordinates.
    pub fn from_field_element(&self, x: &Element) -> Result<Fraction> {
        let lifted = self.alg.lift_to_field();
        lifted.check(x)?;
        let n = common_denominator(x.coords());
        let scale = Scalar::rational(BigRational::from_integer(n));
        let num = x.scale(&scale);
        self.fraction(num, self.alg.unit().scale(&scale))
    }
}

/// The presentation of `R//C` for an integer presentation `R` whose
/// center is spanned by integral elements: the same table over ℚ. Field
/// presentations are returned unchanged.
pub fn localize(alg: &Algebra) -> (Algebra, CenterBasis) {
    let lifted = alg.lift_to_field();
    let center = center_basis(&lifted);
    (lifted, center)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins;

    #[test]
    fn fraction_examples() {
        let l = builtins::lipschitz();
        let loc = Localization::new(&l);
        let (one, i, j, k) = (l.basis(0), l.basis(1), l.basis(2), l.basis(3));
        let f = loc.over_integer(l.element_i64(&[2, 2, 0, 0]), 2).unwrap();
        let g = loc.over_integer(&one + &i, 1).unwrap();
        assert!(loc.frac_eq(&f, &g).unwrap());
        assert!(!loc.frac_eq(&loc.embed(&i).unwrap(), &loc.embed(&j).unwrap()).unwrap());
        assert!(loc.frac_eq(&loc.over_integer(l.element_i64(&[0, 3, 0, 0]), 3).unwrap(), &loc.embed(&i).unwrap()).unwrap());

        let half_i = loc.over_integer(i.clone(), 2).unwrap();
        let third_j = loc.over_integer(j.clone(), 3).unwrap();
        let sum = loc.frac_add(&half_i, &third_j).unwrap();
        assert_eq!(sum.num, l.element_i64(&[0, 3, 2, 0]));
        assert_eq!(sum.den, l.scalar_i64(6));
        let prod = loc.frac_mul(&half_i, &third_j).unwrap();
        assert_eq!(prod.num, k);
        assert_eq!(prod.den, l.scalar_i64(6));
        assert_eq!(prod.to_string(), "0,0,0,1 / 6,0,0,0");

        let ii = loc.frac_mul(&loc.embed(&i).unwrap(), &loc.embed(&i).unwrap()).unwrap();
        assert!(loc.frac_eq(&ii, &loc.embed(&l.scalar_i64(-1)).unwrap()).unwrap());
        let twice = loc.frac_add(&half_i, &half_i).unwrap();
        assert!(loc.frac_eq(&twice, &loc.embed(&i).unwrap()).unwrap());
    }

    #[test]
    fn bad_denominators() {
        let l = builtins::lipschitz();
        let loc = Localization::new(&l);
        assert!(matches!(loc.fraction(l.basis(1), l.zero()), Err(Error::ZeroDenominator)));
        assert!(matches!(loc.fraction(l.basis(1), l.basis(2)), Err(Error::NonCentralDenominator)));
    }

    #[test]
    fn realize_and_back() {
        let l = builtins::lipschitz();
        let loc = Localization::new(&l);
        let (lifted, center) = localize(&l);
        let f = loc.over_integer(l.element_i64(&[1, 2, 0, 3]), 4).unwrap();
        let x = loc.realize(&f, &center).unwrap();
        let g = loc.from_field_element(&x).unwrap();
        assert!(loc.frac_eq(&f, &g).unwrap());
        assert_eq!(lifted.base(), crate::scalar::BaseRing::Rational);
    }
}

//! Re-verifiable evidence attached to every refusal.
//!
//! [`Witness::verify`] only uses products, commutators and additions from
//! [`Algebra`], so a witness can be replayed without trusting any of the
//! analysis that produced it.

use serde::Serialize;

use crate::algebra::{Algebra, Element};

/// Which side the annihilator sits on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    /// `element · annihilator = 0` and `annihilator · element = 0`
    Both,
    /// `element · annihilator = 0`
    Left,
    /// `annihilator · element = 0`
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// `(e_s e_t) e_u != e_s (e_t e_u)`.
    NonAssociative { s: usize, t: usize, u: usize },
    /// The declared unit fails `1·e = e·1 = e` on this basis vector.
    NotUnital { index: usize },
    /// Every pair of basis vectors commutes.
    Commutative,
    /// `(x, y)² e_u != e_u (x, y)²`.
    CommutatorSquareNotCentral { x: Element, y: Element, commutator: Element, square: Element, basis_index: usize },
    /// The non-zero commutator `(x, y)` is annihilated by a non-zero element.
    CommutatorZeroDivisor { x: Element, y: Element, commutator: Element, annihilator: Element, side: Side },
    /// A non-zero element annihilated by a non-zero element.
    ZeroDivisor { element: Element, annihilator: Element, side: Side },
    /// `ij + ji != 0`.
    Anticommutation { i: Element, j: Element, sum: Element },
    /// `element · e_u != e_u · element`.
    NotCentral { element: Element, basis_index: usize },
    /// `element` commutes with every basis vector.
    Central { element: Element },
    /// `1 + 1 = 0`.
    CharacteristicTwo { unit: Element },
    /// A non-trivial vanishing combination `Σ c_r · elements_r = 0`.
    LinearDependence { elements: Vec<Element>, coefficients: Vec<Element> },
}

impl Witness {
    /// Replay the witness against `alg`.
    pub fn verify(&self, alg: &Algebra) -> bool {
        let conforms = |xs: &[&Element]| xs.iter().all(|x| alg.check(x).is_ok());
        match self {
            Witness::NonAssociative { s, t, u } => {
                let n = alg.dim();
                if *s >= n || *t >= n || *u >= n {
                    return false;
                }
                let (es, et, eu) = (alg.basis(*s), alg.basis(*t), alg.basis(*u));
                alg.mul(&alg.mul(&es, &et), &eu) != alg.mul(&es, &alg.mul(&et, &eu))
            }
            Witness::NotUnital { index } => {
                if *index >= alg.dim() {
                    return false;
                }
                let e = alg.basis(*index);
                alg.mul(alg.unit(), &e) != e || alg.mul(&e, alg.unit()) != e
            }
            Witness::Commutative => {
                let basis = alg.basis_elements();
                basis.iter().all(|x| basis.iter().all(|y| alg.comm(x, y).is_zero()))
            }
            Witness::CommutatorSquareNotCentral { x, y, commutator, square, basis_index } => {
                if !conforms(&[x, y, commutator, square]) || *basis_index >= alg.dim() {
                    return false;
                }
                let v = alg.comm(x, y);
                let sq = alg.mul(&v, &v);
                v == *commutator && sq == *square && !alg.comm(&sq, &alg.basis(*basis_index)).is_zero()
            }
            Witness::CommutatorZeroDivisor { x, y, commutator, annihilator, side } => {
                if !conforms(&[x, y, commutator, annihilator]) {
                    return false;
                }
                let v = alg.comm(x, y);
                v == *commutator && !v.is_zero() && annihilates(alg, &v, annihilator, *side)
            }
            Witness::ZeroDivisor { element, annihilator, side } => {
                conforms(&[element, annihilator]) && !element.is_zero() && annihilates(alg, element, annihilator, *side)
            }
            Witness::Anticommutation { i, j, sum } => {
                conforms(&[i, j, sum]) && {
                    let s = &alg.mul(i, j) + &alg.mul(j, i);
                    s == *sum && !s.is_zero()
                }
            }
            Witness::NotCentral { element, basis_index } => {
                conforms(&[element]) && *basis_index < alg.dim() && !alg.comm(element, &alg.basis(*basis_index)).is_zero()
            }
            Witness::Central { element } => {
                conforms(&[element]) && alg.basis_elements().iter().all(|e| alg.comm(element, e).is_zero())
            }
            Witness::CharacteristicTwo { unit } => unit == alg.unit() && (unit + unit).is_zero(),
            Witness::LinearDependence { elements, coefficients } => {
                if elements.len() != coefficients.len() || elements.is_empty() {
                    return false;
                }
                let refs: Vec<&Element> = elements.iter().chain(coefficients).collect();
                if !conforms(&refs) || coefficients.iter().all(Element::is_zero) {
                    return false;
                }
                // coefficients must be central for the combination to be meaningful
                if !coefficients.iter().all(|c| alg.basis_elements().iter().all(|e| alg.comm(c, e).is_zero())) {
                    return false;
                }
                elements
                    .iter()
                    .zip(coefficients)
                    .fold(alg.zero(), |acc, (e, c)| &acc + &alg.mul(c, e))
                    .is_zero()
            }
        }
    }
}

fn annihilates(alg: &Algebra, v: &Element, r: &Element, side: Side) -> bool {
    if r.is_zero() {
        return false;
    }
    let left = || alg.mul(v, r).is_zero();
    let right = || alg.mul(r, v).is_zero();
    match side {
        Side::Both => left() && right(),
        Side::Left => left(),
        Side::Right => right(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins;
    use crate::scalar::BaseRing;

    #[test]
    fn genuine_witnesses_verify() {
        let m = builtins::matrix(2, BaseRing::Rational).unwrap();
        let e12 = m.basis(1);
        let w = Witness::ZeroDivisor { element: e12.clone(), annihilator: e12.clone(), side: Side::Both };
        assert!(w.verify(&m));
        let w = Witness::CommutatorZeroDivisor {
            x: m.basis(0),
            y: e12.clone(),
            commutator: e12.clone(),
            annihilator: e12.clone(),
            side: Side::Both,
        };
        assert!(w.verify(&m));
        assert!(Witness::NotCentral { element: m.basis(0), basis_index: 1 }.verify(&m));
        assert!(Witness::Central { element: m.unit().clone() }.verify(&m));
    }

    #[test]
    fn forged_witnesses_fail() {
        let h = builtins::hamilton();
        let i = h.basis(1);
        let w = Witness::ZeroDivisor { element: i.clone(), annihilator: i.clone(), side: Side::Left };
        assert!(!w.verify(&h));
        assert!(!Witness::Commutative.verify(&h));
        assert!(!Witness::NonAssociative { s: 1, t: 2, u: 3 }.verify(&h));
        assert!(!Witness::CharacteristicTwo { unit: h.unit().clone() }.verify(&h));
        let w = Witness::Anticommutation { i: i.clone(), j: h.basis(2), sum: h.zero() };
        assert!(!w.verify(&h));
    }

    #[test]
    fn characteristic_two_unit() {
        let m = builtins::matrix(2, BaseRing::Prime(2)).unwrap();
        assert!(Witness::CharacteristicTwo { unit: m.unit().clone() }.verify(&m));
    }
}

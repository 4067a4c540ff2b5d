use crate::algebra::{Algebra, Element};
use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, ExactMatrix};
use crate::scalar::{normalize_primitive, Scalar};
use crate::witness::Side;

/// A non-zero `r` with `v·r = 0` and/or `r·v = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Annihilator {
    pub annihilator: Element,
    pub side: Side,
}

/// Is `v` a zero divisor? Returns an annihilator when it is.
///
/// Two-sided annihilators are preferred, then right-kernel vectors
/// (`v·r = 0`), then left ones (`r·v = 0`). The witness is scaled to a
/// primitive integer vector (or first non-zero residue 1) and re-verified.
pub fn is_zero_divisor(alg: &Algebra, v: &Element) -> Result<Option<Annihilator>> {
    alg.check(v)?;
    if v.is_zero() {
        return Err(Error::ZeroElement);
    }
    let alg = alg.lift_to_field();
    let left = alg.left_matrix(v);
    let right = alg.right_matrix(v);
    let n = alg.dim();

    let stacked_rows: Vec<Vec<Scalar>> = (0..n)
        .map(|r| left.row(r).to_vec())
        .chain((0..n).map(|r| right.row(r).to_vec()))
        .collect();
    let stacked = ExactMatrix::from_rows(alg.base(), n, &stacked_rows).expect("conforming rows");

    for (m, side) in [(&stacked, Side::Both), (&left, Side::Left), (&right, Side::Right)] {
        if let Some(k) = kernel_basis(m).into_iter().next() {
            let r = Element::new(normalize_primitive(&k));
            let ok = match side {
                Side::Both => alg.mul(v, &r).is_zero() && alg.mul(&r, v).is_zero(),
                Side::Left => alg.mul(v, &r).is_zero(),
                Side::Right => alg.mul(&r, v).is_zero(),
            };
            assert!(ok && !r.is_zero(), "annihilator failed re-verification");
            return Ok(Some(Annihilator { annihilator: r, side }));
        }
    }
    Ok(None)
}

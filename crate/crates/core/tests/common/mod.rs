//! Oracles shared by the integration tests. Nothing here calls into the
//! library's elimination or multiplication code.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use quatrec::algebra::Element;
use quatrec::scalar::Scalar;

pub mod replay;

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn to_q(e: &Element) -> Vec<Q> {
    e.coords().iter().map(|s| s.as_rational().expect("rational coordinate").clone()).collect()
}

pub fn from_q(v: &[Q]) -> Element {
    Element::new(v.iter().cloned().map(Scalar::rational).collect())
}

/// Product in `(a, b)` on the basis `1, i, j, k`, written out by hand.
pub fn quat_mul(a: &Q, b: &Q, x: &[Q], y: &[Q]) -> [Q; 4] {
    let ab = a * b;
    [
        &x[0] * &y[0] + a * &x[1] * &y[1] + b * &x[2] * &y[2] - &ab * &x[3] * &y[3],
        &x[0] * &y[1] + &x[1] * &y[0] - b * &x[2] * &y[3] + b * &x[3] * &y[2],
        &x[0] * &y[2] + &x[2] * &y[0] + a * &x[1] * &y[3] - a * &x[3] * &y[1],
        &x[0] * &y[3] + &x[3] * &y[0] + &x[1] * &y[2] - &x[2] * &y[1],
    ]
}

pub fn quat_norm(a: &Q, b: &Q, x: &[Q]) -> Q {
    &x[0] * &x[0] - a * &x[1] * &x[1] - b * &x[2] * &x[2] + a * b * &x[3] * &x[3]
}

/// Plain Gauss-Jordan over ℚ: the unique solution of `cols · c = target`,
/// or `None` if the columns are dependent or `target` is outside their span.
pub fn solve_columns(cols: &[Vec<Q>], target: &[Q]) -> Option<Vec<Q>> {
    let n = target.len();
    let m = cols.len();
    let mut rows: Vec<Vec<Q>> = (0..n).map(|r| (0..m).map(|c| cols[c][r].clone()).chain([target[r].clone()]).collect()).collect();
    let mut pivot_row = 0;
    let mut pivots = Vec::new();
    for c in 0..m {
        let p = (pivot_row..n).find(|&r| !rows[r][c].is_zero())?;
        rows.swap(pivot_row, p);
        let inv = Q::one() / &rows[pivot_row][c];
        for v in rows[pivot_row].iter_mut() {
            *v = &*v * &inv;
        }
        for r in 0..n {
            if r != pivot_row && !rows[r][c].is_zero() {
                let f = rows[r][c].clone();
                for cc in 0..=m {
                    let sub = &f * &rows[pivot_row][cc];
                    rows[r][cc] = &rows[r][cc] - sub;
                }
            }
        }
        pivots.push(c);
        pivot_row += 1;
    }
    if rows[pivot_row..].iter().any(|r| !r[m].is_zero()) {
        return None;
    }
    Some((0..m).map(|c| rows[c][m].clone()).collect())
}

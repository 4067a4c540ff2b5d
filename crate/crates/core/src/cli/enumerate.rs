//! Exhaustive sweep over small structure-constant tables over 𝔽ₚ.
//!
//! `e₀` is the unit; the products `e_s e_t` with `s, t ≥ 1` range over all
//! of `(𝔽ₚᵏ)^{(k−1)²}`. Associativity is filtered on raw residues before an
//! [`Algebra`] is built. A finite ring satisfying both hypotheses would be
//! a noncommutative finite division ring, so `passes_both` must stay empty.

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{Algebra, Element};
use crate::analysis::{check_h1, check_h2, H1Mode, H2Mode};
use crate::error::{Error, Result};
use crate::scalar::{is_prime, BaseRing, Scalar};
use crate::witness::Witness;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Class {
    Commutative,
    FailsH1,
    FailsH2,
    PassesBoth,
}

/// The lowest-indexed table of a class, with the witness that put it there.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Sample {
    pub class: Class,
    pub index: u64,
    #[serde(skip)]
    pub algebra: Algebra,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub dim: usize,
    pub prime: u64,
    pub tables: u64,
    pub associative: u64,
    pub commutative: u64,
    pub fails_h1: u64,
    pub fails_h2: u64,
    pub passes_both: u64,
    pub samples: Vec<Sample>,
}

impl Summary {
    /// No noncommutative table passes both hypotheses.
    pub fn consistent(&self) -> bool {
        self.passes_both == 0
    }
}

/// Guard rails: `k ≤ 3` and `p ∈ {2, 3}` unless forced.
pub fn check_guard(dim: usize, p: u64, force: bool) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if dim == 0 {
        return Err(Error::InvalidArgument("dimension must be at least 1".into()));
    }
    let digits = dim * (dim - 1) * (dim - 1);
    if (p as f64).powi(digits as i32) > u64::MAX as f64 / 2.0 {
        return Err(Error::InvalidArgument(format!("{p}^{digits} tables cannot be indexed")));
    }
    if !force && (dim > 3 || !matches!(p, 2 | 3)) {
        return Err(Error::InvalidArgument(format!("enumeration of dim {dim} over F{p} exceeds the guard rails (dim ≤ 3, p ∈ {{2, 3}}); pass --force")));
    }
    Ok(())
}

struct Table {
    k: usize,
    p: u64,
    /// `t[(s * k + t) * k + w]` = coefficient of `e_w` in `e_s e_t`.
    t: Vec<u64>,
}

impl Table {
    fn decode(k: usize, p: u64, mut code: u64) -> Table {
        let mut t = vec![0u64; k * k * k];
        for x in 0..k {
            t[x * k + x] = 1; // e₀ e_x = e_x
            t[(x * k) * k + x] = 1; // e_x e₀ = e_x
        }
        for s in 1..k {
            for u in 1..k {
                for w in (0..k).rev() {
                    t[(s * k + u) * k + w] = code % p;
                    code /= p;
                }
            }
        }
        Table { k, p, t }
    }

    fn entry(&self, s: usize, t: usize, w: usize) -> u64 {
        self.t[(s * self.k + t) * self.k + w]
    }

    fn associative(&self) -> bool {
        let (k, p) = (self.k, self.p);
        for s in 1..k {
            for t in 1..k {
                for u in 1..k {
                    for out in 0..k {
                        let mut left = 0u64;
                        let mut right = 0u64;
                        for w in 0..k {
                            left += self.entry(s, t, w) * self.entry(w, u, out);
                            right += self.entry(t, u, w) * self.entry(s, w, out);
                        }
                        if left % p != right % p {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    fn commutative(&self) -> bool {
        let k = self.k;
        (1..k).all(|s| (s + 1..k).all(|t| (0..k).all(|w| self.entry(s, t, w) == self.entry(t, s, w))))
    }

    fn to_algebra(&self) -> Algebra {
        let (k, p) = (self.k, self.p);
        let el = |s: usize, t: usize| Element::new((0..k).map(|w| Scalar::residue(self.entry(s, t, w), p)).collect());
        let table = (0..k).flat_map(|s| (0..k).map(move |t| (s, t))).map(|(s, t)| el(s, t)).collect();
        let mut unit = vec![0u64; k];
        unit[0] = 1;
        let unit = Element::new(unit.into_iter().map(|v| Scalar::residue(v, p)).collect());
        Algebra::new(BaseRing::Prime(p), unit, table, None).expect("well-formed table")
    }
}

fn classify(k: usize, p: u64, code: u64) -> Option<(Class, Option<Witness>)> {
    let table = Table::decode(k, p, code);
    if !table.associative() {
        return None;
    }
    if table.commutative() {
        return Some((Class::Commutative, None));
    }
    let alg = table.to_algebra();
    debug_assert!(alg.validate().is_valid());
    let h1 = check_h1(&alg, H1Mode::Exhaustive).expect("finite base");
    if let Some(w) = h1.witness() {
        return Some((Class::FailsH1, Some(w.clone())));
    }
    let h2 = check_h2(&alg, H2Mode::Exhaustive).expect("finite base");
    if let Some(w) = h2.witness() {
        return Some((Class::FailsH2, Some(w.clone())));
    }
    Some((Class::PassesBoth, None))
}

#[derive(Default)]
struct Acc {
    associative: u64,
    counts: [u64; 4],
    first: [Option<(u64, Option<Witness>)>; 4],
}

impl Acc {
    fn add(mut self, code: u64, class: Class, witness: Option<Witness>) -> Self {
        let c = class as usize;
        self.associative += 1;
        self.counts[c] += 1;
        if self.first[c].as_ref().is_none_or(|(i, _)| code < *i) {
            self.first[c] = Some((code, witness));
        }
        self
    }

    fn merge(mut self, other: Acc) -> Acc {
        self.associative += other.associative;
        for c in 0..4 {
            self.counts[c] += other.counts[c];
            let take = match (&self.first[c], &other.first[c]) {
                (None, Some(_)) => true,
                (Some((a, _)), Some((b, _))) => b < a,
                _ => false,
            };
            if take {
                self.first[c] = other.first[c].clone();
            }
        }
        self
    }
}

/// Number of tables for dimension `k` over `𝔽ₚ`.
pub fn table_count(k: usize, p: u64) -> u64 {
    p.pow((k * (k - 1) * (k - 1)) as u32)
}

/// Rebuild table number `index` of the sweep.
pub fn table_algebra(k: usize, p: u64, index: u64) -> Algebra {
    Table::decode(k, p, index).to_algebra()
}

/// Classify every table. Counts do not depend on scheduling, and each
/// reported sample is the lowest index in its class.
pub fn enumerate(k: usize, p: u64) -> Result<Summary> {
    check_guard(k, p, true)?;
    let total = table_count(k, p);
    let acc = (0..total)
        .into_par_iter()
        .fold(Acc::default, |acc, code| match classify(k, p, code) {
            Some((class, w)) => acc.add(code, class, w),
            None => acc,
        })
        .reduce(Acc::default, Acc::merge);
    let classes = [Class::Commutative, Class::FailsH1, Class::FailsH2, Class::PassesBoth];
    let samples = classes
        .iter()
        .zip(acc.first.iter())
        .filter_map(|(class, first)| {
            first.as_ref().map(|(index, witness)| Sample {
                class: *class,
                index: *index,
                algebra: table_algebra(k, p, *index),
                witness: witness.clone(),
            })
        })
        .collect();
    Ok(Summary {
        dim: k,
        prime: p,
        tables: total,
        associative: acc.associative,
        commutative: acc.counts[0],
        fails_h1: acc.counts[1],
        fails_h2: acc.counts[2],
        passes_both: acc.counts[3],
        samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decode_places_unit() {
        let alg = table_algebra(3, 2, 1234);
        let report = alg.validate();
        assert!(report.unital());
        assert_eq!(table_count(3, 2), 4096);
        assert_eq!(table_count(3, 3), 531_441);
    }

    #[test]
    fn raw_associativity_agrees_with_validate() {
        for code in 0..table_count(3, 2) {
            let t = Table::decode(3, 2, code);
            assert_eq!(t.associative(), t.to_algebra().validate().associative(), "table {code}");
            assert_eq!(t.commutative(), t.to_algebra().validate().commutative(), "table {code}");
        }
    }

    #[test]
    fn dimension_two_is_commutative() {
        for p in [2, 3] {
            let s = enumerate(2, p).unwrap();
            assert_eq!(s.tables, p * p);
            assert_eq!(s.commutative, s.associative);
        }
    }

    #[test]
    fn guard_rails() {
        assert!(check_guard(4, 2, false).is_err());
        assert!(check_guard(3, 5, false).is_err());
        assert!(check_guard(3, 5, true).is_ok());
        assert!(check_guard(3, 4, true).is_err());
    }
}

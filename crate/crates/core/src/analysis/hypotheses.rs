use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::poly::{h2_polynomials, point_to_pair};
use super::zero_divisor::is_zero_divisor;
use super::random_element;
use crate::algebra::{Algebra, Element};
use crate::error::{Error, Result};
use crate::recognition::RecognitionOutcome;
use crate::scalar::{BaseRing, Scalar};
use crate::witness::Witness;

/// Parameters of a randomized scan. Basis pairs `(e_s, e_t)`, `s < t`, are
/// always tried first, then `samples` seeded random pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SamplingConfig {
    pub samples: usize,
    pub height: u64,
    pub seed: u64,
}

impl Default for SamplingConfig {
    fn default() -> Self {
        SamplingConfig { samples: 64, height: 10, seed: 0 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum H2Mode {
    Symbolic,
    Exhaustive,
    Randomized(SamplingConfig),
}

#[derive(Clone, Copy, Debug)]
pub enum H1Mode<'a> {
    Exhaustive,
    Randomized(SamplingConfig),
    /// Conclusive once recognition certified a quaternion division algebra.
    Implied(&'a RecognitionOutcome),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum H2Verdict {
    HoldsSymbolic,
    HoldsExhaustive { subspaces_checked: u64 },
    NoViolationSampled { samples: usize, height: u64, seed: u64 },
    Fails { witness: Witness },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum H1Verdict {
    Fails { witness: Witness },
    HoldsExhaustive { subspaces_checked: u64 },
    HoldsImpliedByDivision,
    NoViolationSampled { samples: usize, height: u64, seed: u64 },
}

impl H2Verdict {
    pub fn fails(&self) -> bool {
        matches!(self, H2Verdict::Fails { .. })
    }

    pub fn holds_conclusively(&self) -> bool {
        matches!(self, H2Verdict::HoldsSymbolic | H2Verdict::HoldsExhaustive { .. })
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            H2Verdict::Fails { witness } => Some(witness),
            _ => None,
        }
    }
}

impl H1Verdict {
    pub fn fails(&self) -> bool {
        matches!(self, H1Verdict::Fails { .. })
    }

    pub fn holds_conclusively(&self) -> bool {
        matches!(self, H1Verdict::HoldsExhaustive { .. } | H1Verdict::HoldsImpliedByDivision)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            H1Verdict::Fails { witness } => Some(witness),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HypothesisReport {
    pub h1: H1Verdict,
    pub h2: H2Verdict,
}

fn h2_violation(alg: &Algebra, x: &Element, y: &Element) -> Option<Witness> {
    let v = alg.comm(x, y);
    if v.is_zero() {
        return None;
    }
    let square = alg.square(&v);
    let basis_index = alg.noncommuting_basis_index(&square)?;
    Some(Witness::CommutatorSquareNotCentral { x: x.clone(), y: y.clone(), commutator: v, square, basis_index })
}

fn h1_violation(alg: &Algebra, x: &Element, y: &Element) -> Option<Witness> {
    let v = alg.comm(x, y);
    if v.is_zero() {
        return None;
    }
    let ann = is_zero_divisor(alg, &v).expect("non-zero conforming commutator")?;
    Some(Witness::CommutatorZeroDivisor {
        x: x.clone(),
        y: y.clone(),
        commutator: v,
        annihilator: ann.annihilator,
        side: ann.side,
    })
}

fn subspace_pairs(alg: &Algebra) -> Result<impl Iterator<Item = (Element, Element)> + '_> {
    let BaseRing::Prime(p) = alg.base() else {
        return Err(Error::InfiniteBase(alg.base()));
    };
    let to_el = move |v: Vec<u64>| Element::new(v.into_iter().map(|c| Scalar::residue(c, p)).collect());
    Ok(two_dim_subspaces(p, alg.dim()).map(move |(a, b)| (to_el(a), to_el(b))))
}

/// Every 2-dimensional subspace of `𝔽ₚⁿ`, as the two rows of its reduced
/// row echelon basis, in a fixed order (pivot columns lexicographically,
/// then free entries as base-p counters).
///
/// Commutators are bilinear and alternating, so `(x, y)` for any pair is a
/// scalar multiple of `(r₁, r₂)` for the rows spanning `span{x, y}` (or
/// zero). Both hypotheses are invariant under non-zero scaling of the
/// commutator, so checking one pair per subspace decides them over all
/// pairs.
pub fn two_dim_subspaces(p: u64, n: usize) -> impl Iterator<Item = (Vec<u64>, Vec<u64>)> {
    (0..n).flat_map(move |c1| {
        (c1 + 1..n).flat_map(move |c2| {
            let free1: Vec<usize> = (c1 + 1..n).filter(|&j| j != c2).collect();
            let free2: Vec<usize> = (c2 + 1..n).collect();
            let slots = free1.len() + free2.len();
            let total = p.pow(slots as u32);
            (0..total).map(move |mut code| {
                let mut r1 = vec![0u64; n];
                let mut r2 = vec![0u64; n];
                r1[c1] = 1;
                r2[c2] = 1;
                for &j in free2.iter().rev() {
                    r2[j] = code % p;
                    code /= p;
                }
                for &j in free1.iter().rev() {
                    r1[j] = code % p;
                    code /= p;
                }
                (r1, r2)
            })
        })
    })
}

fn sampled_pairs(alg: &Algebra, cfg: SamplingConfig) -> impl Iterator<Item = (Element, Element)> + '_ {
    let n = alg.dim();
    let basis_pairs = (0..n).flat_map(move |s| (s + 1..n).map(move |t| (alg.basis(s), alg.basis(t))));
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let random = (0..cfg.samples).map(move |_| {
        let x = random_element(alg, &mut rng, cfg.height);
        let y = random_element(alg, &mut rng, cfg.height);
        (x, y)
    });
    basis_pairs.chain(random)
}

/// Decide or test that squares of commutators are central.
pub fn check_h2(alg: &Algebra, mode: H2Mode) -> Result<H2Verdict> {
    let alg = alg.lift_to_field();
    match mode {
        H2Mode::Exhaustive => {
            let mut checked = 0u64;
            for (x, y) in subspace_pairs(&alg)? {
                checked += 1;
                if let Some(witness) = h2_violation(&alg, &x, &y) {
                    return Ok(H2Verdict::Fails { witness });
                }
            }
            Ok(H2Verdict::HoldsExhaustive { subspaces_checked: checked })
        }
        H2Mode::Randomized(cfg) => {
            for (x, y) in sampled_pairs(&alg, cfg) {
                if let Some(witness) = h2_violation(&alg, &x, &y) {
                    return Ok(H2Verdict::Fails { witness });
                }
            }
            Ok(H2Verdict::NoViolationSampled { samples: cfg.samples, height: cfg.height, seed: cfg.seed })
        }
        H2Mode::Symbolic => symbolic_h2(&alg),
    }
}

fn symbolic_h2(alg: &Algebra) -> Result<H2Verdict> {
    let polys = h2_polynomials(alg);
    let Some(target) = polys.iter().find(|p| !p.poly.is_zero()) else {
        return Ok(H2Verdict::HoldsSymbolic);
    };
    let base = alg.base();

    // Monomial heuristic: set the variables of one term to 1, the rest to 0.
    let (exps, _) = target.poly.terms().next().expect("non-zero polynomial");
    let point: Vec<Scalar> = exps.iter().map(|&d| if d > 0 { base.one() } else { base.zero() }).collect();
    let (x, y) = point_to_pair(&point);
    if let Some(witness) = h2_violation(alg, &x, &y) {
        return Ok(H2Verdict::Fails { witness });
    }

    // Seeded random search.
    for (x, y) in sampled_pairs(alg, SamplingConfig::default()) {
        if let Some(witness) = h2_violation(alg, &x, &y) {
            return Ok(H2Verdict::Fails { witness });
        }
    }

    let char = base.characteristic();
    if char == 0 || char >= 5 {
        // Substitute 0..=4 variable by variable, keeping the polynomial
        // non-zero; each variable has degree ≤ 4, so some value works.
        let mut poly = target.poly.clone();
        let mut point = Vec::with_capacity(poly.nvars());
        for var in 0..poly.nvars() {
            let (value, reduced) = (0..=4)
                .map(|c| Scalar::from_i64(base, c))
                .find_map(|c| {
                    let r = poly.substitute(var, &c);
                    (!r.is_zero()).then_some((c, r))
                })
                .expect("a degree-4 polynomial cannot vanish at five points");
            point.push(value);
            poly = reduced;
        }
        let (x, y) = point_to_pair(&point);
        let witness = h2_violation(alg, &x, &y).expect("non-vanishing polynomial yields a witness");
        return Ok(H2Verdict::Fails { witness });
    }

    // Small characteristic: a non-zero polynomial may still vanish as a
    // function, so settle it by enumeration.
    check_h2(alg, H2Mode::Exhaustive)
}

/// Test that non-zero commutators are not zero divisors.
pub fn check_h1(alg: &Algebra, mode: H1Mode<'_>) -> Result<H1Verdict> {
    let alg = alg.lift_to_field();
    match mode {
        H1Mode::Exhaustive => {
            let mut checked = 0u64;
            for (x, y) in subspace_pairs(&alg)? {
                checked += 1;
                if let Some(witness) = h1_violation(&alg, &x, &y) {
                    return Ok(H1Verdict::Fails { witness });
                }
            }
            Ok(H1Verdict::HoldsExhaustive { subspaces_checked: checked })
        }
        H1Mode::Randomized(cfg) => {
            for (x, y) in sampled_pairs(&alg, cfg) {
                if let Some(witness) = h1_violation(&alg, &x, &y) {
                    return Ok(H1Verdict::Fails { witness });
                }
            }
            Ok(H1Verdict::NoViolationSampled { samples: cfg.samples, height: cfg.height, seed: cfg.seed })
        }
        H1Mode::Implied(outcome) => {
            if outcome.division_certified() {
                Ok(H1Verdict::HoldsImpliedByDivision)
            } else {
                Err(Error::Precondition("implied mode needs a recognized algebra with a division certificate".into()))
            }
        }
    }
}

//! Center computation, zero-divisor tests and the two commutator
//! hypotheses: non-zero commutators are not zero divisors (H1), and
//! squares of commutators are central (H2).

mod center;
mod hypotheses;
mod poly;
mod unipoly;
mod zero_divisor;

use rand::Rng;

pub use center::{center_basis, minimal_polynomial, CenterBasis, FieldStatus};
pub use hypotheses::{
    check_h1, check_h2, two_dim_subspaces, H1Mode, H1Verdict, H2Mode, H2Verdict, HypothesisReport, SamplingConfig,
};
pub use poly::{h2_polynomials, point_to_pair, H2Polynomial, MultiPoly};
pub use unipoly::{Factorization, UniPoly};
pub use zero_divisor::{is_zero_divisor, Annihilator};

use crate::algebra::{Algebra, Element};
use crate::scalar::{BaseRing, Scalar};

/// A uniformly random scalar: integers in `[-height, height]` over ℚ or ℤ,
/// any residue over 𝔽ₚ.
pub fn random_scalar<R: Rng>(base: BaseRing, rng: &mut R, height: u64) -> Scalar {
    match base {
        BaseRing::Prime(p) => Scalar::residue(rng.gen_range(0..p), p),
        _ => {
            let h = height as i64;
            Scalar::from_i64(base, rng.gen_range(-h..=h))
        }
    }
}

pub fn random_element<R: Rng>(alg: &Algebra, rng: &mut R, height: u64) -> Element {
    Element::new((0..alg.dim()).map(|_| random_scalar(alg.base(), rng, height)).collect())
}

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::unipoly::{Factorization, UniPoly};
use super::zero_divisor::is_zero_divisor;
use super::random_scalar;
use crate::algebra::{Algebra, Element};
use crate::linalg::{kernel_basis, solve, ExactMatrix};
use crate::scalar::{normalize_primitive, Scalar};
use crate::witness::{Side, Witness};

/// Whether the center is a field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FieldStatus {
    Yes,
    No,
    Unknown,
}

/// A basis of the center `C` as a vector space over the base field. The
/// unit is always the first element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CenterBasis {
    pub elements: Vec<Element>,
    pub is_field: FieldStatus,
    /// A zero divisor inside the center when `is_field` is `No`.
    pub field_witness: Option<Witness>,
    pub note: String,
}

impl CenterBasis {
    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    fn span_matrix(&self, alg: &Algebra) -> ExactMatrix {
        let cols: Vec<Vec<Scalar>> = self.elements.iter().map(|e| e.coords().to_vec()).collect();
        ExactMatrix::from_columns(alg.base(), alg.dim(), &cols).expect("center vectors conform")
    }

    /// Coordinates of `x` with respect to this basis, if `x` lies in the span.
    pub fn coordinates(&self, alg: &Algebra, x: &Element) -> Option<Vec<Scalar>> {
        solve(&self.span_matrix(alg), x.coords()).expect("conforming element")
    }

    pub fn contains(&self, alg: &Algebra, x: &Element) -> bool {
        self.coordinates(alg, x).is_some()
    }

    /// The inverse of a central element inside the center span, found by an
    /// exact linear solve `c · Σ λ_t z_t = 1`.
    pub fn inverse(&self, alg: &Algebra, c: &Element) -> Option<Element> {
        let cols: Vec<Vec<Scalar>> = self.elements.iter().map(|z| alg.mul(c, z).into_coords()).collect();
        let m = ExactMatrix::from_columns(alg.base(), alg.dim(), &cols).expect("conforming");
        let lambda = solve(&m, alg.unit().coords()).expect("conforming")?;
        Some(
            self.elements
                .iter()
                .zip(&lambda)
                .fold(alg.zero(), |acc, (z, l)| &acc + &z.scale(l)),
        )
    }
}

/// Compute the center as the kernel of the stacked maps `z ↦ e_s z − z e_s`
/// and decide whether it is a field.
pub fn center_basis(alg: &Algebra) -> CenterBasis {
    let alg = alg.lift_to_field();
    let n = alg.dim();
    let mut rows: Vec<Vec<Scalar>> = Vec::with_capacity(n * n);
    for s in 0..n {
        // column t of this block is (e_s e_t − e_t e_s)
        let cols: Vec<Element> = (0..n)
            .map(|t| alg.basis_product(s, t) - alg.basis_product(t, s))
            .collect();
        for w in 0..n {
            rows.push(cols.iter().map(|c| c.coords()[w].clone()).collect());
        }
    }
    let m = ExactMatrix::from_rows(alg.base(), n, &rows).expect("square blocks");
    let kernel = kernel_basis(&m);

    let mut elements = vec![alg.unit().clone()];
    for v in kernel {
        let candidate = Element::new(normalize_primitive(&v));
        let mut cols: Vec<Vec<Scalar>> = elements.iter().map(|e| e.coords().to_vec()).collect();
        cols.push(candidate.coords().to_vec());
        let rank = ExactMatrix::from_columns(alg.base(), n, &cols).expect("conforming").rank();
        if rank == cols.len() {
            elements.push(candidate);
        }
    }

    let mut center = CenterBasis { elements, is_field: FieldStatus::Unknown, field_witness: None, note: String::new() };
    decide_field(&alg, &mut center);
    center
}

const FIELD_PROBES: usize = 8;

fn decide_field(alg: &Algebra, center: &mut CenterBasis) {
    let d = center.dim();
    if d == 1 {
        center.is_field = FieldStatus::Yes;
        center.note = "center is the base field".into();
        return;
    }
    for z in &center.elements[1..] {
        if let Ok(Some(zd)) = is_zero_divisor(alg, z) {
            center.is_field = FieldStatus::No;
            center.field_witness = Some(Witness::ZeroDivisor { element: z.clone(), annihilator: zd.annihilator, side: zd.side });
            center.note = "a center basis element is a zero divisor".into();
            return;
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut probes: Vec<Element> = center.elements[1..].to_vec();
    for _ in 0..FIELD_PROBES {
        let z = center.elements.iter().fold(alg.zero(), |acc, e| &acc + &e.scale(&random_scalar(alg.base(), &mut rng, 10)));
        probes.push(z);
    }

    let mut undecided = false;
    for z in &probes {
        let f = minimal_polynomial(alg, z);
        match f.factorization() {
            Factorization::ProperFactor(g) => {
                let (h, rem) = f.div_rem(&g);
                debug_assert!(rem.is_zero());
                let element = g.eval_at(alg, z);
                let annihilator = h.eval_at(alg, z);
                center.is_field = FieldStatus::No;
                center.field_witness = Some(Witness::ZeroDivisor { element, annihilator, side: Side::Both });
                center.note = "minimal polynomial of a central element is reducible".into();
                return;
            }
            Factorization::Irreducible if f.degree() == d => {
                center.is_field = FieldStatus::Yes;
                center.note = format!("center is generated by one element with irreducible minimal polynomial of degree {d}");
                return;
            }
            Factorization::Irreducible => {}
            Factorization::Undecided => undecided = true,
        }
    }
    center.is_field = FieldStatus::Unknown;
    center.note = if undecided {
        "could not decide irreducibility of a minimal polynomial".into()
    } else {
        "no primitive element found among probes".into()
    };
}

/// Monic minimal polynomial of `z` over the base field.
pub fn minimal_polynomial(alg: &Algebra, z: &Element) -> UniPoly {
    let base = alg.base().field();
    let mut powers = vec![alg.unit().clone()];
    loop {
        let next = alg.mul(powers.last().expect("non-empty"), z);
        let cols: Vec<Vec<Scalar>> = powers.iter().map(|p| p.coords().to_vec()).collect();
        let m = ExactMatrix::from_columns(base, alg.dim(), &cols).expect("conforming");
        if let Some(c) = solve(&m, next.coords()).expect("conforming") {
            let mut coeffs: Vec<Scalar> = c.iter().map(|s| -s).collect();
            coeffs.push(base.one());
            return UniPoly::new(base, coeffs);
        }
        powers.push(next);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins;
    use crate::scalar::BaseRing;

    fn q(n: i64) -> Scalar {
        Scalar::from_i64(BaseRing::Rational, n)
    }

    fn check_center_invariants(alg: &Algebra, c: &CenterBasis) {
        for z in &c.elements {
            assert!(alg.is_central(z));
        }
        for a in &c.elements {
            for b in &c.elements {
                assert!(c.contains(alg, &alg.mul(a, b)));
            }
        }
        assert_eq!(&c.elements[0], alg.unit());
    }

    #[test]
    fn matrix_center_is_scalars() {
        let m = builtins::matrix(2, BaseRing::Rational).unwrap();
        let c = center_basis(&m);
        assert_eq!(c.dim(), 1);
        assert_eq!(c.is_field, FieldStatus::Yes);
        check_center_invariants(&m, &c);
    }

    #[test]
    fn hamilton_center() {
        let h = builtins::hamilton();
        let c = center_basis(&h);
        assert_eq!(c.elements, vec![h.unit().clone()]);
        assert_eq!(c.is_field, FieldStatus::Yes);
    }

    #[test]
    fn tensor_center_is_quadratic_field() {
        let t = builtins::quadratic_extension_tensor(&builtins::hamilton(), &q(2)).unwrap();
        let c = center_basis(&t);
        assert_eq!(c.dim(), 2);
        assert_eq!(c.is_field, FieldStatus::Yes);
        check_center_invariants(&t, &c);
        // Oracle: the center is span{1, t} with t = basis element 4.
        let tt = t.basis(4);
        assert!(c.contains(&t, &tt));
        assert_eq!(t.square(&tt), t.scalar_i64(2));
    }

    #[test]
    fn split_center_is_not_a_field() {
        let t = builtins::quadratic_extension_tensor(&builtins::hamilton(), &q(4)).unwrap();
        let c = center_basis(&t);
        assert_eq!(c.is_field, FieldStatus::No);
        assert!(c.field_witness.as_ref().unwrap().verify(&t));

        let d = builtins::direct_sum(&builtins::matrix(2, BaseRing::Rational).unwrap(), &builtins::diagonal(1, BaseRing::Rational).unwrap()).unwrap();
        let c = center_basis(&d);
        assert_eq!(c.dim(), 2);
        assert_eq!(c.is_field, FieldStatus::No);
        assert!(c.field_witness.as_ref().unwrap().verify(&d));
    }

    #[test]
    fn central_inverse() {
        let t = builtins::quadratic_extension_tensor(&builtins::hamilton(), &q(2)).unwrap();
        let c = center_basis(&t);
        let z = &t.scalar_i64(3) + &t.basis(4);
        let inv = c.inverse(&t, &z).unwrap();
        assert_eq!(t.mul(&z, &inv), *t.unit());
        assert!(c.contains(&t, &inv));
        assert!(c.inverse(&t, &t.zero()).is_none());
    }

    #[test]
    fn lipschitz_center_lifts() {
        let l = builtins::lipschitz();
        let c = center_basis(&l);
        assert_eq!(c.dim(), 1);
        assert_eq!(c.is_field, FieldStatus::Yes);
    }
}

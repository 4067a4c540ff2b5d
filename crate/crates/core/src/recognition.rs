//! Recognition of a quaternion algebra inside a presentation: a
//! non-central commutator `i`, a second commutator `j = (i, s)`
//! anticommuting with it, quadratic certificates, decomposition of
//! elements over `{1, i, j, k}` and the division certificate.

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{Algebra, Element, ValidationReport};
use crate::analysis::{
    center_basis, check_h1, check_h2, CenterBasis, FieldStatus, H1Mode, H1Verdict, H2Mode, H2Verdict, HypothesisReport,
    SamplingConfig,
};
use crate::linalg::{kernel_basis, ExactMatrix};
use crate::norm::{is_division, pure_isotropy_mod_p, pure_isotropy_search, DivisionStatus, DivisionVerdict};
use crate::scalar::{BaseRing, Scalar};
use crate::witness::{Side, Witness};

#[derive(Debug, Error)]
pub enum RecognitionError {
    #[error("the algebra is commutative")]
    NoCommutatorFound { witness: Witness },
    #[error("commutator and its fallback are both central")]
    FallbackFailed { witness: Witness },
    #[error("ij + ji is not zero")]
    AnticommutationFailed { witness: Witness },
    #[error("i² or j² is zero or not central")]
    DegenerateSquare { witness: Witness },
    #[error("1, i, j, k are dependent over the center")]
    DependentBasis { witness: Witness },
    #[error("element is central; its quadratic certificate is trivial")]
    CentralInput { witness: Witness },
    #[error("characteristic 2: division by 2 is impossible")]
    CharacteristicTwo { witness: Witness },
    #[error("the center is not known to be a field")]
    CenterNotField { witness: Option<Witness> },
    #[error("an anticommutator pu + up is not central")]
    NonCentralAnticommutator { witness: Witness },
    #[error("quadratic certificate has a zero leading or constant coefficient")]
    DegenerateCertificate { witness: Witness },
    #[error(transparent)]
    Input(#[from] crate::error::Error),
}

impl RecognitionError {
    pub fn witness(&self) -> Option<&Witness> {
        match self {
            RecognitionError::NoCommutatorFound { witness }
            | RecognitionError::FallbackFailed { witness }
            | RecognitionError::AnticommutationFailed { witness }
            | RecognitionError::DegenerateSquare { witness }
            | RecognitionError::DependentBasis { witness }
            | RecognitionError::CentralInput { witness }
            | RecognitionError::CharacteristicTwo { witness }
            | RecognitionError::NonCentralAnticommutator { witness }
            | RecognitionError::DegenerateCertificate { witness } => Some(witness),
            RecognitionError::CenterNotField { witness } => witness.as_ref(),
            RecognitionError::Input(_) => None,
        }
    }

    /// Does the witness violate one of the commutator hypotheses directly?
    pub fn is_hypothesis_violation(&self) -> bool {
        matches!(self.witness(), Some(Witness::CommutatorZeroDivisor { .. } | Witness::CommutatorSquareNotCentral { .. }))
    }
}

pub type RecResult<T> = std::result::Result<T, RecognitionError>;

/// A commutator outside the center, with the pair producing it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NoncentralCommutator {
    /// `(x, y)` as scanned.
    pub x: Element,
    pub y: Element,
    /// `v = (x, y)`.
    pub v: Element,
    /// Whether `v` was central and `vx = (x, yx)` was taken instead.
    pub via_fallback: bool,
    pub commutator: Element,
}

impl NoncentralCommutator {
    /// The pair whose commutator is [`Self::commutator`].
    pub fn pair(&self, alg: &Algebra) -> (Element, Element) {
        if self.via_fallback {
            (self.x.clone(), alg.mul(&self.y, &self.x))
        } else {
            (self.x.clone(), self.y.clone())
        }
    }
}

/// `(x, y)` if it is not central, else `vx = (x, yx)`. Errors when both
/// are central, which forces `v·(x, e_u) = 0` for any `e_u` not commuting
/// with `x`.
pub fn commutator_or_fallback(alg: &Algebra, x: &Element, y: &Element) -> RecResult<NoncentralCommutator> {
    let v = alg.comm(x, y);
    if v.is_zero() {
        return Err(crate::error::Error::InvalidArgument("x and y commute".into()).into());
    }
    if !alg.is_central(&v) {
        return Ok(NoncentralCommutator { x: x.clone(), y: y.clone(), v: v.clone(), via_fallback: false, commutator: v });
    }
    let vx = alg.mul(&v, x);
    if !alg.is_central(&vx) {
        return Ok(NoncentralCommutator { x: x.clone(), y: y.clone(), v, via_fallback: true, commutator: vx });
    }
    let u = alg.noncommuting_basis_index(x).expect("x does not commute with y");
    let eu = alg.basis(u);
    let w = alg.comm(x, &eu);
    Err(RecognitionError::FallbackFailed {
        witness: Witness::CommutatorZeroDivisor { x: x.clone(), y: eu, commutator: w, annihilator: v, side: Side::Both },
    })
}

/// Scan: `x` is the first basis vector outside the center, `y` the first
/// basis vector with `(x, y) ≠ 0`.
pub fn find_noncentral_commutator(alg: &Algebra, center: &CenterBasis) -> RecResult<NoncentralCommutator> {
    let alg = alg.lift_to_field();
    let Some(x) = alg.basis_elements().into_iter().find(|e| !center.contains(&alg, e)) else {
        return Err(RecognitionError::NoCommutatorFound { witness: Witness::Commutative });
    };
    let y = alg
        .basis_elements()
        .into_iter()
        .find(|e| !alg.comm(&x, e).is_zero())
        .expect("a vector outside the center fails to commute with some basis vector");
    commutator_or_fallback(&alg, &x, &y)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Provenance {
    pub x: Element,
    pub y: Element,
    pub via_fallback: bool,
    /// `j = (i, s)`; absent when `i`, `j` were read off the presentation.
    pub s: Option<Element>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuaternionStructure {
    pub i: Element,
    pub j: Element,
    pub k: Element,
    pub a: Element,
    pub b: Element,
    pub center: CenterBasis,
    pub provenance: Provenance,
}

fn square_witness(alg: &Algebra, x: &Element, y: &Element, c: &Element) -> Option<Witness> {
    let sq = alg.square(c);
    if sq.is_zero() {
        return Some(Witness::CommutatorZeroDivisor {
            x: x.clone(),
            y: y.clone(),
            commutator: c.clone(),
            annihilator: c.clone(),
            side: Side::Both,
        });
    }
    let basis_index = alg.noncommuting_basis_index(&sq)?;
    Some(Witness::CommutatorSquareNotCentral { x: x.clone(), y: y.clone(), commutator: c.clone(), square: sq, basis_index })
}

/// Columns `z_t · u` for `z_t` in the center basis and `u ∈ {1, i, j, k}`.
fn spanning_matrix(alg: &Algebra, center: &CenterBasis, units: &[Element]) -> ExactMatrix {
    let cols: Vec<Vec<Scalar>> = units
        .iter()
        .flat_map(|u| center.elements.iter().map(move |z| alg.mul(z, u).into_coords()))
        .collect();
    ExactMatrix::from_columns(alg.base(), alg.dim(), &cols).expect("conforming")
}

fn dependence_witness(alg: &Algebra, center: &CenterBasis, units: &[Element]) -> Option<Witness> {
    let m = spanning_matrix(alg, center, units);
    let lambda = kernel_basis(&m).into_iter().next()?;
    let d = center.dim();
    let coefficients: Vec<Element> = (0..units.len())
        .map(|u| {
            center.elements.iter().enumerate().fold(alg.zero(), |acc, (t, z)| &acc + &z.scale(&lambda[u * d + t]))
        })
        .collect();
    Some(Witness::LinearDependence { elements: units.to_vec(), coefficients })
}

impl QuaternionStructure {
    /// Check the structure invariants for a candidate pair `(i, j)`.
    pub fn new(alg: &Algebra, center: &CenterBasis, i: Element, j: Element, provenance: Provenance) -> RecResult<Self> {
        let alg = alg.lift_to_field();
        alg.check(&i)?;
        alg.check(&j)?;
        let sum = &alg.mul(&i, &j) + &alg.mul(&j, &i);
        if !sum.is_zero() {
            return Err(RecognitionError::AnticommutationFailed { witness: Witness::Anticommutation { i, j, sum } });
        }
        let (px, py) = if provenance.via_fallback {
            (provenance.x.clone(), alg.mul(&provenance.y, &provenance.x))
        } else {
            (provenance.x.clone(), provenance.y.clone())
        };
        let degenerate = |x: &Element, y: &Element, c: &Element, is_commutator: bool| -> Option<Witness> {
            if is_commutator {
                return square_witness(&alg, x, y, c);
            }
            let sq = alg.square(c);
            if sq.is_zero() {
                return Some(Witness::ZeroDivisor { element: c.clone(), annihilator: c.clone(), side: Side::Both });
            }
            alg.noncommuting_basis_index(&sq).map(|u| Witness::NotCentral { element: sq, basis_index: u })
        };
        let from_scan = provenance.s.is_some();
        if let Some(w) = degenerate(&px, &py, &i, from_scan) {
            return Err(RecognitionError::DegenerateSquare { witness: w });
        }
        let s = provenance.s.clone().unwrap_or_else(|| alg.zero());
        if let Some(w) = degenerate(&i, &s, &j, from_scan) {
            return Err(RecognitionError::DegenerateSquare { witness: w });
        }
        let k = alg.mul(&i, &j);
        let units = [alg.unit().clone(), i.clone(), j.clone(), k.clone()];
        if let Some(w) = dependence_witness(&alg, center, &units) {
            return Err(RecognitionError::DependentBasis { witness: w });
        }
        let a = alg.square(&i);
        let b = alg.square(&j);
        Ok(QuaternionStructure { i, j, k, a, b, center: center.clone(), provenance })
    }

    /// Take `(i, j) = (e₁, e₂)` from the presentation when they already
    /// form a quaternion structure.
    pub fn from_presentation_basis(alg: &Algebra, center: &CenterBasis) -> Option<Self> {
        if alg.dim() < 3 {
            return None;
        }
        let (i, j) = (alg.basis(1), alg.basis(2));
        let provenance = Provenance { x: i.clone(), y: j.clone(), via_fallback: false, s: None };
        Self::new(alg, center, i, j, provenance).ok()
    }

    pub fn units(&self, alg: &Algebra) -> [Element; 4] {
        [alg.unit().clone(), self.i.clone(), self.j.clone(), self.k.clone()]
    }
}

/// `i` from [`find_noncentral_commutator`], then `j = (i, s)` for the first
/// basis vector `s` with a non-zero result, `k = ij`.
pub fn build_quaternion_structure(alg: &Algebra, center: &CenterBasis) -> RecResult<QuaternionStructure> {
    let alg = alg.lift_to_field();
    let nc = find_noncentral_commutator(&alg, center)?;
    let i = nc.commutator.clone();
    // i is not central, so some basis vector fails to commute with it.
    let s = alg.basis_elements().into_iter().find(|s| !alg.comm(&i, s).is_zero()).expect("i is not central");
    let j = alg.comm(&i, &s);
    let provenance = Provenance { x: nc.x, y: nc.y, via_fallback: nc.via_fallback, s: Some(s) };
    QuaternionStructure::new(&alg, center, i, j, provenance)
}

/// `a·x² + b·x + c = 0` with `a`, `b`, `c` central.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuadraticCertificate {
    pub x: Element,
    pub y: Element,
    pub v: Element,
    pub a: Element,
    pub b: Element,
    pub c: Element,
}

impl QuadraticCertificate {
    pub fn holds(&self, alg: &Algebra) -> bool {
        let x2 = alg.square(&self.x);
        let lhs = &(&alg.mul(&self.a, &x2) + &alg.mul(&self.b, &self.x)) + &self.c;
        lhs.is_zero()
    }
}

/// With `v = (x, y)` for the first basis `y` not commuting with `x`:
/// `a = v²`, `b = v² + (vx)² − (v + vx)²`, `c = (vx)²`.
pub fn quadratic_certificate(alg: &Algebra, x: &Element) -> RecResult<QuadraticCertificate> {
    let alg = alg.lift_to_field();
    alg.check(x)?;
    let Some(u) = alg.noncommuting_basis_index(x) else {
        return Err(RecognitionError::CentralInput { witness: Witness::Central { element: x.clone() } });
    };
    let y = alg.basis(u);
    let v = alg.comm(x, &y);
    let vx = alg.mul(&v, x);
    let a = alg.square(&v);
    let c = alg.square(&vx);
    let b = &(&a + &c) - &alg.square(&(&v + &vx));
    let cert = QuadraticCertificate { x: x.clone(), y: y.clone(), v: v.clone(), a, b, c };
    assert!(cert.holds(&alg), "quadratic identity failed");

    // vx = (x, yx) and v + vx = (x, y + yx) are commutators.
    let yx = alg.mul(&y, x);
    // a and c must be non-zero and central; b only central.
    for (yy, comm) in [(&y, &v), (&yx, &vx)] {
        if let Some(w) = square_witness(&alg, x, yy, comm) {
            return Err(match w {
                Witness::CommutatorZeroDivisor { .. } => RecognitionError::DegenerateCertificate { witness: w },
                _ => RecognitionError::DegenerateSquare { witness: w },
            });
        }
    }
    let w = &v + &vx;
    let w2 = alg.square(&w);
    if let Some(basis_index) = alg.noncommuting_basis_index(&w2) {
        let witness = Witness::CommutatorSquareNotCentral { x: x.clone(), y: &y + &yx, commutator: w, square: w2, basis_index };
        return Err(RecognitionError::DegenerateSquare { witness });
    }
    Ok(cert)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub x: Element,
    pub c0: Element,
    pub c1: Element,
    pub c2: Element,
    pub c3: Element,
    pub d_i: Element,
    pub d_j: Element,
    pub d_k: Element,
    pub m: Element,
    pub certificate: Option<QuadraticCertificate>,
    /// `k·m = 0` when `m ≠ 0`.
    pub residual_witness: Option<Witness>,
}

impl Decomposition {
    pub fn coefficients(&self) -> [&Element; 4] {
        [&self.c0, &self.c1, &self.c2, &self.c3]
    }

    pub fn reconstruct(&self, alg: &Algebra, qs: &QuaternionStructure) -> Element {
        let units = qs.units(alg);
        let sum = self.coefficients().iter().zip(&units).fold(alg.zero(), |acc, (c, u)| &acc + &alg.mul(c, u));
        &sum + &self.m
    }

    /// Coordinates of each `c_u` in the center basis; with a one-dimensional
    /// center these are the scalar coordinates over `{1, i, j, k}`.
    pub fn center_coordinates(&self, alg: &Algebra, center: &CenterBasis) -> Vec<Vec<Scalar>> {
        let alg = alg.lift_to_field();
        self.coefficients()
            .iter()
            .map(|c| center.coordinates(&alg, c).expect("coefficients lie in the center"))
            .collect()
    }
}

fn require_decomposable(alg: &Algebra, center: &CenterBasis) -> RecResult<()> {
    if alg.characteristic() == 2 {
        return Err(RecognitionError::CharacteristicTwo { witness: Witness::CharacteristicTwo { unit: alg.unit().clone() } });
    }
    if center.is_field != FieldStatus::Yes {
        return Err(RecognitionError::CenterNotField { witness: center.field_witness.clone() });
    }
    Ok(())
}

fn central_inverse(alg: &Algebra, center: &CenterBasis, c: &Element) -> RecResult<Element> {
    center.inverse(alg, c).ok_or(RecognitionError::CenterNotField { witness: None })
}

/// Write `x = c₀ + c₁i + c₂j + c₃k + m` with central `c_u`.
pub fn decompose(alg: &Algebra, qs: &QuaternionStructure, x: &Element) -> RecResult<Decomposition> {
    let center = &qs.center;
    require_decomposable(alg, center)?;
    let alg = alg.lift_to_field();
    alg.check(x)?;
    let zero = alg.zero();
    if alg.is_central(x) {
        return Ok(Decomposition {
            x: x.clone(),
            c0: x.clone(),
            c1: zero.clone(),
            c2: zero.clone(),
            c3: zero.clone(),
            d_i: zero.clone(),
            d_j: zero.clone(),
            d_k: zero.clone(),
            m: zero,
            certificate: None,
            residual_witness: None,
        });
    }
    let cert = quadratic_certificate(&alg, x)?;
    let two = alg.scalar_i64(2);
    // a x² + b x + c = 0 with a invertible: x² + (b/a) x + c/a = 0, so
    // p = x + b/(2a) satisfies p² ∈ C.
    let inv_2a = central_inverse(&alg, center, &alg.mul(&two, &cert.a))?;
    let c0 = -&alg.mul(&cert.b, &inv_2a);
    let p = x - &c0;

    let units = [&qs.i, &qs.j, &qs.k];
    let mut ds = Vec::with_capacity(3);
    let mut cs = Vec::with_capacity(3);
    for u in units {
        let d = &alg.mul(&p, u) + &alg.mul(u, &p);
        if let Some(idx) = alg.noncommuting_basis_index(&d) {
            return Err(RecognitionError::NonCentralAnticommutator { witness: Witness::NotCentral { element: d, basis_index: idx } });
        }
        let inv = central_inverse(&alg, center, &alg.mul(&two, &alg.square(u)))?;
        cs.push(alg.mul(&d, &inv));
        ds.push(d);
    }
    let m = units.iter().zip(&cs).fold(p, |acc, (u, c)| &acc - &alg.mul(c, u));
    let residual_witness = (!m.is_zero()).then(|| {
        // m anticommutes with i, j, k, so mk = −imj = ijm = km and 2km = 0.
        debug_assert!(units.iter().all(|u| (&alg.mul(&m, u) + &alg.mul(u, &m)).is_zero()));
        Witness::ZeroDivisor { element: qs.k.clone(), annihilator: m.clone(), side: Side::Both }
    });
    let mut cs = cs.into_iter();
    let mut ds = ds.into_iter();
    Ok(Decomposition {
        x: x.clone(),
        c0,
        c1: cs.next().expect("three"),
        c2: cs.next().expect("three"),
        c3: cs.next().expect("three"),
        d_i: ds.next().expect("three"),
        d_j: ds.next().expect("three"),
        d_k: ds.next().expect("three"),
        m,
        certificate: Some(cert),
        residual_witness,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompletenessReport {
    pub complete: bool,
    pub dim: usize,
    pub center_rank: usize,
    /// Rank of `{z·u : z in the center basis, u ∈ {1, i, j, k}}`.
    pub spanning_rank: usize,
    pub first_incomplete: Option<usize>,
    pub witness: Option<Witness>,
    pub decompositions: Vec<Decomposition>,
}

/// Decompose every basis vector; the algebra equals `C + Ci + Cj + Ck`
/// iff every residual vanishes.
pub fn completeness_check(alg: &Algebra, qs: &QuaternionStructure) -> RecResult<CompletenessReport> {
    require_decomposable(alg, &qs.center)?;
    let lifted = alg.lift_to_field();
    let results: Vec<RecResult<Decomposition>> =
        lifted.basis_elements().par_iter().map(|e| decompose(&lifted, qs, e)).collect();
    let decompositions = results.into_iter().collect::<RecResult<Vec<_>>>()?;
    let first_incomplete = decompositions.iter().position(|d| !d.m.is_zero());
    let witness = first_incomplete.and_then(|i| decompositions[i].residual_witness.clone());
    let spanning_rank = spanning_matrix(&lifted, &qs.center, &qs.units(&lifted)).rank();
    Ok(CompletenessReport {
        complete: first_incomplete.is_none(),
        dim: alg.dim(),
        center_rank: qs.center.dim(),
        spanning_rank,
        first_incomplete,
        witness,
        decompositions,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Stage {
    Validation,
    Commutativity,
    Localization,
    Center,
    H2,
    CharacteristicTwo,
    CenterField,
    Structure,
    Completeness,
    Division,
    H1,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StageResult {
    Passed,
    Failed,
    Inconclusive,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StageRecord {
    pub stage: Stage,
    pub result: StageResult,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Status {
    Quaternion,
    Refused { stage: Stage, reason: String, witnesses: Vec<Witness> },
    Inconclusive { stage: Stage, reason: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StructureSource {
    PresentationBasis,
    CommutatorScan,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RecognitionConfig {
    pub sampling: SamplingConfig,
    /// Largest number of 2-dimensional subspaces an exhaustive check over
    /// 𝔽ₚ may visit before falling back to sampling.
    pub exhaustive_limit: u64,
}

impl Default for RecognitionConfig {
    fn default() -> Self {
        RecognitionConfig { sampling: SamplingConfig::default(), exhaustive_limit: 200_000 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RecognitionOutcome {
    #[serde(flatten)]
    pub status: Status,
    pub stages: Vec<StageRecord>,
    pub localized: bool,
    pub validation: ValidationReport,
    pub center: Option<CenterBasis>,
    pub h2: Option<H2Verdict>,
    pub h1: Option<H1Verdict>,
    /// The structure built by the commutator scan.
    pub structure: Option<QuaternionStructure>,
    /// The structure used for decompositions and the norm form.
    pub working_structure: Option<StructureSource>,
    pub completeness: Option<CompletenessReport>,
    pub division: Option<DivisionVerdict>,
}

impl RecognitionOutcome {
    fn new(validation: ValidationReport) -> Self {
        RecognitionOutcome {
            status: Status::Inconclusive { stage: Stage::Validation, reason: "not run".into() },
            stages: Vec::new(),
            localized: false,
            validation,
            center: None,
            h2: None,
            h1: None,
            structure: None,
            working_structure: None,
            completeness: None,
            division: None,
        }
    }

    fn record(&mut self, stage: Stage, result: StageResult, detail: impl Into<String>) {
        self.stages.push(StageRecord { stage, result, detail: detail.into() });
    }

    fn refuse(mut self, stage: Stage, reason: impl Into<String>, mut witnesses: Vec<Witness>) -> Self {
        let reason = reason.into();
        let mut seen = Vec::with_capacity(witnesses.len());
        witnesses.retain(|w| {
            let fresh = !seen.contains(w);
            if fresh {
                seen.push(w.clone());
            }
            fresh
        });
        self.record(stage, StageResult::Failed, reason.clone());
        self.status = Status::Refused { stage, reason, witnesses };
        self
    }

    fn inconclusive(mut self, stage: Stage, reason: impl Into<String>) -> Self {
        let reason = reason.into();
        self.record(stage, StageResult::Inconclusive, reason.clone());
        self.status = Status::Inconclusive { stage, reason };
        self
    }

    pub fn is_quaternion(&self) -> bool {
        self.status == Status::Quaternion
    }

    /// Recognized, with a division certificate.
    pub fn division_certified(&self) -> bool {
        self.is_quaternion() && self.division.as_ref().is_some_and(|d| d.status == DivisionStatus::Division)
    }

    pub fn witnesses(&self) -> &[Witness] {
        match &self.status {
            Status::Refused { witnesses, .. } => witnesses,
            _ => &[],
        }
    }

    pub fn hypotheses(&self) -> Option<HypothesisReport> {
        Some(HypothesisReport { h1: self.h1.clone()?, h2: self.h2.clone()? })
    }

    /// The structure decompositions refer to.
    pub fn working(&self, alg: &Algebra) -> Option<QuaternionStructure> {
        let scanned = self.structure.as_ref()?;
        match self.working_structure? {
            StructureSource::CommutatorScan => Some(scanned.clone()),
            StructureSource::PresentationBasis => QuaternionStructure::from_presentation_basis(alg, &scanned.center),
        }
    }
}

/// Number of 2-dimensional subspaces of `𝔽ₚⁿ`, saturating.
pub fn subspace_count(p: u64, n: usize) -> u64 {
    let p = p as u128;
    let Some(pn) = p.checked_pow(n as u32) else { return u64::MAX };
    let num = (pn - 1).checked_mul(pn - p);
    let den = (p * p - 1) * (p * p - p);
    num.map_or(u64::MAX, |v| u64::try_from(v / den).unwrap_or(u64::MAX))
}

fn exhaustive_allowed(alg: &Algebra, cfg: &RecognitionConfig) -> bool {
    matches!(alg.base(), BaseRing::Prime(p) if subspace_count(p, alg.dim()) <= cfg.exhaustive_limit)
}

/// Symbolic over ℚ and ℤ, exhaustive over small prime fields, sampled otherwise.
pub fn h2_mode(alg: &Algebra, cfg: &RecognitionConfig) -> H2Mode {
    match alg.base() {
        BaseRing::Prime(_) if exhaustive_allowed(alg, cfg) => H2Mode::Exhaustive,
        BaseRing::Prime(_) => H2Mode::Randomized(cfg.sampling),
        _ => H2Mode::Symbolic,
    }
}

/// Exhaustive over small prime fields, sampled otherwise.
pub fn h1_partial_mode(alg: &Algebra, cfg: &RecognitionConfig) -> H1Mode<'static> {
    if exhaustive_allowed(alg, cfg) {
        H1Mode::Exhaustive
    } else {
        H1Mode::Randomized(cfg.sampling)
    }
}

pub fn recognize(alg: &Algebra) -> RecognitionOutcome {
    recognize_with(alg, &RecognitionConfig::default())
}

fn h1_detail(v: &H1Verdict) -> &'static str {
    match v {
        H1Verdict::Fails { .. } => "a commutator is a zero divisor",
        H1Verdict::HoldsExhaustive { .. } => "holds on every subspace",
        H1Verdict::HoldsImpliedByDivision => "implied by the division certificate",
        H1Verdict::NoViolationSampled { .. } => "no violation among sampled pairs",
    }
}

pub fn recognize_with(alg: &Algebra, cfg: &RecognitionConfig) -> RecognitionOutcome {
    let validation = alg.validate();
    let mut out = RecognitionOutcome::new(validation.clone());

    if let Some((s, t, u)) = validation.associativity_failure {
        return out.refuse(Stage::Validation, "not associative", vec![Witness::NonAssociative { s, t, u }]);
    }
    if let Some(index) = validation.unit_failure {
        return out.refuse(Stage::Validation, "declared unit is not a unit", vec![Witness::NotUnital { index }]);
    }
    out.record(Stage::Validation, StageResult::Passed, "associative and unital on all basis vectors");
    if validation.commutative() {
        return out.refuse(Stage::Commutativity, "the algebra is commutative", vec![Witness::Commutative]);
    }
    out.record(Stage::Commutativity, StageResult::Passed, "a pair of basis vectors does not commute");

    let original = alg;
    let alg = &alg.lift_to_field();
    if original.base() == BaseRing::Integer {
        out.localized = true;
        out.record(Stage::Localization, StageResult::Passed, "integer presentation lifted to its rational fractions");
    } else {
        out.record(Stage::Localization, StageResult::Skipped, "base ring is already a field");
    }

    let center = center_basis(alg);
    out.record(Stage::Center, StageResult::Passed, format!("dimension {}", center.dim()));
    out.center = Some(center.clone());

    let h2 = match check_h2(alg, h2_mode(alg, cfg)) {
        Ok(v) => v,
        Err(e) => return out.inconclusive(Stage::H2, e.to_string()),
    };
    out.h2 = Some(h2.clone());
    let run_h1 = |out: &mut RecognitionOutcome| -> Option<Witness> {
        let v = check_h1(alg, h1_partial_mode(alg, cfg)).ok()?;
        let detail = h1_detail(&v);
        let w = v.witness().cloned();
        out.record(Stage::H1, if w.is_some() { StageResult::Failed } else { StageResult::Inconclusive }, detail);
        out.h1 = Some(v);
        w
    };

    if alg.characteristic() == 2 {
        out.record(Stage::H2, if h2.fails() { StageResult::Failed } else { StageResult::Passed }, "checked in characteristic 2");
        let mut witnesses = vec![Witness::CharacteristicTwo { unit: alg.unit().clone() }];
        witnesses.extend(h2.witness().cloned());
        witnesses.extend(run_h1(&mut out));
        return out.refuse(Stage::CharacteristicTwo, "characteristic 2: the quadratic normalization divides by 2", witnesses);
    }

    if let Some(w) = h2.witness() {
        let w = w.clone();
        run_h1(&mut out);
        return out.refuse(Stage::H2, "a commutator square is not central", vec![w]);
    }
    let conclusive = h2.holds_conclusively();
    out.record(
        Stage::H2,
        if conclusive { StageResult::Passed } else { StageResult::Inconclusive },
        if conclusive { "commutator squares are central" } else { "no violation among sampled pairs" },
    );

    match center.is_field {
        FieldStatus::Yes => out.record(Stage::CenterField, StageResult::Passed, center.note.clone()),
        FieldStatus::No => {
            let w = center.field_witness.clone().into_iter().collect();
            run_h1(&mut out);
            return out.refuse(Stage::CenterField, center.note.clone(), w);
        }
        FieldStatus::Unknown => return out.inconclusive(Stage::CenterField, center.note.clone()),
    }

    let scanned = match build_quaternion_structure(alg, &center) {
        Ok(qs) => qs,
        Err(e) => {
            let mut witnesses: Vec<Witness> = Vec::new();
            let h1w = run_h1(&mut out);
            let stage = if h1w.is_some() || e.is_hypothesis_violation() { Stage::H1 } else { Stage::Structure };
            let reason = if h1w.is_some() { "a commutator is a zero divisor".to_string() } else { e.to_string() };
            witnesses.extend(h1w);
            witnesses.extend(e.witness().cloned());
            if e.is_hypothesis_violation() && out.h1.as_ref().is_some_and(|v| !v.fails()) {
                let w = e.witness().cloned().expect("violation carries a witness");
                if matches!(w, Witness::CommutatorZeroDivisor { .. }) {
                    out.h1 = Some(H1Verdict::Fails { witness: w });
                }
            }
            out.record(Stage::Structure, StageResult::Failed, e.to_string());
            if stage == Stage::Structure {
                out.stages.pop();
            }
            return out.refuse(stage, reason, witnesses);
        }
    };
    out.record(Stage::Structure, StageResult::Passed, "i, j, k built from commutators");
    out.structure = Some(scanned.clone());

    let (qs, source) = match QuaternionStructure::from_presentation_basis(alg, &center) {
        Some(p) => (p, StructureSource::PresentationBasis),
        None => (scanned, StructureSource::CommutatorScan),
    };
    out.working_structure = Some(source);

    let report = match completeness_check(alg, &qs) {
        Ok(r) => r,
        Err(e) => {
            let w: Vec<Witness> = e.witness().cloned().into_iter().collect();
            run_h1(&mut out);
            return match e {
                RecognitionError::CenterNotField { witness: None } => out.inconclusive(Stage::Completeness, e.to_string()),
                _ => out.refuse(Stage::Completeness, e.to_string(), w),
            };
        }
    };
    let complete = report.complete;
    let detail = format!("center rank {} × 4 vs dimension {}", report.center_rank, report.dim);
    let residual = report.witness.clone();
    out.completeness = Some(report);
    if !complete {
        run_h1(&mut out);
        return out.refuse(Stage::Completeness, format!("a basis vector has a non-zero residual ({detail})"), residual.into_iter().collect());
    }
    out.record(Stage::Completeness, StageResult::Passed, detail);

    let (verdict, split_witnesses) = division_verdict(alg, &qs);
    out.division = Some(verdict.clone());
    match verdict.status {
        DivisionStatus::Division => {
            out.record(Stage::Division, StageResult::Passed, verdict.note.clone());
            out.status = Status::Quaternion;
            let h1 = check_h1(alg, H1Mode::Implied(&out)).expect("division certified");
            out.record(Stage::H1, StageResult::Passed, h1_detail(&h1));
            out.h1 = Some(h1);
            out
        }
        DivisionStatus::Split => {
            if let Some(w @ Witness::CommutatorZeroDivisor { .. }) = split_witnesses.last() {
                out.h1 = Some(H1Verdict::Fails { witness: w.clone() });
                out.record(Stage::H1, StageResult::Failed, "a pure quaternion of square zero is a commutator");
            } else {
                run_h1(&mut out);
            }
            out.refuse(Stage::Division, format!("split: {}", verdict.note), split_witnesses)
        }
        DivisionStatus::Unknown => {
            run_h1(&mut out);
            out.inconclusive(Stage::Division, verdict.note)
        }
    }
}

fn rational_scalar(alg: &Algebra, center: &CenterBasis, c: &Element) -> Option<Scalar> {
    if center.dim() != 1 {
        return None;
    }
    center.coordinates(alg, c).map(|v| v[0].clone())
}

fn big(v: &BigInt) -> Scalar {
    Scalar::rational(BigRational::from_integer(v.clone()))
}

/// For a pure `p` with `p² = 0`, a pure `u` with `up = −pu` and `u² ≠ 0`,
/// and `z = u p (2u²)⁻¹`, so that `(u, z) = p`.
fn pure_commutator_witness(alg: &Algebra, qs: &QuaternionStructure, pure: [Scalar; 3]) -> Option<Witness> {
    let units = [&qs.i, &qs.j, &qs.k];
    let p = units.iter().zip(&pure).fold(alg.zero(), |acc, (u, c)| &acc + &u.scale(c));
    if p.is_zero() || !alg.square(&p).is_zero() {
        return None;
    }
    let candidates: Vec<Element> = {
        let mut basis: Vec<Element> = Vec::new();
        for (s, t) in [(0, 1), (0, 2), (1, 2)] {
            // solve the anticommutation constraint within span{u_s, u_t}
            let (us, ut) = (units[s], units[t]);
            let fs = &alg.mul(us, &p) + &alg.mul(&p, us);
            let ft = &alg.mul(ut, &p) + &alg.mul(&p, ut);
            let (Some(cs), Some(ct)) = (rational_scalar(alg, &qs.center, &fs), rational_scalar(alg, &qs.center, &ft)) else {
                continue;
            };
            let cand = &us.scale(&ct) - &ut.scale(&cs);
            if !cand.is_zero() {
                basis.push(cand);
            }
        }
        let mut all = basis.clone();
        for a in 0..basis.len() {
            for b in a + 1..basis.len() {
                all.push(&basis[a] + &basis[b]);
            }
        }
        all
    };
    let two = alg.scalar_i64(2);
    for u in candidates {
        let anti = &alg.mul(&u, &p) + &alg.mul(&p, &u);
        let u2 = alg.square(&u);
        if !anti.is_zero() || u2.is_zero() || !alg.is_central(&u2) {
            continue;
        }
        let inv = qs.center.inverse(alg, &alg.mul(&two, &u2))?;
        let z = alg.mul(&alg.mul(&u, &p), &inv);
        let commutator = alg.comm(&u, &z);
        if commutator == p {
            return Some(Witness::CommutatorZeroDivisor { x: u, y: z, commutator, annihilator: p.clone(), side: Side::Both });
        }
    }
    None
}

/// Norm-form certificate for the working structure. Split verdicts come
/// with `q·q̄ = 0` and, when found, a pure commutator of square zero.
fn division_verdict(alg: &Algebra, qs: &QuaternionStructure) -> (DivisionVerdict, Vec<Witness>) {
    let center = &qs.center;
    let (Some(a), Some(b)) = (rational_scalar(alg, center, &qs.a), rational_scalar(alg, center, &qs.b)) else {
        return (DivisionVerdict::unknown("division certification needs a one-dimensional center"), Vec::new());
    };
    match (a, b) {
        (Scalar::Rat(a), Scalar::Rat(b)) => {
            let verdict = is_division(&a, &b);
            let mut witnesses = Vec::new();
            if let Some(v) = &verdict.isotropic {
                let q = qs.units(alg).iter().zip(v).fold(alg.zero(), |acc, (u, c)| &acc + &u.scale(&big(c)));
                let conj = qs.units(alg).iter().zip(v).enumerate().fold(alg.zero(), |acc, (n, (u, c))| {
                    let c = if n == 0 { big(c) } else { -&big(c) };
                    &acc + &u.scale(&c)
                });
                witnesses.push(Witness::ZeroDivisor { element: q, annihilator: conj, side: Side::Both });
                let pure = [10u64, 100].iter().find_map(|&h| pure_isotropy_search(&a, &b, h));
                if let Some(w) = pure.and_then(|p| pure_commutator_witness(alg, qs, p.each_ref().map(big))) {
                    witnesses.push(w);
                }
            }
            (verdict, witnesses)
        }
        (Scalar::Mod { value: a, modulus: p }, Scalar::Mod { value: b, .. }) => {
            let Some(v) = pure_isotropy_mod_p(a, b, p) else {
                return (DivisionVerdict::unknown("no isotropic vector found over the finite field"), Vec::new());
            };
            let pure = v.map(|c| Scalar::residue(c, p));
            let elem = [&qs.i, &qs.j, &qs.k].iter().zip(&pure).fold(alg.zero(), |acc, (u, c)| &acc + &u.scale(c));
            let mut witnesses = vec![Witness::ZeroDivisor { element: elem.clone(), annihilator: elem, side: Side::Both }];
            witnesses.extend(pure_commutator_witness(alg, qs, pure));
            let verdict = DivisionVerdict {
                status: DivisionStatus::Split,
                evidence: Vec::new(),
                isotropic: Some([BigInt::from(0), BigInt::from(v[0]), BigInt::from(v[1]), BigInt::from(v[2])]),
                note: "finite division rings are commutative; a pure quaternion of square zero exists".into(),
            };
            (verdict, witnesses)
        }
        _ => (DivisionVerdict::unknown("mixed scalar types"), Vec::new()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins;

    fn q(n: i64) -> Scalar {
        Scalar::from_i64(BaseRing::Rational, n)
    }

    #[test]
    fn hamilton_scan_structure() {
        let h = builtins::hamilton();
        let c = center_basis(&h);
        let nc = find_noncentral_commutator(&h, &c).unwrap();
        assert_eq!((nc.x.clone(), nc.y.clone()), (h.basis(1), h.basis(2)));
        assert_eq!(nc.commutator, h.element_i64(&[0, 0, 0, 2]));
        let qs = build_quaternion_structure(&h, &c).unwrap();
        assert_eq!(qs.i, h.element_i64(&[0, 0, 0, 2]));
        assert_eq!(qs.provenance.s, Some(h.basis(1)));
        assert_eq!(qs.j, h.element_i64(&[0, 0, 4, 0]));
        assert_eq!(qs.a, h.scalar_i64(-4));
        assert_eq!(qs.b, h.scalar_i64(-16));
    }

    #[test]
    fn fallback_in_characteristic_two() {
        let m = builtins::matrix(2, BaseRing::Prime(2)).unwrap();
        let (e12, e21) = (m.basis(1), m.basis(2));
        let nc = commutator_or_fallback(&m, &e12, &e21).unwrap();
        assert_eq!(nc.v, m.unit().clone());
        assert!(nc.via_fallback);
        assert_eq!(nc.commutator, e12);
        let (x, y) = nc.pair(&m);
        assert_eq!(m.comm(&x, &y), e12);
    }

    #[test]
    fn commutative_input_has_no_commutator() {
        let d = builtins::diagonal(3, BaseRing::Rational).unwrap();
        let c = center_basis(&d);
        assert!(matches!(find_noncentral_commutator(&d, &c), Err(RecognitionError::NoCommutatorFound { .. })));
    }

    #[test]
    fn quadratic_certificate_examples() {
        let h = builtins::hamilton();
        for (x, abc) in [([0, 1, 1, 0], [-4, 0, -8]), ([1, 1, 0, 0], [-4, 8, -8]), ([0, 1, 0, 0], [-4, 0, -4])] {
            let cert = quadratic_certificate(&h, &h.element_i64(&x)).unwrap();
            assert_eq!([cert.a.clone(), cert.b.clone(), cert.c.clone()], abc.map(|n| h.scalar_i64(n)), "x = {x:?}");
            assert!(cert.holds(&h));
        }
        assert!(matches!(quadratic_certificate(&h, &h.scalar_i64(3)), Err(RecognitionError::CentralInput { .. })));
    }

    #[test]
    fn decompose_hamilton() {
        let h = builtins::hamilton();
        let c = center_basis(&h);
        let qs = QuaternionStructure::from_presentation_basis(&h, &c).unwrap();
        let d = decompose(&h, &qs, &h.element_i64(&[1, 2, 3, 4])).unwrap();
        let coords: Vec<Scalar> = d.center_coordinates(&h, &c).into_iter().map(|v| v[0].clone()).collect();
        assert_eq!(coords, vec![q(1), q(2), q(3), q(4)]);
        assert!(d.m.is_zero());
        assert_eq!(d.d_i, h.scalar_i64(-4));
        let d = decompose(&h, &qs, &h.scalar_i64(5)).unwrap();
        assert_eq!(d.c0, h.scalar_i64(5));
        assert!(d.certificate.is_none());
    }

    #[test]
    fn completeness_counts() {
        let h = builtins::hamilton();
        let c = center_basis(&h);
        let qs = build_quaternion_structure(&h, &c).unwrap();
        let r = completeness_check(&h, &qs).unwrap();
        assert!(r.complete);
        assert_eq!((r.center_rank, r.spanning_rank, r.dim), (1, 4, 4));

        let t = builtins::quadratic_extension_tensor(&h, &q(2)).unwrap();
        let c = center_basis(&t);
        let qs = build_quaternion_structure(&t, &c).unwrap();
        let r = completeness_check(&t, &qs).unwrap();
        assert!(r.complete);
        assert_eq!((r.center_rank, r.spanning_rank, r.dim), (2, 8, 8));
    }

    #[test]
    fn recognize_examples() {
        let h = recognize(&builtins::hamilton());
        assert!(h.division_certified(), "{:?}", h.status);

        let m = builtins::matrix(2, BaseRing::Rational).unwrap();
        let o = recognize(&m);
        match &o.status {
            Status::Refused { stage: Stage::H1, witnesses, .. } => assert!(witnesses.iter().all(|w| w.verify(&m))),
            other => panic!("{other:?}"),
        }
        assert!(o.h2.as_ref().unwrap().holds_conclusively());

        let q11 = builtins::quaternion(&q(1), &q(1), BaseRing::Rational).unwrap();
        let o = recognize(&q11);
        match &o.status {
            Status::Refused { stage: Stage::Division, witnesses, .. } => {
                assert!(witnesses.iter().all(|w| w.verify(&q11)));
                assert_eq!(
                    witnesses[0],
                    Witness::ZeroDivisor {
                        element: q11.element_i64(&[1, 1, 0, 0]),
                        annihilator: q11.element_i64(&[1, -1, 0, 0]),
                        side: Side::Both
                    }
                );
                assert!(witnesses.iter().any(|w| matches!(w, Witness::CommutatorZeroDivisor { .. })));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn characteristic_two_refusal() {
        let m = builtins::matrix(2, BaseRing::Prime(2)).unwrap();
        let o = recognize(&m);
        match &o.status {
            Status::Refused { stage: Stage::CharacteristicTwo, witnesses, .. } => {
                assert!(witnesses.iter().all(|w| w.verify(&m)));
            }
            other => panic!("{other:?}"),
        }
        assert!(o.h1.is_some() && o.h2.is_some());
    }

    #[test]
    fn finite_quaternion_is_split() {
        let f3 = BaseRing::Prime(3);
        let minus1 = Scalar::from_i64(f3, -1);
        let alg = builtins::quaternion(&minus1, &minus1, f3).unwrap();
        let o = recognize(&alg);
        match &o.status {
            Status::Refused { witnesses, .. } => {
                assert!(!witnesses.is_empty());
                assert!(witnesses.iter().all(|w| w.verify(&alg)));
            }
            other => panic!("{other:?}"),
        }
    }
}

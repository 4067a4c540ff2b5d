//! Sparse multivariate polynomials and the generic expansion of
//! `((x, y)², e_u)` used to decide the commutator-square hypothesis.

use std::collections::BTreeMap;

use crate::algebra::{Algebra, Element};
use crate::scalar::{BaseRing, Scalar};

/// Exponent vector → coefficient, zero coefficients never stored. Terms
/// are kept in the lexicographic order of their exponent vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    base: BaseRing,
    nvars: usize,
    terms: BTreeMap<Vec<u8>, Scalar>,
}

impl MultiPoly {
    pub fn zero(base: BaseRing, nvars: usize) -> Self {
        MultiPoly { base: base.field(), nvars, terms: BTreeMap::new() }
    }

    pub fn constant(base: BaseRing, nvars: usize, c: Scalar) -> Self {
        let mut p = Self::zero(base, nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn var(base: BaseRing, nvars: usize, index: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[index] = 1;
        let mut p = Self::zero(base, nvars);
        p.add_term(exps, base.field().one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u8], &Scalar)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> usize {
        self.terms.keys().map(|e| e.iter().map(|&d| d as usize).sum()).max().unwrap_or(0)
    }

    fn add_term(&mut self, exps: Vec<u8>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    /// `self += factor · other`
    pub fn add_scaled(&mut self, other: &MultiPoly, factor: &Scalar) {
        if factor.is_zero() {
            return;
        }
        for (e, c) in &other.terms {
            self.add_term(e.clone(), c * factor);
        }
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero(self.base, self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u8> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        assert_eq!(point.len(), self.nvars, "point dimension");
        let mut acc = self.base.zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &d) in point.iter().zip(e) {
                if d > 0 {
                    t = &t * &x.pow(d as u32);
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Substitute `value` for variable `index`.
    pub fn substitute(&self, index: usize, value: &Scalar) -> MultiPoly {
        let mut out = MultiPoly::zero(self.base, self.nvars);
        for (e, c) in &self.terms {
            let d = e[index];
            let mut e2 = e.clone();
            e2[index] = 0;
            out.add_term(e2, c * &value.pow(d as u32));
        }
        out
    }
}

/// One coordinate of `((x, y)², e_u)` for generic `x`, `y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct H2Polynomial {
    pub basis_index: usize,
    pub coordinate: usize,
    pub poly: MultiPoly,
}

/// Expand the coordinates of `((x, y)², e_u)` for every basis index `u`,
/// with `x = Σ x_s e_s` and `y = Σ y_t e_t`. Variables `0..n` are the
/// `x_s`, variables `n..2n` the `y_t`. All polynomials vanish identically
/// exactly when squares of commutators are central for every `x`, `y`
/// over an infinite field.
pub fn h2_polynomials(alg: &Algebra) -> Vec<H2Polynomial> {
    let alg = alg.lift_to_field();
    let n = alg.dim();
    let nv = 2 * n;
    let base = alg.base();

    // v_w = Σ_{s<t} (x_s y_t − x_t y_s) (e_s e_t − e_t e_s)_w
    let mut v: Vec<MultiPoly> = vec![MultiPoly::zero(base, nv); n];
    for s in 0..n {
        for t in 0..n {
            if s == t {
                continue;
            }
            let comm = alg.basis_product(s, t) - alg.basis_product(t, s);
            if comm.is_zero() {
                continue;
            }
            let mono = MultiPoly::var(base, nv, s).mul(&MultiPoly::var(base, nv, n + t));
            for (w, c) in comm.coords().iter().enumerate() {
                v[w].add_scaled(&mono, c);
            }
        }
    }

    // (v²)_w = Σ_{a,b} v_a v_b (e_a e_b)_w, pairing (a, b) with (b, a).
    let mut sq: Vec<MultiPoly> = vec![MultiPoly::zero(base, nv); n];
    for a in 0..n {
        if v[a].is_zero() {
            continue;
        }
        for b in a..n {
            if v[b].is_zero() {
                continue;
            }
            let sym = if a == b {
                alg.basis_product(a, a).clone()
            } else {
                alg.basis_product(a, b) + alg.basis_product(b, a)
            };
            if sym.is_zero() {
                continue;
            }
            let prod = v[a].mul(&v[b]);
            for (w, c) in sym.coords().iter().enumerate() {
                sq[w].add_scaled(&prod, c);
            }
        }
    }

    // ((v², e_u))_w = Σ_a (v²)_a (e_a e_u − e_u e_a)_w
    let mut out = Vec::with_capacity(n * n);
    for u in 0..n {
        let mut polys: Vec<MultiPoly> = vec![MultiPoly::zero(base, nv); n];
        for (a, sq_a) in sq.iter().enumerate() {
            if sq_a.is_zero() {
                continue;
            }
            let comm = alg.basis_product(a, u) - alg.basis_product(u, a);
            for (w, c) in comm.coords().iter().enumerate() {
                polys[w].add_scaled(sq_a, c);
            }
        }
        out.extend(polys.into_iter().enumerate().map(|(w, poly)| H2Polynomial { basis_index: u, coordinate: w, poly }));
    }
    out
}

/// Split a point of `2n` values into the elements `x` and `y`.
pub fn point_to_pair(point: &[Scalar]) -> (Element, Element) {
    let n = point.len() / 2;
    (Element::new(point[..n].to_vec()), Element::new(point[n..].to_vec()))
}

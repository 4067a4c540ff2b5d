//! Finite-rank unital associative algebras given by structure constants.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::ExactMatrix;
use crate::scalar::{BaseRing, Scalar};

/// Coordinates of an algebra member in the presentation basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Element(Vec<Scalar>);

impl Element {
    pub fn new(coords: Vec<Scalar>) -> Self {
        Element(coords)
    }

    pub fn zero(base: BaseRing, dim: usize) -> Self {
        Element(vec![base.field().zero(); dim])
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Scalar> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Scalar::is_zero)
    }

    pub fn scale(&self, s: &Scalar) -> Element {
        Element(self.0.iter().map(|c| c * s).collect())
    }

    /// Comma-separated coordinate syntax, e.g. `1,-2,3/4,0`.
    pub fn to_coord_string(&self) -> String {
        self.0.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
    }
}

impl Serialize for Element {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.0.iter().map(ToString::to_string))
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_coord_string())
    }
}

impl<'a> Add<&'a Element> for &'a Element {
    type Output = Element;
    fn add(self, rhs: &'a Element) -> Element {
        assert_eq!(self.len(), rhs.len(), "element length mismatch");
        Element(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl<'a> Sub<&'a Element> for &'a Element {
    type Output = Element;
    fn sub(self, rhs: &'a Element) -> Element {
        assert_eq!(self.len(), rhs.len(), "element length mismatch");
        Element(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element(self.0.iter().map(|a| -a).collect())
    }
}

impl Add for Element {
    type Output = Element;
    fn add(self, rhs: Element) -> Element {
        &self + &rhs
    }
}

impl Sub for Element {
    type Output = Element;
    fn sub(self, rhs: Element) -> Element {
        &self - &rhs
    }
}

impl Neg for Element {
    type Output = Element;
    fn neg(self) -> Element {
        -&self
    }
}

/// Outcome of [`Algebra::validate`]. Each `Option` holds the first failing
/// basis indices in lexicographic order, or `None` when the law holds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub associativity_failure: Option<(usize, usize, usize)>,
    pub unit_failure: Option<usize>,
    pub noncommuting_pair: Option<(usize, usize)>,
}

impl ValidationReport {
    pub fn associative(&self) -> bool {
        self.associativity_failure.is_none()
    }

    pub fn unital(&self) -> bool {
        self.unit_failure.is_none()
    }

    pub fn commutative(&self) -> bool {
        self.noncommuting_pair.is_none()
    }

    pub fn is_valid(&self) -> bool {
        self.associative() && self.unital()
    }
}

/// A structure-constant presentation: `table[s * dim + t]` holds the
/// coordinates of `e_s · e_t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    base: BaseRing,
    dim: usize,
    unit: Element,
    table: Vec<Element>,
    names: Vec<String>,
}

impl Algebra {
    /// Assemble a presentation, checking shapes and scalar bases. The
    /// algebra laws are not checked here; call [`Algebra::validate`].
    pub fn new(base: BaseRing, unit: Element, table: Vec<Element>, names: Option<Vec<String>>) -> Result<Self> {
        let dim = unit.len();
        if dim == 0 {
            return Err(Error::InvalidArgument("dimension must be at least 1".into()));
        }
        if table.len() != dim * dim {
            return Err(Error::DimensionMismatch { expected: dim * dim, got: table.len() });
        }
        let names = match names {
            Some(n) if n.len() != dim => return Err(Error::DimensionMismatch { expected: dim, got: n.len() }),
            Some(n) => n,
            None => (0..dim).map(|i| format!("e{i}")).collect(),
        };
        for entry in std::iter::once(&unit).chain(&table) {
            if entry.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: entry.len() });
            }
            if !entry.coords().iter().all(|s| s.belongs_to(base)) {
                return Err(Error::BaseMismatch(base));
            }
        }
        Ok(Algebra { base, dim, unit, table, names })
    }

    pub fn base(&self) -> BaseRing {
        self.base
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &Element {
        &self.unit
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn characteristic(&self) -> u64 {
        self.base.characteristic()
    }

    /// Coordinates of `e_s · e_t`.
    pub fn basis_product(&self, s: usize, t: usize) -> &Element {
        &self.table[s * self.dim + t]
    }

    pub fn table(&self) -> &[Element] {
        &self.table
    }

    /// Does `x` have the right length and scalars from this base ring?
    /// Integer presentations also accept rational coordinates, since every
    /// analysis runs over the lifted field.
    pub fn check(&self, x: &Element) -> Result<()> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: x.len() });
        }
        let field = self.base.field();
        if x.coords().iter().all(|s| s.belongs_to(field)) {
            Ok(())
        } else {
            Err(Error::BaseMismatch(self.base))
        }
    }

    pub fn zero(&self) -> Element {
        Element::zero(self.base, self.dim)
    }

    pub fn basis(&self, s: usize) -> Element {
        let mut c = vec![self.base.field().zero(); self.dim];
        c[s] = self.base.field().one();
        Element(c)
    }

    pub fn basis_elements(&self) -> Vec<Element> {
        (0..self.dim).map(|s| self.basis(s)).collect()
    }

    pub fn scalar(&self, s: &Scalar) -> Element {
        self.unit.scale(s)
    }

    pub fn scalar_i64(&self, n: i64) -> Element {
        self.scalar(&Scalar::from_i64(self.base, n))
    }

    pub fn element_i64(&self, coords: &[i64]) -> Element {
        assert_eq!(coords.len(), self.dim, "coordinate count");
        Element(coords.iter().map(|&c| Scalar::from_i64(self.base, c)).collect())
    }

    /// Parse comma-separated coordinates such as `1,2,3/4,-1`.
    pub fn parse_element(&self, text: &str) -> Result<Element> {
        let coords = text
            .split(',')
            .map(|t| Scalar::parse(t, self.base.field()))
            .collect::<Result<Vec<_>>>()?;
        let x = Element(coords);
        self.check(&x)?;
        Ok(x)
    }

    /// Checked product under bilinear extension of the table.
    pub fn multiply(&self, x: &Element, y: &Element) -> Result<Element> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.mul(x, y))
    }

    /// Checked commutator `xy - yx`.
    pub fn commutator(&self, x: &Element, y: &Element) -> Result<Element> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.comm(x, y))
    }

    /// Product without conformance checks.
    pub fn mul(&self, x: &Element, y: &Element) -> Element {
        debug_assert_eq!(x.len(), self.dim);
        debug_assert_eq!(y.len(), self.dim);
        let zero = self.base.field().zero();
        let mut out = vec![zero; self.dim];
        for (s, xs) in x.coords().iter().enumerate() {
            if xs.is_zero() {
                continue;
            }
            for (t, yt) in y.coords().iter().enumerate() {
                if yt.is_zero() {
                    continue;
                }
                let coeff = xs * yt;
                for (o, g) in out.iter_mut().zip(self.basis_product(s, t).coords()) {
                    if !g.is_zero() {
                        *o = &*o + &(&coeff * g);
                    }
                }
            }
        }
        Element(out)
    }

    pub fn comm(&self, x: &Element, y: &Element) -> Element {
        &self.mul(x, y) - &self.mul(y, x)
    }

    pub fn square(&self, x: &Element) -> Element {
        self.mul(x, x)
    }

    /// First basis index `u` with `x e_u != e_u x`, if any.
    pub fn noncommuting_basis_index(&self, x: &Element) -> Option<usize> {
        (0..self.dim).find(|&u| !self.comm(x, &self.basis(u)).is_zero())
    }

    pub fn is_central(&self, x: &Element) -> bool {
        self.noncommuting_basis_index(x).is_none()
    }

    /// Matrix of `r ↦ x·r` (column `t` holds `x e_t`).
    pub fn left_matrix(&self, x: &Element) -> ExactMatrix {
        let cols: Vec<Vec<Scalar>> = (0..self.dim).map(|t| self.mul(x, &self.basis(t)).into_coords()).collect();
        ExactMatrix::from_columns(self.base, self.dim, &cols).expect("conforming columns")
    }

    /// Matrix of `r ↦ r·x`.
    pub fn right_matrix(&self, x: &Element) -> ExactMatrix {
        let cols: Vec<Vec<Scalar>> = (0..self.dim).map(|t| self.mul(&self.basis(t), x).into_coords()).collect();
        ExactMatrix::from_columns(self.base, self.dim, &cols).expect("conforming columns")
    }

    /// Check associativity on all basis triples, unit laws on all basis
    /// vectors, and commutativity on all basis pairs. By bilinearity these
    /// finite checks decide the laws for the whole algebra.
    pub fn validate(&self) -> ValidationReport {
        let n = self.dim;
        let mut associativity_failure = None;
        'outer: for s in 0..n {
            for t in 0..n {
                let st = self.basis_product(s, t);
                for u in 0..n {
                    let left = self.mul(st, &self.basis(u));
                    let right = self.mul(&self.basis(s), self.basis_product(t, u));
                    if left != right {
                        associativity_failure = Some((s, t, u));
                        break 'outer;
                    }
                }
            }
        }
        let unit_failure = (0..n).find(|&s| {
            let e = self.basis(s);
            self.mul(&self.unit, &e) != e || self.mul(&e, &self.unit) != e
        });
        let noncommuting_pair = (0..n)
            .flat_map(|s| (s + 1..n).map(move |t| (s, t)))
            .find(|&(s, t)| self.basis_product(s, t) != self.basis_product(t, s));
        ValidationReport { associativity_failure, unit_failure, noncommuting_pair }
    }

    /// The same presentation read over the base field (ℤ becomes ℚ).
    pub fn lift_to_field(&self) -> Algebra {
        Algebra { base: self.base.field(), ..self.clone() }
    }

    /// Human-readable form using the basis labels, e.g. `1 + 2i - 3/2k`.
    pub fn format(&self, x: &Element) -> String {
        let mut parts = Vec::new();
        for (c, name) in x.coords().iter().zip(&self.names) {
            if c.is_zero() {
                continue;
            }
            let text = if name == "1" {
                c.to_string()
            } else if c.is_one() {
                name.clone()
            } else if (-c).is_one() {
                format!("-{name}")
            } else {
                format!("{c}{name}")
            };
            parts.push(text);
        }
        if parts.is_empty() {
            return "0".into();
        }
        let mut out = parts[0].clone();
        for p in &parts[1..] {
            match p.strip_prefix('-') {
                Some(rest) => {
                    out.push_str(" - ");
                    out.push_str(rest);
                }
                None => {
                    out.push_str(" + ");
                    out.push_str(p);
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins;

    #[test]
    fn hamilton_products() {
        let h = builtins::hamilton();
        let (one, i, j, k) = (h.basis(0), h.basis(1), h.basis(2), h.basis(3));
        assert_eq!(h.multiply(&i, &j).unwrap(), k);
        assert_eq!(h.multiply(&one, &i).unwrap(), i);
        assert_eq!(h.commutator(&i, &j).unwrap(), k.scale(&Scalar::from_i64(BaseRing::Rational, 2)));
        let x = h.element_i64(&[3, -1, 4, 1]);
        assert!(h.commutator(&x, &x).unwrap().is_zero());
    }

    #[test]
    fn matrix_units() {
        let m = builtins::matrix(2, BaseRing::Rational).unwrap();
        let (e11, e12) = (m.basis(0), m.basis(1));
        assert_eq!(m.multiply(&e11, &e12).unwrap(), e12);
        assert_eq!(m.commutator(&e11, &e12).unwrap(), e12);
    }

    #[test]
    fn multiply_rejects_bad_input() {
        let h = builtins::hamilton();
        let short = Element::new(vec![Scalar::from_i64(BaseRing::Rational, 1)]);
        assert!(matches!(h.multiply(&short, &h.unit().clone()), Err(Error::DimensionMismatch { .. })));
        let wrong = Element::new(vec![Scalar::residue(1, 5); 4]);
        assert!(matches!(h.commutator(&wrong, &h.basis(1)), Err(Error::BaseMismatch(_))));
    }

    #[test]
    fn validate_reports() {
        let h = builtins::hamilton();
        let r = h.validate();
        assert!(r.associative() && r.unital() && !r.commutative());

        let d = builtins::diagonal(2, BaseRing::Rational).unwrap();
        assert!(d.validate().commutative());

        // Redefine e2·e2 in Hamilton's table to break associativity.
        let mut table = h.table().to_vec();
        table[2 * 4 + 2] = h.element_i64(&[0, 0, 0, 1]);
        let broken = Algebra::new(BaseRing::Rational, h.unit().clone(), table, None).unwrap();
        let report = broken.validate();
        let (s, t, u) = report.associativity_failure.expect("failing triple");
        let left = broken.mul(broken.basis_product(s, t), &broken.basis(u));
        let right = broken.mul(&broken.basis(s), broken.basis_product(t, u));
        assert_ne!(left, right);
    }

    #[test]
    fn format_uses_labels() {
        let h = builtins::hamilton();
        let x = h.element_i64(&[1, 2, -1, 0]);
        assert_eq!(h.format(&x), "1 + 2i - j");
        assert_eq!(h.format(&h.zero()), "0");
    }

    #[test]
    fn parse_element_coordinates() {
        let h = builtins::hamilton();
        assert_eq!(h.parse_element("1,2,3,4").unwrap(), h.element_i64(&[1, 2, 3, 4]));
        assert!(h.parse_element("1,2,3").is_err());
        assert!(h.parse_element("1,2,x,4").is_err());
    }
}

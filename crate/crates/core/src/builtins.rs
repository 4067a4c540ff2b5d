//! Ready-made presentations: generalized quaternions, matrix algebras,
//! triangular and diagonal algebras, central quadratic extensions and
//! direct sums.

use std::fmt;

use crate::algebra::{Algebra, Element};
use crate::error::{Error, Result};
use crate::scalar::{BaseRing, Scalar};

/// Quaternion algebra `(a, b)` with basis `1, i, j, k`, `i² = a`, `j² = b`,
/// `ij = k = -ji`.
pub fn quaternion(a: &Scalar, b: &Scalar, base: BaseRing) -> Result<Algebra> {
    if !a.belongs_to(base) || !b.belongs_to(base) {
        return Err(Error::BaseMismatch(base));
    }
    if a.is_zero() || b.is_zero() {
        return Err(Error::InvalidArgument("quaternion parameters must be non-zero".into()));
    }
    let zero = base.zero();
    let one = base.one();
    let ab = a * b;
    let v = |c: [&Scalar; 4]| Element::new(c.iter().map(|s| (*s).clone()).collect());
    let neg = |s: &Scalar| -s;
    let (na, nb, nab) = (neg(a), neg(b), neg(&ab));
    let n1 = neg(&one);
    #[rustfmt::skip]
    let table = vec![
        // 1·_
        v([&one, &zero, &zero, &zero]), v([&zero, &one, &zero, &zero]), v([&zero, &zero, &one, &zero]), v([&zero, &zero, &zero, &one]),
        // i·_: i, a, k, aj
        v([&zero, &one, &zero, &zero]), v([a, &zero, &zero, &zero]), v([&zero, &zero, &zero, &one]), v([&zero, &zero, a, &zero]),
        // j·_: j, -k, b, -bi
        v([&zero, &zero, &one, &zero]), v([&zero, &zero, &zero, &n1]), v([b, &zero, &zero, &zero]), v([&zero, &nb, &zero, &zero]),
        // k·_: k, -aj, bi, -ab
        v([&zero, &zero, &zero, &one]), v([&zero, &zero, &na, &zero]), v([&zero, b, &zero, &zero]), v([&nab, &zero, &zero, &zero]),
    ];
    let unit = v([&one, &zero, &zero, &zero]);
    Algebra::new(base, unit, table, Some(["1", "i", "j", "k"].map(String::from).to_vec()))
}

/// Hamilton's quaternions over ℚ.
pub fn hamilton() -> Algebra {
    let m1 = Scalar::from_i64(BaseRing::Rational, -1);
    quaternion(&m1, &m1, BaseRing::Rational).expect("valid parameters")
}

/// Lipschitz quaternions: `(-1, -1)` over ℤ.
pub fn lipschitz() -> Algebra {
    let m1 = Scalar::from_i64(BaseRing::Integer, -1);
    quaternion(&m1, &m1, BaseRing::Integer).expect("valid parameters")
}

fn matrix_unit_name(n: usize, r: usize, c: usize) -> String {
    if n < 10 {
        format!("E{}{}", r + 1, c + 1)
    } else {
        format!("E{},{}", r + 1, c + 1)
    }
}

fn matrix_like(n: usize, base: BaseRing, keep: impl Fn(usize, usize) -> bool) -> Result<Algebra> {
    if n < 1 {
        return Err(Error::InvalidArgument("matrix size must be at least 1".into()));
    }
    let units: Vec<(usize, usize)> = (0..n).flat_map(|r| (0..n).map(move |c| (r, c))).filter(|&(r, c)| keep(r, c)).collect();
    let dim = units.len();
    let index = |rc: (usize, usize)| units.iter().position(|&u| u == rc);
    let mut table = Vec::with_capacity(dim * dim);
    for &(r, c) in &units {
        for &(s, t) in &units {
            let mut coords = vec![base.zero(); dim];
            if c == s {
                let pos = index((r, t)).expect("closed under products");
                coords[pos] = base.one();
            }
            table.push(Element::new(coords));
        }
    }
    let mut unit = vec![base.zero(); dim];
    for d in 0..n {
        unit[index((d, d)).expect("diagonal present")] = base.one();
    }
    let names = units.iter().map(|&(r, c)| matrix_unit_name(n, r, c)).collect();
    Algebra::new(base, Element::new(unit), table, Some(names))
}

/// Full matrix algebra `M_n` on the matrix units `E_rc`, row-major order.
pub fn matrix(n: usize, base: BaseRing) -> Result<Algebra> {
    matrix_like(n, base, |_, _| true)
}

/// Upper-triangular `n × n` matrices on the units `E_rc`, `r ≤ c`.
pub fn upper_triangular(n: usize, base: BaseRing) -> Result<Algebra> {
    matrix_like(n, base, |r, c| r <= c)
}

/// The commutative algebra of `n × n` diagonal matrices.
pub fn diagonal(n: usize, base: BaseRing) -> Result<Algebra> {
    matrix_like(n, base, |r, c| r == c)
}

/// `A ⊗ F[t]/(t² − d)`: adjoins a central `t` with `t² = d`. The basis is
/// `e_0..e_{n-1}` followed by `e_0 t..e_{n-1} t`.
pub fn quadratic_extension_tensor(inner: &Algebra, d: &Scalar) -> Result<Algebra> {
    let base = inner.base();
    if !d.belongs_to(base) {
        return Err(Error::BaseMismatch(base));
    }
    if d.is_zero() {
        return Err(Error::InvalidArgument("extension parameter must be non-zero".into()));
    }
    let n = inner.dim();
    let embed = |x: &Element, shift: usize, factor: &Scalar| {
        let mut coords = vec![base.zero(); 2 * n];
        for (s, c) in x.coords().iter().enumerate() {
            coords[s + shift] = c * factor;
        }
        Element::new(coords)
    };
    let one = base.one();
    let mut table = Vec::with_capacity(4 * n * n);
    for p in 0..2 * n {
        for q in 0..2 * n {
            let prod = inner.basis_product(p % n, q % n);
            let entry = match (p >= n, q >= n) {
                (false, false) => embed(prod, 0, &one),
                (true, true) => embed(prod, 0, d),
                _ => embed(prod, n, &one),
            };
            table.push(entry);
        }
    }
    let unit = embed(inner.unit(), 0, &one);
    let mut names: Vec<String> = inner.names().to_vec();
    names.extend(inner.names().iter().map(|s| if s == "1" { "t".to_string() } else { format!("{s}t") }));
    Algebra::new(base, unit, table, Some(names))
}

/// `A ⊕ B` with componentwise products.
pub fn direct_sum(a: &Algebra, b: &Algebra) -> Result<Algebra> {
    if a.base() != b.base() {
        return Err(Error::BaseMismatch(a.base()));
    }
    let base = a.base();
    let (n, m) = (a.dim(), b.dim());
    let place = |x: &Element, shift: usize| {
        let mut coords = vec![base.zero(); n + m];
        for (s, c) in x.coords().iter().enumerate() {
            coords[s + shift] = c.clone();
        }
        Element::new(coords)
    };
    let mut table = Vec::with_capacity((n + m) * (n + m));
    for p in 0..n + m {
        for q in 0..n + m {
            let entry = match (p < n, q < n) {
                (true, true) => place(a.basis_product(p, q), 0),
                (false, false) => place(b.basis_product(p - n, q - n), n),
                _ => Element::zero(base, n + m),
            };
            table.push(entry);
        }
    }
    let unit = &place(a.unit(), 0) + &place(b.unit(), n);
    let mut names: Vec<String> = a.names().iter().map(|s| format!("{s}.0")).collect();
    names.extend(b.names().iter().map(|s| format!("{s}.1")));
    Algebra::new(base, unit, table, Some(names))
}

/// A named builtin, as accepted by the command line.
///
/// Grammar (base defaults to `Q`):
/// `hamilton`, `lipschitz`, `quaternion(a,b[,BASE])`, `matrix(n[,BASE])`,
/// `upper(n[,BASE])`, `diagonal(n[,BASE])`, `ext(NAME,d)`, `sum(NAME,NAME)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Builtin {
    Hamilton,
    Lipschitz,
    Quaternion { a: Scalar, b: Scalar, base: BaseRing },
    Matrix { n: usize, base: BaseRing },
    UpperTriangular { n: usize, base: BaseRing },
    Diagonal { n: usize, base: BaseRing },
    QuadraticExtension { inner: Box<Builtin>, d: String },
    DirectSum(Box<Builtin>, Box<Builtin>),
}

impl Builtin {
    pub fn build(&self) -> Result<Algebra> {
        match self {
            Builtin::Hamilton => Ok(hamilton()),
            Builtin::Lipschitz => Ok(lipschitz()),
            Builtin::Quaternion { a, b, base } => quaternion(a, b, *base),
            Builtin::Matrix { n, base } => matrix(*n, *base),
            Builtin::UpperTriangular { n, base } => upper_triangular(*n, *base),
            Builtin::Diagonal { n, base } => diagonal(*n, *base),
            Builtin::QuadraticExtension { inner, d } => {
                let inner = inner.build()?;
                let d = Scalar::parse(d, inner.base())?;
                quadratic_extension_tensor(&inner, &d)
            }
            Builtin::DirectSum(a, b) => direct_sum(&a.build()?, &b.build()?),
        }
    }

    pub fn parse(text: &str) -> Result<Builtin> {
        let t = text.trim();
        let bad = || Error::Parse(format!("unknown builtin `{t}`"));
        let (head, args) = match t.find('(') {
            Some(open) => {
                let inner = t[open + 1..].strip_suffix(')').ok_or_else(bad)?;
                (&t[..open], split_top_level(inner))
            }
            None => (t, Vec::new()),
        };
        let base_arg = |args: &[&str], idx: usize| -> Result<BaseRing> {
            args.get(idx).map_or(Ok(BaseRing::Rational), |s| BaseRing::from_label(s))
        };
        let size = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
        match (head.trim(), args.len()) {
            ("hamilton", 0) => Ok(Builtin::Hamilton),
            ("lipschitz", 0) => Ok(Builtin::Lipschitz),
            ("quaternion", 2 | 3) => {
                let base = base_arg(&args, 2)?;
                Ok(Builtin::Quaternion { a: Scalar::parse(args[0], base)?, b: Scalar::parse(args[1], base)?, base })
            }
            ("matrix", 1 | 2) => Ok(Builtin::Matrix { n: size(args[0])?, base: base_arg(&args, 1)? }),
            ("upper", 1 | 2) => Ok(Builtin::UpperTriangular { n: size(args[0])?, base: base_arg(&args, 1)? }),
            ("diagonal", 1 | 2) => Ok(Builtin::Diagonal { n: size(args[0])?, base: base_arg(&args, 1)? }),
            ("ext", 2) => Ok(Builtin::QuadraticExtension { inner: Box::new(Builtin::parse(args[0])?), d: args[1].trim().to_string() }),
            ("sum", 2) => Ok(Builtin::DirectSum(Box::new(Builtin::parse(args[0])?), Box::new(Builtin::parse(args[1])?))),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Builtin::Hamilton => write!(f, "hamilton"),
            Builtin::Lipschitz => write!(f, "lipschitz"),
            Builtin::Quaternion { a, b, base } => write!(f, "quaternion({a},{b},{base})"),
            Builtin::Matrix { n, base } => write!(f, "matrix({n},{base})"),
            Builtin::UpperTriangular { n, base } => write!(f, "upper({n},{base})"),
            Builtin::Diagonal { n, base } => write!(f, "diagonal({n},{base})"),
            Builtin::QuadraticExtension { inner, d } => write!(f, "ext({inner},{d})"),
            Builtin::DirectSum(a, b) => write!(f, "sum({a},{b})"),
        }
    }
}

fn split_top_level(s: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    if !s.trim().is_empty() {
        parts.push(&s[start..]);
    }
    parts
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Scalar {
        Scalar::from_i64(BaseRing::Rational, n)
    }

    #[test]
    fn quaternion_k_squared() {
        // k² = ijij = -i²j² = -ab, expanded by hand.
        for (a, b) in [(-1, -1), (2, 5), (-3, 7)] {
            let h = quaternion(&q(a), &q(b), BaseRing::Rational).unwrap();
            let k = h.basis(3);
            assert_eq!(h.square(&k), h.scalar_i64(-a * b));
            let (i, j) = (h.basis(1), h.basis(2));
            assert_eq!(h.mul(&i, &j), k);
            assert_eq!(h.mul(&j, &i), -&k);
            assert_eq!(h.square(&i), h.scalar_i64(a));
            assert_eq!(h.square(&j), h.scalar_i64(b));
        }
    }

    #[test]
    fn builtins_validate() {
        let f3 = BaseRing::Prime(3);
        let algebras = vec![
            hamilton(),
            lipschitz(),
            quaternion(&q(2), &q(5), BaseRing::Rational).unwrap(),
            quaternion(&Scalar::residue(1, 3), &Scalar::residue(2, 3), f3).unwrap(),
            matrix(2, f3).unwrap(),
            matrix(3, BaseRing::Rational).unwrap(),
            upper_triangular(3, BaseRing::Rational).unwrap(),
            diagonal(2, BaseRing::Rational).unwrap(),
            quadratic_extension_tensor(&hamilton(), &q(2)).unwrap(),
            direct_sum(&matrix(2, BaseRing::Rational).unwrap(), &diagonal(1, BaseRing::Rational).unwrap()).unwrap(),
        ];
        for a in algebras {
            assert!(a.validate().is_valid(), "{:?}", a.names());
        }
    }

    #[test]
    fn constructor_errors() {
        assert!(quaternion(&q(0), &q(1), BaseRing::Rational).is_err());
        assert!(matrix(0, BaseRing::Rational).is_err());
        assert!(quadratic_extension_tensor(&hamilton(), &q(0)).is_err());
        assert!(direct_sum(&hamilton(), &matrix(1, BaseRing::Prime(2)).unwrap()).is_err());
    }

    #[test]
    fn shapes() {
        assert_eq!(matrix(2, BaseRing::Prime(3)).unwrap().dim(), 4);
        assert_eq!(upper_triangular(3, BaseRing::Rational).unwrap().dim(), 6);
        assert_eq!(quadratic_extension_tensor(&hamilton(), &q(2)).unwrap().dim(), 8);
        assert_eq!(hamilton().names(), &["1", "i", "j", "k"]);
    }

    #[test]
    fn parse_names() {
        assert_eq!(Builtin::parse("hamilton").unwrap(), Builtin::Hamilton);
        let b = Builtin::parse("quaternion(2,5)").unwrap();
        assert_eq!(b.build().unwrap(), quaternion(&q(2), &q(5), BaseRing::Rational).unwrap());
        let e = Builtin::parse("ext(hamilton,2)").unwrap();
        assert_eq!(e.build().unwrap().dim(), 8);
        let s = Builtin::parse("sum(matrix(2),diagonal(1))").unwrap();
        assert_eq!(s.build().unwrap().dim(), 5);
        assert_eq!(Builtin::parse("matrix(2,F3)").unwrap(), Builtin::Matrix { n: 2, base: BaseRing::Prime(3) });
        assert!(Builtin::parse("octonion").is_err());
        assert!(Builtin::parse("matrix(x)").is_err());
        for name in ["ext(hamilton,2)", "sum(matrix(2,Q),diagonal(1,Q))", "quaternion(-1,-1,Z)"] {
            let b = Builtin::parse(name).unwrap();
            assert_eq!(Builtin::parse(&b.to_string()).unwrap(), b);
        }
    }
}

//! Sparse multivariate polynomials over an exact field, cubic surfaces in
//! P^3, Hessian determinants, and the expansion of a cubic along a
//! parameterized line.

use crate::exact::{fmat, parse_rational, Cyclotomic, Field, Rational};
use num_traits::Zero;
use std::collections::BTreeMap;
use std::fmt;

/// Sparse multivariate polynomial: exponent vector -> nonzero coefficient.
/// All exponent vectors have length `nvars`; zero coefficients are never
/// stored.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly<K: Field> {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, K>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum PolyError {
    /// Construction input is not a nonzero homogeneous cubic in 4 variables.
    NotACubicForm(String),
    /// Linear substitution by a singular matrix.
    SingularChange,
    /// Substitution matrix has the wrong shape.
    BadMatrixShape { expected: usize },
    /// JSON surface input problems, with the offending key or a syntax
    /// diagnostic.
    Parse(String),
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::NotACubicForm(why) => write!(f, "not a cubic form: {why}"),
            PolyError::SingularChange => write!(f, "linear change of variables is singular"),
            PolyError::BadMatrixShape { expected } => {
                write!(f, "substitution matrix must be {expected}x{expected}")
            }
            PolyError::Parse(why) => write!(f, "surface input error: {why}"),
        }
    }
}

impl std::error::Error for PolyError {}

impl<K: Field> MultiPoly<K> {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, k: K) -> Self {
        let mut p = MultiPoly::zero(nvars);
        p.insert_add(vec![0; nvars], k);
        p
    }

    /// The variable `x_i` as a polynomial.
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = MultiPoly::zero(nvars);
        p.insert_add(e, K::one());
        p
    }

    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, K)>,
    {
        let mut p = MultiPoly::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length mismatch");
            p.insert_add(e, c);
        }
        p
    }

    fn insert_add(&mut self, e: Vec<u32>, c: K) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                let sum = slot.get().clone() + c;
                if sum.is_zero() {
                    slot.remove();
                } else {
                    slot.insert(sum);
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &K)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &[u32]) -> K {
        self.terms.get(e).cloned().unwrap_or_else(K::zero)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert_add(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        let mut out = MultiPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            out.terms.insert(e.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, k: &K) -> Self {
        let mut out = MultiPoly::zero(self.nvars);
        if k.is_zero() {
            return out;
        }
        for (e, c) in &self.terms {
            out.insert_add(e.clone(), c.clone() * k.clone());
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = MultiPoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.insert_add(e, ca.clone() * cb.clone());
            }
        }
        out
    }

    /// Partial derivative with respect to variable `i`.
    pub fn partial(&self, i: usize) -> Self {
        assert!(i < self.nvars);
        let mut out = MultiPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut de = e.clone();
            de[i] -= 1;
            out.insert_add(de, c.clone() * K::from_int(e[i] as i64));
        }
        out
    }

    pub fn eval(&self, point: &[K]) -> K {
        assert_eq!(point.len(), self.nvars);
        let mut acc = K::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (x, &exp) in point.iter().zip(e) {
                for _ in 0..exp {
                    term = term * x.clone();
                }
            }
            acc = acc + term;
        }
        acc
    }

    /// Substitutes a polynomial for each variable. All substituted
    /// polynomials must share a variable count, which becomes the output's.
    pub fn subst(&self, args: &[MultiPoly<K>]) -> MultiPoly<K> {
        assert_eq!(args.len(), self.nvars, "one substitution per variable");
        let out_vars = args.first().map_or(0, MultiPoly::nvars);
        assert!(args.iter().all(|a| a.nvars == out_vars));
        // Precompute powers of each argument up to its maximum exponent.
        let max_exp: Vec<u32> = (0..self.nvars)
            .map(|i| self.terms.keys().map(|e| e[i]).max().unwrap_or(0))
            .collect();
        let powers: Vec<Vec<MultiPoly<K>>> = args
            .iter()
            .zip(&max_exp)
            .map(|(a, &m)| {
                let mut p = vec![MultiPoly::constant(out_vars, K::one())];
                for k in 1..=m as usize {
                    p.push(p[k - 1].mul(a));
                }
                p
            })
            .collect();
        let mut acc = MultiPoly::zero(out_vars);
        for (e, c) in &self.terms {
            let mut term = MultiPoly::constant(out_vars, c.clone());
            for (i, &exp) in e.iter().enumerate() {
                if exp > 0 {
                    term = term.mul(&powers[i][exp as usize]);
                }
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// Composition with the linear substitution `x -> M x`: each variable
    /// `x_i` is replaced by the linear form `sum_j M[i][j] x_j`. Fails on a
    /// singular matrix, which would not define a change of coordinates.
    pub fn linear_change(&self, m: &[Vec<K>]) -> Result<MultiPoly<K>, PolyError> {
        let n = self.nvars;
        if m.len() != n || m.iter().any(|row| row.len() != n) {
            return Err(PolyError::BadMatrixShape { expected: n });
        }
        if fmat::det(m).is_zero() {
            return Err(PolyError::SingularChange);
        }
        let args: Vec<MultiPoly<K>> = (0..n)
            .map(|i| {
                let mut lin = MultiPoly::zero(n);
                for (j, c) in m[i].iter().enumerate() {
                    let mut e = vec![0; n];
                    e[j] = 1;
                    lin.insert_add(e, c.clone());
                }
                lin
            })
            .collect();
        Ok(self.subst(&args))
    }

    /// `Some(d)` if every term has total degree `d` (the zero polynomial is
    /// homogeneous of any degree; reported as `Some(0)`).
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degrees = self.terms.keys().map(|e| e.iter().sum::<u32>());
        let Some(first) = degrees.next() else {
            return Some(0);
        };
        degrees.all(|d| d == first).then_some(first)
    }

    /// Re-embeds into a ring with more variables (exponents padded by zero).
    pub fn extend_vars(&self, nvars: usize) -> MultiPoly<K> {
        assert!(nvars >= self.nvars);
        let mut out = MultiPoly::zero(nvars);
        for (e, c) in &self.terms {
            let mut ee = e.clone();
            ee.resize(nvars, 0);
            out.terms.insert(ee, c.clone());
        }
        out
    }
}

fn var_name(nvars: usize, i: usize) -> String {
    // The 7-variable ring is the line-expansion ring x0..x3, z1..z3.
    if nvars == 7 && i >= 4 {
        format!("z{}", i - 3)
    } else {
        format!("x{i}")
    }
}

impl<K: Field> fmt::Display for MultiPoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            // Parenthesize compound or negative coefficients such as
            // "1 + w" or "-3"; bare nonnegative tokens stay unwrapped.
            let cs = c.to_string();
            let needs_parens = cs.contains(' ')
                || cs.contains('+')
                || cs.contains('-');
            if needs_parens {
                write!(f, "({cs})")?;
            } else {
                write!(f, "{cs}")?;
            }
            for (i, &exp) in e.iter().enumerate() {
                match exp {
                    0 => {}
                    1 => write!(f, "*{}", var_name(self.nvars, i))?,
                    _ => write!(f, "*{}^{}", var_name(self.nvars, i), exp)?,
                }
            }
        }
        Ok(())
    }
}

impl<K: Field> fmt::Debug for MultiPoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A nonzero homogeneous cubic form in the four coordinates of P^3.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CubicSurface<K: Field> {
    f: MultiPoly<K>,
}

impl<K: Field> CubicSurface<K> {
    pub fn new(f: MultiPoly<K>) -> Result<Self, PolyError> {
        if f.nvars() != 4 {
            return Err(PolyError::NotACubicForm(format!(
                "expected 4 variables, got {}",
                f.nvars()
            )));
        }
        if f.is_zero() {
            return Err(PolyError::NotACubicForm("zero polynomial".into()));
        }
        if f.homogeneous_degree() != Some(3) {
            return Err(PolyError::NotACubicForm(
                "not homogeneous of degree 3".into(),
            ));
        }
        Ok(CubicSurface { f })
    }

    /// The Fermat cubic `x0^3 + x1^3 + x2^3 + x3^3`.
    pub fn fermat() -> Self {
        let f = MultiPoly::from_terms(
            4,
            (0..4).map(|i| {
                let mut e = vec![0; 4];
                e[i] = 3;
                (e, K::one())
            }),
        );
        CubicSurface { f }
    }

    pub fn f(&self) -> &MultiPoly<K> {
        &self.f
    }

    pub fn gradient(&self) -> [MultiPoly<K>; 4] {
        [
            self.f.partial(0),
            self.f.partial(1),
            self.f.partial(2),
            self.f.partial(3),
        ]
    }

    /// Applies a linear change of coordinates to the defining form.
    pub fn linear_change(&self, m: &[Vec<K>]) -> Result<Self, PolyError> {
        CubicSurface::new(self.f.linear_change(m)?)
    }
}

/// Determinant of a square matrix of polynomials by cofactor expansion along
/// the first row.
pub fn poly_det<K: Field>(m: &[Vec<MultiPoly<K>>]) -> MultiPoly<K> {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n), "matrix must be square");
    let nvars = if n == 0 { 0 } else { m[0][0].nvars() };
    if n == 0 {
        return MultiPoly::constant(nvars, K::one());
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = MultiPoly::zero(nvars);
    for c in 0..n {
        if m[0][c].is_zero() {
            continue;
        }
        let minor: Vec<Vec<MultiPoly<K>>> = (1..n)
            .map(|r| {
                (0..n)
                    .filter(|&cc| cc != c)
                    .map(|cc| m[r][cc].clone())
                    .collect()
            })
            .collect();
        let term = m[0][c].mul(&poly_det(&minor));
        if c % 2 == 0 {
            acc = acc.add(&term);
        } else {
            acc = acc.sub(&term);
        }
    }
    acc
}

/// The 4x4 matrix of second partials of the defining cubic.
pub fn hessian_matrix<K: Field>(surface: &CubicSurface<K>) -> Vec<Vec<MultiPoly<K>>> {
    (0..4)
        .map(|i| (0..4).map(|j| surface.f().partial(i).partial(j)).collect())
        .collect()
}

/// Determinant of the Hessian matrix: the quartic form cutting out the
/// branch locus of the double cover.
pub fn hessian_det<K: Field>(surface: &CubicSurface<K>) -> MultiPoly<K> {
    poly_det(&hessian_matrix(surface))
}

/// The restriction coefficients of a cubic along a parameterized line.
///
/// In the 7-variable ring with coordinates `x0..x3, z1..z3`, sets
/// `F_0 = F(x0..x3)` and `F_i = (1/i) * sum_{j=1..3} dF_{i-1}/dx_j * z_j`.
/// These satisfy the exact expansion identity
///
/// ```text
/// F(a0 t0, a1 t0 + b1 t1, a2 t0 + b2 t1, a3 t0 + b3 t1)
///     = sum_i F_i(a, b) t0^(3-i) t1^i,
/// ```
///
/// so a line spanned by `a` and `(0, b1, b2, b3)` lies on the surface exactly
/// when all four values `F_i(a, b)` vanish.
pub fn fi_sequence<K: Field>(surface: &CubicSurface<K>) -> [MultiPoly<K>; 4] {
    let f0 = surface.f().extend_vars(7);
    let mut seq = vec![f0];
    for i in 1..=3u32 {
        let prev = &seq[i as usize - 1];
        let mut next = MultiPoly::zero(7);
        for j in 1..=3usize {
            let z_j = MultiPoly::var(7, 3 + j);
            next = next.add(&prev.partial(j).mul(&z_j));
        }
        let inv_i = K::from_rational(&Rational::new(1.into(), i.into()));
        seq.push(next.scale(&inv_i));
    }
    seq.try_into().unwrap()
}

/// Result of probing one candidate point for smoothness.
#[derive(Clone, Debug)]
pub struct ProbePoint<K: Field> {
    pub point: Vec<K>,
    pub on_surface: bool,
    /// Gradient vanishes at the point. Only meaningful when `on_surface`.
    pub gradient_zero: bool,
}

/// Aggregate of [`smoothness_probe`]: a vanishing gradient at an on-surface
/// point certifies that the surface is singular; a clean sweep is only a
/// probe, not a smoothness proof.
#[derive(Clone, Debug)]
pub struct ProbeReport<K: Field> {
    pub points: Vec<ProbePoint<K>>,
    pub certifies_singular: bool,
}

pub fn smoothness_probe<K: Field>(
    surface: &CubicSurface<K>,
    points: &[Vec<K>],
) -> ProbeReport<K> {
    let grad = surface.gradient();
    let mut report = ProbeReport {
        points: Vec::new(),
        certifies_singular: false,
    };
    for p in points {
        assert_eq!(p.len(), 4, "probe points live in P^3");
        let on_surface = surface.f().eval(p).is_zero();
        let gradient_zero = grad.iter().all(|g| g.eval(p).is_zero());
        if on_surface && gradient_zero {
            report.certifies_singular = true;
        }
        report.points.push(ProbePoint {
            point: p.clone(),
            on_surface,
            gradient_zero,
        });
    }
    report
}

/// A parsed surface file: the scalar field is chosen by whether any
/// coefficient carries a nonzero omega component.
#[derive(Clone, Debug)]
pub enum ParsedSurface {
    Rational(CubicSurface<Rational>),
    Eisenstein(CubicSurface<Cyclotomic>),
}

/// Parses the JSON surface format: an object mapping monomial keys
/// `"i,j,k,l"` (exponents of `x0..x3` summing to 3) to coefficient values,
/// each either a rational string `"p/q"` or a two-element array
/// `["p/q", "r/s"]` meaning `p/q + (r/s) w`.
pub fn surface_from_json(text: &str) -> Result<ParsedSurface, PolyError> {
    let value: serde_json::Value = serde_json::from_str(text)
        .map_err(|e| PolyError::Parse(format!("invalid JSON: {e}")))?;
    let obj = value
        .as_object()
        .ok_or_else(|| PolyError::Parse("top level must be an object".into()))?;
    let mut entries: Vec<(Vec<u32>, Vec<Rational>)> = Vec::new();
    for (key, val) in obj {
        let exps = parse_monomial_key(key)?;
        let coords = parse_coefficient(key, val)?;
        entries.push((exps, coords));
    }
    let needs_omega = entries
        .iter()
        .any(|(_, c)| c.len() == 2 && !c[1].is_zero());
    if needs_omega {
        let f = MultiPoly::from_terms(
            4,
            entries.into_iter().map(|(e, c)| {
                let k = Cyclotomic::from_coords(&c).expect("one or two coordinates");
                (e, k)
            }),
        );
        Ok(ParsedSurface::Eisenstein(
            CubicSurface::new(f).map_err(|e| PolyError::Parse(e.to_string()))?,
        ))
    } else {
        let f = MultiPoly::from_terms(4, entries.into_iter().map(|(e, c)| (e, c[0].clone())));
        Ok(ParsedSurface::Rational(
            CubicSurface::new(f).map_err(|e| PolyError::Parse(e.to_string()))?,
        ))
    }
}

fn parse_monomial_key(key: &str) -> Result<Vec<u32>, PolyError> {
    let parts: Vec<&str> = key.split(',').collect();
    if parts.len() != 4 {
        return Err(PolyError::Parse(format!(
            "key {key:?}: expected 4 comma-separated exponents"
        )));
    }
    let mut exps = Vec::with_capacity(4);
    for p in parts {
        let e: u32 = p.trim().parse().map_err(|_| {
            PolyError::Parse(format!("key {key:?}: bad exponent {p:?}"))
        })?;
        exps.push(e);
    }
    if exps.iter().sum::<u32>() != 3 {
        return Err(PolyError::Parse(format!(
            "key {key:?}: exponents must sum to 3"
        )));
    }
    Ok(exps)
}

fn parse_coefficient(key: &str, val: &serde_json::Value) -> Result<Vec<Rational>, PolyError> {
    match val {
        serde_json::Value::String(s) => {
            let r = parse_rational(s)
                .map_err(|e| PolyError::Parse(format!("key {key:?}: {e}")))?;
            Ok(vec![r])
        }
        serde_json::Value::Array(items) if items.len() == 2 => {
            let mut coords = Vec::with_capacity(2);
            for item in items {
                let s = item.as_str().ok_or_else(|| {
                    PolyError::Parse(format!(
                        "key {key:?}: coefficient pair entries must be strings"
                    ))
                })?;
                coords.push(
                    parse_rational(s)
                        .map_err(|e| PolyError::Parse(format!("key {key:?}: {e}")))?,
                );
            }
            Ok(coords)
        }
        other => Err(PolyError::Parse(format!(
            "key {key:?}: coefficient must be a rational string or a pair, got {other}"
        ))),
    }
}

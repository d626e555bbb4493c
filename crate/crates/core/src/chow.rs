//! Chow ring of the point-line incidence variety in P^3 and the class of
//! the triple-contact surface of a cubic.
//!
//! The incidence variety `{(p, l) : p in l}` of points on lines in `P^3` is
//! a `P^2`-bundle over `P^3`; its Chow ring is
//!
//! ```text
//! Z[s, t] / (t^4, s^3 + s^2 t + s t^2 + t^3)
//! ```
//!
//! where `t` is the hyperplane class pulled back from `P^3` and `s` is the
//! relative hyperplane class. The degree map is normalized so that
//! `deg(s^2 t^3) = 1`.
//!
//! For a fixed smooth cubic surface, the pairs `(p, l)` where `l` meets the
//! cubic at `p` with contact order at least three form a divisor cut out by
//! a section of a rank-3 bundle with Chern roots `2s + t`, `s + 2t`, `3t`;
//! its class is the product of those roots.

use std::fmt;

/// Exponent bound in `s` after reduction (`s^3` rewrites downward).
const S_DIM: usize = 3;
/// Exponent bound in `t` after reduction (`t^4 = 0`).
const T_DIM: usize = 4;

/// An element of the Chow ring, stored as coefficients of the reduced
/// monomial basis `s^a t^b` with `a <= 2`, `b <= 3`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ChowClass {
    coeffs: [[i64; T_DIM]; S_DIM],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChowError {
    /// `degree` applied to a class with terms outside the top grade.
    NotTopGrade { class: String },
}

impl fmt::Display for ChowError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChowError::NotTopGrade { class } => {
                write!(f, "degree of a class with terms below the top grade: {class}")
            }
        }
    }
}

impl std::error::Error for ChowError {}

impl ChowClass {
    pub fn zero() -> Self {
        ChowClass {
            coeffs: [[0; T_DIM]; S_DIM],
        }
    }

    pub fn one() -> Self {
        ChowClass::monomial(1, 0, 0)
    }

    pub fn s() -> Self {
        ChowClass::monomial(1, 1, 0)
    }

    pub fn t() -> Self {
        ChowClass::monomial(1, 0, 1)
    }

    /// `c * s^a t^b`, reduced into the ring.
    pub fn monomial(c: i64, a: u32, b: u32) -> Self {
        let mut out = ChowClass::zero();
        out.accumulate(c, a, b);
        out
    }

    /// `c0 + c1 s + c2 t` — the linear classes used as Chern roots.
    pub fn linear(c1: i64, c2: i64) -> Self {
        ChowClass::monomial(c1, 1, 0).add(&ChowClass::monomial(c2, 0, 1))
    }

    /// Adds `c * s^a t^b` after rewriting modulo the two relations:
    /// `t^4 = 0` and `s^3 = -(s^2 t + s t^2 + t^3)`.
    fn accumulate(&mut self, c: i64, a: u32, b: u32) {
        let mut work = vec![(c, a, b)];
        while let Some((c, a, b)) = work.pop() {
            if c == 0 || b >= T_DIM as u32 {
                continue;
            }
            if a >= S_DIM as u32 {
                // s^a t^b = s^(a-3) t^b * s^3
                //         = -(s^(a-1) t^(b+1) + s^(a-2) t^(b+2) + s^(a-3) t^(b+3)).
                work.push((-c, a - 1, b + 1));
                work.push((-c, a - 2, b + 2));
                work.push((-c, a - 3, b + 3));
                continue;
            }
            self.coeffs[a as usize][b as usize] += c;
        }
    }

    /// Coefficient of the reduced basis monomial `s^a t^b`.
    pub fn coeff(&self, a: usize, b: usize) -> i64 {
        assert!(a < S_DIM && b < T_DIM);
        self.coeffs[a][b]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|row| row.iter().all(|&c| c == 0))
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = *self;
        for a in 0..S_DIM {
            for b in 0..T_DIM {
                out.coeffs[a][b] += rhs.coeffs[a][b];
            }
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = *self;
        for row in &mut out.coeffs {
            for c in row {
                *c = -*c;
            }
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn scale(&self, k: i64) -> Self {
        let mut out = *self;
        for row in &mut out.coeffs {
            for c in row {
                *c *= k;
            }
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = ChowClass::zero();
        for a1 in 0..S_DIM {
            for b1 in 0..T_DIM {
                let c1 = self.coeffs[a1][b1];
                if c1 == 0 {
                    continue;
                }
                for a2 in 0..S_DIM {
                    for b2 in 0..T_DIM {
                        let c2 = rhs.coeffs[a2][b2];
                        if c2 == 0 {
                            continue;
                        }
                        out.accumulate(c1 * c2, (a1 + a2) as u32, (b1 + b2) as u32);
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = ChowClass::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// The part of the class in total degree `d`.
    pub fn grade(&self, d: u32) -> Self {
        let mut out = ChowClass::zero();
        for a in 0..S_DIM {
            for b in 0..T_DIM {
                if (a + b) as u32 == d {
                    out.coeffs[a][b] = self.coeffs[a][b];
                }
            }
        }
        out
    }

    /// Degree of a top-grade class: the coefficient of `s^2 t^3`. Errors if
    /// the class has any term of total degree below 5, since the degree map
    /// is only defined on the top grade.
    pub fn degree(&self) -> Result<i64, ChowError> {
        let top = self.grade(5);
        if *self != top {
            return Err(ChowError::NotTopGrade {
                class: self.to_string(),
            });
        }
        Ok(self.coeffs[2][3])
    }
}

impl fmt::Display for ChowClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for a in (0..S_DIM).rev() {
            for b in 0..T_DIM {
                let c = self.coeffs[a][b];
                if c == 0 {
                    continue;
                }
                if first {
                    if c < 0 {
                        write!(f, "-")?;
                    }
                } else if c < 0 {
                    write!(f, " - ")?;
                } else {
                    write!(f, " + ")?;
                }
                first = false;
                let mag = c.unsigned_abs();
                let unit = a == 0 && b == 0;
                if mag != 1 || unit {
                    write!(f, "{mag}")?;
                    if !unit {
                        write!(f, "*")?;
                    }
                }
                match a {
                    0 => {}
                    1 => write!(f, "s")?,
                    _ => write!(f, "s^{a}")?,
                }
                if a > 0 && b > 0 {
                    write!(f, "*")?;
                }
                match b {
                    0 => {}
                    1 => write!(f, "t")?,
                    _ => write!(f, "t^{b}")?,
                }
            }
        }
        Ok(())
    }
}

/// Chern roots of the rank-3 contact bundle whose zero locus is the
/// triple-contact surface: `2s + t`, `s + 2t`, `3t`.
pub fn triple_contact_roots() -> [ChowClass; 3] {
    [
        ChowClass::linear(2, 1),
        ChowClass::linear(1, 2),
        ChowClass::linear(0, 3),
    ]
}

/// Chern roots of the same jet bundle without the degree-3 twist:
/// `2s`, `s + t`, `2t`.
pub fn triple_contact_roots_untwisted() -> [ChowClass; 3] {
    [
        ChowClass::linear(2, 0),
        ChowClass::linear(1, 1),
        ChowClass::linear(0, 2),
    ]
}

/// Elementary symmetric classes `e1, e2, e3` of three ring elements.
pub fn elementary_symmetric(roots: &[ChowClass; 3]) -> [ChowClass; 3] {
    let [r1, r2, r3] = roots;
    let e1 = r1.add(r2).add(r3);
    let e2 = r1.mul(r2).add(&r1.mul(r3)).add(&r2.mul(r3));
    let e3 = r1.mul(r2).mul(r3);
    [e1, e2, e3]
}

/// Class of the triple-contact surface: the product of the contact bundle
/// roots, `(2s + t)(s + 2t)(3t)`.
pub fn triple_contact_class() -> ChowClass {
    let [r1, r2, r3] = triple_contact_roots();
    r1.mul(&r2).mul(&r3)
}

/// Product of the untwisted roots, `(2s)(s + t)(2t)`.
pub fn untwisted_contact_class() -> ChowClass {
    let [r1, r2, r3] = triple_contact_roots_untwisted();
    r1.mul(&r2).mul(&r3)
}

/// Numerical invariants of the triple-contact surface read off from its
/// class `Y` by intersection:
/// the canonical self-intersection `deg(t^2 Y)` and the self-intersection
/// `deg((3s)^2 Y)` of the section-at-infinity curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContactSurfaceInvariants {
    pub class: ChowClass,
    pub canonical_square: i64,
    pub infinity_square: i64,
}

pub fn contact_surface_invariants() -> ContactSurfaceInvariants {
    let y = triple_contact_class();
    let t2 = ChowClass::t().pow(2);
    let s2 = ChowClass::s().pow(2);
    let canonical_square = t2.mul(&y).degree().expect("t^2 Y is top grade");
    let infinity_square = 9 * s2.mul(&y).degree().expect("s^2 Y is top grade");
    ContactSurfaceInvariants {
        class: y,
        canonical_square,
        infinity_square,
    }
}

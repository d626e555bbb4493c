//! The field Q(w) where w is a primitive cube root of unity, so
//! w^2 = -1 - w. Elements are stored as `a + b*w` with exact rational
//! coordinates.

use super::{rat_int, Field, Rational};
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// `a + b*w` with `w^2 = -1 - w`. The derived ordering is the lexicographic
/// structural one on `(a, b)`, used only for canonical keys and deterministic
/// iteration; it has no arithmetic meaning.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Cyclotomic {
    pub a: Rational,
    pub b: Rational,
}

impl Cyclotomic {
    pub fn new(a: Rational, b: Rational) -> Self {
        Cyclotomic { a, b }
    }

    pub fn from_ints(a: i64, b: i64) -> Self {
        Cyclotomic::new(rat_int(a), rat_int(b))
    }

    /// The generator w itself.
    pub fn omega() -> Self {
        Cyclotomic::from_ints(0, 1)
    }

    /// Galois conjugate: w maps to w^2 = -1 - w, so
    /// `a + b*w  ->  (a - b) - b*w`.
    pub fn conj(&self) -> Self {
        Cyclotomic::new(&self.a - &self.b, -self.b.clone())
    }

    /// Field norm to Q: `N(a + b*w) = a^2 - a*b + b^2`, always nonnegative.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.a * &self.b + &self.b * &self.b
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }
}

impl Add for Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: Cyclotomic) -> Cyclotomic {
        Cyclotomic::new(self.a + rhs.a, self.b + rhs.b)
    }
}

impl Sub for Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: Cyclotomic) -> Cyclotomic {
        Cyclotomic::new(self.a - rhs.a, self.b - rhs.b)
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic::new(-self.a, -self.b)
    }
}

impl Mul for Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: Cyclotomic) -> Cyclotomic {
        // (a + b w)(c + d w) = ac + (ad + bc) w + bd w^2
        //                    = (ac - bd) + (ad + bc - bd) w.
        let ac = &self.a * &rhs.a;
        let bd = &self.b * &rhs.b;
        let ad_bc = &self.a * &rhs.b + &self.b * &rhs.a;
        Cyclotomic::new(ac - &bd, ad_bc - bd)
    }
}

impl Zero for Cyclotomic {
    fn zero() -> Self {
        Cyclotomic::from_ints(0, 0)
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for Cyclotomic {
    fn one() -> Self {
        Cyclotomic::from_ints(1, 0)
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        if self.a.is_zero() {
            return write!(f, "{}*w", self.b);
        }
        write!(f, "{} + {}*w", self.a, self.b)
    }
}

impl Field for Cyclotomic {
    const DEGREE: usize = 2;

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        // 1/(a + b w) = conj / norm; the norm is a nonzero rational.
        let n = self.norm();
        let c = self.conj();
        Some(Cyclotomic::new(c.a / &n, c.b / n))
    }

    fn from_int(n: i64) -> Self {
        Cyclotomic::from_ints(n, 0)
    }

    fn from_rational(r: &Rational) -> Self {
        Cyclotomic::new(r.clone(), Rational::zero())
    }

    fn coords(&self) -> Vec<Rational> {
        vec![self.a.clone(), self.b.clone()]
    }

    fn from_coords(c: &[Rational]) -> Option<Self> {
        match c {
            [a] => Some(Cyclotomic::new(a.clone(), Rational::zero())),
            [a, b] => Some(Cyclotomic::new(a.clone(), b.clone())),
            _ => None,
        }
    }

    fn repr(&self) -> Vec<Vec<Rational>> {
        // Multiplication by a + b*w on the basis (1, w):
        //   (a + b w) * 1 = a + b w,   (a + b w) * w = -b + (a - b) w.
        vec![
            vec![self.a.clone(), -self.b.clone()],
            vec![self.b.clone(), &self.a - &self.b],
        ]
    }
}

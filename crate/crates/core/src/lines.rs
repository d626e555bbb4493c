//! Lines on smooth cubic surfaces: exact projective points and lines, the
//! 27 lines of the Fermat cubic over Q(w), Eckardt point detection, the
//! Schlafli blow-up model of a generic cubic, and the tangency
//! classification of surface points against the Hessian quartic.

use crate::exact::{fmat, Cyclotomic, Field, Rational};
use crate::poly::{hessian_det, CubicSurface, MultiPoly};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LineError {
    /// A projective point needs a nonzero coordinate vector.
    ZeroVector,
    /// A line needs two distinct spanning points.
    IdenticalPoints,
    /// Two entries of a line list describe the same line.
    DuplicateLines { i: usize, j: usize },
    /// More than three of the listed lines pass through one point, which
    /// cannot happen on a smooth cubic surface.
    ConcurrentLines { count: usize, point: String },
    /// Tangency classification asked at a point off the surface.
    NotOnSurface { point: String },
    /// Tangency classification asked at a singular point of the surface.
    SingularPoint { point: String },
}

impl fmt::Display for LineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LineError::ZeroVector => write!(f, "projective point has all coordinates zero"),
            LineError::IdenticalPoints => {
                write!(f, "line through two identical points is undefined")
            }
            LineError::DuplicateLines { i, j } => {
                write!(f, "lines {i} and {j} are identical")
            }
            LineError::ConcurrentLines { count, point } => {
                write!(f, "{count} lines concurrent at {point} (at most 3 allowed)")
            }
            LineError::NotOnSurface { point } => {
                write!(f, "point {point} does not lie on the surface")
            }
            LineError::SingularPoint { point } => {
                write!(f, "surface is singular at {point}")
            }
        }
    }
}

impl std::error::Error for LineError {}

/// A point of P^3 with exact coordinates, normalized so the first nonzero
/// coordinate is 1; equality of normalized points is equality in P^3.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ProjPoint<K: Field> {
    coords: Vec<K>,
}

impl<K: Field> ProjPoint<K> {
    pub fn new(coords: Vec<K>) -> Result<Self, LineError> {
        assert_eq!(coords.len(), 4, "points live in P^3");
        let lead = coords.iter().find(|c| !c.is_zero()).cloned();
        let Some(lead) = lead else {
            return Err(LineError::ZeroVector);
        };
        let inv = lead.inv().expect("nonzero field element");
        let coords = coords.into_iter().map(|c| c * inv.clone()).collect();
        Ok(ProjPoint { coords })
    }

    pub fn from_ints(coords: [i64; 4]) -> Result<Self, LineError> {
        ProjPoint::new(coords.iter().map(|&c| K::from_int(c)).collect())
    }

    pub fn coords(&self) -> &[K] {
        &self.coords
    }

    /// Indices of the vanishing coordinates.
    pub fn zero_coords(&self) -> Vec<usize> {
        (0..4).filter(|&i| self.coords[i].is_zero()).collect()
    }

    /// Applies a field endomorphism coordinatewise (e.g. Galois
    /// conjugation); renormalizes.
    pub fn map<F: Fn(&K) -> K>(&self, f: F) -> ProjPoint<K> {
        ProjPoint::new(self.coords.iter().map(f).collect())
            .expect("endomorphism of a field keeps nonzero vectors nonzero")
    }
}

impl<K: Field> fmt::Display for ProjPoint<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, " : ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl<K: Field> fmt::Debug for ProjPoint<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A line in P^3, stored as the reduced row echelon basis of its spanning
/// plane in K^4; the echelon form is a canonical representative, so derived
/// equality is equality of lines.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct ProjLine<K: Field> {
    basis: [Vec<K>; 2],
}

impl<K: Field> ProjLine<K> {
    pub fn through(p: &ProjPoint<K>, q: &ProjPoint<K>) -> Result<Self, LineError> {
        let mut rows = vec![p.coords().to_vec(), q.coords().to_vec()];
        let pivots = fmat::row_reduce(&mut rows);
        if pivots.len() != 2 {
            return Err(LineError::IdenticalPoints);
        }
        let mut it = rows.into_iter();
        let basis = [it.next().unwrap(), it.next().unwrap()];
        Ok(ProjLine { basis })
    }

    pub fn basis(&self) -> &[Vec<K>; 2] {
        &self.basis
    }

    /// Two points spanning the line (echelon basis rows as points).
    pub fn spanning_points(&self) -> [ProjPoint<K>; 2] {
        [
            ProjPoint::new(self.basis[0].clone()).expect("basis rows are nonzero"),
            ProjPoint::new(self.basis[1].clone()).expect("basis rows are nonzero"),
        ]
    }

    pub fn contains(&self, p: &ProjPoint<K>) -> bool {
        let stacked = vec![
            self.basis[0].clone(),
            self.basis[1].clone(),
            p.coords().to_vec(),
        ];
        fmat::rank(&stacked) == 2
    }

    /// Applies a field endomorphism entrywise and re-canonicalizes.
    pub fn map<F: Fn(&K) -> K>(&self, f: F) -> ProjLine<K> {
        let p = ProjPoint::new(self.basis[0].iter().map(&f).collect()).unwrap();
        let q = ProjPoint::new(self.basis[1].iter().map(&f).collect()).unwrap();
        ProjLine::through(&p, &q).expect("injective maps preserve distinctness")
    }

    /// Whether the line lies on the surface: the restriction of the cubic
    /// to a parameterization of the line vanishes identically.
    pub fn lies_on(&self, surface: &CubicSurface<K>) -> bool {
        // Substitute x_i = basis0_i * u + basis1_i * v and check the result
        // is the zero polynomial in (u, v).
        let args: Vec<MultiPoly<K>> = (0..4)
            .map(|i| {
                let u = MultiPoly::var(2, 0).scale(&self.basis[0][i]);
                let v = MultiPoly::var(2, 1).scale(&self.basis[1][i]);
                u.add(&v)
            })
            .collect();
        surface.f().subst(&args).is_zero()
    }
}

/// Mutual position of two lines in P^3.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum LineRelation<K: Field> {
    Identical,
    Skew,
    Meet(ProjPoint<K>),
}

pub fn line_relation<K: Field>(a: &ProjLine<K>, b: &ProjLine<K>) -> LineRelation<K> {
    let stacked = vec![
        a.basis[0].clone(),
        a.basis[1].clone(),
        b.basis[0].clone(),
        b.basis[1].clone(),
    ];
    match fmat::rank(&stacked) {
        2 => LineRelation::Identical,
        4 => LineRelation::Skew,
        3 => {
            // A common point x*a0 + y*a1 = z*b0 + w*b1: solve for (x,y,z,w)
            // in the kernel of the 4x4 matrix with columns a0, a1, -b0, -b1.
            let m: Vec<Vec<K>> = (0..4)
                .map(|r| {
                    vec![
                        a.basis[0][r].clone(),
                        a.basis[1][r].clone(),
                        -b.basis[0][r].clone(),
                        -b.basis[1][r].clone(),
                    ]
                })
                .collect();
            let ker = fmat::kernel(&m);
            assert_eq!(ker.len(), 1, "rank-3 stack leaves a line of solutions");
            let x = &ker[0][0];
            let y = &ker[0][1];
            let coords: Vec<K> = (0..4)
                .map(|r| {
                    a.basis[0][r].clone() * x.clone() + a.basis[1][r].clone() * y.clone()
                })
                .collect();
            let p = ProjPoint::new(coords)
                .expect("meet of distinct lines is a genuine point");
            LineRelation::Meet(p)
        }
        r => unreachable!("stacked rank {r} out of range"),
    }
}

/// The 27 lines of the Fermat cubic x0^3 + x1^3 + x2^3 + x3^3 = 0.
///
/// For each of the three splittings {i,j} | {k,l} of the coordinates and
/// each pair of cube roots of unity (alpha, beta), the plane pair
/// `x_i + alpha x_j = 0`, `x_k + beta x_l = 0` cuts out a line of the
/// surface. Order: splittings 01|23, 02|13, 03|12, then alpha, then beta,
/// each running through `1, w, w^2`.
pub fn fermat_lines() -> Vec<ProjLine<Cyclotomic>> {
    let roots = [
        Cyclotomic::one(),
        Cyclotomic::omega(),
        Cyclotomic::omega() * Cyclotomic::omega(),
    ];
    let splits = [[0usize, 1, 2, 3], [0, 2, 1, 3], [0, 3, 1, 2]];
    let mut lines = Vec::with_capacity(27);
    for [i, j, k, l] in splits {
        for alpha in &roots {
            for beta in &roots {
                let mut p = vec![Cyclotomic::zero(); 4];
                p[i] = -alpha.clone();
                p[j] = Cyclotomic::one();
                let mut q = vec![Cyclotomic::zero(); 4];
                q[k] = -beta.clone();
                q[l] = Cyclotomic::one();
                let p = ProjPoint::new(p).unwrap();
                let q = ProjPoint::new(q).unwrap();
                lines.push(ProjLine::through(&p, &q).unwrap());
            }
        }
    }
    lines
}

/// An Eckardt point: a surface point where three of the lines meet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EckardtRecord<K: Field> {
    pub point: ProjPoint<K>,
    /// Indices of the three concurrent lines.
    pub lines: Vec<usize>,
    /// Coordinate positions where the point vanishes.
    pub zero_coords: Vec<usize>,
}

/// Incidence structure of a configuration of lines: which pairs meet,
/// whether their common point is an Eckardt point, and the Eckardt points
/// themselves.
#[derive(Clone, Debug)]
pub struct IncidenceData<K: Field> {
    pub n_lines: usize,
    /// Symmetric adjacency; diagonal is false.
    pub meets: Vec<Vec<bool>>,
    /// For meeting pairs: the common point is an Eckardt point.
    pub meet_at_eckardt: Vec<Vec<bool>>,
    pub eckardt: Vec<EckardtRecord<K>>,
    /// For each line, the Eckardt records lying on it.
    pub eckardt_on_line: Vec<Vec<usize>>,
}

impl<K: Field> IncidenceData<K> {
    /// Number of unordered meeting pairs.
    pub fn edge_count(&self) -> usize {
        let n = self.n_lines;
        (0..n)
            .map(|i| (i + 1..n).filter(|&j| self.meets[i][j]).count())
            .sum()
    }

    /// Number of unordered triples of pairwise-meeting lines.
    pub fn triangle_count(&self) -> usize {
        let n = self.n_lines;
        let mut count = 0;
        for i in 0..n {
            for j in i + 1..n {
                if !self.meets[i][j] {
                    continue;
                }
                for k in j + 1..n {
                    if self.meets[i][k] && self.meets[j][k] {
                        count += 1;
                    }
                }
            }
        }
        count
    }

    pub fn degree(&self, i: usize) -> usize {
        self.meets[i].iter().filter(|&&m| m).count()
    }
}

/// Computes the incidence structure of a list of pairwise distinct lines.
/// Points where three lines meet become Eckardt records; four or more
/// concurrent lines are rejected.
pub fn incidence_from_lines<K: Field>(
    lines: &[ProjLine<K>],
) -> Result<IncidenceData<K>, LineError> {
    let n = lines.len();
    let mut meets = vec![vec![false; n]; n];
    let mut meet_point: BTreeMap<(usize, usize), ProjPoint<K>> = BTreeMap::new();
    for i in 0..n {
        for j in i + 1..n {
            match line_relation(&lines[i], &lines[j]) {
                LineRelation::Identical => {
                    return Err(LineError::DuplicateLines { i, j });
                }
                LineRelation::Skew => {}
                LineRelation::Meet(p) => {
                    meets[i][j] = true;
                    meets[j][i] = true;
                    meet_point.insert((i, j), p);
                }
            }
        }
    }
    // Group meeting pairs by their common point.
    let mut through: BTreeMap<ProjPoint<K>, Vec<usize>> = BTreeMap::new();
    for ((i, j), p) in &meet_point {
        let entry = through.entry(p.clone()).or_default();
        for idx in [*i, *j] {
            if !entry.contains(&idx) {
                entry.push(idx);
            }
        }
    }
    let mut eckardt = Vec::new();
    for (p, line_ids) in through {
        match line_ids.len() {
            2 => {}
            3 => {
                let zero_coords = p.zero_coords();
                let mut lines = line_ids;
                lines.sort_unstable();
                eckardt.push(EckardtRecord {
                    point: p,
                    lines,
                    zero_coords,
                });
            }
            count => {
                return Err(LineError::ConcurrentLines {
                    count,
                    point: p.to_string(),
                });
            }
        }
    }
    eckardt.sort_by(|a, b| a.lines.cmp(&b.lines));
    let mut eckardt_on_line = vec![Vec::new(); n];
    let mut meet_at_eckardt = vec![vec![false; n]; n];
    for (e_idx, rec) in eckardt.iter().enumerate() {
        for &li in &rec.lines {
            eckardt_on_line[li].push(e_idx);
        }
        for a in 0..rec.lines.len() {
            for b in a + 1..rec.lines.len() {
                meet_at_eckardt[rec.lines[a]][rec.lines[b]] = true;
                meet_at_eckardt[rec.lines[b]][rec.lines[a]] = true;
            }
        }
    }
    Ok(IncidenceData {
        n_lines: n,
        meets,
        meet_at_eckardt,
        eckardt,
        eckardt_on_line,
    })
}

/// Line labels in the blow-up model of a cubic surface: the six
/// exceptional curves `E_i`, the strict transforms `F_ij` of the lines
/// through two of the six points, and the conics `G_i` through five of
/// them. Indices are 1-based.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SchlafliLine {
    E(usize),
    F(usize, usize),
    G(usize),
}

impl fmt::Display for SchlafliLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SchlafliLine::E(i) => write!(f, "E{i}"),
            SchlafliLine::F(i, j) => write!(f, "F{i}{j}"),
            SchlafliLine::G(i) => write!(f, "G{i}"),
        }
    }
}

/// The 27 labels in a fixed order: E1..E6, F12..F56 lexicographically,
/// G1..G6.
pub fn schlafli_lines() -> Vec<SchlafliLine> {
    let mut v: Vec<SchlafliLine> = (1..=6).map(SchlafliLine::E).collect();
    for i in 1..=6 {
        for j in i + 1..=6 {
            v.push(SchlafliLine::F(i, j));
        }
    }
    v.extend((1..=6).map(SchlafliLine::G));
    v
}

/// Intersection number of two of the 27 lines in the blow-up model:
/// self-intersection -1, and 0 or 1 for distinct lines.
pub fn schlafli_pairing(a: &SchlafliLine, b: &SchlafliLine) -> i64 {
    use SchlafliLine::*;
    if a == b {
        return -1;
    }
    match (*a, *b) {
        (E(_), E(_)) | (G(_), G(_)) => 0,
        (E(i), G(j)) | (G(j), E(i)) => i64::from(i != j),
        (E(i), F(j, k)) | (F(j, k), E(i)) => i64::from(i == j || i == k),
        (G(i), F(j, k)) | (F(j, k), G(i)) => i64::from(i == j || i == k),
        (F(i, j), F(k, l)) => {
            let shared = usize::from(i == k || i == l) + usize::from(j == k || j == l);
            i64::from(shared == 0)
        }
    }
}

/// Incidence structure of a cubic surface with no Eckardt points, built
/// from the blow-up model: lines meet exactly when their intersection
/// number is 1.
pub fn generic_incidence() -> IncidenceData<Rational> {
    let labels = schlafli_lines();
    let n = labels.len();
    let mut meets = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i != j && schlafli_pairing(&labels[i], &labels[j]) == 1 {
                meets[i][j] = true;
            }
        }
    }
    IncidenceData {
        n_lines: n,
        meets,
        meet_at_eckardt: vec![vec![false; n]; n],
        eckardt: Vec::new(),
        eckardt_on_line: vec![Vec::new(); n],
    }
}

/// How the tangent plane touches the surface at a point, measured by the
/// quadratic term of the local expansion: two distinct tangent directions
/// of second-order contact, one doubled direction, or a whole pencil.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PointClass {
    TwoPoints,
    OnePoint,
    WholeLine,
}

impl fmt::Display for PointClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointClass::TwoPoints => write!(f, "two-points"),
            PointClass::OnePoint => write!(f, "one-point"),
            PointClass::WholeLine => write!(f, "whole-line"),
        }
    }
}

/// Classifies a smooth surface point by the discriminant of the quadratic
/// form of tangent directions with second-order contact.
///
/// The point is moved to `[1:0:0:0]` and the tangent plane to `x3 = 0`;
/// the defining form becomes `x0^2 x3 + x0 q(x1, x2, x3) + c(x1, x2, x3)`
/// and the class is read off the binary quadric `q(x1, x2, 0)`:
/// nonzero discriminant gives [`PointClass::TwoPoints`], zero discriminant
/// with `q(x1, x2, 0)` nonzero gives [`PointClass::OnePoint`], and
/// `q(x1, x2, 0) = 0` gives [`PointClass::WholeLine`].
pub fn classify_point<K: Field>(
    surface: &CubicSurface<K>,
    p: &ProjPoint<K>,
) -> Result<PointClass, LineError> {
    if !surface.f().eval(p.coords()).is_zero() {
        return Err(LineError::NotOnSurface {
            point: p.to_string(),
        });
    }
    // M1: invertible with first column p; the other columns are the
    // standard basis vectors away from p's leading coordinate.
    let lead = p
        .coords()
        .iter()
        .position(|c| !c.is_zero())
        .expect("normalized point is nonzero");
    let mut m1 = vec![vec![K::zero(); 4]; 4];
    for r in 0..4 {
        m1[r][0] = p.coords()[r].clone();
    }
    let mut col = 1;
    for r in 0..4 {
        if r != lead {
            m1[r][col] = K::one();
            col += 1;
        }
    }
    let g = surface
        .f()
        .linear_change(&m1)
        .expect("column-completed matrix is invertible");
    // Gradient form: l = sum coeff(x0^2 x_i) x_i over i = 1..3. It vanishes
    // exactly when the surface is singular at p.
    let mut ell = [K::zero(), K::zero(), K::zero()];
    for (i, c) in ell.iter_mut().enumerate() {
        let mut e = [0u32; 4];
        e[0] = 2;
        e[i + 1] = 1;
        *c = g.coeff(&e);
    }
    let Some(m) = ell.iter().position(|c| !c.is_zero()) else {
        return Err(LineError::SingularPoint {
            point: p.to_string(),
        });
    };
    // N: invertible fixing x0 with l . N = (0, 0, 1), so the tangent plane
    // becomes x3 = 0.
    let mut n = vec![vec![K::zero(); 4]; 4];
    n[0][0] = K::one();
    n[m + 1][3] = ell[m].inv().expect("pivot entry is nonzero");
    let mut col = 1;
    for i in 0..3 {
        if i != m {
            n[i + 1][col] = K::one();
            n[m + 1][col] = -(ell[i].clone() * ell[m].inv().unwrap());
            col += 1;
        }
    }
    let h = g
        .linear_change(&n)
        .expect("kernel-completed matrix is invertible");
    let c20 = h.coeff(&[1, 2, 0, 0]);
    let c11 = h.coeff(&[1, 1, 1, 0]);
    let c02 = h.coeff(&[1, 0, 2, 0]);
    let disc = c11.clone() * c11.clone()
        - K::from_int(4) * c20.clone() * c02.clone();
    if !disc.is_zero() {
        Ok(PointClass::TwoPoints)
    } else if !(c20.is_zero() && c11.is_zero() && c02.is_zero()) {
        Ok(PointClass::OnePoint)
    } else {
        Ok(PointClass::WholeLine)
    }
}

/// One entry of a branch-locus consistency sweep: the tangency class of a
/// surface point against the vanishing of the Hessian quartic there.
#[derive(Clone, Debug)]
pub struct BranchCheck<K: Field> {
    pub point: ProjPoint<K>,
    pub class: PointClass,
    pub hessian_vanishes: bool,
}

impl<K: Field> BranchCheck<K> {
    /// The double cover branched along the Hessian quartic has one point
    /// over p exactly when p is on the branch locus: the classification
    /// must degenerate precisely there.
    pub fn consistent(&self) -> bool {
        (self.class != PointClass::TwoPoints) == self.hessian_vanishes
    }
}

/// Classifies each point and compares with the Hessian quartic's vanishing.
pub fn branch_consistency<K: Field>(
    surface: &CubicSurface<K>,
    points: &[ProjPoint<K>],
) -> Result<Vec<BranchCheck<K>>, LineError> {
    let hessian = hessian_det(surface);
    points
        .iter()
        .map(|p| {
            let class = classify_point(surface, p)?;
            let hessian_vanishes = hessian.eval(p.coords()).is_zero();
            Ok(BranchCheck {
                point: p.clone(),
                class,
                hessian_vanishes,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat_int;

    fn qpoint(c: [i64; 4]) -> ProjPoint<Rational> {
        ProjPoint::from_ints(c).unwrap()
    }

    fn wpoint(c: [(i64, i64); 4]) -> ProjPoint<Cyclotomic> {
        ProjPoint::new(
            c.iter()
                .map(|&(a, b)| Cyclotomic::from_ints(a, b))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn point_normalization_and_errors() {
        let p = qpoint([0, 2, 4, -6]);
        assert_eq!(
            p.coords(),
            &[rat_int(0), rat_int(1), rat_int(2), rat_int(-3)]
        );
        assert_eq!(p.zero_coords(), vec![0]);
        assert_eq!(
            ProjPoint::<Rational>::from_ints([0, 0, 0, 0]),
            Err(LineError::ZeroVector)
        );
        // Scalar multiples are equal as projective points.
        assert_eq!(qpoint([1, 2, 3, 4]), qpoint([2, 4, 6, 8]));
    }

    #[test]
    fn line_construction_and_membership() {
        let p = qpoint([1, 0, 0, 0]);
        let q = qpoint([0, 1, 0, 0]);
        let l = ProjLine::through(&p, &q).unwrap();
        assert!(l.contains(&p));
        assert!(l.contains(&q));
        assert!(l.contains(&qpoint([1, 5, 0, 0])));
        assert!(!l.contains(&qpoint([1, 0, 1, 0])));
        assert_eq!(
            ProjLine::through(&p, &qpoint([3, 0, 0, 0])),
            Err(LineError::IdenticalPoints)
        );
        // The same line through different spanning points compares equal.
        let l2 = ProjLine::through(&qpoint([1, 1, 0, 0]), &qpoint([1, -1, 0, 0])).unwrap();
        assert_eq!(l, l2);
    }

    #[test]
    fn line_relations() {
        let xy = ProjLine::through(&qpoint([1, 0, 0, 0]), &qpoint([0, 1, 0, 0])).unwrap();
        let xz = ProjLine::through(&qpoint([1, 0, 0, 0]), &qpoint([0, 0, 1, 0])).unwrap();
        let zw = ProjLine::through(&qpoint([0, 0, 1, 0]), &qpoint([0, 0, 0, 1])).unwrap();
        assert_eq!(line_relation(&xy, &xy), LineRelation::Identical);
        assert_eq!(line_relation(&xy, &zw), LineRelation::Skew);
        assert_eq!(
            line_relation(&xy, &xz),
            LineRelation::Meet(qpoint([1, 0, 0, 0]))
        );
        // An affine pair meeting away from the coordinate frame.
        let a = ProjLine::through(&qpoint([1, 0, 1, 2]), &qpoint([0, 1, 1, 1])).unwrap();
        let b = ProjLine::through(&qpoint([1, 1, 2, 3]), &qpoint([1, 0, 0, 0])).unwrap();
        match line_relation(&a, &b) {
            LineRelation::Meet(p) => {
                assert!(a.contains(&p));
                assert!(b.contains(&p));
            }
            other => panic!("expected a meet, got {other:?}"),
        }
    }

    #[test]
    fn fermat_lines_lie_on_the_surface() {
        let fermat = CubicSurface::<Cyclotomic>::fermat();
        let lines = fermat_lines();
        assert_eq!(lines.len(), 27);
        for (i, l) in lines.iter().enumerate() {
            assert!(l.lies_on(&fermat), "line {i} not on the surface");
            for m in &lines[..i] {
                assert_ne!(l, m, "lines must be pairwise distinct");
            }
        }
        // A line off the surface is rejected by the same check.
        let bogus = ProjLine::through(
            &wpoint([(1, 0), (0, 0), (0, 0), (0, 0)]),
            &wpoint([(0, 0), (1, 0), (0, 0), (0, 0)]),
        )
        .unwrap();
        assert!(!bogus.lies_on(&fermat));
    }

    #[test]
    fn fermat_incidence_statistics() {
        let inc = incidence_from_lines(&fermat_lines()).unwrap();
        assert_eq!(inc.n_lines, 27);
        for i in 0..27 {
            assert_eq!(inc.degree(i), 10, "every line meets exactly 10 others");
        }
        assert_eq!(inc.edge_count(), 135);
        assert_eq!(inc.triangle_count(), 45);
    }

    #[test]
    fn fermat_eckardt_points() {
        let inc = incidence_from_lines(&fermat_lines()).unwrap();
        assert_eq!(inc.eckardt.len(), 18);
        for rec in &inc.eckardt {
            assert_eq!(rec.lines.len(), 3);
            assert_eq!(rec.zero_coords.len(), 2, "two coordinates vanish");
            // The three lines through an Eckardt point meet pairwise there.
            for a in 0..3 {
                for b in a + 1..3 {
                    assert!(inc.meets[rec.lines[a]][rec.lines[b]]);
                    assert!(inc.meet_at_eckardt[rec.lines[a]][rec.lines[b]]);
                }
            }
        }
        for li in 0..27 {
            assert_eq!(
                inc.eckardt_on_line[li].len(),
                2,
                "each line carries exactly two Eckardt points"
            );
        }
        // One explicit Eckardt point: [1 : -1 : 0 : 0].
        let target = wpoint([(1, 0), (-1, 0), (0, 0), (0, 0)]);
        assert!(inc.eckardt.iter().any(|r| r.point == target));
    }

    #[test]
    fn fermat_incidence_is_conjugation_invariant() {
        let lines = fermat_lines();
        let conj: Vec<ProjLine<Cyclotomic>> =
            lines.iter().map(|l| l.map(Cyclotomic::conj)).collect();
        // Conjugation permutes the 27 lines.
        let perm: Vec<usize> = conj
            .iter()
            .map(|c| lines.iter().position(|l| l == c).expect("permutation"))
            .collect();
        let mut sorted = perm.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, (0..27).collect::<Vec<_>>());
        // The permutation preserves the meet relation.
        let inc = incidence_from_lines(&lines).unwrap();
        for i in 0..27 {
            for j in 0..27 {
                assert_eq!(inc.meets[i][j], inc.meets[perm[i]][perm[j]]);
            }
        }
    }

    #[test]
    fn generic_incidence_statistics() {
        let inc = generic_incidence();
        assert_eq!(inc.n_lines, 27);
        for i in 0..27 {
            assert_eq!(inc.degree(i), 10);
        }
        assert_eq!(inc.edge_count(), 135);
        assert_eq!(inc.triangle_count(), 45);
        assert!(inc.eckardt.is_empty());
    }

    #[test]
    fn schlafli_pairing_rules() {
        use SchlafliLine::*;
        assert_eq!(schlafli_pairing(&E(1), &E(1)), -1);
        assert_eq!(schlafli_pairing(&E(1), &E(2)), 0);
        assert_eq!(schlafli_pairing(&E(1), &F(1, 2)), 1);
        assert_eq!(schlafli_pairing(&E(3), &F(1, 2)), 0);
        assert_eq!(schlafli_pairing(&E(1), &G(1)), 0);
        assert_eq!(schlafli_pairing(&E(1), &G(2)), 1);
        assert_eq!(schlafli_pairing(&F(1, 2), &F(3, 4)), 1);
        assert_eq!(schlafli_pairing(&F(1, 2), &F(1, 3)), 0);
        assert_eq!(schlafli_pairing(&F(1, 2), &G(1)), 1);
        assert_eq!(schlafli_pairing(&F(1, 2), &G(3)), 0);
        assert_eq!(schlafli_pairing(&G(1), &G(2)), 0);
        // Symmetry across the whole label set.
        let labels = schlafli_lines();
        assert_eq!(labels.len(), 27);
        for a in &labels {
            for b in &labels {
                assert_eq!(schlafli_pairing(a, b), schlafli_pairing(b, a));
            }
        }
    }

    #[test]
    fn four_concurrent_lines_are_rejected() {
        // Four lines through [1:0:0:0] inside the plane x3 = 0.
        let apex = qpoint([1, 0, 0, 0]);
        let dirs = [[0, 1, 0, 0], [0, 0, 1, 0], [0, 1, 1, 0], [0, 1, -1, 0]];
        let lines: Vec<ProjLine<Rational>> = dirs
            .iter()
            .map(|&d| ProjLine::through(&apex, &qpoint(d)).unwrap())
            .collect();
        match incidence_from_lines(&lines) {
            Err(LineError::ConcurrentLines { count: 4, .. }) => {}
            other => panic!("expected a concurrency error, got {other:?}"),
        }
    }

    #[test]
    fn duplicate_lines_are_rejected() {
        let l1 = ProjLine::through(&qpoint([1, 0, 0, 0]), &qpoint([0, 1, 0, 0])).unwrap();
        let l2 = ProjLine::through(&qpoint([1, 1, 0, 0]), &qpoint([1, 2, 0, 0])).unwrap();
        assert!(matches!(
            incidence_from_lines(&[l1, l2]),
            Err(LineError::DuplicateLines { i: 0, j: 1 })
        ));
    }

    #[test]
    fn classification_examples() {
        // Fermat at a point with nonvanishing Hessian: two tangent
        // directions of second-order contact.
        let fermat = CubicSurface::<Rational>::fermat();
        let generic = qpoint([1, -1, 1, -1]);
        assert_eq!(classify_point(&fermat, &generic), Ok(PointClass::TwoPoints));

        // Fermat at an Eckardt point: the tangent plane section is three
        // concurrent lines, so every direction degenerates.
        assert_eq!(
            classify_point(&fermat, &qpoint([1, -1, 0, 0])),
            Ok(PointClass::WholeLine)
        );

        // A surface with a doubled contact direction at [1:0:0:0].
        let f = MultiPoly::from_terms(
            4,
            vec![
                (vec![2, 0, 0, 1], rat_int(1)),
                (vec![1, 0, 2, 0], rat_int(1)),
                (vec![0, 2, 1, 0], rat_int(1)),
                (vec![0, 3, 0, 0], rat_int(1)),
                (vec![0, 0, 0, 3], rat_int(1)),
            ],
        );
        let cusp = CubicSurface::new(f).unwrap();
        assert_eq!(
            classify_point(&cusp, &qpoint([1, 0, 0, 0])),
            Ok(PointClass::OnePoint)
        );
    }

    #[test]
    fn classification_rejects_bad_points() {
        let fermat = CubicSurface::<Rational>::fermat();
        assert!(matches!(
            classify_point(&fermat, &qpoint([1, 1, 1, 1])),
            Err(LineError::NotOnSurface { .. })
        ));
        // x0^3 = 0 is singular everywhere along x0 = 0.
        let cone =
            CubicSurface::new(MultiPoly::from_terms(4, vec![(vec![3, 0, 0, 0], rat_int(1))]))
                .unwrap();
        assert!(matches!(
            classify_point(&cone, &qpoint([0, 1, 0, 0])),
            Err(LineError::SingularPoint { .. })
        ));
    }

    #[test]
    fn classification_is_coordinate_free() {
        // Moving the surface by a coordinate change moves the class along.
        let fermat = CubicSurface::<Rational>::fermat();
        let m: Vec<Vec<Rational>> = vec![
            vec![rat_int(1), rat_int(2), rat_int(0), rat_int(1)],
            vec![rat_int(0), rat_int(1), rat_int(1), rat_int(0)],
            vec![rat_int(1), rat_int(0), rat_int(1), rat_int(0)],
            vec![rat_int(0), rat_int(1), rat_int(0), rat_int(1)],
        ];
        let moved = fermat.linear_change(&m).unwrap();
        let m_inv = fmat::invert(&m).unwrap();
        // moved(x) = fermat(M x), so a Fermat point q corresponds to the
        // point M^{-1} q of the moved surface.
        for coords in [[1i64, -1, 1, -1], [1, -1, 0, 0], [0, 0, 1, -1]] {
            let q = qpoint(coords);
            let p = ProjPoint::new(fmat::mat_vec(&m_inv, q.coords())).unwrap();
            assert_eq!(
                classify_point(&moved, &p).unwrap(),
                classify_point(&fermat, &q).unwrap()
            );
        }
    }

    #[test]
    fn branch_sweep_on_fermat_over_q_omega() {
        let fermat = CubicSurface::<Cyclotomic>::fermat();
        let inc = incidence_from_lines(&fermat_lines()).unwrap();
        // All 18 Eckardt points plus a family of honest two-point fibers.
        let mut points: Vec<ProjPoint<Cyclotomic>> =
            inc.eckardt.iter().map(|r| r.point.clone()).collect();
        for u in [(1, 0), (2, 0), (1, 1), (0, 1), (-3, 2)] {
            points.push(wpoint([(1, 0), (-1, 0), u, (-u.0, -u.1)]));
        }
        let checks = branch_consistency(&fermat, &points).unwrap();
        assert!(checks.iter().all(BranchCheck::consistent));
        assert!(checks[..18]
            .iter()
            .all(|c| c.class == PointClass::WholeLine && c.hessian_vanishes));
        assert!(checks[18..]
            .iter()
            .all(|c| c.class == PointClass::TwoPoints && !c.hessian_vanishes));
    }
}

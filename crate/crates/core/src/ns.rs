//! Néron–Severi lattices of the double cover of a smooth cubic surface
//! branched over its Hessian.
//!
//! Curve classes live in formal coordinates over a generator set: two
//! classes `L+`, `L-` per line of the cubic (the two components of the
//! line's preimage), one class per Eckardt point (the exceptional curve
//! over it), and optionally four coordinate-plane classes for the Fermat
//! surface, whose Hessian is the union of the coordinate planes. The
//! intersection pairing is encoded by an integer Gram matrix; equality of
//! classes in the Néron–Severi group is equality modulo the radical of
//! that pairing. Sublattice invariants (rank, determinant, signature,
//! invariant factors, quotient torsion) are computed exactly from spans.

use crate::exact::{sym_invariants, IntMatrix, SymFormInvariants};
use crate::lines::IncidenceData;
use crate::exact::Field;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::fmt;

/// A formal integer combination of the generators, as a coefficient vector.
pub type CurveClass = Vec<i64>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NsError {
    /// The incidence data violates its own invariants.
    InconsistentIncidence(String),
    /// A hyperplane class needs three pairwise-meeting lines.
    NotCoplanar { i: usize, j: usize },
    /// No three pairwise-meeting lines exist in the configuration.
    NoTritangentTriple,
    /// Line index out of range.
    LineOutOfRange { line: usize, n_lines: usize },
    /// Quotient of spans over different Gram models.
    ModelMismatch,
    /// A generator of the would-be sublattice is not contained in the
    /// enclosing span (modulo the radical).
    NotContained { generator: usize },
}

impl fmt::Display for NsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NsError::InconsistentIncidence(why) => {
                write!(f, "inconsistent incidence data: {why}")
            }
            NsError::NotCoplanar { i, j } => {
                write!(f, "lines {i} and {j} do not meet; not a tritangent triple")
            }
            NsError::NoTritangentTriple => {
                write!(f, "no three pairwise-meeting lines in the configuration")
            }
            NsError::LineOutOfRange { line, n_lines } => {
                write!(f, "line index {line} out of range (have {n_lines})")
            }
            NsError::ModelMismatch => {
                write!(f, "spans over different Gram models cannot be compared")
            }
            NsError::NotContained { generator } => {
                write!(f, "generator {generator} lies outside the enclosing span")
            }
        }
    }
}

impl std::error::Error for NsError {}

/// Ordered labels of the formal generators: `L+` classes, then `L-`
/// classes, then Eckardt classes, then (optionally) the four
/// coordinate-plane classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSet {
    pub n_lines: usize,
    pub n_eckardt: usize,
    pub with_planes: bool,
    pub labels: Vec<String>,
}

impl GeneratorSet {
    fn build(n_lines: usize, n_eckardt: usize, with_planes: bool) -> Self {
        let mut labels = Vec::new();
        for i in 0..n_lines {
            labels.push(format!("L+{i}"));
        }
        for i in 0..n_lines {
            labels.push(format!("L-{i}"));
        }
        for j in 0..n_eckardt {
            labels.push(format!("E{j}"));
        }
        if with_planes {
            for k in 0..4 {
                labels.push(format!("D{k}"));
            }
        }
        GeneratorSet {
            n_lines,
            n_eckardt,
            with_planes,
            labels,
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Index of the `L+` class of line `i`.
    pub fn lplus(&self, i: usize) -> usize {
        debug_assert!(i < self.n_lines);
        i
    }

    /// Index of the `L-` class of line `i`.
    pub fn lminus(&self, i: usize) -> usize {
        debug_assert!(i < self.n_lines);
        self.n_lines + i
    }

    /// Index of the class over Eckardt point `j`.
    pub fn eckardt(&self, j: usize) -> usize {
        debug_assert!(j < self.n_eckardt);
        2 * self.n_lines + j
    }

    /// Index of the coordinate-plane class `D_k`.
    pub fn plane(&self, k: usize) -> usize {
        debug_assert!(self.with_planes && k < 4);
        2 * self.n_lines + self.n_eckardt + k
    }
}

/// The generator set with its symmetric integer Gram matrix, plus the
/// incidence facts needed to form pullback classes.
#[derive(Clone, Debug)]
pub struct GramModel {
    pub set: GeneratorSet,
    pub gram: IntMatrix,
    pub meets: Vec<Vec<bool>>,
    pub eckardt_on_line: Vec<Vec<usize>>,
}

fn validate_incidence<K: Field>(inc: &IncidenceData<K>) -> Result<(), NsError> {
    let n = inc.n_lines;
    let shape_ok = inc.meets.len() == n
        && inc.meets.iter().all(|r| r.len() == n)
        && inc.meet_at_eckardt.len() == n
        && inc.meet_at_eckardt.iter().all(|r| r.len() == n)
        && inc.eckardt_on_line.len() == n;
    if !shape_ok {
        return Err(NsError::InconsistentIncidence(
            "matrix shapes disagree with the line count".into(),
        ));
    }
    for i in 0..n {
        if inc.meets[i][i] {
            return Err(NsError::InconsistentIncidence(format!(
                "line {i} marked as meeting itself"
            )));
        }
        for j in 0..n {
            if inc.meets[i][j] != inc.meets[j][i] {
                return Err(NsError::InconsistentIncidence(format!(
                    "meet relation not symmetric at ({i}, {j})"
                )));
            }
            if inc.meet_at_eckardt[i][j] && !inc.meets[i][j] {
                return Err(NsError::InconsistentIncidence(format!(
                    "lines {i}, {j} marked Eckardt-concurrent but not meeting"
                )));
            }
        }
    }
    let mut on_line = vec![Vec::new(); n];
    for (e_idx, rec) in inc.eckardt.iter().enumerate() {
        if rec.lines.len() != 3 {
            return Err(NsError::InconsistentIncidence(format!(
                "Eckardt record {e_idx} lists {} lines instead of 3",
                rec.lines.len()
            )));
        }
        for &li in &rec.lines {
            if li >= n {
                return Err(NsError::InconsistentIncidence(format!(
                    "Eckardt record {e_idx} references line {li} out of range"
                )));
            }
            on_line[li].push(e_idx);
        }
        for a in 0..3 {
            for b in a + 1..3 {
                if !inc.meet_at_eckardt[rec.lines[a]][rec.lines[b]] {
                    return Err(NsError::InconsistentIncidence(format!(
                        "lines {} and {} share Eckardt record {e_idx} but are \
                         not marked Eckardt-concurrent",
                        rec.lines[a], rec.lines[b]
                    )));
                }
            }
        }
        if rec.zero_coords.iter().any(|&c| c >= 4) {
            return Err(NsError::InconsistentIncidence(format!(
                "Eckardt record {e_idx} has a coordinate index out of range"
            )));
        }
    }
    if on_line != inc.eckardt_on_line {
        return Err(NsError::InconsistentIncidence(
            "per-line Eckardt lists disagree with the Eckardt records".into(),
        ));
    }
    Ok(())
}

/// Builds the Gram matrix of the intersection pairing on the cover from the
/// incidence data of the lines:
///
/// * `(L^a_i . L^a_i) = -3` and distinct same-sign classes pair to 0;
/// * `(L^+_i . L^-_i) = 2 - #{Eckardt points on line i}`;
/// * for distinct lines, `(L^+_i . L^-_j) = 1` exactly when the lines meet
///   at a point that is not an Eckardt point;
/// * Eckardt classes: self-pairing -2, pairing 1 with `L^{+/-}_i` when the
///   point lies on line `i`, 0 with each other;
/// * plane classes: `(D_k . D_l) = -3 delta`, `(D_k . L^{+/-}) = 0`, and
///   `(D_k . E) = 1` exactly when the Eckardt point's k-th coordinate
///   vanishes.
pub fn build_gram<K: Field>(
    inc: &IncidenceData<K>,
    with_planes: bool,
) -> Result<GramModel, NsError> {
    validate_incidence(inc)?;
    let nl = inc.n_lines;
    let ne = inc.eckardt.len();
    let set = GeneratorSet::build(nl, ne, with_planes);
    let n = set.len();
    let mut g = IntMatrix::zero(n, n);
    let put = |g: &mut IntMatrix, a: usize, b: usize, v: i64| {
        g.set(a, b, BigInt::from(v));
        g.set(b, a, BigInt::from(v));
    };
    for i in 0..nl {
        put(&mut g, set.lplus(i), set.lplus(i), -3);
        put(&mut g, set.lminus(i), set.lminus(i), -3);
        put(
            &mut g,
            set.lplus(i),
            set.lminus(i),
            2 - inc.eckardt_on_line[i].len() as i64,
        );
        for j in 0..nl {
            if i != j && inc.meets[i][j] && !inc.meet_at_eckardt[i][j] {
                put(&mut g, set.lplus(i), set.lminus(j), 1);
            }
        }
    }
    for (j, rec) in inc.eckardt.iter().enumerate() {
        put(&mut g, set.eckardt(j), set.eckardt(j), -2);
        for &li in &rec.lines {
            put(&mut g, set.lplus(li), set.eckardt(j), 1);
            put(&mut g, set.lminus(li), set.eckardt(j), 1);
        }
    }
    if with_planes {
        for k in 0..4 {
            put(&mut g, set.plane(k), set.plane(k), -3);
            for (j, rec) in inc.eckardt.iter().enumerate() {
                if rec.zero_coords.contains(&k) {
                    put(&mut g, set.plane(k), set.eckardt(j), 1);
                }
            }
        }
    }
    Ok(GramModel {
        set,
        gram: g,
        meets: inc.meets.clone(),
        eckardt_on_line: inc.eckardt_on_line.clone(),
    })
}

fn to_big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

impl GramModel {
    pub fn n(&self) -> usize {
        self.set.len()
    }

    /// The class of a single generator.
    pub fn unit(&self, idx: usize) -> CurveClass {
        let mut v = vec![0; self.n()];
        v[idx] = 1;
        v
    }

    /// Intersection pairing of two classes.
    pub fn pair(&self, a: &[i64], b: &[i64]) -> BigInt {
        let va = IntMatrix::row_vec_mul(&to_big(a), &self.gram);
        va.iter()
            .zip(b)
            .map(|(x, &y)| x * BigInt::from(y))
            .sum()
    }

    /// The vector of pairings of `v` against every generator.
    pub fn pair_with_all(&self, v: &[i64]) -> Vec<BigInt> {
        IntMatrix::row_vec_mul(&to_big(v), &self.gram)
    }

    /// Whether `v` pairs to zero with every generator — the formal witness
    /// that `v` is zero in the Néron–Severi group.
    pub fn in_radical(&self, v: &[i64]) -> bool {
        self.pair_with_all(v).iter().all(Zero::is_zero)
    }

    fn check_line(&self, line: usize) -> Result<(), NsError> {
        if line < self.set.n_lines {
            Ok(())
        } else {
            Err(NsError::LineOutOfRange {
                line,
                n_lines: self.set.n_lines,
            })
        }
    }

    /// The pullback of line `i` to the cover:
    /// `L+ + L- + sum of the Eckardt classes on the line`.
    pub fn pullback_line(&self, i: usize) -> Result<CurveClass, NsError> {
        self.check_line(i)?;
        let mut v = vec![0; self.n()];
        v[self.set.lplus(i)] += 1;
        v[self.set.lminus(i)] += 1;
        for &e in &self.eckardt_on_line[i] {
            v[self.set.eckardt(e)] += 1;
        }
        Ok(v)
    }

    /// The pullback of the hyperplane class realized as the sum of the
    /// pullbacks of three pairwise-meeting lines (a tritangent triple).
    pub fn hyperplane_pullback(&self, triple: [usize; 3]) -> Result<CurveClass, NsError> {
        for idx in triple {
            self.check_line(idx)?;
        }
        for a in 0..3 {
            for b in a + 1..3 {
                if !self.meets[triple[a]][triple[b]] {
                    return Err(NsError::NotCoplanar {
                        i: triple[a],
                        j: triple[b],
                    });
                }
            }
        }
        let mut v = vec![0; self.n()];
        for idx in triple {
            for (slot, c) in v.iter_mut().zip(self.pullback_line(idx)?) {
                *slot += c;
            }
        }
        Ok(v)
    }

    /// First triple of pairwise-meeting lines in lexicographic order.
    pub fn find_tritangent_triple(&self) -> Result<[usize; 3], NsError> {
        let n = self.set.n_lines;
        for i in 0..n {
            for j in i + 1..n {
                if !self.meets[i][j] {
                    continue;
                }
                for k in j + 1..n {
                    if self.meets[i][k] && self.meets[j][k] {
                        return Ok([i, j, k]);
                    }
                }
            }
        }
        Err(NsError::NoTritangentTriple)
    }

    /// The hyperplane class of the triple-contact model pulled back to the
    /// cover: `3 phi*L0 - L0+ + sum of L+ over the lines meeting L0`.
    pub fn psi_hyperplane(&self, l0: usize) -> Result<CurveClass, NsError> {
        self.check_line(l0)?;
        let mut v: Vec<i64> = self
            .pullback_line(l0)?
            .into_iter()
            .map(|c| 3 * c)
            .collect();
        v[self.set.lplus(l0)] -= 1;
        for j in 0..self.set.n_lines {
            if self.meets[l0][j] {
                v[self.set.lplus(j)] += 1;
            }
        }
        Ok(v)
    }

    /// Checks the multiplicity identity behind [`Self::psi_hyperplane`] as
    /// exact formal coefficient vectors:
    /// `3 phi*L0 - L0+ + sum L+ = 2 L0+ + 3 L0- + 3 sum E + sum L+`.
    pub fn verify_multiplicities(&self, l0: usize) -> Result<bool, NsError> {
        let lhs = self.psi_hyperplane(l0)?;
        let mut rhs = vec![0; self.n()];
        rhs[self.set.lplus(l0)] += 2;
        rhs[self.set.lminus(l0)] += 3;
        for &e in &self.eckardt_on_line[l0] {
            rhs[self.set.eckardt(e)] += 3;
        }
        for j in 0..self.set.n_lines {
            if self.meets[l0][j] {
                rhs[self.set.lplus(j)] += 1;
            }
        }
        Ok(lhs == rhs)
    }
}

/// A sublattice presented by a (possibly redundant) list of spanning
/// classes over a Gram model.
#[derive(Clone, Debug)]
pub struct SpannedLattice {
    pub model: GramModel,
    pub generators: Vec<CurveClass>,
}

impl SpannedLattice {
    pub fn new(model: &GramModel, generators: Vec<CurveClass>) -> Self {
        assert!(
            generators.iter().all(|g| g.len() == model.n()),
            "generator length must match the model"
        );
        SpannedLattice {
            model: model.clone(),
            generators,
        }
    }

    fn generator_matrix(&self) -> IntMatrix {
        if self.generators.is_empty() {
            return IntMatrix::empty(self.model.n());
        }
        IntMatrix::from_rows(self.generators.iter().map(|g| to_big(g)).collect())
    }

    /// An independent basis of the span, as the nonzero rows of its Hermite
    /// normal form.
    pub fn span_basis(&self) -> IntMatrix {
        let (h, _) = self.generator_matrix().hnf();
        let rows: Vec<Vec<BigInt>> = (0..h.rows())
            .filter(|&r| !h.row_is_zero(r))
            .map(|r| h.row(r).to_vec())
            .collect();
        if rows.is_empty() {
            return IntMatrix::empty(self.model.n());
        }
        IntMatrix::from_rows(rows)
    }

    /// Rank, determinant, signature, and invariant factors of the span with
    /// the induced pairing, computed modulo the radical of the restricted
    /// form.
    pub fn invariants(&self) -> SymFormInvariants {
        let b = self.span_basis();
        let restricted = b.mul(&self.model.gram).mul(&b.transpose());
        sym_invariants(&restricted).expect("restricted Gram is square and symmetric")
    }
}

/// The span of the 27 classes `L+`.
pub fn span_lplus(model: &GramModel) -> SpannedLattice {
    let gens = (0..model.set.n_lines)
        .map(|i| model.unit(model.set.lplus(i)))
        .collect();
    SpannedLattice::new(model, gens)
}

/// The span of every formal generator.
pub fn full_span(model: &GramModel) -> SpannedLattice {
    let gens = (0..model.n()).map(|i| model.unit(i)).collect();
    SpannedLattice::new(model, gens)
}

/// The span of every generator except the coordinate-plane classes.
pub fn span_without_planes(model: &GramModel) -> SpannedLattice {
    let count = 2 * model.set.n_lines + model.set.n_eckardt;
    let gens = (0..count).map(|i| model.unit(i)).collect();
    SpannedLattice::new(model, gens)
}

/// The primitive pullback lattice together with the `L+` classes: spanned
/// by every difference of two line pullbacks and every `L+`.
pub fn prim_plus_lplus(model: &GramModel) -> Result<SpannedLattice, NsError> {
    let n = model.set.n_lines;
    let mut gens = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let a = model.pullback_line(i)?;
            let b = model.pullback_line(j)?;
            gens.push(a.iter().zip(&b).map(|(x, y)| x - y).collect());
        }
    }
    for i in 0..n {
        gens.push(model.unit(model.set.lplus(i)));
    }
    Ok(SpannedLattice::new(model, gens))
}

/// The full pullback lattice together with the `L+` classes: spanned by a
/// hyperplane pullback, every line pullback, and every `L+`.
pub fn full_phi_plus_lplus(model: &GramModel) -> Result<SpannedLattice, NsError> {
    let triple = model.find_tritangent_triple()?;
    let mut gens = vec![model.hyperplane_pullback(triple)?];
    for i in 0..model.set.n_lines {
        gens.push(model.pullback_line(i)?);
        gens.push(model.unit(model.set.lplus(i)));
    }
    Ok(SpannedLattice::new(model, gens))
}

/// The projection of the formal lattice onto coordinates transverse to the
/// Gram radical. Classes equal in the Néron–Severi group get equal images.
struct RadicalProjection {
    radical_rank: usize,
    q: Option<IntMatrix>,
}

impl RadicalProjection {
    fn new(gram: &IntMatrix) -> Self {
        let rad = gram.kernel_saturated();
        if rad.rows() == 0 {
            return RadicalProjection {
                radical_rank: 0,
                q: None,
            };
        }
        let t = rad.snf_with_transforms();
        debug_assert!(
            (0..rad.rows()).all(|i| t.d.at(i, i).is_one()),
            "a saturated kernel has unit invariant factors"
        );
        RadicalProjection {
            radical_rank: rad.rows(),
            q: Some(t.q),
        }
    }

    fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        match &self.q {
            None => v.to_vec(),
            Some(q) => IntMatrix::row_vec_mul(v, q)[self.radical_rank..].to_vec(),
        }
    }
}

/// Invariant factors (those exceeding 1) of the torsion of the quotient of
/// the two spans taken inside the Néron–Severi group, i.e. modulo the Gram
/// radical. Errors if `sub` is not contained in `ambient` there.
pub fn quotient_torsion(
    ambient: &SpannedLattice,
    sub: &SpannedLattice,
) -> Result<Vec<BigInt>, NsError> {
    if ambient.model.set != sub.model.set || ambient.model.gram != sub.model.gram {
        return Err(NsError::ModelMismatch);
    }
    let proj = RadicalProjection::new(&ambient.model.gram);
    let project_all = |s: &SpannedLattice| -> Vec<Vec<BigInt>> {
        s.generators.iter().map(|g| proj.apply(&to_big(g))).collect()
    };
    let cols = ambient.model.n() - proj.radical_rank;
    let rows = project_all(ambient);
    let m = if rows.is_empty() {
        IntMatrix::empty(cols)
    } else {
        IntMatrix::from_rows(rows)
    };
    let (h, _) = m.hnf();
    let basis_rows: Vec<Vec<BigInt>> = (0..h.rows())
        .filter(|&r| !h.row_is_zero(r))
        .map(|r| h.row(r).to_vec())
        .collect();
    let rank = basis_rows.len();
    let basis = if basis_rows.is_empty() {
        IntMatrix::empty(cols)
    } else {
        IntMatrix::from_rows(basis_rows)
    };
    let mut coeff_rows = Vec::new();
    for (idx, g) in project_all(sub).into_iter().enumerate() {
        match basis.solve_in_rowspace(&g) {
            Some(c) => coeff_rows.push(c),
            None => return Err(NsError::NotContained { generator: idx }),
        }
    }
    let coeffs = if coeff_rows.is_empty() {
        IntMatrix::empty(rank)
    } else {
        IntMatrix::from_rows(coeff_rows)
    };
    Ok(coeffs
        .snf()
        .into_iter()
        .filter(|d| !d.is_one())
        .collect())
}

/// Checks the index law for a finite-index pair of spans:
/// `det(sub) = det(ambient) * index^2` with the index read off the
/// quotient's invariant factors.
pub fn overlattice_law_holds(
    ambient: &SpannedLattice,
    sub: &SpannedLattice,
) -> Result<bool, NsError> {
    let inv_m = ambient.invariants();
    let inv_a = sub.invariants();
    if inv_m.rank != inv_a.rank {
        return Ok(false);
    }
    let index: BigInt = quotient_torsion(ambient, sub)?
        .into_iter()
        .product();
    Ok(inv_a.determinant == inv_m.determinant * (&index * &index))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lines::{fermat_lines, generic_incidence, incidence_from_lines};

    fn generic_model() -> GramModel {
        build_gram(&generic_incidence(), false).unwrap()
    }

    fn fermat_model(with_planes: bool) -> GramModel {
        let inc = incidence_from_lines(&fermat_lines()).unwrap();
        build_gram(&inc, with_planes).unwrap()
    }

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn gram_entries_generic() {
        let m = generic_model();
        assert_eq!(m.n(), 54);
        assert!(m.gram.is_symmetric());
        let s = &m.set;
        assert_eq!(*m.gram.at(s.lplus(0), s.lplus(0)), big(-3));
        assert_eq!(*m.gram.at(s.lplus(0), s.lplus(1)), big(0));
        // No Eckardt points: same line pairs to 2 across the two sheets.
        assert_eq!(*m.gram.at(s.lplus(0), s.lminus(0)), big(2));
        // A meeting pair and a skew pair (lines 0 and 1 are E1, E2 in the
        // blow-up model — skew; E1 meets F12 at index 6).
        assert_eq!(*m.gram.at(s.lplus(0), s.lminus(1)), big(0));
        assert_eq!(*m.gram.at(s.lplus(0), s.lminus(6)), big(1));
    }

    #[test]
    fn gram_entries_fermat() {
        let m = fermat_model(true);
        assert_eq!(m.n(), 54 + 18 + 4);
        assert!(m.gram.is_symmetric());
        let s = &m.set;
        // Two Eckardt points on every line: the cross-sheet self pairing
        // drops to 0.
        for i in 0..27 {
            assert_eq!(*m.gram.at(s.lplus(i), s.lminus(i)), big(0));
        }
        // Eckardt classes: -2 on the diagonal, 1 against incident lines,
        // and each E meets exactly 3 lines in either sheet.
        for j in 0..18 {
            assert_eq!(*m.gram.at(s.eckardt(j), s.eckardt(j)), big(-2));
            let incident = (0..27)
                .filter(|&i| *m.gram.at(s.lplus(i), s.eckardt(j)) == big(1))
                .count();
            assert_eq!(incident, 3);
        }
        // Plane classes: -3 diagonal, zero against line classes, and each
        // Eckardt class meets exactly two of the four planes.
        for k in 0..4 {
            assert_eq!(*m.gram.at(s.plane(k), s.plane(k)), big(-3));
            for i in 0..27 {
                assert_eq!(*m.gram.at(s.plane(k), s.lplus(i)), big(0));
                assert_eq!(*m.gram.at(s.plane(k), s.lminus(i)), big(0));
            }
        }
        for j in 0..18 {
            let planes = (0..4)
                .filter(|&k| *m.gram.at(s.plane(k), s.eckardt(j)) == big(1))
                .count();
            assert_eq!(planes, 2, "an Eckardt point has two vanishing coordinates");
        }
    }

    /// Independent oracle for every pairing rule at once: pulling back the
    /// intersection form of the cubic doubles it.
    #[test]
    fn pullback_doubles_base_intersections() {
        for model in [generic_model(), fermat_model(true)] {
            let n = model.set.n_lines;
            for i in 0..n {
                let a = model.pullback_line(i).unwrap();
                for j in 0..n {
                    let b = model.pullback_line(j).unwrap();
                    let base = if i == j {
                        -1
                    } else {
                        i64::from(model.meets[i][j])
                    };
                    assert_eq!(
                        model.pair(&a, &b),
                        big(2 * base),
                        "pullback pairing at ({i}, {j})"
                    );
                }
            }
        }
    }

    #[test]
    fn hyperplane_pullback_pairings() {
        for model in [generic_model(), fermat_model(false)] {
            let triple = model.find_tritangent_triple().unwrap();
            let h = model.hyperplane_pullback(triple).unwrap();
            assert_eq!(model.pair(&h, &h), big(6), "2 * h.h = 6");
            for i in 0..model.set.n_lines {
                let l = model.pullback_line(i).unwrap();
                assert_eq!(model.pair(&h, &l), big(2), "2 * h.line = 2");
            }
        }
        // The Fermat triple found first is the concurrent triple in the
        // plane x0 + x1 = 0.
        let fermat = fermat_model(false);
        assert_eq!(fermat.find_tritangent_triple().unwrap(), [0, 1, 2]);
        // A skew pair is rejected.
        let generic = generic_model();
        assert!(matches!(
            generic.hyperplane_pullback([0, 1, 2]),
            Err(NsError::NotCoplanar { .. })
        ));
    }

    #[test]
    fn psi_hyperplane_properties() {
        for model in [generic_model(), fermat_model(true)] {
            let psi = model.psi_hyperplane(0).unwrap();
            // Pairs to zero with every L+.
            for i in 0..model.set.n_lines {
                assert_eq!(
                    model.pair(&psi, &model.unit(model.set.lplus(i))),
                    big(0)
                );
            }
            // Independence of the base line, as classes in the lattice.
            let psi2 = model.psi_hyperplane(13).unwrap();
            let diff: CurveClass = psi.iter().zip(&psi2).map(|(a, b)| a - b).collect();
            assert!(model.in_radical(&diff));
            // Degree-3 relation: 3 psi = 3 phi*h + sum of all L+ in the
            // Néron-Severi group.
            let triple = model.find_tritangent_triple().unwrap();
            let h = model.hyperplane_pullback(triple).unwrap();
            let mut rel: Vec<i64> = psi.iter().map(|c| 3 * c).collect();
            for (slot, c) in rel.iter_mut().zip(&h) {
                *slot -= 3 * c;
            }
            for i in 0..model.set.n_lines {
                rel[model.set.lplus(i)] -= 1;
            }
            assert!(model.in_radical(&rel));
        }
    }

    #[test]
    fn multiplicity_identity_holds_everywhere() {
        for model in [generic_model(), fermat_model(true)] {
            for l0 in 0..model.set.n_lines {
                assert!(model.verify_multiplicities(l0).unwrap());
            }
        }
    }

    #[test]
    fn corrupting_one_pairing_breaks_the_relations() {
        let mut model = fermat_model(false);
        let line0_eckardt = model.eckardt_on_line[0][0];
        let row = model.set.lplus(0);
        let col = model.set.eckardt(line0_eckardt);
        model.gram.set(row, col, big(2));
        model.gram.set(col, row, big(2));
        // The degree-3 relation's witness vector no longer sits in the
        // radical of the corrupted pairing.
        let psi = model.psi_hyperplane(0).unwrap();
        let h = model
            .hyperplane_pullback(model.find_tritangent_triple().unwrap())
            .unwrap();
        let mut rel: Vec<i64> = psi.iter().map(|c| 3 * c).collect();
        for (slot, c) in rel.iter_mut().zip(&h) {
            *slot -= 3 * c;
        }
        for i in 0..model.set.n_lines {
            rel[model.set.lplus(i)] -= 1;
        }
        assert!(!model.in_radical(&rel));
    }

    #[test]
    fn lattice_invariants_lplus_span() {
        for model in [generic_model(), fermat_model(true)] {
            let inv = span_lplus(&model).invariants();
            assert_eq!(inv.rank, 27);
            assert_eq!(inv.determinant, big(-3).pow(27));
            assert_eq!(inv.signature, (0, 27));
        }
    }

    #[test]
    fn lattice_invariants_generic_full() {
        let inv = full_span(&generic_model()).invariants();
        assert_eq!(inv.rank, 28);
        assert_eq!(inv.determinant, big(-23_914_845));
        assert_eq!(inv.signature, (1, 27));
    }

    #[test]
    fn lattice_invariants_fermat_full() {
        let model = fermat_model(true);
        let inv = full_span(&model).invariants();
        assert_eq!(inv.rank, 44);
        assert_eq!(inv.determinant, big(-531_441));
        assert_eq!(inv.signature, (1, 43));

        let no_planes = span_without_planes(&model).invariants();
        assert_eq!(no_planes.rank, 44);
        assert_eq!(no_planes.determinant, big(-2_125_764));
        assert_eq!(no_planes.signature, (1, 43));
    }

    #[test]
    fn lattice_invariants_prim_plus_lplus() {
        for model in [generic_model(), fermat_model(true)] {
            let prim = prim_plus_lplus(&model).unwrap();
            assert_eq!(prim.generators.len(), 351 + 27);
            let inv = prim.invariants();
            assert_eq!(inv.rank, 27);
            assert_eq!(inv.determinant, big(-14_348_907));
            assert_eq!(inv.signature, (0, 27));
        }
    }

    #[test]
    fn lattice_invariants_full_phi_plus_lplus() {
        for model in [generic_model(), fermat_model(true)] {
            let inv = full_phi_plus_lplus(&model).unwrap().invariants();
            assert_eq!(inv.rank, 28);
            assert_eq!(inv.determinant, big(-23_914_845));
            assert_eq!(inv.signature, (1, 27));
        }
    }

    #[test]
    fn torsion_of_prim_over_lplus() {
        for model in [generic_model(), fermat_model(true)] {
            let m = prim_plus_lplus(&model).unwrap();
            let a = span_lplus(&model);
            let factors = quotient_torsion(&m, &a).unwrap();
            assert_eq!(factors, vec![big(3); 6]);
            assert!(overlattice_law_holds(&m, &a).unwrap());
            // Explicit index law: -3^27 = -3^15 * (3^6)^2.
            assert_eq!(
                a.invariants().determinant,
                m.invariants().determinant * big(3).pow(12)
            );
        }
    }

    #[test]
    fn fermat_index_two_sublattice() {
        let model = fermat_model(true);
        let m = full_span(&model);
        let a = span_without_planes(&model);
        assert_eq!(quotient_torsion(&m, &a).unwrap(), vec![big(2)]);
        assert!(overlattice_law_holds(&m, &a).unwrap());
    }

    #[test]
    fn trivial_and_failing_quotients() {
        let model = generic_model();
        let m = full_span(&model);
        assert_eq!(quotient_torsion(&m, &m).unwrap(), Vec::<BigInt>::new());
        // The full span does not fit inside the L+ span.
        let a = span_lplus(&model);
        assert!(matches!(
            quotient_torsion(&a, &m),
            Err(NsError::NotContained { .. })
        ));
        // Spans over different models cannot be compared.
        let other = fermat_model(false);
        assert!(matches!(
            quotient_torsion(&m, &span_lplus(&other)),
            Err(NsError::ModelMismatch)
        ));
    }

    #[test]
    fn incidence_validation_catches_corruption() {
        let mut inc = generic_incidence();
        inc.meets[0][1] = true; // asymmetric now
        assert!(matches!(
            build_gram(&inc, false),
            Err(NsError::InconsistentIncidence(_))
        ));
    }
}

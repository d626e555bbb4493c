//! The verification suites: each returns a list of exact pass/fail checks.

use hessian_cover::chow::contact_surface_invariants;
use hessian_cover::exact::{sym_invariants, Cyclotomic, Field, IntMatrix, Rational};
use hessian_cover::ivhs::{
    build_alpha, build_alpha_transition, build_beta, build_delta1, build_nu1,
    build_one_tensor_nu, euler_relation_holds, ivhs_rank, quotient_dims_report,
    random_smooth_cubic, IvhsRankReport,
};
use hessian_cover::lines::{
    branch_consistency, fermat_lines, generic_incidence, incidence_from_lines, ProjPoint,
};
use hessian_cover::ns::{
    build_gram, full_phi_plus_lplus, full_span, overlattice_law_holds, prim_plus_lplus,
    quotient_torsion, span_lplus, span_without_planes, CurveClass, GramModel,
};
use hessian_cover::periods;
use hessian_cover::poly::{hessian_det, CubicSurface, ParsedSurface};
use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};
use std::fmt::Display;
use std::time::Instant;

/// One exact comparison: passes precisely when the expected and computed
/// strings are identical.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckResult {
    pub suite: String,
    pub check: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
    pub millis: u64,
}

fn run_check<F>(suite: &str, check: &str, body: F) -> CheckResult
where
    F: FnOnce() -> (String, String),
{
    let start = Instant::now();
    let (expected, computed) = body();
    let millis = start.elapsed().as_millis() as u64;
    let pass = expected == computed;
    CheckResult {
        suite: suite.to_string(),
        check: check.to_string(),
        expected,
        computed,
        pass,
        millis,
    }
}

fn show<T: Display>(v: T) -> String {
    v.to_string()
}

fn show_signature(sig: (usize, usize)) -> String {
    format!("({},{})", sig.0, sig.1)
}

fn show_factors(factors: &[BigInt]) -> String {
    let inner: Vec<String> = factors.iter().map(|f| f.to_string()).collect();
    format!("[{}]", inner.join(","))
}

/// Distinct values in a list, sorted, comma-joined: "2" means "all equal
/// to 2".
fn distinct(values: impl IntoIterator<Item = usize>) -> String {
    let mut v: Vec<usize> = values.into_iter().collect();
    v.sort_unstable();
    v.dedup();
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    parts.join(",")
}

pub fn chow_suite() -> Vec<CheckResult> {
    let mut out = Vec::new();
    out.push(run_check("chow", "triple_contact_class", || {
        let inv = contact_surface_invariants();
        ("6*s^2*t + 15*s*t^2 + 6*t^3".into(), inv.class.to_string())
    }));
    out.push(run_check("chow", "canonical_square", || {
        ("6".into(), show(contact_surface_invariants().canonical_square))
    }));
    out.push(run_check("chow", "infinity_square", || {
        (
            "-81".into(),
            show(contact_surface_invariants().infinity_square),
        )
    }));
    out
}

fn fermat_model(with_planes: bool) -> GramModel {
    let inc = incidence_from_lines(&fermat_lines()).expect("Fermat incidence is consistent");
    build_gram(&inc, with_planes).expect("Fermat incidence builds a Gram model")
}

fn generic_model() -> GramModel {
    build_gram(&generic_incidence(), false).expect("blow-up incidence builds a Gram model")
}

/// The degree-3 relation witness `3 psi - 3 phi*h - sum L+`, which lies in
/// the Gram radical exactly when the hyperplane relations hold.
fn degree_three_witness(model: &GramModel) -> CurveClass {
    let psi = model.psi_hyperplane(0).expect("base line 0 exists");
    let triple = model
        .find_tritangent_triple()
        .expect("a tritangent triple exists");
    let h = model
        .hyperplane_pullback(triple)
        .expect("triple is coplanar");
    let mut rel: CurveClass = psi.iter().map(|c| 3 * c).collect();
    for (slot, c) in rel.iter_mut().zip(&h) {
        *slot -= 3 * c;
    }
    for i in 0..model.set.n_lines {
        rel[model.set.lplus(i)] -= 1;
    }
    rel
}

/// Whether `psi_hyperplane` gives the same lattice class from every base
/// line (the content of the degree-1 hyperplane relation).
fn psi_base_line_independent(model: &GramModel) -> bool {
    let psi0 = model.psi_hyperplane(0).expect("base line 0 exists");
    (1..model.set.n_lines).all(|l0| {
        let psi = model.psi_hyperplane(l0).expect("line exists");
        let diff: CurveClass = psi0.iter().zip(&psi).map(|(a, b)| a - b).collect();
        model.in_radical(&diff)
    })
}

fn relation_checks(suite: &str, model: &GramModel) -> Vec<CheckResult> {
    let mut out = Vec::new();
    out.push(run_check(suite, "hyperplane_cube_relation", || {
        let verdict = if model.in_radical(&degree_three_witness(model)) {
            "in radical"
        } else {
            "outside radical"
        };
        ("in radical".into(), verdict.into())
    }));
    out.push(run_check(suite, "hyperplane_base_line_independence", || {
        let verdict = if psi_base_line_independent(model) {
            "independent"
        } else {
            "base-line dependent"
        };
        ("independent".into(), verdict.into())
    }));
    out.push(run_check(suite, "pullback_multiplicities", || {
        let all = (0..model.set.n_lines)
            .all(|l0| model.verify_multiplicities(l0).unwrap_or(false));
        let verdict = if all {
            format!("all {} lines", model.set.n_lines)
        } else {
            "mismatch".into()
        };
        (format!("all {} lines", model.set.n_lines), verdict)
    }));
    out
}

pub fn fermat_suite() -> Vec<CheckResult> {
    let mut out = Vec::new();
    let lines = fermat_lines();
    let inc = incidence_from_lines(&lines).expect("Fermat incidence is consistent");

    out.push(run_check("fermat", "line_count", || {
        ("27".into(), show(lines.len()))
    }));
    out.push(run_check("fermat", "eckardt_point_count", || {
        ("18".into(), show(inc.eckardt.len()))
    }));
    out.push(run_check("fermat", "eckardt_points_per_line", || {
        (
            "2".into(),
            distinct(inc.eckardt_on_line.iter().map(|e| e.len())),
        )
    }));
    out.push(run_check("fermat", "lines_met_per_line", || {
        ("10".into(), distinct((0..27).map(|i| inc.degree(i))))
    }));
    out.push(run_check("fermat", "incidence_edge_count", || {
        ("135".into(), show(inc.edge_count()))
    }));
    out.push(run_check("fermat", "coplanar_triangle_count", || {
        ("45".into(), show(inc.triangle_count()))
    }));
    out.push(run_check("fermat", "hessian_determinant", || {
        let h = hessian_det(&CubicSurface::<Rational>::fermat());
        ("1296*x0*x1*x2*x3".into(), h.to_string())
    }));
    out.push(run_check("fermat", "branch_classification_consistency", || {
        let surface = CubicSurface::<Cyclotomic>::fermat();
        let mut points: Vec<ProjPoint<Cyclotomic>> =
            inc.eckardt.iter().map(|r| r.point.clone()).collect();
        for u in [(1, 0), (2, 0), (1, 1), (0, 1), (-3, 2)] {
            points.push(
                ProjPoint::new(vec![
                    Cyclotomic::from_ints(1, 0),
                    Cyclotomic::from_ints(-1, 0),
                    Cyclotomic::from_ints(u.0, u.1),
                    Cyclotomic::from_ints(-u.0, -u.1),
                ])
                .expect("nonzero point"),
            );
        }
        let expected = format!("{} points consistent", points.len());
        match branch_consistency(&surface, &points) {
            Ok(checks) => {
                let consistent = checks.iter().filter(|c| c.consistent()).count();
                if consistent == checks.len() {
                    (expected, format!("{consistent} points consistent"))
                } else {
                    (expected, format!("{consistent} of {} consistent", checks.len()))
                }
            }
            Err(e) => (expected, format!("classification error: {e}")),
        }
    }));

    let model = fermat_model(true);
    let full = full_span(&model);
    out.push(run_check("fermat", "full_span_rank", || {
        ("44".into(), show(full.invariants().rank))
    }));
    out.push(run_check("fermat", "full_span_determinant", || {
        ("-531441".into(), show(&full.invariants().determinant))
    }));
    out.push(run_check("fermat", "full_span_signature", || {
        ("(1,43)".into(), show_signature(full.invariants().signature))
    }));
    let slim = span_without_planes(&model);
    out.push(run_check("fermat", "span_without_planes_determinant", || {
        ("-2125764".into(), show(&slim.invariants().determinant))
    }));
    out.push(run_check("fermat", "plane_quotient_torsion", || {
        match quotient_torsion(&full, &slim) {
            Ok(f) => ("[2]".into(), show_factors(&f)),
            Err(e) => ("[2]".into(), format!("error: {e}")),
        }
    }));
    out.push(run_check("fermat", "overlattice_index_law", || {
        match overlattice_law_holds(&full, &slim) {
            Ok(true) => ("holds".into(), "holds".into()),
            Ok(false) => ("holds".into(), "violated".into()),
            Err(e) => ("holds".into(), format!("error: {e}")),
        }
    }));
    out.extend(relation_checks("fermat", &model));
    out
}

pub fn generic_suite() -> Vec<CheckResult> {
    let mut out = Vec::new();
    let model = generic_model();

    let full = full_span(&model);
    out.push(run_check("generic", "full_span_rank", || {
        ("28".into(), show(full.invariants().rank))
    }));
    out.push(run_check("generic", "full_span_determinant", || {
        ("-23914845".into(), show(&full.invariants().determinant))
    }));
    out.push(run_check("generic", "full_span_signature", || {
        ("(1,27)".into(), show_signature(full.invariants().signature))
    }));

    let lplus = span_lplus(&model);
    out.push(run_check("generic", "lplus_span_rank", || {
        ("27".into(), show(lplus.invariants().rank))
    }));
    out.push(run_check("generic", "lplus_span_determinant", || {
        (
            "-7625597484987".into(),
            show(&lplus.invariants().determinant),
        )
    }));
    out.push(run_check("generic", "lplus_span_signature", || {
        ("(0,27)".into(), show_signature(lplus.invariants().signature))
    }));

    let prim = prim_plus_lplus(&model).expect("primitive span builds");
    out.push(run_check("generic", "prim_plus_lplus_determinant", || {
        ("-14348907".into(), show(&prim.invariants().determinant))
    }));
    let phi = full_phi_plus_lplus(&model).expect("pullback span builds");
    out.push(run_check("generic", "phi_plus_lplus_rank", || {
        ("28".into(), show(phi.invariants().rank))
    }));
    out.push(run_check("generic", "phi_plus_lplus_determinant", || {
        ("-23914845".into(), show(&phi.invariants().determinant))
    }));

    out.push(run_check("generic", "prim_quotient_torsion", || {
        match quotient_torsion(&prim, &lplus) {
            Ok(f) => ("[3,3,3,3,3,3]".into(), show_factors(&f)),
            Err(e) => ("[3,3,3,3,3,3]".into(), format!("error: {e}")),
        }
    }));
    out.push(run_check("generic", "overlattice_index_law", || {
        match overlattice_law_holds(&prim, &lplus) {
            Ok(true) => ("holds".into(), "holds".into()),
            Ok(false) => ("holds".into(), "violated".into()),
            Err(e) => ("holds".into(), format!("error: {e}")),
        }
    }));

    out.extend(relation_checks("generic", &model));

    out.push(run_check("generic", "corrupted_gram_negative_control", || {
        let mut bad = fermat_model(false);
        let eck = bad.eckardt_on_line[0][0];
        let row = bad.set.lplus(0);
        let col = bad.set.eckardt(eck);
        bad.gram.set(row, col, BigInt::from(2));
        bad.gram.set(col, row, BigInt::from(2));
        let broken = !psi_base_line_independent(&bad)
            && !bad.in_radical(&degree_three_witness(&bad));
        let verdict = if broken { "violated" } else { "still holds" };
        ("violated".into(), verdict.into())
    }));
    out
}

pub fn abelian_suite() -> Vec<CheckResult> {
    let mut out = Vec::new();
    out.push(run_check("abelian", "cup_tau_tau", || {
        ("5".into(), show(periods::cup_form(&periods::tau(), &periods::tau())))
    }));
    out.push(run_check("abelian", "cup_theta_theta", || {
        (
            "20".into(),
            show(periods::cup_form(&periods::theta(), &periods::theta())),
        )
    }));
    out.push(run_check("abelian", "orientation_degree", || {
        ("1".into(), show(periods::deg(&periods::theta_power_over_factorial(5))))
    }));
    out.push(run_check("abelian", "omega_action_order", || {
        let rot = periods::omega_wedge2_rows();
        let id = IntMatrix::identity(periods::BIVECTOR_RANK);
        let mut power = id.clone();
        let mut order = 0;
        for k in 1..=3 {
            power = power.mul(&rot);
            if power == id {
                order = k;
                break;
            }
        }
        ("3".into(), show(order))
    }));
    out.push(run_check("abelian", "omega_preserves_cup_form", || {
        let rot = periods::omega_wedge2_rows();
        let g = periods::unit_bivector_gram();
        let verdict = if rot.mul(&g).mul(&rot.transpose()) == g {
            "preserved"
        } else {
            "not preserved"
        };
        ("preserved".into(), verdict.into())
    }));

    let h2s = periods::h2s_lattice();
    out.push(run_check("abelian", "h2s_rank", || {
        ("45".into(), show(h2s.invariants().rank))
    }));
    out.push(run_check("abelian", "h2s_determinant", || {
        ("1".into(), show(&h2s.invariants().determinant))
    }));
    out.push(run_check("abelian", "h2s_signature", || {
        ("(21,24)".into(), show_signature(h2s.invariants().signature))
    }));

    let fixed = periods::galois_invariant_lattice();
    out.push(run_check("abelian", "invariant_lattice_rank", || {
        ("25".into(), show(fixed.invariants().rank))
    }));
    out.push(run_check("abelian", "invariant_lattice_determinant", || {
        ("59049".into(), show(&fixed.invariants().determinant))
    }));
    out.push(run_check("abelian", "invariant_lattice_signature", || {
        ("(9,16)".into(), show_signature(fixed.invariants().signature))
    }));
    out.push(run_check("abelian", "invariant_factors_match_block_model", || {
        let model = sym_invariants(&periods::block_model_invariant())
            .expect("block model is symmetric");
        let verdict = if fixed.invariants().invariant_factors == model.invariant_factors {
            "match"
        } else {
            "mismatch"
        };
        ("match".into(), verdict.into())
    }));

    out.push(run_check("abelian", "a2_block_gram", || {
        let a = add3(
            periods::wedge2_coords(0, 1),
            periods::wedge2_coords(5, 6),
            periods::wedge2_coords(5, 1),
        );
        let b = add3(
            periods::wedge2_coords(0, 1),
            periods::wedge2_coords(5, 6),
            periods::wedge2_coords(0, 6),
        );
        ("[[2,1],[1,2]]".into(), pair_gram_string(&a, &b))
    }));
    out.push(run_check("abelian", "neg_a2_block_gram", || {
        let a = add3(
            periods::wedge2_coords(1, 2),
            periods::wedge2_coords(6, 7),
            periods::wedge2_coords(6, 2),
        );
        let b = add3(
            periods::wedge2_coords(1, 2),
            periods::wedge2_coords(6, 7),
            periods::wedge2_coords(1, 7),
        );
        ("[[-2,-1],[-1,-2]]".into(), pair_gram_string(&a, &b))
    }));

    let prim = periods::prim_lattice();
    out.push(run_check("abelian", "prim_lattice_rank", || {
        ("24".into(), show(prim.invariants().rank))
    }));
    out.push(run_check("abelian", "prim_lattice_determinant", || {
        ("295245".into(), show(&prim.invariants().determinant))
    }));
    out.push(run_check("abelian", "prim_lattice_signature", || {
        ("(8,16)".into(), show_signature(prim.invariants().signature))
    }));
    out.push(run_check("abelian", "prim_factors_match_block_model", || {
        let model =
            sym_invariants(&periods::block_model_prim()).expect("block model is symmetric");
        let verdict = if prim.invariants().invariant_factors == model.invariant_factors {
            "match"
        } else {
            "mismatch"
        };
        ("match".into(), verdict.into())
    }));

    let report = periods::scaling_bridge_report();
    out.push(run_check("abelian", "h2z_model_determinant", || {
        ("14348907".into(), show(&report.h2z_model.determinant))
    }));
    out.push(run_check("abelian", "prim_z_model_determinant", || {
        ("23914845".into(), show(&report.prim_z_model.determinant))
    }));
    out.push(run_check("abelian", "third_scaled_h2z_determinant", || {
        ("1/59049".into(), show(&report.h2z_third_scaled_det))
    }));
    out.push(run_check("abelian", "third_scaled_invariant_determinant", || {
        ("1/14348907".into(), show(&report.invariant_third_scaled_det))
    }));
    out
}

fn add3(
    x: Vec<Rational>,
    y: Vec<Rational>,
    z: Vec<Rational>,
) -> Vec<Rational> {
    (0..periods::BIVECTOR_RANK)
        .map(|i| &x[i] + &y[i] + &z[i])
        .collect()
}

fn pair_gram_string(a: &[Rational], b: &[Rational]) -> String {
    let aa = periods::cup_form(a, a);
    let ab = periods::cup_form(a, b);
    let ba = periods::cup_form(b, a);
    let bb = periods::cup_form(b, b);
    format!("[[{aa},{ab}],[{ba},{bb}]]")
}

fn rank_summary(report: &IvhsRankReport) -> String {
    let mut s = format!(
        "nu={} nu1={} delta1={} ivhs={}",
        report.rank_nu, report.rank_nu1, report.rank_delta1, report.rank
    );
    if report.smoothness_warning.is_some() {
        s.push_str(" (singular)");
    }
    s
}

const GENERIC_RANKS: &str = "nu=16 nu1=64 delta1=80 ivhs=16";

fn surface_rank_checks<K: Field>(
    suite: &str,
    prefix: &str,
    surface: &CubicSurface<K>,
) -> Vec<CheckResult> {
    let mut out = Vec::new();
    out.push(run_check(suite, &format!("{prefix}_ranks"), || {
        (GENERIC_RANKS.into(), rank_summary(&ivhs_rank(surface)))
    }));
    out.push(run_check(suite, &format!("{prefix}_euler_relation"), || {
        let verdict = if euler_relation_holds(surface.f()) {
            "maps to 3F"
        } else {
            "violated"
        };
        ("maps to 3F".into(), verdict.into())
    }));
    out
}

pub fn ivhs_fixture_suite(surface: &ParsedSurface) -> Vec<CheckResult> {
    match surface {
        ParsedSurface::Rational(s) => surface_rank_checks("ivhs", "surface", s),
        ParsedSurface::Eisenstein(s) => surface_rank_checks("ivhs", "surface", s),
    }
}

pub fn ivhs_random_suite(seed: u64, count: u32) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    for i in 0..count {
        let (surface, _) = random_smooth_cubic(&mut rng);
        out.push(run_check("ivhs", &format!("random_cubic_{i}_ranks"), || {
            (GENERIC_RANKS.into(), rank_summary(&ivhs_rank(&surface)))
        }));
    }
    out
}

pub fn ivhs_suite(seed: u64, count: u32) -> Vec<CheckResult> {
    let fermat = CubicSurface::<Rational>::fermat();
    let mut out = surface_rank_checks("ivhs", "fermat", &fermat);
    out.push(run_check("ivhs", "fermat_quotient_dims", || {
        let dims = quotient_dims_report(fermat.f());
        (
            "endo=15 gradient=39 coker_nu=4".into(),
            format!(
                "endo={} gradient={} coker_nu={}",
                dims.endomorphism_quotient_dim,
                dims.gradient_tensor_quotient_dim,
                dims.nu_cokernel_dim
            ),
        )
    }));
    out.push(run_check("ivhs", "diagram_delta1_one_tensor_nu", || {
        let lhs = build_delta1::<Rational>()
            .compose(&build_one_tensor_nu(fermat.f()), "delta1.(1 x nu)");
        let verdict = if lhs.matrix_eq(&build_nu1(fermat.f())) {
            "equal"
        } else {
            "unequal"
        };
        ("equal".into(), verdict.into())
    }));
    out.push(run_check("ivhs", "nu1_alpha_equals_beta", || {
        let lhs = build_nu1(fermat.f()).compose(&build_alpha::<Rational>(), "nu1.alpha");
        let beta = build_beta(fermat.f());
        let verdict = if lhs.matrix_eq(&beta) {
            "equal".to_string()
        } else {
            "unequal: equals beta composed with the base change T(A(+)B) = 2A(+)(A+3B)"
                .to_string()
        };
        ("equal".into(), verdict)
    }));
    out.push(run_check("ivhs", "nu1_alpha_equals_beta_after_transition", || {
        let lhs = build_nu1(fermat.f()).compose(&build_alpha::<Rational>(), "nu1.alpha");
        let rhs = build_beta(fermat.f())
            .compose(&build_alpha_transition::<Rational>(), "beta.T");
        let verdict = if lhs.matrix_eq(&rhs) { "equal" } else { "unequal" };
        ("equal".into(), verdict.into())
    }));
    out.extend(ivhs_random_suite(seed, count));
    out
}

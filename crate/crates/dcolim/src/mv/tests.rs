//! Oracle tests for the Mayer-Vietoris machinery. Expected values are
//! hand-computed group (co)homology and nerve homotopy types.

use super::*;
use crate::abelian::FgAbGroup;
use crate::corpus;
use crate::dmod::{const_diagram, GradedAbGroup, Variance};
use crate::fincat::{pushout, FinCategory, Functor, PushoutSquare};

fn point() -> FinCategory {
    corpus::chain(1)
}

fn graded(values: &[FgAbGroup]) -> GradedAbGroup {
    GradedAbGroup {
        values: values.to_vec(),
    }
}

fn z() -> FgAbGroup {
    FgAbGroup::free(1)
}

fn z_mod(n: u64) -> FgAbGroup {
    FgAbGroup::cyclic(n)
}

fn zero() -> FgAbGroup {
    FgAbGroup::trivial()
}

/// The square with every corner a point and every functor the identity.
fn point_square() -> PushoutSquare {
    let id = Functor::identity(&point());
    PushoutSquare::new(id.clone(), id.clone(), id.clone(), id).unwrap()
}

/// Point -> point and point -> BZ/2; the pushout is BZ/2 itself.
fn trivial_z2_square() -> PushoutSquare {
    let pt = point();
    let bz2 = corpus::cyclic_group(2);
    let f1 = Functor::identity(&pt);
    let f2 = Functor::from_names(
        pt.clone(),
        bz2.clone(),
        &[("x0".into(), "*".into())],
        &[("id_x0".into(), "g0".into())],
    )
    .unwrap();
    let i2 = Functor::identity(&bz2);
    PushoutSquare::new(f1, f2.clone(), f2, i2).unwrap()
}

/// Two chains x0 < x1 glued along the shared point x0.
fn span_square() -> PushoutSquare {
    let two = corpus::chain(2);
    let (_, f1) = corpus::full_subcategory_inclusion(&two, |o| o == "x0");
    let (_, f2) = corpus::full_subcategory_inclusion(&two, |o| o == "x0");
    let success = pushout(&f1, &f2, 8, 10_000).unwrap().unwrap();
    PushoutSquare::new(f1, f2, success.i1, success.i2).unwrap()
}

fn standin_z2() -> PushoutSquare {
    standin_square(&corpus::cyclic_group(2)).unwrap()
}

// ---- covering checkers ----

#[test]
fn identity_is_a_local_covering_and_a_covering() {
    for cat in [point(), corpus::span(), corpus::cyclic_group(3)] {
        let id = Functor::identity(&cat);
        let v = local_covering_check(&id, 3).unwrap();
        assert_eq!(v.kind, VerdictKind::Certified);
        assert!(covering_check(&id, 3).unwrap().is_covering());
    }
}

#[test]
fn point_into_group_is_a_covering() {
    // x/F is the discrete set of group elements for every object.
    let sq = trivial_z2_square();
    let v = local_covering_check(&sq.i1, 3).unwrap();
    assert!(v.passed());
    assert!(covering_check(&sq.i1, 3).unwrap().is_covering());
}

#[test]
fn standin_direct_legs_are_local_coverings_but_not_coverings() {
    let sq = standin_z2();
    for leg in [&sq.i1, &sq.i2] {
        let v = local_covering_check(leg, 3).unwrap();
        assert!(v.passed(), "direct legs satisfy the local condition");
    }
    // I1 misses the terminal object's component structure: precomposition
    // along the arrow out of the adjoined initial object is not a pi_0
    // bijection of under categories.
    let verdict = covering_check(&sq.i1, 3).unwrap();
    assert!(!verdict.is_covering());
    assert!(matches!(verdict, CoveringVerdict::NotCovering { .. }));
}

#[test]
fn standin_composite_leg_fails_the_local_condition() {
    let sq = standin_z2();
    let v = local_covering_check(&sq.i0(), 3).unwrap();
    assert_eq!(v.kind, VerdictKind::Failed);
    // Exactly one under category (the adjoined initial object's) is BZ/2.
    let failing: Vec<_> = v.records.iter().filter(|r| r.failure.is_some()).collect();
    assert_eq!(failing.len(), 1);
    let (deg, h) = failing[0].failure.as_ref().unwrap();
    assert_eq!(*deg, 1);
    assert!(h.isomorphic(&z_mod(2)));
    assert_eq!(failing[0].pi1, Pi1Probe::NontrivialAbelianization);
}

#[test]
fn hypothesis_checklist_for_the_glued_chains() {
    let sq = span_square();
    let check = theorem1_hypotheses(&sq, 3).unwrap();
    assert!(check.holds);
    assert!(check.certificates_structural);
}

#[test]
fn hypothesis_checklist_fails_only_on_the_composite_leg() {
    let sq = standin_z2();
    let check = theorem1_hypotheses(&sq, 3).unwrap();
    assert!(!check.holds);
    assert!(check.f1_injective_on_objects && check.f2_injective_on_objects);
    assert!(check.i1.passed() && check.i2.passed());
    assert!(!check.i0.passed());
}

// ---- homotopy pushout complex ----

#[test]
fn homotopy_pushout_of_points_is_a_point() {
    let sq = point_square();
    let m = const_diagram(sq.apex(), &z(), Variance::Left);
    let ho = homotopy_pushout_complex(&sq, &m, 3).unwrap();
    let h = ho.p.graded_homology(3).unwrap();
    assert!(h.is_discrete(1));
}

#[test]
fn homotopy_pushout_of_the_standin_is_a_suspension() {
    // Both legs contractible, shared part BZ/2: H_*(P) = reduced
    // H_{*-1}(BZ/2) shifted, i.e. (Z, 0, Z/2, 0).
    let sq = standin_z2();
    let m = const_diagram(sq.apex(), &z(), Variance::Left);
    let ho = homotopy_pushout_complex(&sq, &m, 3).unwrap();
    let h = ho.p.graded_homology(3).unwrap();
    assert!(h.isomorphic(&graded(&[z(), zero(), z_mod(2), zero()])));
}

// ---- mv_predict ----

#[test]
fn predict_for_identity_legs_is_a_point() {
    let pt = point();
    let id = Functor::identity(&pt);
    let m = const_diagram(&pt, &z(), Variance::Left);
    let h = mv_predict(&id, &id, &m, &m, 3).unwrap();
    assert!(h.is_discrete(1));
}

#[test]
fn predict_for_two_points_under_two_points_is_a_circle() {
    // Legs discrete{2} -> point on both sides: the homotopy pushout is a
    // circle, so the prediction is (Z, Z, 0, 0).
    let two = corpus::discrete(2);
    let pt = point();
    let f = Functor::from_names(
        two.clone(),
        pt.clone(),
        &[("x0".into(), "x0".into()), ("x1".into(), "x0".into())],
        &[
            ("id_x0".into(), "id_x0".into()),
            ("id_x1".into(), "id_x0".into()),
        ],
    )
    .unwrap();
    let m = const_diagram(&pt, &z(), Variance::Left);
    let h = mv_predict(&f, &f, &m, &m, 3).unwrap();
    assert!(h.isomorphic(&graded(&[z(), z(), zero(), zero()])));
}

#[test]
fn predict_for_two_group_legs_gives_the_amalgam() {
    // BZ/2 <- point -> BZ/2: the homotopy pushout is the classifying space
    // of the infinite dihedral group Z/2 * Z/2, with homology
    // (Z, Z/2 + Z/2, 0, Z/2 + Z/2).
    let pt = point();
    let bz2 = corpus::cyclic_group(2);
    let f = Functor::from_names(
        pt.clone(),
        bz2.clone(),
        &[("x0".into(), "*".into())],
        &[("id_x0".into(), "g0".into())],
    )
    .unwrap();
    let m = const_diagram(&bz2, &z(), Variance::Left);
    let h = mv_predict(&f, &f, &m, &m, 3).unwrap();
    let d = z_mod(2).direct_sum(&z_mod(2));
    assert!(h.isomorphic(&graded(&[z(), d.clone(), zero(), d])));
}

// ---- mv_verify (colimit side) ----

#[test]
fn verify_point_square_is_exact() {
    let sq = point_square();
    let m = const_diagram(sq.apex(), &z(), Variance::Left);
    let report = mv_verify(&sq, &m, 3).unwrap();
    assert!(report.quasi_iso);
    assert!(report.exact());
    assert!(report.h_c.is_discrete(1));
}

#[test]
fn verify_glued_chains_is_exact() {
    let sq = span_square();
    let m = const_diagram(sq.apex(), &z(), Variance::Left);
    let report = mv_verify(&sq, &m, 3).unwrap();
    assert!(report.exact());
    assert!(report.h_c.is_discrete(1));
    assert!(report.h_c0.is_discrete(1));
}

#[test]
fn verify_trivial_z2_square_is_exact() {
    let sq = trivial_z2_square();
    let m = const_diagram(sq.apex(), &z(), Variance::Left);
    let report = mv_verify(&sq, &m, 3).unwrap();
    assert!(report.exact());
    assert!(report
        .h_c
        .isomorphic(&graded(&[z(), z_mod(2), zero(), z_mod(2)])));
}

#[test]
fn verify_standin_square_fails() {
    let sq = standin_z2();
    let m = const_diagram(sq.apex(), &z(), Variance::Left);
    let report = mv_verify(&sq, &m, 3).unwrap();
    assert!(!report.quasi_iso);
    assert!(report.connecting.is_none());
    assert!(!report.exact());
    // The pushout has an initial object, so its derived colimits vanish
    // above degree 0; the torsion class of the shared subcategory has
    // nowhere to go.
    assert!(report.h_c.is_discrete(1));
    assert!(report
        .h_c0
        .isomorphic(&graded(&[z(), z_mod(2), zero(), z_mod(2)])));
    let failing = report.failing_nodes();
    assert!(failing
        .iter()
        .any(|n| n.degree == 1 && n.node == NodeKind::Shared && n.defect.isomorphic(&z_mod(2))));
}

#[test]
fn verify_standin_square_with_odd_torsion_fails() {
    let sq = standin_square(&corpus::cyclic_group(3)).unwrap();
    let m = const_diagram(sq.apex(), &z(), Variance::Left);
    let report = mv_verify(&sq, &m, 2).unwrap();
    assert!(!report.exact());
    assert!(report
        .failing_nodes()
        .iter()
        .any(|n| n.defect.isomorphic(&z_mod(3))));
}

// ---- mv_verify_lim (limit side) ----

#[test]
fn verify_lim_point_square_is_exact() {
    let sq = point_square();
    let l = const_diagram(sq.apex(), &z(), Variance::Right);
    let report = mv_verify_lim(&sq, &l, 3).unwrap();
    assert!(report.exact());
    assert!(report.h_c.is_discrete(1));
}

#[test]
fn verify_lim_trivial_z2_square_is_exact() {
    let sq = trivial_z2_square();
    let l = const_diagram(sq.apex(), &z(), Variance::Right);
    let report = mv_verify_lim(&sq, &l, 3).unwrap();
    assert!(report.exact());
    // Group cohomology of Z/2 with integer coefficients.
    assert!(report
        .h_c
        .isomorphic(&graded(&[z(), zero(), z_mod(2), zero()])));
}

#[test]
fn verify_lim_standin_square_fails() {
    let sq = standin_z2();
    let l = const_diagram(sq.apex(), &z(), Variance::Right);
    let report = mv_verify_lim(&sq, &l, 3).unwrap();
    assert!(!report.exact());
    // C has an initial object so its derived limits also vanish above
    // degree 0 here (the diagram is constant); the cohomological torsion
    // of the shared part sits in degree 2 with nowhere to come from.
    assert!(report.h_c.is_discrete(1));
    assert!(report
        .h_c0
        .isomorphic(&graded(&[z(), zero(), z_mod(2), zero()])));
    let failing = report.failing_nodes();
    assert!(failing
        .iter()
        .any(|n| n.degree == 2 && n.node == NodeKind::Shared && n.defect.isomorphic(&z_mod(2))));
}

// ---- the canned counter-example ----

#[test]
fn counterexample_reproduces() {
    let report = counterexample_repro().unwrap();
    assert!(report.shared_h1.isomorphic(&z_mod(2)));
    assert!(!report.hypotheses.holds);
    assert!(!report.mv.exact());
    assert!(!report.mv_lim.exact());
}

#[test]
fn counterexample_generalizes_to_odd_torsion() {
    let report = counterexample_for(&corpus::cyclic_group(3), 3).unwrap();
    assert!(report.shared_h1.isomorphic(&z_mod(3)));
    assert!(!report.mv.exact());
}

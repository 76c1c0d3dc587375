//! Reproduction of the counter-example: a pushout square whose legs are
//! contractible but whose shared subcategory has nonvanishing reduced
//! homology, so no Mayer-Vietoris sequence of derived (co)limits can be
//! exact.

use crate::abelian::FgAbGroup;
use crate::corpus;
use crate::dmod::{const_diagram, derived_colim, nerve_homology, restrict, Variance};
use crate::fincat::{pushout, FinCategory, PushoutSquare};

use super::cover::{theorem1_hypotheses, Theorem1Checklist};
use super::lim::mv_verify_lim;
use super::verify::{mv_verify, MVReport};
use super::MvError;

/// The stand-in square over a one-object group category C0: C1 adjoins a
/// disjoint initial object, C2 a disjoint terminal one, and C is their
/// pushout under C0. N C1, N C2 and N C are contractible while N C0 keeps
/// the group's homology.
pub fn standin_square(c0: &FinCategory) -> Result<PushoutSquare, MvError> {
    let (f1, f2) = corpus::standin_legs(c0);
    let success = pushout(&f1, &f2, 8, 10_000)?
        .map_err(|b| MvError::Square(format!("stand-in pushout exceeded bounds: {}", b)))?;
    Ok(PushoutSquare::new(f1, f2, success.i1, success.i2)?)
}

#[derive(Debug)]
pub struct CounterexampleReport {
    pub square: PushoutSquare,
    pub hypotheses: Theorem1Checklist,
    pub mv: MVReport,
    pub mv_lim: MVReport,
    /// Reduced homology of the shared subcategory in degree 1.
    pub shared_h1: FgAbGroup,
}

/// Runs the full counter-example with C0 the one-object Z/2 category and
/// asserts everything the argument needs: contractible legs and pushout,
/// colim_1 over C0 equal to Z/2, failure of the colimit and limit
/// Mayer-Vietoris sequences, and failure of exactly the local-covering
/// hypothesis on the composite leg.
pub fn counterexample_repro() -> Result<CounterexampleReport, MvError> {
    counterexample_for(&corpus::cyclic_group(2), 2)
}

/// The same run over an arbitrary one-object group category.
pub fn counterexample_for(
    c0: &FinCategory,
    expected_torsion: u64,
) -> Result<CounterexampleReport, MvError> {
    let n = 3;
    let square = standin_square(c0)?;
    // The three other corners are contractible.
    for cat in [
        square.f1.codomain(),
        square.f2.codomain(),
        square.apex(),
    ] {
        let h = nerve_homology(cat, n)?;
        if !h.is_discrete(1) {
            return Err(MvError::Internal(format!(
                "expected a contractible nerve, found {}",
                h
            )));
        }
    }
    let z = FgAbGroup::free(1);
    let m = const_diagram(square.apex(), &z, Variance::Left);
    let m0 = restrict(&m, &square.i0())?;
    let h0 = derived_colim(&m0, n)?;
    let shared_h1 = h0.values[1].clone();
    if !shared_h1.isomorphic(&FgAbGroup::cyclic(expected_torsion)) {
        return Err(MvError::Internal(format!(
            "expected torsion Z/{} in degree 1 over the shared subcategory, found {}",
            expected_torsion,
            shared_h1.normal_form()
        )));
    }
    let hypotheses = theorem1_hypotheses(&square, n)?;
    if hypotheses.holds {
        return Err(MvError::Internal(
            "the hypothesis checklist unexpectedly passed".into(),
        ));
    }
    // The failing hypothesis must be the local-covering condition on the
    // composite leg (the direct legs are fine).
    if !hypotheses.i1.passed() || !hypotheses.i2.passed() || hypotheses.i0.passed() {
        return Err(MvError::Internal(
            "expected the composite leg (and only it) to fail the local-covering check".into(),
        ));
    }
    let mv = mv_verify(&square, &m, n)?;
    if mv.exact() {
        return Err(MvError::Internal(
            "the colimit Mayer-Vietoris sequence was unexpectedly exact".into(),
        ));
    }
    let l = const_diagram(square.apex(), &z, Variance::Right);
    let mv_lim = mv_verify_lim(&square, &l, n)?;
    if mv_lim.exact() {
        return Err(MvError::Internal(
            "the limit Mayer-Vietoris sequence was unexpectedly exact".into(),
        ));
    }
    Ok(CounterexampleReport {
        square,
        hypotheses,
        mv,
        mv_lim,
        shared_h1,
    })
}

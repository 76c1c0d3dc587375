//! Mayer-Vietoris verification for derived limits: the dual construction
//! with cobar complexes and a homotopy fiber.

use num_bigint::BigInt;

use crate::abelian::{self, AbHom, FgAbGroup, IntMatrix, PresentedHomologyNode};
use crate::dmod::{
    cobar_complex, cobar_restriction_maps, restrict, CobarComplex, Diagram, GradedAbGroup,
    Orientation, PresentedComplex, Variance,
};
use crate::fincat::PushoutSquare;

use super::verify::{MVReport, NodeKind, NodeReport};
use super::MvError;

/// Fib(f: A -> B) of cochain complexes: degree n is A^n ⊕ B^{n-1} with
/// d(a, b) = (d a, f(a) − d b). Acyclic exactly when f is a
/// quasi-isomorphism (through the carried degrees).
fn fib(f: &[AbHom], a: &PresentedComplex, b: &PresentedComplex) -> Result<PresentedComplex, MvError> {
    let trunc = a.truncation().min(b.truncation() + 1).min(f.len() - 1);
    let mut groups = Vec::new();
    for n in 0..=trunc {
        let bn = if n == 0 {
            FgAbGroup::trivial()
        } else {
            b.groups[n - 1].clone()
        };
        groups.push(a.groups[n].direct_sum(&bn));
    }
    let mut maps = Vec::new();
    for n in 0..trunc {
        // Rows: A^{n+1} ⊕ B^n; columns: A^n ⊕ B^{n-1}.
        let ra = a.groups[n + 1].gens();
        let rb = b.groups[n].gens();
        let ca = a.groups[n].gens();
        let cb = if n == 0 { 0 } else { b.groups[n - 1].gens() };
        let da = a.maps[n].matrix();
        let fa = f[n].matrix();
        let ndb = if n == 0 {
            IntMatrix::zero(rb, 0)
        } else {
            b.maps[n - 1].matrix().neg()
        };
        let mat = IntMatrix::from_blocks(
            &[ra, rb],
            &[ca, cb],
            &[vec![Some(da), None], vec![Some(fa), Some(&ndb)]],
        );
        maps.push(AbHom::new(groups[n].clone(), groups[n + 1].clone(), mat)?);
    }
    Ok(PresentedComplex::new(Orientation::Cohomological, groups, maps)?)
}

fn sum_cochain(a: &PresentedComplex, b: &PresentedComplex) -> Result<PresentedComplex, MvError> {
    let trunc = a.truncation().min(b.truncation());
    let groups: Vec<FgAbGroup> = (0..=trunc)
        .map(|n| a.groups[n].direct_sum(&b.groups[n]))
        .collect();
    let mut maps = Vec::new();
    for n in 0..trunc {
        let mat = a.maps[n].matrix().block_diag(b.maps[n].matrix());
        maps.push(AbHom::new(groups[n].clone(), groups[n + 1].clone(), mat)?);
    }
    Ok(PresentedComplex::new(Orientation::Cohomological, groups, maps)?)
}

/// Solves phi(x) + d_Q(q) = target (mod relations of Q^{n+1}) with x a
/// cocycle (d x = 0 mod relations of C^{n+2}), returning x.
fn lift_across_phi(
    phi_next: &AbHom,
    d_q: &AbHom,
    d_c_next: &AbHom,
    target: &IntMatrix,
) -> Option<IntMatrix> {
    let x_dim = phi_next.source().gens();
    let q_dim = d_q.source().gens();
    let rq = phi_next.target().rels();
    let rc = d_c_next.target().rels();
    // Unknowns: x, q, t (relation multiples in Q^{n+1}), s (in C^{n+2}).
    // Rows: coordinates of Q^{n+1} gens, then of C^{n+2} gens.
    let row_q = phi_next.target().gens();
    let row_c = d_c_next.target().gens();
    let sys = IntMatrix::from_blocks(
        &[row_q, row_c],
        &[x_dim, q_dim, rq.cols(), rc.cols()],
        &[
            vec![Some(phi_next.matrix()), Some(d_q.matrix()), Some(rq), None],
            vec![Some(d_c_next.matrix()), None, None, Some(rc)],
        ],
    );
    let rhs = target.vstack(&IntMatrix::zero(row_c, 1));
    let snf = abelian::snf::smith_normal_form(&sys);
    let sol = abelian::snf::solve(&snf, &rhs)?;
    let idx: Vec<usize> = (0..x_dim).collect();
    Some(sol.select_rows(&idx))
}

fn induced_on_presented(
    source: &PresentedHomologyNode,
    target: &PresentedHomologyNode,
    mat: &IntMatrix,
) -> Result<AbHom, MvError> {
    let mut cols = Vec::new();
    for j in 0..source.cycle_reps.cols() {
        let z = IntMatrix::col_vec(&source.cycle_reps.column(j));
        cols.push(target.classify(&mat.mul(&z))?);
    }
    let m = IntMatrix::from_fn(target.group.gens(), cols.len(), |i, j| {
        cols[j].get(i, 0).clone()
    });
    Ok(AbHom::new(source.group.clone(), target.group.clone(), m)?)
}

/// Verifies the Mayer-Vietoris sequence of derived limits
/// lim^n C -> lim^n C1 ⊕ lim^n C2 -> lim^n C0 -> lim^{n+1} C for a pushout
/// square and a right diagram over the pushout, through degree `n`.
pub fn mv_verify_lim(square: &PushoutSquare, l: &Diagram, n: usize) -> Result<MVReport, MvError> {
    if l.variance != Variance::Right || &l.base != square.apex() {
        return Err(MvError::Square(
            "limit-side verification needs a right diagram over the pushout".into(),
        ));
    }
    let n_max = n + 1;
    let l1 = restrict(l, &square.i1)?;
    let l2 = restrict(l, &square.i2)?;
    let i0 = square.i0();
    let l0 = restrict(l, &i0)?;
    let co_c: CobarComplex = cobar_complex(l, n_max)?;
    let co_1 = cobar_complex(&l1, n_max)?;
    let co_2 = cobar_complex(&l2, n_max)?;
    let co_0 = cobar_complex(&l0, n_max)?;
    let r1 = cobar_restriction_maps(&square.i1, &co_c, &co_1)?;
    let r2 = cobar_restriction_maps(&square.i2, &co_c, &co_2)?;
    let s1 = cobar_restriction_maps(&square.f1, &co_1, &co_0)?;
    let s2 = cobar_restriction_maps(&square.f2, &co_2, &co_0)?;
    let trunc = n + 2;

    let sum = sum_cochain(&co_1.complex, &co_2.complex)?;
    // a: cobar(C) -> sum, x ↦ (r1 x, r2 x); b: sum -> cobar(C0),
    // (u, v) ↦ s1 u − s2 v.
    let mut a_maps = Vec::new();
    let mut b_maps = Vec::new();
    for k in 0..=trunc {
        let am = r1[k].matrix().vstack(r2[k].matrix());
        a_maps.push(AbHom::new(co_c.complex.groups[k].clone(), sum.groups[k].clone(), am)?);
        let bm = s1[k].matrix().hstack(&s2[k].matrix().neg());
        b_maps.push(AbHom::new(
            sum.groups[k].clone(),
            co_0.complex.groups[k].clone(),
            bm,
        )?);
    }
    // Q = Fib(b); phi: cobar(C) -> Q, x ↦ (a x, 0).
    let b_plain: Vec<AbHom> = b_maps.clone();
    let q = fib(&b_plain, &sum, &co_0.complex)?;
    let mut phi = Vec::new();
    for k in 0..=q.truncation() {
        let pad = q.groups[k].gens() - sum.groups[k].gens();
        let mat = a_maps[k]
            .matrix()
            .vstack(&IntMatrix::zero(pad, co_c.complex.groups[k].gens()));
        phi.push(AbHom::new(co_c.complex.groups[k].clone(), q.groups[k].clone(), mat)?);
    }
    // Cochain condition for phi.
    for k in 0..q.truncation() {
        let lhs = q.maps[k].compose(&phi[k])?;
        let rhs = phi[k + 1].compose(&co_c.complex.maps[k])?;
        if !lhs.same_map(&rhs) {
            return Err(MvError::Internal(
                "comparison map does not commute with the cobar differential".into(),
            ));
        }
    }
    // Quasi-isomorphism check: Fib(phi) acyclic through degree n+1.
    let fib_phi = fib(&phi, &co_c.complex, &q)?;
    let cone_h = fib_phi.graded_homology(n + 1)?;
    let quasi_iso = cone_h.values.iter().all(|g| g.is_trivial());

    let nodes_c: Vec<PresentedHomologyNode> = (0..=n + 1)
        .map(|k| co_c.complex.homology_node(k))
        .collect::<Result<_, _>>()?;
    let nodes_sum: Vec<PresentedHomologyNode> = (0..=n + 1)
        .map(|k| sum.homology_node(k))
        .collect::<Result<_, _>>()?;
    let nodes_0: Vec<PresentedHomologyNode> = (0..=n + 1)
        .map(|k| co_0.complex.homology_node(k))
        .collect::<Result<_, _>>()?;

    let mut alpha = Vec::new();
    let mut beta = Vec::new();
    for k in 0..=n + 1 {
        alpha.push(induced_on_presented(
            &nodes_c[k],
            &nodes_sum[k],
            a_maps[k].matrix(),
        )?);
        beta.push(induced_on_presented(
            &nodes_sum[k],
            &nodes_0[k],
            b_maps[k].matrix(),
        )?);
    }

    // Connecting maps del[k]: lim^k C0 -> lim^{k+1} C by lifting (0, y)
    // across phi.
    let connecting = if quasi_iso {
        let mut dels = Vec::new();
        for k in 0..=n {
            let src = &nodes_0[k];
            let tgt = &nodes_c[k + 1];
            let mut cols = Vec::new();
            let sum_gens = sum.groups[k + 1].gens();
            for j in 0..src.cycle_reps.cols() {
                let y = IntMatrix::col_vec(&src.cycle_reps.column(j));
                // Target vector (0, y) in Q^{k+1} = sum^{k+1} ⊕ C0^k.
                let target = IntMatrix::from_fn(q.groups[k + 1].gens(), 1, |i, _| {
                    if i >= sum_gens {
                        y.get(i - sum_gens, 0).clone()
                    } else {
                        BigInt::from(0)
                    }
                });
                let x = lift_across_phi(
                    &phi[k + 1],
                    &q.maps[k],
                    &co_c.complex.maps[k + 1],
                    &target,
                )
                .ok_or_else(|| {
                    MvError::Internal(
                        "cocycle lift failed although the comparison map is a quasi-isomorphism"
                            .into(),
                    )
                })?;
                cols.push(tgt.classify(&x)?);
            }
            let mat = IntMatrix::from_fn(tgt.group.gens(), cols.len(), |i, j| {
                cols[j].get(i, 0).clone()
            });
            dels.push(AbHom::new(src.group.clone(), tgt.group.clone(), mat)?);
        }
        Some(dels)
    } else {
        None
    };

    let zero_into = |g: &FgAbGroup| AbHom::zero(&FgAbGroup::trivial(), g);
    let zero_from = |g: &FgAbGroup| AbHom::zero(g, &FgAbGroup::trivial());
    let mut nodes = Vec::new();
    for k in 0..=n {
        // Node at lim^k C: incoming del[k-1], outgoing alpha[k]; the
        // sequence starts 0 -> lim^0 C.
        let incoming = match (&connecting, k) {
            (_, 0) => zero_into(alpha[0].source()),
            (Some(d), _) => d[k - 1].clone(),
            (None, _) => zero_into(alpha[k].source()),
        };
        let rep = abelian::exactness_defect(&incoming, &alpha[k])?;
        nodes.push(NodeReport {
            degree: k,
            node: NodeKind::Pushout,
            defect: rep.defect,
            composite_zero: rep.composite_zero,
        });
        let rep = abelian::exactness_defect(&alpha[k], &beta[k])?;
        nodes.push(NodeReport {
            degree: k,
            node: NodeKind::Legs,
            defect: rep.defect,
            composite_zero: rep.composite_zero,
        });
        // Node at lim^k C0: incoming beta[k], outgoing del[k].
        let outgoing = match &connecting {
            Some(d) => d[k].clone(),
            None => zero_from(beta[k].target()),
        };
        let rep = abelian::exactness_defect(&beta[k], &outgoing)?;
        nodes.push(NodeReport {
            degree: k,
            node: NodeKind::Shared,
            defect: rep.defect,
            composite_zero: rep.composite_zero,
        });
    }

    Ok(MVReport {
        degree: n,
        h_c0: GradedAbGroup {
            values: nodes_0[..=n].iter().map(|x| x.group.clone()).collect(),
        },
        h_legs: GradedAbGroup {
            values: nodes_sum[..=n].iter().map(|x| x.group.clone()).collect(),
        },
        h_c: GradedAbGroup {
            values: nodes_c[..=n].iter().map(|x| x.group.clone()).collect(),
        },
        alpha,
        beta,
        connecting,
        quasi_iso,
        cone_psi_homology: cone_h,
        nodes,
    })
}

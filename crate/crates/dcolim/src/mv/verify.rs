//! Homotopy-pushout complex, Mayer-Vietoris verification and prediction
//! for derived colimits.

use crate::abelian::{self, AbHom, FgAbGroup, HomologyNode, IntMatrix};
use crate::dmod::{
    bar_complex, cone, induced_matrices, restrict, BarComplex, ChainMap, Diagram, FreeComplex,
    DmodError, GradedAbGroup, Variance,
};
use crate::fincat::{Functor, PushoutSquare};

use super::MvError;

/// Direct sum of two free complexes, first summand's basis first.
fn sum_complex(a: &FreeComplex, b: &FreeComplex) -> Result<FreeComplex, DmodError> {
    let trunc = a.truncation().min(b.truncation());
    let mut dims = Vec::new();
    let mut labels = Vec::new();
    let mut d = Vec::new();
    for n in 0..=trunc {
        dims.push(a.dims[n] + b.dims[n]);
        let mut lab = a.labels[n].clone();
        lab.extend(b.labels[n].iter().cloned());
        labels.push(lab);
        d.push(a.d[n].block_diag(&b.d[n]));
    }
    Ok(FreeComplex::new(dims, labels, d)?)
}

/// The double mapping cone P = Cone(alpha: bar(C0) -> bar(C1) ⊕ bar(C2))
/// with the comparison map psi: P -> bar(C), zero on the shifted part and
/// I1* − I2* on the sum part.
pub struct HoPushout {
    pub bar0: BarComplex,
    pub bar1: BarComplex,
    pub bar2: BarComplex,
    pub bar_c: Option<BarComplex>,
    pub sum: FreeComplex,
    pub alpha: ChainMap,
    pub p: FreeComplex,
    /// Chain maps bar1 -> bar(C) and bar2 -> bar(C); present with bar_c.
    pub psi: Option<ChainMap>,
}

/// Builds P (and psi when the full square is supplied) with all bar
/// complexes through degree `trunc`.
fn build_ho_pushout(
    f1: &Functor,
    f2: &Functor,
    m1: &Diagram,
    m2: &Diagram,
    square: Option<(&PushoutSquare, &Diagram)>,
    trunc: usize,
) -> Result<HoPushout, MvError> {
    assert!(trunc >= 1);
    let m0 = restrict(m1, f1)?;
    // The two restrictions to C0 must agree.
    let m0b = restrict(m2, f2)?;
    for c in 0..m0.base.num_objects() {
        if m0.groups[c] != m0b.groups[c] {
            return Err(MvError::Square(
                "the leg diagrams restrict differently to the shared subcategory".into(),
            ));
        }
    }
    for m in 0..m0.base.num_morphisms() {
        if !m0.maps[m].same_map(&m0b.maps[m]) {
            return Err(MvError::Square(
                "the leg diagrams restrict differently to the shared subcategory".into(),
            ));
        }
    }
    let n_max = trunc - 1;
    let bar0 = bar_complex(&m0, n_max, true)?;
    let bar1 = bar_complex(m1, n_max, true)?;
    let bar2 = bar_complex(m2, n_max, true)?;
    let phi1 = induced_matrices(f1, &bar0, &bar1)?;
    let phi2 = induced_matrices(f2, &bar0, &bar2)?;
    let sum = sum_complex(&bar1.complex, &bar2.complex)?;
    let alpha_mats: Vec<IntMatrix> = (0..=trunc)
        .map(|n| phi1.mats[n].vstack(&phi2.mats[n]))
        .collect();
    let alpha = ChainMap::new(&bar0.complex, &sum, alpha_mats)?;
    let p = cone(&alpha, &bar0.complex, &sum)?;
    let (bar_c, psi) = if let Some((sq, m)) = square {
        let bar_c = bar_complex(m, n_max, true)?;
        let i1m = induced_matrices(&sq.i1, &bar1, &bar_c)?;
        let i2m = induced_matrices(&sq.i2, &bar2, &bar_c)?;
        // psi on Cone_n = bar0_{n-1} ⊕ bar1_n ⊕ bar2_n.
        let mut mats = Vec::new();
        for n in 0..=trunc {
            let shift = if n == 0 { 0 } else { bar0.complex.dims[n - 1] };
            let beta = i1m.mats[n].hstack(&i2m.mats[n].neg());
            let m = IntMatrix::zero(bar_c.complex.dims[n], shift).hstack(&beta);
            mats.push(m);
        }
        let psi = ChainMap::new(&p, &bar_c.complex, mats)?;
        (Some(bar_c), Some(psi))
    } else {
        (None, None)
    };
    Ok(HoPushout {
        bar0,
        bar1,
        bar2,
        bar_c,
        sum,
        alpha,
        p,
        psi,
    })
}

/// The homotopy pushout complex P and comparison map for a full square.
pub fn homotopy_pushout_complex(
    square: &PushoutSquare,
    m: &Diagram,
    n: usize,
) -> Result<HoPushout, MvError> {
    if m.variance != Variance::Left || &m.base != square.apex() {
        return Err(MvError::Square(
            "mv verification needs a left diagram over the pushout".into(),
        ));
    }
    let m1 = restrict(m, &square.i1)?;
    let m2 = restrict(m, &square.i2)?;
    build_ho_pushout(
        &square.f1,
        &square.f2,
        &m1,
        &m2,
        Some((square, m)),
        n + 1,
    )
}

/// Predicted derived colimits of the homotopy pushout, from the legs only:
/// homology of P in degrees 0..=n. `m1` and `m2` must restrict to the same
/// diagram on the shared subcategory.
pub fn mv_predict(
    f1: &Functor,
    f2: &Functor,
    m1: &Diagram,
    m2: &Diagram,
    n: usize,
) -> Result<GradedAbGroup, MvError> {
    if f1.domain() != f2.domain() {
        return Err(MvError::Square("legs have different shared domains".into()));
    }
    let ho = build_ho_pushout(f1, f2, m1, m2, None, n + 1)?;
    Ok(ho.p.graded_homology(n)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NodeKind {
    /// The colim^{C0} entry (target of the connecting map).
    Shared,
    /// The colim^{C1} ⊕ colim^{C2} entry.
    Legs,
    /// The colim^{C} entry.
    Pushout,
}

#[derive(Clone, Debug)]
pub struct NodeReport {
    pub degree: usize,
    pub node: NodeKind,
    pub defect: FgAbGroup,
    pub composite_zero: bool,
}

impl NodeReport {
    pub fn exact(&self) -> bool {
        self.defect.is_trivial() && self.composite_zero
    }
}

#[derive(Clone, Debug)]
pub struct MVReport {
    pub degree: usize,
    pub h_c0: GradedAbGroup,
    pub h_legs: GradedAbGroup,
    pub h_c: GradedAbGroup,
    /// alpha[n]: H_n(C0) -> H_n(C1) ⊕ H_n(C2).
    pub alpha: Vec<AbHom>,
    /// beta[n]: H_n(C1) ⊕ H_n(C2) -> H_n(C).
    pub beta: Vec<AbHom>,
    /// connecting[k]: H_{k+1}(C) -> H_k(C0); absent when the comparison
    /// map is not a quasi-isomorphism.
    pub connecting: Option<Vec<AbHom>>,
    pub quasi_iso: bool,
    /// Homology of Cone(psi) in degrees 0..=degree+1.
    pub cone_psi_homology: GradedAbGroup,
    pub nodes: Vec<NodeReport>,
}

impl MVReport {
    pub fn exact(&self) -> bool {
        self.quasi_iso && self.nodes.iter().all(|n| n.exact())
    }

    pub fn failing_nodes(&self) -> Vec<&NodeReport> {
        self.nodes.iter().filter(|n| !n.exact()).collect()
    }
}

/// Solves psi(p) + d(w) = z with d_P(p) = 0 and returns p. Possible
/// whenever H_n(Cone psi) = 0.
fn lift_across_psi(
    psi_n: &IntMatrix,
    d_c_next: &IntMatrix,
    d_p_n: &IntMatrix,
    z: &IntMatrix,
) -> Option<IntMatrix> {
    let p_dim = psi_n.cols();
    let top = psi_n.hstack(d_c_next);
    let bottom = d_p_n.hstack(&IntMatrix::zero(d_p_n.rows(), d_c_next.cols()));
    let sys = top.vstack(&bottom);
    let rhs = z.vstack(&IntMatrix::zero(d_p_n.rows(), 1));
    let snf = abelian::snf::smith_normal_form(&sys);
    let sol = abelian::snf::solve(&snf, &rhs)?;
    let idx: Vec<usize> = (0..p_dim).collect();
    Some(sol.select_rows(&idx))
}

/// Verifies the Mayer-Vietoris sequence of derived colimits for a pushout
/// square through degree `n`.
pub fn mv_verify(square: &PushoutSquare, m: &Diagram, n: usize) -> Result<MVReport, MvError> {
    let trunc = n + 2;
    let ho = homotopy_pushout_complex(square, m, trunc - 1)?;
    let bar_c = ho.bar_c.as_ref().unwrap();
    let psi = ho.psi.as_ref().unwrap();
    let cone_psi = cone(psi, &ho.p, &bar_c.complex)?;
    let cone_h = cone_psi.graded_homology(n + 1)?;
    let quasi_iso = cone_h.values.iter().all(|g| g.is_trivial());

    // Homology nodes, shared between the maps so presentations agree.
    let nodes0: Vec<HomologyNode> = (0..=n + 1)
        .map(|k| ho.bar0.complex.homology_node(k))
        .collect::<Result<_, _>>()?;
    let nodes_sum: Vec<HomologyNode> = (0..=n + 1)
        .map(|k| ho.sum.homology_node(k))
        .collect::<Result<_, _>>()?;
    let nodes_c: Vec<HomologyNode> = (0..=n + 1)
        .map(|k| bar_c.complex.homology_node(k))
        .collect::<Result<_, _>>()?;

    let mut alpha = Vec::new();
    let mut beta = Vec::new();
    for k in 0..=n + 1 {
        alpha.push(abelian::induced_on_homology(
            &nodes0[k],
            &nodes_sum[k],
            &ho.alpha.mats[k],
        )?);
        // beta is psi restricted to the unshifted part; on homology, use
        // the inclusion of the sum into P followed by psi: columns of
        // psi_k at the sum block.
        let shift = if k == 0 { 0 } else { ho.bar0.complex.dims[k - 1] };
        let idx: Vec<usize> = (shift..ho.p.dims[k]).collect();
        let beta_mat = psi.mats[k].select_cols(&idx);
        beta.push(abelian::induced_on_homology(
            &nodes_sum[k],
            &nodes_c[k],
            &beta_mat,
        )?);
    }

    let connecting = if quasi_iso {
        let mut dels = Vec::new();
        for k in 0..=n {
            // del[k]: H_{k+1}(C) -> H_k(C0), by lifting cycles across psi
            // and projecting to the shifted component.
            let src = &nodes_c[k + 1];
            let tgt = &nodes0[k];
            let mut cols = Vec::new();
            for j in 0..src.cycle_reps.cols() {
                let z = IntMatrix::col_vec(&src.cycle_reps.column(j));
                let p = lift_across_psi(
                    &psi.mats[k + 1],
                    &bar_c.complex.d[k + 2],
                    &ho.p.d[k + 1],
                    &z,
                )
                .ok_or_else(|| {
                    MvError::Internal(
                        "cycle lift failed although the comparison map is a quasi-isomorphism"
                            .into(),
                    )
                })?;
                // Shifted component of p in Cone_{k+1} = bar0_k ⊕ sum_{k+1}.
                let idx: Vec<usize> = (0..ho.bar0.complex.dims[k]).collect();
                let a = p.select_rows(&idx);
                cols.push(tgt.classify(&a)?);
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
        // Node at colim_k^{C0}: incoming del[k], outgoing alpha[k].
        let incoming = match &connecting {
            Some(d) => d[k].clone(),
            None => zero_into(alpha[k].source()),
        };
        let rep = abelian::exactness_defect(&incoming, &alpha[k])?;
        nodes.push(NodeReport {
            degree: k,
            node: NodeKind::Shared,
            defect: rep.defect,
            composite_zero: rep.composite_zero,
        });
        // Node at the legs: incoming alpha[k], outgoing beta[k].
        let rep = abelian::exactness_defect(&alpha[k], &beta[k])?;
        nodes.push(NodeReport {
            degree: k,
            node: NodeKind::Legs,
            defect: rep.defect,
            composite_zero: rep.composite_zero,
        });
        // Node at colim_k^{C}: incoming beta[k], outgoing del[k-1]
        // (zero map in degree 0: the sequence ends at colim_0^C -> 0).
        let outgoing = match (&connecting, k) {
            (_, 0) => zero_from(beta[0].target()),
            (Some(d), _) => d[k - 1].clone(),
            (None, _) => zero_from(beta[k].target()),
        };
        let rep = abelian::exactness_defect(&beta[k], &outgoing)?;
        nodes.push(NodeReport {
            degree: k,
            node: NodeKind::Pushout,
            defect: rep.defect,
            composite_zero: rep.composite_zero,
        });
    }

    Ok(MVReport {
        degree: n,
        h_c0: GradedAbGroup {
            values: nodes0[..=n].iter().map(|x| x.group.clone()).collect(),
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

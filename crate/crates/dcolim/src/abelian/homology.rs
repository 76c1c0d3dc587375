//! Homology of complexes and exactness defects.

use super::group::{lattice_quotient, FgAbGroup};
use super::hom::AbHom;
use super::matrix::IntMatrix;
use super::snf::{self, SnfDecomposition};
use super::AbelianError;
use num_traits::Zero;

/// Homology at a node of a complex of free groups, together with enough
/// data to classify arbitrary cycles.
///
/// The group is presented on the kernel basis of the outgoing differential;
/// `cycle_reps` holds one ambient cycle per presentation generator.
#[derive(Clone, Debug)]
pub struct HomologyNode {
    pub group: FgAbGroup,
    /// ambient_dim x gens; columns are cycles representing the generators.
    pub cycle_reps: IntMatrix,
    out_snf: SnfDecomposition,
    out_rank: usize,
    ambient_dim: usize,
}

impl HomologyNode {
    /// Coordinates of a cycle `z` (ambient column vector) in the
    /// presentation generators of the homology group. Errors if `z` is not a
    /// cycle of the outgoing differential.
    pub fn classify(&self, z: &IntMatrix) -> Result<IntMatrix, AbelianError> {
        assert_eq!(z.rows(), self.ambient_dim);
        let w = self.out_snf.v_inv.mul(z);
        for i in 0..self.out_rank {
            if !w.get(i, 0).is_zero() {
                return Err(AbelianError::NotACycle);
            }
        }
        let idx: Vec<usize> = (self.out_rank..w.rows()).collect();
        Ok(w.select_rows(&idx))
    }
}

/// Homology ker(d_out) / im(d_in) of `Z^a --d_in--> Z^b --d_out--> Z^c`.
///
/// Errors unless d_out ∘ d_in = 0.
pub fn free_homology_node(
    d_in: &IntMatrix,
    d_out: &IntMatrix,
) -> Result<HomologyNode, AbelianError> {
    if d_in.rows() != d_out.cols() {
        return Err(AbelianError::ShapeMismatch {
            context: format!(
                "homology: d_in has {} rows but d_out has {} cols",
                d_in.rows(),
                d_out.cols()
            ),
        });
    }
    if !d_out.mul(d_in).is_zero() {
        return Err(AbelianError::CompositionNonzero);
    }
    let out_snf = snf::smith_normal_form(d_out);
    let ambient = d_out.cols();
    let kernel = snf::kernel_basis(&out_snf); // ambient x k
    // Coordinates of the image of d_in in the kernel basis: rows rank.. of
    // v_inv * d_in (the first `rank` rows vanish because d_out d_in = 0).
    let w_full = out_snf.v_inv.mul(d_in);
    let idx: Vec<usize> = (out_snf.rank..ambient).collect();
    let rels = w_full.select_rows(&idx);
    let group = FgAbGroup::new(kernel.cols(), rels)?;
    Ok(HomologyNode {
        group,
        cycle_reps: kernel,
        out_rank: out_snf.rank,
        out_snf,
        ambient_dim: ambient,
    })
}

/// Homology group of a free complex at a node, as a presented group.
pub fn free_homology(d_in: &IntMatrix, d_out: &IntMatrix) -> Result<FgAbGroup, AbelianError> {
    Ok(free_homology_node(d_in, d_out)?.group)
}

/// Outcome of an exactness check at a node f: A -> B, g: B -> C.
#[derive(Clone, Debug)]
pub struct ExactnessReport {
    /// ker(g) / im(f).
    pub defect: FgAbGroup,
    /// Whether g ∘ f is the zero map.
    pub composite_zero: bool,
}

impl ExactnessReport {
    pub fn is_exact(&self) -> bool {
        self.composite_zero && self.defect.is_trivial()
    }
}

/// ker(g)/im(f) for homs of presented groups, computed by lifting to free
/// covers. The pair is exact at the node iff the defect is trivial and
/// g ∘ f = 0; both facts are reported.
pub fn exactness_defect(f: &AbHom, g: &AbHom) -> Result<ExactnessReport, AbelianError> {
    if f.target() != g.source() {
        return Err(AbelianError::ShapeMismatch {
            context: "exactness: target(f) != source(g)".into(),
        });
    }
    let composite_zero = g.compose(f)?.is_zero_hom();
    let node = presented_homology_node(f, g)?;
    Ok(ExactnessReport {
        defect: node.group,
        composite_zero,
    })
}

/// Homology node for a complex of presented groups (at B, for f: A -> B,
/// g: B -> C with g ∘ f ≡ 0).
///
/// The kernel of g is the lattice { x in Z^gens(B) : g(x) = 0 in C }, i.e.
/// the projection of ker[G | R_C]; the image of f contributes the columns of
/// its matrix plus the relations of B.
#[derive(Clone, Debug)]
pub struct PresentedHomologyNode {
    pub group: FgAbGroup,
    /// gens(B) x gens(group); representative kernel elements.
    pub cycle_reps: IntMatrix,
    reps_snf: SnfDecomposition,
}

impl PresentedHomologyNode {
    /// Coordinates of a kernel element in the node's generators. Errors if
    /// `x` is not in the kernel lattice.
    pub fn classify(&self, x: &IntMatrix) -> Result<IntMatrix, AbelianError> {
        snf::solve(&self.reps_snf, x).ok_or(AbelianError::NotACycle)
    }
}

pub fn presented_homology_node(
    f: &AbHom,
    g: &AbHom,
) -> Result<PresentedHomologyNode, AbelianError> {
    if f.target() != g.source() {
        return Err(AbelianError::ShapeMismatch {
            context: "presented homology: target(f) != source(g)".into(),
        });
    }
    let b = g.source();
    // Kernel lattice of g, as generators: first gens(B) rows of the kernel
    // of [G | R_C].
    let stacked = g.matrix().hstack(g.target().rels());
    let st_snf = snf::smith_normal_form(&stacked);
    let full_kernel = snf::kernel_basis(&st_snf);
    let idx: Vec<usize> = (0..b.gens()).collect();
    let kernel_gens = full_kernel.select_rows(&idx);
    // Image lattice: columns of f plus the relations of B.
    let image_gens = f.matrix().hstack(b.rels());
    let (group, basis) = lattice_quotient(&kernel_gens, &image_gens)?;
    let reps_snf = snf::smith_normal_form(&basis);
    Ok(PresentedHomologyNode {
        group,
        cycle_reps: basis,
        reps_snf,
    })
}

/// Induced map on homology of a commuting square of free complexes:
/// given `phi` at a node with differentials (d_in, d_out) upstairs mapping
/// to (e_in, e_out), produce the AbHom between the homology presentations.
///
/// `phi` must commute with the differentials: e_out ∘ phi = phi_prev ∘ d_out
/// is the caller's responsibility at the chain level; here we only need
/// phi to take cycles to cycles, which is verified.
pub fn induced_on_homology(
    source: &HomologyNode,
    target: &HomologyNode,
    phi: &IntMatrix,
) -> Result<AbHom, AbelianError> {
    let mut cols = Vec::new();
    for j in 0..source.cycle_reps.cols() {
        let z = IntMatrix::col_vec(&source.cycle_reps.column(j));
        let img = phi.mul(&z);
        cols.push(target.classify(&img)?);
    }
    let m = IntMatrix::from_fn(target.group.gens(), cols.len(), |i, j| {
        cols[j].get(i, 0).clone()
    });
    AbHom::new(source.group.clone(), target.group.clone(), m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn zero_differentials() {
        // 0 -> Z -> 0 has homology Z.
        let d_in = IntMatrix::zero(1, 0);
        let d_out = IntMatrix::zero(0, 1);
        let h = free_homology(&d_in, &d_out).unwrap();
        assert_eq!(h.normal_form().rank, 1);
        assert!(h.normal_form().torsion.is_empty());
    }

    #[test]
    fn cokernel_of_two() {
        // Z --2--> Z -> 0 has homology Z/2 at the right node.
        let d_in = IntMatrix::from_rows(&[vec![2]]);
        let d_out = IntMatrix::zero(0, 1);
        let h = free_homology(&d_in, &d_out).unwrap();
        assert_eq!(h.normal_form().rank, 0);
        assert_eq!(h.normal_form().torsion, vec![BigInt::from(2)]);
    }

    #[test]
    fn composition_nonzero_rejected() {
        let d_in = IntMatrix::identity(1);
        let d_out = IntMatrix::identity(1);
        assert!(matches!(
            free_homology(&d_in, &d_out),
            Err(AbelianError::CompositionNonzero)
        ));
    }

    #[test]
    fn exactness_trivial_cases() {
        let z = FgAbGroup::free(1);
        let id = AbHom::identity(&z);
        let zero = AbHom::zero(&z, &z);
        // f = id, g = 0: exact.
        let r = exactness_defect(&id, &zero).unwrap();
        assert!(r.is_exact());
        // f = 0, g = 0: defect Z, not exact.
        let r = exactness_defect(&zero, &zero).unwrap();
        assert!(!r.is_exact());
        assert_eq!(r.defect.normal_form().rank, 1);
    }

    #[test]
    fn exactness_at_cokernel_projection() {
        // Z --2--> Z --proj--> Z/2 is exact in the middle.
        let z = FgAbGroup::free(1);
        let z2 = FgAbGroup::cyclic(2);
        let dbl = AbHom::new(z.clone(), z.clone(), IntMatrix::from_rows(&[vec![2]])).unwrap();
        let proj = AbHom::new(z.clone(), z2, IntMatrix::identity(1)).unwrap();
        let r = exactness_defect(&dbl, &proj).unwrap();
        assert!(r.is_exact(), "defect = {:?}", r.defect);
    }

    #[test]
    fn induced_identity_and_zero() {
        // Complex Z --2--> Z -> 0; identity chain map induces identity on
        // H = Z/2, zero chain map induces zero.
        let d_in = IntMatrix::from_rows(&[vec![2]]);
        let d_out = IntMatrix::zero(0, 1);
        let node = free_homology_node(&d_in, &d_out).unwrap();
        let idm = induced_on_homology(&node, &node, &IntMatrix::identity(1)).unwrap();
        assert!(idm.same_map(&AbHom::identity(&node.group)));
        let zm = induced_on_homology(&node, &node, &IntMatrix::zero(1, 1)).unwrap();
        assert!(zm.is_zero_hom());
    }

    #[test]
    fn presented_node_classify() {
        // f: 0 -> Z/4, g: Z/4 --2--> Z/4. ker g = {0, 2} = Z/2, im f = 0.
        let z4 = FgAbGroup::cyclic(4);
        let f = AbHom::zero(&FgAbGroup::trivial(), &z4);
        let g = AbHom::new(z4.clone(), z4.clone(), IntMatrix::from_rows(&[vec![2]])).unwrap();
        let node = presented_homology_node(&f, &g).unwrap();
        assert_eq!(node.group.normal_form().torsion, vec![BigInt::from(2)]);
        assert_eq!(node.group.normal_form().rank, 0);
    }
}

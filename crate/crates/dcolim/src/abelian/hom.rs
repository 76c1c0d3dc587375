//! Homomorphisms between presented abelian groups.

use super::group::FgAbGroup;
use super::matrix::IntMatrix;
use super::AbelianError;
use num_bigint::BigInt;
use std::fmt;

/// A homomorphism between presented groups, given by its matrix on chosen
/// generators (target-generator rows, source-generator columns; maps act on
/// the left on column vectors).
#[derive(Clone, PartialEq, Eq)]
pub struct AbHom {
    source: FgAbGroup,
    target: FgAbGroup,
    matrix: IntMatrix,
}

impl fmt::Debug for AbHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "AbHom({} -> {}, {:?})",
            self.source.normal_form(),
            self.target.normal_form(),
            self.matrix
        )
    }
}

impl AbHom {
    /// Checks well-definedness: the matrix must map every source relation
    /// into the target relation lattice.
    pub fn new(
        source: FgAbGroup,
        target: FgAbGroup,
        matrix: IntMatrix,
    ) -> Result<Self, AbelianError> {
        if matrix.rows() != target.gens() || matrix.cols() != source.gens() {
            return Err(AbelianError::ShapeMismatch {
                context: format!(
                    "hom matrix is {}x{}, expected {}x{}",
                    matrix.rows(),
                    matrix.cols(),
                    target.gens(),
                    source.gens()
                ),
            });
        }
        let image_of_rels = matrix.mul(source.rels());
        for j in 0..image_of_rels.cols() {
            let col = IntMatrix::col_vec(&image_of_rels.column(j));
            if !target.contains_in_relations(&col) {
                return Err(AbelianError::IllDefinedHom { relation: j });
            }
        }
        Ok(AbHom {
            source,
            target,
            matrix,
        })
    }

    pub fn identity(group: &FgAbGroup) -> Self {
        AbHom::new(
            group.clone(),
            group.clone(),
            IntMatrix::identity(group.gens()),
        )
        .unwrap()
    }

    pub fn zero(source: &FgAbGroup, target: &FgAbGroup) -> Self {
        AbHom::new(
            source.clone(),
            target.clone(),
            IntMatrix::zero(target.gens(), source.gens()),
        )
        .unwrap()
    }

    pub fn source(&self) -> &FgAbGroup {
        &self.source
    }

    pub fn target(&self) -> &FgAbGroup {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// self ∘ other.
    pub fn compose(&self, other: &AbHom) -> Result<AbHom, AbelianError> {
        if other.target != self.source {
            return Err(AbelianError::ShapeMismatch {
                context: "compose: target of inner hom differs from source of outer".into(),
            });
        }
        AbHom::new(
            other.source.clone(),
            self.target.clone(),
            self.matrix.mul(&other.matrix),
        )
    }

    pub fn direct_sum(&self, other: &AbHom) -> AbHom {
        AbHom::new(
            self.source.direct_sum(&other.source),
            self.target.direct_sum(&other.target),
            self.matrix.block_diag(&other.matrix),
        )
        .unwrap()
    }

    /// Pairing (f, g): common source, targets summed.
    pub fn pair(&self, other: &AbHom) -> Result<AbHom, AbelianError> {
        if self.source != other.source {
            return Err(AbelianError::ShapeMismatch {
                context: "pair: sources differ".into(),
            });
        }
        AbHom::new(
            self.source.clone(),
            self.target.direct_sum(&other.target),
            self.matrix.vstack(&other.matrix),
        )
    }

    /// Difference map on a summed source: (u, v) ↦ self(u) − other(v).
    pub fn difference_on_sum(&self, other: &AbHom) -> Result<AbHom, AbelianError> {
        if self.target != other.target {
            return Err(AbelianError::ShapeMismatch {
                context: "difference: targets differ".into(),
            });
        }
        AbHom::new(
            self.source.direct_sum(&other.source),
            self.target.clone(),
            self.matrix.hstack(&other.matrix.neg()),
        )
    }

    pub fn sub(&self, other: &AbHom) -> Result<AbHom, AbelianError> {
        if self.source != other.source || self.target != other.target {
            return Err(AbelianError::ShapeMismatch {
                context: "sub: homs not parallel".into(),
            });
        }
        AbHom::new(
            self.source.clone(),
            self.target.clone(),
            self.matrix.sub(&other.matrix),
        )
    }

    /// Is this the zero map (every generator image lies in the target's
    /// relation lattice)?
    pub fn is_zero_hom(&self) -> bool {
        (0..self.matrix.cols()).all(|j| {
            self.target
                .contains_in_relations(&IntMatrix::col_vec(&self.matrix.column(j)))
        })
    }

    /// Equality as maps of groups (matrices congruent modulo target
    /// relations).
    pub fn same_map(&self, other: &AbHom) -> bool {
        self.source == other.source
            && self.target == other.target
            && {
                let d = self.matrix.sub(&other.matrix);
                (0..d.cols()).all(|j| {
                    self.target
                        .contains_in_relations(&IntMatrix::col_vec(&d.column(j)))
                })
            }
    }

    pub fn apply(&self, x: &IntMatrix) -> IntMatrix {
        self.matrix.mul(x)
    }

    /// The same map written between the normal-form presentations of source
    /// and target.
    pub fn in_normal_form(&self) -> AbHom {
        let src_nf = FgAbGroup::from_normal_form(
            self.source.normal_form().rank,
            &self.source.normal_form().torsion,
        );
        let tgt_nf = FgAbGroup::from_normal_form(
            self.target.normal_form().rank,
            &self.target.normal_form().torsion,
        );
        // Normal-form presentation orders torsion generators first, matching
        // the `kept` order of to_nf/from_nf.
        let m = self
            .target
            .to_nf_matrix()
            .mul(&self.matrix)
            .mul(self.source.from_nf_matrix());
        AbHom::new(src_nf, tgt_nf, m).unwrap()
    }
}

/// Convenience: hom between free groups from a raw i64 matrix.
pub fn free_hom(rows: &[Vec<i64>], source_rank: usize) -> AbHom {
    let m = if rows.is_empty() {
        IntMatrix::zero(0, source_rank)
    } else {
        IntMatrix::from_rows(rows)
    };
    AbHom::new(FgAbGroup::free(m.cols()), FgAbGroup::free(m.rows()), m).unwrap()
}

#[allow(dead_code)]
fn _unused(_: BigInt) {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn well_definedness_enforced() {
        // Z/2 -> Z by 1 is not well defined.
        let z2 = FgAbGroup::cyclic(2);
        let z = FgAbGroup::free(1);
        let m = IntMatrix::from_rows(&[vec![1]]);
        assert!(AbHom::new(z2.clone(), z.clone(), m.clone()).is_err());
        // Z -> Z/2 by 1 is fine; Z/2 -> Z/4 by 2 is fine.
        assert!(AbHom::new(z.clone(), z2.clone(), m).is_ok());
        let z4 = FgAbGroup::cyclic(4);
        let two = IntMatrix::from_rows(&[vec![2]]);
        assert!(AbHom::new(z2, z4, two).is_ok());
    }

    #[test]
    fn composition_and_zero() {
        let z = FgAbGroup::free(1);
        let z2 = FgAbGroup::cyclic(2);
        let proj = AbHom::new(z.clone(), z2.clone(), IntMatrix::identity(1)).unwrap();
        let dbl = AbHom::new(z.clone(), z.clone(), IntMatrix::from_rows(&[vec![2]])).unwrap();
        let c = proj.compose(&dbl).unwrap();
        assert!(c.is_zero_hom());
    }

    #[test]
    fn normal_form_of_map() {
        // Multiplication by 2 on Z/4, written on a redundant presentation.
        let g = FgAbGroup::new(2, IntMatrix::from_rows(&[vec![4, 1], vec![0, 1]])).unwrap();
        assert_eq!(g.normal_form().torsion, vec![BigInt::from(4)]);
        let m = IntMatrix::from_rows(&[vec![2, -2], vec![0, 0]]);
        let f = AbHom::new(g.clone(), g, m).unwrap();
        let nf = f.in_normal_form();
        assert!(!nf.is_zero_hom());
        let twice = nf.compose(&nf).unwrap();
        assert!(twice.is_zero_hom());
    }
}

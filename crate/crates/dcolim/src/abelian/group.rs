//! Finitely generated abelian groups as integer presentations.

use super::matrix::IntMatrix;
use super::snf::{self, SnfDecomposition};
use super::AbelianError;
use num_bigint::BigInt;
use num_traits::One;
use std::fmt;

/// Normal form of a finitely generated abelian group: free rank plus a
/// divisibility chain of torsion coefficients, each >= 2.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NormalForm {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

impl NormalForm {
    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.rank == 1 {
            parts.push("Z".to_string());
        } else if self.rank > 1 {
            parts.push(format!("Z^{}", self.rank));
        }
        for t in &self.torsion {
            parts.push(format!("Z/{}", t));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// A finitely generated abelian group presented as the cokernel of an
/// integer relation matrix (generators = rows, relations = columns).
///
/// The normal form and the SNF of the relation matrix are computed eagerly
/// and cached; all derived data is deterministic in the presentation.
#[derive(Clone)]
pub struct FgAbGroup {
    gens: usize,
    rels: IntMatrix,
    rels_snf: SnfDecomposition,
    nf: NormalForm,
    /// Indices into the SNF diagonal order: torsion generators then free.
    #[allow(dead_code)]
    kept: Vec<usize>,
    /// (t + r) x gens; sends a generator-coordinate vector to normal-form
    /// coordinates (torsion coordinates first, then free).
    to_nf: IntMatrix,
    /// gens x (t + r); a section of `to_nf` modulo relations.
    from_nf: IntMatrix,
}

impl PartialEq for FgAbGroup {
    fn eq(&self, other: &Self) -> bool {
        self.gens == other.gens && self.rels == other.rels
    }
}
impl Eq for FgAbGroup {}

impl fmt::Debug for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FgAbGroup({} gens, nf = {})", self.gens, self.nf)
    }
}

impl FgAbGroup {
    pub fn new(gens: usize, rels: IntMatrix) -> Result<Self, AbelianError> {
        if rels.rows() != gens {
            return Err(AbelianError::ShapeMismatch {
                context: "relation matrix must have one row per generator".into(),
            });
        }
        let rels_snf = snf::smith_normal_form(&rels);
        let mut torsion = Vec::new();
        let mut kept = Vec::new();
        for i in 0..rels_snf.rank {
            let d = rels_snf.s.get(i, i);
            if !d.is_one() {
                torsion.push(d.clone());
                kept.push(i);
            }
        }
        for i in rels_snf.rank..gens {
            kept.push(i);
        }
        let rank = gens - rels_snf.rank;
        let to_nf = rels_snf.u.select_rows(&kept);
        let from_nf = rels_snf.u_inv.select_cols(&kept);
        Ok(FgAbGroup {
            gens,
            rels,
            rels_snf,
            nf: NormalForm { rank, torsion },
            kept,
            to_nf,
            from_nf,
        })
    }

    pub fn free(rank: usize) -> Self {
        FgAbGroup::new(rank, IntMatrix::zero(rank, 0)).unwrap()
    }

    pub fn trivial() -> Self {
        FgAbGroup::free(0)
    }

    pub fn cyclic(n: u64) -> Self {
        FgAbGroup::new(1, IntMatrix::from_rows(&[vec![n as i64]])).unwrap()
    }

    /// Group with the given free rank and torsion coefficients, presented in
    /// normal form (torsion generators first).
    pub fn from_normal_form(rank: usize, torsion: &[BigInt]) -> Self {
        let gens = rank + torsion.len();
        let mut rels = IntMatrix::zero(gens, torsion.len());
        for (j, t) in torsion.iter().enumerate() {
            rels.set(j, j, t.clone());
        }
        FgAbGroup::new(gens, rels).unwrap()
    }

    pub fn gens(&self) -> usize {
        self.gens
    }

    pub fn rels(&self) -> &IntMatrix {
        &self.rels
    }

    pub fn normal_form(&self) -> &NormalForm {
        &self.nf
    }

    pub fn is_trivial(&self) -> bool {
        self.nf.is_trivial()
    }

    /// Same isomorphism type (equal normal forms).
    pub fn isomorphic(&self, other: &FgAbGroup) -> bool {
        self.nf == other.nf
    }

    pub fn to_nf_matrix(&self) -> &IntMatrix {
        &self.to_nf
    }

    pub fn from_nf_matrix(&self) -> &IntMatrix {
        &self.from_nf
    }

    /// Is the column vector `x` (in generator coordinates) in the relation
    /// lattice, i.e. zero in the group?
    pub fn contains_in_relations(&self, x: &IntMatrix) -> bool {
        snf::solve(&self.rels_snf, x).is_some()
    }

    /// Are two generator-coordinate vectors equal as group elements?
    pub fn elements_equal(&self, x: &IntMatrix, y: &IntMatrix) -> bool {
        self.contains_in_relations(&x.sub(y))
    }

    /// A basis for the relation lattice, as columns of a gens x k matrix
    /// (k = rank of the relation matrix).
    pub fn relation_lattice_basis(&self) -> IntMatrix {
        snf::image_basis(&self.rels_snf)
    }

    /// Direct sum, generators of `self` first.
    pub fn direct_sum(&self, other: &FgAbGroup) -> FgAbGroup {
        FgAbGroup::new(self.gens + other.gens, self.rels.block_diag(&other.rels)).unwrap()
    }
}

/// Quotient of the lattice spanned by the columns of `num` by the lattice
/// spanned by the columns of `den`, inside the same ambient `Z^n`.
///
/// Requires span(den) ⊆ span(num); returns the quotient group together with
/// a basis of span(num) (columns, representatives of the quotient's
/// generators in ambient coordinates).
pub fn lattice_quotient(
    num: &IntMatrix,
    den: &IntMatrix,
) -> Result<(FgAbGroup, IntMatrix), AbelianError> {
    if num.rows() != den.rows() {
        return Err(AbelianError::ShapeMismatch {
            context: "lattice quotient: ambient dimensions differ".into(),
        });
    }
    let num_snf = snf::smith_normal_form(num);
    let basis = snf::image_basis(&num_snf);
    // Express den columns in the basis; exact because span(den) ⊆ span(num).
    let basis_snf = snf::smith_normal_form(&basis);
    let coords = snf::solve_matrix(&basis_snf, den).ok_or_else(|| AbelianError::ShapeMismatch {
        context: "lattice quotient: denominator not contained in numerator".into(),
    })?;
    let group = FgAbGroup::new(basis.cols(), coords)?;
    Ok((group, basis))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normal_forms() {
        let g = FgAbGroup::new(1, IntMatrix::from_rows(&[vec![2]])).unwrap();
        assert_eq!(g.normal_form(), &NormalForm { rank: 0, torsion: vec![BigInt::from(2)] });
        let f = FgAbGroup::free(2);
        assert_eq!(f.normal_form(), &NormalForm { rank: 2, torsion: vec![] });
        // Relation coefficient 1 kills a generator.
        let k = FgAbGroup::new(2, IntMatrix::from_rows(&[vec![1], vec![0]])).unwrap();
        assert_eq!(k.normal_form(), &NormalForm { rank: 1, torsion: vec![] });
    }

    #[test]
    fn nf_conversion_consistent() {
        // Z + Z/4 presented with scrambled generators.
        let g = FgAbGroup::new(2, IntMatrix::from_rows(&[vec![4], vec![4]])).unwrap();
        assert_eq!(
            g.normal_form(),
            &NormalForm { rank: 1, torsion: vec![BigInt::from(4)] }
        );
        // to_nf . from_nf = identity on normal-form coordinates.
        let prod = g.to_nf_matrix().mul(g.from_nf_matrix());
        assert!(prod.is_identity());
    }

    #[test]
    fn membership() {
        let g = FgAbGroup::cyclic(6);
        assert!(g.contains_in_relations(&IntMatrix::col_vec(&[BigInt::from(12)])));
        assert!(!g.contains_in_relations(&IntMatrix::col_vec(&[BigInt::from(3)])));
    }

    #[test]
    fn lattice_quotient_cases() {
        // 2Z / 6Z = Z/3 inside Z.
        let num = IntMatrix::from_rows(&[vec![2]]);
        let den = IntMatrix::from_rows(&[vec![6]]);
        let (q, _) = lattice_quotient(&num, &den).unwrap();
        assert_eq!(q.normal_form(), &NormalForm { rank: 0, torsion: vec![BigInt::from(3)] });
        // Z^2 / span{(1,1)} = Z.
        let num = IntMatrix::identity(2);
        let den = IntMatrix::from_rows(&[vec![1], vec![1]]);
        let (q, _) = lattice_quotient(&num, &den).unwrap();
        assert_eq!(q.normal_form(), &NormalForm { rank: 1, torsion: vec![] });
    }
}

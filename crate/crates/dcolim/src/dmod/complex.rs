//! Truncated chain complexes of free abelian groups with indexed bases,
//! presented (co)chain complexes, mapping cones, and graded groups.

use crate::abelian::{
    free_homology_node, presented_homology_node, AbHom, AbelianError, FgAbGroup, HomologyNode,
    IntMatrix, PresentedHomologyNode,
};

use super::DmodError;

/// A truncated non-negatively graded complex of free abelian groups with
/// homological differentials d[n]: C_n -> C_{n-1} (d[0] maps to zero).
/// Homology is reliable in degrees 0..truncation (exclusive of the top
/// degree, whose incoming boundaries are unknown).
#[derive(Clone, Debug)]
pub struct FreeComplex {
    pub dims: Vec<usize>,
    /// One human-readable label per basis element, per degree.
    pub labels: Vec<Vec<String>>,
    /// d[n] has shape dims[n-1] x dims[n]; d[0] has 0 rows.
    pub d: Vec<IntMatrix>,
}

/// Safety valve: when the environment variable DCOLIM_MAX_MATRIX_DIM is set,
/// refuse to build complexes with a term of larger dimension.
pub fn check_dim_guard(dim: usize, context: &str) -> Result<(), AbelianError> {
    if let Some(limit) = std::env::var("DCOLIM_MAX_MATRIX_DIM")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
    {
        if dim > limit {
            return Err(AbelianError::ResourceLimit {
                context: context.into(),
                dim,
                limit,
            });
        }
    }
    Ok(())
}

impl FreeComplex {
    /// Checks shapes and d∘d = 0 in every adjacent pair of degrees.
    pub fn new(
        dims: Vec<usize>,
        labels: Vec<Vec<String>>,
        d: Vec<IntMatrix>,
    ) -> Result<Self, AbelianError> {
        assert_eq!(dims.len(), d.len());
        assert_eq!(dims.len(), labels.len());
        for n in 0..dims.len() {
            check_dim_guard(dims[n], &format!("free complex term in degree {}", n))?;
            assert_eq!(labels[n].len(), dims[n]);
            let prev = if n == 0 { 0 } else { dims[n - 1] };
            if d[n].rows() != prev || d[n].cols() != dims[n] {
                return Err(AbelianError::ShapeMismatch {
                    context: format!("complex differential in degree {}", n),
                });
            }
            if n > 0 && !d[n - 1].mul(&d[n]).is_zero() {
                return Err(AbelianError::CompositionNonzero);
            }
        }
        Ok(FreeComplex { dims, labels, d })
    }

    pub fn zero_through(trunc: usize) -> FreeComplex {
        let dims = vec![0; trunc + 1];
        let labels = vec![Vec::new(); trunc + 1];
        let d = (0..=trunc).map(|_| IntMatrix::zero(0, 0)).collect();
        FreeComplex { dims, labels, d }
    }

    /// Top degree carried by the complex.
    pub fn truncation(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn homology_node(&self, n: usize) -> Result<HomologyNode, AbelianError> {
        assert!(
            n < self.truncation(),
            "homology in degree {} needs the complex through degree {}",
            n,
            n + 1
        );
        free_homology_node(&self.d[n + 1], &self.d[n])
    }

    pub fn graded_homology(&self, n_max: usize) -> Result<GradedAbGroup, AbelianError> {
        let mut values = Vec::new();
        for n in 0..=n_max {
            values.push(self.homology_node(n)?.group);
        }
        Ok(GradedAbGroup { values })
    }
}

/// A degreewise map of free complexes, commuting with the differentials.
#[derive(Clone, Debug)]
pub struct ChainMap {
    /// mats[n]: source dims[n] -> target dims[n].
    pub mats: Vec<IntMatrix>,
}

impl ChainMap {
    pub fn new(
        source: &FreeComplex,
        target: &FreeComplex,
        mats: Vec<IntMatrix>,
    ) -> Result<ChainMap, AbelianError> {
        let trunc = source.truncation().min(target.truncation());
        assert_eq!(mats.len(), trunc + 1);
        for n in 0..=trunc {
            if mats[n].rows() != target.dims[n] || mats[n].cols() != source.dims[n] {
                return Err(AbelianError::ShapeMismatch {
                    context: format!("chain map component in degree {}", n),
                });
            }
            if n > 0 && target.d[n].mul(&mats[n]) != mats[n - 1].mul(&source.d[n]) {
                return Err(AbelianError::ShapeMismatch {
                    context: format!("chain map does not commute in degree {}", n),
                });
            }
        }
        Ok(ChainMap { mats })
    }
}

/// Mapping cone with the convention Cone(f)_n = A_{n-1} ⊕ B_n and
/// d(a, b) = (−d a, d b − f a). The A part is listed first in each degree.
pub fn cone(f: &ChainMap, a: &FreeComplex, b: &FreeComplex) -> Result<FreeComplex, DmodError> {
    let trunc = (a.truncation() + 1).min(b.truncation()).min(f.mats.len());
    let mut dims = Vec::new();
    let mut labels = Vec::new();
    let mut d = Vec::new();
    for n in 0..=trunc {
        let a_dim = if n == 0 { 0 } else { a.dims[n - 1] };
        dims.push(a_dim + b.dims[n]);
        let mut lab: Vec<String> = Vec::new();
        if n > 0 {
            lab.extend(a.labels[n - 1].iter().map(|s| format!("[s]{}", s)));
        }
        lab.extend(b.labels[n].iter().cloned());
        labels.push(lab);
        // Rows: A_{n-2} ⊕ B_{n-1}; columns: A_{n-1} ⊕ B_n.
        let ra = if n >= 2 { a.dims[n - 2] } else { 0 };
        let rb = if n >= 1 { b.dims[n - 1] } else { 0 };
        let ca = a_dim;
        let cb = b.dims[n];
        let neg_da = if n >= 2 { Some(a.d[n - 1].neg()) } else { None };
        let neg_f = if n >= 1 { Some(f.mats[n - 1].neg()) } else { None };
        let db = if n >= 1 { Some(&b.d[n]) } else { None };
        let m = IntMatrix::from_blocks(
            &[ra, rb],
            &[ca, cb],
            &[
                vec![neg_da.as_ref(), None],
                vec![neg_f.as_ref(), db],
            ],
        );
        d.push(m);
    }
    Ok(FreeComplex::new(dims, labels, d)?)
}

/// Direction of the grading of a presented complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    Homological,
    Cohomological,
}

/// A truncated complex of presented groups. `maps[n]` connects degrees n
/// and n+1: it points up (n -> n+1) in the cohomological case and down
/// (n+1 -> n) in the homological one.
#[derive(Clone, Debug)]
pub struct PresentedComplex {
    pub orientation: Orientation,
    pub groups: Vec<FgAbGroup>,
    pub maps: Vec<AbHom>,
}

impl PresentedComplex {
    pub fn new(
        orientation: Orientation,
        groups: Vec<FgAbGroup>,
        maps: Vec<AbHom>,
    ) -> Result<Self, AbelianError> {
        assert_eq!(maps.len() + 1, groups.len());
        for (n, g) in groups.iter().enumerate() {
            check_dim_guard(g.gens(), &format!("presented complex term in degree {}", n))?;
        }
        for (n, m) in maps.iter().enumerate() {
            let (lo, hi) = (&groups[n], &groups[n + 1]);
            let (src, dst) = match orientation {
                Orientation::Cohomological => (lo, hi),
                Orientation::Homological => (hi, lo),
            };
            if m.source() != src || m.target() != dst {
                return Err(AbelianError::ShapeMismatch {
                    context: format!("presented complex differential between {} and {}", n, n + 1),
                });
            }
            if n > 0 {
                let comp = match orientation {
                    Orientation::Cohomological => maps[n].compose(&maps[n - 1])?,
                    Orientation::Homological => maps[n - 1].compose(&maps[n])?,
                };
                if !comp.is_zero_hom() {
                    return Err(AbelianError::CompositionNonzero);
                }
            }
        }
        Ok(PresentedComplex {
            orientation,
            groups,
            maps,
        })
    }

    pub fn truncation(&self) -> usize {
        self.groups.len() - 1
    }

    /// (Co)homology at degree n; needs n < truncation.
    pub fn homology_node(&self, n: usize) -> Result<PresentedHomologyNode, AbelianError> {
        assert!(n < self.truncation());
        let (incoming, outgoing) = match self.orientation {
            Orientation::Cohomological => (
                if n == 0 {
                    AbHom::zero(&FgAbGroup::trivial(), &self.groups[0])
                } else {
                    self.maps[n - 1].clone()
                },
                self.maps[n].clone(),
            ),
            Orientation::Homological => (self.maps[n].clone(), {
                if n == 0 {
                    AbHom::zero(&self.groups[0], &FgAbGroup::trivial())
                } else {
                    self.maps[n - 1].clone()
                }
            }),
        };
        presented_homology_node(&incoming, &outgoing)
    }

    pub fn graded_homology(&self, n_max: usize) -> Result<GradedAbGroup, AbelianError> {
        let mut values = Vec::new();
        for n in 0..=n_max {
            values.push(self.homology_node(n)?.group);
        }
        Ok(GradedAbGroup { values })
    }
}

/// Degree-indexed groups 0..N.
#[derive(Clone, Debug)]
pub struct GradedAbGroup {
    pub values: Vec<FgAbGroup>,
}

impl GradedAbGroup {
    pub fn degree(&self) -> usize {
        self.values.len() - 1
    }

    /// Isomorphic degreewise (equal normal forms).
    pub fn isomorphic(&self, other: &GradedAbGroup) -> bool {
        self.values.len() == other.values.len()
            && self
                .values
                .iter()
                .zip(&other.values)
                .all(|(a, b)| a.isomorphic(b))
    }

    /// True when every degree >= 1 vanishes and degree 0 is `Z^{pieces}`.
    pub fn is_discrete(&self, pieces: usize) -> bool {
        let nf0 = self.values[0].normal_form();
        nf0.rank == pieces
            && nf0.torsion.is_empty()
            && self.values[1..].iter().all(|g| g.is_trivial())
    }
}

impl std::fmt::Display for GradedAbGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .values
            .iter()
            .enumerate()
            .map(|(n, g)| format!("{}: {}", n, g.normal_form()))
            .collect();
        write!(f, "{}", parts.join(", "))
    }
}

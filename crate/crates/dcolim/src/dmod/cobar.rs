//! Cosimplicial replacement of a right diagram and derived limits.

use std::collections::HashMap;

use crate::abelian::{AbHom, FgAbGroup, IntMatrix};
use crate::fincat::{FinCategory, Functor};

use super::bar::{enumerate_chains, BarChain};
use super::complex::{GradedAbGroup, Orientation, PresentedComplex};
use super::diagram::{restrict, Diagram, Variance};
use super::DmodError;

/// Cobar (cosimplicial) complex of a right diagram L: degree n is the
/// direct sum over nondegenerate n-chains e0 -> ... -> en of the opposite
/// category of L(en), with the dual alternating differential. The last
/// face pulls the value along the final arrow.
#[derive(Clone, Debug)]
pub struct CobarComplex {
    pub complex: PresentedComplex,
    /// Chains of the opposite category, per degree.
    pub chains: Vec<Vec<BarChain>>,
    /// The opposite category the chains live in.
    pub op: FinCategory,
    /// Per chain (by degree), the starting generator index of its block.
    pub offsets: Vec<Vec<usize>>,
}

/// Builds the cobar complex through degree `n_max + 1` so cohomology is
/// correct through `n_max`.
pub fn cobar_complex(l: &Diagram, n_max: usize) -> Result<CobarComplex, DmodError> {
    if l.variance != Variance::Right {
        return Err(DmodError::Variance(
            "cobar complex needs a right (contravariant) diagram".into(),
        ));
    }
    // A right diagram over C is covariant over C^op with the same morphism
    // indices: along the op-arrow of f, the map is L(f): L(dst f) -> L(src f).
    let op = l.base.opposite();
    let trunc = n_max + 1;
    let chains: Vec<Vec<BarChain>> = (0..=trunc)
        .map(|n| enumerate_chains(&op, n, true))
        .collect();
    let mut groups = Vec::new();
    let mut offsets = Vec::new();
    for n in 0..=trunc {
        let mut g = FgAbGroup::trivial();
        let mut offs = Vec::new();
        for ch in &chains[n] {
            offs.push(g.gens());
            g = g.direct_sum(&l.groups[ch.end(&op)]);
        }
        groups.push(g);
        offsets.push(offs);
    }
    let index: Vec<HashMap<&BarChain, usize>> = chains
        .iter()
        .map(|v| v.iter().enumerate().map(|(i, c)| (c, i)).collect())
        .collect();
    let mut maps = Vec::new();
    for n in 0..trunc {
        // d: degree n -> degree n+1; the block at an (n+1)-chain tau is the
        // alternating sum over faces of tau of the blocks at those faces.
        let mut mat = IntMatrix::zero(groups[n + 1].gens(), groups[n].gens());
        for (t, tau) in chains[n + 1].iter().enumerate() {
            let row0 = offsets[n + 1][t];
            let mut add = |sigma: &BarChain, sign: i64, block: Option<&IntMatrix>| {
                if sigma.mors.iter().any(|&m| op.is_identity(m)) {
                    return;
                }
                let s = *index[n].get(sigma).expect("faces are enumerated");
                let col0 = offsets[n][s];
                match block {
                    Some(b) => {
                        for i in 0..b.rows() {
                            for j in 0..b.cols() {
                                let v = mat.get(row0 + i, col0 + j) + b.get(i, j) * sign;
                                mat.set(row0 + i, col0 + j, v);
                            }
                        }
                    }
                    None => {
                        let w = l.groups[tau.end(&op)].gens();
                        for k in 0..w {
                            let v = mat.get(row0 + k, col0 + k) + sign;
                            mat.set(row0 + k, col0 + k, v);
                        }
                    }
                }
            };
            let len = n + 1;
            // Face 0 drops the first object; end object unchanged.
            add(
                &BarChain {
                    start: op.dst(tau.mors[0]),
                    mors: tau.mors[1..].to_vec(),
                },
                1,
                None,
            );
            for i in 1..len {
                let gf = op
                    .comp(tau.mors[i], tau.mors[i - 1])
                    .expect("chain morphisms compose");
                let mut mors = tau.mors.clone();
                mors[i - 1] = gf;
                mors.remove(i);
                add(
                    &BarChain {
                        start: tau.start,
                        mors,
                    },
                    if i % 2 == 0 { 1 } else { -1 },
                    None,
                );
            }
            // Last face drops the final arrow; pull the value along it.
            let last = *tau.mors.last().unwrap();
            add(
                &BarChain {
                    start: tau.start,
                    mors: tau.mors[..len - 1].to_vec(),
                },
                if len % 2 == 0 { 1 } else { -1 },
                Some(l.maps[last].matrix()),
            );
        }
        maps.push(AbHom::new(groups[n].clone(), groups[n + 1].clone(), mat)?);
    }
    let complex = PresentedComplex::new(Orientation::Cohomological, groups, maps)?;
    Ok(CobarComplex {
        complex,
        chains,
        op,
        offsets,
    })
}

/// Right derived limits in degrees 0..=n of a right diagram.
pub fn derived_lim(l: &Diagram, n: usize) -> Result<GradedAbGroup, DmodError> {
    let cobar = cobar_complex(l, n)?;
    Ok(cobar.complex.graded_homology(n)?)
}

/// The restriction cochain map cobar(C, L) -> cobar(D, F*L) induced by
/// F: D -> C: the block at a D-chain sigma reads off the block at the
/// image chain F(sigma), zero when the image is degenerate.
pub fn cobar_restriction_maps(
    f: &Functor,
    source: &CobarComplex,
    target: &CobarComplex,
) -> Result<Vec<AbHom>, DmodError> {
    let trunc = source
        .complex
        .truncation()
        .min(target.complex.truncation());
    let s_index: Vec<HashMap<&BarChain, usize>> = source
        .chains
        .iter()
        .map(|v| v.iter().enumerate().map(|(i, c)| (c, i)).collect())
        .collect();
    let mut out = Vec::new();
    for n in 0..=trunc {
        let mut mat = IntMatrix::zero(
            target.complex.groups[n].gens(),
            source.complex.groups[n].gens(),
        );
        for (t, sigma) in target.chains[n].iter().enumerate() {
            let mors: Vec<usize> = sigma.mors.iter().map(|&m| f.apply_mor(m)).collect();
            if mors.iter().any(|&m| source.op.is_identity(m)) {
                continue;
            }
            let img = BarChain {
                start: f.apply_obj(sigma.start),
                mors,
            };
            let Some(&s) = s_index[n].get(&img) else {
                panic!("image of a chain is an enumerated chain");
            };
            let row0 = target.offsets[n][t];
            let col0 = source.offsets[n][s];
            let w = target
                .complex
                .groups
                .get(n)
                .map(|_| {
                    // Block width: generators of the value at the chain end.
                    target.offsets[n]
                        .get(t + 1)
                        .copied()
                        .unwrap_or(target.complex.groups[n].gens())
                        - target.offsets[n][t]
                })
                .unwrap();
            for k in 0..w {
                mat.set(row0 + k, col0 + k, 1.into());
            }
        }
        out.push(AbHom::new(
            source.complex.groups[n].clone(),
            target.complex.groups[n].clone(),
            mat,
        )?);
    }
    // Cochain condition: d_target ∘ phi = phi_next ∘ d_source.
    for n in 0..trunc {
        let lhs = target.complex.maps[n].compose(&out[n])?;
        let rhs = out[n + 1].compose(&source.complex.maps[n])?;
        if !lhs.same_map(&rhs) {
            return Err(DmodError::Internal(
                "cobar restriction does not commute with the differential".into(),
            ));
        }
    }
    Ok(out)
}

/// Builds the restriction map for F: D -> C and L over C, with both cobar
/// complexes, through degree `n_max + 1`.
pub struct CobarRestriction {
    pub source: CobarComplex,
    pub target: CobarComplex,
    pub maps: Vec<AbHom>,
}

pub fn cobar_restriction(
    f: &Functor,
    l: &Diagram,
    n_max: usize,
) -> Result<CobarRestriction, DmodError> {
    let fl = restrict(l, f)?;
    let source = cobar_complex(l, n_max)?;
    let target = cobar_complex(&fl, n_max)?;
    let maps = cobar_restriction_maps(f, &source, &target)?;
    Ok(CobarRestriction {
        source,
        target,
        maps,
    })
}

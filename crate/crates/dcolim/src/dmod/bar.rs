//! Simplicial replacement (bar complex) of a left diagram, derived
//! colimits, and the chain maps induced by functors.

use std::collections::HashMap;

use crate::abelian::{self, AbHom, IntMatrix};
use crate::fincat::{FinCategory, Functor};

use super::complex::{ChainMap, FreeComplex, GradedAbGroup};
use super::diagram::{restrict, Diagram, Variance};
use super::DmodError;

/// An n-chain c0 -> c1 -> ... -> cn: the start object and n composable
/// morphism indices, applied left to right.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BarChain {
    pub start: usize,
    pub mors: Vec<usize>,
}

impl BarChain {
    pub fn end(&self, cat: &FinCategory) -> usize {
        self.mors.last().map(|&m| cat.dst(m)).unwrap_or(self.start)
    }

    pub fn label(&self, cat: &FinCategory) -> String {
        if self.mors.is_empty() {
            format!("({})", cat.object_name(self.start))
        } else {
            let parts: Vec<&str> = self.mors.iter().map(|&m| cat.morphism(m).id.as_str()).collect();
            format!("({})", parts.join(","))
        }
    }

    fn sort_key(&self, cat: &FinCategory) -> Vec<String> {
        if self.mors.is_empty() {
            vec![cat.object_name(self.start).to_string()]
        } else {
            self.mors
                .iter()
                .map(|&m| cat.morphism(m).id.to_string())
                .collect()
        }
    }
}

/// All n-chains, nondegenerate ones only when `normalized`, ordered
/// lexicographically by morphism identifiers (object name in degree 0).
pub fn enumerate_chains(cat: &FinCategory, n: usize, normalized: bool) -> Vec<BarChain> {
    let mut out: Vec<BarChain> = if n == 0 {
        (0..cat.num_objects())
            .map(|c| BarChain {
                start: c,
                mors: Vec::new(),
            })
            .collect()
    } else {
        let mut acc = Vec::new();
        for prev in enumerate_chains(cat, n - 1, normalized) {
            let end = prev.end(cat);
            for m in 0..cat.num_morphisms() {
                if cat.src(m) != end {
                    continue;
                }
                if normalized && cat.is_identity(m) {
                    continue;
                }
                let mut mors = prev.mors.clone();
                mors.push(m);
                acc.push(BarChain {
                    start: prev.start,
                    mors,
                });
            }
        }
        acc
    };
    out.sort_by_key(|c| c.sort_key(cat));
    out
}

/// A diagram of free groups given by raw ranks and matrices (covariant).
struct FreeDiagramData {
    dims: Vec<usize>,
    mats: Vec<IntMatrix>,
}

/// Bar complex of a free diagram through degree `trunc`, with one block of
/// columns per chain of width dims[c0].
fn bar_of_free(
    cat: &FinCategory,
    data: &FreeDiagramData,
    chains: &[Vec<BarChain>],
    normalized: bool,
    tag: &str,
) -> Result<FreeComplex, DmodError> {
    let trunc = chains.len() - 1;
    let mut dims = Vec::new();
    let mut labels = Vec::new();
    let mut offsets: Vec<Vec<usize>> = Vec::new();
    let mut index: Vec<HashMap<&BarChain, usize>> = Vec::new();
    for n in 0..=trunc {
        let mut offs = Vec::new();
        let mut total = 0;
        let mut lab = Vec::new();
        let mut idx = HashMap::new();
        for (j, ch) in chains[n].iter().enumerate() {
            idx.insert(ch, j);
            offs.push(total);
            let w = data.dims[ch.start];
            for k in 0..w {
                lab.push(format!("{}{}#{}", tag, ch.label(cat), k));
            }
            total += w;
        }
        dims.push(total);
        labels.push(lab);
        offsets.push(offs);
        index.push(idx);
    }
    let mut diffs = vec![IntMatrix::zero(0, dims[0])];
    for n in 1..=trunc {
        let mut d = IntMatrix::zero(dims[n - 1], dims[n]);
        for (j, ch) in chains[n].iter().enumerate() {
            let w = data.dims[ch.start];
            let col0 = offsets[n][j];
            let mut add_block = |target: &BarChain, sign: i64, block: Option<&IntMatrix>| {
                if normalized && target.mors.iter().any(|&m| cat.is_identity(m)) {
                    return;
                }
                let t = *index[n - 1]
                    .get(target)
                    .expect("face of an enumerated chain is enumerated");
                let row0 = offsets[n - 1][t];
                match block {
                    Some(b) => {
                        for i in 0..b.rows() {
                            for k in 0..w {
                                let v = d.get(row0 + i, col0 + k) + b.get(i, k) * sign;
                                d.set(row0 + i, col0 + k, v);
                            }
                        }
                    }
                    None => {
                        for k in 0..w {
                            let v = d.get(row0 + k, col0 + k) + sign;
                            d.set(row0 + k, col0 + k, v);
                        }
                    }
                }
            };
            // Face 0 drops the start object and pushes the coefficient.
            let f1 = ch.mors[0];
            let d0 = BarChain {
                start: cat.dst(f1),
                mors: ch.mors[1..].to_vec(),
            };
            add_block(&d0, 1, Some(&data.mats[f1]));
            // Middle faces compose adjacent arrows.
            for i in 1..n {
                let gf = cat
                    .comp(ch.mors[i], ch.mors[i - 1])
                    .expect("chain morphisms compose");
                let mut mors = ch.mors.clone();
                mors[i - 1] = gf;
                mors.remove(i);
                let di = BarChain {
                    start: ch.start,
                    mors,
                };
                add_block(&di, if i % 2 == 0 { 1 } else { -1 }, None);
            }
            // Last face drops the final arrow.
            let dn = BarChain {
                start: ch.start,
                mors: ch.mors[..n - 1].to_vec(),
            };
            add_block(&dn, if n % 2 == 0 { 1 } else { -1 }, None);
        }
        diffs.push(d);
    }
    Ok(FreeComplex::new(dims, labels, diffs)?)
}

/// Bar complex of a left diagram. Torsion coefficients are absorbed by a
/// two-step free cover per object: with R(c) a basis of the relation
/// lattice of M(c), the complex is Cone(R: bar(F1) -> bar(F0)) with
/// F0(c) = Z^{gens}, F1(c) = Z^{lattice rank}. Since R is injective
/// degreewise, the cone's homology is the bar homology of M itself.
///
/// Degree n of the cone lists the shifted F1 chains of degree n-1 first,
/// then the F0 chains of degree n.
#[derive(Clone, Debug)]
pub struct BarComplex {
    pub complex: FreeComplex,
    pub chains: Vec<Vec<BarChain>>,
    /// Per object: number of generators of M(c) (F0 block width).
    pub gen_dims: Vec<usize>,
    /// Per object: rank of the relation lattice of M(c) (F1 block width).
    pub rel_dims: Vec<usize>,
    pub normalized: bool,
}

impl BarComplex {
    /// Dimension of the F1 (shifted) part in cone degree n.
    pub fn shifted_dim(&self, n: usize) -> usize {
        if n == 0 {
            return 0;
        }
        self.chains[n - 1]
            .iter()
            .map(|c| self.rel_dims[c.start])
            .sum()
    }
}

/// Builds the bar complex through degree `n_max + 1` so homology is
/// correct through `n_max`.
pub fn bar_complex(
    m: &Diagram,
    n_max: usize,
    normalized: bool,
) -> Result<BarComplex, DmodError> {
    if m.variance != Variance::Left {
        return Err(DmodError::Variance(
            "bar complex needs a left (covariant) diagram".into(),
        ));
    }
    let cat = &m.base;
    let trunc = n_max + 1;
    let chains: Vec<Vec<BarChain>> = (0..=trunc)
        .map(|n| enumerate_chains(cat, n, normalized))
        .collect();

    let gen_dims: Vec<usize> = m.groups.iter().map(|g| g.gens()).collect();
    let lattice: Vec<IntMatrix> = m.groups.iter().map(|g| g.relation_lattice_basis()).collect();
    let rel_dims: Vec<usize> = lattice.iter().map(|b| b.cols()).collect();

    let f0 = FreeDiagramData {
        dims: gen_dims.clone(),
        mats: (0..cat.num_morphisms())
            .map(|f| m.maps[f].matrix().clone())
            .collect(),
    };
    // F1 maps: the unique X with lattice_dst · X = M(f) · lattice_src,
    // which exists because M(f) is well defined on the presentation.
    let mut f1_mats = Vec::new();
    for f in 0..cat.num_morphisms() {
        let (s, t) = (cat.src(f), cat.dst(f));
        let rhs = m.maps[f].matrix().mul(&lattice[s]);
        let t_snf = abelian::snf::smith_normal_form(&lattice[t]);
        let x = abelian::snf::solve_matrix(&t_snf, &rhs)
            .expect("well-defined maps carry the relation lattice into the target lattice");
        f1_mats.push(x);
    }
    let f1 = FreeDiagramData {
        dims: rel_dims.clone(),
        mats: f1_mats,
    };

    let bar0 = bar_of_free(cat, &f0, &chains, normalized, "")?;
    let bar1 = bar_of_free(cat, &f1, &chains, normalized, "r")?;
    // Vertical map bar(F1) -> bar(F0): the lattice basis blockwise.
    let mut vmats = Vec::new();
    for n in 0..=trunc {
        let mut mat = IntMatrix::zero(bar0.dims[n], bar1.dims[n]);
        let mut r0 = 0;
        let mut c0 = 0;
        for ch in &chains[n] {
            let b = &lattice[ch.start];
            for i in 0..b.rows() {
                for j in 0..b.cols() {
                    mat.set(r0 + i, c0 + j, b.get(i, j).clone());
                }
            }
            r0 += gen_dims[ch.start];
            c0 += rel_dims[ch.start];
        }
        vmats.push(mat);
    }
    let vmap = ChainMap::new(&bar1, &bar0, vmats)?;
    let complex = super::complex::cone(&vmap, &bar1, &bar0)?;
    Ok(BarComplex {
        complex,
        chains,
        gen_dims,
        rel_dims,
        normalized,
    })
}

/// Left derived colimits in degrees 0..=n of a left diagram.
pub fn derived_colim(m: &Diagram, n: usize) -> Result<GradedAbGroup, DmodError> {
    let bar = bar_complex(m, n, true)?;
    Ok(bar.complex.graded_homology(n)?)
}

/// The chain map bar(D, F*M) -> bar(C, M) induced by F: D -> C, sending a
/// chain to its image chain (zero when normalization collapses it), plus
/// the two bar complexes.
pub struct InducedMap {
    pub source: BarComplex,
    pub target: BarComplex,
    pub chain_map: ChainMap,
}

/// Matrices of the induced map between two already-built bar complexes;
/// `source` must be the bar complex of F*M over the domain of F and
/// `target` that of M over the codomain.
pub fn induced_matrices(
    f: &Functor,
    source: &BarComplex,
    target: &BarComplex,
) -> Result<ChainMap, DmodError> {
    assert_eq!(source.normalized, target.normalized);
    let c_cat = f.codomain();
    let trunc = source.complex.truncation().min(target.complex.truncation());
    // Per degree, the map sends the F1 row to the F1 row and the F0 row to
    // the F0 row; the chain part maps (g1..gn) to (F g1..F gn), collapsing
    // when any image arrow is an identity and the target is normalized.
    let t_index: Vec<HashMap<&BarChain, usize>> = target
        .chains
        .iter()
        .map(|v| v.iter().enumerate().map(|(i, c)| (c, i)).collect())
        .collect();
    let image_chain = |ch: &BarChain| -> Option<BarChain> {
        let mors: Vec<usize> = ch.mors.iter().map(|&m| f.apply_mor(m)).collect();
        if target.normalized && mors.iter().any(|&m| c_cat.is_identity(m)) {
            return None;
        }
        Some(BarChain {
            start: f.apply_obj(ch.start),
            mors,
        })
    };
    // Offset tables for both rows of both cones.
    let offsets = |bar: &BarComplex, n: usize, widths: &[usize]| -> Vec<usize> {
        let mut offs = Vec::new();
        let mut t = 0;
        for ch in &bar.chains[n] {
            offs.push(t);
            t += widths[ch.start];
        }
        offs
    };
    let mut mats = Vec::new();
    for n in 0..=trunc {
        let s_shift = source.shifted_dim(n);
        let t_shift = target.shifted_dim(n);
        let mut mat = IntMatrix::zero(target.complex.dims[n], source.complex.dims[n]);
        // F1 row (degree n-1 chains) then F0 row (degree n chains).
        let mut rows: Vec<(usize, usize, usize, &[usize], &[usize])> = Vec::new();
        if n > 0 {
            rows.push((n - 1, 0, 0, &source.rel_dims, &target.rel_dims));
        }
        rows.push((n, s_shift, t_shift, &source.gen_dims, &target.gen_dims));
        for (deg, s_base, t_base, s_w, t_w) in rows {
            let s_offs = offsets(source, deg, s_w);
            let t_offs = offsets(target, deg, t_w);
            for (j, ch) in source.chains[deg].iter().enumerate() {
                let Some(img) = image_chain(ch) else { continue };
                let ti = *t_index[deg]
                    .get(&img)
                    .expect("image of a chain is an enumerated chain");
                let w = s_w[ch.start];
                debug_assert_eq!(w, t_w[img.start]);
                for k in 0..w {
                    mat.set(t_base + t_offs[ti] + k, s_base + s_offs[j] + k, 1.into());
                }
            }
        }
        mats.push(mat);
    }
    Ok(ChainMap::new(&source.complex, &target.complex, mats)?)
}

/// Induced map on bar complexes for F: D -> C and M over C, built through
/// degree `n_max + 1`.
pub fn induced_map(f: &Functor, m: &Diagram, n_max: usize) -> Result<InducedMap, DmodError> {
    let fm = restrict(m, f)?;
    let source = bar_complex(&fm, n_max, true)?;
    let target = bar_complex(m, n_max, true)?;
    let chain_map = induced_matrices(f, &source, &target)?;
    Ok(InducedMap {
        source,
        target,
        chain_map,
    })
}

/// Induced maps on homology in degrees 0..=n_max (the complexes carry one
/// extra degree).
pub fn induced_on_homology_graded(
    im: &InducedMap,
    n_max: usize,
) -> Result<Vec<AbHom>, DmodError> {
    let mut out = Vec::new();
    for n in 0..=n_max {
        let s = im.source.complex.homology_node(n)?;
        let t = im.target.complex.homology_node(n)?;
        out.push(abelian::induced_on_homology(&s, &t, &im.chain_map.mats[n])?);
    }
    Ok(out)
}

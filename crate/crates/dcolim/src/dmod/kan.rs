//! Tensor product over a category, left Kan extension, direct (co)limits,
//! and the relative-nerve tensor complex.

use num_bigint::BigInt;

use crate::abelian::{self, lattice_quotient, AbHom, FgAbGroup, IntMatrix};
use crate::fincat::Functor;

use super::bar::{enumerate_chains, BarChain};
use super::complex::{GradedAbGroup, Orientation, PresentedComplex};
use super::diagram::{Diagram, Variance};
use super::DmodError;

/// The coequalizer presentation of L ⊗_C M with its generator layout:
/// generators are ordered by object, then generator of L(c), then generator
/// of M(c).
pub struct TensorPresentation {
    pub group: FgAbGroup,
    /// obj_offsets[c] = first generator index of object c's block.
    pub obj_offsets: Vec<usize>,
    l_dims: Vec<usize>,
    m_dims: Vec<usize>,
}

impl TensorPresentation {
    pub fn gen_index(&self, obj: usize, lgen: usize, mgen: usize) -> usize {
        self.obj_offsets[obj] + lgen * self.m_dims[obj] + mgen
    }

    pub fn block_dims(&self, obj: usize) -> (usize, usize) {
        (self.l_dims[obj], self.m_dims[obj])
    }
}

/// Coequalizer of the two actions on ⊕_c L(c) ⊗ M(c): for f: c -> c',
/// x ∈ L(c'), m ∈ M(c), the relation L(f)x ⊗ m = x ⊗ M(f)m.
pub fn tensor_presentation(l: &Diagram, m: &Diagram) -> Result<TensorPresentation, DmodError> {
    if l.base != m.base {
        return Err(DmodError::Shape("tensor factors over different bases".into()));
    }
    if l.variance != Variance::Right || m.variance != Variance::Left {
        return Err(DmodError::Variance(
            "tensor takes a right module and a left module".into(),
        ));
    }
    let cat = &l.base;
    let n_obj = cat.num_objects();
    let l_dims: Vec<usize> = l.groups.iter().map(|g| g.gens()).collect();
    let m_dims: Vec<usize> = m.groups.iter().map(|g| g.gens()).collect();
    let mut obj_offsets = Vec::new();
    let mut total = 0;
    for c in 0..n_obj {
        obj_offsets.push(total);
        total += l_dims[c] * m_dims[c];
    }
    let gen_index =
        |c: usize, i: usize, j: usize| obj_offsets[c] + i * m_dims[c] + j;
    let mut rel_cols: Vec<Vec<(usize, BigInt)>> = Vec::new();
    // Relations of each factor, tensored with the other factor's generators.
    for c in 0..n_obj {
        let rl = l.groups[c].rels();
        for col in 0..rl.cols() {
            for j in 0..m_dims[c] {
                let mut v = Vec::new();
                for i in 0..l_dims[c] {
                    let e = rl.get(i, col);
                    if *e != BigInt::from(0) {
                        v.push((gen_index(c, i, j), e.clone()));
                    }
                }
                rel_cols.push(v);
            }
        }
        let rm = m.groups[c].rels();
        for col in 0..rm.cols() {
            for i in 0..l_dims[c] {
                let mut v = Vec::new();
                for j in 0..m_dims[c] {
                    let e = rm.get(j, col);
                    if *e != BigInt::from(0) {
                        v.push((gen_index(c, i, j), e.clone()));
                    }
                }
                rel_cols.push(v);
            }
        }
    }
    // Action relations, identities excluded (they relate a generator to
    // itself).
    for f in 0..cat.num_morphisms() {
        if cat.is_identity(f) {
            continue;
        }
        let (c, c2) = (cat.src(f), cat.dst(f));
        let lmat = l.maps[f].matrix(); // L(c') -> L(c)
        let mmat = m.maps[f].matrix(); // M(c) -> M(c')
        for x in 0..l_dims[c2] {
            for mm in 0..m_dims[c] {
                let mut v = Vec::new();
                for i in 0..l_dims[c] {
                    let e = lmat.get(i, x);
                    if *e != BigInt::from(0) {
                        v.push((gen_index(c, i, mm), e.clone()));
                    }
                }
                for j in 0..m_dims[c2] {
                    let e = mmat.get(j, mm);
                    if *e != BigInt::from(0) {
                        v.push((gen_index(c2, x, j), -e.clone()));
                    }
                }
                rel_cols.push(v);
            }
        }
    }
    let mut rels = IntMatrix::zero(total, rel_cols.len());
    for (col, v) in rel_cols.iter().enumerate() {
        for (row, e) in v {
            let cur = rels.get(*row, col) + e;
            rels.set(*row, col, cur);
        }
    }
    let group = FgAbGroup::new(total, rels)?;
    Ok(TensorPresentation {
        group,
        obj_offsets,
        l_dims,
        m_dims,
    })
}

/// L ⊗_C M as a group.
pub fn tensor_over_category(l: &Diagram, m: &Diagram) -> Result<FgAbGroup, DmodError> {
    Ok(tensor_presentation(l, m)?.group)
}

/// The left D-module ZC(c, F-): d maps to the free group on Hom_C(c, F d),
/// morphisms act by post-composition.
fn hom_module(c: usize, f: &Functor) -> Diagram {
    let d_cat = f.domain().clone();
    let c_cat = f.codomain();
    let homs: Vec<Vec<usize>> = (0..d_cat.num_objects())
        .map(|d| c_cat.hom(c, f.apply_obj(d)))
        .collect();
    let groups: Vec<FgAbGroup> = homs.iter().map(|h| FgAbGroup::free(h.len())).collect();
    let mut maps = Vec::new();
    for g in 0..d_cat.num_morphisms() {
        let (s, t) = (d_cat.src(g), d_cat.dst(g));
        let fg = f.apply_mor(g);
        let mat = IntMatrix::from_fn(homs[t].len(), homs[s].len(), |i, j| {
            let composed = c_cat.comp(fg, homs[s][j]).expect("composable by endpoints");
            BigInt::from((homs[t][i] == composed) as i64)
        });
        maps.push(AbHom::new(groups[s].clone(), groups[t].clone(), mat).unwrap());
    }
    Diagram {
        base: d_cat,
        variance: Variance::Left,
        groups,
        maps,
    }
}

/// Left Kan extension F_! L of a right D-module along F: D -> C:
/// (F_! L)(c) = L ⊗_D ZC(c, F-), functorial in c by precomposition of the
/// hom factor.
pub fn left_kan(l: &Diagram, f: &Functor) -> Result<Diagram, DmodError> {
    if l.variance != Variance::Right || &l.base != f.domain() {
        return Err(DmodError::Shape(
            "left Kan extension needs a right module over the functor's domain".into(),
        ));
    }
    let c_cat = f.codomain().clone();
    let d_cat = f.domain();
    let homs_at = |c: usize| -> Vec<Vec<usize>> {
        (0..d_cat.num_objects())
            .map(|d| c_cat.hom(c, f.apply_obj(d)))
            .collect()
    };
    let tens: Vec<TensorPresentation> = (0..c_cat.num_objects())
        .map(|c| tensor_presentation(l, &hom_module(c, f)))
        .collect::<Result<_, _>>()?;
    let mut maps = Vec::new();
    for h in 0..c_cat.num_morphisms() {
        // Right module: the map of h: c -> c' goes value(c') -> value(c),
        // sending x ⊗ g to x ⊗ (g ∘ h).
        let (c, c2) = (c_cat.src(h), c_cat.dst(h));
        let (src_t, dst_t) = (&tens[c2], &tens[c]);
        let homs_src = homs_at(c2);
        let homs_dst = homs_at(c);
        let mut mat = IntMatrix::zero(dst_t.group.gens(), src_t.group.gens());
        for d in 0..d_cat.num_objects() {
            let (ld, _) = src_t.block_dims(d);
            for (gj, &g) in homs_src[d].iter().enumerate() {
                let composed = c_cat.comp(g, h).expect("composable by endpoints");
                let gi = homs_dst[d]
                    .iter()
                    .position(|&x| x == composed)
                    .expect("hom sets are closed under precomposition");
                for x in 0..ld {
                    mat.set(dst_t.gen_index(d, x, gi), src_t.gen_index(d, x, gj), 1.into());
                }
            }
        }
        maps.push(AbHom::new(src_t.group.clone(), dst_t.group.clone(), mat)?);
    }
    let groups = tens.into_iter().map(|t| t.group).collect();
    Diagram::new(c_cat, Variance::Right, groups, maps)
}

/// The colimit of a left diagram as a coequalizer: ⊕ M(c) modulo
/// M(f)m = m for every morphism.
pub fn colim_direct(m: &Diagram) -> Result<FgAbGroup, DmodError> {
    if m.variance != Variance::Left {
        return Err(DmodError::Variance("colimit needs a left diagram".into()));
    }
    let cat = &m.base;
    let dims: Vec<usize> = m.groups.iter().map(|g| g.gens()).collect();
    let mut offsets = Vec::new();
    let mut total = 0;
    for c in 0..cat.num_objects() {
        offsets.push(total);
        total += dims[c];
    }
    let mut cols: Vec<IntMatrix> = Vec::new();
    for c in 0..cat.num_objects() {
        let r = m.groups[c].rels();
        let mut block = IntMatrix::zero(total, r.cols());
        for i in 0..r.rows() {
            for j in 0..r.cols() {
                block.set(offsets[c] + i, j, r.get(i, j).clone());
            }
        }
        cols.push(block);
    }
    for f in 0..cat.num_morphisms() {
        if cat.is_identity(f) {
            continue;
        }
        let (s, t) = (cat.src(f), cat.dst(f));
        let mat = m.maps[f].matrix();
        let mut block = IntMatrix::zero(total, dims[s]);
        for j in 0..dims[s] {
            for i in 0..dims[t] {
                block.set(offsets[t] + i, j, mat.get(i, j).clone());
            }
            let cur = block.get(offsets[s] + j, j) - 1;
            block.set(offsets[s] + j, j, cur);
        }
        cols.push(block);
    }
    let rels = cols
        .iter()
        .fold(IntMatrix::zero(total, 0), |acc, b| acc.hstack(b));
    Ok(FgAbGroup::new(total, rels)?)
}

/// The limit of a right diagram as an equalizer: the subgroup of ⊕ L(c)
/// on which every morphism acts trivially.
pub fn lim_direct(l: &Diagram) -> Result<FgAbGroup, DmodError> {
    if l.variance != Variance::Right {
        return Err(DmodError::Variance("limit needs a right diagram".into()));
    }
    let cat = &l.base;
    let product = l
        .groups
        .iter()
        .fold(FgAbGroup::trivial(), |acc, g| acc.direct_sum(g));
    let dims: Vec<usize> = l.groups.iter().map(|g| g.gens()).collect();
    let offsets: Vec<usize> = {
        let mut v = Vec::new();
        let mut t = 0;
        for c in 0..cat.num_objects() {
            v.push(t);
            t += dims[c];
        }
        v
    };
    // Difference map into ⊕_{f non-identity} L(src f):
    // (x_c) maps to (L(f) x_{dst f} - x_{src f})_f.
    let non_id: Vec<usize> = (0..cat.num_morphisms())
        .filter(|&f| !cat.is_identity(f))
        .collect();
    let mut target = FgAbGroup::trivial();
    let mut t_offsets = Vec::new();
    for &f in &non_id {
        t_offsets.push(target.gens());
        target = target.direct_sum(&l.groups[cat.src(f)]);
    }
    let mut mat = IntMatrix::zero(target.gens(), product.gens());
    for (k, &f) in non_id.iter().enumerate() {
        let (s, t) = (cat.src(f), cat.dst(f));
        let b = l.maps[f].matrix(); // L(t) -> L(s)
        for i in 0..dims[s] {
            for j in 0..dims[t] {
                mat.set(t_offsets[k] + i, offsets[t] + j, b.get(i, j).clone());
            }
            let cur = mat.get(t_offsets[k] + i, offsets[s] + i) - 1;
            mat.set(t_offsets[k] + i, offsets[s] + i, cur);
        }
    }
    let g = AbHom::new(product.clone(), target, mat)?;
    // Kernel lattice of g inside the product's generators, modulo the
    // product's relations.
    let stacked = g.matrix().hstack(g.target().rels());
    let st_snf = abelian::snf::smith_normal_form(&stacked);
    let full_kernel = abelian::snf::kernel_basis(&st_snf);
    let idx: Vec<usize> = (0..product.gens()).collect();
    let kernel_gens = full_kernel.select_rows(&idx);
    let denom = product.rels().clone();
    let all = kernel_gens.hstack(&denom);
    let (group, _) = lattice_quotient(&all, &denom)?;
    Ok(group)
}

/// The relative-nerve tensor complex of F: D -> C with coefficients M over
/// C: degree p is K_p ⊗_C M where K_p(c) is free on pairs (nondegenerate
/// p-chain in D, anchor c -> F(start)), the anchor acted on by
/// precomposition. Its homology computes the derived colimits of F*M over
/// D; built through degree `n_max + 1`.
pub fn relative_nerve_complex(
    f: &Functor,
    m: &Diagram,
    n_max: usize,
) -> Result<PresentedComplex, DmodError> {
    if m.variance != Variance::Left || &m.base != f.codomain() {
        return Err(DmodError::Shape(
            "relative nerve needs a left module over the functor's codomain".into(),
        ));
    }
    let d_cat = f.domain();
    let c_cat = f.codomain();
    let trunc = n_max + 1;
    let chains: Vec<Vec<BarChain>> = (0..=trunc)
        .map(|n| enumerate_chains(d_cat, n, true))
        .collect();
    // K_p as a right C-module: basis of K_p(c) = (chain, anchor).
    struct Level {
        /// Per object c, the ordered basis (chain index, anchor morphism).
        basis: Vec<Vec<(usize, usize)>>,
        tens: TensorPresentation,
    }
    let mut levels: Vec<Level> = Vec::new();
    for p in 0..=trunc {
        let mut basis = Vec::new();
        for c in 0..c_cat.num_objects() {
            let mut b = Vec::new();
            for (ci, ch) in chains[p].iter().enumerate() {
                for a in c_cat.hom(c, f.apply_obj(ch.start)) {
                    b.push((ci, a));
                }
            }
            basis.push(b);
        }
        let groups: Vec<FgAbGroup> = basis.iter().map(|b| FgAbGroup::free(b.len())).collect();
        let mut maps = Vec::new();
        for h in 0..c_cat.num_morphisms() {
            let (c, c2) = (c_cat.src(h), c_cat.dst(h));
            let mat = IntMatrix::from_fn(basis[c].len(), basis[c2].len(), |i, j| {
                let (cj, aj) = basis[c2][j];
                let composed = c_cat.comp(aj, h).expect("composable by endpoints");
                BigInt::from((basis[c][i] == (cj, composed)) as i64)
            });
            maps.push(AbHom::new(groups[c2].clone(), groups[c].clone(), mat).unwrap());
        }
        let module = Diagram {
            base: c_cat.clone(),
            variance: Variance::Right,
            groups,
            maps,
        };
        let tens = tensor_presentation(&module, m)?;
        levels.push(Level { basis, tens });
    }
    let mut diffs = Vec::new();
    for p in 1..=trunc {
        // Face maps on the K basis; each face keeps the ambient object and
        // the M generator.
        let (src_l, dst_l) = (&levels[p], &levels[p - 1]);
        let mut mat = IntMatrix::zero(dst_l.tens.group.gens(), src_l.tens.group.gens());
        for c in 0..c_cat.num_objects() {
            let (_, m_dim) = src_l.tens.block_dims(c);
            let find = |pair: (usize, usize)| -> usize {
                dst_l.basis[c]
                    .iter()
                    .position(|&x| x == pair)
                    .expect("faces stay in the enumerated basis")
            };
            for (bj, &(ci, a)) in src_l.basis[c].iter().enumerate() {
                let ch = &chains[p][ci];
                let mut add = |target_chain: BarChain, anchor: usize, sign: i64| {
                    if target_chain.mors.iter().any(|&mm| d_cat.is_identity(mm)) {
                        return;
                    }
                    let ti = chains[p - 1]
                        .iter()
                        .position(|x| *x == target_chain)
                        .expect("faces are enumerated");
                    let bi = find((ti, anchor));
                    for k in 0..m_dim {
                        let r = dst_l.tens.gen_index(c, bi, k);
                        let s = src_l.tens.gen_index(c, bj, k);
                        let cur = mat.get(r, s) + sign;
                        mat.set(r, s, cur);
                    }
                };
                // Face 0 drops the start; the anchor pushes forward.
                let f1 = ch.mors[0];
                let new_anchor = c_cat
                    .comp(f.apply_mor(f1), a)
                    .expect("anchor composes with the image arrow");
                add(
                    BarChain {
                        start: d_cat.dst(f1),
                        mors: ch.mors[1..].to_vec(),
                    },
                    new_anchor,
                    1,
                );
                for i in 1..p {
                    let gf = d_cat
                        .comp(ch.mors[i], ch.mors[i - 1])
                        .expect("chain morphisms compose");
                    let mut mors = ch.mors.clone();
                    mors[i - 1] = gf;
                    mors.remove(i);
                    add(
                        BarChain {
                            start: ch.start,
                            mors,
                        },
                        a,
                        if i % 2 == 0 { 1 } else { -1 },
                    );
                }
                add(
                    BarChain {
                        start: ch.start,
                        mors: ch.mors[..p - 1].to_vec(),
                    },
                    a,
                    if p % 2 == 0 { 1 } else { -1 },
                );
            }
        }
        diffs.push(AbHom::new(
            src_l.tens.group.clone(),
            dst_l.tens.group.clone(),
            mat,
        )?);
    }
    let groups: Vec<FgAbGroup> = levels.iter().map(|l| l.tens.group.clone()).collect();
    Ok(PresentedComplex::new(
        Orientation::Homological,
        groups,
        diffs,
    )?)
}

/// Derived colimits of F*M computed through the relative-nerve path.
pub fn relative_derived_colim(
    f: &Functor,
    m: &Diagram,
    n_max: usize,
) -> Result<GradedAbGroup, DmodError> {
    let cx = relative_nerve_complex(f, m, n_max)?;
    Ok(cx.graded_homology(n_max)?)
}

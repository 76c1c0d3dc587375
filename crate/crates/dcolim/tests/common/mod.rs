//! Seeded random generators shared by the integration tests: small
//! categories, forest posets with freely assigned module data, functors
//! between them, and well-defined homomorphisms of f.g. abelian groups.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use dcolim::abelian::{AbHom, FgAbGroup, IntMatrix};
use dcolim::corpus;
use dcolim::dmod::{Diagram, Variance};
use dcolim::fincat::{FinCategory, Functor};

/// A random group in diagonal presentation, remembering the order of each
/// generator (the presentation's torsion coefficients need not survive into
/// the recomputed normal form, so they are carried alongside).
#[derive(Clone)]
pub struct RandomGroup {
    pub group: FgAbGroup,
    /// Per generator: its torsion coefficient, zero meaning free.
    pub orders: Vec<BigInt>,
}

pub fn random_group(rng: &mut ChaCha8Rng) -> RandomGroup {
    let rank = rng.gen_range(0..=2);
    let torsion_pool = [2u64, 3, 4, 6, 9];
    let n_torsion = rng.gen_range(0..=2);
    let torsion: Vec<BigInt> = (0..n_torsion)
        .map(|_| BigInt::from(torsion_pool[rng.gen_range(0..torsion_pool.len())]))
        .collect();
    let mut orders = torsion.clone();
    orders.extend(std::iter::repeat(BigInt::zero()).take(rank));
    RandomGroup {
        group: FgAbGroup::from_normal_form(rank, &torsion),
        orders,
    }
}

/// A uniformly sampled well-defined homomorphism between diagonally
/// presented groups: the entry in row k, column j must be a multiple of
/// u_k / gcd(u_k, t_j) whenever both generators carry torsion, and zero
/// when a torsion generator maps to a free one.
pub fn random_hom(rng: &mut ChaCha8Rng, src: &RandomGroup, tgt: &RandomGroup) -> AbHom {
    let mut m = IntMatrix::zero(tgt.group.gens(), src.group.gens());
    for j in 0..src.group.gens() {
        let t = src.orders[j].clone();
        for k in 0..tgt.group.gens() {
            let u = tgt.orders[k].clone();
            let entry = if t.is_zero() {
                BigInt::from(rng.gen_range(-2i64..=2))
            } else if u.is_zero() {
                BigInt::zero()
            } else {
                let step = &u / t.gcd(&u);
                step * BigInt::from(rng.gen_range(-2i64..=2))
            };
            m.set(k, j, entry);
        }
    }
    AbHom::new(src.group.clone(), tgt.group.clone(), m).expect("construction keeps relations")
}

/// A forest poset: each object may have one parent below it, so Hasse
/// paths are unique and module data can be assigned freely per edge.
pub struct ForestPoset {
    pub cat: FinCategory,
    /// parent[i] < i in the order; None for roots.
    pub parent: Vec<Option<usize>>,
}

pub fn random_forest(rng: &mut ChaCha8Rng, max_objects: usize) -> ForestPoset {
    let n = rng.gen_range(1..=max_objects);
    let mut parent = vec![None; n];
    let mut less = Vec::new();
    for i in 1..n {
        if rng.gen_bool(0.7) {
            let p = rng.gen_range(0..i);
            parent[i] = Some(p);
            less.push((p, i));
        }
    }
    let names: Vec<String> = (0..n).map(|i| format!("x{}", i)).collect();
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    ForestPoset {
        cat: corpus::poset_category(&refs, &less),
        parent,
    }
}

/// Random diagram over a forest poset: one group per object, one free hom
/// per Hasse edge, longer arrows composed along the unique ancestor chain.
pub fn random_forest_diagram(
    rng: &mut ChaCha8Rng,
    forest: &ForestPoset,
    variance: Variance,
) -> Diagram {
    let cat = &forest.cat;
    let n = cat.num_objects();
    let seeds: Vec<RandomGroup> = (0..n).map(|_| random_group(rng)).collect();
    // Hom along the Hasse edge parent[i] -> i, oriented by variance.
    let edge: Vec<Option<AbHom>> = (0..n)
        .map(|i| {
            forest.parent[i].map(|p| match variance {
                Variance::Left => random_hom(rng, &seeds[p], &seeds[i]),
                Variance::Right => random_hom(rng, &seeds[i], &seeds[p]),
            })
        })
        .collect();
    let groups: Vec<FgAbGroup> = seeds.into_iter().map(|s| s.group).collect();
    // obj_index(name) recovers the poset index from the object name.
    let pos = |o: usize| cat.object_name(o)[1..].parse::<usize>().unwrap();
    let mut maps = Vec::with_capacity(cat.num_morphisms());
    for m in 0..cat.num_morphisms() {
        let (lo, hi) = (pos(cat.src(m)), pos(cat.dst(m)));
        if lo == hi {
            maps.push(AbHom::identity(&groups[lo]));
            continue;
        }
        // Walk hi's ancestor chain down to lo, composing edge maps.
        let mut chain = Vec::new();
        let mut cur = hi;
        while cur != lo {
            chain.push(cur);
            cur = forest.parent[cur].expect("comparable in a forest");
        }
        let mut hom: Option<AbHom> = None;
        for &step in chain.iter().rev() {
            let e = edge[step].as_ref().unwrap();
            hom = Some(match (&hom, variance) {
                (None, _) => e.clone(),
                (Some(h), Variance::Left) => e.compose(h).unwrap(),
                (Some(h), Variance::Right) => h.compose(e).unwrap(),
            });
        }
        maps.push(hom.unwrap());
    }
    Diagram::new(cat.clone(), variance, groups, maps).expect("forest data is functorial")
}

/// A monotone map between forest posets sampled object by object
/// (children map above the image of their parent).
pub fn random_monotone_functor(
    rng: &mut ChaCha8Rng,
    dom: &ForestPoset,
    cod: &ForestPoset,
) -> Functor {
    let c = &cod.cat;
    let n = dom.cat.num_objects();
    let mut image = Vec::with_capacity(n);
    for i in 0..n {
        let candidates: Vec<usize> = match dom.parent[i] {
            None => (0..c.num_objects()).collect(),
            // Anything above the parent's image (hom nonempty in a poset).
            Some(p) => (0..c.num_objects())
                .filter(|&y| !c.hom(image[p], y).is_empty())
                .collect(),
        };
        image.push(candidates[rng.gen_range(0..candidates.len())]);
    }
    let on_mor: Vec<usize> = (0..dom.cat.num_morphisms())
        .map(|m| {
            let (s, t) = (dom.cat.src(m), dom.cat.dst(m));
            c.hom(image[s], image[t])[0]
        })
        .collect();
    Functor::new(dom.cat.clone(), c.clone(), image, on_mor).expect("monotone maps are functors")
}

/// A grab bag of small categories: random posets plus structured shapes.
pub fn random_small_category(rng: &mut ChaCha8Rng) -> FinCategory {
    match rng.gen_range(0..6) {
        0 => corpus::cyclic_group(rng.gen_range(1..=4)),
        1 => corpus::contractible_groupoid(rng.gen_range(1..=3), "t"),
        2 => {
            // Random poset from an arbitrary small DAG.
            let n = rng.gen_range(1..=5);
            let mut less = Vec::new();
            for i in 0..n {
                for j in (i + 1)..n {
                    if rng.gen_bool(0.4) {
                        less.push((i, j));
                    }
                }
            }
            let names: Vec<String> = (0..n).map(|i| format!("x{}", i)).collect();
            let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
            corpus::poset_category(&refs, &less)
        }
        3 => corpus::adjoin_initial(&corpus::cyclic_group(rng.gen_range(1..=3)), "0"),
        4 => corpus::adjoin_terminal(&corpus::cyclic_group(rng.gen_range(1..=3)), "1"),
        _ => corpus::disjoint_union(
            &corpus::chain(rng.gen_range(1..=2)),
            &corpus::cyclic_group(rng.gen_range(1..=3)),
        ),
    }
}

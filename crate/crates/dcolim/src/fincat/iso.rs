//! Isomorphism search between finite categories.

use super::category::FinCategory;
use super::functor::Functor;
use super::CategoryError;

/// Backtracking search for an isomorphism of categories. Returns a witness
/// pair (forward, inverse) or `None` when no isomorphism exists. Inputs
/// beyond `size_limit` morphisms are rejected.
pub fn cat_isomorphic(
    a: &FinCategory,
    b: &FinCategory,
    size_limit: usize,
) -> Result<Option<(Functor, Functor)>, CategoryError> {
    if a.num_morphisms() > size_limit || b.num_morphisms() > size_limit {
        return Err(CategoryError::SizeGuard {
            limit: size_limit,
            actual: a.num_morphisms().max(b.num_morphisms()),
        });
    }
    if a.num_objects() != b.num_objects() || a.num_morphisms() != b.num_morphisms() {
        return Ok(None);
    }
    let n_obj = a.num_objects();
    let mut obj_map = vec![usize::MAX; n_obj];
    let mut used = vec![false; n_obj];
    let found = assign_objects(a, b, 0, &mut obj_map, &mut used);
    Ok(found.map(|(fwd_obj, fwd_mor)| {
        let f = Functor::new(a.clone(), b.clone(), fwd_obj.clone(), fwd_mor.clone())
            .expect("search produced a functor");
        let mut inv_obj = vec![0; n_obj];
        for (x, &y) in fwd_obj.iter().enumerate() {
            inv_obj[y] = x;
        }
        let mut inv_mor = vec![0; a.num_morphisms()];
        for (m, &fm) in fwd_mor.iter().enumerate() {
            inv_mor[fm] = m;
        }
        let g = Functor::new(b.clone(), a.clone(), inv_obj, inv_mor)
            .expect("inverse of an isomorphism is a functor");
        (f, g)
    }))
}

fn assign_objects(
    a: &FinCategory,
    b: &FinCategory,
    next: usize,
    obj_map: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> Option<(Vec<usize>, Vec<usize>)> {
    if next == a.num_objects() {
        // Hom-set cardinalities must match before trying morphisms.
        for x in 0..a.num_objects() {
            for y in 0..a.num_objects() {
                if a.hom(x, y).len() != b.hom(obj_map[x], obj_map[y]).len() {
                    return None;
                }
            }
        }
        let mut mor_map = vec![usize::MAX; a.num_morphisms()];
        return assign_morphisms(a, b, obj_map, 0, &mut mor_map)
            .map(|mm| (obj_map.clone(), mm));
    }
    for y in 0..b.num_objects() {
        if used[y] {
            continue;
        }
        obj_map[next] = y;
        used[y] = true;
        if let Some(r) = assign_objects(a, b, next + 1, obj_map, used) {
            return Some(r);
        }
        used[y] = false;
        obj_map[next] = usize::MAX;
    }
    None
}

fn assign_morphisms(
    a: &FinCategory,
    b: &FinCategory,
    obj_map: &[usize],
    next: usize,
    mor_map: &mut Vec<usize>,
) -> Option<Vec<usize>> {
    if next == a.num_morphisms() {
        return Some(mor_map.clone());
    }
    // Identities are forced.
    if a.is_identity(next) {
        let cand = b.identity_of(obj_map[a.src(next)]);
        if mor_map.contains(&cand) {
            return None;
        }
        mor_map[next] = cand;
        if consistent(a, b, mor_map, next) {
            if let Some(r) = assign_morphisms(a, b, obj_map, next + 1, mor_map) {
                return Some(r);
            }
        }
        mor_map[next] = usize::MAX;
        return None;
    }
    for cand in b.hom(obj_map[a.src(next)], obj_map[a.dst(next)]) {
        if mor_map.contains(&cand) {
            continue;
        }
        mor_map[next] = cand;
        if consistent(a, b, mor_map, next) {
            if let Some(r) = assign_morphisms(a, b, obj_map, next + 1, mor_map) {
                return Some(r);
            }
        }
        mor_map[next] = usize::MAX;
    }
    None
}

/// Checks every composition involving the newly assigned morphism whose
/// operands are all assigned.
fn consistent(a: &FinCategory, b: &FinCategory, mor_map: &[usize], newest: usize) -> bool {
    for g in 0..=newest {
        if mor_map[g] == usize::MAX {
            continue;
        }
        for f in 0..=newest {
            if mor_map[f] == usize::MAX {
                continue;
            }
            if let Some(gf) = a.comp(g, f) {
                let img = b.comp(mor_map[g], mor_map[f]);
                if gf <= newest {
                    if mor_map[gf] != usize::MAX && img != Some(mor_map[gf]) {
                        return false;
                    }
                } else if img.is_none() {
                    return false;
                }
            }
        }
    }
    true
}

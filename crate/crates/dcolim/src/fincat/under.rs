//! Under categories of a functor.

use super::category::{FinCategory, RawCategory};
use super::functor::Functor;
use super::CategoryError;

/// The under category c/F for F: D -> C and c an object of C.
///
/// Objects are pairs (d, f: c -> F d); morphisms are g: d -> d' in D with
/// F(g) ∘ f = f'. Comes with the projection functor to D.
#[derive(Clone, Debug)]
pub struct UnderCategory {
    pub category: FinCategory,
    /// Per object of `category`: (object of D, anchor morphism of C).
    pub objects: Vec<(usize, usize)>,
    /// Per morphism of `category`: the underlying morphism of D.
    pub morphism_underlying: Vec<usize>,
    pub projection: Functor,
}

/// Builds c/F by direct enumeration. Errors if `c` is not an object of the
/// codomain of `F`.
pub fn under_category(c: usize, func: &Functor) -> Result<UnderCategory, CategoryError> {
    let d_cat = func.domain();
    let c_cat = func.codomain();
    if c >= c_cat.num_objects() {
        return Err(CategoryError::UnknownId {
            kind: "object index".into(),
            id: format!("{}", c),
        });
    }
    // Objects: (d, f) with f: c -> F d, in (d, f) index order.
    let mut objects = Vec::new();
    for d in 0..d_cat.num_objects() {
        for f in c_cat.hom(c, func.apply_obj(d)) {
            objects.push((d, f));
        }
    }
    let obj_name = |&(d, f): &(usize, usize)| {
        format!(
            "({}|{})",
            d_cat.object_name(d),
            c_cat.morphism(f).id
        )
    };
    // Morphisms: (g: d -> d', source anchor f) with F(g) ∘ f = f'.
    let mut raw = RawCategory {
        objects: objects.iter().map(obj_name).collect(),
        ..Default::default()
    };
    let obj_pos = |d: usize, f: usize| objects.iter().position(|&p| p == (d, f)).unwrap();
    let mut morphisms: Vec<(usize, usize, usize, usize)> = Vec::new(); // (g, anchor f, src pos, dst pos)
    for (si, &(d, f)) in objects.iter().enumerate() {
        for g in 0..d_cat.num_morphisms() {
            if d_cat.src(g) != d {
                continue;
            }
            let fg = func.apply_mor(g);
            let f2 = c_cat.comp(fg, f).expect("composable by construction");
            let ti = obj_pos(d_cat.dst(g), f2);
            let id = format!("({}|{})", d_cat.morphism(g).id, c_cat.morphism(f).id);
            raw.morphisms.push((
                id,
                raw.objects[si].clone(),
                raw.objects[ti].clone(),
            ));
            morphisms.push((g, f, si, ti));
        }
    }
    for (oi, &(d, _)) in objects.iter().enumerate() {
        let idm = d_cat.identity_of(d);
        let pos = morphisms
            .iter()
            .position(|&(g, _, s, _)| g == idm && s == oi)
            .expect("identity present");
        raw.identities
            .push((raw.objects[oi].clone(), raw.morphisms[pos].0.clone()));
    }
    for (i, &(g2, _f2, s2, _t2)) in morphisms.iter().enumerate() {
        for (j, &(g1, f1, s1, t1)) in morphisms.iter().enumerate() {
            if t1 != s2 {
                continue;
            }
            let g21 = d_cat.comp(g2, g1).expect("composable in D");
            let pos = morphisms
                .iter()
                .position(|&(g, f, s, _)| g == g21 && f == f1 && s == s1)
                .expect("composite present");
            raw.compose.push((
                raw.morphisms[i].0.clone(),
                raw.morphisms[j].0.clone(),
                raw.morphisms[pos].0.clone(),
            ));
        }
    }
    let category = FinCategory::validate(&raw)?;
    let on_obj: Vec<usize> = objects.iter().map(|&(d, _)| d).collect();
    let on_mor: Vec<usize> = morphisms.iter().map(|&(g, _, _, _)| g).collect();
    let projection = Functor::new(category.clone(), d_cat.clone(), on_obj, on_mor)?;
    Ok(UnderCategory {
        category,
        objects,
        morphism_underlying: morphisms.iter().map(|&(g, _, _, _)| g).collect(),
        projection,
    })
}

//! Diagrams of finitely generated abelian groups over a finite category.

use crate::abelian::{AbHom, FgAbGroup};
use crate::fincat::{FinCategory, Functor};

use super::DmodError;

/// Covariant ("left module") or contravariant ("right module").
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variance {
    Left,
    Right,
}

/// A functor from the base to abelian groups. For a left diagram the map of
/// a morphism f goes value(src f) -> value(dst f); for a right diagram it
/// goes value(dst f) -> value(src f).
#[derive(Clone, Debug)]
pub struct Diagram {
    pub base: FinCategory,
    pub variance: Variance,
    pub groups: Vec<FgAbGroup>,
    pub maps: Vec<AbHom>,
}

impl Diagram {
    /// Checks endpoints, identities and the full composition table
    /// (equality of maps up to the target's relations).
    pub fn new(
        base: FinCategory,
        variance: Variance,
        groups: Vec<FgAbGroup>,
        maps: Vec<AbHom>,
    ) -> Result<Diagram, DmodError> {
        if groups.len() != base.num_objects() || maps.len() != base.num_morphisms() {
            return Err(DmodError::Shape(
                "diagram must assign one group per object and one map per morphism".into(),
            ));
        }
        let ends = |m: usize| match variance {
            Variance::Left => (base.src(m), base.dst(m)),
            Variance::Right => (base.dst(m), base.src(m)),
        };
        for m in 0..base.num_morphisms() {
            let (s, t) = ends(m);
            if maps[m].source() != &groups[s] || maps[m].target() != &groups[t] {
                return Err(DmodError::Shape(format!(
                    "map of morphism {} has wrong endpoints",
                    base.morphism(m).id
                )));
            }
        }
        for c in 0..base.num_objects() {
            let idm = base.identity_of(c);
            if !maps[idm].same_map(&AbHom::identity(&groups[c])) {
                return Err(DmodError::NotFunctorial(format!(
                    "identity of object {} does not act as the identity",
                    base.object_name(c)
                )));
            }
        }
        for g in 0..base.num_morphisms() {
            for f in 0..base.num_morphisms() {
                if let Some(gf) = base.comp(g, f) {
                    let comp = match variance {
                        Variance::Left => maps[g].compose(&maps[f])?,
                        Variance::Right => maps[f].compose(&maps[g])?,
                    };
                    if !comp.same_map(&maps[gf]) {
                        return Err(DmodError::NotFunctorial(format!(
                            "composite {} ∘ {} not respected",
                            base.morphism(g).id,
                            base.morphism(f).id
                        )));
                    }
                }
            }
        }
        Ok(Diagram {
            base,
            variance,
            groups,
            maps,
        })
    }

    pub fn value(&self, obj: usize) -> &FgAbGroup {
        &self.groups[obj]
    }

    pub fn map(&self, mor: usize) -> &AbHom {
        &self.maps[mor]
    }
}

/// Every object maps to `g`, every morphism to the identity.
pub fn const_diagram(base: &FinCategory, g: &FgAbGroup, variance: Variance) -> Diagram {
    let groups = vec![g.clone(); base.num_objects()];
    let maps = (0..base.num_morphisms())
        .map(|_| AbHom::identity(g))
        .collect();
    Diagram {
        base: base.clone(),
        variance,
        groups,
        maps,
    }
}

/// Restriction along F: D -> C, (F*M)(d) = M(F d). Variance is preserved.
pub fn restrict(m: &Diagram, f: &Functor) -> Result<Diagram, DmodError> {
    if f.codomain() != &m.base {
        return Err(DmodError::Shape(
            "restriction functor must land in the diagram's base".into(),
        ));
    }
    let d_cat = f.domain().clone();
    let groups = (0..d_cat.num_objects())
        .map(|d| m.groups[f.apply_obj(d)].clone())
        .collect();
    let maps = (0..d_cat.num_morphisms())
        .map(|g| m.maps[f.apply_mor(g)].clone())
        .collect();
    Ok(Diagram {
        base: d_cat,
        variance: m.variance,
        groups,
        maps,
    })
}

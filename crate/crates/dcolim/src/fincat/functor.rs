//! Functors between finite categories.

use super::category::FinCategory;
use super::CategoryError;
use std::collections::HashMap;

/// A functor given by explicit object and morphism maps. Owns copies of its
/// domain and codomain; validated on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Functor {
    dom: FinCategory,
    cod: FinCategory,
    on_obj: Vec<usize>,
    on_mor: Vec<usize>,
}

impl Functor {
    pub fn new(
        dom: FinCategory,
        cod: FinCategory,
        on_obj: Vec<usize>,
        on_mor: Vec<usize>,
    ) -> Result<Functor, CategoryError> {
        if on_obj.len() != dom.num_objects() || on_mor.len() != dom.num_morphisms() {
            return Err(CategoryError::FunctorShape);
        }
        if on_obj.iter().any(|&o| o >= cod.num_objects())
            || on_mor.iter().any(|&m| m >= cod.num_morphisms())
        {
            return Err(CategoryError::FunctorShape);
        }
        let f = Functor {
            dom,
            cod,
            on_obj,
            on_mor,
        };
        f.check()?;
        Ok(f)
    }

    /// From names, as read from files.
    pub fn from_names(
        dom: FinCategory,
        cod: FinCategory,
        on_objects: &[(String, String)],
        on_morphisms: &[(String, String)],
    ) -> Result<Functor, CategoryError> {
        let mut obj_map: HashMap<usize, usize> = HashMap::new();
        for (a, b) in on_objects {
            let ai = dom.object_index(a).ok_or_else(|| CategoryError::UnknownId {
                kind: "object".into(),
                id: a.clone(),
            })?;
            let bi = cod.object_index(b).ok_or_else(|| CategoryError::UnknownId {
                kind: "object".into(),
                id: b.clone(),
            })?;
            obj_map.insert(ai, bi);
        }
        let mut mor_map: HashMap<usize, usize> = HashMap::new();
        for (a, b) in on_morphisms {
            let ai = dom
                .morphism_index(a)
                .ok_or_else(|| CategoryError::UnknownId {
                    kind: "morphism".into(),
                    id: a.clone(),
                })?;
            let bi = cod
                .morphism_index(b)
                .ok_or_else(|| CategoryError::UnknownId {
                    kind: "morphism".into(),
                    id: b.clone(),
                })?;
            mor_map.insert(ai, bi);
        }
        let on_obj = (0..dom.num_objects())
            .map(|i| {
                obj_map
                    .get(&i)
                    .copied()
                    .ok_or_else(|| CategoryError::UnknownId {
                        kind: "object (missing in functor map)".into(),
                        id: dom.object_name(i).to_string(),
                    })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let on_mor = (0..dom.num_morphisms())
            .map(|i| {
                mor_map
                    .get(&i)
                    .copied()
                    .ok_or_else(|| CategoryError::UnknownId {
                        kind: "morphism (missing in functor map)".into(),
                        id: dom.morphism(i).id.clone(),
                    })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Functor::new(dom, cod, on_obj, on_mor)
    }

    fn check(&self) -> Result<(), CategoryError> {
        for m in 0..self.dom.num_morphisms() {
            let fm = self.on_mor[m];
            if self.cod.src(fm) != self.on_obj[self.dom.src(m)]
                || self.cod.dst(fm) != self.on_obj[self.dom.dst(m)]
            {
                return Err(CategoryError::FunctorEndpoints {
                    morphism: self.dom.morphism(m).id.clone(),
                });
            }
        }
        for o in 0..self.dom.num_objects() {
            if self.on_mor[self.dom.identity_of(o)] != self.cod.identity_of(self.on_obj[o]) {
                return Err(CategoryError::FunctorIdentity {
                    object: self.dom.object_name(o).to_string(),
                });
            }
        }
        for g in 0..self.dom.num_morphisms() {
            for f in 0..self.dom.num_morphisms() {
                if let Some(gf) = self.dom.comp(g, f) {
                    let lhs = self.cod.comp(self.on_mor[g], self.on_mor[f]);
                    if lhs != Some(self.on_mor[gf]) {
                        return Err(CategoryError::FunctorComposition {
                            g: self.dom.morphism(g).id.clone(),
                            f: self.dom.morphism(f).id.clone(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn identity(cat: &FinCategory) -> Functor {
        Functor {
            dom: cat.clone(),
            cod: cat.clone(),
            on_obj: (0..cat.num_objects()).collect(),
            on_mor: (0..cat.num_morphisms()).collect(),
        }
    }

    pub fn domain(&self) -> &FinCategory {
        &self.dom
    }

    pub fn codomain(&self) -> &FinCategory {
        &self.cod
    }

    pub fn apply_obj(&self, o: usize) -> usize {
        self.on_obj[o]
    }

    pub fn apply_mor(&self, m: usize) -> usize {
        self.on_mor[m]
    }

    /// self ∘ other.
    pub fn compose(&self, other: &Functor) -> Result<Functor, CategoryError> {
        if other.cod != self.dom {
            return Err(CategoryError::FunctorShape);
        }
        Ok(Functor {
            dom: other.dom.clone(),
            cod: self.cod.clone(),
            on_obj: other.on_obj.iter().map(|&o| self.on_obj[o]).collect(),
            on_mor: other.on_mor.iter().map(|&m| self.on_mor[m]).collect(),
        })
    }

    pub fn injective_on_objects(&self) -> bool {
        let mut seen = vec![false; self.cod.num_objects()];
        for &o in &self.on_obj {
            if seen[o] {
                return false;
            }
            seen[o] = true;
        }
        true
    }

    pub fn is_faithful(&self) -> bool {
        for x in 0..self.dom.num_objects() {
            for y in 0..self.dom.num_objects() {
                let hom = self.dom.hom(x, y);
                let mut images: Vec<usize> = hom.iter().map(|&m| self.on_mor[m]).collect();
                images.sort_unstable();
                images.dedup();
                if images.len() != hom.len() {
                    return false;
                }
            }
        }
        true
    }
}

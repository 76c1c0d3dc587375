//! Finite categories as explicit combinatorial data.

use super::CategoryError;
use std::collections::HashMap;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MorData {
    pub id: String,
    pub src: usize,
    pub dst: usize,
}

/// A finite category: objects and morphisms by index, identities per object
/// and a total composition table on composable pairs.
///
/// Validated on construction; immutable afterwards.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinCategory {
    objects: Vec<String>,
    morphisms: Vec<MorData>,
    identity: Vec<usize>,
    /// compose[g][f] = Some(g∘f) iff src(g) == dst(f).
    compose: Vec<Vec<Option<usize>>>,
}

/// Unvalidated category data, as it arrives from files or builders.
#[derive(Clone, Debug, Default)]
pub struct RawCategory {
    pub objects: Vec<String>,
    /// (id, src object id, dst object id)
    pub morphisms: Vec<(String, String, String)>,
    /// object id -> identity morphism id
    pub identities: Vec<(String, String)>,
    /// (g, f, g∘f) triples, one per composable pair
    pub compose: Vec<(String, String, String)>,
}

impl FinCategory {
    /// Validates the raw data: referential integrity, totality of the
    /// composition table, neutrality of identities and associativity on all
    /// composable triples. Returns a diagnostic naming the violated axiom
    /// and witnesses on failure.
    pub fn validate(raw: &RawCategory) -> Result<FinCategory, CategoryError> {
        let mut obj_idx = HashMap::new();
        for (i, o) in raw.objects.iter().enumerate() {
            if obj_idx.insert(o.clone(), i).is_some() {
                return Err(CategoryError::Duplicate {
                    kind: "object".into(),
                    id: o.clone(),
                });
            }
        }
        let mut mor_idx = HashMap::new();
        let mut morphisms = Vec::new();
        for (i, (id, src, dst)) in raw.morphisms.iter().enumerate() {
            if mor_idx.insert(id.clone(), i).is_some() {
                return Err(CategoryError::Duplicate {
                    kind: "morphism".into(),
                    id: id.clone(),
                });
            }
            let s = *obj_idx.get(src).ok_or_else(|| CategoryError::UnknownId {
                kind: "object".into(),
                id: src.clone(),
            })?;
            let d = *obj_idx.get(dst).ok_or_else(|| CategoryError::UnknownId {
                kind: "object".into(),
                id: dst.clone(),
            })?;
            morphisms.push(MorData {
                id: id.clone(),
                src: s,
                dst: d,
            });
        }
        let n_obj = raw.objects.len();
        let n_mor = morphisms.len();
        // Identity assignment.
        let mut identity = vec![usize::MAX; n_obj];
        for (obj, mor) in &raw.identities {
            let oi = *obj_idx.get(obj).ok_or_else(|| CategoryError::UnknownId {
                kind: "object".into(),
                id: obj.clone(),
            })?;
            let mi = *mor_idx.get(mor).ok_or_else(|| CategoryError::UnknownId {
                kind: "morphism".into(),
                id: mor.clone(),
            })?;
            if morphisms[mi].src != oi || morphisms[mi].dst != oi {
                return Err(CategoryError::BadIdentity {
                    object: obj.clone(),
                    morphism: mor.clone(),
                });
            }
            identity[oi] = mi;
        }
        for (oi, &mi) in identity.iter().enumerate() {
            if mi == usize::MAX {
                return Err(CategoryError::MissingIdentity {
                    object: raw.objects[oi].clone(),
                });
            }
        }
        // Composition table.
        let mut compose = vec![vec![None; n_mor]; n_mor];
        for (g, f, gf) in &raw.compose {
            let gi = *mor_idx.get(g).ok_or_else(|| CategoryError::UnknownId {
                kind: "morphism".into(),
                id: g.clone(),
            })?;
            let fi = *mor_idx.get(f).ok_or_else(|| CategoryError::UnknownId {
                kind: "morphism".into(),
                id: f.clone(),
            })?;
            let gfi = *mor_idx.get(gf).ok_or_else(|| CategoryError::UnknownId {
                kind: "morphism".into(),
                id: gf.clone(),
            })?;
            if morphisms[gi].src != morphisms[fi].dst {
                return Err(CategoryError::NotComposable {
                    g: g.clone(),
                    f: f.clone(),
                });
            }
            if compose[gi][fi].replace(gfi).is_some() {
                return Err(CategoryError::Duplicate {
                    kind: "composition entry".into(),
                    id: format!("{} ∘ {}", g, f),
                });
            }
        }
        let cat = FinCategory {
            objects: raw.objects.clone(),
            morphisms,
            identity,
            compose,
        };
        cat.check_axioms()?;
        Ok(cat)
    }

    fn check_axioms(&self) -> Result<(), CategoryError> {
        let n = self.morphisms.len();
        // Totality and endpoint consistency.
        for g in 0..n {
            for f in 0..n {
                if self.morphisms[g].src == self.morphisms[f].dst {
                    let Some(gf) = self.compose[g][f] else {
                        return Err(CategoryError::MissingComposite {
                            g: self.morphisms[g].id.clone(),
                            f: self.morphisms[f].id.clone(),
                        });
                    };
                    if self.morphisms[gf].src != self.morphisms[f].src
                        || self.morphisms[gf].dst != self.morphisms[g].dst
                    {
                        return Err(CategoryError::EndpointMismatch {
                            g: self.morphisms[g].id.clone(),
                            f: self.morphisms[f].id.clone(),
                            gf: self.morphisms[gf].id.clone(),
                        });
                    }
                } else if self.compose[g][f].is_some() {
                    return Err(CategoryError::NotComposable {
                        g: self.morphisms[g].id.clone(),
                        f: self.morphisms[f].id.clone(),
                    });
                }
            }
        }
        // Identities are neutral.
        for f in 0..n {
            let ids = self.identity[self.morphisms[f].src];
            let idt = self.identity[self.morphisms[f].dst];
            if self.compose[f][ids] != Some(f) || self.compose[idt][f] != Some(f) {
                return Err(CategoryError::IdentityNotNeutral {
                    morphism: self.morphisms[f].id.clone(),
                });
            }
        }
        // Associativity on all composable triples.
        for h in 0..n {
            for g in 0..n {
                if self.morphisms[h].src != self.morphisms[g].dst {
                    continue;
                }
                for f in 0..n {
                    if self.morphisms[g].src != self.morphisms[f].dst {
                        continue;
                    }
                    let hg = self.compose[h][g].unwrap();
                    let gf = self.compose[g][f].unwrap();
                    if self.compose[hg][f] != self.compose[h][gf] {
                        return Err(CategoryError::NotAssociative {
                            h: self.morphisms[h].id.clone(),
                            g: self.morphisms[g].id.clone(),
                            f: self.morphisms[f].id.clone(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn empty() -> FinCategory {
        FinCategory {
            objects: vec![],
            morphisms: vec![],
            identity: vec![],
            compose: vec![],
        }
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn object_name(&self, i: usize) -> &str {
        &self.objects[i]
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn morphism(&self, i: usize) -> &MorData {
        &self.morphisms[i]
    }

    pub fn morphism_index(&self, id: &str) -> Option<usize> {
        self.morphisms.iter().position(|m| m.id == id)
    }

    pub fn src(&self, m: usize) -> usize {
        self.morphisms[m].src
    }

    pub fn dst(&self, m: usize) -> usize {
        self.morphisms[m].dst
    }

    pub fn identity_of(&self, obj: usize) -> usize {
        self.identity[obj]
    }

    pub fn is_identity(&self, m: usize) -> bool {
        self.identity[self.morphisms[m].src] == m
    }

    /// g ∘ f, if composable.
    pub fn comp(&self, g: usize, f: usize) -> Option<usize> {
        self.compose[g][f]
    }

    /// Morphism indices x -> y, in index order.
    pub fn hom(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.morphisms.len())
            .filter(|&m| self.morphisms[m].src == x && self.morphisms[m].dst == y)
            .collect()
    }

    /// The opposite category: same objects and morphism ids, sources and
    /// targets swapped, composition table transposed.
    pub fn opposite(&self) -> FinCategory {
        let morphisms = self
            .morphisms
            .iter()
            .map(|m| MorData {
                id: m.id.clone(),
                src: m.dst,
                dst: m.src,
            })
            .collect();
        let n = self.morphisms.len();
        let mut compose = vec![vec![None; n]; n];
        for g in 0..n {
            for f in 0..n {
                compose[g][f] = self.compose[f][g];
            }
        }
        FinCategory {
            objects: self.objects.clone(),
            morphisms,
            identity: self.identity.clone(),
            compose,
        }
    }

    /// Connected components of the underlying undirected morphism graph:
    /// a partition of object indices, components sorted by least member.
    pub fn pi0(&self) -> Vec<Vec<usize>> {
        let n = self.objects.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut Vec<usize>, x: usize) -> usize {
            if parent[x] != x {
                let r = find(parent, parent[x]);
                parent[x] = r;
            }
            parent[x]
        }
        for m in &self.morphisms {
            let a = find(&mut parent, m.src);
            let b = find(&mut parent, m.dst);
            parent[a] = b;
        }
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut root_to_group: HashMap<usize, usize> = HashMap::new();
        for x in 0..n {
            let r = find(&mut parent, x);
            let gi = *root_to_group.entry(r).or_insert_with(|| {
                groups.push(Vec::new());
                groups.len() - 1
            });
            groups[gi].push(x);
        }
        groups
    }

    /// Every morphism invertible?
    pub fn is_groupoid(&self) -> bool {
        (0..self.morphisms.len()).all(|m| {
            let (s, d) = (self.morphisms[m].src, self.morphisms[m].dst);
            self.hom(d, s).iter().any(|&inv| {
                self.compose[inv][m] == Some(self.identity[s])
                    && self.compose[m][inv] == Some(self.identity[d])
            })
        })
    }

    /// Is `c` initial: exactly one morphism from `c` to every object?
    pub fn is_initial(&self, c: usize) -> bool {
        (0..self.objects.len()).all(|y| self.hom(c, y).len() == 1)
    }

    /// Raw view, for serialization.
    pub fn to_raw(&self) -> RawCategory {
        RawCategory {
            objects: self.objects.clone(),
            morphisms: self
                .morphisms
                .iter()
                .map(|m| {
                    (
                        m.id.clone(),
                        self.objects[m.src].clone(),
                        self.objects[m.dst].clone(),
                    )
                })
                .collect(),
            identities: self
                .identity
                .iter()
                .enumerate()
                .map(|(o, &m)| (self.objects[o].clone(), self.morphisms[m].id.clone()))
                .collect(),
            compose: {
                let mut out = Vec::new();
                for g in 0..self.morphisms.len() {
                    for f in 0..self.morphisms.len() {
                        if let Some(gf) = self.compose[g][f] {
                            out.push((
                                self.morphisms[g].id.clone(),
                                self.morphisms[f].id.clone(),
                                self.morphisms[gf].id.clone(),
                            ));
                        }
                    }
                }
                out
            },
        }
    }
}

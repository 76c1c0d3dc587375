//! Builders for the bundled example categories, functors and diagrams.

use crate::fincat::{CategoryError, FinCategory, Functor, RawCategory};

/// One-object category with morphisms Z/n (n >= 1); morphism ids "g0" (the
/// identity) through "g{n-1}".
pub fn cyclic_group(n: u64) -> FinCategory {
    assert!(n >= 1);
    let obj = "*".to_string();
    let mut raw = RawCategory {
        objects: vec![obj.clone()],
        ..Default::default()
    };
    for i in 0..n {
        raw.morphisms
            .push((format!("g{}", i), obj.clone(), obj.clone()));
    }
    raw.identities.push((obj, "g0".into()));
    for i in 0..n {
        for j in 0..n {
            raw.compose.push((
                format!("g{}", i),
                format!("g{}", j),
                format!("g{}", (i + j) % n),
            ));
        }
    }
    FinCategory::validate(&raw).expect("cyclic group is a category")
}

/// One-object category from a monoid multiplication table: table[i][j] is
/// the index of element i*j, element 0 must be the unit.
pub fn monoid_category(table: &[Vec<usize>]) -> Result<FinCategory, CategoryError> {
    let n = table.len();
    let obj = "*".to_string();
    let mut raw = RawCategory {
        objects: vec![obj.clone()],
        ..Default::default()
    };
    for i in 0..n {
        raw.morphisms
            .push((format!("m{}", i), obj.clone(), obj.clone()));
    }
    raw.identities.push((obj, "m0".into()));
    for i in 0..n {
        for j in 0..n {
            raw.compose.push((
                format!("m{}", i),
                format!("m{}", j),
                format!("m{}", table[i][j]),
            ));
        }
    }
    FinCategory::validate(&raw)
}

/// Poset category from object names and a strict order given as pairs
/// (x, y) meaning x < y; the relation is transitively closed here. At most
/// one morphism between any two objects, named "x<y"; identities "id_x".
pub fn poset_category(objects: &[&str], less: &[(usize, usize)]) -> FinCategory {
    let n = objects.len();
    let mut rel = vec![vec![false; n]; n];
    for &(a, b) in less {
        rel[a][b] = true;
    }
    // Transitive closure.
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if rel[i][k] && rel[k][j] {
                    rel[i][j] = true;
                }
            }
        }
    }
    for (i, row) in rel.iter().enumerate() {
        assert!(!row[i], "poset relation must be acyclic");
    }
    let mor_name = |i: usize, j: usize| {
        if i == j {
            format!("id_{}", objects[i])
        } else {
            format!("{}<{}", objects[i], objects[j])
        }
    };
    let mut raw = RawCategory {
        objects: objects.iter().map(|s| s.to_string()).collect(),
        ..Default::default()
    };
    let mut arrows = Vec::new();
    for i in 0..n {
        arrows.push((i, i));
        raw.morphisms
            .push((mor_name(i, i), objects[i].into(), objects[i].into()));
    }
    for i in 0..n {
        for j in 0..n {
            if rel[i][j] {
                arrows.push((i, j));
                raw.morphisms
                    .push((mor_name(i, j), objects[i].into(), objects[j].into()));
            }
        }
    }
    for i in 0..n {
        raw.identities.push((objects[i].into(), mor_name(i, i)));
    }
    for &(a, b) in &arrows {
        for &(c, d) in &arrows {
            if b == c {
                raw.compose
                    .push((mor_name(c, d), mor_name(a, b), mor_name(a, d)));
            }
        }
    }
    FinCategory::validate(&raw).expect("poset is a category")
}

/// Discrete category on n objects named "x0".."x{n-1}".
pub fn discrete(n: usize) -> FinCategory {
    let names: Vec<String> = (0..n).map(|i| format!("x{}", i)).collect();
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    poset_category(&refs, &[])
}

/// Chain poset x0 < x1 < ... < x{n-1}.
pub fn chain(n: usize) -> FinCategory {
    let names: Vec<String> = (0..n).map(|i| format!("x{}", i)).collect();
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let less: Vec<(usize, usize)> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
    poset_category(&refs, &less)
}

/// Span poset a <- c -> b.
pub fn span() -> FinCategory {
    poset_category(&["c", "a", "b"], &[(0, 1), (0, 2)])
}

/// Contractible groupoid on n objects (exactly one morphism between any
/// ordered pair).
pub fn contractible_groupoid(n: usize, prefix: &str) -> FinCategory {
    let objects: Vec<String> = (0..n).map(|i| format!("{}{}", prefix, i)).collect();
    let mor = |i: usize, j: usize| format!("e{}_{}", i, j);
    let mut raw = RawCategory {
        objects: objects.clone(),
        ..Default::default()
    };
    for i in 0..n {
        for j in 0..n {
            raw.morphisms
                .push((mor(i, j), objects[i].clone(), objects[j].clone()));
        }
    }
    for (i, o) in objects.iter().enumerate() {
        raw.identities.push((o.clone(), mor(i, i)));
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                raw.compose.push((mor(j, k), mor(i, j), mor(i, k)));
            }
        }
    }
    FinCategory::validate(&raw).expect("contractible groupoid is a category")
}

/// Adjoins a disjoint initial object named `name`: unique morphism
/// "init_{x}" from it to every existing object.
pub fn adjoin_initial(cat: &FinCategory, name: &str) -> FinCategory {
    let mut raw = cat.to_raw();
    let old_objects = raw.objects.clone();
    raw.objects.insert(0, name.to_string());
    let arrow = |x: &str| format!("init_{}", x);
    raw.morphisms
        .push((format!("id_{}", name), name.into(), name.into()));
    raw.identities
        .push((name.to_string(), format!("id_{}", name)));
    for x in &old_objects {
        raw.morphisms.push((arrow(x), name.into(), x.clone()));
    }
    // f ∘ init_x = init_{dst f}; init_x ∘ id = init_x; id ∘ ... handled by
    // the identity row below.
    let olds: Vec<(String, String, String)> = cat
        .to_raw()
        .morphisms
        .clone();
    for (f, src, dst) in &olds {
        let _ = src;
        raw.compose
            .push((f.clone(), arrow(&cat_src_name(cat, f)), arrow(dst)));
    }
    for x in &old_objects {
        raw.compose.push((
            arrow(x),
            format!("id_{}", name),
            arrow(x),
        ));
    }
    raw.compose.push((
        format!("id_{}", name),
        format!("id_{}", name),
        format!("id_{}", name),
    ));
    FinCategory::validate(&raw).expect("adjoining an initial object preserves the axioms")
}

/// Adjoins a disjoint terminal object named `name`: unique morphism
/// "term_{x}" from every existing object to it.
pub fn adjoin_terminal(cat: &FinCategory, name: &str) -> FinCategory {
    let mut raw = cat.to_raw();
    let old_objects = raw.objects.clone();
    raw.objects.push(name.to_string());
    let arrow = |x: &str| format!("term_{}", x);
    raw.morphisms
        .push((format!("id_{}", name), name.into(), name.into()));
    raw.identities
        .push((name.to_string(), format!("id_{}", name)));
    for x in &old_objects {
        raw.morphisms.push((arrow(x), x.clone(), name.into()));
    }
    let olds: Vec<(String, String, String)> = cat.to_raw().morphisms.clone();
    for (f, src, dst) in &olds {
        // term_{dst f} ∘ f = term_{src f}
        raw.compose.push((arrow(dst), f.clone(), arrow(src)));
    }
    for x in &old_objects {
        raw.compose
            .push((format!("id_{}", name), arrow(x), arrow(x)));
    }
    raw.compose.push((
        format!("id_{}", name),
        format!("id_{}", name),
        format!("id_{}", name),
    ));
    FinCategory::validate(&raw).expect("adjoining a terminal object preserves the axioms")
}

fn cat_src_name(cat: &FinCategory, mor_id: &str) -> String {
    let m = cat.morphism_index(mor_id).unwrap();
    cat.object_name(cat.src(m)).to_string()
}

/// Disjoint union; object and morphism ids are prefixed "A." and "B." to
/// avoid collisions.
pub fn disjoint_union(a: &FinCategory, b: &FinCategory) -> FinCategory {
    let ra = a.to_raw();
    let rb = b.to_raw();
    let pa = |s: &str| format!("A.{}", s);
    let pb = |s: &str| format!("B.{}", s);
    let mut raw = RawCategory::default();
    raw.objects.extend(ra.objects.iter().map(|s| pa(s)));
    raw.objects.extend(rb.objects.iter().map(|s| pb(s)));
    for (m, s, d) in &ra.morphisms {
        raw.morphisms.push((pa(m), pa(s), pa(d)));
    }
    for (m, s, d) in &rb.morphisms {
        raw.morphisms.push((pb(m), pb(s), pb(d)));
    }
    for (o, m) in &ra.identities {
        raw.identities.push((pa(o), pa(m)));
    }
    for (o, m) in &rb.identities {
        raw.identities.push((pb(o), pb(m)));
    }
    for (g, f, gf) in &ra.compose {
        raw.compose.push((pa(g), pa(f), pa(gf)));
    }
    for (g, f, gf) in &rb.compose {
        raw.compose.push((pb(g), pb(f), pb(gf)));
    }
    FinCategory::validate(&raw).expect("disjoint union is a category")
}

/// Inclusion functor of a full subcategory determined by an object-name
/// predicate; panics unless the selected objects are closed under the
/// relevant morphisms.
pub fn full_subcategory_inclusion(
    cat: &FinCategory,
    keep: impl Fn(&str) -> bool,
) -> (FinCategory, Functor) {
    let raw = cat.to_raw();
    let kept_objs: Vec<String> = raw
        .objects
        .iter()
        .filter(|o| keep(o))
        .cloned()
        .collect();
    let keep_obj = |name: &str| kept_objs.iter().any(|o| o == name);
    let mut sub = RawCategory {
        objects: kept_objs.clone(),
        ..Default::default()
    };
    for (m, s, d) in &raw.morphisms {
        if keep_obj(s) && keep_obj(d) {
            sub.morphisms.push((m.clone(), s.clone(), d.clone()));
        }
    }
    for (o, m) in &raw.identities {
        if keep_obj(o) {
            sub.identities.push((o.clone(), m.clone()));
        }
    }
    let sub_mor = |name: &str| sub.morphisms.iter().any(|(m, _, _)| m == name);
    for (g, f, gf) in &raw.compose {
        if sub_mor(g) && sub_mor(f) {
            assert!(sub_mor(gf), "selected objects are not morphism-closed");
            sub.compose.push((g.clone(), f.clone(), gf.clone()));
        }
    }
    let subcat = FinCategory::validate(&sub).expect("full subcategory is a category");
    let on_objects: Vec<(String, String)> = kept_objs
        .iter()
        .map(|o| (o.clone(), o.clone()))
        .collect();
    let on_morphisms: Vec<(String, String)> = sub
        .morphisms
        .iter()
        .map(|(m, _, _)| (m.clone(), m.clone()))
        .collect();
    let inc = Functor::from_names(subcat.clone(), cat.clone(), &on_objects, &on_morphisms)
        .expect("inclusion is a functor");
    (subcat, inc)
}

/// The counter-example stand-in legs: C0 a one-object group category,
/// C1 = C0 with a disjoint initial object "0", C2 = C0 with a disjoint
/// terminal object "1", with the two inclusions C0 -> C1, C0 -> C2.
pub fn standin_legs(c0: &FinCategory) -> (Functor, Functor) {
    let c1 = adjoin_initial(c0, "0");
    let c2 = adjoin_terminal(c0, "1");
    let raw0 = c0.to_raw();
    let on_objects: Vec<(String, String)> = raw0
        .objects
        .iter()
        .map(|o| (o.clone(), o.clone()))
        .collect();
    let on_morphisms: Vec<(String, String)> = raw0
        .morphisms
        .iter()
        .map(|(m, _, _)| (m.clone(), m.clone()))
        .collect();
    let f1 = Functor::from_names(c0.clone(), c1, &on_objects, &on_morphisms)
        .expect("inclusion into C1");
    let f2 = Functor::from_names(c0.clone(), c2, &on_objects, &on_morphisms)
        .expect("inclusion into C2");
    (f1, f2)
}

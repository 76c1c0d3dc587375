//! Diagrams of finitely generated abelian groups over finite categories,
//! their bar and cobar complexes, derived colimits and limits, induced
//! maps, left Kan extensions and nerve homology.

pub mod bar;
pub mod cobar;
pub mod complex;
pub mod diagram;
pub mod kan;
pub mod nerve;

pub use bar::{
    bar_complex, derived_colim, enumerate_chains, induced_map, induced_matrices,
    induced_on_homology_graded, BarChain, BarComplex, InducedMap,
};
pub use cobar::{
    cobar_complex, cobar_restriction, cobar_restriction_maps, derived_lim, CobarComplex,
    CobarRestriction,
};
pub use complex::{
    cone, ChainMap, FreeComplex, GradedAbGroup, Orientation, PresentedComplex,
};
pub use diagram::{const_diagram, restrict, Diagram, Variance};
pub use kan::{
    colim_direct, left_kan, lim_direct, relative_derived_colim, relative_nerve_complex,
    tensor_over_category, tensor_presentation, TensorPresentation,
};
pub use nerve::{nerve_complex, nerve_homology};

#[derive(Debug, thiserror::Error)]
pub enum DmodError {
    #[error("shape error: {0}")]
    Shape(String),
    #[error("variance mismatch: {0}")]
    Variance(String),
    #[error("diagram is not functorial: {0}")]
    NotFunctorial(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error(transparent)]
    Abelian(#[from] crate::abelian::AbelianError),
    #[error(transparent)]
    Category(#[from] crate::fincat::CategoryError),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::FgAbGroup;
    use crate::corpus;
    use crate::fincat::Functor;

    fn const_z(base: &crate::fincat::FinCategory, variance: Variance) -> Diagram {
        const_diagram(base, &FgAbGroup::free(1), variance)
    }

    fn nf(g: &FgAbGroup) -> String {
        format!("{}", g.normal_form())
    }

    #[test]
    fn bar_of_point() {
        let pt = corpus::discrete(1);
        let h = derived_colim(&const_z(&pt, Variance::Left), 3).unwrap();
        assert_eq!(format!("{}", h), "0: Z, 1: 0, 2: 0, 3: 0");
    }

    #[test]
    fn bar_of_z2_const_z() {
        // Group homology of Z/2: Z, Z/2, 0, Z/2, 0, Z/2, ...
        let c = corpus::cyclic_group(2);
        let m = const_z(&c, Variance::Left);
        let bar = bar_complex(&m, 3, true).unwrap();
        // Normalized: exactly one chain (g1,...,g1) per degree, rank 1 each.
        assert_eq!(bar.complex.dims, vec![1, 1, 1, 1, 1]);
        let h = bar.complex.graded_homology(3).unwrap();
        assert_eq!(format!("{}", h), "0: Z, 1: Z/2, 2: 0, 3: Z/2");
    }

    #[test]
    fn bar_of_z3_const_z() {
        let c = corpus::cyclic_group(3);
        let h = derived_colim(&const_z(&c, Variance::Left), 3).unwrap();
        assert_eq!(format!("{}", h), "0: Z, 1: Z/3, 2: 0, 3: Z/3");
    }

    #[test]
    fn bar_of_standin_leg_is_contractible() {
        // Z/2 with a disjoint initial object has contractible nerve.
        let c1 = corpus::adjoin_initial(&corpus::cyclic_group(2), "0");
        let h = derived_colim(&const_z(&c1, Variance::Left), 3).unwrap();
        assert!(h.is_discrete(1));
        let c2 = corpus::adjoin_terminal(&corpus::cyclic_group(2), "1");
        let h = derived_colim(&const_z(&c2, Variance::Left), 3).unwrap();
        assert!(h.is_discrete(1));
    }

    #[test]
    fn torsion_coefficients() {
        // H_*(Z/2; Z/2) with trivial action is Z/2 in every degree.
        let c = corpus::cyclic_group(2);
        let m = const_diagram(&c, &FgAbGroup::cyclic(2), Variance::Left);
        let h = derived_colim(&m, 3).unwrap();
        assert_eq!(format!("{}", h), "0: Z/2, 1: Z/2, 2: Z/2, 3: Z/2");
    }

    #[test]
    fn unnormalized_matches_normalized() {
        for cat in [corpus::cyclic_group(2), corpus::span(), corpus::chain(2)] {
            let m = const_z(&cat, Variance::Left);
            let a = bar_complex(&m, 2, true).unwrap().complex.graded_homology(2).unwrap();
            let b = bar_complex(&m, 2, false).unwrap().complex.graded_homology(2).unwrap();
            assert!(a.isomorphic(&b), "{} vs {}", a, b);
        }
    }

    #[test]
    fn degree_zero_is_the_colimit() {
        // Non-constant diagram over the span: Z <-x2- Z -x3-> Z.
        let s = corpus::span();
        let z = FgAbGroup::free(1);
        let groups = vec![z.clone(), z.clone(), z.clone()];
        let mut maps = Vec::new();
        for m in 0..s.num_morphisms() {
            let id = &s.morphism(m).id;
            let k: i64 = match id.as_str() {
                "c<a" => 2,
                "c<b" => 3,
                _ => 1,
            };
            maps.push(crate::abelian::hom::free_hom(&[vec![k]], 1));
        }
        let d = Diagram::new(s, Variance::Left, groups, maps).unwrap();
        let h = derived_colim(&d, 2).unwrap();
        let direct = colim_direct(&d).unwrap();
        assert!(h.values[0].isomorphic(&direct));
        assert_eq!(nf(&direct), "Z");
        assert!(h.values[1].is_trivial());
    }

    #[test]
    fn cobar_oracles() {
        let pt = corpus::discrete(1);
        let h = derived_lim(&const_z(&pt, Variance::Right), 2).unwrap();
        assert_eq!(format!("{}", h), "0: Z, 1: 0, 2: 0");

        let d2 = corpus::discrete(2);
        let h = derived_lim(&const_z(&d2, Variance::Right), 1).unwrap();
        assert_eq!(nf(&h.values[0]), "Z^2");
        assert!(h.values[1].is_trivial());

        // Group cohomology of Z/2 with Z coefficients: Z, 0, Z/2, 0, Z/2.
        let c = corpus::cyclic_group(2);
        let h = derived_lim(&const_z(&c, Variance::Right), 3).unwrap();
        assert_eq!(format!("{}", h), "0: Z, 1: 0, 2: Z/2, 3: 0");
    }

    #[test]
    fn lim_degree_zero_is_the_limit() {
        let c = corpus::cyclic_group(2);
        let l = const_z(&c, Variance::Right);
        let direct = lim_direct(&l).unwrap();
        let h = derived_lim(&l, 1).unwrap();
        assert!(h.values[0].isomorphic(&direct));

        let d2 = corpus::discrete(2);
        let l2 = const_z(&d2, Variance::Right);
        assert_eq!(nf(&lim_direct(&l2).unwrap()), "Z^2");
    }

    #[test]
    fn nerve_matches_bar_of_const_z() {
        let cats = [
            corpus::cyclic_group(2),
            corpus::cyclic_group(3),
            corpus::span(),
            corpus::chain(3),
            corpus::adjoin_initial(&corpus::cyclic_group(2), "0"),
            corpus::disjoint_union(&corpus::span(), &corpus::cyclic_group(2)),
        ];
        for cat in cats {
            let a = nerve_homology(&cat, 2).unwrap();
            let b = derived_colim(&const_z(&cat, Variance::Left), 2).unwrap();
            assert!(a.isomorphic(&b), "nerve {} vs bar {}", a, b);
        }
        // Terminal object: point homology.
        let t = corpus::adjoin_terminal(&corpus::span(), "top");
        assert!(nerve_homology(&t, 3).unwrap().is_discrete(1));
        // Disconnected: H0 counts components.
        let u = corpus::disjoint_union(&corpus::chain(2), &corpus::chain(2));
        assert!(nerve_homology(&u, 2).unwrap().is_discrete(2));
    }

    #[test]
    fn tensor_basics() {
        let pt = corpus::discrete(1);
        let l = const_z(&pt, Variance::Right);
        let m = const_diagram(&pt, &FgAbGroup::cyclic(2), Variance::Left);
        let t = tensor_over_category(&l, &m).unwrap();
        assert_eq!(nf(&t), "Z/2");

        // const Z ⊗ M is the colimit of M.
        let c = corpus::cyclic_group(2);
        let m = const_diagram(&c, &FgAbGroup::cyclic(4), Variance::Left);
        let t = tensor_over_category(&const_z(&c, Variance::Right), &m).unwrap();
        assert!(t.isomorphic(&colim_direct(&m).unwrap()));
    }

    #[test]
    fn left_kan_of_point_inclusion() {
        // D = point mapping to object "a" of the span; L = Z. The Kan
        // extension at c is free on Hom(c, a).
        let s = corpus::span();
        let pt = corpus::discrete(1);
        let f = Functor::from_names(
            pt.clone(),
            s.clone(),
            &[("x0".into(), "a".into())],
            &[("id_x0".into(), "id_a".into())],
        )
        .unwrap();
        let l = const_z(&pt, Variance::Right);
        let k = left_kan(&l, &f).unwrap();
        for c in 0..s.num_objects() {
            let expect = s.hom(c, s.object_index("a").unwrap()).len();
            assert_eq!(
                k.value(c).normal_form().rank,
                expect,
                "at object {}",
                s.object_name(c)
            );
            assert!(k.value(c).normal_form().torsion.is_empty());
        }
    }

    #[test]
    fn lemma1_instances() {
        // F_!L ⊗_C M is isomorphic to L ⊗_D F*M.
        let cases: Vec<(Functor, FgAbGroup, FgAbGroup)> = vec![
            (
                corpus::standin_legs(&corpus::cyclic_group(2)).0,
                FgAbGroup::free(1),
                FgAbGroup::cyclic(4),
            ),
            (
                {
                    let pt = corpus::discrete(1);
                    Functor::from_names(
                        pt,
                        corpus::span(),
                        &[("x0".into(), "c".into())],
                        &[("id_x0".into(), "id_c".into())],
                    )
                    .unwrap()
                },
                FgAbGroup::cyclic(6),
                FgAbGroup::free(2),
            ),
        ];
        for (f, lg, mg) in cases {
            let l = const_diagram(f.domain(), &lg, Variance::Right);
            let m = const_diagram(f.codomain(), &mg, Variance::Left);
            let lhs = tensor_over_category(&left_kan(&l, &f).unwrap(), &m).unwrap();
            let rhs = tensor_over_category(&l, &restrict(&m, &f).unwrap()).unwrap();
            assert!(lhs.isomorphic(&rhs), "{} vs {}", nf(&lhs), nf(&rhs));
        }
    }

    #[test]
    fn lemma2_instances() {
        // Homology of the relative-nerve tensor complex equals the derived
        // colimits of the restricted diagram.
        let (f1, f2) = corpus::standin_legs(&corpus::cyclic_group(2));
        for f in [f1, f2, Functor::identity(&corpus::span())] {
            let m = const_z(f.codomain(), Variance::Left);
            let a = relative_derived_colim(&f, &m, 2).unwrap();
            let b = derived_colim(&restrict(&m, &f).unwrap(), 2).unwrap();
            assert!(a.isomorphic(&b), "{} vs {}", a, b);
        }
    }

    #[test]
    fn induced_map_cases() {
        // Identity functor induces the identity on homology.
        let c = corpus::cyclic_group(2);
        let m = const_z(&c, Variance::Left);
        let im = induced_map(&Functor::identity(&c), &m, 2).unwrap();
        for h in induced_on_homology_graded(&im, 2).unwrap() {
            assert!(h.same_map(&crate::abelian::AbHom::identity(h.source())));
        }

        // C0 into C1 (contractible): in degree 1, Z/2 maps to 0.
        let (f1, _) = corpus::standin_legs(&c);
        let m1 = const_z(f1.codomain(), Variance::Left);
        let im = induced_map(&f1, &m1, 2).unwrap();
        let maps = induced_on_homology_graded(&im, 2).unwrap();
        assert_eq!(nf(maps[1].source()), "Z/2");
        assert!(maps[1].target().is_trivial());
    }

    #[test]
    fn restriction_basics() {
        let c = corpus::span();
        let m = const_z(&c, Variance::Left);
        let r = restrict(&m, &Functor::identity(&c)).unwrap();
        assert_eq!(r.groups.len(), 3);
        let (f1, _) = corpus::standin_legs(&corpus::cyclic_group(2));
        let m1 = const_z(f1.codomain(), Variance::Left);
        let r = restrict(&m1, &f1).unwrap();
        assert_eq!(r.base.num_objects(), 1);
        assert_eq!(nf(&r.groups[0]), "Z");
    }
}

//! Local-covering and covering checkers for functors between finite
//! categories, with explicit certificate strength.

use crate::abelian::FgAbGroup;
use crate::dmod::nerve_homology;
use crate::fincat::{under_category, FinCategory, Functor};

use super::MvError;

/// Structural rule that certifies homotopy discreteness of an under
/// category.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertificateKind {
    /// Every connected component has an initial object.
    InitialObjectPerComponent,
    /// The under category is a groupoid with trivial automorphism groups.
    GroupoidTrivialAutomorphisms,
    /// The functor is faithful and both categories are groupoids.
    FaithfulGroupoidFunctor,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pi1Probe {
    Trivial,
    Inconclusive,
    NontrivialAbelianization,
}

/// Per object of the codomain: what is known about c/F.
#[derive(Clone, Debug)]
pub struct ObjectRecord {
    pub object: usize,
    pub object_name: String,
    pub certificate: Option<CertificateKind>,
    /// Reduced homology of N(c/F) in degrees 1..=N.
    pub reduced_homology: Vec<FgAbGroup>,
    pub pi1: Pi1Probe,
    /// First degree 1..=N with nonvanishing reduced homology, if any.
    pub failure: Option<(usize, FgAbGroup)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerdictKind {
    /// Every object carries a structural certificate.
    Certified,
    /// All reduced homology vanishes but no structural rule applies
    /// everywhere; homotopy discreteness remains unproven.
    HomologyConsistent,
    /// Some under category has nonvanishing reduced homology.
    Failed,
}

#[derive(Clone, Debug)]
pub struct LocalCoveringVerdict {
    pub kind: VerdictKind,
    pub degree: usize,
    pub records: Vec<ObjectRecord>,
}

impl LocalCoveringVerdict {
    pub fn passed(&self) -> bool {
        self.kind != VerdictKind::Failed
    }
}

/// True when every component of `cat` contains an initial object of that
/// component.
fn initial_per_component(cat: &FinCategory) -> bool {
    cat.pi0().iter().all(|comp| {
        comp.iter()
            .any(|&x| comp.iter().all(|&y| cat.hom(x, y).len() == 1))
    })
}

fn groupoid_trivial_autos(cat: &FinCategory) -> bool {
    cat.is_groupoid() && (0..cat.num_objects()).all(|x| cat.hom(x, x).len() == 1)
}

/// Checks the local-covering condition for F through homological degree N,
/// object by object. Structural certificates are tried first; only then is
/// the (necessary, not sufficient) homology test consulted.
pub fn local_covering_check(f: &Functor, n: usize) -> Result<LocalCoveringVerdict, MvError> {
    let global_rule =
        f.is_faithful() && f.domain().is_groupoid() && f.codomain().is_groupoid();
    let mut records = Vec::new();
    let mut all_certified = true;
    let mut any_failed = false;
    for c in 0..f.codomain().num_objects() {
        let under = under_category(c, f)?;
        let certificate = if initial_per_component(&under.category) {
            Some(CertificateKind::InitialObjectPerComponent)
        } else if groupoid_trivial_autos(&under.category) {
            Some(CertificateKind::GroupoidTrivialAutomorphisms)
        } else if global_rule {
            Some(CertificateKind::FaithfulGroupoidFunctor)
        } else {
            None
        };
        let h = nerve_homology(&under.category, n)?;
        let reduced: Vec<FgAbGroup> = h.values[1..].to_vec();
        let failure = reduced
            .iter()
            .enumerate()
            .find(|(_, g)| !g.is_trivial())
            .map(|(i, g)| (i + 1, g.clone()));
        let pi1 = if certificate.is_some() {
            Pi1Probe::Trivial
        } else if !reduced[0].is_trivial() {
            Pi1Probe::NontrivialAbelianization
        } else {
            // Vanishing abelianization alone does not settle pi_1.
            Pi1Probe::Inconclusive
        };
        if certificate.is_none() {
            all_certified = false;
        }
        if failure.is_some() && certificate.is_none() {
            any_failed = true;
        }
        records.push(ObjectRecord {
            object: c,
            object_name: f.codomain().object_name(c).to_string(),
            certificate,
            reduced_homology: reduced,
            pi1,
            failure,
        });
    }
    let kind = if any_failed {
        VerdictKind::Failed
    } else if all_certified {
        VerdictKind::Certified
    } else {
        VerdictKind::HomologyConsistent
    };
    Ok(LocalCoveringVerdict {
        kind,
        degree: n,
        records,
    })
}

#[derive(Clone, Debug)]
pub enum CoveringVerdict {
    Covering {
        local: LocalCoveringVerdict,
    },
    /// An arrow whose induced functor on under categories is not bijective
    /// on components.
    NotCovering {
        local: LocalCoveringVerdict,
        arrow: String,
    },
    LocalCoveringFailed {
        local: LocalCoveringVerdict,
    },
}

impl CoveringVerdict {
    pub fn is_covering(&self) -> bool {
        matches!(self, CoveringVerdict::Covering { .. })
    }
}

/// Covering check: local covering plus, for every arrow h: c' -> c of the
/// codomain, bijectivity on components of the functor c/F -> c'/F given by
/// precomposing anchors with h.
pub fn covering_check(f: &Functor, n: usize) -> Result<CoveringVerdict, MvError> {
    let local = local_covering_check(f, n)?;
    if !local.passed() {
        return Ok(CoveringVerdict::LocalCoveringFailed { local });
    }
    let cod = f.codomain();
    let unders: Vec<_> = (0..cod.num_objects())
        .map(|c| under_category(c, f))
        .collect::<Result<Vec<_>, _>>()?;
    for h in 0..cod.num_morphisms() {
        let (c2, c) = (cod.src(h), cod.dst(h));
        let uc = &unders[c];
        let uc2 = &unders[c2];
        let comps_c = uc.category.pi0();
        let comps_c2 = uc2.category.pi0();
        let comp_of = |cat_objs: &[Vec<usize>], x: usize| {
            cat_objs.iter().position(|comp| comp.contains(&x)).unwrap()
        };
        // Image of each component of c/F under anchor precomposition.
        let mut image = vec![None; comps_c.len()];
        for (j, comp) in comps_c.iter().enumerate() {
            let &x = comp.first().unwrap();
            let (d, anchor) = uc.objects[x];
            let new_anchor = cod.comp(anchor, h).expect("composable by endpoints");
            let y = uc2
                .objects
                .iter()
                .position(|&o| o == (d, new_anchor))
                .expect("precomposed anchor is an object of the under category");
            image[j] = Some(comp_of(&comps_c2, y));
        }
        let mut seen = vec![false; comps_c2.len()];
        let mut bijective = comps_c.len() == comps_c2.len();
        for img in image.into_iter().flatten() {
            if seen[img] {
                bijective = false;
            }
            seen[img] = true;
        }
        bijective &= seen.iter().all(|&s| s);
        if !bijective {
            return Ok(CoveringVerdict::NotCovering {
                local,
                arrow: cod.morphism(h).id.clone(),
            });
        }
    }
    Ok(CoveringVerdict::Covering { local })
}

/// Hypothesis report for the Mayer-Vietoris statement on a pushout square.
#[derive(Clone, Debug)]
pub struct Theorem1Checklist {
    pub f1_injective_on_objects: bool,
    pub f2_injective_on_objects: bool,
    pub i1: LocalCoveringVerdict,
    pub i2: LocalCoveringVerdict,
    pub i0: LocalCoveringVerdict,
    /// Conjunction of the hypotheses (with homology-consistent verdicts
    /// accepted as unproven-but-unrefuted).
    pub holds: bool,
    /// True when every local-covering verdict is structurally certified.
    pub certificates_structural: bool,
}

pub fn theorem1_hypotheses(
    square: &crate::fincat::PushoutSquare,
    n: usize,
) -> Result<Theorem1Checklist, MvError> {
    let i0 = square.i0();
    let v1 = local_covering_check(&square.i1, n)?;
    let v2 = local_covering_check(&square.i2, n)?;
    let v0 = local_covering_check(&i0, n)?;
    let inj1 = square.f1.injective_on_objects();
    let inj2 = square.f2.injective_on_objects();
    let holds = (inj1 || inj2) && v1.passed() && v2.passed() && v0.passed();
    let certificates_structural = [&v1, &v2, &v0]
        .iter()
        .all(|v| v.kind == VerdictKind::Certified);
    Ok(Theorem1Checklist {
        f1_injective_on_objects: inj1,
        f2_injective_on_objects: inj2,
        i1: v1,
        i2: v2,
        i0: v0,
        holds,
        certificates_structural,
    })
}

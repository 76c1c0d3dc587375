//! Pushouts of finite categories by bounded congruence closure.
//!
//! Morphisms of the pushout are represented by alternating words over the
//! morphisms of the two legs, glued along the common subcategory. The word
//! problem is undecidable in general, so the procedure is bounded and
//! certificate-producing: it either returns a category together with the
//! evidence that the bounded quotient closed up (which implies it is the
//! genuine pushout), or reports `BoundExceeded` — never a silently wrong
//! answer.

use super::category::{FinCategory, RawCategory};
use super::functor::Functor;
use super::CategoryError;
use std::collections::{BTreeMap, BTreeSet, HashMap};

#[derive(Debug, Clone, thiserror::Error)]
pub enum BoundExceeded {
    #[error("word growth did not stabilize: a normal form of length {length} exceeded the word bound {bound}")]
    WordBound { length: usize, bound: usize },
    #[error("morphism count exceeded the size bound {bound}")]
    SizeBound { bound: usize },
}

/// Evidence recorded on success.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct PushoutCertificate {
    pub word_bound: usize,
    pub size_bound: usize,
    /// Irreducible words enumerated (including identities).
    pub words_enumerated: usize,
    /// Congruence classes = morphisms of the result.
    pub classes: usize,
    /// Fixed-point iterations of the congruence closure.
    pub closure_rounds: usize,
}

#[derive(Debug, Clone)]
pub struct PushoutSuccess {
    pub category: FinCategory,
    pub i1: Functor,
    pub i2: Functor,
    pub certificate: PushoutCertificate,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }
    fn grow(&mut self) -> usize {
        let i = self.parent.len();
        self.parent.push(i);
        i
    }
    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let r = self.find(self.parent[x]);
            self.parent[x] = r;
        }
        self.parent[x]
    }
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        // Lower root wins, for determinism.
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

/// A letter class of the glued alphabet: morphisms of the two legs modulo
/// the gluing F1(m) ≡ F2(m).
#[derive(Debug, Clone)]
struct Letter {
    /// Representatives in C1 / in C2 (morphism indices).
    reps1: Vec<usize>,
    reps2: Vec<usize>,
    src: usize,
    dst: usize,
    is_id: bool,
    name: String,
}

/// A word: `letters` applied left to right (letters[0] first); empty means
/// the identity of object class `src`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Word {
    src: usize,
    dst: usize,
    letters: Vec<usize>,
}

/// Computes the pushout of `f1: C0 -> C1`, `f2: C0 -> C2`, returning the
/// apex with the two leg inclusions and a stabilization certificate, or
/// `BoundExceeded`.
pub fn pushout(
    f1: &Functor,
    f2: &Functor,
    word_bound: usize,
    size_bound: usize,
) -> Result<Result<PushoutSuccess, BoundExceeded>, CategoryError> {
    if f1.domain() != f2.domain() {
        return Err(CategoryError::FunctorShape);
    }
    let c0 = f1.domain();
    let c1 = f1.codomain().clone();
    let c2 = f2.codomain().clone();

    // Object classes over Ob(C1) ⊔ Ob(C2).
    let n1 = c1.num_objects();
    let mut obj_uf = UnionFind::new(n1 + c2.num_objects());
    for x in 0..c0.num_objects() {
        obj_uf.union(f1.apply_obj(x), n1 + f2.apply_obj(x));
    }
    // Letter classes over Mor(C1) ⊔ Mor(C2).
    let m1 = c1.num_morphisms();
    let mut let_uf = UnionFind::new(m1 + c2.num_morphisms());
    for m in 0..c0.num_morphisms() {
        let_uf.union(f1.apply_mor(m), m1 + f2.apply_mor(m));
    }

    // Canonical object class ids, ordered by least member.
    let mut obj_roots: Vec<usize> = (0..n1 + c2.num_objects())
        .map(|x| obj_uf.find(x))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    obj_roots.sort_unstable();
    let obj_class = |obj_uf: &mut UnionFind, leg: usize, o: usize| -> usize {
        let raw = if leg == 1 { o } else { n1 + o };
        let r = obj_uf.find(raw);
        obj_roots.binary_search(&r).unwrap()
    };

    // Assemble letters.
    let mut letter_of_root: BTreeMap<usize, usize> = BTreeMap::new();
    let mut letters: Vec<Letter> = Vec::new();
    let total_m = m1 + c2.num_morphisms();
    for raw in 0..total_m {
        let root = let_uf.find(raw);
        if letter_of_root.contains_key(&root) {
            continue;
        }
        letter_of_root.insert(root, letters.len());
        letters.push(Letter {
            reps1: vec![],
            reps2: vec![],
            src: usize::MAX,
            dst: usize::MAX,
            is_id: false,
            name: String::new(),
        });
    }
    for raw in 0..total_m {
        let root = let_uf.find(raw);
        let li = letter_of_root[&root];
        if raw < m1 {
            letters[li].reps1.push(raw);
            let md = c1.morphism(raw);
            letters[li].src = obj_class(&mut obj_uf, 1, md.src);
            letters[li].dst = obj_class(&mut obj_uf, 1, md.dst);
            if c1.is_identity(raw) {
                letters[li].is_id = true;
            }
            if letters[li].name.is_empty() {
                letters[li].name = md.id.clone();
            }
        } else {
            let m = raw - m1;
            letters[li].reps2.push(m);
            let md = c2.morphism(m);
            letters[li].src = obj_class(&mut obj_uf, 2, md.src);
            letters[li].dst = obj_class(&mut obj_uf, 2, md.dst);
            if c2.is_identity(m) {
                letters[li].is_id = true;
            }
            if letters[li].name.is_empty() {
                letters[li].name = md.id.clone();
            }
        }
    }

    let num_obj_classes = obj_roots.len();

    // The Builder methods leg1_comp / leg2_comp cannot borrow the
    // categories, so reduction is implemented as a local closure-driven
    // routine instead.
    let compose_options = |letters_tbl: &Vec<Letter>, a: usize, b: usize| -> BTreeSet<usize> {
        // b ∘ a
        let mut out = BTreeSet::new();
        for &rb in &letters_tbl[b].reps1 {
            for &ra in &letters_tbl[a].reps1 {
                if let Some(c) = c1.comp(rb, ra) {
                    let root = let_uf_find_const(&let_uf, c);
                    out.insert(letter_of_root[&root]);
                }
            }
        }
        for &rb in &letters_tbl[b].reps2 {
            for &ra in &letters_tbl[a].reps2 {
                if let Some(c) = c2.comp(rb, ra) {
                    let root = let_uf_find_const(&let_uf, m1 + c);
                    out.insert(letter_of_root[&root]);
                }
            }
        }
        out
    };

    // Reduction with memoization.
    let mut reduce_memo: HashMap<Vec<usize>, BTreeSet<Word>> = HashMap::new();
    fn reduce_all(
        letters_tbl: &Vec<Letter>,
        compose_options: &dyn Fn(&Vec<Letter>, usize, usize) -> BTreeSet<usize>,
        memo: &mut HashMap<Vec<usize>, BTreeSet<Word>>,
        seq: &[usize],
        src: usize,
        word_bound: usize,
    ) -> Result<BTreeSet<Word>, BoundExceeded> {
        let cleaned: Vec<usize> = seq
            .iter()
            .copied()
            .filter(|&l| !letters_tbl[l].is_id)
            .collect();
        if cleaned.is_empty() {
            let mut s = BTreeSet::new();
            s.insert(Word {
                src,
                dst: src,
                letters: vec![],
            });
            return Ok(s);
        }
        if let Some(c) = memo.get(&cleaned) {
            return Ok(c.clone());
        }
        let mut options: BTreeSet<Vec<usize>> = BTreeSet::new();
        for i in 0..cleaned.len().saturating_sub(1) {
            for c in compose_options(letters_tbl, cleaned[i], cleaned[i + 1]) {
                let mut w = cleaned.clone();
                w.splice(i..=i + 1, [c]);
                options.insert(w);
            }
        }
        let result = if options.is_empty() {
            if cleaned.len() > word_bound {
                return Err(BoundExceeded::WordBound {
                    length: cleaned.len(),
                    bound: word_bound,
                });
            }
            let w = Word {
                src: letters_tbl[cleaned[0]].src,
                dst: letters_tbl[*cleaned.last().unwrap()].dst,
                letters: cleaned.clone(),
            };
            let mut s = BTreeSet::new();
            s.insert(w);
            s
        } else {
            let mut s = BTreeSet::new();
            for opt in options {
                s.extend(reduce_all(
                    letters_tbl,
                    compose_options,
                    memo,
                    &opt,
                    src,
                    word_bound,
                )?);
            }
            s
        };
        memo.insert(cleaned, result.clone());
        Ok(result)
    }

    // --- Enumerate irreducible words up to the word bound. ---
    let mut words: Vec<Word> = Vec::new();
    let mut word_index: HashMap<Word, usize> = HashMap::new();
    let intern = |words: &mut Vec<Word>, word_index: &mut HashMap<Word, usize>, w: &Word| -> Result<usize, BoundExceeded> {
        if let Some(&i) = word_index.get(w) {
            return Ok(i);
        }
        if words.len() >= size_bound {
            return Err(BoundExceeded::SizeBound { bound: size_bound });
        }
        let i = words.len();
        words.push(w.clone());
        word_index.insert(w.clone(), i);
        Ok(i)
    };

    macro_rules! try_bound {
        ($e:expr) => {
            match $e {
                Ok(v) => v,
                Err(be) => return Ok(Err(be)),
            }
        };
    }

    // Identity words.
    for oc in 0..num_obj_classes {
        try_bound!(intern(
            &mut words,
            &mut word_index,
            &Word {
                src: oc,
                dst: oc,
                letters: vec![]
            }
        ));
    }
    // Length-1 irreducible words: every non-identity letter class.
    let mut frontier: Vec<Word> = Vec::new();
    for (li, l) in letters.iter().enumerate() {
        if l.is_id {
            continue;
        }
        let w = Word {
            src: l.src,
            dst: l.dst,
            letters: vec![li],
        };
        try_bound!(intern(&mut words, &mut word_index, &w));
        frontier.push(w);
    }
    // Extend by appending letters while staying irreducible. A pair is
    // extendable exactly when no representative pair composes in either
    // leg, the same criterion the reducer uses, so the enumeration is
    // complete for the bounded word set.
    let irreducible_pair =
        |a: usize, b: usize| -> bool { compose_options(&letters, a, b).is_empty() };
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for w in &frontier {
            if w.letters.len() >= word_bound {
                continue;
            }
            let last = *w.letters.last().unwrap();
            for (li, l) in letters.iter().enumerate() {
                if l.is_id || l.src != w.dst || !irreducible_pair(last, li) {
                    continue;
                }
                let mut nw = w.clone();
                nw.letters.push(li);
                nw.dst = l.dst;
                if !word_index.contains_key(&nw) {
                    try_bound!(intern(&mut words, &mut word_index, &nw));
                    next.push(nw);
                }
            }
        }
        frontier = next;
    }

    // --- Congruence closure over word classes. ---
    let mut uf = UnionFind::new(words.len());
    // Product of two interned words (v ∘ u): reduce the concatenation, union
    // all outcomes, return the class of the least one.
    let mut product_memo: HashMap<(usize, usize), usize> = HashMap::new();
    let mut closure_rounds = 0usize;
    loop {
        closure_rounds += 1;
        let mut changed = false;
        let mut table: HashMap<(usize, usize), usize> = HashMap::new();
        for ui in 0..words.len() {
            for vi in 0..words.len() {
                if words[ui].dst != words[vi].src {
                    continue;
                }
                let p = match product_memo.get(&(ui, vi)) {
                    Some(&p) => p,
                    None => {
                        let mut seq = words[ui].letters.clone();
                        seq.extend_from_slice(&words[vi].letters);
                        let results = try_bound!(reduce_all(
                            &letters,
                            &compose_options,
                            &mut reduce_memo,
                            &seq,
                            words[ui].src,
                            word_bound
                        ));
                        let before = words.len();
                        let mut first: Option<usize> = None;
                        for r in &results {
                            let idx = try_bound!(intern(&mut words, &mut word_index, r));
                            while uf.parent.len() < words.len() {
                                uf.grow();
                            }
                            if words.len() > before {
                                // A word surfaced that the enumeration
                                // missed; make sure its products are
                                // computed on the next round.
                                changed = true;
                            }
                            match first {
                                None => first = Some(idx),
                                Some(f) => {
                                    if uf.union(f, idx) {
                                        changed = true;
                                    }
                                }
                            }
                        }
                        let p = first.expect("reduce_all returns at least one word");
                        product_memo.insert((ui, vi), p);
                        p
                    }
                };
                let key = (uf.find(ui), uf.find(vi));
                let pr = uf.find(p);
                match table.get(&key) {
                    Some(&q) => {
                        let qr = uf.find(q);
                        if qr != pr && uf.union(qr, pr) {
                            changed = true;
                        }
                    }
                    None => {
                        table.insert(key, pr);
                    }
                }
            }
        }
        if !changed {
            break;
        }
        if closure_rounds > 2 * size_bound + 2 {
            // Cannot happen: every round that continues either merges two
            // classes or interns a new word, and both are bounded.
            unreachable!("congruence closure failed to terminate");
        }
    }

    // --- Assemble the result category. ---
    let mut class_roots: Vec<usize> = (0..words.len())
        .map(|i| uf.find(i))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    class_roots.sort_unstable();
    let class_of = |uf: &mut UnionFind, w: usize| -> usize {
        let r = uf.find(w);
        class_roots.binary_search(&r).unwrap()
    };
    // Canonical representative per class: shortest, then lexicographically
    // least letter sequence.
    let mut rep_of_class: Vec<Option<usize>> = vec![None; class_roots.len()];
    for i in 0..words.len() {
        let c = class_of(&mut uf, i);
        let better = match rep_of_class[c] {
            None => true,
            Some(j) => {
                (words[i].letters.len(), &words[i].letters)
                    < (words[j].letters.len(), &words[j].letters)
            }
        };
        if better {
            rep_of_class[c] = Some(i);
        }
    }
    let rep_of_class: Vec<usize> = rep_of_class.into_iter().map(|o| o.unwrap()).collect();

    // Object names.
    let mut obj_names: Vec<String> = Vec::new();
    for &root in &obj_roots {
        let mut members: BTreeSet<String> = BTreeSet::new();
        for x in 0..n1 + c2.num_objects() {
            if obj_uf.find(x) == root {
                let nm = if x < n1 {
                    c1.object_name(x).to_string()
                } else {
                    c2.object_name(x - n1).to_string()
                };
                members.insert(nm);
            }
        }
        let base = members.into_iter().collect::<Vec<_>>().join("=");
        obj_names.push(base);
    }
    dedupe_names(&mut obj_names);

    // Morphism names.
    let mut mor_names: Vec<String> = Vec::new();
    for (ci, &wi) in rep_of_class.iter().enumerate() {
        let w = &words[wi];
        let name = if w.letters.is_empty() {
            format!("id_{}", obj_names[w.src])
        } else {
            w.letters
                .iter()
                .rev()
                .map(|&l| letters[l].name.clone())
                .collect::<Vec<_>>()
                .join("*")
        };
        let _ = ci;
        mor_names.push(name);
    }
    dedupe_names(&mut mor_names);

    let mut raw = RawCategory {
        objects: obj_names.clone(),
        ..Default::default()
    };
    for (ci, &wi) in rep_of_class.iter().enumerate() {
        raw.morphisms.push((
            mor_names[ci].clone(),
            obj_names[words[wi].src].clone(),
            obj_names[words[wi].dst].clone(),
        ));
    }
    for oc in 0..num_obj_classes {
        let idw = word_index[&Word {
            src: oc,
            dst: oc,
            letters: vec![],
        }];
        let c = class_of(&mut uf, idw);
        raw.identities
            .push((obj_names[oc].clone(), mor_names[c].clone()));
    }
    // Composition table on class representatives; the table is total on
    // composable class pairs because all member products were computed.
    for (ci, &wi) in rep_of_class.iter().enumerate() {
        for (cj, &wj) in rep_of_class.iter().enumerate() {
            // cj ∘ ci requires dst(ci) == src(cj)
            if words[wi].dst != words[wj].src {
                continue;
            }
            let p = product_memo
                .get(&(wi, wj))
                .copied()
                .expect("product of representatives computed during closure");
            let pc = class_of(&mut uf, p);
            raw.compose.push((
                mor_names[cj].clone(),
                mor_names[ci].clone(),
                mor_names[pc].clone(),
            ));
        }
    }
    let category = FinCategory::validate(&raw)?;

    // The leg inclusions.
    let mut build_leg = |leg: usize, cat: &FinCategory| -> Result<Functor, CategoryError> {
        let on_obj: Vec<usize> = (0..cat.num_objects())
            .map(|o| obj_class(&mut obj_uf, leg, o))
            .collect();
        let mut on_mor = Vec::new();
        for m in 0..cat.num_morphisms() {
            let raw_m = if leg == 1 { m } else { m1 + m };
            let root = let_uf_find_const(&let_uf, raw_m);
            let li = letter_of_root[&root];
            let w = if letters[li].is_id {
                Word {
                    src: obj_class(&mut obj_uf, leg, cat.src(m)),
                    dst: obj_class(&mut obj_uf, leg, cat.src(m)),
                    letters: vec![],
                }
            } else {
                Word {
                    src: letters[li].src,
                    dst: letters[li].dst,
                    letters: vec![li],
                }
            };
            let wi = word_index[&w];
            on_mor.push(class_of(&mut uf, wi));
        }
        Functor::new(cat.clone(), category.clone(), on_obj, on_mor)
    };
    let i1 = build_leg(1, &c1)?;
    let i2 = build_leg(2, &c2)?;
    debug_assert_eq!(
        i1.compose(f1).unwrap(),
        i2.compose(f2).unwrap(),
        "pushout square does not commute"
    );

    let certificate = PushoutCertificate {
        word_bound,
        size_bound,
        words_enumerated: words.len(),
        classes: class_roots.len(),
        closure_rounds,
    };
    Ok(Ok(PushoutSuccess {
        category,
        i1,
        i2,
        certificate,
    }))
}

fn let_uf_find_const(uf: &UnionFind, mut x: usize) -> usize {
    while uf.parent[x] != x {
        x = uf.parent[x];
    }
    x
}

fn dedupe_names(names: &mut [String]) {
    let mut seen: HashMap<String, usize> = HashMap::new();
    for i in 0..names.len() {
        let base = names[i].clone();
        let count = seen.entry(base.clone()).or_insert(0);
        *count += 1;
        if *count > 1 {
            names[i] = format!("{}#{}", base, *count);
        }
    }
}

//! Regenerates the bundled ../corpus JSON files from the library builders,
//! so the files are valid by construction. Run from the workspace root:
//! cargo run -p dcolim --example gen_corpus

use std::path::Path;

use serde_json::{json, Value};

use dcolim::corpus;
use dcolim::fincat::{FinCategory, Functor};
use dcolim::io;
use dcolim::mv::standin_square;

fn write(dir: &Path, name: &str, v: &Value) {
    let path = dir.join(name);
    let text = serde_json::to_string_pretty(v).unwrap();
    std::fs::write(&path, text + "\n").unwrap();
    println!("wrote {}", path.display());
}

fn const_z(base: &FinCategory, variance: &str) -> Value {
    json!({
        "base": io::category_to_json(base),
        "variance": variance,
        "const": {"rank": 1},
    })
}

fn main() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus");
    let dir = dir.canonicalize().expect("corpus directory exists");

    // Plain categories.
    write(&dir, "span_poset.json", &io::category_to_json(&corpus::span()));
    write(&dir, "cyclic_z2.json", &io::category_to_json(&corpus::cyclic_group(2)));

    // The stand-in squares over Z/2 and Z/3, with constant-Z diagrams over
    // their pushout corners for both sequence directions.
    for (n, tag) in [(2u64, "z2"), (3, "z3")] {
        let sq = standin_square(&corpus::cyclic_group(n)).unwrap();
        write(&dir, &format!("standin_{}_square.json", tag), &io::square_to_json(&sq));
        write(&dir, &format!("standin_{}_const_z.json", tag), &const_z(sq.apex(), "left"));
        write(&dir, &format!("standin_{}_const_z_lim.json", tag), &const_z(sq.apex(), "right"));
        write(&dir, &format!("standin_{}_i0.json", tag), &io::functor_to_json(&sq.i0()));
    }

    // Trivial group into Z/2; the pushout corner is BZ/2 itself.
    {
        let pt = corpus::chain(1);
        let bz2 = corpus::cyclic_group(2);
        let f1 = Functor::identity(&pt);
        let f2 = Functor::from_names(
            pt.clone(),
            bz2.clone(),
            &[("x0".into(), "*".into())],
            &[("id_x0".into(), "g0".into())],
        )
        .unwrap();
        let i2 = Functor::identity(&bz2);
        let sq = dcolim::fincat::PushoutSquare::new(f1, f2.clone(), f2, i2).unwrap();
        write(&dir, "trivial_z2_square.json", &io::square_to_json(&sq));
        write(&dir, "trivial_z2_const_z.json", &const_z(&bz2, "left"));
        write(&dir, "trivial_z2_const_z_lim.json", &const_z(&bz2, "right"));
    }

    // Groupoid circle: discrete two-object C0 included into two
    // contractible-groupoid legs. The pushout has an infinite fundamental
    // group, so only the legs and prediction modules are bundled.
    {
        let c0 = corpus::discrete(2);
        let t = corpus::contractible_groupoid(2, "t");
        let f = Functor::from_names(
            c0.clone(),
            t.clone(),
            &[("x0".into(), "t0".into()), ("x1".into(), "t1".into())],
            &[
                ("id_x0".into(), "e0_0".into()),
                ("id_x1".into(), "e1_1".into()),
            ],
        )
        .unwrap();
        write(&dir, "circle_f1.json", &io::functor_to_json(&f));
        write(&dir, "circle_f2.json", &io::functor_to_json(&f));
        write(&dir, "circle_m1.json", &const_z(&t, "left"));
        write(&dir, "circle_m2.json", &const_z(&t, "left"));
    }

    // Infinite dihedral: BZ/2 <- point -> BZ/2 prediction inputs.
    {
        let pt = corpus::chain(1);
        let bz2 = corpus::cyclic_group(2);
        let f = Functor::from_names(
            pt.clone(),
            bz2.clone(),
            &[("x0".into(), "*".into())],
            &[("id_x0".into(), "g0".into())],
        )
        .unwrap();
        write(&dir, "dihedral_f1.json", &io::functor_to_json(&f));
        write(&dir, "dihedral_f2.json", &io::functor_to_json(&f));
        write(&dir, "dihedral_m1.json", &const_z(&bz2, "left"));
        write(&dir, "dihedral_m2.json", &const_z(&bz2, "left"));
    }

    // Two chains glued along a shared point (the positive instance).
    {
        let two = corpus::chain(2);
        let (_, f1) = corpus::full_subcategory_inclusion(&two, |o| o == "x0");
        let (_, f2) = corpus::full_subcategory_inclusion(&two, |o| o == "x0");
        let success = dcolim::fincat::pushout(&f1, &f2, 8, 10_000).unwrap().unwrap();
        let sq = dcolim::fincat::PushoutSquare::new(f1, f2, success.i1, success.i2).unwrap();
        write(&dir, "span_square.json", &io::square_to_json(&sq));
        write(&dir, "span_square_const_z.json", &const_z(sq.apex(), "left"));
    }
}

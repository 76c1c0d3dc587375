//! Integral homology of the nerve of a finite category, computed from the
//! normalized simplicial chain complex directly (no module machinery).

use crate::abelian::IntMatrix;
use crate::fincat::FinCategory;

use super::complex::{FreeComplex, GradedAbGroup};
use super::DmodError;

/// Normalized chain complex of the nerve through degree `trunc`: one basis
/// element per nondegenerate n-chain, boundary the alternating face sum
/// with degenerate faces dropped.
pub fn nerve_complex(cat: &FinCategory, trunc: usize) -> Result<FreeComplex, DmodError> {
    // Nondegenerate chains per degree, ordered deterministically.
    let mut chains: Vec<Vec<(usize, Vec<usize>)>> = Vec::new();
    let mut degree0: Vec<(usize, Vec<usize>)> =
        (0..cat.num_objects()).map(|c| (c, Vec::new())).collect();
    degree0.sort_by_key(|(c, _)| cat.object_name(*c).to_string());
    chains.push(degree0);
    for n in 1..=trunc {
        let mut acc = Vec::new();
        for (start, mors) in &chains[n - 1] {
            let end = mors.last().map(|&m| cat.dst(m)).unwrap_or(*start);
            for m in 0..cat.num_morphisms() {
                if cat.src(m) == end && !cat.is_identity(m) {
                    let mut e = mors.clone();
                    e.push(m);
                    acc.push((*start, e));
                }
            }
        }
        acc.sort_by_key(|(_, mors)| {
            mors.iter()
                .map(|&m| cat.morphism(m).id.to_string())
                .collect::<Vec<_>>()
        });
        chains.push(acc);
    }
    let dims: Vec<usize> = chains.iter().map(|v| v.len()).collect();
    let labels: Vec<Vec<String>> = chains
        .iter()
        .map(|v| {
            v.iter()
                .map(|(s, mors)| {
                    if mors.is_empty() {
                        format!("[{}]", cat.object_name(*s))
                    } else {
                        let parts: Vec<&str> =
                            mors.iter().map(|&m| cat.morphism(m).id.as_str()).collect();
                        format!("[{}]", parts.join("|"))
                    }
                })
                .collect()
        })
        .collect();
    let mut diffs = vec![IntMatrix::zero(0, dims[0])];
    for n in 1..=trunc {
        let mut d = IntMatrix::zero(dims[n - 1], dims[n]);
        for (j, (start, mors)) in chains[n].iter().enumerate() {
            let mut add = |face: (usize, Vec<usize>), sign: i64| {
                if face.1.iter().any(|&m| cat.is_identity(m)) {
                    return;
                }
                let i = chains[n - 1]
                    .iter()
                    .position(|x| *x == face)
                    .expect("face of a chain is enumerated");
                let v = d.get(i, j) + sign;
                d.set(i, j, v);
            };
            add((cat.dst(mors[0]), mors[1..].to_vec()), 1);
            for i in 1..n {
                let gf = cat.comp(mors[i], mors[i - 1]).expect("chain composes");
                let mut e = mors.clone();
                e[i - 1] = gf;
                e.remove(i);
                add((*start, e), if i % 2 == 0 { 1 } else { -1 });
            }
            add(
                (*start, mors[..n - 1].to_vec()),
                if n % 2 == 0 { 1 } else { -1 },
            );
        }
        diffs.push(d);
    }
    Ok(FreeComplex::new(dims, labels, diffs)?)
}

/// H_*(N C; Z) in degrees 0..=n.
pub fn nerve_homology(cat: &FinCategory, n: usize) -> Result<GradedAbGroup, DmodError> {
    let cx = nerve_complex(cat, n + 1)?;
    Ok(cx.graded_homology(n)?)
}

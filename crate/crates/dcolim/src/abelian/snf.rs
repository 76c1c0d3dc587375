//! Smith normal form over the integers with unimodular transforms.

use super::matrix::IntMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// `u * a * v = s` with `u`, `v` unimodular and `s` diagonal, the diagonal
/// entries nonnegative and forming a divisibility chain.
#[derive(Clone, Debug)]
pub struct SnfDecomposition {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
    /// Number of nonzero diagonal entries.
    pub rank: usize,
}

impl SnfDecomposition {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.s.get(i, i).clone()).collect()
    }
}

struct Worker {
    a: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Worker {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }

    /// row_i += q * row_j
    fn add_row(&mut self, i: usize, j: usize, q: &BigInt) {
        self.a.add_row_multiple(i, j, q);
        self.u.add_row_multiple(i, j, q);
        let nq = -q;
        self.u_inv.add_col_multiple(j, i, &nq);
    }

    /// col_i += q * col_j
    fn add_col(&mut self, i: usize, j: usize, q: &BigInt) {
        self.a.add_col_multiple(i, j, q);
        self.v.add_col_multiple(i, j, q);
        let nq = -q;
        self.v_inv.add_row_multiple(j, i, &nq);
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }
}

/// Quotient of balanced division: the remainder n - q*d lies in
/// [-|d|/2, |d|/2]. Small quotients keep entry growth polynomial where
/// floor division lets the trailing submatrix explode.
fn balanced_quot(n: &BigInt, d: &BigInt) -> BigInt {
    let (mut q, r) = n.div_rem(d);
    if r.abs() * 2 > d.abs() {
        if r.sign() == d.sign() {
            q += 1;
        } else {
            q -= 1;
        }
    }
    q
}

/// Pivot choice: minimal nonzero absolute value in the trailing submatrix,
/// ties broken by lowest row index then lowest column index.
fn find_pivot(a: &IntMatrix, from: usize) -> Option<(usize, usize)> {
    let mut best: Option<(BigInt, usize, usize)> = None;
    for i in from..a.rows() {
        for j in from..a.cols() {
            let x = a.get(i, j);
            if x.is_zero() {
                continue;
            }
            let ax = x.abs();
            match &best {
                Some((b, _, _)) if *b <= ax => {}
                _ => best = Some((ax, i, j)),
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

pub fn smith_normal_form(a: &IntMatrix) -> SnfDecomposition {
    let (rows, cols) = (a.rows(), a.cols());
    let mut w = Worker {
        a: a.clone(),
        u: IntMatrix::identity(rows),
        u_inv: IntMatrix::identity(rows),
        v: IntMatrix::identity(cols),
        v_inv: IntMatrix::identity(cols),
    };
    let mut t = 0;
    'outer: while t < rows.min(cols) {
        loop {
            // Re-select the globally minimal pivot every pass: together with
            // balanced division this is what keeps intermediate entries small.
            let Some((pi, pj)) = find_pivot(&w.a, t) else {
                break 'outer;
            };
            w.swap_rows(t, pi);
            w.swap_cols(t, pj);
            // Reduce column t and row t; any surviving remainder is
            // strictly smaller than the pivot and triggers another pass.
            let mut dirty = false;
            for i in t + 1..rows {
                if !w.a.get(i, t).is_zero() {
                    let q = -balanced_quot(w.a.get(i, t), w.a.get(t, t));
                    w.add_row(i, t, &q);
                    if !w.a.get(i, t).is_zero() {
                        dirty = true;
                    }
                }
            }
            for j in t + 1..cols {
                if !w.a.get(t, j).is_zero() {
                    let q = -balanced_quot(w.a.get(t, j), w.a.get(t, t));
                    w.add_col(j, t, &q);
                    if !w.a.get(t, j).is_zero() {
                        dirty = true;
                    }
                }
            }
            if dirty {
                continue;
            }
            // Row and column t are clear. Enforce that the pivot divides the
            // whole trailing submatrix before moving on.
            let mut offender = None;
            'search: for i in t + 1..rows {
                for j in t + 1..cols {
                    if !w.a.get(i, j).mod_floor(w.a.get(t, t)).is_zero() {
                        offender = Some(i);
                        break 'search;
                    }
                }
            }
            match offender {
                Some(i) => {
                    let one = BigInt::from(1);
                    w.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if w.a.get(t, t).is_negative() {
            w.negate_row(t);
        }
        t += 1;
    }
    SnfDecomposition {
        u: w.u,
        s: w.a,
        v: w.v,
        u_inv: w.u_inv,
        v_inv: w.v_inv,
        rank: t,
    }
}

/// Solve `a * x = b` over the integers for a single column vector `b`.
/// Returns `None` when no integral solution exists. Deterministic: the
/// solution with zero coordinates in the kernel directions of the SNF basis.
pub fn solve(snf: &SnfDecomposition, b: &IntMatrix) -> Option<IntMatrix> {
    assert_eq!(b.cols(), 1);
    assert_eq!(b.rows(), snf.u.cols());
    let c = snf.u.mul(b);
    let n = snf.v.rows();
    let mut y = IntMatrix::zero(n, 1);
    for i in 0..c.rows() {
        let ci = c.get(i, 0);
        if i < snf.rank {
            let d = snf.s.get(i, i);
            let (q, r) = ci.div_rem(d);
            if !r.is_zero() {
                return None;
            }
            if i < n {
                y.set(i, 0, q);
            }
        } else if !ci.is_zero() {
            return None;
        }
    }
    Some(snf.v.mul(&y))
}

/// Solve `a * x = b` column by column; `None` if any column fails.
pub fn solve_matrix(snf: &SnfDecomposition, b: &IntMatrix) -> Option<IntMatrix> {
    let mut cols = Vec::with_capacity(b.cols());
    for j in 0..b.cols() {
        let col = IntMatrix::col_vec(&b.column(j));
        cols.push(solve(snf, &col)?);
    }
    let n = snf.v.rows();
    Some(IntMatrix::from_fn(n, b.cols(), |i, j| {
        cols[j].get(i, 0).clone()
    }))
}

/// Basis of the integer kernel of `a`, as columns. Uses the SNF: the last
/// `cols - rank` columns of `v`.
pub fn kernel_basis(snf: &SnfDecomposition) -> IntMatrix {
    let cols = snf.v.cols();
    let idx: Vec<usize> = (snf.rank..cols).collect();
    snf.v.select_cols(&idx)
}

/// Basis of the column lattice of `a`, as columns: `u_inv * s` restricted to
/// the nonzero diagonal entries.
pub fn image_basis(snf: &SnfDecomposition) -> IntMatrix {
    let idx: Vec<usize> = (0..snf.rank).collect();
    let ui = snf.u_inv.select_cols(&idx);
    let mut out = ui.clone();
    for j in 0..snf.rank {
        let d = snf.s.get(j, j).clone();
        for i in 0..out.rows() {
            let v = ui.get(i, j) * &d;
            out.set(i, j, v);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_invariants(a: &IntMatrix) {
        let snf = smith_normal_form(a);
        assert_eq!(snf.u.mul(a).mul(&snf.v), snf.s, "UAV != S");
        assert_eq!(snf.u.mul(&snf.u_inv), IntMatrix::identity(a.rows()));
        assert_eq!(snf.v.mul(&snf.v_inv), IntMatrix::identity(a.cols()));
        let du = snf.u.det();
        let dv = snf.v.det();
        assert!(du.abs() == BigInt::from(1), "U not unimodular");
        assert!(dv.abs() == BigInt::from(1), "V not unimodular");
        for i in 0..snf.rank.saturating_sub(1) {
            let d0 = snf.s.get(i, i);
            let d1 = snf.s.get(i + 1, i + 1);
            assert!(d1.mod_floor(d0).is_zero(), "divisibility chain broken");
        }
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                if i != j {
                    assert!(snf.s.get(i, j).is_zero());
                }
            }
        }
    }

    #[test]
    fn zero_matrix() {
        let a = IntMatrix::from_rows(&[vec![0]]);
        let snf = smith_normal_form(&a);
        assert_eq!(snf.s, a);
        assert!(snf.u.is_identity());
        assert!(snf.v.is_identity());
        assert_eq!(snf.rank, 0);
    }

    #[test]
    fn identity_3x3() {
        let a = IntMatrix::identity(3);
        let snf = smith_normal_form(&a);
        assert_eq!(snf.s, a);
        assert_eq!(snf.rank, 3);
    }

    #[test]
    fn two_four_six_eight() {
        // Oracle: row/column reduction by hand gives diag(2, 4);
        // d1*d2 = |det| = 8 and d1 = gcd of entries = 2.
        let a = IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]);
        let snf = smith_normal_form(&a);
        assert_eq!(snf.diagonal(), vec![BigInt::from(2), BigInt::from(4)]);
        check_invariants(&a);
    }

    #[test]
    fn empty_shapes() {
        check_invariants(&IntMatrix::zero(0, 3));
        check_invariants(&IntMatrix::zero(3, 0));
        check_invariants(&IntMatrix::zero(0, 0));
    }

    #[test]
    fn solve_and_kernel() {
        let a = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        let snf = smith_normal_form(&a);
        let b = IntMatrix::col_vec(&[BigInt::from(4), BigInt::from(9)]);
        let x = solve(&snf, &b).unwrap();
        assert_eq!(a.mul(&x), b);
        let b2 = IntMatrix::col_vec(&[BigInt::from(1), BigInt::from(0)]);
        assert!(solve(&snf, &b2).is_none());
        let k = kernel_basis(&snf);
        assert_eq!(k.cols(), 0);
    }

    proptest::proptest! {
        #[test]
        fn random_invariants(rows in 0usize..6, cols in 0usize..6, seed in 0u64..1000) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let a = IntMatrix::from_fn(rows, cols, |_, _| BigInt::from(rng.gen_range(-9i64..=9)));
            check_invariants(&a);
        }

        #[test]
        fn solve_roundtrip(seed in 0u64..500) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let a = IntMatrix::from_fn(4, 3, |_, _| BigInt::from(rng.gen_range(-5i64..=5)));
            let x = IntMatrix::from_fn(3, 1, |_, _| BigInt::from(rng.gen_range(-5i64..=5)));
            let b = a.mul(&x);
            let snf = smith_normal_form(&a);
            let y = solve(&snf, &b).expect("must be solvable");
            proptest::prop_assert_eq!(a.mul(&y), b);
        }
    }
}

use num_integer::Integer;
use num_traits::Signed;

use super::matrix::{IntegerMatrix, Matrix};

/// A Smith decomposition `U · M · V = S` together with the inverses of the transforms.
#[derive(Clone, Debug)]
pub struct SmithForm<T> {
    pub s: Matrix<T>,
    pub u: Matrix<T>,
    pub u_inv: Matrix<T>,
    pub v: Matrix<T>,
    pub v_inv: Matrix<T>,
    pub rank: usize,
}

impl<T: Clone + Integer + Signed> SmithForm<T> {
    pub fn compute(m: &Matrix<T>) -> Self {
        let mut t = Transforms {
            u: Matrix::identity(m.rows()),
            u_inv: Matrix::identity(m.rows()),
            v: Matrix::identity(m.cols()),
            v_inv: Matrix::identity(m.cols()),
        };
        let mut s = m.clone();
        let rank = reduce(&mut s, Some(&mut t));
        SmithForm { s, u: t.u, u_inv: t.u_inv, v: t.v, v_inv: t.v_inv, rank }
    }

    /// The nonzero diagonal entries, in divisibility order.
    pub fn diagonal(&self) -> Vec<T> {
        (0..self.rank).map(|i| self.s[(i, i)].clone()).collect()
    }
}

/// `(S, U, V)` with `U · M · V = S`, `S` diagonal with nonnegative entries forming a
/// divisibility chain, and `U`, `V` unimodular.
pub fn smith_normal_form(m: &IntegerMatrix) -> (IntegerMatrix, IntegerMatrix, IntegerMatrix) {
    let f = SmithForm::compute(m);
    (f.s, f.u, f.v)
}

/// Nonzero invariant factors of `m` without tracking transforms. Same elimination as
/// [`SmithForm::compute`]; use with machine integers when entries stay small.
pub fn invariant_factors<T: Clone + Integer + Signed>(m: &Matrix<T>) -> Vec<T> {
    let mut s = m.clone();
    let rank = reduce(&mut s, None);
    (0..rank).map(|i| s[(i, i)].clone()).collect()
}

struct Transforms<T> {
    u: Matrix<T>,
    u_inv: Matrix<T>,
    v: Matrix<T>,
    v_inv: Matrix<T>,
}

impl<T: Clone + Integer + Signed> Transforms<T> {
    // row_dst -= q * row_src
    fn row_sub(&mut self, dst: usize, src: usize, q: &T) {
        axpy_row(&mut self.u, dst, src, q, false);
        axpy_col(&mut self.u_inv, src, dst, q, true);
    }

    // row_dst += row_src
    fn row_add(&mut self, dst: usize, src: usize) {
        let one = T::one();
        axpy_row(&mut self.u, dst, src, &one, true);
        axpy_col(&mut self.u_inv, src, dst, &one, false);
    }

    fn row_swap(&mut self, a: usize, b: usize) {
        self.u.swap_rows(a, b);
        self.u_inv.swap_cols(a, b);
    }

    fn row_negate(&mut self, a: usize) {
        for j in 0..self.u.cols() {
            self.u[(a, j)] = -self.u[(a, j)].clone();
        }
        for i in 0..self.u_inv.rows() {
            self.u_inv[(i, a)] = -self.u_inv[(i, a)].clone();
        }
    }

    // col_dst -= q * col_src
    fn col_sub(&mut self, dst: usize, src: usize, q: &T) {
        axpy_col(&mut self.v, dst, src, q, false);
        axpy_row(&mut self.v_inv, src, dst, q, true);
    }

    fn col_swap(&mut self, a: usize, b: usize) {
        self.v.swap_cols(a, b);
        self.v_inv.swap_rows(a, b);
    }
}

fn axpy_row<T: Clone + Integer + Signed>(m: &mut Matrix<T>, dst: usize, src: usize, q: &T, add: bool) {
    for j in 0..m.cols() {
        let d = m[(src, j)].clone() * q.clone();
        if add {
            m[(dst, j)] = m[(dst, j)].clone() + d;
        } else {
            m[(dst, j)] = m[(dst, j)].clone() - d;
        }
    }
}

fn axpy_col<T: Clone + Integer + Signed>(m: &mut Matrix<T>, dst: usize, src: usize, q: &T, add: bool) {
    for i in 0..m.rows() {
        let d = m[(i, src)].clone() * q.clone();
        if add {
            m[(i, dst)] = m[(i, dst)].clone() + d;
        } else {
            m[(i, dst)] = m[(i, dst)].clone() - d;
        }
    }
}

/// Position of a smallest nonzero entry of the block below and right of `(t, t)`.
fn smallest_entry<T: Clone + Integer + Signed>(a: &Matrix<T>, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, T)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let x = &a[(i, j)];
            if x.is_zero() {
                continue;
            }
            let size = x.abs();
            if best.as_ref().map_or(true, |(_, _, b)| &size < b) {
                best = Some((i, j, size));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// Reduces `a` in place to Smith form and returns its rank.
///
/// Every round pivots on a smallest entry of the remaining block. Pivoting on a local
/// remainder instead lets the entries of the block grow without bound.
fn reduce<T: Clone + Integer + Signed>(a: &mut Matrix<T>, mut tr: Option<&mut Transforms<T>>) -> usize {
    let (r, c) = (a.rows(), a.cols());
    let mut t = 0;
    while t < r.min(c) {
        loop {
            let Some((pi, pj)) = smallest_entry(a, t) else { return t };
            a.swap_rows(t, pi);
            a.swap_cols(t, pj);
            if let Some(tr) = tr.as_deref_mut() {
                tr.row_swap(t, pi);
                tr.col_swap(t, pj);
            }
            let mut cleared = true;
            for i in t + 1..r {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = a[(i, t)].div_floor(&a[(t, t)]);
                axpy_row(a, i, t, &q, false);
                if let Some(tr) = tr.as_deref_mut() {
                    tr.row_sub(i, t, &q);
                }
                cleared &= a[(i, t)].is_zero();
            }
            for j in t + 1..c {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = a[(t, j)].div_floor(&a[(t, t)]);
                axpy_col(a, j, t, &q, false);
                if let Some(tr) = tr.as_deref_mut() {
                    tr.col_sub(j, t, &q);
                }
                cleared &= a[(t, j)].is_zero();
            }
            if !cleared {
                continue;
            }
            let p = a[(t, t)].clone();
            let offender = (t + 1..r).find(|&i| (t + 1..c).any(|j| !a[(i, j)].is_multiple_of(&p)));
            match offender {
                Some(i) => {
                    axpy_row(a, t, i, &T::one(), true);
                    if let Some(tr) = tr.as_deref_mut() {
                        tr.row_add(t, i);
                    }
                }
                None => break,
            }
        }

        if a[(t, t)].is_negative() {
            a[(t, t)] = -a[(t, t)].clone();
            if let Some(tr) = tr.as_deref_mut() {
                tr.row_negate(t);
            }
        }
        t += 1;
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn check_decomposition(m: &IntegerMatrix) {
        let f = SmithForm::compute(m);
        assert_eq!(&(&f.u * m) * &f.v, f.s);
        let one = BigInt::from(1);
        assert_eq!(f.u.determinant().abs(), one);
        assert_eq!(f.v.determinant().abs(), one);
        assert_eq!(&f.u * &f.u_inv, IntegerMatrix::identity(m.rows()));
        assert_eq!(&f.v * &f.v_inv, IntegerMatrix::identity(m.cols()));
        for i in 0..f.s.rows() {
            for j in 0..f.s.cols() {
                if i != j {
                    assert_eq!(f.s[(i, j)], BigInt::from(0));
                }
            }
        }
        let d = f.diagonal();
        for w in d.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        assert!(d.iter().all(|x| x > &BigInt::from(0)));
    }

    #[test]
    fn identity_zero_and_small_examples() {
        let id = IntegerMatrix::identity(3);
        assert_eq!(smith_normal_form(&id).0, id);
        let z = IntegerMatrix::zeros(2, 3);
        assert_eq!(smith_normal_form(&z).0, z);
        let m = IntegerMatrix::from_i64_rows(&[[2, 4], [6, 8]]);
        assert_eq!(smith_normal_form(&m).0, IntegerMatrix::from_i64_rows(&[[2, 0], [0, 4]]));
        check_decomposition(&m);
    }

    #[test]
    fn machine_and_big_integers_agree() {
        let rows = [[4i64, -6, 2], [8, 3, -1], [0, 12, 6]];
        let small = Matrix::from_rows(&rows);
        let big = IntegerMatrix::from_i64_rows(&rows);
        let a: Vec<BigInt> = invariant_factors(&small).into_iter().map(BigInt::from).collect();
        assert_eq!(a, SmithForm::compute(&big).diagonal());
    }

    #[test]
    fn dense_matrices_keep_small_entries() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for n in [8usize, 12] {
            let m = Matrix::from_vec(n, n, (0..n * n).map(|_| BigInt::from(rng.gen_range(-9..=9))).collect());
            check_decomposition(&m);
            let det = m.determinant().abs();
            let product = SmithForm::compute(&m).diagonal().iter().fold(BigInt::from(1), |acc, d| acc * d);
            assert_eq!(product, det);
        }
    }

    proptest! {
        #[test]
        fn decomposition_is_valid(
            r in 1usize..5, c in 1usize..5,
            entries in proptest::collection::vec(-9i64..=9, 16),
        ) {
            let rows: Vec<Vec<i64>> = (0..r).map(|i| entries[i * 4..i * 4 + c].to_vec()).collect();
            check_decomposition(&IntegerMatrix::from_i64_rows(&rows));
        }
    }
}

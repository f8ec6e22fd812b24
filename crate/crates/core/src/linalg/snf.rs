//! Smith normal form over the integers with both transforms and the inverse
//! of the left transform.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;

/// `d = u * m * v` with `u`, `v` unimodular and `d` diagonal, nonnegative,
/// each diagonal entry dividing the next. `u_inv` is kept alongside `u`
/// because lattice computations need to map back into the original basis.
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub rank: usize,
}

impl Smith {
    /// The diagonal of `d`, of length `min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d.get(i, i).clone()).collect()
    }

    /// Nonzero diagonal entries (the invariant factors).
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.diagonal().into_iter().filter(|x| !x.is_zero()).collect()
    }
}

struct Work {
    a: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
}

impl Work {
    // row[t] += f * row[s]; u follows, u_inv gets the inverse column op.
    fn row_add(&mut self, t: usize, s: usize, f: &BigInt) {
        self.a.add_row_multiple(t, s, f);
        self.u.add_row_multiple(t, s, f);
        self.u_inv.add_col_multiple(s, t, &-f);
    }

    fn row_swap(&mut self, x: usize, y: usize) {
        self.a.swap_rows(x, y);
        self.u.swap_rows(x, y);
        self.u_inv.swap_cols(x, y);
    }

    fn row_negate(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }

    fn col_add(&mut self, t: usize, s: usize, f: &BigInt) {
        self.a.add_col_multiple(t, s, f);
        self.v.add_col_multiple(t, s, f);
    }

    fn col_swap(&mut self, x: usize, y: usize) {
        self.a.swap_cols(x, y);
        self.v.swap_cols(x, y);
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> Smith {
    let rows = m.rows();
    let cols = m.cols();
    let mut w = Work {
        a: m.clone(),
        u: IntMatrix::identity(rows),
        u_inv: IntMatrix::identity(rows),
        v: IntMatrix::identity(cols),
    };
    let mut rank = 0;
    for t in 0..rows.min(cols) {
        // smallest nonzero entry of the trailing block becomes the pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                let x = w.a.get(i, j);
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < w.a.get(bi, bj).abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        w.row_swap(t, pi);
        w.col_swap(t, pj);

        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if w.a.get(i, t).is_zero() {
                    continue;
                }
                let q = w.a.get(i, t).div_floor(w.a.get(t, t));
                w.row_add(i, t, &-q);
                if !w.a.get(i, t).is_zero() {
                    w.row_swap(i, t);
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if w.a.get(t, j).is_zero() {
                    continue;
                }
                let q = w.a.get(t, j).div_floor(w.a.get(t, t));
                w.col_add(j, t, &-q);
                if !w.a.get(t, j).is_zero() {
                    w.col_swap(j, t);
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            let pivot = w.a.get(t, t).clone();
            let offender = (t + 1..rows).find(|&i| {
                (t + 1..cols).any(|j| !w.a.get(i, j).is_multiple_of(&pivot))
            });
            match offender {
                Some(i) => w.row_add(t, i, &BigInt::one()),
                None => break,
            }
        }
        if w.a.get(t, t).is_negative() {
            w.row_negate(t);
        }
        rank += 1;
    }
    Smith { u: w.u, u_inv: w.u_inv, d: w.a, v: w.v, rank }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(m: &IntMatrix) -> Smith {
        let s = smith_normal_form(m);
        assert_eq!(&(&s.u * m) * &s.v, s.d);
        assert!(s.u.is_unimodular());
        assert!(s.v.is_unimodular());
        assert_eq!(&s.u * &s.u_inv, IntMatrix::identity(m.rows()));
        assert!(s.d.is_diagonal());
        let diag = s.diagonal();
        for w in diag.windows(2) {
            if !w[1].is_zero() {
                assert!(w[1].is_multiple_of(&w[0]));
            }
        }
        s
    }

    #[test]
    fn identity_is_fixed() {
        let s = check(&IntMatrix::identity(2));
        assert_eq!(s.d, IntMatrix::identity(2));
        assert_eq!(s.u, IntMatrix::identity(2));
        assert_eq!(s.v, IntMatrix::identity(2));
    }

    #[test]
    fn two_by_two_example() {
        // minor gcds: gcd of entries 2, det -8 => (2, 4)
        let s = check(&IntMatrix::from_rows(&[[2, 4], [6, 8]]));
        assert_eq!(s.diagonal(), vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn rectangular_and_degenerate() {
        let s = check(&IntMatrix::from_rows(&[[0, 0, 0], [0, 0, 0]]));
        assert_eq!(s.rank, 0);
        let s = check(&IntMatrix::from_rows(&[[4, 6, 10], [6, 9, 15]]));
        assert_eq!(s.rank, 1);
        assert_eq!(s.diagonal()[0], BigInt::from(1));
        check(&IntMatrix::zeros(0, 3));
    }
}

//! Generators of GL_n(Z) and finite images of the group they generate.

use std::collections::{HashSet, VecDeque};

use super::matrix::IntMatrix;

/// A generating set of GL_n(Z).
///
/// For n = 2 this is `-I`, `diag(1,-1)`, the transvection `[[1,1],[0,1]]`
/// and the swap. For n >= 3: a transposition, the cyclic shift, one sign
/// flip and one elementary transvection.
pub fn glnz_generators(n: usize) -> Vec<IntMatrix> {
    assert!(n >= 1, "GL_0(Z) has no generators");
    match n {
        1 => vec![IntMatrix::from_rows(&[[-1]])],
        2 => vec![
            IntMatrix::from_rows(&[[-1, 0], [0, -1]]),
            IntMatrix::from_rows(&[[1, 0], [0, -1]]),
            IntMatrix::from_rows(&[[1, 1], [0, 1]]),
            IntMatrix::from_rows(&[[0, 1], [1, 0]]),
        ],
        _ => {
            let mut swap = IntMatrix::identity(n);
            swap.swap_rows(0, 1);
            let mut cycle = IntMatrix::zeros(n, n);
            for i in 0..n {
                cycle.set((i + 1) % n, i, 1.into());
            }
            let mut flip = IntMatrix::identity(n);
            flip.negate_row(0);
            let mut transvection = IntMatrix::identity(n);
            transvection.set(0, 1, 1.into());
            vec![swap, cycle, flip, transvection]
        }
    }
}

/// Square matrix over Z/m, row-major, entries in `[0, m)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModMatrix {
    pub n: usize,
    pub m: i64,
    pub entries: Vec<i64>,
}

impl ModMatrix {
    pub fn identity(n: usize, m: i64) -> Self {
        let mut entries = vec![0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1 % m;
        }
        ModMatrix { n, m, entries }
    }

    pub fn from_int(g: &IntMatrix, m: i64) -> Self {
        assert!(g.is_square());
        let n = g.rows();
        let entries = (0..n * n).map(|k| g.get_i64(k / n, k % n).rem_euclid(m)).collect();
        ModMatrix { n, m, entries }
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.n + j]
    }

    pub fn mul(&self, other: &ModMatrix) -> ModMatrix {
        let n = self.n;
        let mut entries = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                let mut s = 0i128;
                for k in 0..n {
                    s += self.get(i, k) as i128 * other.get(k, j) as i128;
                }
                entries[i * n + j] = s.rem_euclid(self.m as i128) as i64;
            }
        }
        ModMatrix { n, m: self.m, entries }
    }

    /// Determinant reduced mod m, by cofactor expansion (small n only).
    pub fn det(&self) -> i64 {
        fn rec(a: &[i64], n: usize, m: i64) -> i64 {
            if n == 0 {
                return 1 % m;
            }
            if n == 1 {
                return a[0].rem_euclid(m);
            }
            let mut total = 0i128;
            for c in 0..n {
                let mut minor = Vec::with_capacity((n - 1) * (n - 1));
                for i in 1..n {
                    for j in 0..n {
                        if j != c {
                            minor.push(a[i * n + j]);
                        }
                    }
                }
                let sign = if c % 2 == 0 { 1 } else { -1 };
                total += sign * a[c] as i128 * rec(&minor, n - 1, m) as i128;
            }
            total.rem_euclid(m as i128) as i64
        }
        rec(&self.entries, self.n, self.m)
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        self.entries.chunks(self.n).map(<[i64]>::to_vec).collect()
    }
}

/// The subgroup of GL_n(Z/m) generated by the reductions of `gens`, by BFS
/// from the identity. Order of discovery is deterministic.
pub fn closure_mod(gens: &[IntMatrix], m: i64) -> Vec<ModMatrix> {
    let n = gens.first().map_or(0, IntMatrix::rows);
    let gens: Vec<ModMatrix> = gens.iter().map(|g| ModMatrix::from_int(g, m)).collect();
    let id = ModMatrix::identity(n, m);
    let mut seen: HashSet<ModMatrix> = HashSet::from([id.clone()]);
    let mut order = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in &gens {
            let y = x.mul(g);
            if seen.insert(y.clone()) {
                order.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    order
}

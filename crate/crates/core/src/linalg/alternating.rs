//! Normal form of alternating forms valued in (1/m)Z/Z.

use super::matrix::IntMatrix;
use crate::error::{Error, Result};
use num_integer::Integer;

/// Orders `(s_1, ..., s_l)` of the hyperbolic blocks of the alternating form
/// `x, y -> x^T B y / m` on `Z^n`, ascending with `s_1 | ... | s_l`, blocks of
/// order 1 dropped. `B` is read modulo `m`.
pub fn alternating_divisors(b: &IntMatrix, m: i64) -> Result<Vec<i64>> {
    if !b.is_square() {
        return Err(Error::Dimension("alternating form must be square".into()));
    }
    if m < 1 {
        return Err(Error::InvalidInput("modulus must be positive".into()));
    }
    let n = b.rows();
    let mut a = vec![vec![0i128; n]; n];
    for i in 0..n {
        if b.get_i64(i, i).rem_euclid(m) != 0 {
            return Err(Error::InvalidInput("alternating form has a nonzero diagonal entry".into()));
        }
        for j in i + 1..n {
            if (b.get_i64(i, j) + b.get_i64(j, i)).rem_euclid(m) != 0 {
                return Err(Error::InvalidInput("form is not skew-symmetric".into()));
            }
            let x = b.get_i64(i, j).rem_euclid(m) as i128;
            a[i][j] = x;
            a[j][i] = -x;
        }
    }
    let coefficients = skew_reduce(&mut a);
    let mut orders: Vec<i64> = coefficients
        .into_iter()
        .map(|c| m / (c as i64).gcd(&m))
        .filter(|&s| s > 1)
        .collect();
    orders.sort_unstable();
    Ok(orders)
}

// e_t <- e_t + f e_s, applied as a congruence.
fn congruence_add(a: &mut [Vec<i128>], t: usize, s: usize, f: i128) {
    if f == 0 {
        return;
    }
    let n = a.len();
    for j in 0..n {
        let v = a[s][j];
        a[t][j] += f * v;
    }
    for row in a.iter_mut().take(n) {
        let v = row[s];
        row[t] += f * v;
    }
}

fn congruence_swap(a: &mut [Vec<i128>], x: usize, y: usize) {
    if x == y {
        return;
    }
    a.swap(x, y);
    for row in a.iter_mut() {
        row.swap(x, y);
    }
}

/// Brings a skew-symmetric integer matrix to block form with blocks
/// `[[0, c], [-c, 0]]`, returning the nonzero `c` (up to sign, divisibility chain).
fn skew_reduce(a: &mut [Vec<i128>]) -> Vec<i128> {
    let n = a.len();
    let mut out = Vec::new();
    let mut k = 0;
    while k + 1 < n {
        let mut best: Option<(usize, usize)> = None;
        for i in k..n {
            for j in i + 1..n {
                if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((i, j)) = best else { break };
        congruence_swap(a, k, i);
        // j > i, so after the first swap j is unaffected unless j == k
        let j = if j == k { i } else { j };
        congruence_swap(a, k + 1, j);

        loop {
            let mut clean = true;
            for t in k + 2..n {
                let p = a[k][k + 1];
                if a[k][t] != 0 {
                    let q = Integer::div_floor(&a[k][t], &p);
                    congruence_add(a, t, k + 1, -q);
                    if a[k][t] != 0 {
                        congruence_swap(a, k + 1, t);
                        clean = false;
                        continue;
                    }
                }
                let p = a[k][k + 1];
                if a[k + 1][t] != 0 {
                    // a[k+1][k] = -p
                    let q = Integer::div_floor(&a[k + 1][t], &(-p));
                    congruence_add(a, t, k, -q);
                    if a[k + 1][t] != 0 {
                        congruence_swap(a, k, t);
                        congruence_swap(a, k, k + 1);
                        clean = false;
                    }
                }
            }
            if !clean {
                continue;
            }
            let p = a[k][k + 1];
            let offender = (k + 2..n).find(|&i| (k + 2..n).any(|j| a[i][j] % p != 0));
            match offender {
                Some(i) => congruence_add(a, k, i, 1),
                None => break,
            }
        }
        out.push(a[k][k + 1].abs());
        k += 2;
    }
    out
}

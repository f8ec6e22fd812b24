//! Diagonal quadratic forms `<t_I, ...>` over Laurent polynomials in n
//! variables with quadratically closed coefficients, up to isometry.
//!
//! A subset I of {1..n} is stored as a bitmask (bit i-1 for variable t_i).

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::matrix::combinations;

/// `<t_{I_1}, ..., t_{I_d}>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentDiagonalForm {
    n: usize,
    entries: Vec<u32>,
}

impl LaurentDiagonalForm {
    pub fn new(n: usize, entries: Vec<u32>) -> Result<Self> {
        if n > 31 {
            return Err(Error::InvalidInput("at most 31 variables are supported".into()));
        }
        if entries.iter().any(|&e| e >> n != 0) {
            return Err(Error::InvalidInput(format!("entry uses a variable beyond t{n}")));
        }
        Ok(LaurentDiagonalForm { n, entries })
    }

    /// Builds a form from index lists, e.g. `[[], [1], [1, 2]]` for `<1, t1, t1t2>`.
    pub fn from_subsets(n: usize, subsets: &[Vec<usize>]) -> Result<Self> {
        let mut entries = Vec::with_capacity(subsets.len());
        for s in subsets {
            let mut mask = 0u32;
            for &i in s {
                if i == 0 || i > n {
                    return Err(Error::InvalidInput(format!("variable index {i} outside 1..={n}")));
                }
                mask |= 1 << (i - 1);
            }
            entries.push(mask);
        }
        LaurentDiagonalForm::new(n, entries)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }
}

impl fmt::Display for LaurentDiagonalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|&m| monomial(m)).collect();
        write!(f, "<{}>", parts.join(", "))
    }
}

/// `t1t3` for the mask of {1, 3}; `1` for the empty set.
pub fn monomial(mask: u32) -> String {
    if mask == 0 {
        return "1".into();
    }
    (0..32).filter(|i| mask >> i & 1 == 1).map(|i| format!("t{}", i + 1)).collect()
}

/// Isometry class: anisotropic part `<t_I : I in T>` plus `v` hyperbolic planes.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct WittClass {
    pub anisotropic: Vec<u32>,
    pub hyperbolic_rank: usize,
}

impl WittClass {
    pub fn dim(&self) -> usize {
        self.anisotropic.len() + 2 * self.hyperbolic_rank
    }

    /// The anisotropic part as lists of variable indices.
    pub fn anisotropic_subsets(&self) -> Vec<Vec<usize>> {
        self.anisotropic.iter().map(|&m| (0..32).filter(|i| m >> i & 1 == 1).map(|i| i + 1).collect()).collect()
    }

    pub fn label(&self) -> String {
        let mut parts = Vec::new();
        if !self.anisotropic.is_empty() {
            let e: Vec<String> = self.anisotropic.iter().map(|&m| monomial(m)).collect();
            parts.push(format!("<{}>", e.join(", ")));
        }
        if self.hyperbolic_rank > 0 {
            parts.push(format!("H^{}", self.hyperbolic_rank));
        }
        if parts.is_empty() {
            return "0".into();
        }
        parts.join(" + ")
    }
}

/// Cancels pairs `<t_I, t_I>` (hyperbolic because -1 is a square); what
/// remains has distinct entries and is anisotropic.
pub fn springer_normal_form(q: &LaurentDiagonalForm) -> WittClass {
    let mut mult: BTreeMap<u32, usize> = BTreeMap::new();
    for &e in &q.entries {
        *mult.entry(e).or_default() += 1;
    }
    let anisotropic: Vec<u32> = mult.iter().filter(|(_, &c)| c % 2 == 1).map(|(&m, _)| m).collect();
    let hyperbolic_rank = (q.dim() - anisotropic.len()) / 2;
    WittClass { anisotropic, hyperbolic_rank }
}

pub fn is_isometric(a: &LaurentDiagonalForm, b: &LaurentDiagonalForm) -> Result<bool> {
    if a.n != b.n {
        return Err(Error::Dimension(format!("forms in {} and {} variables", a.n, b.n)));
    }
    Ok(a.dim() == b.dim() && springer_normal_form(a) == springer_normal_form(b))
}

/// Isometry classes of d-dimensional forms in n variables: all sets T of
/// distinct subsets with `|T| <= d` and `|T| = d (mod 2)`.
pub fn classify_od(d: usize, n: usize) -> Result<Vec<WittClass>> {
    if d == 0 {
        return Err(Error::InvalidInput("dimension must be positive".into()));
    }
    if n > 4 {
        return Err(Error::InvalidInput("enumeration is limited to n <= 4; use the count for larger n".into()));
    }
    let m = 1usize << n;
    let mut out = Vec::new();
    for j in (d % 2..=d.min(m)).step_by(2) {
        for combo in combinations(m, j) {
            out.push(WittClass {
                anisotropic: combo.iter().map(|&x| x as u32).collect(),
                hyperbolic_rank: (d - j) / 2,
            });
        }
    }
    Ok(out)
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}

/// `sum_{j = d (mod 2), j <= min(d, 2^n)} C(2^n, j)`.
pub fn count_od(d: usize, n: usize) -> Result<u128> {
    if n > 7 {
        return Err(Error::InvalidInput("count overflows for n > 7".into()));
    }
    let m = 1u128 << n;
    Ok((d % 2..=d.min(m as usize)).step_by(2).map(|j| binomial(m, j as u128)).sum())
}

/// Number of subsets of {1..n} of cardinality `<= d` with the parity of d:
/// the size of the index set used by the subset parametrization of these
/// classes. It disagrees with `count_od` as soon as n >= 1 and d >= 2.
pub fn subset_parametrization_count(d: usize, n: usize) -> u128 {
    (d % 2..=d.min(n)).step_by(2).map(|j| binomial(n as u128, j as u128)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn form(n: usize, s: &[&[usize]]) -> LaurentDiagonalForm {
        LaurentDiagonalForm::from_subsets(n, &s.iter().map(|x| x.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn normal_forms() {
        let w = springer_normal_form(&form(0, &[&[], &[]]));
        assert_eq!((w.anisotropic.len(), w.hyperbolic_rank), (0, 1));
        let w = springer_normal_form(&form(1, &[&[], &[1]]));
        assert_eq!(w.anisotropic, vec![0, 1]);
        assert_eq!(w.hyperbolic_rank, 0);
        let w = springer_normal_form(&form(2, &[&[1], &[2], &[1], &[1, 2]]));
        assert_eq!(w.anisotropic_subsets(), vec![vec![2], vec![1, 2]]);
        assert_eq!(w.hyperbolic_rank, 1);
    }

    #[test]
    fn isometry() {
        let q = form(2, &[&[1], &[2]]);
        assert!(is_isometric(&q, &q).unwrap());
        assert!(!is_isometric(&q, &form(2, &[&[], &[1, 2]])).unwrap());
        assert!(is_isometric(&form(2, &[&[], &[], &[1], &[1]]), &form(2, &[&[], &[2], &[], &[2]])).unwrap());
    }

    #[test]
    fn counts() {
        assert_eq!(classify_od(2, 1).unwrap().len(), 2);
        assert_eq!(classify_od(1, 1).unwrap().len(), 2);
        assert_eq!(classify_od(4, 2).unwrap().len(), 8);
        assert_eq!(count_od(4, 2).unwrap(), 8);
        assert_eq!(subset_parametrization_count(2, 1), 1);
    }

    #[test]
    fn labels() {
        let w = springer_normal_form(&form(2, &[&[1], &[2], &[], &[]]));
        assert_eq!(w.label(), "<t1, t2> + H^1");
    }
}

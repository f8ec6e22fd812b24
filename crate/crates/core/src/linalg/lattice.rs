//! Sublattices of Z^k given by generator columns, and finite quotients
//! between nested lattices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::finab::FinAb;
use super::matrix::IntMatrix;
use super::snf::{smith_normal_form, Smith};
use crate::error::{Error, Result};

/// Z-basis (as columns) of `{ z : m z = 0 }`.
pub fn nullspace(m: &IntMatrix) -> IntMatrix {
    let s = smith_normal_form(m);
    let keep: Vec<usize> = (s.rank..m.cols()).collect();
    s.v.select_columns(&keep)
}

/// Z-basis (as columns) of the column span of `g`.
pub fn column_basis(g: &IntMatrix) -> IntMatrix {
    let s = smith_normal_form(g);
    let mut cols = Vec::with_capacity(s.rank);
    for i in 0..s.rank {
        let d = s.d.get(i, i);
        cols.push(s.u_inv.column(i).into_iter().map(|x| x * d).collect::<Vec<_>>());
    }
    IntMatrix::from_columns(g.rows(), &cols)
}

/// Generators of `{ x in Z^k : f x in span(rel) }`, where `f` is m×k and
/// `rel` is m×r.
pub fn preimage(f: &IntMatrix, rel: &IntMatrix) -> Result<IntMatrix> {
    let joined = f.hconcat(rel)?;
    let ns = nullspace(&joined);
    let top: Vec<usize> = (0..f.cols()).collect();
    Ok(ns.select_rows(&top))
}

/// A lattice with a fixed basis, able to express members in that basis.
#[derive(Clone, Debug)]
pub struct Lattice {
    basis: IntMatrix,
    snf: Smith,
}

impl Lattice {
    pub fn spanned_by(generators: &IntMatrix) -> Self {
        let basis = column_basis(generators);
        let snf = smith_normal_form(&basis);
        Lattice { basis, snf }
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.rows()
    }

    /// Coordinates of `x` in the basis, or `None` if `x` is not in the lattice.
    pub fn coordinates(&self, x: &[BigInt]) -> Option<Vec<BigInt>> {
        let ux = self.snf.u.mul_vec(x);
        let r = self.rank();
        if ux[r..].iter().any(|v| !v.is_zero()) {
            return None;
        }
        let mut z = Vec::with_capacity(r);
        for (i, val) in ux.iter().take(r).enumerate() {
            let (q, rem) = val.div_rem(self.snf.d.get(i, i));
            if !rem.is_zero() {
                return None;
            }
            z.push(q);
        }
        Some(self.snf.v.mul_vec(&z))
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        self.coordinates(x).is_some()
    }
}

/// `outer / inner` for lattices `inner ⊆ outer` of equal rank, presented in
/// canonical elementary-divisor form.
#[derive(Clone, Debug)]
pub struct LatticeQuotient {
    group: FinAb,
    outer: Lattice,
    // rows of the SNF left transform belonging to nontrivial divisors
    to_canon: IntMatrix,
    // ambient representatives of the canonical generators (columns)
    generators: IntMatrix,
}

impl LatticeQuotient {
    pub fn new(outer_gens: &IntMatrix, inner_gens: &IntMatrix) -> Result<Self> {
        let outer = Lattice::spanned_by(outer_gens);
        let r = outer.rank();
        let mut coords = Vec::with_capacity(inner_gens.cols());
        for j in 0..inner_gens.cols() {
            let c = outer
                .coordinates(&inner_gens.column(j))
                .ok_or_else(|| Error::Invariant("inner lattice not contained in outer".into()))?;
            coords.push(c);
        }
        let y = IntMatrix::from_columns(r, &coords);
        let s = smith_normal_form(&y);
        if s.rank < r {
            return Err(Error::Infinite);
        }
        let mut divisors = Vec::new();
        let mut keep = Vec::new();
        for i in 0..r {
            let d = s.d.get(i, i);
            if !d.is_one() {
                divisors.push(d.to_i64().ok_or(Error::Invariant("divisor exceeds i64".into()))?);
                keep.push(i);
            }
        }
        let to_canon = s.u.select_rows(&keep);
        let gens_in_basis = s.u_inv.select_columns(&keep);
        let generators = outer.basis() * &gens_in_basis;
        Ok(LatticeQuotient { group: FinAb::from_canonical(divisors)?, outer, to_canon, generators })
    }

    pub fn group(&self) -> &FinAb {
        &self.group
    }

    /// Canonical coordinates of the class of `x` (which must lie in the outer lattice).
    pub fn class_of(&self, x: &[BigInt]) -> Result<Vec<i64>> {
        let c = self
            .outer
            .coordinates(x)
            .ok_or_else(|| Error::InvalidInput("vector is not in the outer lattice".into()))?;
        let raw = self.to_canon.mul_vec(&c);
        Ok(raw
            .iter()
            .zip(self.group.divisors())
            .map(|(v, &d)| v.mod_floor(&BigInt::from(d)).to_i64().expect("reduced"))
            .collect())
    }

    /// An ambient vector representing the class with the given canonical coordinates.
    pub fn representative(&self, coords: &[i64]) -> Vec<BigInt> {
        assert_eq!(coords.len(), self.group.rank());
        let mut out = vec![BigInt::zero(); self.generators.rows()];
        for (j, &c) in coords.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let c = BigInt::from(c);
            for (i, o) in out.iter_mut().enumerate() {
                *o += self.generators.get(i, j) * &c;
            }
        }
        out
    }

    /// Representative of the j-th canonical generator.
    pub fn generator(&self, j: usize) -> Vec<BigInt> {
        self.generators.column(j)
    }
}

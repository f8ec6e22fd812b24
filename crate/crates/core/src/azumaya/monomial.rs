//! Monomial matrices whose nonzero entries are roots of unity, with phases
//! kept as exact fractions in Q/Z.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// An element of Q/Z, stored in `[0, 1)`; `Phase(p)` stands for `exp(2 pi i p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Phase(Ratio<i64>);

impl Phase {
    pub fn new(num: i64, den: i64) -> Self {
        Phase::reduce(Ratio::new(num, den))
    }

    fn reduce(r: Ratio<i64>) -> Self {
        let f = r - r.floor();
        Phase(f)
    }

    pub fn zero() -> Self {
        Phase(Ratio::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn scale(self, k: i64) -> Self {
        Phase::reduce(self.0 * Ratio::from_integer(k))
    }

    /// A square root of `exp(2 pi i p)`: the phase `p / 2`.
    pub fn half(self) -> Self {
        Phase::reduce(self.0 / Ratio::from_integer(2))
    }
}

impl Add for Phase {
    type Output = Phase;
    fn add(self, o: Phase) -> Phase {
        Phase::reduce(self.0 + o.0)
    }
}

impl Sub for Phase {
    type Output = Phase;
    fn sub(self, o: Phase) -> Phase {
        Phase::reduce(self.0 - o.0)
    }
}

impl Neg for Phase {
    type Output = Phase;
    fn neg(self) -> Phase {
        Phase::reduce(-self.0)
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_zero() {
            write!(f, "0")
        } else if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl Serialize for Phase {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `M e_j = exp(2 pi i phases[j]) e_{perm[j]}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct MonomialMatrix {
    perm: Vec<usize>,
    phases: Vec<Phase>,
}

impl MonomialMatrix {
    pub fn new(perm: Vec<usize>, phases: Vec<Phase>) -> Result<Self> {
        let d = perm.len();
        if phases.len() != d {
            return Err(Error::Dimension("permutation and phase vector differ in length".into()));
        }
        let mut seen = vec![false; d];
        for &p in &perm {
            if p >= d || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidInput("not a permutation".into()));
            }
        }
        Ok(MonomialMatrix { perm, phases })
    }

    pub fn identity(d: usize) -> Self {
        MonomialMatrix { perm: (0..d).collect(), phases: vec![Phase::zero(); d] }
    }

    /// `e_i -> e_{i+1 mod d}`.
    pub fn cyclic_shift(d: usize) -> Self {
        MonomialMatrix { perm: (0..d).map(|i| (i + 1) % d).collect(), phases: vec![Phase::zero(); d] }
    }

    /// `diag(1, zeta_d, ..., zeta_d^{d-1})`.
    pub fn clock(d: usize) -> Self {
        MonomialMatrix { perm: (0..d).collect(), phases: (0..d).map(|i| Phase::new(i as i64, d as i64)).collect() }
    }

    pub fn size(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn phases(&self) -> &[Phase] {
        &self.phases
    }

    /// Entry `(i, j)`, `None` when it is zero.
    pub fn entry(&self, i: usize, j: usize) -> Option<Phase> {
        (self.perm[j] == i).then_some(self.phases[j])
    }

    pub fn mul(&self, other: &MonomialMatrix) -> Result<MonomialMatrix> {
        if self.size() != other.size() {
            return Err(Error::Dimension(format!("{}x{} times {}x{}", self.size(), self.size(), other.size(), other.size())));
        }
        let perm = other.perm.iter().map(|&p| self.perm[p]).collect();
        let phases = (0..self.size()).map(|j| other.phases[j] + self.phases[other.perm[j]]).collect();
        Ok(MonomialMatrix { perm, phases })
    }

    pub fn inverse(&self) -> MonomialMatrix {
        let d = self.size();
        let mut perm = vec![0; d];
        let mut phases = vec![Phase::zero(); d];
        for j in 0..d {
            perm[self.perm[j]] = j;
            phases[self.perm[j]] = -self.phases[j];
        }
        MonomialMatrix { perm, phases }
    }

    pub fn pow(&self, k: u64) -> MonomialMatrix {
        let mut out = MonomialMatrix::identity(self.size());
        for _ in 0..k {
            out = out.mul(self).expect("same size");
        }
        out
    }

    pub fn scale(&self, c: Phase) -> MonomialMatrix {
        MonomialMatrix { perm: self.perm.clone(), phases: self.phases.iter().map(|&p| p + c).collect() }
    }

    /// `Some(c)` when `self = exp(2 pi i c) * other`.
    pub fn scalar_ratio(&self, other: &MonomialMatrix) -> Option<Phase> {
        if self.perm != other.perm || self.size() == 0 {
            return None;
        }
        let c = self.phases[0] - other.phases[0];
        (0..self.size()).all(|j| self.phases[j] - other.phases[j] == c).then_some(c)
    }

    /// `Some(c)` when `self` is the scalar matrix `exp(2 pi i c)`.
    pub fn as_scalar(&self) -> Option<Phase> {
        self.scalar_ratio(&MonomialMatrix::identity(self.size()))
    }

    /// The phase `c` with `other * self = exp(2 pi i c) * self * other`.
    pub fn commutator_phase(&self, other: &MonomialMatrix) -> Result<Option<Phase>> {
        Ok(other.mul(self)?.scalar_ratio(&self.mul(other)?))
    }

    /// Kronecker product `self (x) other`, indexing `(i, k) -> i * other.size() + k`.
    pub fn kron(&self, other: &MonomialMatrix) -> MonomialMatrix {
        let (p, q) = (self.size(), other.size());
        let mut perm = vec![0; p * q];
        let mut phases = vec![Phase::zero(); p * q];
        for i in 0..p {
            for k in 0..q {
                perm[i * q + k] = self.perm[i] * q + other.perm[k];
                phases[i * q + k] = self.phases[i] + other.phases[k];
            }
        }
        MonomialMatrix { perm, phases }
    }
}

impl fmt::Display for MonomialMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.size();
        let rows: Vec<String> = (0..d)
            .map(|i| {
                let r: Vec<String> = (0..d)
                    .map(|j| match self.entry(i, j) {
                        None => "0".into(),
                        Some(p) if p.is_zero() => "1".into(),
                        Some(p) => format!("z^{p}"),
                    })
                    .collect();
                format!("[{}]", r.join(", "))
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

/// Standard pairs `(a_j, b_j)` generating `H(s_1, ..., s_l)` inside
/// `PGL_d`: `a_j` is the cyclic shift and `b_j` the clock matrix on the j-th
/// tensor factor of size `s_j`, tensored with the identity of size
/// `d / prod s_j`. They satisfy `b_j a_j = zeta_{s_j} a_j b_j`.
pub fn mumford_generators(chain: &[i64], d: usize) -> Result<Vec<(MonomialMatrix, MonomialMatrix)>> {
    if chain.iter().any(|&s| s < 1) {
        return Err(Error::InvalidInput("chain entries must be positive".into()));
    }
    let prod: i64 = chain.iter().product();
    if d == 0 || d as i64 % prod != 0 {
        return Err(Error::InvalidInput(format!("chain product {prod} does not divide degree {d}")));
    }
    let rest = MonomialMatrix::identity(d / prod as usize);
    let factor = |j: usize, m: MonomialMatrix| -> MonomialMatrix {
        let mut out = MonomialMatrix::identity(1);
        for (k, &s) in chain.iter().enumerate() {
            out = out.kron(&if k == j { m.clone() } else { MonomialMatrix::identity(s as usize) });
        }
        out.kron(&rest)
    };
    Ok(chain
        .iter()
        .enumerate()
        .map(|(j, &s)| (factor(j, MonomialMatrix::cyclic_shift(s as usize)), factor(j, MonomialMatrix::clock(s as usize))))
        .collect())
}

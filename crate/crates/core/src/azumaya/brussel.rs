//! Normal form `A(r_1, s_1, 1, s_2, ..., 1, s_l)` of an irreducible loop
//! cocycle `Z^n -> H(s_1, ..., s_l)`, up to GL_n(Z) and conjugation.

use std::fmt;

use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::MumfordDatum;
use crate::error::{Error, Result};
use crate::linalg::{alternating_divisors, IntMatrix};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct BrusselForm {
    pub n: usize,
    pub chain: Vec<i64>,
    /// Unit mod `s_1`, the smaller of `r` and `s_1 - r`; 1 when `n > 2l`.
    pub r1: i64,
}

impl BrusselForm {
    /// Twist exponent of each block: `r_1` for the first, 1 for the others.
    pub fn twists(&self) -> Vec<i64> {
        (0..self.chain.len()).map(|j| if j == 0 { self.r1 } else { 1 }).collect()
    }

    pub fn degree(&self) -> i64 {
        self.chain.iter().product()
    }

    /// Prime-power degrees of the primary components of the algebra.
    pub fn primary_degrees(&self) -> Vec<i64> {
        let mut d = self.degree();
        let mut out = Vec::new();
        let mut p = 2;
        while d > 1 {
            if d % p == 0 {
                let mut q = 1;
                while d % p == 0 {
                    d /= p;
                    q *= p;
                }
                out.push(q);
            }
            p += 1;
        }
        out
    }
}

impl fmt::Display for BrusselForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.twists().iter().zip(&self.chain).map(|(r, s)| format!("{r},{s}")).collect();
        write!(f, "A({})", parts.join(","))
    }
}

/// The cyclic algebra `(t_i, t_j)^p_q`: `X^q = t_i, Y^q = t_j^p, YX = zeta_q XY`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CyclicBlock {
    pub x_variable: usize,
    pub y_variable: usize,
    pub q: i64,
    pub p: i64,
}

impl fmt::Display for CyclicBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let y = if self.p == 1 { format!("t{}", self.y_variable) } else { format!("t{}^{}", self.y_variable, self.p) };
        let zeta = if self.q == 2 { "-".to_string() } else { format!("zeta_{} ", self.q) };
        write!(f, "(X^{q} = t{x}, Y^{q} = {y}, YX = {zeta}XY)", q = self.q, x = self.x_variable)
    }
}

/// Tensor factors of the normal form, block j over `(t_{2j-1}, t_{2j})`.
pub fn cyclic_presentation(form: &BrusselForm) -> Vec<CyclicBlock> {
    form.twists()
        .iter()
        .zip(&form.chain)
        .enumerate()
        .map(|(j, (&p, &q))| CyclicBlock { x_variable: 2 * j + 1, y_variable: 2 * j + 2, q, p })
        .collect()
}

/// Gram matrix of the pairing on the tuple, scaled to integers mod the exponent.
fn gram_matrix(datum: &MumfordDatum, tuple: &[Vec<i64>]) -> Result<IntMatrix> {
    let m = datum.exponent();
    let n = tuple.len();
    let mut rows = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            let p = datum.pairing(&tuple[i], &tuple[j])?;
            rows[i][j] = p.numer() * (m / p.denom());
        }
    }
    Ok(IntMatrix::from_rows(&rows))
}

/// The wedge invariant: determinant of the coordinate matrix mod `s_1`,
/// defined when `n = 2l`.
pub fn wedge_invariant(datum: &MumfordDatum, tuple: &[Vec<i64>]) -> Result<i64> {
    if tuple.len() != 2 * datum.blocks() {
        return Err(Error::Dimension("the wedge invariant needs exactly 2l entries".into()));
    }
    let det = IntMatrix::from_rows(tuple).det()?;
    let s1 = datum.chain()[0];
    Ok((det % s1).to_i64().expect("small").rem_euclid(s1))
}

pub fn brussel_normal_form(datum: &MumfordDatum, tuple: &[Vec<i64>]) -> Result<BrusselForm> {
    if !datum.generates(tuple)? {
        return Err(Error::NotGenerating);
    }
    let n = tuple.len();
    let chain = alternating_divisors(&gram_matrix(datum, tuple)?, datum.exponent())?;
    if chain != datum.chain() {
        return Err(Error::Invariant(format!("pulled-back pairing has chain {chain:?}, expected {:?}", datum.chain())));
    }
    let s1 = chain[0];
    let r1 = if n == 2 * chain.len() {
        let delta = wedge_invariant(datum, tuple)?;
        let g = delta.extended_gcd(&s1);
        if g.gcd != 1 {
            return Err(Error::Invariant(format!("wedge invariant {delta} is not a unit mod {s1}")));
        }
        let r = g.x.rem_euclid(s1);
        r.min(s1 - r)
    } else {
        1
    };
    Ok(BrusselForm { n, chain, r1 })
}

/// Parses a word such as `2a1+3b2-b1`, `3b` or `0` into coordinates on
/// `a_1, b_1, ..., a_l, b_l`; a bare `a` or `b` means block 1.
pub fn parse_element(word: &str, blocks: usize) -> Result<Vec<i64>> {
    let bad = || Error::InvalidInput(format!("malformed tuple entry {word:?}"));
    let mut out = vec![0i64; 2 * blocks];
    let s: String = word.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(bad());
    }
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let mut sign = 1;
        if chars[i] == '+' || chars[i] == '-' {
            if chars[i] == '-' {
                sign = -1;
            }
            i += 1;
        }
        let start = i;
        while i < chars.len() && chars[i].is_ascii_digit() {
            i += 1;
        }
        let coeff: Option<i64> = if i > start { Some(s[start..i].parse().map_err(|_| bad())?) } else { None };
        if i < chars.len() && (chars[i] == 'a' || chars[i] == 'b') {
            let letter = chars[i];
            i += 1;
            let bstart = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let block: usize = if i > bstart { s[bstart..i].parse().map_err(|_| bad())? } else { 1 };
            if block == 0 || block > blocks {
                return Err(Error::InvalidInput(format!("block {block} out of range in {word:?}")));
            }
            let k = 2 * (block - 1) + (letter == 'b') as usize;
            out[k] += sign * coeff.unwrap_or(1);
        } else if coeff == Some(0) {
            // "0" stands for the identity
        } else {
            return Err(bad());
        }
        if i < chars.len() && chars[i] != '+' && chars[i] != '-' {
            return Err(bad());
        }
    }
    Ok(out)
}

/// Semicolon-separated entries, e.g. `a;3b`.
pub fn parse_tuple(text: &str, blocks: usize) -> Result<Vec<Vec<i64>>> {
    text.split(';').map(|w| parse_element(w, blocks)).collect()
}

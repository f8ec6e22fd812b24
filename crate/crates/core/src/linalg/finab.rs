//! Finite abelian groups in elementary-divisor form, their elements, and
//! homomorphisms between them.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::Serialize;

use super::lattice::{preimage, LatticeQuotient};
use super::matrix::IntMatrix;
use crate::error::{Error, Result};

/// `Z/d_1 x ... x Z/d_k` with `2 <= d_1 | d_2 | ... | d_k`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FinAb {
    divisors: Vec<i64>,
}

impl FinAb {
    pub fn trivial() -> Self {
        FinAb { divisors: Vec::new() }
    }

    pub fn cyclic(m: i64) -> Self {
        FinAb::from_divisors(&[m]).expect("positive modulus")
    }

    /// Accepts a chain that is already canonical.
    pub fn from_canonical(divisors: Vec<i64>) -> Result<Self> {
        if divisors.iter().any(|&d| d < 2) {
            return Err(Error::InvalidInput(format!("divisor chain {divisors:?} contains an entry below 2")));
        }
        if divisors.windows(2).any(|w| w[1] % w[0] != 0) {
            return Err(Error::InvalidInput(format!("divisor chain {divisors:?} is not a divisibility chain")));
        }
        Ok(FinAb { divisors })
    }

    /// `Z/m_1 x ... x Z/m_k` for arbitrary positive moduli, canonicalized.
    pub fn from_divisors(moduli: &[i64]) -> Result<Self> {
        if moduli.iter().any(|&m| m < 1) {
            return Err(Error::InvalidInput("cyclic factor orders must be positive".into()));
        }
        FinAb::from_relations(&IntMatrix::diagonal(moduli))
    }

    /// `Z^k / (column span of rel)`, where `rel` has k rows.
    pub fn from_relations(rel: &IntMatrix) -> Result<Self> {
        let q = LatticeQuotient::new(&IntMatrix::identity(rel.rows()), rel)?;
        Ok(q.group().clone())
    }

    pub fn divisors(&self) -> &[i64] {
        &self.divisors
    }

    pub fn rank(&self) -> usize {
        self.divisors.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.divisors.is_empty()
    }

    pub fn order(&self) -> u128 {
        self.divisors.iter().map(|&d| d as u128).product()
    }

    pub fn exponent(&self) -> i64 {
        self.divisors.last().copied().unwrap_or(1)
    }

    pub fn relation_matrix(&self) -> IntMatrix {
        IntMatrix::diagonal(&self.divisors)
    }

    pub fn zero(&self) -> Element {
        Element { parent: self.clone(), coords: vec![0; self.rank()] }
    }

    /// The element with the given coordinates, reduced.
    pub fn element(&self, coords: &[i64]) -> Result<Element> {
        if coords.len() != self.rank() {
            return Err(Error::Dimension(format!(
                "{} coordinates for a group of rank {}",
                coords.len(),
                self.rank()
            )));
        }
        Ok(Element { parent: self.clone(), coords: self.reduce(coords) })
    }

    pub fn generator(&self, i: usize) -> Element {
        let mut coords = vec![0; self.rank()];
        coords[i] = 1;
        Element { parent: self.clone(), coords }
    }

    pub fn reduce(&self, coords: &[i64]) -> Vec<i64> {
        coords.iter().zip(&self.divisors).map(|(c, d)| c.rem_euclid(*d)).collect()
    }

    /// Position of an element in the enumeration order of `elements`.
    pub fn index_of(&self, coords: &[i64]) -> usize {
        let mut idx = 0usize;
        for (c, d) in coords.iter().zip(&self.divisors) {
            idx = idx * (*d as usize) + c.rem_euclid(*d) as usize;
        }
        idx
    }

    pub fn coords_at(&self, mut idx: usize) -> Vec<i64> {
        let mut out = vec![0; self.rank()];
        for (slot, d) in out.iter_mut().zip(&self.divisors).rev() {
            *slot = (idx % *d as usize) as i64;
            idx /= *d as usize;
        }
        out
    }

    /// All coordinate vectors, last coordinate varying fastest.
    pub fn coordinate_vectors(&self) -> impl Iterator<Item = Vec<i64>> + '_ {
        (0..self.order() as usize).map(move |i| self.coords_at(i))
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        self.coordinate_vectors().map(move |coords| Element { parent: self.clone(), coords })
    }

    /// Quotient by the subgroup generated by `gens`.
    pub fn quotient_by(&self, gens: &[Element]) -> Result<FinAb> {
        let mut cols: Vec<Vec<BigInt>> = Vec::new();
        for g in gens {
            self.check_parent(g)?;
            cols.push(g.coords.iter().map(|&c| BigInt::from(c)).collect());
        }
        let rel = IntMatrix::from_columns(self.rank(), &cols).hconcat(&self.relation_matrix())?;
        FinAb::from_relations(&rel)
    }

    fn check_parent(&self, e: &Element) -> Result<()> {
        if &e.parent != self {
            return Err(Error::GroupMismatch { expected: self.to_string(), found: e.parent.to_string() });
        }
        Ok(())
    }
}

impl fmt::Display for FinAb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.divisors.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.divisors.iter().map(|d| format!("Z/{d}")).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

impl fmt::Debug for FinAb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// An element together with the group it belongs to.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element {
    parent: FinAb,
    coords: Vec<i64>,
}

impl Element {
    pub fn parent(&self) -> &FinAb {
        &self.parent
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        self.parent.check_parent(other)?;
        let sum: Vec<i64> = self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect();
        Ok(Element { parent: self.parent.clone(), coords: self.parent.reduce(&sum) })
    }

    pub fn sub(&self, other: &Element) -> Result<Element> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Element {
        self.scale(-1)
    }

    pub fn scale(&self, k: i64) -> Element {
        let c: Vec<i64> = self
            .coords
            .iter()
            .zip(&self.parent.divisors)
            .map(|(&a, &d)| ((a as i128 * k as i128).rem_euclid(d as i128)) as i64)
            .collect();
        Element { parent: self.parent.clone(), coords: c }
    }

    pub fn order(&self) -> i64 {
        self.coords
            .iter()
            .zip(&self.parent.divisors)
            .fold(1i64, |acc, (&c, &d)| acc.lcm(&(d / c.gcd(&d))))
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} in {}", self.coords, self.parent)
    }
}

/// A homomorphism given by an integer matrix acting on coordinate vectors.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FinAbHom {
    domain: FinAb,
    codomain: FinAb,
    // codomain.rank() rows, domain.rank() columns; row i reduced mod codomain divisor i
    matrix: Vec<Vec<i64>>,
}

/// Orders of kernel, image and cokernel, each in canonical form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KerImCoker {
    pub kernel: FinAb,
    pub image: FinAb,
    pub cokernel: FinAb,
}

impl FinAbHom {
    pub fn new(domain: FinAb, codomain: FinAb, matrix: Vec<Vec<i64>>) -> Result<Self> {
        if matrix.len() != codomain.rank() || matrix.iter().any(|r| r.len() != domain.rank()) {
            return Err(Error::Dimension(format!(
                "matrix shape does not match {} -> {}",
                domain, codomain
            )));
        }
        let mut m = matrix;
        for (i, row) in m.iter_mut().enumerate() {
            let e = codomain.divisors[i];
            for (j, x) in row.iter_mut().enumerate() {
                let d = domain.divisors[j];
                // the image of a generator of order d must be killed by d
                if (*x as i128 * d as i128).rem_euclid(e as i128) != 0 {
                    return Err(Error::IllDefined(format!(
                        "generator {j} of order {d} maps to coordinate {x} mod {e}"
                    )));
                }
                *x = x.rem_euclid(e);
            }
        }
        Ok(FinAbHom { domain, codomain, matrix: m })
    }

    pub fn identity(g: &FinAb) -> Self {
        FinAbHom::scalar(g, 1)
    }

    pub fn zero(domain: &FinAb, codomain: &FinAb) -> Self {
        FinAbHom {
            domain: domain.clone(),
            codomain: codomain.clone(),
            matrix: vec![vec![0; domain.rank()]; codomain.rank()],
        }
    }

    /// Multiplication by `k` on `g`.
    pub fn scalar(g: &FinAb, k: i64) -> Self {
        let r = g.rank();
        let matrix = (0..r)
            .map(|i| (0..r).map(|j| if i == j { k.rem_euclid(g.divisors[i]) } else { 0 }).collect())
            .collect();
        FinAbHom { domain: g.clone(), codomain: g.clone(), matrix }
    }

    pub fn domain(&self) -> &FinAb {
        &self.domain
    }

    pub fn codomain(&self) -> &FinAb {
        &self.codomain
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn int_matrix(&self) -> IntMatrix {
        if self.matrix.is_empty() {
            return IntMatrix::zeros(0, self.domain.rank());
        }
        IntMatrix::from_rows(&self.matrix)
    }

    pub fn apply_coords(&self, x: &[i64]) -> Vec<i64> {
        self.matrix
            .iter()
            .zip(&self.codomain.divisors)
            .map(|(row, &e)| {
                let s: i128 = row.iter().zip(x).map(|(&a, &b)| a as i128 * b as i128).sum();
                s.rem_euclid(e as i128) as i64
            })
            .collect()
    }

    pub fn apply(&self, x: &Element) -> Result<Element> {
        self.domain.check_parent(x)?;
        Ok(Element { parent: self.codomain.clone(), coords: self.apply_coords(&x.coords) })
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &FinAbHom) -> Result<FinAbHom> {
        if first.codomain != self.domain {
            return Err(Error::GroupMismatch {
                expected: self.domain.to_string(),
                found: first.codomain.to_string(),
            });
        }
        let cols: Vec<Vec<i64>> = (0..first.domain.rank())
            .map(|j| {
                let col: Vec<i64> = first.matrix.iter().map(|r| r[j]).collect();
                self.apply_coords(&col)
            })
            .collect();
        let matrix = (0..self.codomain.rank()).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
        Ok(FinAbHom { domain: first.domain.clone(), codomain: self.codomain.clone(), matrix })
    }

    pub fn is_identity(&self) -> bool {
        self.domain == self.codomain && *self == FinAbHom::identity(&self.domain)
    }

    pub fn is_automorphism(&self) -> bool {
        self.domain == self.codomain && self.kernel_image_cokernel().kernel.is_trivial()
    }

    pub fn kernel_image_cokernel(&self) -> KerImCoker {
        let a = self.int_matrix();
        let e = self.codomain.relation_matrix();
        let with_rel = a.hconcat(&e).expect("row counts agree");
        let image = LatticeQuotient::new(&with_rel, &e).expect("finite image").group().clone();
        let cokernel = FinAb::from_relations(&with_rel).expect("finite cokernel");
        let pre = preimage(&a, &e).expect("row counts agree");
        let kernel = LatticeQuotient::new(&pre, &self.domain.relation_matrix())
            .expect("well-defined map")
            .group()
            .clone();
        KerImCoker { kernel, image, cokernel }
    }

    /// Elements of the kernel, by enumeration.
    pub fn kernel_elements(&self) -> Vec<Vec<i64>> {
        self.domain
            .coordinate_vectors()
            .filter(|x| self.apply_coords(x).iter().all(|&c| c == 0))
            .collect()
    }
}

impl fmt::Debug for FinAbHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} by {:?}", self.domain, self.codomain, self.matrix)
    }
}

//! Loop G2-torsors over Laurent polynomials with quadratically closed
//! coefficients: triples of monomial classes `((t_{I1}), (t_{I2}), (t_{I3}))`
//! and their Rost invariant in the degree-3 part of the exterior algebra
//! over F_2 on `e_1, ..., e_n`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{glnz_generators, ModMatrix};

/// A sum of distinct `e_i ^ e_j ^ e_k` with `i < j < k` (1-based).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExteriorElement {
    n: usize,
    terms: BTreeSet<[usize; 3]>,
}

impl ExteriorElement {
    pub fn zero(n: usize) -> Self {
        ExteriorElement { n, terms: BTreeSet::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = &[usize; 3]> {
        self.terms.iter()
    }

    /// Adds `e_i ^ e_j ^ e_k` over F_2; repeated indices contribute nothing.
    fn toggle(&mut self, i: usize, j: usize, k: usize) {
        if i == j || j == k || i == k {
            return;
        }
        let mut t = [i, j, k];
        t.sort_unstable();
        if !self.terms.remove(&t) {
            self.terms.insert(t);
        }
    }

    /// Image under the linear map `e_i -> sum_k g[k][i] e_k` over F_2.
    pub fn transform(&self, g: &ModMatrix) -> ExteriorElement {
        let col = |i: usize| -> Vec<usize> { (0..self.n).filter(|&k| g.get(k, i - 1) % 2 == 1).map(|k| k + 1).collect() };
        let mut out = ExteriorElement::zero(self.n);
        for t in &self.terms {
            let (a, b, c) = (col(t[0]), col(t[1]), col(t[2]));
            for &i in &a {
                for &j in &b {
                    for &k in &c {
                        out.toggle(i, j, k);
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for ExteriorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|t| format!("e{}^e{}^e{}", t[0], t[1], t[2])).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Serialize for ExteriorElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Cup product `(t_{I1}).(t_{I2}).(t_{I3})` expanded multilinearly.
pub fn rost_invariant(n: usize, triple: [&[usize]; 3]) -> Result<ExteriorElement> {
    for block in triple {
        if let Some(&i) = block.iter().find(|&&i| i == 0 || i > n) {
            return Err(Error::InvalidInput(format!("variable index {i} outside 1..={n}")));
        }
    }
    let mut out = ExteriorElement::zero(n);
    for &i in triple[0] {
        for &j in triple[1] {
            for &k in triple[2] {
                out.toggle(i, j, k);
            }
        }
    }
    Ok(out)
}

/// A class of `H^1(R_n, G2)`; `triple == None` is the trivial class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct G2Class {
    pub triple: Option<[Vec<usize>; 3]>,
    pub invariant: ExteriorElement,
}

impl G2Class {
    pub fn label(&self) -> String {
        match &self.triple {
            None => "trivial".into(),
            Some(t) => {
                let b: Vec<String> = t.iter().map(|s| format!("t{}", monomial_indices(s))).collect();
                format!("({})", b.join(", "))
            }
        }
    }
}

fn monomial_indices(s: &[usize]) -> String {
    s.iter().map(|i| i.to_string()).collect::<Vec<_>>().join("")
}

/// The trivial class and every block triple `(I1, I2, I3)` with
/// `max I1 < min I2` and `max I2 < min I3`, all blocks nonempty.
pub fn classify_g2(n: usize) -> Result<Vec<G2Class>> {
    if n > 12 {
        return Err(Error::InvalidInput("enumeration is limited to n <= 12".into()));
    }
    let mut out = vec![G2Class { triple: None, invariant: ExteriorElement::zero(n) }];
    for mask in 1u32..(1 << n) {
        let u: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect();
        if u.len() < 3 {
            continue;
        }
        for c1 in 1..u.len() - 1 {
            for c2 in c1 + 1..u.len() {
                let t = [u[..c1].to_vec(), u[c1..c2].to_vec(), u[c2..].to_vec()];
                let invariant = rost_invariant(n, [&t[0], &t[1], &t[2]])?;
                out.push(G2Class { triple: Some(t), invariant });
            }
        }
    }
    out[1..].sort_by(|a, b| a.triple.cmp(&b.triple));
    let distinct: BTreeSet<&ExteriorElement> = out.iter().map(|c| &c.invariant).collect();
    if distinct.len() != out.len() {
        return Err(Error::Invariant("two block triples share a Rost invariant".into()));
    }
    Ok(out)
}

/// `sum_{u >= 3} C(n, u) C(u - 1, 2)`.
pub fn block_triple_count(n: usize) -> u128 {
    let binom = |a: u128, b: u128| -> u128 {
        if b > a {
            return 0;
        }
        (0..b).fold(1u128, |acc, i| acc * (a - i) / (i + 1))
    };
    (3..=n as u128).map(|u| binom(n as u128, u) * binom(u - 1, 2)).sum()
}

/// All nonzero Rost invariants of arbitrary triples of classes, i.e. the
/// nonzero decomposable 3-vectors. Exhaustive, so limited to small n.
pub fn rost_image(n: usize) -> Result<BTreeSet<ExteriorElement>> {
    if n > 6 {
        return Err(Error::InvalidInput("exhaustive image is limited to n <= 6".into()));
    }
    let subset = |mask: u32| -> Vec<usize> { (0..n).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect() };
    let mut out = BTreeSet::new();
    for a in 1u32..(1 << n) {
        for b in a + 1..(1 << n) {
            for c in b + 1..(1 << n) {
                let inv = rost_invariant(n, [&subset(a), &subset(b), &subset(c)])?;
                if !inv.is_zero() {
                    out.insert(inv);
                }
            }
        }
    }
    Ok(out)
}

/// Partitions `classify_g2(n)` into orbits of GL_n(Z), acting through its
/// image GL_n(Z/2) on the Rost invariants.
pub fn glnz_quotient_g2(n: usize) -> Result<Vec<Vec<G2Class>>> {
    let classes = classify_g2(n)?;
    if n < 3 {
        return Ok(vec![classes]);
    }
    let gens: Vec<ModMatrix> = glnz_generators(n).iter().map(|g| ModMatrix::from_int(g, 2)).collect();
    let mut orbit_of: BTreeMap<ExteriorElement, usize> = BTreeMap::new();
    let mut orbits: Vec<Vec<G2Class>> = Vec::new();
    for class in classes {
        if let Some(&k) = orbit_of.get(&class.invariant) {
            orbits[k].push(class);
            continue;
        }
        let k = orbits.len();
        let mut queue = VecDeque::from([class.invariant.clone()]);
        orbit_of.insert(class.invariant.clone(), k);
        while let Some(x) = queue.pop_front() {
            for g in &gens {
                let y = x.transform(g);
                if !orbit_of.contains_key(&y) {
                    orbit_of.insert(y.clone(), k);
                    queue.push_back(y);
                }
            }
        }
        orbits.push(vec![class]);
    }
    Ok(orbits)
}

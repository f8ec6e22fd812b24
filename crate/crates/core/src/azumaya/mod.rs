//! Loop Azumaya algebras: Mumford subgroups `H(s_1, ..., s_l)` of `PGL_d`,
//! their commutator pairing, Brussel normal forms and the real nullity-1
//! table.

mod brussel;
mod monomial;
mod multiloop;

pub use brussel::{
    brussel_normal_form, cyclic_presentation, parse_element, parse_tuple, wedge_invariant, BrusselForm, CyclicBlock,
};
pub use monomial::{mumford_generators, MonomialMatrix, Phase};
pub use multiloop::multiloop_oracle_d2;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{FinAb, FinAbHom};

/// `H(s_1, ..., s_l) = (Z/s_1)^2 + ... + (Z/s_l)^2` with basis
/// `a_1, b_1, ..., a_l, b_l` and pairing `<a_j, b_j> = 1/s_j`, blocks orthogonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MumfordDatum {
    chain: Vec<i64>,
    group: FinAb,
}

impl MumfordDatum {
    pub fn new(chain: &[i64]) -> Result<Self> {
        if chain.is_empty() {
            return Err(Error::InvalidInput("chain must be nonempty".into()));
        }
        if chain[0] < 2 {
            return Err(Error::InvalidInput("chain must start at 2 or more".into()));
        }
        if chain.windows(2).any(|w| w[1] % w[0] != 0) {
            return Err(Error::InvalidInput(format!("{chain:?} is not a divisor chain")));
        }
        let group = FinAb::from_canonical(chain.iter().flat_map(|&s| [s, s]).collect())?;
        Ok(MumfordDatum { chain: chain.to_vec(), group })
    }

    pub fn chain(&self) -> &[i64] {
        &self.chain
    }

    pub fn group(&self) -> &FinAb {
        &self.group
    }

    /// Number of blocks l.
    pub fn blocks(&self) -> usize {
        self.chain.len()
    }

    pub fn exponent(&self) -> i64 {
        *self.chain.last().expect("nonempty chain")
    }

    pub fn degree(&self) -> i64 {
        self.chain.iter().product()
    }

    fn check(&self, x: &[i64]) -> Result<()> {
        if x.len() != 2 * self.blocks() {
            return Err(Error::Dimension(format!("element needs {} coordinates", 2 * self.blocks())));
        }
        Ok(())
    }

    /// `sum_j (x_{a_j} y_{b_j} - x_{b_j} y_{a_j}) / s_j` in Q/Z.
    pub fn pairing(&self, x: &[i64], y: &[i64]) -> Result<Phase> {
        self.check(x)?;
        self.check(y)?;
        let mut out = Phase::zero();
        for (j, &s) in self.chain.iter().enumerate() {
            out = out + Phase::new(x[2 * j] * y[2 * j + 1] - x[2 * j + 1] * y[2 * j], s);
        }
        Ok(out)
    }

    /// `prod_j a_j^{x_{a_j}} b_j^{x_{b_j}}` in `GL_d` for the given generators.
    pub fn lift(&self, x: &[i64], gens: &[(MonomialMatrix, MonomialMatrix)]) -> Result<MonomialMatrix> {
        self.check(x)?;
        if gens.len() != self.blocks() {
            return Err(Error::Dimension("one generator pair per block is needed".into()));
        }
        let mut out = MonomialMatrix::identity(gens[0].0.size());
        for (j, (a, b)) in gens.iter().enumerate() {
            let s = self.chain[j];
            out = out.mul(&a.pow(x[2 * j].rem_euclid(s) as u64))?;
            out = out.mul(&b.pow(x[2 * j + 1].rem_euclid(s) as u64))?;
        }
        Ok(out)
    }

    /// Whether `tuple` generates the whole group.
    pub fn generates(&self, tuple: &[Vec<i64>]) -> Result<bool> {
        for x in tuple {
            self.check(x)?;
        }
        let m = self.exponent();
        let domain = FinAb::from_canonical(vec![m; tuple.len()])?;
        let rows = (0..2 * self.blocks()).map(|i| tuple.iter().map(|x| x[i]).collect()).collect();
        let hom = FinAbHom::new(domain, self.group.clone(), rows)?;
        Ok(hom.kernel_image_cokernel().cokernel.is_trivial())
    }
}

/// `H(s_1, ..., s_l)` is irreducible in `PGL_d` exactly when `d = prod s_j`.
pub fn is_irreducible(datum: &MumfordDatum, d: i64) -> bool {
    datum.degree() == d
}

/// Classes of nullity-1 loop Azumaya algebras of degree d over the reals,
/// as `Br(R) (+) H^1(R, Z/2)` components.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RealClass {
    pub label: String,
    /// The corresponding quaternion algebra when `d = 2`.
    pub quaternion: Option<String>,
}

pub fn real_nullity1_table(d: i64) -> Result<Vec<RealClass>> {
    if d < 1 {
        return Err(Error::InvalidInput("degree must be positive".into()));
    }
    if d % 2 == 1 {
        return Ok(vec![RealClass { label: "0 + 0".into(), quaternion: None }]);
    }
    let labels = ["0 + 0", "0 + chi_C/R", "[(-1,-1)] + 0", "[(-1,-1)] + chi_C/R"];
    let quaternions = ["(1,1)", "(1,t)", "(-1,-1)", "(-1,t)"];
    Ok(labels
        .iter()
        .zip(quaternions)
        .map(|(l, q)| RealClass { label: l.to_string(), quaternion: (d == 2).then(|| q.to_string()) })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn irreducibility() {
        assert!(is_irreducible(&MumfordDatum::new(&[2]).unwrap(), 2));
        assert!(!is_irreducible(&MumfordDatum::new(&[2]).unwrap(), 4));
        assert!(is_irreducible(&MumfordDatum::new(&[2, 2]).unwrap(), 4));
        assert!(MumfordDatum::new(&[2, 3]).is_err());
        assert!(MumfordDatum::new(&[1]).is_err());
    }

    #[test]
    fn pairing_matches_commutators() {
        for chain in [vec![2], vec![3], vec![2, 2], vec![2, 4], vec![6], vec![3, 6]] {
            let datum = MumfordDatum::new(&chain).unwrap();
            let gens = mumford_generators(&chain, datum.degree() as usize).unwrap();
            let basis: Vec<Vec<i64>> = (0..2 * chain.len())
                .map(|i| (0..2 * chain.len()).map(|k| (k == i) as i64).collect())
                .collect();
            for x in &basis {
                for y in &basis {
                    let lx = datum.lift(x, &gens).unwrap();
                    let ly = datum.lift(y, &gens).unwrap();
                    assert_eq!(lx.commutator_phase(&ly).unwrap(), Some(datum.pairing(x, y).unwrap()));
                }
            }
        }
    }

    #[test]
    fn generation() {
        let datum = MumfordDatum::new(&[5]).unwrap();
        assert!(datum.generates(&[vec![1, 0], vec![0, 3]]).unwrap());
        assert!(!datum.generates(&[vec![1, 0], vec![2, 0]]).unwrap());
    }

    #[test]
    fn real_table() {
        assert_eq!(real_nullity1_table(3).unwrap().len(), 1);
        let t = real_nullity1_table(2).unwrap();
        assert_eq!(t.len(), 4);
        assert_eq!(t[3].quaternion.as_deref(), Some("(-1,t)"));
        assert_eq!(real_nullity1_table(4).unwrap().len(), 4);
    }
}

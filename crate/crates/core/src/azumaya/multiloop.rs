//! Direct check, in degree 2, that the multiloop algebra of a cocycle
//! `Z^2 -> H(2)` is the quaternion algebra `X^2 = t1, Y^2 = t2, YX = -XY`.

use num_rational::Ratio;

use super::{mumford_generators, MonomialMatrix, MumfordDatum, Phase};
use crate::error::{Error, Result};

/// `h (x) t1^{e[0]} t2^{e[1]}`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct LoopElement {
    matrix: MonomialMatrix,
    exponents: [Ratio<i64>; 2],
}

impl LoopElement {
    fn mul(&self, o: &LoopElement) -> Result<LoopElement> {
        Ok(LoopElement {
            matrix: self.matrix.mul(&o.matrix)?,
            exponents: [self.exponents[0] + o.exponents[0], self.exponents[1] + o.exponents[1]],
        })
    }
}

fn phase_as_ratio(p: Phase) -> Ratio<i64> {
    Ratio::new(p.numer(), p.denom())
}

/// Builds the simultaneous eigenspace decomposition of `M_2` under
/// conjugation by the lifted pair, takes the generators of the eigenspaces
/// of weight `(1/2, 0)` and `(0, 1/2)` (rescaled so their squares are
/// monomials) and checks the quaternion relations.
pub fn multiloop_oracle_d2(tuple: &[Vec<i64>]) -> Result<bool> {
    let datum = MumfordDatum::new(&[2])?;
    if tuple.len() != 2 {
        return Err(Error::InvalidInput("the degree-2 oracle takes a pair".into()));
    }
    if !datum.generates(tuple)? {
        return Err(Error::NotGenerating);
    }
    let gens = mumford_generators(&[2], 2)?;
    let sigma: Vec<MonomialMatrix> = tuple.iter().map(|x| datum.lift(x, &gens)).collect::<Result<_>>()?;

    // lifts of the four group elements are eigenvectors for conjugation
    let mut basis: Vec<LoopElement> = Vec::new();
    for x in datum.group().coordinate_vectors() {
        let h = datum.lift(&x, &gens)?;
        let mut weight = [Ratio::from_integer(0); 2];
        for (i, g) in sigma.iter().enumerate() {
            let conj = g.mul(&h)?.mul(&g.inverse())?;
            let c = conj
                .scalar_ratio(&h)
                .ok_or_else(|| Error::Invariant("group lift is not an eigenvector".into()))?;
            weight[i] = phase_as_ratio(c);
        }
        if basis.iter().any(|b| b.exponents == weight) {
            return Err(Error::Invariant("repeated weight: eigenspaces do not split M_2".into()));
        }
        basis.push(LoopElement { matrix: h, exponents: weight });
    }

    let half = Ratio::new(1, 2);
    let zero = Ratio::from_integer(0);
    let pick = |w: [Ratio<i64>; 2]| -> Result<LoopElement> {
        let mut e = basis
            .iter()
            .find(|b| b.exponents == w)
            .cloned()
            .ok_or_else(|| Error::Invariant("missing weight space".into()))?;
        let square = e.matrix.mul(&e.matrix)?;
        let c = square.as_scalar().ok_or_else(|| Error::Invariant("square is not scalar".into()))?;
        e.matrix = e.matrix.scale(-c.half());
        Ok(e)
    };
    let x = pick([half, zero])?;
    let y = pick([zero, half])?;

    let one = Ratio::from_integer(1);
    let x2 = x.mul(&x)?;
    let y2 = y.mul(&y)?;
    let xy = x.mul(&y)?;
    let yx = y.mul(&x)?;
    let identity = MonomialMatrix::identity(2);
    Ok(x2.matrix == identity
        && x2.exponents == [one, zero]
        && y2.matrix == identity
        && y2.exponents == [zero, one]
        && yx.exponents == xy.exponents
        && yx.matrix.scalar_ratio(&xy.matrix) == Some(Phase::new(1, 2)))
}

//! Anisotropic loop classes over R_3 for F4, simply connected E7 and E8.
//!
//! Each class factors through a rank-zero subgroup `(Z/d)^3` whose normalizer
//! acts through `SL_3(Z/d)`, so classes of surjections onto it are indexed by
//! determinant units: `f_{d,*}(t1, t2, t3^i)` with `i` prime to d.

use std::collections::{BTreeSet, HashSet, VecDeque};

use serde::Serialize;

use crate::catalog::{Family, SimpleType};
use crate::error::{Error, Result};
use crate::linalg::{glnz_generators, ModMatrix};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankZeroDatum {
    pub group_type: SimpleType,
    pub d: i64,
    pub weyl_image: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Rank3Class {
    pub datum: RankZeroDatum,
    pub unit: i64,
}

impl Rank3Class {
    pub fn label(&self) -> String {
        if self.unit == 1 {
            format!("f_{},*(t1,t2,t3)", self.datum.d)
        } else {
            format!("f_{},*(t1,t2,t3^{})", self.datum.d, self.unit)
        }
    }
}

/// One GL_3(Z)-orbit: the units of `Z/d` it contains, smallest first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Rank3Orbit {
    pub datum: RankZeroDatum,
    pub units: Vec<i64>,
}

/// Shown next to E8 quotients: the orbit count of units modulo -1 for d = 5
/// is two, while the published list names a single class.
pub const E8_QUOTIENT_NOTE: &str =
    "d = 5 splits into orbits {1,4} and {2,3}; the published quotient lists only f_5,*(t1,t2,t3)";

pub fn rank_zero_data(t: SimpleType) -> Result<Vec<RankZeroDatum>> {
    let ds: &[i64] = match (t.family(), t.rank()) {
        (Family::F, 4) => &[3],
        (Family::E, 7) => &[4],
        (Family::E, 8) => &[5, 6],
        _ => return Err(Error::IllegalType(format!("{t} has no rank-zero subgroup of rank 3"))),
    };
    Ok(ds
        .iter()
        .map(|&d| RankZeroDatum { group_type: t, d, weyl_image: format!("SL3(Z/{d})") })
        .collect())
}

fn units(d: i64) -> Vec<i64> {
    (1..d).filter(|&i| num_integer::gcd(i, d) == 1).collect()
}

pub fn classify_rank3(t: SimpleType) -> Result<Vec<Rank3Class>> {
    let mut out = Vec::new();
    for datum in rank_zero_data(t)? {
        for unit in units(datum.d) {
            out.push(Rank3Class { datum: datum.clone(), unit });
        }
    }
    Ok(out)
}

/// GL_3(Z) acts on the unit index through determinants `+-1`. The orbits
/// are computed from the generator images mod d and compared with the
/// closed form (units modulo -1).
pub fn glnz_quotient_rank3(t: SimpleType) -> Result<Vec<Rank3Orbit>> {
    let mut out = Vec::new();
    for datum in rank_zero_data(t)? {
        let d = datum.d;
        let dets: BTreeSet<i64> = glnz_generators(3).iter().map(|g| ModMatrix::from_int(g, d).det()).collect();
        let mut seen = HashSet::new();
        let mut bfs_orbits = Vec::new();
        for u in units(d) {
            if seen.contains(&u) {
                continue;
            }
            let mut orbit = BTreeSet::from([u]);
            let mut queue = VecDeque::from([u]);
            seen.insert(u);
            while let Some(x) = queue.pop_front() {
                for &det in &dets {
                    let y = (x * det).rem_euclid(d);
                    if seen.insert(y) {
                        orbit.insert(y);
                        queue.push_back(y);
                    }
                }
            }
            bfs_orbits.push(orbit.into_iter().collect::<Vec<_>>());
        }
        let formula: BTreeSet<Vec<i64>> = units(d)
            .into_iter()
            .map(|u| {
                let mut o = vec![u, d - u];
                o.sort_unstable();
                o.dedup();
                o
            })
            .collect();
        if formula != bfs_orbits.iter().cloned().collect() {
            return Err(Error::Invariant(format!("determinant orbits mod {d} disagree with units modulo -1")));
        }
        out.extend(bfs_orbits.into_iter().map(|units| Rank3Orbit { datum: datum.clone(), units }));
    }
    Ok(out)
}

/// Orbits of `SL_3(Z/d)` acting by left multiplication on `GL_3(Z/d)`
/// (surjections `(Z/d)^3 -> (Z/d)^3`), found by search over elementary
/// transvections. Returns the determinant of each orbit's elements, or an
/// error if an orbit mixes determinants.
pub fn sl3_orbit_determinants(d: i64) -> Result<Vec<i64>> {
    if !(2..=3).contains(&d) {
        return Err(Error::InvalidInput("brute-force search is limited to d <= 3".into()));
    }
    let mut transvections = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            if i != j {
                let mut e = ModMatrix::identity(3, d);
                e.entries[i * 3 + j] = 1;
                transvections.push(e);
            }
        }
    }
    let total = (d as usize).pow(9);
    let mut seen = vec![false; total];
    let index = |m: &ModMatrix| m.entries.iter().fold(0usize, |acc, &x| acc * d as usize + x as usize);
    let mut dets = Vec::new();
    for code in 0..total {
        let mut entries = vec![0i64; 9];
        let mut c = code;
        for k in (0..9).rev() {
            entries[k] = (c % d as usize) as i64;
            c /= d as usize;
        }
        let start = ModMatrix { n: 3, m: d, entries };
        let det = start.det();
        if seen[code] || num_integer::gcd(det, d) != 1 {
            continue;
        }
        seen[code] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            if x.det() != det {
                return Err(Error::Invariant("an SL_3 orbit changed determinant".into()));
            }
            for e in &transvections {
                let y = e.mul(&x);
                let k = index(&y);
                if !seen[k] {
                    seen[k] = true;
                    queue.push_back(y);
                }
            }
        }
        dets.push(det);
    }
    dets.sort_unstable();
    Ok(dets)
}

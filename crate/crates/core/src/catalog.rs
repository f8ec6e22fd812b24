//! Simple types, their centers as modules over the outer automorphism
//! group, and the curated nullity-2 table.

use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::linalg::{FinAb, FinAbHom};
use crate::template::{render, Bindings};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "A" => Family::A,
            "B" => Family::B,
            "C" => Family::C,
            "D" => Family::D,
            "E" => Family::E,
            "F" => Family::F,
            "G" => Family::G,
            _ => return Err(Error::IllegalType(s.to_string())),
        })
    }
}

/// A Cartan-Killing type such as `D4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimpleType {
    family: Family,
    rank: u32,
}

impl SimpleType {
    pub fn new(family: Family, rank: u32) -> Result<Self> {
        let legal = match family {
            Family::A => rank >= 1,
            Family::B => rank >= 2,
            Family::C => rank >= 3,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if !legal {
            return Err(Error::IllegalType(format!("{}{}", family.letter(), rank)));
        }
        Ok(SimpleType { family, rank })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for SimpleType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family: Family = chars
            .next()
            .ok_or_else(|| Error::IllegalType(s.to_string()))?
            .to_ascii_uppercase()
            .to_string()
            .parse()?;
        let rank: u32 = chars.as_str().trim_start_matches('_').parse().map_err(|_| Error::IllegalType(s.to_string()))?;
        SimpleType::new(family, rank)
    }
}

impl Serialize for SimpleType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// The center of the simply connected group together with the action of
/// the outer automorphism group on it. `action[g]` is the automorphism
/// attached to element `g` of `out`.
#[derive(Clone, Debug)]
pub struct CenterDatum {
    pub center: FinAb,
    pub out: Arc<FiniteGroup>,
    pub action: Vec<FinAbHom>,
}

impl CenterDatum {
    fn new(center: FinAb, out: FiniteGroup, action: Vec<FinAbHom>) -> Result<Self> {
        let d = CenterDatum { center, out: Arc::new(out), action };
        d.check()?;
        Ok(d)
    }

    fn trivial_out(center: FinAb) -> Self {
        let id = FinAbHom::identity(&center);
        CenterDatum { center, out: Arc::new(FiniteGroup::trivial()), action: vec![id] }
    }

    /// Out = Z/2 acting through the involution `inv`.
    fn involution(center: FinAb, inv: FinAbHom) -> Result<Self> {
        CenterDatum::new(center.clone(), FiniteGroup::cyclic(2), vec![FinAbHom::identity(&center), inv])
    }

    /// Checks that `action` is a homomorphism into Aut(center).
    pub fn check(&self) -> Result<()> {
        if self.action.len() != self.out.order() {
            return Err(Error::Invariant("one automorphism per element of Out is required".into()));
        }
        for a in self.out.elements() {
            if !self.action[a].is_automorphism() {
                return Err(Error::Invariant("Out acts by a non-invertible map".into()));
            }
            for b in self.out.elements() {
                if self.action[self.out.mul(a, b)] != self.action[a].compose(&self.action[b])? {
                    return Err(Error::Invariant("Out action is not a homomorphism".into()));
                }
            }
        }
        Ok(())
    }

    pub fn is_faithful(&self) -> bool {
        self.out.elements().filter(|&g| self.action[g].is_identity()).count() == 1
    }
}

/// Center and outer automorphism data of the simply connected group of the
/// given type.
pub fn lookup(t: SimpleType) -> Result<CenterDatum> {
    let r = t.rank as i64;
    let inversion = |g: &FinAb| FinAbHom::scalar(g, -1);
    match t.family {
        Family::A if r == 1 => Ok(CenterDatum::trivial_out(FinAb::cyclic(2))),
        Family::A => {
            let z = FinAb::cyclic(r + 1);
            CenterDatum::involution(z.clone(), inversion(&z))
        }
        Family::B | Family::C => Ok(CenterDatum::trivial_out(FinAb::cyclic(2))),
        Family::D if r % 2 == 1 => {
            let z = FinAb::cyclic(4);
            CenterDatum::involution(z.clone(), inversion(&z))
        }
        Family::D if r == 4 => d4_datum(),
        Family::D => {
            let z = FinAb::from_divisors(&[2, 2])?;
            let switch = FinAbHom::new(z.clone(), z.clone(), vec![vec![0, 1], vec![1, 0]])?;
            CenterDatum::involution(z, switch)
        }
        Family::E if r == 6 => {
            let z = FinAb::cyclic(3);
            CenterDatum::involution(z.clone(), inversion(&z))
        }
        Family::E if r == 7 => Ok(CenterDatum::trivial_out(FinAb::cyclic(2))),
        Family::E | Family::F | Family::G => Ok(CenterDatum::trivial_out(FinAb::trivial())),
    }
}

/// The three nonzero elements of (Z/2)^2, in the order used to label the
/// permutation representation of Out(D4).
pub const D4_NONZERO: [[i64; 2]; 3] = [[1, 0], [0, 1], [1, 1]];

fn d4_datum() -> Result<CenterDatum> {
    let z = FinAb::from_divisors(&[2, 2])?;
    let (s3, perms) = FiniteGroup::from_permutations("S3", 3, &[vec![1, 0, 2], vec![1, 2, 0]]);
    // a permutation of the nonzero vectors is linear: e1, e2 go to the images of slots 0, 1
    let action = perms
        .iter()
        .map(|p| {
            let c0 = D4_NONZERO[p[0]];
            let c1 = D4_NONZERO[p[1]];
            FinAbHom::new(z.clone(), z.clone(), vec![vec![c0[0], c1[0]], vec![c0[1], c1[1]]])
        })
        .collect::<Result<Vec<_>>>()?;
    CenterDatum::new(z, s3, action)
}

/// Image of the Dynkin-Tits class in Out: trivial, order 2, or order 3 or 6.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FormKind {
    Inner,
    Quadratic,
    Cubic,
}

impl fmt::Display for FormKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FormKind::Inner => "inner",
            FormKind::Quadratic => "quadratic",
            FormKind::Cubic => "cubic",
        })
    }
}

/// What the table needs to know about a fiber class: whether it is the
/// neutral class, its order, whether Out fixes it (inner case), and for
/// cyclic centers the least nonnegative representative of its orbit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetInvariant {
    pub kind: FormKind,
    pub is_zero: bool,
    pub order: i64,
    pub out_fixed: bool,
    pub param: Option<i64>,
}

impl CosetInvariant {
    pub fn split() -> Self {
        CosetInvariant { kind: FormKind::Inner, is_zero: true, order: 1, out_fixed: true, param: Some(0) }
    }

    pub fn inner_param(q: i64) -> Self {
        CosetInvariant { kind: FormKind::Inner, is_zero: q == 0, order: 0, out_fixed: true, param: Some(q) }
    }
}

#[derive(Clone, Debug, Deserialize)]
struct RawTable {
    row: Vec<RawRow>,
}

#[derive(Clone, Debug, Deserialize)]
struct RawRow {
    family: Family,
    rank: String,
    min_rank: u32,
    kind: FormKind,
    coset: String,
    name: String,
    index: String,
    relative: String,
}

const TABLE_SOURCE: &str = include_str!("../data/eala2.toml");

fn raw_table() -> &'static RawTable {
    static TABLE: OnceLock<RawTable> = OnceLock::new();
    TABLE.get_or_init(|| toml::from_str(TABLE_SOURCE).expect("bundled table parses"))
}

/// Solves the rank pattern for n; `Some(None)` when the pattern binds nothing.
fn match_rank(pattern: &str, rank: u32) -> Option<Option<i64>> {
    let r = rank as i64;
    match pattern {
        "m" => Some(None),
        "n" => Some(Some(r)),
        "2n" => (r % 2 == 0).then_some(Some(r / 2)),
        "2n-1" => (r % 2 == 1).then_some(Some((r + 1) / 2)),
        "2n+1" => (r % 2 == 1).then_some(Some((r - 1) / 2)),
        lit => (lit.parse::<i64>().ok() == Some(r)).then_some(None),
    }
}

fn coset_matches(selector: &str, inv: &CosetInvariant) -> bool {
    match selector {
        "zero" => inv.is_zero,
        "nonzero" => !inv.is_zero,
        "param" => inv.param.is_some(),
        "fixed" => !inv.is_zero && inv.out_fixed,
        "moved" => !inv.out_fixed,
        s => match s.strip_prefix("order=") {
            Some(n) => n.parse::<i64>().ok() == Some(inv.order),
            None => false,
        },
    }
}

/// An instantiated table row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassRow {
    pub absolute: SimpleType,
    pub name: String,
    pub tits_index: String,
    pub relative: String,
}

/// Looks up the table entry for a fiber class of the given type.
pub fn table_row(t: SimpleType, inv: &CosetInvariant) -> Result<ClassRow> {
    Ok(table_entry(t, inv)?.1)
}

/// The table entry together with the position of its template in the data file.
pub fn table_entry(t: SimpleType, inv: &CosetInvariant) -> Result<(usize, ClassRow)> {
    let datum = lookup(t)?;
    let mut hits = raw_table().row.iter().enumerate().filter_map(|(pos, row)| {
        if row.family != t.family || row.kind != inv.kind || t.rank < row.min_rank {
            return None;
        }
        let n = match_rank(&row.rank, t.rank)?;
        coset_matches(&row.coset, inv).then_some((pos, row, n))
    });
    let key = || format!("{t} {} class {:?}", inv.kind, inv);
    let (pos, row, n) = hits.next().ok_or_else(|| Error::UnknownKey(key()))?;
    if hits.next().is_some() {
        return Err(Error::Invariant(format!("ambiguous table entry for {}", key())));
    }
    let d = datum.center.order() as i64;
    let mut vars = Bindings::from([('m', t.rank as i64), ('d', d)]);
    if let Some(n) = n {
        vars.insert('n', n);
    }
    if let Some(q) = inv.param {
        vars.insert('q', q);
        vars.insert('r', q.gcd(&d));
    }
    let row = ClassRow {
        absolute: t,
        name: render(&row.name, &vars)?,
        tits_index: render(&row.index, &vars)?,
        relative: render(&row.relative, &vars)?,
    };
    Ok((pos, row))
}

/// Relative root system of the class with the given invariant.
pub fn relative_type(t: SimpleType, inv: &CosetInvariant) -> Result<String> {
    Ok(table_row(t, inv)?.relative)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ty(s: &str) -> SimpleType {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_legality() {
        assert_eq!(ty("D4").to_string(), "D4");
        assert!("D2".parse::<SimpleType>().is_err());
        assert!("E9".parse::<SimpleType>().is_err());
        assert!("X3".parse::<SimpleType>().is_err());
        assert!("C2".parse::<SimpleType>().is_err());
    }

    #[test]
    fn centers() {
        let e8 = lookup(ty("E8")).unwrap();
        assert!(e8.center.is_trivial());
        assert_eq!(e8.out.order(), 1);
        let a3 = lookup(ty("A3")).unwrap();
        assert_eq!(a3.center.divisors(), &[4]);
        assert_eq!(a3.action[1], FinAbHom::scalar(&a3.center, -1));
        let d6 = lookup(ty("D6")).unwrap();
        assert_eq!(d6.center.divisors(), &[2, 2]);
        assert_eq!(d6.action[1].apply_coords(&[1, 0]), vec![0, 1]);
        let d4 = lookup(ty("D4")).unwrap();
        assert_eq!(d4.out.order(), 6);
        assert!(d4.is_faithful());
    }

    #[test]
    fn inner_a_relative() {
        assert_eq!(relative_type(ty("A4"), &CosetInvariant::inner_param(0)).unwrap(), "A4");
        assert_eq!(relative_type(ty("A4"), &CosetInvariant::inner_param(1)).unwrap(), "A0");
        assert_eq!(relative_type(ty("A5"), &CosetInvariant::inner_param(2)).unwrap(), "A1");
    }

    #[test]
    fn e7_nontrivial() {
        let inv = CosetInvariant { kind: FormKind::Inner, is_zero: false, order: 2, out_fixed: true, param: None };
        let row = table_row(ty("E7"), &inv).unwrap();
        assert_eq!(row.tits_index, "E_{7,4}^9");
        assert_eq!(row.relative, "F4");
    }

    #[test]
    fn d3_has_no_entry() {
        assert!(matches!(table_row(ty("D3"), &CosetInvariant::split()), Err(Error::UnknownKey(_))));
    }
}

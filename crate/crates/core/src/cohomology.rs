//! Cohomology of Z^n (equivalently of its profinite completion, for finite
//! coefficients) with coefficients in a finite module, via the Koszul
//! complex on the operators `sigma_j - 1`.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::lattice::{preimage, LatticeQuotient};
use crate::linalg::matrix::combinations;
use crate::linalg::{FinAb, FinAbHom, IntMatrix};

/// A finite abelian group with `n` commuting automorphisms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZnModule {
    group: FinAb,
    sigmas: Vec<FinAbHom>,
}

impl ZnModule {
    pub fn new(group: FinAb, sigmas: Vec<FinAbHom>) -> Result<Self> {
        for s in &sigmas {
            if s.domain() != &group || s.codomain() != &group {
                return Err(Error::GroupMismatch { expected: group.to_string(), found: s.domain().to_string() });
            }
            if !s.is_automorphism() {
                return Err(Error::InvalidInput("module operator is not invertible".into()));
            }
        }
        for (i, a) in sigmas.iter().enumerate() {
            for b in &sigmas[i + 1..] {
                if a.compose(b)? != b.compose(a)? {
                    return Err(Error::InvalidInput("module operators do not commute".into()));
                }
            }
        }
        Ok(ZnModule { group, sigmas })
    }

    /// `group` with `n` trivial operators.
    pub fn trivial(group: FinAb, n: usize) -> Self {
        let id = FinAbHom::identity(&group);
        ZnModule { group, sigmas: vec![id; n] }
    }

    pub fn group(&self) -> &FinAb {
        &self.group
    }

    pub fn sigmas(&self) -> &[FinAbHom] {
        &self.sigmas
    }

    pub fn nullity(&self) -> usize {
        self.sigmas.len()
    }

    pub fn is_trivial_action(&self) -> bool {
        self.sigmas.iter().all(FinAbHom::is_identity)
    }

    /// The module obtained by changing basis of Z^n by `g`: operator i becomes
    /// `prod_j sigma_j^{g_ji}`.
    pub fn base_change(&self, g: &IntMatrix) -> Result<ZnModule> {
        let n = self.nullity();
        if g.rows() != n || g.cols() != n {
            return Err(Error::Dimension("base change matrix size".into()));
        }
        if !g.is_unimodular() {
            return Err(Error::NotUnimodular);
        }
        let mut sigmas = Vec::with_capacity(n);
        for i in 0..n {
            let mut acc = FinAbHom::identity(&self.group);
            for j in 0..n {
                acc = acc.compose(&hom_power(&self.sigmas[j], g.get_i64(j, i))?)?;
            }
            sigmas.push(acc);
        }
        Ok(ZnModule { group: self.group.clone(), sigmas })
    }

    /// Elements fixed by every operator, by enumeration.
    pub fn fixed_points(&self) -> Vec<Vec<i64>> {
        self.group
            .coordinate_vectors()
            .filter(|x| self.sigmas.iter().all(|s| s.apply_coords(x) == *x))
            .collect()
    }

    fn commutes_with(&self, u: &FinAbHom) -> Result<bool> {
        for s in &self.sigmas {
            if u.compose(s)? != s.compose(u)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `f^k` for an automorphism `f`, `k` possibly negative.
pub fn hom_power(f: &FinAbHom, k: i64) -> Result<FinAbHom> {
    let g = f.domain();
    let order = automorphism_order(f)?;
    let e = k.rem_euclid(order);
    let mut acc = FinAbHom::identity(g);
    for _ in 0..e {
        acc = acc.compose(f)?;
    }
    Ok(acc)
}

/// Order of an automorphism in Aut(G).
pub fn automorphism_order(f: &FinAbHom) -> Result<i64> {
    if f.domain() != f.codomain() {
        return Err(Error::InvalidInput("not an endomorphism".into()));
    }
    let mut acc = f.clone();
    let mut k = 1;
    while !acc.is_identity() {
        acc = acc.compose(f)?;
        k += 1;
        if k > 1_000_000 {
            return Err(Error::InvalidInput("map is not invertible".into()));
        }
    }
    Ok(k)
}

/// Degree-i Koszul cohomology together with the data to move between
/// classes and cochains.
#[derive(Clone, Debug)]
pub struct CohomologyGroup {
    degree: usize,
    module_rank: usize,
    subsets: Vec<Vec<usize>>,
    quotient: LatticeQuotient,
    divisors: Vec<i64>,
}

impl CohomologyGroup {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn group(&self) -> &FinAb {
        self.quotient.group()
    }

    /// Index sets labelling the cochain components, in order.
    pub fn components(&self) -> &[Vec<usize>] {
        &self.subsets
    }

    /// A cochain representing the class with the given coordinates; one
    /// module element (coordinate vector) per component.
    pub fn representative(&self, class: &[i64]) -> Vec<Vec<i64>> {
        let flat = self.quotient.representative(class);
        self.unflatten(&flat)
    }

    /// Representatives of the canonical generators.
    pub fn representatives(&self) -> Vec<Vec<Vec<i64>>> {
        (0..self.group().rank()).map(|j| self.unflatten(&self.quotient.generator(j))).collect()
    }

    /// Class of a cocycle, given one module element per component.
    pub fn class_of(&self, cochain: &[Vec<i64>]) -> Result<Vec<i64>> {
        if cochain.len() != self.subsets.len() || cochain.iter().any(|c| c.len() != self.module_rank) {
            return Err(Error::Dimension("cochain shape".into()));
        }
        let flat: Vec<BigInt> = cochain.iter().flatten().map(|&x| BigInt::from(x)).collect();
        self.quotient
            .class_of(&flat)
            .map_err(|_| Error::InvalidInput("cochain is not a cocycle".into()))
    }

    fn unflatten(&self, flat: &[BigInt]) -> Vec<Vec<i64>> {
        let k = self.module_rank;
        if k == 0 {
            return vec![Vec::new(); self.subsets.len()];
        }
        flat.chunks(k)
            .take(self.subsets.len())
            .map(|chunk| {
                chunk
                    .iter()
                    .zip(&self.divisors)
                    .map(|(x, d)| {
                        let r = x % BigInt::from(*d);
                        let r = if r < BigInt::zero() { r + d } else { r };
                        i64::try_from(r).expect("reduced")
                    })
                    .collect()
            })
            .collect()
    }
}

fn block_relations(group: &FinAb, blocks: usize) -> IntMatrix {
    let k = group.rank();
    let mut r = IntMatrix::zeros(k * blocks, k * blocks);
    for b in 0..blocks {
        for (i, &d) in group.divisors().iter().enumerate() {
            r.set(b * k + i, b * k + i, d.into());
        }
    }
    r
}

/// Koszul differential `C^i -> C^{i+1}` as an integer matrix on lifted coordinates.
fn differential(m: &ZnModule, i: usize) -> IntMatrix {
    let n = m.nullity();
    let k = m.group.rank();
    let src = combinations(n, i);
    let dst = combinations(n, i + 1);
    let mut d = IntMatrix::zeros(k * dst.len(), k * src.len());
    if i >= n {
        return d;
    }
    for (si, s) in src.iter().enumerate() {
        for j in (0..n).filter(|j| !s.contains(j)) {
            let mut t = s.clone();
            t.push(j);
            t.sort_unstable();
            let ti = dst.iter().position(|x| *x == t).expect("subset present");
            let sign: i64 = if s.iter().filter(|&&x| x < j).count() % 2 == 0 { 1 } else { -1 };
            let sigma = m.sigmas[j].matrix();
            for r in 0..k {
                for c in 0..k {
                    let delta = if r == c { 1 } else { 0 };
                    let v = sign * (sigma[r][c] - delta);
                    if v != 0 {
                        let cur = d.get(ti * k + r, si * k + c).clone();
                        d.set(ti * k + r, si * k + c, cur + v);
                    }
                }
            }
        }
    }
    d
}

/// The Koszul differential from degree `i` to `i + 1`, for testing.
pub fn koszul_differential(m: &ZnModule, i: usize) -> IntMatrix {
    differential(m, i)
}

/// `H^i(Z^n, M)`.
pub fn koszul_cohomology(m: &ZnModule, i: usize) -> Result<CohomologyGroup> {
    let n = m.nullity();
    if i > n {
        return Err(Error::DegreeOutOfRange { degree: i, max: n });
    }
    let blocks_i = combinations(n, i).len();
    let rel_i = block_relations(&m.group, blocks_i);
    let rel_next = block_relations(&m.group, combinations(n, i + 1).len());
    let cocycles = preimage(&differential(m, i), &rel_next)?;
    let boundaries = if i == 0 { rel_i } else { differential(m, i - 1).hconcat(&rel_i)? };
    let quotient = LatticeQuotient::new(&cocycles, &boundaries)?;
    Ok(CohomologyGroup {
        degree: i,
        module_rank: m.group.rank(),
        subsets: combinations(n, i),
        quotient,
        divisors: m.group.divisors().to_vec(),
    })
}

fn map_cochain(u: &FinAbHom, cochain: &[Vec<i64>]) -> Vec<Vec<i64>> {
    cochain.iter().map(|x| u.apply_coords(x)).collect()
}

/// The map on `H^i` induced by a module map `u: src -> dst` satisfying
/// `u sigma_j^src = sigma_j^dst u`, applied componentwise to cochains.
pub fn induced_map(src: &ZnModule, dst: &ZnModule, u: &FinAbHom, i: usize) -> Result<FinAbHom> {
    if u.domain() != &src.group || u.codomain() != &dst.group {
        return Err(Error::GroupMismatch { expected: src.group.to_string(), found: u.domain().to_string() });
    }
    if src.nullity() != dst.nullity() {
        return Err(Error::Dimension("modules of different nullity".into()));
    }
    for (a, b) in src.sigmas.iter().zip(&dst.sigmas) {
        if u.compose(a)? != b.compose(u)? {
            return Err(Error::NotEquivariant);
        }
    }
    let hs = koszul_cohomology(src, i)?;
    let hd = koszul_cohomology(dst, i)?;
    let columns: Vec<Vec<i64>> =
        hs.representatives().iter().map(|rep| hd.class_of(&map_cochain(u, rep))).collect::<Result<_>>()?;
    let rows = (0..hd.group().rank()).map(|r| columns.iter().map(|c| c[r]).collect()).collect();
    FinAbHom::new(hs.group().clone(), hd.group().clone(), rows)
}

/// The automorphism of `H^i(Z^n, M)` induced by an automorphism `u` of `M`
/// commuting with the action.
pub fn equivariant_action_on_h(m: &ZnModule, i: usize, u: &FinAbHom) -> Result<FinAbHom> {
    if u.domain() != &m.group || u.codomain() != &m.group {
        return Err(Error::GroupMismatch { expected: m.group.to_string(), found: u.domain().to_string() });
    }
    if !m.commutes_with(u)? {
        return Err(Error::NotEquivariant);
    }
    induced_map(m, m, u, i)
}

/// Pullback along `g` in GL_n(Z) on `H^2` of a trivial module, computed by
/// transporting the alternating form `e_k ^ e_l -> x_kl` represented by each
/// cochain through `g`.
pub fn glnz_action_on_h2(m: &ZnModule, g: &IntMatrix) -> Result<FinAbHom> {
    let n = m.nullity();
    if !m.is_trivial_action() {
        return Err(Error::InvalidInput("module action must be trivial".into()));
    }
    if n < 2 {
        return Err(Error::DegreeOutOfRange { degree: 2, max: n });
    }
    if g.rows() != n || g.cols() != n {
        return Err(Error::Dimension("matrix size must equal the nullity".into()));
    }
    if !g.is_unimodular() {
        return Err(Error::NotUnimodular);
    }
    let h = koszul_cohomology(m, 2)?;
    let pairs = h.components().to_vec();
    let k = m.group.rank();
    let mut columns = Vec::new();
    for rep in h.representatives() {
        let mut out = vec![vec![0i64; k]; pairs.len()];
        for (target, kl) in pairs.iter().enumerate() {
            let (kk, ll) = (kl[0], kl[1]);
            for (source, ij) in pairs.iter().enumerate() {
                let (i, j) = (ij[0], ij[1]);
                let coeff = g.get_i64(i, kk) * g.get_i64(j, ll) - g.get_i64(j, kk) * g.get_i64(i, ll);
                for c in 0..k {
                    out[target][c] += coeff * rep[source][c];
                }
            }
        }
        let out: Vec<Vec<i64>> = out.iter().map(|x| m.group.reduce(x)).collect();
        columns.push(h.class_of(&out)?);
    }
    let rows = (0..h.group().rank()).map(|r| columns.iter().map(|c| c[r]).collect()).collect();
    FinAbHom::new(h.group().clone(), h.group().clone(), rows)
}

/// Top-degree pullback along `g`: `H^n(M) -> H^n(M base-changed by g)`.
/// Both groups are the coinvariants of `M`, and the map is multiplication
/// by `det(g)` (the orientation character of Z^n).
pub fn top_degree_pullback(m: &ZnModule, g: &IntMatrix) -> Result<FinAbHom> {
    let n = m.nullity();
    let det = g.det()?;
    if !g.is_unimodular() {
        return Err(Error::NotUnimodular);
    }
    let sign: i64 = if det > BigInt::zero() { 1 } else { -1 };
    let target = m.base_change(g)?;
    let hs = koszul_cohomology(m, n)?;
    let ht = koszul_cohomology(&target, n)?;
    let columns: Vec<Vec<i64>> = hs
        .representatives()
        .iter()
        .map(|rep| {
            let scaled: Vec<Vec<i64>> = rep.iter().map(|x| m.group.reduce(&x.iter().map(|v| v * sign).collect::<Vec<_>>())).collect();
            ht.class_of(&scaled)
        })
        .collect::<Result<_>>()?;
    let rows = (0..ht.group().rank()).map(|r| columns.iter().map(|c| c[r]).collect()).collect();
    FinAbHom::new(hs.group().clone(), ht.group().clone(), rows)
}

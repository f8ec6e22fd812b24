//! Loop cocycles over an algebraically closed base: homomorphisms from Z^n
//! into a finite group, i.e. n-tuples of commuting elements, up to
//! conjugacy and change of basis of Z^n.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::linalg::{glnz_generators, IntMatrix};

/// A tuple of pairwise commuting elements of `target`.
#[derive(Clone, Debug)]
pub struct LoopClass {
    target: Arc<FiniteGroup>,
    tuple: Vec<usize>,
}

impl PartialEq for LoopClass {
    fn eq(&self, other: &Self) -> bool {
        same_target(&self.target, &other.target) && self.tuple == other.tuple
    }
}

impl Eq for LoopClass {}

fn same_target(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl LoopClass {
    pub fn new(target: Arc<FiniteGroup>, tuple: Vec<usize>) -> Result<Self> {
        if tuple.iter().any(|&x| x >= target.order()) {
            return Err(Error::InvalidInput("tuple entry is not a group element".into()));
        }
        for (i, &a) in tuple.iter().enumerate() {
            for &b in &tuple[i + 1..] {
                if !target.commute(a, b) {
                    return Err(Error::InvalidInput("tuple entries do not commute".into()));
                }
            }
        }
        Ok(LoopClass { target, tuple })
    }

    pub fn target(&self) -> &Arc<FiniteGroup> {
        &self.target
    }

    pub fn tuple(&self) -> &[usize] {
        &self.tuple
    }

    pub fn nullity(&self) -> usize {
        self.tuple.len()
    }

    /// Image of the lattice vector `v` under the homomorphism Z^n -> target.
    pub fn evaluate(&self, v: &[i64]) -> usize {
        self.tuple.iter().zip(v).fold(0, |acc, (&g, &k)| self.target.mul(acc, self.target.pow(g, k)))
    }

    /// Precomposition with `g`: entry i becomes `prod_j t_j^{g_ji}`.
    pub fn act(&self, g: &IntMatrix) -> Result<LoopClass> {
        let n = self.nullity();
        if g.rows() != n || g.cols() != n {
            return Err(Error::Dimension("base change matrix size".into()));
        }
        let tuple = (0..n)
            .map(|i| {
                let col: Vec<i64> = (0..n).map(|j| g.get_i64(j, i)).collect();
                self.evaluate(&col)
            })
            .collect();
        Ok(LoopClass { target: self.target.clone(), tuple })
    }

    /// Lexicographically least tuple in the conjugacy class.
    pub fn canonical(&self) -> LoopClass {
        let tuple = canonical_tuple(&self.target, &self.tuple);
        LoopClass { target: self.target.clone(), tuple }
    }

    /// The subgroup generated by the tuple, sorted.
    pub fn image(&self) -> Vec<usize> {
        self.target.subgroup_generated(&self.tuple)
    }
}

fn conjugate_tuple(g: &FiniteGroup, x: usize, t: &[usize]) -> Vec<usize> {
    t.iter().map(|&a| g.conjugate(x, a)).collect()
}

fn canonical_tuple(g: &FiniteGroup, t: &[usize]) -> Vec<usize> {
    g.elements().map(|x| conjugate_tuple(g, x, t)).min().expect("nonempty group")
}

pub fn are_conjugate(c1: &LoopClass, c2: &LoopClass) -> Result<bool> {
    if !same_target(&c1.target, &c2.target) {
        return Err(Error::GroupMismatch {
            expected: c1.target.name().to_string(),
            found: c2.target.name().to_string(),
        });
    }
    if c1.nullity() != c2.nullity() {
        return Err(Error::Dimension("tuples of different length".into()));
    }
    Ok(c1.target.elements().any(|x| conjugate_tuple(&c1.target, x, &c1.tuple) == c2.tuple))
}

/// One representative (the lexicographically least tuple) per conjugacy
/// class of commuting n-tuples, in increasing order.
pub fn classify_commuting_tuples(g: &Arc<FiniteGroup>, n: usize) -> Vec<LoopClass> {
    let mut reps = BTreeSet::new();
    let mut cur = Vec::with_capacity(n);
    collect_commuting(g, n, &mut cur, &mut |t| {
        if canonical_tuple(g, t) == t {
            reps.insert(t.to_vec());
        }
    });
    reps.into_iter().map(|tuple| LoopClass { target: g.clone(), tuple }).collect()
}

fn collect_commuting(g: &FiniteGroup, n: usize, cur: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
    if cur.len() == n {
        visit(cur);
        return;
    }
    for x in g.elements() {
        if cur.iter().all(|&a| g.commute(a, x)) {
            cur.push(x);
            collect_commuting(g, n, cur, visit);
            cur.pop();
        }
    }
}

/// Number of commuting n-tuples in `g`.
pub fn count_commuting_tuples(g: &FiniteGroup, n: usize) -> usize {
    let mut count = 0;
    collect_commuting(g, n, &mut Vec::new(), &mut |_| count += 1);
    count
}

/// Orbits of conjugacy classes under GL_n(Z), by BFS over generators.
/// Returns one representative per orbit (the least canonical tuple it
/// contains), each with the list of classes it merges.
pub fn glnz_orbit_partition(classes: &[LoopClass], n: usize) -> Result<Vec<Vec<LoopClass>>> {
    let gens = if n == 0 { Vec::new() } else { glnz_generators(n) };
    let mut done: HashSet<Vec<usize>> = HashSet::new();
    let mut orbits = Vec::new();
    for c in classes {
        if c.nullity() != n {
            return Err(Error::Dimension("class of wrong nullity".into()));
        }
        let start = c.canonical();
        if done.contains(&start.tuple) {
            continue;
        }
        let mut orbit = BTreeSet::from([start.tuple.clone()]);
        let mut queue = VecDeque::from([start.clone()]);
        while let Some(x) = queue.pop_front() {
            for g in &gens {
                let y = x.act(g)?.canonical();
                if orbit.insert(y.tuple.clone()) {
                    queue.push_back(y);
                }
            }
        }
        done.extend(orbit.iter().cloned());
        orbits.push(orbit.into_iter().map(|tuple| LoopClass { target: c.target.clone(), tuple }).collect::<Vec<_>>());
    }
    orbits.sort_by(|a: &Vec<LoopClass>, b| a[0].tuple.cmp(&b[0].tuple));
    Ok(orbits)
}

pub fn glnz_orbits(classes: &[LoopClass], n: usize) -> Result<Vec<LoopClass>> {
    Ok(glnz_orbit_partition(classes, n)?.into_iter().map(|o| o[0].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::symmetric(3))
    }

    fn find(g: &FiniteGroup, order: usize) -> Vec<usize> {
        g.elements().filter(|&x| g.element_order(x) == order).collect()
    }

    #[test]
    fn s3_pairs() {
        let g = s3();
        let classes = classify_commuting_tuples(&g, 2);
        assert_eq!(classes.len(), 8);
        assert_eq!(glnz_orbits(&classes, 2).unwrap().len(), 3);
    }

    #[test]
    fn conjugacy_in_s3() {
        let g = s3();
        let t = find(&g, 2);
        let c = find(&g, 3);
        let a = LoopClass::new(g.clone(), vec![t[0], t[0]]).unwrap();
        let b = LoopClass::new(g.clone(), vec![t[1], t[1]]).unwrap();
        assert!(are_conjugate(&a, &b).unwrap());
        let x = LoopClass::new(g.clone(), vec![t[0], 0]).unwrap();
        let y = LoopClass::new(g.clone(), vec![c[0], 0]).unwrap();
        assert!(!are_conjugate(&x, &y).unwrap());
    }

    #[test]
    fn small_abelian_cases() {
        let triv = Arc::new(FiniteGroup::trivial());
        assert_eq!(classify_commuting_tuples(&triv, 3).len(), 1);
        let z2 = Arc::new(FiniteGroup::cyclic(2));
        let classes = classify_commuting_tuples(&z2, 2);
        assert_eq!(classes.len(), 4);
        assert_eq!(glnz_orbits(&classes, 2).unwrap().len(), 2);
        let z3 = Arc::new(FiniteGroup::cyclic(3));
        let orbits = glnz_orbit_partition(&classify_commuting_tuples(&z3, 1), 1).unwrap();
        assert_eq!(orbits.len(), 2);
        assert_eq!(orbits[1].len(), 2);
    }

    #[test]
    fn mismatched_targets() {
        let a = LoopClass::new(s3(), vec![0]).unwrap();
        let b = LoopClass::new(Arc::new(FiniteGroup::cyclic(2)), vec![0]).unwrap();
        assert!(are_conjugate(&a, &b).is_err());
    }
}

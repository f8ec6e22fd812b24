//! Small finite groups stored by multiplication table.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::hash::Hash;

use crate::error::{Error, Result};

/// A finite group on `0..order`, element 0 the identity.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Validates the group axioms on a table whose element 0 is the identity.
    pub fn from_table(name: impl Into<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(Error::InvalidInput("multiplication table must be square with entries in range".into()));
        }
        for (a, row) in table.iter().enumerate() {
            if table[0][a] != a || row[0] != a {
                return Err(Error::InvalidInput("element 0 is not an identity".into()));
            }
        }
        let mut inverse = vec![usize::MAX; n];
        for a in 0..n {
            let Some(b) = (0..n).find(|&b| table[a][b] == 0) else {
                return Err(Error::InvalidInput(format!("element {a} has no inverse")));
            };
            inverse[a] = b;
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidInput("multiplication is not associative".into()));
                    }
                }
            }
        }
        Ok(FiniteGroup { name: name.into(), table, inverse })
    }

    /// The group generated by `gens` inside some ambient structure with the
    /// given multiplication; elements are numbered in BFS order.
    pub fn generated_by<T, F>(name: impl Into<String>, identity: T, gens: &[T], mul: F) -> (Self, Vec<T>)
    where
        T: Clone + Eq + Hash,
        F: Fn(&T, &T) -> T,
    {
        let mut elems = vec![identity.clone()];
        let mut index: HashMap<T, usize> = HashMap::from([(identity, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in gens {
                let y = mul(&elems[i], g);
                if !index.contains_key(&y) {
                    index.insert(y.clone(), elems.len());
                    queue.push_back(elems.len());
                    elems.push(y);
                }
            }
        }
        let n = elems.len();
        let table: Vec<Vec<usize>> =
            (0..n).map(|a| (0..n).map(|b| index[&mul(&elems[a], &elems[b])]).collect()).collect();
        let inverse = (0..n).map(|a| (0..n).find(|&b| table[a][b] == 0).expect("finite group")).collect();
        (FiniteGroup { name: name.into(), table, inverse }, elems)
    }

    /// Group generated by permutations of `0..degree`, each given as images.
    pub fn from_permutations(name: impl Into<String>, degree: usize, gens: &[Vec<usize>]) -> (Self, Vec<Vec<usize>>) {
        let id: Vec<usize> = (0..degree).collect();
        // (p * q)(x) = p(q(x))
        Self::generated_by(name, id, gens, |p, q| q.iter().map(|&x| p[x]).collect())
    }

    pub fn trivial() -> Self {
        FiniteGroup { name: "1".into(), table: vec![vec![0]], inverse: vec![0] }
    }

    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        let inverse = (0..n).map(|a| (n - a) % n).collect();
        FiniteGroup { name: format!("Z/{n}"), table, inverse }
    }

    pub fn symmetric(k: usize) -> Self {
        let mut gens = Vec::new();
        if k >= 2 {
            let mut t: Vec<usize> = (0..k).collect();
            t.swap(0, 1);
            gens.push(t);
            gens.push((0..k).map(|i| (i + 1) % k).collect());
        }
        Self::from_permutations(format!("S{k}"), k, &gens).0
    }

    /// Dihedral group of order 2k.
    pub fn dihedral(k: usize) -> Self {
        let rot: Vec<usize> = (0..k).map(|i| (i + 1) % k).collect();
        let refl: Vec<usize> = (0..k).map(|i| (k - i) % k).collect();
        Self::from_permutations(format!("D{}", 2 * k), k, &[rot, refl]).0
    }

    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Self {
        let nb = b.order();
        let n = a.order() * nb;
        let table = (0..n)
            .map(|x| {
                (0..n).map(|y| a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb)).collect()
            })
            .collect();
        let inverse = (0..n).map(|x| a.inv(x / nb) * nb + b.inv(x % nb)).collect();
        FiniteGroup { name: format!("{} x {}", a.name, b.name), table, inverse }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// `a^k`, `k` possibly negative.
    pub fn pow(&self, a: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(a) } else { a };
        let mut acc = 0;
        for _ in 0..k.unsigned_abs() % self.element_order(a) as u64 {
            acc = self.mul(acc, base);
        }
        acc
    }

    /// `g a g^{-1}`.
    pub fn conjugate(&self, g: usize, a: usize) -> usize {
        self.mul(self.mul(g, a), self.inv(g))
    }

    pub fn commute(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    /// Elements commuting with every element of `set`.
    pub fn centralizer(&self, set: &[usize]) -> Vec<usize> {
        self.elements().filter(|&g| set.iter().all(|&a| self.commute(g, a))).collect()
    }

    pub fn is_abelian(&self) -> bool {
        self.elements().all(|a| self.elements().all(|b| self.commute(a, b)))
    }

    /// Subgroup generated by `set`, sorted.
    pub fn subgroup_generated(&self, set: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut queue = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for &s in set {
                let y = self.mul(x, s);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        self.elements().filter(|&x| seen[x]).collect()
    }
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (order {})", self.name, self.order())
    }
}

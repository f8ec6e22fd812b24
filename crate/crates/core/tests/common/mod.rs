//! Independent brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use loopclass::azumaya::MumfordDatum;
use loopclass::group::FiniteGroup;
use loopclass::linalg::{closure_mod, glnz_generators, FinAbHom};

/// Splits a diagonal form `<t_I>` over `F_{n-1}((t_n))` into its two residue
/// forms over `F_{n-1}`.
fn residues(entries: &[u32], n: usize) -> (Vec<u32>, Vec<u32>) {
    let bit = 1u32 << (n - 1);
    let first = entries.iter().copied().filter(|e| e & bit == 0).collect();
    let second = entries.iter().copied().filter(|e| e & bit != 0).map(|e| e & !bit).collect();
    (first, second)
}

/// Isotropy by iterated residues; over a quadratically closed field a form
/// is isotropic iff its dimension is at least 2.
pub fn residue_isotropic(entries: &[u32], n: usize) -> bool {
    if n == 0 {
        return entries.len() >= 2;
    }
    let (a, b) = residues(entries, n);
    residue_isotropic(&a, n - 1) || residue_isotropic(&b, n - 1)
}

/// Hyperbolicity by iterated residues: `W(K((t))) = W(K) + W(K)`, and over a
/// quadratically closed field the Witt ring is Z/2 by dimension.
pub fn residue_hyperbolic(entries: &[u32], n: usize) -> bool {
    if n == 0 {
        return entries.len() % 2 == 0;
    }
    let (a, b) = residues(entries, n);
    residue_hyperbolic(&a, n - 1) && residue_hyperbolic(&b, n - 1)
}

/// Since -1 is a square, `q1 = q2` iff `q1 + q2` is hyperbolic (same dimension).
pub fn residue_isometric(a: &[u32], b: &[u32], n: usize) -> bool {
    a.len() == b.len() && residue_hyperbolic(&[a, b].concat(), n)
}

/// All diagonal forms of dimension d in n variables, as sorted multisets.
pub fn all_diagonal_forms(d: usize, n: usize) -> Vec<Vec<u32>> {
    fn go(start: u32, left: usize, m: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for x in start..m {
            cur.push(x);
            go(x, left - 1, m, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, d, 1 << n, &mut Vec::new(), &mut out);
    out
}

/// Partition of `items` into classes of the equivalence relation `eq`.
pub fn partition<T: Clone>(items: &[T], eq: impl Fn(&T, &T) -> bool) -> Vec<Vec<T>> {
    let mut classes: Vec<Vec<T>> = Vec::new();
    for x in items {
        match classes.iter_mut().find(|c| eq(&c[0], x)) {
            Some(c) => c.push(x.clone()),
            None => classes.push(vec![x.clone()]),
        }
    }
    classes
}

/// Automorphisms of the datum's group preserving the pairing, as matrices
/// acting on coordinate columns.
pub fn pairing_automorphisms(datum: &MumfordDatum) -> Vec<FinAbHom> {
    let g = datum.group();
    let elems: Vec<Vec<i64>> = g.coordinate_vectors().collect();
    let r = g.rank();
    let basis: Vec<Vec<i64>> = (0..r).map(|i| (0..r).map(|k| (k == i) as i64).collect()).collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; r];
    loop {
        let images: Vec<&Vec<i64>> = idx.iter().map(|&i| &elems[i]).collect();
        let rows: Vec<Vec<i64>> = (0..r).map(|row| images.iter().map(|im| im[row]).collect()).collect();
        if let Ok(h) = FinAbHom::new(g.clone(), g.clone(), rows) {
            let preserves = (0..r).all(|i| {
                (0..r).all(|j| datum.pairing(images[i], images[j]).unwrap() == datum.pairing(&basis[i], &basis[j]).unwrap())
            });
            if preserves && h.is_automorphism() {
                out.push(h);
            }
        }
        let mut k = 0;
        loop {
            if k == r {
                return out;
            }
            idx[k] += 1;
            if idx[k] < elems.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// All generating n-tuples of the datum's group.
pub fn generating_tuples(datum: &MumfordDatum, n: usize) -> Vec<Vec<Vec<i64>>> {
    let elems: Vec<Vec<i64>> = datum.group().coordinate_vectors().collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; n];
    loop {
        let t: Vec<Vec<i64>> = idx.iter().map(|&i| elems[i].clone()).collect();
        if datum.generates(&t).unwrap() {
            out.push(t);
        }
        let mut k = 0;
        loop {
            if k == n {
                return out;
            }
            idx[k] += 1;
            if idx[k] < elems.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Orbits of generating n-tuples under base change by the image of GL_n(Z)
/// mod the exponent and under pairing-preserving automorphisms, by
/// exhaustive closure.
pub fn brute_force_tuple_classes(datum: &MumfordDatum, n: usize) -> Vec<BTreeSet<Vec<Vec<i64>>>> {
    let m = datum.exponent();
    let group = datum.group().clone();
    let base_changes = closure_mod(&glnz_generators(n), m);
    let autos = pairing_automorphisms(datum);
    let tuples = generating_tuples(datum, n);
    let mut class_of: BTreeMap<Vec<Vec<i64>>, usize> = BTreeMap::new();
    let mut classes: Vec<BTreeSet<Vec<Vec<i64>>>> = Vec::new();
    for t in &tuples {
        if class_of.contains_key(t) {
            continue;
        }
        let k = classes.len();
        let mut orbit = BTreeSet::new();
        let mut stack = vec![t.clone()];
        while let Some(x) = stack.pop() {
            if !orbit.insert(x.clone()) {
                continue;
            }
            class_of.insert(x.clone(), k);
            for g in &base_changes {
                let y: Vec<Vec<i64>> = (0..n)
                    .map(|i| {
                        let mut v = vec![0i64; group.rank()];
                        for (j, xj) in x.iter().enumerate() {
                            for (c, &e) in v.iter_mut().zip(xj) {
                                *c += g.get(j, i) * e;
                            }
                        }
                        group.reduce(&v)
                    })
                    .collect();
                stack.push(y);
            }
            for u in &autos {
                stack.push(x.iter().map(|e| u.apply_coords(e)).collect());
            }
        }
        classes.push(orbit);
    }
    classes
}

/// Number of conjugacy classes of commuting n-tuples, by Burnside: the
/// average over conjugating elements of the number of fixed tuples.
pub fn burnside_commuting_tuples(g: &FiniteGroup, n: usize) -> usize {
    let elems: Vec<usize> = g.elements().collect();
    let mut tuples: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::new();
        for t in &tuples {
            for &x in &elems {
                if t.iter().all(|&y| g.commute(x, y)) {
                    let mut u = t.clone();
                    u.push(x);
                    next.push(u);
                }
            }
        }
        tuples = next;
    }
    let fixed: usize = elems
        .iter()
        .map(|&c| tuples.iter().filter(|t| t.iter().all(|&a| g.conjugate(c, a) == a)).count())
        .sum();
    fixed / g.order()
}

//! Brute-force reference values, computed without coset enumeration.

#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

pub type P = Vec<usize>;

fn compose(p: &P, q: &P) -> P {
    p.iter().map(|&x| q[x]).collect()
}

fn is_even(p: &P) -> bool {
    let mut seen = vec![false; p.len()];
    let mut transpositions = 0;
    for s in 0..p.len() {
        let mut len = 0;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = p[x];
            len += 1;
        }
        if len > 0 {
            transpositions += len - 1;
        }
    }
    transpositions % 2 == 0
}

fn all_perms(n: usize) -> Vec<P> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in all_perms(n - 1) {
        for pos in 0..n {
            let mut q: Vec<usize> = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Every even permutation of `n` letters.
pub fn alternating(n: usize) -> Vec<P> {
    all_perms(n).into_iter().filter(is_even).collect()
}

/// Closure of a generating set under composition.
pub fn closure(gens: &[P]) -> BTreeSet<P> {
    let n = gens[0].len();
    let id: P = (0..n).collect();
    let mut seen = BTreeSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = compose(&x, g);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen
}

pub fn perm_order(p: &P) -> usize {
    let id: P = (0..p.len()).collect();
    let mut x = p.clone();
    let mut k = 1;
    while x != id {
        x = compose(&x, p);
        k += 1;
    }
    k
}

/// Size of the commutator quotient of a permutation group.
pub fn abelianization_order(gens: &[P]) -> usize {
    let group: Vec<P> = closure(gens).into_iter().collect();
    let inv = |p: &P| {
        let mut q = vec![0; p.len()];
        for (i, &x) in p.iter().enumerate() {
            q[x] = i;
        }
        q
    };
    let mut comms = Vec::new();
    for x in &group {
        for y in &group {
            comms.push(compose(&compose(&inv(x), &inv(y)), &compose(x, y)));
        }
    }
    group.len() / closure(&comms).len()
}

/// `u = (0 1)(2 3)`, `v = (0 1 2)` in A4: u^2 = v^3 = (uv)^3 = 1.
pub fn a4_generators() -> (P, P) {
    (vec![1, 0, 3, 2], vec![1, 2, 0, 3])
}

/// `u = (0 1)(2 3)`, `v = (0 2 4)` in A5: u^2 = v^3 = (uv)^5 = 1.
pub fn a5_generators() -> (P, P) {
    (vec![1, 0, 3, 2, 4], vec![2, 1, 4, 3, 0])
}

/// Number of 2x2 matrices over Z/p with determinant 1.
pub fn sl2_count(p: u64) -> usize {
    let mut count = 0;
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                for d in 0..p {
                    if (a * d + p * p - b * c) % p == 1 % p {
                        count += 1;
                    }
                }
            }
        }
    }
    count
}

pub fn word_power(p: &P, k: usize) -> P {
    let mut x: P = (0..p.len()).collect();
    for _ in 0..k {
        x = compose(&x, p);
    }
    x
}

pub fn mul(p: &P, q: &P) -> P {
    compose(p, q)
}

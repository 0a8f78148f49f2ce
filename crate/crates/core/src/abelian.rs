//! Abelianization through Smith normal form, the spherical / euclidean /
//! hyperbolic trichotomy for triangle groups, and related invariants.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use crate::builders::PretzelParams;
use crate::error::{Error, Result};
use crate::word::Presentation;

const SNF: &str = "Smith normal form";

/// Diagonal of the Smith normal form of `mat`: nonnegative entries
/// `d1 | d2 | ...`, zeros last, `min(rows, cols)` of them.
///
/// Arithmetic is checked; overflow is reported, never wrapped.
pub fn smith_normal_form(mat: &[Vec<i64>]) -> Result<Vec<i64>> {
    let rows = mat.len();
    let cols = mat.first().map_or(0, Vec::len);
    if mat.iter().any(|r| r.len() != cols) {
        return Err(Error::InvalidParams(
            "matrix rows have different lengths".into(),
        ));
    }
    let mut a: Vec<Vec<i64>> = mat.to_vec();
    let mut diag = Vec::with_capacity(rows.min(cols));
    for t in 0..rows.min(cols) {
        loop {
            let Some((pi, pj)) = min_nonzero(&a, t) else {
                diag.resize(rows.min(cols), 0);
                return Ok(diag);
            };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            let pivot = a[t][t];
            let mut clean = true;
            for i in t + 1..rows {
                let q = a[i][t] / pivot;
                if q != 0 {
                    for j in t..cols {
                        let sub = q
                            .checked_mul(a[t][j])
                            .ok_or(Error::ArithmeticOverflow(SNF))?;
                        a[i][j] = a[i][j]
                            .checked_sub(sub)
                            .ok_or(Error::ArithmeticOverflow(SNF))?;
                    }
                }
                clean &= a[i][t] == 0;
            }
            for j in t + 1..cols {
                let q = a[t][j] / pivot;
                if q != 0 {
                    for row in a.iter_mut().skip(t) {
                        let sub = q
                            .checked_mul(row[t])
                            .ok_or(Error::ArithmeticOverflow(SNF))?;
                        row[j] = row[j]
                            .checked_sub(sub)
                            .ok_or(Error::ArithmeticOverflow(SNF))?;
                    }
                }
                clean &= a[t][j] == 0;
            }
            if !clean {
                continue;
            }
            // The pivot must divide the whole remaining block.
            let bad = (t + 1..rows).find(|&i| a[i][t + 1..].iter().any(|&x| x % pivot != 0));
            match bad {
                Some(i) => {
                    for j in t..cols {
                        a[t][j] = a[t][j]
                            .checked_add(a[i][j])
                            .ok_or(Error::ArithmeticOverflow(SNF))?;
                    }
                }
                None => break,
            }
        }
        diag.push(
            a[t][t]
                .checked_abs()
                .ok_or(Error::ArithmeticOverflow(SNF))?,
        );
    }
    Ok(diag)
}

fn min_nonzero(a: &[Vec<i64>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(u64, usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, &x) in row.iter().enumerate().skip(t) {
            if x != 0 && best.is_none_or(|(b, _, _)| x.unsigned_abs() < b) {
                best = Some((x.unsigned_abs(), i, j));
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

/// Invariant factors of a finitely generated abelian group: `d1 | d2 | ...`
/// with no factor equal to 1, and a `0` for each infinite cyclic factor,
/// listed last.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct AbelianInvariants(Vec<u64>);

impl AbelianInvariants {
    pub fn from_factors(mut factors: Vec<u64>) -> Self {
        factors.retain(|&d| d != 1);
        factors.sort_by_key(|&d| (d == 0, d));
        Self(factors)
    }

    pub fn factors(&self) -> &[u64] {
        &self.0
    }

    pub fn is_trivial(&self) -> bool {
        self.0.is_empty()
    }

    pub fn free_rank(&self) -> usize {
        self.0.iter().filter(|&&d| d == 0).count()
    }

    /// Group order, `None` when infinite.
    pub fn order(&self) -> Option<u64> {
        self.0.iter().try_fold(
            1u64,
            |acc, &d| if d == 0 { None } else { acc.checked_mul(d) },
        )
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{d}")?;
        }
        f.write_str("]")
    }
}

/// Abelianization from the relator exponent-sum matrix.
pub fn abelianization(p: &Presentation) -> Result<AbelianInvariants> {
    let rank = p.rank();
    let mat: Vec<Vec<i64>> = p.relators().iter().map(|r| r.exponent_sums(rank)).collect();
    let diag = if mat.is_empty() {
        Vec::new()
    } else {
        smith_normal_form(&mat)?
    };
    let nonzero: Vec<u64> = diag
        .iter()
        .filter(|&&d| d != 0)
        .map(|&d| d as u64)
        .collect();
    let mut factors = nonzero.clone();
    factors.resize(factors.len() + rank - nonzero.len(), 0);
    Ok(AbelianInvariants::from_factors(factors))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TriangleKind {
    Spherical,
    Euclidean,
    Hyperbolic,
}

impl TriangleKind {
    pub fn as_str(self) -> &'static str {
        match self {
            TriangleKind::Spherical => "spherical",
            TriangleKind::Euclidean => "euclidean",
            TriangleKind::Hyperbolic => "hyperbolic",
        }
    }
}

impl fmt::Display for TriangleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupOrder {
    Finite(u64),
    Infinite,
}

impl GroupOrder {
    pub fn finite(self) -> Option<u64> {
        match self {
            GroupOrder::Finite(n) => Some(n),
            GroupOrder::Infinite => None,
        }
    }
}

impl fmt::Display for GroupOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupOrder::Finite(n) => write!(f, "{n}"),
            GroupOrder::Infinite => f.write_str("infinite"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TriangleClass {
    pub kind: TriangleKind,
    /// Order of `<u, v | u^l, v^m, (uv)^n>`.
    pub dyck_order: GroupOrder,
    /// Order of the triangle Coxeter group, twice the von Dyck order.
    pub coxeter_order: GroupOrder,
}

/// Classify by the sign of `1/|l| + 1/|m| + 1/|n| - 1`, in exact integer
/// arithmetic. Spherical triangle groups have von Dyck order
/// `2 / (1/|l| + 1/|m| + 1/|n| - 1)`.
pub fn classify_triangle(l: i64, m: i64, n: i64) -> Result<TriangleClass> {
    let mut abs = [0u128; 3];
    for (slot, v) in abs.iter_mut().zip([l, m, n]) {
        if v.unsigned_abs() < 2 {
            return Err(Error::InvalidParams(format!(
                "|{v}| < 2 in triangle parameters"
            )));
        }
        *slot = v.unsigned_abs() as u128;
    }
    let [a, b, c] = abs;
    let over = |x: Option<u128>| x.ok_or(Error::ArithmeticOverflow("triangle classification"));
    // 1/a + 1/b + 1/c - 1 = (bc + ac + ab - abc) / abc
    let pos = over(
        b.checked_mul(c)
            .and_then(|bc| bc.checked_add(a * c))
            .and_then(|s| s.checked_add(a * b)),
    )?;
    let abc = over(a.checked_mul(b).and_then(|ab| ab.checked_mul(c)))?;
    let class = match pos.cmp(&abc) {
        core::cmp::Ordering::Greater => {
            let num = pos - abc;
            let dyck = 2 * abc / num;
            debug_assert_eq!(2 * abc % num, 0);
            let dyck =
                u64::try_from(dyck).map_err(|_| Error::ArithmeticOverflow("triangle order"))?;
            TriangleClass {
                kind: TriangleKind::Spherical,
                dyck_order: GroupOrder::Finite(dyck),
                coxeter_order: GroupOrder::Finite(2 * dyck),
            }
        }
        core::cmp::Ordering::Equal => TriangleClass {
            kind: TriangleKind::Euclidean,
            dyck_order: GroupOrder::Infinite,
            coxeter_order: GroupOrder::Infinite,
        },
        core::cmp::Ordering::Less => TriangleClass {
            kind: TriangleKind::Hyperbolic,
            dyck_order: GroupOrder::Infinite,
            coxeter_order: GroupOrder::Infinite,
        },
    };
    Ok(class)
}

/// Rank of `H2` of the triangle Coxeter group as an elementary abelian
/// 2-group, for the one case handled here: `l` even, `m` and `n` odd, where
/// the rank is 1. Other parity patterns are refused.
pub fn howlett_rank(l: i64, m: i64, n: i64) -> Result<u32> {
    if [l, m, n].iter().any(|v| v.unsigned_abs() < 2) {
        return Err(Error::InvalidParams(format!(
            "({l}, {m}, {n}): weights need |.| >= 2"
        )));
    }
    if l % 2 == 0 && m % 2 != 0 && n % 2 != 0 {
        Ok(1)
    } else {
        Err(Error::InvalidParams(format!(
            "({l}, {m}, {n}): only the (even, odd, odd) parity pattern is implemented"
        )))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// Both Coxeter quotients are finite, of different orders.
    CoxeterOrders(u64, u64),
    /// The Coxeter quotients have different geometric types.
    Kinds(TriangleKind, TriangleKind),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Distinctness {
    Distinct(Certificate),
    Inconclusive,
}

/// Distinguish two Klein bottles by their Coxeter quotients. Never claims
/// the two are the same.
pub fn distinctness_report(p1: PretzelParams, p2: PretzelParams) -> Result<Distinctness> {
    let multiset = |p: PretzelParams| {
        let mut v = [
            p.l().unsigned_abs(),
            p.m().unsigned_abs(),
            p.n().unsigned_abs(),
        ];
        v.sort_unstable();
        v
    };
    if multiset(p1) == multiset(p2) {
        return Ok(Distinctness::Inconclusive);
    }
    let c1 = classify_triangle(p1.l(), p1.m(), p1.n())?;
    let c2 = classify_triangle(p2.l(), p2.m(), p2.n())?;
    if c1.kind != c2.kind {
        return Ok(Distinctness::Distinct(Certificate::Kinds(c1.kind, c2.kind)));
    }
    match (c1.coxeter_order, c2.coxeter_order) {
        (GroupOrder::Finite(a), GroupOrder::Finite(b)) if a != b => {
            Ok(Distinctness::Distinct(Certificate::CoxeterOrders(a, b)))
        }
        _ => Ok(Distinctness::Inconclusive),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_presentation;
    use alloc::vec;
    use proptest::prelude::*;

    #[test]
    fn small_matrices() {
        assert_eq!(
            smith_normal_form(&[vec![1, 0], vec![0, 1]]).unwrap(),
            [1, 1]
        );
        assert_eq!(
            smith_normal_form(&[vec![2, 0], vec![0, 0]]).unwrap(),
            [2, 0]
        );
        assert_eq!(
            smith_normal_form(&[vec![2, 4], vec![6, 8]]).unwrap(),
            [2, 4]
        );
        assert_eq!(
            smith_normal_form(&[vec![0, 0], vec![0, 3]]).unwrap(),
            [3, 0]
        );
        assert_eq!(
            smith_normal_form(&[vec![2, 0], vec![0, 3]]).unwrap(),
            [1, 6]
        );
        assert!(smith_normal_form(&[vec![1, 2], vec![3]]).is_err());
    }

    #[test]
    fn overflow_surfaces() {
        let big = i64::MAX;
        let m = [vec![2, big], vec![big, 3]];
        assert_eq!(smith_normal_form(&m), Err(Error::ArithmeticOverflow(SNF)));
    }

    #[test]
    fn abelianizations() {
        let free = parse_presentation("< a, b | 1 >").unwrap();
        assert_eq!(abelianization(&free).unwrap().factors(), [0, 0]);
        let d = parse_presentation("< u, v | u^2, v^3, (u*v)^3 >").unwrap();
        assert_eq!(abelianization(&d).unwrap().factors(), [3]);
        let z = parse_presentation("< a, b | a*b*a^-1*b^-1 >").unwrap();
        assert_eq!(abelianization(&z).unwrap().free_rank(), 2);
        let mixed = parse_presentation("< a, b, c | a^4, b^6 >").unwrap();
        let inv = abelianization(&mixed).unwrap();
        assert_eq!(inv.factors(), [2, 12, 0]);
        assert_eq!(inv.to_string(), "[2, 12, 0]");
        assert_eq!(inv.order(), None);
    }

    #[test]
    fn trichotomy() {
        let c = classify_triangle(2, 3, 5).unwrap();
        assert_eq!(c.kind, TriangleKind::Spherical);
        assert_eq!(c.dyck_order, GroupOrder::Finite(60));
        assert_eq!(c.coxeter_order, GroupOrder::Finite(120));
        assert_eq!(
            classify_triangle(2, 3, 6).unwrap().kind,
            TriangleKind::Euclidean
        );
        assert_eq!(
            classify_triangle(2, 4, 4).unwrap().kind,
            TriangleKind::Euclidean
        );
        assert_eq!(
            classify_triangle(3, 3, 3).unwrap().kind,
            TriangleKind::Euclidean
        );
        let h = classify_triangle(2, 3, 7).unwrap();
        assert_eq!(h.kind, TriangleKind::Hyperbolic);
        assert_eq!(h.coxeter_order, GroupOrder::Infinite);
        assert_eq!(
            classify_triangle(-2, 3, -3).unwrap().dyck_order,
            GroupOrder::Finite(12)
        );
        assert_eq!(
            classify_triangle(2, 2, 9).unwrap().dyck_order,
            GroupOrder::Finite(18)
        );
        assert!(classify_triangle(1, 3, 3).is_err());
    }

    #[test]
    fn howlett_parity() {
        assert_eq!(howlett_rank(2, 3, 3).unwrap(), 1);
        assert_eq!(howlett_rank(4, 5, 7).unwrap(), 1);
        assert_eq!(howlett_rank(-2, 3, -9).unwrap(), 1);
        assert!(howlett_rank(2, 4, 6).is_err());
        assert!(howlett_rank(3, 3, 3).is_err());
        assert!(howlett_rank(3, 2, 3).is_err());
    }

    #[test]
    fn distinctness() {
        let p = |l, m, n| PretzelParams::new(l, m, n).unwrap();
        assert_eq!(
            distinctness_report(p(2, 3, 3), p(2, 3, 5)).unwrap(),
            Distinctness::Distinct(Certificate::CoxeterOrders(24, 120))
        );
        assert_eq!(
            distinctness_report(p(2, 3, 3), p(-2, -3, -3)).unwrap(),
            Distinctness::Inconclusive
        );
        assert_eq!(
            distinctness_report(p(2, 3, 7), p(2, 3, 9)).unwrap(),
            Distinctness::Inconclusive
        );
        assert_eq!(
            distinctness_report(p(2, 3, 5), p(2, 3, 7)).unwrap(),
            Distinctness::Distinct(Certificate::Kinds(
                TriangleKind::Spherical,
                TriangleKind::Hyperbolic
            ))
        );
    }

    /// gcd of all k x k minors, by cofactor expansion.
    fn det(m: &[Vec<i64>]) -> i64 {
        if m.len() == 1 {
            return m[0][0];
        }
        (0..m.len())
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|r| {
                        r.iter()
                            .enumerate()
                            .filter(|(c, _)| *c != j)
                            .map(|(_, &x)| x)
                            .collect()
                    })
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] * det(&minor)
            })
            .sum()
    }

    fn gcd(a: i64, b: i64) -> i64 {
        if b == 0 {
            a.abs()
        } else {
            gcd(b, a % b)
        }
    }

    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        (0..n)
            .flat_map(|first| {
                subsets(n, k - 1)
                    .into_iter()
                    .filter(move |s| s.first().is_none_or(|&x| x > first))
                    .map(move |mut s| {
                        s.insert(0, first);
                        s
                    })
            })
            .collect()
    }

    fn minor_gcd(m: &[Vec<i64>], k: usize) -> i64 {
        let mut g = 0;
        for rs in subsets(m.len(), k) {
            for cs in subsets(m[0].len(), k) {
                let sub: Vec<Vec<i64>> = rs
                    .iter()
                    .map(|&r| cs.iter().map(|&c| m[r][c]).collect())
                    .collect();
                g = gcd(g, det(&sub));
            }
        }
        g
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn snf_matches_minor_gcds(m in prop::collection::vec(prop::collection::vec(-9i64..=9, 3), 3)) {
            let d = smith_normal_form(&m).unwrap();
            prop_assert_eq!(d.len(), 3);
            for w in d.windows(2) {
                prop_assert!(w[1] == 0 || (w[0] != 0 && w[1] % w[0] == 0));
            }
            let mut prefix = 1i64;
            for k in 1..=3 {
                prefix *= d[k - 1];
                prop_assert_eq!(prefix, minor_gcd(&m, k));
            }
        }

        #[test]
        fn snf_rectangular_chain(m in prop::collection::vec(prop::collection::vec(-20i64..=20, 5), 1..7)) {
            let d = smith_normal_form(&m).unwrap();
            prop_assert_eq!(d.len(), m.len().min(5));
            prop_assert!(d.iter().all(|&x| x >= 0));
            for w in d.windows(2) {
                prop_assert!(w[1] == 0 || (w[0] != 0 && w[1] % w[0] == 0));
            }
            prop_assert_eq!(d[0], m.iter().flatten().fold(0, |g, &x| gcd(g, x)));
        }
    }
}

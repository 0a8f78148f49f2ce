//! Presentations of the Klein bottle surface-knot groups and their
//! relatives, built from the twist parameters `(l, m, n)`.
//!
//! Relator order inside each presentation is fixed; coset enumeration is
//! deterministic in that order.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::word::{Presentation, Word};

/// Twist parameters: `l` even with `|l| >= 2`, `m` and `n` odd with
/// magnitude at least 3.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PretzelParams {
    l: i64,
    m: i64,
    n: i64,
}

impl PretzelParams {
    pub fn new(l: i64, m: i64, n: i64) -> Result<Self> {
        if l % 2 != 0 || l.unsigned_abs() < 2 {
            return Err(Error::InvalidParams(format!(
                "l = {l} must be even with |l| >= 2"
            )));
        }
        for (name, v) in [("m", m), ("n", n)] {
            if v % 2 == 0 || v.unsigned_abs() < 3 {
                return Err(Error::InvalidParams(format!(
                    "{name} = {v} must be odd with |{name}| >= 3"
                )));
            }
        }
        Ok(Self { l, m, n })
    }

    pub fn l(&self) -> i64 {
        self.l
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn triple(&self) -> (i64, i64, i64) {
        (self.l, self.m, self.n)
    }

    pub fn is_positive(&self) -> bool {
        self.l > 0 && self.m > 0 && self.n > 0
    }

    fn require_positive(&self) -> Result<()> {
        if self.is_positive() {
            Ok(())
        } else {
            Err(Error::InvalidParams(format!(
                "({}, {}, {}): the Wirtinger formulas need positive parameters",
                self.l, self.m, self.n
            )))
        }
    }
}

const A: usize = 0;
const B: usize = 1;
const C: usize = 2;

fn g(i: usize) -> Word {
    Word::generator(i)
}

fn gi(i: usize) -> Word {
    Word::generator(i).inverse()
}

fn prod(parts: &[Word]) -> Word {
    parts.iter().fold(Word::identity(), |acc, w| acc.concat(w))
}

/// `<a, b, c | a^4, b^4, c^4, (bc)^m, (ca)^n, (ab)^l a^-2, a^2 b^-2, a^2 c^-2>`.
///
/// Signed parameters are used as signed exponents.
pub fn klein_group(p: PretzelParams) -> Presentation {
    let (l, m, n) = p.triple();
    let relators = alloc::vec![
        g(A).pow(4),
        g(B).pow(4),
        g(C).pow(4),
        prod(&[g(B), g(C)]).pow(m),
        prod(&[g(C), g(A)]).pow(n),
        prod(&[prod(&[g(A), g(B)]).pow(l), g(A).pow(-2)]),
        prod(&[g(A).pow(2), g(B).pow(-2)]),
        prod(&[g(A).pow(2), g(C).pow(-2)]),
    ];
    Presentation::from_names(&["a", "b", "c"], relators)
}

const ALPHA: usize = 3;
const BETA: usize = 4;
const GAMMA: usize = 5;

/// The six-relator Wirtinger presentation of the pretzel knot group on
/// `a, b, c, alpha, beta, gamma`. Each relation `x = w` is stored as
/// `x^-1 w`.
pub fn wirtinger_pretzel(p: PretzelParams) -> Result<Presentation> {
    p.require_positive()?;
    let (l, m, n) = p.triple();
    let (hl, hm, hn) = (l / 2, (m - 1) / 2, (n - 1) / 2);
    let ab_ = prod(&[g(A), gi(B)]);
    let ba_ = prod(&[g(B), gi(A)]);
    let c_a_ = prod(&[gi(C), gi(A)]);
    let ac = prod(&[g(A), g(C)]);
    let bc = prod(&[g(B), g(C)]);
    let c_b_ = prod(&[gi(C), gi(B)]);
    let relators = alloc::vec![
        prod(&[gi(ALPHA), ab_.pow(hl), g(A), ba_.pow(hl)]),
        prod(&[gi(ALPHA), c_a_.pow(hn), g(C), ac.pow(hn)]),
        prod(&[
            gi(BETA),
            ab_.pow(hl - 1),
            g(A),
            g(B),
            gi(A),
            ba_.pow(hl - 1)
        ]),
        prod(&[gi(BETA), bc.pow(hm), g(B), g(C), gi(B), c_b_.pow(hm)]),
        prod(&[gi(GAMMA), bc.pow(hm), g(B), c_b_.pow(hm)]),
        prod(&[gi(GAMMA), c_a_.pow(hn), gi(C), g(A), g(C), ac.pow(hn)]),
    ];
    Ok(Presentation::from_names(
        &["a", "b", "c", "alpha", "beta", "gamma"],
        relators,
    ))
}

/// The Wirtinger presentation plus the band relations `alpha = a^-1`,
/// `beta = b^-1`, `gamma = c^-1` (stored as `alpha a` and so on).
pub fn klein_group_from_wirtinger(p: PretzelParams) -> Result<Presentation> {
    let w = wirtinger_pretzel(p)?;
    w.with_relators([
        prod(&[g(ALPHA), g(A)]),
        prod(&[g(BETA), g(B)]),
        prod(&[g(GAMMA), g(C)]),
    ])
}

/// Quotient by `a^2`: the triangle Coxeter group
/// `<a, b, c | a^2, b^2, c^2, (bc)^m, (ca)^n, (ab)^l>`.
pub fn coxeter_quotient(p: PretzelParams) -> Presentation {
    let (l, m, n) = p.triple();
    coxeter_triangle(l, m, n)
}

pub(crate) fn coxeter_triangle(l: i64, m: i64, n: i64) -> Presentation {
    let relators = alloc::vec![
        g(A).pow(2),
        g(B).pow(2),
        g(C).pow(2),
        prod(&[g(B), g(C)]).pow(m),
        prod(&[g(C), g(A)]).pow(n),
        prod(&[g(A), g(B)]).pow(l),
    ];
    Presentation::from_names(&["a", "b", "c"], relators)
}

/// The von Dyck group `<u, v | u^l, v^m, (uv)^n>`.
pub fn dyck_group(l: i64, m: i64, n: i64) -> Result<Presentation> {
    for v in [l, m, n] {
        if v.unsigned_abs() < 2 {
            return Err(Error::InvalidParams(format!(
                "|{v}| < 2 in von Dyck parameters"
            )));
        }
    }
    let (u, v) = (g(0), g(1));
    let relators = alloc::vec![u.pow(l), v.pow(m), prod(&[u, v]).pow(n)];
    Ok(Presentation::from_names(&["u", "v"], relators))
}

const A1: usize = 0;
const A2: usize = 1;
const B1: usize = 2;
const B2: usize = 3;
const C1: usize = 4;
const C2: usize = 5;

/// The six-generator presentation of the double cover of the exterior on
/// segment lifts `a1, a2, b1, b2, c1, c2`:
/// `a1a2 = b1b2 = c1c2 = (a1b2)^l`, `(b1c2)^m = (c1a2)^n = (a1a2)^2 = 1`.
pub fn paper_double_cover(p: PretzelParams) -> Presentation {
    let (l, m, n) = p.triple();
    let a1b2_l = prod(&[g(A1), g(B2)]).pow(l);
    let relators = alloc::vec![
        prod(&[g(A1), g(A2), a1b2_l.inverse()]),
        prod(&[g(B1), g(B2), a1b2_l.inverse()]),
        prod(&[g(C1), g(C2), a1b2_l.inverse()]),
        prod(&[g(B1), g(C2)]).pow(m),
        prod(&[g(C1), g(A2)]).pow(n),
        prod(&[g(A1), g(A2)]).pow(2),
    ];
    Presentation::from_names(&["a1", "a2", "b1", "b2", "c1", "c2"], relators)
}

/// The meridian fillings `a1a2`, `b1b2`, `c1c2` of [`paper_double_cover`].
pub fn paper_filling_relators() -> Vec<Word> {
    alloc::vec![
        prod(&[g(A1), g(A2)]),
        prod(&[g(B1), g(B2)]),
        prod(&[g(C1), g(C2)]),
    ]
}

/// [`paper_double_cover`] with its meridians filled.
pub fn paper_branched_cover(p: PretzelParams) -> Presentation {
    paper_double_cover(p)
        .with_relators(paper_filling_relators())
        .expect("filling relators use the cover alphabet")
}

/// Generators `a^2, ab, ac` of the kernel of the sign map
/// `a, b, c -> 1` onto the group of order two.
pub fn sign_kernel_generators() -> Vec<Word> {
    alloc::vec![g(A).pow(2), prod(&[g(A), g(B)]), prod(&[g(A), g(C)])]
}

/// True when every relator has even length, so that letter-count parity
/// defines a homomorphism onto the group of order two.
pub fn has_sign_map(p: &Presentation) -> bool {
    p.relators().iter().all(|r| r.len() % 2 == 0)
}

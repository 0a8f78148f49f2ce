//! Permutation representations read off coset tables.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::builders::{self, PretzelParams};
use crate::coset::{enumerate, CosetTable, EnumLimits};
use crate::error::{Error, Result};
use crate::word::{Generator, Letter, Presentation, Word};

/// A permutation of `0..degree`, stored as its image list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<u32>);

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm((0..degree as u32).collect())
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = alloc::vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || core::mem::replace(&mut seen[x], true) {
                return Err(Error::InconsistentTable(
                    "images do not form a permutation".into(),
                ));
            }
        }
        Ok(Perm(images))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.0[x] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    pub fn inverse(&self) -> Self {
        let mut inv = alloc::vec![0u32; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Perm(inv)
    }

    /// `self` then `other`: `x -> other(self(x))`.
    pub fn then(&self, other: &Perm) -> Self {
        Perm(self.0.iter().map(|&x| other.0[x as usize]).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// Cycle lengths, one per cycle, in order of smallest point.
    pub fn cycle_lengths(&self) -> Vec<usize> {
        self.cycles().iter().map(Vec::len).collect()
    }

    /// Cycles in order of smallest point, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.0.len();
        let mut seen = alloc::vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            out.push(cycle);
        }
        out
    }

    /// Least common multiple of the cycle lengths.
    pub fn order(&self) -> Result<u64> {
        self.cycle_lengths().into_iter().try_fold(1u64, |acc, len| {
            let len = len as u64;
            let g = gcd(acc, len);
            (acc / g)
                .checked_mul(len)
                .ok_or(Error::ArithmeticOverflow("permutation order"))
        })
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Generator permutations of a group acting on the cosets of a table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermRep {
    alphabet: Vec<Generator>,
    gens: Vec<Perm>,
    inverses: Vec<Perm>,
    trivial_subgroup: bool,
}

impl PermRep {
    pub fn from_table(t: &CosetTable) -> Result<Self> {
        let (rank, n) = (t.rank(), t.index());
        let column = |col: usize| -> Result<Perm> {
            Perm::from_images((0..n).map(|c| t.image(c, col) as u32).collect())
        };
        let gens = (0..rank).map(column).collect::<Result<Vec<_>>>()?;
        let inverses = (rank..2 * rank).map(column).collect::<Result<Vec<_>>>()?;
        for (g, gi) in gens.iter().zip(&inverses) {
            if !g.then(gi).is_identity() {
                return Err(Error::InconsistentTable(
                    "inverse column is not the inverse".into(),
                ));
            }
        }
        Ok(Self {
            alphabet: t.alphabet().to_vec(),
            gens,
            inverses,
            trivial_subgroup: t.has_trivial_subgroup(),
        })
    }

    pub fn degree(&self) -> usize {
        self.gens.first().map_or(1, Perm::degree)
    }

    pub fn alphabet(&self) -> &[Generator] {
        &self.alphabet
    }

    pub fn generator(&self, g: usize) -> &Perm {
        &self.gens[g]
    }

    pub fn generators(&self) -> &[Perm] {
        &self.gens
    }

    #[inline]
    fn letter_image(&self, x: usize, l: Letter) -> usize {
        if l.is_inverse() {
            self.inverses[l.generator()].apply(x)
        } else {
            self.gens[l.generator()].apply(x)
        }
    }

    fn check_word(&self, w: &Word) -> Result<()> {
        let rank = self.gens.len();
        match w.max_generator() {
            Some(index) if index >= rank => Err(Error::AlphabetMismatch { index, rank }),
            _ => Ok(()),
        }
    }

    /// Point reached from `x` by reading `w` left to right.
    pub fn trace(&self, x: usize, w: &Word) -> usize {
        w.letters().iter().fold(x, |y, &l| self.letter_image(y, l))
    }

    /// The permutation induced by `w`, letters acting left to right.
    pub fn evaluate(&self, w: &Word) -> Result<Perm> {
        self.check_word(w)?;
        Ok(Perm(
            (0..self.degree())
                .map(|x| self.trace(x, w) as u32)
                .collect(),
        ))
    }

    /// Whether every relator of `p` acts trivially.
    pub fn satisfies(&self, p: &Presentation) -> Result<bool> {
        for r in p.relators() {
            if !self.evaluate(r)?.is_identity() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether the permutation group acts regularly: simply transitively,
    /// so its order equals the degree. This holds exactly when the subgroup
    /// of the table is normal; with a trivial subgroup it is the regular
    /// representation of the group itself.
    pub fn is_regular(&self) -> bool {
        if self.trivial_subgroup {
            return true;
        }
        // The action is transitive; it is regular iff the permutations
        // carrying point 0 to each point form a group, that is, are closed
        // under right multiplication by generators.
        let n = self.degree();
        let mut carry: Vec<Option<Perm>> = alloc::vec![None; n];
        carry[0] = Some(Perm::identity(n));
        let mut queue = alloc::collections::VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            let px = carry[x].clone().unwrap_or_else(|| Perm::identity(n));
            for g in &self.gens {
                let y = g.apply(x);
                let py = px.then(g);
                match &carry[y] {
                    Some(q) if *q != py => return false,
                    Some(_) => {}
                    None => {
                        carry[y] = Some(py);
                        queue.push_back(y);
                    }
                }
            }
        }
        true
    }

    /// Size of the orbit of point 0 under the group generated by `perms`.
    pub fn orbit_size(perms: &[Perm], degree: usize) -> usize {
        let mut seen = alloc::vec![false; degree];
        seen[0] = true;
        let mut stack = alloc::vec![0usize];
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for p in perms {
                let y = p.apply(x);
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        count
    }
}

/// Order of the permutation induced by `w`; in a regular representation
/// this is the order of the group element.
pub fn element_order(w: &Word, r: &PermRep) -> Result<u64> {
    r.evaluate(w)?.order()
}

/// Images of source generators, keyed by generator name.
pub type GeneratorMap = BTreeMap<String, Word>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HomCheck {
    Holds,
    /// Index of the first source relator that does not map to the identity.
    Fails {
        relator: usize,
    },
}

impl HomCheck {
    pub fn holds(self) -> bool {
        self == HomCheck::Holds
    }
}

fn image_perms(src: &Presentation, images: &GeneratorMap, target: &PermRep) -> Result<Vec<Perm>> {
    src.generators()
        .iter()
        .map(|g| {
            let w = images
                .get(g.as_str())
                .ok_or_else(|| Error::MissingImage(g.as_str().into()))?;
            target.evaluate(w)
        })
        .collect()
}

/// Check that the generator assignment `images` extends to a homomorphism
/// from the group presented by `src` into the permutation group `target`.
pub fn hom_check(src: &Presentation, images: &GeneratorMap, target: &PermRep) -> Result<HomCheck> {
    let perms = image_perms(src, images, target)?;
    let inverses: Vec<Perm> = perms.iter().map(Perm::inverse).collect();
    let n = target.degree();
    for (i, r) in src.relators().iter().enumerate() {
        let closes = (0..n).all(|x| {
            let y = r.letters().iter().fold(x, |y, l| {
                let p = if l.is_inverse() {
                    &inverses[l.generator()]
                } else {
                    &perms[l.generator()]
                };
                p.apply(y)
            });
            x == y
        });
        if !closes {
            return Ok(HomCheck::Fails { relator: i });
        }
    }
    Ok(HomCheck::Holds)
}

/// Whether the image words generate the whole group of a regular
/// representation. The values of `images` are used in key order.
pub fn is_surjective(images: &GeneratorMap, target: &PermRep) -> Result<bool> {
    if !target.is_regular() {
        return Err(Error::NotRegular);
    }
    let perms = images
        .values()
        .map(|w| target.evaluate(w))
        .collect::<Result<Vec<_>>>()?;
    Ok(PermRep::orbit_size(&perms, target.degree()) == target.degree())
}

/// Result of the short exact sequence check for `K(2, 3, delta)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SesReport {
    pub delta: i64,
    pub group_order: usize,
    /// Order of the kernel of the sign map.
    pub kernel_order: usize,
    /// The sign map is a well-defined surjection onto the group of order 2.
    pub quotient_ok: bool,
    /// Some element of order 2 has odd sign, giving a section.
    pub split: bool,
}

/// Enumerate `K(2, 3, delta)`, split it by the letter-parity sign map and
/// scan every element for an order-2 element outside the kernel.
pub fn ses_check(delta: i64, limits: EnumLimits) -> Result<SesReport> {
    if delta != 3 && delta != 5 {
        return Err(Error::InvalidParams(alloc::format!(
            "delta = {delta} must be 3 or 5"
        )));
    }
    let pres = builders::klein_group(PretzelParams::new(2, 3, delta)?);
    ses_check_presentation(delta, &pres, limits)
}

/// [`ses_check`] on a given presentation of `K(2, 3, delta)` on `a, b, c`.
pub fn ses_check_presentation(
    delta: i64,
    pres: &Presentation,
    limits: EnumLimits,
) -> Result<SesReport> {
    let table = enumerate(pres, &[], limits)?.into_table()?;
    let rep = PermRep::from_table(&table)?;
    let elements = table.representatives();
    let group_order = table.index();
    let kernel_order = elements.iter().filter(|w| w.len() % 2 == 0).count();
    let quotient_ok = builders::has_sign_map(pres) && 2 * kernel_order == group_order;
    let mut split = false;
    for w in elements.iter().filter(|w| w.len() % 2 == 1) {
        if element_order(w, &rep)? == 2 {
            split = true;
            break;
        }
    }
    Ok(SesReport {
        delta,
        group_order,
        kernel_order,
        quotient_ok,
        split,
    })
}

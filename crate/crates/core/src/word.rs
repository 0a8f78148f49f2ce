//! Words over a generator alphabet and finite presentations.
//!
//! Words are stored flat: `(a*b)^3` is six letters. Every constructor freely
//! reduces, so a `Word` never contains an adjacent `x x^-1` pair.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Mul;

use crate::error::{Error, Result};

/// A signed generator: generator index plus an inverse flag.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    generator: u32,
    inverse: bool,
}

impl Letter {
    pub const fn new(generator: usize, inverse: bool) -> Self {
        Self {
            generator: generator as u32,
            inverse,
        }
    }

    pub const fn pos(generator: usize) -> Self {
        Self::new(generator, false)
    }

    pub const fn neg(generator: usize) -> Self {
        Self::new(generator, true)
    }

    #[inline]
    pub const fn generator(self) -> usize {
        self.generator as usize
    }

    #[inline]
    pub const fn is_inverse(self) -> bool {
        self.inverse
    }

    /// `+1` or `-1`.
    #[inline]
    pub const fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    #[inline]
    pub const fn inverse(self) -> Self {
        Self {
            generator: self.generator,
            inverse: !self.inverse,
        }
    }

    /// Column of this letter in a coset table over `rank` generators:
    /// generators first, then their inverses.
    #[inline]
    pub const fn column(self, rank: usize) -> usize {
        if self.inverse {
            rank + self.generator as usize
        } else {
            self.generator as usize
        }
    }

    #[inline]
    pub const fn from_column(column: usize, rank: usize) -> Self {
        if column >= rank {
            Self::neg(column - rank)
        } else {
            Self::pos(column)
        }
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Letters order like coset table columns: all generators, then all inverses.
impl Ord for Letter {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        (self.inverse, self.generator).cmp(&(other.inverse, other.generator))
    }
}

/// A freely reduced word.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

/// Freely reduce a raw letter sequence.
pub fn free_reduce<I: IntoIterator<Item = Letter>>(letters: I) -> Word {
    let mut out: Vec<Letter> = Vec::new();
    for l in letters {
        if out.last() == Some(&l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    Word(out)
}

/// Strip matching first/last letters until the word is cyclically reduced.
pub fn cyclic_reduce(w: &Word) -> Word {
    let s = &w.0;
    let (mut i, mut j) = (0, s.len());
    while j - i >= 2 && s[i] == s[j - 1].inverse() {
        i += 1;
        j -= 1;
    }
    Word(s[i..j].to_vec())
}

impl Word {
    pub const fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn letter(l: Letter) -> Self {
        Word(alloc::vec![l])
    }

    /// The generator with index `g`, positive.
    pub fn generator(g: usize) -> Self {
        Self::letter(Letter::pos(g))
    }

    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        free_reduce(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn concat(&self, other: &Word) -> Self {
        free_reduce(self.0.iter().chain(other.0.iter()).copied())
    }

    /// `self^k`; negative exponents invert.
    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let reps = k.unsigned_abs() as usize;
        free_reduce(core::iter::repeat_n(base.0.iter().copied(), reps).flatten())
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        self.0.len() < 2 || self.0[0] != self.0[self.0.len() - 1].inverse()
    }

    /// Largest generator index used, if any.
    pub fn max_generator(&self) -> Option<usize> {
        self.0.iter().map(|l| l.generator()).max()
    }

    /// Exponent sum of each generator, indexed by generator.
    pub fn exponent_sums(&self, rank: usize) -> Vec<i64> {
        let mut sums = alloc::vec![0i64; rank];
        for l in &self.0 {
            sums[l.generator()] += l.sign();
        }
        sums
    }

    /// Substitute every letter through `images` (one word per generator).
    pub fn substitute(&self, images: &[Word]) -> Word {
        let mut raw = Vec::new();
        for l in &self.0 {
            let img = &images[l.generator()].0;
            if l.is_inverse() {
                raw.extend(img.iter().rev().map(|x| x.inverse()));
            } else {
                raw.extend_from_slice(img);
            }
        }
        free_reduce(raw)
    }

    /// Canonical representative of the class of `self` under cyclic
    /// permutation and inversion. Two relators define the same normal
    /// closure contribution when their canonical forms agree.
    pub fn cyclic_canonical(&self) -> Word {
        let core = cyclic_reduce(self);
        if core.is_empty() {
            return core;
        }
        let inv = core.inverse();
        let mut best: Option<Vec<Letter>> = None;
        for src in [&core.0, &inv.0] {
            let n = src.len();
            for r in 0..n {
                let cand: Vec<Letter> = src[r..].iter().chain(src[..r].iter()).copied().collect();
                if best.as_ref().is_none_or(|b| cand < *b) {
                    best = Some(cand);
                }
            }
        }
        Word(best.unwrap_or_default())
    }

    /// Render with generator names, compressing repeated blocks.
    pub fn display<'a, N: AsRef<str>>(&'a self, names: &'a [N]) -> WordDisplay<'a, N> {
        WordDisplay {
            letters: &self.0,
            names,
        }
    }
}

impl Mul for &Word {
    type Output = Word;
    fn mul(self, rhs: &Word) -> Word {
        self.concat(rhs)
    }
}

impl Mul for Word {
    type Output = Word;
    fn mul(self, rhs: Word) -> Word {
        self.concat(&rhs)
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<T: IntoIterator<Item = Letter>>(iter: T) -> Self {
        free_reduce(iter)
    }
}

pub struct WordDisplay<'a, N> {
    letters: &'a [Letter],
    names: &'a [N],
}

impl<N: AsRef<str>> fmt::Display for WordDisplay<'_, N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        write_compressed(f, self.letters, self.names)
    }
}

/// Greedy block compression: at each position take the period whose repeats
/// cover the most letters (shortest period on ties).
fn write_compressed<N: AsRef<str>>(
    f: &mut fmt::Formatter<'_>,
    s: &[Letter],
    names: &[N],
) -> fmt::Result {
    let mut i = 0;
    let mut first = true;
    while i < s.len() {
        let rest = &s[i..];
        let (mut period, mut reps) = (1, 1);
        for p in 1..=rest.len() / 2 {
            let mut k = 1;
            while (k + 1) * p <= rest.len() && rest[k * p..(k + 1) * p] == rest[..p] {
                k += 1;
            }
            if k >= 2 && k * p > period * reps {
                period = p;
                reps = k;
            }
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        if period == 1 {
            let l = rest[0];
            let name = names.get(l.generator()).map(|n| n.as_ref()).unwrap_or("?");
            let exp = if l.is_inverse() {
                -(reps as i64)
            } else {
                reps as i64
            };
            f.write_str(name)?;
            if exp != 1 {
                write!(f, "^{exp}")?;
            }
        } else {
            f.write_str("(")?;
            write_compressed(f, &rest[..period], names)?;
            write!(f, ")^{reps}")?;
        }
        i += period * reps;
    }
    Ok(())
}

/// A generator name: ASCII, starting with a lowercase letter, then letters,
/// digits or underscores.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator(String);

impl Generator {
    pub fn new(name: impl Into<String>) -> Result<Self> {
        let name = name.into();
        if is_valid_name(&name) {
            Ok(Generator(name))
        } else {
            Err(Error::InvalidGeneratorName(name))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

pub(crate) fn is_valid_name(s: &str) -> bool {
    let mut bytes = s.bytes();
    matches!(bytes.next(), Some(b'a'..=b'z'))
        && bytes.all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

impl AsRef<str> for Generator {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Generators plus relators. Relators are freely reduced and nonempty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    generators: Vec<Generator>,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(generators: Vec<Generator>, relators: Vec<Word>) -> Result<Self> {
        for (i, g) in generators.iter().enumerate() {
            if generators[..i].contains(g) {
                return Err(Error::DuplicateGenerator(g.0.clone()));
            }
        }
        let rank = generators.len();
        for r in &relators {
            if let Some(index) = r.max_generator().filter(|&m| m >= rank) {
                return Err(Error::AlphabetMismatch { index, rank });
            }
        }
        let relators = relators.into_iter().filter(|r| !r.is_empty()).collect();
        Ok(Self {
            generators,
            relators,
        })
    }

    /// Build from plain names; panics on invalid names, so only for
    /// literals known to be valid.
    pub(crate) fn from_names(names: &[&str], relators: Vec<Word>) -> Self {
        let gens = names
            .iter()
            .map(|n| Generator::new(*n).expect("valid literal generator name"))
            .collect();
        Self::new(gens, relators).expect("well-formed literal presentation")
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn names(&self) -> Vec<&str> {
        self.generators.iter().map(|g| g.as_str()).collect()
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.as_str() == name)
    }

    /// A copy with extra relators appended.
    pub fn with_relators<I: IntoIterator<Item = Word>>(&self, extra: I) -> Result<Self> {
        let mut relators = self.relators.clone();
        relators.extend(extra);
        Self::new(self.generators.clone(), relators)
    }

    pub fn display_word<'a>(&'a self, w: &'a Word) -> WordDisplay<'a, Generator> {
        w.display(&self.generators)
    }

    /// Total number of letters over all relators.
    pub fn total_length(&self) -> usize {
        self.relators.iter().map(Word::len).sum()
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("< ")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str(g.as_str())?;
        }
        f.write_str(" | ")?;
        if self.relators.is_empty() {
            f.write_str("1")?;
        }
        for (i, r) in self.relators.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", self.display_word(r))?;
        }
        f.write_str(" >")
    }
}

//! Todd–Coxeter coset enumeration.
//!
//! Relator-scanning (HLT) strategy: every live coset in turn is scanned
//! under every relator, filling gaps with new cosets, and its row is then
//! completed. Coincidences are processed at once through a union-find
//! forwarding array; the smaller coset always survives. When the live count
//! passes three quarters of the limit a lookahead pass scans all cosets
//! without defining new ones.
//!
//! Columns are ordered generators first, then inverses. Finished tables
//! are standardized, so equal inputs give equal tables regardless of the
//! internal definition order.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::word::{Generator, Letter, Presentation, Word};

const NONE: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumLimits {
    /// Most live cosets allowed at any time.
    pub max_cosets: usize,
    /// Optional cap on the total number of coset definitions.
    pub max_definitions: Option<usize>,
}

impl EnumLimits {
    pub const DEFAULT_MAX_COSETS: usize = 1 << 16;

    pub fn new(max_cosets: usize) -> Self {
        Self {
            max_cosets,
            max_definitions: None,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.max_cosets == 0 {
            return Err(Error::InvalidLimits("max_cosets must be at least 1".into()));
        }
        if self.max_cosets >= NONE as usize {
            return Err(Error::InvalidLimits(format!(
                "max_cosets must be below {NONE}"
            )));
        }
        if self.max_definitions == Some(0) {
            return Err(Error::InvalidLimits(
                "max_definitions must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

impl Default for EnumLimits {
    fn default() -> Self {
        Self::new(Self::DEFAULT_MAX_COSETS)
    }
}

/// Work counters for one enumeration.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EnumStats {
    /// Cosets defined, including ones later found coincident.
    pub defined: usize,
    /// Coincident cosets merged away.
    pub merges: usize,
    /// Largest simultaneous live count.
    pub max_live: usize,
    /// Lookahead passes run.
    pub lookaheads: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Complete(CosetTable),
    /// The limits were hit before the table closed. Expected for infinite
    /// index, so this is a value and not an error.
    Overflow {
        limit: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enumeration {
    pub outcome: Outcome,
    pub stats: EnumStats,
}

impl Enumeration {
    pub fn table(&self) -> Option<&CosetTable> {
        match &self.outcome {
            Outcome::Complete(t) => Some(t),
            Outcome::Overflow { .. } => None,
        }
    }

    pub fn into_table(self) -> Result<CosetTable> {
        match self.outcome {
            Outcome::Complete(t) => Ok(t),
            Outcome::Overflow { limit } => Err(Error::Overflow { limit }),
        }
    }

    pub fn index(&self) -> Option<usize> {
        self.table().map(CosetTable::index)
    }
}

/// A complete, standardized coset table. Coset 0 is the subgroup itself
/// (printed as coset 1 in 1-based output).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    alphabet: Vec<Generator>,
    subgroup: Vec<Word>,
    index: usize,
    /// Row-major, `2 * rank` columns per coset.
    images: Vec<u32>,
}

impl CosetTable {
    pub fn alphabet(&self) -> &[Generator] {
        &self.alphabet
    }

    pub fn rank(&self) -> usize {
        self.alphabet.len()
    }

    pub fn columns(&self) -> usize {
        2 * self.alphabet.len()
    }

    /// Number of cosets, `[G : H]`.
    pub fn index(&self) -> usize {
        self.index
    }

    /// Subgroup generators the table was enumerated against.
    pub fn subgroup(&self) -> &[Word] {
        &self.subgroup
    }

    #[inline]
    pub fn image(&self, coset: usize, column: usize) -> usize {
        self.images[coset * self.columns() + column] as usize
    }

    #[inline]
    pub fn act(&self, coset: usize, letter: Letter) -> usize {
        self.image(coset, letter.column(self.rank()))
    }

    /// Coset reached from `coset` by reading `w` left to right.
    pub fn trace(&self, coset: usize, w: &Word) -> usize {
        w.letters().iter().fold(coset, |c, &l| self.act(c, l))
    }

    pub fn row(&self, coset: usize) -> &[u32] {
        let k = self.columns();
        &self.images[coset * k..(coset + 1) * k]
    }

    /// Rows as 1-based coset numbers, the layout of the JSON table format.
    pub fn rows_one_based(&self) -> Vec<Vec<usize>> {
        (0..self.index)
            .map(|c| self.row(c).iter().map(|&x| x as usize + 1).collect())
            .collect()
    }

    /// Whether the subgroup was given by words that are all trivial, so the
    /// action is the regular one.
    pub fn has_trivial_subgroup(&self) -> bool {
        self.subgroup.iter().all(Word::is_empty)
    }

    /// Shortest, column-order-least representative word for every coset,
    /// found breadth first from coset 0. The set is prefix closed.
    pub fn representatives(&self) -> Vec<Word> {
        let mut reps: Vec<Option<Word>> = alloc::vec![None; self.index];
        reps[0] = Some(Word::identity());
        let mut queue = alloc::collections::VecDeque::from([0usize]);
        while let Some(c) = queue.pop_front() {
            let base = reps[c].clone().unwrap_or_default();
            for col in 0..self.columns() {
                let d = self.image(c, col);
                if reps[d].is_none() {
                    let l = Letter::from_column(col, self.rank());
                    reps[d] = Some(base.concat(&Word::letter(l)));
                    queue.push_back(d);
                }
            }
        }
        reps.into_iter().map(Option::unwrap_or_default).collect()
    }

    /// Check completeness, inverse consistency, relator closure at every
    /// coset and that each subgroup generator fixes coset 0.
    pub fn verify(&self, p: &Presentation) -> Result<()> {
        if p.generators() != self.alphabet.as_slice() {
            return Err(Error::Mismatch(
                "presentation alphabet differs from table".into(),
            ));
        }
        let (rank, k) = (self.rank(), self.columns());
        for c in 0..self.index {
            for col in 0..k {
                let d = self.image(c, col);
                if d >= self.index {
                    return Err(Error::IncompleteTable);
                }
                let inv = if col < rank { col + rank } else { col - rank };
                if self.image(d, inv) != c {
                    return Err(Error::InconsistentTable(format!(
                        "coset {} column {col} is not inverted",
                        c + 1
                    )));
                }
            }
            for (i, r) in p.relators().iter().enumerate() {
                if self.trace(c, r) != c {
                    return Err(Error::InconsistentTable(format!(
                        "relator {i} does not close at coset {}",
                        c + 1
                    )));
                }
            }
        }
        for (i, h) in self.subgroup.iter().enumerate() {
            if self.trace(0, h) != 0 {
                return Err(Error::InconsistentTable(format!(
                    "subgroup generator {i} moves coset 1"
                )));
            }
        }
        Ok(())
    }
}

/// Renumber a complete table into first-appearance order from `base`.
///
/// `rows[c][col]` is the image of coset `c` under column `col` (0-based).
/// Cosets unreachable from `base` are dropped.
pub fn standardize(
    alphabet: &[Generator],
    subgroup: &[Word],
    rows: &[Vec<u32>],
    base: usize,
) -> Result<CosetTable> {
    let k = 2 * alphabet.len();
    let n = rows.len();
    if base >= n {
        return Err(Error::IncompleteTable);
    }
    for row in rows {
        if row.len() != k || row.iter().any(|&x| x as usize >= n) {
            return Err(Error::IncompleteTable);
        }
    }
    let mut order = alloc::vec![base];
    let mut label = alloc::vec![NONE; n];
    label[base] = 0;
    let mut i = 0;
    while i < order.len() {
        let c = order[i];
        for &d in &rows[c] {
            if label[d as usize] == NONE {
                label[d as usize] = order.len() as u32;
                order.push(d as usize);
            }
        }
        i += 1;
    }
    let mut images = Vec::with_capacity(order.len() * k);
    for &c in &order {
        images.extend(rows[c].iter().map(|&d| label[d as usize]));
    }
    Ok(CosetTable {
        alphabet: alphabet.to_vec(),
        subgroup: subgroup.to_vec(),
        index: order.len(),
        images,
    })
}

/// Enumerate the cosets of `<subgroup>` in the group presented by `p`.
pub fn enumerate(p: &Presentation, subgroup: &[Word], limits: EnumLimits) -> Result<Enumeration> {
    limits.validate()?;
    let rank = p.rank();
    for w in subgroup {
        if let Some(index) = w.max_generator().filter(|&g| g >= rank) {
            return Err(Error::AlphabetMismatch { index, rank });
        }
    }
    let relators: Vec<Vec<usize>> = p
        .relators()
        .iter()
        .map(|r| r.letters().iter().map(|l| l.column(rank)).collect())
        .collect();
    let subgroup_cols: Vec<Vec<usize>> = subgroup
        .iter()
        .map(|w| w.letters().iter().map(|l| l.column(rank)).collect())
        .collect();

    let mut e = Enumerator::new(rank, relators, limits);
    let done = e.run(&subgroup_cols);
    let stats = e.stats;
    if let Err(Overflowed) = done {
        return Ok(Enumeration {
            outcome: Outcome::Overflow {
                limit: limits.max_cosets,
            },
            stats,
        });
    }
    let (rows, base) = e.compact();
    let table = standardize(p.generators(), subgroup, &rows, base)?;
    Ok(Enumeration {
        outcome: Outcome::Complete(table),
        stats,
    })
}

struct Overflowed;

struct Enumerator {
    rank: usize,
    cols: usize,
    limits: EnumLimits,
    relators: Vec<Vec<usize>>,
    table: Vec<u32>,
    /// Union-find parent; `forward[c] == c` iff `c` is live.
    forward: Vec<u32>,
    live: usize,
    queue: Vec<usize>,
    next_lookahead: usize,
    stats: EnumStats,
}

impl Enumerator {
    fn new(rank: usize, relators: Vec<Vec<usize>>, limits: EnumLimits) -> Self {
        let cols = 2 * rank;
        Self {
            rank,
            cols,
            limits,
            relators,
            table: alloc::vec![NONE; cols],
            forward: alloc::vec![0],
            live: 1,
            queue: Vec::new(),
            next_lookahead: (limits.max_cosets * 3 / 4).max(1),
            stats: EnumStats {
                defined: 1,
                max_live: 1,
                ..EnumStats::default()
            },
        }
    }

    #[inline]
    fn get(&self, c: usize, col: usize) -> u32 {
        self.table[c * self.cols + col]
    }

    #[inline]
    fn set(&mut self, c: usize, col: usize, d: u32) {
        self.table[c * self.cols + col] = d;
    }

    #[inline]
    fn inv(&self, col: usize) -> usize {
        if col < self.rank {
            col + self.rank
        } else {
            col - self.rank
        }
    }

    #[inline]
    fn is_live(&self, c: usize) -> bool {
        self.forward[c] as usize == c
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut root = c;
        while self.forward[root] as usize != root {
            root = self.forward[root] as usize;
        }
        let mut x = c;
        while self.forward[x] as usize != root {
            let next = self.forward[x] as usize;
            self.forward[x] = root as u32;
            x = next;
        }
        root
    }

    fn define(&mut self, c: usize, col: usize) -> Result<(), Overflowed> {
        if self.live >= self.limits.max_cosets {
            return Err(Overflowed);
        }
        if self
            .limits
            .max_definitions
            .is_some_and(|m| self.stats.defined >= m)
        {
            return Err(Overflowed);
        }
        let d = self.forward.len();
        if d >= NONE as usize {
            return Err(Overflowed);
        }
        self.forward.push(d as u32);
        self.table.extend(core::iter::repeat_n(NONE, self.cols));
        self.set(c, col, d as u32);
        let ic = self.inv(col);
        self.set(d, ic, c as u32);
        self.live += 1;
        self.stats.defined += 1;
        self.stats.max_live = self.stats.max_live.max(self.live);
        Ok(())
    }

    fn run(&mut self, subgroup: &[Vec<usize>]) -> Result<(), Overflowed> {
        for w in subgroup {
            self.with_retry(|e| e.scan_and_fill(0, w))?;
        }
        let mut c = 0;
        while c < self.forward.len() {
            if self.live >= self.next_lookahead {
                self.lookahead();
            }
            for r in 0..self.relators.len() {
                if !self.is_live(c) {
                    break;
                }
                let w = core::mem::take(&mut self.relators[r]);
                let res = self.with_retry(|e| {
                    if e.is_live(c) {
                        e.scan_and_fill(c, &w)
                    } else {
                        Ok(())
                    }
                });
                self.relators[r] = w;
                res?;
            }
            for col in 0..self.cols {
                if !self.is_live(c) {
                    break;
                }
                if self.get(c, col) == NONE {
                    self.with_retry(|e| e.define(c, col))?;
                }
            }
            c += 1;
        }
        Ok(())
    }

    /// Run `step`; on overflow try a lookahead and retry while it frees
    /// cosets. `step` must tolerate being repeated.
    fn with_retry(
        &mut self,
        mut step: impl FnMut(&mut Self) -> Result<(), Overflowed>,
    ) -> Result<(), Overflowed> {
        loop {
            match step(self) {
                Ok(()) => return Ok(()),
                Err(Overflowed) => {
                    let before = self.live;
                    let capped = self
                        .limits
                        .max_definitions
                        .is_some_and(|m| self.stats.defined >= m);
                    if capped || self.forward.len() >= NONE as usize {
                        return Err(Overflowed);
                    }
                    self.lookahead();
                    if self.live >= before {
                        return Err(Overflowed);
                    }
                }
            }
        }
    }

    fn scan_and_fill(&mut self, c: usize, w: &[usize]) -> Result<(), Overflowed> {
        let r = w.len();
        let (mut f, mut b) = (c, c);
        let mut i = 0usize;
        // `j` is one past the last unscanned letter from the right.
        let mut j = r;
        loop {
            while i < r && self.get(f, w[i]) != NONE {
                f = self.get(f, w[i]) as usize;
                i += 1;
            }
            if i == r {
                if f != c {
                    self.coincidence(f, c);
                }
                return Ok(());
            }
            while j > i && self.get(b, self.inv(w[j - 1])) != NONE {
                b = self.get(b, self.inv(w[j - 1])) as usize;
                j -= 1;
            }
            if j <= i {
                self.coincidence(f, b);
                return Ok(());
            } else if j == i + 1 {
                self.deduce(f, w[i], b);
                return Ok(());
            }
            self.define(f, w[i])?;
        }
    }

    /// Scan without defining; records deductions and coincidences.
    fn scan(&mut self, c: usize, w: &[usize]) {
        let r = w.len();
        let (mut f, mut b) = (c, c);
        let mut i = 0usize;
        let mut j = r;
        while i < r && self.get(f, w[i]) != NONE {
            f = self.get(f, w[i]) as usize;
            i += 1;
        }
        if i == r {
            if f != c {
                self.coincidence(f, c);
            }
            return;
        }
        while j > i && self.get(b, self.inv(w[j - 1])) != NONE {
            b = self.get(b, self.inv(w[j - 1])) as usize;
            j -= 1;
        }
        if j <= i {
            self.coincidence(f, b);
        } else if j == i + 1 {
            self.deduce(f, w[i], b);
        }
    }

    fn deduce(&mut self, f: usize, col: usize, b: usize) {
        self.set(f, col, b as u32);
        let ic = self.inv(col);
        self.set(b, ic, f as u32);
    }

    fn lookahead(&mut self) {
        self.stats.lookaheads += 1;
        let relators = core::mem::take(&mut self.relators);
        for c in 0..self.forward.len() {
            for r in &relators {
                if !self.is_live(c) {
                    break;
                }
                self.scan(c, r);
            }
        }
        self.relators = relators;
        let room = self.limits.max_cosets.saturating_sub(self.live);
        self.next_lookahead = self.live + (room / 4).max(1);
    }

    fn merge(&mut self, k: usize, l: usize) {
        let (p, q) = (self.rep(k), self.rep(l));
        if p == q {
            return;
        }
        let (keep, lose) = if p < q { (p, q) } else { (q, p) };
        self.forward[lose] = keep as u32;
        self.live -= 1;
        self.stats.merges += 1;
        self.queue.push(lose);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.merge(a, b);
        let mut qi = 0;
        while qi < self.queue.len() {
            let g = self.queue[qi];
            qi += 1;
            for col in 0..self.cols {
                let d = self.get(g, col);
                if d == NONE {
                    continue;
                }
                let d = d as usize;
                let ic = self.inv(col);
                if self.get(d, ic) as usize == g {
                    self.set(d, ic, NONE);
                }
                let mu = self.rep(g);
                let nu = self.rep(d);
                if self.get(mu, col) != NONE {
                    let t = self.get(mu, col) as usize;
                    self.merge(nu, t);
                } else if self.get(nu, ic) != NONE {
                    let t = self.get(nu, ic) as usize;
                    self.merge(mu, t);
                } else {
                    self.set(mu, col, nu as u32);
                    self.set(nu, ic, mu as u32);
                }
            }
        }
        self.queue.clear();
    }

    /// Live rows relabelled densely, plus the new label of coset 0.
    fn compact(&mut self) -> (Vec<Vec<u32>>, usize) {
        let n = self.forward.len();
        let mut label = alloc::vec![NONE; n];
        let mut count = 0u32;
        for c in 0..n {
            if self.is_live(c) {
                label[c] = count;
                count += 1;
            }
        }
        let mut rows = Vec::with_capacity(count as usize);
        for c in 0..n {
            if self.is_live(c) {
                let row = (0..self.cols)
                    .map(|col| {
                        let d = self.get(c, col);
                        if d == NONE {
                            NONE
                        } else {
                            label[self.rep(d as usize)]
                        }
                    })
                    .collect();
                rows.push(row);
            }
        }
        (rows, 0)
    }
}

//! Reidemeister–Schreier rewriting, meridian filling and Tietze
//! simplification, assembled into the branched double cover pipeline.

use alloc::format;
use alloc::vec::Vec;

use crate::builders::{self, PretzelParams};
use crate::coset::{enumerate, CosetTable, EnumLimits};
use crate::error::{Error, Result};
use crate::perm::{GeneratorMap, PermRep};
use crate::word::{cyclic_reduce, free_reduce, Generator, Letter, Presentation, Word};

/// Transversal and Schreier generators of a coset table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchreierData {
    rank: usize,
    transversal: Vec<Word>,
    /// `(coset, generator)` of each nontrivial Schreier generator, 0-based.
    labels: Vec<(usize, usize)>,
    /// Subgroup letter for `coset * rank + generator`, `None` when the
    /// Schreier generator is freely trivial.
    letter_of: Vec<Option<usize>>,
    names: Vec<Generator>,
}

impl SchreierData {
    pub fn transversal(&self) -> &[Word] {
        &self.transversal
    }

    pub fn index(&self) -> usize {
        self.transversal.len()
    }

    /// `(coset, generator)` pairs, 0-based, in subgroup generator order.
    pub fn labels(&self) -> &[(usize, usize)] {
        &self.labels
    }

    /// Names of the subgroup generators, `<generator>_<coset>` with 1-based
    /// cosets.
    pub fn names(&self) -> &[Generator] {
        &self.names
    }

    pub fn letter_of(&self, coset: usize, generator: usize) -> Option<usize> {
        self.letter_of[coset * self.rank + generator]
    }

    /// The ambient word `t_i g t_{ig}^-1` for subgroup generator `k`.
    pub fn generator_word(&self, t: &CosetTable, k: usize) -> Word {
        let (i, g) = self.labels[k];
        let j = t.act(i, Letter::pos(g));
        self.transversal[i]
            .concat(&Word::generator(g))
            .concat(&self.transversal[j].inverse())
    }
}

/// Breadth-first transversal (shortest words, column order on ties) and the
/// nontrivial Schreier generators `t_i g t_{ig}^-1`.
pub fn schreier_transversal(t: &CosetTable) -> Result<SchreierData> {
    let rank = t.rank();
    let transversal = t.representatives();
    let mut labels = Vec::new();
    let mut letter_of = alloc::vec![None; t.index() * rank];
    let mut names = Vec::new();
    for (i, ti) in transversal.iter().enumerate() {
        for g in 0..rank {
            let j = t.act(i, Letter::pos(g));
            if j >= t.index() {
                return Err(Error::IncompleteTable);
            }
            let w = ti
                .concat(&Word::generator(g))
                .concat(&transversal[j].inverse());
            if !w.is_empty() {
                letter_of[i * rank + g] = Some(labels.len());
                labels.push((i, g));
                names.push(Generator::new(format!("{}_{}", t.alphabet()[g], i + 1))?);
            }
        }
    }
    Ok(SchreierData {
        rank,
        transversal,
        labels,
        letter_of,
        names,
    })
}

fn check_inputs(t: &CosetTable, s: &SchreierData) -> Result<()> {
    if s.index() != t.index() || s.rank != t.rank() {
        return Err(Error::Mismatch(format!(
            "table has index {} and rank {}, transversal has {} and {}",
            t.index(),
            t.rank(),
            s.index(),
            s.rank
        )));
    }
    Ok(())
}

/// Rewrite `w`, read from `start`, into subgroup letters. Returns the word
/// and the coset where reading ends; `w` lies in the subgroup exactly when
/// it starts and ends at coset 0.
pub fn rewrite_word(t: &CosetTable, s: &SchreierData, start: usize, w: &Word) -> (Word, usize) {
    let mut c = start;
    let mut out = Vec::new();
    for &l in w.letters() {
        let g = l.generator();
        if l.is_inverse() {
            let d = t.act(c, l);
            if let Some(k) = s.letter_of(d, g) {
                out.push(Letter::neg(k));
            }
            c = d;
        } else {
            if let Some(k) = s.letter_of(c, g) {
                out.push(Letter::pos(k));
            }
            c = t.act(c, l);
        }
    }
    (free_reduce(out), c)
}

/// Reidemeister–Schreier presentation of the subgroup: one relator per
/// coset and ambient relator, cyclically reduced, empty ones dropped.
pub fn rewrite_subgroup_presentation(
    t: &CosetTable,
    s: &SchreierData,
    ambient: &Presentation,
) -> Result<Presentation> {
    check_inputs(t, s)?;
    if ambient.generators() != t.alphabet() {
        return Err(Error::Mismatch(
            "presentation alphabet differs from table".into(),
        ));
    }
    let mut relators = Vec::new();
    for c in 0..t.index() {
        for r in ambient.relators() {
            let (w, end) = rewrite_word(t, s, c, r);
            if end != c {
                return Err(Error::InconsistentTable(format!(
                    "relator does not close at coset {}",
                    c + 1
                )));
            }
            relators.push(cyclic_reduce(&w));
        }
    }
    Presentation::new(s.names.clone(), relators)
}

/// Kill every lift of `w`: for each cycle of `w` on the cosets, append the
/// rewriting of `w^len` read from the cycle's smallest coset.
pub fn add_branch_relators(
    sub: &Presentation,
    t: &CosetTable,
    s: &SchreierData,
    w: &Word,
) -> Result<Presentation> {
    check_inputs(t, s)?;
    if sub.generators() != s.names() {
        return Err(Error::Mismatch(
            "subgroup presentation does not use the Schreier generators".into(),
        ));
    }
    let rep = PermRep::from_table(t)?;
    let perm = rep.evaluate(w)?;
    let mut extra = Vec::new();
    for cycle in perm.cycles() {
        let start = cycle[0];
        let (rw, end) = rewrite_word(t, s, start, &w.pow(cycle.len() as i64));
        debug_assert_eq!(end, start);
        extra.push(cyclic_reduce(&rw));
    }
    sub.with_relators(extra)
}

/// Most Tietze passes before giving up on further simplification.
pub const TIETZE_PASSES: usize = 100;

/// A simplified presentation together with how the original generators
/// are expressed in it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tietze {
    pub presentation: Presentation,
    /// For each original generator, an equal word in the new generators.
    pub substitution: Vec<Word>,
    /// Original index of each surviving generator.
    pub kept: Vec<usize>,
    pub passes: usize,
}

/// Simplify by Tietze moves; see [`tietze`] for the procedure.
pub fn tietze_simplify(p: &Presentation) -> Presentation {
    tietze(p).presentation
}

/// Repeat until nothing changes, at most [`TIETZE_PASSES`] times:
/// cyclically reduce relators, drop empty ones and ones equal to an earlier
/// relator up to cyclic permutation and inversion, then eliminate one
/// generator that occurs exactly once in some relator (shortest such
/// relator first) by solving for it and substituting.
pub fn tietze(p: &Presentation) -> Tietze {
    let mut gens: Vec<Generator> = p.generators().to_vec();
    let mut kept: Vec<usize> = (0..gens.len()).collect();
    let mut rels: Vec<Word> = p.relators().to_vec();
    let mut substitution: Vec<Word> = (0..gens.len()).map(Word::generator).collect();
    let mut passes = 0;

    while passes < TIETZE_PASSES {
        passes += 1;
        let before = rels.clone();
        let mut seen: Vec<Word> = Vec::new();
        rels = rels
            .iter()
            .map(cyclic_reduce)
            .filter(|r| {
                if r.is_empty() {
                    return false;
                }
                let canon = r.cyclic_canonical();
                if seen.contains(&canon) {
                    false
                } else {
                    seen.push(canon);
                    true
                }
            })
            .collect();
        let mut changed = rels != before;

        if let Some((ri, x)) = elimination_candidate(&rels, gens.len()) {
            let r = rels.remove(ri);
            let pos = r
                .letters()
                .iter()
                .position(|l| l.generator() == x)
                .unwrap_or(0);
            // Rotate r to x^e w; then x = w^-e.
            let letters = r.letters();
            let rest: Word = letters[pos + 1..]
                .iter()
                .chain(&letters[..pos])
                .copied()
                .collect();
            let value = if letters[pos].is_inverse() {
                rest
            } else {
                rest.inverse()
            };
            let mut images: Vec<Word> = (0..gens.len()).map(Word::generator).collect();
            images[x] = value;
            // Shift generators above x down by one.
            let shift: Vec<Word> = (0..gens.len())
                .map(|g| match g.cmp(&x) {
                    core::cmp::Ordering::Less => Word::generator(g),
                    core::cmp::Ordering::Equal => Word::identity(),
                    core::cmp::Ordering::Greater => Word::generator(g - 1),
                })
                .collect();
            let images: Vec<Word> = images.iter().map(|w| w.substitute(&shift)).collect();
            rels = rels.iter().map(|w| w.substitute(&images)).collect();
            substitution = substitution.iter().map(|w| w.substitute(&images)).collect();
            gens.remove(x);
            kept.remove(x);
            changed = true;
        }
        if !changed {
            break;
        }
    }
    let presentation = Presentation::new(gens, rels).expect("Tietze moves keep letters in range");
    Tietze {
        presentation,
        substitution,
        kept,
        passes,
    }
}

/// `(relator, generator)` with the generator occurring exactly once in the
/// relator, choosing the shortest relator, then lowest indices.
fn elimination_candidate(rels: &[Word], rank: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, usize)> = None;
    for (ri, r) in rels.iter().enumerate() {
        if best.is_some_and(|(len, _, _)| r.len() >= len) {
            continue;
        }
        let mut counts = alloc::vec![0usize; rank];
        for l in r.letters() {
            counts[l.generator()] += 1;
        }
        if let Some(x) = counts.iter().position(|&c| c == 1) {
            best = Some((r.len(), ri, x));
        }
    }
    best.map(|(_, ri, x)| (ri, x))
}

/// Every stage of the branched double cover computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleCover {
    pub params: PretzelParams,
    pub ambient: Presentation,
    pub table: CosetTable,
    pub schreier: SchreierData,
    pub rewritten: Presentation,
    pub filled: Presentation,
    pub simplified: Tietze,
}

impl DoubleCover {
    /// Kernel of the sign map of `K(l, m, n)` via its generators
    /// `a^2, ab, ac`; Reidemeister–Schreier; fill the lifts of `a`, `b`,
    /// `c`; simplify.
    pub fn compute(params: PretzelParams) -> Result<Self> {
        let ambient = builders::klein_group(params);
        let table = enumerate(
            &ambient,
            &builders::sign_kernel_generators(),
            EnumLimits::default(),
        )?
        .into_table()?;
        if table.index() != 2 {
            return Err(Error::Mismatch(format!(
                "sign kernel has index {}, expected 2",
                table.index()
            )));
        }
        let schreier = schreier_transversal(&table)?;
        let rewritten = rewrite_subgroup_presentation(&table, &schreier, &ambient)?;
        let mut filled = rewritten.clone();
        for g in 0..ambient.rank() {
            filled = add_branch_relators(&filled, &table, &schreier, &Word::generator(g))?;
        }
        let simplified = tietze(&filled);
        Ok(Self {
            params,
            ambient,
            table,
            schreier,
            rewritten,
            filled,
            simplified,
        })
    }

    pub fn presentation(&self) -> &Presentation {
        &self.simplified.presentation
    }

    /// Express an ambient word lying in the subgroup in the simplified
    /// generators.
    pub fn subgroup_word(&self, w: &Word) -> Result<Word> {
        let (rw, end) = rewrite_word(&self.table, &self.schreier, 0, w);
        if end != 0 {
            return Err(Error::Mismatch("word is not in the sign kernel".into()));
        }
        Ok(rw.substitute(&self.simplified.substitution))
    }

    /// Images of the von Dyck generators `u = ab`, `v = bc` in the cover.
    pub fn dyck_to_cover(&self) -> Result<GeneratorMap> {
        let ab = Word::from_letters([Letter::pos(0), Letter::pos(1)]);
        let bc = Word::from_letters([Letter::pos(1), Letter::pos(2)]);
        let mut m = GeneratorMap::new();
        m.insert("u".into(), self.subgroup_word(&ab)?);
        m.insert("v".into(), self.subgroup_word(&bc)?);
        Ok(m)
    }

    /// Images of the surviving cover generators in `<u, v>`, read through
    /// the rotation subgroup of the triangle Coxeter group where
    /// `a, b, c` are involutions, `ab = u`, `bc = v`.
    pub fn cover_to_dyck(&self) -> Result<GeneratorMap> {
        let mut m = GeneratorMap::new();
        for (g, &k) in self
            .presentation()
            .generators()
            .iter()
            .zip(&self.simplified.kept)
        {
            let w = self.schreier.generator_word(&self.table, k);
            m.insert(g.as_str().into(), even_word_to_rotations(&w)?);
        }
        Ok(m)
    }
}

/// Read an even-length word in the involutions `a, b, c` (signs ignored) as
/// a word in `u = ab` and `v = bc`.
pub fn even_word_to_rotations(w: &Word) -> Result<Word> {
    let letters = w.letters();
    if letters.len() % 2 != 0 {
        return Err(Error::Mismatch("odd word has no rotation image".into()));
    }
    let (u, v) = (Word::generator(0), Word::generator(1));
    let mut out = Word::identity();
    for pair in letters.chunks(2) {
        let piece = match (pair[0].generator(), pair[1].generator()) {
            (x, y) if x == y => Word::identity(),
            (0, 1) => u.clone(),
            (1, 0) => u.inverse(),
            (1, 2) => v.clone(),
            (2, 1) => v.inverse(),
            (0, 2) => u.concat(&v),
            (2, 0) => u.concat(&v).inverse(),
            _ => return Err(Error::Mismatch("expected a word in a, b, c".into())),
        };
        out = out.concat(&piece);
    }
    Ok(out)
}

/// The simplified presentation of the branched double cover group.
pub fn branched_double_cover(p: PretzelParams) -> Result<Presentation> {
    Ok(DoubleCover::compute(p)?.simplified.presentation)
}

//! Pomsets: isomorphism classes of finite labelled posets.
//!
//! A [`Pomset`] stores one representative in canonical numbering, so
//! equality, hashing and ordering are structural. Series-parallel pomsets are
//! numbered through their canonical sp-term; anything else goes through the
//! refinement search in [`canon`].

mod canon;
mod poset;
mod sp;
pub mod generate;

use std::fmt;

pub use poset::{LabelledPoset, MAX_NODES};
pub use sp::SpTerm;

use crate::error::PomsetError;
use crate::step::{Letter, Step, StepWord};
use sp::Split;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pomset {
    canonical: LabelledPoset,
}

impl Pomset {
    pub fn from_poset(p: &LabelledPoset) -> Pomset {
        let canonical = match SpTerm::of(p, p.all_nodes()) {
            Some(t) => t.to_poset(),
            None => p.reorder(&canon::canonical_order(p)),
        };
        Pomset { canonical }
    }

    /// The empty pomset `1`.
    pub fn one() -> Pomset {
        Pomset {
            canonical: LabelledPoset::empty(),
        }
    }

    pub fn letter(a: Letter) -> Pomset {
        Pomset {
            canonical: LabelledPoset::antichain(vec![a]),
        }
    }

    /// The unordered pomset of a step.
    pub fn step(s: &Step) -> Pomset {
        Pomset::from_poset(&LabelledPoset::antichain(s.letters().to_vec()))
    }

    pub fn poset(&self) -> &LabelledPoset {
        &self.canonical
    }

    pub fn len(&self) -> usize {
        self.canonical.len()
    }

    pub fn is_empty(&self) -> bool {
        self.canonical.is_empty()
    }

    /// Letter multiset, sorted.
    pub fn letters(&self) -> Vec<Letter> {
        let mut v = self.canonical.labels().to_vec();
        v.sort_unstable();
        v
    }

    pub fn par(&self, other: &Pomset) -> Pomset {
        Pomset::from_poset(&self.canonical.par(&other.canonical))
    }

    pub fn seq(&self, other: &Pomset) -> Pomset {
        Pomset::from_poset(&self.canonical.seq(&other.canonical))
    }

    /// Series-parallel by recursive decomposition.
    pub fn is_series_parallel(&self) -> bool {
        sp::is_sp_mask(&self.canonical, self.canonical.all_nodes())
    }

    /// Series-parallel by the absence of an N-shaped quadruple.
    pub fn is_n_free(&self) -> bool {
        !sp::has_n_shape(&self.canonical)
    }

    pub fn sp_term(&self) -> Option<SpTerm> {
        SpTerm::of(&self.canonical, self.canonical.all_nodes())
    }

    /// A pomset is sequential when it is a product of two nonempty pomsets.
    pub fn is_sequential(&self) -> bool {
        matches!(self.split(), Split::Seq(_))
    }

    /// A pomset is parallel when it is a disjoint union of two nonempty pomsets.
    pub fn is_parallel(&self) -> bool {
        matches!(self.split(), Split::Par(_))
    }

    fn split(&self) -> Split {
        sp::split(&self.canonical, self.canonical.all_nodes())
    }

    fn sp_or_err(&self) -> Result<(), PomsetError> {
        if self.is_series_parallel() {
            Ok(())
        } else {
            Err(PomsetError::NotSeriesParallel)
        }
    }

    /// The unique sequential factorization into nonempty non-sequential
    /// factors. A non-sequential pomset is its own single factor; `1` has no
    /// factors.
    pub fn seq_factorize(&self) -> Result<Vec<Pomset>, PomsetError> {
        self.sp_or_err()?;
        Ok(match self.split() {
            Split::Empty => Vec::new(),
            Split::Seq(blocks) => blocks
                .into_iter()
                .map(|m| Pomset::from_poset(&self.canonical.induced(m)))
                .collect(),
            _ => vec![self.clone()],
        })
    }

    /// The unique parallel factorization into nonempty non-parallel factors,
    /// returned sorted (a multiset).
    pub fn par_factorize(&self) -> Result<Vec<Pomset>, PomsetError> {
        self.sp_or_err()?;
        Ok(match self.split() {
            Split::Empty => Vec::new(),
            Split::Par(comps) => {
                let mut v: Vec<Pomset> = comps
                    .into_iter()
                    .map(|m| Pomset::from_poset(&self.canonical.induced(m)))
                    .collect();
                v.sort();
                v
            }
            _ => vec![self.clone()],
        })
    }

    /// Size of a largest antichain.
    pub fn width(&self) -> usize {
        let p = &self.canonical;
        let n = p.len();
        let incomparable: Vec<u32> = (0..n)
            .map(|i| p.all_nodes() & !(p.succ_mask(i) | p.pred_mask(i)) & !(1 << i))
            .collect();
        fn grow(cands: u32, size: usize, best: &mut usize, inc: &[u32]) {
            if size + cands.count_ones() as usize <= *best {
                return;
            }
            if cands == 0 {
                *best = size;
                return;
            }
            let i = cands.trailing_zeros() as usize;
            let rest = cands & !(1 << i);
            grow(rest & inc[i], size + 1, best, inc);
            grow(rest, size, best, inc);
        }
        let mut best = 0;
        grow(p.all_nodes(), 0, &mut best, &incomparable);
        best
    }

    /// Nesting depth of the sp-structure: 0 for `1` and single letters,
    /// otherwise one more than the deepest factor.
    pub fn depth(&self) -> Result<usize, PomsetError> {
        self.sp_or_err()?;
        fn go(p: &LabelledPoset, mask: u32) -> usize {
            match sp::split(p, mask) {
                Split::Empty | Split::Atom(_) | Split::Prime => 0,
                Split::Seq(parts) | Split::Par(parts) => {
                    1 + parts.iter().map(|&m| go(p, m)).max().unwrap_or(0)
                }
            }
        }
        Ok(go(&self.canonical, self.canonical.all_nodes()))
    }

    /// True when `self` carries at least the order of `other`: some
    /// label-preserving bijection from `other` onto `self` is monotone.
    pub fn subsumes(&self, other: &Pomset) -> bool {
        canon::subsumes(&self.canonical, &other.canonical)
    }

    /// Sequential composition of the steps of a word.
    pub fn from_step_word(w: &StepWord) -> Pomset {
        let p = w.steps().iter().fold(LabelledPoset::empty(), |acc, s| {
            acc.seq(&LabelledPoset::antichain(s.letters().to_vec()))
        });
        Pomset::from_poset(&p)
    }

    /// Reads a step word back off a layered pomset, if it is one.
    pub fn as_step_word(&self) -> Option<StepWord> {
        let mut steps = Vec::new();
        for f in self.seq_factorize().ok()? {
            if f.canonical.strict_pairs().is_empty() {
                steps.push(Step::new(f.canonical.labels().to_vec()));
            } else {
                return None;
            }
        }
        Some(StepWord::new(steps))
    }
}

pub fn is_isomorphic(u: &LabelledPoset, v: &LabelledPoset) -> bool {
    canon::isomorphic(u, v)
}

pub fn par_compose(u: &Pomset, v: &Pomset) -> Pomset {
    u.par(v)
}

pub fn seq_compose(u: &Pomset, v: &Pomset) -> Pomset {
    u.seq(v)
}

pub fn step_word_to_pomset(w: &StepWord) -> Pomset {
    Pomset::from_step_word(w)
}

impl fmt::Display for Pomset {
    /// Sp-pomsets print in the textual notation (`a.(b||c).d`); others fall
    /// back to the explicit poset listing.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sp_term() {
            Some(t) => write!(f, "{t}"),
            None => write!(f, "{:?}", self.canonical),
        }
    }
}

impl fmt::Debug for Pomset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pomset({self})")
    }
}

#[cfg(test)]
mod tests;

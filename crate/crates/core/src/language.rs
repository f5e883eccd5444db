//! Size-bounded pomset languages.
//!
//! A [`PomsetLanguage`] holds every member with at most `bound` nodes. All
//! operators discard results above the bound; since every operator only
//! grows sizes (or keeps them, for unit factors), truncating the inputs at
//! the same bound never loses a result that fits.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::LanguageError;
use crate::pomset::{Pomset, SpTerm};
use crate::step::Letter;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PomsetLanguage {
    members: BTreeSet<Pomset>,
    bound: usize,
    exact: bool,
}

impl PomsetLanguage {
    pub fn empty(bound: usize) -> PomsetLanguage {
        PomsetLanguage {
            members: BTreeSet::new(),
            bound,
            exact: true,
        }
    }

    pub fn unit(bound: usize) -> PomsetLanguage {
        PomsetLanguage::from_members(bound, [Pomset::one()])
    }

    /// Members above the bound are dropped.
    pub fn from_members(bound: usize, members: impl IntoIterator<Item = Pomset>) -> PomsetLanguage {
        PomsetLanguage {
            members: members.into_iter().filter(|p| p.len() <= bound).collect(),
            bound,
            exact: true,
        }
    }

    pub fn members(&self) -> &BTreeSet<Pomset> {
        &self.members
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    /// Marks the language as a partial listing of its members.
    pub fn inexact(mut self) -> PomsetLanguage {
        self.exact = false;
        self
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, p: &Pomset) -> bool {
        self.members.contains(p)
    }

    pub fn is_subset(&self, other: &PomsetLanguage) -> bool {
        self.members.is_subset(&other.members)
    }

    /// Members restricted to a smaller bound.
    pub fn truncate(&self, bound: usize) -> PomsetLanguage {
        PomsetLanguage {
            members: self.members.iter().filter(|p| p.len() <= bound).cloned().collect(),
            bound: bound.min(self.bound),
            exact: self.exact,
        }
    }

    /// Members in textual notation, sorted lexicographically.
    pub fn sorted_text(&self) -> Vec<String> {
        let mut v: Vec<String> = self.members.iter().map(Pomset::to_string).collect();
        v.sort();
        v
    }

    fn check_bounds(&self, other: &PomsetLanguage) -> Result<(), LanguageError> {
        if self.bound == other.bound {
            Ok(())
        } else {
            Err(LanguageError::BoundMismatch(self.bound, other.bound))
        }
    }

    fn combine(&self, other: &PomsetLanguage, op: impl Fn(&Pomset, &Pomset) -> Pomset) -> PomsetLanguage {
        let mut members = BTreeSet::new();
        for u in &self.members {
            for v in other.members.iter().filter(|v| u.len() + v.len() <= self.bound) {
                members.insert(op(u, v));
            }
        }
        PomsetLanguage {
            members,
            bound: self.bound,
            exact: self.exact && other.exact,
        }
    }
}

pub fn lang_union(l: &PomsetLanguage, k: &PomsetLanguage) -> Result<PomsetLanguage, LanguageError> {
    l.check_bounds(k)?;
    Ok(PomsetLanguage {
        members: l.members.union(&k.members).cloned().collect(),
        bound: l.bound,
        exact: l.exact && k.exact,
    })
}

pub fn lang_seq(l: &PomsetLanguage, k: &PomsetLanguage) -> Result<PomsetLanguage, LanguageError> {
    l.check_bounds(k)?;
    Ok(l.combine(k, Pomset::seq))
}

pub fn lang_par(l: &PomsetLanguage, k: &PomsetLanguage) -> Result<PomsetLanguage, LanguageError> {
    l.check_bounds(k)?;
    Ok(l.combine(k, Pomset::par))
}

/// Iterates `acc := acc ∪ acc·L` until nothing new fits; at most `bound`
/// rounds since every productive round adds a nonempty factor.
fn iterate(l: &PomsetLanguage, op: impl Fn(&Pomset, &Pomset) -> Pomset) -> PomsetLanguage {
    let mut acc = PomsetLanguage::unit(l.bound);
    acc.exact = l.exact;
    let mut frontier = acc.clone();
    for _ in 0..l.bound {
        let next = frontier.combine(l, &op);
        let fresh: BTreeSet<Pomset> = next.members.difference(&acc.members).cloned().collect();
        if fresh.is_empty() {
            break;
        }
        acc.members.extend(fresh.iter().cloned());
        frontier.members = fresh;
    }
    acc
}

pub fn lang_star(l: &PomsetLanguage) -> PomsetLanguage {
    iterate(l, Pomset::seq)
}

pub fn lang_parstar(l: &PomsetLanguage) -> PomsetLanguage {
    iterate(l, Pomset::par)
}

/// Homomorphic extension of `zeta` through the sp-structure of each member.
pub fn lang_substitute(
    zeta: &BTreeMap<Letter, PomsetLanguage>,
    l: &PomsetLanguage,
) -> Result<PomsetLanguage, LanguageError> {
    let bound = l.bound;
    for k in zeta.values() {
        if k.bound != bound {
            return Err(LanguageError::BoundMismatch(bound, k.bound));
        }
    }
    fn go(
        t: &SpTerm,
        zeta: &BTreeMap<Letter, PomsetLanguage>,
        bound: usize,
    ) -> Result<PomsetLanguage, LanguageError> {
        match t {
            SpTerm::One => Ok(PomsetLanguage::unit(bound)),
            SpTerm::Atom(a) => zeta.get(a).cloned().ok_or(LanguageError::MissingLetter(*a)),
            SpTerm::Seq(kids) => kids.iter().try_fold(PomsetLanguage::unit(bound), |acc, k| {
                lang_seq(&acc, &go(k, zeta, bound)?)
            }),
            SpTerm::Par(kids) => kids.iter().try_fold(PomsetLanguage::unit(bound), |acc, k| {
                lang_par(&acc, &go(k, zeta, bound)?)
            }),
        }
    }
    let mut out = PomsetLanguage::empty(bound);
    out.exact = l.exact && zeta.values().all(|k| k.exact);
    for p in &l.members {
        let t = p.sp_term().ok_or(crate::error::PomsetError::NotSeriesParallel)?;
        out.members.extend(go(&t, zeta, bound)?.members);
    }
    Ok(out)
}

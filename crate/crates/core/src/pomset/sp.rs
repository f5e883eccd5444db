//! Series-parallel structure: decomposition, the N-shape scan, and the
//! canonical term used to number the nodes of sp-pomsets.

use std::fmt;

use super::poset::{bits, LabelledPoset};
use crate::step::Letter;

/// One level of series-parallel decomposition of a node set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Split {
    Empty,
    Atom(usize),
    /// Blocks in sequence, earliest first. At least two.
    Seq(Vec<u32>),
    /// Connected components of the comparability graph. At least two.
    Par(Vec<u32>),
    /// Neither splittable: not series-parallel.
    Prime,
}

/// Connected components of the graph on `mask` whose adjacency is given by
/// `adj(i) -> mask`, each component as a bitmask, ordered by lowest node.
fn components(mask: u32, adj: impl Fn(usize) -> u32) -> Vec<u32> {
    let mut left = mask;
    let mut out = Vec::new();
    while left != 0 {
        let start = left & left.wrapping_neg();
        let mut comp = start;
        let mut frontier = start;
        while frontier != 0 {
            let mut next = 0;
            for i in bits(frontier) {
                next |= adj(i) & mask;
            }
            frontier = next & !comp;
            comp |= next;
        }
        out.push(comp);
        left &= !comp;
    }
    out
}

pub(crate) fn split(p: &LabelledPoset, mask: u32) -> Split {
    match mask.count_ones() {
        0 => return Split::Empty,
        1 => return Split::Atom(mask.trailing_zeros() as usize),
        _ => {}
    }
    let comparable = |i: usize| p.succ_mask(i) | p.pred_mask(i);
    let par = components(mask, comparable);
    if par.len() > 1 {
        return Split::Par(par);
    }
    let incomparable = |i: usize| !comparable(i) & !(1u32 << i);
    let mut blocks = components(mask, incomparable);
    if blocks.len() == 1 {
        return Split::Prime;
    }
    // Every cross pair is comparable; order blocks by how much lies below
    // a representative, then check the order really is block-uniform.
    let below = |b: u32| (p.pred_mask(b.trailing_zeros() as usize) & mask).count_ones();
    blocks.sort_by_key(|&b| below(b));
    for (k, &lo) in blocks.iter().enumerate() {
        let later: u32 = blocks[k + 1..].iter().fold(0, |m, b| m | b);
        if bits(lo).any(|i| p.succ_mask(i) & later != later) {
            return Split::Prime;
        }
    }
    Split::Seq(blocks)
}

/// Recursive decomposition test.
pub(crate) fn is_sp_mask(p: &LabelledPoset, mask: u32) -> bool {
    match split(p, mask) {
        Split::Empty | Split::Atom(_) => true,
        Split::Seq(parts) | Split::Par(parts) => parts.iter().all(|&m| is_sp_mask(p, m)),
        Split::Prime => false,
    }
}

/// Quadruple scan for an induced N: `u0<u1`, `u2<u3`, `u0<u3` and no other
/// strict relations among the four points.
pub(crate) fn has_n_shape(p: &LabelledPoset) -> bool {
    let n = p.len();
    for u0 in 0..n {
        for u1 in bits(p.succ_mask(u0)) {
            for u3 in bits(p.succ_mask(u0)) {
                if u3 == u1 || p.comparable(u1, u3) {
                    continue;
                }
                for u2 in bits(p.pred_mask(u3)) {
                    if u2 == u0 || u2 == u1 {
                        continue;
                    }
                    if !p.comparable(u2, u0) && !p.comparable(u2, u1) {
                        return true;
                    }
                }
            }
        }
    }
    false
}

/// Canonical series-parallel term. Parallel children are kept sorted, so two
/// sp-pomsets are isomorphic iff their terms are equal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SpTerm {
    One,
    Atom(Letter),
    Seq(Vec<SpTerm>),
    Par(Vec<SpTerm>),
}

impl SpTerm {
    pub(crate) fn of(p: &LabelledPoset, mask: u32) -> Option<SpTerm> {
        Some(match split(p, mask) {
            Split::Empty => SpTerm::One,
            Split::Atom(i) => SpTerm::Atom(p.label(i)),
            Split::Seq(parts) => SpTerm::Seq(
                parts
                    .iter()
                    .map(|&m| SpTerm::of(p, m))
                    .collect::<Option<Vec<_>>>()?,
            ),
            Split::Par(parts) => {
                let mut kids = parts
                    .iter()
                    .map(|&m| SpTerm::of(p, m))
                    .collect::<Option<Vec<_>>>()?;
                kids.sort();
                SpTerm::Par(kids)
            }
            Split::Prime => return None,
        })
    }

    /// Builds the poset whose nodes are the atoms in left-to-right order.
    pub(crate) fn to_poset(&self) -> LabelledPoset {
        match self {
            SpTerm::One => LabelledPoset::empty(),
            SpTerm::Atom(a) => LabelledPoset::antichain(vec![*a]),
            SpTerm::Seq(kids) => kids
                .iter()
                .fold(LabelledPoset::empty(), |acc, k| acc.seq(&k.to_poset())),
            SpTerm::Par(kids) => kids
                .iter()
                .fold(LabelledPoset::empty(), |acc, k| acc.par(&k.to_poset())),
        }
    }
}

impl fmt::Display for SpTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpTerm::One => write!(f, "1"),
            SpTerm::Atom(a) => write!(f, "{a}"),
            SpTerm::Seq(kids) => {
                for (i, k) in kids.iter().enumerate() {
                    if i > 0 {
                        write!(f, ".")?;
                    }
                    match k {
                        SpTerm::Par(_) => write!(f, "({k})")?,
                        _ => write!(f, "{k}")?,
                    }
                }
                Ok(())
            }
            SpTerm::Par(kids) => {
                for (i, k) in kids.iter().enumerate() {
                    if i > 0 {
                        write!(f, "||")?;
                    }
                    write!(f, "{k}")?;
                }
                Ok(())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(c: char) -> Letter {
        Letter::new(c).unwrap()
    }

    fn n_poset() -> LabelledPoset {
        LabelledPoset::new(vec![l('a'), l('b'), l('c'), l('d')], &[(0, 1), (2, 3), (0, 3)]).unwrap()
    }

    #[test]
    fn n_is_prime() {
        let p = n_poset();
        assert!(has_n_shape(&p));
        assert_eq!(split(&p, p.all_nodes()), Split::Prime);
        assert!(!is_sp_mask(&p, p.all_nodes()));
    }

    #[test]
    fn diamond_decomposes() {
        // a.(b||c).d
        let p = LabelledPoset::new(
            vec![l('a'), l('b'), l('c'), l('d')],
            &[(0, 1), (0, 2), (1, 3), (2, 3)],
        )
        .unwrap();
        assert!(!has_n_shape(&p));
        match split(&p, p.all_nodes()) {
            Split::Seq(blocks) => assert_eq!(blocks, vec![0b0001, 0b0110, 0b1000]),
            other => panic!("unexpected {other:?}"),
        }
        let t = SpTerm::of(&p, p.all_nodes()).unwrap();
        assert_eq!(t.to_string(), "a.(b||c).d");
    }
}

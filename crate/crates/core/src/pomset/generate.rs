//! Exhaustive and random generators for labelled posets.

use rand::seq::SliceRandom;
use rand::Rng;

use super::poset::{bits, full, LabelledPoset};
use crate::step::Letter;

/// All naturally labelled strict orders on `n` nodes (every strict pair
/// `i < j` has `i < j` as integers), as closed successor masks. Every
/// isomorphism class of posets of size `n` appears at least once.
pub fn natural_orders(n: usize) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for k in 0..n {
        let mut next = Vec::new();
        for succ in &out {
            // predecessors of the new node k: a down-closed subset of 0..k
            for down in 0..=full(k) {
                let closed = bits(down).all(|j| {
                    (0..j).all(|i| succ[i] & (1 << j) == 0 || down & (1 << i) != 0)
                });
                if !closed {
                    continue;
                }
                let mut s: Vec<u32> = succ.clone();
                for i in bits(down) {
                    s[i] |= 1 << k;
                }
                s.push(0);
                next.push(s);
            }
        }
        out = next;
    }
    out
}

/// Every labelling of every naturally labelled order on `n` nodes.
pub fn labelled_posets(n: usize, alphabet: &[Letter]) -> Vec<LabelledPoset> {
    let orders = natural_orders(n);
    let mut out = Vec::new();
    let mut labels = vec![0usize; n];
    loop {
        let ls: Vec<Letter> = labels.iter().map(|&i| alphabet[i]).collect();
        for succ in &orders {
            out.push(LabelledPoset::from_closed(ls.clone(), succ.clone()));
        }
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            labels[i] += 1;
            if labels[i] < alphabet.len() {
                break;
            }
            labels[i] = 0;
            i += 1;
        }
    }
}

/// A random series-parallel poset with between 1 and `max_nodes` nodes whose
/// node numbering is shuffled.
pub fn random_sp<R: Rng>(rng: &mut R, max_nodes: usize, alphabet: &[Letter]) -> LabelledPoset {
    let size = rng.gen_range(1..=max_nodes.max(1));
    let p = random_sp_exact(rng, size, alphabet);
    let mut order: Vec<usize> = (0..p.len()).collect();
    order.shuffle(rng);
    p.reorder(&order)
}

fn random_sp_exact<R: Rng>(rng: &mut R, size: usize, alphabet: &[Letter]) -> LabelledPoset {
    if size == 1 {
        return LabelledPoset::antichain(vec![*alphabet.choose(rng).unwrap()]);
    }
    let left = rng.gen_range(1..size);
    let a = random_sp_exact(rng, left, alphabet);
    let b = random_sp_exact(rng, size - left, alphabet);
    if rng.gen_bool(0.5) {
        a.seq(&b)
    } else {
        a.par(&b)
    }
}

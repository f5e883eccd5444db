//! Canonical numbering for arbitrary labelled posets and direct
//! (search-based) isomorphism and subsumption tests.
//!
//! Canonical forms come from colour refinement followed by
//! individualisation: whenever a colour class has several members, each
//! member is tried in turn as the "first" one and the lexicographically
//! least encoding over all leaves wins. Twins (nodes with the same label and
//! the same neighbourhoods apart from each other) are interchangeable, so
//! only one member of each twin class is branched on.

use super::poset::{bits, LabelledPoset};

type Colours = Vec<u32>;

fn rank<K: Ord + Clone>(keys: &[K]) -> Colours {
    let mut sorted: Vec<K> = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    keys.iter()
        .map(|k| sorted.binary_search(k).unwrap() as u32)
        .collect()
}

fn refine(p: &LabelledPoset, preds: &[u32], mut colours: Colours) -> Colours {
    let n = p.len();
    loop {
        let classes = colours.iter().collect::<std::collections::BTreeSet<_>>().len();
        let keys: Vec<(u32, Vec<u32>, Vec<u32>)> = (0..n)
            .map(|i| {
                let mut up: Vec<u32> = bits(p.succ_mask(i)).map(|j| colours[j]).collect();
                let mut down: Vec<u32> = bits(preds[i]).map(|j| colours[j]).collect();
                up.sort_unstable();
                down.sort_unstable();
                (colours[i], down, up)
            })
            .collect();
        let next = rank(&keys);
        let next_classes = next.iter().collect::<std::collections::BTreeSet<_>>().len();
        colours = next;
        if next_classes == classes {
            return colours;
        }
    }
}

fn encode(p: &LabelledPoset, order: &[usize]) -> (Vec<u8>, Vec<u32>) {
    let q = p.reorder(order);
    (
        q.labels().iter().map(|l| l.as_char() as u8).collect(),
        q.succ_masks().to_vec(),
    )
}

fn twins(p: &LabelledPoset, preds: &[u32], i: usize, j: usize) -> bool {
    let strip = !((1u32 << i) | (1u32 << j));
    p.label(i) == p.label(j)
        && p.succ_mask(i) & strip == p.succ_mask(j) & strip
        && preds[i] & strip == preds[j] & strip
        && !p.comparable(i, j)
}

/// Labels and successor rows of a candidate numbering.
type Code = (Vec<u8>, Vec<u32>);

fn search(
    p: &LabelledPoset,
    preds: &[u32],
    colours: Colours,
    best: &mut Option<(Code, Vec<usize>)>,
) {
    let colours = refine(p, preds, colours);
    let n = p.len();
    // smallest colour with more than one member
    let mut count = vec![0usize; n];
    for &c in &colours {
        count[c as usize] += 1;
    }
    let Some(target) = (0..n).find(|&c| count[c] > 1) else {
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| colours[i]);
        let code = encode(p, &order);
        if best.as_ref().is_none_or(|(b, _)| code < *b) {
            *best = Some((code, order));
        }
        return;
    };
    let cell: Vec<usize> = (0..n).filter(|&i| colours[i] as usize == target).collect();
    let mut tried: Vec<usize> = Vec::new();
    for &v in &cell {
        if tried.iter().any(|&t| twins(p, preds, t, v)) {
            continue;
        }
        tried.push(v);
        let keys: Vec<(u32, u32)> = (0..n)
            .map(|i| (colours[i], u32::from(colours[i] as usize == target && i != v)))
            .collect();
        search(p, preds, rank(&keys), best);
    }
}

/// Node order putting `p` into canonical form: `p.reorder(&order)` is equal
/// for all posets isomorphic to `p`.
pub(crate) fn canonical_order(p: &LabelledPoset) -> Vec<usize> {
    let n = p.len();
    if n == 0 {
        return Vec::new();
    }
    let preds: Vec<u32> = (0..n).map(|i| p.pred_mask(i)).collect();
    let init: Vec<(u8, u32, u32)> = (0..n)
        .map(|i| {
            (
                p.label(i).as_char() as u8,
                preds[i].count_ones(),
                p.succ_mask(i).count_ones(),
            )
        })
        .collect();
    let mut best = None;
    search(p, &preds, rank(&init), &mut best);
    best.expect("search visits at least one leaf").1
}

/// Backtracking search for a bijection `h: v → u` preserving labels such
/// that `x < y` in `v` implies `h(x) < h(y)` in `u`, and, when `exact`, also
/// the converse.
fn embed(u: &LabelledPoset, v: &LabelledPoset, exact: bool) -> bool {
    let n = u.len();
    if n != v.len() {
        return false;
    }
    let mut lu = u.labels().to_vec();
    let mut lv = v.labels().to_vec();
    lu.sort_unstable();
    lv.sort_unstable();
    if lu != lv {
        return false;
    }
    let u_preds: Vec<u32> = (0..n).map(|i| u.pred_mask(i)).collect();
    let v_preds: Vec<u32> = (0..n).map(|i| v.pred_mask(i)).collect();
    let compatible = |x: usize, y: usize| {
        let (vs, vp) = (v.succ_mask(x).count_ones(), v_preds[x].count_ones());
        let (us, up) = (u.succ_mask(y).count_ones(), u_preds[y].count_ones());
        v.label(x) == u.label(y) && if exact { vs == us && vp == up } else { vs <= us && vp <= up }
    };
    let mut image = vec![usize::MAX; n];
    fn go(
        x: usize,
        used: u32,
        image: &mut Vec<usize>,
        u: &LabelledPoset,
        v: &LabelledPoset,
        exact: bool,
        compatible: &dyn Fn(usize, usize) -> bool,
    ) -> bool {
        let n = u.len();
        if x == n {
            return true;
        }
        for y in 0..n {
            if used & (1 << y) != 0 || !compatible(x, y) {
                continue;
            }
            let ok = (0..x).all(|z| {
                let hz = image[z];
                let fwd = !v.lt(z, x) || u.lt(hz, y);
                let bwd = !v.lt(x, z) || u.lt(y, hz);
                if exact {
                    fwd && bwd && (v.lt(z, x) == u.lt(hz, y)) && (v.lt(x, z) == u.lt(y, hz))
                } else {
                    fwd && bwd
                }
            });
            if ok {
                image[x] = y;
                if go(x + 1, used | (1 << y), image, u, v, exact, compatible) {
                    return true;
                }
            }
        }
        false
    }
    go(0, 0, &mut image, u, v, exact, &compatible)
}

pub(crate) fn isomorphic(u: &LabelledPoset, v: &LabelledPoset) -> bool {
    embed(u, v, true)
}

pub(crate) fn subsumes(u: &LabelledPoset, v: &LabelledPoset) -> bool {
    embed(u, v, false)
}

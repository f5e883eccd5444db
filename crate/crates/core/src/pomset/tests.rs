use std::collections::{BTreeMap, BTreeSet};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::generate::{labelled_posets, random_sp};
use super::*;

fn l(c: char) -> Letter {
    Letter::new(c).unwrap()
}

fn a(c: char) -> Pomset {
    Pomset::letter(l(c))
}

fn ab() -> [Letter; 2] {
    [l('a'), l('b')]
}

/// Unpruned oracle: try every permutation.
fn brute_isomorphic(u: &LabelledPoset, v: &LabelledPoset) -> bool {
    let n = u.len();
    if n != v.len() {
        return false;
    }
    fn perms(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in perms(n - 1) {
            for i in 0..=p.len() {
                let mut q = p.clone();
                q.insert(i, n - 1);
                out.push(q);
            }
        }
        out
    }
    perms(n).into_iter().any(|h| {
        (0..n).all(|x| u.label(h[x]) == v.label(x))
            && (0..n).all(|x| (0..n).all(|y| v.lt(x, y) == u.lt(h[x], h[y])))
    })
}

fn diamond() -> Pomset {
    a('a').seq(&a('b').par(&a('c'))).seq(&a('d'))
}

fn n_shape() -> Pomset {
    Pomset::from_poset(
        &LabelledPoset::new(vec![l('a'), l('b'), l('c'), l('d')], &[(0, 1), (2, 3), (0, 3)]).unwrap(),
    )
}

#[test]
fn par_compose_examples() {
    let p = par_compose(&a('a'), &a('b'));
    assert_eq!(p.len(), 2);
    assert!(p.poset().strict_pairs().is_empty());
    assert_eq!(par_compose(&Pomset::one(), &p), p);
    let left = par_compose(&par_compose(&a('a'), &a('b')), &a('c'));
    let right = par_compose(&a('a'), &par_compose(&a('b'), &a('c')));
    assert!(brute_isomorphic(left.poset(), right.poset()));
    assert_eq!(left, right);
}

#[test]
fn seq_compose_examples() {
    let p = seq_compose(&a('a'), &a('b'));
    assert_eq!(p.poset().strict_pairs(), vec![(0, 1)]);
    assert_eq!(p.to_string(), "a.b");
    assert_eq!(seq_compose(&p, &Pomset::one()), p);
    let q = seq_compose(&a('a'), &par_compose(&a('b'), &a('c')));
    let expect = LabelledPoset::new(vec![l('a'), l('b'), l('c')], &[(0, 1), (0, 2)]).unwrap();
    assert!(brute_isomorphic(q.poset(), &expect));
    assert_eq!(q.to_string(), "a.(b||c)");
}

#[test]
fn isomorphism_examples() {
    let u = LabelledPoset::antichain(vec![l('a'), l('b')]);
    let v = LabelledPoset::antichain(vec![l('b'), l('a')]);
    assert!(is_isomorphic(&u, &v));
    let ab = LabelledPoset::new(vec![l('a'), l('b')], &[(0, 1)]).unwrap();
    let ba = LabelledPoset::new(vec![l('a'), l('b')], &[(1, 0)]).unwrap();
    assert!(!is_isomorphic(&ab, &ba));
}

#[test]
fn isomorphism_agrees_with_brute_force_small() {
    for n in 0..=4 {
        let all = labelled_posets(n, &ab());
        for u in &all {
            for v in &all {
                assert_eq!(is_isomorphic(u, v), brute_isomorphic(u, v), "{u:?} vs {v:?}");
            }
        }
    }
}

#[test]
fn isomorphism_agrees_with_brute_force_sampled() {
    use rand::seq::SliceRandom;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 5..=6 {
        let all = labelled_posets(n, &ab());
        for _ in 0..3000 {
            let u = all.choose(&mut rng).unwrap();
            // half positives (shuffled copies), half arbitrary pairs
            let v = if rand::Rng::gen_bool(&mut rng, 0.5) {
                let mut order: Vec<usize> = (0..n).collect();
                order.shuffle(&mut rng);
                u.reorder(&order)
            } else {
                all.choose(&mut rng).unwrap().clone()
            };
            assert_eq!(is_isomorphic(u, &v), brute_isomorphic(u, &v), "{u:?} vs {v:?}");
        }
    }
}

#[test]
fn n_free_examples() {
    assert!(!n_shape().is_n_free());
    assert!(diamond().is_n_free());
    for p in labelled_posets(3, &ab()) {
        assert!(Pomset::from_poset(&p).is_n_free());
    }
}

#[test]
fn series_parallel_examples() {
    assert!(!n_shape().is_series_parallel());
    assert!(diamond().is_series_parallel());
    assert!(Pomset::one().is_series_parallel());
}

#[test]
fn n_free_iff_series_parallel_up_to_five() {
    for n in 0..=5 {
        for p in labelled_posets(n, &ab()) {
            let u = Pomset::from_poset(&p);
            assert_eq!(u.is_n_free(), u.is_series_parallel(), "{p:?}");
        }
    }
}

#[test]
fn canonical_form_matches_isomorphism() {
    for n in 0..=6 {
        let all = labelled_posets(n, &ab());
        let mut classes: BTreeMap<Pomset, LabelledPoset> = BTreeMap::new();
        for p in &all {
            let c = Pomset::from_poset(p);
            let rep = classes.entry(c).or_insert_with(|| p.clone());
            assert!(is_isomorphic(rep, p), "same canonical form but not isomorphic: {rep:?} {p:?}");
        }
        // distinct classes must be non-isomorphic; only pairs sharing the
        // (label, in-degree, out-degree) profile can possibly be isomorphic
        let mut buckets: BTreeMap<Vec<(Letter, u32, u32)>, Vec<&LabelledPoset>> = BTreeMap::new();
        for rep in classes.values() {
            let mut key: Vec<(Letter, u32, u32)> = (0..rep.len())
                .map(|i| (rep.label(i), rep.pred_mask(i).count_ones(), rep.succ_mask(i).count_ones()))
                .collect();
            key.sort();
            buckets.entry(key).or_default().push(rep);
        }
        for reps in buckets.values() {
            for (i, u) in reps.iter().enumerate() {
                for v in &reps[i + 1..] {
                    assert!(!is_isomorphic(u, v), "distinct canonical forms but isomorphic: {u:?} {v:?}");
                }
            }
        }
    }
}

#[test]
fn composition_laws_up_to_iso() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let alphabet = [l('a'), l('b'), l('c')];
    for _ in 0..300 {
        let u = Pomset::from_poset(&random_sp(&mut rng, 2, &alphabet));
        let v = Pomset::from_poset(&random_sp(&mut rng, 2, &alphabet));
        let w = Pomset::from_poset(&random_sp(&mut rng, 2, &alphabet));
        assert_eq!(u.seq(&v).seq(&w), u.seq(&v.seq(&w)));
        assert_eq!(u.par(&v).par(&w), u.par(&v.par(&w)));
        assert_eq!(u.par(&v), v.par(&u));
        assert_eq!(u.seq(&Pomset::one()), u);
        assert_eq!(Pomset::one().seq(&u), u);
        assert_eq!(u.par(&Pomset::one()), u);
    }
}

#[test]
fn seq_factorize_examples() {
    let abc = a('a').seq(&a('b')).seq(&a('c'));
    assert_eq!(abc.seq_factorize().unwrap(), vec![a('a'), a('b'), a('c')]);
    let apb = a('a').par(&a('b'));
    assert_eq!(apb.seq_factorize().unwrap(), vec![apb.clone()]);
    assert_eq!(n_shape().seq_factorize(), Err(PomsetError::NotSeriesParallel));
}

#[test]
fn par_factorize_examples() {
    let aa = a('a').par(&a('a'));
    assert_eq!(aa.par_factorize().unwrap(), vec![a('a'), a('a')]);
    let ab = a('a').seq(&a('b'));
    assert_eq!(ab.par_factorize().unwrap(), vec![ab.clone()]);
    assert!(n_shape().par_factorize().is_err());
}

/// Independent factorization: repeatedly peel off the smallest nonempty
/// down-set that lies entirely below the rest.
fn peel_factorization(p: &LabelledPoset) -> Vec<LabelledPoset> {
    let n = p.len();
    let mut left: u32 = p.all_nodes();
    let mut out = Vec::new();
    while left != 0 {
        let mut best: Option<u32> = None;
        for sub in 1..=left {
            if sub & !left != 0 || sub == 0 {
                continue;
            }
            let rest = left & !sub;
            let cut = (0..n)
                .filter(|i| sub & (1 << i) != 0)
                .all(|i| (0..n).filter(|j| rest & (1 << j) != 0).all(|j| p.lt(i, j)));
            if cut && best.is_none_or(|b| sub.count_ones() < b.count_ones()) {
                best = Some(sub);
            }
        }
        let b = best.unwrap();
        out.push(p.induced(b));
        left &= !b;
    }
    out
}

#[test]
fn factorization_recomposes() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let alphabet = [l('a'), l('b'), l('c')];
    for _ in 0..500 {
        let raw = random_sp(&mut rng, 8, &alphabet);
        let u = Pomset::from_poset(&raw);
        let seq = u.seq_factorize().unwrap();
        assert!(seq.iter().all(|f| !f.is_empty() && !f.is_sequential()));
        let back = seq.iter().fold(Pomset::one(), |acc, f| acc.seq(f));
        assert!(is_isomorphic(back.poset(), &raw));
        // uniqueness against the peeling oracle run on the shuffled input
        let peeled = peel_factorization(&raw);
        assert_eq!(peeled.len(), seq.len());
        for (x, y) in peeled.iter().zip(&seq) {
            assert!(is_isomorphic(x, y.poset()));
        }
        let par = u.par_factorize().unwrap();
        assert!(par.iter().all(|f| !f.is_empty() && !f.is_parallel()));
        let back = par.iter().fold(Pomset::one(), |acc, f| acc.par(f));
        assert!(is_isomorphic(back.poset(), &raw));
    }
}

#[test]
fn width_examples() {
    assert_eq!(a('a').par(&a('b')).par(&a('c')).width(), 3);
    assert_eq!(a('a').seq(&a('b')).seq(&a('c')).width(), 1);
    assert_eq!(diamond().width(), 2);
    assert_eq!(Pomset::one().width(), 0);
}

#[test]
fn width_matches_subset_scan() {
    for p in labelled_posets(5, &[l('a')]) {
        let n = p.len();
        let mut best = 0;
        for s in 0u32..(1 << n) {
            let ok = (0..n).all(|i| (0..n).all(|j| s & (1 << i) == 0 || s & (1 << j) == 0 || !p.lt(i, j)));
            if ok {
                best = best.max(s.count_ones() as usize);
            }
        }
        assert_eq!(Pomset::from_poset(&p).width(), best);
    }
}

#[test]
fn depth_examples() {
    assert_eq!(a('a').depth(), Ok(0));
    assert_eq!(Pomset::one().depth(), Ok(0));
    assert_eq!(a('a').par(&a('b')).depth(), Ok(1));
    assert_eq!(a('a').seq(&a('b').par(&a('c'))).depth(), Ok(2));
    assert!(n_shape().depth().is_err());
}

#[test]
fn subsumes_examples() {
    let ab = a('a').seq(&a('b'));
    let apb = a('a').par(&a('b'));
    assert!(ab.subsumes(&apb));
    assert!(!apb.subsumes(&ab));
    let w: StepWord = "<a,b>.c".parse().unwrap();
    let target = a('a').par(&a('b').seq(&a('c')));
    assert!(step_word_to_pomset(&w).subsumes(&target));
}

#[test]
fn subsumption_is_a_preorder() {
    let mut pool: BTreeSet<Pomset> = BTreeSet::new();
    for n in 0..=5 {
        for p in labelled_posets(n, &[l('a')]) {
            pool.insert(Pomset::from_poset(&p));
        }
    }
    for n in 0..=3 {
        for p in labelled_posets(n, &ab()) {
            pool.insert(Pomset::from_poset(&p));
        }
    }
    let pool: Vec<Pomset> = pool.into_iter().collect();
    for u in &pool {
        assert!(u.subsumes(u));
    }
    for u in &pool {
        for v in pool.iter().filter(|v| v.len() == u.len() && u.subsumes(v)) {
            for w in pool.iter().filter(|w| w.len() == u.len() && v.subsumes(w)) {
                assert!(u.subsumes(w), "{u} ⊒ {v} ⊒ {w}");
            }
        }
    }
}

#[test]
fn step_word_pomsets() {
    let w: StepWord = "a.<b,c>.d".parse().unwrap();
    assert_eq!(step_word_to_pomset(&w), diamond());
    assert_eq!(step_word_to_pomset(&StepWord::one()), Pomset::one());
    let w: StepWord = "<a,b>".parse().unwrap();
    assert_eq!(step_word_to_pomset(&w), a('a').par(&a('b')));
    assert_eq!(diamond().as_step_word(), Some("a.<b,c>.d".parse().unwrap()));
    assert_eq!(a('a').par(&a('b').seq(&a('c'))).as_step_word(), None);
}

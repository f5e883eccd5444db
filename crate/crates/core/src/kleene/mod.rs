//! Expressions to step automata and back.
//!
//! States of the syntactic automaton are expressions. A letter or step
//! derivative of `x` is what remains of `x` after performing that step.
//!
//! Parallel composition is read synchronously: a step of `x||y` is one
//! initial step of each side performed together, and a side that may
//! terminate (is nullable) may instead sit the step out, after which it is
//! dropped. A step of `x^*` runs one or more copies of `x` together and
//! continues with the parallel composition of their remainders followed by
//! `x^*` again. At most `W` letters fit in one step; parallel-star copies
//! beyond that are not explored, and a flag on the compiled result records
//! this. A wider step forced by plain `||` is an error.

mod extract;

use std::collections::{BTreeMap, BTreeSet};

pub use extract::{extract, least_solution, sa_to_system, solve_in_order, SprSystem};

use crate::automaton::{State, StepAutomaton};
use crate::error::KleeneError;
use crate::expr::{nullable, SprExpr};
use crate::step::{Letter, Step, StepWord};

/// Default bound on the number of letters in one step.
pub const DEFAULT_WIDTH: usize = 8;

// ---- simplifying constructors ----

/// `x.y` with unit and zero laws applied.
pub fn mk_seq(x: SprExpr, y: SprExpr) -> SprExpr {
    match (x, y) {
        (SprExpr::Zero, _) | (_, SprExpr::Zero) => SprExpr::Zero,
        (SprExpr::One, y) => y,
        (x, SprExpr::One) => x,
        (x, y) => SprExpr::seq(x, y),
    }
}

fn rebuild(items: Vec<SprExpr>, unit: SprExpr, op: fn(SprExpr, SprExpr) -> SprExpr) -> SprExpr {
    let mut it = items.into_iter();
    match it.next() {
        None => unit,
        Some(first) => it.fold(first, op),
    }
}

/// Parallel composition of all `items`: nested `||` flattened, `1` dropped,
/// `0` absorbing, operands sorted.
pub fn mk_par_all(items: impl IntoIterator<Item = SprExpr>) -> SprExpr {
    fn flatten(x: SprExpr, out: &mut Vec<SprExpr>) {
        match x {
            SprExpr::Par(a, b) => {
                flatten(*a, out);
                flatten(*b, out);
            }
            SprExpr::One => {}
            x => out.push(x),
        }
    }
    let mut v = Vec::new();
    for x in items {
        flatten(x, &mut v);
    }
    if v.contains(&SprExpr::Zero) {
        return SprExpr::Zero;
    }
    v.sort();
    rebuild(v, SprExpr::One, SprExpr::par)
}

/// Sum of all `items`: flattened, deduplicated, sorted, `0` dropped.
pub fn mk_sum_all(items: impl IntoIterator<Item = SprExpr>) -> SprExpr {
    fn flatten(x: SprExpr, out: &mut BTreeSet<SprExpr>) {
        match x {
            SprExpr::Sum(a, b) => {
                flatten(*a, out);
                flatten(*b, out);
            }
            SprExpr::Zero => {}
            x => {
                out.insert(x);
            }
        }
    }
    let mut set = BTreeSet::new();
    for x in items {
        flatten(x, &mut set);
    }
    rebuild(set.into_iter().collect(), SprExpr::Zero, SprExpr::sum)
}

pub fn mk_star(x: SprExpr) -> SprExpr {
    match x {
        SprExpr::Zero | SprExpr::One => SprExpr::One,
        x => SprExpr::star(x),
    }
}

/// Bottom-up application of the simplifying constructors.
pub fn simplify(x: &SprExpr) -> SprExpr {
    match x {
        SprExpr::Zero | SprExpr::One | SprExpr::Letter(_) => x.clone(),
        SprExpr::Sum(a, b) => mk_sum_all([simplify(a), simplify(b)]),
        SprExpr::Seq(a, b) => mk_seq(simplify(a), simplify(b)),
        SprExpr::Par(a, b) => mk_par_all([simplify(a), simplify(b)]),
        SprExpr::Star(a) => mk_star(simplify(a)),
        SprExpr::ParStar(a) => match simplify(a) {
            SprExpr::Zero | SprExpr::One => SprExpr::One,
            a => SprExpr::parstar(a),
        },
    }
}

// ---- derivatives ----

/// `{x'.y : x' ∈ set}`.
pub fn seq_after(set: &BTreeSet<SprExpr>, y: &SprExpr) -> BTreeSet<SprExpr> {
    set.iter().map(|x| mk_seq(x.clone(), y.clone())).collect()
}

/// `set` when `x` is nullable, otherwise nothing.
pub fn guard(x: &SprExpr, set: BTreeSet<SprExpr>) -> BTreeSet<SprExpr> {
    if nullable(x) {
        set
    } else {
        BTreeSet::new()
    }
}

/// Letter derivatives. Parallel terms have none; they move by steps only.
pub fn delta_spr(x: &SprExpr, a: Letter) -> BTreeSet<SprExpr> {
    match x {
        SprExpr::Zero | SprExpr::One | SprExpr::Par(..) | SprExpr::ParStar(_) => BTreeSet::new(),
        SprExpr::Letter(b) if *b == a => BTreeSet::from([SprExpr::One]),
        SprExpr::Letter(_) => BTreeSet::new(),
        SprExpr::Sum(x, y) => &delta_spr(x, a) | &delta_spr(y, a),
        SprExpr::Seq(x, y) => &seq_after(&delta_spr(x, a), y) | &guard(x, delta_spr(y, a)),
        SprExpr::Star(y) => seq_after(&delta_spr(y, a), x),
    }
}

/// One way of taking an initial step: the step, what remains, and whether
/// the step runs several copies of a parallel-star body.
type Move = (Step, SprExpr, bool);

struct Deriver {
    cap: usize,
    truncated: bool,
}

impl Deriver {
    fn moves(&mut self, x: &SprExpr) -> Result<BTreeSet<Move>, KleeneError> {
        Ok(match x {
            SprExpr::Zero | SprExpr::One => BTreeSet::new(),
            SprExpr::Letter(a) => BTreeSet::from([(Step::singleton(*a), SprExpr::One, false)]),
            SprExpr::Sum(a, b) => &self.moves(a)? | &self.moves(b)?,
            SprExpr::Seq(a, b) => {
                let mut out: BTreeSet<Move> = self
                    .moves(a)?
                    .into_iter()
                    .map(|(u, r, m)| (u, mk_seq(r, (**b).clone()), m))
                    .collect();
                if nullable(a) {
                    out.extend(self.moves(b)?);
                }
                out
            }
            SprExpr::Star(a) => self
                .moves(a)?
                .into_iter()
                .map(|(u, r, m)| (u, mk_seq(r, x.clone()), m))
                .collect(),
            SprExpr::Par(a, b) => {
                let (ma, mb) = (self.moves(a)?, self.moves(b)?);
                let mut out = BTreeSet::new();
                for (u1, r1, m1) in &ma {
                    for (u2, r2, m2) in &mb {
                        if u1.len() + u2.len() > self.cap {
                            if *m1 || *m2 {
                                self.truncated = true;
                                continue;
                            }
                            return Err(KleeneError::WidthCapExceeded {
                                cap: self.cap,
                                expr: x.to_string(),
                            });
                        }
                        out.insert((u1.union(u2), mk_par_all([r1.clone(), r2.clone()]), *m1 || *m2));
                    }
                }
                if nullable(b) {
                    out.extend(ma.iter().cloned());
                }
                if nullable(a) {
                    out.extend(mb);
                }
                out
            }
            SprExpr::ParStar(a) => {
                let body: Vec<Move> = self.moves(a)?.into_iter().collect();
                let mut out = BTreeSet::new();
                let mut picked = Vec::new();
                self.copies(&body, 0, Step::empty(), &mut picked, x, &mut out);
                out
            }
        }
        .into_iter()
        .filter(|(_, r, _)| *r != SprExpr::Zero)
        .collect())
    }

    /// Multisets of body moves (indices nondecreasing from `from`) fitting
    /// in the width cap.
    fn copies(
        &mut self,
        body: &[Move],
        from: usize,
        step: Step,
        picked: &mut Vec<usize>,
        star: &SprExpr,
        out: &mut BTreeSet<Move>,
    ) {
        for i in from..body.len() {
            let (u, _, m) = &body[i];
            if step.len() + u.len() > self.cap {
                self.truncated = true;
                continue;
            }
            picked.push(i);
            let grown = step.union(u);
            let rest = mk_par_all(picked.iter().map(|&j| body[j].1.clone()));
            let multi = picked.len() > 1 || picked.iter().any(|&j| body[j].2) || *m;
            out.insert((grown.clone(), mk_seq(rest, star.clone()), multi));
            self.copies(body, i, grown, picked, star, out);
            picked.pop();
        }
    }
}

fn moves(x: &SprExpr, cap: usize) -> Result<(BTreeSet<Move>, bool), KleeneError> {
    let mut d = Deriver { cap, truncated: false };
    let m = d.moves(x)?;
    Ok((m, d.truncated))
}

/// Step derivatives of `x` by `u`.
pub fn gamma_spr(x: &SprExpr, u: &Step, cap: usize) -> Result<BTreeSet<SprExpr>, KleeneError> {
    Ok(moves(x, cap)?
        .0
        .into_iter()
        .filter(|(v, _, _)| v == u)
        .map(|(_, r, _)| r)
        .collect())
}

/// Steps `x` can start with, at most `cap` letters wide.
pub fn initial_steps(x: &SprExpr, cap: usize) -> Result<BTreeSet<Step>, KleeneError> {
    Ok(moves(x, cap)?.0.into_iter().map(|(u, _, _)| u).collect())
}

// ---- reachable expressions ----

/// The expressions reachable from `x` by derivatives, computed
/// structurally. Parallel terms contribute the compositions of their
/// sides' reachable sets, and `y^*` the parallel compositions of up to `cap`
/// reachable terms of `y`, followed by `y^*`.
pub fn reachable(x: &SprExpr, cap: usize) -> BTreeSet<SprExpr> {
    let mut out = match x {
        SprExpr::Zero => BTreeSet::from([SprExpr::Zero]),
        SprExpr::One => BTreeSet::from([SprExpr::One]),
        SprExpr::Letter(_) => BTreeSet::from([x.clone(), SprExpr::One]),
        SprExpr::Sum(a, b) => &reachable(a, cap) | &reachable(b, cap),
        SprExpr::Seq(a, b) => {
            let ra = reachable(a, cap);
            let mut out = seq_after(&ra, b);
            out.extend(ra);
            out.extend(reachable(b, cap));
            out
        }
        SprExpr::Star(a) => {
            let ra = reachable(a, cap);
            let mut out = seq_after(&ra, x);
            out.extend(ra);
            out
        }
        SprExpr::Par(a, b) => {
            let (ra, rb) = (reachable(a, cap), reachable(b, cap));
            let mut out: BTreeSet<SprExpr> = ra
                .iter()
                .flat_map(|p| rb.iter().map(move |q| mk_par_all([p.clone(), q.clone()])))
                .collect();
            out.insert(SprExpr::One);
            out.extend(ra);
            out.extend(rb);
            out
        }
        SprExpr::ParStar(a) => {
            let ra = reachable(a, cap);
            let parts: Vec<&SprExpr> = ra.iter().filter(|r| **r != SprExpr::One).collect();
            let mut out = BTreeSet::from([SprExpr::One]);
            let mut picked = Vec::new();
            fn multisets<'a>(
                parts: &[&'a SprExpr],
                from: usize,
                left: usize,
                picked: &mut Vec<&'a SprExpr>,
                star: &SprExpr,
                out: &mut BTreeSet<SprExpr>,
            ) {
                out.insert(mk_seq(mk_par_all(picked.iter().map(|r| (*r).clone())), star.clone()));
                if left == 0 {
                    return;
                }
                for i in from..parts.len() {
                    picked.push(parts[i]);
                    multisets(parts, i, left - 1, picked, star, out);
                    picked.pop();
                }
            }
            multisets(&parts, 0, cap, &mut picked, x, &mut out);
            out.extend(ra);
            out
        }
    };
    out.insert(x.clone());
    out
}

// ---- compilation ----

#[derive(Debug, Clone)]
pub struct Compiled {
    pub automaton: StepAutomaton,
    pub initial: State,
    /// Expression behind each state.
    pub exprs: BTreeMap<State, SprExpr>,
    pub width: usize,
    /// Some parallel-star step wider than `width` was left out.
    pub width_truncated: bool,
}

impl Compiled {
    pub fn is_well_nested(&self) -> bool {
        self.automaton.is_well_nested()
    }
}

/// The syntactic step automaton of `x`: states are the derivatives reachable
/// from `x`, finals the nullable ones. Letter moves of a state go to `delta`;
/// wider steps, and singleton steps not already covered by `delta`, go to
/// `gamma`.
pub fn compile(x: &SprExpr, width: usize) -> Result<Compiled, KleeneError> {
    let mut exprs: BTreeMap<State, SprExpr> = BTreeMap::new();
    let mut edges: Vec<(State, Step, State, bool)> = Vec::new();
    let mut truncated = false;
    let mut queue = vec![x.clone()];
    let initial = x.to_string();
    exprs.insert(initial.clone(), x.clone());
    while let Some(q) = queue.pop() {
        let name = q.to_string();
        let (ms, t) = moves(&q, width)?;
        truncated |= t;
        let mut letter_targets: BTreeMap<Letter, BTreeSet<SprExpr>> = BTreeMap::new();
        for a in q.letters() {
            let ts: BTreeSet<SprExpr> = delta_spr(&q, a).into_iter().filter(|r| *r != SprExpr::Zero).collect();
            if !ts.is_empty() {
                letter_targets.insert(a, ts);
            }
        }
        for (u, r, _) in ms {
            let via_delta = u
                .as_singleton()
                .and_then(|a| letter_targets.get(&a))
                .is_some_and(|ts| ts.contains(&r));
            let target = r.to_string();
            if exprs.insert(target.clone(), r.clone()).is_none() {
                queue.push(r);
            }
            edges.push((name.clone(), u, target, via_delta));
        }
    }
    let mut a = StepAutomaton::new();
    for (name, e) in &exprs {
        a.add_state(name.clone(), nullable(e));
    }
    for (from, u, to, via_delta) in edges {
        match (via_delta, u.as_singleton()) {
            (true, Some(l)) => a.add_delta(&from, l, &to),
            _ => a.add_gamma(&from, u, &to),
        }
        .expect("states were added");
    }
    Ok(Compiled {
        automaton: a,
        initial,
        exprs,
        width,
        width_truncated: truncated,
    })
}

/// Step words of at most `max_len` steps accepted by the compiled automaton
/// of `x`.
pub fn step_language(x: &SprExpr, max_len: usize, width: usize) -> Result<BTreeSet<StepWord>, KleeneError> {
    let c = compile(x, width)?;
    Ok(c.automaton
        .language_upto(&c.initial, max_len)
        .expect("initial state exists"))
}

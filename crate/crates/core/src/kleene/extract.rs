//! Automata to expressions by solving the automaton's linear system.

use std::collections::{BTreeMap, BTreeSet};

use super::{mk_seq, mk_star, mk_sum_all, simplify};
use crate::automaton::{State, StepAutomaton};
use crate::error::AutomatonError;
use crate::expr::SprExpr;

/// A system `s(q) ≥ b(q) + Σ M(q,q')·s(q')`. Missing entries are `0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SprSystem {
    pub states: Vec<State>,
    pub m: BTreeMap<(State, State), SprExpr>,
    pub b: BTreeMap<State, SprExpr>,
}

impl SprSystem {
    pub fn m(&self, q: &str, r: &str) -> SprExpr {
        self.m.get(&(q.to_string(), r.to_string())).cloned().unwrap_or(SprExpr::Zero)
    }

    pub fn b(&self, q: &str) -> SprExpr {
        self.b.get(q).cloned().unwrap_or(SprExpr::Zero)
    }
}

/// `M(q,q')` sums the labels of transitions `q → q'`, a step becoming the
/// parallel composition of its letters; `b(q)` is `1` on finals.
pub fn sa_to_system(a: &StepAutomaton) -> SprSystem {
    let mut labels: BTreeMap<(State, State), Vec<SprExpr>> = BTreeMap::new();
    for (q, u, t) in a.unit_runs() {
        labels
            .entry((q.clone(), t.clone()))
            .or_default()
            .push(SprExpr::from_step(&u));
    }
    SprSystem {
        states: a.states().iter().cloned().collect(),
        m: labels.into_iter().map(|(k, v)| (k, mk_sum_all(v))).collect(),
        b: a.finals().iter().map(|q| (q.clone(), SprExpr::One)).collect(),
    }
}

/// One equation `s(q) = constant + Σ coeff(r)·s(r)`.
#[derive(Clone)]
struct Equation {
    constant: SprExpr,
    coeffs: BTreeMap<State, SprExpr>,
}

/// Solves the system by eliminating states in the given order, using
/// `s(q) = M(q,q)*·(b(q) + Σ_{r≠q} M(q,r)·s(r))` for each eliminated state,
/// then substituting back.
pub fn solve_in_order(sys: &SprSystem, order: &[State]) -> BTreeMap<State, SprExpr> {
    let mut eqs: BTreeMap<State, Equation> = sys
        .states
        .iter()
        .map(|q| {
            let coeffs = sys
                .m
                .iter()
                .filter(|((p, _), e)| p == q && **e != SprExpr::Zero)
                .map(|((_, r), e)| (r.clone(), e.clone()))
                .collect();
            (q.clone(), Equation { constant: sys.b(q), coeffs })
        })
        .collect();
    let mut solved_eqs: Vec<(State, Equation)> = Vec::new();
    for p in order {
        let mut eq = eqs.remove(p).expect("each state eliminated once");
        let lp = mk_star(eq.coeffs.remove(p).unwrap_or(SprExpr::Zero));
        eq.constant = mk_seq(lp.clone(), eq.constant);
        for c in eq.coeffs.values_mut() {
            *c = mk_seq(lp.clone(), c.clone());
        }
        for other in eqs.values_mut() {
            if let Some(c) = other.coeffs.remove(p) {
                other.constant = mk_sum_all([other.constant.clone(), mk_seq(c.clone(), eq.constant.clone())]);
                for (r, e) in &eq.coeffs {
                    let entry = other.coeffs.entry(r.clone()).or_insert(SprExpr::Zero);
                    *entry = mk_sum_all([entry.clone(), mk_seq(c.clone(), e.clone())]);
                }
            }
        }
        solved_eqs.push((p.clone(), eq));
    }
    let mut s: BTreeMap<State, SprExpr> = BTreeMap::new();
    for (p, eq) in solved_eqs.into_iter().rev() {
        let terms = eq.coeffs.iter().map(|(r, c)| mk_seq(c.clone(), s[r].clone()));
        let value = mk_sum_all(std::iter::once(eq.constant.clone()).chain(terms));
        s.insert(p, value);
    }
    s
}

/// Least solution, eliminating states with smaller support first (the
/// bottom of the support order before the states above it).
pub fn least_solution(sys: &SprSystem) -> BTreeMap<State, SprExpr> {
    let mut succ: BTreeMap<&State, BTreeSet<&State>> = BTreeMap::new();
    for ((q, r), e) in &sys.m {
        if *e != SprExpr::Zero {
            succ.entry(q).or_default().insert(r);
        }
    }
    let support_size = |q: &State| {
        let mut seen = BTreeSet::from([q]);
        let mut stack = vec![q];
        while let Some(p) = stack.pop() {
            for r in succ.get(p).into_iter().flatten() {
                if seen.insert(*r) {
                    stack.push(*r);
                }
            }
        }
        seen.len()
    };
    let mut order = sys.states.clone();
    order.sort_by_cached_key(|q| (support_size(q), q.clone()));
    solve_in_order(sys, &order)
}

/// An expression for the language accepted from `q`.
pub fn extract(a: &StepAutomaton, q: &str) -> Result<SprExpr, AutomatonError> {
    let sub = a.restrict(&a.support(q)?)?;
    let s = least_solution(&sa_to_system(&sub));
    Ok(simplify(&s[q]))
}

//! Classical single-tape machines and their embedding as step machines.

use std::collections::{BTreeMap, BTreeSet};

use super::{EtaRule, GammaRule, DeltaRule, Move, Stm, Sym};
use crate::error::StmError;
use crate::step::Letter;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Move3 {
    L,
    R,
    S,
}

/// A deterministic machine over `{0, 1, □}`. It halts when no transition
/// applies and accepts iff it halts in an accepting state. The output is
/// the tape from the head rightward up to the first blank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassicalTm {
    pub states: Vec<String>,
    pub start: String,
    pub accept: BTreeSet<String>,
    pub transitions: BTreeMap<(String, Sym), (String, Sym, Move3)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassicalOutcome {
    Accepted { output: String, steps: usize },
    Rejected { steps: usize },
    BoundExceeded,
}

impl ClassicalTm {
    pub fn new(start: &str, accept: &[&str]) -> ClassicalTm {
        let mut tm = ClassicalTm {
            states: Vec::new(),
            start: start.to_string(),
            accept: accept.iter().map(|s| s.to_string()).collect(),
            transitions: BTreeMap::new(),
        };
        tm.add_state(start);
        for a in accept {
            tm.add_state(a);
        }
        tm
    }

    fn add_state(&mut self, q: &str) {
        if !self.states.iter().any(|s| s == q) {
            self.states.push(q.to_string());
        }
    }

    pub fn rule(mut self, q: &str, read: Sym, to: &str, write: Sym, mv: Move3) -> ClassicalTm {
        self.add_state(q);
        self.add_state(to);
        self.transitions.insert((q.to_string(), read), (to.to_string(), write, mv));
        self
    }

    pub fn run(&self, input: &[Sym], max_steps: usize) -> ClassicalOutcome {
        let mut tape: BTreeMap<i64, Sym> =
            input.iter().enumerate().map(|(i, s)| (i as i64, *s)).collect();
        let mut head = 0i64;
        let mut q = self.start.clone();
        for steps in 0..=max_steps {
            let read = tape.get(&head).copied().unwrap_or(Sym::Blank);
            let Some((to, write, mv)) = self.transitions.get(&(q.clone(), read)) else {
                if !self.accept.contains(&q) {
                    return ClassicalOutcome::Rejected { steps };
                }
                let output = (head..)
                    .map_while(|i| tape.get(&i).copied().filter(|s| *s != Sym::Blank))
                    .map(Sym::glyph)
                    .collect();
                return ClassicalOutcome::Accepted { output, steps };
            };
            if steps == max_steps {
                break;
            }
            if *write == Sym::Blank {
                tape.remove(&head);
            } else {
                tape.insert(head, *write);
            }
            head += match mv {
                Move3::L => -1,
                Move3::R => 1,
                Move3::S => 0,
            };
            q = to.clone();
        }
        ClassicalOutcome::BoundExceeded
    }
}

const LOAD_START: &str = "load:start";
const LOAD_READ: &str = "load:read";
const LOAD_ADV: &str = "load:adv";
const LOAD_END: &str = "load:end";
const REWIND: &str = "load:rewind";
const OUT_EMIT: &str = "out:emit";
const OUT_STEP: &str = "out:step";
const OUT_DONE: &str = "out:done";

fn tm_state(q: &str) -> String {
    format!("tm:{q}")
}

fn unit(from: &str, read: Sym, mv: Move, to: &str) -> EtaRule {
    EtaRule { from: from.into(), step: Vec::new(), read: vec![read], write: vec![read], mv, to: to.into() }
}

/// A `k = 1` step machine with the same accepted inputs and outputs.
///
/// The input is copied onto the planar row, the head rewinds to the first
/// symbol, each classical transition becomes an `eta` rule labelled `<a>`,
/// and accepting states copy the row from the head to the first blank onto
/// the output tape. Stay moves are not supported.
pub fn from_classical_tm(tm: &ClassicalTm) -> Result<Stm, StmError> {
    let mut eta = Vec::new();
    for ((q, read), (to, write, mv)) in &tm.transitions {
        if tm.accept.contains(q) {
            return Err(StmError::Unsupported(format!("accepting state `{q}` has transitions")));
        }
        let mv = match mv {
            Move3::L => Move::L,
            Move3::R => Move::R,
            Move3::S => return Err(StmError::Unsupported(format!("stay move from `{q}` on {}", read.glyph()))),
        };
        eta.push(EtaRule {
            from: tm_state(q),
            step: vec![Letter::new('a').expect("letter")],
            read: vec![*read],
            write: vec![*write],
            mv,
            to: tm_state(to),
        });
    }
    let mut delta = vec![DeltaRule { from: LOAD_START.into(), read: Sym::Blank, cell_row: 1, to: LOAD_READ.into() }];
    for s in [Sym::Zero, Sym::One] {
        delta.push(DeltaRule { from: LOAD_READ.into(), read: s, cell_row: 1, to: LOAD_ADV.into() });
        eta.push(unit(LOAD_ADV, s, Move::R, LOAD_READ));
        eta.push(unit(REWIND, s, Move::L, REWIND));
        eta.push(unit(OUT_STEP, s, Move::R, OUT_EMIT));
    }
    delta.push(DeltaRule { from: LOAD_READ.into(), read: Sym::Blank, cell_row: 1, to: LOAD_END.into() });
    eta.push(unit(LOAD_END, Sym::Blank, Move::L, REWIND));
    eta.push(unit(REWIND, Sym::Blank, Move::R, &tm_state(&tm.start)));
    let mut gamma = Vec::new();
    let emitters = std::iter::once(OUT_EMIT.to_string()).chain(tm.accept.iter().map(|h| tm_state(h)));
    for e in emitters {
        gamma.push(GammaRule { from: e.clone(), cell_row: 1, to: OUT_STEP.into() });
        eta.push(unit(&e, Sym::Blank, Move::R, OUT_DONE));
    }
    let mut states: Vec<String> =
        [LOAD_START, LOAD_READ, LOAD_ADV, LOAD_END, REWIND, OUT_EMIT, OUT_STEP, OUT_DONE].map(String::from).to_vec();
    states.extend(tm.states.iter().map(|q| tm_state(q)));
    let m = Stm {
        states,
        initial: LOAD_START.into(),
        finals: vec![OUT_DONE.into()],
        k: 1,
        delta,
        gamma,
        eta,
    };
    m.validate()?;
    Ok(m)
}

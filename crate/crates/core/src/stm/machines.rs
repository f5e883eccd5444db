//! Small example machines.

use super::classical::{ClassicalTm, Move3};
use super::{DeltaRule, EtaRule, GammaRule, Move, Stm, StmConfig, Sym};
use crate::step::Letter;

use Sym::{Blank as B, One as I, Zero as O};

fn strings(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

/// Copies the input to the output one symbol at a time through planar
/// cell (0, 1). Every transition is labelled `1`.
pub fn copy_machine() -> Stm {
    let mut delta = vec![DeltaRule { from: "start".into(), read: B, cell_row: 1, to: "read".into() }];
    for s in [O, I] {
        delta.push(DeltaRule { from: "read".into(), read: s, cell_row: 1, to: "emit".into() });
    }
    delta.push(DeltaRule { from: "read".into(), read: B, cell_row: 1, to: "done".into() });
    Stm {
        states: strings(&["start", "read", "emit", "done"]),
        initial: "start".into(),
        finals: strings(&["done"]),
        k: 1,
        delta,
        gamma: vec![GammaRule { from: "emit".into(), cell_row: 1, to: "read".into() }],
        eta: Vec::new(),
    }
}

/// Adds one to a binary number, most significant bit first.
pub fn increment_tm() -> ClassicalTm {
    ClassicalTm::new("scan", &["halt"])
        .rule("scan", O, "scan", O, Move3::R)
        .rule("scan", I, "scan", I, Move3::R)
        .rule("scan", B, "carry", B, Move3::L)
        .rule("carry", I, "carry", O, Move3::L)
        .rule("carry", O, "back", I, Move3::L)
        .rule("carry", B, "back", I, Move3::L)
        .rule("back", O, "back", O, Move3::L)
        .rule("back", I, "back", I, Move3::L)
        .rule("back", B, "halt", B, Move3::R)
}

/// Walks to the end of the input and back; outputs the input.
pub fn identity_tm() -> ClassicalTm {
    ClassicalTm::new("scan", &["halt"])
        .rule("scan", O, "scan", O, Move3::R)
        .rule("scan", I, "scan", I, Move3::R)
        .rule("scan", B, "back", B, Move3::L)
        .rule("back", O, "back", O, Move3::L)
        .rule("back", I, "back", I, Move3::L)
        .rule("back", B, "halt", B, Move3::R)
}

/// Accepts inputs with an even number of `1`s, rejects the others.
pub fn parity_tm() -> ClassicalTm {
    ClassicalTm::new("even", &["yes"])
        .rule("even", O, "even", O, Move3::R)
        .rule("even", I, "odd", I, Move3::R)
        .rule("odd", O, "odd", O, Move3::R)
        .rule("odd", I, "even", I, Move3::R)
        .rule("even", B, "yes", B, Move3::L)
        .rule("odd", B, "no", B, Move3::L)
}

/// Halts immediately in its accepting start state.
pub fn halt_tm() -> ClassicalTm {
    ClassicalTm::new("halt", &["halt"])
}

/// Negates every planar column, one `eta` step per column. With `k = 4`
/// the steps are `<a,a,a,a>`; with `k = 1` they are `<a>`.
pub fn not_machine(k: usize) -> Stm {
    let mut eta = Vec::new();
    for bits in 0..1u32 << k {
        let read: Vec<Sym> = (0..k).map(|i| if bits >> i & 1 == 1 { I } else { O }).collect();
        let write = read.iter().map(|s| if *s == O { I } else { O }).collect();
        eta.push(EtaRule {
            from: "pass".into(),
            step: vec![Letter::new('a').expect("letter"); k],
            read,
            write,
            mv: Move::R,
            to: "pass".into(),
        });
    }
    eta.push(EtaRule {
        from: "pass".into(),
        step: Vec::new(),
        read: vec![B; k],
        write: vec![B; k],
        mv: Move::R,
        to: "done".into(),
    });
    Stm {
        states: strings(&["pass", "done"]),
        initial: "pass".into(),
        finals: strings(&["done"]),
        k,
        delta: Vec::new(),
        gamma: Vec::new(),
        eta,
    }
}

/// Start configuration of [`not_machine`] with `rows` on the planar tape.
pub fn not_start(m: &Stm, rows: &[Vec<Sym>]) -> StmConfig {
    m.initial_config(&[]).with_planar(rows)
}

/// A machine whose control is `q0 -a-> q1 -<b,c>-> q2 -d-> q3` and which
/// only moves the planar head.
pub fn diamond_machine() -> Stm {
    let rule = |from: &str, step: &str, to: &str| EtaRule {
        from: from.into(),
        step: step.chars().filter_map(Letter::new).collect(),
        read: vec![B],
        write: vec![B],
        mv: Move::R,
        to: to.into(),
    };
    Stm {
        states: strings(&["q0", "q1", "q2", "q3"]),
        initial: "q0".into(),
        finals: strings(&["q3"]),
        k: 1,
        delta: Vec::new(),
        gamma: Vec::new(),
        eta: vec![rule("q0", "a", "q1"), rule("q1", "bc", "q2"), rule("q2", "d", "q3")],
    }
}

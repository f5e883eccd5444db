//! Step Turing machines.
//!
//! A machine has a step automaton as finite control, a read-only input
//! tape, a write-only output tape and a planar tape of `k` rows. The planar
//! tape is read and written one whole column at a time under a single
//! column head.
//!
//! * `delta` rules read the input head, copy the symbol into row `r` of the
//!   current planar column and advance the input head (label `1`).
//! * `gamma` rules copy a nonblank planar cell to the output (label `1`).
//! * `eta` rules match the current column, overwrite it, move the column
//!   head and are labelled by a step. A rule with the empty step leaves the
//!   column unchanged and only moves.
//!
//! Input cells are numbered `0..=n+1`: a blank, the input, a blank. The
//! head starts on cell 0 and never goes past `n + 1`.

mod classical;
pub mod machines;
mod render;

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

pub use classical::{from_classical_tm, ClassicalOutcome, ClassicalTm, Move3};
pub use render::{render_config, render_trace};

use crate::error::StmError;
use crate::step::{Letter, Step, StepWord};

/// Tape symbol: `0`, `1` or blank. On planar rules, blank is written `eps`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Sym {
    Zero,
    One,
    Blank,
}

impl Sym {
    pub fn from_bit(c: char) -> Option<Sym> {
        match c {
            '0' => Some(Sym::Zero),
            '1' => Some(Sym::One),
            _ => None,
        }
    }

    pub fn glyph(self) -> char {
        match self {
            Sym::Zero => '0',
            Sym::One => '1',
            Sym::Blank => '□',
        }
    }
}

impl TryFrom<String> for Sym {
    type Error = String;

    fn try_from(s: String) -> Result<Sym, String> {
        match s.as_str() {
            "0" => Ok(Sym::Zero),
            "1" => Ok(Sym::One),
            "eps" | "ε" | "blank" | "□" | "_" => Ok(Sym::Blank),
            other => Err(format!("unknown tape symbol `{other}`")),
        }
    }
}

impl From<Sym> for String {
    fn from(s: Sym) -> String {
        match s {
            Sym::Zero => "0".into(),
            Sym::One => "1".into(),
            Sym::Blank => "eps".into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Move {
    L,
    R,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeltaRule {
    pub from: String,
    pub read: Sym,
    pub cell_row: usize,
    pub to: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GammaRule {
    pub from: String,
    pub cell_row: usize,
    pub to: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EtaRule {
    pub from: String,
    /// Letters of the step; empty for the label `1`.
    pub step: Vec<Letter>,
    pub read: Vec<Sym>,
    pub write: Vec<Sym>,
    #[serde(rename = "move")]
    pub mv: Move,
    pub to: String,
}

/// A validated machine.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Stm {
    pub states: Vec<String>,
    pub initial: String,
    pub finals: Vec<String>,
    pub k: usize,
    #[serde(default)]
    pub delta: Vec<DeltaRule>,
    #[serde(default)]
    pub gamma: Vec<GammaRule>,
    #[serde(default)]
    pub eta: Vec<EtaRule>,
}

impl Stm {
    pub fn validate(&self) -> Result<(), StmError> {
        let invalid = |m: String| Err(StmError::Invalid(m));
        let states: BTreeSet<&str> = self.states.iter().map(String::as_str).collect();
        if self.k == 0 {
            return invalid("k must be at least 1".into());
        }
        if !states.contains(self.initial.as_str()) {
            return invalid(format!("initial state `{}` is not a state", self.initial));
        }
        for q in &self.finals {
            if !states.contains(q.as_str()) {
                return invalid(format!("final `{q}` is not a state"));
            }
        }
        let finals = self.finals_set();
        let check = |kind: &str, from: &str, to: &str| -> Result<(), StmError> {
            for q in [from, to] {
                if !states.contains(q) {
                    return Err(StmError::Invalid(format!("{kind} rule mentions unknown state `{q}`")));
                }
            }
            if finals.contains(from) {
                return Err(StmError::Invalid(format!("{kind} rule leaves final state `{from}`")));
            }
            Ok(())
        };
        for r in &self.delta {
            check("delta", &r.from, &r.to)?;
            if !(1..=self.k).contains(&r.cell_row) {
                return invalid(format!("delta cell_row {} outside 1..={}", r.cell_row, self.k));
            }
        }
        for r in &self.gamma {
            check("gamma", &r.from, &r.to)?;
            if !(1..=self.k).contains(&r.cell_row) {
                return invalid(format!("gamma cell_row {} outside 1..={}", r.cell_row, self.k));
            }
        }
        for r in &self.eta {
            check("eta", &r.from, &r.to)?;
            if r.read.len() != self.k || r.write.len() != self.k {
                return invalid(format!("eta rule from `{}` needs {}-entry read/write vectors", r.from, self.k));
            }
        }
        Ok(())
    }

    fn finals_set(&self) -> BTreeSet<&str> {
        self.finals.iter().map(String::as_str).collect()
    }

    pub fn is_final(&self, q: &str) -> bool {
        self.finals.iter().any(|f| f == q)
    }

    pub fn from_json(text: &str) -> Result<Stm, StmError> {
        let m: Stm = serde_json::from_str(text).map_err(|e| StmError::Format(e.to_string()))?;
        m.validate()?;
        Ok(m)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn initial_config(&self, input: &[Sym]) -> StmConfig {
        StmConfig {
            control: self.initial.clone(),
            input: input.to_vec(),
            input_head: 0,
            output: Vec::new(),
            planar: BTreeMap::new(),
            head: 0,
        }
    }

    /// One-step successors with their labels (`None` for `1`), in rule
    /// order: delta, gamma, eta.
    pub fn successors(&self, c: &StmConfig) -> Vec<(Option<Step>, StmConfig)> {
        let mut out = Vec::new();
        if self.is_final(&c.control) {
            return out;
        }
        for r in self.delta.iter().filter(|r| r.from == c.control) {
            if c.input_symbol() == r.read {
                let mut n = c.clone();
                n.control = r.to.clone();
                n.set_cell(self.k, r.cell_row - 1, r.read);
                n.input_head = (c.input_head + 1).min(c.input.len() + 1);
                out.push((None, n));
            }
        }
        for r in self.gamma.iter().filter(|r| r.from == c.control) {
            let s = c.cell(r.cell_row - 1);
            if s != Sym::Blank {
                let mut n = c.clone();
                n.control = r.to.clone();
                n.output.push(s);
                out.push((None, n));
            }
        }
        for r in self.eta.iter().filter(|r| r.from == c.control) {
            if c.column(self.k) == r.read {
                let mut n = c.clone();
                n.control = r.to.clone();
                let label = (!r.step.is_empty()).then(|| Step::new(r.step.clone()));
                if label.is_some() {
                    n.set_column(r.write.clone());
                }
                n.head += match r.mv {
                    Move::L => -1,
                    Move::R => 1,
                };
                out.push((label, n));
            }
        }
        out
    }

    /// Breadth-first search from the initial configuration on `input`.
    pub fn run(&self, input: &[Sym], max_steps: usize, mode: Mode) -> StmOutcome {
        self.run_from(self.initial_config(input), max_steps, mode)
    }

    /// As [`Stm::run`] from an arbitrary starting configuration.
    pub fn run_from(&self, start: StmConfig, max_steps: usize, mode: Mode) -> StmOutcome {
        // nodes: configuration, parent index, label
        let mut nodes: Vec<(StmConfig, Option<usize>, Option<Step>)> = vec![(start.clone(), None, None)];
        let mut seen: HashSet<StmConfig> = HashSet::from([start]);
        let mut frontier = vec![0usize];
        let mut accepted: Option<(usize, usize)> = None;
        let mut max_frontier = 1;
        let mut depth = 0;
        loop {
            if accepted.is_none() {
                if let Some(&i) = frontier.iter().find(|&&i| self.is_final(&nodes[i].0.control)) {
                    accepted = Some((i, depth));
                    if mode == Mode::FirstAccept {
                        break;
                    }
                }
            }
            if frontier.is_empty() || depth == max_steps {
                break;
            }
            let mut next = Vec::new();
            for &i in &frontier {
                for (label, c) in self.successors(&nodes[i].0) {
                    if seen.insert(c.clone()) {
                        nodes.push((c, Some(i), label));
                        next.push(nodes.len() - 1);
                    }
                }
            }
            frontier = next;
            max_frontier = max_frontier.max(frontier.len());
            depth += 1;
        }
        let status = match accepted {
            Some(_) => Status::Accepted,
            None if frontier.is_empty() => Status::Rejected,
            None => Status::BoundExceeded,
        };
        let end = accepted.map(|(i, _)| i);
        let mut path = Vec::new();
        let mut cur = end;
        while let Some(i) = cur {
            path.push((nodes[i].2.clone(), nodes[i].0.clone()));
            cur = nodes[i].1;
        }
        path.reverse();
        let word = StepWord::new(path.iter().filter_map(|(l, _)| l.clone()).collect());
        let output = end.map(|i| {
            let out = &nodes[i].0.output;
            assert!(out.iter().all(|s| *s != Sym::Blank), "outputs are words over 0,1");
            bits(out)
        });
        StmOutcome {
            status,
            output,
            word,
            steps_used: accepted.map_or(depth, |(_, d)| d),
            max_frontier,
            trace: path,
        }
    }

    /// Labels (with `1` dropped) of every accepting run of at most
    /// `max_steps` transitions.
    pub fn accepted_words_upto(&self, input: &[Sym], max_steps: usize) -> BTreeSet<StepWord> {
        self.accepted_words_with(input, max_steps, true)
    }

    /// As [`Stm::accepted_words_upto`]; `dedup` merges runs that reach the
    /// same configuration with the same word.
    pub fn accepted_words_with(&self, input: &[Sym], max_steps: usize, dedup: bool) -> BTreeSet<StepWord> {
        let mut out = BTreeSet::new();
        let mut queue = VecDeque::from([(self.initial_config(input), StepWord::one(), 0usize)]);
        let mut seen: HashMap<(StmConfig, StepWord), ()> = HashMap::new();
        while let Some((c, w, d)) = queue.pop_front() {
            if self.is_final(&c.control) {
                out.insert(w.clone());
            }
            if d == max_steps {
                continue;
            }
            for (label, n) in self.successors(&c) {
                let mut w2 = w.clone();
                if let Some(u) = label {
                    w2.push(u);
                }
                if dedup && seen.insert((n.clone(), w2.clone()), ()).is_some() {
                    continue;
                }
                queue.push_back((n, w2, d + 1));
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Stop at the shallowest accepting configuration.
    FirstAccept,
    /// Explore the whole bounded configuration graph.
    Exhaustive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Accepted,
    Rejected,
    BoundExceeded,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Accepted => "accepted",
            Status::Rejected => "rejected",
            Status::BoundExceeded => "bound_exceeded",
        })
    }
}

#[derive(Debug, Clone)]
pub struct StmOutcome {
    pub status: Status,
    /// Output tape, present iff accepted.
    pub output: Option<String>,
    pub word: StepWord,
    pub steps_used: usize,
    /// Largest BFS frontier seen; 1 for deterministic runs.
    pub max_frontier: usize,
    /// Accepting run with labels, starting at the initial configuration.
    pub trace: Vec<(Option<Step>, StmConfig)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StmConfig {
    pub control: String,
    pub input: Vec<Sym>,
    /// Cell of the input tape under the head, in `0..=input.len() + 1`.
    pub input_head: usize,
    pub output: Vec<Sym>,
    /// Nonblank columns of the planar tape.
    pub planar: BTreeMap<i64, Vec<Sym>>,
    pub head: i64,
}

impl StmConfig {
    pub fn input_symbol(&self) -> Sym {
        match self.input_head {
            0 => Sym::Blank,
            i => self.input.get(i - 1).copied().unwrap_or(Sym::Blank),
        }
    }

    pub fn column(&self, k: usize) -> Vec<Sym> {
        self.planar.get(&self.head).cloned().unwrap_or_else(|| vec![Sym::Blank; k])
    }

    fn cell(&self, row: usize) -> Sym {
        self.planar.get(&self.head).map_or(Sym::Blank, |c| c[row])
    }

    fn set_column(&mut self, col: Vec<Sym>) {
        if col.iter().all(|s| *s == Sym::Blank) {
            self.planar.remove(&self.head);
        } else {
            self.planar.insert(self.head, col);
        }
    }

    fn set_cell(&mut self, k: usize, row: usize, s: Sym) {
        let mut col = self.column(k);
        col[row] = s;
        self.set_column(col);
    }

    /// Loads `rows` (top to bottom) onto the planar tape from column 0.
    pub fn with_planar(mut self, rows: &[Vec<Sym>]) -> StmConfig {
        let width = rows.iter().map(Vec::len).max().unwrap_or(0);
        for col in 0..width {
            let v: Vec<Sym> = rows.iter().map(|r| r.get(col).copied().unwrap_or(Sym::Blank)).collect();
            let saved = self.head;
            self.head = col as i64;
            self.set_column(v);
            self.head = saved;
        }
        self
    }
}

/// Parses a word over `0`/`1`.
pub fn parse_bits(s: &str) -> Result<Vec<Sym>, StmError> {
    s.chars()
        .map(|c| Sym::from_bit(c).ok_or_else(|| StmError::Format(format!("input symbol `{c}` is not 0 or 1"))))
        .collect()
}

pub fn bits(w: &[Sym]) -> String {
    w.iter().map(|s| s.glyph()).collect()
}

//! Step automata: finite automata whose transitions read letters (`delta`)
//! or whole steps (`gamma`), accepting languages of step words.
//!
//! Final states may carry outgoing transitions. Acceptance of the empty
//! word at a final state is unaffected.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::AutomatonError;
use crate::step::{Letter, Step, StepWord};

pub type State = String;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StepAutomaton {
    states: BTreeSet<State>,
    finals: BTreeSet<State>,
    delta: BTreeMap<(State, Letter), BTreeSet<State>>,
    gamma: BTreeMap<(State, Step), BTreeSet<State>>,
}

impl StepAutomaton {
    pub fn new() -> StepAutomaton {
        StepAutomaton::default()
    }

    pub fn add_state(&mut self, q: impl Into<State>, is_final: bool) {
        let q = q.into();
        if is_final {
            self.finals.insert(q.clone());
        }
        self.states.insert(q);
    }

    fn check(&self, q: &str) -> Result<(), AutomatonError> {
        if self.states.contains(q) {
            Ok(())
        } else {
            Err(AutomatonError::UnknownState(q.to_string()))
        }
    }

    pub fn add_delta(&mut self, from: &str, a: Letter, to: &str) -> Result<(), AutomatonError> {
        self.check(from)?;
        self.check(to)?;
        self.delta.entry((from.to_string(), a)).or_default().insert(to.to_string());
        Ok(())
    }

    pub fn add_gamma(&mut self, from: &str, step: Step, to: &str) -> Result<(), AutomatonError> {
        self.check(from)?;
        self.check(to)?;
        if step.is_empty() {
            return Err(AutomatonError::EmptyStep(from.to_string()));
        }
        self.gamma.entry((from.to_string(), step)).or_default().insert(to.to_string());
        Ok(())
    }

    pub fn states(&self) -> &BTreeSet<State> {
        &self.states
    }

    pub fn finals(&self) -> &BTreeSet<State> {
        &self.finals
    }

    pub fn is_final(&self, q: &str) -> bool {
        self.finals.contains(q)
    }

    pub fn delta(&self) -> &BTreeMap<(State, Letter), BTreeSet<State>> {
        &self.delta
    }

    pub fn gamma(&self) -> &BTreeMap<(State, Step), BTreeSet<State>> {
        &self.gamma
    }

    pub fn transition_count(&self) -> usize {
        self.delta.values().map(BTreeSet::len).sum::<usize>() + self.gamma.values().map(BTreeSet::len).sum::<usize>()
    }

    /// Every unit run `(from, label, to)`, letters as singleton steps.
    pub fn unit_runs(&self) -> impl Iterator<Item = (&State, Step, &State)> + '_ {
        let d = self
            .delta
            .iter()
            .flat_map(|((q, a), ts)| ts.iter().map(move |t| (q, Step::singleton(*a), t)));
        let g = self
            .gamma
            .iter()
            .flat_map(|((q, u), ts)| ts.iter().map(move |t| (q, u.clone(), t)));
        d.chain(g)
    }

    /// One-step targets of `q` over all labels.
    pub fn successors(&self, q: &str) -> BTreeSet<&State> {
        let d = self
            .delta
            .range((q.to_string(), Letter::new('a').unwrap())..)
            .take_while(|((p, _), _)| p == q)
            .flat_map(|(_, ts)| ts);
        let g = self
            .gamma
            .range((q.to_string(), Step::empty())..)
            .take_while(|((p, _), _)| p == q)
            .flat_map(|(_, ts)| ts);
        d.chain(g).collect()
    }

    /// The finite step alphabet: gamma keys plus singletons for delta keys.
    pub fn step_alphabet(&self) -> BTreeSet<Step> {
        self.delta
            .keys()
            .map(|(_, a)| Step::singleton(*a))
            .chain(self.gamma.keys().map(|(_, u)| u.clone()))
            .collect()
    }

    pub fn run(&self, q: &str, label: &Step) -> Result<BTreeSet<State>, AutomatonError> {
        self.check(q)?;
        let mut out = BTreeSet::new();
        if let Some(a) = label.as_singleton() {
            if let Some(ts) = self.delta.get(&(q.to_string(), a)) {
                out.extend(ts.iter().cloned());
            }
        }
        if let Some(ts) = self.gamma.get(&(q.to_string(), label.clone())) {
            out.extend(ts.iter().cloned());
        }
        Ok(out)
    }

    fn run_set(&self, from: &BTreeSet<State>, label: &Step) -> BTreeSet<State> {
        from.iter()
            .flat_map(|q| self.run(q, label).unwrap_or_default())
            .collect()
    }

    /// Whether some path labelled `w` leads from `q` to a final state.
    pub fn accepts(&self, q: &str, w: &StepWord) -> bool {
        if !self.states.contains(q) {
            return false;
        }
        let mut current = BTreeSet::from([q.to_string()]);
        for u in w.steps() {
            current = self.run_set(&current, u);
            if current.is_empty() {
                return false;
            }
        }
        current.iter().any(|s| self.finals.contains(s))
    }

    /// All accepted words with at most `max_len` steps.
    pub fn language_upto(&self, q: &str, max_len: usize) -> Result<BTreeSet<StepWord>, AutomatonError> {
        self.check(q)?;
        let alphabet = self.step_alphabet();
        let mut out = BTreeSet::new();
        let mut layer = vec![(StepWord::one(), BTreeSet::from([q.to_string()]))];
        for len in 0..=max_len {
            let mut next = Vec::new();
            for (w, set) in &layer {
                if set.iter().any(|s| self.finals.contains(s)) {
                    out.insert(w.clone());
                }
                if len == max_len {
                    continue;
                }
                for u in &alphabet {
                    let targets = self.run_set(set, u);
                    if !targets.is_empty() {
                        let mut w2 = w.clone();
                        w2.push(u.clone());
                        next.push((w2, targets));
                    }
                }
            }
            layer = next;
        }
        Ok(out)
    }

    /// The least support-closed set containing `q`.
    pub fn support(&self, q: &str) -> Result<BTreeSet<State>, AutomatonError> {
        self.check(q)?;
        let mut seen = BTreeSet::from([q.to_string()]);
        let mut queue = VecDeque::from([q.to_string()]);
        while let Some(p) = queue.pop_front() {
            for t in self.successors(&p) {
                if seen.insert(t.clone()) {
                    queue.push_back(t.clone());
                }
            }
        }
        Ok(seen)
    }

    /// The support preorder as a map from each state to the states below it.
    pub fn support_relation(&self) -> BTreeMap<State, BTreeSet<State>> {
        self.states
            .iter()
            .map(|q| (q.clone(), self.support(q).expect("own state")))
            .collect()
    }

    /// Every transition target must lie strictly below its source.
    pub fn is_well_nested(&self) -> bool {
        self.recursion_violation().is_none()
    }

    /// A transition `(source, target)` whose target is not strictly below its
    /// source in the support order.
    pub fn recursion_violation(&self) -> Option<(State, State)> {
        let below = self.support_relation();
        self.unit_runs()
            .find(|(q, _, t)| below[*t].contains(*q))
            .map(|(q, _, t)| (q.clone(), t.clone()))
    }

    pub fn is_support_closed(&self, set: &BTreeSet<State>) -> bool {
        self.support_closure_violation(set).is_none()
    }

    fn support_closure_violation(&self, set: &BTreeSet<State>) -> Option<(State, State)> {
        set.iter().find_map(|q| {
            self.successors(q)
                .into_iter()
                .find(|t| !set.contains(*t))
                .map(|t| (q.clone(), t.clone()))
        })
    }

    /// The sub-automaton on a support-closed set of states.
    pub fn restrict(&self, keep: &BTreeSet<State>) -> Result<StepAutomaton, AutomatonError> {
        if let Some(q) = keep.iter().find(|q| !self.states.contains(*q)) {
            return Err(AutomatonError::UnknownState(q.clone()));
        }
        if let Some((q, t)) = self.support_closure_violation(keep) {
            return Err(AutomatonError::NotSupportClosed(q, t));
        }
        Ok(StepAutomaton {
            states: keep.clone(),
            finals: self.finals.intersection(keep).cloned().collect(),
            delta: self
                .delta
                .iter()
                .filter(|((q, _), _)| keep.contains(q))
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
            gamma: self
                .gamma
                .iter()
                .filter(|((q, _), _)| keep.contains(q))
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        })
    }

    /// Graphviz rendering; finals are double circles.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph step_automaton {\n  rankdir=LR;\n");
        for q in &self.states {
            let shape = if self.is_final(q) { "doublecircle" } else { "circle" };
            let _ = writeln!(out, "  {q:?} [shape={shape}];");
        }
        for ((q, a), ts) in &self.delta {
            for t in ts {
                let _ = writeln!(out, "  {q:?} -> {t:?} [label=\"{a}\"];");
            }
        }
        for ((q, u), ts) in &self.gamma {
            for t in ts {
                let _ = writeln!(out, "  {q:?} -> {t:?} [label=\"{u}\"];");
            }
        }
        out.push_str("}\n");
        out
    }

    pub fn to_file(&self) -> AutomatonFile {
        AutomatonFile {
            states: self.states.iter().cloned().collect(),
            finals: self.finals.iter().cloned().collect(),
            delta: self
                .delta
                .iter()
                .flat_map(|((q, a), ts)| {
                    ts.iter().map(move |t| DeltaEntry {
                        from: q.clone(),
                        letter: *a,
                        to: t.clone(),
                    })
                })
                .collect(),
            gamma: self
                .gamma
                .iter()
                .flat_map(|((q, u), ts)| {
                    ts.iter().map(move |t| GammaEntry {
                        from: q.clone(),
                        step: u.letters().to_vec(),
                        to: t.clone(),
                    })
                })
                .collect(),
        }
    }

    pub fn from_file(file: &AutomatonFile) -> Result<StepAutomaton, AutomatonError> {
        let mut a = StepAutomaton::new();
        for q in &file.states {
            a.add_state(q.clone(), false);
        }
        for q in &file.finals {
            a.check(q)?;
            a.finals.insert(q.clone());
        }
        for d in &file.delta {
            a.add_delta(&d.from, d.letter, &d.to)?;
        }
        for g in &file.gamma {
            a.add_gamma(&g.from, Step::new(g.step.clone()), &g.to)?;
        }
        Ok(a)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<StepAutomaton, AutomatonError> {
        let file: AutomatonFile = serde_json::from_str(text).map_err(|e| AutomatonError::Format(e.to_string()))?;
        StepAutomaton::from_file(&file)
    }
}

/// On-disk form of a step automaton.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AutomatonFile {
    pub states: Vec<State>,
    pub finals: Vec<State>,
    #[serde(default)]
    pub delta: Vec<DeltaEntry>,
    #[serde(default)]
    pub gamma: Vec<GammaEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeltaEntry {
    pub from: State,
    pub letter: Letter,
    pub to: State,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GammaEntry {
    pub from: State,
    pub step: Vec<Letter>,
    pub to: State,
}

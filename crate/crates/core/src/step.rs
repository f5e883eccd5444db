//! Letters, steps (multisets of letters) and step words.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::ParseError;

/// A single action symbol, one of `a`..=`z`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "char", into = "char")]
pub struct Letter(u8);

impl Letter {
    pub fn new(c: char) -> Option<Letter> {
        c.is_ascii_lowercase().then_some(Letter(c as u8))
    }

    pub fn as_char(self) -> char {
        self.0 as char
    }
}

impl TryFrom<char> for Letter {
    type Error = String;

    fn try_from(c: char) -> Result<Self, Self::Error> {
        Letter::new(c).ok_or_else(|| format!("`{c}` is not a letter a-z"))
    }
}

impl From<Letter> for char {
    fn from(l: Letter) -> char {
        l.as_char()
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// A multiset of letters executed simultaneously. Stored sorted.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Step(Vec<Letter>);

impl Step {
    pub fn new(mut letters: Vec<Letter>) -> Step {
        letters.sort_unstable();
        Step(letters)
    }

    pub fn singleton(a: Letter) -> Step {
        Step(vec![a])
    }

    /// The empty step. Only meaningful as padding while splitting a step;
    /// it never appears inside a [`StepWord`].
    pub fn empty() -> Step {
        Step(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_singleton(&self) -> Option<Letter> {
        match self.0.as_slice() {
            [a] => Some(*a),
            _ => None,
        }
    }

    /// Multiset union.
    pub fn union(&self, other: &Step) -> Step {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Step::new(v)
    }

    /// All ways of writing `self` as `left ∪ right` (as multisets), each
    /// unordered split reported once per distinct `left`.
    pub fn splits(&self) -> Vec<(Step, Step)> {
        let mut groups: Vec<(Letter, usize)> = Vec::new();
        for &l in &self.0 {
            match groups.last_mut() {
                Some((g, n)) if *g == l => *n += 1,
                _ => groups.push((l, 1)),
            }
        }
        let mut out = Vec::new();
        let mut take = vec![0usize; groups.len()];
        loop {
            let mut left = Vec::new();
            let mut right = Vec::new();
            for (i, &(l, n)) in groups.iter().enumerate() {
                left.extend(std::iter::repeat_n(l, take[i]));
                right.extend(std::iter::repeat_n(l, n - take[i]));
            }
            out.push((Step(left), Step(right)));
            // odometer increment
            let mut i = 0;
            loop {
                if i == groups.len() {
                    return out;
                }
                if take[i] < groups[i].1 {
                    take[i] += 1;
                    break;
                }
                take[i] = 0;
                i += 1;
            }
        }
    }
}

impl fmt::Debug for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, ">")
    }
}

/// A finite sequence of nonempty steps; the empty sequence is the word `1`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct StepWord(Vec<Step>);

impl StepWord {
    pub fn new(steps: Vec<Step>) -> StepWord {
        assert!(
            steps.iter().all(|s| !s.is_empty()),
            "step words never contain the empty step"
        );
        StepWord(steps)
    }

    pub fn one() -> StepWord {
        StepWord(Vec::new())
    }

    pub fn steps(&self) -> &[Step] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Total number of letter occurrences.
    pub fn letter_count(&self) -> usize {
        self.0.iter().map(Step::len).sum()
    }

    pub fn push(&mut self, step: Step) {
        assert!(!step.is_empty());
        self.0.push(step);
    }

    pub fn concat(&self, other: &StepWord) -> StepWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        StepWord(v)
    }
}

impl fmt::Debug for StepWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Renders `a.<b,c>.d`; singleton steps drop their brackets, the empty word is `1`.
impl fmt::Display for StepWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ".")?;
            }
            match s.as_singleton() {
                Some(a) => write!(f, "{a}")?,
                None => write!(f, "{s}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for Step {
    type Err = ParseError;

    /// Accepts `<a,b>` or a bare letter `a`.
    fn from_str(s: &str) -> Result<Step, ParseError> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if let Some(inner) = t.strip_prefix('<').and_then(|r| r.strip_suffix('>')) {
            let mut letters = Vec::new();
            for (i, part) in inner.split(',').enumerate() {
                let mut cs = part.chars();
                match (cs.next(), cs.next()) {
                    (Some(c), None) => letters.push(
                        Letter::new(c).ok_or_else(|| ParseError::new(i, format!("unknown symbol `{c}`")))?,
                    ),
                    _ => return Err(ParseError::new(i, format!("bad step element `{part}`"))),
                }
            }
            return Ok(Step::new(letters));
        }
        let mut cs = t.chars();
        match (cs.next(), cs.next()) {
            (Some(c), None) => Letter::new(c)
                .map(Step::singleton)
                .ok_or_else(|| ParseError::new(0, format!("unknown symbol `{c}`"))),
            _ => Err(ParseError::new(0, format!("bad step `{s}`"))),
        }
    }
}

impl FromStr for StepWord {
    type Err = ParseError;

    /// Parses `a.<b,c>.d`; `1` or the empty string is the empty word.
    fn from_str(s: &str) -> Result<StepWord, ParseError> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() || t == "1" {
            return Ok(StepWord::one());
        }
        let mut steps = Vec::new();
        let mut offset = 0;
        for part in t.split('.') {
            let step: Step = part
                .parse()
                .map_err(|e: ParseError| ParseError::new(offset + e.position, e.message))?;
            if step.is_empty() {
                return Err(ParseError::new(offset, "empty step"));
            }
            steps.push(step);
            offset += part.len() + 1;
        }
        Ok(StepWord(steps))
    }
}

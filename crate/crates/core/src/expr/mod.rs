//! Series-parallel rational expressions.

mod axioms;
mod parse;
pub mod random;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

pub use axioms::{
    check_axiom, check_axiom_with, check_suite, Axiom, AxiomReport, AxiomStatus, Semantics, SuiteConfig, Witness,
};
pub use parse::parse;

use crate::error::ParseError;
use crate::language::{lang_par, lang_parstar, lang_seq, lang_star, lang_union, PomsetLanguage};
use crate::pomset::Pomset;
use crate::step::{Letter, Step};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SprExpr {
    Zero,
    One,
    Letter(Letter),
    Sum(Box<SprExpr>, Box<SprExpr>),
    Seq(Box<SprExpr>, Box<SprExpr>),
    Star(Box<SprExpr>),
    Par(Box<SprExpr>, Box<SprExpr>),
    ParStar(Box<SprExpr>),
}

use SprExpr::*;

impl SprExpr {
    pub fn letter(c: char) -> SprExpr {
        Letter(crate::step::Letter::new(c).expect("letter a-z"))
    }

    pub fn sum(x: SprExpr, y: SprExpr) -> SprExpr {
        Sum(Box::new(x), Box::new(y))
    }

    pub fn seq(x: SprExpr, y: SprExpr) -> SprExpr {
        Seq(Box::new(x), Box::new(y))
    }

    pub fn par(x: SprExpr, y: SprExpr) -> SprExpr {
        Par(Box::new(x), Box::new(y))
    }

    pub fn star(x: SprExpr) -> SprExpr {
        Star(Box::new(x))
    }

    pub fn parstar(x: SprExpr) -> SprExpr {
        ParStar(Box::new(x))
    }

    /// The parallel composition of a step's letters, `1` for the empty step.
    pub fn from_step(s: &Step) -> SprExpr {
        let mut it = s.letters().iter().map(|&a| Letter(a));
        match it.next() {
            None => One,
            Some(first) => it.fold(first, SprExpr::par),
        }
    }

    /// Number of AST nodes.
    pub fn size(&self) -> usize {
        match self {
            Zero | One | Letter(_) => 1,
            Star(x) | ParStar(x) => 1 + x.size(),
            Sum(x, y) | Seq(x, y) | Par(x, y) => 1 + x.size() + y.size(),
        }
    }

    pub fn letters(&self) -> BTreeSet<crate::step::Letter> {
        let mut out = BTreeSet::new();
        self.collect_letters(&mut out);
        out
    }

    fn collect_letters(&self, out: &mut BTreeSet<crate::step::Letter>) {
        match self {
            Zero | One => {}
            Letter(a) => {
                out.insert(*a);
            }
            Star(x) | ParStar(x) => x.collect_letters(out),
            Sum(x, y) | Seq(x, y) | Par(x, y) => {
                x.collect_letters(out);
                y.collect_letters(out);
            }
        }
    }

    /// Replaces letters by expressions; letters without an entry stay put.
    pub fn substitute(&self, env: &dyn Fn(crate::step::Letter) -> Option<SprExpr>) -> SprExpr {
        match self {
            Zero => Zero,
            One => One,
            Letter(a) => env(*a).unwrap_or(Letter(*a)),
            Sum(x, y) => SprExpr::sum(x.substitute(env), y.substitute(env)),
            Seq(x, y) => SprExpr::seq(x.substitute(env), y.substitute(env)),
            Par(x, y) => SprExpr::par(x.substitute(env), y.substitute(env)),
            Star(x) => SprExpr::star(x.substitute(env)),
            ParStar(x) => SprExpr::parstar(x.substitute(env)),
        }
    }

    /// Binding strength used by the printer: stars > `.` > `||` > `+`.
    fn precedence(&self) -> u8 {
        match self {
            Sum(..) => 1,
            Par(..) => 2,
            Seq(..) => 3,
            Star(_) | ParStar(_) => 4,
            Zero | One | Letter(_) => 5,
        }
    }

    /// Reads the expression as a single pomset when it only uses `1`,
    /// letters, `.` and `||`.
    pub fn to_pomset(&self) -> Option<Pomset> {
        Some(match self {
            One => Pomset::one(),
            Letter(a) => Pomset::letter(*a),
            Seq(x, y) => x.to_pomset()?.seq(&y.to_pomset()?),
            Par(x, y) => x.to_pomset()?.par(&y.to_pomset()?),
            _ => return None,
        })
    }
}

/// Membership of the empty pomset, by the inductive rules.
pub fn nullable(x: &SprExpr) -> bool {
    match x {
        Zero | Letter(_) => false,
        One | Star(_) | ParStar(_) => true,
        Sum(x, y) => nullable(x) || nullable(y),
        Seq(x, y) | Par(x, y) => nullable(x) && nullable(y),
    }
}

pub fn par_depth(x: &SprExpr) -> usize {
    match x {
        Zero | One | Letter(_) => 0,
        Star(x) | ParStar(x) => par_depth(x),
        Sum(x, y) | Seq(x, y) => par_depth(x).max(par_depth(y)),
        Par(x, y) => par_depth(x).max(par_depth(y)) + 1,
    }
}

pub fn parstar_depth(x: &SprExpr) -> usize {
    match x {
        Zero | One | Letter(_) => 0,
        Star(x) => parstar_depth(x),
        ParStar(x) => parstar_depth(x) + 1,
        Sum(x, y) | Seq(x, y) | Par(x, y) => parstar_depth(x).max(parstar_depth(y)),
    }
}

/// All members of the denoted pomset language with at most `bound` nodes.
pub fn semantics(x: &SprExpr, bound: usize) -> PomsetLanguage {
    // operands always share `bound`, so the language operators cannot fail
    let same = "operands share the bound";
    match x {
        Zero => PomsetLanguage::empty(bound),
        One => PomsetLanguage::unit(bound),
        Letter(a) => PomsetLanguage::from_members(bound, [Pomset::letter(*a)]),
        Sum(x, y) => lang_union(&semantics(x, bound), &semantics(y, bound)).expect(same),
        Seq(x, y) => lang_seq(&semantics(x, bound), &semantics(y, bound)).expect(same),
        Par(x, y) => lang_par(&semantics(x, bound), &semantics(y, bound)).expect(same),
        Star(x) => lang_star(&semantics(x, bound)),
        ParStar(x) => lang_parstar(&semantics(x, bound)),
    }
}

/// Outcome of a bounded equivalence check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Equivalence {
    Equal,
    /// A smallest pomset in exactly one of the two languages, and whether it
    /// belongs to the left one.
    Differ { witness: Pomset, in_left: bool },
}

impl Equivalence {
    pub fn is_equal(&self) -> bool {
        matches!(self, Equivalence::Equal)
    }
}

/// Compares the languages of `x` and `y` restricted to `bound` nodes. Among
/// the smallest separating pomsets, left-side ones are reported first.
pub fn equiv_bounded(x: &SprExpr, y: &SprExpr, bound: usize) -> Equivalence {
    let lx = semantics(x, bound);
    let ly = semantics(y, bound);
    let only_left = lx.members().difference(ly.members()).map(|p| (p, true));
    let only_right = ly.members().difference(lx.members()).map(|p| (p, false));
    match only_left
        .chain(only_right)
        .min_by(|(p, pl), (q, ql)| {
            p.len()
                .cmp(&q.len())
                .then(ql.cmp(pl))
                .then_with(|| p.to_string().cmp(&q.to_string()))
        })
    {
        None => Equivalence::Equal,
        Some((p, in_left)) => Equivalence::Differ {
            witness: p.clone(),
            in_left,
        },
    }
}

impl fmt::Display for SprExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn child(f: &mut fmt::Formatter<'_>, x: &SprExpr, parens: bool) -> fmt::Result {
            if parens {
                write!(f, "({x})")
            } else {
                write!(f, "{x}")
            }
        }
        let p = self.precedence();
        match self {
            Zero => write!(f, "0"),
            One => write!(f, "1"),
            Letter(a) => write!(f, "{a}"),
            Sum(x, y) | Seq(x, y) | Par(x, y) => {
                let op = match self {
                    Sum(..) => "+",
                    Seq(..) => ".",
                    _ => "||",
                };
                child(f, x, x.precedence() < p)?;
                write!(f, "{op}")?;
                child(f, y, y.precedence() <= p)
            }
            Star(x) => {
                child(f, x, x.precedence() < p)?;
                write!(f, "*")
            }
            ParStar(x) => {
                child(f, x, x.precedence() < p)?;
                write!(f, "^*")
            }
        }
    }
}

impl fmt::Debug for SprExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{self}`")
    }
}

impl FromStr for SprExpr {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<SprExpr, ParseError> {
        parse(s)
    }
}

impl FromStr for Pomset {
    type Err = ParseError;

    /// Pomset notation: `1`, letters, `.` and `||` with parentheses.
    fn from_str(s: &str) -> Result<Pomset, ParseError> {
        parse(s)?
            .to_pomset()
            .ok_or_else(|| ParseError::new(0, "pomset notation allows only 1, letters, `.`, `||`"))
    }
}

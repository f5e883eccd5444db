//! Bounded checks of the concurrent Kleene algebra axioms.
//!
//! Equations are compared as exact sets of pomsets. Inequations `x ≦ y` are
//! read in the subsumption-closed model: every member of `x` must be
//! subsumed by (be at least as ordered as) some member of `y`. Plain set
//! containment is too strong for the exchange law: `(a||b).(c||d)` is not
//! itself a member of `(a.c)||(b.d)`, only more ordered than one.

use std::collections::BTreeMap;
use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::random::ExprGen;
use super::{parse, semantics, SprExpr};
use crate::language::PomsetLanguage;
use crate::pomset::Pomset;
use crate::step::Letter;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    A1,
    A2,
    A3,
    A4,
    A5,
    A6,
    A7,
    A8,
    A9,
    A10,
    A11,
    P1,
    P2,
    P3,
    P4,
    P5,
    P6,
    P7,
    P8,
    P9,
    A12,
    A13,
    A14,
    A15,
    P10,
    P11,
    P12,
    P13,
}

enum Form {
    Eq(&'static str, &'static str),
    Leq(&'static str, &'static str),
    /// premise `l ≦ r` implies conclusion `l ≦ r`
    Implies((&'static str, &'static str), (&'static str, &'static str)),
}

impl Axiom {
    pub const ALL: [Axiom; 28] = [
        Axiom::A1,
        Axiom::A2,
        Axiom::A3,
        Axiom::A4,
        Axiom::A5,
        Axiom::A6,
        Axiom::A7,
        Axiom::A8,
        Axiom::A9,
        Axiom::A10,
        Axiom::A11,
        Axiom::P1,
        Axiom::P2,
        Axiom::P3,
        Axiom::P4,
        Axiom::P5,
        Axiom::P6,
        Axiom::P7,
        Axiom::P8,
        Axiom::P9,
        Axiom::A12,
        Axiom::A13,
        Axiom::A14,
        Axiom::A15,
        Axiom::P10,
        Axiom::P11,
        Axiom::P12,
        Axiom::P13,
    ];

    fn form(self) -> Form {
        use Form::*;
        match self {
            // commutativity of +
            Axiom::A1 => Eq("x+y", "y+x"),
            Axiom::A2 => Eq("x+(y+z)", "(x+y)+z"),
            Axiom::A3 => Eq("x+x", "x"),
            Axiom::A4 => Eq("(x+y).z", "x.z+y.z"),
            Axiom::A5 => Eq("x.(y+z)", "x.y+x.z"),
            Axiom::A6 => Eq("x.(y.z)", "(x.y).z"),
            Axiom::A7 => Eq("x+0", "x"),
            Axiom::A8 => Eq("0.x", "0"),
            Axiom::A9 => Eq("x.0", "0"),
            Axiom::A10 => Eq("x.1", "x"),
            Axiom::A11 => Eq("1.x", "x"),
            Axiom::P1 => Eq("x||y", "y||x"),
            Axiom::P2 => Eq("x||(y||z)", "(x||y)||z"),
            Axiom::P3 => Eq("(x+y)||z", "x||z+y||z"),
            Axiom::P4 => Eq("x||(y+z)", "x||y+x||z"),
            Axiom::P5 => Leq("(x||y).(z||h)", "(x.z)||(y.h)"),
            Axiom::P6 => Eq("x||0", "0"),
            Axiom::P7 => Eq("0||x", "0"),
            Axiom::P8 => Eq("x||1", "x"),
            Axiom::P9 => Eq("1||x", "x"),
            Axiom::A12 => Eq("1+x.x*", "x*"),
            Axiom::A13 => Eq("1+x*.x", "x*"),
            Axiom::A14 => Implies(("x+y.z", "z"), ("y*.x", "z")),
            Axiom::A15 => Implies(("x+y.z", "y"), ("x.z*", "y")),
            Axiom::P10 => Eq("1+x||x^*", "x^*"),
            Axiom::P11 => Eq("1+x^*||x", "x^*"),
            Axiom::P12 => Implies(("x+y||z", "z"), ("y^*||x", "z")),
            Axiom::P13 => Implies(("x+y||z", "y"), ("x||z^*", "y")),
        }
    }

    pub fn is_conditional(self) -> bool {
        matches!(self.form(), Form::Implies(..))
    }

    /// The axiom as text, with `<=` for `≦` and `=>` for implication.
    pub fn statement(self) -> String {
        match self.form() {
            Form::Eq(l, r) => format!("{l} = {r}"),
            Form::Leq(l, r) => format!("{l} <= {r}"),
            Form::Implies((pl, pr), (cl, cr)) => format!("{pl} <= {pr} => {cl} <= {cr}"),
        }
    }

    /// Variables the axiom mentions, in `x y z h` order.
    pub fn variables(self) -> Vec<char> {
        let text = self.statement();
        ['x', 'y', 'z', 'h'].into_iter().filter(|v| text.contains(*v)).collect()
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// A concrete failing instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub instance: BTreeMap<char, SprExpr>,
    /// A smallest pomset separating the two sides.
    pub pomset: Pomset,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomStatus {
    Holds,
    Fails(Witness),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub axiom: Axiom,
    pub instances_checked: usize,
    /// Conditional axioms only: instances whose premise failed.
    pub vacuous: usize,
    pub status: AxiomStatus,
}

impl AxiomReport {
    pub fn holds(&self) -> bool {
        self.status == AxiomStatus::Holds
    }

    /// Folds another report for the same axiom into this one, keeping the
    /// first failure.
    pub fn merge(&mut self, other: AxiomReport) {
        debug_assert_eq!(self.axiom, other.axiom);
        self.instances_checked += other.instances_checked;
        self.vacuous += other.vacuous;
        if self.holds() {
            self.status = other.status;
        }
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:<4} {:<40} instances={}", self.axiom.to_string(), self.axiom.statement(), self.instances_checked)?;
        if self.axiom.is_conditional() {
            write!(f, " vacuous={}", self.vacuous)?;
        }
        match &self.status {
            AxiomStatus::Holds => write!(f, " holds"),
            AxiomStatus::Fails(w) => {
                let inst: Vec<String> = w.instance.iter().map(|(v, e)| format!("{v}={e}")).collect();
                write!(f, " FAILS [{}] witness {} ({})", inst.join(", "), w.pomset, w.detail)
            }
        }
    }
}

pub type Semantics<'a> = dyn Fn(&SprExpr, usize) -> PomsetLanguage + 'a;

fn instantiate(template: &str, env: &BTreeMap<char, SprExpr>) -> SprExpr {
    parse(template)
        .expect("axiom templates parse")
        .substitute(&|a: Letter| env.get(&a.as_char()).cloned())
}

fn smallest<'a>(it: impl Iterator<Item = &'a Pomset>) -> Option<&'a Pomset> {
    it.min_by(|p, q| p.len().cmp(&q.len()).then_with(|| p.to_string().cmp(&q.to_string())))
}

/// First member of `lhs` not subsumed-by any member of `rhs`.
fn leq_violation<'a>(lhs: &'a PomsetLanguage, rhs: &PomsetLanguage) -> Option<&'a Pomset> {
    smallest(lhs.members().iter().filter(|u| {
        !rhs.contains(u) && !rhs.members().iter().any(|v| v.len() == u.len() && u.subsumes(v))
    }))
}

pub fn check_axiom(axiom: Axiom, env: &BTreeMap<char, SprExpr>, bound: usize) -> AxiomReport {
    check_axiom_with(axiom, env, bound, &semantics)
}

/// As [`check_axiom`], evaluating both sides with a caller-supplied
/// semantics (used to confirm the harness catches a broken one).
pub fn check_axiom_with(
    axiom: Axiom,
    env: &BTreeMap<char, SprExpr>,
    bound: usize,
    sem: &Semantics<'_>,
) -> AxiomReport {
    let eval = |t: &str| sem(&instantiate(t, env), bound);
    let fail = |pomset: &Pomset, detail: String| {
        AxiomStatus::Fails(Witness {
            instance: env.clone(),
            pomset: pomset.clone(),
            detail,
        })
    };
    let mut vacuous = 0;
    let status = match axiom.form() {
        Form::Eq(l, r) => {
            let (lhs, rhs) = (eval(l), eval(r));
            let only_l = lhs.members().difference(rhs.members());
            let only_r = rhs.members().difference(lhs.members());
            match (smallest(only_l), smallest(only_r)) {
                (None, None) => AxiomStatus::Holds,
                (Some(p), _) => fail(p, "in left side only".into()),
                (None, Some(p)) => fail(p, "in right side only".into()),
            }
        }
        Form::Leq(l, r) => {
            let (lhs, rhs) = (eval(l), eval(r));
            match leq_violation(&lhs, &rhs) {
                None => AxiomStatus::Holds,
                Some(p) => fail(p, "left member not below any right member".into()),
            }
        }
        Form::Implies((pl, pr), (cl, cr)) => {
            if leq_violation(&eval(pl), &eval(pr)).is_some() {
                vacuous = 1;
                AxiomStatus::Holds
            } else {
                let (lhs, rhs) = (eval(cl), eval(cr));
                match leq_violation(&lhs, &rhs) {
                    None => AxiomStatus::Holds,
                    Some(p) => fail(p, "premise holds but conclusion fails".into()),
                }
            }
        }
    };
    AxiomReport {
        axiom,
        instances_checked: 1,
        vacuous,
        status,
    }
}

/// Draws an instance. Conditional axioms get their bounded variable built
/// as a least solution of the premise half of the time, so that enough
/// instances satisfy it.
fn sample_instance(axiom: Axiom, gen: &ExprGen, rng: &mut ChaCha8Rng) -> BTreeMap<char, SprExpr> {
    use rand::Rng;
    let mut env: BTreeMap<char, SprExpr> = axiom.variables().into_iter().map(|v| (v, gen.sample(rng))).collect();
    if axiom.is_conditional() && rng.gen_bool(0.5) {
        let x = env[&'x'].clone();
        let extra = if rng.gen_bool(0.5) { SprExpr::Zero } else { gen.sample(rng) };
        let seed = SprExpr::sum(x, extra);
        let (var, value) = match axiom {
            Axiom::A14 => ('z', SprExpr::seq(SprExpr::star(env[&'y'].clone()), seed)),
            Axiom::A15 => ('y', SprExpr::seq(seed, SprExpr::star(env[&'z'].clone()))),
            Axiom::P12 => ('z', SprExpr::par(SprExpr::parstar(env[&'y'].clone()), seed)),
            Axiom::P13 => ('y', SprExpr::par(seed, SprExpr::parstar(env[&'z'].clone()))),
            _ => unreachable!("only conditional axioms"),
        };
        env.insert(var, value);
    }
    env
}

/// Suite configuration for [`check_suite`].
#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub bound: usize,
    /// Instances per axiom; for conditional axioms, premise-satisfying ones.
    pub samples: usize,
    pub seed: u64,
    pub generator: ExprGen,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            bound: 4,
            samples: 200,
            seed: 0,
            generator: ExprGen::default(),
        }
    }
}

/// Checks every axiom on seeded random instances. Each axiom draws from its
/// own stream, so reports do not depend on evaluation order.
pub fn check_suite(cfg: &SuiteConfig) -> Vec<AxiomReport> {
    Axiom::ALL
        .iter()
        .enumerate()
        .map(|(i, &axiom)| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_mul(1000).wrapping_add(i as u64));
            let mut report = AxiomReport {
                axiom,
                instances_checked: 0,
                vacuous: 0,
                status: AxiomStatus::Holds,
            };
            let cap = cfg.samples * 50;
            let mut attempts = 0;
            while report.instances_checked - report.vacuous < cfg.samples && attempts < cap {
                attempts += 1;
                let env = sample_instance(axiom, &cfg.generator, &mut rng);
                report.merge(check_axiom(axiom, &env, cfg.bound));
            }
            report
        })
        .collect()
}

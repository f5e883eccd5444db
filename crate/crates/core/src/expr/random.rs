//! Seeded random expressions for property checks.

use rand::Rng;

use super::SprExpr;
use crate::step::Letter;

#[derive(Debug, Clone)]
pub struct ExprGen {
    pub max_depth: usize,
    pub alphabet: Vec<Letter>,
    /// Probability of a star (`*` or `^*`, split evenly) at an inner
    /// node; capped at 0.2.
    pub star_prob: f64,
}

impl Default for ExprGen {
    fn default() -> Self {
        ExprGen {
            max_depth: 5,
            alphabet: "abcd".chars().filter_map(Letter::new).collect(),
            star_prob: 0.2,
        }
    }
}

impl ExprGen {
    pub fn with_depth(max_depth: usize) -> Self {
        ExprGen {
            max_depth,
            ..ExprGen::default()
        }
    }

    pub fn sample<R: Rng>(&self, rng: &mut R) -> SprExpr {
        self.go(rng, self.max_depth)
    }

    fn leaf<R: Rng>(&self, rng: &mut R) -> SprExpr {
        match rng.gen_range(0..10) {
            0 => SprExpr::Zero,
            1 => SprExpr::One,
            _ => SprExpr::Letter(self.alphabet[rng.gen_range(0..self.alphabet.len())]),
        }
    }

    fn go<R: Rng>(&self, rng: &mut R, depth: usize) -> SprExpr {
        if depth <= 1 || rng.gen_bool(0.3) {
            return self.leaf(rng);
        }
        let star = self.star_prob.min(0.2);
        let r: f64 = rng.gen();
        if r < star / 2.0 {
            return SprExpr::star(self.go(rng, depth - 1));
        }
        if r < star {
            return SprExpr::parstar(self.go(rng, depth - 1));
        }
        let x = self.go(rng, depth - 1);
        let y = self.go(rng, depth - 1);
        match rng.gen_range(0..3) {
            0 => SprExpr::sum(x, y),
            1 => SprExpr::seq(x, y),
            _ => SprExpr::par(x, y),
        }
    }
}

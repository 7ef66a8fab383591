//! Seeded random programs over two variables.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::effect::rat::rat;

use super::semantics::Mode;
use super::syntax::{BinOp, Expr, Program, Stmt, VarDecl};

/// Generator settings; statement nesting never exceeds `max_depth`.
#[derive(Clone, Debug)]
pub struct GenConfig {
    pub mode: Mode,
    pub max_depth: usize,
    /// Largest upper bound for `x`; `y` may range up to twice this.
    pub max_hi: i64,
}

impl GenConfig {
    pub fn new(mode: Mode) -> Self {
        GenConfig {
            mode,
            max_depth: 5,
            max_hi: 15,
        }
    }
}

struct Gen<'a, R> {
    rng: &'a mut R,
    cfg: &'a GenConfig,
}

impl<R: Rng> Gen<'_, R> {
    fn arith(&mut self, depth: usize) -> Expr {
        if depth == 0 || self.rng.gen_bool(0.4) {
            return if self.rng.gen_bool(0.6) {
                Expr::Var(self.rng.gen_range(0..2))
            } else {
                Expr::int(self.rng.gen_range(0..5))
            };
        }
        let op = [BinOp::Add, BinOp::Sub, BinOp::Mul, BinOp::Mod][self.rng.gen_range(0..4)];
        let lhs = self.arith(depth - 1);
        let rhs = if op == BinOp::Mod {
            Expr::int(self.rng.gen_range(1..5))
        } else {
            self.arith(depth - 1)
        };
        Expr::bin(op, lhs, rhs)
    }

    fn cond(&mut self, depth: usize) -> Expr {
        match self.rng.gen_range(0..10) {
            0 if depth > 0 => Expr::Not(Box::new(self.cond(depth - 1))),
            1 if depth > 0 => {
                let (a, b) = (self.cond(depth - 1), self.cond(depth - 1));
                Expr::bin(if self.rng.gen_bool(0.5) { BinOp::And } else { BinOp::Or }, a, b)
            }
            _ => {
                let ops = [BinOp::Eq, BinOp::Ne, BinOp::Lt, BinOp::Le, BinOp::Gt, BinOp::Ge];
                let op = ops[self.rng.gen_range(0..ops.len())];
                let (a, b) = (self.arith(1), self.arith(1));
                Expr::bin(op, a, b)
            }
        }
    }

    fn probability(&mut self) -> crate::effect::Rat {
        let den = self.rng.gen_range(1..=6);
        rat(self.rng.gen_range(0..=den), den)
    }

    fn stmt(&mut self, depth: usize) -> Stmt {
        let pow = self.cfg.mode == Mode::Pow;
        if depth == 0 || self.rng.gen_bool(0.25) {
            return match self.rng.gen_range(0..10) {
                0 => Stmt::Skip,
                1 if pow => Stmt::Abort,
                _ => Stmt::Assign(self.rng.gen_range(0..2), self.arith(2)),
            };
        }
        let d = depth - 1;
        match self.rng.gen_range(0..4) {
            0 => Stmt::seq(self.stmt(d), self.stmt(d)),
            1 => {
                let c = self.cond(2);
                Stmt::If(c, Box::new(self.stmt(d)), Box::new(self.stmt(d)))
            }
            2 if pow => Stmt::Choose(Box::new(self.stmt(d)), Box::new(self.stmt(d))),
            _ => {
                let r = self.probability();
                Stmt::Prob(r, Box::new(self.stmt(d)), Box::new(self.stmt(d)))
            }
        }
    }

    fn program(&mut self) -> Program {
        let hi_x = self.rng.gen_range(1..=self.cfg.max_hi);
        let hi_y = self.rng.gen_range(0..=2 * self.cfg.max_hi + 1);
        let vars = vec![
            VarDecl {
                name: "x".into(),
                lo: 0,
                hi: hi_x,
            },
            VarDecl {
                name: "y".into(),
                lo: 0,
                hi: hi_y,
            },
        ];
        let body = self.stmt(self.cfg.max_depth);
        let c = self.cond(1);
        let post = match self.cfg.mode {
            Mode::Pow => c,
            Mode::Dist => Expr::Iverson(Box::new(c)),
        };
        Program {
            vars,
            body,
            post: Some(post),
        }
    }
}

/// One random program.
pub fn random_program<R: Rng>(rng: &mut R, cfg: &GenConfig) -> Program {
    Gen { rng, cfg }.program()
}

/// `count` programs from a fixed seed.
pub fn corpus(seed: u64, count: usize, cfg: &GenConfig) -> Vec<Program> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_program(&mut rng, cfg)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wp::{parse, StateSpace, STATE_CAP};

    #[test]
    fn shape() {
        for mode in [Mode::Pow, Mode::Dist] {
            let cfg = GenConfig::new(mode);
            for p in corpus(42, 100, &cfg) {
                assert!(p.body.depth() <= cfg.max_depth);
                assert!(StateSpace::of(&p).unwrap().len() <= STATE_CAP);
                if mode == Mode::Dist {
                    assert!(!p.body.contains_abort() && !p.body.contains_choose());
                }
                assert_eq!(parse(&p.to_string()).unwrap(), p);
            }
        }
    }

    #[test]
    fn seeded() {
        let cfg = GenConfig::new(Mode::Pow);
        assert_eq!(corpus(9, 5, &cfg), corpus(9, 5, &cfg));
    }
}

use num_traits::{One, Zero};

use crate::effect::Rat;
use crate::error::{Error, Result};
use crate::order::{FinPoset, FinSet};

use super::syntax::{BinOp, Expr, Program, VarDecl};

/// Largest state space the engine will build.
pub const STATE_CAP: usize = 512;

/// All environments over the declared ranges, the first variable varying
/// slowest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateSpace {
    vars: Vec<VarDecl>,
    set: FinSet,
}

impl StateSpace {
    pub fn new(vars: &[VarDecl]) -> Result<Self> {
        let size = vars
            .iter()
            .try_fold(1usize, |acc, v| acc.checked_mul(v.size()))
            .filter(|&n| n <= STATE_CAP)
            .ok_or_else(|| {
                let size = vars.iter().map(|v| v.size() as u128).product();
                Error::too_large("state space", size, STATE_CAP as u128)
            })?;
        let mut space = StateSpace {
            vars: vars.to_vec(),
            set: FinSet::numbered(0),
        };
        let labels = (0..size).map(|s| space.label_of(&space.env(s))).collect();
        space.set = FinSet::from_ordered(labels)?;
        Ok(space)
    }

    pub fn of(p: &Program) -> Result<Self> {
        StateSpace::new(&p.vars)
    }

    pub fn len(&self) -> usize {
        self.set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.set.len() == 0
    }

    pub fn vars(&self) -> &[VarDecl] {
        &self.vars
    }

    pub fn set(&self) -> &FinSet {
        &self.set
    }

    pub fn poset(&self) -> FinPoset {
        FinPoset::discrete(&self.set)
    }

    pub fn labels(&self) -> &[String] {
        self.set.elements()
    }

    pub fn label(&self, s: usize) -> &str {
        &self.set.elements()[s]
    }

    /// Variable values of state `s`.
    pub fn env(&self, mut s: usize) -> Vec<i64> {
        let mut env = vec![0; self.vars.len()];
        for (i, v) in self.vars.iter().enumerate().rev() {
            env[i] = v.lo + (s % v.size()) as i64;
            s /= v.size();
        }
        env
    }

    pub fn index(&self, env: &[i64]) -> usize {
        self.vars
            .iter()
            .zip(env)
            .fold(0, |acc, (v, &x)| acc * v.size() + (x - v.lo) as usize)
    }

    fn label_of(&self, env: &[i64]) -> String {
        self.vars
            .iter()
            .zip(env)
            .map(|(v, x)| format!("{}={x}", v.name))
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Looks a state up by label (`x=0,y=1`).
    pub fn parse_state(&self, label: &str) -> Result<usize> {
        let wanted: String = label.chars().filter(|c| !c.is_whitespace()).collect();
        self.set.index_of(&wanted)
    }

    /// The state reached by `var := value`, wrapping into the variable's range.
    pub fn assign(&self, s: usize, var: usize, value: &Rat) -> Result<usize> {
        if !value.is_integer() {
            return Err(Error::Range(format!(
                "assigning non-integer {value} to `{}`",
                self.vars[var].name
            )));
        }
        let v = &self.vars[var];
        let size = Rat::from_integer((v.size() as i64).into());
        let lo = Rat::from_integer(v.lo.into());
        let offset = modulo(&(value - &lo), &size);
        let mut env = self.env(s);
        env[var] = v.lo + i64::try_from(offset.to_integer()).expect("offset below range size");
        Ok(self.index(&env))
    }
}

/// Euclidean remainder of integers held as rationals.
fn modulo(a: &Rat, m: &Rat) -> Rat {
    let r = a - m * (a / m).floor();
    debug_assert!(!r.is_integer() || r >= Rat::zero());
    r
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Num(Rat),
    Bool(bool),
}

impl Value {
    pub fn num(self) -> Rat {
        match self {
            Value::Num(r) => r,
            Value::Bool(b) => {
                if b {
                    Rat::one()
                } else {
                    Rat::zero()
                }
            }
        }
    }

    pub fn truth(self) -> bool {
        match self {
            Value::Bool(b) => b,
            Value::Num(r) => !r.is_zero(),
        }
    }
}

/// Evaluates a type-checked expression in an environment.
pub fn eval(e: &Expr, env: &[i64]) -> Result<Value> {
    Ok(match e {
        Expr::Num(r) => Value::Num(r.clone()),
        Expr::Bool(b) => Value::Bool(*b),
        Expr::Var(i) => Value::Num(Rat::from_integer(env[*i].into())),
        Expr::Neg(a) => Value::Num(-eval(a, env)?.num()),
        Expr::Not(a) => Value::Bool(!eval(a, env)?.truth()),
        Expr::Iverson(a) => Value::Num(eval(a, env)?.num()),
        Expr::Bin(BinOp::And, a, b) => Value::Bool(eval(a, env)?.truth() && eval(b, env)?.truth()),
        Expr::Bin(BinOp::Or, a, b) => Value::Bool(eval(a, env)?.truth() || eval(b, env)?.truth()),
        Expr::Bin(op, a, b) => {
            let (x, y) = (eval(a, env)?.num(), eval(b, env)?.num());
            match op {
                BinOp::Add => Value::Num(x + y),
                BinOp::Sub => Value::Num(x - y),
                BinOp::Mul => Value::Num(x * y),
                BinOp::Div if y.is_zero() => return Err(Error::Range("division by zero".into())),
                BinOp::Div => Value::Num(x / y),
                BinOp::Mod if y.is_zero() || !x.is_integer() || !y.is_integer() => {
                    return Err(Error::Range(format!("{x} % {y} needs integers and a non-zero modulus")))
                }
                BinOp::Mod => Value::Num(modulo(&x, &y)),
                BinOp::Eq => Value::Bool(x == y),
                BinOp::Ne => Value::Bool(x != y),
                BinOp::Lt => Value::Bool(x < y),
                BinOp::Le => Value::Bool(x <= y),
                BinOp::Gt => Value::Bool(x > y),
                BinOp::Ge => Value::Bool(x >= y),
                BinOp::And | BinOp::Or => unreachable!("handled above"),
            }
        }
    })
}

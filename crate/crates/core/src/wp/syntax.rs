use std::fmt;

use num_traits::Signed;

use crate::effect::rat::fraction_string;
use crate::effect::Rat;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarDecl {
    pub name: String,
    pub lo: i64,
    pub hi: i64,
}

impl VarDecl {
    pub fn size(&self) -> usize {
        (self.hi - self.lo + 1) as usize
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Mod,
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
    And,
    Or,
}

impl BinOp {
    pub fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Div => "/",
            BinOp::Mod => "%",
            BinOp::Eq => "==",
            BinOp::Ne => "!=",
            BinOp::Lt => "<",
            BinOp::Le => "<=",
            BinOp::Gt => ">",
            BinOp::Ge => ">=",
            BinOp::And => "&&",
            BinOp::Or => "||",
        }
    }

    fn operand_ty(self) -> Ty {
        match self {
            BinOp::And | BinOp::Or => Ty::Bool,
            _ => Ty::Num,
        }
    }

    fn result_ty(self) -> Ty {
        match self {
            BinOp::Add | BinOp::Sub | BinOp::Mul | BinOp::Div | BinOp::Mod => Ty::Num,
            _ => Ty::Bool,
        }
    }

    pub(crate) fn signature(self) -> (Ty, Ty) {
        (self.operand_ty(), self.result_ty())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ty {
    Num,
    Bool,
}

impl fmt::Display for Ty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ty::Num => "number",
            Ty::Bool => "boolean",
        })
    }
}

/// Expressions; variables are indices into the declaration list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Num(Rat),
    Bool(bool),
    Var(usize),
    Neg(Box<Expr>),
    Not(Box<Expr>),
    /// `[b]`, the 0/1 indicator of a boolean.
    Iverson(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn ty(&self) -> Ty {
        match self {
            Expr::Num(_) | Expr::Neg(_) | Expr::Iverson(_) => Ty::Num,
            Expr::Bool(_) | Expr::Not(_) => Ty::Bool,
            Expr::Var(_) => Ty::Num,
            Expr::Bin(op, _, _) => op.result_ty(),
        }
    }

    pub fn bin(op: BinOp, l: Expr, r: Expr) -> Expr {
        Expr::Bin(op, Box::new(l), Box::new(r))
    }

    pub fn int(n: i64) -> Expr {
        Expr::Num(Rat::from_integer(n.into()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Stmt {
    Skip,
    Abort,
    Assign(usize, Expr),
    Seq(Box<Stmt>, Box<Stmt>),
    If(Expr, Box<Stmt>, Box<Stmt>),
    Choose(Box<Stmt>, Box<Stmt>),
    Prob(Rat, Box<Stmt>, Box<Stmt>),
}

impl Stmt {
    pub fn seq(a: Stmt, b: Stmt) -> Stmt {
        Stmt::Seq(Box::new(a), Box::new(b))
    }

    pub fn contains_abort(&self) -> bool {
        self.any(&|s| matches!(s, Stmt::Abort))
    }

    pub fn contains_choose(&self) -> bool {
        self.any(&|s| matches!(s, Stmt::Choose(..)))
    }

    fn any(&self, p: &dyn Fn(&Stmt) -> bool) -> bool {
        p(self)
            || match self {
                Stmt::Seq(a, b) | Stmt::If(_, a, b) | Stmt::Choose(a, b) | Stmt::Prob(_, a, b) => a.any(p) || b.any(p),
                _ => false,
            }
    }

    pub fn depth(&self) -> usize {
        match self {
            Stmt::Seq(a, b) | Stmt::If(_, a, b) | Stmt::Choose(a, b) | Stmt::Prob(_, a, b) => {
                1 + a.depth().max(b.depth())
            }
            _ => 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Program {
    pub vars: Vec<VarDecl>,
    pub body: Stmt,
    pub post: Option<Expr>,
}

pub(crate) struct ExprDisplay<'a> {
    pub vars: &'a [VarDecl],
    pub expr: &'a Expr,
}

impl fmt::Display for ExprDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sub = |e| ExprDisplay { vars: self.vars, expr: e };
        match self.expr {
            Expr::Num(r) if r.is_integer() && !r.is_negative() => write!(f, "{}", r.numer()),
            Expr::Num(r) if r.is_integer() => write!(f, "(-{})", r.numer().abs()),
            Expr::Num(r) if r.is_negative() => write!(f, "(-({} / {}))", r.numer().abs(), r.denom()),
            Expr::Num(r) => write!(f, "({} / {})", r.numer(), r.denom()),
            Expr::Bool(b) => write!(f, "{b}"),
            Expr::Var(i) => f.write_str(&self.vars[*i].name),
            Expr::Neg(e) => write!(f, "(-{})", sub(e)),
            Expr::Not(e) => write!(f, "!{}", sub(e)),
            Expr::Iverson(e) => write!(f, "[{}]", sub(e)),
            Expr::Bin(op, l, r) => write!(f, "({} {} {})", sub(l), op.symbol(), sub(r)),
        }
    }
}

struct StmtDisplay<'a> {
    vars: &'a [VarDecl],
    stmt: &'a Stmt,
}

impl fmt::Display for StmtDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sub = |s| StmtDisplay { vars: self.vars, stmt: s };
        match self.stmt {
            Stmt::Skip => f.write_str("skip"),
            Stmt::Abort => f.write_str("abort"),
            Stmt::Assign(v, e) => write!(
                f,
                "{} := {}",
                self.vars[*v].name,
                ExprDisplay { vars: self.vars, expr: e }
            ),
            Stmt::Seq(a, b) if matches!(**b, Stmt::Seq(..)) => write!(f, "{}; {{ {} }}", sub(a), sub(b)),
            Stmt::Seq(a, b) => write!(f, "{}; {}", sub(a), sub(b)),
            Stmt::If(c, a, b) => write!(
                f,
                "if {} {{ {} }} else {{ {} }}",
                ExprDisplay { vars: self.vars, expr: c },
                sub(a),
                sub(b)
            ),
            Stmt::Choose(a, b) => write!(f, "choose {{ {} }} [] {{ {} }}", sub(a), sub(b)),
            Stmt::Prob(r, a, b) => write!(f, "prob {} {{ {} }} {{ {} }}", fraction_string(r), sub(a), sub(b)),
        }
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let decls: Vec<String> = self
            .vars
            .iter()
            .map(|v| format!("{} in {}..{}", v.name, v.lo, v.hi))
            .collect();
        writeln!(f, "vars {};", decls.join(", "))?;
        writeln!(
            f,
            "body: {};",
            StmtDisplay {
                vars: &self.vars,
                stmt: &self.body
            }
        )?;
        if let Some(post) = &self.post {
            writeln!(
                f,
                "post: {};",
                ExprDisplay {
                    vars: &self.vars,
                    expr: post
                }
            )?;
        }
        Ok(())
    }
}

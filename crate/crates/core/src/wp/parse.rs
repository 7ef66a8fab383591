//! Lexer and recursive-descent parser for guarded-command programs.
//!
//! ```text
//! program := "vars" decl ("," decl)* ";" "body:" stmt ";"? ("post:" expr ";"?)?
//! decl    := ident "in" int ".." int
//! stmt    := atom (";" atom)*
//! atom    := "skip" | "abort" | ident ":=" expr
//!          | "if" expr "{" stmt "}" ("else" "{" stmt "}")?
//!          | "choose" "{" stmt "}" "[]" "{" stmt "}"
//!          | "prob" rational "{" stmt "}" "{" stmt "}"
//!          | "{" stmt "}"
//! expr    := or ; or := and ("||" and)* ; and := not ("&&" not)*
//! not     := "!" not | cmp ; cmp := sum (("=="|"!="|"<"|"<="|">"|">=") sum)?
//! sum     := term (("+"|"-") term)* ; term := unary (("*"|"/"|"%") unary)*
//! unary   := "-" unary | int | "true" | "false" | ident | "(" expr ")" | "[" expr "]"
//! ```
//!
//! Line comments start with `//` or `#`.

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::effect::Rat;
use crate::error::{Error, Result};

use super::syntax::{BinOp, Expr, Program, Stmt, Ty, VarDecl};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Sym(&'static str),
    Eof,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

const SYMBOLS: [&str; 26] = [
    ":=", "..", "==", "!=", "<=", ">=", "&&", "||", "[]", ";", ",", ":", "+", "-", "*", "/", "%", "<", ">", "!", "(",
    ")", "[", "]", "{", "}",
];

fn lex(src: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let mut rest = src;
    while let Some(c) = rest.chars().next() {
        let (l, col) = (line, column);
        let advance = |n: usize, rest: &mut &str, column: &mut usize| {
            *column += rest[..n].chars().count();
            *rest = &rest[n..];
        };
        if c == '\n' {
            line += 1;
            column = 1;
            rest = &rest[1..];
        } else if c.is_whitespace() {
            advance(c.len_utf8(), &mut rest, &mut column);
        } else if rest.starts_with("//") || c == '#' {
            let n = rest.find('\n').unwrap_or(rest.len());
            advance(n, &mut rest, &mut column);
        } else if c.is_ascii_digit() {
            let n = rest.find(|ch: char| !ch.is_ascii_digit()).unwrap_or(rest.len());
            let value = rest[..n].parse().expect("digits");
            out.push(Token {
                tok: Tok::Int(value),
                line: l,
                column: col,
            });
            advance(n, &mut rest, &mut column);
        } else if c.is_alphabetic() || c == '_' {
            let n = rest
                .find(|ch: char| !(ch.is_alphanumeric() || ch == '_'))
                .unwrap_or(rest.len());
            out.push(Token {
                tok: Tok::Ident(rest[..n].to_string()),
                line: l,
                column: col,
            });
            advance(n, &mut rest, &mut column);
        } else if let Some(sym) = SYMBOLS.iter().find(|s| rest.starts_with(**s)) {
            out.push(Token {
                tok: Tok::Sym(sym),
                line: l,
                column: col,
            });
            advance(sym.len(), &mut rest, &mut column);
        } else {
            return Err(Error::Syntax {
                line: l,
                column: col,
                message: format!("unexpected character `{c}`"),
            });
        }
    }
    out.push(Token {
        tok: Tok::Eof,
        line,
        column,
    });
    Ok(out)
}

const KEYWORDS: [&str; 12] = [
    "vars", "in", "body", "post", "skip", "abort", "if", "else", "choose", "prob", "true", "false",
];

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    vars: &'a mut Vec<VarDecl>,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn here(&self) -> (usize, usize) {
        let t = &self.toks[self.pos];
        (t.line, t.column)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        let (line, column) = self.here();
        Err(Error::Syntax {
            line,
            column,
            message: message.into(),
        })
    }

    fn describe(&self) -> String {
        match self.peek() {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(n) => format!("`{n}`"),
            Tok::Sym(s) => format!("`{s}`"),
            Tok::Eof => "end of input".into(),
        }
    }

    fn at_sym(&self, s: &str) -> bool {
        matches!(self.peek(), Tok::Sym(t) if *t == s)
    }

    fn at_kw(&self, k: &str) -> bool {
        matches!(self.peek(), Tok::Ident(t) if t == k)
    }

    fn eat_sym(&mut self, s: &str) -> bool {
        let hit = self.at_sym(s);
        if hit {
            self.pos += 1;
        }
        hit
    }

    fn eat_kw(&mut self, k: &str) -> bool {
        let hit = self.at_kw(k);
        if hit {
            self.pos += 1;
        }
        hit
    }

    fn expect_sym(&mut self, s: &str) -> Result<()> {
        if self.eat_sym(s) {
            Ok(())
        } else {
            self.error(format!("expected `{s}`, found {}", self.describe()))
        }
    }

    fn expect_kw(&mut self, k: &str) -> Result<()> {
        if self.eat_kw(k) {
            Ok(())
        } else {
            self.error(format!("expected `{k}`, found {}", self.describe()))
        }
    }

    fn ident(&mut self) -> Result<String> {
        match self.peek().clone() {
            Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()) => {
                self.pos += 1;
                Ok(s)
            }
            _ => self.error(format!("expected an identifier, found {}", self.describe())),
        }
    }

    fn int(&mut self) -> Result<BigInt> {
        let negative = self.eat_sym("-");
        match self.peek().clone() {
            Tok::Int(n) => {
                self.pos += 1;
                Ok(if negative { -n } else { n })
            }
            _ => self.error(format!("expected an integer, found {}", self.describe())),
        }
    }

    fn small_int(&mut self) -> Result<i64> {
        let n = self.int()?;
        match i64::try_from(&n) {
            Ok(v) if v.abs() < 1 << 40 => Ok(v),
            _ => self.error(format!("integer {n} is out of range")),
        }
    }

    fn var(&mut self) -> Result<usize> {
        let name = self.ident()?;
        self.vars
            .iter()
            .position(|v| v.name == name)
            .ok_or(Error::UndeclaredVariable(name))
    }

    fn decls(&mut self) -> Result<()> {
        self.expect_kw("vars")?;
        loop {
            let (line, column) = self.here();
            let name = self.ident()?;
            if self.vars.iter().any(|v| v.name == name) {
                return Err(Error::Syntax {
                    line,
                    column,
                    message: format!("variable `{name}` declared twice"),
                });
            }
            self.expect_kw("in")?;
            let lo = self.small_int()?;
            self.expect_sym("..")?;
            let hi = self.small_int()?;
            if lo > hi {
                return Err(Error::Range(format!("empty range {lo}..{hi} for `{name}`")));
            }
            self.vars.push(VarDecl { name, lo, hi });
            if !self.eat_sym(",") {
                break;
            }
        }
        self.expect_sym(";")
    }

    fn block(&mut self) -> Result<Stmt> {
        self.expect_sym("{")?;
        let s = self.stmt()?;
        self.eat_sym(";");
        self.expect_sym("}")?;
        Ok(s)
    }

    fn stmt(&mut self) -> Result<Stmt> {
        let mut s = self.atom()?;
        while self.at_sym(";") {
            let next = &self.toks[self.pos + 1].tok;
            if matches!(next, Tok::Eof | Tok::Sym("}")) || matches!(next, Tok::Ident(k) if k == "post") {
                break;
            }
            self.pos += 1;
            s = Stmt::seq(s, self.atom()?);
        }
        Ok(s)
    }

    fn atom(&mut self) -> Result<Stmt> {
        if self.eat_kw("skip") {
            Ok(Stmt::Skip)
        } else if self.eat_kw("abort") {
            Ok(Stmt::Abort)
        } else if self.eat_kw("if") {
            let c = self.typed_expr(Ty::Bool)?;
            let a = self.block()?;
            let b = if self.eat_kw("else") { self.block()? } else { Stmt::Skip };
            Ok(Stmt::If(c, Box::new(a), Box::new(b)))
        } else if self.eat_kw("choose") {
            let a = self.block()?;
            self.expect_sym("[]")?;
            let b = self.block()?;
            Ok(Stmt::Choose(Box::new(a), Box::new(b)))
        } else if self.eat_kw("prob") {
            let r = self.rational()?;
            let a = self.block()?;
            let b = self.block()?;
            Ok(Stmt::Prob(r, Box::new(a), Box::new(b)))
        } else if self.at_sym("{") {
            self.block()
        } else if matches!(self.peek(), Tok::Ident(_)) {
            let v = self.var()?;
            self.expect_sym(":=")?;
            Ok(Stmt::Assign(v, self.typed_expr(Ty::Num)?))
        } else {
            self.error(format!("expected a statement, found {}", self.describe()))
        }
    }

    fn rational(&mut self) -> Result<Rat> {
        let num = self.int()?;
        let den = if self.eat_sym("/") { self.int()? } else { BigInt::one() };
        if den == BigInt::from(0) {
            return self.error("zero denominator");
        }
        let r = Rat::new(num, den);
        if r.is_negative() || r > Rat::one() {
            return Err(Error::Range(format!("probability {r} outside [0,1]")));
        }
        Ok(r)
    }

    fn typed_expr(&mut self, want: Ty) -> Result<Expr> {
        let (line, column) = self.here();
        let e = self.expr()?;
        if e.ty() != want {
            return Err(Error::Syntax {
                line,
                column,
                message: format!("expected a {want} expression, found a {}", e.ty()),
            });
        }
        Ok(e)
    }

    fn expr(&mut self) -> Result<Expr> {
        self.binary_level(0)
    }

    fn binary_level(&mut self, level: usize) -> Result<Expr> {
        const LEVELS: [&[(&str, BinOp)]; 5] = [
            &[("||", BinOp::Or)],
            &[("&&", BinOp::And)],
            &[
                ("==", BinOp::Eq),
                ("!=", BinOp::Ne),
                ("<=", BinOp::Le),
                (">=", BinOp::Ge),
                ("<", BinOp::Lt),
                (">", BinOp::Gt),
            ],
            &[("+", BinOp::Add), ("-", BinOp::Sub)],
            &[("*", BinOp::Mul), ("/", BinOp::Div), ("%", BinOp::Mod)],
        ];
        if level == LEVELS.len() {
            return self.unary();
        }
        if level == 2 && self.at_sym("!") {
            let (line, column) = self.here();
            self.pos += 1;
            let e = self.binary_level(2)?;
            return self.check(line, column, Ty::Bool, e).map(|e| Expr::Not(Box::new(e)));
        }
        let mut lhs = self.binary_level(level + 1)?;
        loop {
            let Some(&(_, op)) = LEVELS[level].iter().find(|(s, _)| self.at_sym(s)) else {
                return Ok(lhs);
            };
            let (line, column) = self.here();
            self.pos += 1;
            let rhs = self.binary_level(level + 1)?;
            let (operand, _) = op.signature();
            let lhs_checked = self.check(line, column, operand, lhs)?;
            let rhs_checked = self.check(line, column, operand, rhs)?;
            lhs = Expr::bin(op, lhs_checked, rhs_checked);
            if level == 2 {
                return Ok(lhs);
            }
        }
    }

    fn check(&self, line: usize, column: usize, want: Ty, e: Expr) -> Result<Expr> {
        if e.ty() == want {
            Ok(e)
        } else {
            Err(Error::Syntax {
                line,
                column,
                message: format!("operand must be a {want}, found a {}", e.ty()),
            })
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        let (line, column) = self.here();
        if self.eat_sym("-") {
            let e = self.unary()?;
            return match self.check(line, column, Ty::Num, e)? {
                Expr::Num(r) => Ok(Expr::Num(-r)),
                e => Ok(Expr::Neg(Box::new(e))),
            };
        }
        if self.eat_sym("(") {
            let e = self.expr()?;
            self.expect_sym(")")?;
            return Ok(e);
        }
        if self.eat_sym("[") {
            let e = self.expr()?;
            self.expect_sym("]")?;
            return self.check(line, column, Ty::Bool, e).map(|e| Expr::Iverson(Box::new(e)));
        }
        if self.eat_kw("true") {
            return Ok(Expr::Bool(true));
        }
        if self.eat_kw("false") {
            return Ok(Expr::Bool(false));
        }
        match self.peek().clone() {
            Tok::Int(n) => {
                self.pos += 1;
                Ok(Expr::Num(Rat::from_integer(n)))
            }
            Tok::Ident(_) => Ok(Expr::Var(self.var()?)),
            _ => self.error(format!("expected an expression, found {}", self.describe())),
        }
    }

    fn finish(&mut self) -> Result<()> {
        self.eat_sym(";");
        match self.peek() {
            Tok::Eof => Ok(()),
            _ => self.error(format!("unexpected {}", self.describe())),
        }
    }
}

pub fn parse(src: &str) -> Result<Program> {
    let mut vars = Vec::new();
    let mut p = Parser {
        toks: lex(src)?,
        pos: 0,
        vars: &mut vars,
    };
    p.decls()?;
    p.expect_kw("body")?;
    p.expect_sym(":")?;
    let body = p.stmt()?;
    p.eat_sym(";");
    let post = if p.eat_kw("post") {
        p.expect_sym(":")?;
        Some(p.expr()?)
    } else {
        None
    };
    p.finish()?;
    Ok(Program { vars, body, post })
}

/// Parses a standalone expression over the variables of `program`.
pub fn parse_expr(program: &Program, src: &str) -> Result<Expr> {
    let mut vars = program.vars.clone();
    let mut p = Parser {
        toks: lex(src)?,
        pos: 0,
        vars: &mut vars,
    };
    let e = p.expr()?;
    p.finish()?;
    Ok(e)
}

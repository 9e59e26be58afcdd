//! Small arithmetic expression language for free response functions.
//!
//! Grammar, loosest binding first:
//!
//! ```text
//! sum     := product (("+" | "-") product)*
//! product := unary (("*" | "/") unary)*
//! unary   := "-" unary | power
//! power   := atom ("^" integer)*      right associative
//! atom    := number | ident | ident "(" sum ")" | "(" sum ")"
//! ```
//!
//! Exponents are non-negative integer literals; `x^2^3` folds to `x^8`.
//! The callable functions are `exp`, `log` and `sqrt`.

mod diff;
mod parser;
mod print;

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

pub use diff::differentiate;
pub use parser::parse;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExprError {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown function `{0}`")]
    UnknownFunction(String),
    #[error("unbound variable `{0}`")]
    Unbound(String),
    #[error("domain error: {0}")]
    Domain(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Func {
    Exp,
    Log,
    Sqrt,
}

impl Func {
    pub fn name(&self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Sqrt => "sqrt",
        }
    }

    pub fn from_name(name: &str) -> Option<Func> {
        match name {
            "exp" => Some(Func::Exp),
            "log" => Some(Func::Log),
            "sqrt" => Some(Func::Sqrt),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(f64),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Call(Func, Box<Expr>),
}

fn domain(what: &str) -> ExprError {
    ExprError::Domain(what.to_string())
}

fn finite(x: f64) -> Result<f64, ExprError> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(domain("non-finite result"))
    }
}

impl Expr {
    pub fn num(x: f64) -> Expr {
        Expr::Num(x)
    }

    pub fn var(name: impl Into<String>) -> Expr {
        Expr::Var(name.into())
    }

    /// Evaluates with variables resolved by `lookup`.
    pub fn eval_with<F>(&self, lookup: &F) -> Result<f64, ExprError>
    where
        F: Fn(&str) -> Option<f64>,
    {
        let v = match self {
            Expr::Num(x) => *x,
            Expr::Var(name) => lookup(name).ok_or_else(|| ExprError::Unbound(name.clone()))?,
            Expr::Neg(a) => -a.eval_with(lookup)?,
            Expr::Add(a, b) => a.eval_with(lookup)? + b.eval_with(lookup)?,
            Expr::Sub(a, b) => a.eval_with(lookup)? - b.eval_with(lookup)?,
            Expr::Mul(a, b) => a.eval_with(lookup)? * b.eval_with(lookup)?,
            Expr::Div(a, b) => {
                let num = a.eval_with(lookup)?;
                let den = b.eval_with(lookup)?;
                if den == 0.0 {
                    return Err(domain("division by zero"));
                }
                num / den
            }
            Expr::Pow(a, n) => a.eval_with(lookup)?.powi(*n as i32),
            Expr::Call(f, a) => {
                let x = a.eval_with(lookup)?;
                match f {
                    Func::Exp => x.exp(),
                    Func::Log if x <= 0.0 => return Err(domain("log of non-positive value")),
                    Func::Log => x.ln(),
                    Func::Sqrt if x <= 0.0 => return Err(domain("sqrt of non-positive value")),
                    Func::Sqrt => x.sqrt(),
                }
            }
        };
        finite(v)
    }

    /// Replaces variables by the expressions `subst` returns for them.
    pub fn substitute<F>(&self, subst: &F) -> Expr
    where
        F: Fn(&str) -> Option<Expr>,
    {
        let b = |e: &Expr| Box::new(e.substitute(subst));
        match self {
            Expr::Num(x) => Expr::Num(*x),
            Expr::Var(name) => subst(name).unwrap_or_else(|| self.clone()),
            Expr::Neg(a) => Expr::Neg(b(a)),
            Expr::Add(x, y) => Expr::Add(b(x), b(y)),
            Expr::Sub(x, y) => Expr::Sub(b(x), b(y)),
            Expr::Mul(x, y) => Expr::Mul(b(x), b(y)),
            Expr::Div(x, y) => Expr::Div(b(x), b(y)),
            Expr::Pow(x, n) => Expr::Pow(b(x), *n),
            Expr::Call(f, x) => Expr::Call(*f, b(x)),
        }
    }

    /// Variable names in sorted order.
    pub fn variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Expr::Num(_) => {}
            Expr::Var(name) => {
                out.insert(name.clone());
            }
            Expr::Neg(a) | Expr::Pow(a, _) | Expr::Call(_, a) => a.collect_vars(out),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Expr::Num(x) if *x == 0.0)
    }
}

/// Evaluates `expr` with variables looked up in `vars`.
pub fn evaluate(expr: &Expr, vars: &HashMap<String, f64>) -> Result<f64, ExprError> {
    expr.eval_with(&|name: &str| vars.get(name).copied())
}

/// Fully parenthesized rendering that parses back to the same tree.
pub fn print(expr: &Expr) -> String {
    expr.to_string()
}

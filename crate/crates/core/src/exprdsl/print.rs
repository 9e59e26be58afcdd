use std::fmt;

use super::Expr;

fn fmt_num(x: f64) -> String {
    let a = x.abs();
    if a != 0.0 && !(1e-5..1e16).contains(&a) {
        format!("{a:e}")
    } else {
        format!("{a}")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(x) if x.is_sign_negative() && *x != 0.0 => write!(f, "(-{})", fmt_num(*x)),
            Expr::Num(x) => f.write_str(&fmt_num(*x)),
            Expr::Var(name) => f.write_str(name),
            Expr::Neg(a) => write!(f, "(-{a})"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "({a} * {b})"),
            Expr::Div(a, b) => write!(f, "({a} / {b})"),
            Expr::Pow(a, n) => write!(f, "({a}^{n})"),
            Expr::Call(func, a) => write!(f, "{}({a})", func.name()),
        }
    }
}

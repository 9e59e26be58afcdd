use super::{Expr, Func};

fn is_one(e: &Expr) -> bool {
    matches!(e, Expr::Num(x) if *x == 1.0)
}

fn add(a: Expr, b: Expr) -> Expr {
    if a.is_zero() {
        b
    } else if b.is_zero() {
        a
    } else {
        Expr::Add(Box::new(a), Box::new(b))
    }
}

fn sub(a: Expr, b: Expr) -> Expr {
    if b.is_zero() {
        a
    } else if a.is_zero() {
        neg(b)
    } else {
        Expr::Sub(Box::new(a), Box::new(b))
    }
}

fn neg(a: Expr) -> Expr {
    match a {
        Expr::Num(0.0) => Expr::Num(0.0),
        Expr::Neg(inner) => *inner,
        other => Expr::Neg(Box::new(other)),
    }
}

fn mul(a: Expr, b: Expr) -> Expr {
    if a.is_zero() || b.is_zero() {
        Expr::Num(0.0)
    } else if is_one(&a) {
        b
    } else if is_one(&b) {
        a
    } else {
        Expr::Mul(Box::new(a), Box::new(b))
    }
}

fn div(a: Expr, b: Expr) -> Expr {
    if is_one(&b) {
        a
    } else {
        Expr::Div(Box::new(a), Box::new(b))
    }
}

fn pow(a: Expr, n: u32) -> Expr {
    match n {
        0 => Expr::Num(1.0),
        1 => a,
        _ => Expr::Pow(Box::new(a), n),
    }
}

/// Symbolic derivative with respect to `var`, lightly simplified.
pub fn differentiate(e: &Expr, var: &str) -> Expr {
    let d = |x: &Expr| differentiate(x, var);
    match e {
        Expr::Num(_) => Expr::Num(0.0),
        Expr::Var(name) => Expr::Num(if name == var { 1.0 } else { 0.0 }),
        Expr::Neg(a) => neg(d(a)),
        Expr::Add(a, b) => add(d(a), d(b)),
        Expr::Sub(a, b) => sub(d(a), d(b)),
        Expr::Mul(a, b) => add(mul(d(a), (**b).clone()), mul((**a).clone(), d(b))),
        Expr::Div(a, b) => {
            let da = d(a);
            let db = d(b);
            if db.is_zero() {
                return div(da, (**b).clone());
            }
            div(
                sub(mul(da, (**b).clone()), mul((**a).clone(), db)),
                pow((**b).clone(), 2),
            )
        }
        Expr::Pow(a, n) => {
            if *n == 0 {
                return Expr::Num(0.0);
            }
            mul(mul(Expr::Num(*n as f64), pow((**a).clone(), n - 1)), d(a))
        }
        Expr::Call(f, a) => {
            let da = d(a);
            if da.is_zero() {
                return Expr::Num(0.0);
            }
            match f {
                Func::Exp => mul(e.clone(), da),
                Func::Log => div(da, (**a).clone()),
                Func::Sqrt => div(da, mul(Expr::Num(2.0), e.clone())),
            }
        }
    }
}

#![allow(dead_code)]

use rand::Rng;
use tensorrep::exprdsl::{Expr, Func};

/// `c0 + Σ c_a I_a + Σ_{a≤b} c_ab I_a I_b` with coefficients in `[-1, 1]`.
pub fn random_poly<R: Rng>(rng: &mut R, n_inv: usize) -> String {
    let mut c = || format!("{:.6}", rng.gen_range(-1.0..1.0));
    let mut terms = vec![c()];
    for a in 1..=n_inv {
        terms.push(format!("{}*I{a}", c()));
    }
    for a in 1..=n_inv {
        for b in a..=n_inv {
            terms.push(format!("{}*I{a}*I{b}", c()));
        }
    }
    terms.join(" + ").replace("+ -", "- ")
}

pub fn random_polys<R: Rng>(rng: &mut R, n_inv: usize, count: usize) -> Vec<String> {
    (0..count).map(|_| random_poly(rng, n_inv)).collect()
}

pub const VARS: [&str; 3] = ["x", "y", "z"];

/// Random expression tree of depth at most `depth`.
pub fn random_expr<R: Rng>(rng: &mut R, depth: usize) -> Expr {
    if depth == 0 || rng.gen_bool(0.25) {
        return if rng.gen_bool(0.5) {
            Expr::var(VARS[rng.gen_range(0..3)])
        } else {
            let x: f64 = rng.gen_range(-3.0..3.0);
            Expr::Num((x * 100.0).round() / 100.0)
        };
    }
    let sub = |rng: &mut R| Box::new(random_expr(rng, depth - 1));
    match rng.gen_range(0..9) {
        0 => Expr::Neg(sub(rng)),
        1 => Expr::Add(sub(rng), sub(rng)),
        2 => Expr::Sub(sub(rng), sub(rng)),
        3 => Expr::Mul(sub(rng), sub(rng)),
        4 => Expr::Div(sub(rng), sub(rng)),
        5 => Expr::Pow(sub(rng), rng.gen_range(0..4)),
        6 => Expr::Call(Func::Exp, sub(rng)),
        7 => Expr::Call(Func::Log, sub(rng)),
        _ => Expr::Call(Func::Sqrt, sub(rng)),
    }
}

use std::fmt::{self, Write};

use num_traits::{One, Signed, Zero};

use super::poly::{Mono, Poly, Q, Q64};
use super::Expr;
use crate::chart::Chart;

pub(super) fn write_expr(f: &mut fmt::Formatter<'_>, e: &Expr) -> fmt::Result {
    let chart = e.chart();
    let num = poly_string(&e.num, chart);
    if e.den.is_one() {
        return f.write_str(&num);
    }
    let den = poly_string(&e.den, chart);
    if e.num.len() > 1 {
        write!(f, "({num})")?;
    } else {
        f.write_str(&num)?;
    }
    if e.den.len() > 1 {
        write!(f, "/({den})")
    } else {
        write!(f, "/{den}")
    }
}

fn poly_string(p: &Poly, chart: &Chart) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.terms.iter().rev().enumerate() {
        let neg = c.is_negative();
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&term_string(m, &c.abs(), chart));
    }
    out
}

fn q_string(q: &Q) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn q64_string(q: &Q64) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn term_string(m: &Mono, c: &Q, chart: &Chart) -> String {
    let mut factors: Vec<String> = Vec::new();
    if !c.is_one() || m.is_one() {
        factors.push(q_string(c));
    }
    for (i, &p) in m.pows.iter().enumerate() {
        match p {
            0 => {}
            1 => factors.push(chart.coord(i).to_string()),
            _ => factors.push(format!("{}^{}", chart.coord(i), p)),
        }
    }
    if m.has_exp() {
        factors.push(format!("exp({})", exp_arg_string(m, chart)));
    }
    factors.join("*")
}

fn exp_arg_string(m: &Mono, chart: &Chart) -> String {
    let mut out = String::new();
    let mut first = true;
    let mut push = |out: &mut String, q: &Q64, sym: Option<&str>| {
        let neg = *q < Q64::zero();
        match (first, neg) {
            (true, true) => out.push('-'),
            (true, false) => {}
            (false, true) => out.push_str(" - "),
            (false, false) => out.push_str(" + "),
        }
        first = false;
        let a = q.abs();
        match sym {
            Some(s) if a.is_one() => out.push_str(s),
            Some(s) => {
                let _ = write!(out, "{}*{}", q64_string(&a), s);
            }
            None => out.push_str(&q64_string(&a)),
        }
    };
    for (i, l) in m.lin.iter().enumerate() {
        if !l.is_zero() {
            push(&mut out, l, Some(chart.coord(i)));
        }
    }
    if !m.cst.is_zero() {
        push(&mut out, &m.cst, None);
    }
    out
}

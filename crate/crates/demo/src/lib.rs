//! Browser demo. Every export takes plain numbers or text and returns a JSON
//! string, so the same functions run natively under `cargo test`.

use coincidence::iterate::{verify_cauchy_certificate, IterateError};
use coincidence::pair::RealAlpha;
use coincidence::scenario::run_scenario_text;
use coincidence::{
    jungck_iterate, Alpha, ComparisonFunction, IntervalSpace, IterateOptions, MappingPair, MetricSpace, Outcome,
    RealMap,
};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

const MAX_GRID: u32 = 400;

type RealPair = MappingPair<IntervalSpace, RealMap>;

fn example_pair() -> RealPair {
    let space = IntervalSpace::new(0.0, f64::INFINITY).expect("valid interval");
    let f = RealMap::Piecewise {
        breaks: vec![2.0],
        pieces: vec![RealMap::Scale(1.0 / 3.0), RealMap::Affine { a: 2.0, b: -1.5 }],
    };
    MappingPair::interval(space, f, RealMap::Scale(0.5), RealMap::Scale(2.0))
}

fn example_alpha() -> RealAlpha {
    RealAlpha::Box { lo: 0.0, hi: 1.0, inside: 1.0, outside: 0.0 }
}

fn error(message: impl ToString) -> String {
    json!({ "error": message.to_string() }).to_string()
}

fn finite_or_null(v: f64) -> Value {
    if v.is_finite() {
        json!(v)
    } else {
        Value::Null
    }
}

/// Runs scenario text and returns `{exit, header, columns, rows, text}`.
#[wasm_bindgen]
pub fn run_scenario(text: &str, seed: Option<u64>) -> String {
    let (code, report) = run_scenario_text(text, seed);
    json!({
        "exit": code.code(),
        "header": report.header,
        "columns": report.columns,
        "rows": report.rows,
        "text": report.render(),
    })
    .to_string()
}

/// Jungck trace of the piecewise pair `f(x) = x/3` on `[0, 2]`,
/// `f(x) = 2x - 3/2` above, `g(x) = x/2`, started at `x0`, with
/// `psi(t) = lambda t` for the certificate.
#[wasm_bindgen]
pub fn example_trace(x0: f64, lambda: f64, tol: f64) -> String {
    let psi = match ComparisonFunction::linear(lambda) {
        Ok(p) => p,
        Err(e) => return error(e),
    };
    let pair = example_pair();
    let opts = IterateOptions { tol, max_iter: 500, ..Default::default() };
    let trace = match jungck_iterate(&pair, &example_alpha(), &psi, x0, &opts) {
        Ok(t) => t,
        Err(IterateError::InitialPointRejected) => {
            return error(format!("x0 = {x0} is rejected: alpha(g x0, f x0) < 1"))
        }
        Err(e) => return error(e),
    };
    let certificate = match verify_cauchy_certificate(pair.space(), &trace, &psi) {
        Ok(c) => c.passed(),
        Err(e) => return error(e),
    };
    let (outcome, z) = match trace.outcome {
        Outcome::CoincidenceFound(z) => ("CoincidenceFound", Some(z)),
        Outcome::MaxIterations => ("MaxIterations", None),
        Outcome::PreimageFailure => ("PreimageFailure", None),
    };
    let rows: Vec<Value> = trace
        .rows()
        .map(|r| {
            json!({
                "n": r.n,
                "x": r.x,
                "gx": r.gx,
                "fx": r.fx,
                "step": r.step,
                "bound": r.bound.map(finite_or_null),
            })
        })
        .collect();
    json!({
        "outcome": outcome,
        "z": z,
        "steps": trace.steps(),
        "certificate": certificate,
        "rows": rows,
    })
    .to_string()
}

/// Slack `psi(M(x, y)) - alpha(gx, gy) d(fx, fy)` of the contractive
/// inequality on an `n` by `n` grid over `[0, hi]^2`. Negative cells are
/// violations. Rows are indexed by `y` and columns by `x`.
#[wasm_bindgen]
pub fn slack_grid(hi: f64, n: u32, lambda: f64) -> String {
    if !(hi > 0.0 && hi.is_finite()) {
        return error("hi must be positive and finite");
    }
    if !(2..=MAX_GRID).contains(&n) {
        return error(format!("n must be between 2 and {MAX_GRID}"));
    }
    let psi = match ComparisonFunction::linear(lambda) {
        Ok(p) => p,
        Err(e) => return error(e),
    };
    let pair = example_pair();
    let alpha = example_alpha();
    let space = pair.space();
    let coord = |i: u32| hi * f64::from(i) / f64::from(n - 1);
    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    let mut violations = 0usize;
    let cells: Vec<Vec<f64>> = (0..n)
        .map(|j| {
            (0..n)
                .map(|i| {
                    let (x, y) = (coord(i), coord(j));
                    let m = pair.compute_m(x, y).expect("grid inside the space");
                    let a = alpha.alpha(pair.gx(x), pair.gx(y));
                    let lhs = if a == 0.0 { 0.0 } else { a * space.metric(pair.fx(x), pair.fx(y)) };
                    let s = psi.eval(m) - lhs;
                    min = min.min(s);
                    max = max.max(s);
                    if s < -1e-12 {
                        violations += 1;
                    }
                    s
                })
                .collect()
        })
        .collect();
    json!({ "n": n, "hi": hi, "min": min, "max": max, "violations": violations, "cells": cells }).to_string()
}

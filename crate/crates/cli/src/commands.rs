use dyckhike::boson::{lambda_mu_polynomial, lambda_mu_table, BosonExpr, FockState};
use dyckhike::dyck::{count_paths as count, enumerate_words, highest_word, lowest_word, PathSpec};
use dyckhike::engine::{DyckSumEngine, Ladder, SignMode};
use dyckhike::evolution::{build_series, evaluate_at, vacuum_series};
use dyckhike::numeric::{ratio_to_f64, rational_from_f64};
use dyckhike::oracle::{oracle_ladder_decomposition, oracle_power, TruncationPolicy};
use dyckhike::pade::{build_even_pade, build_pade, eval_pade, order_condition_holds, PadeApproximant};
use dyckhike::parse::{parse_expr, parse_vacuum};
use dyckhike::polynomial::Poly;
use num::{BigRational, Zero};
use serde_json::{json, Value};

use crate::error::CliError;
use crate::output::{exact, exact_rational, finite_or_null, float_cell, Report};
use crate::{OperatorArgs, PointArgs, Sign, SignChoice, Variable};

impl From<Sign> for SignMode {
    fn from(s: Sign) -> Self {
        match s {
            Sign::Plus => SignMode::Plus,
            Sign::Minus => SignMode::Minus,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Range(pub Vec<f64>);

/// `"start:stop:count"` into evenly spaced points.
pub fn parse_range(text: &str) -> Result<Range, String> {
    let parts: Vec<&str> = text.split(':').collect();
    let [a, b, n] = parts.as_slice() else {
        return Err("expected start:stop:count".into());
    };
    let a: f64 = a.trim().parse().map_err(|e| format!("start: {e}"))?;
    let b: f64 = b.trim().parse().map_err(|e| format!("stop: {e}"))?;
    let n: usize = n.trim().parse().map_err(|e| format!("count: {e}"))?;
    match n {
        0 => Err("count must be positive".into()),
        1 => Ok(Range(vec![a])),
        _ => Ok(Range((0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect())),
    }
}

fn operator(op: &OperatorArgs) -> Result<(BosonExpr, FockState), CliError> {
    Ok((parse_expr(&op.expr)?, parse_vacuum(&op.vac)?))
}

fn engine_for(expr: &BosonExpr, vac: &FockState) -> Result<DyckSumEngine, CliError> {
    Ok(DyckSumEngine::new(Ladder::from_operator(expr, vac, 0)?))
}

fn points(p: &PointArgs) -> Result<Vec<f64>, CliError> {
    let mut out = p.r.clone();
    out.extend(p.r_range.iter().flat_map(|r| r.0.iter()));
    if let Some(bad) = out.iter().find(|r| !r.is_finite()) {
        return Err(CliError::Validation(format!("r must be finite, got {bad}")));
    }
    Ok(out)
}

fn rationals(values: &[BigRational]) -> Value {
    Value::Array(values.iter().map(|q| json!(q.to_string())).collect())
}

fn plot_report(command: &'static str, pairs: &[(f64, Option<f64>)]) -> Report {
    let rows = pairs
        .iter()
        .map(|(r, v)| vec![r.to_string(), v.map_or_else(|| "nan".into(), |v| v.to_string())])
        .collect();
    let json_pairs = pairs
        .iter()
        .map(|(r, v)| json!([r, v.map_or(Value::Null, finite_or_null)]))
        .collect();
    let plain = pairs
        .iter()
        .map(|(r, v)| format!("{r} {}", v.map_or_else(|| "nan".into(), |v| v.to_string())))
        .collect::<Vec<_>>()
        .join("\n");
    Report::new(command)
        .field("points", Value::Array(json_pairs))
        .table(&["r", "value"], rows)
        .plain(plain)
}

pub fn count_paths(k: usize, d1: usize, d2: usize) -> Result<Report, CliError> {
    let n = count(PathSpec::new(k, d1, d2));
    Ok(Report::new("count-paths")
        .field("k", json!(k))
        .field("d1", json!(d1))
        .field("d2", json!(d2))
        .field("count", json!(n.to_string()))
        .table(&["k", "d1", "d2", "count"], vec![vec![k.to_string(), d1.to_string(), d2.to_string(), n.to_string()]])
        .plain(n.to_string()))
}

pub fn enumerate_paths(k: usize, d1: usize, d2: usize, limit: usize) -> Result<Report, CliError> {
    let spec = PathSpec::new(k, d1, d2);
    let total = count(spec);
    let words: Vec<_> = enumerate_words(spec).take(limit).collect();
    let truncated = total > words.len().into();
    let rows = words
        .iter()
        .enumerate()
        .map(|(i, w)| {
            let heights = w.heights().iter().map(i64::to_string).collect::<Vec<_>>().join(" ");
            vec![i.to_string(), w.written(), heights]
        })
        .collect();
    let (hi, lo) = match (highest_word(spec), lowest_word(spec)) {
        (Ok(h), Ok(l)) => (json!(h.written()), json!(l.written())),
        _ => (Value::Null, Value::Null),
    };
    Ok(Report::new("enumerate-paths")
        .field("k", json!(k))
        .field("d1", json!(d1))
        .field("d2", json!(d2))
        .field("count", json!(total.to_string()))
        .field("truncated", json!(truncated))
        .field("highest", hi)
        .field("lowest", lo)
        .field("words", Value::Array(words.iter().map(|w| json!(w.written())).collect()))
        .table(&["index", "word", "heights"], rows))
}

pub fn lambda_mu(op: &OperatorArgs, p_max: usize, degree: Option<usize>) -> Result<Report, CliError> {
    let (expr, vac) = operator(op)?;
    let table = lambda_mu_table(&expr, &vac, p_max)?;
    let degree = degree.unwrap_or(expr.order() as usize);
    let (poly, poly_error) = match lambda_mu_polynomial(&table, degree) {
        Ok(lp) => (Some(lp.poly), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let entries: Vec<Value> = table
        .products()
        .iter()
        .enumerate()
        .map(|(i, v)| json!({"p": i + 1, "value": exact_rational(v)}))
        .collect();
    let rows = table
        .products()
        .iter()
        .enumerate()
        .map(|(i, v)| vec![(i + 1).to_string(), v.to_string()])
        .collect();
    Ok(Report::new("lambda-mu")
        .field("expr", json!(expr.to_string()))
        .field("vac", json!(vac.to_string()))
        .field("products", Value::Array(entries))
        .field("terminates_at", json!(table.terminates_at()))
        .field("degree", json!(degree))
        .field("polynomial", poly.as_ref().map_or(Value::Null, |p| rationals(&p.coeffs())))
        .field("polynomial_display", poly.as_ref().map_or(Value::Null, |p| json!(p.to_string())))
        .field("polynomial_error", poly_error.map_or(Value::Null, Value::String))
        .table(&["p", "lambda_mu"], rows))
}

pub fn power(op: &OperatorArgs, k: usize, sign: Sign) -> Result<Report, CliError> {
    let (expr, vac) = operator(op)?;
    let mut engine = engine_for(&expr, &vac)?;
    let result = engine.power_coefficients(k, sign.into())?;
    let levels = result
        .coeffs
        .iter()
        .map(|(d2, c)| json!({"delta2": d2, "value": exact(c)}))
        .collect();
    let rows = result
        .coeffs
        .iter()
        .map(|(d2, c)| vec![d2.to_string(), c.to_string(), float_cell(c.to_f64())])
        .collect();
    Ok(Report::new("power")
        .field("expr", json!(expr.to_string()))
        .field("vac", json!(vac.to_string()))
        .field("k", json!(k))
        .field("sign", json!(SignMode::from(sign).to_string()))
        .field("levels", Value::Array(levels))
        .table(&["delta2", "exact", "float"], rows))
}

pub fn evolve(
    op: &OperatorArgs,
    order: usize,
    r: f64,
    precision: u32,
    only: &[usize],
    sign: Sign,
) -> Result<Report, CliError> {
    if precision < 53 {
        return Err(CliError::Validation(format!("precision must be at least 53 bits, got {precision}")));
    }
    if !r.is_finite() || r < 0.0 {
        return Err(CliError::Validation(format!("r must be finite and non-negative, got {r}")));
    }
    let (expr, vac) = operator(op)?;
    let series = build_series(&expr, &vac, order, sign.into())?;
    let values = evaluate_at(&series, r, precision);
    let norm_sq: f64 = values.amplitudes.values().map(|a| a * a).sum();
    let keep = |d2: &usize| only.is_empty() || only.contains(d2);

    let mut levels = Vec::new();
    let mut rows = Vec::new();
    for (d2, amp) in values.amplitudes.iter().filter(|(d2, _)| keep(d2)) {
        let partials = &values.partial_sums[d2];
        levels.push(json!({
            "delta2": d2,
            "amplitude": finite_or_null(*amp),
            "partial_sums": partials.iter().map(|(kk, v)| json!({"order": kk, "value": finite_or_null(*v)})).collect::<Vec<_>>(),
        }));
        let mut row = vec![d2.to_string(), float_cell(*amp)];
        row.extend(partials.iter().map(|(_, v)| float_cell(*v)));
        rows.push(row);
    }
    let headers: Vec<String> = ["delta2".to_string(), "amplitude".to_string()]
        .into_iter()
        .chain(values.partial_sums.values().next().into_iter().flatten().map(|(kk, _)| format!("partial_K{kk}")))
        .collect();
    let header_refs: Vec<&str> = headers.iter().map(String::as_str).collect();
    Ok(Report::new("evolve")
        .field("expr", json!(expr.to_string()))
        .field("vac", json!(vac.to_string()))
        .field("order", json!(order))
        .field("r", json!(r))
        .field("precision", json!(precision))
        .field("sign", json!(SignMode::from(sign).to_string()))
        .field("norm_squared", finite_or_null(norm_sq))
        .field("levels", Value::Array(levels))
        .table(&header_refs, rows))
}

fn eval_series(taylor: &[BigRational], r: f64) -> f64 {
    let x = rational_from_f64(r).expect("finite r");
    let (n, d) = Poly::from_coeffs(taylor.to_vec()).eval_parts(&x);
    ratio_to_f64(&n, &d)
}

pub fn vev(op: &OperatorArgs, order: usize, pts: &PointArgs, sign: Sign) -> Result<Report, CliError> {
    let rs = points(pts)?;
    let (expr, vac) = operator(op)?;
    let mut engine = engine_for(&expr, &vac)?;
    let taylor = vacuum_series(&mut engine, order, sign.into())?;
    if pts.plot_data {
        let pairs: Vec<_> = rs.iter().map(|&r| (r, Some(eval_series(&taylor, r)))).collect();
        return Ok(plot_report("vev", &pairs));
    }
    let lo = order.saturating_sub(2);
    let mut values = Vec::new();
    let mut rows = Vec::new();
    for &r in &rs {
        let partials: Vec<(usize, f64)> = (lo..=order).map(|kk| (kk, eval_series(&taylor[..=kk], r))).collect();
        let value = partials.last().expect("nonempty").1;
        values.push(json!({
            "r": r,
            "value": finite_or_null(value),
            "partial_sums": partials.iter().map(|(kk, v)| json!({"order": kk, "value": finite_or_null(*v)})).collect::<Vec<_>>(),
        }));
        let mut row = vec![r.to_string(), float_cell(value)];
        row.extend(partials.iter().map(|(_, v)| float_cell(*v)));
        rows.push(row);
    }
    let headers: Vec<String> = ["r".to_string(), "vev".to_string()]
        .into_iter()
        .chain((lo..=order).map(|kk| format!("partial_K{kk}")))
        .collect();
    let header_refs: Vec<&str> = headers.iter().map(String::as_str).collect();
    Ok(Report::new("vev")
        .field("expr", json!(expr.to_string()))
        .field("vac", json!(vac.to_string()))
        .field("order", json!(order))
        .field("sign", json!(SignMode::from(sign).to_string()))
        .field("taylor", rationals(&taylor))
        .field("values", Value::Array(values))
        .table(&header_refs, rows))
}

fn is_even(taylor: &[BigRational]) -> bool {
    taylor.iter().skip(1).step_by(2).all(Zero::is_zero)
}

#[allow(clippy::too_many_arguments)]
pub fn pade(
    op: &OperatorArgs,
    l: usize,
    m: usize,
    variable: Variable,
    pts: &PointArgs,
    coefficients: bool,
    sign: Sign,
) -> Result<Report, CliError> {
    let rs = points(pts)?;
    let (expr, vac) = operator(op)?;
    let mut engine = engine_for(&expr, &vac)?;
    let sign_mode: SignMode = sign.into();
    let n = l + m;
    let use_s = match variable {
        Variable::R => false,
        Variable::S => true,
        Variable::Auto => is_even(&vacuum_series(&mut engine, n, sign_mode)?),
    };
    let taylor = vacuum_series(&mut engine, if use_s { 2 * n } else { n }, sign_mode)?;
    let approx: PadeApproximant = if use_s {
        build_even_pade(&taylor, l, m)?
    } else {
        build_pade(&taylor, l, m)?
    };
    let holds = order_condition_holds(&approx, &taylor);
    if !holds {
        return Err(CliError::Internal(format!("[{l}/{m}] fails its order condition")));
    }

    let evaluated: Vec<(f64, Result<f64, String>)> = rs
        .iter()
        .map(|&r| (r, eval_pade(&approx, r).map_err(|e| e.to_string())))
        .collect();
    if pts.plot_data {
        let pairs: Vec<_> = evaluated.iter().map(|(r, v)| (*r, v.as_ref().ok().copied())).collect();
        return Ok(plot_report("pade", &pairs));
    }
    let values = evaluated
        .iter()
        .map(|(r, v)| match v {
            Ok(x) => json!({"r": r, "value": finite_or_null(*x)}),
            Err(e) => json!({"r": r, "value": Value::Null, "error": e}),
        })
        .collect();
    let rows = evaluated
        .iter()
        .map(|(r, v)| match v {
            Ok(x) => vec![r.to_string(), float_cell(*x)],
            Err(e) => vec![r.to_string(), e.clone()],
        })
        .collect();
    let mut report = Report::new("pade")
        .field("expr", json!(expr.to_string()))
        .field("vac", json!(vac.to_string()))
        .field("l", json!(l))
        .field("m", json!(m))
        .field("sign", json!(sign_mode.to_string()))
        .field("variable", json!(approx.variable.to_string()))
        .field("taylor_terms_used", json!(n + 1))
        .field("order_condition", json!(holds))
        .field("numerator_degree", json!(approx.numerator.degree()))
        .field("denominator_degree", json!(approx.denominator.degree()))
        .field("values", Value::Array(values))
        .table(&["r", "value"], rows);
    if coefficients {
        report = report
            .field("numerator", rationals(&approx.numerator.coeffs()))
            .field("denominator", rationals(&approx.denominator.coeffs()));
    }
    Ok(report)
}

pub fn oracle_check(
    op: &OperatorArgs,
    k_max: usize,
    sign: SignChoice,
    max_quanta: u64,
    max_per_mode: u64,
) -> Result<Report, CliError> {
    let (expr, vac) = operator(op)?;
    let policy = TruncationPolicy::new(max_quanta, max_per_mode)?;
    let mut engine = engine_for(&expr, &vac)?;
    let signs: &[SignMode] = match sign {
        SignChoice::Plus => &[SignMode::Plus],
        SignChoice::Minus => &[SignMode::Minus],
        SignChoice::Both => &[SignMode::Plus, SignMode::Minus],
    };
    let mut checks = Vec::new();
    let mut rows = Vec::new();
    let mut mismatches = 0usize;
    for &s in signs {
        for k in 0..=k_max {
            let fast = engine.power_coefficients(k, s)?;
            let v = oracle_power(&expr, &vac, k, s, &policy)?;
            let slow = oracle_ladder_decomposition(&expr, &vac, &v, k)?;
            let ok = slow == fast.coeffs;
            if !ok {
                mismatches += 1;
            }
            checks.push(json!({
                "sign": s.to_string(),
                "k": k,
                "levels": fast.coeffs.len(),
                "fock_terms": v.len(),
                "match": ok,
            }));
            rows.push(vec![s.to_string(), k.to_string(), fast.coeffs.len().to_string(), v.len().to_string(), ok.to_string()]);
        }
    }
    let mut report = Report::new("oracle-check")
        .field("expr", json!(expr.to_string()))
        .field("vac", json!(vac.to_string()))
        .field("k_max", json!(k_max))
        .field("checks", Value::Array(checks))
        .field("all_match", json!(mismatches == 0))
        .table(&["sign", "k", "levels", "fock_terms", "match"], rows);
    if mismatches > 0 {
        report.exit_code = 5;
    }
    Ok(report)
}

use std::fmt::Write as _;

use desing_core::algebra::field::{parse_rat, primitive_integer_row, Rat};
use desing_core::algebra::poly::Poly;
use desing_core::algebra::roots::RationalRoots;
use desing_core::continuation::{
    denominator_primes, extend as run_extend, extend_via_desing, Direction, Event, SequenceWindow,
};
use desing_core::desing::{desing_both, is_completely_desingularizable, l_desing, t_desing, Side};
use desing_core::diffdesing::{
    classify_point, d_desing, is_completely_d_desingularizable, local_exponents, singular_points,
    PointClass,
};
use desing_core::diffop::DiffOp;
use desing_core::json::to_json;
use desing_core::shiftop::{content_primpart, ShiftOp};
use desing_core::singanalysis::{c_relations, choose_q, classify_rational_l, classify_rational_t, is_apparent_l, is_apparent_t};
use desing_core::text::{parse_diff, parse_shift, OperatorRing};
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::{Failure, Report, Ring};

type Res = Result<Report, Failure>;

fn ok(text: String, json: Value) -> Res {
    Ok(Report { text, json, code: 0 })
}

fn shift_only(ring: Ring, cmd: &str) -> Result<(), Failure> {
    match ring {
        Ring::Shift => Ok(()),
        Ring::Diff => Err(Failure::usage(format!("'{cmd}' works on shift operators"))),
    }
}

/// Parses and clears denominators on the left.
fn shift_input(src: &str) -> Result<ShiftOp, Failure> {
    let op = parse_shift(src)?;
    if op.is_zero() {
        return Err(desing_core::Error::ZeroInput("operator").into());
    }
    let (_, prim) = content_primpart(op.coeffs())?;
    Ok(ShiftOp::from_polys(prim))
}

fn diff_input(src: &str) -> Result<DiffOp, Failure> {
    let op = parse_diff(src)?;
    if op.is_zero() {
        return Err(desing_core::Error::ZeroInput("operator").into());
    }
    Ok(op)
}

fn rat_arg(s: &str, what: &str) -> Result<Rat, Failure> {
    parse_rat(s.trim()).ok_or_else(|| Failure::usage(format!("{what}: '{s}' is not a rational number")))
}

fn op_json<R: OperatorRing>(op: &R) -> Value {
    serde_json::to_value(to_json(op)).unwrap()
}

fn rat_json(r: &Rat) -> Value {
    Value::String(r.to_string())
}

fn poly_json(p: &Poly<Rat>) -> Value {
    Value::Array(p.coeffs().iter().map(rat_json).collect())
}

fn roots_text(r: &RationalRoots) -> String {
    if r.roots.is_empty() {
        return "none".into();
    }
    r.roots
        .iter()
        .map(|(x, m)| if *m > 1 { format!("{x} (multiplicity {m})") } else { x.to_string() })
        .collect::<Vec<_>>()
        .join(", ")
}

fn roots_json(r: &RationalRoots) -> Value {
    Value::Array(
        r.roots
            .iter()
            .map(|(x, m)| json!({"point": x.to_string(), "multiplicity": m}))
            .collect(),
    )
}

fn opt_rat_text(r: &Option<Rat>) -> String {
    r.as_ref().map_or("undefined".into(), |x| x.to_string())
}

pub fn singularities(ring: Ring, src: &str) -> Res {
    match ring {
        Ring::Shift => {
            let op = shift_input(src)?;
            let d = op.singularity_data()?;
            let mut t = String::new();
            writeln!(t, "operator: {op}").unwrap();
            writeln!(t, "a_0(z) = {}", d.t_poly).unwrap();
            writeln!(t, "t-singularities: {}", roots_text(&d.t_sings)).unwrap();
            if !d.t_sings.splits() {
                writeln!(t, "  further t-singularities at the roots of {}", d.t_sings.cofactor).unwrap();
            }
            writeln!(t, "a_d(z - d) = {}", d.l_poly).unwrap();
            writeln!(t, "l-singularities: {}", roots_text(&d.l_sings)).unwrap();
            if !d.l_sings.splits() {
                writeln!(t, "  further l-singularities at the roots of {}", d.l_sings.cofactor).unwrap();
            }
            writeln!(t, "kappa (upper bound on Re of t-singularities): {}", opt_rat_text(&d.kappa_upper)).unwrap();
            writeln!(t, "iota (lower bound on Re of l-singularities): {}", opt_rat_text(&d.iota_lower)).unwrap();
            let j = json!({
                "operator": op_json(&op),
                "t_poly": poly_json(&d.t_poly),
                "l_poly": poly_json(&d.l_poly),
                "t_singularities": roots_json(&d.t_sings),
                "l_singularities": roots_json(&d.l_sings),
                "t_irrational_factor": poly_json(&d.t_sings.cofactor),
                "l_irrational_factor": poly_json(&d.l_sings.cofactor),
                "kappa_upper": d.kappa_upper.as_ref().map(rat_json),
                "iota_lower": d.iota_lower.as_ref().map(rat_json),
            });
            ok(t, j)
        }
        Ring::Diff => {
            let op = diff_input(src)?;
            let (points, rest) = singular_points(&op)?;
            let mut t = String::new();
            let mut rows = Vec::new();
            writeln!(t, "operator: {op}").unwrap();
            if points.is_empty() {
                writeln!(t, "rational singular points: none").unwrap();
            }
            for p in &points {
                let class = classify_point(&op, p)?;
                let data = local_exponents(&op.monic()?, p)?;
                let exps: Vec<String> = data.exponents.iter().map(|(e, _)| e.to_string()).collect();
                writeln!(t, "z = {p}: {}, exponents {{{}}}", class_text(class), exps.join(", ")).unwrap();
                rows.push(json!({
                    "point": p.to_string(),
                    "class": class_text(class),
                    "exponents": exps,
                    "indicial": poly_json(&data.indicial),
                }));
            }
            if !rest.is_constant() {
                writeln!(t, "further singular points at the roots of {rest}").unwrap();
            }
            ok(
                t,
                json!({"operator": op_json(&op), "points": rows, "irrational_factor": poly_json(&rest)}),
            )
        }
    }
}

fn class_text(c: PointClass) -> &'static str {
    match c {
        PointClass::Ordinary => "ordinary",
        PointClass::Apparent => "apparent",
        PointClass::NotApparent => "not apparent",
    }
}

fn verdict(b: bool) -> &'static str {
    if b {
        "apparent"
    } else {
        "not apparent"
    }
}

fn integer_row(row: &[Rat]) -> Vec<Rat> {
    primitive_integer_row(row).into_iter().map(Rat::from_integer).collect()
}

fn relation_text(cols: &[String], row: &[Rat]) -> String {
    let mut s = String::new();
    for (c, v) in cols.iter().zip(row) {
        if v.is_zero() {
            continue;
        }
        let neg = v.is_negative();
        let mag = v.abs();
        if s.is_empty() {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        if mag == Rat::from_integer(1.into()) {
            s.push_str(c);
        } else {
            write!(s, "{mag}*{c}").unwrap();
        }
    }
    s + " = 0"
}

fn apparent_at(op: &ShiftOp, sigma: &Rat, side: Side) -> Res {
    let (target, point, apparent) = match side {
        Side::T => (op.clone(), sigma.clone(), is_apparent_t(op, sigma)?),
        Side::L => (op.automorphism()?, -sigma.clone(), is_apparent_l(op, sigma)?),
        Side::LT => return Err(Failure::usage("--sigma needs --side t or --side l")),
    };
    let n = choose_q(&target, &point)?;
    let rel = c_relations(&target, &point, n)?;
    let q = &point + Rat::from_integer((n as i64).into());
    let cols: Vec<String> = rel
        .columns
        .iter()
        .map(|&(i, j)| format!("F[{},{}]", &q + Rat::from_integer((i as i64).into()), j))
        .collect();
    let rows: Vec<Vec<Rat>> = rel.rows.iter().map(|r| integer_row(r)).collect();
    let mut t = format!("sigma = {sigma} ({side}-singularity): {}\n", verdict(apparent));
    if side == Side::L {
        writeln!(t, "decided on the reflected operator {target} at {point}").unwrap();
    }
    writeln!(t, "q = {q}").unwrap();
    if rows.is_empty() {
        writeln!(t, "relations: none").unwrap();
    } else {
        writeln!(t, "relations:").unwrap();
        for r in &rows {
            writeln!(t, "  {}", relation_text(&cols, r)).unwrap();
        }
    }
    let j = json!({
        "sigma": sigma.to_string(),
        "side": side.to_string(),
        "apparent": apparent,
        "q": q.to_string(),
        "columns": cols,
        "relations": rows.iter().map(|r| r.iter().map(rat_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
    });
    ok(t, j)
}

pub fn apparent(ring: Ring, src: &str, sigma: Option<&str>, side: Side) -> Res {
    if ring == Ring::Diff {
        let op = diff_input(src)?;
        let points = match sigma {
            Some(s) => vec![rat_arg(s, "--sigma")?],
            None => singular_points(&op)?.0,
        };
        let mut t = String::new();
        let mut rows = Vec::new();
        for p in &points {
            let c = classify_point(&op, p)?;
            writeln!(t, "z = {p}: {}", class_text(c)).unwrap();
            rows.push(json!({"point": p.to_string(), "class": class_text(c), "apparent": c != PointClass::NotApparent}));
        }
        return ok(t, json!({ "points": rows }));
    }
    let op = shift_input(src)?;
    if let Some(s) = sigma {
        return apparent_at(&op, &rat_arg(s, "--sigma")?, side);
    }
    let mut t = String::new();
    let mut rows = Vec::new();
    let mut sides = Vec::new();
    if side != Side::L {
        sides.push(("t", classify_rational_t(&op)?));
    }
    if side != Side::T {
        sides.push(("l", classify_rational_l(&op)?));
    }
    for (name, list) in sides {
        if list.is_empty() {
            writeln!(t, "no rational {name}-singularities").unwrap();
        }
        for (s, a) in list {
            writeln!(t, "{name}-singularity {s}: {}", verdict(a)).unwrap();
            rows.push(json!({"side": name, "sigma": s.to_string(), "apparent": a}));
        }
    }
    ok(t, json!({ "singularities": rows }))
}

fn desing_json(r: &desing_core::desing::DesingResult) -> Value {
    json!({
        "output": op_json(&r.output),
        "output_text": r.output.to_string(),
        "bezout_form": op_json(&r.bezout_form),
        "bezout_form_text": r.bezout_form.to_string(),
        "cofactor": op_json(&r.cofactor),
        "removed_factor": poly_json(&r.removed_factor),
        "dispersion": r.dispersion_used,
    })
}

pub fn tdesing(ring: Ring, src: &str) -> Res {
    shift_only(ring, "tdesing")?;
    let r = t_desing(&shift_input(src)?)?;
    ok(format!("{}\n", r.output), desing_json(&r))
}

pub fn ldesing(ring: Ring, src: &str) -> Res {
    shift_only(ring, "ldesing")?;
    let r = l_desing(&shift_input(src)?)?;
    ok(format!("{}\n", r.output), desing_json(&r))
}

pub fn desingboth(ring: Ring, src: &str) -> Res {
    shift_only(ring, "desingboth")?;
    let r = desing_both(&shift_input(src)?)?;
    let j = json!({
        "output": op_json(&r.output),
        "output_text": r.output.to_string(),
        "cofactor": op_json(&r.cofactor),
        "t_part": desing_json(&r.t_part),
        "l_part": desing_json(&r.l_part),
        "m": r.m,
    });
    ok(format!("{}\n", r.output), j)
}

pub fn complete(ring: Ring, src: &str, side: Side) -> Res {
    let (label, yes, witness, wjson) = match ring {
        Ring::Shift => {
            let (yes, w) = is_completely_desingularizable(&shift_input(src)?, side)?;
            (format!("{side}-"), yes, w.to_string(), op_json(&w))
        }
        Ring::Diff => {
            let (yes, w) = is_completely_d_desingularizable(&diff_input(src)?)?;
            (String::new(), yes, w.to_string(), op_json(&w))
        }
    };
    let t = format!(
        "completely {label}desingularizable: {}\nwitness: {witness}\n",
        if yes { "yes" } else { "no" }
    );
    ok(t, json!({"complete": yes, "side": label.trim_end_matches('-'), "witness": wjson, "witness_text": witness}))
}

pub fn rdivide(ring: Ring, a: &str, b: &str) -> Res {
    let (q, r, qj, rj) = match ring {
        Ring::Shift => {
            let (q, r) = parse_shift(a)?.right_divrem(&parse_shift(b)?)?;
            (q.to_string(), r.to_string(), op_json(&q), op_json(&r))
        }
        Ring::Diff => {
            let (q, r) = parse_diff(a)?.right_divrem(&parse_diff(b)?)?;
            (q.to_string(), r.to_string(), op_json(&q), op_json(&r))
        }
    };
    ok(
        format!("quotient: {q}\nremainder: {r}\n"),
        json!({"quotient": qj, "remainder": rj, "quotient_text": q, "remainder_text": r}),
    )
}

pub fn extend(
    ring: Ring,
    src: &str,
    init: &str,
    start: &str,
    count: usize,
    dir: Direction,
    desing: bool,
) -> Res {
    shift_only(ring, "extend")?;
    let op = shift_input(src)?;
    let values = init
        .split(',')
        .map(|s| rat_arg(s, "--init"))
        .collect::<Result<Vec<_>, _>>()?;
    let w = SequenceWindow::new(rat_arg(start, "--start")?, values);
    let e = if desing {
        extend_via_desing(&op, &w, dir, count)?
    } else {
        run_extend(&op, &w, dir, count)?
    };
    let mut t = String::new();
    for (i, v) in &e.terms {
        writeln!(t, "u({i}) = {v}").unwrap();
    }
    let mut blocked = Value::Null;
    for ev in &e.events {
        if let Event::SingularityHit { index, point } = ev {
            write!(t, "stopped: u({index}) needs a division by the boundary coefficient, which vanishes at z = {point}").unwrap();
            if !desing {
                t.push_str(" (try --desing)");
            }
            t.push('\n');
            blocked = json!({"index": index.to_string(), "point": point.to_string()});
        }
    }
    let primes: Vec<String> = denominator_primes(&e.values()).iter().map(|p| p.to_string()).collect();
    let j = json!({
        "terms": e.terms.iter().map(|(i, v)| json!({"index": i.to_string(), "value": v.to_string()})).collect::<Vec<_>>(),
        "blocked": blocked,
        "denominator_primes": primes,
    });
    ok(t, j)
}

pub fn ddesing(_ring: Ring, src: &str) -> Res {
    let op = diff_input(src)?;
    let r = d_desing(&op)?;
    let pts: Vec<String> = r.apparent.iter().map(|p| p.to_string()).collect();
    let t = format!(
        "apparent singularities: {}\noutput: {}\ncleared: {}\n",
        if pts.is_empty() { "none".to_string() } else { pts.join(", ") },
        r.output,
        r.cleared
    );
    let j = json!({
        "apparent": pts,
        "output": op_json(&r.output),
        "output_text": r.output.to_string(),
        "cleared": op_json(&r.cleared),
        "cleared_text": r.cleared.to_string(),
        "max_exponent": r.max_exponent,
        "ys": r.ys.iter().map(poly_json).collect::<Vec<_>>(),
        "l1": op_json(&r.l1),
        "l3": op_json(&r.l3),
    });
    ok(t, j)
}

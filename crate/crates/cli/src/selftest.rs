//! Worked examples with known answers, checked end to end through the parser.

use desing_core::algebra::field::{rat, Rat};
use desing_core::continuation::{extend, extend_via_desing, Direction, SequenceWindow};
use desing_core::desing::{is_completely_desingularizable, l_desing, t_desing, Side};
use desing_core::diffdesing::d_desing;
use desing_core::shiftop::ShiftOp;
use desing_core::singanalysis::{c_relations, choose_q, is_apparent_t};
use desing_core::text::{parse_diff, parse_shift};
use desing_core::Result;
use serde_json::json;

use crate::Report;

const EX1: &str = "(z^2 - z)*E^2 + (-3*z^2 + 2*z + 21)*E + z^2 + 3*z + 2";
const EX2: &str = "(z-3)*(z-2)*E + z*(z-1)";
const SECOND_ORDER: &str = "(2*z-1)*(z-1)*E^2 + (2*z^3 - 9*z^2 + 5*z - 1)*E + z*(2*z+1)";
const PARTIAL: &str = "(z+2)^2*(z-1)^2*E - (z+1)*z*(z-2)^2";
const APERY_LIKE: &str = "(256*z^2 + 32*z + 1)*E^2 - (512*z + 224)*E - (256*z^3 + 800*z^2 + 833*z + 289)";
const LEADING_PRINTED: &str = "E^3 + (7/2*z - 81/32)*E^2 - (z + 11)*E - (112*z + 143)*(z + 1)/32";

/// `expected` marks fixtures whose exact reference form is not reproduced;
/// those print XFAIL and do not affect the exit status.
struct Fixture {
    name: &'static str,
    expected_fail: bool,
    check: fn() -> Result<bool>,
}

fn shift(s: &str) -> ShiftOp {
    parse_shift(s).expect("fixture parses")
}

fn ex1_not_apparent() -> Result<bool> {
    let l = shift(EX1);
    let n = choose_q(&l, &rat(-1))?;
    let rel = c_relations(&l, &rat(-1), n)?;
    Ok(!is_apparent_t(&l, &rat(-1))? && n == 5 && rel.spans(&[rat(20), rat(-39)]))
}

fn ex2_raw() -> Result<bool> {
    let want = shift(
        "(5*z-6)*(z-3)*(z-2)^2*(z-1)/72*E^4 + (5*z^3+39*z^2+106*z+108)*(z-3)*(z-2)/72*E + 1",
    );
    let r = t_desing(&shift(EX2))?;
    Ok(r.bezout_form == want && r.output == want.canonical()?)
}

fn second_order_raw() -> Result<bool> {
    let want = shift(
        "(4*z-1)*(2*z^3-9*z^2+5*z-1)/3*E^3 \
         + (8/3*z^5 - 18*z^4 + 85/3*z^3 + 26/3*z^2 - 43/3*z + 11/3)*E^2 \
         + (4*z+7)*(2*z^3-9*z^2+5*z-1)/3*E + 1",
    );
    Ok(t_desing(&shift(SECOND_ORDER))?.bezout_form == want)
}

fn partial() -> Result<bool> {
    let l = shift(PARTIAL);
    let want = shift("z*(z-2)^2 - (z+3)*(z+4)^2*E^3");
    let (complete, _) = is_completely_desingularizable(&l, Side::T)?;
    Ok(t_desing(&l)?.output == want.canonical()? && !complete)
}

fn leading_exact() -> Result<bool> {
    let r = l_desing(&shift(APERY_LIKE))?;
    Ok(r.output == shift(LEADING_PRINTED).canonical()?)
}

fn leading_relation() -> Result<bool> {
    let l = shift(APERY_LIKE);
    let printed = shift(LEADING_PRINTED);
    let r = l_desing(&l)?;
    let combo = &printed.scale_left(&desing_core::algebra::ratfun::RatFun::constant(rat(64))) + &l;
    Ok(printed.is_right_divisible_by(&l)? && r.output == combo.canonical()? && r.dispersion_used == 1)
}

fn both_sides() -> Result<bool> {
    let l = shift("(z-2)*E - z");
    let (ok, w) = is_completely_desingularizable(&l, Side::LT)?;
    Ok(ok && w.trailing().is_constant() && w.leading().is_constant())
}

fn first_terms() -> Result<bool> {
    let e = extend(
        &shift(APERY_LIKE),
        &SequenceWindow::new(rat(0), vec![rat(1), rat(0)]),
        Direction::Right,
        2,
    )?;
    Ok(e.values() == vec![rat(289), rat(736)])
}

fn blocked_left() -> Result<bool> {
    let l = shift(SECOND_ORDER);
    let e = extend(&l, &SequenceWindow::new(rat(3), vec![rat(1), rat(2)]), Direction::Left, 10)?;
    Ok(e.blocked_at() == Some(&rat(0)))
}

fn crossing() -> Result<bool> {
    let w = SequenceWindow::new(rat(5), vec![rat(7)]);
    let e = extend_via_desing(&shift(EX2), &w, Direction::Left, 8)?;
    Ok(e.terms.len() == 8 && e.blocked_at().is_none())
}

fn differential() -> Result<bool> {
    let l = parse_diff("D^2 - 2/z*D + 1 + 2/z^2").expect("fixture parses");
    let r = d_desing(&l)?;
    let want = parse_diff("D^3 - z*D^2 + 3*D - z").expect("fixture parses");
    Ok(r.output == want && r.apparent == vec![Rat::from_integer(0.into())])
}

const FIXTURES: &[Fixture] = &[
    Fixture { name: "example 1: -1 is a non-apparent t-singularity, relation (20, -39)", expected_fail: false, check: ex1_not_apparent },
    Fixture { name: "example 2: t-desingularization, exact Bezout form", expected_fail: false, check: ex2_raw },
    Fixture { name: "second-order example: t-desingularization, exact Bezout form", expected_fail: false, check: second_order_raw },
    Fixture { name: "partial t-desingularization keeps z(z-2)^2", expected_fail: false, check: partial },
    Fixture { name: "l-desingularization: reference operator, exact match", expected_fail: true, check: leading_exact },
    Fixture { name: "l-desingularization: output = 64*reference + L", expected_fail: false, check: leading_relation },
    Fixture { name: "(z-2)E - z is completely desingularizable", expected_fail: false, check: both_sides },
    Fixture { name: "first terms 289, 736", expected_fail: false, check: first_terms },
    Fixture { name: "left extension stops at index 0", expected_fail: false, check: blocked_left },
    Fixture { name: "desingularized driver crosses 1 and 0", expected_fail: false, check: crossing },
    Fixture { name: "differential: D^3 - z D^2 + 3 D - z", expected_fail: false, check: differential },
];

pub fn run() -> Report {
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut unexpected = 0;
    for f in FIXTURES {
        let (passed, err) = match (f.check)() {
            Ok(b) => (b, None),
            Err(e) => (false, Some(e.to_string())),
        };
        let tag = match (passed, f.expected_fail) {
            (true, false) => "PASS",
            (false, true) => "XFAIL",
            (true, true) => "XPASS",
            (false, false) => "FAIL",
        };
        if passed == f.expected_fail {
            unexpected += usize::from(!f.expected_fail);
        }
        match &err {
            Some(e) => text.push_str(&format!("{tag:5}  {} ({e})\n", f.name)),
            None => text.push_str(&format!("{tag:5}  {}\n", f.name)),
        }
        rows.push(json!({"name": f.name, "status": tag, "error": err}));
    }
    Report {
        text,
        json: json!({ "fixtures": rows, "unexpected_failures": unexpected }),
        code: u8::from(unexpected > 0),
    }
}

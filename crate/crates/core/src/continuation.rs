//! Extending sequence solutions of a recurrence `sum a_i(n) u(n+i) = 0` term
//! by term, and crossing singularities with a desingularized operator.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::algebra::field::Rat;
use crate::algebra::poly::Poly;
use crate::desing::{l_desing, t_desing};
use crate::error::{Error, Result};
use crate::shiftop::ShiftOp;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Left,
    Right,
}

impl FromStr for Direction {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "left" => Ok(Direction::Left),
            "right" => Ok(Direction::Right),
            _ => Err(format!("unknown direction '{s}' (expected left or right)")),
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Left => "left",
            Direction::Right => "right",
        })
    }
}

/// `values[k]` is `u(base_index + k)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SequenceWindow {
    pub base_index: Rat,
    pub values: Vec<Rat>,
}

impl SequenceWindow {
    pub fn new(base_index: Rat, values: Vec<Rat>) -> Self {
        SequenceWindow { base_index, values }
    }

    pub fn last_index(&self) -> Rat {
        &self.base_index + Rat::from_integer((self.values.len() as i64 - 1).into())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Event {
    /// `u(index)` was obtained by dividing by `divisor`.
    Division { index: Rat, divisor: Rat },
    /// `u(index)` could not be computed: the boundary coefficient vanishes
    /// at `z = point`.
    SingularityHit { index: Rat, point: Rat },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Extension {
    /// Newly computed terms in the order they were produced.
    pub terms: Vec<(Rat, Rat)>,
    pub events: Vec<Event>,
    /// The window after the last successful step.
    pub window: SequenceWindow,
}

impl Extension {
    pub fn blocked_at(&self) -> Option<&Rat> {
        self.events.iter().find_map(|e| match e {
            Event::SingularityHit { point, .. } => Some(point),
            _ => None,
        })
    }

    pub fn values(&self) -> Vec<Rat> {
        self.terms.iter().map(|(_, v)| v.clone()).collect()
    }
}

fn step(
    coeffs: &[Poly<Rat>],
    win: &mut SequenceWindow,
    dir: Direction,
    terms: &mut Vec<(Rat, Rat)>,
    events: &mut Vec<Event>,
) -> bool {
    let d = coeffs.len() - 1;
    let one = Rat::one();
    let (n, pivot, known) = match dir {
        Direction::Right => (win.base_index.clone(), d, 0..d),
        Direction::Left => (&win.base_index - &one, 0, 1..d + 1),
    };
    let index = &n + Rat::from_integer((pivot as i64).into());
    let divisor = coeffs[pivot].eval(&n);
    if divisor.is_zero() {
        events.push(Event::SingularityHit { index, point: n });
        return false;
    }
    let offset = if dir == Direction::Left { 1 } else { 0 };
    let mut acc = Rat::zero();
    for i in known {
        acc += coeffs[i].eval(&n) * &win.values[i - offset];
    }
    let value = -acc / &divisor;
    events.push(Event::Division {
        index: index.clone(),
        divisor,
    });
    match dir {
        Direction::Right => {
            win.values.remove(0);
            win.values.push(value.clone());
            win.base_index += one;
        }
        Direction::Left => {
            win.values.pop();
            win.values.insert(0, value.clone());
            win.base_index = n;
        }
    }
    terms.push((index, value));
    true
}

fn check_window(op: &ShiftOp, w: &SequenceWindow) -> Result<Vec<Poly<Rat>>> {
    let coeffs = op.poly_coeffs()?;
    if op.order() == 0 {
        return Err(Error::ConstantPolynomial("recurrence of order 0"));
    }
    if w.values.len() != op.order() {
        return Err(Error::WindowLength {
            got: w.values.len(),
            want: op.order(),
        });
    }
    Ok(coeffs)
}

/// Runs the recurrence `count` steps, stopping at the first vanishing
/// boundary coefficient.
pub fn extend(op: &ShiftOp, w: &SequenceWindow, dir: Direction, count: usize) -> Result<Extension> {
    let coeffs = check_window(op, w)?;
    let mut win = w.clone();
    let mut terms = Vec::new();
    let mut events = Vec::new();
    for _ in 0..count {
        if !step(&coeffs, &mut win, dir, &mut terms, &mut events) {
            break;
        }
    }
    Ok(Extension {
        terms,
        events,
        window: win,
    })
}

/// Like [`extend`], but drives with the t-desingularization (leftwards) or
/// l-desingularization (rightwards) of `op`. The window is first widened to
/// the order of that operator by extending with `op` itself.
pub fn extend_via_desing(
    op: &ShiftOp,
    w: &SequenceWindow,
    dir: Direction,
    count: usize,
) -> Result<Extension> {
    check_window(op, w)?;
    let driver = match dir {
        Direction::Left => t_desing(op)?.output,
        Direction::Right => l_desing(op)?.output,
    };
    extend_with_driver(op, &driver, w, dir, count)
}

/// [`extend_via_desing`] with an explicitly supplied left multiple of `op`.
pub fn extend_with_driver(
    op: &ShiftOp,
    driver: &ShiftOp,
    w: &SequenceWindow,
    dir: Direction,
    count: usize,
) -> Result<Extension> {
    let coeffs = check_window(op, w)?;
    let dcoeffs = driver.poly_coeffs()?;
    let widen = driver.order().saturating_sub(op.order());
    let mut win = w.clone();
    let mut terms = Vec::new();
    let mut events = Vec::new();
    let mut done = 0;
    while done < count.min(widen) {
        if !step(&coeffs, &mut win, dir, &mut terms, &mut events) {
            let point = match events.last() {
                Some(Event::SingularityHit { point, .. }) => point.to_string(),
                _ => String::new(),
            };
            return Err(Error::Inconsistent(format!(
                "cannot widen the window to order {}: the recurrence is singular at z = {point}",
                driver.order()
            )));
        }
        done += 1;
    }
    if done < count {
        // terms already computed plus the original window, in index order
        let mut all: Vec<(Rat, Rat)> = w
            .values
            .iter()
            .enumerate()
            .map(|(k, v)| (&w.base_index + Rat::from_integer((k as i64).into()), v.clone()))
            .chain(terms.iter().cloned())
            .collect();
        all.sort_by(|a, b| a.0.cmp(&b.0));
        let k = driver.order();
        let slice = match dir {
            Direction::Right => &all[all.len() - k..],
            Direction::Left => &all[..k],
        };
        win = SequenceWindow::new(slice[0].0.clone(), slice.iter().map(|(_, v)| v.clone()).collect());
        while done < count {
            if !step(&dcoeffs, &mut win, dir, &mut terms, &mut events) {
                break;
            }
            done += 1;
        }
    }
    Ok(Extension {
        terms,
        events,
        window: win,
    })
}

/// Primes dividing at least one denominator, by trial division.
pub fn denominator_primes(values: &[Rat]) -> BTreeSet<BigUint> {
    let mut out = BTreeSet::new();
    for v in values {
        let mut d = v.denom().magnitude().clone();
        let mut p = BigUint::from(2u32);
        while d > BigUint::one() {
            if &p * &p > d {
                out.insert(d.clone());
                break;
            }
            if d.is_multiple_of(&p) {
                out.insert(p.clone());
                while d.is_multiple_of(&p) {
                    d /= &p;
                }
            }
            p += 1u32;
        }
    }
    out
}

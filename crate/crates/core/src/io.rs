//! Line-oriented text formats.
//!
//! Instance files hold one `R <x> <y>` or `B <x> <y>` record per line.
//! Solution files hold `V <x>`, `H <y>` or `G <a> <b> <c>` records for
//! `x = x0`, `y = y0` and `a*x + b*y = c`. Hitting-set description files
//! hold `k`, `t`, `sigma`, `class` and `A`/`B` interval records. Numbers are
//! integers, decimals or `p/q` fractions; `#` starts a comment and blank
//! lines are ignored. Emitters always write canonical fractions.

use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::geometry::{Instance, Line, LineKind, Point, Rational};
use crate::reduction::S2THSInstance;

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

/// Parses `-12`, `3/4` or `-0.125` exactly.
pub fn parse_rational(token: &str) -> std::result::Result<Rational, String> {
    let bad = || format!("not a rational number: {token:?}");
    if let Some((n, d)) = token.split_once('/') {
        let n = BigInt::from_str(n).map_err(|_| bad())?;
        let d = BigInt::from_str(d).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(format!("zero denominator in {token:?}"));
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((int, fracpart)) = token.split_once('.') {
        if fracpart.is_empty() || !fracpart.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = int.starts_with('-');
        let digits = int.trim_start_matches(['-', '+']);
        if !digits.bytes().all(|b| b.is_ascii_digit()) || int.len() - digits.len() > 1 {
            return Err(bad());
        }
        let whole = format!("{digits}{fracpart}");
        let mut n = BigInt::from_str(&whole).map_err(|_| bad())?;
        if negative {
            n = -n;
        }
        let d = num_traits::pow(BigInt::from(10), fracpart.len());
        return Ok(Rational::new(n, d));
    }
    BigInt::from_str(token).map(Rational::from_integer).map_err(|_| bad())
}

/// Significant records of `text`: 1-based line number and tokens.
fn records(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = body.split_whitespace().collect();
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

fn numbers(line: usize, tokens: &[&str], expected: usize) -> Result<Vec<Rational>> {
    if tokens.len() != expected {
        return Err(parse_error(line, format!("expected {expected} numbers, found {}", tokens.len())));
    }
    tokens.iter().map(|t| parse_rational(t).map_err(|m| parse_error(line, m))).collect()
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut red = Vec::new();
    let mut blue = Vec::new();
    for (line, tokens) in records(text) {
        let target = match tokens[0] {
            "R" | "r" => &mut red,
            "B" | "b" => &mut blue,
            other => return Err(parse_error(line, format!("unknown record {other:?}, expected R or B"))),
        };
        let mut v = numbers(line, &tokens[1..], 2)?.into_iter();
        let x = v.next().expect("two numbers");
        let y = v.next().expect("two numbers");
        target.push(Point::new(x, y));
    }
    Ok(Instance::new(red, blue))
}

pub fn emit_instance(instance: &Instance) -> String {
    let mut out = String::new();
    for (tag, points) in [("R", instance.red()), ("B", instance.blue())] {
        for p in points {
            let _ = writeln!(out, "{tag} {} {}", p.x, p.y);
        }
    }
    out
}

/// One solution record without the trailing newline.
pub fn format_line(line: &Line) -> String {
    match line.kind() {
        LineKind::Vertical(x) => format!("V {x}"),
        LineKind::Horizontal(y) => format!("H {y}"),
        LineKind::General { a, b, c } => format!("G {a} {b} {c}"),
    }
}

pub fn parse_solution(text: &str) -> Result<Vec<Line>> {
    let mut lines = Vec::new();
    for (line, tokens) in records(text) {
        let parsed = match tokens[0] {
            "V" | "v" => Line::vertical(numbers(line, &tokens[1..], 1)?.remove(0)),
            "H" | "h" => Line::horizontal(numbers(line, &tokens[1..], 1)?.remove(0)),
            "G" | "g" => {
                let mut v = numbers(line, &tokens[1..], 3)?.into_iter();
                let (a, b, c) = (v.next().expect("a"), v.next().expect("b"), v.next().expect("c"));
                Line::general(a, b, c).map_err(|e| parse_error(line, e.to_string()))?
            }
            other => return Err(parse_error(line, format!("unknown record {other:?}, expected V, H or G"))),
        };
        lines.push(parsed);
    }
    Ok(lines)
}

/// A solution file with a `cost` and a `solver` header comment.
pub fn emit_solution(lines: &[Line], solver: &str) -> String {
    let mut out = format!("# cost {}\n# solver {solver}\n", lines.len());
    for line in lines {
        out.push_str(&format_line(line));
        out.push('\n');
    }
    out
}

/// Largest `k * t` accepted by [`parse_s2ths`].
pub const MAX_S2THS_ELEMENTS: usize = 1 << 20;

fn parse_index(line: usize, token: &str) -> Result<usize> {
    token
        .parse::<usize>()
        .map_err(|_| parse_error(line, format!("not a nonnegative integer: {token:?}")))
}

/// Description file of a hitting-set instance:
///
/// ```text
/// k 2
/// t 3
/// sigma 2 1        # order of the classes on track B
/// class 1 3 1 2    # sigma_1
/// class 2 1 2 3
/// A 1 4            # A-interval [1, 4]
/// B 2 5
/// ```
pub fn parse_s2ths(text: &str) -> Result<S2THSInstance> {
    let mut k = None;
    let mut t = None;
    let mut sigma = None;
    let mut classes: Vec<(usize, usize, Vec<usize>)> = Vec::new();
    let mut intervals_a = Vec::new();
    let mut intervals_b = Vec::new();
    for (line, tokens) in records(text) {
        let args = tokens[1..].iter().map(|tok| parse_index(line, tok)).collect::<Result<Vec<_>>>()?;
        let one = |what: &str| -> Result<usize> {
            match args[..] {
                [v] => Ok(v),
                _ => Err(parse_error(line, format!("{what} takes exactly one value"))),
            }
        };
        let pair = || -> Result<(usize, usize)> {
            match args[..] {
                [s, e] => Ok((s, e)),
                _ => Err(parse_error(line, "an interval takes exactly two indices")),
            }
        };
        match tokens[0] {
            "k" => k = Some(one("k")?),
            "t" => t = Some(one("t")?),
            "sigma" => sigma = Some(args),
            "class" => {
                let Some((&j, perm)) = args.split_first() else {
                    return Err(parse_error(line, "class needs an index and a permutation"));
                };
                classes.push((line, j, perm.to_vec()));
            }
            "A" => intervals_a.push(pair()?),
            "B" => intervals_b.push(pair()?),
            other => return Err(parse_error(line, format!("unknown record {other:?}"))),
        }
    }
    let k = k.ok_or_else(|| parse_error(0, "missing k record"))?;
    let t = t.ok_or_else(|| parse_error(0, "missing t record"))?;
    if k.checked_mul(t).is_none_or(|n| n > MAX_S2THS_ELEMENTS) {
        return Err(Error::TooLarge { what: "k * t", size: k.saturating_mul(t), limit: MAX_S2THS_ELEMENTS });
    }
    let sigma = sigma.unwrap_or_else(|| (1..=k).collect());
    let mut sigmas: Vec<Option<Vec<usize>>> = vec![None; k];
    for (line, j, perm) in classes {
        if j == 0 || j > k {
            return Err(parse_error(line, format!("class index {j} outside 1..={k}")));
        }
        if sigmas[j - 1].replace(perm).is_some() {
            return Err(parse_error(line, format!("class {j} given twice")));
        }
    }
    let sigmas = sigmas.into_iter().map(|p| p.unwrap_or_else(|| (1..=t).collect())).collect();
    S2THSInstance::new(k, t, sigma, sigmas, intervals_a, intervals_b)
}

pub fn emit_s2ths(inst: &S2THSInstance) -> String {
    let join = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
    let mut out = format!("k {}\nt {}\nsigma {}\n", inst.k(), inst.t(), join(inst.sigma()));
    for (j, perm) in inst.sigmas().iter().enumerate() {
        let _ = writeln!(out, "class {} {}", j + 1, join(perm));
    }
    for (s, e) in inst.intervals_a() {
        let _ = writeln!(out, "A {s} {e}");
    }
    for (s, e) in inst.intervals_b() {
        let _ = writeln!(out, "B {s} {e}");
    }
    out
}

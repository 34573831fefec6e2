//! Group files.
//!
//! A generators file starts with `degree N` and lists one permutation per line
//! in cycle notation. A Cayley file starts with `cayley N` followed by `N` rows
//! of `N` element indices; row `a`, column `b` holds `a * b`. Blank lines and
//! lines starting with `#` are ignored in both formats.

use std::path::Path;

use selfnorm::families::regular_representation;
use selfnorm::{parse_cycles, Group, Limits};

use crate::CliError;

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn bad(line: usize, msg: impl Into<String>) -> CliError {
    CliError::Format {
        line,
        msg: msg.into(),
    }
}

pub fn load_group_file(path: &Path, limits: &Limits) -> Result<Group, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        msg: e.to_string(),
    })?;
    parse_group_text(&text, limits)
}

pub fn parse_group_text(text: &str, limits: &Limits) -> Result<Group, CliError> {
    let mut lines = content_lines(text);
    let (line, header) = lines.next().ok_or_else(|| bad(1, "empty group file"))?;
    let mut words = header.split_whitespace();
    let kind = words.next().unwrap_or_default();
    let n: usize = words
        .next()
        .and_then(|w| w.parse().ok())
        .filter(|_| words.next().is_none())
        .ok_or_else(|| bad(line, "header must be 'degree N' or 'cayley N'"))?;
    match kind {
        "degree" => parse_generators(n, lines, limits),
        "cayley" => parse_cayley(n, lines, limits),
        _ => Err(bad(line, format!("unknown header '{kind}'"))),
    }
}

fn parse_generators<'a>(
    degree: usize,
    lines: impl Iterator<Item = (usize, &'a str)>,
    limits: &Limits,
) -> Result<Group, CliError> {
    if degree == 0 {
        return Err(bad(1, "degree must be positive"));
    }
    let gens = lines
        .map(|(line, l)| parse_cycles(l, Some(degree)).map_err(|e| bad(line, e.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Group::generate(degree, gens, limits.element_cap)?)
}

fn parse_cayley<'a>(
    n: usize,
    lines: impl Iterator<Item = (usize, &'a str)>,
    limits: &Limits,
) -> Result<Group, CliError> {
    if n == 0 {
        return Err(bad(1, "table must have at least one element"));
    }
    if n > limits.element_cap {
        return Err(selfnorm::GroupError::TooLarge {
            cap: limits.element_cap,
        }
        .into());
    }
    let mut table = Vec::with_capacity(n * n);
    let mut rows = 0;
    for (line, l) in lines {
        let row = l
            .split_whitespace()
            .map(|w| w.parse::<usize>().ok().filter(|&v| v < n))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| bad(line, format!("entries must be integers below {n}")))?;
        if row.len() != n {
            return Err(bad(
                line,
                format!("row has {} entries, expected {n}", row.len()),
            ));
        }
        rows += 1;
        if rows > n {
            return Err(bad(line, format!("more than {n} rows")));
        }
        table.extend(row);
    }
    if rows != n {
        return Err(bad(0, format!("expected {n} rows, found {rows}")));
    }
    let mul = |a: usize, b: usize| table[a * n + b];
    let e = check_axioms(n, &mul)?;
    let gens = generating_set(n, e, &mul);
    Ok(regular_representation(n, mul, &gens)?)
}

/// Returns the identity.
fn check_axioms(n: usize, mul: &impl Fn(usize, usize) -> usize) -> Result<usize, CliError> {
    let axiom = |msg: String| CliError::Format { line: 0, msg };
    let e = (0..n)
        .find(|&e| (0..n).all(|a| mul(e, a) == a && mul(a, e) == a))
        .ok_or_else(|| axiom("no identity element".into()))?;
    for a in 0..n {
        if !(0..n).any(|b| mul(a, b) == e && mul(b, a) == e) {
            return Err(axiom(format!("element {a} has no inverse")));
        }
    }
    for a in 0..n {
        for b in 0..n {
            let ab = mul(a, b);
            for c in 0..n {
                if mul(ab, c) != mul(a, mul(b, c)) {
                    return Err(axiom(format!("({a} {b}) {c} != {a} ({b} {c})")));
                }
            }
        }
    }
    Ok(e)
}

/// Greedy generating set: each element not yet reached is added.
fn generating_set(n: usize, e: usize, mul: &impl Fn(usize, usize) -> usize) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut reached = vec![false; n];
    reached[e] = true;
    for g in 0..n {
        if reached[g] {
            continue;
        }
        gens.push(g);
        reached = vec![false; n];
        reached[e] = true;
        let mut frontier = vec![e];
        while let Some(x) = frontier.pop() {
            for &s in &gens {
                let y = mul(x, s);
                if !reached[y] {
                    reached[y] = true;
                    frontier.push(y);
                }
            }
        }
    }
    gens
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_file() {
        let g = parse_group_text(
            "degree 4\n(0 1 2 3)\n# reflection\n(1 3)\n",
            &Limits::default(),
        )
        .unwrap();
        assert_eq!(g.order(), 8);
    }

    #[test]
    fn generators_file_errors() {
        let l = Limits::default();
        assert!(matches!(
            parse_group_text("", &l),
            Err(CliError::Format { .. })
        ));
        assert!(matches!(
            parse_group_text("degree x", &l),
            Err(CliError::Format { line: 1, .. })
        ));
        assert!(matches!(
            parse_group_text("degree 3\n(0 1)\n(0 5)\n", &l),
            Err(CliError::Format { line: 3, .. })
        ));
    }

    #[test]
    fn cayley_klein_four() {
        let text = "cayley 4\n0 1 2 3\n1 0 3 2\n2 3 0 1\n3 2 1 0\n";
        let g = parse_group_text(text, &Limits::default()).unwrap();
        assert_eq!(g.order(), 4);
        assert!(g.is_abelian());
    }

    #[test]
    fn cayley_rejects_non_groups() {
        let l = Limits::default();
        // no identity
        assert!(parse_group_text("cayley 2\n1 0\n0 0\n", &l).is_err());
        // identity 0 but not associative: a Latin square loop of order 5
        let loop5 = "cayley 5\n0 1 2 3 4\n1 0 3 4 2\n2 4 0 1 3\n3 2 4 0 1\n4 3 1 2 0\n";
        assert!(matches!(
            parse_group_text(loop5, &l),
            Err(CliError::Format { .. })
        ));
        assert!(parse_group_text("cayley 2\n0 1\n", &l).is_err());
        assert!(parse_group_text("cayley 2\n0 1\n1 2\n", &l).is_err());
    }
}

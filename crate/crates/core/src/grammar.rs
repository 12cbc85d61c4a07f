//! Textual grammar for groups and connection sets.
//!
//! ```text
//! group      := factor ( "x" factor )*
//! factor     := "cyclic:" N | "dihedral:" N
//! connection := set ( ";" set )*            one set per factor, in order
//! set        := "unitary" | "gcdclass:" D | "explicit:" item ( "," item )*
//! item       := K            (cyclic exponent, a^K)
//!             | "r" K        (dihedral rotation a^K)
//!             | "s" K        (dihedral reflection a^K b)
//! ```
//!
//! `unitary` and `gcdclass` only apply to cyclic factors.

use crate::cayley::{validate_connection_set, ConnectionSet, Factor, FactorElement, GroupSpec};
use crate::error::{Error, Result};
use crate::numtheory;

/// Default limit on the number of elements materialized for one factor set.
pub const DEFAULT_MAX_SET_SIZE: u64 = 1 << 20;

fn parse_err(token: &str, reason: impl Into<String>) -> Error {
    Error::Parse {
        token: token.to_string(),
        reason: reason.into(),
    }
}

fn parse_number(token: &str, text: &str) -> Result<u64> {
    let text = text.trim();
    if text.is_empty() || !text.bytes().all(|b| b.is_ascii_digit()) {
        return Err(parse_err(token, "expected a non-negative integer"));
    }
    text.parse()
        .map_err(|_| parse_err(token, "integer out of range"))
}

pub fn parse_factor(token: &str) -> Result<Factor> {
    let t = token.trim();
    let (kind, arg) = t
        .split_once(':')
        .ok_or_else(|| parse_err(t, "expected `cyclic:N` or `dihedral:N`"))?;
    let n = parse_number(t, arg)?;
    let wrap = |e: Error| match e {
        Error::InvalidInput(msg) => parse_err(t, msg),
        other => other,
    };
    match kind.trim() {
        "cyclic" => Factor::cyclic(n).map_err(wrap),
        "dihedral" => Factor::dihedral(n).map_err(wrap),
        _ => Err(parse_err(t, "unknown group family (use `cyclic` or `dihedral`)")),
    }
}

/// Parses `cyclic:6`, `dihedral:5`, `cyclic:3 x dihedral:5`, ...
pub fn parse_group(text: &str) -> Result<GroupSpec> {
    let factors = text
        .split('x')
        .map(parse_factor)
        .collect::<Result<Vec<_>>>()?;
    GroupSpec::new(factors).map_err(|e| match e {
        Error::InvalidInput(msg) => parse_err(text.trim(), msg),
        other => other,
    })
}

fn parse_factor_set(factor: &Factor, token: &str, max_size: u64) -> Result<Vec<FactorElement>> {
    let t = token.trim();
    let (kind, arg) = match t.split_once(':') {
        Some((k, a)) => (k.trim(), Some(a)),
        None => (t, None),
    };
    let cyclic_only = |n: Option<u64>| {
        n.ok_or_else(|| parse_err(t, format!("`{kind}` only applies to cyclic factors, not {factor}")))
    };
    let cyclic_n = match factor {
        Factor::Cyclic(n) => Some(*n),
        Factor::Dihedral(_) => None,
    };
    match (kind, arg) {
        ("unitary", None) => {
            let n = cyclic_only(cyclic_n)?;
            if n > max_size {
                return Err(parse_err(t, format!("set for cyclic:{n} exceeds size limit {max_size}")));
            }
            if n <= 1 {
                // B(1,1) = {1} maps to the identity; nothing left.
                return Ok(Vec::new());
            }
            Ok(numtheory::residue_class(1, n)?
                .into_iter()
                .map(|i| FactorElement::Cyclic(i % n))
                .collect())
        }
        ("gcdclass", Some(arg)) => {
            let n = cyclic_only(cyclic_n)?;
            let d = parse_number(t, arg)?;
            if d == 0 || n % d != 0 {
                return Err(parse_err(t, format!("{d} does not divide {n}")));
            }
            if n / d > max_size {
                return Err(parse_err(t, format!("set exceeds size limit {max_size}")));
            }
            Ok(numtheory::residue_class(d, n)?
                .into_iter()
                .map(|i| FactorElement::Cyclic(i % n))
                .collect())
        }
        ("explicit", Some(arg)) => {
            let items: Vec<&str> = arg.split(',').map(str::trim).collect();
            if items.len() as u64 > max_size {
                return Err(parse_err(t, format!("set exceeds size limit {max_size}")));
            }
            items
                .into_iter()
                .filter(|s| !s.is_empty())
                .map(|item| parse_item(factor, item))
                .collect()
        }
        _ => Err(parse_err(
            t,
            "expected `unitary`, `gcdclass:D` or `explicit:ITEMS`",
        )),
    }
}

fn parse_item(factor: &Factor, item: &str) -> Result<FactorElement> {
    let x = match factor {
        Factor::Cyclic(_) => FactorElement::Cyclic(parse_number(item, item)?),
        Factor::Dihedral(_) => {
            let (head, rest) = item.split_at(item.chars().next().map_or(0, char::len_utf8));
            let k = parse_number(item, rest)?;
            match head {
                "r" => FactorElement::rotation(k),
                "s" => FactorElement::reflection(k),
                _ => {
                    return Err(parse_err(
                        item,
                        "dihedral elements are written `rK` (a^K) or `sK` (a^K b)",
                    ))
                }
            }
        }
    };
    if !factor.contains(&x) {
        return Err(parse_err(item, format!("exponent out of range for {factor}")));
    }
    Ok(x)
}

/// Parses and validates a connection set for `group`.
pub fn parse_connection(group: &GroupSpec, text: &str) -> Result<ConnectionSet> {
    parse_connection_with_limit(group, text, DEFAULT_MAX_SET_SIZE)
}

pub fn parse_connection_with_limit(
    group: &GroupSpec,
    text: &str,
    max_set_size: u64,
) -> Result<ConnectionSet> {
    let parts: Vec<&str> = text.split(';').collect();
    if parts.len() != group.factors().len() {
        return Err(parse_err(
            text.trim(),
            format!(
                "expected {} `;`-separated factor sets for {group}, found {}",
                group.factors().len(),
                parts.len()
            ),
        ));
    }
    let sets = group
        .factors()
        .iter()
        .zip(parts)
        .map(|(f, p)| parse_factor_set(f, p, max_set_size))
        .collect::<Result<Vec<_>>>()?;
    validate_connection_set(group, sets)
}

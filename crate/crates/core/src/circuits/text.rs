//! Line-based circuit format, one instruction per line:
//!
//! ```text
//! circuit <n_qubits>
//! gate <label> <target> <controls> <re00> <im00> <re01> <im01> <re10> <im10> <re11> <im11>
//! qft <start> <end> <inverse 0|1> <controls>
//! gphase <angle>
//! block <name> <first_op> <end_op>
//! ```
//!
//! `<controls>` is `-` or a comma list such as `3+,5-` (`-` marks an anti-control).
//! Floats use the shortest representation that round-trips exactly.

use std::fmt::Write as _;

use num_complex::Complex64;

use super::circuit::{Block, Circuit, Op};
use crate::statevector::Control;
use crate::{Error, Result};

fn write_controls(out: &mut String, cs: &[Control]) {
    if cs.is_empty() {
        out.push('-');
        return;
    }
    for (i, c) in cs.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        let _ = write!(out, "{}{}", c.qubit, if c.on { '+' } else { '-' });
    }
}

pub fn to_text(c: &Circuit) -> String {
    let mut out = format!("circuit {}\n", c.n_qubits());
    for op in c.ops() {
        match op {
            Op::Gate { label, target, controls, matrix } => {
                let _ = write!(out, "gate {label} {target} ");
                write_controls(&mut out, controls);
                for z in matrix.iter().flatten() {
                    let _ = write!(out, " {:e} {:e}", z.re, z.im);
                }
            }
            Op::Qft { qubits, inverse, controls } => {
                let _ = write!(out, "qft {} {} {} ", qubits.start, qubits.end, u8::from(*inverse));
                write_controls(&mut out, controls);
            }
            Op::GlobalPhase { angle } => {
                let _ = write!(out, "gphase {angle:e}");
            }
        }
        out.push('\n');
    }
    for b in c.blocks() {
        let _ = writeln!(out, "block {} {} {}", b.name, b.ops.start, b.ops.end);
    }
    out
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn num<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T> {
    tok.ok_or_else(|| parse_err(line, format!("missing {what}")))?
        .parse()
        .map_err(|_| parse_err(line, format!("bad {what}")))
}

fn parse_controls(tok: Option<&str>, line: usize) -> Result<Vec<Control>> {
    let tok = tok.ok_or_else(|| parse_err(line, "missing controls"))?;
    if tok == "-" {
        return Ok(Vec::new());
    }
    tok.split(',')
        .map(|item| {
            let (q, pol) = item.split_at(item.len().saturating_sub(1));
            let on = match pol {
                "+" => true,
                "-" => false,
                _ => return Err(parse_err(line, format!("bad control {item:?}"))),
            };
            Ok(Control { qubit: num(Some(q), line, "control qubit")?, on })
        })
        .collect()
}

pub fn from_text(text: &str) -> Result<Circuit> {
    let mut circuit: Option<Circuit> = None;
    let mut blocks = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let mut toks = raw.split_whitespace();
        let Some(kind) = toks.next() else { continue };
        if kind == "circuit" {
            if circuit.is_some() {
                return Err(parse_err(line, "duplicate header"));
            }
            circuit = Some(Circuit::new(num(toks.next(), line, "qubit count")?)?);
            continue;
        }
        let c = circuit.as_mut().ok_or_else(|| parse_err(line, "missing `circuit` header"))?;
        let op = match kind {
            "gate" => {
                let label = toks.next().ok_or_else(|| parse_err(line, "missing label"))?.to_string();
                let target = num(toks.next(), line, "target")?;
                let controls = parse_controls(toks.next(), line)?;
                let mut v = [0.0f64; 8];
                for x in v.iter_mut() {
                    *x = num(toks.next(), line, "matrix entry")?;
                }
                let z = |k: usize| Complex64::new(v[2 * k], v[2 * k + 1]);
                Op::Gate { label, target, controls, matrix: [[z(0), z(1)], [z(2), z(3)]] }
            }
            "qft" => {
                let start: usize = num(toks.next(), line, "range start")?;
                let end: usize = num(toks.next(), line, "range end")?;
                let inverse = match toks.next() {
                    Some("0") => false,
                    Some("1") => true,
                    _ => return Err(parse_err(line, "bad inverse flag")),
                };
                Op::Qft { qubits: start..end, inverse, controls: parse_controls(toks.next(), line)? }
            }
            "gphase" => Op::GlobalPhase { angle: num(toks.next(), line, "angle")? },
            "block" => {
                let name = toks.next().ok_or_else(|| parse_err(line, "missing block name"))?.to_string();
                let start = num(toks.next(), line, "block start")?;
                let end = num(toks.next(), line, "block end")?;
                blocks.push(Block { name, ops: start..end });
                continue;
            }
            other => return Err(parse_err(line, format!("unknown instruction {other:?}"))),
        };
        if toks.next().is_some() {
            return Err(parse_err(line, "trailing tokens"));
        }
        c.push(op).map_err(|e| parse_err(line, e.to_string()))?;
    }
    let mut c = circuit.ok_or_else(|| parse_err(0, "empty input"))?;
    c.set_blocks(blocks)?;
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuits::c_lc_lorentzian;
    use crate::locfuncs::{normalize_lc, LcSpec};

    #[test]
    fn round_trip_is_exact() {
        let lc = normalize_lc(&LcSpec::one_dim(3, &[(0.6, 0.5, 1), (-0.3, 1.1, 6), (0.2, 0.2, 3)]).unwrap()).unwrap();
        let c = c_lc_lorentzian(&lc).unwrap().circuit;
        let text = to_text(&c);
        let back = from_text(&text).unwrap();
        assert_eq!(back, c);
        assert_eq!(to_text(&back), text);
    }

    #[test]
    fn rejects_malformed_lines() {
        assert!(from_text("gate x 0 - 0 0 1 0 1 0 0 0").is_err());
        assert!(matches!(from_text("circuit 1\ngate x 0 -"), Err(Error::Parse { line: 2, .. })));
        assert!(from_text("circuit 2\nqft 0 2 2 -").is_err());
        assert!(from_text("circuit 2\nblock a 0 5").is_err());
        assert!(from_text("circuit 2\ngate x 0 1* 0 0 1 0 1 0 0 0").is_err());
    }
}

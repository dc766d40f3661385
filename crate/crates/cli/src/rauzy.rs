//! `rauzy`: induction on an exchange, with a JSON-lines trace and a summary.

use std::path::{Path, PathBuf};

use clap::Args;
use curvegraph::ncie::{passage_product, rauzy_until, twice_cover_index, Ncie, NcieError, Stop};
use curvegraph::scalar::{format_rational, parse_rational};
use curvegraph::{BigPassageMatrix, Rational, RationalNcie};
use num_bigint::BigInt;

use crate::output::{emit, read_input};
use crate::{parse_pair, CliError, ExperimentConfig, Global, Table};

#[derive(Clone, Debug, Args)]
pub struct RauzyArgs {
    /// Exchange fixture (JSON).
    #[arg(long, conflicts_with = "rotation", required_unless_present = "rotation")]
    pub fixture: Option<PathBuf>,
    /// Two-band rotation with widths `a,b` instead of a fixture.
    #[arg(long)]
    pub rotation: Option<String>,
    /// `steps:N`, `passages:K` or `length:p/q`; without one the induction runs
    /// until a saddle connection or `--cap-steps`.
    #[arg(long)]
    pub stop: Option<String>,
    /// Report the first step at which every passage count reaches two.
    #[arg(long)]
    pub twice: bool,
    /// Trace file; `<out>.trace.jsonl` when absent and `--out` is given.
    #[arg(long)]
    pub trace: Option<PathBuf>,
}

pub const COLUMNS: [&str; 7] = [
    "status",
    "steps",
    "base_length",
    "widths",
    "passage_product",
    "min_passage",
    "twice_cover_index",
];

pub fn parse_stop(s: &str) -> Result<Stop<Rational>, CliError> {
    let bad = || {
        CliError::Input(format!(
            "stop rule must be steps:N, passages:K or length:p/q; got {s:?}"
        ))
    };
    let (kind, value) = s.split_once(':').ok_or_else(bad)?;
    match kind.trim() {
        "steps" => Ok(Stop::MaxSteps(value.trim().parse().map_err(|_| bad())?)),
        "passages" => Ok(Stop::AllPassagesAtLeast(value.trim().parse().map_err(|_| bad())?)),
        "length" => Ok(Stop::LengthBelow(parse_rational(value.trim()).ok_or_else(bad)?)),
        _ => Err(bad()),
    }
}

/// What a run produced, before anything is written.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Induction {
    pub table: Table,
    pub trace_lines: String,
    /// `None` when the stop rule fired.
    pub halted: Option<NcieError>,
}

fn status(h: &Option<NcieError>) -> &'static str {
    match h {
        None => "stopped",
        Some(NcieError::SaddleConnection { .. }) => "saddle_connection",
        Some(NcieError::CapExceeded(_)) => "cap_exceeded",
        Some(NcieError::IllFormedInduction(_)) => "ill_formed",
        Some(_) => "error",
    }
}

pub fn induce(x: &RationalNcie, stop: &Stop<Rational>, cap: usize, twice: bool) -> Result<Induction, CliError> {
    x.validate()
        .map_err(|v| CliError::Input(NcieError::Invalid(v).to_string()))?;
    let (trace, halted) = match rauzy_until(x, stop, cap) {
        Ok(t) => (t, None),
        Err(h) => (h.partial, Some(h.error)),
    };
    let p: BigPassageMatrix = passage_product(&trace);
    let twice_col = if twice {
        match twice_cover_index(x, cap) {
            Ok(k) => k.to_string(),
            Err(e) => status(&Some(e)).to_string(),
        }
    } else {
        String::new()
    };
    let mut table = Table::new(&COLUMNS);
    table.push(vec![
        status(&halted).into(),
        trace.len().to_string(),
        format_rational(&trace.last.base_length),
        trace
            .last
            .widths()
            .iter()
            .map(format_rational)
            .collect::<Vec<_>>()
            .join(";"),
        p.to_string(),
        p.min_entry().unwrap_or_else(|| BigInt::from(0)).to_string(),
        twice_col,
    ]);
    if let Some(e) = &halted {
        table.note(e.to_string());
    }
    Ok(Induction {
        table,
        trace_lines: trace.to_json_lines(),
        halted,
    })
}

pub fn load(a: &RauzyArgs, cfg: &mut ExperimentConfig) -> Result<RationalNcie, CliError> {
    if let Some(r) = &a.rotation {
        let (p, q) = parse_pair::<String>(r, "rotation")?;
        let w = |s: &str| parse_rational(s).ok_or_else(|| CliError::Input(format!("not a rational: {s:?}")));
        cfg.set("rotation", r);
        return Ok(Ncie::rotation(w(&p)?, w(&q)?));
    }
    let path = a.fixture.as_ref().expect("clap requires a fixture or a rotation");
    let text = read_input(path)?;
    cfg.input("fixture", &text);
    Ncie::parse_json(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn trace_path(a: &RauzyArgs, out: Option<&Path>) -> Option<PathBuf> {
    a.trace.clone().or_else(|| {
        out.map(|o| {
            let mut s = o.as_os_str().to_owned();
            s.push(".trace.jsonl");
            PathBuf::from(s)
        })
    })
}

/// Writes the trace (if a path is known) and the summary, then maps an early
/// stop to its exit code.
pub fn run_and_write(a: &RauzyArgs, g: &Global) -> Result<(), CliError> {
    let mut cfg = g.config("rauzy");
    let x = load(a, &mut cfg)?;
    let stop = match &a.stop {
        Some(s) => parse_stop(s)?,
        None => Stop::MaxSteps(usize::MAX),
    };
    cfg.set("stop", a.stop.clone().unwrap_or_default());
    cfg.set("twice", a.twice);
    let run = induce(&x, &stop, g.cap_steps, a.twice)?;
    if let Some(p) = trace_path(a, g.out.as_deref()) {
        emit(Some(&p), &run.trace_lines)?;
    }
    emit(g.out.as_deref(), &run.table.render(&cfg, g.format))?;
    match run.halted {
        None => Ok(()),
        Some(e @ NcieError::IllFormedInduction(_)) => Err(CliError::Input(e.to_string())),
        Some(e) => Err(CliError::EarlyStop(e.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rot(a: i64, b: i64) -> RationalNcie {
        Ncie::rotation(Rational::from_integer(a.into()), Rational::from_integer(b.into()))
    }

    #[test]
    fn stop_rules() {
        assert_eq!(parse_stop("steps:3").unwrap(), Stop::MaxSteps(3));
        assert_eq!(parse_stop("passages:2").unwrap(), Stop::AllPassagesAtLeast(2));
        assert!(matches!(parse_stop("length:1/10").unwrap(), Stop::LengthBelow(_)));
        assert!(parse_stop("forever").is_err());
    }

    #[test]
    fn eight_five_hits_a_saddle() {
        let r = induce(&rot(8, 5), &Stop::MaxSteps(100), 100, true).unwrap();
        assert!(matches!(r.halted, Some(NcieError::SaddleConnection { .. })));
        assert_eq!(r.table.column("steps").unwrap(), ["4"]);
        assert_eq!(r.table.column("widths").unwrap(), ["1;1"]);
        assert_eq!(r.table.column("twice_cover_index").unwrap(), ["4"]);
        assert_eq!(r.trace_lines.lines().count(), 4);
    }

    #[test]
    fn zero_steps() {
        let r = induce(&rot(89, 55), &Stop::MaxSteps(0), 100, false).unwrap();
        assert_eq!(r.halted, None);
        assert!(r.trace_lines.is_empty());
    }
}

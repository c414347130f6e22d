use std::fmt;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde_json::{json, Value};
use tensorcount::algebra::algebra_check;
use tensorcount::bruteforce::{burnside_count_with_budget, orbit_count_with_budget};
use tensorcount::characters::{character_table, count_invariants_kronecker, count_invariants_squares, kronecker_table};
use tensorcount::correlators::{correlator_1pt, correlator_2pt, eval_count, Observable};
use tensorcount::counting::{
    count_connected, count_invariants, count_read, count_with_budget, cross_checked_sequence, format_csv,
    format_json, format_oeis, sequence_with_budget, Method,
};
use tensorcount::symplectic::{k4_invariant, parse_monomial};
use tensorcount::Error;

use crate::args::{Cli, Command, Format, SequenceArgs};
use crate::input::parse_tuples;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(Error::BudgetExceeded { .. }) => 2,
            CliError::Core(Error::CrossCheck(_)) => 3,
            _ => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(s) => f.write_str(s),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

type Out = Result<String, CliError>;

fn half(tensors: usize) -> Result<usize, CliError> {
    if tensors == 0 || tensors % 2 == 1 {
        return Err(CliError::Usage(format!("--tensors must be a positive even number, got {tensors}")));
    }
    Ok(tensors / 2)
}

fn render_sequence(seq: &[(usize, BigUint)], format: Format) -> String {
    match format {
        Format::Oeis => format_oeis(seq),
        Format::Csv => format_csv(seq),
        Format::Json => format_json(seq) + "\n",
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values always serialize") + "\n"
}

pub fn run(cli: &Cli) -> Out {
    let budget = cli.max_brute;
    match &cli.command {
        Command::Count {
            rank,
            tensors,
            method,
            connected,
            format,
        } => {
            let n = half(*tensors)?;
            let method = Method::from(*method);
            let value = if *connected {
                sequence_with_budget(*rank, n, method, true, budget)?.pop().expect("n ≥ 1").1
            } else {
                count_with_budget(method, *rank, n, budget)?
            };
            Ok(match format {
                Format::Json => pretty(&json!({
                    "rank": rank,
                    "tensors": tensors,
                    "method": method.name(),
                    "connected": connected,
                    "value": value.to_string(),
                })),
                Format::Csv => format!("rank,tensors,value\n{rank},{tensors},{value}\n"),
                Format::Oeis => format!("{value}\n"),
            })
        }
        Command::Sequence {
            seq,
            connected,
            cross_check,
        } => sequence(seq, *connected, *cross_check, budget),
        Command::Connected { seq } => sequence(seq, true, false, budget),
        Command::KroneckerTable { m, even_only, format } => {
            let rows = kronecker_table(*m, *even_only)?;
            Ok(match format {
                Format::Csv => {
                    let mut out = String::from("r1,r2,r3,coefficient\n");
                    for (a, b, c, k) in &rows {
                        out.push_str(&format!("\"{a}\",\"{b}\",\"{c}\",{k}\n"));
                    }
                    out
                }
                Format::Oeis => rows.iter().map(|(a, b, c, k)| format!("{a} {b} {c} {k}\n")).collect(),
                Format::Json => pretty(&Value::Array(
                    rows.iter()
                        .map(|(a, b, c, k)| {
                            json!({"r1": a.parts(), "r2": b.parts(), "r3": c.parts(), "coefficient": k.to_string()})
                        })
                        .collect(),
                )),
            })
        }
        Command::CharacterTable { m, format } => {
            if *m == 0 {
                return Err(CliError::Usage("--m must be positive".into()));
            }
            let table = character_table(*m);
            Ok(match format {
                Format::Csv => table.to_csv(),
                Format::Oeis => table
                    .values
                    .iter()
                    .map(|row| row.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ") + "\n")
                    .collect(),
                Format::Json => pretty(&json!({
                    "irreps": table.irreps.iter().map(|p| p.parts()).collect::<Vec<_>>(),
                    "classes": table.classes.iter().map(|p| p.parts()).collect::<Vec<_>>(),
                    "values": table.values.iter()
                        .map(|row| row.iter().map(ToString::to_string).collect::<Vec<_>>())
                        .collect::<Vec<_>>(),
                })),
            })
        }
        Command::AlgebraCheck {
            rank,
            tensors,
            samples,
            seed,
        } => {
            let n = half(*tensors)?;
            let report = algebra_check(*rank, n, *samples, *seed)?;
            Ok(pretty(&serde_json::to_value(&report).expect("report serializes")))
        }
        Command::Correlator {
            rank,
            sigma,
            tau,
            tensors,
            one_point,
            at,
        } => correlator(*rank, sigma, tau.as_deref(), *tensors, *one_point, *at),
        Command::SymplecticK4 { big_n, coeff } => {
            let poly = k4_invariant(*big_n)?;
            match coeff {
                None => Ok(format!("terms {}\nnonzero {}\n", poly.num_terms(), !poly.is_zero())),
                Some(q) => {
                    let query = parse_monomial(q)?;
                    if query.len() == 4 {
                        Ok(format!("{}\n", poly.coefficient_of(&query)))
                    } else {
                        Ok(format!("{}\n", poly.coefficient(&query)))
                    }
                }
            }
        }
        Command::Selftest => selftest(budget),
    }
}

fn sequence(args: &SequenceArgs, connected: bool, cross_check: bool, budget: u128) -> Out {
    let seq = if cross_check {
        let plain = cross_checked_sequence(args.rank, args.max_n, budget)?;
        if connected {
            sequence_with_budget(args.rank, args.max_n, Method::Coset, true, budget)?
        } else {
            plain
        }
    } else {
        sequence_with_budget(args.rank, args.max_n, args.method.into(), connected, budget)?
    };
    Ok(render_sequence(&seq, args.format))
}

fn correlator(
    rank: Option<usize>,
    sigma: &str,
    tau: Option<&str>,
    tensors: Option<usize>,
    one_point: bool,
    at: Option<u64>,
) -> Out {
    if one_point == tau.is_some() {
        return Err(CliError::Usage(
            "give --tau for a two-point function or --one-point without it".into(),
        ));
    }
    let mut raw = vec![sigma];
    raw.extend(tau);
    let tuples = parse_tuples(&raw, tensors)?;
    if let Some(d) = rank {
        if let Some(t) = tuples.iter().find(|t| t.len() != d) {
            return Err(CliError::Usage(format!("expected {d} permutations, got {}", t.len())));
        }
    }
    let mut obs = tuples.into_iter().map(Observable::new).collect::<Result<Vec<_>, _>>()?;
    let poly = if one_point {
        correlator_1pt(&obs[0])?
    } else {
        let b = obs.pop().expect("two tuples");
        correlator_2pt(&obs[0], &b)?
    };
    let mut out = format!("{poly}\n");
    if let Some(big_n) = at {
        out.push_str(&format!("{}\n", eval_count(&poly, big_n)));
    }
    Ok(out)
}

#[derive(Clone, Copy)]
enum Check {
    Read(usize, usize),
    Kronecker(usize, usize),
    Squares(usize),
    Brute(usize, usize),
}

impl Check {
    fn label(self) -> String {
        match self {
            Check::Read(d, n) => format!("read = coset, d={d}, n<={n}"),
            Check::Kronecker(d, n) => format!("kronecker = coset, d={d}, n<={n}"),
            Check::Squares(n) => format!("squares = coset, d=3, n<={n}"),
            Check::Brute(d, n) => format!("orbits = burnside = coset, d={d}, n<={n}"),
        }
    }

    fn run(self, budget: u128) -> tensorcount::Result<()> {
        let (d, max_n) = match self {
            Check::Read(d, n) | Check::Kronecker(d, n) | Check::Brute(d, n) => (d, n),
            Check::Squares(n) => (3, n),
        };
        for n in 1..=max_n {
            let expect = count_invariants(d, n)?;
            let got = match self {
                Check::Read(..) => vec![count_read(d, n)?],
                Check::Kronecker(..) => vec![count_invariants_kronecker(d, n)?],
                Check::Squares(_) => vec![count_invariants_squares(n)?],
                Check::Brute(..) => vec![orbit_count_with_budget(d, n, budget)?, burnside_count_with_budget(d, n, budget)?],
            };
            if let Some(bad) = got.iter().find(|g| **g != expect) {
                return Err(Error::CrossCheck(format!(
                    "{}: got {bad} at n={n}, expected {expect}",
                    self.label()
                )));
            }
        }
        if let Check::Read(d, n) = self {
            let c = count_connected(d, n)?;
            if c > count_invariants(d, n)? {
                return Err(Error::CrossCheck(format!("connected count exceeds total at d={d}, n={n}")));
            }
        }
        Ok(())
    }
}

fn selftest(budget: u128) -> Out {
    let mut checks = Vec::new();
    for d in 3..=5 {
        checks.push(Check::Read(d, 8));
    }
    checks.extend([Check::Kronecker(3, 6), Check::Kronecker(4, 4), Check::Squares(6)]);
    checks.extend([Check::Brute(3, 2), Check::Brute(4, 2)]);
    let results: Vec<tensorcount::Result<()>> = checks.par_iter().map(|c| c.run(budget)).collect();
    let mut out = String::new();
    for (check, result) in checks.iter().zip(results) {
        result?;
        out.push_str(&format!("ok {}\n", check.label()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Usage("x".into()).exit_code(), 1);
        let budget = Error::BudgetExceeded {
            what: "x",
            needed: 2,
            budget: 1,
        };
        assert_eq!(CliError::Core(budget).exit_code(), 2);
        assert_eq!(CliError::Core(Error::CrossCheck("x".into())).exit_code(), 3);
        assert_eq!(CliError::Core(Error::InvalidArgument("x".into())).exit_code(), 1);
    }

    #[test]
    fn halving() {
        assert_eq!(half(6).unwrap(), 3);
        assert!(half(5).is_err());
        assert!(half(0).is_err());
    }

    #[test]
    fn selftest_passes() {
        let out = selftest(tensorcount::bruteforce::DEFAULT_BRUTE_BUDGET).unwrap();
        assert_eq!(out.lines().count(), 8);
        assert!(out.lines().all(|l| l.starts_with("ok ")));
    }
}

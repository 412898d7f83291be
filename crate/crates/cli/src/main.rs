use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use cardenc::circuit::{extract_circuit_with, LoopRemoval};
use cardenc::verifier::{
    self, check, check_circuit_equivalence_with, growth_report_with, size_record, verdict_record,
    KRule, Property, Verdict, SIZE_CSV_HEADER, VERDICT_CSV_HEADER,
};
use cardenc::{dimacs, par, CardinalityConstraint, EncoderKind, EncodingResult, SweepMode, Var};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "cardenc", version, about = "CNF encodings of at-most-k constraints, and what unit propagation does with them")]
struct Cli {
    /// Worker threads for exhaustive sweeps.
    #[arg(long, global = true, env = "CARDENC_WORKERS")]
    workers: Option<usize>,

    /// Run sweeps on the calling thread only.
    #[arg(long, global = true)]
    sequential: bool,

    /// Write the result here instead of standard output.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Instance {
    #[arg(long, value_parser = parse_encoder)]
    encoder: EncoderKind,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    /// Refuse encodings estimated above this many clauses.
    #[arg(long, default_value_t = cardenc::encoders::DEFAULT_MAX_CLAUSES)]
    max_clauses: u128,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the encoding in DIMACS CNF.
    Encode(Instance),
    /// Check one property of one encoding.
    Verify {
        #[command(flatten)]
        instance: Instance,
        #[arg(long)]
        property: Property,
        /// Input variable for circuit equivalence; all inputs when omitted.
        #[arg(long)]
        target: Option<u32>,
        /// Emit a CSV record instead of a sentence.
        #[arg(long)]
        csv: bool,
    },
    /// Every encoder and property for all n up to `--max-n` (each property's
    /// own cap applies) and every k, as CSV.
    VerifyAll {
        #[arg(long, default_value_t = 5)]
        max_n: usize,
    },
    /// Clause, auxiliary and literal counts over a list of sizes, as CSV.
    Sizes {
        #[arg(long, value_parser = parse_encoder)]
        encoder: EncoderKind,
        #[arg(long, value_delimiter = ',', required = true)]
        n_list: Vec<usize>,
        /// `half` for k = ceil(n/2), or a fixed bound.
        #[arg(long, default_value = "half")]
        k: KRule,
        #[arg(long, default_value_t = cardenc::encoders::DEFAULT_MAX_CLAUSES)]
        max_clauses: u128,
    },
    /// The dual-rail monotone circuit of an encoding.
    ExtractCircuit {
        #[command(flatten)]
        instance: Instance,
        /// Keep only the two outputs of this input variable.
        #[arg(long)]
        target: Option<u32>,
        #[arg(long, value_enum, default_value_t = Format::Gates)]
        format: Format,
        #[arg(long, value_enum, default_value_t = Loops::Layered)]
        loops: Loops,
    },
    /// Test a claim over its whole range and report every instance as CSV.
    CheckClaim {
        #[arg(long, value_enum)]
        claim: Claim,
        #[arg(long, default_value_t = verifier::INFORMED_PIC_MAX_N)]
        max_n: usize,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum Format {
    Gates,
    Dot,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum Loops {
    Layered,
    DepthFirst,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum Claim {
    /// Binary counting encodings detect every inconsistency once unassigned
    /// inputs default to false.
    InformedPic,
}

fn parse_encoder(s: &str) -> Result<EncoderKind, String> {
    s.parse().map_err(|e: cardenc::EncodeError| e.to_string())
}

/// Failures that are the caller's fault or exceed a guard: exit code 2.
#[derive(Debug)]
struct UsageError(String);

impl<E: std::error::Error> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

enum Status {
    Holds,
    Violated,
}

fn encode(i: &Instance) -> Result<EncodingResult, UsageError> {
    Ok(i.encoder.encode_with(&CardinalityConstraint::at_most(i.k, i.n), i.max_clauses)?)
}

fn input_var(e: &EncodingResult, index: u32) -> Result<Var, UsageError> {
    let v = Var::new(index)?;
    if !e.input_vars.contains(&v) {
        return Err(UsageError(format!("x{index} is not an input of this encoding")));
    }
    Ok(v)
}

fn csv_text<R: AsRef<[String]>>(header: [&str; 7], rows: impl IntoIterator<Item = R>) -> Result<String, UsageError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(r.as_ref())?;
    }
    let bytes = w.into_inner().map_err(|e| UsageError(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv of utf-8 fields"))
}

fn run(cli: &Cli, mode: SweepMode) -> Result<(String, Status), UsageError> {
    match &cli.command {
        Command::Encode(i) => Ok((dimacs::write_encoding(&encode(i)?), Status::Holds)),
        Command::Verify {
            instance,
            property,
            target,
            csv,
        } => {
            let e = encode(instance)?;
            let v = match (property, target) {
                (Property::CircuitEquivalence, Some(t)) => {
                    check_circuit_equivalence_with(&e, input_var(&e, *t)?, mode)?
                }
                (_, Some(_)) => return Err(UsageError("--target applies to circuit-equivalence only".into())),
                _ => check(&e, *property, mode)?,
            };
            let text = if *csv {
                csv_text(VERDICT_CSV_HEADER, [verdict_record(&e, &v)])?
            } else {
                format!("{} n={} k={}: {v}\n", e.encoder, instance.n, instance.k)
            };
            Ok((text, status(&[v])))
        }
        Command::VerifyAll { max_n } => {
            let mut rows = Vec::new();
            let mut verdicts = Vec::new();
            for property in Property::ALL {
                for kind in EncoderKind::ALL {
                    for n in 1..=(*max_n).min(property.max_n()) {
                        for k in 0..=n {
                            let e = kind.encode(&CardinalityConstraint::at_most(k, n))?;
                            let v = check(&e, property, mode)?;
                            rows.push(verdict_record(&e, &v));
                            verdicts.push(v);
                        }
                    }
                }
            }
            Ok((csv_text(VERDICT_CSV_HEADER, rows)?, status(&verdicts)))
        }
        Command::Sizes {
            encoder,
            n_list,
            k,
            max_clauses,
        } => {
            let rows = growth_report_with(*encoder, n_list, *k, *max_clauses)?;
            Ok((csv_text(SIZE_CSV_HEADER, rows.iter().map(size_record))?, Status::Holds))
        }
        Command::ExtractCircuit {
            instance,
            target,
            format,
            loops,
        } => {
            let e = encode(instance)?;
            let removal = match loops {
                Loops::Layered => LoopRemoval::Layered,
                Loops::DepthFirst => LoopRemoval::DepthFirstCut,
            };
            let x = extract_circuit_with(&e.formula, &e.input_vars, removal)?;
            let circuit = match target {
                Some(t) => {
                    let v = input_var(&e, *t)?;
                    x.circuit.restrict(&[v.positive(), v.negative()])?
                }
                None => x.circuit,
            };
            let text = match format {
                Format::Gates => circuit.to_gate_list(),
                Format::Dot => circuit.to_dot(),
            };
            Ok((text, Status::Holds))
        }
        Command::CheckClaim {
            claim: Claim::InformedPic,
            max_n,
        } => {
            let mut rows = Vec::new();
            let mut verdicts = Vec::new();
            for kind in EncoderKind::BINARY {
                for n in 1..=*max_n {
                    for k in 0..=n {
                        let e = kind.encode(&CardinalityConstraint::at_most(k, n))?;
                        let v = check(&e, Property::InformedPic, mode)?;
                        rows.push(verdict_record(&e, &v));
                        verdicts.push(v);
                    }
                }
            }
            let refuted = verdicts.iter().filter(|v| !v.holds).count();
            eprintln!(
                "informed-pic: {} instances, {}",
                verdicts.len(),
                if refuted == 0 {
                    "claim holds on all".to_string()
                } else {
                    format!("{refuted} counterexamples")
                }
            );
            Ok((csv_text(VERDICT_CSV_HEADER, rows)?, status(&verdicts)))
        }
    }
}

fn status(verdicts: &[Verdict]) -> Status {
    if verdicts.iter().all(|v| v.holds) {
        Status::Holds
    } else {
        Status::Violated
    }
}

fn emit(path: Option<&PathBuf>, text: &str) -> io::Result<()> {
    match path {
        Some(p) => File::create(p)?.write_all(text.as_bytes()),
        None => io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(w) = cli.workers {
        if w == 0 {
            eprintln!("error: --workers must be positive");
            return ExitCode::from(2);
        }
        par::configure_workers(w);
    }
    let mode = if cli.sequential {
        SweepMode::Sequential
    } else {
        SweepMode::Parallel
    };
    match run(&cli, mode) {
        Ok((text, status)) => {
            if let Err(e) = emit(cli.output.as_ref(), &text) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            match status {
                Status::Holds => ExitCode::SUCCESS,
                Status::Violated => ExitCode::from(1),
            }
        }
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

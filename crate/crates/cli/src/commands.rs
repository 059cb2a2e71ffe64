use std::fs;
use std::io::{self, Read, Write};
use std::path::Path;

use rayon::prelude::*;
use serde_json::{json, Value};

use twoqubit::geometry::{audit_record, boundary_point, classify, AuditOptions, GeometryError};
use twoqubit::invariants::{compute_invariants, det_pt_direct, InvariantVector};
use twoqubit::molien::{cross_check, invariant_dimension, two_qubit_weight_system, CrossCheckOptions};
use twoqubit::qstate::json::{parse_state_input, StateJson};
use twoqubit::qstate::{bloch_decompose, validate_state, DensityMatrix};
use twoqubit::series::{expand_poincare, Grading};
use twoqubit::verify::{det_formula_check, verify_all, VerifyConfig};

use crate::args::{
    Command, ExpandArgs, MolienCommand, ReportFormat, SeriesCommand, SeriesFormat, StateEncoding, VerifyCommand,
};

/// Why a command did not succeed.
#[derive(Debug)]
pub enum Failure {
    /// Bad arguments or unreadable input; exit status 2.
    Usage(String),
    /// A requested check ran and failed; exit status 1.
    Check(String),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Check(_) => 1,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Check(m) => m,
        }
    }
}

type Outcome = Result<(), Failure>;

fn io_failure(e: io::Error) -> Failure {
    Failure::Usage(format!("write failed: {e}"))
}

fn read_input(path: &Path) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Usage(format!("reading stdin: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Usage(format!("reading {}: {e}", path.display())))
    }
}

fn load_state(path: &Path, strict: bool) -> Result<DensityMatrix, Failure> {
    let text = read_input(path)?;
    let m = parse_state_input(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    validate_state(m, strict).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

/// 17 significant digits.
fn sig17(x: f64) -> String {
    format!("{x:.16e}")
}

fn write_line(out: &mut dyn Write, v: &Value) -> Outcome {
    writeln!(out, "{v}").map_err(io_failure)
}

pub fn run(command: Command, out: &mut dyn Write) -> Outcome {
    match command {
        Command::Invariants { state } => invariants(&state, out),
        Command::Classify { state, tol } => {
            let rho = load_state(&state, false)?;
            let c = classify(&rho, tol).map_err(|e| Failure::Usage(e.to_string()))?;
            let mut v = serde_json::to_value(c).expect("serializable");
            v["entangled"] = json!(c.det_pt < -tol && c.min_eigenvalue >= -tol);
            write_line(out, &v)
        }
        Command::BoundaryPoint { state, inner, tol, emit } => {
            let rho_out = load_state(&state, true)?;
            let rho_in = match inner {
                Some(p) => load_state(&p, true)?,
                None => DensityMatrix::maximally_mixed(),
            };
            let b = boundary_point(&rho_out, &rho_in, tol).map_err(|e| match e {
                GeometryError::SameSign { .. } => Failure::Usage(e.to_string()),
                _ => Failure::Check(e.to_string()),
            })?;
            let encoded = match emit {
                StateEncoding::Matrix => serde_json::to_value(StateJson::from_matrix(b.rho.matrix())),
                StateEncoding::Coordinates => serde_json::to_value(bloch_decompose(&b.rho)),
            }
            .expect("serializable");
            write_line(
                out,
                &json!({ "lambda": b.lambda, "det_pt": b.det_pt, "steps": b.steps, "state": encoded }),
            )
        }
        Command::Verify { which } => verify(which, out),
        Command::AuditSmoothness {
            samples,
            seed,
            delta,
            root_tol,
            gradient_tol,
        } => {
            let opts = AuditOptions {
                delta,
                root_tol,
                gradient_tol,
                ..AuditOptions::default()
            };
            audit(samples, seed, &opts, out)
        }
        Command::Series {
            which: SeriesCommand::Expand(args),
        } => series(&args, out),
        Command::Molien { which } => molien(which, out),
    }
}

fn invariants(path: &Path, out: &mut dyn Write) -> Outcome {
    let rho = load_state(path, false)?;
    let v = compute_invariants(&bloch_decompose(&rho));
    let mut fields: Vec<String> = InvariantVector::NAMES
        .iter()
        .zip(v.to_array())
        .map(|(name, x)| format!("\"{name}\":{}", sig17(x)))
        .collect();
    fields.push(format!("\"det_pt\":{}", sig17(det_pt_direct(&rho))));
    writeln!(out, "{{{}}}", fields.join(",")).map_err(io_failure)
}

fn verify(which: VerifyCommand, out: &mut dyn Write) -> Outcome {
    match which {
        VerifyCommand::DetFormula { samples, seed, tol } => {
            if samples == 0 {
                return Err(Failure::Usage("--samples must be positive".into()));
            }
            let r = det_formula_check(samples, samples.div_ceil(10), samples.div_ceil(10), seed);
            let passed = r.max_deviation <= tol;
            write_line(
                out,
                &json!({
                    "samples": r.samples,
                    "max_deviation": r.max_deviation,
                    "tolerance": tol,
                    "passed": passed,
                }),
            )?;
            if passed {
                Ok(())
            } else {
                Err(Failure::Check(format!("max deviation {:e} exceeds {tol:e}", r.max_deviation)))
            }
        }
        VerifyCommand::All { seed, format, timings } => {
            let results = verify_all(&VerifyConfig { seed });
            match format {
                ReportFormat::Json => {
                    let rows: Vec<Value> = results
                        .iter()
                        .map(|r| {
                            let mut v = serde_json::to_value(r).expect("serializable");
                            if !timings {
                                let obj = v.as_object_mut().expect("struct serializes to an object");
                                obj.remove("seconds");
                            }
                            v
                        })
                        .collect();
                    write_line(out, &Value::Array(rows))?;
                }
                ReportFormat::Human => {
                    for r in &results {
                        let status = if r.passed { "PASS" } else { "FAIL" };
                        let line = if timings {
                            format!("{:>2}  {status}  {:<40}  {:>8.2} s  {}", r.id, r.name, r.seconds, r.detail)
                        } else {
                            format!("{:>2}  {status}  {:<40}  {}", r.id, r.name, r.detail)
                        };
                        writeln!(out, "{line}").map_err(io_failure)?;
                    }
                }
            }
            let failed = results.iter().filter(|r| !r.passed).count();
            if failed == 0 {
                Ok(())
            } else {
                Err(Failure::Check(format!("{failed} criteria failed")))
            }
        }
    }
}

/// Records per parallel batch; each batch is printed before the next starts.
const AUDIT_BATCH: u64 = 256;

fn audit(samples: usize, seed: u64, opts: &AuditOptions, out: &mut dyn Write) -> Outcome {
    let mut failures = 0usize;
    let n = samples as u64;
    let mut start = 0;
    while start < n {
        let end = (start + AUDIT_BATCH).min(n);
        let batch: Vec<_> = (start..end).into_par_iter().map(|i| (i, audit_record(seed, i, opts))).collect();
        for (i, r) in batch {
            match r {
                Ok(rec) => {
                    if !rec.passed {
                        failures += 1;
                    }
                    write_line(out, &serde_json::to_value(&rec).expect("serializable"))?;
                }
                Err(e) => {
                    failures += 1;
                    eprintln!("sample {i}: {e}");
                }
            }
        }
        out.flush().map_err(io_failure)?;
        start = end;
    }
    if failures == 0 {
        Ok(())
    } else {
        Err(Failure::Check(format!("{failures} of {samples} audit samples failed")))
    }
}

fn series(args: &ExpandArgs, out: &mut dyn Write) -> Outcome {
    let grading = match args.grading.as_str() {
        "1" => Grading::Single,
        _ => Grading::Triple,
    };
    let table = expand_poincare(grading, args.max_degree);
    match (grading, args.format) {
        (Grading::Single, SeriesFormat::Json) => {
            let coeffs: Vec<String> = table.diagonal().iter().map(|c| c.to_string()).collect();
            write_line(
                out,
                &json!({ "grading": 1, "max_degree": args.max_degree, "coefficients": coeffs }),
            )
        }
        (Grading::Single, SeriesFormat::Csv) => {
            writeln!(out, "degree,coefficient").map_err(io_failure)?;
            for (d, c) in table.diagonal().iter().enumerate() {
                writeln!(out, "{d},{c}").map_err(io_failure)?;
            }
            Ok(())
        }
        (Grading::Triple, SeriesFormat::Json) => {
            let terms: Vec<Value> = table
                .iter()
                .map(|(e, c)| json!({ "degrees": e, "coefficient": c.to_string() }))
                .collect();
            write_line(
                out,
                &json!({ "grading": 3, "max_degree": args.max_degree, "terms": terms }),
            )
        }
        (Grading::Triple, SeriesFormat::Csv) => {
            writeln!(out, "d1,d2,d3,coefficient").map_err(io_failure)?;
            for (e, c) in table.iter() {
                writeln!(out, "{},{},{},{c}", e[0], e[1], e[2]).map_err(io_failure)?;
            }
            Ok(())
        }
    }
}

fn molien(which: MolienCommand, out: &mut dyn Write) -> Outcome {
    match which {
        MolienCommand::Dim { d1, d2, d3 } => {
            let dim = invariant_dimension(&two_qubit_weight_system(), &[d1, d2, d3])
                .map_err(|e| Failure::Usage(e.to_string()))?;
            writeln!(out, "{dim}").map_err(io_failure)
        }
        MolienCommand::CrossCheck {
            max_degree,
            lie_max_degree,
            lie_cap,
        } => {
            let opts = CrossCheckOptions {
                max_total_degree: max_degree,
                lie_max_total_degree: lie_max_degree,
                lie_cap,
            };
            let report = cross_check(&opts).map_err(|e| Failure::Check(e.to_string()))?;
            for e in &report.entries {
                write_line(out, &serde_json::to_value(e).expect("serializable"))?;
            }
            let sums: Vec<String> = report.degree_sums().iter().map(|s| s.to_string()).collect();
            let mismatches = report.mismatches().count();
            write_line(
                out,
                &json!({
                    "multidegrees": report.entries.len(),
                    "lie_checked": report.lie_checked(),
                    "degree_sums": sums,
                    "mismatches": mismatches,
                }),
            )?;
            if mismatches == 0 {
                Ok(())
            } else {
                Err(Failure::Check(format!("{mismatches} multidegrees disagree")))
            }
        }
    }
}

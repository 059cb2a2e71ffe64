//! One line per acceptance criterion, each at its stated tolerance and time
//! budget. Exits nonzero if any criterion fails.

use std::process::ExitCode;

use num_bigint::BigInt;
use twoqubit::series::{expand_poincare, Grading};
use twoqubit::verify::{run_criterion, VerifyConfig, CRITERIA, SINGLE_SERIES_COEFFICIENTS};

/// Transcribed separately from the library constant.
const PRINTED_SINGLE: &str = "1,0,3,2,10,7,29,25,73,74,172,187,381,431,785,920,1539,1827,2878,3441,5151,6185,8887,10666";

/// Terms quoted individually from the printed trigraded expansion.
const PRINTED_TRIGRADED: [([u32; 3], u32); 6] =
    [([0, 0, 3], 1), ([1, 1, 1], 1), ([0, 0, 4], 2), ([0, 2, 4], 4), ([2, 2, 2], 4), ([0, 0, 6], 3)];

/// Cross-checks the library's own reference data before trusting it.
fn reference_data_agrees() -> Result<(), String> {
    let printed: Vec<u64> = PRINTED_SINGLE.split(',').map(|x| x.parse().unwrap()).collect();
    if printed != SINGLE_SERIES_COEFFICIENTS {
        return Err("library coefficient table differs from the printed list".into());
    }
    let t = expand_poincare(Grading::Triple, 6);
    for (e, c) in PRINTED_TRIGRADED {
        if t.coeff(&e) != &BigInt::from(c) {
            return Err(format!("coefficient of {e:?} is {}, printed {c}", t.coeff(&e)));
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cfg = VerifyConfig::default();
    let mut failed = 0;
    match reference_data_agrees() {
        Ok(()) => println!("reference  PASS  printed values agree with library tables"),
        Err(e) => {
            failed += 1;
            println!("reference  FAIL  {e}");
        }
    }
    for (id, _) in CRITERIA {
        let r = run_criterion(id, &cfg);
        if !r.passed {
            failed += 1;
        }
        println!(
            "criterion {:>2}  {}  {}: {}  ({:.2} s of {:.0} s)",
            r.id,
            if r.passed { "PASS" } else { "FAIL" },
            r.name,
            r.detail,
            r.seconds,
            r.budget_seconds
        );
    }
    if failed == 0 {
        println!("all acceptance criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("{failed} acceptance check(s) failed");
        ExitCode::FAILURE
    }
}

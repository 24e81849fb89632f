//! Validating and running an experiment config in-process.

use holofloat::experiment::{execute, validate, ExperimentConfig};

fn main() {
    let bad = r#"{"kind":"float-holo","domain":{"kind":"disk"},"delta_grid":[0.001,0.01],"seed":1}"#;
    println!("violations: {:?}", validate(&ExperimentConfig::from_json(bad).unwrap()));

    let good = r#"{"kind":"float-holo","domain":{"kind":"disk"},"delta_grid":[0.01,0.001,0.0001],
                  "samples":100000,"family_size":32,"seed":1}"#;
    match execute(&ExperimentConfig::from_json(good).unwrap()) {
        Ok(a) => {
            print!("{}", a.csv);
            println!("fitted limit {}", a.summary["result"]["fitted_limit"]);
        }
        Err(e) => eprintln!("{e} (exit code {})", e.exit_code()),
    }
}

// The `wittkit` command line, driven in-process.

use std::error::Error;

pub fn run_example() -> Result<String, Box<dyn Error>> {
    let mut out = String::new();
    for args in [
        vec!["witt", "teich", "2", "--set", "{1,2,3}", "--ring", "Z"],
        vec!["witt", "add", "1,2", "3,4", "--set", "div2", "--ring", "Z/8"],
        vec!["basis", "teich", "2", "--set", "{1,2,3}"],
        vec!["drwz", "dlog", "--set", "div8"],
        vec!["drwz", "mul", "V2", "dV3", "--set", "div6"],
        vec!["gamma-inv", "1,1,0", "--n", "2"],
        vec!["ptypical", "tau", "--p", "2", "--n", "2"],
    ] {
        let mut stdout = Vec::new();
        let mut stderr = Vec::new();
        let code = wittkit::cli::run(std::iter::once("wittkit").chain(args.iter().copied()), &mut stdout, &mut stderr);
        if code != 0 {
            return Err(format!("{args:?} exited with {code}: {}", String::from_utf8_lossy(&stderr)).into());
        }
        out += &format!("$ wittkit {}\n{}", args.join(" "), String::from_utf8(stdout)?);
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    print!("{}", run_example()?);
    Ok(())
}

//! Running a fixture script in a session and reporting its expectations.
//! Pass a script path, or the conversions fixture is used.

use std::path::PathBuf;

use convkit::repl::{run_script, Options, Session};

fn main() -> std::io::Result<()> {
    let path = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(|| {
        PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/conversions.script")
    });
    let text = std::fs::read_to_string(&path)?;
    let mut session = Session::new(Options::default());
    if let Some(dir) = path.parent() {
        session.set_base_dir(dir);
    }
    let report = run_script(&mut session, &text);
    print!("{}", report.transcript);
    println!("{} expectations, {} failed", report.expects, report.failures.len());
    for f in &report.failures {
        println!("{f}");
    }
    Ok(())
}

use std::io::{self, BufRead, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use convkit::repl::{run_script, Options, Session, Store, DEFAULT_MAX_STEPS};

#[derive(Parser)]
#[command(name = "convkit", version, about = "Conversions, formula conversions and tactics over an LCF kernel")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Interactive session reading commands from stdin.
    Repl(SessionArgs),
    /// Run a script and check its `expect:` lines.
    Run {
        script: PathBuf,
        #[command(flatten)]
        args: SessionArgs,
        /// Print the transcript even when every expectation holds.
        #[arg(long)]
        transcript: bool,
    },
    /// Load a theory file, proving its theorems again.
    CheckTheory { file: PathBuf },
}

#[derive(Args)]
struct SessionArgs {
    /// Theory file to load before the first command; may repeat.
    #[arg(long = "theory")]
    theories: Vec<PathBuf>,
    #[arg(long)]
    trace: bool,
    /// Inference budget per command; 0 means unlimited.
    #[arg(long, default_value_t = DEFAULT_MAX_STEPS)]
    max_steps: u64,
    #[arg(long)]
    audit: bool,
    /// Accept stored theorems without proving them again.
    #[arg(long)]
    trust_store: bool,
}

impl SessionArgs {
    fn session(&self) -> Result<Session, String> {
        let mut s = Session::new(Options {
            trace: self.trace,
            max_steps: (self.max_steps > 0).then_some(self.max_steps),
            audit: self.audit,
            trust_store: self.trust_store,
        });
        for t in &self.theories {
            s.load_theory(t).map_err(|e| format!("{}: {e}", t.display()))?;
        }
        Ok(s)
    }
}

fn repl(mut s: Session) -> ExitCode {
    let stdin = io::stdin();
    let mut out = io::stdout();
    let mut pending = String::new();
    loop {
        let _ = write!(out, "{}", if pending.is_empty() { "#" } else { "  " });
        let _ = out.flush();
        let mut line = String::new();
        match stdin.lock().read_line(&mut line) {
            Ok(0) | Err(_) => return ExitCode::SUCCESS,
            Ok(_) => {}
        }
        let line = line.trim_end();
        if pending.is_empty() && matches!(line.trim(), "quit" | "exit") {
            return ExitCode::SUCCESS;
        }
        pending.push_str(line);
        pending.push(' ');
        // A trailing backslash continues the command on the next line.
        if let Some(p) = pending.trim_end().strip_suffix('\\') {
            pending = format!("{p} ");
            continue;
        }
        let cmd = std::mem::take(&mut pending);
        let res = s.eval(&cmd);
        if !res.is_empty() {
            let _ = writeln!(out, "{res}");
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.cmd {
        Cmd::Repl(args) => match args.session() {
            Ok(s) => repl(s),
            Err(e) => {
                eprintln!("{e}");
                ExitCode::from(2)
            }
        },
        Cmd::Run { script, args, transcript } => {
            let text = match std::fs::read_to_string(&script) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("{}: {e}", script.display());
                    return ExitCode::from(2);
                }
            };
            let mut s = match args.session() {
                Ok(s) => s,
                Err(e) => {
                    eprintln!("{e}");
                    return ExitCode::from(2);
                }
            };
            if let Some(dir) = script.parent() {
                s.set_base_dir(if dir.as_os_str().is_empty() { Path::new(".") } else { dir });
            }
            let rep = run_script(&mut s, &text);
            if transcript || !rep.passed() {
                print!("{}", rep.transcript);
            }
            for f in &rep.failures {
                eprintln!("{f}");
            }
            eprintln!("{}: {} of {} expectations held", script.display(), rep.expects - rep.failures.len(), rep.expects);
            if rep.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Cmd::CheckTheory { file } => match Store::new(false).load_file(&file) {
            Ok(thy) => {
                println!("theory {} ok: {} items", thy.name(), thy.items().len());
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("{e}");
                ExitCode::FAILURE
            }
        },
    }
}

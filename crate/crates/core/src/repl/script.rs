//! Scripts: session commands interleaved with `expect:` lines.
//!
//! A line starting in column 0 begins a command; indented lines continue
//! it. `-- ...` outside quotes is a comment. `expect: TEXT` must equal the
//! next unchecked output line of the preceding command (after trimming).

use std::fmt::Write as _;

use super::Session;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScriptItem {
    Command(String),
    Expect(String),
}

#[derive(Clone, Debug, Default)]
pub struct ScriptReport {
    /// Every command echoed as `#cmd` followed by its output.
    pub transcript: String,
    pub expects: usize,
    /// One entry per failed expectation.
    pub failures: Vec<String>,
}

impl ScriptReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn strip_comment(line: &str) -> &str {
    let mut in_quote = None;
    let b = line.as_bytes();
    for (i, &c) in b.iter().enumerate() {
        match (in_quote, c) {
            (None, b'"') | (None, b'\'') => in_quote = Some(c),
            (Some(q), _) if q == c => in_quote = None,
            (None, b'-') if b.get(i + 1) == Some(&b'-') => return &line[..i],
            _ => {}
        }
    }
    line
}

/// Splits script text into commands and expectations.
pub fn split_commands(text: &str) -> Vec<ScriptItem> {
    let mut items: Vec<ScriptItem> = Vec::new();
    for raw in text.lines() {
        let trimmed = raw.trim();
        if let Some(rest) = trimmed.strip_prefix("expect:") {
            items.push(ScriptItem::Expect(rest.trim().to_string()));
            continue;
        }
        let line = strip_comment(raw).trim_end();
        if line.trim().is_empty() {
            continue;
        }
        let indented = line.starts_with(char::is_whitespace);
        match items.last_mut() {
            Some(ScriptItem::Command(c)) if indented => {
                c.push(' ');
                c.push_str(line.trim());
            }
            _ => items.push(ScriptItem::Command(line.trim().to_string())),
        }
    }
    items
}

/// Runs a script in `session`, checking every expectation.
pub fn run_script(session: &mut Session, text: &str) -> ScriptReport {
    let mut rep = ScriptReport::default();
    let mut output: Vec<String> = Vec::new();
    let mut cursor = 0;
    let mut last_cmd = String::new();
    for item in split_commands(text) {
        match item {
            ScriptItem::Command(cmd) => {
                let out = session.eval(&cmd);
                let _ = writeln!(rep.transcript, "#{cmd}");
                output = out.lines().map(|l| l.trim_end().to_string()).collect();
                for l in &output {
                    let _ = writeln!(rep.transcript, "{l}");
                }
                cursor = 0;
                last_cmd = cmd;
            }
            ScriptItem::Expect(want) => {
                rep.expects += 1;
                let got = output.get(cursor).map(|s| s.trim());
                if got != Some(want.as_str()) {
                    rep.failures.push(format!(
                        "after `{last_cmd}`:\n  expected: {want}\n  got:      {}",
                        got.unwrap_or("<no more output>")
                    ));
                }
                cursor += 1;
            }
        }
    }
    rep
}

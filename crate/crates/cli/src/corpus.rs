//! The fixture runner. `corpus.txt` holds one case per line,
//! `<command and arguments> => <expected text>`, where multi-line output
//! is joined with ` | `. Arguments naming files in the corpus directory
//! are resolved against it.

use std::path::Path;

use clap::Parser;
use serde_json::json;

use crate::args::Cli;
use crate::{execute, input, CliError, CliResult, Outcome};

fn flatten(text: &str) -> String {
    text.lines().map(str::trim_end).filter(|l| !l.is_empty()).collect::<Vec<_>>().join(" | ")
}

pub fn run_corpus(dir: &Path) -> CliResult {
    let manifest = dir.join("corpus.txt");
    let text = input::read(&manifest)?;
    let mut report = String::new();
    let mut cases = Vec::new();
    let mut failed = 0;
    for (no, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((cmd, expected)) = line.split_once("=>") else {
            return Err(CliError::Failed(format!("{}:{}: missing '=>'", manifest.display(), no + 1)));
        };
        let (cmd, expected) = (cmd.trim(), expected.trim());
        let mut argv = vec!["cremona".to_string()];
        for tok in cmd.split_whitespace() {
            let p = dir.join(tok);
            argv.push(if p.is_file() { p.display().to_string() } else { tok.to_string() });
        }
        let got = match Cli::try_parse_from(&argv) {
            Err(e) => format!("usage error: {}", e.kind()),
            Ok(cli) => match execute(&cli) {
                Ok(o) => flatten(&o.text),
                Err(e) => format!("error: {}", flatten(&format!("{e:?}"))),
            },
        };
        let ok = got == expected;
        if !ok {
            failed += 1;
        }
        report.push_str(&if ok {
            format!("ok    {cmd}\n")
        } else {
            format!("FAIL  {cmd}\n      expected {expected}\n      got      {got}\n")
        });
        cases.push(json!({ "case": cmd, "expected": expected, "got": got, "pass": ok }));
    }
    report.push_str(&format!("{} of {} passed\n", cases.len() - failed, cases.len()));
    if failed > 0 {
        return Err(CliError::Failed(report));
    }
    Ok(Outcome::new(report, json!({ "cases": cases })))
}

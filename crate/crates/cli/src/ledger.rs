use std::fmt::Write as _;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::config::Format;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Skipped => "skipped",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub claim: String,
    pub anchor: String,
    pub verdict: Verdict,
    pub witness: String,
    /// Wall time in milliseconds, recorded only when timings are requested.
    pub ms: Option<u64>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Ledger {
    pub entries: Vec<Entry>,
}

impl Ledger {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.verdict != Verdict::Fail)
    }

    pub fn get(&self, claim: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.claim == claim)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("ledger serializes");
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(["claim", "anchor", "verdict", "witness", "ms"]).expect("in-memory write");
                for e in &self.entries {
                    let ms = e.ms.map(|m| m.to_string()).unwrap_or_default();
                    w.write_record([&e.claim, &e.anchor, e.verdict.as_str(), &e.witness, &ms]).expect("in-memory write");
                }
                String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
            }
            Format::Text => self.text(),
        }
    }

    fn text(&self) -> String {
        let width = self.entries.iter().map(|e| e.claim.len()).max().unwrap_or(0);
        let mut s = String::new();
        for e in &self.entries {
            let ms = e.ms.map(|m| format!(" ({m} ms)")).unwrap_or_default();
            let _ = writeln!(s, "{:<7} {:<width$}  {}{ms}", e.verdict.as_str().to_uppercase(), e.claim, e.witness);
            let _ = writeln!(s, "        {:<width$}  \"{}\"", "", e.anchor);
        }
        let count = |v| self.entries.iter().filter(|e| e.verdict == v).count();
        let _ = writeln!(
            s,
            "{} claims: {} pass, {} fail, {} skipped",
            self.entries.len(),
            count(Verdict::Pass),
            count(Verdict::Fail),
            count(Verdict::Skipped)
        );
        s
    }
}

/// Writes text to a file, or to stdout when no path is given.
pub fn emit(text: &str, path: Option<&std::path::Path>) -> std::io::Result<()> {
    match path {
        Some(p) => std::fs::write(p, text),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Ledger {
        let entry = |claim: &str, verdict, ms| Entry { claim: claim.into(), anchor: "x, \"y\"".into(), verdict, witness: "w".into(), ms };
        Ledger { entries: vec![entry("a.one", Verdict::Pass, None), entry("a.two", Verdict::Skipped, Some(3))] }
    }

    #[test]
    fn json_round_trips() {
        let l = sample();
        assert_eq!(serde_json::from_str::<Ledger>(&l.render(Format::Json)).unwrap(), l);
        assert!(l.render(Format::Json).contains("\"ms\": null"));
    }

    #[test]
    fn csv_quotes_and_counts() {
        let s = sample().render(Format::Csv);
        assert_eq!(s.lines().count(), 3);
        assert!(s.contains("\"x, \"\"y\"\"\""));
    }

    #[test]
    fn skipped_does_not_fail_a_run() {
        let mut l = sample();
        assert!(l.passed());
        l.entries[0].verdict = Verdict::Fail;
        assert!(!l.passed());
    }
}

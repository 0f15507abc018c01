//! Report rendering and atomic file output.

use anyhow::{Context, Result};
use hzlab::registry::ClaimEntry;
use hzlab::VerificationReport;
use std::io::Write;
use std::path::Path;

/// Writes through a sibling temporary file and renames it into place, so a
/// reader never sees a partial report.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).with_context(|| format!("creating a temporary file in {}", dir.display()))?;
    tmp.write_all(contents.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

pub fn emit(out: Option<&Path>, contents: &str) -> Result<()> {
    match out {
        Some(path) => write_atomic(path, contents),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(contents.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

pub fn json_text(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

/// One row per (claim, counterexample); a claim without counterexamples gets a
/// single row with empty instance and witness.
pub fn reports_csv(reports: &[VerificationReport]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["claim", "anchor", "status", "universe", "instance", "witness"])?;
    for r in reports {
        let status = serde_json::to_value(r.status)?.as_str().unwrap_or_default().to_string();
        let universe = r.universe.to_string();
        if r.counterexamples.is_empty() {
            w.write_record([r.claim.as_str(), &r.anchor, &status, &universe, "", ""])?;
        }
        for c in &r.counterexamples {
            w.write_record([r.claim.as_str(), &r.anchor, &status, &universe, &c.instance, &c.witness.to_string()])?;
        }
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

pub fn list_csv(entries: &[ClaimEntry]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["claim", "anchor", "module"])?;
    for e in entries {
        w.write_record([e.id, e.anchor, e.module])?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

pub fn list_text(entries: &[ClaimEntry]) -> String {
    entries.iter().map(|e| format!("{}\t{}\t{}\n", e.id, e.anchor, e.module)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn csv_rows_per_instance() {
        let mut a = VerificationReport::new("x-1", "a, with comma");
        a.check("i1", Some(json!({"v": 1})));
        a.check("i2", Some(json!(2)));
        let mut b = VerificationReport::new("x-2", "b");
        b.check("i3", None);
        let text = reports_csv(&[a.finish(), b.finish()]).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 4);
        assert_eq!(lines[1], "x-1,\"a, with comma\",falsified,2,i1,\"{\"\"v\"\":1}\"");
        assert_eq!(lines[3], "x-2,b,verified,1,,");
    }

    #[test]
    fn atomic_write_replaces() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("r.json");
        write_atomic(&path, "one").unwrap();
        write_atomic(&path, "two").unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), "two");
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }
}

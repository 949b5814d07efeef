//! Report assembly: deterministic ordering, summary counts, JSON encoding.

use qcongr::claims::{Params, VerificationResult};
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub total: usize,
    pub held: usize,
    pub failed: usize,
    pub conjectural: usize,
    pub errors: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub tool_version: String,
    pub started_at: String,
    pub results: Vec<VerificationResult>,
    pub errors: Vec<RunError>,
    pub summary: Summary,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunError {
    pub claim_id: String,
    pub params: Params,
    pub message: String,
}

impl Report {
    pub fn assemble(
        started_at: String,
        mut results: Vec<VerificationResult>,
        mut errors: Vec<RunError>,
    ) -> Report {
        results.sort_by(|a, b| {
            (&a.claim_id, &a.params).cmp(&(&b.claim_id, &b.params))
        });
        errors.sort_by(|a, b| (&a.claim_id, &a.params).cmp(&(&b.claim_id, &b.params)));
        let held = results.iter().filter(|r| r.holds).count();
        let failed = results.iter().filter(|r| !r.holds).count();
        let conjectural = results.iter().filter(|r| r.conjectural).count();
        let summary = Summary {
            total: results.len(),
            held,
            failed,
            conjectural,
            errors: errors.len(),
        };
        Report {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            started_at,
            results,
            errors,
            summary,
        }
    }

    /// Exit status: 0 when every non-conjectural claim holds, 1 when one
    /// fails (or errors prevented some from running), 2 when nothing ran at
    /// all. Conjectural failures never flip the code.
    pub fn exit_code(&self) -> i32 {
        if self.results.is_empty() && !self.errors.is_empty() {
            return 2;
        }
        let nonconjectural_failure = self.results.iter().any(|r| !r.holds && !r.conjectural);
        if nonconjectural_failure || !self.errors.is_empty() {
            1
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn print_text(&self) {
        for r in &self.results {
            let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let status = if r.holds { "holds" } else { "FAILS" };
            let conj = if r.conjectural { " [conjectural]" } else { "" };
            println!(
                "{:<16} {:<28} {}{} ({}) [{} ms]",
                r.claim_id,
                params.join(" "),
                status,
                conj,
                r.reason,
                r.elapsed_ms
            );
            if !r.holds && r.conjectural {
                println!(
                    "  ** potential counterexample: {} at {} **",
                    r.claim_id,
                    params.join(" ")
                );
            }
        }
        for e in &self.errors {
            let params: Vec<String> = e.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
            println!("{:<16} {:<28} ERROR: {}", e.claim_id, params.join(" "), e.message);
        }
        let s = &self.summary;
        println!(
            "\n{} checks: {} held, {} failed, {} conjectural, {} errors",
            s.total, s.held, s.failed, s.conjectural, s.errors
        );
        let conj_failures = self
            .results
            .iter()
            .filter(|r| !r.holds && r.conjectural)
            .count();
        if conj_failures > 0 {
            println!("** {conj_failures} conjectural check(s) FAILED: potential counterexamples — see above **");
        }
    }
}

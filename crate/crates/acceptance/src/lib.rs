//! Bookkeeping for the acceptance suite: each criterion collects checks and
//! prints one PASS/FAIL line.

use std::panic::{catch_unwind, AssertUnwindSafe};

pub struct Criterion {
    pub id: u32,
    pub title: &'static str,
    ok: bool,
    checks: usize,
}

impl Criterion {
    pub fn new(id: u32, title: &'static str) -> Self {
        Self { id, title, ok: true, checks: 0 }
    }

    /// Records one sub-check and prints it indented under the criterion.
    pub fn check(&mut self, ok: bool, detail: impl AsRef<str>) {
        self.checks += 1;
        self.ok &= ok;
        println!("    {} {}", if ok { "ok  " } else { "FAIL" }, detail.as_ref());
    }

    pub fn passed(&self) -> bool {
        self.ok && self.checks > 0
    }
}

/// Runs every criterion (a panic counts as a failure), prints the verdict
/// lines and returns the number of failed criteria.
pub fn run_all(criteria: &[(u32, &'static str, fn(&mut Criterion))]) -> usize {
    let mut verdicts = Vec::new();
    for &(id, title, f) in criteria {
        println!("criterion {id}: {title}");
        let mut c = Criterion::new(id, title);
        if let Err(p) = catch_unwind(AssertUnwindSafe(|| f(&mut c))) {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            c.check(false, format!("panicked: {msg}"));
        }
        let line = format!("{} criterion {id}: {title} ({} checks)", if c.passed() { "PASS" } else { "FAIL" }, c.checks);
        println!("{line}");
        verdicts.push((c.passed(), line));
    }
    println!("\nacceptance summary");
    for (_, line) in &verdicts {
        println!("{line}");
    }
    verdicts.iter().filter(|v| !v.0).count()
}

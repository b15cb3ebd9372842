//! Bookkeeping for the acceptance run: every criterion is evaluated in full
//! and reported on one line, failures included.

#[derive(Debug, Default)]
pub struct Criterion {
    pub checks: u64,
    pub failures: Vec<String>,
}

impl Criterion {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// `criterion N name: PASS|FAIL (...)`, showing at most three failures.
    pub fn line(&self, number: u32, name: &str, tolerance: &str) -> String {
        if self.passed() {
            format!("criterion {number} {name}: PASS ({} checks, tolerance {tolerance})", self.checks)
        } else {
            let shown: Vec<&str> = self.failures.iter().take(3).map(String::as_str).collect();
            format!(
                "criterion {number} {name}: FAIL ({} of {} checks failed, tolerance {tolerance}; {})",
                self.failures.len(),
                self.checks,
                shown.join("; ")
            )
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lines() {
        let mut c = Criterion::new();
        c.check(true, String::new);
        assert_eq!(c.line(1, "x", "0"), "criterion 1 x: PASS (1 checks, tolerance 0)");
        c.check(false, || "bad".into());
        assert!(c.line(1, "x", "0").contains("FAIL (1 of 2 checks failed"));
    }
}

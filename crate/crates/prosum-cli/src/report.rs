//! Deterministic report documents. Lines appear in insertion order, keys are
//! stable, and nothing time- or machine-dependent is written, so reports are
//! byte-identical across runs with the same inputs and seed. Timing goes to
//! stderr only.

use prosum::mat::Mat;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
        }
    }
}

#[derive(Debug, Clone)]
enum Line {
    Param(String, String),
    Info(String, String),
    Check(String, bool, String),
    Witness(String, String),
}

/// A report under construction: task echo, per-check records, witnesses.
/// The overall verdict is PASS exactly when every check passed. A failing
/// report carries a verbatim reproduction document when one is attached.
#[derive(Debug, Clone)]
pub struct Report {
    task: String,
    lines: Vec<Line>,
    repro: Option<String>,
}

impl Report {
    pub fn new(task: &str) -> Self {
        Report {
            task: task.to_string(),
            lines: Vec::new(),
            repro: None,
        }
    }

    /// Attach the input document; it is emitted verbatim in a `repro` block
    /// when the verdict is FAIL.
    pub fn attach_repro(&mut self, document: &str) {
        self.repro = Some(document.to_string());
    }

    pub fn param(&mut self, key: &str, value: impl ToString) {
        self.lines
            .push(Line::Param(key.to_string(), value.to_string()));
    }

    pub fn info(&mut self, key: &str, value: impl ToString) {
        self.lines
            .push(Line::Info(key.to_string(), value.to_string()));
    }

    pub fn check(&mut self, name: &str, pass: bool, detail: impl ToString) {
        self.lines
            .push(Line::Check(name.to_string(), pass, detail.to_string()));
    }

    pub fn witness_matrix(&mut self, name: &str, m: &Mat) {
        self.lines
            .push(Line::Witness(name.to_string(), render_matrix(m)));
    }

    pub fn verdict(&self) -> Verdict {
        if self
            .lines
            .iter()
            .all(|l| !matches!(l, Line::Check(_, false, _)))
        {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.verdict() {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str("prosum-report v1\n");
        out.push_str(&format!("tool = prosum {}\n", env!("CARGO_PKG_VERSION")));
        out.push_str(&format!("task = {}\n", self.task));
        for line in &self.lines {
            match line {
                Line::Param(k, v) => out.push_str(&format!("param {} = {}\n", k, v)),
                Line::Info(k, v) => out.push_str(&format!("info {} = {}\n", k, v)),
                Line::Check(name, pass, detail) => {
                    if detail.is_empty() {
                        out.push_str(&format!(
                            "check {} = {}\n",
                            name,
                            if *pass { "PASS" } else { "FAIL" }
                        ));
                    } else {
                        out.push_str(&format!(
                            "check {} = {} ({})\n",
                            name,
                            if *pass { "PASS" } else { "FAIL" },
                            detail
                        ));
                    }
                }
                Line::Witness(name, text) => {
                    out.push_str(&format!("witness {} = {}\n", name, text))
                }
            }
        }
        if self.verdict() == Verdict::Fail {
            if let Some(doc) = &self.repro {
                out.push_str("repro {\n");
                out.push_str(doc);
                if !doc.ends_with('\n') {
                    out.push('\n');
                }
                out.push_str("}\n");
            }
        }
        out.push_str(&format!("verdict = {}\n", self.verdict().as_str()));
        out
    }
}

pub fn render_matrix(m: &Mat) -> String {
    let mut out = String::from("[");
    for r in 0..m.rows() {
        if r > 0 {
            out.push(',');
        }
        out.push('[');
        for c in 0..m.cols() {
            if c > 0 {
                out.push(',');
            }
            out.push_str(&m.get(r, c).to_string());
        }
        out.push(']');
    }
    out.push(']');
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use prosum::ring::ChainRing;

    #[test]
    fn render_is_stable_and_verdict_tracks_checks() {
        let mut r = Report::new("demo");
        r.param("seed", 7);
        r.check("first", true, "ok");
        r.info("dims", "[1, 2]");
        assert_eq!(r.verdict(), Verdict::Pass);
        assert_eq!(r.exit_code(), 0);
        r.check("second", false, "broken");
        assert_eq!(r.verdict(), Verdict::Fail);
        assert_eq!(r.exit_code(), 1);
        let text = r.render();
        assert!(text.starts_with("prosum-report v1\n"));
        assert!(text.ends_with("verdict = FAIL\n"));
        assert!(text.contains("check first = PASS (ok)"));
    }

    #[test]
    fn matrix_rendering() {
        let ring = ChainRing::field(2).unwrap();
        let m = Mat::identity(ring, 2);
        assert_eq!(render_matrix(&m), "[[1,0],[0,1]]");
        assert_eq!(render_matrix(&Mat::zero(ring, 0, 3)), "[]");
    }
}

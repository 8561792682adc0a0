/// Line-oriented run log: one line per stage with its parameters and
/// counts, plus trial logs from retry loops. Deterministic for fixed
/// inputs, so reports can be compared byte-for-byte across runs.
#[derive(Debug, Clone, Default)]
pub struct PipelineReport {
    lines: Vec<String>,
}

impl PipelineReport {
    pub fn new() -> Self {
        PipelineReport::default()
    }

    pub fn stage(&mut self, name: &str, details: impl AsRef<str>) {
        self.lines
            .push(format!("stage {} | {}", name, details.as_ref()));
    }

    pub fn note(&mut self, line: impl Into<String>) {
        self.lines.push(line.into());
    }

    pub fn extend(&mut self, lines: &[String]) {
        self.lines.extend(lines.iter().cloned());
    }

    pub fn lines(&self) -> &[String] {
        &self.lines
    }

    pub fn text(&self) -> String {
        let mut out = self.lines.join("\n");
        out.push('\n');
        out
    }

    /// True if some stage line mentions `needle`.
    pub fn mentions(&self, needle: &str) -> bool {
        self.lines.iter().any(|l| l.contains(needle))
    }
}

use std::io::Write;
use std::path::PathBuf;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

/// Settings a run was made with; embedded in every report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub precision: u32,
    pub tol_exp: i32,
    /// Largest truth-table arity accepted, as log2 of the table length.
    pub table_guard_log2: usize,
    pub format: Format,
    pub quick: bool,
    /// Left out of the report so identical runs written to different paths still match.
    #[serde(skip)]
    pub output: Option<PathBuf>,
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), String> {
        if self.precision < 64 {
            return Err(format!("precision must be at least 64 bits, got {}", self.precision));
        }
        if self.table_guard_log2 == 0 {
            return Err("table guard must be positive".into());
        }
        Ok(())
    }
}

/// One verified statement.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    /// Short description of the claim being checked.
    #[serde(rename = "paper_ref")]
    pub reference: String,
    pub pass: bool,
    pub measured: String,
    pub expected: String,
    pub tolerance: String,
}

impl Check {
    pub fn new(name: impl Into<String>, reference: impl Into<String>, pass: bool) -> Self {
        Check {
            name: name.into(),
            reference: reference.into(),
            pass,
            measured: String::new(),
            expected: String::new(),
            tolerance: "exact".into(),
        }
    }

    pub fn measured(mut self, v: impl ToString) -> Self {
        self.measured = v.to_string();
        self
    }

    pub fn expected(mut self, v: impl ToString) -> Self {
        self.expected = v.to_string();
        self
    }

    pub fn tolerance(mut self, v: impl ToString) -> Self {
        self.tolerance = v.to_string();
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub config: RunConfig,
    pub version: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(config: RunConfig, checks: Vec<Check>) -> Self {
        Report {
            config,
            version: crate::VERSION.to_string(),
            checks,
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn render(&self) -> Result<String, String> {
        match self.config.format {
            Format::Json => serde_json::to_string_pretty(self)
                .map(|mut s| {
                    s.push('\n');
                    s
                })
                .map_err(|e| e.to_string()),
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                for c in &self.checks {
                    w.serialize(c).map_err(|e| e.to_string())?;
                }
                let bytes = w.into_inner().map_err(|e| e.to_string())?;
                String::from_utf8(bytes).map_err(|e| e.to_string())
            }
        }
    }

    /// Writes to the configured path, or nowhere when none was given.
    pub fn write(&self) -> Result<(), String> {
        let Some(path) = &self.config.output else {
            return Ok(());
        };
        let text = self.render()?;
        let mut f = std::fs::File::create(path).map_err(|e| format!("{}: {e}", path.display()))?;
        f.write_all(text.as_bytes()).map_err(|e| format!("{}: {e}", path.display()))
    }

    /// One line per check for the terminal.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let mark = if c.pass { "PASS" } else { "FAIL" };
            out.push_str(&format!("{mark} {} measured={} expected={}\n", c.name, c.measured, c.expected));
        }
        out
    }
}

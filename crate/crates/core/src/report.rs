//! Machine-readable verdicts: named checks with exact obstruction forms.
//!
//! Serialization is deterministic — identical inputs produce byte-identical
//! reports. Informational checks (recorded for inspection, e.g. whether an SKT
//! structure happens to be Kaehler) do not count against the verdict.

use crate::form::Form;
use crate::frame::CoframeAlgebra;
use serde::Serialize;

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub holds: bool,
    pub obstruction: Option<String>,
    pub assumptions: Vec<String>,
    pub notes: Vec<String>,
    #[serde(skip)]
    pub informational: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, holds: bool) -> Check {
        Check {
            name: name.into(),
            holds,
            obstruction: None,
            assumptions: Vec::new(),
            notes: Vec::new(),
            informational: false,
        }
    }

    /// A check that holds iff the given form vanishes; the form is the exact
    /// obstruction otherwise.
    pub fn obstruction(name: impl Into<String>, form: &Form, frame: &CoframeAlgebra) -> Check {
        let holds = form.is_zero();
        Check {
            name: name.into(),
            holds,
            obstruction: if holds {
                None
            } else {
                Some(crate::model::print::format_form(form, frame))
            },
            assumptions: Vec::new(),
            notes: Vec::new(),
            informational: false,
        }
    }

    pub fn info(mut self) -> Check {
        self.informational = true;
        self.notes.push("informational".to_string());
        self
    }

    pub fn assuming(mut self, a: impl Into<String>) -> Check {
        self.assumptions.push(a.into());
        self
    }

    pub fn noting(mut self, n: impl Into<String>) -> Check {
        self.notes.push(n.into());
        self
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub model: String,
    pub checks: Vec<Check>,
    pub version: String,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Report {
        Report {
            command: command.into(),
            model: String::new(),
            checks: Vec::new(),
            version: ENGINE_VERSION.to_string(),
        }
    }

    pub fn with_model(mut self, hash: impl Into<String>) -> Report {
        self.model = hash.into();
        self
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    /// Prefix every check name from `other`, then absorb it.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for mut c in other.checks {
            c.name = format!("{prefix}.{}", c.name);
            self.checks.push(c);
        }
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Verdict over the non-informational checks.
    pub fn holds(&self) -> bool {
        self.checks
            .iter()
            .filter(|c| !c.informational)
            .all(|c| c.holds)
    }

    pub fn emit_json(&self) -> String {
        // serde_json preserves struct field order, so output is deterministic
        serde_json::to_string_pretty(self).expect("report serialization")
    }

    pub fn emit_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command: {}\n", self.command));
        if !self.model.is_empty() {
            out.push_str(&format!("model:   {}\n", self.model));
        }
        let width = self
            .checks
            .iter()
            .map(|c| c.name.len())
            .max()
            .unwrap_or(0)
            .max(5);
        for c in &self.checks {
            let verdict = if c.holds { "holds" } else { "FAILS" };
            out.push_str(&format!("  {:<width$}  {}", c.name, verdict));
            if let Some(ob) = &c.obstruction {
                out.push_str(&format!("  obstruction: {ob}"));
            }
            out.push('\n');
            for a in &c.assumptions {
                out.push_str(&format!("  {:<width$}  assumes: {a}\n", ""));
            }
            for n in &c.notes {
                out.push_str(&format!("  {:<width$}  note: {n}\n", ""));
            }
        }
        out.push_str(&format!(
            "verdict: {}\n",
            if self.holds() { "holds" } else { "FAILS" }
        ));
        out
    }
}

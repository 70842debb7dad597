use serde::Serialize;
use serde_json::Value;

pub const REPORT_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    Violation,
    InputError,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::Violation => 1,
            Status::InputError => 2,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct InstanceInfo {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub sha256: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ErrorInfo {
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub line: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub column: Option<usize>,
}

/// One named check: `pass` iff its residual is exactly zero / its witness
/// list is empty.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rep: Option<String>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub detail: Value,
}

impl Check {
    pub fn new(name: impl Into<String>, rep: Option<&str>, pass: bool, detail: impl Serialize) -> Check {
        Check {
            name: name.into(),
            rep: rep.map(str::to_string),
            pass,
            detail: serde_json::to_value(detail).expect("report values serialize"),
        }
    }
}

/// The structured report written to stdout. Everything in it is a function
/// of the instance bytes, the command line and the seed.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub report_version: u32,
    pub tool_version: &'static str,
    pub command: String,
    pub instance: Option<InstanceInfo>,
    pub seed: u64,
    pub options: Value,
    pub status: Status,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub results: Vec<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorInfo>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
}

impl Report {
    pub fn new(command: &str, seed: u64, options: Value) -> Report {
        Report {
            report_version: REPORT_VERSION,
            tool_version: env!("CARGO_PKG_VERSION"),
            command: command.to_string(),
            instance: None,
            seed,
            options,
            status: Status::Ok,
            checks: Vec::new(),
            results: Vec::new(),
            error: None,
            timing_ms: None,
        }
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn result(&mut self, v: impl Serialize) {
        self.results.push(serde_json::to_value(v).expect("report values serialize"));
    }

    /// Sets the status from the checks unless an error was already recorded.
    pub fn settle(&mut self) {
        if self.status == Status::Ok && self.checks.iter().any(|c| !c.pass) {
            self.status = Status::Violation;
        }
    }

    pub fn fail_input(&mut self, message: impl Into<String>, line: Option<usize>, column: Option<usize>) {
        self.status = Status::InputError;
        self.error = Some(ErrorInfo { message: message.into(), line, column });
    }

    /// A few lines for a human reader.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        let name = self.instance.as_ref().and_then(|i| i.name.as_deref()).unwrap_or("-");
        let passed = self.checks.iter().filter(|c| c.pass).count();
        out.push_str(&format!(
            "xmodcoh {} on {name}: {:?}, {passed}/{} checks pass\n",
            self.command,
            self.status,
            self.checks.len()
        ));
        if let Some(e) = &self.error {
            match (e.line, e.column) {
                (Some(l), Some(c)) => out.push_str(&format!("  error at line {l}, column {c}: {}\n", e.message)),
                _ => out.push_str(&format!("  error: {}\n", e.message)),
            }
        }
        for c in self.checks.iter().filter(|c| !c.pass).take(10) {
            let rep = c.rep.as_deref().map(|r| format!(" [{r}]")).unwrap_or_default();
            out.push_str(&format!("  FAIL {}{rep}: {}\n", c.name, c.detail));
        }
        for r in &self.results {
            out.push_str(&format!("  {}\n", summarize(r)));
        }
        if let Some(ms) = self.timing_ms {
            out.push_str(&format!("  {ms} ms\n"));
        }
        out
    }
}

fn summarize(v: &Value) -> String {
    match v {
        Value::Object(m) => m
            .iter()
            .filter(|(_, x)| !x.is_array() && !x.is_object())
            .map(|(k, x)| format!("{k}={x}"))
            .collect::<Vec<_>>()
            .join(" "),
        other => other.to_string(),
    }
}

use serde::Serialize;
use serde_json::Value;

/// Output of one command: text lines for people, a payload for machines.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub input: String,
    pub passed: bool,
    #[serde(skip)]
    pub lines: Vec<String>,
    /// Printed verbatim instead of the framed text report.
    #[serde(skip)]
    pub raw: Option<String>,
    pub payload: Value,
}

impl Report {
    pub fn new(command: &str, input: String) -> Report {
        Report {
            command: command.to_string(),
            input,
            passed: true,
            lines: Vec::new(),
            raw: None,
            payload: Value::Null,
        }
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    pub fn check(&mut self, ok: bool) {
        self.passed &= ok;
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
            s.push('\n');
            return s;
        }
        if let Some(raw) = &self.raw {
            return raw.clone();
        }
        let mut out = format!("om {} ({})\n", self.command, self.input);
        for l in &self.lines {
            out.push_str(l);
            out.push('\n');
        }
        out.push_str(if self.passed {
            "result: pass\n"
        } else {
            "result: fail\n"
        });
        out
    }
}

pub fn verdict(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "fail"
    }
}

pub fn yes_no(ok: bool) -> &'static str {
    if ok {
        "yes"
    } else {
        "no"
    }
}

/// `(a,b,c)`.
pub fn tuple<T: ToString>(items: &[T]) -> String {
    format!(
        "({})",
        items.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
    )
}

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    /// An asserted identity failed.
    Fail,
    /// The job did not validate.
    Invalid,
    /// A mathematical precondition does not hold.
    Precondition,
    Internal,
}

impl Status {
    pub fn exit_code(&self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Invalid => 2,
            Status::Precondition => 3,
            Status::Fail | Status::Internal => 4,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    NotCovered,
    Inconclusive,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Verdict {
        if b {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn word(&self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::NotCovered => "not covered",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

impl From<absval::abhyankar::Verdict> for Verdict {
    fn from(v: absval::abhyankar::Verdict) -> Self {
        match v {
            absval::abhyankar::Verdict::Pass => Verdict::Pass,
            absval::abhyankar::Verdict::Fail => Verdict::Fail,
            absval::abhyankar::Verdict::NotCovered => Verdict::NotCovered,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub verdict: Verdict,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, verdict: Verdict, detail: impl Into<String>) -> Check {
        Check { name: name.into(), verdict, detail: detail.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorInfo {
    pub name: String,
    pub message: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pointer: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub command: Option<String>,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorInfo>,
    #[serde(default)]
    pub checks: Vec<Check>,
    #[serde(default)]
    pub summary: Vec<String>,
    #[serde(default)]
    pub result: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<u64>,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }

    pub fn invalid(command: Option<String>, pointer: &str, message: &str) -> Report {
        Report {
            schema: crate::job::SCHEMA_VERSION,
            command,
            status: Status::Invalid,
            error: Some(ErrorInfo { name: "SchemaViolation".into(), message: message.into(), pointer: Some(pointer.into()) }),
            checks: Vec::new(),
            summary: Vec::new(),
            result: Value::Null,
            timestamp: None,
        }
    }
}

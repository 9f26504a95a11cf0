use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

use crate::cache::key_of;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Partial,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass | Status::Partial => 0,
            Status::Fail => 1,
        }
    }
}

impl From<posgeom::delpezzo::Status> for Status {
    fn from(s: posgeom::delpezzo::Status) -> Self {
        use posgeom::delpezzo::Status as S;
        match s {
            S::Pass => Status::Pass,
            S::Fail => Status::Fail,
            S::Partial => Status::Partial,
        }
    }
}

/// Run-dependent data; excluded from the reproducible part of a report.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Meta {
    pub wall_time_ms: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cache: Option<String>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub timings_ms: BTreeMap<String, f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs_digest: String,
    pub status: Status,
    pub results: Value,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witness: Vec<String>,
    pub meta: Meta,
}

impl Report {
    pub fn new(command: &str, inputs: &Value, status: Status, results: Value) -> Self {
        let canon = serde_json::to_vec(inputs).expect("inputs serialize");
        Report {
            command: command.to_string(),
            inputs_digest: key_of(&[command.as_bytes(), &canon]),
            status,
            results,
            witness: Vec::new(),
            meta: Meta::default(),
        }
    }

    pub fn with_witness(mut self, w: Vec<String>) -> Self {
        self.witness = w;
        if self.status == Status::Fail && self.witness.is_empty() {
            self.witness.push("no further detail".into());
        }
        self
    }
}

//! JSON report types printed by the `sl2jsr` binary.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct OptimalJson {
    pub kind: String,
    pub words: Vec<String>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct JsrJson {
    pub trace: String,
    pub root: u32,
    pub approx: String,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct ClassifyJson {
    pub case: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reason: Option<String>,
    pub swapped: bool,
    pub optimal: Option<OptimalJson>,
    pub jsr: Option<JsrJson>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct OracleJson {
    pub max_words: Vec<String>,
    pub trace: String,
    pub root: u32,
    pub approx: String,
    pub max_len: usize,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct VerifyJson {
    pub case: String,
    pub agree: Option<bool>,
    pub detail: String,
    pub oracle: Option<OracleJson>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct LemmaJson {
    pub checked: u64,
    pub failed: u64,
    pub counterexample: Option<String>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct LemmasJson {
    pub seed: u64,
    pub trials: usize,
    pub violations: u64,
    pub lemmas: BTreeMap<String, LemmaJson>,
}

//! File loading and the report envelope written by every CLI verb.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::covers::CoverFile;
use crate::error::{Error, Result};
use crate::fixtures;
use crate::gbbcore::{FiniteQuotient, GbbPresentation, QuotientFile};
use crate::intsets::PeriodicSet;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Everything a run read, in a form that reproduces the run.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Inputs {
    pub command: String,
    pub options: BTreeMap<String, Value>,
    /// Parsed contents of every file read, keyed by path.
    pub files: BTreeMap<String, Value>,
}

impl Inputs {
    pub fn new(command: &str) -> Self {
        Inputs { command: command.into(), ..Default::default() }
    }

    pub fn option(&mut self, key: &str, value: impl Serialize) {
        self.options.insert(key.into(), serde_json::to_value(value).unwrap_or(Value::Null));
    }

    /// Reads a JSON file and records its contents.
    pub fn read<T: DeserializeOwned>(&mut self, path: &Path) -> Result<T> {
        let text = fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        let value: Value =
            serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        self.files.insert(path.display().to_string(), value.clone());
        serde_json::from_value(value).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
    }

    /// SHA-256 of the canonical JSON form (object keys sorted).
    pub fn digest(&self) -> String {
        let bytes = serde_json::to_vec(self).expect("inputs serialize");
        hex::encode(Sha256::digest(bytes))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CertificateMode {
    Exact,
    Window,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportEnvelope {
    pub tool: String,
    pub version: String,
    pub inputs_digest: String,
    pub inputs: Inputs,
    pub verdicts: BTreeMap<String, Value>,
    pub certificate_modes: BTreeMap<String, CertificateMode>,
    pub witnesses: Vec<Value>,
    pub data: Value,
}

impl ReportEnvelope {
    pub fn new(inputs: Inputs) -> Self {
        ReportEnvelope {
            tool: "gbb".into(),
            version: TOOL_VERSION.into(),
            inputs_digest: inputs.digest(),
            inputs,
            verdicts: BTreeMap::new(),
            certificate_modes: BTreeMap::new(),
            witnesses: Vec::new(),
            data: Value::Null,
        }
    }

    pub fn verdict(&mut self, key: &str, value: impl Serialize) {
        self.verdicts.insert(key.into(), serde_json::to_value(value).unwrap_or(Value::Null));
    }

    pub fn mode(&mut self, key: &str, mode: CertificateMode) {
        self.certificate_modes.insert(key.into(), mode);
    }

    pub fn witness(&mut self, value: impl Serialize) {
        self.witnesses.push(serde_json::to_value(value).unwrap_or(Value::Null));
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("envelope serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

/// Where a quotient comes from: a named fixture, or cover + `S` + quotient files.
#[derive(Debug, Clone, Default)]
pub struct QuotientSource<'a> {
    pub fixture: Option<&'a str>,
    pub cover: Option<&'a Path>,
    pub s: Option<&'a str>,
    pub quotient: Option<&'a Path>,
}

impl QuotientSource<'_> {
    pub fn presentation(&self, inputs: &mut Inputs) -> Result<GbbPresentation> {
        if let Some(name) = self.fixture {
            inputs.option("fixture", name);
            return fixtures::presentation(name);
        }
        let cover_path = self.cover.ok_or_else(|| Error::Parse("give --fixture or --cover with --s".into()))?;
        let cover: CoverFile = inputs.read(cover_path)?;
        let s = self.s.ok_or_else(|| Error::Parse("--cover needs --s".into()))?;
        inputs.option("s", s);
        let s: PeriodicSet = s.parse()?;
        GbbPresentation::new(cover.build()?, s)
    }

    pub fn load(&self, inputs: &mut Inputs) -> Result<FiniteQuotient> {
        if let (Some(name), None) = (self.fixture, self.quotient) {
            inputs.option("fixture", name);
            return fixtures::quotient(name);
        }
        let pres = Arc::new(self.presentation(inputs)?);
        let path = self.quotient.ok_or_else(|| Error::Parse("--cover needs --quotient".into()))?;
        let file: QuotientFile = inputs.read(path)?;
        file.build(pres)
    }
}

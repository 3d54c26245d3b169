//! Bundled worked-example seeds and user fixture directories.

use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use crate::cluster::ClusterSeed;
use crate::error::{Error, Result};
use crate::seed::LPSeed;

const BUNDLED: &[(&str, &str)] = &[
    ("ex2_6", include_str!("../../fixtures/ex2_6.json")),
    ("ex2_16", include_str!("../../fixtures/ex2_16.json")),
    ("ex2_24", include_str!("../../fixtures/ex2_24.json")),
    ("ex4_11", include_str!("../../fixtures/ex4_11.json")),
    ("ex4_24", include_str!("../../fixtures/ex4_24.json")),
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FixtureKind {
    Lp,
    Cluster,
}

#[derive(Clone, Debug, Serialize)]
pub struct Fixture {
    pub name: String,
    pub kind: FixtureKind,
    pub description: String,
    /// `bundled` or the file path.
    pub source: String,
    #[serde(skip)]
    pub text: String,
}

impl Fixture {
    fn from_text(name: &str, source: String, text: String) -> Result<Self> {
        let v: Value = serde_json::from_str(&text)?;
        let kind = if v.get("B").is_some() { FixtureKind::Cluster } else { FixtureKind::Lp };
        let description = v.get("description").and_then(Value::as_str).unwrap_or("").to_string();
        Ok(Fixture { name: name.to_string(), kind, description, source, text })
    }

    pub fn json(&self) -> Value {
        serde_json::from_str(&self.text).expect("fixture parsed when loaded")
    }

    /// Recorded expectations, or `null`.
    pub fn expected(&self) -> Value {
        self.json().get("expected").cloned().unwrap_or(Value::Null)
    }

    pub fn lp_seed(&self) -> Result<LPSeed> {
        LPSeed::from_json_str(&self.text)
    }

    pub fn cluster_seed(&self) -> Result<ClusterSeed> {
        ClusterSeed::from_json_str(&self.text)
    }
}

pub fn bundled() -> Vec<Fixture> {
    BUNDLED
        .iter()
        .map(|(name, text)| Fixture::from_text(name, "bundled".into(), text.to_string()).expect("bundled fixtures are valid JSON"))
        .collect()
}

pub fn bundled_fixture(name: &str) -> Option<Fixture> {
    bundled().into_iter().find(|f| f.name == name)
}

/// Bundled fixtures followed by every `*.json` file in `dir`, sorted by name.
pub fn list_fixtures(dir: Option<&Path>) -> Result<Vec<Fixture>> {
    let mut out = bundled();
    if let Some(dir) = dir {
        let mut extra = Vec::new();
        for entry in std::fs::read_dir(dir)? {
            let path = entry?.path();
            if path.extension().and_then(|e| e.to_str()) != Some("json") {
                continue;
            }
            let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or_default().to_string();
            let text = std::fs::read_to_string(&path)?;
            extra.push(
                Fixture::from_text(&name, path.display().to_string(), text)
                    .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?,
            );
        }
        extra.sort_by(|a, b| a.name.cmp(&b.name));
        out.extend(extra);
    }
    Ok(out)
}

//! JSON code files.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::code::Code;
use crate::error::{Error, Result};
use crate::pattern::{CodeParams, SchedulingPattern};

pub const SCHEMA_VERSION: u32 = 1;

/// On-disk form of a code. Field order is the serialized key order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeFile {
    pub schema_version: u32,
    #[serde(rename = "M")]
    pub channels: usize,
    #[serde(rename = "L")]
    pub length: usize,
    #[serde(rename = "w")]
    pub weight: usize,
    #[serde(default)]
    pub restricted: bool,
    pub patterns: Vec<Vec<[usize; 2]>>,
    #[serde(default)]
    pub provenance: String,
}

impl CodeFile {
    pub fn from_code(code: &Code, restricted: bool, provenance: impl Into<String>) -> Self {
        let p = code.params();
        CodeFile {
            schema_version: SCHEMA_VERSION,
            channels: p.channels,
            length: p.length,
            weight: p.weight,
            restricted,
            patterns: code
                .patterns()
                .iter()
                .map(|s| s.canonicalize(p.length).entries().iter().map(|&(c, t)| [c, t]).collect())
                .collect(),
            provenance: provenance.into(),
        }
    }

    /// Builds the code, checking parameters, weights and ranges. Repeated
    /// codewords are kept so that verification can report them.
    pub fn to_code(&self) -> Result<Code> {
        let params = CodeParams::new(self.channels, self.length, self.weight)
            .map_err(|e| Error::Validation(e.to_string()))?;
        let mut patterns = Vec::with_capacity(self.patterns.len());
        for (k, entries) in self.patterns.iter().enumerate() {
            if entries.len() != params.weight {
                return Err(Error::Validation(format!(
                    "pattern {k} has {} entries, expected w = {}",
                    entries.len(),
                    params.weight
                )));
            }
            let p = SchedulingPattern::new(entries.iter().map(|&[c, t]| (c, t)))
                .and_then(|p| p.check(&params).map(|_| p))
                .map_err(|e| Error::Validation(format!("pattern {k}: {e}")))?;
            patterns.push(p.canonicalize(params.length));
        }
        Code::unchecked(params, patterns)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("code file serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let value: serde_json::Value = serde_json::from_str(text)
            .map_err(|e| Error::Parse(format!("line {}, column {}: {e}", e.line(), e.column())))?;
        match value.get("schema_version").and_then(|v| v.as_u64()) {
            Some(v) if v == u64::from(SCHEMA_VERSION) => {}
            Some(v) => return Err(Error::Parse(format!("unsupported schema_version {v}"))),
            None => return Err(Error::Parse("missing or non-integer field `schema_version`".into())),
        }
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("line {}, column {}: {e}", e.line(), e.column())))
    }
}

pub fn save_file(file: &CodeFile, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, file.to_json())?;
    Ok(())
}

pub fn save(code: &Code, path: impl AsRef<Path>) -> Result<()> {
    save_file(&CodeFile::from_code(code, false, ""), path)
}

pub fn load_file(path: impl AsRef<Path>) -> Result<CodeFile> {
    CodeFile::from_json(&fs::read_to_string(path)?)
}

pub fn load(path: impl AsRef<Path>) -> Result<Code> {
    load_file(path)?.to_code()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::catalog::example1;

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.json");
        let code = example1();
        save(&code, &path).unwrap();
        assert_eq!(load(&path).unwrap(), code);
    }

    #[test]
    fn stable_text() {
        let file = CodeFile::from_code(&example1(), false, "example1");
        let text = file.to_json();
        assert!(text.starts_with("{\n  \"schema_version\": 1,\n  \"M\": 3,\n  \"L\": 5,\n  \"w\": 3,"));
        assert_eq!(CodeFile::from_json(&text).unwrap(), file);
    }

    #[test]
    fn wrong_weight_is_validation_error() {
        let text = r#"{"schema_version":1,"M":1,"L":5,"w":3,"patterns":[[[0,0],[0,1],[0,2],[0,3]]]}"#;
        let file = CodeFile::from_json(text).unwrap();
        assert!(matches!(file.to_code(), Err(Error::Validation(_))));
    }

    #[test]
    fn unknown_schema_is_parse_error() {
        let text = r#"{"schema_version":99,"M":1,"L":5,"w":3,"patterns":[]}"#;
        assert!(matches!(CodeFile::from_json(text), Err(Error::Parse(_))));
    }

    #[test]
    fn syntax_error_has_position() {
        let err = CodeFile::from_json("{\n  \"schema_version\": 1,\n  \"M\": ,\n}").unwrap_err();
        match err {
            Error::Parse(msg) => assert!(msg.starts_with("line 3, column"), "{msg}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn duplicates_survive_loading() {
        let text = r#"{"schema_version":1,"M":1,"L":7,"w":3,"patterns":[[[0,0],[0,1],[0,3]],[[0,1],[0,2],[0,4]]]}"#;
        let code = CodeFile::from_json(text).unwrap().to_code().unwrap();
        assert_eq!(code.len(), 2);
        assert_eq!(code.patterns()[0], code.patterns()[1]);
    }
}

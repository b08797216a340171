//! Model files: a small JSON schema tying together named coordinates, an
//! operator, a unity, an Euler field and structure constants, with every
//! entry written as an expression string.
//!
//! Top-level keys: `variables`, `mode`, `L`, `e`, `E`, `circ`, `meta`.
//! `mode` is `"poly"`, `"series"` (order 8) or `{"series": N}`. All tensor
//! blocks are optional, but dimensions must agree with `variables` whenever
//! present, and `circ` must be symmetric in its lower index pair.

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fman::{FmanError, Multiplication};
use crate::parser::{parse_expression, ParseError};
use crate::ring::{Elem, Mode};
use crate::tensor::{OperatorField, VectorField};

pub const DEFAULT_SERIES_ORDER: u32 = 8;

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("model declares no variables")]
    NoVariables,
    #[error("duplicate variable name {0:?}")]
    DuplicateVariable(String),
    #[error("{block} has wrong shape: expected {expected} entries, got {got}")]
    Shape { block: &'static str, expected: usize, got: usize },
    #[error("in {block}[{at}]: {source}")]
    Expr { block: &'static str, at: String, source: ParseError },
    #[error("asymmetric structure constants: c^{i}_({j},{k}) != c^{i}_({k},{j})")]
    AsymmetricCirc { i: usize, j: usize, k: usize },
    #[error(transparent)]
    Fman(#[from] FmanError),
}

#[derive(Debug, Clone, Default, Serialize, Deserialize, PartialEq)]
pub struct ModelMeta {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none", rename = "expected-checks")]
    pub expected_checks: Option<Vec<String>>,
}

/// Serialized mode: `"poly"`, `"series"`, or `{"series": N}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ModeDoc {
    Word(String),
    Series { series: u32 },
}

impl ModeDoc {
    fn to_mode(&self, order_override: Option<u32>) -> Result<Mode, ModelError> {
        match self {
            ModeDoc::Word(w) if w == "poly" => Ok(Mode::Poly),
            ModeDoc::Word(w) if w == "series" => {
                Ok(Mode::Series(order_override.unwrap_or(DEFAULT_SERIES_ORDER)))
            }
            ModeDoc::Word(w) => Err(ModelError::Json(serde::de::Error::custom(format!(
                "mode must be \"poly\", \"series\" or {{\"series\": N}}, got {w:?}"
            )))),
            ModeDoc::Series { series } => Ok(Mode::Series(order_override.unwrap_or(*series))),
        }
    }

    pub fn from_mode(mode: Mode) -> ModeDoc {
        match mode {
            Mode::Poly => ModeDoc::Word("poly".into()),
            Mode::Series(n) => ModeDoc::Series { series: n },
        }
    }
}

/// Raw on-disk form.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModelDoc {
    #[serde(default, skip_serializing_if = "is_default_meta")]
    pub meta: ModelMeta,
    pub variables: Vec<String>,
    pub mode: ModeDoc,
    #[serde(rename = "L", default, skip_serializing_if = "Option::is_none")]
    pub l: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e: Option<Vec<String>>,
    #[serde(rename = "E", default, skip_serializing_if = "Option::is_none")]
    pub euler: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub circ: Option<Vec<Vec<Vec<String>>>>,
}

fn is_default_meta(m: &ModelMeta) -> bool {
    *m == ModelMeta::default()
}

/// Fully parsed model.
#[derive(Debug, Clone)]
pub struct Model {
    pub meta: ModelMeta,
    pub variables: Vec<String>,
    pub mode: Mode,
    pub l: Option<OperatorField>,
    pub e: Option<VectorField>,
    pub euler: Option<VectorField>,
    pub circ: Option<Multiplication>,
}

impl Model {
    pub fn dim(&self) -> usize {
        self.variables.len()
    }
}

pub fn load_model(doc: &ModelDoc) -> Result<Model, ModelError> {
    load_model_with_order(doc, None)
}

/// Parse a model document; `order_override`, when given, replaces the series
/// order declared in the file (polynomial models are unaffected).
pub fn load_model_with_order(
    doc: &ModelDoc,
    order_override: Option<u32>,
) -> Result<Model, ModelError> {
    let n = doc.variables.len();
    if n == 0 {
        return Err(ModelError::NoVariables);
    }
    for (i, v) in doc.variables.iter().enumerate() {
        if doc.variables[..i].contains(v) {
            return Err(ModelError::DuplicateVariable(v.clone()));
        }
    }
    let mode = doc.mode.to_mode(order_override)?;
    let vars = &doc.variables;
    let parse = |block: &'static str, at: String, src: &str| -> Result<Elem, ModelError> {
        parse_expression(src, vars, mode).map_err(|source| ModelError::Expr { block, at, source })
    };

    let l = match &doc.l {
        None => None,
        Some(rows) => {
            if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                return Err(ModelError::Shape {
                    block: "L",
                    expected: n * n,
                    got: rows.iter().map(Vec::len).sum(),
                });
            }
            let mut entries = Vec::with_capacity(n);
            for (i, row) in rows.iter().enumerate() {
                let mut out = Vec::with_capacity(n);
                for (j, src) in row.iter().enumerate() {
                    out.push(parse("L", format!("{},{}", i + 1, j + 1), src)?);
                }
                entries.push(out);
            }
            Some(OperatorField::new(entries).expect("square by construction"))
        }
    };

    let parse_vec = |block: &'static str,
                     comps: &Vec<String>|
     -> Result<VectorField, ModelError> {
        if comps.len() != n {
            return Err(ModelError::Shape { block, expected: n, got: comps.len() });
        }
        let mut out = Vec::with_capacity(n);
        for (i, src) in comps.iter().enumerate() {
            out.push(parse(block, format!("{}", i + 1), src)?);
        }
        Ok(VectorField::new(out).expect("coherent"))
    };
    let e = doc.e.as_ref().map(|c| parse_vec("e", c)).transpose()?;
    let euler = doc.euler.as_ref().map(|c| parse_vec("E", c)).transpose()?;

    let circ = match &doc.circ {
        None => None,
        Some(planes) => {
            let got: usize =
                planes.iter().flat_map(|p| p.iter().map(Vec::len)).sum();
            if planes.len() != n
                || planes.iter().any(|p| p.len() != n || p.iter().any(|r| r.len() != n))
            {
                return Err(ModelError::Shape { block: "circ", expected: n * n * n, got });
            }
            let mut c = Vec::with_capacity(n);
            for (i, plane) in planes.iter().enumerate() {
                let mut pc = Vec::with_capacity(n);
                for (j, row) in plane.iter().enumerate() {
                    let mut rc = Vec::with_capacity(n);
                    for (k, src) in row.iter().enumerate() {
                        rc.push(parse(
                            "circ",
                            format!("{},{},{}", i + 1, j + 1, k + 1),
                            src,
                        )?);
                    }
                    pc.push(rc);
                }
                c.push(pc);
            }
            for i in 0..n {
                for j in 0..n {
                    for k in (j + 1)..n {
                        if c[i][j][k] != c[i][k][j] {
                            return Err(ModelError::AsymmetricCirc {
                                i: i + 1,
                                j: j + 1,
                                k: k + 1,
                            });
                        }
                    }
                }
            }
            Some(Multiplication::new(c)?)
        }
    };

    Ok(Model { meta: doc.meta.clone(), variables: doc.variables.clone(), mode, l, e, euler, circ })
}

pub fn load_model_file(path: &Path, order_override: Option<u32>) -> Result<Model, ModelError> {
    let text = std::fs::read_to_string(path)?;
    let doc: ModelDoc = serde_json::from_str(&text)?;
    load_model_with_order(&doc, order_override)
}

/// Render a model back into its on-disk form. Round-trips are semantic, not
/// byte-exact: expressions are re-rendered canonically.
pub fn to_doc(model: &Model) -> ModelDoc {
    let names = &model.variables;
    ModelDoc {
        meta: model.meta.clone(),
        variables: model.variables.clone(),
        mode: ModeDoc::from_mode(model.mode),
        l: model.l.as_ref().map(|l| {
            l.rows().iter().map(|row| row.iter().map(|e| e.render(names)).collect()).collect()
        }),
        e: model.e.as_ref().map(|v| v.components.iter().map(|e| e.render(names)).collect()),
        euler: model
            .euler
            .as_ref()
            .map(|v| v.components.iter().map(|e| e.render(names)).collect()),
        circ: model.circ.as_ref().map(|c| {
            (0..c.dim())
                .map(|i| {
                    (0..c.dim())
                        .map(|j| {
                            (0..c.dim()).map(|k| c.constant(i, j, k).render(names)).collect()
                        })
                        .collect()
                })
                .collect()
        }),
    }
}

pub fn save_model_file(path: &Path, model: &Model) -> Result<(), ModelError> {
    let doc = to_doc(model);
    let mut text = serde_json::to_string_pretty(&doc)?;
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::companion_dnd_form;

    #[test]
    fn minimal_model() {
        let doc: ModelDoc =
            serde_json::from_str(r#"{"variables":["x1"],"mode":"poly","L":[["x1"]],"e":["1"]}"#)
                .unwrap();
        let m = load_model(&doc).unwrap();
        assert_eq!(m.dim(), 1);
        assert_eq!(m.l.unwrap().entry(0, 0), &Elem::var(1, Mode::Poly, 0));
        assert_eq!(m.e.unwrap().components[0], Elem::one(1, Mode::Poly));
    }

    #[test]
    fn asymmetric_circ_rejected() {
        let doc: ModelDoc = serde_json::from_str(
            r#"{"variables":["x1","x2"],"mode":"poly",
                "circ":[[["1","1"],["2","0"]],[["0","0"],["0","0"]]]}"#,
        )
        .unwrap();
        assert!(matches!(
            load_model(&doc),
            Err(ModelError::AsymmetricCirc { i: 1, j: 1, k: 2 })
        ));
    }

    #[test]
    fn shape_and_name_errors() {
        let doc: ModelDoc = serde_json::from_str(
            r#"{"variables":["x1","x2"],"mode":"poly","e":["1"]}"#,
        )
        .unwrap();
        assert!(matches!(load_model(&doc), Err(ModelError::Shape { block: "e", .. })));
        let doc: ModelDoc = serde_json::from_str(
            r#"{"variables":["x1","x1"],"mode":"poly"}"#,
        )
        .unwrap();
        assert!(matches!(load_model(&doc), Err(ModelError::DuplicateVariable(_))));
        let doc: ModelDoc = serde_json::from_str(
            r#"{"variables":["x1"],"mode":"poly","L":[["y"]]}"#,
        )
        .unwrap();
        assert!(matches!(load_model(&doc), Err(ModelError::Expr { block: "L", .. })));
    }

    #[test]
    fn series_order_override() {
        let doc: ModelDoc =
            serde_json::from_str(r#"{"variables":["x1"],"mode":{"series":4},"e":["exp(x1)"]}"#)
                .unwrap();
        let m = load_model(&doc).unwrap();
        assert_eq!(m.mode, Mode::Series(4));
        let m = load_model_with_order(&doc, Some(2)).unwrap();
        assert_eq!(m.mode, Mode::Series(2));
        // bare "series" word means the default order
        let doc: ModelDoc =
            serde_json::from_str(r#"{"variables":["x1"],"mode":"series"}"#).unwrap();
        assert_eq!(load_model(&doc).unwrap().mode, Mode::Series(DEFAULT_SERIES_ORDER));
    }

    #[test]
    fn save_load_roundtrip() {
        let form = companion_dnd_form(3).unwrap();
        let model = Model {
            meta: ModelMeta { name: Some("companion-3".into()), expected_checks: None },
            variables: form.vars.clone(),
            mode: Mode::Poly,
            l: Some(form.l.clone()),
            e: Some(form.e.clone()),
            euler: None,
            circ: None,
        };
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("m.json");
        save_model_file(&path, &model).unwrap();
        let back = load_model_file(&path, None).unwrap();
        assert_eq!(back.l.unwrap(), form.l);
        assert_eq!(back.e.unwrap(), form.e);
        assert_eq!(back.variables, form.vars);
        assert_eq!(back.meta.name.as_deref(), Some("companion-3"));
    }
}

//! JSON proof files.
//!
//! ```json
//! { "prelude": "preludes/prop.nl", "mode": "strict",
//!   "root": { "sequent": { "left": ["p"], "right": ["p"] },
//!             "rule": { "name": "S" }, "premises": [] } }
//! ```
//!
//! Formulas are surface syntax resolved against the named prelude (relative
//! to the proof file's directory; `empty` names the empty prelude) extended
//! with every eigenvariable declared by a `QRight` rule.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::calculus::{CheckMode, ProofNode, RuleApp, Sequent};
use crate::surface::{elaborate, parse_term, parse_type, print_term, Prelude, PreludeError, SurfaceError};
use crate::term::{Term, Var};

/// The prelude name that always denotes an empty prelude.
pub const EMPTY_PRELUDE: &str = "empty";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofFile {
    pub prelude: String,
    #[serde(default = "default_mode")]
    pub mode: String,
    pub root: NodeJson,
}

fn default_mode() -> String {
    "strict".to_owned()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeJson {
    pub sequent: SequentJson,
    pub rule: RuleJson,
    #[serde(default)]
    pub premises: Vec<NodeJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequentJson {
    #[serde(default)]
    pub left: Vec<String>,
    #[serde(default)]
    pub right: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleJson {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pos: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eigen: Option<String>,
}

#[derive(Debug, Error)]
pub enum ProofFileError {
    #[error("cannot read {path}: {msg}")]
    Io { path: String, msg: String },
    #[error("malformed proof JSON: {0}")]
    Json(String),
    #[error("unknown mode `{0}` (expected `strict` or `paper`)")]
    Mode(String),
    #[error(transparent)]
    Prelude(#[from] PreludeError),
    #[error("node {path}: unknown rule `{name}`")]
    UnknownRule { path: String, name: String },
    #[error("node {path}: rule {rule} needs field `{field}`")]
    MissingField { path: String, rule: String, field: &'static str },
    #[error("node {path}: bad eigenvariable `{text}` (expected `name:type`)")]
    Eigen { path: String, text: String },
    #[error("node {path}, {side}[{index}] `{text}`: {source}")]
    Term { path: String, side: &'static str, index: usize, text: String, source: SurfaceError },
}

impl ProofFileError {
    /// True when the file is readable but contains an ill-typed formula.
    pub fn is_type_error(&self) -> bool {
        matches!(self, ProofFileError::Term { source, .. } if source.is_type_error())
    }
}

pub struct LoadedProof {
    pub prelude: Prelude,
    pub mode: CheckMode,
    pub root: ProofNode,
}

fn path_str(path: &[usize]) -> String {
    if path.is_empty() {
        "root".to_owned()
    } else {
        format!("root.{}", path.iter().map(|i| i.to_string()).collect::<Vec<_>>().join("."))
    }
}

/// Resolves a prelude reference relative to `base`.
pub fn load_prelude(name: &str, base: &Path) -> Result<Prelude, PreludeError> {
    let candidate = base.join(name);
    if name == EMPTY_PRELUDE && !candidate.exists() {
        return Ok(Prelude::new());
    }
    Prelude::load(&candidate)
}

pub fn parse_var_decl(text: &str) -> Option<Var> {
    let (name, ty) = text.split_once(':')?;
    let name = name.trim();
    if name.is_empty() {
        return None;
    }
    Some(Var::new(name, parse_type(ty).ok()?))
}

pub fn read_proof_file(path: &Path) -> Result<ProofFile, ProofFileError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| ProofFileError::Io { path: path.display().to_string(), msg: e.to_string() })?;
    serde_json::from_str(&text).map_err(|e| ProofFileError::Json(e.to_string()))
}

pub fn load_proof(path: &Path) -> Result<LoadedProof, ProofFileError> {
    let file = read_proof_file(path)?;
    let base = path.parent().map(Path::to_path_buf).unwrap_or_else(|| PathBuf::from("."));
    let prelude = load_prelude(&file.prelude, &base)?;
    resolve(&file, prelude)
}

/// Builds the proof tree of `file` against `prelude`.
pub fn resolve(file: &ProofFile, mut prelude: Prelude) -> Result<LoadedProof, ProofFileError> {
    let mode = CheckMode::parse(&file.mode).ok_or_else(|| ProofFileError::Mode(file.mode.clone()))?;
    declare_eigens(&file.root, &mut Vec::new(), &mut prelude)?;
    let root = build_node(&file.root, &mut Vec::new(), &prelude)?;
    Ok(LoadedProof { prelude, mode, root })
}

fn declare_eigens(n: &NodeJson, path: &mut Vec<usize>, prelude: &mut Prelude) -> Result<(), ProofFileError> {
    if let Some(text) = &n.rule.eigen {
        let bad = || ProofFileError::Eigen { path: path_str(path), text: text.clone() };
        let v = parse_var_decl(text).ok_or_else(bad)?;
        prelude.ensure_var(&v).map_err(|_| bad())?;
    }
    for (i, p) in n.premises.iter().enumerate() {
        path.push(i);
        declare_eigens(p, path, prelude)?;
        path.pop();
    }
    Ok(())
}

fn build_node(n: &NodeJson, path: &mut Vec<usize>, prelude: &Prelude) -> Result<ProofNode, ProofFileError> {
    let terms = |side: &'static str, texts: &[String]| -> Result<Vec<Term>, ProofFileError> {
        texts
            .iter()
            .enumerate()
            .map(|(index, text)| {
                parse_term(text, prelude).and_then(|a| elaborate(&a)).map_err(|source| ProofFileError::Term {
                    path: path_str(path),
                    side,
                    index,
                    text: text.clone(),
                    source,
                })
            })
            .collect()
    };
    let sequent = Sequent::new(terms("left", &n.sequent.left)?, terms("right", &n.sequent.right)?);
    let rule = decode_rule(&n.rule, path)?;
    let mut premises = Vec::with_capacity(n.premises.len());
    for (i, p) in n.premises.iter().enumerate() {
        path.push(i);
        premises.push(build_node(p, path, prelude)?);
        path.pop();
    }
    Ok(ProofNode { sequent, rule, premises })
}

fn decode_rule(r: &RuleJson, path: &[usize]) -> Result<RuleApp, ProofFileError> {
    let missing = |field| ProofFileError::MissingField { path: path_str(path), rule: r.name.clone(), field };
    Ok(match r.name.as_str() {
        "S" => RuleApp::S,
        "ThinAddL" => RuleApp::ThinAddL,
        "ThinAddR" => RuleApp::ThinAddR,
        "ThinDropL" => RuleApp::ThinDropL,
        "ThinDropR" => RuleApp::ThinDropR,
        "ExchL" => RuleApp::ExchL(r.pos.ok_or_else(|| missing("pos"))?),
        "ExchR" => RuleApp::ExchR(r.pos.ok_or_else(|| missing("pos"))?),
        "ContrL" => RuleApp::ContrL,
        "ContrR" => RuleApp::ContrR,
        "PLeft" => RuleApp::PLeft,
        "PRightAx" => RuleApp::PRightAx,
        "QLeftAx" => RuleApp::QLeftAx,
        "QRight" => {
            let text = r.eigen.as_ref().ok_or_else(|| missing("eigen"))?;
            let v = parse_var_decl(text)
                .ok_or_else(|| ProofFileError::Eigen { path: path_str(path), text: text.clone() })?;
            RuleApp::QRight(v)
        }
        "NAx" => RuleApp::NAx,
        other => return Err(ProofFileError::UnknownRule { path: path_str(path), name: other.to_owned() }),
    })
}

fn encode_rule(r: &RuleApp) -> RuleJson {
    let (pos, eigen) = match r {
        RuleApp::ExchL(p) | RuleApp::ExchR(p) => (Some(*p), None),
        RuleApp::QRight(x) => (None, Some(format!("{}:{}", x.name(), x.ty()))),
        _ => (None, None),
    };
    RuleJson { name: r.name().to_owned(), pos, eigen }
}

pub fn encode_node(n: &ProofNode) -> NodeJson {
    let texts = |fs: &[Term]| fs.iter().map(|f| print_term(f, true)).collect();
    NodeJson {
        sequent: SequentJson { left: texts(&n.sequent.left), right: texts(&n.sequent.right) },
        rule: encode_rule(&n.rule),
        premises: n.premises.iter().map(encode_node).collect(),
    }
}

pub fn to_proof_file(root: &ProofNode, prelude: &str, mode: CheckMode) -> ProofFile {
    ProofFile { prelude: prelude.to_owned(), mode: mode.as_str().to_owned(), root: encode_node(root) }
}

pub fn to_json(file: &ProofFile) -> String {
    serde_json::to_string_pretty(file).expect("proof files always serialize")
}

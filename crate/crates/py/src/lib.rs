//! Python bindings for the Nominalistic Logic kernel.
//!
//! ```python
//! import nl
//! pre = nl.Prelude("var p : o\nvar q : o")
//! t = nl.parse("~p \\/ q", pre)
//! t.resugar()            # 'p -> q'
//! proof = nl.prove("|- p \\/ ~p", pre, depth=8, mode="paper")
//! proof.is_valid()       # True
//! ```

use std::path::Path;

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

use nl_core::calculus::{check_proof, CheckMode, ProofNode, Report, Sequent};
use nl_core::proof_file;
use nl_core::search::{prove_with_stats, SearchBudget};
use nl_core::surface::{self, elaborate, elaborate_formula, parse_sequent, print_term, SurfaceError};
use nl_core::term::{self, alpha_eq, free_vars, Strategy};
use nl_core::typing::{has_type, structural_type, types_of};

create_exception!(nl, NlError, PyException, "Base class of every error raised by this module.");
create_exception!(nl, ParseError, NlError, "Malformed surface syntax or an unknown identifier.");
create_exception!(nl, IllTypedError, NlError, "A well-formed term that has no type.");
create_exception!(nl, FuelExhausted, NlError, "Normalization ran out of fuel.");
create_exception!(nl, ProofFileError, NlError, "An unreadable or malformed proof file.");

fn surface_err(e: SurfaceError, src: &str) -> PyErr {
    let msg = e.render(src);
    if e.is_type_error() {
        IllTypedError::new_err(msg)
    } else {
        ParseError::new_err(msg)
    }
}

fn mode_arg(mode: &str) -> PyResult<CheckMode> {
    CheckMode::parse(mode).ok_or_else(|| PyValueError::new_err(format!("unknown mode `{mode}`, expected `strict` or `paper`")))
}

fn strategy_arg(strategy: &str) -> PyResult<Strategy> {
    match strategy {
        "lo" => Ok(Strategy::LeftmostOutermost),
        "ri" => Ok(Strategy::RightmostInnermost),
        other => Err(PyValueError::new_err(format!("unknown strategy `{other}`, expected `lo` or `ri`"))),
    }
}

/// A simple type such as `i`, `o` or `(i o) o`.
#[pyclass(frozen, eq, hash, str, from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct Type(nl_core::Type);

impl std::fmt::Display for Type {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

#[pymethods]
impl Type {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        surface::parse_type(text).map(Type).map_err(|e| surface_err(e, text))
    }

    fn is_predicate(&self) -> bool {
        self.0.is_predicate()
    }

    fn __repr__(&self) -> String {
        format!("Type('{}')", self.0)
    }
}

/// An elaborated kernel term.
#[pyclass(frozen, str, from_py_object)]
#[derive(Clone)]
struct Term(term::Term);

impl std::fmt::Display for Term {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&print_term(&self.0, false))
    }
}

#[pymethods]
impl Term {
    /// The term printed with notation (`->`, `exists`, numerals, ...).
    fn resugar(&self) -> String {
        print_term(&self.0, true)
    }

    fn __repr__(&self) -> String {
        format!("Term('{}')", print_term(&self.0, true))
    }

    /// Equality up to renaming of bound variables.
    fn alpha_eq(&self, other: &Term) -> bool {
        alpha_eq(&self.0, &other.0)
    }

    fn __eq__(&self, other: &Term) -> bool {
        self.alpha_eq(other)
    }

    fn size(&self) -> usize {
        self.0.size()
    }

    /// The structural type.
    fn structural_type(&self) -> PyResult<Type> {
        structural_type(&self.0).map(Type).map_err(|e| IllTypedError::new_err(e.to_string()))
    }

    /// Every type of the term: the structural one, then `i` when nominalizable.
    fn types(&self) -> PyResult<Vec<Type>> {
        types_of(&self.0).map(|v| v.into_iter().map(Type).collect()).map_err(|e| IllTypedError::new_err(e.to_string()))
    }

    fn has_type(&self, ty: &Type) -> bool {
        has_type(&self.0, &ty.0)
    }

    /// Free variables as `(name, type)` pairs, sorted.
    fn free_vars(&self) -> Vec<(String, Type)> {
        free_vars(&self.0).into_iter().map(|v| (v.name().to_owned(), Type(v.ty().clone()))).collect()
    }

    fn is_normal(&self) -> bool {
        term::is_normal(&self.0)
    }

    /// One-step reducts, leftmost-outermost first.
    fn reducts(&self) -> Vec<Term> {
        term::reduct_steps(&self.0).into_iter().map(Term).collect()
    }

    #[pyo3(signature = (strategy="lo", fuel=10_000))]
    fn normalize(&self, py: Python<'_>, strategy: &str, fuel: u64) -> PyResult<Term> {
        let strategy = strategy_arg(strategy)?;
        let t = self.0.clone();
        py.detach(move || term::normalize(&t, strategy, fuel))
            .map(Term)
            .map_err(|e| FuelExhausted::new_err(e.to_string()))
    }
}

/// Declarations of free variables and constants that surface text may use.
#[pyclass(from_py_object)]
#[derive(Clone, Default)]
struct Prelude(surface::Prelude);

#[pymethods]
impl Prelude {
    /// Parses prelude text: one `var name : type` or `const name : type` per line.
    #[new]
    #[pyo3(signature = (text=""))]
    fn new(text: &str) -> PyResult<Self> {
        surface::Prelude::parse(text).map(Prelude).map_err(|e| ParseError::new_err(e.to_string()))
    }

    #[staticmethod]
    fn load(path: &str) -> PyResult<Self> {
        proof_file::load_prelude(path, Path::new(".")).map(Prelude).map_err(|e| ParseError::new_err(e.to_string()))
    }

    fn declare_var(&mut self, name: &str, ty: &Type) -> PyResult<()> {
        self.0.declare_var(name, ty.0.clone()).map_err(|e| ParseError::new_err(e.to_string()))
    }

    fn declare_const(&mut self, name: &str, ty: &Type) -> PyResult<()> {
        self.0.declare_const(name, ty.0.clone()).map_err(|e| ParseError::new_err(e.to_string()))
    }

    fn names(&self) -> Vec<String> {
        self.0.decls().iter().map(|d| d.name.clone()).collect()
    }

    fn __len__(&self) -> usize {
        self.0.decls().len()
    }
}

/// A proof tree together with the prelude its formulas were read against.
#[pyclass(frozen)]
struct Proof {
    root: ProofNode,
    mode: CheckMode,
}

fn report_rows(report: &Report) -> Vec<(String, String, Option<String>)> {
    report
        .nodes
        .iter()
        .map(|n| {
            let path = std::iter::once("root".to_owned()).chain(n.path.iter().map(usize::to_string)).collect::<Vec<_>>();
            (path.join("."), n.rule.clone(), n.result.as_ref().err().map(ToString::to_string))
        })
        .collect()
}

#[pymethods]
impl Proof {
    #[getter]
    fn mode(&self) -> &'static str {
        self.mode.as_str()
    }

    fn size(&self) -> usize {
        self.root.size()
    }

    fn depth(&self) -> usize {
        self.root.depth()
    }

    /// Checks every node, in the proof's own mode unless `mode` is given.
    #[pyo3(signature = (mode=None))]
    fn is_valid(&self, mode: Option<&str>) -> PyResult<bool> {
        let mode = mode.map(mode_arg).transpose()?.unwrap_or(self.mode);
        Ok(check_proof(&self.root, mode).valid())
    }

    /// One `(path, rule, error or None)` row per node, in preorder.
    #[pyo3(signature = (mode=None))]
    fn report(&self, mode: Option<&str>) -> PyResult<Vec<(String, String, Option<String>)>> {
        let mode = mode.map(mode_arg).transpose()?.unwrap_or(self.mode);
        Ok(report_rows(&check_proof(&self.root, mode)))
    }

    /// The proof file text, naming `prelude` as the prelude path.
    #[pyo3(signature = (prelude="empty"))]
    fn to_json(&self, prelude: &str) -> String {
        proof_file::to_json(&proof_file::to_proof_file(&self.root, prelude, self.mode))
    }

    fn render(&self) -> String {
        self.root.render(true)
    }

    fn __repr__(&self) -> String {
        format!("<Proof of `{}`, {} nodes>", self.root.sequent.display(true), self.root.size())
    }
}

/// Parses and elaborates surface text.
#[pyfunction]
#[pyo3(signature = (text, prelude=None))]
fn parse(text: &str, prelude: Option<&Prelude>) -> PyResult<Term> {
    let empty = surface::Prelude::new();
    let pre = prelude.map_or(&empty, |p| &p.0);
    surface::parse_term(text, pre).and_then(|a| elaborate(&a)).map(Term).map_err(|e| surface_err(e, text))
}

#[pyfunction]
fn parse_type(text: &str) -> PyResult<Type> {
    Type::new(text)
}

/// Searches for a proof of a sequent written `f1, ... |- g1, ...`; `None` when none is found within budget.
#[pyfunction]
#[pyo3(signature = (sequent, prelude=None, depth=8, nodes=200_000, mode="strict"))]
fn prove(
    py: Python<'_>,
    sequent: &str,
    prelude: Option<&Prelude>,
    depth: usize,
    nodes: usize,
    mode: &str,
) -> PyResult<Option<Proof>> {
    let mode = mode_arg(mode)?;
    let empty = surface::Prelude::new();
    let pre = prelude.map_or(&empty, |p| &p.0);
    let s = parse_sequent(sequent, pre).map_err(|e| surface_err(e, sequent))?;
    let side = |asts: &[surface::Ast]| -> PyResult<Vec<term::Term>> {
        asts.iter().map(|a| elaborate_formula(a).map_err(|e| surface_err(e, sequent))).collect()
    };
    let goal = Sequent::new(side(&s.left)?, side(&s.right)?);
    let budget = SearchBudget::new(depth, nodes);
    let found = py.detach(move || prove_with_stats(&goal, budget, mode).0);
    Ok(found.map(|root| Proof { root, mode }))
}

/// Loads a JSON proof file; its prelude path is resolved relative to the file.
#[pyfunction]
fn load_proof(path: &str) -> PyResult<Proof> {
    let loaded = proof_file::load_proof(Path::new(path)).map_err(|e| {
        if e.is_type_error() {
            IllTypedError::new_err(e.to_string())
        } else {
            ProofFileError::new_err(e.to_string())
        }
    })?;
    Ok(Proof { root: loaded.root, mode: loaded.mode })
}

#[pymodule]
fn nl(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Type>()?;
    m.add_class::<Term>()?;
    m.add_class::<Prelude>()?;
    m.add_class::<Proof>()?;
    m.add_function(wrap_pyfunction!(parse, m)?)?;
    m.add_function(wrap_pyfunction!(parse_type, m)?)?;
    m.add_function(wrap_pyfunction!(prove, m)?)?;
    m.add_function(wrap_pyfunction!(load_proof, m)?)?;
    let py = m.py();
    m.add("NlError", py.get_type::<NlError>())?;
    m.add("ParseError", py.get_type::<ParseError>())?;
    m.add("IllTypedError", py.get_type::<IllTypedError>())?;
    m.add("FuelExhausted", py.get_type::<FuelExhausted>())?;
    m.add("ProofFileError", py.get_type::<ProofFileError>())?;
    Ok(())
}

//! JSON documents for lattices, monoids, grounds, morphisms, fuzzy sets,
//! interior spaces, topologies and structured sources, with loaders that
//! validate and writers that embed everything needed to read them back.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::continuity::{ContinuityError, StructuredSource, VbSpace};
use crate::interior::{InteriorError, InteriorMap, LTopology};
use crate::lattice::{validate_lattice, FiniteLattice, LatticeError, RawOrder, DEFAULT_MAX_CARRIER};
use crate::monoid::{
    builtin_chain, tensor_from_triples, validate_cqml, validate_gl, ChainKind, Cqml, CqmlError, GlConfig, GlError,
    GlMonoid, MonoidError,
};
use crate::powerset::{validate_ground_morphism, Code, FuzzySet, Ground, GroundError, GroundMorphism, MorphismError};

#[derive(Debug, Error)]
pub enum SchemaError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("{0}")]
    Shape(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Cqml(#[from] CqmlError),
    #[error("not a GL-monoid: {0}")]
    Gl(#[from] GlError),
    #[error(transparent)]
    Ground(#[from] GroundError),
    #[error(transparent)]
    Morphism(#[from] MorphismError),
    #[error(transparent)]
    Interior(#[from] InteriorError),
    #[error("interior axiom fails: {0}")]
    Axiom(String),
    #[error(transparent)]
    Continuity(#[from] ContinuityError),
}

impl From<MonoidError> for SchemaError {
    fn from(e: MonoidError) -> Self {
        match e {
            MonoidError::ChainTooShort(n) => SchemaError::Shape(format!("builtin chain needs n >= 2, got {n}")),
            MonoidError::Cqml(e) => e.into(),
            MonoidError::Gl(e) => e.into(),
        }
    }
}

impl SchemaError {
    /// Unreadable or ill-formed input, as opposed to a well-formed structure
    /// that fails an axiom.
    pub fn is_input_error(&self) -> bool {
        match self {
            SchemaError::Io { .. } | SchemaError::Json(_) | SchemaError::Shape(_) => true,
            SchemaError::Lattice(e) => matches!(
                e,
                LatticeError::Empty
                    | LatticeError::DuplicateElement(_)
                    | LatticeError::UnknownElement(_)
                    | LatticeError::TooLarge { .. }
            ),
            SchemaError::Cqml(e) => {
                matches!(
                    e,
                    CqmlError::TensorShape { .. } | CqmlError::TensorNotTotal(..) | CqmlError::TensorConflict(..)
                ) || matches!(e, CqmlError::Lattice(l) if SchemaError::Lattice(l.clone()).is_input_error())
            }
            SchemaError::Ground(e) => !matches!(e, GroundError::TooLarge { .. }),
            SchemaError::Morphism(e) => matches!(
                e,
                MorphismError::PointMapShape { .. }
                    | MorphismError::PointOutOfRange { .. }
                    | MorphismError::PhiShape { .. }
                    | MorphismError::Ground(_)
            ),
            SchemaError::Interior(e) => {
                matches!(e, InteriorError::TableShape { .. } | InteriorError::Ground(_) | InteriorError::GroundMismatch)
            }
            SchemaError::Continuity(e) => matches!(e, ContinuityError::GroundMismatch(_)),
            SchemaError::Gl(_) | SchemaError::Axiom(_) => false,
        }
    }
}

/// Inline lattice or a path relative to the referring file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LatticeRef {
    Inline(RawOrder),
    Path(String),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MonoidKind {
    #[default]
    Gl,
    Cqml,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MonoidDoc {
    Builtin {
        builtin: String,
        n: usize,
    },
    Explicit {
        #[serde(skip_serializing_if = "Option::is_none", default)]
        label: Option<String>,
        lattice: LatticeRef,
        tensor: Vec<(String, String, String)>,
        #[serde(default)]
        kind: MonoidKind,
    },
    Path(String),
}

/// A vector of element names, either as a JSON array or as text `"(a,b)"`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum VectorDoc {
    Names(Vec<String>),
    Text(String),
}

impl VectorDoc {
    pub fn names(&self) -> Vec<String> {
        match self {
            VectorDoc::Names(v) => v.clone(),
            VectorDoc::Text(s) => {
                let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
                if inner.trim().is_empty() {
                    Vec::new()
                } else {
                    inner.split(',').map(|p| p.trim().to_string()).collect()
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroundDoc {
    pub points: Vec<String>,
    pub basis: MonoidDoc,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MorphismDoc {
    pub domain: GroundDoc,
    pub codomain: GroundDoc,
    pub f: BTreeMap<String, String>,
    pub phi_op: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FuzzySetDoc {
    pub carrier: Vec<String>,
    pub values: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub basis: Option<MonoidDoc>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BuiltinInterior {
    Discrete,
    Least,
}

/// An interior space or a topology: exactly one of `table`, `builtin`,
/// `opens`. With `opens`, the interior is the join of opens below `u`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpaceDoc {
    pub ground: GroundDoc,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub table: Option<Vec<(VectorDoc, VectorDoc)>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub builtin: Option<BuiltinInterior>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub opens: Option<Vec<VectorDoc>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MemberMorphismDoc {
    pub f: BTreeMap<String, String>,
    pub phi_op: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MemberDoc {
    pub morphism: MemberMorphismDoc,
    pub target: SpaceDoc,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SourceDoc {
    pub domain: GroundDoc,
    pub members: Vec<MemberDoc>,
}

/// A loaded basis, with its GL structure when the document asks for it.
#[derive(Clone, Debug)]
pub struct Basis {
    pub cqml: Arc<Cqml>,
    pub gl: Option<GlMonoid>,
}

pub fn parse_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, SchemaError> {
    serde_json::from_str(text).map_err(|e| SchemaError::Json(e.to_string()))
}

pub fn read_json_value(path: &Path) -> Result<serde_json::Value, SchemaError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| SchemaError::Io { path: path.display().to_string(), message: e.to_string() })?;
    parse_json(&text)
}

/// Resolves file references relative to a base directory.
#[derive(Clone, Debug)]
pub struct Loader {
    base: PathBuf,
    pub max_carrier: usize,
    pub gl_config: GlConfig,
}

impl Default for Loader {
    fn default() -> Self {
        Loader::new(PathBuf::new())
    }
}

impl Loader {
    pub fn new(base: impl Into<PathBuf>) -> Self {
        Loader { base: base.into(), max_carrier: DEFAULT_MAX_CARRIER, gl_config: GlConfig::default() }
    }

    /// Loader whose base is the directory holding `file`.
    pub fn for_file(file: &Path) -> Self {
        Loader::new(file.parent().map(Path::to_path_buf).unwrap_or_default())
    }

    fn read<T: for<'de> Deserialize<'de>>(&self, rel: &str) -> Result<(T, Loader), SchemaError> {
        let path = self.base.join(rel);
        let v = read_json_value(&path)?;
        let doc = serde_json::from_value(v).map_err(|e| SchemaError::Json(format!("{}: {e}", path.display())))?;
        Ok((doc, Loader { base: path.parent().map(Path::to_path_buf).unwrap_or_default(), ..self.clone() }))
    }

    pub fn lattice(&self, r: &LatticeRef) -> Result<FiniteLattice, SchemaError> {
        match r {
            LatticeRef::Inline(raw) => Ok(validate_lattice(raw, self.max_carrier)?),
            LatticeRef::Path(p) => {
                let (raw, sub): (RawOrder, _) = self.read(p)?;
                sub.lattice(&LatticeRef::Inline(raw))
            }
        }
    }

    pub fn basis(&self, doc: &MonoidDoc) -> Result<Basis, SchemaError> {
        match doc {
            MonoidDoc::Builtin { builtin, n } => {
                let kind: ChainKind = builtin.parse().map_err(SchemaError::Shape)?;
                let gl = builtin_chain(kind, *n)?;
                Ok(Basis { cqml: Arc::new(gl.cqml().clone()), gl: Some(gl) })
            }
            MonoidDoc::Explicit { label, lattice, tensor, kind } => {
                let l = self.lattice(lattice)?;
                let t = tensor_from_triples(&l, tensor)?;
                let mut c = validate_cqml(l, t)?;
                if let Some(label) = label {
                    c = c.with_label(label.clone());
                }
                match kind {
                    MonoidKind::Cqml => Ok(Basis { cqml: Arc::new(c), gl: None }),
                    MonoidKind::Gl => {
                        let gl = validate_gl(c, &self.gl_config)?;
                        Ok(Basis { cqml: Arc::new(gl.cqml().clone()), gl: Some(gl) })
                    }
                }
            }
            MonoidDoc::Path(p) => {
                let (doc, sub): (MonoidDoc, _) = self.read(p)?;
                sub.basis(&doc)
            }
        }
    }

    pub fn ground(&self, doc: &GroundDoc) -> Result<(Ground, Basis), SchemaError> {
        let basis = self.basis(&doc.basis)?;
        Ok((Ground::new(doc.points.clone(), basis.cqml.clone())?, basis))
    }

    fn point_map(&self, dom: &Ground, cod: &Ground, f: &BTreeMap<String, String>) -> Result<Vec<usize>, SchemaError> {
        for x in f.keys() {
            dom.point_index(x)?;
        }
        dom.points()
            .iter()
            .map(|x| {
                let y = f.get(x).ok_or_else(|| SchemaError::Shape(format!("f has no image for point {x}")))?;
                Ok(cod.point_index(y)?)
            })
            .collect()
    }

    fn phi_op(
        &self,
        dom: &Ground,
        cod: &Ground,
        phi: &BTreeMap<String, String>,
    ) -> Result<Vec<crate::lattice::Elem>, SchemaError> {
        let (l, m) = (dom.lattice(), cod.lattice());
        for b in phi.keys() {
            m.elem(b)?;
        }
        m.names()
            .iter()
            .map(|b| {
                let a = phi.get(b).ok_or_else(|| SchemaError::Shape(format!("phi_op has no image for {b}")))?;
                Ok(l.elem(a)?)
            })
            .collect()
    }

    pub fn morphism_between(
        &self,
        dom: &Ground,
        cod: &Ground,
        f: &BTreeMap<String, String>,
        phi: &BTreeMap<String, String>,
    ) -> Result<GroundMorphism, SchemaError> {
        let map = self.point_map(dom, cod, f)?;
        let phi_op = self.phi_op(dom, cod, phi)?;
        Ok(validate_ground_morphism(dom, cod, map, phi_op)?)
    }

    pub fn morphism(&self, doc: &MorphismDoc) -> Result<GroundMorphism, SchemaError> {
        let (dom, _) = self.ground(&doc.domain)?;
        let (cod, _) = self.ground(&doc.codomain)?;
        self.morphism_between(&dom, &cod, &doc.f, &doc.phi_op)
    }

    pub fn fuzzy_set(&self, ground: &Ground, names: &[String]) -> Result<FuzzySet, SchemaError> {
        if names.len() != ground.len() {
            return Err(GroundError::CarrierMismatch { got: names.len(), expected: ground.len() }.into());
        }
        Ok(ground.fuzzy_set(names)?)
    }

    /// A fuzzy-set document; its basis defaults to `default_basis`.
    pub fn fuzzy_set_doc(
        &self,
        doc: &FuzzySetDoc,
        default_basis: Option<&MonoidDoc>,
    ) -> Result<(Ground, FuzzySet), SchemaError> {
        let basis =
            doc.basis.as_ref().or(default_basis).ok_or_else(|| SchemaError::Shape("fuzzy set needs a basis".into()))?;
        let (g, _) = self.ground(&GroundDoc { points: doc.carrier.clone(), basis: basis.clone() })?;
        let u = g.fuzzy_set_from_pairs(doc.values.iter().map(|(k, v)| (k.as_str(), v.as_str())))?;
        Ok((g, u))
    }

    pub fn topology(&self, doc: &SpaceDoc) -> Result<(LTopology, Basis), SchemaError> {
        let (g, basis) = self.ground(&doc.ground)?;
        let opens = doc.opens.as_ref().ok_or_else(|| SchemaError::Shape("topology document needs \"opens\"".into()))?;
        let sets = opens.iter().map(|v| self.fuzzy_set(&g, &v.names())).collect::<Result<_, _>>()?;
        Ok((LTopology::new(g, sets)?, basis))
    }

    pub fn space(&self, doc: &SpaceDoc) -> Result<VbSpace, SchemaError> {
        let given = [doc.table.is_some(), doc.builtin.is_some(), doc.opens.is_some()].iter().filter(|&&b| b).count();
        if given != 1 {
            return Err(SchemaError::Shape("space needs exactly one of \"table\", \"builtin\", \"opens\"".into()));
        }
        let (g, _) = self.ground(&doc.ground)?;
        if let Some(b) = doc.builtin {
            return Ok(match b {
                BuiltinInterior::Discrete => VbSpace::discrete(&g),
                BuiltinInterior::Least => VbSpace::least(&g),
            });
        }
        if doc.opens.is_some() {
            return Ok(VbSpace::new(self.topology(doc)?.0.interior()));
        }
        let rows = doc.table.as_ref().expect("counted above");
        let idx = g.index()?;
        let mut table: Vec<Option<Code>> = vec![None; idx.size()];
        for (u, iu) in rows {
            let u = self.fuzzy_set(&g, &u.names())?;
            let iu = self.fuzzy_set(&g, &iu.names())?;
            let slot = &mut table[g.encode(&u) as usize];
            let code = g.encode(&iu);
            if slot.is_some_and(|c| c != code) {
                return Err(SchemaError::Shape(format!("row for {} listed twice with different values", g.render(&u))));
            }
            *slot = Some(code);
        }
        let table = table
            .into_iter()
            .enumerate()
            .map(|(c, v)| {
                v.ok_or_else(|| SchemaError::Shape(format!("table has no row for {}", g.render_code(c as Code))))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let map = InteriorMap::from_table(g.clone(), table).map_err(|e| match e {
            InteriorError::Axiom(v) => SchemaError::Axiom(v.describe(&g)),
            e => e.into(),
        })?;
        Ok(VbSpace::new(map))
    }

    pub fn source(&self, doc: &SourceDoc) -> Result<StructuredSource, SchemaError> {
        let (dom, _) = self.ground(&doc.domain)?;
        let members = doc
            .members
            .iter()
            .map(|m| {
                let target = self.space(&m.target)?;
                let g = self.morphism_between(&dom, target.ground(), &m.morphism.f, &m.morphism.phi_op)?;
                Ok((g, target))
            })
            .collect::<Result<Vec<_>, SchemaError>>()?;
        Ok(StructuredSource::new(dom, members)?)
    }
}

// Writers.

pub fn basis_doc(c: &Cqml) -> MonoidDoc {
    let kind = if validate_gl(c.clone(), &GlConfig::default()).is_ok() { MonoidKind::Gl } else { MonoidKind::Cqml };
    MonoidDoc::Explicit {
        label: c.label().map(String::from),
        lattice: LatticeRef::Inline(c.lattice().to_raw_covers()),
        tensor: c.tensor_triples(),
        kind,
    }
}

pub fn ground_doc(g: &Ground) -> GroundDoc {
    GroundDoc { points: g.points().to_vec(), basis: basis_doc(g.basis()) }
}

pub fn vector_doc(g: &Ground, u: &FuzzySet) -> VectorDoc {
    VectorDoc::Names(g.names_of(u))
}

pub fn fuzzy_set_doc(g: &Ground, u: &FuzzySet) -> FuzzySetDoc {
    FuzzySetDoc {
        carrier: g.points().to_vec(),
        values: g.points().iter().cloned().zip(g.names_of(u)).collect(),
        basis: Some(basis_doc(g.basis())),
    }
}

fn maps_of(g: &GroundMorphism) -> (BTreeMap<String, String>, BTreeMap<String, String>) {
    let (dom, cod) = (g.domain(), g.codomain());
    let f = dom.points().iter().zip(g.map()).map(|(x, &y)| (x.clone(), cod.points()[y].clone())).collect();
    let phi = cod
        .lattice()
        .elements()
        .map(|b| (cod.lattice().name(b).to_string(), dom.lattice().name(g.phi(b)).to_string()))
        .collect();
    (f, phi)
}

pub fn morphism_doc(g: &GroundMorphism) -> MorphismDoc {
    let (f, phi_op) = maps_of(g);
    MorphismDoc { domain: ground_doc(g.domain()), codomain: ground_doc(g.codomain()), f, phi_op }
}

/// A tabulated interior map as a space document.
pub fn space_doc(i: &InteriorMap) -> Result<SpaceDoc, SchemaError> {
    let g = i.ground();
    let rows = i.rows()?.iter().map(|(u, iu)| (vector_doc(g, u), vector_doc(g, iu))).collect();
    Ok(SpaceDoc { ground: ground_doc(g), table: Some(rows), builtin: None, opens: None })
}

pub fn source_doc(s: &StructuredSource) -> Result<SourceDoc, SchemaError> {
    let members = s
        .members()
        .iter()
        .map(|(g, t)| {
            let (f, phi_op) = maps_of(g);
            Ok(MemberDoc { morphism: MemberMorphismDoc { f, phi_op }, target: space_doc(t.interior())? })
        })
        .collect::<Result<_, SchemaError>>()?;
    Ok(SourceDoc { domain: ground_doc(s.domain()), members })
}

/// Which schema a JSON value follows, judged by its keys.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DocKind {
    Lattice,
    Monoid,
    Ground,
    Morphism,
    FuzzySet,
    Space,
    Topology,
    Source,
    Bundle,
}

impl DocKind {
    pub fn detect(v: &serde_json::Value) -> Option<DocKind> {
        let o = v.as_object()?;
        let has = |k: &str| o.contains_key(k);
        Some(if has("property") && has("status") {
            DocKind::Bundle
        } else if has("members") {
            DocKind::Source
        } else if has("f") && has("phi_op") {
            DocKind::Morphism
        } else if has("ground") && has("opens") && !has("table") && !has("builtin") {
            DocKind::Topology
        } else if has("ground") {
            DocKind::Space
        } else if has("carrier") && has("values") {
            DocKind::FuzzySet
        } else if has("points") && has("basis") {
            DocKind::Ground
        } else if has("builtin") || has("tensor") {
            DocKind::Monoid
        } else if has("elements") {
            DocKind::Lattice
        } else {
            return None;
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            DocKind::Lattice => "lattice",
            DocKind::Monoid => "monoid",
            DocKind::Ground => "ground",
            DocKind::Morphism => "morphism",
            DocKind::FuzzySet => "fuzzy-set",
            DocKind::Space => "interior",
            DocKind::Topology => "topology",
            DocKind::Source => "source",
            DocKind::Bundle => "bundle",
        }
    }
}

pub fn from_value<T: for<'de> Deserialize<'de>>(v: serde_json::Value) -> Result<T, SchemaError> {
    serde_json::from_value(v).map_err(|e| SchemaError::Json(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::ChainKind;

    fn g3_doc() -> MonoidDoc {
        MonoidDoc::Builtin { builtin: "godel".into(), n: 3 }
    }

    #[test]
    fn builtin_and_explicit_bases_agree() {
        let l = Loader::default();
        let b = l.basis(&g3_doc()).unwrap();
        let round = l.basis(&basis_doc(&b.cqml)).unwrap();
        assert_eq!(*b.cqml, *round.cqml);
        assert_eq!(round.cqml.label(), Some("G3"));
        assert!(round.gl.is_some());
        let text = r#"{"lattice": {"elements": ["0","a","1"], "leq": [["0","a"],["a","1"]], "closure": true},
                       "tensor": [["0","0","0"],["0","a","0"],["0","1","0"],["a","0","0"],["a","a","a"],["a","1","a"],["1","0","0"],["1","a","a"],["1","1","1"]]}"#;
        let doc: MonoidDoc = parse_json(text).unwrap();
        assert!(l.basis(&doc).unwrap().gl.is_some());
    }

    #[test]
    fn pentagon_as_gl_ground_fails_distributivity() {
        let text = r#"{"lattice": {"elements": ["bot","a","b","c","top"],
            "leq": [["bot","a"],["a","c"],["c","top"],["bot","b"],["b","top"]], "closure": true},
            "tensor": [], "kind": "gl"}"#;
        let mut doc: MonoidDoc = parse_json(text).unwrap();
        let l = Loader::default();
        if let MonoidDoc::Explicit { tensor, lattice, .. } = &mut doc {
            let lat = l.lattice(lattice).unwrap();
            for a in lat.elements() {
                for b in lat.elements() {
                    tensor.push((lat.name(a).into(), lat.name(b).into(), lat.name(lat.meet2(a, b)).into()));
                }
            }
        }
        let err = l.basis(&doc).unwrap_err();
        assert!(matches!(err, SchemaError::Gl(GlError::NotDistributive(_))), "{err}");
        assert!(!err.is_input_error());
    }

    #[test]
    fn morphism_and_space_round_trip() {
        let l = Loader::default();
        let (x, _) = l.ground(&GroundDoc { points: vec!["p".into(), "q".into()], basis: g3_doc() }).unwrap();
        let (y, _) = l.ground(&GroundDoc { points: vec!["y".into()], basis: g3_doc() }).unwrap();
        let g = validate_ground_morphism(&x, &y, vec![0, 0], (0..3).map(crate::lattice::Elem).collect()).unwrap();
        let doc = morphism_doc(&g);
        let text = serde_json::to_string(&doc).unwrap();
        let back = l.morphism(&parse_json(&text).unwrap()).unwrap();
        assert_eq!(back, g);
        let i = InteriorMap::least(&x);
        let sdoc = space_doc(&i).unwrap();
        let back = l.space(&parse_json(&serde_json::to_string(&sdoc).unwrap()).unwrap()).unwrap();
        assert_eq!(back.interior(), &i);
        let _ = ChainKind::Godel;
    }

    #[test]
    fn space_documents() {
        let l = Loader::default();
        let text = r#"{"ground": {"points": ["x"], "basis": {"builtin": "godel", "n": 3}},
            "table": [["(0)", "(0)"], [["1/2"], ["0"]], ["1", "1"]]}"#;
        let s = l.space(&parse_json(text).unwrap()).unwrap();
        assert_eq!(s.interior(), &InteriorMap::least(s.ground()));
        let bad = r#"{"ground": {"points": ["x"], "basis": {"builtin": "godel", "n": 3}},
            "table": [["0", "0"], ["1/2", "1"], ["1", "1"]]}"#;
        let err = l.space(&parse_json(bad).unwrap()).unwrap_err();
        assert!(matches!(&err, SchemaError::Axiom(m) if m.contains("(1/2)")), "{err}");
        assert!(!err.is_input_error());
        let missing = r#"{"ground": {"points": ["x"], "basis": {"builtin": "godel", "n": 3}}, "table": [["0", "0"]]}"#;
        assert!(l.space(&parse_json(missing).unwrap()).unwrap_err().is_input_error());
        let topo = r#"{"ground": {"points": ["x"], "basis": {"builtin": "godel", "n": 3}}, "opens": [["0"], ["1"]]}"#;
        let v: serde_json::Value = parse_json(topo).unwrap();
        assert_eq!(DocKind::detect(&v), Some(DocKind::Topology));
        let s = l.space(&from_value(v).unwrap()).unwrap();
        assert_eq!(s.interior(), &InteriorMap::least(s.ground()));
    }

    #[test]
    fn malformed_json_is_input_error() {
        let e = parse_json::<MonoidDoc>("{not json").unwrap_err();
        assert!(e.is_input_error());
    }
}

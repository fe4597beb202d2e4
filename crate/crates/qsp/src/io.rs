//! JSON file formats and textual inputs.
//!
//! Schemas (all keys are fixed; optional keys are omitted when empty):
//!
//! * Cartan datum: `{"labels": ["1", ...], "matrix": [[2, -1], ...], "gim": true?}`
//! * Admissible pair: `{"cartan": {...}?, "X": [1, 3], "tau": {"1": 3, "3": 1}}`,
//!   with nodes named by label and only the non-fixed points of `tau` listed.
//! * Parameters: `{"c": {"1": "q^2"}, "s": {"2": "1"}}`, keyed by label.
//! * Presentation: `{"cartan", "pair", "params", "generators", "relations"}`
//!   with relation records `{"kind", "i", "j", "beta"?, "terms", "lower"?,
//!   "closed_agrees"?}` and terms `{"coeff": "<scalar>", "word": ["B1", "E2", "K[1,0,-1]"]}`.
//! * Diagnostics: `{"error": {"kind": "PoleAtOne", "message": "..."}}`.

use std::collections::BTreeMap;

use qsp_core::algebra::{format_coeff, format_element_with, parse_element, Element, Engine, Gen};
use qsp_core::cartan::{CartanDatum, DiagramMap, GimMatrix};
use qsp_core::param::{parse_param_poly_with, Var};
use qsp_core::qsp::{QspPresentation, QspParams, Relation, RelationKind, WordPoly};
use qsp_core::weyl::{AdmissibilityFailure, AdmissiblePair};
use qsp_core::{Coefficient, Error, ParamPoly, Result};
use serde::{Deserialize, Serialize};

fn is_false(b: &bool) -> bool {
    !*b
}

/// A node reference: a label given as a number or a string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Node {
    Int(i64),
    Label(String),
}

impl Node {
    pub fn of(label: &str) -> Self {
        match label.parse::<i64>() {
            Ok(n) if n.to_string() == label => Node::Int(n),
            _ => Node::Label(label.to_string()),
        }
    }

    pub fn text(&self) -> String {
        match self {
            Node::Int(n) => n.to_string(),
            Node::Label(s) => s.clone(),
        }
    }
}

pub fn node_index(labels: &[String], label: &str) -> Result<usize> {
    labels
        .iter()
        .position(|l| l == label)
        .ok_or_else(|| Error::Parse(format!("unknown node `{label}`")))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CartanJson {
    pub labels: Vec<String>,
    pub matrix: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "is_false")]
    pub gim: bool,
}

impl CartanJson {
    pub fn from_datum(d: &CartanDatum) -> Self {
        CartanJson { labels: d.labels.clone(), matrix: d.a.clone(), gim: false }
    }

    pub fn from_gim(g: &GimMatrix) -> Self {
        CartanJson { labels: g.labels.clone(), matrix: g.a.clone(), gim: true }
    }

    pub fn to_datum(&self) -> Result<CartanDatum> {
        if self.gim {
            return Err(Error::Parse("expected a Cartan matrix, found a GIM".into()));
        }
        CartanDatum::new(self.labels.clone(), self.matrix.clone())
    }

    pub fn to_gim(&self) -> Result<GimMatrix> {
        GimMatrix::new(self.labels.clone(), self.matrix.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cartan: Option<CartanJson>,
    #[serde(rename = "X")]
    pub x: Vec<Node>,
    #[serde(default)]
    pub tau: BTreeMap<String, Node>,
}

impl PairJson {
    pub fn from_pair(p: &AdmissiblePair, with_cartan: bool) -> Self {
        let l = &p.datum.labels;
        let tau = (0..p.rank())
            .filter(|&i| p.tau.apply(i) != i)
            .map(|i| (l[i].clone(), Node::of(&l[p.tau.apply(i)])))
            .collect();
        PairJson {
            cartan: with_cartan.then(|| CartanJson::from_datum(&p.datum)),
            x: p.x.iter().map(|&i| Node::of(&l[i])).collect(),
            tau,
        }
    }

    /// Resolves `X` and `τ` against `d` (or the embedded datum).
    pub fn resolve(&self, d: Option<&CartanDatum>) -> Result<(CartanDatum, Vec<usize>, DiagramMap)> {
        let d = match (&self.cartan, d) {
            (_, Some(d)) => d.clone(),
            (Some(c), None) => c.to_datum()?,
            (None, None) => return Err(Error::Parse("pair file has no Cartan datum".into())),
        };
        let l = &d.labels;
        let x = self.x.iter().map(|n| node_index(l, &n.text())).collect::<Result<Vec<_>>>()?;
        let mut perm: Vec<usize> = (0..d.rank()).collect();
        for (k, v) in &self.tau {
            perm[node_index(l, k)?] = node_index(l, &v.text())?;
        }
        Ok((d, x, DiagramMap { perm }))
    }
}

/// Resolves parameter symbols `c<label>`, `s<label>`.
pub fn param_resolver(labels: &[String]) -> impl Fn(&str) -> Option<Var> + '_ {
    move |id: &str| {
        let name = id.chars().next()?;
        if name != 'c' && name != 's' {
            return None;
        }
        let idx = labels.iter().position(|l| l == &id[1..])?;
        Some(Var { name, idx: idx as u32 })
    }
}

/// Parses a coefficient expression over `q`, `i` and the parameters.
pub fn parse_coeff(labels: &[String], s: &str) -> Result<ParamPoly> {
    parse_param_poly_with(s, &param_resolver(labels))
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamsJson {
    #[serde(default)]
    pub c: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub s: BTreeMap<String, String>,
}

impl ParamsJson {
    pub fn from_params(p: &QspParams) -> Self {
        let l = &p.pair.datum.labels;
        let entries = |v: &[ParamPoly]| {
            v.iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(i, x)| (l[i].clone(), format_coeff(x, l)))
                .collect()
        };
        ParamsJson { c: entries(&p.c), s: entries(&p.s) }
    }

    /// Builds validated parameters; missing `c` entries default to the
    /// symbolic choice, missing `s` entries to zero.
    pub fn to_params(&self, pair: &AdmissiblePair) -> Result<QspParams> {
        let l = &pair.datum.labels;
        let std = QspParams::standard(pair)?;
        let mut c = std.c;
        let mut s = std.s;
        for (k, v) in &self.c {
            c[node_index(l, k)?] = parse_coeff(l, v)?;
        }
        for (k, v) in &self.s {
            s[node_index(l, k)?] = parse_coeff(l, v)?;
        }
        QspParams::new(pair.clone(), c, s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: String,
    pub word: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationJson {
    pub kind: String,
    pub i: String,
    pub j: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub beta: Vec<i64>,
    pub terms: Vec<TermJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lower: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub closed_agrees: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationJson {
    pub cartan: CartanJson,
    pub pair: PairJson,
    pub params: ParamsJson,
    pub generators: Vec<String>,
    pub relations: Vec<RelationJson>,
}

pub fn kind_name(k: RelationKind) -> &'static str {
    match k {
        RelationKind::KCommute => "k-commute",
        RelationKind::ECommute => "e-commute",
        RelationKind::Serre => "serre",
    }
}

fn kind_of(s: &str) -> Result<RelationKind> {
    match s {
        "k-commute" => Ok(RelationKind::KCommute),
        "e-commute" => Ok(RelationKind::ECommute),
        "serre" => Ok(RelationKind::Serre),
        _ => Err(Error::Parse(format!("unknown relation kind `{s}`"))),
    }
}

/// Token for a generator; the lowering letter of a presentation is `B`.
pub fn gen_token(g: &Gen, labels: &[String]) -> String {
    match g {
        Gen::E(i) => format!("E{}", labels[*i]),
        Gen::F(i) => format!("B{}", labels[*i]),
        Gen::K(b) => {
            let v: Vec<String> = b.iter().map(|x| x.to_string()).collect();
            format!("K[{}]", v.join(","))
        }
    }
}

pub fn parse_gen_token(t: &str, labels: &[String]) -> Result<Gen> {
    if let Some(rest) = t.strip_prefix("K[").and_then(|r| r.strip_suffix(']')) {
        let v = rest
            .split(',')
            .map(|x| x.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad token `{t}`"))))
            .collect::<Result<Vec<_>>>()?;
        if v.len() != labels.len() {
            return Err(Error::Parse(format!("bad token `{t}`")));
        }
        return Ok(Gen::K(v));
    }
    let (head, label) = t.split_at(t.chars().next().map_or(0, |c| c.len_utf8()));
    let i = node_index(labels, label)?;
    match head {
        "E" => Ok(Gen::E(i)),
        "B" => Ok(Gen::F(i)),
        _ => Err(Error::Parse(format!("bad token `{t}`"))),
    }
}

/// A formal element in `B`-notation.
pub fn format_formal(a: &Element<ParamPoly>, labels: &[String]) -> String {
    format_element_with(a, labels, "B")
}

/// Reads back [`format_formal`] output in the formal engine.
pub fn parse_formal(eng: &Engine, s: &str) -> Result<Element<ParamPoly>> {
    parse_element(eng, &s.replace('B', "F"))
}

fn poly_json(poly: &WordPoly, labels: &[String]) -> Vec<TermJson> {
    poly.iter()
        .map(|(c, w)| TermJson { coeff: format_coeff(c, labels), word: w.iter().map(|g| gen_token(g, labels)).collect() })
        .collect()
}

impl PresentationJson {
    pub fn from_presentation(p: &QspPresentation) -> Self {
        let pair = &p.params.pair;
        let l = &pair.datum.labels;
        let relations = p
            .relations
            .iter()
            .map(|r| RelationJson {
                kind: kind_name(r.kind).into(),
                i: l[r.i].clone(),
                j: l[r.j].clone(),
                beta: r.beta.clone(),
                terms: poly_json(&r.poly, l),
                lower: r.lower.as_ref().map(|x| format_formal(x, l)),
                closed_agrees: r.closed_agrees,
            })
            .collect();
        PresentationJson {
            cartan: CartanJson::from_datum(&pair.datum),
            pair: PairJson::from_pair(pair, false),
            params: ParamsJson::from_params(&p.params),
            generators: p.generators(),
            relations,
        }
    }

    /// Rebuilds the presentation; `formal` parses the `lower` fields.
    pub fn to_presentation(&self, formal: &Engine) -> Result<QspPresentation> {
        let d = self.cartan.to_datum()?;
        let (d, x, tau) = self.pair.resolve(Some(&d))?;
        let pair = AdmissiblePair::build(&d, &x, &tau)?;
        let params = self.params.to_params(&pair)?;
        let l = &d.labels;
        let mut rels = Vec::new();
        for r in &self.relations {
            let poly = r
                .terms
                .iter()
                .map(|t| {
                    let w = t.word.iter().map(|g| parse_gen_token(g, l)).collect::<Result<Vec<_>>>()?;
                    Ok((parse_coeff(l, &t.coeff)?, w))
                })
                .collect::<Result<WordPoly>>()?;
            rels.push(Relation {
                kind: kind_of(&r.kind)?,
                i: node_index(l, &r.i)?,
                j: node_index(l, &r.j)?,
                beta: r.beta.clone(),
                poly,
                lower: r.lower.as_ref().map(|s| parse_formal(formal, s)).transpose()?,
                closed_agrees: r.closed_agrees,
            });
        }
        Ok(QspPresentation { params, q_theta_basis: pair.q_theta_basis(), relations: rels })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailureJson {
    pub condition: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdmissibleJson {
    pub admissible: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<FailureJson>,
}

impl AdmissibleJson {
    pub fn from_failures(f: &[AdmissibilityFailure]) -> Self {
        let failures = f
            .iter()
            .map(|x| {
                let (c, d) = match x {
                    AdmissibilityFailure::NotFiniteType => ("finite-type", String::from("X is not of finite type")),
                    AdmissibilityFailure::Condition1(m) => ("1", m.clone()),
                    AdmissibilityFailure::Condition2(m) => ("2", m.clone()),
                    AdmissibilityFailure::Condition3(m) => ("3", m.clone()),
                };
                FailureJson { condition: c.into(), detail: d }
            })
            .collect();
        AdmissibleJson { admissible: f.is_empty(), failures }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagnosticBody {
    pub kind: String,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub error: DiagnosticBody,
}

pub fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::DivisionByZero => "DivisionByZero",
        Error::PoleAtOne => "PoleAtOne",
        Error::Parse(_) => "Parse",
        Error::NotGcm(_) => "NotGcm",
        Error::NotSymmetrizable => "NotSymmetrizable",
        Error::NotFiniteType => "NotFiniteType",
        Error::NotIndecomposable => "NotIndecomposable",
        Error::IndexSetTooLarge(_) => "IndexSetTooLarge",
        Error::HeightCapExceeded { .. } => "HeightCapExceeded",
        Error::InvalidCharacter => "InvalidCharacter",
        Error::DegeneratePair => "DegeneratePair",
        Error::NotAdmissible(_) => "NotAdmissible",
        Error::InvalidParameters(_) => "InvalidParameters",
        Error::ComponentNotFound(_) => "ComponentNotFound",
        Error::UnsupportedCase(_) => "UnsupportedCase",
        Error::NoSquareRootInField => "NoSquareRootInField",
        Error::NotUnoriented => "NotUnoriented",
        Error::NotInSpan(_) => "NotInSpan",
    }
}

impl Diagnostic {
    pub fn of(e: &Error) -> Self {
        Diagnostic { error: DiagnosticBody { kind: error_kind(e).into(), message: e.to_string() } }
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(x: &T) -> String {
    let mut s = serde_json::to_string_pretty(x).expect("serializable");
    s.push('\n');
    s
}

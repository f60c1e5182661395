//! Input types shared by the flag form and the --config file form.
//! Matrix and algebra arguments accept either bare rows or the full
//! serialized record; both paths re-validate through the library
//! constructors so a config file can never smuggle in a bad matrix.

use std::str::FromStr;

use clap::Args;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize};
use serde_json::Value;

use kmkit::graded::GradedAlgebraSpec;
use kmkit::unipotent::{GPElement, OrbitMode};
use kmkit::{gcm_to_coxeter, Bond, CoxeterMatrix, CoxeterSystem, GeneralizedCartanMatrix};

pub fn coxeter_from_value(v: Value) -> Result<CoxeterMatrix, String> {
    // bare rows [[1,3],[3,1]] or the full {n, m} record; 0 doubles as "inf"
    let rows: Vec<Vec<Bond>> = if v.is_array() {
        serde_json::from_value(v).map_err(|e| e.to_string())?
    } else {
        serde_json::from_value::<CoxeterMatrix>(v)
            .map_err(|e| e.to_string())?
            .m
    };
    let rows = rows
        .into_iter()
        .map(|r| {
            r.into_iter()
                .map(|b| if b == Bond::Finite(0) { Bond::Inf } else { b })
                .collect()
        })
        .collect();
    CoxeterMatrix::new(rows).map_err(|e| e.to_string())
}

pub fn gcm_from_value(v: Value) -> Result<GeneralizedCartanMatrix, String> {
    let rows: Vec<Vec<i64>> = if v.is_array() {
        serde_json::from_value(v).map_err(|e| e.to_string())?
    } else {
        serde_json::from_value::<GeneralizedCartanMatrix>(v)
            .map_err(|e| e.to_string())?
            .a
    };
    GeneralizedCartanMatrix::new(rows).map_err(|e| e.to_string())
}

pub fn spec_from_value(v: Value) -> Result<GradedAlgebraSpec, String> {
    let s: GradedAlgebraSpec = serde_json::from_value(v).map_err(|e| e.to_string())?;
    GradedAlgebraSpec::new(s.char_q, s.generators).map_err(|e| e.to_string())
}

pub fn element_from_value(v: Value) -> Result<GPElement, String> {
    // bare syllable list [[node, [coeffs]], ...] or the full record
    if v.is_array() {
        let syllables = serde_json::from_value(v).map_err(|e| e.to_string())?;
        Ok(GPElement { syllables })
    } else {
        serde_json::from_value(v).map_err(|e| e.to_string())
    }
}

fn json_arg<T>(s: &str, f: impl Fn(Value) -> Result<T, String>) -> Result<T, String> {
    f(serde_json::from_str(s).map_err(|e| e.to_string())?)
}

pub fn parse_coxeter(s: &str) -> Result<CoxeterMatrix, String> {
    json_arg(s, coxeter_from_value)
}

pub fn parse_gcm(s: &str) -> Result<GeneralizedCartanMatrix, String> {
    json_arg(s, gcm_from_value)
}

pub fn parse_spec(s: &str) -> Result<GradedAlgebraSpec, String> {
    json_arg(s, spec_from_value)
}

fn de_via<'de, D, T>(d: D, f: impl Fn(Value) -> Result<T, String>) -> Result<T, D::Error>
where
    D: Deserializer<'de>,
{
    f(Value::deserialize(d)?).map_err(D::Error::custom)
}

fn de_gcm<'de, D: Deserializer<'de>>(d: D) -> Result<GeneralizedCartanMatrix, D::Error> {
    de_via(d, gcm_from_value)
}

fn de_spec<'de, D: Deserializer<'de>>(d: D) -> Result<GradedAlgebraSpec, D::Error> {
    de_via(d, spec_from_value)
}

fn de_coxeter_opt<'de, D: Deserializer<'de>>(d: D) -> Result<Option<CoxeterMatrix>, D::Error> {
    Option::<Value>::deserialize(d)?
        .map(|v| coxeter_from_value(v).map_err(D::Error::custom))
        .transpose()
}

fn de_gcm_opt<'de, D: Deserializer<'de>>(
    d: D,
) -> Result<Option<GeneralizedCartanMatrix>, D::Error> {
    Option::<Value>::deserialize(d)?
        .map(|v| gcm_from_value(v).map_err(D::Error::custom))
        .transpose()
}

/// Generator word, 1-based: "2,1,2" on the command line, an integer list
/// in config files.  Empty or "e" is the identity.
#[derive(Debug, Clone)]
pub struct Word(pub Vec<usize>);

impl FromStr for Word {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        if s.is_empty() || s == "e" {
            return Ok(Word(vec![]));
        }
        s.split(',')
            .map(|t| t.trim().parse().map_err(|e| format!("word entry {t:?}: {e}")))
            .collect::<Result<_, _>>()
            .map(Word)
    }
}

impl Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            List(Vec<usize>),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::List(w) => Ok(Word(w)),
            Raw::Text(t) => t.parse().map_err(D::Error::custom),
        }
    }
}

/// Comma list of tower branch depths, e.g. "2,3,5".
#[derive(Debug, Clone)]
pub struct DepthList(pub Vec<usize>);

impl FromStr for DepthList {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let depths: Vec<usize> = s
            .split(',')
            .map(|t| t.trim().parse().map_err(|e| format!("depth {t:?}: {e}")))
            .collect::<Result<_, _>>()?;
        if depths.is_empty() {
            return Err("at least one depth required".into());
        }
        Ok(DepthList(depths))
    }
}

impl Serialize for DepthList {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for DepthList {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            List(Vec<usize>),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::List(v) if !v.is_empty() => Ok(DepthList(v)),
            Raw::List(_) => Err(D::Error::custom("at least one depth required")),
            Raw::Text(t) => t.parse().map_err(D::Error::custom),
        }
    }
}

/// Tree-group element: JSON syllable list [[node,[coeffs]],...] or the
/// full {"syllables": ...} record.
#[derive(Debug, Clone)]
pub struct ElementArg(pub GPElement);

impl FromStr for ElementArg {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        json_arg(s, element_from_value).map(ElementArg)
    }
}

impl Serialize for ElementArg {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ElementArg {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        de_via(d, element_from_value).map(ElementArg)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeArg {
    /// cosets taken at each tree word itself
    Weak,
    /// cosets taken at the longest element over each finite-type coset
    Davis,
}

impl From<ModeArg> for OrbitMode {
    fn from(m: ModeArg) -> OrbitMode {
        match m {
            ModeArg::Weak => OrbitMode::Weak,
            ModeArg::Davis => OrbitMode::Davis,
        }
    }
}

/// Exactly one of the two matrix forms.
#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct MatrixArg {
    /// Coxeter matrix, JSON rows [[1,3],[3,1]]; 0 or "inf" marks an infinite bond
    #[arg(long, value_parser = parse_coxeter, value_name = "JSON")]
    #[serde(
        default,
        skip_serializing_if = "Option::is_none",
        deserialize_with = "de_coxeter_opt"
    )]
    pub coxeter: Option<CoxeterMatrix>,
    /// Generalized Cartan matrix, JSON rows [[2,-2],[-2,2]]
    #[arg(long, value_parser = parse_gcm, value_name = "JSON")]
    #[serde(
        default,
        skip_serializing_if = "Option::is_none",
        deserialize_with = "de_gcm_opt"
    )]
    pub gcm: Option<GeneralizedCartanMatrix>,
}

impl MatrixArg {
    pub fn system(&self) -> kmkit::Result<CoxeterSystem> {
        let m = match (&self.coxeter, &self.gcm) {
            (Some(m), None) => m.clone(),
            (None, Some(a)) => gcm_to_coxeter(a),
            _ => {
                return Err(kmkit::Error::InvalidParameter(
                    "give exactly one of --coxeter / --gcm".into(),
                ))
            }
        };
        CoxeterSystem::new(m)
    }
}

fn d1() -> usize {
    1
}
fn d2() -> usize {
    2
}
fn d3() -> usize {
    3
}
fn d6() -> usize {
    6
}
fn d8() -> usize {
    8
}
fn d10() -> usize {
    10
}
fn d20() -> usize {
    20
}
fn weak() -> ModeArg {
    ModeArg::Weak
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct NfArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub matrix: MatrixArg,
    /// Word in the generators, e.g. "2,1,2,1,2"
    #[arg(long)]
    pub word: Word,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct ThetaArgs {
    /// Generalized Cartan matrix; the roots live in its lattice
    #[arg(long, value_parser = parse_gcm, value_name = "JSON")]
    #[serde(deserialize_with = "de_gcm")]
    pub gcm: GeneralizedCartanMatrix,
    #[arg(long)]
    pub word: Word,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct FiniteTypeArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub matrix: MatrixArg,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct DavisArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub matrix: MatrixArg,
    /// Weak-order ball radius supplying the base elements
    #[arg(long, default_value_t = 3)]
    #[serde(default = "d3")]
    pub radius: usize,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct CheckCombinArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub matrix: MatrixArg,
    /// Sweep every weak-order pair v <= w with l(w) <= radius
    #[arg(long, default_value_t = 6)]
    #[serde(default = "d6")]
    pub radius: usize,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct CheckPullbackArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub matrix: MatrixArg,
    #[arg(long, default_value_t = 3)]
    #[serde(default = "d3")]
    pub radius: usize,
}

/// Word tree plus the coefficient field of the unipotent model.
#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct TreeArgs {
    /// Generalized Cartan matrix of the ambient system
    #[arg(long, value_parser = parse_gcm, value_name = "JSON")]
    #[serde(deserialize_with = "de_gcm")]
    pub gcm: GeneralizedCartanMatrix,
    /// Truncation depth of the word tree
    #[arg(long)]
    pub depth: usize,
    /// Field characteristic (prime)
    #[arg(long)]
    pub p: u64,
    /// Field order exponent, field = p^k elements
    #[arg(long, default_value_t = 1)]
    #[serde(default = "d1")]
    pub k: usize,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct GpMulArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub tree: TreeArgs,
    /// Left factor
    #[arg(long)]
    pub a: ElementArg,
    /// Right factor
    #[arg(long)]
    pub b: ElementArg,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct GpInvArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub tree: TreeArgs,
    #[arg(long)]
    pub a: ElementArg,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct GpMemberArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub tree: TreeArgs,
    #[arg(long)]
    pub a: ElementArg,
    /// Subgroup is attached to this word (no immediate letter repeats)
    #[arg(long)]
    pub word: Word,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct OrbitArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub tree: TreeArgs,
    /// Simple generator whose root subgroup acts
    #[arg(long, default_value_t = 1)]
    #[serde(default = "d1")]
    pub generator: usize,
    #[arg(long, value_enum, default_value_t = ModeArg::Weak)]
    #[serde(default = "weak")]
    pub mode: ModeArg,
    /// Radius bounding the base poset
    #[arg(long, default_value_t = 2)]
    #[serde(default = "d2")]
    pub radius: usize,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct TorArgs {
    /// Module-side algebra, JSON {"char_q", "generators": [...]}
    #[arg(long, value_parser = parse_spec, value_name = "JSON")]
    #[serde(deserialize_with = "de_spec")]
    pub x: GradedAlgebraSpec,
    /// Algebra resolved over (trivial-module coefficients)
    #[arg(long, value_parser = parse_spec, value_name = "JSON")]
    #[serde(deserialize_with = "de_spec")]
    pub over: GradedAlgebraSpec,
    /// Total-degree window of the report
    #[arg(long, default_value_t = 10)]
    #[serde(default = "d10")]
    pub maxdeg: usize,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct Rank2Args {
    #[arg(long)]
    pub p: u64,
    #[arg(long, default_value_t = 1)]
    #[serde(default = "d1")]
    pub k: usize,
    /// Weight parameter of the second polynomial generator
    #[arg(long)]
    pub l: usize,
    /// Coefficient field characteristic
    #[arg(long)]
    pub q: u64,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct LeviArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long, default_value_t = 1)]
    #[serde(default = "d1")]
    pub k: usize,
    #[arg(long)]
    pub q: u64,
    #[arg(long, default_value_t = 20)]
    #[serde(default = "d20")]
    pub maxdeg: usize,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct BkfqArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long, default_value_t = 1)]
    #[serde(default = "d1")]
    pub k: usize,
    #[arg(long)]
    pub q: u64,
    /// Required on the p^k = 1 mod q row, ignored elsewhere
    #[arg(long)]
    #[serde(default)]
    pub l: Option<usize>,
    #[arg(long, default_value_t = 20)]
    #[serde(default = "d20")]
    pub maxdeg: usize,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct TreeHilbertArgs {
    #[arg(long, value_parser = parse_gcm, value_name = "JSON")]
    #[serde(deserialize_with = "de_gcm")]
    pub gcm: GeneralizedCartanMatrix,
    /// Largest truncation depth of the tower
    #[arg(long)]
    pub depth: usize,
    /// Node group order base (prime)
    #[arg(long)]
    pub p: u64,
    #[arg(long, default_value_t = 1)]
    #[serde(default = "d1")]
    pub k: usize,
    /// Coefficient field characteristic
    #[arg(long)]
    pub q: u64,
    #[arg(long, default_value_t = 8)]
    #[serde(default = "d8")]
    pub maxdeg: usize,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct TelescopeArgs {
    /// Branch depths of the tower, e.g. "2,3,5"
    #[arg(long)]
    pub depths: DepthList,
    #[arg(long)]
    pub p: u64,
    #[arg(long, default_value_t = 1)]
    #[serde(default = "d1")]
    pub k: usize,
    #[arg(long)]
    pub q: u64,
    #[arg(long, default_value_t = 10)]
    #[serde(default = "d10")]
    pub maxdeg: usize,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct W3Args {
    #[arg(long, default_value_t = 8)]
    #[serde(default = "d8")]
    pub maxdeg: usize,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct HasseDotArgs {
    #[arg(long, value_parser = parse_gcm, value_name = "JSON")]
    #[serde(deserialize_with = "de_gcm")]
    pub gcm: GeneralizedCartanMatrix,
    #[arg(long)]
    pub depth: usize,
}

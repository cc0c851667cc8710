use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Ambient, DEFAULT_FD_STEP};
use crate::multiindex::{MultiIndex, Partition};
use crate::oracle::{McConfig, MIN_SAMPLE_COUNT};
use crate::quadrature::{QuadratureSpec, RadialMethod, MIN_NODES_PER_AXIS};
use crate::symbols::{validate_orthogonal, QuasiHomogeneousSymbol, QuasiRadialSymbol, SymbolClassRkh, TabulatedRadial};
use crate::toeplitz::{check_assembly, SpectralOptions};

pub const SCHEMA_VERSION: u32 = 1;
/// Largest space dimension an experiment may request; matrices are dense.
pub const MAX_DIM: usize = 2000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckKind {
    Spectrum,
    Assemble,
    Commute,
    Oracle,
    Geometry,
    RkhAlgebra,
}

impl CheckKind {
    pub const ALL: [CheckKind; 6] =
        [Self::Spectrum, Self::Assemble, Self::Commute, Self::Oracle, Self::Geometry, Self::RkhAlgebra];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Spectrum => "spectrum",
            Self::Assemble => "assemble",
            Self::Commute => "commute",
            Self::Oracle => "oracle",
            Self::Geometry => "geometry",
            Self::RkhAlgebra => "rkh-algebra",
        }
    }

    /// Checks that assemble Toeplitz matrices from the symbol list.
    fn uses_symbols(self) -> bool {
        matches!(self, Self::Spectrum | Self::Assemble | Self::Commute | Self::Oracle)
    }
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CheckKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL.into_iter().find(|c| c.as_str() == s).ok_or_else(|| {
            let names: Vec<&str> = Self::ALL.iter().map(|c| c.as_str()).collect();
            Error::InvalidArgument(format!("unknown check `{s}`; expected one of {}", names.join(", ")))
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Constant,
    RadialMonomial,
    InversePower,
    BoundedRational,
    Tabulated,
}

/// `{"family": ..., "params": {...}, "p": [...], "q": [...]}`; `p` and `q` default to zero.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymbolLiteral {
    pub family: Family,
    #[serde(default, skip_serializing_if = "serde_json::Value::is_null")]
    pub params: serde_json::Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<Vec<u32>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ConstantParams {
    re: f64,
    #[serde(default)]
    im: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MonomialParams {
    c: Vec<u32>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct InverseParams {
    t: u32,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RationalParams {
    c: Vec<u32>,
    t: u32,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TabulatedParams {
    weights: Vec<f64>,
}

fn config_err(path: impl Into<String>, message: impl fmt::Display) -> Error {
    Error::Config { path: path.into(), message: message.to_string() }
}

/// Deserializes `value`, reporting failures at `prefix` joined with serde's own path.
fn parse_at<D: DeserializeOwned>(value: &serde_json::Value, prefix: &str) -> Result<D> {
    serde_path_to_error::deserialize(value).map_err(|e| {
        let inner = e.path().to_string();
        let path = if inner == "." { prefix.to_string() } else { format!("{prefix}.{inner}") };
        config_err(path, e.into_inner())
    })
}

impl SymbolLiteral {
    pub fn new(family: Family, params: serde_json::Value) -> Self {
        Self { family, params, p: None, q: None }
    }

    pub fn with_indices(mut self, p: Vec<u32>, q: Vec<u32>) -> Self {
        self.p = Some(p);
        self.q = Some(q);
        self
    }

    /// The symbol on `ℂⁿ` with `l` blocks; `path` prefixes error locations.
    pub fn resolve(&self, n: usize, l: usize, path: &str) -> Result<QuasiHomogeneousSymbol<f64>> {
        let params = if self.params.is_null() { serde_json::json!({}) } else { self.params.clone() };
        let ppath = format!("{path}.params");
        let check_c = |c: &[u32]| {
            if c.len() != l {
                return Err(config_err(format!("{ppath}.c"), format!("expected {l} block exponents, found {}", c.len())));
            }
            Ok(())
        };
        let radial = match self.family {
            Family::Constant => {
                let c: ConstantParams = parse_at(&params, &ppath)?;
                if !c.re.is_finite() || !c.im.is_finite() {
                    return Err(config_err(ppath, "constant must be finite"));
                }
                QuasiRadialSymbol::constant(c.re, c.im)
            }
            Family::RadialMonomial => {
                let c: MonomialParams = parse_at(&params, &ppath)?;
                check_c(&c.c)?;
                QuasiRadialSymbol::RadialMonomial { c: c.c }
            }
            Family::InversePower => {
                let c: InverseParams = parse_at(&params, &ppath)?;
                QuasiRadialSymbol::InversePower { t: c.t }
            }
            Family::BoundedRational => {
                let c: RationalParams = parse_at(&params, &ppath)?;
                check_c(&c.c)?;
                QuasiRadialSymbol::BoundedRational { c: c.c, t: c.t }
            }
            Family::Tabulated => {
                let c: TabulatedParams = parse_at(&params, &ppath)?;
                if c.weights.len() != l {
                    return Err(config_err(
                        format!("{ppath}.weights"),
                        format!("expected {l} weights, found {}", c.weights.len()),
                    ));
                }
                if let Some(i) = c.weights.iter().position(|w| !w.is_finite() || *w < 0.0) {
                    return Err(config_err(format!("{ppath}.weights[{i}]"), "weights must be finite and non-negative"));
                }
                QuasiRadialSymbol::Tabulated(TabulatedRadial::exp_neg(c.weights))
            }
        };
        let index = |v: &Option<Vec<u32>>, name: &str| -> Result<MultiIndex> {
            match v {
                None => Ok(MultiIndex::zeros(n)),
                Some(v) if v.len() != n => {
                    Err(config_err(format!("{path}.{name}"), format!("expected {n} entries, found {}", v.len())))
                }
                Some(v) => Ok(MultiIndex::new(v.clone())),
            }
        };
        let (p, q) = (index(&self.p, "p")?, index(&self.q, "q")?);
        if !validate_orthogonal(&p, &q)? {
            return Err(config_err(path, format!("p = {p} and q = {q} must have disjoint supports (p·q = 0)")));
        }
        QuasiHomogeneousSymbol::new(radial, p, q).map_err(|e| config_err(path, e))
    }
}

/// Upper bounds on measured deviations, except `separation_floor`, which is the lower
/// bound a commutator must reach when non-commutation is predicted.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    pub commute: f64,
    pub separation_floor: f64,
    /// Spectral against separated direct assembly.
    pub oracle_separated: f64,
    /// Standard errors allowed for Monte-Carlo direct assembly.
    pub oracle_sigmas: f64,
    pub geometry: GeometryTolerances,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            commute: 1e-9,
            separation_floor: 1e-3,
            oracle_separated: 1e-6,
            oracle_sigmas: 3.0,
            geometry: GeometryTolerances::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GeometryTolerances {
    pub lagrangian: f64,
    pub frame_orthogonality: f64,
    pub bracket: f64,
    pub ak_invariance: f64,
    pub bk_equivariance: f64,
    pub isometry: f64,
    pub recomposition: f64,
    pub bk_constraint: f64,
    pub tangency: f64,
    pub metric: f64,
}

impl Default for GeometryTolerances {
    fn default() -> Self {
        Self {
            lagrangian: 1e-12,
            frame_orthogonality: 1e-12,
            bracket: 1e-8,
            ak_invariance: 1e-12,
            bk_equivariance: 1e-12,
            isometry: 1e-12,
            recomposition: 1e-13,
            bk_constraint: 1e-12,
            tangency: 1e-6,
            metric: 1e-12,
        }
    }
}

impl GeometryTolerances {
    fn fields_mut(&mut self) -> [(&'static str, &mut f64); 10] {
        [
            ("lagrangian", &mut self.lagrangian),
            ("frame_orthogonality", &mut self.frame_orthogonality),
            ("bracket", &mut self.bracket),
            ("ak_invariance", &mut self.ak_invariance),
            ("bk_equivariance", &mut self.bk_equivariance),
            ("isometry", &mut self.isometry),
            ("recomposition", &mut self.recomposition),
            ("bk_constraint", &mut self.bk_constraint),
            ("tangency", &mut self.tangency),
            ("metric", &mut self.metric),
        ]
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GeometryConfig {
    pub samples: usize,
    pub ambients: Vec<Ambient>,
    pub fd_step: f64,
}

impl Default for GeometryConfig {
    fn default() -> Self {
        Self { samples: 1000, ambients: vec![Ambient::ProjectiveChart, Ambient::Ball], fd_step: DEFAULT_FD_STEP }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RkhConfig {
    /// Generators `ξᵖξ̄^q` of `R_k(h)` are enumerated up to this block degree.
    pub max_block_degree: u32,
}

impl Default for RkhConfig {
    fn default() -> Self {
        Self { max_block_degree: 1 }
    }
}

fn default_output_dir() -> String {
    "qhlab-out".into()
}

fn default_scale() -> f64 {
    1.0
}

fn is_unit(x: &f64) -> bool {
    *x == 1.0
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub schema_version: u32,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    /// Inclusive range `[lo, hi]`, an alternative to `m`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m_range: Option<[u32; 2]>,
    pub partition: Vec<usize>,
    /// `h_j` per block; entries for blocks of size one are ignored.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bounds: Option<Vec<usize>>,
    #[serde(default)]
    pub symbols: Vec<SymbolLiteral>,
    pub checks: Vec<CheckKind>,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default)]
    pub quadrature: QuadratureSpec,
    #[serde(default)]
    pub spectral_method: RadialMethod,
    #[serde(default)]
    pub monte_carlo: McConfig,
    #[serde(default)]
    pub geometry: GeometryConfig,
    #[serde(default)]
    pub rkh: RkhConfig,
    #[serde(default = "default_output_dir")]
    pub output_dir: String,
    /// Set by `--tolerance-scale`; already folded into `tolerances`.
    #[serde(default = "default_scale", skip_serializing_if = "is_unit")]
    pub tolerance_scale: f64,
}

/// A validated configuration with every derived object built.
#[derive(Clone, Debug)]
pub struct Plan {
    pub config: ExperimentConfig,
    pub partition: Partition,
    pub degrees: Vec<u32>,
    pub symbols: Vec<QuasiHomogeneousSymbol<f64>>,
    pub class: Option<SymbolClassRkh>,
}

impl Plan {
    pub fn spectral_options(&self) -> SpectralOptions {
        SpectralOptions { quadrature: self.config.quadrature.clone(), method: self.config.spectral_method }
    }
}

/// Command-line overrides applied on top of a parsed config.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub output_dir: Option<String>,
    pub checks: Option<Vec<CheckKind>>,
    pub seed: Option<u64>,
    pub tolerance_scale: Option<f64>,
}

impl ExperimentConfig {
    /// Parses JSON text, reporting the failing field path.
    pub fn from_json(text: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            config_err(path, e.into_inner())
        })
    }

    pub fn from_path(path: &std::path::Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("config serializes")
    }

    pub fn apply(&mut self, o: &Overrides) -> Result<()> {
        if let Some(dir) = &o.output_dir {
            self.output_dir = dir.clone();
        }
        if let Some(checks) = &o.checks {
            self.checks = checks.clone();
        }
        if let Some(seed) = o.seed {
            self.monte_carlo.seed = seed;
        }
        if let Some(scale) = o.tolerance_scale {
            if !(scale.is_finite() && scale > 0.0) {
                return Err(config_err("--tolerance-scale", "must be a positive finite number"));
            }
            let t = &mut self.tolerances;
            for x in [&mut t.commute, &mut t.oracle_separated, &mut t.oracle_sigmas] {
                *x *= scale;
            }
            t.separation_floor /= scale;
            for (_, x) in t.geometry.fields_mut() {
                *x *= scale;
            }
            self.tolerance_scale *= scale;
        }
        Ok(())
    }

    /// The list of `m` values, in increasing order.
    pub fn degrees(&self) -> Result<Vec<u32>> {
        match (self.m, self.m_range) {
            (Some(m), None) => Ok(vec![m]),
            (None, Some([lo, hi])) if lo <= hi => Ok((lo..=hi).collect()),
            (None, Some([lo, hi])) => Err(config_err("m_range", format!("empty range [{lo}, {hi}]"))),
            (Some(_), Some(_)) => Err(config_err("m", "give either `m` or `m_range`, not both")),
            (None, None) => Err(config_err("m", "one of `m` or `m_range` is required")),
        }
    }

    /// Checks every precondition of the selected checks, building the symbols and
    /// the symbol class; nothing is integrated.
    pub fn validate(&self) -> Result<Plan> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(config_err(
                "schema_version",
                format!("unsupported version {}; expected {SCHEMA_VERSION}", self.schema_version),
            ));
        }
        if self.n == 0 {
            return Err(config_err("n", "must be positive"));
        }
        let degrees = self.degrees()?;
        let partition = Partition::new(self.partition.clone()).map_err(|e| config_err("partition", e))?;
        if partition.n() != self.n {
            return Err(config_err("partition", format!("blocks sum to {}, expected n = {}", partition.n(), self.n)));
        }
        let top = *degrees.last().expect("non-empty");
        let dim = space_dim(self.n, top);
        if dim > MAX_DIM {
            return Err(config_err(
                if self.m.is_some() { "m" } else { "m_range" },
                format!("space dimension {dim} exceeds the limit {MAX_DIM}"),
            ));
        }
        if self.checks.is_empty() {
            return Err(config_err("checks", "select at least one check"));
        }
        let mut seen = BTreeSet::new();
        for (i, c) in self.checks.iter().enumerate() {
            if !seen.insert(*c) {
                return Err(config_err(format!("checks[{i}]"), format!("`{c}` listed twice")));
            }
        }
        self.validate_numbers()?;

        let l = partition.len();
        let symbols = self
            .symbols
            .iter()
            .enumerate()
            .map(|(i, s)| s.resolve(self.n, l, &format!("symbols[{i}]")))
            .collect::<Result<Vec<_>>>()?;
        let needs_symbols = self.checks.iter().any(|c| c.uses_symbols());
        if needs_symbols {
            if symbols.is_empty() {
                return Err(config_err("symbols", "the selected checks need at least one symbol"));
            }
            if self.checks.contains(&CheckKind::Commute) && symbols.len() < 2 {
                return Err(config_err("symbols", "`commute` needs at least two symbols"));
            }
            for (i, s) in symbols.iter().enumerate() {
                if self.spectral_method == RadialMethod::ClosedForm && s.radial().closed_form(l).is_none() {
                    return Err(config_err(
                        format!("symbols[{i}].family"),
                        "spectral_method `closed_form` is unavailable for tabulated symbols",
                    ));
                }
                for &m in &degrees {
                    check_assembly(s, &partition, m).map_err(|e| config_err(format!("symbols[{i}]"), format!("m = {m}: {e}")))?;
                }
            }
        }
        let class = if self.checks.contains(&CheckKind::RkhAlgebra) {
            let bounds = self.bounds.as_ref().ok_or_else(|| config_err("bounds", "`rkh-algebra` needs the bounds h"))?;
            let class = SymbolClassRkh::from_bounds(partition.clone(), bounds).map_err(|e| config_err("bounds", e))?;
            if class.bounds().iter().all(Option::is_none) {
                return Err(config_err("partition", "R_k(h) needs a block of size at least two"));
            }
            Some(class)
        } else {
            None
        };
        Ok(Plan { config: self.clone(), partition, degrees, symbols, class })
    }

    fn validate_numbers(&self) -> Result<()> {
        let positive = |path: &str, x: f64| {
            if x.is_finite() && x > 0.0 {
                Ok(())
            } else {
                Err(config_err(path, format!("must be positive and finite, found {x}")))
            }
        };
        let mut tol = self.tolerances.clone();
        positive("tolerances.commute", tol.commute)?;
        positive("tolerances.separation_floor", tol.separation_floor)?;
        positive("tolerances.oracle_separated", tol.oracle_separated)?;
        positive("tolerances.oracle_sigmas", tol.oracle_sigmas)?;
        if tol.separation_floor <= tol.commute {
            return Err(config_err("tolerances.separation_floor", "must exceed tolerances.commute"));
        }
        for (name, x) in tol.geometry.fields_mut() {
            positive(&format!("tolerances.geometry.{name}"), *x)?;
        }
        if self.quadrature.nodes_per_axis < MIN_NODES_PER_AXIS {
            return Err(config_err(
                "quadrature.nodes_per_axis",
                format!("must be at least {MIN_NODES_PER_AXIS}, found {}", self.quadrature.nodes_per_axis),
            ));
        }
        positive("quadrature.numeric_rel_tol", self.quadrature.numeric_rel_tol)?;
        if self.checks.contains(&CheckKind::Oracle) {
            let mc = &self.monte_carlo;
            if mc.sample_count < MIN_SAMPLE_COUNT {
                return Err(config_err(
                    "monte_carlo.sample_count",
                    format!("must be at least {MIN_SAMPLE_COUNT}, found {}", mc.sample_count),
                ));
            }
            if mc.batch_size == 0 {
                return Err(config_err("monte_carlo.batch_size", "must be positive"));
            }
            if mc.quadrature.nodes_per_axis < MIN_NODES_PER_AXIS {
                return Err(config_err("monte_carlo.quadrature.nodes_per_axis", format!("must be at least {MIN_NODES_PER_AXIS}")));
            }
        }
        if self.checks.contains(&CheckKind::Geometry) {
            let g = &self.geometry;
            if g.samples == 0 {
                return Err(config_err("geometry.samples", "must be positive"));
            }
            if g.ambients.is_empty() {
                return Err(config_err("geometry.ambients", "list at least one ambient"));
            }
            if !(1e-6..=1e-2).contains(&g.fd_step) {
                return Err(config_err("geometry.fd_step", format!("{} outside [1e-6, 1e-2]", g.fd_step)));
            }
        }
        if self.output_dir.is_empty() {
            return Err(config_err("output_dir", "must not be empty"));
        }
        Ok(())
    }
}

/// `C(n + m, n)`, saturating.
fn space_dim(n: usize, m: u32) -> usize {
    let mut acc: u128 = 1;
    for i in 1..=n as u128 {
        acc = acc * (m as u128 + i) / i;
        if acc > u64::MAX as u128 {
            return usize::MAX;
        }
    }
    acc as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base() -> serde_json::Value {
        serde_json::json!({
            "schema_version": 1,
            "n": 2,
            "m": 2,
            "partition": [1, 1],
            "symbols": [
                {"family": "inverse_power", "params": {"t": 1}},
                {"family": "constant", "params": {"re": 1.0}, "p": [1, 0], "q": [0, 1]}
            ],
            "checks": ["spectrum", "commute"]
        })
    }

    fn parse(v: serde_json::Value) -> Result<Plan> {
        ExperimentConfig::from_json(&v.to_string())?.validate()
    }

    fn err_path(v: serde_json::Value) -> String {
        match parse(v) {
            Err(Error::Config { path, .. }) => path,
            other => panic!("expected a config error, got {other:?}"),
        }
    }

    #[test]
    fn valid_config_resolves() {
        let plan = parse(base()).unwrap();
        assert_eq!(plan.degrees, vec![2]);
        assert_eq!(plan.symbols.len(), 2);
        assert!(!plan.symbols[1].is_quasi_radial());
        // defaults are filled in and survive a round trip
        let again: ExperimentConfig = serde_json::from_value(plan.config.to_json()).unwrap();
        assert_eq!(again, plan.config);
    }

    #[test]
    fn field_paths_in_errors() {
        let mut v = base();
        v["symbols"][1]["params"]["re"] = serde_json::json!("one");
        assert_eq!(err_path(v), "symbols[1].params.re");
        let mut v = base();
        v["symbols"][0]["params"] = serde_json::json!({"t": 1, "s": 2});
        assert_eq!(err_path(v), "symbols[0].params.s");
        let mut v = base();
        v["partition"] = serde_json::json!([1, 2]);
        assert_eq!(err_path(v), "partition");
        let mut v = base();
        v["tolerances"] = serde_json::json!({"geometry": {"lagrangian": -1.0}});
        assert_eq!(err_path(v), "tolerances.geometry.lagrangian");
        let mut v = base();
        v["quadrature"] = serde_json::json!({"nodes_per_axis": "many"});
        assert_eq!(err_path(v), "quadrature.nodes_per_axis");
        let mut v = base();
        v["symbols"][1]["q"] = serde_json::json!([1, 1]);
        assert_eq!(err_path(v), "symbols[1]");
        let mut v = base();
        v["checks"] = serde_json::json!(["spectrum", "plot"]);
        assert!(err_path(v).starts_with("checks"));
        let mut v = base();
        v["m_range"] = serde_json::json!([1, 3]);
        assert_eq!(err_path(v), "m");
    }

    #[test]
    fn divergent_symbol_rejected_before_running() {
        let mut v = base();
        v["symbols"][0] = serde_json::json!({"family": "radial_monomial", "params": {"c": [1, 0]}});
        let msg = match parse(v) {
            Err(Error::Config { path, message }) => {
                assert_eq!(path, "symbols[0]");
                message
            }
            other => panic!("{other:?}"),
        };
        assert!(msg.contains("diverges"), "{msg}");
    }

    #[test]
    fn rkh_needs_bounds() {
        let mut v = base();
        v["n"] = serde_json::json!(4);
        v["partition"] = serde_json::json!([2, 2]);
        v["symbols"] = serde_json::json!([]);
        v["checks"] = serde_json::json!(["rkh-algebra"]);
        assert_eq!(err_path(v.clone()), "bounds");
        v["bounds"] = serde_json::json!([1, 2]);
        assert_eq!(err_path(v.clone()), "bounds");
        v["bounds"] = serde_json::json!([1, 1]);
        assert!(parse(v).unwrap().class.is_some());
    }

    #[test]
    fn overrides_apply() {
        let mut cfg = ExperimentConfig::from_json(&base().to_string()).unwrap();
        cfg.apply(&Overrides { seed: Some(7), tolerance_scale: Some(10.0), ..Default::default() }).unwrap();
        assert_eq!(cfg.monte_carlo.seed, 7);
        assert!((cfg.tolerances.commute - 1e-8).abs() < 1e-20);
        assert!((cfg.tolerances.separation_floor - 1e-4).abs() < 1e-18);
        assert!(cfg.apply(&Overrides { tolerance_scale: Some(0.0), ..Default::default() }).is_err());
        assert_eq!("rkh-algebra".parse::<CheckKind>().unwrap(), CheckKind::RkhAlgebra);
    }
}

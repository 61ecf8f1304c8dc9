//! Run configuration: a TOML file plus `key=value` overrides.
//!
//! ```toml
//! [surface]
//! fixture = "ellipsoid"
//! a = 3.0
//! b = 2.0
//! c = 1.0
//!
//! [field]
//! normal = "lightcone"
//! kind = "principal"
//!
//! [grid]
//! nu = 256
//! nv = 256
//!
//! [[seeds]]
//! u = 1.2
//! v = 2.0
//! branch = "first"
//!
//! [output]
//! dir = "out"
//! format = "csv"
//! ```

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use spacelike_core::fields::{BdeKind, Branch, TraceOptions};
use spacelike_core::surface::{AnalyticChart, Atlas, Graph4, HyperbolicGraph, NormalField};

use crate::error::CliError;

#[derive(Clone, Debug, Default, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub surface: SurfaceSpec,
    #[serde(default)]
    pub field: FieldSpec,
    #[serde(default)]
    pub grid: GridSpec,
    #[serde(default)]
    pub seeds: Vec<SeedSpec>,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default)]
    pub output: OutputSpec,
}

/// Built-in fixture and its parameters.
#[derive(Clone, Debug, PartialEq, Deserialize, Serialize)]
#[serde(tag = "fixture", rename_all = "snake_case", deny_unknown_fields)]
pub enum SurfaceSpec {
    Plane {
        #[serde(default = "one")]
        half_width: f64,
    },
    Graph4 {
        #[serde(default)]
        a20: f64,
        #[serde(default)]
        a11: f64,
        #[serde(default)]
        a02: f64,
        #[serde(default)]
        a30: f64,
        #[serde(default)]
        a21: f64,
        #[serde(default)]
        a12: f64,
        #[serde(default)]
        a03: f64,
        #[serde(default)]
        k: f64,
        #[serde(default)]
        b30: f64,
        #[serde(default)]
        b21: f64,
        #[serde(default)]
        b12: f64,
        #[serde(default)]
        b03: f64,
        #[serde(default = "half")]
        half_width: f64,
    },
    Sphere {
        r: f64,
        #[serde(default)]
        eps: f64,
    },
    Ellipsoid {
        a: f64,
        b: f64,
        c: f64,
        #[serde(default)]
        eps: f64,
    },
    Torus {
        big_r: f64,
        r: f64,
        #[serde(default)]
        eps: f64,
    },
    Hyperbolic {
        #[serde(default)]
        c20: f64,
        #[serde(default)]
        c11: f64,
        #[serde(default)]
        c02: f64,
        #[serde(default)]
        c_sin: f64,
        #[serde(default = "one")]
        half_width: f64,
    },
}

impl Default for SurfaceSpec {
    fn default() -> Self {
        SurfaceSpec::Plane { half_width: 1.0 }
    }
}

fn one() -> f64 {
    1.0
}

fn half() -> f64 {
    0.5
}

/// A surface as a list of charts, with the atlas when it is closed.
pub struct Surface {
    pub charts: Vec<AnalyticChart>,
    pub atlas: Option<Atlas>,
}

impl Surface {
    /// The chart used for single-chart commands.
    pub fn primary(&self) -> &AnalyticChart {
        &self.charts[0]
    }
}

impl SurfaceSpec {
    pub fn build(&self) -> Surface {
        let open = |c: AnalyticChart| Surface { charts: vec![c], atlas: None };
        let closed = |a: Atlas, eps: f64| {
            let a = if eps != 0.0 { a.perturbed(eps) } else { a };
            Surface { charts: a.charts.clone(), atlas: Some(a) }
        };
        match *self {
            SurfaceSpec::Plane { half_width } => open(AnalyticChart::plane(half_width)),
            SurfaceSpec::Graph4 { a20, a11, a02, a30, a21, a12, a03, k, b30, b21, b12, b03, half_width } => {
                let g = Graph4 { a20, a11, a02, a30, a21, a12, a03, k, b30, b21, b12, b03 };
                open(AnalyticChart::graph4(g, half_width))
            }
            SurfaceSpec::Sphere { r, eps } => closed(Atlas::sphere(r), eps),
            SurfaceSpec::Ellipsoid { a, b, c, eps } => closed(Atlas::ellipsoid(a, b, c), eps),
            SurfaceSpec::Torus { big_r, r, eps } => closed(Atlas::torus(big_r, r), eps),
            SurfaceSpec::Hyperbolic { c20, c11, c02, c_sin, half_width } => {
                open(AnalyticChart::hyperbolic(HyperbolicGraph { c20, c11, c02, c_sin }, half_width))
            }
        }
    }

    fn validate(&self) -> Result<(), String> {
        let pos = |name: &str, x: f64| {
            if x > 0.0 && x.is_finite() {
                Ok(())
            } else {
                Err(format!("surface.{name} must be positive, got {x}"))
            }
        };
        match *self {
            SurfaceSpec::Plane { half_width } | SurfaceSpec::Graph4 { half_width, .. } | SurfaceSpec::Hyperbolic { half_width, .. } => {
                pos("half_width", half_width)
            }
            SurfaceSpec::Sphere { r, .. } => pos("r", r),
            SurfaceSpec::Ellipsoid { a, b, c, .. } => pos("a", a).and(pos("b", b)).and(pos("c", c)),
            SurfaceSpec::Torus { big_r, r, .. } => {
                pos("big_r", big_r)?;
                pos("r", r)?;
                if r < big_r {
                    Ok(())
                } else {
                    Err("surface.r must be smaller than surface.big_r".into())
                }
            }
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NormalKind {
    #[default]
    Lightcone,
    /// `n1·N1 + n2·N2` in the null frame.
    Null,
    /// `ns·ns + nt·nt` in the orthonormal normal frame.
    Frame,
    /// `u_Φ⁻¹(H)`.
    Mean,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LineKind {
    #[default]
    Principal,
    Asymptotic,
    Mean,
}

impl From<LineKind> for BdeKind {
    fn from(k: LineKind) -> Self {
        match k {
            LineKind::Principal => BdeKind::NuPrincipal,
            LineKind::Asymptotic => BdeKind::Asymptotic,
            LineKind::Mean => BdeKind::MeanDirectional,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    #[serde(default)]
    pub normal: NormalKind,
    #[serde(default)]
    pub n1: Option<f64>,
    #[serde(default)]
    pub n2: Option<f64>,
    #[serde(default)]
    pub ns: Option<f64>,
    #[serde(default)]
    pub nt: Option<f64>,
    #[serde(default)]
    pub kind: LineKind,
}

impl Default for FieldSpec {
    fn default() -> Self {
        FieldSpec { normal: NormalKind::Lightcone, n1: None, n2: None, ns: None, nt: None, kind: LineKind::Principal }
    }
}

impl FieldSpec {
    pub fn normal_field(&self) -> NormalField {
        match self.normal {
            NormalKind::Lightcone => NormalField::LIGHTCONE,
            NormalKind::Null => NormalField::Null { n1: self.n1.unwrap_or(1.0), n2: self.n2.unwrap_or(0.0) },
            NormalKind::Frame => NormalField::Frame { ns: self.ns.unwrap_or(1.0), nt: self.nt.unwrap_or(1.0) },
            NormalKind::Mean => NormalField::MeanDirectional,
        }
    }

    fn validate(&self) -> Result<(), String> {
        let null_keys = self.n1.is_some() || self.n2.is_some();
        let frame_keys = self.ns.is_some() || self.nt.is_some();
        match self.normal {
            NormalKind::Null if frame_keys => Err("field.ns and field.nt need normal = \"frame\"".into()),
            NormalKind::Frame if null_keys => Err("field.n1 and field.n2 need normal = \"null\"".into()),
            NormalKind::Lightcone | NormalKind::Mean if null_keys || frame_keys => {
                Err("normal coefficients need normal = \"null\" or \"frame\"".into())
            }
            _ => {
                let all = [self.n1, self.n2, self.ns, self.nt];
                if all.iter().flatten().any(|x| !x.is_finite()) {
                    Err("normal coefficients must be finite".into())
                } else {
                    Ok(())
                }
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    #[serde(default = "grid_default")]
    pub nu: usize,
    #[serde(default = "grid_default")]
    pub nv: usize,
}

fn grid_default() -> usize {
    spacelike_core::tol::GRID_DEFAULT
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec { nu: grid_default(), nv: grid_default() }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BranchSpec {
    #[default]
    First,
    Second,
}

impl From<BranchSpec> for Branch {
    fn from(b: BranchSpec) -> Self {
        match b {
            BranchSpec::First => Branch::First,
            BranchSpec::Second => Branch::Second,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct SeedSpec {
    pub u: f64,
    pub v: f64,
    #[serde(default)]
    pub branch: BranchSpec,
}

/// Overrides of the tracing defaults. All values must be positive.
#[derive(Clone, Copy, Debug, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    pub trace_tol: f64,
    pub max_length: f64,
    pub initial_step: f64,
    pub min_step: f64,
    pub max_step: f64,
    /// Stop radius around umbilics, relative to the chart diameter.
    pub r_stop_rel: f64,
    pub coeff_stop: f64,
    pub disc_stop: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        let t = TraceOptions::default();
        Tolerances {
            trace_tol: t.tol,
            max_length: 5.0,
            initial_step: t.initial_step,
            min_step: t.min_step,
            max_step: t.max_step,
            r_stop_rel: 1e-3,
            coeff_stop: t.coeff_stop,
            disc_stop: t.disc_stop,
        }
    }
}

impl Tolerances {
    fn validate(&self) -> Result<(), String> {
        let all = [
            ("trace_tol", self.trace_tol),
            ("max_length", self.max_length),
            ("initial_step", self.initial_step),
            ("min_step", self.min_step),
            ("max_step", self.max_step),
            ("r_stop_rel", self.r_stop_rel),
            ("coeff_stop", self.coeff_stop),
            ("disc_stop", self.disc_stop),
        ];
        for (name, x) in all {
            if !(x > 0.0 && x.is_finite()) {
                return Err(format!("tolerances.{name} must be positive, got {x}"));
            }
        }
        if self.min_step > self.max_step {
            return Err("tolerances.min_step exceeds tolerances.max_step".into());
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Clone, Debug, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    #[serde(default = "default_dir")]
    pub dir: PathBuf,
    #[serde(default)]
    pub format: Format,
}

fn default_dir() -> PathBuf {
    PathBuf::from("out")
}

impl Default for OutputSpec {
    fn default() -> Self {
        OutputSpec { dir: default_dir(), format: Format::Csv }
    }
}

/// Parses `key.path=value` into the TOML document. The value is read as a
/// TOML value when possible and as a bare string otherwise.
fn apply_override(doc: &mut toml::Table, spec: &str) -> Result<(), String> {
    let (key, raw) = spec.split_once('=').ok_or_else(|| format!("override `{spec}` is not key=value"))?;
    let key = key.trim();
    if key.is_empty() {
        return Err(format!("override `{spec}` has an empty key"));
    }
    let raw = raw.trim();
    let value = match format!("x = {raw}").parse::<toml::Table>() {
        Ok(mut t) => t.remove("x").unwrap(),
        Err(_) => toml::Value::String(raw.to_string()),
    };
    let mut parts = key.split('.').peekable();
    let mut table = doc;
    while let Some(part) = parts.next() {
        if parts.peek().is_none() {
            table.insert(part.to_string(), value);
            return Ok(());
        }
        let entry = table.entry(part.to_string()).or_insert_with(|| toml::Value::Table(toml::Table::new()));
        table = entry.as_table_mut().ok_or_else(|| format!("override `{key}`: `{part}` is not a table"))?;
    }
    unreachable!()
}

impl RunConfig {
    pub fn from_toml(text: &str, overrides: &[String]) -> Result<Self, CliError> {
        let mut doc: toml::Table = text.parse().map_err(|e: toml::de::Error| CliError::Config(e.to_string()))?;
        for o in overrides {
            apply_override(&mut doc, o).map_err(CliError::Config)?;
        }
        let cfg: RunConfig = doc.try_into().map_err(|e: toml::de::Error| CliError::Config(e.to_string()))?;
        cfg.validate().map_err(CliError::Config)?;
        Ok(cfg)
    }

    pub fn load(path: &Path, overrides: &[String]) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        RunConfig::from_toml(&text, overrides)
    }

    pub fn validate(&self) -> Result<(), String> {
        self.surface.validate()?;
        self.field.validate()?;
        self.tolerances.validate()?;
        if self.grid.nu == 0 || self.grid.nv == 0 {
            return Err("grid.nu and grid.nv must be positive".into());
        }
        if self.seeds.iter().any(|s| !(s.u.is_finite() && s.v.is_finite())) {
            return Err("seed coordinates must be finite".into());
        }
        Ok(())
    }

    /// Trace options for a chart of the given domain diameter.
    pub fn trace_options(&self, diameter: f64, avoid: Vec<(f64, f64)>) -> TraceOptions {
        let t = &self.tolerances;
        TraceOptions {
            max_length: t.max_length,
            initial_step: t.initial_step,
            min_step: t.min_step,
            max_step: t.max_step,
            tol: t.trace_tol,
            r_stop: t.r_stop_rel * diameter,
            avoid,
            coeff_stop: t.coeff_stop,
            disc_stop: t.disc_stop,
            ..TraceOptions::default()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const BASE: &str = r#"
[surface]
fixture = "ellipsoid"
a = 3.0
b = 2.0
c = 1.0
"#;

    #[test]
    fn defaults_fill_in() {
        let cfg = RunConfig::from_toml(BASE, &[]).unwrap();
        assert_eq!(cfg.grid, GridSpec { nu: 256, nv: 256 });
        assert_eq!(cfg.field.normal_field(), NormalField::LIGHTCONE);
        assert_eq!(cfg.output.format, Format::Csv);
        assert!(cfg.seeds.is_empty());
    }

    #[test]
    fn overrides_apply() {
        let o = ["grid.nu=32".to_string(), "surface.eps = 0.05".into(), "output.format=json".into()];
        let cfg = RunConfig::from_toml(BASE, &o).unwrap();
        assert_eq!(cfg.grid.nu, 32);
        assert_eq!(cfg.output.format, Format::Json);
        assert_eq!(cfg.surface, SurfaceSpec::Ellipsoid { a: 3.0, b: 2.0, c: 1.0, eps: 0.05 });
    }

    #[test]
    fn rejects_bad_input() {
        for bad in [
            format!("{BASE}\nextra = 1"),
            format!("{BASE}\nd = 1.0"),
            format!("{BASE}\n[grid]\nnu = 0"),
            format!("{BASE}\n[tolerances]\ntrace_tol = -1.0"),
            format!("{BASE}\n[field]\nnormal = \"lightcone\"\nn1 = 1.0"),
            "[surface]\nfixture = \"klein_bottle\"".to_string(),
            "[surface]\nfixture = \"torus\"\nbig_r = 1.0\nr = 2.0".to_string(),
            "not toml at all [".to_string(),
        ] {
            assert!(matches!(RunConfig::from_toml(&bad, &[]), Err(CliError::Config(_))), "{bad}");
        }
        assert!(RunConfig::from_toml(BASE, &["grid".into()]).is_err());
    }
}

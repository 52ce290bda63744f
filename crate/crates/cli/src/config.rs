//! Run configuration: command-line flags, JSON config files and presets.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Parser, ValueEnum};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use transgress::transgression::Method;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("{0}")]
pub struct UsageError(pub String);

fn usage(msg: impl Into<String>) -> UsageError {
    UsageError(msg.into())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Field {
    Rational,
    Gaussian,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckKind {
    D2,
    Decomposition,
    Deformation,
    Bianchi,
    AdInvariance,
    Coefficients,
    Transgression,
    Basicness,
    Agreement,
    DerivativeIdentity,
    Polarization,
}

impl CheckKind {
    pub const ALL: [CheckKind; 11] = [
        CheckKind::D2,
        CheckKind::Decomposition,
        CheckKind::Deformation,
        CheckKind::Bianchi,
        CheckKind::AdInvariance,
        CheckKind::Coefficients,
        CheckKind::Transgression,
        CheckKind::Basicness,
        CheckKind::Agreement,
        CheckKind::DerivativeIdentity,
        CheckKind::Polarization,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckKind::D2 => "d2",
            CheckKind::Decomposition => "decomposition",
            CheckKind::Deformation => "deformation",
            CheckKind::Bianchi => "bianchi",
            CheckKind::AdInvariance => "ad-invariance",
            CheckKind::Coefficients => "coefficients",
            CheckKind::Transgression => "transgression",
            CheckKind::Basicness => "basicness",
            CheckKind::Agreement => "agreement",
            CheckKind::DerivativeIdentity => "derivative-identity",
            CheckKind::Polarization => "polarization",
        }
    }
}

impl FromStr for CheckKind {
    type Err = UsageError;

    fn from_str(s: &str) -> Result<Self, UsageError> {
        CheckKind::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| {
            let known: Vec<_> = CheckKind::ALL.iter().map(|c| c.name()).collect();
            usage(format!("unknown check {s:?} (expected one of {}, or all)", known.join(", ")))
        })
    }
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A deliberate corruption, used to confirm that the checks can fail.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub enum Perturbation {
    /// Adds `delta` to `A_ij` in the double-sum method, for every degree.
    Coefficient { i: usize, j: usize, delta: String },
    /// Adds `delta` to `c^a_{bc}` and subtracts it from `c^a_{cb}`.
    StructureConstant { a: usize, b: usize, c: usize, delta: String },
    /// Replaces the prefactor of every polynomial, keeping its `2π` power.
    Prefactor { value: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum AlgebraSpec {
    So(usize),
    Gl(usize),
    U(usize),
    Su2,
    Abelian(usize),
    File(PathBuf),
}

impl AlgebraSpec {
    pub fn parse(s: &str) -> Result<Self, UsageError> {
        let compact: String = s.chars().filter(|c| !matches!(c, '(' | ')' | '^')).collect::<String>().to_lowercase();
        let sized = |prefix: &str| compact.strip_prefix(prefix).and_then(|n| n.parse::<usize>().ok());
        if compact == "su2" {
            return Ok(AlgebraSpec::Su2);
        }
        if let Some(n) = sized("so") {
            return if n >= 2 { Ok(AlgebraSpec::So(n)) } else { Err(usage(format!("so({n}) is too small"))) };
        }
        if let Some(n) = sized("gl") {
            return if n >= 1 { Ok(AlgebraSpec::Gl(n)) } else { Err(usage("gl(0) is empty")) };
        }
        if let Some(n) = sized("abelian").or_else(|| sized("r")) {
            return if n >= 1 { Ok(AlgebraSpec::Abelian(n)) } else { Err(usage("abelian algebra of dimension 0")) };
        }
        if let Some(n) = sized("u") {
            return if n >= 1 { Ok(AlgebraSpec::U(n)) } else { Err(usage("u(0) is empty")) };
        }
        if s.ends_with(".json") || Path::new(s).is_file() {
            return Ok(AlgebraSpec::File(PathBuf::from(s)));
        }
        Err(usage(format!(
            "unknown algebra {s:?} (expected soN, glN, uN, su2, abelianN or a .json file)"
        )))
    }

    pub fn needs_gaussian(&self) -> bool {
        matches!(self, AlgebraSpec::U(_) | AlgebraSpec::Su2)
    }

    pub fn matrix_size(&self) -> Option<usize> {
        match *self {
            AlgebraSpec::So(n) | AlgebraSpec::Gl(n) | AlgebraSpec::U(n) => Some(n),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SubSpec {
    Trivial,
    Block(usize),
    Indices(Vec<usize>),
}

impl SubSpec {
    pub fn parse(s: &str, algebra: &AlgebraSpec) -> Result<Self, UsageError> {
        let compact: String = s.chars().filter(|c| !matches!(c, '(' | ')' | ' ')).collect::<String>().to_lowercase();
        if matches!(compact.as_str(), "trivial" | "none" | "") {
            return Ok(SubSpec::Trivial);
        }
        if *algebra == AlgebraSpec::Su2 && matches!(compact.as_str(), "u1" | "line") {
            return Ok(SubSpec::Indices(vec![2]));
        }
        let family = match algebra {
            AlgebraSpec::So(_) => Some("so"),
            AlgebraSpec::Gl(_) => Some("gl"),
            AlgebraSpec::U(_) => Some("u"),
            _ => None,
        };
        if let (Some(fam), Some(n)) = (family, algebra.matrix_size()) {
            if let Some(m) = compact.strip_prefix(fam).and_then(|m| m.parse::<usize>().ok()) {
                if m == 0 || m > n {
                    return Err(usage(format!("{s:?} is not a leading block of {fam}({n})")));
                }
                return Ok(SubSpec::Block(m));
            }
        }
        let indices: Result<Vec<usize>, _> = compact.split(',').map(str::parse::<usize>).collect();
        match indices {
            Ok(mut v) => {
                v.sort_unstable();
                v.dedup();
                Ok(SubSpec::Indices(v))
            }
            Err(_) => Err(usage(format!("unknown subalgebra {s:?} (expected a block name, trivial or an index list)"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PolySpec {
    Pfaffian,
    Trace(usize),
    File(PathBuf),
}

impl PolySpec {
    pub fn parse(s: &str) -> Result<Self, UsageError> {
        let lower = s.trim().to_lowercase();
        if lower == "pfaffian" || lower == "pf" {
            return Ok(PolySpec::Pfaffian);
        }
        if lower == "trace" {
            return Ok(PolySpec::Trace(1));
        }
        if let Some(k) = lower.strip_prefix("trace^") {
            return match k.parse::<usize>() {
                Ok(k) if k >= 1 => Ok(PolySpec::Trace(k)),
                _ => Err(usage(format!("bad trace degree in {s:?}"))),
            };
        }
        if s.ends_with(".json") || Path::new(s).is_file() {
            return Ok(PolySpec::File(PathBuf::from(s)));
        }
        Err(usage(format!("unknown polynomial {s:?} (expected pfaffian, trace^k or a .json file)")))
    }
}

/// A validated run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub algebra: String,
    pub subalgebra: String,
    pub polynomials: Vec<String>,
    pub methods: Vec<Method>,
    pub checks: Vec<CheckKind>,
    pub output: OutputFormat,
    pub field: Field,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub perturb: Option<Perturbation>,
    #[serde(skip)]
    pub algebra_spec: Option<AlgebraSpec>,
    #[serde(skip)]
    pub sub_spec: Option<SubSpec>,
    #[serde(skip)]
    pub poly_specs: Vec<PolySpec>,
}

impl RunConfig {
    pub fn algebra_spec(&self) -> &AlgebraSpec {
        self.algebra_spec.as_ref().expect("validated config")
    }

    pub fn sub_spec(&self) -> &SubSpec {
        self.sub_spec.as_ref().expect("validated config")
    }
}

/// The JSON config file; every key is optional and unknown keys are rejected.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct ConfigFile {
    pub preset: Option<String>,
    pub algebra: Option<String>,
    pub subalgebra: Option<String>,
    pub polynomials: Option<Vec<String>>,
    pub methods: Option<Vec<Method>>,
    pub checks: Option<Vec<String>>,
    pub output: Option<OutputFormat>,
    pub field: Option<Field>,
    pub perturb: Option<Perturbation>,
}

impl ConfigFile {
    pub fn from_json(text: &str) -> Result<Self, UsageError> {
        serde_json::from_str(text).map_err(|e| usage(format!("config file: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self, UsageError> {
        let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// Fields set in `other` win.
    fn overlay(mut self, other: ConfigFile) -> Self {
        macro_rules! take {
            ($($f:ident),*) => { $( if other.$f.is_some() { self.$f = other.$f; } )* };
        }
        take!(preset, algebra, subalgebra, polynomials, methods, checks, output, field, perturb);
        self
    }
}

pub const PRESETS: [&str; 3] = ["paper-so4", "paper-so6", "paper-gl3"];

pub fn preset(name: &str) -> Result<ConfigFile, UsageError> {
    let all_checks = Some(vec!["all".to_string()]);
    let (algebra, sub, polys, methods) = match name {
        "paper-so4" => ("so4", "so3", vec!["pfaffian"], Method::ALL.to_vec()),
        "paper-so6" => ("so6", "so5", vec!["pfaffian"], Method::ALL.to_vec()),
        "paper-gl3" => ("gl3", "gl2", vec!["trace^2", "trace^3"], vec![Method::Integral, Method::Johnson]),
        _ => return Err(usage(format!("unknown preset {name:?} (expected one of {})", PRESETS.join(", ")))),
    };
    Ok(ConfigFile {
        preset: Some(name.to_string()),
        algebra: Some(algebra.into()),
        subalgebra: Some(sub.into()),
        polynomials: Some(polys.into_iter().map(String::from).collect()),
        methods: Some(methods),
        checks: all_checks,
        ..ConfigFile::default()
    })
}

#[derive(Debug, Parser)]
#[command(name = "transgress", version, about = "Exact transgression forms and their verification")]
pub struct Cli {
    /// soN, glN, uN, su2, abelianN, or a JSON algebra file
    #[arg(long)]
    pub algebra: Option<String>,
    /// A leading block such as so3 or gl2, `trivial`, or a comma-separated index list
    #[arg(long = "sub")]
    pub subalgebra: Option<String>,
    /// pfaffian, trace^k, or a JSON polynomial file; comma-separated for several
    #[arg(long = "poly", value_delimiter = ',')]
    pub polynomials: Vec<String>,
    /// integral, johnson, chern
    #[arg(long = "method", value_delimiter = ',')]
    pub methods: Vec<String>,
    /// Checks to run, comma-separated, or `all`
    #[arg(long = "check", value_delimiter = ',')]
    pub checks: Vec<String>,
    #[arg(long, value_enum)]
    pub output: Option<OutputFormat>,
    #[arg(long, value_enum)]
    pub field: Option<Field>,
    /// JSON file with the same keys as the flags
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// paper-so4, paper-so6 or paper-gl3
    #[arg(long)]
    pub preset: Option<String>,
    /// Write the report here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug)]
pub struct Invocation {
    pub config: RunConfig,
    pub out: Option<PathBuf>,
}

/// Parses `argv` (program name first) and validates the resulting
/// configuration.
pub fn parse_config<I, T>(argv: I) -> Result<Invocation, ParseOutcome>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(ParseOutcome::Clap)?;
    let out = cli.out.clone();
    let config = resolve(cli).map_err(ParseOutcome::Usage)?;
    Ok(Invocation { config, out })
}

#[derive(Debug)]
pub enum ParseOutcome {
    /// Includes `--help` and `--version`, which clap reports as errors.
    Clap(clap::Error),
    Usage(UsageError),
}

fn resolve(cli: Cli) -> Result<RunConfig, UsageError> {
    let mut merged = ConfigFile::default();
    let file = match &cli.config {
        Some(path) => Some(ConfigFile::load(path)?),
        None => None,
    };
    let preset_name = cli.preset.clone().or_else(|| file.as_ref().and_then(|f| f.preset.clone()));
    if let Some(name) = &preset_name {
        merged = merged.overlay(preset(name)?);
    }
    if let Some(f) = file {
        merged = merged.overlay(f);
    }
    let methods = cli
        .methods
        .iter()
        .map(|m| m.parse::<Method>().map_err(|e| usage(e.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    merged = merged.overlay(ConfigFile {
        preset: None,
        algebra: cli.algebra,
        subalgebra: cli.subalgebra,
        polynomials: (!cli.polynomials.is_empty()).then_some(cli.polynomials),
        methods: (!methods.is_empty()).then_some(methods),
        checks: (!cli.checks.is_empty()).then_some(cli.checks),
        output: cli.output,
        field: cli.field,
        perturb: None,
    });
    validate(merged)
}

pub fn validate(file: ConfigFile) -> Result<RunConfig, UsageError> {
    let algebra = file.algebra.ok_or_else(|| usage("missing --algebra (or --preset)"))?;
    let algebra_spec = AlgebraSpec::parse(&algebra)?;
    let subalgebra = file.subalgebra.unwrap_or_else(|| "trivial".into());
    let sub_spec = SubSpec::parse(&subalgebra, &algebra_spec)?;
    let polynomials = file.polynomials.ok_or_else(|| usage("missing --poly"))?;
    if polynomials.is_empty() {
        return Err(usage("missing --poly"));
    }
    let poly_specs = polynomials.iter().map(|p| PolySpec::parse(p)).collect::<Result<Vec<_>, _>>()?;

    let mut methods = file.methods.unwrap_or_else(|| vec![Method::Integral]);
    methods.sort();
    methods.dedup();

    let mut checks = Vec::new();
    for c in file.checks.unwrap_or_else(|| vec!["transgression".into(), "basicness".into()]) {
        if c == "all" {
            checks.extend(CheckKind::ALL);
        } else {
            checks.push(c.parse::<CheckKind>()?);
        }
    }
    checks.sort();
    checks.dedup();

    let field = match (file.field, algebra_spec.needs_gaussian()) {
        (Some(Field::Rational), true) => {
            return Err(usage(format!("{algebra} needs --field gaussian")));
        }
        (Some(f), _) => f,
        (None, true) => Field::Gaussian,
        (None, false) => Field::Rational,
    };

    if poly_specs.contains(&PolySpec::Pfaffian) {
        match algebra_spec {
            AlgebraSpec::So(n) if n % 2 == 0 => {}
            _ => return Err(usage(format!("pfaffian needs so(2k), got {algebra}"))),
        }
    }
    if methods.contains(&Method::Chern) {
        let shape_ok = match algebra_spec {
            AlgebraSpec::So(n) => n % 2 == 0 && sub_spec == SubSpec::Block(n - 1),
            _ => false,
        };
        if !shape_ok {
            return Err(usage(format!(
                "method chern needs so(2k) over so(2k-1), got {algebra} over {subalgebra}"
            )));
        }
        if poly_specs != [PolySpec::Pfaffian] {
            return Err(usage("method chern needs --poly pfaffian"));
        }
    }

    Ok(RunConfig {
        algebra,
        subalgebra,
        polynomials,
        methods,
        checks,
        output: file.output.unwrap_or(OutputFormat::Text),
        field,
        perturb: file.perturb,
        algebra_spec: Some(algebra_spec),
        sub_spec: Some(sub_spec),
        poly_specs,
    })
}

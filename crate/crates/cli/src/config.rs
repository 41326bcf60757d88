//! Resolved run configuration: defaults, overridden by a plain-text
//! `key=value` config file, overridden by command-line flags.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use dunkl_core::besov::QIndex;
use dunkl_core::quad::SingularRule;
use dunkl_core::{Alpha, QuadratureSpec};

/// Environment variable naming the default config file path.
pub const CONFIG_ENV: &str = "DUNKL_CONFIG";

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

/// Global flags shared by every subcommand; `None` means "not given on
/// the command line", letting the config file or default fill it.
#[derive(Debug, Clone, clap::Args)]
pub struct GlobalArgs {
    /// Deformation parameter (> -1/2)
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    /// Relative quadrature tolerance
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Gauss-Legendre nodes per panel (>= 8)
    #[arg(long, global = true)]
    pub nodes: Option<usize>,
    /// Truncation radius for unbounded integrals
    #[arg(long, global = true)]
    pub radius: Option<f64>,
    /// Output file (stdout when absent)
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Output format for tables and reports
    #[arg(long, global = true, value_enum)]
    pub format: Option<OutputFormat>,
    /// Config file path (falls back to the DUNKL_CONFIG environment variable)
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

/// Fully resolved configuration with validated parameter ranges.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub alpha: Alpha,
    pub spec: QuadratureSpec,
    pub format: OutputFormat,
    pub out: Option<PathBuf>,
    /// Every resolved key=value pair, echoed into outputs.
    pub echo: BTreeMap<String, String>,
}

fn parse_config_file(path: &Path) -> Result<BTreeMap<String, String>, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read config file {}: {e}", path.display()))?;
    let mut map = BTreeMap::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(format!(
                "config file {} line {}: expected key=value, got {line:?}",
                path.display(),
                lineno + 1
            ));
        };
        map.insert(key.trim().to_string(), value.trim().to_string());
    }
    Ok(map)
}

fn get_num<T: std::str::FromStr>(
    map: &BTreeMap<String, String>,
    key: &str,
) -> Result<Option<T>, String> {
    match map.get(key) {
        None => Ok(None),
        Some(raw) => raw
            .parse::<T>()
            .map(Some)
            .map_err(|_| format!("config key {key}: cannot parse {raw:?}")),
    }
}

impl RunConfig {
    pub fn resolve(globals: &GlobalArgs) -> Result<RunConfig, String> {
        let file_map = match globals
            .config
            .clone()
            .or_else(|| std::env::var_os(CONFIG_ENV).map(PathBuf::from))
        {
            Some(path) => parse_config_file(&path)?,
            None => BTreeMap::new(),
        };

        let alpha_raw = globals
            .alpha
            .map(Ok)
            .or_else(|| get_num::<f64>(&file_map, "alpha").transpose())
            .transpose()?
            .unwrap_or(0.5);
        let alpha = Alpha::new(alpha_raw).map_err(|e| format!("--alpha: {e}"))?;

        let mut spec = QuadratureSpec::default();
        if let Some(tol) = globals
            .tol
            .map(Ok)
            .or_else(|| get_num::<f64>(&file_map, "tol").transpose())
            .transpose()?
        {
            spec.rel_tol = tol;
            spec.abs_tol = (tol * 1e-3).max(1e-300);
        }
        if let Some(abs) = get_num::<f64>(&file_map, "abs_tol")? {
            spec.abs_tol = abs;
        }
        if let Some(nodes) = globals
            .nodes
            .map(Ok)
            .or_else(|| get_num::<usize>(&file_map, "nodes").transpose())
            .transpose()?
        {
            spec.node_count = nodes;
        }
        if let Some(radius) = globals
            .radius
            .map(Ok)
            .or_else(|| get_num::<f64>(&file_map, "radius").transpose())
            .transpose()?
        {
            spec.truncation_radius = radius;
        }
        if let Some(spacing) = get_num::<f64>(&file_map, "cache_spacing")? {
            spec.cache_spacing = spacing;
        }
        if let Some(panels) = get_num::<usize>(&file_map, "max_panels")? {
            spec.max_panels = panels;
        }
        if let Some(rule) = file_map.get("singular_rule") {
            spec.singular_rule = match rule.as_str() {
                "graded" => SingularRule::GradedSubstitution,
                "plain" => SingularRule::PlainPanels,
                other => return Err(format!("config key singular_rule: unknown rule {other:?}")),
            };
        }
        spec.validate().map_err(|e| format!("quadrature spec: {e}"))?;

        let format = globals
            .format
            .or_else(|| match file_map.get("format").map(String::as_str) {
                Some("csv") => Some(OutputFormat::Csv),
                Some("json") => Some(OutputFormat::Json),
                _ => None,
            })
            .unwrap_or(OutputFormat::Csv);

        let mut echo = BTreeMap::new();
        echo.insert("alpha".into(), format!("{}", alpha.get()));
        echo.insert("rel_tol".into(), format!("{}", spec.rel_tol));
        echo.insert("abs_tol".into(), format!("{}", spec.abs_tol));
        echo.insert("nodes".into(), format!("{}", spec.node_count));
        echo.insert("radius".into(), format!("{}", spec.truncation_radius));
        echo.insert("cache_spacing".into(), format!("{}", spec.cache_spacing));
        echo.insert("max_panels".into(), format!("{}", spec.max_panels));
        echo.insert(
            "format".into(),
            match format {
                OutputFormat::Csv => "csv".into(),
                OutputFormat::Json => "json".into(),
            },
        );

        Ok(RunConfig {
            alpha,
            spec,
            format,
            out: globals.out.clone(),
            echo,
        })
    }

    /// Extend the echoed configuration with subcommand parameters.
    pub fn echo_extend<I: IntoIterator<Item = (String, String)>>(&mut self, extra: I) {
        self.echo.extend(extra);
    }
}

/// Parse a `q` value: a real in `[1, inf)` or the words `inf`/`infinity`.
pub fn parse_q(raw: &str) -> Result<QIndex, String> {
    match raw {
        "inf" | "infinity" | "Inf" => Ok(QIndex::Infinity),
        other => other
            .parse::<f64>()
            .map(QIndex::Finite)
            .map_err(|_| format!("q: cannot parse {other:?} (expected a number or 'inf')")),
    }
}

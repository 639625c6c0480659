//! Parameter sweeps over `(n, D, p)` grids and their CSV / JSON / SVG output.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Deserializer, Serialize};

use super::threshold::{check_trend, is_unimodal, Trend};
use super::{estimate_many, EstimateRecord, ExperimentError, Property};
use crate::sampling::Seed;

pub const SWEEP_FORMAT_HEADER: &str = "# randmono sweep v1";
pub const CSV_HEADER: &str = "n,D,p,property,freq,lo,hi,N,seed";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TrendKind {
    Increasing,
    Decreasing,
    Unimodal,
}

fn one_or_many<'de, D, T>(d: D) -> Result<Vec<T>, D::Error>
where
    D: Deserializer<'de>,
    T: Deserialize<'de>,
{
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum OneOrMany<T> {
        One(T),
        Many(Vec<T>),
    }
    Ok(match OneOrMany::deserialize(d)? {
        OneOrMany::One(x) => vec![x],
        OneOrMany::Many(v) => v,
    })
}

fn default_points() -> usize {
    20
}

fn default_samples() -> u64 {
    1000
}

/// A sweep configuration, usually read from TOML:
///
/// ```toml
/// n = 3
/// D = [10, 20]
/// properties = ["dim=0", "dim=1"]
/// samples = 1000
/// seed = 7
/// [check]
/// "dim=0" = "increasing"
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    #[serde(deserialize_with = "one_or_many")]
    pub n: Vec<usize>,
    #[serde(rename = "D", deserialize_with = "one_or_many")]
    pub max_degree: Vec<u32>,
    /// Explicit probabilities; when absent, `points` evenly spaced values from `D^-n` to `D^-1`.
    #[serde(default)]
    pub p: Option<Vec<f64>>,
    #[serde(default = "default_points")]
    pub points: usize,
    pub properties: Vec<Property>,
    #[serde(default = "default_samples")]
    pub samples: u64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub svg: bool,
    /// Expected shape of each property's curve along the `p` grid.
    #[serde(default)]
    pub check: BTreeMap<String, TrendKind>,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<(), ExperimentError> {
        let invalid = |m: &str| Err(ExperimentError::Invalid(m.to_string()));
        if self.n.is_empty() || self.max_degree.is_empty() {
            return invalid("n and D grids must be non-empty");
        }
        if self.properties.is_empty() {
            return invalid("at least one property is required");
        }
        if self.samples == 0 {
            return Err(ExperimentError::NoSamples);
        }
        if self.p.is_none() && self.points == 0 {
            return invalid("points must be at least 1");
        }
        if let Some(ps) = &self.p {
            if ps.is_empty() || ps.iter().any(|p| !(0.0..=1.0).contains(p)) {
                return invalid("p grid must be non-empty and within [0, 1]");
            }
        }
        for key in self.check.keys() {
            let prop: Property = key.parse()?;
            if !self.properties.contains(&prop) {
                return Err(ExperimentError::Invalid(format!("check on {key} which is not swept")));
            }
        }
        Ok(())
    }

    pub fn p_grid(&self, n: usize, max_degree: u32) -> Vec<f64> {
        self.p.clone().unwrap_or_else(|| default_p_grid(n, max_degree, self.points))
    }
}

/// `points` evenly spaced values from `D^-n` to `D^-1`.
pub fn default_p_grid(n: usize, max_degree: u32, points: usize) -> Vec<f64> {
    let d = f64::from(max_degree);
    let lo = d.powi(-(n as i32));
    let hi = 1.0 / d;
    if points <= 1 {
        return vec![lo];
    }
    (0..points)
        .map(|k| lo + (hi - lo) * k as f64 / (points - 1) as f64)
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrendReport {
    pub n: usize,
    #[serde(rename = "D")]
    pub max_degree: u32,
    pub property: Property,
    pub expected: TrendKind,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepOutcome {
    pub records: Vec<EstimateRecord>,
    pub trends: Vec<TrendReport>,
}

impl SweepOutcome {
    pub fn all_trends_pass(&self) -> bool {
        self.trends.iter().all(|t| t.passed)
    }
}

/// Runs every `(n, D, p)` cell; cell `k` in grid order uses stream `k` of the seed,
/// and all properties of a cell are evaluated on the same draws.
pub fn sweep(spec: &SweepSpec) -> Result<SweepOutcome, ExperimentError> {
    spec.validate()?;
    let mut records = Vec::new();
    let mut trends = Vec::new();
    let mut stream = 0u64;
    for &n in &spec.n {
        for &d in &spec.max_degree {
            let mut cell_records = Vec::new();
            for p in spec.p_grid(n, d) {
                let seed = Seed::with_stream(spec.seed, stream);
                stream += 1;
                cell_records.extend(estimate_many(&spec.properties, n, d, p, spec.samples, seed)?);
            }
            for (key, kind) in &spec.check {
                let prop: Property = key.parse()?;
                let curve: Vec<&EstimateRecord> = cell_records.iter().filter(|r| r.property == prop).collect();
                let freqs: Vec<f64> = curve.iter().map(|r| r.freq).collect();
                let ses: Vec<f64> = curve.iter().map(|r| r.std_error()).collect();
                let passed = match kind {
                    TrendKind::Increasing => check_trend(&freqs, &ses, Trend::Increasing),
                    TrendKind::Decreasing => check_trend(&freqs, &ses, Trend::Decreasing),
                    TrendKind::Unimodal => is_unimodal(&freqs, &ses),
                };
                trends.push(TrendReport {
                    n,
                    max_degree: d,
                    property: prop,
                    expected: *kind,
                    passed,
                });
            }
            records.extend(cell_records);
        }
    }
    Ok(SweepOutcome { records, trends })
}

pub fn render_csv(records: &[EstimateRecord]) -> String {
    let mut out = format!("{SWEEP_FORMAT_HEADER}\n{CSV_HEADER}\n");
    for r in records {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            r.n, r.max_degree, r.p, r.property, r.freq, r.lo, r.hi, r.samples, r.seed
        );
    }
    out
}

pub fn render_json(outcome: &SweepOutcome) -> String {
    let doc = serde_json::json!({
        "format": "randmono-sweep",
        "version": 1,
        "records": outcome.records,
        "trends": outcome.trends,
    });
    let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
    s.push('\n');
    s
}

const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf",
];

/// Frequency against `p`, one line per `(n, D, property)` series.
pub fn render_svg(records: &[EstimateRecord]) -> String {
    let (w, h, margin) = (800.0, 500.0, 60.0);
    let mut series: BTreeMap<(usize, u32, Property), Vec<(f64, f64)>> = BTreeMap::new();
    for r in records {
        series.entry((r.n, r.max_degree, r.property)).or_default().push((r.p, r.freq));
    }
    let pmin = records.iter().map(|r| r.p).fold(f64::INFINITY, f64::min);
    let pmax = records.iter().map(|r| r.p).fold(f64::NEG_INFINITY, f64::max);
    let span = if pmax > pmin { pmax - pmin } else { 1.0 };
    let x = |p: f64| margin + (p - pmin) / span * (w - 2.0 * margin);
    let y = |f: f64| h - margin - f * (h - 2.0 * margin);
    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">"
    );
    let _ = writeln!(out, "<!-- randmono sweep plot v1 -->");
    let _ = writeln!(out, "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>");
    let _ = writeln!(
        out,
        "<line x1=\"{m}\" y1=\"{b}\" x2=\"{r}\" y2=\"{b}\" stroke=\"black\"/><line x1=\"{m}\" y1=\"{m}\" x2=\"{m}\" y2=\"{b}\" stroke=\"black\"/>",
        m = margin,
        b = h - margin,
        r = w - margin
    );
    for tick in 0..=4 {
        let f = f64::from(tick) / 4.0;
        let _ = writeln!(
            out,
            "<text x=\"{}\" y=\"{}\" font-size=\"11\" text-anchor=\"end\">{f}</text>",
            margin - 6.0,
            y(f) + 4.0
        );
    }
    let _ = writeln!(
        out,
        "<text x=\"{}\" y=\"{}\" font-size=\"11\">p = {pmin:.3e}</text><text x=\"{}\" y=\"{}\" font-size=\"11\" text-anchor=\"end\">p = {pmax:.3e}</text>",
        margin,
        h - margin + 18.0,
        w - margin,
        h - margin + 18.0
    );
    for (k, ((n, d, prop), pts)) in series.iter().enumerate() {
        let color = PALETTE[k % PALETTE.len()];
        let path: Vec<String> = pts.iter().map(|&(p, f)| format!("{:.2},{:.2}", x(p), y(f))).collect();
        let _ = writeln!(
            out,
            "<polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\" points=\"{}\"/>",
            path.join(" ")
        );
        for &(p, f) in pts {
            let _ = writeln!(out, "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"2.5\" fill=\"{color}\"/>", x(p), y(f));
        }
        let _ = writeln!(
            out,
            "<text x=\"{}\" y=\"{}\" font-size=\"12\" fill=\"{color}\">n={n} D={d} {}</text>",
            w - margin - 150.0,
            margin + 16.0 * k as f64,
            xml_escape(&prop.to_string())
        );
    }
    out.push_str("</svg>\n");
    out
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Writes `contents` to a temporary sibling file and renames it into place.
pub fn write_atomic(path: &Path, contents: &[u8]) -> io::Result<()> {
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path
        .file_name()
        .ok_or_else(|| io::Error::new(io::ErrorKind::InvalidInput, "output path has no file name"))?;
    let tmp = dir.join(format!(".{}.tmp{}", name.to_string_lossy(), std::process::id()));
    fs::write(&tmp, contents)?;
    fs::rename(&tmp, path).inspect_err(|_| {
        let _ = fs::remove_file(&tmp);
    })
}

/// Writes `sweep.csv`, `sweep.json` and optionally `sweep.svg` into `dir`.
pub fn write_sweep_outputs(outcome: &SweepOutcome, dir: &Path, svg: bool) -> io::Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    let csv = dir.join("sweep.csv");
    write_atomic(&csv, render_csv(&outcome.records).as_bytes())?;
    written.push(csv);
    let json = dir.join("sweep.json");
    write_atomic(&json, render_json(outcome).as_bytes())?;
    written.push(json);
    if svg {
        let path = dir.join("sweep.svg");
        write_atomic(&path, render_svg(&outcome.records).as_bytes())?;
        written.push(path);
    }
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_endpoints() {
        let g = default_p_grid(3, 10, 20);
        assert_eq!(g.len(), 20);
        assert!((g[0] - 1e-3).abs() < 1e-15);
        assert!((g[19] - 0.1).abs() < 1e-15);
        assert_eq!(default_p_grid(2, 4, 1), vec![1.0 / 16.0]);
    }

    #[test]
    fn toml_spec() {
        let spec: SweepSpec = toml::from_str(
            r#"
            n = 2
            D = [3, 4]
            properties = ["zero-ideal", "dim=0"]
            samples = 50
            seed = 5
            points = 4
            [check]
            "zero-ideal" = "decreasing"
            "#,
        )
        .unwrap();
        assert_eq!(spec.n, vec![2]);
        assert_eq!(spec.max_degree, vec![3, 4]);
        spec.validate().unwrap();
        let out = sweep(&spec).unwrap();
        assert_eq!(out.records.len(), 2 * 4 * 2);
        assert_eq!(out.trends.len(), 2);
        let csv = render_csv(&out.records);
        assert!(csv.starts_with(SWEEP_FORMAT_HEADER));
        assert_eq!(csv.lines().nth(1), Some(CSV_HEADER));
        assert_eq!(csv, render_csv(&sweep(&spec).unwrap().records));
        assert!(render_svg(&out.records).contains("<polyline"));
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(toml::from_str::<SweepSpec>("n = 2\nD = 3\nproperties = [\"bogus\"]").is_err());
        assert!(toml::from_str::<SweepSpec>("n = 2\nD = 3\nproperties = []\nextra = 1").is_err());
        let spec: SweepSpec = toml::from_str("n = 2\nD = 3\nproperties = [\"dim=0\"]\n[check]\n\"dim=1\" = \"increasing\"").unwrap();
        assert!(spec.validate().is_err());
    }
}

//! Score decomposition for one comparison and its JSON, CSV and SVG renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cnf::{CompiledArgument, Component};
use crate::similarity::{combine, set_score, Direction, Model, SimConfig, SimError};
use crate::weights::ArgumentWeights;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatchRecord {
    pub source: String,
    pub matched: String,
    pub direction: Direction,
    pub flat: f64,
    pub weighted: f64,
    pub w_g: f64,
    /// `w_g` over the component's total `w_g`.
    pub proportion: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComponentExplanation {
    pub score: f64,
    pub records: Vec<MatchRecord>,
}

impl ComponentExplanation {
    /// The component score recomputed from the records alone. Without records
    /// the empty-set convention decides, so the stored score is returned.
    pub fn recompute(&self) -> f64 {
        if self.records.is_empty() {
            return self.score;
        }
        let total: f64 = self.records.iter().map(|r| r.w_g).sum();
        if total == 0.0 {
            return 0.0;
        }
        self.records.iter().map(|r| r.w_g * r.weighted).sum::<f64>() / total
    }

    pub fn proportion_sum(&self) -> f64 {
        self.records.iter().map(|r| r.proportion).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Explanation {
    pub pair: (String, String),
    pub config: SimConfig,
    pub support: ComponentExplanation,
    pub claim: ComponentExplanation,
    pub score: f64,
}

impl Explanation {
    pub fn component(&self, c: Component) -> &ComponentExplanation {
        match c {
            Component::Support => &self.support,
            Component::Claim => &self.claim,
        }
    }

    pub fn recompute(&self) -> f64 {
        combine(self.config.eta, self.support.recompute(), self.claim.recompute())
    }
}

/// Decomposes `sim_arg(a, b)`; the final score is computed on the same path
/// and is bit-identical to [`Model::sim_arg`].
pub fn explain(
    model: &Model<'_>,
    a: &CompiledArgument,
    b: &CompiledArgument,
    wa: &ArgumentWeights,
    wb: &ArgumentWeights,
) -> Result<Explanation, SimError> {
    // validates config and vocabulary coverage
    model.component_scores(a, b, wa, wb)?;
    let mut parts = Vec::with_capacity(2);
    for c in Component::BOTH {
        let (x, y) = (a.component(c), b.component(c));
        let matches = model.best_matches(x, y, wa.component(c), wb.component(c))?;
        let total: f64 = matches.iter().map(|m| m.w_g).sum();
        let records = matches
            .iter()
            .map(|m| MatchRecord {
                source: m.source.to_string(),
                matched: m.matched.to_string(),
                direction: m.direction,
                flat: m.flat,
                weighted: m.weighted,
                w_g: m.w_g,
                proportion: if total == 0.0 { 0.0 } else { m.w_g / total },
            })
            .collect();
        parts.push(ComponentExplanation {
            score: set_score(x, y, &matches),
            records,
        });
    }
    let claim = parts.pop().unwrap();
    let support = parts.pop().unwrap();
    let score = combine(model.config.eta, support.score, claim.score);
    Ok(Explanation {
        pair: (a.id.clone(), b.id.clone()),
        config: model.config,
        support,
        claim,
        score,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Svg,
}

impl Format {
    pub fn from_path(path: &Path) -> Option<Format> {
        match path.extension()?.to_str()? {
            "json" => Some(Format::Json),
            "csv" => Some(Format::Csv),
            "svg" => Some(Format::Svg),
            _ => None,
        }
    }
}

#[derive(Debug, Error)]
pub enum EmitError {
    #[error("cannot infer format of {0} (expected .json, .csv or .svg)")]
    UnknownFormat(String),
    #[error("cannot write {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub fn to_json(e: &Explanation) -> String {
    serde_json::to_string_pretty(e).expect("serializable")
}

pub fn from_json(text: &str) -> Result<Explanation, serde_json::Error> {
    serde_json::from_str(text)
}

/// Six significant digits.
pub fn sig6(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (5 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}

pub const CSV_HEADER: [&str; 8] = [
    "component",
    "source_clause",
    "matched_clause",
    "direction",
    "flat",
    "weighted",
    "w_g",
    "proportion",
];

pub fn to_csv(e: &Explanation) -> Result<String, EmitError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER)?;
    for c in Component::BOTH {
        for r in &e.component(c).records {
            w.write_record([
                c.as_str().to_string(),
                r.source.clone(),
                r.matched.clone(),
                r.direction.to_string(),
                sig6(r.flat),
                sig6(r.weighted),
                sig6(r.w_g),
                sig6(r.proportion),
            ])?;
        }
    }
    let bytes = w.into_inner().map_err(|e| csv::Error::from(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("utf-8 input"))
}

/// One histogram bar group: a clause pair with both directions merged.
#[derive(Debug, Clone, PartialEq)]
pub struct BarGroup {
    pub label: String,
    pub weighted: f64,
    pub proportion: f64,
}

/// Records merged per unordered clause pair, in canonical order. The merged
/// weighted score is the `w_g`-weighted mean, proportions are summed.
pub fn bar_groups(c: &ComponentExplanation) -> Vec<BarGroup> {
    // (sum w_g * weighted, sum w_g, proportion, sum weighted, records)
    type Acc = (f64, f64, f64, f64, usize);
    let mut groups: BTreeMap<(String, String), Acc> = BTreeMap::new();
    for r in &c.records {
        let key = if r.source <= r.matched {
            (r.source.clone(), r.matched.clone())
        } else {
            (r.matched.clone(), r.source.clone())
        };
        let g = groups.entry(key).or_default();
        g.0 += r.w_g * r.weighted;
        g.1 += r.w_g;
        g.2 += r.proportion;
        g.3 += r.weighted;
        g.4 += 1;
    }
    groups
        .into_iter()
        .map(|((s, m), (num, den, proportion, plain, n))| BarGroup {
            label: if s == m { s } else { format!("{s} ~ {m}") },
            weighted: if den > 0.0 { num / den } else { plain / n as f64 },
            proportion,
        })
        .collect()
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 400.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 330.0;

/// Static histogram: one panel per component, a blue bar (weighted clause
/// similarity) and a red bar (proportion) per clause pair, and a green line
/// at the component score.
pub fn to_svg(e: &Explanation) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="10">"#
    );
    let _ = writeln!(s, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="400" y="18" text-anchor="middle" font-size="13">{} vs {}: {:.3}</text>"#,
        escape(&e.pair.0),
        escape(&e.pair.1),
        e.score
    );
    let panel_w = WIDTH / 2.0;
    let y_of = |v: f64| BOTTOM - v.clamp(0.0, 1.0) * (BOTTOM - TOP);
    for (i, c) in Component::BOTH.into_iter().enumerate() {
        let ce = e.component(c);
        let x0 = i as f64 * panel_w + 40.0;
        let x1 = (i + 1) as f64 * panel_w - 20.0;
        let _ = writeln!(s, r#"<g class="panel" data-component="{c}">"#);
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="34" text-anchor="middle" font-size="12">{c}</text>"#,
            (x0 + x1) / 2.0
        );
        let _ = writeln!(s, r#"<line x1="{x0:.1}" y1="{BOTTOM:.1}" x2="{x1:.1}" y2="{BOTTOM:.1}" stroke="black"/>"#);
        let _ = writeln!(s, r#"<line x1="{x0:.1}" y1="{TOP:.1}" x2="{x0:.1}" y2="{BOTTOM:.1}" stroke="black"/>"#);
        for tick in [0.0, 0.5, 1.0] {
            let _ = writeln!(
                s,
                r#"<text x="{:.1}" y="{:.1}" text-anchor="end">{tick:.1}</text>"#,
                x0 - 4.0,
                y_of(tick) + 3.0
            );
        }
        let groups = bar_groups(ce);
        let slot = if groups.is_empty() { 0.0 } else { (x1 - x0) / groups.len() as f64 };
        let bar = (slot * 0.35).min(40.0);
        for (k, g) in groups.iter().enumerate() {
            let gx = x0 + k as f64 * slot + slot / 2.0;
            let _ = writeln!(
                s,
                r#"<g class="pair" data-label="{}" data-weighted="{}" data-proportion="{}">"#,
                escape(&g.label),
                sig6(g.weighted),
                sig6(g.proportion)
            );
            let _ = writeln!(
                s,
                r##"<rect class="weighted" x="{:.1}" y="{:.1}" width="{bar:.1}" height="{:.1}" fill="#1f77b4"/>"##,
                gx - bar,
                y_of(g.weighted),
                BOTTOM - y_of(g.weighted)
            );
            let _ = writeln!(
                s,
                r##"<rect class="proportion" x="{gx:.1}" y="{:.1}" width="{bar:.1}" height="{:.1}" fill="#d62728"/>"##,
                y_of(g.proportion),
                BOTTOM - y_of(g.proportion)
            );
            let _ = writeln!(
                s,
                r#"<text x="{gx:.1}" y="{:.1}" text-anchor="end" transform="rotate(-30 {gx:.1} {:.1})">{}</text>"#,
                BOTTOM + 12.0,
                BOTTOM + 12.0,
                escape(&g.label)
            );
            let _ = writeln!(s, "</g>");
        }
        let _ = writeln!(
            s,
            r##"<line class="score" data-score="{}" x1="{x0:.1}" y1="{y:.1}" x2="{x1:.1}" y2="{y:.1}" stroke="#2ca02c" stroke-width="2"/>"##,
            sig6(ce.score),
            y = y_of(ce.score)
        );
        let _ = writeln!(s, "</g>");
    }
    s.push_str("</svg>\n");
    s
}

pub fn render(e: &Explanation, format: Format) -> Result<String, EmitError> {
    Ok(match format {
        Format::Json => to_json(e),
        Format::Csv => to_csv(e)?,
        Format::Svg => to_svg(e),
    })
}

/// Writes `e` to `path`, choosing the format from the file extension.
pub fn emit(e: &Explanation, path: impl AsRef<Path>) -> Result<(), EmitError> {
    let path = path.as_ref();
    let format = Format::from_path(path).ok_or_else(|| EmitError::UnknownFormat(path.display().to_string()))?;
    std::fs::write(path, render(e, format)?).map_err(|source| EmitError::Io {
        path: path.display().to_string(),
        source,
    })
}

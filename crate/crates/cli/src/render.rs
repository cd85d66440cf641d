//! Deterministic number-line rendering: labeled interval strips inside a
//! common hull, emitted as SVG, CSV, or JSON.
//!
//! All geometry stays rational until the final coordinate formatting. SVG
//! output places the hull across a fixed 10⁴-unit virtual width and embeds
//! the exact endpoints of every element as `data-lo` / `data-hi` / `data-x`
//! attributes, so a rendered figure can be checked against the arithmetic
//! without re-running anything.

use std::fs;
use std::path::PathBuf;

use serde::Serialize;

use cantorval::{Error, Interval, IntervalSet, Rational, Result};

/// Width of the hull in SVG user units; rounding to it happens only at
/// render time.
const VIRTUAL_WIDTH: f64 = 10_000.0;
const PAD: f64 = 220.0;
const AXIS_Y: f64 = 90.0;
const STRIP_STEP: f64 = 96.0;
const STRIP_HEIGHT: f64 = 26.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RenderFormat {
    Svg,
    Csv,
    Json,
}

impl RenderFormat {
    pub fn extension(self) -> &'static str {
        match self {
            RenderFormat::Svg => "svg",
            RenderFormat::Csv => "csv",
            RenderFormat::Json => "json",
        }
    }
}

/// One labeled row of intervals.
#[derive(Debug, Clone, Serialize)]
pub struct Strip {
    pub label: String,
    pub set: IntervalSet,
    /// Draw parts as outlines instead of filled bars — used for rows that
    /// depict gaps rather than substance.
    pub hollow: bool,
}

/// A complete figure: the hull every element lives in, the strips top to
/// bottom, labeled axis marks, and optional pairing lines from the first
/// strip down to the second.
#[derive(Debug, Clone, Serialize)]
pub struct RenderSpec {
    pub hull: Interval,
    pub strips: Vec<Strip>,
    pub marks: Vec<(String, Rational)>,
    pub connectors: Vec<(Rational, Rational)>,
    pub output: PathBuf,
    pub format: RenderFormat,
}

impl RenderSpec {
    pub fn validate(&self) -> Result<()> {
        for (label, x) in &self.marks {
            if !self.hull.contains(x) {
                return Err(Error::OutsideHull(format!("{x} (mark {label})")));
            }
        }
        for strip in &self.strips {
            if let Some(h) = strip.set.hull() {
                if !self.hull.contains_interval(&h) {
                    return Err(Error::OutsideHull(format!(
                        "{h} (strip {})",
                        strip.label
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn body(&self) -> Result<String> {
        self.validate()?;
        Ok(match self.format {
            RenderFormat::Svg => self.to_svg(),
            RenderFormat::Csv => self.to_csv(),
            RenderFormat::Json => {
                let mut json = serde_json::to_string_pretty(self)?;
                json.push('\n');
                json
            }
        })
    }

    /// Render and write to the `output` path.
    pub fn emit(&self) -> Result<()> {
        let body = self.body()?;
        if let Some(dir) = self.output.parent().filter(|d| !d.as_os_str().is_empty()) {
            fs::create_dir_all(dir)?;
        }
        fs::write(&self.output, body)?;
        Ok(())
    }

    fn x(&self, r: &Rational) -> f64 {
        let offset = (r - self.hull.lo()) / &self.hull.length();
        PAD + offset.to_f64() * VIRTUAL_WIDTH
    }

    fn to_csv(&self) -> String {
        let mut out = String::from("kind,label,lo,hi\n");
        for strip in &self.strips {
            let kind = if strip.hollow { "gap-strip" } else { "strip" };
            for part in strip.set.parts() {
                out += &format!("{kind},{},{},{}\n", strip.label, part.lo(), part.hi());
            }
        }
        for (label, x) in &self.marks {
            out += &format!("mark,{label},{x},{x}\n");
        }
        for (from, to) in &self.connectors {
            out += &format!("connector,,{from},{to}\n");
        }
        out
    }

    fn to_svg(&self) -> String {
        let height = AXIS_Y + STRIP_STEP * (self.strips.len() as f64 + 0.8);
        let width = 2.0 * PAD + VIRTUAL_WIDTH;
        let mut svg = format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {width:.0} {height:.0}\" \
             font-family=\"sans-serif\" font-size=\"30\" data-hull-lo=\"{}\" data-hull-hi=\"{}\">\n",
            self.hull.lo(),
            self.hull.hi()
        );
        svg += &format!(
            "  <line x1=\"{PAD:.2}\" y1=\"{AXIS_Y:.2}\" x2=\"{:.2}\" y2=\"{AXIS_Y:.2}\" \
             stroke=\"#333\" stroke-width=\"2\"/>\n",
            PAD + VIRTUAL_WIDTH
        );
        for (label, x) in &self.marks {
            let px = self.x(x);
            svg += &format!(
                "  <line x1=\"{px:.2}\" y1=\"{:.2}\" x2=\"{px:.2}\" y2=\"{:.2}\" \
                 stroke=\"#333\" stroke-width=\"2\" data-x=\"{x}\"/>\n",
                AXIS_Y - 12.0,
                AXIS_Y + 12.0
            );
            svg += &format!(
                "  <text x=\"{px:.2}\" y=\"{:.2}\" text-anchor=\"middle\">{label}</text>\n",
                AXIS_Y - 24.0
            );
        }
        // Connectors first so strip bars draw on top of them.
        if self.strips.len() >= 2 {
            let y_from = AXIS_Y + STRIP_STEP - STRIP_HEIGHT / 2.0 + STRIP_HEIGHT;
            let y_to = AXIS_Y + 2.0 * STRIP_STEP - STRIP_HEIGHT / 2.0;
            for (from, to) in &self.connectors {
                svg += &format!(
                    "  <line x1=\"{:.2}\" y1=\"{y_from:.2}\" x2=\"{:.2}\" y2=\"{y_to:.2}\" \
                     stroke=\"#999\" stroke-width=\"1.5\" data-from=\"{from}\" data-to=\"{to}\"/>\n",
                    self.x(from),
                    self.x(to)
                );
            }
        }
        for (i, strip) in self.strips.iter().enumerate() {
            let y = AXIS_Y + STRIP_STEP * (i as f64 + 1.0) - STRIP_HEIGHT / 2.0;
            svg += &format!(
                "  <text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"start\" fill=\"#555\">{}</text>\n",
                4.0,
                y + STRIP_HEIGHT - 6.0,
                strip.label
            );
            for part in strip.set.parts() {
                let x0 = self.x(part.lo());
                let x1 = self.x(part.hi());
                let w = (x1 - x0).max(2.0); // degenerate parts stay visible
                let style = if strip.hollow {
                    "fill=\"none\" stroke=\"#777\" stroke-width=\"2\""
                } else {
                    "fill=\"#2b6cb0\""
                };
                svg += &format!(
                    "  <rect x=\"{x0:.2}\" y=\"{y:.2}\" width=\"{w:.2}\" height=\"{STRIP_HEIGHT:.2}\" \
                     {style} data-lo=\"{}\" data-hi=\"{}\"/>\n",
                    part.lo(),
                    part.hi()
                );
            }
        }
        svg += "</svg>\n";
        svg
    }
}

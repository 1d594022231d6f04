use std::fmt::Write as _;

use num_traits::{One, Signed};
use serde_json::{json, Map, Value};

use valuon::checks::CheckOutcome;
use valuon::invariant::in_generators_g;
use valuon::io;
use valuon::valuation::{DilativeRow, DimsRow, EhrhartTensorTable};
use valuon::{BivariatePolynomial, Triangulation, TruncatedSeries};

use crate::Format;

/// `c p2^k p3^l + ...` when `f` is homogeneous and lies in the span of those products.
pub fn in_p2_p3(f: &BivariatePolynomial) -> Option<String> {
    let r = f.degree()?;
    let terms = in_generators_g(f, r)?;
    let mut s = String::new();
    for (n, ((k, l), c)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        match (n, neg) {
            (0, true) => s.push('-'),
            (0, false) => {}
            (_, true) => s.push_str(" - "),
            (_, false) => s.push_str(" + "),
        }
        let abs = c.abs();
        let mut factors = Vec::new();
        for (name, e) in [("p2", *k), ("p3", *l)] {
            match e {
                0 => {}
                1 => factors.push(name.to_string()),
                _ => factors.push(format!("{name}^{e}")),
            }
        }
        if factors.is_empty() {
            let _ = write!(s, "{abs}");
        } else if abs.is_one() {
            s.push_str(&factors.join(" "));
        } else {
            let _ = write!(s, "{abs} {}", factors.join(" "));
        }
    }
    Some(s)
}

pub struct Renderer {
    format: Format,
    pretty: bool,
}

impl Renderer {
    pub fn new(format: Format, pretty: bool) -> Self {
        Self { format, pretty }
    }

    fn finish(&self, v: Value) -> String {
        format!("{}\n", serde_json::to_string_pretty(&v).expect("json values serialize"))
    }

    fn pretty_of(&self, f: &BivariatePolynomial) -> Option<String> {
        if self.pretty {
            in_p2_p3(f)
        } else {
            None
        }
    }

    fn poly_json(&self, f: &BivariatePolynomial) -> Value {
        let mut v = io::poly_to_json(f);
        if let (Some(p), Some(obj)) = (self.pretty_of(f), v.as_object_mut()) {
            obj.insert("pretty".into(), Value::String(p));
        }
        v
    }

    fn poly_text(&self, f: &BivariatePolynomial) -> String {
        match self.pretty_of(f) {
            Some(p) => format!("{f}  [= {p}]"),
            None => f.to_string(),
        }
    }

    pub fn poly(&self, f: &BivariatePolynomial) -> String {
        match self.format {
            Format::Json => self.finish(self.poly_json(f)),
            Format::Text => format!("{}\n", self.poly_text(f)),
        }
    }

    pub fn series(&self, s: &TruncatedSeries) -> String {
        match self.format {
            Format::Json => {
                let mut v = io::series_to_json(s);
                if self.pretty {
                    let mut layers = Map::new();
                    for (d, layer) in s.layers().iter().enumerate() {
                        if let Some(p) = in_p2_p3(layer) {
                            layers.insert(d.to_string(), Value::String(p));
                        }
                    }
                    if let Some(obj) = v.as_object_mut() {
                        obj.insert("pretty".into(), Value::Object(layers));
                    }
                }
                self.finish(v)
            }
            Format::Text if self.pretty => {
                let mut out = String::new();
                for (d, layer) in s.layers().iter().enumerate() {
                    if !layer.is_zero() {
                        let _ = writeln!(out, "[{d}] {}", self.poly_text(layer));
                    }
                }
                let _ = writeln!(out, "O(deg {})", s.truncation() + 1);
                out
            }
            Format::Text => format!("{s}\n"),
        }
    }

    pub fn ehrhart(&self, t: &EhrhartTensorTable) -> String {
        match self.format {
            Format::Json => self.finish(json!({
                "polygon": io::polygon_to_json(&t.polygon),
                "rank": t.rank,
                "coeffs": t.coeffs.iter().map(|c| self.poly_json(c)).collect::<Vec<_>>(),
            })),
            Format::Text => {
                let mut out = String::new();
                for (i, c) in t.coeffs.iter().enumerate() {
                    let _ = writeln!(out, "L_{i}^{} = {}", t.rank, self.poly_text(c));
                }
                out
            }
        }
    }

    pub fn triangulation(&self, t: &Triangulation) -> String {
        match self.format {
            Format::Json => self.finish(json!({
                "polygon": io::polygon_to_json(t.parent()),
                "triangles": io::triangulation_to_json(t),
            })),
            Format::Text => {
                let mut out = String::new();
                for [a, b, c] in t.triples() {
                    let _ = writeln!(out, "{a} {b} {c}");
                }
                out
            }
        }
    }

    pub fn dims(&self, seed: u64, probes: usize, tensor: &[DimsRow], dilative: &[DilativeRow], label: &str) -> String {
        let status = |ok: bool| if ok { label } else { "MISMATCH" };
        match self.format {
            Format::Json => self.finish(json!({
                "seed": seed,
                "probes": probes,
                "tensor": tensor.iter().map(|r| json!({
                    "i": r.i,
                    "r": r.r,
                    "predicted": r.predicted,
                    "observed": r.observed,
                    "status": status(r.observed == r.predicted as usize),
                    "family": r.family,
                })).collect::<Vec<_>>(),
                "dilative": dilative.iter().map(|r| json!({
                    "d": r.d,
                    "predicted": r.predicted,
                    "observed": r.observed,
                    "status": status(r.observed == r.predicted as usize),
                    "family": r.family,
                })).collect::<Vec<_>>(),
            })),
            Format::Text => {
                let mut out = format!("seed {seed}, {probes} probe polygons\n\n");
                let _ = writeln!(out, "{:>3} {:>3} {:>9} {:>8}  status", "i", "r", "predicted", "observed");
                for r in tensor {
                    let _ = writeln!(
                        out,
                        "{:>3} {:>3} {:>9} {:>8}  {}  ({})",
                        r.i,
                        r.r,
                        r.predicted,
                        r.observed,
                        status(r.observed == r.predicted as usize),
                        r.family
                    );
                }
                let _ = writeln!(out, "\n{:>3} {:>9} {:>8}  status", "d", "predicted", "observed");
                for r in dilative {
                    let _ = writeln!(
                        out,
                        "{:>3} {:>9} {:>8}  {}  ({})",
                        r.d,
                        r.predicted,
                        r.observed,
                        status(r.observed == r.predicted as usize),
                        r.family
                    );
                }
                out
            }
        }
    }

    pub fn checks(&self, seed: u64, outcomes: &[CheckOutcome]) -> String {
        match self.format {
            Format::Json => self.finish(json!({
                "seed": seed,
                "checks": outcomes.iter().map(|o| {
                    let mut m = Map::new();
                    m.insert("module".into(), json!(o.module));
                    m.insert("name".into(), json!(o.name));
                    m.insert("pass".into(), json!(o.result.is_ok()));
                    if let Err(e) = &o.result {
                        m.insert("detail".into(), json!(e));
                    }
                    Value::Object(m)
                }).collect::<Vec<_>>(),
            })),
            Format::Text => {
                let mut out = format!("seed {seed}\n");
                for o in outcomes {
                    match &o.result {
                        Ok(()) => {
                            let _ = writeln!(out, "PASS {}/{}", o.module, o.name);
                        }
                        Err(e) => {
                            let _ = writeln!(out, "FAIL {}/{}: {e}", o.module, o.name);
                        }
                    }
                }
                out
            }
        }
    }
}

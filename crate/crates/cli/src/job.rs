//! Building blocks shared by the subcommands: target resolution, desk-scale
//! ceilings, and report assembly in the three output formats.

use num_rational::BigRational;
use num_traits::Zero;
use polaris_core::classify::{
    branch_series, classify_degree2, classify_degree3, exception_criterion_deg3, exception_rank,
    point_polynomial, projective_point, IsoType,
};
use polaris_core::closure::{hilbert_polynomial, polarization_module};
use polaris_core::families::{generator_polynomial, parse_generator, stable_family};
use polaris_core::symfunc::partitions_of;
use polaris_core::{
    Error, FrobeniusSeries, MatrixPolynomial, Partition, QPoly, RenderStyle, Result,
};
use serde_json::{json, Value};

pub const TOOL: &str = concat!("polaris ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Clone, Copy)]
pub struct Limits {
    pub max_n: usize,
    pub max_l: usize,
    pub max_degree: u32,
}

impl Limits {
    pub fn check(&self, n: usize, rows: usize, degree: u32) -> Result<()> {
        let refuse = |what: &str| {
            Err(Error::UnsupportedGenerator {
                reason: what.to_string(),
            })
        };
        if n > self.max_n {
            return refuse(&format!("n = {n} exceeds the ceiling {}; raise --max-n if you mean it", self.max_n));
        }
        if rows > self.max_l {
            return refuse(&format!("l = {rows} exceeds the ceiling {}; raise --max-l if you mean it", self.max_l));
        }
        if degree > self.max_degree {
            return refuse(&format!("generator degree {degree} exceeds the ceiling {}; raise --max-degree if you mean it", self.max_degree));
        }
        Ok(())
    }
}

/// What a classification or rank command points at: a generator expression
/// or raw projective coordinates.
pub enum Target {
    Gen(String),
    Point(Vec<BigRational>),
}

impl Target {
    pub fn describe(&self) -> String {
        match self {
            Target::Gen(g) => g.clone(),
            Target::Point(coords) => {
                let body: Vec<String> = coords.iter().map(|c| c.to_string()).collect();
                format!("[{}]", body.join(":"))
            }
        }
    }
}

/// Parses "a:b:c" coordinates with rational entries.
pub fn parse_point(input: &str) -> Result<Vec<BigRational>> {
    let bad = |reason: String| Error::Parse {
        input: input.to_string(),
        reason,
    };
    let coords = input
        .trim_start_matches('[')
        .trim_end_matches(']')
        .split(':')
        .map(|piece| {
            let piece = piece.trim();
            let (num, den) = match piece.split_once('/') {
                Some((n, d)) => (n, Some(d)),
                None => (piece, None),
            };
            let num: i64 = num
                .parse()
                .map_err(|_| bad(format!("bad coordinate '{piece}'")))?;
            let den: i64 = match den {
                Some(d) => d
                    .parse()
                    .map_err(|_| bad(format!("bad coordinate '{piece}'")))?,
                None => 1,
            };
            if den == 0 {
                return Err(bad(format!("zero denominator in '{piece}'")));
            }
            Ok(BigRational::new(num.into(), den.into()))
        })
        .collect::<Result<Vec<_>>>()?;
    if coords.len() < 2 {
        return Err(bad("a point needs at least two ':'-separated coordinates".into()));
    }
    Ok(coords)
}

/// The homogeneous degree whose partition count matches the coordinate
/// count. Injective for the desk-scale degrees.
pub fn point_degree(coords: usize) -> Result<u32> {
    (2..=6)
        .find(|&d| partitions_of(d).len() == coords)
        .ok_or_else(|| Error::Parse {
            input: format!("{coords} coordinates"),
            reason: "coordinate count matches no degree between 2 and 6 (2, 3, 5, 7, or 11 coordinates)".to_string(),
        })
}

/// Builds the polynomial a target denotes at n columns.
pub fn target_polynomial(target: &Target, n: usize) -> Result<MatrixPolynomial> {
    match target {
        Target::Gen(text) => {
            let spec = parse_generator(text)?;
            generator_polynomial(&spec, n)
        }
        Target::Point(coords) => {
            let d = point_degree(coords.len())?;
            point_polynomial(d, coords, n)
        }
    }
}

/// Resolves --gen/--family to the stable family the module is built from.
pub fn resolve_family(gen: &str, n: usize) -> Result<(Vec<MatrixPolynomial>, u32)> {
    let spec = parse_generator(gen)?;
    let members = stable_family(&spec, n)?;
    let degree = members
        .iter()
        .filter_map(MatrixPolynomial::total_degree)
        .max()
        .unwrap_or(0);
    Ok((members, degree))
}

pub struct ModuleOutputs {
    pub dims: bool,
    pub hilbert: bool,
    pub frobenius: bool,
}

impl ModuleOutputs {
    pub fn parse(show: &str) -> Result<Self> {
        let mut out = ModuleOutputs {
            dims: false,
            hilbert: false,
            frobenius: false,
        };
        for piece in show.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            match piece {
                "dims" => out.dims = true,
                "hilbert" => out.hilbert = true,
                "frobenius" => out.frobenius = true,
                other => {
                    return Err(Error::Parse {
                        input: show.to_string(),
                        reason: format!("unknown output '{other}' (expected dims, hilbert, frobenius)"),
                    })
                }
            }
        }
        if !(out.dims || out.hilbert || out.frobenius) {
            return Err(Error::Parse {
                input: show.to_string(),
                reason: "empty --show list".to_string(),
            });
        }
        Ok(out)
    }
}

pub struct ModuleReport {
    pub generator: String,
    pub n: usize,
    pub rows: usize,
    pub iterations: usize,
    pub total_dim: usize,
    pub graded: Vec<(Vec<u32>, usize)>,
    pub hilbert: Option<QPoly>,
    pub series: Option<FrobeniusSeries>,
    pub style: RenderStyle,
    pub outputs: ModuleOutputs,
}

pub fn run_module(
    gen: &str,
    n: usize,
    rows: usize,
    outputs: ModuleOutputs,
    style: RenderStyle,
    limits: &Limits,
) -> Result<ModuleReport> {
    let (family, degree) = resolve_family(gen, n)?;
    limits.check(n, rows, degree)?;
    let (module, report) = polarization_module(&family, rows)?;
    let graded = module
        .graded_dims()
        .into_iter()
        .map(|(deg, dim)| (deg.0.clone(), dim))
        .collect();
    let hilbert = outputs.hilbert.then(|| hilbert_polynomial(&module));
    let series = if outputs.frobenius {
        Some(polaris_core::frobenius::frobenius_series(&module)?)
    } else {
        None
    };
    Ok(ModuleReport {
        generator: gen.to_string(),
        n,
        rows,
        iterations: report.iterations,
        total_dim: report.dimension,
        graded,
        hilbert,
        series,
        style,
        outputs,
    })
}

fn style_name(style: RenderStyle) -> &'static str {
    match style {
        RenderStyle::SchurSchur => "schur",
        RenderStyle::HH => "h",
    }
}

impl ModuleReport {
    pub fn text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "generator {} at n = {}, rows = {}\n",
            self.generator, self.n, self.rows
        ));
        out.push_str(&format!(
            "closure iterations {}, dimension {}\n",
            self.iterations, self.total_dim
        ));
        if self.outputs.dims {
            out.push_str(&format!("dims total {}\n", self.total_dim));
            let graded: Vec<String> = self
                .graded
                .iter()
                .map(|(deg, dim)| format!("({}) {}", join_u32(deg), dim))
                .collect();
            out.push_str(&format!("dims graded {}\n", graded.join(", ")));
        }
        if let Some(hp) = &self.hilbert {
            out.push_str(&format!("hilbert {}\n", hp.render("q")));
        }
        if let Some(fs) = &self.series {
            out.push_str(&format!("frobenius {}\n", fs.render(self.style)));
        }
        out
    }

    pub fn json(&self) -> Value {
        let mut doc = json!({
            "tool": TOOL,
            "generator": self.generator,
            "n": self.n,
            "rows": self.rows,
            "closure_iterations": self.iterations,
        });
        let map = doc.as_object_mut().expect("object");
        if self.outputs.dims {
            let graded: Vec<Value> = self
                .graded
                .iter()
                .map(|(deg, dim)| json!({ "degree": deg, "dim": dim }))
                .collect();
            map.insert(
                "dims".to_string(),
                json!({ "total": self.total_dim, "graded": graded }),
            );
        }
        if let Some(hp) = &self.hilbert {
            map.insert("hilbert".to_string(), json!(hp.render("q")));
        }
        if let Some(fs) = &self.series {
            map.insert(
                "frobenius".to_string(),
                json!({
                    "style": style_name(self.style),
                    "rendered": fs.render(self.style),
                    "table": fs.to_json(),
                }),
            );
        }
        doc
    }

    pub fn latex(&self) -> String {
        let mut out = String::new();
        if let Some(fs) = &self.series {
            out.push_str(&fs.latex(self.style));
            out.push('\n');
        }
        if let Some(hp) = &self.hilbert {
            out.push_str(&format!("% hilbert {}\n", hp.render("q")));
        }
        out
    }
}

pub struct ClassifyReport {
    pub target: String,
    pub point: Option<Vec<BigRational>>,
    pub degree: u32,
    pub n: usize,
    pub iso: IsoType,
    pub predicted: Option<FrobeniusSeries>,
    pub rows: Option<usize>,
    pub computed: Option<FrobeniusSeries>,
    pub verified: Option<bool>,
}

pub fn run_classify(
    target: &Target,
    n: usize,
    rows: Option<usize>,
    limits: &Limits,
) -> Result<ClassifyReport> {
    let f = target_polynomial(target, n)?;
    if f.is_zero() {
        return Err(Error::ZeroPoint);
    }
    let degree = f.total_degree().expect("nonzero");
    limits.check(n, rows.unwrap_or(1), degree)?;
    let point = projective_point(&f)?;
    let coords = point.coords();
    let iso = match degree {
        1 => IsoType::P1Power,
        2 => classify_degree2(&coords[0], &coords[1])?,
        3 => classify_degree3(&coords[0], &coords[1], &coords[2], n)?,
        _ => {
            let p1_power = polaris_core::families::sym_poly(
                polaris_core::Basis::PowerSum,
                &Partition::new(vec![1]),
                n,
            )?
            .pow(degree);
            if point == projective_point(&p1_power)? {
                IsoType::P1Power
            } else if coords.iter().skip(1).all(Zero::is_zero) {
                IsoType::PowerSum
            } else {
                IsoType::Unknown
            }
        }
    };
    let predicted = branch_series(iso, degree, n as u32);
    let (computed, verified) = match rows {
        Some(l) => {
            let (module, _) = polarization_module(&[f], l)?;
            let fs = polaris_core::frobenius::frobenius_series(&module)?;
            let ok = predicted.as_ref().map(|p| fs == p.truncate(l));
            (Some(fs), ok)
        }
        None => (None, None),
    };
    Ok(ClassifyReport {
        target: target.describe(),
        point: Some(coords.to_vec()),
        degree,
        n,
        iso,
        predicted,
        rows,
        computed,
        verified,
    })
}

impl ClassifyReport {
    pub fn text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "target {} degree {} n {}\n",
            self.target, self.degree, self.n
        ));
        if let Some(point) = &self.point {
            let body: Vec<String> = point.iter().map(|c| c.to_string()).collect();
            out.push_str(&format!("point [{}]\n", body.join(":")));
        }
        out.push_str(&format!("iso_type {}\n", self.iso));
        if let Some(p) = &self.predicted {
            let shown = match self.rows {
                Some(l) => p.truncate(l),
                None => p.clone(),
            };
            out.push_str(&format!("predicted {}\n", shown.render(RenderStyle::SchurSchur)));
        }
        if let Some(c) = &self.computed {
            out.push_str(&format!("computed {}\n", c.render(RenderStyle::SchurSchur)));
        }
        if let Some(v) = self.verified {
            out.push_str(&format!("verified {v}\n"));
        }
        out
    }

    pub fn json(&self) -> Value {
        let mut doc = json!({
            "tool": TOOL,
            "target": self.target,
            "degree": self.degree,
            "n": self.n,
            "iso_type": self.iso.tag(),
        });
        let map = doc.as_object_mut().expect("object");
        if let Some(point) = &self.point {
            let body: Vec<String> = point.iter().map(|c| c.to_string()).collect();
            map.insert("point".to_string(), json!(body));
        }
        if let Some(p) = &self.predicted {
            let shown = match self.rows {
                Some(l) => p.truncate(l),
                None => p.clone(),
            };
            map.insert(
                "predicted".to_string(),
                json!(shown.render(RenderStyle::SchurSchur)),
            );
        }
        if let Some(l) = self.rows {
            map.insert("rows".to_string(), json!(l));
        }
        if let Some(c) = &self.computed {
            map.insert(
                "computed".to_string(),
                json!(c.render(RenderStyle::SchurSchur)),
            );
        }
        if let Some(v) = self.verified {
            map.insert("verified".to_string(), json!(v));
        }
        doc
    }
}

pub struct ExceptionReport {
    pub target: String,
    pub point: Option<Vec<BigRational>>,
    pub degree: u32,
    pub n: usize,
    pub rank: usize,
    pub exception: bool,
    pub criterion: Option<bool>,
}

pub fn run_exception(target: &Target, n: usize, limits: &Limits) -> Result<ExceptionReport> {
    let f = target_polynomial(target, n)?;
    if f.is_zero() {
        return Err(Error::ZeroPoint);
    }
    let degree = f.total_degree().expect("nonzero");
    limits.check(n, 1, degree)?;
    let rank = exception_rank(&f)?;
    let point = projective_point(&f)?;
    let coords = point.coords();
    let criterion = (degree == 3 && n >= 2)
        .then(|| exception_criterion_deg3(&coords[0], &coords[1], &coords[2], n));
    Ok(ExceptionReport {
        target: target.describe(),
        point: Some(coords.to_vec()),
        degree,
        n,
        rank,
        exception: rank == n,
        criterion,
    })
}

impl ExceptionReport {
    pub fn text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "target {} degree {} n {}\n",
            self.target, self.degree, self.n
        ));
        if let Some(point) = &self.point {
            let body: Vec<String> = point.iter().map(|c| c.to_string()).collect();
            out.push_str(&format!("point [{}]\n", body.join(":")));
        }
        out.push_str(&format!("rank {}\n", self.rank));
        out.push_str(&format!("exception {}\n", self.exception));
        if let Some(c) = self.criterion {
            out.push_str(&format!("criterion {c}\n"));
        }
        out
    }

    pub fn json(&self) -> Value {
        let mut doc = json!({
            "tool": TOOL,
            "target": self.target,
            "degree": self.degree,
            "n": self.n,
            "rank": self.rank,
            "exception": self.exception,
        });
        let map = doc.as_object_mut().expect("object");
        if let Some(point) = &self.point {
            let body: Vec<String> = point.iter().map(|c| c.to_string()).collect();
            map.insert("point".to_string(), json!(body));
        }
        if let Some(c) = self.criterion {
            map.insert("criterion".to_string(), json!(c));
        }
        doc
    }
}

fn join_u32(xs: &[u32]) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

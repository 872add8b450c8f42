//! The `cellform` command line.
//!
//! [`run`] parses arguments, executes one command and returns the exit code
//! with everything destined for stdout and stderr, so the binary is a thin
//! wrapper and tests can drive commands in-process.
//!
//! Exit codes: 0 success, 1 usage, 2 validation, 3 I/O or parse, 4 Hodge
//! mismatch, 5 ambiguous kernel tolerance, 6 Gauss–Bonnet failure,
//! 7 property-check failure.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::calculus;
use crate::complex::CellComplex;
use crate::curvature::{self, CurvatureContext, CurvatureError, RicciComparison};
use crate::forms::{Form, FormComplex, FormError};
use crate::generators::{self, GeneratorError};
use crate::homology;
use crate::io::{self, ComplexDocument, IngestError};
use crate::random::{self, SeededRng};

pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_HODGE_MISMATCH: i32 = 4;
pub const EXIT_TOLERANCE_AMBIGUOUS: i32 = 5;
pub const EXIT_GAUSS_BONNET: i32 = 6;
pub const EXIT_PROPERTY_FAILURE: i32 = 7;

#[derive(Parser, Debug)]
#[command(
    name = "cellform",
    version,
    about = "Forms, Hodge Laplacians and curvature on weighted cell complexes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Load a complex and print its cell counts, Euler characteristic,
    /// quasiconvexity and closed-surface flag.
    Validate {
        #[command(flatten)]
        common: Common,
        /// Fail with exit code 2 unless the complex is quasiconvex.
        #[arg(long)]
        require_quasiconvex: bool,
    },
    /// Compare harmonic dimensions of the Hodge Laplacian with Betti numbers.
    Hodge {
        #[command(flatten)]
        common: Common,
        /// Relative kernel threshold for eigenvalues.
        #[arg(long, default_value_t = 1e-8)]
        tolerance: f64,
    },
    /// Gauss and scalar curvatures with the Gauss–Bonnet check.
    Curvature {
        #[command(flatten)]
        common: Common,
        /// `random` or a JSON 1-form file; adds per-vector Ricci values.
        #[arg(long)]
        form: Option<String>,
    },
    /// Seeded random trials of the operator and calculus identities.
    Check {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Largest residual accepted.
        #[arg(long, default_value_t = 1e-12)]
        threshold: f64,
    },
    /// Write the complex as a canonical JSON document.
    Export {
        #[command(flatten)]
        common: Common,
        /// Name recorded in the document.
        #[arg(long)]
        name: Option<String>,
    },
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Complex file: `.json` document, `.off` mesh, anything else an edge list.
    #[arg(
        long,
        conflicts_with = "generate",
        required_unless_present = "generate"
    )]
    pub input: Option<PathBuf>,
    /// Built-in complex, e.g. `cube`, `cycle:5`, `torus_grid:4x4`.
    #[arg(long)]
    pub generate: Option<String>,
    /// `const:X`, `random` (uniform in [0.1, 10]) or a JSON weight file.
    #[arg(long)]
    pub weights: Option<String>,
    /// Seed for every random draw (ChaCha8).
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Result of one invocation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn fail(code: i32, message: impl Into<String>) -> Self {
        let mut stderr = message.into();
        if !stderr.ends_with('\n') {
            stderr.push('\n');
        }
        Self {
            code,
            stdout: String::new(),
            stderr,
        }
    }
}

/// Shortest decimal that reads back to the same `f64`.
pub fn fmt_float(x: f64) -> String {
    format!("{x:?}")
}

fn verdict(ok: bool, color: bool) -> &'static str {
    match (ok, color) {
        (true, true) => "\x1b[32mPASS\x1b[0m",
        (false, true) => "\x1b[31mFAIL\x1b[0m",
        (true, false) => "PASS",
        (false, false) => "FAIL",
    }
}

/// Runs one command line (`args[0]` is the program name).
pub fn run<I, T>(args: I, color: bool) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome {
                        code: 0,
                        stdout: text,
                        stderr: String::new(),
                    }
                }
                _ => Outcome::fail(EXIT_USAGE, text),
            };
        }
    };
    let result = match &cli.command {
        Command::Validate {
            common,
            require_quasiconvex,
        } => load(common).map(|(c, _)| validate(&c, common.format, *require_quasiconvex)),
        Command::Hodge { common, tolerance } => {
            load(common).map(|(c, _)| hodge(&c, common.format, *tolerance, color))
        }
        Command::Curvature { common, form } => load(common)
            .map(|(c, mut rng)| curvature_cmd(&c, common.format, form.as_deref(), &mut rng, color)),
        Command::Check {
            common,
            trials,
            threshold,
        } => load(common)
            .map(|(c, mut rng)| check(&c, common.format, *trials, *threshold, &mut rng, color)),
        Command::Export { common, name } => load(common).map(|(c, _)| export(&c, name.clone())),
    };
    result.unwrap_or_else(|e| e)
}

fn ingest_failure(source: &str, e: IngestError) -> Outcome {
    let code = match e {
        IngestError::Validation(_)
        | IngestError::SelfLoop { .. }
        | IngestError::DuplicateEdge { .. } => EXIT_VALIDATION,
        IngestError::Values(_) => EXIT_VALIDATION,
        IngestError::Parse { .. } | IngestError::Schema(_) => EXIT_IO,
    };
    Outcome::fail(code, format!("error: {source}: {e}"))
}

fn read(path: &Path) -> Result<String, Outcome> {
    std::fs::read_to_string(path)
        .map_err(|e| Outcome::fail(EXIT_IO, format!("error: {}: {e}", path.display())))
}

/// Loads the complex, applies `--weights`, and returns the seeded generator
/// for any later draws.
fn load(common: &Common) -> Result<(CellComplex, SeededRng), Outcome> {
    let complex = match (&common.input, &common.generate) {
        (Some(path), _) => {
            let text = read(path)?;
            let shown = path.display().to_string();
            let ext = path.extension().and_then(|e| e.to_str()).unwrap_or("");
            let parsed = match ext {
                "json" => io::parse_complex_json(&text),
                "off" | "OFF" => io::parse_off(&text).map(|o| o.complex),
                _ => io::parse_edge_list(&text).map(|g| g.complex),
            };
            parsed.map_err(|e| ingest_failure(&shown, e))?
        }
        (None, Some(spec)) => generators::generate(spec).map_err(|e| match e {
            GeneratorError::Complex(inner) => {
                Outcome::fail(EXIT_VALIDATION, format!("error: {inner}"))
            }
            other => Outcome::fail(EXIT_USAGE, format!("error: {other}")),
        })?,
        (None, None) => {
            return Err(Outcome::fail(
                EXIT_USAGE,
                "error: one of --input or --generate is required",
            ))
        }
    };
    let mut rng = random::seeded(common.seed);
    let complex = match common.weights.as_deref() {
        None => complex,
        Some("random") => random::reweighted(&complex, &mut rng),
        Some(spec) if spec.starts_with("const:") => {
            let value: f64 = spec["const:".len()..].parse().map_err(|_| {
                Outcome::fail(EXIT_USAGE, format!("error: bad weight spec `{spec}`"))
            })?;
            let weights = complex
                .counts()
                .into_iter()
                .map(|n| vec![value; n])
                .collect();
            complex
                .with_weights(weights)
                .map_err(|e| Outcome::fail(EXIT_VALIDATION, format!("error: {e}")))?
        }
        Some(path) => {
            let text = read(Path::new(path))?;
            let weights =
                io::parse_weights_json(&complex, &text).map_err(|e| ingest_failure(path, e))?;
            complex
                .with_weights(weights)
                .map_err(|e| Outcome::fail(EXIT_VALIDATION, format!("error: {path}: {e}")))?
        }
    };
    Ok((complex, rng))
}

fn json_out(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("values always serialize");
    s.push('\n');
    s
}

fn counts_text(c: &CellComplex) -> String {
    c.counts()
        .iter()
        .map(|n| n.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn validate(c: &CellComplex, format: Format, require_quasiconvex: bool) -> Outcome {
    let violation = c.quasiconvexity_violation();
    let quasiconvex = violation.is_none();
    let closed = c.is_closed_surface();
    let chi = c.euler_characteristic();
    let stdout = match format {
        Format::Text => format!(
            "{}, chi={chi}, quasiconvex={quasiconvex}, closed={closed}\n",
            counts_text(c)
        ),
        Format::Json => json_out(&json!({
            "counts": c.counts(),
            "chi": chi,
            "dimension": c.dim(),
            "quasiconvex": quasiconvex,
            "closed_surface": closed,
        })),
        Format::Csv => format!(
            "counts,chi,quasiconvex,closed\n{},{chi},{quasiconvex},{closed}\n",
            counts_text(c)
        ),
    };
    let mut out = Outcome {
        code: 0,
        stdout,
        stderr: String::new(),
    };
    if let (true, Some(v)) = (require_quasiconvex, violation) {
        out.code = EXIT_VALIDATION;
        out.stderr = format!(
            "error: not quasiconvex: closures of {} and {} share {} but meet in {} cells\n",
            v.first,
            v.second,
            v.shared,
            v.intersection.len()
        );
    }
    out
}

fn hodge(c: &CellComplex, format: Format, tolerance: f64, color: bool) -> Outcome {
    let forms = FormComplex::new(c);
    let mut rows = Vec::new();
    let mut ambiguous = None;
    for d in 0..=c.dim() {
        let spectrum = match forms.spectrum(d, tolerance) {
            Ok(s) => s,
            Err(e) => return Outcome::fail(EXIT_USAGE, format!("error: {e}")),
        };
        let harmonic = match spectrum.harmonic_dimension() {
            Ok(h) => Some(h),
            Err(e @ FormError::ToleranceAmbiguous { .. }) => {
                ambiguous.get_or_insert(e);
                None
            }
            Err(e) => return Outcome::fail(EXIT_USAGE, format!("error: {e}")),
        };
        rows.push((d, spectrum, harmonic, homology::betti_oracle(c, d)));
    }
    let matches = rows.iter().all(|(_, _, h, b)| *h == Some(*b));
    let harmonic_list: Vec<String> = rows
        .iter()
        .map(|(_, _, h, _)| h.map_or("?".to_owned(), |h| h.to_string()))
        .collect();
    let betti_list: Vec<String> = rows.iter().map(|(_, _, _, b)| b.to_string()).collect();
    let stdout = match format {
        Format::Text => {
            let mut s = String::new();
            for (d, spectrum, h, b) in &rows {
                let min = spectrum.min_nonzero().map_or("none".to_owned(), fmt_float);
                let h = h.map_or("?".to_owned(), |h| h.to_string());
                writeln!(s, "degree {d}: harmonic={h} betti={b} min_nonzero={min}").unwrap();
            }
            writeln!(
                s,
                "harmonic ({}) vs betti ({}): {}",
                harmonic_list.join(","),
                betti_list.join(","),
                verdict(matches, color)
            )
            .unwrap();
            s
        }
        Format::Json => {
            let degrees: Vec<Value> = rows
                .iter()
                .map(|(d, spectrum, h, b)| {
                    json!({
                        "degree": d,
                        "eigenvalues": spectrum.eigenvalues,
                        "harmonic_dim": h,
                        "betti": b,
                        "min_nonzero": spectrum.min_nonzero(),
                        "tolerance": tolerance,
                    })
                })
                .collect();
            json_out(&json!({ "degrees": degrees, "match": matches }))
        }
        Format::Csv => {
            let mut s = String::from("degree,harmonic_dim,betti,min_nonzero,tolerance\n");
            for (d, spectrum, h, b) in &rows {
                let h = h.map_or(String::new(), |h| h.to_string());
                let min = spectrum.min_nonzero().map_or(String::new(), fmt_float);
                writeln!(s, "{d},{h},{b},{min},{}", fmt_float(tolerance)).unwrap();
            }
            s
        }
    };
    let (code, stderr) = match ambiguous {
        Some(e) => (EXIT_TOLERANCE_AMBIGUOUS, format!("error: {e}\n")),
        None if !matches => (
            EXIT_HODGE_MISMATCH,
            "error: harmonic dimensions differ from Betti numbers\n".to_owned(),
        ),
        None => (0, String::new()),
    };
    Outcome {
        code,
        stdout,
        stderr,
    }
}

fn curvature_failure(e: CurvatureError) -> Outcome {
    let code = match e {
        CurvatureError::Form(_) => EXIT_USAGE,
        _ => EXIT_VALIDATION,
    };
    Outcome::fail(code, format!("error: {e}"))
}

fn curvature_cmd(
    c: &CellComplex,
    format: Format,
    form: Option<&str>,
    rng: &mut SeededRng,
    color: bool,
) -> Outcome {
    let mut report = match curvature::gauss_bonnet(c) {
        Ok(r) => r,
        Err(e) => return curvature_failure(e),
    };
    if let Some(source) = form {
        let ctx = match CurvatureContext::new(c) {
            Ok(ctx) => ctx,
            Err(e) => return curvature_failure(e),
        };
        let omega = if source == "random" {
            random::one_form(c, rng)
        } else {
            let text = match read(Path::new(source)) {
                Ok(t) => t,
                Err(o) => return o,
            };
            match io::parse_one_form_json(c, &text) {
                Ok(w) => w,
                Err(e) => return ingest_failure(source, e),
            }
        };
        report.ricci = Some(RicciComparison::new(&ctx, &omega));
    }
    let stdout = match format {
        Format::Json => json_out(&serde_json::to_value(&report).expect("reports serialize")),
        Format::Csv => {
            let mut s = report.to_csv();
            if let Some(r) = &report.ricci {
                writeln!(
                    s,
                    "ricci_max_discrepancy,,{},",
                    fmt_float(r.max_discrepancy)
                )
                .unwrap();
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for cell in report.vertices.iter().chain(&report.faces) {
                writeln!(
                    s,
                    "{} degree={} g={} S={}",
                    cell.id, cell.degree, cell.g, cell.s
                )
                .unwrap();
            }
            writeln!(
                s,
                "sum g_v = {}, sum g_f = {}, chi = {}, expected {}: {}",
                report.total_g_vertices,
                report.total_g_faces,
                report.chi,
                report.expected_total,
                verdict(report.gauss_bonnet_ok, color)
            )
            .unwrap();
            if let Some(r) = &report.ricci {
                for e in &r.vectors {
                    writeln!(
                        s,
                        "ric {} definition={} closed_form={}",
                        e.vector,
                        fmt_float(e.definition),
                        fmt_float(e.closed_form)
                    )
                    .unwrap();
                }
                writeln!(
                    s,
                    "ricci max |definition - closed_form| = {}",
                    fmt_float(r.max_discrepancy)
                )
                .unwrap();
            }
            s
        }
    };
    let (code, stderr) = if report.gauss_bonnet_ok {
        (0, String::new())
    } else {
        (
            EXIT_GAUSS_BONNET,
            "error: Gauss-Bonnet identity failed\n".to_owned(),
        )
    };
    Outcome {
        code,
        stdout,
        stderr,
    }
}

/// Largest residual of each identity over the trials.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct CheckResiduals {
    pub green: f64,
    pub integral_div: f64,
    pub integral_laplacian: f64,
    pub df_x: f64,
    pub adjointness: f64,
    pub d_squared: f64,
}

impl CheckResiduals {
    pub fn named(&self) -> [(&'static str, f64); 6] {
        [
            ("green", self.green),
            ("integral_div", self.integral_div),
            ("integral_laplacian", self.integral_laplacian),
            ("df_x", self.df_x),
            ("adjointness", self.adjointness),
            ("d_squared", self.d_squared),
        ]
    }
}

fn random_form(forms: &FormComplex<'_>, d: usize, rng: &mut SeededRng) -> Form {
    let basis = forms.basis(d);
    Form::new(basis, random::values(basis.len(), rng).into()).expect("sized from basis")
}

/// Runs the identity trials; adjointness and Green residuals are relative
/// to the size of their terms.
pub fn property_residuals(c: &CellComplex, trials: usize, rng: &mut SeededRng) -> CheckResiduals {
    let forms = FormComplex::new(c);
    let mut r = CheckResiduals::default();
    for d in 0..c.dim().saturating_sub(1) {
        let product =
            forms.d_op(d + 1).expect("in range").matrix * forms.d_op(d).expect("in range").matrix;
        r.d_squared = r.d_squared.max(product.amax());
    }
    for _ in 0..trials {
        let f = random::function(c, rng);
        let x = random::vector_field(c, rng);
        let green = calculus::green_check(c, &f, &x);
        r.green = r.green.max(green.residual() / green.scale);
        r.integral_div = r
            .integral_div
            .max(calculus::integrate(&calculus::div(c, &x)).abs());
        r.integral_laplacian = r
            .integral_laplacian
            .max(calculus::integrate(&calculus::laplacian_of_function(c, &f)).abs());
        let df = calculus::derivative_of_function(c, &f);
        let lhs = calculus::pairing(c, &df, &x);
        let rhs = calculus::vf_inner_product(c, &x, &calculus::grad(c, &f));
        let pointwise = lhs
            .iter()
            .zip(rhs.iter())
            .fold(0.0, |m: f64, ((_, a), (_, b))| m.max((a - b).abs()));
        r.df_x = r.df_x.max(pointwise);
        for d in 1..=c.dim() {
            let u = random_form(&forms, d, rng);
            let v = random_form(&forms, d - 1, rng);
            let left = forms.inner(&forms.apply_dstar(&u).expect("in range"), &v);
            let right = forms.inner(&u, &forms.apply_d(&v).expect("in range"));
            r.adjointness = r
                .adjointness
                .max((left - right).abs() / right.abs().max(1.0));
        }
    }
    r
}

fn check(
    c: &CellComplex,
    format: Format,
    trials: usize,
    threshold: f64,
    rng: &mut SeededRng,
    color: bool,
) -> Outcome {
    let residuals = property_residuals(c, trials, rng);
    let named = residuals.named();
    let ok = named.iter().all(|(_, v)| *v <= threshold);
    let stdout = match format {
        Format::Text => {
            let mut s = String::new();
            for (name, value) in named {
                writeln!(
                    s,
                    "{name}: {} {}",
                    fmt_float(value),
                    verdict(value <= threshold, color)
                )
                .unwrap();
            }
            writeln!(s, "trials={trials} threshold={}", fmt_float(threshold)).unwrap();
            s
        }
        Format::Json => {
            let map: serde_json::Map<String, Value> = named
                .iter()
                .map(|(k, v)| ((*k).to_owned(), json!(v)))
                .collect();
            json_out(&json!({
                "residuals": map,
                "trials": trials,
                "threshold": threshold,
                "pass": ok,
            }))
        }
        Format::Csv => {
            let mut s = String::from("identity,max_residual,pass\n");
            for (name, value) in named {
                writeln!(s, "{name},{},{}", fmt_float(value), value <= threshold).unwrap();
            }
            s
        }
    };
    let (code, stderr) = if ok {
        (0, String::new())
    } else {
        (
            EXIT_PROPERTY_FAILURE,
            "error: residual above threshold\n".to_owned(),
        )
    };
    Outcome {
        code,
        stdout,
        stderr,
    }
}

fn export(c: &CellComplex, name: Option<String>) -> Outcome {
    Outcome {
        code: 0,
        stdout: io::to_canonical_json(&ComplexDocument::from_complex(c, name)),
        stderr: String::new(),
    }
}

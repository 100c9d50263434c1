//! Command-line interface. Every command renders a [`Doc`], a flat list of
//! named fields, either as text or as JSON with the same keys.

use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use crate::embeddings::{
    phi_fr, psi_lc, simple_embedding, theta, verify_embedding, GeneratorImages, Homomorphism,
};
use crate::error::Error;
use crate::field::Prime;
use crate::nilpotency::{size_bound_from_env, wreath_class_check};
use crate::report::VerificationReport;
use crate::roots::{qth_root_fr, qth_root_lc, verify_root, RootWitness};
use crate::text::{format_rows, parse_matrices, parse_matrix, parse_wreath};
use crate::unitriangular::UTMatrix;
use crate::wreath::{
    build_wreath_embedding, equiv_check, matrix_identities, verify_wreath_conditions, wr_mul, Tau,
    WreathElement,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

pub const DEFAULT_SEED: u64 = 20240601;

#[derive(Debug, Parser)]
#[command(
    name = "utroots",
    version,
    about = "Root-adjoining embeddings of unitriangular groups over F_p"
)]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Simple,
    Fr,
    Lc,
    Theta,
    /// Generator images read from `--images`.
    Custom,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Variant {
    Fr,
    Lc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    #[value(alias = "lemma42")]
    Identities,
    Equiv,
    Embeddings,
    Roots,
    Wreath,
}

#[derive(Debug, Args)]
pub struct Params {
    #[arg(short, default_value_t = 3)]
    pub n: usize,
    #[arg(short, default_value_t = 2)]
    pub p: u32,
    #[arg(short, default_value_t = 1)]
    pub s: u32,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the generator images of an embedding and check it.
    Embed {
        #[arg(long, value_enum)]
        kind: Kind,
        #[command(flatten)]
        params: Params,
        /// Comma-separated breakpoints `1 = k_1 < ... < k_n` for the simple kind.
        #[arg(long, value_delimiter = ',')]
        breakpoints: Option<Vec<usize>>,
        /// File with the `n - 1` images of `t_{k,k+1}` for the custom kind.
        #[arg(long)]
        images: Option<PathBuf>,
        /// Matrix file (`-` for stdin) whose image is printed.
        #[arg(long)]
        apply: Option<PathBuf>,
    },
    /// Solve `x^q = image(a)` for the matrix in FILE.
    Root {
        #[arg(long, value_enum, default_value_t = Variant::Fr)]
        variant: Variant,
        #[arg(short, default_value_t = 1)]
        s: u32,
        file: PathBuf,
    },
    /// Print the wreath product embedding data and check its conditions.
    Wreath {
        #[command(flatten)]
        params: Params,
        /// Wreath element file: the shift on one line, then `q` matrices.
        #[arg(long)]
        element: Option<PathBuf>,
    },
    /// Compare three computations of the class of `UT_n wr C_q`.
    Class {
        #[command(flatten)]
        params: Params,
        /// Largest group enumerated by brute force (default from UTROOTS_SIZE_BOUND, else 10^6).
        #[arg(long)]
        size_bound: Option<usize>,
    },
    /// Run a verification suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[command(flatten)]
        params: Params,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
}

enum Field {
    Text(String),
    Int(u64),
    Matrix(UTMatrix),
    Matrices(Vec<UTMatrix>),
    Report(VerificationReport),
    Table(Vec<String>, Vec<Vec<u64>>),
}

/// Output of a command, rendered identically in both formats.
#[derive(Default)]
pub struct Doc {
    fields: Vec<(String, Field)>,
    failed: bool,
}

impl Doc {
    fn text(&mut self, k: &str, v: impl Into<String>) {
        self.fields.push((k.into(), Field::Text(v.into())));
    }

    fn int(&mut self, k: &str, v: u64) {
        self.fields.push((k.into(), Field::Int(v)));
    }

    fn matrix(&mut self, k: &str, a: &UTMatrix) {
        self.fields.push((k.into(), Field::Matrix(a.clone())));
    }

    fn matrices(&mut self, k: &str, a: Vec<UTMatrix>) {
        self.fields.push((k.into(), Field::Matrices(a)));
    }

    fn report(&mut self, k: &str, r: VerificationReport) {
        self.failed |= !r.passed();
        self.fields.push((k.into(), Field::Report(r)));
    }

    pub fn passed(&self) -> bool {
        !self.failed
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.fields {
            match v {
                Field::Text(s) => out.push_str(&format!("{k}: {s}\n")),
                Field::Int(x) => out.push_str(&format!("{k}: {x}\n")),
                Field::Matrix(a) => {
                    out.push_str(&format!("{k}:\n"));
                    out.push_str(&format_rows(a));
                }
                Field::Matrices(list) => {
                    for (i, a) in list.iter().enumerate() {
                        out.push_str(&format!("{k}[{}]:\n", i + 1));
                        out.push_str(&format_rows(a));
                    }
                }
                Field::Report(r) => {
                    out.push_str(&format!("{k}:\n"));
                    for line in r.to_string().lines() {
                        out.push_str(&format!("  {line}\n"));
                    }
                }
                Field::Table(head, rows) => {
                    out.push_str(&format!("{k}:\n  {}\n", head.join(" ")));
                    for r in rows {
                        let cells: Vec<String> = r.iter().map(u64::to_string).collect();
                        out.push_str(&format!("  {}\n", cells.join(" ")));
                    }
                }
            }
        }
        out
    }

    pub fn render_json(&self) -> String {
        let mut map = Map::new();
        for (k, v) in &self.fields {
            let value = match v {
                Field::Text(s) => json!(s),
                Field::Int(x) => json!(x),
                Field::Matrix(a) => json!(a.rows()),
                Field::Matrices(list) => json!(list.iter().map(UTMatrix::rows).collect::<Vec<_>>()),
                Field::Report(r) => serde_json::to_value(r).expect("report serializes"),
                Field::Table(head, rows) => Value::Array(
                    rows.iter()
                        .map(|r| {
                            Value::Object(
                                head.iter()
                                    .cloned()
                                    .zip(r.iter().map(|x| json!(x)))
                                    .collect(),
                            )
                        })
                        .collect(),
                ),
            };
            map.insert(k.clone(), value);
        }
        let mut s = serde_json::to_string(&Value::Object(map)).expect("json serializes");
        s.push('\n');
        s
    }
}

fn read_input(path: &Path) -> Result<String, Error> {
    let mut buf = String::new();
    let res = if path == Path::new("-") {
        io::stdin().read_to_string(&mut buf).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|s| buf = s)
    };
    res.map_err(|e| Error::InvalidParameter(format!("{}: {e}", path.display())))?;
    Ok(buf)
}

fn prefix_path(path: &Path, e: Error) -> Error {
    match e {
        Error::Parse { line, msg } => {
            Error::InvalidParameter(format!("{}:{line}: {msg}", path.display()))
        }
        other => other,
    }
}

fn prime(p: u32) -> Result<Prime, Error> {
    Prime::new(p)
}

fn check_params(params: &Params) -> Result<Prime, Error> {
    if params.n < 2 {
        return Err(Error::InvalidParameter(format!(
            "n = {} must be at least 2",
            params.n
        )));
    }
    if params.s < 1 {
        return Err(Error::InvalidParameter("s must be at least 1".into()));
    }
    prime(params.p)
}

struct EmbedSource<'a> {
    breakpoints: Option<&'a [usize]>,
    images: Option<&'a Path>,
}

fn embedding_for(
    kind: Kind,
    params: &Params,
    src: EmbedSource<'_>,
) -> Result<GeneratorImages, Error> {
    let p = check_params(params)?;
    let (n, s) = (params.n, params.s);
    match kind {
        Kind::Simple => {
            let bp = src.breakpoints.ok_or_else(|| {
                Error::InvalidBreakpoints("--breakpoints is required for the simple kind".into())
            })?;
            simple_embedding(n, p, bp)
        }
        Kind::Fr => phi_fr(n, p, s),
        Kind::Lc => psi_lc(n, p, s),
        Kind::Theta => theta(n, p, s),
        Kind::Custom => {
            let path = src.images.ok_or_else(|| {
                Error::InvalidParameter("--images is required for the custom kind".into())
            })?;
            let images = parse_matrices(&read_input(path)?).map_err(|e| prefix_path(path, e))?;
            if images.iter().any(|g| g.p() != p) {
                return Err(Error::InvalidParameter(format!(
                    "{}: images must lie over F_{p}",
                    path.display()
                )));
            }
            GeneratorImages::custom(n, images)
        }
    }
}

fn cmd_embed(
    kind: Kind,
    params: &Params,
    src: EmbedSource<'_>,
    apply: Option<&Path>,
) -> Result<Doc, Error> {
    let images = embedding_for(kind, params, src)?;
    let mut doc = Doc::default();
    doc.text("kind", images.kind.name());
    doc.int("n", images.source_n as u64);
    doc.int("m", images.target_m as u64);
    doc.int("p", images.p.get() as u64);
    doc.matrices("generator", images.images.clone());
    if let Some(path) = apply {
        let a = parse_matrix(&read_input(path)?).map_err(|e| prefix_path(path, e))?;
        if a.n() != images.source_n || a.p() != images.p {
            return Err(Error::InvalidParameter(format!(
                "{}: expected a matrix in UT_{}(F_{}), got UT_{}(F_{})",
                path.display(),
                images.source_n,
                images.p,
                a.n(),
                a.p()
            )));
        }
        doc.matrix("input", &a);
        doc.matrix("image", &Homomorphism::new(&images).apply(&a)?);
    }
    doc.report("verification", verify_embedding(&images));
    Ok(doc)
}

fn root_doc(doc: &mut Doc, w: &RootWitness) {
    doc.int("m", w.x.n() as u64);
    doc.int("q", w.q);
    doc.matrix("target", &w.target_image);
    doc.matrix("x", &w.x);
    doc.matrices("factor", w.factors.clone());
}

fn cmd_root(variant: Variant, s: u32, path: &Path) -> Result<Doc, Error> {
    let a = parse_matrix(&read_input(path)?).map_err(|e| prefix_path(path, e))?;
    if a.n() < 2 {
        return Err(Error::InvalidParameter(
            "matrix dimension must be at least 2".into(),
        ));
    }
    let w = match variant {
        Variant::Fr => qth_root_fr(&a, s)?,
        Variant::Lc => qth_root_lc(&a, s)?,
    };
    let mut doc = Doc::default();
    doc.text("variant", w.embedding.kind.name());
    doc.int("n", a.n() as u64);
    doc.int("p", a.p().get() as u64);
    doc.int("s", s as u64);
    root_doc(&mut doc, &w);
    doc.report("verification", verify_root(&w));
    Ok(doc)
}

fn cmd_wreath(params: &Params, element: Option<&Path>) -> Result<Doc, Error> {
    let p = check_params(params)?;
    let data = build_wreath_embedding(params.n, p, params.s)?;
    let mut doc = Doc::default();
    doc.int("n", data.n as u64);
    doc.int("p", p.get() as u64);
    doc.int("s", data.s as u64);
    doc.int("q", data.q as u64);
    doc.int("m", data.m as u64);
    doc.matrix("c", &data.c);
    for (i, fam) in data.g.iter().enumerate() {
        doc.matrices(&format!("g{}", i + 1), fam.clone());
    }
    doc.matrices("z", data.z.clone());
    doc.report("conditions", verify_wreath_conditions(&data));
    if let Some(path) = element {
        let w = parse_wreath(&read_input(path)?).map_err(|e| prefix_path(path, e))?;
        if w.q() != data.q || w.n() != data.n || w.p() != p {
            return Err(Error::InvalidParameter(format!(
                "{}: expected {} matrices in UT_{}(F_{})",
                path.display(),
                data.q,
                data.n,
                p
            )));
        }
        doc.matrix("tau", &Tau::new(&data).apply(&w)?);
    }
    Ok(doc)
}

fn cmd_class(params: &Params, size_bound: Option<usize>) -> Result<Doc, Error> {
    let p = check_params(params)?;
    let bound = size_bound.unwrap_or_else(size_bound_from_env);
    let r = wreath_class_check(params.n, p, params.s, bound)?;
    let mut doc = Doc::default();
    doc.int("n", r.n as u64);
    doc.int("p", r.p as u64);
    doc.int("s", r.s as u64);
    doc.int("q", r.q);
    doc.text(
        "group_order",
        r.group_order.map_or("overflow".into(), |o| o.to_string()),
    );
    doc.fields.push((
        "terms".into(),
        Field::Table(
            vec!["w".into(), "s_w".into(), "value".into()],
            r.terms
                .iter()
                .map(|t| vec![t.w as u64, t.s_w as u64, t.value])
                .collect(),
        ),
    ));
    doc.int("maximizer", r.maximizer as u64);
    doc.text("legs", "formula = shield = brute_force");
    doc.text("class", r.to_string());
    let mut report = VerificationReport::default();
    report.record(
        "agreement",
        (!r.agrees()).then(|| crate::report::Witness::new(format!("legs disagree: {r}"))),
    );
    doc.report("verdict", report);
    Ok(doc)
}

fn cmd_verify(suite: Suite, params: &Params, seed: u64, samples: usize) -> Result<Doc, Error> {
    let p = check_params(params)?;
    let (n, s) = (params.n, params.s);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut doc = Doc::default();
    doc.text("suite", format!("{suite:?}").to_lowercase());
    doc.int("seed", seed);
    match suite {
        Suite::Identities => {
            let (cm, report) = matrix_identities(p, s)?;
            doc.int("q", cm.q as u64);
            doc.report("identities", report);
        }
        Suite::Equiv => {
            doc.report("equiv", equiv_check(n, p, s, samples, &mut rng)?);
        }
        Suite::Embeddings => {
            for (name, kind) in [("fr", Kind::Fr), ("lc", Kind::Lc), ("theta", Kind::Theta)] {
                let src = EmbedSource {
                    breakpoints: None,
                    images: None,
                };
                doc.report(name, verify_embedding(&embedding_for(kind, params, src)?));
            }
        }
        Suite::Roots => {
            let (mut fr, mut lc) = (None, None);
            for k in 0..samples {
                let a = UTMatrix::random(n, p, &mut rng);
                for (slot, w) in [
                    (&mut fr, qth_root_fr(&a, s)?),
                    (&mut lc, qth_root_lc(&a, s)?),
                ] {
                    if slot.is_none() {
                        *slot = verify_root(&w).first_failure().map(|f| {
                            let mut wit = f.witness.clone().expect("failures carry witnesses");
                            wit.description = format!("sample {k}: {}", wit.description);
                            wit
                        });
                    }
                }
            }
            let mut report = VerificationReport::default();
            report.record("fr", fr);
            report.record("lc", lc);
            doc.report("roots", report);
        }
        Suite::Wreath => {
            let data = build_wreath_embedding(n, p, s)?;
            doc.report("conditions", verify_wreath_conditions(&data));
            let tau = Tau::new(&data);
            let mut report = VerificationReport::default();
            let mut failure = None;
            for _ in 0..samples {
                let x = WreathElement::random(n, p, data.q, &mut rng);
                let y = WreathElement::random(n, p, data.q, &mut rng);
                let lhs = tau.apply(&wr_mul(&x, &y)?)?;
                let rhs = &tau.apply(&x)? * &tau.apply(&y)?;
                if lhs != rhs {
                    failure = Some(crate::report::Witness::mismatch(
                        "tau(xy) != tau(x) tau(y)",
                        &lhs,
                        &rhs,
                    ));
                    break;
                }
            }
            report.record("tau_homomorphism", failure);
            doc.report("homomorphism", report);
        }
    }
    Ok(doc)
}

pub fn execute(cli: &Cli) -> Result<Doc, Error> {
    match &cli.command {
        Command::Embed {
            kind,
            params,
            breakpoints,
            images,
            apply,
        } => {
            let src = EmbedSource {
                breakpoints: breakpoints.as_deref(),
                images: images.as_deref(),
            };
            cmd_embed(*kind, params, src, apply.as_deref())
        }
        Command::Root { variant, s, file } => cmd_root(*variant, *s, file),
        Command::Wreath { params, element } => cmd_wreath(params, element.as_deref()),
        Command::Class { params, size_bound } => cmd_class(params, *size_bound),
        Command::Verify {
            suite,
            params,
            seed,
            samples,
        } => cmd_verify(*suite, params, *seed, *samples),
    }
}

/// Runs the CLI and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    match execute(&cli) {
        Ok(doc) => {
            let text = match cli.format {
                Format::Text => doc.render_text(),
                Format::Json => doc.render_json(),
            };
            let _ = out.write_all(text.as_bytes());
            if doc.passed() {
                EXIT_OK
            } else {
                let _ = writeln!(err, "error: verification failed");
                EXIT_VERIFY
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
    }
}

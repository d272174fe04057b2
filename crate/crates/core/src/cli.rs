//! The `frobmod` command-line tool.
//!
//! Exit codes: 0 success, 2 a verified negative answer (for example a
//! module that is not simple), 1 any error. Errors are printed as
//! `error[<code>]: <message>` on standard error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::thread;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::arith::{FpPoly, GaloisField, Ring};
use crate::certify;
use crate::config::Config;
use crate::error::{Error, Result};
use crate::io::{parse_document, AnyDocument, Document};
use crate::matrix;
use crate::stable::{self, Subspace};
use crate::submodule;
use crate::with_document;

#[derive(Debug, Parser)]
#[command(name = "frobmod", version, about = "Exact algebra of Frobenius-semilinear maps")]
pub struct Cli {
    /// Emit one JSON record per input instead of text.
    #[arg(long, global = true)]
    pub machine: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Structure matrix A_r of F^r.
    Power(Inputs),
    /// Matrix of F^r in the basis given by the `basis` line.
    Basechange(Inputs),
    /// Vectors fixed by F^r.
    Fixed(Inputs),
    /// All F^r-stable subspaces.
    Subspaces(Inputs),
    /// Whether the module is simple under F^r.
    Simple(Inputs),
    /// A composition series under F^r.
    Series(Inputs),
    /// Geometric length and the extension degree that realises it.
    Geomlength(Inputs),
    /// Preimage under F^r of the subspace spanned by the `column` lines.
    Descent(Inputs),
    /// Root generated by the `column` lines over F_p[x].
    Root(Inputs),
    /// Simplicity certificates for A = [[0, 1], [1, x]].
    Certify(CertifyArgs),
    /// Fixed vector after adjoining a root of t^(p^2) + x t^p - t.
    Adjoined(AdjoinedArgs),
}

#[derive(Debug, Clone, Args)]
pub struct Inputs {
    /// Module description files.
    #[arg(required = true)]
    pub paths: Vec<PathBuf>,
    /// Process several inputs concurrently.
    #[arg(long)]
    pub batch: bool,
    /// Frobenius power.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    pub r: u32,
    /// Largest extension degree tried by geomlength.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub s_max: Option<u32>,
    /// Largest Frobenius step tried by root.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub m_max: Option<u32>,
    /// Largest number of candidate subspaces to enumerate.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub cap: Option<u64>,
}

#[derive(Debug, Clone, Args)]
pub struct CertifyArgs {
    #[arg(long, default_value_t = 3)]
    pub p: u64,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    pub e: u32,
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(1..))]
    pub rmax: u32,
}

#[derive(Debug, Clone, Args)]
pub struct AdjoinedArgs {
    #[arg(long, default_value_t = 2)]
    pub p: u64,
}

/// Result of one operation.
#[derive(Debug, Clone)]
pub struct Report {
    pub text: String,
    pub record: Value,
    /// The operation succeeded but the answer is negative.
    pub negative: bool,
}

impl Report {
    fn new(text: String, record: Value) -> Self {
        Report {
            text,
            record,
            negative: false,
        }
    }

    fn negative_if(mut self, negative: bool) -> Self {
        self.negative = negative;
        self
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{rendered}")
            } else {
                write!(out, "{rendered}")
            };
            return code;
        }
    };
    execute(&cli, out, err)
}

pub fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let results: Vec<(Option<&Path>, Result<Report>)> = match &cli.command {
        Command::Certify(a) => vec![(None, certify_report(a))],
        Command::Adjoined(a) => vec![(None, adjoined_report(a.p))],
        other => {
            let inputs = inputs_of(other);
            if inputs.paths.len() > 1 && !inputs.batch {
                vec![(
                    None,
                    Err(Error::InvalidArgument("several inputs need --batch".into())),
                )]
            } else {
                run_inputs(other, inputs)
            }
        }
    };
    let batch = results.len() > 1;
    let mut status = 0;
    for (path, result) in results {
        let label = path.map(|p| p.display().to_string());
        match result {
            Ok(report) => {
                if report.negative && status == 0 {
                    status = 2;
                }
                if cli.machine {
                    let mut record = json!({ "negative": report.negative, "result": report.record });
                    if let Some(l) = &label {
                        record["input"] = json!(l);
                    }
                    let _ = writeln!(out, "{record}");
                } else {
                    if batch {
                        let _ = writeln!(out, "== {} ==", label.as_deref().unwrap_or("-"));
                    }
                    let _ = write!(out, "{}", report.text);
                }
            }
            Err(e) => {
                status = 1;
                let prefix = label.as_ref().map(|l| format!("{l}: ")).unwrap_or_default();
                let _ = writeln!(err, "{prefix}error[{}]: {e}", e.code());
                if cli.machine {
                    let mut record = json!({ "error": { "code": e.code(), "message": e.to_string() } });
                    if let Some(l) = &label {
                        record["input"] = json!(l);
                    }
                    let _ = writeln!(out, "{record}");
                }
            }
        }
    }
    status
}

fn inputs_of(command: &Command) -> &Inputs {
    match command {
        Command::Power(i)
        | Command::Basechange(i)
        | Command::Fixed(i)
        | Command::Subspaces(i)
        | Command::Simple(i)
        | Command::Series(i)
        | Command::Geomlength(i)
        | Command::Descent(i)
        | Command::Root(i) => i,
        Command::Certify(_) | Command::Adjoined(_) => unreachable!("no input files"),
    }
}

fn config(inputs: &Inputs) -> Config {
    let d = Config::default();
    Config {
        s_max: inputs.s_max.unwrap_or(d.s_max),
        m_max: inputs.m_max.unwrap_or(d.m_max),
        enumeration_cap: inputs.cap.map(u128::from).unwrap_or(d.enumeration_cap),
        ..d
    }
}

fn run_inputs<'a>(command: &Command, inputs: &'a Inputs) -> Vec<(Option<&'a Path>, Result<Report>)> {
    let cfg = config(inputs);
    if inputs.paths.len() == 1 {
        let path = &inputs.paths[0];
        return vec![(Some(path.as_path()), run_file(command, path, inputs.r, &cfg))];
    }
    thread::scope(|scope| {
        let handles: Vec<_> = inputs
            .paths
            .iter()
            .map(|path| {
                let cfg = &cfg;
                scope.spawn(move || run_file(command, path, inputs.r, cfg))
            })
            .collect();
        inputs
            .paths
            .iter()
            .zip(handles)
            .map(|(path, h)| {
                let result = h
                    .join()
                    .unwrap_or_else(|_| Err(Error::Validation("worker thread panicked".into())));
                (Some(path.as_path()), result)
            })
            .collect()
    })
}

fn run_file(command: &Command, path: &Path, r: u32, cfg: &Config) -> Result<Report> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
    let doc = parse_document(&text)?;
    cfg.check_power(r)?;
    match command {
        Command::Power(_) => with_document!(&doc, d => power(d, r)),
        Command::Basechange(_) => with_document!(&doc, d => basechange(d, r)),
        Command::Fixed(_) => match &doc {
            AnyDocument::Galois(d) => fixed(d, r),
            other => with_document!(other, d => fixed_columns(d, r)),
        },
        Command::Subspaces(_) => subspaces(finite(&doc)?, r, cfg),
        Command::Simple(_) => simple(finite(&doc)?, r, cfg),
        Command::Series(_) => series(finite(&doc)?, r, cfg),
        Command::Geomlength(_) => geomlength(finite(&doc)?, cfg),
        Command::Descent(_) => descent(finite(&doc)?, r),
        Command::Root(_) => match &doc {
            AnyDocument::Poly(d) => root(d, cfg),
            other => Err(Error::UnsupportedRing(format!(
                "root needs F_p[x], got {}",
                other.descriptor()
            ))),
        },
        Command::Certify(_) | Command::Adjoined(_) => unreachable!("no input files"),
    }
}

fn finite(doc: &AnyDocument) -> Result<&Document<GaloisField>> {
    match doc {
        AnyDocument::Galois(d) => Ok(d),
        other => Err(Error::UnsupportedRing(format!(
            "this operation needs a finite field, got {}",
            other.descriptor()
        ))),
    }
}

fn render_vector<R: Ring>(ring: &R, v: &[R::Elem]) -> String {
    let parts: Vec<String> = v.iter().map(|x| ring.render(x)).collect();
    format!("({})", parts.join(", "))
}

fn vector_record<R: Ring>(ring: &R, v: &[R::Elem]) -> Vec<String> {
    v.iter().map(|x| ring.render(x)).collect()
}

fn subspace_text(field: &GaloisField, w: &Subspace) -> String {
    if w.dim() == 0 {
        return "0".into();
    }
    let vs: Vec<String> = w.basis().iter().map(|v| render_vector(field, v)).collect();
    format!("span{{{}}}", vs.join(", "))
}

fn power<R: Ring>(doc: &Document<R>, r: u32) -> Result<Report> {
    let module = &doc.module;
    let ring = module.ring();
    let ar = module.power_matrix(r)?.matrix;
    let det = matrix::det(ring, &ar)?;
    let unit = ring.is_unit(&det);
    let text = format!(
        "ring: {}\ne: {}\nr: {r}\nA_{r} = [{}]\ndet A_{r} = {}\nunit: {unit}\n",
        ring.descriptor(),
        module.e(),
        matrix::render(ring, &ar),
        ring.render(&det),
    );
    let record = json!({
        "ring": ring.descriptor().to_string(),
        "e": module.e(),
        "r": r,
        "matrix": matrix::render_entries(ring, &ar),
        "det": ring.render(&det),
        "unit": unit,
    });
    Ok(Report::new(text, record))
}

fn basechange<R: Ring>(doc: &Document<R>, r: u32) -> Result<Report> {
    let c = doc
        .basis
        .as_ref()
        .ok_or_else(|| Error::InvalidArgument("basechange needs a `basis` line".into()))?;
    let ring = doc.module.ring();
    let b = doc.module.change_basis(c, r)?;
    let text = format!("r: {r}\nB = [{}]\n", matrix::render(ring, &b));
    Ok(Report::new(text, json!({ "r": r, "matrix": matrix::render_entries(ring, &b) })))
}

fn fixed(doc: &Document<GaloisField>, r: u32) -> Result<Report> {
    let field = doc.module.ring();
    let fs = stable::fixed_points(&doc.module, r)?;
    let mut text = format!(
        "fixed vectors of F^{r}: {}\nF_p-dimension: {}\nfixed subfield degree: {}\nspan rank: {}\nF_p-basis:\n",
        fs.count,
        fs.fp_basis.len(),
        fs.subfield_degree,
        fs.span_rank(field, doc.module.n()),
    );
    for v in &fs.fp_basis {
        text.push_str(&format!("  {}\n", render_vector(field, v)));
    }
    let record = json!({
        "r": r,
        "count": fs.count.to_string(),
        "fp_dimension": fs.fp_basis.len(),
        "subfield_degree": fs.subfield_degree,
        "fp_basis": fs.fp_basis.iter().map(|v| vector_record(field, v)).collect::<Vec<_>>(),
    });
    Ok(Report::new(text, record))
}

/// Over rings without a fixed-point solver, checks the given columns.
fn fixed_columns<R: Ring>(doc: &Document<R>, r: u32) -> Result<Report> {
    if doc.columns.is_empty() {
        return Err(Error::UnsupportedRing(format!(
            "fixed points need a finite field or `column` lines to check, got {}",
            doc.module.ring().descriptor()
        )));
    }
    let ring = doc.module.ring();
    let mut text = String::new();
    let mut flags = Vec::new();
    for (i, v) in doc.columns.iter().enumerate() {
        let fixed = doc.module.apply(v, r)? == *v;
        flags.push(fixed);
        text.push_str(&format!("column {}: {} fixed: {fixed}\n", i + 1, render_vector(ring, v)));
    }
    let all = flags.iter().all(|&b| b);
    Ok(Report::new(text, json!({ "r": r, "fixed": flags })).negative_if(!all))
}

fn subspaces(doc: &Document<GaloisField>, r: u32, cfg: &Config) -> Result<Report> {
    let field = doc.module.ring();
    let list = stable::enumerate_stable_subspaces(&doc.module, r, cfg)?;
    let mut text = format!("F^{r}-stable subspaces: {}\n", list.len());
    for w in &list {
        text.push_str(&format!("  dim {}: {}\n", w.dim(), subspace_text(field, w)));
    }
    let record = json!({ "r": r, "count": list.len(), "subspaces": list.iter().map(|w| w.render(field)).collect::<Vec<_>>() });
    Ok(Report::new(text, record))
}

fn simple(doc: &Document<GaloisField>, r: u32, cfg: &Config) -> Result<Report> {
    let simple = stable::is_simple(&doc.module, r, cfg)?;
    Ok(Report::new(format!("simple: {simple}\n"), json!({ "r": r, "simple": simple })).negative_if(!simple))
}

fn series(doc: &Document<GaloisField>, r: u32, cfg: &Config) -> Result<Report> {
    let field = doc.module.ring();
    let cs = stable::composition_series(&doc.module, r, cfg)?;
    let mut text = format!("length: {}\nchain:\n", cs.length);
    for w in &cs.chain {
        text.push_str(&format!("  dim {}: {}\n", w.dim(), subspace_text(field, w)));
    }
    text.push_str("quotients:\n");
    for q in &cs.quotients {
        text.push_str(&format!("  [{}]\n", matrix::render(field, q)));
    }
    let record = json!({
        "r": r,
        "length": cs.length,
        "chain": cs.chain.iter().map(|w| w.render(field)).collect::<Vec<_>>(),
        "quotients": cs.quotients.iter().map(|q| matrix::render_entries(field, q)).collect::<Vec<_>>(),
    });
    Ok(Report::new(text, record))
}

fn geomlength(doc: &Document<GaloisField>, cfg: &Config) -> Result<Report> {
    let g = stable::geometric_length(&doc.module, cfg)?;
    let degree = doc.module.ring().degree() as u32 * g.s;
    let text = format!(
        "geometric length: {}\nextension degree s: {}\nreached over: F_{}^{degree}\n",
        g.length,
        g.s,
        doc.module.ring().p()
    );
    Ok(Report::new(text, json!({ "length": g.length, "s": g.s, "field_degree": degree })))
}

fn descent(doc: &Document<GaloisField>, r: u32) -> Result<Report> {
    let field = doc.module.ring();
    let target = Subspace::span(field, doc.module.n(), &doc.columns)?;
    let pre = stable::descent_preimage(&doc.module, &target, r)?;
    let text = format!(
        "target: {}\npreimage under F^{r}: {}\n",
        subspace_text(field, &target),
        subspace_text(field, &pre)
    );
    let record = json!({ "r": r, "target": target.render(field), "preimage": pre.render(field) });
    Ok(Report::new(text, record))
}

fn root(doc: &Document<crate::arith::PolyRing>, cfg: &Config) -> Result<Report> {
    if doc.columns.is_empty() {
        return Err(Error::InvalidArgument("root needs at least one `column` line".into()));
    }
    let gens: Vec<Vec<FpPoly>> = doc.columns.clone();
    let report = submodule::root_from_generators(&doc.module, &gens, cfg)?;
    let mut text = format!(
        "m used: {}\nverified: {}\nchain steps checked: {}\nrank: {}\nroot columns:\n",
        report.m_used,
        report.verified,
        report.chain_steps,
        report.root.rank()
    );
    for col in report.root.render() {
        text.push_str(&format!("  ({})\n", col.join(", ")));
    }
    let negative = !report.verified;
    Ok(Report::new(text, json!(report.record())).negative_if(negative))
}

fn certify_report(a: &CertifyArgs) -> Result<Report> {
    let certs = certify::simplicity_certificate(a.p, a.e, a.rmax)?;
    let all = certs.iter().all(|c| c.verdict);
    let mut text = String::new();
    for c in &certs {
        text.push_str(&c.transcript());
    }
    text.push_str(&format!("certificates: {}\nall verdicts: {all}\n", certs.len()));
    let record = json!({
        "p": a.p,
        "e": a.e,
        "certificates": certs.iter().map(|c| c.record()).collect::<Vec<_>>(),
        "all_verdicts": all,
    });
    Ok(Report::new(text, record).negative_if(!all))
}

fn adjoined_report(p: u64) -> Result<Report> {
    let rep = certify::adjoined_root_check(p)?;
    let text = format!(
        "ring: F_{p}(x)[t]/({})\nF(alpha^p, alpha) = (alpha^p, alpha): {}\nF(1, 0) = (1, 0): {}\nnot simple: {}\n",
        rep.modulus, rep.fixed, rep.basis_vector_fixed, rep.not_simple
    );
    let passed = rep.passed();
    Ok(Report::new(text, json!(rep)).negative_if(!passed))
}

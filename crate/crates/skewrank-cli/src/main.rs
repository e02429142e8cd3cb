//! Command line front end: tensor I/O, classification, decomposition,
//! apolarity queries, the normal-form catalog, sampling, and verification.
//!
//! Reports are line-oriented `key: value` pairs in a fixed documented
//! order (dimensions before bases, bases in lex mask order), or a JSON
//! object with the same keys under
//! `--format json`. Exit codes: 0 ok, 2 parse error, 3 unsupported
//! dimension, 4 exact decomposition unavailable, 5 internal invariant
//! violation (1 is reserved for a failed verification).

mod tensorfile;

use clap::{Parser, Subcommand};
use skewrank::apolarity::{annihilator, essential_space, point_ideal};
use skewrank::atlas::classify::{classify, Classification};
use skewrank::atlas::invariants::{
    derive_signature_table, format_signature_table, SIGNATURE8_DATA,
};
use skewrank::atlas::{
    normal_form, orbit_sample, standard_decomposition, verify_decomposition, Decomposition,
    OrbitLabel, Term,
};
use skewrank::exterior::{bits_of, catalecticant, subsets_lex, Multivector};
use skewrank::grassmann::is_decomposable;
use std::path::{Path, PathBuf};
use std::process::exit;

#[derive(Parser)]
#[command(name = "skewrank", version, about = "Exact skew-symmetric tensor apolarity and trivector rank")]
struct Cli {
    /// Seed for every randomized step (sampling, line search, conic search)
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Residual bound accepted for numeric decompositions
    #[arg(long, global = true, default_value_t = 1e-9)]
    tolerance: f64,
    /// Output mode: text or json
    #[arg(long, global = true, default_value = "text")]
    format: String,
    /// Thread count for batch classification
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Orbit label, rank, and essential dimension of trivector files
    Classify { files: Vec<PathBuf> },
    /// Minimal decomposition into rank-one terms, written as tensor files
    Decompose {
        file: PathBuf,
        /// Directory for the term files (default: alongside the input)
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Matrix of the contraction map in degree s
    Catalecticant {
        file: PathBuf,
        #[arg(long)]
        s: u8,
    },
    /// Graded annihilator dimensions and bases
    Annihilator { file: PathBuf },
    /// Basis of the smallest subspace whose exterior power contains the tensor
    Essential { file: PathBuf },
    /// Apolar ideal of a set of rank-one points
    Ideal {
        #[arg(long, num_args = 1.., required = true)]
        points: Vec<PathBuf>,
        #[arg(long)]
        max_degree: Option<u8>,
        /// Optional tensor checked for apolarity against the ideal
        #[arg(long)]
        tensor: Option<PathBuf>,
    },
    /// Print the normal form of an orbit as a tensor file
    NormalForm {
        #[arg(long)]
        label: String,
    },
    /// Seeded random GL-translate of a normal form
    Sample {
        #[arg(long)]
        label: String,
    },
    /// Normal form plus its tabulated decomposition, written as tensor files
    StandardDecomposition {
        #[arg(long)]
        label: String,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
    /// Check that term files are decomposable and sum to the tensor
    Verify {
        #[arg(long)]
        tensor: PathBuf,
        #[arg(long, num_args = 1.., required = true)]
        terms: Vec<PathBuf>,
    },
    /// Print the eight-variable signature table (--rebuild recomputes it)
    SignatureTable {
        #[arg(long)]
        rebuild: bool,
    },
}

const EXIT_PARSE: i32 = 2;
const EXIT_DIM: i32 = 3;
const EXIT_NO_EXACT: i32 = 4;
const EXIT_INTERNAL: i32 = 5;

fn die(code: i32, msg: &str) -> ! {
    eprintln!("error: {msg}");
    exit(code);
}

fn classify_error_code(msg: &str) -> i32 {
    if msg.contains("outside the classified range") {
        EXIT_DIM
    } else if msg.contains("zero tensor") || msg.contains("expects a degree-3") {
        EXIT_PARSE
    } else {
        EXIT_INTERNAL
    }
}

fn read_tensor(path: &Path) -> Multivector {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => die(EXIT_PARSE, &format!("{}: {e}", path.display())),
    };
    match tensorfile::parse_tensor(&text) {
        Ok(t) => t,
        Err(e) => die(EXIT_PARSE, &format!("{}: {e}", path.display())),
    }
}

struct Report(Vec<(String, String)>);

impl Report {
    fn new() -> Self {
        Report(Vec::new())
    }
    fn push(&mut self, key: &str, value: impl ToString) {
        self.0.push((key.to_string(), value.to_string()));
    }
    fn render(self, json: bool) -> String {
        if json {
            let map: serde_json::Map<String, serde_json::Value> = self
                .0
                .into_iter()
                .map(|(k, v)| (k, serde_json::Value::String(v)))
                .collect();
            serde_json::to_string_pretty(&serde_json::Value::Object(map)).unwrap()
        } else {
            self.0
                .into_iter()
                .map(|(k, v)| format!("{k}: {v}"))
                .collect::<Vec<_>>()
                .join("\n")
        }
    }
}

fn fmt_indices(mask: u16) -> String {
    let ix: Vec<String> = bits_of(mask).iter().map(|i| i.to_string()).collect();
    format!("[{}]", ix.join(","))
}

fn fmt_multivector(m: &Multivector) -> String {
    if m.is_zero() {
        return "0".to_string();
    }
    m.coeffs
        .iter()
        .map(|(mask, c)| format!("{} {}", c, fmt_indices(*mask)))
        .collect::<Vec<_>>()
        .join(" + ")
}

fn fmt_row(row: &[skewrank::scalar::Scalar]) -> String {
    row.iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn classification_report(c: &Classification, rep: &mut Report) {
    rep.push("essential_dim", c.essential_dim);
    let names: Vec<&str> = c.labels.iter().map(|l| l.name()).collect();
    rep.push("label", names.join("|"));
    rep.push("rank", c.rank);
    if let Some(dec) = &c.decomposition {
        rep.push("decomposition", if dec.is_exact() { "exact" } else { "numeric" });
    }
}

fn parse_label(s: &str) -> OrbitLabel {
    match OrbitLabel::from_name(s) {
        Some(l) => l,
        None => die(EXIT_PARSE, &format!("unknown orbit label {s:?}")),
    }
}

fn signature_of(t: &Multivector) -> Option<[usize; 6]> {
    let (_, small) = essential_space(t).ok()?;
    if small.dim != 8 {
        return None;
    }
    skewrank::atlas::invariants::signature8(&small)
        .ok()
        .map(|s| s.as_array())
}

fn cmd_classify(files: &[PathBuf], seed: u64, json: bool) {
    if files.is_empty() {
        die(EXIT_PARSE, "classify needs at least one tensor file");
    }
    let run = |path: &PathBuf| -> (String, Result<(Classification, Option<[usize; 6]>), String>) {
        let t = read_tensor(path);
        let res = classify(&t, seed).map(|c| {
            let sig = if c.essential_dim == 8 { signature_of(&t) } else { None };
            (c, sig)
        });
        (path.display().to_string(), res)
    };
    let results: Vec<_> = if files.len() > 1 {
        use rayon::prelude::*;
        files.par_iter().map(run).collect()
    } else {
        files.iter().map(run).collect()
    };
    let mut blocks = Vec::new();
    for (name, res) in results {
        match res {
            Ok((c, sig)) => {
                let mut rep = Report::new();
                if files.len() > 1 {
                    rep.push("file", &name);
                }
                classification_report(&c, &mut rep);
                if let Some(arr) = sig {
                    for (key, v) in ["sig_rk_f", "sig_rk_f3", "sig_rk_f2", "sig_dim_vk", "sig_dim_kk", "sig_orbit_dim"]
                        .iter()
                        .zip(arr)
                    {
                        rep.push(key, v);
                    }
                }
                blocks.push(rep.render(json));
            }
            Err(e) => die(classify_error_code(&e), &format!("{name}: {e}")),
        }
    }
    println!("{}", blocks.join("\n\n"));
}

fn write_exact_terms(
    terms: &[Term],
    stem: &str,
    dir: &Path,
    rep: &mut Report,
) {
    if let Err(err) = std::fs::create_dir_all(dir) {
        die(EXIT_INTERNAL, &format!("{}: {err}", dir.display()));
    }
    for (k, term) in terms.iter().enumerate() {
        let e = term.expand();
        let path = dir.join(format!("{stem}.term{k}.tensor"));
        if let Err(err) = std::fs::write(&path, tensorfile::serialize_tensor(&e)) {
            die(EXIT_INTERNAL, &format!("{}: {err}", path.display()));
        }
        rep.push(&format!("term_file_{k}"), path.display());
    }
}

fn cmd_decompose(file: &Path, out_dir: Option<&Path>, seed: u64, tolerance: f64, json: bool) {
    let t = read_tensor(file);
    let c = match classify(&t, seed) {
        Ok(c) => c,
        Err(e) => die(classify_error_code(&e), &e),
    };
    let Some(dec) = c.decomposition.clone() else {
        die(
            EXIT_NO_EXACT,
            &format!(
                "no decomposition recipe for orbit {}",
                c.labels.iter().map(|l| l.name()).collect::<Vec<_>>().join("|")
            ),
        );
    };
    let report = verify_decomposition(&t, &dec);
    let stem = file
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "tensor".to_string());
    let dir = out_dir
        .map(Path::to_path_buf)
        .or_else(|| file.parent().map(Path::to_path_buf))
        .unwrap_or_else(|| PathBuf::from("."));
    let mut rep = Report::new();
    classification_report(&c, &mut rep);
    match &dec {
        Decomposition::Exact(terms) => {
            if !report.residual_zero {
                die(EXIT_INTERNAL, "exact decomposition does not reproduce the input");
            }
            rep.push("residual", "0");
            write_exact_terms(terms, &stem, &dir, &mut rep);
        }
        Decomposition::Numeric(terms) => {
            if !(report.relative_residual < tolerance) {
                die(
                    EXIT_NO_EXACT,
                    &format!(
                        "numeric residual {:.3e} exceeds tolerance {tolerance:.3e}",
                        report.relative_residual
                    ),
                );
            }
            rep.push("residual", format!("{:.3e}", report.relative_residual));
            if let Err(err) = std::fs::create_dir_all(&dir) {
                die(EXIT_INTERNAL, &format!("{}: {err}", dir.display()));
            }
            let path = dir.join(format!("{stem}.terms.json"));
            let val = serde_json::json!({
                "terms": terms.iter().map(|term| serde_json::json!({
                    "coeff": [term.coeff.re, term.coeff.im],
                    "vectors": term.vectors.iter().map(|v| {
                        v.iter().map(|c| vec![c.re, c.im]).collect::<Vec<_>>()
                    }).collect::<Vec<_>>(),
                })).collect::<Vec<_>>(),
            });
            if let Err(err) = std::fs::write(&path, serde_json::to_string_pretty(&val).unwrap()) {
                die(EXIT_INTERNAL, &format!("{}: {err}", path.display()));
            }
            rep.push("term_file_numeric", path.display());
        }
    }
    rep.push("term_count", dec.len());
    println!("{}", rep.render(json));
}

fn cmd_catalecticant(file: &Path, s: u8, json: bool) {
    let t = read_tensor(file);
    if s > t.degree {
        die(EXIT_DIM, "contraction degree exceeds tensor degree");
    }
    let cat = catalecticant(&t, s);
    let mut rep = Report::new();
    rep.push("ncols", cat.col_basis.len());
    rep.push("nrows", cat.row_basis.len());
    rep.push(
        "col_basis",
        cat.col_basis.iter().map(|m| fmt_indices(*m)).collect::<Vec<_>>().join(" "),
    );
    rep.push(
        "row_basis",
        cat.row_basis.iter().map(|m| fmt_indices(*m)).collect::<Vec<_>>().join(" "),
    );
    for i in 0..cat.mat.rows {
        let row: Vec<String> = (0..cat.mat.cols).map(|j| cat.mat.at(i, j).to_string()).collect();
        rep.push(&format!("row_{i:03}"), row.join(" "));
    }
    println!("{}", rep.render(json));
}

fn cmd_annihilator(file: &Path, json: bool) {
    let t = read_tensor(file);
    let ann = annihilator(&t);
    let mut rep = Report::new();
    for s in 0..=t.degree {
        rep.push(&format!("dim_{s}"), ann.pieces[s as usize].dim());
    }
    for s in 0..=t.degree {
        for (k, el) in ann.piece_elements(s).iter().enumerate() {
            rep.push(&format!("basis_{s}_{k:03}"), fmt_multivector(el));
        }
    }
    println!("{}", rep.render(json));
}

fn cmd_essential(file: &Path, json: bool) {
    let t = read_tensor(file);
    let (w, _) = match essential_space(&t) {
        Ok(v) => v,
        Err(e) => die(EXIT_INTERNAL, &e),
    };
    let mut rep = Report::new();
    rep.push("dim", w.dim());
    for (k, row) in w.basis.iter().enumerate() {
        rep.push(&format!("basis_{k:03}"), fmt_row(row));
    }
    println!("{}", rep.render(json));
}

fn cmd_ideal(points: &[PathBuf], max_degree: Option<u8>, tensor: Option<&Path>, json: bool) {
    let pts: Vec<Multivector> = points.iter().map(|p| read_tensor(p)).collect();
    let supplied = tensor.map(read_tensor);
    let report = match point_ideal(&pts, supplied.as_ref()) {
        Ok(r) => r,
        Err(e) => die(EXIT_PARSE, &e),
    };
    let top = max_degree.unwrap_or(report.dim).min(report.dim);
    let mut rep = Report::new();
    if let Some(flag) = report.apolar_to_supplied {
        rep.push("apolar_to_supplied", flag);
    }
    for s in 0..=top as usize {
        rep.push(&format!("piece_dim_{s:02}"), report.piece_dims[s]);
        rep.push(&format!("generators_{s:02}"), report.generator_counts[s]);
        for (k, g) in report.generator_bases[s].iter().enumerate() {
            rep.push(&format!("generator_{s:02}_{k:03}"), fmt_multivector(g));
        }
    }
    println!("{}", rep.render(json));
}

fn cmd_standard_decomposition(label: OrbitLabel, seed: u64, out_dir: &Path, json: bool) {
    let t = normal_form(label);
    let terms = standard_decomposition(label, seed);
    let dec = Decomposition::Exact(terms.clone());
    let report = verify_decomposition(&t, &dec);
    let mut rep = Report::new();
    rep.push("label", label.name());
    rep.push("residual", if report.residual_zero { "0" } else { "nonzero" });
    rep.push("term_count", terms.len());
    let stem = label.name();
    if let Err(e) = std::fs::create_dir_all(out_dir) {
        die(EXIT_INTERNAL, &format!("{}: {e}", out_dir.display()));
    }
    let nf_path = out_dir.join(format!("{stem}.tensor"));
    if let Err(e) = std::fs::write(&nf_path, tensorfile::serialize_tensor(&t)) {
        die(EXIT_INTERNAL, &format!("{}: {e}", nf_path.display()));
    }
    rep.push("tensor_file", nf_path.display());
    write_exact_terms(&terms, stem, out_dir, &mut rep);
    println!("{}", rep.render(json));
}

fn cmd_verify(tensor: &Path, terms: &[PathBuf], json: bool) {
    let t = read_tensor(tensor);
    let mut sum = Multivector::zero(t.dim, t.degree, t.dual);
    let mut all_dec = true;
    for path in terms {
        let term = read_tensor(path);
        if term.dim != t.dim || term.degree != t.degree || term.dual != t.dual {
            die(EXIT_PARSE, &format!("{}: shape mismatch", path.display()));
        }
        if is_decomposable(&term).ok().flatten().is_none() {
            all_dec = false;
        }
        sum = sum.add(&term);
    }
    let residual_zero = sum.sub(&t).is_zero();
    let verified = residual_zero && all_dec;
    let mut rep = Report::new();
    rep.push("all_terms_decomposable", all_dec);
    rep.push("residual", if residual_zero { "0" } else { "nonzero" });
    rep.push("term_count", terms.len());
    rep.push("verified", verified);
    println!("{}", rep.render(json));
    if !verified {
        exit(1);
    }
}

fn main() {
    // die quietly when the reader closes the pipe
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
    }
    let json = match cli.format.as_str() {
        "json" => true,
        "text" => false,
        other => die(EXIT_PARSE, &format!("unknown format {other:?}")),
    };
    match &cli.cmd {
        Cmd::Classify { files } => cmd_classify(files, cli.seed, json),
        Cmd::Decompose { file, out_dir } => {
            cmd_decompose(file, out_dir.as_deref(), cli.seed, cli.tolerance, json)
        }
        Cmd::Catalecticant { file, s } => cmd_catalecticant(file, *s, json),
        Cmd::Annihilator { file } => cmd_annihilator(file, json),
        Cmd::Essential { file } => cmd_essential(file, json),
        Cmd::Ideal { points, max_degree, tensor } => {
            cmd_ideal(points, *max_degree, tensor.as_deref(), json)
        }
        Cmd::NormalForm { label } => {
            let t = normal_form(parse_label(label));
            print!("{}", tensorfile::serialize_tensor(&t));
        }
        Cmd::Sample { label } => {
            let t = orbit_sample(parse_label(label), cli.seed);
            print!("{}", tensorfile::serialize_tensor(&t));
        }
        Cmd::StandardDecomposition { label, out_dir } => {
            cmd_standard_decomposition(parse_label(label), cli.seed, out_dir, json)
        }
        Cmd::Verify { tensor, terms } => cmd_verify(tensor, terms, json),
        Cmd::SignatureTable { rebuild } => {
            if *rebuild {
                match derive_signature_table() {
                    Ok(rows) => print!("{}", format_signature_table(&rows)),
                    Err(e) => die(EXIT_INTERNAL, &e),
                }
            } else {
                print!("{SIGNATURE8_DATA}");
            }
        }
    }
}

//! The `b3lab` command line.
//!
//! Exit status: 0 on success, 1 on malformed input, 2 when a verification
//! fails. Every flag also reads a `B3LAB_*` environment variable.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;

use crate::bounds::{BoundsReport, CSV_HEADER};
use crate::error::{Error, Result};
use crate::garside::{
    classify, conjugacy_invariants, decode_tuple, is_conjugate, is_conjugate_mod_delta2, is_rigid, murasugi_rep, normalize, tuple_of,
    ConjugacyInvariants, GarsideTuple, NTClassification,
};
use crate::sl2::{
    braid_preimages, lu_decompose, lu_of_tuple, matrix_of_lu, split_measure, unstable_measure, CarriedGraph, Measure, SL2Matrix,
    DEFAULT_DIGITS,
};
use crate::traintrack::TrackGraph;
use crate::traintrack::{is_efficient, map_of_word, train_track_of_rigid, transition_matrix, EfficiencyVerdict};
use crate::verify::{self, Report, SweepRow, SWEEP_CSV_HEADER};
use crate::words::{exponent_sum, parse_word, BraidWord};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "b3lab", version, about = "Garside normal forms, classification and dilatations of 3-strand braids")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text, env = "B3LAB_FORMAT")]
    format: Format,
    /// Decimal digits for dilatation factors.
    #[arg(long, global = true, default_value_t = DEFAULT_DIGITS, env = "B3LAB_DIGITS",
          value_parser = clap::value_parser!(u32).range(1..=1000))]
    digits: u32,
    /// Cycling steps allowed when searching for a rigid conjugate.
    #[arg(long, global = true, env = "B3LAB_MAX_CYCLING", value_parser = clap::value_parser!(u64).range(1..))]
    max_cycling: Option<u64>,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0, env = "B3LAB_SEED")]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Left normal form and Garside tuple.
    Nf {
        /// Braid word, or a tuple such as "(0; 1; 1,1)".
        #[arg(allow_hyphen_values = true)]
        word: String,
    },
    /// Nielsen–Thurston type, matrix and dilatation.
    Classify {
        #[arg(allow_hyphen_values = true)]
        word: String,
    },
    /// Conjugacy test.
    Conj {
        #[arg(allow_hyphen_values = true)]
        w1: String,
        #[arg(allow_hyphen_values = true)]
        w2: String,
        /// Decide conjugacy modulo the centre.
        #[arg(long)]
        mod_delta2: bool,
    },
    /// Murasugi LU-word and matrix.
    Matrix {
        #[arg(allow_hyphen_values = true)]
        word: String,
    },
    /// LU-word of an SL₂(ℕ) matrix and its two rigid preimages.
    Decompose {
        #[arg(allow_hyphen_values = true)]
        m11: String,
        #[arg(allow_hyphen_values = true)]
        m12: String,
        #[arg(allow_hyphen_values = true)]
        m21: String,
        #[arg(allow_hyphen_values = true)]
        m22: String,
    },
    /// Extremal traces and dilatation bounds for canonical length ell.
    Bounds { ell: u64 },
    /// Exhaustive trace sweep over LU-words.
    Sweep {
        #[arg(long, default_value_t = verify::DEFAULT_SWEEP_CAP)]
        max_ell: u64,
        /// Largest ell accepted.
        #[arg(long, default_value_t = verify::DEFAULT_SWEEP_CAP, env = "B3LAB_SWEEP_CAP",
              value_parser = clap::value_parser!(u64).range(1..=40))]
        cap: u64,
        /// Also write the CSV table to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run verification suites.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = verify::DEFAULT_FREE_MONOID, value_parser = clap::value_parser!(u32).range(1..=24))]
        max_len: u32,
        #[arg(long, default_value_t = verify::DEFAULT_SPECTRUM, value_parser = clap::value_parser!(u64).range(3..))]
        t_max: u64,
        /// Canonical-length cap for `han` (default 8) and `cycling` (default 10).
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..=20))]
        max_ell: Option<u64>,
        #[arg(long, default_value_t = verify::DEFAULT_CONJUGACY_SAMPLES, value_parser = clap::value_parser!(u64).range(1..))]
        samples: u64,
    },
    /// Graph maps on both train-track graphs.
    Traintrack {
        #[arg(allow_hyphen_values = true)]
        word: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    FreeMonoid,
    Spectrum,
    Han,
    Cycling,
    Conjugacy,
    Oracle,
    All,
}

/// Resolved settings shared by all subcommands.
#[derive(Debug, Clone)]
pub struct CliConfig {
    pub float_digits: u32,
    pub max_cycling: Option<usize>,
    pub format: Format,
    pub seed: u64,
}

enum Failure {
    Input(Error),
    Verification(String),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

type Outcome = std::result::Result<(), Failure>;

/// Runs the CLI on explicit arguments, writing to the given streams.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    1
                }
            };
        }
    };
    let cfg = CliConfig { float_digits: cli.digits, max_cycling: cli.max_cycling.map(|c| c as usize), format: cli.format, seed: cli.seed };
    match dispatch(cli.command, &cfg, out) {
        Ok(()) => 0,
        Err(Failure::Input(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
        Err(Failure::Verification(msg)) => {
            let _ = writeln!(err, "verification failed: {msg}");
            2
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

pub fn main() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

/// A braid word, or the decoded word of a tuple when the text starts with `(`.
fn read_braid(text: &str) -> Result<BraidWord> {
    if text.trim_start().starts_with('(') {
        let t: GarsideTuple = text.parse()?;
        Ok(decode_tuple(&t).to_word())
    } else {
        parse_word(text)
    }
}

fn emit<T: Serialize>(cfg: &CliConfig, out: &mut dyn Write, value: &T, text: impl FnOnce() -> String) -> Outcome {
    match cfg.format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(value).expect("serializable"))?,
        _ => write!(out, "{}", text())?,
    }
    Ok(())
}

fn no_csv(cfg: &CliConfig, cmd: &str) -> Outcome {
    if cfg.format == Format::Csv {
        return Err(Failure::Input(Error::Unsupported(format!("csv output for `{cmd}`"))));
    }
    Ok(())
}

fn dispatch(cmd: Command, cfg: &CliConfig, out: &mut dyn Write) -> Outcome {
    match cmd {
        Command::Nf { word } => {
            no_csv(cfg, "nf")?;
            nf(&read_braid(&word)?, cfg, out)
        }
        Command::Classify { word } => {
            no_csv(cfg, "classify")?;
            classify_cmd(&read_braid(&word)?, cfg, out)
        }
        Command::Conj { w1, w2, mod_delta2 } => {
            no_csv(cfg, "conj")?;
            conj(&read_braid(&w1)?, &read_braid(&w2)?, mod_delta2, cfg, out)
        }
        Command::Matrix { word } => {
            no_csv(cfg, "matrix")?;
            matrix_cmd(&read_braid(&word)?, cfg, out)
        }
        Command::Decompose { m11, m12, m21, m22 } => {
            no_csv(cfg, "decompose")?;
            decompose(&[m11, m12, m21, m22], cfg, out)
        }
        Command::Bounds { ell } => bounds(ell, cfg, out),
        Command::Sweep { max_ell, cap, out: file } => sweep(max_ell, cap, file, cfg, out),
        Command::Verify { suite, max_len, t_max, max_ell, samples } => verify_cmd(suite, max_len, t_max, max_ell, samples, cfg, out),
        Command::Traintrack { word } => {
            no_csv(cfg, "traintrack")?;
            traintrack(&read_braid(&word)?, cfg, out)
        }
    }
}

#[derive(Serialize)]
struct NfOutput {
    #[serde(serialize_with = "crate::ser::display")]
    word: BraidWord,
    normal_form: String,
    #[serde(serialize_with = "crate::ser::display")]
    tuple: GarsideTuple,
    delta_power: i64,
    canonical_length: usize,
    rigid: bool,
}

fn nf(w: &BraidWord, cfg: &CliConfig, out: &mut dyn Write) -> Outcome {
    let nf = normalize(w);
    let o = NfOutput {
        word: w.clone(),
        normal_form: nf.to_string(),
        tuple: tuple_of(&nf),
        delta_power: nf.delta_power(),
        canonical_length: nf.canonical_length(),
        rigid: nf.is_rigid(),
    };
    emit(cfg, out, &o, || {
        format!(
            "word: {}\nnormal form: {}\ntuple: {}\ncanonical length: {}\nrigid: {}\n",
            o.word, o.normal_form, o.tuple, o.canonical_length, o.rigid
        )
    })
}

#[derive(Serialize)]
struct ClassifyOutput {
    #[serde(serialize_with = "crate::ser::display")]
    word: BraidWord,
    #[serde(flatten)]
    classification: NTClassification,
    #[serde(skip_serializing_if = "Option::is_none")]
    measure: Option<Measure>,
    #[serde(skip_serializing_if = "Option::is_none")]
    carried_graph: Option<CarriedGraph>,
}

fn classify_cmd(w: &BraidWord, cfg: &CliConfig, out: &mut dyn Write) -> Outcome {
    let mut c = classify(w, cfg.max_cycling)?;
    let (mut measure, mut carried_graph) = (None, None);
    if let NTClassification::PseudoAnosov { matrix, dilatation, .. } = &mut c {
        *dilatation = dilatation.clone().with_digits(cfg.float_digits);
        let m = unstable_measure(matrix)?;
        carried_graph = Some(split_measure(&m.x, &m.y)?);
        measure = Some(m);
    }
    let o = ClassifyOutput { word: w.clone(), classification: c, measure, carried_graph };
    emit(cfg, out, &o, || {
        let c = &o.classification;
        let mut s = format!("word: {}\ntype: {}\nmurasugi: {}\n", o.word, c.kind(), c.murasugi());
        match c {
            NTClassification::Periodic { root_power, .. } => s += &format!("root power: {root_power}\n"),
            NTClassification::Reducible { side, matrix, .. } => s += &format!("side: {side}\nmatrix: {matrix}\n"),
            NTClassification::PseudoAnosov { matrix, trace, dilatation, .. } => {
                s += &format!("matrix: {matrix}\ntrace: {trace}\ndilatation: {dilatation}\n");
            }
        }
        if let (Some(m), Some(g)) = (&o.measure, &o.carried_graph) {
            s += &format!("measure: x = {}, y = {}\ncarried by: {} (v = {}, u = {})\n", m.x, m.y, g.graph, g.v, g.u);
        }
        s
    })
}

#[derive(Serialize)]
struct ConjOutput {
    #[serde(serialize_with = "crate::ser::display")]
    w1: BraidWord,
    #[serde(serialize_with = "crate::ser::display")]
    w2: BraidWord,
    mod_delta2: bool,
    conjugate: bool,
    invariants: [ConjugacyInvariants; 2],
}

fn conj(w1: &BraidWord, w2: &BraidWord, mod_delta2: bool, cfg: &CliConfig, out: &mut dyn Write) -> Outcome {
    let cap = cfg.max_cycling;
    let conjugate = if mod_delta2 { is_conjugate_mod_delta2(w1, w2, cap)? } else { is_conjugate(w1, w2, cap)? };
    let invariants = [conjugacy_invariants(w1, cap)?, conjugacy_invariants(w2, cap)?];
    let o = ConjOutput { w1: w1.clone(), w2: w2.clone(), mod_delta2, conjugate, invariants };
    emit(cfg, out, &o, || {
        let mut s = format!("conjugate{}: {}\n", if mod_delta2 { " mod Δ²" } else { "" }, o.conjugate);
        for (w, inv) in [(&o.w1, &o.invariants[0]), (&o.w2, &o.invariants[1])] {
            let class = inv.lu_class.as_ref().map_or("-".to_string(), ToString::to_string);
            s += &format!("{w}: exponent sum {}, murasugi {}, s {}, LU class {class}\n", inv.exponent_sum, inv.murasugi, inv.delta_power);
        }
        s
    })
}

#[derive(Serialize)]
struct MatrixOutput {
    #[serde(serialize_with = "crate::ser::display")]
    word: BraidWord,
    #[serde(serialize_with = "crate::ser::display")]
    murasugi: GarsideTuple,
    lu_word: String,
    #[serde(serialize_with = "crate::ser::display")]
    matrix: SL2Matrix,
}

fn matrix_cmd(w: &BraidWord, cfg: &CliConfig, out: &mut dyn Write) -> Outcome {
    if crate::garside::is_periodic(w) {
        return Err(Error::Periodic(w.to_string()).into());
    }
    let murasugi = murasugi_rep(w, cfg.max_cycling)?;
    let lu = lu_of_tuple(&murasugi)?;
    let o = MatrixOutput { word: w.clone(), murasugi, lu_word: lu.to_string(), matrix: matrix_of_lu(&lu) };
    emit(cfg, out, &o, || format!("word: {}\nmurasugi: {}\nLU-word: {}\nmatrix: {}\n", o.word, o.murasugi, o.lu_word, o.matrix))
}

#[derive(Serialize)]
struct DecomposeOutput {
    #[serde(serialize_with = "crate::ser::display")]
    matrix: SL2Matrix,
    lu_word: String,
    runs: String,
    preimages: [String; 2],
}

fn decompose(entries: &[String; 4], cfg: &CliConfig, out: &mut dyn Write) -> Outcome {
    let mut nums = Vec::with_capacity(4);
    for e in entries {
        let v: BigInt = e
            .replace('−', "-")
            .parse()
            .map_err(|_| Error::MalformedMatrix { text: entries.join(" "), reason: format!("'{e}' is not an integer") })?;
        nums.push(v);
    }
    let [a, b, c, d]: [BigInt; 4] = nums.try_into().expect("four entries");
    let m = SL2Matrix::from_signed(a, b, c, d)?;
    let lu = lu_decompose(&m)?;
    let pre = braid_preimages(&lu).map(|t| t.to_string());
    let o = DecomposeOutput { matrix: m, lu_word: lu.to_string(), runs: lu.run_string(), preimages: pre };
    emit(cfg, out, &o, || {
        format!("matrix: {}\nLU-word: {}\nruns: {}\npreimages: {} and {}\n", o.matrix, o.lu_word, o.runs, o.preimages[0], o.preimages[1])
    })
}

fn bounds(ell: u64, cfg: &CliConfig, out: &mut dyn Write) -> Outcome {
    let r = BoundsReport::new(ell, cfg.float_digits)?;
    if cfg.format == Format::Csv {
        writeln!(out, "{CSV_HEADER}\n{}", r.csv_row())?;
        return Ok(());
    }
    emit(cfg, out, &r, || r.to_text())
}

fn sweep(max_ell: u64, cap: u64, file: Option<PathBuf>, cfg: &CliConfig, out: &mut dyn Write) -> Outcome {
    let rows: Vec<SweepRow> = (2..=max_ell).map(|ell| verify::trace_sweep(ell, cap)).collect::<Result<_>>()?;
    let csv = std::iter::once(SWEEP_CSV_HEADER.to_string()).chain(rows.iter().map(SweepRow::csv_row)).collect::<Vec<_>>().join("\n") + "\n";
    if let Some(path) = file {
        std::fs::write(path, &csv)?;
    }
    match cfg.format {
        Format::Csv => write!(out, "{csv}")?,
        _ => emit(cfg, out, &rows, || {
            rows.iter()
                .map(|r| {
                    let j = |v: &[crate::sl2::LUWord]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
                    format!(
                        "ell {:>2}: {} irreducible, trace {}..{}, argmin {{{}}}, argmax {{{}}}, {}\n",
                        r.ell,
                        r.count_irreducible,
                        r.min_trace,
                        r.max_trace,
                        j(&r.argmin_classes),
                        j(&r.argmax_classes),
                        if r.ok { "ok" } else { "FAILED" }
                    )
                })
                .collect()
        })?,
    }
    match rows.iter().find(|r| !r.ok) {
        Some(r) => Err(Failure::Verification(format!("sweep row ell={}", r.ell))),
        None => Ok(()),
    }
}

fn verify_cmd(suite: Suite, max_len: u32, t_max: u64, max_ell: Option<u64>, samples: u64, cfg: &CliConfig, out: &mut dyn Write) -> Outcome {
    let cap = cfg.max_cycling;
    let all = suite == Suite::All;
    let mut reports: Vec<Report> = Vec::new();
    if all || suite == Suite::FreeMonoid {
        reports.push(verify::verify_free_monoid(max_len));
    }
    if all || suite == Suite::Spectrum {
        reports.push(verify::verify_spectrum(t_max, cap));
    }
    if all || suite == Suite::Han {
        reports.push(verify::cross_check_han(max_ell.unwrap_or(verify::DEFAULT_HAN)));
    }
    if all || suite == Suite::Cycling {
        reports.push(verify::verify_cycling_lemma(max_ell.unwrap_or(verify::DEFAULT_CYCLING)));
    }
    if all || suite == Suite::Conjugacy {
        reports.push(verify::verify_conjugacy_soundness(samples, cfg.seed, cap));
        reports.push(verify::verify_conjugacy_invariant(samples, cfg.seed, cap));
    }
    if all || suite == Suite::Oracle {
        reports.push(verify::verify_normal_form_burau(samples.saturating_mul(10), 40, cfg.seed));
        reports.push(verify::verify_classify_invariance(samples, cfg.seed, cap));
    }
    match cfg.format {
        Format::Csv => {
            writeln!(out, "check,ok,checked,summary,counterexample")?;
            for r in &reports {
                let q = |s: &str| format!("\"{}\"", s.replace('"', "\"\""));
                writeln!(out, "{},{},{},{},{}", r.check, r.ok, r.checked, q(&r.summary), q(r.counterexample.as_deref().unwrap_or("")))?;
            }
        }
        _ => emit(cfg, out, &reports, || reports.iter().map(|r| r.to_text() + "\n").collect())?,
    }
    let failed: Vec<&str> = reports.iter().filter(|r| !r.ok).map(|r| r.check).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Verification(failed.join(", ")))
    }
}

#[derive(Serialize)]
struct GraphOutput {
    graph: u8,
    edges: Vec<String>,
    /// Main-edge rows named by position (left edge `x`).
    positional: Vec<String>,
    #[serde(serialize_with = "crate::ser::display")]
    verdict: EfficiencyVerdict,
    verdict_detail: EfficiencyVerdict,
    #[serde(serialize_with = "crate::ser::display")]
    transition_matrix: crate::traintrack::TransitionMatrix,
}

#[derive(Serialize)]
struct TraintrackOutput {
    #[serde(serialize_with = "crate::ser::display")]
    word: BraidWord,
    exponent_sum: i64,
    #[serde(serialize_with = "crate::ser::display")]
    tuple: GarsideTuple,
    rigid: bool,
    /// Graph carrying the braid when it is rigid.
    carried_by: Option<u8>,
    #[serde(serialize_with = "crate::ser::display_opt")]
    matrix: Option<SL2Matrix>,
    graphs: Vec<GraphOutput>,
}

fn traintrack(w: &BraidWord, cfg: &CliConfig, out: &mut dyn Write) -> Outcome {
    let t = tuple_of(&normalize(w));
    let carried = if t.canonical_length() > 0 && is_rigid(&t) { Some(train_track_of_rigid(&t)?) } else { None };
    let graphs = [TrackGraph::Gamma1, TrackGraph::Gamma2]
        .into_iter()
        .map(|g| {
            let f = map_of_word(w, g);
            let verdict = is_efficient(&f, 128);
            GraphOutput {
                graph: g.id(),
                edges: f.render().lines().map(String::from).collect(),
                positional: f.render_positional().lines().map(String::from).collect(),
                verdict,
                verdict_detail: verdict,
                transition_matrix: transition_matrix(&f),
            }
        })
        .collect();
    let o = TraintrackOutput {
        word: w.clone(),
        exponent_sum: exponent_sum(w),
        rigid: carried.is_some(),
        carried_by: carried.as_ref().map(|(g, _)| g.id()),
        matrix: carried.map(|(_, m)| m),
        tuple: t,
        graphs,
    };
    emit(cfg, out, &o, || {
        let mut s = format!("word: {}\ntuple: {}\n", o.word, o.tuple);
        match (o.carried_by, &o.matrix) {
            (Some(g), Some(m)) => s += &format!("rigid: carried by graph {g}, matrix {m}\n"),
            _ => s += "rigid: no\n",
        }
        for g in &o.graphs {
            s += &format!("graph {}\n", g.graph);
            for line in &g.edges {
                s += &format!("  {line}\n");
            }
            if g.graph == 2 {
                s += "  positional labels:\n";
                for line in &g.positional[..2] {
                    s += &format!("  {line}\n");
                }
            }
            s += &format!("  verdict: {}\n  transition matrix: {}\n", g.verdict, g.transition_matrix);
        }
        s
    })
}

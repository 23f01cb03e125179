//! The `gbb` command line: argument types, verb dispatch and the square sweep.
//!
//! Exit codes: 0 success, 1 a negative verdict (not special, failed
//! certificate, non-identity word), 2 bad input or an insufficient window,
//! 3 an internal invariant violation.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::cubical::{
    check_links, check_special, hyperplanes, minimal_wrap, shift_stable_period, specialness, QuotientCubeComplex,
};
use crate::dehn::{format_word, is_identity, parse_word, small_cancellation_check, CyclicPresentation, ExponentSet, ExponentSetFile};
use crate::error::{Error, Result};
use crate::finitegroups::{r_set, GroupDesc};
use crate::fixtures::{self, FIXTURES};
use crate::gbbcore::{cocycle_recipe, hw_product_quotient, wreath_recipe, FiniteQuotient, QuotientMode};
use crate::intsets::PeriodicSet;
use crate::io::{CertificateMode, Inputs, QuotientSource, ReportEnvelope};

#[derive(Debug, Parser)]
#[command(name = "gbb", version, about = "Workbench for generalized Bestvina-Brady groups")]
pub struct Cli {
    /// Print the report envelope as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Default, Clone)]
pub struct SourceArgs {
    /// A built-in fixture (see `gbb fixtures list`).
    #[arg(long)]
    pub fixture: Option<String>,
    /// Cover file.
    #[arg(long)]
    pub cover: Option<PathBuf>,
    /// The set S, e.g. `2Z` or `Z\(1+3Z)`.
    #[arg(long)]
    pub s: Option<String>,
    /// Quotient file (target, theta, mode).
    #[arg(long)]
    pub quotient: Option<PathBuf>,
}

impl SourceArgs {
    fn source(&self) -> QuotientSource<'_> {
        QuotientSource {
            fixture: self.fixture.as_deref(),
            cover: self.cover.as_deref(),
            s: self.s.as_deref(),
            quotient: self.quotient.as_deref(),
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum, PartialEq, Eq)]
pub enum RecipeKind {
    Cocycle,
    HwProduct,
    Wreath,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the wrapped cube complex and check its vertex links.
    BuildComplex {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long)]
        wrap: Option<usize>,
        /// Write the full cell dump here.
        #[arg(long)]
        dump: Option<PathBuf>,
    },
    /// Run the hyperplane pathology checks.
    CheckSpecial {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long)]
        wrap: Option<usize>,
        /// Find the shift-stable wrap first and check there.
        #[arg(long)]
        stabilize: bool,
        /// Largest multiple of the wrap tried by --stabilize.
        #[arg(long, default_value_t = 64)]
        cap: usize,
    },
    /// Certificate, torsion-free kernel and star-abelian checks.
    VerifyQuotient {
        #[command(flatten)]
        source: SourceArgs,
    },
    /// Build a quotient from a recipe.
    Recipe {
        #[arg(long, value_enum)]
        kind: RecipeKind,
        #[command(flatten)]
        source: SourceArgs,
        /// Modulus of the appended coordinate (hw-product).
        #[arg(long)]
        m: Option<u64>,
        /// Rose petals (wreath).
        #[arg(long, default_value_t = 1)]
        petals: usize,
        /// Parts per subdivided edge (wreath).
        #[arg(long, default_value_t = 4)]
        r: usize,
        /// Period of S (wreath).
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Loop-length bound of the certificate; omitted means all loops (wreath).
        #[arg(long)]
        loop_bound: Option<usize>,
        /// Directory for cover.json and quotient.json.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// The set of exponents j with g1^j ... gl^j = 1.
    Rset {
        /// `pqrs` for the wreath quadruple.
        #[arg(long)]
        fixture: Option<String>,
        /// File with {"target": ..., "elements": [...]}.
        #[arg(long)]
        elements: Option<PathBuf>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        /// Also list members in `lo..hi`.
        #[arg(long)]
        window: Option<String>,
    },
    /// Solve the word problem in the cyclic presentation with exponent set T.
    Dehn {
        #[arg(long, default_value_t = 13)]
        l: usize,
        /// Exponent-set file.
        #[arg(long)]
        set: Option<PathBuf>,
        /// Periodic exponent set inline, e.g. `2Z`.
        #[arg(long)]
        t: Option<String>,
        #[arg(long)]
        word: String,
        /// Small-cancellation class to certify.
        #[arg(long, default_value_t = 6)]
        m: usize,
    },
    /// Full report on a quotient, or the sweep over the square's index-two quotients.
    Report {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long)]
        sweep: bool,
    },
    /// Built-in example quotients
    Fixtures {
        #[command(subcommand)]
        action: FixturesAction,
    },
}

#[derive(Debug, Subcommand)]
pub enum FixturesAction {
    List,
}

/// A finished run: the envelope, a human summary and the exit code.
#[derive(Debug)]
pub struct Outcome {
    pub envelope: ReportEnvelope,
    pub text: String,
    pub code: i32,
}

/// A failed run with whatever inputs had been read.
#[derive(Debug)]
pub struct Failure {
    pub error: Error,
    pub inputs: Inputs,
}

impl Failure {
    pub fn code(&self) -> i32 {
        exit_code(&self.error)
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Internal(_) => 3,
        _ => 2,
    }
}

pub fn run(cli: &Cli) -> std::result::Result<Outcome, Failure> {
    let mut inputs = Inputs::new(verb(&cli.command));
    match dispatch(&cli.command, &mut inputs) {
        Ok((mut envelope, text, code)) => {
            envelope.inputs_digest = inputs.digest();
            envelope.inputs = inputs;
            Ok(Outcome { envelope, text, code })
        }
        Err(error) => Err(Failure { error, inputs }),
    }
}

fn verb(c: &Command) -> &'static str {
    match c {
        Command::BuildComplex { .. } => "build-complex",
        Command::CheckSpecial { .. } => "check-special",
        Command::VerifyQuotient { .. } => "verify-quotient",
        Command::Recipe { .. } => "recipe",
        Command::Rset { .. } => "rset",
        Command::Dehn { .. } => "dehn",
        Command::Report { .. } => "report",
        Command::Fixtures { .. } => "fixtures",
    }
}

type Dispatched = (ReportEnvelope, String, i32);

fn dispatch(c: &Command, inputs: &mut Inputs) -> Result<Dispatched> {
    match c {
        Command::BuildComplex { source, wrap, dump } => build_complex(source, *wrap, dump.as_ref(), inputs),
        Command::CheckSpecial { source, wrap, stabilize, cap } => check_special_cmd(source, *wrap, *stabilize, *cap, inputs),
        Command::VerifyQuotient { source } => verify_quotient(source, inputs),
        Command::Recipe { kind, source, m, petals, r, n, seed, loop_bound, out_dir } => {
            let w = WreathArgs { petals: *petals, r: *r, n: *n, seed: *seed, loop_bound: *loop_bound };
            recipe(*kind, source, *m, w, out_dir.as_ref(), inputs)
        }
        Command::Rset { fixture, elements, n, k, window } => {
            rset(fixture.as_deref(), elements.as_ref(), *n, *k, window.as_deref(), inputs)
        }
        Command::Dehn { l, set, t, word, m } => dehn(*l, set.as_ref(), t.as_deref(), word, *m, inputs),
        Command::Report { source, sweep } => report(source, *sweep, inputs),
        Command::Fixtures { action: FixturesAction::List } => {
            let mut env = ReportEnvelope::new(inputs.clone());
            env.data = serde_json::to_value(FIXTURES)?;
            let text = FIXTURES.iter().map(|f| format!("{:<24} {}\n", f.name, f.description)).collect();
            Ok((env, text, 0))
        }
    }
}

fn certificate_mode(q: &FiniteQuotient) -> CertificateMode {
    if q.certificate().is_exact() {
        CertificateMode::Exact
    } else {
        CertificateMode::Window
    }
}

fn choose_wrap(q: &FiniteQuotient, wrap: Option<usize>, inputs: &mut Inputs) -> usize {
    let w = wrap.unwrap_or_else(|| minimal_wrap(q));
    inputs.option("wrap", w);
    w
}

fn build_complex(source: &SourceArgs, wrap: Option<usize>, dump: Option<&PathBuf>, inputs: &mut Inputs) -> Result<Dispatched> {
    let q = source.source().load(inputs)?;
    let wrap = choose_wrap(&q, wrap, inputs);
    let y = QuotientCubeComplex::build(&q, wrap)?;
    let tags = check_links(&y).map_err(Error::Internal)?;
    let per_height: Vec<usize> = (0..wrap).map(|j| y.vertices_at(j)).collect();
    let mut env = ReportEnvelope::new(inputs.clone());
    env.verdict("links_ok", true);
    env.verdict("torsion_free", y.torsion_free());
    env.mode("quotient", certificate_mode(&q));
    env.data = json!({
        "wrap": wrap,
        "group_order": y.group().order(),
        "vertices_per_height": per_height,
        "edges": y.edge_count(),
        "squares": y.square_count(),
        "link_tags": tags,
    });
    if let Some(path) = dump {
        let text = serde_json::to_string_pretty(&y.dump())?;
        fs::write(path, text).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
        env.data["dump"] = json!(path.display().to_string());
    }
    let text = format!(
        "wrap {wrap}: {} vertices {:?} per height, {} edges, {} squares; links ok\n",
        y.vertex_count(),
        per_height,
        y.edge_count(),
        y.square_count()
    );
    Ok((env, text, 0))
}

fn check_special_cmd(
    source: &SourceArgs,
    wrap: Option<usize>,
    stabilize: bool,
    cap: usize,
    inputs: &mut Inputs,
) -> Result<Dispatched> {
    let q = source.source().load(inputs)?;
    let base = choose_wrap(&q, wrap, inputs);
    let wrap = if stabilize {
        inputs.option("stabilize", true);
        inputs.option("cap", cap);
        shift_stable_period(&q, base, cap)?.wrap
    } else {
        base
    };
    let report = check_special(&q, wrap)?;
    let mut env = ReportEnvelope::new(inputs.clone());
    env.verdict("special", report.special);
    env.verdict("wrap", report.wrap);
    env.mode("quotient", certificate_mode(&q));
    for w in &report.self_intersections {
        env.witness(json!({"self_intersection": w}));
    }
    for w in &report.self_osculations {
        env.witness(json!({"self_osculation": w}));
    }
    for w in &report.inter_osculations {
        env.witness(json!({"inter_osculation": w}));
    }
    for h in &report.non_two_sided {
        env.witness(json!({"one_sided": h}));
    }
    let mut text = format!("wrap {}: {}\n", report.wrap, if report.special { "special" } else { "NOT special" });
    for (label, n) in &report.hyperplane_counts {
        let _ = writeln!(text, "  {label}: {n} hyperplanes");
    }
    let _ = writeln!(
        text,
        "  self-intersections {}, self-osculations {}, inter-osculations {}",
        report.self_intersections.len(),
        report.self_osculations.len(),
        report.inter_osculations.len()
    );
    let code = if report.special { 0 } else { 1 };
    env.data = serde_json::to_value(&report)?;
    Ok((env, text, code))
}

fn verify_quotient(source: &SourceArgs, inputs: &mut Inputs) -> Result<Dispatched> {
    let q = source.source().load(inputs)?;
    let cert = q.certificate();
    let mut env = ReportEnvelope::new(inputs.clone());
    env.verdict("certificate_passed", cert.passed());
    env.mode("certificate", certificate_mode(&q));
    let mut text = format!("certificate: {}\n", if cert.passed() { "passed" } else { "FAILED" });
    if let Some(w) = cert.witness() {
        env.witness(json!({"relator": w}));
        let _ = writeln!(text, "  witness: {w}");
    }
    let mut data = json!({ "certificate": cert, "quotient": q.to_file() });
    if cert.passed() {
        let kernel = q.kernel_torsion_free()?;
        let star = q.star_abelian_check()?;
        env.verdict("kernel_torsion_free", kernel.torsion_free);
        env.verdict("star_abelian", star.holds);
        if let Some(w) = &kernel.witness {
            env.witness(json!({"kernel": w}));
        }
        let _ = writeln!(text, "kernel torsion-free: {} (window {})", kernel.torsion_free, kernel.window);
        let _ = writeln!(text, "star-abelian: {}", star.holds);
        data["kernel"] = serde_json::to_value(&kernel)?;
        data["star_abelian"] = serde_json::to_value(&star)?;
    }
    env.data = data;
    Ok((env, text, if cert.passed() { 0 } else { 1 }))
}

struct WreathArgs {
    petals: usize,
    r: usize,
    n: usize,
    seed: u64,
    loop_bound: Option<usize>,
}

fn recipe(
    kind: RecipeKind,
    source: &SourceArgs,
    m: Option<u64>,
    w: WreathArgs,
    out_dir: Option<&PathBuf>,
    inputs: &mut Inputs,
) -> Result<Dispatched> {
    inputs.option("kind", format!("{kind:?}").to_lowercase());
    let mut extra = Value::Null;
    let q = match kind {
        RecipeKind::Cocycle => cocycle_recipe(Arc::new(source.source().presentation(inputs)?))?,
        RecipeKind::HwProduct => {
            inputs.option("m", m);
            hw_product_quotient(&source.source().load(inputs)?, m)?
        }
        RecipeKind::Wreath => {
            for (k, v) in [("petals", w.petals), ("r", w.r), ("n", w.n)] {
                inputs.option(k, v);
            }
            inputs.option("seed", w.seed);
            inputs.option("loop_bound", w.loop_bound);
            let mut input = fixtures::rose_wreath_input(w.petals, w.r, w.loop_bound);
            input.n = w.n;
            input.seed = w.seed;
            input.mode = QuotientMode::Bounded { loop_bound: w.loop_bound };
            let rec = wreath_recipe(&input)?;
            extra = serde_json::to_value(rec.summary())?;
            rec.quotient
        }
    };
    let pres = q.presentation();
    let s = pres.s().shift(pres.shift());
    let mut env = ReportEnvelope::new(inputs.clone());
    env.verdict("certificate_passed", q.certificate().passed());
    env.mode("certificate", certificate_mode(&q));
    let cover = pres.cover().to_file();
    let file = q.to_file();
    if let Some(dir) = out_dir {
        fs::create_dir_all(dir).map_err(|e| Error::Invalid(format!("{}: {e}", dir.display())))?;
        for (name, v) in [("cover.json", serde_json::to_value(&cover)?), ("quotient.json", serde_json::to_value(&file)?)] {
            let p = dir.join(name);
            fs::write(&p, serde_json::to_string_pretty(&v)?).map_err(|e| Error::Invalid(format!("{}: {e}", p.display())))?;
        }
    }
    let text = format!(
        "{kind:?} quotient onto {} elements, S = {s}; certificate {}\n",
        q.target().order().map_or("?".to_string(), |o| o.to_string()),
        if q.certificate().passed() { "passed" } else { "FAILED" }
    );
    env.data = json!({ "s": s.to_string(), "cover": cover, "quotient": file, "certificate": q.certificate(), "recipe": extra });
    Ok((env, text, if q.certificate().passed() { 0 } else { 1 }))
}

#[derive(Deserialize)]
struct ElementsFile {
    target: GroupDesc,
    elements: Vec<Value>,
}

fn parse_range(s: &str) -> Result<(i64, i64)> {
    let (a, b) = s.split_once("..").ok_or_else(|| Error::Parse(format!("window `{s}` is not lo..hi")))?;
    let lo = a.trim().parse().map_err(|_| Error::Parse(format!("bad window bound `{a}`")))?;
    let hi = b.trim().parse().map_err(|_| Error::Parse(format!("bad window bound `{b}`")))?;
    if lo > hi {
        return Err(Error::Parse(format!("empty window `{s}`")));
    }
    Ok((lo, hi))
}

fn rset(
    fixture: Option<&str>,
    elements: Option<&PathBuf>,
    n: Option<usize>,
    k: Option<usize>,
    window: Option<&str>,
    inputs: &mut Inputs,
) -> Result<Dispatched> {
    let (target, elems) = match (fixture, elements) {
        (Some("pqrs"), None) => {
            let n = n.ok_or_else(|| Error::Parse("pqrs needs --n".into()))?;
            let k = k.ok_or_else(|| Error::Parse("pqrs needs --k".into()))?;
            inputs.option("fixture", "pqrs");
            inputs.option("n", n);
            inputs.option("k", k);
            fixtures::pqrs(n, k)?
        }
        (Some(other), None) => return Err(Error::UnknownFixture(other.into())),
        (None, Some(path)) => {
            let f: ElementsFile = inputs.read(path)?;
            let elems = f.elements.iter().map(|v| f.target.parse_elem(v)).collect::<Result<Vec<_>>>()?;
            (f.target, elems)
        }
        _ => return Err(Error::Parse("give exactly one of --fixture and --elements".into())),
    };
    let set = r_set(&target, &elems)?;
    let mut env = ReportEnvelope::new(inputs.clone());
    env.verdict("r_set", set.to_string());
    env.verdict("contains_zero", set.contains(0));
    env.mode("r_set", CertificateMode::Exact);
    let complement = set.complement();
    let mut text = format!("R = {set}");
    if !complement.is_empty() && !set.is_empty() {
        let _ = write!(text, "  (Z\\({complement}))");
    }
    text.push('\n');
    let mut data = json!({ "set": set, "period": set.period(), "group_exponent": target.exponent() });
    if let Some(w) = window {
        inputs.option("window", w);
        let (lo, hi) = parse_range(w)?;
        let members = set.window(lo, hi);
        let _ = writeln!(text, "members in {lo}..{hi}: {members:?}");
        data["window"] = json!(members);
    }
    env.data = data;
    Ok((env, text, 0))
}

fn dehn(l: usize, set: Option<&PathBuf>, t: Option<&str>, word: &str, m: usize, inputs: &mut Inputs) -> Result<Dispatched> {
    inputs.option("l", l);
    inputs.option("word", word);
    inputs.option("m", m);
    let t = match (set, t) {
        (Some(path), None) => inputs.read::<ExponentSetFile>(path)?.build()?,
        (None, Some(t)) => {
            inputs.option("t", t);
            ExponentSet::Periodic(t.parse::<PeriodicSet>()?)
        }
        _ => return Err(Error::Parse("give exactly one of --set and --t".into())),
    };
    let pres = CyclicPresentation::new(l, t)?;
    let w = parse_word(l, word)?;
    let window = pres.window_for_length(w.len()).max(2);
    let mut env = ReportEnvelope::new(inputs.clone());
    let sc = match small_cancellation_check(&pres, m, window) {
        Ok(r) => Some(r),
        Err(Error::Precondition(_)) => None,
        Err(e) => return Err(e),
    };
    let identity = is_identity(&pres, &w)?;
    let reduced = crate::dehn::dehn_reduce(&pres, &w)?;
    env.verdict("identity", identity);
    env.verdict("small_cancellation", sc.as_ref().map(|r| r.holds));
    env.mode("small_cancellation", CertificateMode::Window);
    env.mode("word_problem", CertificateMode::Window);
    let mut text = format!("{}\n", if identity { "identity" } else { "not the identity" });
    let _ = writeln!(text, "  reduced: {}", format_word(&reduced));
    match &sc {
        Some(r) => {
            let _ = writeln!(
                text,
                "  C'(1/{m}) on |n| <= {window}: ratio {:.4} ({})",
                r.ratio,
                if r.holds { "holds" } else { "FAILS; the answer is not guaranteed" }
            );
        }
        None => {
            let _ = writeln!(text, "  no relators with |n| <= {window}");
        }
    }
    env.data = json!({ "reduced": format_word(&reduced), "small_cancellation": sc, "window": window });
    Ok((env, text, if identity { 0 } else { 1 }))
}

/// One quotient of the sweep.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct SweepRow {
    pub quotient: String,
    /// Edges of the square sent to the nontrivial element.
    pub outside: String,
    /// Parity of `outside`, for the index-two rows.
    pub odd_cardinality: Option<bool>,
    pub torsion_free: bool,
    pub hyperplane_counts: BTreeMap<String, usize>,
    /// Counts agree at every wrap tried.
    pub counts_stable: bool,
    pub special: Option<bool>,
    pub expected_special: Option<bool>,
    pub matches: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct SweepReport {
    pub wraps: Vec<usize>,
    pub quotients: usize,
    pub torsion_free: usize,
    pub special_among_torsion_free: usize,
    pub index_sixteen_special: bool,
    pub rows: Vec<SweepRow>,
    pub all_match: bool,
}

fn sweep_row(name: String, outside: String, q: &FiniteQuotient, wraps: &[usize], expected: Option<bool>) -> Result<SweepRow> {
    let torsion_free = q.kernel_torsion_free()?.torsion_free;
    let mut counts = Vec::new();
    let mut special = None;
    for &w in wraps {
        let y = QuotientCubeComplex::build(q, w)?;
        let h = hyperplanes(&y);
        counts.push(h.counts_by_label(&y));
        if special.is_none() && expected.is_some() {
            special = Some(specialness(&y, &h).special);
        }
    }
    let counts_stable = counts.windows(2).all(|p| p[0] == p[1]);
    Ok(SweepRow {
        quotient: name,
        odd_cardinality: (!outside.is_empty()).then_some(outside.len() % 2 == 1),
        outside,
        torsion_free,
        hyperplane_counts: counts.swap_remove(0),
        counts_stable,
        special,
        expected_special: expected,
        matches: counts_stable && special == expected,
    })
}

/// All nontrivial maps from the square's group to `𝔽₂` killing `S = 2ℤ`,
/// with specialness of the torsion-free ones, followed by the `(C₂)⁴` quotient.
pub fn square_sweep(wraps: &[usize]) -> Result<SweepReport> {
    let mut rows = Vec::new();
    for outside in fixtures::square_subsets() {
        let q = fixtures::square_index_two(&outside)?;
        let tf = q.kernel_torsion_free()?.torsion_free;
        let row = sweep_row(format!("square-index2-{outside}"), outside, &q, wraps, tf.then_some(false))?;
        rows.push(row);
    }
    let q16 = fixtures::square_index_sixteen();
    let row16 = sweep_row("square-index16".into(), String::new(), &q16, wraps, Some(true))?;
    let quotients = rows.len();
    let torsion_free = rows.iter().filter(|r| r.torsion_free).count();
    let special_among_torsion_free = rows.iter().filter(|r| r.torsion_free && r.special == Some(true)).count();
    let odd_ok = rows.iter().all(|r| r.odd_cardinality == Some(r.torsion_free));
    let index_sixteen_special = row16.special == Some(true);
    rows.push(row16);
    let all_match = odd_ok && rows.iter().all(|r| r.matches) && torsion_free == 8;
    Ok(SweepReport {
        wraps: wraps.to_vec(),
        quotients,
        torsion_free,
        special_among_torsion_free,
        index_sixteen_special,
        rows,
        all_match,
    })
}

fn report(source: &SourceArgs, sweep: bool, inputs: &mut Inputs) -> Result<Dispatched> {
    if sweep {
        let wraps = [2, 4, 8];
        inputs.option("sweep", true);
        inputs.option("wraps", wraps);
        let r = square_sweep(&wraps)?;
        let mut env = ReportEnvelope::new(inputs.clone());
        env.verdict("quotients", r.quotients);
        env.verdict("torsion_free", r.torsion_free);
        env.verdict("special_among_torsion_free", r.special_among_torsion_free);
        env.verdict("index_sixteen_special", r.index_sixteen_special);
        env.verdict("all_match", r.all_match);
        env.mode("sweep", CertificateMode::Exact);
        let mut text = format!(
            "{} index-two quotients, {} torsion-free, {} of those special; index 16 special: {}\n",
            r.quotients, r.torsion_free, r.special_among_torsion_free, r.index_sixteen_special
        );
        let _ = writeln!(text, "{:<20} {:>4} {:>5} {:<16} {:>8} {:>8} {:>6}", "quotient", "odd", "tf", "w x y z", "special", "expected", "match");
        for row in &r.rows {
            let counts: Vec<String> = row.hyperplane_counts.values().map(|c| c.to_string()).collect();
            let show = |b: Option<bool>| b.map_or("-".to_string(), |b| b.to_string());
            let _ = writeln!(
                text,
                "{:<20} {:>4} {:>5} {:<16} {:>8} {:>8} {:>6}",
                row.quotient,
                show(row.odd_cardinality),
                row.torsion_free,
                counts.join(" "),
                show(row.special),
                show(row.expected_special),
                row.matches
            );
        }
        let code = if r.all_match { 0 } else { 1 };
        env.data = serde_json::to_value(&r)?;
        return Ok((env, text, code));
    }
    let q = source.source().load(inputs)?;
    let cert = q.certificate();
    let mut env = ReportEnvelope::new(inputs.clone());
    env.verdict("certificate_passed", cert.passed());
    env.mode("certificate", certificate_mode(&q));
    if !cert.passed() {
        env.data = json!({ "certificate": cert });
        return Ok((env, format!("certificate FAILED: {}\n", cert.witness().unwrap_or("")), 1));
    }
    let kernel = q.kernel_torsion_free()?;
    env.verdict("kernel_torsion_free", kernel.torsion_free);
    let mut text = format!("certificate passed; kernel torsion-free: {}\n", kernel.torsion_free);
    let mut data = json!({ "certificate": cert, "kernel": kernel });
    match check_special(&q, minimal_wrap(&q)) {
        Ok(sp) => {
            env.verdict("special", sp.special);
            let labels: BTreeSet<&String> = sp.hyperplane_counts.keys().collect();
            let _ = writeln!(text, "special at wrap {}: {} ({} labels)", sp.wrap, sp.special, labels.len());
            data["specialness"] = serde_json::to_value(&sp)?;
        }
        Err(Error::Unsupported(why)) => {
            let _ = writeln!(text, "specialness skipped: {why}");
            data["specialness"] = json!({ "skipped": why });
        }
        Err(e) => return Err(e),
    }
    env.data = data;
    Ok((env, text, 0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> std::result::Result<Outcome, Failure> {
        let cli = Cli::try_parse_from(std::iter::once("gbb").chain(args.iter().copied())).unwrap();
        run(&cli)
    }

    #[test]
    fn index_sixteen_is_special() {
        let out = run_args(&["check-special", "--fixture", "s9-index16", "--wrap", "2"]).unwrap();
        assert_eq!(out.code, 0);
        assert_eq!(out.envelope.verdicts["special"], json!(true));
    }

    #[test]
    fn pqrs_rset() {
        let out = run_args(&["rset", "--fixture", "pqrs", "--n", "3", "--k", "1"]).unwrap();
        let expected = PeriodicSet::from_residues(3, [1]).complement();
        assert_eq!(out.envelope.verdicts["r_set"], json!(expected.to_string()));
    }

    #[test]
    fn fixtures_listed() {
        let out = run_args(&["fixtures", "list"]).unwrap();
        assert!(out.envelope.data.as_array().is_some_and(|a| !a.is_empty()));
    }

    #[test]
    fn exit_codes() {
        let out = run_args(&["dehn", "--t", "2Z", "--word", "a1 a2 a3 a4 a5 a6 a7 a8 a9 a10 a11 a12 a13"]).unwrap();
        assert_eq!(out.code, 1);
        let out = run_args(&["dehn", "--t", "2Z", "--word", "a1^2 a2^2 a3^2 a4^2 a5^2 a6^2 a7^2 a8^2 a9^2 a10^2 a11^2 a12^2 a13^2"]).unwrap();
        assert_eq!(out.code, 0);
        let err = run_args(&["check-special", "--fixture", "nowhere"]).unwrap_err();
        assert_eq!(err.code(), 2);
        assert_eq!(exit_code(&Error::Internal("x".into())), 3);
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("-3..7").unwrap(), (-3, 7));
        assert!(parse_range("7..3").is_err());
        assert!(parse_range("7").is_err());
    }
}

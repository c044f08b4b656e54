//! Command-line front end. Every subcommand renders either text or JSON;
//! JSON field order is fixed by the structs below, so identical requests
//! give byte-identical output.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::Value;

use crate::fdlie::{self, StructureConstants, Validation};
use crate::freelie::{derived_dims, graded_quotient, LieElement};
use crate::gradedgr::{self, Combinatorial, GradedError};
use crate::holonomy::{self, echelonize, HolonomyError};
use crate::seifert::{self, SeifertInvariants};
use crate::series::{self, RationalSeries, SeriesError};
use crate::words::{parse_presentation, GroupPresentation, ParseError};
use crate::Rational;

pub const DEFAULT_CAP: usize = 6;
pub const MAX_CAP_WITHOUT_OVERRIDE: usize = 10;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_CAP: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "holokit", version, about = "Exact holonomy Lie algebras, cup products and graded ranks of finitely presented groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Degree cap for rank tables and series.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    pub cap: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Permit caps above 10.
    #[arg(long, global = true)]
    pub allow_large_cap: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
}

#[derive(Args, Debug, Clone, Default)]
pub struct InputArgs {
    /// Input file.
    pub file: Option<PathBuf>,
    /// Input given directly on the command line.
    #[arg(long)]
    pub inline: Option<String>,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Cup-product table on degree-1 cohomology.
    Cup(InputArgs),
    /// Holonomy Lie algebra presentation and rank tables.
    Holonomy {
        #[command(flatten)]
        input: InputArgs,
        /// Also report dimensions of h / h^(i).
        #[arg(long)]
        level: Option<usize>,
    },
    /// Dimensions of h / h^(i) (Chen ranks for i = 2).
    Chen {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 2)]
        level: usize,
    },
    /// Anick mildness checks on the initial forms.
    Mild {
        #[command(flatten)]
        input: InputArgs,
        /// Generators from largest to smallest, by name or 1-based index.
        #[arg(long, value_delimiter = ',')]
        order: Option<Vec<String>>,
    },
    /// Weight and graded-formality report for a one-relator presentation.
    Onerelator(InputArgs),
    /// Power-series utilities on a coefficient list.
    Series {
        #[arg(value_enum)]
        operation: SeriesOp,
        /// Coefficients (integers or p/q); dimensions d_1, d_2, … for `pbw`.
        #[arg(allow_negative_numbers = true, num_args = 1..)]
        values: Vec<String>,
    },
    /// Obstruction profile of a nilpotent Lie algebra given as JSON.
    Fdlie(InputArgs),
    /// Seifert manifold group from JSON invariants, with rank tables.
    Seifert(InputArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SeriesOp {
    /// Reciprocal 1 / h(-t) with negativity flag.
    Koszul,
    /// Product of (1 - t^i)^(-d_i).
    Pbw,
    /// Recover d_i from a PBW series.
    Invert,
}

/// A validated request.
#[derive(Clone, Debug)]
pub struct CommandRequest {
    pub command: Command,
    pub cap: usize,
    pub format: Format,
}

impl CommandRequest {
    pub fn from_cli(cli: Cli) -> Result<Self, Failure> {
        if cli.cap == 0 {
            return Err(Failure::input("bad_cap", "cap must be at least 1"));
        }
        if cli.cap > MAX_CAP_WITHOUT_OVERRIDE && !cli.allow_large_cap {
            return Err(Failure::input(
                "bad_cap",
                format!("cap {} exceeds {MAX_CAP_WITHOUT_OVERRIDE}; pass --allow-large-cap", cli.cap),
            ));
        }
        Ok(CommandRequest { command: cli.command, cap: cli.cap, format: cli.format })
    }
}

/// Rendered result of a dispatch.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Failure {
    #[serde(skip)]
    pub status: i32,
    pub kind: &'static str,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub line: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub column: Option<usize>,
}

impl Failure {
    fn input(kind: &'static str, message: impl Into<String>) -> Self {
        Failure { status: EXIT_INPUT, kind, message: message.into(), line: None, column: None }
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        let loc = e.location();
        Failure {
            status: EXIT_INPUT,
            kind: "parse",
            message: e.to_string(),
            line: loc.map(|l| l.0),
            column: loc.map(|l| l.1),
        }
    }
}

impl From<GradedError> for Failure {
    fn from(e: GradedError) -> Self {
        if e.is_cap_exceeded() {
            Failure { status: EXIT_CAP, kind: "cap_exceeded", message: e.to_string(), line: None, column: None }
        } else {
            Failure::input("graded", e.to_string())
        }
    }
}

impl From<HolonomyError> for Failure {
    fn from(e: HolonomyError) -> Self {
        Failure::input("holonomy", e.to_string())
    }
}

/// Parses arguments, dispatches, and prints. Returns the exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let out = run_to_strings(args);
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    out.status
}

/// As [`run`], capturing output instead of printing it.
pub fn run_to_strings<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let status = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                Outcome { status, stdout: String::new(), stderr: rendered }
            } else {
                Outcome { status, stdout: rendered, stderr: String::new() }
            };
        }
    };
    let format = cli.format;
    match CommandRequest::from_cli(cli) {
        Ok(req) => dispatch(&req),
        Err(f) => render_failure(&f, format),
    }
}

fn render_failure(f: &Failure, format: Format) -> Outcome {
    let stdout = match format {
        Format::Json => to_json(&serde_json::json!({ "error": f })),
        Format::Text => String::new(),
    };
    Outcome { status: f.status, stdout, stderr: format!("error: {}\n", f.message) }
}

pub fn dispatch(req: &CommandRequest) -> Outcome {
    let result = match &req.command {
        Command::Cup(input) => cup(req, input),
        Command::Holonomy { input, level } => holonomy_cmd(req, input, *level),
        Command::Chen { input, level } => chen(req, input, *level),
        Command::Mild { input, order } => mild(req, input, order.as_deref()),
        Command::Onerelator(input) => onerelator(req, input),
        Command::Series { operation, values } => series_cmd(req, *operation, values),
        Command::Fdlie(input) => fdlie_cmd(req, input),
        Command::Seifert(input) => seifert_cmd(req, input),
    };
    match result {
        Ok(stdout) => Outcome { status: EXIT_OK, stdout, stderr: String::new() },
        Err(f) => render_failure(&f, req.format),
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn emit<T: Serialize>(req: &CommandRequest, value: &T, text: impl FnOnce() -> String) -> Result<String, Failure> {
    Ok(match req.format {
        Format::Json => to_json(value),
        Format::Text => text(),
    })
}

fn read_input(input: &InputArgs) -> Result<String, Failure> {
    match (&input.file, &input.inline) {
        (Some(_), Some(_)) => Err(Failure::input("input", "give either FILE or --inline, not both")),
        (None, None) => Err(Failure::input("input", "no input: give FILE or --inline")),
        (Some(path), None) => std::fs::read_to_string(path)
            .map_err(|e| Failure::input("input", format!("cannot read {}: {e}", path.display()))),
        (None, Some(text)) => Ok(text.clone()),
    }
}

fn read_presentation(input: &InputArgs) -> Result<GroupPresentation, Failure> {
    Ok(parse_presentation(&read_input(input)?)?)
}

fn q(r: &Rational) -> String {
    r.to_string()
}

fn qs(v: &[Rational]) -> Vec<String> {
    v.iter().map(q).collect()
}

fn big(v: &[BigInt]) -> Vec<String> {
    v.iter().map(BigInt::to_string).collect()
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

fn lie_strings(rels: &[LieElement], names: &[String]) -> Vec<String> {
    rels.iter().map(|r| r.display_with(names).to_string()).collect()
}

#[derive(Serialize)]
struct CupEntry {
    i: usize,
    j: usize,
    class: usize,
    value: String,
}

#[derive(Serialize)]
struct CupJson {
    betti: usize,
    pivots: Vec<String>,
    h1_basis: Vec<String>,
    h2_classes: Vec<usize>,
    values: Vec<String>,
    entries: Vec<CupEntry>,
}

fn cup(req: &CommandRequest, input: &InputArgs) -> Result<String, Failure> {
    let p = read_presentation(input)?;
    let e = echelonize(&p);
    let t = holonomy::cup_table(&e)?;
    let names = p.names();
    let entries: Vec<CupEntry> =
        t.entries().into_iter().map(|(i, j, class, v)| CupEntry { i, j, class, value: q(&v) }).collect();
    let out = CupJson {
        betti: t.betti,
        pivots: e.pivots().iter().map(|&i| names[i - 1].clone()).collect(),
        h1_basis: e.h1_names(),
        h2_classes: t.classes.clone(),
        values: entries.iter().map(|e| e.value.clone()).collect(),
        entries,
    };
    emit(req, &out, || {
        let mut s = String::new();
        writeln!(s, "betti: {}", out.betti).unwrap();
        writeln!(s, "h1 basis: {}", out.h1_basis.join(" ")).unwrap();
        writeln!(s, "h2 classes: {}", join(&out.h2_classes)).unwrap();
        for e in &out.entries {
            writeln!(s, "(u{} ∪ u{}, w{}) = {}", e.i, e.j, e.class, e.value).unwrap();
        }
        s
    })
}

#[derive(Serialize)]
struct DerivedJson {
    level: usize,
    quotient_dims: Vec<usize>,
}

#[derive(Serialize)]
struct HolonomyJson {
    cap: usize,
    generators: Vec<String>,
    relations: Vec<String>,
    relation_sources: Vec<usize>,
    dropped_zero_relations: Vec<usize>,
    phi_bar: Vec<usize>,
    theta_bar: Vec<usize>,
    derived: Option<DerivedJson>,
    enveloping_series: Vec<String>,
}

fn holonomy_cmd(req: &CommandRequest, input: &InputArgs, level: Option<usize>) -> Result<String, Failure> {
    if level == Some(0) {
        return Err(Failure::input("bad_level", "level must be at least 1"));
    }
    let p = read_presentation(input)?;
    let e = echelonize(&p);
    let hp = holonomy::holonomy_presentation(&e)?;
    let levels: Vec<usize> = level.into_iter().collect();
    let r = holonomy::rank_report(&hp.lie, req.cap, &levels);
    let out = HolonomyJson {
        cap: req.cap,
        generators: hp.names.clone(),
        relations: lie_strings(hp.lie.relations(), &hp.names),
        relation_sources: hp.sources.clone(),
        dropped_zero_relations: hp.dropped.clone(),
        phi_bar: r.phi_bar.clone(),
        theta_bar: r.theta_bar.clone(),
        derived: r.derived.first().map(|(l, d)| DerivedJson { level: *l, quotient_dims: d.clone() }),
        enveloping_series: qs(r.hilbert.coeffs()),
    };
    emit(req, &out, || {
        let mut s = String::new();
        writeln!(s, "generators: {}", out.generators.join(" ")).unwrap();
        if out.relations.is_empty() {
            writeln!(s, "relations: none").unwrap();
        }
        for (rel, k) in out.relations.iter().zip(&out.relation_sources) {
            writeln!(s, "relation from w{k}: {rel}").unwrap();
        }
        if !out.dropped_zero_relations.is_empty() {
            writeln!(s, "dropped zero relations: {}", join(&out.dropped_zero_relations)).unwrap();
        }
        writeln!(s, "phi_bar: {}", join(&out.phi_bar)).unwrap();
        writeln!(s, "theta_bar: {}", join(&out.theta_bar)).unwrap();
        if let Some(d) = &out.derived {
            writeln!(s, "h/h^({}): {}", d.level, join(&d.quotient_dims)).unwrap();
        }
        writeln!(s, "U(h) series: {}", r.hilbert).unwrap();
        s
    })
}

#[derive(Serialize)]
struct ChenJson {
    cap: usize,
    level: usize,
    holonomy_dims: Vec<usize>,
    derived_dims: Vec<usize>,
    quotient_dims: Vec<usize>,
}

fn chen(req: &CommandRequest, input: &InputArgs, level: usize) -> Result<String, Failure> {
    if level == 0 {
        return Err(Failure::input("bad_level", "level must be at least 1"));
    }
    let p = read_presentation(input)?;
    let hp = holonomy::holonomy_presentation(&echelonize(&p))?;
    let g = graded_quotient(&hp.lie, req.cap).expect("validated presentation");
    let d = derived_dims(&g, level);
    let out = ChenJson { cap: req.cap, level, holonomy_dims: g.dims(), derived_dims: d.ideal, quotient_dims: d.quotient };
    emit(req, &out, || {
        format!(
            "h: {}\nh^({lvl}): {}\nh/h^({lvl}): {}\n",
            join(&out.holonomy_dims),
            join(&out.derived_dims),
            join(&out.quotient_dims),
            lvl = level
        )
    })
}

#[derive(Serialize)]
struct CombinatorialJson {
    verdict: &'static str,
    relators: Vec<usize>,
}

#[derive(Serialize)]
struct HilbertJson {
    through_degree: usize,
    agrees: bool,
    first_disagreement: Option<usize>,
    enveloping: Vec<String>,
    anick: Vec<String>,
}

#[derive(Serialize)]
struct MildJson {
    cap: usize,
    ordering: Vec<String>,
    weights: Vec<usize>,
    leading_words: Vec<String>,
    combinatorial: CombinatorialJson,
    hilbert: HilbertJson,
    lie_dims: Vec<usize>,
    certified: bool,
}

fn resolve_order(p: &GroupPresentation, order: &[String]) -> Result<Vec<usize>, Failure> {
    order
        .iter()
        .map(|s| {
            let s = s.trim();
            p.gen_index(s)
                .or_else(|| s.parse::<usize>().ok().filter(|&i| i >= 1 && i <= p.gen_count()))
                .ok_or_else(|| Failure::input("bad_order", format!("unknown generator `{s}` in --order")))
        })
        .collect()
}

fn mild(req: &CommandRequest, input: &InputArgs, order: Option<&[String]>) -> Result<String, Failure> {
    let p = read_presentation(input)?;
    let order = order.map(|o| resolve_order(&p, o)).transpose()?;
    let r = gradedgr::mildness_check(&p, req.cap, order.as_deref())?;
    let names = p.names();
    let word = |w: &[usize]| w.iter().map(|&l| names[l - 1].as_str()).collect::<Vec<_>>().join(" ");
    let combinatorial = match r.combinatorial {
        Combinatorial::Pass => CombinatorialJson { verdict: "pass", relators: vec![] },
        Combinatorial::Contains { outer, inner } => CombinatorialJson { verdict: "contains", relators: vec![outer, inner] },
        Combinatorial::Overlap { first, second } => CombinatorialJson { verdict: "overlap", relators: vec![first, second] },
    };
    let out = MildJson {
        cap: req.cap,
        ordering: r.ordering.iter().map(|&i| names[i - 1].clone()).collect(),
        weights: r.weights.clone(),
        leading_words: r.leading_words.iter().map(|w| word(w)).collect(),
        combinatorial,
        hilbert: HilbertJson {
            through_degree: r.hilbert.through_degree,
            agrees: r.hilbert.agrees(),
            first_disagreement: r.hilbert.first_disagreement,
            enveloping: qs(r.hilbert.enveloping.coeffs()),
            anick: qs(r.hilbert.anick.coeffs()),
        },
        lie_dims: r.lie_dims.clone(),
        certified: false,
    };
    emit(req, &out, || {
        let mut s = String::new();
        writeln!(s, "ordering: {}", out.ordering.join(" > ")).unwrap();
        writeln!(s, "weights: {}", join(&out.weights)).unwrap();
        writeln!(s, "leading words: {}", out.leading_words.join(", ")).unwrap();
        let c = &out.combinatorial;
        if c.relators.is_empty() {
            writeln!(s, "combinatorial check: pass").unwrap();
        } else {
            writeln!(s, "combinatorial check: {} (relators {})", c.verdict, join(&c.relators)).unwrap();
        }
        match out.hilbert.first_disagreement {
            None => writeln!(s, "hilbert check: consistent through degree {}", out.hilbert.through_degree).unwrap(),
            Some(k) => writeln!(s, "hilbert check: disagrees in degree {k}").unwrap(),
        }
        writeln!(s, "L dims: {}", join(&out.lie_dims)).unwrap();
        s
    })
}

#[derive(Serialize)]
struct DiscrepancyJson {
    degree: usize,
    phi_bar: usize,
    phi: usize,
}

#[derive(Serialize)]
struct OneRelatorJson {
    cap: usize,
    weight: usize,
    graded_formal: bool,
    initial_form: String,
    holonomy_generators: Vec<String>,
    holonomy_relations: Vec<String>,
    holonomy_series: Vec<String>,
    holonomy_dims: Vec<usize>,
    lcs_dims: Vec<usize>,
    discrepancy: Option<DiscrepancyJson>,
}

fn onerelator(req: &CommandRequest, input: &InputArgs) -> Result<String, Failure> {
    let p = read_presentation(input)?;
    let r = gradedgr::onerelator_report(&p, req.cap)?;
    let out = OneRelatorJson {
        cap: req.cap,
        weight: r.weight,
        graded_formal: r.graded_formal,
        initial_form: r.initial_form.display_with(p.names()).to_string(),
        holonomy_generators: r.holonomy_names.clone(),
        holonomy_relations: lie_strings(r.holonomy.relations(), &r.holonomy_names),
        holonomy_series: qs(r.holonomy_series.coeffs()),
        holonomy_dims: r.holonomy_dims.clone(),
        lcs_dims: r.lcs_dims.clone(),
        discrepancy: r.discrepancy.map(|(degree, phi_bar, phi)| DiscrepancyJson { degree, phi_bar, phi }),
    };
    emit(req, &out, || {
        let mut s = String::new();
        writeln!(s, "weight: {}", out.weight).unwrap();
        writeln!(s, "graded-formal: {}", out.graded_formal).unwrap();
        writeln!(s, "initial form: {}", out.initial_form).unwrap();
        writeln!(s, "U(h) series: {}", r.holonomy_series).unwrap();
        writeln!(s, "phi_bar: {}", join(&out.holonomy_dims)).unwrap();
        writeln!(s, "phi: {}", join(&out.lcs_dims)).unwrap();
        if let Some(d) = &out.discrepancy {
            writeln!(s, "degree {}: phi_bar = {}, phi = {}", d.degree, d.phi_bar, d.phi).unwrap();
        }
        s
    })
}

#[derive(Serialize)]
struct SeriesJson {
    operation: SeriesOp,
    cap: usize,
    input: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    coefficients: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    dims: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    first_negative: Option<Option<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    not_pbw: Option<NotPbwJson>,
}

#[derive(Serialize)]
struct NotPbwJson {
    degree: usize,
    value: String,
}

fn parse_coefficients(values: &[String]) -> Result<Vec<Rational>, Failure> {
    values
        .iter()
        .map(|v| {
            v.trim()
                .parse::<Rational>()
                .map_err(|_| Failure::input("bad_coefficient", format!("cannot parse `{v}` as a rational")))
        })
        .collect()
}

fn series_cmd(req: &CommandRequest, op: SeriesOp, values: &[String]) -> Result<String, Failure> {
    let coeffs = parse_coefficients(values)?;
    let cap = req.cap;
    let mut out = SeriesJson {
        operation: op,
        cap,
        input: qs(&coeffs),
        coefficients: None,
        dims: None,
        first_negative: None,
        not_pbw: None,
    };
    let series_err = |e: SeriesError| Failure::input("series", e.to_string());
    let text;
    match op {
        SeriesOp::Koszul => {
            let r = series::koszul_reciprocal(&RationalSeries::new(coeffs, cap)).map_err(series_err)?;
            out.coefficients = Some(qs(r.dual.coeffs()));
            out.first_negative = Some(r.first_negative);
            text = format!(
                "1/h(-t) = {}\n{}\n",
                r.dual,
                match r.first_negative {
                    Some(k) => format!("first negative coefficient in degree {k}: not Koszul"),
                    None => "no negative coefficient through the cap".to_string(),
                }
            );
        }
        SeriesOp::Pbw => {
            let dims = coeffs
                .iter()
                .map(|c| c.is_integer().then(|| c.to_integer()))
                .collect::<Option<Vec<BigInt>>>()
                .ok_or_else(|| Failure::input("bad_coefficient", "dimensions must be integers"))?;
            let s = series::pbw_series(&dims, cap).map_err(series_err)?;
            out.coefficients = Some(qs(s.coeffs()));
            text = format!("{s}\n");
        }
        SeriesOp::Invert => match series::pbw_invert(&RationalSeries::new(coeffs, cap)) {
            Ok(d) => {
                out.dims = Some(big(&d));
                text = format!("dims: {}\n", join(&d));
            }
            Err(SeriesError::NotPbw { degree, value }) => {
                text = format!("not a PBW series: degree {degree} would need dimension {value}\n");
                out.not_pbw = Some(NotPbwJson { degree, value: q(&value) });
            }
            Err(e) => return Err(series_err(e)),
        },
    }
    emit(req, &out, || text)
}

#[derive(Serialize)]
struct ProfileJson {
    center_dim: usize,
    derived_dims: Vec<usize>,
    metabelian: bool,
}

impl From<&fdlie::Profile> for ProfileJson {
    fn from(p: &fdlie::Profile) -> Self {
        ProfileJson { center_dim: p.center_dim, derived_dims: p.derived_dims.clone(), metabelian: p.metabelian }
    }
}

#[derive(Serialize)]
struct FdlieJson {
    dim: usize,
    valid: bool,
    violation: Option<Vec<usize>>,
    lcs_dims: Vec<usize>,
    graded: Value,
    original_profile: ProfileJson,
    graded_profile: ProfileJson,
    obstruction_found: bool,
    /// Profiles are necessary conditions only.
    isomorphism_certified: bool,
}

fn fdlie_cmd(req: &CommandRequest, input: &InputArgs) -> Result<String, Failure> {
    let sc = StructureConstants::from_json(&read_input(input)?).map_err(|e| Failure::input("fdlie", e.to_string()))?;
    let violation = match fdlie::validate(&sc) {
        Validation::Valid => None,
        Validation::Antisymmetry { i, j } => Some(vec![i, j]),
        Validation::Jacobi { i, j, k } => Some(vec![i, j, k]),
    };
    if let Some(v) = &violation {
        return Err(Failure::input("not_a_lie_algebra", format!("Lie axioms fail on basis indices {}", join(v))));
    }
    let f = fdlie::lcs_and_gr(&sc).map_err(|e| Failure::input("fdlie", e.to_string()))?;
    let p = fdlie::obstruction_profile(&sc).map_err(|e| Failure::input("fdlie", e.to_string()))?;
    let out = FdlieJson {
        dim: sc.dim(),
        valid: true,
        violation: None,
        lcs_dims: f.lcs_dims.clone(),
        graded: f.graded.to_json_value(),
        original_profile: (&p.original).into(),
        graded_profile: (&p.graded).into(),
        obstruction_found: p.obstruction_found(),
        isomorphism_certified: false,
    };
    emit(req, &out, || {
        let mut s = String::new();
        writeln!(s, "lcs dims: {}", join(&out.lcs_dims)).unwrap();
        for (label, pr) in [("g", &out.original_profile), ("gr(g)", &out.graded_profile)] {
            writeln!(
                s,
                "{label}: center {}, derived {}, metabelian {}",
                pr.center_dim,
                join(&pr.derived_dims),
                pr.metabelian
            )
            .unwrap();
        }
        if out.obstruction_found {
            writeln!(s, "obstruction found: g and gr(g) are not isomorphic").unwrap();
        } else {
            writeln!(s, "no obstruction found (necessary conditions only)").unwrap();
        }
        s
    })
}

#[derive(Serialize)]
struct RanksJson {
    phi: Vec<String>,
    phi_bar: Vec<String>,
    theta: Vec<String>,
    theta_bar: Vec<String>,
}

#[derive(Serialize)]
struct SeifertJson {
    invariants: SeifertInvariants,
    euler: String,
    generators: Vec<String>,
    relators: Vec<String>,
    closed_form: RanksJson,
    engine_phi_bar: Vec<usize>,
    engine_theta_bar: Vec<usize>,
    holonomy_generators: Vec<String>,
    holonomy_relations: Vec<String>,
}

fn seifert_cmd(req: &CommandRequest, input: &InputArgs) -> Result<String, Failure> {
    let s = SeifertInvariants::from_json(&read_input(input)?).map_err(|e| Failure::input("seifert", e.to_string()))?;
    let d = seifert::seifert_data(&s).map_err(|e| Failure::input("seifert", e.to_string()))?;
    let ranks = seifert::closed_form_ranks(&s, req.cap);
    let engine = holonomy::graded_invariants(&echelonize(&d.presentation), req.cap, &[])?;
    let (hol, hol_names) = seifert::holonomy_closed_form(&s);
    let names = d.presentation.names();
    let out = SeifertJson {
        invariants: s.clone(),
        euler: q(&d.euler),
        generators: names.to_vec(),
        relators: d.presentation.relators().iter().map(|r| r.display_with(names).to_string()).collect(),
        closed_form: RanksJson {
            phi: big(&ranks.phi),
            phi_bar: big(&ranks.phi_bar),
            theta: big(&ranks.theta),
            theta_bar: big(&ranks.theta_bar),
        },
        engine_phi_bar: engine.phi_bar.clone(),
        engine_theta_bar: engine.theta_bar.clone(),
        holonomy_generators: hol_names.clone(),
        holonomy_relations: lie_strings(hol.relations(), &hol_names),
    };
    emit(req, &out, || {
        let mut s = String::new();
        writeln!(s, "presentation: {}", d.presentation).unwrap();
        writeln!(s, "euler number: {}", out.euler).unwrap();
        writeln!(s, "phi: {}", out.closed_form.phi.join(", ")).unwrap();
        writeln!(s, "phi_bar: {}", out.closed_form.phi_bar.join(", ")).unwrap();
        writeln!(s, "theta: {}", out.closed_form.theta.join(", ")).unwrap();
        writeln!(s, "theta_bar: {}", out.closed_form.theta_bar.join(", ")).unwrap();
        writeln!(s, "engine phi_bar: {}", join(&out.engine_phi_bar)).unwrap();
        writeln!(s, "engine theta_bar: {}", join(&out.engine_theta_bar)).unwrap();
        s
    })
}

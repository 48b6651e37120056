//! Subcommands and their mapping onto the kernel.

use crate::parse::{parse_derivation, parse_jet, parse_ring, parse_series, ParseError};
use crate::report::Report;
use clap::{Args, Parser, Subcommand, ValueEnum};
use moore_algebra::deform::{classify_miniversal, integrate_infinitesimal, trivialize, DeformationJet, DeformationOverBase, Trivialization};
use moore_algebra::hochschild::{differential, hh_complex, hh_module, hh_trivial, CohomologyPresentation};
use moore_algebra::{normal_form, verify_equivalence, Error, GaugePair, GradingContext, Letter, MooreStructure, Ring, RingElement};
use serde_json::{json, Value};
use thiserror::Error as ThisError;

#[derive(Parser, Debug)]
#[command(name = "moore", version, about = "Exact computations with Moore structures on the cobar side")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Test whether a structure or derivation squares to zero.
    CheckStructure(CheckStructure),
    /// Act on a structure by a gauge pair (G, F).
    Conjugate(Conjugate),
    /// Bring an odd structure to the form m0 + u dtau.
    NormalForm(NormalForm),
    /// Hochschild cohomology of a normal-form or trivial structure.
    Hh(Hh),
    /// Check the structure equation of a deformation jet order by order.
    DeformCheck(JetCommand),
    /// Obstruction to extending a jet, with an extension when one exists.
    Obstruction(JetCommand),
    /// Remove the coefficients of a jet by automorphisms, or report where it sticks.
    Trivialize(Trivialize),
    /// Exponentiate an even cocycle to an automorphism jet.
    Integrate(Integrate),
    /// Classify a deformation of m0 over an augmented base.
    Classify(Classify),
    /// Check that a gauge pair carries one structure to another.
    VerifyEquivalence(VerifyEquivalence),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ParityArg {
    Odd,
    Even,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Coefficient ring, e.g. Q, Z, Z/6, F2, Q[x,y;3], Q{eps}.
    #[arg(long, default_value = "Q")]
    pub ring: String,
    /// The integer d; only its parity affects signs.
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["d_parity", "even", "odd"])]
    pub d: Option<i64>,
    #[arg(long, value_enum, conflicts_with_all = ["even", "odd"])]
    pub d_parity: Option<ParityArg>,
    /// Shorthand for --d 0.
    #[arg(long, conflicts_with = "odd")]
    pub even: bool,
    /// Shorthand for --d 1.
    #[arg(long)]
    pub odd: bool,
    /// Truncation order of all series.
    #[arg(long)]
    pub order: Option<usize>,
    /// Check coefficient degrees against the grading.
    #[arg(long)]
    pub strict: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Args, Debug, Clone, Default)]
pub struct StructureArgs {
    /// Even structure m0 + u dtau.
    #[arg(long, allow_hyphen_values = true)]
    pub u: Option<String>,
    /// Odd structure m0 + v dt + w dtau.
    #[arg(long, allow_hyphen_values = true)]
    pub v: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub w: Option<String>,
    /// The whole derivation, e.g. "m0 + t^2 dtau".
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["u", "v", "w"])]
    pub m: Option<String>,
}

#[derive(Args, Debug, Clone, Default)]
pub struct SecondStructureArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub u2: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub v2: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub w2: Option<String>,
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["u2", "v2", "w2"])]
    pub m2: Option<String>,
}

impl SecondStructureArgs {
    fn first(&self) -> StructureArgs {
        StructureArgs { u: self.u2.clone(), v: self.v2.clone(), w: self.w2.clone(), m: self.m2.clone() }
    }
}

#[derive(Args, Debug, Clone)]
pub struct PairArgs {
    /// G, the image of tau is tau + G(t) when t is odd.
    #[arg(long, allow_hyphen_values = true, default_value = "0")]
    pub g: String,
    /// F, the image of t.
    #[arg(long, allow_hyphen_values = true, default_value = "t")]
    pub f: String,
}

#[derive(Args, Debug)]
pub struct CheckStructure {
    #[command(flatten)]
    pub common: Common,
    #[command(flatten)]
    pub structure: StructureArgs,
}

#[derive(Args, Debug)]
pub struct Conjugate {
    #[command(flatten)]
    pub common: Common,
    #[command(flatten)]
    pub structure: StructureArgs,
    #[command(flatten)]
    pub pair: PairArgs,
}

#[derive(Args, Debug)]
pub struct NormalForm {
    #[command(flatten)]
    pub common: Common,
    #[command(flatten)]
    pub structure: StructureArgs,
}

#[derive(Args, Debug)]
pub struct Hh {
    #[command(flatten)]
    pub common: Common,
    #[command(flatten)]
    pub structure: StructureArgs,
    /// Series precision; defaults to what the computation needs.
    #[arg(long)]
    pub precision: Option<usize>,
    /// Compute from the full complex without checking module hypotheses.
    #[arg(long)]
    pub complex: bool,
}

#[derive(Args, Debug)]
pub struct JetCommand {
    #[command(flatten)]
    pub common: Common,
    #[command(flatten)]
    pub structure: StructureArgs,
    /// Coefficients, e.g. "m1: t dt; m2: t^2 dtau".
    #[arg(long, allow_hyphen_values = true)]
    pub jet: String,
    /// Degree of the deformation parameter s.
    #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
    pub s_degree: i64,
}

#[derive(Args, Debug)]
pub struct Trivialize {
    #[command(flatten)]
    pub jet: JetCommand,
    #[arg(long)]
    pub max_order: Option<usize>,
}

#[derive(Args, Debug)]
pub struct Integrate {
    #[command(flatten)]
    pub common: Common,
    #[command(flatten)]
    pub structure: StructureArgs,
    /// An even cocycle, e.g. "t dt".
    #[arg(long, allow_hyphen_values = true)]
    pub phi: String,
    /// The power of s multiplying phi.
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    /// Order in s of the resulting jet.
    #[arg(long, default_value_t = 3)]
    pub jet_order: usize,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
    pub s_degree: i64,
}

#[derive(Args, Debug)]
pub struct Classify {
    #[command(flatten)]
    pub common: Common,
    #[command(flatten)]
    pub structure: StructureArgs,
}

#[derive(Args, Debug)]
pub struct VerifyEquivalence {
    #[command(flatten)]
    pub common: Common,
    #[command(flatten)]
    pub structure: StructureArgs,
    #[command(flatten)]
    pub second: SecondStructureArgs,
    #[command(flatten)]
    pub pair: PairArgs,
}

/// Why a command did not produce a positive report.
#[derive(Debug, ThisError)]
pub enum Failure {
    #[error("{what}: {err}")]
    Parse { what: String, err: ParseError },
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Kernel(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Kernel(e)
    }
}

/// Kernel errors that signal bad input rather than a mathematical answer.
fn is_usage_error(e: &Error) -> bool {
    matches!(
        e,
        Error::OddGeneratorDegree { .. }
            | Error::ModulusTooSmall(_)
            | Error::DuplicateGenerator(_)
            | Error::UnknownGenerator(_)
            | Error::MixedRings
            | Error::ContextMismatch
            | Error::InvalidOrder(_)
            | Error::ConstantTerm(_)
            | Error::NotNormalised
    )
}

/// The printed report and the process exit code.
#[derive(Debug)]
pub struct Outcome {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

const DEFAULT_ORDER: usize = 10;

/// Runs a parsed command line.
pub fn run(cli: &Cli) -> Outcome {
    let (name, common) = match &cli.command {
        Command::CheckStructure(c) => ("check-structure", &c.common),
        Command::Conjugate(c) => ("conjugate", &c.common),
        Command::NormalForm(c) => ("normal-form", &c.common),
        Command::Hh(c) => ("hh", &c.common),
        Command::DeformCheck(c) => ("deform-check", &c.common),
        Command::Obstruction(c) => ("obstruction", &c.common),
        Command::Trivialize(c) => ("trivialize", &c.jet.common),
        Command::Integrate(c) => ("integrate", &c.common),
        Command::Classify(c) => ("classify", &c.common),
        Command::VerifyEquivalence(c) => ("verify-equivalence", &c.common),
    };
    let mut report = Report::new(name);
    let result = match &cli.command {
        Command::CheckStructure(c) => check_structure(c, &mut report),
        Command::Conjugate(c) => conjugate(c, &mut report),
        Command::NormalForm(c) => normal_form_cmd(c, &mut report),
        Command::Hh(c) => hh(c, &mut report),
        Command::DeformCheck(c) => deform_check(c, &mut report),
        Command::Obstruction(c) => obstruction(c, &mut report),
        Command::Trivialize(c) => trivialize_cmd(c, &mut report),
        Command::Integrate(c) => integrate(c, &mut report),
        Command::Classify(c) => classify(c, &mut report),
        Command::VerifyEquivalence(c) => verify(c, &mut report),
    };
    let render = |r: &Report| match common.format {
        Format::Text => r.render_text(),
        Format::Json => r.render_json() + "\n",
    };
    match result {
        Ok(positive) => Outcome { exit_code: if positive { 0 } else { 1 }, stdout: render(&report), stderr: String::new() },
        Err(Failure::Kernel(e)) if !is_usage_error(&e) => {
            report.set("error", e.to_string());
            Outcome { exit_code: 1, stdout: render(&report), stderr: format!("moore {name}: {e}\n") }
        }
        Err(e) => Outcome { exit_code: 2, stdout: String::new(), stderr: format!("moore {name}: {e}\n") },
    }
}

struct Setup {
    ring: Ring,
    ctx: GradingContext,
}

fn parsed<T>(what: &str, r: Result<T, ParseError>) -> Result<T, Failure> {
    r.map_err(|err| Failure::Parse { what: what.into(), err })
}

/// Resolves ring and grading; parity falls back to what the structure
/// flags imply, then to odd.
fn setup(common: &Common, implied_even: Option<bool>, default_order: usize, report: &mut Report) -> Result<Setup, Failure> {
    let ring = parsed("--ring", parse_ring(&common.ring))?;
    let d = match (common.d, common.d_parity, common.even, common.odd) {
        (Some(d), ..) => d,
        (_, Some(ParityArg::Even), ..) | (_, _, true, _) => 0,
        (_, Some(ParityArg::Odd), ..) | (_, _, _, true) => 1,
        _ => i64::from(!implied_even.unwrap_or(false)),
    };
    let order = common.order.unwrap_or(default_order);
    let ctx = GradingContext::new(d, order)?.strict(common.strict);
    report.input("ring", ring.spec().to_string());
    report.input("d", d);
    report.input("order", order);
    report.input("strict", common.strict);
    Ok(Setup { ring, ctx })
}

fn implied_even(s: &StructureArgs) -> Option<bool> {
    if s.u.is_some() {
        Some(true)
    } else if s.v.is_some() || s.w.is_some() {
        Some(false)
    } else {
        None
    }
}

fn structure(s: &StructureArgs, st: &Setup, suffix: &str, report: &mut Report) -> Result<MooreStructure<RingElement>, Failure> {
    let flag = |name: &str| format!("--{name}{suffix}");
    let series = |name: &str, text: &str| parsed(&flag(name), parse_series(text, &st.ring, st.ctx, false));
    if let Some(m) = &s.m {
        report.input(&format!("m{suffix}"), m.as_str());
        let d = parsed(&flag("m"), parse_derivation(m, &st.ring, st.ctx))?;
        return Ok(MooreStructure::from_derivation(&d)?);
    }
    if let Some(u) = &s.u {
        if s.v.is_some() || s.w.is_some() {
            return Err(Failure::Usage(format!("{} cannot be combined with {} or {}", flag("u"), flag("v"), flag("w"))));
        }
        report.input(&format!("u{suffix}"), u.as_str());
        return Ok(MooreStructure::even(series("u", u)?)?);
    }
    if s.v.is_none() && s.w.is_none() {
        return Ok(MooreStructure::trivial(&st.ring, st.ctx));
    }
    let v = s.v.as_deref().unwrap_or("0");
    let w = s.w.as_deref().unwrap_or("0");
    report.input(&format!("v{suffix}"), v);
    report.input(&format!("w{suffix}"), w);
    Ok(MooreStructure::odd(series("v", v)?, series("w", w)?)?)
}

fn pair(p: &PairArgs, st: &Setup, report: &mut Report) -> Result<GaugePair<RingElement>, Failure> {
    report.input("g", p.g.as_str());
    report.input("f", p.f.as_str());
    let g = parsed("--g", parse_series(&p.g, &st.ring, st.ctx, false))?;
    let f = parsed("--f", parse_series(&p.f, &st.ring, st.ctx, false))?;
    Ok(GaugePair::new(g, f)?)
}

fn describe(m: &MooreStructure<RingElement>) -> Value {
    let mut out = serde_json::Map::new();
    out.insert("structure".into(), m.to_string().into());
    out.insert("d".into(), m.context().d().into());
    if let Some(u) = m.u() {
        out.insert("u".into(), u.to_string().into());
    }
    if let (Some(v), Some(w)) = (m.v(), m.w()) {
        out.insert("v".into(), v.to_string().into());
        out.insert("w".into(), w.to_string().into());
    }
    Value::Object(out)
}

fn check_structure(c: &CheckStructure, report: &mut Report) -> Result<bool, Failure> {
    let st = setup(&c.common, implied_even(&c.structure), DEFAULT_ORDER, report)?;
    let d = match &c.structure.m {
        Some(m) => {
            report.input("m", m.as_str());
            parsed("--m", parse_derivation(m, &st.ring, st.ctx))?
        }
        None => structure(&c.structure, &st, "", report)?.derivation(),
    };
    report.trusted_order = Some(st.ctx.order());
    report.set("derivation", d.to_string());
    let check = d.square_zero_check()?;
    let holds = check.holds();
    report.set("square_zero", holds);
    if let Some((letter, word, coeff)) = &check.witness {
        report.set("witness", json!({ "generator": if *letter == Letter::Tau { "tau" } else { "t" }, "word": word.to_string(), "coefficient": coeff.to_string() }));
    }
    if holds {
        if let Ok(m) = MooreStructure::from_derivation(&d) {
            report.set("moore_form", describe(&m));
        }
    }
    Ok(holds)
}

fn conjugate(c: &Conjugate, report: &mut Report) -> Result<bool, Failure> {
    let st = setup(&c.common, implied_even(&c.structure), DEFAULT_ORDER, report)?;
    let m = structure(&c.structure, &st, "", report)?;
    let p = pair(&c.pair, &st, report)?;
    let moved = p.act(&m)?;
    let oracle = p.act_by_conjugation(&m)?;
    report.trusted_order = Some(moved.precision());
    report.set("pair", p.to_string());
    report.set("image", describe(&moved));
    report.set("matches_conjugation", moved.agrees_with(&oracle));
    Ok(true)
}

fn normal_form_cmd(c: &NormalForm, report: &mut Report) -> Result<bool, Failure> {
    let st = setup(&c.common, implied_even(&c.structure), DEFAULT_ORDER, report)?;
    let m = structure(&c.structure, &st, "", report)?;
    let (p, u) = normal_form(&m)?;
    let normal = p.act(&m)?;
    report.trusted_order = Some(normal.precision());
    report.set("gauge", p.to_string());
    report.set("g", p.g().to_string());
    report.set("f", p.f().to_string());
    report.set("u", u.to_string());
    report.set("normal_form", normal.to_string());
    Ok(true)
}

fn presentation(h: &CohomologyPresentation<RingElement>, report: &mut Report) {
    report.set("module", h.invariants().to_string());
    report.set("free_rank", h.free_rank());
    report.set("annihilators", h.annihilators().iter().map(|a| Value::from(a.to_string())).collect::<Vec<_>>());
    let classes = h
        .classes
        .iter()
        .map(|c| {
            json!({
                "annihilator": c.annihilator.to_string(),
                "representative": c.representative.to_string(),
                "degree": c.degree(),
            })
        })
        .collect::<Vec<_>>();
    report.set("classes", classes);
}

fn hh(c: &Hh, report: &mut Report) -> Result<bool, Failure> {
    let order = c.common.order.unwrap_or(DEFAULT_ORDER);
    let probe = Common { order: Some(order + 2), format: c.common.format, ..c.common.clone() };
    let mut scratch = Report::new("hh");
    let st0 = setup(&probe, implied_even(&c.structure), order, &mut scratch)?;
    let m0 = structure(&c.structure, &st0, "", &mut scratch)?;
    let val = m0.w().map_or(0, |w| if w.is_zero() { 0 } else { w.valuation() });
    let precision = c.precision.unwrap_or(order + val.max(1) + 1);
    let common = Common { order: Some(precision), ..c.common.clone() };
    let st = setup(&common, implied_even(&c.structure), precision, report)?;
    report.input("hh_order", order);
    report.input("complex", c.complex);
    let m = structure(&c.structure, &st, "", report)?;
    report.trusted_order = Some(order);
    let trivial = m.agrees_with(&MooreStructure::trivial(&st.ring, st.ctx));
    let h = if c.complex {
        report.set("method", "complex");
        hh_complex(&m, order)?
    } else if trivial && st.ctx.t_is_odd() {
        report.set("method", "trivial");
        let t = hh_trivial::<RingElement>(&st.ring, st.ctx, order)?;
        let table = t.bracket_table()?;
        report.set("bracket_formulas_agree", table.iter().all(|e| e.agrees()));
        t.presentation
    } else {
        report.set("method", "module");
        let h = hh_module(&m, order)?;
        report.set("bracket_vanishes", h.bracket_vanishes(&m)?);
        h
    };
    presentation(&h, report);
    Ok(true)
}

fn jet_setup(c: &JetCommand, report: &mut Report) -> Result<(MooreStructure<RingElement>, DeformationJet), Failure> {
    let st = setup(&c.common, implied_even(&c.structure), DEFAULT_ORDER, report)?;
    let m = structure(&c.structure, &st, "", report)?;
    report.input("jet", c.jet.as_str());
    report.input("s_degree", c.s_degree);
    let coeffs = parsed("--jet", parse_jet(&c.jet, &st.ring, st.ctx))?;
    let jet = DeformationJet::new(&m, &coeffs, c.s_degree)?;
    report.trusted_order = Some(st.ctx.order());
    report.set("jet_order", jet.order());
    Ok((m, jet))
}

fn deform_check(c: &JetCommand, report: &mut Report) -> Result<bool, Failure> {
    let (_, jet) = jet_setup(c, report)?;
    let failure = jet.first_failure();
    report.set("valid", failure.is_none());
    report.set("first_failure", failure);
    Ok(failure.is_none())
}

fn obstruction(c: &JetCommand, report: &mut Report) -> Result<bool, Failure> {
    let (m, jet) = jet_setup(c, report)?;
    let obs = jet.obstruction()?;
    report.set("obstruction", obs.to_string());
    report.set("cocycle", differential(&obs, &m)?.is_zero());
    let ext = jet.extension()?;
    report.set("extendable", ext.is_some());
    report.set("extension", ext.as_ref().map(|e| e.to_string()));
    Ok(ext.is_some())
}

fn trivialize_cmd(c: &Trivialize, report: &mut Report) -> Result<bool, Failure> {
    let (_, jet) = jet_setup(&c.jet, report)?;
    let max = c.max_order.unwrap_or(jet.order());
    report.input("max_order", max);
    let outcome = trivialize(&jet, max)?;
    let steps = outcome
        .steps()
        .iter()
        .map(|s| json!({ "order": s.order, "xi": s.xi.to_string() }))
        .collect::<Vec<_>>();
    report.set("steps", steps);
    match outcome {
        Trivialization::Trivial { gauge, .. } => {
            report.set("trivial", true);
            report.set("gauge", gauge.to_string());
            Ok(true)
        }
        Trivialization::Stuck { order, class, .. } => {
            report.set("trivial", false);
            report.set("stuck_at", order);
            report.set("class", class.to_string());
            Ok(false)
        }
    }
}

fn integrate(c: &Integrate, report: &mut Report) -> Result<bool, Failure> {
    let st = setup(&c.common, implied_even(&c.structure), DEFAULT_ORDER, report)?;
    let m = structure(&c.structure, &st, "", report)?;
    report.input("phi", c.phi.as_str());
    report.input("k", c.k);
    report.input("jet_order", c.jet_order);
    report.input("s_degree", c.s_degree);
    let phi = parsed("--phi", parse_derivation(&c.phi, &st.ring, st.ctx))?;
    let auto = integrate_infinitesimal(&phi, c.k, c.jet_order, &m, c.s_degree)?;
    report.trusted_order = Some(st.ctx.order());
    report.set("automorphism", auto.to_string());
    report.set("commutes", auto.commutes_with(&m));
    Ok(true)
}

fn classify(c: &Classify, report: &mut Report) -> Result<bool, Failure> {
    let st = setup(&c.common, implied_even(&c.structure), DEFAULT_ORDER, report)?;
    let m = structure(&c.structure, &st, "", report)?;
    let d = DeformationOverBase::new(m)?;
    let cls = classify_miniversal(&d)?;
    report.trusted_order = Some(st.ctx.order());
    report.set("gauge", cls.gauge.to_string());
    report.set("map", cls.map.to_string());
    report.set("universal", cls.universal.deformation.to_string());
    report.set("unique", cls.unique);
    Ok(true)
}

fn verify(c: &VerifyEquivalence, report: &mut Report) -> Result<bool, Failure> {
    let first = &c.structure;
    let second = c.second.first();
    let implied = implied_even(first).or(implied_even(&second));
    let st = setup(&c.common, implied, DEFAULT_ORDER, report)?;
    let m1 = structure(first, &st, "", report)?;
    let m2 = structure(&second, &st, "2", report)?;
    let p = pair(&c.pair, &st, report)?;
    let holds = verify_equivalence(&p, &m1, &m2)?;
    let image = p.act(&m1)?;
    report.trusted_order = Some(image.precision().min(m2.precision()));
    report.set("equivalent", holds);
    report.set("image", image.to_string());
    Ok(holds)
}

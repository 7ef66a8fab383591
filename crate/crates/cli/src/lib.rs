//! The `triangles` command line: weakest preconditions for guarded-command
//! programs, monad and effect-algebra law suites, enumeration, and
//! transposition between Kleisli arrows and predicate transformers.
//!
//! Exit codes: 0 on success, 1 when a verification fails, 2 on a usage
//! error (bad flags, unreadable or ill-formed input).

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use triangles_core::effect::rat::fraction_string;
use triangles_core::effect::{
    check_mv_identities, parse_rat, unit_grid, validate_effect_algebra, Distribution, EffectReport, PowersetEffect,
    TruncatedUnitInterval, UnitInterval,
};
use triangles_core::monads::registry::{list_elements, run_laws};
use triangles_core::monads::{LawConfig, LawReport, MonadId};
use triangles_core::order::literal::{parse_object, poset_json};
use triangles_core::order::FinPoset;
use triangles_core::transformers::{certify_by_id, transpose_json, CertReport, CorrespondenceId, Direction};
use triangles_core::wp::{
    check_healthiness, check_roundtrip, default_probes, denote_dist, denote_pow, parse, parse_expr, wp_table, Flavor,
    Mode, Program, StateSpace,
};
use triangles_core::{Error, Strategy};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "triangles", version, about = "Kleisli arrows, predicate transformers and weakest preconditions")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Table)]
    format: Format,
    /// Run suites on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Weakest precondition of a program.
    Wp(WpArgs),
    /// Run a program from an initial state or distribution.
    Run(RunArgs),
    /// Monad-law or effect-algebra suites.
    Laws(LawsArgs),
    /// List an object, or the elements of T(X).
    Enumerate(EnumerateArgs),
    /// Transpose an arrow or transformer along a correspondence.
    Transpose(TransposeArgs),
    /// Certify that transposition is a bijection.
    Certify(CertifyArgs),
}

#[derive(Args, Debug)]
struct WpArgs {
    /// Program file.
    program: PathBuf,
    #[arg(long, value_parser = parse_mode, default_value = "pow")]
    mode: Mode,
    /// demonic or angelic in pow mode, expectation in dist mode.
    #[arg(long, value_parser = parse_flavor)]
    flavor: Option<Flavor>,
    /// Postcondition, overriding the program's own.
    #[arg(long)]
    post: Option<String>,
    /// Also compare against the whole-program denotation and check healthiness.
    #[arg(long)]
    check: bool,
    /// Seed for the random probes used by --check.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Debug)]
struct RunArgs {
    program: PathBuf,
    #[arg(long, value_parser = parse_mode, default_value = "pow")]
    mode: Mode,
    /// A state label (`x=0,y=1`), a JSON list of labels (pow) or a JSON
    /// object of label to probability (dist). Defaults to the first state.
    #[arg(long)]
    init: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum EffectKind {
    /// P(X) with disjoint union.
    Powerset,
    /// The rational grid in [0,1].
    Unit,
    /// The grid with truncated sum.
    Truncated,
    /// MV identities on the grid.
    Mv,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("suite").required(true).args(["monad", "effect"])))]
struct LawsArgs {
    #[arg(long)]
    monad: Option<String>,
    #[arg(long, value_enum)]
    effect: Option<EffectKind>,
    /// Largest object (monads) or carrier (powerset effect).
    #[arg(long)]
    max_size: Option<usize>,
    /// Largest denominator of the [0,1] grid.
    #[arg(long, default_value_t = 6)]
    max_den: u32,
    #[arg(long)]
    seed: Option<u64>,
    /// Largest case count checked exhaustively per law and object tuple.
    #[arg(long)]
    budget: Option<u128>,
    /// Cases drawn when the budget is exceeded.
    #[arg(long)]
    samples: Option<usize>,
}

#[derive(Args, Debug)]
struct EnumerateArgs {
    /// Object literal, e.g. `poset V { elems a b c; covers a<b a<c; }` or `{x, y}`.
    object: String,
    /// List T(X) for this monad instead of the object itself.
    #[arg(long)]
    monad: Option<String>,
}

#[derive(Args, Debug)]
struct TransposeArgs {
    #[arg(long)]
    correspondence: String,
    /// Domain object literal.
    #[arg(long)]
    x: String,
    /// Codomain object literal.
    #[arg(long)]
    y: String,
    #[arg(long, value_enum, default_value_t = DirectionArg::Forward)]
    direction: DirectionArg,
    /// JSON input, or `@file`.
    #[arg(long)]
    input: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum DirectionArg {
    Forward,
    Backward,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("objects").required(true).args(["sizes", "x"])))]
struct CertifyArgs {
    #[arg(long)]
    correspondence: String,
    /// `n,m`: every object with n points against every object with m points.
    #[arg(long, value_parser = parse_sizes)]
    sizes: Option<(usize, usize)>,
    #[arg(long, requires = "y")]
    x: Option<String>,
    #[arg(long, requires = "x")]
    y: Option<String>,
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_flavor(s: &str) -> Result<Flavor, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_sizes(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or("expected `n,m`")?;
    let n = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("`{t}`: {e}"));
    Ok((n(a)?, n(b)?))
}

/// Why a command did not succeed.
enum Failure {
    Usage(String),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

struct Ctx<'a> {
    format: Format,
    strategy: Strategy,
    out: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn emit(&mut self, json: &Value, table: impl FnOnce() -> String) -> Outcome {
        let text = match self.format {
            Format::Json => serde_json::to_string_pretty(json).expect("serializable"),
            Format::Table => table(),
        };
        writeln!(self.out, "{}", text.trim_end()).map_err(|e| Failure::Usage(e.to_string()))
    }
}

/// Runs the command line and returns the process exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{rendered}")
            } else {
                write!(out, "{rendered}")
            };
            return code;
        }
    };
    let mut ctx = Ctx {
        format: cli.format,
        strategy: if cli.sequential {
            Strategy::Sequential
        } else {
            Strategy::default()
        },
        out,
    };
    let result = match cli.command {
        Command::Wp(a) => wp_cmd(&mut ctx, a),
        Command::Run(a) => run_cmd(&mut ctx, a),
        Command::Laws(a) => laws_cmd(&mut ctx, a),
        Command::Enumerate(a) => enumerate_cmd(&mut ctx, a),
        Command::Transpose(a) => transpose_cmd(&mut ctx, a),
        Command::Certify(a) => certify_cmd(&mut ctx, a),
    };
    exit_code(result, err)
}

fn exit_code(result: Outcome, err: &mut dyn Write) -> i32 {
    match result {
        Ok(()) => EXIT_OK,
        Err(Failure::Verification) => EXIT_FAILED,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn load_program(path: &PathBuf) -> Result<Program, Failure> {
    let src = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    parse(&src).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn wp_cmd(ctx: &mut Ctx, a: WpArgs) -> Outcome {
    let flavor = a.flavor.unwrap_or(a.mode.default_flavor());
    if flavor.mode() != a.mode {
        return Err(Failure::Usage(format!("the {flavor} flavor needs --mode {}", flavor.mode())));
    }
    let p = load_program(&a.program)?;
    let post = a.post.as_deref().map(|s| parse_expr(&p, s)).transpose()?;
    let table = wp_table(&p, flavor, post.as_ref())?;
    if !a.check {
        return ctx.emit(&table.to_json(), || table.to_table());
    }
    let space = StateSpace::of(&p)?;
    let probes = default_probes(&space, a.mode, a.seed);
    let rt = check_roundtrip(&p, flavor, &probes)?;
    let health = check_healthiness(&p, a.mode, &probes)?;
    let passed = rt.passed() && health.iter().all(|h| h.passed());
    let mut json = table.to_json();
    json["check"] = json!({
        "seed": a.seed,
        "probes": rt.probes,
        "roundtrip": rt.mismatches.iter().map(|m| json!({
            "probe": m.probe, "state": m.state,
            "compositional": m.compositional, "denotational": m.denotational,
        })).collect::<Vec<_>>(),
        "invariants": health.iter().map(|h| json!({
            "name": h.name, "cases": h.cases, "passed": h.passed(), "witness": h.witness,
        })).collect::<Vec<_>>(),
        "passed": passed,
    });
    ctx.emit(&json, || {
        let mut s = table.to_table();
        let _ = writeln!(s, "\nround trip against the denotation ({} probes, seed {}): {}", rt.probes, a.seed, verdict(rt.passed()));
        for m in &rt.mismatches {
            let _ = writeln!(s, "  probe {} at {}: {} vs {}", m.probe, m.state, m.compositional, m.denotational);
        }
        for h in &health {
            let _ = writeln!(s, "{:<14} {:>5} cases  {}", h.name, h.cases, verdict(h.passed()));
            if let Some(w) = &h.witness {
                let _ = writeln!(s, "  witness: {w}");
            }
        }
        s
    })?;
    if passed {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

fn run_cmd(ctx: &mut Ctx, a: RunArgs) -> Outcome {
    let p = load_program(&a.program)?;
    let space = StateSpace::of(&p)?;
    if space.is_empty() {
        return Err(Failure::Usage("empty state space".into()));
    }
    let init = a.init.as_deref().map(str::trim);
    let bad_json = |e: serde_json::Error| Failure::Usage(format!("--init: {e}"));
    match a.mode {
        Mode::Pow => {
            let start: Vec<usize> = match init {
                None => vec![0],
                Some(t) if t.starts_with('[') => {
                    let labels: Vec<String> = serde_json::from_str(t).map_err(bad_json)?;
                    labels.iter().map(|l| space.parse_state(l)).collect::<Result<_, _>>()?
                }
                Some(t) => vec![space.parse_state(t)?],
            };
            let f = denote_pow(&p)?;
            let mut reached: Vec<usize> = start.iter().flat_map(|&s| f.apply(s).iter()).collect();
            reached.sort_unstable();
            reached.dedup();
            let labels: Vec<&str> = reached.iter().map(|&s| space.label(s)).collect();
            let from: Vec<&str> = start.iter().map(|&s| space.label(s)).collect();
            ctx.emit(&json!({ "init": from, "states": labels }), || {
                if labels.is_empty() {
                    "no final states".to_string()
                } else {
                    labels.join("\n")
                }
            })
        }
        Mode::Dist => {
            let start = match init {
                None => Distribution::dirac(space.len(), 0),
                Some(t) if t.starts_with('{') => {
                    let weights: Map<String, Value> = serde_json::from_str(t).map_err(bad_json)?;
                    let entries = weights
                        .iter()
                        .map(|(k, v)| {
                            let text = v
                                .as_str()
                                .map(str::to_string)
                                .unwrap_or_else(|| v.to_string());
                            Ok((space.parse_state(k)?, parse_rat(&text)?))
                        })
                        .collect::<Result<Vec<_>, Error>>()?;
                    Distribution::new(space.len(), entries)?
                }
                Some(t) => Distribution::dirac(space.len(), space.parse_state(t)?),
            };
            let f = denote_dist(&p)?;
            let out = start.bind(f.images())?;
            let rows: Vec<(String, String)> = out
                .support()
                .map(|(s, w)| (space.label(s).to_string(), fraction_string(w)))
                .collect();
            let json_of = |d: &Distribution| {
                Value::Object(
                    d.support()
                        .map(|(s, w)| (space.label(s).to_string(), json!(fraction_string(w))))
                        .collect(),
                )
            };
            ctx.emit(&json!({ "init": json_of(&start), "distribution": json_of(&out) }), || {
                let width = rows.iter().map(|r| r.0.len()).max().unwrap_or(0).max(5);
                let mut s = format!("{:<width$}  probability\n", "state");
                for (l, w) in &rows {
                    let _ = writeln!(s, "{l:<width$}  {w}");
                }
                s
            })
        }
    }
}

fn law_json(r: &LawReport) -> Value {
    json!({
        "monad": r.monad,
        "max_size": r.max_size,
        "objects": r.objects,
        "seed": r.seed,
        "sampled": r.sampled(),
        "laws": r.tallies.iter().map(|t| json!({
            "law": t.law,
            "cases": u64::try_from(t.cases).unwrap_or(u64::MAX),
            "exhaustive": t.exhaustive,
        })).collect::<Vec<_>>(),
        "failures": r.failures.iter().map(|f| json!({
            "law": f.law, "objects": f.objects, "witness": f.witness,
        })).collect::<Vec<_>>(),
        "passed": r.passed(),
    })
}

fn law_table(r: &LawReport) -> String {
    let mut s = format!(
        "{}: objects up to size {} ({} objects, seed {})\n",
        r.monad, r.max_size, r.objects, r.seed
    );
    for t in &r.tallies {
        let how = if t.exhaustive { "exhaustive" } else { "sampled" };
        let failed = r.failures.iter().any(|f| f.law == t.law);
        let _ = writeln!(s, "  {:<16} {:>10} cases  {:<10}  {}", t.law, t.cases, how, verdict(!failed));
    }
    for f in &r.failures {
        let _ = writeln!(s, "  {} failed on {}: {}", f.law, f.objects, f.witness);
    }
    let _ = write!(s, "{}", verdict(r.passed()));
    s
}

fn effect_json(r: &EffectReport) -> Value {
    json!({
        "instance": r.name,
        "probes": r.probes,
        "axioms": r.axioms.iter().map(|a| json!({
            "axiom": a.axiom, "passed": a.passed, "counterexample": a.counterexample,
        })).collect::<Vec<_>>(),
        "passed": r.passed(),
    })
}

fn effect_table(r: &EffectReport) -> String {
    let mut s = format!("{} ({} probes)\n", r.name, r.probes);
    for a in &r.axioms {
        let _ = writeln!(s, "  {:<36} {}", a.axiom, verdict(a.passed));
        if let Some(c) = &a.counterexample {
            let _ = writeln!(s, "    counterexample: {c}");
        }
    }
    let _ = write!(s, "{}", verdict(r.passed()));
    s
}

fn laws_cmd(ctx: &mut Ctx, a: LawsArgs) -> Outcome {
    let passed = if let Some(name) = &a.monad {
        let id: MonadId = name.parse()?;
        let mut cfg = LawConfig::new(a.max_size.unwrap_or(id.default_law_size()));
        if let Some(seed) = a.seed {
            cfg = cfg.seed(seed);
        }
        if let Some(b) = a.budget {
            cfg = cfg.exhaustive_budget(b);
        }
        if let Some(n) = a.samples {
            cfg = cfg.samples(n);
        }
        let r = run_laws(id, &cfg, ctx.strategy)?;
        ctx.emit(&law_json(&r), || law_table(&r))?;
        r.passed()
    } else {
        let report = match a.effect.expect("clap requires a suite") {
            EffectKind::Powerset => validate_effect_algebra(
                &PowersetEffect {
                    size: a.max_size.unwrap_or(3),
                },
                ctx.strategy,
            ),
            EffectKind::Unit => validate_effect_algebra(&UnitInterval { max_den: a.max_den }, ctx.strategy),
            EffectKind::Truncated => {
                validate_effect_algebra(&TruncatedUnitInterval { max_den: a.max_den }, ctx.strategy)
            }
            EffectKind::Mv => {
                let checks = check_mv_identities(&unit_grid(a.max_den));
                let passed = checks.iter().all(|c| c.passed());
                let json = json!({
                    "grid_max_den": a.max_den,
                    "identities": checks.iter().map(|c| json!({
                        "identity": c.name,
                        "cases": c.cases,
                        "passed": c.passed(),
                        "counterexample": c.counterexample.as_ref().map(|(x, y)| [fraction_string(x), fraction_string(y)]),
                    })).collect::<Vec<_>>(),
                    "passed": passed,
                });
                ctx.emit(&json, || {
                    let mut s = format!("MV identities on the grid with denominators up to {}\n", a.max_den);
                    for c in &checks {
                        let _ = writeln!(s, "  {:<32} {:>6} cases  {}", c.name, c.cases, verdict(c.passed()));
                    }
                    s.push_str(verdict(passed));
                    s
                })?;
                return if passed { Ok(()) } else { Err(Failure::Verification) };
            }
        };
        ctx.emit(&effect_json(&report), || effect_table(&report))?;
        report.passed()
    };
    if passed {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn object(text: &str) -> Result<FinPoset, Failure> {
    Ok(parse_object(text)?.poset)
}

fn enumerate_cmd(ctx: &mut Ctx, a: EnumerateArgs) -> Outcome {
    let x = object(&a.object)?;
    if let Some(name) = &a.monad {
        let id: MonadId = name.parse()?;
        let listing = list_elements(id, &x)?;
        return ctx.emit(&listing.to_json(), || {
            let mut s = format!(
                "{}({{{}}}): {} elements{}\n",
                listing.monad,
                listing.object.join(", "),
                listing.elements.len(),
                if listing.exhaustive { "" } else { " (probe grid; not exhaustive)" }
            );
            for e in &listing.elements {
                let _ = writeln!(s, "  {e}");
            }
            s
        });
    }
    let (ups, downs) = (x.upsets()?, x.downsets()?);
    let mut json = poset_json(&x);
    json["upsets"] = json!(ups.len());
    json["downsets"] = json!(downs.len());
    json["lattice"] = json!(x.is_lattice());
    ctx.emit(&json, || {
        let covers: Vec<String> = x
            .covers()
            .into_iter()
            .map(|(a, b)| format!("{}<{}", x.label(a), x.label(b)))
            .collect();
        format!(
            "elements: {}\ncovers:   {}\nupsets:   {}\ndownsets: {}\nlattice:  {}",
            x.labels().join(" "),
            if covers.is_empty() { "-".into() } else { covers.join(" ") },
            ups.len(),
            downs.len(),
            x.is_lattice()
        )
    })
}

fn transpose_cmd(ctx: &mut Ctx, a: TransposeArgs) -> Outcome {
    let id: CorrespondenceId = a.correspondence.parse()?;
    let (x, y) = (object(&a.x)?, object(&a.y)?);
    let text = match a.input.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{path}: {e}")))?,
        None => a.input.clone(),
    };
    let input: Value = serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("--input: {e}")))?;
    let direction = match a.direction {
        DirectionArg::Forward => Direction::Forward,
        DirectionArg::Backward => Direction::Backward,
    };
    let result = transpose_json(id, &x, &y, direction, &input)?;
    let round_trip = result["round_trip"] == json!(true);
    ctx.emit(&result, || {
        let mut s = format!("{} transpose ({:?})\n", id, a.direction).to_lowercase();
        match &result["output"] {
            Value::Object(m) => {
                for (k, v) in m {
                    let _ = writeln!(s, "  {k} ↦ {v}");
                }
            }
            Value::Array(pairs) => {
                for p in pairs {
                    let _ = writeln!(s, "  {} ↦ {}", p[0], p[1]);
                }
            }
            other => {
                let _ = writeln!(s, "  {other}");
            }
        }
        let _ = write!(s, "round trip: {}", verdict(round_trip));
        s
    })?;
    if round_trip {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn describe(p: &FinPoset) -> String {
    let covers: Vec<String> = p
        .covers()
        .into_iter()
        .map(|(a, b)| format!("{}<{}", p.label(a), p.label(b)))
        .collect();
    if covers.is_empty() {
        format!("{{{}}}", p.labels().join(","))
    } else {
        format!("{{{}; {}}}", p.labels().join(","), covers.join(" "))
    }
}

fn cert_row(x: &FinPoset, y: &FinPoset, r: &CertReport) -> String {
    format!(
        "{} -> {}: {} arrows, {} transformers, {}{}",
        describe(x),
        describe(y),
        r.kleisli_count,
        r.transformer_count,
        if r.bijection { "bijection" } else { "NOT a bijection" },
        r.counterexample.as_ref().map(|c| format!(" ({c})")).unwrap_or_default()
    )
}

fn certify_cmd(ctx: &mut Ctx, a: CertifyArgs) -> Outcome {
    let id: CorrespondenceId = a.correspondence.parse()?;
    let pairs: Vec<(FinPoset, FinPoset)> = match (a.sizes, &a.x, &a.y) {
        (Some((n, m)), _, _) => {
            let ys = id.objects_of_size(m);
            id.objects_of_size(n)
                .into_iter()
                .flat_map(|x| ys.iter().map(move |y| (x.clone(), y.clone())))
                .collect()
        }
        (None, Some(x), Some(y)) => vec![(object(x)?, object(y)?)],
        _ => return Err(Failure::Usage("give --sizes n,m or both --x and --y".into())),
    };
    let reports = pairs
        .iter()
        .map(|(x, y)| certify_by_id(id, x, y, ctx.strategy))
        .collect::<Result<Vec<_>, _>>()?;
    let passed = reports.iter().all(|r| r.bijection);
    let json = json!({
        "correspondence": id.name(),
        "reports": reports.iter().map(CertReport::to_json).collect::<Vec<_>>(),
        "passed": passed,
    });
    ctx.emit(&json, || {
        let mut s = format!("{id}\n");
        for ((x, y), r) in pairs.iter().zip(&reports) {
            let _ = writeln!(s, "  {}", cert_row(x, y, r));
        }
        s.push_str(verdict(passed));
        s
    })?;
    if passed {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

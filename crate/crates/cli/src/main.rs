//! `polar` — analyze mixed polynomials carrying a polar torus action.
//!
//! Subcommands: `analyze` (weights, strata, invariants), `verify` (sampled
//! identity checks), `isolated` (family isolatedness verdicts), `strata`,
//! and `zeta`.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 not polar weighted,
//! 3 verification failure.

mod report;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use polar_core::families::{self, FamilySpec};
use polar_core::numerics::{self, SampleConfig};
use polar_core::poly::{parse, MixedPolynomial};
use polar_core::weights::{compute_weights, degree_rows, WeightError, WeightKind, WeightSystem};
use report::Analysis;
use serde_json::json;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "polar", version, about = "Topology of polar weighted homogeneous hypersurfaces: exact weight systems, fiber stratification, and monodromy zeta functions")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InputArgs {
    /// Polynomial expression, e.g. "z1^2*zbar2 + z2^3".
    #[arg(long)]
    poly: Option<String>,
    /// Family name: g1 | g2 | cyclic | brieskorn | sigma.
    #[arg(long)]
    family: Option<String>,
    /// Comma-separated exponents, e.g. --a 2,3,5.
    #[arg(long)]
    a: Option<String>,
    /// Comma-separated conjugate exponents (cyclic family only).
    #[arg(long)]
    b: Option<String>,
    /// Permutation in cycle notation (sigma family only), e.g. "(1 2)(3 4)".
    #[arg(long)]
    perm: Option<String>,
}

#[derive(Args)]
struct SampleArgs {
    /// Number of random samples per check.
    #[arg(long, default_value_t = 500)]
    samples: usize,
    /// Seed for the reproducible sample stream.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Relative tolerance for residuals.
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
}

#[derive(Subcommand)]
enum Command {
    /// Full analysis: weight system, diagnostics, strata, invariants.
    Analyze {
        #[command(flatten)]
        input: InputArgs,
        /// Also run the numeric identity suite and embed its summary.
        #[arg(long)]
        verify: bool,
        #[command(flatten)]
        samples: SampleArgs,
    },
    /// Run the numeric identity suite (functional equation, Euler
    /// identities, projection, monodromy, torus diffeomorphism).
    Verify {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        samples: SampleArgs,
    },
    /// Isolatedness verdict for g1, g2, or sigma-twisted families.
    Isolated {
        #[command(flatten)]
        input: InputArgs,
    },
    /// The stratification table only.
    Strata {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Zeta function, divisor, and the surface characteristic polynomial.
    Zeta {
        #[command(flatten)]
        input: InputArgs,
    },
}

enum CliError {
    /// Usage or parse problems: exit 1.
    Usage(String),
    /// No polar action: exit 2, with the offending system shown.
    NotPolarWeighted {
        f: MixedPolynomial,
        kind: WeightKind,
    },
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::NotPolarWeighted { .. } => 2,
        }
    }

    fn print(&self) {
        match self {
            CliError::Usage(msg) => eprintln!("error: {msg}"),
            CliError::NotPolarWeighted { f, kind } => {
                eprintln!("error: not polar weighted: the {kind} degree system is inconsistent");
                let label = match kind {
                    WeightKind::Radial => "nu + mu",
                    WeightKind::Polar => "nu - mu",
                };
                eprintln!("  rows ({label}) per monomial, each required to reach degree 1 with the normalized weights:");
                for row in degree_rows(f, *kind) {
                    let entries: Vec<String> = row.iter().map(|x| x.to_string()).collect();
                    eprintln!("    [{}]", entries.join(", "));
                }
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            err.print();
            ExitCode::from(err.code())
        }
    }
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Analyze {
            input,
            verify,
            samples,
        } => cmd_analyze(&input, verify, &samples, cli.json),
        Command::Verify { input, samples } => cmd_verify(&input, &samples, cli.json),
        Command::Isolated { input } => cmd_isolated(&input, cli.json),
        Command::Strata { input } => cmd_strata(&input, cli.json),
        Command::Zeta { input } => cmd_zeta(&input, cli.json),
    }
}

fn parse_exponents(text: &str, flag: &str) -> Result<Vec<u32>, CliError> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<u32>()
                .map_err(|_| CliError::Usage(format!("{flag} expects comma-separated positive integers, got '{s}'")))
        })
        .collect()
}

/// Parse cycle notation like "(1 2)(3 4)"; unmentioned indices are fixed.
fn parse_cycles(text: &str, n: usize) -> Result<Vec<usize>, CliError> {
    let usage = |msg: String| CliError::Usage(format!("--perm: {msg}"));
    let mut sigma: Vec<usize> = (1..=n).collect();
    let mut seen = vec![false; n];
    let trimmed = text.trim();
    if !trimmed.starts_with('(') || !trimmed.ends_with(')') {
        return Err(usage("expected cycle notation like \"(1 2)(3 4)\"".into()));
    }
    for chunk in trimmed.split(')') {
        let chunk = chunk.trim();
        if chunk.is_empty() {
            continue;
        }
        let Some(body) = chunk.strip_prefix('(') else {
            return Err(usage(format!("unexpected text '{chunk}'")));
        };
        let elems: Vec<usize> = body
            .split([' ', ','])
            .filter(|s| !s.is_empty())
            .map(|s| {
                s.parse::<usize>()
                    .map_err(|_| usage(format!("bad index '{s}'")))
            })
            .collect::<Result<_, _>>()?;
        for &e in &elems {
            if e == 0 || e > n {
                return Err(usage(format!("index {e} out of range 1..={n}")));
            }
            if seen[e - 1] {
                return Err(usage(format!("index {e} appears twice")));
            }
            seen[e - 1] = true;
        }
        for i in 0..elems.len() {
            sigma[elems[i] - 1] = elems[(i + 1) % elems.len()];
        }
    }
    Ok(sigma)
}

struct ResolvedInput {
    f: MixedPolynomial,
    family: Option<FamilySpec>,
    description: Option<String>,
}

fn resolve_family(input: &InputArgs, name: &str) -> Result<(FamilySpec, String), CliError> {
    let a = input
        .a
        .as_deref()
        .ok_or_else(|| CliError::Usage("--family requires --a".into()))
        .and_then(|t| parse_exponents(t, "--a"))?;
    let fmt_vec = |xs: &[u32]| {
        xs.iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(",")
    };
    match name {
        "g1" => Ok((
            FamilySpec::G1 { a: a.clone() },
            format!("g1 a=({})", fmt_vec(&a)),
        )),
        "g2" => Ok((
            FamilySpec::G2 { a: a.clone() },
            format!("g2 a=({})", fmt_vec(&a)),
        )),
        "brieskorn" => Ok((
            FamilySpec::Brieskorn { a: a.clone() },
            format!("brieskorn a=({})", fmt_vec(&a)),
        )),
        "cyclic" => {
            let b = input
                .b
                .as_deref()
                .ok_or_else(|| CliError::Usage("cyclic family requires --b".into()))
                .and_then(|t| parse_exponents(t, "--b"))?;
            let desc = format!("cyclic a=({}) b=({})", fmt_vec(&a), fmt_vec(&b));
            Ok((FamilySpec::Cyclic { a, b }, desc))
        }
        "sigma" => {
            let perm = input
                .perm
                .as_deref()
                .ok_or_else(|| CliError::Usage("sigma family requires --perm".into()))?;
            let sigma = parse_cycles(perm, a.len())?;
            let desc = format!("sigma-twisted perm={} a=({})", perm.trim(), fmt_vec(&a));
            Ok((FamilySpec::SigmaTwisted { sigma, a }, desc))
        }
        other => Err(CliError::Usage(format!(
            "unknown family '{other}' (expected g1 | g2 | cyclic | brieskorn | sigma)"
        ))),
    }
}

fn resolve_input(input: &InputArgs) -> Result<ResolvedInput, CliError> {
    match (&input.poly, &input.family) {
        (Some(_), Some(_)) => Err(CliError::Usage(
            "give either --poly or --family, not both".into(),
        )),
        (None, None) => Err(CliError::Usage("an input is required: --poly or --family".into())),
        (Some(text), None) => {
            let f = parse(text, None).map_err(|e| CliError::Usage(e.to_string()))?;
            Ok(ResolvedInput {
                f,
                family: None,
                description: None,
            })
        }
        (None, Some(name)) => {
            let (spec, description) = resolve_family(input, name)?;
            let f = families::build(&spec).map_err(|e| CliError::Usage(e.to_string()))?;
            Ok(ResolvedInput {
                f,
                family: Some(spec),
                description: Some(description),
            })
        }
    }
}

fn weights_or_exit(f: &MixedPolynomial) -> Result<WeightSystem, CliError> {
    compute_weights(f).map_err(|e| match e {
        WeightError::NotPolarWeighted { system } => CliError::NotPolarWeighted {
            f: f.clone(),
            kind: system,
        },
        other => CliError::Usage(other.to_string()),
    })
}

fn sample_config(samples: &SampleArgs) -> Result<SampleConfig, CliError> {
    SampleConfig::new(samples.samples, samples.seed, samples.tol)
        .map_err(|e| CliError::Usage(e.to_string()))
}

/// Test hook: corrupt the weight system before verification when set, so the
/// negative-control path is reachable from the outside.
fn maybe_corrupt(w: WeightSystem) -> WeightSystem {
    if std::env::var_os("POLAR_CORRUPT_WEIGHTS").is_some() {
        numerics::corrupted_weights(&w)
    } else {
        w
    }
}

fn cmd_analyze(
    input: &InputArgs,
    verify: bool,
    samples: &SampleArgs,
    as_json: bool,
) -> Result<u8, CliError> {
    let resolved = resolve_input(input)?;
    let w = weights_or_exit(&resolved.f)?;
    let mut analysis = Analysis::compute(resolved.f.clone(), resolved.description, w.clone())
        .map_err(CliError::Usage)?;
    let mut all_pass = true;
    if verify {
        let cfg = sample_config(samples)?;
        let checks = numerics::run_standard_checks(&resolved.f, &maybe_corrupt(w), &cfg);
        all_pass = checks.iter().all(|c| c.pass);
        analysis.verification = Some(checks);
    }
    if as_json {
        println!("{}", serde_json::to_string_pretty(&analysis.to_json()).unwrap());
    } else {
        print!("{}", analysis.render_text());
    }
    Ok(if all_pass { 0 } else { 3 })
}

fn cmd_verify(input: &InputArgs, samples: &SampleArgs, as_json: bool) -> Result<u8, CliError> {
    let resolved = resolve_input(input)?;
    let w = maybe_corrupt(weights_or_exit(&resolved.f)?);
    let cfg = sample_config(samples)?;
    let checks = numerics::run_standard_checks(&resolved.f, &w, &cfg);
    let pass = checks.iter().all(|c| c.pass);
    if as_json {
        let value = json!({
            "input": resolved.f.render(),
            "checks": checks.iter().map(report::check_json).collect::<Vec<_>>(),
            "pass": pass,
        });
        println!("{}", serde_json::to_string_pretty(&value).unwrap());
    } else {
        for c in &checks {
            println!("{c}");
        }
        println!("overall: {}", if pass { "pass" } else { "FAIL" });
    }
    Ok(if pass { 0 } else { 3 })
}

fn witness_locus(witness: &[numerics::Complex64]) -> (Vec<usize>, Vec<Vec<f64>>) {
    let zeros: Vec<usize> = witness
        .iter()
        .enumerate()
        .filter(|(_, z)| z.norm() == 0.0)
        .map(|(j, _)| j + 1)
        .collect();
    let point: Vec<Vec<f64>> = witness.iter().map(|z| vec![z.re, z.im]).collect();
    (zeros, point)
}

fn cmd_isolated(input: &InputArgs, as_json: bool) -> Result<u8, CliError> {
    let resolved = resolve_input(input)?;
    let usage = |msg: &str| CliError::Usage(msg.to_string());
    let spec = resolved
        .family
        .ok_or_else(|| usage("isolated requires --family g1 | g2 | sigma"))?;
    let description = resolved.description.unwrap_or_default();

    let mut cycles_json = Vec::new();
    let mut notes = Vec::new();
    let (isolated, witness) = match &spec {
        FamilySpec::G1 { a } => {
            let verdict = families::isolated_g1(a).map_err(|e| usage(&e.to_string()))?;
            let witness = numerics::isolated::g1_singular_witness(a)
                .map_err(|e| usage(&e.to_string()))?;
            (verdict, witness)
        }
        FamilySpec::G2 { a } => {
            let verdict = families::isolated_g2(a).map_err(|e| usage(&e.to_string()))?;
            let witness = numerics::isolated::g2_singular_witness(a)
                .map_err(|e| usage(&e.to_string()))?;
            (verdict, witness)
        }
        FamilySpec::SigmaTwisted { sigma, a } => {
            let verdict = families::isolated_sigma_twisted(sigma, a)
                .map_err(|e| usage(&e.to_string()))?;
            for cycle in families::cycle_decomposition(sigma).map_err(|e| usage(&e.to_string()))? {
                let part = if cycle.len() == 1 {
                    let j = cycle[0];
                    if a[j - 1] < 2 {
                        notes.push(format!(
                            "fixed point z{j} with exponent 1: no polar action on that factor (flagged non-isolated)"
                        ));
                    }
                    a[j - 1] >= 2
                } else {
                    let exps: Vec<u32> = cycle.iter().map(|&j| a[j - 1]).collect();
                    families::isolated_g1(&exps).map_err(|e| usage(&e.to_string()))?
                };
                cycles_json.push(json!({"cycle": cycle, "isolated": part}));
            }
            (verdict, None)
        }
        _ => return Err(usage("isolated supports --family g1 | g2 | sigma")),
    };

    if as_json {
        let witness_json = witness.as_ref().map(|w| {
            let (zeros, point) = witness_locus(w);
            json!({
                "zero_coordinates": zeros,
                "point": point,
            })
        });
        let value = json!({
            "family": description,
            "isolated": isolated,
            "witness": witness_json,
            "cycles": if cycles_json.is_empty() { serde_json::Value::Null } else { cycles_json.into() },
            "notes": notes,
        });
        println!("{}", serde_json::to_string_pretty(&value).unwrap());
    } else {
        println!("family: {description}");
        println!("verdict: {}", if isolated { "isolated" } else { "non-isolated" });
        if let Some(w) = &witness {
            let (zeros, _) = witness_locus(w);
            let locus = zeros
                .iter()
                .map(|j| format!("z{j} = 0"))
                .collect::<Vec<_>>()
                .join(", ");
            println!("singular family: one-real-parameter chain on the subspace {{{locus}}}");
            let point = w
                .iter()
                .map(|z| format!("{:.0}", z.re))
                .collect::<Vec<_>>()
                .join(", ");
            println!("witness point: ({point})");
        }
        for note in notes {
            println!("note: {note}");
        }
    }
    Ok(0)
}

fn cmd_strata(input: &InputArgs, as_json: bool) -> Result<u8, CliError> {
    let resolved = resolve_input(input)?;
    let w = weights_or_exit(&resolved.f)?;
    let strat =
        polar_core::strata::stratify(&resolved.f, &w).map_err(|e| CliError::Usage(e.to_string()))?;
    if as_json {
        let value = json!({
            "input": resolved.f.render(),
            "weights": report::weights_json(&w),
            "stratification": report::strata_json(&strat),
        });
        println!("{}", serde_json::to_string_pretty(&value).unwrap());
    } else {
        print!("{}", report::render_strata_text(&strat));
    }
    Ok(0)
}

fn cmd_zeta(input: &InputArgs, as_json: bool) -> Result<u8, CliError> {
    let resolved = resolve_input(input)?;
    let w = weights_or_exit(&resolved.f)?;
    let strat =
        polar_core::strata::stratify(&resolved.f, &w).map_err(|e| CliError::Usage(e.to_string()))?;
    let inv = polar_core::invariants::compute_invariants(&strat)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    if as_json {
        let value = json!({
            "input": resolved.f.render(),
            "chi": report::json_int(&inv.chi),
            "zeta": report::zeta_json(&inv.zeta),
            "divisor": report::divisor_json(&inv.divisor),
            "monodromy_order": report::json_int(&inv.monodromy_order),
            "top_charpoly": inv.top_charpoly.as_ref().map(report::zeta_json),
        });
        println!("{}", serde_json::to_string_pretty(&value).unwrap());
    } else {
        print!("{}", report::render_invariants_text(&inv, strat.n));
    }
    Ok(0)
}

use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fano_instanton::cohomology::BinomialConvention;
use fano_instanton::selfcheck::{run_all, SelfcheckOptions};
use fano_instanton::serre::construct_instanton;
use fano_instanton::stability::{extension_eliminator, hoppe_scan, StabilityMode, StabilityVerdict};
use fano_instanton::{
    h_sheaf, monad_chern, synthesize_monad_f, synthesize_monad_flag, validate_invariants, CurveConfig, DivisorClass,
    Error, InstantonInvariants, SheafTerm,
};
use fano_instanton_cli::{
    build_report, parse_grid, render_text, sweep_lines, sweep_records, to_json_lines, DomainError, GeometryArg,
    ReportRequest,
};
use serde_json::json;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Parser, Debug)]
#[command(
    name = "fano-instanton",
    version,
    about = "Instanton bundles on the blow-up of P³ at a point and on the flag threefold"
)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Default output format.
    #[arg(long, global = true, env = "FANO_INSTANTON_FORMAT", value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, global = true, value_enum, default_value_t = GeometryArg::Blowup)]
    geometry: GeometryArg,
    /// Twist box for the instanton-condition and Hoppe scans.
    #[arg(long = "box", global = true, default_value_t = 4)]
    search_box: u32,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
struct Charge {
    /// ξ² coefficient of c₂ (k₁ on the flag threefold).
    #[arg(long, allow_negative_numbers = true)]
    alpha: i64,
    /// f² coefficient of c₂ (k₂ on the flag threefold).
    #[arg(long, allow_negative_numbers = true)]
    beta: i64,
    /// h¹(E(−2ξ)); defaults to 0.
    #[arg(long, allow_negative_numbers = true)]
    gamma: Option<i64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Full report for one set of invariants.
    Report(Charge),
    /// Reports for many records, one JSON object per line.
    Sweep {
        /// JSON-lines input; stdin when absent.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Output file; stdout when absent.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Generate records instead, e.g. `alpha=1..3,beta=0..2`.
        #[arg(long)]
        grid: Option<String>,
    },
    /// Monad terms and their Chern data.
    Monad(Charge),
    /// Hoppe scan, μ-stability verdict and the extension eliminator.
    Stability {
        #[command(flatten)]
        charge: Charge,
        #[arg(long)]
        semistable: bool,
    },
    /// Serre construction from disjoint conics and fibre lines.
    Construct {
        #[arg(long, default_value_t = 0)]
        conics: u64,
        #[arg(long)]
        lines: u64,
    },
    /// Cohomology of O(aD₁+bD₂), or of π*Ω¹(aξ+bf) with `--omega`.
    Cohomology {
        #[arg(long, allow_negative_numbers = true)]
        a: i64,
        #[arg(long, allow_negative_numbers = true)]
        b: i64,
        #[arg(long)]
        omega: bool,
    },
    /// Intersection numbers of a divisor class.
    Chow {
        #[arg(long, allow_negative_numbers = true)]
        a: i64,
        #[arg(long, allow_negative_numbers = true)]
        b: i64,
    },
    /// Run the invariant suites.
    Selfcheck {
        /// Grid bound for every suite; 0 checks nothing.
        #[arg(long)]
        radius: Option<i64>,
        #[arg(long, hide = true)]
        corrupt_binomials: bool,
    },
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<DomainError> for Failure {
    fn from(e: DomainError) -> Self {
        Failure::Domain(e.message)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        DomainError::from(e).into()
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

struct Out {
    json: bool,
    buf: String,
}

impl Out {
    fn emit(&mut self, text: impl FnOnce() -> String, value: impl FnOnce() -> String) {
        if self.json {
            self.buf.push_str(&value());
            self.buf.push('\n');
        } else {
            self.buf.push_str(&text());
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let mut out = Out { json: cli.json || cli.format == Format::Json, buf: String::new() };
    let result = run(&cli, &mut out);
    let _ = io::stdout().write_all(out.buf.as_bytes());
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Domain(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}

fn request(cli: &Cli, c: &Charge) -> ReportRequest {
    ReportRequest { geometry: cli.geometry, alpha: c.alpha, beta: c.beta, gamma: c.gamma, search_box: cli.search_box }
}

fn blowup_only(cli: &Cli, what: &str) -> Result<(), Failure> {
    if cli.geometry != GeometryArg::Blowup {
        return Err(Failure::Usage(format!("{what} is only available with --geometry f")));
    }
    Ok(())
}

fn run(cli: &Cli, out: &mut Out) -> Result<u8, Failure> {
    match &cli.command {
        Command::Report(c) => {
            let r = build_report(&request(cli, c))?;
            out.emit(|| render_text(&r), || serde_json::to_string(&r).expect("report serializes"));
        }
        Command::Sweep { input, output, grid } => {
            let results = match grid {
                Some(spec) => sweep_records(parse_grid(spec, cli.geometry).map_err(Failure::Usage)?, cli.search_box),
                None => {
                    let mut text = String::new();
                    match input {
                        Some(p) => text = std::fs::read_to_string(p)?,
                        None => {
                            io::stdin().read_to_string(&mut text)?;
                        }
                    }
                    sweep_lines(&text, cli.search_box)
                }
            };
            let lines = to_json_lines(&results);
            match output {
                Some(p) => std::fs::write(p, lines)?,
                None => out.buf.push_str(&lines),
            }
            let errors = results.iter().filter(|r| r.is_error()).count();
            eprintln!("{} records, {} errors", results.len(), errors);
        }
        Command::Monad(c) => {
            let terms = match cli.geometry {
                GeometryArg::Blowup => {
                    let inv = InstantonInvariants::new(c.alpha, c.beta, c.gamma.unwrap_or(0));
                    synthesize_monad_f(&inv)?
                }
                GeometryArg::Flag => {
                    if c.alpha < 0 || c.beta < 0 {
                        return Err(Failure::Domain("k₁, k₂ must be non-negative".into()));
                    }
                    synthesize_monad_flag(c.alpha as u64, c.beta as u64)
                }
            };
            let chern = monad_chern(&terms)?;
            out.emit(
                || {
                    format!(
                        "{terms}\nranks: {} {} {}\nc1={} c2={}\n",
                        terms.rank(-1),
                        terms.rank(0),
                        terms.rank(1),
                        chern.c1,
                        chern.c2
                    )
                },
                || {
                    json!({
                        "geometry": cli.geometry, "alpha": c.alpha, "beta": c.beta, "gamma": c.gamma.unwrap_or(0),
                        "gamma_assumed": c.gamma.is_none(),
                        "monad_c_minus1": terms.render_degree(-1), "monad_c0": terms.render_degree(0),
                        "monad_c1": terms.render_degree(1),
                        "monad_ranks": [terms.rank(-1), terms.rank(0), terms.rank(1)],
                        "chern_c1": chern.c1.to_string(), "chern_c2": chern.c2.to_string(),
                    })
                    .to_string()
                },
            );
        }
        Command::Stability { charge: c, semistable } => {
            blowup_only(cli, "stability")?;
            let inv = InstantonInvariants::new(c.alpha, c.beta, c.gamma.unwrap_or(0));
            let v = validate_invariants(&inv);
            if !v.is_empty() {
                return Err(Error::Inadmissible(v).into());
            }
            let mode = if *semistable { StabilityMode::Semistable } else { StabilityMode::Stable };
            let verdict = hoppe_scan(&synthesize_monad_f(&inv)?, cli.search_box, mode)?;
            let mu = fano_instanton::stability::mu_stability_verdict(inv.alpha, inv.beta);
            let witness = match &verdict {
                StabilityVerdict::Inconclusive { witness: Some(w), .. } => Some(*w),
                _ => None,
            };
            // rank-2 extensions of O(D) by O(−D), over the scan box
            let r = cli.search_box as i64;
            let survivors = (-r..=r)
                .flat_map(|a| (-r..=r).map(move |b| (a, b)))
                .filter(|&(a, b)| !extension_eliminator(a, b).eliminated())
                .count();
            out.emit(
                || {
                    format!(
                        "hoppe scan: {verdict}\nμ-stability: {mu:?}\nextensions surviving in box {r}: {survivors}\n"
                    )
                },
                || {
                    json!({
                        "alpha": inv.alpha, "beta": inv.beta, "gamma": inv.gamma, "gamma_assumed": c.gamma.is_none(),
                        "mode": if *semistable { "semistable" } else { "stable" },
                        "stability": verdict.to_string(), "stability_certified": verdict.is_stable(),
                        "witness_a": witness.map(|w| w.a), "witness_b": witness.map(|w| w.b),
                        "witness_bound": witness.map(|w| w.bound),
                        "mu_stability": matches!(mu, fano_instanton::stability::MuStabilityVerdict::Stable),
                        "extension_survivors": survivors,
                    })
                    .to_string()
                },
            );
        }
        Command::Construct { conics, lines } => {
            blowup_only(cli, "construct")?;
            let r = construct_instanton(&CurveConfig::new(*conics, *lines))?;
            let inv = r.invariants;
            out.emit(
                || {
                    format!(
                        "curves: {} conics, {} lines\nE: α={} β={} γ=0, c2={}\nSerre bundle: c1={} c2={}\nExt¹={} Ext²={} Ext³={} (difference formula {})\n\
                         χ(E)={} = χ(O(−f)) {} + χ(I_X(f)) {}\nearnest: {}  μ-stable: {}  generically trivial: {}\nmoduli dimension: {}\n{}\n",
                        conics, lines, inv.alpha, inv.beta, r.chern.c2, r.serre_bundle.c1, r.serre_bundle.c2, r.ext[0], r.ext[1], r.ext[2],
                        if r.ext_consistent { "agrees" } else { "DISAGREES" }, r.chi.chi_e, r.chi.chi_sub, r.chi.chi_ideal,
                        r.earnest, r.mu_stable, r.generically_trivial, r.moduli.dimension, r.note
                    )
                },
                || {
                    json!({
                        "conics": conics, "lines": lines, "alpha": inv.alpha, "beta": inv.beta, "gamma": inv.gamma,
                        "chern_c1": r.chern.c1.to_string(), "chern_c2": r.chern.c2.to_string(),
                        "serre_c1": r.serre_bundle.c1.to_string(), "serre_c2": r.serre_bundle.c2.to_string(),
                        "ext1": r.ext[0], "ext2": r.ext[1], "ext3": r.ext[2], "ext_consistent": r.ext_consistent,
                        "normal_det_ok": r.normal_det_ok, "serre_existence": r.hypotheses.existence,
                        "serre_uniqueness": r.hypotheses.uniqueness, "chi_e": r.chi.chi_e, "chi_sub": r.chi.chi_sub,
                        "chi_ideal": r.chi.chi_ideal, "chi_additive": r.chi.holds, "earnest": r.earnest,
                        "mu_stable": r.mu_stable, "generically_trivial": r.generically_trivial,
                        "moduli_dimension": r.moduli.dimension, "generically_smooth": r.moduli.generically_smooth,
                        "note": r.note,
                    })
                    .to_string()
                },
            );
        }
        Command::Cohomology { a, b, omega } => {
            let term = match (cli.geometry, omega) {
                (GeometryArg::Blowup, false) => SheafTerm::line(*a, *b),
                (GeometryArg::Blowup, true) => SheafTerm::omega(*a, *b),
                (GeometryArg::Flag, false) => SheafTerm::flag_line(*a, *b),
                (GeometryArg::Flag, true) => return Err(Failure::Usage("--omega needs --geometry f".into())),
            };
            let h: Vec<u64> = (0..4).map(|i| h_sheaf(i, &term)).collect::<Result<_, _>>()?;
            let chi = h[0] as i64 - h[1] as i64 + h[2] as i64 - h[3] as i64;
            out.emit(
                || format!("{term}: h0={} h1={} h2={} h3={} χ={chi}\n", h[0], h[1], h[2], h[3]),
                || {
                    json!({"sheaf": term.to_string(), "h0": h[0], "h1": h[1], "h2": h[2], "h3": h[3], "chi": chi})
                        .to_string()
                },
            );
        }
        Command::Chow { a, b } => {
            let d = match cli.geometry {
                GeometryArg::Blowup => DivisorClass::blowup(*a, *b),
                GeometryArg::Flag => DivisorClass::flag(*a, *b),
            };
            let h = cli.geometry.geometry().descriptor().fundamental::<i64>()?;
            let square = d.square()?;
            let cube = d.cube()?;
            let dh2 = h.square()?.pair(&d)?;
            let d2h = square.pair(&h)?;
            out.emit(
                || format!("D = {d}\nD² = {square}\nD³ = {cube}\nD·h² = {dh2}\nD²·h = {d2h}\n"),
                || json!({"divisor": d.to_string(), "square": square.to_string(), "cube": cube, "d_h2": dh2, "d2_h": d2h}).to_string(),
            );
        }
        Command::Selfcheck { radius, corrupt_binomials } => {
            let convention =
                if *corrupt_binomials { BinomialConvention::Polynomial } else { BinomialConvention::Truncated };
            let results = run_all(&SelfcheckOptions { radius: *radius, convention });
            for r in &results {
                out.emit(
                    || format!("{r}\n"),
                    || json!({"suite": r.name, "passed": r.passed(), "checked": r.checked, "counterexample": r.counterexample}).to_string(),
                );
            }
            if let Some(first) = results.iter().find(|r| !r.passed()) {
                eprintln!("first counterexample ({}): {}", first.name, first.counterexample.as_deref().unwrap_or(""));
                return Ok(2);
            }
        }
    }
    Ok(0)
}

//! Command-line front end: argument parsing, deterministic suite
//! execution, and report emission.
//!
//! Four subcommands are exposed: `clone-report` and `sparse-report` run
//! the full verification battery for one family, `verify <suite>` runs a
//! single named suite, and `list-suites` prints the catalog. Every run
//! echoes its complete configuration into the report so it can be
//! replayed; expensive checks are skipped (never silently dropped) unless
//! `--allow-slow` is passed.

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::time::Instant;

use crate::calculus::{
    diagonal_specialization_check, gradient_from_cofactors, hessian_generic_rank,
    homaloidal_certificate, GradientSet, HessianData,
};
use crate::certificates::{
    antidiagonal_initial_check, clone_codim_certificate, sparse_codim_certificate,
};
use crate::duality::{
    dual_dimension, dual_ladder_clone, dual_ladder_sparse, gorenstein_check,
    hessian_multiplicity, hypersurface_equation_clone, is_ladderlike, ladder_divisibility_check,
    ladder_vanishing_check, polar_ladder_sparse, quadric_check_clone, MultiplicityMethod,
};
use crate::matrix::{adj_adj_identity, verify_cauchy, zero_count, Degeneration};
use crate::report::{Check, CheckStatus, Format, Report, RunConfig};
use crate::ring::VarId;
use crate::syzygy::{
    cloning_syzygies, expected_cloning_count, expected_sparse_count, sparse_syzygies,
};
use crate::{Error, DEFAULT_SEED, DEFAULT_TRIALS};

/// Environment variable naming a directory that receives a copy of every
/// rendered report when `--output` is not given.
pub const OUTPUT_DIR_ENV: &str = "SYMDEG_OUTPUT_DIR";

#[derive(Parser)]
#[command(
    name = "symdeg",
    version,
    about = "Exact verification toolkit for degenerations of the generic symmetric determinant"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full verification battery for the cloned determinant
    CloneReport(CommonArgs),
    /// Run the full verification battery for the sparsed determinant
    SparseReport(CommonArgs),
    /// Run a single named suite (see `list-suites`)
    Verify {
        /// Suite name
        suite: String,
        #[command(flatten)]
        args: CommonArgs,
    },
    /// List the available suites and the families they apply to
    ListSuites,
}

#[derive(Args, Clone)]
struct CommonArgs {
    /// Matrix size
    #[arg(long, default_value_t = 3)]
    m: u32,
    /// Sparsing parameter (sparse family; defaults to 1)
    #[arg(long)]
    r: Option<u32>,
    /// Degeneration family for `verify` (defaults to the suite's first family)
    #[arg(long, value_enum)]
    degen: Option<DegenArg>,
    /// Number of sampled points for rank estimates
    #[arg(long, default_value_t = DEFAULT_TRIALS)]
    trials: u32,
    /// Seed for the deterministic counter-based sampler
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Cap on graded-piece degrees in certificates (defaults to m)
    #[arg(long)]
    max_degree: Option<u32>,
    /// Run the size-gated expensive checks instead of skipping them
    #[arg(long, default_value_t = false)]
    allow_slow: bool,
    /// Report format
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    /// Also write the rendered report to this file
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum DegenArg {
    Clone,
    Sparse,
    Generic,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum FormatArg {
    Json,
    Csv,
    Text,
}

impl FormatArg {
    fn to_format(self) -> Format {
        match self {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
            FormatArg::Text => Format::Text,
        }
    }
}

struct SuiteInfo {
    name: &'static str,
    description: &'static str,
    families: &'static [DegenArg],
}

const ALL_FAMILIES: &[DegenArg] = &[DegenArg::Clone, DegenArg::Sparse, DegenArg::Generic];
const CONSTRUCTED: &[DegenArg] = &[DegenArg::Clone, DegenArg::Sparse];
const SPARSE_ONLY: &[DegenArg] = &[DegenArg::Sparse];
const CLONE_ONLY: &[DegenArg] = &[DegenArg::Clone];

const SUITES: &[SuiteInfo] = &[
    SuiteInfo {
        name: "counts",
        description: "variable and zero counts against their closed forms",
        families: ALL_FAMILIES,
    },
    SuiteInfo {
        name: "cauchy",
        description: "M*adj = adj*M = det*I, plus the double adjugate at small sizes",
        families: ALL_FAMILIES,
    },
    SuiteInfo {
        name: "gradient",
        description: "partial derivatives match the cofactor construction; Euler identity",
        families: ALL_FAMILIES,
    },
    SuiteInfo {
        name: "syzygies",
        description: "constructed linear syzygies: count, annihilation, sampled rank",
        families: CONSTRUCTED,
    },
    SuiteInfo {
        name: "codim",
        description: "leading-monomial codimension certificates for the gradient ideal",
        families: CONSTRUCTED,
    },
    SuiteInfo {
        name: "initials",
        description: "anti-diagonal leading terms of the defining minors",
        families: ALL_FAMILIES,
    },
    SuiteInfo {
        name: "hessian",
        description: "Hessian nonvanishing and linear rank (homaloidal certificate)",
        families: ALL_FAMILIES,
    },
    SuiteInfo {
        name: "polar",
        description: "sampled Hessian rank at generic points against the closed form",
        families: ALL_FAMILIES,
    },
    SuiteInfo {
        name: "dual",
        description: "ladder anchoring and dual dimension via Hessian rank on the hypersurface",
        families: ALL_FAMILIES,
    },
    SuiteInfo {
        name: "ladder",
        description: "dual-ladder minors divisible by the determinant after substitution",
        families: ALL_FAMILIES,
    },
    SuiteInfo {
        name: "polar-ladder",
        description: "sparse polar minors collapse to zero under cofactor substitution",
        families: SPARSE_ONLY,
    },
    SuiteInfo {
        name: "multiplicity",
        description: "power of the determinant inside its own Hessian determinant",
        families: CONSTRUCTED,
    },
    SuiteInfo {
        name: "gorenstein",
        description: "socle symmetry of the sparsed family (true exactly at r = m-2)",
        families: SPARSE_ONLY,
    },
    SuiteInfo {
        name: "hypersurface",
        description: "equation of the dual hypersurface of the cloned determinant",
        families: CLONE_ONLY,
    },
];

const CLONE_BATTERY: &[&str] = &[
    "counts",
    "cauchy",
    "gradient",
    "syzygies",
    "codim",
    "initials",
    "hessian",
    "polar",
    "dual",
    "ladder",
    "hypersurface",
    "multiplicity",
];

const SPARSE_BATTERY: &[&str] = &[
    "counts",
    "cauchy",
    "gradient",
    "syzygies",
    "codim",
    "initials",
    "hessian",
    "polar",
    "dual",
    "ladder",
    "polar-ladder",
    "gorenstein",
    "multiplicity",
];

fn suite_info(name: &str) -> Option<&'static SuiteInfo> {
    SUITES.iter().find(|s| s.name == name)
}

/// Entry point used by the binary: parses `argv`, runs the requested
/// command, and returns the process exit code (0 all checks pass, 1 any
/// failure, 2 usage error).
pub fn run(args: impl Iterator<Item = String>) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn usage(msg: &str) -> i32 {
    eprintln!("usage error: {msg}");
    2
}

fn dispatch(cli: Cli) -> Result<i32, Error> {
    match cli.command {
        Command::ListSuites => {
            print!("{}", render_suite_list());
            Ok(0)
        }
        Command::CloneReport(args) => {
            if args.m < 3 || args.m > 16 {
                return Ok(usage("the cloned family needs 3 <= m <= 16"));
            }
            let degen = Degeneration::MdClone { m: args.m };
            execute("clone-report", None, degen, &args, CLONE_BATTERY)
        }
        Command::SparseReport(args) => {
            let r = args.r.unwrap_or(1);
            if args.m < 3 || args.m > 16 || r < 1 || r + 2 > args.m {
                return Ok(usage("the sparsed family needs 3 <= m <= 16 and 1 <= r <= m - 2"));
            }
            let degen = Degeneration::Sparse { m: args.m, r };
            execute("sparse-report", None, degen, &args, SPARSE_BATTERY)
        }
        Command::Verify { suite, args } => {
            let Some(info) = suite_info(&suite) else {
                let names: Vec<&str> = SUITES.iter().map(|s| s.name).collect();
                return Ok(usage(&format!(
                    "unknown suite `{suite}`; available: {}",
                    names.join(", ")
                )));
            };
            let family = args.degen.unwrap_or(info.families[0]);
            let degen = match family {
                DegenArg::Clone => {
                    if args.m < 3 || args.m > 16 {
                        return Ok(usage("the cloned family needs 3 <= m <= 16"));
                    }
                    Degeneration::MdClone { m: args.m }
                }
                DegenArg::Sparse => {
                    let r = args.r.unwrap_or(1);
                    if args.m < 3 || args.m > 16 || r < 1 || r + 2 > args.m {
                        return Ok(usage(
                            "the sparsed family needs 3 <= m <= 16 and 1 <= r <= m - 2",
                        ));
                    }
                    Degeneration::Sparse { m: args.m, r }
                }
                DegenArg::Generic => {
                    if args.m < 2 || args.m > 16 {
                        return Ok(usage("the generic family needs 2 <= m <= 16"));
                    }
                    Degeneration::Generic { m: args.m }
                }
            };
            let name: &'static str = info.name;
            execute("verify", Some(suite), degen, &args, &[name])
        }
    }
}

fn render_suite_list() -> String {
    let mut out = String::from("available suites:\n");
    for s in SUITES {
        let fams: Vec<&str> = s
            .families
            .iter()
            .map(|f| match f {
                DegenArg::Clone => "clone",
                DegenArg::Sparse => "sparse",
                DegenArg::Generic => "generic",
            })
            .collect();
        out.push_str(&format!(
            "  {:<13} {}  [{}]\n",
            s.name,
            s.description,
            fams.join(", ")
        ));
    }
    out
}

/// Context shared by every suite in one run.
struct SuiteCtx {
    degen: Degeneration,
    m: u32,
    r: Option<u32>,
    trials: u32,
    seed: u64,
    max_degree: u32,
    allow_slow: bool,
}

impl SuiteCtx {
    fn family(&self) -> DegenArg {
        match self.degen {
            Degeneration::MdClone { .. } => DegenArg::Clone,
            Degeneration::Sparse { .. } => DegenArg::Sparse,
            _ => DegenArg::Generic,
        }
    }

    fn pair_count(&self) -> usize {
        (self.m * (self.m + 1) / 2) as usize
    }
}

fn execute(
    command: &str,
    suite: Option<String>,
    degen: Degeneration,
    args: &CommonArgs,
    suites: &[&str],
) -> Result<i32, Error> {
    let ctx = SuiteCtx {
        m: degen.m(),
        r: match &degen {
            Degeneration::Sparse { r, .. } => Some(*r),
            _ => None,
        },
        degen,
        trials: args.trials.max(1),
        seed: args.seed,
        max_degree: args.max_degree.unwrap_or_else(|| args.m.max(1)),
        allow_slow: args.allow_slow,
    };
    let mut checks = Vec::new();
    for name in suites {
        run_suite(name, &ctx, &mut checks)?;
    }
    let config = RunConfig {
        command: command.to_string(),
        suite,
        m: ctx.m,
        degeneration: ctx.degen.label(),
        r: ctx.r,
        trials: ctx.trials,
        seed: ctx.seed,
        max_degree: ctx.max_degree,
        allow_slow: ctx.allow_slow,
        format: args.format.to_format(),
    };
    let report = Report { config, checks };
    let rendered = report.render(report.config.format)?;
    print!("{rendered}");
    write_report_file(&report, &rendered, args)?;
    Ok(if report.passed() { 0 } else { 1 })
}

fn write_report_file(report: &Report, rendered: &str, args: &CommonArgs) -> Result<(), Error> {
    if let Some(path) = &args.output {
        if let Some(parent) = path.parent() {
            if !parent.as_os_str().is_empty() {
                std::fs::create_dir_all(parent)?;
            }
        }
        std::fs::write(path, rendered)?;
        return Ok(());
    }
    if let Ok(dir) = std::env::var(OUTPUT_DIR_ENV) {
        if !dir.is_empty() {
            let dir = PathBuf::from(dir);
            std::fs::create_dir_all(&dir)?;
            let file = dir.join(format!(
                "{}.{}",
                report.file_stem(),
                report.config.format.extension()
            ));
            std::fs::write(file, rendered)?;
        }
    }
    Ok(())
}

/// Runs `body`, timing it and converting its outcome — or error — into a
/// recorded check. `body` returns (passed, actual, witness).
fn push_check(
    checks: &mut Vec<Check>,
    name: impl Into<String>,
    expected: impl Into<String>,
    body: impl FnOnce() -> Result<(bool, String, String), Error>,
) {
    let start = Instant::now();
    let (status, actual, witness) = match body() {
        Ok((true, actual, witness)) => (CheckStatus::Pass, actual, witness),
        Ok((false, actual, witness)) => (CheckStatus::Fail, actual, witness),
        Err(e) => (CheckStatus::Fail, format!("error: {e}"), String::new()),
    };
    checks.push(Check {
        name: name.into(),
        status,
        expected: expected.into(),
        actual,
        witness,
        ms: start.elapsed().as_millis(),
    });
}

fn push_skip(checks: &mut Vec<Check>, name: impl Into<String>, reason: impl Into<String>) {
    checks.push(Check {
        name: name.into(),
        status: CheckStatus::Skipped,
        expected: String::new(),
        actual: String::new(),
        witness: reason.into(),
        ms: 0,
    });
}

const SLOW_HINT: &str = "size cap; pass --allow-slow to run";

fn run_suite(name: &str, ctx: &SuiteCtx, checks: &mut Vec<Check>) -> Result<(), Error> {
    let info = suite_info(name)
        .ok_or_else(|| Error::Unsupported(format!("unknown suite `{name}`")))?;
    if !info.families.contains(&ctx.family()) {
        push_skip(
            checks,
            format!("{name}/inapplicable"),
            format!("suite does not apply to the {} family", ctx.degen.label()),
        );
        return Ok(());
    }
    match name {
        "counts" => suite_counts(ctx, checks),
        "cauchy" => suite_cauchy(ctx, checks),
        "gradient" => suite_gradient(ctx, checks),
        "syzygies" => suite_syzygies(ctx, checks),
        "codim" => suite_codim(ctx, checks),
        "initials" => suite_initials(ctx, checks),
        "hessian" => suite_hessian(ctx, checks),
        "polar" => suite_polar(ctx, checks),
        "dual" => suite_dual(ctx, checks),
        "ladder" => suite_ladder(ctx, checks),
        "polar-ladder" => suite_polar_ladder(ctx, checks),
        "multiplicity" => suite_multiplicity(ctx, checks),
        "gorenstein" => suite_gorenstein(ctx, checks),
        "hypersurface" => suite_hypersurface(ctx, checks),
        other => {
            return Err(Error::Unsupported(format!(
                "suite `{other}` has no runner"
            )))
        }
    }
    Ok(())
}

fn suite_counts(ctx: &SuiteCtx, checks: &mut Vec<Check>) {
    let m = ctx.m;
    let pair_count = ctx.pair_count();
    match ctx.degen {
        Degeneration::Sparse { r, .. } => {
            let closed = zero_count(r) as usize;
            push_check(
                checks,
                "counts/zero-count",
                format!("{closed}"),
                || {
                    let brute = (1..=m)
                        .flat_map(|i| (i..=m).map(move |j| (i, j)))
                        .filter(|&(i, j)| i + j > 2 * m - r)
                        .count();
                    Ok((
                        brute == closed,
                        format!("{brute}"),
                        "enumerated positions above the surviving anti-triangle".to_string(),
                    ))
                },
            );
            let expected = pair_count - zero_count(r) as usize;
            push_check(
                checks,
                "counts/surviving-variables",
                format!("{expected}"),
                || {
                    let mat = ctx.degen.build()?;
                    let got = mat.surviving_vars().len();
                    Ok((got == expected, format!("{got}"), String::new()))
                },
            );
        }
        Degeneration::MdClone { .. } => {
            let expected = pair_count - 1;
            push_check(
                checks,
                "counts/surviving-variables",
                format!("{expected}"),
                || {
                    let mat = ctx.degen.build()?;
                    let got = mat.surviving_vars().len();
                    Ok((got == expected, format!("{got}"), String::new()))
                },
            );
            push_check(checks, "counts/cloned-slots", "2", || {
                let mat = ctx.degen.build()?;
                let slots = mat.slots_of(VarId::new(m - 1, m - 1));
                Ok((
                    slots.len() == 2,
                    format!("{}", slots.len()),
                    format!("positions {slots:?}"),
                ))
            });
        }
        _ => {
            push_check(
                checks,
                "counts/surviving-variables",
                format!("{pair_count}"),
                || {
                    let mat = ctx.degen.build()?;
                    let got = mat.surviving_vars().len();
                    Ok((got == pair_count, format!("{got}"), String::new()))
                },
            );
        }
    }
}

fn suite_cauchy(ctx: &SuiteCtx, checks: &mut Vec<Check>) {
    if ctx.m > 5 && !ctx.allow_slow {
        push_skip(checks, "cauchy/identity", SLOW_HINT);
    } else {
        push_check(
            checks,
            "cauchy/identity",
            "M*adj = adj*M = det*I",
            || {
                let mat = ctx.degen.build()?;
                let rep = verify_cauchy(&mat);
                let witness = rep
                    .failing_entry
                    .map(|(side, i, j)| format!("first failing entry: side {side}, ({i},{j})"))
                    .unwrap_or_default();
                Ok((rep.passed, format!("{}", rep.passed), witness))
            },
        );
    }
    if ctx.m == 3 || (ctx.m == 4 && ctx.allow_slow) {
        push_check(
            checks,
            "cauchy/double-adjugate",
            "adj(adj(M)) = det^(m-2) * M",
            || {
                let mat = ctx.degen.build()?;
                let ok = adj_adj_identity(&mat);
                Ok((ok, format!("{ok}"), String::new()))
            },
        );
    } else {
        push_skip(checks, "cauchy/double-adjugate", SLOW_HINT);
    }
}

fn suite_gradient(ctx: &SuiteCtx, checks: &mut Vec<Check>) {
    if ctx.m > 5 && !ctx.allow_slow {
        push_skip(checks, "gradient/cofactor-match", SLOW_HINT);
        push_skip(checks, "gradient/euler", SLOW_HINT);
        return;
    }
    push_check(
        checks,
        "gradient/cofactor-match",
        "differentiated and cofactor-built partials agree term-exactly",
        || {
            let mat = ctx.degen.build()?;
            let table = mat.cofactors();
            let by_derivative = GradientSet::of_matrix(&mat)?;
            let by_cofactors = gradient_from_cofactors(&mat, &table);
            let same_vars = by_derivative.vars() == by_cofactors.vars();
            let same_partials = by_derivative.partials() == by_cofactors.partials();
            Ok((
                same_vars && same_partials,
                format!("vars match: {same_vars}, partials match: {same_partials}"),
                format!("{} partial derivatives", by_derivative.partials().len()),
            ))
        },
    );
    push_check(
        checks,
        "gradient/euler",
        "sum of x_v * df/dx_v equals deg(f) * f",
        || {
            let mat = ctx.degen.build()?;
            let f = mat.determinant();
            let grad = GradientSet::of_matrix(&mat)?;
            let ok = grad.satisfies_euler(&f);
            Ok((ok, format!("{ok}"), String::new()))
        },
    );
}

fn suite_syzygies(ctx: &SuiteCtx, checks: &mut Vec<Check>) {
    if ctx.m > 5 && !ctx.allow_slow {
        push_skip(checks, "syzygies/count", SLOW_HINT);
        push_skip(checks, "syzygies/annihilate", SLOW_HINT);
        push_skip(checks, "syzygies/rank", SLOW_HINT);
        return;
    }
    let expected_count = match ctx.degen {
        Degeneration::MdClone { m } => expected_cloning_count(m),
        Degeneration::Sparse { m, .. } => expected_sparse_count(m),
        _ => unreachable!("family filtered by the catalog"),
    };
    let build_set = || match ctx.degen {
        Degeneration::MdClone { m } => cloning_syzygies(m),
        Degeneration::Sparse { m, r } => sparse_syzygies(m, r),
        _ => unreachable!("family filtered by the catalog"),
    };
    push_check(
        checks,
        "syzygies/count",
        format!("{expected_count}"),
        || {
            let set = build_set()?;
            Ok((set.len() == expected_count, format!("{}", set.len()), String::new()))
        },
    );
    push_check(
        checks,
        "syzygies/annihilate",
        "every syzygy annihilates the partials with linear entries",
        || {
            let set = build_set()?;
            let ann = set.all_annihilate();
            let lin = set.entries_are_linear();
            Ok((
                ann && lin,
                format!("annihilate: {ann}, linear entries: {lin}"),
                String::new(),
            ))
        },
    );
    push_check(
        checks,
        "syzygies/rank",
        format!("{expected_count}"),
        || {
            let set = build_set()?;
            let rank = set.rank(ctx.trials, ctx.seed);
            Ok((
                rank == expected_count,
                format!("{rank}"),
                format!("sampled over {} trials, seed {}", ctx.trials, ctx.seed),
            ))
        },
    );
}

fn suite_codim(ctx: &SuiteCtx, checks: &mut Vec<Check>) {
    match ctx.degen {
        Degeneration::MdClone { m } => {
            if m <= 4 && ctx.max_degree < m {
                push_skip(
                    checks,
                    "codim/bound",
                    format!(
                        "certificate needs graded pieces up to degree {m}, max_degree is {}",
                        ctx.max_degree
                    ),
                );
                return;
            }
            if m > 8 && !ctx.allow_slow {
                push_skip(checks, "codim/bound", SLOW_HINT);
                return;
            }
            push_check(checks, "codim/bound", ">= 3", || {
                let rep = clone_codim_certificate(m)?;
                let ring = rep.certificate.ring().clone();
                let witness = rep
                    .certificate
                    .labels()
                    .iter()
                    .zip(rep.certificate.monomials())
                    .map(|(l, mono)| format!("{l}: {}", ring.format_monomial(mono)))
                    .collect::<Vec<_>>()
                    .join("; ");
                Ok((
                    rep.bound >= 3,
                    format!("{}", rep.bound),
                    format!("method {}; {}", rep.method.label(), witness),
                ))
            });
        }
        Degeneration::Sparse { m, r } => {
            if m > 6 && !ctx.allow_slow {
                push_skip(checks, "codim/bound", SLOW_HINT);
                return;
            }
            let expected_bound = if m - r >= 3 { 3 } else { 2 };
            push_check(
                checks,
                "codim/bound",
                format!("{expected_bound}"),
                || {
                    let rep = sparse_codim_certificate(m, r)?;
                    let ring = rep.certificate.ring().clone();
                    let witness = rep
                        .certificate
                        .labels()
                        .iter()
                        .zip(rep.certificate.monomials())
                        .map(|(l, mono)| format!("{l}: {}", ring.format_monomial(mono)))
                        .collect::<Vec<_>>()
                        .join("; ");
                    Ok((rep.bound == expected_bound, format!("{}", rep.bound), witness))
                },
            );
            if m - r == 2 {
                push_check(
                    checks,
                    "codim/containment",
                    "every partial lies in the ideal of the two surviving last-row variables",
                    || {
                        let rep = sparse_codim_certificate(m, r)?;
                        let ok = rep.containment == Some(true);
                        Ok((ok, format!("{:?}", rep.containment), String::new()))
                    },
                );
            } else {
                push_check(
                    checks,
                    "codim/membership",
                    "explicit combination writes the scaled corner cofactor in the gradient ideal",
                    || {
                        let rep = sparse_codim_certificate(m, r)?;
                        let Some(w) = rep.membership else {
                            return Ok((false, "no membership witness".to_string(), String::new()));
                        };
                        let ok = w.verify();
                        let ring = w.ring().clone();
                        Ok((
                            ok,
                            format!("{ok}"),
                            format!(
                                "expected initial {}",
                                ring.format_monomial(&w.expected_initial())
                            ),
                        ))
                    },
                );
            }
        }
        _ => unreachable!("family filtered by the catalog"),
    }
}

fn suite_initials(ctx: &SuiteCtx, checks: &mut Vec<Check>) {
    let m = ctx.m;
    let sizes: Vec<u32> = [m.saturating_sub(2), m - 1, m]
        .into_iter()
        .filter(|&s| s >= 1)
        .collect();
    match ctx.degen {
        Degeneration::Sparse { .. } | Degeneration::Generic { .. } => {
            if m > 5 && !ctx.allow_slow {
                push_skip(checks, "initials/antidiagonal", SLOW_HINT);
                return;
            }
            for &s in &sizes {
                push_check(
                    checks,
                    format!("initials/antidiagonal-size-{s}"),
                    "leading term of every minor sits on its anti-diagonal",
                    || {
                        let mat = ctx.degen.build()?;
                        let ok = antidiagonal_initial_check(&mat, s)?;
                        Ok((ok, format!("{ok}"), String::new()))
                    },
                );
            }
        }
        Degeneration::MdClone { .. } => {
            if m == 3 {
                for (s, expected) in [(1u32, true), (2, false), (3, false)] {
                    push_check(
                        checks,
                        format!("initials/antidiagonal-size-{s}"),
                        format!("{expected} (the cloned corner disturbs sizes 2 and 3)"),
                        || {
                            let mat = ctx.degen.build()?;
                            let ok = antidiagonal_initial_check(&mat, s)?;
                            Ok((ok == expected, format!("{ok}"), String::new()))
                        },
                    );
                }
            } else if m == 6 {
                if !ctx.allow_slow {
                    push_skip(checks, "initials/antidiagonal", SLOW_HINT);
                    return;
                }
                for &s in &sizes {
                    push_check(
                        checks,
                        format!("initials/antidiagonal-size-{s}"),
                        "true (anti-diagonal leading terms recover at size six)",
                        || {
                            let mat = ctx.degen.build()?;
                            let ok = antidiagonal_initial_check(&mat, s)?;
                            Ok((ok, format!("{ok}"), String::new()))
                        },
                    );
                }
            } else {
                push_skip(
                    checks,
                    "initials/antidiagonal",
                    "cloned anti-diagonal behavior is characterized at m = 3 (fails) and m = 6 (recovers)",
                );
            }
        }
        _ => unreachable!("family filtered by the catalog"),
    }
}

fn suite_hessian(ctx: &SuiteCtx, checks: &mut Vec<Check>) {
    if ctx.m > 5 && !ctx.allow_slow {
        push_skip(checks, "hessian/certificate", SLOW_HINT);
        return;
    }
    match ctx.degen {
        Degeneration::Sparse { .. } => {
            push_check(
                checks,
                "hessian/not-homaloidal",
                "vanishing Hessian determinant with maximal linear rank",
                || {
                    let rep = homaloidal_certificate(&ctx.degen, ctx.trials, ctx.seed)?;
                    let ok = !rep.hessian_nonzero && rep.linear_rank == rep.max_linear_rank;
                    Ok((
                        ok,
                        format!(
                            "hessian nonzero: {}, linear rank {}/{}",
                            rep.hessian_nonzero, rep.linear_rank, rep.max_linear_rank
                        ),
                        format!("evidence: {}", rep.evidence.label()),
                    ))
                },
            );
        }
        _ => {
            push_check(
                checks,
                "hessian/homaloidal",
                "nonzero Hessian determinant and maximal linear rank",
                || {
                    let rep = homaloidal_certificate(&ctx.degen, ctx.trials, ctx.seed)?;
                    Ok((
                        rep.homaloidal,
                        format!(
                            "hessian nonzero: {}, linear rank {}/{}",
                            rep.hessian_nonzero, rep.linear_rank, rep.max_linear_rank
                        ),
                        format!("evidence: {}", rep.evidence.label()),
                    ))
                },
            );
            if matches!(ctx.degen, Degeneration::MdClone { .. }) && (4..=5).contains(&ctx.m) {
                push_check(
                    checks,
                    "hessian/diagonal-specialization",
                    "off-blocks vanish and the block determinant is a nonzero monomial",
                    || {
                        let mat = ctx.degen.build()?;
                        let rep = diagonal_specialization_check(&mat)?;
                        Ok((
                            rep.passed(),
                            format!(
                                "blocks vanish: {}, monomial determinant: {}",
                                rep.blocks_vanish, rep.det_is_monomial
                            ),
                            String::new(),
                        ))
                    },
                );
            }
        }
    }
}

fn suite_polar(ctx: &SuiteCtx, checks: &mut Vec<Check>) {
    if ctx.m > 5 && !ctx.allow_slow {
        push_skip(checks, "polar/hessian-rank", SLOW_HINT);
        return;
    }
    let expected = match ctx.degen {
        Degeneration::Sparse { r, .. } => ctx.pair_count() - 2 * zero_count(r) as usize,
        Degeneration::MdClone { .. } => ctx.pair_count() - 1,
        _ => ctx.pair_count(),
    };
    push_check(
        checks,
        "polar/hessian-rank",
        format!("{expected}"),
        || {
            let mat = ctx.degen.build()?;
            let f = mat.determinant();
            let h = HessianData::compute(&f, mat.surviving_vars());
            let est = hessian_generic_rank(&h, ctx.trials, ctx.seed);
            Ok((
                est.value == expected,
                format!("{}", est.value),
                format!("sampled over {} trials, seed {}", est.trials, est.seed),
            ))
        },
    );
}

fn suite_dual(ctx: &SuiteCtx, checks: &mut Vec<Check>) {
    push_check(
        checks,
        "dual/ladder-anchored",
        "endomorphism fixes every position with i + j <= m + 2",
        || {
            let ok = is_ladderlike(&ctx.degen)?;
            Ok((ok, format!("{ok}"), String::new()))
        },
    );
    if ctx.m > 5 && !ctx.allow_slow {
        push_skip(checks, "dual/hessian-rank-on-hypersurface", SLOW_HINT);
        return;
    }
    let expected = (ctx.m + 1) as usize;
    push_check(
        checks,
        "dual/hessian-rank-on-hypersurface",
        format!("{expected}"),
        || {
            let mat = ctx.degen.build()?;
            let f = mat.determinant();
            let rep = dual_dimension(&f, ctx.trials, ctx.seed)?;
            let within = rep.ranks.iter().all(|&r| r <= expected);
            Ok((
                rep.rank == expected && within,
                format!("{}", rep.rank),
                format!("dual dimension {}, per-trial ranks {:?}", rep.dimension, rep.ranks),
            ))
        },
    );
}

fn suite_ladder(ctx: &SuiteCtx, checks: &mut Vec<Check>) {
    let system = || match ctx.degen {
        Degeneration::MdClone { m } => dual_ladder_clone(m),
        Degeneration::Sparse { m, r } => dual_ladder_sparse(m, r),
        _ => dual_ladder_sparse(ctx.m, 0),
    };
    push_check(
        checks,
        "ladder/system",
        "pairwise distinct minors supported on the mask",
        || {
            let sys = system()?;
            Ok((
                sys.verify(),
                format!("{} generators", sys.len()),
                format!("mask keeps {} positions", sys.mask().len()),
            ))
        },
    );
    if ctx.m > 4 && !ctx.allow_slow {
        push_skip(checks, "ladder/divisible-by-determinant", SLOW_HINT);
        if matches!(ctx.degen, Degeneration::MdClone { .. }) {
            push_skip(checks, "ladder/quadric", SLOW_HINT);
        }
        return;
    }
    push_check(
        checks,
        "ladder/divisible-by-determinant",
        "every substituted minor is exactly divisible by det",
        || {
            let sys = system()?;
            let table = ctx.degen.build()?.cofactors();
            let ok = ladder_divisibility_check(&sys, &table)?;
            Ok((ok, format!("{ok}"), format!("{} generators checked", sys.len())))
        },
    );
    if matches!(ctx.degen, Degeneration::MdClone { .. }) {
        push_check(
            checks,
            "ladder/quadric",
            "extra quadric divisible by det and outside the ladder span",
            || {
                let rep = quadric_check_clone(ctx.m)?;
                Ok((
                    rep.passed(),
                    format!(
                        "divisible: {}, outside span: {}",
                        rep.divisible, rep.outside_ladder_span
                    ),
                    format!("quadric {}", rep.quadric),
                ))
            },
        );
    }
}

fn suite_polar_ladder(ctx: &SuiteCtx, checks: &mut Vec<Check>) {
    let Degeneration::Sparse { m, r } = ctx.degen else {
        unreachable!("family filtered by the catalog")
    };
    push_check(
        checks,
        "polar-ladder/system",
        "pairwise distinct minors supported on the mask",
        || {
            let sys = polar_ladder_sparse(m, r)?;
            Ok((
                sys.verify(),
                format!("{} minors of size {}", sys.len(), sys.minor_size()),
                format!("mask keeps {} positions", sys.mask().len()),
            ))
        },
    );
    let cheap = m <= 4 || (m == 5 && r >= 2);
    if !cheap && !ctx.allow_slow {
        push_skip(checks, "polar-ladder/vanishes", SLOW_HINT);
        return;
    }
    push_check(
        checks,
        "polar-ladder/vanishes",
        "every substituted minor is the zero polynomial",
        || {
            let sys = polar_ladder_sparse(m, r)?;
            let table = ctx.degen.build()?.cofactors();
            let ok = ladder_vanishing_check(&sys, &table);
            Ok((ok, format!("{ok}"), format!("{} minors checked", sys.len())))
        },
    );
}

fn suite_multiplicity(ctx: &SuiteCtx, checks: &mut Vec<Check>) {
    match ctx.degen {
        Degeneration::MdClone { m } => {
            let expected_k = (m * (m - 1) / 2 - 2) as u32;
            if m == 3 {
                push_check(
                    checks,
                    "multiplicity/exact",
                    "k = 1 with residual degree 2",
                    || {
                        let f = ctx.degen.build()?.determinant();
                        let rep = hessian_multiplicity(
                            &f,
                            MultiplicityMethod::ExactDivision { max_vars: 6 },
                        )?;
                        Ok((
                            rep.k == 1 && rep.residual_degree == 2 && !rep.hessian_vanishes,
                            format!("k = {}, residual degree {}", rep.k, rep.residual_degree),
                            String::new(),
                        ))
                    },
                );
                push_check(
                    checks,
                    "multiplicity/line-agrees",
                    "line restriction reproduces k = 1",
                    || {
                        let f = ctx.degen.build()?.determinant();
                        let rep = hessian_multiplicity(
                            &f,
                            MultiplicityMethod::LineRestriction { seed: ctx.seed },
                        )?;
                        Ok((
                            rep.k == 1 && !rep.hessian_vanishes,
                            format!("k = {}", rep.k),
                            format!("residual degree {}", rep.residual_degree),
                        ))
                    },
                );
            } else if m == 4 || ctx.allow_slow {
                push_check(
                    checks,
                    "multiplicity/line",
                    format!("k = {expected_k}"),
                    || {
                        let f = ctx.degen.build()?.determinant();
                        let rep = hessian_multiplicity(
                            &f,
                            MultiplicityMethod::LineRestriction { seed: ctx.seed },
                        )?;
                        Ok((
                            rep.k == expected_k && !rep.hessian_vanishes,
                            format!("k = {}", rep.k),
                            format!("residual degree {}", rep.residual_degree),
                        ))
                    },
                );
            } else {
                push_skip(checks, "multiplicity/line", SLOW_HINT);
            }
        }
        Degeneration::Sparse { m, .. } => {
            if m == 3 {
                push_check(
                    checks,
                    "multiplicity/vanishing-hessian",
                    "Hessian determinant identically zero",
                    || {
                        let f = ctx.degen.build()?.determinant();
                        let rep = hessian_multiplicity(
                            &f,
                            MultiplicityMethod::ExactDivision { max_vars: 6 },
                        )?;
                        Ok((rep.hessian_vanishes, format!("{}", rep.hessian_vanishes), String::new()))
                    },
                );
            } else if m == 4 || ctx.allow_slow {
                push_check(
                    checks,
                    "multiplicity/vanishing-hessian",
                    "Hessian determinant vanishes along every sampled line",
                    || {
                        let f = ctx.degen.build()?.determinant();
                        let rep = hessian_multiplicity(
                            &f,
                            MultiplicityMethod::LineRestriction { seed: ctx.seed },
                        )?;
                        Ok((rep.hessian_vanishes, format!("{}", rep.hessian_vanishes), String::new()))
                    },
                );
            } else {
                push_skip(checks, "multiplicity/vanishing-hessian", SLOW_HINT);
            }
        }
        _ => unreachable!("family filtered by the catalog"),
    }
}

fn suite_gorenstein(ctx: &SuiteCtx, checks: &mut Vec<Check>) {
    let Degeneration::Sparse { m, r } = ctx.degen else {
        unreachable!("family filtered by the catalog")
    };
    let expected = r == m - 2;
    push_check(
        checks,
        "gorenstein/value",
        format!("{expected}"),
        || {
            let value = gorenstein_check(m, r)?;
            Ok((
                value == expected,
                format!("{value}"),
                format!("2m - r - 1 = {} vs m + 1 = {}", 2 * m - r - 1, m + 1),
            ))
        },
    );
}

fn suite_hypersurface(ctx: &SuiteCtx, checks: &mut Vec<Check>) {
    let m = ctx.m;
    if m > 4 && !ctx.allow_slow {
        push_skip(checks, "hypersurface/collapse", SLOW_HINT);
        return;
    }
    push_check(
        checks,
        "hypersurface/collapse",
        "difference of corner cofactors pulls back to zero under the polar map",
        || {
            let rep = hypersurface_equation_clone(m)?;
            Ok((
                rep.substitution_vanishes,
                format!("{}", rep.substitution_vanishes),
                String::new(),
            ))
        },
    );
    push_check(
        checks,
        "hypersurface/degree",
        format!("{}", m - 1),
        || {
            let rep = hypersurface_equation_clone(m)?;
            Ok((rep.degree == rep.expected_degree, format!("{}", rep.degree), String::new()))
        },
    );
    push_check(
        checks,
        "hypersurface/double-adjugate-corners",
        "both corner entries equal det^(m-2) times the cloned variable",
        || {
            let rep = hypersurface_equation_clone(m)?;
            Ok((
                rep.corner_entries_match,
                format!("{}", rep.corner_entries_match),
                String::new(),
            ))
        },
    );
}

//! The `iwmw` command line: parse an input document, check hypotheses, solve
//! for the multiplicities and print the structure results.
//!
//! Exit codes: 0 on success, 1 when validation fails (bad input data, failed
//! hypotheses, rejected shapes, failing self-checks, fetch errors), 2 on
//! usage errors. Diagnostics go to standard error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::cyclotomic::Sign;
use crate::group::FiniteAbelianGroup;
use crate::hypotheses::{HypothesisReport, ReductionType};
use crate::input::{parse_input_with, Instance, ParseOptions};
use crate::lmfdb::{classify_curve, Client, ClientConfig};
use crate::rank_data::{growth_summary, solve_e_alpha, EAlphaTable, GrowthSummary};
use crate::report::*;
use crate::selmer::{validate_selmer_shape, SelmerShape};
use crate::structure::{
    equivariant_fine, equivariant_pm, fine_mw_structure, greenberg_rhs, kp_rhs, pm_gcd_closed_form,
    pm_mw_structure, selmer_gcd, signed_exponent, StructureError,
};
use crate::verify;

#[derive(Debug, Parser)]
#[command(name = "iwmw", version, about = "Lambda-module structure of fine and plus/minus Mordell-Weil groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Input document (JSON).
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Resolve curve labels from fixtures and cache only.
    #[arg(long, global = true)]
    pub offline: bool,
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Use only levels 0..=N of the rank table.
    #[arg(long, global = true)]
    pub max_level: Option<usize>,
    /// Accept groups with a prime in more than one cyclic factor.
    #[arg(long, global = true)]
    pub allow_repeated_primes: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    #[value(alias = "structured")]
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SignArg {
    Plus,
    Minus,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the rational irreducible representations of the group.
    Reps {
        /// Group as prime powers, e.g. `2,3^2`; defaults to the input's group.
        group: Option<String>,
    },
    /// Report the hypotheses on p, K and the curve.
    Check,
    /// Characteristic ideal of the dual fine Mordell-Weil group.
    Fine,
    /// Plus and minus characteristic ideals and their gcd.
    Pm,
    /// Decomposition over the irreducible representations.
    Equivariant {
        #[arg(long, value_enum)]
        sign: Option<SignArg>,
    },
    /// Compare the fine ideal with the Greenberg target.
    Greenberg,
    /// Compare the plus/minus gcd with the Kurihara-Pollack target.
    Kp {
        /// Also report the Selmer gcd `x^t prod Phi_n^(e_n - 1)`.
        #[arg(long)]
        t: Option<u64>,
    },
    /// Validate a Selmer shape document given by --input.
    SelmerValidate {
        /// Instance whose rank growth the shape must match.
        #[arg(long)]
        instance: Option<PathBuf>,
    },
    /// Run the self-checks against independent computations.
    VerifyOracles {
        #[arg(long, default_value_t = 60)]
        max_order: u64,
    },
    /// Fetch curve data by label.
    Fetch {
        label: String,
        /// Classify the reduction type at this prime.
        #[arg(long)]
        prime: Option<u64>,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Invalid(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Invalid(_) => 1,
            Failure::Usage(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Invalid(m) => m,
        }
    }
}

fn invalid(e: impl std::fmt::Display) -> Failure {
    Failure::Invalid(e.to_string())
}

/// Outcome of a subcommand: the rendered report and whether it counts as a
/// validation failure.
struct Output {
    body: String,
    ok: bool,
}

fn emit<R: Render>(r: &R, format: Format, ok: bool) -> Output {
    Output {
        body: match format {
            Format::Text => r.to_text(),
            Format::Json => r.to_json(),
        },
        ok,
    }
}

/// Runs the tool on `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = out.write_all(text.as_bytes());
            } else {
                let _ = err.write_all(text.as_bytes());
            }
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(o) => {
            let _ = out.write_all(o.body.as_bytes());
            i32::from(!o.ok)
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message());
            f.code()
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn load(cli: &Cli, path: Option<&Path>) -> Result<Instance, Failure> {
    let path = path.ok_or_else(|| Failure::Usage("this subcommand needs --input <FILE>".into()))?;
    let opts = ParseOptions {
        allow_repeated_primes: cli.allow_repeated_primes,
    };
    let inst = parse_input_with(&read(path)?, opts).map_err(|e| Failure::Invalid(format!("{}: {e}", e.kind())))?;
    match cli.max_level {
        Some(n) => inst.truncated(n).map_err(invalid),
        None => Ok(inst),
    }
}

struct Solved {
    inst: Instance,
    hyp: HypothesisReport,
    ea: EAlphaTable,
    gs: GrowthSummary,
}

fn solve(cli: &Cli) -> Result<Solved, Failure> {
    let inst = load(cli, cli.input.as_deref())?;
    let hyp = HypothesisReport::new(&inst.field, inst.p, inst.ap()).map_err(invalid)?;
    let ea = solve_e_alpha(inst.group(), inst.p, &inst.table).map_err(invalid)?;
    let gs = growth_summary(inst.group(), &ea).map_err(invalid)?;
    Ok(Solved { inst, hyp, ea, gs })
}

fn require_fine(s: &Solved) -> Result<(), Failure> {
    if s.hyp.fine_ok() {
        Ok(())
    } else {
        Err(Failure::Invalid(format!(
            "fine hypotheses fail: {}",
            s.hyp.failures().join(", ")
        )))
    }
}

/// Supersingular reduction first, then the remaining signed hypotheses.
fn require_pm(s: &Solved) -> Result<ReductionType, Failure> {
    let reduction = s
        .hyp
        .reduction
        .ok_or_else(|| Failure::Invalid("pm requires supersingular reduction (a_p not given)".into()))?;
    if reduction != ReductionType::Supersingular {
        return Err(invalid(StructureError::RequiresSupersingular(reduction)));
    }
    if !s.hyp.pm_ok() {
        return Err(Failure::Invalid(format!(
            "plus/minus hypotheses fail: {}",
            s.hyp.failures().join(", ")
        )));
    }
    Ok(reduction)
}

fn parse_group(spec: &str, allow_repeated: bool) -> Result<FiniteAbelianGroup, Failure> {
    let mut factors = Vec::new();
    for part in spec.split(',').map(str::trim).filter(|s| !s.is_empty() && *s != "1") {
        let (p, k) = part.split_once('^').unwrap_or((part, "1"));
        let p = p.trim().parse::<u64>();
        let k = k.trim().parse::<u32>();
        match (p, k) {
            (Ok(p), Ok(k)) => factors.push((p, k)),
            _ => return Err(Failure::Usage(format!("bad group factor {part:?}; expected p or p^k"))),
        }
    }
    if allow_repeated {
        FiniteAbelianGroup::with_repeated_primes(factors)
    } else {
        FiniteAbelianGroup::new(factors)
    }
    .map_err(|e| Failure::Usage(e.to_string()))
}

fn dispatch(cli: &Cli) -> Result<Output, Failure> {
    let f = cli.format;
    match &cli.command {
        Command::Reps { group } => {
            let g = match group {
                Some(spec) => parse_group(spec, cli.allow_repeated_primes)?,
                None => load(cli, cli.input.as_deref())?.group().clone(),
            };
            Ok(emit(&RepsReport::new(&g), f, true))
        }
        Command::Check => {
            let inst = load(cli, cli.input.as_deref())?;
            let hyp = HypothesisReport::new(&inst.field, inst.p, inst.ap()).map_err(invalid)?;
            let ok = hyp.fine_ok() || hyp.pm_ok();
            let r = CheckReport {
                fine_ok: hyp.fine_ok(),
                pm_ok: hyp.pm_ok(),
                failures: hyp.failures(),
                hypotheses: hyp,
                assumptions: Assumptions::new(inst.assume_fine_sha_finite),
            };
            Ok(emit(&r, f, ok))
        }
        Command::Fine => {
            let s = solve(cli)?;
            require_fine(&s)?;
            let fs = fine_mw_structure(s.inst.p, &s.gs);
            let r = FineReport {
                p: s.inst.p,
                group: s.inst.group().to_string(),
                e_alpha: s
                    .ea
                    .entries()
                    .map(|(a, level, e)| EAlphaEntry {
                        tuple: a.clone(),
                        level,
                        e,
                    })
                    .collect(),
                growth: s.gs.clone(),
                exponents: fs.exponents.clone(),
                ideal: IdealView::from(&fs.ideal),
                assumptions: Assumptions::new(s.inst.assume_fine_sha_finite),
            };
            Ok(emit(&r, f, true))
        }
        Command::Pm => {
            let s = solve(cli)?;
            let reduction = require_pm(&s)?;
            let pm = pm_mw_structure(s.inst.p, &s.gs, reduction).map_err(invalid)?;
            let r = PmReport {
                p: s.inst.p,
                group: s.inst.group().to_string(),
                reduction,
                growth: s.gs.clone(),
                gcd_matches_closed_form: pm.gcd == pm_gcd_closed_form(s.inst.p, &s.gs),
                r_plus: pm.r_plus.clone(),
                r_minus: pm.r_minus.clone(),
                char_plus: IdealView::from(&pm.char_plus),
                char_minus: IdealView::from(&pm.char_minus),
                gcd: IdealView::from(&pm.gcd),
                assumptions: Assumptions::new(s.inst.assume_fine_sha_finite),
            };
            Ok(emit(&r, f, true))
        }
        Command::Equivariant { sign } => {
            let s = solve(cli)?;
            let g = s.inst.group();
            let levels = s.gs.levels();
            let (kind, d, ideal_exponents) = match sign {
                None => {
                    require_fine(&s)?;
                    ("fine", equivariant_fine(&s.ea), s.gs.s.clone())
                }
                Some(sa) => {
                    require_pm(&s)?;
                    let (sign, kind) = match sa {
                        SignArg::Plus => (Sign::Plus, "plus"),
                        SignArg::Minus => (Sign::Minus, "minus"),
                    };
                    let exps = (0..levels).map(|n| signed_exponent(&s.gs, n, sign)).collect();
                    (kind, equivariant_pm(&s.ea, sign), exps)
                }
            };
            let contraction: Vec<u64> = (0..levels).map(|n| d.contraction(g, n)).collect();
            let r = EquivariantReport {
                p: s.inst.p,
                group: g.to_string(),
                kind,
                summands: EquivariantReport::summands(g, &d),
                consistent: contraction == ideal_exponents,
                contraction,
                ideal_exponents,
                assumptions: Assumptions::new(s.inst.assume_fine_sha_finite),
            };
            Ok(emit(&r, f, true))
        }
        Command::Greenberg => {
            let s = solve(cli)?;
            require_fine(&s)?;
            let target = greenberg_rhs(s.inst.p, &s.gs.e);
            let computed = fine_mw_structure(s.inst.p, &s.gs).ideal;
            let r = TargetReport {
                p: s.inst.p,
                group: s.inst.group().to_string(),
                target: "greenberg",
                e: s.gs.e.clone(),
                coincide: target == computed,
                target_ideal: IdealView::from(&target),
                computed_ideal: IdealView::from(&computed),
                selmer_gcd: None,
                assumptions: Assumptions::new(s.inst.assume_fine_sha_finite),
            };
            Ok(emit(&r, f, true))
        }
        Command::Kp { t } => {
            let s = solve(cli)?;
            require_pm(&s)?;
            let target = kp_rhs(s.inst.p, &s.gs.e);
            let computed = pm_gcd_closed_form(s.inst.p, &s.gs);
            let selmer = t
                .map(|t| selmer_gcd(s.inst.p, &s.gs.e, t))
                .transpose()
                .map_err(invalid)?;
            let r = TargetReport {
                p: s.inst.p,
                group: s.inst.group().to_string(),
                target: "kp",
                e: s.gs.e.clone(),
                coincide: target == computed,
                target_ideal: IdealView::from(&target),
                computed_ideal: IdealView::from(&computed),
                selmer_gcd: selmer.as_ref().map(IdealView::from),
                assumptions: Assumptions::new(s.inst.assume_fine_sha_finite),
            };
            Ok(emit(&r, f, true))
        }
        Command::SelmerValidate { instance } => {
            let path = cli
                .input
                .as_deref()
                .ok_or_else(|| Failure::Usage("selmer-validate needs --input <SHAPE>".into()))?;
            let shape: SelmerShape =
                serde_json::from_str(&read(path)?).map_err(|e| Failure::Invalid(format!("schema: {e}")))?;
            let gs = match instance {
                Some(p) => {
                    let inst = load(cli, Some(p))?;
                    let ea = solve_e_alpha(inst.group(), inst.p, &inst.table).map_err(invalid)?;
                    Some(growth_summary(inst.group(), &ea).map_err(invalid)?)
                }
                None => None,
            };
            let r = validate_selmer_shape(&shape, gs.as_ref()).map_err(invalid)?;
            let ok = r.accepted;
            Ok(emit(&r, f, ok))
        }
        Command::VerifyOracles { max_order } => {
            let suites = verify::run_all(*max_order).map_err(|e| Failure::Usage(e.to_string()))?;
            let passed = suites.iter().all(verify::SuiteResult::passed);
            let r = VerifyReport {
                max_order: *max_order,
                suites,
                passed,
            };
            Ok(emit(&r, f, passed))
        }
        Command::Fetch { label, prime } => {
            let client = Client::new(ClientConfig {
                cache_dir: cli.cache_dir.clone(),
                offline: cli.offline,
                ..ClientConfig::default()
            });
            let fetched = client.fetch_curve(label).map_err(invalid)?;
            let classification = prime.map(|p| classify_curve(&fetched, p)).transpose().map_err(invalid)?;
            Ok(emit(
                &FetchReport {
                    fetched,
                    classification,
                },
                f,
                true,
            ))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_specs() {
        assert_eq!(parse_group("2,3^2", false).unwrap().to_string(), "Z/2 x Z/3^2");
        assert!(parse_group("", false).unwrap().is_trivial());
        assert!(parse_group("3,3", false).is_err());
        assert!(parse_group("3,3", true).is_ok());
        assert!(parse_group("x", false).is_err());
    }

    #[test]
    fn usage_errors() {
        let (mut o, mut e) = (Vec::new(), Vec::new());
        assert_eq!(run(["iwmw"], &mut o, &mut e), 2);
        assert_eq!(run(["iwmw", "fine"], &mut o, &mut e), 2);
        assert_eq!(run(["iwmw", "--version"], &mut o, &mut e), 0);
    }
}

//! Command-line dispatch. [`run`] never exits the process; the binary maps the
//! returned outcome to stdout and an exit status.

use std::ffi::OsString;
use std::fs;
use std::io::Read as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use hypfree_core::bpoly::b_polynomial;
use hypfree_core::families::{cat_shi, catalan, shi, shi_cat};
use hypfree_core::freepath::{free_path_with, FreenessCache, PathStatus, MAX_DIFFERENCE};
use hypfree_core::{
    char_poly, is_free, minimal_generators, pentagon, spog_check, weyl, Arrangement, Field, RootType, SpogVerdict,
    Verdict,
};

use crate::check::check_json;
use crate::format::{parse_arrangement, parse_field, write_arrangement};
use crate::harness::{self, CorpusConfig, Harness};
use crate::json::{ArrangementDoc, Certificate, DerivationDoc, PolyDoc, SCHEMA, TOOL_VERSION};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutcome {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CommandOutcome {
    fn ok(stdout: String) -> Self {
        CommandOutcome { exit_code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn with_code(exit_code: i32, stdout: String) -> Self {
        CommandOutcome { exit_code, stdout, stderr: String::new() }
    }

    fn usage(msg: impl Into<String>) -> Self {
        CommandOutcome { exit_code: EXIT_USAGE, stdout: String::new(), stderr: msg.into() }
    }
}

#[derive(Parser, Debug)]
#[command(name = "hypfree", version, about = "Freeness, SPOG structure and free paths of hyperplane arrangements")]
struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Degree cap for generator and SPOG searches (default |A|).
    #[arg(long, global = true, env = "HYPFREE_DMAX")]
    dmax: Option<u32>,
    /// Coefficient field for input files: `Q` or `Qsqrt5`.
    #[arg(long, global = true, value_parser = field_arg)]
    field: Option<Field>,
    /// Worker threads for harness runs (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

fn field_arg(s: &str) -> Result<Field, String> {
    parse_field(s).ok_or_else(|| format!("unknown field `{s}`"))
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide freeness and print the exponents or the reason.
    CheckFree(FileArg),
    /// Exponents of a free arrangement.
    Exponents(FileArg),
    /// Minimal generators of D(A) up to --dmax.
    Generators(FileArg),
    /// SPOG verdict and certificate.
    Spog(FileArg),
    /// Characteristic polynomial.
    Charpoly(FileArg),
    /// The polynomial B for deleting hyperplane I (0-based, file order).
    Bpoly {
        file: Option<String>,
        #[arg(long)]
        delete: usize,
    },
    /// Free path between nested free arrangements.
    Freepath { sub: String, sup: String },
    /// Rank-two Weyl, Catalan and Shi arrangements.
    Family {
        kind: FamilyKind,
        #[arg(long = "type")]
        root_type: RootType,
        #[arg(short = 'k')]
        k: u32,
        #[arg(long = "k2")]
        k2: Option<u32>,
    },
    /// The pentagon pair over Q(√5).
    Pentagon {
        #[arg(long, conflicts_with_all = ["sup", "both"])]
        sub: bool,
        #[arg(long = "super", conflicts_with = "both")]
        sup: bool,
        #[arg(long)]
        both: bool,
    },
    /// Corpus harnesses.
    Verify {
        harness: Harness,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 8)]
        nmax: usize,
        #[arg(long, default_value_t = 3)]
        bound: u32,
        /// Skip the pentagon and family instances.
        #[arg(long)]
        random_only: bool,
    },
    /// Re-verify a JSON certificate.
    CheckCert(FileArg),
}

#[derive(Args, Debug)]
struct FileArg {
    /// Input file; `-` or absent reads standard input.
    file: Option<String>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FamilyKind {
    Weyl,
    Cat,
    Shi,
    Catshi,
    Shicat,
}

/// `-k2 K2` is accepted as a spelling of `--k2 K2`.
fn normalize(argv: Vec<OsString>) -> Vec<OsString> {
    argv.into_iter().map(|a| if a == "-k2" { OsString::from("--k2") } else { a }).collect()
}

fn read_input(path: Option<&str>) -> Result<String, String> {
    match path {
        None | Some("-") => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| format!("stdin: {e}"))?;
            Ok(s)
        }
        Some(p) => fs::read_to_string(p).map_err(|e| format!("{p}: {e}")),
    }
}

fn load(path: Option<&str>, field: Option<Field>) -> Result<Arrangement, String> {
    let text = read_input(path)?;
    parse_arrangement(&text, field).map_err(|e| format!("{}: {e}", path.unwrap_or("<stdin>")))
}

fn exps_text(e: &[u32]) -> String {
    format!("({})", e.iter().map(u32::to_string).collect::<Vec<_>>().join(","))
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

pub fn run<I, T>(argv: I) -> CommandOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv = normalize(argv.into_iter().map(Into::into).collect());
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => CommandOutcome::ok(text),
                _ => CommandOutcome::usage(text),
            };
        }
    };
    match dispatch(&cli) {
        Ok(o) => o,
        Err(msg) => CommandOutcome::usage(format!("error: {msg}\n")),
    }
}

fn dispatch(cli: &Cli) -> Result<CommandOutcome, String> {
    let field = cli.field;
    match &cli.command {
        Command::CheckFree(f) | Command::Exponents(f) => {
            let a = load(f.file.as_deref(), field)?;
            let r = is_free(&a);
            if cli.json {
                return Ok(CommandOutcome::ok(Certificate::freeness(&a, &r).to_json() + "\n"));
            }
            let exponents_only = matches!(cli.command, Command::Exponents(_));
            let text = match (&r.verdict, exponents_only) {
                (Verdict::Free(c), false) => format!("FREE exponents {}\n", exps_text(&c.exponents)),
                (Verdict::Free(c), true) => format!("{}\n", exps_text(&c.exponents)),
                (Verdict::NotFree(reason), _) => format!("NOT_FREE ({})\n", reason.as_str()),
            };
            Ok(CommandOutcome::ok(text))
        }
        Command::Generators(f) => {
            let a = load(f.file.as_deref(), field)?;
            let d = cli.dmax.unwrap_or(a.len() as u32);
            let g = minimal_generators(&a, d);
            if cli.json {
                let v = json!({
                    "schema": SCHEMA,
                    "tool_version": TOOL_VERSION,
                    "arrangement": ArrangementDoc::from_arrangement(&a),
                    "complete_up_to": g.complete_up_to,
                    "hilbert": g.hilbert,
                    "generators": g.generators.iter().map(DerivationDoc::from_derivation).collect::<Vec<_>>(),
                });
                return Ok(CommandOutcome::ok(pretty(&v)));
            }
            let mut s = format!("{} generators through degree {}, degrees {}\n", g.len(), d, exps_text(&g.degrees()));
            for th in &g.generators {
                s += &format!("  [{}] {}\n", th.degree(), th);
            }
            Ok(CommandOutcome::ok(s))
        }
        Command::Spog(f) => {
            let a = load(f.file.as_deref(), field)?;
            let d = cli.dmax.unwrap_or(a.len() as u32);
            let v = spog_check(&a, d);
            match (&v, cli.json) {
                (SpogVerdict::Spog(c), true) => Ok(CommandOutcome::ok(Certificate::spog(&a, c).to_json() + "\n")),
                (SpogVerdict::Spog(c), false) => Ok(CommandOutcome::ok(format!(
                    "SPOG POexp {} level {}\n",
                    exps_text(&c.poexp),
                    c.level
                ))),
                (SpogVerdict::NotSpog(r), true) => {
                    Ok(CommandOutcome::ok(pretty(&json!({"kind": "not_spog", "reason": r.describe()}))))
                }
                (SpogVerdict::NotSpog(r), false) => Ok(CommandOutcome::ok(format!("NOT_SPOG ({})\n", r.describe()))),
                (SpogVerdict::Inconclusive { d_max }, true) => Ok(CommandOutcome::with_code(
                    EXIT_INCONCLUSIVE,
                    pretty(&json!({"kind": "inconclusive", "d_max": d_max})),
                )),
                (SpogVerdict::Inconclusive { d_max }, false) => {
                    Ok(CommandOutcome::with_code(EXIT_INCONCLUSIVE, format!("INCONCLUSIVE at d_max {d_max}\n")))
                }
            }
        }
        Command::Charpoly(f) => {
            let a = load(f.file.as_deref(), field)?;
            let c = char_poly(&a);
            if cli.json {
                let v = json!({"coeffs": c.coeffs, "roots": c.nonneg_integer_roots()});
                return Ok(CommandOutcome::ok(pretty(&v)));
            }
            let roots = c.nonneg_integer_roots().map(|r| format!(" = ∏ (t − d) over {}", exps_text(&r)));
            Ok(CommandOutcome::ok(format!("{c}{}\n", roots.unwrap_or_default())))
        }
        Command::Bpoly { file, delete } => {
            let a = load(file.as_deref(), field)?;
            let text = read_input(file.as_deref())?;
            // indices refer to the order of the file, not the sorted order
            let order = file_order(&text, &a)?;
            let i = *order.get(*delete).ok_or_else(|| format!("index {delete} out of range (|A| = {})", a.len()))?;
            let h = a.hyperplane(i).map_err(|e| e.to_string())?.clone();
            let a_prime = a.delete(i).map_err(|e| e.to_string())?;
            let b = b_polynomial(&a_prime, &h).map_err(|e| e.to_string());
            match b {
                Ok(b) if cli.json => Ok(CommandOutcome::ok(pretty(&json!({
                    "degree": b.degree,
                    "b": PolyDoc::from_poly(&b.poly),
                    "restricted": PolyDoc::from_poly(&b.restricted),
                })))),
                Ok(b) => Ok(CommandOutcome::ok(format!("deg B = {}\nB = {}\n", b.degree, b.poly))),
                Err(e) => Ok(CommandOutcome::with_code(EXIT_VIOLATION, format!("B verification failed: {e}\n"))),
            }
        }
        Command::Freepath { sub, sup } => {
            let b = load(Some(sub), field)?;
            let a = load(Some(sup), field)?;
            let r = free_path_with(&b, &a, &mut FreenessCache::new(), MAX_DIFFERENCE).map_err(|e| e.to_string())?;
            let code = if r.status == PathStatus::Inconclusive { EXIT_INCONCLUSIVE } else { EXIT_OK };
            if cli.json {
                return Ok(CommandOutcome::with_code(code, Certificate::path(&b, &a, &r).to_json() + "\n"));
            }
            let mut s = format!("{} ({} subsets explored)\n", r.status.as_str(), r.explored.len());
            for (k, n) in r.chain.iter().enumerate() {
                s += &format!("# step {k}: {} planes, exponents {}\n", n.arrangement.len(), exps_text(&n.certificate.exponents));
                s += &write_arrangement(&n.arrangement);
            }
            Ok(CommandOutcome::with_code(code, s))
        }
        Command::Family { kind, root_type, k, k2 } => {
            let rs = weyl(*root_type);
            let k2 = k2.unwrap_or(*k);
            let a = match kind {
                FamilyKind::Weyl => catalan(&rs, 0, 0),
                FamilyKind::Cat => catalan(&rs, *k, k2),
                FamilyKind::Shi => shi(&rs, *k, k2).map_err(|e| e.to_string())?,
                FamilyKind::Catshi => cat_shi(&rs, *k, k2).map_err(|e| e.to_string())?,
                FamilyKind::Shicat => shi_cat(&rs, *k, k2).map_err(|e| e.to_string())?,
            };
            emit_arrangements(cli.json, &[("family", &a)])
        }
        Command::Pentagon { sub, sup, both } => {
            let (a, b) = pentagon();
            match (sub, sup, both) {
                (true, _, _) => emit_arrangements(cli.json, &[("sub", &b)]),
                (_, true, _) => emit_arrangements(cli.json, &[("super", &a)]),
                (_, _, true) => emit_arrangements(cli.json, &[("super", &a), ("sub", &b)]),
                _ => Err("choose one of --sub, --super, --both".into()),
            }
        }
        Command::Verify { harness: h, seed, count, nmax, bound, random_only } => {
            if *nmax < 4 {
                return Err("--nmax must be at least 4".into());
            }
            let cfg = CorpusConfig {
                seed: *seed,
                count: *count,
                n_min: 4,
                n_max: *nmax,
                bound: *bound,
                named: !random_only,
                d_max: cli.dmax,
            };
            let rep = harness::run(*h, &cfg, cli.threads)?;
            let code = if rep.violations > 0 {
                EXIT_VIOLATION
            } else if rep.inconclusive > 0 {
                EXIT_INCONCLUSIVE
            } else {
                EXIT_OK
            };
            let out = if cli.json {
                rep.to_json() + "\n"
            } else {
                let mut s = rep.summary() + "\n";
                for r in &rep.reports {
                    for v in &r.violations {
                        s += &format!("VIOLATION {}: {v}\n", r.instance);
                    }
                }
                s
            };
            Ok(CommandOutcome::with_code(code, out))
        }
        Command::CheckCert(f) => {
            let text = read_input(f.file.as_deref())?;
            match check_json(&text) {
                Ok(r) if cli.json => Ok(CommandOutcome::ok(pretty(&json!({"valid": true, "kind": r.kind, "summary": r.summary})))),
                Ok(r) => Ok(CommandOutcome::ok(format!("VALID {}\n", r.summary))),
                Err(crate::check::CheckError::Rejected(m)) if cli.json => Ok(CommandOutcome::with_code(
                    EXIT_VIOLATION,
                    pretty(&json!({"valid": false, "reason": m})),
                )),
                Err(crate::check::CheckError::Rejected(m)) => {
                    Ok(CommandOutcome::with_code(EXIT_VIOLATION, format!("INVALID {m}\n")))
                }
                Err(e) => Err(e.to_string()),
            }
        }
    }
}

/// Positions in `a` (sorted) of the hyperplanes in file order.
fn file_order(text: &str, a: &Arrangement) -> Result<Vec<usize>, String> {
    let mut out = Vec::new();
    let field = a.field();
    let body = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).skip(2);
    for line in body {
        let toks: Vec<_> = line.split_whitespace().collect();
        if toks.len() != a.rank() {
            return Err("--delete needs a central arrangement file".into());
        }
        let form = toks
            .iter()
            .map(|t| hypfree_core::Scalar::parse(t, field).map_err(|e| e.to_string()))
            .collect::<Result<Vec<_>, _>>()?;
        let h = hypfree_core::Hyperplane::new(form).map_err(|e| e.to_string())?;
        out.push(a.index_of(&h).ok_or("hyperplane missing after parsing")?);
    }
    Ok(out)
}

fn emit_arrangements(json_out: bool, items: &[(&str, &Arrangement)]) -> Result<CommandOutcome, String> {
    if json_out {
        let map: serde_json::Map<String, serde_json::Value> = items
            .iter()
            .map(|(n, a)| (n.to_string(), serde_json::to_value(ArrangementDoc::from_arrangement(a)).expect("serializable")))
            .collect();
        return Ok(CommandOutcome::ok(pretty(&serde_json::Value::Object(map))));
    }
    let parts: Vec<String> = items.iter().map(|(n, a)| format!("# {n}: {} planes\n{}", a.len(), write_arrangement(a))).collect();
    Ok(CommandOutcome::ok(parts.join("\n")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run(["hypfree", "nonsense"]).exit_code, EXIT_USAGE);
        assert_eq!(run(["hypfree", "check-free", "/nonexistent/file"]).exit_code, EXIT_USAGE);
        assert_eq!(run(["hypfree", "pentagon"]).exit_code, EXIT_USAGE);
    }

    #[test]
    fn family_output_parses_back() {
        let o = run(["hypfree", "family", "shi", "--type", "A2", "-k", "1"]);
        assert_eq!(o.exit_code, 0);
        let a = parse_arrangement(&o.stdout, None).unwrap();
        assert_eq!(a.len(), 7);
        let o = run(["hypfree", "family", "cat", "--type", "B2", "-k", "1", "-k2", "0"]);
        assert_eq!(parse_arrangement(&o.stdout, None).unwrap().len(), 9);
    }

    #[test]
    fn help_is_not_an_error() {
        assert_eq!(run(["hypfree", "--help"]).exit_code, 0);
    }
}

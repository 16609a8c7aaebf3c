use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use dunkl_core::basis4::{basis_norm, basis_poly4, decompose_label, BasisLabel};
use dunkl_core::combin::{compositions, Composition, Partition};
use dunkl_core::exact::{format_rational, parse_rational, rational, ExactRational, ParamContext};
use dunkl_core::hermite_cs::{
    conjugated_hamiltonian, cs_invariant_eigenfunction, cs_invariant_energy, exp_neg_half_laplacian,
    hermite_basis, LaplacianKind,
};
use dunkl_core::jack::nsjp;
use dunkl_core::measure::{mc_inner_product, McConfig, McReport};
use dunkl_core::ops::pairing_extended;
use dunkl_core::poly::SparsePoly;
use dunkl_core::verify::{run_suite, Suite};
use dunkl_core::Error;

#[derive(Parser)]
#[command(name = "dunkl4", version, about = "Exact Jack polynomials and the four-variable S4 x Z2 orthogonal basis")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Nonsymmetric Jack polynomial zeta_alpha with its spectral vector and norm.
    Nsjp(Common),
    /// Basis polynomial p_gamma y0^n with its label decomposition and norm.
    Basis(Common),
    /// Hermite-type image e^{-Delta_h/2}(p_gamma y0^n) and its energy.
    Hermite(Common),
    /// Closed-form norms of every basis label up to --max-degree.
    NormTable(Common),
    /// Run verification suites.
    Verify(Common),
    /// Energies of the conjugated Hamiltonian, or one invariant eigenfunction with --lambda.
    Spectrum(Common),
    /// Monte Carlo check of an L2 inner product against the closed form.
    McCheck(Common),
}

#[derive(Args, Clone)]
struct Common {
    #[arg(long, default_value = "1")]
    kappa: String,
    #[arg(long = "kappa-prime", default_value = "0")]
    kappa_prime: String,
    #[arg(long)]
    nvars: Option<usize>,
    /// Composition, e.g. 1,0,2.
    #[arg(long)]
    alpha: Option<String>,
    /// Three-part label for y1..y3, e.g. 2,0,1.
    #[arg(long)]
    gamma: Option<String>,
    /// Power of y0.
    #[arg(long, default_value_t = 0)]
    n: u32,
    /// Three-part partition for the invariant eigenfunctions.
    #[arg(long)]
    lambda: Option<String>,
    #[arg(long, default_value_t = 0)]
    s: u32,
    #[arg(long = "max-degree", default_value_t = 4)]
    max_degree: u32,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long, default_value_t = 100_000)]
    samples: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Suite name, or `all`.
    #[arg(long, default_value = "all")]
    suite: String,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

/// Why a command did not succeed.
enum Failure {
    Usage(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<String, Failure>;

fn parse_list(s: &str) -> Result<Vec<u32>, Failure> {
    s.split(',')
        .map(|p| p.trim().parse::<u32>().map_err(|_| Failure::Usage(format!("malformed label `{s}`"))))
        .collect()
}

fn required(v: &Option<String>, flag: &str) -> Result<Vec<u32>, Failure> {
    parse_list(v.as_deref().ok_or_else(|| Failure::Usage(format!("missing --{flag}")))?)
}

fn gamma3(c: &Common) -> Result<Composition, Failure> {
    let g = required(&c.gamma, "gamma")?;
    if g.len() != 3 {
        return Err(Failure::Usage(format!("--gamma needs 3 parts, got {}", g.len())));
    }
    Ok(Composition::new(g))
}

/// Exact rational from "p/q", an integer, or a plain decimal like "0.25".
fn exact_or_decimal(s: &str) -> Result<ExactRational, Failure> {
    if let Ok(r) = parse_rational(s) {
        return Ok(r);
    }
    let t = s.trim();
    let (neg, body) = t.strip_prefix('-').map_or((false, t), |b| (true, b));
    let (whole, frac) = body.split_once('.').ok_or_else(|| Failure::Usage(format!("malformed rational `{s}`")))?;
    if whole.is_empty() && frac.is_empty()
        || !whole.chars().chain(frac.chars()).all(|ch| ch.is_ascii_digit())
        || frac.len() > 18
    {
        return Err(Failure::Usage(format!("malformed number `{s}`")));
    }
    let scale = 10i64.pow(frac.len() as u32);
    let digits: i64 = format!("{whole}{frac}").parse().map_err(|_| Failure::Usage(format!("number `{s}` out of range")))?;
    Ok(rational(if neg { -digits } else { digits }, scale)?)
}

fn context(c: &Common, nvars: usize, decimals: bool) -> Result<ParamContext, Failure> {
    let parse = |s: &str| if decimals { exact_or_decimal(s) } else { Ok(parse_rational(s)?) };
    Ok(ParamContext::new(parse(&c.kappa)?, parse(&c.kappa_prime)?, nvars)?)
}

fn json_out(v: Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("json");
    s.push('\n');
    s
}

fn csv_terms(p: &SparsePoly) -> String {
    let mut out = String::from("exponents,coefficient\n");
    for (m, c) in p.terms() {
        let e: Vec<String> = m.exps().iter().map(u32::to_string).collect();
        let _ = writeln!(out, "\"{}\",{}", e.join(","), format_rational(c));
    }
    out
}

fn label_string(l: &BasisLabel) -> String {
    format!("{};{}", l.gamma, l.n)
}

fn labels_up_to(d: u32) -> Vec<BasisLabel> {
    (0..=d)
        .flat_map(|k| compositions(4, k))
        .map(|a| BasisLabel::new(a.parts()[1..].to_vec(), a.parts()[0]))
        .collect()
}

fn cmd_nsjp(c: &Common) -> Outcome {
    let alpha = Composition::new(required(&c.alpha, "alpha")?);
    let ctx = context(c, c.nvars.unwrap_or(alpha.len()), false)?;
    let rec = nsjp(&alpha, &ctx)?;
    Ok(match c.format {
        Format::Csv => csv_terms(&rec.poly),
        Format::Json => json_out(json!({
            "alpha": alpha.parts(),
            "kappa": format_rational(ctx.kappa()),
            "poly": rec.poly.to_json(),
            "spectral": rec.spectral.iter().map(format_rational).collect::<Vec<_>>(),
            "norm": format_rational(&rec.norm),
        })),
    })
}

fn cmd_basis(c: &Common) -> Outcome {
    let ctx = context(c, 3, false)?;
    let label = BasisLabel { gamma: gamma3(c)?, n: c.n };
    let d = decompose_label(&label.gamma)?;
    let poly = basis_poly4(&label, &ctx)?;
    let norm = basis_norm(&label, &ctx)?;
    Ok(match c.format {
        Format::Csv => csv_terms(&poly),
        Format::Json => json_out(json!({
            "gamma": label.gamma.parts(),
            "n": label.n,
            "E": d.e,
            "w": d.w.one_line(),
            "beta": d.beta.parts(),
            "alpha": d.alpha.parts(),
            "poly": poly.to_json(),
            "norm": format_rational(&norm),
        })),
    })
}

fn cmd_hermite(c: &Common) -> Outcome {
    let ctx = context(c, 3, false)?;
    let label = BasisLabel { gamma: gamma3(c)?, n: c.n };
    let rec = hermite_basis(&label, &ctx)?;
    Ok(match c.format {
        Format::Csv => csv_terms(&rec.poly),
        Format::Json => json_out(json!({
            "gamma": label.gamma.parts(),
            "n": label.n,
            "poly": rec.poly.to_json(),
            "energy": format_rational(&rec.energy),
        })),
    })
}

fn cmd_norm_table(c: &Common) -> Outcome {
    let ctx = context(c, 3, false)?;
    let rows: Vec<(BasisLabel, ExactRational)> = labels_up_to(c.max_degree)
        .into_iter()
        .map(|l| basis_norm(&l, &ctx).map(|v| (l, v)))
        .collect::<Result<_, _>>()?;
    Ok(match c.format {
        Format::Csv => {
            let mut out = String::from("gamma,n,norm\n");
            for (l, v) in &rows {
                let _ = writeln!(out, "\"{}\",{},{}", l.gamma, l.n, format_rational(v));
            }
            out
        }
        Format::Json => json_out(Value::Array(
            rows.iter()
                .map(|(l, v)| json!({"gamma": l.gamma.parts(), "n": l.n, "norm": format_rational(v)}))
                .collect(),
        )),
    })
}

fn cmd_verify(c: &Common) -> Outcome {
    let ctx = context(c, c.nvars.unwrap_or(3), false)?;
    let suites: Vec<Suite> = if c.suite == "all" { Suite::ALL.to_vec() } else { vec![c.suite.parse()?] };
    let reports = suites.iter().map(|&s| run_suite(s, &ctx, c.max_degree)).collect::<Result<Vec<_>, _>>()?;
    let text = match c.format {
        Format::Csv => {
            let mut out = String::from("suite,kappa,kappa_prime,max_degree,checked,failures,first_counterexample\n");
            for r in &reports {
                let first = r.first_counterexample.clone().unwrap_or_default().replace('"', "'");
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},\"{}\"",
                    r.suite, r.kappa, r.kappa_prime, r.max_degree, r.checked, r.failures, first
                );
            }
            out
        }
        Format::Json => json_out(serde_json::to_value(&reports).expect("json")),
    };
    if reports.iter().all(|r| r.passed()) {
        Ok(text)
    } else {
        Err(Failure::Verification(text))
    }
}

fn cmd_spectrum(c: &Common) -> Outcome {
    let ctx = context(c, 3, false)?;
    if let Some(l) = &c.lambda {
        let lambda = Partition::new(parse_list(l)?)?;
        if lambda.len() != 3 {
            return Err(Failure::Usage("--lambda needs 3 parts".into()));
        }
        let f = cs_invariant_eigenfunction(&lambda, c.s, c.n, &ctx)?;
        let e = cs_invariant_energy(&lambda, c.s, c.n, &ctx);
        let ok = conjugated_hamiltonian(&f, &ctx)? == f.scale(&e);
        let text = match c.format {
            Format::Csv => csv_terms(&f),
            Format::Json => json_out(json!({
                "lambda": lambda.parts(),
                "s": c.s,
                "n": c.n,
                "poly": f.to_json(),
                "energy": format_rational(&e),
                "verified": ok,
            })),
        };
        return if ok { Ok(text) } else { Err(Failure::Verification(text)) };
    }
    let mut rows = Vec::new();
    let mut ok = true;
    for l in labels_up_to(c.max_degree) {
        let r = hermite_basis(&l, &ctx)?;
        ok &= conjugated_hamiltonian(&r.poly, &ctx)? == r.poly.scale(&r.energy);
        rows.push(r);
    }
    let text = match c.format {
        Format::Csv => {
            let mut out = String::from("gamma,n,energy\n");
            for r in &rows {
                let _ = writeln!(out, "\"{}\",{},{}", r.label.gamma, r.label.n, format_rational(&r.energy));
            }
            out
        }
        Format::Json => json_out(Value::Array(
            rows.iter()
                .map(|r| json!({"gamma": r.label.gamma.parts(), "n": r.label.n, "energy": format_rational(&r.energy)}))
                .collect(),
        )),
    };
    if ok {
        Ok(text)
    } else {
        Err(Failure::Verification(text))
    }
}

fn cmd_mc_check(c: &Common) -> Outcome {
    let ctx = context(c, 3, true)?;
    let label = BasisLabel { gamma: c.gamma.as_ref().map_or(Ok(Composition::zero(3)), |_| gamma3(c))?, n: c.n };
    let p = basis_poly4(&label, &ctx)?;
    let exact = pairing_extended(&p, &p, &ctx)?;
    let image = exp_neg_half_laplacian(LaplacianKind::H, &p, &ctx)?;
    let to_f = |r: &ExactRational| r.to_f64().unwrap_or(f64::NAN);
    let cfg = McConfig::new(c.samples, c.seed, to_f(ctx.kappa()), to_f(ctx.kappa_prime()))?;
    let est = mc_inner_product(&image, &image, &cfg)?;
    let report = McReport::new(format!("H[{}]^2", label_string(&label)), &cfg, est, Some(&exact));
    let text = match c.format {
        Format::Csv => format!(
            "integrand,kappa,kappa_prime,samples,seed,estimate,stderr,exact\n\"{}\",{},{},{},{},{},{},{}\n",
            report.integrand,
            report.kappa,
            report.kappa_prime,
            report.samples,
            report.seed,
            report.estimate,
            report.stderr,
            report.exact.clone().unwrap_or_default()
        ),
        Format::Json => json_out(report.to_json()),
    };
    if report.within(0.02) {
        Ok(text)
    } else {
        Err(Failure::Verification(text))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Nsjp(c) => cmd_nsjp(c),
        Command::Basis(c) => cmd_basis(c),
        Command::Hermite(c) => cmd_hermite(c),
        Command::NormTable(c) => cmd_norm_table(c),
        Command::Verify(c) => cmd_verify(c),
        Command::Spectrum(c) => cmd_spectrum(c),
        Command::McCheck(c) => cmd_mc_check(c),
    };
    match result {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(Failure::Verification(text)) => {
            print!("{text}");
            eprintln!("verification failed");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

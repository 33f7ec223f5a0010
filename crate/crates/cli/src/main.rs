//! `lacunae` command-line interface.

use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use lacunae::arith::wire::{poly_to_json, series_from_json_str, series_to_json_string, SeriesJson};
use lacunae::arith::{parse_rational, BigRational};
use lacunae::closed_form::nieto_truax_check;
use lacunae::lacunary::{dilate, dilate_to, shift};
use lacunae::normal_order::{apply_exp_op, normal_order, SemiLinearOp};
use lacunae::verify::{
    cap_from_env, emit_series, run_verification_with_cap, OutputFormat, SeriesKind,
};
use lacunae::{hermite_egf, hermite_poly, BivarPoly, LambdaSeries, VerifyConfig, VerifyReport};

#[derive(Debug, Parser)]
#[command(name = "lacunae", version)]
#[command(about = "Exact lacunary generating functions of two-variable Hermite polynomials")]
struct Cli {
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
    Plan,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Json => OutputFormat::Json,
            Format::Text => OutputFormat::Text,
            Format::Plan => OutputFormat::Plan,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    Egf,
    Hk0,
    Hkl,
    Dilated,
    Shifted,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check n!·[λ^n] of the closed forms against H_{nK+L} exactly.
    ///
    /// Without range flags, runs K=3 and K=4 to n=16 and K=5 to n=15.
    Verify {
        #[arg(long)]
        kmin: Option<u32>,
        #[arg(long)]
        kmax: Option<u32>,
        #[arg(long)]
        lmin: Option<u32>,
        #[arg(long)]
        lmax: Option<u32>,
        #[arg(long)]
        nmax: Option<u32>,
        /// Seed for the randomized table in the structural checks.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },

    /// Print H_n(x,y).
    Hermite {
        n: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },

    /// Closed form of Σ_n λ^n/n! H_{nK+L}(x,y) to λ-order N.
    ClosedForm {
        k: u32,
        l: u32,
        #[arg(long, default_value_t = 4)]
        order: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },

    /// Brute-force dilatation λ^n ↦ n!/(n/K)! λ^{n/K} of a JSON series.
    ///
    /// Without --input, dilates e^{λx+λ²y}.
    Dilate {
        k: u32,
        /// JSON series file, or `-` for stdin.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Output order.
        #[arg(long)]
        order: Option<usize>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },

    /// L-fold λ-derivative of a JSON series.
    ///
    /// Without --input, shifts e^{λx+λ²y}.
    Shift {
        l: u32,
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        order: Option<usize>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },

    /// Substitution function and prefactor of e^{μ(q d/dx + v)}.
    NormalOrder {
        #[arg(long)]
        q: String,
        #[arg(long)]
        v: String,
        #[arg(long, default_value_t = 4)]
        order: usize,
        /// Also apply the operator exponential to this polynomial.
        #[arg(long)]
        apply: Option<String>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },

    /// Roots-of-unity evaluation of Σ_n λ^{nK+L} H_{nK+L}/(nK+L)!, checked
    /// against the exact partial sum.
    NietoTruax {
        k: u32,
        l: u32,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
        #[arg(long, default_value_t = 256)]
        bits: usize,
        /// Last index n of the exact partial sum.
        #[arg(long, default_value_t = 30)]
        nmax: u32,
        /// Relative tolerance against the partial sum.
        #[arg(long, default_value_t = 1e-30)]
        tol: f64,
    },

    /// Serialize one of the built-in series.
    Emit {
        #[arg(value_enum)]
        kind: Kind,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        l: Option<u32>,
        #[arg(long, default_value_t = 4)]
        order: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

/// What a subcommand produced: text to print and whether its checks passed.
struct Output {
    text: String,
    ok: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Self { text, ok: true }
    }
}

fn rational(name: &str, s: &str) -> anyhow::Result<BigRational> {
    parse_rational(s).with_context(|| format!("--{name}"))
}

fn poly(name: &str, s: &str) -> anyhow::Result<BivarPoly> {
    s.parse().with_context(|| format!("--{name}"))
}

fn read_series(path: &Path) -> anyhow::Result<LambdaSeries> {
    let text = if path == Path::new("-") {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .context("reading stdin")?;
        buf
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
    };
    series_from_json_str(&text).with_context(|| format!("parsing series from {}", path.display()))
}

fn render_series(s: &LambdaSeries, format: Format) -> anyhow::Result<String> {
    match format {
        Format::Json => Ok(series_to_json_string(s)),
        Format::Text => Ok(s.pretty()),
        Format::Plan => bail!("plan output is only available for closed-form and emit"),
    }
}

fn verify_configs(ranges: [Option<u32>; 5], seed: u64) -> Vec<VerifyConfig> {
    let [kmin, kmax, lmin, lmax, nmax] = ranges;
    if ranges.iter().all(Option::is_none) {
        return VerifyConfig::default_sweep()
            .into_iter()
            .map(|c| VerifyConfig { seed, ..c })
            .collect();
    }
    let k0 = kmin.or(kmax).unwrap_or(3);
    let l0 = lmin.unwrap_or(0);
    let mut cfg = VerifyConfig::new(
        (k0, kmax.unwrap_or(k0)),
        (l0, lmax.unwrap_or(l0)),
        nmax.unwrap_or(6),
    );
    cfg.seed = seed;
    vec![cfg]
}

fn report_text(r: &VerifyReport) -> String {
    let mut lines: Vec<String> = r
        .cases
        .iter()
        .map(|c| {
            let status = if c.pass { "pass" } else { "FAIL" };
            format!("K={} L={} n={} {status}", c.k, c.l, c.n)
        })
        .collect();
    for s in &r.structural {
        let status = if s.pass { "pass" } else { "FAIL" };
        lines.push(format!("{} K={} order={} {status}", s.check, s.k, s.order));
    }
    lines.push(format!("passed {} failed {}", r.passed, r.failed));
    lines.join("\n")
}

fn series_kind(kind: Kind, k: Option<u32>, l: Option<u32>) -> anyhow::Result<SeriesKind> {
    let need = |v: Option<u32>, flag: &str| v.with_context(|| format!("this kind needs --{flag}"));
    Ok(match kind {
        Kind::Egf => SeriesKind::Egf,
        Kind::Hk0 => SeriesKind::Hk0 { k: need(k, "k")? },
        Kind::Hkl => SeriesKind::Hkl {
            k: need(k, "k")?,
            l: need(l, "l")?,
        },
        Kind::Dilated => SeriesKind::Dilated { k: need(k, "k")? },
        Kind::Shifted => SeriesKind::Shifted { l: need(l, "l")? },
    })
}

fn run(command: Command) -> anyhow::Result<Output> {
    match command {
        Command::Verify {
            kmin,
            kmax,
            lmin,
            lmax,
            nmax,
            seed,
            format,
        } => {
            let cap = cap_from_env()?;
            let reports = verify_configs([kmin, kmax, lmin, lmax, nmax], seed)
                .iter()
                .map(|cfg| run_verification_with_cap(cfg, cap))
                .collect::<Result<Vec<_>, _>>()?;
            let report = VerifyReport::merge(reports);
            eprintln!("verify: {} passed, {} failed", report.passed, report.failed);
            let text = match format {
                Format::Json => report.to_json_pretty(),
                Format::Text => report_text(&report),
                Format::Plan => bail!("verify supports json or text output"),
            };
            Ok(Output {
                text,
                ok: report.all_passed(),
            })
        }
        Command::Hermite { n, format } => {
            let h = hermite_poly(n);
            match format {
                Format::Json => Ok(Output::ok(serde_json::to_string(&poly_to_json(&h))?)),
                Format::Text => Ok(Output::ok(h.pretty())),
                Format::Plan => bail!("hermite supports json or text output"),
            }
        }
        Command::ClosedForm {
            k,
            l,
            order,
            format,
        } => {
            let kind = SeriesKind::Hkl { k, l };
            Ok(Output::ok(emit_series(kind, order, format.into())?))
        }
        Command::Dilate {
            k,
            input,
            order,
            format,
        } => {
            let out = match input {
                Some(path) => {
                    let s = read_series(&path)?;
                    match order {
                        Some(o) => dilate_to(&s, k, o)?,
                        None => dilate(&s, k)?,
                    }
                }
                None => {
                    let o = order.unwrap_or(4);
                    dilate_to(&hermite_egf(k as usize * o), k, o)?
                }
            };
            Ok(Output::ok(render_series(&out, format)?))
        }
        Command::Shift {
            l,
            input,
            order,
            format,
        } => {
            let out = match input {
                Some(path) => {
                    let s = shift(&read_series(&path)?, l)?;
                    match order {
                        Some(o) if o > s.order() => {
                            bail!("shifted series only reaches order {}", s.order())
                        }
                        Some(o) => s.truncate(o),
                        None => s,
                    }
                }
                None => shift(&hermite_egf(order.unwrap_or(4) + l as usize), l)?,
            };
            Ok(Output::ok(render_series(&out, format)?))
        }
        Command::NormalOrder {
            q,
            v,
            order,
            apply,
            format,
        } => {
            let op = SemiLinearOp::new(poly("q", &q)?, poly("v", &v)?);
            let r = normal_order(&op, order);
            let applied = match apply {
                Some(f) => Some(apply_exp_op(&op, order, &poly("apply", &f)?)?),
                None => None,
            };
            let text = match format {
                Format::Json => {
                    let mut value = json!({
                        "order": order,
                        "T": SeriesJson::from(&r.t_series),
                        "g": SeriesJson::from(&r.g_series),
                    });
                    if let Some(a) = &applied {
                        value["applied"] = serde_json::to_value(SeriesJson::from(a))?;
                    }
                    serde_json::to_string(&value)?
                }
                Format::Text => {
                    let mut lines = vec![
                        format!("T = {}", r.t_series.pretty_in("μ")),
                        format!("g = {}", r.g_series.pretty_in("μ")),
                    ];
                    if let Some(a) = &applied {
                        lines.push(format!("e^(μD) f = {}", a.pretty_in("μ")));
                    }
                    lines.join("\n")
                }
                Format::Plan => bail!("normal-order supports json or text output"),
            };
            Ok(Output::ok(text))
        }
        Command::NietoTruax {
            k,
            l,
            lambda,
            x,
            y,
            bits,
            nmax,
            tol,
        } => {
            let (lam, xv, yv) = (
                rational("lambda", &lambda)?,
                rational("x", &x)?,
                rational("y", &y)?,
            );
            let c = nieto_truax_check(k, l, &lam, &xv, &yv, bits, nmax)?;
            let im_tol = 2f64.powi(-(bits as i32) / 2);
            let pass = c.passes(tol, im_tol);
            let value = json!({
                "K": k,
                "L": l,
                "bits": bits,
                "value": c.value,
                "partial_sum": c.oracle,
                "rel_err": c.rel_err,
                "im_residue": c.im_residue,
                "pass": pass,
            });
            Ok(Output {
                text: serde_json::to_string_pretty(&value)?,
                ok: pass,
            })
        }
        Command::Emit {
            kind,
            k,
            l,
            order,
            format,
        } => {
            let kind = series_kind(kind, k, l)?;
            Ok(Output::ok(emit_series(kind, order, format.into())?))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(output) => {
            let mut text = output.text;
            if !text.ends_with('\n') {
                text.push('\n');
            }
            let written = match &cli.out {
                Some(path) => std::fs::write(path, &text)
                    .with_context(|| format!("writing {}", path.display())),
                None => {
                    print!("{text}");
                    Ok(())
                }
            };
            match written {
                Err(e) => {
                    eprintln!("error: {e:#}");
                    ExitCode::from(2)
                }
                Ok(()) if output.ok => ExitCode::SUCCESS,
                Ok(()) => ExitCode::FAILURE,
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

//! Sweep harness: checks `n! [λ^n] 𝓗_{K,L} = H_{nK+L}` exactly over a grid of
//! indices, plus structural checks of the resummation for each `K`, and
//! serializes the outcome as a JSON report.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::wire::{series_to_json_string, TermJson};
use crate::arith::{BivarPoly, LambdaSeries};
use crate::closed_form::{closed_form_hk0, closed_form_hkl, ClosedFormPlan};
use crate::coeff_table::CoeffTable;
use crate::error::{Error, Result};
use crate::hermite::{hermite_coeff_table, hermite_egf, hermite_poly};
use crate::lacunary::{
    dilate_to, random_dense_table, resum_parity_split, resum_residue_classes, shift,
};

/// Environment variable overriding the bound on `n_max·K_max + L_max`.
pub const CAP_ENV: &str = "LACUNAE_CAP";
pub const DEFAULT_CAP: u32 = 80;
pub const MAX_K: u32 = 12;
/// λ-order used by the per-K resummation checks.
pub const STRUCTURAL_ORDER: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub k_range: (u32, u32),
    pub l_range: (u32, u32),
    pub n_max: u32,
    pub seed: u64,
    pub output_path: Option<PathBuf>,
}

impl VerifyConfig {
    pub fn new(k_range: (u32, u32), l_range: (u32, u32), n_max: u32) -> Self {
        Self {
            k_range,
            l_range,
            n_max,
            seed: 0,
            output_path: None,
        }
    }

    /// The no-flag sweep: K = 3 and K = 4 to n = 16, K = 5 to n = 15, all at L = 0.
    pub fn default_sweep() -> Vec<VerifyConfig> {
        vec![
            Self::new((3, 3), (0, 0), 16),
            Self::new((4, 4), (0, 0), 16),
            Self::new((5, 5), (0, 0), 15),
        ]
    }

    /// Largest index `nK + L` the sweep will touch.
    pub fn max_index(&self) -> u32 {
        self.n_max * self.k_range.1 + self.l_range.1
    }

    pub fn validate(&self, cap: u32) -> Result<()> {
        let (k0, k1) = self.k_range;
        let (l0, l1) = self.l_range;
        if k0 < 1 || k1 > MAX_K || k0 > k1 {
            return Err(Error::Config(format!(
                "K range {k0}..{k1} must be a nonempty subrange of 1..{MAX_K}"
            )));
        }
        if l0 > l1 {
            return Err(Error::Config(format!("L range {l0}..{l1} is empty")));
        }
        if self.max_index() > cap {
            return Err(Error::Config(format!(
                "n_max·K_max + L_max = {} exceeds the cap {cap} (set {CAP_ENV} to raise it)",
                self.max_index()
            )));
        }
        Ok(())
    }
}

/// Reads the cap from [`CAP_ENV`], falling back to [`DEFAULT_CAP`].
pub fn cap_from_env() -> Result<u32> {
    match std::env::var(CAP_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| {
            Error::Config(format!(
                "{CAP_ENV} must be a nonnegative integer, got {v:?}"
            ))
        }),
        Err(_) => Ok(DEFAULT_CAP),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseRecord {
    #[serde(rename = "K")]
    pub k: u32,
    #[serde(rename = "L")]
    pub l: u32,
    pub n: u32,
    pub pass: bool,
    pub diff_term: Option<TermJson>,
    pub elapsed_us: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructuralRecord {
    pub check: String,
    #[serde(rename = "K")]
    pub k: u32,
    pub order: usize,
    pub pass: bool,
    /// First differing coefficient as `[power, term]`.
    pub diff_term: Option<(usize, TermJson)>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub cases: Vec<CaseRecord>,
    pub structural: Vec<StructuralRecord>,
    pub passed: usize,
    pub failed: usize,
    pub elapsed_ms: u64,
}

impl VerifyReport {
    fn tally(&mut self) {
        let passes = self
            .cases
            .iter()
            .map(|c| c.pass)
            .chain(self.structural.iter().map(|s| s.pass));
        let (p, f) = passes.fold(
            (0, 0),
            |(p, f), ok| if ok { (p + 1, f) } else { (p, f + 1) },
        );
        self.passed = p;
        self.failed = f;
    }

    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    /// Concatenates reports, recomputing totals.
    pub fn merge(reports: impl IntoIterator<Item = VerifyReport>) -> VerifyReport {
        let mut out = VerifyReport::default();
        for r in reports {
            out.cases.extend(r.cases);
            out.structural.extend(r.structural);
            out.elapsed_ms += r.elapsed_ms;
        }
        out.tally();
        out
    }

    /// Copy with every timing field zeroed, for determinism comparisons.
    pub fn without_timing(&self) -> VerifyReport {
        let mut r = self.clone();
        r.elapsed_ms = 0;
        for c in &mut r.cases {
            c.elapsed_us = 0;
        }
        r
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn write_to(&self, path: &std::path::Path) -> Result<()> {
        std::fs::write(path, self.to_json_pretty() + "\n")?;
        Ok(())
    }
}

fn first_series_difference(a: &LambdaSeries, b: &LambdaSeries) -> Option<(usize, TermJson)> {
    (0..=a.order().min(b.order())).find_map(|n| {
        a.coeff(n)
            .first_difference(b.coeff(n))
            .map(|t| (n, TermJson::from(&t)))
    })
}

fn structural(
    check: &str,
    k: u32,
    order: usize,
    got: &LambdaSeries,
    want: &LambdaSeries,
) -> StructuralRecord {
    let diff = first_series_difference(got, want);
    StructuralRecord {
        check: check.to_string(),
        k,
        order,
        pass: diff.is_none(),
        diff_term: diff,
    }
}

fn bruteforce(table: &CoeffTable, k: u32, order: usize) -> Result<LambdaSeries> {
    dilate_to(&table.egf(k as usize * order), k, order)
}

/// Residue-class resummation against brute-force dilatation, and the
/// even/odd split against the full resummation, on the Hermite table and on
/// a seeded dense table.
pub fn structural_checks(k: u32, order: usize, seed: u64) -> Result<Vec<StructuralRecord>> {
    let mut out = Vec::new();
    for (name, table) in [
        ("hermite", hermite_coeff_table()),
        ("dense", random_dense_table(seed)),
    ] {
        let full = resum_residue_classes(&table, k, order)?;
        out.push(structural(
            &format!("resummation/{name}"),
            k,
            order,
            &full,
            &bruteforce(&table, k, order)?,
        ));
        let (even, odd) = resum_parity_split(&table, k, order)?;
        out.push(structural(
            &format!("parity-split/{name}"),
            k,
            order,
            &(&even + &odd),
            &full,
        ));
        if name == "hermite" {
            let zero = LambdaSeries::zero(order);
            out.push(structural(
                "odd-part-vanishes/hermite",
                k,
                order,
                &odd,
                &zero,
            ));
        }
    }
    Ok(out)
}

fn check_pair(k: u32, l: u32, n_max: u32) -> Result<Vec<CaseRecord>> {
    let series = closed_form_hkl(k, l, n_max as usize)?;
    Ok((0..=n_max)
        .map(|n| {
            let start = Instant::now();
            let got: BivarPoly = series.egf_coeff(n as usize);
            let diff = got.first_difference(&hermite_poly(n * k + l));
            CaseRecord {
                k,
                l,
                n,
                pass: diff.is_none(),
                diff_term: diff.as_ref().map(TermJson::from),
                elapsed_us: start.elapsed().as_micros() as u64,
            }
        })
        .collect())
}

/// Runs one sweep; the config is validated against [`cap_from_env`].
pub fn run_verification(cfg: &VerifyConfig) -> Result<VerifyReport> {
    run_verification_with_cap(cfg, cap_from_env()?)
}

pub fn run_verification_with_cap(cfg: &VerifyConfig, cap: u32) -> Result<VerifyReport> {
    cfg.validate(cap)?;
    let start = Instant::now();
    let pairs: Vec<(u32, u32)> = (cfg.k_range.0..=cfg.k_range.1)
        .flat_map(|k| (cfg.l_range.0..=cfg.l_range.1).map(move |l| (k, l)))
        .collect();
    let cases = pairs
        .par_iter()
        .map(|&(k, l)| check_pair(k, l, cfg.n_max))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let ks: BTreeSet<u32> = pairs.iter().map(|&(k, _)| k).collect();
    let ks: Vec<u32> = ks.into_iter().collect();
    let structural = ks
        .par_iter()
        .map(|&k| structural_checks(k, STRUCTURAL_ORDER, cfg.seed))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let mut report = VerifyReport {
        cases,
        structural,
        passed: 0,
        failed: 0,
        elapsed_ms: start.elapsed().as_millis() as u64,
    };
    report.tally();
    if let Some(path) = &cfg.output_path {
        report.write_to(path)?;
    }
    Ok(report)
}

/// Which series [`emit_series`] produces.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesKind {
    /// `e^{λx+λ²y}`.
    Egf,
    Hk0 {
        k: u32,
    },
    Hkl {
        k: u32,
        l: u32,
    },
    /// Brute-force `𝕃_K e^{λx+λ²y}`.
    Dilated {
        k: u32,
    },
    /// `𝕊_L e^{λx+λ²y}`.
    Shifted {
        l: u32,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Text,
    Plan,
}

impl std::str::FromStr for OutputFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Self::Json),
            "text" => Ok(Self::Text),
            "plan" => Ok(Self::Plan),
            other => Err(Error::Config(format!(
                "unknown format {other:?} (json, text, plan)"
            ))),
        }
    }
}

pub fn build_series(kind: SeriesKind, order: usize) -> Result<LambdaSeries> {
    match kind {
        SeriesKind::Egf => Ok(hermite_egf(order)),
        SeriesKind::Hk0 { k } => closed_form_hk0(k, order),
        SeriesKind::Hkl { k, l } => closed_form_hkl(k, l, order),
        SeriesKind::Dilated { k } => {
            if k == 0 {
                return Err(Error::Config("K must be at least 1".into()));
            }
            dilate_to(&hermite_egf(k as usize * order), k, order)
        }
        SeriesKind::Shifted { l } => shift(&hermite_egf(order + l as usize), l),
    }
}

/// Serializes a series deterministically; `Plan` is only defined for the
/// closed forms with `K ≥ 2`.
pub fn emit_series(kind: SeriesKind, order: usize, format: OutputFormat) -> Result<String> {
    match format {
        OutputFormat::Json => Ok(series_to_json_string(&build_series(kind, order)?)),
        OutputFormat::Text => Ok(build_series(kind, order)?.pretty()),
        OutputFormat::Plan => match kind {
            SeriesKind::Hk0 { k } | SeriesKind::Hkl { k, .. } if k >= 2 => {
                Ok(ClosedFormPlan::new(k).to_string())
            }
            _ => Err(Error::Config(
                "plan output needs a closed form with K ≥ 2".into(),
            )),
        },
    }
}

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::wire::{rational_str, rational_vec_str};
use crate::arith::{factorial, int, pretty_rational, rat, BigInt, BigRational};
use crate::hypergeom::{HypergeomSpec, MonomialArg};
use crate::lacunary::{LacunaryIndex, Parity};

/// `slope · σ + offset`, where `σ = s + lambda_shift` is the shifted summation
/// index of the enclosing branch.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineParam {
    #[serde(with = "rational_str")]
    pub slope: BigRational,
    #[serde(with = "rational_str")]
    pub offset: BigRational,
}

impl AffineParam {
    pub fn at(&self, sigma: u32) -> BigRational {
        &self.slope * int(sigma) + &self.offset
    }
}

/// One family of the closed form:
///
/// ```text
/// Σ_s λ^σ/σ! · x^P y^w · (Kσ)! / (P! w!) · pFq[a(σ); b](z),   σ = s + lambda_shift,
///                                                            P = Kσ - 2w
/// ```
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanBranch {
    pub label: String,
    pub beta: Option<u32>,
    pub lambda_shift: u32,
    /// `w`, the power of y in the outer prefactor.
    pub y_power: u32,
    pub upper: Vec<AffineParam>,
    #[serde(with = "rational_vec_str")]
    pub lower: Vec<BigRational>,
    pub arg: MonomialArg,
}

impl PlanBranch {
    /// Power of x in the outer prefactor at shifted index `sigma`.
    pub fn x_power(&self, k: u32, sigma: u32) -> u32 {
        k * sigma - 2 * self.y_power
    }

    /// `(Kσ)! / ((Kσ - 2w)! w!)`, the coefficient of `x^{Kσ-2w} y^w` in `H_{Kσ}`.
    pub fn factorial_ratio(&self, k: u32, sigma: u32) -> BigInt {
        factorial(k * sigma) / (factorial(self.x_power(k, sigma)) * factorial(self.y_power))
    }

    pub fn spec_at(&self, sigma: u32) -> HypergeomSpec {
        HypergeomSpec::new(
            self.upper.iter().map(|a| a.at(sigma)).collect(),
            self.lower.clone(),
            self.arg.clone(),
        )
    }
}

/// Branch structure of the closed form of `𝓗_{K,0}` for `K ≥ 2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedFormPlan {
    pub k: u32,
    pub branches: Vec<PlanBranch>,
}

impl ClosedFormPlan {
    /// # Panics
    /// If `K < 2`; `K = 1` has no hypergeometric form.
    pub fn new(k: u32) -> Self {
        assert!(k >= 2, "closed-form plans exist for K ≥ 2");
        let index = LacunaryIndex::new(k, 0).expect("K ≥ 2");
        let t = index.t();
        let branches = match index.parity() {
            Parity::Even => even_branches(k, t),
            Parity::Odd => odd_branches(k, t),
        };
        Self { k, branches }
    }

    /// `p` and `q` of the `pFq` blocks (shared by all branches).
    pub fn pfq_shape(&self) -> (usize, usize) {
        let b = &self.branches[0];
        (b.upper.len(), b.lower.len())
    }
}

/// Lower parameters `(w + ℓ + 1)/D` for `ℓ = 0..D-1`, skipping `ℓ = skip`.
fn lower_params(w: u32, denom: u32, skip: u32) -> Vec<BigRational> {
    (0..denom)
        .filter(|&l| l != skip)
        .map(|l| rat((w + l + 1) as i64, denom as i64))
        .collect()
}

fn even_branches(k: u32, t: u32) -> Vec<PlanBranch> {
    // a_j(σ) = σ + (j+1)/K for j = 0..K-2; argument λ (4T y)^T
    let upper: Vec<AffineParam> = (0..k - 1)
        .map(|j| AffineParam {
            slope: int(1),
            offset: rat((j + 1) as i64, k as i64),
        })
        .collect();
    let arg = MonomialArg {
        coef: BigRational::from_integer(BigInt::from(4 * t).pow(t)),
        lp: 1,
        xp: 0,
        yp: t,
    };
    let mut branches = vec![PlanBranch {
        label: "main".into(),
        beta: None,
        lambda_shift: 0,
        y_power: 0,
        upper: upper.clone(),
        lower: lower_params(0, t, t - 1),
        arg: arg.clone(),
    }];
    for beta in 1..t {
        branches.push(PlanBranch {
            label: format!("β={beta}"),
            beta: Some(beta),
            lambda_shift: 1,
            y_power: beta,
            upper: upper.clone(),
            lower: lower_params(beta, t, t - 1 - beta),
            arg: arg.clone(),
        });
    }
    branches
}

fn odd_branches(k: u32, t: u32) -> Vec<PlanBranch> {
    // a_j(σ) = σ/2 + (j+1)/(2K) for j = 0..2K-2, j ≠ K-1; argument λ² (4K y)^K / 4
    let upper: Vec<AffineParam> = (0..2 * k - 1)
        .filter(|&j| j != k - 1)
        .map(|j| AffineParam {
            slope: rat(1, 2),
            offset: rat((j + 1) as i64, 2 * k as i64),
        })
        .collect();
    let arg = MonomialArg {
        coef: BigRational::from_integer(BigInt::from(4 * k).pow(k)) / int(4),
        lp: 2,
        xp: 0,
        yp: k,
    };
    let mut branches = vec![PlanBranch {
        label: "main".into(),
        beta: None,
        lambda_shift: 0,
        y_power: 0,
        upper: upper.clone(),
        lower: lower_params(0, k, k - 1),
        arg: arg.clone(),
    }];
    for beta in 1..=t {
        branches.push(PlanBranch {
            label: format!("β={beta}"),
            beta: Some(beta),
            lambda_shift: 1,
            y_power: beta,
            upper: upper.clone(),
            lower: lower_params(beta, k, k - 1 - beta),
            arg: arg.clone(),
        });
    }
    for beta in 1..=t {
        branches.push(PlanBranch {
            label: format!("T+β={}", t + beta),
            beta: Some(beta),
            lambda_shift: 2,
            y_power: t + beta,
            upper: upper.clone(),
            lower: lower_params(t + beta, k, t - beta),
            arg: arg.clone(),
        });
    }
    branches
}

fn sigma_str(shift: u32) -> String {
    match shift {
        0 => "s".into(),
        n => format!("(s+{n})"),
    }
}

fn affine_str(a: &AffineParam, shift: u32) -> String {
    let sigma = sigma_str(shift);
    let head = if a.slope == int(1) {
        sigma
    } else {
        format!("{sigma}/{}", pretty_rational(&(int(1) / &a.slope)))
    };
    format!("{head}+{}", pretty_rational(&a.offset))
}

impl PlanBranch {
    /// One-line rendering of the branch for dilatation multiple `k`.
    pub fn describe(&self, k: u32) -> String {
        let sigma = sigma_str(self.lambda_shift);
        let (p, q) = (self.upper.len(), self.lower.len());
        let mut out = format!("[{}] Σ_s λ^{sigma}/{sigma}! · x^({k}{sigma}", self.label);
        if self.y_power > 0 {
            out.push_str(&format!(
                "-{w2}) y^{w} · ({k}{sigma})!/(({k}{sigma}-{w2})! {w}!)",
                w = self.y_power,
                w2 = 2 * self.y_power
            ));
        } else {
            out.push(')');
        }
        let upper: Vec<String> = self
            .upper
            .iter()
            .map(|a| affine_str(a, self.lambda_shift))
            .collect();
        let lower: Vec<String> = self.lower.iter().map(pretty_rational).collect();
        out.push_str(&format!(
            " · {p}F{q}[{}; {}]({} λ^{} y^{})",
            upper.join(", "),
            lower.join(", "),
            pretty_rational(&self.arg.coef),
            self.arg.lp,
            self.arg.yp
        ));
        out
    }
}

impl fmt::Display for ClosedFormPlan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (p, q) = self.pfq_shape();
        writeln!(
            f,
            "K = {} ({} branches, {p}F{q} blocks)",
            self.k,
            self.branches.len()
        )?;
        for b in &self.branches {
            writeln!(f, "  {}", b.describe(self.k))?;
        }
        Ok(())
    }
}

//! Lacunary shift and dilatation operators on exponential generating
//! functions, and the resummed (branch-by-branch) form of the dilatation
//! driven only by an expansion [`CoeffTable`].

use num_traits::One;
use rayon::prelude::*;

use crate::arith::{factorial, BigRational, BivarPoly, LambdaSeries};
use crate::coeff_table::{CoeffTable, Support};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// Dilatation multiple `K ≥ 1` and shift `L ≥ 0`, with `K = 2T` or `2T + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LacunaryIndex {
    k: u32,
    l: u32,
}

impl LacunaryIndex {
    pub fn new(k: u32, l: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::Domain(
                "dilatation multiple K must be at least 1".into(),
            ));
        }
        Ok(Self { k, l })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    /// `floor(K / 2)`.
    pub fn t(&self) -> u32 {
        self.k / 2
    }

    pub fn parity(&self) -> Parity {
        if self.k.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// Brute-force `𝕃_K`: `λ^n ↦ n!/(n/K)! · λ^{n/K}` when `K | n`, else 0.
///
/// The output order is `floor(order / K)`.
pub fn dilate(series: &LambdaSeries, k: u32) -> Result<LambdaSeries> {
    if k == 0 {
        return Err(Error::Domain(
            "dilatation multiple K must be at least 1".into(),
        ));
    }
    let k = k as usize;
    let out_order = series.order() / k;
    let coeffs = (0..=out_order)
        .map(|j| {
            let n = j * k;
            let c = BigRational::new(factorial(n as u32), factorial(j as u32));
            series.coeff(n).scale(&c)
        })
        .collect();
    Ok(LambdaSeries::from_coeffs(coeffs))
}

/// Like [`dilate`] but for a requested output order; the input must carry
/// order at least `K · out_order`.
pub fn dilate_to(series: &LambdaSeries, k: u32, out_order: usize) -> Result<LambdaSeries> {
    let needed = k as usize * out_order;
    if k >= 1 && series.order() < needed {
        return Err(Error::InsufficientOrder {
            k,
            wanted: out_order,
            needed,
            have: series.order(),
        });
    }
    Ok(dilate(series, k)?.truncate(out_order))
}

/// `𝕊_L = (∂/∂λ)^L`.
pub fn shift(series: &LambdaSeries, l: u32) -> Result<LambdaSeries> {
    series.diff_lambda(l as usize)
}

/// Which half of the even/odd split a branch belongs to, by the parity of
/// the second table index it reads.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Part {
    Even,
    Odd,
}

/// One summand family of the resummed dilatation:
///
/// ```text
/// Σ_s Σ_ℓ x^r λ^n / n! · g_{r,m}(y),   r = K s + x_offset,
///                                      m = m_step ℓ + m_offset,
///                                      n = (r + m) / K
/// ```
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResumBranch {
    pub label: String,
    pub part: Option<Part>,
    pub x_offset: u32,
    pub m_step: u32,
    pub m_offset: u32,
}

impl ResumBranch {
    /// Power of λ contributed at `s = ℓ = 0`.
    pub fn lambda_shift(&self, k: u32) -> u32 {
        (self.x_offset + self.m_offset) / k
    }

    fn never_supported(&self, support: Support) -> bool {
        match support {
            Support::All => false,
            Support::Residue { modulus, residue } => {
                self.m_step.is_multiple_of(modulus) && self.m_offset % modulus != residue % modulus
            }
        }
    }

    fn evaluate(&self, k: u32, table: &CoeffTable, order: usize) -> LambdaSeries {
        let mut out = LambdaSeries::zero(order);
        if self.never_supported(table.support()) {
            return out;
        }
        for s in 0u32.. {
            let r = k * s + self.x_offset;
            if ((r + self.m_offset) / k) as usize > order {
                break;
            }
            for l in 0u32.. {
                let m = self.m_step * l + self.m_offset;
                debug_assert_eq!((r + m) % k, 0);
                let n = (r + m) / k;
                if n as usize > order {
                    break;
                }
                let g = table.get(r, m);
                if g.is_zero() {
                    continue;
                }
                let inv = BigRational::new(One::one(), factorial(n));
                out.add_at(n as usize, &g.mul_monomial(&inv, r, 0));
            }
        }
        out
    }
}

/// The dilatation `𝕃_K` rewritten as a sum of branch families read directly
/// from a coefficient table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResummedSeries {
    pub k: u32,
    pub branches: Vec<ResumBranch>,
}

impl ResummedSeries {
    /// The residue-class decomposition: the `α = 0` family plus one family
    /// per `α = 1..K-1`, the latter indexed so that `r = (s+1)K - α` and
    /// `m = qK + α`.
    pub fn residue_classes(k: u32) -> Self {
        assert!(k >= 1);
        let mut branches = vec![ResumBranch {
            label: "α=0".into(),
            part: None,
            x_offset: 0,
            m_step: k,
            m_offset: 0,
        }];
        for alpha in 1..k {
            branches.push(ResumBranch {
                label: format!("α={alpha}"),
                part: None,
                x_offset: k - alpha,
                m_step: k,
                m_offset: alpha,
            });
        }
        Self { k, branches }
    }

    /// The same decomposition refined by parity of the second index. `K = 1`
    /// is the `T = 0` odd case, where every β-family is empty.
    pub fn parity_split(k: u32) -> Self {
        assert!(k >= 1);
        let t = k / 2;
        let b = |label: String, part, x_offset, m_step, m_offset| ResumBranch {
            label,
            part: Some(part),
            x_offset,
            m_step,
            m_offset,
        };
        let mut branches = Vec::new();
        if k.is_multiple_of(2) {
            branches.push(b("E".into(), Part::Even, 0, k, 0));
            for beta in 1..t {
                branches.push(b(
                    format!("E β={beta}"),
                    Part::Even,
                    k - 2 * beta,
                    k,
                    2 * beta,
                ));
            }
            for beta in 1..=t {
                branches.push(b(
                    format!("O β={beta}"),
                    Part::Odd,
                    k - 2 * beta + 1,
                    k,
                    2 * beta - 1,
                ));
            }
        } else {
            let step = 2 * k;
            branches.push(b("E q=2ℓ".into(), Part::Even, 0, step, 0));
            for beta in 1..=t {
                branches.push(b(
                    format!("E q=2ℓ β={beta}"),
                    Part::Even,
                    k - 2 * beta,
                    step,
                    2 * beta,
                ));
            }
            for beta in 1..=t {
                branches.push(b(
                    format!("E q=2ℓ+1 β={beta}"),
                    Part::Even,
                    k - 2 * beta + 1,
                    step,
                    k + 2 * beta - 1,
                ));
            }
            branches.push(b("O q=2ℓ+1".into(), Part::Odd, 0, step, k));
            for beta in 1..=t {
                branches.push(b(
                    format!("O q=2ℓ β={beta}"),
                    Part::Odd,
                    k - 2 * beta + 1,
                    step,
                    2 * beta - 1,
                ));
            }
            for beta in 1..=t {
                branches.push(b(
                    format!("O q=2ℓ+1 β={beta}"),
                    Part::Odd,
                    k - 2 * beta,
                    step,
                    k + 2 * beta,
                ));
            }
        }
        Self { k, branches }
    }

    /// Sum of the selected branches, truncated at `order`.
    pub fn evaluate_where<P>(&self, table: &CoeffTable, order: usize, keep: P) -> LambdaSeries
    where
        P: Fn(&ResumBranch) -> bool + Sync,
    {
        self.branches
            .par_iter()
            .filter(|b| keep(b))
            .map(|b| b.evaluate(self.k, table, order))
            .reduce(|| LambdaSeries::zero(order), |a, b| &a + &b)
    }

    pub fn evaluate(&self, table: &CoeffTable, order: usize) -> LambdaSeries {
        self.evaluate_where(table, order, |_| true)
    }
}

/// `𝕃_K` of the table's generating function, via the residue-class
/// decomposition.
pub fn resum_residue_classes(table: &CoeffTable, k: u32, order: usize) -> Result<LambdaSeries> {
    if k == 0 {
        return Err(Error::Domain(
            "dilatation multiple K must be at least 1".into(),
        ));
    }
    Ok(ResummedSeries::residue_classes(k).evaluate(table, order))
}

/// `𝕃_K` of the table's generating function split into the summands with
/// even second index and those with odd second index.
///
/// The split is by index parity and is valid for any table; a table's
/// support predicate only prunes families that cannot contribute.
pub fn resum_parity_split(
    table: &CoeffTable,
    k: u32,
    order: usize,
) -> Result<(LambdaSeries, LambdaSeries)> {
    if k == 0 {
        return Err(Error::Domain(
            "dilatation multiple K must be at least 1".into(),
        ));
    }
    let plan = ResummedSeries::parity_split(k);
    let even = plan.evaluate_where(table, order, |b| b.part == Some(Part::Even));
    let odd = plan.evaluate_where(table, order, |b| b.part == Some(Part::Odd));
    Ok((even, odd))
}

/// A dense pseudo-random table with no parity structure, for exercising the
/// split on inputs where both halves are nonzero.
pub fn random_dense_table(seed: u64) -> CoeffTable {
    use rand::{Rng, SeedableRng};
    CoeffTable::new(Support::All, move |r, m| {
        let mix = seed ^ ((r as u64) << 32) ^ (m as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(mix);
        let mut p = BivarPoly::zero();
        for yp in 0..3 {
            let num: i64 = rng.gen_range(-9..=9);
            let den: i64 = rng.gen_range(1..=5);
            p.add_term(0, yp, crate::arith::rat(num, den));
        }
        p
    })
}

//! Closed forms of the K-tuple, L-shifted lacunary generating functions
//! `𝓗_{K,L}(λ;x,y) = Σ_n λ^n/n! · H_{nK+L}(x,y)` as sums of hypergeometric
//! blocks, materialized as exact truncated series.
//!
//! Every branch contributes its first term at `λ^{s + lambda_shift}`, so the
//! outer sum over `s` is cut exactly by the truncation order.

mod nieto_truax;
mod plan;

pub use nieto_truax::{
    lacunary_partial_sum, nieto_truax, nieto_truax_check, NietoTruaxCheck, NumericValue,
};
pub use plan::{AffineParam, ClosedFormPlan, PlanBranch};

use num_traits::One;
use rayon::prelude::*;

use crate::arith::{binomial, factorial, BigInt, BigRational, BivarPoly, LambdaSeries};
use crate::error::{Error, Result};
use crate::hermite::{hermite_egf, hermite_poly};
use crate::hypergeom::pfq_series;
use crate::lacunary::shift;

/// `Σ_q q! C(L,q) C(P,q) H_{L-q}(x,y) x^{P-q} (2y)^q`: what `x^P` turns into
/// under `x ↦ x + 2μy`, multiplication by `e^{μx+μ²y}` and extraction of
/// `L! [μ^L]`.
pub fn shifted_monomial(l: u32, p: u32, hermite: &[BivarPoly]) -> BivarPoly {
    let mut out = BivarPoly::zero();
    for q in 0..=l.min(p) {
        let c: BigInt = factorial(q)
            * binomial(l as u64, q as u64)
            * binomial(p as u64, q as u64)
            * (BigInt::one() << q);
        let term = hermite[(l - q) as usize].mul_monomial(&BigRational::from_integer(c), p - q, q);
        out += &term;
    }
    out
}

fn evaluate_branch(
    k: u32,
    l: u32,
    branch: &PlanBranch,
    order: usize,
    hermite: &[BivarPoly],
) -> Result<LambdaSeries> {
    let mut out = LambdaSeries::zero(order);
    let mut sigma = branch.lambda_shift;
    while sigma as usize <= order {
        let p = branch.x_power(k, sigma);
        let scalar = BigRational::new(branch.factorial_ratio(k, sigma), factorial(sigma));
        let outer = shifted_monomial(l, p, hermite).mul_monomial(&scalar, 0, branch.y_power);
        let block = pfq_series(&branch.spec_at(sigma), order - sigma as usize)?;
        for (j, c) in block.coeffs().iter().enumerate() {
            if !c.is_zero() {
                out.add_at(sigma as usize + j, &(&outer * c));
            }
        }
        sigma += 1;
    }
    Ok(out)
}

/// `𝓗_{K,L}` truncated at `order`, from the hypergeometric closed form for
/// `K ≥ 2` and from the shifted Hermite EGF for `K = 1`.
pub fn closed_form_hkl(k: u32, l: u32, order: usize) -> Result<LambdaSeries> {
    match k {
        0 => Err(Error::Domain(
            "dilatation multiple K must be at least 1".into(),
        )),
        1 => shift(&hermite_egf(order + l as usize), l),
        _ => {
            let plan = ClosedFormPlan::new(k);
            let hermite: Vec<BivarPoly> = (0..=l).map(hermite_poly).collect();
            plan.branches
                .par_iter()
                .map(|b| evaluate_branch(k, l, b, order, &hermite))
                .try_reduce(|| LambdaSeries::zero(order), |a, b| Ok(&a + &b))
        }
    }
}

/// `𝓗_{K,0}` truncated at `order`.
pub fn closed_form_hk0(k: u32, order: usize) -> Result<LambdaSeries> {
    closed_form_hkl(k, 0, order)
}

/// Truncated double series `Σ_{L ≤ mu_order} μ^L · S_L(λ)` with each `S_L`
/// a [`LambdaSeries`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MuLambdaSeries {
    coeffs: Vec<LambdaSeries>,
}

impl MuLambdaSeries {
    pub fn mu_order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn lambda_order(&self) -> usize {
        self.coeffs[0].order()
    }

    /// `[μ^L]`.
    pub fn mu_coeff(&self, l: usize) -> &LambdaSeries {
        &self.coeffs[l]
    }

    /// `L! [μ^L]`, which is `𝓗_{K,L}`.
    pub fn shifted(&self, l: usize) -> LambdaSeries {
        self.coeffs[l].scale(&BigRational::from_integer(factorial(l as u32)))
    }
}

/// Expands `p(x + 2μy, y)` in powers of μ up to `mu_order`.
fn substitute_shift(p: &BivarPoly, mu_order: usize) -> Vec<BivarPoly> {
    let mut out = vec![BivarPoly::zero(); mu_order + 1];
    for (xp, yp, c) in p.iter() {
        for (j, slot) in out
            .iter_mut()
            .enumerate()
            .take((xp as usize).min(mu_order) + 1)
        {
            let j = j as u32;
            let factor = binomial(xp as u64, j as u64) * (BigInt::one() << j);
            slot.add_term(xp - j, yp + j, c * BigRational::from_integer(factor));
        }
    }
    out
}

/// `𝓡_K(μ;λ;x,y) = e^{μx+μ²y} · 𝓗_{K,0}(λ; x+2μy, y)`, the exponential
/// generating function in μ of all shifts `𝓗_{K,L}`.
pub fn rk_series(k: u32, mu_order: usize, lambda_order: usize) -> Result<MuLambdaSeries> {
    let base = closed_form_hk0(k, lambda_order)?;
    // substituted[j] = [μ^j] 𝓗_{K,0}(λ; x+2μy, y)
    let mut substituted = vec![LambdaSeries::zero(lambda_order); mu_order + 1];
    for (n, c) in base.coeffs().iter().enumerate() {
        for (j, piece) in substitute_shift(c, mu_order).into_iter().enumerate() {
            substituted[j].add_at(n, &piece);
        }
    }
    let mu_egf = hermite_egf(mu_order);
    let coeffs = (0..=mu_order)
        .map(|l| {
            let mut acc = LambdaSeries::zero(lambda_order);
            for i in 0..=l {
                acc = &acc + &substituted[l - i].mul_poly(mu_egf.coeff(i));
            }
            acc
        })
        .collect();
    Ok(MuLambdaSeries { coeffs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;
    use crate::hermite::hermite_coeff_table;
    use crate::lacunary::resum_parity_split;

    #[test]
    fn constant_term_is_hermite_l() {
        for l in 0..4 {
            let s = closed_form_hkl(3, l, 2).unwrap();
            assert_eq!(s.coeff(0), &hermite_poly(l));
        }
        assert_eq!(closed_form_hk0(5, 0).unwrap().coeff(0), &BivarPoly::one());
    }

    #[test]
    fn k1_delegates_to_egf() {
        assert_eq!(closed_form_hk0(1, 5).unwrap(), hermite_egf(5));
        assert_eq!(
            closed_form_hkl(1, 2, 3).unwrap().egf_coeff(3),
            hermite_poly(5)
        );
        assert!(closed_form_hkl(0, 0, 3).is_err());
    }

    #[test]
    fn oracle_spot_checks() {
        assert_eq!(closed_form_hk0(3, 2).unwrap().egf_coeff(2), hermite_poly(6));
        assert_eq!(
            closed_form_hkl(4, 3, 2).unwrap().egf_coeff(2),
            hermite_poly(11)
        );
    }

    #[test]
    fn k3_l1_first_branch_prefactor() {
        // x^{3s+1} + C(3s,1) 2y x^{3s-1} at s = 2
        let h: Vec<BivarPoly> = (0..=1).map(hermite_poly).collect();
        let expected = BivarPoly::from_terms([(7, 0, int(1)), (5, 1, int(12))]);
        assert_eq!(shifted_monomial(1, 6, &h), expected);
        // at s = 0 only the q = 0 term survives
        assert_eq!(shifted_monomial(1, 0, &h), hermite_poly(1));
    }

    #[test]
    fn l_zero_matches_hk0() {
        for k in 2..=5 {
            assert_eq!(
                closed_form_hkl(k, 0, 4).unwrap(),
                closed_form_hk0(k, 4).unwrap()
            );
        }
    }

    #[test]
    fn agrees_with_even_part_of_resummation() {
        let table = hermite_coeff_table();
        for k in 2..=8 {
            let (even, _) = resum_parity_split(&table, k, 4).unwrap();
            assert_eq!(closed_form_hk0(k, 4).unwrap(), even, "K = {k}");
        }
    }

    #[test]
    fn y_zero_specialization() {
        // H_m(x, 0) = x^m, so the series collapses to Σ λ^n x^{nK+L} / n!
        for (k, l) in [(2, 1), (3, 2), (4, 0), (5, 3)] {
            let s = closed_form_hkl(k, l, 4).unwrap();
            for n in 0..=4u32 {
                let at_zero = s.coeff(n as usize).eval_y(&int(0));
                let expected = BivarPoly::monomial(
                    BigRational::new(BigInt::one(), factorial(n)),
                    n * k + l,
                    0,
                );
                assert_eq!(at_zero, expected);
            }
        }
    }

    #[test]
    fn factorial_ratio_is_hermite_coefficient() {
        for k in 2..=7u32 {
            for b in &ClosedFormPlan::new(k).branches {
                for sigma in b.lambda_shift.max(1)..b.lambda_shift + 4 {
                    let h = hermite_poly(k * sigma);
                    let c = h.coeff(b.x_power(k, sigma), b.y_power);
                    assert_eq!(c, BigRational::from_integer(b.factorial_ratio(k, sigma)));
                }
            }
        }
    }

    #[test]
    fn rk_series_reproduces_shifts() {
        let r = rk_series(3, 2, 3).unwrap();
        assert_eq!(r.shifted(0), closed_form_hk0(3, 3).unwrap());
        assert_eq!(r.shifted(1), closed_form_hkl(3, 1, 3).unwrap());
        let r4 = rk_series(4, 2, 3).unwrap();
        assert_eq!(r4.shifted(2), closed_form_hkl(4, 2, 3).unwrap());
        assert_eq!((r4.mu_order(), r4.lambda_order()), (2, 3));
    }
}

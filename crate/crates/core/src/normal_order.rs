//! Normal ordering of `e^{μD}` for semi-linear `D = q(x) d/dx + v(x)`:
//! `e^{μD} f(x) = g(μ;x) · f(T(μ;x))` with `∂_μ T = q(T)`, `T(0) = x` and
//! `∂_μ ln g = v(T)`, `g(0) = 1`, solved as formal series in μ.
//!
//! Also a direct checker for the Crofton identity
//! `e^{cλ∂^m} (f·g) = f(x + mcλ∂^{m-1}) e^{cλ∂^m} g`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{factorial, int, BigInt, BigRational, BivarPoly, LambdaSeries};
use crate::error::{Error, Result};

/// `D = q(x) d/dx + v(x)`; `y` enters only through coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemiLinearOp {
    pub q: BivarPoly,
    pub v: BivarPoly,
}

impl SemiLinearOp {
    pub fn new(q: BivarPoly, v: BivarPoly) -> Self {
        Self { q, v }
    }

    /// `D f = q f' + v f`.
    pub fn apply(&self, f: &BivarPoly) -> BivarPoly {
        &(&self.q * &f.derivative_x()) + &(&self.v * f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalOrderResult {
    /// Substitution function `T(μ;x)`.
    pub t_series: LambdaSeries,
    /// Prefactor `g(μ;x)`.
    pub g_series: LambdaSeries,
    pub order: usize,
}

/// `p(s, y)`: substitutes the series `s` for `x` in `p`.
pub fn substitute_x(p: &BivarPoly, s: &LambdaSeries) -> LambdaSeries {
    let order = s.order();
    let mut acc = LambdaSeries::zero(order);
    let by_power = p.by_x_power();
    let Some(&top) = by_power.keys().next_back() else {
        return acc;
    };
    for a in (0..=top).rev() {
        acc = &acc * s;
        if let Some(c) = by_power.get(&a) {
            acc.add_at(0, c);
        }
    }
    acc
}

/// `exp(w)` for a series `w` without constant term, via
/// `g_{k+1} = (1/(k+1)) Σ_j (j+1) w_{j+1} g_{k-j}`.
fn exp_series(w: &LambdaSeries) -> LambdaSeries {
    debug_assert!(w.coeff(0).is_zero());
    let order = w.order();
    let mut g = vec![BivarPoly::one()];
    for k in 0..order {
        let mut next = BivarPoly::zero();
        for j in 0..=k {
            next += &(w.coeff(j + 1) * &g[k - j]).scale(&int(j as u32 + 1));
        }
        g.push(next.scale(&BigRational::new(BigInt::from(1), BigInt::from(k + 1))));
    }
    LambdaSeries::from_coeffs(g)
}

/// Solves the flow and prefactor equations of `op` to μ-order `order`.
pub fn normal_order(op: &SemiLinearOp, order: usize) -> NormalOrderResult {
    // Each pass of T ← x + ∫ q(T) fixes one more coefficient.
    let mut t = LambdaSeries::constant(BivarPoly::x(), order);
    for _ in 0..order {
        t = substitute_x(&op.q, &t).integrate().truncate(order);
        t.add_at(0, &BivarPoly::x());
    }
    let log_g = substitute_x(&op.v, &t).integrate().truncate(order);
    NormalOrderResult {
        g_series: exp_series(&log_g),
        t_series: t,
        order,
    }
}

/// `Σ_{k ≤ order} μ^k D^k f / k!`.
pub fn exp_op_direct(op: &SemiLinearOp, order: usize, f: &BivarPoly) -> LambdaSeries {
    let mut out = LambdaSeries::zero(order);
    let mut dk = f.clone();
    for k in 0..=order {
        out.add_at(
            k,
            &dk.scale(&BigRational::new(BigInt::from(1), factorial(k as u32))),
        );
        if k < order {
            dk = op.apply(&dk);
        }
    }
    out
}

/// `e^{μD} f` computed both directly and as `g · f∘T`; the two must agree.
pub fn apply_exp_op(op: &SemiLinearOp, order: usize, f: &BivarPoly) -> Result<LambdaSeries> {
    let direct = exp_op_direct(op, order, f);
    let no = normal_order(op, order);
    let ordered = &no.g_series * &substitute_x(f, &no.t_series);
    match (0..=order).find(|&k| direct.coeff(k) != ordered.coeff(k)) {
        Some(power) => Err(Error::Consistency { power }),
        None => Ok(direct),
    }
}

/// `Σ_{k ≤ order} (cλ)^k/k! ∂^{mk} h`.
fn exp_derivative(m: u32, c: &BigRational, h: &BivarPoly, order: usize) -> LambdaSeries {
    let mut out = LambdaSeries::zero(order);
    let mut ck = BigRational::from_integer(BigInt::from(1));
    for k in 0..=order {
        let coef = &ck / BigRational::from_integer(factorial(k as u32));
        out.add_at(k, &h.derivative_x_n(m * k as u32).scale(&coef));
        ck *= c;
    }
    out
}

/// One application of `X = x + mcλ∂^{m-1}` to a λ-series.
fn apply_shifted_x(m: u32, c: &BigRational, s: &LambdaSeries) -> LambdaSeries {
    let order = s.order();
    let mut out = s.mul_poly(&BivarPoly::x());
    let mc = c * int(m);
    for k in 0..order {
        out.add_at(k + 1, &s.coeff(k).derivative_x_n(m - 1).scale(&mc));
    }
    out
}

/// Checks `e^{cλ∂^m}(f·g) = f(X) e^{cλ∂^m} g` with `X = x + mcλ∂^{m-1}`
/// acting as an operator, both sides expanded to λ-order `order`.
pub fn crofton_check(m: u32, c: &BigRational, f: &BivarPoly, g: &BivarPoly, order: usize) -> bool {
    assert!(m >= 1, "derivative order must be at least 1");
    let lhs = exp_derivative(m, c, &(f * g), order);
    let base = exp_derivative(m, c, g, order);
    let by_power = f.by_x_power();
    let mut rhs = LambdaSeries::zero(order);
    if let Some(&top) = by_power.keys().next_back() {
        let mut x_pow = base;
        for a in 0..=top {
            if let Some(coef) = by_power.get(&a) {
                rhs = &rhs + &x_pow.mul_poly(coef);
            }
            x_pow = apply_shifted_x(m, c, &x_pow);
        }
    }
    lhs == rhs
}

fn random_poly<R: Rng>(rng: &mut R, max_xdeg: u32, max_ydeg: u32, terms: usize) -> BivarPoly {
    let mut p = BivarPoly::zero();
    for _ in 0..terms {
        let num = rng.gen_range(-9i64..=9);
        let den = rng.gen_range(1i64..=4);
        let xp = rng.gen_range(0..=max_xdeg);
        let yp = rng.gen_range(0..=max_ydeg);
        p.add_term(xp, yp, BigRational::new(num.into(), den.into()));
    }
    p
}

/// Seeded `(operator, f)` pairs with `q`, `v` of x-degree ≤ 2 and `f` of
/// x-degree ≤ 3.
pub fn random_operator_corpus(seed: u64, count: usize) -> Vec<(SemiLinearOp, BivarPoly)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let q = random_poly(&mut rng, 2, 1, 2);
            let v = random_poly(&mut rng, 2, 1, 2);
            let f = random_poly(&mut rng, 3, 1, 3);
            (SemiLinearOp::new(q, v), f)
        })
        .collect()
}

/// Seeded pairs of polynomials in `x` alone of degree ≤ `max_degree`.
pub fn random_poly_pairs(seed: u64, count: usize, max_degree: u32) -> Vec<(BivarPoly, BivarPoly)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let f = random_poly(&mut rng, max_degree, 0, 4);
            let g = random_poly(&mut rng, max_degree, 0, 4);
            (f, g)
        })
        .collect()
}

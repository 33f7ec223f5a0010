use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::poly::{pretty_monomial, superscript, BivarPoly};
use super::rational::{factorial, BigInt, BigRational};
use crate::error::{Error, Result};

/// Truncated power series `Σ_{n ≤ order} c_n t^n` in a formal variable `t`
/// (usually λ, sometimes μ) with [`BivarPoly`] coefficients.
///
/// Binary operations combine truncation orders with `min`; anything above
/// the resulting order is silently dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaSeries {
    coeffs: Vec<BivarPoly>,
}

impl LambdaSeries {
    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![BivarPoly::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(BivarPoly::one(), order)
    }

    pub fn constant(p: BivarPoly, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = p;
        s
    }

    /// `p * t^power`, truncated at `order`.
    pub fn monomial(p: BivarPoly, power: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.add_at(power, &p);
        s
    }

    /// Builds a series from its coefficients; the order is `coeffs.len() - 1`.
    ///
    /// # Panics
    /// If `coeffs` is empty.
    pub fn from_coeffs(coeffs: Vec<BivarPoly>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a series needs at least the t^0 coefficient"
        );
        Self { coeffs }
    }

    /// `exp(p * t^power)` truncated at `order`.
    pub fn exp_monomial(p: &BivarPoly, power: usize, order: usize) -> Self {
        assert!(
            power >= 1,
            "exp of a series with a constant term is not formal"
        );
        let mut s = Self::zero(order);
        let mut p_k = BivarPoly::one();
        let mut k = 0usize;
        while k * power <= order {
            let inv = BigRational::new(BigInt::one(), factorial(k as u32));
            s.coeffs[k * power] += &p_k.scale(&inv);
            p_k = &p_k * p;
            k += 1;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `t^n`.
    ///
    /// # Panics
    /// If `n` exceeds the truncation order.
    pub fn coeff(&self, n: usize) -> &BivarPoly {
        &self.coeffs[n]
    }

    pub fn get(&self, n: usize) -> Option<&BivarPoly> {
        self.coeffs.get(n)
    }

    pub fn coeffs(&self) -> &[BivarPoly] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BivarPoly> {
        self.coeffs
    }

    /// `n! * [t^n]`, the polynomial an exponential generating function encodes.
    pub fn egf_coeff(&self, n: usize) -> BivarPoly {
        self.coeffs[n].scale_int(&factorial(n as u32))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(BivarPoly::is_zero)
    }

    /// Adds `p` to the coefficient of `t^power`; ignored beyond the order.
    pub fn add_at(&mut self, power: usize, p: &BivarPoly) {
        if let Some(c) = self.coeffs.get_mut(power) {
            *c += p;
        }
    }

    pub fn truncate(&self, order: usize) -> Self {
        let keep = order.min(self.order());
        Self {
            coeffs: self.coeffs[..=keep].to_vec(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        self.map(|p| p.scale(c))
    }

    pub fn mul_poly(&self, q: &BivarPoly) -> Self {
        self.map(|p| p * q)
    }

    pub fn map<F: FnMut(&BivarPoly) -> BivarPoly>(&self, f: F) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// `(d/dt)^times`; the order drops by `times`.
    pub fn diff_lambda(&self, times: usize) -> Result<Self> {
        let order = self.order();
        if times > order {
            return Err(Error::TruncationUnderflow { times, order });
        }
        let coeffs = (0..=order - times)
            .map(|n| {
                let falling: BigInt = ((n + 1)..=(n + times)).map(BigInt::from).product();
                self.coeffs[n + times].scale_int(&falling)
            })
            .collect();
        Ok(Self { coeffs })
    }

    /// `∫_0^t`, raising the order by one.
    pub fn integrate(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(BivarPoly::zero());
        for (n, c) in self.coeffs.iter().enumerate() {
            coeffs.push(c.scale(&BigRational::new(BigInt::one(), BigInt::from(n + 1))));
        }
        Self { coeffs }
    }

    /// Human-oriented rendering in the variable `var`, e.g.
    /// `1 + λ·x + λ²·(1/2 x² + y)`.
    pub fn pretty_in(&self, var: &str) -> String {
        let mut out = String::new();
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let power = match n {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}{}", superscript(n as u32)),
            };
            let (negative, body) = if c.len() == 1 {
                let t = &c.canonical_terms()[0];
                let neg = t.coeff < BigRational::zero();
                let abs = if neg {
                    -t.coeff.clone()
                } else {
                    t.coeff.clone()
                };
                let mono = pretty_monomial(t.xp, t.yp);
                let inner = BivarPoly::monomial(abs.clone(), t.xp, t.yp).pretty();
                let body = if n == 0 {
                    inner
                } else if abs.is_one() && !mono.is_empty() {
                    format!("{power}·{mono}")
                } else if abs.is_one() {
                    power.clone()
                } else if mono.is_empty() && abs.denom().is_one() {
                    format!("{power}·{inner}")
                } else {
                    format!("{power}·({inner})")
                };
                (neg, body)
            } else if n == 0 {
                (false, c.pretty())
            } else {
                (false, format!("{power}·({})", c.pretty()))
            };
            match (out.is_empty(), negative) {
                (true, false) => out.push_str(&body),
                (true, true) => {
                    out.push('-');
                    out.push_str(&body);
                }
                (false, false) => {
                    out.push_str(" + ");
                    out.push_str(&body);
                }
                (false, true) => {
                    out.push_str(" - ");
                    out.push_str(&body);
                }
            }
        }
        if out.is_empty() {
            "0".to_string()
        } else {
            out
        }
    }

    pub fn pretty(&self) -> String {
        self.pretty_in("λ")
    }
}

impl Add for &LambdaSeries {
    type Output = LambdaSeries;
    fn add(self, rhs: &LambdaSeries) -> LambdaSeries {
        let order = self.order().min(rhs.order());
        LambdaSeries {
            coeffs: (0..=order)
                .map(|n| &self.coeffs[n] + &rhs.coeffs[n])
                .collect(),
        }
    }
}

impl Sub for &LambdaSeries {
    type Output = LambdaSeries;
    fn sub(self, rhs: &LambdaSeries) -> LambdaSeries {
        let order = self.order().min(rhs.order());
        LambdaSeries {
            coeffs: (0..=order)
                .map(|n| &self.coeffs[n] - &rhs.coeffs[n])
                .collect(),
        }
    }
}

impl Neg for &LambdaSeries {
    type Output = LambdaSeries;
    fn neg(self) -> LambdaSeries {
        self.map(|p| -p)
    }
}

/// Cauchy product truncated at the smaller order.
impl Mul for &LambdaSeries {
    type Output = LambdaSeries;
    fn mul(self, rhs: &LambdaSeries) -> LambdaSeries {
        let order = self.order().min(rhs.order());
        let mut out = LambdaSeries::zero(order);
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(order + 1 - i) {
                if b.is_zero() {
                    continue;
                }
                out.coeffs[i + j] += &(a * b);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LambdaSeries {
            type Output = LambdaSeries;
            fn $m(self, rhs: LambdaSeries) -> LambdaSeries {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

//! Roots-of-unity filter `𝓢_{K,L} = Σ_n λ^{nK+L} H_{nK+L}(x,y)/(nK+L)!`
//! evaluated in high-precision complex floating point.

use std::fmt;

use astro_float_num::{BigFloat, Consts, Radix, RoundingMode};

use crate::arith::{factorial, BigInt, BigRational};
use crate::error::{Error, Result};
use crate::hermite::hermite_poly;

const RM: RoundingMode = RoundingMode::ToEven;
const GUARD_BITS: usize = 64;

/// A complex value `re + i·im` carried at `bits` of precision.
#[derive(Clone, Debug)]
pub struct NumericValue {
    pub re: BigFloat,
    pub im: BigFloat,
    pub bits: usize,
}

impl NumericValue {
    pub fn re_string(&self) -> String {
        to_decimal(&self.re)
    }

    pub fn im_string(&self) -> String {
        to_decimal(&self.im)
    }
}

impl fmt::Display for NumericValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + i·{}", self.re_string(), self.im_string())
    }
}

fn consts() -> Result<Consts> {
    Consts::new().map_err(|e| Error::Domain(format!("cannot initialize float constants: {e:?}")))
}

fn to_decimal(v: &BigFloat) -> String {
    match consts() {
        Ok(mut cc) => v
            .format(Radix::Dec, RM, &mut cc)
            .unwrap_or_else(|_| "NaN".into()),
        Err(_) => "NaN".into(),
    }
}

fn to_f64(v: &BigFloat) -> f64 {
    if v.is_zero() {
        return 0.0;
    }
    to_decimal(v).parse().unwrap_or(f64::NAN)
}

fn from_bigint(n: &BigInt, p: usize, cc: &mut Consts) -> BigFloat {
    BigFloat::parse(&n.to_string(), Radix::Dec, p, RM, cc)
}

fn from_rational(r: &BigRational, p: usize, cc: &mut Consts) -> BigFloat {
    from_bigint(r.numer(), p, cc).div(&from_bigint(r.denom(), p, cc), p, RM)
}

fn check_index(k: u32, l: u32) -> Result<()> {
    if k == 0 {
        return Err(Error::Domain("K must be at least 1".into()));
    }
    if l >= k {
        return Err(Error::Domain(format!(
            "shift L = {l} must be below K = {k}"
        )));
    }
    Ok(())
}

/// `(1/K) Σ_{ℓ=1}^{K} e^{xτ_ℓ + yτ_ℓ²} e^{-2πiℓL/K}` with `τ_ℓ = λ e^{2πiℓ/K}`.
pub fn nieto_truax(
    k: u32,
    l: u32,
    lambda: &BigRational,
    x: &BigRational,
    y: &BigRational,
    bits: usize,
) -> Result<NumericValue> {
    check_index(k, l)?;
    if bits < 64 {
        return Err(Error::Domain(format!(
            "precision must be at least 64 bits, got {bits}"
        )));
    }
    let p = bits + GUARD_BITS;
    let mut cc = consts()?;
    let lam = from_rational(lambda, p, &mut cc);
    let xf = from_rational(x, p, &mut cc);
    let yf = from_rational(y, p, &mut cc);
    let lam2 = lam.mul(&lam, p, RM);
    let xl = xf.mul(&lam, p, RM);
    let yl2 = yf.mul(&lam2, p, RM);
    let two_pi = cc.pi(p, RM).mul(&BigFloat::from_u8(2, p), p, RM);
    let kf = BigFloat::from_u32(k, p);

    let mut re = BigFloat::from_u8(0, p);
    let mut im = BigFloat::from_u8(0, p);
    for ell in 1..=k {
        let theta = two_pi
            .mul(&BigFloat::from_u32(ell, p), p, RM)
            .div(&kf, p, RM);
        let theta2 = theta.mul(&BigFloat::from_u8(2, p), p, RM);
        let (c1, s1) = (theta.cos(p, RM, &mut cc), theta.sin(p, RM, &mut cc));
        let (c2, s2) = (theta2.cos(p, RM, &mut cc), theta2.sin(p, RM, &mut cc));
        let a = xl.mul(&c1, p, RM).add(&yl2.mul(&c2, p, RM), p, RM);
        let b = xl.mul(&s1, p, RM).add(&yl2.mul(&s2, p, RM), p, RM);
        let phase = b.sub(&theta.mul(&BigFloat::from_u32(l, p), p, RM), p, RM);
        let modulus = a.exp(p, RM, &mut cc);
        re = re.add(&modulus.mul(&phase.cos(p, RM, &mut cc), p, RM), p, RM);
        im = im.add(&modulus.mul(&phase.sin(p, RM, &mut cc), p, RM), p, RM);
    }
    let mut re = re.div(&kf, p, RM);
    let mut im = im.div(&kf, p, RM);
    re.set_precision(bits, RM)
        .map_err(|e| Error::Domain(format!("precision change failed: {e:?}")))?;
    im.set_precision(bits, RM)
        .map_err(|e| Error::Domain(format!("precision change failed: {e:?}")))?;
    Ok(NumericValue { re, im, bits })
}

/// Exact `Σ_{n ≤ n_max} λ^{nK+L} H_{nK+L}(x,y)/(nK+L)!`.
pub fn lacunary_partial_sum(
    k: u32,
    l: u32,
    lambda: &BigRational,
    x: &BigRational,
    y: &BigRational,
    n_max: u32,
) -> Result<BigRational> {
    check_index(k, l)?;
    let mut acc = BigRational::default();
    for n in 0..=n_max {
        let m = n * k + l;
        let h = hermite_poly(m).eval(x, y);
        let lam_pow = num_traits::pow(lambda.clone(), m as usize);
        acc += h * lam_pow / BigRational::from_integer(factorial(m));
    }
    Ok(acc)
}

/// Comparison of the roots-of-unity value against the exact partial sum.
#[derive(Clone, Debug, PartialEq)]
pub struct NietoTruaxCheck {
    pub value: String,
    pub oracle: String,
    pub rel_err: f64,
    pub im_residue: f64,
}

impl NietoTruaxCheck {
    pub fn passes(&self, rel_tol: f64, im_tol: f64) -> bool {
        self.rel_err < rel_tol && self.im_residue < im_tol
    }
}

#[allow(clippy::too_many_arguments)]
pub fn nieto_truax_check(
    k: u32,
    l: u32,
    lambda: &BigRational,
    x: &BigRational,
    y: &BigRational,
    bits: usize,
    n_max: u32,
) -> Result<NietoTruaxCheck> {
    let value = nieto_truax(k, l, lambda, x, y, bits)?;
    let exact = lacunary_partial_sum(k, l, lambda, x, y, n_max)?;
    let mut cc = consts()?;
    let oracle = from_rational(&exact, bits, &mut cc);
    let diff = value.re.sub(&oracle, bits, RM).abs();
    let rel = if oracle.is_zero() {
        diff
    } else {
        diff.div(&oracle.abs(), bits, RM)
    };
    Ok(NietoTruaxCheck {
        value: value.re_string(),
        oracle: to_decimal(&oracle),
        rel_err: to_f64(&rel),
        im_residue: to_f64(&value.im.abs()),
    })
}

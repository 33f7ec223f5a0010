//! Pochhammer symbols, truncated `pFq` series with monomial arguments, and the
//! Pochhammer form of the Gauss–Legendre multiplication formula.

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::wire::{rational_str, rational_vec_str};
use crate::arith::{factorial, int, BigInt, BigRational, BivarPoly, LambdaSeries};
use crate::error::{Error, Result};

/// Rising factorial `(a)_b = a (a+1) ··· (a+b-1)`.
pub fn pochhammer(a: &BigRational, b: u32) -> BigRational {
    let mut acc = BigRational::one();
    let mut f = a.clone();
    for _ in 0..b {
        acc *= &f;
        f += BigRational::one();
    }
    acc
}

/// The argument `coef · λ^lp · x^xp · y^yp` of a `pFq` block.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialArg {
    #[serde(with = "rational_str")]
    pub coef: BigRational,
    pub lp: u32,
    pub xp: u32,
    pub yp: u32,
}

/// `pFq[upper; lower](arg)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypergeomSpec {
    #[serde(with = "rational_vec_str")]
    pub upper: Vec<BigRational>,
    #[serde(with = "rational_vec_str")]
    pub lower: Vec<BigRational>,
    pub arg: MonomialArg,
}

impl HypergeomSpec {
    pub fn new(upper: Vec<BigRational>, lower: Vec<BigRational>, arg: MonomialArg) -> Self {
        Self { upper, lower, arg }
    }

    pub fn p(&self) -> usize {
        self.upper.len()
    }

    pub fn q(&self) -> usize {
        self.lower.len()
    }

    /// Number of terms `s` whose λ-power `s · lp` stays within `order`.
    fn term_count(&self, order: usize) -> usize {
        order / self.arg.lp as usize + 1
    }

    /// Fails if some lower parameter is a non-positive integer `-k` that a
    /// term with index `≤ last_term` would divide by.
    pub fn check_poles(&self, last_term: usize) -> Result<()> {
        for (index, b) in self.lower.iter().enumerate() {
            if b.is_integer() && !b.is_positive() {
                let k = (-b.to_integer()).to_usize().unwrap_or(usize::MAX);
                if k < last_term {
                    return Err(Error::Pole {
                        index: index + 1,
                        value: crate::arith::format_rational(b),
                        term: k + 1,
                    });
                }
            }
        }
        Ok(())
    }

    /// Scalar part of term `s`: `coef^s / s! · Π (a_i)_s / Π (b_j)_s`.
    pub fn term_scalar(&self, s: u32) -> Result<BigRational> {
        self.check_poles(s as usize)?;
        let mut t = BigRational::one();
        for a in &self.upper {
            t *= pochhammer(a, s);
        }
        for b in &self.lower {
            t /= pochhammer(b, s);
        }
        let mut c = BigRational::one();
        for _ in 0..s {
            c *= &self.arg.coef;
        }
        Ok(t * c / BigRational::from_integer(factorial(s)))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("spec serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// The truncated series `Σ_{s·lp ≤ order} z^s/s! · Π(a_i)_s / Π(b_j)_s`
/// with `z` the monomial argument.
pub fn pfq_series(spec: &HypergeomSpec, order: usize) -> Result<LambdaSeries> {
    if spec.arg.lp == 0 {
        return Err(Error::Domain(
            "pFq argument must carry at least one power of λ".into(),
        ));
    }
    let count = spec.term_count(order);
    spec.check_poles(count - 1)?;
    let mut out = LambdaSeries::zero(order);
    let mut t = BigRational::one();
    for s in 0..count as u32 {
        if s > 0 {
            let prev = s - 1;
            for a in &spec.upper {
                t *= a + int(prev);
            }
            for b in &spec.lower {
                t /= b + int(prev);
            }
            t *= &spec.arg.coef;
            t /= int(s);
        }
        if t.is_zero() {
            break;
        }
        let mono = BivarPoly::monomial(t.clone(), spec.arg.xp * s, spec.arg.yp * s);
        out.add_at((spec.arg.lp * s) as usize, &mono);
    }
    Ok(out)
}

/// Checks `Γ(n(s+x)) / Γ(nx) = n^{sn} Π_{j<n} (x + j/n)_s` as the exact
/// identity `Π_{k<ns} (nx + k) = n^{sn} Π_{j<n} (x + j/n)_s`.
pub fn gmfc_check(n: u32, s: u32, x: &BigRational) -> Result<bool> {
    if n < 2 {
        return Err(Error::Domain(format!(
            "multiplication formula needs n ≥ 2, got {n}"
        )));
    }
    let nx = x * int(n);
    let shifted = &nx + int(n * s);
    for v in [&nx, &shifted] {
        if v.is_integer() && !v.is_positive() {
            return Err(Error::Domain(format!(
                "Gamma argument {} is a pole",
                crate::arith::format_rational(v)
            )));
        }
    }
    let lhs = pochhammer(&nx, n * s);
    let mut rhs = BigRational::from_integer(BigInt::from(n).pow(s * n));
    for j in 0..n {
        rhs *= pochhammer(&(x + BigRational::new(BigInt::from(j), BigInt::from(n))), s);
    }
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use proptest::prelude::*;

    fn arg(coef: BigRational, lp: u32, xp: u32, yp: u32) -> MonomialArg {
        MonomialArg { coef, lp, xp, yp }
    }

    #[test]
    fn pochhammer_values() {
        assert_eq!(pochhammer(&rat(7, 3), 0), int(1));
        for q in 0..8 {
            assert_eq!(
                pochhammer(&int(1), q),
                BigRational::from_integer(factorial(q))
            );
        }
        assert_eq!(pochhammer(&rat(1, 2), 2), rat(3, 4));
        assert_eq!(pochhammer(&int(-2), 3), int(0));
    }

    #[test]
    fn zero_f_zero_is_exponential() {
        let spec = HypergeomSpec::new(vec![], vec![], arg(int(1), 1, 0, 0));
        let s = pfq_series(&spec, 5).unwrap();
        assert_eq!(s, LambdaSeries::exp_monomial(&BivarPoly::one(), 1, 5));
    }

    #[test]
    fn cancelling_parameters_give_geometric_series() {
        let spec = HypergeomSpec::new(vec![int(1), int(1)], vec![int(1)], arg(int(1), 1, 0, 0));
        let s = pfq_series(&spec, 6).unwrap();
        for n in 0..=6 {
            assert_eq!(s.coeff(n), &BivarPoly::one());
        }
    }

    #[test]
    fn three_f_one_first_term() {
        let spec = HypergeomSpec::new(
            vec![rat(1, 4), rat(1, 2), rat(3, 4)],
            vec![rat(1, 2)],
            arg(int(64), 1, 0, 2),
        );
        let s = pfq_series(&spec, 3).unwrap();
        assert_eq!(s.coeff(1), &BivarPoly::monomial(int(12), 0, 2));
        assert_eq!(spec.term_scalar(1).unwrap(), int(12));
    }

    #[test]
    fn sparse_argument_powers() {
        let spec = HypergeomSpec::new(vec![], vec![], arg(int(2), 2, 1, 0));
        let s = pfq_series(&spec, 5).unwrap();
        assert!(s.coeff(1).is_zero());
        assert_eq!(s.coeff(4), &BivarPoly::monomial(int(2), 2, 0));
    }

    #[test]
    fn poles_are_reported() {
        let spec = HypergeomSpec::new(vec![int(1)], vec![int(-2)], arg(int(1), 1, 0, 0));
        assert!(pfq_series(&spec, 2).is_ok());
        match pfq_series(&spec, 4) {
            Err(Error::Pole { index, term, .. }) => assert_eq!((index, term), (1, 3)),
            other => panic!("expected pole, got {other:?}"),
        }
        let zero = HypergeomSpec::new(vec![], vec![int(0)], arg(int(1), 1, 0, 0));
        assert!(pfq_series(&zero, 0).is_ok());
        assert!(matches!(
            pfq_series(&zero, 1),
            Err(Error::Pole { term: 1, .. })
        ));
    }

    #[test]
    fn constant_argument_rejected() {
        let spec = HypergeomSpec::new(vec![], vec![], arg(int(1), 0, 1, 0));
        assert!(matches!(pfq_series(&spec, 2), Err(Error::Domain(_))));
    }

    #[test]
    fn json_form() {
        let spec = HypergeomSpec::new(
            vec![rat(1, 4), rat(1, 2), rat(3, 4)],
            vec![rat(1, 2)],
            arg(int(64), 1, 0, 2),
        );
        let text = spec.to_json();
        assert_eq!(
            text,
            r#"{"upper":["1/4","1/2","3/4"],"lower":["1/2"],"arg":{"coef":"64/1","lp":1,"xp":0,"yp":2}}"#
        );
        assert_eq!(HypergeomSpec::from_json(&text).unwrap(), spec);
    }

    #[test]
    fn gmfc_examples() {
        assert!(gmfc_check(3, 0, &rat(1, 3)).unwrap());
        assert!(gmfc_check(2, 1, &rat(1, 2)).unwrap());
        assert!(gmfc_check(1, 1, &int(1)).is_err());
        assert!(gmfc_check(2, 1, &int(0)).is_err());
        assert!(gmfc_check(2, 2, &rat(-1, 2)).is_err());
    }

    #[test]
    fn factorial_splitting_for_k4() {
        // (4(s+q))! = 4^{4q} (4s)! (s+q)!/q! Π_{j<3} (s + (j+1)/4)_q at s = q = 1
        let (s, q) = (1u32, 1u32);
        let lhs = BigRational::from_integer(factorial(4 * (s + q)));
        let mut rhs = BigRational::from_integer(BigInt::from(4).pow(4 * q))
            * BigRational::from_integer(factorial(4 * s))
            * BigRational::from_integer(factorial(s + q))
            / BigRational::from_integer(factorial(q));
        for j in 0..3 {
            rhs *= pochhammer(&(int(s) + rat(j + 1, 4)), q);
        }
        assert_eq!(lhs, int(40320));
        assert_eq!(rhs, lhs);
    }

    proptest! {
        #[test]
        fn pochhammer_step(num in -40i64..40, den in 1i64..12, b in 0u32..12) {
            let a = rat(num, den);
            prop_assert_eq!(pochhammer(&a, b + 1), pochhammer(&a, b) * (&a + int(b)));
        }

        #[test]
        fn pfq_term_ratio(
            up in proptest::collection::vec((1i64..20, 1i64..7), 0..4),
            lo in proptest::collection::vec((1i64..20, 1i64..7), 0..3),
            coef in 1i64..50,
        ) {
            let spec = HypergeomSpec::new(
                up.iter().map(|&(n, d)| rat(n, d)).collect(),
                lo.iter().map(|&(n, d)| rat(n, d)).collect(),
                arg(int(coef), 1, 0, 1),
            );
            let series = pfq_series(&spec, 6).unwrap();
            for s in 0..6u32 {
                let this = series.coeff(s as usize).coeff(0, s);
                let next = series.coeff(s as usize + 1).coeff(0, s + 1);
                let mut ratio = int(coef) / int(s + 1);
                for a in &spec.upper { ratio *= a + int(s); }
                for b in &spec.lower { ratio /= b + int(s); }
                prop_assert_eq!(next, this * ratio);
            }
        }
    }
}

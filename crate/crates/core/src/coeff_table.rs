use std::fmt;
use std::sync::Arc;

use num_traits::One;

use crate::arith::{factorial, BigRational, BivarPoly, LambdaSeries};

/// Which second indices `m` may carry a nonzero coefficient.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Support {
    All,
    /// Only `m ≡ residue (mod modulus)`.
    Residue {
        modulus: u32,
        residue: u32,
    },
}

impl Support {
    pub fn contains(&self, m: u32) -> bool {
        match *self {
            Support::All => true,
            Support::Residue { modulus, residue } => m % modulus == residue % modulus,
        }
    }
}

type Generator = dyn Fn(u32, u32) -> BivarPoly + Send + Sync;

/// Expansion coefficients `g_{r,m}(y)` of an exponential generating function
///
/// ```text
/// G(λ; x, y) = Σ_r x^r Σ_m λ^{r+m} / (r+m)! · g_{r,m}(y)
/// ```
///
/// Entries are produced on demand by a generator; nothing is materialized.
#[derive(Clone)]
pub struct CoeffTable {
    generator: Arc<Generator>,
    support: Support,
}

impl CoeffTable {
    pub fn new<F>(support: Support, generator: F) -> Self
    where
        F: Fn(u32, u32) -> BivarPoly + Send + Sync + 'static,
    {
        Self {
            generator: Arc::new(generator),
            support,
        }
    }

    pub fn support(&self) -> Support {
        self.support
    }

    /// `g_{r,m}(y)`; zero outside the support.
    pub fn get(&self, r: u32, m: u32) -> BivarPoly {
        if self.support.contains(m) {
            (self.generator)(r, m)
        } else {
            BivarPoly::zero()
        }
    }

    /// The generating function the table describes, truncated at `order` in λ.
    pub fn egf(&self, order: usize) -> LambdaSeries {
        let mut s = LambdaSeries::zero(order);
        for n in 0..=order as u32 {
            let inv = BigRational::new(One::one(), factorial(n));
            for r in 0..=n {
                let g = self.get(r, n - r);
                if g.is_zero() {
                    continue;
                }
                s.add_at(n as usize, &g.mul_monomial(&inv, r, 0));
            }
        }
        s
    }
}

impl fmt::Debug for CoeffTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CoeffTable")
            .field("support", &self.support)
            .finish_non_exhaustive()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    #[test]
    fn support_masks_generator() {
        let t = CoeffTable::new(
            Support::Residue {
                modulus: 3,
                residue: 1,
            },
            |_, _| BivarPoly::one(),
        );
        assert!(t.get(0, 0).is_zero());
        assert_eq!(t.get(0, 4), BivarPoly::one());
        assert!(Support::All.contains(7));
    }

    #[test]
    fn constant_table_is_exp_of_x_plus_one() {
        // g ≡ 1 gives Σ_n λ^n/n! Σ_r x^r, i.e. n![λ^n] = 1 + x + ... + x^n
        let t = CoeffTable::new(Support::All, |_, _| BivarPoly::one());
        let s = t.egf(3);
        let expected = BivarPoly::from_terms((0..=3).map(|r| (r, 0, int(1))));
        assert_eq!(s.egf_coeff(3), expected);
    }
}

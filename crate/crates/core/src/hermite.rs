//! Two-variable (Kampé de Fériet) Hermite polynomials
//! `H_n(x,y) = n! Σ_k x^{n-2k} y^k / ((n-2k)! k!)`.

use num_traits::One;

use crate::arith::{factorial, BigRational, BivarPoly, LambdaSeries};
use crate::coeff_table::{CoeffTable, Support};

/// `H_n(x, y)` as an exact polynomial.
pub fn hermite_poly(n: u32) -> BivarPoly {
    let nf = factorial(n);
    BivarPoly::from_terms((0..=n / 2).map(|k| {
        let c = BigRational::new(nf.clone(), factorial(n - 2 * k) * factorial(k));
        (n - 2 * k, k, c)
    }))
}

/// `exp(λx + λ²y)` truncated at `order`: `[λ^n] = H_n(x,y)/n!`.
pub fn hermite_egf(order: usize) -> LambdaSeries {
    let coeffs = (0..=order as u32)
        .map(|n| hermite_poly(n).scale(&BigRational::new(One::one(), factorial(n))))
        .collect();
    LambdaSeries::from_coeffs(coeffs)
}

/// `g_{r,m}(y)` for the Hermite EGF: zero for odd `m`, and
/// `g_{r,2k} = (r+2k)! y^k / (r! k!)`.
pub fn hermite_coeff_table() -> CoeffTable {
    CoeffTable::new(
        Support::Residue {
            modulus: 2,
            residue: 0,
        },
        |r, m| {
            let k = m / 2;
            let c = BigRational::new(factorial(r + m), factorial(r) * factorial(k));
            BivarPoly::monomial(c, 0, k)
        },
    )
}

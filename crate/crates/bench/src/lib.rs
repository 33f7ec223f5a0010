//! Shared fixtures for the criterion benchmarks in `benches/`.

use lacunae::arith::{int, rat, BigRational};
use lacunae::normal_order::SemiLinearOp;
use lacunae::BivarPoly;

/// `(K, L, order)` triples sized to take milliseconds, not seconds.
pub const CLOSED_FORM_CASES: &[(u32, u32, usize)] = &[(3, 0, 8), (4, 1, 8), (5, 2, 6), (8, 3, 4)];

/// The operator `x + 2y d/dx` whose exponential generates `H_n(x,y)`.
pub fn hermite_shift_op() -> SemiLinearOp {
    SemiLinearOp::new(BivarPoly::monomial(int(2), 0, 1), BivarPoly::x())
}

/// `(λ, x, y)` for the numeric roots-of-unity filter.
pub fn numeric_point() -> (BigRational, BigRational, BigRational) {
    (rat(1, 10), int(1), rat(1, 2))
}

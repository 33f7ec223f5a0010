use std::sync::{OnceLock, RwLock};

use num_traits::{One, Zero};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

use crate::error::{Error, Result};

static FACTORIALS: OnceLock<RwLock<Vec<BigInt>>> = OnceLock::new();

/// `n!` as an exact integer.
///
/// Values are memoized process-wide; the table only ever grows, and readers
/// never block each other once an index is cached.
pub fn factorial(n: u32) -> BigInt {
    let n = n as usize;
    let table = FACTORIALS.get_or_init(|| RwLock::new(vec![BigInt::one()]));
    {
        let cached = table.read().expect("factorial cache poisoned");
        if let Some(v) = cached.get(n) {
            return v.clone();
        }
    }
    let mut cached = table.write().expect("factorial cache poisoned");
    while cached.len() <= n {
        let k = cached.len();
        let next = &cached[k - 1] * BigInt::from(k);
        cached.push(next);
    }
    cached[n].clone()
}

/// Binomial coefficient; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= BigInt::from(n - i);
        acc /= BigInt::from(i + 1);
    }
    acc
}

pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int<T: Into<BigInt>>(n: T) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Parses `"p/q"` or `"p"` into a reduced rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational numerator in {s:?}")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational denominator in {s:?}")))?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(BigRational::new(num, den))
}

/// Always `num/den`, even for integers.
pub fn format_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// `num/den`, or just `num` for integers.
pub fn pretty_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

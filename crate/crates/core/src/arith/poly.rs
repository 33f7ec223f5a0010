use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Signed, Zero};

use super::rational::{format_rational, parse_rational, pretty_rational, BigInt, BigRational};
use crate::error::Error;

/// One monomial `coeff * x^xp * y^yp`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub xp: u32,
    pub yp: u32,
    pub coeff: BigRational,
}

/// Sparse polynomial in `x` and `y` with exact rational coefficients.
///
/// Zero coefficients are never stored, so structural equality is polynomial
/// equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BivarPoly {
    terms: BTreeMap<(u32, u32), BigRational>,
}

impl BivarPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: BigRational, xp: u32, yp: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(xp, yp, c);
        p
    }

    pub fn x() -> Self {
        Self::monomial(BigRational::one(), 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(BigRational::one(), 0, 1)
    }

    /// Builds a polynomial from `(xp, yp, coeff)` triples, summing duplicates.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (u32, u32, BigRational)>,
    {
        let mut p = Self::zero();
        for (xp, yp, c) in terms {
            p.add_term(xp, yp, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in storage order (x ascending, then y ascending).
    pub fn iter(&self) -> impl Iterator<Item = (u32, u32, &BigRational)> {
        self.terms.iter().map(|(&(xp, yp), c)| (xp, yp, c))
    }

    pub fn coeff(&self, xp: u32, yp: u32) -> BigRational {
        self.terms
            .get(&(xp, yp))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn add_term(&mut self, xp: u32, yp: u32, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((xp, yp)) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&k, v)| (k, v * c)).collect(),
        }
    }

    pub fn scale_int(&self, c: &BigInt) -> Self {
        self.scale(&BigRational::from_integer(c.clone()))
    }

    /// Multiplies by `c * x^xp * y^yp`.
    pub fn mul_monomial(&self, c: &BigRational, xp: u32, yp: u32) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), v)| ((a + xp, b + yp), v * c))
                .collect(),
        }
    }

    pub fn degree_x(&self) -> Option<u32> {
        self.terms.keys().map(|&(xp, _)| xp).max()
    }

    pub fn degree_y(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, yp)| yp).max()
    }

    /// True when no term carries a positive power of `x`.
    pub fn is_free_of_x(&self) -> bool {
        self.terms.keys().all(|&(xp, _)| xp == 0)
    }

    /// `d/dx`.
    pub fn derivative_x(&self) -> Self {
        self.derivative_x_n(1)
    }

    /// `(d/dx)^n`.
    pub fn derivative_x_n(&self, n: u32) -> Self {
        if n == 0 {
            return self.clone();
        }
        let mut out = Self::zero();
        for (&(xp, yp), c) in &self.terms {
            if xp < n {
                continue;
            }
            let falling: BigInt = ((xp - n + 1)..=xp).map(BigInt::from).product();
            out.add_term(xp - n, yp, c * BigRational::from_integer(falling));
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, x: &BigRational, y: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for (&(xp, yp), c) in &self.terms {
            acc += c * pow_rat(x, xp) * pow_rat(y, yp);
        }
        acc
    }

    /// Substitutes numeric values for `y` only, keeping `x` symbolic.
    pub fn eval_y(&self, y: &BigRational) -> Self {
        let mut out = Self::zero();
        for (&(xp, yp), c) in &self.terms {
            out.add_term(xp, 0, c * pow_rat(y, yp));
        }
        out
    }

    /// Groups terms by the power of `x`; each value is a polynomial in `y` only.
    pub fn by_x_power(&self) -> BTreeMap<u32, BivarPoly> {
        let mut out: BTreeMap<u32, BivarPoly> = BTreeMap::new();
        for (&(xp, yp), c) in &self.terms {
            out.entry(xp).or_default().add_term(0, yp, c.clone());
        }
        out
    }

    /// Terms in canonical order: x-power descending, then y-power ascending.
    pub fn canonical_terms(&self) -> Vec<Term> {
        let mut v: Vec<Term> = self
            .terms
            .iter()
            .map(|(&(xp, yp), c)| Term {
                xp,
                yp,
                coeff: c.clone(),
            })
            .collect();
        v.sort_by(|a, b| b.xp.cmp(&a.xp).then(a.yp.cmp(&b.yp)));
        v
    }

    /// First term (in canonical order) where `self - other` is nonzero.
    pub fn first_difference(&self, other: &BivarPoly) -> Option<Term> {
        (self - other).canonical_terms().into_iter().next()
    }

    /// Human-oriented rendering, e.g. `1/2 x² + y`.
    pub fn pretty(&self) -> String {
        let terms = self.canonical_terms();
        if terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, t) in terms.iter().enumerate() {
            let negative = t.coeff.is_negative();
            let body = pretty_term(&t.coeff.abs(), t.xp, t.yp);
            match (i, negative) {
                (0, false) => out.push_str(&body),
                (0, true) => {
                    out.push('-');
                    out.push_str(&body);
                }
                (_, false) => {
                    out.push_str(" + ");
                    out.push_str(&body);
                }
                (_, true) => {
                    out.push_str(" - ");
                    out.push_str(&body);
                }
            }
        }
        out
    }
}

pub(crate) fn pow_rat(base: &BigRational, e: u32) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..e {
        acc *= base;
    }
    acc
}

pub(crate) fn superscript(n: u32) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    n.to_string()
        .chars()
        .map(|c| DIGITS[c.to_digit(10).unwrap() as usize])
        .collect()
}

pub(crate) fn pretty_monomial(xp: u32, yp: u32) -> String {
    let mut parts = Vec::new();
    for (var, p) in [("x", xp), ("y", yp)] {
        match p {
            0 => {}
            1 => parts.push(var.to_string()),
            _ => parts.push(format!("{var}{}", superscript(p))),
        }
    }
    parts.join(" ")
}

/// `coeff` is assumed non-negative here; signs are handled by the caller.
fn pretty_term(coeff: &BigRational, xp: u32, yp: u32) -> String {
    let mono = pretty_monomial(xp, yp);
    if mono.is_empty() {
        pretty_rational(coeff)
    } else if coeff.is_one() {
        mono
    } else {
        format!("{} {}", pretty_rational(coeff), mono)
    }
}

/// Canonical textual form: `num/den * x^a * y^b` terms joined by ` + `.
impl fmt::Display for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.canonical_terms();
        if terms.is_empty() {
            return write!(f, "0/1 * x^0 * y^0");
        }
        for (i, t) in terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{} * x^{} * y^{}", format_rational(&t.coeff), t.xp, t.yp)?;
        }
        Ok(())
    }
}

/// Parses sums of products such as `x^2 - 3/2*x*y + 2 y`; also accepts the
/// canonical [`Display`](fmt::Display) form.
impl std::str::FromStr for BivarPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = |msg: &str| Error::Parse(format!("{msg} in polynomial {s:?}"));
        let mut chars: Vec<char> = Vec::new();
        let mut gap = false;
        for c in s.chars() {
            if c.is_whitespace() {
                gap = true;
                continue;
            }
            let joins_number = chars
                .last()
                .is_some_and(|p| p.is_ascii_digit() || *p == '/' || *p == '^');
            if gap && joins_number && (c.is_ascii_digit() || c == '/') {
                return Err(bad("adjacent numbers"));
            }
            gap = false;
            chars.push(c);
        }
        if chars.is_empty() {
            return Err(bad("empty input"));
        }
        let digits = |i: &mut usize| {
            let start = *i;
            while *i < chars.len() && chars[*i].is_ascii_digit() {
                *i += 1;
            }
            chars[start..*i].iter().collect::<String>()
        };
        let mut out = BivarPoly::zero();
        let mut i = 0;
        while i < chars.len() {
            let mut negative = false;
            let mut saw_sign = false;
            while i < chars.len() && (chars[i] == '+' || chars[i] == '-') {
                negative ^= chars[i] == '-';
                saw_sign = true;
                i += 1;
            }
            if i > 0 && !saw_sign {
                return Err(bad("missing operator"));
            }
            let (mut coeff, mut xp, mut yp) = (BigRational::one(), 0u32, 0u32);
            let mut factors = 0;
            loop {
                if i < chars.len() && chars[i] == '*' && factors > 0 {
                    i += 1;
                }
                match chars.get(i) {
                    Some(c) if c.is_ascii_digit() => {
                        let mut text = digits(&mut i);
                        if chars.get(i) == Some(&'/') {
                            i += 1;
                            text = format!("{text}/{}", digits(&mut i));
                        }
                        coeff *= parse_rational(&text).map_err(|_| bad("bad number"))?;
                    }
                    Some(&v) if v == 'x' || v == 'y' => {
                        i += 1;
                        let mut e = 1;
                        if chars.get(i) == Some(&'^') {
                            i += 1;
                            e = digits(&mut i).parse().map_err(|_| bad("bad exponent"))?;
                        }
                        if v == 'x' {
                            xp += e
                        } else {
                            yp += e
                        }
                    }
                    _ if factors == 0 => return Err(bad("expected a term")),
                    Some('+') | Some('-') | None => break,
                    Some(c) => return Err(bad(&format!("unexpected {c:?}"))),
                }
                factors += 1;
            }
            out.add_term(xp, yp, if negative { -coeff } else { coeff });
        }
        Ok(out)
    }
}

impl AddAssign<&BivarPoly> for BivarPoly {
    fn add_assign(&mut self, rhs: &BivarPoly) {
        for (&(xp, yp), c) in &rhs.terms {
            self.add_term(xp, yp, c.clone());
        }
    }
}

impl SubAssign<&BivarPoly> for BivarPoly {
    fn sub_assign(&mut self, rhs: &BivarPoly) {
        for (&(xp, yp), c) in &rhs.terms {
            self.add_term(xp, yp, -c.clone());
        }
    }
}

impl Add for &BivarPoly {
    type Output = BivarPoly;
    fn add(self, rhs: &BivarPoly) -> BivarPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for BivarPoly {
    type Output = BivarPoly;
    fn add(mut self, rhs: BivarPoly) -> BivarPoly {
        self += &rhs;
        self
    }
}

impl Sub for &BivarPoly {
    type Output = BivarPoly;
    fn sub(self, rhs: &BivarPoly) -> BivarPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for BivarPoly {
    type Output = BivarPoly;
    fn sub(mut self, rhs: BivarPoly) -> BivarPoly {
        self -= &rhs;
        self
    }
}

impl Neg for &BivarPoly {
    type Output = BivarPoly;
    fn neg(self) -> BivarPoly {
        BivarPoly {
            terms: self.terms.iter().map(|(&k, v)| (k, -v.clone())).collect(),
        }
    }
}

impl Neg for BivarPoly {
    type Output = BivarPoly;
    fn neg(self) -> BivarPoly {
        -&self
    }
}

impl Mul for &BivarPoly {
    type Output = BivarPoly;
    fn mul(self, rhs: &BivarPoly) -> BivarPoly {
        let mut out = BivarPoly::zero();
        for (&(a, b), c) in &self.terms {
            for (&(d, e), g) in &rhs.terms {
                out.add_term(a + d, b + e, c * g);
            }
        }
        out
    }
}

impl Mul for BivarPoly {
    type Output = BivarPoly;
    fn mul(self, rhs: BivarPoly) -> BivarPoly {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    #[test]
    fn zero_coefficients_are_dropped() {
        let mut p = BivarPoly::x();
        p.add_term(1, 0, int(-1));
        assert!(p.is_zero());
        assert_eq!(BivarPoly::monomial(int(0), 3, 2), BivarPoly::zero());
    }

    #[test]
    fn difference_of_squares() {
        let a = &BivarPoly::x() + &BivarPoly::y();
        let b = &BivarPoly::x() - &BivarPoly::y();
        let expected = &BivarPoly::x().pow(2) - &BivarPoly::y().pow(2);
        assert_eq!(&a * &b, expected);
    }

    #[test]
    fn derivative_of_power() {
        let p = BivarPoly::monomial(int(2), 5, 1);
        assert_eq!(p.derivative_x(), BivarPoly::monomial(int(10), 4, 1));
        assert_eq!(p.derivative_x_n(5), BivarPoly::monomial(int(240), 0, 1));
        assert!(p.derivative_x_n(6).is_zero());
    }

    #[test]
    fn eval_and_eval_y() {
        // 3x^2 y - 1/2
        let p = BivarPoly::from_terms([(2, 1, int(3)), (0, 0, rat(-1, 2))]);
        assert_eq!(p.eval(&int(2), &rat(1, 3)), rat(7, 2));
        assert_eq!(
            p.eval_y(&int(2)),
            BivarPoly::from_terms([(2, 0, int(6)), (0, 0, rat(-1, 2))])
        );
    }

    #[test]
    fn canonical_order_and_rendering() {
        let p = BivarPoly::from_terms([(0, 1, int(1)), (2, 0, rat(1, 2)), (1, 1, int(-6))]);
        let order: Vec<_> = p.canonical_terms().iter().map(|t| (t.xp, t.yp)).collect();
        assert_eq!(order, vec![(2, 0), (1, 1), (0, 1)]);
        assert_eq!(p.pretty(), "1/2 x² - 6 x y + y");
        assert_eq!(
            p.to_string(),
            "1/2 * x^2 * y^0 + -6/1 * x^1 * y^1 + 1/1 * x^0 * y^1"
        );
        assert_eq!(BivarPoly::zero().pretty(), "0");
        assert_eq!((-BivarPoly::one()).pretty(), "-1");
    }

    #[test]
    fn first_difference_points_at_leading_term() {
        let a = BivarPoly::from_terms([(3, 0, int(1)), (1, 1, int(6))]);
        let b = BivarPoly::from_terms([(3, 0, int(1)), (1, 1, int(5))]);
        let d = a.first_difference(&b).unwrap();
        assert_eq!((d.xp, d.yp, d.coeff), (1, 1, int(1)));
        assert!(a.first_difference(&a).is_none());
    }

    #[test]
    fn parsing() {
        let p: BivarPoly = "x^2 - 3/2*x*y + 2 y".parse().unwrap();
        assert_eq!(
            p,
            BivarPoly::from_terms([(2, 0, int(1)), (1, 1, rat(-3, 2)), (0, 1, int(2))])
        );
        let q = BivarPoly::from_terms([(2, 0, rat(1, 2)), (1, 1, int(-6)), (0, 1, int(1))]);
        assert_eq!(q.to_string().parse::<BivarPoly>().unwrap(), q);
        assert_eq!("-x + x".parse::<BivarPoly>().unwrap(), BivarPoly::zero());
        assert_eq!(
            "2*y".parse::<BivarPoly>().unwrap(),
            BivarPoly::monomial(int(2), 0, 1)
        );
        for bad in ["", "x y z", "1/0", "x^", "3 +", "x 2^3", "2 3", "2  /3"] {
            assert!(bad.parse::<BivarPoly>().is_err(), "{bad:?}");
        }
    }
}

//! Exact arithmetic in real quadratic fields `Q(√d)`.
//!
//! A [`Surd`] is `a + b√d` with rational `a`, `b` and squarefree `d ≥ 1`.
//! The representation is canonical: `b = 0` forces `d = 1`, and `d = 1`
//! folds `b` into `a`. Two surds are equal as reals iff they are equal as
//! values of this type. Values from different fields can be compared
//! exactly but only combined arithmetically when one side is rational.

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = Ratio<i128>;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Surd {
    a: Rational,
    b: Rational,
    d: u64,
}

/// Writes `m = s² · d` with `d` squarefree and returns `(s, d)`.
pub fn squarefree_decompose(mut m: u64) -> (u64, u64) {
    if m == 0 {
        return (0, 0);
    }
    let mut s = 1u64;
    let mut d = 1u64;
    let mut p = 2u64;
    while p * p <= m {
        let mut e = 0;
        while m.is_multiple_of(p) {
            m /= p;
            e += 1;
        }
        s *= p.pow(e / 2);
        if e % 2 == 1 {
            d *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    (s, d * m)
}

fn sign(r: &Rational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// Sign of `p + q√d` for squarefree `d ≥ 1`.
fn sign_of(p: Rational, q: Rational, d: u64) -> i32 {
    let (sp, sq) = (sign(&p), sign(&q));
    if sq == 0 {
        return sp;
    }
    if sp == 0 || sp == sq {
        return sq;
    }
    match (p * p).cmp(&(q * q * Rational::from_integer(d as i128))) {
        Ordering::Greater => sp,
        Ordering::Less => sq,
        Ordering::Equal => 0,
    }
}

impl Surd {
    pub fn new(a: Rational, b: Rational, d: u64) -> Result<Self> {
        if d == 0 {
            return Ok(Surd::rational(a));
        }
        let (s, d) = squarefree_decompose(d);
        let b = b * Rational::from_integer(s as i128);
        Ok(Self::canonical(a, b, d))
    }

    fn canonical(a: Rational, b: Rational, d: u64) -> Self {
        if b.is_zero() {
            Surd {
                a,
                b: Rational::zero(),
                d: 1,
            }
        } else if d == 1 {
            Surd {
                a: a + b,
                b: Rational::zero(),
                d: 1,
            }
        } else {
            Surd { a, b, d }
        }
    }

    pub fn rational(a: Rational) -> Self {
        Surd {
            a,
            b: Rational::zero(),
            d: 1,
        }
    }

    pub fn integer(a: i128) -> Self {
        Surd::rational(Rational::from_integer(a))
    }

    /// `√m` for a non-negative integer `m`.
    pub fn sqrt(m: u64) -> Self {
        let (s, d) = squarefree_decompose(m);
        Surd::canonical(Rational::zero(), Rational::from_integer(s as i128), d.max(1))
    }

    pub fn rational_part(&self) -> Rational {
        self.a
    }

    pub fn irrational_coefficient(&self) -> Rational {
        self.b
    }

    /// Squarefree radicand; `1` for rationals.
    pub fn radicand(&self) -> u64 {
        self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<Rational> {
        self.is_rational().then_some(self.a)
    }

    pub fn is_integer(&self) -> bool {
        self.is_rational() && self.a.is_integer()
    }

    pub fn to_f64(&self) -> f64 {
        let f = |r: &Rational| *r.numer() as f64 / *r.denom() as f64;
        f(&self.a) + f(&self.b) * (self.d as f64).sqrt()
    }

    pub fn signum(&self) -> i32 {
        sign_of(self.a, self.b, self.d)
    }

    pub fn conjugate(&self) -> Self {
        Surd { b: -self.b, ..*self }
    }

    /// Field of the result when combining `self` with `other`.
    fn common_field(&self, other: &Surd) -> Option<u64> {
        match (self.d, other.d) {
            (1, d) | (d, 1) => Some(d),
            (d, e) if d == e => Some(d),
            _ => None,
        }
    }

    pub fn checked_add(&self, other: &Surd) -> Option<Surd> {
        let d = self.common_field(other)?;
        Some(Surd::canonical(self.a + other.a, self.b + other.b, d))
    }

    pub fn checked_sub(&self, other: &Surd) -> Option<Surd> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &Surd) -> Option<Surd> {
        let d = self.common_field(other)?;
        let dd = Rational::from_integer(d as i128);
        Some(Surd::canonical(
            self.a * other.a + self.b * other.b * dd,
            self.a * other.b + self.b * other.a,
            d,
        ))
    }

    pub fn recip(&self) -> Option<Surd> {
        // (a - b√d) / (a² - b²d)
        let norm = self.a * self.a - self.b * self.b * Rational::from_integer(self.d as i128);
        if norm.is_zero() {
            return None;
        }
        Some(Surd::canonical(self.a / norm, -self.b / norm, self.d))
    }

    pub fn checked_div(&self, other: &Surd) -> Option<Surd> {
        self.checked_mul(&other.recip()?)
    }

    pub fn neg(&self) -> Surd {
        Surd::canonical(-self.a, -self.b, self.d)
    }

    pub fn add_rational(&self, r: Rational) -> Surd {
        Surd { a: self.a + r, ..*self }
    }

    pub fn mul_rational(&self, r: Rational) -> Surd {
        Surd::canonical(self.a * r, self.b * r, self.d)
    }

    /// Exact machine form: `p/q` for rationals, `a+b*sqrt(d)` otherwise.
    pub fn to_exact_string(&self) -> String {
        if self.is_rational() {
            return fmt_rational(&self.a);
        }
        let sign = if self.b.is_negative() { '-' } else { '+' };
        format!(
            "{}{}{}*sqrt({})",
            fmt_rational(&self.a),
            sign,
            fmt_rational(&self.b.abs()),
            self.d
        )
    }

    /// Parses the output of [`Surd::to_exact_string`].
    pub fn parse_exact(s: &str) -> Result<Surd> {
        let s = s.trim();
        let bad = || Error::parse(0, format!("not an exact value: {s:?}"));
        if let Some(body) = s.strip_suffix(')') {
            let (lhs, d) = body.rsplit_once("*sqrt(").ok_or_else(bad)?;
            let d: u64 = d.parse().map_err(|_| bad())?;
            // split at the sign between the rational part and the coefficient
            let bytes = lhs.as_bytes();
            let split = (1..bytes.len())
                .find(|&i| matches!(bytes[i], b'+' | b'-') && bytes[i - 1].is_ascii_digit())
                .ok_or_else(bad)?;
            let a = parse_rational(&lhs[..split]).ok_or_else(bad)?;
            let b = parse_rational(&lhs[split..]).ok_or_else(bad)?;
            Surd::new(a, b, d)
        } else {
            parse_rational(s).map(Surd::rational).ok_or_else(bad)
        }
    }

    /// Human form used in spectrum listings: `5`, `-1`, `sqrt5`,
    /// `-sqrt5`, `1+2sqrt5`, `(-1+sqrt13)/2`, `sqrt5/12`, `3/4`.
    pub fn to_pretty_string(&self) -> String {
        if self.is_rational() {
            return fmt_rational(&self.a);
        }
        let den = self.a.denom().lcm(self.b.denom());
        let p = (self.a * Rational::from_integer(den)).to_integer();
        let q = (self.b * Rational::from_integer(den)).to_integer();
        let coeff = match q {
            1 => String::new(),
            -1 => "-".to_string(),
            q => q.to_string(),
        };
        let root = format!("{coeff}sqrt{}", self.d);
        let num = if p == 0 {
            root
        } else if q > 0 {
            format!("{p}+{root}")
        } else {
            format!("{p}{root}")
        };
        if den == 1 {
            num
        } else if p == 0 {
            format!("{num}/{den}")
        } else {
            format!("({num})/{den}")
        }
    }
}

impl Ord for Surd {
    fn cmp(&self, other: &Surd) -> Ordering {
        let p = self.a - other.a;
        let s = match self.common_field(other) {
            Some(d) => sign_of(p, self.b - other.b, d),
            None => {
                // sign of u + v with u = p + b1√d1, v = -b2√d2
                let su = sign_of(p, self.b, self.d);
                let r = -other.b;
                let sv = sign(&r);
                if su == 0 {
                    sv
                } else if su == sv {
                    su
                } else {
                    // |u|² - |v|² = p² + b1²d1 - r²d2 + 2 p b1 √d1
                    let d1 = Rational::from_integer(self.d as i128);
                    let d2 = Rational::from_integer(other.d as i128);
                    let w = sign_of(
                        p * p + self.b * self.b * d1 - r * r * d2,
                        Rational::from_integer(2) * p * self.b,
                        self.d,
                    );
                    match w {
                        1 => su,
                        -1 => sv,
                        _ => 0,
                    }
                }
            }
        };
        s.cmp(&0)
    }
}

impl PartialOrd for Surd {
    fn partial_cmp(&self, other: &Surd) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_exact_string())
    }
}

impl From<i128> for Surd {
    fn from(v: i128) -> Self {
        Surd::integer(v)
    }
}

impl From<Rational> for Surd {
    fn from(v: Rational) -> Self {
        Surd::rational(v)
    }
}

pub fn fmt_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let s = s.strip_prefix('+').unwrap_or(s);
    match s.split_once('/') {
        Some((p, q)) => {
            let p: i128 = p.parse().ok()?;
            let q: i128 = q.parse().ok()?;
            (q != 0).then(|| Rational::new(p, q))
        }
        None => s.parse().ok().map(Rational::from_integer),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(p: i128, q: i128) -> Rational {
        Rational::new(p, q)
    }

    #[test]
    fn squarefree() {
        assert_eq!(squarefree_decompose(12), (2, 3));
        assert_eq!(squarefree_decompose(729), (27, 1));
        assert_eq!(squarefree_decompose(13), (1, 13));
        assert_eq!(squarefree_decompose(1), (1, 1));
    }

    #[test]
    fn sqrt_canonicalises() {
        assert_eq!(Surd::sqrt(16), Surd::integer(4));
        assert_eq!(Surd::sqrt(20), Surd::new(r(0, 1), r(2, 1), 5).unwrap());
        assert_eq!(Surd::new(r(1, 1), r(3, 1), 1).unwrap(), Surd::integer(4));
    }

    #[test]
    fn golden_ratio_identity() {
        let phi = Surd::new(r(1, 2), r(1, 2), 5).unwrap();
        let lhs = phi.checked_mul(&phi).unwrap();
        let rhs = phi.add_rational(r(1, 1));
        assert_eq!(lhs, rhs);
        assert_eq!(phi.checked_mul(&phi.recip().unwrap()).unwrap(), Surd::integer(1));
    }

    #[test]
    fn ordering_within_and_across_fields() {
        let s5 = Surd::sqrt(5);
        let s3 = Surd::sqrt(3);
        assert!(s5 > s3);
        assert!(s5 > Surd::integer(2));
        assert!(s5 < Surd::integer(3));
        assert!(s5.neg() < Surd::integer(-2));
        // 1 + √2 ≈ 2.414 vs √6 ≈ 2.449
        let a = Surd::new(r(1, 1), r(1, 1), 2).unwrap();
        assert!(a < Surd::sqrt(6));
        // √2 + √3 -type comparison: 3 - √2 ≈ 1.586 vs √3 - ... use √3 ≈ 1.732
        let b = Surd::new(r(3, 1), r(-1, 1), 2).unwrap();
        assert!(b < s3);
        assert_eq!(s5.cmp(&s5), Ordering::Equal);
    }

    #[test]
    fn mixed_fields_refuse_arithmetic() {
        assert!(Surd::sqrt(2).checked_add(&Surd::sqrt(3)).is_none());
        assert!(Surd::sqrt(2).checked_add(&Surd::integer(3)).is_some());
    }

    #[test]
    fn string_forms() {
        let v = Surd::new(r(1, 12), r(1, 12), 5).unwrap();
        assert_eq!(v.to_exact_string(), "1/12+1/12*sqrt(5)");
        assert_eq!(v.to_pretty_string(), "(1+sqrt5)/12");
        assert_eq!(Surd::sqrt(5).to_pretty_string(), "sqrt5");
        assert_eq!(Surd::sqrt(5).neg().to_pretty_string(), "-sqrt5");
        let w = Surd::new(r(-1, 2), r(-1, 2), 13).unwrap();
        assert_eq!(w.to_exact_string(), "-1/2-1/2*sqrt(13)");
        assert_eq!(w.to_pretty_string(), "(-1-sqrt13)/2");
        assert_eq!(Surd::new(r(1, 1), r(2, 1), 5).unwrap().to_pretty_string(), "1+2sqrt5");
        assert_eq!(
            Surd::new(r(0, 1), r(-1, 12), 5).unwrap().to_pretty_string(),
            "-sqrt5/12"
        );
        assert_eq!(Surd::integer(-3).to_exact_string(), "-3");
        assert_eq!(Surd::rational(r(7, 69)).to_exact_string(), "7/69");
        for s in [
            "1/12+1/12*sqrt(5)",
            "-1/2-1/2*sqrt(13)",
            "0+1*sqrt(5)",
            "-3",
            "7/69",
            "-5/2+-1/3*sqrt(7)",
        ] {
            let v = Surd::parse_exact(s).unwrap();
            assert_eq!(Surd::parse_exact(&v.to_exact_string()).unwrap(), v);
        }
        assert!(Surd::parse_exact("abc").is_err());
        assert!(Surd::parse_exact("1/0").is_err());
    }

    proptest! {
        #[test]
        fn order_agrees_with_floats(a in -50i128..50, b in -50i128..50, c in -50i128..50, e in -50i128..50,
                                     d1 in prop::sample::select(vec![2u64, 3, 5, 6, 7]),
                                     d2 in prop::sample::select(vec![2u64, 3, 5, 6, 7])) {
            let x = Surd::new(r(a, 3), r(b, 2), d1).unwrap();
            let y = Surd::new(r(c, 3), r(e, 2), d2).unwrap();
            let diff = x.to_f64() - y.to_f64();
            if diff.abs() > 1e-9 {
                prop_assert_eq!(x.cmp(&y), diff.partial_cmp(&0.0).unwrap());
            }
        }

        #[test]
        fn exact_string_round_trip(a in -1000i128..1000, q in 1i128..50, b in -1000i128..1000,
                                   d in prop::sample::select(vec![1u64, 2, 5, 13, 30])) {
            let v = Surd::new(r(a, q), r(b, q), d).unwrap();
            prop_assert_eq!(Surd::parse_exact(&v.to_exact_string()).unwrap(), v);
        }
    }
}

//! Exact arithmetic for dilatations λ = (T + √(T²−4))/2 and for the
//! quadratic field elements `(a + b√d)/c` that appear in measures.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

pub const DEFAULT_DIGITS: u32 = 12;

/// The larger root of `x² − T x + 1`, kept as its trace `T ≥ 3`.
#[derive(Debug, Clone)]
pub struct QuadraticValue {
    t: BigUint,
    digits: u32,
}

impl PartialEq for QuadraticValue {
    fn eq(&self, other: &Self) -> bool {
        self.t == other.t
    }
}

impl Eq for QuadraticValue {}

impl PartialOrd for QuadraticValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// λ is increasing in `T`, so values compare by trace.
impl Ord for QuadraticValue {
    fn cmp(&self, other: &Self) -> Ordering {
        self.t.cmp(&other.t)
    }
}

impl QuadraticValue {
    pub(crate) fn from_trace_unchecked(t: BigUint) -> Self {
        QuadraticValue { t, digits: DEFAULT_DIGITS }
    }

    /// Same value, rendered with `digits` decimals.
    pub fn with_digits(mut self, digits: u32) -> Self {
        self.digits = digits;
        self
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn trace(&self) -> &BigUint {
        &self.t
    }

    pub fn discriminant(&self) -> BigUint {
        &self.t * &self.t - 4u32
    }

    pub fn form() -> &'static str {
        "(T+sqrt(T^2-4))/2"
    }

    /// `F+sqrt(F^2-1)` for even traces, `(T+sqrt(T^2-4))/2` otherwise.
    pub fn closed_form(&self) -> String {
        if self.t.is_even() {
            let h = &self.t >> 1u32;
            let r = &h * &h - 1u32;
            format!("{h}+sqrt({r})")
        } else {
            format!("({}+sqrt({}))/2", self.t, self.discriminant())
        }
    }

    /// `⌊λ · 10^n⌋`.
    pub fn floor_scaled(&self, n: u32) -> BigUint {
        let scale = BigUint::from(10u32).pow(n);
        let root = (self.discriminant() * &scale * &scale).sqrt();
        (&self.t * &scale + root) >> 1u32
    }

    /// Decimal expansion rounded to `n` places. λ is irrational, so no
    /// rounding ties arise.
    pub fn render(&self, n: u32) -> String {
        let q = self.floor_scaled(n + 1);
        let rounded = (q + 5u32) / 10u32;
        place_point(&rounded.to_string(), n)
    }

    pub fn rendered(&self) -> String {
        self.render(self.digits)
    }

    /// Correctly rounded `f64`.
    pub fn to_f64(&self) -> f64 {
        let int_digits = self.t.to_string().len() as u32;
        let n = 20u32.saturating_sub(int_digits).max(1);
        self.render(n).parse().expect("rendered decimal parses")
    }

    /// Exact comparison of λ with an integer, by the sign of `n² − T n + 1`.
    pub fn cmp_integer(&self, n: &BigUint) -> Ordering {
        if n.is_zero() {
            return Ordering::Greater;
        }
        let p = BigInt::from(n * n + 1u32) - BigInt::from(&self.t * n);
        if p.is_negative() {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }

    pub fn as_surd(&self) -> Surd {
        Surd::new(BigInt::from(self.t.clone()), BigInt::one(), BigInt::from(2), self.discriminant())
    }
}

fn place_point(digits: &str, n: u32) -> String {
    let n = n as usize;
    if n == 0 {
        return digits.to_string();
    }
    let padded = format!("{digits:0>width$}", width = n + 1);
    let (int, frac) = padded.split_at(padded.len() - n);
    format!("{int}.{frac}")
}

impl fmt::Display for QuadraticValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ~ {}", self.closed_form(), self.rendered())
    }
}

impl Serialize for QuadraticValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("QuadraticValue", 3)?;
        st.serialize_field("T", &crate::ser::RawNumber(self.t.to_string()))?;
        st.serialize_field("form", Self::form())?;
        st.serialize_field("float", &crate::ser::RawNumber(self.rendered()))?;
        st.end()
    }
}

/// `(a + b√d) / c` with `c > 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Surd {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigUint,
}

impl Surd {
    pub fn new(a: BigInt, b: BigInt, c: BigInt, d: BigUint) -> Self {
        assert!(!c.is_zero(), "zero denominator");
        let (a, b, c) = if c.is_negative() { (-a, -b, -c) } else { (a, b, c) };
        let g = a.gcd(&b).gcd(&c);
        let g = if g.is_zero() { BigInt::one() } else { g };
        Surd { a: a / &g, b: b / &g, c: c / &g, d }
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Surd::new(n.into(), BigInt::zero(), BigInt::one(), BigUint::zero())
    }

    pub fn parts(&self) -> (&BigInt, &BigInt, &BigInt, &BigUint) {
        (&self.a, &self.b, &self.c, &self.d)
    }

    fn radicand(&self, other: &Self) -> BigUint {
        match (self.b.is_zero(), other.b.is_zero()) {
            (true, _) => other.d.clone(),
            (_, true) => self.d.clone(),
            _ => {
                assert_eq!(self.d, other.d, "surds over different fields");
                self.d.clone()
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let d = self.radicand(o);
        Surd::new(&self.a * &o.c + &o.a * &self.c, &self.b * &o.c + &o.b * &self.c, &self.c * &o.c, d)
    }

    pub fn neg(&self) -> Self {
        Surd { a: -&self.a, b: -&self.b, c: self.c.clone(), d: self.d.clone() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let d = self.radicand(o);
        let dd = BigInt::from(d.clone());
        Surd::new(&self.a * &o.a + &self.b * &o.b * dd, &self.a * &o.b + &self.b * &o.a, &self.c * &o.c, d)
    }

    pub fn is_zero(&self) -> bool {
        self.signum() == Ordering::Equal
    }

    /// Exact sign of the value.
    pub fn signum(&self) -> Ordering {
        let sa = self.a.sign();
        let sb = if self.d.is_zero() { Sign::NoSign } else { self.b.sign() };
        match (sa, sb) {
            (Sign::NoSign, Sign::NoSign) => Ordering::Equal,
            (Sign::Plus, Sign::Plus | Sign::NoSign) | (Sign::NoSign, Sign::Plus) => Ordering::Greater,
            (Sign::Minus, Sign::Minus | Sign::NoSign) | (Sign::NoSign, Sign::Minus) => Ordering::Less,
            _ => {
                let a2 = &self.a * &self.a;
                let b2d = &self.b * &self.b * BigInt::from(self.d.clone());
                let rational_wins = a2.cmp(&b2d);
                match (rational_wins, sa) {
                    (Ordering::Equal, _) => Ordering::Equal,
                    (Ordering::Greater, s) => sign_ord(s),
                    (Ordering::Less, _) => sign_ord(sb),
                }
            }
        }
    }

    pub fn cmp_exact(&self, o: &Self) -> Ordering {
        self.sub(o).signum()
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        let c = self.c.to_f64().unwrap_or(f64::NAN);
        let d = self.d.to_f64().unwrap_or(f64::NAN);
        if self.b.is_zero() {
            a / c
        } else {
            (a + b * d.sqrt()) / c
        }
    }
}

fn sign_ord(s: Sign) -> Ordering {
    match s {
        Sign::Plus => Ordering::Greater,
        Sign::Minus => Ordering::Less,
        Sign::NoSign => Ordering::Equal,
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rational = self.b.is_zero() || self.d.is_zero();
        let num = if rational {
            self.a.to_string()
        } else {
            let root = if self.b.is_one() {
                format!("sqrt({})", self.d)
            } else if (-&self.b).is_one() {
                format!("-sqrt({})", self.d)
            } else {
                format!("{}*sqrt({})", self.b, self.d)
            };
            if self.a.is_zero() {
                root
            } else if root.starts_with('-') {
                format!("{}{}", self.a, root)
            } else {
                format!("{}+{}", self.a, root)
            }
        };
        if self.c.is_one() {
            f.write_str(&num)
        } else if rational {
            write!(f, "{num}/{}", self.c)
        } else {
            write!(f, "({num})/{}", self.c)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(t: u32) -> QuadraticValue {
        QuadraticValue::from_trace_unchecked(BigUint::from(t))
    }

    #[test]
    fn rendering() {
        assert_eq!(q(3).render(12), "2.618033988750");
        assert_eq!(q(3).render(10), "2.6180339887");
        assert_eq!(q(3).render(0), "3");
        assert_eq!(q(7).render(10), "6.8541019662");
        assert_eq!(q(10).render(6), "9.898979");
        assert_eq!(q(10).closed_form(), "5+sqrt(24)");
        assert_eq!(q(3).closed_form(), "(3+sqrt(5))/2");
    }

    #[test]
    fn float_is_correctly_rounded() {
        for t in 3..300u32 {
            let exact = (t as f64 + ((t * t - 4) as f64).sqrt()) / 2.0;
            let ours = q(t).to_f64();
            assert!((ours - exact).abs() <= exact * 1e-15, "{t}");
        }
    }

    #[test]
    fn integer_comparison() {
        let l = q(10);
        assert_eq!(l.cmp_integer(&BigUint::from(9u8)), Ordering::Greater);
        assert_eq!(l.cmp_integer(&BigUint::from(10u8)), Ordering::Less);
        assert_eq!(l.cmp_integer(&BigUint::from(1u8)), Ordering::Greater);
        assert_eq!(l.cmp_integer(&BigUint::zero()), Ordering::Greater);
    }

    #[test]
    fn minimal_polynomial_holds_exactly() {
        for t in 3..200u32 {
            let l = q(t).as_surd();
            let tt = Surd::from_int(t);
            let p = l.mul(&l).sub(&tt.mul(&l)).add(&Surd::from_int(1));
            assert!(p.is_zero(), "{t}");
            let d = q(t).discriminant();
            assert_ne!(d.sqrt().pow(2), d);
        }
    }

    #[test]
    fn surd_sign_and_display() {
        let five = BigUint::from(5u8);
        let phi = Surd::new(BigInt::from(1), BigInt::from(1), BigInt::from(2), five.clone());
        assert_eq!(phi.to_string(), "(1+sqrt(5))/2");
        assert_eq!(phi.cmp_exact(&Surd::from_int(1)), Ordering::Greater);
        assert_eq!(phi.cmp_exact(&Surd::from_int(2)), Ordering::Less);
        let neg = Surd::new(BigInt::from(2), BigInt::from(-1), BigInt::from(1), five);
        assert_eq!(neg.signum(), Ordering::Less);
        assert_eq!(neg.to_string(), "2-sqrt(5)");
        assert_eq!(Surd::from_int(-3).to_string(), "-3");
    }
}

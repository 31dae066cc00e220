//! Reduced Burau representation of B₃, used as an equality oracle.
//!
//! Convention: σ₁ ↦ [[−t, 1], [0, 1]], σ₂ ↦ [[1, 0], [t, −t]], and a word
//! maps to the left-to-right product of its letters. The representation is
//! faithful on B₃, so two words are equal exactly when their images are.
//!
//! Images are first computed with `i64` coefficients and recomputed with
//! big integers if any coefficient overflows.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::BraidWord;

/// Laurent polynomial in `t`, stored as sorted `(exponent, coefficient)`
/// pairs without zero coefficients.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: Vec<(i64, BigInt)>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(BigInt::one(), 0)
    }

    pub fn monomial(coefficient: BigInt, exponent: i64) -> Self {
        if coefficient.is_zero() {
            return Self::zero();
        }
        LaurentPoly { terms: vec![(exponent, coefficient)] }
    }

    fn from_map(map: BTreeMap<i64, BigInt>) -> Self {
        LaurentPoly { terms: map.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn terms(&self) -> &[(i64, BigInt)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Some((c, e))` when the polynomial is the single term `c·t^e`.
    pub fn as_monomial(&self) -> Option<(&BigInt, i64)> {
        match self.terms.as_slice() {
            [(e, c)] => Some((c, *e)),
            _ => None,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut map: BTreeMap<i64, BigInt> = self.terms.iter().cloned().collect();
        for (e, c) in &other.terms {
            *map.entry(*e).or_default() += c;
        }
        Self::from_map(map)
    }

    pub fn neg(&self) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut map: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                *map.entry(e1 + e2).or_default() += c1 * c2;
            }
        }
        Self::from_map(map)
    }

    /// Value at an integer point; negative exponents need `t = ±1`.
    pub fn eval_unit(&self, t: i8) -> BigInt {
        assert!(t == 1 || t == -1);
        self.terms.iter().map(|(e, c)| if t == -1 && e.rem_euclid(2) == 1 { -c } else { c.clone() }).sum()
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if idx == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let mag = c.abs();
            let unit = mag.is_one();
            match (*e, unit) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => f.write_str("t")?,
                (1, false) => write!(f, "{mag}t")?,
                (e, true) => write!(f, "t^{e}")?,
                (e, false) => write!(f, "{mag}t^{e}")?,
            }
        }
        Ok(())
    }
}

/// 2×2 matrix of Laurent polynomials, row-major `[m11, m12, m21, m22]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BurauMatrix {
    pub entries: [LaurentPoly; 4],
}

impl BurauMatrix {
    pub fn identity() -> Self {
        BurauMatrix { entries: [LaurentPoly::one(), LaurentPoly::zero(), LaurentPoly::zero(), LaurentPoly::one()] }
    }

    pub fn scalar_monomial(coefficient: BigInt, exponent: i64) -> Self {
        let d = LaurentPoly::monomial(coefficient, exponent);
        BurauMatrix { entries: [d.clone(), LaurentPoly::zero(), LaurentPoly::zero(), d] }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let [a, b, c, d] = &self.entries;
        let [e, f, g, h] = &o.entries;
        BurauMatrix { entries: [a.mul(e).add(&b.mul(g)), a.mul(f).add(&b.mul(h)), c.mul(e).add(&d.mul(g)), c.mul(f).add(&d.mul(h))] }
    }

    pub fn determinant(&self) -> LaurentPoly {
        let [a, b, c, d] = &self.entries;
        a.mul(d).sub(&b.mul(c))
    }

    pub fn trace(&self) -> LaurentPoly {
        self.entries[0].add(&self.entries[3])
    }
}

impl fmt::Display for BurauMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = &self.entries;
        write!(f, "[[{a}, {b}], [{c}, {d}]]")
    }
}

trait Coef: Clone + PartialEq {
    fn c_zero() -> Self;
    fn c_is_zero(&self) -> bool;
    fn checked_add(&self, o: &Self) -> Option<Self>;
    fn checked_neg(&self) -> Option<Self>;
    fn into_big(self) -> BigInt;
}

impl Coef for i64 {
    fn c_zero() -> Self {
        0
    }
    fn c_is_zero(&self) -> bool {
        *self == 0
    }
    fn checked_add(&self, o: &Self) -> Option<Self> {
        i64::checked_add(*self, *o)
    }
    fn checked_neg(&self) -> Option<Self> {
        i64::checked_neg(*self)
    }
    fn into_big(self) -> BigInt {
        BigInt::from(self)
    }
}

impl Coef for BigInt {
    fn c_zero() -> Self {
        Zero::zero()
    }
    fn c_is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn checked_add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn checked_neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn into_big(self) -> BigInt {
        self
    }
}

/// Dense working polynomial: `c[k]` is the coefficient of `t^(lo + k)`.
#[derive(Debug, Clone, PartialEq)]
struct Dense<C> {
    lo: i64,
    c: Vec<C>,
}

impl<C: Coef> Dense<C> {
    fn constant(v: C) -> Self {
        let mut d = Dense { lo: 0, c: vec![v] };
        d.trim();
        d
    }

    fn trim(&mut self) {
        while self.c.last().is_some_and(Coef::c_is_zero) {
            self.c.pop();
        }
        let lead = self.c.iter().take_while(|v| v.c_is_zero()).count();
        if lead > 0 {
            self.c.drain(..lead);
            self.lo += lead as i64;
        }
        if self.c.is_empty() {
            self.lo = 0;
        }
    }

    fn negate(&mut self) -> Option<()> {
        for v in &mut self.c {
            *v = v.checked_neg()?;
        }
        Some(())
    }

    fn shift(&mut self, k: i64) {
        if !self.c.is_empty() {
            self.lo += k;
        }
    }

    fn add_assign(&mut self, o: &Self) -> Option<()> {
        if o.c.is_empty() {
            return Some(());
        }
        if self.c.is_empty() {
            *self = o.clone();
            return Some(());
        }
        let lo = self.lo.min(o.lo);
        let hi = (self.lo + self.c.len() as i64).max(o.lo + o.c.len() as i64);
        if self.lo > lo {
            let pad = (self.lo - lo) as usize;
            self.c.splice(0..0, std::iter::repeat_n(C::c_zero(), pad));
            self.lo = lo;
        }
        self.c.resize((hi - lo) as usize, C::c_zero());
        let off = (o.lo - self.lo) as usize;
        for (i, v) in o.c.iter().enumerate() {
            self.c[off + i] = self.c[off + i].checked_add(v)?;
        }
        self.trim();
        Some(())
    }

    fn into_poly(self) -> LaurentPoly {
        let lo = self.lo;
        LaurentPoly {
            terms: self.c.into_iter().enumerate().filter(|(_, v)| !v.c_is_zero()).map(|(k, v)| (lo + k as i64, v.into_big())).collect(),
        }
    }
}

/// Multiplies the row `(a, b)` on the right by the image of one letter.
fn apply_letter<C: Coef>(a: &mut Dense<C>, b: &mut Dense<C>, letter: i8) -> Option<()> {
    match letter {
        // (a, b) -> (-t a, a + b)
        1 => {
            b.add_assign(a)?;
            a.negate()?;
            a.shift(1);
        }
        // (a, b) -> (-t⁻¹ a, t⁻¹ a + b)
        -1 => {
            a.shift(-1);
            b.add_assign(a)?;
            a.negate()?;
        }
        // (a, b) -> (a + t b, -t b)
        2 => {
            b.shift(1);
            a.add_assign(b)?;
            b.negate()?;
        }
        // (a, b) -> (a + b, -t⁻¹ b)
        -2 => {
            a.add_assign(b)?;
            b.shift(-1);
            b.negate()?;
        }
        _ => unreachable!("braid letters are ±1 or ±2"),
    }
    Some(())
}

fn image_with<C: Coef>(letters: &[i8], one: C) -> Option<[Dense<C>; 4]> {
    let mut m11 = Dense::constant(one.clone());
    let mut m12 = Dense::constant(C::c_zero());
    let mut m21 = Dense::constant(C::c_zero());
    let mut m22 = Dense::constant(one);
    for &l in letters {
        apply_letter(&mut m11, &mut m12, l)?;
        apply_letter(&mut m21, &mut m22, l)?;
    }
    Some([m11, m12, m21, m22])
}

pub fn burau_image(w: &BraidWord) -> BurauMatrix {
    let entries = match image_with::<i64>(w.letters(), 1) {
        Some(d) => d.map(Dense::into_poly),
        None => image_with::<BigInt>(w.letters(), BigInt::one()).expect("big integer arithmetic does not overflow").map(Dense::into_poly),
    };
    BurauMatrix { entries }
}

/// Decides equality in B₃ through the Burau images.
pub fn words_equal(w1: &BraidWord, w2: &BraidWord) -> bool {
    if let (Some(a), Some(b)) = (image_with::<i64>(w1.letters(), 1), image_with::<i64>(w2.letters(), 1)) {
        return a == b;
    }
    burau_image(w1) == burau_image(w2)
}

/// Trace of the Burau image at `t = −1`, where it is an integer matrix.
pub fn burau_trace_at_minus_one(w: &BraidWord) -> BigInt {
    let (mut a, mut b, mut c, mut d) = (BigInt::one(), BigInt::zero(), BigInt::zero(), BigInt::one());
    for &l in w.letters() {
        // at t = -1: σ₁ = [[1,1],[0,1]], σ₁⁻¹ = [[1,-1],[0,1]], σ₂ = [[1,0],[-1,1]], σ₂⁻¹ = [[1,0],[1,1]]
        match l {
            1 => {
                b += &a;
                d += &c;
            }
            -1 => {
                b -= &a;
                d -= &c;
            }
            2 => {
                a -= &b;
                c -= &d;
            }
            _ => {
                a += &b;
                c += &d;
            }
        }
    }
    a + d
}

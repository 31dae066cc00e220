//! SL₂(ℕ): products of `L = [[1,0],[1,1]]` and `U = [[1,1],[0,1]]`, the
//! correspondence with rigid braids, dilatations and unstable measures.

pub mod quadratic;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::garside::{is_rigid, GarsideTuple};

pub use quadratic::{QuadraticValue, Surd, DEFAULT_DIGITS};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SL2Matrix {
    m: [BigUint; 4],
}

impl SL2Matrix {
    pub fn new(m11: BigUint, m12: BigUint, m21: BigUint, m22: BigUint) -> Result<Self> {
        let m = SL2Matrix { m: [m11, m12, m21, m22] };
        if &m.m[0] * &m.m[3] != &m.m[1] * &m.m[2] + 1u32 {
            return Err(Error::Determinant(m.to_string()));
        }
        Ok(m)
    }

    /// Signed entries are accepted so that negative input can be reported.
    pub fn from_signed(m11: BigInt, m12: BigInt, m21: BigInt, m22: BigInt) -> Result<Self> {
        let text = format!("[[{m11},{m12}],[{m21},{m22}]]");
        let entries = [m11, m12, m21, m22];
        if entries.iter().any(Signed::is_negative) {
            return Err(Error::NegativeEntry(text));
        }
        let [a, b, c, d] = entries.map(|e| e.to_biguint().expect("non-negative"));
        SL2Matrix::new(a, b, c, d)
    }

    pub fn from_u64(m11: u64, m12: u64, m21: u64, m22: u64) -> Result<Self> {
        SL2Matrix::new(m11.into(), m12.into(), m21.into(), m22.into())
    }

    pub fn identity() -> Self {
        SL2Matrix { m: [BigUint::one(), BigUint::zero(), BigUint::zero(), BigUint::one()] }
    }

    pub fn l() -> Self {
        Self::l_pow(1)
    }

    pub fn u() -> Self {
        Self::u_pow(1)
    }

    pub fn l_pow(p: u64) -> Self {
        SL2Matrix { m: [BigUint::one(), BigUint::zero(), BigUint::from(p), BigUint::one()] }
    }

    pub fn u_pow(q: u64) -> Self {
        SL2Matrix { m: [BigUint::one(), BigUint::from(q), BigUint::zero(), BigUint::one()] }
    }

    pub fn entries(&self) -> &[BigUint; 4] {
        &self.m
    }

    pub fn mul(&self, o: &Self) -> Self {
        let [a, b, c, d] = &self.m;
        let [e, f, g, h] = &o.m;
        SL2Matrix { m: [a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h] }
    }

    pub fn trace(&self) -> BigUint {
        &self.m[0] + &self.m[3]
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    /// `J M J` with `J = [[0,1],[1,0]]`: rows and columns exchanged.
    pub fn j_conjugate(&self) -> Self {
        let [a, b, c, d] = self.m.clone();
        SL2Matrix { m: [d, c, b, a] }
    }
}

impl fmt::Display for SL2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = &self.m;
        write!(f, "[[{a},{b}],[{c},{d}]]")
    }
}

impl FromStr for SL2Matrix {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let bad = |reason: &str| Error::MalformedMatrix { text: text.to_string(), reason: reason.into() };
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect::<String>().replace('−', "-");
        let inner = compact.strip_prefix("[[").and_then(|r| r.strip_suffix("]]")).ok_or_else(|| bad("expected [[a,b],[c,d]]"))?;
        let rows: Vec<&str> = inner.split("],[").collect();
        if rows.len() != 2 {
            return Err(bad("expected two rows"));
        }
        let mut nums = Vec::with_capacity(4);
        for row in rows {
            let entries: Vec<&str> = row.split(',').collect();
            if entries.len() != 2 {
                return Err(bad("expected two entries per row"));
            }
            for e in entries {
                nums.push(e.parse::<BigInt>().map_err(|_| bad(&format!("'{e}' is not an integer")))?);
            }
        }
        let [a, b, c, d]: [BigInt; 4] = nums.try_into().expect("four entries");
        SL2Matrix::from_signed(a, b, c, d)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Lu {
    L,
    U,
}

impl Lu {
    pub fn swap(self) -> Self {
        match self {
            Lu::L => Lu::U,
            Lu::U => Lu::L,
        }
    }
}

/// Word in `L`, `U`, stored as runs `L^{p₁} U^{q₁} ⋯ L^{p_r} U^{q_r}` where
/// only `p₁` and `q_r` may vanish. The empty word is the single run `(0,0)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LUWord {
    runs: Vec<(u64, u64)>,
}

impl Default for LUWord {
    fn default() -> Self {
        LUWord { runs: vec![(0, 0)] }
    }
}

impl LUWord {
    pub fn from_letters<I: IntoIterator<Item = Lu>>(letters: I) -> Self {
        Self::from_counts(letters.into_iter().map(|l| (l, 1)))
    }

    fn from_counts<I: IntoIterator<Item = (Lu, u64)>>(counts: I) -> Self {
        let mut runs: Vec<(u64, u64)> = vec![(0, 0)];
        for (letter, n) in counts {
            if n == 0 {
                continue;
            }
            let last = runs.last_mut().unwrap();
            match letter {
                Lu::L if last.1 > 0 => runs.push((n, 0)),
                Lu::L => last.0 += n,
                Lu::U => last.1 += n,
            }
        }
        LUWord { runs }
    }

    /// Accepts any run list; zero entries are merged away.
    pub fn from_runs(runs: &[(u64, u64)]) -> Self {
        Self::from_counts(runs.iter().flat_map(|&(p, q)| [(Lu::L, p), (Lu::U, q)]))
    }

    pub fn runs(&self) -> &[(u64, u64)] {
        &self.runs
    }

    pub fn letters(&self) -> Vec<Lu> {
        let mut out = Vec::with_capacity(self.len() as usize);
        for &(p, q) in &self.runs {
            out.extend(std::iter::repeat_n(Lu::L, p as usize));
            out.extend(std::iter::repeat_n(Lu::U, q as usize));
        }
        out
    }

    pub fn len(&self) -> u64 {
        self.runs.iter().map(|(p, q)| p + q).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn has_both_letters(&self) -> bool {
        let (l, u) = self.runs.iter().fold((0, 0), |(l, u), (p, q)| (l + p, u + q));
        l > 0 && u > 0
    }

    /// Run-length text such as `L3 U1 L1 U1`.
    pub fn run_string(&self) -> String {
        let mut parts = Vec::new();
        for &(p, q) in &self.runs {
            if p > 0 {
                parts.push(format!("L{p}"));
            }
            if q > 0 {
                parts.push(format!("U{q}"));
            }
        }
        parts.join(" ")
    }
}

impl fmt::Display for LUWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("1");
        }
        for &(p, q) in &self.runs {
            for _ in 0..p {
                f.write_str("L")?;
            }
            for _ in 0..q {
                f.write_str("U")?;
            }
        }
        Ok(())
    }
}

impl FromStr for LUWord {
    type Err = Error;

    /// Flattened (`LLLU`) or run-length (`L3 U1`) text; `1` is the empty word.
    fn from_str(text: &str) -> Result<Self> {
        let bad = |reason: String| Error::MalformedLuWord { text: text.to_string(), reason };
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() || compact == "1" {
            return Ok(LUWord::default());
        }
        let mut counts = Vec::new();
        let mut chars = compact.chars().peekable();
        while let Some(c) = chars.next() {
            let letter = match c {
                'L' => Lu::L,
                'U' => Lu::U,
                other => return Err(bad(format!("unexpected '{other}'"))),
            };
            let mut num = String::new();
            while let Some(d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                num.push(*d);
                chars.next();
            }
            let n = if num.is_empty() { 1 } else { num.parse().map_err(|_| bad(format!("bad count '{num}'")))? };
            counts.push((letter, n));
        }
        Ok(LUWord::from_counts(counts))
    }
}

pub fn matrix_of_lu(w: &LUWord) -> SL2Matrix {
    w.runs.iter().fold(SL2Matrix::identity(), |m, &(p, q)| m.mul(&SL2Matrix::l_pow(p)).mul(&SL2Matrix::u_pow(q)))
}

pub fn lu_of_tuple(t: &GarsideTuple) -> Result<LUWord> {
    if !is_rigid(t) {
        return Err(Error::NotRigid(t.to_string()));
    }
    Ok(LUWord::from_runs(t.runs()))
}

/// The two rigid preimages `i = 1, 2`, with `s ∈ {0, 1}` fixed by parity.
pub fn braid_preimages(w: &LUWord) -> [GarsideTuple; 2] {
    if w.is_empty() {
        return [GarsideTuple::delta(0), GarsideTuple::delta(1)];
    }
    let q: u64 = w.runs.iter().map(|(_, q)| q).sum();
    let s = (q % 2) as i64;
    let make = |i| GarsideTuple::new(s, i, w.runs.clone()).expect("LU runs are well formed");
    [make(1), make(2)]
}

/// Row algorithm, emitting whole runs at once.
pub fn lu_decompose(m: &SL2Matrix) -> Result<LUWord> {
    let [mut a, mut b, mut c, mut d] = m.m.clone();
    let mut counts = Vec::new();
    loop {
        if a.is_one() && b.is_zero() && c.is_zero() && d.is_one() {
            break;
        }
        if a <= c && b <= d {
            let k = run_length(&a, &b, &c, &d);
            c -= &a * k;
            d -= &b * k;
            counts.push((Lu::L, k));
        } else if c <= a && d <= b {
            let k = run_length(&c, &d, &a, &b);
            a -= &c * k;
            b -= &d * k;
            counts.push((Lu::U, k));
        } else {
            return Err(Error::IncomparableRows(m.to_string()));
        }
    }
    Ok(LUWord::from_counts(counts))
}

/// Largest `k ≥ 1` with `(hi_x, hi_y) − k (lo_x, lo_y) ≥ 0`.
fn run_length(lo_x: &BigUint, lo_y: &BigUint, hi_x: &BigUint, hi_y: &BigUint) -> u64 {
    let kx = (!lo_x.is_zero()).then(|| hi_x / lo_x);
    let ky = (!lo_y.is_zero()).then(|| hi_y / lo_y);
    let k = match (kx, ky) {
        (Some(x), Some(y)) => x.min(y),
        (Some(x), None) => x,
        (None, Some(y)) => y,
        (None, None) => unreachable!("zero row in a determinant-one matrix"),
    };
    u64::try_from(k).expect("run length fits in u64")
}

pub fn trace(m: &SL2Matrix) -> BigUint {
    m.trace()
}

pub fn lu_length(w: &LUWord) -> u64 {
    w.len()
}

pub fn is_irreducible(m: &SL2Matrix) -> bool {
    m.m.iter().all(|e| !e.is_zero())
}

pub fn dilatation_of_trace(t: &BigUint) -> Result<QuadraticValue> {
    if *t < BigUint::from(3u8) {
        return Err(Error::TraceTooSmall(t.to_string()));
    }
    Ok(QuadraticValue::from_trace_unchecked(t.clone()))
}

/// Eigenvector for λ, exact as `(m12, λ − m11)`, with floats scaled to `x + y = 1`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Measure {
    #[serde(serialize_with = "crate::ser::display")]
    pub x: Surd,
    #[serde(serialize_with = "crate::ser::display")]
    pub y: Surd,
    pub x_float: f64,
    pub y_float: f64,
}

pub fn unstable_measure(m: &SL2Matrix) -> Result<Measure> {
    if !is_irreducible(m) {
        return Err(Error::ReducibleMatrix(m.to_string()));
    }
    let lambda = dilatation_of_trace(&m.trace())?.as_surd();
    let x = Surd::from_int(BigInt::from(m.m[1].clone()));
    let y = lambda.sub(&Surd::from_int(BigInt::from(m.m[0].clone())));
    let (xf, yf) = (x.to_f64(), y.to_f64());
    Ok(Measure { x_float: xf / (xf + yf), y_float: yf / (xf + yf), x, y })
}

/// `M v − λ v`, exactly.
pub fn eigen_residual(m: &SL2Matrix, v: (&Surd, &Surd)) -> Result<(Surd, Surd)> {
    let lambda = dilatation_of_trace(&m.trace())?.as_surd();
    let e = |k: usize| Surd::from_int(BigInt::from(m.m[k].clone()));
    let r1 = e(0).mul(v.0).add(&e(1).mul(v.1)).sub(&lambda.mul(v.0));
    let r2 = e(2).mul(v.0).add(&e(3).mul(v.1)).sub(&lambda.mul(v.1));
    Ok((r1, r2))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SplitGraph {
    G1,
    G2,
}

impl fmt::Display for SplitGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SplitGraph::G1 => "G1",
            SplitGraph::G2 => "G2",
        })
    }
}

/// Split of Γ₁ carrying a measure: `G1` with `(v, u) = (y, x − y)` when
/// `x > y`, `G2` with `(v, u) = (x, y − x)` when `x < y`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CarriedGraph {
    pub graph: SplitGraph,
    #[serde(serialize_with = "crate::ser::display")]
    pub v: Surd,
    #[serde(serialize_with = "crate::ser::display")]
    pub u: Surd,
}

pub fn split_measure(x: &Surd, y: &Surd) -> Result<CarriedGraph> {
    match x.cmp_exact(y) {
        Ordering::Greater => Ok(CarriedGraph { graph: SplitGraph::G1, v: y.clone(), u: x.sub(y) }),
        Ordering::Less => Ok(CarriedGraph { graph: SplitGraph::G2, v: x.clone(), u: y.sub(x) }),
        Ordering::Equal => Err(Error::DegenerateMeasure),
    }
}

pub fn j_conjugate(w: &LUWord) -> LUWord {
    LUWord::from_letters(w.letters().into_iter().map(Lu::swap))
}

/// Lexicographically least rotation (Booth's algorithm).
pub fn least_rotation(w: &LUWord) -> LUWord {
    let s = w.letters();
    let n = s.len();
    if n == 0 {
        return w.clone();
    }
    let at = |idx: isize| s[idx as usize % n];
    let mut f = vec![-1isize; 2 * n];
    let mut k = 0isize;
    for j in 1..2 * n as isize {
        let sj = at(j);
        let mut i = f[(j - k - 1) as usize];
        while i != -1 && sj != at(k + i + 1) {
            if sj < at(k + i + 1) {
                k = j - i - 1;
            }
            i = f[i as usize];
        }
        if i == -1 && sj != at(k) {
            if sj < at(k) {
                k = j;
            }
            f[(j - k) as usize] = -1;
        } else {
            f[(j - k) as usize] = i + 1;
        }
    }
    let k = k as usize;
    LUWord::from_letters((0..n).map(|t| s[(k + t) % n]))
}

pub fn cyclic_equivalent(w1: &LUWord, w2: &LUWord) -> bool {
    w1.len() == w2.len() && least_rotation(w1) == least_rotation(w2)
}

/// Representative of the class under rotation and `L ↔ U`.
pub fn cyclic_j_class(w: &LUWord) -> LUWord {
    let (a, b) = (least_rotation(w), least_rotation(&j_conjugate(w)));
    if a.letters() <= b.letters() {
        a
    } else {
        b
    }
}

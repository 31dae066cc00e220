//! Garside structure of B₃.
//!
//! A normal form is `Δ^s s₁ ⋯ s_k` with proper simple factors; a boundary
//! `sᵢ | sᵢ₊₁` is normal exactly when the last letter of `sᵢ` equals the
//! first letter of `sᵢ₊₁`. Tuples `(s; i; p₁,q₁,…,p_r,q_r)` record `i`, the
//! first letter of `s₁`, and alternating runs of length-one (`p`) and
//! length-two (`q`) factors.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::sl2::{self, dilatation_of_trace, LUWord, QuadraticValue, SL2Matrix};
use crate::words::{concat, exponent_sum, BraidWord};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SimpleElement {
    Identity,
    S1,
    S2,
    S12,
    S21,
    Delta,
}

impl SimpleElement {
    pub const ALL: [SimpleElement; 6] =
        [SimpleElement::Identity, SimpleElement::S1, SimpleElement::S2, SimpleElement::S12, SimpleElement::S21, SimpleElement::Delta];

    /// Positive word of the element; `Δ` is spelled `σ₁σ₂σ₁`.
    pub fn letters(self) -> &'static [u8] {
        match self {
            SimpleElement::Identity => &[],
            SimpleElement::S1 => &[1],
            SimpleElement::S2 => &[2],
            SimpleElement::S12 => &[1, 2],
            SimpleElement::S21 => &[2, 1],
            SimpleElement::Delta => &[1, 2, 1],
        }
    }

    pub fn is_proper(self) -> bool {
        !matches!(self, SimpleElement::Identity | SimpleElement::Delta)
    }

    pub fn len(self) -> usize {
        self.letters().len()
    }

    pub fn is_empty(self) -> bool {
        self == SimpleElement::Identity
    }

    pub fn first(self) -> u8 {
        self.letters()[0]
    }

    pub fn last(self) -> u8 {
        *self.letters().last().expect("non-identity simple element")
    }

    pub fn tau(self) -> Self {
        match self {
            SimpleElement::S1 => SimpleElement::S2,
            SimpleElement::S2 => SimpleElement::S1,
            SimpleElement::S12 => SimpleElement::S21,
            SimpleElement::S21 => SimpleElement::S12,
            other => other,
        }
    }

    fn tau_pow(self, s: i64) -> Self {
        if s.rem_euclid(2) == 1 {
            self.tau()
        } else {
            self
        }
    }

    fn single(g: u8) -> Self {
        if g == 1 {
            SimpleElement::S1
        } else {
            SimpleElement::S2
        }
    }

    fn pair(g: u8) -> Self {
        if g == 1 {
            SimpleElement::S12
        } else {
            SimpleElement::S21
        }
    }
}

impl fmt::Display for SimpleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SimpleElement::Identity => "1",
            SimpleElement::S1 => "a",
            SimpleElement::S2 => "b",
            SimpleElement::S12 => "ab",
            SimpleElement::S21 => "ba",
            SimpleElement::Delta => "D",
        };
        f.write_str(s)
    }
}

fn boundary_is_normal(left: SimpleElement, right: SimpleElement) -> bool {
    left.last() == right.first()
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalForm {
    delta_power: i64,
    factors: Vec<SimpleElement>,
}

impl NormalForm {
    /// `None` unless every factor is proper and every boundary is normal.
    pub fn new(delta_power: i64, factors: Vec<SimpleElement>) -> Option<Self> {
        let proper = factors.iter().all(|f| f.is_proper());
        let chained = factors.windows(2).all(|p| boundary_is_normal(p[0], p[1]));
        (proper && chained).then_some(NormalForm { delta_power, factors })
    }

    pub fn delta_power(&self) -> i64 {
        self.delta_power
    }

    pub fn factors(&self) -> &[SimpleElement] {
        &self.factors
    }

    pub fn canonical_length(&self) -> usize {
        self.factors.len()
    }

    pub fn is_delta_power(&self) -> bool {
        self.factors.is_empty()
    }

    /// Spells the normal form as a braid word (`Δ^s` as `(aba)^s` or `(ABA)^-s`).
    pub fn to_word(&self) -> BraidWord {
        let mut letters = Vec::with_capacity(3 * self.delta_power.unsigned_abs() as usize + 2 * self.factors.len());
        let d: [i8; 3] = if self.delta_power >= 0 { [1, 2, 1] } else { [-1, -2, -1] };
        for _ in 0..self.delta_power.unsigned_abs() {
            letters.extend_from_slice(&d);
        }
        for f in &self.factors {
            letters.extend(f.letters().iter().map(|&g| g as i8));
        }
        BraidWord::from_letters(letters)
    }

    /// Definitional rigidity: `s_k · τ^{-s}(s₁)` is left-normal.
    pub fn is_rigid(&self) -> bool {
        match (self.factors.first(), self.factors.last()) {
            (Some(&first), Some(&last)) => boundary_is_normal(last, first.tau_pow(self.delta_power)),
            _ => true,
        }
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D^{}", self.delta_power)?;
        for s in &self.factors {
            write!(f, " . {s}")?;
        }
        Ok(())
    }
}

/// Incremental left normal form of `Δ^delta · P`, with `P` held up to a
/// pending τ: the actual factors are `τ^flip(stored)`.
struct Builder {
    delta: i64,
    flip: bool,
    stored: Vec<SimpleElement>,
}

impl Builder {
    fn with_capacity(n: usize) -> Self {
        Builder { delta: 0, flip: false, stored: Vec::with_capacity(n) }
    }

    fn push(&mut self, g: u8) {
        let x = if self.flip { 3 - g } else { g };
        match self.stored.last().copied() {
            Some(SimpleElement::S1) | Some(SimpleElement::S2) => {
                let j = self.stored.last().unwrap().first();
                if x != j {
                    *self.stored.last_mut().unwrap() = SimpleElement::pair(j);
                } else {
                    self.stored.push(SimpleElement::single(x));
                }
            }
            Some(last @ (SimpleElement::S12 | SimpleElement::S21)) => {
                if x == last.last() {
                    self.stored.push(SimpleElement::single(x));
                } else {
                    self.stored.pop();
                    self.delta += 1;
                    self.flip = !self.flip;
                }
            }
            _ => self.stored.push(SimpleElement::single(x)),
        }
    }

    /// Appends σ_g⁻¹ = Δ⁻¹ σ_g σ_{3-g}, moving Δ⁻¹ to the front.
    fn push_inverse(&mut self, g: u8) {
        self.delta -= 1;
        self.flip = !self.flip;
        self.push(g);
        self.push(3 - g);
    }

    fn finish(self) -> NormalForm {
        let flip = self.flip;
        let factors = self.stored.into_iter().map(|f| if flip { f.tau() } else { f }).collect();
        NormalForm { delta_power: self.delta, factors }
    }
}

/// Left normal form, in time linear in the word length.
pub fn normalize(w: &BraidWord) -> NormalForm {
    let mut b = Builder::with_capacity(2 * w.len());
    for &l in w.letters() {
        if l > 0 {
            b.push(l as u8);
        } else {
            b.push_inverse((-l) as u8);
        }
    }
    b.finish()
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GarsideTuple {
    s: i64,
    i: u8,
    runs: Vec<(u64, u64)>,
}

impl GarsideTuple {
    /// Validates the run structure; Δ-powers are stored with `i = 1`.
    pub fn new(s: i64, i: u8, runs: Vec<(u64, u64)>) -> Result<Self> {
        let bad = |reason: &str| Error::MalformedTuple { text: render_tuple(s, i, &runs), reason: reason.into() };
        if i != 1 && i != 2 {
            return Err(bad("i must be 1 or 2"));
        }
        if runs.is_empty() {
            return Err(bad("no runs"));
        }
        let r = runs.len();
        for (j, &(p, q)) in runs.iter().enumerate() {
            if p == 0 && j > 0 {
                return Err(bad("only p1 may be zero"));
            }
            if q == 0 && j + 1 < r {
                return Err(bad("only the last q may be zero"));
            }
        }
        if r > 1 && runs[0] == (0, 0) {
            return Err(bad("empty first run"));
        }
        let i = if runs == [(0, 0)] { 1 } else { i };
        Ok(GarsideTuple { s, i, runs })
    }

    pub fn delta(s: i64) -> Self {
        GarsideTuple { s, i: 1, runs: vec![(0, 0)] }
    }

    pub fn s(&self) -> i64 {
        self.s
    }

    pub fn i(&self) -> u8 {
        self.i
    }

    pub fn runs(&self) -> &[(u64, u64)] {
        &self.runs
    }

    pub fn canonical_length(&self) -> u64 {
        self.runs.iter().map(|(p, q)| p + q).sum()
    }

    pub fn q_sum(&self) -> u64 {
        self.runs.iter().map(|(_, q)| q).sum()
    }

    pub fn tau(&self) -> Self {
        if self.canonical_length() == 0 {
            return self.clone();
        }
        GarsideTuple { s: self.s, i: 3 - self.i, runs: self.runs.clone() }
    }
}

fn render_tuple(s: i64, i: u8, runs: &[(u64, u64)]) -> String {
    let body: Vec<String> = runs.iter().map(|(p, q)| format!("{p},{q}")).collect();
    format!("({s}; {i}; {})", body.join(","))
}

impl fmt::Display for GarsideTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_tuple(self.s, self.i, &self.runs))
    }
}

impl FromStr for GarsideTuple {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let bad = |reason: &str| Error::MalformedTuple { text: text.to_string(), reason: reason.into() };
        let t = text.trim().replace('−', "-");
        let inner = t.strip_prefix('(').and_then(|r| r.strip_suffix(')')).ok_or_else(|| bad("expected parentheses"))?;
        let parts: Vec<&str> = inner.split(';').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(bad("expected three ';'-separated fields"));
        }
        let s: i64 = parts[0].parse().map_err(|_| bad("s is not an integer"))?;
        let i: u8 = parts[1].parse().map_err(|_| bad("i is not 1 or 2"))?;
        let nums = parts[2]
            .split(',')
            .map(|x| x.trim().parse::<u64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| bad("runs must be non-negative integers"))?;
        if nums.len() % 2 != 0 {
            return Err(bad("odd number of run entries"));
        }
        let runs = nums.chunks(2).map(|c| (c[0], c[1])).collect();
        GarsideTuple::new(s, i, runs).map_err(|e| match e {
            Error::MalformedTuple { reason, .. } => bad(&reason),
            other => other,
        })
    }
}

pub fn tuple_of(nf: &NormalForm) -> GarsideTuple {
    if nf.factors.is_empty() {
        return GarsideTuple::delta(nf.delta_power);
    }
    let mut runs = Vec::new();
    let (mut p, mut q) = (0u64, 0u64);
    for f in &nf.factors {
        if f.len() == 1 {
            if q > 0 {
                runs.push((p, q));
                p = 0;
                q = 0;
            }
            p += 1;
        } else {
            q += 1;
        }
    }
    runs.push((p, q));
    GarsideTuple { s: nf.delta_power, i: nf.factors[0].first(), runs }
}

pub fn decode_tuple(t: &GarsideTuple) -> NormalForm {
    let mut factors = Vec::with_capacity(t.canonical_length() as usize);
    let mut cur = t.i;
    for &(p, q) in &t.runs {
        for _ in 0..p {
            factors.push(SimpleElement::single(cur));
        }
        for _ in 0..q {
            factors.push(SimpleElement::pair(cur));
            cur = 3 - cur;
        }
    }
    NormalForm { delta_power: t.s, factors }
}

pub fn tau(nf: &NormalForm) -> NormalForm {
    NormalForm { delta_power: nf.delta_power, factors: nf.factors.iter().map(|f| f.tau()).collect() }
}

/// Tuple criterion: `k = 0` or `s + Σq` even.
pub fn is_rigid(t: &GarsideTuple) -> bool {
    t.canonical_length() == 0 || (t.s + t.q_sum() as i64).rem_euclid(2) == 0
}

/// Conjugates by `τ^{-s}(s₁)` and renormalizes.
pub fn cycle_once(nf: &NormalForm) -> Result<NormalForm> {
    let first = *nf.factors.first().ok_or(Error::CyclingDeltaPower(nf.delta_power))?;
    let c = first.tau_pow(nf.delta_power);
    let mut b = Builder { delta: nf.delta_power, flip: false, stored: nf.factors[1..].to_vec() };
    for &g in c.letters() {
        b.push(g);
    }
    Ok(b.finish())
}

pub fn is_periodic(w: &BraidWord) -> bool {
    if normalize(w).is_delta_power() {
        return true;
    }
    let central = |nf: NormalForm| nf.is_delta_power() && nf.delta_power.rem_euclid(2) == 0;
    let w2 = concat(w, w);
    central(normalize(&w2)) || central(normalize(&concat(&w2, w)))
}

/// Least `k ∈ {1, 2, 3}` with `w^k = Δ^{2m}`, for periodic `w`.
pub fn root_power(w: &BraidWord) -> Option<u8> {
    (1..=3u8).find(|&k| {
        let nf = normalize(&w.pow(k as usize));
        nf.is_delta_power() && nf.delta_power.rem_euclid(2) == 0
    })
}

pub fn default_cycling_cap(nf: &NormalForm) -> usize {
    10 * (nf.canonical_length() + nf.delta_power.unsigned_abs() as usize + 4)
}

/// Cycles until rigid, restarting the loop check whenever the length drops.
pub fn rigidify(nf: &NormalForm, cap: Option<usize>) -> Result<NormalForm> {
    let cap = cap.unwrap_or_else(|| default_cycling_cap(nf));
    let mut cur = nf.clone();
    let mut seen: HashSet<NormalForm> = HashSet::new();
    let mut iterations = 0;
    while !cur.is_rigid() {
        if iterations >= cap {
            return Err(Error::CyclingCap(cap));
        }
        iterations += 1;
        let next = cycle_once(&cur)?;
        if next.canonical_length() < cur.canonical_length() {
            seen.clear();
        } else if !seen.insert(next.clone()) {
            return Err(Error::CyclingCap(iterations));
        }
        cur = next;
    }
    Ok(cur)
}

/// Murasugi representative. Non-periodic results are put in the form
/// carried by Γ₁: `i = 1` for even `s`, `i = 2` for odd `s`. Periodic
/// results use `i = 1`.
pub fn murasugi_rep(w: &BraidWord, cap: Option<usize>) -> Result<GarsideTuple> {
    if is_periodic(w) {
        return Ok(periodic_pattern(exponent_sum(w)));
    }
    let rigid = rigidify(&normalize(w), cap)?;
    let t = tuple_of(&rigid);
    Ok(if is_gamma1_form(&t) { t } else { t.tau() })
}

fn periodic_pattern(e: i64) -> GarsideTuple {
    match e.rem_euclid(3) {
        0 => GarsideTuple::delta(e / 3),
        1 => GarsideTuple { s: (e - 1) / 3, i: 1, runs: vec![(1, 0)] },
        _ => GarsideTuple { s: (e - 2).div_euclid(3), i: 1, runs: vec![(0, 1)] },
    }
}

/// `(even s, i = 1)` or `(odd s, i = 2)`.
pub fn is_gamma1_form(t: &GarsideTuple) -> bool {
    (t.s.rem_euclid(2) == 0) == (t.i == 1)
}

pub fn sss_orbit(t: &GarsideTuple) -> Result<BTreeSet<GarsideTuple>> {
    if t.canonical_length() < 2 || !is_rigid(t) {
        return Err(Error::ShortTuple(t.to_string()));
    }
    let mut seen = BTreeSet::from([t.clone()]);
    let mut queue = VecDeque::from([t.clone()]);
    while let Some(cur) = queue.pop_front() {
        let cycled = tuple_of(&cycle_once(&decode_tuple(&cur))?);
        for next in [cycled, cur.tau()] {
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    Ok(seen)
}

/// Splits a super summit set into its cycling orbits.
pub fn cycling_orbits(sss: &BTreeSet<GarsideTuple>) -> Result<Vec<BTreeSet<GarsideTuple>>> {
    let mut left = sss.clone();
    let mut orbits = Vec::new();
    while let Some(start) = left.iter().next().cloned() {
        let mut orbit = BTreeSet::new();
        let mut cur = start;
        while orbit.insert(cur.clone()) {
            left.remove(&cur);
            cur = tuple_of(&cycle_once(&decode_tuple(&cur))?);
        }
        orbits.push(orbit);
    }
    Ok(orbits)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum NTClassification {
    Periodic {
        #[serde(serialize_with = "crate::ser::display")]
        murasugi: GarsideTuple,
        root_power: u8,
    },
    Reducible {
        #[serde(serialize_with = "crate::ser::display")]
        murasugi: GarsideTuple,
        side: u8,
        #[serde(serialize_with = "crate::ser::display")]
        matrix: SL2Matrix,
    },
    PseudoAnosov {
        #[serde(serialize_with = "crate::ser::display")]
        murasugi: GarsideTuple,
        #[serde(serialize_with = "crate::ser::display")]
        matrix: SL2Matrix,
        #[serde(serialize_with = "crate::ser::big")]
        trace: BigUint,
        dilatation: QuadraticValue,
    },
}

impl NTClassification {
    pub fn murasugi(&self) -> &GarsideTuple {
        match self {
            NTClassification::Periodic { murasugi, .. }
            | NTClassification::Reducible { murasugi, .. }
            | NTClassification::PseudoAnosov { murasugi, .. } => murasugi,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            NTClassification::Periodic { .. } => "periodic",
            NTClassification::Reducible { .. } => "reducible",
            NTClassification::PseudoAnosov { .. } => "pseudo-anosov",
        }
    }

    pub fn matrix(&self) -> Option<&SL2Matrix> {
        match self {
            NTClassification::Periodic { .. } => None,
            NTClassification::Reducible { matrix, .. } | NTClassification::PseudoAnosov { matrix, .. } => Some(matrix),
        }
    }
}

pub fn classify(w: &BraidWord, cap: Option<usize>) -> Result<NTClassification> {
    let murasugi = murasugi_rep(w, cap)?;
    if is_periodic(w) {
        let root_power = root_power(w).expect("periodic braids have a central power");
        return Ok(NTClassification::Periodic { murasugi, root_power });
    }
    let lu = sl2::lu_of_tuple(&murasugi)?;
    let matrix = sl2::matrix_of_lu(&lu);
    match murasugi.runs() {
        [(_, 0)] => Ok(NTClassification::Reducible { murasugi, side: 1, matrix }),
        [(0, _)] => Ok(NTClassification::Reducible { murasugi, side: 2, matrix }),
        _ => {
            let trace = matrix.trace();
            let dilatation = dilatation_of_trace(&trace)?;
            Ok(NTClassification::PseudoAnosov { murasugi, matrix, trace, dilatation })
        }
    }
}

/// Data compared by the conjugacy decision.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjugacyInvariants {
    pub exponent_sum: i64,
    pub periodic: bool,
    #[serde(serialize_with = "crate::ser::display")]
    pub murasugi: GarsideTuple,
    pub delta_power: i64,
    /// Least rotation of the LU-word, `None` for periodic braids.
    #[serde(serialize_with = "crate::ser::display_opt")]
    pub lu_class: Option<LUWord>,
}

pub fn conjugacy_invariants(w: &BraidWord, cap: Option<usize>) -> Result<ConjugacyInvariants> {
    let periodic = is_periodic(w);
    let murasugi = murasugi_rep(w, cap)?;
    let lu_class = if periodic { None } else { Some(sl2::least_rotation(&sl2::lu_of_tuple(&murasugi)?)) };
    Ok(ConjugacyInvariants { exponent_sum: exponent_sum(w), periodic, delta_power: murasugi.s(), murasugi, lu_class })
}

fn compare_invariants(a: &ConjugacyInvariants, b: &ConjugacyInvariants, mod_delta2: bool) -> bool {
    let same_s = if mod_delta2 { (a.delta_power - b.delta_power).rem_euclid(2) == 0 } else { a.delta_power == b.delta_power };
    if a.periodic != b.periodic || !same_s {
        return false;
    }
    if a.periodic {
        a.murasugi.runs() == b.murasugi.runs()
    } else {
        a.lu_class == b.lu_class
    }
}

fn decide(w1: &BraidWord, w2: &BraidWord, mod_delta2: bool, cap: Option<usize>) -> Result<bool> {
    let (e1, e2) = (exponent_sum(w1), exponent_sum(w2));
    let quick = if mod_delta2 { (e1 - e2).rem_euclid(6) == 0 } else { e1 == e2 };
    if !quick {
        return Ok(false);
    }
    let a = conjugacy_invariants(w1, cap)?;
    let b = conjugacy_invariants(w2, cap)?;
    Ok(compare_invariants(&a, &b, mod_delta2))
}

pub fn is_conjugate(w1: &BraidWord, w2: &BraidWord, cap: Option<usize>) -> Result<bool> {
    decide(w1, w2, false, cap)
}

pub fn is_conjugate_mod_delta2(w1: &BraidWord, w2: &BraidWord, cap: Option<usize>) -> Result<bool> {
    decide(w1, w2, true, cap)
}

#[cfg(test)]
mod tests {
    use super::SimpleElement::*;
    use super::*;
    use crate::words::{conjugate, parse_word, words_equal};

    fn w(s: &str) -> BraidWord {
        parse_word(s).unwrap()
    }

    fn t(s: &str) -> GarsideTuple {
        s.parse().unwrap()
    }

    #[test]
    fn simple_elements() {
        assert_eq!(SimpleElement::ALL.len(), 6);
        for e in SimpleElement::ALL.into_iter().filter(|e| e.is_proper()) {
            assert!(matches!(e.len(), 1 | 2));
            assert_eq!(e.tau().tau(), e);
        }
    }

    /// Every normal form with `1 ≤ k ≤ max_k` factors and the given Δ-power.
    fn all_normal_forms(s: i64, max_k: usize) -> Vec<NormalForm> {
        let mut layer: Vec<Vec<SimpleElement>> = [S1, S2, S12, S21].into_iter().map(|f| vec![f]).collect();
        let mut out = Vec::new();
        for _ in 0..max_k {
            out.extend(layer.iter().map(|f| NormalForm::new(s, f.clone()).unwrap()));
            layer = layer
                .iter()
                .flat_map(|f| {
                    let j = f.last().unwrap().last();
                    [SimpleElement::single(j), SimpleElement::pair(j)].map(|n| [f.as_slice(), &[n]].concat())
                })
                .collect();
        }
        out
    }

    #[test]
    fn rigidity_criterion_matches_definition() {
        for s in -3..=3 {
            for nf in all_normal_forms(s, 10) {
                let t = tuple_of(&nf);
                assert_eq!(is_rigid(&t), nf.is_rigid(), "{nf}");
                assert_eq!(decode_tuple(&t), nf);
                assert_eq!(tau(&tau(&nf)), nf);
                assert_eq!(tau(&nf).delta_power(), s);
            }
        }
    }

    #[test]
    fn cycling_shortens_or_rigidifies() {
        for s in -1..=2 {
            for nf in all_normal_forms(s, 12).into_iter().filter(|n| n.canonical_length() >= 2) {
                let c = cycle_once(&nf).unwrap();
                if nf.is_rigid() {
                    assert_eq!(c.delta_power(), s, "{nf}");
                    assert!(c.is_rigid() && c.canonical_length() == nf.canonical_length(), "{nf}");
                    let (a, b) = (crate::sl2::lu_of_tuple(&tuple_of(&nf)), crate::sl2::lu_of_tuple(&tuple_of(&c)));
                    let (a, b) = (a.unwrap().letters(), b.unwrap().letters());
                    assert_eq!([&a[1..], &a[..1]].concat(), b, "{nf}");
                } else {
                    assert!(c.delta_power() >= s, "{nf}");
                    assert!(c.is_rigid() || c.canonical_length() < nf.canonical_length(), "{nf}");
                }
            }
        }
    }

    #[test]
    fn emitted_normal_forms_are_locally_normal() {
        let letters = [1i8, -1, 2, -2];
        let mut words = vec![Vec::new()];
        for _ in 0..8 {
            words = words.iter().flat_map(|p: &Vec<i8>| letters.map(|l| [p.as_slice(), &[l]].concat())).collect();
            for letters in &words {
                let nf = normalize(&BraidWord::from_letters(letters.clone()));
                assert!(nf.factors().windows(2).all(|p| boundary_is_normal(p[0], p[1])));
                assert!(nf.factors().iter().all(|f| f.is_proper()));
                assert_eq!(decode_tuple(&tuple_of(&nf)), nf);
            }
        }
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize(&w("aB")), NormalForm::new(-1, vec![S2, S21]).unwrap());
        assert_eq!(normalize(&w("ab")), NormalForm::new(0, vec![S12]).unwrap());
        assert_eq!(normalize(&w("AAba")), NormalForm::new(-2, vec![S21, S12, S21]).unwrap());
        assert_eq!(normalize(&w("ababab")), NormalForm::new(2, vec![]).unwrap());
        assert_eq!(normalize(&w("")), NormalForm::new(0, vec![]).unwrap());
    }

    #[test]
    fn normal_forms_are_equal_as_braids() {
        for s in ["aB", "AAba", "DbbAAba", "BBBBa", "abba", "dDaBAb"] {
            let nf = normalize(&w(s));
            assert!(words_equal(&w(s), &nf.to_word()), "{s}");
            assert!(NormalForm::new(nf.delta_power(), nf.factors().to_vec()).is_some());
        }
    }

    #[test]
    fn tuple_examples() {
        let ex = t("(-4; 1; 0,1,3,2)");
        assert_eq!(decode_tuple(&ex), NormalForm::new(-4, vec![S12, S2, S2, S2, S21, S12]).unwrap());
        assert_eq!(tuple_of(&decode_tuple(&ex)), ex);
        assert_eq!(ex.to_string(), "(-4; 1; 0,1,3,2)");
        assert_eq!(decode_tuple(&t("(3; 1; 0,0)")), NormalForm::new(3, vec![]).unwrap());
        assert_eq!(tuple_of(&normalize(&w("aB"))), t("(-1; 2; 1,1)"));
        assert_eq!(t("(3; 2; 0,0)"), t("(3; 1; 0,0)"));
        assert_eq!(t("(−1;2;1,1)"), t("(-1; 2; 1,1)"));
    }

    #[test]
    fn malformed_tuples() {
        for bad in ["(0; 1; 1,0,1,1)", "(0; 1; 1,1,0,1)", "(0; 3; 1,1)", "(0; 1; 1)", "0; 1; 1,1", "(0; 1; 0,0,1,1)"] {
            assert!(matches!(bad.parse::<GarsideTuple>(), Err(Error::MalformedTuple { .. })), "{bad}");
        }
    }

    #[test]
    fn tau_examples() {
        assert_eq!(tuple_of(&tau(&decode_tuple(&t("(3; 1; 2,1)")))), t("(3; 2; 2,1)"));
        let nf = normalize(&w("aB"));
        assert_eq!(tau(&tau(&nf)), nf);
        assert_eq!(tau(&normalize(&w("a"))), normalize(&w("b")));
    }

    #[test]
    fn rigidity_examples() {
        assert!(!is_rigid(&t("(-4; 1; 0,1,3,2)")));
        assert!(is_rigid(&t("(-1; 2; 1,1)")));
        assert!(is_rigid(&t("(5; 1; 0,0)")));
        assert!(!decode_tuple(&t("(-4; 1; 0,1,3,2)")).is_rigid());
    }

    #[test]
    fn cycling_examples() {
        let nf = NormalForm::new(0, vec![S1, S12]).unwrap();
        assert_eq!(cycle_once(&nf).unwrap(), NormalForm::new(1, vec![]).unwrap());
        let r = decode_tuple(&t("(-1; 2; 1,1)"));
        assert_eq!(tuple_of(&cycle_once(&r).unwrap()), t("(-1; 2; 0,1,1,0)"));
        let a = NormalForm::new(0, vec![S1]).unwrap();
        assert_eq!(cycle_once(&a).unwrap(), a);
        assert_eq!(cycle_once(&NormalForm::new(4, vec![]).unwrap()), Err(Error::CyclingDeltaPower(4)));
    }

    #[test]
    fn periodic_examples() {
        assert!(is_periodic(&w("ab")));
        assert!(is_periodic(&w("Da")));
        assert!(!is_periodic(&w("aB")));
        assert_eq!(root_power(&w("ab")), Some(3));
        assert_eq!(root_power(&w("Da")), Some(3));
        assert_eq!(root_power(&w("D")), Some(2));
        assert_eq!(root_power(&w("DD")), Some(1));
    }

    #[test]
    fn murasugi_examples() {
        assert_eq!(murasugi_rep(&w("AAba"), None).unwrap(), t("(-1; 2; 0,1,1,0)"));
        assert_eq!(murasugi_rep(&w("aa"), None).unwrap(), t("(0; 1; 2,0)"));
        assert_eq!(murasugi_rep(&w("ab"), None).unwrap(), t("(0; 1; 0,1)"));
        assert_eq!(murasugi_rep(&w("Da"), None).unwrap(), t("(1; 1; 1,0)"));
        assert_eq!(murasugi_rep(&w("dd"), None).unwrap(), t("(-2; 1; 0,0)"));
        let rep = decode_tuple(&murasugi_rep(&w("AAba"), None).unwrap()).to_word();
        assert!(is_conjugate(&rep, &w("AAba"), None).unwrap());
    }

    #[test]
    fn cycling_cap_is_reported() {
        let nf = normalize(&w("AAba"));
        assert_eq!(rigidify(&nf, Some(0)), Err(Error::CyclingCap(0)));
    }

    #[test]
    fn sss_examples() {
        let orbit = sss_orbit(&t("(-1; 2; 1,1)")).unwrap();
        let expect: BTreeSet<_> = ["(-1; 2; 1,1)", "(-1; 2; 0,1,1,0)", "(-1; 1; 1,1)", "(-1; 1; 0,1,1,0)"].into_iter().map(t).collect();
        assert_eq!(orbit, expect);
        let sq = sss_orbit(&t("(0; 1; 2,0)")).unwrap();
        assert_eq!(sq, [t("(0; 1; 2,0)"), t("(0; 2; 2,0)")].into_iter().collect());
        assert_eq!(cycling_orbits(&sq).unwrap().len(), 2);
        assert!(sss_orbit(&t("(0; 1; 1,1)")).is_err());
        assert!(sss_orbit(&t("(0; 1; 1,0)")).is_err());
    }

    #[test]
    fn classify_examples() {
        assert!(matches!(classify(&w("ab"), None).unwrap(), NTClassification::Periodic { root_power: 3, .. }));
        assert!(matches!(classify(&w("aa"), None).unwrap(), NTClassification::Reducible { side: 1, .. }));
        match classify(&w("aB"), None).unwrap() {
            NTClassification::PseudoAnosov { matrix, trace, .. } => {
                assert_eq!(matrix.to_string(), "[[1,1],[1,2]]");
                assert_eq!(trace, BigUint::from(3u8));
            }
            other => panic!("{other:?}"),
        }
        match classify(&w("Dab"), None).unwrap() {
            NTClassification::Reducible { side, murasugi, .. } => {
                assert_eq!(side, 2);
                assert_eq!(murasugi, t("(1; 2; 0,1)"));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn conjugacy_examples() {
        let b1 = w("Daaaabbbaaab");
        let b2 = w("aaabbaaaabba");
        assert!(!is_conjugate(&b1, &b2, None).unwrap());
        assert!(!is_conjugate_mod_delta2(&b1, &b2, None).unwrap());
        assert!(is_conjugate(&w("aB"), &w("Ba"), None).unwrap());
        let g = w("abBBaDb");
        assert!(is_conjugate(&w("AAba"), &conjugate(&w("AAba"), &g), None).unwrap());
        assert!(!is_conjugate(&w("aB"), &w("aBDD"), None).unwrap());
        assert!(is_conjugate_mod_delta2(&w("aB"), &w("aBDD"), None).unwrap());
        assert!(is_conjugate_mod_delta2(&w("D"), &w("DDD"), None).unwrap());
        assert!(!is_conjugate(&w("D"), &w("DDD"), None).unwrap());
    }
}

//! Exhaustive and randomized checks of the trace, spectrum, train-track and
//! cycling statements at desk scale.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt::Write as _;

use num_bigint::BigUint;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bounds::{extremal_max, extremal_min, max_trace, min_trace};
use crate::error::{Error, Result};
use crate::garside::{
    classify, cycle_once, cycling_orbits, decode_tuple, is_conjugate, is_rigid, normalize, sss_orbit, GarsideTuple, NTClassification,
};
use crate::sl2::{cyclic_j_class, least_rotation, lu_decompose, lu_of_tuple, matrix_of_lu, unstable_measure, LUWord, Lu};
use crate::traintrack::{is_efficient, map_of_word, switch_conditions, train_track_of_rigid, transition_matrix};
use crate::traintrack::{EfficiencyVerdict, TrackGraph};
use crate::words::burau::{burau_image, words_equal};
use crate::words::{conjugate, BraidWord};

pub const DEFAULT_SWEEP_CAP: u64 = 16;
pub const DEFAULT_FREE_MONOID: u32 = 14;
pub const DEFAULT_SPECTRUM: u64 = 200;
pub const DEFAULT_HAN: u64 = 8;
pub const DEFAULT_CYCLING: u64 = 10;
pub const DEFAULT_CONJUGACY_SAMPLES: u64 = 10_000;

/// All `2^ell` words of length `ell`, lexicographic with `L < U`.
pub fn enum_lu_words(ell: u32) -> impl Iterator<Item = LUWord> {
    assert!(ell < 64, "word length too large to enumerate");
    (0..1u64 << ell).map(move |n| LUWord::from_letters((0..ell).map(|j| if n >> (ell - 1 - j) & 1 == 1 { Lu::U } else { Lu::L })))
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub ell: u64,
    pub count_words: u64,
    pub count_irreducible: u64,
    #[serde(serialize_with = "crate::ser::big")]
    pub min_trace: BigUint,
    #[serde(serialize_with = "crate::ser::big")]
    pub max_trace: BigUint,
    #[serde(serialize_with = "display_all")]
    pub argmin_classes: Vec<LUWord>,
    #[serde(serialize_with = "display_all")]
    pub argmax_classes: Vec<LUWord>,
    /// Irreducible words per trace.
    pub trace_histogram: BTreeMap<u128, u64>,
    pub ok: bool,
}

fn display_all<S: serde::Serializer>(v: &[LUWord], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(ToString::to_string))
}

pub const SWEEP_CSV_HEADER: &str = "ell,count_words,count_irreducible,min_trace,max_trace,argmin,argmax,ok";

impl SweepRow {
    pub fn csv_row(&self) -> String {
        let join = |v: &[LUWord]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(";");
        format!(
            "{},{},{},{},{},{},{},{}",
            self.ell,
            self.count_words,
            self.count_irreducible,
            self.min_trace,
            self.max_trace,
            join(&self.argmin_classes),
            join(&self.argmax_classes),
            self.ok
        )
    }
}

/// Traces of all words of length `ell` by depth-first products.
fn for_each_trace(ell: u32, mut visit: impl FnMut(u64, u128)) {
    fn go(depth: u32, ell: u32, bits: u64, m: [u128; 4], visit: &mut impl FnMut(u64, u128)) {
        if depth == ell {
            visit(bits, m[0] + m[3]);
            return;
        }
        let [a, b, c, d] = m;
        go(depth + 1, ell, bits << 1, [a + b, b, c + d, d], visit);
        go(depth + 1, ell, bits << 1 | 1, [a, a + b, c, c + d], visit);
    }
    go(0, ell, 0, [1, 0, 0, 1], &mut visit);
}

fn word_of_bits(bits: u64, ell: u32) -> LUWord {
    LUWord::from_letters((0..ell).map(|j| if bits >> (ell - 1 - j) & 1 == 1 { Lu::U } else { Lu::L }))
}

pub fn trace_sweep(ell: u64, cap: u64) -> Result<SweepRow> {
    if ell > cap {
        return Err(Error::CapExceeded { name: "ell", value: ell, cap });
    }
    let expected_min = min_trace(ell)?;
    let expected_max = max_trace(ell)?;
    let n = ell as u32;
    let full = (1u64 << n) - 1;
    let mut hist = BTreeMap::new();
    let (mut lo, mut hi) = (u128::MAX, 0u128);
    let (mut at_lo, mut at_hi) = (Vec::new(), Vec::new());
    let mut length_ok = true;
    for_each_trace(n, |bits, tr| {
        if bits == 0 || bits == full {
            return;
        }
        *hist.entry(tr).or_insert(0u64) += 1;
        length_ok &= u128::from(ell) < tr;
        if tr < lo {
            lo = tr;
            at_lo.clear();
        }
        if tr == lo {
            at_lo.push(bits);
        }
        if tr > hi {
            hi = tr;
            at_hi.clear();
        }
        if tr == hi {
            at_hi.push(bits);
        }
    });
    let classes = |v: &[u64]| -> Vec<LUWord> {
        v.iter().map(|&b| cyclic_j_class(&word_of_bits(b, n))).collect::<BTreeSet<_>>().into_iter().collect()
    };
    let argmin_classes = classes(&at_lo);
    let argmax_classes = classes(&at_hi);
    let (min_word, _) = extremal_min(ell)?;
    let (max_word, _) = extremal_max(ell)?;
    let min_trace = BigUint::from(lo);
    let max_trace = BigUint::from(hi);
    let ok = length_ok
        && min_trace == expected_min
        && max_trace == expected_max
        && argmin_classes == [cyclic_j_class(&min_word)]
        && argmax_classes == [cyclic_j_class(&max_word)];
    Ok(SweepRow {
        ell,
        count_words: 1 << n,
        count_irreducible: (1 << n) - 2,
        min_trace,
        max_trace,
        argmin_classes,
        argmax_classes,
        trace_histogram: hist,
        ok,
    })
}

/// Outcome of one verification, with the first counterexample if any.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub check: &'static str,
    pub ok: bool,
    pub checked: u64,
    pub summary: String,
    pub counterexample: Option<String>,
}

impl Report {
    fn new(check: &'static str, checked: u64, summary: String, counterexample: Option<String>) -> Self {
        Report { check, ok: counterexample.is_none(), checked, summary, counterexample }
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{}: {} ({} checked) {}", self.check, if self.ok { "ok" } else { "FAILED" }, self.checked, self.summary);
        if let Some(c) = &self.counterexample {
            let _ = write!(s, "\n  counterexample: {c}");
        }
        s
    }
}

/// Distinctness of all products of length `1..=max_len`, and exact decomposition.
pub fn verify_free_monoid(max_len: u32) -> Report {
    let mut seen: HashSet<[u128; 4]> = HashSet::new();
    let mut checked = 0u64;
    let mut bad = None;
    for len in 1..=max_len {
        for w in enum_lu_words(len) {
            checked += 1;
            let m = matrix_of_lu(&w);
            let key = m.entries().clone().map(|e| u128::try_from(e).unwrap_or(u128::MAX));
            if !seen.insert(key) {
                bad.get_or_insert_with(|| format!("{w}: matrix {m} already produced"));
            }
            match lu_decompose(&m) {
                Ok(back) if back == w => {}
                Ok(back) => {
                    bad.get_or_insert_with(|| format!("{w}: decomposes to {back}"));
                }
                Err(e) => {
                    bad.get_or_insert_with(|| format!("{w}: {e}"));
                }
            }
        }
    }
    let summary = format!("{} distinct matrices, {} collisions", seen.len(), checked - seen.len() as u64);
    Report::new("free-monoid", checked, summary, bad)
}

/// `σ₁ σ₂^{−(T−2)}` is pseudo-Anosov of trace `T` for `3 ≤ T ≤ t_max`.
pub fn verify_spectrum(t_max: u64, cycling_cap: Option<usize>) -> Report {
    let mut bad = None;
    let mut checked = 0;
    for t in 3..=t_max {
        checked += 1;
        let mut letters = vec![1i8];
        letters.extend(std::iter::repeat_n(-2i8, (t - 2) as usize));
        let w = BraidWord::from_letters(letters);
        match classify(&w, cycling_cap) {
            Ok(NTClassification::PseudoAnosov { trace, dilatation, .. }) if trace == BigUint::from(t) => {
                let tf = t as f64;
                let expected = (tf + (tf * tf - 4.0).sqrt()) / 2.0;
                let rel = (dilatation.to_f64() - expected).abs() / expected;
                if rel > 1e-12 {
                    bad = Some(format!("T={t}: float {} vs {expected} (relative {rel:e})", dilatation.to_f64()));
                }
            }
            Ok(other) => {
                bad = Some(format!("T={t} word {w}: {} with matrix {:?}", other.kind(), other.matrix().map(|m| m.to_string())));
            }
            Err(e) => bad = Some(format!("T={t} word {w}: {e}")),
        }
        if bad.is_some() {
            break;
        }
    }
    Report::new("spectrum", checked, format!("traces 3..={t_max}, float within 1e-12 relative"), bad)
}

/// Rigid pseudo-Anosov tuples in Γ₁ form: graph-map matrix against the `L`/`U` product.
pub fn cross_check_han(max_ell: u64) -> Report {
    let mut checked = 0;
    let mut bad = None;
    'outer: for ell in 2..=max_ell {
        for w in enum_lu_words(ell as u32).filter(LUWord::has_both_letters) {
            for s in -1i64..=2 {
                let i = if s.rem_euclid(2) == 0 { 1 } else { 2 };
                let Ok(t) = GarsideTuple::new(s, i, w.runs().to_vec()) else { continue };
                if !is_rigid(&t) {
                    continue;
                }
                checked += 1;
                if let Err(msg) = han_case(&t) {
                    bad = Some(format!("{t}: {msg}"));
                    break 'outer;
                }
            }
        }
    }
    Report::new("han", checked, format!("rigid Γ₁-form tuples with ℓ ≤ {max_ell}"), bad)
}

fn han_case(t: &GarsideTuple) -> std::result::Result<(), String> {
    let (graph, m) = train_track_of_rigid(t).map_err(|e| e.to_string())?;
    if graph != TrackGraph::Gamma1 {
        return Err(format!("assigned {graph}"));
    }
    let f = map_of_word(&decode_tuple(t).to_word(), graph);
    let tm = transition_matrix(&f);
    if !tm.matches(&m) {
        return Err(format!("transition matrix {tm} but product {m}"));
    }
    let verdict = is_efficient(&f, 128);
    if verdict != EfficiencyVerdict::TrainTrack {
        return Err(verdict.to_string());
    }
    let measure = unstable_measure(&m).map_err(|e| e.to_string())?;
    if let Some(c) = switch_conditions(&f, &measure).iter().find(|c| !c.holds) {
        return Err(format!("switch condition fails at v{}", c.vertex));
    }
    Ok(())
}

/// Cycling shortens or rigidifies; super summit sets split into at most
/// two cycling orbits exchanged by τ.
pub fn verify_cycling_lemma(max_ell: u64) -> Report {
    let mut checked = 0;
    let mut bad = None;
    'outer: for ell in 2..=max_ell {
        for w in enum_lu_words(ell as u32) {
            for s in 0..=1 {
                for i in 1..=2 {
                    let Ok(t) = GarsideTuple::new(s, i, w.runs().to_vec()) else { continue };
                    checked += 1;
                    if let Err(msg) = cycling_case(&t) {
                        bad = Some(format!("{t}: {msg}"));
                        break 'outer;
                    }
                }
            }
        }
    }
    Report::new("cycling", checked, format!("tuples with 2 ≤ ℓ ≤ {max_ell}"), bad)
}

fn cycling_case(t: &GarsideTuple) -> std::result::Result<(), String> {
    let ell = t.canonical_length();
    if !is_rigid(t) {
        let c = cycle_once(&decode_tuple(t)).map_err(|e| e.to_string())?;
        if !(c.is_rigid() || (c.canonical_length() as u64) < ell) {
            return Err(format!("cycles to {c}, neither rigid nor shorter"));
        }
        return Ok(());
    }
    let sss = sss_orbit(t).map_err(|e| e.to_string())?;
    if sss.iter().any(|u| !is_rigid(u) || u.canonical_length() != ell) {
        return Err("super summit set contains a non-rigid or shorter element".into());
    }
    let orbits = cycling_orbits(&sss).map_err(|e| e.to_string())?;
    let tau_of = |o: &BTreeSet<GarsideTuple>| o.iter().map(GarsideTuple::tau).collect::<BTreeSet<_>>();
    match orbits.as_slice() {
        [o] if tau_of(o) == *o => Ok(()),
        [a, b] if tau_of(a) == *b => Ok(()),
        _ => Err(format!("{} cycling orbits", orbits.len())),
    }
}

fn random_word(rng: &mut ChaCha8Rng, min_len: usize, max_len: usize) -> BraidWord {
    const LETTERS: [i8; 4] = [1, -1, 2, -2];
    let n = rng.random_range(min_len..=max_len);
    BraidWord::from_letters((0..n).map(|_| LETTERS[rng.random_range(0..4)]).collect())
}

/// `w` is declared conjugate to `g⁻¹ w g` for random `w`, `g`.
pub fn verify_conjugacy_soundness(samples: u64, seed: u64, cycling_cap: Option<usize>) -> Report {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bad = None;
    for _ in 0..samples {
        let w = random_word(&mut rng, 1, 12);
        let g = random_word(&mut rng, 1, 8);
        let v = conjugate(&w, &g);
        match is_conjugate(&w, &v, cycling_cap) {
            Ok(true) => {}
            Ok(false) => bad = Some(format!("{w} and {v} (conjugator {g}) declared not conjugate")),
            Err(e) => bad = Some(format!("{w} and {v}: {e}")),
        }
        if bad.is_some() {
            break;
        }
    }
    Report::new("conjugacy", samples, format!("random conjugates, seed {seed}"), bad)
}

/// Pairs declared conjugate have equal Burau traces.
pub fn verify_conjugacy_invariant(samples: u64, seed: u64, cycling_cap: Option<usize>) -> Report {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut found = 0;
    let mut attempts = 0u64;
    let mut bad = None;
    while found < samples && attempts < samples.saturating_mul(500) {
        attempts += 1;
        let (w1, w2) = if attempts % 2 == 0 {
            (random_word(&mut rng, 1, 5), random_word(&mut rng, 1, 5))
        } else {
            let w = random_word(&mut rng, 1, 10);
            (w.clone(), conjugate(&w, &random_word(&mut rng, 1, 6)))
        };
        match is_conjugate(&w1, &w2, cycling_cap) {
            Ok(true) => {
                found += 1;
                let (a, b) = (burau_image(&w1).trace(), burau_image(&w2).trace());
                if a != b || a.eval_unit(-1) != b.eval_unit(-1) {
                    bad = Some(format!("{w1} ~ {w2} but Burau traces {a} and {b}"));
                    break;
                }
            }
            Ok(false) => {}
            Err(e) => {
                bad = Some(format!("{w1}, {w2}: {e}"));
                break;
            }
        }
    }
    if bad.is_none() && found < samples {
        bad = Some(format!("only {found} conjugate pairs found in {attempts} attempts"));
    }
    Report::new("burau-invariant", found, format!("declared-conjugate pairs, seed {seed}"), bad)
}

/// Random words have the same Burau matrix as their normal forms.
pub fn verify_normal_form_burau(samples: u64, max_len: usize, seed: u64) -> Report {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bad = None;
    for _ in 0..samples {
        let w = random_word(&mut rng, 0, max_len);
        let nf = normalize(&w);
        if !words_equal(&w, &nf.to_word()) {
            bad = Some(format!("{w} has normal form {nf} with a different Burau matrix"));
            break;
        }
    }
    Report::new("normal-form", samples, format!("random words of length ≤ {max_len}, seed {seed}"), bad)
}

/// Data of a classification that must not change under conjugation.
fn classification_key(c: &NTClassification) -> Result<(String, i64, Option<LUWord>, Option<BigUint>)> {
    let t = c.murasugi();
    Ok(match c {
        NTClassification::PseudoAnosov { trace, .. } => {
            (c.kind().into(), t.s(), Some(least_rotation(&lu_of_tuple(t)?)), Some(trace.clone()))
        }
        _ => (format!("{} {t}", c.kind()), t.s(), None, None),
    })
}

/// Type, Murasugi data and trace survive random conjugation.
pub fn verify_classify_invariance(samples: u64, seed: u64, cycling_cap: Option<usize>) -> Report {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bad = None;
    for _ in 0..samples {
        let w = random_word(&mut rng, 1, 20);
        let g = random_word(&mut rng, 1, 10);
        let v = conjugate(&w, &g);
        let keys = classify(&w, cycling_cap)
            .and_then(|c| classification_key(&c))
            .and_then(|a| Ok((a, classification_key(&classify(&v, cycling_cap)?)?)));
        match keys {
            Ok((a, b)) if a == b => {}
            Ok((a, b)) => bad = Some(format!("{w} gives {a:?} but its conjugate {v} gives {b:?}")),
            Err(e) => bad = Some(format!("{w} / {v}: {e}")),
        }
        if bad.is_some() {
            break;
        }
    }
    Report::new("classify-invariance", samples, format!("random conjugate pairs, seed {seed}"), bad)
}

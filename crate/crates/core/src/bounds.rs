//! Trace and dilatation bounds for rigid braids of canonical length ℓ.
//!
//! Every comparison is done on integer traces; φ only shows up as a float.

use std::cmp::Ordering;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::sl2::{dilatation_of_trace, LUWord, QuadraticValue};
use crate::words::{parse_word, BraidWord};

pub const PHI: f64 = 1.618_033_988_749_895;

/// Fast doubling: returns `(F(n), F(n+1))`.
fn fib_pair(n: u64) -> (BigUint, BigUint) {
    if n == 0 {
        return (BigUint::zero(), BigUint::one());
    }
    let (a, b) = fib_pair(n / 2);
    let c = &a * ((&b << 1u32) - &a);
    let d = &a * &a + &b * &b;
    if n % 2 == 0 {
        (c, d)
    } else {
        let e = &c + &d;
        (d, e)
    }
}

pub fn fib(n: u64) -> BigUint {
    fib_pair(n).0
}

fn check(ell: u64) -> Result<()> {
    if ell < 2 {
        Err(Error::EllTooSmall(ell))
    } else {
        Ok(())
    }
}

pub fn min_trace(ell: u64) -> Result<BigUint> {
    check(ell)?;
    Ok(BigUint::from(ell + 1))
}

/// `F_{ℓ−1} + F_{ℓ+1}` for even ℓ, `2 F_ℓ` for odd ℓ.
pub fn max_trace(ell: u64) -> Result<BigUint> {
    check(ell)?;
    Ok(if ell % 2 == 0 { fib(ell - 1) + fib(ell + 1) } else { fib(ell) << 1u32 })
}

/// `L U^{ℓ−1}` and `σ₁ σ₂^{−(ℓ−1)}`.
pub fn extremal_min(ell: u64) -> Result<(LUWord, BraidWord)> {
    check(ell)?;
    let braid = parse_word(&format!("a{}", "B".repeat(ell as usize - 1)))?;
    Ok((LUWord::from_runs(&[(1, ell - 1)]), braid))
}

/// `(LU)^{ℓ/2}` with `(σ₁σ₂⁻¹)^{ℓ/2}`, or `(LU)^{(ℓ−1)/2} L` with `(σ₁σ₂⁻¹)^{(ℓ−1)/2} σ₁`.
pub fn extremal_max(ell: u64) -> Result<(LUWord, BraidWord)> {
    check(ell)?;
    let half = (ell / 2) as usize;
    let mut runs = vec![(1, 1); half];
    let mut braid = "aB".repeat(half);
    if ell % 2 == 1 {
        runs.push((1, 0));
        braid.push('a');
    }
    Ok((LUWord::from_runs(&runs), parse_word(&braid)?))
}

pub fn lower_bound_lambda(ell: u64) -> Result<QuadraticValue> {
    dilatation_of_trace(&min_trace(ell)?)
}

#[derive(Debug, Clone, PartialEq)]
pub struct UpperBound {
    pub lambda: QuadraticValue,
    /// φ^ℓ, for even ℓ.
    pub phi_power: Option<f64>,
    /// `(2F_ℓ − 1, 2F_ℓ)`, for odd ℓ.
    pub bracket: Option<(BigUint, BigUint)>,
}

pub fn upper_bound_lambda(ell: u64) -> Result<UpperBound> {
    let lambda = dilatation_of_trace(&max_trace(ell)?)?;
    let (phi_power, bracket) = if ell % 2 == 0 {
        (Some(PHI.powi(ell as i32)), None)
    } else {
        let two_f = fib(ell) << 1u32;
        (None, Some((&two_f - 1u32, two_f)))
    };
    Ok(UpperBound { lambda, phi_power, bracket })
}

/// `2F_ℓ − 1 < λ < 2F_ℓ`, decided by the sign of `n² − T n + 1`.
pub fn odd_bracket_holds(ell: u64) -> Result<bool> {
    let ub = upper_bound_lambda(ell)?;
    let Some((lo, hi)) = ub.bracket else { return Ok(true) };
    Ok(ub.lambda.cmp_integer(&lo) == Ordering::Greater && ub.lambda.cmp_integer(&hi) == Ordering::Less)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundsReport {
    pub ell: u64,
    #[serde(serialize_with = "crate::ser::big")]
    pub min_trace: BigUint,
    #[serde(serialize_with = "crate::ser::big")]
    pub max_trace: BigUint,
    pub lower_lambda: QuadraticValue,
    pub upper_lambda: QuadraticValue,
    pub lower_closed_form: String,
    pub upper_closed_form: String,
    pub phi_power: Option<f64>,
    #[serde(serialize_with = "ser_bracket")]
    pub upper_bracket: Option<(BigUint, BigUint)>,
    #[serde(serialize_with = "crate::ser::display")]
    pub argmin_word: LUWord,
    #[serde(serialize_with = "crate::ser::display")]
    pub argmax_word: LUWord,
    #[serde(serialize_with = "crate::ser::display")]
    pub argmin_braid: BraidWord,
    #[serde(serialize_with = "crate::ser::display")]
    pub argmax_braid: BraidWord,
}

fn ser_bracket<S: serde::Serializer>(v: &Option<(BigUint, BigUint)>, s: S) -> std::result::Result<S::Ok, S::Error> {
    use crate::ser::RawNumber;
    match v {
        Some((a, b)) => [RawNumber(a.to_string()), RawNumber(b.to_string())].serialize(s),
        None => s.serialize_none(),
    }
}

pub const CSV_HEADER: &str = "ell,min_trace,max_trace,lower_lambda,upper_lambda,argmin_word,argmax_word";

impl BoundsReport {
    pub fn new(ell: u64, digits: u32) -> Result<Self> {
        let (argmin_word, argmin_braid) = extremal_min(ell)?;
        let (argmax_word, argmax_braid) = extremal_max(ell)?;
        let upper = upper_bound_lambda(ell)?;
        let lower = lower_bound_lambda(ell)?.with_digits(digits);
        Ok(BoundsReport {
            ell,
            min_trace: min_trace(ell)?,
            max_trace: max_trace(ell)?,
            lower_closed_form: lower.closed_form(),
            upper_closed_form: upper.lambda.closed_form(),
            lower_lambda: lower,
            upper_lambda: upper.lambda.with_digits(digits),
            phi_power: upper.phi_power,
            upper_bracket: upper.bracket,
            argmin_word,
            argmax_word,
            argmin_braid,
            argmax_braid,
        })
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.ell,
            self.min_trace,
            self.max_trace,
            self.lower_lambda.rendered(),
            self.upper_lambda.rendered(),
            self.argmin_word,
            self.argmax_word
        )
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "ell: {}\nmin trace: {}\nmax trace: {}\nlower lambda: {}\nupper lambda: {}\n",
            self.ell, self.min_trace, self.max_trace, self.lower_lambda, self.upper_lambda
        );
        if let Some(p) = self.phi_power {
            out += &format!("phi^{}: {:.*}\n", self.ell, self.upper_lambda.digits() as usize, p);
        }
        if let Some((lo, hi)) = &self.upper_bracket {
            out += &format!("bracket: {lo} < lambda < {hi}\n");
        }
        out += &format!(
            "argmin: {} (braid {})\nargmax: {} (braid {})\n",
            self.argmin_word, self.argmin_braid, self.argmax_word, self.argmax_braid
        );
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::garside::{classify, murasugi_rep, NTClassification};
    use crate::sl2::{cyclic_equivalent, lu_of_tuple, matrix_of_lu, SL2Matrix};

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn fibonacci() {
        assert_eq!(fib(0), big(0));
        assert_eq!(fib(1), big(1));
        assert_eq!(fib(10), big(55));
        let f90 = fib(90);
        assert_eq!(f90.to_string(), "2880067194370816120");
        for n in 1..60 {
            assert_eq!(fib(n + 1), fib(n) + fib(n - 1));
            assert_eq!(fib(2 * n), fib(n) * ((fib(n + 1) << 1u32) - fib(n)));
        }
    }

    #[test]
    fn minima() {
        assert_eq!(min_trace(5).unwrap(), big(6));
        let (w, _) = extremal_min(5).unwrap();
        assert_eq!(matrix_of_lu(&w), SL2Matrix::from_u64(1, 4, 1, 5).unwrap());
        let (w2, b2) = extremal_min(2).unwrap();
        assert_eq!(b2.to_string(), "aB");
        assert_eq!(murasugi_rep(&b2, None).unwrap().to_string(), "(-1; 2; 1,1)");
        assert_eq!(matrix_of_lu(&w2).trace(), big(3));
        assert_eq!(min_trace(1), Err(Error::EllTooSmall(1)));
        assert!(extremal_max(0).is_err());
    }

    #[test]
    fn maxima() {
        let (w4, _) = extremal_max(4).unwrap();
        assert_eq!(matrix_of_lu(&w4), SL2Matrix::from_u64(2, 3, 3, 5).unwrap());
        assert_eq!(max_trace(4).unwrap(), big(7));
        let (w5, b5) = extremal_max(5).unwrap();
        assert_eq!(matrix_of_lu(&w5), SL2Matrix::from_u64(5, 3, 8, 5).unwrap());
        assert_eq!(max_trace(5).unwrap(), big(10));
        assert_eq!(b5.to_string(), "aBaBa");
        assert_eq!(max_trace(2).unwrap(), min_trace(2).unwrap());
        assert_eq!(max_trace(3).unwrap(), min_trace(3).unwrap());
        for ell in 4..40 {
            assert!(max_trace(ell).unwrap() > min_trace(ell).unwrap());
        }
    }

    #[test]
    fn lambda_bounds() {
        assert_eq!(lower_bound_lambda(2).unwrap(), upper_bound_lambda(2).unwrap().lambda);
        assert!((upper_bound_lambda(2).unwrap().lambda.to_f64() - PHI * PHI).abs() < 1e-12);
        let u4 = upper_bound_lambda(4).unwrap();
        assert_eq!(u4.lambda.render(10), "6.8541019662");
        assert!((u4.phi_power.unwrap() - 6.854_101_966_2).abs() < 1e-9);
        let u5 = upper_bound_lambda(5).unwrap();
        assert_eq!(u5.lambda.closed_form(), "5+sqrt(24)");
        assert_eq!(u5.bracket, Some((big(9), big(10))));
        for ell in 2..60 {
            assert!(odd_bracket_holds(ell).unwrap());
            let l = ell + 1;
            assert_eq!(lower_bound_lambda(ell).unwrap().discriminant(), big((l + 2) * (l - 2)));
        }
    }

    #[test]
    fn fibonacci_matrices() {
        for m in 1..=20u64 {
            let (w, _) = extremal_max(2 * m).unwrap();
            let mat = matrix_of_lu(&w);
            let f = |k| fib(k);
            let expect = SL2Matrix::new(f(2 * m - 1), f(2 * m), f(2 * m), f(2 * m + 1)).unwrap();
            assert_eq!(mat, expect);
            assert_eq!(mat.trace(), fib(2 * m - 1) + fib(2 * m + 1));
        }
    }

    #[test]
    fn extremal_braids_are_pseudo_anosov() {
        for ell in 2..=12 {
            for (w, b, expect) in [
                (extremal_min(ell).unwrap().0, extremal_min(ell).unwrap().1, min_trace(ell).unwrap()),
                (extremal_max(ell).unwrap().0, extremal_max(ell).unwrap().1, max_trace(ell).unwrap()),
            ] {
                match classify(&b, None).unwrap() {
                    NTClassification::PseudoAnosov { trace, murasugi, .. } => {
                        assert_eq!(trace, expect, "ell {ell}");
                        assert!(cyclic_equivalent(&lu_of_tuple(&murasugi).unwrap(), &w), "ell {ell}");
                    }
                    other => panic!("{other:?}"),
                }
            }
        }
    }

    #[test]
    fn report_rows() {
        let r = BoundsReport::new(5, 6).unwrap();
        assert_eq!(r.csv_row(), "5,6,10,5.828427,9.898979,LUUUU,LULUL");
        let json = serde_json::to_string(&r).unwrap();
        assert!(json.contains("\"upper_bracket\":[9,10]"));
        assert!(json.contains("\"max_trace\":10"));
    }
}

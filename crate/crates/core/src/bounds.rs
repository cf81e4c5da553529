//! Closed-form bound evaluators in log base 2, plus the exact big-integer
//! helpers the soundness checks compare them against.
//!
//! Vacuously-zero bounds evaluate to `-inf` rather than erroring so callers
//! can minimise over candidate bounds.

use crate::error::ErrorClass;
use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use statrs::function::gamma::ln_gamma;
use thiserror::Error;

const LN_2: f64 = std::f64::consts::LN_2;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BoundsError {
    #[error("precondition violated: {0}")]
    Precondition(&'static str),
}

impl BoundsError {
    pub fn class(&self) -> ErrorClass {
        ErrorClass::Input
    }
}

/// A real-valued bound in log base 2 with a label naming the result it
/// evaluates and the substituted parameters.
#[derive(Clone, Debug)]
pub struct LogBound {
    pub log2_value: f64,
    pub provenance: &'static str,
    pub params: Vec<(&'static str, f64)>,
}

impl LogBound {
    pub fn new(provenance: &'static str, params: Vec<(&'static str, f64)>, log2_value: f64) -> Self {
        LogBound {
            log2_value,
            provenance,
            params,
        }
    }

    /// `provenance,params,log2_value` with space-joined `k=v` params.
    /// Integer-valued params print plain; everything else gets 12
    /// significant digits.
    pub fn csv_row(&self) -> String {
        let params = self
            .params
            .iter()
            .map(|(k, v)| {
                if v.fract() == 0.0 && v.abs() < 1e15 {
                    format!("{k}={}", *v as i64)
                } else {
                    format!("{k}={}", format_sig(*v, 12))
                }
            })
            .collect::<Vec<_>>()
            .join(" ");
        format!("{},{},{}", self.provenance, params, format_sig(self.log2_value, 12))
    }
}

/// `log2` of the generalized binomial coefficient `C(a, b)` via log-gamma;
/// `-inf` when `a < b`.
pub fn log2_binomial(a: f64, b: usize) -> f64 {
    let bf = b as f64;
    if a < bf {
        return f64::NEG_INFINITY;
    }
    if b == 0 {
        return 0.0;
    }
    (ln_gamma(a + 1.0) - ln_gamma(bf + 1.0) - ln_gamma(a - bf + 1.0)) / LN_2
}

/// `log2(2^a + 2^b)` without leaving log space.
pub fn log2_add(a: f64, b: f64) -> f64 {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    if lo == f64::NEG_INFINITY {
        return hi;
    }
    hi + (1.0 + (lo - hi).exp2()).log2()
}

/// Exact binomial coefficient.
pub fn big_binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// `log2` of a positive big integer to f64 precision; `-inf` for zero.
pub fn log2_biguint(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 53 {
        return x.to_f64().expect("fits in f64").log2();
    }
    let shift = bits - 53;
    let top = (x >> shift).to_f64().expect("53 bits fit in f64");
    top.log2() + shift as f64
}

/// Formats `x` with the given number of significant digits (scientific
/// notation), the fixed float format of all CSV output.
pub fn format_sig(x: f64, sig: usize) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x == f64::INFINITY {
        return "inf".into();
    }
    if x == f64::NEG_INFINITY {
        return "-inf".into();
    }
    format!("{:.*e}", sig.saturating_sub(1), x)
}

/// The trivial sandwich on the independent-set count: returns
/// `(alpha, log2 sum_{m<=alpha} C(n,m))`, the exponents of the lower and
/// upper bounds implied by an independence number of `alpha`.
pub fn sandwich_bounds(alpha: usize, n: usize) -> (f64, f64) {
    assert!(alpha <= n, "alpha must be at most n");
    let mut sum = BigUint::zero();
    for m in 0..=alpha {
        sum += big_binomial(n as u64, m as u64);
    }
    (alpha as f64, log2_biguint(&sum))
}

/// Sapozhenko's regular-graph bound exponent `(1 + C sqrt(ln d / d)) n/2`.
pub fn sapozhenko_bound(n: u64, d: u64, c: f64) -> Result<LogBound, BoundsError> {
    if d < 2 {
        return Err(BoundsError::Precondition("sapozhenko bound needs d >= 2"));
    }
    let df = d as f64;
    let value = (1.0 + c * (df.ln() / df).sqrt()) * n as f64 / 2.0;
    Ok(LogBound::new(
        "sapozhenko",
        vec![("n", n as f64), ("d", df), ("C", c)],
        value,
    ))
}

/// The Kahn--Zhao bound exponent `(n / 2d) log2(2^{d+1} - 1)`.
pub fn kahn_zhao_bound(n: u64, d: u64) -> Result<LogBound, BoundsError> {
    if d < 1 {
        return Err(BoundsError::Precondition("kahn-zhao bound needs d >= 1"));
    }
    let log2_kdd = (d + 1) as f64 + (1.0 - 0.5f64.powi(d as i32 + 1)).log2();
    let value = n as f64 / (2.0 * d as f64) * log2_kdd;
    Ok(LogBound::new(
        "kahn-zhao",
        vec![("n", n as f64), ("d", d as f64)],
        value,
    ))
}

/// Exact form of the Kahn--Zhao comparison: `i^{2d} <= (2^{d+1} - 1)^n` in
/// big integers, avoiding any float ambiguity.
pub fn kahn_zhao_dominates(independent_count: &BigUint, n: u64, d: u64) -> bool {
    let lhs = independent_count.pow(2 * d as u32);
    let base = (BigUint::one() << (d + 1)) - BigUint::one();
    let rhs = base.pow(n as u32);
    lhs <= rhs
}

/// The `C n^{3/2}` exponent bounding the number of labeled C4-free graphs.
pub fn c4_count_bound(n: u64, c: f64) -> LogBound {
    LogBound::new(
        "kleitman-winston-c4",
        vec![("n", n as f64), ("C", c)],
        c * (n as f64).powf(1.5),
    )
}

/// `log2 C(eps n, m)`, the container-method bound on the number of m-element
/// subsets of `[n]` with no 3-term AP.
pub fn three_ap_free_count_bound(n: u64, m: usize, epsilon: f64) -> Result<LogBound, BoundsError> {
    if !(epsilon > 0.0 && epsilon <= 1.0) {
        return Err(BoundsError::Precondition("epsilon must lie in (0, 1]"));
    }
    Ok(LogBound::new(
        "ap-free-count",
        vec![("n", n as f64), ("m", m as f64), ("epsilon", epsilon)],
        log2_binomial(epsilon * n as f64, m),
    ))
}

/// Both forms of the failure-probability bound for the random delta-Roth
/// experiment: the binomial chain and its simplified value `-delta m`.
#[derive(Clone, Debug)]
pub struct RothFailureBound {
    pub chain: LogBound,
    pub simplified: LogBound,
}

/// Evaluates `log2 [ C(eps n, ceil(delta m)) (m/n)^{ceil(delta m)} ]` together
/// with the simplified exponent `-delta m`. The intended instantiation is
/// `epsilon = delta / 6`.
pub fn delta_roth_failure_bound(n: u64, m: u64, delta: f64, epsilon: f64) -> RothFailureBound {
    let t = (delta * m as f64).ceil() as usize;
    let chain_value = log2_binomial(epsilon * n as f64, t)
        + t as f64 * (m as f64 / n as f64).log2();
    let params = vec![
        ("n", n as f64),
        ("m", m as f64),
        ("delta", delta),
        ("epsilon", epsilon),
    ];
    RothFailureBound {
        chain: LogBound::new("roth-failure-chain", params.clone(), chain_value),
        simplified: LogBound::new("roth-failure-simplified", params, -delta * m as f64),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b}");
    }

    #[test]
    fn log2_binomial_small_cases() {
        assert_close(log2_binomial(10.0, 2), 45f64.log2(), 1e-12);
        assert_eq!(log2_binomial(7.3, 0), 0.0);
        assert_eq!(log2_binomial(3.0, 5), f64::NEG_INFINITY);
        // Gamma recurrence: C(5.5, 2) = 5.5 * 4.5 / 2.
        assert_close(log2_binomial(5.5, 2), (5.5 * 4.5 / 2.0f64).log2(), 1e-12);
    }

    #[test]
    fn log2_binomial_matches_exact_up_to_60() {
        for a in 0..=60u64 {
            for b in 0..=a {
                let exact = log2_biguint(&big_binomial(a, b));
                assert_close(log2_binomial(a as f64, b as usize), exact, 1e-9);
            }
        }
    }

    #[test]
    fn log2_add_basics() {
        assert_close(log2_add(3.0, 3.0), 4.0, 1e-12);
        assert_close(log2_add(10.0, f64::NEG_INFINITY), 10.0, 0.0);
        assert_close(log2_add(0.0, 1.0), 3f64.log2(), 1e-12);
    }

    #[test]
    fn big_binomial_values() {
        assert_eq!(big_binomial(10, 2), BigUint::from(45u32));
        assert_eq!(big_binomial(10, 0), BigUint::one());
        assert_eq!(big_binomial(4, 7), BigUint::zero());
        assert_eq!(big_binomial(60, 30).to_string(), "118264581564861424");
    }

    #[test]
    fn log2_biguint_large() {
        let x = BigUint::one() << 200;
        assert_close(log2_biguint(&x), 200.0, 1e-9);
        assert_eq!(log2_biguint(&BigUint::zero()), f64::NEG_INFINITY);
    }

    #[test]
    fn sandwich_degenerate_cases() {
        assert_eq!(sandwich_bounds(0, 7), (0.0, 0.0));
        let (lo, hi) = sandwich_bounds(7, 7);
        assert_eq!(lo, 7.0);
        assert_close(hi, 7.0, 1e-12);
        let (lo, hi) = sandwich_bounds(2, 4);
        assert_eq!(lo, 2.0);
        assert_close(hi, 11f64.log2(), 1e-12);
    }

    #[test]
    fn sapozhenko_cases() {
        assert!(matches!(
            sapozhenko_bound(10, 1, 1.0),
            Err(BoundsError::Precondition(_))
        ));
        assert_close(sapozhenko_bound(100, 16, 0.0).unwrap().log2_value, 50.0, 1e-12);
        let expect = 50.0 * (1.0 + (16f64.ln() / 16.0).sqrt());
        assert_close(sapozhenko_bound(100, 16, 1.0).unwrap().log2_value, expect, 1e-12);
        // Decreasing in d past the maximum of sqrt(ln d / d).
        let mut prev = sapozhenko_bound(100, 3, 1.0).unwrap().log2_value;
        for d in 4..100 {
            let cur = sapozhenko_bound(100, d, 1.0).unwrap().log2_value;
            assert!(cur < prev, "not decreasing at d={d}");
            prev = cur;
        }
    }

    #[test]
    fn kahn_zhao_cases() {
        assert_close(kahn_zhao_bound(2, 1).unwrap().log2_value, 3f64.log2(), 1e-12);
        // n = 2d reduces to log2(2^{d+1} - 1).
        for d in 1..=8u64 {
            let v = kahn_zhao_bound(2 * d, d).unwrap().log2_value;
            let expect = (((1u64 << (d + 1)) - 1) as f64).log2();
            assert_close(v, expect, 1e-12);
        }
    }

    #[test]
    fn kahn_zhao_exact_comparison() {
        // i = 2^{d+1} - 1 at n = 2d is the equality case.
        for d in 1..=8u64 {
            let i = (BigUint::one() << (d + 1)) - BigUint::one();
            assert!(kahn_zhao_dominates(&i, 2 * d, d));
            let too_big = &i + BigUint::one();
            assert!(!kahn_zhao_dominates(&too_big, 2 * d, d));
        }
    }

    #[test]
    fn c4_count_bound_case() {
        assert_close(c4_count_bound(4, 1.0).log2_value, 8.0, 1e-12);
    }

    #[test]
    fn ap_free_count_bound_cases() {
        assert_eq!(three_ap_free_count_bound(10, 3, 0.0).unwrap_err().class(), ErrorClass::Input);
        assert_close(three_ap_free_count_bound(20, 0, 0.5).unwrap().log2_value, 0.0, 0.0);
        assert_close(
            three_ap_free_count_bound(20, 4, 0.5).unwrap().log2_value,
            210f64.log2(),
            1e-9,
        );
        // Increasing in epsilon.
        let mut prev = f64::NEG_INFINITY;
        for k in 4..=10 {
            let v = three_ap_free_count_bound(20, 4, k as f64 / 10.0)
                .unwrap()
                .log2_value;
            assert!(v >= prev);
            prev = v;
        }
    }

    #[test]
    fn roth_failure_bound_cases() {
        let b = delta_roth_failure_bound(100, 50, 0.6, 0.1);
        assert_eq!(b.simplified.log2_value, -30.0);
        // The proof's last step: the chain is below the simplified form when
        // (eps e n / t) (m / n) <= 1/2.
        let t = (0.6f64 * 50.0).ceil();
        let factor: f64 = 0.1 * std::f64::consts::E * 100.0 / t * (50.0 / 100.0);
        assert!(factor <= 0.5);
        assert!(b.chain.log2_value <= b.simplified.log2_value + 1e-9);
    }

    #[test]
    fn format_sig_output() {
        assert_eq!(format_sig(45.0, 12), "4.50000000000e1");
        assert_eq!(format_sig(f64::NEG_INFINITY, 12), "-inf");
        assert_eq!(format_sig(0.0, 12), "0.00000000000e0");
    }
}

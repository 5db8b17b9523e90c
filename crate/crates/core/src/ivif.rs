//! Interval-valued intuitionistic fuzzy numbers.
//!
//! An [`Ivifn`] carries a membership interval `[lm, rm]` and a
//! non-membership interval `[ln, rn]`, both inside `[0, 1]`, with
//! `rm + rn <= 1`. The residual `[1 - rm - rn, 1 - lm - ln]` is the
//! hesitancy interval. All operations are pure; values are immutable.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance under which two reals are treated as equal for branch and
/// ordering decisions. The pipeline composes products of rounded inputs,
/// so exact float equality would be brittle.
pub const TIE_TOL: f64 = 1e-9;

/// Interval-valued intuitionistic fuzzy number `([lm, rm], [ln, rn])`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 4]", into = "[f64; 4]")]
pub struct Ivifn {
    lm: f64,
    rm: f64,
    ln: f64,
    rn: f64,
}

/// Hesitancy interval `[1 - rm - rn, 1 - lm - ln]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HesitancyInterval {
    pub lo: f64,
    pub hi: f64,
}

impl Ivifn {
    /// Largest element: full membership, no non-membership.
    pub const MAX: Ivifn = Ivifn {
        lm: 1.0,
        rm: 1.0,
        ln: 0.0,
        rn: 0.0,
    };

    /// Smallest element: no membership, full non-membership.
    pub const MIN: Ivifn = Ivifn {
        lm: 0.0,
        rm: 0.0,
        ln: 1.0,
        rn: 1.0,
    };

    /// Validating constructor. Rejects (never clamps) violations so that
    /// data-entry errors in expert matrices surface immediately.
    pub fn new(lm: f64, rm: f64, ln: f64, rn: f64) -> Result<Self> {
        let fail = |reason: &str| Error::InvalidIvifn {
            lm,
            rm,
            ln,
            rn,
            reason: reason.to_string(),
        };
        for v in [lm, rm, ln, rn] {
            if !v.is_finite() || !(0.0..=1.0).contains(&v) {
                return Err(fail("every bound must lie in [0, 1]"));
            }
        }
        if lm > rm {
            return Err(fail("membership bounds must satisfy lm <= rm"));
        }
        if ln > rn {
            return Err(fail("non-membership bounds must satisfy ln <= rn"));
        }
        if rm + rn > 1.0 {
            return Err(fail("upper bounds must satisfy rm + rn <= 1"));
        }
        Ok(Ivifn { lm, rm, ln, rn })
    }

    /// Constructor for arithmetic results. The operations in this crate
    /// preserve the invariants mathematically; rounding can only drift by
    /// a few ulp, which the debug assertion tolerates.
    pub(crate) fn from_ops(lm: f64, rm: f64, ln: f64, rn: f64) -> Self {
        debug_assert!(
            (-1e-9..=1.0 + 1e-9).contains(&lm)
                && lm <= rm + 1e-9
                && ln <= rn + 1e-9
                && rm + rn <= 1.0 + 1e-9,
            "operation produced out-of-range value ([{lm}, {rm}], [{ln}, {rn}])"
        );
        Ivifn { lm, rm, ln, rn }
    }

    pub fn lm(&self) -> f64 {
        self.lm
    }

    pub fn rm(&self) -> f64 {
        self.rm
    }

    pub fn ln(&self) -> f64 {
        self.ln
    }

    pub fn rn(&self) -> f64 {
        self.rn
    }

    /// Bounds in `(lm, rm, ln, rn)` order.
    pub fn bounds(&self) -> [f64; 4] {
        [self.lm, self.rm, self.ln, self.rn]
    }

    /// Swap membership and non-membership intervals.
    pub fn complement(self) -> Self {
        Ivifn {
            lm: self.ln,
            rm: self.rn,
            ln: self.lm,
            rn: self.rm,
        }
    }

    /// Probabilistic sum on memberships, product on non-memberships.
    /// Not plain interval addition, so no `std::ops::Add` overload.
    #[allow(clippy::should_implement_trait)]
    pub fn add(self, other: Self) -> Self {
        Ivifn::from_ops(
            self.lm + other.lm - self.lm * other.lm,
            self.rm + other.rm - self.rm * other.rm,
            self.ln * other.ln,
            self.rn * other.rn,
        )
    }

    /// Product on memberships, probabilistic sum on non-memberships.
    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, other: Self) -> Self {
        Ivifn::from_ops(
            self.lm * other.lm,
            self.rm * other.rm,
            self.ln + other.ln - self.ln * other.ln,
            self.rn + other.rn - self.rn * other.rn,
        )
    }

    /// Componentwise max on memberships, min on non-memberships.
    pub fn join(self, other: Self) -> Self {
        Ivifn::from_ops(
            self.lm.max(other.lm),
            self.rm.max(other.rm),
            self.ln.min(other.ln),
            self.rn.min(other.rn),
        )
    }

    /// Componentwise min on memberships, max on non-memberships.
    pub fn meet(self, other: Self) -> Self {
        Ivifn::from_ops(
            self.lm.min(other.lm),
            self.rm.min(other.rm),
            self.ln.max(other.ln),
            self.rn.max(other.rn),
        )
    }

    /// Scalar multiple: `([1-(1-lm)^k, 1-(1-rm)^k], [ln^k, rn^k])`, `k > 0`.
    pub fn scale(self, k: f64) -> Result<Self> {
        if k.is_nan() || k <= 0.0 {
            return Err(Error::NonPositiveExponent(k));
        }
        Ok(Ivifn::from_ops(
            1.0 - (1.0 - self.lm).powf(k),
            1.0 - (1.0 - self.rm).powf(k),
            self.ln.powf(k),
            self.rn.powf(k),
        ))
    }

    /// Scalar power: `([lm^k, rm^k], [1-(1-ln)^k, 1-(1-rn)^k])`, `k > 0`.
    pub fn power(self, k: f64) -> Result<Self> {
        if k.is_nan() || k <= 0.0 {
            return Err(Error::NonPositiveExponent(k));
        }
        Ok(Ivifn::from_ops(
            self.lm.powf(k),
            self.rm.powf(k),
            1.0 - (1.0 - self.ln).powf(k),
            1.0 - (1.0 - self.rn).powf(k),
        ))
    }

    /// Hesitancy interval `[1 - rm - rn, 1 - lm - ln]`.
    pub fn hesitancy(self) -> HesitancyInterval {
        HesitancyInterval {
            lo: 1.0 - self.rm - self.rn,
            hi: 1.0 - self.lm - self.ln,
        }
    }

    /// Weighted-cross score in `[-1, 1]`; larger means a bigger number.
    pub fn score_wc(self) -> f64 {
        ((self.lm + self.rm) * (self.lm + self.ln) - (self.ln + self.rn) * (self.rm + self.rn))
            / 2.0
    }

    /// Weighted-cross accuracy, the tie-breaker companion of [`score_wc`].
    ///
    /// [`score_wc`]: Ivifn::score_wc
    pub fn accuracy_wc(self) -> f64 {
        ((1.0 - self.lm + self.rm) * (1.0 - self.lm - self.ln)
            + (1.0 - self.ln + self.rn) * (1.0 - self.rm - self.rn))
            / 2.0
    }

    /// Plain score `(lm - ln + rm - rn) / 2` in `[-1, 1]`.
    pub fn score_simple(self) -> f64 {
        (self.lm - self.ln + self.rm - self.rn) / 2.0
    }

    /// Plain accuracy `(lm + ln + rm + rn) / 2` in `[0, 1]`.
    pub fn accuracy_simple(self) -> f64 {
        (self.lm + self.ln + self.rm + self.rn) / 2.0
    }

    /// Total order: score first, accuracy breaks ties (both within
    /// [`TIE_TOL`]).
    pub fn compare(&self, other: &Self) -> Ordering {
        match cmp_tol(self.score_wc(), other.score_wc()) {
            Ordering::Equal => cmp_tol(self.accuracy_wc(), other.accuracy_wc()),
            ord => ord,
        }
    }

    /// Mean absolute difference of the four bounds.
    pub fn dist_hamming(self, other: Self) -> f64 {
        let d = self.abs_diffs(other);
        0.25 * (d[0] + d[1] + d[2] + d[3])
    }

    /// Half the largest absolute bound difference.
    pub fn dist_hausdorff(self, other: Self) -> f64 {
        0.5 * max4(self.abs_diffs(other))
    }

    /// Sum of the Hamming and Hausdorff distances; at most 1.5.
    pub fn dist_hybrid(self, other: Self) -> f64 {
        let d = self.abs_diffs(other);
        0.25 * (d[0] + d[1] + d[2] + d[3]) + 0.5 * max4(d)
    }

    fn abs_diffs(self, other: Self) -> [f64; 4] {
        [
            (self.lm - other.lm).abs(),
            (self.rm - other.rm).abs(),
            (self.ln - other.ln).abs(),
            (self.rn - other.rn).abs(),
        ]
    }
}

/// Compare two reals with the shared tie tolerance.
pub fn cmp_tol(a: f64, b: f64) -> Ordering {
    if (a - b).abs() <= TIE_TOL {
        Ordering::Equal
    } else if a > b {
        Ordering::Greater
    } else {
        Ordering::Less
    }
}

fn max4(d: [f64; 4]) -> f64 {
    d[0].max(d[1]).max(d[2]).max(d[3])
}

impl TryFrom<[f64; 4]> for Ivifn {
    type Error = Error;

    fn try_from(v: [f64; 4]) -> Result<Self> {
        Ivifn::new(v[0], v[1], v[2], v[3])
    }
}

impl From<Ivifn> for [f64; 4] {
    fn from(x: Ivifn) -> [f64; 4] {
        x.bounds()
    }
}

impl std::fmt::Display for Ivifn {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "([{}, {}], [{}, {}])",
            self.lm, self.rm, self.ln, self.rn
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn iv(lm: f64, rm: f64, ln: f64, rn: f64) -> Ivifn {
        Ivifn::new(lm, rm, ln, rn).unwrap()
    }

    #[test]
    fn constructor_rejects_violations() {
        assert!(Ivifn::new(0.6, 0.5, 0.1, 0.2).is_err()); // lm > rm
        assert!(Ivifn::new(0.1, 0.2, 0.6, 0.5).is_err()); // ln > rn
        assert!(Ivifn::new(0.5, 0.7, 0.2, 0.4).is_err()); // rm + rn > 1
        assert!(Ivifn::new(-0.1, 0.2, 0.1, 0.2).is_err());
        assert!(Ivifn::new(0.1, 0.2, 0.1, f64::NAN).is_err());
        assert!(Ivifn::new(0.5, 0.6, 0.25, 0.3).is_ok());
    }

    #[test]
    fn complement_swaps_and_involutes() {
        let x = iv(0.50, 0.60, 0.25, 0.30);
        assert_eq!(x.complement(), iv(0.25, 0.30, 0.50, 0.60));
        assert_eq!(x.complement().complement(), x);
        assert_eq!(Ivifn::MAX.complement(), Ivifn::MIN);
    }

    #[test]
    fn min_is_additive_identity() {
        let x = iv(0.3, 0.4, 0.2, 0.5);
        assert_eq!(x.add(Ivifn::MIN), x);
    }

    #[test]
    fn unit_exponents_are_identity() {
        let x = iv(0.3, 0.4, 0.2, 0.5);
        for (got, want) in x.scale(1.0).unwrap().bounds().iter().zip(x.bounds()) {
            assert_abs_diff_eq!(got, &want, epsilon = 1e-15);
        }
        for (got, want) in x.power(1.0).unwrap().bounds().iter().zip(x.bounds()) {
            assert_abs_diff_eq!(got, &want, epsilon = 1e-15);
        }
        assert!(x.scale(0.0).is_err());
        assert!(x.power(-1.0).is_err());
    }

    #[test]
    fn mul_probabilistic_sum_on_nonmembership() {
        let x = iv(0.5, 0.5, 0.3, 0.3);
        let y = x.mul(x);
        // 0.3 + 0.3 - 0.09 = 0.51
        assert_abs_diff_eq!(y.lm(), 0.25, epsilon = 1e-15);
        assert_abs_diff_eq!(y.rm(), 0.25, epsilon = 1e-15);
        assert_abs_diff_eq!(y.ln(), 0.51, epsilon = 1e-15);
        assert_abs_diff_eq!(y.rn(), 0.51, epsilon = 1e-15);
    }

    #[test]
    fn hesitancy_interval() {
        let h = iv(0.50, 0.60, 0.25, 0.30).hesitancy();
        assert_abs_diff_eq!(h.lo, 0.10, epsilon = 1e-12);
        assert_abs_diff_eq!(h.hi, 0.25, epsilon = 1e-12);
        let h = Ivifn::MAX.hesitancy();
        assert_eq!((h.lo, h.hi), (0.0, 0.0));
        let h = iv(0.0, 0.0, 0.0, 0.0).hesitancy();
        assert_eq!((h.lo, h.hi), (1.0, 1.0));
    }

    #[test]
    fn score_wc_endpoints_and_case() {
        assert_eq!(Ivifn::MAX.score_wc(), 1.0);
        assert_eq!(Ivifn::MIN.score_wc(), -1.0);
        // hand evaluation: ((1.262)(0.734) - (0.366)(0.894)) / 2
        let x = iv(0.580, 0.682, 0.154, 0.212);
        let expect = ((0.580 + 0.682) * (0.580 + 0.154) - (0.154 + 0.212) * (0.682 + 0.212)) / 2.0;
        assert_abs_diff_eq!(x.score_wc(), expect, epsilon = 1e-15);
        assert_abs_diff_eq!(x.score_wc(), 0.2996, epsilon = 5e-5);
    }

    #[test]
    fn accuracy_wc_endpoints_and_case() {
        assert_eq!(iv(0.0, 0.0, 0.0, 0.0).accuracy_wc(), 1.0);
        assert_eq!(Ivifn::MAX.accuracy_wc(), 0.0);
        let x = iv(0.607, 0.720, 0.142, 0.205);
        let expect = ((1.0 - 0.607 + 0.720) * (1.0 - 0.607 - 0.142)
            + (1.0 - 0.142 + 0.205) * (1.0 - 0.720 - 0.205))
            / 2.0;
        assert_abs_diff_eq!(x.accuracy_wc(), expect, epsilon = 1e-15);
        assert_abs_diff_eq!(x.accuracy_wc(), 0.1795, epsilon = 2e-4);
    }

    #[test]
    fn simple_score_and_accuracy() {
        let x = iv(0.668, 0.782, 0.103, 0.172);
        assert_abs_diff_eq!(x.score_simple(), 0.588, epsilon = 1e-3);
        assert_abs_diff_eq!(x.accuracy_simple(), 0.863, epsilon = 1e-3);
        assert_eq!(Ivifn::MAX.score_simple(), 1.0);
        assert_eq!(Ivifn::MAX.accuracy_simple(), 1.0);
        assert_eq!(iv(0.0, 0.0, 0.0, 0.0).score_simple(), 0.0);
        assert_eq!(iv(0.0, 0.0, 0.0, 0.0).accuracy_simple(), 0.0);
    }

    #[test]
    fn compare_is_lexicographic() {
        assert_eq!(Ivifn::MAX.compare(&Ivifn::MIN), Ordering::Greater);
        let x = iv(0.3, 0.4, 0.2, 0.5);
        assert_eq!(x.compare(&x), Ordering::Equal);
        // scores 0.2996 vs 0.3365
        let a = iv(0.580, 0.682, 0.154, 0.212);
        let b = iv(0.607, 0.720, 0.142, 0.205);
        assert_eq!(a.compare(&b), Ordering::Less);
        assert_eq!(b.compare(&a), Ordering::Greater);
    }

    #[test]
    fn distances() {
        let x = iv(0.3, 0.4, 0.2, 0.5);
        assert_eq!(x.dist_hybrid(x), 0.0);
        assert_eq!(Ivifn::MAX.dist_hamming(Ivifn::MIN), 1.0);
        assert_eq!(Ivifn::MAX.dist_hybrid(Ivifn::MIN), 1.5);

        // quarter-sum plus half-max, by hand
        let a = iv(0.775, 0.878, 0.050, 0.100);
        let b = iv(0.607, 0.720, 0.142, 0.205);
        let diffs = [0.168, 0.158, 0.092, 0.105f64];
        let expect = 0.25 * diffs.iter().sum::<f64>() + 0.5 * 0.168;
        assert_abs_diff_eq!(a.dist_hybrid(b), expect, epsilon = 1e-12);
        assert_abs_diff_eq!(a.dist_hybrid(b), 0.2148, epsilon = 5e-5);
    }
}

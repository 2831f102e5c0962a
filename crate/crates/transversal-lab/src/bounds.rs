//! Exact evaluation of the closed-form per-type upper bounds Φ_i(s,t) and the
//! related boundary and comparison helpers. All arithmetic is exact rational;
//! no floating point.

use crate::classify::FormulaType;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use thiserror::Error;

/// Arbitrary-precision rational in reduced form.
pub type ExactValue = BigRational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BoundError {
    #[error("query (type {ftype:?}, s={s}, t={t}) outside the proved validity region")]
    OutOfValidity { ftype: FormulaType, s: i64, t: u32 },
    #[error("binomial-based boundary value not stated for type {0:?} at this boundary")]
    NoBoundaryValue(FormulaType),
    #[error("implied Turán number is negative: C({n},{k}) < {theta}")]
    NegativeResult { n: u32, k: u32, theta: u64 },
}

/// A Φ bound query: formula type, deficit s = 3t − n, threshold t.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundQuery {
    pub ftype: FormulaType,
    pub s: i64,
    pub t: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(s: i64) -> Parity {
        if s.rem_euclid(2) == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

fn ratio(num: i64, den: i64) -> ExactValue {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// The per-type leading coefficient of Φ_i(s,t) = c_i(parity(s)) · (2/3)^⌊s/2⌋ · 3^t.
pub fn phi_coefficient(ftype: FormulaType, parity: Parity) -> ExactValue {
    use FormulaType::*;
    match (ftype, parity) {
        (T0, Parity::Even) => ratio(1, 1),
        (T1, Parity::Even) => ratio(5, 6),
        (T2o, Parity::Even) => ratio(2, 3),
        (T2d, Parity::Even) => ratio(25, 36),
        (T3, Parity::Even) => ratio(7, 12),
        (T4, Parity::Even) => ratio(7, 12),
        (T0, Parity::Odd) => ratio(7, 9),
        (T1, Parity::Odd) => ratio(2, 3),
        (T2o, Parity::Odd) => ratio(5, 9),
        (T2d, Parity::Odd) => ratio(5, 9),
        (T3, Parity::Odd) => ratio(1, 2),
        (T4, Parity::Odd) => ratio(17, 36),
    }
}

/// (2/3)^e for a possibly negative exponent.
pub fn two_thirds_pow(e: i64) -> ExactValue {
    let tt = ratio(2, 3);
    if e >= 0 {
        num_traits::pow::pow(tt, e as usize)
    } else {
        num_traits::pow::pow(ratio(3, 2), (-e) as usize)
    }
}

/// 3^e as an exact rational (e ≥ 0).
pub fn three_pow(e: u32) -> ExactValue {
    BigRational::from(BigInt::from(3).pow(e))
}

/// The raw formula c_i(parity(s)) · (2/3)^⌊s/2⌋ · 3^t with no validity check.
/// Used for audit ratios, where shifted arguments may leave the proved range.
pub fn phi_formula(ftype: FormulaType, s: i64, t: i64) -> ExactValue {
    let coeff = phi_coefficient(ftype, Parity::of(s));
    let halves = two_thirds_pow(s.div_euclid(2));
    let three = if t >= 0 {
        three_pow(t as u32)
    } else {
        BigRational::new(BigInt::one(), BigInt::from(3).pow((-t) as u32))
    };
    coeff * halves * three
}

/// The certified upper bound Φ_i(s,t) within the proved validity region
/// 0 ≤ s ≤ t, t ≥ 1.
pub fn phi_upper(q: BoundQuery) -> Result<ExactValue, BoundError> {
    if q.t < 1 || q.s < 0 || q.s > q.t as i64 {
        return Err(BoundError::OutOfValidity { ftype: q.ftype, s: q.s, t: q.t });
    }
    Ok(phi_formula(q.ftype, q.s, q.t as i64))
}

/// Boundary position for [`phi_boundary`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Boundary {
    /// s ≤ 0 (at least 3t variables available).
    SLe0,
    /// s = 2t − 2, i.e. n = t + 2.
    SEq2tMinus2,
    /// s = 2t − 1, i.e. n = t + 1.
    SEq2tMinus1,
    /// s = 2t, i.e. n = t.
    SEq2t,
}

/// Exact boundary values of Φ at the extreme deficits, where the extremal
/// systems are cliques (possibly with defect corrections).
pub fn phi_boundary(ftype: FormulaType, t: u32, which: Boundary) -> Result<ExactValue, BoundError> {
    use FormulaType::*;
    if t < 1 || (ftype == T2d && which == Boundary::SEq2tMinus2 && t < 2) {
        return Err(BoundError::OutOfValidity { ftype, s: 0, t });
    }
    let b = |n: u32, k: u32| BigRational::from(binomial(n, k));
    let v = match (ftype, which) {
        (T0, Boundary::SLe0) => three_pow(t),
        (T0, Boundary::SEq2tMinus2) => b(t + 2, t),
        (T0, Boundary::SEq2tMinus1) => b(t + 1, t),
        (T0, Boundary::SEq2t) => BigRational::one(),
        (T1, Boundary::SLe0) => ratio(2, 3) * three_pow(t),
        (T1, Boundary::SEq2tMinus2) => b(t + 2, t) - BigRational::one(),
        (T1, Boundary::SEq2tMinus1) => b(t + 1, t),
        (T1, Boundary::SEq2t) => BigRational::one(),
        (T2o, Boundary::SLe0) | (T2d, Boundary::SLe0) => ratio(4, 9) * three_pow(t),
        (T2o, Boundary::SEq2tMinus2) | (T2d, Boundary::SEq2tMinus2) => {
            b(t + 2, t) - BigRational::from(BigInt::from(2))
        }
        _ => return Err(BoundError::NoBoundaryValue(ftype)),
    };
    Ok(v)
}

/// Exact binomial coefficient C(n,k).
pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

/// Comparison helper for the 6^{n/4} bound at threshold n/2.
#[derive(Debug, Clone, Copy)]
pub struct SixQuarterBound {
    pub n: u32,
}

/// The bound 6^{n/4} for a universe of n variables, compared symbolically
/// (x vs 6^{n/4} by comparing x^4 vs 6^n in integers).
pub fn six_quarter_bound(n: u32) -> SixQuarterBound {
    SixQuarterBound { n }
}

impl SixQuarterBound {
    /// Exact integer value when 4 | n.
    pub fn exact(&self) -> Option<BigInt> {
        (self.n % 4 == 0).then(|| BigInt::from(6).pow(self.n / 4))
    }

    /// Compares `count` against 6^{n/4}: Less/Equal/Greater means count is
    /// below/at/above the bound.
    pub fn compare(&self, count: u64) -> Ordering {
        let lhs = BigInt::from(count).pow(4);
        let rhs = BigInt::from(6).pow(self.n);
        lhs.cmp(&rhs)
    }
}

/// The Turán number implied by a threshold maximum via
/// T(n,k+1,k) = C(n,k) − Θ(n,n−k,k), valid for 2k ≤ n − 1.
pub fn theta_turan_relation(n: u32, k: u32, theta: u64) -> Result<BigInt, BoundError> {
    assert!(2 * k <= n - 1, "relation requires 2k <= n-1");
    let diff = binomial(n, k) - BigInt::from(theta);
    if diff.is_negative() {
        return Err(BoundError::NegativeResult { n, k, theta });
    }
    Ok(diff)
}

#[cfg(test)]
mod tests {
    use super::*;
    use FormulaType::*;

    fn int(v: i64) -> ExactValue {
        BigRational::from(BigInt::from(v))
    }

    #[test]
    fn phi_upper_examples() {
        assert_eq!(phi_upper(BoundQuery { ftype: T0, s: 1, t: 2 }).unwrap(), int(7));
        assert_eq!(phi_upper(BoundQuery { ftype: T0, s: 0, t: 3 }).unwrap(), int(27));
        assert_eq!(phi_upper(BoundQuery { ftype: T2d, s: 4, t: 4 }).unwrap(), int(25));
    }

    #[test]
    fn phi_upper_validity_region() {
        assert!(phi_upper(BoundQuery { ftype: T0, s: -1, t: 2 }).is_err());
        assert!(phi_upper(BoundQuery { ftype: T0, s: 3, t: 2 }).is_err());
        assert!(phi_upper(BoundQuery { ftype: T0, s: 0, t: 0 }).is_err());
    }

    #[test]
    fn boundary_examples() {
        assert_eq!(phi_boundary(T0, 2, Boundary::SEq2tMinus2).unwrap(), int(6));
        assert_eq!(phi_boundary(T1, 2, Boundary::SEq2tMinus2).unwrap(), int(5));
        assert_eq!(phi_boundary(T2o, 2, Boundary::SEq2tMinus2).unwrap(), int(4));
        assert_eq!(phi_boundary(T0, 3, Boundary::SLe0).unwrap(), int(27));
        assert!(phi_boundary(T3, 2, Boundary::SLe0).is_err());
    }

    #[test]
    fn six_quarter_comparisons() {
        let b = six_quarter_bound(8);
        assert_eq!(b.exact().unwrap(), BigInt::from(36));
        assert_eq!(b.compare(36), Ordering::Equal);
        assert_eq!(b.compare(37), Ordering::Greater);
        // n = 6: 6^{1.5} ≈ 14.7, so 14 is below and 15 above.
        let b6 = six_quarter_bound(6);
        assert_eq!(b6.compare(14), Ordering::Less);
        assert_eq!(b6.compare(15), Ordering::Greater);
    }

    #[test]
    fn turan_relation_examples() {
        assert_eq!(theta_turan_relation(5, 2, 7).unwrap(), BigInt::from(3));
        assert_eq!(theta_turan_relation(7, 2, 15).unwrap(), BigInt::from(6));
        assert!(theta_turan_relation(6, 2, 100).is_err());
    }
}

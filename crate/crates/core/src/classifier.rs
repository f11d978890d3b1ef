//! Finiteness trichotomy for the partition function of a quadratic β, with
//! machine-checkable witness data attached to every infinite verdict.
//!
//! The verdict is computed twice, by independent routes that must agree:
//! once from the coefficient conditions (2A+B ≤ 0, or 2A+B > 0 and
//! A+B+C < 0) and once by exact comparison of the larger root against 1.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::enumerator::Partition;
use crate::error::{Error, Result};
use crate::quadfield::{QuadElem, QuadPoly};

/// Whether p_β(α) is finite for every real α.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Verdict {
    AlwaysFinite,
    InfiniteCapable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::AlwaysFinite => "AlwaysFinite",
            Verdict::InfiniteCapable => "InfiniteCapable",
        })
    }
}

/// Which structural case produced the verdict. The four infinite-capable
/// real cases are split by the signs of B and C, matching the four
/// constructive witness families.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Reason {
    ConjugateAboveOne,
    CaseBNonnegCPos,
    CaseBNonnegCNeg,
    CaseBNegCPosLemma,
    CaseBNegCNeg,
    ComplexRoots,
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Reason::ConjugateAboveOne => "ConjugateAboveOne",
            Reason::CaseBNonnegCPos => "Case_B≥0_C>0",
            Reason::CaseBNonnegCNeg => "Case_B≥0_C<0",
            Reason::CaseBNegCPosLemma => "Case_B<0_C>0_Lemma",
            Reason::CaseBNegCNeg => "Case_B<0_C<0",
            Reason::ComplexRoots => "ComplexRoots",
        })
    }
}

/// Construction recipe for the witness family matching a reason.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum WitnessPlan {
    /// x^t·(Ax²+Bx+C) for t = 0, 1, … all partition zero.
    ShiftedZero,
    /// Successive rewrites of Aβ + F, adding one shifted copy of f per step.
    LinearChain,
    /// Ramp-coefficient family of partitions of cβ.
    RampFamily { i0: BigInt, c: BigInt },
    /// Successive rewrites of (E+F)β + F.
    QuadChain,
    /// Zero partition from the trace recurrence of a complex root.
    ComplexZero,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Classification {
    pub verdict: Verdict,
    pub reason: Reason,
    /// Element certified to have infinitely many partitions, when the
    /// verdict is infinite-capable and the roots are real.
    pub witness_target: Option<QuadElem>,
    pub certificate: Option<WitnessPlan>,
}

/// Ramp-family parameters: the smallest i₀ ≥ 2 with A·i₀ ≥ E·i₀ − C(i₀−1)
/// (equivalently i₀(A+B+C) ≥ C) and the target multiplier c = (E−C)·i₀.
pub(crate) fn ramp_params(f: &QuadPoly) -> Result<(BigInt, BigInt)> {
    let (a, b, c) = (f.a(), f.b(), f.c());
    let two_a_plus_b: BigInt = 2 * a + b;
    let a_plus_b_plus_c: BigInt = a + b + c;
    if !(c.is_positive()
        && b.is_negative()
        && two_a_plus_b.is_positive()
        && a_plus_b_plus_c.is_positive())
    {
        return Err(Error::Domain(format!(
            "{f} does not satisfy C > 0, B < 0, 2A+B > 0, A+B+C > 0"
        )));
    }
    let i0 = c.div_ceil(&a_plus_b_plus_c).max(BigInt::from(2u8));
    let c_target = (f.e() - c) * &i0;
    Ok((i0, c_target))
}

/// Decides the finiteness regime of p_β from the coefficients of f and,
/// independently, from exact root comparison; the two verdicts must agree.
///
/// For infinite-capable real inputs, `witness_target` names the element
/// with infinitely many partitions (0, Aβ+F, cβ, or (E+F)β+F by case) and
/// `certificate` carries the recipe the witness module executes.
pub fn classify(f: &QuadPoly) -> Result<Classification> {
    if f.is_complex() {
        return Ok(Classification {
            verdict: Verdict::InfiniteCapable,
            reason: Reason::ComplexRoots,
            witness_target: None,
            certificate: Some(WitnessPlan::ComplexZero),
        });
    }
    let (a, b, c) = (f.a(), f.b(), f.c());
    let two_a_plus_b: BigInt = 2 * a + b;
    let a_plus_b_plus_c: BigInt = a + b + c;
    if a_plus_b_plus_c.is_zero() {
        // f(1) = 0 would make the polynomial reducible, which construction
        // rejects.
        return Err(Error::Consistency(format!(
            "{f} passed construction with a root at 1"
        )));
    }
    let coeff_verdict = !two_a_plus_b.is_positive() || a_plus_b_plus_c.is_negative();

    let (beta, _) = f.roots()?;
    let one = QuadElem::one(beta.d().clone())?;
    let root_verdict = beta.checked_sub(&one)?.is_positive();

    if coeff_verdict != root_verdict {
        return Err(Error::Consistency(format!(
            "coefficient conditions say finite={coeff_verdict} but the larger root of {f} \
             compares as finite={root_verdict}"
        )));
    }

    if coeff_verdict {
        return Ok(Classification {
            verdict: Verdict::AlwaysFinite,
            reason: Reason::ConjugateAboveOne,
            witness_target: None,
            certificate: None,
        });
    }

    let d = beta.d().clone();
    let (reason, target, plan) = if !b.is_negative() && c.is_positive() {
        (
            Reason::CaseBNonnegCPos,
            QuadElem::zero(d)?,
            WitnessPlan::ShiftedZero,
        )
    } else if !b.is_negative() {
        // C < 0 here: C = 0 would be reducible.
        let target = beta
            .scale(a)
            .checked_add(&QuadElem::from_integer(f.f(), d)?)?;
        (Reason::CaseBNonnegCNeg, target, WitnessPlan::LinearChain)
    } else if c.is_positive() {
        let (i0, c_target) = ramp_params(f)?;
        (
            Reason::CaseBNegCPosLemma,
            beta.scale(&c_target),
            WitnessPlan::RampFamily { i0, c: c_target },
        )
    } else {
        let target = beta
            .scale(&(f.e() + f.f()))
            .checked_add(&QuadElem::from_integer(f.f(), d)?)?;
        (Reason::CaseBNegCNeg, target, WitnessPlan::QuadChain)
    };

    Ok(Classification {
        verdict: Verdict::InfiniteCapable,
        reason,
        witness_target: Some(target),
        certificate: Some(plan),
    })
}

/// Value lattice for the monic special cases: p_β(α) is 0, 1, or ∞ where
/// the structure decides it, `Unknown` where it does not.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ValueClass {
    /// No partition exists. Unreachable from digit-vector inputs, which are
    /// themselves partitions; kept as part of the value lattice.
    Zero,
    One,
    Infinity,
    Unknown,
}

impl fmt::Display for ValueClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ValueClass::Zero => "Zero",
            ValueClass::One => "One",
            ValueClass::Infinity => "Infinity",
            ValueClass::Unknown => "Unknown",
        })
    }
}

/// Applies the monic special-case value rules to α given as a digit vector:
/// with B ≥ 0 and C > 0 every representable α has infinitely many
/// partitions; with B > 0 and −B−1 < C < 0 the count is 1 exactly when
/// every digit is at most −C−1, else infinite. Other sign patterns are
/// honestly `Unknown`.
pub fn decide_value_special(f: &QuadPoly, digits: &Partition) -> Result<ValueClass> {
    if !f.is_monic() {
        return Err(Error::Domain(format!(
            "value rules are stated for monic polynomials; {f} is not monic"
        )));
    }
    let (b, c) = (f.b(), f.c());
    if !b.is_negative() && c.is_positive() {
        return Ok(ValueClass::Infinity);
    }
    if b.is_positive() && c.is_negative() && *c > -b - BigInt::one() {
        let cap = -c - BigInt::one();
        let unique = digits.coeffs().iter().all(|ci| ci <= &cap);
        return Ok(if unique {
            ValueClass::One
        } else {
            ValueClass::Infinity
        });
    }
    Ok(ValueClass::Unknown)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle_count;

    fn poly(a: i64, b: i64, c: i64) -> QuadPoly {
        QuadPoly::new(a, b, c).unwrap()
    }

    #[test]
    fn golden_ratio_is_always_finite() {
        let cls = classify(&poly(1, -1, -1)).unwrap();
        assert_eq!(cls.verdict, Verdict::AlwaysFinite);
        assert_eq!(cls.reason, Reason::ConjugateAboveOne);
        assert!(cls.witness_target.is_none());
    }

    #[test]
    fn linear_chain_case_with_target() {
        let cls = classify(&poly(1, 2, -1)).unwrap();
        assert_eq!(cls.verdict, Verdict::InfiniteCapable);
        assert_eq!(cls.reason, Reason::CaseBNonnegCNeg);
        // β = −1+√2, so Aβ + F = β + 1 = √2.
        assert_eq!(
            cls.witness_target.unwrap(),
            QuadElem::new(0, 1, 1, 2).unwrap()
        );
    }

    #[test]
    fn ramp_case_with_target() {
        let cls = classify(&poly(5, -5, 1)).unwrap();
        assert_eq!(cls.verdict, Verdict::InfiniteCapable);
        assert_eq!(cls.reason, Reason::CaseBNegCPosLemma);
        let (beta, _) = poly(5, -5, 1).roots().unwrap();
        assert_eq!(
            cls.witness_target.unwrap(),
            beta.scale(&BigInt::from(8))
        );
        assert_eq!(
            cls.certificate.unwrap(),
            WitnessPlan::RampFamily {
                i0: BigInt::from(2),
                c: BigInt::from(8)
            }
        );
    }

    #[test]
    fn zero_case_and_quad_case() {
        let cls = classify(&poly(1, 3, 1)).unwrap();
        assert_eq!(cls.reason, Reason::CaseBNonnegCPos);
        assert!(cls.witness_target.unwrap().is_zero());

        // A=7, B=−2, C=−1: 2A+B = 12 > 0, A+B+C = 4 > 0.
        let cls = classify(&poly(7, -2, -1)).unwrap();
        assert_eq!(cls.reason, Reason::CaseBNegCNeg);
        // (E+F)β + F = 3β + 1.
        let (beta, _) = poly(7, -2, -1).roots().unwrap();
        let expect = beta
            .scale(&BigInt::from(3))
            .checked_add(&QuadElem::one(beta.d().clone()).unwrap())
            .unwrap();
        assert_eq!(cls.witness_target.unwrap(), expect);
    }

    #[test]
    fn complex_roots_route() {
        let cls = classify(&poly(1, 1, 3)).unwrap();
        assert_eq!(cls.verdict, Verdict::InfiniteCapable);
        assert_eq!(cls.reason, Reason::ComplexRoots);
        assert!(cls.witness_target.is_none());
        assert_eq!(cls.certificate.unwrap(), WitnessPlan::ComplexZero);
    }

    #[test]
    fn coefficient_and_root_routes_agree_on_small_grid() {
        for a in 1..=6i64 {
            for b in -8..=8i64 {
                for c in -8..=8i64 {
                    let Ok(f) = QuadPoly::new(a, b, c) else {
                        continue;
                    };
                    if f.is_complex() {
                        continue;
                    }
                    classify(&f).expect("routes agree");
                }
            }
        }
    }

    #[test]
    fn value_rules() {
        let f = poly(1, 3, -2);
        let d = |xs: &[i64]| Partition::new(xs.iter().map(|&x| BigInt::from(x)).collect()).unwrap();
        assert_eq!(decide_value_special(&f, &d(&[1, 1])).unwrap(), ValueClass::One);
        assert_eq!(
            decide_value_special(&f, &d(&[2, 0])).unwrap(),
            ValueClass::Infinity
        );
        assert_eq!(
            decide_value_special(&poly(1, 1, 3), &d(&[5, 7])).unwrap(),
            ValueClass::Infinity
        );
        assert_eq!(
            decide_value_special(&poly(1, -6, 6), &d(&[1])).unwrap(),
            ValueClass::Unknown
        );
        assert!(decide_value_special(&poly(5, -5, 1), &d(&[1])).is_err());
    }

    #[test]
    fn unique_value_confirmed_by_bounded_search() {
        // In the uniqueness regime a bounded divisibility search over all
        // candidate rewrite polynomials finds exactly the trivial one.
        for (b, c) in [(3i64, -2i64), (4, -2), (4, -3), (5, -4)] {
            let f = poly(1, b, c);
            let cap = -c - 1;
            for digits in [vec![cap, 0, cap], vec![0, cap], vec![cap]] {
                let part =
                    Partition::new(digits.iter().map(|&x| BigInt::from(x)).collect()).unwrap();
                assert_eq!(
                    decide_value_special(&f, &part).unwrap(),
                    ValueClass::One
                );
                let found = oracle_count(&f, &part, 12, &BigInt::from(10));
                assert_eq!(found, 1u32.into(), "f={f} digits={digits:?}");
            }
        }
    }
}

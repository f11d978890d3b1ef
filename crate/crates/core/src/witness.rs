//! Constructive certificates of infinitude: for each structural case an
//! explicit family of partitions of one fixed target, generated lazily and
//! verified by exact polynomial divisibility (plus field evaluation when
//! the roots are real). Distinctness across a family is certified by
//! strictly increasing degree.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::classifier::{ramp_params, Reason, WitnessPlan};
use crate::enumerator::Partition;
use crate::error::{Error, Result};
use crate::polyvec;
use crate::quadfield::{QuadElem, QuadPoly};

/// Search bound for the first power with negative trace in the complex
/// case. The argument of a complex root of an irreducible quadratic is an
/// angle whose multiples leave the upper half-plane, so small n always
/// suffices in practice; the bound only guards against a logic error.
const TRACE_SEARCH_BOUND: usize = 1_000_000;

/// A lazily generated family of k pairwise-distinct partitions of one
/// target element. Index i yields the family's (i+1)-st member; degrees
/// increase strictly with i.
pub struct WitnessFamily {
    f: QuadPoly,
    beta: Option<QuadElem>,
    target: QuadElem,
    /// Target as v + u·β, for the divisibility check.
    target_vu: (BigInt, BigInt),
    generator: WitnessPlan,
    k: usize,
}

impl WitnessFamily {
    pub fn target(&self) -> &QuadElem {
        &self.target
    }

    pub fn generator(&self) -> &WitnessPlan {
        &self.generator
    }

    pub fn len(&self) -> usize {
        self.k
    }

    pub fn is_empty(&self) -> bool {
        self.k == 0
    }

    /// The family member at `index` (0-based, < len).
    pub fn partition_at(&self, index: usize) -> Result<Partition> {
        if index >= self.k {
            return Err(Error::Domain(format!(
                "family has {} members, index {index} out of range",
                self.k
            )));
        }
        let (a, b, c) = (self.f.a(), self.f.b(), self.f.c());
        let digits = match &self.generator {
            WitnessPlan::ShiftedZero => polyvec::shift(&polyvec::from_quad(&self.f), index),
            WitnessPlan::LinearChain => {
                let s = index + 1;
                let mut v = vec![BigInt::zero()];
                v.extend(std::iter::repeat_n(a + b + c, s - 1));
                v.push(a + b);
                v.push(a.clone());
                v
            }
            WitnessPlan::QuadChain => {
                let s = index + 1;
                if s == 1 {
                    vec![BigInt::zero(), self.f.f(), a.clone()]
                } else {
                    let mut v = vec![BigInt::zero(), BigInt::zero()];
                    v.extend(std::iter::repeat_n(a + b + c, s - 2));
                    v.push(a + b);
                    v.push(a.clone());
                    v
                }
            }
            WitnessPlan::RampFamily { i0, c: c_target } => {
                return ramp_member(&self.f, i0, c_target, index);
            }
            WitnessPlan::ComplexZero => {
                // Families are built only with the four chain plans.
                return Err(Error::Consistency(
                    "complex zero plan inside a chain family".into(),
                ));
            }
        };
        Partition::new(digits)
    }

    /// Lazy pass over the family.
    pub fn iter(&self) -> impl Iterator<Item = Result<Partition>> + '_ {
        (0..self.k).map(move |i| self.partition_at(i))
    }

    /// Materializes all members and checks every certificate property:
    /// non-negative digits, divisibility of (member − target) by f, exact
    /// re-evaluation to the target when β is real, and strictly increasing
    /// degrees.
    pub fn verified(&self) -> Result<Vec<Partition>> {
        let mut out = Vec::with_capacity(self.k);
        let mut prev_deg: Option<usize> = None;
        let (v, u) = &self.target_vu;
        let target_vec: Vec<BigInt> = vec![-v.clone(), -u.clone()];
        for item in self.iter() {
            let p = item?;
            let diff = polyvec::add(p.coeffs(), &target_vec);
            if polyvec::div_exact_by_quad(&diff, &self.f).is_none() {
                return Err(Error::Consistency(format!(
                    "family member {p} does not reduce to the target modulo {}",
                    self.f
                )));
            }
            if let Some(beta) = &self.beta {
                if p.evaluate(beta)? != self.target {
                    return Err(Error::Consistency(format!(
                        "family member {p} evaluates away from {}",
                        self.target
                    )));
                }
            }
            let deg = p.degree();
            if prev_deg.is_some() && deg <= prev_deg {
                return Err(Error::Consistency(
                    "family degrees fail to increase strictly".into(),
                ));
            }
            prev_deg = deg;
            out.push(p);
        }
        Ok(out)
    }
}

/// Ramp-family member for n = i₀ + index: quotient coefficients aᵢ ramp
/// down from n−i+1 on the top i₀ indices and sit at i₀ below; the product
/// with f has exactly one negative coefficient, −c at position 1, so
/// adding c·x turns it into a partition of c·β.
fn ramp_member(f: &QuadPoly, i0: &BigInt, c_target: &BigInt, index: usize) -> Result<Partition> {
    let (a, b, c) = (f.a(), f.b(), f.c());
    let two_a_plus_b = 2 * a + b;
    let n_big = i0 + BigInt::from(index);
    let n: usize = usize::try_from(&n_big)
        .map_err(|_| Error::Resource(format!("ramp index {n_big} too large")))?;
    let quotient: Vec<BigInt> = (0..=n)
        .map(|i| {
            if BigInt::from(i) >= &n_big - i0 + 1 {
                &n_big - BigInt::from(i) + 1
            } else {
                i0.clone()
            }
        })
        .collect();
    let prod = polyvec::mul(&quotient, &polyvec::from_quad(f));
    if prod.len() != n + 3
        || prod[n + 2] != *a
        || prod[n + 1] != two_a_plus_b
        || prod[1] != -c_target
        || prod[0] != c * i0
        || !prod[0].is_positive()
        || prod.iter().enumerate().any(|(i, x)| i != 1 && x.is_negative())
    {
        return Err(Error::Consistency(format!(
            "ramp product coefficients violate their sign pattern for {f}, n = {n}"
        )));
    }
    let mut digits = prod;
    digits[1] += c_target;
    Partition::new(digits)
}

/// Family of k partitions of c·β for B < 0, C > 0 under 2A+B > 0 and
/// A+B+C > 0 with real roots. Member n has degree n+2, for
/// n = i₀, …, i₀+k−1.
pub fn witness_lemma(f: &QuadPoly, k: usize) -> Result<WitnessFamily> {
    if f.is_complex() {
        return Err(Error::Domain(format!(
            "{f} has complex roots; the ramp construction needs a real β"
        )));
    }
    let (i0, c_target) = ramp_params(f)?;
    let (beta, _) = f.roots()?;
    let target = beta.scale(&c_target);
    Ok(WitnessFamily {
        f: f.clone(),
        beta: Some(beta),
        target,
        target_vu: (BigInt::zero(), c_target.clone()),
        generator: WitnessPlan::RampFamily { i0, c: c_target },
        k,
    })
}

/// Family of k partitions for one of the sign cases of the trichotomy's
/// infinite branch. The tag must match the polynomial:
/// B≥0, C>0 partitions 0 by shifted copies of f (either discriminant
/// sign); B≥0, C<0 with A+B+C>0 partitions Aβ+F; B<0, C<0 with 2A+B>0 and
/// A+B+C>0 partitions (E+F)β+F; B<0, C>0 delegates to the ramp family.
pub fn witness_case(f: &QuadPoly, case: Reason, k: usize) -> Result<WitnessFamily> {
    let (a, b, c) = (f.a(), f.b(), f.c());
    let hypotheses_err = || {
        Err(Error::Domain(format!(
            "{f} does not satisfy the hypotheses of case {case}"
        )))
    };
    match case {
        Reason::CaseBNonnegCPos => {
            if b.is_negative() || !c.is_positive() {
                return hypotheses_err();
            }
            let (beta, target) = match f.roots() {
                Ok((beta, _)) => {
                    let target = QuadElem::zero(beta.d().clone())?;
                    (Some(beta), target)
                }
                // Complex roots: the shifts are still zero partitions,
                // verified by divisibility; 0 itself is rational.
                Err(_) => (None, QuadElem::zero(2)?),
            };
            Ok(WitnessFamily {
                f: f.clone(),
                beta,
                target,
                target_vu: (BigInt::zero(), BigInt::zero()),
                generator: WitnessPlan::ShiftedZero,
                k,
            })
        }
        Reason::CaseBNonnegCNeg => {
            if b.is_negative() || !c.is_negative() || !(a + b + c).is_positive() {
                return hypotheses_err();
            }
            let (beta, _) = f.roots()?;
            let target = beta
                .scale(a)
                .checked_add(&QuadElem::from_integer(f.f(), beta.d().clone())?)?;
            Ok(WitnessFamily {
                f: f.clone(),
                beta: Some(beta),
                target,
                target_vu: (f.f(), a.clone()),
                generator: WitnessPlan::LinearChain,
                k,
            })
        }
        Reason::CaseBNegCNeg => {
            let two_a_plus_b: BigInt = 2 * a + b;
            let a_plus_b_plus_c: BigInt = a + b + c;
            if !b.is_negative()
                || !c.is_negative()
                || !two_a_plus_b.is_positive()
                || !a_plus_b_plus_c.is_positive()
            {
                return hypotheses_err();
            }
            let (beta, _) = f.roots()?;
            let target = beta
                .scale(&(f.e() + f.f()))
                .checked_add(&QuadElem::from_integer(f.f(), beta.d().clone())?)?;
            Ok(WitnessFamily {
                f: f.clone(),
                beta: Some(beta),
                target,
                target_vu: (f.f(), f.e() + f.f()),
                generator: WitnessPlan::QuadChain,
                k,
            })
        }
        Reason::CaseBNegCPosLemma => witness_lemma(f, k),
        Reason::ConjugateAboveOne | Reason::ComplexRoots => Err(Error::Domain(format!(
            "case {case} has no chain family; complex roots certify through a zero partition"
        ))),
    }
}

/// Nontrivial partition of 0 for complex roots: the first n with
/// Tr(βⁿ) < 0 makes x^{2n} + q·xⁿ + r (q = −Tr(βⁿ), r = Nm(β)ⁿ) vanish at
/// β; clearing denominators gives non-negative integer digits, checked by
/// exact division by f.
pub fn complex_zero_partition(f: &QuadPoly) -> Result<Partition> {
    if !f.is_complex() {
        return Err(Error::Domain(format!(
            "{f} has real roots; zero partitions are constructed from complex traces"
        )));
    }
    let trace_step = BigRational::new(-f.b().clone(), f.a().clone());
    let norm = BigRational::new(f.c().clone(), f.a().clone());
    let mut u_prev = BigRational::from(BigInt::from(2));
    let mut u = trace_step.clone();
    let mut n = 1usize;
    while !u.is_negative() {
        n += 1;
        if n > TRACE_SEARCH_BOUND {
            return Err(Error::Resource(format!(
                "no negative trace power below n = {TRACE_SEARCH_BOUND}"
            )));
        }
        let next = &trace_step * &u - &norm * &u_prev;
        u_prev = u;
        u = next;
    }
    let q = -u;
    let r = norm.pow(n as i32);
    let scale = q.denom().lcm(r.denom());
    let scale_rat = BigRational::from(scale.clone());
    let mut digits = vec![BigInt::zero(); 2 * n + 1];
    digits[0] = (&r * &scale_rat).to_integer();
    digits[n] = (&q * &scale_rat).to_integer();
    digits[2 * n] = scale;
    if polyvec::div_exact_by_quad(&digits, f).is_none() {
        return Err(Error::Consistency(format!(
            "trace construction for {f} failed exact division"
        )));
    }
    Partition::new(digits)
}

/// Adds a verified zero partition to a base partition t times, yielding
/// t+1 pairwise-distinct partitions of the base's value (distinct because
/// each addition strictly increases some digit).
pub fn zero_closure(
    f: &QuadPoly,
    base: &Partition,
    zero_part: &Partition,
    t: usize,
) -> Result<Vec<Partition>> {
    if zero_part.coeffs().is_empty() {
        return Err(Error::Domain(
            "the trivial empty partition cannot pad a family".into(),
        ));
    }
    if polyvec::div_exact_by_quad(zero_part.coeffs(), f).is_none() {
        return Err(Error::Domain(format!(
            "{zero_part} is not a partition of 0 for {f}"
        )));
    }
    let mut out = Vec::with_capacity(t + 1);
    let mut current = base.coeffs().to_vec();
    out.push(base.clone());
    for _ in 0..t {
        current = polyvec::add(&current, zero_part.coeffs());
        out.push(Partition::new(current.clone())?);
    }
    Ok(out)
}

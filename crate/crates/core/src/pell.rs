//! Pell equation solver and the family of monic quadratics it induces:
//! each solution x² − D·y² = 1 with x > 1 yields β = (x+1) + y√D, whose
//! minimal polynomial t² − 2a·t + 2a (a = x+1) has trace equal to norm and
//! sits inside the window Tr ≤ Nm < 2·Tr − 4.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::quadfield::{squarefree_kernel, QuadPoly};

/// Upper bound on continued-fraction steps; the period of √D is far below
/// this for any D the integer types can hold in practice.
const CF_STEP_BOUND: usize = 1_000_000;

/// A solution of x² − D·y² = 1 with x ≥ 1, y ≥ 0.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PellSolution {
    x: BigInt,
    y: BigInt,
    d: BigInt,
}

impl PellSolution {
    fn checked(x: BigInt, y: BigInt, d: BigInt) -> Result<Self> {
        if &x * &x - &d * &y * &y != BigInt::one() {
            return Err(Error::Consistency(format!(
                "({x}, {y}) does not solve x^2 - {d}y^2 = 1"
            )));
        }
        Ok(PellSolution { x, y, d })
    }

    pub fn x(&self) -> &BigInt {
        &self.x
    }

    pub fn y(&self) -> &BigInt {
        &self.y
    }

    pub fn d(&self) -> &BigInt {
        &self.d
    }

    /// Composition of solutions: (x₁x₂ + D·y₁y₂, x₁y₂ + x₂y₁) solves the
    /// same equation, multiplying (x + y√D) as units.
    pub fn compose(&self, other: &PellSolution) -> Result<PellSolution> {
        if self.d != other.d {
            return Err(Error::Domain(format!(
                "cannot compose solutions over D = {} and D = {}",
                self.d, other.d
            )));
        }
        PellSolution::checked(
            &self.x * &other.x + &self.d * &self.y * &other.y,
            &self.x * &other.y + &other.x * &self.y,
            self.d.clone(),
        )
    }
}

impl std::fmt::Display for PellSolution {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}) over D = {}", self.x, self.y, self.d)
    }
}

/// Minimal solution with y ≥ 1, from the continued-fraction expansion of
/// √D: convergents h/k are tested until h² − D·k² = 1.
pub fn fundamental_solution(d: impl Into<BigInt>) -> Result<PellSolution> {
    let d: BigInt = d.into();
    if d < BigInt::from(2u8) {
        return Err(Error::Domain(format!("Pell modulus must be at least 2, got {d}")));
    }
    let a0 = d.sqrt();
    if &a0 * &a0 == d {
        return Err(Error::Domain(format!(
            "{d} is a perfect square; x^2 - {d}y^2 = 1 has only trivial solutions"
        )));
    }
    // √D = [a0; a1, a2, …] with the standard (m, den, a) iteration.
    let mut m = BigInt::zero();
    let mut den = BigInt::one();
    let mut a = a0.clone();
    let (mut h_prev, mut h) = (BigInt::one(), a0.clone());
    let (mut k_prev, mut k) = (BigInt::zero(), BigInt::one());
    for _ in 0..CF_STEP_BOUND {
        if &h * &h - &d * &k * &k == BigInt::one() && k.is_positive() {
            return PellSolution::checked(h, k, d);
        }
        m = &den * &a - &m;
        den = (&d - &m * &m) / &den;
        a = (&a0 + &m) / &den;
        let h_next = &a * &h + &h_prev;
        let k_next = &a * &k + &k_prev;
        h_prev = h;
        h = h_next;
        k_prev = k;
        k = k_next;
    }
    Err(Error::Resource(format!(
        "continued fraction of sqrt({d}) exceeded {CF_STEP_BOUND} steps"
    )))
}

/// The first `count` solutions, fundamental first, then its compositions
/// with itself; x strictly increases along the sequence.
pub fn solution_sequence(d: impl Into<BigInt>, count: usize) -> Result<Vec<PellSolution>> {
    let fundamental = fundamental_solution(d)?;
    let mut out = Vec::with_capacity(count);
    let mut current = fundamental.clone();
    for _ in 0..count {
        out.push(current.clone());
        current = current.compose(&fundamental)?;
    }
    Ok(out)
}

/// For squarefree D ≥ 2, emits `count` monic polynomials
/// t² − 2a·t + 2a with a = x+1 over successive Pell solutions (x, y).
/// Each is checked exactly: the trace-norm window Tr ≤ Nm < 2·Tr − 4,
/// total positivity of the roots, and that the roots generate ℚ(√D).
pub fn trace_condition_family(d: impl Into<BigInt>, count: usize) -> Result<Vec<QuadPoly>> {
    let d: BigInt = d.into();
    let (kernel, _) = squarefree_kernel(&d)?;
    if kernel != d || d < BigInt::from(2u8) {
        return Err(Error::Domain(format!(
            "family construction needs squarefree D at least 2, got {d}"
        )));
    }
    let mut out = Vec::with_capacity(count);
    for sol in solution_sequence(d.clone(), count)? {
        if sol.x <= BigInt::one() {
            // x = 1 forces y = 0; the fundamental already has y ≥ 1.
            return Err(Error::Consistency(format!("trivial solution {sol} in sequence")));
        }
        let a = &sol.x + 1;
        let f = QuadPoly::new(1, -2 * &a, 2 * &a)?;
        let (tr, nm) = (2 * &a, 2 * &a);
        if !(tr <= nm && nm < 2 * &tr - 4) {
            return Err(Error::Consistency(format!(
                "trace-norm window fails for {f}: Tr = {tr}, Nm = {nm}"
            )));
        }
        let (beta, beta_conj) = f.roots()?;
        if !beta.is_positive() || !beta_conj.is_positive() {
            return Err(Error::Consistency(format!("roots of {f} are not totally positive")));
        }
        if *beta.d() != d {
            return Err(Error::Consistency(format!(
                "roots of {f} generate a field over {} instead of {d}",
                beta.d()
            )));
        }
        out.push(f);
    }
    Ok(out)
}

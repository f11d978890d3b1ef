//! Exact counting and enumeration of partitions of α into non-negative
//! integer multiples of powers of β, by two independent algorithms.
//!
//! The primary algorithm is a descending-power digit search driven by the
//! embedding of ℚ(√D) in which the base exceeds 1, with exact interval
//! pruning from the other embedding. The oracle is a bounded search over
//! quotient polynomials P with P·f + R ≥ 0 coefficientwise, which shares
//! no code with the digit search.
//!
//! Convention: p_β(0) = 1, counting the zero polynomial (the empty digit
//! vector). This matches b_m(0) = 1 for integer bases.

use dashmap::DashMap;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::classifier::{classify, Verdict};
use crate::error::{Error, Result};
use crate::quadfield::{QuadElem, QuadPoly};

/// Digit vector (a₀, …, a_j) of a partition, trailing zeros trimmed.
/// The empty vector is the zero polynomial, the unique partition of 0.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Partition {
    coeffs: Vec<BigInt>,
}

impl Partition {
    /// Validates non-negativity and trims trailing zeros.
    pub fn new(mut coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.iter().any(|c| c.is_negative()) {
            return Err(Error::Domain(
                "partition digits must be non-negative".into(),
            ));
        }
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Ok(Partition { coeffs })
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Degree of the digit polynomial; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Σ aᵢ βⁱ, evaluated exactly.
    pub fn evaluate(&self, beta: &QuadElem) -> Result<QuadElem> {
        let mut acc = QuadElem::zero(beta.d().clone())?;
        for a in self.coeffs.iter().rev() {
            acc = acc.checked_mul(beta)?;
            acc = acc.checked_add(&QuadElem::from_integer(a.clone(), beta.d().clone())?)?;
        }
        Ok(acc)
    }

    /// Digits joined by commas, low degree first: "0,6".
    pub fn digit_string(&self) -> String {
        self.coeffs
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl std::fmt::Display for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}]", self.digit_string())
    }
}

/// Search budget. `max_nodes` bounds visited search states per call;
/// `max_degree` bounds the power index J.
#[derive(Clone, Debug)]
pub struct Caps {
    pub max_nodes: u64,
    pub max_degree: u32,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_nodes: 10_000_000,
            max_degree: 4096,
        }
    }
}

type MemoKey = (QuadElem, u32);

/// Reusable search state for one base. The memo maps (remainder, level) to
/// the number of completions below that level; entries do not depend on the
/// target α, so a context may be shared across calls and threads (inserts
/// are idempotent).
pub struct CountContext {
    beta_hat: QuadElem,
    use_conjugate: bool,
    memo: DashMap<MemoKey, BigUint>,
    caps: Caps,
}

struct Tables {
    powers: Vec<QuadElem>,
    others: Vec<QuadElem>,
    /// Running min/max of `others[0..=l]`, for the feasibility cut.
    lo: Vec<QuadElem>,
    hi: Vec<QuadElem>,
    rational: bool,
}

impl CountContext {
    /// Context for the larger root of an always-finite polynomial.
    pub fn new(f: &QuadPoly, caps: Caps) -> Result<Self> {
        let cls = classify(f)?;
        if cls.verdict != Verdict::AlwaysFinite {
            return Err(Error::Regime(format!(
                "counting requires the always-finite regime; {f} classifies as {} ({})",
                cls.verdict, cls.reason
            )));
        }
        let (beta, _) = f.roots()?;
        // AlwaysFinite means the larger root exceeds 1.
        Ok(CountContext {
            beta_hat: beta,
            use_conjugate: false,
            memo: DashMap::new(),
            caps,
        })
    }

    /// Context for an arbitrary base element: drives the search through
    /// whichever embedding sends the base above 1.
    pub fn for_base(base: &QuadElem, caps: Caps) -> Result<Self> {
        let one = QuadElem::one(base.d().clone())?;
        if base.checked_sub(&one)?.is_positive() {
            return Ok(CountContext {
                beta_hat: base.clone(),
                use_conjugate: false,
                memo: DashMap::new(),
                caps,
            });
        }
        let conj = base.conjugate();
        if conj.checked_sub(&one)?.is_positive() {
            return Ok(CountContext {
                beta_hat: conj,
                use_conjugate: true,
                memo: DashMap::new(),
                caps,
            });
        }
        Err(Error::Regime(format!(
            "no embedding of {base} exceeds 1; partition counts need not be finite"
        )))
    }

    /// Context for a rational integer base m ≥ 2 (no field extension; the
    /// search runs over rationals embedded with a placeholder radicand).
    pub fn for_integer_base(m: u64, caps: Caps) -> Result<Self> {
        if m < 2 {
            return Err(Error::Domain(format!("integer base must be at least 2, got {m}")));
        }
        Ok(CountContext {
            beta_hat: QuadElem::from_integer(m, 2)?,
            use_conjugate: false,
            memo: DashMap::new(),
            caps,
        })
    }

    pub fn beta_hat(&self) -> &QuadElem {
        &self.beta_hat
    }

    pub fn use_conjugate(&self) -> bool {
        self.use_conjugate
    }

    pub fn caps(&self) -> &Caps {
        &self.caps
    }

    fn orient(&self, alpha: &QuadElem) -> QuadElem {
        if self.use_conjugate {
            alpha.conjugate()
        } else {
            alpha.clone()
        }
    }

    /// Powers of β̂ up to the largest J with β̂^J ≤ α̂, plus the matching
    /// conjugate powers and their running extrema.
    fn tables(&self, alpha_hat: &QuadElem) -> Result<Tables> {
        let rational = self.beta_hat.is_rational();
        let other_base = self.beta_hat.conjugate();
        let one = QuadElem::one(self.beta_hat.d().clone())?;
        let mut powers = vec![one.clone()];
        let mut others = vec![one];
        loop {
            if powers.len() > self.caps.max_degree as usize {
                return Err(Error::Resource(format!(
                    "power index exceeded max_degree = {}",
                    self.caps.max_degree
                )));
            }
            let next = powers.last().unwrap().checked_mul(&self.beta_hat)?;
            if next.checked_sub(alpha_hat)?.is_positive() {
                break;
            }
            others.push(others.last().unwrap().checked_mul(&other_base)?);
            powers.push(next);
        }
        let mut lo: Vec<QuadElem> = Vec::with_capacity(others.len());
        let mut hi: Vec<QuadElem> = Vec::with_capacity(others.len());
        for o in &others {
            let new_lo = match lo.last() {
                Some(prev) if !prev.checked_sub(o)?.is_positive() => prev.clone(),
                _ => o.clone(),
            };
            let new_hi = match hi.last() {
                Some(prev) if !o.checked_sub(prev)?.is_positive() => prev.clone(),
                _ => o.clone(),
            };
            lo.push(new_lo);
            hi.push(new_hi);
        }
        Ok(Tables {
            powers,
            others,
            lo,
            hi,
            rational,
        })
    }

    /// p_β̂ of the remainder using levels 0..=level. Exact.
    fn dfs(&self, t: &Tables, level: usize, rem: &QuadElem, rem_other: &QuadElem, nodes: &mut u64) -> Result<BigUint> {
        *nodes += 1;
        if *nodes > self.caps.max_nodes {
            return Err(Error::Resource(format!(
                "node budget exhausted (max_nodes = {})",
                self.caps.max_nodes
            )));
        }
        if rem.is_zero() {
            return Ok(BigUint::one());
        }
        if rem.is_negative() {
            return Ok(BigUint::zero());
        }
        if level == 0 {
            // The last digit must absorb the whole remainder.
            return Ok(match rem.as_integer() {
                Some(_) => BigUint::one(),
                None => BigUint::zero(),
            });
        }
        let key = (rem.clone(), level as u32);
        if let Some(hit) = self.memo.get(&key).map(|v| v.clone()) {
            return Ok(hit);
        }
        let total = if !self.feasible(t, level, rem, rem_other)? {
            BigUint::zero()
        } else {
            let mut max_a = rem.floor_div(&t.powers[level])?;
            if !t.rational && t.lo[level].is_positive() {
                let conj_cap = rem_other.floor_div(&t.others[level])?;
                max_a = max_a.min(conj_cap);
            }
            let mut sum = BigUint::zero();
            let mut child = rem.clone();
            let mut child_other = rem_other.clone();
            let mut a = BigInt::zero();
            loop {
                sum += self.dfs(t, level - 1, &child, &child_other, nodes)?;
                if a == max_a {
                    break;
                }
                a += 1;
                child = child.checked_sub(&t.powers[level])?;
                child_other = child_other.checked_sub(&t.others[level])?;
            }
            sum
        };
        self.memo.insert(key, total.clone());
        Ok(total)
    }

    /// Interval test: some real digit mass S ≥ 0 must satisfy both
    /// S ≤ ρ ≤ S·β̂^l and S·lo ≤ ρ' ≤ S·hi. Never prunes a completable
    /// state; ρ > 0 on entry.
    fn feasible(&self, t: &Tables, level: usize, rem: &QuadElem, rem_other: &QuadElem) -> Result<bool> {
        if t.rational {
            return Ok(true);
        }
        let lo = &t.lo[level];
        let hi = &t.hi[level];
        if lo.is_positive() {
            // Totally positive powers: the conjugate remainder must be
            // positive, large enough for S ≥ ρ/β̂^l, and small enough for
            // S ≤ ρ.
            if !rem_other.is_positive() {
                return Ok(false);
            }
            let lhs = rem.checked_mul(lo)?;
            let rhs = rem_other.checked_mul(&t.powers[level])?;
            if lhs.checked_sub(&rhs)?.is_positive() {
                return Ok(false);
            }
            if rem_other.checked_sub(&rem.checked_mul(hi)?)?.is_positive() {
                return Ok(false);
            }
            return Ok(true);
        }
        // Mixed-sign powers: hi ≥ 1 > 0 > lo.
        if rem_other.is_positive() {
            if rem_other.checked_sub(&rem.checked_mul(hi)?)?.is_positive() {
                return Ok(false);
            }
        } else if rem_other.is_negative() {
            let lhs = rem.checked_mul(lo)?;
            if lhs.checked_sub(rem_other)?.is_positive() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Exact partition count of α with respect to this context's base.
    pub fn count(&self, alpha: &QuadElem) -> Result<BigUint> {
        let alpha_hat = self.orient(alpha);
        if alpha_hat.is_zero() {
            return Ok(BigUint::one());
        }
        if alpha_hat.is_negative() {
            return Ok(BigUint::zero());
        }
        let t = self.tables(&alpha_hat)?;
        let alpha_other = alpha_hat.conjugate();
        let mut nodes = 0u64;
        self.dfs(&t, t.powers.len() - 1, &alpha_hat, &alpha_other, &mut nodes)
    }

    /// All partitions of α, low degree first, then lexicographic on the
    /// ascending digit vector. Unmemoized; prefer `count` for totals.
    pub fn enumerate(&self, alpha: &QuadElem) -> Result<Vec<Partition>> {
        let alpha_hat = self.orient(alpha);
        let mut out = Vec::new();
        if alpha_hat.is_zero() {
            out.push(Partition::new(Vec::new())?);
            return Ok(out);
        }
        if alpha_hat.is_negative() {
            return Ok(out);
        }
        let t = self.tables(&alpha_hat)?;
        let alpha_other = alpha_hat.conjugate();
        let mut nodes = 0u64;
        let mut stack = Vec::new();
        self.dfs_enum(
            &t,
            t.powers.len() - 1,
            &alpha_hat,
            &alpha_other,
            &mut nodes,
            &mut stack,
            &mut out,
        )?;
        out.sort_by(|x, y| {
            x.coeffs
                .len()
                .cmp(&y.coeffs.len())
                .then_with(|| x.coeffs.cmp(&y.coeffs))
        });
        Ok(out)
    }

    #[allow(clippy::too_many_arguments)]
    fn dfs_enum(
        &self,
        t: &Tables,
        level: usize,
        rem: &QuadElem,
        rem_other: &QuadElem,
        nodes: &mut u64,
        stack: &mut Vec<BigInt>,
        out: &mut Vec<Partition>,
    ) -> Result<()> {
        *nodes += 1;
        if *nodes > self.caps.max_nodes {
            return Err(Error::Resource(format!(
                "node budget exhausted (max_nodes = {})",
                self.caps.max_nodes
            )));
        }
        if rem.is_zero() {
            let mut digits = stack.clone();
            digits.extend(std::iter::repeat_n(BigInt::zero(), level + 1));
            digits.reverse();
            out.push(Partition::new(digits)?);
            return Ok(());
        }
        if rem.is_negative() {
            return Ok(());
        }
        if level == 0 {
            if let Some(n) = rem.as_integer() {
                let mut digits = stack.clone();
                digits.push(n);
                digits.reverse();
                out.push(Partition::new(digits)?);
            }
            return Ok(());
        }
        if !self.feasible(t, level, rem, rem_other)? {
            return Ok(());
        }
        let mut max_a = rem.floor_div(&t.powers[level])?;
        if !t.rational && t.lo[level].is_positive() {
            let conj_cap = rem_other.floor_div(&t.others[level])?;
            max_a = max_a.min(conj_cap);
        }
        let mut child = rem.clone();
        let mut child_other = rem_other.clone();
        let mut a = BigInt::zero();
        loop {
            stack.push(a.clone());
            self.dfs_enum(t, level - 1, &child, &child_other, nodes, stack, out)?;
            stack.pop();
            if a == max_a {
                break;
            }
            a += 1;
            child = child.checked_sub(&t.powers[level])?;
            child_other = child_other.checked_sub(&t.others[level])?;
        }
        Ok(())
    }
}

/// p_β(α) for the larger root β of an always-finite f, fresh context.
pub fn count(f: &QuadPoly, alpha: &QuadElem) -> Result<BigUint> {
    CountContext::new(f, Caps::default())?.count(alpha)
}

/// All partitions of α, low degree first, then lexicographic.
pub fn enumerate(f: &QuadPoly, alpha: &QuadElem) -> Result<Vec<Partition>> {
    CountContext::new(f, Caps::default())?.enumerate(alpha)
}

/// Partition count of the rational integer n in integer base m ≥ 2, via
/// the same search path as the quadratic case.
pub fn count_integer_base(m: u64, n: impl Into<BigInt>) -> Result<BigUint> {
    let ctx = CountContext::for_integer_base(m, Caps::default())?;
    let alpha = QuadElem::from_integer(n, 2)?;
    ctx.count(&alpha)
}

/// Checks p_β(βα) = p_β(βα − 1) + p_β(α), each side counted independently.
pub fn recurrence_check(f: &QuadPoly, alpha: &QuadElem) -> Result<bool> {
    let ctx = CountContext::new(f, Caps::default())?;
    let (beta, _) = f.roots()?;
    let beta_alpha = beta.checked_mul(alpha)?;
    let one = QuadElem::one(beta.d().clone())?;
    let lhs = ctx.count(&beta_alpha)?;
    let mid = ctx.count(&beta_alpha.checked_sub(&one)?)?;
    let rhs = ctx.count(alpha)?;
    Ok(lhs == mid + rhs)
}

/// Independent oracle: counts polynomials P with deg P ≤ max_deg and
/// |coefficients| ≤ coeff_cap such that P·f + R has all coefficients ≥ 0,
/// where R is the reference digit vector of α. Each such P corresponds to
/// exactly one partition of α. When f is always-finite the digit bounds
/// R_j ≤ floor(α̂ / β̂^j) close the search space from both sides, so large
/// coefficient caps are free.
pub fn oracle_count(f: &QuadPoly, alpha_digits: &Partition, max_deg: usize, coeff_cap: &BigInt) -> BigUint {
    let embed = embedding_bounds(f, alpha_digits, max_deg + 2);
    let zero = BigInt::zero();
    oracle_rec(
        f,
        alpha_digits.coeffs(),
        max_deg,
        coeff_cap,
        embed.as_deref(),
        0,
        &zero.clone(),
        &zero,
    )
}

/// Digit ceilings M_j = floor(α̂ / β̂^j) for j = 0..=hi_deg, when f has a
/// real root above 1 (always-finite regime); `None` otherwise.
fn embedding_bounds(f: &QuadPoly, alpha_digits: &Partition, hi_deg: usize) -> Option<Vec<BigInt>> {
    if f.is_complex() {
        return None;
    }
    let finite = matches!(
        classify(f).map(|c| c.verdict),
        Ok(Verdict::AlwaysFinite)
    );
    if !finite {
        return None;
    }
    let (beta, _) = f.roots().ok()?;
    let alpha_hat = alpha_digits.evaluate(&beta).ok()?;
    let mut bounds = Vec::with_capacity(hi_deg + 1);
    let mut power = QuadElem::one(beta.d().clone()).ok()?;
    for _ in 0..=hi_deg {
        bounds.push(alpha_hat.floor_div(&power).ok()?);
        power = power.checked_mul(&beta).ok()?;
    }
    Some(bounds)
}

#[allow(clippy::too_many_arguments)]
fn oracle_rec(
    f: &QuadPoly,
    r: &[BigInt],
    max_deg: usize,
    cap: &BigInt,
    embed: Option<&[BigInt]>,
    j: usize,
    pm1: &BigInt,
    pm2: &BigInt,
) -> BigUint {
    let digit = |i: usize| r.get(i).cloned().unwrap_or_default();
    if j > max_deg {
        // No unknowns remain; the top two output coefficients must also be
        // non-negative.
        let tail1 = digit(max_deg + 1) + f.b() * pm1 + f.a() * pm2;
        let tail2 = digit(max_deg + 2) + f.a() * pm1;
        return if tail1.is_negative() || tail2.is_negative() {
            BigUint::zero()
        } else {
            BigUint::one()
        };
    }
    let t = digit(j) + f.b() * pm1 + f.a() * pm2;
    let c = f.c();
    // Output coefficient R_j = t + C·p_j must lie in [0, M_j] (M_j = ∞
    // without embedding bounds).
    let (mut p_lo, mut p_hi) = if c.is_positive() {
        let lo = (-&t).div_ceil(c);
        let hi = match embed {
            Some(m) => (&m[j] - &t).div_floor(c),
            None => cap.clone(),
        };
        (lo, hi)
    } else {
        let hi = (-&t).div_floor(c);
        let lo = match embed {
            Some(m) => (&m[j] - &t).div_ceil(c),
            None => -cap.clone(),
        };
        (lo, hi)
    };
    p_lo = p_lo.max(-cap.clone());
    p_hi = p_hi.min(cap.clone());
    let mut total = BigUint::zero();
    let mut p = p_lo;
    while p <= p_hi {
        total += oracle_rec(f, r, max_deg, cap, embed, j + 1, &p, pm1);
        p += 1;
    }
    total
}

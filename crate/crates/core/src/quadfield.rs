//! Exact arithmetic in real quadratic fields ℚ(√D), plus integer quadratic
//! polynomials and their root data.
//!
//! - `QuadElem` is the canonical representation (p + q√D)/r with
//!   gcd(p, q, r) = 1, r ≥ 1, and D squarefree ≥ 2.
//! - All comparisons are exact: signs are decided by integer squaring
//!   arguments, floors by integer square roots with boundary checks.
//! - No floating point anywhere on a correctness path.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Trial-division bound for squarefree-kernel extraction. Beyond this the
/// remaining cofactor is classified by exact perfect-square and size
/// arguments, or rejected with a resource error.
const KERNEL_TRIAL_BOUND: u128 = 10_000_000;

/// Largest cofactor that is provably squarefree after trial division up to
/// `KERNEL_TRIAL_BOUND`: any non-square with a repeated prime factor above
/// the bound is at least bound² · bound = 10²¹.
const KERNEL_SQUAREFREE_LIMIT: u128 = 1_000_000_000_000_000_000_000;

/// Decomposes n > 0 as n = k² · kernel with kernel squarefree.
/// Returns (kernel, k).
pub fn squarefree_kernel(n: &BigInt) -> Result<(BigInt, BigInt)> {
    if !n.is_positive() {
        return Err(Error::Domain(format!(
            "squarefree kernel requires a positive argument, got {n}"
        )));
    }
    if let Some(m) = n.to_u128() {
        let (kernel, k) = kernel_u128(m)?;
        return Ok((BigInt::from(kernel), BigInt::from(k)));
    }
    // Numbers beyond u128: strip small square factors, then classify the
    // remaining cofactor exactly or refuse.
    let mut m = n.clone();
    let mut k = BigInt::one();
    let mut kernel = BigInt::one();
    let mut d = BigInt::from(2u8);
    let bound = BigInt::from(KERNEL_TRIAL_BOUND);
    while &d * &d <= m && d <= bound {
        let mut e = 0u32;
        while (&m % &d).is_zero() {
            m /= &d;
            e += 1;
        }
        if e % 2 == 1 {
            kernel *= &d;
        }
        k *= d.pow(e / 2);
        d += 1;
    }
    if m.is_one() {
        return Ok((kernel, k));
    }
    if &d * &d > m {
        // All factors up to √m removed, so m is prime.
        return Ok((kernel * m, k));
    }
    let s = m.sqrt();
    if &s * &s == m {
        return Ok((kernel, k * s));
    }
    if m < BigInt::from(KERNEL_SQUAREFREE_LIMIT) {
        // All prime factors of m exceed the trial bound, m is not a perfect
        // square, and m is too small to be p²·q with p, q above the bound,
        // so m is squarefree.
        return Ok((kernel * m, k));
    }
    Err(Error::Resource(format!(
        "cannot certify the squarefree kernel of {n}: unfactored cofactor too large"
    )))
}

fn kernel_u128(mut m: u128) -> Result<(u128, u128)> {
    let mut kernel: u128 = 1;
    let mut k: u128 = 1;
    let mut d: u128 = 2;
    while d * d <= m && d <= KERNEL_TRIAL_BOUND {
        let mut e = 0u32;
        while m % d == 0 {
            m /= d;
            e += 1;
        }
        if e % 2 == 1 {
            kernel *= d;
        }
        k *= d.pow(e / 2);
        d += 1;
    }
    if m == 1 {
        return Ok((kernel, k));
    }
    if d * d > m {
        return Ok((kernel * m, k));
    }
    let s = m.sqrt();
    if s * s == m {
        return Ok((kernel, k * s));
    }
    if m < KERNEL_SQUAREFREE_LIMIT {
        return Ok((kernel * m, k));
    }
    Err(Error::Resource(format!(
        "cannot certify the squarefree kernel: unfactored cofactor {m} too large"
    )))
}

fn is_squarefree(n: &BigInt) -> Result<bool> {
    let (kernel, _) = squarefree_kernel(n)?;
    Ok(&kernel == n)
}

/// Exact element (p + q√D)/r of ℚ(√D).
///
/// Canonical form: gcd(p, q, r) = 1, r ≥ 1, D squarefree ≥ 2. The
/// representation is unique within a fixed field context D. Rational
/// elements (q = 0) are compatible with any context: arithmetic adopts the
/// other operand's D, while mixing two genuinely irrational contexts is a
/// domain error.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadElem {
    p: BigInt,
    q: BigInt,
    r: BigInt,
    d: BigInt,
}

impl QuadElem {
    /// Canonicalizes (p + q√D)/r. Requires r ≠ 0 and D squarefree ≥ 2.
    pub fn new(
        p: impl Into<BigInt>,
        q: impl Into<BigInt>,
        r: impl Into<BigInt>,
        d: impl Into<BigInt>,
    ) -> Result<Self> {
        let d: BigInt = d.into();
        if d < BigInt::from(2u8) {
            return Err(Error::Domain(format!("D must be at least 2, got {d}")));
        }
        if !is_squarefree(&d)? {
            return Err(Error::Domain(format!("D must be squarefree, got {d}")));
        }
        let r: BigInt = r.into();
        if r.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(p.into(), q.into(), r, d))
    }

    /// Canonical form of already-validated numerators/denominator.
    fn normalized(mut p: BigInt, mut q: BigInt, mut r: BigInt, d: BigInt) -> Self {
        if r.is_negative() {
            p = -p;
            q = -q;
            r = -r;
        }
        let g = p.gcd(&q).gcd(&r);
        if g > BigInt::one() {
            p /= &g;
            q /= &g;
            r /= &g;
        }
        QuadElem { p, q, r, d }
    }

    /// The rational integer n viewed inside ℚ(√D).
    pub fn from_integer(n: impl Into<BigInt>, d: impl Into<BigInt>) -> Result<Self> {
        Self::new(n, 0, 1, d)
    }

    pub fn zero(d: impl Into<BigInt>) -> Result<Self> {
        Self::from_integer(0, d)
    }

    pub fn one(d: impl Into<BigInt>) -> Result<Self> {
        Self::from_integer(1, d)
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn r(&self) -> &BigInt {
        &self.r
    }

    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    /// True when the element is rational (no surd part).
    pub fn is_rational(&self) -> bool {
        self.q.is_zero()
    }

    /// Returns n when the element is exactly the rational integer n.
    pub fn as_integer(&self) -> Option<BigInt> {
        if self.q.is_zero() && self.r.is_one() {
            Some(self.p.clone())
        } else {
            None
        }
    }

    /// Exact sign via the integer squaring argument: when p and q√D have
    /// opposite signs the winner is decided by comparing p² with q²D.
    pub fn sign(&self) -> i32 {
        let sp = sign_of(&self.p);
        let sq = sign_of(&self.q);
        if sq == 0 {
            return sp;
        }
        if sp == 0 {
            return sq;
        }
        if sp == sq {
            return sp;
        }
        let lhs = &self.p * &self.p;
        let rhs = &self.q * &self.q * &self.d;
        match lhs.cmp(&rhs) {
            Ordering::Greater => sp,
            Ordering::Less => sq,
            Ordering::Equal => 0, // unreachable: D squarefree ≥ 2 is never a square ratio
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.sign() < 0
    }

    /// Galois conjugate: (p − q√D)/r.
    pub fn conjugate(&self) -> QuadElem {
        QuadElem {
            p: self.p.clone(),
            q: -&self.q,
            r: self.r.clone(),
            d: self.d.clone(),
        }
    }

    /// (Tr, Nm) = (x + x′, x·x′) as exact rationals.
    pub fn trace_norm(&self) -> (BigRational, BigRational) {
        let tr = BigRational::new(2 * &self.p, self.r.clone());
        let nm = BigRational::new(
            &self.p * &self.p - &self.q * &self.q * &self.d,
            &self.r * &self.r,
        );
        (tr, nm)
    }

    /// Shared field context for a binary operation. Rational operands adopt
    /// the other side's D; two distinct irrational contexts do not mix.
    fn unified_d(&self, other: &QuadElem) -> Result<BigInt> {
        if self.d == other.d || other.q.is_zero() {
            Ok(self.d.clone())
        } else if self.q.is_zero() {
            Ok(other.d.clone())
        } else {
            Err(Error::Domain(format!(
                "mixed field contexts: sqrt({}) vs sqrt({})",
                self.d, other.d
            )))
        }
    }

    pub fn checked_add(&self, other: &QuadElem) -> Result<QuadElem> {
        let d = self.unified_d(other)?;
        Ok(QuadElem::normalized(
            &self.p * &other.r + &other.p * &self.r,
            &self.q * &other.r + &other.q * &self.r,
            &self.r * &other.r,
            d,
        ))
    }

    pub fn checked_sub(&self, other: &QuadElem) -> Result<QuadElem> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &QuadElem) -> Result<QuadElem> {
        let d = self.unified_d(other)?;
        Ok(QuadElem::normalized(
            &self.p * &other.p + &self.q * &other.q * &d,
            &self.p * &other.q + &self.q * &other.p,
            &self.r * &other.r,
            d,
        ))
    }

    pub fn checked_div(&self, other: &QuadElem) -> Result<QuadElem> {
        let d = self.unified_d(other)?;
        // 1/y for y = (p + q√D)/r is r(p − q√D)/(p² − q²D); the norm
        // numerator vanishes only for y = 0 because D is not a square.
        let nm = &other.p * &other.p - &other.q * &other.q * &d;
        if nm.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let inv = QuadElem::normalized(&other.r * &other.p, -(&other.r * &other.q), nm, d);
        self.checked_mul(&inv)
    }

    /// Multiplies by a rational integer.
    pub fn scale(&self, n: &BigInt) -> QuadElem {
        QuadElem::normalized(&self.p * n, &self.q * n, self.r.clone(), self.d.clone())
    }

    pub fn pow(&self, e: u32) -> QuadElem {
        let mut acc = QuadElem {
            p: BigInt::one(),
            q: BigInt::zero(),
            r: BigInt::one(),
            d: self.d.clone(),
        };
        for _ in 0..e {
            acc = acc.checked_mul(self).expect("same field context");
        }
        acc
    }

    /// Exact floor. Uses t = ⌊q√D⌋ from an integer square root; since
    /// p + q√D lies in [p+t, p+t+1) and that interval contains no integer
    /// in its interior, ⌊(p + q√D)/r⌋ = ⌊(p+t)/r⌋ with no correction step.
    pub fn floor(&self) -> BigInt {
        let t = floor_surd(&self.q, &self.d);
        (&self.p + t).div_floor(&self.r)
    }

    /// ⌊x/y⌋ for y > 0, exactly.
    pub fn floor_div(&self, y: &QuadElem) -> Result<BigInt> {
        if y.sign() <= 0 {
            return Err(Error::Domain("floor_div requires a positive divisor".into()));
        }
        Ok(self.checked_div(y)?.floor())
    }

    /// Exact comparison within a shared field context.
    pub fn cmp_exact(&self, other: &QuadElem) -> Result<Ordering> {
        Ok(match self.checked_sub(other)?.sign() {
            s if s < 0 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        })
    }
}

fn sign_of(n: &BigInt) -> i32 {
    if n.is_zero() {
        0
    } else if n.is_positive() {
        1
    } else {
        -1
    }
}

/// ⌊q√D⌋ for integer q and squarefree D ≥ 2.
fn floor_surd(q: &BigInt, d: &BigInt) -> BigInt {
    if q.is_zero() {
        return BigInt::zero();
    }
    let m = q * q * d;
    let s = m.sqrt();
    if q.is_positive() {
        s
    } else if &s * &s == m {
        -s
    } else {
        -s - 1
    }
}

impl std::ops::Neg for &QuadElem {
    type Output = QuadElem;
    fn neg(self) -> QuadElem {
        QuadElem {
            p: -&self.p,
            q: -&self.q,
            r: self.r.clone(),
            d: self.d.clone(),
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl std::ops::$trait<&QuadElem> for &QuadElem {
            type Output = QuadElem;
            fn $method(self, rhs: &QuadElem) -> QuadElem {
                self.$checked(rhs).expect("compatible field contexts")
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);

impl fmt::Display for QuadElem {
    /// Canonical textual form `(p+q*sqrt(D))/r`, with the sign of q folded
    /// into the separator, e.g. `(3-2*sqrt(2))/1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (sep, qa) = if self.q.is_negative() {
            ("-", -&self.q)
        } else {
            ("+", self.q.clone())
        };
        write!(f, "({}{}{}*sqrt({}))/{}", self.p, sep, qa, self.d, self.r)
    }
}

impl fmt::Debug for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Primitive integer quadratic Ax² + Bx + C with A > 0, irreducible over ℚ
/// (discriminant nonzero and not a perfect square).
///
/// Construction canonicalizes sign (negating all coefficients if A < 0) and
/// divides out the content, both of which preserve the root set.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadPoly {
    a: BigInt,
    b: BigInt,
    c: BigInt,
}

impl QuadPoly {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>) -> Result<Self> {
        let mut a: BigInt = a.into();
        let mut b: BigInt = b.into();
        let mut c: BigInt = c.into();
        if a.is_zero() {
            return Err(Error::Domain("leading coefficient must be nonzero".into()));
        }
        if a.is_negative() {
            a = -a;
            b = -b;
            c = -c;
        }
        let g = a.gcd(&b).gcd(&c);
        if g > BigInt::one() {
            a /= &g;
            b /= &g;
            c /= &g;
        }
        let poly = QuadPoly { a, b, c };
        let disc = poly.disc();
        if disc.is_zero() {
            return Err(Error::Reducible(format!("{poly} has a double rational root")));
        }
        if disc.is_positive() {
            let s = disc.sqrt();
            if &s * &s == disc {
                return Err(Error::Reducible(format!(
                    "{poly} has discriminant {disc} = {s}², hence rational roots"
                )));
            }
        }
        Ok(poly)
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn c(&self) -> &BigInt {
        &self.c
    }

    /// E = −B, the negated linear coefficient.
    pub fn e(&self) -> BigInt {
        -&self.b
    }

    /// F = −C, the negated constant coefficient.
    pub fn f(&self) -> BigInt {
        -&self.c
    }

    /// Discriminant B² − 4AC.
    pub fn disc(&self) -> BigInt {
        &self.b * &self.b - BigInt::from(4u8) * &self.a * &self.c
    }

    pub fn is_monic(&self) -> bool {
        self.a.is_one()
    }

    /// True when the roots are complex conjugates (negative discriminant).
    pub fn is_complex(&self) -> bool {
        self.disc().is_negative()
    }

    /// (Tr, Nm) of either root: (−B/A, C/A).
    pub fn trace_norm(&self) -> (BigRational, BigRational) {
        (
            BigRational::new(-&self.b, self.a.clone()),
            BigRational::new(self.c.clone(), self.a.clone()),
        )
    }

    /// Both real roots as exact elements of ℚ(√D), D the squarefree kernel
    /// of the discriminant: ((−B + k√D)/2A, (−B − k√D)/2A), larger first.
    pub fn roots(&self) -> Result<(QuadElem, QuadElem)> {
        let disc = self.disc();
        if disc.is_negative() {
            return Err(Error::Domain(format!(
                "{self} has complex roots; only trace/norm data is available"
            )));
        }
        let (d, k) = squarefree_kernel(&disc)?;
        debug_assert!(!k.is_zero() && d >= BigInt::from(2u8));
        let two_a = BigInt::from(2u8) * &self.a;
        let beta = QuadElem::normalized(-&self.b, k.clone(), two_a.clone(), d.clone());
        let beta_conj = QuadElem::normalized(-&self.b, -k, two_a, d);
        Ok((beta, beta_conj))
    }

    /// Evaluates Ax² + Bx + C at a field element.
    pub fn eval_elem(&self, x: &QuadElem) -> Result<QuadElem> {
        let x2 = x.checked_mul(x)?;
        x2.scale(&self.a)
            .checked_add(&x.scale(&self.b))?
            .checked_add(&QuadElem::from_integer(self.c.clone(), x.d().clone())?)
    }

    /// Coefficients as a CSV fragment `A,B,C`.
    pub fn coeff_string(&self) -> String {
        format!("{},{},{}", self.a, self.b, self.c)
    }
}

impl fmt::Display for QuadPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x^2{:+}x{:+}", self.a, self.b, self.c)
    }
}

impl fmt::Debug for QuadPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

//! Integer polynomial vectors in ascending coefficient order.
//!
//! Internal plumbing shared by the enumerator, witness, and verifier
//! modules. A polynomial is a `Vec<BigInt>` with index i holding the
//! coefficient of x^i; the empty vector is the zero polynomial.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::quadfield::QuadPoly;

/// Drops trailing zero coefficients in place.
pub(crate) fn trim(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

pub(crate) fn add(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let zero = BigInt::zero();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        out.push(a.get(i).unwrap_or(&zero) + b.get(i).unwrap_or(&zero));
    }
    trim(&mut out);
    out
}

pub(crate) fn mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

/// x^k · p.
pub(crate) fn shift(p: &[BigInt], k: usize) -> Vec<BigInt> {
    if p.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); k];
    out.extend_from_slice(p);
    out
}

/// Coefficient vector of a quadratic, ascending: [C, B, A].
pub(crate) fn from_quad(f: &QuadPoly) -> Vec<BigInt> {
    vec![f.c().clone(), f.b().clone(), f.a().clone()]
}

/// Exact division of an integer polynomial by Ax² + Bx + C over ℚ.
/// Returns the rational quotient when the remainder vanishes.
pub(crate) fn div_exact_by_quad(v: &[BigInt], f: &QuadPoly) -> Option<Vec<BigRational>> {
    if v.len() < 3 {
        return v.iter().all(Zero::is_zero).then(Vec::new);
    }
    let a = BigRational::from(f.a().clone());
    let b = BigRational::from(f.b().clone());
    let c = BigRational::from(f.c().clone());
    let mut rem: Vec<BigRational> = v.iter().cloned().map(BigRational::from).collect();
    let n = rem.len();
    let mut quot = vec![BigRational::zero(); n - 2];
    for i in (2..n).rev() {
        let q = &rem[i] / &a;
        if !q.is_zero() {
            rem[i] = BigRational::zero();
            let t1 = &q * &b;
            rem[i - 1] -= t1;
            let t2 = &q * &c;
            rem[i - 2] -= t2;
        }
        quot[i - 2] = q;
    }
    (rem[0].is_zero() && rem[1].is_zero()).then_some(quot)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn mul_and_add() {
        // (1 + x)(1 − x) = 1 − x²
        assert_eq!(mul(&v(&[1, 1]), &v(&[1, -1])), v(&[1, 0, -1]));
        assert_eq!(add(&v(&[1, 2]), &v(&[0, -2, 3])), v(&[1, 0, 3]));
        assert_eq!(add(&v(&[1]), &v(&[-1])), v(&[]));
    }

    #[test]
    fn exact_division_by_quadratic() {
        let f = QuadPoly::new(1, 0, 1).unwrap();
        // x⁴ + 2x² + 1 = (x² + 1)²
        let q = div_exact_by_quad(&v(&[1, 0, 2, 0, 1]), &f).unwrap();
        assert_eq!(
            q,
            v(&[1, 0, 1]).into_iter().map(BigRational::from).collect::<Vec<_>>()
        );
        assert!(div_exact_by_quad(&v(&[1, 0, 1, 0, 1]), &f).is_none());
    }
}

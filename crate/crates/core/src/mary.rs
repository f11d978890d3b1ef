//! The m-ary partition function b_m(n): partitions of n into powers of an
//! integer base m ≥ 2. Serves as an independent baseline oracle for the
//! field enumerator and carries the digit-product congruence check.
//!
//! Recurrences used for the table (base b_m(0) = 1):
//! - flat runs: b_m(mn) = b_m(mn+1) = … = b_m(mn+m−1),
//! - splitting: b_m(mn) = b_m((n−1)m) + b_m(n).

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};

/// Monotonically grown table of b_m values. Growth requires `&mut self`;
/// concurrent readers of a frozen table are safe.
#[derive(Clone, Debug)]
pub struct MaryTable {
    m: u64,
    values: Vec<BigUint>,
}

impl MaryTable {
    pub fn new(m: u64) -> Result<Self> {
        if m < 2 {
            return Err(Error::Domain(format!("base must be at least 2, got {m}")));
        }
        Ok(MaryTable {
            m,
            values: vec![BigUint::one()],
        })
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn computed_up_to(&self) -> usize {
        self.values.len() - 1
    }

    /// Extends the table through index n using the two recurrences:
    /// multiples of m split as b_m(i−m) + b_m(i/m), everything else copies
    /// the value at the previous multiple of m (flat run).
    pub fn ensure(&mut self, n: usize) {
        let m = self.m as usize;
        for i in self.values.len()..=n {
            let v = if i % m != 0 {
                self.values[i - i % m].clone()
            } else {
                &self.values[i - m] + &self.values[i / m]
            };
            self.values.push(v);
        }
    }

    pub fn bm(&mut self, n: usize) -> &BigUint {
        self.ensure(n);
        &self.values[n]
    }

    /// Values b_m(0..=n) as a slice, growing the table as needed.
    pub fn prefix(&mut self, n: usize) -> &[BigUint] {
        self.ensure(n);
        &self.values[..=n]
    }
}

/// b_m(n) as a one-shot computation.
pub fn bm(m: u64, n: usize) -> Result<BigUint> {
    let mut table = MaryTable::new(m)?;
    Ok(table.bm(n).clone())
}

/// Digit-product congruence check: computes the base-m digits a_i of n and
/// returns (b_m(mn) mod m, ∏(a_i + 1) mod m, equality flag).
pub fn afs_congruence_check(m: u64, n: usize) -> Result<(u64, u64, bool)> {
    let mut table = MaryTable::new(m)?;
    let lhs_big = table.bm(n * m as usize) % BigUint::from(m);
    let lhs = lhs_big.try_into().expect("residue fits u64");
    let mut rhs: u64 = 1;
    let mut rest = n as u64;
    while rest > 0 {
        rhs = rhs * ((rest % m + 1) % m) % m;
        rest /= m;
    }
    rhs %= m;
    Ok((lhs, rhs, lhs == rhs))
}

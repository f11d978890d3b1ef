//! Instance-level verification suites: each op re-derives a structural
//! claim about partition counts on concrete inputs, by independent
//! computation on both sides, and records every instance in a report.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::classifier::{classify, Verdict};
use crate::enumerator::{Caps, CountContext, Partition};
use crate::error::{Error, Result};
use crate::polyvec;
use crate::quadfield::{QuadElem, QuadPoly};

/// One verified instance: the input it concerns, the expected and computed
/// values as display strings, and whether they agreed.
#[derive(Clone, Debug)]
pub struct Instance {
    pub input: String,
    pub expected: String,
    pub computed: String,
    pub ok: bool,
}

/// A claim tag plus its verified instances; `all_ok` holds exactly when
/// every instance passed.
#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub claim: String,
    pub instances: Vec<Instance>,
    pub all_ok: bool,
}

impl VerificationReport {
    fn new(claim: &str) -> Self {
        VerificationReport {
            claim: claim.to_string(),
            instances: Vec::new(),
            all_ok: true,
        }
    }

    fn push(&mut self, input: String, expected: String, computed: String, ok: bool) {
        self.all_ok &= ok;
        self.instances.push(Instance {
            input,
            expected,
            computed,
            ok,
        });
    }
}

fn require_monic_totally_positive(f: &QuadPoly) -> Result<QuadElem> {
    if !f.is_monic() {
        return Err(Error::Domain(format!("{f} is not monic")));
    }
    let (beta, beta_conj) = f.roots()?;
    if !beta.is_positive() || !beta_conj.is_positive() {
        return Err(Error::Domain(format!("roots of {f} are not totally positive")));
    }
    Ok(beta)
}

/// The n+1 digit vectors x^j + … + x^{n−1} times f, plus E·xⁿ, for
/// j = 0..n (j = n contributes the bare E·xⁿ). Each is a partition of
/// E·βⁿ whenever its entries are non-negative.
fn predicted_family(f: &QuadPoly, n: usize) -> Result<Vec<Partition>> {
    let fvec = polyvec::from_quad(f);
    let mut e_term = vec![BigInt::zero(); n + 1];
    e_term[n] = f.e();
    let mut out = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let mut quotient = vec![BigInt::zero(); j];
        quotient.extend(std::iter::repeat_n(BigInt::one(), n - j));
        let q = polyvec::add(&polyvec::mul(&quotient, &fvec), &e_term);
        out.push(Partition::new(q)?);
    }
    out.sort_by(|x, y| {
        x.coeffs()
            .len()
            .cmp(&y.coeffs().len())
            .then_with(|| x.coeffs().cmp(y.coeffs()))
    });
    Ok(out)
}

/// For monic f with totally positive roots inside the window
/// Tr ≤ Nm < 2·Tr − 4: checks p_β(E·βⁿ) = n+1 for n = 0..n_max, and that
/// the enumerated partitions are exactly the predicted family.
pub fn verify_trace_power_counts(f: &QuadPoly, n_max: usize) -> Result<VerificationReport> {
    let beta = require_monic_totally_positive(f)?;
    let (e, c) = (f.e(), f.c().clone());
    if !(e <= c && c < 2 * &e - 4) {
        return Err(Error::Domain(format!(
            "{f} violates the window Tr <= Nm < 2Tr - 4 (Tr = {e}, Nm = {c})"
        )));
    }
    let ctx = CountContext::new(f, Caps::default())?;
    let mut report = VerificationReport::new("trace-power-counts");
    let mut target = QuadElem::from_integer(e.clone(), beta.d().clone())?;
    for n in 0..=n_max {
        let computed = ctx.count(&target)?;
        let expected = BigUint::from(n + 1);
        report.push(
            format!("{f}, alpha = {e}*beta^{n}"),
            format!("count {expected}"),
            format!("count {computed}"),
            computed == expected,
        );
        let listed = ctx.enumerate(&target)?;
        let predicted = predicted_family(f, n)?;
        let ok = listed == predicted;
        report.push(
            format!("{f}, alpha = {e}*beta^{n}"),
            format!("family of {}", predicted.len()),
            if ok {
                "same family".to_string()
            } else {
                format!("{} partitions, mismatch", listed.len())
            },
            ok,
        );
        target = target.checked_mul(&beta)?;
    }
    Ok(report)
}

/// For monic totally positive f with E, C ≥ 1 in the always-finite regime:
/// every nontrivial partition of E·βⁿ has degree exactly n+1 and leading
/// digit 1.
pub fn verify_leading_term_structure(f: &QuadPoly, n: usize) -> Result<VerificationReport> {
    let beta = require_monic_totally_positive(f)?;
    if !f.e().is_positive() || !f.c().is_positive() {
        return Err(Error::Domain(format!("{f} needs E >= 1 and C >= 1")));
    }
    let ctx = CountContext::new(f, Caps::default())?;
    let e = f.e();
    let target = beta.pow(n as u32).scale(&e);
    let listed = ctx.enumerate(&target)?;
    let mut trivial = vec![BigInt::zero(); n + 1];
    trivial[n] = e.clone();
    let trivial = Partition::new(trivial)?;
    let mut report = VerificationReport::new("leading-term-structure");
    report.push(
        format!("{f}, alpha = {e}*beta^{n}"),
        "trivial digit vector present".to_string(),
        format!("{} partitions", listed.len()),
        listed.contains(&trivial),
    );
    for p in listed.iter().filter(|p| **p != trivial) {
        let ok = p.degree() == Some(n + 1)
            && p.coeffs().last().is_some_and(|lead| lead.is_one());
        report.push(
            format!("{f}, partition {p}"),
            format!("degree {} with leading digit 1", n + 1),
            format!(
                "degree {:?}, leading digit {}",
                p.degree(),
                p.coeffs().last().map(|x| x.to_string()).unwrap_or_default()
            ),
            ok,
        );
    }
    Ok(report)
}

/// For monic totally positive f with Tr > Nm: computes
/// c_β = p_γ(E·γ) for the reciprocal base γ = 1/β and checks
/// p_β(E·βⁿ) ≤ c_β for n = 0..n_max.
pub fn verify_reciprocal_bound(f: &QuadPoly, n_max: usize) -> Result<VerificationReport> {
    let beta = require_monic_totally_positive(f)?;
    let (e, c) = (f.e(), f.c().clone());
    if e <= c {
        return Err(Error::Domain(format!(
            "{f} needs Tr > Nm (Tr = {e}, Nm = {c})"
        )));
    }
    let one = QuadElem::one(beta.d().clone())?;
    let gamma = one.checked_div(&beta)?;
    let gamma_ctx = CountContext::for_base(&gamma, Caps::default())?;
    let bound = gamma_ctx.count(&gamma.scale(&e))?;
    let ctx = CountContext::new(f, Caps::default())?;
    let mut report = VerificationReport::new("reciprocal-bound");
    let mut target = QuadElem::from_integer(e.clone(), beta.d().clone())?;
    for n in 0..=n_max {
        let computed = ctx.count(&target)?;
        report.push(
            format!("{f}, alpha = {e}*beta^{n}"),
            format!("count <= {bound}"),
            format!("count {computed}"),
            computed <= bound,
        );
        target = target.checked_mul(&beta)?;
    }
    Ok(report)
}

/// For monic totally positive f: if Nm ≥ 2·Tr the four displayed
/// expansions of E·β² are distinct exact partitions and p_β(E·β²) ≥ 4; if
/// Nm ≥ 2·Tr − 3 the five displayed expansions of E·β³ are distinct exact
/// partitions and p_β(E·β³) ≥ 5. Both groups run when both bounds hold.
pub fn verify_small_power_bounds(f: &QuadPoly) -> Result<VerificationReport> {
    let beta = require_monic_totally_positive(f)?;
    let (e, c) = (f.e(), f.c().clone());
    let case_two_applies = c >= 2 * &e - 3;
    let case_one_applies = c >= 2 * &e;
    if !case_two_applies {
        return Err(Error::Domain(format!(
            "{f} satisfies neither Nm >= 2Tr nor Nm >= 2Tr - 3 (Tr = {e}, Nm = {c})"
        )));
    }
    let ctx = CountContext::new(f, Caps::default())?;
    let mut report = VerificationReport::new("small-power-bounds");

    let check_group = |power: u32,
                           expansions: Vec<Vec<BigInt>>,
                           min_count: usize,
                           report: &mut VerificationReport|
     -> Result<()> {
        let target = beta.pow(power).scale(&e);
        let mut seen: Vec<Partition> = Vec::new();
        for digits in expansions {
            let p = Partition::new(digits)?;
            let value = p.evaluate(&beta)?;
            let ok = value == target && !seen.contains(&p);
            report.push(
                format!("{f}, expansion {p} of {e}*beta^{power}"),
                "distinct exact partition".to_string(),
                if ok { "verified".to_string() } else { format!("evaluates to {value}") },
                ok,
            );
            seen.push(p);
        }
        let computed = ctx.count(&target)?;
        report.push(
            format!("{f}, alpha = {e}*beta^{power}"),
            format!("count >= {min_count}"),
            format!("count {computed}"),
            computed >= BigUint::from(min_count),
        );
        Ok(())
    };

    if case_one_applies {
        let z = BigInt::zero;
        let expansions = vec![
            vec![z(), z(), e.clone()],
            vec![z(), c.clone(), z(), BigInt::one()],
            vec![c.clone(), &c - &e, BigInt::one(), BigInt::one()],
            vec![2 * &c, &c - 2 * &e, BigInt::from(2), BigInt::one()],
        ];
        check_group(2, expansions, 4, &mut report)?;
    }
    if case_two_applies {
        let z = BigInt::zero;
        let expansions = vec![
            vec![z(), z(), z(), e.clone()],
            vec![z(), z(), c.clone(), z(), BigInt::one()],
            vec![z(), c.clone(), &c - &e, BigInt::one(), BigInt::one()],
            vec![c.clone(), &c - &e, &c - &e + 1, BigInt::one(), BigInt::one()],
            vec![3 * &c, 2 * &c - 3 * &e, &c - 2 * &e + 3, BigInt::from(2), BigInt::one()],
        ];
        check_group(3, expansions, 5, &mut report)?;
    }
    Ok(report)
}

/// One congruence row: a target, its exact count, and the count's residue
/// for each modulus.
#[derive(Clone, Debug)]
pub struct CongruenceRow {
    pub target: String,
    pub count: BigUint,
    pub residues: Vec<(u64, u64)>,
}

/// Exploratory residue table of partition counts over a prepared context.
pub fn congruence_table_with_context(
    ctx: &CountContext,
    targets: &[QuadElem],
    moduli: &[u64],
) -> Result<Vec<CongruenceRow>> {
    let mut rows = Vec::with_capacity(targets.len());
    for t in targets {
        let count = ctx.count(t)?;
        let residues = moduli
            .iter()
            .map(|&m| {
                if m == 0 {
                    Err(Error::Domain("modulus 0 in congruence table".into()))
                } else {
                    let r = (&count % m).to_u64().expect("residue fits");
                    Ok((m, r))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(CongruenceRow {
            target: t.to_string(),
            count,
            residues,
        });
    }
    Ok(rows)
}

/// Residue table for the larger root of an always-finite polynomial.
pub fn congruence_table(
    f: &QuadPoly,
    targets: &[QuadElem],
    moduli: &[u64],
) -> Result<Vec<CongruenceRow>> {
    let cls = classify(f)?;
    if cls.verdict != Verdict::AlwaysFinite {
        return Err(Error::Regime(format!(
            "congruence table needs the always-finite regime; {f} is {}",
            cls.verdict
        )));
    }
    let ctx = CountContext::new(f, Caps::default())?;
    congruence_table_with_context(&ctx, targets, moduli)
}

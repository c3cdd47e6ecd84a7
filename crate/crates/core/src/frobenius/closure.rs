//! Frobenius-closure chains `C_e = {r : r^(p^e) ∈ I^[p^e] + J}` and Q-numbers.

use log::{debug, error};

use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::ringstruct::QuotientRing;

use super::bracket_power;
use super::preimage::frobenius_preimage;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClosureOptions {
    pub e_max: u32,
    /// Number of consecutive equal chain terms that count as stable.
    pub window: u32,
    /// Cap on the degree of bracket-power generators.
    pub max_degree: Option<u64>,
}

impl Default for ClosureOptions {
    fn default() -> Self {
        ClosureOptions {
            e_max: 8,
            window: 2,
            max_degree: None,
        }
    }
}

impl ClosureOptions {
    pub fn new(e_max: u32, window: u32) -> Self {
        ClosureOptions {
            e_max,
            window,
            max_degree: None,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.e_max < 1 {
            return Err(Error::InvalidArgument("e_max must be at least 1".into()));
        }
        if self.window < 1 {
            return Err(Error::InvalidArgument("window must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosureStatus {
    /// The chain held constant for `window` consecutive terms. Every
    /// generator of the result is certified to lie in the Frobenius closure;
    /// equality with the closure is heuristic.
    CertifiedSubsetWindowStable,
    NotStabilized,
}

impl ClosureStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            ClosureStatus::CertifiedSubsetWindowStable => "certified_subset_window_stable",
            ClosureStatus::NotStabilized => "not_stabilized",
        }
    }
}

#[derive(Debug, Clone)]
pub struct ChainTerm {
    pub e: u32,
    /// Lift of `C_e` to the ambient ring, generated by its reduced basis.
    pub ideal: Ideal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QNumber {
    pub exponent: u32,
    /// `p^exponent`
    pub q: u64,
}

#[derive(Debug, Clone)]
pub struct ClosureChainReport {
    pub characteristic: u32,
    pub defining: Ideal,
    pub input: Ideal,
    pub chain: Vec<ChainTerm>,
    pub stabilization_index: Option<u32>,
    pub status: ClosureStatus,
    pub q_exponent: Option<u32>,
    pub certificate_ok: bool,
    pub options: ClosureOptions,
}

impl ClosureChainReport {
    /// The last chain term: the closure candidate.
    pub fn closure(&self) -> &Ideal {
        &self.chain.last().expect("chain is never empty").ideal
    }

    pub fn is_stable(&self) -> bool {
        self.status == ClosureStatus::CertifiedSubsetWindowStable
    }

    pub fn q(&self) -> Option<u64> {
        self.q_exponent
            .map(|e| (self.characteristic as u64).pow(e))
    }
}

fn check_degree(ideal: &Ideal, q: u64, cap: Option<u64>) -> Result<()> {
    let Some(cap) = cap else { return Ok(()) };
    let top = ideal
        .generators()
        .iter()
        .filter_map(|g| g.total_degree())
        .max()
        .unwrap_or(0);
    let degree = top.saturating_mul(q);
    if degree > cap {
        return Err(Error::DegreeCapExceeded { degree, cap });
    }
    Ok(())
}

/// `I^[p^e] + J` for a lift `I`.
fn frobenius_target(ring: &QuotientRing, ideal: &Ideal, e: u32) -> Result<Ideal> {
    ring.lift_ideal(&bracket_power(ideal, e))
}

/// Lift of `C_e(I) = U_e(I^[p^e] + J)`; `e = 0` returns the lift of `I`.
pub fn closure_step(ring: &QuotientRing, ideal: &Ideal, e: u32) -> Result<Ideal> {
    let lifted = ring.lift_ideal(ideal)?;
    if e == 0 {
        return Ok(lifted.reduced());
    }
    let target = frobenius_target(ring, &lifted, e)?;
    let u = frobenius_preimage(&target, e)?;
    // J ⊆ U_e(K) already; adding it keeps the lift explicit
    Ok(ring.lift_ideal(&u)?.reduced())
}

/// Computes `C_0 = I, C_1, ...` until `window` consecutive terms agree
/// (counting only runs that reach a computed step) or `e_max` is reached.
pub fn frobenius_closure(
    ring: &QuotientRing,
    ideal: &Ideal,
    options: ClosureOptions,
) -> Result<ClosureChainReport> {
    options.validate()?;
    let p = ring.characteristic() as u64;
    let input = ring.lift_ideal(ideal)?.reduced();
    let mut chain = vec![ChainTerm {
        e: 0,
        ideal: input.clone(),
    }];
    let mut run_start = 0u32;
    let mut stabilization_index = None;
    for e in 1..=options.e_max {
        check_degree(&input, p.saturating_pow(e), options.max_degree)?;
        let next = closure_step(ring, &input, e)?;
        let prev = &chain.last().unwrap().ideal;
        if !prev.is_subset_of(&next)? {
            return Err(Error::InvalidArgument(format!(
                "closure chain failed to ascend at e = {e}"
            )));
        }
        if !prev.equals(&next)? {
            run_start = e;
        }
        debug!("closure step e={e}: {} generators", next.generators().len());
        chain.push(ChainTerm { e, ideal: next });
        if e - run_start + 1 >= options.window {
            stabilization_index = Some(run_start);
            break;
        }
    }
    let status = if stabilization_index.is_some() {
        ClosureStatus::CertifiedSubsetWindowStable
    } else {
        ClosureStatus::NotStabilized
    };

    // g^(p^E) ∈ I^[p^E] + J for every generator g of the candidate
    let cert_index = stabilization_index.unwrap_or(chain.last().unwrap().e);
    let target = frobenius_target(ring, &input, cert_index)?;
    let candidate = &chain.last().unwrap().ideal;
    let mut certificate_ok = true;
    for g in candidate.generators() {
        if !target.contains(&g.frobenius_power(cert_index))? {
            certificate_ok = false;
            break;
        }
    }
    if !certificate_ok {
        error!("closure certificate failed at index {cert_index}");
        return Err(Error::InvalidArgument(
            "closure certificate failed; the chain computation is inconsistent".into(),
        ));
    }

    Ok(ClosureChainReport {
        characteristic: ring.characteristic(),
        defining: ring.defining_ideal().clone(),
        input,
        chain,
        stabilization_index,
        status,
        q_exponent: None,
        certificate_ok,
        options,
    })
}

/// Smallest `e'` with `C^[p^e'] + J = I^[p^e'] + J`; stored into the report.
pub fn q_number(report: &mut ClosureChainReport) -> Result<QNumber> {
    let Some(stable_at) = report.stabilization_index else {
        return Err(Error::NotStabilized(report.options.e_max));
    };
    let closure = report.closure().clone();
    for e in 0..=stable_at {
        let lhs = bracket_power(&closure, e).sum(&report.defining)?;
        let rhs = bracket_power(&report.input, e).sum(&report.defining)?;
        if lhs.equals(&rhs)? {
            report.q_exponent = Some(e);
            return Ok(QNumber {
                exponent: e,
                q: (report.characteristic as u64).pow(e),
            });
        }
    }
    Err(Error::InvalidArgument(format!(
        "no Q-exponent up to the stabilization index {stable_at}; certificate inconsistent"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::PolyRing;

    fn fermat(p: u64) -> QuotientRing {
        let s = PolyRing::grevlex(p, &["x", "y", "z"]).unwrap();
        let f = s.parse("x^3+y^3+z^3").unwrap();
        QuotientRing::new(&s, vec![f]).unwrap()
    }

    #[test]
    fn fermat_closure_chain() {
        let r = fermat(2);
        let i = Ideal::parse(r.ambient(), &["x", "y"]).unwrap();
        let mut report = frobenius_closure(&r, &i, ClosureOptions::new(6, 2)).unwrap();
        assert_eq!(report.chain.len(), 3);
        assert_eq!(report.stabilization_index, Some(1));
        assert!(report.certificate_ok);
        let expected = r
            .lift(&[r.ambient().parse("x").unwrap(), r.ambient().parse("y").unwrap(), r.ambient().parse("z^2").unwrap()])
            .unwrap();
        assert!(report.closure().equals(&expected).unwrap());
        let q = q_number(&mut report).unwrap();
        assert_eq!(q, QNumber { exponent: 1, q: 2 });
        assert_eq!(report.q_exponent, Some(1));
    }

    #[test]
    fn regular_ring_chain_is_constant() {
        let s = PolyRing::grevlex(3, &["x", "y"]).unwrap();
        let r = QuotientRing::polynomial_ring(&s);
        let i = Ideal::parse(&s, &["x", "y^2"]).unwrap();
        let mut report = frobenius_closure(&r, &i, ClosureOptions::default()).unwrap();
        assert_eq!(report.stabilization_index, Some(0));
        assert!(report.closure().equals(&i).unwrap());
        assert_eq!(q_number(&mut report).unwrap().exponent, 0);
    }

    #[test]
    fn window_that_cannot_fit() {
        let r = fermat(2);
        let i = Ideal::parse(r.ambient(), &["x", "y"]).unwrap();
        let mut report = frobenius_closure(&r, &i, ClosureOptions::new(1, 2)).unwrap();
        assert_eq!(report.status, ClosureStatus::NotStabilized);
        assert_eq!(report.chain.len(), 2);
        assert!(report.certificate_ok);
        assert_eq!(q_number(&mut report).unwrap_err(), Error::NotStabilized(1));
    }

    #[test]
    fn unit_and_bad_bounds() {
        let r = fermat(3);
        let unit = Ideal::unit(r.ambient());
        assert!(closure_step(&r, &unit, 2).unwrap().is_unit());
        assert!(frobenius_closure(&r, &unit, ClosureOptions::new(0, 2)).is_err());
        assert!(frobenius_closure(&r, &unit, ClosureOptions::new(2, 0)).is_err());
    }

    #[test]
    fn degree_cap_aborts() {
        let r = fermat(2);
        let i = Ideal::parse(r.ambient(), &["x", "y"]).unwrap();
        let opts = ClosureOptions {
            max_degree: Some(3),
            ..ClosureOptions::default()
        };
        assert_eq!(
            frobenius_closure(&r, &i, opts).unwrap_err(),
            Error::DegreeCapExceeded { degree: 6, cap: 3 }
        );
    }
}

//! Top local cohomology `H^d_m(R)` in Čech form `[r / (b_1...b_d)^n]`, the
//! Frobenius action `x`, x-torsion orders, and HSL-number estimates.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use log::warn;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::frobenius::{bracket_power, frobenius_closure, q_number, ClosureOptions};
use crate::groebner::Ideal;
use crate::poly::Polynomial;
use crate::ring::same_ring;
use crate::ringstruct::QuotientRing;

fn check_sequence(ring: &QuotientRing, sequence: &[Polynomial]) -> Result<()> {
    let d = ring.dimension().unwrap_or(0);
    if d == 0 {
        return Err(Error::InvalidSystemOfParameters(
            "the ring has dimension 0; there is no positive-degree top cohomology".into(),
        ));
    }
    if !ring.is_system_of_parameters(sequence)? {
        return Err(Error::InvalidSystemOfParameters(format!(
            "{} is not a system of parameters of a ring of dimension {d}",
            display_list(sequence)
        )));
    }
    Ok(())
}

fn display_list(elems: &[Polynomial]) -> String {
    let parts: Vec<String> = elems.iter().map(|e| e.to_string()).collect();
    format!("({})", parts.join(", "))
}

/// A quotient ring together with a system of parameters that is also a
/// regular sequence. Zero-test ideals `(b_1^n, ..., b_d^n) + J` are cached
/// per level.
pub struct TopCohomology {
    ring: Arc<QuotientRing>,
    sequence: Vec<Polynomial>,
    product: Polynomial,
    zero_tests: Mutex<HashMap<u64, Ideal>>,
}

impl fmt::Debug for TopCohomology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TopCohomology({:?}, {})", self.ring, display_list(&self.sequence))
    }
}

impl TopCohomology {
    pub fn new(ring: Arc<QuotientRing>, sequence: Vec<Polynomial>) -> Result<Arc<Self>> {
        check_sequence(&ring, &sequence)?;
        if let crate::ringstruct::RegularSequenceCheck::FailsAt(i) =
            ring.is_poor_regular_sequence(&sequence)?
        {
            return Err(Error::InvalidSystemOfParameters(format!(
                "element {} ({}) is a zero-divisor modulo its predecessors",
                i + 1,
                sequence[i]
            )));
        }
        let mut product = Polynomial::one(ring.ambient());
        for b in &sequence {
            product = product.checked_mul(b)?;
        }
        Ok(Arc::new(TopCohomology {
            ring,
            sequence,
            product,
            zero_tests: Mutex::new(HashMap::new()),
        }))
    }

    pub fn ring(&self) -> &Arc<QuotientRing> {
        &self.ring
    }

    pub fn sequence(&self) -> &[Polynomial] {
        &self.sequence
    }

    /// `(b_1^n, ..., b_d^n) + J`.
    pub fn zero_test_ideal(&self, level: u64) -> Result<Ideal> {
        if let Some(i) = self.zero_tests.lock().unwrap().get(&level) {
            return Ok(i.clone());
        }
        let powers: Vec<Polynomial> = self.sequence.iter().map(|b| b.pow(level)).collect();
        let ideal = self.ring.lift(&powers)?.reduced();
        self.zero_tests
            .lock()
            .unwrap()
            .entry(level)
            .or_insert_with(|| ideal.clone());
        Ok(ideal)
    }

    pub fn class(self: &Arc<Self>, numerator: Polynomial, level: u64) -> Result<CechClass> {
        CechClass::new(self, numerator, level)
    }
}

/// `[numerator / (b_1...b_d)^level]`.
#[derive(Clone)]
pub struct CechClass {
    frame: Arc<TopCohomology>,
    numerator: Polynomial,
    level: u64,
}

impl fmt::Debug for CechClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} / ({})^{}]", self.numerator, self.frame.product, self.level)
    }
}

impl fmt::Display for CechClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TorsionOrder {
    /// Smallest `j` with `x^j ζ = 0`.
    Killed(u32),
    /// `x^j ζ ≠ 0` for every `j ≤` this bound.
    Exceeds(u32),
}

impl CechClass {
    pub fn new(frame: &Arc<TopCohomology>, numerator: Polynomial, level: u64) -> Result<Self> {
        if level == 0 {
            return Err(Error::InvalidArgument("class level must be at least 1".into()));
        }
        if !same_ring(numerator.ring(), frame.ring.ambient()) {
            return Err(Error::RingMismatch);
        }
        Ok(CechClass {
            frame: frame.clone(),
            numerator,
            level,
        })
    }

    pub fn frame(&self) -> &Arc<TopCohomology> {
        &self.frame
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.numerator
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    fn same_frame(&self, other: &CechClass) -> Result<()> {
        if Arc::ptr_eq(&self.frame, &other.frame) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    /// `numerator ∈ (b_1^n, ..., b_d^n) + J`.
    pub fn is_zero(&self) -> Result<bool> {
        self.frame.zero_test_ideal(self.level)?.contains(&self.numerator)
    }

    /// `x^k [r/b^n] = [r^(p^k) / b^(n p^k)]`.
    pub fn x_act(&self, k: u32) -> CechClass {
        let q = (self.frame.ring.characteristic() as u64).pow(k);
        CechClass {
            frame: self.frame.clone(),
            numerator: self.numerator.frobenius_power(k),
            level: self.level * q,
        }
    }

    /// `s · [r/b^n] = [s r / b^n]`.
    pub fn scale(&self, s: &Polynomial) -> Result<CechClass> {
        Ok(CechClass {
            frame: self.frame.clone(),
            numerator: self.numerator.checked_mul(s)?,
            level: self.level,
        })
    }

    /// The same class written over `(b_1...b_d)^level` with `level ≥ self.level`.
    pub fn at_level(&self, level: u64) -> Result<CechClass> {
        if level < self.level {
            return Err(Error::InvalidArgument(format!(
                "cannot lower a class from level {} to {level}",
                self.level
            )));
        }
        let shift = self.frame.product.pow(level - self.level);
        Ok(CechClass {
            frame: self.frame.clone(),
            numerator: self.numerator.checked_mul(&shift)?,
            level,
        })
    }

    pub fn checked_add(&self, other: &CechClass) -> Result<CechClass> {
        self.same_frame(other)?;
        let k = self.level.max(other.level);
        let (a, b) = (self.at_level(k)?, other.at_level(k)?);
        Ok(CechClass {
            frame: self.frame.clone(),
            numerator: a.numerator.checked_add(&b.numerator)?,
            level: k,
        })
    }

    pub fn checked_sub(&self, other: &CechClass) -> Result<CechClass> {
        self.same_frame(other)?;
        let k = self.level.max(other.level);
        let (a, b) = (self.at_level(k)?, other.at_level(k)?);
        Ok(CechClass {
            frame: self.frame.clone(),
            numerator: a.numerator.checked_sub(&b.numerator)?,
            level: k,
        })
    }

    pub fn equals(&self, other: &CechClass) -> Result<bool> {
        self.checked_sub(other)?.is_zero()
    }

    pub fn torsion_order(&self, j_max: u32) -> Result<TorsionOrder> {
        for j in 0..=j_max {
            if self.x_act(j).is_zero()? {
                return Ok(TorsionOrder::Killed(j));
            }
        }
        Ok(TorsionOrder::Exceeds(j_max))
    }
}

pub fn cech_is_zero(class: &CechClass) -> Result<bool> {
    class.is_zero()
}

pub fn x_act(class: &CechClass, k: u32) -> CechClass {
    class.x_act(k)
}

pub fn torsion_order(class: &CechClass, j_max: u32) -> Result<TorsionOrder> {
    class.torsion_order(j_max)
}

#[derive(Debug, Clone)]
pub struct EtaRow {
    pub n: u32,
    pub stabilized: bool,
    pub certificate_ok: bool,
    pub q_exponent: Option<u32>,
    /// Lift of the closure candidate of `s^[p^n]`.
    pub closure: Ideal,
}

#[derive(Debug, Clone)]
pub struct EtaReport {
    pub sop: Vec<Polynomial>,
    pub n_max: u32,
    pub e_max: u32,
    pub rows: Vec<EtaRow>,
    /// Max Q-exponent over the scanned rows.
    pub eta_hat: u32,
    /// Every row stabilized.
    pub complete: bool,
}

impl EtaReport {
    pub fn label(&self) -> String {
        if self.complete {
            format!("eta_hat (scan n <= {}, heuristic)", self.n_max)
        } else {
            format!("eta_hat (scan n <= {}, lower bound only)", self.n_max)
        }
    }
}

/// Scans `n = 0..=n_max`, computing the Q-exponent of `s^[p^n]` for the
/// system of parameters `s`. Rows run in parallel.
pub fn eta_estimate(
    ring: &QuotientRing,
    sop: &[Polynomial],
    n_max: u32,
    options: ClosureOptions,
) -> Result<EtaReport> {
    check_sequence(ring, sop)?;
    let base = Ideal::new(ring.ambient(), sop.to_vec())?;
    let rows = (0..=n_max)
        .into_par_iter()
        .map(|n| -> Result<EtaRow> {
            let ideal = bracket_power(&base, n);
            let mut report = frobenius_closure(ring, &ideal, options)?;
            let q_exponent = if report.is_stable() {
                Some(q_number(&mut report)?.exponent)
            } else {
                warn!("eta row n={n}: chain did not stabilize");
                None
            };
            Ok(EtaRow {
                n,
                stabilized: report.is_stable(),
                certificate_ok: report.certificate_ok,
                q_exponent,
                closure: report.closure().clone(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let eta_hat = rows.iter().filter_map(|r| r.q_exponent).max().unwrap_or(0);
    let complete = rows.iter().all(|r| r.stabilized);
    debug_assert!(rows.iter().all(|r| r.q_exponent.unwrap_or(0) <= eta_hat));
    Ok(EtaReport {
        sop: sop.to_vec(),
        n_max,
        e_max: options.e_max,
        rows,
        eta_hat,
        complete,
    })
}

/// `η̂ = 0`. Incomplete scans are rejected.
pub fn f_injective_flag(report: &EtaReport) -> Result<bool> {
    if !report.complete {
        return Err(Error::InvalidArgument(
            "eta report is incomplete; rerun with a larger e_max".into(),
        ));
    }
    Ok(report.eta_hat == 0)
}

/// For `a = (partial)` where `partial ++ extension` is a system of
/// parameters: whether `(a^F)^[p^e] + J = a^[p^e] + J`.
pub fn parameter_ideal_check(
    ring: &QuotientRing,
    partial: &[Polynomial],
    extension: &[Polynomial],
    e: u32,
    options: ClosureOptions,
) -> Result<bool> {
    let mut full = partial.to_vec();
    full.extend(extension.iter().cloned());
    check_sequence(ring, &full)?;
    let ideal = Ideal::new(ring.ambient(), partial.to_vec())?;
    let report = frobenius_closure(ring, &ideal, options)?;
    if !report.is_stable() {
        return Err(Error::NotStabilized(options.e_max));
    }
    let lhs = bracket_power(report.closure(), e).sum(ring.defining_ideal())?;
    let rhs = bracket_power(&ideal, e).sum(ring.defining_ideal())?;
    lhs.equals(&rhs)
}

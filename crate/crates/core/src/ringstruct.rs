//! Quotient rings `R = S/J` and the hypothesis checks used by the closure
//! experiments. Ideals of `R` are represented by their lifts to `S`, which
//! always contain `J`.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::poly::Polynomial;
use crate::ring::{same_ring, PolyRing};

pub struct QuotientRing {
    ambient: Arc<PolyRing>,
    defining: Ideal,
    dimension: OnceLock<Option<usize>>,
    cm_hint: OnceLock<bool>,
    cm_asserted: bool,
}

impl fmt::Debug for QuotientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "QuotientRing(F_{}[{}] / {:?})",
            self.ambient.characteristic(),
            self.ambient.variables().join(", "),
            self.defining
        )
    }
}

/// Outcome of [`QuotientRing::is_poor_regular_sequence`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegularSequenceCheck {
    Regular,
    /// Element at this (0-based) index is a zero-divisor modulo its predecessors.
    FailsAt(usize),
}

impl RegularSequenceCheck {
    pub fn is_regular(self) -> bool {
        self == RegularSequenceCheck::Regular
    }
}

impl QuotientRing {
    pub fn new(ambient: &Arc<PolyRing>, relations: Vec<Polynomial>) -> Result<Self> {
        Ok(QuotientRing {
            ambient: ambient.clone(),
            defining: Ideal::new(ambient, relations)?,
            dimension: OnceLock::new(),
            cm_hint: OnceLock::new(),
            cm_asserted: false,
        })
    }

    /// `S` itself, i.e. `J = 0`.
    pub fn polynomial_ring(ambient: &Arc<PolyRing>) -> Self {
        Self::new(ambient, Vec::new()).expect("no relations")
    }

    /// Records a user assertion that `R` is Cohen–Macaulay.
    pub fn with_cm_assertion(mut self, asserted: bool) -> Self {
        self.cm_asserted = asserted;
        self
    }

    pub fn ambient(&self) -> &Arc<PolyRing> {
        &self.ambient
    }

    pub fn characteristic(&self) -> u32 {
        self.ambient.characteristic()
    }

    pub fn defining_ideal(&self) -> &Ideal {
        &self.defining
    }

    /// Krull dimension of `R`; `None` when `R` is the zero ring.
    pub fn dimension(&self) -> Option<usize> {
        *self
            .dimension
            .get_or_init(|| self.defining.krull_dimension())
    }

    pub fn cm_asserted(&self) -> bool {
        self.cm_asserted
    }

    /// True when `J` is principal or generated by a regular sequence of `S`
    /// (complete intersections are Cohen–Macaulay), or when asserted.
    pub fn cm_hint(&self) -> bool {
        self.cm_asserted
            || *self.cm_hint.get_or_init(|| {
                let j = &self.defining;
                if j.generators().len() <= 1 || j.groebner_basis().len() <= 1 {
                    return true;
                }
                QuotientRing::polynomial_ring(&self.ambient)
                    .is_poor_regular_sequence(j.generators())
                    .map(RegularSequenceCheck::is_regular)
                    .unwrap_or(false)
            })
    }

    fn check(&self, f: &Polynomial) -> Result<()> {
        if same_ring(f.ring(), &self.ambient) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    /// The ideal generated by `gens` together with the generators of `J`.
    pub fn lift(&self, gens: &[Polynomial]) -> Result<Ideal> {
        for g in gens {
            self.check(g)?;
        }
        let mut all = gens.to_vec();
        all.extend(self.defining.generators().iter().cloned());
        Ideal::new(&self.ambient, all)
    }

    pub fn lift_ideal(&self, ideal: &Ideal) -> Result<Ideal> {
        if !same_ring(ideal.ring(), &self.ambient) {
            return Err(Error::RingMismatch);
        }
        ideal.sum(&self.defining)
    }

    /// Equality of the images of `I` and `K` in `R`.
    pub fn project_equal(&self, i: &Ideal, k: &Ideal) -> Result<bool> {
        self.lift_ideal(i)?.equals(&self.lift_ideal(k)?)
    }

    /// Membership of `f` in the image of `I` in `R`.
    pub fn contains(&self, i: &Ideal, f: &Polynomial) -> Result<bool> {
        self.lift_ideal(i)?.contains(f)
    }

    /// Checks `((a_1..a_i) : a_{i+1}) = (a_1..a_i)` in `R` for every `i`.
    pub fn is_poor_regular_sequence(&self, elems: &[Polynomial]) -> Result<RegularSequenceCheck> {
        for (i, a) in elems.iter().enumerate() {
            self.check(a)?;
            let prefix = self.lift(&elems[..i])?;
            if a.is_zero() {
                // (I : 0) is the unit ideal
                if !prefix.is_unit() {
                    return Ok(RegularSequenceCheck::FailsAt(i));
                }
                continue;
            }
            let quotient = prefix.colon(a)?;
            if !quotient.equals(&prefix)? {
                return Ok(RegularSequenceCheck::FailsAt(i));
            }
        }
        Ok(RegularSequenceCheck::Regular)
    }

    /// Graded system-of-parameters test: `dim R` homogeneous elements of
    /// positive degree whose lift has a zero-dimensional quotient.
    pub fn is_system_of_parameters(&self, elems: &[Polynomial]) -> Result<bool> {
        if !self.defining.is_homogeneous() {
            return Err(Error::InvalidArgument(
                "system-of-parameters checks need a homogeneous defining ideal".into(),
            ));
        }
        for a in elems {
            self.check(a)?;
            if a.is_zero() || !a.is_homogeneous() || a.total_degree() == Some(0) {
                return Err(Error::NotHomogeneous(a.to_string()));
            }
        }
        let Some(d) = self.dimension() else {
            return Ok(false);
        };
        if elems.len() != d {
            return Ok(false);
        }
        Ok(self.lift(elems)?.krull_dimension() == Some(0))
    }
}

//! Sparse multivariate polynomials over F_p.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{add_mod, inv_mod, mul_mod, pow_mod, reduce_signed, sub_mod, FieldElement};
use crate::monomial::{Monomial, MonomialOrder};
use crate::ring::{same_ring, PolyRing};

pub(crate) type Term = (Monomial, u32);

/// A polynomial in a [`PolyRing`]. Terms are stored with nonzero coefficients,
/// sorted descending in the ring's monomial order.
#[derive(Clone)]
pub struct Polynomial {
    ring: Arc<PolyRing>,
    terms: Vec<Term>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl std::hash::Hash for Polynomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

/// `a - c * shift * b` for term lists sorted descending in `order`.
pub(crate) fn sub_scaled_shifted(
    a: &[Term],
    c: u32,
    shift: &Monomial,
    b: &[Term],
    order: MonomialOrder,
    p: u32,
) -> Vec<Term> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut i = 0;
    let mut bi = b.iter().map(|(m, coef)| (shift.mul(m), mul_mod(c, *coef, p)));
    let mut next_b = bi.next();
    while i < a.len() {
        match &next_b {
            None => {
                out.extend_from_slice(&a[i..]);
                return out;
            }
            Some((mb, cb)) => match order.cmp(&a[i].0, mb) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let (mb, cb) = next_b.take().unwrap();
                    out.push((mb, sub_mod(0, cb, p)));
                    next_b = bi.next();
                }
                Ordering::Equal => {
                    let v = sub_mod(a[i].1, *cb, p);
                    if v != 0 {
                        out.push((a[i].0.clone(), v));
                    }
                    i += 1;
                    next_b = bi.next();
                }
            },
        }
    }
    while let Some((mb, cb)) = next_b {
        out.push((mb, sub_mod(0, cb, p)));
        next_b = bi.next();
    }
    out
}

impl Polynomial {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Arc<PolyRing>, c: i64) -> Self {
        let c = reduce_signed(c, ring.characteristic());
        let terms = if c == 0 {
            Vec::new()
        } else {
            vec![(Monomial::one(ring.nvars()), c)]
        };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn one(ring: &Arc<PolyRing>) -> Self {
        Self::constant(ring, 1)
    }

    /// The variable with index `index`.
    pub fn var(ring: &Arc<PolyRing>, index: usize) -> Self {
        assert!(index < ring.nvars(), "variable index out of range");
        Self::monomial(ring, Monomial::var(ring.nvars(), index, 1), 1)
    }

    pub fn monomial(ring: &Arc<PolyRing>, m: Monomial, c: i64) -> Self {
        assert_eq!(m.len(), ring.nvars(), "monomial length must match the ring");
        let c = reduce_signed(c, ring.characteristic());
        let terms = if c == 0 { Vec::new() } else { vec![(m, c)] };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Builds a polynomial from arbitrary (possibly repeated, unsorted) terms.
    pub fn from_terms<I>(ring: &Arc<PolyRing>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, i64)>,
    {
        let p = ring.characteristic();
        let mut acc: HashMap<Monomial, u32> = HashMap::new();
        for (m, c) in terms {
            assert_eq!(m.len(), ring.nvars(), "monomial length must match the ring");
            let e = acc.entry(m).or_insert(0);
            *e = add_mod(*e, reduce_signed(c, p), p);
        }
        Self::from_map(ring, acc)
    }

    fn from_map(ring: &Arc<PolyRing>, acc: HashMap<Monomial, u32>) -> Self {
        let order = ring.order();
        let mut terms: Vec<Term> = acc.into_iter().filter(|(_, c)| *c != 0).collect();
        terms.sort_unstable_by(|a, b| order.cmp(&b.0, &a.0));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Caller guarantees sorted, nonzero, deduplicated terms.
    pub(crate) fn from_sorted(ring: &Arc<PolyRing>, terms: Vec<Term>) -> Self {
        debug_assert!(terms.iter().all(|(_, c)| *c != 0));
        debug_assert!(terms
            .windows(2)
            .all(|w| ring.order().cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn characteristic(&self) -> u32 {
        self.ring.characteristic()
    }

    /// Terms as `(monomial, residue)`, descending.
    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    /// Nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn leading_coefficient(&self) -> Option<FieldElement> {
        self.terms
            .first()
            .map(|(_, c)| FieldElement::new(*c as i64, self.characteristic()))
    }

    /// Largest total degree of a term; `None` for zero.
    pub fn total_degree(&self) -> Option<u64> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m0, _)) => {
                let d = m0.degree();
                self.terms.iter().all(|(m, _)| m.degree() == d)
            }
        }
    }

    /// Whether variable `index` occurs in some term.
    pub fn involves(&self, index: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.exponents()[index] > 0)
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let one = Monomial::one(self.ring.nvars());
        let p = self.characteristic();
        let neg_one = p - 1;
        Ok(Polynomial::from_sorted(
            &self.ring,
            sub_scaled_shifted(&self.terms, neg_one, &one, &other.terms, self.ring.order(), p),
        ))
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let one = Monomial::one(self.ring.nvars());
        Ok(Polynomial::from_sorted(
            &self.ring,
            sub_scaled_shifted(
                &self.terms,
                1 % self.characteristic(),
                &one,
                &other.terms,
                self.ring.order(),
                self.characteristic(),
            ),
        ))
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(&self.ring));
        }
        let p = self.characteristic();
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return Ok(self.mul_term(m, *c));
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return Ok(other.mul_term(m, *c));
        }
        let mut acc: HashMap<Monomial, u32> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let e = acc.entry(ma.mul(mb)).or_insert(0);
                *e = add_mod(*e, mul_mod(*ca, *cb, p), p);
            }
        }
        Ok(Polynomial::from_map(&self.ring, acc))
    }

    /// `c * m * self`; the order is multiplicative so no re-sort is needed.
    pub(crate) fn mul_term(&self, m: &Monomial, c: u32) -> Polynomial {
        let p = self.characteristic();
        let c = c % p;
        if c == 0 {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(mm, cc)| (mm.mul(m), mul_mod(*cc, c, p)))
                .collect(),
        }
    }

    pub fn scale(&self, c: FieldElement) -> Polynomial {
        assert_eq!(c.characteristic(), self.characteristic());
        self.mul_term(&Monomial::one(self.ring.nvars()), c.residue())
    }

    /// Normalizes the leading coefficient to 1; zero stays zero.
    pub fn monic(&self) -> Polynomial {
        match self.terms.first() {
            None => self.clone(),
            Some((_, 1)) => self.clone(),
            Some((_, c)) => {
                let inv = inv_mod(*c, self.characteristic()).expect("nonzero leading coefficient");
                self.mul_term(&Monomial::one(self.ring.nvars()), inv)
            }
        }
    }

    /// Generic exponentiation by repeated squaring.
    pub fn pow(&self, mut k: u64) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one(&self.ring);
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self^(p^e)` computed termwise: coefficients raised to `p^e` (a no-op on
    /// F_p), exponents scaled by `p^e`.
    pub fn frobenius_power(&self, e: u32) -> Polynomial {
        let p = self.characteristic();
        let q = (p as u64).pow(e);
        let scale = u32::try_from(q).expect("p^e exceeds exponent range");
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.scale(scale), pow_mod(*c, q, p)))
                .collect(),
        }
    }

    /// Substitutes `x_i -> x_i^(p^e)` for every variable.
    pub fn frobenius_substitute(&self, e: u32) -> Polynomial {
        let p = self.characteristic() as u64;
        let q = u32::try_from(p.pow(e)).expect("p^e exceeds exponent range");
        let images: Vec<Polynomial> = (0..self.ring.nvars())
            .map(|i| Polynomial::monomial(&self.ring, Monomial::var(self.ring.nvars(), i, q), 1))
            .collect();
        self.substitute(&images).expect("images share the ring")
    }

    /// Evaluates the ring map sending variable `i` to `images[i]`.
    /// All images must share one target ring.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.ring.nvars() {
            return Err(Error::LengthMismatch(images.len(), self.ring.nvars()));
        }
        let target = match images.first() {
            Some(img) => img.ring.clone(),
            None => {
                return Err(Error::InvalidArgument(
                    "substitution into a ring without variables".into(),
                ))
            }
        };
        if images.iter().any(|img| !same_ring(&img.ring, &target)) {
            return Err(Error::RingMismatch);
        }
        let p = self.characteristic();
        let mut acc = Polynomial::zero(&target);
        // cache powers of each image
        let mut powers: Vec<HashMap<u32, Polynomial>> = vec![HashMap::new(); images.len()];
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(&target, *c as i64);
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let pw = powers[i]
                    .entry(e)
                    .or_insert_with(|| images[i].pow(e as u64))
                    .clone();
                term = &term * &pw;
            }
            acc = &acc + &term;
        }
        debug_assert_eq!(acc.characteristic(), p);
        Ok(acc)
    }

    /// Moves the polynomial into `target`, sending variable `i` to variable
    /// `var_map[i]` of the target ring. Terms are re-sorted for the target order.
    pub fn change_ring(&self, target: &Arc<PolyRing>, var_map: &[usize]) -> Polynomial {
        assert_eq!(var_map.len(), self.ring.nvars());
        assert_eq!(target.characteristic(), self.characteristic());
        let n = target.nvars();
        let order = target.order();
        let mut terms: Vec<Term> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0u32; n];
                for (i, &x) in m.exponents().iter().enumerate() {
                    e[var_map[i]] += x;
                }
                (Monomial::from_exponents(&e), *c)
            })
            .collect();
        terms.sort_unstable_by(|a, b| order.cmp(&b.0, &a.0));
        Polynomial {
            ring: target.clone(),
            terms,
        }
    }

    /// Exact quotient `self / divisor` if `divisor` divides `self`.
    pub fn exact_div(&self, divisor: &Polynomial) -> Result<Option<Polynomial>> {
        self.check_ring(divisor)?;
        if divisor.is_zero() {
            return Err(Error::DivisionByZero(self.characteristic()));
        }
        let p = self.characteristic();
        let order = self.ring.order();
        let (lm, lc) = &divisor.terms[0];
        let lc_inv = inv_mod(*lc, p).expect("nonzero leading coefficient");
        let mut rest = self.terms.clone();
        let mut quotient: Vec<Term> = Vec::new();
        while let Some((m, c)) = rest.first() {
            let Some(shift) = lm.quotient_of(m) else {
                return Ok(None);
            };
            let coef = mul_mod(*c, lc_inv, p);
            rest = sub_scaled_shifted(&rest, coef, &shift, &divisor.terms, order, p);
            quotient.push((shift, coef));
        }
        // quotient terms are produced in strictly descending order
        Ok(Some(Polynomial::from_sorted(&self.ring, quotient)))
    }

    /// Renders with the ring's variable names, e.g. `x^2*y + 2*z + 1`.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let names = self.ring.variables();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if *c != 1 || m.is_one() {
                factors.push(c.to_string());
            }
            for (i, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(names[i].clone()),
                    _ => factors.push(format!("{}^{}", names[i], e)),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

pub fn poly_add(f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    f.checked_add(g)
}

pub fn poly_mul(f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    f.checked_mul(g)
}

pub fn frobenius_power_poly(f: &Polynomial, e: u32) -> Polynomial {
    f.frobenius_power(e)
}

pub fn frobenius_substitute(f: &Polynomial, e: u32) -> Polynomial {
    f.frobenius_substitute(e)
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("polynomial ring mismatch")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("polynomial ring mismatch")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("polynomial ring mismatch")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        let p = self.characteristic();
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), sub_mod(0, *c, p)))
                .collect(),
        }
    }
}

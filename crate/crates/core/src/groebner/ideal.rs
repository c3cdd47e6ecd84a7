use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Polynomial;
use crate::ring::{same_ring, PolyRing};

use super::buchberger::reduced_groebner_basis;
use super::reduce::normal_form;

/// An ideal of a polynomial ring, given by generators, with a lazily computed
/// reduced Gröbner basis in the ring's order. Clones share the cache.
#[derive(Clone)]
pub struct Ideal {
    ring: Arc<PolyRing>,
    generators: Vec<Polynomial>,
    gb: Arc<OnceLock<Vec<Polynomial>>>,
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        write!(f, "Ideal({})", gens.join(", "))
    }
}

/// Dimension of `S/J` as an F_p-vector space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VectorSpaceDimension {
    Finite(u64),
    Infinite,
}

impl Ideal {
    /// Zero generators are dropped; all generators must live in `ring`.
    pub fn new(ring: &Arc<PolyRing>, generators: Vec<Polynomial>) -> Result<Self> {
        if generators.iter().any(|g| !same_ring(g.ring(), ring)) {
            return Err(Error::RingMismatch);
        }
        Ok(Ideal {
            ring: ring.clone(),
            generators: generators.into_iter().filter(|g| !g.is_zero()).collect(),
            gb: Arc::new(OnceLock::new()),
        })
    }

    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Self::new(ring, Vec::new()).unwrap()
    }

    pub fn unit(ring: &Arc<PolyRing>) -> Self {
        Self::new(ring, vec![Polynomial::one(ring)]).unwrap()
    }

    /// Parses each generator with the ring's polynomial syntax.
    pub fn parse<S: AsRef<str>>(ring: &Arc<PolyRing>, generators: &[S]) -> Result<Self> {
        let gens = generators
            .iter()
            .map(|g| ring.parse(g.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(ring, gens)
    }

    /// An ideal whose generators already form its reduced Gröbner basis.
    pub(crate) fn from_reduced_basis(ring: &Arc<PolyRing>, basis: Vec<Polynomial>) -> Self {
        let cell = OnceLock::new();
        let _ = cell.set(basis.clone());
        Ideal {
            ring: ring.clone(),
            generators: basis,
            gb: Arc::new(cell),
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// Reduced Gröbner basis in the ring's order, computed once.
    pub fn groebner_basis(&self) -> &[Polynomial] {
        self.gb.get_or_init(|| reduced_groebner_basis(&self.generators))
    }

    /// The same ideal with its reduced basis as generators.
    pub fn reduced(&self) -> Ideal {
        Ideal::from_reduced_basis(&self.ring, self.groebner_basis().to_vec())
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.groebner_basis().first().is_some_and(|g| g.is_unit())
    }

    pub fn is_homogeneous(&self) -> bool {
        self.generators.iter().all(|g| g.is_homogeneous())
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        if !same_ring(f.ring(), &self.ring) {
            return Err(Error::RingMismatch);
        }
        Ok(normal_form(f, self.groebner_basis()))
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    pub fn is_subset_of(&self, other: &Ideal) -> Result<bool> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        for g in &self.generators {
            if !other.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        // reduced bases are unique
        Ok(self.groebner_basis() == other.groebner_basis())
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    /// Adds generators.
    pub fn extend(&self, extra: &[Polynomial]) -> Result<Ideal> {
        let mut gens = self.generators.clone();
        gens.extend(extra.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    /// `I ∩ K` by eliminating a tag variable from `t*I + (1 - t)*K`.
    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        if self.is_zero() || other.is_zero() {
            return Ok(Ideal::zero(&self.ring));
        }
        let n = self.ring.nvars();
        let mut names = self.ring.fresh_names(1);
        names.extend(self.ring.variables().iter().cloned());
        let ext = PolyRing::new_internal(
            self.ring.characteristic() as u64,
            &names,
            MonomialOrder::Block(1),
        )?;
        let into_ext: Vec<usize> = (1..=n).collect();
        let t = Polynomial::var(&ext, 0);
        let one_minus_t = &Polynomial::one(&ext) - &t;
        let mut gens = Vec::new();
        for g in &self.generators {
            gens.push(&t * &g.change_ring(&ext, &into_ext));
        }
        for g in &other.generators {
            gens.push(&one_minus_t * &g.change_ring(&ext, &into_ext));
        }
        let gb = reduced_groebner_basis(&gens);
        let mut back = vec![0usize];
        back.extend(0..n);
        let kept: Vec<Polynomial> = gb
            .iter()
            .filter(|g| !g.involves(0))
            .map(|g| g.change_ring(&self.ring, &back))
            .collect();
        Ideal::new(&self.ring, kept)
    }

    /// `(I : f) = {g : g f ∈ I}`.
    pub fn colon(&self, f: &Polynomial) -> Result<Ideal> {
        if !same_ring(f.ring(), &self.ring) {
            return Err(Error::RingMismatch);
        }
        if f.is_zero() {
            return Err(Error::ZeroColon);
        }
        if f.is_unit() {
            return Ok(self.clone());
        }
        let principal = Ideal::new(&self.ring, vec![f.clone()])?;
        let meet = self.intersect(&principal)?;
        let mut gens = Vec::with_capacity(meet.generators.len());
        for g in &meet.generators {
            let q = g
                .exact_div(f)?
                .expect("generators of I ∩ (f) are multiples of f");
            gens.push(q);
        }
        Ideal::new(&self.ring, gens)
    }

    /// `(I : K)`, the intersection of `(I : g)` over generators `g` of `K`.
    pub fn colon_ideal(&self, other: &Ideal) -> Result<Ideal> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        let mut acc = Ideal::unit(&self.ring);
        for g in &other.generators {
            let c = self.colon(g)?;
            acc = if acc.is_unit() { c } else { acc.intersect(&c)? };
        }
        Ok(acc)
    }

    /// `I ∩ F_p[variables not in front]`, via a block order with `front` first.
    /// The result lives in the same ring.
    pub fn eliminate(&self, front: &[usize]) -> Result<Ideal> {
        let n = self.ring.nvars();
        if front.iter().any(|&i| i >= n) {
            return Err(Error::InvalidArgument("variable index out of range".into()));
        }
        if front.is_empty() {
            return Ok(self.clone());
        }
        let mut front_sorted: Vec<usize> = front.to_vec();
        front_sorted.sort_unstable();
        front_sorted.dedup();
        let rest: Vec<usize> = (0..n).filter(|i| !front_sorted.contains(i)).collect();
        let layout: Vec<usize> = front_sorted.iter().chain(&rest).copied().collect();
        let names: Vec<String> = layout
            .iter()
            .map(|&i| self.ring.variables()[i].clone())
            .collect();
        let ext = PolyRing::new_internal(
            self.ring.characteristic() as u64,
            &names,
            MonomialOrder::Block(front_sorted.len()),
        )?;
        let mut into_ext = vec![0usize; n];
        for (pos, &i) in layout.iter().enumerate() {
            into_ext[i] = pos;
        }
        let gens: Vec<Polynomial> = self
            .generators
            .iter()
            .map(|g| g.change_ring(&ext, &into_ext))
            .collect();
        let gb = reduced_groebner_basis(&gens);
        let k = front_sorted.len();
        let kept: Vec<Polynomial> = gb
            .iter()
            .filter(|g| (0..k).all(|i| !g.involves(i)))
            .map(|g| g.change_ring(&self.ring, &layout))
            .collect();
        Ideal::new(&self.ring, kept)
    }

    /// Variable-name front block for [`Ideal::eliminate`].
    pub fn eliminate_named<S: AsRef<str>>(&self, front: &[S]) -> Result<Ideal> {
        let idx = front
            .iter()
            .map(|n| {
                self.ring.var_index(n.as_ref()).ok_or_else(|| {
                    Error::InvalidArgument(format!("unknown variable `{}`", n.as_ref()))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        self.eliminate(&idx)
    }

    /// Krull dimension of `S/I`: the largest set of variables containing the
    /// support of no leading monomial of the basis. `None` for the unit ideal.
    pub fn krull_dimension(&self) -> Option<usize> {
        let gb = self.groebner_basis();
        if gb.first().is_some_and(|g| g.is_unit()) {
            return None;
        }
        let n = self.ring.nvars();
        let supports: Vec<u64> = gb
            .iter()
            .map(|g| {
                g.leading_monomial()
                    .unwrap()
                    .support()
                    .fold(0u64, |acc, i| acc | (1 << i))
            })
            .collect();
        assert!(n < 64, "too many variables for subset enumeration");
        let mut best = 0;
        for subset in 0u64..(1u64 << n) {
            let size = subset.count_ones() as usize;
            if size > best && supports.iter().all(|&s| s & !subset != 0) {
                best = size;
            }
        }
        Some(best)
    }

    /// Monomials outside the initial ideal, when there are finitely many.
    pub fn standard_monomials(&self) -> Option<Vec<Monomial>> {
        if self.krull_dimension()? != 0 {
            return None;
        }
        let n = self.ring.nvars();
        let lms: Vec<&Monomial> = self
            .groebner_basis()
            .iter()
            .map(|g| g.leading_monomial().unwrap())
            .collect();
        let mut out = Vec::new();
        let mut exps = vec![0u32; n];
        fn walk(i: usize, exps: &mut Vec<u32>, lms: &[&Monomial], out: &mut Vec<Monomial>) {
            if i == exps.len() {
                out.push(Monomial::from_exponents(exps));
                return;
            }
            loop {
                let m = Monomial::from_exponents(exps);
                if lms.iter().any(|l| l.divides(&m)) {
                    break;
                }
                walk(i + 1, exps, lms, out);
                exps[i] += 1;
            }
            exps[i] = 0;
        }
        // zero-dimensional ideals contain a pure power of every variable, so each
        // coordinate loop terminates
        if n == 0 {
            return Some(vec![Monomial::one(0)]);
        }
        walk(0, &mut exps, &lms, &mut out);
        Some(out)
    }

    pub fn vspace_dimension(&self) -> VectorSpaceDimension {
        match self.krull_dimension() {
            None => VectorSpaceDimension::Finite(0),
            Some(0) => VectorSpaceDimension::Finite(
                self.standard_monomials().map(|s| s.len() as u64).unwrap_or(0),
            ),
            Some(_) => VectorSpaceDimension::Infinite,
        }
    }
}

pub fn buchberger(ideal: &Ideal, order: MonomialOrder) -> Vec<Polynomial> {
    if order == ideal.ring.order() {
        return ideal.groebner_basis().to_vec();
    }
    let target = ideal.ring.with_order(order);
    let ident: Vec<usize> = (0..ideal.ring.nvars()).collect();
    let gens: Vec<Polynomial> = ideal
        .generators
        .iter()
        .map(|g| g.change_ring(&target, &ident))
        .collect();
    reduced_groebner_basis(&gens)
}

pub fn ideal_member(f: &Polynomial, ideal: &Ideal) -> Result<bool> {
    ideal.contains(f)
}

pub fn ideal_subset(i: &Ideal, k: &Ideal) -> Result<bool> {
    i.is_subset_of(k)
}

pub fn ideal_equal(i: &Ideal, k: &Ideal) -> Result<bool> {
    i.equals(k)
}

pub fn colon(i: &Ideal, f: &Polynomial) -> Result<Ideal> {
    i.colon(f)
}

pub fn colon_ideal(i: &Ideal, k: &Ideal) -> Result<Ideal> {
    i.colon_ideal(k)
}

pub fn intersect(i: &Ideal, k: &Ideal) -> Result<Ideal> {
    i.intersect(k)
}

pub fn eliminate(i: &Ideal, front: &[usize]) -> Result<Ideal> {
    i.eliminate(front)
}

pub fn krull_dimension(j: &Ideal) -> Option<usize> {
    j.krull_dimension()
}

pub fn vspace_dimension(j: &Ideal) -> VectorSpaceDimension {
    j.vspace_dimension()
}

//! Test-side oracles that avoid the Gröbner engine: ideal membership by
//! row-reducing the span of `{m * g}` over a truncated monomial range.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use frobenius_core::{PolyRing, Polynomial};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::Rng;

pub type Vector = BTreeMap<Vec<u32>, u32>;

fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

fn inv_mod(a: u32, p: u32) -> u32 {
    // a^(p-2) by repeated squaring
    let (mut base, mut exp, mut acc) = (a % p, p - 2, 1u32);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

pub fn to_vector(f: &Polynomial) -> Vector {
    f.terms()
        .iter()
        .map(|(m, c)| (m.exponents().to_vec(), *c))
        .collect()
}

/// Echelon form with distinct pivots, each pivot the largest key of its row.
pub struct Span {
    p: u32,
    rows: HashMap<Vec<u32>, Vector>,
}

impl Span {
    pub fn new(p: u32) -> Self {
        Span {
            p,
            rows: HashMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn reduce(&self, mut v: Vector) -> Vector {
        let p = self.p;
        let mut done = Vector::new();
        while let Some((lead, c)) = v.pop_last() {
            let Some(row) = self.rows.get(&lead) else {
                done.insert(lead, c);
                continue;
            };
            for (k, rc) in row.iter().rev().skip(1) {
                let sub = mul_mod(c, *rc, p);
                let entry = v.entry(k.clone()).or_insert(0);
                *entry = (*entry + p - sub) % p;
                if *entry == 0 {
                    v.remove(k);
                }
            }
        }
        done
    }

    pub fn insert(&mut self, v: Vector) {
        let mut v = v;
        loop {
            let Some((lead, c)) = v.last_key_value().map(|(k, c)| (k.clone(), *c)) else {
                return;
            };
            match self.rows.get(&lead) {
                Some(row) => {
                    let p = self.p;
                    for (k, rc) in row {
                        let sub = mul_mod(c, *rc, p);
                        let entry = v.entry(k.clone()).or_insert(0);
                        *entry = (*entry + p - sub) % p;
                        if *entry == 0 {
                            v.remove(k);
                        }
                    }
                }
                None => {
                    let inv = inv_mod(c, self.p);
                    for x in v.values_mut() {
                        *x = mul_mod(*x, inv, self.p);
                    }
                    self.rows.insert(lead, v);
                    return;
                }
            }
        }
    }

    pub fn contains(&self, v: &Vector) -> bool {
        self.reduce(v.clone()).is_empty()
    }
}

pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=d).rev() {
        for mut rest in monomials_of_degree(n - 1, d - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

pub fn monomials_up_to(n: usize, d: u32) -> Vec<Vec<u32>> {
    (0..=d).flat_map(|k| monomials_of_degree(n, k)).collect()
}

fn shift(v: &Vector, m: &[u32]) -> Vector {
    v.iter()
        .map(|(k, c)| (k.iter().zip(m).map(|(a, b)| a + b).collect(), *c))
        .collect()
}

/// Span of `m * g` with `deg(m) + deg(g) <= bound`. Membership in it is
/// sufficient for ideal membership; for homogeneous generators and a
/// homogeneous target of degree `<= bound` it is also necessary.
pub fn truncated_span(gens: &[Polynomial], bound: u32) -> Span {
    let p = gens.first().map_or(2, |g| g.characteristic());
    let mut span = Span::new(p);
    for g in gens {
        let Some(dg) = g.total_degree() else { continue };
        if dg > bound as u64 {
            continue;
        }
        let n = g.ring().nvars();
        let v = to_vector(g);
        for m in monomials_up_to(n, bound - dg as u32) {
            span.insert(shift(&v, &m));
        }
    }
    span
}

pub fn oracle_member(gens: &[Polynomial], f: &Polynomial, bound: u32) -> bool {
    truncated_span(gens, bound).contains(&to_vector(f))
}

/// Exact membership for homogeneous generators and a homogeneous `f`.
pub fn homogeneous_member(gens: &[Polynomial], f: &Polynomial) -> bool {
    assert!(gens.iter().all(|g| g.is_homogeneous()) && f.is_homogeneous());
    let d = f.total_degree().unwrap_or(0) as u32;
    let p = f.characteristic();
    let mut span = Span::new(p);
    for g in gens {
        let Some(dg) = g.total_degree() else { continue };
        let dg = dg as u32;
        if dg > d {
            continue;
        }
        let v = to_vector(g);
        for m in monomials_of_degree(g.ring().nvars(), d - dg) {
            span.insert(shift(&v, &m));
        }
    }
    span.contains(&to_vector(f))
}

pub fn ring(p: u64, vars: &[&str]) -> Arc<PolyRing> {
    PolyRing::grevlex(p, vars).unwrap()
}

pub fn fermat_ring(p: u64) -> (Arc<PolyRing>, Polynomial) {
    let s = ring(p, &["x", "y", "z"]);
    let f = s.parse("x^3 + y^3 + z^3").unwrap();
    (s, f)
}

pub fn poly(s: &Arc<PolyRing>, text: &str) -> Polynomial {
    s.parse(text).unwrap()
}

pub fn polys(s: &Arc<PolyRing>, texts: &[&str]) -> Vec<Polynomial> {
    texts.iter().map(|t| poly(s, t)).collect()
}

fn from_exps(s: &Arc<PolyRing>, terms: &[(Vec<u32>, u32)]) -> Polynomial {
    let mut f = Polynomial::zero(s);
    for (e, c) in terms {
        let mut t = Polynomial::constant(s, *c as i64);
        for (i, k) in e.iter().enumerate() {
            t = &t * &Polynomial::var(s, i).pow(*k as u64);
        }
        f = &f + &t;
    }
    f
}

/// Random polynomial of total degree `<= max_deg` with up to `max_terms` terms.
pub fn random_poly(rng: &mut StdRng, s: &Arc<PolyRing>, max_deg: u32, max_terms: usize) -> Polynomial {
    random_poly_between(rng, s, 0, max_deg, max_terms)
}

/// Random polynomial whose terms have degrees in `min_deg..=max_deg`.
pub fn random_poly_between(
    rng: &mut StdRng,
    s: &Arc<PolyRing>,
    min_deg: u32,
    max_deg: u32,
    max_terms: usize,
) -> Polynomial {
    let n = s.nvars();
    let p = s.characteristic();
    let count = rng.gen_range(1..=max_terms);
    let terms: Vec<(Vec<u32>, u32)> = (0..count)
        .map(|_| {
            let d = rng.gen_range(min_deg..=max_deg);
            let mut e = vec![0u32; n];
            for _ in 0..d {
                e[rng.gen_range(0..n)] += 1;
            }
            (e, rng.gen_range(1..p))
        })
        .collect();
    from_exps(s, &terms)
}

/// Random homogeneous polynomial of degree `d`.
pub fn random_homogeneous(rng: &mut StdRng, s: &Arc<PolyRing>, d: u32, max_terms: usize) -> Polynomial {
    let n = s.nvars();
    let p = s.characteristic();
    let all = monomials_of_degree(n, d);
    let count = rng.gen_range(1..=max_terms);
    let terms: Vec<(Vec<u32>, u32)> = (0..count)
        .map(|_| (all[rng.gen_range(0..all.len())].clone(), rng.gen_range(1..p)))
        .collect();
    from_exps(s, &terms)
}

/// Proptest strategy for polynomials in `s`.
pub fn poly_strategy(s: Arc<PolyRing>, max_deg: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    let n = s.nvars();
    let p = s.characteristic();
    prop::collection::vec(
        (prop::collection::vec(0..=max_deg, n), 1..p),
        0..=max_terms,
    )
    .prop_map(move |raw| {
        let terms: Vec<(Vec<u32>, u32)> = raw
            .into_iter()
            .map(|(mut e, c)| {
                // clip to total degree max_deg
                let mut budget = max_deg;
                for x in e.iter_mut() {
                    *x = (*x).min(budget);
                    budget -= *x;
                }
                (e, c)
            })
            .collect();
        from_exps(&s, &terms)
    })
}

pub fn homogeneous_strategy(s: Arc<PolyRing>, d: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    let all = monomials_of_degree(s.nvars(), d);
    let p = s.characteristic();
    prop::collection::vec((0..all.len(), 1..p), 1..=max_terms).prop_map(move |raw| {
        let terms: Vec<(Vec<u32>, u32)> = raw.into_iter().map(|(i, c)| (all[i].clone(), c)).collect();
        from_exps(&s, &terms)
    })
}

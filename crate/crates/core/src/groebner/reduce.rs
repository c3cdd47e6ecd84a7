//! Multivariate division with remainder.

use crate::field::{inv_mod, mul_mod};
use crate::monomial::Monomial;
use crate::poly::{sub_scaled_shifted, Polynomial, Term};

/// Quotients and remainder with `f = sum(q_i * g_i) + r`.
#[derive(Debug, Clone)]
pub struct Division {
    pub quotients: Vec<Polynomial>,
    pub remainder: Polynomial,
}

fn run(f: &Polynomial, basis: &[Polynomial], record: bool) -> Division {
    let ring = f.ring();
    let p = ring.characteristic();
    let order = ring.order();
    let divisors: Vec<(&Polynomial, u32)> = basis
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| (g, inv_mod(g.terms()[0].1, p).expect("nonzero leading coefficient")))
        .collect();
    let mut quotients: Vec<Vec<(Monomial, i64)>> = vec![Vec::new(); if record { basis.len() } else { 0 }];
    let index_of: Vec<usize> = basis
        .iter()
        .enumerate()
        .filter(|(_, g)| !g.is_zero())
        .map(|(i, _)| i)
        .collect();

    let mut cur: Vec<Term> = f.terms().to_vec();
    let mut start = 0;
    let mut rem: Vec<Term> = Vec::new();
    while start < cur.len() {
        let (m, c) = &cur[start];
        let hit = divisors
            .iter()
            .enumerate()
            .find_map(|(k, (g, inv))| g.terms()[0].0.quotient_of(m).map(|s| (k, *g, *inv, s)));
        match hit {
            Some((k, g, inv, shift)) => {
                let coef = mul_mod(*c, inv, p);
                if record {
                    quotients[index_of[k]].push((shift.clone(), coef as i64));
                }
                cur = sub_scaled_shifted(&cur[start..], coef, &shift, g.terms(), order, p);
                start = 0;
            }
            None => {
                rem.push(cur[start].clone());
                start += 1;
            }
        }
    }
    Division {
        quotients: quotients
            .into_iter()
            .map(|q| Polynomial::from_terms(ring, q))
            .collect(),
        remainder: Polynomial::from_sorted(ring, rem),
    }
}

/// Fully reduced remainder of `f` modulo `basis`. The highest reducible term is
/// eliminated first, using the first divisor in list order.
pub fn normal_form(f: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    run(f, basis, false).remainder
}

/// Division with a quotient record.
pub fn divide(f: &Polynomial, basis: &[Polynomial]) -> Division {
    run(f, basis, true)
}

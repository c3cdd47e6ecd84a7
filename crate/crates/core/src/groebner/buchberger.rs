//! Buchberger completion with the normal selection strategy and the product
//! and chain criteria.

use std::cmp::Ordering;
use std::collections::HashSet;

use crate::monomial::Monomial;
use crate::poly::{sub_scaled_shifted, Polynomial};

use super::reduce::normal_form;

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

fn s_polynomial(f: &Polynomial, g: &Polynomial, lcm: &Monomial) -> Polynomial {
    let ring = f.ring();
    let fm = f.leading_monomial().unwrap().quotient_of(lcm).unwrap();
    let gm = g.leading_monomial().unwrap().quotient_of(lcm).unwrap();
    // both inputs are monic
    let lhs = f.mul_term(&fm, 1);
    Polynomial::from_sorted(
        ring,
        sub_scaled_shifted(lhs.terms(), 1, &gm, g.terms(), ring.order(), ring.characteristic()),
    )
}

fn key(i: usize, j: usize) -> (usize, usize) {
    (i.min(j), i.max(j))
}

/// Unique reduced Gröbner basis of the ideal generated by `gens`, in the
/// order of their ring. Elements are monic and sorted descending by leading
/// monomial. The zero ideal yields an empty basis.
pub fn reduced_groebner_basis(gens: &[Polynomial]) -> Vec<Polynomial> {
    let Some(first) = gens.first() else {
        return Vec::new();
    };
    let order = first.ring().order();
    let mut inputs: Vec<&Polynomial> = gens.iter().filter(|g| !g.is_zero()).collect();
    if inputs.is_empty() {
        return Vec::new();
    }
    if inputs.iter().any(|g| g.is_unit()) {
        return vec![Polynomial::one(first.ring())];
    }
    inputs.sort_by(|a, b| order.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));

    let mut basis: Vec<Polynomial> = Vec::new();
    let mut pending: Vec<Pair> = Vec::new();
    let mut pending_keys: HashSet<(usize, usize)> = HashSet::new();

    let add = |h: Polynomial,
               basis: &mut Vec<Polynomial>,
               pending: &mut Vec<Pair>,
               keys: &mut HashSet<(usize, usize)>| {
        let t = basis.len();
        let lm = h.leading_monomial().unwrap().clone();
        for (i, g) in basis.iter().enumerate() {
            let lcm = g.leading_monomial().unwrap().lcm(&lm);
            pending.push(Pair { i, j: t, lcm });
            keys.insert((i, t));
        }
        basis.push(h);
    };

    for g in inputs {
        let h = normal_form(g, &basis);
        if h.is_zero() {
            continue;
        }
        if h.is_unit() {
            return vec![Polynomial::one(first.ring())];
        }
        add(h.monic(), &mut basis, &mut pending, &mut pending_keys);
    }

    while !pending.is_empty() {
        // normal strategy: smallest lcm, ties by index pair
        let best = (0..pending.len())
            .min_by(|&a, &b| {
                let (pa, pb) = (&pending[a], &pending[b]);
                match order.cmp(&pa.lcm, &pb.lcm) {
                    Ordering::Equal => (pa.j, pa.i).cmp(&(pb.j, pb.i)),
                    o => o,
                }
            })
            .unwrap();
        let pair = pending.swap_remove(best);
        pending_keys.remove(&(pair.i, pair.j));

        let lm_i = basis[pair.i].leading_monomial().unwrap();
        let lm_j = basis[pair.j].leading_monomial().unwrap();
        if lm_i.is_coprime(lm_j) {
            continue;
        }
        let chain = (0..basis.len()).any(|k| {
            k != pair.i
                && k != pair.j
                && basis[k].leading_monomial().unwrap().divides(&pair.lcm)
                && !pending_keys.contains(&key(pair.i, k))
                && !pending_keys.contains(&key(pair.j, k))
        });
        if chain {
            continue;
        }
        let s = s_polynomial(&basis[pair.i], &basis[pair.j], &pair.lcm);
        let h = normal_form(&s, &basis);
        if h.is_zero() {
            continue;
        }
        if h.is_unit() {
            return vec![Polynomial::one(first.ring())];
        }
        add(h.monic(), &mut basis, &mut pending, &mut pending_keys);
    }

    interreduce(basis)
}

/// Minimalizes and tail-reduces a Gröbner basis, then sorts it descending.
pub(crate) fn interreduce(mut basis: Vec<Polynomial>) -> Vec<Polynomial> {
    let order = match basis.first() {
        Some(g) => g.ring().order(),
        None => return basis,
    };
    basis.sort_by(|a, b| order.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    let mut minimal: Vec<Polynomial> = Vec::new();
    for g in basis {
        let lm = g.leading_monomial().unwrap();
        if minimal
            .iter()
            .all(|h| !h.leading_monomial().unwrap().divides(lm))
        {
            minimal.push(g);
        }
    }
    let mut reduced: Vec<Polynomial> = (0..minimal.len())
        .map(|k| {
            let others: Vec<Polynomial> = minimal
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != k)
                .map(|(_, g)| g.clone())
                .collect();
            normal_form(&minimal[k], &others).monic()
        })
        .collect();
    reduced.sort_by(|a, b| order.cmp(b.leading_monomial().unwrap(), a.leading_monomial().unwrap()));
    reduced
}

/// Every S-polynomial of `basis` reduces to zero modulo `basis`.
pub fn is_groebner_basis(basis: &[Polynomial]) -> bool {
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            let (f, g) = (basis[i].monic(), basis[j].monic());
            let lcm = f
                .leading_monomial()
                .unwrap()
                .lcm(g.leading_monomial().unwrap());
            if !normal_form(&s_polynomial(&f, &g, &lcm), basis).is_zero() {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::PolyRing;

    #[test]
    fn small_examples() {
        let r = PolyRing::grevlex(3, &["x", "y"]).unwrap();
        let gb = reduced_groebner_basis(&[r.parse("x^2 - y").unwrap(), r.parse("x").unwrap()]);
        let shown: Vec<String> = gb.iter().map(|g| g.to_string()).collect();
        assert_eq!(shown, vec!["x", "y"]);

        let gb = reduced_groebner_basis(&[r.parse("x").unwrap(), r.parse("y").unwrap()]);
        assert_eq!(gb.len(), 2);
        assert!(reduced_groebner_basis(&[Polynomial::zero(&r)]).is_empty());
        assert!(reduced_groebner_basis(&[]).is_empty());
    }

    #[test]
    fn twisted_cubic_lex() {
        let r = PolyRing::new(7, &["t", "x", "y", "z"], crate::MonomialOrder::Lex).unwrap();
        let gens = [
            r.parse("x - t").unwrap(),
            r.parse("y - t^2").unwrap(),
            r.parse("z - t^3").unwrap(),
        ];
        let gb = reduced_groebner_basis(&gens);
        assert!(is_groebner_basis(&gb));
        // elimination ideal of the twisted cubic
        let elim: Vec<Polynomial> = gb.iter().filter(|g| !g.involves(0)).cloned().collect();
        for rel in ["x^2 - y", "x*y - z", "y^2 - x*z", "y^3 - z^2"] {
            assert!(normal_form(&r.parse(rel).unwrap(), &elim).is_zero(), "{rel}");
        }
        assert!(!normal_form(&r.parse("x*z").unwrap(), &gb).is_zero());
    }
}

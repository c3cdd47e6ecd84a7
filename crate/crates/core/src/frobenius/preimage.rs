//! Exact Frobenius preimages `U_e(K) = {r : r^(p^e) ∈ K}` in a polynomial ring.
//!
//! Over F_p the Frobenius power of `r` equals `r` with every variable replaced
//! by its `p^e`-th power, so `U_e(K)` is the contraction of `K` along
//! `y_i -> x_i^(p^e)`, renamed back to the `x_i`.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::groebner::{normal_form, reduced_groebner_basis, Ideal};
use crate::linalg::DenseMatrix;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Polynomial;
use crate::ring::PolyRing;

fn check_exponent(e: u32) -> Result<()> {
    if e == 0 {
        Err(Error::InvalidArgument(
            "Frobenius preimage needs e >= 1 (e = 0 is the identity)".into(),
        ))
    } else {
        Ok(())
    }
}

fn frobenius_base(k: &Ideal, e: u32) -> Result<u32> {
    let p = k.ring().characteristic() as u64;
    p.checked_pow(e)
        .and_then(|q| u32::try_from(q).ok())
        .ok_or_else(|| Error::InvalidArgument(format!("p^{e} overflows the exponent range")))
}

/// Contraction of `K` along `y_i -> x_i^q` via a block elimination order.
fn contract(k: &Ideal, q: u32) -> Result<Ideal> {
    let s = k.ring();
    if k.is_zero() {
        return Ok(Ideal::zero(s));
    }
    if k.is_unit() {
        return Ok(Ideal::unit(s));
    }
    let n = s.nvars();
    let mut names: Vec<String> = s.variables().to_vec();
    names.extend(s.fresh_names(n));
    let ext = PolyRing::new_internal(
        s.characteristic() as u64,
        &names,
        MonomialOrder::Block(n),
    )?;
    let ident: Vec<usize> = (0..n).collect();
    let mut gens: Vec<Polynomial> = k
        .generators()
        .iter()
        .map(|g| g.change_ring(&ext, &ident))
        .collect();
    for i in 0..n {
        let x_pow = Polynomial::monomial(&ext, Monomial::var(2 * n, i, q), 1);
        gens.push(&Polynomial::var(&ext, n + i) - &x_pow);
    }
    let gb = reduced_groebner_basis(&gens);
    // y_i -> x_i; the x-block is absent from the kept elements
    let back: Vec<usize> = (0..n).chain(0..n).collect();
    let kept: Vec<Polynomial> = gb
        .iter()
        .filter(|g| (0..n).all(|i| !g.involves(i)))
        .map(|g| g.change_ring(s, &back))
        .collect();
    Ideal::new(s, kept)
}

/// `U_e(K)` by a single elimination with `q = p^e`.
pub fn frobenius_preimage_direct(k: &Ideal, e: u32) -> Result<Ideal> {
    check_exponent(e)?;
    let q = frobenius_base(k, e)?;
    contract(k, q)
}

/// `U_e(K)` as `e` successive eliminations with `q = p`, using
/// `U_{a+b} = U_a ∘ U_b`.
pub fn frobenius_preimage_by_elimination(k: &Ideal, e: u32) -> Result<Ideal> {
    check_exponent(e)?;
    let p = k.ring().characteristic();
    let mut acc = k.clone();
    for _ in 0..e {
        acc = contract(&acc, p)?.reduced();
    }
    Ok(acc)
}

fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(Monomial::from_exponents(cur));
            return;
        }
        for a in (0..=left).rev() {
            cur[i] = a;
            rec(i + 1, left - a, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    rec(0, d, &mut vec![0; n], &mut out);
    out
}

/// `U_e(K)` degree by degree for homogeneous `K` with `dim S/K = 0`.
///
/// Frobenius is F_p-linear and sends degree `d` to degree `d q`, so `U_e(K)_d`
/// is the kernel of `r -> NF(r^q)` on the degree-`d` monomials. Once `d q`
/// exceeds the top degree of `S/K`, every monomial lies in `U_e(K)`.
/// Returns `None` when `K` is not homogeneous or not zero-dimensional.
pub fn frobenius_preimage_graded(k: &Ideal, e: u32) -> Result<Option<Ideal>> {
    check_exponent(e)?;
    let s = k.ring();
    if !k.is_homogeneous() {
        return Ok(None);
    }
    if k.is_unit() {
        return Ok(Some(Ideal::unit(s)));
    }
    let Some(standard) = k.standard_monomials() else {
        return Ok(None);
    };
    let q = frobenius_base(k, e)? as u64;
    let top = standard.iter().map(|m| m.degree()).max().unwrap_or(0);
    let cutoff = u32::try_from(top / q + 1)
        .map_err(|_| Error::InvalidArgument("degree bound overflow".into()))?;
    let p = s.characteristic();
    let n = s.nvars();
    let gb = k.groebner_basis();

    let mut gens: Vec<Polynomial> = Vec::new();
    for d in 0..cutoff {
        let sources = monomials_of_degree(n, d);
        let images: Vec<Polynomial> = sources
            .iter()
            .map(|m| normal_form(&Polynomial::monomial(s, m.clone(), 1).frobenius_power(e), gb))
            .collect();
        let mut row_of: HashMap<&Monomial, usize> = HashMap::new();
        for img in &images {
            for (m, _) in img.terms() {
                let next = row_of.len();
                row_of.entry(m).or_insert(next);
            }
        }
        let mut mat = DenseMatrix::zeros(p, row_of.len(), sources.len());
        for (col, img) in images.iter().enumerate() {
            for (m, c) in img.terms() {
                mat.set(row_of[m], col, *c);
            }
        }
        for v in mat.kernel() {
            let terms = sources
                .iter()
                .zip(&v)
                .filter(|(_, &c)| c != 0)
                .map(|(m, &c)| (m.clone(), c as i64));
            gens.push(Polynomial::from_terms(s, terms));
        }
    }
    gens.extend(
        monomials_of_degree(n, cutoff)
            .into_iter()
            .map(|m| Polynomial::monomial(s, m, 1)),
    );
    Ok(Some(Ideal::new(s, gens)?.reduced()))
}

/// `U_e(K) = {r ∈ S : r^(p^e) ∈ K}`.
///
/// Homogeneous zero-dimensional `K` goes through the degree-wise linear
/// algebra route; everything else through iterated elimination.
pub fn frobenius_preimage(k: &Ideal, e: u32) -> Result<Ideal> {
    if let Some(u) = frobenius_preimage_graded(k, e)? {
        return Ok(u);
    }
    frobenius_preimage_by_elimination(k, e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    fn ring(p: u64, vars: &[&str]) -> Arc<PolyRing> {
        PolyRing::grevlex(p, vars).unwrap()
    }

    fn check_all_routes(k: &Ideal, e: u32, expected: &Ideal) {
        let elim = frobenius_preimage_by_elimination(k, e).unwrap();
        assert!(elim.equals(expected).unwrap(), "iterated elimination: {elim:?}");
        let direct = frobenius_preimage_direct(k, e).unwrap();
        assert!(direct.equals(expected).unwrap(), "direct elimination: {direct:?}");
        if let Some(graded) = frobenius_preimage_graded(k, e).unwrap() {
            assert!(graded.equals(expected).unwrap(), "graded: {graded:?}");
        }
        assert!(frobenius_preimage(k, e).unwrap().equals(expected).unwrap());
    }

    #[test]
    fn principal_examples() {
        let r = ring(2, &["x"]);
        check_all_routes(
            &Ideal::parse(&r, &["x^2"]).unwrap(),
            1,
            &Ideal::parse(&r, &["x"]).unwrap(),
        );
        check_all_routes(
            &Ideal::parse(&r, &["x^3"]).unwrap(),
            1,
            &Ideal::parse(&r, &["x^2"]).unwrap(),
        );
    }

    #[test]
    fn fermat_preimage() {
        let r = ring(2, &["x", "y", "z"]);
        let k = Ideal::parse(&r, &["x^2", "y^2", "x^3+y^3+z^3"]).unwrap();
        check_all_routes(&k, 1, &Ideal::parse(&r, &["x", "y", "z^2"]).unwrap());
    }

    #[test]
    fn rejects_zero_exponent() {
        let r = ring(3, &["x"]);
        let k = Ideal::parse(&r, &["x"]).unwrap();
        assert!(matches!(frobenius_preimage(&k, 0), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn zero_and_unit() {
        let r = ring(3, &["x", "y"]);
        assert!(frobenius_preimage(&Ideal::zero(&r), 1).unwrap().is_zero());
        assert!(frobenius_preimage(&Ideal::unit(&r), 2).unwrap().is_unit());
    }

    #[test]
    fn monomial_enumeration() {
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
        assert_eq!(monomials_of_degree(2, 0).len(), 1);
        assert_eq!(monomials_of_degree(1, 5).len(), 1);
    }
}

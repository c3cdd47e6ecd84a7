//! Frobenius powers of ideals, Frobenius preimages, closure chains and the
//! uniform-bound census.

mod census;
mod closure;
mod preimage;

pub use census::{uniform_census, CensusFamily, CensusReport, CensusRow, CensusTemplate};
pub use closure::{
    closure_step, frobenius_closure, q_number, ChainTerm, ClosureChainReport, ClosureOptions,
    ClosureStatus, QNumber,
};
pub use preimage::{
    frobenius_preimage, frobenius_preimage_by_elimination, frobenius_preimage_direct,
    frobenius_preimage_graded,
};

use crate::groebner::Ideal;

/// `I^[p^e]`, generated by the `p^e`-th powers of the generators of `I`.
pub fn bracket_power(ideal: &Ideal, e: u32) -> Ideal {
    if e == 0 {
        return ideal.clone();
    }
    let gens = ideal
        .generators()
        .iter()
        .map(|g| g.frobenius_power(e))
        .collect();
    Ideal::new(ideal.ring(), gens).expect("same ring")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::PolyRing;

    #[test]
    fn bracket_power_examples() {
        let r = PolyRing::grevlex(2, &["x", "y"]).unwrap();
        let i = Ideal::parse(&r, &["x", "y"]).unwrap();
        let b = bracket_power(&i, 2);
        let shown: Vec<String> = b.generators().iter().map(|g| g.to_string()).collect();
        assert_eq!(shown, vec!["x^4", "y^4"]);
        assert!(bracket_power(&i, 0).equals(&i).unwrap());
        let s = Ideal::parse(&r, &["x+y"]).unwrap();
        assert_eq!(bracket_power(&s, 1).generators()[0].to_string(), "x^2 + y^2");
    }
}

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::check_characteristic;
use crate::monomial::MonomialOrder;

/// The ambient polynomial ring F_p[x_1, ..., x_n] together with its term order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyRing {
    p: u32,
    vars: Vec<String>,
    order: MonomialOrder,
}

fn check_name(name: &str, allow_internal: bool) -> Result<()> {
    let invalid = |reason| {
        Err(Error::InvalidVariable {
            name: name.to_string(),
            reason,
        })
    };
    let mut chars = name.chars();
    match chars.next() {
        None => return invalid("empty name"),
        Some('_') if !allow_internal => {
            return invalid("leading underscore is reserved for internal variables")
        }
        Some(c) if c == '_' || c.is_ascii_alphabetic() => {}
        Some(_) => return invalid("must start with a letter"),
    }
    if !chars.all(|c| c.is_ascii_alphanumeric() || c == '_') {
        return invalid("only letters, digits and underscores are allowed");
    }
    Ok(())
}

impl PolyRing {
    /// Builds a user-facing ring. Names must be unique and may not start with `_`.
    pub fn new<S: AsRef<str>>(p: u64, vars: &[S], order: MonomialOrder) -> Result<Arc<Self>> {
        Self::build(p, vars, order, false)
    }

    /// Same as [`PolyRing::new`] with the default grevlex order.
    pub fn grevlex<S: AsRef<str>>(p: u64, vars: &[S]) -> Result<Arc<Self>> {
        Self::new(p, vars, MonomialOrder::Grevlex)
    }

    pub(crate) fn new_internal<S: AsRef<str>>(
        p: u64,
        vars: &[S],
        order: MonomialOrder,
    ) -> Result<Arc<Self>> {
        Self::build(p, vars, order, true)
    }

    fn build<S: AsRef<str>>(
        p: u64,
        vars: &[S],
        order: MonomialOrder,
        allow_internal: bool,
    ) -> Result<Arc<Self>> {
        let p = check_characteristic(p)?;
        let mut names: Vec<String> = Vec::with_capacity(vars.len());
        for v in vars {
            let v = v.as_ref();
            check_name(v, allow_internal)?;
            if names.iter().any(|n| n == v) {
                return Err(Error::InvalidVariable {
                    name: v.to_string(),
                    reason: "declared twice",
                });
            }
            names.push(v.to_string());
        }
        Ok(Arc::new(PolyRing {
            p,
            vars: names,
            order,
        }))
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn variables(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn with_order(&self, order: MonomialOrder) -> Arc<Self> {
        Arc::new(PolyRing {
            p: self.p,
            vars: self.vars.clone(),
            order,
        })
    }

    /// `count` variable names `_t{k}` not already used by this ring.
    pub(crate) fn fresh_names(&self, count: usize) -> Vec<String> {
        (0..)
            .map(|k| format!("_t{k}"))
            .filter(|n| !self.vars.contains(n))
            .take(count)
            .collect()
    }
}

pub(crate) fn same_ring(a: &Arc<PolyRing>, b: &Arc<PolyRing>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_rings() {
        assert_eq!(
            PolyRing::grevlex(4, &["x"]).unwrap_err(),
            Error::NotPrime(4)
        );
        assert!(matches!(
            PolyRing::grevlex(2, &["x", "x"]),
            Err(Error::InvalidVariable { .. })
        ));
        assert!(matches!(
            PolyRing::grevlex(2, &["_t0"]),
            Err(Error::InvalidVariable { .. })
        ));
        assert!(matches!(
            PolyRing::grevlex(2, &["2x"]),
            Err(Error::InvalidVariable { .. })
        ));
        assert!(PolyRing::new_internal(2, &["x", "_t0"], MonomialOrder::Block(1)).is_ok());
    }

    #[test]
    fn fresh_names_skip_existing() {
        let r = PolyRing::new_internal(3, &["_t0", "x"], MonomialOrder::Grevlex).unwrap();
        assert_eq!(r.fresh_names(2), vec!["_t1", "_t2"]);
    }
}

//! Uniform-bound census over families of ideals generated by regular
//! sequences: one closure chain and Q-exponent per family member, and the
//! check that a single exponent works for all of them.

use log::warn;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::poly::Polynomial;
use crate::ringstruct::QuotientRing;

use super::bracket_power;
use super::closure::{frobenius_closure, q_number, ClosureOptions};

/// Generator templates with `{name}` placeholders for integer exponents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusTemplate {
    pub generators: Vec<String>,
    /// Parameter names with the values they range over, in nesting order.
    pub ranges: Vec<(String, Vec<u32>)>,
}

impl CensusTemplate {
    pub fn new(generators: Vec<String>, ranges: Vec<(String, Vec<u32>)>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::InvalidArgument("template has no generators".into()));
        }
        for (name, values) in &ranges {
            if values.is_empty() {
                return Err(Error::InvalidArgument(format!("range for `{name}` is empty")));
            }
        }
        Ok(CensusTemplate { generators, ranges })
    }

    /// All parameter tuples, first range varying slowest.
    pub fn parameter_tuples(&self) -> Vec<Vec<(String, u32)>> {
        let mut tuples: Vec<Vec<(String, u32)>> = vec![Vec::new()];
        for (name, values) in &self.ranges {
            tuples = tuples
                .into_iter()
                .flat_map(|t| {
                    values.iter().map(move |&v| {
                        let mut t = t.clone();
                        t.push((name.clone(), v));
                        t
                    })
                })
                .collect();
        }
        tuples
    }

    pub fn instantiate(&self, params: &[(String, u32)]) -> Result<Vec<String>> {
        self.generators
            .iter()
            .map(|g| {
                let mut text = g.clone();
                for (name, v) in params {
                    text = text.replace(&format!("{{{name}}}"), &v.to_string());
                }
                if let Some(pos) = text.find('{') {
                    let end = text[pos..].find('}').map(|k| pos + k + 1).unwrap_or(text.len());
                    return Err(Error::InvalidArgument(format!(
                        "unbound placeholder {} in template `{g}`",
                        &text[pos..end]
                    )));
                }
                Ok(text)
            })
            .collect()
    }
}

#[derive(Debug, Clone)]
pub enum CensusFamily {
    Template(CensusTemplate),
    /// `I^[p^n]` for `n = 0..=n_max`.
    FrobeniusPowers { ideal: Ideal, n_max: u32 },
}

#[derive(Debug, Clone)]
pub struct CensusRow {
    pub parameters: Vec<(String, u32)>,
    pub generators: Vec<Polynomial>,
    pub regular_sequence_ok: bool,
    pub stabilized: bool,
    pub certificate_ok: bool,
    pub q_exponent: Option<u32>,
    /// Reduced basis of the closure candidate (lift), sorted descending.
    pub closure: Ideal,
    /// `C^[p^e] + J = I^[p^e] + J` at the census-wide exponent.
    pub recheck_ok: bool,
}

impl CensusRow {
    pub fn ideal_digest(&self) -> Vec<String> {
        self.closure
            .groebner_basis()
            .iter()
            .map(|g| g.to_string())
            .collect()
    }
}

#[derive(Debug, Clone)]
pub struct CensusReport {
    pub rows: Vec<CensusRow>,
    /// Max Q-exponent over stabilized rows. Only a lower bound unless
    /// `all_stabilized`.
    pub uniform_e: u32,
    pub all_stabilized: bool,
    pub recheck_ok: bool,
}

struct Member {
    parameters: Vec<(String, u32)>,
    generators: Vec<Polynomial>,
}

fn members(ring: &QuotientRing, family: &CensusFamily) -> Result<Vec<Member>> {
    match family {
        CensusFamily::Template(t) => t
            .parameter_tuples()
            .into_iter()
            .map(|params| {
                let gens = t
                    .instantiate(&params)?
                    .iter()
                    .map(|g| ring.ambient().parse(g))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Member {
                    parameters: params,
                    generators: gens,
                })
            })
            .collect(),
        CensusFamily::FrobeniusPowers { ideal, n_max } => Ok((0..=*n_max)
            .map(|n| Member {
                parameters: vec![("n".to_string(), n)],
                generators: bracket_power(ideal, n).generators().to_vec(),
            })
            .collect()),
    }
}

fn run_row(ring: &QuotientRing, member: Member, options: ClosureOptions) -> Result<CensusRow> {
    let regular = ring.is_poor_regular_sequence(&member.generators)?.is_regular();
    if !regular {
        warn!(
            "census row {:?}: generators are not a regular sequence; the uniform bound is not predicted",
            member.parameters
        );
    }
    let ideal = Ideal::new(ring.ambient(), member.generators.clone())?;
    let mut report = frobenius_closure(ring, &ideal, options)?;
    let q_exponent = if report.is_stable() {
        Some(q_number(&mut report)?.exponent)
    } else {
        warn!("census row {:?}: chain did not stabilize", member.parameters);
        None
    };
    Ok(CensusRow {
        parameters: member.parameters,
        generators: member.generators,
        regular_sequence_ok: regular,
        stabilized: report.is_stable(),
        certificate_ok: report.certificate_ok,
        q_exponent,
        closure: report.closure().clone(),
        recheck_ok: false,
    })
}

/// Runs the closure chain on every family member, takes the largest
/// Q-exponent as the uniform candidate, and rechecks
/// `(b^F)^[p^e] = b^[p^e]` in `R` for every member at that exponent.
/// Rows run in parallel on the current rayon pool; order follows the family.
pub fn uniform_census(
    ring: &QuotientRing,
    family: &CensusFamily,
    options: ClosureOptions,
) -> Result<CensusReport> {
    let members = members(ring, family)?;
    if members.is_empty() {
        return Err(Error::InvalidArgument("census family is empty".into()));
    }
    let mut rows = members
        .into_par_iter()
        .map(|m| run_row(ring, m, options))
        .collect::<Result<Vec<_>>>()?;
    let all_stabilized = rows.iter().all(|r| r.stabilized);
    let uniform_e = rows.iter().filter_map(|r| r.q_exponent).max().unwrap_or(0);
    let defining = ring.defining_ideal();
    rows.par_iter_mut().try_for_each(|row| -> Result<()> {
        let ideal = Ideal::new(ring.ambient(), row.generators.clone())?;
        let lhs = bracket_power(&row.closure, uniform_e).sum(defining)?;
        let rhs = bracket_power(&ideal, uniform_e).sum(defining)?;
        row.recheck_ok = lhs.equals(&rhs)?;
        Ok(())
    })?;
    let recheck_ok = rows.iter().all(|r| r.recheck_ok);
    Ok(CensusReport {
        rows,
        uniform_e,
        all_stabilized,
        recheck_ok,
    })
}

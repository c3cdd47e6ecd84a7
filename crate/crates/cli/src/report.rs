//! JSON and CSV report shapes. Every JSON report starts with `"schema": 1`.

use std::fs;
use std::path::Path;

use serde::Serialize;

use frobenius_core::frobenius::{CensusReport, ClosureChainReport, ClosureOptions};
use frobenius_core::{Ideal, Polynomial};

use crate::ringfile::RingFile;
use crate::CliError;

pub const SCHEMA: u32 = 1;

pub fn strings(polys: &[Polynomial]) -> Vec<String> {
    polys.iter().map(|p| p.to_string()).collect()
}

/// Reduced Gröbner basis, sorted descending by leading monomial.
pub fn basis(ideal: &Ideal) -> Vec<String> {
    strings(ideal.groebner_basis())
}

#[derive(Serialize)]
pub struct RingInfo {
    pub characteristic: u32,
    pub variables: Vec<String>,
    pub quotient: Vec<String>,
    pub cm_asserted: bool,
}

impl RingInfo {
    pub fn new(file: &RingFile) -> Self {
        RingInfo {
            characteristic: file.characteristic(),
            variables: file.variables().to_vec(),
            quotient: strings(&file.quotient),
            cm_asserted: file.assert_cm,
        }
    }
}

#[derive(Serialize)]
pub struct Envelope<T: Serialize> {
    pub schema: u32,
    pub command: &'static str,
    pub ring: RingInfo,
    #[serde(flatten)]
    pub body: T,
}

#[derive(Serialize)]
pub struct NamedGenerators {
    pub name: String,
    pub generators: Vec<String>,
}

#[derive(Serialize)]
pub struct OptionsJson {
    pub e_max: u32,
    pub window: u32,
    pub max_degree: Option<u64>,
}

impl From<ClosureOptions> for OptionsJson {
    fn from(o: ClosureOptions) -> Self {
        OptionsJson {
            e_max: o.e_max,
            window: o.window,
            max_degree: o.max_degree,
        }
    }
}

#[derive(Serialize)]
pub struct ChainJson {
    pub e: u32,
    pub generators: Vec<String>,
}

#[derive(Serialize)]
pub struct CertificateJson {
    /// `verified` when `g^(p^E) ∈ I^[p^E] + J` was checked for every
    /// generator `g` of the returned ideal.
    pub verdict: &'static str,
    pub exponent: u32,
}

#[derive(Serialize)]
pub struct ClosureJson {
    pub ideal: NamedGenerators,
    pub options: OptionsJson,
    pub chain: Vec<ChainJson>,
    pub status: &'static str,
    pub stabilization_index: Option<u32>,
    pub certificate: CertificateJson,
    /// Window stability does not prove equality with the Frobenius closure.
    pub completeness: &'static str,
    pub closure_generators: Vec<String>,
    pub q_exponent: Option<u32>,
    pub q: Option<u64>,
}

impl ClosureJson {
    pub fn new(name: &str, generators: &[Polynomial], report: &ClosureChainReport) -> Self {
        ClosureJson {
            ideal: NamedGenerators {
                name: name.to_string(),
                generators: strings(generators),
            },
            options: report.options.into(),
            chain: report
                .chain
                .iter()
                .map(|t| ChainJson {
                    e: t.e,
                    generators: basis(&t.ideal),
                })
                .collect(),
            status: report.status.as_str(),
            stabilization_index: report.stabilization_index,
            certificate: CertificateJson {
                verdict: if report.certificate_ok { "verified" } else { "failed" },
                exponent: report
                    .stabilization_index
                    .unwrap_or(report.chain.last().map_or(0, |t| t.e)),
            },
            completeness: if report.is_stable() { "heuristic" } else { "incomplete" },
            closure_generators: basis(report.closure()),
            q_exponent: report.q_exponent,
            q: report.q(),
        }
    }
}

#[derive(Serialize)]
pub struct CensusRowJson {
    pub parameters: Vec<(String, u32)>,
    pub generators: Vec<String>,
    pub regseq_ok: bool,
    pub stabilized: bool,
    pub certificate_ok: bool,
    pub q_exponent: Option<u32>,
    pub closure_generators: Vec<String>,
    pub recheck_ok: bool,
}

#[derive(Serialize)]
pub struct CensusJson {
    pub family: String,
    pub options: OptionsJson,
    pub rows: Vec<CensusRowJson>,
    pub uniform_e: u32,
    pub all_stabilized: bool,
    pub recheck_ok: bool,
    pub completeness: &'static str,
}

impl CensusJson {
    pub fn new(family: String, options: ClosureOptions, report: &CensusReport) -> Self {
        CensusJson {
            family,
            options: options.into(),
            rows: report
                .rows
                .iter()
                .map(|r| CensusRowJson {
                    parameters: r.parameters.clone(),
                    generators: strings(&r.generators),
                    regseq_ok: r.regular_sequence_ok,
                    stabilized: r.stabilized,
                    certificate_ok: r.certificate_ok,
                    q_exponent: r.q_exponent,
                    closure_generators: r.ideal_digest(),
                    recheck_ok: r.recheck_ok,
                })
                .collect(),
            uniform_e: report.uniform_e,
            all_stabilized: report.all_stabilized,
            recheck_ok: report.recheck_ok,
            completeness: if report.all_stabilized { "heuristic" } else { "incomplete" },
        }
    }
}

#[derive(Serialize)]
pub struct ErrorJson {
    pub error: String,
    pub exit_code: i32,
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Input(format!("--json: {e}")))?;
    text.push('\n');
    fs::write(path, text).map_err(|e| CliError::Input(format!("--json {}: {e}", path.display())))
}

fn params_cell(params: &[(String, u32)]) -> String {
    params
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(";")
}

/// Columns: params, regseq_ok, stabilized, q_exponent, closure_gens.
pub fn write_census_csv(path: &Path, report: &CensusReport) -> Result<(), CliError> {
    let io = |e: csv::Error| CliError::Input(format!("--csv {}: {e}", path.display()));
    let mut w = csv::Writer::from_path(path).map_err(io)?;
    w.write_record(["params", "regseq_ok", "stabilized", "q_exponent", "closure_gens"])
        .map_err(io)?;
    for r in &report.rows {
        w.write_record([
            params_cell(&r.parameters),
            r.regular_sequence_ok.to_string(),
            r.stabilized.to_string(),
            r.q_exponent.map(|q| q.to_string()).unwrap_or_default(),
            r.ideal_digest().join(";"),
        ])
        .map_err(io)?;
    }
    w.flush()
        .map_err(|e| CliError::Input(format!("--csv {}: {e}", path.display())))
}

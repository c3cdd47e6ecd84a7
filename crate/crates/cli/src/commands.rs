use std::fs;
use std::path::Path;

use serde::Serialize;

use frobenius_core::cohomology::{eta_estimate, f_injective_flag, parameter_ideal_check};
use frobenius_core::frobenius::{
    frobenius_closure, q_number, uniform_census, CensusFamily, CensusTemplate, ClosureOptions,
};
use frobenius_core::ringstruct::RegularSequenceCheck;
use frobenius_core::{Ideal, Polynomial, QuotientRing};

use crate::report::{
    basis, strings, write_census_csv, write_json, CensusJson, ClosureJson, Envelope, ErrorJson,
    NamedGenerators, OptionsJson, RingInfo,
};
use crate::ringfile::{parse_ring_file, NamedIdeal, RingFile};
use crate::{Bounds, CliError, Command, Common, MAX_DEGREE_ENV};

struct Loaded {
    file: RingFile,
    ring: QuotientRing,
}

fn load(common: &Common) -> Result<Loaded, CliError> {
    let path = &common.ring;
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("--ring {}: {e}", path.display())))?;
    let file = parse_ring_file(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let ring = file.quotient_ring();
    Ok(Loaded { file, ring })
}

impl Loaded {
    fn ideal(&self, common: &Common, name: &str) -> Result<&NamedIdeal, CliError> {
        self.file.ideal(name).ok_or_else(|| {
            CliError::Input(format!(
                "--ideal: no ideal named `{name}` in {}",
                common.ring.display()
            ))
        })
    }

    fn polys(&self, flag: &str, text: &str) -> Result<Vec<Polynomial>, CliError> {
        if text.trim().is_empty() {
            return Ok(Vec::new());
        }
        text.split(',')
            .map(|piece| {
                self.file
                    .ring
                    .parse(piece.trim())
                    .map_err(|e| CliError::Input(format!("{flag} `{}`: {e}", piece.trim())))
            })
            .collect()
    }

    fn envelope<T: Serialize>(&self, command: &'static str, body: T) -> Envelope<T> {
        Envelope {
            schema: crate::report::SCHEMA,
            command,
            ring: RingInfo::new(&self.file),
            body,
        }
    }

    fn describe(&self) -> String {
        let vars = self.file.variables().join(", ");
        let base = format!("F_{}[{vars}]", self.file.characteristic());
        if self.file.quotient.is_empty() {
            base
        } else {
            format!("{base}/{}", tuple(&strings(&self.file.quotient)))
        }
    }

    /// Runs `f`; when it stops on a bound, a partial JSON naming the error is
    /// written before the error is passed on.
    fn guarded<T>(
        &self,
        command: &'static str,
        json: Option<&Path>,
        f: impl FnOnce() -> Result<T, CliError>,
    ) -> Result<T, CliError> {
        let out = f();
        if let (Err(e @ CliError::Incomplete(_)), Some(path)) = (&out, json) {
            write_json(
                path,
                &self.envelope(
                    command,
                    ErrorJson {
                        error: e.to_string(),
                        exit_code: e.exit_code(),
                    },
                ),
            )?;
        }
        out
    }
}

fn tuple(items: &[String]) -> String {
    format!("({})", items.join(", "))
}

fn closure_options(bounds: Bounds) -> Result<ClosureOptions, CliError> {
    let max_degree = match std::env::var(MAX_DEGREE_ENV) {
        Ok(v) => Some(v.trim().parse::<u64>().map_err(|_| {
            CliError::Input(format!("{MAX_DEGREE_ENV}: expected a non-negative integer, found `{v}`"))
        })?),
        Err(_) => None,
    };
    if bounds.emax < 1 {
        return Err(CliError::Input("--emax: must be at least 1".into()));
    }
    if bounds.window < 1 {
        return Err(CliError::Input("--window: must be at least 1".into()));
    }
    Ok(ClosureOptions {
        e_max: bounds.emax,
        window: bounds.window,
        max_degree,
    })
}

fn write_optional<T: Serialize>(path: Option<&Path>, value: &T) -> Result<(), CliError> {
    match path {
        Some(p) => write_json(p, value),
        None => Ok(()),
    }
}

pub fn dispatch(command: &Command) -> Result<i32, CliError> {
    match command {
        Command::Gb { common, ideal } => gb(common, ideal),
        Command::Member { common, ideal, poly } => member(common, ideal, poly),
        Command::Regseq { common, elems } => regseq(common, elems),
        Command::Closure { common, ideal, bounds } => closure(common, ideal, *bounds, "closure"),
        Command::Qnumber { common, ideal, bounds } => closure(common, ideal, *bounds, "qnumber"),
        Command::Census {
            common,
            template,
            ranges,
            ideal,
            frobenius_family,
            nmax,
            bounds,
            csv,
        } => census(
            common,
            template.as_deref(),
            ranges,
            ideal.as_deref(),
            *frobenius_family,
            *nmax,
            *bounds,
            csv.as_deref(),
        ),
        Command::Eta {
            common,
            sop,
            nmax,
            bounds,
        } => eta(common, sop, *nmax, *bounds),
        Command::Paramcheck {
            common,
            ideal,
            extend,
            e,
            bounds,
        } => paramcheck(common, ideal, extend, *e, *bounds),
    }
}

fn gb(common: &Common, name: &str) -> Result<i32, CliError> {
    let loaded = load(common)?;
    let named = loaded.ideal(common, name)?;
    let lift = loaded.ring.lift(&named.generators)?;
    let gens = basis(&lift);
    println!("reduced Groebner basis of {name} + J (grevlex):");
    for g in &gens {
        println!("  {g}");
    }
    #[derive(Serialize)]
    struct Body {
        ideal: NamedGenerators,
        order: &'static str,
        basis: Vec<String>,
    }
    let body = Body {
        ideal: NamedGenerators {
            name: name.to_string(),
            generators: strings(&named.generators),
        },
        order: "grevlex",
        basis: gens,
    };
    write_optional(common.json.as_deref(), &loaded.envelope("gb", body))?;
    Ok(0)
}

fn member(common: &Common, name: &str, poly: &str) -> Result<i32, CliError> {
    let loaded = load(common)?;
    let named = loaded.ideal(common, name)?;
    let f = loaded
        .file
        .ring
        .parse(poly)
        .map_err(|e| CliError::Input(format!("--poly: {e}")))?;
    let lift = loaded.ring.lift(&named.generators)?;
    let nf = lift.normal_form(&f)?;
    let is_member = nf.is_zero();
    println!(
        "{f} {} {name} + J (normal form {nf})",
        if is_member { "is in" } else { "is not in" }
    );
    #[derive(Serialize)]
    struct Body {
        ideal: NamedGenerators,
        poly: String,
        member: bool,
        normal_form: String,
    }
    let body = Body {
        ideal: NamedGenerators {
            name: name.to_string(),
            generators: strings(&named.generators),
        },
        poly: f.to_string(),
        member: is_member,
        normal_form: nf.to_string(),
    };
    write_optional(common.json.as_deref(), &loaded.envelope("member", body))?;
    Ok(0)
}

fn regseq(common: &Common, elems: &str) -> Result<i32, CliError> {
    let loaded = load(common)?;
    let seq = loaded.polys("--elems", elems)?;
    if seq.is_empty() {
        return Err(CliError::Input("--elems: expected at least one element".into()));
    }
    let check = loaded.ring.is_poor_regular_sequence(&seq)?;
    let fails_at = match check {
        RegularSequenceCheck::Regular => {
            println!("{} is a regular sequence in {}", tuple(&strings(&seq)), loaded.describe());
            None
        }
        RegularSequenceCheck::FailsAt(i) => {
            println!(
                "{} is not a regular sequence: element {} ({}) is a zero-divisor modulo its predecessors",
                tuple(&strings(&seq)),
                i + 1,
                seq[i]
            );
            Some(i + 1)
        }
    };
    #[derive(Serialize)]
    struct Body {
        elements: Vec<String>,
        regular: bool,
        /// 1-based position of the first failing element
        fails_at: Option<usize>,
    }
    let body = Body {
        elements: strings(&seq),
        regular: fails_at.is_none(),
        fails_at,
    };
    write_optional(common.json.as_deref(), &loaded.envelope("regseq", body))?;
    Ok(0)
}

fn closure(common: &Common, name: &str, bounds: Bounds, command: &'static str) -> Result<i32, CliError> {
    let loaded = load(common)?;
    let named = loaded.ideal(common, name)?;
    let options = closure_options(bounds)?;
    let json = common.json.as_deref();
    let report = loaded.guarded(command, json, || {
        let ideal = Ideal::new(&loaded.file.ring, named.generators.clone())?;
        let mut report = frobenius_closure(&loaded.ring, &ideal, options)?;
        if report.is_stable() {
            q_number(&mut report)?;
        }
        Ok(report)
    })?;

    println!(
        "Frobenius closure of {name} = {} in {}",
        tuple(&strings(&named.generators)),
        loaded.describe()
    );
    if command == "closure" {
        for t in &report.chain {
            println!("  C_{} = {}", t.e, tuple(&basis(&t.ideal)));
        }
    }
    println!("status: {}", report.status.as_str());
    let body = ClosureJson::new(name, &named.generators, &report);
    match report.stabilization_index {
        Some(s) => {
            println!("stabilization index: {s}");
            println!("certificate: {} at e = {}", body.certificate.verdict, body.certificate.exponent);
            println!("closure (lift, heuristic completeness): {}", tuple(&body.closure_generators));
            let q = report.q_exponent.expect("set for stable chains");
            println!("q_exponent: {q} (Q = {})", report.q().unwrap_or(0));
        }
        None => println!(
            "chain did not stabilize within e_max = {} (window {})",
            options.e_max, options.window
        ),
    }
    write_optional(json, &loaded.envelope(command, body))?;
    Ok(if report.is_stable() { 0 } else { 2 })
}

fn parse_range(text: &str) -> Result<(String, Vec<u32>), CliError> {
    let bad = || CliError::Input(format!("--range `{text}`: expected name=lo..hi or name=v1,v2,..."));
    let (name, values) = text.split_once('=').ok_or_else(bad)?;
    let name = name.trim();
    let values = values.trim();
    let list: Vec<u32> = if let Some((lo, hi)) = values.split_once("..") {
        let lo: u32 = lo.trim().parse().map_err(|_| bad())?;
        let hi: u32 = hi.trim().parse().map_err(|_| bad())?;
        if lo > hi {
            return Err(bad());
        }
        (lo..=hi).collect()
    } else {
        values
            .split(',')
            .map(|v| v.trim().parse().map_err(|_| bad()))
            .collect::<Result<_, _>>()?
    };
    if name.is_empty() {
        return Err(bad());
    }
    Ok((name.to_string(), list))
}

#[allow(clippy::too_many_arguments)]
fn census(
    common: &Common,
    template: Option<&str>,
    ranges: &[String],
    ideal: Option<&str>,
    frobenius_family: bool,
    nmax: Option<u32>,
    bounds: Bounds,
    csv: Option<&Path>,
) -> Result<i32, CliError> {
    let loaded = load(common)?;
    let options = closure_options(bounds)?;
    let (family, label) = match (template, frobenius_family) {
        (Some(_), true) => {
            return Err(CliError::Input(
                "--template and --frobenius-family cannot be combined".into(),
            ))
        }
        (Some(t), false) => {
            if ranges.is_empty() {
                return Err(CliError::Input("--template needs at least one --range".into()));
            }
            let gens: Vec<String> = t.split(',').map(|g| g.trim().to_string()).collect();
            let ranges = ranges.iter().map(|r| parse_range(r)).collect::<Result<Vec<_>, _>>()?;
            let tpl = CensusTemplate::new(gens, ranges)
                .map_err(|e| CliError::Input(format!("--template: {e}")))?;
            (CensusFamily::Template(tpl), format!("template {t}"))
        }
        (None, true) => {
            let name = ideal.ok_or_else(|| CliError::Input("--frobenius-family needs --ideal".into()))?;
            let n_max = nmax.ok_or_else(|| CliError::Input("--frobenius-family needs --nmax".into()))?;
            let named = loaded.ideal(common, name)?;
            let base = Ideal::new(&loaded.file.ring, named.generators.clone())?;
            (
                CensusFamily::FrobeniusPowers { ideal: base, n_max },
                format!("{name}^[p^n], n = 0..{n_max}"),
            )
        }
        (None, false) => {
            return Err(CliError::Input(
                "census needs --template with --range, or --ideal with --frobenius-family".into(),
            ))
        }
    };
    let json = common.json.as_deref();
    let report = loaded.guarded("census", json, || Ok(uniform_census(&loaded.ring, &family, options)?))?;

    println!("census over {label} in {}", loaded.describe());
    for r in &report.rows {
        let params: Vec<String> = r.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect();
        println!(
            "  {}: regseq {} stabilized {} q_exponent {} closure {}",
            params.join(" "),
            r.regular_sequence_ok,
            r.stabilized,
            r.q_exponent.map_or("-".to_string(), |q| q.to_string()),
            tuple(&r.ideal_digest())
        );
    }
    println!(
        "uniform_e: {} ({}); recheck at uniform_e: {}",
        report.uniform_e,
        if report.all_stabilized { "all rows stabilized" } else { "lower bound, some rows did not stabilize" },
        if report.recheck_ok { "passed" } else { "failed" }
    );
    if let Some(path) = csv {
        write_census_csv(path, &report)?;
    }
    write_optional(json, &loaded.envelope("census", CensusJson::new(label, options, &report)))?;
    Ok(if report.all_stabilized { 0 } else { 2 })
}

fn eta(common: &Common, sop: &str, n_max: u32, bounds: Bounds) -> Result<i32, CliError> {
    let loaded = load(common)?;
    let seq = loaded.polys("--sop", sop)?;
    let options = closure_options(bounds)?;
    let json = common.json.as_deref();
    let report = loaded.guarded("eta", json, || {
        eta_estimate(&loaded.ring, &seq, n_max, options).map_err(|e| match CliError::from(e) {
            CliError::Input(m) => CliError::Input(format!("--sop: {m}")),
            other => other,
        })
    })?;
    let flag = f_injective_flag(&report).ok();

    println!("{} with s = {} in {}", report.label(), tuple(&strings(&seq)), loaded.describe());
    for r in &report.rows {
        println!(
            "  n={}: stabilized {} q_exponent {}",
            r.n,
            r.stabilized,
            r.q_exponent.map_or("-".to_string(), |q| q.to_string())
        );
    }
    println!("eta_hat: {}", report.eta_hat);
    match flag {
        Some(f) => println!("F-injective: {f}"),
        None => println!("F-injective: undetermined (incomplete scan)"),
    }

    #[derive(Serialize)]
    struct Row {
        n: u32,
        stabilized: bool,
        certificate_ok: bool,
        q_exponent: Option<u32>,
        closure_generators: Vec<String>,
    }
    #[derive(Serialize)]
    struct Body {
        sop: Vec<String>,
        n_max: u32,
        options: OptionsJson,
        rows: Vec<Row>,
        eta_hat: u32,
        label: String,
        complete: bool,
        completeness: &'static str,
        f_injective: Option<bool>,
    }
    let body = Body {
        sop: strings(&seq),
        n_max,
        options: options.into(),
        rows: report
            .rows
            .iter()
            .map(|r| Row {
                n: r.n,
                stabilized: r.stabilized,
                certificate_ok: r.certificate_ok,
                q_exponent: r.q_exponent,
                closure_generators: basis(&r.closure),
            })
            .collect(),
        eta_hat: report.eta_hat,
        label: report.label(),
        complete: report.complete,
        completeness: if report.complete { "heuristic" } else { "lower_bound" },
        f_injective: flag,
    };
    write_optional(json, &loaded.envelope("eta", body))?;
    Ok(if report.complete { 0 } else { 2 })
}

fn paramcheck(common: &Common, name: &str, extend: &str, e: u32, bounds: Bounds) -> Result<i32, CliError> {
    let loaded = load(common)?;
    let named = loaded.ideal(common, name)?;
    let extension = loaded.polys("--extend", extend)?;
    let options = closure_options(bounds)?;
    let json = common.json.as_deref();
    let holds = loaded.guarded("paramcheck", json, || {
        parameter_ideal_check(&loaded.ring, &named.generators, &extension, e, options).map_err(|err| {
            match CliError::from(err) {
                CliError::Input(m) => CliError::Input(format!("--extend: {m}")),
                other => other,
            }
        })
    })?;
    println!(
        "(({name})^F)^[p^{e}] {} ({name})^[p^{e}] in {}",
        if holds { "=" } else { "!=" },
        loaded.describe()
    );
    #[derive(Serialize)]
    struct Body {
        ideal: NamedGenerators,
        extension: Vec<String>,
        e: u32,
        options: OptionsJson,
        holds: bool,
    }
    let body = Body {
        ideal: NamedGenerators {
            name: name.to_string(),
            generators: strings(&named.generators),
        },
        extension: strings(&extension),
        e,
        options: options.into(),
        holds,
    };
    write_optional(json, &loaded.envelope("paramcheck", body))?;
    Ok(0)
}

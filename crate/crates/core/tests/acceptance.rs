//! Acceptance run: each criterion prints one PASS/FAIL line with its time
//! against its limit. Exits non-zero if any criterion fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use frobenius_core::cohomology::{
    eta_estimate, f_injective_flag, parameter_ideal_check, TopCohomology, TorsionOrder,
};
use frobenius_core::frobenius::{
    bracket_power, closure_step, frobenius_closure, frobenius_preimage, q_number, uniform_census,
    CensusFamily, CensusTemplate, ClosureOptions,
};
use frobenius_core::groebner::{is_groebner_basis, normal_form};
use frobenius_core::{Ideal, Monomial, Polynomial, QuotientRing};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use common::*;

type Outcome = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn fermat(p: u64) -> QuotientRing {
    let (s, f) = fermat_ring(p);
    QuotientRing::new(&s, vec![f]).unwrap()
}

fn fermat_closure_criterion() -> Outcome {
    let (s, f) = fermat_ring(2);
    // independent oracle: z^2 is not in (x, y) + J, but z^4 is in (x^2, y^2) + J
    ensure!(
        !homogeneous_member(&[poly(&s, "x"), poly(&s, "y"), f.clone()], &poly(&s, "z^2")),
        "oracle: z^2 unexpectedly in (x,y)+J"
    );
    ensure!(
        homogeneous_member(&[poly(&s, "x^2"), poly(&s, "y^2"), f.clone()], &poly(&s, "z^4")),
        "oracle: z^4 not in (x^2,y^2)+J"
    );

    let r = fermat(2);
    let i = Ideal::new(&s, polys(&s, &["x", "y"])).unwrap();
    let mut report = frobenius_closure(&r, &i, ClosureOptions::default()).map_err(|e| e.to_string())?;
    let expected = r.lift(&polys(&s, &["x", "y", "z^2"])).unwrap();
    ensure!(report.closure().equals(&expected).unwrap(), "closure is {:?}", report.closure());
    ensure!(report.certificate_ok, "certificate failed");
    ensure!(report.stabilization_index == Some(1), "index {:?}", report.stabilization_index);
    let q = q_number(&mut report).map_err(|e| e.to_string())?;
    ensure!(q.exponent == 1 && q.q == 2, "Q = {q:?}");
    Ok(())
}

fn census_criterion() -> Outcome {
    let r = fermat(2);
    let t = CensusTemplate::new(
        vec!["x^{a}".into(), "y^{b}".into()],
        vec![("a".into(), vec![1, 2, 3]), ("b".into(), vec![1, 2, 3])],
    )
    .unwrap();
    let report = uniform_census(&r, &CensusFamily::Template(t), ClosureOptions::default())
        .map_err(|e| e.to_string())?;
    ensure!(report.rows.len() == 9, "{} rows", report.rows.len());
    for row in &report.rows {
        ensure!(row.regular_sequence_ok, "row {:?} not a regular sequence", row.parameters);
        ensure!(row.stabilized && row.certificate_ok, "row {:?} did not stabilize", row.parameters);
        ensure!(row.recheck_ok, "row {:?} failed the recheck", row.parameters);
    }
    ensure!(report.uniform_e == 1, "uniform_e = {}", report.uniform_e);
    ensure!(report.all_stabilized && report.recheck_ok, "census flags");
    Ok(())
}

fn frobenius_family_criterion() -> Outcome {
    let r = fermat(2);
    let s = r.ambient().clone();
    let i = Ideal::new(&s, polys(&s, &["x", "y"])).unwrap();
    let report = uniform_census(
        &r,
        &CensusFamily::FrobeniusPowers { ideal: i, n_max: 2 },
        ClosureOptions::default(),
    )
    .map_err(|e| e.to_string())?;
    ensure!(report.rows.len() == 3, "{} rows", report.rows.len());
    for row in &report.rows {
        ensure!(
            matches!(row.q_exponent, Some(q) if q <= 1),
            "row {:?}: q_exponent {:?}",
            row.parameters,
            row.q_exponent
        );
    }
    Ok(())
}

fn eta_criterion() -> Outcome {
    let opts = ClosureOptions::default();
    for (p, eta, flag) in [(2u64, 1u32, false), (7, 0, true)] {
        let r = fermat(p);
        let s = r.ambient().clone();
        let sop = polys(&s, &["x", "y"]);
        let report = eta_estimate(&r, &sop, 1, opts).map_err(|e| e.to_string())?;
        ensure!(report.complete, "p={p}: incomplete");
        ensure!(report.rows.iter().all(|row| row.certificate_ok), "p={p}: uncertified row");
        ensure!(report.eta_hat == eta, "p={p}: eta_hat {}", report.eta_hat);
        ensure!(f_injective_flag(&report).unwrap() == flag, "p={p}: flag");
        // per-row oracle: rerun each chain directly
        for row in &report.rows {
            let base = Ideal::new(&s, sop.clone()).unwrap();
            let mut direct = frobenius_closure(&r, &bracket_power(&base, row.n), opts).unwrap();
            let q = q_number(&mut direct).unwrap();
            ensure!(Some(q.exponent) == row.q_exponent, "p={p} n={}: row disagrees", row.n);
        }
    }
    // p = 7, n = 0: r^7 ∉ (x^7, y^7) + J for r = z^d, d < 3, so C_1 = (x, y) + J
    let (s, f) = fermat_ring(7);
    for d in 0..3u64 {
        let target = poly(&s, "z").pow(7 * d);
        ensure!(
            !homogeneous_member(&[poly(&s, "x^7"), poly(&s, "y^7"), f.clone()], &target),
            "oracle: z^{} in (x^7,y^7)+J",
            7 * d
        );
    }
    Ok(())
}

fn parameter_ideal_criterion() -> Outcome {
    let r = fermat(2);
    let s = r.ambient().clone();
    let opts = ClosureOptions::default();
    let sop = polys(&s, &["x", "y"]);
    let eta = eta_estimate(&r, &sop, 1, opts).map_err(|e| e.to_string())?.eta_hat;
    ensure!(eta == 1, "eta_hat {eta}");
    let holds = parameter_ideal_check(&r, &polys(&s, &["x"]), &polys(&s, &["y"]), eta, opts)
        .map_err(|e| e.to_string())?;
    ensure!(holds, "(x) extended by y at e = 1 should hold");
    let fails = parameter_ideal_check(&r, &sop, &[], 0, opts).map_err(|e| e.to_string())?;
    ensure!(!fails, "(x, y) at e = 0 should fail");
    Ok(())
}

fn regular_triviality_criterion() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed_0006);
    let opts = ClosureOptions::default();
    for k in 0..50 {
        let p = if k % 2 == 0 { 2 } else { 3 };
        let s = ring(p, &["x", "y"]);
        let count = rng.gen_range(1..=3);
        // no constant terms, so the ideal is proper
        let gens: Vec<Polynomial> = (0..count)
            .map(|_| random_poly_between(&mut rng, &s, 1, 3, 3))
            .collect();
        let i = Ideal::new(&s, gens.clone()).unwrap();
        ensure!(!i.is_unit(), "instance {k}: generator sampling produced the unit ideal");
        let r = QuotientRing::polynomial_ring(&s);
        let mut report = frobenius_closure(&r, &i, opts).map_err(|e| format!("{gens:?}: {e}"))?;
        ensure!(report.closure().equals(&i).unwrap(), "instance {k} {gens:?}: closure grew");
        let q = q_number(&mut report).map_err(|e| e.to_string())?;
        ensure!(q.exponent == 0, "instance {k}: q_exponent {}", q.exponent);
    }
    Ok(())
}

fn preimage_oracle_criterion() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed_0007);
    let names = ["x", "y", "z"];
    for k in 0..25 {
        let p = if k % 2 == 0 { 2 } else { 3 };
        let n = rng.gen_range(1..=3);
        let e = rng.gen_range(1..=2);
        let s = ring(p, &names[..n]);
        let count = rng.gen_range(1..=3);
        let gens: Vec<Polynomial> = (0..count)
            .map(|_| random_poly_between(&mut rng, &s, 1, 3, 3))
            .collect();
        let kk = Ideal::new(&s, gens.clone()).unwrap();
        let u = frobenius_preimage(&kk, e).map_err(|err| err.to_string())?;
        let gb = kk.groebner_basis();

        // every monomial of degree <= 4, then random combinations
        let mut sample: Vec<Polynomial> = monomials_up_to(n, 4)
            .into_iter()
            .map(|m| Polynomial::monomial(&s, Monomial::from_exponents(&m), 1))
            .collect();
        while sample.len() < 200 {
            sample.push(random_poly(&mut rng, &s, 4, 4));
        }
        for r in &sample {
            let lhs = u.contains(r).unwrap();
            let rhs = normal_form(&r.frobenius_power(e), gb).is_zero();
            ensure!(lhs == rhs, "instance {k} (p={p}, e={e}, K={gens:?}): disagreement at {r}");
        }
    }
    Ok(())
}

fn groebner_criterion() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed_0008);
    for k in 0..30 {
        let p = [2u64, 3, 5][k % 3];
        let s = ring(p, &["x", "y", "z"]);
        let count = rng.gen_range(1..=3);
        let gens: Vec<Polynomial> = (0..count)
            .map(|_| {
                let d = rng.gen_range(1..=3);
                random_homogeneous(&mut rng, &s, d, 3)
            })
            .collect();
        let ideal = Ideal::new(&s, gens.clone()).unwrap();
        let gb = ideal.groebner_basis();
        ensure!(is_groebner_basis(gb), "instance {k}: S-pair did not reduce to 0");
        for g in gb {
            ensure!(homogeneous_member(&gens, g), "instance {k}: basis element {g} not in the ideal");
        }
        for _ in 0..10 {
            let d = rng.gen_range(0..=4);
            let f = if rng.gen_bool(0.5) {
                random_homogeneous(&mut rng, &s, d, 3)
            } else {
                // a guaranteed member of degree d when possible
                let g = &gens[rng.gen_range(0..gens.len())];
                let dg = g.total_degree().unwrap_or(0) as u32;
                if dg > d {
                    random_homogeneous(&mut rng, &s, d, 3)
                } else {
                    &random_homogeneous(&mut rng, &s, d - dg, 2) * g
                }
            };
            if f.is_zero() {
                continue;
            }
            ensure!(
                ideal.contains(&f).unwrap() == homogeneous_member(&gens, &f),
                "instance {k}: membership of {f} disagrees with the oracle"
            );
        }
        let mut shuffled = gens.clone();
        shuffled.reverse();
        shuffled.rotate_left(rng.gen_range(0..gens.len()));
        let other = Ideal::new(&s, shuffled).unwrap();
        ensure!(other.groebner_basis() == gb, "instance {k}: basis depends on generator order");
    }
    Ok(())
}

fn cech_coherence_criterion() -> Outcome {
    let r = Arc::new(fermat(2));
    let s = r.ambient().clone();
    let h = TopCohomology::new(r.clone(), polys(&s, &["x", "y"])).map_err(|e| e.to_string())?;
    let base = Ideal::new(&s, polys(&s, &["x", "y"])).unwrap();
    let chain: Vec<Ideal> = (0..=3).map(|j| closure_step(&r, &base, j).unwrap()).collect();
    for m in monomials_up_to(3, 3) {
        let num = Polynomial::monomial(&s, Monomial::from_exponents(&m), 1);
        let zeta = h.class(num.clone(), 1).unwrap();
        for (j, c_j) in chain.iter().enumerate() {
            let killed = matches!(zeta.torsion_order(j as u32).unwrap(), TorsionOrder::Killed(k) if k as usize <= j);
            ensure!(
                killed == c_j.contains(&num).unwrap(),
                "numerator {num}, j = {j}: torsion and closure chain disagree"
            );
        }
    }
    Ok(())
}

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

fn main() {
    let criteria = [
        Criterion { id: 1, name: "Fermat cubic closure", limit: Duration::from_secs(5), run: fermat_closure_criterion },
        Criterion { id: 2, name: "uniform bound census", limit: Duration::from_secs(60), run: census_criterion },
        Criterion { id: 3, name: "Frobenius-power family", limit: Duration::from_secs(60), run: frobenius_family_criterion },
        Criterion { id: 4, name: "eta and F-injectivity", limit: Duration::from_secs(120), run: eta_criterion },
        Criterion { id: 5, name: "parameter ideal prediction", limit: Duration::from_secs(30), run: parameter_ideal_criterion },
        Criterion { id: 6, name: "regular-ring triviality", limit: Duration::from_secs(60), run: regular_triviality_criterion },
        Criterion { id: 7, name: "preimage/oracle equivalence", limit: Duration::from_secs(120), run: preimage_oracle_criterion },
        Criterion { id: 8, name: "Groebner engine invariants", limit: Duration::from_secs(120), run: groebner_criterion },
        Criterion { id: 9, name: "Cech/x-action coherence", limit: Duration::from_secs(60), run: cech_coherence_criterion },
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for c in &criteria {
        if !filter.is_empty() && !filter.iter().any(|f| c.name.contains(f.as_str()) || c.id.to_string() == *f) {
            continue;
        }
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(c.run))
            .unwrap_or_else(|_| Err("panicked".to_string()));
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|()| {
            if elapsed > c.limit {
                Err(format!("exceeded the {:?} limit", c.limit))
            } else {
                Ok(())
            }
        });
        match outcome {
            Ok(()) => println!("PASS criterion {} {} ({:.2?}, limit {:?})", c.id, c.name, elapsed, c.limit),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {} {} ({:.2?}): {msg}", c.id, c.name, elapsed);
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}

//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

mod support;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rg_lie::cli::run_from;
use rg_lie::coord::{
    build_bb, check_uniform, load_quadruple, verify_bb_lie, verify_beta_star_relations,
    verify_derivations, verify_diamond_heart, verify_homology, verify_laws, CoordAlgebra,
    PRESET_NAMES,
};
use rg_lie::graded::{
    build_model, subalgebra, verify_antisymmetry, verify_grading, verify_jacobi,
    verify_level_transition, verify_subalgebra, GradedModel, JacobiStrategy, Level,
};
use rg_lie::liealg::{build_algebra, derivation_span_equals_ob};
use rg_lie::report::CheckRecord;
use rg_lie::rootsys::{generate, Family};

type Outcome = Result<(), String>;
type Criterion = (&'static str, Duration, fn() -> Outcome);

const SEED: u64 = 20240601;
const RANDOM_TRIPLES: usize = 2000;
const EXHAUSTIVE_MAX_DIM: usize = 120;

const MODELS: [(Family, usize, usize, &str); 6] = [
    (Family::BC, 5, 4, "symplectic:m=2"),
    (Family::BC, 5, 4, "matrix_hermitian:k=2,m=2"),
    (Family::A, 6, 5, "matrix:k=2"),
    (Family::D, 7, 5, "group_ring:m=3"),
    (Family::B, 6, 5, "clifford:d=2"),
    (Family::C, 6, 5, "matrix_transpose:k=2"),
];

/// Models for the level transition. `n` leaves room for λ = I_0 plus two indices.
const LEVEL_MODELS: [(Family, usize, usize, &str); 2] = [
    (Family::BC, 7, 4, "matrix_hermitian:k=2,m=2"),
    (Family::A, 9, 5, "matrix:k=2"),
];

fn model(spec: &(Family, usize, usize, &str)) -> Result<GradedModel, String> {
    let (f, n, ell, source) = *spec;
    let q = load_quadruple(source).map_err(|e| e.to_string())?;
    build_model(f, n, ell, &q, &[], false).map_err(|e| format!("{f} {source}: {e}"))
}

fn first_failure(tag: &str, recs: &[CheckRecord]) -> Outcome {
    match recs.iter().find(|r| !r.passed()) {
        None => Ok(()),
        Some(r) => Err(format!("{tag}: {} {:?}", r.name, r.witnesses.first())),
    }
}

fn root_systems() -> Outcome {
    for n in 1..=8 {
        for (f, count) in [
            (Family::BC, 2 * n * n + 2 * n),
            (Family::B, 2 * n * n),
            (Family::C, 2 * n * n),
            (Family::D, 2 * n * (n - 1)),
            (Family::A, n * (n - 1)),
        ] {
            let r = generate(f, n).map_err(|e| format!("{f}{n}: {e}"))?;
            r.validate().map_err(|e| format!("{f}{n}: {e}"))?;
            let got = r.nonzero().count();
            if got != count {
                return Err(format!("{f}{n}: {got} nonzero roots, expected {count}"));
            }
        }
    }
    Ok(())
}

fn algebras() -> Outcome {
    for f in [Family::A, Family::B, Family::C, Family::D] {
        for n in 2..=6 {
            let g = build_algebra(f, n).map_err(|e| e.to_string())?;
            if let Some(w) = support::algebra_witness(&g) {
                return Err(w);
            }
        }
    }
    Ok(())
}

fn clifford_jordan() -> Outcome {
    for (n, dim) in [(1, 3), (2, 10), (3, 21)] {
        let r = derivation_span_equals_ob(n).map_err(|e| e.to_string())?;
        if !r.equal || r.algebra_dim != dim || r.derivation_dim != dim {
            return Err(format!("n = {n}: {r:?}"));
        }
    }
    Ok(())
}

fn modules() -> Outcome {
    (2..=5)
        .find_map(support::module_witness)
        .map_or(Ok(()), Err)
}

fn coordinates() -> Outcome {
    for name in PRESET_NAMES {
        let start = Instant::now();
        let alg = CoordAlgebra::new(load_quadruple(name).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        let bb = build_bb(&alg, 4).map_err(|e| e.to_string())?;
        let mut recs = verify_laws(&alg);
        recs.push(verify_derivations(&bb));
        recs.push(verify_bb_lie(&bb));
        recs.push(verify_homology(&bb).map_err(|e| e.to_string())?);
        if alg.dims().2 > 0 {
            recs.push(verify_diamond_heart(&alg).map_err(|e| e.to_string())?);
        }
        first_failure(name, &recs)?;
        if start.elapsed() > Duration::from_secs(60) {
            return Err(format!("{name} took {:?}", start.elapsed()));
        }
    }
    Ok(())
}

fn uniform() -> Outcome {
    for name in PRESET_NAMES {
        let alg = CoordAlgebra::new(load_quadruple(name).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        let bb = build_bb(&alg, 4).map_err(|e| e.to_string())?;
        first_failure(name, &[verify_beta_star_relations(&bb)])?;
        let rep = check_uniform(&bb, &[], 7).map_err(|e| e.to_string())?;
        if !rep.uniform || rep.uniform != rep.cross_uniform {
            return Err(format!(
                "{name}: verdict {} at ℓ = 4, {} at ℓ = 7",
                rep.uniform, rep.cross_uniform
            ));
        }
    }
    Ok(())
}

fn graded_construction() -> Outcome {
    for spec in &MODELS {
        let m = model(spec)?;
        let tag = format!("{} {} (dim {})", spec.0, spec.3, m.dim());
        let mut recs = vec![verify_antisymmetry(&m)];
        recs.push(
            verify_jacobi(
                &m,
                JacobiStrategy::Random {
                    samples: RANDOM_TRIPLES,
                    seed: SEED,
                },
            )
            .record("jacobi/random"),
        );
        if m.dim() <= EXHAUSTIVE_MAX_DIM {
            recs.push(verify_jacobi(&m, JacobiStrategy::Exhaustive).record("jacobi/exhaustive"));
        }
        recs.extend(verify_grading(&m).map_err(|e| format!("{tag}: {e}"))?);
        first_failure(&tag, &recs)?;
    }
    Ok(())
}

fn subsystems() -> Outcome {
    for spec in &MODELS {
        let m = model(spec)?;
        let indices: BTreeSet<usize> = (1..m.n()).collect();
        let s = generate(m.family(), m.n())
            .map_err(|e| e.to_string())?
            .restrict(&indices);
        let sub = subalgebra(&m, &s).map_err(|e| format!("{} {}: {e}", spec.0, spec.3))?;
        let recs = verify_subalgebra(&m, &sub).map_err(|e| e.to_string())?;
        first_failure(&format!("{} {}", spec.0, spec.3), &recs)?;
    }
    Ok(())
}

fn level_transition() -> Outcome {
    for spec in &LEVEL_MODELS {
        let m = model(spec)?;
        for extra in 1..=2 {
            let lambda = Level::extend(&m, extra).map_err(|e| e.to_string())?;
            let recs = verify_level_transition(&m, &lambda).map_err(|e| e.to_string())?;
            first_failure(&format!("{} {} +{extra}", spec.0, spec.3), &recs)?;
        }
    }
    Ok(())
}

fn report_for(spec: &(Family, usize, usize, &str)) -> Result<String, String> {
    let (f, n, ell, source) = *spec;
    let args = format!(
        "rg-lie verify --family {f} --n {n} --ell {ell} --preset {source} --k zero --suite grading,jacobi --samples {RANDOM_TRIPLES} --seed {SEED}"
    );
    let o = run_from(args.split_whitespace());
    if o.code != 0 {
        return Err(format!("{f} {source}: exit {} {}", o.code, o.stderr));
    }
    Ok(o.stdout)
}

fn determinism() -> Outcome {
    for spec in &MODELS {
        if report_for(spec)? != report_for(spec)? {
            return Err(format!("{} {}: reports differ", spec.0, spec.3));
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("root systems", Duration::from_secs(1), root_systems),
        ("classical algebras", Duration::from_secs(10), algebras),
        (
            "Clifford-Jordan derivations",
            Duration::from_secs(5),
            clifford_jordan,
        ),
        ("module weight tables", Duration::from_secs(30), modules),
        ("coordinate suite", Duration::from_secs(6 * 60), coordinates),
        ("uniform property", Duration::from_secs(30), uniform),
        (
            "graded construction",
            Duration::from_secs(10 * 60),
            graded_construction,
        ),
        (
            "subsystem gradings",
            Duration::from_secs(2 * 60),
            subsystems,
        ),
        (
            "level transition",
            Duration::from_secs(2 * 60),
            level_transition,
        ),
        (
            "deterministic reports",
            Duration::from_secs(10 * 60),
            determinism,
        ),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let mut result =
            catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        if result.is_ok() && elapsed > limit {
            result = Err(format!("exceeded the {limit:?} limit"));
        }
        match result {
            Ok(()) => println!("PASS {:>2} {name} ({:.2} s)", i + 1, elapsed.as_secs_f64()),
            Err(w) => {
                failed += 1;
                println!(
                    "FAIL {:>2} {name} ({:.2} s): {w}",
                    i + 1,
                    elapsed.as_secs_f64()
                );
            }
        }
    }
    println!("acceptance: {} of 10 criteria passed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

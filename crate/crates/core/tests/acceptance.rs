//! Acceptance suite. Prints one line per criterion and exits non-zero if any
//! criterion fails.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use dubois::cli::random_invariants;
use dubois::complexes::{quasi_iso, ChainMap};
use dubois::dubois::{
    build_tower, check_assoc_graded, induce_tower_morphism, stationary_check, validate_wedge, verify_base_case,
    verify_functorial_diagram, verify_ses_tower, verify_subcomplex, zero_wedge_collapse, WedgeOperator,
};
use dubois::filtered::bete_filtration;
use dubois::linalg::rat;
use dubois::models::{
    build_nodal_normalization, build_nodal_union_family, build_smooth_plane_family, fiber_restriction_smooth_check,
    smooth_relative_comparison, ModelBundle, ModelKind,
};
use dubois::report::{CheckReport, Evidence};
use dubois::testing::random_complex;

type Outcome = Result<String, String>;

fn e(err: impl std::fmt::Display) -> String {
    err.to_string()
}

fn both(bound: u32) -> Result<[ModelBundle; 2], String> {
    Ok([build_smooth_plane_family(bound).map_err(e)?, build_nodal_union_family(bound).map_err(e)?])
}

fn require_passed(r: &CheckReport, what: &str) -> Result<(), String> {
    if r.results.is_empty() {
        return Err(format!("{what}: {} produced no results", r.name));
    }
    let failures: Vec<String> = r.failures().map(|f| format!("p={:?}: {}", f.p, f.detail)).collect();
    if failures.is_empty() {
        Ok(())
    } else {
        Err(format!("{what}: {} failed: {}", r.name, failures.join(", ")))
    }
}

fn require_covers(r: &CheckReport, ps: impl IntoIterator<Item = i64>, what: &str) -> Result<(), String> {
    for p in ps {
        if r.result(p).is_none() {
            return Err(format!("{what}: {} has no result at p={p}", r.name));
        }
    }
    Ok(())
}

fn criterion_1() -> Outcome {
    let mut slowest = Duration::ZERO;
    for bound in [2, 3, 4] {
        for b in both(bound)? {
            let what = format!("{:?} D={bound}", b.kind);
            let start = Instant::now();
            let t = build_tower(&b.filtered, &b.wedge, -1).map_err(e)?;
            let r = verify_ses_tower(&t);
            let took = start.elapsed();
            require_passed(&r, &what)?;
            require_covers(&r, -1..=t.n(), &what)?;
            if bound == 4 {
                if took >= Duration::from_secs(10) {
                    return Err(format!("{what}: {took:?} exceeds 10 s"));
                }
                slowest = slowest.max(took);
            }
        }
    }
    Ok(format!("slowest model at D=4: {slowest:?}"))
}

fn criterion_2() -> Outcome {
    for bound in [2, 3, 4] {
        for b in both(bound)? {
            let what = format!("{:?} D={bound}", b.kind);
            let t = build_tower(&b.filtered, &b.wedge, -2).map_err(e)?;
            let r = verify_subcomplex(&t);
            require_passed(&r, &what)?;
            require_covers(&r, -2..t.n(), &what)?;
        }
    }
    Ok("both models, D in {2,3,4}".into())
}

fn criterion_3() -> Outcome {
    for bound in [2, 3, 4] {
        for b in both(bound)? {
            let t = build_tower(&b.filtered, &b.wedge, -1).map_err(e)?;
            require_passed(&verify_base_case(&t), &format!("{:?} D={bound}", b.kind))?;
        }
    }
    Ok("E^{n-1} = F^n[1] twisted, matrix for matrix".into())
}

fn criterion_4() -> Outcome {
    for bound in [2, 3] {
        let b = build_smooth_plane_family(bound).map_err(e)?;
        let t = build_tower(&b.filtered, &b.wedge, -2).map_err(e)?;
        let refs = b.graded_references(&t).map_err(e)?;
        let r = check_assoc_graded(&t, &refs).map_err(e)?;
        for p in [0, 1] {
            let res = r.result(p).ok_or(format!("D={bound}: no graded result at p={p}"))?;
            if !res.passed() || res.evidence != Evidence::Exact {
                return Err(format!("D={bound} p={p}: {} ({})", res.detail, res.evidence.as_str()));
            }
        }
        // The comparison E^p -> σ≥p of the relative complex, for the same p.
        for p in [0, 1] {
            let phi = smooth_relative_comparison(&b, &t, p).map_err(e)?;
            let target = b.reference_relative(p).ok_or(format!("no relative reference at p={p}"))?;
            if phi.target() != target || !phi.is_chain_map() || !quasi_iso(&phi).map_err(e)? {
                return Err(format!("D={bound}: relative comparison at p={p} is not a quasi-isomorphism"));
            }
        }
        if !stationary_check(&t).map_err(e)? {
            return Err(format!("D={bound}: tower not stationary below 0"));
        }
    }
    Ok("graded comparisons quasi-isomorphic at p=0,1; stationary with p_min=-2".into())
}

fn criterion_5() -> Outcome {
    let mut flags = Vec::new();
    for bound in [2, 3] {
        for b in both(bound)? {
            let what = format!("{:?} D={bound}", b.kind);
            let t = build_tower(&b.filtered, &b.wedge, -2).map_err(e)?;
            let refs = b.graded_references(&t).map_err(e)?;
            let r = check_assoc_graded(&t, &refs).map_err(e)?;
            require_passed(&r, &what)?;
            require_covers(&r, -2..t.n(), &what)?;
            if b.kind == ModelKind::NodalUnion && bound == 2 {
                for res in &r.results {
                    flags.push(format!("nodal p={}: {}", res.p.unwrap_or_default(), res.evidence.as_str()));
                }
            }
        }
    }
    Ok(flags.join(", "))
}

fn criterion_6() -> Outcome {
    let mut corrupted = 0;
    for bound in [2, 3] {
        let x = build_nodal_union_family(bound).map_err(e)?;
        let (y, gamma) = build_nodal_normalization(bound).map_err(e)?;
        let tx = build_tower(&x.filtered, &x.wedge, -2).map_err(e)?;
        let ty = build_tower(&y.filtered, &y.wedge, -2).map_err(e)?;
        let alpha = induce_tower_morphism(&gamma, &tx, &ty).map_err(e)?;
        let what = format!("normalization D={bound}");
        let r = verify_functorial_diagram(&alpha, &gamma, &tx, &ty);
        require_passed(&r, &what)?;
        require_covers(&r, tx.indices(), &what)?;
        if bound != 2 {
            continue;
        }
        for (&p, map) in &alpha {
            for m in map.source().degrees() {
                let (rows, cols) = map.mat(m).shape();
                for i in 0..rows {
                    for j in 0..cols {
                        let mut bad: BTreeMap<i64, ChainMap> = alpha.clone();
                        let mat = bad.get_mut(&p).and_then(|a| a.mat_mut(m)).ok_or("missing alpha block")?;
                        let v = mat.get(i, j) + rat(1);
                        mat.set(i, j, v);
                        if verify_functorial_diagram(&bad, &gamma, &tx, &ty).passed() {
                            return Err(format!("corruption of alpha_{p} degree {m} entry ({i},{j}) went unnoticed"));
                        }
                        corrupted += 1;
                    }
                }
            }
        }
    }
    Ok(format!("diagram commutes; {corrupted} single-entry corruptions all detected"))
}

fn criterion_7() -> Outcome {
    for bound in [2, 3] {
        let b = build_smooth_plane_family(bound).map_err(e)?;
        for t0 in [rat(0), rat(1)] {
            let r = fiber_restriction_smooth_check(&b, &t0).map_err(e)?;
            require_passed(&r, &format!("D={bound} t0={t0}"))?;
        }
    }
    Ok("t0 in {0,1}, D in {2,3}".into())
}

fn criterion_8() -> Outcome {
    let mut rng = StdRng::seed_from_u64(8);
    let count = 120;
    for i in 0..count {
        let len = rng.gen_range(1..=4);
        let (c, _) = random_complex(&mut rng, 0, len, 8);
        let f = bete_filtration(&c);
        let w = WedgeOperator::zero(f.clone());
        validate_wedge(&w).map_err(e)?;
        let t = build_tower(&f, &w, -1).map_err(e)?;
        if !zero_wedge_collapse(&t).map_err(e)? {
            return Err(format!("instance {i} (dims {:?}) does not split", c.dims()));
        }
    }
    Ok(format!("{count} random complexes"))
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    let entry = random_invariants(1000);
    let took = start.elapsed();
    if !entry.passed() {
        let details: Vec<&str> = entry.results.iter().map(|r| r.detail.as_str()).collect();
        return Err(details.join("; "));
    }
    if took >= Duration::from_secs(60) {
        return Err(format!("{took:?} exceeds 60 s"));
    }
    Ok(format!("1000 instances in {took:?}"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("ses tower", criterion_1),
        ("subcomplex", criterion_2),
        ("base case", criterion_3),
        ("smooth comparison and stationarity", criterion_4),
        ("associated graded", criterion_5),
        ("functoriality", criterion_6),
        ("fiber restriction", criterion_7),
        ("zero-wedge collapse", criterion_8),
        ("kernel invariants", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(note) => println!("criterion {}: pass  {name} ({ms} ms) {note}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name} ({ms} ms) {why}", i + 1);
            }
        }
    }
    println!("acceptance: {}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

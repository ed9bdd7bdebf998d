//! Acceptance suite: one test per exit criterion, each printing a
//! pass/fail line. Run with `cargo test -p ortho-cli --test acceptance
//! -- --nocapture` to see the lines.

use num_traits::{One, ToPrimitive};
use ortho_core::arithmetic::{
    double_group, integrality_check, invariant_quaternion_algebra, ramification_set,
    square_class_span, trace_field_check, trace_ring_sample,
};
use ortho_core::classify::{
    classify_oi_pants, classify_oi_tori, classify_oi_tori_full_box, d_aoi_check,
};
use ortho_core::exact::{candidate_places, hilbert_symbol, int, rat, rat_int, Rat};
use ortho_core::geometry::{
    bavard_upper_bound, eta_sequence, markoff_verify, pants_boundary,
    torus_accompanying_trace_squares, torus_boundary_trace, trace_sq_to_length, OrthoTriple,
};
use ortho_core::glue::{lambda_orbit_integral, xn_stats};
use ortho_core::golden;
use ortho_core::orbit::{
    basmajian_report, boundary_reflections, enumerate_spectrum, gram_matrix, pants_generators,
    preserves_form, spectrum_word_value, torus_generators, StartSel, SurfaceKind,
};
use std::process::Command;
use std::time::Instant;

fn pass(n: u32, what: &str) {
    println!("[PASS] criterion {n}: {what}");
}

fn classified_surfaces() -> Vec<(OrthoTriple, SurfaceKind)> {
    let mut out: Vec<(OrthoTriple, SurfaceKind)> = classify_oi_pants()
        .iter()
        .map(|r| (r.triple(), SurfaceKind::Pants))
        .collect();
    out.extend(
        classify_oi_tori()
            .iter()
            .map(|r| (r.triple(), SurfaceKind::Torus)),
    );
    out
}

fn ortho_bin(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_ortho"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn criterion_01_classification_reproduction() {
    let start = Instant::now();
    let pants = classify_oi_pants();
    let expect_pants: Vec<[u64; 3]> = golden::oi_pants().to_vec();
    assert_eq!(
        pants.iter().map(|r| [r.a1, r.a2, r.a3]).collect::<Vec<_>>(),
        expect_pants,
        "pants classification"
    );
    let tori = classify_oi_tori();
    let expect_tori: Vec<[u64; 3]> = golden::oi_tori().iter().map(|r| r.triple).collect();
    assert_eq!(
        tori.iter().map(|r| [r.a, r.b, r.c]).collect::<Vec<_>>(),
        expect_tori,
        "tori classification"
    );
    println!(
        "[WARN] criterion 1: the published classification list records the torus (6,29,36) \
         by its non-minimal flip (6,36,64); the scan output uses the minimal orthobasis"
    );
    assert_eq!(
        classify_oi_tori_full_box()
            .iter()
            .map(|r| [r.a, r.b, r.c])
            .collect::<Vec<_>>(),
        expect_tori,
        "full-box scan"
    );
    assert!(
        start.elapsed().as_secs_f64() < 5.0,
        "classification exceeded 5 s"
    );

    // the CLI surface emits the same lists with exit 0
    let out = ortho_bin(&["classify", "--target", "pants", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout).lines().count(), 8);
    let out = ortho_bin(&[
        "classify",
        "--target",
        "tori",
        "--full-box",
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout).lines().count(), 35);
    pass(
        1,
        "7 pants and 34 tori, proof-derived and full-box scans agree",
    );
}

#[test]
fn criterion_02_eta_oracle_equivalence() {
    for r in classify_oi_pants() {
        let t = r.triple();
        let etas = eta_sequence(&t, 20);
        let mut word = String::from("g");
        for (k, eta) in etas.iter().enumerate() {
            let v = spectrum_word_value(&t, SurfaceKind::Pants, &word)
                .expect("alternating word evaluates");
            assert_eq!(&v, eta, "η_{k} mismatch for {t}");
            word.push_str("bg");
        }
        // the small η values also appear in an enumerated spectrum
        let spec =
            enumerate_spectrum(&t, SurfaceKind::Pants, StartSel::All, &rat_int(100_000)).unwrap();
        for eta in etas.iter().filter(|e| **e <= rat_int(100_000)) {
            assert!(
                spec.entries.iter().any(|e| &e.cosh_length == eta),
                "η value {eta} missing from the spectrum of {t}"
            );
        }
    }
    pass(
        2,
        "alternating-path spectrum values equal the closed-form recursion to k = 20",
    );
}

#[test]
fn criterion_03_oi_integrality_scan() {
    let start = Instant::now();
    let cutoff = rat_int(1_000_000);
    let mut entries = 0usize;
    for (t, kind) in classified_surfaces() {
        let spec = enumerate_spectrum(&t, kind, StartSel::All, &cutoff).unwrap();
        assert!(!spec.entries.is_empty());
        for e in &spec.entries {
            assert!(
                e.cosh_length.denom().is_one(),
                "non-integer {} in the spectrum of {t} ({kind:?})",
                e.cosh_length
            );
        }
        entries += spec.total_multiplicity();
    }
    let elapsed = start.elapsed().as_secs_f64();
    assert!(elapsed < 60.0, "integrality scan took {elapsed:.1} s");
    pass(
        3,
        &format!("all 41 spectra integral below 10^6 ({entries} values, {elapsed:.1} s)"),
    );
}

#[test]
fn criterion_04_basmajian_identity() {
    for kind in [SurfaceKind::Pants, SurfaceKind::Torus] {
        let t = OrthoTriple::from_ints(2, 2, 2);
        let mut prev: Vec<f64> = Vec::new();
        for (cutoff, tol) in [(10_000i64, 1e-2), (1_000_000, 1e-3)] {
            let rep = basmajian_report(&t, kind, &rat_int(cutoff)).unwrap();
            for (i, b) in rep.boundaries.iter().enumerate() {
                assert!(
                    b.relative_error.abs() <= tol,
                    "{kind:?} {}: relative error {} above {tol} at cutoff {cutoff}",
                    b.boundary,
                    b.relative_error
                );
                assert!(
                    b.partial_sum <= b.target_length + 1e-9,
                    "{kind:?} {}: overshoot at cutoff {cutoff}",
                    b.boundary
                );
                if let Some(p) = prev.get(i) {
                    assert!(b.partial_sum >= *p - 1e-12, "partial sums not monotone");
                }
            }
            prev = rep.boundaries.iter().map(|b| b.partial_sum).collect();
        }
    }
    pass(
        4,
        "partial sums converge monotonically (1e-2 at 1e4, 1e-3 at 1e6, no overshoot)",
    );
}

#[test]
fn criterion_05_markoff_table_reproduction() {
    assert_eq!(golden::torus_markoff().len(), 34);
    for row in golden::torus_markoff() {
        let t = OrthoTriple::from_ints(row.label[0], row.label[1], row.label[2]);
        let rep = markoff_verify(&t);
        assert!(rep.success, "Markoff verification failed for {t}");
        assert_eq!(rep.constant, rat_int(row.constant), "constant for {t}");
        for (got, want) in rep.trace_squares.iter().zip(row.m.iter()) {
            assert_eq!(
                got,
                &rat_int(*want as i64),
                "squared initial solution for {t}"
            );
        }
        // the squared traces are the exact accompanying-geodesic data
        assert_eq!(rep.trace_squares, torus_accompanying_trace_squares(&t));
    }
    pass(
        5,
        "all 34 Markoff constants and squared initial solutions match exactly",
    );
}

#[test]
fn criterion_06_ramification_tables() {
    let mut exact_matches = 0;
    for gold in golden::quaternion_pants() {
        let t = OrthoTriple::from_ints(gold.label[0], gold.label[1], gold.label[2]);
        let ram: Vec<u64> = ramification_set(&invariant_quaternion_algebra(&t).unwrap())
            .finite_primes()
            .iter()
            .map(|p| p.to_u64().unwrap())
            .collect();
        assert_eq!(ram, gold.ram, "pants {t}");
    }
    for gold in golden::quaternion_tori() {
        let label = gold.label;
        let compute_from = if label == golden::TORUS_LABEL_ALIAS.0 {
            // compared as ramification-set equality for the published flip
            println!(
                "[WARN] criterion 6: row ({},{},{}) carries the label ({},{},{}) in the \
                 classification list; comparing the algebra of the published representative",
                label[0],
                label[1],
                label[2],
                golden::TORUS_LABEL_ALIAS.1[0],
                golden::TORUS_LABEL_ALIAS.1[1],
                golden::TORUS_LABEL_ALIAS.1[2],
            );
            golden::TORUS_LABEL_ALIAS.1
        } else {
            label
        };
        let t = OrthoTriple::from_ints(compute_from[0], compute_from[1], compute_from[2]);
        let ram: Vec<u64> = ramification_set(&invariant_quaternion_algebra(&t).unwrap())
            .finite_primes()
            .iter()
            .map(|p| p.to_u64().unwrap())
            .collect();
        match golden::ram_errata().iter().find(|e| e.triple == label) {
            None => {
                assert_eq!(ram, gold.ram, "torus {t}");
                exact_matches += 1;
            }
            Some(err) => {
                println!(
                    "[WARN] criterion 6: torus ({},{},{}) reference ram {{{:?}}} is a known \
                     erratum; computed {{{ram:?}}}",
                    label[0], label[1], label[2], err.recorded
                );
                assert_eq!(ram, err.computed, "erratum recomputation for {t}");
            }
        }
    }
    assert!(
        exact_matches >= 33,
        "only {exact_matches} of 34 torus rows match exactly"
    );
    pass(
        6,
        &format!(
            "7 pants rows and {exact_matches} of 34 torus rows match the reference \
             ramification sets exactly (label alias and one documented erratum warned)"
        ),
    );
}

#[test]
fn criterion_07_takeuchi_checks() {
    let start = Instant::now();
    for (t, kind) in classified_surfaces() {
        let g = double_group(&t, kind);
        let integral = integrality_check(&g);
        assert!(integral.pass, "trace integrality fails for {t} ({kind:?})");
        assert_eq!(integral.items.len(), 15);
        let field = trace_field_check(&g);
        assert!(field.pass, "trace field is not rational for {t} ({kind:?})");
        assert_eq!(field.items.len(), 14);
    }
    let elapsed = start.elapsed().as_secs_f64();
    assert!(elapsed < 30.0, "Takeuchi checks took {elapsed:.1} s");
    pass(7, &format!("15-word integrality and 14-word trace-field checks pass for all 41 doubles ({elapsed:.1} s)"));
}

#[test]
fn criterion_08_trace_ring_sampling() {
    for gold in golden::quaternion_pants()
        .iter()
        .chain(golden::quaternion_tori())
    {
        let label = if gold.kind == SurfaceKind::Torus {
            golden::published_torus_label(gold.label)
        } else {
            gold.label
        };
        let t = OrthoTriple::from_ints(label[0], label[1], label[2]);
        let observed = trace_ring_sample(&double_group(&t, gold.kind), 4).unwrap();
        let span = square_class_span(&gold.ring);
        assert!(
            observed.is_subset(&span),
            "{:?} {t}: observed {observed:?} outside span of {:?}",
            gold.kind,
            gold.ring
        );
    }
    pass(
        8,
        "squarefree trace parts at word length <= 4 lie in the reference ring spans",
    );
}

#[test]
fn criterion_09_gluing() {
    for a in [2u64, 3] {
        let rep = lambda_orbit_integral(a, 12).unwrap();
        assert!(rep.integral, "orbit of ({a},{a},{a}) not integral");
        assert!(
            rep.orbit_size > 1000,
            "orbit suspiciously small: {}",
            rep.orbit_size
        );
    }
    let ratios: Vec<Rat> = (1..=10).map(|n| xn_stats(n).unwrap().ratio).collect();
    for i in 0..ratios.len() {
        for j in 0..i {
            assert_ne!(
                ratios[i],
                ratios[j],
                "ratios for n={} and n={} collide",
                i + 1,
                j + 1
            );
        }
    }
    let half = OrthoTriple::parse("3/2,3/2,3/2").unwrap();
    assert!(d_aoi_check(&half, 2, 10));
    assert!(!d_aoi_check(&half, 1, 10));
    pass(
        9,
        "reflection orbits integral to depth 12; family ratios distinct; 2-AOI checks",
    );
}

fn xorshift(state: &mut u64) -> u64 {
    let mut x = *state;
    x ^= x << 13;
    x ^= x >> 7;
    x ^= x << 17;
    *state = x;
    x
}

#[test]
fn criterion_10_property_suites() {
    // Hilbert reciprocity on 10^3 pseudo-random pairs
    let mut st = 0x5deece66d_u64;
    for _ in 0..1000 {
        let a = (xorshift(&mut st) % 2_000_000) as i64 - 1_000_000;
        let b = (xorshift(&mut st) % 2_000_000) as i64 - 1_000_000;
        let (a, b) = (if a == 0 { 7 } else { a }, if b == 0 { -5 } else { b });
        let product: i32 = candidate_places(&int(a), &int(b))
            .iter()
            .map(|v| hilbert_symbol(&int(a), &int(b), v))
            .product();
        assert_eq!(product, 1, "reciprocity fails for ({a},{b})");
    }

    // form preservation and involutions over 50 random rational triples
    for _ in 0..50 {
        let mut entry = || {
            let num = 2 + (xorshift(&mut st) % 28) as i64;
            let den = 1 + (xorshift(&mut st) % 3) as i64;
            let v = rat(num, den);
            if v <= Rat::one() {
                rat(num + den, den)
            } else {
                v
            }
        };
        let t = OrthoTriple::new(entry(), entry(), entry()).unwrap();
        let q = gram_matrix(&t);
        for m in pants_generators(&t)
            .iter()
            .chain(torus_generators(&t).iter())
            .chain(boundary_reflections(&t).iter())
        {
            assert!(m.mul(m).is_identity(), "involution fails for {t}");
            assert!(preserves_form(m, &q), "form preservation fails for {t}");
        }
    }

    // Bavard's bound over the classified surfaces, orthosystole from the
    // smallest spectrum entry and the orthobasis arcs
    for (t, kind) in classified_surfaces() {
        let spec = enumerate_spectrum(&t, kind, StartSel::All, &rat_int(5000)).unwrap();
        let mut osys = t.a().clone();
        if let Some(min) = spec.min_entry() {
            osys = osys.min(min.clone());
        }
        let total_length = match kind {
            SurfaceKind::Pants => pants_boundary(&t).total_length(),
            SurfaceKind::Torus => {
                let tr = torus_boundary_trace(&t);
                trace_sq_to_length(&(&tr * &tr))
            }
        };
        let (g, n) = match kind {
            SurfaceKind::Pants => (0, 3),
            SurfaceKind::Torus => (1, 1),
        };
        let bound = bavard_upper_bound(total_length, g, n).unwrap();
        let osys_f = osys.to_f64().unwrap();
        assert!(
            osys_f <= bound * (1.0 + 1e-9),
            "Bavard bound violated for {t} ({kind:?}): {osys_f} > {bound}"
        );
    }

    // the ortho-integral orthosystole lower bound is attained with
    // equality exactly where tr^2(λ_α) = 5, i.e. on the four named tori
    let named: Vec<[u64; 3]> = golden::OSYS_EQUALITY_TORI
        .iter()
        .map(|&l| golden::canonical_torus_label(l))
        .collect();
    for r in classify_oi_tori() {
        let t = r.triple();
        let m_alpha = &torus_accompanying_trace_squares(&t)[0];
        // strict non-OI bound and the OI bound, exactly
        assert!(m_alpha > &rat_int(4), "strict lower bound fails for {t}");
        assert!(m_alpha >= &rat_int(5), "OI lower bound fails for {t}");
        let attains = *m_alpha == rat_int(5);
        let is_named = named.contains(&[r.a, r.b, r.c]);
        assert_eq!(attains, is_named, "equality set mismatch at {t}");
    }
    pass(
        10,
        "reciprocity, involution/form properties, Bavard bound, and the osys equality set",
    );
}

use crate::output::{csv, emit, emit_json, render, CliError};
use crate::{FormatArg, KindArg, OutputOpts, StartArg, TargetArg};
use num_traits::ToPrimitive;
use ortho_core::arithmetic::{
    double_group, integrality_check, invariant_quaternion_algebra,
    invariant_quaternion_algebra_raw, ramification_set, square_class_span, trace_field_check,
    trace_ring_sample,
};
use ortho_core::classify::{
    classify_oi_pants, classify_oi_pants_full_box, classify_oi_tori, classify_oi_tori_full_box,
};
use ortho_core::exact::{parse_rat, rat_str, Rat};
use ortho_core::geometry::{markoff_verify, pants_boundary, torus_boundary_trace, OrthoTriple};
use ortho_core::glue::{lambda_orbit_integral, xn_stats, GlueError};
use ortho_core::golden;
use ortho_core::orbit::{
    basmajian_report, enumerate_spectrum, ArcLabel, OrbitError, StartSel, SurfaceKind,
};
use serde::Serialize;

impl KindArg {
    fn kind(self) -> SurfaceKind {
        match self {
            KindArg::Pants => SurfaceKind::Pants,
            KindArg::Torus => SurfaceKind::Torus,
        }
    }
}

impl StartArg {
    fn sel(self) -> StartSel {
        match self {
            StartArg::Alpha => StartSel::One(ArcLabel::Alpha),
            StartArg::Beta => StartSel::One(ArcLabel::Beta),
            StartArg::Gamma => StartSel::One(ArcLabel::Gamma),
            StartArg::All => StartSel::All,
        }
    }
}

fn parse_triple(s: &str) -> Result<OrthoTriple, CliError> {
    OrthoTriple::parse(s).map_err(|e| CliError::Usage(format!("invalid --triple: {e}")))
}

fn parse_cutoff(s: &str) -> Result<Rat, CliError> {
    parse_rat(s).map_err(|e| CliError::Usage(format!("invalid --cutoff: {e}")))
}

fn orbit_err(e: OrbitError) -> CliError {
    match e {
        OrbitError::CutoffTooSmall(_) | OrbitError::BadWord(_) => CliError::Usage(e.to_string()),
        OrbitError::DipBudgetExceeded { .. } | OrbitError::NotSpaceLike(_) => {
            CliError::Internal(e.to_string())
        }
    }
}

pub fn spectrum(
    kind: KindArg,
    triple: &str,
    start: StartArg,
    cutoff: &str,
    output: &OutputOpts,
) -> Result<u8, CliError> {
    let t = parse_triple(triple)?;
    let cutoff = parse_cutoff(cutoff)?;
    let spec = enumerate_spectrum(&t, kind.kind(), start.sel(), &cutoff).map_err(orbit_err)?;
    let file = spec.to_file();
    render(output, &file, || {
        let rows = file
            .entries
            .iter()
            .map(|e| vec![e.cosh.clone(), e.mult.to_string(), e.word.clone()])
            .collect::<Vec<_>>();
        csv("cosh,mult,word", &rows)
    })?;
    Ok(0)
}

#[derive(Serialize)]
struct ClassifyRow {
    triple: [u64; 3],
    #[serde(skip_serializing_if = "Option::is_none")]
    trace_squares: Option<[String; 3]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    boundary_trace: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    markoff_constant: Option<String>,
}

#[derive(Serialize)]
struct ClassifyReport {
    target: &'static str,
    full_box: bool,
    rows: Vec<ClassifyRow>,
    golden_match: bool,
    warnings: Vec<String>,
}

pub fn classify(target: TargetArg, full_box: bool, output: &OutputOpts) -> Result<u8, CliError> {
    let mut warnings = Vec::new();
    let (rows, golden_match, target_name) = match target {
        TargetArg::Pants => {
            let found = if full_box {
                classify_oi_pants_full_box()
            } else {
                classify_oi_pants()
            };
            let expect: Vec<[u64; 3]> = golden::oi_pants().to_vec();
            let got: Vec<[u64; 3]> = found.iter().map(|r| [r.a1, r.a2, r.a3]).collect();
            let rows = found
                .iter()
                .map(|r| {
                    let b = pants_boundary(&r.triple());
                    ClassifyRow {
                        triple: [r.a1, r.a2, r.a3],
                        trace_squares: Some([
                            rat_str(&b.trace_sq_alpha),
                            rat_str(&b.trace_sq_beta),
                            rat_str(&b.trace_sq_gamma),
                        ]),
                        boundary_trace: None,
                        markoff_constant: None,
                    }
                })
                .collect();
            (rows, got == expect, "pants")
        }
        TargetArg::Tori => {
            let found = if full_box {
                classify_oi_tori_full_box()
            } else {
                classify_oi_tori()
            };
            let expect: Vec<[u64; 3]> = golden::oi_tori().iter().map(|r| r.triple).collect();
            let got: Vec<[u64; 3]> = found.iter().map(|r| [r.a, r.b, r.c]).collect();
            let alias = golden::TORUS_LABEL_ALIAS;
            if got.contains(&alias.0) {
                warnings.push(format!(
                    "row ({},{},{}) is listed elsewhere by its non-minimal flip ({},{},{})",
                    alias.0[0], alias.0[1], alias.0[2], alias.1[0], alias.1[1], alias.1[2]
                ));
            }
            let rows = found
                .iter()
                .map(|r| ClassifyRow {
                    triple: [r.a, r.b, r.c],
                    trace_squares: None,
                    boundary_trace: Some(rat_str(&torus_boundary_trace(&r.triple()))),
                    markoff_constant: Some(rat_str(&ortho_core::geometry::markoff_constant(
                        &r.triple(),
                    ))),
                })
                .collect();
            (rows, got == expect, "tori")
        }
    };
    let report = ClassifyReport {
        target: target_name,
        full_box,
        rows,
        golden_match,
        warnings,
    };
    render(output, &report, || {
        let header = match target {
            TargetArg::Pants => "a1,a2,a3,trace_sq_alpha,trace_sq_beta,trace_sq_gamma",
            TargetArg::Tori => "a,b,c,boundary_trace,markoff_constant",
        };
        let rows = report
            .rows
            .iter()
            .map(|r| {
                let mut row: Vec<String> = r.triple.iter().map(|x| x.to_string()).collect();
                if let Some(ts) = &r.trace_squares {
                    row.extend(ts.iter().cloned());
                }
                if let Some(bt) = &r.boundary_trace {
                    row.push(bt.clone());
                }
                if let Some(mc) = &r.markoff_constant {
                    row.push(mc.clone());
                }
                row
            })
            .collect::<Vec<_>>();
        csv(header, &rows)
    })?;
    if !report.golden_match {
        return Err(CliError::Golden(format!(
            "classification of {target_name} disagrees with the embedded reference list"
        )));
    }
    Ok(0)
}

#[derive(Serialize)]
struct BasmajianOut {
    #[serde(flatten)]
    report: ortho_core::orbit::BasmajianReport,
    tolerance: f64,
    pass: bool,
}

pub fn basmajian(
    kind: KindArg,
    triple: &str,
    cutoff: &str,
    tolerance: f64,
    output: &OutputOpts,
) -> Result<u8, CliError> {
    if tolerance <= 0.0 {
        return Err(CliError::Usage("tolerance must be positive".into()));
    }
    let t = parse_triple(triple)?;
    let c = parse_cutoff(cutoff)?;
    let report = basmajian_report(&t, kind.kind(), &c).map_err(orbit_err)?;
    let pass = report
        .boundaries
        .iter()
        .all(|b| b.relative_error.abs() <= tolerance);
    let out = BasmajianOut {
        report,
        tolerance,
        pass,
    };
    emit_json(output, &out)?;
    if !pass {
        return Err(CliError::Tolerance(format!(
            "relative error above {tolerance} at cutoff {}",
            rat_str(&c)
        )));
    }
    Ok(0)
}

#[derive(Serialize)]
struct MarkoffOut {
    label: [u64; 3],
    constant: String,
    trace_squares: [String; 3],
    product_root: Option<String>,
    verified: bool,
    matches_reference: bool,
}

#[derive(Serialize)]
struct InvariantRow {
    kind: &'static str,
    triple: [u64; 3],
    hilbert_raw: [String; 2],
    hilbert_canonical: [String; 2],
    ram: Vec<u64>,
    ram_reference: Vec<u64>,
    ram_match: bool,
    trace_ring_observed: Vec<String>,
    ring_reference: Vec<u64>,
    ring_within_span: bool,
    integrality_pass: bool,
    trace_field_pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    markoff: Option<MarkoffOut>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    warnings: Vec<String>,
}

#[derive(Serialize)]
struct InvariantsReport {
    rows: Vec<InvariantRow>,
    mismatches: Vec<String>,
    warnings: Vec<String>,
}

fn ram_primes(alg: &ortho_core::arithmetic::QuatAlgQ) -> (Vec<u64>, bool) {
    let ram = ramification_set(alg);
    let finite = ram
        .finite_primes()
        .iter()
        .map(|p| p.to_u64().expect("ramified prime fits u64"))
        .collect();
    (finite, ram.contains_infinite())
}

fn invariant_row(
    kind: SurfaceKind,
    label: [u64; 3],
    gold: &golden::QuatRow,
    markoff_gold: Option<&golden::MarkoffRow>,
    mismatches: &mut Vec<String>,
    warnings: &mut Vec<String>,
) -> InvariantRow {
    let t = OrthoTriple::from_ints(label[0], label[1], label[2]);
    let kind_name = kind.as_str();
    let (rx, ry) = invariant_quaternion_algebra_raw(&t).expect("classified triples are integral");
    let alg = invariant_quaternion_algebra(&t).expect("classified triples are integral");
    let (ram, ram_inf) = ram_primes(&alg);
    assert!(
        !ram_inf,
        "classified algebras are unramified at the real place"
    );

    let mut row_warnings = Vec::new();
    let erratum = golden::ram_errata()
        .iter()
        .find(|e| e.kind == kind && e.triple == label);
    let ram_match = match erratum {
        Some(e) => {
            let w = format!(
                "{kind_name} ({},{},{}): reference ram {{{}}} is a known erratum ({}); computed {{{}}}",
                label[0], label[1], label[2],
                join(e.recorded), e.note, join(&ram)
            );
            warnings.push(w.clone());
            row_warnings.push(w);
            let ok = ram == e.computed;
            if !ok {
                mismatches.push(format!(
                    "{kind_name} ({},{},{}): ram {{{}}} differs from the recomputed erratum value {{{}}}",
                    label[0], label[1], label[2], join(&ram), join(e.computed)
                ));
            }
            ok
        }
        None => {
            let ok = ram == gold.ram;
            if !ok {
                mismatches.push(format!(
                    "{kind_name} ({},{},{}): ram {{{}}} != reference {{{}}}",
                    label[0],
                    label[1],
                    label[2],
                    join(&ram),
                    join(&gold.ram)
                ));
            }
            ok
        }
    };

    // label alias: same torus, two orthobases; the algebras must agree
    if kind == SurfaceKind::Torus && label == golden::TORUS_LABEL_ALIAS.0 {
        let pub_label = golden::TORUS_LABEL_ALIAS.1;
        let t2 = OrthoTriple::from_ints(pub_label[0], pub_label[1], pub_label[2]);
        let alg2 = invariant_quaternion_algebra(&t2).expect("alias triple is integral");
        let (ram2, _) = ram_primes(&alg2);
        let w = format!(
            "torus ({},{},{}): classification list records the non-minimal flip ({},{},{}); \
             both bases give the same algebra (ram {{{}}})",
            label[0],
            label[1],
            label[2],
            pub_label[0],
            pub_label[1],
            pub_label[2],
            join(&ram2)
        );
        warnings.push(w.clone());
        row_warnings.push(w);
        if ram2 != ram {
            mismatches.push(format!(
                "torus ({},{},{}): flip bases disagree on the algebra",
                label[0], label[1], label[2]
            ));
        }
    }

    let g = double_group(&t, kind);
    let integrality = integrality_check(&g);
    if !integrality.pass {
        mismatches.push(format!(
            "{kind_name} ({},{},{}): trace integrality fails",
            label[0], label[1], label[2]
        ));
    }
    let field = trace_field_check(&g);
    if !field.pass {
        mismatches.push(format!(
            "{kind_name} ({},{},{}): invariant trace field is not rational",
            label[0], label[1], label[2]
        ));
    }
    let observed = trace_ring_sample(&g, 4).expect("identity-component traces");
    let span = square_class_span(&gold.ring);
    let ring_within_span = observed.is_subset(&span);
    if !ring_within_span {
        mismatches.push(format!(
            "{kind_name} ({},{},{}): observed trace squarefree parts outside the reference ring",
            label[0], label[1], label[2]
        ));
    }

    let markoff = markoff_gold.map(|mg| {
        let mt = OrthoTriple::from_ints(mg.label[0], mg.label[1], mg.label[2]);
        let rep = markoff_verify(&mt);
        let constant_match = rep.constant == ortho_core::exact::rat_int(mg.constant);
        let m_match = rep
            .trace_squares
            .iter()
            .zip(mg.m.iter())
            .all(|(x, &y)| *x == ortho_core::exact::rat_int(y as i64));
        let matches_reference = constant_match && m_match && rep.success;
        if !matches_reference {
            mismatches.push(format!(
                "torus ({},{},{}): Markoff data differs from the reference row",
                mg.label[0], mg.label[1], mg.label[2]
            ));
        }
        MarkoffOut {
            label: mg.label,
            constant: rat_str(&rep.constant),
            trace_squares: [
                rat_str(&rep.trace_squares[0]),
                rat_str(&rep.trace_squares[1]),
                rat_str(&rep.trace_squares[2]),
            ],
            product_root: rep.product_root.as_ref().map(|p| p.to_string()),
            verified: rep.success,
            matches_reference,
        }
    });

    InvariantRow {
        kind: kind_name,
        triple: label,
        hilbert_raw: [rx.to_string(), ry.to_string()],
        hilbert_canonical: [alg.x().to_string(), alg.y().to_string()],
        ram,
        ram_reference: gold.ram.clone(),
        ram_match,
        trace_ring_observed: observed.iter().map(|d| d.to_string()).collect(),
        ring_reference: gold.ring.clone(),
        ring_within_span,
        integrality_pass: integrality.pass,
        trace_field_pass: field.pass,
        markoff,
        warnings: row_warnings,
    }
}

fn join(xs: &[u64]) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

pub fn invariants(
    triple: Option<&str>,
    kind: Option<KindArg>,
    output: &OutputOpts,
) -> Result<u8, CliError> {
    let mut mismatches = Vec::new();
    let mut warnings = Vec::new();
    let mut rows = Vec::new();

    let selected: Option<[u64; 3]> = match triple {
        None => None,
        Some(s) => {
            let t = parse_triple(s)?;
            if !t.is_integral() {
                return Err(CliError::Usage(
                    "invariants need an integral triple (the algebra lives over the rationals)"
                        .into(),
                ));
            }
            Some([
                t.a()
                    .numer()
                    .to_u64()
                    .ok_or_else(|| CliError::Usage("triple too large".into()))?,
                t.b()
                    .numer()
                    .to_u64()
                    .ok_or_else(|| CliError::Usage("triple too large".into()))?,
                t.c()
                    .numer()
                    .to_u64()
                    .ok_or_else(|| CliError::Usage("triple too large".into()))?,
            ])
        }
    };

    let want = |k: SurfaceKind| match kind {
        None => true,
        Some(ka) => ka.kind() == k,
    };

    if want(SurfaceKind::Pants) {
        for gold in golden::quaternion_pants() {
            if selected.is_some_and(|s| s != gold.label) {
                continue;
            }
            rows.push(invariant_row(
                SurfaceKind::Pants,
                gold.label,
                gold,
                None,
                &mut mismatches,
                &mut warnings,
            ));
        }
    }
    if want(SurfaceKind::Torus) {
        for gold in golden::quaternion_tori() {
            let published = golden::published_torus_label(gold.label);
            if selected.is_some_and(|s| s != gold.label && s != published) {
                continue;
            }
            let markoff_gold = golden::torus_markoff()
                .iter()
                .find(|m| m.label == published);
            rows.push(invariant_row(
                SurfaceKind::Torus,
                gold.label,
                gold,
                markoff_gold,
                &mut mismatches,
                &mut warnings,
            ));
        }
    }
    if rows.is_empty() {
        return Err(CliError::Usage(
            "triple is not in the classified lists; nothing to compare".into(),
        ));
    }

    let report = InvariantsReport {
        rows,
        mismatches,
        warnings,
    };
    render(output, &report, || {
        let rows = report
            .rows
            .iter()
            .map(|r| {
                vec![
                    r.kind.to_string(),
                    format!("{} {} {}", r.triple[0], r.triple[1], r.triple[2]),
                    format!("{} {}", r.hilbert_raw[0], r.hilbert_raw[1]),
                    format!("{} {}", r.hilbert_canonical[0], r.hilbert_canonical[1]),
                    r.ram
                        .iter()
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>()
                        .join(" "),
                    r.trace_ring_observed.join(" "),
                    r.ram_match.to_string(),
                    r.ring_within_span.to_string(),
                    r.integrality_pass.to_string(),
                    r.trace_field_pass.to_string(),
                ]
            })
            .collect::<Vec<_>>();
        csv(
            "kind,triple,hilbert_raw,hilbert_canonical,ram_set,trace_ring_observed,\
             ram_match,ring_within_span,integrality_pass,trace_field_pass",
            &rows,
        )
    })?;
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
    if !report.mismatches.is_empty() {
        return Err(CliError::Golden(format!(
            "{} invariant mismatch(es) against the reference tables",
            report.mismatches.len()
        )));
    }
    Ok(0)
}

#[derive(Serialize)]
struct XnOut {
    n: u32,
    okiss: String,
    area_over_2pi: String,
    ratio: String,
}

#[derive(Serialize)]
struct AoiOut {
    triple: [String; 3],
    d: u64,
    depth: usize,
    in_lattice: bool,
}

#[derive(Serialize)]
struct GlueReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    orbit: Option<ortho_core::glue::LambdaOrbitReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    xn: Vec<XnOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    ratios_pairwise_distinct: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    aoi: Option<AoiOut>,
}

fn parse_range(s: &str) -> Result<(u32, u32), CliError> {
    let bad = || CliError::Usage(format!("invalid --xn range {s:?}; expected e.g. 1..5"));
    let (lo, hi) = s.split_once("..").ok_or_else(bad)?;
    let lo: u32 = lo.trim().parse().map_err(|_| bad())?;
    let hi: u32 = hi.trim().parse().map_err(|_| bad())?;
    if lo == 0 || hi < lo {
        return Err(bad());
    }
    Ok((lo, hi))
}

pub fn glue(
    a: Option<u64>,
    depth: usize,
    xn: Option<&str>,
    aoi_triple: Option<&str>,
    d: u64,
    output: &OutputOpts,
) -> Result<u8, CliError> {
    if a.is_none() && xn.is_none() && aoi_triple.is_none() {
        return Err(CliError::Usage(
            "pass --a 2|3, --xn LO..HI, and/or --aoi-triple a,b,c".into(),
        ));
    }
    if d == 0 || depth == 0 {
        return Err(CliError::Usage("--d and --depth must be at least 1".into()));
    }
    let aoi = match aoi_triple {
        None => None,
        Some(s) => {
            let t = parse_triple(s)?;
            Some(AoiOut {
                triple: t.to_strings(),
                d,
                depth,
                in_lattice: ortho_core::classify::d_aoi_check(&t, d, depth),
            })
        }
    };
    let orbit = match a {
        None => None,
        Some(a) => Some(lambda_orbit_integral(a, depth).map_err(|e| match e {
            GlueError::OutOfScope(_) | GlueError::BadIndex => CliError::Usage(e.to_string()),
            GlueError::Overflow(_) => CliError::Internal(e.to_string()),
        })?),
    };
    let mut xn_rows = Vec::new();
    let mut distinct = None;
    if let Some(range) = xn {
        let (lo, hi) = parse_range(range)?;
        let mut ratios = Vec::new();
        for n in lo..=hi {
            let s = xn_stats(n).map_err(|e| CliError::Usage(e.to_string()))?;
            ratios.push(s.ratio.clone());
            xn_rows.push(XnOut {
                n,
                okiss: s.okiss.to_string(),
                area_over_2pi: s.area_over_2pi.to_string(),
                ratio: rat_str(&s.ratio),
            });
        }
        let mut sorted = ratios.clone();
        sorted.sort();
        sorted.dedup();
        distinct = Some(sorted.len() == ratios.len());
    }
    let report = GlueReport {
        orbit,
        xn: xn_rows,
        ratios_pairwise_distinct: distinct,
        aoi,
    };
    match output.format {
        FormatArg::Json => emit_json(output, &report)?,
        FormatArg::Csv => {
            let rows = report
                .xn
                .iter()
                .map(|x| {
                    vec![
                        x.n.to_string(),
                        x.okiss.clone(),
                        x.area_over_2pi.clone(),
                        x.ratio.clone(),
                    ]
                })
                .collect::<Vec<_>>();
            emit(output, &csv("n,okiss,area_over_2pi,ratio", &rows))?;
        }
    }
    Ok(0)
}

//! The end-to-end pipeline: validate, build the complex, bigrade, filter,
//! stabilize, derive invariants, run every check, and assemble the report.
//! Also the deformation-scan driver.

use crate::acs::{
    complex_frame, is_integrable, orientation_coefficient, split_differential, AcsError,
};
use crate::cdga::{betti_numbers, intersection_form, CEComplex, CdgaError, CohomologyRing};
use crate::check::{all_pass, Check, CheckStatus};
use crate::harmonic::{
    adjoint_identity_holds, closed_p0_contained_in_harmonic, dbar_adjoint, harmonic_numbers,
    noether_quantities, serre_symmetric, HarmonicError, HermitianMetric,
};
use crate::input::{AnalysisInput, InputError, ScanInput};
use crate::invariants::{
    classify, derived_invariants, identity_suite, poincare_check, HodgeDiamond,
};
use crate::lie::LieError;
use crate::report::{
    ClassificationInfo, EngineInfo, FiltrationDims, HarmonicInfo, InvariantNumbers, PageDims,
    PagesInfo, PurityInfo, ReportDocument, ScanReportDocument, ScanRow, ValidationInfo,
};
use crate::spectral::{
    build_filtration, cohomology_filtration, e1_explicit, e2_explicit, purity_check, stabilize,
    PurityVerdict, SpectralError,
};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error(transparent)]
    Input(#[from] InputError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Cdga(#[from] CdgaError),
    #[error(transparent)]
    Acs(#[from] AcsError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Harmonic(#[from] HarmonicError),
}

/// Run the full pipeline on one input. Theorem-level check failures are
/// recorded in the report (`all_checks_pass = false`), not raised as errors;
/// errors mean the input could not be analyzed at all.
pub fn analyze(input: &AnalysisInput) -> Result<ReportDocument, EngineError> {
    let mut checks: Vec<Check> = Vec::new();
    let mut notes: Vec<String> = Vec::new();
    let mut warnings: Vec<String> = Vec::new();

    let validated = input.presentation()?.validate(input.allow_non_nilpotent)?;
    let nilpotent = validated.is_nilpotent();
    if !nilpotent {
        warnings.push(
            "algebra is not nilpotent: Betti numbers and the manifold-level checks \
             are about the left-invariant model only"
                .to_string(),
        );
    }

    let ce = CEComplex::build(&validated)?;
    let betti = betti_numbers(&ce);
    let ring = CohomologyRing::build(&ce);
    checks.push(Check::boolean(
        "ce_d_squared_zero",
        true,
        "d composed with d",
        "0",
    ));
    checks.push(poincare_check(&betti, nilpotent));

    let acs = input.structure()?;
    let frame = complex_frame(&acs)?;
    let bigraded = split_differential(&frame, &ce)?;
    checks.push(
        Check::boolean("bidegree_purity", true, "stray components", "none")
            .with_note("enforced while splitting the differential"),
    );
    checks.push(Check::boolean(
        "component_reassembly",
        bigraded.reassembles_differential(),
        "mubar + delbar + del + mu (through the coframe)",
        "d",
    ));
    checks.push(Check::boolean(
        "conjugation_symmetry",
        bigraded.conjugation_symmetry_holds(),
        "conj(mubar), conj(delbar)",
        "mu, del (through the signed swap)",
    ));

    for (name, holds) in crate::acs::verify_d2_relations(&bigraded).named() {
        checks.push(Check::boolean(
            &format!("d2: {name}"),
            holds,
            "operator sum",
            "0",
        ));
    }

    let integrable = is_integrable(&bigraded);

    // Intersection form against the J-positive orientation.
    let lambda = orientation_coefficient(&frame);
    let form = intersection_form(&ring, &[lambda])?;
    checks.push(Check::boolean(
        "intersection_form_nondegenerate",
        form.b_zero == 0 && form.b_plus + form.b_minus == betti[2],
        format!(
            "b+ = {}, b- = {}, b0 = {}",
            form.b_plus, form.b_minus, form.b_zero
        ),
        format!("b2 = {}", betti[2]),
    ));

    // Filtration and pages.
    let filtration = build_filtration(&bigraded)?;
    checks.push(Check::boolean(
        "filtration_d_compatible",
        true,
        "d F^p",
        "inside F^p",
    ));
    let stab = stabilize(&filtration, &betti)?;
    let mut monotone = true;
    for idx in 0..stab.pages.len() - 1 {
        for p in 0..3 {
            for q in 0..3 {
                if stab.pages[idx + 1].dims[p][q] > stab.pages[idx].dims[p][q] {
                    monotone = false;
                }
            }
        }
    }
    checks.push(Check::boolean(
        "pages_monotone",
        monotone,
        "dim E_{r+1}",
        "at most dim E_r",
    ));
    checks.push(Check::boolean(
        "pages_delta_consistency",
        stab.delta_consistent,
        "dim E_{r+1}",
        "ker delta_r minus incoming rank",
    ));
    checks.push(Check::boolean(
        "convergence_betti",
        stab.pages[stab.first_stable - 1].total_by_degree() == betti,
        format!("{:?}", stab.pages[stab.first_stable - 1].total_by_degree()),
        format!("{betti:?}"),
    ));

    // Oracle equivalence of the explicit page descriptions.
    let e1 = e1_explicit(&bigraded);
    let e2 = e2_explicit(&bigraded);
    checks.push(Check::boolean(
        "oracle_e1_matches_page1",
        e1 == stab.pages[0].dims,
        format!("{e1:?}"),
        format!("{:?}", stab.pages[0].dims),
    ));
    checks.push(Check::boolean(
        "oracle_e2_matches_page2",
        e2 == stab.pages[1].dims,
        format!("{e2:?}"),
        format!("{:?}", stab.pages[1].dims),
    ));

    // Diamond and derived invariants.
    let diamond = HodgeDiamond::from_grid_unchecked(stab.stable_dims);
    let inv = derived_invariants(&diamond, &betti, form.b_plus, form.b_minus);
    checks.extend(identity_suite(
        &diamond, &betti, &inv, integrable, &e1, &e2, nilpotent,
    ));
    let classification = classify(&diamond, &betti, integrable, &inv);
    notes.extend(classification.reference_notes.iter().cloned());

    // Cohomology filtration and purity.
    let cf = cohomology_filtration(&bigraded, &ring);
    let purity = purity_check(&cf, diamond.h(0, 1), diamond.h(1, 0));
    let verdict_string = |v: &PurityVerdict| match v {
        PurityVerdict::Pass => "pass".to_string(),
        PurityVerdict::Fail => "fail".to_string(),
        PurityVerdict::Skipped(reason) => format!("skipped: {reason}"),
    };
    let purity_to_check = |name: &str, v: &PurityVerdict, statement: &str| match v {
        PurityVerdict::Pass => Check::boolean(name, true, statement, "direct sum"),
        PurityVerdict::Fail => Check::boolean(name, false, statement, "direct sum"),
        PurityVerdict::Skipped(reason) => Check::skip(name, reason.clone()),
    };
    let purity_checks = [
        purity_to_check("purity_weight2", &purity.weight2, "F1H2 + conj(F2H2)"),
        purity_to_check("purity_weight1", &purity.weight1, "F1H1 + conj(F1H1)"),
    ];
    for c in purity_checks {
        if nilpotent {
            checks.push(c);
        } else {
            checks.push(
                c.advisory_on_failure("left-invariant level only: input algebra is not nilpotent"),
            );
        }
    }

    // Optional metric sidecar.
    let harmonic = if input.include_harmonic || input.metric.is_some() {
        let metric = input
            .metric
            .clone()
            .unwrap_or_else(HermitianMetric::default_frame_metric);
        let adj = dbar_adjoint(&bigraded, &metric);
        checks.push(Check::boolean(
            "harmonic_adjoint_identity",
            adjoint_identity_holds(&bigraded, &metric, &adj),
            "<delbar x, y>",
            "<x, delbar* y>",
        ));
        let grid = harmonic_numbers(&bigraded, &metric);
        let serre = serre_symmetric(&grid);
        checks.push(Check::boolean(
            "harmonic_serre",
            serre,
            format!("{grid:?}"),
            "h[p][q] = h[2-p][2-q]",
        ));
        let contained = closed_p0_contained_in_harmonic(&bigraded, &metric);
        checks.push(Check::boolean(
            "harmonic_closed_p0_contained",
            contained,
            "closed (p,0)-forms",
            "inside the harmonic (p,0) kernel",
        ));
        let noether = noether_quantities(&grid, &inv, &bigraded, &metric);
        checks.push(Check::boolean(
            "noether_todd_integral",
            noether.todd_integral,
            format!("(c1^2 + e) = {}", inv.c1_squared + inv.euler_e),
            "divisible by 12",
        ));
        let bound_desc = match (noether.bound_rhs, noether.bound_holds) {
            (Some(rhs), Some(holds)) => {
                let verdict = if holds { "holds" } else { "does not bind" };
                format!(
                    "h01_dbar = {} vs 1 + h20_dbar - Td = {}: {} (left-invariant grid)",
                    noether.bound_lhs, rhs, verdict
                )
            }
            _ => "Todd class unavailable".to_string(),
        };
        let bound_verdict = match noether.bound_holds {
            Some(true) => "holds",
            Some(false) => "does not bind",
            None => "unavailable",
        };
        checks.push(Check {
            name: "noether_lower_bound".to_string(),
            status: CheckStatus::Advisory,
            lhs: format!("h01_dbar = {}", noether.bound_lhs),
            rhs: noether
                .bound_rhs
                .map_or("n/a".to_string(), |r| format!("1 + h20_dbar - Td = {r}")),
            note: format!(
                "{bound_verdict} on the left-invariant grid; advisory because \
                 left-invariant kernels underestimate the manifold-level spaces"
            ),
        });
        Some(HarmonicInfo {
            grid,
            metric_is_default: metric.is_default(),
            serre_symmetric: serre,
            closed_p0_contained: contained,
            invariant_index: noether.invariant_index,
            todd: noether.todd,
            lower_bound: bound_desc,
        })
    } else {
        None
    };

    let l_e1_gap = e1[0][1] as i64 - e1[1][0] as i64;
    let pages_info = PagesInfo {
        dims: stab
            .pages
            .iter()
            .map(|p| PageDims {
                r: p.r,
                grid: p.dims,
            })
            .collect(),
        first_stable: stab.first_stable,
        stable: stab.stable_dims,
    };

    let report = ReportDocument {
        engine: EngineInfo::current(),
        input: input.to_raw(),
        validation: ValidationInfo {
            nilpotent,
            warnings,
        },
        betti,
        integrable,
        diamond: diamond.grid(),
        diamond_text: diamond.render(),
        invariants: InvariantNumbers {
            q_irregularity: inv.q_irregularity,
            p_g: inv.p_g,
            chi: inv.chi,
            sigma_tilde: inv.sigma_tilde,
            euler_e: inv.euler_e,
            sigma: inv.sigma,
            b_plus: inv.b_plus,
            b_minus: inv.b_minus,
            c1_squared: inv.c1_squared,
            todd: inv.todd,
            l_e1_gap,
        },
        classification: ClassificationInfo {
            class: classification.class.label().to_string(),
            type_label: classification.type_label,
        },
        pages: pages_info,
        cohomology_filtration: FiltrationDims {
            f1h1: cf.f1h1.dim(),
            f1h2: cf.f1h2.dim(),
            f2h2: cf.f2h2.dim(),
        },
        purity: PurityInfo {
            weight2: verdict_string(&purity.weight2),
            weight1: verdict_string(&purity.weight1),
        },
        harmonic,
        all_checks_pass: all_pass(&checks),
        checks,
        notes,
    };
    Ok(report)
}

/// Run the pipeline on every sample of a deformation scan, collecting
/// per-sample errors instead of stopping, and attach the semicontinuity
/// advisories.
pub fn scan(input: &ScanInput) -> Result<ScanReportDocument, EngineError> {
    let validated = input.presentation()?.validate(input.allow_non_nilpotent)?;
    let ce = CEComplex::build(&validated)?;
    let betti = betti_numbers(&ce);
    let b1 = betti[1];

    let mut rows: Vec<ScanRow> = Vec::new();
    for (tag, j) in &input.samples {
        let sample_input = AnalysisInput {
            name: format!("{}/{}", input.name, tag),
            dimension: input.dimension,
            brackets: input.brackets.clone(),
            j: j.clone(),
            metric: None,
            allow_non_nilpotent: input.allow_non_nilpotent,
            include_harmonic: false,
        };
        match analyze(&sample_input) {
            Ok(report) => {
                let key = report
                    .diamond
                    .iter()
                    .map(|row| {
                        row.iter()
                            .map(usize::to_string)
                            .collect::<Vec<_>>()
                            .join("")
                    })
                    .collect::<Vec<_>>()
                    .join("-");
                rows.push(ScanRow {
                    tag: tag.clone(),
                    ok: report.all_checks_pass,
                    error: if report.all_checks_pass {
                        None
                    } else {
                        Some("theorem-level checks failed".to_string())
                    },
                    q: Some(report.invariants.q_irregularity),
                    h10: Some(report.diamond[1][0]),
                    integrable: Some(report.integrable),
                    first_stable: Some(report.pages.first_stable),
                    diamond_key: Some(key),
                });
            }
            Err(e) => rows.push(ScanRow {
                tag: tag.clone(),
                ok: false,
                error: Some(e.to_string()),
                q: None,
                h10: None,
                integrable: None,
                first_stable: None,
                diamond_key: None,
            }),
        }
    }

    // Upper-semicontinuity witnesses: a neighbor with strictly larger h10.
    let mut semicontinuity_flags = Vec::new();
    for idx in 0..rows.len() {
        let Some(h10) = rows[idx].h10 else { continue };
        for n_idx in [idx.wrapping_sub(1), idx + 1] {
            if let Some(other) = rows.get(n_idx) {
                if let Some(other_h10) = other.h10 {
                    if other_h10 > h10 {
                        semicontinuity_flags.push(format!(
                            "sample {:?}: neighbor {:?} has larger h10 ({} > {}); \
                             h10 may only jump up in the limit",
                            rows[idx].tag, other.tag, other_h10, h10
                        ));
                    }
                }
            }
        }
    }

    // Constancy advisories where q = b1 (so h10 = 0).
    let mut constancy_notes = Vec::new();
    for idx in 0..rows.len() {
        let Some(q) = rows[idx].q else { continue };
        if q != b1 {
            continue;
        }
        let mut neighbors_equal = true;
        let mut has_neighbor = false;
        for n_idx in [idx.wrapping_sub(1), idx + 1] {
            if let Some(other) = rows.get(n_idx) {
                if other.diamond_key.is_some() {
                    has_neighbor = true;
                    if other.diamond_key != rows[idx].diamond_key {
                        neighbors_equal = false;
                    }
                }
            }
        }
        if has_neighbor {
            constancy_notes.push(format!(
                "sample {:?}: q = b1 = {q}, so the diamond is constant under small \
                 deformations; neighbor diamonds equal at this sample resolution: {}",
                rows[idx].tag,
                if neighbors_equal { "yes" } else { "no" }
            ));
        }
    }

    let all_samples_ok = rows.iter().all(|r| r.ok);
    Ok(ScanReportDocument {
        engine: EngineInfo::current(),
        input: input.to_raw(),
        betti,
        rows,
        semicontinuity_flags,
        constancy_notes,
        all_samples_ok,
    })
}

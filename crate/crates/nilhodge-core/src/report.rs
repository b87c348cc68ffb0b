//! Report documents: machine-readable structures with fixed field order
//! (reports are byte-identical across runs) and the plain-text rendering
//! with the ASCII diamond.

use crate::check::{Check, CheckStatus};
use crate::input::{RawAnalysisInput, RawScanInput};
use serde::{Deserialize, Serialize};

pub const ENGINE_NAME: &str = "nilhodge";
pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EngineInfo {
    pub name: String,
    pub version: String,
}

impl EngineInfo {
    pub fn current() -> Self {
        EngineInfo {
            name: ENGINE_NAME.to_string(),
            version: ENGINE_VERSION.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationInfo {
    pub nilpotent: bool,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantNumbers {
    pub q_irregularity: usize,
    pub p_g: usize,
    pub chi: i64,
    pub sigma_tilde: i64,
    pub euler_e: i64,
    pub sigma: i64,
    pub b_plus: usize,
    pub b_minus: usize,
    pub c1_squared: i64,
    pub todd: Option<i64>,
    /// `dim E_1^{0,1} - dim E_1^{1,0}` of the left-invariant first page.
    pub l_e1_gap: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationInfo {
    pub class: String,
    pub type_label: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PageDims {
    pub r: usize,
    pub grid: [[usize; 3]; 3],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PagesInfo {
    pub dims: Vec<PageDims>,
    pub first_stable: usize,
    pub stable: [[usize; 3]; 3],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiltrationDims {
    pub f1h1: usize,
    pub f1h2: usize,
    pub f2h2: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PurityInfo {
    pub weight2: String,
    pub weight1: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HarmonicInfo {
    /// Left-invariant harmonic dimensions per bidegree, indexed [p][q].
    pub grid: [[usize; 3]; 3],
    pub metric_is_default: bool,
    pub serre_symmetric: bool,
    pub closed_p0_contained: bool,
    pub invariant_index: i64,
    pub todd: Option<i64>,
    pub lower_bound: String,
}

/// Full analysis report. Field order is the serialization order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub engine: EngineInfo,
    pub input: RawAnalysisInput,
    pub validation: ValidationInfo,
    pub betti: [usize; 5],
    pub integrable: bool,
    /// Hodge-de Rham numbers, indexed [p][q] (left-invariant).
    pub diamond: [[usize; 3]; 3],
    pub diamond_text: String,
    pub invariants: InvariantNumbers,
    pub classification: ClassificationInfo,
    pub pages: PagesInfo,
    pub cohomology_filtration: FiltrationDims,
    pub purity: PurityInfo,
    pub harmonic: Option<HarmonicInfo>,
    pub checks: Vec<Check>,
    pub all_checks_pass: bool,
    pub notes: Vec<String>,
}

impl ReportDocument {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable report")
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let push = |out: &mut String, line: &str| {
            out.push_str(line);
            out.push('\n');
        };
        push(
            &mut out,
            &format!("{} {}", ENGINE_NAME, self.engine.version),
        );
        push(&mut out, &format!("input: {}", self.input.name));
        if !self.validation.nilpotent {
            push(&mut out, "warning: algebra is not nilpotent");
        }
        for w in &self.validation.warnings {
            push(&mut out, &format!("warning: {w}"));
        }
        push(&mut out, &format!("betti: {:?}", self.betti));
        push(
            &mut out,
            &format!(
                "classification: {}{}",
                self.classification.class,
                self.classification
                    .type_label
                    .as_ref()
                    .map(|t| format!(" ({t})"))
                    .unwrap_or_default()
            ),
        );
        push(&mut out, "");
        push(
            &mut out,
            "hodge diamond (left-invariant; bottom vertex h00, top h22):",
        );
        for line in self.diamond_text.lines() {
            push(&mut out, &format!("    {line}"));
        }
        push(&mut out, "");
        let inv = &self.invariants;
        push(&mut out, "invariants:");
        push(
            &mut out,
            &format!(
                "    q = {}   p_g = {}   chi = {}",
                inv.q_irregularity, inv.p_g, inv.chi
            ),
        );
        push(
            &mut out,
            &format!(
                "    sigma = {}   sigma_tilde = {}   e = {}",
                inv.sigma, inv.sigma_tilde, inv.euler_e
            ),
        );
        push(
            &mut out,
            &format!(
                "    b+ = {}   b- = {}   c1^2 = {}   Td = {}",
                inv.b_plus,
                inv.b_minus,
                inv.c1_squared,
                inv.todd.map_or("n/a".to_string(), |t| t.to_string())
            ),
        );
        push(
            &mut out,
            &format!(
                "    E1 gap (dim E1^01 - dim E1^10, left-invariant) = {}",
                inv.l_e1_gap
            ),
        );
        push(&mut out, "");
        push(
            &mut out,
            &format!(
                "pages (left-invariant): first stable page = {}",
                self.pages.first_stable
            ),
        );
        for page in &self.pages.dims {
            push(&mut out, &format!("    E_{} dims: {:?}", page.r, page.grid));
        }
        push(
            &mut out,
            &format!(
                "cohomology filtration: dim F1H1 = {}, dim F1H2 = {}, dim F2H2 = {}",
                self.cohomology_filtration.f1h1,
                self.cohomology_filtration.f1h2,
                self.cohomology_filtration.f2h2
            ),
        );
        push(
            &mut out,
            &format!(
                "purity: weight 2 {}; weight 1 {}",
                self.purity.weight2, self.purity.weight1
            ),
        );
        if let Some(h) = &self.harmonic {
            push(&mut out, "");
            push(
                &mut out,
                &format!(
                    "harmonic numbers (left-invariant, {} metric): {:?}",
                    if h.metric_is_default {
                        "frame-orthonormal"
                    } else {
                        "custom"
                    },
                    h.grid
                ),
            );
            push(
                &mut out,
                &format!(
                    "    serre symmetric: {}   closed (p,0) forms harmonic: {}",
                    h.serre_symmetric, h.closed_p0_contained
                ),
            );
            push(
                &mut out,
                &format!(
                    "    invariant index = {}   Td = {}   lower bound: {}",
                    h.invariant_index,
                    h.todd.map_or("n/a".to_string(), |t| t.to_string()),
                    h.lower_bound
                ),
            );
        }
        push(&mut out, "");
        let count = |s: CheckStatus| self.checks.iter().filter(|c| c.status == s).count();
        push(
            &mut out,
            &format!(
                "checks: {} pass, {} fail, {} skipped, {} advisory",
                count(CheckStatus::Pass),
                count(CheckStatus::Fail),
                count(CheckStatus::Skip),
                count(CheckStatus::Advisory)
            ),
        );
        for c in &self.checks {
            let tag = match c.status {
                CheckStatus::Pass => "pass",
                CheckStatus::Fail => "FAIL",
                CheckStatus::Skip => "skip",
                CheckStatus::Advisory => "advisory",
            };
            let mut line = format!("    [{tag}] {}", c.name);
            if !c.lhs.is_empty() || !c.rhs.is_empty() {
                line.push_str(&format!(": {} vs {}", c.lhs, c.rhs));
            }
            if !c.note.is_empty() {
                line.push_str(&format!(" ({})", c.note));
            }
            push(&mut out, &line);
        }
        if !self.notes.is_empty() {
            push(&mut out, "");
            push(&mut out, "notes:");
            for n in &self.notes {
                push(&mut out, &format!("    - {n}"));
            }
        }
        push(
            &mut out,
            &format!(
                "\nresult: {}",
                if self.all_checks_pass {
                    "OK"
                } else {
                    "CHECKS FAILED"
                }
            ),
        );
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRow {
    pub tag: String,
    pub ok: bool,
    pub error: Option<String>,
    pub q: Option<usize>,
    pub h10: Option<usize>,
    pub integrable: Option<bool>,
    pub first_stable: Option<usize>,
    /// Row-major digit key of the diamond, for cheap equality comparison.
    pub diamond_key: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReportDocument {
    pub engine: EngineInfo,
    pub input: RawScanInput,
    pub betti: [usize; 5],
    pub rows: Vec<ScanRow>,
    /// Samples whose neighbor carries a strictly larger h10 (the direction
    /// in which jumps are allowed under small deformations).
    pub semicontinuity_flags: Vec<String>,
    /// Advisory constancy notes where q = b1 at a sample.
    pub constancy_notes: Vec<String>,
    pub all_samples_ok: bool,
}

impl ScanReportDocument {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable report")
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "{} {} scan: {}\n",
            ENGINE_NAME, self.engine.version, self.input.name
        ));
        out.push_str(&format!("betti: {:?}\n\n", self.betti));
        out.push_str("tag            q   h10  integrable  stable  diamond\n");
        for row in &self.rows {
            if row.ok {
                out.push_str(&format!(
                    "{:<14} {:<3} {:<4} {:<11} {:<7} {}\n",
                    row.tag,
                    row.q.unwrap(),
                    row.h10.unwrap(),
                    row.integrable.unwrap(),
                    row.first_stable.unwrap(),
                    row.diamond_key.as_deref().unwrap_or("-")
                ));
            } else {
                out.push_str(&format!(
                    "{:<14} error: {}\n",
                    row.tag,
                    row.error.as_deref().unwrap_or("unknown")
                ));
            }
        }
        if !self.semicontinuity_flags.is_empty() {
            out.push_str("\nsemicontinuity flags (advisory, sample resolution):\n");
            for f in &self.semicontinuity_flags {
                out.push_str(&format!("    - {f}\n"));
            }
        }
        if !self.constancy_notes.is_empty() {
            out.push_str("\nconstancy notes (advisory, sample resolution):\n");
            for f in &self.constancy_notes {
                out.push_str(&format!("    - {f}\n"));
            }
        }
        out.push_str(&format!(
            "\nresult: {}\n",
            if self.all_samples_ok {
                "OK"
            } else {
                "SAMPLE ERRORS"
            }
        ));
        out
    }
}

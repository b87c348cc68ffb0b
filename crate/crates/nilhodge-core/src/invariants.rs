//! Hodge diamond assembly from the stabilized page, the derived numeric
//! invariants, structure classification, the identity checklist, and the
//! ASCII diamond rendering.

use crate::check::Check;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("Serre duality fails on the stabilized grid at ({0},{1})")]
    SerreViolation(usize, usize),
    #[error("degeneration sums do not match the Betti numbers in degree {0}")]
    DegenerationViolation(usize),
    #[error("corner entries of the stabilized grid differ from 1")]
    CornerViolation,
}

/// Hodge-de Rham numbers `h[p][q]`, the stabilized page dimensions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HodgeDiamond {
    h: [[usize; 3]; 3],
}

impl HodgeDiamond {
    /// Wrap a stabilized grid, verifying the corner, Serre-symmetry and
    /// degeneration invariants exactly.
    pub fn new(grid: [[usize; 3]; 3], betti: &[usize; 5]) -> Result<Self, InvariantError> {
        if grid[0][0] != 1 || grid[2][2] != 1 {
            return Err(InvariantError::CornerViolation);
        }
        for p in 0..3 {
            for q in 0..3 {
                if grid[p][q] != grid[2 - p][2 - q] {
                    return Err(InvariantError::SerreViolation(p, q));
                }
            }
        }
        let d = HodgeDiamond { h: grid };
        for (n, &b) in betti.iter().enumerate() {
            if d.degree_sum(n) != b {
                return Err(InvariantError::DegenerationViolation(n));
            }
        }
        Ok(d)
    }

    /// Wrap a grid without the theorem-level checks (used to keep reporting
    /// alive when a check fails; the failure is recorded separately).
    pub fn from_grid_unchecked(grid: [[usize; 3]; 3]) -> Self {
        HodgeDiamond { h: grid }
    }

    pub fn grid(&self) -> [[usize; 3]; 3] {
        self.h
    }

    pub fn h(&self, p: usize, q: usize) -> usize {
        self.h[p][q]
    }

    /// `h^{0,1}`.
    pub fn irregularity(&self) -> usize {
        self.h[0][1]
    }

    /// `h^{0,2}`.
    pub fn geometric_genus(&self) -> usize {
        self.h[0][2]
    }

    pub fn degree_sum(&self, n: usize) -> usize {
        let mut t = 0;
        for p in 0..3 {
            for q in 0..3 {
                if p + q == n {
                    t += self.h[p][q];
                }
            }
        }
        t
    }

    /// Five-row centered diamond, top vertex `h^{2,2}` down to `h^{0,0}`.
    pub fn render(&self) -> String {
        let rows: [Vec<usize>; 5] = [
            vec![self.h[2][2]],
            vec![self.h[2][1], self.h[1][2]],
            vec![self.h[2][0], self.h[1][1], self.h[0][2]],
            vec![self.h[1][0], self.h[0][1]],
            vec![self.h[0][0]],
        ];
        let line: Vec<String> = rows
            .iter()
            .map(|r| r.iter().map(usize::to_string).collect::<Vec<_>>().join(" "))
            .collect();
        let width = line.iter().map(String::len).max().unwrap_or(0);
        line.iter()
            .map(|l| {
                let pad = (width - l.len()) / 2;
                format!("{}{}", " ".repeat(pad), l)
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// All numeric invariants derived from the diamond, Betti numbers and the
/// intersection-form signature.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedInvariants {
    pub q_irregularity: usize,
    pub p_g: usize,
    /// `1 - q + p_g`.
    pub chi: i64,
    /// `sum (-1)^q h^{p,q}`.
    pub sigma_tilde: i64,
    /// `sum (-1)^n b^n`.
    pub euler_e: i64,
    pub sigma: i64,
    pub b_plus: usize,
    pub b_minus: usize,
    /// Defined through the signature relation as `3 sigma + 2 e`.
    pub c1_squared: i64,
    /// `(c1^2 + e) / 12` when that quotient is an integer.
    pub todd: Option<i64>,
}

pub fn derived_invariants(
    diamond: &HodgeDiamond,
    betti: &[usize; 5],
    b_plus: usize,
    b_minus: usize,
) -> DerivedInvariants {
    let q = diamond.irregularity();
    let p_g = diamond.geometric_genus();
    let chi = 1 - q as i64 + p_g as i64;
    let mut sigma_tilde = 0i64;
    for p in 0..3 {
        for q in 0..3 {
            let sign = if q % 2 == 0 { 1 } else { -1 };
            sigma_tilde += sign * diamond.h(p, q) as i64;
        }
    }
    let mut euler_e = 0i64;
    for (n, &b) in betti.iter().enumerate() {
        euler_e += (if n % 2 == 0 { 1 } else { -1 }) * b as i64;
    }
    let sigma = b_plus as i64 - b_minus as i64;
    let c1_squared = 3 * sigma + 2 * euler_e;
    let todd_num = c1_squared + euler_e;
    let todd = (todd_num % 12 == 0).then_some(todd_num / 12);
    DerivedInvariants {
        q_irregularity: q,
        p_g,
        chi,
        sigma_tilde,
        euler_e,
        sigma,
        b_plus,
        b_minus,
        c1_squared,
        todd,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StructureClass {
    IntegrableB1Even,
    IntegrableB1Odd,
    NonIntegrable,
}

impl StructureClass {
    pub fn label(&self) -> &'static str {
        match self {
            StructureClass::IntegrableB1Even => "integrable-b1-even",
            StructureClass::IntegrableB1Odd => "integrable-b1-odd",
            StructureClass::NonIntegrable => "non-integrable",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub class: StructureClass,
    /// Example-level type index when the profile matches a reference row.
    pub type_label: Option<String>,
    /// Annotations where a published reference value disagrees with the
    /// value forced by the identities.
    pub reference_notes: Vec<String>,
}

struct ReferenceRow {
    betti: [usize; 5],
    integrable: bool,
    grid: [[usize; 3]; 3],
    label: &'static str,
    /// Published sigma-tilde for the row, where it differs from the value
    /// the identity `sigma_tilde = 4 chi - e` forces.
    published_sigma_tilde_discrepancy: Option<i64>,
}

/// The reference rows: two structure types on the filiform algebra and three
/// on the Kodaira-Thurston algebra.
fn reference_rows() -> Vec<ReferenceRow> {
    vec![
        ReferenceRow {
            betti: [1, 2, 2, 2, 1],
            integrable: false,
            grid: [[1, 1, 0], [1, 2, 1], [0, 1, 1]],
            label: "Type 1",
            published_sigma_tilde_discrepancy: None,
        },
        ReferenceRow {
            betti: [1, 2, 2, 2, 1],
            integrable: false,
            grid: [[1, 2, 0], [0, 2, 0], [0, 2, 1]],
            label: "Type 2",
            published_sigma_tilde_discrepancy: Some(4),
        },
        ReferenceRow {
            betti: [1, 3, 4, 3, 1],
            integrable: true,
            grid: [[1, 2, 1], [1, 2, 1], [1, 2, 1]],
            label: "Type 1",
            published_sigma_tilde_discrepancy: None,
        },
        ReferenceRow {
            betti: [1, 3, 4, 3, 1],
            integrable: false,
            grid: [[1, 2, 0], [1, 4, 1], [0, 2, 1]],
            label: "Type 2",
            published_sigma_tilde_discrepancy: None,
        },
        ReferenceRow {
            betti: [1, 3, 4, 3, 1],
            integrable: false,
            grid: [[1, 3, 0], [0, 4, 0], [0, 3, 1]],
            label: "Type 3",
            published_sigma_tilde_discrepancy: None,
        },
    ]
}

/// Classify by integrability and the parity of b^1, attaching the reference
/// type index when Betti numbers, integrability and the full diamond match a
/// reference row.
pub fn classify(
    diamond: &HodgeDiamond,
    betti: &[usize; 5],
    integrable: bool,
    invariants: &DerivedInvariants,
) -> Classification {
    let class = if !integrable {
        StructureClass::NonIntegrable
    } else if betti[1].is_multiple_of(2) {
        StructureClass::IntegrableB1Even
    } else {
        StructureClass::IntegrableB1Odd
    };
    let mut type_label = None;
    let mut reference_notes = Vec::new();
    for row in reference_rows() {
        if row.betti == *betti && row.integrable == integrable && row.grid == diamond.grid() {
            type_label = Some(row.label.to_string());
            if let Some(published) = row.published_sigma_tilde_discrepancy {
                if published != invariants.sigma_tilde {
                    reference_notes.push(format!(
                        "sigma_tilde: computed {} from the identity 4*chi - e = {}; \
                         a published table lists {} for this row, which is inconsistent \
                         with that identity, so the computed value is reported",
                        invariants.sigma_tilde,
                        4 * invariants.chi - invariants.euler_e,
                        published
                    ));
                }
            }
            break;
        }
    }
    Classification {
        class,
        type_label,
        reference_notes,
    }
}

/// The numeric identity checklist on a computed diamond. Checks that are
/// backed by manifold-level theorems are downgraded to advisory on inputs
/// without that backing (`manifold_backed = false`).
#[allow(clippy::too_many_arguments)]
pub fn identity_suite(
    diamond: &HodgeDiamond,
    betti: &[usize; 5],
    inv: &DerivedInvariants,
    integrable: bool,
    e1_dims: &[[usize; 3]; 3],
    e2_dims: &[[usize; 3]; 3],
    manifold_backed: bool,
) -> Vec<Check> {
    let mut checks = Vec::new();
    let advisory_reason = "left-invariant level only: input algebra is not nilpotent";
    let mut push = |c: Check, theorem_level: bool| {
        if theorem_level && !manifold_backed {
            checks.push(c.advisory_on_failure(advisory_reason));
        } else {
            checks.push(c);
        }
    };

    // Serre duality of the grid.
    let serre_ok = (0..3).all(|p| (0..3).all(|q| diamond.h(p, q) == diamond.h(2 - p, 2 - q)))
        && diamond.h(0, 0) == 1
        && diamond.h(2, 2) == 1;
    push(
        Check::boolean(
            "serre_duality",
            serre_ok,
            format!("{:?}", diamond.grid()),
            "h[p][q] = h[2-p][2-q], corners 1",
        ),
        true,
    );

    // Degeneration: per-degree sums equal Betti numbers.
    let sums: Vec<usize> = (0..=4).map(|n| diamond.degree_sum(n)).collect();
    push(
        Check::boolean(
            "degeneration_sums",
            sums.as_slice() == betti.as_slice(),
            format!("{sums:?}"),
            format!("{betti:?}"),
        ),
        false, // convergence of the algebraic spectral sequence, always due
    );

    // Euler characteristic both ways.
    let e_from_h: i64 = (0..3)
        .flat_map(|p| (0..3).map(move |q| (p, q)))
        .map(|(p, q)| (if (p + q) % 2 == 0 { 1 } else { -1 }) * diamond.h(p, q) as i64)
        .sum();
    push(
        Check::equality("euler_identity", inv.euler_e, e_from_h),
        false,
    );

    push(
        Check::equality(
            "sigma_tilde_identity",
            inv.sigma_tilde,
            4 * inv.chi - inv.euler_e,
        ),
        true,
    );

    match inv.todd {
        Some(td) => push(
            Check::equality(
                "signature_defect",
                inv.sigma - inv.sigma_tilde,
                4 * (td - inv.chi),
            ),
            true,
        ),
        None => push(
            Check::boolean(
                "signature_defect",
                false,
                format!("{}", inv.sigma - inv.sigma_tilde),
                "4*(Td - chi)",
            )
            .with_note("Todd class is not an integer"),
            true,
        ),
    }

    push(
        Check::boolean(
            "signature_mod4",
            (inv.sigma + inv.euler_e).rem_euclid(4) == 0,
            format!("sigma = {}", inv.sigma),
            format!("-e mod 4 with e = {}", inv.euler_e),
        ),
        true,
    );

    push(
        Check::boolean(
            "c1sq_plus_e_mod12",
            (inv.c1_squared + inv.euler_e).rem_euclid(12) == 0,
            format!("c1^2 + e = {}", inv.c1_squared + inv.euler_e),
            "0 mod 12",
        ),
        true,
    );

    let b1 = betti[1] as i64;
    let q2 = 2 * inv.q_irregularity as i64;
    push(
        Check::boolean(
            "irregularity_bounds",
            b1 <= q2 && q2 <= 2 * b1,
            format!("2q = {q2}"),
            format!("between b1 = {b1} and 2 b1 = {}", 2 * b1),
        ),
        true,
    );

    push(
        Check::boolean(
            "h10_le_h01",
            diamond.h(1, 0) <= diamond.h(0, 1),
            format!("h10 = {}", diamond.h(1, 0)),
            format!("h01 = {}", diamond.h(0, 1)),
        ),
        true,
    );

    if betti[1] <= 1 {
        push(
            Check::equality("q_topological_when_b1_small", inv.q_irregularity as i64, b1),
            true,
        );
    } else {
        push(
            Check::skip(
                "q_topological_when_b1_small",
                format!("applies only when b1 <= 1, here b1 = {}", betti[1]),
            ),
            false,
        );
    }

    if integrable {
        push(
            Check::skip(
                "nonintegrable_h11_is_b2",
                "applies to non-integrable structures only",
            ),
            false,
        );
        push(
            Check::skip(
                "nonintegrable_h20_vanishes",
                "applies to non-integrable structures only",
            ),
            false,
        );
        let b_minus = inv.b_minus as i64;
        let h11 = diamond.h(1, 1) as i64;
        let (lhs, rhs, ok) = if betti[1].is_multiple_of(2) {
            (
                format!("h01 = {}, h11 = {}", diamond.h(0, 1), h11),
                format!("h10 = {}, b- + 1 = {}", diamond.h(1, 0), b_minus + 1),
                diamond.h(0, 1) == diamond.h(1, 0) && h11 == b_minus + 1,
            )
        } else {
            (
                format!("h01 = {}, h11 = {}", diamond.h(0, 1), h11),
                format!("h10 + 1 = {}, b- = {}", diamond.h(1, 0) + 1, b_minus),
                diamond.h(0, 1) == diamond.h(1, 0) + 1 && h11 == b_minus,
            )
        };
        push(
            Check::boolean("integrable_parity_dichotomy", ok, lhs, rhs),
            true,
        );
        push(
            Check::boolean(
                "integrable_e1_degeneration",
                e1_dims == e2_dims,
                format!("{e1_dims:?}"),
                format!("{e2_dims:?}"),
            ),
            true,
        );
        push(
            Check::boolean(
                "integrable_bplus_ge_2pg",
                inv.b_plus >= 2 * inv.p_g,
                format!("b+ = {}", inv.b_plus),
                format!("2 p_g = {}", 2 * inv.p_g),
            ),
            true,
        );
    } else {
        push(
            Check::equality(
                "nonintegrable_h11_is_b2",
                diamond.h(1, 1) as i64,
                betti[2] as i64,
            ),
            true,
        );
        push(
            Check::boolean(
                "nonintegrable_h20_vanishes",
                diamond.h(2, 0) == 0 && diamond.h(0, 2) == 0,
                format!("h20 = {}, h02 = {}", diamond.h(2, 0), diamond.h(0, 2)),
                "0, 0",
            ),
            true,
        );
        push(
            Check::skip(
                "integrable_parity_dichotomy",
                "applies to integrable structures only",
            ),
            false,
        );
        push(
            Check::skip(
                "integrable_e1_degeneration",
                "applies to integrable structures only",
            ),
            false,
        );
        push(
            Check::skip(
                "integrable_bplus_ge_2pg",
                "applies to integrable structures only",
            ),
            false,
        );
    }
    checks
}

/// Poincare-duality pattern of the Betti numbers as a check.
pub fn poincare_check(betti: &[usize; 5], manifold_backed: bool) -> Check {
    let ok = betti[0] == 1 && betti[4] == 1 && betti[1] == betti[3];
    let c = Check::boolean(
        "poincare_duality",
        ok,
        format!("{betti:?}"),
        "b0 = b4 = 1 and b1 = b3",
    );
    if manifold_backed {
        c
    } else {
        c.advisory_on_failure("left-invariant level only: input algebra is not nilpotent")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::check::{all_pass, CheckStatus};

    fn kt_type2_grid() -> [[usize; 3]; 3] {
        [[1, 2, 0], [1, 4, 1], [0, 2, 1]]
    }

    #[test]
    fn diamond_validation_catches_violations() {
        let betti = [1, 3, 4, 3, 1];
        assert!(HodgeDiamond::new(kt_type2_grid(), &betti).is_ok());
        let mut bad = kt_type2_grid();
        bad[0][1] = 3;
        assert!(matches!(
            HodgeDiamond::new(bad, &betti),
            Err(InvariantError::SerreViolation(..))
        ));
        let mut bad = kt_type2_grid();
        bad[0][1] = 3;
        bad[2][1] = 3;
        assert_eq!(
            HodgeDiamond::new(bad, &betti),
            Err(InvariantError::DegenerationViolation(1))
        );
    }

    #[test]
    fn derived_invariants_kodaira_thurston_type2() {
        let betti = [1, 3, 4, 3, 1];
        let d = HodgeDiamond::new(kt_type2_grid(), &betti).unwrap();
        let inv = derived_invariants(&d, &betti, 2, 2);
        assert_eq!(inv.q_irregularity, 2);
        assert_eq!(inv.p_g, 0);
        assert_eq!(inv.chi, -1);
        assert_eq!(inv.sigma_tilde, -4);
        assert_eq!(inv.euler_e, 0);
        assert_eq!(inv.sigma, 0);
        assert_eq!(inv.c1_squared, 0);
        assert_eq!(inv.todd, Some(0));
    }

    #[test]
    fn derived_invariants_kodaira_thurston_type1() {
        let betti = [1, 3, 4, 3, 1];
        let d = HodgeDiamond::new([[1, 2, 1], [1, 2, 1], [1, 2, 1]], &betti).unwrap();
        let inv = derived_invariants(&d, &betti, 2, 2);
        assert_eq!(inv.q_irregularity, 2);
        assert_eq!(inv.p_g, 1);
        assert_eq!(inv.chi, 0);
        assert_eq!(inv.sigma_tilde, 0);
    }

    #[test]
    fn filiform_type2_sigma_tilde_is_forced_negative() {
        let betti = [1, 2, 2, 2, 1];
        let d = HodgeDiamond::new([[1, 2, 0], [0, 2, 0], [0, 2, 1]], &betti).unwrap();
        let inv = derived_invariants(&d, &betti, 1, 1);
        assert_eq!(inv.sigma_tilde, -4);
        assert_eq!(inv.chi, -1);
        let cls = classify(&d, &betti, false, &inv);
        assert_eq!(cls.class, StructureClass::NonIntegrable);
        assert_eq!(cls.type_label.as_deref(), Some("Type 2"));
        assert_eq!(cls.reference_notes.len(), 1);
        assert!(cls.reference_notes[0].contains("-4"));
    }

    #[test]
    fn classification_labels() {
        let betti = [1, 4, 6, 4, 1];
        let grid = [[1, 2, 1], [2, 4, 2], [1, 2, 1]];
        let d = HodgeDiamond::new(grid, &betti).unwrap();
        let inv = derived_invariants(&d, &betti, 3, 3);
        let cls = classify(&d, &betti, true, &inv);
        assert_eq!(cls.class, StructureClass::IntegrableB1Even);
        assert_eq!(cls.type_label, None);

        let betti = [1, 3, 4, 3, 1];
        let d = HodgeDiamond::new([[1, 2, 1], [1, 2, 1], [1, 2, 1]], &betti).unwrap();
        let inv = derived_invariants(&d, &betti, 2, 2);
        let cls = classify(&d, &betti, true, &inv);
        assert_eq!(cls.class, StructureClass::IntegrableB1Odd);
        assert_eq!(cls.type_label.as_deref(), Some("Type 1"));
    }

    #[test]
    fn identity_suite_green_on_kodaira_thurston_type1() {
        let betti = [1, 3, 4, 3, 1];
        let grid = [[1, 2, 1], [1, 2, 1], [1, 2, 1]];
        let d = HodgeDiamond::new(grid, &betti).unwrap();
        let inv = derived_invariants(&d, &betti, 2, 2);
        let checks = identity_suite(&d, &betti, &inv, true, &grid, &grid, true);
        assert!(all_pass(&checks), "{checks:#?}");
        // odd-b1 dichotomy entry is a real pass, not a skip
        let dich = checks
            .iter()
            .find(|c| c.name == "integrable_parity_dichotomy")
            .unwrap();
        assert_eq!(dich.status, CheckStatus::Pass);
    }

    #[test]
    fn identity_suite_flags_nonintegrable_lemma() {
        let betti = [1, 2, 2, 2, 1];
        let grid = [[1, 2, 0], [0, 2, 0], [0, 2, 1]];
        let d = HodgeDiamond::new(grid, &betti).unwrap();
        let inv = derived_invariants(&d, &betti, 1, 1);
        let e1 = grid;
        let checks = identity_suite(&d, &betti, &inv, false, &e1, &grid, true);
        assert!(all_pass(&checks), "{checks:#?}");
        let h11 = checks
            .iter()
            .find(|c| c.name == "nonintegrable_h11_is_b2")
            .unwrap();
        assert_eq!(h11.status, CheckStatus::Pass);
        assert_eq!(h11.lhs, "2");
    }

    #[test]
    fn render_torus_diamond() {
        let d = HodgeDiamond::from_grid_unchecked([[1, 2, 1], [2, 4, 2], [1, 2, 1]]);
        assert_eq!(d.render(), "  1\n 2 2\n1 4 1\n 2 2\n  1");
    }

    #[test]
    fn render_kodaira_thurston_type3_diamond() {
        let d = HodgeDiamond::from_grid_unchecked([[1, 3, 0], [0, 4, 0], [0, 3, 1]]);
        assert_eq!(d.render(), "  1\n 3 0\n0 4 0\n 0 3\n  1");
    }

    #[test]
    fn render_filiform_type1_diamond() {
        let d = HodgeDiamond::from_grid_unchecked([[1, 1, 0], [1, 2, 1], [0, 1, 1]]);
        assert_eq!(d.render(), "  1\n 1 1\n0 2 0\n 1 1\n  1");
    }
}

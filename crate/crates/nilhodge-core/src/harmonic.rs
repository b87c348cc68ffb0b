//! Metric sidecar: left-invariant Hermitian metrics, the adjoint of delbar,
//! harmonic dimensions per bidegree, and the index-style quantities tied to
//! the Todd class. Everything here is a statement about invariant forms
//! only; the report labels it that way.

use crate::acs::{block_basis, block_dim, BigradedComplex, BigradedMap};
use crate::exterior::mask_indices;
use crate::invariants::DerivedInvariants;
use crate::linalg::{ExactMatrix, Subspace};
use crate::scalar::GaussianRational;
use num_traits::Signed;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HarmonicError {
    #[error("metric gram matrix must be 4x4")]
    BadShape,
    #[error("metric gram matrix is not conjugate-symmetric")]
    NotHermitian,
    #[error("metric does not keep the (1,0) and (0,1) subspaces orthogonal")]
    NotBlockOrthogonal,
    #[error("metric is not induced by a real metric: the (0,1) block must be the conjugate of the (1,0) block")]
    NotRealStructure,
    #[error("metric gram matrix is not positive definite")]
    MetricNotPositive,
}

/// Hermitian metric on the complexified coframe, given by its gram matrix in
/// the fixed frame order (phi1, phi2, phibar1, phibar2). Valid metrics are
/// conjugate-symmetric, positive definite, keep the (1,0) and (0,1)
/// subspaces orthogonal, and have conjugate (0,1) and (1,0) blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermitianMetric {
    gram: ExactMatrix,
}

impl HermitianMetric {
    pub fn new(gram: ExactMatrix) -> Result<Self, HarmonicError> {
        if gram.rows() != 4 || gram.cols() != 4 {
            return Err(HarmonicError::BadShape);
        }
        if gram.conj_transpose() != gram {
            return Err(HarmonicError::NotHermitian);
        }
        for a in 0..2 {
            for b in 2..4 {
                if !gram.get(a, b).is_zero() || !gram.get(b, a).is_zero() {
                    return Err(HarmonicError::NotBlockOrthogonal);
                }
            }
        }
        for a in 0..2 {
            for b in 0..2 {
                if *gram.get(2 + a, 2 + b) != gram.get(a, b).conj() {
                    return Err(HarmonicError::NotRealStructure);
                }
            }
        }
        // Positive definiteness via leading principal minors, exact.
        for k in 1..=4 {
            let mut sub = ExactMatrix::zeros(k, k);
            for r in 0..k {
                for c in 0..k {
                    sub.set(r, c, gram.get(r, c).clone());
                }
            }
            let det = sub.det();
            if !det.is_real() || !det.re.is_positive() {
                return Err(HarmonicError::MetricNotPositive);
            }
        }
        Ok(HermitianMetric { gram })
    }

    /// The frame-orthonormal metric.
    pub fn default_frame_metric() -> Self {
        HermitianMetric {
            gram: ExactMatrix::identity(4),
        }
    }

    pub fn gram(&self) -> &ExactMatrix {
        &self.gram
    }

    pub fn is_default(&self) -> bool {
        self.gram == ExactMatrix::identity(4)
    }

    /// Induced gram matrix on the (p,q) monomial basis: the inner product of
    /// wedge monomials is the product of the gram determinants of their
    /// unbarred and barred factor sets.
    pub fn induced_gram(&self, p: i32, q: i32) -> ExactMatrix {
        let basis = block_basis(p, q);
        let n = basis.len();
        let mut g = ExactMatrix::zeros(n, n);
        for (a, &ma) in basis.iter().enumerate() {
            for (b, &mb) in basis.iter().enumerate() {
                let det10 = self.factor_det(ma & 0b0011, mb & 0b0011, 0);
                let det01 = self.factor_det((ma & 0b1100) >> 2, (mb & 0b1100) >> 2, 2);
                g.set(a, b, &det10 * &det01);
            }
        }
        g
    }

    fn factor_det(&self, sa: u8, sb: u8, offset: usize) -> GaussianRational {
        let rows = mask_indices(sa);
        let cols = mask_indices(sb);
        assert_eq!(rows.len(), cols.len());
        let k = rows.len();
        let mut sub = ExactMatrix::zeros(k, k);
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                sub.set(i, j, self.gram.get(offset + r - 1, offset + c - 1).clone());
            }
        }
        sub.det()
    }
}

/// The formal adjoint of delbar per bidegree: the block at (p,q) maps
/// A^{p,q} -> A^{p,q-1} and satisfies `<delbar x, y> = <x, adjoint y>`
/// exactly. With the default metric this is the conjugate transpose.
pub fn dbar_adjoint(b: &BigradedComplex, metric: &HermitianMetric) -> BigradedMap {
    let mut adj = BigradedMap::new(0, -1);
    for p in 0..=2i32 {
        for q in 0..=2i32 {
            if block_dim(p, q) == 0 || block_dim(p, q - 1) == 0 {
                continue;
            }
            let a = b.delbar.block(p, q - 1); // A^{p,q-1} -> A^{p,q}
            let g_s = metric.induced_gram(p, q - 1);
            let g_t = metric.induced_gram(p, q);
            let adjoint = g_s
                .conj()
                .inverse()
                .expect("positive-definite gram is invertible")
                .mul(&a.conj_transpose())
                .mul(&g_t.conj());
            // <A x, y> = <x, B y> as the matrix identity A^T G_t = G_s conj(B).
            debug_assert_eq!(a.transpose().mul(&g_t), g_s.mul(&adjoint.conj()));
            adj.insert(p, q, adjoint);
        }
    }
    adj
}

/// Exact check of the adjoint identity on every bidegree (used as a
/// theorem-level check by the pipeline).
pub fn adjoint_identity_holds(
    b: &BigradedComplex,
    metric: &HermitianMetric,
    adj: &BigradedMap,
) -> bool {
    (0..=2i32).all(|p| {
        (0..=2i32).all(|q| {
            if block_dim(p, q) == 0 || block_dim(p, q - 1) == 0 {
                return true;
            }
            let a = b.delbar.block(p, q - 1);
            let g_s = metric.induced_gram(p, q - 1);
            let g_t = metric.induced_gram(p, q);
            a.transpose().mul(&g_t) == g_s.mul(&adj.block(p, q).conj())
        })
    })
}

/// Left-invariant harmonic dimensions `dim(ker delbar cap ker delbar*)` per
/// bidegree, for the given metric.
pub fn harmonic_numbers(b: &BigradedComplex, metric: &HermitianMetric) -> [[usize; 3]; 3] {
    let adj = dbar_adjoint(b, metric);
    let mut grid = [[0usize; 3]; 3];
    for p in 0..=2i32 {
        for q in 0..=2i32 {
            if block_dim(p, q) == 0 {
                continue;
            }
            let ker_delbar = b.delbar.block(p, q).kernel();
            let ker_adj = adj.block(p, q).kernel();
            grid[p as usize][q as usize] =
                ker_delbar.intersect(&ker_adj).expect("ambient match").dim();
        }
    }
    grid
}

/// Serre symmetry `h[p][q] = h[2-p][2-q]` of a harmonic grid.
pub fn serre_symmetric(grid: &[[usize; 3]; 3]) -> bool {
    (0..3).all(|p| (0..3).all(|q| grid[p][q] == grid[2 - p][2 - q]))
}

/// Containment of the closed (p,0)-forms in the harmonic (p,0) kernel for
/// the given metric, checked as an exact subspace containment per p.
pub fn closed_p0_contained_in_harmonic(b: &BigradedComplex, metric: &HermitianMetric) -> bool {
    let adj = dbar_adjoint(b, metric);
    (0..=2i32).all(|p| {
        if block_dim(p, 0) == 0 {
            return true;
        }
        let n = p;
        let block = b.block_coordinate_subspace(p, 0);
        let closed =
            Subspace::preimage(&b.total_d[n as usize], &Subspace::zero(b.total_dim(n + 1)))
                .intersect(&block)
                .expect("ambient match");
        let harmonic = b
            .delbar
            .block(p, 0)
            .kernel()
            .intersect(&adj.block(p, 0).kernel())
            .expect("ambient match");
        let harmonic_embedded = b.embed_block(p, 0, &harmonic);
        closed.is_contained_in(&harmonic_embedded)
    })
}

/// Index-style quantities: Todd integrality, the index of the invariant
/// `(delbar + delbar*)` operator between even and odd (0,q) rows, and the
/// lower bound `h01_dbar >= 1 + h20_dbar - Td` reported as advisory.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NoetherReport {
    pub todd: Option<i64>,
    pub todd_integral: bool,
    /// `dim ker - dim coker` of the invariant operator
    /// `A^{0,0} + A^{0,2} -> A^{0,1}`, `(f, beta) -> delbar f + delbar* beta`.
    pub invariant_index: i64,
    pub bound_lhs: i64,
    pub bound_rhs: Option<i64>,
    pub bound_holds: Option<bool>,
}

pub fn noether_quantities(
    grid: &[[usize; 3]; 3],
    inv: &DerivedInvariants,
    b: &BigradedComplex,
    metric: &HermitianMetric,
) -> NoetherReport {
    let adj = dbar_adjoint(b, metric);
    let op = ExactMatrix::hstack(&b.delbar.block(0, 0), &adj.block(0, 2));
    let rank = op.rank();
    let invariant_index = (op.cols() - rank) as i64 - (op.rows() - rank) as i64;
    let bound_lhs = grid[0][1] as i64;
    let bound_rhs = inv.todd.map(|td| 1 + grid[2][0] as i64 - td);
    NoetherReport {
        todd: inv.todd,
        todd_integral: inv.todd.is_some(),
        invariant_index,
        bound_lhs,
        bound_rhs,
        bound_holds: bound_rhs.map(|rhs| bound_lhs >= rhs),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::acs::{complex_frame, split_differential, AlmostComplexStructure};
    use crate::cdga::CEComplex;
    use crate::lie::{filiform, kodaira_thurston, torus, LieAlgebraPresentation};
    use crate::scalar::GaussianRational as G;

    fn build(p: LieAlgebraPresentation, acs: &AlmostComplexStructure) -> BigradedComplex {
        let ce = CEComplex::build(&p.validate(false).unwrap()).unwrap();
        let frame = complex_frame(acs).unwrap();
        split_differential(&frame, &ce).unwrap()
    }

    fn std_j(name: &str) -> AlmostComplexStructure {
        AlmostComplexStructure::from_pairs(name, &[(1, 2), (3, 4)]).unwrap()
    }

    fn scaled_metric(factor: i64) -> HermitianMetric {
        let mut g = ExactMatrix::identity(4);
        for k in 0..4 {
            g.set(k, k, G::from_int(factor));
        }
        HermitianMetric::new(g).unwrap()
    }

    #[test]
    fn default_metric_adjoint_is_conjugate_transpose() {
        let b = build(kodaira_thurston(), &std_j("kt-j1"));
        let metric = HermitianMetric::default_frame_metric();
        let adj = dbar_adjoint(&b, &metric);
        for p in 0..=2 {
            for q in 1..=2 {
                assert_eq!(adj.block(p, q), b.delbar.block(p, q - 1).conj_transpose());
            }
        }
        assert!(adjoint_identity_holds(&b, &metric, &adj));
    }

    #[test]
    fn abelian_adjoints_vanish() {
        let b = build(torus(), &std_j("std"));
        let adj = dbar_adjoint(&b, &HermitianMetric::default_frame_metric());
        assert!(adj.is_zero());
    }

    #[test]
    fn scaled_metric_rescales_adjoint() {
        // gram = 2 Id scales the induced gram by 2^{p+q}, so the adjoint of
        // delbar out of (p,q-1) picks up a single factor of 2.
        let b = build(filiform(), &std_j("j1"));
        let metric = scaled_metric(2);
        let adj = dbar_adjoint(&b, &metric);
        for p in 0..=2 {
            for q in 1..=2 {
                let expected = b
                    .delbar
                    .block(p, q - 1)
                    .conj_transpose()
                    .scale(&G::from_int(2));
                assert_eq!(adj.block(p, q), expected);
            }
        }
        assert!(adjoint_identity_holds(&b, &metric, &adj));
    }

    #[test]
    fn metric_validation() {
        let mut g = ExactMatrix::identity(4);
        g.set(0, 0, G::from_int(2));
        g.set(0, 1, G::i());
        assert_eq!(
            HermitianMetric::new(g.clone()).unwrap_err(),
            HarmonicError::NotHermitian
        );
        g.set(1, 0, -G::i());
        // now Hermitian, but the (0,1)-block copy is missing
        assert_eq!(
            HermitianMetric::new(g.clone()).unwrap_err(),
            HarmonicError::NotRealStructure
        );
        g.set(2, 2, G::from_int(2));
        g.set(2, 3, -G::i());
        g.set(3, 2, G::i());
        assert!(HermitianMetric::new(g).is_ok());

        let mut neg = ExactMatrix::identity(4);
        neg.set(0, 0, G::from_int(-1));
        neg.set(2, 2, G::from_int(-1));
        assert_eq!(
            HermitianMetric::new(neg).unwrap_err(),
            HarmonicError::MetricNotPositive
        );

        let mut mixed = ExactMatrix::identity(4);
        mixed.set(0, 2, G::one());
        mixed.set(2, 0, G::one());
        assert_eq!(
            HermitianMetric::new(mixed).unwrap_err(),
            HarmonicError::NotBlockOrthogonal
        );
    }

    #[test]
    fn torus_harmonic_grid_is_full() {
        let b = build(torus(), &std_j("std"));
        let grid = harmonic_numbers(&b, &HermitianMetric::default_frame_metric());
        assert_eq!(grid, [[1, 2, 1], [2, 4, 2], [1, 2, 1]]);
    }

    #[test]
    fn filiform_j2_constants_are_harmonic() {
        let j2 = AlmostComplexStructure::from_pairs("j2", &[(1, 4), (2, 3)]).unwrap();
        let b = build(filiform(), &j2);
        let grid = harmonic_numbers(&b, &HermitianMetric::default_frame_metric());
        assert_eq!(grid[0][0], 1);
        assert!(serre_symmetric(&grid));
    }

    #[test]
    fn harmonic_serre_symmetry_on_corpus() {
        let kt_j2 = AlmostComplexStructure::from_pairs("kt-j2", &[(4, 1), (3, 2)]).unwrap();
        let fili_j2 = AlmostComplexStructure::from_pairs("j2", &[(1, 4), (2, 3)]).unwrap();
        let cases = vec![
            build(torus(), &std_j("std")),
            build(filiform(), &std_j("j1")),
            build(filiform(), &fili_j2),
            build(kodaira_thurston(), &std_j("kt-j1")),
            build(kodaira_thurston(), &kt_j2),
        ];
        let offdiag = {
            let mut g = ExactMatrix::identity(4);
            for k in 0..4 {
                g.set(k, k, G::from_int(2));
            }
            g.set(0, 1, G::i());
            g.set(1, 0, -G::i());
            g.set(2, 3, -G::i());
            g.set(3, 2, G::i());
            HermitianMetric::new(g).unwrap()
        };
        for b in &cases {
            for metric in [
                HermitianMetric::default_frame_metric(),
                scaled_metric(2),
                scaled_metric(3),
                offdiag.clone(),
            ] {
                let grid = harmonic_numbers(b, &metric);
                assert!(serre_symmetric(&grid), "{grid:?}");
                assert!(closed_p0_contained_in_harmonic(b, &metric));
            }
        }
    }

    #[test]
    fn harmonic_numbers_can_depend_on_the_metric() {
        // The frame-mixing metric changes the harmonic grid of the
        // non-integrable filiform structure; recorded as an observed example
        // of metric dependence at the left-invariant level.
        let j2 = AlmostComplexStructure::from_pairs("j2", &[(1, 4), (2, 3)]).unwrap();
        let b = build(filiform(), &j2);
        let mut g = ExactMatrix::identity(4);
        for k in 0..4 {
            g.set(k, k, G::from_int(2));
        }
        g.set(0, 1, G::i());
        g.set(1, 0, -G::i());
        g.set(2, 3, -G::i());
        g.set(3, 2, G::i());
        let mixed = HermitianMetric::new(g).unwrap();
        let base = harmonic_numbers(&b, &HermitianMetric::default_frame_metric());
        let moved = harmonic_numbers(&b, &mixed);
        assert_eq!(base[1][1], 2);
        assert_eq!(moved[1][1], 1);
        assert!(serre_symmetric(&moved));
    }

    #[test]
    fn kodaira_thurston_j1_bottom_row_matches_page_one() {
        use crate::spectral::{build_filtration, page};
        let b = build(kodaira_thurston(), &std_j("kt-j1"));
        let grid = harmonic_numbers(&b, &HermitianMetric::default_frame_metric());
        let f = build_filtration(&b).unwrap();
        let e1 = page(&f, 1).unwrap().dims;
        for p in 0..3 {
            assert_eq!(grid[p][0], e1[p][0]);
        }
    }

    #[test]
    fn invariant_index_vanishes_on_corpus() {
        let b = build(torus(), &std_j("std"));
        let metric = HermitianMetric::default_frame_metric();
        let grid = harmonic_numbers(&b, &metric);
        let betti = [1, 4, 6, 4, 1];
        let d =
            crate::invariants::HodgeDiamond::from_grid_unchecked([[1, 2, 1], [2, 4, 2], [1, 2, 1]]);
        let inv = crate::invariants::derived_invariants(&d, &betti, 3, 3);
        let report = noether_quantities(&grid, &inv, &b, &metric);
        assert_eq!(report.invariant_index, 0);
        assert_eq!(report.todd, Some(0));
        assert!(report.todd_integral);
        assert_eq!(report.bound_holds, Some(true));
    }
}

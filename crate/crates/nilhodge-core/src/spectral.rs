//! The d-compatible column filtration of the bigraded complex, its spectral
//! sequence by the generic filtered-complex recipe, explicit quotient
//! descriptions of the first two pages (used as mutual oracles), page
//! stabilization, and the induced filtration on cohomology with the purity
//! test.

use crate::acs::{block_basis, block_dim, degree_blocks, BigradedComplex};
use crate::cdga::CohomologyRing;
use crate::linalg::{ExactMatrix, Subspace};
use crate::scalar::GaussianRational;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectralError {
    #[error("filtration is not preserved by the differential (internal bug)")]
    FiltrationNotPreserved,
    #[error("no stabilization reached by page {0} (internal bug)")]
    NoStabilization(usize),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

/// The modified column filtration `F^p A^n = (Ker mubar cap A^{p,n-p}) +
/// (higher columns)`, stored per degree in block coordinates.
#[derive(Clone, Debug)]
pub struct HodgeFiltration {
    /// `subspaces[p][n]` is `F^p A^n`, for p = 0..=3 (F^3 = 0).
    subspaces: Vec<Vec<Subspace>>,
    /// Total differential per degree, block coordinates.
    d: Vec<ExactMatrix>,
    total_dims: [usize; 5],
    /// Cohomology dimensions of the total complex.
    h_total: [usize; 5],
}

impl HodgeFiltration {
    pub fn total_dim(&self, n: i32) -> usize {
        if (0..=4).contains(&n) {
            self.total_dims[n as usize]
        } else {
            0
        }
    }

    pub fn h_total(&self) -> [usize; 5] {
        self.h_total
    }

    /// `F^p A^n`, with the conventions `F^p = full` for p <= 0 and
    /// `F^p = 0` for p >= 3; degrees outside 0..=4 are zero spaces.
    pub fn fp(&self, p: i32, n: i32) -> Subspace {
        if !(0..=4).contains(&n) {
            return Subspace::zero(0);
        }
        if p <= 0 {
            return Subspace::full(self.total_dims[n as usize]);
        }
        if p >= 3 {
            return Subspace::zero(self.total_dims[n as usize]);
        }
        self.subspaces[p as usize][n as usize].clone()
    }

    /// The differential out of degree n (zero maps outside 0..=4).
    pub fn d_at(&self, n: i32) -> ExactMatrix {
        if n < 0 {
            ExactMatrix::zeros(self.total_dim(0), 0)
        } else if n >= 4 {
            ExactMatrix::zeros(0, self.total_dim(n))
        } else {
            self.d[n as usize].clone()
        }
    }

    /// `Z_r^{p,q} = F^p A^n cap d^{-1}(F^{p+r} A^{n+1})`.
    pub fn z_space(&self, r: i32, p: i32, q: i32) -> Subspace {
        let n = p + q;
        if !(0..=4).contains(&n) {
            return Subspace::zero(0);
        }
        let pre = Subspace::preimage(&self.d_at(n), &self.fp(p + r, n + 1));
        self.fp(p, n)
            .intersect(&pre)
            .expect("matching ambient dimensions")
    }
}

/// Build the filtration and verify d-compatibility exactly.
pub fn build_filtration(b: &BigradedComplex) -> Result<HodgeFiltration, SpectralError> {
    let mut total_dims = [0usize; 5];
    for n in 0..=4i32 {
        total_dims[n as usize] = b.total_dim(n);
    }
    let mut subspaces = Vec::new();
    for p in 0..=3i32 {
        let mut per_degree = Vec::new();
        for n in 0..=4i32 {
            let mut space = Subspace::zero(total_dims[n as usize]);
            for &(bp, bq) in &degree_blocks(n) {
                if bp > p {
                    space = space
                        .sum(&b.block_coordinate_subspace(bp, bq))
                        .expect("ambient match");
                } else if bp == p {
                    // leading column restricted to Ker mubar
                    let ker = b.mubar.block(bp, bq).kernel();
                    space = space
                        .sum(&b.embed_block(bp, bq, &ker))
                        .expect("ambient match");
                }
            }
            per_degree.push(space);
        }
        subspaces.push(per_degree);
    }
    let d: Vec<ExactMatrix> = b.total_d.clone();
    let mut h_total = [0usize; 5];
    for n in 0..=4usize {
        let ker = d[n].kernel().dim();
        let prev = if n == 0 { 0 } else { d[n - 1].rank() };
        h_total[n] = ker - prev;
    }
    let f = HodgeFiltration {
        subspaces,
        d,
        total_dims,
        h_total,
    };
    // d F^p subset F^p, verified exactly.
    for p in 0..=3i32 {
        for n in 0..=3i32 {
            let image = f.fp(p, n).image_under(&f.d_at(n));
            if !image.is_contained_in(&f.fp(p, n + 1)) {
                return Err(SpectralError::FiltrationNotPreserved);
            }
        }
    }
    Ok(f)
}

/// One page of the spectral sequence: exact dimensions per bidegree and the
/// differentials on chosen complement representatives.
#[derive(Clone, Debug)]
pub struct SpectralPage {
    pub r: usize,
    pub dims: [[usize; 3]; 3],
    pub deltas: BTreeMap<(i32, i32), ExactMatrix>,
    /// Whether the degree-wise sums already agree with total cohomology.
    pub stabilized: bool,
}

impl SpectralPage {
    pub fn total_by_degree(&self) -> [usize; 5] {
        let mut t = [0usize; 5];
        for p in 0..3 {
            for q in 0..3 {
                t[p + q] += self.dims[p][q];
            }
        }
        t
    }
}

/// Compute page r >= 1 by the generic filtered-complex recipe
/// `E_r = Z_r / (Z_{r-1}^{p+1,q-1} + d Z_{r-1}^{p-r+1,q+r-2})`.
pub fn page(f: &HodgeFiltration, r: usize) -> Result<SpectralPage, SpectralError> {
    assert!(r >= 1, "pages are defined for r >= 1");
    let r = r as i32;
    let mut dims = [[0usize; 3]; 3];
    let mut numerators: BTreeMap<(i32, i32), Subspace> = BTreeMap::new();
    let mut denominators: BTreeMap<(i32, i32), Subspace> = BTreeMap::new();
    let mut reps: BTreeMap<(i32, i32), Vec<Vec<GaussianRational>>> = BTreeMap::new();
    for p in 0..=2i32 {
        for q in 0..=2i32 {
            let n = p + q;
            let z = f.z_space(r, p, q);
            let boundary_src = f.z_space(r - 1, p - r + 1, q + r - 2);
            let boundaries = boundary_src.image_under(&f.d_at(n - 1));
            let denom = f
                .z_space(r - 1, p + 1, q - 1)
                .sum(&boundaries)
                .expect("ambient match");
            if !denom.is_contained_in(&z) {
                return Err(SpectralError::Internal(format!(
                    "page {r}: denominator not inside Z at ({p},{q})"
                )));
            }
            dims[p as usize][q as usize] = z.dim() - denom.dim();
            reps.insert((p, q), denom.extend_within(&z));
            numerators.insert((p, q), z);
            denominators.insert((p, q), denom);
        }
    }
    // delta_r on representatives; target class coordinates are solved against
    // (target representatives | target denominator).
    let mut deltas = BTreeMap::new();
    for p in 0..=2i32 {
        for q in 0..=2i32 {
            let n = p + q;
            let (tp, tq) = (p + r, q - r + 1);
            let src_reps = &reps[&(p, q)];
            let target_dim = if (0..=2).contains(&tp) && (0..=2).contains(&tq) {
                dims[tp as usize][tq as usize]
            } else {
                0
            };
            let mut cols = Vec::new();
            for v in src_reps {
                let w = f.d_at(n).apply(v);
                if target_dim == 0 {
                    let w_is_zero = w.iter().all(GaussianRational::is_zero);
                    let in_denom = denominators.get(&(tp, tq)).is_some_and(|d| d.contains(&w));
                    if !w_is_zero && !in_denom {
                        return Err(SpectralError::Internal(format!(
                            "page {r}: differential escapes zero slot ({tp},{tq})"
                        )));
                    }
                    cols.push(Vec::new());
                    continue;
                }
                let t_reps = &reps[&(tp, tq)];
                let t_denom = &denominators[&(tp, tq)];
                let mut solve_cols: Vec<Vec<GaussianRational>> = t_reps.clone();
                solve_cols.extend(t_denom.basis().iter().cloned());
                let m = ExactMatrix::from_columns(solve_cols, f.total_dim(n + 1));
                let sol = m.solve(&w).ok_or_else(|| {
                    SpectralError::Internal(format!(
                        "page {r}: class of differential unsolvable at ({p},{q})"
                    ))
                })?;
                cols.push(sol[..t_reps.len()].to_vec());
            }
            deltas.insert((p, q), ExactMatrix::from_columns(cols, target_dim));
        }
    }
    let mut page = SpectralPage {
        r: r as usize,
        dims,
        deltas,
        stabilized: false,
    };
    page.stabilized = page.total_by_degree() == f.h_total();
    Ok(page)
}

/// Result of iterating pages until the dimensions repeat and the degree-wise
/// sums match the Betti numbers.
#[derive(Clone, Debug)]
pub struct Stabilization {
    pub pages: Vec<SpectralPage>,
    pub first_stable: usize,
    pub stable_dims: [[usize; 3]; 3],
    /// `dim E_{r+1} = dim ker delta_r - rank(incoming delta_r)` for all
    /// computed consecutive pages.
    pub delta_consistent: bool,
}

const PAGE_CAP: usize = 5;

/// Iterate pages to stabilization. Requires both dimension repetition and
/// agreement with the supplied Betti numbers; capped at page 5.
pub fn stabilize(f: &HodgeFiltration, betti: &[usize; 5]) -> Result<Stabilization, SpectralError> {
    if f.h_total() != *betti {
        return Err(SpectralError::Internal(format!(
            "total-complex cohomology {:?} differs from Betti numbers {:?}",
            f.h_total(),
            betti
        )));
    }
    let mut pages = Vec::new();
    for r in 1..=PAGE_CAP + 1 {
        pages.push(page(f, r)?);
    }
    let mut first_stable = None;
    for idx in 0..PAGE_CAP {
        let betti_ok = pages[idx].total_by_degree() == *betti;
        if betti_ok && pages[idx].dims == pages[idx + 1].dims {
            first_stable = Some(idx + 1);
            break;
        }
    }
    let Some(first_stable) = first_stable else {
        return Err(SpectralError::NoStabilization(PAGE_CAP));
    };
    let mut delta_consistent = true;
    for idx in 0..pages.len() - 1 {
        let cur = &pages[idx];
        let next = &pages[idx + 1];
        let r = cur.r as i32;
        for p in 0..=2i32 {
            for q in 0..=2i32 {
                let out_rank = cur.deltas[&(p, q)].rank() as i64;
                let out_dim = cur.dims[p as usize][q as usize] as i64;
                let in_rank = cur
                    .deltas
                    .get(&(p - r, q + r - 1))
                    .map_or(0, ExactMatrix::rank) as i64;
                let expected = out_dim - out_rank - in_rank;
                if next.dims[p as usize][q as usize] as i64 != expected {
                    delta_consistent = false;
                }
            }
        }
    }
    let stable_dims = pages[first_stable - 1].dims;
    pages.truncate(first_stable + 1);
    Ok(Stabilization {
        pages,
        first_stable,
        stable_dims,
        delta_consistent,
    })
}

/// First-page dimensions straight from the quotient description
/// `{x : mubar x = 0, delbar x in im mubar} / (mubar a + delbar b, mubar b = 0)`.
pub fn e1_explicit(b: &BigradedComplex) -> [[usize; 3]; 3] {
    let mut dims = [[0usize; 3]; 3];
    for p in 0..=2i32 {
        for q in 0..=2i32 {
            let v_dim = block_dim(p, q);
            if v_dim == 0 {
                continue;
            }
            let im_mubar =
                Subspace::full(block_dim(p + 1, q - 1)).image_under(&b.mubar.block(p + 1, q - 1));
            let numerator = b
                .mubar
                .block(p, q)
                .kernel()
                .intersect(&Subspace::preimage(&b.delbar.block(p, q), &im_mubar))
                .expect("ambient match");
            let from_mubar =
                Subspace::full(block_dim(p + 1, q - 2)).image_under(&b.mubar.block(p + 1, q - 2));
            let from_delbar = b
                .mubar
                .block(p, q - 1)
                .kernel()
                .image_under(&b.delbar.block(p, q - 1));
            let denominator = from_mubar.sum(&from_delbar).expect("ambient match");
            assert!(
                denominator.is_contained_in(&numerator),
                "E1 denominator not inside numerator at ({p},{q})"
            );
            dims[p as usize][q as usize] = numerator.dim() - denominator.dim();
        }
    }
    dims
}

/// Second-page dimensions from the three-condition quotient description,
/// eliminating the auxiliary variables by block linear algebra.
pub fn e2_explicit(b: &BigradedComplex) -> [[usize; 3]; 3] {
    let mut dims = [[0usize; 3]; 3];
    for p in 0..=2i32 {
        for q in 0..=2i32 {
            let x_dim = block_dim(p, q);
            if x_dim == 0 {
                continue;
            }
            let y_dim = block_dim(p + 1, q - 1);

            // Numerator: pairs (x, y) with mubar x = 0, delbar x = mubar y,
            // del x - delbar y in im(mubar); then project to x.
            let zeros = |r: usize, c: usize| ExactMatrix::zeros(r, c);
            let row1 =
                ExactMatrix::hstack(&b.mubar.block(p, q), &zeros(block_dim(p - 1, q + 2), y_dim));
            let row2 =
                ExactMatrix::hstack(&b.delbar.block(p, q), &b.mubar.block(p + 1, q - 1).neg());
            let im_mubar_z =
                Subspace::full(block_dim(p + 2, q - 2)).image_under(&b.mubar.block(p + 2, q - 2));
            let ann = im_mubar_z.annihilator().basis_matrix();
            let row3 = ExactMatrix::hstack(
                &ann.mul(&b.del.block(p, q)),
                &ann.mul(&b.delbar.block(p + 1, q - 1)).neg(),
            );
            let constraints = ExactMatrix::vstack(&ExactMatrix::vstack(&row1, &row2), &row3);
            let pairs = constraints.kernel();
            let mut proj = ExactMatrix::zeros(x_dim, x_dim + y_dim);
            for k in 0..x_dim {
                proj.set(k, k, GaussianRational::one());
            }
            let numerator = pairs.image_under(&proj);

            // Denominator: x = mubar a + delbar b + del c with
            // mubar b + delbar c = 0 and mubar c = 0.
            let a_dim = block_dim(p + 1, q - 2);
            let b_dim = block_dim(p, q - 1);
            let con1 = ExactMatrix::hstack(
                &ExactMatrix::hstack(
                    &zeros(block_dim(p - 1, q + 1), a_dim),
                    &b.mubar.block(p, q - 1),
                ),
                &b.delbar.block(p - 1, q),
            );
            let con2 = ExactMatrix::hstack(
                &ExactMatrix::hstack(
                    &zeros(block_dim(p - 2, q + 2), a_dim),
                    &zeros(block_dim(p - 2, q + 2), b_dim),
                ),
                &b.mubar.block(p - 1, q),
            );
            let triples = ExactMatrix::vstack(&con1, &con2).kernel();
            let value = ExactMatrix::hstack(
                &ExactMatrix::hstack(&b.mubar.block(p + 1, q - 2), &b.delbar.block(p, q - 1)),
                &b.del.block(p - 1, q),
            );
            let denominator = triples.image_under(&value);
            assert!(
                denominator.is_contained_in(&numerator),
                "E2 denominator not inside numerator at ({p},{q})"
            );
            dims[p as usize][q as usize] = numerator.dim() - denominator.dim();
        }
    }
    dims
}

/// The induced filtration on complex de Rham cohomology in degrees 1 and 2,
/// carried as subspaces of the chosen H^n coordinates together with their
/// conjugates.
#[derive(Clone, Debug)]
pub struct CohomologyFiltration {
    pub f1h1: Subspace,
    pub f1h1_conj: Subspace,
    pub f1h2: Subspace,
    pub f2h2: Subspace,
    pub f2h2_conj: Subspace,
    pub h1_dim: usize,
    pub h2_dim: usize,
}

/// Classes of closed forms lying in the stated column spans.
pub fn cohomology_filtration(b: &BigradedComplex, ring: &CohomologyRing) -> CohomologyFiltration {
    let classes_of = |degree: usize, blocks: &[(i32, i32)]| -> (Subspace, Subspace) {
        let ce_dim = ring.complex().dim_of_degree(degree);
        let t = &b.x_from_y_deg[degree];
        let mut span_vecs = Vec::new();
        for &(p, q) in blocks {
            let sub = b.block_coordinate_subspace(p, q);
            for v in sub.basis() {
                span_vecs.push(t.apply(v));
            }
        }
        let column_span = Subspace::span(ce_dim, span_vecs);
        let closed = ring
            .kernel(degree)
            .intersect(&column_span)
            .expect("ambient match");
        let h_dim = ring.betti[degree];
        let classes = Subspace::span(
            h_dim,
            closed
                .basis()
                .iter()
                .map(|v| ring.class_coords(degree, v).expect("closed form"))
                .collect(),
        );
        let conj_classes = Subspace::span(
            h_dim,
            closed
                .basis()
                .iter()
                .map(|v| {
                    let w: Vec<GaussianRational> = v.iter().map(GaussianRational::conj).collect();
                    ring.class_coords(degree, &w)
                        .expect("conjugate of closed form")
                })
                .collect(),
        );
        (classes, conj_classes)
    };
    let (f1h1, f1h1_conj) = classes_of(1, &[(1, 0)]);
    let (f1h2, _) = classes_of(2, &[(1, 1), (2, 0)]);
    let (f2h2, f2h2_conj) = classes_of(2, &[(2, 0)]);
    CohomologyFiltration {
        f1h1,
        f1h1_conj,
        f1h2,
        f2h2,
        f2h2_conj,
        h1_dim: ring.betti[1],
        h2_dim: ring.betti[2],
    }
}

/// Verdict of the purity test for one weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PurityVerdict {
    Pass,
    Fail,
    /// Hypothesis `h^{0,1} = h^{1,0}` not met for weight 1.
    Skipped(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PurityReport {
    pub weight2: PurityVerdict,
    pub weight1: PurityVerdict,
}

/// Weight-2 purity `F^1 H^2 + conj(F^2 H^2) = H^2` (direct sum), and
/// weight-1 purity `F^1 H^1 + conj(F^1 H^1) = H^1` when `h^{0,1} = h^{1,0}`.
pub fn purity_check(cf: &CohomologyFiltration, h01: usize, h10: usize) -> PurityReport {
    let direct_spanning = |u: &Subspace, v: &Subspace, full: usize| -> bool {
        let (sum, inter) = u.sum_intersect(v).expect("ambient match");
        sum.dim() == full && inter.dim() == 0
    };
    let weight2 = if direct_spanning(&cf.f1h2, &cf.f2h2_conj, cf.h2_dim) {
        PurityVerdict::Pass
    } else {
        PurityVerdict::Fail
    };
    let weight1 = if h01 != h10 {
        PurityVerdict::Skipped(format!(
            "hypothesis not met: h01 = {h01} differs from h10 = {h10}"
        ))
    } else if direct_spanning(&cf.f1h1, &cf.f1h1_conj, cf.h1_dim) {
        PurityVerdict::Pass
    } else {
        PurityVerdict::Fail
    };
    PurityReport { weight2, weight1 }
}

/// Dimension grid of the blocks themselves (the page-0 sizes).
pub fn block_dims_grid() -> [[usize; 3]; 3] {
    let mut g = [[0usize; 3]; 3];
    for p in 0..=2i32 {
        for q in 0..=2i32 {
            g[p as usize][q as usize] = block_dim(p, q);
        }
    }
    g
}

/// Dimension of a block basis, exposed for tests.
pub fn block_sizes(p: i32, q: i32) -> usize {
    block_basis(p, q).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::acs::{complex_frame, split_differential, AlmostComplexStructure};
    use crate::cdga::{betti_numbers, CEComplex, CohomologyRing};
    use crate::lie::{filiform, kodaira_thurston, torus, LieAlgebraPresentation};

    fn build(
        p: LieAlgebraPresentation,
        acs: &AlmostComplexStructure,
    ) -> (BigradedComplex, [usize; 5]) {
        let ce = CEComplex::build(&p.validate(false).unwrap()).unwrap();
        let betti = betti_numbers(&ce);
        let frame = complex_frame(acs).unwrap();
        (split_differential(&frame, &ce).unwrap(), betti)
    }

    fn std_j(name: &str) -> AlmostComplexStructure {
        AlmostComplexStructure::from_pairs(name, &[(1, 2), (3, 4)]).unwrap()
    }

    fn fili_j2() -> AlmostComplexStructure {
        AlmostComplexStructure::from_pairs("fili-j2", &[(1, 4), (2, 3)]).unwrap()
    }

    fn kt_j2() -> AlmostComplexStructure {
        AlmostComplexStructure::from_pairs("kt-j2", &[(4, 1), (3, 2)]).unwrap()
    }

    #[test]
    fn filtration_of_integrable_input_is_plain_columns() {
        let (b, _) = build(torus(), &std_j("std"));
        let f = build_filtration(&b).unwrap();
        // F^1 A^1 is the whole (1,0) block for integrable structures.
        assert_eq!(f.fp(1, 1).dim(), 2);
        assert_eq!(f.fp(0, 2).dim(), 6);
        assert_eq!(f.fp(3, 2).dim(), 0);
    }

    #[test]
    fn filiform_j1_leading_column_is_cut() {
        let (b, _) = build(filiform(), &std_j("j1"));
        let f = build_filtration(&b).unwrap();
        // mubar is nonzero on (1,0), so F^1 A^1 = Ker mubar is proper.
        assert_eq!(f.fp(1, 1).dim(), 1);
    }

    #[test]
    fn abelian_pages_are_block_dims() {
        let (b, betti) = build(torus(), &std_j("std"));
        let f = build_filtration(&b).unwrap();
        for r in 1..=3 {
            let pg = page(&f, r).unwrap();
            assert_eq!(pg.dims, block_dims_grid());
            assert!(pg.deltas.values().all(ExactMatrix::is_zero));
        }
        let st = stabilize(&f, &betti).unwrap();
        assert_eq!(st.first_stable, 1);
        assert!(st.delta_consistent);
    }

    #[test]
    fn filiform_j1_stabilizes_at_page_two() {
        let (b, betti) = build(filiform(), &std_j("j1"));
        let f = build_filtration(&b).unwrap();
        let p1 = page(&f, 1).unwrap();
        let p2 = page(&f, 2).unwrap();
        let p3 = page(&f, 3).unwrap();
        assert_ne!(p1.dims, p2.dims);
        assert_eq!(p2.dims, p3.dims);
        let st = stabilize(&f, &betti).unwrap();
        assert_eq!(st.first_stable, 2);
        assert!(st.delta_consistent);
    }

    #[test]
    fn stable_pages_on_rest_of_corpus() {
        for (pres, acs, expected) in [
            (filiform(), fili_j2(), 1usize),
            (kodaira_thurston(), std_j("kt-j1"), 1),
            (kodaira_thurston(), kt_j2(), 1),
        ] {
            let (b, betti) = build(pres, &acs);
            let f = build_filtration(&b).unwrap();
            let st = stabilize(&f, &betti).unwrap();
            assert_eq!(st.first_stable, expected);
            assert!(st.delta_consistent);
        }
    }

    #[test]
    fn kodaira_thurston_j2_second_page_grid() {
        let (b, betti) = build(kodaira_thurston(), &kt_j2());
        let f = build_filtration(&b).unwrap();
        let st = stabilize(&f, &betti).unwrap();
        let expected = [[1, 2, 0], [1, 4, 1], [0, 2, 1]];
        assert_eq!(page(&f, 2).unwrap().dims, expected);
        assert_eq!(st.stable_dims, expected);
    }

    #[test]
    fn explicit_formulas_match_generic_pages_on_corpus() {
        let cases = vec![
            build(torus(), &std_j("std")),
            build(filiform(), &std_j("j1")),
            build(filiform(), &fili_j2()),
            build(kodaira_thurston(), &std_j("kt-j1")),
            build(kodaira_thurston(), &kt_j2()),
        ];
        for (b, _) in cases {
            let f = build_filtration(&b).unwrap();
            assert_eq!(e1_explicit(&b), page(&f, 1).unwrap().dims);
            assert_eq!(e2_explicit(&b), page(&f, 2).unwrap().dims);
        }
    }

    #[test]
    fn page_dims_are_monotone() {
        let (b, _) = build(filiform(), &std_j("j1"));
        let f = build_filtration(&b).unwrap();
        let mut prev = page(&f, 1).unwrap().dims;
        for r in 2..=4 {
            let cur = page(&f, r).unwrap().dims;
            for p in 0..3 {
                for q in 0..3 {
                    assert!(cur[p][q] <= prev[p][q]);
                }
            }
            prev = cur;
        }
    }

    #[test]
    fn cohomology_filtration_dims() {
        // filiform + J2: no closed (1,0)-classes
        let (b, _) = build(filiform(), &fili_j2());
        let ring = CohomologyRing::build(b.ce());
        let cf = cohomology_filtration(&b, &ring);
        assert_eq!(cf.f1h1.dim(), 0);
        assert_eq!(cf.f2h2.dim(), 0);

        // Kodaira-Thurston + J1: one closed (1,0)-class
        let (b, _) = build(kodaira_thurston(), &std_j("kt-j1"));
        let ring = CohomologyRing::build(b.ce());
        let cf = cohomology_filtration(&b, &ring);
        assert_eq!(cf.f1h1.dim(), 1);

        // non-integrable: F^2 H^2 = 0
        let (b, _) = build(kodaira_thurston(), &kt_j2());
        let ring = CohomologyRing::build(b.ce());
        let cf = cohomology_filtration(&b, &ring);
        assert_eq!(cf.f2h2.dim(), 0);
    }

    #[test]
    fn purity_on_corpus_representatives() {
        // filiform + J1 has h01 = h10 = 1: both weights hold
        let (b, betti) = build(filiform(), &std_j("j1"));
        let f = build_filtration(&b).unwrap();
        let st = stabilize(&f, &betti).unwrap();
        let ring = CohomologyRing::build(b.ce());
        let cf = cohomology_filtration(&b, &ring);
        let h01 = st.stable_dims[0][1];
        let h10 = st.stable_dims[1][0];
        assert_eq!((h10, h01), (1, 1));
        let report = purity_check(&cf, h01, h10);
        assert_eq!(report.weight2, PurityVerdict::Pass);
        assert_eq!(report.weight1, PurityVerdict::Pass);

        // Kodaira-Thurston + J2 has h01 = 2, h10 = 1: weight 1 skipped
        let (b, betti) = build(kodaira_thurston(), &kt_j2());
        let f = build_filtration(&b).unwrap();
        let st = stabilize(&f, &betti).unwrap();
        let ring = CohomologyRing::build(b.ce());
        let cf = cohomology_filtration(&b, &ring);
        let report = purity_check(&cf, st.stable_dims[0][1], st.stable_dims[1][0]);
        assert_eq!(report.weight2, PurityVerdict::Pass);
        assert!(matches!(report.weight1, PurityVerdict::Skipped(_)));

        // torus: both hold
        let (b, betti) = build(torus(), &std_j("std"));
        let f = build_filtration(&b).unwrap();
        let st = stabilize(&f, &betti).unwrap();
        let ring = CohomologyRing::build(b.ce());
        let cf = cohomology_filtration(&b, &ring);
        let report = purity_check(&cf, st.stable_dims[0][1], st.stable_dims[1][0]);
        assert_eq!(report.weight2, PurityVerdict::Pass);
        assert_eq!(report.weight1, PurityVerdict::Pass);
    }

    #[test]
    fn gr_dimensions_match_cohomology_filtration() {
        // dim F^1 H^1 = h^{1,0} and dim F^2 H^2 = h^{2,0} on the corpus.
        let cases = vec![
            build(torus(), &std_j("std")),
            build(filiform(), &std_j("j1")),
            build(filiform(), &fili_j2()),
            build(kodaira_thurston(), &std_j("kt-j1")),
            build(kodaira_thurston(), &kt_j2()),
        ];
        for (b, betti) in cases {
            let f = build_filtration(&b).unwrap();
            let st = stabilize(&f, &betti).unwrap();
            let ring = CohomologyRing::build(b.ce());
            let cf = cohomology_filtration(&b, &ring);
            assert_eq!(cf.f1h1.dim(), st.stable_dims[1][0]);
            assert_eq!(cf.f2h2.dim(), st.stable_dims[2][0]);
        }
    }
}

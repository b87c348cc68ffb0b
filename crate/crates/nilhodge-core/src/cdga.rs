//! The Chevalley-Eilenberg complex of a validated presentation: exterior
//! bases, differential matrices, Betti numbers, cohomology representatives,
//! cup products and the intersection form on H^2.
//!
//! The sign convention is `d x^k = -sum_{i<j} c^k_{ij} x^i ^ x^j`, extended
//! as a degree-1 derivation. It is fixed once here and used everywhere.

use crate::exterior::{monomials, Mask, Multivector};
use crate::lie::ValidatedLieAlgebra;
use crate::linalg::{congruence_signature, ExactMatrix, Subspace};
use crate::scalar::GaussianRational;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CdgaError {
    #[error("d^2 != 0 on the Chevalley-Eilenberg complex (validation bug)")]
    DifferentialNotSquareZero,
    #[error("orientation 4-form is zero or exact")]
    DegenerateOrientation,
    #[error("H^4 has dimension {0}, expected 1")]
    TopCohomologyNotLine(usize),
}

/// Chevalley-Eilenberg complex of a 4-dimensional algebra over Q(i):
/// per-degree monomial bases and differential matrices.
#[derive(Clone, Debug)]
pub struct CEComplex {
    pub dimension: usize,
    /// Monomial basis of degree n, lexicographic tuple order, n = 0..=4.
    pub bases: Vec<Vec<Mask>>,
    /// `d[n]` maps degree n to degree n+1; `d[4]` is the zero map out of the top.
    pub d: Vec<ExactMatrix>,
    /// `d` of each dual generator as a multivector (degree 2).
    dgen: Vec<Multivector>,
}

impl CEComplex {
    pub fn build(algebra: &ValidatedLieAlgebra) -> Result<Self, CdgaError> {
        let n = algebra.dimension();
        let pres = algebra.presentation();
        // d x^k = -sum_{i<j} c^k_{ij} x^i ^ x^j
        let mut dgen = Vec::with_capacity(n);
        for k in 1..=n {
            let mut form = Multivector::zero(n);
            for (i, j, target, c) in pres.bracket_entries() {
                if target == k {
                    let mask = (1 << (i - 1)) | (1 << (j - 1));
                    form.add_term(mask, -GaussianRational::from_rational(c));
                }
            }
            dgen.push(form);
        }
        let bases: Vec<Vec<Mask>> = (0..=n).map(|deg| monomials(n, deg)).collect();
        let mut d = Vec::with_capacity(n + 1);
        for deg in 0..=n {
            let src = &bases[deg];
            let dst: &[Mask] = if deg < n { &bases[deg + 1] } else { &[] };
            let mut cols = Vec::with_capacity(src.len());
            for &m in src {
                let dm = apply_d(m, &dgen, n);
                cols.push(dm.coords(dst));
            }
            d.push(ExactMatrix::from_columns(cols, dst.len()));
        }
        let complex = CEComplex {
            dimension: n,
            bases,
            d,
            dgen,
        };
        for deg in 0..n {
            if !complex.d[deg + 1].mul(&complex.d[deg]).is_zero() {
                return Err(CdgaError::DifferentialNotSquareZero);
            }
        }
        Ok(complex)
    }

    pub fn dim_of_degree(&self, n: usize) -> usize {
        self.bases.get(n).map_or(0, Vec::len)
    }

    /// Differential of an arbitrary multivector.
    pub fn d_multivector(&self, v: &Multivector) -> Multivector {
        let mut out = Multivector::zero(self.dimension);
        for (&m, c) in v.terms() {
            out = out.add(&apply_d(m, &self.dgen, self.dimension).scale(c));
        }
        out
    }
}

/// Derivation rule on a monomial: `d(x^{i1}^...^x^{in}) =
/// sum_t (-1)^{t-1} dx^{i_t} ^ (rest)`; 2-forms commute past 1-forms.
fn apply_d(m: Mask, dgen: &[Multivector], n_gens: usize) -> Multivector {
    let mut out = Multivector::zero(n_gens);
    let mut pos = 0;
    for k in 0..n_gens {
        if m & (1 << k) == 0 {
            continue;
        }
        let rest = m & !(1 << k);
        let mut term = dgen[k].wedge(&Multivector::from_coords(
            n_gens,
            &[rest],
            &[GaussianRational::one()],
        ));
        if pos % 2 == 1 {
            term = term.scale(&(-GaussianRational::one()));
        }
        out = out.add(&term);
        pos += 1;
    }
    out
}

/// Betti numbers `b^n = dim ker d_n - rank d_{n-1}` of the complex.
pub fn betti_numbers(ce: &CEComplex) -> [usize; 5] {
    let mut b = [0usize; 5];
    for n in 0..=4 {
        let ker = ce.d[n].kernel().dim();
        let prev_rank = if n == 0 { 0 } else { ce.d[n - 1].rank() };
        b[n] = ker - prev_rank;
    }
    b
}

/// Cohomology of the complex with chosen closed representatives per degree,
/// plus the wedge pairing data needed for the intersection form.
#[derive(Clone, Debug)]
pub struct CohomologyRing {
    pub betti: [usize; 5],
    /// Closed representatives of a basis of H^n, in degree-n coordinates.
    reps: Vec<Vec<Vec<GaussianRational>>>,
    kernels: Vec<Subspace>,
    boundaries: Vec<Subspace>,
    ce: CEComplex,
}

impl CohomologyRing {
    pub fn build(ce: &CEComplex) -> Self {
        let betti = betti_numbers(ce);
        let mut reps = Vec::new();
        let mut kernels = Vec::new();
        let mut boundaries = Vec::new();
        for n in 0..=4 {
            let ker = ce.d[n].kernel();
            let bnd = if n == 0 {
                Subspace::zero(ce.dim_of_degree(0))
            } else {
                Subspace::full(ce.dim_of_degree(n - 1)).image_under(&ce.d[n - 1])
            };
            let basis = bnd.extend_within(&ker);
            kernels.push(ker);
            boundaries.push(bnd);
            reps.push(basis);
        }
        CohomologyRing {
            betti,
            reps,
            kernels,
            boundaries,
            ce: ce.clone(),
        }
    }

    pub fn complex(&self) -> &CEComplex {
        &self.ce
    }

    pub fn representatives(&self, n: usize) -> &[Vec<GaussianRational>] {
        &self.reps[n]
    }

    pub fn boundaries(&self, n: usize) -> &Subspace {
        &self.boundaries[n]
    }

    pub fn kernel(&self, n: usize) -> &Subspace {
        &self.kernels[n]
    }

    /// Coordinates of the class of a closed degree-n form in the chosen
    /// basis of H^n; `None` if the form is not closed.
    pub fn class_coords(&self, n: usize, v: &[GaussianRational]) -> Option<Vec<GaussianRational>> {
        if !self.kernels[n].contains(v) {
            return None;
        }
        let h_dim = self.reps[n].len();
        let mut cols: Vec<Vec<GaussianRational>> = self.reps[n].clone();
        cols.extend(self.boundaries[n].basis().iter().cloned());
        let m = ExactMatrix::from_columns(cols, self.ce.dim_of_degree(n));
        let sol = m.solve(v).expect("closed form must decompose");
        Some(sol[..h_dim].to_vec())
    }

    /// Cup product of chosen representatives `[a] in H^m`, `[b] in H^n`,
    /// expressed in the H^{m+n} basis.
    pub fn cup(&self, m: usize, a_idx: usize, n: usize, b_idx: usize) -> Vec<GaussianRational> {
        let a = Multivector::from_coords(4, &self.ce.bases[m], &self.reps[m][a_idx]);
        let b = Multivector::from_coords(4, &self.ce.bases[n], &self.reps[n][b_idx]);
        let w = a.wedge(&b).coords(&self.ce.bases[m + n]);
        self.class_coords(m + n, &w)
            .expect("wedge of closed forms is closed")
    }

    /// Poincare duality pattern `b^n = b^{4-n}` with `b^0 = b^4 = 1`.
    pub fn has_poincare_duality(&self) -> bool {
        self.betti[0] == 1 && self.betti[4] == 1 && self.betti[1] == self.betti[3]
    }
}

/// The intersection form of H^2 against a chosen orientation class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionForm {
    pub matrix: ExactMatrix,
    pub b_plus: usize,
    pub b_minus: usize,
    pub b_zero: usize,
    pub sigma: i64,
}

/// Pairing matrix `M_ab` with `[alpha_a ^ alpha_b] = M_ab [orientation]` on
/// H^4, plus its Sylvester signature. The orientation is a degree-4 form
/// given in top-degree coordinates; it must represent a nonzero class.
pub fn intersection_form(
    ring: &CohomologyRing,
    orientation: &[GaussianRational],
) -> Result<IntersectionForm, CdgaError> {
    if ring.betti[4] != 1 {
        return Err(CdgaError::TopCohomologyNotLine(ring.betti[4]));
    }
    let orient_class = ring
        .class_coords(4, orientation)
        .ok_or(CdgaError::DegenerateOrientation)?;
    let lambda = orient_class[0].clone();
    if lambda.is_zero() {
        return Err(CdgaError::DegenerateOrientation);
    }
    let b2 = ring.betti[2];
    let mut m = ExactMatrix::zeros(b2, b2);
    for a in 0..b2 {
        for b in 0..b2 {
            let w = ring.cup(2, a, 2, b);
            m.set(a, b, &w[0] / &lambda);
        }
    }
    let (b_plus, b_minus, b_zero) = congruence_signature(&m).expect("real symmetric pairing");
    Ok(IntersectionForm {
        matrix: m,
        b_plus,
        b_minus,
        b_zero,
        sigma: b_plus as i64 - b_minus as i64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{filiform, kodaira_thurston, torus};
    use crate::scalar::GaussianRational as G;

    fn complex_of(p: crate::lie::LieAlgebraPresentation) -> CEComplex {
        CEComplex::build(&p.validate(false).unwrap()).unwrap()
    }

    #[test]
    fn abelian_differential_vanishes() {
        let ce = complex_of(torus());
        for n in 0..=4 {
            assert!(ce.d[n].is_zero());
        }
    }

    #[test]
    fn filiform_differential_on_generators() {
        let ce = complex_of(filiform());
        // dx3 = -x1^x2, dx4 = -x1^x3, dx1 = dx2 = 0
        let d1 = &ce.d[1];
        assert!(d1.column(0).iter().all(G::is_zero));
        assert!(d1.column(1).iter().all(G::is_zero));
        // degree-2 basis order: x12, x13, x14, x23, x24, x34
        assert_eq!(d1.column(2)[0], G::from_int(-1));
        assert!(d1.column(2)[1..].iter().all(G::is_zero));
        assert_eq!(d1.column(3)[1], G::from_int(-1));
    }

    #[test]
    fn kodaira_thurston_differential_sign() {
        let ce = complex_of(kodaira_thurston());
        // [X,Y] = -Z gives dz = +x^y
        assert_eq!(ce.d[1].column(2)[0], G::from_int(1));
    }

    #[test]
    fn betti_numbers_of_corpus() {
        assert_eq!(betti_numbers(&complex_of(filiform())), [1, 2, 2, 2, 1]);
        assert_eq!(
            betti_numbers(&complex_of(kodaira_thurston())),
            [1, 3, 4, 3, 1]
        );
        assert_eq!(betti_numbers(&complex_of(torus())), [1, 4, 6, 4, 1]);
    }

    #[test]
    fn euler_characteristic_vanishes() {
        for p in [filiform(), kodaira_thurston(), torus()] {
            let b = betti_numbers(&complex_of(p));
            let e: i64 = (0..=4)
                .map(|n| (if n % 2 == 0 { 1 } else { -1 }) * b[n] as i64)
                .sum();
            assert_eq!(e, 0);
        }
    }

    fn volume_orientation(ce: &CEComplex) -> Vec<G> {
        let dim = ce.dim_of_degree(4);
        let mut v = vec![G::zero(); dim];
        v[0] = G::one();
        v
    }

    #[test]
    fn intersection_form_signatures() {
        for (p, expect) in [
            (filiform(), (1usize, 1usize)),
            (kodaira_thurston(), (2, 2)),
            (torus(), (3, 3)),
        ] {
            let ce = complex_of(p);
            let ring = CohomologyRing::build(&ce);
            let form = intersection_form(&ring, &volume_orientation(&ce)).unwrap();
            assert_eq!((form.b_plus, form.b_minus), expect);
            assert_eq!(form.b_zero, 0);
            assert_eq!(form.sigma, 0);
            assert!(form.matrix.is_symmetric());
        }
    }

    #[test]
    fn orientation_reversal_swaps_signature() {
        let ce = complex_of(kodaira_thurston());
        let ring = CohomologyRing::build(&ce);
        let pos = volume_orientation(&ce);
        let neg: Vec<G> = pos.iter().map(|v| -v).collect();
        let f1 = intersection_form(&ring, &pos).unwrap();
        let f2 = intersection_form(&ring, &neg).unwrap();
        assert_eq!(f1.b_plus, f2.b_minus);
        assert_eq!(f1.b_minus, f2.b_plus);
        assert_eq!(f1.sigma, -f2.sigma);
    }

    #[test]
    fn degenerate_orientation_is_rejected() {
        let ce = complex_of(torus());
        let ring = CohomologyRing::build(&ce);
        let zero = vec![G::zero(); 1];
        assert_eq!(
            intersection_form(&ring, &zero),
            Err(CdgaError::DegenerateOrientation)
        );
    }

    #[test]
    fn poincare_duality_on_corpus() {
        for p in [filiform(), kodaira_thurston(), torus()] {
            let ring = CohomologyRing::build(&complex_of(p));
            assert!(ring.has_poincare_duality());
        }
    }

    #[test]
    fn class_coords_of_boundary_vanish() {
        let ce = complex_of(filiform());
        let ring = CohomologyRing::build(&ce);
        // dx3 = -x1^x2 is exact, so its class is zero
        let mut v = vec![G::zero(); 6];
        v[0] = G::from_int(-1);
        let coords = ring.class_coords(2, &v).unwrap();
        assert!(coords.iter().all(G::is_zero));
        // x1^x4 is closed and non-exact
        let mut w = vec![G::zero(); 6];
        w[2] = G::one();
        let coords = ring.class_coords(2, &w).unwrap();
        assert!(coords.iter().any(|c| !c.is_zero()));
    }
}

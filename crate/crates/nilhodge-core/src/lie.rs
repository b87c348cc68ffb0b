//! Lie algebra presentations by structure constants, their validation
//! (Jacobi identity, nilpotency), and rational basis changes.

use crate::linalg::{ExactMatrix, Subspace};
use crate::scalar::{GaussianRational, Rational};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("unsupported dimension {0}: the invariant suite works on 4-dimensional algebras")]
    UnsupportedDimension(usize),
    #[error("bad bracket entry [{i},{j}] -> {k}: {reason}")]
    BadIndex {
        i: usize,
        j: usize,
        k: usize,
        reason: String,
    },
    #[error("Jacobi identity fails on the triple (X{0}, X{1}, X{2})")]
    JacobiViolation(usize, usize, usize),
    #[error("the algebra is not nilpotent (lower central series does not reach zero)")]
    NotNilpotent,
    #[error("basis change matrix is singular")]
    SingularBasisChange,
}

/// A finite-dimensional real Lie algebra given by structure constants
/// `[X_i, X_j] = sum_k c^k_{ij} X_k` for `i < j` (1-based indices).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebraPresentation {
    pub name: String,
    pub dimension: usize,
    /// `(i, j) -> coefficient vector of [X_i, X_j]`, keys with `i < j` only.
    brackets: BTreeMap<(usize, usize), Vec<Rational>>,
}

impl LieAlgebraPresentation {
    /// Build from raw entries `(i, j, k, c)` meaning `[X_i, X_j]` has
    /// coefficient `c` on `X_k`. Entries must have `i < j`, indices in range,
    /// and no duplicate `(i, j, k)` triples.
    pub fn new(
        name: impl Into<String>,
        dimension: usize,
        entries: &[(usize, usize, usize, Rational)],
    ) -> Result<Self, LieError> {
        if dimension != 4 {
            return Err(LieError::UnsupportedDimension(dimension));
        }
        let mut brackets: BTreeMap<(usize, usize), Vec<Rational>> = BTreeMap::new();
        let mut seen: BTreeMap<(usize, usize, usize), ()> = BTreeMap::new();
        for &(i, j, k, ref c) in entries {
            let bad = |reason: &str| LieError::BadIndex {
                i,
                j,
                k,
                reason: reason.to_string(),
            };
            if i < 1 || j < 1 || k < 1 || i > dimension || j > dimension || k > dimension {
                return Err(bad("index out of range"));
            }
            if i >= j {
                return Err(bad("entries must be stored with i < j"));
            }
            if seen.insert((i, j, k), ()).is_some() {
                return Err(bad("duplicate entry"));
            }
            let coeffs = brackets
                .entry((i, j))
                .or_insert_with(|| vec![Rational::zero(); dimension]);
            coeffs[k - 1] = c.clone();
        }
        brackets.retain(|_, v| v.iter().any(|c| !c.is_zero()));
        Ok(LieAlgebraPresentation {
            name: name.into(),
            dimension,
            brackets,
        })
    }

    /// The abelian algebra in the given dimension.
    pub fn abelian(name: impl Into<String>, dimension: usize) -> Self {
        LieAlgebraPresentation::new(name, dimension, &[]).expect("abelian presentation")
    }

    pub fn bracket_entries(&self) -> Vec<(usize, usize, usize, Rational)> {
        let mut out = Vec::new();
        for (&(i, j), coeffs) in &self.brackets {
            for (k, c) in coeffs.iter().enumerate() {
                if !c.is_zero() {
                    out.push((i, j, k + 1, c.clone()));
                }
            }
        }
        out
    }

    /// `[X_i, X_j]` for any index order (antisymmetry built in).
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<Rational> {
        let zero = vec![Rational::zero(); self.dimension];
        if i == j {
            return zero;
        }
        let (a, b, sign) = if i < j { (i, j, 1) } else { (j, i, -1) };
        match self.brackets.get(&(a, b)) {
            None => zero,
            Some(c) if sign > 0 => c.clone(),
            Some(c) => c.iter().map(|x| -x.clone()).collect(),
        }
    }

    /// Bilinear extension of the bracket to coordinate vectors.
    pub fn bracket(&self, u: &[Rational], v: &[Rational]) -> Vec<Rational> {
        assert_eq!(u.len(), self.dimension);
        assert_eq!(v.len(), self.dimension);
        let mut out = vec![Rational::zero(); self.dimension];
        for i in 0..self.dimension {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..self.dimension {
                if v[j].is_zero() || i == j {
                    continue;
                }
                let b = self.bracket_basis(i + 1, j + 1);
                let scale = &u[i] * &v[j];
                for (o, bk) in out.iter_mut().zip(&b) {
                    *o += &scale * bk;
                }
            }
        }
        out
    }

    /// First triple violating the Jacobi identity, if any.
    pub fn jacobi_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.dimension;
        let basis = |k: usize| {
            let mut v = vec![Rational::zero(); n];
            v[k - 1] = Rational::one();
            v
        };
        for i in 1..=n {
            for j in i + 1..=n {
                for k in j + 1..=n {
                    let a = self.bracket(&self.bracket(&basis(i), &basis(j)), &basis(k));
                    let b = self.bracket(&self.bracket(&basis(j), &basis(k)), &basis(i));
                    let c = self.bracket(&self.bracket(&basis(k), &basis(i)), &basis(j));
                    let sum: Vec<Rational> = a
                        .iter()
                        .zip(&b)
                        .zip(&c)
                        .map(|((x, y), z)| x + y + z)
                        .collect();
                    if sum.iter().any(|x| !x.is_zero()) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// Whether the lower central series reaches zero.
    pub fn is_nilpotent(&self) -> bool {
        let n = self.dimension;
        let to_gaussian = |v: &[Rational]| -> Vec<GaussianRational> {
            v.iter()
                .map(|r| GaussianRational::from_rational(r.clone()))
                .collect()
        };
        // g_1 = [g, g], g_{k+1} = [g, g_k]; nilpotent iff some g_k = 0.
        let mut current = {
            let mut gens = Vec::new();
            for &(i, j) in self.brackets.keys() {
                gens.push(to_gaussian(&self.bracket_basis(i, j)));
            }
            Subspace::span(n, gens)
        };
        loop {
            if current.dim() == 0 {
                return true;
            }
            let mut gens = Vec::new();
            for i in 1..=n {
                let mut e = vec![Rational::zero(); n];
                e[i - 1] = Rational::one();
                for b in current.basis() {
                    let b_rat: Vec<Rational> = b.iter().map(|g| g.re.clone()).collect();
                    gens.push(to_gaussian(&self.bracket(&e, &b_rat)));
                }
            }
            let next = Subspace::span(n, gens);
            if next.dim() >= current.dim() {
                return false; // series stalled above zero
            }
            current = next;
        }
    }

    /// Full validation: Jacobi always, nilpotency unless explicitly allowed.
    pub fn validate(self, allow_non_nilpotent: bool) -> Result<ValidatedLieAlgebra, LieError> {
        if let Some((i, j, k)) = self.jacobi_witness() {
            return Err(LieError::JacobiViolation(i, j, k));
        }
        let nilpotent = self.is_nilpotent();
        if !nilpotent && !allow_non_nilpotent {
            return Err(LieError::NotNilpotent);
        }
        Ok(ValidatedLieAlgebra {
            presentation: self,
            nilpotent,
        })
    }

    /// Structure constants after the rational basis change `Y_i = sum_a
    /// P[a][i] X_a` (columns of `p` are the new basis vectors).
    pub fn change_basis(&self, name: impl Into<String>, p: &ExactMatrix) -> Result<Self, LieError> {
        let n = self.dimension;
        assert_eq!((p.rows(), p.cols()), (n, n));
        assert!(p.is_real(), "basis change must be rational");
        let p_inv = p.inverse().map_err(|_| LieError::SingularBasisChange)?;
        let col_rat = |m: &ExactMatrix, c: usize| -> Vec<Rational> {
            m.column(c).iter().map(|g| g.re.clone()).collect()
        };
        let mut entries = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                // [Y_i, Y_j] in the old coordinates, then back through P^-1.
                let w = self.bracket(&col_rat(p, i - 1), &col_rat(p, j - 1));
                for k in 1..=n {
                    let mut coeff = Rational::zero();
                    for (c, wc) in w.iter().enumerate() {
                        coeff += p_inv.get(k - 1, c).re.clone() * wc;
                    }
                    if !coeff.is_zero() {
                        entries.push((i, j, k, coeff));
                    }
                }
            }
        }
        LieAlgebraPresentation::new(name, n, &entries)
    }
}

/// A presentation that passed validation, with its nilpotency recorded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidatedLieAlgebra {
    presentation: LieAlgebraPresentation,
    nilpotent: bool,
}

impl ValidatedLieAlgebra {
    pub fn presentation(&self) -> &LieAlgebraPresentation {
        &self.presentation
    }

    pub fn dimension(&self) -> usize {
        self.presentation.dimension
    }

    pub fn is_nilpotent(&self) -> bool {
        self.nilpotent
    }

    pub fn name(&self) -> &str {
        &self.presentation.name
    }
}

/// The two-step filiform algebra: `[X1,X2] = X3`, `[X1,X3] = X4`.
pub fn filiform() -> LieAlgebraPresentation {
    LieAlgebraPresentation::new(
        "filiform",
        4,
        &[
            (1, 2, 3, Rational::from_integer(1.into())),
            (1, 3, 4, Rational::from_integer(1.into())),
        ],
    )
    .expect("filiform presentation")
}

/// Heisenberg x R: `[X1,X2] = -X3` in the basis (X, Y, Z, W).
pub fn kodaira_thurston() -> LieAlgebraPresentation {
    LieAlgebraPresentation::new(
        "kodaira-thurston",
        4,
        &[(1, 2, 3, Rational::from_integer((-1).into()))],
    )
    .expect("kodaira-thurston presentation")
}

/// The abelian algebra underlying the 4-torus.
pub fn torus() -> LieAlgebraPresentation {
    LieAlgebraPresentation::abelian("torus", 4)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::integer;

    #[test]
    fn filiform_is_valid_and_nilpotent() {
        let v = filiform().validate(false).unwrap();
        assert!(v.is_nilpotent());
    }

    #[test]
    fn abelian_is_valid_and_nilpotent() {
        let v = torus().validate(false).unwrap();
        assert!(v.is_nilpotent());
    }

    #[test]
    fn cyclic_series_is_rejected() {
        // [X1,X2] = X3, [X1,X3] = X2: the series cycles inside span{X2, X3}.
        let p = LieAlgebraPresentation::new(
            "cyclic",
            4,
            &[(1, 2, 3, integer(1)), (1, 3, 2, integer(1))],
        )
        .unwrap();
        assert_eq!(p.clone().validate(false), Err(LieError::NotNilpotent));
        assert!(p.validate(true).is_ok());
    }

    #[test]
    fn jacobi_violation_carries_witness() {
        // [X1,X2]=X2, [X1,X3]=X3, [X2,X3]=X1 fails Jacobi on (1,2,3).
        let p = LieAlgebraPresentation::new(
            "bad",
            4,
            &[
                (1, 2, 2, integer(1)),
                (1, 3, 3, integer(1)),
                (2, 3, 1, integer(1)),
            ],
        )
        .unwrap();
        assert_eq!(p.validate(true), Err(LieError::JacobiViolation(1, 2, 3)));
    }

    #[test]
    fn bad_entries_are_rejected() {
        assert!(matches!(
            LieAlgebraPresentation::new("x", 4, &[(2, 1, 3, integer(1))]),
            Err(LieError::BadIndex { .. })
        ));
        assert!(matches!(
            LieAlgebraPresentation::new("x", 4, &[(1, 2, 5, integer(1))]),
            Err(LieError::BadIndex { .. })
        ));
        assert!(matches!(
            LieAlgebraPresentation::new("x", 4, &[(1, 2, 3, integer(1)), (1, 2, 3, integer(2))]),
            Err(LieError::BadIndex { .. })
        ));
        assert!(matches!(
            LieAlgebraPresentation::new("x", 3, &[]),
            Err(LieError::UnsupportedDimension(3))
        ));
    }

    #[test]
    fn antisymmetry_of_bracket() {
        let p = filiform();
        let b12 = p.bracket_basis(1, 2);
        let b21 = p.bracket_basis(2, 1);
        for (a, b) in b12.iter().zip(&b21) {
            assert_eq!(*a, -b.clone());
        }
    }

    #[test]
    fn change_basis_preserves_validity() {
        let p = filiform();
        // Y1 = X1 + X2, Y2 = X2, Y3 = X3, Y4 = X4
        let m = ExactMatrix::from_int_rows(&[
            &[1, 0, 0, 0],
            &[1, 1, 0, 0],
            &[0, 0, 1, 0],
            &[0, 0, 0, 1],
        ]);
        let q = p.change_basis("filiform-moved", &m).unwrap();
        let v = q.clone().validate(false).unwrap();
        assert!(v.is_nilpotent());
        // [Y1, Y2] = [X1 + X2, X2] = X3
        assert_eq!(q.bracket_basis(1, 2)[2], integer(1));
    }

    #[test]
    fn singular_basis_change_fails() {
        let z = ExactMatrix::zeros(4, 4);
        assert_eq!(
            filiform().change_basis("x", &z),
            Err(LieError::SingularBasisChange)
        );
    }
}

//! Almost complex structures on the algebra: the (1,0)/(0,1) coframe, the
//! bigrading of the Chevalley-Eilenberg complex, the splitting of d into its
//! four bidegree components, the d^2 = 0 relations, and integrability.

use crate::cdga::CEComplex;
use crate::exterior::{mask_degree, monomials, Mask, Multivector};
use crate::linalg::{ExactMatrix, Subspace};
use crate::scalar::GaussianRational;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AcsError {
    #[error("J must be a 4x4 matrix, got {rows}x{cols}")]
    BadShape { rows: usize, cols: usize },
    #[error("J must have rational entries")]
    NonRational,
    #[error("J^2 != -Id, not an almost complex structure")]
    JNotComplexStructure,
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

/// A left-invariant almost complex structure: a rational matrix with
/// `J^2 = -Id`, column k holding the coordinates of `J(X_k)`.
#[derive(Clone, Debug)]
pub struct AlmostComplexStructure {
    pub name: String,
    j: ExactMatrix,
}

impl AlmostComplexStructure {
    pub fn new(name: impl Into<String>, j: ExactMatrix) -> Result<Self, AcsError> {
        if j.rows() != 4 || j.cols() != 4 {
            return Err(AcsError::BadShape {
                rows: j.rows(),
                cols: j.cols(),
            });
        }
        if !j.is_real() {
            return Err(AcsError::NonRational);
        }
        if j.mul(&j) != ExactMatrix::identity(4).neg() {
            return Err(AcsError::JNotComplexStructure);
        }
        Ok(AlmostComplexStructure {
            name: name.into(),
            j,
        })
    }

    /// Build from image pairs `J(X_a) = X_b` (1-based), implying
    /// `J(X_b) = -X_a`. Every index must appear exactly once.
    pub fn from_pairs(name: impl Into<String>, pairs: &[(usize, usize)]) -> Result<Self, AcsError> {
        let mut j = ExactMatrix::zeros(4, 4);
        for &(a, b) in pairs {
            j.set(b - 1, a - 1, GaussianRational::one());
            j.set(a - 1, b - 1, -GaussianRational::one());
        }
        AlmostComplexStructure::new(name, j)
    }

    pub fn matrix(&self) -> &ExactMatrix {
        &self.j
    }

    /// The conjugated structure `P J P^{-1}` in the basis changed by `p`.
    pub fn conjugate(&self, name: impl Into<String>, p: &ExactMatrix) -> Result<Self, AcsError> {
        let p_inv = p
            .inverse()
            .map_err(|_| AcsError::InternalInconsistency("singular conjugation".into()))?;
        AlmostComplexStructure::new(name, p.mul(&self.j).mul(&p_inv))
    }

    /// The opposite structure `-J`.
    pub fn opposite(&self) -> Self {
        AlmostComplexStructure {
            name: format!("{}-opposite", self.name),
            j: self.j.neg(),
        }
    }
}

/// The complex coframe: rows of `y_from_x` express (phi1, phi2, phibar1,
/// phibar2) in the real coframe, and `x_from_y` is the inverse expansion.
#[derive(Clone, Debug)]
pub struct ComplexFrame {
    pub y_from_x: ExactMatrix,
    pub x_from_y: ExactMatrix,
}

/// The (1,0)-coframe as the +i eigenspace of the dual action of J, with
/// deterministic normalization: candidates `x^a - i J*(x^a)` are row reduced
/// so leading coefficients are 1 under the fixed coordinate order.
pub fn complex_frame(acs: &AlmostComplexStructure) -> Result<ComplexFrame, AcsError> {
    let j = acs.matrix();
    let i = GaussianRational::i();
    // (J* x^a)(X_k) = J[a][k], so the candidate rows are x^a - i * row_a(J).
    let mut candidates = Vec::new();
    for a in 0..4 {
        let mut row = vec![GaussianRational::zero(); 4];
        for k in 0..4 {
            row[k] = (if k == a {
                GaussianRational::one()
            } else {
                GaussianRational::zero()
            }) - &(&i * j.get(a, k));
        }
        candidates.push(row);
    }
    let span = Subspace::span(4, candidates);
    if span.dim() != 2 {
        return Err(AcsError::InternalInconsistency(format!(
            "(1,0)-coframe has dimension {}, expected 2",
            span.dim()
        )));
    }
    let phi: Vec<Vec<GaussianRational>> = span.basis().to_vec();
    let mut rows = phi.clone();
    for p in &phi {
        rows.push(p.iter().map(GaussianRational::conj).collect());
    }
    let y_from_x = ExactMatrix::from_rows(rows);
    let x_from_y = y_from_x
        .inverse()
        .map_err(|_| AcsError::InternalInconsistency("coframe is not a basis".into()))?;
    Ok(ComplexFrame { y_from_x, x_from_y })
}

/// Dimension of the (p,q) block: C(2,p) * C(2,q) inside the grid, 0 outside.
pub fn block_dim(p: i32, q: i32) -> usize {
    fn c2(k: i32) -> usize {
        match k {
            0 | 2 => 1,
            1 => 2,
            _ => 0,
        }
    }
    if (0..=2).contains(&p) && (0..=2).contains(&q) {
        c2(p) * c2(q)
    } else {
        0
    }
}

/// Monomial basis of the (p,q) block over the complex coframe generators
/// (bits 0,1 = phi1, phi2; bits 2,3 = phibar1, phibar2), lexicographic.
pub fn block_basis(p: i32, q: i32) -> Vec<Mask> {
    if block_dim(p, q) == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for s in monomials(2, p as usize) {
        for t in monomials(2, q as usize) {
            out.push(s | (t << 2));
        }
    }
    out
}

/// Blocks of total degree n, highest filtration column first.
pub fn degree_blocks(n: i32) -> Vec<(i32, i32)> {
    let mut out = Vec::new();
    for p in (0..=2).rev() {
        let q = n - p;
        if block_dim(p, q) > 0 {
            out.push((p, q));
        }
    }
    out
}

/// One bidegree-homogeneous operator, stored blockwise.
#[derive(Clone, Debug)]
pub struct BigradedMap {
    pub dp: i32,
    pub dq: i32,
    blocks: BTreeMap<(i32, i32), ExactMatrix>,
}

impl BigradedMap {
    pub fn new(dp: i32, dq: i32) -> Self {
        BigradedMap {
            dp,
            dq,
            blocks: BTreeMap::new(),
        }
    }

    pub fn insert(&mut self, p: i32, q: i32, m: ExactMatrix) {
        assert_eq!(m.cols(), block_dim(p, q));
        assert_eq!(m.rows(), block_dim(p + self.dp, q + self.dq));
        self.blocks.insert((p, q), m);
    }

    /// The block at (p,q), materializing zeros for absent entries.
    pub fn block(&self, p: i32, q: i32) -> ExactMatrix {
        self.blocks.get(&(p, q)).cloned().unwrap_or_else(|| {
            ExactMatrix::zeros(block_dim(p + self.dp, q + self.dq), block_dim(p, q))
        })
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.values().all(ExactMatrix::is_zero)
    }

    /// `self` after `inner` as operators (apply `inner` first).
    pub fn compose(&self, inner: &BigradedMap) -> BigradedMap {
        let mut out = BigradedMap::new(self.dp + inner.dp, self.dq + inner.dq);
        for p in 0..=2 {
            for q in 0..=2 {
                if block_dim(p, q) == 0 {
                    continue;
                }
                let first = inner.block(p, q);
                let second = self.block(p + inner.dp, q + inner.dq);
                out.blocks.insert((p, q), second.mul(&first));
            }
        }
        out
    }

    pub fn add(&self, other: &BigradedMap) -> BigradedMap {
        assert_eq!((self.dp, self.dq), (other.dp, other.dq));
        let mut out = BigradedMap::new(self.dp, self.dq);
        for p in 0..=2 {
            for q in 0..=2 {
                if block_dim(p, q) == 0 {
                    continue;
                }
                out.blocks
                    .insert((p, q), self.block(p, q).add(&other.block(p, q)));
            }
        }
        out
    }
}

/// The bigraded Chevalley-Eilenberg complex of a frame: per-block bases, the
/// four components of d, the assembled per-degree differential in coframe
/// coordinates, and the change of basis back to real-coframe coordinates.
#[derive(Clone, Debug)]
pub struct BigradedComplex {
    pub frame: ComplexFrame,
    pub mubar: BigradedMap,
    pub delbar: BigradedMap,
    pub del: BigradedMap,
    pub mu: BigradedMap,
    /// Total differential per degree in block coordinates; index n = 0..=4.
    pub total_d: Vec<ExactMatrix>,
    /// Change of basis per degree: columns are real-coframe coordinates of
    /// the block-ordered monomials.
    pub x_from_y_deg: Vec<ExactMatrix>,
    ce: CEComplex,
}

impl BigradedComplex {
    pub fn ce(&self) -> &CEComplex {
        &self.ce
    }

    pub fn total_dim(&self, n: i32) -> usize {
        degree_blocks(n).iter().map(|&(p, q)| block_dim(p, q)).sum()
    }

    /// Offset of the (p,q) block inside the degree p+q coordinate vector.
    pub fn block_offset(&self, p: i32, q: i32) -> usize {
        let mut off = 0;
        for &(bp, bq) in &degree_blocks(p + q) {
            if (bp, bq) == (p, q) {
                return off;
            }
            off += block_dim(bp, bq);
        }
        panic!("block ({p},{q}) not present in degree {}", p + q);
    }

    /// The component of bidegree (dp, dq), if it is one of the four.
    pub fn component(&self, dp: i32, dq: i32) -> Option<&BigradedMap> {
        match (dp, dq) {
            (-1, 2) => Some(&self.mubar),
            (0, 1) => Some(&self.delbar),
            (1, 0) => Some(&self.del),
            (2, -1) => Some(&self.mu),
            _ => None,
        }
    }

    /// Embed a block subspace into total-degree coordinates.
    pub fn embed_block(&self, p: i32, q: i32, sub: &Subspace) -> Subspace {
        let n = p + q;
        let total = self.total_dim(n);
        let off = self.block_offset(p, q);
        let vecs = sub
            .basis()
            .iter()
            .map(|v| {
                let mut w = vec![GaussianRational::zero(); total];
                w[off..off + v.len()].clone_from_slice(v);
                w
            })
            .collect();
        Subspace::span(total, vecs)
    }

    /// The coordinate subspace of a whole block inside its total degree.
    pub fn block_coordinate_subspace(&self, p: i32, q: i32) -> Subspace {
        Subspace::coordinate_block(
            self.total_dim(p + q),
            self.block_offset(p, q),
            block_dim(p, q),
        )
    }

    /// Check that the four components reassemble the differential exactly:
    /// `T_{n+1} D_n = d_n T_n` for every degree.
    pub fn reassembles_differential(&self) -> bool {
        (0..=3).all(|n| {
            let lhs = self.x_from_y_deg[n + 1].mul(&self.total_d[n]);
            let rhs = self.ce.d[n].mul(&self.x_from_y_deg[n]);
            lhs == rhs
        })
    }

    /// Conjugation intertwines mubar with mu and delbar with del; checked as
    /// exact matrix identities through the signed conjugation permutations.
    pub fn conjugation_symmetry_holds(&self) -> bool {
        let check = |barred: &BigradedMap, plain: &BigradedMap| {
            for p in 0..=2 {
                for q in 0..=2 {
                    if block_dim(p, q) == 0 {
                        continue;
                    }
                    let (tp, tq) = (p + barred.dp, q + barred.dq);
                    let lhs = conjugation_block(tp, tq).mul(&barred.block(p, q).conj());
                    let rhs = plain.block(q, p).mul(&conjugation_block(p, q));
                    if lhs != rhs {
                        return false;
                    }
                }
            }
            true
        };
        check(&self.mubar, &self.mu) && check(&self.delbar, &self.del)
    }
}

/// Signed permutation of conjugation `A^{p,q} -> A^{q,p}`: swap barred and
/// unbarred generators and reorder, picking up `(-1)^{pq}`.
pub fn conjugation_block(p: i32, q: i32) -> ExactMatrix {
    let src = block_basis(p, q);
    let dst = block_basis(q, p);
    let mut k = ExactMatrix::zeros(dst.len(), src.len());
    let sign = if (p * q) % 2 == 0 {
        GaussianRational::one()
    } else {
        -GaussianRational::one()
    };
    for (col, &m) in src.iter().enumerate() {
        let unbarred = m & 0b0011;
        let barred = (m & 0b1100) >> 2;
        let image = barred | (unbarred << 2);
        let row = dst
            .iter()
            .position(|&d| d == image)
            .expect("conjugate monomial in target basis");
        k.set(row, col, sign.clone());
    }
    k
}

/// Split the differential through the frame into its four components.
pub fn split_differential(
    frame: &ComplexFrame,
    ce: &CEComplex,
) -> Result<BigradedComplex, AcsError> {
    let y_images: Vec<Multivector> = (0..4)
        .map(|a| Multivector::from_coords(4, &[1, 2, 4, 8], frame.y_from_x.row(a)))
        .collect();
    let x_images: Vec<Multivector> = (0..4)
        .map(|k| Multivector::from_coords(4, &[1, 2, 4, 8], frame.x_from_y.row(k)))
        .collect();

    let mut mubar = BigradedMap::new(-1, 2);
    let mut delbar = BigradedMap::new(0, 1);
    let mut del = BigradedMap::new(1, 0);
    let mut mu = BigradedMap::new(2, -1);

    for p in 0..=2i32 {
        for q in 0..=2i32 {
            let src = block_basis(p, q);
            if src.is_empty() {
                continue;
            }
            let targets: [(i32, i32); 4] = [(p - 1, q + 2), (p, q + 1), (p + 1, q), (p + 2, q - 1)];
            let mut cols: [Vec<Vec<GaussianRational>>; 4] =
                [Vec::new(), Vec::new(), Vec::new(), Vec::new()];
            for &m in &src {
                let m_y = Multivector::from_coords(4, &[m], &[GaussianRational::one()]);
                let m_x = m_y.substitute(&y_images);
                let dm_y = ce.d_multivector(&m_x).substitute(&x_images);
                let mut per_target: [Vec<GaussianRational>; 4] = [
                    vec![GaussianRational::zero(); block_dim(p - 1, q + 2)],
                    vec![GaussianRational::zero(); block_dim(p, q + 1)],
                    vec![GaussianRational::zero(); block_dim(p + 1, q)],
                    vec![GaussianRational::zero(); block_dim(p + 2, q - 1)],
                ];
                for (&mask, c) in dm_y.terms() {
                    let tp = mask_degree(mask & 0b0011) as i32;
                    let tq = mask_degree(mask & 0b1100) as i32;
                    let Some(slot) = targets.iter().position(|&t| t == (tp, tq)) else {
                        return Err(AcsError::InternalInconsistency(format!(
                            "stray component of bidegree ({tp},{tq}) from block ({p},{q})"
                        )));
                    };
                    let basis = block_basis(tp, tq);
                    let pos = basis
                        .iter()
                        .position(|&b| b == mask)
                        .expect("mask in block basis");
                    per_target[slot][pos] = c.clone();
                }
                for (slot, col) in per_target.into_iter().enumerate() {
                    cols[slot].push(col);
                }
            }
            let [c0, c1, c2, c3] = cols;
            mubar.insert(p, q, ExactMatrix::from_columns(c0, block_dim(p - 1, q + 2)));
            delbar.insert(p, q, ExactMatrix::from_columns(c1, block_dim(p, q + 1)));
            del.insert(p, q, ExactMatrix::from_columns(c2, block_dim(p + 1, q)));
            mu.insert(p, q, ExactMatrix::from_columns(c3, block_dim(p + 2, q - 1)));
        }
    }

    // Assemble the per-degree differential and the change of basis.
    let mut total_d = Vec::new();
    let mut x_from_y_deg = Vec::new();
    for n in 0..=4i32 {
        let src_blocks = degree_blocks(n);
        let total_src: usize = src_blocks.iter().map(|&(p, q)| block_dim(p, q)).sum();
        let dst_blocks = degree_blocks(n + 1);
        let total_dst: usize = dst_blocks.iter().map(|&(p, q)| block_dim(p, q)).sum();
        let mut dn = ExactMatrix::zeros(total_dst, total_src);
        let offset_of = |blocks: &[(i32, i32)], p: i32, q: i32| -> usize {
            let mut off = 0;
            for &(bp, bq) in blocks {
                if (bp, bq) == (p, q) {
                    return off;
                }
                off += block_dim(bp, bq);
            }
            unreachable!("block offset")
        };
        for &(p, q) in &src_blocks {
            let src_off = offset_of(&src_blocks, p, q);
            for map in [&mubar, &delbar, &del, &mu] {
                let (tp, tq) = (p + map.dp, q + map.dq);
                if block_dim(tp, tq) == 0 {
                    continue;
                }
                let blk = map.block(p, q);
                let dst_off = offset_of(&dst_blocks, tp, tq);
                for r in 0..blk.rows() {
                    for c in 0..blk.cols() {
                        dn.set(dst_off + r, src_off + c, blk.get(r, c).clone());
                    }
                }
            }
        }
        total_d.push(dn);

        let mut t_cols = Vec::new();
        for &(p, q) in &src_blocks {
            for &m in &block_basis(p, q) {
                let m_y = Multivector::from_coords(4, &[m], &[GaussianRational::one()]);
                let m_x = m_y.substitute(&y_images);
                t_cols.push(m_x.coords(&ce.bases[n as usize]));
            }
        }
        x_from_y_deg.push(ExactMatrix::from_columns(
            t_cols,
            ce.dim_of_degree(n as usize),
        ));
    }

    let complex = BigradedComplex {
        frame: frame.clone(),
        mubar,
        delbar,
        del,
        mu,
        total_d,
        x_from_y_deg,
        ce: ce.clone(),
    };
    if !complex.reassembles_differential() {
        return Err(AcsError::InternalInconsistency(
            "components do not reassemble the differential".into(),
        ));
    }
    Ok(complex)
}

/// The seven operator identities equivalent to d^2 = 0 on a bigraded complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct D2Relations {
    pub mu_mu: bool,
    pub mu_del: bool,
    pub mu_delbar_del2: bool,
    pub mixed: bool,
    pub mubar_del_delbar2: bool,
    pub mubar_delbar: bool,
    pub mubar_mubar: bool,
}

impl D2Relations {
    pub fn all_hold(&self) -> bool {
        self.mu_mu
            && self.mu_del
            && self.mu_delbar_del2
            && self.mixed
            && self.mubar_del_delbar2
            && self.mubar_delbar
            && self.mubar_mubar
    }

    pub fn named(&self) -> [(&'static str, bool); 7] {
        [
            ("mu mu = 0", self.mu_mu),
            ("mu del + del mu = 0", self.mu_del),
            ("mu delbar + delbar mu + del del = 0", self.mu_delbar_del2),
            (
                "mu mubar + del delbar + delbar del + mubar mu = 0",
                self.mixed,
            ),
            (
                "mubar del + del mubar + delbar delbar = 0",
                self.mubar_del_delbar2,
            ),
            ("mubar delbar + delbar mubar = 0", self.mubar_delbar),
            ("mubar mubar = 0", self.mubar_mubar),
        ]
    }
}

/// Evaluate all seven identities as exact matrix identities per block.
pub fn verify_d2_relations(b: &BigradedComplex) -> D2Relations {
    let (mu, mubar, del, delbar) = (&b.mu, &b.mubar, &b.del, &b.delbar);
    D2Relations {
        mu_mu: mu.compose(mu).is_zero(),
        mu_del: mu.compose(del).add(&del.compose(mu)).is_zero(),
        mu_delbar_del2: mu
            .compose(delbar)
            .add(&delbar.compose(mu))
            .add(&del.compose(del))
            .is_zero(),
        mixed: mu
            .compose(mubar)
            .add(&del.compose(delbar))
            .add(&delbar.compose(del))
            .add(&mubar.compose(mu))
            .is_zero(),
        mubar_del_delbar2: mubar
            .compose(del)
            .add(&del.compose(mubar))
            .add(&delbar.compose(delbar))
            .is_zero(),
        mubar_delbar: mubar.compose(delbar).add(&delbar.compose(mubar)).is_zero(),
        mubar_mubar: mubar.compose(mubar).is_zero(),
    }
}

/// Integrability: mubar vanishes identically (mu is its conjugate and
/// vanishes with it).
pub fn is_integrable(b: &BigradedComplex) -> bool {
    b.mubar.is_zero()
}

/// Coefficient of the J-positive volume form `(i/2)^2 phi1^phibar1^phi2^
/// phibar2` against the real monomial `x1^x2^x3^x4`; real and nonzero for
/// any valid frame.
pub fn orientation_coefficient(frame: &ComplexFrame) -> GaussianRational {
    let y: Vec<Multivector> = (0..4)
        .map(|a| Multivector::from_coords(4, &[1, 2, 4, 8], frame.y_from_x.row(a)))
        .collect();
    // phi1 ^ phibar1 ^ phi2 ^ phibar2 = y1 ^ y3 ^ y2 ^ y4
    let w = y[0].wedge(&y[2]).wedge(&y[1]).wedge(&y[3]);
    let coeff = w.coeff(0b1111);
    let quarter = GaussianRational::from_ratio(-1, 4); // (i/2)^2
    let lambda = &coeff * &quarter;
    assert!(lambda.is_real() && !lambda.is_zero(), "volume coefficient");
    lambda
}

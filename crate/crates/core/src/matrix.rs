//! Dense exact linear algebra: rank, kernel, image, solving, and canonical
//! subspace bases in reduced echelon form.
//!
//! Subspaces of k^n are always stored through their reduced row echelon basis,
//! so equality of subspaces is literal equality of representations. That
//! canonicity is what makes every downstream choice (cocycle representatives,
//! splittings, complements) reproducible.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{FieldSpec, Scalar};

/// A dense `rows × cols` matrix over a fixed field.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl Mat {
    pub fn zero(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Mat {
            field,
            rows,
            cols,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Mat::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat {
            field,
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_cols(field: FieldSpec, ambient: usize, cols: &[Vec<Scalar>]) -> Self {
        let mut m = Mat::zero(field, ambient, cols.len());
        for (j, v) in cols.iter().enumerate() {
            assert_eq!(v.len(), ambient, "column length mismatch");
            for (i, x) in v.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn from_i64_rows(field: FieldSpec, rows: &[&[i64]]) -> Self {
        Mat::from_rows(
            field,
            rows.iter()
                .map(|r| r.iter().map(|&n| field.from_i64(n)).collect())
                .collect(),
        )
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn col(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zero(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.at(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Mat) -> Mat {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let f = self.field;
        let mut out = Mat::zero(f, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let add = f.mul(a, rhs.at(k, j));
                    let cur = f.add(out.at(i, j), &add);
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        let f = self.field;
        let mut out = vec![f.zero(); self.rows];
        for j in 0..self.cols {
            if v[j].is_zero() {
                continue;
            }
            for i in 0..self.rows {
                out[i] = f.add(&out[i], &f.mul(self.at(i, j), &v[j]));
            }
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Mat {
        let mut out = self.clone();
        for e in &mut out.entries {
            *e = self.field.mul(e, c);
        }
        out
    }

    pub fn add(&self, rhs: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut out = self.clone();
        for (e, r) in out.entries.iter_mut().zip(&rhs.entries) {
            *e = self.field.add(e, r);
        }
        out
    }

    /// Horizontal concatenation `[self | rhs]`.
    pub fn hstack(&self, rhs: &Mat) -> Mat {
        assert_eq!(self.rows, rhs.rows);
        let mut out = Mat::zero(self.field, self.rows, self.cols + rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.at(i, j).clone());
            }
            for j in 0..rhs.cols {
                out.set(i, self.cols + j, rhs.at(i, j).clone());
            }
        }
        out
    }

    /// In-place Gauss-Jordan reduction to reduced row echelon form.
    /// Returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let f = self.field;
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self.at(r, col).is_zero()) else {
                continue;
            };
            if p != row {
                for j in 0..self.cols {
                    let a = self.at(row, j).clone();
                    let b = self.at(p, j).clone();
                    self.set(row, j, b);
                    self.set(p, j, a);
                }
            }
            let inv = f.inv(self.at(row, col));
            for j in col..self.cols {
                let v = f.mul(self.at(row, j), &inv);
                self.set(row, j, v);
            }
            for r in 0..self.rows {
                if r == row || self.at(r, col).is_zero() {
                    continue;
                }
                let factor = self.at(r, col).clone();
                for j in col..self.cols {
                    let v = f.sub(self.at(r, j), &f.mul(&factor, self.at(row, j)));
                    self.set(r, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} over {}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.at(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// A subspace of k^n through its canonical reduced-echelon basis.
///
/// The basis vectors are the nonzero rows of the RREF of any spanning set,
/// stored as column vectors; two equal subspaces always compare equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceBasis {
    field: FieldSpec,
    ambient_dim: usize,
    vectors: Vec<Vec<Scalar>>,
    echelon_pivots: Vec<usize>,
}

impl SubspaceBasis {
    /// Canonicalizes a spanning set of vectors into an echelon basis.
    pub fn from_spanning(field: FieldSpec, ambient_dim: usize, spanning: &[Vec<Scalar>]) -> Self {
        for v in spanning {
            assert_eq!(v.len(), ambient_dim, "vector length mismatch");
        }
        let mut m = Mat::from_rows(field, spanning.to_vec());
        if m.cols() == 0 {
            m = Mat::zero(field, spanning.len(), ambient_dim);
        }
        let pivots = m.rref();
        let vectors = (0..pivots.len())
            .map(|i| (0..ambient_dim).map(|j| m.at(i, j).clone()).collect())
            .collect();
        SubspaceBasis {
            field,
            ambient_dim,
            vectors,
            echelon_pivots: pivots,
        }
    }

    pub fn zero(field: FieldSpec, ambient_dim: usize) -> Self {
        SubspaceBasis {
            field,
            ambient_dim,
            vectors: Vec::new(),
            echelon_pivots: Vec::new(),
        }
    }

    pub fn full(field: FieldSpec, ambient_dim: usize) -> Self {
        let id = Mat::identity(field, ambient_dim);
        SubspaceBasis::from_spanning(field, ambient_dim, &(0..ambient_dim).map(|j| id.col(j)).collect::<Vec<_>>())
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[Vec<Scalar>] {
        &self.vectors
    }

    pub fn pivots(&self) -> &[usize] {
        &self.echelon_pivots
    }

    /// Membership test by reduction against the echelon basis.
    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.coords_of(v).is_some()
    }

    /// Expresses `v` in the echelon basis, if it lies in the subspace.
    pub fn coords_of(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(v.len(), self.ambient_dim);
        let f = self.field;
        let mut rem = v.to_vec();
        let mut coords = Vec::with_capacity(self.vectors.len());
        for (b, &p) in self.vectors.iter().zip(&self.echelon_pivots) {
            let c = rem[p].clone();
            if !c.is_zero() {
                for (r, bv) in rem.iter_mut().zip(b) {
                    *r = f.sub(r, &f.mul(&c, bv));
                }
            }
            coords.push(c);
        }
        if rem.iter().all(Scalar::is_zero) {
            Some(coords)
        } else {
            None
        }
    }

    /// Whether `self` is contained in `other`.
    pub fn subset_of(&self, other: &SubspaceBasis) -> bool {
        self.vectors.iter().all(|v| other.contains(v))
    }

    /// Canonical basis of the sum `self + other`.
    pub fn sum(&self, other: &SubspaceBasis) -> Result<SubspaceBasis> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch(format!(
                "subspace sum: ambient {} vs {}",
                self.ambient_dim, other.ambient_dim
            )));
        }
        let mut span = self.vectors.clone();
        span.extend(other.vectors.iter().cloned());
        Ok(SubspaceBasis::from_spanning(self.field, self.ambient_dim, &span))
    }
}

/// Rank together with canonical kernel and image bases of a matrix.
pub fn rank_kernel_image(m: &Mat) -> (usize, SubspaceBasis, SubspaceBasis) {
    let f = m.field();
    let mut r = m.clone();
    let pivots = r.rref();
    let rank = pivots.len();

    // Kernel: one vector per free column, free coordinate set to 1.
    let mut kernel_vecs = Vec::new();
    for j in 0..m.cols() {
        if pivots.contains(&j) {
            continue;
        }
        let mut v = vec![f.zero(); m.cols()];
        v[j] = f.one();
        for (row, &p) in pivots.iter().enumerate() {
            v[p] = f.neg(r.at(row, j));
        }
        kernel_vecs.push(v);
    }
    let kernel = SubspaceBasis::from_spanning(f, m.cols(), &kernel_vecs);

    let image_vecs: Vec<Vec<Scalar>> = (0..m.cols()).map(|j| m.col(j)).collect();
    let image = SubspaceBasis::from_spanning(f, m.rows(), &image_vecs);
    debug_assert_eq!(rank + kernel.dim(), m.cols());
    debug_assert_eq!(image.dim(), rank);
    (rank, kernel, image)
}

/// Solves `m · x = b`. Returns the canonical particular solution with all
/// free variables set to zero, or `None` when the system is inconsistent.
pub fn solve(m: &Mat, b: &[Scalar]) -> Option<Vec<Scalar>> {
    assert_eq!(m.rows(), b.len(), "solve: rhs length mismatch");
    let f = m.field();
    let rhs = Mat::from_cols(f, b.len(), &[b.to_vec()]);
    let mut aug = m.hstack(&rhs);
    let pivots = aug.rref();
    if pivots.contains(&m.cols()) {
        return None; // pivot in the constant column
    }
    let mut x = vec![f.zero(); m.cols()];
    for (row, &p) in pivots.iter().enumerate() {
        x[p] = aug.at(row, m.cols()).clone();
    }
    Some(x)
}

/// Deterministic complement: extends `sub` to `inside` by greedily adding
/// basis vectors of `inside` in echelon order.
pub fn complement(sub: &SubspaceBasis, inside: &SubspaceBasis) -> Result<SubspaceBasis> {
    if sub.ambient_dim() != inside.ambient_dim() {
        return Err(Error::DimensionMismatch(format!(
            "complement: ambient {} vs {}",
            sub.ambient_dim(),
            inside.ambient_dim()
        )));
    }
    if !sub.subset_of(inside) {
        return Err(Error::NotContained);
    }
    let f = sub.field();
    let mut accum = sub.vectors().to_vec();
    let mut chosen = Vec::new();
    let mut current = SubspaceBasis::from_spanning(f, sub.ambient_dim(), &accum);
    for v in inside.vectors() {
        if current.dim() == inside.dim() {
            break;
        }
        if !current.contains(v) {
            accum.push(v.clone());
            chosen.push(v.clone());
            current = SubspaceBasis::from_spanning(f, sub.ambient_dim(), &accum);
        }
    }
    Ok(SubspaceBasis::from_spanning(f, sub.ambient_dim(), &chosen))
}

/// Canonical basis of the intersection, via the kernel of the stacked system.
pub fn intersect(a: &SubspaceBasis, b: &SubspaceBasis) -> Result<SubspaceBasis> {
    if a.ambient_dim() != b.ambient_dim() {
        return Err(Error::DimensionMismatch(format!(
            "intersect: ambient {} vs {}",
            a.ambient_dim(),
            b.ambient_dim()
        )));
    }
    let f = a.field();
    let n = a.ambient_dim();
    if a.dim() == 0 || b.dim() == 0 {
        return Ok(SubspaceBasis::zero(f, n));
    }
    // Solve A·s = B·t: kernel of [A | -B].
    let ma = Mat::from_cols(f, n, a.vectors());
    let mb = Mat::from_cols(f, n, b.vectors());
    let stacked = ma.hstack(&mb.scale(&f.from_i64(-1)));
    let (_, kernel, _) = rank_kernel_image(&stacked);
    let vecs: Vec<Vec<Scalar>> = kernel
        .vectors()
        .iter()
        .map(|st| ma.apply(&st[..a.dim()]))
        .collect();
    Ok(SubspaceBasis::from_spanning(f, n, &vecs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    #[test]
    fn rank_kernel_image_zero_matrix() {
        let m = Mat::zero(q(), 2, 3);
        let (rank, kernel, image) = rank_kernel_image(&m);
        assert_eq!(rank, 0);
        assert_eq!(kernel.dim(), 3);
        assert_eq!(image.dim(), 0);
    }

    #[test]
    fn rank_kernel_image_identity() {
        let m = Mat::identity(q(), 4);
        let (rank, kernel, _) = rank_kernel_image(&m);
        assert_eq!(rank, 4);
        assert_eq!(kernel.dim(), 0);
    }

    #[test]
    fn rank_one_kernel_by_hand() {
        // [[1,2],[2,4]]: rank 1, kernel spanned by (-2, 1).
        let m = Mat::from_i64_rows(q(), &[&[1, 2], &[2, 4]]);
        let (rank, kernel, image) = rank_kernel_image(&m);
        assert_eq!(rank, 1);
        assert_eq!(kernel.dim(), 1);
        let expected = SubspaceBasis::from_spanning(
            q(),
            2,
            &[vec![q().from_i64(-2), q().from_i64(1)]],
        );
        assert_eq!(kernel, expected);
        assert_eq!(image.dim(), 1);
    }

    #[test]
    fn solve_identity_and_unsolvable() {
        let id = Mat::identity(q(), 3);
        let b = vec![q().from_i64(1), q().from_i64(-2), q().from_i64(5)];
        assert_eq!(solve(&id, &b).unwrap(), b);

        let z = Mat::zero(q(), 2, 2);
        let b = vec![q().from_i64(1), q().from_i64(0)];
        assert!(solve(&z, &b).is_none());
    }

    #[test]
    fn solve_free_variable_canonical() {
        // [[1,1]] x = (3) -> (3, 0)
        let m = Mat::from_i64_rows(q(), &[&[1, 1]]);
        let x = solve(&m, &[q().from_i64(3)]).unwrap();
        assert_eq!(x, vec![q().from_i64(3), q().from_i64(0)]);
    }

    #[test]
    fn complement_trivial_cases() {
        let full = SubspaceBasis::full(q(), 3);
        let zero = SubspaceBasis::zero(q(), 3);
        assert_eq!(complement(&full, &full).unwrap().dim(), 0);
        assert_eq!(complement(&zero, &full).unwrap(), full);
    }

    #[test]
    fn complement_greedy_rule() {
        // span(e1+e2) inside k^2 extends by e1 under the greedy rule.
        let sub = SubspaceBasis::from_spanning(q(), 2, &[vec![q().one(), q().one()]]);
        let inside = SubspaceBasis::full(q(), 2);
        let comp = complement(&sub, &inside).unwrap();
        assert_eq!(comp.dim(), 1);
        assert_eq!(comp.vectors()[0], vec![q().one(), q().zero()]);
        assert!(complement(&inside, &sub).is_err());
    }

    #[test]
    fn intersect_cases() {
        let f = q();
        let e = |j: usize| {
            let mut v = vec![f.zero(); 3];
            v[j] = f.one();
            v
        };
        let a = SubspaceBasis::from_spanning(f, 3, &[e(0), e(1)]);
        let b = SubspaceBasis::from_spanning(f, 3, &[e(1), e(2)]);
        let i = intersect(&a, &b).unwrap();
        assert_eq!(i, SubspaceBasis::from_spanning(f, 3, &[e(1)]));
        assert_eq!(intersect(&a, &a).unwrap(), a);

        let l1 = SubspaceBasis::from_spanning(f, 3, &[e(0)]);
        let l2 = SubspaceBasis::from_spanning(f, 3, &[e(1)]);
        assert_eq!(intersect(&l1, &l2).unwrap().dim(), 0);
    }
}

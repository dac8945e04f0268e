//! Complexes of finite-dimensional vector spaces and their cohomology with
//! canonical representatives.

use std::collections::BTreeMap;
use std::fmt;

use crate::dga::El;
use crate::error::{Error, Result};
use crate::matrix::{complement, rank_kernel_image, solve, Mat, SubspaceBasis};
use crate::scalar::{FieldSpec, Scalar};

/// A bounded complex of k-vector spaces with explicit differentials.
#[derive(Clone, Debug)]
pub struct KComplex {
    field: FieldSpec,
    dims: BTreeMap<i32, usize>,
    diffs: BTreeMap<i32, Mat>,
}

impl KComplex {
    pub fn new(field: FieldSpec, mut dims: BTreeMap<i32, usize>, mut diffs: BTreeMap<i32, Mat>) -> Result<Self> {
        dims.retain(|_, d| *d > 0);
        for (&i, m) in &diffs {
            let src = dims.get(&i).copied().unwrap_or(0);
            let tgt = dims.get(&(i + 1)).copied().unwrap_or(0);
            if m.rows() != tgt || m.cols() != src {
                return Err(Error::DimensionMismatch(format!(
                    "complex differential at degree {i}: {}x{} but pieces have dims {tgt}, {src}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        diffs.retain(|_, m| !m.is_zero());
        let c = KComplex { field, dims, diffs };
        for &i in c.dims.keys() {
            let comp = c.d_mat(i + 1).mul(&c.d_mat(i));
            if !comp.is_zero() {
                return Err(Error::InvalidModule(format!("d^2 ≠ 0 at degree {i}")));
            }
        }
        Ok(c)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dims(&self) -> &BTreeMap<i32, usize> {
        &self.dims
    }

    pub fn dim(&self, i: i32) -> usize {
        self.dims.get(&i).copied().unwrap_or(0)
    }

    pub fn d_mat(&self, i: i32) -> Mat {
        match self.diffs.get(&i) {
            Some(m) => m.clone(),
            None => Mat::zero(self.field, self.dim(i + 1), self.dim(i)),
        }
    }

    pub fn cohomology(&self) -> Cohomology {
        let mut per_degree = BTreeMap::new();
        for &i in self.dims.keys() {
            let (_, cycles, _) = rank_kernel_image(&self.d_mat(i));
            let (_, _, boundaries) = rank_kernel_image(&self.d_mat(i - 1));
            let reps = complement(&boundaries, &cycles)
                .expect("boundaries lie inside cycles when d^2 = 0");
            per_degree.insert(
                i,
                DegreeCohomology {
                    cycles,
                    boundaries,
                    reps: reps.vectors().to_vec(),
                },
            );
        }
        Cohomology {
            field: self.field,
            per_degree,
        }
    }
}

/// Per-degree cycle/boundary data with canonical representative cocycles
/// (the echelon complement of the boundaries inside the cycles).
#[derive(Clone, Debug)]
pub struct Cohomology {
    field: FieldSpec,
    pub per_degree: BTreeMap<i32, DegreeCohomology>,
}

#[derive(Clone, Debug)]
pub struct DegreeCohomology {
    pub cycles: SubspaceBasis,
    pub boundaries: SubspaceBasis,
    pub reps: Vec<Vec<Scalar>>,
}

impl Cohomology {
    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self, degree: i32) -> usize {
        self.per_degree.get(&degree).map_or(0, |dc| dc.reps.len())
    }

    pub fn total_dim(&self) -> usize {
        self.per_degree.values().map(|dc| dc.reps.len()).sum()
    }

    pub fn reps(&self, degree: i32) -> &[Vec<Scalar>] {
        self.per_degree
            .get(&degree)
            .map(|dc| dc.reps.as_slice())
            .unwrap_or(&[])
    }

    pub fn table(&self) -> CohomologyTable {
        let mut dims = BTreeMap::new();
        let mut reps = BTreeMap::new();
        for (&i, dc) in &self.per_degree {
            if !dc.reps.is_empty() {
                dims.insert(i, dc.reps.len());
                reps.insert(i, dc.reps.clone());
            }
        }
        CohomologyTable { dims, reps }
    }

    /// Coordinates of the class of a cycle in the representative basis,
    /// or `None` if the element is not a cycle.
    pub fn class_of(&self, x: &El) -> Option<Vec<Scalar>> {
        let dc = match self.per_degree.get(&x.degree) {
            Some(dc) => dc,
            None => return x.is_zero().then_some(Vec::new()),
        };
        if !dc.cycles.contains(&x.coeffs) {
            return None;
        }
        let h = dc.reps.len();
        if h == 0 {
            return Some(Vec::new());
        }
        let mut cols: Vec<Vec<Scalar>> = dc.reps.clone();
        cols.extend(dc.boundaries.vectors().iter().cloned());
        let m = Mat::from_cols(self.field, x.coeffs.len(), &cols);
        let sol = solve(&m, &x.coeffs)?;
        Some(sol[..h].to_vec())
    }

    /// Whether a cycle represents zero in cohomology.
    pub fn is_boundary(&self, x: &El) -> bool {
        match self.class_of(x) {
            Some(coords) => coords.iter().all(Scalar::is_zero),
            None => false,
        }
    }
}

/// Dimension table of a cohomology computation, with chosen representatives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyTable {
    pub dims: BTreeMap<i32, usize>,
    pub reps: BTreeMap<i32, Vec<Vec<Scalar>>>,
}

impl CohomologyTable {
    pub fn dim(&self, degree: i32) -> usize {
        self.dims.get(&degree).copied().unwrap_or(0)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn inf(&self) -> Option<i32> {
        self.dims.keys().next().copied()
    }

    pub fn sup(&self) -> Option<i32> {
        self.dims.keys().next_back().copied()
    }

    pub fn amplitude(&self) -> Option<i32> {
        Some(self.sup()? - self.inf()?)
    }

    pub fn same_dims(&self, other: &CohomologyTable) -> bool {
        self.dims == other.dims
    }

    /// The table of Σ^n X: degrees move down by `n`.
    pub fn shifted(&self, n: i32) -> CohomologyTable {
        CohomologyTable {
            dims: self.dims.iter().map(|(&d, &v)| (d - n, v)).collect(),
            reps: self.reps.iter().map(|(&d, v)| (d - n, v.clone())).collect(),
        }
    }
}

impl fmt::Display for CohomologyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.dims.is_empty() {
            return write!(f, "H* = 0");
        }
        let parts: Vec<String> = self
            .dims
            .iter()
            .map(|(d, n)| format!("H^{d}=k^{n}"))
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// A degree-0 chain map between complexes, one matrix per degree.
#[derive(Clone, Debug)]
pub struct ComplexMap {
    pub mats: BTreeMap<i32, Mat>,
}

impl ComplexMap {
    pub fn mat(&self, field: FieldSpec, src: &KComplex, tgt: &KComplex, i: i32) -> Mat {
        match self.mats.get(&i) {
            Some(m) => m.clone(),
            None => Mat::zero(field, tgt.dim(i), src.dim(i)),
        }
    }

    /// Verifies the chain condition d ∘ f = f ∘ d in every degree.
    pub fn is_chain_map(&self, src: &KComplex, tgt: &KComplex) -> bool {
        let f = src.field();
        let degrees: std::collections::BTreeSet<i32> = src
            .dims()
            .keys()
            .chain(tgt.dims().keys())
            .copied()
            .collect();
        degrees.iter().all(|&i| {
            let lhs = tgt.d_mat(i).mul(&self.mat(f, src, tgt, i));
            let rhs = self.mat(f, src, tgt, i + 1).mul(&src.d_mat(i));
            lhs.add(&rhs.scale(&f.from_i64(-1))).is_zero()
        })
    }

    /// The induced map on cohomology: for each degree, the matrix sending
    /// source representative classes to coordinates in the target classes.
    pub fn induced_on_cohomology(
        &self,
        src: &KComplex,
        tgt: &KComplex,
        src_h: &Cohomology,
        tgt_h: &Cohomology,
    ) -> Result<BTreeMap<i32, Mat>> {
        let f = src.field();
        let mut out = BTreeMap::new();
        for (&i, dc) in &src_h.per_degree {
            if dc.reps.is_empty() {
                continue;
            }
            let m = self.mat(f, src, tgt, i);
            let mut cols = Vec::new();
            for rep in &dc.reps {
                let img = m.apply(rep);
                let class = tgt_h
                    .class_of(&El {
                        degree: i,
                        coeffs: img,
                    })
                    .ok_or_else(|| Error::Internal("chain map sent a cycle to a non-cycle".into()))?;
                cols.push(class);
            }
            let rows = tgt_h.dim(i);
            let mut mat = Mat::zero(f, rows, cols.len());
            for (j, c) in cols.iter().enumerate() {
                for (r, v) in c.iter().enumerate() {
                    mat.set(r, j, v.clone());
                }
            }
            out.insert(i, mat);
        }
        Ok(out)
    }
}

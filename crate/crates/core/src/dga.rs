//! Finite-dimensional differential graded algebras given by structure
//! constants, together with validation, cohomology rings, tensor products,
//! and opposites.
//!
//! Grading is cohomological: the differential raises degree by 1 and obeys
//! the Leibniz rule d(ab) = d(a)b + (-1)^{|a|} a d(b).

use std::collections::hash_map::DefaultHasher;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::complex::{Cohomology, CohomologyTable, KComplex};
use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::scalar::{FieldSpec, Scalar};

/// A homogeneous element of a graded algebra, as coordinates in the chosen
/// basis of its degree piece.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct El {
    pub degree: i32,
    pub coeffs: Vec<Scalar>,
}

impl El {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }
}

/// Raw constructor input for [`DGAlgebra`].
#[derive(Clone, Debug, Default)]
pub struct DGAlgebraData {
    pub dims: BTreeMap<i32, usize>,
    pub labels: BTreeMap<i32, Vec<String>>,
    pub unit: Vec<Scalar>,
    /// Sparse structure constants: ((i, a), (j, b)) -> coordinates of e_a · e_b
    /// in degree i + j. Missing entries are zero products.
    pub mul: BTreeMap<(i32, usize, i32, usize), Vec<Scalar>>,
    /// Differential matrices d^i: A^i -> A^{i+1} (columns index the source basis).
    pub diff: BTreeMap<i32, Mat>,
}

/// A finite-dimensional DG algebra over an exact field.
#[derive(Clone)]
pub struct DGAlgebra {
    field: FieldSpec,
    lo: i32,
    hi: i32,
    dims: BTreeMap<i32, usize>,
    labels: BTreeMap<i32, Vec<String>>,
    unit: Vec<Scalar>,
    mul: BTreeMap<(i32, usize, i32, usize), Vec<Scalar>>,
    diff: BTreeMap<i32, Mat>,
    content_hash: u64,
    op_of: Option<u64>,
}

impl fmt::Debug for DGAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DGAlgebra over {} with dims {:?}", self.field, self.dims)
    }
}

impl DGAlgebra {
    /// Assembles an algebra from raw data, checking only shape consistency.
    /// Axioms are checked separately by [`DGAlgebra::validate`].
    pub fn from_data(field: FieldSpec, mut data: DGAlgebraData) -> Result<Self> {
        field.validate()?;
        data.dims.retain(|_, d| *d > 0);
        let (lo, hi) = match (data.dims.keys().next(), data.dims.keys().next_back()) {
            (Some(&lo), Some(&hi)) => (lo, hi),
            _ => return Err(Error::InvalidAlgebra("algebra has no basis at all".into())),
        };
        let dim0 = data.dims.get(&0).copied().unwrap_or(0);
        if data.unit.len() != dim0 {
            return Err(Error::InvalidAlgebra(format!(
                "unit vector has length {} but dim A^0 = {dim0}",
                data.unit.len()
            )));
        }
        let mut labels = BTreeMap::new();
        for (&deg, &d) in &data.dims {
            let given = data.labels.remove(&deg);
            let lab = match given {
                Some(l) if l.len() == d => l,
                Some(l) => {
                    return Err(Error::InvalidAlgebra(format!(
                        "degree {deg}: {} labels for {d} basis elements",
                        l.len()
                    )))
                }
                None => (0..d).map(|k| format!("e{deg}_{k}")).collect(),
            };
            labels.insert(deg, lab);
        }
        for (&(i, a, j, b), v) in &data.mul {
            let di = data.dims.get(&i).copied().unwrap_or(0);
            let dj = data.dims.get(&j).copied().unwrap_or(0);
            let dt = data.dims.get(&(i + j)).copied().unwrap_or(0);
            if a >= di || b >= dj {
                return Err(Error::InvalidAlgebra(format!(
                    "mul entry ({i},{a})x({j},{b}) indexes outside the basis"
                )));
            }
            if v.len() != dt {
                return Err(Error::InvalidAlgebra(format!(
                    "mul entry ({i},{a})x({j},{b}) has length {} but dim A^{} = {dt}",
                    v.len(),
                    i + j
                )));
            }
        }
        for (&i, m) in &data.diff {
            let di = data.dims.get(&i).copied().unwrap_or(0);
            let dt = data.dims.get(&(i + 1)).copied().unwrap_or(0);
            if m.rows() != dt || m.cols() != di {
                return Err(Error::InvalidAlgebra(format!(
                    "d^{i} has shape {}x{} but should be {dt}x{di}",
                    m.rows(),
                    m.cols()
                )));
            }
            if m.field() != field {
                return Err(Error::FieldMismatch);
            }
        }
        data.diff.retain(|_, m| !m.is_zero());
        data.mul.retain(|_, v| v.iter().any(|s| !s.is_zero()));
        let mut alg = DGAlgebra {
            field,
            lo,
            hi,
            dims: data.dims,
            labels,
            unit: data.unit,
            mul: data.mul,
            diff: data.diff,
            content_hash: 0,
            op_of: None,
        };
        alg.content_hash = alg.compute_hash();
        Ok(alg)
    }

    /// Assembles and fully validates; the usual entry point for builders.
    pub fn checked(field: FieldSpec, data: DGAlgebraData) -> Result<Self> {
        let alg = Self::from_data(field, data)?;
        let report = alg.validate();
        if report.is_valid() {
            Ok(alg)
        } else {
            Err(Error::InvalidAlgebra(report.to_string()))
        }
    }

    fn compute_hash(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.field.hash(&mut h);
        for (&d, &n) in &self.dims {
            (d, n).hash(&mut h);
        }
        for s in &self.unit {
            s.to_string().hash(&mut h);
        }
        for (&k, v) in &self.mul {
            k.hash(&mut h);
            for s in v {
                s.to_string().hash(&mut h);
            }
        }
        for (&i, m) in &self.diff {
            i.hash(&mut h);
            for r in 0..m.rows() {
                for c in 0..m.cols() {
                    m.at(r, c).to_string().hash(&mut h);
                }
            }
        }
        h.finish()
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn lo(&self) -> i32 {
        self.lo
    }

    pub fn hi(&self) -> i32 {
        self.hi
    }

    pub fn dim(&self, degree: i32) -> usize {
        self.dims.get(&degree).copied().unwrap_or(0)
    }

    pub fn dims(&self) -> &BTreeMap<i32, usize> {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn label(&self, degree: i32, idx: usize) -> &str {
        &self.labels[&degree][idx]
    }

    pub fn labels(&self) -> &BTreeMap<i32, Vec<String>> {
        &self.labels
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn mul_table(&self) -> &BTreeMap<(i32, usize, i32, usize), Vec<Scalar>> {
        &self.mul
    }

    pub fn diff_table(&self) -> &BTreeMap<i32, Mat> {
        &self.diff
    }

    pub fn content_hash(&self) -> u64 {
        self.content_hash
    }

    /// `Some(hash of B)` when this algebra was built as the opposite of B.
    pub fn opposite_of(&self) -> Option<u64> {
        self.op_of
    }

    /// Whether the grading is that of a finite-dimensional simply connected
    /// model: A^{<0} = 0, A^0 = k·1, A^1 = 0.
    pub fn is_simply_connected_model(&self) -> bool {
        self.lo >= 0 && self.dim(0) == 1 && !self.unit[0].is_zero() && self.dim(1) == 0
    }

    pub fn zero_el(&self, degree: i32) -> El {
        El {
            degree,
            coeffs: vec![self.field.zero(); self.dim(degree)],
        }
    }

    pub fn unit_el(&self) -> El {
        El {
            degree: 0,
            coeffs: self.unit.clone(),
        }
    }

    pub fn basis_el(&self, degree: i32, idx: usize) -> El {
        let mut e = self.zero_el(degree);
        e.coeffs[idx] = self.field.one();
        e
    }

    pub fn add_el(&self, x: &El, y: &El) -> El {
        assert_eq!(x.degree, y.degree, "adding elements of different degrees");
        El {
            degree: x.degree,
            coeffs: x
                .coeffs
                .iter()
                .zip(&y.coeffs)
                .map(|(a, b)| self.field.add(a, b))
                .collect(),
        }
    }

    pub fn scale_el(&self, c: &Scalar, x: &El) -> El {
        El {
            degree: x.degree,
            coeffs: x.coeffs.iter().map(|a| self.field.mul(c, a)).collect(),
        }
    }

    pub fn neg_el(&self, x: &El) -> El {
        self.scale_el(&self.field.from_i64(-1), x)
    }

    /// Product of basis elements, as an element of degree i + j.
    pub fn mul_basis(&self, i: i32, a: usize, j: i32, b: usize) -> El {
        match self.mul.get(&(i, a, j, b)) {
            Some(v) => El {
                degree: i + j,
                coeffs: v.clone(),
            },
            None => self.zero_el(i + j),
        }
    }

    pub fn mul_el(&self, x: &El, y: &El) -> El {
        let mut out = self.zero_el(x.degree + y.degree);
        for (a, xa) in x.coeffs.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.coeffs.iter().enumerate() {
                if yb.is_zero() {
                    continue;
                }
                let prod = self.mul_basis(x.degree, a, y.degree, b);
                let c = self.field.mul(xa, yb);
                out = self.add_el(&out, &self.scale_el(&c, &prod));
            }
        }
        out
    }

    pub fn d_el(&self, x: &El) -> El {
        match self.diff.get(&x.degree) {
            Some(m) => El {
                degree: x.degree + 1,
                coeffs: m.apply(&x.coeffs),
            },
            None => self.zero_el(x.degree + 1),
        }
    }

    /// Differential matrix in a given degree (zero matrix when absent).
    pub fn d_mat(&self, degree: i32) -> Mat {
        match self.diff.get(&degree) {
            Some(m) => m.clone(),
            None => Mat::zero(self.field, self.dim(degree + 1), self.dim(degree)),
        }
    }

    /// Checks every algebra axiom and reports all failures with witnesses.
    pub fn validate(&self) -> ValidationReport {
        let mut failures = Vec::new();
        let f = self.field;

        // Grading bounds: products landing outside the stored range must vanish.
        for (&(i, a, j, b), v) in &self.mul {
            if self.dim(i + j) == 0 && v.iter().any(|s| !s.is_zero()) {
                failures.push(AxiomFailure {
                    axiom: Axiom::Grading,
                    detail: format!(
                        "product {}·{} lands in degree {} where A vanishes",
                        self.label(i, a),
                        self.label(j, b),
                        i + j
                    ),
                });
            }
        }

        // d^2 = 0.
        for &i in self.dims.keys() {
            let d1 = self.d_mat(i);
            let d2 = self.d_mat(i + 1);
            let comp = d2.mul(&d1);
            if !comp.is_zero() {
                failures.push(AxiomFailure {
                    axiom: Axiom::DSquare,
                    detail: format!("d^{} ∘ d^{i} is nonzero", i + 1),
                });
            }
        }

        // Unit is two-sided.
        let unit = self.unit_el();
        for (&deg, &dim) in &self.dims {
            for idx in 0..dim {
                let e = self.basis_el(deg, idx);
                if self.mul_el(&unit, &e) != e || self.mul_el(&e, &unit) != e {
                    failures.push(AxiomFailure {
                        axiom: Axiom::Unit,
                        detail: format!("unit does not fix basis element {}", self.label(deg, idx)),
                    });
                }
            }
        }

        // Leibniz rule on all basis pairs.
        let degrees: Vec<i32> = self.dims.keys().copied().collect();
        for &i in &degrees {
            for &j in &degrees {
                for a in 0..self.dim(i) {
                    for b in 0..self.dim(j) {
                        let ea = self.basis_el(i, a);
                        let eb = self.basis_el(j, b);
                        let lhs = self.d_el(&self.mul_el(&ea, &eb));
                        let mut rhs = self.mul_el(&self.d_el(&ea), &eb);
                        let sign = if i.rem_euclid(2) == 0 { 1 } else { -1 };
                        let t2 = self.scale_el(&f.from_i64(sign), &self.mul_el(&ea, &self.d_el(&eb)));
                        rhs = self.add_el(&rhs, &t2);
                        if lhs != rhs {
                            failures.push(AxiomFailure {
                                axiom: Axiom::Leibniz,
                                detail: format!(
                                    "d({}·{}) ≠ d({})·{} + (-1)^{i} {}·d({})",
                                    self.label(i, a),
                                    self.label(j, b),
                                    self.label(i, a),
                                    self.label(j, b),
                                    self.label(i, a),
                                    self.label(j, b)
                                ),
                            });
                        }
                    }
                }
            }
        }

        // Associativity on all basis triples.
        'outer: for &i in &degrees {
            for &j in &degrees {
                for &k in &degrees {
                    for a in 0..self.dim(i) {
                        for b in 0..self.dim(j) {
                            for c in 0..self.dim(k) {
                                let ea = self.basis_el(i, a);
                                let eb = self.basis_el(j, b);
                                let ec = self.basis_el(k, c);
                                let lhs = self.mul_el(&self.mul_el(&ea, &eb), &ec);
                                let rhs = self.mul_el(&ea, &self.mul_el(&eb, &ec));
                                if lhs != rhs {
                                    failures.push(AxiomFailure {
                                        axiom: Axiom::Associativity,
                                        detail: format!(
                                            "({}·{})·{} ≠ {}·({}·{})",
                                            self.label(i, a),
                                            self.label(j, b),
                                            self.label(k, c),
                                            self.label(i, a),
                                            self.label(j, b),
                                            self.label(k, c)
                                        ),
                                    });
                                    if failures.len() > 64 {
                                        break 'outer;
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }

        ValidationReport { failures }
    }

    /// The underlying complex of k-vector spaces.
    pub fn underlying_complex(&self) -> KComplex {
        KComplex::new(self.field, self.dims.clone(), self.diff.clone())
            .expect("algebra differential tables form a complex")
    }

    /// Cohomology data with canonical representative cocycles per degree:
    /// the echelon-greedy complement of the boundaries inside the cycles.
    pub fn cohomology(&self) -> Cohomology {
        self.underlying_complex().cohomology()
    }

    /// The cohomology ring: a graded algebra on the canonical representatives
    /// (zero differential), plus the dimension table.
    pub fn cohomology_ring(&self) -> Result<(DGAlgebra, CohomologyTable)> {
        let coh = self.cohomology();
        let table = coh.table();
        let mut dims = BTreeMap::new();
        let mut labels = BTreeMap::new();
        for (&i, dc) in &coh.per_degree {
            if dc.reps.is_empty() {
                continue;
            }
            dims.insert(i, dc.reps.len());
            labels.insert(
                i,
                (0..dc.reps.len()).map(|k| format!("h{i}_{k}")).collect(),
            );
        }
        let mut mul = BTreeMap::new();
        for (&i, dci) in &coh.per_degree {
            for (&j, dcj) in &coh.per_degree {
                for (a, ra) in dci.reps.iter().enumerate() {
                    for (b, rb) in dcj.reps.iter().enumerate() {
                        let prod = self.mul_el(
                            &El {
                                degree: i,
                                coeffs: ra.clone(),
                            },
                            &El {
                                degree: j,
                                coeffs: rb.clone(),
                            },
                        );
                        if prod.is_zero() {
                            continue;
                        }
                        let coords = coh.class_of(&prod).ok_or_else(|| {
                            Error::Internal("product of cycles is not a cycle".into())
                        })?;
                        if coords.iter().any(|s| !s.is_zero()) {
                            mul.insert((i, a, j, b), coords);
                        }
                    }
                }
            }
        }
        let unit_class = coh
            .class_of(&self.unit_el())
            .ok_or_else(|| Error::Internal("unit is not a cycle".into()))?;
        let ring = DGAlgebra::checked(
            self.field,
            DGAlgebraData {
                dims,
                labels,
                unit: unit_class,
                mul,
                diff: BTreeMap::new(),
            },
        )?;
        Ok((ring, table))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axiom {
    Grading,
    DSquare,
    Unit,
    Leibniz,
    Associativity,
}

#[derive(Clone, Debug)]
pub struct AxiomFailure {
    pub axiom: Axiom,
    pub detail: String,
}

/// Outcome of [`DGAlgebra::validate`]; empty means every axiom holds.
#[derive(Clone, Debug, Default)]
pub struct ValidationReport {
    pub failures: Vec<AxiomFailure>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.failures.is_empty() {
            return write!(f, "valid");
        }
        for failure in &self.failures {
            writeln!(f, "{:?}: {}", failure.axiom, failure.detail)?;
        }
        Ok(())
    }
}

/// The tensor product DG algebra A ⊗ B with the Koszul sign rule
/// (a ⊗ b)(a' ⊗ b') = (-1)^{|a'||b|} aa' ⊗ bb'.
pub fn tensor_product(a: &DGAlgebra, b: &DGAlgebra) -> Result<DGAlgebra> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch);
    }
    let f = a.field();
    let index = TensorIndex::new(a, b);
    let mut dims = BTreeMap::new();
    let mut labels = BTreeMap::new();
    for (&n, block) in &index.blocks {
        dims.insert(n, block.len());
        labels.insert(
            n,
            block
                .iter()
                .map(|&(p, ai, bi)| format!("{}⊗{}", a.label(p, ai), b.label(n - p, bi)))
                .collect(),
        );
    }

    let mut mul = BTreeMap::new();
    for (&n1, block1) in &index.blocks {
        for (&n2, block2) in &index.blocks {
            for (i1, &(p1, a1, b1)) in block1.iter().enumerate() {
                for (i2, &(p2, a2, b2)) in block2.iter().enumerate() {
                    let q1 = n1 - p1;
                    // Koszul sign from moving b (degree q1) past a' (degree p2).
                    let sign = if (q1 * p2).rem_euclid(2) == 0 { 1 } else { -1 };
                    let aa = a.mul_basis(p1, a1, p2, a2);
                    if aa.is_zero() {
                        continue;
                    }
                    let bb = b.mul_basis(q1, b1, n2 - p2, b2);
                    if bb.is_zero() {
                        continue;
                    }
                    let mut out = vec![f.zero(); index.dim(n1 + n2)];
                    for (ai, ca) in aa.coeffs.iter().enumerate() {
                        if ca.is_zero() {
                            continue;
                        }
                        for (bi, cb) in bb.coeffs.iter().enumerate() {
                            if cb.is_zero() {
                                continue;
                            }
                            if let Some(idx) = index.find(n1 + n2, p1 + p2, ai, bi) {
                                let c = f.mul(&f.mul(ca, cb), &f.from_i64(sign));
                                out[idx] = f.add(&out[idx], &c);
                            } else if !f.mul(ca, cb).is_zero() {
                                return Err(Error::Internal(
                                    "tensor product lands outside the materialized range".into(),
                                ));
                            }
                        }
                    }
                    if out.iter().any(|s| !s.is_zero()) {
                        mul.insert((n1, i1, n2, i2), out);
                    }
                }
            }
        }
    }

    let mut diff = BTreeMap::new();
    for (&n, block) in &index.blocks {
        let target_dim = index.dim(n + 1);
        if target_dim == 0 || block.is_empty() {
            continue;
        }
        let mut m = Mat::zero(f, target_dim, block.len());
        for (col, &(p, ai, bi)) in block.iter().enumerate() {
            let q = n - p;
            let da = a.d_el(&a.basis_el(p, ai));
            for (k, c) in da.coeffs.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                if let Some(row) = index.find(n + 1, p + 1, k, bi) {
                    m.set(row, col, f.add(m.at(row, col), c));
                }
            }
            let db = b.d_el(&b.basis_el(q, bi));
            let sign = f.from_i64(if p.rem_euclid(2) == 0 { 1 } else { -1 });
            for (k, c) in db.coeffs.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                if let Some(row) = index.find(n + 1, p, ai, k) {
                    m.set(row, col, f.add(m.at(row, col), &f.mul(&sign, c)));
                }
            }
        }
        diff.insert(n, m);
    }

    let mut unit = vec![f.zero(); index.dim(0)];
    for (ai, ca) in a.unit().iter().enumerate() {
        for (bi, cb) in b.unit().iter().enumerate() {
            if let Some(idx) = index.find(0, 0, ai, bi) {
                unit[idx] = f.mul(ca, cb);
            }
        }
    }

    DGAlgebra::checked(
        f,
        DGAlgebraData {
            dims,
            labels,
            unit,
            mul,
            diff,
        },
    )
}

struct TensorIndex {
    blocks: BTreeMap<i32, Vec<(i32, usize, usize)>>,
    lookup: BTreeMap<(i32, i32, usize, usize), usize>,
}

impl TensorIndex {
    fn new(a: &DGAlgebra, b: &DGAlgebra) -> Self {
        let mut blocks: BTreeMap<i32, Vec<(i32, usize, usize)>> = BTreeMap::new();
        for (&p, &da) in a.dims() {
            for (&q, &db) in b.dims() {
                let entry = blocks.entry(p + q).or_default();
                for ai in 0..da {
                    for bi in 0..db {
                        entry.push((p, ai, bi));
                    }
                }
            }
        }
        for block in blocks.values_mut() {
            block.sort();
        }
        let mut lookup = BTreeMap::new();
        for (&n, block) in &blocks {
            for (idx, &(p, ai, bi)) in block.iter().enumerate() {
                lookup.insert((n, p, ai, bi), idx);
            }
        }
        TensorIndex { blocks, lookup }
    }

    fn dim(&self, n: i32) -> usize {
        self.blocks.get(&n).map_or(0, Vec::len)
    }

    fn find(&self, n: i32, p: i32, ai: usize, bi: usize) -> Option<usize> {
        self.lookup.get(&(n, p, ai, bi)).copied()
    }
}

/// The opposite algebra: a ·op a' = (-1)^{|a||a'|} a'a, same differential.
pub fn opposite(a: &DGAlgebra) -> DGAlgebra {
    let f = a.field();
    let mut mul = BTreeMap::new();
    let degrees: Vec<i32> = a.dims().keys().copied().collect();
    for &i in &degrees {
        for &j in &degrees {
            for x in 0..a.dim(i) {
                for y in 0..a.dim(j) {
                    let prod = a.mul_basis(j, y, i, x);
                    if prod.is_zero() {
                        continue;
                    }
                    let sign = if (i * j).rem_euclid(2) == 0 { 1 } else { -1 };
                    let signed = a.scale_el(&f.from_i64(sign), &prod);
                    if !signed.is_zero() {
                        mul.insert((i, x, j, y), signed.coeffs);
                    }
                }
            }
        }
    }
    let mut op = DGAlgebra::checked(
        f,
        DGAlgebraData {
            dims: a.dims().clone(),
            labels: a.labels().clone(),
            unit: a.unit().to_vec(),
            mul,
            diff: a.diff_table().clone(),
        },
    )
    .expect("opposite of a valid algebra is valid");
    op.op_of = Some(a.content_hash());
    op
}

/// Adjoins an acyclic pair v (degree `deg`), w = d(v) (degree `deg + 1`) with
/// all products into the pair zero except the unit action. Quasi-isomorphic
/// to the input; useful as a truncation/cohomology oracle fixture.
pub fn adjoin_exact_pair(a: &DGAlgebra, deg: i32) -> Result<DGAlgebra> {
    if deg == 0 || deg + 1 == 0 {
        return Err(Error::BadBuilder(
            "adjoined pair may not overlap degree 0".into(),
        ));
    }
    let f = a.field();
    let mut dims = a.dims().clone();
    let mut labels = a.labels().clone();
    let vd = a.dim(deg);
    let wd = a.dim(deg + 1);
    *dims.entry(deg).or_insert(0) += 1;
    *dims.entry(deg + 1).or_insert(0) += 1;
    labels
        .entry(deg)
        .or_default()
        .push(format!("v{deg}"));
    labels
        .entry(deg + 1)
        .or_default()
        .push(format!("w{}", deg + 1));

    // Old products keep their coordinates; new coordinates sit at the end.
    let mut mul = BTreeMap::new();
    for (&(i, x, j, y), v) in a.mul_table() {
        let mut padded = v.clone();
        if i + j == deg || i + j == deg + 1 {
            padded.push(f.zero());
        }
        mul.insert((i, x, j, y), padded);
    }
    // Unit acts as identity on v and w.
    let mut unit_v = vec![f.zero(); dims[&deg]];
    unit_v[vd] = f.one();
    let mut unit_w = vec![f.zero(); dims[&(deg + 1)]];
    unit_w[wd] = f.one();
    mul.insert((0, 0, deg, vd), unit_v.clone());
    mul.insert((deg, vd, 0, 0), unit_v);
    mul.insert((0, 0, deg + 1, wd), unit_w.clone());
    mul.insert((deg + 1, wd, 0, 0), unit_w);

    let mut diff = BTreeMap::new();
    for &i in dims.keys() {
        let rows = dims.get(&(i + 1)).copied().unwrap_or(0);
        let cols = dims[&i];
        if rows == 0 {
            continue;
        }
        let mut m = Mat::zero(f, rows, cols);
        let old = a.d_mat(i);
        for r in 0..old.rows() {
            for c in 0..old.cols() {
                m.set(r, c, old.at(r, c).clone());
            }
        }
        if i == deg {
            m.set(wd, vd, f.one());
        }
        if !m.is_zero() {
            diff.insert(i, m);
        }
    }

    DGAlgebra::checked(
        f,
        DGAlgebraData {
            dims,
            labels,
            unit: a.unit().to_vec(),
            mul,
            diff,
        },
    )
}

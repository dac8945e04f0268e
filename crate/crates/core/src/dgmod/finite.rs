//! Finite DG modules: graded pieces, a differential, and an action table over
//! the algebra. Modules over the opposite algebra play the role of left modules.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::dga::{DGAlgebra, El};
use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::scalar::Scalar;

use super::KComplex;

/// A right DG module over its stored algebra, with explicit structure constants.
#[derive(Clone, Debug)]
pub struct FiniteDGModule {
    algebra: Arc<DGAlgebra>,
    dims: BTreeMap<i32, usize>,
    labels: BTreeMap<i32, Vec<String>>,
    /// (module degree, module idx, algebra degree, algebra idx) -> coordinates
    /// of the product in the module piece of the summed degree.
    action: BTreeMap<(i32, usize, i32, usize), Vec<Scalar>>,
    diffs: BTreeMap<i32, Mat>,
}

impl FiniteDGModule {
    /// Shape-checks the tables; axiom validation is [`FiniteDGModule::validate`].
    pub fn from_parts(
        algebra: Arc<DGAlgebra>,
        mut dims: BTreeMap<i32, usize>,
        mut labels: BTreeMap<i32, Vec<String>>,
        mut action: BTreeMap<(i32, usize, i32, usize), Vec<Scalar>>,
        mut diffs: BTreeMap<i32, Mat>,
    ) -> Result<Self> {
        dims.retain(|_, n| *n > 0);
        for (&deg, &n) in &dims {
            let lab = labels.remove(&deg);
            let lab = match lab {
                Some(l) if l.len() == n => l,
                Some(_) => {
                    return Err(Error::InvalidModule(format!(
                        "degree {deg}: label count does not match dimension {n}"
                    )))
                }
                None => (0..n).map(|k| format!("m{deg}_{k}")).collect(),
            };
            labels.insert(deg, lab);
        }
        labels.retain(|deg, _| dims.contains_key(deg));
        let dim = |m: &BTreeMap<i32, usize>, d: i32| m.get(&d).copied().unwrap_or(0);
        for (&(md, mi, ad, ai), v) in &action {
            if mi >= dim(&dims, md) || ai >= algebra.dim(ad) {
                return Err(Error::InvalidModule(format!(
                    "action entry ({md},{mi})·({ad},{ai}) indexes outside the bases"
                )));
            }
            if v.len() != dim(&dims, md + ad) {
                return Err(Error::InvalidModule(format!(
                    "action entry ({md},{mi})·({ad},{ai}) has wrong length"
                )));
            }
        }
        action.retain(|_, v| v.iter().any(|s| !s.is_zero()));
        for (&i, m) in &diffs {
            if m.rows() != dim(&dims, i + 1) || m.cols() != dim(&dims, i) {
                return Err(Error::InvalidModule(format!(
                    "module differential at degree {i} has the wrong shape"
                )));
            }
        }
        diffs.retain(|_, m| !m.is_zero());
        Ok(FiniteDGModule {
            algebra,
            dims,
            labels,
            action,
            diffs,
        })
    }

    /// Shape-checks and validates all module axioms.
    pub fn checked(
        algebra: Arc<DGAlgebra>,
        dims: BTreeMap<i32, usize>,
        labels: BTreeMap<i32, Vec<String>>,
        action: BTreeMap<(i32, usize, i32, usize), Vec<Scalar>>,
        diffs: BTreeMap<i32, Mat>,
    ) -> Result<Self> {
        let m = Self::from_parts(algebra, dims, labels, action, diffs)?;
        m.validate()?;
        Ok(m)
    }

    /// The algebra as the free rank-one module over itself.
    pub fn of_algebra(algebra: &Arc<DGAlgebra>) -> Result<Self> {
        let mut action = BTreeMap::new();
        for (&(i, a, j, b), v) in algebra.mul_table() {
            action.insert((i, a, j, b), v.clone());
        }
        // The validator wants explicit unit columns; the multiplication table
        // may omit unit products only if the unit is basis vector 0.
        for (&d, &n) in algebra.dims() {
            for idx in 0..n {
                let e = algebra.basis_el(d, idx);
                let ue = algebra.mul_el(&e, &algebra.unit_el());
                action.insert((d, idx, 0, 0), ue.coeffs);
            }
        }
        Self::checked(
            Arc::clone(algebra),
            algebra.dims().clone(),
            algebra.labels().clone(),
            action,
            algebra.diff_table().clone(),
        )
    }

    pub fn algebra(&self) -> &Arc<DGAlgebra> {
        &self.algebra
    }

    pub fn dims(&self) -> &BTreeMap<i32, usize> {
        &self.dims
    }

    pub fn dim(&self, degree: i32) -> usize {
        self.dims.get(&degree).copied().unwrap_or(0)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn labels(&self) -> &BTreeMap<i32, Vec<String>> {
        &self.labels
    }

    pub fn action_table(&self) -> &BTreeMap<(i32, usize, i32, usize), Vec<Scalar>> {
        &self.action
    }

    pub fn diff_table(&self) -> &BTreeMap<i32, Mat> {
        &self.diffs
    }

    pub fn d_mat(&self, degree: i32) -> Mat {
        match self.diffs.get(&degree) {
            Some(m) => m.clone(),
            None => Mat::zero(self.algebra.field(), self.dim(degree + 1), self.dim(degree)),
        }
    }

    pub fn zero_el(&self, degree: i32) -> El {
        El {
            degree,
            coeffs: vec![self.algebra.field().zero(); self.dim(degree)],
        }
    }

    pub fn basis_el(&self, degree: i32, idx: usize) -> El {
        let mut e = self.zero_el(degree);
        e.coeffs[idx] = self.algebra.field().one();
        e
    }

    pub fn d_el(&self, x: &El) -> El {
        El {
            degree: x.degree + 1,
            coeffs: self.d_mat(x.degree).apply(&x.coeffs),
        }
    }

    /// Right action of a homogeneous algebra element.
    pub fn act(&self, x: &El, a: &El) -> El {
        let f = self.algebra.field();
        let mut out = self.zero_el(x.degree + a.degree);
        for (mi, xc) in x.coeffs.iter().enumerate() {
            if xc.is_zero() {
                continue;
            }
            for (ai, ac) in a.coeffs.iter().enumerate() {
                if ac.is_zero() {
                    continue;
                }
                if let Some(v) = self.action.get(&(x.degree, mi, a.degree, ai)) {
                    let c = f.mul(xc, ac);
                    for (k, s) in v.iter().enumerate() {
                        out.coeffs[k] = f.add(&out.coeffs[k], &f.mul(&c, s));
                    }
                }
            }
        }
        out
    }

    /// Checks d² = 0, the module Leibniz rule, action associativity, and the
    /// unit axiom on all basis elements.
    pub fn validate(&self) -> Result<()> {
        let a = &self.algebra;
        let f = a.field();
        for &i in self.dims.keys() {
            if !self.d_mat(i + 1).mul(&self.d_mat(i)).is_zero() {
                return Err(Error::InvalidModule(format!("d² ≠ 0 at degree {i}")));
            }
        }
        let adegs: Vec<i32> = a.dims().keys().copied().collect();
        let mdegs: Vec<i32> = self.dims.keys().copied().collect();
        for &md in &mdegs {
            for mi in 0..self.dim(md) {
                let x = self.basis_el(md, mi);
                // unit acts as identity
                if self.act(&x, &a.unit_el()) != x {
                    return Err(Error::InvalidModule(format!(
                        "unit does not act as identity on ({md},{mi})"
                    )));
                }
                for &ad in &adegs {
                    for ai in 0..a.dim(ad) {
                        let e = a.basis_el(ad, ai);
                        // Leibniz: d(xa) = d(x)a + (-1)^{|x|} x d(a)
                        let lhs = self.d_el(&self.act(&x, &e));
                        let sign = f.from_i64(if md.rem_euclid(2) == 0 { 1 } else { -1 });
                        let mut rhs = self.act(&self.d_el(&x), &e);
                        let xda = self.act(&x, &a.d_el(&e));
                        rhs = El {
                            degree: rhs.degree,
                            coeffs: rhs
                                .coeffs
                                .iter()
                                .zip(&xda.coeffs)
                                .map(|(u, v)| f.add(u, &f.mul(&sign, v)))
                                .collect(),
                        };
                        if lhs != rhs {
                            return Err(Error::InvalidModule(format!(
                                "module Leibniz rule fails on ({md},{mi})·({ad},{ai})"
                            )));
                        }
                        // associativity: (x·a)·b = x·(ab)
                        for &bd in &adegs {
                            for bi in 0..a.dim(bd) {
                                let eb = a.basis_el(bd, bi);
                                let l = self.act(&self.act(&x, &e), &eb);
                                let r = self.act(&x, &a.mul_el(&e, &eb));
                                if l != r {
                                    return Err(Error::InvalidModule(format!(
                                        "action associativity fails on ({md},{mi})·({ad},{ai})·({bd},{bi})"
                                    )));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn underlying_complex(&self) -> KComplex {
        KComplex::new(self.algebra.field(), self.dims.clone(), self.diffs.clone())
            .expect("validated module differential is a complex")
    }

    /// Σ^n: the degree-i piece of the result is the old degree-(i+n) piece,
    /// the differential picks up (-1)^n, the right action is unchanged.
    pub fn shift(&self, n: i32) -> FiniteDGModule {
        let f = self.algebra.field();
        let sign = f.from_i64(if n.rem_euclid(2) == 0 { 1 } else { -1 });
        let dims = self.dims.iter().map(|(&d, &v)| (d - n, v)).collect();
        let labels = self
            .labels
            .iter()
            .map(|(&d, v)| (d - n, v.clone()))
            .collect();
        let diffs = self
            .diffs
            .iter()
            .map(|(&d, m)| (d - n, m.scale(&sign)))
            .collect();
        let action = self
            .action
            .iter()
            .map(|(&(md, mi, ad, ai), v)| ((md - n, mi, ad, ai), v.clone()))
            .collect();
        FiniteDGModule {
            algebra: Arc::clone(&self.algebra),
            dims,
            labels,
            action,
            diffs,
        }
    }

    /// Renames the flat basis by a permutation within each degree
    /// (`perm[deg][new] = old`), producing the same module on a reordered basis.
    pub fn permute_basis(&self, perm: &BTreeMap<i32, Vec<usize>>) -> Result<FiniteDGModule> {
        let f = self.algebra.field();
        let ident = |deg: i32| -> Vec<usize> { (0..self.dim(deg)).collect() };
        let get = |deg: i32| -> Vec<usize> { perm.get(&deg).cloned().unwrap_or_else(|| ident(deg)) };
        for (&deg, p) in perm {
            if p.len() != self.dim(deg) {
                return Err(Error::InvalidModule(format!(
                    "permutation at degree {deg} has the wrong length"
                )));
            }
        }
        let mut labels = BTreeMap::new();
        for (&deg, labs) in &self.labels {
            let p = get(deg);
            labels.insert(deg, p.iter().map(|&old| labs[old].clone()).collect());
        }
        let mut diffs = BTreeMap::new();
        for (&deg, m) in &self.diffs {
            let psrc = get(deg);
            let ptgt = get(deg + 1);
            let mut out = Mat::zero(f, m.rows(), m.cols());
            for (new_r, &old_r) in ptgt.iter().enumerate() {
                for (new_c, &old_c) in psrc.iter().enumerate() {
                    out.set(new_r, new_c, m.at(old_r, old_c).clone());
                }
            }
            diffs.insert(deg, out);
        }
        let mut action = BTreeMap::new();
        for (&(md, mi, ad, ai), v) in &self.action {
            let psrc = get(md);
            let ptgt = get(md + ad);
            let new_mi = psrc.iter().position(|&old| old == mi).unwrap();
            let mut nv = vec![f.zero(); v.len()];
            for (new_k, &old_k) in ptgt.iter().enumerate() {
                nv[new_k] = v[old_k].clone();
            }
            action.insert((md, new_mi, ad, ai), nv);
        }
        Self::checked(
            Arc::clone(&self.algebra),
            self.dims.clone(),
            labels,
            action,
            diffs,
        )
    }
}

/// The augmentation module k = A/A^{≥1}: one-dimensional in degree 0, with
/// A^{≥1} acting by zero. Requires a simply connected model.
pub fn augmentation_module(algebra: &Arc<DGAlgebra>) -> Result<FiniteDGModule> {
    if !algebra.is_simply_connected_model() {
        return Err(Error::NotSimplyConnectedModel);
    }
    let f = algebra.field();
    let mut dims = BTreeMap::new();
    dims.insert(0, 1);
    let mut labels = BTreeMap::new();
    labels.insert(0, vec!["1".to_string()]);
    let mut action = BTreeMap::new();
    // The unit u·e_0 must act as the identity, so e_0 acts by 1/u.
    let u = &algebra.unit()[0];
    action.insert((0, 0, 0, 0), vec![f.inv(u)]);
    FiniteDGModule::checked(Arc::clone(algebra), dims, labels, action, BTreeMap::new())
}

/// A degree-homogeneous linear map between finite modules, one matrix per degree.
#[derive(Clone, Debug)]
pub struct FinMap {
    pub degree: i32,
    pub mats: BTreeMap<i32, Mat>,
}

impl FinMap {
    pub fn mat(&self, src: &FiniteDGModule, tgt: &FiniteDGModule, i: i32) -> Mat {
        match self.mats.get(&i) {
            Some(m) => m.clone(),
            None => Mat::zero(
                src.algebra().field(),
                tgt.dim(i + self.degree),
                src.dim(i),
            ),
        }
    }

    pub fn apply(&self, src: &FiniteDGModule, tgt: &FiniteDGModule, x: &El) -> El {
        El {
            degree: x.degree + self.degree,
            coeffs: self.mat(src, tgt, x.degree).apply(&x.coeffs),
        }
    }

    /// Chain condition d∘f = (-1)^{deg} f∘d in all degrees.
    pub fn is_chain_map(&self, src: &FiniteDGModule, tgt: &FiniteDGModule) -> bool {
        let f = src.algebra().field();
        let sign = f.from_i64(if self.degree.rem_euclid(2) == 0 { 1 } else { -1 });
        src.dims().keys().all(|&i| {
            let lhs = tgt.d_mat(i + self.degree).mul(&self.mat(src, tgt, i));
            let rhs = self.mat(src, tgt, i + 1).mul(&src.d_mat(i)).scale(&sign);
            lhs.add(&rhs.scale(&f.from_i64(-1))).is_zero()
        })
    }

    /// A-linearity f(x·a) = f(x)·a on all basis pairs.
    pub fn is_linear(&self, src: &FiniteDGModule, tgt: &FiniteDGModule) -> bool {
        let adegs: Vec<i32> = src.algebra().dims().keys().copied().collect();
        src.dims().keys().all(|&md| {
            (0..src.dim(md)).all(|mi| {
                let x = src.basis_el(md, mi);
                adegs.iter().all(|&ad| {
                    (0..src.algebra().dim(ad)).all(|ai| {
                        let e = src.algebra().basis_el(ad, ai);
                        let lhs = self.apply(src, tgt, &src.act(&x, &e));
                        let rhs = tgt.act(&self.apply(src, tgt, &x), &e);
                        lhs == rhs
                    })
                })
            })
        })
    }

    /// Degree-0 module isomorphism test: chain map, linear, and each degree
    /// matrix invertible.
    pub fn is_module_iso(&self, src: &FiniteDGModule, tgt: &FiniteDGModule) -> bool {
        if self.degree != 0 || src.dims() != tgt.dims() {
            return false;
        }
        self.is_chain_map(src, tgt)
            && self.is_linear(src, tgt)
            && src
                .dims()
                .iter()
                .all(|(&i, &n)| self.mat(src, tgt, i).rank() == n)
    }
}

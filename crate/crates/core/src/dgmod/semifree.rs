//! Semi-free DG modules presented by ordered generators with an upper-unitriangular
//! differential over the algebra, plus chain maps between them and mapping cones.
//!
//! All modules here are right modules over their stored algebra; left modules
//! are handled as right modules over the opposite algebra throughout the crate.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::dga::{DGAlgebra, El};
use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::scalar::Scalar;

use super::finite::FiniteDGModule;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub label: String,
    pub degree: i32,
}

/// A matrix of homogeneous algebra elements indexed by (source generator,
/// target generator). Used both for differentials and for chain maps.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct AMat {
    entries: BTreeMap<(usize, usize), El>,
}

impl AMat {
    pub fn new() -> Self {
        AMat::default()
    }

    pub fn set(&mut self, src: usize, tgt: usize, el: El) {
        if el.is_zero() {
            self.entries.remove(&(src, tgt));
        } else {
            self.entries.insert((src, tgt), el);
        }
    }

    pub fn get(&self, src: usize, tgt: usize) -> Option<&El> {
        self.entries.get(&(src, tgt))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(usize, usize), &El)> {
        self.entries.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// An element of a semi-free module: a finite sum Σ gᵢ·aᵢ of generators with
/// homogeneous algebra coefficients, all of one total degree.
#[derive(Clone, Debug, PartialEq)]
pub struct SfEl {
    pub degree: i32,
    pub parts: BTreeMap<usize, El>,
}

impl SfEl {
    pub fn zero(degree: i32) -> Self {
        SfEl {
            degree,
            parts: BTreeMap::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.parts.values().all(El::is_zero)
    }
}

/// A DG module with a finite ordered free basis over the algebra and a
/// strictly triangular differential: d(gⱼ) only involves earlier generators.
#[derive(Clone, Debug)]
pub struct SemiFreeModule {
    algebra: Arc<DGAlgebra>,
    generators: Vec<Generator>,
    diff_coeffs: AMat,
}

impl SemiFreeModule {
    /// Builds and fully validates a presentation (degrees, triangularity, d² = 0).
    pub fn new(
        algebra: Arc<DGAlgebra>,
        generators: Vec<Generator>,
        diff_coeffs: AMat,
    ) -> Result<Self> {
        let m = SemiFreeModule {
            algebra,
            generators,
            diff_coeffs,
        };
        m.check()?;
        Ok(m)
    }

    fn check(&self) -> Result<()> {
        for (&(j, i), el) in self.diff_coeffs.iter() {
            if j >= self.generators.len() || i >= self.generators.len() {
                return Err(Error::InvalidModule(format!(
                    "differential entry ({j},{i}) indexes outside the generator list"
                )));
            }
            if j <= i {
                return Err(Error::InvalidModule(format!(
                    "differential entry ({j},{i}) is not strictly triangular"
                )));
            }
            let want = self.generators[j].degree - self.generators[i].degree + 1;
            if el.degree != want {
                return Err(Error::InvalidModule(format!(
                    "coefficient ({j},{i}) has degree {} but should have degree {want}",
                    el.degree
                )));
            }
            if el.coeffs.len() != self.algebra.dim(el.degree) {
                return Err(Error::InvalidModule(format!(
                    "coefficient ({j},{i}) has wrong length for A^{}",
                    el.degree
                )));
            }
        }
        // d² = 0, expanded through the Leibniz rule.
        let a = &self.algebra;
        for j in 0..self.generators.len() {
            for l in 0..j {
                let mut acc = a.zero_el(self.generators[j].degree - self.generators[l].degree + 2);
                for i in (l + 1)..j {
                    if let (Some(cli), Some(cij)) =
                        (self.diff_coeffs.get(i, l), self.diff_coeffs.get(j, i))
                    {
                        acc = a.add_el(&acc, &a.mul_el(cli, cij));
                    }
                }
                if let Some(clj) = self.diff_coeffs.get(j, l) {
                    let sign = if self.generators[l].degree.rem_euclid(2) == 0 {
                        1
                    } else {
                        -1
                    };
                    acc = a.add_el(
                        &acc,
                        &a.scale_el(&a.field().from_i64(sign), &a.d_el(clj)),
                    );
                }
                if !acc.is_zero() {
                    return Err(Error::InvalidModule(format!(
                        "d² ≠ 0: component of generator {l} in d²(g_{j}) is nonzero"
                    )));
                }
            }
        }
        Ok(())
    }

    /// The free module A itself: one generator in degree 0.
    pub fn free(algebra: Arc<DGAlgebra>) -> Self {
        SemiFreeModule {
            algebra,
            generators: vec![Generator {
                label: "e".to_string(),
                degree: 0,
            }],
            diff_coeffs: AMat::new(),
        }
    }

    /// The shifted free module Σ^n A: one generator in degree -n.
    pub fn free_shifted(algebra: Arc<DGAlgebra>, n: i32) -> Self {
        SemiFreeModule {
            algebra,
            generators: vec![Generator {
                label: format!("e[{n}]"),
                degree: -n,
            }],
            diff_coeffs: AMat::new(),
        }
    }

    pub fn algebra(&self) -> &Arc<DGAlgebra> {
        &self.algebra
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn diff_coeffs(&self) -> &AMat {
        &self.diff_coeffs
    }

    /// Counts of generators per degree (the underlying free-module type).
    pub fn generator_degrees(&self) -> BTreeMap<i32, usize> {
        let mut out = BTreeMap::new();
        for g in &self.generators {
            *out.entry(g.degree).or_insert(0) += 1;
        }
        out
    }

    /// Minimality: the differential lands in A^{≥1}·L, i.e. no coefficient
    /// has a (nonzero) degree-0 component.
    pub fn is_minimal(&self) -> bool {
        self.diff_coeffs.iter().all(|(_, el)| el.degree != 0)
    }

    pub fn gen_el(&self, j: usize) -> SfEl {
        let mut parts = BTreeMap::new();
        parts.insert(j, self.algebra.unit_el());
        SfEl {
            degree: self.generators[j].degree,
            parts,
        }
    }

    pub fn el_add(&self, x: &SfEl, y: &SfEl) -> SfEl {
        assert_eq!(x.degree, y.degree, "adding module elements of different degree");
        let mut parts = x.parts.clone();
        for (&i, el) in &y.parts {
            let merged = match parts.get(&i) {
                Some(cur) => self.algebra.add_el(cur, el),
                None => el.clone(),
            };
            if merged.is_zero() {
                parts.remove(&i);
            } else {
                parts.insert(i, merged);
            }
        }
        SfEl {
            degree: x.degree,
            parts,
        }
    }

    pub fn el_scale(&self, c: &Scalar, x: &SfEl) -> SfEl {
        let mut parts = BTreeMap::new();
        for (&i, el) in &x.parts {
            let s = self.algebra.scale_el(c, el);
            if !s.is_zero() {
                parts.insert(i, s);
            }
        }
        SfEl {
            degree: x.degree,
            parts,
        }
    }

    /// Right action by a homogeneous algebra element.
    pub fn el_act(&self, x: &SfEl, b: &El) -> SfEl {
        let mut parts = BTreeMap::new();
        for (&i, el) in &x.parts {
            let prod = self.algebra.mul_el(el, b);
            if !prod.is_zero() {
                parts.insert(i, prod);
            }
        }
        SfEl {
            degree: x.degree + b.degree,
            parts,
        }
    }

    /// The differential: d(Σ gᵢaᵢ) = Σ d(gᵢ)aᵢ + (-1)^{|gᵢ|} gᵢ d(aᵢ).
    pub fn el_d(&self, x: &SfEl) -> SfEl {
        let a = &self.algebra;
        let mut out = SfEl::zero(x.degree + 1);
        for (&i, coeff) in &x.parts {
            for l in 0..i {
                if let Some(cli) = self.diff_coeffs.get(i, l) {
                    let term = a.mul_el(cli, coeff);
                    if !term.is_zero() {
                        let mut t = SfEl::zero(x.degree + 1);
                        t.parts.insert(l, term);
                        out = self.el_add(&out, &t);
                    }
                }
            }
            let sign = if self.generators[i].degree.rem_euclid(2) == 0 {
                1
            } else {
                -1
            };
            let da = a.scale_el(&a.field().from_i64(sign), &a.d_el(coeff));
            if !da.is_zero() {
                let mut t = SfEl::zero(x.degree + 1);
                t.parts.insert(i, da);
                out = self.el_add(&out, &t);
            }
        }
        out
    }

    /// Σ^n of this module: generator degrees drop by n, differential picks up (-1)^n.
    pub fn shift(&self, n: i32) -> SemiFreeModule {
        let sign = self.algebra.field().from_i64(if n.rem_euclid(2) == 0 { 1 } else { -1 });
        let mut coeffs = AMat::new();
        for (&(j, i), el) in self.diff_coeffs.iter() {
            coeffs.set(j, i, self.algebra.scale_el(&sign, el));
        }
        SemiFreeModule {
            algebra: Arc::clone(&self.algebra),
            generators: self
                .generators
                .iter()
                .map(|g| Generator {
                    label: g.label.clone(),
                    degree: g.degree - n,
                })
                .collect(),
            diff_coeffs: coeffs,
        }
    }

    /// Direct sum, keeping both generator lists in order.
    pub fn direct_sum(&self, other: &SemiFreeModule) -> Result<SemiFreeModule> {
        if self.algebra.content_hash() != other.algebra.content_hash() {
            return Err(Error::FieldMismatch);
        }
        let offset = self.generators.len();
        let mut generators = self.generators.clone();
        generators.extend(other.generators.iter().cloned());
        let mut coeffs = self.diff_coeffs.clone();
        for (&(j, i), el) in other.diff_coeffs.iter() {
            coeffs.set(j + offset, i + offset, el.clone());
        }
        SemiFreeModule::new(Arc::clone(&self.algebra), generators, coeffs)
    }

    /// Reorders the generators by a permutation (`perm[new] = old`),
    /// keeping the same module. Fails if the result is not triangular.
    pub fn permute_generators(&self, perm: &[usize]) -> Result<SemiFreeModule> {
        if perm.len() != self.generators.len() {
            return Err(Error::InvalidModule("permutation length mismatch".into()));
        }
        let mut inv = vec![0usize; perm.len()];
        for (new, &old) in perm.iter().enumerate() {
            inv[old] = new;
        }
        let generators: Vec<Generator> = perm
            .iter()
            .map(|&old| self.generators[old].clone())
            .collect();
        let mut coeffs = AMat::new();
        for (&(j, i), el) in self.diff_coeffs.iter() {
            coeffs.set(inv[j], inv[i], el.clone());
        }
        SemiFreeModule::new(Arc::clone(&self.algebra), generators, coeffs)
    }

    /// Degrees where the underlying graded module is nonzero.
    pub fn dims(&self) -> BTreeMap<i32, usize> {
        let mut out: BTreeMap<i32, usize> = BTreeMap::new();
        for g in &self.generators {
            for (&ad, &an) in self.algebra.dims() {
                *out.entry(g.degree + ad).or_insert(0) += an;
            }
        }
        out.retain(|_, n| *n > 0);
        out
    }

    /// Materializes the total complex with its A-action as a finite module,
    /// together with the flat basis bookkeeping.
    pub fn materialize(&self) -> Result<(FiniteDGModule, MatBasis)> {
        let a = &self.algebra;
        let f = a.field();
        let mut per_degree: BTreeMap<i32, Vec<(usize, i32, usize)>> = BTreeMap::new();
        for (gi, g) in self.generators.iter().enumerate() {
            for (&ad, &an) in a.dims() {
                let entry = per_degree.entry(g.degree + ad).or_default();
                for ai in 0..an {
                    entry.push((gi, ad, ai));
                }
            }
        }
        for v in per_degree.values_mut() {
            v.sort();
        }
        let mut lookup = BTreeMap::new();
        for (&deg, v) in &per_degree {
            for (flat, &key) in v.iter().enumerate() {
                lookup.insert(key, (deg, flat));
            }
        }
        let basis = MatBasis {
            per_degree,
            lookup,
        };

        let mut dims = BTreeMap::new();
        let mut labels = BTreeMap::new();
        for (&deg, v) in &basis.per_degree {
            dims.insert(deg, v.len());
            labels.insert(
                deg,
                v.iter()
                    .map(|&(gi, ad, ai)| {
                        format!("{}·{}", self.generators[gi].label, a.label(ad, ai))
                    })
                    .collect(),
            );
        }

        let mut diffs = BTreeMap::new();
        for (&deg, v) in &basis.per_degree {
            let tgt_dim = basis.dim(deg + 1);
            if tgt_dim == 0 {
                continue;
            }
            let mut m = Mat::zero(f, tgt_dim, v.len());
            for (col, &(gi, ad, ai)) in v.iter().enumerate() {
                let mut x = SfEl::zero(deg);
                x.parts.insert(gi, a.basis_el(ad, ai));
                let dx = self.el_d(&x);
                for (row, c) in basis.flatten(a, &dx).into_iter().enumerate() {
                    if !c.is_zero() {
                        m.set(row, col, c);
                    }
                }
            }
            if !m.is_zero() {
                diffs.insert(deg, m);
            }
        }

        let mut action = BTreeMap::new();
        for (&deg, v) in &basis.per_degree {
            for (idx, &(gi, ad, ai)) in v.iter().enumerate() {
                for (&bd, &bn) in a.dims() {
                    if bd == 0 {
                        continue; // unit action is implied; keep table sparse
                    }
                    for bi in 0..bn {
                        let prod = a.mul_basis(ad, ai, bd, bi);
                        if prod.is_zero() {
                            continue;
                        }
                        let mut x = SfEl::zero(deg + bd);
                        x.parts.insert(gi, prod);
                        let coords = basis.flatten(a, &x);
                        if coords.iter().any(|c| !c.is_zero()) {
                            action.insert((deg, idx, bd, bi), coords);
                        }
                    }
                }
            }
        }
        // Unit action entries, required by the finite-module validator.
        for (&deg, v) in &basis.per_degree {
            for idx in 0..v.len() {
                let mut coords = vec![f.zero(); v.len()];
                coords[idx] = f.one();
                action.insert((deg, idx, 0, 0), coords);
            }
        }

        let module = FiniteDGModule::checked(Arc::clone(a), dims, labels, action, diffs)?;
        Ok((module, basis))
    }
}

/// Flat-basis bookkeeping of a materialized semi-free module: basis elements
/// are pairs (generator, algebra basis element).
#[derive(Clone, Debug)]
pub struct MatBasis {
    pub per_degree: BTreeMap<i32, Vec<(usize, i32, usize)>>,
    lookup: BTreeMap<(usize, i32, usize), (i32, usize)>,
}

impl MatBasis {
    pub fn dim(&self, degree: i32) -> usize {
        self.per_degree.get(&degree).map_or(0, Vec::len)
    }

    pub fn flat_index(&self, gen: usize, alg_deg: i32, alg_idx: usize) -> Option<(i32, usize)> {
        self.lookup.get(&(gen, alg_deg, alg_idx)).copied()
    }

    /// Coordinates of a module element in the flat basis of its degree.
    pub fn flatten(&self, algebra: &DGAlgebra, x: &SfEl) -> Vec<Scalar> {
        let f = algebra.field();
        let mut out = vec![f.zero(); self.dim(x.degree)];
        for (&gi, el) in &x.parts {
            for (ai, c) in el.coeffs.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                if let Some((deg, flat)) = self.flat_index(gi, el.degree, ai) {
                    debug_assert_eq!(deg, x.degree);
                    out[flat] = f.add(&out[flat], c);
                }
            }
        }
        out
    }

    /// Reads flat coordinates back into a module element.
    pub fn unflatten(&self, algebra: &DGAlgebra, degree: i32, coords: &[Scalar]) -> SfEl {
        let mut parts: BTreeMap<usize, El> = BTreeMap::new();
        if let Some(v) = self.per_degree.get(&degree) {
            assert_eq!(coords.len(), v.len());
            for (&(gi, ad, ai), c) in v.iter().zip(coords) {
                if c.is_zero() {
                    continue;
                }
                let el = parts.entry(gi).or_insert_with(|| algebra.zero_el(ad));
                debug_assert_eq!(el.degree, ad);
                el.coeffs[ai] = algebra.field().add(&el.coeffs[ai], c);
            }
        }
        parts.retain(|_, el| !el.is_zero());
        SfEl { degree, parts }
    }
}

/// A homogeneous A-linear chain map between semi-free modules, stored by
/// generator images. Degree-n maps satisfy d∘f = (-1)^n f∘d when they are
/// cycles in the Hom complex; [`SfMap::is_chain_map`] checks exactly that.
#[derive(Clone, Debug, PartialEq)]
pub struct SfMap {
    pub degree: i32,
    pub entries: AMat,
}

impl SfMap {
    pub fn zero(degree: i32) -> Self {
        SfMap {
            degree,
            entries: AMat::new(),
        }
    }

    /// The identity endomorphism.
    pub fn identity(m: &SemiFreeModule) -> Self {
        let mut entries = AMat::new();
        for j in 0..m.rank() {
            entries.set(j, j, m.algebra().unit_el());
        }
        SfMap { degree: 0, entries }
    }

    /// Structural degree check of the entries against source and target.
    pub fn check_shape(&self, source: &SemiFreeModule, target: &SemiFreeModule) -> Result<()> {
        for (&(j, i), el) in self.entries.iter() {
            if j >= source.rank() || i >= target.rank() {
                return Err(Error::InvalidModule("map entry out of range".into()));
            }
            let want = source.generators()[j].degree + self.degree - target.generators()[i].degree;
            if el.degree != want {
                return Err(Error::InvalidModule(format!(
                    "map entry ({j},{i}) has degree {} but should have {want}",
                    el.degree
                )));
            }
        }
        Ok(())
    }

    pub fn apply_gen(&self, target: &SemiFreeModule, src_gen: usize, src_degree: i32) -> SfEl {
        let mut out = SfEl::zero(src_degree + self.degree);
        for (&(j, i), el) in self.entries.iter() {
            if j == src_gen && !el.is_zero() {
                let cur = out.parts.entry(i).or_insert_with(|| target.algebra().zero_el(el.degree));
                *cur = target.algebra().add_el(cur, el);
            }
        }
        out.parts.retain(|_, el| !el.is_zero());
        out
    }

    pub fn apply(&self, source: &SemiFreeModule, target: &SemiFreeModule, x: &SfEl) -> SfEl {
        let mut out = SfEl::zero(x.degree + self.degree);
        for (&gi, coeff) in &x.parts {
            let fg = self.apply_gen(target, gi, source.generators()[gi].degree);
            let term = target.el_act(&fg, coeff);
            out = target.el_add(&out, &term);
        }
        out
    }

    /// Whether d∘f = (-1)^{deg f} f∘d holds on every generator.
    pub fn is_chain_map(&self, source: &SemiFreeModule, target: &SemiFreeModule) -> bool {
        let f = target.algebra().field();
        let sign = f.from_i64(if self.degree.rem_euclid(2) == 0 { 1 } else { -1 });
        (0..source.rank()).all(|j| {
            let lhs = target.el_d(&self.apply_gen(target, j, source.generators()[j].degree));
            let dg = source.el_d(&source.gen_el(j));
            let rhs = target.el_scale(&sign, &self.apply(source, target, &dg));
            target.el_add(&lhs, &target.el_scale(&f.from_i64(-1), &rhs)).is_zero()
        })
    }

    /// Composition self ∘ first (apply `first`, then `self`).
    pub fn compose(
        &self,
        first: &SfMap,
        source: &SemiFreeModule,
        middle: &SemiFreeModule,
        target: &SemiFreeModule,
    ) -> SfMap {
        let mut entries = AMat::new();
        for j in 0..source.rank() {
            let mid = first.apply_gen(middle, j, source.generators()[j].degree);
            let img = self.apply(middle, target, &mid);
            for (&i, el) in &img.parts {
                entries.set(j, i, el.clone());
            }
        }
        SfMap {
            degree: self.degree + first.degree,
            entries,
        }
    }

    pub fn add(&self, other: &SfMap, target: &SemiFreeModule) -> SfMap {
        assert_eq!(self.degree, other.degree);
        let a = target.algebra();
        let mut entries = self.entries.clone();
        for (&(j, i), el) in other.entries.iter() {
            let merged = match entries.get(j, i) {
                Some(cur) => a.add_el(cur, el),
                None => el.clone(),
            };
            entries.set(j, i, merged);
        }
        SfMap {
            degree: self.degree,
            entries,
        }
    }

    pub fn scale(&self, c: &Scalar, target: &SemiFreeModule) -> SfMap {
        let a = target.algebra();
        let mut entries = AMat::new();
        for (&(j, i), el) in self.entries.iter() {
            entries.set(j, i, a.scale_el(c, el));
        }
        SfMap {
            degree: self.degree,
            entries,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }
}

/// The mapping cone of a degree-0 chain map f: source → target.
///
/// Cone generators are the target generators followed by the source
/// generators shifted down one degree; the differential is the block matrix
/// [[d_target, f], [0, -d_source]] in that basis.
pub fn mapping_cone(
    f: &SfMap,
    source: &SemiFreeModule,
    target: &SemiFreeModule,
) -> Result<SemiFreeModule> {
    if f.degree != 0 {
        return Err(Error::InvalidModule(
            "mapping cone needs a degree-0 chain map".into(),
        ));
    }
    if source.algebra().content_hash() != target.algebra().content_hash() {
        return Err(Error::FieldMismatch);
    }
    f.check_shape(source, target)?;
    if !f.is_chain_map(source, target) {
        return Err(Error::InvalidModule(
            "mapping cone input does not satisfy the chain condition".into(),
        ));
    }
    let a = target.algebra();
    let offset = target.rank();
    let mut generators = target.generators().to_vec();
    for g in source.generators() {
        generators.push(Generator {
            label: format!("Σ{}", g.label),
            degree: g.degree - 1,
        });
    }
    let mut coeffs = target.diff_coeffs().clone();
    let minus_one = a.field().from_i64(-1);
    for (&(j, i), el) in source.diff_coeffs().iter() {
        coeffs.set(j + offset, i + offset, a.scale_el(&minus_one, el));
    }
    for (&(j, i), el) in f.entries.iter() {
        coeffs.set(j + offset, i, el.clone());
    }
    SemiFreeModule::new(Arc::clone(a), generators, coeffs)
}

//! Builders for the standard fixture algebras: truncated polynomial rings,
//! exterior algebras on odd generators, sphere models, and formal algebras.

use std::collections::BTreeMap;

use crate::dga::{DGAlgebra, DGAlgebraData};
use crate::error::{Error, Result};
use crate::scalar::FieldSpec;

/// k as a DG algebra concentrated in degree 0.
pub fn ground_field(field: FieldSpec) -> DGAlgebra {
    let mut dims = BTreeMap::new();
    dims.insert(0, 1);
    let mut labels = BTreeMap::new();
    labels.insert(0, vec!["1".to_string()]);
    let mut mul = BTreeMap::new();
    mul.insert((0, 0, 0, 0), vec![field.one()]);
    DGAlgebra::checked(
        field,
        DGAlgebraData {
            dims,
            labels,
            unit: vec![field.one()],
            mul,
            diff: BTreeMap::new(),
        },
    )
    .expect("ground field is a valid algebra")
}

/// k[x]/(x^power) with deg x = `gen_degree` and zero differential.
///
/// For odd `gen_degree` graded commutativity forces x^2 = 0 unless the
/// characteristic is 2, so `power > 2` with odd degree is rejected there.
pub fn truncated_polynomial(field: FieldSpec, gen_degree: i32, power: usize) -> Result<DGAlgebra> {
    if gen_degree <= 0 {
        return Err(Error::BadBuilder("generator degree must be positive".into()));
    }
    if power < 2 {
        return Err(Error::BadBuilder("power must be at least 2".into()));
    }
    if gen_degree % 2 != 0 && power > 2 && field.characteristic() != 2 {
        return Err(Error::BadBuilder(format!(
            "x^2 = 0 is forced for odd |x| = {gen_degree} in characteristic {}; power {power} > 2 is inconsistent",
            field.characteristic()
        )));
    }
    let mut dims = BTreeMap::new();
    let mut labels = BTreeMap::new();
    for k in 0..power {
        dims.insert(gen_degree * k as i32, 1);
        let lab = match k {
            0 => "1".to_string(),
            1 => "x".to_string(),
            _ => format!("x^{k}"),
        };
        labels.insert(gen_degree * k as i32, vec![lab]);
    }
    let mut mul = BTreeMap::new();
    for i in 0..power {
        for j in 0..power {
            if i + j < power {
                mul.insert(
                    (gen_degree * i as i32, 0, gen_degree * j as i32, 0),
                    vec![field.one()],
                );
            }
        }
    }
    DGAlgebra::checked(
        field,
        DGAlgebraData {
            dims,
            labels,
            unit: vec![field.one()],
            mul,
            diff: BTreeMap::new(),
        },
    )
}

/// Exterior algebra on generators of odd degrees, zero differential.
/// Basis: subsets of the generators; signs from sorting concatenations.
pub fn exterior(field: FieldSpec, odd_degrees: &[i32]) -> Result<DGAlgebra> {
    for &d in odd_degrees {
        if d <= 0 || d % 2 == 0 {
            return Err(Error::BadBuilder(format!(
                "exterior generators must have positive odd degree, got {d}"
            )));
        }
    }
    let n = odd_degrees.len();
    if n > 16 {
        return Err(Error::BadBuilder("too many exterior generators".into()));
    }
    // Subsets as bitmasks; degree = sum of member degrees.
    let subset_degree = |mask: usize| -> i32 {
        (0..n)
            .filter(|&g| mask & (1 << g) != 0)
            .map(|g| odd_degrees[g])
            .sum()
    };
    let subset_label = |mask: usize| -> String {
        if mask == 0 {
            return "1".to_string();
        }
        (0..n)
            .filter(|&g| mask & (1 << g) != 0)
            .map(|g| format!("x{}", g + 1))
            .collect::<Vec<_>>()
            .join("")
    };

    let mut per_degree: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
    for mask in 0..(1usize << n) {
        per_degree.entry(subset_degree(mask)).or_default().push(mask);
    }
    for masks in per_degree.values_mut() {
        masks.sort();
    }
    let mut index = BTreeMap::new();
    for (&deg, masks) in &per_degree {
        for (idx, &mask) in masks.iter().enumerate() {
            index.insert(mask, (deg, idx));
        }
    }

    let mut dims = BTreeMap::new();
    let mut labels = BTreeMap::new();
    for (&deg, masks) in &per_degree {
        dims.insert(deg, masks.len());
        labels.insert(deg, masks.iter().map(|&m| subset_label(m)).collect());
    }

    // Product of subset monomials: zero on overlap, else sign of the merge.
    // All generators are odd, so swapping adjacent generators contributes -1.
    let mut mul = BTreeMap::new();
    for (&ma, &(da, ia)) in &index {
        for (&mb, &(db, ib)) in &index {
            if ma & mb != 0 {
                continue;
            }
            let mut swaps = 0usize;
            for g in 0..n {
                if mb & (1 << g) != 0 {
                    // generators of ma with index greater than g must move past it
                    swaps += (g + 1..n).filter(|&h| ma & (1 << h) != 0).count();
                }
            }
            let sign = if swaps % 2 == 0 { 1 } else { -1 };
            let (dc, ic) = index[&(ma | mb)];
            debug_assert_eq!(dc, da + db);
            let mut v = vec![field.zero(); per_degree[&dc].len()];
            v[ic] = field.from_i64(sign);
            mul.insert((da, ia, db, ib), v);
        }
    }

    let mut unit = vec![field.zero(); per_degree[&0].len()];
    unit[index[&0].1] = field.one();
    DGAlgebra::checked(
        field,
        DGAlgebraData {
            dims,
            labels,
            unit,
            mul,
            diff: BTreeMap::new(),
        },
    )
}

/// The finite-dimensional model of the d-sphere: k[x]/(x^2) for even d,
/// the exterior algebra on one degree-d generator for odd d.
pub fn sphere_model(field: FieldSpec, d: i32) -> Result<DGAlgebra> {
    if d < 2 {
        return Err(Error::BadBuilder(
            "sphere model needs dimension at least 2".into(),
        ));
    }
    if d % 2 == 0 {
        truncated_polynomial(field, d, 2)
    } else {
        exterior(field, &[d])
    }
}

/// Views a graded algebra (zero differential) as a formal DG algebra.
pub fn formal(ga: &DGAlgebra) -> Result<DGAlgebra> {
    if !ga.diff_table().is_empty() {
        return Err(Error::BadBuilder(
            "formal() expects a graded algebra with zero differential".into(),
        ));
    }
    Ok(ga.clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    #[test]
    fn truncated_polynomial_dims() {
        // k[x]/(x^4), deg x = 2: dims 1 at degrees 0, 2, 4, 6.
        let a = truncated_polynomial(q(), 2, 4).unwrap();
        let dims: Vec<(i32, usize)> = a.dims().iter().map(|(&d, &n)| (d, n)).collect();
        assert_eq!(dims, vec![(0, 1), (2, 1), (4, 1), (6, 1)]);
        assert!(a.validate().is_valid());
        assert!(a.is_simply_connected_model());
    }

    #[test]
    fn odd_power_needs_char_two() {
        assert!(truncated_polynomial(q(), 3, 4).is_err());
        assert!(truncated_polynomial(FieldSpec::PrimeField(2), 3, 4).is_ok());
        assert!(truncated_polynomial(q(), 3, 2).is_ok());
    }

    #[test]
    fn exterior_three_five() {
        // E(x, y), |x| = 3, |y| = 5: basis 1, x, y, xy at degrees 0, 3, 5, 8.
        let a = exterior(q(), &[3, 5]).unwrap();
        let dims: Vec<(i32, usize)> = a.dims().iter().map(|(&d, &n)| (d, n)).collect();
        assert_eq!(dims, vec![(0, 1), (3, 1), (5, 1), (8, 1)]);
        assert!(a.validate().is_valid());
        // anticommutativity: x·y = -y·x
        let xy = a.mul_basis(3, 0, 5, 0);
        let yx = a.mul_basis(5, 0, 3, 0);
        assert_eq!(a.neg_el(&xy), yx);
        assert!(!xy.is_zero());
    }

    #[test]
    fn sphere_models_validate() {
        for d in 2..=5 {
            let a = sphere_model(q(), d).unwrap();
            assert!(a.validate().is_valid(), "sphere {d}");
            assert_eq!(a.total_dim(), 2);
            assert_eq!(a.hi(), d);
        }
    }
}

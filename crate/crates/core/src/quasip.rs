//! Transvection targets and the quotient maps θ they induce on
//! truncated groups, unit groups of group algebras through the regular
//! representation, and the quasi-p membership test (is the group
//! generated by its elements of p-power order?).

use crate::error::{Error, Result};
use crate::gf::{Field, FieldElem, FieldOps};
use crate::lgroup::{self, TruncElem};
use crate::matrix::{self, Mat};
use crate::subgrp::{self, GroupTable};
use serde::Serialize;

/// A family of square-zero matrices Δ_i (so T_i = I + Δ_i has order p)
/// together with a basis of gl_n extending them, plus the precomputed
/// dual functionals used to read coefficients off that basis.
#[derive(Clone, Debug)]
pub struct TransvectionTarget {
    n: usize,
    field: Field,
    deltas: Vec<Mat>,
    basis: Vec<Mat>,
    dual: Vec<Vec<FieldElem>>,
}

impl TransvectionTarget {
    /// Build from deltas plus an explicit full basis whose first
    /// entries are the deltas.
    pub fn with_basis(field: &Field, deltas: Vec<Mat>, basis: Vec<Mat>) -> Result<Self> {
        if deltas.is_empty() {
            return Err(Error::BadSpec("need at least one delta".into()));
        }
        let n = deltas[0].n();
        for (i, dm) in deltas.iter().enumerate() {
            if dm.n() != n || dm.field() != field {
                return Err(Error::Mismatch(format!("delta {i} has the wrong shape")));
            }
            if dm.is_zero() {
                return Err(Error::Domain(format!("delta {i} is zero")));
            }
            if !dm.mul(dm).is_zero() {
                return Err(Error::Domain(format!("delta {i} does not square to zero")));
            }
        }
        if basis.len() != n * n {
            return Err(Error::Domain(format!(
                "basis has {} elements, need {}",
                basis.len(),
                n * n
            )));
        }
        if basis[..deltas.len()] != deltas[..] {
            return Err(Error::Domain(
                "basis must start with the deltas in order".into(),
            ));
        }
        let rows: Vec<Vec<FieldElem>> = basis.iter().map(Mat::flatten).collect();
        let mut transpose = vec![vec![field.zero(); n * n]; n * n];
        for (i, row) in rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                transpose[j][i] = v.clone();
            }
        }
        let dual = matrix::invert_rows(&transpose, field)
            .ok_or_else(|| Error::Domain("deltas/basis do not span gl_n".into()))?;
        Ok(TransvectionTarget { n, field: field.clone(), deltas, basis, dual })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn deltas(&self) -> &[Mat] {
        &self.deltas
    }

    pub fn basis(&self) -> &[Mat] {
        &self.basis
    }

    /// The order-p generators T_i = I + Δ_i.
    pub fn transvections(&self) -> Vec<Mat> {
        let id = Mat::identity(self.n, &self.field);
        self.deltas.iter().map(|dm| id.add(dm)).collect()
    }

    /// Coefficients of a matrix in the stored basis.
    pub fn decompose(&self, m: &Mat) -> Result<Vec<FieldElem>> {
        if m.n() != self.n || m.field() != &self.field {
            return Err(Error::Mismatch("matrix has the wrong shape for this target".into()));
        }
        let flat = m.flatten();
        Ok(self
            .dual
            .iter()
            .map(|row| {
                let mut acc = self.field.zero();
                for (c, v) in row.iter().zip(&flat) {
                    acc = acc.add(&c.mul(v));
                }
                acc
            })
            .collect())
    }

    /// Wire form with matrix entries as canonical element indices.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "n": self.n,
            "field": &*self.field,
            "deltas": self.deltas.iter().map(mat_to_ints).collect::<Vec<_>>(),
            "basis": self.basis.iter().map(mat_to_ints).collect::<Vec<_>>(),
        })
    }
}

/// Row-major integer form of a matrix (entries as element indices).
pub fn mat_to_ints(m: &Mat) -> Vec<Vec<u64>> {
    (0..m.n())
        .map(|i| (0..m.n()).map(|j| m.get(i, j).index() as u64).collect())
        .collect()
}

/// Square-zero deltas extended to a gl_n basis by scanning the
/// standard matrices E_{ij} in row-major order.
pub fn general_target(field: &Field, generators: &[Mat]) -> Result<TransvectionTarget> {
    if generators.is_empty() {
        return Err(Error::BadSpec("need at least one generator".into()));
    }
    let n = generators[0].n();
    let id = Mat::identity(n, field);
    let mut deltas = Vec::with_capacity(generators.len());
    for (i, g) in generators.iter().enumerate() {
        if g.n() != n || g.field() != field {
            return Err(Error::Mismatch(format!("generator {i} has the wrong shape")));
        }
        let dm = g.sub(&id);
        if dm.is_zero() {
            return Err(Error::Domain(format!("generator {i} is the identity")));
        }
        if !dm.mul(&dm).is_zero() {
            return Err(Error::Domain(format!(
                "generator {i} minus identity does not square to zero"
            )));
        }
        deltas.push(dm);
    }
    let mut rows: Vec<Vec<FieldElem>> = deltas.iter().map(Mat::flatten).collect();
    if matrix::rank(&rows) != deltas.len() {
        let first_dependent = (0..deltas.len())
            .find(|&k| matrix::rank(&rows[..=k]) != k + 1)
            .unwrap_or(deltas.len() - 1);
        return Err(Error::Domain(format!(
            "generator {first_dependent} is dependent on the earlier ones"
        )));
    }
    let mut basis = deltas.clone();
    for i in 0..n {
        for j in 0..n {
            if basis.len() == n * n {
                break;
            }
            let e = Mat::unit(n, field, i, j);
            let mut candidate = rows.clone();
            candidate.push(e.flatten());
            if matrix::rank(&candidate) > rows.len() {
                rows = candidate;
                basis.push(e);
            }
        }
    }
    TransvectionTarget::with_basis(field, deltas, basis)
}

/// The order-3 permutation-representation target: transvections T_12,
/// T_23, T_13 over F_2, with {Δ_12, Δ_23, Δ_13} completed to a basis of
/// gl_3 by the deterministic elimination of `general_target`.
///
/// The pairwise products Δ_i·Δ_j do NOT extend the three deltas to a
/// basis — they only span a 4-dimensional subspace (for instance
/// Δ_12·Δ_13 = Δ_12 + Δ_12·Δ_23 over F_2), so the completion has to
/// come from the standard matrix units instead.
pub fn build_s3_f2() -> TransvectionTarget {
    let f = crate::gf::FieldSpec::prime(2).expect("2 is prime");
    let mat = |rows: &[[u32; 3]; 3]| {
        let rows: Vec<Vec<u32>> = rows.iter().map(|r| r.to_vec()).collect();
        Mat::from_rows(&f, &rows).expect("static shape")
    };
    let id = Mat::identity(3, &f);
    let t12 = mat(&[[0, 1, 0], [1, 0, 0], [0, 0, 1]]);
    let t23 = mat(&[[1, 0, 0], [0, 0, 1], [0, 1, 0]]);
    let t13 = mat(&[[0, 0, 1], [0, 1, 0], [1, 0, 0]]);
    debug_assert_eq!(t12.sub(&id), mat(&[[1, 1, 0], [1, 1, 0], [0, 0, 0]]));
    debug_assert_eq!(t13.sub(&id), mat(&[[1, 0, 1], [0, 0, 0], [1, 0, 1]]));
    general_target(&f, &[t12, t23, t13]).expect("the three deltas are independent")
}

/// One component θ_i: read the Δ_i-coefficient a of the degree-1
/// matrix and return I + a·Δ_i. A homomorphism for each fixed i.
pub fn theta_component(m: &TruncElem, target: &TransvectionTarget, i: usize) -> Result<Mat> {
    if i >= target.deltas.len() {
        return Err(Error::Domain(format!(
            "component {i} out of range (target has {})",
            target.deltas.len()
        )));
    }
    if m.n() != target.n || m.field() != &target.field {
        return Err(Error::Mismatch("element does not match the target shape".into()));
    }
    let coeff = target.decompose(m.coeff(1))?[i].clone();
    Ok(Mat::identity(target.n, &target.field).add(&target.deltas[i].scale(&coeff)))
}

/// θ: the ordered product of all components. A set map; the order is
/// part of the definition.
pub fn theta(m: &TruncElem, target: &TransvectionTarget, order: Option<&[usize]>) -> Result<Mat> {
    let k = target.deltas.len();
    let default_order: Vec<usize> = (0..k).collect();
    let order = order.unwrap_or(&default_order);
    {
        let mut seen = vec![false; k];
        if order.len() != k || order.iter().any(|&i| i >= k || std::mem::replace(&mut seen[i], true))
        {
            return Err(Error::Domain("order must be a permutation of the components".into()));
        }
    }
    let mut acc = Mat::identity(target.n, &target.field);
    for &i in order {
        acc = acc.mul(&theta_component(m, target, i)?);
    }
    Ok(acc)
}

/// θ swept over all of L_{n,d}(F): the raw image, and the subgroup the
/// transvections generate, compared.
#[derive(Clone, Debug)]
pub struct ThetaReport {
    pub order: Vec<usize>,
    pub image: Vec<Mat>,
    pub generated: Vec<Mat>,
    pub image_equals_generated: bool,
}

impl ThetaReport {
    pub fn image_size(&self) -> usize {
        self.image.len()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "order": self.order,
            "image_size": self.image.len(),
            "image": self.image.iter().map(mat_to_ints).collect::<Vec<_>>(),
        })
    }
}

pub fn theta_scan(
    target: &TransvectionTarget,
    d: usize,
    order: Option<&[usize]>,
) -> Result<ThetaReport> {
    let elems = lgroup::enumerate(target.n, d, &target.field)?;
    let mut image: Vec<Mat> = Vec::new();
    for m in &elems {
        let v = theta(m, target, order)?;
        if !image.contains(&v) {
            image.push(v);
        }
    }
    let generated = subgrp::closure(
        &target.transvections(),
        |a: &Mat, b: &Mat| Ok(a.mul(b)),
        crate::global_cap() as usize,
    )?;
    let image_equals_generated = image.len() == generated.len()
        && image.iter().all(|m| generated.contains(m));
    let k = target.deltas.len();
    let order = order.map(|o| o.to_vec()).unwrap_or_else(|| (0..k).collect());
    Ok(ThetaReport { order, image, generated, image_equals_generated })
}

/// The unit group of F_q[Γ] realized through the left regular
/// representation, with the canonical embedding of Γ.
#[derive(Debug)]
pub struct AlgebraUnits {
    pub table: GroupTable,
    pub embedding: Vec<usize>,
}

pub fn group_algebra_units(gamma: &GroupTable, field: &Field) -> Result<AlgebraUnits> {
    let g = gamma.order();
    let q = field.order();
    let mut total = 1u128;
    for _ in 0..g {
        total = total
            .checked_mul(q)
            .ok_or(Error::CapExceeded { needed: u128::MAX, cap: crate::global_cap() })?;
    }
    crate::check_cap(total)?;
    // right-translation table g·k⁻¹ used by the regular representation
    let conv_idx: Vec<usize> = (0..g * g)
        .map(|t| gamma.mul(t / g, gamma.inv(t % g)))
        .collect();
    let is_unit = |x: &Vec<FieldElem>| {
        let rows: Vec<Vec<FieldElem>> = (0..g)
            .map(|row| (0..g).map(|col| x[conv_idx[row * g + col]].clone()).collect())
            .collect();
        matrix::rank(&rows) == g
    };
    let mut units: Vec<Vec<FieldElem>> = Vec::new();
    for k in 0..total {
        let mut x = Vec::with_capacity(g);
        let mut rem = k;
        for pos in 0..g {
            let place = total / q.pow(pos as u32 + 1);
            x.push(field.from_index(rem / place));
            rem %= place;
        }
        if is_unit(&x) {
            units.push(x);
        }
    }
    let convolve = |x: &Vec<FieldElem>, y: &Vec<FieldElem>| -> Result<Vec<FieldElem>> {
        let mut out = vec![field.zero(); g];
        for h in 0..g {
            if x[h].is_zero() {
                continue;
            }
            for k in 0..g {
                let idx = gamma.mul(h, k);
                out[idx] = out[idx].add(&x[h].mul(&y[k]));
            }
        }
        Ok(out)
    };
    let label = |x: &Vec<FieldElem>| {
        let ints: Vec<u64> = x.iter().map(|c| c.index() as u64).collect();
        format!("{ints:?}")
    };
    let table = GroupTable::from_elements(&units, convolve, label)?;
    let mut embedding = Vec::with_capacity(g);
    for t in 0..g {
        let mut basis_vec = vec![field.zero(); g];
        basis_vec[t] = field.one();
        let pos = units.iter().position(|u| *u == basis_vec).ok_or_else(|| {
            Error::Verification("a group element is not invertible in its own algebra".into())
        })?;
        embedding.push(pos);
    }
    for a in 0..g {
        for b in 0..g {
            if table.mul(embedding[a], embedding[b]) != embedding[gamma.mul(a, b)] {
                return Err(Error::Verification(
                    "embedding fails to respect multiplication".into(),
                ));
            }
        }
    }
    let mut distinct = embedding.clone();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() != g {
        return Err(Error::Verification("embedding is not injective".into()));
    }
    Ok(AlgebraUnits { table, embedding })
}

/// Is Γ generated by its elements of p-power order?
pub fn quasi_p_check(gamma: &GroupTable, p: u32) -> bool {
    let p = p as u64;
    let p_elements: Vec<usize> = (0..gamma.order())
        .filter(|&i| {
            let mut o = gamma.element_order(i);
            while o % p == 0 {
                o /= p;
            }
            o == 1
        })
        .collect();
    gamma.generated(&p_elements).len() == gamma.order()
}

/// Summary row for quasi-p reporting.
#[derive(Clone, Debug, Serialize)]
pub struct QuasiPReport {
    pub order: usize,
    pub p: u32,
    pub p_power_elements: usize,
    pub generated_order: usize,
    pub quasi_p: bool,
}

pub fn quasi_p_report(gamma: &GroupTable, p: u32) -> QuasiPReport {
    let pu = p as u64;
    let p_elements: Vec<usize> = (0..gamma.order())
        .filter(|&i| {
            let mut o = gamma.element_order(i);
            while o % pu == 0 {
                o /= pu;
            }
            o == 1
        })
        .collect();
    let generated = gamma.generated(&p_elements);
    QuasiPReport {
        order: gamma.order(),
        p,
        p_power_elements: p_elements.len(),
        generated_order: generated.len(),
        quasi_p: generated.len() == gamma.order(),
    }
}

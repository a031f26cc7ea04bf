//! The truncated unipotent groups L_{n,d}(F) = (1 + s·gl_n(F)[s]/(s^{d+1}))^×,
//! the punctured-line variant Z × L, transition maps between levels, and
//! the polynomial-matrix membership predicates for the two line types.

use crate::error::{Error, Result};
use crate::gf::{Field, FieldElem, FieldOps};
use crate::matrix::Mat;
use crate::poly::{det_laurent, LaurentPoly};
use crate::scan;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::Serialize;

/// Element I + A_1 s + ... + A_d s^d of L_{n,d}; only A_1..A_d are stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruncElem {
    n: usize,
    d: usize,
    field: Field,
    coeffs: Vec<Mat>,
}

impl std::fmt::Debug for TruncElem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.label())
    }
}

impl TruncElem {
    pub fn identity(n: usize, d: usize, field: &Field) -> Result<TruncElem> {
        if n == 0 || d == 0 {
            return Err(Error::BadSpec("n and d must be at least 1".into()));
        }
        Ok(TruncElem {
            n,
            d,
            field: field.clone(),
            coeffs: vec![Mat::zero(n, field); d],
        })
    }

    /// Build from coefficient matrices A_1..A_d.
    pub fn from_coeffs(field: &Field, coeffs: Vec<Mat>) -> Result<TruncElem> {
        if coeffs.is_empty() {
            return Err(Error::BadSpec("need at least one coefficient matrix".into()));
        }
        let n = coeffs[0].n();
        if coeffs.iter().any(|m| m.n() != n || m.field() != field) {
            return Err(Error::Mismatch(
                "coefficient matrices must share size and field".into(),
            ));
        }
        Ok(TruncElem { n, d: coeffs.len(), field: field.clone(), coeffs })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Coefficient matrix A_k (1-based in the series).
    pub fn coeff(&self, k: usize) -> &Mat {
        &self.coeffs[k - 1]
    }

    pub fn coeffs(&self) -> &[Mat] {
        &self.coeffs
    }

    pub fn is_identity(&self) -> bool {
        self.coeffs.iter().all(Mat::is_zero)
    }

    fn same_shape(&self, other: &TruncElem, op: &str) -> Result<()> {
        if self.n != other.n || self.d != other.d || self.field != other.field {
            return Err(Error::Mismatch(format!(
                "{op} between L_{{{},{}}} and L_{{{},{}}} elements or different fields",
                self.n, self.d, other.n, other.d
            )));
        }
        Ok(())
    }

    pub(crate) fn mul_raw(&self, other: &TruncElem) -> TruncElem {
        let mut coeffs = Vec::with_capacity(self.d);
        for k in 1..=self.d {
            let mut c = self.coeffs[k - 1].add(&other.coeffs[k - 1]);
            for i in 1..k {
                let j = k - i;
                c = c.add(&self.coeffs[i - 1].mul(&other.coeffs[j - 1]));
            }
            coeffs.push(c);
        }
        TruncElem { n: self.n, d: self.d, field: self.field.clone(), coeffs }
    }

    /// Group product.
    pub fn mul(&self, other: &TruncElem) -> Result<TruncElem> {
        self.same_shape(other, "product")?;
        Ok(self.mul_raw(other))
    }

    /// Group inverse Σ_{k≤d} (−N)^k for the nilpotent part N.
    pub fn inv(&self) -> TruncElem {
        // recurrence form of the geometric series:
        // M_k = −A_k − Σ_{i=1..k-1} A_i·M_{k−i}
        let mut inv: Vec<Mat> = Vec::with_capacity(self.d);
        for k in 1..=self.d {
            let mut m = self.coeffs[k - 1].neg();
            for i in 1..k {
                m = m.sub(&self.coeffs[i - 1].mul(&inv[k - i - 1]));
            }
            inv.push(m);
        }
        TruncElem { n: self.n, d: self.d, field: self.field.clone(), coeffs: inv }
    }

    pub fn pow(&self, mut e: u64) -> TruncElem {
        let mut result = TruncElem::identity(self.n, self.d, &self.field).expect("valid shape");
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul_raw(&base);
            }
            base = base.mul_raw(&base);
            e >>= 1;
        }
        result
    }

    /// Multiplicative order (the group is a finite p-group).
    pub fn order(&self) -> u64 {
        let mut k = 1u64;
        let mut x = self.clone();
        while !x.is_identity() {
            x = x.mul_raw(self);
            k += 1;
        }
        k
    }

    /// Determinant of I + Σ A_k s^k truncated mod s^{d+1}, as an element
    /// of L_{1,d}; a homomorphism onto the abelian (big-Witt) quotient.
    pub fn det_map(&self) -> TruncElem {
        let entries: Vec<Vec<LaurentPoly>> = (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| {
                        let mut coeffs = Vec::with_capacity(self.d + 1);
                        coeffs.push(if i == j { self.field.one() } else { self.field.zero() });
                        for k in 1..=self.d {
                            coeffs.push(self.coeffs[k - 1].get(i, j).clone());
                        }
                        LaurentPoly::from_coeffs(&self.field, coeffs)
                    })
                    .collect()
            })
            .collect();
        let det = det_laurent(&entries, &self.field);
        debug_assert!(det.coeff(0).is_one());
        let coeffs = (1..=self.d)
            .map(|k| {
                let mut m = Mat::zero(1, &self.field);
                m.set(0, 0, det.coeff(k as i64));
                m
            })
            .collect();
        TruncElem { n: 1, d: self.d, field: self.field.clone(), coeffs }
    }

    /// Entrywise q-power Frobenius (fixes s).
    pub fn frobenius(&self, q: u64) -> Result<TruncElem> {
        let e = self.field.exponent_of(q)?;
        Ok(TruncElem {
            n: self.n,
            d: self.d,
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|m| m.frobenius(e)).collect(),
        })
    }

    /// Drop coefficients above level d2; a surjective homomorphism.
    pub fn truncate(&self, d2: usize) -> Result<TruncElem> {
        if d2 == 0 || d2 > self.d {
            return Err(Error::Domain(format!(
                "truncation level {d2} outside 1..={}",
                self.d
            )));
        }
        Ok(TruncElem {
            n: self.n,
            d: d2,
            field: self.field.clone(),
            coeffs: self.coeffs[..d2].to_vec(),
        })
    }

    /// Upper-left m×m block of every coefficient. A set map only; see
    /// [`corner_probe`] for the homomorphism failure it exhibits.
    pub fn corner_restrict(&self, m: usize) -> Result<TruncElem> {
        if m == 0 || m >= self.n {
            return Err(Error::Domain(format!(
                "corner size {m} outside 1..{}",
                self.n
            )));
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| {
                let mut block = Mat::zero(m, &self.field);
                for i in 0..m {
                    for j in 0..m {
                        block.set(i, j, a.get(i, j).clone());
                    }
                }
                block
            })
            .collect();
        Ok(TruncElem { n: m, d: self.d, field: self.field.clone(), coeffs })
    }

    /// Position in the lexicographic enumeration (coefficient stream:
    /// ascending s-degree, row-major per matrix).
    pub fn index(&self) -> u128 {
        let q = self.field.order();
        let mut acc = 0u128;
        for mat in &self.coeffs {
            for e in mat.entries() {
                acc = acc * q + e.index();
            }
        }
        acc
    }

    /// Human-oriented rendering, e.g. "1 + s + s^2" or "I + [[0,1],[0,0]]s".
    pub fn label(&self) -> String {
        let one = if self.n == 1 { "1" } else { "I" };
        let mut parts = vec![one.to_string()];
        for (k, mat) in self.coeffs.iter().enumerate() {
            if mat.is_zero() {
                continue;
            }
            let pow = if k == 0 { "s".to_string() } else { format!("s^{}", k + 1) };
            let coeff = if self.n == 1 {
                let e = mat.get(0, 0);
                if e.is_one() {
                    String::new()
                } else if self.field.r() == 1 {
                    e.coeffs()[0].to_string()
                } else {
                    format!("{:?}", e.coeffs())
                }
            } else {
                mat.label()
            };
            parts.push(format!("{coeff}{pow}"));
        }
        if parts.len() == 1 {
            parts[0].clone()
        } else {
            parts.join(" + ")
        }
    }
}

/// Entrywise embedding into an extension field.
pub fn embed_into(a: &TruncElem, target: &Field) -> Result<TruncElem> {
    let coeffs = a
        .coeffs()
        .iter()
        .map(|m| {
            let entries = m
                .entries()
                .iter()
                .map(|e| crate::gf::embed(e, target))
                .collect::<Result<Vec<_>>>()?;
            Mat::from_entries(a.n(), target, entries)
        })
        .collect::<Result<Vec<_>>>()?;
    TruncElem::from_coeffs(target, coeffs)
}

/// |L_{n,d}(F_q)| = q^{n²d}; None on u128 overflow.
pub fn group_order(n: usize, d: usize, field: &Field) -> Option<u128> {
    let q = field.order();
    let mut total = 1u128;
    for _ in 0..n * n * d {
        total = total.checked_mul(q)?;
    }
    Some(total)
}

fn checked_group_order(n: usize, d: usize, field: &Field) -> Result<u128> {
    let total = group_order(n, d, field).ok_or(Error::CapExceeded {
        needed: u128::MAX,
        cap: crate::global_cap(),
    })?;
    crate::check_cap(total)?;
    Ok(total)
}

/// k-th element in the lexicographic enumeration.
pub fn from_index(n: usize, d: usize, field: &Field, k: u128) -> TruncElem {
    let q = field.order();
    let positions = n * n * d;
    let mut digits = vec![0u128; positions];
    let mut k = k;
    for pos in (0..positions).rev() {
        digits[pos] = k % q;
        k /= q;
    }
    let coeffs = (0..d)
        .map(|lam| {
            let entries = (0..n * n)
                .map(|e| field.from_index(digits[lam * n * n + e]))
                .collect();
            Mat::from_entries(n, field, entries).expect("shape by construction")
        })
        .collect();
    TruncElem { n, d, field: field.clone(), coeffs }
}

/// All q^{n²d} elements in lexicographic coefficient order.
pub fn enumerate(n: usize, d: usize, field: &Field) -> Result<Vec<TruncElem>> {
    if n == 0 || d == 0 {
        return Err(Error::BadSpec("n and d must be at least 1".into()));
    }
    let total = checked_group_order(n, d, field)?;
    Ok(scan::map_indices(total as usize, |k| from_index(n, d, field, k as u128)))
}

/// Element of Z × L_{n,d}: winding exponent plus truncated part.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PuncturedElem {
    pub nu: i64,
    pub body: TruncElem,
}

impl PuncturedElem {
    pub fn identity(n: usize, d: usize, field: &Field) -> Result<PuncturedElem> {
        Ok(PuncturedElem { nu: 0, body: TruncElem::identity(n, d, field)? })
    }

    pub fn mul(&self, other: &PuncturedElem) -> Result<PuncturedElem> {
        Ok(PuncturedElem {
            nu: self.nu + other.nu,
            body: self.body.mul(&other.body)?,
        })
    }

    pub fn inv(&self) -> PuncturedElem {
        PuncturedElem { nu: -self.nu, body: self.body.inv() }
    }

    pub fn is_identity(&self) -> bool {
        self.nu == 0 && self.body.is_identity()
    }
}

/// Z × L elements with |ν| ≤ nu_bound, ν ascending then body order.
pub fn enumerate_punctured(
    n: usize,
    d: usize,
    field: &Field,
    nu_bound: i64,
) -> Result<Vec<PuncturedElem>> {
    if nu_bound < 0 {
        return Err(Error::Domain("nu bound must be nonnegative".into()));
    }
    let body_total = checked_group_order(n, d, field)?;
    let windows = 2 * nu_bound as u128 + 1;
    crate::check_cap(body_total.checked_mul(windows).ok_or(Error::CapExceeded {
        needed: u128::MAX,
        cap: crate::global_cap(),
    })?)?;
    let mut out = Vec::with_capacity((windows * body_total) as usize);
    for nu in -nu_bound..=nu_bound {
        for k in 0..body_total {
            out.push(PuncturedElem { nu, body: from_index(n, d, field, k) });
        }
    }
    Ok(out)
}

/// Which line the membership predicate refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LineVariant {
    /// Based at t=0; unit group of k[t].
    Affine,
    /// Based at t=1; unit group of k[t, t^{-1}].
    Punctured,
}

/// Square matrix of (Laurent) polynomials in t.
#[derive(Clone, Debug)]
pub struct PolyMatrix {
    n: usize,
    field: Field,
    entries: Vec<LaurentPoly>,
}

impl PolyMatrix {
    pub fn from_entries(n: usize, field: &Field, entries: Vec<LaurentPoly>) -> Result<PolyMatrix> {
        if entries.len() != n * n {
            return Err(Error::BadSpec(format!(
                "expected {} entries, got {}",
                n * n,
                entries.len()
            )));
        }
        if entries.iter().any(|e| e.field() != field) {
            return Err(Error::Mismatch("entries from a different field".into()));
        }
        Ok(PolyMatrix { n, field: field.clone(), entries })
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[i * self.n + j]
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.n != other.n || self.field != other.field {
            return Err(Error::Mismatch("matrix shapes differ".into()));
        }
        let mut entries = vec![LaurentPoly::zero(&self.field); self.n * self.n];
        for i in 0..self.n {
            for k in 0..self.n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..self.n {
                    let idx = i * self.n + j;
                    entries[idx] = entries[idx].add(&a.mul(other.get(k, j)));
                }
            }
        }
        Ok(PolyMatrix { n: self.n, field: self.field.clone(), entries })
    }

    fn eval(&self, x: &FieldElem) -> Result<Mat> {
        let mut m = Mat::zero(self.n, &self.field);
        for i in 0..self.n {
            for j in 0..self.n {
                m.set(i, j, self.get(i, j).eval(x)?);
            }
        }
        Ok(m)
    }

    pub fn det(&self) -> LaurentPoly {
        let rows: Vec<Vec<LaurentPoly>> = (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j).clone()).collect())
            .collect();
        det_laurent(&rows, &self.field)
    }
}

/// Membership in the automorphism-functor unit group for the chosen line:
/// affine requires M(0)=I and constant nonzero determinant; punctured
/// requires M(1)=I and monomial determinant c·t^m, c ≠ 0.
pub fn autf_member(m: &PolyMatrix, variant: LineVariant) -> Result<bool> {
    match variant {
        LineVariant::Affine => {
            if m.entries.iter().any(|e| e.valuation().map_or(false, |v| v < 0)) {
                return Err(Error::BadSpec(
                    "affine-line matrices must be polynomial in t".into(),
                ));
            }
            if !m.eval(&m.field.zero())?.is_identity() {
                return Ok(false);
            }
            let det = m.det();
            Ok(det.as_constant().map_or(false, |c| !c.is_zero()))
        }
        LineVariant::Punctured => {
            if !m.eval(&m.field.one())?.is_identity() {
                return Ok(false);
            }
            let det = m.det();
            Ok(det.as_monomial().map_or(false, |(_, c)| !c.is_zero()))
        }
    }
}

/// Result of probing whether upper-left restriction respected a product.
#[derive(Clone, Debug, Serialize)]
pub struct CornerProbe {
    pub m: usize,
    pub corner_of_product: String,
    pub product_of_corners: String,
    pub homomorphic: bool,
}

/// Compare corner_restrict(a·b) against corner_restrict(a)·corner_restrict(b).
pub fn corner_probe(a: &TruncElem, b: &TruncElem, m: usize) -> Result<CornerProbe> {
    let lhs = a.mul(b)?.corner_restrict(m)?;
    let rhs = a.corner_restrict(m)?.mul(&b.corner_restrict(m)?)?;
    Ok(CornerProbe {
        m,
        corner_of_product: lhs.label(),
        product_of_corners: rhs.label(),
        homomorphic: lhs == rhs,
    })
}

/// Outcome of the group-axiom suite for one (n, d, q) configuration.
#[derive(Clone, Debug, Serialize)]
pub struct AxiomReport {
    pub n: usize,
    pub d: usize,
    pub p: u32,
    pub r: usize,
    pub order: u128,
    pub enumeration_ok: bool,
    pub identity_ok: bool,
    pub inverse_ok: bool,
    pub assoc_samples: usize,
    pub assoc_ok: bool,
}

impl AxiomReport {
    pub fn pass(&self) -> bool {
        self.enumeration_ok && self.identity_ok && self.inverse_ok && self.assoc_ok
    }
}

/// Enumerate L_{n,d}(F) and check the group axioms: count and
/// distinctness, identity and inverses exhaustively, associativity on
/// seeded random triples.
pub fn verify_group_axioms(
    n: usize,
    d: usize,
    field: &Field,
    assoc_samples: usize,
    seed: u64,
) -> Result<AxiomReport> {
    let expected = checked_group_order(n, d, field)?;
    let total = expected as usize;
    // elements are regenerated from their index inside each scan rather
    // than held in one big vector, so large configurations stay cheap
    let enumeration_ok =
        scan::all_indices(total, |k| from_index(n, d, field, k as u128).index() == k as u128);
    let id = TruncElem::identity(n, d, field)?;
    let identity_ok = scan::all_indices(total, |k| {
        let a = from_index(n, d, field, k as u128);
        a.mul_raw(&id) == a && id.mul_raw(&a) == a
    });
    let inverse_ok = scan::all_indices(total, |k| {
        let a = from_index(n, d, field, k as u128);
        let ai = a.inv();
        a.mul_raw(&ai).is_identity() && ai.mul_raw(&a).is_identity()
    });
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let triples: Vec<(u128, u128, u128)> = (0..assoc_samples)
        .map(|_| {
            (
                rng.gen_range(0..expected),
                rng.gen_range(0..expected),
                rng.gen_range(0..expected),
            )
        })
        .collect();
    let assoc_ok = scan::all_indices(triples.len(), |t| {
        let (i, j, k) = triples[t];
        let a = from_index(n, d, field, i);
        let b = from_index(n, d, field, j);
        let c = from_index(n, d, field, k);
        a.mul_raw(&b).mul_raw(&c) == a.mul_raw(&b.mul_raw(&c))
    });
    Ok(AxiomReport {
        n,
        d,
        p: field.p(),
        r: field.r(),
        order: expected,
        enumeration_ok,
        identity_ok,
        inverse_ok,
        assoc_samples,
        assoc_ok,
    })
}

/// Every (n, d, field) with q^{n²d} ≤ bound, over all supported
/// characteristics and degrees, ordered by (p, r, n, d).
pub fn shapes_within(bound: u128) -> Result<Vec<(usize, usize, Field)>> {
    const PRIMES: &[u32] = &[
        2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83,
        89, 97,
    ];
    let mut shapes = Vec::new();
    for &p in PRIMES {
        for r in 1..=crate::gf::MAX_R {
            let q = (p as u128).checked_pow(r as u32);
            if q.map_or(true, |q| q > bound) {
                break;
            }
            let field = crate::gf::FieldSpec::default_for(p, r)?;
            for n in 1.. {
                if group_order(n, 1, &field).map_or(true, |o| o > bound) {
                    break;
                }
                for d in 1.. {
                    if group_order(n, d, &field).map_or(true, |o| o > bound) {
                        break;
                    }
                    shapes.push((n, d, field.clone()));
                }
            }
        }
    }
    Ok(shapes)
}

/// JSON wire form of a TruncElem.
pub fn trunc_to_json(a: &TruncElem) -> serde_json::Value {
    let coeffs: Vec<Vec<Vec<u32>>> = a
        .coeffs
        .iter()
        .map(|m| m.entries().iter().map(|e| e.coeffs().to_vec()).collect())
        .collect();
    serde_json::json!({
        "n": a.n,
        "d": a.d,
        "field": &*a.field,
        "coeffs": coeffs,
    })
}

pub fn trunc_from_json(v: &serde_json::Value) -> Result<TruncElem> {
    let n = v["n"].as_u64().ok_or_else(|| Error::BadSpec("missing n".into()))? as usize;
    let d = v["d"].as_u64().ok_or_else(|| Error::BadSpec("missing d".into()))? as usize;
    let spec: crate::gf::FieldSpec = serde_json::from_value(v["field"].clone())?;
    let field = crate::gf::FieldSpec::new(spec.p(), spec.r(), spec.modulus().to_vec())?;
    let raw: Vec<Vec<Vec<u32>>> = serde_json::from_value(v["coeffs"].clone())?;
    if raw.len() != d {
        return Err(Error::BadSpec(format!("expected {d} coefficient matrices")));
    }
    let mut coeffs = Vec::with_capacity(d);
    for mat in raw {
        if mat.len() != n * n {
            return Err(Error::BadSpec(format!("expected {} entries per matrix", n * n)));
        }
        let entries = mat
            .iter()
            .map(|c| field.elem(c))
            .collect::<Result<Vec<_>>>()?;
        coeffs.push(Mat::from_entries(n, &field, entries)?);
    }
    TruncElem::from_coeffs(&field, coeffs)
}

pub fn punctured_to_json(a: &PuncturedElem) -> serde_json::Value {
    let mut v = trunc_to_json(&a.body);
    v["nu"] = serde_json::json!(a.nu);
    v
}

pub fn punctured_from_json(v: &serde_json::Value) -> Result<PuncturedElem> {
    let nu = v["nu"].as_i64().ok_or_else(|| Error::BadSpec("missing nu".into()))?;
    Ok(PuncturedElem { nu, body: trunc_from_json(v)? })
}

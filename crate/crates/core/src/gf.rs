//! Exact arithmetic in F_{p^r}: coefficient vectors over a fixed
//! irreducible modulus, Frobenius, and cached embeddings into
//! extension fields.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

/// Largest supported characteristic.
pub const MAX_P: u32 = 97;
/// Largest supported extension degree.
pub const MAX_R: usize = 8;

type Coeffs = SmallVec<[u32; 4]>;

/// A presentation of F_{p^r}: characteristic plus a monic irreducible
/// modulus of degree r (coefficient list, constant term first).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldSpec {
    p: u32,
    r: usize,
    modulus: Vec<u32>,
}

/// Shared handle to a validated [`FieldSpec`].
pub type Field = Arc<FieldSpec>;

#[derive(Serialize, Deserialize)]
struct FieldSpecWire {
    p: u32,
    r: usize,
    modulus: Vec<u32>,
}

impl Serialize for FieldSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FieldSpecWire { p: self.p, r: self.r, modulus: self.modulus.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for FieldSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = FieldSpecWire::deserialize(d)?;
        FieldSpec::new(w.p, w.r, w.modulus)
            .map(|f| (*f).clone())
            .map_err(serde::de::Error::custom)
    }
}

pub(crate) fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// Fixed moduli for the small fields tests lean on.
const MODULUS_TABLE: &[(u32, usize, &[u32])] = &[
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (3, 2, &[1, 0, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (3, 4, &[2, 1, 0, 0, 1]),
    (5, 2, &[2, 0, 1]),
    (5, 3, &[1, 1, 0, 1]),
    (5, 4, &[2, 0, 1, 0, 1]),
];

// Dense polynomial helpers over F_p (constant term first, trimmed).

fn poly_rem(f: &[u32], g: &[u32], p: u32) -> Vec<u32> {
    let mut rem: Vec<u64> = f.iter().map(|&c| c as u64).collect();
    let dg = g.len() - 1;
    let lead_inv = mod_inv(g[dg], p) as u64;
    while rem.len() > dg {
        let k = rem.len() - 1 - dg;
        let c = rem[rem.len() - 1] % p as u64 * lead_inv % p as u64;
        for (i, &gc) in g.iter().enumerate() {
            let sub = c * gc as u64 % p as u64;
            rem[k + i] = (rem[k + i] + p as u64 - sub) % p as u64;
        }
        while rem.last() == Some(&0) {
            rem.pop();
        }
        if rem.is_empty() {
            break;
        }
    }
    rem.into_iter().map(|c| c as u32).collect()
}

/// Exhaustive factor search: no monic divisor of degree 1..=r/2.
fn poly_is_irreducible(f: &[u32], p: u32) -> bool {
    let r = f.len() - 1;
    if r == 1 {
        return true;
    }
    if f[0] == 0 {
        return false; // divisible by x
    }
    for deg in 1..=r / 2 {
        let count = (p as u128).pow(deg as u32);
        let mut idx = 0u128;
        while idx < count {
            let mut g = Vec::with_capacity(deg + 1);
            let mut k = idx;
            for _ in 0..deg {
                g.push((k % p as u128) as u32);
                k /= p as u128;
            }
            g.push(1);
            if poly_rem(f, &g, p).is_empty() {
                return false;
            }
            idx += 1;
        }
    }
    true
}

fn mod_inv(a: u32, p: u32) -> u32 {
    // p prime, a != 0 mod p
    let mut result = 1u64;
    let mut base = a as u64 % p as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    result as u32
}

impl FieldSpec {
    /// Validate and build a field presentation.
    pub fn new(p: u32, r: usize, modulus: Vec<u32>) -> Result<Field> {
        if p > MAX_P || !is_prime(p) {
            return Err(Error::BadSpec(format!("p = {p} is not a prime <= {MAX_P}")));
        }
        if r == 0 || r > MAX_R {
            return Err(Error::BadSpec(format!("degree r = {r} outside 1..={MAX_R}")));
        }
        let modulus: Vec<u32> = modulus.into_iter().map(|c| c % p).collect();
        if modulus.len() != r + 1 || modulus[r] != 1 {
            return Err(Error::BadSpec(format!(
                "modulus must be monic of degree {r} with {} coefficients",
                r + 1
            )));
        }
        if !poly_is_irreducible(&modulus, p) {
            return Err(Error::BadSpec("modulus is reducible".into()));
        }
        Ok(Arc::new(FieldSpec { p, r, modulus }))
    }

    /// The prime field F_p (modulus x).
    pub fn prime(p: u32) -> Result<Field> {
        Self::new(p, 1, vec![0, 1])
    }

    /// Built-in modulus for p in {2,3,5}, r <= 4.
    pub fn from_table(p: u32, r: usize) -> Result<Field> {
        if r == 1 {
            return Self::prime(p);
        }
        for &(tp, tr, m) in MODULUS_TABLE {
            if tp == p && tr == r {
                return Self::new(p, r, m.to_vec());
            }
        }
        Err(Error::BadSpec(format!(
            "no built-in modulus for p={p}, r={r}; supply one explicitly"
        )))
    }

    /// First monic irreducible of degree r in lexicographic coefficient order.
    pub fn find_irreducible(p: u32, r: usize) -> Result<Field> {
        if p > MAX_P || !is_prime(p) {
            return Err(Error::BadSpec(format!("p = {p} is not a prime <= {MAX_P}")));
        }
        if r == 0 || r > MAX_R {
            return Err(Error::BadSpec(format!("degree r = {r} outside 1..={MAX_R}")));
        }
        let count = (p as u128).pow(r as u32);
        let mut idx = 0u128;
        while idx < count {
            let mut coeffs = Vec::with_capacity(r + 1);
            let mut k = idx;
            for _ in 0..r {
                coeffs.push((k % p as u128) as u32);
                k /= p as u128;
            }
            coeffs.push(1);
            if poly_is_irreducible(&coeffs, p) {
                return Ok(Arc::new(FieldSpec { p, r, modulus: coeffs }));
            }
            idx += 1;
        }
        Err(Error::Verification(format!(
            "no irreducible of degree {r} over F_{p} found"
        )))
    }

    /// Table modulus when available, otherwise the first irreducible.
    pub fn default_for(p: u32, r: usize) -> Result<Field> {
        Self::from_table(p, r).or_else(|_| Self::find_irreducible(p, r))
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// Field cardinality p^r.
    pub fn order(&self) -> u128 {
        (self.p as u128).pow(self.r as u32)
    }

    /// The exponent e with q = p^e, if one exists.
    pub fn exponent_of(&self, q: u64) -> Result<u32> {
        let mut v = q;
        let mut e = 0u32;
        while v > 1 && v % self.p as u64 == 0 {
            v /= self.p as u64;
            e += 1;
        }
        if v != 1 || e == 0 {
            return Err(Error::Domain(format!(
                "{q} is not a positive power of the characteristic {}",
                self.p
            )));
        }
        Ok(e)
    }
}

/// Element constructors live on the shared handle so every element can
/// carry its field.
pub trait FieldOps {
    fn zero(&self) -> FieldElem;
    fn one(&self) -> FieldElem;
    /// Residue class of x (zero in a prime field presented with modulus x).
    fn generator(&self) -> FieldElem;
    fn elem(&self, coeffs: &[u32]) -> Result<FieldElem>;
    /// Scalar from the prime subfield.
    fn scalar(&self, c: u32) -> FieldElem;
    /// k-th element in lexicographic coefficient order.
    fn from_index(&self, k: u128) -> FieldElem;
    fn enumerate(&self) -> Result<Vec<FieldElem>>;
}

impl FieldOps for Field {
    fn zero(&self) -> FieldElem {
        FieldElem { spec: self.clone(), coeffs: smallvec::smallvec![0; self.r] }
    }

    fn one(&self) -> FieldElem {
        self.scalar(1)
    }

    fn generator(&self) -> FieldElem {
        let mut coeffs: Coeffs = smallvec::smallvec![0; self.r];
        if self.r > 1 {
            coeffs[1] = 1;
        }
        FieldElem { spec: self.clone(), coeffs }
    }

    fn elem(&self, coeffs: &[u32]) -> Result<FieldElem> {
        if coeffs.len() > self.r {
            return Err(Error::Domain(format!(
                "{} coefficients for a degree-{} field",
                coeffs.len(),
                self.r
            )));
        }
        let mut c: Coeffs = coeffs.iter().map(|&x| x % self.p).collect();
        c.resize(self.r, 0);
        Ok(FieldElem { spec: self.clone(), coeffs: c })
    }

    fn scalar(&self, c: u32) -> FieldElem {
        let mut coeffs: Coeffs = smallvec::smallvec![0; self.r];
        coeffs[0] = c % self.p;
        FieldElem { spec: self.clone(), coeffs }
    }

    fn from_index(&self, k: u128) -> FieldElem {
        // First coefficient is the most significant digit, matching
        // lexicographic order on coefficient vectors.
        let mut coeffs: Coeffs = smallvec::smallvec![0; self.r];
        let mut k = k;
        for i in (0..self.r).rev() {
            coeffs[i] = (k % self.p as u128) as u32;
            k /= self.p as u128;
        }
        FieldElem { spec: self.clone(), coeffs }
    }

    fn enumerate(&self) -> Result<Vec<FieldElem>> {
        crate::check_cap(self.order())?;
        Ok((0..self.order()).map(|k| self.from_index(k)).collect())
    }
}

/// Element of F_{p^r} as a reduced coefficient vector.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElem {
    spec: Field,
    coeffs: Coeffs,
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}){:?}", self.spec.p, self.spec.r, &self.coeffs[..])
    }
}

impl FieldElem {
    pub fn spec(&self) -> &Field {
        &self.spec
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    /// Position in the lexicographic enumeration of the field.
    pub fn index(&self) -> u128 {
        let p = self.spec.p as u128;
        self.coeffs.iter().fold(0u128, |acc, &c| acc * p + c as u128)
    }

    fn assert_same(&self, other: &FieldElem, op: &str) -> Result<()> {
        if self.spec != other.spec {
            return Err(Error::Mismatch(format!(
                "{op} over different fields (F_{}^{} vs F_{}^{})",
                self.spec.p, self.spec.r, other.spec.p, other.spec.r
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &FieldElem) -> FieldElem {
        debug_assert_eq!(self.spec, other.spec);
        let p = self.spec.p;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| (a + b) % p)
            .collect();
        FieldElem { spec: self.spec.clone(), coeffs }
    }

    pub fn sub(&self, other: &FieldElem) -> FieldElem {
        debug_assert_eq!(self.spec, other.spec);
        let p = self.spec.p;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| (a + p - b) % p)
            .collect();
        FieldElem { spec: self.spec.clone(), coeffs }
    }

    pub fn neg(&self) -> FieldElem {
        let p = self.spec.p;
        let coeffs = self.coeffs.iter().map(|&a| (p - a) % p).collect();
        FieldElem { spec: self.spec.clone(), coeffs }
    }

    pub fn mul(&self, other: &FieldElem) -> FieldElem {
        debug_assert_eq!(self.spec, other.spec);
        let p = self.spec.p as u64;
        let r = self.spec.r;
        let mut prod = vec![0u64; 2 * r - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                prod[i + j] = (prod[i + j] + a as u64 * b as u64) % p;
            }
        }
        // reduce by the modulus: x^r = -(m_0 + m_1 x + ... + m_{r-1} x^{r-1})
        for k in (r..2 * r - 1).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for (i, &m) in self.spec.modulus[..r].iter().enumerate() {
                let sub = c * m as u64 % p;
                prod[k - r + i] = (prod[k - r + i] + p - sub) % p;
            }
        }
        let coeffs = prod[..r].iter().map(|&c| c as u32).collect();
        FieldElem { spec: self.spec.clone(), coeffs }
    }

    pub fn pow(&self, mut e: u128) -> FieldElem {
        let mut result = self.spec.one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        result
    }

    /// Multiplicative inverse; fails on zero.
    pub fn inv(&self) -> Result<FieldElem> {
        if self.is_zero() {
            return Err(Error::Domain("inverse of zero".into()));
        }
        Ok(self.pow(self.spec.order() - 2))
    }

    /// a^{p^e}.
    pub fn frobenius(&self, e: u32) -> FieldElem {
        let mut x = self.clone();
        for _ in 0..e {
            x = x.pow(self.spec.p as u128);
        }
        x
    }

    /// a^q for q = p^e; rejects q that is not a power of p.
    pub fn frobenius_q(&self, q: u64) -> Result<FieldElem> {
        let e = self.spec.exponent_of(q)?;
        Ok(self.frobenius(e))
    }

    pub fn checked_add(&self, other: &FieldElem) -> Result<FieldElem> {
        self.assert_same(other, "add")?;
        Ok(self.add(other))
    }

    pub fn checked_mul(&self, other: &FieldElem) -> Result<FieldElem> {
        self.assert_same(other, "mul")?;
        Ok(self.mul(other))
    }

    pub fn checked_sub(&self, other: &FieldElem) -> Result<FieldElem> {
        self.assert_same(other, "sub")?;
        Ok(self.sub(other))
    }
}

type EmbedKey = (FieldSpec, FieldSpec);

fn embed_cache() -> &'static Mutex<HashMap<EmbedKey, Vec<Coeffs>>> {
    static CACHE: OnceLock<Mutex<HashMap<EmbedKey, Vec<Coeffs>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Embed `a` into an extension field, mapping the source generator to
/// the lexicographically least root of the source modulus. The root is
/// located once per (source, target) pair and cached.
pub fn embed(a: &FieldElem, target: &Field) -> Result<FieldElem> {
    let src = a.spec.clone();
    if src == *target {
        return Ok(a.clone());
    }
    if src.p != target.p {
        return Err(Error::Domain(format!(
            "cannot embed characteristic {} into characteristic {}",
            src.p, target.p
        )));
    }
    if target.r % src.r != 0 {
        return Err(Error::Domain(format!(
            "degree {} does not divide degree {}",
            src.r, target.r
        )));
    }
    let key = ((*src).clone(), (**target).clone());
    let powers = {
        let cache = embed_cache().lock().unwrap();
        cache.get(&key).cloned()
    };
    let powers = match powers {
        Some(p) => p,
        None => {
            let root = find_least_root(&src, target)?;
            let mut powers: Vec<Coeffs> = Vec::with_capacity(src.r);
            let mut acc = target.one();
            for _ in 0..src.r {
                powers.push(acc.coeffs.clone());
                acc = acc.mul(&root);
            }
            embed_cache().lock().unwrap().insert(key, powers.clone());
            powers
        }
    };
    let mut out = target.zero();
    for (i, &c) in a.coeffs.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let term = FieldElem { spec: target.clone(), coeffs: powers[i].clone() };
        out = out.add(&term.mul(&target.scalar(c)));
    }
    Ok(out)
}

fn find_least_root(src: &Field, target: &Field) -> Result<FieldElem> {
    crate::check_cap(target.order())?;
    for k in 0..target.order() {
        let z = target.from_index(k);
        let mut val = target.zero();
        let mut zp = target.one();
        for &m in src.modulus.iter() {
            if m != 0 {
                val = val.add(&zp.mul(&target.scalar(m)));
            }
            zp = zp.mul(&z);
        }
        if val.is_zero() {
            return Ok(z);
        }
    }
    Err(Error::Verification(format!(
        "modulus of F_{}^{} has no root in F_{}^{}",
        src.p, src.r, target.p, target.r
    )))
}

/// Wire form of an element: just the coefficient vector.
pub fn elem_to_json(a: &FieldElem) -> serde_json::Value {
    serde_json::json!({ "coeffs": a.coeffs().to_vec() })
}

pub fn elem_from_json(spec: &Field, v: &serde_json::Value) -> Result<FieldElem> {
    let coeffs: Vec<u32> = serde_json::from_value(
        v.get("coeffs")
            .ok_or_else(|| Error::BadSpec("missing \"coeffs\"".into()))?
            .clone(),
    )?;
    spec.elem(&coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f4() -> Field {
        FieldSpec::from_table(2, 2).unwrap()
    }

    #[test]
    fn add_in_f2_wraps() {
        let f2 = FieldSpec::prime(2).unwrap();
        assert!(f2.one().add(&f2.one()).is_zero());
    }

    #[test]
    fn generator_square_in_f4() {
        let f = f4();
        let g = f.generator();
        // g^2 = g + 1 under x^2 + x + 1
        assert_eq!(g.mul(&g), f.elem(&[1, 1]).unwrap());
    }

    #[test]
    fn inverse_by_exhaustive_scan() {
        // oracle: the unique x with (g+1) * x = 1 among the 3 nonzero elements
        let f = f4();
        let a = f.elem(&[1, 1]).unwrap();
        let mut found = None;
        for k in 1..4 {
            let x = f.from_index(k);
            if a.mul(&x).is_one() {
                found = Some(x);
            }
        }
        let oracle = found.unwrap();
        assert_eq!(oracle, f.generator());
        assert_eq!(a.inv().unwrap(), oracle);
    }

    #[test]
    fn inverse_of_zero_rejected() {
        assert!(matches!(f4().zero().inv(), Err(Error::Domain(_))));
    }

    #[test]
    fn mismatched_specs_rejected() {
        let a = f4().one();
        let b = FieldSpec::prime(3).unwrap().one();
        assert!(matches!(a.checked_add(&b), Err(Error::Mismatch(_))));
    }

    #[test]
    fn frobenius_on_f4() {
        let f = f4();
        let g = f.generator();
        assert_eq!(g.frobenius(1), f.elem(&[1, 1]).unwrap());
        assert_eq!(f.one().frobenius(5), f.one());
        for k in 0..4 {
            let x = f.from_index(k);
            assert_eq!(x.frobenius(f.r() as u32), x);
        }
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        // all fields with p^r <= 81
        let specs: Vec<Field> = [(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (3, 3), (5, 1), (5, 2), (7, 1), (79, 1)]
            .iter()
            .map(|&(p, r)| FieldSpec::default_for(p, r).unwrap())
            .filter(|f| f.order() <= 81)
            .collect();
        for f in specs {
            let elems = f.enumerate().unwrap();
            for a in &elems {
                for b in &elems {
                    assert_eq!(a.add(b), b.add(a));
                    assert_eq!(a.mul(b), b.mul(a));
                    // Frobenius is a ring homomorphism
                    assert_eq!(a.add(b).frobenius(1), a.frobenius(1).add(&b.frobenius(1)));
                    assert_eq!(a.mul(b).frobenius(1), a.frobenius(1).mul(&b.frobenius(1)));
                    for c in &elems {
                        assert_eq!(a.add(b).add(c), a.add(&b.add(c)));
                        assert_eq!(a.mul(b).mul(c), a.mul(&b.mul(c)));
                        assert_eq!(a.mul(&b.add(c)), a.mul(b).add(&a.mul(c)));
                    }
                }
                if !a.is_zero() {
                    assert!(a.mul(&a.inv().unwrap()).is_one());
                }
                assert!(a.add(&a.neg()).is_zero());
            }
        }
    }

    #[test]
    fn enumerate_f2_and_f4() {
        let f2 = FieldSpec::prime(2).unwrap();
        let elems = f2.enumerate().unwrap();
        assert_eq!(elems, vec![f2.zero(), f2.one()]);
        assert_eq!(f4().enumerate().unwrap().len(), 4);
    }

    #[test]
    fn f9_closed_under_frobenius_orbit() {
        let f9 = FieldSpec::from_table(3, 2).unwrap();
        assert_eq!(f9.modulus(), &[1, 0, 1]);
        let elems = f9.enumerate().unwrap();
        assert_eq!(elems.len(), 9);
        for x in &elems {
            assert_eq!(x.pow(9), *x);
        }
    }

    #[test]
    fn embed_f2_into_f4() {
        let f2 = FieldSpec::prime(2).unwrap();
        let f = f4();
        assert!(embed(&f2.one(), &f).unwrap().is_one());
        // additive on the whole 2-element domain
        for a in f2.enumerate().unwrap() {
            for b in f2.enumerate().unwrap() {
                assert_eq!(
                    embed(&a.add(&b), &f).unwrap(),
                    embed(&a, &f).unwrap().add(&embed(&b, &f).unwrap())
                );
            }
        }
    }

    #[test]
    fn embed_f4_generator_into_f16() {
        let f = f4();
        let f16 = FieldSpec::from_table(2, 4).unwrap();
        // oracle: lexicographically least root of x^2+x+1 in F_16
        let mut least = None;
        for k in 0..16 {
            let z = f16.from_index(k);
            if z.mul(&z).add(&z).add(&f16.one()).is_zero() {
                least = Some(z);
                break;
            }
        }
        let root = least.unwrap();
        assert_eq!(root, f16.elem(&[0, 1, 1, 0]).unwrap());
        assert_eq!(embed(&f.generator(), &f16).unwrap(), root);
    }

    #[test]
    fn embed_commutes_with_frobenius() {
        let f = f4();
        let f16 = FieldSpec::from_table(2, 4).unwrap();
        for x in f.enumerate().unwrap() {
            assert_eq!(
                embed(&x.frobenius(1), &f16).unwrap(),
                embed(&x, &f16).unwrap().frobenius(1)
            );
        }
    }

    #[test]
    fn embed_rejects_bad_degrees_and_characteristic() {
        let f8 = FieldSpec::from_table(2, 3).unwrap();
        let f = f4();
        assert!(matches!(embed(&f.generator(), &f8), Err(Error::Domain(_))));
        let f9 = FieldSpec::from_table(3, 2).unwrap();
        assert!(matches!(embed(&f.one(), &f9), Err(Error::Domain(_))));
    }

    #[test]
    fn table_moduli_all_validate() {
        for &(p, r, _) in MODULUS_TABLE {
            FieldSpec::from_table(p, r).unwrap();
        }
    }

    #[test]
    fn reducible_modulus_rejected() {
        // x^2 + 1 = (x+1)^2 over F_2
        assert!(FieldSpec::new(2, 2, vec![1, 0, 1]).is_err());
        // x^2 factors trivially
        assert!(FieldSpec::new(3, 2, vec![0, 0, 1]).is_err());
    }

    #[test]
    fn composite_p_rejected() {
        assert!(FieldSpec::prime(6).is_err());
        assert!(FieldSpec::prime(98).is_err());
    }

    #[test]
    fn find_irreducible_matches_known_degree() {
        for &(p, r) in &[(2, 5), (2, 6), (3, 5), (7, 2), (97, 2)] {
            let f = FieldSpec::find_irreducible(p, r).unwrap();
            assert_eq!(f.modulus().len(), r + 1);
        }
    }

    #[test]
    fn spec_json_roundtrip() {
        let f = f4();
        let s = serde_json::to_string(&*f).unwrap();
        assert_eq!(s, r#"{"p":2,"r":2,"modulus":[1,1,1]}"#);
        let back: FieldSpec = serde_json::from_str(&s).unwrap();
        assert_eq!(back, *f);
        // invalid wire data is rejected on deserialize
        assert!(serde_json::from_str::<FieldSpec>(r#"{"p":4,"r":1,"modulus":[0,1]}"#).is_err());
    }

    #[test]
    fn elem_json_is_coeffs_only() {
        let f = f4();
        let g = f.generator();
        assert_eq!(elem_to_json(&g).to_string(), r#"{"coeffs":[0,1]}"#);
        assert_eq!(elem_from_json(&f, &elem_to_json(&g)).unwrap(), g);
    }
}

//! Artin-Schreier cover counting over `F_p[t]` and its comparison with
//! index-`p` subgroup counting in the one-dimensional truncated groups.
//!
//! Degree-`p` cyclic covers of the affine line in characteristic `p` are
//! classified by polynomials `f` in `t*F_p[t]` modulo the image of the
//! Artin-Schreier operator `wp(g) = g^p - g` and modulo scaling by
//! `F_p^x`.  Reduction to a canonical representative, the resulting
//! count for each degree bound, the matching index-`p` subgroup count in
//! `L_{1,d}(F_p)`, and the tame (prime-to-`p`) cyclic counts for the
//! punctured line all live here.  Every closed-form count is re-derived
//! by brute-force enumeration before it is returned.

use std::collections::HashSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::{self, FieldSpec};
use crate::lgroup;
use crate::scan;
use crate::subgrp::{self, GroupTable};

/// Supported characteristics for the exhaustively verified cover counts.
const AS_PRIMES: &[u32] = &[2, 3, 5];
/// Largest degree bound `count_as_covers` accepts.
const AS_MAX_DEGREE: usize = 12;
/// Hard ceiling on `p^d` for the index-`p` subgroup count.
const WITT_ENUM_CAP: u128 = 1 << 16;
/// Group orders up to which lattice cross-checks run.
const LATTICE_CHECK_LIMIT: u128 = 2000;
/// Largest prime power `tame_count` accepts.
const TAME_MAX_Q: u64 = 1 << 16;

/// Polynomial in `t*F_p[t]`: zero constant term, coefficients mod `p`.
///
/// `coeffs[k]` is the coefficient of `t^k`; trailing zeros are trimmed,
/// so equal polynomials have equal coefficient vectors.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ASPoly {
    p: u32,
    coeffs: Vec<u32>,
}

impl ASPoly {
    /// Builds a polynomial from raw coefficients (`coeffs[k]` on `t^k`).
    ///
    /// Coefficients are reduced mod `p`; the constant term must vanish
    /// after reduction.
    pub fn new(p: u32, coeffs: Vec<u32>) -> Result<ASPoly> {
        if !gf::is_prime(p) {
            return Err(Error::BadSpec(format!("characteristic {p} is not prime")));
        }
        let mut reduced: Vec<u32> = coeffs.iter().map(|c| c % p).collect();
        if reduced.first().copied().unwrap_or(0) != 0 {
            return Err(Error::BadSpec(
                "polynomial must have zero constant term".into(),
            ));
        }
        while reduced.len() > 1 && *reduced.last().unwrap() == 0 {
            reduced.pop();
        }
        if reduced.is_empty() {
            reduced.push(0);
        }
        Ok(ASPoly { p, coeffs: reduced })
    }

    /// The zero polynomial over `F_p`.
    pub fn zero(p: u32) -> Result<ASPoly> {
        ASPoly::new(p, vec![0])
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// Coefficient vector, constant term first, trailing zeros trimmed.
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    /// Coefficient of `t^k` (zero beyond the stored degree).
    pub fn coeff(&self, k: usize) -> u32 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    /// Degree of the polynomial, or `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|&c| c != 0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Sum of two polynomials over the same `F_p`.
    pub fn add(&self, other: &ASPoly) -> Result<ASPoly> {
        if self.p != other.p {
            return Err(Error::Mismatch(format!(
                "cannot add polynomials over F_{} and F_{}",
                self.p, other.p
            )));
        }
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|k| (self.coeff(k) + other.coeff(k)) % self.p)
            .collect();
        ASPoly::new(self.p, coeffs)
    }

    /// Scalar multiple `c * f`.
    pub fn scale(&self, c: u32) -> ASPoly {
        let coeffs = self.coeffs.iter().map(|&a| (a * (c % self.p)) % self.p).collect();
        ASPoly::new(self.p, coeffs).expect("scaling preserves the zero constant term")
    }

    /// Artin-Schreier image `g^p - g`.
    ///
    /// Over `F_p` the Frobenius is additive and fixes scalars, so
    /// `(sum c_i t^i)^p = sum c_i t^(i*p)`.
    pub fn wp(&self) -> ASPoly {
        let p = self.p as usize;
        let deg = self.degree().unwrap_or(0);
        let mut out = vec![0u32; deg * p + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c != 0 {
                out[i * p] = (out[i * p] + c) % self.p;
            }
        }
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c != 0 {
                out[i] = (out[i] + self.p - c) % self.p;
            }
        }
        ASPoly::new(self.p, out).expect("wp preserves the zero constant term")
    }

    /// Human-readable form such as `t + 2*t^3`; `0` for zero.
    pub fn label(&self) -> String {
        let mut parts = Vec::new();
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let var = if k == 1 { "t".to_string() } else { format!("t^{k}") };
            parts.push(if c == 1 { var } else { format!("{c}*{var}") });
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

/// Canonical coset representative: no monomial of degree divisible by `p`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ASClass {
    rep: ASPoly,
}

impl ASClass {
    /// The canonical representative.
    pub fn rep(&self) -> &ASPoly {
        &self.rep
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }
}

/// Reduces `f` modulo the image of `wp` on `t*F_p[t]`.
///
/// Working from the top degree down, each term `c*t^(p*m)` with `m >= 1`
/// is traded for `c^(1/p)*t^m = c*t^m` (the `p`-th root is the identity
/// on `F_p`), i.e. `wp(c*t^m)` is subtracted.  The result has no term of
/// degree divisible by `p`, and is the unique such representative of the
/// coset, so the outcome does not depend on the reduction order.
pub fn as_reduce(f: &ASPoly) -> ASClass {
    let p = f.p;
    let mut coeffs = f.coeffs.clone();
    for top in (1..coeffs.len()).rev() {
        let c = coeffs[top];
        if c != 0 && top % p as usize == 0 {
            let m = top / p as usize;
            coeffs[top] = 0;
            coeffs[m] = (coeffs[m] + c) % p;
        }
    }
    let rep = ASPoly::new(p, coeffs).expect("reduction preserves the zero constant term");
    debug_assert!(
        rep.coeffs
            .iter()
            .enumerate()
            .all(|(k, &c)| c == 0 || k % p as usize != 0),
        "reduced representative still has a degree divisible by p"
    );
    ASClass { rep }
}

fn pow_u128(base: u32, exp: usize) -> u128 {
    (base as u128).pow(exp as u32)
}

/// Number of degree-`p` cyclic covers of the line with a defining
/// polynomial of degree at most `D`, up to isomorphism.
///
/// Two oracles must agree before the count is returned: the closed form
/// `(p^k - 1)/(p - 1)` with `k = #{1 <= m <= D : p does not divide m}`,
/// and brute-force enumeration of all `p^D` polynomials in `t*F_p[t]` of
/// degree `<= D`, reduced to canonical form, deduplicated, and counted
/// up to `F_p^x` scaling.  The brute-force pass runs under the global
/// cap, so large `(p, D)` pairs need a raised cap.
pub fn count_as_covers(p: u32, big_d: usize) -> Result<u64> {
    if !AS_PRIMES.contains(&p) || big_d > AS_MAX_DEGREE {
        return Err(Error::Domain(format!(
            "cover counting is pinned to p in {{2, 3, 5}} and degree <= {AS_MAX_DEGREE}; got p={p}, D={big_d}"
        )));
    }
    if big_d == 0 {
        return Ok(0);
    }
    let k = (1..=big_d).filter(|m| m % p as usize != 0).count();
    let formula = (pow_u128(p, k) - 1) / (p as u128 - 1);

    let total = pow_u128(p, big_d);
    crate::check_cap(total)?;
    let total = total as usize;
    let pd = p as usize;
    // index digits: coefficient of t^1 is the most significant digit
    let reduced: Vec<Vec<u32>> = scan::map_indices(total, |idx| {
        let mut coeffs = vec![0u32; big_d + 1];
        let mut rest = idx;
        for j in (1..=big_d).rev() {
            coeffs[j] = (rest % pd) as u32;
            rest /= pd;
        }
        let f = ASPoly::new(p, coeffs).expect("digits are already reduced mod p");
        as_reduce(&f).rep().coeffs().to_vec()
    });
    let classes: HashSet<Vec<u32>> = reduced.into_iter().collect();
    let nonzero = classes.len() as u128 - 1;
    if nonzero != pow_u128(p, k) - 1 || nonzero % (p as u128 - 1) != 0 {
        return Err(Error::Verification(format!(
            "cover enumeration found {nonzero} nonzero classes for p={p}, D={big_d}, expected {}",
            pow_u128(p, k) - 1
        )));
    }
    let brute = nonzero / (p as u128 - 1);
    if brute != formula {
        return Err(Error::Verification(format!(
            "cover count mismatch for p={p}, D={big_d}: formula {formula}, enumeration {brute}"
        )));
    }
    Ok(formula as u64)
}

/// Number of index-`p` subgroups of `L_{1,d}(F_p)`.
///
/// Computed as `(|G[p]| - 1)/(p - 1)` where `G[p]` is the `p`-torsion
/// subgroup, found by exhaustive scan; for group orders up to 2000 the
/// answer is cross-checked against the full subgroup lattice.
pub fn count_witt_index_p(p: u32, d: usize) -> Result<u64> {
    if !gf::is_prime(p) {
        return Err(Error::BadSpec(format!("characteristic {p} is not prime")));
    }
    if d == 0 {
        return Ok(0);
    }
    let total = pow_u128(p, d);
    if total > WITT_ENUM_CAP {
        return Err(Error::CapExceeded { needed: total, cap: WITT_ENUM_CAP });
    }
    let field = FieldSpec::default_for(p, 1)?;
    let torsion = scan::filter_indices(total as usize, |idx| {
        lgroup::from_index(1, d, &field, idx as u128).pow(p as u64).is_identity()
    });
    let torsion_size = torsion.len() as u128;
    if (torsion_size - 1) % (p as u128 - 1) != 0 {
        return Err(Error::Verification(format!(
            "p-torsion size {torsion_size} is not 1 mod {} in L_(1,{d})(F_{p})",
            p - 1
        )));
    }
    let count = ((torsion_size - 1) / (p as u128 - 1)) as u64;

    if total <= LATTICE_CHECK_LIMIT {
        let elems = lgroup::enumerate(1, d, &field)?;
        let table = GroupTable::from_elements(&elems, |a, b| a.mul(b), |x| x.label())?;
        let subs = table.all_subgroups()?;
        let lattice_count =
            subs.iter().filter(|h| h.len() as u128 * p as u128 == total).count() as u64;
        if lattice_count != count {
            return Err(Error::Verification(format!(
                "index-{p} subgroup count disagrees for d={d}: torsion formula {count}, lattice {lattice_count}"
            )));
        }
    }
    Ok(count)
}

/// One row of the cover-count versus subgroup-count comparison.
#[derive(Clone, Debug, Serialize)]
pub struct MatchRow {
    #[serde(rename = "D")]
    pub d: usize,
    pub as_count: u64,
    pub witt_count: u64,
    pub equal: bool,
}

/// Compares the two counts for every degree bound `1..=d_max`.
///
/// A disagreement between the two sides sets `equal: false` on that row
/// rather than raising an error; only internal oracle failures abort.
pub fn match_filtrations(p: u32, d_max: usize) -> Result<Vec<MatchRow>> {
    let mut rows = Vec::with_capacity(d_max);
    for d in 1..=d_max {
        let as_count = count_as_covers(p, d)?;
        let witt_count = count_witt_index_p(p, d)?;
        rows.push(MatchRow { d, as_count, witt_count, equal: as_count == witt_count });
    }
    Ok(rows)
}

/// Renders comparison rows as CSV with a `D,as_count,witt_count,equal` header.
pub fn match_filtrations_csv(rows: &[MatchRow]) -> String {
    let mut out = String::from("D,as_count,witt_count,equal\n");
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{}\n",
            row.d, row.as_count, row.witt_count, row.equal
        ));
    }
    out
}

/// Orders of cyclic quotients contributed by the multiplicative group of
/// `F_q`: all divisors of `q - 1`, ascending.
///
/// For `q - 1` up to 2000 the divisor list is cross-checked against the
/// subgroup lattice of the cyclic group of that order.
pub fn tame_count(q: u64) -> Result<Vec<u64>> {
    if q > TAME_MAX_Q {
        return Err(Error::Domain(format!("q must be at most {TAME_MAX_Q}; got {q}")));
    }
    if q < 2 || !is_prime_power(q) {
        return Err(Error::Domain(format!("q must be a prime power >= 2; got {q}")));
    }
    let m = q - 1;
    let mut divisors: Vec<u64> = (1..=m).filter(|k| m % k == 0).collect();
    divisors.sort_unstable();
    if m as u128 <= LATTICE_CHECK_LIMIT {
        let table = subgrp::cyclic(m as usize);
        let mut orders: Vec<u64> =
            table.all_subgroups()?.iter().map(|h| h.len() as u64).collect();
        orders.sort_unstable();
        if orders != divisors {
            return Err(Error::Verification(format!(
                "cyclic subgroup lattice of order {m} disagrees with the divisor list"
            )));
        }
    }
    Ok(divisors)
}

fn is_prime_power(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let p = (2..=q).find(|k| q % k == 0).expect("q >= 2 has a least factor");
    let mut v = q;
    while v % p == 0 {
        v /= p;
    }
    v == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(p: u32, coeffs: &[u32]) -> ASPoly {
        ASPoly::new(p, coeffs.to_vec()).unwrap()
    }

    #[test]
    fn construction_normalizes_and_validates() {
        let f = poly(2, &[0, 1, 2, 0, 0]);
        assert_eq!(f.coeffs(), &[0, 1]);
        assert_eq!(f.degree(), Some(1));
        assert!(ASPoly::new(2, vec![1, 1]).is_err());
        assert!(ASPoly::new(4, vec![0, 1]).is_err());
        assert!(ASPoly::zero(3).unwrap().is_zero());
        assert_eq!(poly(3, &[0, 1, 2]).label(), "t + 2*t^2");
        assert_eq!(ASPoly::zero(5).unwrap().label(), "0");
    }

    #[test]
    fn wp_matches_hand_expansion() {
        // wp(t) = t^2 - t = t^2 + t over F_2
        assert_eq!(poly(2, &[0, 1]).wp(), poly(2, &[0, 1, 1]));
        // wp(t) = t^3 - t = t^3 + 2t over F_3
        assert_eq!(poly(3, &[0, 1]).wp(), poly(3, &[0, 2, 0, 1]));
        // wp(t + t^2) over F_2 = (t^2 + t^4) + (t + t^2) = t + t^4
        assert_eq!(poly(2, &[0, 1, 1]).wp(), poly(2, &[0, 1, 0, 0, 1]));
    }

    #[test]
    fn reduce_hand_examples() {
        // t + t^2 is exactly wp(t) over F_2, so it reduces to zero
        assert!(as_reduce(&poly(2, &[0, 1, 1])).is_zero());
        // t^3 has no even-degree terms: already canonical for p = 2
        assert_eq!(as_reduce(&poly(2, &[0, 0, 0, 1])).rep(), &poly(2, &[0, 0, 0, 1]));
        // t^4 -> t^2 -> t over F_2
        assert_eq!(as_reduce(&poly(2, &[0, 0, 0, 0, 1])).rep(), &poly(2, &[0, 1]));
        // t^9 -> t^3 -> t over F_3
        let mut c = vec![0u32; 10];
        c[9] = 1;
        assert_eq!(as_reduce(&poly(3, &c)).rep(), &poly(3, &[0, 1]));
        // coefficients ride along: 2*t^6 -> 2*t^2 over F_3
        assert_eq!(
            as_reduce(&poly(3, &[0, 0, 0, 0, 0, 0, 2])).rep(),
            &poly(3, &[0, 0, 2])
        );
    }

    #[test]
    fn reduce_idempotent_and_coset_constant_exhaustively() {
        // all f in t*F_2[t] of degree <= 4, all g with deg(g^2) <= 4
        let p = 2u32;
        let fs: Vec<ASPoly> = (0..16u32)
            .map(|bits| poly(p, &[0, bits & 1, (bits >> 1) & 1, (bits >> 2) & 1, (bits >> 3) & 1]))
            .collect();
        let gs: Vec<ASPoly> = (0..4u32)
            .map(|bits| poly(p, &[0, bits & 1, (bits >> 1) & 1]))
            .collect();
        for f in &fs {
            let class = as_reduce(f);
            assert_eq!(as_reduce(class.rep()), class, "idempotence fails at {}", f.label());
            for g in &gs {
                let shifted = f.add(&g.wp()).unwrap();
                assert_eq!(
                    as_reduce(&shifted),
                    class,
                    "coset invariance fails at f={}, g={}",
                    f.label(),
                    g.label()
                );
            }
        }
        // exactly 2^k classes survive, k = #{1,3}
        let distinct: HashSet<Vec<u32>> =
            fs.iter().map(|f| as_reduce(f).rep().coeffs().to_vec()).collect();
        assert_eq!(distinct.len(), 4);
    }

    #[test]
    fn cover_counts_match_hand_values() {
        assert_eq!(count_as_covers(2, 3).unwrap(), 3);
        assert_eq!(count_as_covers(2, 1).unwrap(), 1);
        assert_eq!(count_as_covers(3, 2).unwrap(), 4);
        assert_eq!(count_as_covers(2, 0).unwrap(), 0);
        assert_eq!(count_as_covers(5, 2).unwrap(), 6);
    }

    #[test]
    fn cover_count_rejects_out_of_range_inputs() {
        assert!(matches!(count_as_covers(7, 2), Err(Error::Domain(_))));
        assert!(matches!(count_as_covers(2, 13), Err(Error::Domain(_))));
        // within the pinned range but beyond the default enumeration cap
        assert!(matches!(count_as_covers(5, 12), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn witt_counts_match_hand_values() {
        assert_eq!(count_witt_index_p(2, 3).unwrap(), 3);
        assert_eq!(count_witt_index_p(2, 1).unwrap(), 1);
        assert_eq!(count_witt_index_p(3, 2).unwrap(), 4);
        assert_eq!(count_witt_index_p(2, 0).unwrap(), 0);
        // 2^11 = 2048 > 2000 skips the lattice cross-check; the torsion
        // scan alone gives (2^6 - 1)/(2 - 1): squaring kills s^1..s^5
        assert_eq!(count_witt_index_p(2, 11).unwrap(), 63);
    }

    #[test]
    fn witt_count_enforces_caps() {
        assert!(matches!(count_witt_index_p(2, 17), Err(Error::CapExceeded { .. })));
        assert!(count_witt_index_p(6, 2).is_err());
    }

    #[test]
    fn filtration_rows_agree_at_small_degrees() {
        let rows = match_filtrations(2, 6).unwrap();
        assert_eq!(
            rows.iter().map(|r| r.as_count).collect::<Vec<_>>(),
            vec![1, 1, 3, 3, 7, 7]
        );
        assert!(rows.iter().all(|r| r.equal && r.as_count == r.witt_count));

        let rows = match_filtrations(3, 4).unwrap();
        assert_eq!(
            rows.iter().map(|r| r.as_count).collect::<Vec<_>>(),
            vec![1, 4, 4, 13]
        );
        assert!(rows.iter().all(|r| r.equal && r.as_count == r.witt_count));
    }

    #[test]
    fn rows_serialize_with_capital_d() {
        let rows = match_filtrations(2, 3).unwrap();
        let v = serde_json::to_value(&rows[2]).unwrap();
        assert_eq!(
            v,
            serde_json::json!({"D": 3, "as_count": 3, "witt_count": 3, "equal": true})
        );
    }

    #[test]
    fn csv_layout_is_stable() {
        let rows = match_filtrations(2, 2).unwrap();
        assert_eq!(
            match_filtrations_csv(&rows),
            "D,as_count,witt_count,equal\n1,1,1,true\n2,1,1,true\n"
        );
    }

    #[test]
    fn tame_counts_are_divisor_lists() {
        assert_eq!(tame_count(2).unwrap(), vec![1]);
        assert_eq!(tame_count(4).unwrap(), vec![1, 3]);
        assert_eq!(tame_count(8).unwrap(), vec![1, 7]);
        assert_eq!(tame_count(9).unwrap(), vec![1, 2, 4, 8]);
        assert_eq!(tame_count(16).unwrap(), vec![1, 3, 5, 15]);
    }

    #[test]
    fn tame_count_rejects_non_prime_powers() {
        assert!(matches!(tame_count(6), Err(Error::Domain(_))));
        assert!(matches!(tame_count(1), Err(Error::Domain(_))));
        assert!(matches!(tame_count(0), Err(Error::Domain(_))));
        assert!(matches!(tame_count((1 << 16) + 1), Err(Error::Domain(_))));
    }

    #[test]
    fn scaling_permutes_classes() {
        // over F_3 the two nonzero scalings of a class are distinct unless zero
        let f = poly(3, &[0, 1, 1]);
        let doubled = f.scale(2);
        assert_ne!(as_reduce(&f), as_reduce(&doubled));
        assert_eq!(as_reduce(&doubled.scale(2)), as_reduce(&f));
        assert!(as_reduce(&f.scale(0)).is_zero());
    }
}

//! Laurent polynomials over a finite field, just enough for exact
//! determinants of matrices in t and the unit-group membership tests.

use crate::error::{Error, Result};
use crate::gf::{Field, FieldElem, FieldOps};

/// Σ c_k t^{min+k}; zero is the empty coefficient list.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    field: Field,
    min: i64,
    coeffs: Vec<FieldElem>,
}

impl std::fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| format!("{:?}*t^{}", c, self.min + k as i64))
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl LaurentPoly {
    pub fn zero(field: &Field) -> LaurentPoly {
        LaurentPoly { field: field.clone(), min: 0, coeffs: vec![] }
    }

    pub fn constant(c: FieldElem) -> LaurentPoly {
        let field = c.spec().clone();
        if c.is_zero() {
            return LaurentPoly::zero(&field);
        }
        LaurentPoly { field, min: 0, coeffs: vec![c] }
    }

    pub fn one(field: &Field) -> LaurentPoly {
        LaurentPoly::constant(field.one())
    }

    /// c·t^k.
    pub fn monomial(c: FieldElem, k: i64) -> LaurentPoly {
        let field = c.spec().clone();
        if c.is_zero() {
            return LaurentPoly::zero(&field);
        }
        LaurentPoly { field, min: k, coeffs: vec![c] }
    }

    /// Polynomial from coefficients, constant term first.
    pub fn from_coeffs(field: &Field, coeffs: Vec<FieldElem>) -> LaurentPoly {
        LaurentPoly { field: field.clone(), min: 0, coeffs }.normalized()
    }

    fn normalized(mut self) -> LaurentPoly {
        while self.coeffs.last().map_or(false, FieldElem::is_zero) {
            self.coeffs.pop();
        }
        let lead_zeros = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros > 0 {
            self.coeffs.drain(..lead_zeros);
            self.min += lead_zeros as i64;
        }
        if self.coeffs.is_empty() {
            self.min = 0;
        }
        self
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest exponent with nonzero coefficient.
    pub fn valuation(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.min)
        }
    }

    pub fn degree(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.min + self.coeffs.len() as i64 - 1)
        }
    }

    pub fn coeff(&self, k: i64) -> FieldElem {
        if self.is_zero() || k < self.min || k >= self.min + self.coeffs.len() as i64 {
            self.field.zero()
        } else {
            self.coeffs[(k - self.min) as usize].clone()
        }
    }

    /// Single term c·t^m, if the polynomial is one.
    pub fn as_monomial(&self) -> Option<(i64, FieldElem)> {
        if self.coeffs.len() == 1 {
            Some((self.min, self.coeffs[0].clone()))
        } else {
            None
        }
    }

    pub fn as_constant(&self) -> Option<FieldElem> {
        if self.is_zero() {
            return Some(self.field.zero());
        }
        match self.as_monomial() {
            Some((0, c)) => Some(c),
            _ => None,
        }
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let min = self.min.min(other.min);
        let max = (self.min + self.coeffs.len() as i64).max(other.min + other.coeffs.len() as i64);
        let coeffs = (min..max)
            .map(|k| self.coeff(k).add(&other.coeff(k)))
            .collect();
        LaurentPoly { field: self.field.clone(), min, coeffs }.normalized()
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly {
            field: self.field.clone(),
            min: self.min,
            coeffs: self.coeffs.iter().map(FieldElem::neg).collect(),
        }
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || other.is_zero() {
            return LaurentPoly::zero(&self.field);
        }
        let mut coeffs = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        LaurentPoly { field: self.field.clone(), min: self.min + other.min, coeffs }.normalized()
    }

    /// Evaluate at a point; the point must be nonzero when negative
    /// exponents are present.
    pub fn eval(&self, x: &FieldElem) -> Result<FieldElem> {
        if self.is_zero() {
            return Ok(self.field.zero());
        }
        let mut acc = self.field.zero();
        let mut xp = if self.min >= 0 {
            x.pow(self.min as u128)
        } else {
            if x.is_zero() {
                return Err(Error::Domain(
                    "evaluation at 0 with negative exponents".into(),
                ));
            }
            x.inv()?.pow((-self.min) as u128)
        };
        for c in &self.coeffs {
            acc = acc.add(&c.mul(&xp));
            xp = xp.mul(x);
        }
        Ok(acc)
    }
}

/// Determinant of a square matrix of Laurent polynomials, by cofactor
/// expansion (sizes here are tiny).
pub fn det_laurent(entries: &[Vec<LaurentPoly>], field: &Field) -> LaurentPoly {
    let n = entries.len();
    if n == 0 {
        return LaurentPoly::one(field);
    }
    if n == 1 {
        return entries[0][0].clone();
    }
    let mut det = LaurentPoly::zero(field);
    for (j, top) in entries[0].iter().enumerate() {
        if top.is_zero() {
            continue;
        }
        let minor: Vec<Vec<LaurentPoly>> = entries[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != j)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let term = top.mul(&det_laurent(&minor, field));
        det = if j % 2 == 0 { det.add(&term) } else { det.sub(&term) };
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldSpec;

    #[test]
    fn arithmetic_and_normalization() {
        let f3 = FieldSpec::prime(3).unwrap();
        let t = LaurentPoly::monomial(f3.one(), 1);
        let one = LaurentPoly::one(&f3);
        let p = one.add(&t); // 1 + t
        assert_eq!(p.degree(), Some(1));
        assert_eq!(p.mul(&p).coeff(1), f3.scalar(2));
        assert!(p.sub(&p).is_zero());
        let tinv = LaurentPoly::monomial(f3.one(), -1);
        assert_eq!(t.mul(&tinv), one);
        assert_eq!(tinv.valuation(), Some(-1));
    }

    #[test]
    fn eval_handles_negative_exponents() {
        let f5 = FieldSpec::prime(5).unwrap();
        let p = LaurentPoly::monomial(f5.scalar(3), -2); // 3 t^{-2}
        assert_eq!(p.eval(&f5.scalar(2)).unwrap(), f5.scalar(2)); // 3 * (4)^{-1} = 3*4 = 12 = 2
        assert!(p.eval(&f5.zero()).is_err());
    }

    #[test]
    fn determinant_of_t_matrix() {
        let f2 = FieldSpec::prime(2).unwrap();
        let t = LaurentPoly::monomial(f2.one(), 1);
        let one = LaurentPoly::one(&f2);
        let zero = LaurentPoly::zero(&f2);
        // [[t, t(t+1)], [0, 1]] has det t
        let m = vec![
            vec![t.clone(), t.mul(&one.add(&t))],
            vec![zero, one],
        ];
        assert_eq!(det_laurent(&m, &f2), t);
    }
}

//! Fixed-length polynomials over GF(2^κ).
//!
//! A [`Poly`] stores exactly as many coefficients as it was built with; the
//! leading coefficient may be zero. Index `k` holds the coefficient of x^k.

use rand::RngCore;

use crate::error::{Error, Result};
use crate::gf2k::{Field, FieldElement};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    field: Field,
    coeffs: Vec<FieldElement>,
}

impl Poly {
    pub fn new(field: Field, coeffs: Vec<FieldElement>) -> Result<Self> {
        if let Some(bad) = coeffs.iter().find(|c| c.field() != field) {
            return Err(Error::FieldMismatch { left: field.kappa(), right: bad.field().kappa() });
        }
        Ok(Poly { field, coeffs })
    }

    /// Build from raw bit patterns.
    pub fn from_values(field: Field, values: &[u64]) -> Result<Self> {
        let coeffs = values.iter().map(|&v| field.element(v)).collect::<Result<Vec<_>>>()?;
        Ok(Poly { field, coeffs })
    }

    pub fn zero(field: Field, len: usize) -> Self {
        Poly { field, coeffs: vec![field.zero(); len] }
    }

    pub fn random<R: RngCore + ?Sized>(field: Field, len: usize, rng: &mut R) -> Self {
        Poly { field, coeffs: (0..len).map(|_| field.sample(rng)).collect() }
    }

    /// Secrets in the lowest coefficients, the remaining `len - prefix.len()`
    /// coefficients uniform.
    pub fn random_with_prefix<R: RngCore + ?Sized>(prefix: &[FieldElement], len: usize, rng: &mut R) -> Result<Self> {
        let first = prefix.first().ok_or_else(|| Error::Config("secret block is empty".into()))?;
        let field = first.field();
        if len <= prefix.len() {
            return Err(Error::LengthMismatch { expected: prefix.len() + 1, got: len });
        }
        let mut coeffs = prefix.to_vec();
        coeffs.extend((prefix.len()..len).map(|_| field.sample(rng)));
        Poly::new(field, coeffs)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> FieldElement {
        self.coeffs[k]
    }

    pub fn set_coeff(&mut self, k: usize, value: FieldElement) -> Result<()> {
        if value.field() != self.field {
            return Err(Error::FieldMismatch { left: self.field.kappa(), right: value.field().kappa() });
        }
        if k >= self.coeffs.len() {
            return Err(Error::LengthMismatch { expected: self.coeffs.len(), got: k + 1 });
        }
        self.coeffs[k] = value;
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(FieldElement::is_zero)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: FieldElement) -> Result<FieldElement> {
        if x.field() != self.field {
            return Err(Error::FieldMismatch { left: self.field.kappa(), right: x.field().kappa() });
        }
        Ok(self.coeffs.iter().rev().fold(self.field.zero(), |acc, &c| acc * x + c))
    }

    /// d·p + q, coefficient-wise.
    pub fn linear(d: FieldElement, p: &Poly, q: &Poly) -> Result<Poly> {
        if p.len() != q.len() {
            return Err(Error::LengthMismatch { expected: p.len(), got: q.len() });
        }
        if p.field != q.field || d.field() != p.field {
            return Err(Error::FieldMismatch { left: p.field.kappa(), right: q.field.kappa() });
        }
        let coeffs = p.coeffs.iter().zip(&q.coeffs).map(|(&a, &b)| d * a + b).collect();
        Ok(Poly { field: p.field, coeffs })
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        Poly::linear(self.field.one(), self, other)
    }

    /// The lowest `ell` coefficients.
    pub fn extract_secrets(&self, ell: usize) -> Result<Vec<FieldElement>> {
        if ell == 0 {
            return Err(Error::Config("secret count must be at least 1".into()));
        }
        if ell > self.coeffs.len() {
            return Err(Error::LengthMismatch { expected: self.coeffs.len(), got: ell });
        }
        Ok(self.coeffs[..ell].to_vec())
    }

    /// A polynomial of `target_len` coefficients that starts with
    /// `fixed_prefix` and passes through every point.
    ///
    /// The coefficients directly after the prefix, one per point, are solved
    /// for; any further coefficients are zero.
    pub fn interpolate(
        points: &[(FieldElement, FieldElement)],
        target_len: usize,
        fixed_prefix: Option<&[FieldElement]>,
    ) -> Result<Poly> {
        let prefix = fixed_prefix.unwrap_or(&[]);
        let field = points
            .first()
            .map(|p| p.0.field())
            .or_else(|| prefix.first().map(|c| c.field()))
            .ok_or_else(|| Error::Config("nothing to interpolate".into()))?;
        if points.len() + prefix.len() > target_len {
            return Err(Error::OverConstrained { points: points.len(), prefix: prefix.len(), len: target_len });
        }
        if points.iter().any(|(x, y)| x.field() != field || y.field() != field)
            || prefix.iter().any(|c| c.field() != field)
        {
            return Err(Error::FieldMismatch { left: field.kappa(), right: 0 });
        }
        for (i, (xi, _)) in points.iter().enumerate() {
            if points[..i].iter().any(|(xj, _)| xj == xi) {
                return Err(Error::DuplicatePoint);
            }
        }

        let mut coeffs = vec![field.zero(); target_len];
        coeffs[..prefix.len()].copy_from_slice(prefix);
        let known = Poly { field, coeffs: coeffs.clone() };

        let m = points.len();
        let offset = prefix.len();
        // rows: [x^offset, x^(offset+1), ..., x^(offset+m-1) | y - known(x)]
        let mut rows: Vec<Vec<FieldElement>> = points
            .iter()
            .map(|&(x, y)| {
                let mut row: Vec<FieldElement> = (0..m).map(|i| x.pow((offset + i) as u64)).collect();
                row.push(y + known.eval(x).expect("same field"));
                row
            })
            .collect();
        let solution = solve(&mut rows)?;
        coeffs[offset..offset + m].copy_from_slice(&solution);
        Ok(Poly { field, coeffs })
    }

    /// 2-byte little-endian length, then each coefficient's encoding.
    pub fn to_bytes(&self) -> Vec<u8> {
        encode_elements(&self.coeffs)
    }

    /// Decode, returning the polynomial and the number of bytes consumed.
    pub fn from_bytes(field: Field, bytes: &[u8]) -> Result<(Poly, usize)> {
        let (coeffs, used) = decode_elements(field, bytes)?;
        Ok((Poly { field, coeffs }, used))
    }
}

/// Gauss-Jordan elimination on an augmented m×(m+1) system.
fn solve(rows: &mut [Vec<FieldElement>]) -> Result<Vec<FieldElement>> {
    let m = rows.len();
    for col in 0..m {
        let pivot = (col..m).find(|&r| !rows[r][col].is_zero()).ok_or(Error::SingularSystem)?;
        rows.swap(col, pivot);
        let inv = rows[col][col].inv()?;
        for v in rows[col].iter_mut() {
            *v *= inv;
        }
        let pivot_row = rows[col].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != col && !row[col].is_zero() {
                let factor = row[col];
                for (x, &p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                    *x += factor * p;
                }
            }
        }
    }
    Ok(rows.iter().map(|row| row[m]).collect())
}

pub(crate) fn encode_elements(elements: &[FieldElement]) -> Vec<u8> {
    let width = elements.first().map_or(0, |e| e.field().byte_len());
    let mut out = Vec::with_capacity(2 + elements.len() * width);
    out.extend_from_slice(&(elements.len() as u16).to_le_bytes());
    for e in elements {
        out.extend_from_slice(&e.to_bytes());
    }
    out
}

pub(crate) fn decode_elements(field: Field, bytes: &[u8]) -> Result<(Vec<FieldElement>, usize)> {
    if bytes.len() < 2 {
        return Err(Error::Decode("missing length prefix".into()));
    }
    let len = u16::from_le_bytes([bytes[0], bytes[1]]) as usize;
    let width = field.byte_len();
    let end = 2 + len * width;
    if bytes.len() < end {
        return Err(Error::Decode(format!("truncated sequence: need {end} bytes, have {}", bytes.len())));
    }
    let elements =
        bytes[2..end].chunks(width).map(|chunk| FieldElement::from_bytes(field, chunk)).collect::<Result<Vec<_>>>()?;
    Ok((elements, end))
}

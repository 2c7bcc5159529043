//! Complex amplitude vectors, used both for classical data `f: G -> C` and for
//! quantum states.

use std::ops::{Deref, DerefMut, Index, IndexMut};

use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A sequence of double precision complex numbers.
///
/// The JSON form is an array of `[re, im]` pairs.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ComplexVector(Vec<Complex64>);

impl ComplexVector {
    pub fn new(amps: Vec<Complex64>) -> Self {
        Self(amps)
    }

    pub fn zeros(len: usize) -> Self {
        Self(vec![Complex64::new(0.0, 0.0); len])
    }

    /// The standard basis vector `|k>`.
    pub fn basis(len: usize, k: usize) -> Self {
        let mut v = Self::zeros(len);
        v.0[k] = Complex64::new(1.0, 0.0);
        v
    }

    /// Builds a vector from real parts.
    pub fn from_reals(values: &[f64]) -> Self {
        Self(values.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn into_inner(self) -> Vec<Complex64> {
        self.0
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.0
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn normalized(&self) -> Self {
        let n = self.norm();
        Self(self.0.iter().map(|a| a / n).collect())
    }

    /// Errors on the first NaN or infinite entry.
    pub fn check_finite(&self) -> Result<()> {
        match self.0.iter().position(|a| !a.re.is_finite() || !a.im.is_finite()) {
            Some(i) => Err(Error::NonFinite(i)),
            None => Ok(()),
        }
    }

    pub fn check_len(&self, expected: usize) -> Result<()> {
        if self.0.len() == expected {
            Ok(())
        } else {
            Err(Error::LengthMismatch {
                expected,
                got: self.0.len(),
            })
        }
    }

    /// Largest componentwise `|a_i - b_i|`; infinite on a length mismatch.
    pub fn max_abs_diff(&self, other: &ComplexVector) -> f64 {
        if self.len() != other.len() {
            return f64::INFINITY;
        }
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `sum_i conj(a_i) b_i`.
    pub fn inner(&self, other: &ComplexVector) -> Complex64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.0.iter().map(|a| a.norm_sqr()).collect()
    }
}

impl Deref for ComplexVector {
    type Target = [Complex64];
    fn deref(&self) -> &[Complex64] {
        &self.0
    }
}

impl DerefMut for ComplexVector {
    fn deref_mut(&mut self) -> &mut [Complex64] {
        &mut self.0
    }
}

impl Index<usize> for ComplexVector {
    type Output = Complex64;
    fn index(&self, i: usize) -> &Complex64 {
        &self.0[i]
    }
}

impl IndexMut<usize> for ComplexVector {
    fn index_mut(&mut self, i: usize) -> &mut Complex64 {
        &mut self.0[i]
    }
}

impl From<Vec<Complex64>> for ComplexVector {
    fn from(v: Vec<Complex64>) -> Self {
        Self(v)
    }
}

impl FromIterator<Complex64> for ComplexVector {
    fn from_iter<I: IntoIterator<Item = Complex64>>(iter: I) -> Self {
        Self(iter.into_iter().collect())
    }
}

impl Serialize for ComplexVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter().map(|a| [a.re, a.im]))
    }
}

impl<'de> Deserialize<'de> for ComplexVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let pairs = Vec::<[f64; 2]>::deserialize(d)?;
        let v: ComplexVector = pairs.iter().map(|&[re, im]| Complex64::new(re, im)).collect();
        v.check_finite().map_err(D::Error::custom)?;
        Ok(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_pairs() {
        let v = ComplexVector::new(vec![Complex64::new(1.0, -0.5), Complex64::new(0.0, 2.0)]);
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, "[[1.0,-0.5],[0.0,2.0]]");
        let back: ComplexVector = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
    }

    #[test]
    fn json_rejects_bad_shapes() {
        assert!(serde_json::from_str::<ComplexVector>("[[1.0]]").is_err());
        assert!(serde_json::from_str::<ComplexVector>("[1.0, 2.0]").is_err());
    }

    #[test]
    fn finiteness() {
        let mut v = ComplexVector::zeros(3);
        assert!(v.check_finite().is_ok());
        v[1] = Complex64::new(f64::NAN, 0.0);
        assert_eq!(v.check_finite(), Err(Error::NonFinite(1)));
    }
}

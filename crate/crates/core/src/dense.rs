//! The dense Fourier transform on a finite abelian group.
//!
//! `F_{gk} = chi_g(k) / sqrt(|G|)` and the Fourier basis state
//! `|chi_k> = sum_g conj(chi_k(g)) |g> / sqrt(|G|)`, so that `F |chi_k> = |k>`
//! holds exactly. Everything here is `O(|G|^2)` and serves as the reference
//! the fast transforms are checked against.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fft::OpCountReport;
use crate::group::{unit_root, AbelianGroup, GroupElement};
use crate::vector::ComplexVector;

/// Largest order for which the full matrix is materialised by default.
pub const DEFAULT_MATRIX_CAP: usize = 4096;

#[derive(Debug, Clone, PartialEq)]
pub struct FourierMatrix {
    group: AbelianGroup,
    // row-major, |G| x |G|
    entries: Vec<Complex64>,
}

impl FourierMatrix {
    pub fn new(group: &AbelianGroup) -> Result<Self> {
        Self::with_cap(group, DEFAULT_MATRIX_CAP)
    }

    pub fn with_cap(group: &AbelianGroup, cap: usize) -> Result<Self> {
        let n = group.order();
        if n > cap {
            return Err(Error::CapExceeded { size: n, cap });
        }
        let table = RootTable::new(group);
        let mut entries = Vec::with_capacity(n * n);
        for g in 0..n {
            table.for_each_in_row(g, |_, w| entries.push(w));
        }
        Ok(Self {
            group: group.clone(),
            entries,
        })
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.group.order()
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim() + col]
    }

    pub fn row(&self, row: usize) -> &[Complex64] {
        let n = self.dim();
        &self.entries[row * n..(row + 1) * n]
    }

    pub fn apply(&self, f: &ComplexVector) -> Result<ComplexVector> {
        f.check_len(self.dim())?;
        Ok((0..self.dim())
            .map(|k| self.row(k).iter().zip(f.iter()).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// Largest entry of `|F F^dagger - I|`.
    pub fn unitarity_defect(&self) -> f64 {
        let n = self.dim();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in i..n {
                let dot: Complex64 = self
                    .row(i)
                    .iter()
                    .zip(self.row(j))
                    .map(|(a, b)| a * b.conj())
                    .sum();
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot - target).norm());
            }
        }
        worst
    }
}

// Normalised character values chi_l(g) / sqrt(|G|), looked up by exact phase.
struct RootTable<'a> {
    group: &'a AbelianGroup,
    roots: Vec<Complex64>,
}

impl<'a> RootTable<'a> {
    fn new(group: &'a AbelianGroup) -> Self {
        let l = group.exponent();
        let scale = 1.0 / (group.order() as f64).sqrt();
        let roots = (0..l).map(|t| unit_root(t, l) * scale).collect();
        Self { group, roots }
    }

    fn entry(&self, label: usize, arg: usize) -> Complex64 {
        self.roots[self.group.character_phase(label, arg) as usize]
    }

    /// Calls `visit(g, entry(label, g))` for every `g` in index order.
    ///
    /// Stepping coordinate `i` by one (wrapping included) always adds
    /// `label_i * exponent / m_i` to the phase, so the row is walked with one
    /// modular add per carry.
    fn for_each_in_row(&self, label: usize, mut visit: impl FnMut(usize, Complex64)) {
        let moduli = self.group.moduli();
        let exponent = self.group.exponent();
        let label_coords = self.group.coords_of(label);
        let steps: Vec<u64> = moduli
            .iter()
            .zip(&label_coords)
            .map(|(&m, &a)| (a * (exponent / m)) % exponent)
            .collect();
        let mut coords = vec![0u64; moduli.len()];
        let mut phase = 0u64;
        for g in 0..self.group.order() {
            visit(g, self.roots[phase as usize]);
            for i in (0..moduli.len()).rev() {
                phase += steps[i];
                if phase >= exponent {
                    phase -= exponent;
                }
                coords[i] += 1;
                if coords[i] < moduli[i] {
                    break;
                }
                coords[i] = 0;
            }
        }
    }
}

/// `f~(k) = sum_g chi_k(g) f(g) / sqrt(|G|)`, streamed row by row without
/// materialising the matrix.
pub fn apply_dense(group: &AbelianGroup, f: &ComplexVector) -> Result<ComplexVector> {
    apply_dense_counted(group, f).map(|(out, _)| out)
}

/// [`apply_dense`] plus an exact tally of the complex multiplies and adds.
pub fn apply_dense_counted(
    group: &AbelianGroup,
    f: &ComplexVector,
) -> Result<(ComplexVector, OpCountReport)> {
    let n = group.order();
    f.check_len(n)?;
    let table = RootTable::new(group);
    let mut counts = OpCountReport::with_bound((n as u64) * (n as u64));
    let out = (0..n)
        .map(|k| {
            let mut acc = Complex64::new(0.0, 0.0);
            table.for_each_in_row(k, |g, w| acc += w * f[g]);
            counts.complex_multiplies += n as u64;
            counts.complex_adds += n as u64 - 1;
            acc
        })
        .collect();
    Ok((out, counts))
}

pub fn dense_fourier_matrix(group: &AbelianGroup) -> Result<FourierMatrix> {
    FourierMatrix::new(group)
}

/// `|chi_k> = sum_g conj(chi_k(g)) |g> / sqrt(|G|)`.
pub fn fourier_basis_state(group: &AbelianGroup, k: &GroupElement) -> Result<ComplexVector> {
    let k = group.index_of(k)?;
    Ok(fourier_basis_state_at(group, k))
}

pub fn fourier_basis_state_at(group: &AbelianGroup, k: usize) -> ComplexVector {
    let table = RootTable::new(group);
    (0..group.order()).map(|g| table.entry(k, g).conj()).collect()
}

/// The shift `U(k): |g> -> |g + k>`.
pub fn shift_vector(
    group: &AbelianGroup,
    k: &GroupElement,
    v: &ComplexVector,
) -> Result<ComplexVector> {
    let k = group.index_of(k)?;
    shift_vector_at(group, k, v)
}

pub fn shift_vector_at(group: &AbelianGroup, k: usize, v: &ComplexVector) -> Result<ComplexVector> {
    v.check_len(group.order())?;
    let mut out = ComplexVector::zeros(v.len());
    for (g, &a) in v.iter().enumerate() {
        out[group.add_index(g, k)] = a;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tolerance::DENSE;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn matrix_z2() {
        let g = AbelianGroup::cyclic(2).unwrap();
        let f = dense_fourier_matrix(&g).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let expect = [[h, h], [h, -h]];
        for (r, row) in expect.iter().enumerate() {
            for (k, &e) in row.iter().enumerate() {
                assert!((f.get(r, k) - c(e, 0.0)).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn matrix_z4_powers_of_i() {
        let g = AbelianGroup::cyclic(4).unwrap();
        let f = dense_fourier_matrix(&g).unwrap();
        let i = c(0.0, 1.0);
        for r in 0..4 {
            for k in 0..4 {
                assert!((f.get(r, k) - i.powu((r * k) as u32) / 2.0).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn matrix_klein_is_walsh() {
        let g = AbelianGroup::boolean_cube(2).unwrap();
        let f = dense_fourier_matrix(&g).unwrap();
        for r in 0..4usize {
            for k in 0..4usize {
                let sign = if (r & k).count_ones() % 2 == 0 { 0.5 } else { -0.5 };
                assert_eq!(f.get(r, k), c(sign, 0.0));
            }
        }
    }

    #[test]
    fn matrix_cap() {
        let g = AbelianGroup::cyclic(10).unwrap();
        assert_eq!(
            FourierMatrix::with_cap(&g, 8),
            Err(Error::CapExceeded { size: 10, cap: 8 })
        );
    }

    #[test]
    fn apply_examples() {
        let z2 = AbelianGroup::cyclic(2).unwrap();
        let out = apply_dense(&z2, &ComplexVector::from_reals(&[1.0, 0.0])).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!(out.max_abs_diff(&ComplexVector::from_reals(&[h, h])) < DENSE);

        let g = AbelianGroup::new(&[3, 4]).unwrap();
        let out = apply_dense(&g, &ComplexVector::basis(12, 0)).unwrap();
        let u = 1.0 / 12f64.sqrt();
        assert!(out.iter().all(|a| (a - c(u, 0.0)).norm() < DENSE));

        let z6 = AbelianGroup::cyclic(6).unwrap();
        let s = 1.0 / 3f64.sqrt();
        let f = ComplexVector::from_reals(&[s, 0.0, s, 0.0, s, 0.0]);
        let out = apply_dense(&z6, &f).unwrap();
        let expect = ComplexVector::from_reals(&[h, 0.0, 0.0, h, 0.0, 0.0]);
        assert!(out.max_abs_diff(&expect) < DENSE);
    }

    #[test]
    fn apply_length_mismatch() {
        let g = AbelianGroup::cyclic(4).unwrap();
        assert_eq!(
            apply_dense(&g, &ComplexVector::zeros(3)),
            Err(Error::LengthMismatch {
                expected: 4,
                got: 3
            })
        );
    }

    #[test]
    fn dense_counts() {
        let g = AbelianGroup::cyclic(16).unwrap();
        let (_, counts) = apply_dense_counted(&g, &ComplexVector::basis(16, 3)).unwrap();
        assert_eq!(counts.complex_multiplies, 256);
        assert_eq!(counts.complex_adds, 16 * 15);
    }

    #[test]
    fn basis_state_examples() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let z2 = AbelianGroup::cyclic(2).unwrap();
        let v = fourier_basis_state(&z2, &GroupElement::new(vec![1])).unwrap();
        assert!(v.max_abs_diff(&ComplexVector::from_reals(&[h, -h])) < 1e-15);

        let g = AbelianGroup::new(&[2, 3]).unwrap();
        let v = fourier_basis_state(&g, &g.identity()).unwrap();
        assert!(v.iter().all(|a| (a - c(1.0 / 6f64.sqrt(), 0.0)).norm() < 1e-15));

        let z4 = AbelianGroup::cyclic(4).unwrap();
        let v = fourier_basis_state(&z4, &GroupElement::new(vec![1])).unwrap();
        let expect = ComplexVector::new(vec![c(0.5, 0.0), c(0.0, -0.5), c(-0.5, 0.0), c(0.0, 0.5)]);
        assert!(v.max_abs_diff(&expect) < 1e-15);
    }

    #[test]
    fn shift_examples() {
        let z3 = AbelianGroup::cyclic(3).unwrap();
        let out = shift_vector(&z3, &GroupElement::new(vec![1]), &ComplexVector::basis(3, 0)).unwrap();
        assert_eq!(out, ComplexVector::basis(3, 1));

        let g = AbelianGroup::boolean_cube(2).unwrap();
        let v: ComplexVector = (0..4).map(|i| c(i as f64, -(i as f64))).collect();
        assert_eq!(shift_vector(&g, &g.identity(), &v).unwrap(), v);

        let out = shift_vector(&g, &GroupElement::new(vec![1, 0]), &ComplexVector::basis(4, 1)).unwrap();
        assert_eq!(out, ComplexVector::basis(4, 3));

        assert!(shift_vector_at(&g, 1, &ComplexVector::zeros(5)).is_err());
    }
}

//! Fourier analysis on finite abelian groups and its quantum circuit form.
//!
//! - [`group`]: groups `Z_m1 x ... x Z_mr`, characters, subgroups, cosets.
//! - [`dense`]: the `O(|G|^2)` Fourier transform used as the reference.
//! - [`fft`]: subgroup-tower, radix-2 and Walsh-Hadamard fast transforms with op counts.
//! - [`qsim`]: a qubit state-vector simulator with strided gate kernels.
//! - [`qft`]: the QFT network on `Z_{2^m}` built from `H`, conditional phases and a qubit rotation.
//! - [`hsp`]: period finding / hidden subgroup recovery by Fourier sampling.
//! - [`cli`]: the command line front end shared by the `qfourier` binary.

pub mod cli;
pub mod dense;
pub mod error;
pub mod fft;
pub mod group;
pub mod hsp;
pub mod qft;
pub mod qsim;
pub mod tolerance;
pub mod vector;

pub use dense::{apply_dense, dense_fourier_matrix, fourier_basis_state, shift_vector, FourierMatrix};
pub use error::{Error, Result};
pub use fft::{fft_radix2, fft_tower, predict_cost, walsh_hadamard, Method, OpCountReport, SubgroupTower};
pub use group::{AbelianGroup, CosetDecomposition, GroupElement, Subgroup};
pub use num_complex::Complex64;
pub use vector::ComplexVector;

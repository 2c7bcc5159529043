#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};
use std::f64::consts::PI;

use qfourier::qsim::GateMatrix;
use qfourier::{AbelianGroup, Complex64, ComplexVector, Subgroup};
use rand::Rng;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn random_vector<R: Rng>(len: usize, rng: &mut R) -> ComplexVector {
    (0..len)
        .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect()
}

pub fn random_state<R: Rng>(len: usize, rng: &mut R) -> ComplexVector {
    random_vector(len, rng).normalized()
}

/// Every group of order at most `max_order`, up to isomorphism, as
/// invariant factors `m1 | m2 | ... | mr` (the trivial group is `Z1`).
pub fn invariant_factor_groups(max_order: u64) -> Vec<AbelianGroup> {
    fn extend(prefix: &mut Vec<u64>, product: u64, max: u64, out: &mut Vec<Vec<u64>>) {
        let last = prefix.last().copied().unwrap_or(1);
        let mut m = if last == 1 { 2 } else { last };
        while product * m <= max {
            prefix.push(m);
            out.push(prefix.clone());
            extend(prefix, product * m, max, out);
            prefix.pop();
            m += last;
        }
    }
    let mut shapes = vec![vec![1]];
    extend(&mut Vec::new(), 1, max_order, &mut shapes);
    shapes
        .iter()
        .map(|s| AbelianGroup::new(s).expect("valid moduli"))
        .collect()
}

/// Plain coordinate arithmetic, independent of the library's index tricks.
pub fn coords(group: &AbelianGroup, mut index: usize) -> Vec<u64> {
    let m = group.moduli();
    let mut out = vec![0; m.len()];
    for i in (0..m.len()).rev() {
        out[i] = index as u64 % m[i];
        index /= m[i] as usize;
    }
    out
}

pub fn index(group: &AbelianGroup, coords: &[u64]) -> usize {
    coords
        .iter()
        .zip(group.moduli())
        .fold(0, |acc, (&a, &m)| acc * m as usize + (a % m) as usize)
}

pub fn add(group: &AbelianGroup, a: usize, b: usize) -> usize {
    let (x, y) = (coords(group, a), coords(group, b));
    let sum: Vec<u64> = x.iter().zip(&y).map(|(p, q)| p + q).collect();
    index(group, &sum)
}

/// `exp(2 pi i sum_j a_j b_j / m_j)` straight from the definition, in floating point.
pub fn character(group: &AbelianGroup, label: usize, arg: usize) -> Complex64 {
    let (a, b) = (coords(group, label), coords(group, arg));
    let theta: f64 = group
        .moduli()
        .iter()
        .enumerate()
        .map(|(i, &m)| ((a[i] * b[i]) % m) as f64 / m as f64)
        .sum();
    Complex64::from_polar(1.0, 2.0 * PI * theta)
}

/// Every subgroup of `group`, found by closing `H + <g>` from the trivial subgroup.
pub fn all_subgroups(group: &AbelianGroup) -> Vec<Subgroup> {
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let trivial = Subgroup::trivial(group);
    seen.insert(trivial.members().to_vec());
    let mut queue = vec![trivial];
    let mut out = Vec::new();
    while let Some(h) = queue.pop() {
        for g in 0..group.order() {
            if h.contains(g) {
                continue;
            }
            let mut gens = h.members().to_vec();
            gens.push(g);
            let bigger = span(group, &gens);
            if seen.insert(bigger.clone()) {
                queue.push(Subgroup::from_members(group, &bigger).expect("closed by construction"));
            }
        }
        out.push(h);
    }
    out.sort_by(|a, b| a.members().cmp(b.members()));
    out
}

/// Closure of a generating set under addition, by fixed-point iteration.
pub fn span(group: &AbelianGroup, gens: &[usize]) -> Vec<usize> {
    let mut set: BTreeSet<usize> = BTreeSet::from([0]);
    loop {
        let mut next = set.clone();
        for &a in &set {
            for &g in gens {
                next.insert(add(group, a, g));
            }
        }
        if next.len() == set.len() {
            return set.into_iter().collect();
        }
        set = next;
    }
}

/// Labels whose characters are trivial on all of `k`, by floating-point evaluation.
pub fn annihilator(k: &Subgroup) -> Vec<usize> {
    let g = k.parent();
    (0..g.order())
        .filter(|&l| k.members().iter().all(|&x| (character(g, l, x) - 1.0).norm() < 1e-9))
        .collect()
}

pub fn kron(a: &[Vec<Complex64>], b: &[Vec<Complex64>]) -> Vec<Vec<Complex64>> {
    let (ra, rb) = (a.len(), b.len());
    let mut out = vec![vec![c(0.0, 0.0); ra * rb]; ra * rb];
    for i in 0..ra {
        for j in 0..ra {
            for k in 0..rb {
                for l in 0..rb {
                    out[i * rb + k][j * rb + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

pub fn identity(dim: usize) -> Vec<Vec<Complex64>> {
    (0..dim)
        .map(|i| (0..dim).map(|j| c(if i == j { 1.0 } else { 0.0 }, 0.0)).collect())
        .collect()
}

pub fn mat_vec(m: &[Vec<Complex64>], v: &ComplexVector) -> ComplexVector {
    m.iter()
        .map(|row| row.iter().zip(v.iter()).map(|(a, b)| a * b).sum())
        .collect()
}

pub fn mat_mul(a: &[Vec<Complex64>], b: &[Vec<Complex64>]) -> Vec<Vec<Complex64>> {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect())
        .collect()
}

/// The full `2^n x 2^n` operator of a gate. Qubit 0 is the rightmost
/// Kronecker factor, so a 1-qubit gate on `t` is `I ⊗ U ⊗ I` with
/// `2^(n-1-t)` and `2^t` identities on either side. A 2-qubit gate on
/// `(i, j)` is `I ⊗ U ⊗ I` when `j = i - 1`; otherwise it is conjugated into
/// that position by explicit SWAP operators, themselves built as Kronecker
/// products.
pub fn full_operator(matrix: &GateMatrix, targets: &[usize], n: usize) -> Vec<Vec<Complex64>> {
    let entries = matrix.entries();
    match targets {
        [t] => kron(&kron(&identity(1 << (n - 1 - t)), &entries), &identity(1 << t)),
        [i, j] if *j + 1 == *i => {
            kron(&kron(&identity(1 << (n - 1 - i)), &entries), &identity(1 << j))
        }
        [i, j] => {
            // Route the pair onto (top, top - 1) with top = n - 1.
            let top = n - 1;
            let mut perm: Vec<usize> = (0..n).collect();
            let mut swaps = Vec::new();
            let mut bring = |q: usize, dest: usize, perm: &mut Vec<usize>| {
                let mut at = perm.iter().position(|&p| p == q).expect("tracked");
                while at != dest {
                    let next = if at < dest { at + 1 } else { at - 1 };
                    swaps.push(at.max(next));
                    perm.swap(at, next);
                    at = next;
                }
            };
            bring(*i, top, &mut perm);
            bring(*j, top - 1, &mut perm);
            let mut route = identity(1 << n);
            for &hi in &swaps {
                route = mat_mul(&adjacent_swap(hi, n), &route);
            }
            let core = kron(&entries, &identity(1 << (n - 2)));
            let unroute = dagger(&route);
            mat_mul(&unroute, &mat_mul(&core, &route))
        }
        _ => unreachable!("gates act on one or two qubits"),
    }
}

fn adjacent_swap(hi: usize, n: usize) -> Vec<Vec<Complex64>> {
    let one = c(1.0, 0.0);
    let zero = c(0.0, 0.0);
    let swap = vec![
        vec![one, zero, zero, zero],
        vec![zero, zero, one, zero],
        vec![zero, one, zero, zero],
        vec![zero, zero, zero, one],
    ];
    kron(&kron(&identity(1 << (n - 1 - hi)), &swap), &identity(1 << (hi - 1)))
}

pub fn dagger(m: &[Vec<Complex64>]) -> Vec<Vec<Complex64>> {
    let n = m.len();
    (0..n).map(|i| (0..n).map(|j| m[j][i].conj()).collect()).collect()
}

/// Floating-point dense transform from the defining sum.
pub fn naive_fourier(group: &AbelianGroup, f: &ComplexVector) -> ComplexVector {
    let n = group.order();
    let s = 1.0 / (n as f64).sqrt();
    (0..n)
        .map(|k| (0..n).map(|g| character(group, k, g) * f[g]).sum::<Complex64>() * s)
        .collect()
}

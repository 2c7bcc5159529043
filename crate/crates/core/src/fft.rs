//! Fast Fourier transforms on finite abelian groups.
//!
//! [`fft_tower`] runs the coset recursion along an arbitrary chain of
//! subgroups `G > H_1 > ... > H_n > {0}`: the transform on `H_j` is assembled
//! from `|H_j| / |H_{j+1}|` transforms on `H_{j+1}`, one per coset, recombined
//! with the twiddle coefficients `chi_l(k_i)`. [`fft_radix2`] is the even/odd
//! butterfly on `Z_{2^n}` and [`walsh_hadamard`] the in-place butterfly on
//! `(Z_2)^n`.
//!
//! Every transform tallies the complex multiplies and adds on its data path.
//! Twiddle generation is not counted. For the radix-2 transform the tally is
//! exactly `n 2^n` multiplies and `n 2^n` adds, i.e. `C(2^m) = 2 C(2^{m-1}) + 2^m`.

use std::collections::HashMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dense::apply_dense_counted;
use crate::error::{Error, Result};
use crate::group::{unit_root, AbelianGroup, Subgroup};
use crate::vector::ComplexVector;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OpCountReport {
    pub complex_multiplies: u64,
    pub complex_adds: u64,
    /// The asymptotic cost form of the method evaluated with constant 1.
    pub predicted_bound: u64,
}

impl OpCountReport {
    pub fn with_bound(predicted_bound: u64) -> Self {
        Self {
            predicted_bound,
            ..Self::default()
        }
    }
}

/// Which transform implementation to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Dense,
    Tower,
    Radix2,
    Walsh,
}

impl std::str::FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dense" => Ok(Self::Dense),
            "tower" => Ok(Self::Tower),
            "radix2" => Ok(Self::Radix2),
            "walsh" => Ok(Self::Walsh),
            other => Err(Error::Invalid(format!("unknown method {other:?}"))),
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::Dense => "dense",
            Self::Tower => "tower",
            Self::Radix2 => "radix2",
            Self::Walsh => "walsh",
        })
    }
}

/// Runs `method` on `f`. `Radix2` needs `G = Z_{2^n}` and `Walsh` needs
/// `G = (Z_2)^n`; `Tower` uses [`SubgroupTower::auto`].
pub fn transform(
    group: &AbelianGroup,
    method: Method,
    f: &ComplexVector,
) -> Result<(ComplexVector, OpCountReport)> {
    match method {
        Method::Dense => apply_dense_counted(group, f),
        Method::Tower => fft_tower(&SubgroupTower::auto(group), f),
        Method::Radix2 => {
            let n = group.as_cyclic_power_of_two().ok_or_else(|| {
                Error::Invalid(format!("radix2 needs a group Z_(2^n), got {group}"))
            })?;
            f.check_len(group.order())?;
            fft_radix2(n, f)
        }
        Method::Walsh => {
            let n = group.as_boolean_cube().ok_or_else(|| {
                Error::Invalid(format!("walsh needs a group Z2^n, got {group}"))
            })?;
            f.check_len(group.order())?;
            walsh_hadamard_counted(n, f)
        }
    }
}

/// A strictly decreasing chain `G > H_1 > ... > H_n > {0}`.
///
/// `levels` holds `H_1 .. H_n`; neither `G` nor the trivial subgroup is stored.
#[derive(Debug, Clone, PartialEq)]
pub struct SubgroupTower {
    group: AbelianGroup,
    levels: Vec<Subgroup>,
}

impl SubgroupTower {
    pub fn new(group: &AbelianGroup, levels: Vec<Subgroup>) -> Result<Self> {
        let mut levels = levels;
        while levels.last().is_some_and(|h| h.order() == 1) {
            levels.pop();
        }
        let mut prev = Subgroup::whole(group);
        for (j, h) in levels.iter().enumerate() {
            if h.parent() != group {
                return Err(Error::BadTower(format!("level {} lives in another group", j + 1)));
            }
            if !h.is_subgroup_of(&prev) {
                return Err(Error::BadTower(format!(
                    "level {} is not contained in level {j}",
                    j + 1
                )));
            }
            if h.order() == prev.order() {
                return Err(Error::BadTower(format!(
                    "level {} has index 1 in level {j}",
                    j + 1
                )));
            }
            prev = h.clone();
        }
        Ok(Self {
            group: group.clone(),
            levels,
        })
    }

    /// Just `G > {0}`: a single coset-free level.
    pub fn trivial(group: &AbelianGroup) -> Self {
        Self {
            group: group.clone(),
            levels: Vec::new(),
        }
    }

    /// A maximal-length tower, peeling one prime at a time off each factor.
    ///
    /// For `Z_{2^n}` this is the chain of even numbers, multiples of 4, ...,
    /// each of index 2.
    pub fn auto(group: &AbelianGroup) -> Self {
        let moduli = group.moduli();
        let mut multipliers = vec![1u64; moduli.len()];
        let mut levels = Vec::new();
        while let Some(i) = (0..moduli.len()).find(|&i| multipliers[i] < moduli[i]) {
            multipliers[i] *= smallest_prime_factor(moduli[i] / multipliers[i]);
            let gens: Vec<usize> = (0..moduli.len())
                .map(|r| {
                    let mut coords = vec![0u64; moduli.len()];
                    coords[r] = multipliers[r] % moduli[r];
                    coords
                })
                .filter(|c| c.iter().any(|&x| x != 0))
                .map(|c| group.index_of(&c.into()).expect("coords are in range"))
                .collect();
            let h = Subgroup::generated_by_indices(group, &gens);
            if h.order() > 1 {
                levels.push(h);
            }
        }
        Self {
            group: group.clone(),
            levels,
        }
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn levels(&self) -> &[Subgroup] {
        &self.levels
    }

    /// Indices `I_j = |H_{j-1}| / |H_j|` of every inclusion, ending with `|H_n|`.
    pub fn indices(&self) -> Vec<usize> {
        let mut sizes = vec![self.group.order()];
        sizes.extend(self.levels.iter().map(|h| h.order()));
        sizes.push(1);
        sizes.windows(2).map(|w| w[0] / w[1]).collect()
    }

    /// `|G| * sum_j I_j`; for a single proper subgroup this is `|G| (|H| + I)`.
    pub fn predicted_bound(&self) -> u64 {
        self.group.order() as u64 * self.indices().iter().map(|&i| i as u64).sum::<u64>()
    }
}

fn smallest_prime_factor(n: u64) -> u64 {
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            return p;
        }
        p += 1;
    }
    n
}

// Precomputed data for one inclusion H_j > H_{j+1}.
struct Stage {
    // coset representatives k_i of H_{j+1} in H_j
    shifts: Vec<usize>,
    // twiddles[c * shifts.len() + i] = chi_{rep_c}(k_i), rep_c a label of class c of H_j
    twiddles: Vec<Complex64>,
    // class of rep_c among the characters of H_{j+1}
    child: Vec<usize>,
}

// Labels l, l' restrict to the same character of H iff they agree on generators of H.
fn character_classes(group: &AbelianGroup, h: &Subgroup) -> (Vec<usize>, Vec<usize>) {
    let gens = h.generators();
    let mut ids: HashMap<Vec<u64>, usize> = HashMap::new();
    let mut class_of = Vec::with_capacity(group.order());
    let mut reps = Vec::new();
    for l in 0..group.order() {
        let sig: Vec<u64> = gens.iter().map(|&g| group.character_phase(l, g)).collect();
        let next = ids.len();
        let id = *ids.entry(sig).or_insert(next);
        if id == reps.len() {
            reps.push(l);
        }
        class_of.push(id);
    }
    debug_assert_eq!(reps.len(), h.order());
    (class_of, reps)
}

fn build_stages(tower: &SubgroupTower) -> Vec<Stage> {
    let group = &tower.group;
    let mut chain = vec![Subgroup::whole(group)];
    chain.extend(tower.levels.iter().cloned());
    chain.push(Subgroup::trivial(group));

    let classes: Vec<(Vec<usize>, Vec<usize>)> = chain
        .iter()
        .map(|h| character_classes(group, h))
        .collect();
    let l = group.exponent();
    let norm = 1.0 / (group.order() as f64).sqrt();

    (0..chain.len() - 1)
        .map(|j| {
            let (outer, inner) = (&chain[j], &chain[j + 1]);
            let mut covered = vec![false; group.order()];
            let mut shifts = Vec::with_capacity(outer.order() / inner.order());
            for &k in outer.members() {
                if covered[k] {
                    continue;
                }
                shifts.push(k);
                for &h in inner.members() {
                    covered[group.add_index(k, h)] = true;
                }
            }
            let reps = &classes[j].1;
            let mut twiddles = Vec::with_capacity(reps.len() * shifts.len());
            for &rep in reps {
                for &k in &shifts {
                    let w = unit_root(group.character_phase(rep, k), l);
                    // the top stage also carries the 1/sqrt(|G|) normalisation
                    twiddles.push(if j == 0 { w * norm } else { w });
                }
            }
            let child = reps.iter().map(|&rep| classes[j + 1].0[rep]).collect();
            Stage {
                shifts,
                twiddles,
                child,
            }
        })
        .collect()
}

// Unnormalised partial transform sum_{h in H_j} f(offset + h) chi_c(h), one entry per class c.
fn tower_rec(
    group: &AbelianGroup,
    stages: &[Stage],
    f: &ComplexVector,
    offset: usize,
    counts: &mut OpCountReport,
) -> Vec<Complex64> {
    let Some((stage, rest)) = stages.split_first() else {
        return vec![f[offset]];
    };
    let subs: Vec<Vec<Complex64>> = stage
        .shifts
        .iter()
        .map(|&k| tower_rec(group, rest, f, group.add_index(offset, k), counts))
        .collect();
    let width = stage.shifts.len();
    let out = stage
        .child
        .iter()
        .enumerate()
        .map(|(c, &child)| {
            let tw = &stage.twiddles[c * width..(c + 1) * width];
            let mut acc = tw[0] * subs[0][child];
            for i in 1..width {
                acc += tw[i] * subs[i][child];
            }
            acc
        })
        .collect::<Vec<_>>();
    counts.complex_multiplies += (out.len() * width) as u64;
    counts.complex_adds += (out.len() * (width - 1)) as u64;
    out
}

/// The coset (Cooley-Tukey) recursion along `tower`.
pub fn fft_tower(tower: &SubgroupTower, f: &ComplexVector) -> Result<(ComplexVector, OpCountReport)> {
    let group = &tower.group;
    f.check_len(group.order())?;
    let stages = build_stages(tower);
    let mut counts = OpCountReport::with_bound(tower.predicted_bound());
    let by_class = tower_rec(group, &stages, f, 0, &mut counts);
    // at the top level every label is its own class, but not necessarily in label order
    let (class_of, _) = character_classes(group, &Subgroup::whole(group));
    let out = class_of.iter().map(|&c| by_class[c]).collect();
    Ok((out, counts))
}

// s * w^j for j in 0..half, w = exp(2 pi i / 2^m), re-anchored every 64 steps.
fn scaled_twiddles(half: usize, s: f64) -> Vec<Complex64> {
    let full = 2 * half as u64;
    let step = unit_root(1, full);
    let mut out = Vec::with_capacity(half);
    let mut w = Complex64::new(1.0, 0.0);
    for j in 0..half {
        if j % 64 == 0 {
            w = unit_root(j as u64, full);
        }
        out.push(w * s);
        w *= step;
    }
    out
}

fn radix2_rec(f: &[Complex64], counts: &mut OpCountReport) -> Vec<Complex64> {
    let len = f.len();
    if len == 1 {
        return f.to_vec();
    }
    let half = len / 2;
    let even: Vec<Complex64> = f.iter().step_by(2).copied().collect();
    let odd: Vec<Complex64> = f.iter().skip(1).step_by(2).copied().collect();
    let even = radix2_rec(&even, counts);
    let odd = radix2_rec(&odd, counts);
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let tw = scaled_twiddles(half, s);
    let mut out = vec![Complex64::new(0.0, 0.0); len];
    for j in 0..half {
        let e = even[j] * s;
        let t = tw[j] * odd[j];
        out[j] = e + t;
        out[j + half] = e - t;
    }
    counts.complex_multiplies += len as u64;
    counts.complex_adds += len as u64;
    out
}

/// The Fourier transform on `Z_{2^n}` by the even/odd split: entry `j` and
/// `j + 2^{m-1}` of each level are `(E_j +- w^j O_j) / sqrt(2)`.
pub fn fft_radix2(n: usize, f: &ComplexVector) -> Result<(ComplexVector, OpCountReport)> {
    if !f.len().is_power_of_two() {
        return Err(Error::NotPowerOfTwo(f.len()));
    }
    f.check_len(1 << n)?;
    let mut counts = OpCountReport::with_bound((n as u64) << n);
    let out = radix2_rec(f, &mut counts);
    Ok((out.into(), counts))
}

/// The Fourier transform on `(Z_2)^n`, i.e. the normalised Walsh-Hadamard transform.
pub fn walsh_hadamard(n: usize, f: &ComplexVector) -> Result<ComplexVector> {
    walsh_hadamard_counted(n, f).map(|(v, _)| v)
}

pub fn walsh_hadamard_counted(n: usize, f: &ComplexVector) -> Result<(ComplexVector, OpCountReport)> {
    if !f.len().is_power_of_two() {
        return Err(Error::NotPowerOfTwo(f.len()));
    }
    f.check_len(1 << n)?;
    let mut v = f.clone();
    let len = v.len();
    let mut counts = OpCountReport::with_bound((n as u64) << n);
    let mut h = 1;
    while h < len {
        for block in (0..len).step_by(2 * h) {
            for i in block..block + h {
                let (a, b) = (v[i], v[i + h]);
                v[i] = a + b;
                v[i + h] = a - b;
            }
        }
        counts.complex_adds += len as u64;
        h *= 2;
    }
    let s = 1.0 / (len as f64).sqrt();
    for a in v.iter_mut() {
        *a *= s;
    }
    counts.complex_multiplies += len as u64;
    Ok((v, counts))
}

/// `|G| (|H| + |G|/|H|)`: the cost of one coset split of `G` over `H`.
pub fn predict_cost(group_order: usize, subgroup_order: usize) -> Result<u64> {
    if subgroup_order == 0 || !group_order.is_multiple_of(subgroup_order) {
        return Err(Error::NotDivisor(subgroup_order, group_order));
    }
    let g = group_order as u64;
    let h = subgroup_order as u64;
    Ok(g * (h + g / h))
}

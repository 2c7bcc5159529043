//! Period finding: recover the stabiliser `K = {k : f(k + g) = f(g) for all g}`
//! of a function on a finite abelian group by Fourier sampling.
//!
//! One round prepares `sum_g |g>|f(g)> / sqrt(|G|)`, reads the value register
//! (leaving a uniform superposition over a random coset `g0 + K`), applies the
//! group Fourier transform and reads a label `l`. Every label satisfies
//! `chi_l(k) = 1` on `K`, whatever `g0` was, so intersecting the annihilators
//! of the observed labels converges on `K`.
//!
//! With `|K| = n` and `|G| = mn`, the transform of `|K>` is
//! `sum_l (sum_k chi_l(k)) |l> / (n sqrt(m))`: the `m` surviving labels each
//! carry amplitude `1/sqrt(m)`, so the state has unit norm.

use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fft::{fft_tower, SubgroupTower};
use crate::group::{AbelianGroup, CosetDecomposition, Subgroup};
use crate::qft::apply_qft;
use crate::qsim::{Distribution, QState, DEFAULT_QUBIT_CAP};
use crate::vector::ComplexVector;

/// Consecutive samples that must leave the reconstruction unchanged.
pub const CONFIRMATION_WINDOW: usize = 10;

/// An explicit function `G -> X` with `X` encoded as non-negative integers.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionTable {
    group: AbelianGroup,
    values: Vec<u64>,
}

impl FunctionTable {
    pub fn new(group: &AbelianGroup, values: Vec<u64>) -> Result<Self> {
        if values.len() != group.order() {
            return Err(Error::LengthMismatch {
                expected: group.order(),
                got: values.len(),
            });
        }
        Ok(Self {
            group: group.clone(),
            values,
        })
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn value(&self, g: usize) -> u64 {
        self.values[g]
    }
}

/// Wire form: `{"group": "Z2xZ3", "values": [0, 1, 2, 0, 1, 2]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionTableJson {
    pub group: String,
    pub values: Vec<u64>,
}

impl TryFrom<&FunctionTableJson> for FunctionTable {
    type Error = Error;
    fn try_from(j: &FunctionTableJson) -> Result<Self> {
        let group: AbelianGroup = j.group.parse()?;
        FunctionTable::new(&group, j.values.clone())
    }
}

impl From<&FunctionTable> for FunctionTableJson {
    fn from(f: &FunctionTable) -> Self {
        Self {
            group: f.group.to_string(),
            values: f.values.clone(),
        }
    }
}

/// `K` by checking the definition for every candidate `k`.
pub fn stabilizer_bruteforce(f: &FunctionTable) -> Subgroup {
    let g = &f.group;
    let members: Vec<usize> = (0..g.order())
        .filter(|&k| (0..g.order()).all(|x| f.value(g.add_index(k, x)) == f.value(x)))
        .collect();
    Subgroup::from_members(g, &members).expect("a stabiliser is always a subgroup")
}

// A pair g1, g2 with f(g1) = f(g2) in different cosets of K, or with equal
// cosets and different values.
fn degeneracy_witness(f: &FunctionTable, k: &Subgroup) -> Option<(usize, usize)> {
    let cosets = CosetDecomposition::new(&f.group, k).ok()?;
    let mut coset_of_value = std::collections::HashMap::new();
    let mut value_of_coset = vec![None; cosets.num_cosets()];
    for g in 0..f.group.order() {
        let c = cosets.coset_of(g);
        let v = f.value(g);
        let rep = cosets.representatives[c];
        match value_of_coset[c] {
            None => value_of_coset[c] = Some(v),
            Some(w) if w != v => return Some((g, rep)),
            _ => {}
        }
        match coset_of_value.insert(v, (c, g)) {
            Some((c2, g2)) if c2 != c => return Some((g, g2)),
            _ => {}
        }
    }
    None
}

/// True iff `f(g1) = f(g2)` exactly when `g1 - g2` lies in `K`.
pub fn check_nondegenerate(f: &FunctionTable, k: &Subgroup) -> bool {
    k.parent() == &f.group && degeneracy_witness(f, k).is_none()
}

fn require_nondegenerate(f: &FunctionTable) -> Result<Subgroup> {
    let k = stabilizer_bruteforce(f);
    match degeneracy_witness(f, &k) {
        None => Ok(k),
        Some((a, b)) => Err(Error::Degenerate { a, b }),
    }
}

fn bits_for(count: u64) -> usize {
    let mut bits = 0;
    while (1u128 << bits) < count as u128 {
        bits += 1;
    }
    bits.max(1)
}

/// `|f> = sum_g |g>|f(g)> / sqrt(|G|)` on two registers.
///
/// The group register holds the element index on the low `group_qubits`
/// qubits; the value register holds `f(g)` on the qubits above it.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionState {
    pub state: QState,
    pub group_qubits: usize,
    pub value_qubits: usize,
}

impl FunctionState {
    pub fn value_register(&self) -> Vec<usize> {
        (self.group_qubits..self.group_qubits + self.value_qubits).collect()
    }
}

pub fn build_function_state(f: &FunctionTable) -> Result<FunctionState> {
    let order = f.group.order();
    let group_qubits = bits_for(order as u64);
    let max_value = f.values.iter().copied().max().unwrap_or(0);
    let value_qubits = bits_for(max_value.saturating_add(1));
    let total = group_qubits + value_qubits;
    if total > DEFAULT_QUBIT_CAP {
        return Err(Error::CapExceeded {
            size: total,
            cap: DEFAULT_QUBIT_CAP,
        });
    }
    let amp = Complex64::new(1.0 / (order as f64).sqrt(), 0.0);
    let mut amps = ComplexVector::zeros(1 << total);
    for g in 0..order {
        amps[g | (f.value(g) as usize) << group_qubits] = amp;
    }
    Ok(FunctionState {
        state: QState::from_amplitudes(amps)?,
        group_qubits,
        value_qubits,
    })
}

/// How the value-register measurement is carried out.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SampleMode {
    /// Draw `g0` uniformly and form the uniform state on `{g : f(g) = f(g0)}`
    /// directly; the label distribution is computed once and reused.
    #[default]
    Exact,
    /// Build the joint state in the simulator and collapse its value register.
    Simulate,
}

impl std::str::FromStr for SampleMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Self::Exact),
            "simulate" => Ok(Self::Simulate),
            other => Err(Error::Invalid(format!("unknown mode {other:?}"))),
        }
    }
}

/// The group register after the value register has been read.
#[derive(Debug, Clone, PartialEq)]
pub struct CosetState {
    pub value: u64,
    /// Length `|G|`.
    pub amps: ComplexVector,
}

fn coset_state_exact<R: Rng + ?Sized>(f: &FunctionTable, rng: &mut R) -> CosetState {
    let g0 = rng.gen_range(0..f.group.order());
    let value = f.value(g0);
    let level: Vec<usize> = (0..f.group.order()).filter(|&g| f.value(g) == value).collect();
    let a = Complex64::new(1.0 / (level.len() as f64).sqrt(), 0.0);
    let mut amps = ComplexVector::zeros(f.group.order());
    for g in level {
        amps[g] = a;
    }
    CosetState { value, amps }
}

fn coset_state_simulated<R: Rng + ?Sized>(
    f: &FunctionTable,
    joint: &FunctionState,
    rng: &mut R,
) -> Result<CosetState> {
    let (value, post) = joint.state.collapse_register(&joint.value_register(), rng)?;
    let offset = value << joint.group_qubits;
    let amps = (0..f.group.order())
        .map(|g| post.amplitudes()[g | offset])
        .collect();
    Ok(CosetState {
        value: value as u64,
        amps,
    })
}

/// Reads the value register of `|f>`, leaving `sum_{k in K} |g0 + k> / sqrt(|K|)`.
pub fn sample_coset_state<R: Rng + ?Sized>(
    f: &FunctionTable,
    mode: SampleMode,
    rng: &mut R,
) -> Result<CosetState> {
    require_nondegenerate(f)?;
    match mode {
        SampleMode::Exact => Ok(coset_state_exact(f, rng)),
        SampleMode::Simulate => coset_state_simulated(f, &build_function_state(f)?, rng),
    }
}

/// The group Fourier transform of a state on `G`: the QFT network when
/// `G = Z_{2^m}`, otherwise the subgroup-tower FFT.
pub fn fourier_transform_state(group: &AbelianGroup, amps: &ComplexVector) -> Result<ComplexVector> {
    amps.check_len(group.order())?;
    match group.as_cyclic_power_of_two() {
        Some(m) if m >= 1 => Ok(apply_qft(&QState::from_amplitudes(amps.clone())?)?.into_amplitudes()),
        _ => Ok(fft_tower(&SubgroupTower::auto(group), amps)?.0),
    }
}

/// Born distribution of the label read after the Fourier transform.
pub fn label_distribution(group: &AbelianGroup, amps: &ComplexVector) -> Result<Distribution> {
    Ok(Distribution::from_weights(
        fourier_transform_state(group, amps)?.probabilities(),
    ))
}

/// Fourier-transforms `coset_state` and draws `shots` labels from the result.
pub fn fourier_sample<R: Rng + ?Sized>(
    coset_state: &ComplexVector,
    group: &AbelianGroup,
    shots: usize,
    rng: &mut R,
) -> Result<Vec<usize>> {
    let dist = label_distribution(group, coset_state)?;
    Ok((0..shots).map(|_| dist.draw(rng)).collect())
}

/// The subgroup cut out by the observed labels.
#[derive(Debug, Clone, PartialEq)]
pub struct Reconstruction {
    pub subgroup: Subgroup,
    /// No labels were given, so the result is all of `G`.
    pub vacuous: bool,
}

/// `{k : chi_l(k) = 1 for every observed l}`, decided in exact integer phase
/// arithmetic. On `(Z_2)^n` this is the GF(2) null space of the labels.
pub fn reconstruct_subgroup(group: &AbelianGroup, labels: &[usize]) -> Result<Reconstruction> {
    for &l in labels {
        group.check_index(l)?;
    }
    let mut candidates: Vec<usize> = (0..group.order()).collect();
    let mut distinct = labels.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    for &l in &distinct {
        candidates.retain(|&k| group.character_is_trivial(l, k));
    }
    Ok(Reconstruction {
        subgroup: Subgroup::from_members(group, &candidates)?,
        vacuous: labels.is_empty(),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct StabilizerResult {
    pub subgroup: Subgroup,
    pub samples_used: usize,
    pub labels_seen: Vec<usize>,
    /// The reconstruction held still for [`CONFIRMATION_WINDOW`] samples.
    pub converged: bool,
}

/// Repeats coset preparation and Fourier sampling one label at a time until
/// the reconstructed subgroup is unchanged for [`CONFIRMATION_WINDOW`]
/// consecutive samples, or `max_shots` labels have been drawn.
pub fn find_period<R: Rng + ?Sized>(
    f: &FunctionTable,
    max_shots: usize,
    mode: SampleMode,
    rng: &mut R,
) -> Result<StabilizerResult> {
    require_nondegenerate(f)?;
    let group = &f.group;
    let joint = match mode {
        SampleMode::Simulate => Some(build_function_state(f)?),
        SampleMode::Exact => None,
    };
    let mut cached: Option<Distribution> = None;
    let mut candidates: Vec<usize> = (0..group.order()).collect();
    let mut labels = Vec::new();
    let mut unchanged = 0;
    let mut converged = false;

    while labels.len() < max_shots {
        let label = match &joint {
            Some(joint) => {
                let coset = coset_state_simulated(f, joint, rng)?;
                label_distribution(group, &coset.amps)?.draw(rng)
            }
            None => {
                if cached.is_none() {
                    let coset = coset_state_exact(f, rng);
                    cached = Some(label_distribution(group, &coset.amps)?);
                }
                cached.as_ref().expect("just filled").draw(rng)
            }
        };
        labels.push(label);
        let before = candidates.len();
        candidates.retain(|&k| group.character_is_trivial(label, k));
        if labels.len() > 1 && candidates.len() == before {
            unchanged += 1;
        } else {
            unchanged = 0;
        }
        if unchanged >= CONFIRMATION_WINDOW {
            converged = true;
            break;
        }
    }
    Ok(StabilizerResult {
        subgroup: Subgroup::from_members(group, &candidates)?,
        samples_used: labels.len(),
        labels_seen: labels,
        converged,
    })
}

/// A nondegenerate function with stabiliser exactly `K`: each coset of `K`
/// gets its own value, the values shuffled.
pub fn function_with_stabilizer<R: Rng + ?Sized>(k: &Subgroup, rng: &mut R) -> FunctionTable {
    let group = k.parent();
    let cosets = CosetDecomposition::new(group, k).expect("k lives in its parent");
    let mut labels: Vec<u64> = (0..cosets.num_cosets() as u64).collect();
    labels.shuffle(rng);
    let values = (0..group.order())
        .map(|g| labels[cosets.coset_of(g)])
        .collect();
    FunctionTable::new(group, values).expect("one value per element")
}

/// Simon's problem on `(Z_2)^n`: a function with `f(x) = f(x ^ mask)` and no
/// other collisions.
pub fn simon_function<R: Rng + ?Sized>(n: usize, mask: usize, rng: &mut R) -> Result<FunctionTable> {
    let group = AbelianGroup::boolean_cube(n)?;
    group.check_index(mask)?;
    let k = Subgroup::generated_by_indices(&group, &[mask]);
    Ok(function_with_stabilizer(&k, rng))
}

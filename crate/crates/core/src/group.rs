//! Finite abelian groups presented as products of cyclic groups `Z_m1 x ... x Z_mr`.
//!
//! Elements are addressed either by their coordinate tuple or by a flat index.
//! The flat index is mixed-radix with the first modulus most significant, so in
//! `Z2xZ3` the element `(1, 2)` has index `1 * 3 + 2 = 5`.
//!
//! Characters are labelled by group elements and evaluated from the closed form
//! `chi_a(b) = exp(2 pi i sum_i a_i b_i / m_i)`. Phases are reduced exactly in
//! integer arithmetic (scaled to the lcm of the moduli) before any floating point
//! is involved.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// `exp(2 pi i num / den)`, with the angle folded into the first quadrant so
/// that quarter turns come out exact.
pub fn unit_root(num: u64, den: u64) -> Complex64 {
    debug_assert!(den > 0);
    let num = (num % den) as u128;
    let den = den as u128;
    // quadrant q and remainder r with 4 num = q den + r
    let scaled = 4 * num;
    let q = scaled / den;
    let r = scaled % den;
    let base = if r == 0 {
        Complex64::new(1.0, 0.0)
    } else {
        let theta = std::f64::consts::FRAC_PI_2 * (r as f64) / (den as f64);
        let (s, c) = theta.sin_cos();
        Complex64::new(c, s)
    };
    match q {
        0 => base,
        1 => Complex64::new(-base.im, base.re),
        2 => -base,
        _ => Complex64::new(base.im, -base.re),
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    moduli: Vec<u64>,
    order: usize,
    // weight of each coordinate in the flat index
    strides: Vec<usize>,
    lcm: u64,
    // lcm / m_i
    phase_weights: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    coords: Vec<u64>,
}

impl GroupElement {
    pub fn new(coords: Vec<u64>) -> Self {
        Self { coords }
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }
}

impl From<Vec<u64>> for GroupElement {
    fn from(coords: Vec<u64>) -> Self {
        Self::new(coords)
    }
}

impl AbelianGroup {
    /// Builds `Z_m1 x ... x Z_mr`. Divisibility between moduli is not required.
    pub fn new(moduli: &[u64]) -> Result<Self> {
        if moduli.is_empty() {
            return Err(Error::EmptyPresentation);
        }
        if let Some(&bad) = moduli.iter().find(|&&m| m < 1) {
            return Err(Error::BadModulus(bad));
        }
        let mut order: usize = 1;
        for &m in moduli {
            let m = usize::try_from(m).map_err(|_| Error::OrderOverflow)?;
            order = order.checked_mul(m).ok_or(Error::OrderOverflow)?;
        }
        let mut strides = vec![1usize; moduli.len()];
        for i in (0..moduli.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * moduli[i + 1] as usize;
        }
        let mut lcm = 1u64;
        for &m in moduli {
            lcm = lcm / gcd(lcm, m) * m;
        }
        let phase_weights = moduli.iter().map(|&m| lcm / m).collect();
        Ok(Self {
            moduli: moduli.to_vec(),
            order,
            strides,
            lcm,
            phase_weights,
        })
    }

    /// The cyclic group `Z_m`.
    pub fn cyclic(m: u64) -> Result<Self> {
        Self::new(&[m])
    }

    /// `(Z_2)^n`, whose element indices read as n-bit strings.
    pub fn boolean_cube(n: usize) -> Result<Self> {
        Self::new(&vec![2; n])
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    /// Least common multiple of the moduli; every character value is an
    /// `lcm`-th root of unity.
    pub fn exponent(&self) -> u64 {
        self.lcm
    }

    /// `Some(n)` when the presentation is exactly `Z_{2^n}`.
    pub fn as_cyclic_power_of_two(&self) -> Option<usize> {
        match self.moduli.as_slice() {
            [m] if m.is_power_of_two() => Some(m.trailing_zeros() as usize),
            _ => None,
        }
    }

    /// `Some(n)` when every modulus is 2.
    pub fn as_boolean_cube(&self) -> Option<usize> {
        self.moduli
            .iter()
            .all(|&m| m == 2)
            .then_some(self.moduli.len())
    }

    pub fn check_element(&self, e: &GroupElement) -> Result<()> {
        if e.coords.len() == self.moduli.len()
            && e.coords.iter().zip(&self.moduli).all(|(a, m)| a < m)
        {
            Ok(())
        } else {
            Err(Error::BadElement {
                coords: e.coords.clone(),
                moduli: self.moduli.clone(),
            })
        }
    }

    pub fn check_index(&self, index: usize) -> Result<()> {
        if index < self.order {
            Ok(())
        } else {
            Err(Error::BadIndex {
                index,
                order: self.order,
            })
        }
    }

    pub fn element(&self, index: usize) -> Result<GroupElement> {
        self.check_index(index)?;
        Ok(GroupElement::new(self.coords_of(index)))
    }

    pub fn index_of(&self, e: &GroupElement) -> Result<usize> {
        self.check_element(e)?;
        Ok(e.coords
            .iter()
            .zip(&self.strides)
            .map(|(&a, &s)| a as usize * s)
            .sum())
    }

    pub(crate) fn coords_of(&self, index: usize) -> Vec<u64> {
        self.strides
            .iter()
            .zip(&self.moduli)
            .map(|(&s, &m)| ((index / s) as u64) % m)
            .collect()
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order).map(|i| GroupElement::new(self.coords_of(i)))
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::new(vec![0; self.moduli.len()])
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check_element(a)?;
        self.check_element(b)?;
        Ok(GroupElement::new(
            a.coords
                .iter()
                .zip(&b.coords)
                .zip(&self.moduli)
                .map(|((&x, &y), &m)| (x + y) % m)
                .collect(),
        ))
    }

    pub fn neg(&self, a: &GroupElement) -> Result<GroupElement> {
        self.check_element(a)?;
        Ok(GroupElement::new(
            a.coords
                .iter()
                .zip(&self.moduli)
                .map(|(&x, &m)| (m - x) % m)
                .collect(),
        ))
    }

    /// Group addition on flat indices. Indices must be in range.
    pub fn add_index(&self, a: usize, b: usize) -> usize {
        let mut out = 0;
        for (&s, &m) in self.strides.iter().zip(&self.moduli) {
            let m = m as usize;
            let x = (a / s) % m;
            let y = (b / s) % m;
            out += ((x + y) % m) * s;
        }
        out
    }

    pub fn neg_index(&self, a: usize) -> usize {
        let mut out = 0;
        for (&s, &m) in self.strides.iter().zip(&self.moduli) {
            let m = m as usize;
            out += ((m - (a / s) % m) % m) * s;
        }
        out
    }

    pub fn sub_index(&self, a: usize, b: usize) -> usize {
        self.add_index(a, self.neg_index(b))
    }

    /// `c * a` for a non-negative integer `c`.
    pub fn scale_index(&self, a: usize, c: u64) -> usize {
        let mut out = 0;
        for (&s, &m) in self.strides.iter().zip(&self.moduli) {
            let x = ((a / s) as u128 % m as u128) * c as u128 % m as u128;
            out += x as usize * s;
        }
        out
    }

    /// Numerator `t` of the character phase `chi_label(arg) = exp(2 pi i t / exponent)`.
    pub fn character_phase(&self, label: usize, arg: usize) -> u64 {
        let lcm = self.lcm as u128;
        let mut t: u128 = 0;
        for ((&s, &m), &w) in self
            .strides
            .iter()
            .zip(&self.moduli)
            .zip(&self.phase_weights)
        {
            let a = ((label / s) as u64 % m) as u128;
            let b = ((arg / s) as u64 % m) as u128;
            t = (t + (a * b % m as u128) * w as u128) % lcm;
        }
        t as u64
    }

    /// `chi_label(arg)` on flat indices.
    pub fn character_at(&self, label: usize, arg: usize) -> Complex64 {
        unit_root(self.character_phase(label, arg), self.lcm)
    }

    /// `chi_label(arg) = exp(2 pi i sum_i a_i b_i / m_i)`.
    pub fn character(&self, label: &GroupElement, arg: &GroupElement) -> Result<Complex64> {
        let l = self.index_of(label)?;
        let g = self.index_of(arg)?;
        Ok(self.character_at(l, g))
    }

    /// True when `chi_label(arg) == 1`, decided exactly.
    pub fn character_is_trivial(&self, label: usize, arg: usize) -> bool {
        self.character_phase(label, arg) == 0
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut i = 0;
        while i < self.moduli.len() {
            let m = self.moduli[i];
            let mut run = 1;
            while i + run < self.moduli.len() && self.moduli[i + run] == m {
                run += 1;
            }
            if !first {
                f.write_str("x")?;
            }
            first = false;
            if run > 1 {
                write!(f, "Z{m}^{run}")?;
            } else {
                write!(f, "Z{m}")?;
            }
            i += run;
        }
        Ok(())
    }
}

impl FromStr for AbelianGroup {
    type Err = Error;

    /// Parses `"Z4"`, `"Z2xZ3"`, `"Z2^3"` and combinations such as `"Z4xZ2^2"`.
    fn from_str(s: &str) -> Result<Self> {
        let mut moduli = Vec::new();
        for token in s.trim().split(['x', 'X', '*']) {
            let token = token.trim();
            let bad = || Error::GroupSpec(token.to_string());
            let body = token.strip_prefix(['Z', 'z']).ok_or_else(bad)?;
            let (base, power) = match body.split_once('^') {
                Some((b, p)) => (b, p.parse::<usize>().map_err(|_| bad())?),
                None => (body, 1),
            };
            let m: u64 = base.parse().map_err(|_| bad())?;
            if m < 1 || power < 1 {
                return Err(bad());
            }
            moduli.extend(std::iter::repeat_n(m, power));
        }
        Self::new(&moduli)
    }
}

/// A subgroup stored as its sorted list of member indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    parent: AbelianGroup,
    members: Vec<usize>,
}

impl Subgroup {
    /// The smallest subgroup containing every generator.
    pub fn generated(group: &AbelianGroup, gens: &[GroupElement]) -> Result<Self> {
        let idx = gens
            .iter()
            .map(|g| group.index_of(g))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::generated_by_indices(group, &idx))
    }

    pub fn generated_by_indices(group: &AbelianGroup, gens: &[usize]) -> Self {
        let mut inside = vec![false; group.order()];
        inside[0] = true;
        let mut members = vec![0usize];
        for &g in gens {
            extend_span(group, &mut inside, &mut members, g);
        }
        members.sort_unstable();
        Self {
            parent: group.clone(),
            members,
        }
    }

    pub fn trivial(group: &AbelianGroup) -> Self {
        Self {
            parent: group.clone(),
            members: vec![0],
        }
    }

    pub fn whole(group: &AbelianGroup) -> Self {
        Self {
            parent: group.clone(),
            members: (0..group.order()).collect(),
        }
    }

    /// Validates an explicit member list: it must contain 0 and be closed.
    pub fn from_members(group: &AbelianGroup, members: &[usize]) -> Result<Self> {
        let mut members = members.to_vec();
        members.sort_unstable();
        members.dedup();
        for &m in &members {
            group.check_index(m)?;
        }
        if members.first() != Some(&0) {
            return Err(Error::NotClosed("identity missing".into()));
        }
        let span = Self::generated_by_indices(group, &members);
        if span.members != members {
            let extra = span
                .members
                .iter()
                .find(|m| members.binary_search(m).is_err())
                .copied()
                .unwrap_or(0);
            return Err(Error::NotClosed(format!(
                "closure adds element {extra} not in the member list"
            )));
        }
        Ok(span)
    }

    pub fn parent(&self) -> &AbelianGroup {
        &self.parent
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    /// `|G| / |H|`.
    pub fn index(&self) -> usize {
        self.parent.order() / self.members.len()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.members.binary_search(&index).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.parent == other.parent && self.members.iter().all(|&m| other.contains(m))
    }

    /// A small generating set, chosen greedily in index order.
    pub fn generators(&self) -> Vec<usize> {
        let mut inside = vec![false; self.parent.order()];
        inside[0] = true;
        let mut span = vec![0usize];
        let mut gens = Vec::new();
        for &m in &self.members {
            if !inside[m] {
                gens.push(m);
                extend_span(&self.parent, &mut inside, &mut span, m);
            }
        }
        gens
    }
}

// Grows `members` (with indicator `inside`) to the span of itself and `g`.
fn extend_span(group: &AbelianGroup, inside: &mut [bool], members: &mut Vec<usize>, g: usize) {
    if inside[g] {
        return;
    }
    // <H, g> = union of H + j g for j below the order of g modulo H.
    let base = members.clone();
    let mut shift = g;
    while !inside[shift] {
        for &h in &base {
            let x = group.add_index(h, shift);
            inside[x] = true;
            members.push(x);
        }
        shift = group.add_index(shift, g);
    }
}

/// A partition of `G` into the cosets `k_i + H`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetDecomposition {
    /// Minimal element index of each coset, ascending.
    pub representatives: Vec<usize>,
    /// For each element of `G`: (coset number, position of `g - k_i` in `H`'s member list).
    pub membership: Vec<(usize, usize)>,
}

impl CosetDecomposition {
    pub fn new(group: &AbelianGroup, subgroup: &Subgroup) -> Result<Self> {
        if subgroup.parent() != group {
            return Err(Error::ForeignSubgroup);
        }
        let mut membership = vec![(usize::MAX, usize::MAX); group.order()];
        let mut representatives = Vec::with_capacity(subgroup.index());
        for g in 0..group.order() {
            if membership[g].0 != usize::MAX {
                continue;
            }
            let coset = representatives.len();
            representatives.push(g);
            for (j, &h) in subgroup.members().iter().enumerate() {
                membership[group.add_index(g, h)] = (coset, j);
            }
        }
        Ok(Self {
            representatives,
            membership,
        })
    }

    pub fn num_cosets(&self) -> usize {
        self.representatives.len()
    }

    pub fn coset_of(&self, g: usize) -> usize {
        self.membership[g].0
    }
}

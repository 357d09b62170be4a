//! Isomorphism invariants: per-element colours and whole-loop fingerprints.

use serde::{Deserialize, Serialize};

use crate::structure::{commutant_mask, inner_mapping_group, multiplication_group, nucleus_masks};
use crate::table::LoopTable;

#[inline]
pub(crate) fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

#[inline]
pub(crate) fn combine(a: u64, b: u64) -> u64 {
    mix(a.rotate_left(17) ^ b)
}

fn hash_sorted(mut v: Vec<u64>) -> u64 {
    v.sort_unstable();
    v.into_iter().fold(0x51_7cc1_b727_220a, combine)
}

fn distinct_count(colors: &[u64]) -> usize {
    let mut v = colors.to_vec();
    v.sort_unstable();
    v.dedup();
    v.len()
}

/// One refinement round: each element's colour absorbs the multiset of
/// `(colour(y), colour(xy), colour(yx))` over all `y`.
fn refine_once(l: &LoopTable, colors: &[u64]) -> Vec<u64> {
    let n = l.order();
    let mut sig = Vec::with_capacity(n);
    (0..n)
        .map(|x| {
            sig.clear();
            for y in 0..n {
                let t = combine(combine(colors[y], colors[l.mul(x, y)]), colors[l.mul(y, x)]);
                sig.push(t);
            }
            combine(colors[x], hash_sorted(sig.clone()))
        })
        .collect()
}

/// Refines until the number of colour classes stops growing.
pub(crate) fn refine(l: &LoopTable, mut colors: Vec<u64>) -> Vec<u64> {
    let mut classes = distinct_count(&colors);
    loop {
        let next = refine_once(l, &colors);
        let c = distinct_count(&next);
        colors = next;
        if c <= classes || c == l.order() {
            return colors;
        }
        classes = c;
    }
}

/// Starting colours from cheap local data: left-power cycle length, whether
/// the element squares to the identity, and its commutant size.
pub(crate) fn local_colors(l: &LoopTable) -> Vec<u64> {
    let n = l.order();
    let profile = l.left_power_profile();
    (0..n)
        .map(|x| {
            let commuting = (0..n).filter(|&y| l.mul(x, y) == l.mul(y, x)).count() as u64;
            let sq = l.mul(x, x);
            let idem = (sq == x) as u64;
            combine(combine(combine(profile[x] as u64, profile[sq] as u64), commuting), idem)
        })
        .collect()
}

/// Full starting colours: local data plus nucleus and commutant membership.
pub(crate) fn element_colors(l: &LoopTable) -> Vec<u64> {
    let [left, middle, right] = nucleus_masks(l);
    let comm = commutant_mask(l);
    let local = local_colors(l);
    let init: Vec<u64> = (0..l.order())
        .map(|x| {
            let bits = (left[x] as u64) | (middle[x] as u64) << 1 | (right[x] as u64) << 2 | (comm[x] as u64) << 3;
            combine(local[x], bits)
        })
        .collect();
    refine(l, init)
}

/// A cheap isomorphism invariant, O(n² log n). Used to screen principal
/// isotopes in bulk.
pub(crate) fn quick_invariant(l: &LoopTable) -> u64 {
    let colors = refine_once(l, &local_colors(l));
    combine(l.order() as u64, hash_sorted(colors))
}

/// Invariants that isomorphic loops share.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct InvariantFingerprint {
    pub order: usize,
    /// `(order, count)` pairs, sorted by order; order `0` marks elements whose
    /// left powers never reach the identity.
    pub element_orders: Vec<(usize, usize)>,
    pub left_nucleus: usize,
    pub middle_nucleus: usize,
    pub right_nucleus: usize,
    pub center: usize,
    /// Number of distinct squares `x·x`.
    pub squares: usize,
    pub inn: Option<u64>,
    pub mlt: Option<u64>,
    pub aut: Option<u64>,
    /// Hash of the refined element colour multiset.
    pub refinement: u64,
}

impl InvariantFingerprint {
    /// Copy with the group-order fields blanked, for comparisons between a
    /// full and a basic fingerprint.
    pub fn basic(&self) -> InvariantFingerprint {
        InvariantFingerprint { inn: None, mlt: None, aut: None, ..self.clone() }
    }
}

fn basic_fingerprint_with(l: &LoopTable, colors: &[u64]) -> InvariantFingerprint {
    let n = l.order();
    let profile = l.left_power_profile();
    let mut hist = std::collections::BTreeMap::new();
    for &o in &profile {
        *hist.entry(o).or_insert(0usize) += 1;
    }
    let [left, middle, right] = nucleus_masks(l);
    let comm = commutant_mask(l);
    let count = |m: &[bool]| m.iter().filter(|&&b| b).count();
    let center = (0..n).filter(|&x| left[x] && middle[x] && right[x] && comm[x]).count();
    let mut squares: Vec<usize> = (0..n).map(|x| l.mul(x, x)).collect();
    squares.sort_unstable();
    squares.dedup();
    InvariantFingerprint {
        order: n,
        element_orders: hist.into_iter().collect(),
        left_nucleus: count(&left),
        middle_nucleus: count(&middle),
        right_nucleus: count(&right),
        center,
        squares: squares.len(),
        inn: None,
        mlt: None,
        aut: None,
        refinement: hash_sorted(colors.to_vec()),
    }
}

/// Fingerprint without group orders.
pub fn basic_fingerprint(l: &LoopTable) -> InvariantFingerprint {
    basic_fingerprint_with(l, &element_colors(l))
}

pub(crate) fn basic_fingerprint_from_colors(l: &LoopTable, colors: &[u64]) -> InvariantFingerprint {
    basic_fingerprint_with(l, colors)
}

/// Fingerprint including `|Inn|` and `|Mlt|`; `|Aut|` is left empty.
pub fn fingerprint(l: &LoopTable) -> InvariantFingerprint {
    let mut fp = basic_fingerprint(l);
    fp.inn = Some(inner_mapping_group(l).order() as u64);
    fp.mlt = Some(multiplication_group(l).order() as u64);
    fp
}

/// Fingerprint including `|Aut|`.
pub fn fingerprint_with_aut(l: &LoopTable) -> InvariantFingerprint {
    let mut fp = fingerprint(l);
    fp.aut = Some(crate::structure::automorphism_group(l).order() as u64);
    fp
}

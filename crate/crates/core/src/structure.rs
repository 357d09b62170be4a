//! Inner mappings, nuclei, subloops, quotients and the Bruck associate.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{Permutation, PermutationGroup};
use crate::table::{Element, LoopTable};

/// Which standard inner mapping to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InnerKind {
    /// `L_{x,y} = L_{yx}^{-1} L_y L_x`, i.e. `u ↦ yx \ y(xu)`.
    Lxy,
    /// `R_{x,y} = R_{xy}^{-1} R_y R_x`, i.e. `u ↦ (ux)y / xy`.
    Rxy,
    /// `T_x = L_x^{-1} R_x`, i.e. `u ↦ x \ ux`.
    Tx,
}

/// Which nucleus (or the center) to compute.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NucleusKind {
    Left,
    Middle,
    Right,
    Center,
}

/// A subset of a loop closed under multiplication and containing `0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubloopHandle {
    members: Vec<Element>,
}

impl SubloopHandle {
    /// Wraps a member list after checking closure in `parent`.
    pub fn new(parent: &LoopTable, members: &[Element]) -> Result<Self> {
        let n = parent.order();
        let mut m: Vec<Element> = members.to_vec();
        if m.iter().any(|&x| x >= n) {
            return Err(Error::NotSubloop);
        }
        m.push(0);
        m.sort_unstable();
        m.dedup();
        let mut inside = vec![false; n];
        for &x in &m {
            inside[x] = true;
        }
        if m.iter().all(|&a| m.iter().all(|&b| inside[parent.mul(a, b)])) {
            Ok(SubloopHandle { members: m })
        } else {
            Err(Error::NotSubloop)
        }
    }

    pub fn members(&self) -> &[Element] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: Element) -> bool {
        self.members.binary_search(&x).is_ok()
    }
}

/// Builds one of the standard generators of the inner mapping group.
pub fn inner_generator(l: &LoopTable, kind: InnerKind, x: Element, y: Element) -> Result<Permutation> {
    l.multiply(x, y)?;
    let n = l.order();
    let images: Vec<u16> = match kind {
        InnerKind::Lxy => {
            let yx = l.mul(y, x);
            (0..n).map(|u| l.ldiv(yx, l.mul(y, l.mul(x, u))) as u16).collect()
        }
        InnerKind::Rxy => {
            let xy = l.mul(x, y);
            (0..n).map(|u| l.rdiv(l.mul(l.mul(u, x), y), xy) as u16).collect()
        }
        InnerKind::Tx => (0..n).map(|u| l.ldiv(x, l.mul(u, x)) as u16).collect(),
    };
    Ok(Permutation::from_u16_unchecked(images))
}

fn distinct(perms: impl Iterator<Item = Permutation>) -> Vec<Permutation> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for p in perms {
        if !p.is_identity() && seen.insert(p.clone()) {
            out.push(p);
        }
    }
    out
}

/// The distinct non-identity generators `L_{x,y}`, `R_{x,y}`, `T_x`.
pub fn inner_generators(l: &LoopTable) -> Vec<Permutation> {
    let n = l.order();
    let pairs = (0..n).flat_map(|x| (0..n).map(move |y| (x, y)));
    let lxy = pairs.clone().map(|(x, y)| inner_generator(l, InnerKind::Lxy, x, y).expect("valid"));
    let rxy = pairs.map(|(x, y)| inner_generator(l, InnerKind::Rxy, x, y).expect("valid"));
    let tx = (0..n).map(|x| inner_generator(l, InnerKind::Tx, x, 0).expect("valid"));
    distinct(lxy.chain(rxy).chain(tx))
}

/// The distinct non-identity left inner mappings `L_{x,y}`.
pub fn left_inner_mappings(l: &LoopTable) -> Vec<Permutation> {
    let n = l.order();
    distinct((0..n).flat_map(|x| (0..n).map(move |y| inner_generator(l, InnerKind::Lxy, x, y).expect("valid"))))
}

/// Does `p` preserve the multiplication of `l`?
pub fn is_automorphism(l: &LoopTable, p: &Permutation) -> Result<bool> {
    let n = l.order();
    if p.degree() != n {
        return Err(Error::DegreeMismatch { expected: n, got: p.degree() });
    }
    Ok((0..n).all(|x| {
        let px = p.apply(x);
        (0..n).all(|y| p.apply(l.mul(x, y)) == l.mul(px, p.apply(y)))
    }))
}

/// Checks `xy\x(yu) · xy\x(yv) = xy\x(y·uv)` over all `x, y, u, v`.
///
/// The maps `u ↦ xy\x(yu)` are deduplicated first, so each distinct map is
/// tested once.
pub fn check_a_identity(l: &LoopTable) -> Result<bool> {
    if !l.is_commutative() {
        return Err(Error::NotCommutative);
    }
    Ok(left_inner_mappings(l).iter().all(|p| is_automorphism(l, p).expect("degree")))
}

/// Every inner mapping is an automorphism.
pub fn is_a_loop(l: &LoopTable) -> bool {
    inner_generators(l).iter().all(|p| is_automorphism(l, p).expect("degree"))
}

/// The inner mapping group `Inn(L)`.
pub fn inner_mapping_group(l: &LoopTable) -> PermutationGroup {
    PermutationGroup::generate(l.order(), &inner_generators(l)).expect("degree")
}

/// The multiplication group `Mlt(L) = ⟨L_x, R_x⟩`.
pub fn multiplication_group(l: &LoopTable) -> PermutationGroup {
    let n = l.order();
    let mut gens = Vec::new();
    for x in 1..n {
        gens.push(Permutation::from_u16_unchecked((0..n).map(|u| l.mul(x, u) as u16).collect()));
        gens.push(Permutation::from_u16_unchecked((0..n).map(|u| l.mul(u, x) as u16).collect()));
    }
    PermutationGroup::generate(n, &distinct(gens.into_iter())).expect("degree")
}

/// The group generated by `gens`.
pub fn generated_group(gens: &[Permutation]) -> Result<PermutationGroup> {
    PermutationGroup::generated_group(gens)
}

/// The full automorphism group, found by backtracking over generator images.
pub fn automorphism_group(l: &LoopTable) -> PermutationGroup {
    let autos = crate::iso::automorphisms(l);
    PermutationGroup::from_elements(l.order(), &autos).expect("degree")
}

/// Membership masks for the left, middle and right nuclei.
pub(crate) fn nucleus_masks(l: &LoopTable) -> [Vec<bool>; 3] {
    let n = l.order();
    let mut left = vec![true; n];
    let mut middle = vec![true; n];
    let mut right = vec![true; n];
    for a in 0..n {
        for b in 0..n {
            let ab = l.mul(a, b);
            for c in 0..n {
                if l.mul(ab, c) != l.mul(a, l.mul(b, c)) {
                    left[a] = false;
                    middle[b] = false;
                    right[c] = false;
                }
            }
        }
    }
    [left, middle, right]
}

pub(crate) fn commutant_mask(l: &LoopTable) -> Vec<bool> {
    let n = l.order();
    (0..n).map(|x| (0..n).all(|y| l.mul(x, y) == l.mul(y, x))).collect()
}

/// Nuclei and center by exhaustive check.
pub fn nucleus(l: &LoopTable, kind: NucleusKind) -> SubloopHandle {
    let [left, middle, right] = nucleus_masks(l);
    let members: Vec<Element> = match kind {
        NucleusKind::Left => (0..l.order()).filter(|&x| left[x]).collect(),
        NucleusKind::Middle => (0..l.order()).filter(|&x| middle[x]).collect(),
        NucleusKind::Right => (0..l.order()).filter(|&x| right[x]).collect(),
        NucleusKind::Center => {
            let comm = commutant_mask(l);
            (0..l.order()).filter(|&x| left[x] && middle[x] && right[x] && comm[x]).collect()
        }
    };
    SubloopHandle { members }
}

/// Sizes of the left, middle, right nuclei and the center.
pub fn nucleus_sizes(l: &LoopTable) -> [usize; 4] {
    let [left, middle, right] = nucleus_masks(l);
    let comm = commutant_mask(l);
    let count = |m: &[bool]| m.iter().filter(|&&b| b).count();
    let center = (0..l.order()).filter(|&x| left[x] && middle[x] && right[x] && comm[x]).count();
    [count(&left), count(&middle), count(&right), center]
}

/// Multiplicative closure of `seed ∪ {0}`.
pub fn subloop_generated(l: &LoopTable, seed: &[Element]) -> Result<SubloopHandle> {
    let n = l.order();
    let mut inside = vec![false; n];
    let mut members = vec![0usize];
    inside[0] = true;
    for &s in seed {
        if s >= n {
            return Err(Error::InvalidElement { element: s, order: n });
        }
        if !inside[s] {
            inside[s] = true;
            members.push(s);
        }
    }
    let mut i = 0;
    while i < members.len() {
        let a = members[i];
        let mut j = 0;
        while j <= i {
            let b = members[j];
            for c in [l.mul(a, b), l.mul(b, a)] {
                if !inside[c] {
                    inside[c] = true;
                    members.push(c);
                }
            }
            j += 1;
        }
        i += 1;
    }
    members.sort_unstable();
    Ok(SubloopHandle { members })
}

/// Invariance under all inner mappings.
pub fn is_normal(l: &LoopTable, s: &SubloopHandle) -> Result<bool> {
    let s = SubloopHandle::new(l, s.members())?;
    let mut inside = vec![false; l.order()];
    for &x in s.members() {
        inside[x] = true;
    }
    Ok(inner_generators(l).iter().all(|p| s.members().iter().all(|&x| inside[p.apply(x)])))
}

/// The quotient loop `L/S`; cosets are labelled by their smallest member.
pub fn quotient(l: &LoopTable, s: &SubloopHandle) -> Result<LoopTable> {
    if !is_normal(l, s)? {
        return Err(Error::NotNormal);
    }
    let n = l.order();
    let mut coset_of = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for x in 0..n {
        if coset_of[x] != usize::MAX {
            continue;
        }
        let idx = reps.len();
        reps.push(x);
        for &m in s.members() {
            coset_of[l.mul(x, m)] = idx;
        }
    }
    LoopTable::from_fn(reps.len(), |a, b| coset_of[l.mul(reps[a], reps[b])])
}

/// The Bruck associate `x∘y = (x⁻¹ \ x·y²)^{1/2}` of an odd-order
/// commutative A-loop; the result is checked to be a left Bol loop.
pub fn bruck_associate(l: &LoopTable) -> Result<LoopTable> {
    if !l.is_commutative() {
        return Err(Error::NotCommutative);
    }
    let n = l.order();
    let mut sqrt = vec![usize::MAX; n];
    for x in 0..n {
        let sq = l.mul(x, x);
        if sqrt[sq] != usize::MAX {
            return Err(Error::SquaringNotBijective);
        }
        sqrt[sq] = x;
    }
    if !is_a_loop(l) {
        return Err(Error::NotALoop);
    }
    let inv: Vec<usize> = (0..n).map(|x| l.ldiv(x, 0)).collect();
    let b = LoopTable::from_fn(n, |x, y| {
        let y2 = l.mul(y, y);
        sqrt[l.ldiv(inv[x], l.mul(x, y2))]
    })?;
    if !is_left_bol(&b) {
        return Err(Error::NotBol);
    }
    Ok(b)
}

/// `x(y(xz)) = (x(yx))z` for all `x, y, z`.
pub fn is_left_bol(l: &LoopTable) -> bool {
    let n = l.order();
    (0..n).all(|x| {
        (0..n).all(|y| {
            let xyx = l.mul(x, l.mul(y, x));
            (0..n).all(|z| l.mul(x, l.mul(y, l.mul(x, z))) == l.mul(xyx, z))
        })
    })
}

/// Summary of the structure of a loop.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Analysis {
    pub order: usize,
    pub commutative: bool,
    pub associative: bool,
    pub a_loop: bool,
    pub left_nucleus: usize,
    pub middle_nucleus: usize,
    pub right_nucleus: usize,
    pub center: usize,
    /// `None` unless the loop is power-associative.
    pub exponent: Option<usize>,
    pub inn_order: u128,
    pub mlt_order: u128,
    /// `(order, count)` pairs; empty unless power-associative.
    pub element_orders: Vec<(usize, usize)>,
}

pub fn analyze(l: &LoopTable) -> Analysis {
    let [left_nucleus, middle_nucleus, right_nucleus, center] = nucleus_sizes(l);
    let mut hist = std::collections::BTreeMap::new();
    if let Ok(orders) = l.element_orders() {
        for o in orders {
            *hist.entry(o).or_insert(0usize) += 1;
        }
    }
    Analysis {
        order: l.order(),
        commutative: l.is_commutative(),
        associative: l.is_associative(),
        a_loop: is_a_loop(l),
        left_nucleus,
        middle_nucleus,
        right_nucleus,
        center,
        exponent: l.exponent().ok(),
        inn_order: inner_mapping_group(l).order(),
        mlt_order: multiplication_group(l).order(),
        element_orders: hist.into_iter().collect(),
    }
}

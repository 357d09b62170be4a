//! Isomorphism and isotopism testing.

mod gf;
mod invariants;
mod search;
mod terg;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::perm::Permutation;
use crate::table::LoopTable;

pub use gf::{gf_isomorphic, gf_isotopy_witness};
pub use invariants::{basic_fingerprint, fingerprint, fingerprint_with_aut, InvariantFingerprint};
pub use terg::{terg_iso_map, terg_scaling_isos, ScalingIso};

pub(crate) use invariants::{basic_fingerprint_from_colors, element_colors, quick_invariant};

/// Checks that `p` carries the product of `a` onto the product of `b`.
pub fn is_isomorphism(a: &LoopTable, b: &LoopTable, p: &Permutation) -> bool {
    let n = a.order();
    n == b.order()
        && p.degree() == n
        && (0..n).all(|x| (0..n).all(|y| p.apply(a.mul(x, y)) == b.mul(p.apply(x), p.apply(y))))
}

/// An isomorphism `a → b`, or `None` when none exists.
pub fn find_isomorphism(a: &LoopTable, b: &LoopTable) -> Option<Permutation> {
    if a.order() != b.order() {
        return None;
    }
    let ca = element_colors(a);
    let cb = element_colors(b);
    find_isomorphism_colored(a, b, &ca, &cb)
}

pub(crate) fn find_isomorphism_colored(a: &LoopTable, b: &LoopTable, ca: &[u64], cb: &[u64]) -> Option<Permutation> {
    let p = search::find_with_colors(a, b, ca, cb)?;
    assert!(is_isomorphism(a, b, &p), "search produced a non-isomorphism");
    Some(p)
}

pub fn are_isomorphic(a: &LoopTable, b: &LoopTable) -> bool {
    find_isomorphism(a, b).is_some()
}

/// A generating set of `Aut(l)`.
pub fn automorphisms(l: &LoopTable) -> Vec<Permutation> {
    let colors = element_colors(l);
    search::automorphism_generators_with(l, &colors)
}

/// A loop prepared for repeated isomorphism tests.
#[derive(Debug, Clone)]
pub struct Profiled {
    pub table: LoopTable,
    pub colors: Vec<u64>,
    pub fingerprint: InvariantFingerprint,
}

impl Profiled {
    pub fn new(table: LoopTable) -> Self {
        let colors = element_colors(&table);
        let fingerprint = basic_fingerprint_from_colors(&table, &colors);
        Profiled { table, colors, fingerprint }
    }

    pub fn isomorphic_to(&self, other: &Profiled) -> bool {
        self.fingerprint == other.fingerprint
            && find_isomorphism_colored(&self.table, &other.table, &self.colors, &other.colors).is_some()
    }
}

/// Keeps one loop per isomorphism class, preserving first occurrences in
/// input order.
pub fn dedupe_isomorphic(loops: Vec<LoopTable>) -> Vec<LoopTable> {
    let profiled: Vec<Profiled> = loops.into_par_iter().map(Profiled::new).collect();
    let mut kept: Vec<Profiled> = Vec::new();
    for p in profiled {
        if !kept.iter().any(|k| k.isomorphic_to(&p)) {
            kept.push(p);
        }
    }
    kept.into_iter().map(|p| p.table).collect()
}

/// A triple of bijections with `gamma(x·y) = alpha(x) ∘ beta(y)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsotopismTriple {
    pub alpha: Vec<usize>,
    pub beta: Vec<usize>,
    pub gamma: Vec<usize>,
}

impl IsotopismTriple {
    pub fn from_perms(alpha: &Permutation, beta: &Permutation, gamma: &Permutation) -> Self {
        IsotopismTriple { alpha: alpha.images(), beta: beta.images(), gamma: gamma.images() }
    }

    /// Exhaustively checks the triple as an isotopism `a → b`.
    pub fn certify(&self, a: &LoopTable, b: &LoopTable) -> bool {
        let n = a.order();
        let bij = |v: &[usize]| Permutation::new(v.to_vec()).is_ok() && v.len() == n;
        n == b.order()
            && bij(&self.alpha)
            && bij(&self.beta)
            && bij(&self.gamma)
            && (0..n).all(|x| (0..n).all(|y| self.gamma[a.mul(x, y)] == b.mul(self.alpha[x], self.beta[y])))
    }
}

/// The principal isotope `x∘y = (x/b)·(a\y)`, relabelled so its neutral
/// element `ab` becomes `0`. Also returns the relabelling, an involution.
pub fn principal_isotope(l: &LoopTable, a: usize, b: usize) -> (LoopTable, Permutation) {
    let n = l.order();
    let e = l.mul(a, b);
    let mut swap: Vec<u16> = (0..n as u16).collect();
    swap.swap(0, e);
    let rb: Vec<usize> = (0..n).map(|x| l.rdiv(x, b)).collect();
    let la: Vec<usize> = (0..n).map(|y| l.ldiv(a, y)).collect();
    let cells: Vec<u16> = (0..n * n)
        .map(|i| {
            let (x, y) = (swap[i / n] as usize, swap[i % n] as usize);
            swap[l.mul(rb[x], la[y])]
        })
        .collect();
    let t = LoopTable::from_cells(n, cells).expect("principal isotopes are loops");
    (t, Permutation::from_u16_unchecked(swap))
}

fn isotope_invariants(l: &LoopTable) -> Vec<u64> {
    let n = l.order();
    let mut v: Vec<u64> = (0..n * n)
        .into_par_iter()
        .map(|i| quick_invariant(&principal_isotope(l, i / n, i % n).0))
        .collect();
    v.sort_unstable();
    v.dedup();
    v
}

/// An isotopism `a → b`, found by matching `b` against the principal
/// isotopes of `a`.
pub fn find_isotopism(a: &LoopTable, b: &LoopTable) -> Option<IsotopismTriple> {
    let n = a.order();
    if n != b.order() {
        return None;
    }
    let target = quick_invariant(b);
    let cb = element_colors(b);
    for i in 0..n * n {
        let (x, y) = (i / n, i % n);
        let (iso, swap) = principal_isotope(a, x, y);
        if quick_invariant(&iso) != target {
            continue;
        }
        let ci = element_colors(&iso);
        if let Some(phi) = search::find_with_colors(&iso, b, &ci, &cb) {
            // u·v = R_y(u) ∘ L_x(v) in the unrelabelled isotope
            let outer = swap.then(&phi);
            let ry = Permutation::from_u16_unchecked((0..n).map(|u| a.mul(u, y) as u16).collect());
            let lx = Permutation::from_u16_unchecked((0..n).map(|v| a.mul(x, v) as u16).collect());
            let triple = IsotopismTriple::from_perms(&ry.then(&outer), &lx.then(&outer), &outer);
            assert!(triple.certify(a, b), "isotopism failed certification");
            return Some(triple);
        }
    }
    None
}

pub fn are_isotopic(a: &LoopTable, b: &LoopTable) -> bool {
    find_isotopism(a, b).is_some()
}

/// Labels each loop with the index of the first loop isotopic to it.
///
/// Loops are bucketed by the set of cheap invariants over all their
/// principal isotopes, which is an isotopy invariant, before any search.
pub fn isotopy_classes(loops: &[LoopTable]) -> Vec<usize> {
    let sets: Vec<Vec<u64>> = loops.iter().map(isotope_invariants).collect();
    let mut labels: Vec<usize> = (0..loops.len()).collect();
    for j in 0..loops.len() {
        for i in 0..j {
            if labels[i] == i && sets[i] == sets[j] && are_isotopic(&loops[i], &loops[j]) {
                labels[j] = i;
                break;
            }
        }
    }
    labels
}

/// Number of isotopy classes among `loops`.
pub fn count_isotopy_classes(loops: &[LoopTable]) -> usize {
    isotopy_classes(loops).iter().enumerate().filter(|(i, &l)| *i == l).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> LoopTable {
        let perms: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let idx = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        let rows: Vec<Vec<usize>> = perms
            .iter()
            .map(|a| perms.iter().map(|b| idx([b[a[0]], b[a[1]], b[a[2]]])).collect())
            .collect();
        LoopTable::from_rows(&rows).unwrap()
    }

    #[test]
    fn identity_isomorphism() {
        let l = LoopTable::abelian(&[2, 4]);
        let p = find_isomorphism(&l, &l).unwrap();
        assert!(is_isomorphism(&l, &l, &p));
    }

    #[test]
    fn relabelled_copy_is_found() {
        let l = LoopTable::abelian(&[2, 4]);
        let sigma = [0usize, 5, 3, 7, 1, 2, 6, 4];
        let mut inv = [0usize; 8];
        for (i, &s) in sigma.iter().enumerate() {
            inv[s] = i;
        }
        let m = LoopTable::from_fn(8, |x, y| sigma[l.mul(inv[x], inv[y])]).unwrap();
        let p = find_isomorphism(&l, &m).unwrap();
        assert!(is_isomorphism(&l, &m, &p));
        assert!(find_isomorphism(&l, &LoopTable::cyclic(8)).is_none());
    }

    #[test]
    fn automorphism_group_orders() {
        let order = |l: &LoopTable| crate::structure::automorphism_group(l).order();
        assert_eq!(order(&LoopTable::elementary_abelian(2, 2)), 6);
        assert_eq!(order(&LoopTable::cyclic(4)), 2);
        assert_eq!(order(&LoopTable::elementary_abelian(2, 3)), 168);
        assert_eq!(order(&LoopTable::elementary_abelian(2, 4)), 20160);
        assert_eq!(order(&LoopTable::elementary_abelian(3, 2)), 48);
        assert_eq!(order(&s3()), 6);
    }

    #[test]
    fn principal_isotopes_of_groups_are_isomorphic() {
        let l = s3();
        for a in 0..6 {
            for b in 0..6 {
                let (t, _) = principal_isotope(&l, a, b);
                assert!(are_isomorphic(&l, &t));
            }
        }
    }

    #[test]
    fn isotopism_is_certified() {
        let l = LoopTable::cyclic(6);
        let t = find_isotopism(&l, &l).unwrap();
        assert!(t.certify(&l, &l));
        assert!(find_isotopism(&l, &s3()).is_none());
    }
}

//! Doubling an abelian group along a bijection.

use std::collections::HashSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::iso::dedupe_isomorphic;
use crate::perm::Permutation;
use crate::structure::{automorphism_group, is_automorphism};
use crate::table::LoopTable;

/// An abelian group `G` with a bijection `f`; the loop lives on two copies
/// of `G`, and the second copy multiplies through `f`.
#[derive(Debug, Clone)]
pub struct GfSpec {
    group: LoopTable,
    f: Permutation,
    decomposition: Option<(Permutation, usize)>,
}

impl GfSpec {
    pub fn new(group: LoopTable, f: Permutation) -> Result<Self> {
        if !group.is_abelian_group() {
            return Err(Error::NotAbelianGroup);
        }
        if f.degree() != group.order() {
            return Err(Error::NotBijection);
        }
        Ok(GfSpec { group, f, decomposition: None })
    }

    /// `f(x) = g(x)·t` for an automorphism `g`.
    pub fn from_automorphism(group: LoopTable, g: Permutation, t: usize) -> Result<Self> {
        if !group.is_abelian_group() {
            return Err(Error::NotAbelianGroup);
        }
        if t >= group.order() {
            return Err(Error::InvalidElement { element: t, order: group.order() });
        }
        if !is_automorphism(&group, &g)? {
            return Err(Error::NotAutomorphism);
        }
        let f = Permutation::new((0..group.order()).map(|x| group.mul(g.apply(x), t)).collect())?;
        Ok(GfSpec { group, f, decomposition: Some((g, t)) })
    }

    pub fn group(&self) -> &LoopTable {
        &self.group
    }

    pub fn f(&self) -> &Permutation {
        &self.f
    }

    pub fn decomposition(&self) -> Option<&(Permutation, usize)> {
        self.decomposition.as_ref()
    }
}

/// Elements `0..m` form `G`, elements `m..2m` its copy; `x̄ȳ = f(xy)`.
pub fn build_gf(spec: &GfSpec) -> Result<LoopTable> {
    let g = &spec.group;
    let m = g.order();
    LoopTable::from_fn(2 * m, |x, y| match (x < m, y < m) {
        (true, true) => g.mul(x, y),
        (true, false) => m + g.mul(x, y - m),
        (false, true) => m + g.mul(x - m, y),
        (false, false) => spec.f.apply(g.mul(x - m, y - m)),
    })
}

/// Outcome of the three conditions on `f`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GfConditions {
    pub p1: bool,
    pub p2: bool,
    pub p3: bool,
    /// `(g, t)` with `g(x) = f(x)f(1)⁻¹`, `t = f(1)`, present when the first
    /// two conditions hold together with `f²(1) = f(1)²`.
    pub decomposition: Option<(Vec<usize>, usize)>,
}

impl GfConditions {
    pub fn all(&self) -> bool {
        self.p1 && self.p2 && self.p3
    }
}

/// Evaluates the A-loop conditions on `f` exhaustively.
pub fn gf_conditions(spec: &GfSpec) -> GfConditions {
    let g = &spec.group;
    let f = |x: usize| spec.f.apply(x);
    let n = g.order();
    let inv: Vec<usize> = (0..n).map(|x| g.ldiv(x, 0)).collect();
    let f1 = f(0);
    let p1 = (0..n).all(|x| (0..n).all(|y| f(g.mul(x, y)) == g.mul(g.mul(f(x), f(y)), inv[f1])));
    let p2 = (0..n).all(|x| {
        let sq = g.mul(x, x);
        f(sq) == g.mul(sq, f1)
    });
    let p3 = (0..n).all(|x| {
        let ffx = f(f(x));
        let lhs = g.mul(g.mul(ffx, ffx), inv[g.mul(f(x), f(x))]);
        lhs == f(f(0))
    });
    let decomposition = if p1 && p2 && f(f1) == g.mul(f1, f1) {
        let gmap: Vec<usize> = (0..n).map(|x| g.mul(f(x), inv[f1])).collect();
        let gp = Permutation::new(gmap.clone()).expect("translate of a bijection");
        assert!(is_automorphism(g, &gp).expect("degree"), "g must be an automorphism");
        assert!((0..n).all(|x| {
            let sq = g.mul(x, x);
            gmap[sq] == sq
        }));
        assert_eq!(gmap[f1], f1, "t must be fixed by g");
        Some((gmap, f1))
    } else {
        None
    };
    GfConditions { p1, p2, p3, decomposition }
}

/// One loop from the doubling family with its parameters.
#[derive(Debug, Clone)]
pub struct GfLoop {
    pub g: Permutation,
    pub t: usize,
    pub table: LoopTable,
}

/// All elements of `Aut(G)`, in breadth-first order from the identity.
pub fn group_automorphisms(g: &LoopTable) -> Vec<Permutation> {
    automorphism_group(g).elements()
}

/// The nonassociative commutative A-loops `G(f)` with `f = g·t`, up to
/// isomorphism.
///
/// Pairs `(g, t)` are first reduced modulo simultaneous conjugation by
/// `Aut(G)`, which preserves the isomorphism type; survivors are then
/// deduplicated by isomorphism search.
pub fn enumerate_gf_aloops(group: &LoopTable) -> Result<Vec<GfLoop>> {
    if !group.is_abelian_group() {
        return Err(Error::NotAbelianGroup);
    }
    let n = group.order();
    let auts = group_automorphisms(group);
    let gens: Vec<Permutation> = automorphism_group(group).generators().to_vec();
    let admissible: Vec<&Permutation> = auts
        .iter()
        .filter(|a| !a.is_identity())
        .filter(|a| (0..n).all(|x| {
            let sq = group.mul(x, x);
            a.apply(sq) == sq
        }))
        .collect();
    let mut seen: HashSet<(Permutation, usize)> = HashSet::new();
    let mut reps: Vec<(Permutation, usize)> = Vec::new();
    let mut ordered: Vec<(Permutation, usize)> = Vec::new();
    for a in &admissible {
        for t in a.fixed_points() {
            ordered.push(((*a).clone(), t));
        }
    }
    ordered.sort();
    for (a, t) in ordered {
        if seen.contains(&(a.clone(), t)) {
            continue;
        }
        reps.push((a.clone(), t));
        // conjugation orbit: ψ⁻¹ g ψ with t ↦ ψ⁻¹(t)
        let mut stack = vec![(a, t)];
        while let Some((h, s)) = stack.pop() {
            if !seen.insert((h.clone(), s)) {
                continue;
            }
            for psi in &gens {
                let pinv = psi.inverse();
                let conj = psi.then(&h).then(&pinv);
                let item = (conj, pinv.apply(s));
                if !seen.contains(&item) {
                    stack.push(item);
                }
            }
        }
    }
    let built: Vec<GfLoop> = reps
        .into_iter()
        .map(|(g, t)| {
            let spec = GfSpec::from_automorphism(group.clone(), g.clone(), t)?;
            Ok(GfLoop { g, t, table: build_gf(&spec)? })
        })
        .collect::<Result<Vec<_>>>()?;
    let built: Vec<GfLoop> = built.into_iter().filter(|l| !l.table.is_associative()).collect();
    let tables = dedupe_isomorphic(built.iter().map(|l| l.table.clone()).collect());
    let mut out = Vec::new();
    let mut used = vec![false; built.len()];
    for t in tables {
        let i = (0..built.len()).find(|&i| !used[i] && built[i].table == t).expect("kept table");
        used[i] = true;
        out.push(built[i].clone());
    }
    Ok(out)
}

/// The loop built on `GF(2)ⁿ` from the shift `e_i ↦ e_{i+1}`,
/// `e_n ↦ e_1 + e_n`. Vectors are bit strings with `e_1` most significant.
pub fn build_qn(n: usize) -> Result<LoopTable> {
    if n < 2 {
        return Err(Error::InvalidParameters(format!("dimension {n} must be at least 2")));
    }
    let group = LoopTable::elementary_abelian(2, n);
    let basis = |i: usize| 1usize << (n - 1 - i);
    let image_of_basis: Vec<usize> = (0..n).map(|i| if i + 1 < n { basis(i + 1) } else { basis(0) | basis(n - 1) }).collect();
    let g: Vec<usize> = (0..1usize << n)
        .map(|v| (0..n).filter(|&i| v & basis(i) != 0).fold(0, |acc, i| acc ^ image_of_basis[i]))
        .collect();
    let spec = GfSpec::from_automorphism(group, Permutation::new(g)?, 0)?;
    build_gf(&spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::{is_a_loop, nucleus_sizes};

    fn klein_swap() -> (LoopTable, Permutation) {
        // a = 2, b = 1, ab = 3
        (LoopTable::elementary_abelian(2, 2), Permutation::new(vec![0, 2, 1, 3]).unwrap())
    }

    #[test]
    fn translation_gives_a_group() {
        let g = LoopTable::cyclic(4);
        let f = Permutation::new((0..4).map(|x| (x + 1) % 4).collect()).unwrap();
        let q = build_gf(&GfSpec::new(g, f).unwrap()).unwrap();
        assert!(q.is_associative());
    }

    #[test]
    fn klein_swap_has_exponent_two() {
        let (g, s) = klein_swap();
        let q = build_gf(&GfSpec::from_automorphism(g, s, 0).unwrap()).unwrap();
        assert!(q.is_commutative() && is_a_loop(&q) && !q.is_associative());
        assert_eq!(q.exponent().unwrap(), 2);
        assert_eq!(nucleus_sizes(&q)[1], 4);
    }

    #[test]
    fn conditions_on_z8_tripling() {
        let g = LoopTable::cyclic(8);
        let f = Permutation::new((0..8).map(|x| 3 * x % 8).collect()).unwrap();
        let c = gf_conditions(&GfSpec::new(g, f).unwrap());
        assert!(c.p1 && !c.p2 && c.decomposition.is_none());
        let id = gf_conditions(&GfSpec::new(LoopTable::cyclic(4), Permutation::identity(4)).unwrap());
        assert!(id.all());
    }

    #[test]
    fn order_eight_family() {
        assert_eq!(enumerate_gf_aloops(&LoopTable::cyclic(4)).unwrap().len(), 1);
        assert_eq!(enumerate_gf_aloops(&LoopTable::elementary_abelian(2, 2)).unwrap().len(), 3);
    }

    #[test]
    fn qn_properties() {
        for n in 2..5 {
            let q = build_qn(n).unwrap();
            assert_eq!(q.order(), 1 << (n + 1));
            assert_eq!(q.exponent().unwrap(), 2);
            let s = nucleus_sizes(&q);
            assert_eq!(s[3], 1);
            assert_eq!(s[1] * 2, q.order());
        }
        assert!(build_qn(1).is_err());
    }
}

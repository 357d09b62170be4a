//! Isomorphism and isotopism criteria for the doubling construction.

use crate::construct::{build_gf, group_automorphisms, GfSpec};
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::table::LoopTable;

use super::IsotopismTriple;

fn is_translation(g: &LoopTable, f: &Permutation) -> bool {
    let c = f.apply(0);
    (0..g.order()).all(|x| f.apply(x) == g.mul(x, c))
}

/// Decides `G(f1) ≅ G(f2)` through automorphisms of `G`: some `ψ` must make
/// `h = f2⁻¹ψf1` satisfy `h(x) = h(1)ψ(x)` with `h(1)` a square.
pub fn gf_isomorphic(group: &LoopTable, f1: &Permutation, f2: &Permutation) -> Result<bool> {
    GfSpec::new(group.clone(), f1.clone())?;
    GfSpec::new(group.clone(), f2.clone())?;
    if is_translation(group, f1) || is_translation(group, f2) {
        return Err(Error::IsGroup);
    }
    let n = group.order();
    let mut is_square = vec![false; n];
    for x in 0..n {
        is_square[group.mul(x, x)] = true;
    }
    let f2inv = f2.inverse();
    Ok(group_automorphisms(group).iter().any(|psi| {
        let h = |x: usize| f2inv.apply(psi.apply(f1.apply(x)));
        let h1 = h(0);
        is_square[h1] && (0..n).all(|x| h(x) == group.mul(h1, psi.apply(x)))
    }))
}

/// An isotopism `G(g·t1) → G(g·t2)` built from an element `z` with
/// `g(z) = z⁻¹t1⁻¹t2`: `α` fixes `G` and sends `x̄` to `(xz⁻¹)‾`; `β` and `γ`
/// multiply `G` by `z` and fix the second copy.
pub fn gf_isotopy_witness(group: &LoopTable, g: &Permutation, t1: usize, t2: usize) -> Result<IsotopismTriple> {
    let s1 = GfSpec::from_automorphism(group.clone(), g.clone(), t1)?;
    let s2 = GfSpec::from_automorphism(group.clone(), g.clone(), t2)?;
    let n = group.order();
    let inv = |x: usize| group.ldiv(x, 0);
    let target_of = |z: usize| group.mul(group.mul(inv(z), inv(t1)), t2);
    let z = (0..n).find(|&z| g.apply(z) == target_of(z)).ok_or(Error::NoWitness)?;
    let zi = inv(z);
    let alpha: Vec<usize> = (0..2 * n).map(|x| if x < n { x } else { n + group.mul(x - n, zi) }).collect();
    let beta: Vec<usize> = (0..2 * n).map(|x| if x < n { group.mul(z, x) } else { x }).collect();
    let triple = IsotopismTriple { alpha, gamma: beta.clone(), beta };
    let (q1, q2) = (build_gf(&s1)?, build_gf(&s2)?);
    if !triple.certify(&q1, &q2) {
        return Err(Error::Certification("isotopism triple".into()));
    }
    Ok(triple)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::find_isomorphism;

    fn perm(v: &[usize]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    // Klein group with a = 2, b = 1, ab = 3
    fn klein() -> LoopTable {
        LoopTable::elementary_abelian(2, 2)
    }

    fn shifted(g: &LoopTable, p: &Permutation, t: usize) -> Permutation {
        perm(&(0..g.order()).map(|x| g.mul(p.apply(x), t)).collect::<Vec<_>>())
    }

    #[test]
    fn klein_criterion() {
        let g = klein();
        let g1 = perm(&[0, 2, 1, 3]);
        let f1 = shifted(&g, &g1, 3);
        assert!(!gf_isomorphic(&g, &g1, &f1).unwrap());
        let g2 = perm(&[0, 1, 3, 2]);
        assert!(gf_isomorphic(&g, &g1, &g2).unwrap());
        let g4 = perm(&[0, 3, 1, 2]);
        assert!(!gf_isomorphic(&g, &g1, &g4).unwrap());
        assert!(matches!(gf_isomorphic(&g, &g1, &Permutation::identity(4)), Err(Error::IsGroup)));
    }

    #[test]
    fn criterion_agrees_with_search() {
        let g = klein();
        let auts = group_automorphisms(&g);
        let fs: Vec<Permutation> = auts
            .iter()
            .filter(|a| !a.is_identity())
            .flat_map(|a| a.fixed_points().into_iter().map(|t| shifted(&g, a, t)))
            .collect();
        for f1 in &fs {
            for f2 in &fs {
                let q1 = build_gf(&GfSpec::new(g.clone(), f1.clone()).unwrap()).unwrap();
                let q2 = build_gf(&GfSpec::new(g.clone(), f2.clone()).unwrap()).unwrap();
                assert_eq!(gf_isomorphic(&g, f1, f2).unwrap(), find_isomorphism(&q1, &q2).is_some());
            }
        }
    }

    #[test]
    fn isotopy_witnesses() {
        let g = klein();
        let g1 = perm(&[0, 2, 1, 3]);
        assert!(gf_isotopy_witness(&g, &g1, 0, 0).is_ok());
        assert!(gf_isotopy_witness(&g, &g1, 0, 3).is_ok());
        // Z4 × Z2 with g(i,j) = (i, i+j); (i,j) has index 2i + j
        let h = LoopTable::abelian(&[4, 2]);
        let gmap: Vec<usize> = (0..8).map(|x| 2 * (x / 2) + (x / 2 + x % 2) % 2).collect();
        let t = gf_isotopy_witness(&h, &perm(&gmap), 0, 5).unwrap();
        assert_eq!(t.beta[0], 2);
    }
}

//! Explicit isomorphisms between members of the `Z_p³` family.

use serde::Serialize;

use crate::construct::{build_terg, terg_power, TergParams};
use crate::error::{Error, Result};
use crate::perm::Permutation;

use super::is_isomorphism;

fn inverse_mod(x: usize, p: usize) -> Option<usize> {
    (1..p).find(|&y| x * y % p == 1)
}

fn is_prime(p: usize) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// The map `x ↦ (x1, x2, 0)·(A,B,C)^{x3}`, computed in the target loop.
/// Returns the map when it is an isomorphism `source → target`.
pub fn terg_iso_map(source: TergParams, target: TergParams, abc: [usize; 3]) -> Result<Option<Permutation>> {
    let n = source.n;
    if target.n != n {
        return Err(Error::InvalidParameters("moduli differ".into()));
    }
    if abc.iter().any(|&v| v >= n) {
        return Err(Error::OutOfRange(format!("{abc:?} not in Z_{n}")));
    }
    if abc[2] == 0 {
        return Err(Error::CNotInvertible);
    }
    let images: Vec<usize> = (0..n * n * n)
        .map(|i| {
            let x = source.decode(i);
            target.encode(target.mul([x[0], x[1], 0], terg_power(target, abc, x[2])))
        })
        .collect();
    let Ok(map) = Permutation::new(images) else {
        return Ok(None);
    };
    let (q1, q2) = (build_terg(source)?, build_terg(target)?);
    Ok(is_isomorphism(&q1, &q2, &map).then_some(map))
}

/// A certified isomorphism between two family members given by a scaling.
#[derive(Debug, Clone, Serialize)]
pub struct ScalingIso {
    pub source: TergParams,
    pub target: TergParams,
    pub map: Vec<usize>,
}

/// Scaling isomorphisms for modulus `p`:
/// `(x1,x2,x3) ↦ ((c/b)x1, (c/b)x2, x3)` between `(0,b)` and `(0,c)`, and
/// `(x1,x2,x3) ↦ (u²x1, x2, ux3)` between `(a1,0)` and `(a1u², 0)`.
/// Every map is checked against the tables.
pub fn terg_scaling_isos(p: usize) -> Result<Vec<ScalingIso>> {
    if !is_prime(p) {
        return Err(Error::UnsupportedPrime(p));
    }
    let mut out = Vec::new();
    let mut push = |source: TergParams, target: TergParams, f: &dyn Fn([usize; 3]) -> [usize; 3]| -> Result<()> {
        let map: Vec<usize> = (0..p * p * p).map(|i| target.encode(f(source.decode(i)))).collect();
        let perm = Permutation::new(map.clone())?;
        if !is_isomorphism(&build_terg(source)?, &build_terg(target)?, &perm) {
            return Err(Error::Certification(format!("{source:?} -> {target:?}")));
        }
        out.push(ScalingIso { source, target, map });
        Ok(())
    };
    for b in 1..p {
        for c in 1..p {
            if b == c {
                continue;
            }
            let r = c * inverse_mod(b, p).expect("prime modulus") % p;
            push(TergParams::new(p, 0, b)?, TergParams::new(p, 0, c)?, &|x| [r * x[0] % p, r * x[1] % p, x[2]])?;
        }
    }
    for a1 in 1..p {
        for u in 2..p {
            let a2 = a1 * u * u % p;
            if a2 == a1 {
                continue;
            }
            push(TergParams::new(p, a1, 0)?, TergParams::new(p, a2, 0)?, &|x| [u * u * x[0] % p, x[1], u * x[2] % p])?;
        }
    }
    Ok(out)
}

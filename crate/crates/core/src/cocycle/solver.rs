use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::construct::{build_central_extension, ExtensionSpec};
use crate::error::{Error, Result};
use crate::iso::{automorphisms, Profiled};
use crate::linalg::{invert, Echelon, LinearSystemGF};
use crate::perm::Permutation;
use crate::structure::is_a_loop;
use crate::table::LoopTable;

use super::CocycleVector;

/// Largest number of complement vectors walked by the orbit enumeration.
pub const ORBIT_LIMIT: u128 = 1 << 24;

/// Extra constraints imposed on cocycles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct CocycleFlags {
    pub symmetric: bool,
    pub zero_diagonal: bool,
}

impl CocycleFlags {
    pub const COMMUTATIVE: CocycleFlags = CocycleFlags { symmetric: true, zero_diagonal: false };
    pub const EXPONENT_TWO: CocycleFlags = CocycleFlags { symmetric: true, zero_diagonal: true };
}

fn check_prime(p: usize) -> Result<()> {
    let prime = p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0);
    if prime && p <= 251 {
        Ok(())
    } else {
        Err(Error::UnsupportedPrime(p))
    }
}

/// The linear system whose solutions are the cocycles `θ` for which the
/// central extension of `k` by `Z_p` is a commutative A-loop.
///
/// Every inner mapping `R_{y,z}` of `k` lifts to `(x,a) ↦ (R_{y,z}x, a + F(x,y,z))`
/// with `F(x,y,z) = θ(xy,z) + θ(x,y) − θ(y,z) − θ(R_{y,z}x, yz)`; the rows
/// say that the lift is additive.
pub fn cocycle_system(k: &LoopTable, p: usize, flags: CocycleFlags) -> Result<LinearSystemGF> {
    check_prime(p)?;
    if !k.is_commutative() {
        return Err(Error::NotCommutative);
    }
    if !is_a_loop(k) {
        return Err(Error::NotALoop);
    }
    let n = k.order();
    let vars = (n - 1) * (n - 1);
    let var = |u: usize, v: usize| (u != 0 && v != 0).then(|| (u - 1) * (n - 1) + (v - 1));
    let mut sys = LinearSystemGF::new(p, vars);
    let mut seen = std::collections::HashSet::new();
    let mut row = vec![0i64; vars];
    for y in 1..n {
        for z in 1..n {
            let yz = k.mul(y, z);
            let r: Vec<usize> = (0..n).map(|x| k.rdiv(k.mul(k.mul(x, y), z), yz)).collect();
            let add_f = |row: &mut [i64], x: usize, sign: i64| {
                for (u, v, s) in [(k.mul(x, y), z, 1), (x, y, 1), (y, z, -1), (r[x], yz, -1)] {
                    if let Some(i) = var(u, v) {
                        row[i] += sign * s;
                    }
                }
            };
            for x in 1..n {
                for x2 in 1..n {
                    row.iter_mut().for_each(|c| *c = 0);
                    add_f(&mut row, x, 1);
                    add_f(&mut row, x2, 1);
                    add_f(&mut row, k.mul(x, x2), -1);
                    if let Some(i) = var(r[x], r[x2]) {
                        row[i] += 1;
                    }
                    if let Some(i) = var(x, x2) {
                        row[i] -= 1;
                    }
                    let reduced: Vec<u8> = row.iter().map(|&c| c.rem_euclid(p as i64) as u8).collect();
                    if reduced.iter().any(|&c| c != 0) && seen.insert(reduced.clone()) {
                        sys.rows.push(reduced);
                    }
                }
            }
        }
    }
    for u in 1..n {
        if flags.zero_diagonal {
            let mut r = vec![0i64; vars];
            r[var(u, u).unwrap()] = 1;
            sys.push_signed(&r);
        }
        if flags.symmetric {
            for v in u + 1..n {
                let mut r = vec![0i64; vars];
                r[var(u, v).unwrap()] = 1;
                r[var(v, u).unwrap()] = -1;
                sys.push_signed(&r);
            }
        }
    }
    Ok(sys)
}

/// A basis of the cocycle space `C`. The basis vector for the `j`-th free
/// coordinate has a 1 there and 0 at every other free coordinate.
pub fn cocycle_space(k: &LoopTable, p: usize, flags: CocycleFlags) -> Result<Vec<CocycleVector>> {
    let sys = cocycle_system(k, p, flags)?;
    Ok(sys.solve().iter().map(|v| CocycleVector::from_coords(k.order(), p, v)).collect())
}

/// An echelon basis of the coboundaries `δτ` with `τ(1) = 0`.
pub fn coboundary_space(k: &LoopTable, p: usize) -> Vec<CocycleVector> {
    let n = k.order();
    let mut e = Echelon::new(p, (n - 1) * (n - 1));
    for w in 1..n {
        let mut tau = vec![0; n];
        tau[w] = 1;
        e.insert(&CocycleVector::coboundary(k, p, &tau).coords());
    }
    e.basis().iter().map(|v| CocycleVector::from_coords(n, p, v)).collect()
}

/// A complement `D` of `B` in `C` and the orbits of `Aut(K)` on it.
#[derive(Debug, Clone)]
pub struct OrbitData {
    pub dim_c: usize,
    pub dim_b: usize,
    pub complement: Vec<CocycleVector>,
    /// Coordinates over `complement` of the least member of each orbit.
    pub representatives: Vec<Vec<u8>>,
    pub orbit_sizes: Vec<usize>,
}

impl OrbitData {
    pub fn dim_d(&self) -> usize {
        self.complement.len()
    }

    pub fn cocycle(&self, coords: &[u8]) -> CocycleVector {
        let first = &self.complement[0];
        let (n, p) = (first.order(), first.modulus());
        let mut acc = vec![0u8; (n - 1) * (n - 1)];
        for (c, d) in coords.iter().zip(&self.complement) {
            for (a, b) in acc.iter_mut().zip(d.coords()) {
                *a = ((*a as usize + *c as usize * b as usize) % p) as u8;
            }
        }
        CocycleVector::from_coords(n, p, &acc)
    }
}

/// Chooses `D` by greedily extending `B` with the vectors of `c` in order,
/// then enumerates the orbits of the group generated by `auts` acting by
/// `θ ↦ θ_φ` followed by projection onto `D` along `B`.
pub fn complement_and_orbits(c: &[CocycleVector], b: &[CocycleVector], auts: &[Permutation]) -> Result<OrbitData> {
    let Some(first) = c.first().or(b.first()) else {
        return Err(Error::InvalidParameters("empty cocycle space".into()));
    };
    let (n, p) = (first.order(), first.modulus());
    let len = (n - 1) * (n - 1);
    let mut c_ech = Echelon::new(p, len);
    for v in c {
        c_ech.insert(&v.coords());
    }
    let mut span = Echelon::new(p, len);
    for v in b {
        if !c_ech.contains(&v.coords()) {
            return Err(Error::InvalidParameters("coboundaries outside the cocycle space".into()));
        }
        span.insert(&v.coords());
    }
    let dim_b = span.rank();
    let complement: Vec<CocycleVector> = c.iter().filter(|v| span.insert(&v.coords())).cloned().collect();
    let dim_c = span.rank();

    // Coordinates in C are read off at C's pivot columns.
    let mut cols: Vec<usize> = c_ech.pivots().to_vec();
    cols.sort_unstable();
    let restrict = |v: &CocycleVector| -> Vec<u8> {
        let co = v.coords();
        cols.iter().map(|&i| co[i]).collect()
    };
    let b_basis: Vec<Vec<u8>> = {
        let mut e = Echelon::new(p, len);
        b.iter().filter(|v| e.insert(&v.coords())).map(|v| v.coords()).collect()
    };
    let m: Vec<Vec<u8>> = b_basis
        .iter()
        .map(|v| cols.iter().map(|&i| v[i]).collect())
        .chain(complement.iter().map(&restrict))
        .collect();
    let minv = invert(&m, p).ok_or_else(|| Error::Certification("basis restriction is singular".into()))?;
    let dim_d = complement.len();
    let project = |v: &CocycleVector| -> Vec<u8> {
        let r = restrict(v);
        (dim_b..dim_c)
            .map(|k| (r.iter().enumerate().map(|(i, &x)| x as usize * minv[i][k] as usize).sum::<usize>() % p) as u8)
            .collect()
    };

    let size = (p as u128).checked_pow(dim_d as u32).unwrap_or(u128::MAX);
    if size > ORBIT_LIMIT {
        return Err(Error::OrbitSpaceTooLarge(size));
    }
    let size = size as usize;
    // images[g][j]: image of the j-th complement vector under generator g
    let images: Vec<Vec<usize>> = auts
        .iter()
        .filter(|a| !a.is_identity())
        .map(|phi| {
            let imgs = phi.images();
            complement.iter().map(|d| encode(&project(&d.act(&imgs)), p)).collect()
        })
        .collect();
    let apply = |g: &[usize], mut x: usize| -> usize {
        let mut out = 0;
        let mut j = 0;
        while x > 0 {
            let digit = x % p;
            for _ in 0..digit {
                out = add_encoded(out, g[j], p);
            }
            x /= p;
            j += 1;
        }
        out
    };
    let mut visited = vec![false; size];
    let mut representatives = Vec::new();
    let mut orbit_sizes = Vec::new();
    let mut stack = Vec::new();
    for start in 0..size {
        if visited[start] {
            continue;
        }
        visited[start] = true;
        stack.push(start);
        let mut count = 0;
        while let Some(x) = stack.pop() {
            count += 1;
            for g in &images {
                let y = apply(g, x);
                if !visited[y] {
                    visited[y] = true;
                    stack.push(y);
                }
            }
        }
        representatives.push(decode(start, p, dim_d));
        orbit_sizes.push(count);
    }
    Ok(OrbitData { dim_c, dim_b, complement, representatives, orbit_sizes })
}

fn encode(v: &[u8], p: usize) -> usize {
    v.iter().rev().fold(0, |acc, &d| acc * p + d as usize)
}

fn decode(mut x: usize, p: usize, len: usize) -> Vec<u8> {
    (0..len)
        .map(|_| {
            let d = (x % p) as u8;
            x /= p;
            d
        })
        .collect()
}

fn add_encoded(a: usize, b: usize, p: usize) -> usize {
    if p == 2 {
        return a ^ b;
    }
    let (mut a, mut b) = (a, b);
    let (mut out, mut place) = (0, 1);
    while a > 0 || b > 0 {
        out += ((a % p + b % p) % p) * place;
        a /= p;
        b /= p;
        place *= p;
    }
    out
}

/// Outcome of classifying the extensions of one base loop.
#[derive(Debug, Clone)]
pub struct ClassificationReport {
    pub base: LoopTable,
    pub modulus: usize,
    pub dim_c: usize,
    pub dim_b: usize,
    pub dim_d: usize,
    pub orbit_count: usize,
    /// Nonassociative extensions built, one per orbit, before isomorphism
    /// filtering.
    pub extension_count: usize,
    /// Classes first reached from this base. Across all reports of one run
    /// the classes are pairwise non-isomorphic.
    pub classes: Vec<LoopTable>,
    /// Complement coordinates of the cocycle behind each class.
    pub class_coords: Vec<Vec<u8>>,
}

/// Builds one extension per orbit for every base loop, drops associative
/// ones and keeps one loop per isomorphism class over the whole list.
pub fn classify_extensions(bases: &[LoopTable], p: usize, flags: CocycleFlags) -> Result<Vec<ClassificationReport>> {
    let mut kept: Vec<Profiled> = Vec::new();
    let mut buckets: BTreeMap<crate::iso::InvariantFingerprint, Vec<usize>> = BTreeMap::new();
    let mut reports = Vec::new();
    for k in bases {
        let c = cocycle_space(k, p, flags)?;
        let b = coboundary_space(k, p);
        let auts = automorphisms(k);
        let orbits = if c.is_empty() {
            OrbitData { dim_c: 0, dim_b: 0, complement: Vec::new(), representatives: vec![Vec::new()], orbit_sizes: vec![1] }
        } else {
            complement_and_orbits(&c, &b, &auts)?
        };
        let built: Vec<(Vec<u8>, Profiled)> = orbits
            .representatives
            .par_iter()
            .map(|coords| -> Result<Option<(Vec<u8>, Profiled)>> {
                let theta = if coords.is_empty() { CocycleVector::zero(k.order(), p) } else { orbits.cocycle(coords) };
                let q = build_central_extension(&ExtensionSpec::new(k.clone(), p, theta)?)?;
                Ok((!q.is_associative()).then(|| (coords.clone(), Profiled::new(q))))
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect();
        let extension_count = built.len();
        let mut classes = Vec::new();
        let mut class_coords = Vec::new();
        for (coords, cand) in built {
            let bucket = buckets.entry(cand.fingerprint.clone()).or_default();
            if bucket.iter().any(|&i| kept[i].isomorphic_to(&cand)) {
                continue;
            }
            bucket.push(kept.len());
            classes.push(cand.table.clone());
            class_coords.push(coords);
            kept.push(cand);
        }
        reports.push(ClassificationReport {
            base: k.clone(),
            modulus: p,
            dim_c: orbits.dim_c,
            dim_b: orbits.dim_b,
            dim_d: orbits.dim_d(),
            orbit_count: orbits.representatives.len(),
            extension_count,
            classes,
            class_coords,
        });
    }
    Ok(reports)
}

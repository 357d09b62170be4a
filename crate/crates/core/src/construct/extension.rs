//! Central extensions `K ⋉_θ Z_m` and realisation of nucleus parameters.

use crate::cocycle::CocycleVector;
use crate::error::{Error, Result};
use crate::structure::{left_inner_mappings, nucleus_sizes};
use crate::table::LoopTable;

use super::gf::build_qn;
use super::trilinear::{build_trilinear_extension, newforms_form, symmetrize_13, TrilinearForm};

/// A base loop `K`, a modulus `m` and a normalised cocycle `K × K → Z_m`.
#[derive(Debug, Clone)]
pub struct ExtensionSpec {
    base: LoopTable,
    modulus: usize,
    theta: CocycleVector,
}

impl ExtensionSpec {
    pub fn new(base: LoopTable, modulus: usize, theta: CocycleVector) -> Result<Self> {
        if modulus < 1 || theta.modulus() != modulus || theta.order() != base.order() {
            return Err(Error::InvalidParameters("cocycle does not match base or modulus".into()));
        }
        if !theta.is_normalized() {
            return Err(Error::InvalidParameters("cocycle must vanish at the neutral element".into()));
        }
        Ok(ExtensionSpec { base, modulus, theta })
    }

    pub fn base(&self) -> &LoopTable {
        &self.base
    }

    pub fn modulus(&self) -> usize {
        self.modulus
    }

    pub fn theta(&self) -> &CocycleVector {
        &self.theta
    }
}

/// `(x,a)(y,b) = (xy, a+b+θ(x,y))`; the pair `(x,a)` has index `x·m + a`.
pub fn build_central_extension(spec: &ExtensionSpec) -> Result<LoopTable> {
    let k = &spec.base;
    let m = spec.modulus;
    LoopTable::from_fn(k.order() * m, |u, v| {
        let (x, a) = (u / m, u % m);
        let (y, b) = (v / m, v % m);
        k.mul(x, y) * m + (a + b + spec.theta.get(x, y)) % m
    })
}

/// Adds a symmetric group cocycle `mu` to `theta` over the group `base`.
/// The left inner mappings of the two extensions are compared and must agree.
pub fn add_group_cocycle(base: &LoopTable, theta: &CocycleVector, mu: &CocycleVector) -> Result<CocycleVector> {
    if !base.is_associative() {
        return Err(Error::InvalidParameters("base must be a group".into()));
    }
    if !mu.is_symmetric() || !mu.is_group_cocycle(base) {
        return Err(Error::NotGroupCocycle);
    }
    let sum = theta.add(mu)?;
    let m = theta.modulus();
    let before = build_central_extension(&ExtensionSpec::new(base.clone(), m, theta.clone())?)?;
    let after = build_central_extension(&ExtensionSpec::new(base.clone(), m, sum.clone())?)?;
    let mut a = left_inner_mappings(&before);
    let mut b = left_inner_mappings(&after);
    a.sort();
    b.sort();
    if a != b {
        return Err(Error::Certification("left inner mappings differ".into()));
    }
    Ok(sum)
}

/// A (1,3)-symmetric form on `GF(2)³` whose extension has a middle nucleus
/// of order 4, found by a fixed-order search.
pub fn middle_nucleus_four_exemplar() -> LoopTable {
    // free positions: (i,j,k) with i ≤ k; the rest are mirrored
    let n = 3;
    let free: Vec<(usize, usize, usize)> =
        (0..n).flat_map(|i| (0..n).flat_map(move |j| (i..n).map(move |k| (i, j, k)))).collect();
    for mask in 1u32..(1 << free.len()) {
        let mut f = TrilinearForm::zero(n);
        for (bit, &(i, j, k)) in free.iter().enumerate() {
            let v = ((mask >> bit) & 1) as u8;
            f.set_basis_value(i, j, k, v);
            f.set_basis_value(k, j, i, v);
        }
        let q = build_trilinear_extension(&f).expect("(1,3)-symmetric forms qualify");
        if nucleus_sizes(&q)[1] == 4 {
            return q;
        }
    }
    unreachable!("a suitable form exists in dimension 3")
}

/// A nonassociative commutative A-loop of order `2^k` whose middle nucleus
/// has order `2^l`, or `None` when no such loop exists.
pub fn achieve_parameters(k: usize, l: usize) -> Result<Option<LoopTable>> {
    if l == 0 || k < l {
        return Err(Error::InvalidParameters(format!("need k ≥ l > 0, got ({k}, {l})")));
    }
    let d = k - l;
    let core = if d >= 3 {
        build_trilinear_extension(&symmetrize_13(&newforms_form(d)?))?
    } else if d >= 1 && l >= 2 {
        if d == 1 {
            build_qn(k - 1)?
        } else {
            middle_nucleus_four_exemplar()
        }
    } else {
        return Ok(None);
    };
    let rest = k - core.order().trailing_zeros() as usize;
    let q = core.direct_product(&LoopTable::elementary_abelian(2, rest));
    if nucleus_sizes(&q)[1] != 1 << l || q.is_associative() || q.order() != 1 << k {
        return Err(Error::Certification(format!("construction for ({k}, {l}) has wrong parameters")));
    }
    Ok(Some(q))
}

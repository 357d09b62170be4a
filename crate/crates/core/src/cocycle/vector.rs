use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::table::LoopTable;

/// A map `K × K → Z_m` vanishing whenever an argument is the neutral
/// element. Stored densely, row `x` then column `y`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CocycleVector {
    order: usize,
    modulus: usize,
    values: Vec<u16>,
}

impl CocycleVector {
    pub fn zero(order: usize, modulus: usize) -> Self {
        CocycleVector { order, modulus, values: vec![0; order * order] }
    }

    /// Builds from a function; values are reduced and the neutral row and
    /// column are forced to zero.
    pub fn from_fn(order: usize, modulus: usize, mut f: impl FnMut(usize, usize) -> i64) -> Self {
        let m = modulus as i64;
        let mut v = Self::zero(order, modulus);
        for x in 1..order {
            for y in 1..order {
                v.values[x * order + y] = f(x, y).rem_euclid(m) as u16;
            }
        }
        v
    }

    /// Builds from a full table; fails unless it is normalised.
    pub fn from_table(order: usize, modulus: usize, values: Vec<u16>) -> Result<Self> {
        if values.len() != order * order || values.iter().any(|&v| v as usize >= modulus) {
            return Err(Error::InvalidParameters("cocycle table has wrong shape or range".into()));
        }
        let v = CocycleVector { order, modulus, values };
        if !v.is_normalized() {
            return Err(Error::InvalidParameters("cocycle must vanish at the neutral element".into()));
        }
        Ok(v)
    }

    /// Builds from coordinates over the `(order-1)²` non-neutral pairs.
    pub fn from_coords(order: usize, modulus: usize, coords: &[u8]) -> Self {
        let k = order - 1;
        assert_eq!(coords.len(), k * k);
        Self::from_fn(order, modulus, |x, y| coords[(x - 1) * k + (y - 1)] as i64)
    }

    /// Coordinates over the non-neutral pairs, `(u,v)` at `(u-1)(n-1)+(v-1)`.
    pub fn coords(&self) -> Vec<u8> {
        let n = self.order;
        let mut out = Vec::with_capacity((n - 1) * (n - 1));
        for x in 1..n {
            for y in 1..n {
                out.push(self.values[x * n + y] as u8);
            }
        }
        out
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn modulus(&self) -> usize {
        self.modulus
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> usize {
        self.values[x * self.order + y] as usize
    }

    pub fn values(&self) -> &[u16] {
        &self.values
    }

    pub fn is_normalized(&self) -> bool {
        let n = self.order;
        (0..n).all(|x| self.values[x * n] == 0 && self.values[x] == 0)
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.order;
        (0..n).all(|x| (0..x).all(|y| self.get(x, y) == self.get(y, x)))
    }

    pub fn has_zero_diagonal(&self) -> bool {
        (0..self.order).all(|x| self.get(x, x) == 0)
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    fn check_compatible(&self, other: &CocycleVector) -> Result<()> {
        if self.order != other.order || self.modulus != other.modulus {
            return Err(Error::InvalidParameters("cocycles over different bases".into()));
        }
        Ok(())
    }

    /// Pointwise sum.
    pub fn add(&self, other: &CocycleVector) -> Result<CocycleVector> {
        self.check_compatible(other)?;
        let m = self.modulus as u32;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(&a, &b)| ((a as u32 + b as u32) % m) as u16)
            .collect();
        Ok(CocycleVector { order: self.order, modulus: self.modulus, values })
    }

    /// Pointwise difference.
    pub fn sub(&self, other: &CocycleVector) -> Result<CocycleVector> {
        self.add(&other.scale(self.modulus - 1))
    }

    pub fn scale(&self, c: usize) -> CocycleVector {
        let m = self.modulus;
        let values = self.values.iter().map(|&a| ((a as usize * c) % m) as u16).collect();
        CocycleVector { order: self.order, modulus: self.modulus, values }
    }

    /// `θ(x,y) + θ(xy,z) = θ(y,z) + θ(x,yz)` for all `x, y, z` of `base`.
    pub fn is_group_cocycle(&self, base: &LoopTable) -> bool {
        let n = self.order;
        let m = self.modulus;
        base.order() == n
            && (0..n).all(|x| {
                (0..n).all(|y| {
                    let xy = base.mul(x, y);
                    (0..n).all(|z| {
                        (self.get(x, y) + self.get(xy, z)) % m == (self.get(y, z) + self.get(x, base.mul(y, z))) % m
                    })
                })
            })
    }

    /// The coboundary `δτ(x,y) = τ(xy) − τ(x) − τ(y)`; `tau[0]` is ignored.
    pub fn coboundary(base: &LoopTable, modulus: usize, tau: &[usize]) -> CocycleVector {
        let t = |x: usize| if x == 0 { 0 } else { tau[x] as i64 };
        Self::from_fn(base.order(), modulus, |x, y| t(base.mul(x, y)) - t(x) - t(y))
    }

    /// `θ_φ(x,y) = θ(φ(x), φ(y))`.
    pub fn act(&self, phi: &[usize]) -> CocycleVector {
        Self::from_fn(self.order, self.modulus, |x, y| self.get(phi[x], phi[y]) as i64)
    }
}

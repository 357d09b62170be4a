//! Loops on `Z_n³` built from a bilinear term and carry cocycles.

use serde::{Deserialize, Serialize};

use crate::cocycle::CocycleVector;
use crate::error::{Error, Result};
use crate::table::{decode_mixed, encode_mixed, LoopTable};

/// `(x,y)_n`: 1 when `x + y ≥ n`, else 0.
pub fn overflow_indicator(x: usize, y: usize, n: usize) -> Result<usize> {
    if x >= n || y >= n {
        return Err(Error::OutOfRange(format!("({x},{y}) not in Z_{n}")));
    }
    Ok((x + y >= n) as usize)
}

#[inline]
fn carry(x: usize, y: usize, n: usize) -> usize {
    (x + y >= n) as usize
}

/// Modulus `n` and the two carry coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TergParams {
    pub n: usize,
    pub a: usize,
    pub b: usize,
}

impl TergParams {
    pub fn new(n: usize, a: usize, b: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameters(format!("modulus {n} must be at least 2")));
        }
        if a >= n || b >= n {
            return Err(Error::InvalidParameters(format!("a={a}, b={b} must lie in Z_{n}")));
        }
        Ok(TergParams { n, a, b })
    }

    /// Index of `(x1, x2, x3)`: `x1·n² + x2·n + x3`.
    pub fn encode(&self, x: [usize; 3]) -> usize {
        (x[0] * self.n + x[1]) * self.n + x[2]
    }

    pub fn decode(&self, i: usize) -> [usize; 3] {
        let n = self.n;
        [i / (n * n), (i / n) % n, i % n]
    }

    /// The product of two triples.
    pub fn mul(&self, x: [usize; 3], y: [usize; 3]) -> [usize; 3] {
        let n = self.n;
        let s2 = (x[1] + y[1]) % n;
        let first = x[0] + y[0] + s2 * x[2] % n * y[2] + self.a * carry(x[1], y[1], n) + self.b * carry(x[2], y[2], n);
        [first % n, s2, (x[2] + y[2]) % n]
    }

    /// The cocycle on `Z_n × Z_n` (pair `(x2,x3)` at index `x2·n + x3`).
    pub fn cocycle(&self) -> CocycleVector {
        let n = self.n;
        CocycleVector::from_fn(n * n, n, |u, v| {
            let (x2, x3, y2, y3) = (u / n, u % n, v / n, v % n);
            (((x2 + y2) % n) * x3 * y3 + self.a * carry(x2, y2, n) + self.b * carry(x3, y3, n)) as i64
        })
    }
}

pub fn build_terg(params: TergParams) -> Result<LoopTable> {
    let p = TergParams::new(params.n, params.a, params.b)?;
    let size = p.n * p.n * p.n;
    LoopTable::from_fn(size, |u, v| p.encode(p.mul(p.decode(u), p.decode(v))))
}

/// Closed form for the left power `x^m`.
pub fn terg_power(params: TergParams, x: [usize; 3], m: usize) -> [usize; 3] {
    let n = params.n as u128;
    let m128 = m as u128;
    let sum_carries = |xi: usize| -> u128 {
        (1..m.max(1)).map(|k| carry(xi, (k * xi) % params.n, params.n) as u128).sum()
    };
    // 2·C(m+1, 3) = (m+1)m(m−1)/3
    let binom = if m >= 2 { (m128 + 1) * m128 * (m128 - 1) / 3 } else { 0 };
    let (x1, x2, x3) = (x[0] as u128, x[1] as u128, x[2] as u128);
    let first = m128 * x1 + binom % n * x2 % n * (x3 * x3 % n) + params.a as u128 * sum_carries(x[1]) + params.b as u128 * sum_carries(x[2]);
    [(first % n) as usize, (m128 * x2 % n) as usize, (m128 * x3 % n) as usize]
}

/// The `a = b = 0` construction over the product ring `Z_{m1} × … × Z_{mk}`.
/// A ring element is a mixed-radix index; triples are encoded as for the
/// cyclic case with `|R|` in place of `n`.
pub fn build_ter_ring(moduli: &[usize]) -> Result<LoopTable> {
    if moduli.iter().any(|&m| m == 0) || moduli.iter().product::<usize>() < 2 {
        return Err(Error::InvalidParameters("ring must be nonzero".into()));
    }
    let r: usize = moduli.iter().product();
    let add = |x: usize, y: usize| -> usize {
        let (a, b) = (decode_mixed(x, moduli), decode_mixed(y, moduli));
        let s: Vec<usize> = a.iter().zip(&b).zip(moduli).map(|((u, v), m)| (u + v) % m).collect();
        encode_mixed(&s, moduli)
    };
    let mul = |x: usize, y: usize| -> usize {
        let (a, b) = (decode_mixed(x, moduli), decode_mixed(y, moduli));
        let s: Vec<usize> = a.iter().zip(&b).zip(moduli).map(|((u, v), m)| (u * v) % m).collect();
        encode_mixed(&s, moduli)
    };
    let add_t: Vec<usize> = (0..r * r).map(|i| add(i / r, i % r)).collect();
    let mul_t: Vec<usize> = (0..r * r).map(|i| mul(i / r, i % r)).collect();
    let ad = |x: usize, y: usize| add_t[x * r + y];
    let mu = |x: usize, y: usize| mul_t[x * r + y];
    LoopTable::from_fn(r * r * r, |u, v| {
        let (x1, x2, x3) = (u / (r * r), (u / r) % r, u % r);
        let (y1, y2, y3) = (v / (r * r), (v / r) % r, v % r);
        let s2 = ad(x2, y2);
        let first = ad(ad(x1, y1), mu(mu(s2, x3), y3));
        (first * r + s2) * r + ad(x3, y3)
    })
}

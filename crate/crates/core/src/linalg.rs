//! Row reduction over `GF(p)` for small primes.
//!
//! Rows over `GF(2)` are packed 64 to a word; other primes use one byte per
//! entry. Both layouts sit behind [`Echelon`], which keeps its rows in
//! reduced row echelon form as they are inserted.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Row {
    Bits(Vec<u64>),
    Bytes(Vec<u8>),
}

impl Row {
    fn zero(p: u8, len: usize) -> Row {
        if p == 2 {
            Row::Bits(vec![0; len.div_ceil(64)])
        } else {
            Row::Bytes(vec![0; len])
        }
    }

    fn from_slice(p: u8, v: &[u8]) -> Row {
        let mut r = Row::zero(p, v.len());
        match &mut r {
            Row::Bits(w) => {
                for (i, &x) in v.iter().enumerate() {
                    if x % 2 == 1 {
                        w[i / 64] |= 1 << (i % 64);
                    }
                }
            }
            Row::Bytes(b) => {
                for (i, &x) in v.iter().enumerate() {
                    b[i] = x % p;
                }
            }
        }
        r
    }

    #[inline]
    fn get(&self, i: usize) -> u8 {
        match self {
            Row::Bits(w) => ((w[i / 64] >> (i % 64)) & 1) as u8,
            Row::Bytes(b) => b[i],
        }
    }

    fn to_vec(&self, len: usize) -> Vec<u8> {
        (0..len).map(|i| self.get(i)).collect()
    }

    fn leading(&self) -> Option<usize> {
        match self {
            Row::Bits(w) => w.iter().enumerate().find(|(_, &x)| x != 0).map(|(i, &x)| i * 64 + x.trailing_zeros() as usize),
            Row::Bytes(b) => b.iter().position(|&x| x != 0),
        }
    }

    /// `self += c·other`.
    fn axpy(&mut self, c: u8, other: &Row, p: u8) {
        match (self, other) {
            (Row::Bits(a), Row::Bits(b)) => {
                if c % 2 == 1 {
                    for (x, y) in a.iter_mut().zip(b) {
                        *x ^= y;
                    }
                }
            }
            (Row::Bytes(a), Row::Bytes(b)) => {
                let (c, p) = (c as u16, p as u16);
                for (x, &y) in a.iter_mut().zip(b) {
                    *x = ((*x as u16 + c * y as u16) % p) as u8;
                }
            }
            _ => unreachable!("mixed row layouts"),
        }
    }

    fn scale(&mut self, c: u8, p: u8) {
        if let Row::Bytes(a) = self {
            for x in a.iter_mut() {
                *x = ((*x as u16 * c as u16) % p as u16) as u8;
            }
        }
    }
}

pub(crate) fn inv_mod(x: u8, p: u8) -> u8 {
    (1..p).find(|&y| (x as u16 * y as u16) % p as u16 == 1).expect("nonzero residue mod a prime")
}

/// A subspace of `GF(p)^len` held in reduced row echelon form.
#[derive(Debug, Clone)]
pub struct Echelon {
    p: u8,
    len: usize,
    rows: Vec<Row>,
    pivots: Vec<usize>,
    pivot_row: Vec<Option<usize>>,
}

impl Echelon {
    pub fn new(p: usize, len: usize) -> Self {
        assert!((2..=251).contains(&p), "modulus out of range");
        Echelon { p: p as u8, len, rows: Vec::new(), pivots: Vec::new(), pivot_row: vec![None; len] }
    }

    pub fn modulus(&self) -> usize {
        self.p as usize
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn reduce_row(&self, r: &mut Row) {
        let p = self.p;
        for (k, row) in self.rows.iter().enumerate() {
            let c = r.get(self.pivots[k]);
            if c != 0 {
                r.axpy(p - c, row, p);
            }
        }
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: &[u8]) -> bool {
        assert_eq!(v.len(), self.len);
        let mut r = Row::from_slice(self.p, v);
        self.reduce_row(&mut r);
        let Some(lead) = r.leading() else {
            return false;
        };
        let p = self.p;
        r.scale(inv_mod(r.get(lead), p), p);
        for row in self.rows.iter_mut() {
            let c = row.get(lead);
            if c != 0 {
                row.axpy(p - c, &r, p);
            }
        }
        self.pivot_row[lead] = Some(self.rows.len());
        self.rows.push(r);
        self.pivots.push(lead);
        true
    }

    /// The remainder of `v` after eliminating every pivot column.
    pub fn reduce(&self, v: &[u8]) -> Vec<u8> {
        let mut r = Row::from_slice(self.p, v);
        self.reduce_row(&mut r);
        r.to_vec(self.len)
    }

    pub fn contains(&self, v: &[u8]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Rows of the reduced echelon form, ordered by pivot column.
    pub fn basis(&self) -> Vec<Vec<u8>> {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&k| self.pivots[k]);
        order.into_iter().map(|k| self.rows[k].to_vec(self.len)).collect()
    }

    /// A basis of `{x : row·x = 0 for every row}`, one vector per free column
    /// in increasing order.
    pub fn nullspace(&self) -> Vec<Vec<u8>> {
        let p = self.p;
        (0..self.len)
            .filter(|&c| self.pivot_row[c].is_none())
            .map(|free| {
                let mut v = vec![0u8; self.len];
                v[free] = 1;
                for (k, row) in self.rows.iter().enumerate() {
                    let c = row.get(free);
                    if c != 0 {
                        v[self.pivots[k]] = (p - c) % p;
                    }
                }
                v
            })
            .collect()
    }
}

/// A homogeneous linear system over `GF(p)`, accumulated row by row.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LinearSystemGF {
    pub modulus: usize,
    pub vars: usize,
    pub rows: Vec<Vec<u8>>,
}

impl LinearSystemGF {
    pub fn new(modulus: usize, vars: usize) -> Self {
        LinearSystemGF { modulus, vars, rows: Vec::new() }
    }

    /// Adds an equation given as signed coefficients.
    pub fn push_signed(&mut self, coeffs: &[i64]) {
        let m = self.modulus as i64;
        self.rows.push(coeffs.iter().map(|&c| c.rem_euclid(m) as u8).collect());
    }

    /// Basis of the solution space.
    pub fn solve(&self) -> Vec<Vec<u8>> {
        let mut e = Echelon::new(self.modulus, self.vars);
        for r in &self.rows {
            e.insert(r);
        }
        e.nullspace()
    }
}

/// Inverse of a square matrix over `GF(p)`, or `None` when singular.
pub fn invert(m: &[Vec<u8>], p: usize) -> Option<Vec<Vec<u8>>> {
    let n = m.len();
    let p16 = p as u16;
    let mut a: Vec<Vec<u8>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| (i == j) as u8));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| a[r][col] != 0)?;
        a.swap(col, piv);
        let inv = inv_mod(a[col][col], p as u8) as u16;
        for x in a[col].iter_mut() {
            *x = ((*x as u16 * inv) % p16) as u8;
        }
        let pivot_row = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != col && row[col] != 0 {
                let c = p16 - row[col] as u16;
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = ((*x as u16 + c * y as u16) % p16) as u8;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

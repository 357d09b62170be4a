//! Finite loops stored as dense Cayley tables.
//!
//! Elements are the integers `0..n` and element `0` is always the two-sided
//! neutral element. Every constructor validates the Latin-square property, so a
//! `LoopTable` value is a loop by construction.

use std::fmt::Write as _;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Index of an element of a loop.
pub type Element = usize;

/// Which side a division is taken on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    /// `x \ y`, the solution `z` of `x·z = y`.
    Left,
    /// `y / x`, the solution `z` of `z·x = y`.
    Right,
}

/// A finite loop given by its Cayley table.
#[derive(Debug, Clone)]
pub struct LoopTable {
    order: usize,
    cells: Vec<u16>,
    ldiv: Vec<u16>,
    rdiv: Vec<u16>,
    power_associative: OnceLock<bool>,
}

impl PartialEq for LoopTable {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.cells == other.cells
    }
}

impl Eq for LoopTable {}

impl std::hash::Hash for LoopTable {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.order.hash(state);
        self.cells.hash(state);
    }
}

/// Largest supported order; entries are stored as `u16`.
pub const MAX_ORDER: usize = 4096;

fn latin_error(cells: &[u16], n: usize) -> Option<String> {
    let mut seen = vec![usize::MAX; n];
    for r in 0..n {
        for c in 0..n {
            let v = cells[r * n + c] as usize;
            if seen[v] == r {
                return Some(format!("row {r} repeats value {v} (at column {c})"));
            }
            seen[v] = r;
        }
    }
    seen.fill(usize::MAX);
    for c in 0..n {
        for r in 0..n {
            let v = cells[r * n + c] as usize;
            if seen[v] == c {
                return Some(format!("column {c} repeats value {v} (at row {r})"));
            }
            seen[v] = c;
        }
    }
    None
}

impl LoopTable {
    fn from_cells_unchecked(order: usize, cells: Vec<u16>) -> Self {
        let n = order;
        let mut ldiv = vec![0u16; n * n];
        let mut rdiv = vec![0u16; n * n];
        for x in 0..n {
            for z in 0..n {
                let y = cells[x * n + z] as usize;
                ldiv[x * n + y] = z as u16;
                let y = cells[z * n + x] as usize;
                rdiv[x * n + y] = z as u16;
            }
        }
        LoopTable {
            order,
            cells,
            ldiv,
            rdiv,
            power_associative: OnceLock::new(),
        }
    }

    /// Builds a loop from a table whose neutral element must already be `0`.
    pub fn from_cells(order: usize, cells: Vec<u16>) -> Result<Self> {
        if order == 0 || order > MAX_ORDER {
            return Err(Error::InvalidParameters(format!("order {order}")));
        }
        if cells.len() != order * order {
            return Err(Error::NotLatin(format!(
                "expected {} entries, got {}",
                order * order,
                cells.len()
            )));
        }
        if let Some(bad) = cells.iter().position(|&v| v as usize >= order) {
            return Err(Error::NotLatin(format!(
                "entry {} at row {} column {} is out of range",
                cells[bad],
                bad / order,
                bad % order
            )));
        }
        if let Some(msg) = latin_error(&cells, order) {
            return Err(Error::NotLatin(msg));
        }
        let neutral = (0..order).all(|j| cells[j] as usize == j && cells[j * order] as usize == j);
        if !neutral {
            return Err(Error::NoNeutral);
        }
        Ok(Self::from_cells_unchecked(order, cells))
    }

    /// Builds a loop of order `n` from a multiplication function.
    pub fn from_fn(n: usize, mut mul: impl FnMut(usize, usize) -> usize) -> Result<Self> {
        let mut cells = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let v = mul(x, y);
                if v >= n {
                    return Err(Error::NotLatin(format!("product {x}*{y} = {v} out of range")));
                }
                cells.push(v as u16);
            }
        }
        Self::from_cells(n, cells)
    }

    /// Builds a loop from arbitrary rows, relabelling the neutral element to `0`.
    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 || n > MAX_ORDER {
            return Err(Error::InvalidParameters(format!("order {n}")));
        }
        let mut cells = Vec::with_capacity(n * n);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotLatin(format!("row {r} has {} entries, expected {n}", row.len())));
            }
            for (c, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(Error::NotLatin(format!("entry {v} at row {r} column {c} is out of range")));
                }
                cells.push(v as u16);
            }
        }
        if let Some(msg) = latin_error(&cells, n) {
            return Err(Error::NotLatin(msg));
        }
        let e = (0..n)
            .find(|&e| (0..n).all(|j| cells[e * n + j] as usize == j && cells[j * n + e] as usize == j))
            .ok_or(Error::NoNeutral)?;
        if e == 0 {
            return Ok(Self::from_cells_unchecked(n, cells));
        }
        // swap the labels 0 and e
        let swap = |v: usize| if v == 0 { e } else if v == e { 0 } else { v };
        let mut relabelled = vec![0u16; n * n];
        for x in 0..n {
            for y in 0..n {
                relabelled[swap(x) * n + swap(y)] = swap(cells[x * n + y] as usize) as u16;
            }
        }
        Self::from_cells(n, relabelled)
    }

    /// Cyclic group `Z_n`.
    pub fn cyclic(n: usize) -> Self {
        Self::abelian(&[n])
    }

    /// Direct product `Z_{m_1} × … × Z_{m_k}`, first coordinate most significant.
    pub fn abelian(moduli: &[usize]) -> Self {
        let n: usize = moduli.iter().product();
        let t = Self::from_fn(n, |x, y| {
            let xs = decode_mixed(x, moduli);
            let ys = decode_mixed(y, moduli);
            let zs: Vec<usize> = xs.iter().zip(&ys).zip(moduli).map(|((a, b), m)| (a + b) % m).collect();
            encode_mixed(&zs, moduli)
        });
        t.expect("direct products of cyclic groups are loops")
    }

    /// Elementary abelian group of order `p^k`.
    pub fn elementary_abelian(p: usize, k: usize) -> Self {
        Self::abelian(&vec![p; k])
    }

    /// The trivial loop of order one.
    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Unchecked product.
    #[inline]
    pub fn mul(&self, x: Element, y: Element) -> Element {
        self.cells[x * self.order + y] as usize
    }

    /// Unchecked left division `x \ y`.
    #[inline]
    pub fn ldiv(&self, x: Element, y: Element) -> Element {
        self.ldiv[x * self.order + y] as usize
    }

    /// Unchecked right division `y / x`.
    #[inline]
    pub fn rdiv(&self, y: Element, x: Element) -> Element {
        self.rdiv[x * self.order + y] as usize
    }

    fn check(&self, x: Element) -> Result<()> {
        if x < self.order {
            Ok(())
        } else {
            Err(Error::InvalidElement { element: x, order: self.order })
        }
    }

    /// Checked product.
    pub fn multiply(&self, x: Element, y: Element) -> Result<Element> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.mul(x, y))
    }

    /// Checked division. `Left` gives `x \ y`, `Right` gives `y / x`.
    pub fn divide(&self, side: Side, x: Element, y: Element) -> Result<Element> {
        self.check(x)?;
        self.check(y)?;
        Ok(match side {
            Side::Left => self.ldiv(x, y),
            Side::Right => self.rdiv(y, x),
        })
    }

    pub fn cells(&self) -> &[u16] {
        &self.cells
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.cells.chunks(self.order).map(|r| r.iter().map(|&v| v as usize).collect()).collect()
    }

    /// Table entries as little-endian bytes; used as a sort key.
    pub fn table_bytes(&self) -> Vec<u8> {
        if self.order <= 256 {
            self.cells.iter().map(|&v| v as u8).collect()
        } else {
            self.cells.iter().flat_map(|v| v.to_le_bytes()).collect()
        }
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.order;
        (0..n).all(|x| (x + 1..n).all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    pub fn is_associative(&self) -> bool {
        let n = self.order;
        (1..n).all(|x| (1..n).all(|y| {
            let xy = self.mul(x, y);
            (1..n).all(|z| self.mul(xy, z) == self.mul(x, self.mul(y, z)))
        }))
    }

    /// Is the loop an abelian group?
    pub fn is_abelian_group(&self) -> bool {
        self.is_commutative() && self.is_associative()
    }

    /// Multiplicative closure of `{x}` together with the neutral element.
    fn monogenic_closure(&self, x: Element) -> Vec<Element> {
        let mut members = vec![0usize, x];
        members.dedup();
        let mut inside = vec![false; self.order];
        for &m in &members {
            inside[m] = true;
        }
        let mut i = 0;
        while i < members.len() {
            let a = members[i];
            for j in 0..=i {
                let b = members[j];
                for c in [self.mul(a, b), self.mul(b, a)] {
                    if !inside[c] {
                        inside[c] = true;
                        members.push(c);
                    }
                }
            }
            i += 1;
        }
        members
    }

    /// Every single-generated subloop is associative.
    pub fn is_power_associative(&self) -> bool {
        *self.power_associative.get_or_init(|| {
            (0..self.order).all(|x| {
                let s = self.monogenic_closure(x);
                s.iter().all(|&a| {
                    s.iter().all(|&b| {
                        let ab = self.mul(a, b);
                        s.iter().all(|&c| self.mul(ab, c) == self.mul(a, self.mul(b, c)))
                    })
                })
            })
        })
    }

    fn left_power_order(&self, x: Element) -> usize {
        let mut p = x;
        let mut m = 1;
        while p != 0 {
            p = self.mul(x, p);
            m += 1;
            if m > self.order {
                return 0;
            }
        }
        m
    }

    /// Least `m ≥ 1` with `x^m = 1`, using left powers.
    pub fn element_order(&self, x: Element) -> Result<usize> {
        self.check(x)?;
        if !self.is_power_associative() {
            return Err(Error::NotPowerAssociative);
        }
        Ok(self.left_power_order(x))
    }

    /// Orders of all elements.
    pub fn element_orders(&self) -> Result<Vec<usize>> {
        if !self.is_power_associative() {
            return Err(Error::NotPowerAssociative);
        }
        Ok((0..self.order).map(|x| self.left_power_order(x)).collect())
    }

    /// Least common multiple of all element orders.
    pub fn exponent(&self) -> Result<usize> {
        Ok(self.element_orders()?.into_iter().fold(1, lcm))
    }

    /// Left power `x^m` with `x^0 = 1`, `x^{k+1} = x·x^k`.
    pub fn power(&self, x: Element, m: usize) -> Element {
        let mut p = 0;
        for _ in 0..m {
            p = self.mul(x, p);
        }
        p
    }

    /// Left power cycle lengths without the power-associativity precheck; `0`
    /// marks an element whose left powers never return to `1`.
    pub(crate) fn left_power_profile(&self) -> Vec<usize> {
        (0..self.order).map(|x| self.left_power_order(x)).collect()
    }

    /// Componentwise product; the pair `(a, b)` has index `a·|L2| + b`.
    pub fn direct_product(&self, other: &LoopTable) -> LoopTable {
        let m = other.order;
        Self::from_fn(self.order * m, |x, y| {
            self.mul(x / m, y / m) * m + other.mul(x % m, y % m)
        })
        .expect("direct products of loops are loops")
    }

    /// Serialises to the `ALOOP v1` text format.
    pub fn to_aloop_string(&self) -> String {
        let n = self.order;
        let mut out = String::with_capacity(n * n * 4 + 16);
        out.push_str("ALOOP v1\n");
        let _ = writeln!(out, "n={n}");
        for row in self.cells.chunks(n) {
            let mut first = true;
            for v in row {
                if !first {
                    out.push(' ');
                }
                first = false;
                let _ = write!(out, "{v}");
            }
            out.push('\n');
        }
        out
    }

    /// Parses the `ALOOP v1` text format. Comment lines start with `#`.
    pub fn parse_aloop(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim_start().starts_with('#') && !l.trim().is_empty());
        let (_, header) = lines.next().ok_or_else(|| Error::ParseError("empty input".into()))?;
        if header.trim() != "ALOOP v1" {
            return Err(Error::ParseError(format!("line 1: expected `ALOOP v1`, found `{}`", header.trim())));
        }
        let (ln, size) = lines.next().ok_or_else(|| Error::ParseError("missing `n=` line".into()))?;
        let n: usize = size
            .trim()
            .strip_prefix("n=")
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(|| Error::ParseError(format!("line {}: expected `n=<order>`", ln + 1)))?;
        if n == 0 || n > MAX_ORDER {
            return Err(Error::ParseError(format!("line {}: unsupported order {n}", ln + 1)));
        }
        let mut cells = Vec::with_capacity(n * n);
        for r in 0..n {
            let (ln, line) = lines
                .next()
                .ok_or_else(|| Error::ParseError(format!("expected {n} table rows, found {r}")))?;
            let row: Vec<&str> = line.split_whitespace().collect();
            if row.len() != n {
                return Err(Error::ParseError(format!(
                    "line {}: row {r} has {} entries, expected {n}",
                    ln + 1,
                    row.len()
                )));
            }
            for (c, tok) in row.iter().enumerate() {
                let v: usize = tok.parse().map_err(|_| {
                    Error::ParseError(format!("line {}: row {r} column {c}: bad integer `{tok}`", ln + 1))
                })?;
                if v >= n {
                    return Err(Error::ParseError(format!(
                        "line {}: row {r} column {c}: entry {v} out of range",
                        ln + 1
                    )));
                }
                cells.push(v as u16);
            }
        }
        if let Some((ln, _)) = lines.next() {
            return Err(Error::ParseError(format!("line {}: trailing data after table", ln + 1)));
        }
        Self::from_cells(n, cells).map_err(|e| match e {
            Error::NotLatin(msg) => Error::ParseError(format!("not a Latin square: {msg}")),
            Error::NoNeutral => Error::ParseError("element 0 is not neutral".into()),
            other => other,
        })
    }
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// Mixed-radix decoding, first coordinate most significant.
pub fn decode_mixed(mut x: usize, moduli: &[usize]) -> Vec<usize> {
    let mut out = vec![0; moduli.len()];
    for i in (0..moduli.len()).rev() {
        out[i] = x % moduli[i];
        x /= moduli[i];
    }
    out
}

/// Mixed-radix encoding, first coordinate most significant.
pub fn encode_mixed(xs: &[usize], moduli: &[usize]) -> usize {
    xs.iter().zip(moduli).fold(0, |acc, (x, m)| acc * m + x)
}

/// Lists the abelian groups of order `n` as cyclic-factor moduli lists
/// (invariant factors of each Sylow subgroup, largest prime first).
pub fn abelian_groups_of_order(n: usize) -> Vec<Vec<usize>> {
    fn partitions(k: usize, max: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for first in (1..=k.min(max)).rev() {
            for mut rest in partitions(k - first, first) {
                rest.insert(0, first);
                out.push(rest);
            }
        }
        out
    }
    let mut factors = Vec::new();
    let mut m = n;
    let mut p = 2;
    while m > 1 {
        if m % p == 0 {
            let mut k = 0;
            while m % p == 0 {
                m /= p;
                k += 1;
            }
            factors.push((p, k));
        }
        p += 1;
    }
    let mut result: Vec<Vec<usize>> = vec![vec![]];
    for (p, k) in factors {
        let mut next = Vec::new();
        for base in &result {
            for part in partitions(k, k) {
                let mut g = base.clone();
                g.extend(part.iter().map(|&e| p.pow(e as u32)));
                next.push(g);
            }
        }
        result = next;
    }
    if n == 1 {
        return vec![vec![1]];
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization_moves_the_neutral_element() {
        // Z3 with neutral element 2
        let rows = vec![vec![1, 2, 0], vec![2, 0, 1], vec![0, 1, 2]];
        let cells: Vec<u16> = rows.iter().flatten().map(|&v| v as u16).collect();
        assert!(matches!(LoopTable::from_cells(3, cells), Err(Error::NoNeutral)));
        let l = LoopTable::from_rows(&rows).unwrap();
        assert!(l.is_abelian_group() && l.order() == 3);
    }

    #[test]
    fn from_rows_examples() {
        let z2 = LoopTable::from_rows(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(z2.rows(), vec![vec![0, 1], vec![1, 0]]);
        assert!(matches!(
            LoopTable::from_rows(&[vec![0, 1], vec![0, 1]]),
            Err(Error::NotLatin(_))
        ));
        let relabelled = LoopTable::from_rows(&[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(relabelled.rows(), vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn no_neutral_is_rejected() {
        // Latin square without identity row
        let rows = vec![vec![1, 2, 0], vec![2, 0, 1], vec![0, 1, 2]];
        assert!(LoopTable::from_rows(&rows).is_ok());
        let rows = vec![vec![1, 0, 2], vec![2, 1, 0], vec![0, 2, 1]];
        assert_eq!(LoopTable::from_rows(&rows), Err(Error::NoNeutral));
    }

    #[test]
    fn invalid_elements() {
        let z3 = LoopTable::cyclic(3);
        assert!(matches!(z3.multiply(3, 0), Err(Error::InvalidElement { .. })));
        assert!(matches!(z3.divide(Side::Left, 0, 7), Err(Error::InvalidElement { .. })));
        assert_eq!(z3.multiply(0, 2), Ok(2));
        assert_eq!(z3.divide(Side::Left, 2, 2), Ok(0));
    }

    #[test]
    fn divisions_invert_multiplication() {
        let l = LoopTable::abelian(&[4, 2]);
        for x in 0..8 {
            for y in 0..8 {
                assert_eq!(l.mul(x, l.ldiv(x, y)), y);
                assert_eq!(l.mul(l.rdiv(y, x), x), y);
            }
        }
    }

    #[test]
    fn orders_and_exponents() {
        let z = LoopTable::elementary_abelian(2, 3);
        assert_eq!(z.exponent(), Ok(2));
        assert_eq!(z.element_order(0), Ok(1));
        let z12 = LoopTable::cyclic(12);
        assert_eq!(z12.element_order(8), Ok(3));
        let prod = LoopTable::cyclic(4).direct_product(&LoopTable::cyclic(6));
        assert_eq!(prod.exponent(), Ok(12));
    }

    #[test]
    fn product_with_trivial_loop_is_identical() {
        let l = LoopTable::abelian(&[2, 4]);
        assert_eq!(l.direct_product(&LoopTable::trivial()), l);
    }

    #[test]
    fn aloop_text_round_trip() {
        let l = LoopTable::abelian(&[3, 3]);
        let text = l.to_aloop_string();
        let back = LoopTable::parse_aloop(&text).unwrap();
        assert_eq!(back, l);
        assert_eq!(back.to_aloop_string(), text);
        let commented = format!("# a comment\n{text}");
        assert_eq!(LoopTable::parse_aloop(&commented).unwrap(), l);
    }

    #[test]
    fn parse_reports_location() {
        let bad = "ALOOP v1\nn=2\n0 1\n0 1\n";
        match LoopTable::parse_aloop(bad) {
            Err(Error::ParseError(msg)) => assert!(msg.contains("column"), "{msg}"),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(LoopTable::parse_aloop("ALOOP v2\n"), Err(Error::ParseError(_))));
    }

    #[test]
    fn abelian_group_counts() {
        let counts: Vec<usize> = [8, 16, 24, 27, 32].iter().map(|&n| abelian_groups_of_order(n).len()).collect();
        assert_eq!(counts, vec![3, 5, 3, 3, 7]);
        for n in [8, 12, 16, 27] {
            for g in abelian_groups_of_order(n) {
                assert_eq!(g.iter().product::<usize>(), n);
            }
        }
    }
}

//! Backtracking isomorphism search driven by generator images.
//!
//! A loop is generated by a short list of elements, so a homomorphism is
//! fixed by where those go. The search assigns images to generators one at a
//! time and closes the partial map under multiplication, failing as soon as
//! two products disagree or colours do not match.

use crate::perm::Permutation;
use crate::table::LoopTable;

const UNSET: u16 = u16::MAX;

/// Generators of `l`, each chosen outside the closure of its predecessors
/// with the rarest colour (ties by smallest index).
pub(crate) fn generator_sequence(l: &LoopTable, colors: &[u64]) -> Vec<usize> {
    let n = l.order();
    let mut freq = std::collections::HashMap::new();
    for &c in colors {
        *freq.entry(c).or_insert(0usize) += 1;
    }
    let mut inside = vec![false; n];
    inside[0] = true;
    let mut members = vec![0usize];
    let mut gens = Vec::new();
    while members.len() < n {
        let g = (0..n).filter(|&x| !inside[x]).min_by_key(|&x| (freq[&colors[x]], x)).expect("outside element");
        gens.push(g);
        inside[g] = true;
        members.push(g);
        let mut i = 0;
        while i < members.len() {
            let a = members[i];
            for j in 0..=i {
                let b = members[j];
                for c in [l.mul(a, b), l.mul(b, a)] {
                    if !inside[c] {
                        inside[c] = true;
                        members.push(c);
                    }
                }
            }
            i += 1;
        }
    }
    gens
}

pub(crate) struct Matcher<'a> {
    a: &'a LoopTable,
    b: &'a LoopTable,
    ca: &'a [u64],
    cb: &'a [u64],
    fwd: Vec<u16>,
    bwd: Vec<u16>,
    mapped: Vec<usize>,
    queue: Vec<(usize, usize)>,
}

impl<'a> Matcher<'a> {
    pub(crate) fn new(a: &'a LoopTable, b: &'a LoopTable, ca: &'a [u64], cb: &'a [u64]) -> Self {
        let n = a.order();
        let mut m = Matcher {
            a,
            b,
            ca,
            cb,
            fwd: vec![UNSET; n],
            bwd: vec![UNSET; n],
            mapped: Vec::with_capacity(n),
            queue: Vec::new(),
        };
        let ok = m.assign(0, 0);
        debug_assert!(ok);
        m
    }

    pub(crate) fn is_mapped(&self, x: usize) -> bool {
        self.fwd[x] != UNSET
    }

    pub(crate) fn image_used(&self, y: usize) -> bool {
        self.bwd[y] != UNSET
    }

    pub(crate) fn mark(&self) -> usize {
        self.mapped.len()
    }

    pub(crate) fn undo(&mut self, mark: usize) {
        for &x in &self.mapped[mark..] {
            let y = self.fwd[x] as usize;
            self.fwd[x] = UNSET;
            self.bwd[y] = UNSET;
        }
        self.mapped.truncate(mark);
    }

    /// Adds `x ↦ y` and closes the map under products. On failure the map
    /// may be partially extended; callers undo to a mark.
    pub(crate) fn assign(&mut self, x: usize, y: usize) -> bool {
        self.queue.clear();
        self.queue.push((x, y));
        while let Some((x, y)) = self.queue.pop() {
            let fx = self.fwd[x];
            if fx != UNSET {
                if fx as usize != y {
                    return false;
                }
                continue;
            }
            if self.bwd[y] != UNSET || self.ca[x] != self.cb[y] {
                return false;
            }
            self.fwd[x] = y as u16;
            self.bwd[y] = x as u16;
            self.mapped.push(x);
            for k in 0..self.mapped.len() {
                let m = self.mapped[k];
                let my = self.fwd[m] as usize;
                for (p, q) in [(self.a.mul(x, m), self.b.mul(y, my)), (self.a.mul(m, x), self.b.mul(my, y))] {
                    let fp = self.fwd[p];
                    if fp == UNSET {
                        self.queue.push((p, q));
                    } else if fp as usize != q {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub(crate) fn permutation(&self) -> Permutation {
        Permutation::from_u16_unchecked(self.fwd.clone())
    }

    /// Extends the current map through `gens[level..]`; stops at the first
    /// complete isomorphism.
    pub(crate) fn extend(&mut self, gens: &[usize], level: usize) -> bool {
        if level == gens.len() {
            return self.mapped.len() == self.a.order();
        }
        let g = gens[level];
        if self.is_mapped(g) {
            return self.extend(gens, level + 1);
        }
        let color = self.ca[g];
        for y in 0..self.b.order() {
            if self.cb[y] != color || self.image_used(y) {
                continue;
            }
            let mark = self.mark();
            if self.assign(g, y) && self.extend(gens, level + 1) {
                return true;
            }
            self.undo(mark);
        }
        false
    }
}

fn sorted(colors: &[u64]) -> Vec<u64> {
    let mut v = colors.to_vec();
    v.sort_unstable();
    v
}

/// Isomorphism search with precomputed colours.
pub(crate) fn find_with_colors(a: &LoopTable, b: &LoopTable, ca: &[u64], cb: &[u64]) -> Option<Permutation> {
    if a.order() != b.order() || sorted(ca) != sorted(cb) {
        return None;
    }
    let gens = generator_sequence(a, ca);
    let mut m = Matcher::new(a, b, ca, cb);
    if m.extend(&gens, 0) {
        Some(m.permutation())
    } else {
        None
    }
}

/// Generators of `Aut(l)`.
///
/// Works down the generator sequence `g_1..g_k` from the last generator. At
/// level `i` it looks for automorphisms fixing `g_1..g_{i-1}` and sending
/// `g_i` to each point not yet in the orbit of `g_i` under the automorphisms
/// found so far. The result generates the whole group.
pub(crate) fn automorphism_generators_with(l: &LoopTable, colors: &[u64]) -> Vec<Permutation> {
    let n = l.order();
    let gens = generator_sequence(l, colors);
    let mut found: Vec<Permutation> = Vec::new();
    for i in (0..gens.len()).rev() {
        let g = gens[i];
        let mut orbit = orbit_of(g, &found, n);
        for c in 0..n {
            if orbit[c] || colors[c] != colors[g] {
                continue;
            }
            let mut m = Matcher::new(l, l, colors, colors);
            let mut ok = gens[..i].iter().all(|&h| m.assign(h, h));
            ok = ok && m.assign(g, c) && m.extend(&gens, i + 1);
            if ok {
                found.push(m.permutation());
                orbit = orbit_of(g, &found, n);
            }
        }
    }
    found
}

fn orbit_of(x: usize, gens: &[Permutation], n: usize) -> Vec<bool> {
    let mut seen = vec![false; n];
    seen[x] = true;
    let mut stack = vec![x];
    while let Some(p) = stack.pop() {
        for g in gens {
            let q = g.apply(p);
            if !seen[q] {
                seen[q] = true;
                stack.push(q);
            }
        }
    }
    seen
}

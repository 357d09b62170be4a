//! Permutations of loop elements and the groups they generate.

use std::collections::HashSet;

use crate::error::{Error, Result};

/// A bijection of `0..n`, stored as its image list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u16>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n as u16).collect() }
    }

    /// Validates that `images` is a bijection of `0..images.len()`.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v >= n || seen[v] {
                return Err(Error::NotBijection);
            }
            seen[v] = true;
        }
        Ok(Permutation { images: images.into_iter().map(|v| v as u16).collect() })
    }

    pub(crate) fn from_u16_unchecked(images: Vec<u16>) -> Self {
        Permutation { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&v| v as usize).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v as usize)
    }

    /// `self` followed by `other`: `x ↦ other(self(x))`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation { images: self.images.iter().map(|&v| other.images[v as usize]).collect() }
    }

    /// Usual composition `self ∘ other`: `x ↦ self(other(x))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        other.then(self)
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u16; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v as usize] = i as u16;
        }
        Permutation { images: inv }
    }

    /// Fixed points.
    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.degree()).filter(|&i| self.apply(i) == i).collect()
    }
}

#[derive(Debug, Clone)]
struct Level {
    base: usize,
    gens: Vec<Permutation>,
    orbit: Vec<usize>,
    // transversal[p] maps `base` to `p`, stored with its inverse
    transversal: Vec<Option<(Permutation, Permutation)>>,
}

/// A permutation group given by generators, with a stabiliser chain for order
/// and membership.
#[derive(Debug, Clone)]
pub struct PermutationGroup {
    degree: usize,
    generators: Vec<Permutation>,
    levels: Vec<Level>,
}

impl PermutationGroup {
    /// The group generated by `gens` acting on `0..degree`.
    pub fn generate(degree: usize, gens: &[Permutation]) -> Result<Self> {
        for g in gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch { expected: degree, got: g.degree() });
            }
        }
        let mut group = PermutationGroup { degree, generators: Vec::new(), levels: Vec::new() };
        for g in gens {
            if !group.contains(g) {
                group.generators.push(g.clone());
                group.extend(0, g.clone());
            }
        }
        Ok(group)
    }

    /// Convenience: the group generated by a non-empty list of same-degree
    /// permutations.
    pub fn generated_group(gens: &[Permutation]) -> Result<Self> {
        let degree = gens.first().map(|g| g.degree()).unwrap_or(0);
        Self::generate(degree, gens)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    fn strip(&self, g: &Permutation, start: usize) -> (Permutation, usize) {
        let mut h = g.clone();
        for (j, level) in self.levels.iter().enumerate().skip(start) {
            let b = h.apply(level.base);
            match &level.transversal[b] {
                None => return (h, j),
                Some((_, u_inv)) => h = h.then(u_inv),
            }
        }
        let depth = self.levels.len();
        (h, depth)
    }

    fn extend(&mut self, i: usize, g: Permutation) {
        if i == self.levels.len() {
            let base = (0..self.degree).find(|&x| g.apply(x) != x).expect("non-identity generator");
            let mut transversal = vec![None; self.degree];
            let id = Permutation::identity(self.degree);
            transversal[base] = Some((id.clone(), id));
            self.levels.push(Level { base, gens: Vec::new(), orbit: vec![base], transversal });
        }
        self.levels[i].gens.push(g);
        let old_len = self.levels[i].orbit.len();
        let newest = self.levels[i].gens.len() - 1;
        // (old point, old generator) pairs were handled when those were added
        let mut k = 0;
        while k < self.levels[i].orbit.len() {
            let p = self.levels[i].orbit[k];
            let first_gen = if k < old_len { newest } else { 0 };
            let ngens = self.levels[i].gens.len();
            for s in first_gen..ngens {
                let gen = self.levels[i].gens[s].clone();
                let up = self.levels[i].transversal[p].as_ref().expect("orbit point").0.clone();
                let q = gen.apply(p);
                let candidate = up.then(&gen);
                match &self.levels[i].transversal[q] {
                    None => {
                        let inv = candidate.inverse();
                        self.levels[i].transversal[q] = Some((candidate, inv));
                        self.levels[i].orbit.push(q);
                    }
                    Some((_, uq_inv)) => {
                        let schreier = candidate.then(uq_inv);
                        if schreier.is_identity() {
                            continue;
                        }
                        let (h, _) = self.strip(&schreier, i + 1);
                        if !h.is_identity() {
                            self.extend(i + 1, h);
                        }
                    }
                }
            }
            k += 1;
        }
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        self.strip(g, 0).0.is_identity()
    }

    /// All group elements, by breadth-first closure. Intended for small groups.
    pub fn elements(&self) -> Vec<Permutation> {
        let id = Permutation::identity(self.degree);
        let mut seen: HashSet<Permutation> = HashSet::new();
        seen.insert(id.clone());
        let mut out = vec![id];
        let mut i = 0;
        while i < out.len() {
            for g in &self.generators {
                let h = out[i].then(g);
                if seen.insert(h.clone()) {
                    out.push(h);
                }
            }
            i += 1;
        }
        out
    }

    /// Picks a small generating subset of the listed elements, greedily in
    /// list order.
    pub fn from_elements(degree: usize, elements: &[Permutation]) -> Result<Self> {
        Self::generate(degree, elements)
    }
}

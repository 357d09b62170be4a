//! Extensions of `GF(2)ⁿ` by `GF(2)` from trilinear forms.

use serde::{Deserialize, Serialize};

use crate::cocycle::CocycleVector;
use crate::error::{Error, Result};
use crate::structure::{nucleus, NucleusKind};
use crate::table::LoopTable;

use super::extension::{build_central_extension, ExtensionSpec};

/// A trilinear form on `GF(2)ⁿ` given by its values on basis triples.
/// Vectors are bit strings with the first basis vector most significant.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TrilinearForm {
    dim: usize,
    values: Vec<u8>,
}

impl TrilinearForm {
    pub fn zero(dim: usize) -> Self {
        TrilinearForm { dim, values: vec![0; dim * dim * dim] }
    }

    /// `values[i·n² + j·n + k]` is the value on `(e_i, e_j, e_k)`, 0-based.
    pub fn from_values(dim: usize, values: Vec<u8>) -> Result<Self> {
        if values.len() != dim * dim * dim || values.iter().any(|&v| v > 1) {
            return Err(Error::InvalidParameters("trilinear form needs n³ bits".into()));
        }
        Ok(TrilinearForm { dim, values })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }

    pub fn basis_value(&self, i: usize, j: usize, k: usize) -> u8 {
        self.values[(i * self.dim + j) * self.dim + k]
    }

    pub fn set_basis_value(&mut self, i: usize, j: usize, k: usize, v: u8) {
        let n = self.dim;
        self.values[(i * n + j) * n + k] = v & 1;
    }

    #[inline]
    fn coord(&self, v: usize, i: usize) -> bool {
        (v >> (self.dim - 1 - i)) & 1 == 1
    }

    /// Evaluation by multilinear expansion.
    pub fn eval(&self, x: usize, y: usize, z: usize) -> u8 {
        let n = self.dim;
        let mut acc = 0u8;
        for i in (0..n).filter(|&i| self.coord(x, i)) {
            for j in (0..n).filter(|&j| self.coord(y, j)) {
                for k in (0..n).filter(|&k| self.coord(z, k)) {
                    acc ^= self.basis_value(i, j, k);
                }
            }
        }
        acc
    }

    /// `g(x,y,z) = g(z,y,x)` on all basis triples.
    pub fn is_13_symmetric(&self) -> bool {
        let n = self.dim;
        (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| self.basis_value(i, j, k) == self.basis_value(k, j, i))))
    }

    /// Is the bilinear form `g(x,−,−)` symmetric?
    pub fn slice_is_symmetric(&self, x: usize) -> bool {
        let n = self.dim;
        let e = |i: usize| 1usize << (n - 1 - i);
        (0..n).all(|j| (0..n).all(|k| self.eval(x, e(j), e(k)) == self.eval(x, e(k), e(j))))
    }

    /// `g(x, x+y, y) = g(y, x+y, x)` for all vectors.
    pub fn satisfies_extension_hypothesis(&self) -> bool {
        let size = 1usize << self.dim;
        (0..size).all(|x| (0..size).all(|y| self.eval(x, x ^ y, y) == self.eval(y, x ^ y, x)))
    }

    /// The cocycle `θ(x,y) = g(x, x+y, y)`.
    pub fn cocycle(&self) -> CocycleVector {
        let size = 1usize << self.dim;
        CocycleVector::from_fn(size, 2, |x, y| self.eval(x, x ^ y, y) as i64)
    }
}

/// The cyclic form with `g(e_i, e_i, e_{i+1}) = 1` (indices mod `n`) and
/// zero on every other basis triple.
pub fn newforms_form(n: usize) -> Result<TrilinearForm> {
    if n < 3 {
        return Err(Error::DimensionTooSmall(n));
    }
    let mut f = TrilinearForm::zero(n);
    for i in 0..n {
        f.set_basis_value(i, i, (i + 1) % n, 1);
    }
    Ok(f)
}

/// `g'(x,y,z) = g(x,y,z) + g(z,y,x)`.
pub fn symmetrize_13(f: &TrilinearForm) -> TrilinearForm {
    let n = f.dim;
    let mut out = TrilinearForm::zero(n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                out.set_basis_value(i, j, k, f.basis_value(i, j, k) ^ f.basis_value(k, j, i));
            }
        }
    }
    out
}

/// `GF(2)ⁿ × GF(2)` with `(x,a)(y,b) = (x+y, a+b+g(x,x+y,y))`; the pair
/// `(x,a)` has index `2x + a`.
pub fn build_trilinear_extension(f: &TrilinearForm) -> Result<LoopTable> {
    if !f.satisfies_extension_hypothesis() {
        return Err(Error::HypothesisViolated("g(x,x+y,y) = g(y,x+y,x) fails".into()));
    }
    let spec = ExtensionSpec::new(LoopTable::elementary_abelian(2, f.dim), 2, f.cocycle())?;
    build_central_extension(&spec)
}

/// The middle nucleus of a trilinear extension compared with two candidate
/// descriptions in terms of the form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MiddleNucleusReport {
    pub computed: Vec<usize>,
    /// Members predicted by `g(y,x,z) = g(x,z,y)` for all `x, z`.
    pub cyclic_rule: Vec<usize>,
    /// Members predicted by `g(y,x,z) = g(y,z,x)` for all `x, z`.
    pub slice_rule: Vec<usize>,
    pub cyclic_rule_matches: bool,
    pub slice_rule_matches: bool,
}

pub fn middle_nucleus_report(f: &TrilinearForm) -> Result<MiddleNucleusReport> {
    let q = build_trilinear_extension(f)?;
    let computed = nucleus(&q, NucleusKind::Middle).members().to_vec();
    let size = 1usize << f.dim;
    let all_pairs = |pred: &dyn Fn(usize, usize, usize) -> bool| -> Vec<usize> {
        let mut v: Vec<usize> = (0..size)
            .filter(|&y| (0..size).all(|x| (0..size).all(|z| pred(y, x, z))))
            .flat_map(|y| [2 * y, 2 * y + 1])
            .collect();
        v.sort_unstable();
        v
    };
    let cyclic_rule = all_pairs(&|y, x, z| f.eval(y, x, z) == f.eval(x, z, y));
    let slice_rule = all_pairs(&|y, x, z| f.eval(y, x, z) == f.eval(y, z, x));
    Ok(MiddleNucleusReport {
        cyclic_rule_matches: cyclic_rule == computed,
        slice_rule_matches: slice_rule == computed,
        computed,
        cyclic_rule,
        slice_rule,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::{is_a_loop, nucleus_sizes};

    #[test]
    fn newforms_values() {
        let f = newforms_form(3).unwrap();
        assert_eq!(f.basis_value(2, 2, 0), 1);
        assert_eq!(f.values().iter().filter(|&&v| v == 1).count(), 3);
        assert!(!f.is_13_symmetric());
        assert!((1..8).all(|x| !f.slice_is_symmetric(x)));
        assert!(matches!(newforms_form(2), Err(Error::DimensionTooSmall(2))));
    }

    #[test]
    fn symmetrised_form_is_symmetric() {
        let f = symmetrize_13(&newforms_form(3).unwrap());
        assert!(f.is_13_symmetric());
        assert!((1..8).all(|x| !f.slice_is_symmetric(x)));
        assert!(symmetrize_13(&f).values().iter().all(|&v| v == 0));
    }

    #[test]
    fn small_middle_nucleus_example() {
        let f = symmetrize_13(&newforms_form(3).unwrap());
        let q = build_trilinear_extension(&f).unwrap();
        assert!(is_a_loop(&q) && q.is_commutative());
        assert_eq!(q.exponent().unwrap(), 2);
        let s = nucleus_sizes(&q);
        assert_eq!((s[1], s[3]), (2, 2));
    }

    #[test]
    fn zero_form_gives_elementary_abelian_group() {
        let q = build_trilinear_extension(&TrilinearForm::zero(3)).unwrap();
        assert!(q.is_abelian_group());
        assert_eq!(q.exponent().unwrap(), 2);
    }

    #[test]
    fn hypothesis_is_enforced() {
        assert!(matches!(
            build_trilinear_extension(&newforms_form(3).unwrap()),
            Err(Error::HypothesisViolated(_))
        ));
    }

    #[test]
    fn both_nucleus_rules_hold_for_symmetric_forms() {
        let n = 3;
        let free: Vec<(usize, usize, usize)> =
            (0..n).flat_map(|i| (0..n).flat_map(move |j| (i..n).map(move |k| (i, j, k)))).collect();
        for mask in (0u32..1 << free.len()).step_by(37) {
            let mut f = TrilinearForm::zero(n);
            for (bit, &(i, j, k)) in free.iter().enumerate() {
                let v = ((mask >> bit) & 1) as u8;
                f.set_basis_value(i, j, k, v);
                f.set_basis_value(k, j, i, v);
            }
            let r = middle_nucleus_report(&f).unwrap();
            assert!(r.cyclic_rule_matches && r.slice_rule_matches, "mask {mask}");
        }
    }
}

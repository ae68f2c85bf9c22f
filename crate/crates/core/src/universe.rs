//! A finite, divisor-closed set of elements with its division table.
//!
//! Elements are indexed in canonical order. Because the norm is
//! multiplicative, every factorization `x = u·v` has `norm(u)² ≤ norm(x)` for
//! one of the two factors, so scanning candidates up to the square root
//! finds every divisor pair.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::monoid::{Element, Limits, MonoidDescriptor, Norm};

#[derive(Debug, Clone)]
pub(crate) struct Universe {
    pub elements: Vec<Element>,
    index: HashMap<Element, usize>,
    /// For each element, `(divisor, cofactor)` index pairs sorted by divisor.
    divisors: Vec<Vec<(usize, usize)>>,
}

impl Universe {
    /// All elements with norm ≤ `bound`.
    pub fn up_to(desc: MonoidDescriptor, bound: &Norm, limits: &Limits) -> Result<Self> {
        Self::from_sorted(desc.enumerate_up_to(bound, limits)?)
    }

    /// The divisors of `x`; this set is closed under taking divisors.
    pub fn divisors_of(x: &Element, limits: &Limits) -> Result<Self> {
        Self::from_sorted(x.divisors(limits)?)
    }

    fn from_sorted(elements: Vec<Element>) -> Result<Self> {
        let index: HashMap<Element, usize> = elements
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, e)| (e, i))
            .collect();
        let mut divisors: Vec<Vec<(usize, usize)>> = vec![Vec::new(); elements.len()];
        for (i, x) in elements.iter().enumerate() {
            let norm_x = x.norm();
            for (j, u) in elements.iter().enumerate() {
                if u.mul_unchecked(u).norm() > norm_x {
                    break;
                }
                if let Some(v) = x.try_divide_unchecked(u) {
                    let k = *index.get(&v).ok_or_else(|| {
                        Error::Precondition(format!("set is not divisor-closed: {v} | {x} is missing"))
                    })?;
                    divisors[i].push((j, k));
                    if k != j {
                        divisors[i].push((k, j));
                    }
                }
            }
            divisors[i].sort_unstable();
        }
        Ok(Universe {
            elements,
            index,
            divisors,
        })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn index_of(&self, x: &Element) -> Option<usize> {
        self.index.get(x).copied()
    }

    #[cfg(test)]
    pub fn divisor_pairs(&self, i: usize) -> &[(usize, usize)] {
        &self.divisors[i]
    }

    pub fn divides(&self, d: usize, x: usize) -> bool {
        self.divisors[x].binary_search_by(|&(u, _)| u.cmp(&d)).is_ok()
    }

    pub fn is_identity(&self, i: usize) -> bool {
        self.elements[i].is_identity()
    }

    pub fn is_irreducible(&self, i: usize) -> bool {
        !self.is_identity(i) && self.divisors[i].len() == 2
    }

    /// Common divisors of `x` and `y` as `(divisor, x/divisor, y/divisor)`.
    pub fn common_divisors(&self, x: usize, y: usize) -> Vec<(usize, usize, usize)> {
        let (dx, dy) = (&self.divisors[x], &self.divisors[y]);
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < dx.len() && j < dy.len() {
            match dx[i].0.cmp(&dy[j].0) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    out.push((dx[i].0, dx[i].1, dy[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out
    }

    /// Common divisors that no other common divisor is a proper multiple of.
    pub fn maximal_common_divisors(&self, common: &[usize]) -> Vec<usize> {
        common
            .iter()
            .copied()
            .filter(|&c| !common.iter().any(|&o| o != c && self.divides(c, o)))
            .collect()
    }

    /// All factorizations of element `i` into irreducibles, each a
    /// nondecreasing list of indices. Stops after `cap` factorizations.
    pub fn factorizations(&self, i: usize, cap: usize) -> Vec<Vec<usize>> {
        let mut memo = HashMap::new();
        let mut all = self.factor_from(i, 0, &mut memo);
        all.truncate(cap);
        all
    }

    fn factor_from(
        &self,
        i: usize,
        min: usize,
        memo: &mut HashMap<(usize, usize), Vec<Vec<usize>>>,
    ) -> Vec<Vec<usize>> {
        if self.is_identity(i) {
            return vec![Vec::new()];
        }
        if let Some(hit) = memo.get(&(i, min)) {
            return hit.clone();
        }
        let mut out = Vec::new();
        for &(d, q) in &self.divisors[i] {
            if d < min || !self.is_irreducible(d) {
                continue;
            }
            for mut rest in self.factor_from(q, d, memo) {
                rest.insert(0, d);
                out.push(rest);
            }
        }
        memo.insert((i, min), out.clone());
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    #[test]
    fn table_matches_pairwise_products() {
        let limits = Limits::default();
        for desc in [
            MonoidDescriptor::Naturals,
            MonoidDescriptor::congruence(1, 3).unwrap(),
            MonoidDescriptor::congruence(1, 4).unwrap(),
            MonoidDescriptor::quadratic(2).unwrap(),
            MonoidDescriptor::quadratic(3).unwrap(),
        ] {
            let u = Universe::up_to(desc, &Norm::integer(40u32), &limits).unwrap();
            let mut expected: Vec<Vec<(usize, usize)>> = vec![Vec::new(); u.len()];
            for (i, x) in u.elements.iter().enumerate() {
                for (j, y) in u.elements.iter().enumerate() {
                    if let Some(k) = u.index_of(&x.mul(y).unwrap()) {
                        expected[k].push((i, j));
                    }
                }
            }
            for (k, mut e) in expected.into_iter().enumerate() {
                e.sort_unstable();
                assert_eq!(u.divisor_pairs(k), e.as_slice(), "{desc} {}", u.elements[k]);
            }
        }
    }

    #[test]
    fn congruence_factorizations() {
        let desc = MonoidDescriptor::congruence(1, 3).unwrap();
        let u = Universe::divisors_of(&desc.int(100u32).unwrap(), &Limits::default()).unwrap();
        let top = u.index_of(&desc.int(100u32).unwrap()).unwrap();
        let facts: Vec<Vec<u64>> = u
            .factorizations(top, usize::MAX)
            .into_iter()
            .map(|f| f.iter().map(|&i| u.elements[i].as_int().unwrap().to_u64().unwrap()).collect())
            .collect();
        assert_eq!(facts, vec![vec![4, 25], vec![10, 10]]);
    }
}

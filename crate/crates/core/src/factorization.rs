//! Irreducibles, factorizations, algebraic GCDs and bounded surveys of the
//! three multiplicative properties (transitive proportion, algebraic GCDs,
//! unique factorization) plus Euclid's lemma.
//!
//! "Prime" in the examples of non-factorial monoids means irreducible:
//! no divisors except the identity and itself. The stronger "p | ab
//! implies p | a or p | b" sense is only exercised by
//! [`euclid_lemma_survey`].

use crate::error::{Error, Result};
use crate::monoid::{Element, Limits, MonoidDescriptor, Norm};
use crate::proportion::{transitivity_survey_in, TransitivityFailure};
use crate::universe::Universe;

pub fn is_irreducible(x: &Element, limits: &Limits) -> Result<bool> {
    if x.is_identity() {
        return Ok(false);
    }
    Ok(x.divisors(limits)?.len() == 2)
}

/// A multiset of irreducibles, stored in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Factorization {
    pub element: Element,
    pub factors: Vec<Element>,
}

impl Factorization {
    pub fn product(&self) -> Element {
        self.factors
            .iter()
            .fold(self.element.monoid().identity(), |acc, f| acc.mul_unchecked(f))
    }
}

/// Every factorization of `x` into irreducibles, without permutations.
/// The identity has exactly one, the empty product.
pub fn factorizations(x: &Element, limits: &Limits) -> Result<Vec<Factorization>> {
    let u = Universe::divisors_of(x, limits)?;
    let top = u.index_of(x).expect("x divides itself");
    let mut out: Vec<Factorization> = u
        .factorizations(top, usize::MAX)
        .into_iter()
        .map(|f| Factorization {
            element: x.clone(),
            factors: f.into_iter().map(|i| u.elements[i].clone()).collect(),
        })
        .collect();
    out.sort();
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GcdReport {
    pub pair: (Element, Element),
    pub common_divisors: Vec<Element>,
    /// Common divisors with no proper common multiple among the others.
    pub maximal_common_divisors: Vec<Element>,
    /// A common divisor that every common divisor divides, if one exists.
    pub algebraic_gcd: Option<Element>,
}

impl GcdReport {
    /// Common divisors other than the identity.
    pub fn nontrivial_common_divisors(&self) -> Vec<Element> {
        self.common_divisors
            .iter()
            .filter(|e| !e.is_identity())
            .cloned()
            .collect()
    }
}

pub fn algebraic_gcd(a: &Element, b: &Element, limits: &Limits) -> Result<GcdReport> {
    require_same(a, b)?;
    let da = a.divisors(limits)?;
    let db = b.divisors(limits)?;
    let common: Vec<Element> = da.into_iter().filter(|d| db.contains(d)).collect();
    let divides = |d: &Element, x: &Element| x.try_divide_unchecked(d).is_some();
    let maximal: Vec<Element> = common
        .iter()
        .filter(|c| !common.iter().any(|o| o != *c && divides(c, o)))
        .cloned()
        .collect();
    let algebraic_gcd = match maximal.as_slice() {
        [g] if common.iter().all(|c| divides(c, g)) => Some(g.clone()),
        _ => None,
    };
    Ok(GcdReport {
        pair: (a.clone(), b.clone()),
        common_divisors: common,
        maximal_common_divisors: maximal,
        algebraic_gcd,
    })
}

/// A property over a bounded sample: holds when no witness was found.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyFlag<W> {
    pub witness: Option<W>,
}

impl<W> PropertyFlag<W> {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }

    fn from_witness(witness: Option<W>) -> Self {
        PropertyFlag { witness }
    }
}

/// `p` is irreducible and divides `a·b` but neither factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EuclidLemmaFailure {
    pub p: Element,
    pub a: Element,
    pub b: Element,
}

impl EuclidLemmaFailure {
    pub fn verify(&self, limits: &Limits) -> Result<bool> {
        let product = self.a.mul(&self.b)?;
        Ok(is_irreducible(&self.p, limits)?
            && self.p.divides(&product)?
            && !self.p.divides(&self.a)?
            && !self.p.divides(&self.b)?)
    }
}

/// Checks every irreducible `p` and pair `a, b`, all of norm ≤ `bound`,
/// reporting the first `(p, a, b)` in canonical order with `p | ab`,
/// `p ∤ a` and `p ∤ b`.
pub fn euclid_lemma_survey(
    desc: MonoidDescriptor,
    bound: &Norm,
    limits: &Limits,
) -> Result<PropertyFlag<EuclidLemmaFailure>> {
    let u = Universe::up_to(desc, bound, limits)?;
    Ok(PropertyFlag::from_witness(euclid_lemma_in(&u)))
}

fn euclid_lemma_in(u: &Universe) -> Option<EuclidLemmaFailure> {
    let n = u.len();
    for p in (0..n).filter(|&p| u.is_irreducible(p)) {
        let prime = &u.elements[p];
        for a in (0..n).filter(|&a| !u.divides(p, a)) {
            // p | ab is symmetric in a and b, so b ≥ a finds the first witness.
            for b in (a..n).filter(|&b| !u.divides(p, b)) {
                let product = u.elements[a].mul_unchecked(&u.elements[b]);
                if product.try_divide_unchecked(prime).is_some() {
                    return Some(EuclidLemmaFailure {
                        p: prime.clone(),
                        a: u.elements[a].clone(),
                        b: u.elements[b].clone(),
                    });
                }
            }
        }
    }
    None
}

/// An element with more than one factorization into irreducibles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonUniqueFactorization {
    pub element: Element,
    pub factorizations: Vec<Factorization>,
}

impl NonUniqueFactorization {
    pub fn verify(&self, limits: &Limits) -> Result<bool> {
        let mut seen: Vec<&Vec<Element>> = Vec::new();
        for f in &self.factorizations {
            if f.element != self.element || f.product() != self.element {
                return Ok(false);
            }
            for factor in &f.factors {
                if !is_irreducible(factor, limits)? {
                    return Ok(false);
                }
            }
            let mut sorted = f.factors.clone();
            sorted.sort();
            if sorted != f.factors || seen.contains(&&f.factors) {
                return Ok(false);
            }
            seen.push(&f.factors);
        }
        Ok(seen.len() >= 2)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurveyReport {
    pub monoid: MonoidDescriptor,
    pub bound: Norm,
    pub pythagorean_transitive: PropertyFlag<TransitivityFailure>,
    pub algebraic_gcds_exist: PropertyFlag<GcdReport>,
    pub unique_factorization: PropertyFlag<NonUniqueFactorization>,
    pub euclid_lemma: PropertyFlag<EuclidLemmaFailure>,
}

impl SurveyReport {
    /// The three properties expected to be equivalent are all true or all false.
    pub fn flags_agree(&self) -> bool {
        let t = self.pythagorean_transitive.holds();
        t == self.algebraic_gcds_exist.holds() && t == self.unique_factorization.holds()
    }

    pub fn all_hold(&self) -> bool {
        self.pythagorean_transitive.holds()
            && self.algebraic_gcds_exist.holds()
            && self.unique_factorization.holds()
            && self.euclid_lemma.holds()
    }
}

/// Evaluates the three properties and Euclid's lemma over every element,
/// pair and chain within `bound`. Records the flags; asserts nothing.
pub fn three_property_survey(
    desc: MonoidDescriptor,
    bound: &Norm,
    limits: &Limits,
) -> Result<SurveyReport> {
    let u = Universe::up_to(desc, bound, limits)?;
    let transitivity = transitivity_survey_in(&u, bound, limits)?;

    let mut gcd_witness = None;
    'pairs: for j in 0..u.len() {
        for i in 0..=j {
            let common: Vec<usize> = u.common_divisors(i, j).into_iter().map(|c| c.0).collect();
            let maximal = u.maximal_common_divisors(&common);
            let ok = match maximal.as_slice() {
                [g] => common.iter().all(|&c| u.divides(c, *g)),
                _ => false,
            };
            if !ok {
                gcd_witness = Some(algebraic_gcd(&u.elements[i], &u.elements[j], limits)?);
                break 'pairs;
            }
        }
    }

    let mut factorization_witness = None;
    for i in 0..u.len() {
        if u.factorizations(i, 2).len() >= 2 {
            let element = u.elements[i].clone();
            let all = factorizations(&element, limits)?;
            factorization_witness = Some(NonUniqueFactorization {
                element,
                factorizations: all,
            });
            break;
        }
    }

    Ok(SurveyReport {
        monoid: desc,
        bound: bound.clone(),
        pythagorean_transitive: PropertyFlag::from_witness(transitivity.failures.into_iter().next()),
        algebraic_gcds_exist: PropertyFlag::from_witness(gcd_witness),
        unique_factorization: PropertyFlag::from_witness(factorization_witness),
        euclid_lemma: PropertyFlag::from_witness(euclid_lemma_in(&u)),
    })
}

pub(crate) fn require_same(a: &Element, b: &Element) -> Result<()> {
    if a.monoid() != b.monoid() {
        return Err(Error::DescriptorMismatch {
            left: a.monoid().to_string(),
            right: b.monoid().to_string(),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn c13() -> MonoidDescriptor {
        MonoidDescriptor::congruence(1, 3).unwrap()
    }

    fn q2() -> MonoidDescriptor {
        MonoidDescriptor::quadratic(2).unwrap()
    }

    fn ints(v: &[Element]) -> Vec<u64> {
        v.iter().map(|e| e.as_int().unwrap().to_u64().unwrap()).collect()
    }

    #[test]
    fn irreducibles() {
        let l = Limits::default();
        for n in [4u32, 10, 25, 7] {
            assert!(is_irreducible(&c13().int(n).unwrap(), &l).unwrap(), "{n}");
        }
        assert!(!is_irreducible(&c13().int(40u32).unwrap(), &l).unwrap());
        assert!(!is_irreducible(&MonoidDescriptor::Naturals.identity(), &l).unwrap());
        let q = q2();
        for (a, b) in [(7u32, 0u32), (5, 2), (3, 8), (1, 2)] {
            assert!(is_irreducible(&q.quad(a, b).unwrap(), &l).unwrap(), "({a},{b})");
        }
        assert!(!is_irreducible(&q.quad(2u32, 0u32).unwrap(), &l).unwrap());
    }

    #[test]
    fn factorization_sets() {
        let l = Limits::default();
        let f = factorizations(&c13().int(100u32).unwrap(), &l).unwrap();
        let sets: Vec<Vec<u64>> = f.iter().map(|f| ints(&f.factors)).collect();
        assert_eq!(sets, vec![vec![4, 25], vec![10, 10]]);
        let f = factorizations(&MonoidDescriptor::Naturals.int(12u32).unwrap(), &l).unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(ints(&f[0].factors), vec![2, 2, 3]);
        let f = factorizations(&q2().identity(), &l).unwrap();
        assert_eq!(f.len(), 1);
        assert!(f[0].factors.is_empty());
    }

    #[test]
    fn gcd_reports() {
        let l = Limits::default();
        let c = c13();
        let r = algebraic_gcd(&c.int(40u32).unwrap(), &c.int(100u32).unwrap(), &l).unwrap();
        assert_eq!(ints(&r.common_divisors), vec![1, 4, 10]);
        assert_eq!(ints(&r.nontrivial_common_divisors()), vec![4, 10]);
        assert_eq!(ints(&r.maximal_common_divisors), vec![4, 10]);
        assert_eq!(r.algebraic_gcd, None);

        let n = MonoidDescriptor::Naturals;
        let r = algebraic_gcd(&n.int(40u32).unwrap(), &n.int(100u32).unwrap(), &l).unwrap();
        assert_eq!(r.algebraic_gcd, Some(n.int(20u32).unwrap()));

        let q = q2();
        let r = algebraic_gcd(&q.quad(35u32, 14u32).unwrap(), &q.quad(7u32, 14u32).unwrap(), &l).unwrap();
        assert_eq!(r.algebraic_gcd, None);
        assert!(r.maximal_common_divisors.len() >= 2);
        assert!(r.common_divisors.contains(&q.quad(7u32, 0u32).unwrap()));
    }

    #[test]
    fn euclid_lemma_surveys() {
        let l = Limits::default();
        assert!(euclid_lemma_survey(MonoidDescriptor::Naturals, &Norm::integer(50u32), &l)
            .unwrap()
            .holds());
        let flag = euclid_lemma_survey(c13(), &Norm::integer(100u32), &l).unwrap();
        let w = flag.witness.unwrap();
        assert_eq!(ints(&[w.p.clone(), w.a.clone(), w.b.clone()]), vec![4, 10, 10]);
        assert!(w.verify(&l).unwrap());
        // Below the smallest irreducible (4) there is nothing to test.
        assert!(euclid_lemma_survey(c13(), &Norm::integer(3u32), &l).unwrap().holds());
    }
}

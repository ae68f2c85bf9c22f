//! Proportion `a:b = c:d` in two senses:
//!
//! * fraction equality, `a·d = b·c`;
//! * Pythagorean proportion: there are `x, y, m, n` with
//!   `a = m·x, b = n·x, c = m·y, d = n·y`, i.e. `a/b` and `c/d` have the
//!   common simplification `m/n`.
//!
//! The second implies the first in every commutative monoid. The converse
//! holds over the naturals and fails in the congruence and quadratic
//! monoids; the checks here exhibit both facts. The multipliers `m, n` are
//! elements of the same monoid as `a, b, c, d`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::euclid;
use crate::factorization::{algebraic_gcd, require_same, GcdReport};
use crate::monoid::{Element, Limits, MonoidDescriptor, Norm};
use crate::universe::Universe;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProportionQuad {
    pub a: Element,
    pub b: Element,
    pub c: Element,
    pub d: Element,
}

impl ProportionQuad {
    pub fn new(a: Element, b: Element, c: Element, d: Element) -> Result<Self> {
        require_same(&a, &b)?;
        require_same(&a, &c)?;
        require_same(&a, &d)?;
        Ok(ProportionQuad { a, b, c, d })
    }

    pub fn monoid(&self) -> MonoidDescriptor {
        self.a.monoid()
    }

    /// `a:c` against `b:d`.
    pub fn alternated(&self) -> Self {
        ProportionQuad {
            a: self.a.clone(),
            b: self.c.clone(),
            c: self.b.clone(),
            d: self.d.clone(),
        }
    }

    /// `c:d` against `a:b`.
    pub fn swapped(&self) -> Self {
        ProportionQuad {
            a: self.c.clone(),
            b: self.d.clone(),
            c: self.a.clone(),
            d: self.b.clone(),
        }
    }
}

/// `a = m·x, b = n·x, c = m·y, d = n·y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProportionWitness {
    pub x: Element,
    pub y: Element,
    pub m: Element,
    pub n: Element,
}

impl ProportionWitness {
    pub fn verify(&self, q: &ProportionQuad) -> bool {
        let same = [&self.x, &self.y, &self.m, &self.n]
            .iter()
            .all(|e| e.monoid() == q.monoid());
        same && self.m.mul_unchecked(&self.x) == q.a
            && self.n.mul_unchecked(&self.x) == q.b
            && self.m.mul_unchecked(&self.y) == q.c
            && self.n.mul_unchecked(&self.y) == q.d
    }

    /// The witness for the alternated quad `a:c = b:d`, obtained by
    /// exchanging the roles of `(m, n)` and `(x, y)`.
    pub fn alternated(&self) -> Self {
        ProportionWitness {
            x: self.m.clone(),
            y: self.n.clone(),
            m: self.x.clone(),
            n: self.y.clone(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CanonicalPartsMode {
    #[default]
    AnyWitness,
    /// `x` must be the algebraic gcd of `(a, b)` and `y` that of `(c, d)`.
    CanonicalOnly,
}

pub fn fraction_equal(q: &ProportionQuad) -> bool {
    q.a.mul_unchecked(&q.d) == q.b.mul_unchecked(&q.c)
}

#[derive(Debug, Clone)]
struct Part {
    x: Element,
    m: Element,
    n: Element,
}

/// The simplifications `(a/x, b/x)` of a fixed left pair, over every
/// common divisor `x`, ready to be tested against many right pairs.
#[derive(Debug, Clone)]
pub struct ProportionSearch {
    parts: Vec<Part>,
}

impl ProportionSearch {
    pub fn new(a: &Element, b: &Element, limits: &Limits) -> Result<Self> {
        require_same(a, b)?;
        let parts = a
            .divisors(limits)?
            .into_iter()
            .filter_map(|x| {
                let n = b.try_divide_unchecked(&x)?;
                let m = a.try_divide_unchecked(&x).expect("x divides a");
                Some(Part { x, m, n })
            })
            .collect();
        Ok(ProportionSearch { parts })
    }

    fn witness_for(part: &Part, c: &Element, d: &Element) -> Option<ProportionWitness> {
        let y = c.try_divide_unchecked(&part.m)?;
        if part.n.mul_unchecked(&y) != *d {
            return None;
        }
        Some(ProportionWitness {
            x: part.x.clone(),
            y,
            m: part.m.clone(),
            n: part.n.clone(),
        })
    }

    /// The first witness, by increasing `x`. `None` is a proof that no
    /// witness exists: every witness has `x` among the common divisors.
    pub fn witness(&self, c: &Element, d: &Element) -> Option<ProportionWitness> {
        self.parts.iter().find_map(|p| Self::witness_for(p, c, d))
    }

    pub fn holds(&self, c: &Element, d: &Element) -> bool {
        self.parts.iter().any(|p| {
            c.try_divide_unchecked(&p.m)
                .is_some_and(|y| p.n.mul_unchecked(&y) == *d)
        })
    }

    pub fn witnesses(&self, c: &Element, d: &Element) -> Vec<ProportionWitness> {
        self.parts
            .iter()
            .filter_map(|p| Self::witness_for(p, c, d))
            .collect()
    }
}

/// Decides Pythagorean proportion by exhaustive search over the common
/// divisors of `(a, b)`.
pub fn pythagorean(
    q: &ProportionQuad,
    mode: CanonicalPartsMode,
    limits: &Limits,
) -> Result<Option<ProportionWitness>> {
    match mode {
        CanonicalPartsMode::AnyWitness => {
            Ok(ProportionSearch::new(&q.a, &q.b, limits)?.witness(&q.c, &q.d))
        }
        CanonicalPartsMode::CanonicalOnly => {
            let Some(x) = algebraic_gcd(&q.a, &q.b, limits)?.algebraic_gcd else {
                return Ok(None);
            };
            let Some(y) = algebraic_gcd(&q.c, &q.d, limits)?.algebraic_gcd else {
                return Ok(None);
            };
            let m = q.a.try_divide_unchecked(&x).expect("gcd divides a");
            let n = q.b.try_divide_unchecked(&x).expect("gcd divides b");
            let w = ProportionWitness { x, y, m, n };
            Ok(w.verify(q).then_some(w))
        }
    }
}

/// Every witness with `x` ranging over the common divisors of `(a, b)`.
pub fn pythagorean_witnesses(q: &ProportionQuad, limits: &Limits) -> Result<Vec<ProportionWitness>> {
    Ok(ProportionSearch::new(&q.a, &q.b, limits)?.witnesses(&q.c, &q.d))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlternandoReport {
    pub premise: bool,
    pub conclusion: bool,
    pub holds: bool,
    /// The witness obtained by exchanging `(m, n)` with `(x, y)` is valid
    /// for `a:c = b:d` whenever the premise holds, and agrees with full search.
    pub fast_path_agrees: bool,
}

/// If `a:b = c:d` then `a:c = b:d`.
pub fn alternando_check(q: &ProportionQuad, limits: &Limits) -> Result<AlternandoReport> {
    let premise_witness = pythagorean(q, CanonicalPartsMode::AnyWitness, limits)?;
    let alt = q.alternated();
    let conclusion = pythagorean(&alt, CanonicalPartsMode::AnyWitness, limits)?.is_some();
    let fast_path_agrees = match &premise_witness {
        Some(w) => w.alternated().verify(&alt) && conclusion,
        None => true,
    };
    let premise = premise_witness.is_some();
    Ok(AlternandoReport {
        premise,
        conclusion,
        holds: !premise || conclusion,
        fast_path_agrees,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vii6Report {
    pub premise: bool,
    pub conclusion: bool,
    pub holds: bool,
    /// `a + c = m·(x + y)` and `b + d = n·(x + y)` for the premise witness.
    pub direct_witness_ok: Option<bool>,
    /// In canonical mode: `x + y` is the algebraic gcd of `(a + c, b + d)`.
    pub sum_is_gcd: Option<bool>,
}

/// If `a:b = c:d` then `a:b = (a + c):(b + d)`. Needs additive structure.
pub fn vii6_check(q: &ProportionQuad, mode: CanonicalPartsMode, limits: &Limits) -> Result<Vii6Report> {
    if !q.monoid().has_addition() {
        return Err(Error::Unsupported(format!(
            "{} is not closed under addition",
            q.monoid()
        )));
    }
    let sum_quad = ProportionQuad {
        a: q.a.clone(),
        b: q.b.clone(),
        c: q.a.add(&q.c)?,
        d: q.b.add(&q.d)?,
    };
    let premise_witness = pythagorean(q, mode, limits)?;
    let conclusion = pythagorean(&sum_quad, mode, limits)?.is_some();
    let premise = premise_witness.is_some();
    let (direct_witness_ok, sum_is_gcd) = match &premise_witness {
        None => (None, None),
        Some(w) => {
            let direct = ProportionWitness {
                x: w.x.clone(),
                y: w.x.add(&w.y)?,
                m: w.m.clone(),
                n: w.n.clone(),
            };
            let direct_ok = direct.verify(&sum_quad);
            let gcd_ok = match mode {
                CanonicalPartsMode::AnyWitness => None,
                CanonicalPartsMode::CanonicalOnly => {
                    let g = algebraic_gcd(&sum_quad.c, &sum_quad.d, limits)?.algebraic_gcd;
                    Some(g.as_ref() == Some(&direct.y))
                }
            };
            (Some(direct_ok), gcd_ok)
        }
    };
    let conclusion_ok = conclusion
        && direct_witness_ok.unwrap_or(true)
        && sum_is_gcd.unwrap_or(true);
    Ok(Vii6Report {
        premise,
        conclusion,
        holds: !premise || conclusion_ok,
        direct_witness_ok,
        sum_is_gcd,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vii19Report {
    pub pyth: bool,
    pub frac: bool,
    pub equivalent: bool,
}

/// Records both relations: `a:b = c:d` if and only if `ad = bc` holds over
/// the naturals, and can fail elsewhere.
pub fn vii19_check(q: &ProportionQuad, limits: &Limits) -> Result<Vii19Report> {
    let pyth = pythagorean(q, CanonicalPartsMode::AnyWitness, limits)?.is_some();
    let frac = fraction_equal(q);
    Ok(Vii19Report {
        pyth,
        frac,
        equivalent: pyth == frac,
    })
}

fn require_naturals(e: &Element, what: &str) -> Result<BigUint> {
    match (e.monoid(), e.as_int()) {
        (MonoidDescriptor::Naturals, Some(n)) => Ok(n.clone()),
        _ => Err(Error::Unsupported(format!(
            "{what} is defined over nat only, not {}",
            e.monoid()
        ))),
    }
}

/// The least `(u, v)` with `u:v = c:d`; over the naturals `(c/g, d/g)` for
/// `g = gcd(c, d)`. Minimality is re-checked by scanning every `u' < u`.
pub fn least_pair(c: &Element, d: &Element, limits: &Limits) -> Result<(Element, Element)> {
    let (cn, dn) = (require_naturals(c, "least pair")?, require_naturals(d, "least pair")?);
    let g = euclid::gcd(&cn, &dn)?;
    let (u, v) = (&cn / &g, &dn / &g);
    if u.to_u64().is_none_or(|u| u > limits.max_candidates) {
        return Err(Error::BoundExceeded {
            what: "least-pair minimality scan",
            requested: u.to_string(),
            ceiling: limits.max_candidates,
        });
    }
    let mut smaller = BigUint::from(1u32);
    while smaller < u {
        if (&smaller * &dn % &cn).is_zero() {
            return Err(Error::Precondition(format!(
                "minimality violated: {smaller}:{} = {cn}:{dn}",
                &smaller * &dn / &cn
            )));
        }
        smaller += 1u32;
    }
    let nat = MonoidDescriptor::Naturals;
    Ok((nat.int(u)?, nat.int(v)?))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vii20Report {
    pub u: Element,
    pub v: Element,
    pub u_divides_c: bool,
    pub v_divides_d: bool,
    /// The number of parts: `u = c/quotient` and `v = d/quotient`.
    pub quotient: Option<Element>,
}

impl Vii20Report {
    pub fn holds(&self) -> bool {
        self.u_divides_c && self.v_divides_d && self.quotient.is_some()
    }
}

/// The least pair equal in ratio to `c:d` divides it termwise.
pub fn vii20_check(c: &Element, d: &Element, limits: &Limits) -> Result<Vii20Report> {
    let (u, v) = least_pair(c, d, limits)?;
    let qc = c.try_divide(&u)?;
    let qd = d.try_divide(&v)?;
    let quotient = match (&qc, &qd) {
        (Some(x), Some(y)) if x == y => Some(x.clone()),
        _ => None,
    };
    Ok(Vii20Report {
        u_divides_c: qc.is_some(),
        v_divides_d: qd.is_some(),
        u,
        v,
        quotient,
    })
}

/// The multipliers `i = gcd(a,b)/x` and `j = gcd(c,d)/y` for one witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InnerClaim {
    pub x: Element,
    pub y: Element,
    pub i: Option<Element>,
    pub j: Option<Element>,
}

impl InnerClaim {
    pub fn holds(&self) -> bool {
        self.i.is_some() && self.i == self.j
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepairCheck {
    pub gcd_ab: Element,
    pub gcd_cd: Element,
    pub p: Element,
    pub q: Element,
    /// `c = p·gcd(c, d)`.
    pub c_matches: bool,
    /// `d = q·gcd(c, d)`.
    pub d_matches: bool,
    /// One entry per witness of the proportion.
    pub inner_claims: Vec<InnerClaim>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RepairReport {
    /// `a:b = c:d` does not hold; nothing to repair.
    PremiseFalse,
    /// One of the pairs has no algebraic gcd.
    Inapplicable { gcd: Box<GcdReport> },
    Checked(Box<RepairCheck>),
}

impl RepairReport {
    /// Vacuously true when the premise fails; false when a gcd is missing.
    pub fn holds(&self) -> bool {
        match self {
            RepairReport::PremiseFalse => true,
            RepairReport::Inapplicable { .. } => false,
            RepairReport::Checked(c) => {
                c.c_matches && c.d_matches && c.inner_claims.iter().all(InnerClaim::holds)
            }
        }
    }
}

/// If `a:b = c:d` with `a = p·gcd(a,b)`, `b = q·gcd(a,b)`, then
/// `c = p·gcd(c,d)` and `d = q·gcd(c,d)`; also checks that for every
/// witness both gcd multipliers coincide.
pub fn repair_check(quad: &ProportionQuad, limits: &Limits) -> Result<RepairReport> {
    let witnesses = pythagorean_witnesses(quad, limits)?;
    if witnesses.is_empty() {
        return Ok(RepairReport::PremiseFalse);
    }
    let left = algebraic_gcd(&quad.a, &quad.b, limits)?;
    let Some(g1) = left.algebraic_gcd.clone() else {
        return Ok(RepairReport::Inapplicable { gcd: Box::new(left) });
    };
    let right = algebraic_gcd(&quad.c, &quad.d, limits)?;
    let Some(g2) = right.algebraic_gcd.clone() else {
        return Ok(RepairReport::Inapplicable { gcd: Box::new(right) });
    };
    let p = quad.a.try_divide_unchecked(&g1).expect("gcd divides a");
    let q = quad.b.try_divide_unchecked(&g1).expect("gcd divides b");
    let inner_claims = witnesses
        .into_iter()
        .map(|w| InnerClaim {
            i: g1.try_divide_unchecked(&w.x),
            j: g2.try_divide_unchecked(&w.y),
            x: w.x,
            y: w.y,
        })
        .collect();
    Ok(RepairReport::Checked(Box::new(RepairCheck {
        c_matches: p.mul_unchecked(&g2) == quad.c,
        d_matches: q.mul_unchecked(&g2) == quad.d,
        gcd_ab: g1,
        gcd_cd: g2,
        p,
        q,
        inner_claims,
    })))
}

/// `left ~ middle`, `middle ~ right`, but not `left ~ right`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitivityChain {
    pub left: (Element, Element),
    pub middle: (Element, Element),
    pub right: (Element, Element),
}

impl TransitivityChain {
    pub fn verify(&self, limits: &Limits) -> Result<bool> {
        let quad = |l: &(Element, Element), r: &(Element, Element)| {
            ProportionQuad::new(l.0.clone(), l.1.clone(), r.0.clone(), r.1.clone())
        };
        let any = CanonicalPartsMode::AnyWitness;
        Ok(pythagorean(&quad(&self.left, &self.middle)?, any, limits)?.is_some()
            && pythagorean(&quad(&self.middle, &self.right)?, any, limits)?.is_some()
            && pythagorean(&quad(&self.left, &self.right)?, any, limits)?.is_none())
    }
}

/// Two pairs that are not proportional although some middle pair is
/// proportional to both; every such middle within the bound is listed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitivityFailure {
    pub left: (Element, Element),
    pub right: (Element, Element),
    pub middles: Vec<(Element, Element)>,
}

impl TransitivityFailure {
    pub fn chains(&self) -> impl Iterator<Item = TransitivityChain> + '_ {
        self.middles.iter().map(|m| TransitivityChain {
            left: self.left.clone(),
            middle: m.clone(),
            right: self.right.clone(),
        })
    }

    /// Every listed middle completes a chain; an empty list verifies nothing.
    pub fn verify(&self, limits: &Limits) -> Result<bool> {
        if self.middles.is_empty() {
            return Ok(false);
        }
        for chain in self.chains() {
            if !chain.verify(limits)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitivityReport {
    pub monoid: MonoidDescriptor,
    pub bound: Norm,
    pub pairs_examined: usize,
    /// Ordered by `(left, right)` in canonical pair order, `left < right`.
    pub failures: Vec<TransitivityFailure>,
}

impl TransitivityReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn first_chain(&self) -> Option<TransitivityChain> {
        let f = self.failures.first()?;
        Some(TransitivityChain {
            left: f.left.clone(),
            middle: f.middles[0].clone(),
            right: f.right.clone(),
        })
    }

    /// Whether the chain appears, in either orientation.
    pub fn contains_chain(&self, chain: &TransitivityChain) -> bool {
        self.failures.iter().any(|f| {
            ((f.left == chain.left && f.right == chain.right)
                || (f.left == chain.right && f.right == chain.left))
                && f.middles.contains(&chain.middle)
        })
    }
}

/// Searches all pairs `P, Q, R` with entries of norm ≤ `bound` for
/// `P ~ Q`, `Q ~ R` and `P ≁ R`.
pub fn transitivity_survey(
    desc: MonoidDescriptor,
    bound: &Norm,
    limits: &Limits,
) -> Result<TransitivityReport> {
    let u = Universe::up_to(desc, bound, limits)?;
    transitivity_survey_in(&u, bound, limits)
}

/// Two pairs are proportional exactly when they share a simplification
/// `(a/x, b/x)`. Pair ids are `i·len + j`; a simplification is itself a
/// pair of the universe and shares the id space.
pub(crate) fn transitivity_survey_in(
    u: &Universe,
    bound: &Norm,
    limits: &Limits,
) -> Result<TransitivityReport> {
    let n = u.len();
    let pairs = n * n;
    if pairs as u64 > limits.max_pairs || pairs > u32::MAX as usize {
        return Err(Error::BoundExceeded {
            what: "pairs",
            requested: pairs.to_string(),
            ceiling: limits.max_pairs,
        });
    }
    let monoid = u
        .elements
        .first()
        .map(Element::monoid)
        .unwrap_or(MonoidDescriptor::Naturals);

    // simplifications[offsets[p]..offsets[p + 1]], sorted.
    let mut offsets = Vec::with_capacity(pairs + 1);
    let mut simplifications: Vec<u32> = Vec::new();
    offsets.push(0usize);
    for i in 0..n {
        for j in 0..n {
            let start = simplifications.len();
            simplifications.extend(
                u.common_divisors(i, j)
                    .into_iter()
                    .map(|(_, m, k)| (m * n + k) as u32),
            );
            simplifications[start..].sort_unstable();
            offsets.push(simplifications.len());
        }
    }
    let simp = |p: usize| &simplifications[offsets[p]..offsets[p + 1]];

    // members[member_offsets[s]..member_offsets[s + 1]]: pairs with simplification s.
    let mut member_offsets = vec![0usize; pairs + 1];
    for &s in &simplifications {
        member_offsets[s as usize + 1] += 1;
    }
    for s in 0..pairs {
        member_offsets[s + 1] += member_offsets[s];
    }
    let mut fill = member_offsets.clone();
    let mut members = vec![0u32; simplifications.len()];
    for p in 0..pairs {
        for &s in simp(p) {
            members[fill[s as usize]] = p as u32;
            fill[s as usize] += 1;
        }
    }
    let with = |s: u32| &members[member_offsets[s as usize]..member_offsets[s as usize + 1]];

    let mut cooccur: HashMap<(u32, u32), Vec<u32>> = HashMap::new();
    for q in 0..pairs {
        let s = simp(q);
        for (k, &s1) in s.iter().enumerate() {
            for &s2 in &s[k + 1..] {
                cooccur.entry((s1, s2)).or_default().push(q as u32);
            }
        }
    }

    let disjoint = |x: &[u32], y: &[u32]| {
        let (mut i, mut j) = (0, 0);
        while i < x.len() && j < y.len() {
            match x[i].cmp(&y[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return false,
            }
        }
        true
    };

    let mut failures: BTreeMap<(u32, u32), BTreeSet<u32>> = BTreeMap::new();
    for (&(s1, s2), middles) in &cooccur {
        for &p in with(s1) {
            for &r in with(s2) {
                if disjoint(simp(p as usize), simp(r as usize)) {
                    failures
                        .entry((p.min(r), p.max(r)))
                        .or_default()
                        .extend(middles.iter().copied());
                }
            }
        }
    }

    let pair = |id: u32| {
        let id = id as usize;
        (u.elements[id / n].clone(), u.elements[id % n].clone())
    };
    Ok(TransitivityReport {
        monoid,
        bound: bound.clone(),
        pairs_examined: pairs,
        failures: failures
            .into_iter()
            .map(|((p, r), middles)| TransitivityFailure {
                left: pair(p),
                right: pair(r),
                middles: middles.into_iter().map(pair).collect(),
            })
            .collect(),
    })
}

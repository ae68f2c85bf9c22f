//! Commutative cancellative monoids: the naturals, congruence monoids
//! `{1} ∪ {n ≥ 1 : n ≡ r (mod m)}` and the semiring of nonnegative
//! `a + b√d`, all with exact arbitrary-precision arithmetic.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Resource ceilings for enumerating searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of candidate elements a single enumeration may visit.
    pub max_candidates: u64,
    /// Maximum number of ordered pairs a survey may tabulate.
    pub max_pairs: u64,
    /// Maximum number of states in a subtractive Euclid trace.
    pub max_trace_steps: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_candidates: 1_000_000,
            max_pairs: 50_000_000,
            max_trace_steps: 1_000_000,
        }
    }
}

/// Which monoid universe an element lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MonoidDescriptor {
    Naturals,
    Congruence { residue: u64, modulus: u64 },
    Quadratic { radicand: u64 },
}

impl MonoidDescriptor {
    /// Validates `1 ≤ residue ≤ modulus` and multiplicative closure
    /// (`residue² ≡ residue (mod modulus)`).
    pub fn congruence(residue: u64, modulus: u64) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidInput("modulus must be positive".into()));
        }
        if residue == 0 || residue > modulus {
            return Err(Error::InvalidInput(format!(
                "residue must satisfy 1 \u{2264} r \u{2264} m, got r={residue}, m={modulus}"
            )));
        }
        let r = residue % modulus;
        let product = residue as u128 * residue as u128;
        let product_residue = (product % modulus as u128) as u64;
        if product_residue != r {
            return Err(Error::NotClosed {
                residue,
                modulus,
                product,
                product_residue,
            });
        }
        Ok(MonoidDescriptor::Congruence { residue, modulus })
    }

    /// Accepts any square-free `radicand ≥ 2`.
    pub fn quadratic(radicand: u64) -> Result<Self> {
        if radicand < 2 {
            return Err(Error::InvalidInput(format!(
                "radicand must be at least 2, got {radicand}"
            )));
        }
        if let Some(f) = square_factor(radicand) {
            return Err(Error::InvalidInput(format!(
                "radicand {radicand} is not square-free ({f}\u{b2} divides it)"
            )));
        }
        Ok(MonoidDescriptor::Quadratic { radicand })
    }

    pub fn is_quadratic(&self) -> bool {
        matches!(self, MonoidDescriptor::Quadratic { .. })
    }

    /// Naturals and the quadratic semiring are closed under addition;
    /// congruence monoids are not (4 + 4 = 8 is not 1 mod 3).
    pub fn has_addition(&self) -> bool {
        !matches!(self, MonoidDescriptor::Congruence { .. })
    }

    pub fn identity(&self) -> Element {
        let value = match self {
            MonoidDescriptor::Quadratic { .. } => Value::Quad {
                rational: BigUint::one(),
                surd: BigUint::zero(),
            },
            _ => Value::Int(BigUint::one()),
        };
        Element {
            monoid: *self,
            value,
        }
    }

    fn int_member(&self, n: &BigUint) -> bool {
        match self {
            MonoidDescriptor::Naturals => !n.is_zero(),
            MonoidDescriptor::Congruence { residue, modulus } => {
                n.is_one() || (!n.is_zero() && n % *modulus == BigUint::from(residue % modulus))
            }
            MonoidDescriptor::Quadratic { .. } => false,
        }
    }

    /// Membership test on raw integer components. Negative components are
    /// malformed input, distinct from "not a member".
    pub fn contains(&self, raw: &RawElement) -> Result<bool> {
        match (self, raw) {
            (MonoidDescriptor::Quadratic { .. }, RawElement::Pair(a, b)) => {
                if a.is_negative() || b.is_negative() {
                    return Err(Error::InvalidInput(format!(
                        "components ({a},{b}) must be nonnegative"
                    )));
                }
                Ok(!(a.is_zero() && b.is_zero()))
            }
            (MonoidDescriptor::Quadratic { .. }, RawElement::Int(_)) => Err(Error::InvalidInput(
                "quadratic elements need a component pair (a, b)".into(),
            )),
            (_, RawElement::Int(n)) => {
                if n.is_negative() {
                    return Err(Error::InvalidInput(format!("{n} must be nonnegative")));
                }
                Ok(self.int_member(n.magnitude()))
            }
            (_, RawElement::Pair(..)) => Err(Error::InvalidInput(format!(
                "{self} elements are single integers, not pairs"
            ))),
        }
    }

    /// Builds an element from raw components, rejecting non-members.
    pub fn element(&self, raw: &RawElement) -> Result<Element> {
        if !self.contains(raw)? {
            return Err(Error::NotAMember {
                monoid: self.to_string(),
                element: raw.to_string(),
            });
        }
        let value = match raw {
            RawElement::Int(n) => Value::Int(n.magnitude().clone()),
            RawElement::Pair(a, b) => Value::Quad {
                rational: a.magnitude().clone(),
                surd: b.magnitude().clone(),
            },
        };
        Ok(Element {
            monoid: *self,
            value,
        })
    }

    pub fn int(&self, n: impl Into<BigUint>) -> Result<Element> {
        self.element(&RawElement::Int(BigInt::from(n.into())))
    }

    pub fn quad(&self, a: impl Into<BigUint>, b: impl Into<BigUint>) -> Result<Element> {
        self.element(&RawElement::Pair(
            BigInt::from(a.into()),
            BigInt::from(b.into()),
        ))
    }

    fn radicand(&self) -> u64 {
        match self {
            MonoidDescriptor::Quadratic { radicand } => *radicand,
            _ => 0,
        }
    }

    /// Number of elements with norm ≤ `bound`, counting no further than
    /// `stop_after` (the return value is then `stop_after + 1`).
    fn count_up_to(&self, bound: &Norm, stop_after: u64) -> u64 {
        match self {
            MonoidDescriptor::Quadratic { radicand } => {
                let mut total: u64 = 0;
                let mut surd = BigUint::zero();
                while let Some(max_rational) = bound.max_rational_for(&surd, *radicand) {
                    let row = (max_rational + 1u32).to_u64().unwrap_or(u64::MAX);
                    // (0, 0) is excluded.
                    let row = if surd.is_zero() { row - 1 } else { row };
                    total = total.saturating_add(row);
                    if total > stop_after {
                        return stop_after.saturating_add(1);
                    }
                    surd += 1u32;
                }
                total
            }
            _ => {
                let k = bound.floor();
                let count = match self {
                    MonoidDescriptor::Naturals => k,
                    MonoidDescriptor::Congruence { residue, modulus } => {
                        if k.is_zero() {
                            BigUint::zero()
                        } else {
                            let r = BigUint::from(*residue);
                            let in_class = if k < r {
                                BigUint::zero()
                            } else {
                                (&k - &r) / *modulus + 1u32
                            };
                            // 1 is always a member; it is in the class only when r ≡ 1.
                            if residue % modulus == 1 % modulus {
                                in_class
                            } else {
                                in_class + 1u32
                            }
                        }
                    }
                    MonoidDescriptor::Quadratic { .. } => unreachable!(),
                };
                count
                    .to_u64()
                    .map(|c| c.min(stop_after.saturating_add(1)))
                    .unwrap_or(stop_after.saturating_add(1))
            }
        }
    }

    fn check_ceiling(&self, bound: &Norm, limits: &Limits) -> Result<u64> {
        let count = self.count_up_to(bound, limits.max_candidates);
        if count > limits.max_candidates {
            return Err(Error::BoundExceeded {
                what: "candidate elements",
                requested: format!("more than {}", limits.max_candidates),
                ceiling: limits.max_candidates,
            });
        }
        Ok(count)
    }

    /// Every element with norm ≤ `bound`, exactly once, in canonical order
    /// (nondecreasing norm; quadratic ties by `(a, b)`).
    pub fn enumerate_up_to(&self, bound: &Norm, limits: &Limits) -> Result<Vec<Element>> {
        let count = self.check_ceiling(bound, limits)?;
        let mut out = Vec::with_capacity(count as usize);
        self.for_each_up_to(bound, |e| out.push(e));
        if self.is_quadratic() {
            out.sort();
        }
        Ok(out)
    }

    /// Visits all elements with norm ≤ `bound`; order is canonical for the
    /// integer monoids and row-major in `(b, a)` for quadratic ones.
    fn for_each_up_to(&self, bound: &Norm, mut visit: impl FnMut(Element)) {
        match self {
            MonoidDescriptor::Quadratic { radicand } => {
                let mut surd = BigUint::zero();
                while let Some(max_rational) = bound.max_rational_for(&surd, *radicand) {
                    let mut a = if surd.is_zero() {
                        BigUint::one()
                    } else {
                        BigUint::zero()
                    };
                    while a <= max_rational {
                        visit(Element {
                            monoid: *self,
                            value: Value::Quad {
                                rational: a.clone(),
                                surd: surd.clone(),
                            },
                        });
                        a += 1u32;
                    }
                    surd += 1u32;
                }
            }
            MonoidDescriptor::Naturals => {
                let k = bound.floor();
                let mut n = BigUint::one();
                while n <= k {
                    visit(Element {
                        monoid: *self,
                        value: Value::Int(n.clone()),
                    });
                    n += 1u32;
                }
            }
            MonoidDescriptor::Congruence { residue, modulus } => {
                let k = bound.floor();
                if k.is_zero() {
                    return;
                }
                visit(self.identity());
                let mut n = BigUint::from(*residue);
                while n <= k {
                    if !n.is_one() {
                        visit(Element {
                            monoid: *self,
                            value: Value::Int(n.clone()),
                        });
                    }
                    n += *modulus;
                }
            }
        }
    }
}

impl fmt::Display for MonoidDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonoidDescriptor::Naturals => write!(f, "nat"),
            MonoidDescriptor::Congruence { residue, modulus } => {
                write!(f, "congruence {residue} mod {modulus}")
            }
            MonoidDescriptor::Quadratic { radicand } => write!(f, "quadratic {radicand}"),
        }
    }
}

fn square_factor(n: u64) -> Option<u64> {
    let mut f = 2u64;
    while f.saturating_mul(f) <= n {
        if n.is_multiple_of(f * f) {
            return Some(f);
        }
        f += 1;
    }
    None
}

/// Unvalidated integer components, as read from user input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RawElement {
    Int(BigInt),
    Pair(BigInt, BigInt),
}

impl fmt::Display for RawElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RawElement::Int(n) => write!(f, "{n}"),
            RawElement::Pair(a, b) => write!(f, "({a},{b})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Value {
    Int(BigUint),
    Quad { rational: BigUint, surd: BigUint },
}

/// A validated member of a monoid.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Element {
    monoid: MonoidDescriptor,
    value: Value,
}

impl Element {
    pub fn monoid(&self) -> MonoidDescriptor {
        self.monoid
    }

    pub fn is_identity(&self) -> bool {
        match &self.value {
            Value::Int(n) => n.is_one(),
            Value::Quad { rational, surd } => rational.is_one() && surd.is_zero(),
        }
    }

    /// The integer value for naturals and congruence monoids.
    pub fn as_int(&self) -> Option<&BigUint> {
        match &self.value {
            Value::Int(n) => Some(n),
            Value::Quad { .. } => None,
        }
    }

    /// The `(a, b)` components of `a + b√d`.
    pub fn as_pair(&self) -> Option<(&BigUint, &BigUint)> {
        match &self.value {
            Value::Quad { rational, surd } => Some((rational, surd)),
            Value::Int(_) => None,
        }
    }

    pub fn norm(&self) -> Norm {
        match &self.value {
            Value::Int(n) => Norm::integer(n.clone()),
            Value::Quad { rational, surd } => Norm {
                rational: rational.clone(),
                surd: surd.clone(),
                radicand: self.monoid.radicand(),
            },
        }
    }

    fn same_monoid(&self, other: &Element) -> Result<()> {
        if self.monoid != other.monoid {
            return Err(Error::DescriptorMismatch {
                left: self.monoid.to_string(),
                right: other.monoid.to_string(),
            });
        }
        Ok(())
    }

    /// The monoid product.
    pub fn mul(&self, other: &Element) -> Result<Element> {
        self.same_monoid(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Element) -> Element {
        let value = match (&self.value, &other.value) {
            (Value::Int(x), Value::Int(y)) => Value::Int(x * y),
            (
                Value::Quad {
                    rational: a1,
                    surd: b1,
                },
                Value::Quad {
                    rational: a2,
                    surd: b2,
                },
            ) => {
                let d = self.monoid.radicand();
                Value::Quad {
                    rational: a1 * a2 + b1 * b2 * d,
                    surd: a1 * b2 + a2 * b1,
                }
            }
            _ => unreachable!("values of one monoid share a representation"),
        };
        Element {
            monoid: self.monoid,
            value,
        }
    }

    /// The sum, for monoids that carry additive structure.
    pub fn add(&self, other: &Element) -> Result<Element> {
        self.same_monoid(other)?;
        if !self.monoid.has_addition() {
            return Err(Error::Unsupported(format!(
                "{} is not closed under addition",
                self.monoid
            )));
        }
        let value = match (&self.value, &other.value) {
            (Value::Int(x), Value::Int(y)) => Value::Int(x + y),
            (
                Value::Quad {
                    rational: a1,
                    surd: b1,
                },
                Value::Quad {
                    rational: a2,
                    surd: b2,
                },
            ) => Value::Quad {
                rational: a1 + a2,
                surd: b1 + b2,
            },
            _ => unreachable!("values of one monoid share a representation"),
        };
        Ok(Element {
            monoid: self.monoid,
            value,
        })
    }

    /// Returns `q` with `divisor · q = self` when such a `q` exists in the
    /// monoid. A quotient that only exists in a larger ring is `None`.
    pub fn try_divide(&self, divisor: &Element) -> Result<Option<Element>> {
        self.same_monoid(divisor)?;
        Ok(self.try_divide_unchecked(divisor))
    }

    pub(crate) fn try_divide_unchecked(&self, divisor: &Element) -> Option<Element> {
        match (&self.value, &divisor.value) {
            (Value::Int(b), Value::Int(a)) => {
                let (q, r) = b.div_rem(a);
                if !r.is_zero() || !self.monoid.int_member(&q) {
                    return None;
                }
                Some(Element {
                    monoid: self.monoid,
                    value: Value::Int(q),
                })
            }
            (
                Value::Quad {
                    rational: a,
                    surd: b,
                },
                Value::Quad {
                    rational: c,
                    surd: d,
                },
            ) => {
                // (c + d√D)(e + f√D) = a + b√D:
                //   c·e + D·d·f = a,   d·e + c·f = b,   det = c² − D·d².
                let radicand = BigInt::from(self.monoid.radicand());
                let (a, b) = (BigInt::from(a.clone()), BigInt::from(b.clone()));
                let (c, d) = (BigInt::from(c.clone()), BigInt::from(d.clone()));
                let det = &c * &c - &radicand * &d * &d;
                debug_assert!(!det.is_zero());
                let e_num = &a * &c - &radicand * &d * &b;
                let f_num = &b * &c - &a * &d;
                let (e, er) = e_num.div_rem(&det);
                let (f, fr) = f_num.div_rem(&det);
                if !er.is_zero() || !fr.is_zero() || e.is_negative() || f.is_negative() {
                    return None;
                }
                let (e, f) = (e.magnitude().clone(), f.magnitude().clone());
                if e.is_zero() && f.is_zero() {
                    return None;
                }
                Some(Element {
                    monoid: self.monoid,
                    value: Value::Quad {
                        rational: e,
                        surd: f,
                    },
                })
            }
            _ => unreachable!("values of one monoid share a representation"),
        }
    }

    pub fn divides(&self, other: &Element) -> Result<bool> {
        Ok(other.try_divide(self)?.is_some())
    }

    /// Every divisor of `self`, identity and `self` included, in canonical
    /// order. Found by testing every candidate of norm ≤ `norm(self)`.
    pub fn divisors(&self, limits: &Limits) -> Result<Vec<Element>> {
        let bound = self.norm();
        self.monoid.check_ceiling(&bound, limits)?;
        let mut out = Vec::new();
        self.monoid.for_each_up_to(&bound, |candidate| {
            if self.try_divide_unchecked(&candidate).is_some() {
                out.push(candidate);
            }
        });
        out.sort();
        Ok(out)
    }

    /// Decimal for integer monoids, `(a,b)` for quadratic ones.
    pub fn to_pair_form(&self) -> String {
        match &self.value {
            Value::Int(n) => n.to_string(),
            Value::Quad { rational, surd } => format!("({rational},{surd})"),
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            Value::Int(n) => write!(f, "{n}"),
            Value::Quad { rational, surd } => {
                write!(f, "{rational}+{surd}*sqrt({})", self.monoid.radicand())
            }
        }
    }
}

impl Ord for Element {
    fn cmp(&self, other: &Self) -> Ordering {
        self.monoid.cmp(&other.monoid).then_with(|| {
            match (&self.value, &other.value) {
                (Value::Int(x), Value::Int(y)) => x.cmp(y),
                (
                    Value::Quad {
                        rational: a1,
                        surd: b1,
                    },
                    Value::Quad {
                        rational: a2,
                        surd: b2,
                    },
                ) => compare_surds(a1, b1, a2, b2, self.monoid.radicand())
                    .then_with(|| (a1, b1).cmp(&(a2, b2))),
                _ => unreachable!("values of one monoid share a representation"),
            }
        })
    }
}

impl PartialOrd for Element {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// The exact real value `rational + surd·√radicand`, used as a size
/// measure. It is multiplicative, and `norm(x·y) > norm(x)` unless `y`
/// is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Norm {
    rational: BigUint,
    surd: BigUint,
    radicand: u64,
}

impl Norm {
    pub fn integer(n: impl Into<BigUint>) -> Self {
        Norm {
            rational: n.into(),
            surd: BigUint::zero(),
            radicand: 0,
        }
    }

    pub fn rational(&self) -> &BigUint {
        &self.rational
    }

    pub fn surd(&self) -> &BigUint {
        &self.surd
    }

    /// `⌊rational + surd·√radicand⌋`.
    pub fn floor(&self) -> BigUint {
        if self.surd.is_zero() {
            return self.rational.clone();
        }
        let s = &self.surd * &self.surd * self.radicand;
        &self.rational + s.sqrt()
    }

    /// Largest `a ≥ 0` with `a + surd·√d ≤ self`, if any.
    fn max_rational_for(&self, surd: &BigUint, radicand: u64) -> Option<BigUint> {
        let radicand = if self.surd.is_zero() {
            radicand
        } else {
            self.radicand
        };
        if *surd <= self.surd {
            let diff = &self.surd - surd;
            Some(&self.rational + (&diff * &diff * radicand).sqrt())
        } else {
            let diff = surd - &self.surd;
            let t = &diff * &diff * radicand;
            let root = t.sqrt();
            let ceil = if &root * &root == t { root } else { root + 1u32 };
            if ceil > self.rational {
                None
            } else {
                Some(&self.rational - ceil)
            }
        }
    }
}

impl Ord for Norm {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.surd.is_zero() && other.surd.is_zero() {
            return self.rational.cmp(&other.rational);
        }
        let radicand = if self.surd.is_zero() {
            other.radicand
        } else {
            debug_assert!(other.surd.is_zero() || self.radicand == other.radicand);
            self.radicand
        };
        compare_surds(
            &self.rational,
            &self.surd,
            &other.rational,
            &other.surd,
            radicand,
        )
    }
}

impl PartialOrd for Norm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Norm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.surd.is_zero() {
            write!(f, "{}", self.rational)
        } else {
            write!(f, "{}+{}*sqrt({})", self.rational, self.surd, self.radicand)
        }
    }
}

/// Exact comparison of `a1 + b1√d` with `a2 + b2√d`.
///
/// With `p = a1 − a2` and `q = b2 − b1` this is the comparison of `p` with
/// `q√d`, decided by signs and, when both sides share a sign, by `p²` vs `q²d`.
pub(crate) fn compare_surds(
    a1: &BigUint,
    b1: &BigUint,
    a2: &BigUint,
    b2: &BigUint,
    d: u64,
) -> Ordering {
    let p = BigInt::from(a1.clone()) - BigInt::from(a2.clone());
    let q = BigInt::from(b2.clone()) - BigInt::from(b1.clone());
    match (p.sign(), q.sign()) {
        (Sign::NoSign, Sign::NoSign) => Ordering::Equal,
        (Sign::Plus | Sign::NoSign, Sign::Minus | Sign::NoSign) => Ordering::Greater,
        (Sign::Minus | Sign::NoSign, Sign::Plus | Sign::NoSign) => Ordering::Less,
        (Sign::Plus, Sign::Plus) => {
            let lhs = &p * &p;
            let rhs = &q * &q * d;
            lhs.cmp(&rhs)
        }
        (Sign::Minus, Sign::Minus) => {
            let lhs = &p * &p;
            let rhs = &q * &q * d;
            rhs.cmp(&lhs)
        }
    }
}

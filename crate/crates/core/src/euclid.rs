//! The Euclidean algorithm over the positive integers: the literal
//! subtractive loop with a checkable trace, the quotient-remainder GCD,
//! Bézout certificates, the porism and the Bézout proof of Euclid's lemma.
//!
//! Everything is generic over [`Integer`] so the same code runs on machine
//! words for exhaustive sweeps and on [`num_bigint::BigUint`] for the CLI.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::monoid::Limits;

fn positive<T: Integer + fmt::Display>(what: &str, n: &T) -> Result<()> {
    if *n <= T::zero() {
        return Err(Error::InvalidInput(format!(
            "{what} must be a positive integer, got {n}"
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StepKind {
    Subtract,
    Swap,
    Terminate,
}

impl fmt::Display for StepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StepKind::Subtract => "subtract",
            StepKind::Swap => "swap",
            StepKind::Terminate => "terminate",
        })
    }
}

/// One state of the loop and the action taken from it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep<T> {
    pub a: T,
    pub b: T,
    pub kind: StepKind,
}

impl<T: fmt::Display> fmt::Display for TraceStep<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a={} b={} {}", self.a, self.b, self.kind)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EuclidTrace<T> {
    pub steps: Vec<TraceStep<T>>,
    pub result: T,
}

/// Runs the three-step loop literally:
///
/// 1. if `a | b` return `a`;
/// 2. while `a < b` set `b = b − a`;
/// 3. swap `(a, b) = (b, a)`.
///
/// The inputs are reordered so the smaller comes first.
pub fn euclid_subtractive<T>(a: T, b: T, limits: &Limits) -> Result<EuclidTrace<T>>
where
    T: Integer + Clone + fmt::Display,
{
    positive("a", &a)?;
    positive("b", &b)?;
    let (mut a, mut b) = if a <= b { (a, b) } else { (b, a) };
    let mut steps = Vec::new();
    let push = |steps: &mut Vec<TraceStep<T>>, a: &T, b: &T, kind| {
        if steps.len() as u64 >= limits.max_trace_steps {
            return Err(Error::BoundExceeded {
                what: "trace steps",
                requested: format!("more than {}", limits.max_trace_steps),
                ceiling: limits.max_trace_steps,
            });
        }
        steps.push(TraceStep {
            a: a.clone(),
            b: b.clone(),
            kind,
        });
        Ok(())
    };
    loop {
        if b.is_multiple_of(&a) {
            push(&mut steps, &a, &b, StepKind::Terminate)?;
            return Ok(EuclidTrace { steps, result: a });
        }
        while a < b {
            push(&mut steps, &a, &b, StepKind::Subtract)?;
            b = b - a.clone();
        }
        push(&mut steps, &a, &b, StepKind::Swap)?;
        std::mem::swap(&mut a, &mut b);
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StepCheck {
    /// Index of the earlier state of the compared pair.
    pub index: usize,
    pub transition_ok: bool,
    pub divisor_set_same: bool,
    pub subgroup_same: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LoopInvariantReport {
    /// Common divisors agree across every transition.
    pub divisor_set_ok: bool,
    /// The subgroup `aℤ + bℤ` agrees across every transition.
    pub subgroup_ok: bool,
    /// Each transition does what its step kind says.
    pub transitions_ok: bool,
    pub per_step: Vec<StepCheck>,
}

impl LoopInvariantReport {
    pub fn holds(&self) -> bool {
        self.divisor_set_ok && self.subgroup_ok && self.transitions_ok
    }
}

/// All common divisors of `a` and `b`, by trial of every `k ≤ min(a, b)`.
pub(crate) fn common_divisors_brute<T: Integer + Clone>(a: &T, b: &T) -> Vec<T> {
    let limit = if a < b { a.clone() } else { b.clone() };
    let mut out = Vec::new();
    let mut k = T::one();
    while k <= limit {
        if a.is_multiple_of(&k) && b.is_multiple_of(&k) {
            out.push(k.clone());
        }
        k = k + T::one();
    }
    out
}

/// The positive generator of `aℤ + bℤ`: the least positive value among
/// `b` and the residues `k·a mod b` for `0 < k < b`.
fn subgroup_generator<T: Integer + Clone>(a: &T, b: &T) -> T {
    let mut best = b.clone();
    let mut residue = T::zero();
    let mut k = T::one();
    while k < *b {
        residue = (residue + a.clone()) % b.clone();
        if !residue.is_zero() && residue < best {
            best = residue.clone();
            if best.is_one() {
                break;
            }
        }
        k = k + T::one();
    }
    best
}

/// Verifies both loop invariants on every consecutive pair of states by
/// brute force: the set of common divisors, and the generated subgroup.
pub fn check_loop_invariants<T>(trace: &EuclidTrace<T>) -> Result<LoopInvariantReport>
where
    T: Integer + Clone + fmt::Display,
{
    let Some(last) = trace.steps.last() else {
        return Err(Error::MalformedTrace("no steps".into()));
    };
    if last.kind != StepKind::Terminate {
        return Err(Error::MalformedTrace("last step is not terminate".into()));
    }
    if let Some(i) = trace.steps[..trace.steps.len() - 1]
        .iter()
        .position(|s| s.kind == StepKind::Terminate)
    {
        return Err(Error::MalformedTrace(format!("terminate at step {i} is not last")));
    }
    if let Some(i) = trace
        .steps
        .iter()
        .position(|s| s.a <= T::zero() || s.b <= T::zero())
    {
        return Err(Error::MalformedTrace(format!("step {i} holds a nonpositive number")));
    }
    if last.a != trace.result {
        return Err(Error::MalformedTrace(format!(
            "result {} differs from the final a={}",
            trace.result, last.a
        )));
    }

    let mut per_step = Vec::with_capacity(trace.steps.len());
    let mut transitions_ok = trace.steps[0].a <= trace.steps[0].b && last.b.is_multiple_of(&last.a);
    for (index, pair) in trace.steps.windows(2).enumerate() {
        let (s, t) = (&pair[0], &pair[1]);
        let transition_ok = match s.kind {
            StepKind::Subtract => s.a < s.b && t.a == s.a && t.b == s.b.clone() - s.a.clone(),
            StepKind::Swap => s.b < s.a && t.a == s.b && t.b == s.a,
            StepKind::Terminate => false,
        };
        let divisor_set_same = common_divisors_brute(&s.a, &s.b) == common_divisors_brute(&t.a, &t.b);
        let subgroup_same = subgroup_generator(&s.a, &s.b) == subgroup_generator(&t.a, &t.b);
        transitions_ok &= transition_ok;
        per_step.push(StepCheck {
            index,
            transition_ok,
            divisor_set_same,
            subgroup_same,
        });
    }
    Ok(LoopInvariantReport {
        divisor_set_ok: per_step.iter().all(|s| s.divisor_set_same),
        subgroup_ok: per_step.iter().all(|s| s.subgroup_same),
        transitions_ok,
        per_step,
    })
}

/// GCD in quotient-remainder form: `b = q·a + r`, replace `b` by `r`.
pub fn gcd<T>(a: &T, b: &T) -> Result<T>
where
    T: Integer + Clone + fmt::Display,
{
    positive("a", a)?;
    positive("b", b)?;
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_zero() {
        let r = a % b.clone();
        a = b;
        b = r;
    }
    Ok(a)
}

/// Witness to `s·a + t·b = g` with `g = gcd(a, b)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BezoutCertificate<T> {
    pub a: T,
    pub b: T,
    pub g: T,
    pub s: BigInt,
    pub t: BigInt,
}

impl<T> BezoutCertificate<T>
where
    T: Integer + Clone + Into<BigInt>,
{
    /// Checks the certificate equation and that `g` divides both inputs.
    pub fn verify(&self) -> bool {
        let (a, b, g): (BigInt, BigInt, BigInt) =
            (self.a.clone().into(), self.b.clone().into(), self.g.clone().into());
        &self.s * &a + &self.t * &b == g && self.a.is_multiple_of(&self.g) && self.b.is_multiple_of(&self.g)
    }
}

/// Extended Euclid. Coefficients are not unique; the certificate equation
/// is the contract.
pub fn bezout<T>(a: &T, b: &T) -> Result<BezoutCertificate<T>>
where
    T: Integer + Clone + fmt::Display + Into<BigInt>,
{
    let g = gcd(a, b)?;
    let (mut old_r, mut r): (BigInt, BigInt) = (a.clone().into(), b.clone().into());
    let (mut old_s, mut s) = (BigInt::one(), BigInt::zero());
    let (mut old_t, mut t) = (BigInt::zero(), BigInt::one());
    while !r.is_zero() {
        let q = &old_r / &r;
        let next_r = &old_r - &q * &r;
        old_r = std::mem::replace(&mut r, next_r);
        let next_s = &old_s - &q * &s;
        old_s = std::mem::replace(&mut s, next_s);
        let next_t = &old_t - &q * &t;
        old_t = std::mem::replace(&mut t, next_t);
    }
    debug_assert_eq!(old_r, g.clone().into());
    Ok(BezoutCertificate {
        a: a.clone(),
        b: b.clone(),
        g,
        s: old_s,
        t: old_t,
    })
}

/// True iff every common divisor of `a` and `b` divides `gcd(a, b)`.
pub fn porism_check<T>(a: &T, b: &T) -> Result<bool>
where
    T: Integer + Clone + fmt::Display,
{
    let g = gcd(a, b)?;
    Ok(common_divisors_brute(a, b).iter().all(|c| g.is_multiple_of(c)))
}

pub(crate) fn is_prime<T: Integer + Clone>(p: &T) -> bool {
    let two = T::one() + T::one();
    if *p < two {
        return false;
    }
    let mut k = two;
    while k.clone() * k.clone() <= *p {
        if p.is_multiple_of(&k) {
            return false;
        }
        k = k + T::one();
    }
    true
}

/// How the Bézout argument concluded that `p` divides a factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LemmaConclusion {
    /// `p | a` directly.
    DividesFirst,
    /// `s·p + t·a = 1`, so `b = p·(s·b + t·k)` where `a·b = p·k`.
    DividesSecond {
        s: BigInt,
        t: BigInt,
        quotient: BigInt,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EuclidLemmaProof {
    pub conclusion: LemmaConclusion,
    /// The conclusion agrees with testing `p | a` or `p | b` directly.
    pub direct_check: bool,
}

impl EuclidLemmaProof {
    pub fn holds(&self) -> bool {
        self.direct_check
    }
}

/// Executes the Bézout proof of Euclid's lemma for `p | a·b`.
pub fn euclid_lemma_bezout_proof<T>(p: &T, a: &T, b: &T) -> Result<EuclidLemmaProof>
where
    T: Integer + Clone + fmt::Display + Into<BigInt>,
{
    positive("a", a)?;
    positive("b", b)?;
    if !is_prime(p) {
        return Err(Error::Precondition(format!("{p} is not prime")));
    }
    let (pb, ab): (BigInt, BigInt) = (p.clone().into(), a.clone().into() * b.clone().into());
    let (k, rem) = ab.div_rem(&pb);
    if !rem.is_zero() {
        return Err(Error::Precondition(format!("{p} does not divide {a}\u{b7}{b}")));
    }
    if a.is_multiple_of(p) {
        return Ok(EuclidLemmaProof {
            conclusion: LemmaConclusion::DividesFirst,
            direct_check: true,
        });
    }
    let cert = bezout(p, a)?;
    if !cert.g.is_one() {
        return Err(Error::Precondition(format!(
            "gcd({p}, {a}) = {} although {p} is prime and does not divide {a}",
            cert.g
        )));
    }
    // s·p + t·a = 1  ⇒  s·p·b + t·a·b = b  ⇒  b = p·(s·b + t·k).
    let b_int: BigInt = b.clone().into();
    let quotient = &cert.s * &b_int + &cert.t * &k;
    let direct_check = &pb * &quotient == b_int && b.is_multiple_of(p);
    Ok(EuclidLemmaProof {
        conclusion: LemmaConclusion::DividesSecond {
            s: cert.s,
            t: cert.t,
            quotient,
        },
        direct_check,
    })
}

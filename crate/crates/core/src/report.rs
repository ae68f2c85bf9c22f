//! The JSON report envelope and self-describing witnesses.
//!
//! Elements are rendered as strings: decimal for integer monoids and the
//! pair form `(a,b)` for quadratic ones. Object keys are emitted in sorted
//! order and sets in canonical element order, so identical inputs give
//! byte-identical reports.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::dsl::{parse_element, parse_monoid_spec};
use crate::error::{Error, Result};
use crate::factorization::{
    algebraic_gcd, is_irreducible, EuclidLemmaFailure, Factorization, GcdReport,
    NonUniqueFactorization,
};
use crate::monoid::{Element, Limits, MonoidDescriptor};
use crate::proportion::{
    alternando_check, fraction_equal, pythagorean, repair_check, vii19_check, vii20_check,
    vii6_check, CanonicalPartsMode, ProportionQuad, TransitivityFailure,
};

pub const SCHEMA_VERSION: &str = "1.0";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportEnvelope {
    pub schema_version: String,
    /// Canonical specification text of the monoid.
    pub monoid: String,
    pub command: String,
    pub payload: Value,
    pub witnesses: Vec<Witness>,
}

impl ReportEnvelope {
    pub fn new(monoid: MonoidDescriptor, command: &str, payload: Value, witnesses: Vec<Witness>) -> Self {
        ReportEnvelope {
            schema_version: SCHEMA_VERSION.to_string(),
            monoid: monoid.to_string(),
            command: command.to_string(),
            payload,
            witnesses,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("malformed report: {e}")))
    }

    pub fn descriptor(&self) -> Result<MonoidDescriptor> {
        parse_monoid_spec(&self.monoid)
    }

    /// Re-verifies every witness against the library.
    pub fn verify_witnesses(&self, limits: &Limits) -> Result<bool> {
        let desc = self.descriptor()?;
        for w in &self.witnesses {
            if !w.verify(desc, limits)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Plain `key: value` lines, one per payload field, then one line per
    /// witness.
    pub fn to_text(&self) -> String {
        let mut out = format!("monoid: {}\ncommand: {}\n", self.monoid, self.command);
        if let Value::Object(map) = &self.payload {
            for (k, v) in map {
                out.push_str(&format!("{k}: {}\n", text_value(v)));
            }
        }
        for w in &self.witnesses {
            let v = serde_json::to_value(w).expect("witness serializes");
            out.push_str(&format!("witness: {}\n", text_value(&v)));
        }
        out
    }
}

fn text_value(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

pub type Pair = [String; 2];
pub type Quad = [String; 4];

/// A counterexample or refutation, tagged by `kind` in JSON.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// `left ~ m` and `m ~ right` for every listed middle `m`, yet `left ≁ right`.
    TransitivityFailure { left: Pair, right: Pair, middles: Vec<Pair> },
    NoAlgebraicGcd {
        pair: Pair,
        common_divisors: Vec<String>,
        maximal_common_divisors: Vec<String>,
    },
    NonUniqueFactorization { element: String, factorizations: Vec<Vec<String>> },
    EuclidLemmaFailure { p: String, a: String, b: String },
    /// Pythagorean proportionality and `ad = bc` disagree.
    ProportionMismatch { quad: Quad, pythagorean: bool, fraction_equal: bool },
    NoPythagoreanWitness { quad: Quad, canonical: bool },
    FractionInequality { quad: Quad },
    /// `divisor` is a proper, non-identity divisor; absent when the element
    /// is the identity.
    NotIrreducible { element: String, divisor: Option<String> },
    AlternandoFailure { quad: Quad },
    Vii6Failure { quad: Quad, canonical: bool },
    RepairFailure { quad: Quad },
    LeastPairFailure { c: String, d: String },
}

pub fn render(e: &Element) -> String {
    e.to_pair_form()
}

pub fn render_all<'a>(items: impl IntoIterator<Item = &'a Element>) -> Vec<String> {
    items.into_iter().map(render).collect()
}

pub fn render_pair(p: &(Element, Element)) -> Pair {
    [render(&p.0), render(&p.1)]
}

pub fn render_quad(q: &ProportionQuad) -> Quad {
    [render(&q.a), render(&q.b), render(&q.c), render(&q.d)]
}

impl Witness {
    pub fn transitivity(f: &TransitivityFailure) -> Self {
        Witness::TransitivityFailure {
            left: render_pair(&f.left),
            right: render_pair(&f.right),
            middles: f.middles.iter().map(render_pair).collect(),
        }
    }

    pub fn no_gcd(g: &GcdReport) -> Self {
        Witness::NoAlgebraicGcd {
            pair: render_pair(&g.pair),
            common_divisors: render_all(&g.common_divisors),
            maximal_common_divisors: render_all(&g.maximal_common_divisors),
        }
    }

    pub fn non_unique(n: &NonUniqueFactorization) -> Self {
        Witness::NonUniqueFactorization {
            element: render(&n.element),
            factorizations: n.factorizations.iter().map(|f| render_all(&f.factors)).collect(),
        }
    }

    pub fn euclid_lemma(f: &EuclidLemmaFailure) -> Self {
        Witness::EuclidLemmaFailure {
            p: render(&f.p),
            a: render(&f.a),
            b: render(&f.b),
        }
    }

    /// Checks the witness from scratch in `desc`.
    pub fn verify(&self, desc: MonoidDescriptor, limits: &Limits) -> Result<bool> {
        let el = |s: &String| parse_element(desc, s);
        let pair = |p: &Pair| Ok::<_, Error>((el(&p[0])?, el(&p[1])?));
        let quad = |q: &Quad| ProportionQuad::new(el(&q[0])?, el(&q[1])?, el(&q[2])?, el(&q[3])?);
        let mode = |canonical: bool| {
            if canonical {
                CanonicalPartsMode::CanonicalOnly
            } else {
                CanonicalPartsMode::AnyWitness
            }
        };
        match self {
            Witness::TransitivityFailure { left, right, middles } => TransitivityFailure {
                left: pair(left)?,
                right: pair(right)?,
                middles: middles.iter().map(pair).collect::<Result<_>>()?,
            }
            .verify(limits),
            Witness::NoAlgebraicGcd {
                pair: p,
                common_divisors,
                maximal_common_divisors,
            } => {
                let (a, b) = pair(p)?;
                let g = algebraic_gcd(&a, &b, limits)?;
                Ok(g.algebraic_gcd.is_none()
                    && render_all(&g.common_divisors) == *common_divisors
                    && render_all(&g.maximal_common_divisors) == *maximal_common_divisors)
            }
            Witness::NonUniqueFactorization { element, factorizations } => {
                let element = el(element)?;
                let factorizations = factorizations
                    .iter()
                    .map(|f| {
                        Ok(Factorization {
                            element: element.clone(),
                            factors: f.iter().map(el).collect::<Result<_>>()?,
                        })
                    })
                    .collect::<Result<_>>()?;
                NonUniqueFactorization { element, factorizations }.verify(limits)
            }
            Witness::EuclidLemmaFailure { p, a, b } => EuclidLemmaFailure {
                p: el(p)?,
                a: el(a)?,
                b: el(b)?,
            }
            .verify(limits),
            Witness::ProportionMismatch {
                quad: q,
                pythagorean,
                fraction_equal,
            } => {
                let r = vii19_check(&quad(q)?, limits)?;
                Ok(!r.equivalent && r.pyth == *pythagorean && r.frac == *fraction_equal)
            }
            Witness::NoPythagoreanWitness { quad: q, canonical } => {
                Ok(pythagorean(&quad(q)?, mode(*canonical), limits)?.is_none())
            }
            Witness::FractionInequality { quad: q } => Ok(!fraction_equal(&quad(q)?)),
            Witness::NotIrreducible { element, divisor } => {
                let x = el(element)?;
                match divisor {
                    None => Ok(x.is_identity()),
                    Some(d) => {
                        let d = el(d)?;
                        Ok(!d.is_identity() && d != x && d.divides(&x)? && !is_irreducible(&x, limits)?)
                    }
                }
            }
            Witness::AlternandoFailure { quad: q } => Ok(!alternando_check(&quad(q)?, limits)?.holds),
            Witness::Vii6Failure { quad: q, canonical } => {
                Ok(!vii6_check(&quad(q)?, mode(*canonical), limits)?.holds)
            }
            Witness::RepairFailure { quad: q } => Ok(!repair_check(&quad(q)?, limits)?.holds()),
            Witness::LeastPairFailure { c, d } => Ok(!vii20_check(&el(c)?, &el(d)?, limits)?.holds()),
        }
    }
}

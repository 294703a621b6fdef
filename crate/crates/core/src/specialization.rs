//! Cyclotomic specializations v_{C,j} -> zeta * y^{n_{C,j}} and the valuation
//! and degree of the specialized Schur element.
//!
//! Two independent routes are provided: [`valuation_degree`] evaluates the
//! closed formula over the factored model, while [`expand`] multiplies out the
//! exact Laurent polynomial in y and [`ExpandedSchur::val_deg`] reads the
//! endpoints off. The two must always agree; the expansion is the trusted
//! oracle and favors clarity over speed.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::schur::{Monomial, SchurModel};

/// An integer exponent vector n_{C,j} with optional per-slot root-of-unity
/// twists realizing substitutions v_{C,j} -> zeta * y^{n_{C,j}}.
#[derive(Clone, Debug, PartialEq)]
pub struct Specialization {
    exponents: Vec<i64>,
    twists: Vec<CycNum>,
}

impl Specialization {
    /// Untwisted specialization v_{C,j} -> y^{n_{C,j}}.
    pub fn new(exponents: Vec<i64>) -> Self {
        let twists = vec![CycNum::one(); exponents.len()];
        Specialization { exponents, twists }
    }

    /// Twisted specialization; every twist must be a root of unity.
    pub fn with_twists(exponents: Vec<i64>, twists: Vec<CycNum>) -> Result<Self> {
        if twists.len() != exponents.len() {
            return Err(Error::DimensionMismatch { expected: exponents.len(), got: twists.len() });
        }
        for (i, t) in twists.iter().enumerate() {
            if !t.is_root_of_unity() {
                return Err(Error::BadTwist(i));
            }
        }
        Ok(Specialization { exponents, twists })
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn exponents(&self) -> &[i64] {
        &self.exponents
    }

    pub fn twists(&self) -> &[CycNum] {
        &self.twists
    }

    pub fn is_twisted(&self) -> bool {
        self.twists.iter().any(|t| !t.is_one())
    }
}

/// (y^n)^+ : the positive part of an integer exponent.
pub fn pos_part(n: i64) -> i64 {
    n.max(0)
}

/// (y^n)^- : the negative part of an integer exponent.
pub fn neg_part(n: i64) -> i64 {
    n.min(0)
}

/// The exponent of y that a monomial specializes to: the dot product of its
/// exponent vector with the specialization exponents.
pub fn monomial_exponent(m: &Monomial, s: &Specialization) -> Result<i64> {
    if m.len() != s.len() {
        return Err(Error::DimensionMismatch { expected: s.len(), got: m.len() });
    }
    Ok(m.exps().iter().zip(s.exponents()).map(|(a, n)| a * n).sum())
}

/// Valuation and degree of a specialized Schur element.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ValDeg {
    pub val: i64,
    pub deg: i64,
}

/// The closed formula for valuation and degree: the leading-monomial term
/// plus, per factor, mult * deg(psi) times the negative (resp. positive) part
/// of the specialized monomial exponent. Rejects twisted specializations.
pub fn valuation_degree(model: &SchurModel, s: &Specialization) -> Result<ValDeg> {
    if s.is_twisted() {
        return Err(Error::TwistedSpecialization);
    }
    let base = monomial_exponent(&model.leading, s)?;
    let mut val = base;
    let mut deg = base;
    for f in &model.factors {
        let m = monomial_exponent(&f.oriented_monomial(), s)?;
        let weight = f.mult as i64 * f.psi.degree() as i64;
        val += weight * neg_part(m);
        deg += weight * pos_part(m);
    }
    Ok(ValDeg { val, deg })
}

/// An exact Laurent polynomial in y with cyclotomic coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpandedSchur {
    terms: BTreeMap<i64, CycNum>,
}

impl ExpandedSchur {
    pub fn from_terms(terms: BTreeMap<i64, CycNum>) -> Self {
        let terms = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        ExpandedSchur { terms }
    }

    pub fn terms(&self) -> &BTreeMap<i64, CycNum> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Minimum and maximum exponent. Errors on the empty polynomial.
    pub fn val_deg(&self) -> Result<ValDeg> {
        let val = *self.terms.keys().next().ok_or(Error::EmptyPolynomial)?;
        let deg = *self.terms.keys().next_back().ok_or(Error::EmptyPolynomial)?;
        Ok(ValDeg { val, deg })
    }

    /// The polynomial scaled by a rational integer.
    pub fn scaled(&self, k: i64) -> ExpandedSchur {
        let factor = CycNum::from_rational(BigRational::from_integer(BigInt::from(k)));
        let terms = self.terms.iter().map(|(e, c)| (*e, c * &factor)).collect();
        ExpandedSchur::from_terms(terms)
    }
}

impl std::fmt::Display for ExpandedSchur {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let coeff = c.to_string();
            let needs_parens = coeff.contains(' ') || coeff.contains('*');
            let wrapped =
                if needs_parens { format!("({})", coeff) } else { coeff.clone() };
            match *e {
                0 => write!(f, "{}", wrapped)?,
                1 if c.is_one() => write!(f, "y")?,
                1 => write!(f, "{}*y", wrapped)?,
                _ if c.is_one() => write!(f, "y^{}", e)?,
                _ => write!(f, "{}*y^{}", wrapped, e)?,
            }
        }
        Ok(())
    }
}

fn laurent_mul(a: &BTreeMap<i64, CycNum>, b: &BTreeMap<i64, CycNum>) -> BTreeMap<i64, CycNum> {
    let mut out: BTreeMap<i64, CycNum> = BTreeMap::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e = ea + eb;
            let c = ca * cb;
            match out.get_mut(&e) {
                Some(acc) => *acc = &*acc + &c,
                None => {
                    out.insert(e, c);
                }
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Multiply out the specialized Schur element exactly: coefficient, twisted
/// leading term, and each factor psi(zeta * y^m)^mult, where m is the
/// specialized monomial exponent and zeta the product of twists raised to the
/// monomial's exponents. Errors when a specialization kills a factor (a
/// constant factor evaluating to zero).
pub fn expand(model: &SchurModel, s: &Specialization) -> Result<ExpandedSchur> {
    if model.leading.len() != s.len() {
        return Err(Error::DimensionMismatch { expected: s.len(), got: model.leading.len() });
    }
    let lead_exp = monomial_exponent(&model.leading, s)?;
    let mut lead_coeff = model.coefficient.clone();
    for (t, e) in s.twists().iter().zip(model.leading.exps()) {
        lead_coeff = &lead_coeff * &t.powi(*e)?;
    }
    let mut acc: BTreeMap<i64, CycNum> = BTreeMap::new();
    acc.insert(lead_exp, lead_coeff);

    for (i, f) in model.factors.iter().enumerate() {
        let oriented = f.oriented_monomial();
        let m = monomial_exponent(&oriented, s)?;
        let mut zeta = CycNum::one();
        for (t, e) in s.twists().iter().zip(oriented.exps()) {
            zeta = &zeta * &t.powi(*e)?;
        }
        let mut base: BTreeMap<i64, CycNum> = BTreeMap::new();
        for (k, coeff) in f.psi.coefficients().into_iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            let c = &coeff * &zeta.pow(k as u64);
            let e = k as i64 * m;
            match base.get_mut(&e) {
                Some(acc) => *acc = &*acc + &c,
                None => {
                    base.insert(e, c);
                }
            }
        }
        base.retain(|_, c| !c.is_zero());
        if base.is_empty() {
            return Err(Error::SpecializationKillsFactor { factor: i });
        }
        for _ in 0..f.mult {
            acc = laurent_mul(&acc, &base);
        }
    }
    if acc.is_empty() {
        // unreachable for a valid model, but kept as a hard check
        return Err(Error::ZeroValue("expanded Schur element"));
    }
    Ok(ExpandedSchur { terms: acc })
}

/// Exact check of the index relation: parent = index * child as Laurent
/// polynomials.
pub fn index_relation_holds(parent: &ExpandedSchur, child: &ExpandedSchur, index: u64) -> bool {
    *parent == child.scaled(index as i64)
}

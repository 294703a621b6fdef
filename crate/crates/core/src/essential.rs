//! Detection of essential monomials and essential hyperplanes.
//!
//! A factor monomial M is p-essential when some factor psi(M) of a Schur
//! element has psi(1) divisible by p, decided exactly through norms at
//! rational-prime granularity. Each essential monomial determines the integer
//! hyperplane sum(a_{C,j} t_{C,j}) = 0.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::schur::{canonical_monomial, Monomial, SchurModel};
use crate::specialization::{monomial_exponent, Specialization};

/// An essential hyperplane, stored as a primitive integer normal with
/// canonical orientation (first nonzero entry positive).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Hyperplane {
    normal: Monomial,
}

impl Hyperplane {
    /// Canonicalizes the orientation; rejects zero and imprimitive vectors.
    pub fn new(normal: Vec<i64>) -> Result<Self> {
        let m = Monomial::new(normal);
        if m.is_zero() || m.content() != 1 {
            return Err(Error::BadHyperplane);
        }
        let (canonical, _) = canonical_monomial(&m)?;
        Ok(Hyperplane { normal: canonical })
    }

    pub fn from_monomial(m: &Monomial) -> Result<Self> {
        Hyperplane::new(m.exps().to_vec())
    }

    pub fn normal(&self) -> &Monomial {
        &self.normal
    }

    /// Display label like `2t_0 - t_1 - t_2 = 0`.
    pub fn label(&self) -> String {
        let mut s = String::new();
        for (i, &c) in self.normal.exps().iter().enumerate() {
            if c == 0 {
                continue;
            }
            if s.is_empty() {
                if c < 0 {
                    s.push('-');
                }
            } else if c < 0 {
                s.push_str(" - ");
            } else {
                s.push_str(" + ");
            }
            let mag = c.unsigned_abs();
            if mag != 1 {
                s.push_str(&mag.to_string());
            }
            s.push_str(&format!("t_{}", i));
        }
        s.push_str(" = 0");
        s
    }
}

impl fmt::Display for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// Where an essential monomial was found: a character name and the factor
/// position inside its model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub character: String,
    pub factor: usize,
}

/// A canonical monomial that is p-essential for at least one rational prime,
/// with all contributing primes and the factors witnessing them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EssentialMonomial {
    pub monomial: Monomial,
    pub primes: BTreeSet<u64>,
    pub witnesses: Vec<Witness>,
}

/// Scan every factor of every model; a factor witnesses its canonical
/// monomial for the primes dividing the norm of psi(1). Monomials whose every
/// psi has unit psi(1) are absent from the output.
pub fn essential_monomials(models: &[SchurModel]) -> Result<Vec<EssentialMonomial>> {
    let mut found: BTreeMap<Monomial, (BTreeSet<u64>, Vec<Witness>)> = BTreeMap::new();
    for model in models {
        for (i, f) in model.factors.iter().enumerate() {
            let primes = f.psi.eval_at_one().norm_primes()?;
            if primes.is_empty() {
                continue;
            }
            let entry = found.entry(f.canonical_monomial().clone()).or_default();
            entry.0.extend(primes);
            entry.1.push(Witness { character: model.char_name.clone(), factor: i });
        }
    }
    Ok(found
        .into_iter()
        .map(|(monomial, (primes, witnesses))| EssentialMonomial { monomial, primes, witnesses })
        .collect())
}

/// The deduplicated canonical normals of all essential monomials.
pub fn essential_hyperplanes(models: &[SchurModel]) -> Result<Vec<Hyperplane>> {
    essential_monomials(models)?
        .into_iter()
        .map(|em| Hyperplane::from_monomial(&em.monomial))
        .collect()
}

/// The hyperplanes whose normal is orthogonal to the specialization exponents.
/// Twisted specializations are rejected.
pub fn hyperplanes_containing<'a>(
    s: &Specialization,
    hs: &'a [Hyperplane],
) -> Result<Vec<&'a Hyperplane>> {
    if s.is_twisted() {
        return Err(Error::TwistedSpecialization);
    }
    let mut out = Vec::new();
    for h in hs {
        if monomial_exponent(h.normal(), s)? == 0 {
            out.push(h);
        }
    }
    Ok(out)
}

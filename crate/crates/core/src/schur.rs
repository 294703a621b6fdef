//! The factored generic Schur element data model.
//!
//! A Schur element is stored as a coefficient, a leading monomial with
//! orbit-sums zero, and a list of factors psi(M)^n where psi is a monic
//! K-cyclotomic polynomial and M a primitive monomial (gcd of exponents 1,
//! orbit-sums zero). Factor monomials are kept canonically oriented together
//! with the orientation sign of the supplied data, so equality and
//! deduplication work on the canonical part while every valuation-sensitive
//! computation sees the original orientation.

use std::fmt;

use num_integer::Integer;

use crate::cyclotomic::{CycNum, CycPoly};
use crate::error::{Error, Result};

/// One orbit of reflecting hyperplanes, carrying the order e_C of its
/// pointwise stabilizers: the orbit contributes e_C variable slots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    pub name: String,
    pub order: usize,
}

/// The flat ordering of variable slots (C, j), shared by every vector in a
/// dataset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarIndex {
    orbits: Vec<Orbit>,
    total: usize,
}

impl VarIndex {
    pub fn new(orbits: Vec<Orbit>) -> Result<Self> {
        if orbits.is_empty() {
            return Err(Error::Semantic("at least one orbit is required".into()));
        }
        for o in &orbits {
            if o.order == 0 {
                return Err(Error::Semantic(format!("orbit `{}` has order 0", o.name)));
            }
        }
        let total = orbits.iter().map(|o| o.order).sum();
        Ok(VarIndex { orbits, total })
    }

    pub fn orbits(&self) -> &[Orbit] {
        &self.orbits
    }

    pub fn total(&self) -> usize {
        self.total
    }

    /// Slot ranges per orbit, in flat order.
    pub fn orbit_ranges(&self) -> Vec<std::ops::Range<usize>> {
        let mut out = Vec::with_capacity(self.orbits.len());
        let mut start = 0;
        for o in &self.orbits {
            out.push(start..start + o.order);
            start += o.order;
        }
        out
    }

    /// The spetsial exponent vector: first slot of each orbit 1, the rest 0.
    pub fn spetsial_exponents(&self) -> Vec<i64> {
        let mut v = vec![0i64; self.total];
        for r in self.orbit_ranges() {
            v[r.start] = 1;
        }
        v
    }
}

/// Orientation of a factor monomial relative to its canonical representative.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// An integer exponent vector over the flat slot ordering.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    exps: Vec<i64>,
}

impl Monomial {
    pub fn new(exps: Vec<i64>) -> Self {
        Monomial { exps }
    }

    pub fn exps(&self) -> &[i64] {
        &self.exps
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn negated(&self) -> Monomial {
        Monomial { exps: self.exps.iter().map(|e| -e).collect() }
    }

    /// gcd of the absolute values of all entries; 0 for the zero vector.
    pub fn content(&self) -> u64 {
        self.exps.iter().fold(0u64, |g, &e| g.gcd(&e.unsigned_abs()))
    }

    /// Sums of the entries over each orbit of `vars`.
    pub fn orbit_sums(&self, vars: &VarIndex) -> Result<Vec<i64>> {
        if self.exps.len() != vars.total() {
            return Err(Error::DimensionMismatch { expected: vars.total(), got: self.exps.len() });
        }
        Ok(vars.orbit_ranges().into_iter().map(|r| self.exps[r].iter().sum()).collect())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.exps.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", e)?;
        }
        write!(f, ")")
    }
}

/// Canonical representative of a monomial up to inversion: the first nonzero
/// entry is made positive. Returns the sign applied. Errors on the zero
/// vector. Idempotent.
pub fn canonical_monomial(m: &Monomial) -> Result<(Monomial, Sign)> {
    match m.exps.iter().find(|&&e| e != 0) {
        None => Err(Error::ZeroMonomial),
        Some(&first) if first > 0 => Ok((m.clone(), Sign::Plus)),
        Some(_) => Ok((m.negated(), Sign::Minus)),
    }
}

/// One factor psi(M)^mult of a Schur element. The monomial is stored
/// canonically oriented; `sign` recovers the orientation of the supplied
/// factorization, which is what the valuation/degree computations use.
#[derive(Clone, Debug, PartialEq)]
pub struct SchurFactor {
    pub psi: CycPoly,
    monomial: Monomial,
    sign: Sign,
    pub mult: u64,
}

impl SchurFactor {
    /// Build from a monomial as supplied by a dataset; errors on the zero
    /// vector.
    pub fn new(psi: CycPoly, monomial: Monomial, mult: u64) -> Result<Self> {
        let (canonical, sign) = canonical_monomial(&monomial)?;
        Ok(SchurFactor { psi, monomial: canonical, sign, mult })
    }

    pub fn canonical_monomial(&self) -> &Monomial {
        &self.monomial
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    /// The monomial in the orientation of the supplied factorization.
    pub fn oriented_monomial(&self) -> Monomial {
        match self.sign {
            Sign::Plus => self.monomial.clone(),
            Sign::Minus => self.monomial.negated(),
        }
    }
}

/// The factored generic Schur element of one irreducible character.
#[derive(Clone, Debug, PartialEq)]
pub struct SchurModel {
    pub char_name: String,
    /// Dense index of the character in dataset order.
    pub char_index: usize,
    pub coefficient: CycNum,
    pub leading: Monomial,
    pub factors: Vec<SchurFactor>,
}

/// A named failure of one of the model invariants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    /// Factor position, when the violation is factor-local.
    pub factor: Option<usize>,
    pub rule: &'static str,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.factor {
            Some(i) => write!(f, "{} at factor {}: {}", self.rule, i, self.detail),
            None => write!(f, "{}: {}", self.rule, self.detail),
        }
    }
}

/// Check every model invariant against `vars`. Returns the list of violations
/// (empty iff the model is valid); dimension mismatches are hard errors.
pub fn validate_model(model: &SchurModel, vars: &VarIndex) -> Result<Vec<Violation>> {
    let total = vars.total();
    if model.leading.len() != total {
        return Err(Error::DimensionMismatch { expected: total, got: model.leading.len() });
    }
    for f in &model.factors {
        if f.canonical_monomial().len() != total {
            return Err(Error::DimensionMismatch {
                expected: total,
                got: f.canonical_monomial().len(),
            });
        }
    }

    let mut violations = Vec::new();
    if model.coefficient.is_zero() {
        violations.push(Violation {
            factor: None,
            rule: "coefficient violation",
            detail: "leading coefficient is zero".into(),
        });
    }
    for (sum, orbit) in model.leading.orbit_sums(vars)?.iter().zip(vars.orbits()) {
        if *sum != 0 {
            violations.push(Violation {
                factor: None,
                rule: "orbit-sum violation",
                detail: format!("leading monomial sums to {} over orbit `{}`", sum, orbit.name),
            });
        }
    }
    for (i, f) in model.factors.iter().enumerate() {
        let m = f.oriented_monomial();
        if m.content() != 1 {
            violations.push(Violation {
                factor: Some(i),
                rule: "gcd violation",
                detail: format!("monomial {} has exponent gcd {}", m, m.content()),
            });
        }
        for (sum, orbit) in m.orbit_sums(vars)?.iter().zip(vars.orbits()) {
            if *sum != 0 {
                violations.push(Violation {
                    factor: Some(i),
                    rule: "orbit-sum violation",
                    detail: format!("monomial {} sums to {} over orbit `{}`", m, sum, orbit.name),
                });
            }
        }
        if f.mult == 0 {
            violations.push(Violation {
                factor: Some(i),
                rule: "multiplicity violation",
                detail: "factor multiplicity must be >= 1".into(),
            });
        }
    }
    Ok(violations)
}


#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn canonical_examples() {
        let m = Monomial::new(vec![2, -1, -1]);
        let (c, s) = canonical_monomial(&m).unwrap();
        assert_eq!(c, m);
        assert_eq!(s, Sign::Plus);

        let m = Monomial::new(vec![-2, 1, 1]);
        let (c, s) = canonical_monomial(&m).unwrap();
        assert_eq!(c, Monomial::new(vec![2, -1, -1]));
        assert_eq!(s, Sign::Minus);

        let m = Monomial::new(vec![0, -1, 1]);
        let (c, s) = canonical_monomial(&m).unwrap();
        assert_eq!(c, Monomial::new(vec![0, 1, -1]));
        assert_eq!(s, Sign::Minus);

        assert!(canonical_monomial(&Monomial::new(vec![0, 0])).is_err());
    }

    #[test]
    fn g4_theta_model_validates() {
        let (vars, model) = test_models::g4_theta();
        assert!(validate_model(&model, &vars).unwrap().is_empty());
        // the supplied orientations survive in the factors
        assert_eq!(model.factors[3].oriented_monomial(), Monomial::new(vec![-1, 2, -1]));
        assert_eq!(model.factors[3].canonical_monomial(), &Monomial::new(vec![1, -2, 1]));
    }

    #[test]
    fn gcd_violation_detected() {
        let (vars, mut model) = test_models::g4_theta();
        model.factors[0] =
            SchurFactor::new(model.factors[0].psi.clone(), Monomial::new(vec![2, -2, 0]), 1)
                .unwrap();
        let vs = validate_model(&model, &vars).unwrap();
        assert!(vs.iter().any(|v| v.rule == "gcd violation" && v.factor == Some(0)));
    }

    #[test]
    fn orbit_sum_violation_detected() {
        let vars = VarIndex::new(vec![Orbit { name: "C0".into(), order: 3 }]).unwrap();
        let model = SchurModel {
            char_name: "x".into(),
            char_index: 0,
            coefficient: CycNum::one(),
            leading: Monomial::new(vec![0, 0, 0]),
            factors: vec![SchurFactor::new(
                CycPoly::named(2).unwrap(),
                Monomial::new(vec![1, 0, 0]),
                1,
            )
            .unwrap()],
        };
        let vs = validate_model(&model, &vars).unwrap();
        assert_eq!(vs.len(), 1);
        assert_eq!(vs[0].rule, "orbit-sum violation");
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let (_, model) = test_models::g4_theta();
        let vars = VarIndex::new(vec![Orbit { name: "C0".into(), order: 2 }]).unwrap();
        assert!(matches!(
            validate_model(&model, &vars),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn broken_invariants_always_detected() {
        // mutate the valid model one constraint at a time
        let (vars, model) = test_models::g4_theta();

        let mut bad = model.clone();
        bad.coefficient = CycNum::zero();
        assert!(!validate_model(&bad, &vars).unwrap().is_empty());

        let mut bad = model.clone();
        bad.leading = Monomial::new(vec![1, 0, 0]);
        assert!(!validate_model(&bad, &vars).unwrap().is_empty());

        let mut bad = model.clone();
        bad.factors[1] =
            SchurFactor::new(bad.factors[1].psi.clone(), Monomial::new(vec![3, -3, 0]), 1)
                .unwrap();
        assert!(!validate_model(&bad, &vars).unwrap().is_empty());
    }

    fn arb_monomial() -> impl Strategy<Value = Monomial> {
        prop::collection::vec(-5i64..=5, 1..=6)
            .prop_filter("nonzero", |v| v.iter().any(|&e| e != 0))
            .prop_map(Monomial::new)
    }

    proptest! {
        #[test]
        fn canonical_is_idempotent_and_odd(m in arb_monomial()) {
            let (c, s) = canonical_monomial(&m).unwrap();
            let (c2, s2) = canonical_monomial(&c).unwrap();
            prop_assert_eq!(&c2, &c);
            prop_assert_eq!(s2, Sign::Plus);

            let (cn, sn) = canonical_monomial(&m.negated()).unwrap();
            prop_assert_eq!(&cn, &c);
            prop_assert_eq!(sn.as_i8(), -s.as_i8());
        }
    }
}

//! Exact arithmetic in cyclotomic fields Q(zeta_c) and cyclotomic polynomials.
//!
//! A [`CycNum`] is stored as a rational coefficient vector of length phi(c)
//! over the power basis 1, zeta_c, ..., zeta_c^(phi(c)-1), reduced modulo the
//! c-th cyclotomic polynomial. Binary operations unify conductors by lcm, so
//! equality is decidable by comparing reduced vectors. No floating point is
//! used anywhere.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

// ---------------------------------------------------------------------------
// Integer cyclotomic polynomials
// ---------------------------------------------------------------------------

/// Euler's totient.
pub fn totient(n: u64) -> u64 {
    assert!(n >= 1);
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// All divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut divs = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n % i == 0 {
            divs.push(i);
            if i != n / i {
                divs.push(n / i);
            }
        }
        i += 1;
    }
    divs.sort_unstable();
    divs
}

/// Exact division of integer polynomials by a monic divisor.
fn int_poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    debug_assert!(den.last().map(|c| c.is_one()).unwrap_or(false));
    let mut rem: Vec<BigInt> = num.to_vec();
    let dn = den.len() - 1;
    let qn = rem.len() - 1 - dn;
    let mut quot = vec![BigInt::zero(); qn + 1];
    for k in (0..=qn).rev() {
        let c = std::mem::take(&mut rem[k + dn]);
        if !c.is_zero() {
            for (i, d) in den.iter().enumerate().take(dn) {
                rem[k + i] -= &c * d;
            }
        }
        quot[k] = c;
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()));
    quot
}

fn phi_cache() -> &'static Mutex<HashMap<u64, Arc<Vec<BigInt>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<BigInt>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Integer coefficients of the n-th cyclotomic polynomial, low-to-high,
/// computed by exact division of x^n - 1 by the proper-divisor cyclotomics.
pub fn cyclotomic_coeffs(n: u64) -> Arc<Vec<BigInt>> {
    assert!(n >= 1);
    if let Some(hit) = phi_cache().lock().unwrap().get(&n) {
        return hit.clone();
    }
    let coeffs = if n == 1 {
        vec![BigInt::from(-1), BigInt::one()]
    } else {
        let mut p = vec![BigInt::zero(); n as usize + 1];
        p[0] = BigInt::from(-1);
        p[n as usize] = BigInt::one();
        for d in divisors(n) {
            if d < n {
                p = int_poly_div_exact(&p, &cyclotomic_coeffs(d));
            }
        }
        p
    };
    debug_assert_eq!(coeffs.len() as u64, totient(n) + 1);
    let arc = Arc::new(coeffs);
    phi_cache().lock().unwrap().insert(n, arc.clone());
    arc
}

// ---------------------------------------------------------------------------
// CycNum
// ---------------------------------------------------------------------------

/// An element of Q(zeta_c), reduced modulo the c-th cyclotomic polynomial.
#[derive(Clone)]
pub struct CycNum {
    conductor: u64,
    coeffs: Vec<BigRational>,
}

impl CycNum {
    pub fn zero() -> Self {
        CycNum { conductor: 1, coeffs: vec![BigRational::zero()] }
    }

    pub fn one() -> Self {
        CycNum { conductor: 1, coeffs: vec![BigRational::one()] }
    }

    pub fn from_rational(r: BigRational) -> Self {
        CycNum { conductor: 1, coeffs: vec![r] }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// zeta_order^power.
    pub fn root_of_unity(order: u64, power: u64) -> Result<Self> {
        if order == 0 {
            return Err(Error::BadCyclotomic("root of unity of order 0".into()));
        }
        let k = power % order;
        let mut dense = vec![BigRational::zero(); order as usize];
        dense[k as usize] = BigRational::one();
        Ok(Self::reduce_dense(order, dense))
    }

    /// Build from the full power-basis vector; `coeffs` must have phi(c) entries.
    pub fn from_coeffs(conductor: u64, coeffs: Vec<BigRational>) -> Result<Self> {
        if conductor == 0 {
            return Err(Error::BadCyclotomic("conductor must be positive".into()));
        }
        let phi = totient(conductor) as usize;
        if coeffs.len() != phi {
            return Err(Error::BadCyclotomic(format!(
                "conductor {} needs {} coefficients, got {}",
                conductor,
                phi,
                coeffs.len()
            )));
        }
        Ok(CycNum { conductor, coeffs })
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Reduce a dense polynomial in zeta_c (any length) to the power basis.
    fn reduce_dense(conductor: u64, mut dense: Vec<BigRational>) -> Self {
        let phi = totient(conductor) as usize;
        let modulus = cyclotomic_coeffs(conductor);
        for j in (phi..dense.len()).rev() {
            if dense[j].is_zero() {
                continue;
            }
            let q = std::mem::replace(&mut dense[j], BigRational::zero());
            for i in 0..phi {
                let m = BigRational::from_integer(modulus[i].clone());
                dense[j - phi + i] -= &q * m;
            }
        }
        dense.truncate(phi);
        dense.resize(phi, BigRational::zero());
        CycNum { conductor, coeffs: dense }
    }

    /// Re-express in the larger conductor `m` (requires c | m).
    fn lift(&self, m: u64) -> CycNum {
        debug_assert_eq!(m % self.conductor, 0);
        if m == self.conductor {
            return self.clone();
        }
        let step = (m / self.conductor) as usize;
        let mut dense = vec![BigRational::zero(); (self.coeffs.len() - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            dense[i * step] = c.clone();
        }
        Self::reduce_dense(m, dense)
    }

    fn unified(&self, other: &CycNum) -> (CycNum, CycNum) {
        let m = self.conductor.lcm(&other.conductor);
        (self.lift(m), other.lift(m))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().map(|r| r.is_one()).unwrap_or(false)
    }

    /// The rational value, when the element lies in Q.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Apply the Galois automorphism zeta_c -> zeta_c^k (k coprime to c).
    pub fn conjugate(&self, k: u64) -> Result<CycNum> {
        let c = self.conductor;
        if k.gcd(&c) != 1 {
            return Err(Error::BadCyclotomic(format!("{} is not coprime to conductor {}", k, c)));
        }
        let mut dense = vec![BigRational::zero(); c as usize];
        for (i, coeff) in self.coeffs.iter().enumerate() {
            if !coeff.is_zero() {
                let e = (i as u64 * k) % c;
                dense[e as usize] += coeff;
            }
        }
        Ok(Self::reduce_dense(c, dense))
    }

    /// Absolute norm down to Q: the product of all Galois conjugates.
    pub fn norm(&self) -> BigRational {
        let c = self.conductor;
        let mut acc = CycNum::one();
        for k in 1..=c {
            if k.gcd(&c) == 1 {
                acc = &acc * &self.conjugate(k).expect("coprime by construction");
            }
        }
        acc.as_rational().expect("full conjugate product is rational")
    }

    /// Multiplicative inverse via the conjugate product.
    pub fn inv(&self) -> Result<CycNum> {
        if self.is_zero() {
            return Err(Error::ZeroValue("inverse of zero"));
        }
        let c = self.conductor;
        let mut partial = CycNum::one();
        for k in 2..=c {
            if k.gcd(&c) == 1 {
                partial = &partial * &self.conjugate(k)?;
            }
        }
        let nrm = (self * &partial).as_rational().expect("norm is rational");
        Ok(&partial * &CycNum::from_rational(nrm.recip()))
    }

    pub fn pow(&self, e: u64) -> CycNum {
        let mut base = self.clone();
        let mut e = e;
        let mut acc = CycNum::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Integer power, allowing negative exponents on nonzero elements.
    pub fn powi(&self, e: i64) -> Result<CycNum> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            Ok(self.inv()?.pow(e.unsigned_abs()))
        }
    }

    /// True iff some power of the element is 1. Roots of unity in Q(zeta_c)
    /// have order dividing lcm(2, c).
    pub fn is_root_of_unity(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        let bound = 2u64.lcm(&self.conductor);
        self.pow(bound).is_one()
    }

    /// True iff the element is a unit of the ring of algebraic integers,
    /// decided exactly by |norm| = 1. The caller guarantees the input is an
    /// algebraic integer. Errors on zero.
    pub fn is_unit(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::ZeroValue("unit test on zero"));
        }
        let n = self.norm();
        Ok(n.abs().is_one())
    }

    /// The set of rational primes dividing |norm|; empty iff the element is a
    /// unit. Errors on zero and on inputs whose norm is not a rational integer.
    pub fn norm_primes(&self) -> Result<BTreeSet<u64>> {
        if self.is_zero() {
            return Err(Error::ZeroValue("norm primes of zero"));
        }
        let n = self.norm();
        if !n.denom().is_one() {
            return Err(Error::NotAlgebraicInteger);
        }
        let mut value: BigUint = n.numer().abs().to_biguint().expect("abs is nonnegative");
        let mut primes = BTreeSet::new();
        let mut p = BigUint::from(2u32);
        while &p * &p <= value {
            if (&value % &p).is_zero() {
                primes.insert(p.to_u64().ok_or(Error::NotAlgebraicInteger)?);
                while (&value % &p).is_zero() {
                    value /= &p;
                }
            }
            p += 1u32;
        }
        if value > BigUint::one() {
            primes.insert(value.to_u64().ok_or(Error::NotAlgebraicInteger)?);
        }
        Ok(primes)
    }
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = self.unified(other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CycNum {}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycNum({})", self)
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = crate::rational::format_rational(&c.abs());
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit_mag = mag == "1";
            if i == 0 {
                write!(f, "{}", mag)?;
            } else {
                if !unit_mag {
                    write!(f, "{}*", mag)?;
                }
                if i == 1 {
                    write!(f, "z{}", self.conductor)?;
                } else {
                    write!(f, "z{}^{}", self.conductor, i)?;
                }
            }
        }
        Ok(())
    }
}

impl Add for &CycNum {
    type Output = CycNum;
    fn add(self, rhs: &CycNum) -> CycNum {
        let (mut a, b) = self.unified(rhs);
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x += y;
        }
        a
    }
}

impl Sub for &CycNum {
    type Output = CycNum;
    fn sub(self, rhs: &CycNum) -> CycNum {
        self + &(-rhs)
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &CycNum {
    type Output = CycNum;
    fn mul(self, rhs: &CycNum) -> CycNum {
        let (a, b) = self.unified(rhs);
        let mut dense = vec![BigRational::zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                dense[i + j] += x * y;
            }
        }
        CycNum::reduce_dense(a.conductor, dense)
    }
}

// ---------------------------------------------------------------------------
// CycPoly
// ---------------------------------------------------------------------------

/// A monic K-cyclotomic polynomial in one variable: either the rational
/// cyclotomic polynomial Phi_n, or an explicit monic factor with cyclotomic
/// coefficients (such as the degree-2 factors of Phi_12 over Q(zeta_3)).
#[derive(Clone, Debug, PartialEq)]
pub enum CycPoly {
    Named(u64),
    Explicit { conductor: u64, coeffs: Vec<CycNum> },
}

impl CycPoly {
    pub fn named(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::BadCyclotomic("Phi_0 is not defined".into()));
        }
        Ok(CycPoly::Named(n))
    }

    /// Explicit monic polynomial, low-to-high coefficients over Q(zeta_conductor).
    pub fn explicit(conductor: u64, coeffs: Vec<CycNum>) -> Result<Self> {
        if conductor == 0 {
            return Err(Error::BadCyclotomic("conductor must be positive".into()));
        }
        if coeffs.len() < 2 {
            return Err(Error::BadCyclotomic("explicit polynomial must have degree >= 1".into()));
        }
        for c in &coeffs {
            if conductor % c.conductor() != 0 {
                return Err(Error::BadCyclotomic(format!(
                    "coefficient conductor {} does not divide polynomial conductor {}",
                    c.conductor(),
                    conductor
                )));
            }
        }
        let lead = coeffs.last().expect("nonempty");
        if !lead.is_one() {
            return Err(Error::BadCyclotomic("polynomial is not monic".into()));
        }
        Ok(CycPoly::Explicit { conductor, coeffs })
    }

    pub fn degree(&self) -> usize {
        match self {
            CycPoly::Named(n) => totient(*n) as usize,
            CycPoly::Explicit { coeffs, .. } => coeffs.len() - 1,
        }
    }

    /// Low-to-high coefficient vector (Named polynomials are expanded).
    pub fn coefficients(&self) -> Vec<CycNum> {
        match self {
            CycPoly::Named(n) => cyclotomic_coeffs(*n)
                .iter()
                .map(|c| CycNum::from_rational(BigRational::from_integer(c.clone())))
                .collect(),
            CycPoly::Explicit { coeffs, .. } => coeffs.clone(),
        }
    }

    /// Value at 1: the sum of the coefficients.
    pub fn eval_at_one(&self) -> CycNum {
        match self {
            CycPoly::Named(n) => {
                let sum: BigInt = cyclotomic_coeffs(*n).iter().sum();
                CycNum::from_rational(BigRational::from_integer(sum))
            }
            CycPoly::Explicit { coeffs, .. } => {
                let mut acc = CycNum::zero();
                for c in coeffs {
                    acc = &acc + c;
                }
                acc
            }
        }
    }
}

impl fmt::Display for CycPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CycPoly::Named(n) => write!(f, "Phi_{}", n),
            CycPoly::Explicit { coeffs, .. } => {
                let mut first = true;
                for (i, c) in coeffs.iter().enumerate().rev() {
                    if c.is_zero() {
                        continue;
                    }
                    if !first {
                        write!(f, " + ")?;
                    }
                    first = false;
                    match i {
                        0 => write!(f, "({})", c)?,
                        _ if c.is_one() => {
                            if i == 1 {
                                write!(f, "q")?;
                            } else {
                                write!(f, "q^{}", i)?;
                            }
                        }
                        1 => write!(f, "({})*q", c)?,
                        _ => write!(f, "({})*q^{}", c, i)?,
                    }
                }
                Ok(())
            }
        }
    }
}

/// The n-th cyclotomic polynomial as a [`CycPoly`].
pub fn cyclotomic_polynomial(n: u64) -> Result<CycPoly> {
    CycPoly::named(n)
}

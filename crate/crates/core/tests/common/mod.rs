//! Shared helpers for the integration suites: deterministic random model
//! generation, an independent cyclotomic-polynomial oracle, and hyperplane
//! lattice sampling.

use std::path::PathBuf;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use schurblocks::{
    CycNum, CycPoly, GroupDataset, Hyperplane, Monomial, Orbit, SchurFactor, SchurModel,
    Specialization, VarIndex,
};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(format!("{}/data/{}", env!("CARGO_MANIFEST_DIR"), name))
}

pub fn load_fixture(name: &str) -> GroupDataset {
    GroupDataset::load_path(&fixture_path(name)).unwrap()
}

pub fn random_vars(rng: &mut StdRng) -> VarIndex {
    let n_orbits = rng.gen_range(1..=2);
    let orbits = (0..n_orbits)
        .map(|i| Orbit { name: format!("C{}", i), order: rng.gen_range(2..=3) })
        .collect();
    VarIndex::new(orbits).unwrap()
}

/// A vector with zero sum over every orbit; may be zero.
pub fn random_sum_zero(rng: &mut StdRng, vars: &VarIndex) -> Vec<i64> {
    let mut v = vec![0i64; vars.total()];
    for r in vars.orbit_ranges() {
        let mut sum = 0;
        for i in r.start..r.end - 1 {
            let x = rng.gen_range(-3..=3);
            v[i] = x;
            sum += x;
        }
        v[r.end - 1] = -sum;
    }
    v
}

/// A nonzero primitive monomial with zero orbit sums.
pub fn random_primitive_monomial(rng: &mut StdRng, vars: &VarIndex) -> Monomial {
    loop {
        let v = random_sum_zero(rng, vars);
        if v.iter().all(|&x| x == 0) {
            continue;
        }
        let m = Monomial::new(v);
        let g = m.content() as i64;
        return Monomial::new(m.exps().iter().map(|e| e / g).collect());
    }
}

fn zeta(order: u64, power: u64) -> CycNum {
    CycNum::root_of_unity(order, power).unwrap()
}

/// A monic K-cyclotomic polynomial with nonzero value at 1 (so that
/// specializations with exponent 0 never kill a factor).
pub fn random_psi(rng: &mut StdRng) -> CycPoly {
    match rng.gen_range(0..9) {
        0 => CycPoly::named(2).unwrap(),
        1 => CycPoly::named(3).unwrap(),
        2 => CycPoly::named(4).unwrap(),
        3 => CycPoly::named(6).unwrap(),
        4 => CycPoly::named(8).unwrap(),
        5 => CycPoly::named(12).unwrap(),
        6 => CycPoly::explicit(3, vec![zeta(3, 1), CycNum::one()]).unwrap(),
        7 => CycPoly::explicit(3, vec![zeta(3, 2), CycNum::zero(), CycNum::one()]).unwrap(),
        _ => CycPoly::explicit(4, vec![zeta(4, 3), CycNum::one()]).unwrap(),
    }
}

fn random_coefficient(rng: &mut StdRng) -> CycNum {
    match rng.gen_range(0..5) {
        0 => CycNum::one(),
        1 => CycNum::from_int(-1),
        2 => CycNum::from_int(2),
        3 => zeta(3, 1),
        _ => &CycNum::one() + &zeta(3, 1),
    }
}

pub fn random_model(rng: &mut StdRng, vars: &VarIndex, name: &str, index: usize) -> SchurModel {
    let n_factors = rng.gen_range(0..=4);
    let factors = (0..n_factors)
        .map(|_| {
            SchurFactor::new(
                random_psi(rng),
                random_primitive_monomial(rng, vars),
                rng.gen_range(1..=3),
            )
            .unwrap()
        })
        .collect();
    SchurModel {
        char_name: name.to_string(),
        char_index: index,
        coefficient: random_coefficient(rng),
        leading: Monomial::new(random_sum_zero(rng, vars)),
        factors,
    }
}

pub fn random_model_with_factors(
    rng: &mut StdRng,
    vars: &VarIndex,
    name: &str,
    index: usize,
) -> SchurModel {
    loop {
        let m = random_model(rng, vars, name, index);
        if !m.factors.is_empty() {
            return m;
        }
    }
}

pub fn random_spec(rng: &mut StdRng, total: usize, bound: i64) -> Specialization {
    Specialization::new((0..total).map(|_| rng.gen_range(-bound..=bound)).collect())
}

/// A random integer point of the hyperplane, built from the kernel basis
/// normal[p]*e_j - normal[j]*e_p over the non-pivot coordinates.
pub fn hyperplane_lattice_point(rng: &mut StdRng, h: &Hyperplane, bound: i64) -> Vec<i64> {
    let normal = h.normal().exps();
    let p = normal.iter().position(|&c| c != 0).unwrap();
    let mut point = vec![0i64; normal.len()];
    for j in 0..normal.len() {
        if j == p {
            continue;
        }
        let c = rng.gen_range(-bound..=bound);
        point[j] += c * normal[p];
        point[p] -= c * normal[j];
    }
    point
}

/// Rewrite a model into one with identical generic valuation and degree, and
/// identical values on `h` when one is given: split multiplicities, trade
/// polynomial degree against multiplicity, and (modulo `h`) insert factors on
/// the hyperplane normal or shift the leading monomial along it.
pub fn equivalent_variant(
    rng: &mut StdRng,
    base: &SchurModel,
    h: Option<&Hyperplane>,
) -> SchurModel {
    let mut model = base.clone();
    for _ in 0..rng.gen_range(1..=3) {
        match rng.gen_range(0..4) {
            0 if !model.factors.is_empty() => {
                let i = rng.gen_range(0..model.factors.len());
                let f = model.factors[i].clone();
                if f.mult >= 2 {
                    let k = rng.gen_range(1..f.mult);
                    let m = f.oriented_monomial();
                    model.factors[i] = SchurFactor::new(f.psi.clone(), m.clone(), k).unwrap();
                    model.factors.push(SchurFactor::new(f.psi, m, f.mult - k).unwrap());
                }
            }
            1 if !model.factors.is_empty() => {
                let i = rng.gen_range(0..model.factors.len());
                let f = model.factors[i].clone();
                let total = f.mult * f.psi.degree() as u64;
                model.factors[i] =
                    SchurFactor::new(CycPoly::named(2).unwrap(), f.oriented_monomial(), total)
                        .unwrap();
            }
            2 => {
                if let Some(h) = h {
                    model.factors.push(
                        SchurFactor::new(
                            random_psi(rng),
                            Monomial::new(h.normal().exps().to_vec()),
                            rng.gen_range(1..=3),
                        )
                        .unwrap(),
                    );
                }
            }
            _ => {
                if let Some(h) = h {
                    let k = rng.gen_range(-2..=2i64);
                    let shifted: Vec<i64> = model
                        .leading
                        .exps()
                        .iter()
                        .zip(h.normal().exps())
                        .map(|(b, n)| b + k * n)
                        .collect();
                    model.leading = Monomial::new(shifted);
                }
            }
        }
    }
    model
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    assert_eq!(*den.last().unwrap(), 1);
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let qn = rem.len() - 1 - dn;
    let mut quot = vec![0i64; qn + 1];
    for k in (0..=qn).rev() {
        let c = rem[k + dn];
        rem[k + dn] = 0;
        for (i, &d) in den.iter().enumerate().take(dn) {
            rem[k + i] -= c * d;
        }
        quot[k] = c;
    }
    assert!(rem.iter().all(|&c| c == 0), "division was not exact");
    quot
}

fn x_pow_minus_one(n: u64) -> Vec<i64> {
    let mut p = vec![0i64; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    p
}

fn mobius(mut n: u64) -> i64 {
    let mut mu = 1i64;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            mu = -mu;
        }
        p += 1;
    }
    if n > 1 {
        mu = -mu;
    }
    mu
}

/// Independent route to the n-th cyclotomic polynomial: the Moebius product
/// prod_{d | n} (x^d - 1)^{mu(n/d)}, multiplied out and divided exactly.
pub fn mobius_cyclotomic(n: u64) -> Vec<i64> {
    let mut num = vec![1i64];
    let mut den = vec![1i64];
    for d in 1..=n {
        if n % d != 0 {
            continue;
        }
        match mobius(n / d) {
            1 => num = poly_mul(&num, &x_pow_minus_one(d)),
            -1 => den = poly_mul(&den, &x_pow_minus_one(d)),
            _ => {}
        }
    }
    poly_div_exact(&num, &den)
}

//! Acceptance suite: one test per criterion, each printing a pass line.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

mod common;

use std::time::Instant;

use common::*;
use rand::Rng;
use schurblocks::{
    compare, compare_full, essential_monomials, expand, factor_degrees, hyperplanes_containing,
    join, rouquier_blocks, valuation_degree, CycPoly, Hyperplane, Monomial, Partition,
    Specialization,
};

#[test]
fn criterion_01_g4_spetsial_valuation_and_degree() {
    let start = Instant::now();
    let ds = load_fixture("g4_theta.json");
    let model = ds.model_by_name("theta").unwrap();
    let vd = valuation_degree(model, &Specialization::new(vec![1, 0, 0])).unwrap();
    assert_eq!((vd.val, vd.deg), (-12, 12));
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {:?}", elapsed);
    println!("criterion 1: PASS  a=-12 A=12 on the spetsial specialization ({:?})", elapsed);
}

#[test]
fn criterion_02_g4_essential_monomials() {
    let ds = load_fixture("g4_theta.json");
    let ems = essential_monomials(&ds.models).unwrap();
    let expected = [
        Monomial::new(vec![1, -2, 1]),
        Monomial::new(vec![1, 1, -2]),
        Monomial::new(vec![2, -1, -1]),
    ];
    assert_eq!(ems.len(), 3);
    for (em, want) in ems.iter().zip(&expected) {
        assert_eq!(&em.monomial, want);
        assert_eq!(em.primes, std::collections::BTreeSet::from([2]));
    }
    println!("criterion 2: PASS  three canonical monomials of (2,-1,-1) type, each 2-essential");
}

#[test]
fn criterion_03_g4_hyperplane_membership() {
    let ds = load_fixture("g4_theta.json");
    let hs = ds.block_data.hyperplanes();
    assert_eq!(hs.len(), 6);
    let containing =
        hyperplanes_containing(&Specialization::new(vec![1, 0, 0]), &hs).unwrap();
    assert_eq!(containing.len(), 1);
    assert_eq!(containing[0].label(), "t_1 - t_2 = 0");
    println!("criterion 3: PASS  spetsial exponents lie only on t_1 - t_2 = 0");
}

#[test]
fn criterion_04_oracle_equivalence() {
    let start = Instant::now();
    let mut rng = rng(0x04);
    let theta = load_fixture("g4_theta.json");
    let blocks = load_fixture("synthetic_blocks.json");
    let pair = load_fixture("synthetic_pair.json");
    let mut models = vec![theta.models[0].clone()];
    models.extend(blocks.models.iter().cloned());
    models.push(pair.models[0].clone());
    assert!(models.len() >= 4);

    let mut checked = 0usize;
    for model in &models {
        for _ in 0..200 {
            let s = random_spec(&mut rng, model.leading.len(), 5);
            let formula = valuation_degree(model, &s).unwrap();
            let expanded = expand(model, &s).unwrap().val_deg().unwrap();
            assert_eq!(formula, expanded, "model {} spec {:?}", model.char_name, s.exponents());
            checked += 1;
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 30.0, "took {:?}", elapsed);
    println!(
        "criterion 4: PASS  formula = expansion on {} (model, specialization) pairs ({:?})",
        checked, elapsed
    );
}

#[test]
fn criterion_05_duality_and_sum_identities() {
    let mut rng = rng(0x05);
    for round in 0..500 {
        let vars = random_vars(&mut rng);
        let model = random_model(&mut rng, &vars, "x", 0);
        let exps: Vec<i64> = (0..vars.total()).map(|_| rng.gen_range(-5..=5)).collect();
        let s = Specialization::new(exps.clone());
        let neg = Specialization::new(exps.iter().map(|e| -e).collect());

        let vd = valuation_degree(&model, &s).unwrap();
        let vd_neg = valuation_degree(&model, &neg).unwrap();
        assert_eq!(vd_neg.val, -vd.deg, "duality val, round {}", round);
        assert_eq!(vd_neg.deg, -vd.val, "duality deg, round {}", round);
        assert!(vd.val <= vd.deg, "ordering, round {}", round);

        let b_dot: i64 =
            model.leading.exps().iter().zip(&exps).map(|(b, n)| b * n).sum();
        let weighted: i64 = model
            .factors
            .iter()
            .map(|f| {
                let m: i64 =
                    f.oriented_monomial().exps().iter().zip(&exps).map(|(a, n)| a * n).sum();
                f.mult as i64 * f.psi.degree() as i64 * m
            })
            .sum();
        assert_eq!(vd.val + vd.deg, 2 * b_dot + weighted, "sum identity, round {}", round);
    }
    println!("criterion 5: PASS  duality, ordering and sum identity on 500 random pairs");
}

#[test]
fn criterion_06_phi_at_one_law() {
    for n in 2..=200u64 {
        // independent route: Moebius product expansion
        let brute = mobius_cyclotomic(n);
        let lib: Vec<i64> = CycPoly::named(n)
            .unwrap()
            .coefficients()
            .iter()
            .map(|c| {
                let r = c.as_rational().unwrap();
                assert!(num_traits::One::is_one(r.denom()));
                num_traits::ToPrimitive::to_i64(&r.to_integer()).unwrap()
            })
            .collect();
        assert_eq!(lib, brute, "Phi_{}", n);

        let value = CycPoly::named(n).unwrap().eval_at_one().as_rational().unwrap();
        let mut m = n;
        let mut smallest = 0u64;
        for p in 2..=m {
            if m % p == 0 {
                smallest = p;
                while m % p == 0 {
                    m /= p;
                }
                break;
            }
        }
        let expected = if m == 1 { smallest } else { 1 };
        assert_eq!(
            value,
            num_rational::BigRational::from_integer(expected.into()),
            "Phi_{}(1)",
            n
        );
    }
    // the n = 1 boundary: Phi_1(1) = 0
    assert!(CycPoly::named(1).unwrap().eval_at_one().is_zero());
    println!("criterion 6: PASS  Phi_n(1) law and coefficients verified against the Moebius product for n <= 200");
}

#[test]
fn criterion_07_compare_soundness_on_lattice_points() {
    let mut rng = rng(0x07);
    let mut pairs = 0usize;
    let mut points = 0usize;
    while pairs < 50 {
        let vars = random_vars(&mut rng);
        let base = random_model_with_factors(&mut rng, &vars, "a", 0);
        let h = Hyperplane::from_monomial(&random_primitive_monomial(&mut rng, &vars)).unwrap();
        let variant = equivalent_variant(&mut rng, &base, Some(&h));
        let verdict =
            compare(&factor_degrees(&base), &factor_degrees(&variant), Some(&h)).unwrap();
        assert!(verdict, "constructed pair must compare true (pair {})", pairs);
        for _ in 0..100 {
            let point = hyperplane_lattice_point(&mut rng, &h, 4);
            let s = Specialization::new(point.clone());
            let a = valuation_degree(&base, &s).unwrap();
            let b = valuation_degree(&variant, &s).unwrap();
            assert_eq!(a, b, "pair {} at point {:?}", pairs, point);
            points += 1;
        }
        pairs += 1;
    }
    println!(
        "criterion 7: PASS  {} compare-true pairs agree at {} hyperplane lattice points",
        pairs, points
    );
}

#[test]
fn criterion_08_pruning_neutrality() {
    let mut rng = rng(0x08);
    for round in 0..200 {
        let vars = random_vars(&mut rng);
        let a = random_model(&mut rng, &vars, "a", 0);
        let b = if rng.gen_bool(0.5) {
            let h = Hyperplane::from_monomial(&random_primitive_monomial(&mut rng, &vars)).unwrap();
            equivalent_variant(&mut rng, &a, Some(&h))
        } else {
            random_model(&mut rng, &vars, "b", 1)
        };
        let h = if rng.gen_bool(0.5) {
            Some(Hyperplane::from_monomial(&random_primitive_monomial(&mut rng, &vars)).unwrap())
        } else {
            None
        };
        let fa = factor_degrees(&a);
        let fb = factor_degrees(&b);
        let pruned = compare(&fa, &fb, h.as_ref()).unwrap();
        let full = compare_full(&fa, &fb, h.as_ref()).unwrap();
        assert_eq!(pruned, full, "round {}", round);
    }
    println!("criterion 8: PASS  pruned and unpruned comparisons agree on 200 instances");
}

#[test]
fn criterion_09_partition_lattice_and_g4_blocks() {
    let mut rng = rng(0x09);
    for _ in 0..100 {
        let n = rng.gen_range(1..=20usize);
        let p = random_partition(&mut rng, n);
        let q = random_partition(&mut rng, n);
        let r = random_partition(&mut rng, n);
        let pq = join(&[&p, &q]).unwrap();
        assert_eq!(join(&[&q, &p]).unwrap(), pq, "commutativity");
        assert_eq!(join(&[&p, &p]).unwrap(), p, "idempotence");
        let left = join(&[&pq, &r]).unwrap();
        let qr = join(&[&q, &r]).unwrap();
        assert_eq!(join(&[&p, &qr]).unwrap(), left, "associativity");
        assert_eq!(left, closure_oracle(&[&p, &q, &r]), "closure oracle");
    }

    let ds = load_fixture("g4_theta.json");
    let hs = ds.all_hyperplanes().unwrap();
    let spetsial = Specialization::new(vec![1, 0, 0]);
    let blocks = rouquier_blocks(&spetsial, &ds.block_data, &hs).unwrap();
    let h12 = Hyperplane::new(vec![0, 1, -1]).unwrap();
    assert_eq!(&blocks, ds.block_data.partition_for(&h12).unwrap());
    println!("criterion 9: PASS  join laws vs closure oracle; G4 spetsial blocks equal the stored t_1 - t_2 partition");
}

#[test]
fn criterion_10_end_to_end_verify() {
    let bin = env!("CARGO_BIN_EXE_schurblocks");
    let good = std::process::Command::new(bin)
        .args(["verify", fixture_path("g4_theta.json").to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(good.status.code(), Some(0), "{:?}", good);

    let bad = std::process::Command::new(bin)
        .args(["verify", fixture_path("synthetic_bad.json").to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(1), "{:?}", bad);
    let stdout = String::from_utf8(bad.stdout).unwrap();
    assert!(stdout.contains("(none; phi, psi; false)"), "{}", stdout);
    assert!(stdout.contains("(t_2 - t_3 = 0; phi, psi; false)"), "{}", stdout);
    println!("criterion 10: PASS  verify exits 0 on g4_theta and 1 on the corrupted fixture, naming (H, block)");
}

fn random_partition(rng: &mut rand::rngs::StdRng, n: usize) -> Partition {
    let mut blocks: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..n {
        blocks.entry(rng.gen_range(0..n)).or_default().push(i);
    }
    Partition::new(blocks.into_values().collect(), n).unwrap()
}

fn closure_oracle(parts: &[&Partition]) -> Partition {
    let n = parts[0].universe();
    let mut adj = vec![vec![false; n]; n];
    for i in 0..n {
        adj[i][i] = true;
    }
    for p in parts {
        for b in p.blocks() {
            for &x in b {
                for &y in b {
                    adj[x][y] = true;
                }
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if adj[i][k] && adj[k][j] {
                    adj[i][j] = true;
                }
            }
        }
    }
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut used = vec![false; n];
    for i in 0..n {
        if used[i] {
            continue;
        }
        let mut b = Vec::new();
        for j in 0..n {
            if adj[i][j] {
                used[j] = true;
                b.push(j);
            }
        }
        blocks.push(b);
    }
    Partition::new(blocks, n).unwrap()
}

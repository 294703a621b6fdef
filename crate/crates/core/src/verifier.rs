//! Block-invariance verification through factor degrees and good sign maps.
//!
//! Every factor psi(M)^n of a Schur element contributes the linear form
//! deg(psi) * M with multiplicity n; the leading monomial contributes a
//! constant form shared by valuation and degree. Two characters have equal
//! generic valuation and degree on a hyperplane iff, after reducing all forms
//! modulo the hyperplane and dropping the forms that collapse to zero, the
//! sums selected by every good sign map agree as rational linear forms.
//! Common factor degrees cancel, so the comparison runs on the symmetric
//! difference with multiplicities.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::dataset::GroupDataset;
use crate::error::{Error, Result};
use crate::essential::Hyperplane;
use crate::schur::SchurModel;
use crate::specialization::{valuation_degree, Specialization};

/// Hard cap on the number of equivalence classes enumerated by sign maps.
pub const SIGN_CLASS_CAP: usize = 30;

/// A linear form in the indeterminates t_0, .., t_{d-1} with exact rational
/// coefficients.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct LinearForm {
    coeffs: Vec<BigRational>,
}

impl LinearForm {
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        LinearForm { coeffs }
    }

    pub fn zero(dim: usize) -> Self {
        LinearForm { coeffs: vec![BigRational::zero(); dim] }
    }

    pub fn from_ints(v: &[i64]) -> Self {
        LinearForm { coeffs: v.iter().map(|&x| crate::rational::rat(x)).collect() }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &LinearForm) -> LinearForm {
        debug_assert_eq!(self.dim(), other.dim());
        LinearForm {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scaled(&self, q: &BigRational) -> LinearForm {
        LinearForm { coeffs: self.coeffs.iter().map(|c| c * q).collect() }
    }

    pub fn evaluate(&self, point: &[i64]) -> Result<BigRational> {
        if point.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: point.len() });
        }
        let mut acc = BigRational::zero();
        for (c, &x) in self.coeffs.iter().zip(point) {
            acc += c * crate::rational::rat(x);
        }
        Ok(acc)
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
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
            let mag = c.abs();
            if !mag.is_one() {
                write!(f, "{}", crate::rational::format_rational(&mag))?;
            }
            write!(f, "t_{}", i)?;
        }
        Ok(())
    }
}

/// The factor degrees of one Schur element: the constant form contributed by
/// the leading monomial and the multiset of forms deg(psi) * M with their
/// multiplicities. Forms are kept unreduced until a hyperplane is applied.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorDegrees {
    pub constant: LinearForm,
    pub terms: BTreeMap<LinearForm, u64>,
}

/// Collect the factor degrees of a model; equal forms aggregate their
/// multiplicities.
pub fn factor_degrees(model: &SchurModel) -> FactorDegrees {
    let constant = LinearForm::from_ints(model.leading.exps());
    let mut terms: BTreeMap<LinearForm, u64> = BTreeMap::new();
    for f in &model.factors {
        let deg = crate::rational::rat(f.psi.degree() as i64);
        let form = LinearForm::from_ints(f.oriented_monomial().exps()).scaled(&deg);
        *terms.entry(form).or_insert(0) += f.mult;
    }
    FactorDegrees { constant, terms }
}

/// +1 if g = q*f for a rational q > 0, -1 if q < 0, 0 otherwise. Two zero
/// forms count as positive multiples (q = 1).
pub fn is_multiple(g: &LinearForm, f: &LinearForm) -> i8 {
    match (g.is_zero(), f.is_zero()) {
        (true, true) => return 1,
        (true, false) | (false, true) => return 0,
        (false, false) => {}
    }
    if g.dim() != f.dim() {
        return 0;
    }
    let pivot = f.coeffs().iter().position(|c| !c.is_zero()).expect("f nonzero");
    if g.coeffs()[pivot].is_zero() {
        return 0;
    }
    let q = &g.coeffs()[pivot] / &f.coeffs()[pivot];
    for (a, b) in g.coeffs().iter().zip(f.coeffs()) {
        if *a != b * &q {
            return 0;
        }
    }
    crate::rational::sign_of(&q)
}

/// Substitute the pivot variable of the hyperplane (its first nonzero
/// coordinate) out of the form, leaving a form that agrees with the input
/// everywhere on the hyperplane and has zero pivot coefficient. `None` leaves
/// the form unchanged.
pub fn reduce_mod_hyperplane(f: &LinearForm, h: Option<&Hyperplane>) -> Result<LinearForm> {
    let Some(h) = h else {
        return Ok(f.clone());
    };
    let normal = h.normal().exps();
    if normal.len() != f.dim() {
        return Err(Error::DimensionMismatch { expected: f.dim(), got: normal.len() });
    }
    let pivot = normal.iter().position(|&c| c != 0).expect("hyperplane normal is nonzero");
    if f.coeffs()[pivot].is_zero() {
        return Ok(f.clone());
    }
    let ratio = &f.coeffs()[pivot] / crate::rational::rat(normal[pivot]);
    let h_form = LinearForm::from_ints(normal);
    Ok(f.add(&h_form.scaled(&-ratio)))
}

/// The symmetric difference with multiplicities, side-tagged: a form whose
/// multiplicity differs between the two multisets is retained on each side
/// where it occurs, with its full multiplicity there.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SymDiff {
    pub left: Vec<(LinearForm, u64)>,
    pub right: Vec<(LinearForm, u64)>,
}

pub fn sym_diff_with_mult(
    a: &BTreeMap<LinearForm, u64>,
    b: &BTreeMap<LinearForm, u64>,
) -> SymDiff {
    let mut out = SymDiff::default();
    for (f, &ma) in a {
        let mb = b.get(f).copied().unwrap_or(0);
        if ma != mb {
            out.left.push((f.clone(), ma));
            if mb > 0 {
                out.right.push((f.clone(), mb));
            }
        }
    }
    for (f, &mb) in b {
        if !a.contains_key(f) {
            out.right.push((f.clone(), mb));
        }
    }
    out
}

/// A good sign map presented over equivalence-class representatives: the sign
/// of a form is the stored class sign multiplied by the side of the ray the
/// form lies on. Classwise constancy and antisymmetry under negation hold by
/// construction.
#[derive(Clone, Debug)]
pub struct SignAssignment {
    reps: Vec<LinearForm>,
    signs: Vec<i8>,
}

impl SignAssignment {
    pub fn new(reps: Vec<LinearForm>, signs: Vec<i8>) -> Result<Self> {
        if reps.len() != signs.len() {
            return Err(Error::DimensionMismatch { expected: reps.len(), got: signs.len() });
        }
        if signs.iter().any(|s| *s != 1 && *s != -1) {
            return Err(Error::Semantic("sign values must be +1 or -1".into()));
        }
        Ok(SignAssignment { reps, signs })
    }

    /// The sign map realized by an integer point: a class representative gets
    /// -1 exactly when it evaluates nonpositively at the point.
    pub fn realized_at(reps: Vec<LinearForm>, point: &[i64]) -> Result<Self> {
        let mut signs = Vec::with_capacity(reps.len());
        for r in &reps {
            let v = r.evaluate(point)?;
            signs.push(if v.is_positive() { 1 } else { -1 });
        }
        Ok(SignAssignment { reps, signs })
    }

    pub fn reps(&self) -> &[LinearForm] {
        &self.reps
    }

    /// Sign of an arbitrary nonzero form, when it is classed by one of the
    /// representatives.
    pub fn sign_of(&self, f: &LinearForm) -> Option<i8> {
        for (r, &s) in self.reps.iter().zip(&self.signs) {
            let rel = is_multiple(f, r);
            if rel != 0 {
                return Some(rel * s);
            }
        }
        None
    }
}

/// Generic valuation with respect to a sign map: the constant form plus the
/// multiplicity-weighted forms of sign -1.
pub fn generic_valuation(fd: &FactorDegrees, eps: &SignAssignment) -> Result<LinearForm> {
    signed_sum(fd, eps, -1)
}

/// Generic degree with respect to a sign map: the constant form plus the
/// multiplicity-weighted forms of sign +1.
pub fn generic_degree(fd: &FactorDegrees, eps: &SignAssignment) -> Result<LinearForm> {
    signed_sum(fd, eps, 1)
}

fn signed_sum(fd: &FactorDegrees, eps: &SignAssignment, wanted: i8) -> Result<LinearForm> {
    let mut acc = fd.constant.clone();
    for (f, &mult) in &fd.terms {
        let sign = eps
            .sign_of(f)
            .ok_or_else(|| Error::Semantic(format!("form {} is not classed by the sign map", f)))?;
        if sign == wanted {
            acc = acc.add(&f.scaled(&crate::rational::rat(mult as i64)));
        }
    }
    Ok(acc)
}

/// Greedily split the given forms into positive-ray equivalence classes;
/// returns the representatives, which are pairwise non-multiples.
fn class_representatives<'a>(
    forms: impl Iterator<Item = &'a LinearForm>,
) -> Result<Vec<LinearForm>> {
    let mut reps: Vec<LinearForm> = Vec::new();
    for f in forms {
        if !reps.iter().any(|r| is_multiple(f, r) != 0) {
            reps.push(f.clone());
        }
    }
    if reps.len() > SIGN_CLASS_CAP {
        return Err(Error::SignCapExceeded(reps.len()));
    }
    Ok(reps)
}

/// True iff the two factor-degree sets yield equal generic valuations and
/// degrees under every good sign map, after reduction modulo the hyperplane.
/// Reduced-to-zero forms contribute nothing to either side and are dropped;
/// common terms cancel through the symmetric difference.
pub fn compare(a: &FactorDegrees, b: &FactorDegrees, h: Option<&Hyperplane>) -> Result<bool> {
    compare_impl(a, b, h, true)
}

/// Reference path without the symmetric-difference pruning; must always agree
/// with [`compare`].
pub fn compare_full(a: &FactorDegrees, b: &FactorDegrees, h: Option<&Hyperplane>) -> Result<bool> {
    compare_impl(a, b, h, false)
}

fn reduce_terms(
    terms: &BTreeMap<LinearForm, u64>,
    h: Option<&Hyperplane>,
) -> Result<BTreeMap<LinearForm, u64>> {
    let mut out: BTreeMap<LinearForm, u64> = BTreeMap::new();
    for (f, &mult) in terms {
        let rf = reduce_mod_hyperplane(f, h)?;
        if rf.is_zero() {
            continue;
        }
        *out.entry(rf).or_insert(0) += mult;
    }
    Ok(out)
}

fn compare_impl(
    a: &FactorDegrees,
    b: &FactorDegrees,
    h: Option<&Hyperplane>,
    prune: bool,
) -> Result<bool> {
    if a.constant.dim() != b.constant.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.constant.dim(),
            got: b.constant.dim(),
        });
    }
    let ca = reduce_mod_hyperplane(&a.constant, h)?;
    let cb = reduce_mod_hyperplane(&b.constant, h)?;
    let ra = reduce_terms(&a.terms, h)?;
    let rb = reduce_terms(&b.terms, h)?;
    let diff = if prune {
        sym_diff_with_mult(&ra, &rb)
    } else {
        SymDiff {
            left: ra.into_iter().collect(),
            right: rb.into_iter().collect(),
        }
    };
    if diff.left.is_empty() && diff.right.is_empty() {
        return Ok(ca == cb);
    }

    let reps =
        class_representatives(diff.left.iter().chain(diff.right.iter()).map(|(f, _)| f))?;
    // (class position, ray sign, multiplicity-scaled form) per side
    let classify = |side: &[(LinearForm, u64)]| -> Vec<(usize, i8, LinearForm)> {
        side.iter()
            .map(|(f, mult)| {
                let (pos, rel) = reps
                    .iter()
                    .enumerate()
                    .find_map(|(p, r)| {
                        let s = is_multiple(f, r);
                        (s != 0).then_some((p, s))
                    })
                    .expect("every form is classed by construction");
                (pos, rel, f.scaled(&crate::rational::rat(*mult as i64)))
            })
            .collect()
    };
    let left = classify(&diff.left);
    let right = classify(&diff.right);

    for mask in 0u64..(1u64 << reps.len()) {
        let class_sign = |p: usize| -> i8 {
            if mask >> p & 1 == 1 {
                1
            } else {
                -1
            }
        };
        let side_sum = |entries: &[(usize, i8, LinearForm)], base: &LinearForm, wanted: i8| {
            let mut acc = base.clone();
            for (pos, rel, form) in entries {
                if rel * class_sign(*pos) == wanted {
                    acc = acc.add(form);
                }
            }
            acc
        };
        if side_sum(&left, &ca, -1) != side_sum(&right, &cb, -1)
            || side_sum(&left, &ca, 1) != side_sum(&right, &cb, 1)
        {
            return Ok(false);
        }
    }
    Ok(true)
}

/// True for singleton blocks; otherwise every member must compare equal to
/// the first.
pub fn compare_block(
    h: Option<&Hyperplane>,
    block: &[usize],
    models: &BTreeMap<usize, &SchurModel>,
) -> Result<bool> {
    if block.len() <= 1 {
        return Ok(true);
    }
    let first = models.get(&block[0]).ok_or(Error::MissingModel(block[0]))?;
    let fd0 = factor_degrees(first);
    for &j in &block[1..] {
        let m = models.get(&j).ok_or(Error::MissingModel(j))?;
        if !compare(&fd0, &factor_degrees(m), h)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Verdict for one (hyperplane, block) pair.
#[derive(Clone, Debug)]
pub struct VerifyEntry {
    pub hyperplane: Option<Hyperplane>,
    pub block: Vec<usize>,
    pub ok: bool,
}

/// The full report of [`check_theorem`].
#[derive(Clone, Debug, Default)]
pub struct VerifyReport {
    pub entries: Vec<VerifyEntry>,
}

impl VerifyReport {
    pub fn overall(&self) -> bool {
        self.entries.iter().all(|e| e.ok)
    }
}

/// Run the block comparison over the generic partition and every stored
/// hyperplane partition of the dataset.
pub fn check_theorem(ds: &GroupDataset) -> Result<VerifyReport> {
    let models = ds.models_by_index();
    let mut report = VerifyReport::default();
    let mut sections: Vec<(Option<&Hyperplane>, &crate::blocks::Partition)> =
        vec![(None, ds.block_data.generic())];
    for (h, p) in ds.block_data.per_hyperplane() {
        sections.push((Some(h), p));
    }
    for (h, partition) in sections {
        for block in partition.blocks() {
            let ok = compare_block(h, block, &models)?;
            report.entries.push(VerifyEntry {
                hyperplane: h.cloned(),
                block: block.clone(),
                ok,
            });
        }
    }
    Ok(report)
}

/// Sum check for one Rouquier block: the members' val + deg values.
#[derive(Clone, Debug)]
pub struct SumEntry {
    pub block: Vec<usize>,
    /// (character index, val + deg) for every member with a model.
    pub sums: Vec<(usize, i64)>,
    pub ok: bool,
}

#[derive(Clone, Debug, Default)]
pub struct SumReport {
    pub entries: Vec<SumEntry>,
}

impl SumReport {
    pub fn overall(&self) -> bool {
        self.entries.iter().all(|e| e.ok)
    }
}

/// Check that val + deg is constant across every Rouquier block of the
/// specialization. Multi-member blocks require a model for every member.
pub fn check_aa_sum(ds: &GroupDataset, s: &Specialization) -> Result<SumReport> {
    let hs = ds.all_hyperplanes()?;
    let partition = crate::blocks::rouquier_blocks(s, &ds.block_data, &hs)?;
    let models = ds.models_by_index();
    let mut report = SumReport::default();
    for block in partition.blocks() {
        if block.len() == 1 {
            let mut sums = Vec::new();
            if let Some(m) = models.get(&block[0]) {
                let vd = valuation_degree(m, s)?;
                sums.push((block[0], vd.val + vd.deg));
            }
            report.entries.push(SumEntry { block: block.clone(), sums, ok: true });
            continue;
        }
        let mut sums = Vec::new();
        for &i in block {
            let m = models.get(&i).ok_or(Error::MissingModel(i))?;
            let vd = valuation_degree(m, s)?;
            sums.push((i, vd.val + vd.deg));
        }
        let ok = sums.windows(2).all(|w| w[0].1 == w[1].1);
        report.entries.push(SumEntry { block: block.clone(), sums, ok });
    }
    Ok(report)
}

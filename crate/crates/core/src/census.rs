//! Counting minimal codewords and checking containment of quadrics, by
//! closed formulas and by exhaustive enumeration.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::expr::parse_form;
use crate::gf::GaloisField;
use crate::linalg;
use crate::par::{self, Exec};
use crate::prm::{
    self, is_minimal_class, is_minimal_interpolation, ExhaustiveTester, Method, PrmCode,
};
use crate::projspace::{binomial, gaussian_binomial, ProjectiveSpace};
use crate::quadric::{ClassificationRecord, QuadraticForm, QuadricClass};

/// Default cap on the number of forms (up to scalar) a census may visit.
pub const DEFAULT_BUDGET: u128 = 2_000_000;

/// Number of quadrics of the given class whose equation has rank `r` and
/// lives on a fixed `P^(r-1)` without singular points there: the size of the
/// projective orbit of the rank-`r` canonical form in `r` variables.
///
/// The three absolutely irreducible classes follow the product formulas;
/// the others are 1 (double hyperplane), `C(q+1, 2)` (hyperplane pair) and
/// `C(q, 2)` (conjugate pair).
pub fn orbit_count(class: QuadricClass, r: usize, q: u64) -> Result<u128> {
    if !class.admits_rank(r, r) {
        return Err(Error::ParityMismatch {
            class: class.to_string(),
            rank: r,
        });
    }
    let qq = q as u128;
    let prod = |upto: usize| -> u128 { (1..=upto).map(|i| qq.pow(2 * i as u32 + 1) - 1).product() };
    Ok(match class {
        QuadricClass::DoubleHyperplane | QuadricClass::Parabolic => {
            qq.pow(((r - 1) * (r + 1) / 4) as u32) * prod((r - 1) / 2)
        }
        QuadricClass::HyperplanePair | QuadricClass::Hyperbolic => {
            qq.pow((r * r / 4) as u32) * (qq.pow(r as u32 / 2) + 1) * prod((r - 2) / 2) / 2
        }
        QuadricClass::ConjugatePair | QuadricClass::Elliptic => {
            qq.pow((r * r / 4) as u32) * (qq.pow(r as u32 / 2) - 1) * prod((r - 2) / 2) / 2
        }
    })
}

/// Number of quadrics (up to scalar) in `P^N` of the given class and rank:
/// choices of singular locus times the orbit count.
pub fn class_count(class: QuadricClass, r: usize, n: usize, q: u64) -> Result<u128> {
    Ok(gaussian_binomial(n as u32 + 1, r as u32, q)? * orbit_count(class, r, q)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountRow {
    pub weight: u128,
    pub closed: Option<u128>,
    pub brute: Option<u128>,
}

/// Minimal codewords of PRM_q(2, N) per weight.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinimalCountTable {
    pub q: u64,
    #[serde(rename = "N")]
    pub n: usize,
    pub delta: u32,
    pub epsilon: u32,
    pub rows: Vec<CountRow>,
}

impl MinimalCountTable {
    fn new(q: u64, n: usize) -> Self {
        Self {
            q,
            n,
            delta: if q <= 3 { 2 } else { 0 },
            epsilon: if q == 2 { 2 } else { 0 },
            rows: Vec::new(),
        }
    }

    /// True when every row has both columns and they agree.
    pub fn is_consistent(&self) -> bool {
        self.rows
            .iter()
            .all(|r| r.closed.is_some() && r.closed == r.brute)
    }

    pub fn closed_counts(&self) -> BTreeMap<u128, u128> {
        self.rows
            .iter()
            .filter_map(|r| r.closed.map(|c| (r.weight, c)))
            .collect()
    }

    pub fn brute_counts(&self) -> BTreeMap<u128, u128> {
        self.rows
            .iter()
            .filter_map(|r| r.brute.map(|c| (r.weight, c)))
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("table serializes")
    }

    pub fn to_csv(&self) -> String {
        let cell = |x: Option<u128>| x.map_or(String::new(), |v| v.to_string());
        let mut out = String::from("weight,closed,brute\n");
        for r in &self.rows {
            let _ = writeln!(out, "{},{},{}", r.weight, cell(r.closed), cell(r.brute));
        }
        out
    }

    pub fn to_table(&self) -> String {
        let cell = |x: Option<u128>| x.map_or("-".to_string(), |v| v.to_string());
        let mut out = format!(
            "q = {}, N = {}, delta = {}, epsilon = {}\n{:>10} {:>14} {:>14}\n",
            self.q, self.n, self.delta, self.epsilon, "weight", "closed", "brute"
        );
        for r in &self.rows {
            let _ = writeln!(out, "{:>10} {:>14} {:>14}", r.weight, cell(r.closed), cell(r.brute));
        }
        out
    }

    fn merge(&mut self, closed: &BTreeMap<u128, u128>, brute: Option<&BTreeMap<u128, u128>>) {
        let mut weights: Vec<u128> = closed.keys().copied().collect();
        if let Some(b) = brute {
            weights.extend(b.keys());
        }
        weights.sort_unstable();
        weights.dedup();
        self.rows = weights
            .into_iter()
            .map(|w| CountRow {
                weight: w,
                closed: Some(closed.get(&w).copied().unwrap_or(0)),
                brute: brute.map(|b| b.get(&w).copied().unwrap_or(0)),
            })
            .collect();
    }
}

fn closed_form_counts(q: u64, n: usize) -> Result<BTreeMap<u128, u128>> {
    if n < 1 {
        return Err(Error::OutOfRange("N must be at least 1".into()));
    }
    let qq = q as u128;
    let nn = n as u32;
    let delta = if q <= 3 { 2 } else { 0 };
    let epsilon = if q == 2 { 2 } else { 0 };
    let mut rows: BTreeMap<u128, u128> = BTreeMap::new();
    let mut add = |w: u128, c: u128| {
        if c > 0 {
            *rows.entry(w).or_default() += c;
        }
    };
    // hyperplane pairs
    add(
        qq.pow(nn) - qq.pow(nn - 1),
        (qq - 1) * gaussian_binomial(nn + 1, 2, q)? * binomial(q + 1, 2),
    );
    // parabolic, all odd ranks share one weight
    let mut parabolic = 0;
    for r in (3 + delta..=n + 1).step_by(2) {
        parabolic += class_count(QuadricClass::Parabolic, r, n, q)?;
    }
    add(qq.pow(nn), (qq - 1) * parabolic);
    for r in (4..=n + 1).step_by(2) {
        let excess = qq.pow(nn - r as u32 / 2);
        add(
            qq.pow(nn) - excess,
            (qq - 1) * class_count(QuadricClass::Hyperbolic, r, n, q)?,
        );
        if r >= 4 + epsilon {
            add(
                qq.pow(nn) + excess,
                (qq - 1) * class_count(QuadricClass::Elliptic, r, n, q)?,
            );
        }
    }
    Ok(rows)
}

/// Closed-form column only.
pub fn minimal_count_closed_form(q: u64, n: usize) -> Result<MinimalCountTable> {
    let mut t = MinimalCountTable::new(q, n);
    t.merge(&closed_form_counts(q, n)?, None);
    Ok(t)
}

fn space_for(q: u64, n: usize) -> Result<Arc<ProjectiveSpace>> {
    let field = Arc::new(GaloisField::with_order(q)?);
    Ok(Arc::new(ProjectiveSpace::new(field, n)?))
}

fn check_budget(space: &ProjectiveSpace, budget: u128) -> Result<usize> {
    let needed = prm::projective_form_count(space) as u128;
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    Ok(needed as usize)
}

type Tally = BTreeMap<u128, u128>;

fn merge_tally(mut a: Tally, b: Tally) -> Tally {
    for (k, v) in b {
        *a.entry(k).or_default() += v;
    }
    a
}

/// Enumerates every nonzero form up to scalar, decides minimality with the
/// chosen tester, and tallies minimal codewords per weight (each scalar
/// class contributes `q - 1` codewords).
pub fn brute_force_census(
    q: u64,
    n: usize,
    method: Method,
    budget: u128,
    exec: Exec,
) -> Result<MinimalCountTable> {
    let closed = closed_form_counts(q, n)?;
    let space = space_for(q, n)?;
    let total = check_budget(&space, budget)?;
    let code = PrmCode::build(space.clone())?;
    let tester = match method {
        Method::Exhaustive => Some(ExhaustiveTester::new(&code, exec)?),
        _ => None,
    };
    let p_n = space.len() as u128;
    let one = |t: usize| -> Result<Tally> {
        let f = prm::projective_form(&space, t as u64);
        let minimal = match method {
            Method::Characterization => {
                let r = f.classify()?;
                is_minimal_class(r.class, r.rank, q)
            }
            Method::Interpolation => is_minimal_interpolation(&code, &f)?.minimal,
            // the outer scan is already parallel
            Method::Exhaustive => tester
                .as_ref()
                .unwrap()
                .test(&code.encode(&f)?, Exec::Sequential)?
                .minimal,
        };
        let mut tally = Tally::new();
        if minimal {
            let w = p_n - f.point_set().count() as u128;
            tally.insert(w, q as u128 - 1);
        }
        Ok(tally)
    };
    let brute = par::map_reduce(
        exec,
        0..total,
        one,
        || Ok(Tally::new()),
        |a, b| Ok(merge_tally(a?, b?)),
    )?;
    let mut t = MinimalCountTable::new(q, n);
    t.merge(&closed, Some(&brute));
    Ok(t)
}

/// Number of quadrics (forms up to scalar) per `(class, rank)`.
pub fn class_census(
    q: u64,
    n: usize,
    budget: u128,
    exec: Exec,
) -> Result<BTreeMap<(QuadricClass, usize), u128>> {
    let space = space_for(q, n)?;
    let total = check_budget(&space, budget)?;
    par::map_reduce(
        exec,
        0..total,
        |t| {
            let r = prm::projective_form(&space, t as u64).classify()?;
            Ok(BTreeMap::from([((r.class, r.rank), 1u128)]))
        },
        || Ok(BTreeMap::new()),
        |a: Result<BTreeMap<_, u128>>, b: Result<BTreeMap<_, u128>>| {
            let mut a = a?;
            for (k, v) in b? {
                *a.entry(k).or_default() += v;
            }
            Ok(a)
        },
    )
}

/// `Σ class_count` over every class and rank in `P^N`; equals the number
/// of nonzero forms up to scalar.
pub fn total_class_count(q: u64, n: usize) -> Result<u128> {
    let mut total = 0;
    for class in QuadricClass::ALL {
        for r in 1..=n + 1 {
            if class.admits_rank(r, n + 1) {
                total += class_count(class, r, n, q)?;
            }
        }
    }
    Ok(total)
}

/// Shapes of strict containment allowed by the classification.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum AdmissibleShape {
    /// `q = 2`: elliptic rank 4 inside hyperbolic rank 4.
    EllipticInHyperbolic,
    /// `q <= 3`: a rank-3 quadric inside a pair of hyperplanes.
    RankThreeInPair,
    /// `q = 2`: elliptic rank 4 inside a pair of hyperplanes.
    EllipticInPair,
}

pub fn admissible_shape(
    q: u64,
    inner: (QuadricClass, usize),
    outer: (QuadricClass, usize),
) -> Option<AdmissibleShape> {
    use QuadricClass::*;
    match (inner, outer) {
        ((Elliptic, 4), (Hyperbolic, 4)) if q == 2 => Some(AdmissibleShape::EllipticInHyperbolic),
        ((Parabolic, 3), (HyperplanePair, _)) if q <= 3 => Some(AdmissibleShape::RankThreeInPair),
        ((Elliptic, 4), (HyperplanePair, _)) if q == 2 => Some(AdmissibleShape::EllipticInPair),
        _ => None,
    }
}

/// A pair of quadrics whose rational points are strictly nested.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContainmentViolation {
    pub inner: String,
    pub outer: String,
    pub inner_report: ClassificationRecord,
    pub outer_report: ClassificationRecord,
    pub shape: Option<AdmissibleShape>,
}

/// Every strictly nested pair `V(F) ⊊ V(F')` with `F` outside the
/// double-hyperplane and conjugate-pair classes, in enumeration order of
/// `F` and then of `F'`.
pub fn find_containments(
    q: u64,
    n: usize,
    budget: u128,
    exec: Exec,
) -> Result<Vec<ContainmentViolation>> {
    let space = space_for(q, n)?;
    let total = check_budget(&space, budget)?;
    let code = PrmCode::build(space.clone())?;
    let field = space.field().clone();
    let per_form = par::collect(exec, 0..total, |t| -> Result<Vec<ContainmentViolation>> {
        let f = prm::projective_form(&space, t as u64);
        let rf = f.classify()?;
        if matches!(rf.class, QuadricClass::DoubleHyperplane | QuadricClass::ConjugatePair) {
            return Ok(Vec::new());
        }
        let z = f.point_set();
        let basis = code.interpolation_space(&z);
        let coeffs: Vec<_> = basis.iter().map(|b| b.coeffs().to_vec()).collect();
        let mut found = Vec::new();
        for s in 0..linalg::projective_count(field.order(), basis.len()) {
            let c = linalg::projective_vector(field.order(), basis.len(), s);
            let g = QuadraticForm::from_coeffs(space.clone(), linalg::combine(&field, &c, &coeffs))
                .unwrap()
                .normalized();
            if g.point_set().count() == z.count() {
                continue;
            }
            let rg = g.classify()?;
            found.push(ContainmentViolation {
                inner: f.to_string(),
                outer: g.to_string(),
                shape: admissible_shape(q, (rf.class, rf.rank), (rg.class, rg.rank)),
                inner_report: rf.record(&field),
                outer_report: rg.record(&field),
            });
        }
        Ok(found)
    });
    let mut out = Vec::new();
    for v in per_form {
        out.extend(v?);
    }
    Ok(out)
}

/// [`find_containments`] that fails with `InadmissibleViolation` when any
/// pair has no admissible shape.
pub fn verify_containment(
    q: u64,
    n: usize,
    budget: u128,
    exec: Exec,
) -> Result<Vec<ContainmentViolation>> {
    let found = find_containments(q, n, budget, exec)?;
    let bad = found.iter().filter(|v| v.shape.is_none()).count();
    if bad > 0 {
        return Err(Error::InadmissibleViolation(bad));
    }
    Ok(found)
}

pub const EXCEPTION_INNER: &str = "X0^2 + X0*X1 + X1^2 + X2*X3";
pub const EXCEPTION_OUTER: &str = "X0^2 + X0*X3 + X1^2 + X1*X2";

/// Over GF(2) in P^3: the elliptic quadric `X0²+X0X1+X1²+X2X3` (5 points)
/// lies inside the hyperbolic quadric `X0(X0+X3)+X1(X1+X2)` (9 points).
pub fn verify_exception_example() -> bool {
    let check = || -> Result<bool> {
        let space = space_for(2, 3)?;
        let inner = parse_form(EXCEPTION_INNER, &space)?;
        let outer = parse_form(EXCEPTION_OUTER, &space)?;
        let (ri, ro) = (inner.classify()?, outer.classify()?);
        Ok((ri.class, ri.rank, ri.point_count) == (QuadricClass::Elliptic, 4, 5)
            && (ro.class, ro.rank, ro.point_count) == (QuadricClass::Hyperbolic, 4, 9)
            && inner.point_set().is_strict_subset(&outer.point_set()))
    };
    check().unwrap_or(false)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SerreReport {
    pub q: u64,
    #[serde(rename = "N")]
    pub n: usize,
    pub bound: u128,
    pub max_points: u128,
    /// Number of quadrics attaining the maximum.
    pub attained_by: u128,
    /// Whether every maximizer is a pair of distinct hyperplanes.
    pub only_hyperplane_pairs: bool,
    pub holds: bool,
}

/// Largest zero set over all nonzero forms, against `2q^(N-1) + p_(N-2)`.
pub fn serre_check(q: u64, n: usize, budget: u128, exec: Exec) -> Result<SerreReport> {
    let space = space_for(q, n)?;
    let total = check_budget(&space, budget)?;
    let bound = crate::quadric::expected_point_count(QuadricClass::HyperplanePair, 2, n, q)?;
    // (max count, maximizers, all maximizers are hyperplane pairs)
    let (max, count, pairs) = par::map_reduce(
        exec,
        0..total,
        |t| {
            let f = prm::projective_form(&space, t as u64);
            let c = f.point_set().count() as u128;
            let is_pair = c >= bound
                && f.classify().map(|r| r.class) == Ok(QuadricClass::HyperplanePair);
            (c, 1u128, is_pair)
        },
        || (0u128, 0u128, true),
        |a, b| match a.0.cmp(&b.0) {
            std::cmp::Ordering::Greater => a,
            std::cmp::Ordering::Less => b,
            std::cmp::Ordering::Equal => (a.0, a.1 + b.1, a.2 && b.2),
        },
    );
    let expected_pairs = class_count(QuadricClass::HyperplanePair, 2, n, q)?;
    Ok(SerreReport {
        q,
        n,
        bound,
        max_points: max,
        attained_by: count,
        only_hyperplane_pairs: pairs,
        holds: max == bound && pairs && count == expected_pairs,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PencilReport {
    pub q: u64,
    /// Rational points of the smooth conic.
    pub base_points: usize,
    /// Projective dimension of the linear system through those points.
    pub system_dim: usize,
    pub members: u128,
    pub reducible: u128,
    pub irreducible: u128,
}

/// The linear system of plane conics through the rational points of the
/// smooth conic `X0² + X1X2`, split into reducible members (line pairs,
/// double lines, conjugate pairs) and absolutely irreducible ones.
pub fn conic_pencil(q: u64) -> Result<PencilReport> {
    let space = space_for(q, 2)?;
    let code = PrmCode::build(space.clone())?;
    let conic = parse_form("X0^2 + X1*X2", &space)?;
    let base = conic.point_set();
    let basis = code.interpolation_space(&base);
    let coeffs: Vec<_> = basis.iter().map(|b| b.coeffs().to_vec()).collect();
    let field = space.field();
    let members = linalg::projective_count(field.order(), basis.len());
    let mut reducible = 0;
    for s in 0..members {
        let c = linalg::projective_vector(field.order(), basis.len(), s);
        let g = QuadraticForm::from_coeffs(space.clone(), linalg::combine(field, &c, &coeffs))?;
        if !g.classify()?.class.is_absolutely_irreducible() {
            reducible += 1;
        }
    }
    Ok(PencilReport {
        q,
        base_points: base.count(),
        system_dim: basis.len() - 1,
        members: members as u128,
        reducible,
        irreducible: members as u128 - reducible,
    })
}

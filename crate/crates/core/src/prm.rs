//! The projective Reed–Muller code PRM_q(2, N) and minimality of its codewords.
//!
//! A codeword is the vector of values of a quadratic form at the rational
//! points of P^N, in canonical point order. Its support is the complement of
//! the zero set, so a codeword is minimal exactly when the zero set of its
//! form is maximal under inclusion among zero sets of nonzero forms.

use std::sync::Arc;

use serde::Serialize;

use crate::bitset::PointSet;
use crate::error::{Error, Result};
use crate::gf::{Elem, GaloisField};
use crate::linalg::{self, Vector};
use crate::par::{self, Exec};
use crate::projspace::ProjectiveSpace;
use crate::quadric::{monomial_count, monomials, QuadraticForm, QuadricClass};

/// Largest code dimension the exhaustive tester accepts.
pub const EXHAUSTIVE_MAX_DIM: usize = 15;
/// Largest number of codewords (`q^dim`) the exhaustive tester accepts.
pub const EXHAUSTIVE_MAX_WORDS: u128 = 20_000_000;

/// All nonzero forms in the variables of `space`, one per scalar class,
/// in the order of [`linalg::projective_vector`].
pub fn projective_form_count(space: &ProjectiveSpace) -> u64 {
    linalg::projective_count(space.field().order(), monomial_count(space.n_vars()))
}

/// The `t`-th form of [`projective_form_count`]; its first nonzero coefficient is 1.
pub fn projective_form(space: &Arc<ProjectiveSpace>, t: u64) -> QuadraticForm {
    let m = monomial_count(space.n_vars());
    let c = linalg::projective_vector(space.field().order(), m, t);
    QuadraticForm::from_coeffs(space.clone(), c).expect("coefficients are in range")
}

#[derive(Clone, Debug)]
pub struct PrmCode {
    space: Arc<ProjectiveSpace>,
    monomials: Vec<(usize, usize)>,
    /// One row per monomial, one column per point.
    generator: Vec<Vector>,
}

impl PrmCode {
    pub fn build(space: Arc<ProjectiveSpace>) -> Result<Self> {
        if space.dim() < 1 {
            return Err(Error::OutOfRange("PRM codes need N >= 1".into()));
        }
        let field = space.field().clone();
        let monomials = monomials(space.n_vars());
        let generator: Vec<Vector> = monomials
            .iter()
            .map(|&(i, j)| {
                space
                    .points()
                    .iter()
                    .map(|p| field.mul(p.coords()[i], p.coords()[j]))
                    .collect()
            })
            .collect();
        if linalg::rank(&field, &generator) != monomials.len() {
            return Err(Error::InternalInconsistency(
                "evaluation map is not injective".into(),
            ));
        }
        Ok(Self {
            space,
            monomials,
            generator,
        })
    }

    pub fn new(q: u64, n: usize) -> Result<Self> {
        let field = Arc::new(GaloisField::with_order(q)?);
        Self::build(Arc::new(ProjectiveSpace::new(field, n)?))
    }

    pub fn space(&self) -> &Arc<ProjectiveSpace> {
        &self.space
    }

    pub fn field(&self) -> &GaloisField {
        self.space.field()
    }

    pub fn length(&self) -> usize {
        self.space.len()
    }

    pub fn dimension(&self) -> usize {
        self.monomials.len()
    }

    pub fn monomials(&self) -> &[(usize, usize)] {
        &self.monomials
    }

    pub fn generator(&self) -> &[Vector] {
        &self.generator
    }

    /// `q^N - q^(N-1)`, the weight of a pair of distinct hyperplanes.
    pub fn expected_minimum_distance(&self) -> u128 {
        let q = self.field().order() as u128;
        let n = self.space.dim() as u32;
        q.pow(n) - q.pow(n - 1)
    }

    /// Minimum nonzero weight found by scanning every codeword.
    pub fn minimum_distance(&self, exec: Exec) -> Result<usize> {
        let t = ExhaustiveTester::new(self, exec)?;
        Ok(t.entries[0].weight)
    }

    pub fn encode(&self, f: &QuadraticForm) -> Result<Codeword> {
        if *f.space() != self.space {
            return Err(Error::DimensionMismatch {
                expected: self.space.n_vars(),
                got: f.n_vars(),
            });
        }
        let field = self.field();
        let mut values = vec![Elem::ZERO; self.length()];
        for (c, row) in f.coeffs().iter().zip(&self.generator) {
            if c.is_zero() {
                continue;
            }
            for (v, &x) in values.iter_mut().zip(row) {
                *v = field.add(*v, field.mul(*c, x));
            }
        }
        Ok(Codeword::from_values(values))
    }

    /// Basis of the forms vanishing at every point of `s`.
    pub fn interpolation_space(&self, s: &PointSet) -> Vec<QuadraticForm> {
        let constraints: Vec<Vector> = s
            .iter()
            .map(|k| self.generator.iter().map(|row| row[k]).collect())
            .collect();
        linalg::kernel(self.field(), &constraints, self.dimension())
            .into_iter()
            .map(|c| QuadraticForm::from_coeffs(self.space.clone(), c).unwrap())
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Codeword {
    values: Vec<Elem>,
    support: PointSet,
}

impl Codeword {
    pub fn from_values(values: Vec<Elem>) -> Self {
        let support = PointSet::from_indices(
            values.len(),
            values.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(i, _)| i),
        );
        Self { values, support }
    }

    pub fn values(&self) -> &[Elem] {
        &self.values
    }

    pub fn support(&self) -> &PointSet {
        &self.support
    }

    pub fn weight(&self) -> usize {
        self.support.count()
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    pub fn record(&self, field: &GaloisField) -> CodewordRecord {
        CodewordRecord {
            values: self.values.iter().map(|&v| field.render(v)).collect(),
            support: self.support.to_vec(),
            weight: self.weight(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CodewordRecord {
    pub values: Vec<String>,
    pub support: Vec<usize>,
    pub weight: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Characterization,
    Interpolation,
    Exhaustive,
}

impl Method {
    pub const ALL: [Method; 3] = [
        Method::Characterization,
        Method::Interpolation,
        Method::Exhaustive,
    ];
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalityVerdict {
    pub minimal: bool,
    /// A form whose zero set strictly contains the tested one.
    pub witness: Option<QuadraticForm>,
    pub method: Method,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerdictRecord {
    pub minimal: bool,
    pub witness: Option<String>,
    pub method: Method,
}

impl MinimalityVerdict {
    pub fn record(&self) -> VerdictRecord {
        VerdictRecord {
            minimal: self.minimal,
            witness: self.witness.as_ref().map(|w| w.to_string()),
            method: self.method,
        }
    }
}

/// Whether the class and rank belong to a minimal codeword: hyperplane
/// pairs, and absolutely irreducible quadrics except rank 3 for `q <= 3`
/// and elliptic rank 4 for `q = 2`.
pub fn is_minimal_class(class: QuadricClass, rank: usize, q: u64) -> bool {
    match class {
        QuadricClass::HyperplanePair => true,
        QuadricClass::DoubleHyperplane | QuadricClass::ConjugatePair => false,
        _ => !(rank == 3 && q <= 3 || class == QuadricClass::Elliptic && rank == 4 && q == 2),
    }
}

pub fn is_minimal_characterization(f: &QuadraticForm) -> Result<MinimalityVerdict> {
    let r = f.classify()?;
    Ok(MinimalityVerdict {
        minimal: is_minimal_class(r.class, r.rank, f.field().order() as u64),
        witness: None,
        method: Method::Characterization,
    })
}

/// Scans the forms vanishing on the zero set of `f`, one per scalar class,
/// and returns the first whose zero set is strictly larger.
pub fn is_minimal_interpolation(code: &PrmCode, f: &QuadraticForm) -> Result<MinimalityVerdict> {
    if f.is_zero() {
        return Err(Error::ZeroForm);
    }
    let z = f.point_set();
    let basis = code.interpolation_space(&z);
    let coeffs: Vec<Vector> = basis.iter().map(|b| b.coeffs().to_vec()).collect();
    let field = code.field();
    let q = field.order();
    let count = linalg::projective_count(q, basis.len());
    let size = z.count();
    let witness = (0..count).find_map(|t| {
        let c = linalg::projective_vector(q, basis.len(), t);
        let g = QuadraticForm::from_coeffs(code.space.clone(), linalg::combine(field, &c, &coeffs))
            .unwrap();
        (g.point_set().count() > size).then(|| g.normalized())
    });
    Ok(MinimalityVerdict {
        minimal: witness.is_none(),
        witness,
        method: Method::Interpolation,
    })
}

struct Entry {
    weight: usize,
    index: u64,
    support: PointSet,
}

/// Supports of every codeword up to scalar, sorted by weight, for repeated
/// exhaustive minimality tests against one code.
pub struct ExhaustiveTester {
    space: Arc<ProjectiveSpace>,
    entries: Vec<Entry>,
}

impl ExhaustiveTester {
    pub fn new(code: &PrmCode, exec: Exec) -> Result<Self> {
        let dim = code.dimension();
        let words = (code.field().order() as u128).pow(dim as u32);
        if dim > EXHAUSTIVE_MAX_DIM || words > EXHAUSTIVE_MAX_WORDS {
            return Err(Error::CodeTooLarge(format!(
                "dimension {dim} with {words} codewords exceeds the scan bound"
            )));
        }
        let space = code.space.clone();
        let count = projective_form_count(&space) as usize;
        let mut entries = par::collect(exec, 0..count, |t| {
            let f = projective_form(&space, t as u64);
            let support = f.point_set().complement();
            Entry {
                weight: support.count(),
                index: t as u64,
                support,
            }
        });
        entries.sort_by_key(|e| (e.weight, e.index));
        Ok(Self { space, entries })
    }

    /// Number of codewords scanned (one per scalar class).
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn test(&self, c: &Codeword, exec: Exec) -> Result<MinimalityVerdict> {
        if c.is_zero() {
            return Err(Error::ZeroCodeword);
        }
        if c.support().capacity() != self.space.len() {
            return Err(Error::DimensionMismatch {
                expected: self.space.len(),
                got: c.support().capacity(),
            });
        }
        let w = c.weight();
        let end = self.entries.partition_point(|e| e.weight < w);
        let hit = par::find_first(exec, 0..end, |k| {
            let e = &self.entries[k];
            e.support.is_subset(c.support()).then_some(e.index)
        });
        Ok(MinimalityVerdict {
            minimal: hit.is_none(),
            witness: hit.map(|t| projective_form(&self.space, t)),
            method: Method::Exhaustive,
        })
    }
}

/// One-shot exhaustive test; builds the support table on every call.
pub fn is_minimal_exhaustive(code: &PrmCode, c: &Codeword) -> Result<MinimalityVerdict> {
    if c.is_zero() {
        return Err(Error::ZeroCodeword);
    }
    ExhaustiveTester::new(code, Exec::default())?.test(c, Exec::default())
}

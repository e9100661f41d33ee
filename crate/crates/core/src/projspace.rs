//! Rational points of P^N(F_q), linear subspaces, and subspace counting.

use std::fmt;
use std::sync::Arc;

use crate::bitset::PointSet;
use crate::error::{Error, Result};
use crate::gf::{Elem, GaloisField};
use crate::linalg::{self, Vector};

/// Upper bound on `q^(N+1)`, the size of the dense vector-to-point table.
pub const MAX_VECTORS: usize = 1 << 22;

/// A rational point, normalized so its last nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProjPoint(Vec<Elem>);

impl ProjPoint {
    pub fn normalize(field: &GaloisField, coords: &[Elem]) -> Result<Self> {
        let last = coords
            .iter()
            .rposition(|x| !x.is_zero())
            .ok_or(Error::ZeroVector)?;
        let inv = field.inv(coords[last]).unwrap();
        Ok(Self(linalg::scale(field, inv, coords)))
    }

    pub fn coords(&self) -> &[Elem] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn render(&self, field: &GaloisField) -> String {
        let parts: Vec<String> = self.0.iter().map(|&x| field.render(x)).collect();
        format!("({})", parts.join(":"))
    }
}

/// `p_n = q^n + ... + q + 1`, with `p_{-1} = 0`.
pub fn p_n(q: u64, n: i64) -> u128 {
    if n < 0 {
        return 0;
    }
    (0..=n as u32).map(|k| (q as u128).pow(k)).sum()
}

/// Number of `k`-dimensional subspaces of `F_q^n`, by the q-factorial product.
pub fn gaussian_binomial(n: u32, k: u32, q: u64) -> Result<u128> {
    if k > n {
        return Err(Error::OutOfRange(format!("k = {k} exceeds n = {n}")));
    }
    let q = q as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num *= q.pow(n - i) - 1;
        den *= q.pow(i + 1) - 1;
    }
    Ok(num / den)
}

/// Ordinary binomial coefficient.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// The rational points of P^N over one field, in canonical order.
///
/// Points are ordered lexicographically on their normalized coordinates,
/// coordinate 0 most significant, using the element order of [`Elem`].
pub struct ProjectiveSpace {
    field: Arc<GaloisField>,
    dim: usize,
    points: Vec<ProjPoint>,
    /// Packed nonzero vector -> point index.
    lookup: Vec<u32>,
}

impl fmt::Debug for ProjectiveSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ProjectiveSpace")
            .field("q", &self.field.order())
            .field("dim", &self.dim)
            .finish()
    }
}

impl PartialEq for ProjectiveSpace {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.field == other.field
    }
}

impl Eq for ProjectiveSpace {}

impl ProjectiveSpace {
    pub fn new(field: Arc<GaloisField>, dim: usize) -> Result<Self> {
        let q = field.order();
        let n_vars = dim + 1;
        let total = (0..n_vars).try_fold(1usize, |acc, _| acc.checked_mul(q));
        let total = match total {
            Some(t) if t <= MAX_VECTORS => t,
            _ => {
                return Err(Error::AmbientTooLarge(format!(
                    "P^{dim} over GF({q}) has more than {MAX_VECTORS} vectors"
                )))
            }
        };

        let mut points = Vec::with_capacity(p_n(q as u64, dim as i64) as usize);
        let mut lookup = vec![u32::MAX; total];
        let mut coords = vec![Elem::ZERO; n_vars];
        for code in 0..total {
            let mut c = code;
            for slot in coords.iter_mut().rev() {
                *slot = Elem((c % q) as u8);
                c /= q;
            }
            if let Some(last) = coords.iter().rposition(|x| !x.is_zero()) {
                if coords[last] == Elem::ONE {
                    points.push(ProjPoint(coords.clone()));
                }
            }
        }
        for (idx, pt) in points.iter().enumerate() {
            for lambda in field.nonzero_elements() {
                let v = linalg::scale(&field, lambda, pt.coords());
                lookup[pack(&v, q)] = idx as u32;
            }
        }
        Ok(Self {
            field,
            dim,
            points,
            lookup,
        })
    }

    pub fn field(&self) -> &Arc<GaloisField> {
        &self.field
    }

    /// The projective dimension N.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn n_vars(&self) -> usize {
        self.dim + 1
    }

    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, index: usize) -> &ProjPoint {
        &self.points[index]
    }

    /// Index of the point spanned by a nonzero vector.
    pub fn index_of(&self, v: &[Elem]) -> Option<usize> {
        if v.len() != self.n_vars() {
            return None;
        }
        match self.lookup[pack(v, self.field.order())] {
            u32::MAX => None,
            i => Some(i as usize),
        }
    }

    /// The q+1 rational points of the line through two distinct points.
    pub fn line_through(&self, a: &ProjPoint, b: &ProjPoint) -> Result<Vec<ProjPoint>> {
        if a == b {
            return Err(Error::EqualPoints);
        }
        let s = LinearSubspace::new(&self.field, vec![a.coords().to_vec(), b.coords().to_vec()])?;
        Ok(self.subspace_points(&s))
    }

    /// All rational points of a subspace, in canonical order.
    pub fn subspace_points(&self, s: &LinearSubspace) -> Vec<ProjPoint> {
        let mut idx = self.subspace_indices(s).to_vec();
        idx.sort_unstable();
        idx.into_iter().map(|i| self.points[i].clone()).collect()
    }

    pub fn subspace_indices(&self, s: &LinearSubspace) -> PointSet {
        let mut set = PointSet::empty(self.len());
        let k = s.basis().len();
        if k == 0 {
            return set;
        }
        let q = self.field.order();
        let mut c = vec![Elem::ZERO; k];
        for code in 1..q.pow(k as u32) {
            let mut x = code;
            for slot in c.iter_mut() {
                *slot = Elem((x % q) as u8);
                x /= q;
            }
            let v = linalg::combine(&self.field, &c, s.basis());
            set.insert(self.index_of(&v).expect("independent basis gives nonzero vectors"));
        }
        set
    }

    /// Every subspace of vector dimension `k` (projective dimension `k-1`),
    /// each given by its reduced row echelon basis.
    pub fn subspaces(&self, k: usize) -> Vec<LinearSubspace> {
        enumerate_rref(&self.field, self.n_vars(), k)
            .into_iter()
            .map(|basis| LinearSubspace { basis })
            .collect()
    }
}

fn pack(v: &[Elem], q: usize) -> usize {
    v.iter().fold(0usize, |acc, x| acc * q + x.index())
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// All `k × n` matrices in reduced row echelon form of full rank.
fn enumerate_rref(field: &GaloisField, n: usize, k: usize) -> Vec<Vec<Vector>> {
    let q = field.order();
    let mut out = Vec::new();
    for pivots in combinations(n, k) {
        let mut free = Vec::new();
        for (row, &pc) in pivots.iter().enumerate() {
            for col in pc + 1..n {
                if !pivots.contains(&col) {
                    free.push((row, col));
                }
            }
        }
        for code in 0..q.pow(free.len() as u32) {
            let mut m = vec![vec![Elem::ZERO; n]; k];
            for (row, &pc) in pivots.iter().enumerate() {
                m[row][pc] = Elem::ONE;
            }
            let mut x = code;
            for &(row, col) in &free {
                m[row][col] = Elem((x % q) as u8);
                x /= q;
            }
            out.push(m);
        }
    }
    out
}

/// A linear subspace given by linearly independent spanning vectors.
/// Its projective dimension is `basis.len() - 1`; the empty basis encodes
/// the empty space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSubspace {
    basis: Vec<Vector>,
}

impl LinearSubspace {
    pub fn new(field: &GaloisField, basis: Vec<Vector>) -> Result<Self> {
        if let Some(first) = basis.first() {
            if let Some(bad) = basis.iter().find(|b| b.len() != first.len()) {
                return Err(Error::DimensionMismatch {
                    expected: first.len(),
                    got: bad.len(),
                });
            }
        }
        if !linalg::is_independent(field, &basis) {
            return Err(Error::LinearlyDependent);
        }
        Ok(Self { basis })
    }

    pub fn empty() -> Self {
        Self { basis: Vec::new() }
    }

    pub fn whole(n_vars: usize) -> Self {
        let basis = (0..n_vars)
            .map(|i| {
                let mut e = vec![Elem::ZERO; n_vars];
                e[i] = Elem::ONE;
                e
            })
            .collect();
        Self { basis }
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    /// Projective dimension; -1 for the empty space.
    pub fn dim(&self) -> isize {
        self.basis.len() as isize - 1
    }

    pub fn vector_dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains_vector(&self, field: &GaloisField, v: &[Elem]) -> bool {
        let mut m = self.basis.clone();
        m.push(v.to_vec());
        linalg::rank(field, &m) == self.basis.len()
    }

    /// Linear forms (as coefficient vectors) cutting out the subspace.
    pub fn equations(&self, field: &GaloisField, n_vars: usize) -> Vec<Vector> {
        linalg::kernel(field, &self.basis, n_vars)
    }

    /// Canonical basis (reduced row echelon form), for equality tests.
    pub fn canonical(&self, field: &GaloisField) -> Vec<Vector> {
        let mut m = self.basis.clone();
        linalg::rref(field, &mut m);
        m
    }

    pub fn same_space(&self, field: &GaloisField, other: &LinearSubspace) -> bool {
        self.canonical(field) == other.canonical(field)
    }

    pub fn render(&self, field: &GaloisField) -> Vec<String> {
        self.basis
            .iter()
            .map(|v| ProjPoint::normalize(field, v).unwrap().render(field))
            .collect()
    }
}

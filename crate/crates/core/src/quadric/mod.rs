//! Quadratic forms over GF(q) and the quadrics they define.

mod canonical;

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

pub use canonical::{canonical_form, CanonicalizationResult};

use crate::bitset::PointSet;
use crate::error::{Error, Result};
use crate::gf::{Elem, GaloisField};
use crate::linalg::{self, Vector};
use crate::projspace::{p_n, LinearSubspace, ProjPoint, ProjectiveSpace};

/// Number of monomials `X_i X_j`, `i <= j`, in `n_vars` variables.
pub fn monomial_count(n_vars: usize) -> usize {
    n_vars * (n_vars + 1) / 2
}

/// Monomials `(i, j)` with `i <= j`, ordered `(0,0), (0,1), ..., (0,N), (1,1), ...`.
pub fn monomials(n_vars: usize) -> Vec<(usize, usize)> {
    (0..n_vars)
        .flat_map(|i| (i..n_vars).map(move |j| (i, j)))
        .collect()
}

#[inline]
fn monomial_index(n_vars: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    i * n_vars - i * i.saturating_sub(1) / 2 + j - i
}

/// The six projective classes of nonzero quadratic forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum QuadricClass {
    DoubleHyperplane,
    HyperplanePair,
    ConjugatePair,
    Parabolic,
    Hyperbolic,
    Elliptic,
}

impl QuadricClass {
    pub const ALL: [QuadricClass; 6] = [
        QuadricClass::DoubleHyperplane,
        QuadricClass::HyperplanePair,
        QuadricClass::ConjugatePair,
        QuadricClass::Parabolic,
        QuadricClass::Hyperbolic,
        QuadricClass::Elliptic,
    ];

    pub fn is_absolutely_irreducible(self) -> bool {
        matches!(
            self,
            QuadricClass::Parabolic | QuadricClass::Hyperbolic | QuadricClass::Elliptic
        )
    }

    /// Whether `rank` is a possible rank for this class in `n_vars` variables.
    pub fn admits_rank(self, rank: usize, n_vars: usize) -> bool {
        rank <= n_vars
            && match self {
                QuadricClass::DoubleHyperplane => rank == 1,
                QuadricClass::HyperplanePair | QuadricClass::ConjugatePair => rank == 2,
                QuadricClass::Parabolic => rank >= 3 && rank % 2 == 1,
                QuadricClass::Hyperbolic | QuadricClass::Elliptic => rank >= 4 && rank.is_multiple_of(2),
            }
    }
}

impl fmt::Display for QuadricClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

fn check_class_rank(class: QuadricClass, rank: usize, n: usize) -> Result<()> {
    if class.admits_rank(rank, n + 1) {
        Ok(())
    } else {
        Err(Error::InconsistentClassRank {
            class: class.to_string(),
            rank,
        })
    }
}

/// Closed-form number of rational points of a quadric of the given class
/// and rank in P^N(F_q).
pub fn expected_point_count(class: QuadricClass, rank: usize, n: usize, q: u64) -> Result<u128> {
    check_class_rank(class, rank, n)?;
    let n = n as i64;
    let qq = q as u128;
    Ok(match class {
        QuadricClass::DoubleHyperplane | QuadricClass::Parabolic => p_n(q, n - 1),
        QuadricClass::HyperplanePair => 2 * qq.pow((n - 1) as u32) + p_n(q, n - 2),
        QuadricClass::ConjugatePair => p_n(q, n - 2),
        QuadricClass::Hyperbolic => p_n(q, n - 1) + qq.pow((n - rank as i64 / 2) as u32),
        QuadricClass::Elliptic => p_n(q, n - 1) - qq.pow((n - rank as i64 / 2) as u32),
    })
}

/// Closed-form projective index of a quadric of the given class and rank in P^N.
pub fn expected_projective_index(class: QuadricClass, rank: usize, n: usize) -> Result<i64> {
    check_class_rank(class, rank, n)?;
    let n = n as i64;
    let s = rank as i64 / 2;
    Ok(match class {
        QuadricClass::DoubleHyperplane | QuadricClass::HyperplanePair => n - 1,
        QuadricClass::ConjugatePair => n - 2,
        QuadricClass::Parabolic | QuadricClass::Elliptic => n - s - 1,
        QuadricClass::Hyperbolic => n - s,
    })
}

/// Symmetric table `B(e_i, e_j)` of the polarization `B(u,v) = F(u+v) - F(u) - F(v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramForm(Vec<Vector>);

impl GramForm {
    pub fn entry(&self, i: usize, j: usize) -> Elem {
        self.0[i][j]
    }

    pub fn rows(&self) -> &[Vector] {
        &self.0
    }

    pub fn apply(&self, field: &GaloisField, u: &[Elem], v: &[Elem]) -> Elem {
        self.0
            .iter()
            .zip(u)
            .fold(Elem::ZERO, |acc, (row, &ui)| {
                field.add(acc, field.mul(ui, linalg::dot(field, row, v)))
            })
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().flatten().all(|x| x.is_zero())
    }
}

/// A homogeneous quadratic form `Σ_{i<=j} a_ij X_i X_j` in `N+1` variables.
#[derive(Clone)]
pub struct QuadraticForm {
    space: Arc<ProjectiveSpace>,
    coeffs: Vec<Elem>,
}

impl PartialEq for QuadraticForm {
    fn eq(&self, other: &Self) -> bool {
        *self.space == *other.space && self.coeffs == other.coeffs
    }
}

impl Eq for QuadraticForm {}

impl fmt::Debug for QuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuadraticForm({})", crate::expr::render_form(self))
    }
}

impl fmt::Display for QuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::expr::render_form(self))
    }
}

impl QuadraticForm {
    pub fn zero(space: Arc<ProjectiveSpace>) -> Self {
        let m = monomial_count(space.n_vars());
        Self {
            space,
            coeffs: vec![Elem::ZERO; m],
        }
    }

    /// Builds a form from coefficients in [`monomials`] order.
    pub fn from_coeffs(space: Arc<ProjectiveSpace>, coeffs: Vec<Elem>) -> Result<Self> {
        let m = monomial_count(space.n_vars());
        if coeffs.len() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                got: coeffs.len(),
            });
        }
        let q = space.field().order();
        if coeffs.iter().any(|c| c.index() >= q) {
            return Err(Error::OutOfRange("coefficient outside the field".into()));
        }
        Ok(Self { space, coeffs })
    }

    /// Builds `Σ c · X_i X_j` from `(i, j, c)` terms; repeated monomials add up.
    pub fn from_terms(space: Arc<ProjectiveSpace>, terms: &[(usize, usize, Elem)]) -> Result<Self> {
        let mut f = Self::zero(space);
        let n = f.n_vars();
        for &(i, j, c) in terms {
            if i >= n || j >= n {
                return Err(Error::OutOfRange(format!("variable index {} >= {n}", i.max(j))));
            }
            let cur = f.coeff(i, j);
            f.set_coeff(i, j, f.field().add(cur, c));
        }
        Ok(f)
    }

    pub fn space(&self) -> &Arc<ProjectiveSpace> {
        &self.space
    }

    pub fn field(&self) -> &GaloisField {
        self.space.field()
    }

    pub fn n_vars(&self) -> usize {
        self.space.n_vars()
    }

    /// Ambient projective dimension N.
    pub fn ambient(&self) -> usize {
        self.space.dim()
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    #[inline]
    pub fn coeff(&self, i: usize, j: usize) -> Elem {
        self.coeffs[monomial_index(self.n_vars(), i, j)]
    }

    pub fn set_coeff(&mut self, i: usize, j: usize, c: Elem) {
        let k = monomial_index(self.n_vars(), i, j);
        self.coeffs[k] = c;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn require_nonzero(&self) -> Result<()> {
        if self.is_zero() {
            Err(Error::ZeroForm)
        } else {
            Ok(())
        }
    }

    pub fn scale(&self, lambda: Elem) -> Self {
        let f = self.field();
        Self {
            space: self.space.clone(),
            coeffs: self.coeffs.iter().map(|&c| f.mul(lambda, c)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let f = self.field();
        Self {
            space: self.space.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| f.add(a, b))
                .collect(),
        }
    }

    /// First nonzero coefficient, the scalar that [`Self::normalized`] divides out.
    pub fn leading_coeff(&self) -> Option<Elem> {
        self.coeffs.iter().copied().find(|c| !c.is_zero())
    }

    /// Representative with leading coefficient 1.
    pub fn normalized(&self) -> Self {
        match self.leading_coeff() {
            Some(c) => self.scale(self.field().inv(c).unwrap()),
            None => self.clone(),
        }
    }

    /// Value at a coordinate vector.
    pub fn eval(&self, v: &[Elem]) -> Result<Elem> {
        if v.len() != self.n_vars() {
            return Err(Error::DimensionMismatch {
                expected: self.n_vars(),
                got: v.len(),
            });
        }
        Ok(self.eval_unchecked(v))
    }

    #[inline]
    fn eval_unchecked(&self, v: &[Elem]) -> Elem {
        let f = self.field();
        let n = self.n_vars();
        let mut acc = Elem::ZERO;
        let mut k = 0;
        for i in 0..n {
            let mut row = Elem::ZERO;
            for j in i..n {
                let c = self.coeffs[k];
                k += 1;
                if !c.is_zero() {
                    row = f.add(row, f.mul(c, v[j]));
                }
            }
            if !v[i].is_zero() {
                acc = f.add(acc, f.mul(v[i], row));
            }
        }
        acc
    }

    /// Value at the normalized representative of a point.
    pub fn evaluate(&self, p: &ProjPoint) -> Result<Elem> {
        self.eval(p.coords())
    }

    pub fn polarize(&self) -> GramForm {
        let f = self.field();
        let n = self.n_vars();
        let mut g = vec![vec![Elem::ZERO; n]; n];
        for (i, row) in g.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                let c = self.coeff(i, j);
                *x = if i == j { f.add(c, c) } else { c };
            }
        }
        GramForm(g)
    }

    /// `B(u, v) = F(u+v) - F(u) - F(v)`.
    pub fn bilinear(&self, u: &[Elem], v: &[Elem]) -> Elem {
        self.polarize().apply(self.field(), u, v)
    }

    /// Indices of rational points where the form vanishes.
    pub fn point_set(&self) -> PointSet {
        let mut set = PointSet::empty(self.space.len());
        for (i, p) in self.space.points().iter().enumerate() {
            if self.eval_unchecked(p.coords()).is_zero() {
                set.insert(i);
            }
        }
        set
    }

    /// Vector-space basis of `Rad B_F`, the kernel of the Gram table.
    pub fn radical_bilinear(&self) -> Vec<Vector> {
        linalg::kernel(self.field(), self.polarize().rows(), self.n_vars())
    }

    /// Vector-space basis of `Rad F = {v ∈ Rad B_F : F(v) = 0}`.
    ///
    /// In characteristic 2, `F` restricted to `Rad B_F` is Frobenius-semilinear:
    /// `F(Σ c_i w_i) = Σ c_i² F(w_i)`. Solving the linear condition in
    /// `d_i = c_i²` and taking square roots gives the subspace.
    pub fn radical_quadratic(&self) -> Vec<Vector> {
        let rad_b = self.radical_bilinear();
        let f = self.field();
        if f.characteristic() != 2 || rad_b.is_empty() {
            return rad_b;
        }
        let values: Vector = rad_b.iter().map(|w| self.eval_unchecked(w)).collect();
        linalg::kernel(f, &[values], rad_b.len())
            .into_iter()
            .map(|d| {
                let c: Vector = d.iter().map(|&x| f.sqrt_char2(x)).collect();
                linalg::combine(f, &c, &rad_b)
            })
            .collect()
    }

    /// `(N+1) - dim Rad F`.
    pub fn rank(&self) -> Result<usize> {
        self.require_nonzero()?;
        Ok(self.n_vars() - self.radical_quadratic().len())
    }

    /// Projectivization of `Rad F`.
    pub fn singular_locus(&self) -> Result<LinearSubspace> {
        self.require_nonzero()?;
        LinearSubspace::new(self.field(), self.radical_quadratic())
    }

    pub fn classify(&self) -> Result<ClassificationReport> {
        self.require_nonzero()?;
        let f = self.field();
        let n = self.ambient();
        let q = f.order() as u64;
        let rad_b = self.radical_bilinear();
        let rad_f = self.radical_quadratic();
        let rank = self.n_vars() - rad_f.len();
        let count = self.point_set().count();

        let candidates: &[QuadricClass] = match rank {
            1 => &[QuadricClass::DoubleHyperplane],
            2 => &[QuadricClass::HyperplanePair, QuadricClass::ConjugatePair],
            r if r % 2 == 1 => &[QuadricClass::Parabolic],
            _ => &[QuadricClass::Hyperbolic, QuadricClass::Elliptic],
        };
        let class = candidates
            .iter()
            .copied()
            .find(|&c| expected_point_count(c, rank, n, q).ok() == Some(count as u128))
            .ok_or_else(|| {
                Error::InternalInconsistency(format!(
                    "rank {rank} form with {count} points matches no class"
                ))
            })?;

        let singular_locus = LinearSubspace::new(f, rad_f.clone())?;
        Ok(ClassificationReport {
            class,
            rank,
            radical_bilinear: LinearSubspace::new(f, rad_b)?,
            radical_quadratic: LinearSubspace::new(f, rad_f)?,
            singular_locus,
            point_count: count,
            projective_index: expected_projective_index(class, rank, n)?,
        })
    }

    /// `G(y) = F(M y)` for an `(N+1) × k` matrix `M` given by its `k` columns;
    /// the result lives in `target`, which must have `k` variables.
    pub fn substitute_columns(
        &self,
        columns: &[Vector],
        target: Arc<ProjectiveSpace>,
    ) -> Result<QuadraticForm> {
        if target.n_vars() != columns.len() {
            return Err(Error::DimensionMismatch {
                expected: target.n_vars(),
                got: columns.len(),
            });
        }
        if let Some(bad) = columns.iter().find(|c| c.len() != self.n_vars()) {
            return Err(Error::DimensionMismatch {
                expected: self.n_vars(),
                got: bad.len(),
            });
        }
        let gram = self.polarize();
        let f = self.field();
        let k = columns.len();
        let mut out = QuadraticForm::zero(target);
        for l in 0..k {
            out.set_coeff(l, l, self.eval_unchecked(&columns[l]));
            for m in l + 1..k {
                out.set_coeff(l, m, gram.apply(f, &columns[l], &columns[m]));
            }
        }
        Ok(out)
    }

    /// `F ∘ T` for a square matrix given row-major.
    pub fn substitute(&self, matrix: &[Vector]) -> Result<QuadraticForm> {
        let n = self.n_vars();
        if matrix.len() != n || matrix.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: matrix.len(),
            });
        }
        let columns: Vec<Vector> = (0..n).map(|j| linalg::column(matrix, j)).collect();
        self.substitute_columns(&columns, self.space.clone())
    }

    /// The form restricted to the subspace spanned by `basis`, written in
    /// the coordinates of that basis.
    pub fn restrict_to_subspace(&self, s: &LinearSubspace) -> Result<QuadraticForm> {
        if s.vector_dim() == 0 {
            return Err(Error::OutOfRange("empty subspace".into()));
        }
        let target = Arc::new(ProjectiveSpace::new(self.space.field().clone(), s.vector_dim() - 1)?);
        self.substitute_columns(s.basis(), target)
    }

    /// Basis of the hyperplane `L = 0` used by [`Self::restrict_to_hyperplane`]:
    /// with `k` the last index where `L_k != 0`, the vectors
    /// `e_i - (L_i / L_k) e_k` for `i != k`. For `L = X_N` this is the identity.
    pub fn hyperplane_basis(field: &GaloisField, l: &[Elem]) -> Result<Vec<Vector>> {
        let k = l.iter().rposition(|x| !x.is_zero()).ok_or(Error::ZeroLinearForm)?;
        let n = l.len();
        Ok((0..n)
            .filter(|&i| i != k)
            .map(|i| {
                let mut v = vec![Elem::ZERO; n];
                v[i] = Elem::ONE;
                v[k] = field.neg(field.div(l[i], l[k]).unwrap());
                v
            })
            .collect())
    }

    /// The section `F|_L` as a form in N variables on `L ≅ P^{N-1}`.
    pub fn restrict_to_hyperplane(&self, l: &[Elem]) -> Result<QuadraticForm> {
        if l.len() != self.n_vars() {
            return Err(Error::DimensionMismatch {
                expected: self.n_vars(),
                got: l.len(),
            });
        }
        let basis = Self::hyperplane_basis(self.field(), l)?;
        if self.ambient() == 0 {
            return Err(Error::OutOfRange("no hyperplanes in P^0".into()));
        }
        let target = Arc::new(ProjectiveSpace::new(self.space.field().clone(), self.ambient() - 1)?);
        self.substitute_columns(&basis, target)
    }

    /// Partial derivatives `(∂F/∂X_i)(v)`.
    pub fn gradient(&self, v: &[Elem]) -> Vector {
        let f = self.field();
        self.polarize()
            .rows()
            .iter()
            .map(|row| linalg::dot(f, row, v))
            .collect()
    }

    /// The projective tangent space at a rational point of the quadric: a
    /// hyperplane at smooth points, the whole space at singular ones.
    pub fn tangent_space(&self, p: &ProjPoint) -> Result<LinearSubspace> {
        if !self.eval(p.coords())?.is_zero() {
            return Err(Error::PointNotOnQuadric);
        }
        let grad = self.gradient(p.coords());
        if grad.iter().all(|x| x.is_zero()) {
            return Ok(LinearSubspace::whole(self.n_vars()));
        }
        LinearSubspace::new(self.field(), linalg::kernel(self.field(), &[grad], self.n_vars()))
    }

    /// Largest dimension of a rational linear subspace on the quadric, found
    /// by testing every subspace for identically vanishing restriction.
    pub fn projective_index_bruteforce(&self) -> Result<i64> {
        if self.ambient() > 3 {
            return Err(Error::AmbientTooLarge(format!(
                "projective index enumeration needs N <= 3, got {}",
                self.ambient()
            )));
        }
        self.require_nonzero()?;
        let subspaces: Vec<Vec<LinearSubspace>> =
            (1..=self.n_vars()).map(|k| self.space.subspaces(k)).collect();
        Ok(self.projective_index_among(&subspaces))
    }

    /// As [`Self::projective_index_bruteforce`] with the subspace lists
    /// (indexed by vector dimension minus one) supplied by the caller.
    pub fn projective_index_among(&self, subspaces_by_dim: &[Vec<LinearSubspace>]) -> i64 {
        let gram = self.polarize();
        let f = self.field();
        let mut best = -1i64;
        for (k, list) in subspaces_by_dim.iter().enumerate() {
            let found = list.iter().any(|s| {
                let b = s.basis();
                b.iter().all(|v| self.eval_unchecked(v).is_zero())
                    && (0..b.len())
                        .all(|l| (l + 1..b.len()).all(|m| gram.apply(f, &b[l], &b[m]).is_zero()))
            });
            if found {
                best = k as i64;
            }
        }
        best
    }
}

/// Everything [`QuadraticForm::classify`] learns about a quadric.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationReport {
    pub class: QuadricClass,
    pub rank: usize,
    pub radical_bilinear: LinearSubspace,
    pub radical_quadratic: LinearSubspace,
    pub singular_locus: LinearSubspace,
    pub point_count: usize,
    pub projective_index: i64,
}

/// Serializable view of a [`ClassificationReport`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationRecord {
    pub class: QuadricClass,
    pub rank: usize,
    /// Spanning points of the singular locus.
    pub singular_locus: Vec<String>,
    pub point_count: usize,
    pub projective_index: i64,
}

impl ClassificationReport {
    pub fn record(&self, field: &GaloisField) -> ClassificationRecord {
        ClassificationRecord {
            class: self.class,
            rank: self.rank,
            singular_locus: self.singular_locus.render(field),
            point_count: self.point_count,
            projective_index: self.projective_index,
        }
    }
}

/// Multiplicity structure of a binary form `a s² + b st + c t²` over the
/// algebraic closure: true iff it is nonzero and has a repeated root.
pub fn binary_form_has_double_root(field: &GaloisField, a: Elem, b: Elem, c: Elem) -> bool {
    if a.is_zero() && b.is_zero() && c.is_zero() {
        return false;
    }
    if field.characteristic() == 2 {
        b.is_zero()
    } else {
        let four = field.from_int(4);
        field.sub(field.mul(b, b), field.mul(four, field.mul(a, c))).is_zero()
    }
}

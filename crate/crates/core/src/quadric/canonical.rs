//! Reduction of a quadratic form to its canonical representative.
//!
//! The radical is split off first, then hyperbolic planes are peeled from
//! the remaining nondegenerate part until an anisotropic core of dimension
//! at most two is left. The core decides the class.

use std::sync::Arc;

use super::{QuadraticForm, QuadricClass};
use crate::error::{Error, Result};
use crate::gf::Elem;
use crate::linalg::{self, Vector};
use crate::projspace::ProjectiveSpace;

/// The canonical form of a class and rank in the variables of `space`:
/// `X0²`, `X0X1`, `f(X0,X1)`, `X0² + X1X2 + ...`, `X0X1 + X2X3 + ...`, or
/// `f(X0,X1) + X2X3 + ...`, with `f = X0² + αX0X1 + dX1²` irreducible.
pub fn canonical_form(
    space: Arc<ProjectiveSpace>,
    class: QuadricClass,
    rank: usize,
) -> Result<QuadraticForm> {
    super::check_class_rank(class, rank, space.dim())?;
    let field = space.field().clone();
    let (alpha, d) = field.irreducible_binary_constants();
    let mut f = QuadraticForm::zero(space);
    let pairs_from = match class {
        QuadricClass::DoubleHyperplane | QuadricClass::Parabolic => {
            f.set_coeff(0, 0, Elem::ONE);
            1
        }
        QuadricClass::HyperplanePair | QuadricClass::Hyperbolic => 0,
        QuadricClass::ConjugatePair | QuadricClass::Elliptic => {
            f.set_coeff(0, 0, Elem::ONE);
            f.set_coeff(0, 1, alpha);
            f.set_coeff(1, 1, d);
            2
        }
    };
    for i in (pairs_from..rank).step_by(2) {
        f.set_coeff(i, i + 1, Elem::ONE);
    }
    Ok(f)
}

/// `F ∘ T = scalar · canonical`, coefficient for coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalizationResult {
    pub class: QuadricClass,
    pub rank: usize,
    /// Invertible change of variables, row-major; column `j` is the image of `e_j`.
    pub transform: Vec<Vector>,
    pub scalar: Elem,
    pub canonical: QuadraticForm,
}

impl CanonicalizationResult {
    /// Re-checks the defining identity against `f`.
    pub fn verify(&self, f: &QuadraticForm) -> bool {
        let field = f.field();
        linalg::rank(field, &self.transform) == f.n_vars()
            && f.substitute(&self.transform).ok() == Some(self.canonical.scale(self.scalar))
    }
}

enum Core {
    Empty,
    Line(Vector),
    Plane(Vector, Vector),
}

impl QuadraticForm {
    /// Finds a change of variables and scalar taking this form to its
    /// canonical representative.
    pub fn canonicalize(&self) -> Result<CanonicalizationResult> {
        self.require_nonzero()?;
        let field = self.field();
        let n = self.n_vars();
        let q = field.order();
        let rad = self.radical_quadratic();
        let rank = n - rad.len();
        let mut rest = linalg::complete_basis(field, &rad, n);
        let mut pairs: Vec<(Vector, Vector)> = Vec::new();

        let core = loop {
            let dim = rest.len();
            match dim {
                0 => break Core::Empty,
                1 => break Core::Line(rest[0].clone()),
                _ => {}
            }
            // First isotropic vector not orthogonal to the rest, scanning the
            // points of P(rest) in canonical order.
            let mut found = None;
            for code in 1..q.pow(dim as u32) {
                let c = unpack(code, q, dim);
                if c.iter().rev().find(|x| !x.is_zero()) != Some(&Elem::ONE) {
                    continue;
                }
                let u = linalg::combine(field, &c, &rest);
                if !self.eval_unchecked(&u).is_zero() {
                    continue;
                }
                let bu: Vector = rest.iter().map(|w| self.bilinear(&u, w)).collect();
                if let Some(j) = bu.iter().position(|x| !x.is_zero()) {
                    found = Some((u, j, bu[j]));
                    break;
                }
            }
            let Some((u, j, buj)) = found else {
                if dim == 2 {
                    break Core::Plane(rest[0].clone(), rest[1].clone());
                }
                return Err(Error::InternalInconsistency(format!(
                    "no isotropic vector in a nondegenerate space of dimension {dim}"
                )));
            };
            let w = linalg::scale(field, field.inv(buj).unwrap(), &rest[j]);
            let fw = self.eval_unchecked(&w);
            let v: Vector = w
                .iter()
                .zip(&u)
                .map(|(&wi, &ui)| field.sub(wi, field.mul(fw, ui)))
                .collect();
            let constraints = vec![
                rest.iter().map(|x| self.bilinear(&u, x)).collect::<Vector>(),
                rest.iter().map(|x| self.bilinear(&v, x)).collect::<Vector>(),
            ];
            rest = linalg::kernel(field, &constraints, dim)
                .iter()
                .map(|k| linalg::combine(field, k, &rest))
                .collect();
            pairs.push((u, v));
        };

        let (class, scalar, mut columns) = match core {
            Core::Empty => {
                let class = if rank == 2 {
                    QuadricClass::HyperplanePair
                } else {
                    QuadricClass::Hyperbolic
                };
                (class, Elem::ONE, Vec::new())
            }
            Core::Line(z) => {
                let class = if rank == 1 {
                    QuadricClass::DoubleHyperplane
                } else {
                    QuadricClass::Parabolic
                };
                (class, self.eval_unchecked(&z), vec![z])
            }
            Core::Plane(a, b) => {
                let class = if rank == 2 {
                    QuadricClass::ConjugatePair
                } else {
                    QuadricClass::Elliptic
                };
                let (m1, m2, lambda) = self.match_binary_core(&a, &b)?;
                (class, lambda, vec![m1, m2])
            }
        };
        for (u, v) in pairs {
            columns.push(linalg::scale(field, scalar, &u));
            columns.push(v);
        }
        columns.extend(rad);

        let canonical = canonical_form(self.space.clone(), class, rank)?;
        let (transform, scalar) = if canonical == *self {
            let mut id = vec![vec![Elem::ZERO; n]; n];
            for (i, row) in id.iter_mut().enumerate() {
                row[i] = Elem::ONE;
            }
            (id, Elem::ONE)
        } else {
            ((0..n).map(|i| linalg::column(&columns, i)).collect(), scalar)
        };
        let result = CanonicalizationResult {
            class,
            rank,
            transform,
            scalar,
            canonical,
        };
        if !result.verify(self) {
            return Err(Error::InternalInconsistency(
                "canonical transform failed its identity check".into(),
            ));
        }
        Ok(result)
    }

    /// Finds `m1, m2` in `span(a, b)` and `λ` with
    /// `F(x m1 + y m2) = λ (x² + αxy + dy²)`.
    fn match_binary_core(&self, a: &Vector, b: &Vector) -> Result<(Vector, Vector, Elem)> {
        let field = self.field();
        let q = field.order();
        let (alpha, d) = field.irreducible_binary_constants();
        let basis = [a.clone(), b.clone()];
        for code1 in 1..q * q {
            let m1 = linalg::combine(field, &unpack(code1, q, 2), &basis);
            let lambda = self.eval_unchecked(&m1);
            if lambda.is_zero() {
                return Err(Error::InternalInconsistency(
                    "binary core is isotropic".into(),
                ));
            }
            let want_b = field.mul(lambda, alpha);
            let want_f = field.mul(lambda, d);
            for code2 in 1..q * q {
                let m2 = linalg::combine(field, &unpack(code2, q, 2), &basis);
                if self.bilinear(&m1, &m2) == want_b && self.eval_unchecked(&m2) == want_f {
                    return Ok((m1, m2, lambda));
                }
            }
        }
        Err(Error::InternalInconsistency(
            "anisotropic binary form is not similar to the reference form".into(),
        ))
    }
}

/// Base-q digits of `code`, most significant first.
fn unpack(mut code: usize, q: usize, len: usize) -> Vector {
    let mut v = vec![Elem::ZERO; len];
    for slot in v.iter_mut().rev() {
        *slot = Elem((code % q) as u8);
        code /= q;
    }
    v
}

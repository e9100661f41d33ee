//! Dense row reduction over a [`GaloisField`].
//!
//! Matrices are plain `Vec<Vec<Elem>>` in row-major order. Everything here is
//! exact; no pivoting strategy beyond "first nonzero in the column" is needed.

use crate::gf::{Elem, GaloisField};

pub type Vector = Vec<Elem>;

/// Reduces `rows` to reduced row echelon form in place, dropping zero rows.
/// Returns the pivot columns.
pub fn rref(field: &GaloisField, rows: &mut Vec<Vector>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(sel) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, sel);
        let inv = field.inv(rows[r][c]).unwrap();
        for x in rows[r].iter_mut() {
            *x = field.mul(*x, inv);
        }
        for i in 0..rows.len() {
            if i == r || rows[i][c].is_zero() {
                continue;
            }
            let factor = rows[i][c];
            for j in c..ncols {
                let sub = field.mul(factor, rows[r][j]);
                rows[i][j] = field.sub(rows[i][j], sub);
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn rank(field: &GaloisField, rows: &[Vector]) -> usize {
    let mut m = rows.to_vec();
    rref(field, &mut m).len()
}

/// Basis of `{x : A x = 0}` for an `m × ncols` matrix `A`. The basis vectors
/// are indexed by the free columns in increasing order, each with a 1 in its
/// own free column.
pub fn kernel(field: &GaloisField, rows: &[Vector], ncols: usize) -> Vec<Vector> {
    let mut m = rows.to_vec();
    let pivots = rref(field, &mut m);
    let mut is_pivot = vec![false; ncols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    (0..ncols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![Elem::ZERO; ncols];
            v[free] = Elem::ONE;
            for (row, &pc) in m.iter().zip(&pivots) {
                v[pc] = field.neg(row[free]);
            }
            v
        })
        .collect()
}

pub fn is_independent(field: &GaloisField, vectors: &[Vector]) -> bool {
    rank(field, vectors) == vectors.len()
}

/// Appends standard basis vectors to `vectors` until they span the space,
/// returning only the appended ones.
pub fn complete_basis(field: &GaloisField, vectors: &[Vector], dim: usize) -> Vec<Vector> {
    let mut current = vectors.to_vec();
    let mut added = Vec::new();
    for i in 0..dim {
        if current.len() == dim {
            break;
        }
        let mut e = vec![Elem::ZERO; dim];
        e[i] = Elem::ONE;
        current.push(e.clone());
        if rank(field, &current) == current.len() {
            added.push(e);
        } else {
            current.pop();
        }
    }
    added
}

/// `Σ coeffs[i] · vectors[i]`.
pub fn combine(field: &GaloisField, coeffs: &[Elem], vectors: &[Vector]) -> Vector {
    let dim = vectors.first().map_or(0, Vec::len);
    let mut out = vec![Elem::ZERO; dim];
    for (&c, v) in coeffs.iter().zip(vectors) {
        if c.is_zero() {
            continue;
        }
        for (o, &x) in out.iter_mut().zip(v) {
            *o = field.add(*o, field.mul(c, x));
        }
    }
    out
}

pub fn dot(field: &GaloisField, a: &[Elem], b: &[Elem]) -> Elem {
    a.iter()
        .zip(b)
        .fold(Elem::ZERO, |acc, (&x, &y)| field.add(acc, field.mul(x, y)))
}

pub fn scale(field: &GaloisField, c: Elem, v: &[Elem]) -> Vector {
    v.iter().map(|&x| field.mul(c, x)).collect()
}

/// Column `j` of a row-major matrix.
pub fn column(m: &[Vector], j: usize) -> Vector {
    m.iter().map(|row| row[j]).collect()
}

/// Number of nonzero vectors of length `len` over GF(q) with first nonzero
/// entry 1, i.e. `(q^len - 1) / (q - 1)`.
pub fn projective_count(q: usize, len: usize) -> u64 {
    (0..len).map(|k| (q as u64).pow(k as u32)).sum()
}

/// The `t`-th vector with first nonzero entry 1. Vectors whose leading 1 sits
/// at position 0 come first; within a block the trailing entries count up in
/// base q, most significant first.
pub fn projective_vector(q: usize, len: usize, mut t: u64) -> Vector {
    let q64 = q as u64;
    let mut v = vec![Elem::ZERO; len];
    for lead in 0..len {
        let block = q64.pow((len - lead - 1) as u32);
        if t < block {
            v[lead] = Elem::ONE;
            for slot in v[lead + 1..].iter_mut().rev() {
                *slot = Elem((t % q64) as u8);
                t /= q64;
            }
            return v;
        }
        t -= block;
    }
    panic!("projective index out of range");
}

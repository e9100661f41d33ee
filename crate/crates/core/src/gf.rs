//! Arithmetic in GF(q), q = p^e, backed by precomputed tables.
//!
//! Elements are stored as a single byte holding the polynomial-basis
//! coefficient vector `c_0 + c_1 z + ... + c_{e-1} z^{e-1}` packed as the
//! integer `c_0 + c_1 p + ... + c_{e-1} p^{e-1}`. The integer order of the
//! packed value is the element order used everywhere in the crate: zero
//! first, then lexicographic on the coefficients read from the highest power
//! of `z` down. Prime-field elements are their own residues.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported field order; elements fit in one byte.
pub const MAX_ORDER: u64 = 256;

/// A field element. Only meaningful together with the [`GaloisField`] that
/// produced it.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(pub u8);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` into `(p, e)` with `q = p^e`.
pub fn prime_power(q: u64) -> Result<(u64, u32)> {
    if q < 2 {
        return Err(Error::NotPrimePower(q));
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d)).unwrap();
    let mut rest = q;
    let mut e = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    if rest != 1 {
        return Err(Error::NotPrimePower(q));
    }
    Ok((p, e))
}

#[derive(Clone, PartialEq, Eq)]
pub struct GaloisField {
    p: u8,
    e: u32,
    q: usize,
    /// Monic modulus, coefficients from the constant term up; length e + 1.
    modulus: Vec<u8>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

impl fmt::Debug for GaloisField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GaloisField")
            .field("p", &self.p)
            .field("e", &self.e)
            .field("modulus", &self.modulus)
            .finish()
    }
}

/// Polynomial remainder over GF(p); `divisor` must be monic.
fn poly_rem(dividend: &[u64], divisor: &[u64], p: u64) -> Vec<u64> {
    let mut r = dividend.to_vec();
    let dd = divisor.len() - 1;
    while r.len() > dd {
        let lead = *r.last().unwrap() % p;
        let shift = r.len() - 1 - dd;
        if lead != 0 {
            for (i, &c) in divisor.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p * p - (lead * c) % p) % p;
            }
        }
        r.pop();
    }
    r
}

fn monic_polys(p: u64, degree: u32) -> impl Iterator<Item = Vec<u64>> {
    let count = p.pow(degree);
    (0..count).map(move |mut code| {
        let mut coeffs = Vec::with_capacity(degree as usize + 1);
        for _ in 0..degree {
            coeffs.push(code % p);
            code /= p;
        }
        coeffs.push(1);
        coeffs
    })
}

/// Exhaustive check: no monic factor of degree 1..=deg/2 divides `poly`.
pub fn is_irreducible(poly: &[u64], p: u64) -> bool {
    let degree = (poly.len() - 1) as u32;
    (1..=degree / 2).all(|d| {
        monic_polys(p, d).all(|factor| poly_rem(poly, &factor, p).iter().any(|&c| c != 0))
    })
}

impl GaloisField {
    pub fn new(p: u64, e: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NonPrime(p));
        }
        if !(1..=4).contains(&e) {
            return Err(Error::DegreeOutOfRange(e));
        }
        let q = p.checked_pow(e).filter(|&q| q <= MAX_ORDER).ok_or(Error::FieldTooLarge(
            p.saturating_pow(e),
        ))?;

        // Candidates are visited in increasing packed order of their lower
        // coefficients, so the first hit is the smallest irreducible.
        let modulus: Vec<u64> = if e == 1 {
            vec![0, 1]
        } else {
            monic_polys(p, e)
                .find(|m| is_irreducible(m, p))
                .expect("an irreducible polynomial of every degree exists")
        };

        let q = q as usize;
        let (pu, eu) = (p as usize, e as usize);
        let digits = |x: usize| -> Vec<u64> {
            let mut v = Vec::with_capacity(eu);
            let mut x = x;
            for _ in 0..eu {
                v.push((x % pu) as u64);
                x /= pu;
            }
            v
        };
        let pack = |v: &[u64]| -> u8 { v.iter().rev().fold(0u64, |acc, &c| acc * p + c) as u8 };

        let mut add = vec![0u8; q * q];
        let mut mul = vec![0u8; q * q];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let sum: Vec<u64> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = pack(&sum);
                let mut prod = vec![0u64; 2 * eu - 1];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                let mut red = if e == 1 { prod } else { poly_rem(&prod, &modulus, p) };
                red.resize(eu, 0);
                mul[a * q + b] = pack(&red);
            }
        }
        let mut neg = vec![0u8; q];
        let mut inv = vec![0u8; q];
        for a in 0..q {
            neg[a] = (0..q).find(|&b| add[a * q + b] == 0).unwrap() as u8;
            if a != 0 {
                inv[a] = (1..q)
                    .find(|&b| mul[a * q + b] == 1)
                    .expect("nonzero elements of a field are invertible") as u8;
            }
        }

        Ok(Self {
            p: p as u8,
            e,
            q,
            modulus: modulus.iter().map(|&c| c as u8).collect(),
            add,
            mul,
            neg,
            inv,
        })
    }

    /// Builds GF(q) from the order alone.
    pub fn with_order(q: u64) -> Result<Self> {
        let (p, e) = prime_power(q)?;
        Self::new(p, e)
    }

    #[inline]
    pub fn characteristic(&self) -> u64 {
        self.p as u64
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.e
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.q
    }

    /// Coefficients of the modulus from the constant term up (monic).
    pub fn modulus(&self) -> &[u8] {
        &self.modulus
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.q).map(|i| Elem(i as u8))
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (1..self.q).map(|i| Elem(i as u8))
    }

    /// The polynomial-basis generator `z` (equals `p` in packed form), or
    /// `None` for a prime field.
    pub fn generator(&self) -> Option<Elem> {
        (self.e > 1).then_some(Elem(self.p))
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.add[a.index() * self.q + b.index()])
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.mul[a.index() * self.q + b.index()])
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        Elem(self.neg[a.index()])
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: Elem) -> Option<Elem> {
        (!a.is_zero()).then(|| Elem(self.inv[a.index()]))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.inv(b).map(|ib| self.mul(a, ib))
    }

    pub fn pow(&self, a: Elem, mut k: u64) -> Elem {
        let mut base = a;
        let mut acc = Elem::ONE;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// `x ↦ x^p`.
    pub fn frobenius(&self, a: Elem) -> Elem {
        self.pow(a, self.p as u64)
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Elem {
        Elem(n.rem_euclid(self.p as i64) as u8)
    }

    /// Builds an element from polynomial coefficients in `z` (constant term
    /// first). Coefficients are reduced mod p and powers of `z` at or above
    /// the degree are reduced by the modulus.
    pub fn from_poly(&self, coeffs: &[i64]) -> Elem {
        let z = self.generator().unwrap_or(Elem::ONE);
        if self.e == 1 {
            // In a prime field `z` has no meaning beyond the constant term.
            return coeffs.first().map(|&c| self.from_int(c)).unwrap_or(Elem::ZERO);
        }
        coeffs.iter().enumerate().fold(Elem::ZERO, |acc, (k, &c)| {
            self.add(acc, self.mul(self.from_int(c), self.pow(z, k as u64)))
        })
    }

    /// Coefficient vector `(c_0, ..., c_{e-1})` of an element.
    pub fn coeffs(&self, a: Elem) -> Vec<u8> {
        let mut x = a.0 as usize;
        (0..self.e)
            .map(|_| {
                let c = (x % self.p as usize) as u8;
                x /= self.p as usize;
                c
            })
            .collect()
    }

    pub fn from_coeffs(&self, coeffs: &[u8]) -> Result<Elem> {
        if coeffs.len() != self.e as usize {
            return Err(Error::DimensionMismatch {
                expected: self.e as usize,
                got: coeffs.len(),
            });
        }
        if let Some(&c) = coeffs.iter().find(|&&c| c >= self.p) {
            return Err(Error::OutOfRange(format!("coefficient {c} not below {}", self.p)));
        }
        Ok(Elem(
            coeffs.iter().rev().fold(0usize, |acc, &c| acc * self.p as usize + c as usize) as u8,
        ))
    }

    /// Absolute trace `x + x^p + ... + x^{p^{e-1}}`, as a residue mod p.
    pub fn trace(&self, a: Elem) -> u8 {
        let mut acc = Elem::ZERO;
        let mut t = a;
        for _ in 0..self.e {
            acc = self.add(acc, t);
            t = self.frobenius(t);
        }
        debug_assert!(acc.index() < self.p as usize, "trace lies in the prime field");
        acc.0
    }

    /// Euler's criterion in odd characteristic; always true in characteristic 2.
    pub fn is_square(&self, a: Elem) -> bool {
        if self.p == 2 || a.is_zero() {
            return true;
        }
        self.pow(a, (self.q as u64 - 1) / 2) == Elem::ONE
    }

    /// Square root in characteristic 2, where squaring is a bijection.
    pub fn sqrt_char2(&self, a: Elem) -> Elem {
        debug_assert_eq!(self.p, 2);
        self.pow(a, self.q as u64 / 2)
    }

    /// Constants `(α, d)` making `X0² + αX0X1 + dX1²` irreducible:
    /// `(0, least d with -d a non-square)` in odd characteristic, `(1, least
    /// element of trace 1)` in characteristic 2. When `q ≡ 1 (mod 4)` the odd
    /// case is the least non-square; when `q ≡ 3 (mod 4)` it is `d = 1`.
    pub fn irreducible_binary_constants(&self) -> (Elem, Elem) {
        if self.p == 2 {
            let d = self.elements().find(|&x| self.trace(x) == 1).unwrap();
            (Elem::ONE, d)
        } else {
            let d = self.elements().find(|&x| !self.is_square(self.neg(x))).unwrap();
            (Elem::ZERO, d)
        }
    }

    /// Renders an element as an integer (prime field) or a polynomial in `z`.
    pub fn render(&self, a: Elem) -> String {
        if self.e == 1 {
            return a.0.to_string();
        }
        let coeffs = self.coeffs(a);
        let mut terms = Vec::new();
        for (k, &c) in coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let term = match (k, c) {
                (0, c) => c.to_string(),
                (1, 1) => "z".to_string(),
                (1, c) => format!("{c}*z"),
                (k, 1) => format!("z^{k}"),
                (k, c) => format!("{c}*z^{k}"),
            };
            terms.push(term);
        }
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join("+")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_fields() -> Vec<GaloisField> {
        [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (2, 4), (5, 2)]
            .iter()
            .map(|&(p, e)| GaloisField::new(p, e).unwrap())
            .collect()
    }

    #[test]
    fn create_errors() {
        assert_eq!(GaloisField::new(4, 1).unwrap_err(), Error::NonPrime(4));
        assert_eq!(GaloisField::new(2, 0).unwrap_err(), Error::DegreeOutOfRange(0));
        assert_eq!(GaloisField::new(2, 5).unwrap_err(), Error::DegreeOutOfRange(5));
        assert!(matches!(GaloisField::new(257, 1), Err(Error::FieldTooLarge(_))));
        assert!(matches!(GaloisField::with_order(6), Err(Error::NotPrimePower(6))));
    }

    #[test]
    fn gf4_modulus_is_x2_x_1() {
        let f = GaloisField::new(2, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        assert_eq!(f.order(), 4);
        let f2 = GaloisField::new(2, 1).unwrap();
        assert_eq!(f2.order(), 2);
        assert_eq!(f2.modulus(), &[0, 1]);
    }

    #[test]
    fn modulus_is_smallest_irreducible() {
        for (p, e) in [(2u64, 2u32), (2, 3), (2, 4), (3, 2), (5, 2), (3, 3)] {
            let f = GaloisField::new(p, e).unwrap();
            let m: Vec<u64> = f.modulus().iter().map(|&c| c as u64).collect();
            assert!(is_irreducible(&m, p));
            // every monic polynomial packed below it is reducible
            let code = |v: &[u64]| v[..e as usize].iter().rev().fold(0, |a, &c| a * p + c);
            for cand in monic_polys(p, e).filter(|c| code(c) < code(&m)) {
                assert!(!is_irreducible(&cand, p), "{cand:?} < {m:?}");
            }
        }
        assert_eq!(GaloisField::new(2, 3).unwrap().modulus(), &[1, 1, 0, 1]);
        assert_eq!(GaloisField::new(3, 2).unwrap().modulus(), &[1, 0, 1]);
    }

    #[test]
    fn field_axioms_exhaustive() {
        for f in all_fields() {
            let els: Vec<Elem> = f.elements().collect();
            assert_eq!(els.len(), f.order());
            for &a in &els {
                assert_eq!(f.add(a, Elem::ZERO), a);
                assert_eq!(f.mul(a, Elem::ONE), a);
                assert_eq!(f.add(a, f.neg(a)), Elem::ZERO);
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), Elem::ONE);
                }
                for &b in &els {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for &c in &els {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn frobenius_is_a_field_automorphism() {
        for f in all_fields() {
            for a in f.elements() {
                assert_eq!(f.pow(a, f.order() as u64), a);
                for b in f.elements() {
                    assert_eq!(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
                    assert_eq!(f.frobenius(f.mul(a, b)), f.mul(f.frobenius(a), f.frobenius(b)));
                }
            }
        }
    }

    #[test]
    fn trace_values() {
        let f2 = GaloisField::new(2, 1).unwrap();
        assert_eq!(f2.trace(Elem::ONE), 1);
        let f4 = GaloisField::new(2, 2).unwrap();
        let z = f4.generator().unwrap();
        assert_eq!(f4.trace(z), 1);
        assert_eq!(f4.trace(Elem::ZERO), 0);
        // z^2 = z + 1 in GF(4)
        assert_eq!(f4.mul(z, z), f4.add(z, Elem::ONE));
    }

    #[test]
    fn trace_is_linear_and_surjective() {
        for f in all_fields() {
            let p = f.characteristic() as u8;
            let mut hit = vec![false; p as usize];
            for a in f.elements() {
                hit[f.trace(a) as usize] = true;
                for b in f.elements() {
                    assert_eq!(f.trace(f.add(a, b)), (f.trace(a) + f.trace(b)) % p);
                }
                for c in 0..p {
                    let ca = f.mul(f.from_int(c as i64), a);
                    assert_eq!(f.trace(ca) as u32, (c as u32 * f.trace(a) as u32) % p as u32);
                }
            }
            assert!(hit.into_iter().all(|h| h));
        }
    }

    #[test]
    fn squares() {
        let f3 = GaloisField::new(3, 1).unwrap();
        assert!(f3.is_square(Elem(1)));
        assert!(!f3.is_square(Elem(2)));
        let f5 = GaloisField::new(5, 1).unwrap();
        assert!(f5.is_square(Elem(4)));
        for f in all_fields() {
            let squares: std::collections::BTreeSet<Elem> =
                f.nonzero_elements().map(|x| f.mul(x, x)).collect();
            for a in f.nonzero_elements() {
                assert_eq!(f.is_square(a), squares.contains(&a));
            }
            if f.characteristic() != 2 {
                assert_eq!(squares.len(), (f.order() - 1) / 2);
            }
        }
    }

    #[test]
    fn binary_constants() {
        let f3 = GaloisField::new(3, 1).unwrap();
        // -1 is a non-square mod 3, so X0^2 + X1^2 is already irreducible
        assert_eq!(f3.irreducible_binary_constants(), (Elem(0), Elem(1)));
        let f5 = GaloisField::new(5, 1).unwrap();
        assert_eq!(f5.irreducible_binary_constants(), (Elem(0), Elem(2)));
        let f7 = GaloisField::new(7, 1).unwrap();
        assert_eq!(f7.irreducible_binary_constants(), (Elem(0), Elem(1)));
        let f2 = GaloisField::new(2, 1).unwrap();
        assert_eq!(f2.irreducible_binary_constants(), (Elem(1), Elem(1)));
        let f4 = GaloisField::new(2, 2).unwrap();
        assert_eq!(f4.irreducible_binary_constants(), (Elem(1), f4.generator().unwrap()));
        for f in all_fields() {
            let (alpha, d) = f.irreducible_binary_constants();
            for x in f.elements() {
                for y in f.elements() {
                    if x.is_zero() && y.is_zero() {
                        continue;
                    }
                    let v = f.add(
                        f.add(f.mul(x, x), f.mul(alpha, f.mul(x, y))),
                        f.mul(d, f.mul(y, y)),
                    );
                    assert!(!v.is_zero());
                }
            }
        }
    }

    #[test]
    fn render_and_coeffs() {
        let f4 = GaloisField::new(2, 2).unwrap();
        let z = f4.generator().unwrap();
        assert_eq!(f4.render(f4.add(z, Elem::ONE)), "z+1");
        assert_eq!(f4.render(Elem::ZERO), "0");
        let f9 = GaloisField::new(3, 2).unwrap();
        let x = f9.from_coeffs(&[1, 2]).unwrap();
        assert_eq!(f9.render(x), "2*z+1");
        assert_eq!(f9.coeffs(x), vec![1, 2]);
        assert_eq!(f9.from_poly(&[1, 2]), x);
        // z^2 = -1 with modulus x^2 + 1
        assert_eq!(f9.from_poly(&[0, 0, 1]), f9.from_int(-1));
        assert_eq!(GaloisField::new(5, 1).unwrap().render(Elem(3)), "3");
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(8).unwrap(), (2, 3));
        assert_eq!(prime_power(25).unwrap(), (5, 2));
        assert_eq!(prime_power(7).unwrap(), (7, 1));
        assert!(prime_power(12).is_err());
        assert!(prime_power(1).is_err());
    }
}

//! Polynomials over GF(2^m): ring arithmetic, extended Euclid with a
//! degree-threshold stop, irreducible sampling, and square roots modulo an
//! irreducible polynomial.

use super::{FieldError, FieldParams, Gfe};
use rand::Rng;

/// A polynomial with coefficients in GF(2^m), lowest degree first.
/// Invariant: the highest stored coefficient is nonzero (the zero polynomial
/// stores no coefficients).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FieldPoly {
    coeffs: Vec<Gfe>,
}

impl FieldPoly {
    pub fn zero() -> Self {
        FieldPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        FieldPoly { coeffs: vec![1] }
    }

    /// The monomial x.
    pub fn x() -> Self {
        FieldPoly { coeffs: vec![0, 1] }
    }

    pub fn constant(c: Gfe) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn from_coeffs(mut coeffs: Vec<Gfe>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FieldPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Gfe {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[Gfe] {
        &self.coeffs
    }

    pub fn add(&self, other: &FieldPoly) -> FieldPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| FieldParams::add(self.coeff(i), other.coeff(i)))
            .collect();
        Self::from_coeffs(coeffs)
    }

    pub fn mul(&self, other: &FieldPoly, f: &FieldParams) -> FieldPoly {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![0 as Gfe; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] ^= f.mul(a, b);
            }
        }
        Self::from_coeffs(coeffs)
    }

    pub fn mul_scalar(&self, c: Gfe, f: &FieldParams) -> FieldPoly {
        Self::from_coeffs(self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// Euclidean division: returns (quotient, remainder) with
    /// `self = q·divisor + r` and `deg r < deg divisor`.
    pub fn divmod(&self, divisor: &FieldPoly, f: &FieldParams) -> Result<(FieldPoly, FieldPoly), FieldError> {
        let db = divisor.degree().ok_or(FieldError::DivisionByZero)?;
        if self.degree().map_or(true, |d| d < db) {
            return Ok((Self::zero(), self.clone()));
        }
        let lead_inv = f.inv(divisor.coeffs[db])?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0 as Gfe; rem.len() - db];
        for d in (db..rem.len()).rev() {
            if rem[d] == 0 {
                continue;
            }
            let factor = f.mul(rem[d], lead_inv);
            quot[d - db] = factor;
            for (i, &c) in divisor.coeffs.iter().enumerate() {
                rem[d - db + i] ^= f.mul(factor, c);
            }
        }
        Ok((Self::from_coeffs(quot), Self::from_coeffs(rem)))
    }

    pub fn rem(&self, modulus: &FieldPoly, f: &FieldParams) -> Result<FieldPoly, FieldError> {
        Ok(self.divmod(modulus, f)?.1)
    }

    pub fn eval(&self, x: Gfe, f: &FieldParams) -> Gfe {
        let mut acc = 0;
        for &c in self.coeffs.iter().rev() {
            acc = f.mul(acc, x) ^ c;
        }
        acc
    }

    /// Scales to leading coefficient 1; the zero polynomial stays zero.
    pub fn monic(&self, f: &FieldParams) -> FieldPoly {
        match self.degree() {
            None => Self::zero(),
            Some(d) => {
                let inv = f.inv(self.coeffs[d]).expect("leading coefficient nonzero");
                self.mul_scalar(inv, f)
            }
        }
    }
}

/// Monic greatest common divisor.
pub fn gcd(a: &FieldPoly, b: &FieldPoly, f: &FieldParams) -> FieldPoly {
    let mut r0 = a.clone();
    let mut r1 = b.clone();
    while !r1.is_zero() {
        let r2 = r0.rem(&r1, f).expect("nonzero divisor");
        r0 = r1;
        r1 = r2;
    }
    r0.monic(f)
}

/// Extended Euclid: returns (g, u, v) with `u·a + v·b = g` and g monic.
pub fn eea(a: &FieldPoly, b: &FieldPoly, f: &FieldParams) -> (FieldPoly, FieldPoly, FieldPoly) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut u0, mut u1) = (FieldPoly::one(), FieldPoly::zero());
    let (mut v0, mut v1) = (FieldPoly::zero(), FieldPoly::one());
    while !r1.is_zero() {
        let (q, r2) = r0.divmod(&r1, f).expect("nonzero divisor");
        let u2 = u0.add(&q.mul(&u1, f));
        let v2 = v0.add(&q.mul(&v1, f));
        (r0, r1) = (r1, r2);
        (u0, u1) = (u1, u2);
        (v0, v1) = (v1, v2);
    }
    match r0.degree() {
        None => (r0, u0, v0),
        Some(d) => {
            let inv = f.inv(r0.coeffs[d]).expect("leading coefficient nonzero");
            (
                r0.mul_scalar(inv, f),
                u0.mul_scalar(inv, f),
                v0.mul_scalar(inv, f),
            )
        }
    }
}

/// Extended Euclid stopped at the first remainder of degree ≤ `bound`:
/// returns (r, v) with `r ≡ v·b (mod a)` and `deg r ≤ bound`. This is the
/// key-equation split the decoder needs.
pub fn eea_below(
    a: &FieldPoly,
    b: &FieldPoly,
    bound: usize,
    f: &FieldParams,
) -> (FieldPoly, FieldPoly) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut v0, mut v1) = (FieldPoly::zero(), FieldPoly::one());
    while r1.degree().is_some_and(|d| d > bound) {
        let (q, r2) = r0.divmod(&r1, f).expect("nonzero divisor");
        let v2 = v0.add(&q.mul(&v1, f));
        (r0, r1) = (r1, r2);
        (v0, v1) = (v1, v2);
    }
    (r1, v1)
}

/// The inverse of `a` modulo the irreducible `g`; `a` must be nonzero mod g.
pub fn inv_mod(a: &FieldPoly, g: &FieldPoly, f: &FieldParams) -> Result<FieldPoly, FieldError> {
    let (d, _, v) = eea(g, a, f);
    if d.degree() != Some(0) {
        return Err(FieldError::DivisionByZero);
    }
    v.rem(g, f)
}

/// Samples a uniformly random monic irreducible polynomial of degree t over
/// GF(2^m). Irreducibility is a gcd test against x^(2^(m·i)) − x for
/// i ≤ t/2, which catches any factor of degree up to t/2.
pub fn random_irreducible<R: Rng + ?Sized>(t: usize, f: &FieldParams, rng: &mut R) -> FieldPoly {
    assert!(t >= 1);
    let mask = (f.size() - 1) as u16;
    'candidates: loop {
        let mut coeffs: Vec<Gfe> = (0..t).map(|_| rng.gen::<u16>() & mask).collect();
        coeffs.push(1);
        let g = FieldPoly::from_coeffs(coeffs);
        let x = FieldPoly::x();
        let mut h = x.clone();
        for _ in 0..t / 2 {
            for _ in 0..f.degree() {
                h = h.mul(&h, f).rem(&g, f).expect("g nonzero");
            }
            if gcd(&h.add(&x), &g, f).degree() != Some(0) {
                continue 'candidates;
            }
        }
        return g;
    }
}

/// Square root modulo an irreducible `g`: returns s with `s² ≡ p (mod g)`,
/// computed as `p^(2^(m·t−1))` by repeated squaring (the ring is a field of
/// order 2^(m·t), in which squaring is bijective).
pub fn sqrt_mod(p: &FieldPoly, g: &FieldPoly, f: &FieldParams) -> Result<FieldPoly, FieldError> {
    let t = g.degree().ok_or(FieldError::DivisionByZero)?;
    let mut s = p.rem(g, f)?;
    for _ in 0..(f.degree() as usize * t).saturating_sub(1) {
        s = s.mul(&s, f).rem(g, f)?;
    }
    if s.mul(&s, f).rem(g, f)? != p.rem(g, f)? {
        return Err(FieldError::NotInRing);
    }
    Ok(s)
}

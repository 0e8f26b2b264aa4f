//! Small finite fields, elements encoded as base-`p` digit strings of
//! polynomial coefficients (constant term least significant).

use crate::error::{Error, Result};
use crate::perm::is_prime;

/// Largest field order the tables are built for.
pub const MAX_FIELD_ORDER: usize = 256;

#[derive(Clone, Debug)]
pub struct Field {
    p: usize,
    d: usize,
    q: usize,
    mul: Vec<usize>,
    primitive: usize,
}

fn digits(x: usize, p: usize, d: usize) -> Vec<usize> {
    let mut v = Vec::with_capacity(d);
    let mut x = x;
    for _ in 0..d {
        v.push(x % p);
        x /= p;
    }
    v
}

fn undigits(v: &[usize], p: usize) -> usize {
    v.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Product of two polynomials of degree < d reduced by the monic `modulus`
/// (coefficients of x^0..x^(d-1); the leading 1 is implicit).
fn poly_mul_mod(a: &[usize], b: &[usize], modulus: &[usize], p: usize) -> Vec<usize> {
    let d = modulus.len();
    let mut prod = vec![0; 2 * d];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for top in (d..2 * d).rev() {
        let c = prod[top];
        if c != 0 {
            prod[top] = 0;
            for (i, &m) in modulus.iter().enumerate() {
                prod[top - d + i] = (prod[top - d + i] + p * p - c * m % p) % p;
            }
        }
    }
    prod.truncate(d);
    prod
}

impl Field {
    /// The field of order `p^d`, built from the smallest monic irreducible
    /// polynomial of degree `d` in the digit order.
    pub fn new(p: usize, d: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Precondition(format!("{p} is not prime")));
        }
        if d == 0 {
            return Err(Error::Precondition("field degree must be at least 1".into()));
        }
        let q = p.checked_pow(d as u32).filter(|&q| q <= MAX_FIELD_ORDER).ok_or_else(|| {
            Error::capacity("field order", (p as u128).saturating_pow(d as u32), MAX_FIELD_ORDER as u128)
        })?;
        for code in 0..q {
            let modulus = digits(code, p, d);
            if let Some(field) = Self::try_modulus(p, d, q, &modulus) {
                return Ok(field);
            }
        }
        Err(Error::Internal(format!("no irreducible polynomial of degree {d} over F_{p}")))
    }

    /// Builds the multiplication table and returns `None` unless the
    /// quotient ring has no zero divisors.
    fn try_modulus(p: usize, d: usize, q: usize, modulus: &[usize]) -> Option<Field> {
        let elems: Vec<Vec<usize>> = (0..q).map(|x| digits(x, p, d)).collect();
        let mut mul = vec![0; q * q];
        for a in 0..q {
            for b in 0..q {
                let c = undigits(&poly_mul_mod(&elems[a], &elems[b], modulus, p), p);
                if c == 0 && a != 0 && b != 0 {
                    return None;
                }
                mul[a * q + b] = c;
            }
        }
        let mut field = Field { p, d, q, mul, primitive: 0 };
        field.primitive = (1..q).find(|&g| field.multiplicative_order(g) == q - 1)?;
        Some(field)
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let (x, y) = (digits(a, self.p, self.d), digits(b, self.p, self.d));
        let s: Vec<usize> = x.iter().zip(&y).map(|(u, v)| (u + v) % self.p).collect();
        undigits(&s, self.p)
    }

    pub fn neg(&self, a: usize) -> usize {
        let s: Vec<usize> = digits(a, self.p, self.d).iter().map(|u| (self.p - u) % self.p).collect();
        undigits(&s, self.p)
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.q + b]
    }

    /// The smallest generator of the multiplicative group.
    pub fn primitive_element(&self) -> usize {
        self.primitive
    }

    /// Additive basis `1, x, ..., x^(d-1)`.
    pub fn additive_basis(&self) -> Vec<usize> {
        (0..self.d).map(|i| self.p.pow(i as u32)).collect()
    }

    fn multiplicative_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut n = 1;
        while x != 1 {
            x = self.mul(x, g);
            n += 1;
            if n > self.q {
                return 0;
            }
        }
        n
    }
}

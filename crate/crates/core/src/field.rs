//! Arithmetic in GF(q) for q = p^m, q ≤ 2^16.
//!
//! Elements are integers in `[0, q)`. For extension fields an element packs
//! the coefficients of a polynomial of degree `< m` over GF(p) in base `p`,
//! least significant coefficient first, so `x` is the integer `p` and
//! `x + 1` is `p + 1`.
//!
//! Multiplication and inversion go through log/antilog tables built from a
//! primitive element. Addition is XOR in characteristic 2, reduction mod `p`
//! for prime fields, and digit-wise addition otherwise.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A field element, always in `[0, q)`.
pub type Elem = u16;

/// Largest supported field cardinality.
pub const MAX_Q: u32 = 1 << 16;

/// Handle to an immutable GF(q). Cloning is cheap and the tables are shared.
#[derive(Clone)]
pub struct FieldSpec {
    inner: Arc<Tables>,
}

struct Tables {
    q: u32,
    p: u32,
    m: u32,
    /// Monic modulus coefficients, constant term first (`m + 1` entries).
    /// Empty for prime fields.
    modulus: Vec<u32>,
    /// `exp[i] = g^i` for `i < 2(q-1)`, so a sum of two logs needs no reduction.
    exp: Vec<Elem>,
    /// `log[a]` for `a != 0`; `log[0]` is unused.
    log: Vec<u32>,
    neg: Vec<Elem>,
    /// Full addition table for small odd-characteristic extension fields.
    add_table: Option<Vec<Elem>>,
}

impl FieldSpec {
    /// Builds GF(p^m). When `modulus` is `None` and `m > 1`, the
    /// lexicographically smallest monic irreducible polynomial of degree `m`
    /// is used, which makes construction deterministic.
    ///
    /// `modulus` lists coefficients constant-term first and must be monic of
    /// degree `m`.
    pub fn new(p: u32, m: u32, modulus: Option<&[u32]>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::invalid(format!("characteristic {p} is not prime")));
        }
        if m == 0 {
            return Err(Error::invalid("extension degree must be at least 1"));
        }
        let q = (p as u64)
            .checked_pow(m)
            .filter(|&q| q <= MAX_Q as u64)
            .ok_or_else(|| Error::invalid(format!("{p}^{m} exceeds the 2^16 field size cap")))?
            as u32;

        let modulus = if m == 1 {
            if modulus.is_some_and(|f| f.len() != 2 || f[1] != 1 || f[0] >= p) {
                return Err(Error::invalid("modulus for a prime field must be monic linear"));
            }
            Vec::new()
        } else {
            match modulus {
                Some(f) => {
                    if f.len() != m as usize + 1 || f[m as usize] != 1 || f.iter().any(|&c| c >= p) {
                        return Err(Error::invalid(format!(
                            "modulus must be a monic degree-{m} polynomial over GF({p})"
                        )));
                    }
                    if !is_irreducible(f, p) {
                        return Err(Error::invalid("modulus is reducible"));
                    }
                    f.to_vec()
                }
                None => default_modulus(p, m),
            }
        };

        Ok(Self::from_parts(q, p, m, modulus))
    }

    /// GF(p) for prime `p`.
    pub fn prime(p: u32) -> Result<Self> {
        Self::new(p, 1, None)
    }

    /// GF(q) for a prime power `q`, with the default modulus.
    pub fn with_order(q: u32) -> Result<Self> {
        let (p, m) = prime_power(q).ok_or_else(|| Error::invalid(format!("{q} is not a prime power")))?;
        Self::new(p, m, None)
    }

    fn from_parts(q: u32, p: u32, m: u32, modulus: Vec<u32>) -> Self {
        let mulmod = |a: u32, b: u32| -> u32 {
            if m == 1 {
                a * b % p
            } else {
                poly_mulmod(a, b, p, m, &modulus)
            }
        };
        let generator = find_generator(q, &mulmod);

        let order = (q - 1) as usize;
        let mut exp = vec![0 as Elem; 2 * order.max(1)];
        let mut log = vec![0u32; q as usize];
        let mut x = 1u32;
        for i in 0..order {
            exp[i] = x as Elem;
            log[x as usize] = i as u32;
            x = mulmod(x, generator);
        }
        for i in order..2 * order {
            exp[i] = exp[i - order];
        }

        let neg: Vec<Elem> = (0..q)
            .map(|a| {
                let mut out = 0u32;
                let mut scale = 1u32;
                let mut rest = a;
                for _ in 0..m {
                    let c = rest % p;
                    out += ((p - c) % p) * scale;
                    rest /= p;
                    scale *= p;
                }
                out as Elem
            })
            .collect();

        let add_table = (p != 2 && m > 1 && q <= 256).then(|| {
            let mut t = vec![0 as Elem; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    t[(a * q + b) as usize] = digit_add(a, b, p, m) as Elem;
                }
            }
            t
        });

        FieldSpec {
            inner: Arc::new(Tables { q, p, m, modulus, exp, log, neg, add_table }),
        }
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.inner.q
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.inner.p
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.inner.m
    }

    /// Modulus coefficients, constant term first. Empty for prime fields.
    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    #[inline]
    pub fn is_binary(&self) -> bool {
        self.inner.q == 2
    }

    /// Validates an integer as an element of this field.
    pub fn element(&self, v: u32) -> Result<Elem> {
        if v < self.inner.q {
            Ok(v as Elem)
        } else {
            Err(Error::invalid(format!("{v} is not an element of GF({})", self.inner.q)))
        }
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let t = &*self.inner;
        if t.p == 2 {
            a ^ b
        } else if t.m == 1 {
            let s = a as u32 + b as u32;
            (if s >= t.p { s - t.p } else { s }) as Elem
        } else if let Some(table) = &t.add_table {
            table[a as usize * t.q as usize + b as usize]
        } else {
            digit_add(a as u32, b as u32, t.p, t.m) as Elem
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.inner.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            return 0;
        }
        let t = &*self.inner;
        t.exp[(t.log[a as usize] + t.log[b as usize]) as usize]
    }

    /// Multiplicative inverse; zero has none.
    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        let t = &*self.inner;
        let order = t.q - 1;
        Ok(t.exp[((order - t.log[a as usize]) % order) as usize])
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let t = &*self.inner;
        let order = (t.q - 1) as u64;
        t.exp[((t.log[a as usize] as u64 * (e % order)) % order) as usize]
    }

    /// `acc + a * b`.
    #[inline]
    pub fn mul_add(&self, acc: Elem, a: Elem, b: Elem) -> Elem {
        self.add(acc, self.mul(a, b))
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p
                && self.inner.m == other.inner.m
                && self.inner.modulus == other.inner.modulus)
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inner.m == 1 {
            write!(f, "GF({})", self.inner.q)
        } else {
            write!(f, "GF({}^{}, modulus={:?})", self.inner.p, self.inner.m, self.inner.modulus)
        }
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` as `p^m` when it is a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut rest = q;
    let mut m = 0;
    while rest % p == 0 {
        rest /= p;
        m += 1;
    }
    (rest == 1).then_some((p, m))
}

fn digit_add(a: u32, b: u32, p: u32, m: u32) -> u32 {
    let (mut a, mut b) = (a, b);
    let mut out = 0;
    let mut scale = 1;
    for _ in 0..m {
        out += ((a % p + b % p) % p) * scale;
        a /= p;
        b /= p;
        scale *= p;
    }
    out
}

fn unpack(mut a: u32, p: u32, m: u32) -> Vec<u32> {
    (0..m)
        .map(|_| {
            let c = a % p;
            a /= p;
            c
        })
        .collect()
}

fn pack(coeffs: &[u32], p: u32) -> u32 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Product of two packed polynomials reduced by a monic modulus of degree `m`.
fn poly_mulmod(a: u32, b: u32, p: u32, m: u32, modulus: &[u32]) -> u32 {
    let a = unpack(a, p, m);
    let b = unpack(b, p, m);
    let mut prod = vec![0u32; 2 * m as usize];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + ai * bj) % p;
        }
    }
    let m = m as usize;
    for deg in (m..prod.len()).rev() {
        let c = prod[deg];
        if c == 0 {
            continue;
        }
        for (k, &fk) in modulus.iter().enumerate().take(m) {
            let idx = deg - m + k;
            prod[idx] = (prod[idx] + (p - c) * fk % p) % p;
        }
        prod[deg] = 0;
    }
    pack(&prod[..m], p)
}

/// Remainder of `f` divided by monic `g`; both constant-term first.
fn poly_rem(f: &[u32], g: &[u32], p: u32) -> Vec<u32> {
    let mut r = f.to_vec();
    let dg = g.len() - 1;
    while r.len() > dg {
        let c = *r.last().unwrap();
        let shift = r.len() - 1 - dg;
        if c != 0 {
            for (k, &gk) in g.iter().enumerate() {
                r[shift + k] = (r[shift + k] + (p - c) * gk % p) % p;
            }
        }
        r.pop();
    }
    r
}

/// Trial division by every monic polynomial of degree at most `deg(f)/2`.
pub(crate) fn is_irreducible(f: &[u32], p: u32) -> bool {
    let m = f.len() - 1;
    if m == 0 {
        return false;
    }
    for d in 1..=m / 2 {
        for low in 0..p.pow(d as u32) {
            let mut g = unpack(low, p, d as u32);
            g.push(1);
            if poly_rem(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn default_modulus(p: u32, m: u32) -> Vec<u32> {
    (0..p.pow(m))
        .map(|low| {
            let mut f = unpack(low, p, m);
            f.push(1);
            f
        })
        .find(|f| is_irreducible(f, p))
        .expect("an irreducible polynomial exists for every degree")
}

fn distinct_prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Smallest element whose multiplicative order is `q - 1`.
fn find_generator(q: u32, mulmod: &dyn Fn(u32, u32) -> u32) -> u32 {
    if q == 2 {
        return 1;
    }
    let order = q - 1;
    let factors = distinct_prime_factors(order);
    let pow = |mut base: u32, mut e: u32| {
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, base);
            }
            base = mulmod(base, base);
            e >>= 1;
        }
        acc
    };
    (2..q)
        .find(|&g| factors.iter().all(|&l| pow(g, order / l) != 1))
        .expect("the multiplicative group of a finite field is cyclic")
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent polynomial-arithmetic reference for extension fields.
    fn slow_mul(f: &FieldSpec, a: Elem, b: Elem) -> Elem {
        let (p, m) = (f.characteristic(), f.degree());
        if m == 1 {
            return (a as u32 * b as u32 % p) as Elem;
        }
        poly_mulmod(a as u32, b as u32, p, m, f.modulus()) as Elem
    }

    #[test]
    fn gf2_characteristic_identity() {
        let f = FieldSpec::new(2, 1, None).unwrap();
        assert_eq!(f.add(1, 1), 0);
        assert_eq!(f.inv(1).unwrap(), 1);
    }

    #[test]
    fn gf5_small_values() {
        let f = FieldSpec::prime(5).unwrap();
        assert_eq!(f.add(3, 4), 2);
        assert_eq!(f.mul(3, 2), 1);
        assert_eq!(f.inv(3).unwrap(), 2);
        assert_eq!(f.mul(4, 0), 0);
    }

    #[test]
    fn gf4_polynomial_examples() {
        // x = 2, x + 1 = 3 in packed form
        let f = FieldSpec::new(2, 2, Some(&[1, 1, 1])).unwrap();
        assert_eq!(f.mul(2, 2), 3);
        assert_eq!(f.add(2, 3), 1);
    }

    #[test]
    fn gf256_every_nonzero_invertible() {
        let f = FieldSpec::new(2, 8, None).unwrap();
        assert_eq!(f.q(), 256);
        for a in 1..256u16 {
            let ai = f.inv(a).unwrap();
            assert_eq!(f.mul(a, ai), 1);
            assert_eq!(slow_mul(&f, a, ai), 1);
        }
    }

    #[test]
    fn gf256_inverse_matches_extended_euclid() {
        // extended Euclid over GF(2)[x] on bit-packed polynomials
        fn deg(x: u32) -> i32 {
            31 - x.leading_zeros() as i32
        }
        fn clmul(a: u32, b: u32) -> u32 {
            (0..16).filter(|i| b >> i & 1 == 1).fold(0, |acc, i| acc ^ (a << i))
        }
        let f = FieldSpec::new(2, 8, None).unwrap();
        let modulus = pack(f.modulus(), 2);
        for a in [1u32, 2, 3, 0x53, 0x8f, 0xca, 0xff] {
            let (mut r0, mut r1) = (modulus, a);
            let (mut s0, mut s1) = (0u32, 1u32);
            while r1 != 0 {
                let mut qt = 0;
                let mut r = r0;
                while r != 0 && deg(r) >= deg(r1) {
                    let sh = deg(r) - deg(r1);
                    qt ^= 1 << sh;
                    r ^= r1 << sh;
                }
                (r0, r1) = (r1, r);
                (s0, s1) = (s1, s0 ^ clmul(qt, s1));
            }
            assert_eq!(r0, 1);
            assert_eq!(f.inv(a as Elem).unwrap() as u32, s0);
        }
    }

    #[test]
    fn inverse_of_zero_is_an_error() {
        let f = FieldSpec::prime(7).unwrap();
        assert_eq!(f.inv(0), Err(Error::DivisionByZero));
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(FieldSpec::new(4, 1, None).is_err());
        assert!(FieldSpec::new(2, 0, None).is_err());
        assert!(FieldSpec::new(2, 17, None).is_err());
        assert!(FieldSpec::new(257, 2, None).is_err());
        // x^2 + 1 = (x + 1)^2 over GF(2)
        assert!(FieldSpec::new(2, 2, Some(&[1, 0, 1])).is_err());
        // not monic
        assert!(FieldSpec::new(3, 2, Some(&[1, 0, 2])).is_err());
    }

    #[test]
    fn accepts_max_size_fields() {
        let f = FieldSpec::new(2, 16, None).unwrap();
        assert_eq!(f.q(), 65536);
        let a = 0x1234;
        assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        let g = FieldSpec::with_order(59049).unwrap();
        assert_eq!((g.characteristic(), g.degree()), (3, 10));
        assert_eq!(g.mul(100, g.inv(100).unwrap()), 1);
        assert_eq!(g.add(100, g.neg(100)), 0);
    }

    #[test]
    fn default_modulus_is_deterministic() {
        let a = FieldSpec::with_order(256).unwrap();
        let b = FieldSpec::new(2, 8, None).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.modulus(), &[1, 1, 0, 1, 1, 0, 0, 0, 1]);
    }

    fn small_fields() -> Vec<FieldSpec> {
        [2, 3, 4, 5, 7, 8, 9, 11, 13, 16]
            .into_iter()
            .map(|q| FieldSpec::with_order(q).unwrap())
            .collect()
    }

    #[test]
    fn ring_axioms_exhaustive_small_fields() {
        for f in small_fields() {
            let q = f.q() as Elem;
            for a in 0..q {
                for b in 0..q {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    assert_eq!(f.mul(a, b), slow_mul(&f, a, b), "{f:?}");
                    for c in 0..q {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
            let p_fold = (0..f.characteristic()).fold(0, |acc, _| f.add(acc, 1));
            assert_eq!(p_fold, 0);
        }
    }

    #[test]
    fn inverse_is_an_involution_and_group_order_holds() {
        for q in [2u32, 3, 4, 5, 8, 9, 16, 25, 27, 49, 64, 81, 121, 125, 128, 243, 256] {
            let f = FieldSpec::with_order(q).unwrap();
            for a in 1..q as Elem {
                let ai = f.inv(a).unwrap();
                assert_eq!(f.inv(ai).unwrap(), a);
                assert_eq!(f.pow(a, (q - 1) as u64), 1);
                let by_mul = (0..q - 1).fold(1, |acc, _| f.mul(acc, a));
                assert_eq!(by_mul, 1);
            }
        }
    }

    #[test]
    fn subtraction_inverts_addition() {
        for f in small_fields() {
            let q = f.q() as Elem;
            for a in 0..q {
                for b in 0..q {
                    assert_eq!(f.add(f.sub(a, b), b), a);
                }
            }
        }
    }

    #[test]
    fn prime_power_detection() {
        assert_eq!(prime_power(256), Some((2, 8)));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(7), Some((7, 1)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }
}

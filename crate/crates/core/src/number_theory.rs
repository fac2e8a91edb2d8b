//! Arithmetic in `Z(D)` for odd `D`, held in centered form, together with the
//! two index maps the fast transforms are built on:
//!
//! * the balanced radix map `Z(d)^n -> Z(d^n)`, a bijection of sets that does
//!   not respect addition or multiplication, and
//! * the Chinese-remainder map `Z(d_0) x ... x Z(d_{n-1}) -> Z(D)` for pairwise
//!   coprime factors, which is a ring isomorphism.

use std::f64::consts::TAU;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest dimension any plan or table will be built for.
pub const MAX_DIM: usize = 1 << 24;

/// `x mod m` in `[0, m)`.
#[inline]
pub fn modulo(x: i64, m: i64) -> i64 {
    x.rem_euclid(m)
}

#[inline]
pub(crate) fn mul_mod(a: i64, b: i64, m: i64) -> i64 {
    ((a as i128 * b as i128).rem_euclid(m as i128)) as i64
}

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a as i64
}

fn check_odd(modulus: i64) -> Result<()> {
    if modulus < 1 || modulus % 2 == 0 {
        return Err(Error::InvalidModulus(modulus));
    }
    Ok(())
}

/// An element of `Z(D)` stored as its representative in `[-(D-1)/2, (D-1)/2]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CenteredResidue {
    value: i64,
    modulus: i64,
}

impl CenteredResidue {
    pub fn new(x: i64, modulus: i64) -> Result<Self> {
        check_odd(modulus)?;
        let half = (modulus - 1) / 2;
        let mut value = modulo(x, modulus);
        if value > half {
            value -= modulus;
        }
        Ok(CenteredResidue { value, modulus })
    }

    /// Residue whose storage offset (`value + (D-1)/2`) is `offset`.
    pub fn from_offset(offset: usize, modulus: i64) -> Result<Self> {
        check_odd(modulus)?;
        if offset as i64 >= modulus {
            return Err(Error::InvalidArgument(format!(
                "offset {offset} out of range for Z({modulus})"
            )));
        }
        Ok(CenteredResidue { value: offset as i64 - (modulus - 1) / 2, modulus })
    }

    #[inline]
    pub fn value(&self) -> i64 {
        self.value
    }

    #[inline]
    pub fn modulus(&self) -> i64 {
        self.modulus
    }

    /// Position of this residue in a length-`D` array ordered by centered value.
    #[inline]
    pub fn offset(&self) -> usize {
        (self.value + (self.modulus - 1) / 2) as usize
    }

    fn same_ring(&self, other: &Self) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::mismatch(self.modulus as usize, other.modulus as usize));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        CenteredResidue::new(self.value + other.value, self.modulus)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        CenteredResidue::new(mul_mod(self.value, other.value, self.modulus), self.modulus)
    }

    pub fn neg(&self) -> Self {
        CenteredResidue { value: -self.value, modulus: self.modulus }
    }

    /// Every element of `Z(D)` in ascending centered order.
    pub fn all(modulus: i64) -> Result<impl Iterator<Item = CenteredResidue>> {
        check_odd(modulus)?;
        let half = (modulus - 1) / 2;
        Ok((-half..=half).map(move |value| CenteredResidue { value, modulus }))
    }
}

impl fmt::Display for CenteredResidue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

pub fn centered_reduce(x: i64, modulus: i64) -> Result<CenteredResidue> {
    CenteredResidue::new(x, modulus)
}

/// Inverse of `x` modulo `m`, returned in `[0, m)`.
pub fn mod_inverse(x: i64, m: i64) -> Result<i64> {
    if m < 1 {
        return Err(Error::InvalidArgument(format!("modulus {m} must be positive")));
    }
    let (mut old_r, mut r) = (modulo(x, m) as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 && m != 1 {
        return Err(Error::NoInverse { value: x, modulus: m });
    }
    Ok(old_s.rem_euclid(m as i128) as i64)
}

/// The inverse of 2 in `Z(D)`, `(D+1)/2`.
pub fn half_inverse(modulus: i64) -> Result<i64> {
    check_odd(modulus)?;
    Ok((modulus + 1) / 2)
}

/// `d^n`, or a capacity error when it exceeds [`MAX_DIM`].
pub fn checked_power(d: i64, n: u32) -> Result<i64> {
    let dim = (d as i128).checked_pow(n).unwrap_or(i128::MAX);
    if dim > MAX_DIM as i128 {
        return Err(Error::Capacity { requested: dim as u128, limit: MAX_DIM });
    }
    Ok(dim as i64)
}

/// Balanced base-`d` digits `(j_0, ..., j_{n-1})` of an element of `Z(d^n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RadixDigits {
    base: i64,
    digits: Vec<i64>,
}

impl RadixDigits {
    pub fn new(base: i64, digits: Vec<i64>) -> Result<Self> {
        if base < 3 {
            return Err(Error::InvalidModulus(base));
        }
        check_odd(base)?;
        if digits.is_empty() {
            return Err(Error::InvalidArgument("at least one digit is required".into()));
        }
        let half = (base - 1) / 2;
        if let Some(&digit) = digits.iter().find(|j| j.abs() > half) {
            return Err(Error::InvalidDigit { digit, base });
        }
        Ok(RadixDigits { base, digits })
    }

    pub fn base(&self) -> i64 {
        self.base
    }

    pub fn digits(&self) -> &[i64] {
        &self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    /// Componentwise sum in `Z(d)^n` (no carries).
    pub fn componentwise_add(&self, other: &Self) -> Result<Self> {
        if self.base != other.base || self.len() != other.len() {
            return Err(Error::mismatch(self.len(), other.len()));
        }
        let digits = self
            .digits
            .iter()
            .zip(&other.digits)
            .map(|(a, b)| CenteredResidue::new(a + b, self.base).map(|r| r.value()))
            .collect::<Result<_>>()?;
        Ok(RadixDigits { base: self.base, digits })
    }
}

/// Repeated division by `d` with the remainder forced into the centered period.
pub fn radix_encode(j: CenteredResidue, d: i64, n: u32) -> Result<RadixDigits> {
    if d < 3 {
        return Err(Error::InvalidModulus(d));
    }
    check_odd(d)?;
    let dim = checked_power(d, n)?;
    if j.modulus() != dim {
        return Err(Error::mismatch(dim as usize, j.modulus() as usize));
    }
    let mut rest = j.value();
    let mut digits = Vec::with_capacity(n as usize);
    for _ in 0..n {
        let digit = CenteredResidue::new(rest, d)?.value();
        digits.push(digit);
        rest = (rest - digit) / d;
    }
    debug_assert_eq!(rest, 0);
    Ok(RadixDigits { base: d, digits })
}

pub fn radix_decode(digits: &RadixDigits) -> Result<CenteredResidue> {
    let d = digits.base;
    let dim = checked_power(d, digits.len() as u32)?;
    let half = (d - 1) / 2;
    let mut value = 0i64;
    for &j in digits.digits.iter().rev() {
        if j.abs() > half {
            return Err(Error::InvalidDigit { digit: j, base: d });
        }
        value = value * d + j;
    }
    CenteredResidue::new(value, dim)
}

/// Pairwise coprime odd factors of `D` with the constants of the
/// Chinese-remainder decomposition:
///
/// * `a_v = D / d_v`
/// * `b_v` the inverse of `a_v` modulo `d_v`, in `[0, d_v)`
/// * `c_v = a_v b_v mod D`, in `[0, D)`; the orthogonal idempotents of `Z(D)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrtBasis {
    factors: Vec<i64>,
    dim: i64,
    a: Vec<i64>,
    b: Vec<i64>,
    c: Vec<i64>,
}

impl CrtBasis {
    pub fn new(factors: &[i64]) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidArgument("at least one factor is required".into()));
        }
        for &f in factors {
            if f < 3 || f % 2 == 0 {
                return Err(Error::InvalidModulus(f));
            }
        }
        for (i, &x) in factors.iter().enumerate() {
            for &y in &factors[i + 1..] {
                if gcd(x, y) != 1 {
                    return Err(Error::NotCoprime { first: x, second: y });
                }
            }
        }
        let dim = factors
            .iter()
            .try_fold(1i128, |acc, &f| acc.checked_mul(f as i128))
            .filter(|&d| d <= MAX_DIM as i128)
            .ok_or(Error::Capacity {
                requested: factors.iter().map(|&f| f as u128).product(),
                limit: MAX_DIM,
            })? as i64;

        let a: Vec<i64> = factors.iter().map(|&f| dim / f).collect();
        let b = a
            .iter()
            .zip(factors)
            .map(|(&a, &f)| mod_inverse(a, f))
            .collect::<Result<Vec<_>>>()?;
        let c = a.iter().zip(&b).map(|(&a, &b)| mul_mod(a, b, dim)).collect();
        let basis = CrtBasis { factors: factors.to_vec(), dim, a, b, c };
        basis.check_orthogonality()?;
        Ok(basis)
    }

    /// Checks `a_v a_u = a_v^2 δ`, `c_v c_u = c_v δ` and `a_v c_u = a_v δ`, all mod `D`.
    fn check_orthogonality(&self) -> Result<()> {
        let dim = self.dim;
        for v in 0..self.len() {
            for u in 0..self.len() {
                let delta = i64::from(u == v);
                let ok = mul_mod(self.a[v], self.a[u], dim)
                    == mul_mod(mul_mod(self.a[v], self.a[v], dim), delta, dim)
                    && mul_mod(self.c[v], self.c[u], dim) == mul_mod(self.c[v], delta, dim)
                    && mul_mod(self.a[v], self.c[u], dim) == mul_mod(self.a[v], delta, dim);
                if !ok {
                    return Err(Error::InvalidArgument(format!(
                        "idempotent identities fail for factors {:?} at ({v}, {u})",
                        self.factors
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn factors(&self) -> &[i64] {
        &self.factors
    }

    pub fn dim(&self) -> i64 {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn a(&self) -> &[i64] {
        &self.a
    }

    pub fn b(&self) -> &[i64] {
        &self.b
    }

    pub fn c(&self) -> &[i64] {
        &self.c
    }

    fn check_modulus(&self, j: &CenteredResidue) -> Result<()> {
        if j.modulus() != self.dim {
            return Err(Error::mismatch(self.dim as usize, j.modulus() as usize));
        }
        Ok(())
    }

    /// `j_v = J mod d_v`.
    pub fn encode(&self, j: CenteredResidue) -> Result<Vec<CenteredResidue>> {
        self.check_modulus(&j)?;
        self.factors.iter().map(|&f| CenteredResidue::new(j.value(), f)).collect()
    }

    /// `J = Σ j_v c_v mod D`. Residues may be given in any representative.
    pub fn decode(&self, residues: &[i64]) -> Result<CenteredResidue> {
        self.combine(residues, &self.c)
    }

    /// `ĵ_v = J b_v mod d_v`.
    pub fn encode_hat(&self, j: CenteredResidue) -> Result<Vec<CenteredResidue>> {
        self.check_modulus(&j)?;
        self.factors
            .iter()
            .zip(&self.b)
            .map(|(&f, &b)| CenteredResidue::new(mul_mod(j.value(), b, f), f))
            .collect()
    }

    /// `J = Σ ĵ_v a_v mod D`.
    pub fn decode_hat(&self, residues: &[i64]) -> Result<CenteredResidue> {
        self.combine(residues, &self.a)
    }

    fn combine(&self, residues: &[i64], weights: &[i64]) -> Result<CenteredResidue> {
        if residues.len() != self.len() {
            return Err(Error::mismatch(self.len(), residues.len()));
        }
        let total = residues
            .iter()
            .zip(weights)
            .fold(0i64, |acc, (&j, &w)| modulo(acc + mul_mod(j, w, self.dim), self.dim));
        CenteredResidue::new(total, self.dim)
    }
}

pub fn crt_basis_new(factors: &[i64]) -> Result<CrtBasis> {
    CrtBasis::new(factors)
}

pub fn crt_encode(j: CenteredResidue, basis: &CrtBasis) -> Result<Vec<CenteredResidue>> {
    basis.encode(j)
}

pub fn crt_decode(residues: &[i64], basis: &CrtBasis) -> Result<CenteredResidue> {
    basis.decode(residues)
}

pub fn crt_encode_hat(j: CenteredResidue, basis: &CrtBasis) -> Result<Vec<CenteredResidue>> {
    basis.encode_hat(j)
}

/// `ω_r(s) = exp(2πi s / r)`.
pub fn omega(r: i64, s: i64) -> Result<Complex64> {
    if r < 1 {
        return Err(Error::InvalidArgument(format!("root order {r} must be positive")));
    }
    Ok(Complex64::from_polar(1.0, TAU * modulo(s, r) as f64 / r as f64))
}

/// All `r`-th roots of unity `ω_r(s)`, `s = 0..r`, optionally scaled.
#[derive(Debug, Clone, PartialEq)]
pub struct RootTable {
    order: i64,
    roots: Vec<Complex64>,
}

impl RootTable {
    pub fn new(order: i64) -> Result<Self> {
        Self::scaled(order, 1.0)
    }

    pub fn scaled(order: i64, scale: f64) -> Result<Self> {
        if order < 1 {
            return Err(Error::InvalidArgument(format!("root order {order} must be positive")));
        }
        if order as usize > MAX_DIM {
            return Err(Error::Capacity { requested: order as u128, limit: MAX_DIM });
        }
        let roots = (0..order)
            .map(|s| Complex64::from_polar(scale, TAU * s as f64 / order as f64))
            .collect();
        Ok(RootTable { order, roots })
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    /// Root for exponent `s`, reduced modulo the table order.
    #[inline]
    pub fn get(&self, s: i64) -> Complex64 {
        self.roots[modulo(s, self.order) as usize]
    }

    /// Root at an exponent already reduced into `[0, order)`.
    #[inline]
    pub fn at(&self, index: usize) -> Complex64 {
        self.roots[index]
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.roots
    }

    #[cfg(test)]
    pub(crate) fn conjugate(&mut self) {
        self.roots.iter_mut().for_each(|c| *c = c.conj());
    }
}

/// `ω_D(JK)` expanded over balanced radix digits, one factor per power of `d`:
/// `ω_{d^n}(j_0k_0) ω_{d^{n-1}}(j_1k_0 + j_0k_1) ... ω_d(j_0k_{n-1} + ... + j_{n-1}k_0)`.
pub fn radix_kernel_product(j: CenteredResidue, k: CenteredResidue, d: i64, n: u32) -> Result<Complex64> {
    let jd = radix_encode(j, d, n)?;
    let kd = radix_encode(k, d, n)?;
    let n = n as usize;
    let mut product = Complex64::new(1.0, 0.0);
    for m in 0..n {
        let exponent: i64 = (0..=m).map(|r| jd.digits[r] * kd.digits[m - r]).sum();
        product *= omega(checked_power(d, (n - m) as u32)?, exponent)?;
    }
    Ok(product)
}

/// `ω_D(JK)` as the product `Π ω_{d_v}(j_v b_v k_v)` over the coprime factors.
pub fn crt_kernel_product(j: CenteredResidue, k: CenteredResidue, basis: &CrtBasis) -> Result<Complex64> {
    let js = basis.encode(j)?;
    let ks = basis.encode(k)?;
    let mut product = Complex64::new(1.0, 0.0);
    for (v, &f) in basis.factors().iter().enumerate() {
        let exponent = mul_mod(mul_mod(js[v].value(), basis.b[v], f), ks[v].value(), f);
        product *= omega(f, exponent)?;
    }
    Ok(product)
}

/// Splits an odd `D` into its prime-power factors, which are pairwise coprime.
pub fn coprime_factors(dim: i64) -> Result<Vec<i64>> {
    check_odd(dim)?;
    let mut rest = dim;
    let mut factors = Vec::new();
    let mut p = 3;
    while p * p <= rest {
        if rest % p == 0 {
            let mut power = 1;
            while rest % p == 0 {
                rest /= p;
                power *= p;
            }
            factors.push(power);
        }
        p += 2;
    }
    if rest > 1 {
        factors.push(rest);
    }
    Ok(factors)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(x: i64, m: i64) -> CenteredResidue {
        CenteredResidue::new(x, m).unwrap()
    }

    #[test]
    fn centered_reduce_examples() {
        assert_eq!(centered_reduce(8, 15).unwrap().value(), -7);
        assert_eq!(centered_reduce(4 + 4, 9).unwrap().value(), -1);
        assert_eq!(centered_reduce(11, 15).unwrap().value(), -4);
        assert_eq!(centered_reduce(-8, 15).unwrap().value(), 7);
        assert_eq!(centered_reduce(5, 1).unwrap().value(), 0);
    }

    #[test]
    fn centered_reduce_rejects_bad_modulus() {
        assert!(matches!(centered_reduce(3, 10), Err(Error::InvalidModulus(10))));
        assert!(matches!(centered_reduce(3, 0), Err(Error::InvalidModulus(0))));
        assert!(matches!(centered_reduce(3, -5), Err(Error::InvalidModulus(-5))));
    }

    #[test]
    fn residues_from_different_rings_differ() {
        assert_ne!(r(1, 3), r(1, 5));
        assert_eq!(r(16, 15), r(1, 15));
        assert!(r(1, 3).add(&r(1, 5)).is_err());
    }

    #[test]
    fn offsets_run_in_centered_order() {
        let all: Vec<_> = CenteredResidue::all(5).unwrap().map(|x| (x.value(), x.offset())).collect();
        assert_eq!(all, vec![(-2, 0), (-1, 1), (0, 2), (1, 3), (2, 4)]);
        assert_eq!(CenteredResidue::from_offset(4, 5).unwrap().value(), 2);
        assert!(CenteredResidue::from_offset(5, 5).is_err());
    }

    #[test]
    fn mod_inverse_examples() {
        assert_eq!(mod_inverse(5, 3).unwrap(), 2);
        assert_eq!(mod_inverse(1, 17).unwrap(), 1);
        assert_eq!(mod_inverse(2, 15).unwrap(), 8);
        assert_eq!(mod_inverse(-1, 7).unwrap(), 6);
        assert!(matches!(mod_inverse(6, 15), Err(Error::NoInverse { value: 6, modulus: 15 })));
    }

    #[test]
    fn half_inverse_examples() {
        assert_eq!(half_inverse(15).unwrap(), 8);
        assert_eq!(half_inverse(9).unwrap(), 5);
        assert_eq!(half_inverse(483).unwrap(), 242);
        assert_eq!(2 * 242 % 483, 1);
        assert!(half_inverse(10).is_err());
    }

    #[test]
    fn radix_encode_examples() {
        assert_eq!(radix_encode(r(4, 9), 3, 2).unwrap().digits(), &[1, 1]);
        assert_eq!(radix_encode(r(0, 125), 5, 3).unwrap().digits(), &[0, 0, 0]);
        assert_eq!(radix_encode(r(2, 9), 3, 2).unwrap().digits(), &[-1, 1]);
        assert!(matches!(radix_encode(r(2, 27), 3, 2), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn radix_decode_examples() {
        let dec = |d, v: Vec<i64>| radix_decode(&RadixDigits::new(d, v).unwrap()).unwrap().value();
        assert_eq!(dec(3, vec![1, 1]), 4);
        assert_eq!(dec(3, vec![-1, -1]), -4);
        assert_eq!(dec(5, vec![0, 0, 1]), 25);
        assert!(matches!(RadixDigits::new(3, vec![2, 0]), Err(Error::InvalidDigit { digit: 2, base: 3 })));
    }

    #[test]
    fn radix_decode_matches_enumeration() {
        // Brute force: the unique digit tuple whose plain weighted sum equals J.
        for target in CenteredResidue::all(125).unwrap() {
            let mut found = Vec::new();
            for j0 in -2..=2i64 {
                for j1 in -2..=2i64 {
                    for j2 in -2..=2i64 {
                        if j0 + 5 * j1 + 25 * j2 == target.value() {
                            found.push(vec![j0, j1, j2]);
                        }
                    }
                }
            }
            assert_eq!(found.len(), 1);
            assert_eq!(radix_encode(target, 5, 3).unwrap().digits(), found[0].as_slice());
        }
    }

    #[test]
    fn radix_map_is_not_additive() {
        let one_one = RadixDigits::new(3, vec![1, 1]).unwrap();
        let sum = one_one.componentwise_add(&one_one).unwrap();
        assert_eq!(sum.digits(), &[-1, -1]);
        assert_eq!(radix_decode(&sum).unwrap().value(), -4);
        assert_eq!(r(4, 9).add(&r(4, 9)).unwrap().value(), -1);
    }

    #[test]
    fn crt_basis_examples() {
        let b = CrtBasis::new(&[3, 5]).unwrap();
        assert_eq!((b.dim(), b.a(), b.b(), b.c()), (15, &[5, 3][..], &[2, 2][..], &[10, 6][..]));

        let b = CrtBasis::new(&[3]).unwrap();
        assert_eq!((b.dim(), b.a(), b.b(), b.c()), (3, &[1][..], &[1][..], &[1][..]));

        let b = CrtBasis::new(&[3, 5, 7]).unwrap();
        assert_eq!(b.dim(), 105);
        assert_eq!(b.a(), &[35, 21, 15]);
        assert_eq!(b.b(), &[2, 1, 1]);
        assert_eq!(b.c(), &[70, 21, 15]);
    }

    #[test]
    fn crt_basis_errors() {
        assert!(matches!(CrtBasis::new(&[3, 9]), Err(Error::NotCoprime { first: 3, second: 9 })));
        assert!(matches!(CrtBasis::new(&[3, 6]), Err(Error::InvalidModulus(6))));
        assert!(matches!(CrtBasis::new(&[1, 5]), Err(Error::InvalidModulus(1))));
        assert!(CrtBasis::new(&[]).is_err());
    }

    #[test]
    fn crt_maps_worked_example() {
        let b = CrtBasis::new(&[3, 5]).unwrap();
        let j = r(11, 15);
        assert_eq!(j.value(), -4);
        let plain: Vec<_> = b.encode(j).unwrap().iter().map(|x| modulo(x.value(), x.modulus())).collect();
        assert_eq!(plain, vec![2, 1]);
        let hat = b.encode_hat(j).unwrap();
        assert_eq!(modulo(hat[0].value() - 4, 3), 0);
        assert_eq!(modulo(hat[1].value() - 2, 5), 0);
        assert_eq!(b.decode(&[2, 1]).unwrap().value(), -4);
        assert_eq!(b.decode_hat(&[4, 2]).unwrap().value(), -4);
        assert_eq!(b.decode(&[0, 0]).unwrap().value(), 0);
        let b3 = CrtBasis::new(&[3, 5, 7]).unwrap();
        assert_eq!(b3.decode(&[1, 1, 1]).unwrap().value(), 1);
        assert!(b3.decode(&[1, 1]).is_err());
    }

    #[test]
    fn omega_examples() {
        let i = omega(4, 1).unwrap();
        assert!((i - Complex64::new(0.0, 1.0)).norm() < 1e-15);
        assert_eq!(omega(7, 0).unwrap(), Complex64::new(1.0, 0.0));
        assert!((omega(9, 3).unwrap() - omega(3, 1).unwrap()).norm() < 1e-15);
        assert!((omega(5, 2).unwrap() - omega(5, 7).unwrap()).norm() < 1e-15);
        assert!(omega(0, 1).is_err());
    }

    #[test]
    fn coprime_factor_helper() {
        assert_eq!(coprime_factors(315).unwrap(), vec![9, 5, 7]);
        assert_eq!(coprime_factors(483).unwrap(), vec![3, 7, 23]);
        assert_eq!(coprime_factors(1).unwrap(), Vec::<i64>::new());
        assert!(coprime_factors(12).is_err());
    }

    #[test]
    fn capacity_limit() {
        assert!(matches!(checked_power(101, 5), Err(Error::Capacity { .. })));
        assert_eq!(checked_power(3, 4).unwrap(), 81);
    }
}

//! Arithmetic in GF(p^m), p odd.
//!
//! Elements are stored as integer codes `c0 + c1 p + ... + c_{m-1} p^{m-1}`
//! where `c0 + c1 X + ...` is the reduced polynomial representative. Code
//! order is the lexicographic order of coefficient vectors read from the top
//! degree down.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::arith;
use crate::error::{Error, Result};

pub type Fe = u64;

/// Fields up to this size get exp/log tables.
const LOG_TABLE_MAX: u64 = 1 << 20;
/// Fields up to this size get full addition and multiplication tables.
const FULL_TABLE_MAX: u64 = 256;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FieldParams {
    pub p: u64,
    pub m: u32,
    pub q: u64,
    /// Low-to-high coefficients, monic, length m + 1.
    pub modulus: Vec<u64>,
}

impl FieldParams {
    pub fn modulus_string(&self) -> String {
        let c: Vec<String> = self.modulus.iter().map(|c| c.to_string()).collect();
        format!("GF({}^{}) mod [{}]", self.p, self.m, c.join(","))
    }
}

enum Tables {
    None,
    Log { exp: Vec<u64>, log: Vec<u32> },
    Full { add: Vec<u32>, mul: Vec<u32>, exp: Vec<u64>, log: Vec<u32> },
}

struct Inner {
    params: FieldParams,
    gen: Fe,
    qm1_factors: Vec<(u64, u32)>,
    tabs: Tables,
}

/// A finite field; cheap to clone and shareable across threads.
#[derive(Clone)]
pub struct Field(Arc<Inner>);

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.params.modulus_string())
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.0.params == other.0.params
    }
}
impl Eq for Field {}

// ---- polynomials over GF(p), low-to-high, trimmed ----

fn trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn poly_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut r: Vec<u64> = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(&mut r);
    r
}

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut r = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            r[i + j] = ((r[i + j] as u128 + x as u128 * y as u128) % p as u128) as u64;
        }
    }
    trim(&mut r);
    r
}

fn poly_rem(a: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    trim(&mut r);
    let df = f.len() - 1;
    let lead_inv = arith::mod_pow(f[df], p - 2, p);
    while r.len() > df {
        let k = r.len() - 1 - df;
        let c = ((r[r.len() - 1] as u128 * lead_inv as u128) % p as u128) as u64;
        for (i, &fi) in f.iter().enumerate() {
            let t = ((c as u128 * fi as u128) % p as u128) as u64;
            r[k + i] = (r[k + i] + p - t) % p;
        }
        trim(&mut r);
    }
    r
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = poly_rem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

fn poly_powmod(base: &[u64], mut e: u64, f: &[u64], p: u64) -> Vec<u64> {
    let mut r = vec![1u64];
    let mut b = poly_rem(base, f, p);
    while e > 0 {
        if e & 1 == 1 {
            r = poly_rem(&poly_mul(&r, &b, p), f, p);
        }
        b = poly_rem(&poly_mul(&b, &b, p), f, p);
        e >>= 1;
    }
    r
}

/// Ben-Or style test: f has no irreducible factor of degree k <= deg/2.
fn is_irreducible(f: &[u64], p: u64) -> bool {
    let m = f.len() - 1;
    if m == 1 {
        return true;
    }
    let x = vec![0, 1];
    let mut xp = x.clone();
    for _ in 1..=m / 2 {
        xp = poly_powmod(&xp, p, f, p);
        let g = poly_gcd(f, &poly_sub(&xp, &x, p), p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

impl Field {
    /// GF(p^m) with the given or the lexicographically smallest monic irreducible modulus.
    pub fn new(p: u64, m: u32, modulus: Option<Vec<u64>>) -> Result<Field> {
        if p == 2 {
            return Err(Error::EvenCharacteristic);
        }
        if !arith::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if m == 0 {
            return Err(Error::BadModulus("degree must be positive".into()));
        }
        let q = p
            .checked_pow(m)
            .ok_or_else(|| Error::FieldTooLarge(format!("{p}^{m}")))?;
        let modulus = match modulus {
            Some(f) => {
                if f.len() != m as usize + 1 || f[m as usize] != 1 || f.iter().any(|&c| c >= p) {
                    return Err(Error::BadModulus(format!("{f:?}")));
                }
                if !is_irreducible(&f, p) {
                    return Err(Error::Reducible(p));
                }
                f
            }
            None => smallest_irreducible(p, m),
        };
        let params = FieldParams { p, m, q, modulus };
        let qm1_factors = arith::factor(q - 1)?;
        let mut inner = Inner { params, gen: 0, qm1_factors, tabs: Tables::None };
        let bare = Field(Arc::new(Inner {
            params: inner.params.clone(),
            gen: 0,
            qm1_factors: inner.qm1_factors.clone(),
            tabs: Tables::None,
        }));
        inner.gen = bare.find_generator();
        if q <= LOG_TABLE_MAX {
            let mut exp = vec![0u64; 2 * (q as usize - 1)];
            let mut log = vec![0u32; q as usize];
            let mut x = 1u64;
            for i in 0..(q as usize - 1) {
                exp[i] = x;
                exp[i + q as usize - 1] = x;
                log[x as usize] = i as u32;
                x = bare.mul_poly(x, inner.gen);
            }
            if q <= FULL_TABLE_MAX && m > 1 {
                let qs = q as usize;
                let mut add = vec![0u32; qs * qs];
                let mut mul = vec![0u32; qs * qs];
                for a in 0..qs {
                    for b in 0..qs {
                        add[a * qs + b] = bare.add_digits(a as u64, b as u64) as u32;
                        mul[a * qs + b] = if a == 0 || b == 0 {
                            0
                        } else {
                            exp[log[a] as usize + log[b] as usize] as u32
                        };
                    }
                }
                inner.tabs = Tables::Full { add, mul, exp, log };
            } else {
                inner.tabs = Tables::Log { exp, log };
            }
        }
        Ok(Field(Arc::new(inner)))
    }

    /// Shorthand for the default-modulus field of order q.
    pub fn of_order(q: u64) -> Result<Field> {
        let (p, m) = prime_power(q).ok_or(Error::NotPrime(q))?;
        Field::new(p, m, None)
    }

    pub fn params(&self) -> &FieldParams {
        &self.0.params
    }
    pub fn p(&self) -> u64 {
        self.0.params.p
    }
    pub fn m(&self) -> u32 {
        self.0.params.m
    }
    pub fn q(&self) -> u64 {
        self.0.params.q
    }
    pub fn is_prime_field(&self) -> bool {
        self.0.params.m == 1
    }

    fn digits(&self, mut x: Fe) -> Vec<u64> {
        let p = self.p();
        (0..self.m())
            .map(|_| {
                let d = x % p;
                x /= p;
                d
            })
            .collect()
    }

    fn undigits(&self, d: &[u64]) -> Fe {
        d.iter().rev().fold(0u64, |acc, &c| acc * self.p() + c)
    }

    pub fn coeffs(&self, x: Fe) -> Vec<u64> {
        self.digits(x)
    }

    pub fn from_coeffs(&self, c: &[u64]) -> Result<Fe> {
        if c.len() > self.m() as usize || c.iter().any(|&d| d >= self.p()) {
            return Err(Error::Parse(format!("bad coefficients {c:?}")));
        }
        Ok(self.undigits(c))
    }

    fn add_digits(&self, a: Fe, b: Fe) -> Fe {
        let p = self.p();
        let (mut a, mut b) = (a, b);
        let mut r = 0u64;
        let mut pk = 1u64;
        for _ in 0..self.m() {
            r += ((a % p + b % p) % p) * pk;
            a /= p;
            b /= p;
            pk = pk.wrapping_mul(p);
        }
        r
    }

    fn mul_poly(&self, a: Fe, b: Fe) -> Fe {
        let p = self.p();
        let prod = poly_mul(&self.digits(a), &self.digits(b), p);
        let r = poly_rem(&prod, &self.0.params.modulus, p);
        self.undigits(&r)
    }

    pub fn zero(&self) -> Fe {
        0
    }
    pub fn one(&self) -> Fe {
        1
    }

    /// Image of an integer under Z -> GF(p) -> GF(q).
    pub fn from_int(&self, k: i64) -> Fe {
        k.rem_euclid(self.p() as i64) as u64
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        match &self.0.tabs {
            Tables::Full { add, .. } => add[(a * self.q() + b) as usize] as u64,
            _ if self.is_prime_field() => {
                let s = a + b;
                let p = self.p();
                if s >= p {
                    s - p
                } else {
                    s
                }
            }
            _ => self.add_digits(a, b),
        }
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        if self.is_prime_field() {
            if a == 0 {
                0
            } else {
                self.p() - a
            }
        } else {
            let p = self.p();
            let d: Vec<u64> = self.digits(a).into_iter().map(|c| (p - c) % p).collect();
            self.undigits(&d)
        }
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        match &self.0.tabs {
            Tables::Full { mul, .. } => mul[(a * self.q() + b) as usize] as u64,
            _ if self.is_prime_field() => ((a as u128 * b as u128) % self.p() as u128) as u64,
            Tables::Log { exp, log } => {
                if a == 0 || b == 0 {
                    0
                } else {
                    exp[log[a as usize] as usize + log[b as usize] as usize]
                }
            }
            Tables::None => self.mul_poly(a, b),
        }
    }

    pub fn pow(&self, a: Fe, mut e: u64) -> Fe {
        if let Some((exp, log)) = self.log_tables() {
            if a == 0 {
                return if e == 0 { 1 } else { 0 };
            }
            let qm1 = self.q() - 1;
            let i = ((log[a as usize] as u128 * (e % qm1) as u128) % qm1 as u128) as usize;
            return exp[i];
        }
        let mut r = 1;
        let mut b = a;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        r
    }

    /// a^e for a possibly negative exponent; a must be nonzero when e < 0.
    pub fn pow_i(&self, a: Fe, e: i64) -> Fe {
        let qm1 = (self.q() - 1) as i128;
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        self.pow(a, (e as i128).rem_euclid(qm1) as u64)
    }

    pub fn inv(&self, a: Fe) -> Result<Fe> {
        if a == 0 {
            return Err(Error::ZeroElement);
        }
        Ok(self.pow(a, self.q() - 2))
    }

    fn log_tables(&self) -> Option<(&[u64], &[u32])> {
        match &self.0.tabs {
            Tables::Log { exp, log } | Tables::Full { exp, log, .. } => Some((exp, log)),
            Tables::None => None,
        }
    }

    fn find_generator(&self) -> Fe {
        let q = self.q();
        (1..q)
            .find(|&x| {
                self.0
                    .qm1_factors
                    .iter()
                    .all(|&(r, _)| self.pow(x, (q - 1) / r) != 1)
            })
            .expect("a finite field has a primitive element")
    }

    /// First element in code order with multiplicative order q - 1.
    pub fn generator(&self) -> Fe {
        self.0.gen
    }

    /// Multiplicative order by descending through the prime divisors of q - 1.
    pub fn elem_order(&self, x: Fe) -> Result<u64> {
        if x == 0 {
            return Err(Error::ZeroElement);
        }
        let mut k = self.q() - 1;
        for &(r, e) in &self.0.qm1_factors {
            for _ in 0..e {
                if self.pow(x, k / r) == 1 {
                    k /= r;
                } else {
                    break;
                }
            }
        }
        Ok(k)
    }

    /// Discrete logarithm to the base `generator()`.
    pub fn dlog(&self, x: Fe) -> Result<u64> {
        if x == 0 {
            return Err(Error::ZeroElement);
        }
        if let Some((_, log)) = self.log_tables() {
            return Ok(log[x as usize] as u64);
        }
        // baby-step giant-step
        let n = self.q() - 1;
        let s = (n as f64).sqrt().ceil() as u64 + 1;
        let mut baby = HashMap::new();
        let mut cur = 1;
        for j in 0..s {
            baby.entry(cur).or_insert(j);
            cur = self.mul(cur, self.generator());
        }
        let factor = self.pow(self.inv(self.generator())?, s);
        let mut y = x;
        for i in 0..=s {
            if let Some(&j) = baby.get(&y) {
                return Ok((i * s + j) % n);
            }
            y = self.mul(y, factor);
        }
        Err(Error::InternalInconsistency("discrete log not found".into()))
    }

    pub fn is_square(&self, x: Fe) -> bool {
        x == 0 || self.pow(x, (self.q() - 1) / 2) == 1
    }

    pub fn sqrt(&self, x: Fe) -> Option<Fe> {
        (0..self.q()).find(|&y| self.mul(y, y) == x)
    }

    /// x^(p^j): the j-th power of the absolute Frobenius.
    pub fn frob_p(&self, x: Fe, j: u32) -> Fe {
        let mut y = x;
        for _ in 0..(j % self.m()) {
            y = self.pow(y, self.p());
        }
        y
    }

    /// x^(q0^j) where q0 = p^m0 is the order of a subfield.
    pub fn frobenius(&self, x: Fe, j: u32, m0: u32) -> Fe {
        self.frob_p(x, (j * m0) % self.m())
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        0..self.q()
    }

    pub fn fmt_elem(&self, x: Fe) -> String {
        let c: Vec<String> = self.digits(x).iter().map(|d| d.to_string()).collect();
        format!("{}^{}:{}", self.p(), self.m(), c.join(","))
    }

    pub fn elem(&self, x: Fe) -> FieldElem {
        FieldElem { field: self.clone(), code: x }
    }

    /// Parse `p^m:c0,c1,...` or a bare integer (taken mod p).
    pub fn parse_elem(&self, s: &str) -> Result<Fe> {
        let s = s.trim();
        if let Some((head, tail)) = s.split_once(':') {
            let (p, m) = head
                .split_once('^')
                .ok_or_else(|| Error::Parse(format!("bad element {s}")))?;
            let p: u64 = p.trim().parse().map_err(|_| Error::Parse(s.into()))?;
            let m: u32 = m.trim().parse().map_err(|_| Error::Parse(s.into()))?;
            if p != self.p() || m != self.m() {
                return Err(Error::Parse(format!("element {s} is not in GF({}^{})", self.p(), self.m())));
            }
            let c: Vec<u64> = tail
                .split(',')
                .map(|t| t.trim().parse::<u64>().map_err(|_| Error::Parse(s.into())))
                .collect::<Result<_>>()?;
            return self.from_coeffs(&c);
        }
        let k: i64 = s.parse().map_err(|_| Error::Parse(format!("bad element {s}")))?;
        Ok(self.from_int(k))
    }

    /// GF(q^k) built over the prime field, with the embedding of this field.
    pub fn extension(&self, k: u32) -> Result<Extension> {
        let big = Field::new(self.p(), self.m() * k, None)?;
        Extension::new(self.clone(), big)
    }
}

/// p, m with q = p^m, when q is an odd or even prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let f = arith::factor(q).ok()?;
    if f.len() == 1 {
        Some((f[0].0, f[0].1))
    } else {
        None
    }
}

fn smallest_irreducible(p: u64, m: u32) -> Vec<u64> {
    if m == 1 {
        return vec![0, 1];
    }
    let count = p.pow(m);
    for code in 0..count {
        let mut f: Vec<u64> = Vec::with_capacity(m as usize + 1);
        let mut c = code;
        for _ in 0..m {
            f.push(c % p);
            c /= p;
        }
        f.push(1);
        if f[0] != 0 && is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// Sum 1 + a + ... + a^(b-1).
pub fn q_bracket(b: u64, a: u64) -> Result<u64> {
    let mut s: u64 = 0;
    let mut t: u64 = 1;
    for i in 0..b {
        s = s.checked_add(t).ok_or(Error::Overflow("q_bracket"))?;
        if i + 1 < b {
            t = t.checked_mul(a).ok_or(Error::Overflow("q_bracket"))?;
        }
    }
    Ok(s)
}

/// gcd(n, q - 1).
pub fn d_of(n: u64, q: u64) -> u64 {
    arith::gcd(n, q - 1)
}

/// An element bundled with its field, for display and serialization.
#[derive(Clone)]
pub struct FieldElem {
    pub field: Field,
    pub code: Fe,
}

impl FieldElem {
    pub fn coeffs(&self) -> Vec<u64> {
        self.field.coeffs(self.code)
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.field.fmt_elem(self.code))
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.field.fmt_elem(self.code))
    }
}

/// GF(q^k) over GF(q), both realized over the prime field.
#[derive(Clone, Debug)]
pub struct Extension {
    pub small: Field,
    pub big: Field,
    pub degree: u32,
    /// Image of the small field's polynomial variable.
    alpha: Fe,
    back: HashMap<Fe, Fe>,
}

impl Extension {
    pub fn new(small: Field, big: Field) -> Result<Extension> {
        if small.p() != big.p() || big.m() % small.m() != 0 {
            return Err(Error::BadModulus("not a subfield".into()));
        }
        let degree = big.m() / small.m();
        // roots of the small modulus lie in the subgroup of order q - 1
        let step = (big.q() - 1) / (small.q() - 1);
        let g = big.generator();
        let modulus = small.params().modulus.clone();
        let eval = |x: Fe| {
            modulus
                .iter()
                .rev()
                .fold(0u64, |acc, &c| big.add(big.mul(acc, x), big.from_int(c as i64)))
        };
        let alpha = if small.m() == 1 {
            0
        } else {
            (1..small.q())
                .map(|k| big.pow(g, k * step))
                .find(|&x| eval(x) == 0)
                .ok_or_else(|| Error::InternalInconsistency("no root of subfield modulus".into()))?
        };
        let mut ext = Extension { small, big, degree, alpha, back: HashMap::new() };
        let back: HashMap<Fe, Fe> = ext.small.elements().map(|x| (ext.embed(x), x)).collect();
        ext.back = back;
        Ok(ext)
    }

    pub fn embed(&self, x: Fe) -> Fe {
        if self.small.m() == 1 {
            return x;
        }
        let c = self.small.coeffs(x);
        c.iter().rev().fold(0u64, |acc, &ci| {
            self.big.add(self.big.mul(acc, self.alpha), self.big.from_int(ci as i64))
        })
    }

    /// Inverse of `embed` on the image of the small field.
    pub fn restrict(&self, y: Fe) -> Option<Fe> {
        self.back.get(&y).copied()
    }

    /// y^(q^j) with q the order of the small field.
    pub fn frobenius(&self, y: Fe, j: u32) -> Fe {
        self.big.frobenius(y, j, self.small.m())
    }

    /// Tr_{GF(q^k)/GF(q)}(y), as an element of the small field.
    pub fn trace(&self, y: Fe) -> Fe {
        let mut s = 0;
        for j in 0..self.degree {
            s = self.big.add(s, self.frobenius(y, j));
        }
        self.restrict(s).expect("trace lies in the base field")
    }

    /// Coordinates of y in the basis 1, b, b^2, ... over the small field.
    pub fn coords(&self, y: Fe, b: Fe) -> Result<Vec<Fe>> {
        let k = self.degree as usize;
        let ms = self.small.m() as usize;
        let big = &self.big;
        // prime-field basis alpha^l * b^i, solved by elimination over GF(p)
        let mut cols: Vec<Vec<u64>> = Vec::with_capacity(k * ms);
        let mut bi = 1;
        for _ in 0..k {
            let mut al = 1;
            for _ in 0..ms {
                cols.push(big.coeffs(big.mul(bi, al)));
                al = big.mul(al, if ms == 1 { 1 } else { self.alpha });
            }
            bi = big.mul(bi, b);
        }
        let x = solve_mod_p(&cols, &big.coeffs(y), big.p())
            .ok_or_else(|| Error::InternalInconsistency("not a basis".into()))?;
        Ok((0..k)
            .map(|i| self.small.from_coeffs(&x[i * ms..(i + 1) * ms]).expect("digits in range"))
            .collect())
    }
}

/// Solve sum_j x_j cols[j] = rhs over GF(p), cols square and invertible.
fn solve_mod_p(cols: &[Vec<u64>], rhs: &[u64], p: u64) -> Option<Vec<u64>> {
    let n = rhs.len();
    let mut a: Vec<Vec<u64>> = (0..n)
        .map(|i| {
            let mut row: Vec<u64> = cols.iter().map(|c| c[i]).collect();
            row.push(rhs[i]);
            row
        })
        .collect();
    for c in 0..n {
        let piv = (c..n).find(|&r| a[r][c] != 0)?;
        a.swap(c, piv);
        let inv = arith::mod_pow(a[c][c], p - 2, p);
        for v in a[c].iter_mut() {
            *v = *v * inv % p;
        }
        for r in 0..n {
            if r != c && a[r][c] != 0 {
                let f = a[r][c];
                for j in 0..=n {
                    a[r][j] = (a[r][j] + p * p - f * a[c][j] % p) % p;
                }
            }
        }
    }
    Some(a.iter().map(|row| row[n]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    // trial factorization by every monic polynomial of degree <= m/2
    fn brute_irreducible(f: &[u64], p: u64) -> bool {
        let m = f.len() - 1;
        for d in 1..=m / 2 {
            for code in 0..p.pow(d as u32) {
                let mut g: Vec<u64> = (0..d).map(|i| code / p.pow(i as u32) % p).collect();
                g.push(1);
                if poly_rem(f, &g, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn prime_field_modulus() {
        let f = Field::new(3, 1, None).unwrap();
        assert_eq!(f.params().modulus, vec![0, 1]);
        assert_eq!(f.q(), 3);
    }

    #[test]
    fn gf81_modulus_is_smallest_irreducible() {
        let f = Field::new(3, 4, None).unwrap();
        let mut expected = None;
        for code in 0..81u64 {
            let mut g: Vec<u64> = (0..4).map(|i| code / 3u64.pow(i) % 3).collect();
            g.push(1);
            if brute_irreducible(&g, 3) {
                expected = Some(g);
                break;
            }
        }
        assert_eq!(Some(f.params().modulus.clone()), expected);
    }

    #[test]
    fn rejects_bad_characteristic() {
        assert_eq!(Field::new(2, 1, None).unwrap_err(), Error::EvenCharacteristic);
        assert_eq!(Field::new(9, 1, None).unwrap_err(), Error::NotPrime(9));
        assert_eq!(Field::new(3, 2, Some(vec![2, 0, 1])).unwrap_err(), Error::Reducible(3));
    }

    #[test]
    fn irreducibility_matches_trial_division() {
        for (p, m) in [(3u64, 2u32), (3, 3), (3, 4), (3, 5), (5, 2), (5, 3), (7, 2)] {
            for code in 0..p.pow(m) {
                let mut g: Vec<u64> = (0..m).map(|i| code / p.pow(i) % p).collect();
                g.push(1);
                assert_eq!(is_irreducible(&g, p), brute_irreducible(&g, p), "{g:?} over {p}");
            }
        }
    }

    #[test]
    fn orders_and_generators() {
        let f7 = Field::new(7, 1, None).unwrap();
        assert_eq!(f7.elem_order(1).unwrap(), 1);
        // direct exponentiation
        let brute = |x: u64| (1..=6).find(|&k| arith::mod_pow(x, k, 7) == 1).unwrap();
        assert_eq!(f7.elem_order(3).unwrap(), brute(3));
        assert_eq!(f7.generator(), 3);
        assert_eq!(Field::new(3, 1, None).unwrap().generator(), 2);
        assert_eq!(f7.elem_order(0), Err(Error::ZeroElement));

        let f81 = Field::new(3, 4, None).unwrap();
        let g = f81.generator();
        let mut x = g;
        let mut k = 1;
        while x != 1 {
            x = f81.mul(x, g);
            k += 1;
        }
        assert_eq!(k, 80);
        assert_eq!(f81.elem_order(g).unwrap(), 80);

        let f9 = Field::new(3, 2, None).unwrap();
        let first = (1..9).find(|&x| (1..8).all(|k| f9.pow(x, k) != 1)).unwrap();
        assert_eq!(f9.generator(), first);
    }

    #[test]
    fn generators_have_full_order() {
        for q in [3u64, 5, 7, 9, 11, 13, 25, 27, 49, 81, 121, 125, 243, 343, 729, 2187, 6561, 65536 - 15] {
            if let Some((p, m)) = prime_power(q) {
                if p == 2 {
                    continue;
                }
                let f = Field::new(p, m, None).unwrap();
                assert_eq!(f.elem_order(f.generator()).unwrap(), q - 1, "q = {q}");
            }
        }
    }

    #[test]
    fn frobenius_gf9() {
        let f9 = Field::new(3, 2, None).unwrap();
        let g = f9.generator();
        assert_eq!(f9.frobenius(g, 0, 1), g);
        assert_eq!(f9.frobenius(g, 1, 1), f9.pow(g, 3));
        assert_eq!(f9.frobenius(f9.frobenius(g, 1, 1), 1, 1), g);
        for x in 0..3 {
            assert_eq!(f9.frobenius(x, 1, 1), x);
        }
    }

    #[test]
    fn q_bracket_values() {
        assert_eq!(q_bracket(1, 7).unwrap(), 1);
        assert_eq!(q_bracket(2, 3).unwrap(), 4);
        assert_eq!(q_bracket(3, 3).unwrap(), 13);
        assert!(q_bracket(80, 3).is_err());
    }

    #[test]
    fn serialization_round_trip() {
        let f9 = Field::new(3, 2, None).unwrap();
        for x in f9.elements() {
            let s = f9.fmt_elem(x);
            assert_eq!(f9.parse_elem(&s).unwrap(), x);
        }
        assert_eq!(f9.fmt_elem(5), "3^2:2,1");
        assert_eq!(f9.parse_elem("-1").unwrap(), 2);
    }

    #[test]
    fn extension_embedding_is_a_homomorphism() {
        let f9 = Field::new(3, 2, None).unwrap();
        let ext = f9.extension(2).unwrap();
        assert_eq!(ext.big.q(), 81);
        for a in f9.elements() {
            for b in f9.elements() {
                assert_eq!(ext.embed(f9.add(a, b)), ext.big.add(ext.embed(a), ext.embed(b)));
                assert_eq!(ext.embed(f9.mul(a, b)), ext.big.mul(ext.embed(a), ext.embed(b)));
            }
        }
        let g = ext.big.generator();
        let c = ext.coords(ext.big.pow(g, 17), g).unwrap();
        let back = ext.big.add(ext.embed(c[0]), ext.big.mul(ext.embed(c[1]), g));
        assert_eq!(back, ext.big.pow(g, 17));
        assert_eq!(ext.trace(1), f9.from_int(2));
    }

    #[test]
    fn dlog_bsgs() {
        let f = Field::new(1_000_003, 1, None).unwrap();
        let g = f.generator();
        let x = f.pow(g, 123_456);
        assert_eq!(f.dlog(x).unwrap(), 123_456);
    }

    mod props {
        use super::super::*;
        use proptest::prelude::*;

        fn fields() -> Vec<Field> {
            [(3u64, 1u32), (7, 1), (3, 2), (5, 2), (3, 4), (7, 3), (3, 13)]
                .iter()
                .map(|&(p, m)| Field::new(p, m, None).unwrap())
                .collect()
        }

        proptest! {
            #[test]
            fn field_axioms(i in 0usize..7, a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
                let f = &fields()[i];
                let (a, b, c) = (a % f.q(), b % f.q(), c % f.q());
                prop_assert_eq!(f.add(a, b), f.add(b, a));
                prop_assert_eq!(f.mul(a, b), f.mul(b, a));
                prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                prop_assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
            }

            #[test]
            fn frobenius_is_automorphism(i in 0usize..7, a in any::<u64>(), b in any::<u64>()) {
                let f = &fields()[i];
                let (a, b) = (a % f.q(), b % f.q());
                let fr = |x| f.frobenius(x, 1, 1);
                prop_assert_eq!(fr(f.add(a, b)), f.add(fr(a), fr(b)));
                prop_assert_eq!(fr(f.mul(a, b)), f.mul(fr(a), fr(b)));
            }

            #[test]
            fn q_bracket_telescopes(a in 2u64..50, b in 1u64..8) {
                prop_assert_eq!(q_bracket(b, a).unwrap() * (a - 1), a.pow(b as u32) - 1);
            }
        }
    }
}

//! Square matrices over GF(q), projective normalization and generating sets.

use std::fmt;

use serde::Serialize;

use crate::arith;
use crate::autos;
use crate::error::{Error, Result};
use crate::ffield::{Fe, Field};

/// An n x n matrix, row-major. Entries are field codes.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub struct Mat {
    pub n: usize,
    pub e: Vec<Fe>,
}

impl Mat {
    #[inline]
    pub fn at(&self, i: usize, j: usize) -> Fe {
        self.e[i * self.n + j]
    }
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Fe) {
        self.e[i * self.n + j] = v;
    }
}

/// Hash key of a matrix: packed base-q digits when they fit in 128 bits.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Key {
    Packed(u128),
    Bytes(Box<[u32]>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Kind {
    SL,
    Sp,
    SO,
}

impl std::str::FromStr for Kind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Kind> {
        match s.to_ascii_uppercase().as_str() {
            "SL" | "PSL" => Ok(Kind::SL),
            "SP" | "PSP" => Ok(Kind::Sp),
            "SO" | "PSO" => Ok(Kind::SO),
            _ => Err(Error::UnsupportedKind(s.to_string())),
        }
    }
}

/// Matrix arithmetic over a fixed field and dimension.
#[derive(Clone, Debug)]
pub struct Mats {
    pub f: Field,
    pub n: usize,
    packable: bool,
}

impl Mats {
    pub fn new(f: &Field, n: usize) -> Mats {
        let bits = (f.q() as f64).log2() * (n * n) as f64;
        Mats { f: f.clone(), n, packable: bits < 127.0 }
    }

    pub fn q(&self) -> u64 {
        self.f.q()
    }

    pub fn zero(&self) -> Mat {
        Mat { n: self.n, e: vec![0; self.n * self.n] }
    }

    pub fn identity(&self) -> Mat {
        self.scalar(1)
    }

    pub fn scalar(&self, c: Fe) -> Mat {
        let mut m = self.zero();
        for i in 0..self.n {
            m.set(i, i, c);
        }
        m
    }

    pub fn diag(&self, d: &[Fe]) -> Mat {
        let mut m = self.zero();
        for (i, &c) in d.iter().enumerate() {
            m.set(i, i, c);
        }
        m
    }

    /// 1 + t e_ij (0-based indices).
    pub fn elementary(&self, i: usize, j: usize, t: Fe) -> Mat {
        let mut m = self.identity();
        m.set(i, j, self.f.add(m.at(i, j), t));
        m
    }

    /// Matrix unit e_ij (0-based).
    pub fn unit(&self, i: usize, j: usize) -> Mat {
        let mut m = self.zero();
        m.set(i, j, 1);
        m
    }

    pub fn from_rows(&self, rows: &[Vec<Fe>]) -> Result<Mat> {
        if rows.len() != self.n || rows.iter().any(|r| r.len() != self.n) {
            return Err(Error::Parse(format!("expected a {0}x{0} matrix", self.n)));
        }
        if rows.iter().flatten().any(|&x| x >= self.q()) {
            return Err(Error::Parse("entry out of range".into()));
        }
        Ok(Mat { n: self.n, e: rows.concat() })
    }

    /// Rows of small integers, reduced mod p.
    pub fn from_ints(&self, rows: &[&[i64]]) -> Mat {
        let e = rows.iter().flat_map(|r| r.iter().map(|&x| self.f.from_int(x))).collect();
        Mat { n: self.n, e }
    }

    pub fn mul(&self, a: &Mat, b: &Mat) -> Mat {
        let n = self.n;
        let f = &self.f;
        let mut c = vec![0; n * n];
        for i in 0..n {
            for k in 0..n {
                let aik = a.e[i * n + k];
                if aik == 0 {
                    continue;
                }
                for j in 0..n {
                    let bkj = b.e[k * n + j];
                    if bkj != 0 {
                        c[i * n + j] = f.add(c[i * n + j], f.mul(aik, bkj));
                    }
                }
            }
        }
        Mat { n, e: c }
    }

    pub fn mul_all(&self, ms: &[&Mat]) -> Mat {
        ms.iter().fold(self.identity(), |acc, m| self.mul(&acc, m))
    }

    pub fn add(&self, a: &Mat, b: &Mat) -> Mat {
        Mat { n: self.n, e: a.e.iter().zip(&b.e).map(|(&x, &y)| self.f.add(x, y)).collect() }
    }

    pub fn sub(&self, a: &Mat, b: &Mat) -> Mat {
        Mat { n: self.n, e: a.e.iter().zip(&b.e).map(|(&x, &y)| self.f.sub(x, y)).collect() }
    }

    pub fn scale(&self, c: Fe, a: &Mat) -> Mat {
        Mat { n: self.n, e: a.e.iter().map(|&x| self.f.mul(c, x)).collect() }
    }

    pub fn transpose(&self, a: &Mat) -> Mat {
        let n = self.n;
        let mut t = self.zero();
        for i in 0..n {
            for j in 0..n {
                t.e[j * n + i] = a.e[i * n + j];
            }
        }
        t
    }

    pub fn trace(&self, a: &Mat) -> Fe {
        (0..self.n).fold(0, |s, i| self.f.add(s, a.at(i, i)))
    }

    pub fn det(&self, a: &Mat) -> Fe {
        let n = self.n;
        let f = &self.f;
        let mut m = a.e.clone();
        let mut d = 1;
        for c in 0..n {
            let Some(piv) = (c..n).find(|&r| m[r * n + c] != 0) else {
                return 0;
            };
            if piv != c {
                for j in 0..n {
                    m.swap(piv * n + j, c * n + j);
                }
                d = f.neg(d);
            }
            let pv = m[c * n + c];
            d = f.mul(d, pv);
            let pinv = f.inv(pv).expect("pivot is nonzero");
            for r in c + 1..n {
                let factor = f.mul(m[r * n + c], pinv);
                if factor != 0 {
                    for j in c..n {
                        m[r * n + j] = f.sub(m[r * n + j], f.mul(factor, m[c * n + j]));
                    }
                }
            }
        }
        d
    }

    pub fn inv(&self, a: &Mat) -> Result<Mat> {
        let n = self.n;
        let f = &self.f;
        let w = 2 * n;
        let mut m = vec![0; n * w];
        for i in 0..n {
            for j in 0..n {
                m[i * w + j] = a.e[i * n + j];
            }
            m[i * w + n + i] = 1;
        }
        for c in 0..n {
            let piv = (c..n).find(|&r| m[r * w + c] != 0).ok_or(Error::Singular)?;
            if piv != c {
                for j in 0..w {
                    m.swap(piv * w + j, c * w + j);
                }
            }
            let pinv = f.inv(m[c * w + c])?;
            for j in 0..w {
                m[c * w + j] = f.mul(m[c * w + j], pinv);
            }
            for r in 0..n {
                if r != c {
                    let factor = m[r * w + c];
                    if factor != 0 {
                        for j in 0..w {
                            m[r * w + j] = f.sub(m[r * w + j], f.mul(factor, m[c * w + j]));
                        }
                    }
                }
            }
        }
        let mut out = self.zero();
        for i in 0..n {
            for j in 0..n {
                out.e[i * n + j] = m[i * w + n + j];
            }
        }
        Ok(out)
    }

    pub fn pow(&self, a: &Mat, mut e: u64) -> Mat {
        let mut r = self.identity();
        let mut b = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        r
    }

    /// The scalar c when a = c * identity.
    pub fn scalar_value(&self, a: &Mat) -> Option<Fe> {
        let c = a.at(0, 0);
        for i in 0..self.n {
            for j in 0..self.n {
                let want = if i == j { c } else { 0 };
                if a.at(i, j) != want {
                    return None;
                }
            }
        }
        Some(c)
    }

    pub fn is_zero(&self, a: &Mat) -> bool {
        a.e.iter().all(|&c| c == 0)
    }

    pub fn is_identity(&self, a: &Mat) -> bool {
        self.scalar_value(a) == Some(1)
    }

    /// Scalar multiple whose first nonzero row-major entry is 1.
    pub fn canon(&self, a: &Mat) -> Result<Mat> {
        let lead = *a.e.iter().find(|&&x| x != 0).ok_or(Error::Singular)?;
        if lead == 1 {
            return Ok(a.clone());
        }
        Ok(self.scale(self.f.inv(lead)?, a))
    }

    /// `canon` that also checks invertibility.
    pub fn proj_canon(&self, a: &Mat) -> Result<Mat> {
        if self.det(a) == 0 {
            return Err(Error::Singular);
        }
        self.canon(a)
    }

    pub fn proj_mul(&self, a: &Mat, b: &Mat) -> Mat {
        self.canon(&self.mul(a, b)).expect("product of invertible matrices")
    }

    pub fn proj_inv(&self, a: &Mat) -> Result<Mat> {
        self.canon(&self.inv(a)?)
    }

    pub fn proj_eq(&self, a: &Mat, b: &Mat) -> bool {
        match (self.canon(a), self.canon(b)) {
            (Ok(x), Ok(y)) => x == y,
            _ => false,
        }
    }

    /// det(a) lies in (GF(q)^x)^n.
    pub fn psl_member(&self, a: &Mat) -> bool {
        let d = self.det(a);
        if d == 0 {
            return false;
        }
        let q = self.q();
        let g = arith::gcd(self.n as u64, q - 1);
        self.f.pow(d, (q - 1) / g) == 1
    }

    /// Bound on element orders in PGL_n(q): lcm(q^k - 1, k <= n) times the p-part.
    pub fn exponent_cap(&self) -> Result<u64> {
        let q = self.q();
        let mut l = 1u64;
        let mut qk = 1u64;
        for _ in 1..=self.n {
            qk = qk.checked_mul(q).ok_or(Error::Overflow("exponent cap"))?;
            l = arith::lcm_checked(l, qk - 1)?;
        }
        let p = self.f.p();
        let mut pp = 1u64;
        while pp < self.n as u64 {
            pp *= p;
        }
        l.checked_mul(pp).ok_or(Error::Overflow("exponent cap"))
    }

    /// Least k >= 1 with a^k scalar.
    pub fn proj_order(&self, a: &Mat) -> Result<u64> {
        if self.det(a) == 0 {
            return Err(Error::Singular);
        }
        let cap = self.exponent_cap()?;
        // descend through divisors of the cap
        if self.scalar_value(&self.pow(a, cap)).is_none() {
            return Err(Error::InternalInconsistency("projective order exceeds exponent bound".into()));
        }
        let mut k = cap;
        for (r, e) in arith::factor(cap)? {
            for _ in 0..e {
                if self.scalar_value(&self.pow(a, k / r)).is_some() {
                    k /= r;
                } else {
                    break;
                }
            }
        }
        Ok(k)
    }

    /// Linear order: least k with a^k = 1.
    pub fn order(&self, a: &Mat) -> Result<u64> {
        let k = self.proj_order(a)?;
        let c = self.scalar_value(&self.pow(a, k)).expect("scalar power");
        Ok(k * self.f.elem_order(c)?)
    }

    pub fn packable(&self) -> bool {
        self.packable
    }

    pub fn key(&self, a: &Mat) -> Key {
        if self.packable {
            Key::Packed(self.pack(a))
        } else {
            Key::Bytes(a.e.iter().map(|&x| x as u32).collect())
        }
    }

    /// Base-q digits, first entry most significant. Only valid when `packable`.
    #[inline]
    pub fn pack(&self, a: &Mat) -> u128 {
        let q = self.q() as u128;
        a.e.iter().fold(0u128, |acc, &x| acc * q + x as u128)
    }

    pub fn unpack(&self, mut k: u128) -> Mat {
        let q = self.q() as u128;
        let mut e = vec![0; self.n * self.n];
        for slot in e.iter_mut().rev() {
            *slot = (k % q) as Fe;
            k /= q;
        }
        Mat { n: self.n, e }
    }

    pub fn from_key(&self, k: &Key) -> Mat {
        match k {
            Key::Packed(v) => self.unpack(*v),
            Key::Bytes(b) => Mat { n: self.n, e: b.iter().map(|&x| x as Fe).collect() },
        }
    }

    pub fn format(&self, a: &Mat) -> String {
        let ext = !self.f.is_prime_field();
        let rows: Vec<String> = (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| if ext { self.f.fmt_elem(a.at(i, j)) } else { a.at(i, j).to_string() })
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        rows.join(";")
    }

    /// Parse `a,b;c,d`. Entries are bare integers or `p^m:c0,...,c_{m-1}`.
    pub fn parse(&self, s: &str) -> Result<Mat> {
        let m = self.f.m() as usize;
        let mut rows = Vec::new();
        for row in s.trim().split(';') {
            let toks: Vec<&str> = row.split(',').collect();
            let mut out = Vec::new();
            let mut i = 0;
            while i < toks.len() {
                if toks[i].contains(':') {
                    let end = i + m;
                    if end > toks.len() {
                        return Err(Error::Parse(format!("truncated element in row {row}")));
                    }
                    out.push(self.f.parse_elem(&toks[i..end].join(","))?);
                    i = end;
                } else {
                    out.push(self.f.parse_elem(toks[i])?);
                    i += 1;
                }
            }
            rows.push(out);
        }
        self.from_rows(&rows)
    }

    /// Generating set for SL_n(q), Sp_n(q) (n even) or SO_n(q) (n odd), all in
    /// the forms fixed by the graph automorphism.
    pub fn group_generators(&self, kind: Kind) -> Result<Vec<Mat>> {
        let n = self.n;
        if n < 2 {
            return Err(Error::UnsupportedKind(format!("{kind:?} in dimension {n}")));
        }
        let basis: Vec<Fe> = (0..self.f.m()).map(|k| self.f.p().pow(k)).collect();
        match kind {
            Kind::SL => {
                let mut gens = Vec::new();
                for i in 0..n {
                    for j in 0..n {
                        if i != j {
                            for &t in &basis {
                                gens.push(self.elementary(i, j, t));
                            }
                        }
                    }
                }
                Ok(gens)
            }
            Kind::Sp | Kind::SO => {
                if (kind == Kind::Sp) != (n % 2 == 0) {
                    return Err(Error::UnsupportedKind(format!("{kind:?} in dimension {n}")));
                }
                let mut gens = Vec::new();
                for i in 0..n {
                    for j in 0..n {
                        if i == j {
                            continue;
                        }
                        for &t in &basis {
                            let x = self.scale(t, &self.unit(i, j));
                            let y = self.add(&x, &autos::dtheta(self, &x));
                            if y.e.iter().all(|&c| c == 0) {
                                continue;
                            }
                            let g = self.exp_nilpotent(&y)?;
                            if !gens.contains(&g) {
                                gens.push(g);
                            }
                        }
                    }
                }
                if kind == Kind::SO {
                    // root elements only reach the spinor kernel; add a torus element
                    let g = self.f.generator();
                    let mut d = vec![1; n];
                    d[0] = g;
                    d[n - 1] = self.f.inv(g)?;
                    gens.push(self.diag(&d));
                }
                Ok(gens)
            }
        }
    }

    /// Small generating set for SL_n(q): transvections 1 + t e_12 over an
    /// additive basis, and a signed cyclic permutation matrix.
    pub fn sl_generators_small(&self) -> Vec<Mat> {
        let n = self.n;
        let mut gens: Vec<Mat> = (0..self.f.m())
            .map(|k| self.elementary(0, 1, self.f.p().pow(k)))
            .collect();
        let mut c = self.zero();
        for i in 0..n {
            c.set((i + 1) % n, i, 1);
        }
        // a cycle of length n has sign (-1)^(n+1)
        if n % 2 == 0 {
            c.set(0, n - 1, self.f.neg(1));
        }
        gens.push(c);
        if self.f.m() > 1 {
            let g = self.f.generator();
            let mut d = vec![1; n];
            d[0] = g;
            d[1] = self.f.inv(g).expect("nonzero");
            gens.push(self.diag(&d));
        }
        gens
    }

    /// exp(y) = 1 + y + y^2/2 for y with y^3 = 0.
    pub fn exp_nilpotent(&self, y: &Mat) -> Result<Mat> {
        let y2 = self.mul(y, y);
        if self.mul(&y2, y).e.iter().any(|&c| c != 0) {
            return Err(Error::InternalInconsistency("exp of a non-nilpotent element".into()));
        }
        let half = self.f.inv(2)?;
        Ok(self.add(&self.add(&self.identity(), y), &self.scale(half, &y2)))
    }
}

/// |SL_n(q)| = q^(n(n-1)/2) prod_{k=2..n} (q^k - 1).
pub fn sl_order(n: u32, q: u64) -> Result<u64> {
    let mut o = arith::pow_checked(q, n * (n - 1) / 2)?;
    for k in 2..=n {
        o = o.checked_mul(arith::pow_checked(q, k)? - 1).ok_or(Error::Overflow("group order"))?;
    }
    Ok(o)
}

/// |PSL_n(q)| = |SL_n(q)| / gcd(n, q - 1).
pub fn psl_order(n: u32, q: u64) -> Result<u64> {
    Ok(sl_order(n, q)? / arith::gcd(n as u64, q - 1))
}

/// |PGL_n(q)| = |SL_n(q)|.
pub fn pgl_order(n: u32, q: u64) -> Result<u64> {
    sl_order(n, q)
}

pub struct Display<'a>(pub &'a Mats, pub &'a Mat);

impl fmt::Display for Display<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.format(self.1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{closure, MatGroup};

    fn ctx(q: u64, n: usize) -> Mats {
        Mats::new(&Field::of_order(q).unwrap(), n)
    }

    #[test]
    fn canon_examples() {
        let m = ctx(5, 2);
        assert_eq!(m.proj_canon(&m.identity()).unwrap(), m.identity());
        assert_eq!(m.proj_canon(&m.scalar(2)).unwrap(), m.identity());
        assert_eq!(m.proj_canon(&m.diag(&[2, 1])).unwrap(), m.diag(&[1, 3]));
        assert_eq!(m.proj_canon(&m.zero()), Err(Error::Singular));
    }

    #[test]
    fn psl_membership_examples() {
        let m = ctx(7, 3);
        assert!(m.psl_member(&m.identity()));
        let g = m.f.generator();
        let cubes: Vec<u64> = (1..7).map(|x| m.f.pow(x, 3)).collect();
        assert!(!cubes.contains(&g));
        assert!(!m.psl_member(&m.diag(&[g, 1, 1])));
        assert!(m.psl_member(&m.elementary(0, 2, 5)));
    }

    #[test]
    fn inverse_and_det() {
        let m = ctx(9, 3);
        let a = m.mul_all(&[&m.elementary(0, 1, 4), &m.diag(&[3, 5, 1]), &m.elementary(2, 0, 7)]);
        let ai = m.inv(&a).unwrap();
        assert!(m.is_identity(&m.mul(&a, &ai)));
        assert_eq!(m.det(&a), m.f.mul(3, 5));
    }

    #[test]
    fn proj_order_examples() {
        let m = ctx(9, 4);
        assert_eq!(m.proj_order(&m.identity()).unwrap(), 1);
        let w = (0..9).find(|&x| m.f.mul(x, x) == m.f.neg(1)).unwrap();
        let wi = m.f.inv(w).unwrap();
        let x = m.diag(&[w, wi, wi, w]);
        // iterate and canonicalize
        let mut k = 1;
        let mut y = x.clone();
        while m.scalar_value(&y).is_none() {
            y = m.mul(&y, &x);
            k += 1;
        }
        assert_eq!(m.proj_order(&x).unwrap(), k);
        assert_eq!(k, 2);
    }

    #[test]
    fn text_round_trip() {
        let m = ctx(9, 2);
        let a = m.from_rows(&[vec![1, 5], vec![7, 0]]).unwrap();
        let s = m.format(&a);
        assert_eq!(m.parse(&s).unwrap(), a);
        let m5 = ctx(5, 2);
        assert_eq!(m5.parse("1,2;3,-1").unwrap(), m5.from_rows(&[vec![1, 2], vec![3, 4]]).unwrap());
    }

    #[test]
    fn key_round_trip() {
        let m = ctx(7, 3);
        let a = m.elementary(1, 2, 3);
        assert_eq!(m.from_key(&m.key(&a)), a);
    }

    #[test]
    fn sl_closure_orders() {
        for (n, q) in [(2usize, 3u64), (2, 5), (3, 3), (2, 9)] {
            let m = ctx(q, n);
            let g = MatGroup::linear(&m);
            let gens = m.group_generators(Kind::SL).unwrap();
            assert_eq!(closure(&g, &gens, 1 << 20, 1).unwrap().len() as u64, sl_order(n as u32, q).unwrap());
            let small = m.sl_generators_small();
            assert_eq!(closure(&g, &small, 1 << 20, 1).unwrap().len() as u64, sl_order(n as u32, q).unwrap());
        }
        let m = ctx(3, 2);
        assert_eq!(
            m.group_generators(Kind::SL).unwrap(),
            vec![m.from_ints(&[&[1, 1], &[0, 1]]), m.from_ints(&[&[1, 0], &[1, 1]])]
        );
    }

    #[test]
    fn classical_closure_orders() {
        // q^(m^2) prod (q^(2i) - 1)
        for (kind, n, q, order) in [
            (Kind::Sp, 2usize, 3u64, 24usize),
            (Kind::Sp, 4, 3, 51840),
            (Kind::SO, 3, 3, 24),
            (Kind::SO, 3, 5, 120),
            (Kind::SO, 5, 3, 51840),
        ] {
            let m = ctx(q, n);
            let g = MatGroup::linear(&m);
            let gens = m.group_generators(kind).unwrap();
            for x in &gens {
                assert_eq!(autos::theta(&m, x).unwrap(), *x);
                assert_eq!(m.det(x), 1);
            }
            assert_eq!(closure(&g, &gens, 1 << 20, 1).unwrap().len(), order, "{kind:?} {n} {q}");
        }
        assert!(ctx(3, 3).group_generators(Kind::Sp).is_err());
    }

    #[test]
    fn orders_formula() {
        assert_eq!(sl_order(3, 3).unwrap(), 5616);
        assert_eq!(psl_order(2, 5).unwrap(), 60);
        assert_eq!(psl_order(4, 3).unwrap(), 6065280);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn rand_mat(m: &Mats, seed: &[u64]) -> Mat {
            let mut e: Vec<Fe> = seed.iter().map(|s| s % m.q()).collect();
            e.truncate(m.n * m.n);
            let mut a = Mat { n: m.n, e };
            if m.det(&a) == 0 {
                for i in 0..m.n {
                    a.set(i, i, m.f.add(a.at(i, i), 1));
                }
            }
            a
        }

        proptest! {
            #[test]
            fn canon_constant_on_scalars(seed in prop::collection::vec(any::<u64>(), 9), c in 1u64..9) {
                let m = ctx(9, 3);
                let a = rand_mat(&m, &seed);
                prop_assume!(m.det(&a) != 0);
                prop_assert_eq!(m.canon(&a).unwrap(), m.canon(&m.scale(c, &a)).unwrap());
                let x = m.canon(&a).unwrap();
                prop_assert_eq!(m.canon(&x).unwrap(), x);
            }

            #[test]
            fn proj_order_divides_cap(seed in prop::collection::vec(any::<u64>(), 16)) {
                let m = ctx(5, 4);
                let a = rand_mat(&m, &seed);
                prop_assume!(m.det(&a) != 0);
                let k = m.proj_order(&a).unwrap();
                prop_assert_eq!(m.exponent_cap().unwrap() % k, 0);
                prop_assert!(m.scalar_value(&m.pow(&a, k)).is_some());
            }

            #[test]
            fn psl_membership_conjugation_invariant(s1 in prop::collection::vec(any::<u64>(), 9), s2 in prop::collection::vec(any::<u64>(), 9)) {
                let m = ctx(7, 3);
                let a = rand_mat(&m, &s1);
                let g = rand_mat(&m, &s2);
                prop_assume!(m.det(&a) != 0 && m.det(&g) != 0);
                let c = m.mul_all(&[&g, &a, &m.inv(&g).unwrap()]);
                prop_assert_eq!(m.psl_member(&a), m.psl_member(&c));
            }
        }
    }
}

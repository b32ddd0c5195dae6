//! The graph automorphism, Frobenius and inner automorphisms, twisted action,
//! norms and the (psi, p) decomposition.

use std::fmt;

use crate::arith;
use crate::error::{Error, Result};
use crate::group::{Group, MatGroup};
use crate::matgrp::{Mat, Mats};

/// Anti-diagonal J_n with (i, n+1-i) entry (-1)^(i-1), 1-based.
pub fn j_matrix(m: &Mats) -> Mat {
    let n = m.n;
    let mut j = m.zero();
    for i in 0..n {
        j.set(i, n - 1 - i, if i % 2 == 0 { 1 } else { m.f.neg(1) });
    }
    j
}

/// J^{-1} = (-1)^(n+1) J.
pub fn j_inv(m: &Mats) -> Mat {
    let j = j_matrix(m);
    if m.n % 2 == 0 {
        m.scale(m.f.neg(1), &j)
    } else {
        j
    }
}

/// theta(x) = J (x^{-1})^T J^{-1}.
pub fn theta(m: &Mats, x: &Mat) -> Result<Mat> {
    let xi = m.inv(x)?;
    Ok(theta_of_inverse(m, &xi))
}

/// J y^T J^{-1}, i.e. theta(y^{-1}).
pub fn theta_of_inverse(m: &Mats, y: &Mat) -> Mat {
    // (i, j) entry is (-1)^(i+j) y[n-1-j][n-1-i]
    let n = m.n;
    let mut out = m.zero();
    for i in 0..n {
        for j in 0..n {
            let v = y.at(n - 1 - j, n - 1 - i);
            out.set(i, j, if (i + j) % 2 == 1 { m.f.neg(v) } else { v });
        }
    }
    out
}

/// Differential of theta: Y -> -J Y^T J^{-1}.
pub fn dtheta(m: &Mats, y: &Mat) -> Mat {
    let t = theta_of_inverse(m, y);
    m.scale(m.f.neg(1), &t)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Atom {
    Theta,
    /// x -> x^(p^b) entrywise
    Frob(u32),
    Ad(Mat),
}

/// A composition of atoms applied right to left.
#[derive(Clone, Debug)]
pub struct Automorphism {
    pub m: Mats,
    pub projective: bool,
    pub atoms: Vec<Atom>,
}

impl Automorphism {
    pub fn identity(m: &Mats, projective: bool) -> Automorphism {
        Automorphism { m: m.clone(), projective, atoms: vec![] }
    }

    pub fn theta(m: &Mats, projective: bool) -> Automorphism {
        Automorphism { m: m.clone(), projective, atoms: vec![Atom::Theta] }
    }

    pub fn is_identity(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn is_theta(&self) -> bool {
        self.atoms == [Atom::Theta]
    }

    /// Parse `theta`, `frob^b`, `ad:<matrix>`, `id`, joined by `*`.
    pub fn parse(m: &Mats, projective: bool, s: &str) -> Result<Automorphism> {
        let mut atoms = Vec::new();
        for part in s.split('*') {
            let part = part.trim();
            if part == "id" || part.is_empty() {
                continue;
            } else if part == "theta" {
                atoms.push(Atom::Theta);
            } else if let Some(b) = part.strip_prefix("frob^") {
                atoms.push(Atom::Frob(b.parse().map_err(|_| Error::Parse(part.into()))?));
            } else if part == "frob" {
                atoms.push(Atom::Frob(1));
            } else if let Some(t) = part.strip_prefix("ad:") {
                let t = m.parse(t)?;
                if m.det(&t) == 0 {
                    return Err(Error::Singular);
                }
                atoms.push(Atom::Ad(t));
            } else {
                return Err(Error::Parse(format!("unknown automorphism {part}")));
            }
        }
        Ok(Automorphism { m: m.clone(), projective, atoms })
    }

    fn norm(&self, a: Mat) -> Mat {
        if self.projective {
            self.m.canon(&a).expect("invertible")
        } else {
            a
        }
    }

    pub fn apply(&self, x: &Mat) -> Mat {
        let m = &self.m;
        let mut y = x.clone();
        for a in self.atoms.iter().rev() {
            y = match a {
                Atom::Theta => theta(m, &y).expect("invertible"),
                Atom::Frob(b) => Mat { n: y.n, e: y.e.iter().map(|&c| m.f.frob_p(c, *b)).collect() },
                Atom::Ad(t) => m.mul_all(&[t, &y, &m.inv(t).expect("invertible")]),
            };
        }
        self.norm(y)
    }

    /// psi(x)^{-1} without a separate inversion when psi = theta.
    pub fn apply_inv(&self, x: &Mat) -> Mat {
        if self.is_theta() {
            return self.norm(theta_of_inverse(&self.m, x));
        }
        self.norm(self.m.inv(&self.apply(x)).expect("invertible"))
    }

    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        let mut atoms = self.atoms.clone();
        atoms.extend(other.atoms.iter().cloned());
        Automorphism { m: self.m.clone(), projective: self.projective, atoms }
    }

    /// psi^k on x.
    pub fn apply_pow(&self, x: &Mat, k: u64) -> Mat {
        let mut y = self.norm(x.clone());
        for _ in 0..k {
            y = self.apply(&y);
        }
        y
    }

    /// Least k >= 1 with psi^k trivial on every generator (projectively when
    /// the target is projective).
    pub fn order(&self, gens: &[Mat]) -> Result<u64> {
        let mut ys: Vec<Mat> = gens.iter().map(|g| self.norm(g.clone())).collect();
        let base = ys.clone();
        for k in 1..=4096u64 {
            ys = ys.iter().map(|y| self.apply(y)).collect();
            if ys == base {
                return Ok(k);
            }
        }
        Err(Error::Budget("automorphism order above 4096".into()))
    }

    /// Certify that psi maps each generator into the group (det 1 projectively).
    pub fn preserves(&self, gens: &[Mat]) -> bool {
        gens.iter().all(|g| {
            let y = self.apply(g);
            if self.projective {
                self.m.psl_member(&y)
            } else {
                self.m.det(&y) == 1
            }
        })
    }
}

impl fmt::Display for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.atoms.is_empty() {
            return write!(f, "id");
        }
        let parts: Vec<String> = self
            .atoms
            .iter()
            .map(|a| match a {
                Atom::Theta => "theta".to_string(),
                Atom::Frob(b) => format!("frob^{b}"),
                Atom::Ad(t) => format!("ad:{}", self.m.format(t)),
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// g . x = g x psi(g)^{-1}.
pub fn twisted_act(psi: &Automorphism, g: &Mat, x: &Mat) -> Mat {
    let m = &psi.m;
    psi.norm(m.mul(&m.mul(g, x), &psi.apply_inv(g)))
}

/// x psi(x) ... psi^{l-1}(x).
pub fn norm_psi(psi: &Automorphism, x: &Mat, ell: u64) -> Mat {
    let m = &psi.m;
    let mut acc = psi.norm(x.clone());
    let mut y = psi.norm(x.clone());
    for _ in 1..ell {
        y = psi.apply(&y);
        acc = psi.norm(m.mul(&acc, &y));
    }
    acc
}

/// H x <psi> with multiplication (h1,k1)(h2,k2) = (h1 psi^k1(h2), k1+k2 mod l).
#[derive(Clone, Debug)]
pub struct Semidirect {
    pub psi: Automorphism,
    pub ell: u64,
}

impl Semidirect {
    pub fn new(psi: &Automorphism, ell: u64) -> Semidirect {
        Semidirect { psi: psi.clone(), ell }
    }
}

impl Group for Semidirect {
    type E = (Mat, u64);
    fn id(&self) -> (Mat, u64) {
        (self.psi.m.identity(), 0)
    }
    fn mul(&self, a: &(Mat, u64), b: &(Mat, u64)) -> (Mat, u64) {
        let h = self.psi.apply_pow(&b.0, a.1);
        (self.psi.norm(self.psi.m.mul(&a.0, &h)), (a.1 + b.1) % self.ell)
    }
    fn inv(&self, a: &(Mat, u64)) -> (Mat, u64) {
        // (h,k)^{-1} = (psi^{-k}(h^{-1}), -k)
        let k = (self.ell - a.1) % self.ell;
        let hi = self.psi.norm(self.psi.m.inv(&a.0).expect("invertible"));
        (self.psi.apply_pow(&hi, k), k)
    }
}

/// Split x psi = (u, 0)(s, 1) into its p-part and p'-part in H x <psi>;
/// returns (u, s) with x = u s = s psi(u).
pub fn psi_p_decompose(psi: &Automorphism, x: &Mat, ell: u64) -> Result<(Mat, Mat)> {
    let m = &psi.m;
    let p = m.f.p();
    if ell % p == 0 {
        return Err(Error::OrderNotCoprime(ell));
    }
    let sd = Semidirect::new(psi, ell);
    let nx = norm_psi(psi, x, ell);
    let ordn = if psi.projective { m.proj_order(&nx)? } else { m.order(&nx)? };
    let k = ell * ordn;
    let (pa, mm) = arith::split_p(k, p);
    let alpha = arith::mod_inv(pa as i128, mm as i128).unwrap_or(0) as u64;
    let beta = arith::mod_inv(mm as i128, pa as i128).unwrap_or(0) as u64;
    let g = (psi.norm(x.clone()), 1 % ell);
    let gp = sd.pow(&g, (beta as u128 * mm as u128 % k as u128) as u64);
    let gq = sd.pow(&g, (alpha as u128 * pa as u128 % k as u128) as u64);
    if gp.1 != 0 || gq.1 != 1 % ell {
        return Err(Error::InternalInconsistency("decomposition exponents".into()));
    }
    Ok((gp.0, gq.0))
}

/// x theta has order prime to p in PGL_n(q) x <theta>.
pub fn is_theta_semisimple(m: &Mats, x: &Mat) -> Result<bool> {
    let t = theta(m, x)?;
    let nx = m.mul(x, &t);
    let k = m.proj_order(&nx)?;
    Ok(k % m.f.p() != 0)
}

/// Projectively: x theta is an involution, i.e. theta(x) = x^{-1} up to scalars.
pub fn theta_inverts(m: &Mats, x: &Mat) -> Result<bool> {
    let t = theta(m, x)?;
    Ok(m.scalar_value(&m.mul(x, &t)).is_some())
}

/// The twisted action as a map on the projective group.
pub fn twisted_orbit_step(g: &MatGroup, psi: &Automorphism, gens: &[Mat], x: &Mat) -> Vec<Mat> {
    gens.iter().map(|s| g.normalize(&twisted_act(psi, s, x))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::Field;

    fn ctx(q: u64, n: usize) -> Mats {
        Mats::new(&Field::of_order(q).unwrap(), n)
    }

    #[test]
    fn j_matrix_shape() {
        for n in 2..7 {
            let m = ctx(5, n);
            let j = j_matrix(&m);
            let jt = m.transpose(&j);
            let sign = if n % 2 == 1 { 1 } else { m.f.neg(1) };
            assert_eq!(jt, m.scale(sign, &j));
            assert!(m.is_identity(&m.mul(&j, &j_inv(&m))));
            assert_eq!(j.at(0, n - 1), 1);
            assert_eq!(j.at(1, n - 2), m.f.neg(1));
        }
    }

    #[test]
    fn theta_matches_definition() {
        let m = ctx(7, 4);
        let x = m.mul_all(&[&m.elementary(0, 1, 3), &m.diag(&[2, 3, 5, 1]), &m.elementary(3, 1, 6)]);
        let direct = m.mul_all(&[&j_matrix(&m), &m.transpose(&m.inv(&x).unwrap()), &j_inv(&m)]);
        assert_eq!(theta(&m, &x).unwrap(), direct);
        assert!(m.is_identity(&theta(&m, &m.identity()).unwrap()));
    }

    #[test]
    fn theta_on_diagonal() {
        let m = ctx(7, 3);
        let (a, b, c) = (2, 3, 5);
        let inv = |x| m.f.inv(x).unwrap();
        assert_eq!(theta(&m, &m.diag(&[a, b, c])).unwrap(), m.diag(&[inv(c), inv(b), inv(a)]));
    }

    #[test]
    fn theta_is_involution_on_pgl33() {
        let m = ctx(3, 3);
        let g = MatGroup::projective(&m);
        let gens = m.group_generators(crate::matgrp::Kind::SL).unwrap();
        let mut all_gens = gens.clone();
        all_gens.push(m.diag(&[2, 1, 1]));
        let all = crate::group::closure(&g, &all_gens, 1 << 20, 0).unwrap();
        assert_eq!(all.len(), 5616);
        let th = Automorphism::theta(&m, true);
        for x in &all {
            assert_eq!(th.apply(&th.apply(x)), *x);
        }
        assert_eq!(th.order(&gens).unwrap(), 2);
    }

    #[test]
    fn norm_examples() {
        let m = ctx(7, 3);
        let a = 3;
        let ai = m.f.inv(a).unwrap();
        let x = m.diag(&[a, 1, ai]);
        let th = Automorphism::theta(&m, false);
        assert_eq!(norm_psi(&th, &x, 2), m.diag(&[m.f.mul(a, a), 1, m.f.mul(ai, ai)]));
        let id = Automorphism::identity(&m, false);
        assert_eq!(norm_psi(&id, &x, 1), x);
        assert!(m.is_identity(&norm_psi(&th, &m.identity(), 2)));
    }

    #[test]
    fn twisted_act_examples() {
        let m = ctx(5, 3);
        let th = Automorphism::theta(&m, true);
        let id = Automorphism::identity(&m, true);
        let g = m.canon(&m.mul(&m.elementary(0, 2, 2), &m.diag(&[2, 1, 1]))).unwrap();
        let x = m.canon(&m.elementary(1, 0, 4)).unwrap();
        assert_eq!(twisted_act(&th, &m.identity(), &x), x);
        let expect = m.canon(&m.mul(&g, &m.inv(&th.apply(&g)).unwrap())).unwrap();
        assert_eq!(twisted_act(&th, &g, &m.identity()), expect);
        let conj = m.canon(&m.mul_all(&[&g, &x, &m.inv(&g).unwrap()])).unwrap();
        assert_eq!(twisted_act(&id, &g, &x), conj);
    }

    #[test]
    fn semisimplicity_examples() {
        let m = ctx(5, 4);
        assert!(is_theta_semisimple(&m, &m.identity()).unwrap());
        // theta-fixed transvection: 1 + e_{1n}
        let u = m.elementary(0, 3, 1);
        assert_eq!(theta(&m, &u).unwrap(), u);
        assert!(!is_theta_semisimple(&m, &u).unwrap());
    }

    #[test]
    fn decomposition_examples() {
        let m = ctx(5, 4);
        let th = Automorphism::theta(&m, true);
        let u = m.elementary(0, 3, 1);
        let (pu, ps) = psi_p_decompose(&th, &u, 2).unwrap();
        assert_eq!(pu, u);
        assert!(m.is_identity(&ps));
        let (a, b) = psi_p_decompose(&th, &m.identity(), 2).unwrap();
        assert!(m.is_identity(&a) && m.is_identity(&b));
        let s = m.canon(&m.diag(&[2, 1, 1, 3])).unwrap();
        assert!(is_theta_semisimple(&m, &s).unwrap());
        let (a, b) = psi_p_decompose(&th, &s, 2).unwrap();
        assert!(m.is_identity(&a));
        assert_eq!(b, s);
        let m3 = ctx(3, 3);
        let frob = Automorphism::parse(&m3, true, "frob^1*theta").unwrap();
        assert!(psi_p_decompose(&frob, &m3.identity(), 3).is_err());
    }

    #[test]
    fn descriptor_parsing() {
        let m = ctx(9, 2);
        let a = Automorphism::parse(&m, true, "ad:1,1;0,1*theta*frob^1").unwrap();
        assert_eq!(a.atoms.len(), 3);
        assert_eq!(a.to_string(), "ad:3^2:1,0,3^2:1,0;3^2:0,0,3^2:1,0*theta*frob^1");
        let gens = m.group_generators(crate::matgrp::Kind::SL).unwrap();
        let f = Automorphism::parse(&m, true, "frob^1").unwrap();
        assert_eq!(f.order(&gens).unwrap(), 2);
        assert!(f.preserves(&gens));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn elem(m: &Mats, s: &[u64]) -> Mat {
            // product of random transvections and a diagonal
            let n = m.n;
            let mut x = m.diag(&(0..n).map(|i| 1 + s[i] % (m.q() - 1)).collect::<Vec<_>>());
            for k in 0..6 {
                let i = (s[n + 2 * k] % n as u64) as usize;
                let j = (s[n + 2 * k + 1] % n as u64) as usize;
                if i != j {
                    x = m.mul(&x, &m.elementary(i, j, s[k] % m.q()));
                }
            }
            m.canon(&x).unwrap()
        }

        proptest! {
            #[test]
            fn twisted_act_is_action(s in prop::collection::vec(any::<u64>(), 48)) {
                let m = ctx(5, 3);
                let th = Automorphism::theta(&m, true);
                let (g, h, x) = (elem(&m, &s[0..16]), elem(&m, &s[16..32]), elem(&m, &s[32..48]));
                let gh = m.canon(&m.mul(&g, &h)).unwrap();
                prop_assert_eq!(twisted_act(&th, &gh, &x), twisted_act(&th, &g, &twisted_act(&th, &h, &x)));
            }

            #[test]
            fn norm_is_equivariant(s in prop::collection::vec(any::<u64>(), 32)) {
                let m = ctx(7, 4);
                let th = Automorphism::theta(&m, true);
                let (g, x) = (elem(&m, &s[0..16]), elem(&m, &s[16..32]));
                let lhs = norm_psi(&th, &twisted_act(&th, &g, &x), 2);
                let rhs = m.canon(&m.mul_all(&[&g, &norm_psi(&th, &x, 2), &m.inv(&g).unwrap()])).unwrap();
                prop_assert_eq!(lhs, rhs);
            }

            #[test]
            fn decomposition_recombines(s in prop::collection::vec(any::<u64>(), 16)) {
                let m = ctx(3, 3);
                let th = Automorphism::theta(&m, true);
                let x = elem(&m, &s);
                let (u, t) = psi_p_decompose(&th, &x, 2).unwrap();
                prop_assert_eq!(m.canon(&m.mul(&u, &t)).unwrap(), x.clone());
                prop_assert_eq!(m.canon(&m.mul(&t, &th.apply(&u))).unwrap(), x);
                prop_assert_eq!(m.proj_order(&u).unwrap() % 3, if m.is_identity(&u) { 1 } else { 0 });
                prop_assert!(is_theta_semisimple(&m, &t).unwrap());
            }
        }
    }
}

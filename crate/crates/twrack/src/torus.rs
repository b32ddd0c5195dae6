//! Twisted tori T^{F_w} for w = sigma(lambda, eps): exponent-lattice
//! presentations, the subgroup K, the map gamma, and a concrete realization
//! inside GL_n(q) as the unit group of a commutative algebra with involution.
//!
//! Block j contributes GF(q^l)^x x GF(q^l)^x (eps_j = 0, coordinates a, b)
//! or GF(q^{2l})^x (eps_j = 1, coordinate c), l = lambda_j. The generators
//! are chosen norm-compatibly, so the block determinant zhat_j is a + b
//! (resp. c) modulo q^l - 1, and its norm to GF(q) is zhat_j modulo q - 1.

use serde::Serialize;

use crate::abelian::{AbelianGroup, IntMat};
use crate::arith;
use crate::autos;
use crate::error::{Error, Result};
use crate::ffield::{self, Extension, Fe, Field};
use crate::group::{closure, MatGroup};
use crate::matgrp::{Mat, Mats};
use crate::weyl::Signature;

/// A finite abelian group given as the subgroup of Z/f_1 x ... x Z/f_k
/// generated by the columns of `gens`.
#[derive(Clone, Debug)]
pub struct CyclicProduct {
    pub factors: Vec<u64>,
    pub gens: IntMat,
    group: AbelianGroup,
}

impl CyclicProduct {
    fn new(factors: Vec<u64>, gens: IntMat) -> Result<CyclicProduct> {
        let ambient = AbelianGroup::cyclic(&factors);
        let group = ambient.image(&gens)?;
        Ok(CyclicProduct { factors, gens, group })
    }

    pub fn ambient(&self) -> AbelianGroup {
        AbelianGroup::cyclic(&self.factors)
    }

    pub fn invariant_factors(&self) -> Result<Vec<u64>> {
        self.group.invariant_factors()
    }

    pub fn order(&self) -> Result<u64> {
        self.group.order()
    }

    pub fn exponent(&self) -> Result<u64> {
        self.group.exponent()
    }

    /// Does the ambient element `x` lie in this subgroup?
    pub fn contains(&self, x: &[i128]) -> Result<bool> {
        let with = self.ambient().image(&self.gens.hcat(&IntMat::from_cols(&[x.to_vec()], self.factors.len())))?;
        Ok(with.order()? == self.order()?)
    }
}

/// An element of Im gamma together with a torus element mapping to it.
#[derive(Clone, Debug, Serialize)]
pub struct OrderWitness {
    pub order: u64,
    /// Exponents in the factor coordinates of `torus_group`.
    pub torus_exponents: Vec<i128>,
    /// Coordinates of the image under gamma.
    pub image: Vec<i128>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TorusReport {
    pub signature: Signature,
    pub q: u64,
    pub factors: Vec<u64>,
    pub invariant_factors: Vec<u64>,
    pub order: u64,
    pub k_order: u64,
    pub gamma_order: u64,
    pub gamma_invariant_factors: Vec<u64>,
    pub zeta: Option<OrderWitness>,
    pub two_orbits: Option<OrderWitness>,
}

fn check_q(q: u64) -> Result<()> {
    match ffield::prime_power(q) {
        Some((p, _)) if p != 2 => Ok(()),
        Some(_) => Err(Error::EvenCharacteristic),
        None => Err(Error::NotPrime(q)),
    }
}

fn qpow(q: u64, e: usize) -> Result<u64> {
    arith::pow_checked(q, e as u32)
}

/// Cyclic factor orders, and for each block the coordinate indices whose sum is zhat_j.
fn layout(sig: &Signature, q: u64) -> Result<(Vec<u64>, Vec<Vec<usize>>)> {
    sig.validate()?;
    check_q(q)?;
    let mut factors = Vec::new();
    let mut zhat = Vec::new();
    for (&l, &e) in sig.lambda.iter().zip(&sig.eps) {
        if e == 0 {
            let o = qpow(q, l)? - 1;
            zhat.push(vec![factors.len(), factors.len() + 1]);
            factors.extend([o, o]);
        } else {
            zhat.push(vec![factors.len()]);
            factors.push(qpow(q, 2 * l)? - 1);
        }
    }
    Ok((factors, zhat))
}

/// Row vector over the factor coordinates computing zhat_j (times `scale`).
fn zhat_row(k: usize, idx: &[usize], scale: i128) -> Vec<i128> {
    let mut row = vec![0i128; k];
    for &i in idx {
        row[i] = scale;
    }
    row
}

/// T^{F_w} at the SL level. For n odd the GF(q)^x coordinate is solved from
/// the determinant; for n even the norms of the zhat_j must multiply to 1.
pub fn torus_group(sig: &Signature, q: u64) -> Result<CyclicProduct> {
    let (factors, zhat) = layout(sig, q)?;
    let k = factors.len();
    if sig.n % 2 == 1 {
        return CyclicProduct::new(factors, IntMat::identity(k));
    }
    let mut row = vec![0i128; k];
    for idx in &zhat {
        for &i in idx {
            row[i] = 1;
        }
    }
    let target = AbelianGroup::cyclic(&[q - 1]);
    let lat = target.preimage_lattice(&IntMat::from_rows(&[row]))?;
    CyclicProduct::new(factors, lat)
}

/// K_w: all zhat_j equal to a common zeta in mu_n(GF(q)).
pub fn k_subgroup(sig: &Signature, q: u64) -> Result<CyclicProduct> {
    let (factors, zhat) = layout(sig, q)?;
    let k = factors.len();
    let n = sig.n as i128;
    // unknowns (x, s) with zeta = g0^s
    let mut rows = Vec::new();
    let mut mods = Vec::new();
    for (idx, &l) in zhat.iter().zip(&sig.lambda) {
        let mut row = zhat_row(k + 1, idx, 1);
        row[k] = -(ffield::q_bracket(l as u64, q)? as i128);
        rows.push(row);
        mods.push(qpow(q, l)? - 1);
    }
    let mut row = vec![0i128; k + 1];
    row[k] = n;
    rows.push(row);
    mods.push(q - 1);
    if sig.n % 2 == 0 {
        let mut row = vec![0i128; k + 1];
        for idx in &zhat {
            for &i in idx {
                row[i] = 1;
            }
        }
        rows.push(row);
        mods.push(q - 1);
    }
    let lat = AbelianGroup::cyclic(&mods).preimage_lattice(&IntMat::from_rows(&rows))?;
    let cols: Vec<Vec<i128>> = (0..lat.cols).map(|j| lat.col(j)[..k].to_vec()).collect();
    CyclicProduct::new(factors, IntMat::from_cols(&cols, k))
}

/// Target factor orders of gamma and the matrix of gamma on factor coordinates.
fn gamma_matrix(sig: &Signature, q: u64) -> Result<(Vec<u64>, IntMat)> {
    let (factors, zhat) = layout(sig, q)?;
    let k = factors.len();
    let d = ffield::d_of(sig.n as u64, q) as i128;
    let mut mods = vec![qpow(q, sig.lambda[0])? - 1];
    let mut rows = vec![zhat_row(k, &zhat[0], d)];
    for j in 0..sig.r() - 1 {
        let (a, b) = (sig.lambda[j], sig.lambda[j + 1]);
        let c = num_integer::lcm(a, b);
        let big = qpow(q, c)? - 1;
        let ea = (big / (qpow(q, a)? - 1)) as i128;
        let eb = (big / (qpow(q, b)? - 1)) as i128;
        let mut row = zhat_row(k, &zhat[j], ea);
        for &i in &zhat[j + 1] {
            row[i] -= eb;
        }
        rows.push(row);
        mods.push(big);
    }
    Ok((mods, IntMat::from_rows(&rows)))
}

fn mat_mul(a: &IntMat, b: &IntMat) -> Result<IntMat> {
    let cols: Vec<Vec<i128>> = (0..b.cols).map(|j| a.mul_vec(&b.col(j))).collect::<Result<_>>()?;
    Ok(IntMat::from_cols(&cols, a.rows))
}

/// Im gamma, gamma(z) = (zhat_1^d, zhat_1 zhat_2^{-1}, ..., zhat_{r-1} zhat_r^{-1}).
pub fn gamma_image(sig: &Signature, q: u64) -> Result<CyclicProduct> {
    let t = torus_group(sig, q)?;
    let (mods, g) = gamma_matrix(sig, q)?;
    CyclicProduct::new(mods, mat_mul(&g, &t.gens)?)
}

fn max_witness(sig: &Signature, q: u64) -> Result<OrderWitness> {
    let t = torus_group(sig, q)?;
    let (mods, g) = gamma_matrix(sig, q)?;
    let img = mat_mul(&g, &t.gens)?;
    let (coef, image, order) = AbelianGroup::cyclic(&mods).max_order_combination(&img)?;
    let mut x = t.gens.mul_vec(&coef)?;
    for (v, &f) in x.iter_mut().zip(&t.factors) {
        *v = v.rem_euclid(f as i128);
    }
    let image = image.iter().zip(&mods).map(|(v, &m)| v.rem_euclid(m as i128)).collect();
    Ok(OrderWitness { order, torus_exponents: x, image })
}

/// An element of Im gamma of even order > 4, if any.
pub fn zeta_criterion(sig: &Signature, q: u64) -> Result<Option<OrderWitness>> {
    let w = max_witness(sig, q)?;
    Ok((w.order % 2 == 0 && w.order > 4).then_some(w))
}

/// An element of Im gamma whose order does not divide 4, if any.
pub fn two_orbits_criterion(sig: &Signature, q: u64) -> Result<Option<OrderWitness>> {
    let w = max_witness(sig, q)?;
    Ok((4 % w.order != 0).then_some(w))
}

pub fn torus_report(sig: &Signature, q: u64) -> Result<TorusReport> {
    let t = torus_group(sig, q)?;
    let k = k_subgroup(sig, q)?;
    let g = gamma_image(sig, q)?;
    Ok(TorusReport {
        signature: sig.clone(),
        q,
        factors: t.factors.clone(),
        invariant_factors: t.invariant_factors()?,
        order: t.order()?,
        k_order: k.order()?,
        gamma_order: g.order()?,
        gamma_invariant_factors: g.invariant_factors()?,
        zeta: zeta_criterion(sig, q)?,
        two_orbits: two_orbits_criterion(sig, q)?,
    })
}

// ---------------------------------------------------------------------------
// Realization

enum Comp {
    /// K x K with the swap involution.
    Split(Extension, usize),
    /// GF(q^{2l}) with x* = x^{q^l}.
    Cyc(Extension, usize),
    /// GF(q) with the trivial involution (n odd).
    Middle,
}

type Elem = Vec<[Fe; 2]>;

struct StarAlgebra {
    fq: Field,
    comps: Vec<Comp>,
    /// Primitive element of each component field, used for the basis.
    prim: Vec<Fe>,
}

impl StarAlgebra {
    fn new(sig: &Signature, fq: &Field) -> Result<StarAlgebra> {
        let q = fq.q();
        let mut comps = Vec::new();
        let mut prim = Vec::new();
        for (&l, &e) in sig.lambda.iter().zip(&sig.eps) {
            let deg = if e == 0 { l } else { 2 * l };
            let big = Field::of_order(qpow(q, deg)?)?;
            let ext = Extension::new(fq.clone(), big)?;
            prim.push(ext.big.generator());
            comps.push(if e == 0 { Comp::Split(ext, l) } else { Comp::Cyc(ext, l) });
        }
        if sig.n % 2 == 1 {
            prim.push(fq.generator());
            comps.push(Comp::Middle);
        }
        Ok(StarAlgebra { fq: fq.clone(), comps, prim })
    }

    fn one(&self) -> Elem {
        vec![[1, 1]; self.comps.len()]
    }

    fn mul(&self, x: &Elem, y: &Elem) -> Elem {
        self.comps
            .iter()
            .enumerate()
            .map(|(i, c)| match c {
                Comp::Split(e, _) => [e.big.mul(x[i][0], y[i][0]), e.big.mul(x[i][1], y[i][1])],
                Comp::Cyc(e, _) => [e.big.mul(x[i][0], y[i][0]), 1],
                Comp::Middle => [self.fq.mul(x[i][0], y[i][0]), 1],
            })
            .collect()
    }

    fn inv(&self, x: &Elem) -> Result<Elem> {
        self.comps
            .iter()
            .enumerate()
            .map(|(i, c)| {
                Ok(match c {
                    Comp::Split(e, _) => [e.big.inv(x[i][0])?, e.big.inv(x[i][1])?],
                    Comp::Cyc(e, _) => [e.big.inv(x[i][0])?, 1],
                    Comp::Middle => [self.fq.inv(x[i][0])?, 1],
                })
            })
            .collect()
    }

    fn star(&self, x: &Elem) -> Elem {
        self.comps
            .iter()
            .enumerate()
            .map(|(i, c)| match c {
                Comp::Split(..) => [x[i][1], x[i][0]],
                Comp::Cyc(e, l) => [e.frobenius(x[i][0], *l as u32), 1],
                Comp::Middle => x[i],
            })
            .collect()
    }

    fn trace(&self, x: &Elem) -> Fe {
        let f = &self.fq;
        self.comps.iter().enumerate().fold(0, |acc, (i, c)| {
            let t = match c {
                Comp::Split(e, _) => f.add(e.trace(x[i][0]), e.trace(x[i][1])),
                Comp::Cyc(e, _) => e.trace(x[i][0]),
                Comp::Middle => x[i][0],
            };
            f.add(acc, t)
        })
    }

    fn zero(&self) -> Elem {
        vec![[0, 0]; self.comps.len()]
    }

    fn basis(&self) -> Vec<Elem> {
        let mut out = Vec::new();
        for (i, c) in self.comps.iter().enumerate() {
            let mut push = |v: [Fe; 2]| {
                let mut e = self.zero();
                e[i] = v;
                out.push(e);
            };
            match c {
                Comp::Split(e, l) => {
                    for s in 0..2 {
                        for k in 0..*l {
                            let b = e.big.pow(self.prim[i], k as u64);
                            push(if s == 0 { [b, 0] } else { [0, b] });
                        }
                    }
                }
                Comp::Cyc(e, l) => {
                    for k in 0..2 * l {
                        push([e.big.pow(self.prim[i], k as u64), 0]);
                    }
                }
                Comp::Middle => push([1, 0]),
            }
        }
        out
    }

    fn coords(&self, x: &Elem) -> Result<Vec<Fe>> {
        let mut out = Vec::new();
        for (i, c) in self.comps.iter().enumerate() {
            match c {
                Comp::Split(e, _) => {
                    out.extend(e.coords(x[i][0], self.prim[i])?);
                    out.extend(e.coords(x[i][1], self.prim[i])?);
                }
                Comp::Cyc(e, _) => out.extend(e.coords(x[i][0], self.prim[i])?),
                Comp::Middle => out.push(x[i][0]),
            }
        }
        Ok(out)
    }

    /// Matrix of left multiplication by x in the basis.
    fn mult_matrix(&self, m: &Mats, x: &Elem) -> Result<Mat> {
        let mut a = m.zero();
        for (j, b) in self.basis().iter().enumerate() {
            for (i, v) in self.coords(&self.mul(x, b))?.into_iter().enumerate() {
                a.set(i, j, v);
            }
        }
        Ok(a)
    }

    /// Generators of the unit group, one per cyclic factor, with their orders.
    fn unit_generators(&self) -> Vec<(Elem, u64)> {
        let mut out = Vec::new();
        for (i, c) in self.comps.iter().enumerate() {
            let mut g = self.one();
            match c {
                Comp::Split(e, _) => {
                    let o = e.big.q() - 1;
                    g[i] = [self.prim[i], 1];
                    out.push((g.clone(), o));
                    g[i] = [1, self.prim[i]];
                    out.push((g, o));
                }
                Comp::Cyc(e, _) => {
                    g[i] = [self.prim[i], 1];
                    out.push((g, e.big.q() - 1));
                }
                Comp::Middle => {
                    g[i] = [self.prim[i], 1];
                    out.push((g, self.fq.q() - 1));
                }
            }
        }
        out
    }
}

/// The torus T_w realized in GL_n(q), stable under theta.
#[derive(Clone, Debug)]
pub struct RealizedTorus {
    pub signature: Signature,
    pub mats: Mats,
    /// Change of basis to coordinates where the form has Gram matrix J^{-1}.
    pub basis: Mat,
    /// Generators of the full unit group, one per cyclic factor.
    pub unit_gens: Vec<Mat>,
    pub unit_orders: Vec<u64>,
    /// Exponent vectors (columns) generating the determinant-one part.
    pub sl_lattice: IntMat,
    pub sl_gens: Vec<Mat>,
}

impl RealizedTorus {
    pub fn unit_group(&self) -> AbelianGroup {
        AbelianGroup::cyclic(&self.unit_orders)
    }

    pub fn sl_group(&self) -> Result<CyclicProduct> {
        CyclicProduct::new(self.unit_orders.clone(), self.sl_lattice.clone())
    }

    /// Product of unit generator powers.
    pub fn element(&self, exps: &[i128]) -> Mat {
        let m = &self.mats;
        exps.iter().zip(&self.unit_gens).zip(&self.unit_orders).fold(m.identity(), |acc, ((&e, g), &o)| {
            m.mul(&acc, &m.pow(g, e.rem_euclid(o as i128) as u64))
        })
    }

    /// The map a -> a^q of the underlying algebra, in standard coordinates.
    /// It normalizes the torus; conjugation by it acts as the Frobenius.
    pub fn frobenius(&self) -> Result<Mat> {
        let m = &self.mats;
        let alg = StarAlgebra::new(&self.signature, &m.f)?;
        let mut a = m.zero();
        for (j, b) in alg.basis().iter().enumerate() {
            let fb: Elem = alg
                .comps
                .iter()
                .enumerate()
                .map(|(i, c)| match c {
                    Comp::Split(e, _) => [e.frobenius(b[i][0], 1), e.frobenius(b[i][1], 1)],
                    Comp::Cyc(e, _) => [e.frobenius(b[i][0], 1), 1],
                    Comp::Middle => b[i],
                })
                .collect();
            for (i, v) in alg.coords(&fb)?.into_iter().enumerate() {
                a.set(i, j, v);
            }
        }
        Ok(m.mul_all(&[&m.inv(&self.basis)?, &a, &self.basis]))
    }

    /// All canonical projective images of the unit group.
    pub fn projective_elements(&self, cap: usize, workers: usize) -> Result<Vec<Mat>> {
        let g = MatGroup::projective(&self.mats);
        let gens: Vec<Mat> = self.unit_gens.iter().map(|x| g.normalize(x)).collect();
        closure(&g, &gens, cap, workers)
    }
}

fn bil(f: &Field, g: &Mat, u: &[Fe], v: &[Fe]) -> Fe {
    let n = u.len();
    let mut s = 0;
    for i in 0..n {
        if u[i] == 0 {
            continue;
        }
        for j in 0..n {
            s = f.add(s, f.mul(u[i], f.mul(g.at(i, j), v[j])));
        }
    }
    s
}

fn axpy(f: &Field, a: Fe, x: &[Fe], y: &[Fe]) -> Vec<Fe> {
    x.iter().zip(y).map(|(&xi, &yi)| f.add(f.mul(a, xi), yi)).collect()
}

/// Row-reduce and keep a basis of the span.
fn span_basis(f: &Field, vs: Vec<Vec<Fe>>) -> Vec<Vec<Fe>> {
    let mut rows: Vec<Vec<Fe>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    for mut v in vs {
        for (r, &p) in rows.iter().zip(&pivots) {
            if v[p] != 0 {
                let c = f.neg(f.mul(v[p], f.inv(r[p]).expect("pivot")));
                v = axpy(f, c, r, &v);
            }
        }
        if let Some(p) = v.iter().position(|&x| x != 0) {
            rows.push(v);
            pivots.push(p);
        }
    }
    rows
}

/// Columns e_i with e_i^T G e_j equal to `target`, built from hyperbolic pairs.
/// Returns None when the leftover line of an odd-dimensional form has the
/// wrong square class.
fn witt_basis(f: &Field, g: &Mat, target: &Mat) -> Result<Option<Vec<Vec<Fe>>>> {
    let n = g.n;
    let h = n / 2;
    let symmetric = n % 2 == 1;
    let mut w: Vec<Vec<Fe>> = (0..n).map(|i| (0..n).map(|j| if i == j { 1 } else { 0 }).collect()).collect();
    let mut cols: Vec<Vec<Fe>> = vec![Vec::new(); n];
    for i in 0..h {
        let e = if symmetric {
            isotropic(f, g, &w)?
        } else {
            w[0].clone()
        };
        let f0 = w
            .iter()
            .find(|v| bil(f, g, &e, v) != 0)
            .cloned()
            .ok_or_else(|| Error::InternalInconsistency("degenerate form".into()))?;
        let t = target.at(i, n - 1 - i);
        let mut fv: Vec<Fe> = f0.iter().map(|&x| f.mul(x, f.mul(t, f.inv(bil(f, g, &e, &f0)).unwrap()))).collect();
        if symmetric {
            let a = f.mul(bil(f, g, &fv, &fv), f.inv(f.add(t, t))?);
            fv = axpy(f, f.neg(a), &e, &fv);
        }
        let bef = bil(f, g, &e, &fv);
        let bfe = bil(f, g, &fv, &e);
        let rest: Vec<Vec<Fe>> = w
            .iter()
            .map(|v| {
                let beta = f.mul(bil(f, g, v, &e), f.inv(bfe).unwrap());
                let alpha = f.mul(bil(f, g, v, &fv), f.inv(bef).unwrap());
                let v1 = axpy(f, f.neg(beta), &fv, v);
                axpy(f, f.neg(alpha), &e, &v1)
            })
            .collect();
        w = span_basis(f, rest);
        cols[i] = e;
        cols[n - 1 - i] = fv;
    }
    if symmetric {
        let v = &w[0];
        let b = bil(f, g, v, v);
        let want = target.at(h, h);
        match f.sqrt(f.mul(want, f.inv(b)?)) {
            Some(a) => cols[h] = v.iter().map(|&x| f.mul(a, x)).collect(),
            None => return Ok(None),
        }
    }
    Ok(Some(cols))
}

/// First nonzero isotropic vector of span(w), scanning coefficient vectors in order.
fn isotropic(f: &Field, g: &Mat, w: &[Vec<Fe>]) -> Result<Vec<Fe>> {
    let q = f.q();
    let k = w.len();
    let total = (q as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    let mut idx: u128 = 1;
    while idx < total {
        let mut c = idx;
        let mut v = vec![0; g.n];
        for b in w {
            let a = (c % q as u128) as Fe;
            c /= q as u128;
            if a != 0 {
                v = axpy(f, a, b, &v);
            }
        }
        if bil(f, g, &v, &v) == 0 {
            return Ok(v);
        }
        idx += 1;
    }
    Err(Error::InternalInconsistency("no isotropic vector".into()))
}

/// Realize T_w inside GL_n(q) as multiplication operators on a commutative
/// algebra with involution, in a basis where the trace form Tr(c u v*) has
/// Gram matrix J^{-1}; then theta(m_a) = m_{(a*)^{-1}}.
pub fn torus_realize(sig: &Signature, q: u64) -> Result<RealizedTorus> {
    sig.validate()?;
    check_q(q)?;
    let n = sig.n;
    if n > 8 || (q as f64).powi(n as i32) > (1u64 << 20) as f64 {
        return Err(Error::ScaleTooLarge(format!("realization needs n <= 8 and q^n <= 2^20 (n={n}, q={q})")));
    }
    let fq = Field::of_order(q)?;
    let mats = Mats::new(&fq, n);
    let alg = StarAlgebra::new(sig, &fq)?;
    let target = autos::j_inv(&mats);
    let mid_scales: Vec<Fe> = if n % 2 == 1 { vec![1, fq.generator()] } else { vec![1] };
    let mut found = None;
    for &ms in &mid_scales {
        let c = form_scalar(&alg, n, ms);
        let basis = alg.basis();
        let mut gram = mats.zero();
        for (i, bi) in basis.iter().enumerate() {
            for (j, bj) in basis.iter().enumerate() {
                gram.set(i, j, alg.trace(&alg.mul(&c, &alg.mul(bi, &alg.star(bj)))));
            }
        }
        if let Some(cols) = witt_basis(&fq, &gram, &target)? {
            let mut p = mats.zero();
            for (j, col) in cols.iter().enumerate() {
                for (i, &v) in col.iter().enumerate() {
                    p.set(i, j, v);
                }
            }
            let pt = mats.transpose(&p);
            if mats.mul_all(&[&pt, &gram, &p]) != target {
                return Err(Error::CertificationFailed("Witt basis does not reproduce J^{-1}".into()));
            }
            found = Some(p);
            break;
        }
    }
    let p = found.ok_or_else(|| Error::CertificationFailed("no isometry to the standard form".into()))?;
    let pinv = mats.inv(&p)?;
    let conj = |m: &Mat| mats.mul_all(&[&pinv, m, &p]);

    let mut unit_gens = Vec::new();
    let mut unit_orders = Vec::new();
    let mut det_logs = Vec::new();
    for (a, o) in alg.unit_generators() {
        let m = conj(&alg.mult_matrix(&mats, &a)?);
        // theta-stability: theta(m_a) = m_{(a*)^{-1}}
        let th = conj(&alg.mult_matrix(&mats, &alg.inv(&alg.star(&a))?)?);
        if autos::theta(&mats, &m)? != th {
            return Err(Error::CertificationFailed("realized torus is not theta-stable".into()));
        }
        if mats.order(&m)? != o {
            return Err(Error::CertificationFailed("generator order mismatch".into()));
        }
        det_logs.push(fq.dlog(mats.det(&m))? as i128);
        unit_gens.push(m);
        unit_orders.push(o);
    }
    let lat = AbelianGroup::cyclic(&[q - 1]).preimage_lattice(&IntMat::from_rows(&[det_logs]))?;
    let rt_pre = RealizedTorus {
        signature: sig.clone(),
        mats: mats.clone(),
        basis: p,
        unit_gens,
        unit_orders,
        sl_lattice: lat.clone(),
        sl_gens: Vec::new(),
    };
    let sl_gens: Vec<Mat> = (0..lat.cols).map(|j| rt_pre.element(&lat.col(j))).collect();
    for g in &sl_gens {
        if mats.det(g) != 1 {
            return Err(Error::CertificationFailed("determinant filter failed".into()));
        }
    }
    let rt = RealizedTorus { sl_gens, ..rt_pre };
    let abstract_t = torus_group(sig, q)?;
    let realized = rt.sl_group()?;
    if realized.invariant_factors()? != abstract_t.invariant_factors()? {
        return Err(Error::CertificationFailed(format!(
            "realized torus {:?} differs from presentation {:?}",
            realized.invariant_factors()?,
            abstract_t.invariant_factors()?
        )));
    }
    Ok(rt)
}

/// The scalar c with c* = -c (n even) or c* = c (n odd) defining the form.
fn form_scalar(alg: &StarAlgebra, n: usize, middle: Fe) -> Elem {
    let f = &alg.fq;
    alg.comps
        .iter()
        .enumerate()
        .map(|(i, c)| match c {
            Comp::Split(..) => [1, if n % 2 == 0 { f.neg(1) } else { 1 }],
            Comp::Cyc(e, l) => {
                if n % 2 == 0 {
                    let ql = e.small.q().pow(*l as u32);
                    [e.big.pow(alg.prim[i], (ql + 1) / 2), 1]
                } else {
                    [1, 1]
                }
            }
            Comp::Middle => [middle, 1],
        })
        .collect()
}

//! Racks of twisted conjugacy classes and the type D tests.

use std::hash::Hash;

use rayon::prelude::*;
use rustc_hash::FxHashSet;
use serde::Serialize;

use crate::abelian::{AbelianGroup, IntMat};
use crate::autos::{twisted_act, Automorphism};
use crate::error::{Error, Result};
use crate::group::{orbit, with_workers, Group};
use crate::matgrp::Mat;

pub trait Rack: Sync + Send {
    type E: Clone + Eq + Hash + Ord + Send + Sync + std::fmt::Debug;
    fn op(&self, y: &Self::E, z: &Self::E) -> Self::E;

    /// r |> (s |> (r |> s)) != s
    fn d_condition(&self, r: &Self::E, s: &Self::E) -> bool {
        let rs = self.op(r, s);
        let srs = self.op(s, &rs);
        &self.op(r, &srs) != s
    }
}

/// y |> z = y psi(z y^{-1}) on projective matrices.
#[derive(Clone, Debug)]
pub struct TwistedRack {
    pub psi: Automorphism,
}

impl Rack for TwistedRack {
    type E = Mat;
    fn op(&self, y: &Mat, z: &Mat) -> Mat {
        let m = &self.psi.m;
        let zy = m.mul(z, &m.inv(y).expect("invertible"));
        m.canon(&m.mul(y, &self.psi.apply(&zy))).expect("invertible")
    }
}

/// y |> z = y z y^{-1} in any group.
pub struct ConjRack<'a, G: Group>(pub &'a G);

impl<G: Group> Rack for ConjRack<'_, G> {
    type E = G::E;
    fn op(&self, y: &G::E, z: &G::E) -> G::E {
        self.0.conj(y, z)
    }
}

pub fn rack_op(psi: &Automorphism, y: &Mat, z: &Mat) -> Mat {
    TwistedRack { psi: psi.clone() }.op(y, z)
}

/// r psi(s) psi^2(r) psi^3(s) and s psi(r) psi^2(s) psi^3(r), projectively.
pub fn eq22_sides(psi: &Automorphism, r: &Mat, s: &Mat) -> (Mat, Mat) {
    let m = &psi.m;
    let side = |a: &Mat, b: &Mat| {
        let f = [a.clone(), psi.apply(b), psi.apply_pow(a, 2), psi.apply_pow(b, 3)];
        m.canon(&m.mul_all(&[&f[0], &f[1], &f[2], &f[3]])).expect("invertible")
    };
    (side(r, s), side(s, r))
}

#[derive(Clone, Debug)]
pub struct TwistedOrbit {
    pub base: Mat,
    pub psi: Automorphism,
    pub gens: Vec<Mat>,
    /// Sorted canonical representatives.
    pub elements: Vec<Mat>,
}

impl TwistedOrbit {
    pub fn len(&self) -> usize {
        self.elements.len()
    }
    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
    pub fn contains(&self, x: &Mat) -> bool {
        self.elements.binary_search(x).is_ok()
    }
    pub fn rack(&self) -> TwistedRack {
        TwistedRack { psi: self.psi.clone() }
    }
}

/// Orbit of x under g -> g x psi(g)^{-1} for g in the group generated by `gens`.
pub fn orbit_enumerate(x: &Mat, gens: &[Mat], psi: &Automorphism, cap: usize, workers: usize) -> Result<TwistedOrbit> {
    let m = &psi.m;
    let x0 = m.canon(x)?;
    let elements = orbit(
        vec![x0.clone()],
        |y| gens.iter().map(|g| twisted_act(psi, g, y)).collect(),
        cap,
        workers,
    )?;
    Ok(TwistedOrbit { base: x0, psi: psi.clone(), gens: gens.to_vec(), elements })
}

#[derive(Clone, Debug, Serialize)]
pub struct TypeDWitness {
    pub r: Mat,
    pub s: Mat,
    pub subrack_r: usize,
    pub subrack_s: usize,
    pub lhs: Mat,
    pub rhs: Mat,
}

/// Twisted orbits of r and s under the psi-stable closure of <r, s>, or None
/// when they meet. Enumerates the orbit of r and tests membership of s.
pub fn separated_orbits(psi: &Automorphism, r: &Mat, s: &Mat, ell: u64, cap: usize) -> Result<Option<(usize, usize)>> {
    let mut lgens: Vec<Mat> = Vec::new();
    for x in [r, s] {
        let mut y = x.clone();
        for _ in 0..ell {
            if !lgens.contains(&y) {
                lgens.push(y.clone());
            }
            y = psi.apply(&y);
        }
    }
    let or = orbit_enumerate(r, &lgens, psi, cap, 1)?;
    if or.contains(s) {
        return Ok(None);
    }
    let os = orbit_enumerate(s, &lgens, psi, cap, 1)?;
    Ok(Some((or.len(), os.len())))
}

/// Pair search for a type D witness inside a twisted orbit. Probe pairs
/// (x, g . x) come first, then all pairs in key order. `effort` bounds the
/// number of pairs tried; `cap` bounds each auxiliary orbit.
pub fn typed_search(orb: &TwistedOrbit, probes: &[Mat], ell: u64, effort: usize, cap: usize) -> Result<Option<TypeDWitness>> {
    let psi = &orb.psi;
    let mut pairs: Vec<(Mat, Mat)> = probes
        .iter()
        .map(|g| (orb.base.clone(), twisted_act(psi, g, &orb.base)))
        .collect();
    let n = orb.len();
    'outer: for i in 0..n {
        for j in 0..n {
            if pairs.len() >= effort {
                break 'outer;
            }
            if i != j {
                pairs.push((orb.elements[i].clone(), orb.elements[j].clone()));
            }
        }
    }
    let exhaustive = pairs.len() >= probes.len() + n * n.saturating_sub(1);
    for (r, s) in pairs.into_iter().take(effort) {
        if r == s {
            continue;
        }
        let (lhs, rhs) = eq22_sides(psi, &r, &s);
        if lhs == rhs {
            continue;
        }
        match separated_orbits(psi, &r, &s, ell, cap) {
            Ok(Some((a, b))) => {
                return Ok(Some(TypeDWitness { r, s, subrack_r: a, subrack_s: b, lhs, rhs }));
            }
            Ok(None) => {}
            Err(Error::Budget(_)) => {}
            Err(e) => return Err(e),
        }
    }
    if !exhaustive && n > 1 {
        return Err(Error::Budget(format!("pair scan stopped after {effort} pairs")));
    }
    Ok(None)
}

/// In the rack, s is not in the orbit of r under the inner group of <r, s>.
pub fn rack_pair_separated<R: Rack>(rack: &R, r: &R::E, s: &R::E, cap: usize) -> Result<bool> {
    let mut seen: FxHashSet<R::E> = FxHashSet::default();
    seen.insert(r.clone());
    let mut stack = vec![r.clone()];
    while let Some(x) = stack.pop() {
        for y in [rack.op(r, &x), rack.op(s, &x)] {
            if &y == s {
                return Ok(false);
            }
            if seen.insert(y.clone()) {
                if seen.len() > cap {
                    return Err(Error::Budget(format!("inner orbit exceeds {cap}")));
                }
                stack.push(y);
            }
        }
    }
    Ok(true)
}

/// For an involution s: the first r in `class` with |rs| even and > 4.
pub fn involution_typed<G: Group>(g: &G, s: &G::E, class: &[G::E]) -> Result<Option<G::E>> {
    let id = g.id();
    if s == &id || g.mul(s, s) != id {
        return Err(Error::NotInvolution);
    }
    Ok(class
        .par_iter()
        .find_first(|r| {
            let o = g.elem_order(&g.mul(r, s));
            o % 2 == 0 && o > 4
        })
        .cloned())
}

/// Image of b -> b psi(b)^{-1} on an abelian group, with psi given by its
/// action on the generators (columns are images).
pub fn abelian_twisted_orbit(a: &AbelianGroup, psi: &IntMat) -> Result<AbelianGroup> {
    let k = a.rank();
    let mut gens = IntMat::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            let d = if i == j { 1 } else { 0 };
            gens.set(i, j, d - psi.get(i, j));
        }
    }
    a.image(&gens)
}

/// Check the rack axioms on random triples from an orbit: self-distributivity,
/// idempotency and injectivity of left translations. Returns the violation count.
pub fn rack_axiom_violations<R: Rack>(rack: &R, elems: &[R::E], triples: usize, seed: u64, workers: usize) -> usize {
    use rand::{Rng, SeedableRng};
    let n = elems.len();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let picks: Vec<(usize, usize, usize)> =
        (0..triples).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n))).collect();
    with_workers(workers, || {
        picks
            .par_iter()
            .filter(|&&(a, b, c)| {
                let (y, z, w) = (&elems[a], &elems[b], &elems[c]);
                let sd = rack.op(y, &rack.op(z, w)) != rack.op(&rack.op(y, z), &rack.op(y, w));
                let idem = rack.op(y, y) != *y;
                let inj = b != c && rack.op(y, z) == rack.op(y, w);
                sd || idem || inj
            })
            .count()
    })
}

/// Left translation y |> . is a permutation of the orbit.
pub fn left_translation_bijective<R: Rack>(rack: &R, y: &R::E, elems: &[R::E]) -> bool {
    let mut img: Vec<R::E> = elems.iter().map(|z| rack.op(y, z)).collect();
    img.sort_unstable();
    img.dedup();
    img.len() == elems.len() && img.iter().all(|z| elems.binary_search(z).is_ok())
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::Field;
    use crate::group::MatGroup;
    use crate::matgrp::Mats;
    use crate::group::{closure, conj_class, Perm, SymGroup};
    use crate::matgrp::Kind;

    fn ctx(q: u64, n: usize) -> Mats {
        Mats::new(&Field::of_order(q).unwrap(), n)
    }

    #[test]
    fn rack_op_examples() {
        let m = ctx(5, 3);
        let th = Automorphism::theta(&m, true);
        let id = Automorphism::identity(&m, true);
        let y = m.canon(&m.mul(&m.elementary(0, 1, 2), &m.diag(&[2, 1, 1]))).unwrap();
        let z = m.canon(&m.elementary(2, 0, 3)).unwrap();
        assert_eq!(rack_op(&th, &y, &y), y);
        assert_eq!(rack_op(&id, &m.identity(), &z), z);
        let conj = m.canon(&m.mul_all(&[&y, &z, &m.inv(&y).unwrap()])).unwrap();
        assert_eq!(rack_op(&id, &y, &z), conj);
    }

    #[test]
    fn identity_orbit_psl33() {
        let m = ctx(3, 3);
        let th = Automorphism::theta(&m, true);
        let gens = m.group_generators(Kind::SL).unwrap();
        let o = orbit_enumerate(&m.identity(), &gens, &th, 100_000, 0).unwrap();
        // |PSL_3(3)| / |SO_3(3)|
        assert_eq!(o.len(), 5616 / 24);
        let id = Automorphism::identity(&m, true);
        assert_eq!(orbit_enumerate(&m.identity(), &gens, &id, 10, 1).unwrap().len(), 1);
        let x = m.elementary(0, 1, 1);
        assert_eq!(orbit_enumerate(&x, &[], &th, 10, 1).unwrap().elements, vec![x]);
    }

    #[test]
    fn eq22_matches_d_condition() {
        let m = ctx(3, 3);
        let th = Automorphism::theta(&m, true);
        let gens = m.group_generators(Kind::SL).unwrap();
        let o = orbit_enumerate(&m.identity(), &gens, &th, 100_000, 0).unwrap();
        let rk = o.rack();
        for i in (0..o.len()).step_by(7) {
            for j in (0..o.len()).step_by(11) {
                let (r, s) = (&o.elements[i], &o.elements[j]);
                let (l, rr) = eq22_sides(&th, r, s);
                assert_eq!(l != rr, rk.d_condition(r, s));
            }
        }
    }

    #[test]
    fn singleton_has_no_witness() {
        let m = ctx(3, 3);
        let th = Automorphism::theta(&m, true);
        let o = orbit_enumerate(&m.identity(), &[], &th, 10, 1).unwrap();
        assert!(typed_search(&o, &[], 2, 100, 1000).unwrap().is_none());
    }

    #[test]
    fn transpositions_of_s5() {
        let s5 = SymGroup { n: 5 };
        let gens = vec![Perm::cycle(5, &[1, 2]), Perm::cycle(5, &[1, 2, 3, 4, 5])];
        let t = Perm::cycle(5, &[1, 2]);
        let class = conj_class(&s5, &t, &gens, 1000, 1).unwrap();
        assert_eq!(class.len(), 10);
        assert!(involution_typed(&s5, &t, &class).unwrap().is_none());
        assert!(matches!(involution_typed(&s5, &s5.id(), &class), Err(Error::NotInvolution)));
    }

    #[test]
    fn abelian_orbit_examples() {
        let a = AbelianGroup::cyclic(&[12]);
        let id = IntMat::identity(1);
        assert_eq!(abelian_twisted_orbit(&a, &id).unwrap().order().unwrap(), 1);
        let mut inv = IntMat::zeros(1, 1);
        inv.set(0, 0, -1);
        assert_eq!(abelian_twisted_orbit(&a, &inv).unwrap().order().unwrap(), 6);
        let a7 = AbelianGroup::cyclic(&[7]);
        assert_eq!(abelian_twisted_orbit(&a7, &inv).unwrap().order().unwrap(), 7);
        // GF(25)^x with x -> x^5
        let b = AbelianGroup::cyclic(&[24]);
        let mut fr = IntMat::zeros(1, 1);
        fr.set(0, 0, 5);
        assert_eq!(abelian_twisted_orbit(&b, &fr).unwrap().order().unwrap(), 24 / 4);
    }

    #[test]
    fn psl2_closure_for_racks() {
        let m = ctx(5, 2);
        let g = MatGroup::projective(&m);
        let all = closure(&g, &m.group_generators(Kind::SL).unwrap(), 1000, 1).unwrap();
        assert_eq!(all.len(), 60);
        let rk = ConjRack(&g);
        assert_eq!(rack_axiom_violations(&rk, &all, 500, 7, 1), 0);
    }
}

//! Abstract finite groups, permutations, and deterministic BFS closure.

use std::fmt::{self, Debug};
use std::hash::Hash;

use rayon::prelude::*;
use rustc_hash::FxHashSet;

use crate::error::{Error, Result};
use crate::matgrp::{Mat, Mats};

pub trait Group: Sync + Send {
    type E: Clone + Eq + Hash + Ord + Send + Sync + Debug;
    fn id(&self) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn inv(&self, a: &Self::E) -> Self::E;

    fn conj(&self, g: &Self::E, x: &Self::E) -> Self::E {
        self.mul(&self.mul(g, x), &self.inv(g))
    }

    fn pow(&self, a: &Self::E, mut e: u64) -> Self::E {
        let mut r = self.id();
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

    /// Order by repeated multiplication.
    fn elem_order(&self, a: &Self::E) -> u64 {
        let id = self.id();
        let mut x = a.clone();
        let mut k = 1;
        while x != id {
            x = self.mul(&x, a);
            k += 1;
        }
        k
    }
}

/// GL/SL as matrices, or PGL/PSL as canonical projective representatives.
#[derive(Clone, Debug)]
pub struct MatGroup {
    pub m: Mats,
    pub projective: bool,
}

impl MatGroup {
    pub fn linear(m: &Mats) -> MatGroup {
        MatGroup { m: m.clone(), projective: false }
    }
    pub fn projective(m: &Mats) -> MatGroup {
        MatGroup { m: m.clone(), projective: true }
    }
    pub fn normalize(&self, a: &Mat) -> Mat {
        if self.projective {
            self.m.canon(a).expect("group elements are invertible")
        } else {
            a.clone()
        }
    }
}

impl Group for MatGroup {
    type E = Mat;
    fn id(&self) -> Mat {
        self.m.identity()
    }
    fn mul(&self, a: &Mat, b: &Mat) -> Mat {
        self.normalize(&self.m.mul(a, b))
    }
    fn inv(&self, a: &Mat) -> Mat {
        self.normalize(&self.m.inv(a).expect("group elements are invertible"))
    }
    fn elem_order(&self, a: &Mat) -> u64 {
        if self.projective {
            self.m.proj_order(a).expect("invertible")
        } else {
            self.m.order(a).expect("invertible")
        }
    }
}

/// A permutation of {0..n-1}; `p.0[i]` is the image of i.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm(pub Vec<u8>);

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm((0..n as u8).collect())
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    /// Functions compose right to left: (a * b)(i) = a(b(i)).
    pub fn compose(&self, b: &Perm) -> Perm {
        Perm(b.0.iter().map(|&i| self.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut r = vec![0u8; self.n()];
        for (i, &j) in self.0.iter().enumerate() {
            r[j as usize] = i as u8;
        }
        Perm(r)
    }

    /// Cycle (a1 a2 ... ak), 1-based points.
    pub fn cycle(n: usize, pts: &[usize]) -> Perm {
        let mut p = Perm::identity(n);
        for w in 0..pts.len() {
            p.0[pts[w] - 1] = (pts[(w + 1) % pts.len()] - 1) as u8;
        }
        p
    }

    /// Product of 1-based cycles, rightmost applied first.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Perm {
        cycles
            .iter()
            .fold(Perm::identity(n), |acc, c| acc.compose(&Perm::cycle(n, c)))
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for s in 0..self.n() {
            if seen[s] {
                continue;
            }
            let mut c = vec![s + 1];
            seen[s] = true;
            let mut x = self.0[s] as usize;
            while x != s {
                seen[x] = true;
                c.push(x + 1);
                x = self.0[x] as usize;
            }
            out.push(c);
        }
        out
    }

    /// Cycle lengths, decreasing.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(|c| c.len()).collect();
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }

    /// Permutation matrix sending basis vector i to basis vector p(i).
    pub fn matrix(&self, m: &Mats) -> Mat {
        let mut a = m.zero();
        for (i, &j) in self.0.iter().enumerate() {
            a.set(j as usize, i, 1);
        }
        a
    }

    pub fn parse(n: usize, s: &str) -> Result<Perm> {
        let s = s.trim();
        if s.is_empty() || s == "()" || s == "id" {
            return Ok(Perm::identity(n));
        }
        let mut p = Perm::identity(n);
        for chunk in s.split(')') {
            let body = chunk.trim().trim_start_matches('(');
            if body.is_empty() {
                continue;
            }
            let pts: Vec<usize> = body
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>().map_err(|_| Error::Parse(s.into())))
                .collect::<Result<_>>()?;
            if pts.iter().any(|&x| x == 0 || x > n) {
                return Err(Error::Parse(format!("point out of range in {s}")));
            }
            p = p.compose(&Perm::cycle(n, &pts));
        }
        Ok(p)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs: Vec<Vec<usize>> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cs.is_empty() {
            return write!(f, "()");
        }
        for c in cs {
            let s: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", s.join(","))?;
        }
        Ok(())
    }
}

impl Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Clone, Debug)]
pub struct SymGroup {
    pub n: usize,
}

impl Group for SymGroup {
    type E = Perm;
    fn id(&self) -> Perm {
        Perm::identity(self.n)
    }
    fn mul(&self, a: &Perm, b: &Perm) -> Perm {
        a.compose(b)
    }
    fn inv(&self, a: &Perm) -> Perm {
        a.inverse()
    }
    fn elem_order(&self, a: &Perm) -> u64 {
        a.cycle_type().iter().fold(1u64, |l, &c| num_integer::lcm(l, c as u64))
    }
}

/// Run `f` on a rayon pool of the given size (0 = rayon default).
pub fn with_workers<R: Send>(workers: usize, f: impl FnOnce() -> R + Send) -> R {
    if workers == 0 {
        return f();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

/// BFS closure of `start` under `next`; returns the sorted orbit.
/// Each frontier is expanded in parallel and merged in sorted order, so the
/// result does not depend on the worker count.
pub fn orbit<T, F>(start: Vec<T>, next: F, cap: usize, workers: usize) -> Result<Vec<T>>
where
    T: Clone + Eq + Hash + Ord + Send + Sync,
    F: Fn(&T) -> Vec<T> + Sync + Send,
{
    with_workers(workers, || {
        let mut seen: FxHashSet<T> = FxHashSet::default();
        let mut frontier: Vec<T> = Vec::new();
        for s in start {
            if seen.insert(s.clone()) {
                frontier.push(s);
            }
        }
        while !frontier.is_empty() {
            let mut cand: Vec<T> = frontier.par_iter().flat_map_iter(|x| next(x)).collect();
            cand.par_sort_unstable();
            cand.dedup();
            frontier = cand.into_iter().filter(|y| !seen.contains(y)).collect();
            for y in &frontier {
                seen.insert(y.clone());
            }
            if seen.len() > cap {
                return Err(Error::Budget(format!("orbit exceeds {cap} elements")));
            }
        }
        let mut out: Vec<T> = seen.into_iter().collect();
        out.par_sort_unstable();
        Ok(out)
    })
}

/// The subgroup generated by `gens`, sorted.
pub fn closure<G: Group>(g: &G, gens: &[G::E], cap: usize, workers: usize) -> Result<Vec<G::E>> {
    orbit(vec![g.id()], |x| gens.iter().map(|s| g.mul(x, s)).collect(), cap, workers)
}

/// Conjugacy class of x under the subgroup generated by `gens`.
pub fn conj_class<G: Group>(g: &G, x: &G::E, gens: &[G::E], cap: usize, workers: usize) -> Result<Vec<G::E>> {
    orbit(vec![x.clone()], |y| gens.iter().map(|s| g.conj(s, y)).collect(), cap, workers)
}

/// Partition `elems` into conjugacy classes under `gens`; classes sorted by least element.
pub fn conj_classes<G: Group>(g: &G, elems: &[G::E], gens: &[G::E], workers: usize) -> Result<Vec<Vec<G::E>>> {
    let mut done: FxHashSet<G::E> = FxHashSet::default();
    let mut out = Vec::new();
    for x in elems {
        if done.contains(x) {
            continue;
        }
        let c = conj_class(g, x, gens, elems.len(), workers)?;
        done.extend(c.iter().cloned());
        out.push(c);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perm_conventions() {
        // (1 2)(2 3): apply (2 3) first, so 2 -> 3 -> 3 and 3 -> 2 -> 1
        let p = Perm::from_cycles(3, &[&[1, 2], &[2, 3]]);
        assert_eq!(p, Perm::cycle(3, &[1, 2, 3]));
        assert_eq!(p.0, vec![1, 2, 0]);
        assert_eq!(p.to_string(), "(1,2,3)");
        assert_eq!(Perm::parse(4, "(1,2)(3 4)").unwrap().to_string(), "(1,2)(3,4)");
    }

    #[test]
    fn symmetric_group_closure() {
        let s = SymGroup { n: 5 };
        let gens = vec![Perm::cycle(5, &[1, 2]), Perm::cycle(5, &[1, 2, 3, 4, 5])];
        let all = closure(&s, &gens, 1000, 1).unwrap();
        assert_eq!(all.len(), 120);
        let classes = conj_classes(&s, &all, &gens, 1).unwrap();
        assert_eq!(classes.len(), 7);
        assert_eq!(classes.iter().map(|c| c.len()).sum::<usize>(), 120);
    }

    #[test]
    fn orbit_independent_of_workers() {
        let s = SymGroup { n: 6 };
        let gens = vec![Perm::cycle(6, &[1, 2]), Perm::cycle(6, &[1, 2, 3, 4, 5, 6])];
        let a = closure(&s, &gens, 1000, 1).unwrap();
        let b = closure(&s, &gens, 1000, 8).unwrap();
        assert_eq!(a, b);
        assert!(closure(&s, &gens, 100, 1).is_err());
    }
}

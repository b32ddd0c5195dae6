//! Brute force at small scale: whole groups, partitions into twisted classes,
//! exact type D decisions and the torus covering check.

use std::collections::BTreeMap;
use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use rustc_hash::{FxHashMap, FxHashSet};
use serde::Serialize;

use crate::autos::{self, twisted_act, Automorphism};
use crate::classifier::{classify_branch, x_branches, Outcome};
use crate::error::{Error, Result};
use crate::ffield::Field;
use crate::group::{closure, orbit, with_workers, Group, MatGroup};
use crate::matgrp::{self, Kind, Mat, Mats};
use crate::rack::{orbit_enumerate, rack_pair_separated, Rack, TwistedRack};
use crate::torus::torus_realize;
use crate::weyl::conjugacy_reps;

pub const DEFAULT_CAP: usize = 10_000_000;
const CACHE_VERSION: u32 = 1;

/// Where group enumerations are cached: `TWRACK_CACHE_DIR` if set.
pub fn cache_dir_from_env() -> Option<PathBuf> {
    std::env::var_os("TWRACK_CACHE_DIR").map(PathBuf::from)
}

/// Generators of PSL_n(q), PSp_n(q) or SO_n(q) as canonical projective matrices.
pub fn projective_generators(m: &Mats, kind: Kind) -> Result<Vec<Mat>> {
    let g = MatGroup::projective(m);
    let gens = match kind {
        Kind::SL => m.sl_generators_small(),
        _ => m.group_generators(kind)?,
    };
    Ok(gens.iter().map(|x| g.normalize(x)).collect())
}

fn cache_path(dir: &Path, kind: Kind, m: &Mats) -> PathBuf {
    let modulus: String = m.f.params().modulus_string().chars().filter(|c| c.is_ascii_alphanumeric()).collect();
    dir.join(format!("{kind:?}-{}-{}-{modulus}.grp", m.n, m.q()))
}

fn header(kind: Kind, m: &Mats, len: usize) -> String {
    format!("twrack-group v{CACHE_VERSION} {kind:?} n={} q={} modulus={} len={len}\n", m.n, m.q(), m.f.params().modulus_string())
}

fn read_cache(path: &Path, kind: Kind, m: &Mats, gens: &[Mat]) -> Option<Vec<Mat>> {
    let mut buf = Vec::new();
    fs::File::open(path).ok()?.read_to_end(&mut buf).ok()?;
    let nl = buf.iter().position(|&b| b == b'\n')?;
    let head = std::str::from_utf8(&buf[..=nl]).ok()?;
    let body = &buf[nl + 1..];
    if body.len() % 16 != 0 || head != header(kind, m, body.len() / 16) {
        return None;
    }
    let elems: Vec<Mat> = body.chunks(16).map(|c| m.unpack(u128::from_le_bytes(c.try_into().expect("16 bytes")))).collect();
    if elems.windows(2).any(|w| w[0] >= w[1]) {
        return None;
    }
    // sampled closure: products with the generators stay inside
    let g = MatGroup::projective(m);
    let step = (elems.len() / 64).max(1);
    for x in elems.iter().step_by(step) {
        for s in gens {
            if elems.binary_search(&g.mul(x, s)).is_err() {
                return None;
            }
        }
    }
    Some(elems)
}

fn write_cache(path: &Path, kind: Kind, m: &Mats, elems: &[Mat]) -> Result<()> {
    let io = |e: std::io::Error| Error::Io(e.to_string());
    if let Some(d) = path.parent() {
        fs::create_dir_all(d).map_err(io)?;
    }
    let tmp = path.with_extension("tmp");
    let mut f = fs::File::create(&tmp).map_err(io)?;
    f.write_all(header(kind, m, elems.len()).as_bytes()).map_err(io)?;
    let mut body = Vec::with_capacity(elems.len() * 16);
    for x in elems {
        body.extend_from_slice(&m.pack(x).to_le_bytes());
    }
    f.write_all(&body).map_err(io)?;
    drop(f);
    fs::rename(&tmp, path).map_err(io)
}

/// All elements of PSL_n(q), PSp_n(q) (n even) or SO_n(q) (n odd), sorted
/// canonical projective matrices, optionally cached on disk.
pub fn enumerate_group(kind: Kind, n: usize, q: u64, cap: usize, cache: Option<&Path>, workers: usize) -> Result<Vec<Mat>> {
    let m = Mats::new(&Field::of_order(q)?, n);
    let gens = projective_generators(&m, kind)?;
    let path = cache.filter(|_| m.packable()).map(|d| cache_path(d, kind, &m));
    if let Some(p) = &path {
        if let Some(e) = read_cache(p, kind, &m, &gens) {
            return Ok(e);
        }
    }
    let elems = closure(&MatGroup::projective(&m), &gens, cap, workers)?;
    if let Some(p) = &path {
        write_cache(p, kind, &m, &elems)?;
    }
    Ok(elems)
}

/// Orbits of g . x = g x psi(g)^{-1} (g over the group generated by `gens`) on
/// a set closed under that action; orbits sorted, ordered by least element.
pub fn twisted_class_partition(elems: &[Mat], gens: &[Mat], psi: &Automorphism, workers: usize) -> Result<Vec<Vec<Mat>>> {
    let index: FxHashMap<&Mat, usize> = elems.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let mut seen = vec![false; elems.len()];
    let mut out = Vec::new();
    for (i, x) in elems.iter().enumerate() {
        if seen[i] {
            continue;
        }
        let o = orbit_enumerate(x, gens, psi, elems.len(), workers)?;
        for y in &o.elements {
            let j = *index
                .get(y)
                .ok_or_else(|| Error::InternalInconsistency("set is not closed under the action".into()))?;
            seen[j] = true;
        }
        out.push(o.elements);
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct Exhaustive<E> {
    pub typed: bool,
    pub witness: Option<(E, E)>,
    /// Pairs (r, s) examined.
    pub pairs: usize,
}

/// Exact type D decision for a finite rack. `reps` must meet every orbit of
/// some group of rack automorphisms of `elems` (for a single twisted class,
/// any one element). A pair r, s is a witness iff r |> (s |> (r |> s)) != s and
/// s is outside the orbit of r under the maps r |>, s |>; then the orbits of
/// r and s form a decomposable subrack.
pub fn exhaustive_typed<R: Rack>(rack: &R, elems: &[R::E], reps: &[R::E], cap: usize, workers: usize) -> Result<Exhaustive<R::E>> {
    if elems.len() > cap {
        return Err(Error::Budget(format!("{} elements exceed the pair-scan cap {cap}", elems.len())));
    }
    let mut pairs = 0;
    for r in reps {
        let hit = with_workers(workers, || {
            elems
                .par_iter()
                .map(|s| -> Result<Option<R::E>> {
                    if s == r || !rack.d_condition(r, s) {
                        return Ok(None);
                    }
                    Ok(rack_pair_separated(rack, r, s, elems.len())?.then(|| s.clone()))
                })
                .collect::<Result<Vec<_>>>()
        })?;
        pairs += elems.len();
        if let Some(s) = hit.into_iter().flatten().next() {
            return Ok(Exhaustive { typed: true, witness: Some((r.clone(), s)), pairs });
        }
    }
    Ok(Exhaustive { typed: false, witness: None, pairs })
}

/// The twisted class of x under PSL_n(q) with psi = theta.
pub fn theta_class(m: &Mats, x: &Mat, cap: usize, workers: usize) -> Result<Vec<Mat>> {
    let psi = Automorphism::theta(m, true);
    let gens = projective_generators(m, Kind::SL)?;
    Ok(orbit_enumerate(x, &gens, &psi, cap, workers)?.elements)
}

// ---------------------------------------------------------------------------

/// Dense index of all n x n matrices over GF(q), for visited marks.
struct Codes {
    q: u64,
    len: usize,
}

impl Codes {
    fn new(m: &Mats) -> Result<Codes> {
        let len = (m.q() as f64).powi((m.n * m.n) as i32);
        if len > 4e9 {
            return Err(Error::TooLarge(format!("q^(n^2) = {len} matrices")));
        }
        Ok(Codes { q: m.q(), len: len as usize })
    }
    fn code(&self, x: &Mat) -> usize {
        x.e.iter().rev().fold(0usize, |acc, &c| acc * self.q as usize + c as usize)
    }
    fn decode(&self, n: usize, mut c: usize) -> Mat {
        let mut e = Vec::with_capacity(n * n);
        for _ in 0..n * n {
            e.push((c % self.q as usize) as u64);
            c /= self.q as usize;
        }
        Mat { n, e }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassRecord {
    pub rep: Mat,
    pub size: usize,
    pub theta_semisimple: bool,
    pub meets_torus: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Theorem51Report {
    pub n: usize,
    pub q: u64,
    pub pgl_order: u64,
    pub classes: usize,
    pub semisimple_classes: usize,
    pub uncovered: Vec<Mat>,
    pub torus_elements: usize,
    pub holds: bool,
}

/// Every theta-semisimple x in PGL_n(q): its PSL_n(q)-twisted class meets
/// one of the realized tori. Scans PGL_n(q) through a dense visited map.
pub fn theorem51_check(n: usize, q: u64, workers: usize) -> Result<Theorem51Report> {
    let (report, _) = theorem51_classes(n, q, workers)?;
    Ok(report)
}

/// The report plus every class record.
pub fn theorem51_classes(n: usize, q: u64, workers: usize) -> Result<(Theorem51Report, Vec<ClassRecord>)> {
    let f = Field::of_order(q)?;
    let m = Mats::new(&f, n);
    let codes = Codes::new(&m)?;
    let psi = Automorphism::theta(&m, true);
    let pg = MatGroup::projective(&m);
    let gens = projective_generators(&m, Kind::SL)?;
    let mut tor: FxHashSet<Mat> = FxHashSet::default();
    for (sig, _) in conjugacy_reps(n)? {
        let rt = torus_realize(&sig, q)?;
        tor.extend(rt.projective_elements(DEFAULT_CAP, workers)?);
    }
    let mut visited = vec![0u64; codes.len.div_ceil(64)];
    let mut records = Vec::new();
    let mut total: u64 = 0;
    for c in 0..codes.len {
        if visited[c / 64] >> (c % 64) & 1 == 1 {
            continue;
        }
        let x = codes.decode(n, c);
        if m.canon(&x).ok().as_ref() != Some(&x) || m.det(&x) == 0 {
            continue;
        }
        let cls = orbit(vec![x.clone()], |y| gens.iter().map(|g| pg.normalize(&twisted_act(&psi, g, y))).collect(), DEFAULT_CAP, workers)?;
        for y in &cls {
            let k = codes.code(y);
            visited[k / 64] |= 1 << (k % 64);
        }
        total += cls.len() as u64;
        let theta_semisimple = autos::is_theta_semisimple(&m, &x)?;
        let meets_torus = cls.iter().any(|y| tor.contains(y));
        records.push(ClassRecord { rep: x, size: cls.len(), theta_semisimple, meets_torus });
    }
    let pgl = matgrp::pgl_order(n as u32, q)?;
    if total != pgl {
        return Err(Error::InternalInconsistency(format!("classes cover {total} of {pgl} elements")));
    }
    let uncovered: Vec<Mat> = records.iter().filter(|r| r.theta_semisimple && !r.meets_torus).map(|r| r.rep.clone()).collect();
    let report = Theorem51Report {
        n,
        q,
        pgl_order: pgl,
        classes: records.len(),
        semisimple_classes: records.iter().filter(|r| r.theta_semisimple).count(),
        holds: uncovered.is_empty(),
        uncovered,
        torus_elements: tor.len(),
    };
    Ok((report, records))
}

// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize)]
pub struct SmallRankClass {
    pub rep: Mat,
    pub size: usize,
    pub typed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SmallRankReport {
    pub n: usize,
    pub q: u64,
    /// What the classifier says about every torus cell.
    pub classifier_all_typed: bool,
    pub classes: Vec<SmallRankClass>,
    /// Theta-semisimple classes found not of type D.
    pub not_typed: Vec<SmallRankClass>,
    pub consistent: bool,
}

/// Exhaustive type D decision on every theta-semisimple twisted class of
/// PGL_n(q) under PSL_n(q), compared with the classifier's cells.
pub fn exhaustive_semisimple(n: usize, q: u64, pair_cap: usize, workers: usize) -> Result<SmallRankReport> {
    let m = Mats::new(&Field::of_order(q)?, n);
    let psi = Automorphism::theta(&m, true);
    let rack = TwistedRack { psi };
    let (_, records) = theorem51_classes(n, q, workers)?;
    let mut classes = Vec::new();
    for r in records.iter().filter(|r| r.theta_semisimple) {
        let cls = theta_class(&m, &r.rep, DEFAULT_CAP, workers)?;
        let ex = exhaustive_typed(&rack, &cls, &cls[..1], pair_cap, workers)?;
        classes.push(SmallRankClass { rep: r.rep.clone(), size: cls.len(), typed: ex.typed });
    }
    let mut classifier_all_typed = true;
    for (sig, _) in conjugacy_reps(n)? {
        for b in x_branches(&sig) {
            classifier_all_typed &= classify_branch(&sig, q, b)?.outcome == Outcome::TypeD;
        }
    }
    let not_typed: Vec<SmallRankClass> = classes.iter().filter(|c| !c.typed).cloned().collect();
    let consistent = !classifier_all_typed || not_typed.is_empty();
    Ok(SmallRankReport { n, q, classifier_all_typed, classes, not_typed, consistent })
}

/// Histogram of twisted class sizes, for reports.
pub fn size_histogram(classes: &[Vec<Mat>]) -> BTreeMap<usize, usize> {
    let mut h = BTreeMap::new();
    for c in classes {
        *h.entry(c.len()).or_insert(0) += 1;
    }
    h
}

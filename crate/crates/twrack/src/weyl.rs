//! The centralizer of w0 in S_n, partitions with sign vectors and their
//! block representatives.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{closure, conj_class, Group, Perm, SymGroup};
use crate::rack::{rack_pair_separated, ConjRack, Rack};

/// A partition lambda of h = floor(n/2) with a sign vector eps.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Signature {
    pub n: usize,
    pub lambda: Vec<usize>,
    pub eps: Vec<u8>,
}

impl Signature {
    pub fn new(n: usize, lambda: Vec<usize>, eps: Vec<u8>) -> Result<Signature> {
        let s = Signature { n, lambda, eps };
        s.validate()?;
        Ok(s)
    }

    pub fn h(&self) -> usize {
        self.n / 2
    }

    pub fn r(&self) -> usize {
        self.lambda.len()
    }

    /// lambda = (1, ..., 1)
    pub fn lambda_is_ones(&self) -> bool {
        self.lambda.iter().all(|&l| l == 1)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidSignature(format!("{self}: {m}")));
        if self.n < 2 {
            return bad("n must be at least 2");
        }
        if self.lambda.iter().sum::<usize>() != self.h() || self.lambda.contains(&0) {
            return bad("parts must be positive and sum to floor(n/2)");
        }
        if self.lambda.windows(2).any(|w| w[0] < w[1]) {
            return bad("parts must be weakly decreasing");
        }
        if self.eps.len() != self.lambda.len() || self.eps.iter().any(|&e| e > 1) {
            return bad("eps must be a 0/1 vector with one entry per part");
        }
        if !eps_admissible(&self.lambda, &self.eps) {
            return bad("eps_j = 0 forces eps_{j+1} = 0 on equal parts");
        }
        Ok(())
    }

    /// Parse `lambda=2,1;eps=1,0` for dimension n.
    pub fn parse(n: usize, s: &str) -> Result<Signature> {
        let mut lambda = None;
        let mut eps = None;
        for part in s.split(';') {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("bad signature {s}")))?;
            let nums: Vec<usize> = v
                .split(',')
                .filter(|t| !t.trim().is_empty())
                .map(|t| t.trim().parse().map_err(|_| Error::Parse(s.into())))
                .collect::<Result<_>>()?;
            match k.trim() {
                "lambda" => lambda = Some(nums),
                "eps" => eps = Some(nums.into_iter().map(|x| x as u8).collect()),
                _ => return Err(Error::Parse(format!("unknown key {k}"))),
            }
        }
        Signature::new(
            n,
            lambda.ok_or_else(|| Error::Parse("missing lambda".into()))?,
            eps.ok_or_else(|| Error::Parse("missing eps".into()))?,
        )
    }

    /// lambda = 1, eps^j = (1^(h-j), 0^j).
    pub fn ones_eps_j(n: usize, j: usize) -> Result<Signature> {
        let h = n / 2;
        if j > h {
            return Err(Error::InvalidSignature(format!("j = {j} > h = {h}")));
        }
        let eps = (0..h).map(|i| if i < h - j { 1 } else { 0 }).collect();
        Signature::new(n, vec![1; h], eps)
    }

    /// Number of zero signs when lambda = 1 (the j of eps^j).
    pub fn eps_j(&self) -> Option<usize> {
        if !self.lambda_is_ones() {
            return None;
        }
        Some(self.eps.iter().filter(|&&e| e == 0).count())
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l: Vec<String> = self.lambda.iter().map(|x| x.to_string()).collect();
        let e: Vec<String> = self.eps.iter().map(|x| x.to_string()).collect();
        write!(f, "lambda={};eps={}", l.join(","), e.join(","))
    }
}

fn eps_admissible(lambda: &[usize], eps: &[u8]) -> bool {
    (0..lambda.len().saturating_sub(1)).all(|j| !(lambda[j] == lambda[j + 1] && eps[j] == 0 && eps[j + 1] != 0))
}

/// (1 n)(2 n-1)...
pub fn longest_element(n: usize) -> Perm {
    let mut p = Perm::identity(n);
    for i in 0..n {
        p.0[i] = (n - 1 - i) as u8;
    }
    p
}

/// Partitions of h in decreasing lexicographic order.
pub fn partitions(h: usize) -> Vec<Vec<usize>> {
    fn rec(left: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..=left.min(max)).rev() {
            cur.push(k);
            rec(left - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(h, h, &mut Vec::new(), &mut out);
    out
}

/// All admissible eps for lambda, in lexicographic order.
pub fn admissible_eps(lambda: &[usize]) -> Vec<Vec<u8>> {
    let r = lambda.len();
    (0..1u32 << r)
        .map(|bits| (0..r).map(|j| ((bits >> (r - 1 - j)) & 1) as u8).collect::<Vec<u8>>())
        .filter(|e| eps_admissible(lambda, e))
        .collect()
}

/// Product over blocks of c_j theta(c_j) s^{eps_j}, with c_j the cycle on the
/// j-th block of 1..h and s the transposition (i_j, n+1-i_j).
pub fn sigma(sig: &Signature) -> Result<Perm> {
    sig.validate()?;
    Ok((0..sig.r()).fold(Perm::identity(sig.n), |w, j| w.compose(&block_element(sig, j))))
}

/// The j-th factor c_j theta(c_j) s^{eps_j}, supported on block j and its mirror.
pub fn block_element(sig: &Signature, j: usize) -> Perm {
    let n = sig.n;
    let w0 = longest_element(n);
    let start = 1 + sig.lambda[..j].iter().sum::<usize>();
    let l = sig.lambda[j];
    let c = Perm::cycle(n, &(start..start + l).collect::<Vec<_>>());
    let block = c.compose(&w0.compose(&c).compose(&w0));
    let i = start + l - 1;
    if sig.eps[j] == 1 {
        block.compose(&Perm::cycle(n, &[i, n + 1 - i]))
    } else {
        block
    }
}

/// One representative per conjugacy class of the centralizer of w0.
pub fn conjugacy_reps(n: usize) -> Result<Vec<(Signature, Perm)>> {
    let mut out = Vec::new();
    for lambda in partitions(n / 2) {
        for eps in admissible_eps(&lambda) {
            let s = Signature::new(n, lambda.clone(), eps)?;
            let w = sigma(&s)?;
            out.push((s, w));
        }
    }
    Ok(out)
}

/// Generators of the centralizer of w0 in S_n.
pub fn w_theta_generators(n: usize) -> Vec<Perm> {
    let h = n / 2;
    let mut g = Vec::new();
    for i in 1..h {
        g.push(Perm::from_cycles(n, &[&[i, i + 1], &[n + 1 - i, n - i]]));
    }
    if h >= 1 {
        g.push(Perm::cycle(n, &[1, n]));
    }
    g
}

/// Decide by exhaustive pair scan whether the S_n-class of the given cycle
/// type is of type D.
pub fn sym_class_typed(n: usize, cycle_type: &[usize]) -> Result<bool> {
    if n > 9 {
        return Err(Error::TooLarge(format!("S_{n}")));
    }
    if cycle_type.iter().sum::<usize>() > n {
        return Err(Error::InvalidSignature(format!("cycle type {cycle_type:?} exceeds {n}")));
    }
    let sn = SymGroup { n };
    let mut pts = 1;
    let mut x = Perm::identity(n);
    for &c in cycle_type {
        if c > 1 {
            x = x.compose(&Perm::cycle(n, &(pts..pts + c).collect::<Vec<_>>()));
        }
        pts += c;
    }
    if n < 2 {
        return Ok(false);
    }
    let mut gens = vec![Perm::cycle(n, &[1, 2])];
    if n > 2 {
        gens.push(Perm::cycle(n, &(1..=n).collect::<Vec<_>>()));
    }
    let class = conj_class(&sn, &x, &gens, 1 << 20, 0)?;
    let rk = ConjRack(&sn);
    // the class is homogeneous, so r can be fixed
    for s in &class {
        if rk.d_condition(&x, s) && rack_pair_separated(&rk, &x, s, class.len())? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Is the class of involutions with j transpositions in S_{2j} (n even) or
/// S_{2j+1} (n odd) of type D? This is the class of w w0 on the points not
/// moved by w = sigma(1, eps^j).
pub fn middle_involution_typed(n: usize, j: usize) -> Result<bool> {
    if j == 0 {
        return Ok(false);
    }
    let m = 2 * j + n % 2;
    if m <= 9 {
        let mut ct = vec![2; j];
        if n % 2 == 1 {
            ct.push(1);
        }
        return sym_class_typed(m, &ct);
    }
    // j >= 5: two members whose product has order 6 (a 6-cycle and a 4-cycle
    // in the union of their matchings)
    let pairs: Vec<Vec<usize>> = (1..=j).map(|i| vec![2 * i - 1, 2 * i]).collect();
    let r = Perm::from_cycles(m, &pairs.iter().map(|v| v.as_slice()).collect::<Vec<_>>());
    let mut sp: Vec<Vec<usize>> = vec![vec![2, 3], vec![4, 5], vec![6, 1], vec![8, 9], vec![10, 7]];
    sp.extend(pairs[5..].iter().cloned());
    let s = Perm::from_cycles(m, &sp.iter().map(|v| v.as_slice()).collect::<Vec<_>>());
    let o = SymGroup { n: m }.elem_order(&r.compose(&s));
    Ok(o % 2 == 0 && o > 4)
}

/// Number of conjugacy classes of the centralizer of w0, by brute force.
pub fn w_theta_class_count(n: usize) -> Result<usize> {
    let sn = SymGroup { n };
    let gens = w_theta_generators(n);
    let all = closure(&sn, &gens, 1 << 20, 1)?;
    Ok(crate::group::conj_classes(&sn, &all, &gens, 1)?.len())
}

pub fn commutes_with_w0(w: &Perm) -> bool {
    let w0 = longest_element(w.n());
    SymGroup { n: w.n() }.mul(w, &w0) == w0.compose(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::conj_classes;
    use crate::rack::involution_typed;

    #[test]
    fn w0_examples() {
        assert_eq!(longest_element(2).to_string(), "(1,2)");
        assert_eq!(longest_element(4).to_string(), "(1,4)(2,3)");
        assert_eq!(longest_element(5).to_string(), "(1,5)(2,4)");
    }

    #[test]
    fn eps_examples() {
        assert_eq!(admissible_eps(&[2]), vec![vec![0], vec![1]]);
        assert_eq!(admissible_eps(&[1, 1]), vec![vec![0, 0], vec![1, 0], vec![1, 1]]);
        assert_eq!(admissible_eps(&[2, 1]).len(), 4);
    }

    #[test]
    fn sigma_examples() {
        let s = |n, l: Vec<usize>, e: Vec<u8>| sigma(&Signature::new(n, l, e).unwrap()).unwrap();
        assert_eq!(s(4, vec![2], vec![0]), Perm::from_cycles(4, &[&[1, 2], &[4, 3]]));
        assert_eq!(s(4, vec![2], vec![1]), Perm::cycle(4, &[1, 2, 4, 3]));
        assert_eq!(s(5, vec![1, 1], vec![0, 0]), Perm::identity(5));
        assert!(Signature::new(4, vec![1, 1], vec![0, 1]).is_err());
    }

    #[test]
    fn class_counts() {
        assert_eq!(conjugacy_reps(4).unwrap().len(), 5);
        assert_eq!(conjugacy_reps(2).unwrap().len(), 2);
        assert_eq!(conjugacy_reps(6).unwrap().len(), 10);
        for n in 2..=9 {
            assert_eq!(conjugacy_reps(n).unwrap().len(), w_theta_class_count(n).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn reps_commute_and_are_pairwise_non_conjugate() {
        for n in 2..=9 {
            let sn = SymGroup { n };
            let gens = w_theta_generators(n);
            let all = closure(&sn, &gens, 1 << 20, 1).unwrap();
            let h = n / 2;
            let mut order = 1;
            for k in 1..=h {
                order *= 2 * k;
            }
            assert_eq!(all.len(), order);
            let classes = conj_classes(&sn, &all, &gens, 1).unwrap();
            let reps = conjugacy_reps(n).unwrap();
            let mut hit = vec![false; classes.len()];
            for (_, w) in &reps {
                assert!(commutes_with_w0(w));
                let c = classes.iter().position(|c| c.binary_search(w).is_ok()).unwrap();
                assert!(!hit[c], "two representatives in one class for n = {n}");
                hit[c] = true;
            }
        }
    }

    #[test]
    fn blocks_are_respected() {
        let sig = Signature::new(8, vec![2, 1, 1], vec![1, 1, 0]).unwrap();
        let w = sigma(&sig).unwrap();
        let mut start = 1;
        for j in 0..sig.r() {
            let wj = block_element(&sig, j);
            let l = sig.lambda[j];
            let pts: Vec<usize> = (start..start + l).flat_map(|i| [i, 9 - i]).collect();
            for x in 1..=8 {
                if pts.contains(&x) {
                    assert_eq!(w.0[x - 1], wj.0[x - 1]);
                } else {
                    assert_eq!(wj.0[x - 1] as usize, x - 1);
                }
            }
            start += l;
        }
    }

    #[test]
    fn symmetric_type_d() {
        assert!(!sym_class_typed(4, &[2, 1, 1]).unwrap());
        // fixed-point-free involutions of S6 and S8 multiply to order at most 4
        assert!(!sym_class_typed(6, &[2, 2, 2]).unwrap());
        assert!(!sym_class_typed(8, &[2, 2, 2, 2]).unwrap());
        assert!(sym_class_typed(7, &[2, 2, 2, 1]).unwrap());
        assert!(!sym_class_typed(2, &[2]).unwrap());
        assert!(sym_class_typed(10, &[2]).is_err());
    }

    #[test]
    fn involution_classes_agree_with_product_orders() {
        for (n, ct) in [(6usize, vec![2usize, 2, 2]), (7, vec![2, 2, 2, 1]), (8, vec![2, 2, 2, 2]), (6, vec![2, 2, 1, 1])] {
            let sn = SymGroup { n };
            let mut pts = Vec::new();
            let mut at = 1;
            for &c in &ct {
                pts.push((at..at + c).collect::<Vec<_>>());
                at += c;
            }
            let cyc: Vec<&[usize]> = pts.iter().map(|v| v.as_slice()).collect();
            let x = Perm::from_cycles(n, &cyc);
            let gens = vec![Perm::cycle(n, &[1, 2]), Perm::cycle(n, &(1..=n).collect::<Vec<_>>())];
            let class = conj_class(&sn, &x, &gens, 1 << 20, 1).unwrap();
            let by_orders = involution_typed(&sn, &x, &class).unwrap().is_some();
            assert_eq!(by_orders, sym_class_typed(n, &ct).unwrap(), "{n} {ct:?}");
        }
    }

    #[test]
    fn middle_classes() {
        assert!(!middle_involution_typed(6, 3).unwrap());
        assert!(!middle_involution_typed(8, 4).unwrap());
        assert!(middle_involution_typed(7, 3).unwrap());
        assert!(middle_involution_typed(9, 4).unwrap());
        assert!(middle_involution_typed(10, 5).unwrap());
        assert!(middle_involution_typed(24, 12).unwrap());
    }

    #[test]
    fn signature_text() {
        let s = Signature::parse(6, "lambda=2,1;eps=1,0").unwrap();
        assert_eq!(s.to_string(), "lambda=2,1;eps=1,0");
        assert_eq!(Signature::ones_eps_j(6, 3).unwrap().eps, vec![0, 0, 0]);
        assert_eq!(Signature::ones_eps_j(6, 1).unwrap().eps, vec![1, 1, 0]);
    }
}

//! Finitely generated abelian groups Z^k / L with Smith normal form.

use crate::arith;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMat {
    pub rows: usize,
    pub cols: usize,
    pub a: Vec<i128>,
}

fn ck(x: Option<i128>) -> Result<i128> {
    x.ok_or(Error::Overflow("integer matrix"))
}

impl IntMat {
    pub fn zeros(rows: usize, cols: usize) -> IntMat {
        IntMat { rows, cols, a: vec![0; rows * cols] }
    }
    pub fn identity(n: usize) -> IntMat {
        let mut m = IntMat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }
    pub fn from_rows(rows: &[Vec<i128>]) -> IntMat {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        IntMat { rows: r, cols: c, a: rows.concat() }
    }
    /// Columns given as vectors.
    pub fn from_cols(cols: &[Vec<i128>], rows: usize) -> IntMat {
        let mut m = IntMat::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, &v) in c.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i128 {
        self.a[i * self.cols + j]
    }
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: i128) {
        self.a[i * self.cols + j] = v;
    }
    pub fn col(&self, j: usize) -> Vec<i128> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }
    pub fn row(&self, i: usize) -> Vec<i128> {
        self.a[i * self.cols..(i + 1) * self.cols].to_vec()
    }
    pub fn transpose(&self) -> IntMat {
        let mut t = IntMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }
    pub fn mul_vec(&self, v: &[i128]) -> Result<Vec<i128>> {
        (0..self.rows)
            .map(|i| {
                (0..self.cols).try_fold(0i128, |s, j| ck(s.checked_add(ck(self.get(i, j).checked_mul(v[j]))?)))
            })
            .collect()
    }
    /// [self | other] side by side.
    pub fn hcat(&self, other: &IntMat) -> IntMat {
        let mut m = IntMat::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j));
            }
            for j in 0..other.cols {
                m.set(i, self.cols + j, other.get(i, j));
            }
        }
        m
    }

    fn col_axpy(&mut self, dst: usize, src: usize, k: i128) -> Result<()> {
        for i in 0..self.rows {
            let v = ck(self.get(i, dst).checked_sub(ck(k.checked_mul(self.get(i, src)))?))?;
            self.set(i, dst, v);
        }
        Ok(())
    }
    fn row_axpy(&mut self, dst: usize, src: usize, k: i128) -> Result<()> {
        for j in 0..self.cols {
            let v = ck(self.get(dst, j).checked_sub(ck(k.checked_mul(self.get(src, j)))?))?;
            self.set(dst, j, v);
        }
        Ok(())
    }
    fn swap_cols(&mut self, a: usize, b: usize) {
        for i in 0..self.rows {
            self.a.swap(i * self.cols + a, i * self.cols + b);
        }
    }
    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.a.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

/// Diagonal of the Smith normal form (absolute values, including zeros for
/// the free part), length min(rows, cols).
pub fn snf_diagonal(m: &IntMat) -> Result<Vec<i128>> {
    let mut a = m.clone();
    let r = a.rows;
    let c = a.cols;
    let t = r.min(c);
    for d in 0..t {
        loop {
            // smallest nonzero entry in the remaining block
            let mut best: Option<(usize, usize)> = None;
            for i in d..r {
                for j in d..c {
                    let v = a.get(i, j).abs();
                    if v != 0 && best.is_none_or(|(bi, bj)| v < a.get(bi, bj).abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                let mut diag: Vec<i128> = (0..t).map(|k| a.get(k, k).abs()).collect();
                normalize_divisibility(&mut diag);
                return Ok(diag);
            };
            a.swap_rows(d, bi);
            a.swap_cols(d, bj);
            let p = a.get(d, d);
            let mut clean = true;
            for i in d + 1..r {
                let q = a.get(i, d) / p;
                if q != 0 {
                    a.row_axpy(i, d, q)?;
                }
                if a.get(i, d) != 0 {
                    clean = false;
                }
            }
            for j in d + 1..c {
                let q = a.get(d, j) / p;
                if q != 0 {
                    a.col_axpy(j, d, q)?;
                }
                if a.get(d, j) != 0 {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // pivot must divide the rest of the block
            let mut fixed = true;
            'scan: for i in d + 1..r {
                for j in d + 1..c {
                    if a.get(i, j) % p != 0 {
                        a.row_axpy(d, i, -1)?;
                        fixed = false;
                        break 'scan;
                    }
                }
            }
            if fixed {
                break;
            }
        }
    }
    let mut diag: Vec<i128> = (0..t).map(|k| a.get(k, k).abs()).collect();
    normalize_divisibility(&mut diag);
    Ok(diag)
}

/// Turn a diagonal into one where each entry divides the next (zeros last).
fn normalize_divisibility(d: &mut [i128]) {
    let n = d.len();
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (d[i], d[j]);
            if a == 0 && b == 0 {
                continue;
            }
            let g = gcd_i(a, b);
            let l = if a == 0 || b == 0 { 0 } else { a / g * b };
            d[i] = g;
            d[j] = l;
        }
    }
}

fn gcd_i(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Columns spanning the integer kernel {x : m x = 0}.
pub fn int_kernel(m: &IntMat) -> Result<IntMat> {
    let mut a = m.clone();
    let c = a.cols;
    let mut u = IntMat::identity(c);
    let mut piv = 0;
    for i in 0..a.rows {
        if piv >= c {
            break;
        }
        loop {
            // column with smallest nonzero |a[i][j]| among j >= piv
            let best = (piv..c).filter(|&j| a.get(i, j) != 0).min_by_key(|&j| a.get(i, j).abs());
            let Some(bj) = best else { break };
            a.swap_cols(piv, bj);
            u.swap_cols(piv, bj);
            let p = a.get(i, piv);
            let mut done = true;
            for j in piv + 1..c {
                let q = a.get(i, j) / p;
                if q != 0 {
                    a.col_axpy(j, piv, q)?;
                    u.col_axpy(j, piv, q)?;
                }
                if a.get(i, j) != 0 {
                    done = false;
                }
            }
            if done {
                piv += 1;
                break;
            }
        }
    }
    let cols: Vec<Vec<i128>> = (piv..c).map(|j| u.col(j)).collect();
    Ok(IntMat::from_cols(&cols, c))
}

/// Z^k modulo the row lattice of `rel`.
#[derive(Clone, Debug)]
pub struct AbelianGroup {
    k: usize,
    rel: IntMat,
}

impl AbelianGroup {
    pub fn cyclic(factors: &[u64]) -> AbelianGroup {
        let k = factors.len();
        let mut rel = IntMat::zeros(k, k);
        for (i, &f) in factors.iter().enumerate() {
            rel.set(i, i, f as i128);
        }
        AbelianGroup { k, rel }
    }

    pub fn from_relations(k: usize, rel: IntMat) -> AbelianGroup {
        assert_eq!(rel.cols, k);
        AbelianGroup { k, rel }
    }

    pub fn rank(&self) -> usize {
        self.k
    }

    pub fn relations(&self) -> &IntMat {
        &self.rel
    }

    /// Invariant factors d1 | d2 | ..., without 1s; 0 marks a free factor.
    pub fn invariant_factors(&self) -> Result<Vec<u64>> {
        let mut d = snf_diagonal(&self.rel)?;
        let free = self.k.saturating_sub(d.len());
        d.extend(std::iter::repeat_n(0, free));
        let mut out: Vec<u64> = d.into_iter().filter(|&x| x != 1).map(|x| x as u64).collect();
        out.sort_by_key(|&x| if x == 0 { u64::MAX } else { x });
        Ok(out)
    }

    pub fn order(&self) -> Result<u64> {
        let f = self.invariant_factors()?;
        if f.contains(&0) {
            return Err(Error::InternalInconsistency("infinite abelian group".into()));
        }
        f.iter().try_fold(1u64, |a, &x| a.checked_mul(x).ok_or(Error::Overflow("group order")))
    }

    pub fn exponent(&self) -> Result<u64> {
        let f = self.invariant_factors()?;
        if f.contains(&0) {
            return Err(Error::InternalInconsistency("infinite abelian group".into()));
        }
        Ok(f.last().copied().unwrap_or(1))
    }

    /// Lattice {c in Z^m : V c in L}, V given by columns (k x m).
    pub fn preimage_lattice(&self, v: &IntMat) -> Result<IntMat> {
        assert_eq!(v.rows, self.k);
        let m = v.cols;
        let mut neg_rt = self.rel.transpose();
        for x in neg_rt.a.iter_mut() {
            *x = -*x;
        }
        let ker = int_kernel(&v.hcat(&neg_rt))?;
        let cols: Vec<Vec<i128>> = (0..ker.cols).map(|j| ker.col(j)[..m].to_vec()).collect();
        Ok(IntMat::from_cols(&cols, m))
    }

    /// Subgroup generated by the columns of `v`, as an abstract group.
    pub fn image(&self, v: &IntMat) -> Result<AbelianGroup> {
        let lat = self.preimage_lattice(v)?;
        Ok(AbelianGroup { k: v.cols, rel: lat.transpose() })
    }

    /// Order of the element with exponent vector `x`.
    pub fn elem_order(&self, x: &[i128]) -> Result<u64> {
        self.image(&IntMat::from_cols(&[x.to_vec()], self.k))?.order()
    }

    /// An element of maximal order in the subgroup generated by the columns
    /// of `v`, built one prime at a time from suitable generator powers.
    pub fn max_order_element(&self, v: &IntMat) -> Result<(Vec<i128>, u64)> {
        let (_, x, e) = self.max_order_combination(v)?;
        Ok((x, e))
    }

    /// As `max_order_element`, also returning the coefficients c with x = V c.
    pub fn max_order_combination(&self, v: &IntMat) -> Result<(Vec<i128>, Vec<i128>, u64)> {
        let e = self.image(v)?.exponent()?;
        let mut acc = vec![0i128; self.k];
        let mut coef = vec![0i128; v.cols];
        for (p, a) in arith::factor(e)? {
            let pa = p.pow(a);
            let mut found = false;
            for j in 0..v.cols {
                let c = v.col(j);
                let o = self.elem_order(&c)?;
                if o % pa == 0 {
                    let k = (o / pa) as i128;
                    for (t, &x) in acc.iter_mut().zip(&c) {
                        *t = ck(t.checked_add(ck(x.checked_mul(k))?))?;
                    }
                    coef[j] = ck(coef[j].checked_add(k))?;
                    found = true;
                    break;
                }
            }
            // the exponent is the lcm of the generator orders
            if !found {
                return Err(Error::InternalInconsistency("no generator of full prime-power order".into()));
            }
        }
        let o = self.elem_order(&acc)?;
        if o != e {
            return Err(Error::InternalInconsistency(format!("built element of order {o}, expected {e}")));
        }
        Ok((coef, acc, e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn snf_small() {
        let m = IntMat::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        assert_eq!(snf_diagonal(&m).unwrap(), vec![2, 6, 12]);
        let z = IntMat::from_rows(&[vec![4, 0], vec![0, 6]]);
        assert_eq!(snf_diagonal(&z).unwrap(), vec![2, 12]);
    }

    #[test]
    fn kernel_is_kernel() {
        let m = IntMat::from_rows(&[vec![2, 3, 5], vec![4, 6, 10]]);
        let k = int_kernel(&m).unwrap();
        assert_eq!(k.cols, 2);
        for j in 0..k.cols {
            assert!(m.mul_vec(&k.col(j)).unwrap().iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn group_queries() {
        let g = AbelianGroup::cyclic(&[4, 6]);
        assert_eq!(g.invariant_factors().unwrap(), vec![2, 12]);
        assert_eq!(g.order().unwrap(), 24);
        assert_eq!(g.exponent().unwrap(), 12);
        assert_eq!(g.elem_order(&[1, 1]).unwrap(), 12);
        assert_eq!(g.elem_order(&[2, 3]).unwrap(), 2);
        // subgroup generated by (2, 0) and (0, 2): Z2 x Z3
        let h = g.image(&IntMat::from_cols(&[vec![2, 0], vec![0, 2]], 2)).unwrap();
        assert_eq!(h.order().unwrap(), 6);
        let (x, o) = g.max_order_element(&IntMat::identity(2)).unwrap();
        assert_eq!(o, 12);
        assert_eq!(g.elem_order(&x).unwrap(), 12);
    }

    #[test]
    fn spread_prime_power() {
        // Z4 x Z4 generated by (1,1) and (1,-1): both order 4
        let g = AbelianGroup::cyclic(&[4, 4]);
        let v = IntMat::from_cols(&[vec![2, 0], vec![0, 2]], 2);
        let (x, o) = g.max_order_element(&v).unwrap();
        assert_eq!(o, 2);
        assert_eq!(g.elem_order(&x).unwrap(), 2);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        // brute-force element count of a cyclic product subgroup
        fn brute_subgroup(factors: &[u64], gens: &[Vec<i128>]) -> (usize, u64) {
            let mut seen = std::collections::BTreeSet::new();
            let zero = vec![0i128; factors.len()];
            seen.insert(zero.clone());
            let mut stack = vec![zero];
            while let Some(x) = stack.pop() {
                for g in gens {
                    let y: Vec<i128> = x.iter().zip(g).zip(factors).map(|((a, b), &f)| (a + b).rem_euclid(f as i128)).collect();
                    if seen.insert(y.clone()) {
                        stack.push(y);
                    }
                }
            }
            let ord = |x: &Vec<i128>| {
                x.iter().zip(factors).fold(1u64, |l, (&a, &f)| num_integer::lcm(l, f / arith::gcd(f, a as u64)))
            };
            let exp = seen.iter().map(ord).fold(1, num_integer::lcm);
            (seen.len(), exp)
        }

        proptest! {
            #[test]
            fn image_matches_brute_force(
                f in prop::collection::vec(1u64..13, 1..4),
                g in prop::collection::vec(prop::collection::vec(0i128..13, 3), 1..4),
            ) {
                let k = f.len();
                let gens: Vec<Vec<i128>> = g.iter().map(|v| v[..k].to_vec()).collect();
                let a = AbelianGroup::cyclic(&f);
                let h = a.image(&IntMat::from_cols(&gens, k)).unwrap();
                let (n, e) = brute_subgroup(&f, &gens);
                prop_assert_eq!(h.order().unwrap(), n as u64);
                prop_assert_eq!(h.exponent().unwrap(), e);
                let (x, o) = a.max_order_element(&IntMat::from_cols(&gens, k)).unwrap();
                prop_assert_eq!(o, e);
                prop_assert_eq!(a.elem_order(&x).unwrap(), e);
            }
        }
    }
}

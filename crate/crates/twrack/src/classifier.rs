//! Decision ladder for theta-twisted classes of theta-semisimple elements of
//! PSL_n(q): either a type D certificate naming the criterion used, or the
//! row of the exception table the class falls into.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ffield;
use crate::torus::{self, OrderWitness};
use crate::weyl::{conjugacy_reps, middle_involution_typed, Signature};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Outcome {
    TypeD,
    PossibleException,
    NotTypeD,
}

/// Which part of a torus the class representative x lies in, as far as the
/// ladder distinguishes them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum XBranch {
    /// The verdict does not depend on x.
    Any,
    /// x theta is not an involution, i.e. theta(x) != x^{-1}.
    NonInvolution,
    /// theta(x) = x^{-1}.
    Involution,
    /// x lies in the theta-twisted PGL-class of 1.
    IdentityCoset,
    /// theta(x) = x^{-1}, x outside the class of 1, h odd: the missing class.
    Missing,
    /// theta(x) = x^{-1}, x outside the class of 1, h even.
    InvolutionOther,
}

impl fmt::Display for XBranch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            XBranch::Any => "any",
            XBranch::NonInvolution => "noninv",
            XBranch::Involution => "inv",
            XBranch::IdentityCoset => "identity",
            XBranch::Missing => "missing",
            XBranch::InvolutionOther => "inv-other",
        };
        f.write_str(s)
    }
}

/// Optional facts about x; `None` means unknown.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct XInfo {
    pub is_identity_coset: Option<bool>,
    pub theta_inverse: Option<bool>,
    pub is_missing_class: Option<bool>,
}

impl XInfo {
    /// Parse `identity,inv,missing` style flags; a leading `!` negates.
    pub fn parse(s: &str) -> Result<XInfo> {
        let mut x = XInfo::default();
        for t in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (neg, name) = match t.strip_prefix('!') {
                Some(r) => (true, r),
                None => (false, t),
            };
            let slot = match name {
                "identity" => &mut x.is_identity_coset,
                "inv" | "theta-inverse" => &mut x.theta_inverse,
                "missing" => &mut x.is_missing_class,
                _ => return Err(Error::Parse(format!("unknown x flag {name}"))),
            };
            *slot = Some(!neg);
        }
        Ok(x)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassDescriptor {
    pub sig: Signature,
    pub q: u64,
    pub x: XInfo,
}

impl ClassDescriptor {
    pub fn new(sig: Signature, q: u64, x: XInfo) -> Result<ClassDescriptor> {
        let c = ClassDescriptor { sig, q, x };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidDescriptor(m));
        self.sig.validate().map_err(|e| Error::InvalidDescriptor(e.to_string()))?;
        match ffield::prime_power(self.q) {
            Some((p, _)) if p != 2 => {}
            _ => return bad(format!("q = {} is not an odd prime power", self.q)),
        }
        if self.sig.n == 2 && self.q == 3 {
            return bad("PSL_2(3) is excluded".into());
        }
        if self.x.is_identity_coset == Some(true) && self.x.theta_inverse == Some(false) {
            return bad("the class of 1 consists of theta-inverted elements".into());
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub outcome: Outcome,
    /// Criterion tag: Tw.1 .. Tw.5, zeta, two-orbits, weyl-j, 5.9, 5.10, 5.12, r2e0, r2e1, oracle.
    pub justification: String,
    pub table_row: Option<String>,
    /// The row is one the table itself marks as only partly exceptional.
    pub soft: bool,
    pub branch: XBranch,
    /// Torus the class is represented in, when the ladder moved it to another one.
    pub redirect: Option<Signature>,
    pub witness: Option<OrderWitness>,
}

impl Verdict {
    fn typed(tag: &str, branch: XBranch, witness: Option<OrderWitness>) -> Verdict {
        Verdict {
            outcome: Outcome::TypeD,
            justification: tag.into(),
            table_row: None,
            soft: false,
            branch,
            redirect: None,
            witness,
        }
    }

    fn exception(row: &str, branch: XBranch) -> Verdict {
        Verdict {
            outcome: Outcome::PossibleException,
            justification: "table".into(),
            table_row: Some(row.into()),
            soft: SOFT_ROWS.contains(&row),
            branch,
            redirect: None,
            witness: None,
        }
    }
}

const SOFT_ROWS: [&str; 2] = ["R1", "R6"];

/// The x-branches the ladder distinguishes for a signature.
pub fn x_branches(sig: &Signature) -> Vec<XBranch> {
    if sig.lambda_is_ones() || sig.r() != 1 || sig.n % 2 == 1 {
        return vec![XBranch::Any];
    }
    if sig.eps[0] == 0 {
        vec![XBranch::NonInvolution, XBranch::Involution]
    } else if sig.h() % 2 == 1 {
        vec![XBranch::NonInvolution, XBranch::IdentityCoset, XBranch::Missing]
    } else {
        vec![XBranch::NonInvolution, XBranch::IdentityCoset, XBranch::InvolutionOther]
    }
}

/// Branches consistent with the known facts about x.
pub fn consistent_branches(sig: &Signature, x: &XInfo) -> Vec<XBranch> {
    x_branches(sig)
        .into_iter()
        .filter(|b| {
            let (inv, ident, missing) = match b {
                XBranch::Any => return true,
                XBranch::NonInvolution => (false, false, false),
                XBranch::Involution => (true, false, false),
                XBranch::IdentityCoset => (true, true, false),
                XBranch::Missing => (true, false, true),
                XBranch::InvolutionOther => (true, false, false),
            };
            let ok = |f: Option<bool>, v: bool| f.is_none_or(|f| f == v);
            // for eps = (0) the involution branch contains the class of 1
            let ident_ok = *b == XBranch::Involution || ok(x.is_identity_coset, ident);
            ok(x.theta_inverse, inv) && ident_ok && ok(x.is_missing_class, missing)
        })
        .collect()
}

/// Classes sitting in the split torus (x = 1 or a diagonal involution): the
/// weyl-j criterion with j = h when the middle class allows it, the split
/// torus bound for q > 5, else the lambda = 1 row.
fn split_torus_class(n: usize, q: u64, branch: XBranch) -> Result<Verdict> {
    let h = n / 2;
    let split = Signature::ones_eps_j(n, h)?;
    let mut v = classify_branch(&split, q, XBranch::Any)?;
    v.branch = branch;
    v.redirect = Some(split);
    Ok(v)
}

fn weyl_j_applies(sig: &Signature) -> Result<bool> {
    let Some(j) = sig.eps_j() else { return Ok(false) };
    let n = sig.n;
    let stated = (n % 2 == 0 && j >= 3) || (n % 2 == 1 && j > 3);
    Ok(stated && middle_involution_typed(n, j)?)
}

/// The ladder for one x-branch.
pub fn classify_branch(sig: &Signature, q: u64, branch: XBranch) -> Result<Verdict> {
    let n = sig.n;
    let h = sig.h();
    let zeta = || torus::zeta_criterion(sig, q);
    let two = || torus::two_orbits_criterion(sig, q);
    if n == 2 {
        // theta is inner on PGL_2 and the gamma image is trivial; exhaustive
        // search finds theta-semisimple classes of PSL_2(q) not of type D
        return Ok(Verdict {
            outcome: Outcome::PossibleException,
            justification: "rank-one".into(),
            table_row: None,
            soft: false,
            branch,
            redirect: None,
            witness: None,
        });
    }
    if !sig.lambda_is_ones() {
        if n % 2 == 1 {
            return Ok(Verdict::typed("Tw.1", branch, zeta()?));
        }
        if sig.r() > 2 {
            return Ok(Verdict::typed("Tw.2", branch, zeta()?));
        }
        if sig.r() == 2 {
            let (l1, l2) = (sig.lambda[0], sig.lambda[1]);
            if sig.eps[0] == 1 {
                return Ok(Verdict::typed("r2e1", branch, None));
            }
            if q > 5 || (q == 5 && l2 > 1) || (q == 3 && l1 > 1 && l2 > 2) {
                return Ok(Verdict::typed("r2e0", branch, two()?));
            }
            return Ok(Verdict::exception("R1", branch));
        }
        // r = 1, lambda = (h), h > 1
        if sig.eps[0] == 0 {
            return match branch {
                XBranch::NonInvolution => {
                    if n == 4 && (q == 3 || q == 7) {
                        Ok(Verdict::exception("R2", branch))
                    } else {
                        Ok(Verdict::typed("5.9", branch, two()?))
                    }
                }
                XBranch::Involution => {
                    if n >= 6 {
                        return split_torus_class(n, q, branch);
                    }
                    if q % 4 == 1 {
                        if q == 5 || q == 9 {
                            Ok(Verdict::exception("R3", branch))
                        } else {
                            split_torus_class(n, q, branch).map(|mut v| {
                                v.justification = "5.9".into();
                                v
                            })
                        }
                    } else if q == 3 || q == 7 {
                        Ok(Verdict::exception("R2", branch))
                    } else {
                        Ok(Verdict::typed("5.10", branch, None))
                    }
                }
                _ => Err(Error::InvalidDescriptor(format!("branch {branch} does not apply to {sig}"))),
            };
        }
        return match branch {
            XBranch::NonInvolution => {
                if n == 4 && (q == 3 || q == 7) {
                    Ok(Verdict::exception("R4", branch))
                } else {
                    Ok(Verdict::typed("5.12", branch, two()?))
                }
            }
            XBranch::IdentityCoset => {
                if n >= 6 || q <= 9 || q % 4 == 1 {
                    split_torus_class(n, q, branch)
                } else {
                    Ok(Verdict::typed("5.10", branch, None))
                }
            }
            XBranch::Missing if h % 2 == 1 => Ok(Verdict::exception("R5", branch)),
            XBranch::InvolutionOther if h % 2 == 0 => Ok(Verdict::typed("5.12", branch, None)),
            _ => Err(Error::InvalidDescriptor(format!("branch {branch} does not apply to {sig}"))),
        };
    }
    // lambda = 1
    if weyl_j_applies(sig)? {
        return Ok(Verdict::typed("weyl-j", branch, None));
    }
    if n != 3 && n != 4 && q > 5 {
        return Ok(Verdict::typed("Tw.3", branch, zeta()?));
    }
    if n == 3 && (q == 9 || q == 11 || q > 13) {
        return Ok(Verdict::typed("Tw.4", branch, zeta()?));
    }
    if n == 4 && q > 9 && q % 4 == 1 {
        return Ok(Verdict::typed("Tw.5", branch, zeta()?));
    }
    let row = if q == 3 || q == 5 {
        "R6"
    } else if n == 3 && (q == 7 || q == 13) {
        "R7"
    } else if n == 4 && q % 4 == 3 {
        "R8"
    } else if n == 4 && q == 9 {
        "R9"
    } else {
        return Err(Error::InternalInconsistency(format!("no rule for {sig} q={q}")));
    };
    Ok(Verdict::exception(row, branch))
}

/// Classify a class; with partial knowledge of x, the weakest verdict over
/// all consistent branches.
pub fn classify(c: &ClassDescriptor) -> Result<Verdict> {
    c.validate()?;
    let branches = consistent_branches(&c.sig, &c.x);
    if branches.is_empty() {
        return Err(Error::InvalidDescriptor(format!("x flags {:?} do not apply to {}", c.x, c.sig)));
    }
    let verdicts: Vec<Verdict> = branches.iter().map(|&b| classify_branch(&c.sig, c.q, b)).collect::<Result<_>>()?;
    if let Some(v) = verdicts.iter().find(|v| v.outcome != Outcome::TypeD) {
        return Ok(v.clone());
    }
    if verdicts.len() == 1 {
        return Ok(verdicts.into_iter().next().unwrap());
    }
    let mut tags: Vec<String> = Vec::new();
    for v in &verdicts {
        if !tags.contains(&v.justification) {
            tags.push(v.justification.clone());
        }
    }
    Ok(Verdict {
        outcome: Outcome::TypeD,
        justification: tags.join("+"),
        table_row: None,
        soft: false,
        branch: XBranch::Any,
        redirect: None,
        witness: None,
    })
}

// ---------------------------------------------------------------------------
// Exception table transcription

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NCond {
    Any,
    Even,
    Eq(usize),
    TwiceOdd,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QCond {
    Any,
    In(Vec<u64>),
    ThreeModFour,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EpsCond {
    Any,
    FirstZero,
    Exactly(Vec<u8>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub id: String,
    pub lambda_ones: bool,
    pub r: Option<usize>,
    pub eps: EpsCond,
    pub n: NCond,
    pub q: QCond,
    /// Branches of x covered; empty means any.
    pub x: Vec<XBranch>,
    pub soft: bool,
}

impl TableRow {
    pub fn matches(&self, n: usize, q: u64, sig: &Signature, b: XBranch) -> bool {
        if sig.lambda_is_ones() != self.lambda_ones {
            return false;
        }
        if self.r.is_some_and(|r| r != sig.r()) {
            return false;
        }
        let eps_ok = match &self.eps {
            EpsCond::Any => true,
            EpsCond::FirstZero => sig.eps[0] == 0,
            EpsCond::Exactly(e) => &sig.eps == e,
        };
        let n_ok = match self.n {
            NCond::Any => true,
            NCond::Even => n % 2 == 0,
            NCond::Eq(m) => n == m,
            NCond::TwiceOdd => n % 4 == 2,
        };
        let q_ok = match &self.q {
            QCond::Any => true,
            QCond::In(v) => v.contains(&q),
            QCond::ThreeModFour => q % 4 == 3,
        };
        let x_ok = self.x.is_empty() || self.x.contains(&b);
        eps_ok && n_ok && q_ok && x_ok
    }
}

/// The exception table, row by row.
pub fn table1_transcription() -> Vec<TableRow> {
    use XBranch::*;
    let row = |id: &str, lambda_ones, r, eps, n, q, x: Vec<XBranch>| TableRow {
        id: id.into(),
        lambda_ones,
        r,
        eps,
        n,
        q,
        x,
        soft: SOFT_ROWS.contains(&id),
    };
    vec![
        row("R1", false, Some(2), EpsCond::FirstZero, NCond::Even, QCond::In(vec![3, 5]), vec![]),
        row("R2", false, Some(1), EpsCond::Exactly(vec![0]), NCond::Eq(4), QCond::In(vec![3, 7]), vec![]),
        row("R3", false, Some(1), EpsCond::Exactly(vec![0]), NCond::Eq(4), QCond::In(vec![5, 9]), vec![Involution]),
        row("R4", false, Some(1), EpsCond::Exactly(vec![1]), NCond::Eq(4), QCond::In(vec![3, 7]), vec![NonInvolution]),
        row("R5", false, Some(1), EpsCond::Exactly(vec![1]), NCond::TwiceOdd, QCond::Any, vec![Missing]),
        row("R6", true, None, EpsCond::Any, NCond::Any, QCond::In(vec![3, 5]), vec![]),
        row("R7", true, None, EpsCond::Any, NCond::Eq(3), QCond::In(vec![7, 13]), vec![]),
        row("R8", true, None, EpsCond::Any, NCond::Eq(4), QCond::ThreeModFour, vec![]),
        row("R9", true, None, EpsCond::Any, NCond::Eq(4), QCond::In(vec![9]), vec![]),
    ]
}

/// Read a table in the JSON layout of `table1_transcription`.
pub fn load_table(json: &str) -> Result<Vec<TableRow>> {
    serde_json::from_str(json).map_err(|e| Error::Parse(format!("table: {e}")))
}

/// A cell of the sweep: dimension, field, torus signature and x-branch.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Cell {
    pub n: usize,
    pub q: u64,
    pub sig: Signature,
    pub branch: XBranch,
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} q={} {} x={}", self.n, self.q, self.sig, self.branch)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepEntry {
    pub cell: Cell,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub n_max: usize,
    pub q_max: u64,
    /// Every exception produced by the ladder, keyed by the torus the class
    /// finally lands in.
    pub exceptions: Vec<SweepEntry>,
    /// Table cells the ladder did not produce, on rows that must be exact.
    pub missing: Vec<Cell>,
    /// Ladder exceptions no table row accounts for.
    pub extra: Vec<Cell>,
    /// Soft-row cells certified type D, with the certifying criterion.
    pub soft_certified: Vec<SweepEntry>,
    pub cells: usize,
}

impl SweepReport {
    pub fn matches(&self) -> bool {
        self.missing.is_empty() && self.extra.is_empty()
    }
}

pub fn odd_prime_powers(q_max: u64) -> Vec<u64> {
    (3..=q_max).filter(|&q| matches!(ffield::prime_power(q), Some((p, _)) if p != 2)).collect()
}

/// All (n, q, signature, branch) cells of the sweep range, n >= 3.
pub fn sweep_cells(n_max: usize, q_max: u64) -> Result<Vec<Cell>> {
    let mut cells = Vec::new();
    for n in 3..=n_max {
        let reps = conjugacy_reps(n)?;
        for &q in &odd_prime_powers(q_max) {
            for (sig, _) in &reps {
                for b in x_branches(sig) {
                    cells.push(Cell { n, q, sig: sig.clone(), branch: b });
                }
            }
        }
    }
    Ok(cells)
}

/// Run the ladder on every cell and compare the exceptions with `table`.
pub fn table1_sweep_against(n_max: usize, q_max: u64, table: &[TableRow], workers: usize) -> Result<SweepReport> {
    let cells = sweep_cells(n_max, q_max)?;
    let entries: Vec<SweepEntry> = crate::group::with_workers(workers, || {
        cells
            .par_iter()
            .map(|c| classify_branch(&c.sig, c.q, c.branch).map(|v| SweepEntry { cell: c.clone(), verdict: v }))
            .collect::<Result<Vec<_>>>()
    })?;
    // an exception moved to another torus counts as a cell of that torus
    let landed = |e: &SweepEntry| match &e.verdict.redirect {
        Some(s) => Cell { n: e.cell.n, q: e.cell.q, sig: s.clone(), branch: XBranch::Any },
        None => e.cell.clone(),
    };
    let mut derived = BTreeSet::new();
    let mut exceptions = Vec::new();
    let mut extra = BTreeSet::new();
    for e in &entries {
        if e.verdict.outcome != Outcome::PossibleException {
            continue;
        }
        let c = landed(e);
        let row = e.verdict.table_row.as_deref().unwrap_or("");
        let ok = table.iter().any(|r| r.id == row && r.matches(c.n, c.q, &c.sig, c.branch));
        if !ok {
            extra.insert(c.clone());
        }
        derived.insert(c.clone());
        exceptions.push(SweepEntry { cell: c, verdict: e.verdict.clone() });
    }
    exceptions.sort_by(|a, b| a.cell.cmp(&b.cell).then(a.verdict.table_row.cmp(&b.verdict.table_row)));
    exceptions.dedup_by(|a, b| a.cell == b.cell);
    let mut missing = Vec::new();
    let mut soft_certified = Vec::new();
    for e in &entries {
        let c = &e.cell;
        let rows: Vec<&TableRow> = table.iter().filter(|r| r.matches(c.n, c.q, &c.sig, c.branch)).collect();
        if rows.is_empty() || derived.contains(c) {
            continue;
        }
        if e.verdict.outcome == Outcome::PossibleException {
            // landed in another torus; that cell is checked on its own
            continue;
        }
        if rows.iter().all(|r| r.soft) {
            soft_certified.push(e.clone());
        } else {
            missing.push(c.clone());
        }
    }
    Ok(SweepReport {
        n_max,
        q_max,
        exceptions,
        missing,
        extra: extra.into_iter().collect(),
        soft_certified,
        cells: entries.len(),
    })
}

pub fn table1_sweep(n_max: usize, q_max: u64, workers: usize) -> Result<SweepReport> {
    table1_sweep_against(n_max, q_max, &table1_transcription(), workers)
}

#[derive(Clone, Debug, Serialize)]
pub struct MainTheoremReport {
    pub n: usize,
    pub q: u64,
    pub holds: bool,
    /// Cells left open; only the missing class when n = 2 mod 4.
    pub exceptions: Vec<Cell>,
}

/// For n >= 5, q >= 7: every cell is type D except the missing class when n = 2 mod 4.
pub fn main_theorem_check(n: usize, q: u64) -> Result<MainTheoremReport> {
    if n < 5 || q < 7 {
        return Err(Error::PreconditionViolated(format!("needs n >= 5 and q >= 7 (n={n}, q={q})")));
    }
    if !matches!(ffield::prime_power(q), Some((p, _)) if p != 2) {
        return Err(Error::PreconditionViolated(format!("q = {q} is not an odd prime power")));
    }
    let mut exceptions = Vec::new();
    let mut holds = true;
    for (sig, _) in conjugacy_reps(n)? {
        for b in x_branches(&sig) {
            let v = classify_branch(&sig, q, b)?;
            if v.outcome != Outcome::TypeD {
                let cell = Cell { n, q, sig: sig.clone(), branch: b };
                if !(n % 4 == 2 && b == XBranch::Missing) {
                    holds = false;
                }
                exceptions.push(cell);
            }
        }
    }
    Ok(MainTheoremReport { n, q, holds, exceptions })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(n: usize, l: &[usize], e: &[u8]) -> Signature {
        Signature::new(n, l.to_vec(), e.to_vec()).unwrap()
    }

    fn cls(n: usize, l: &[usize], e: &[u8], q: u64) -> Verdict {
        classify(&ClassDescriptor::new(sig(n, l, e), q, XInfo::default()).unwrap()).unwrap()
    }

    #[test]
    fn ladder_examples() {
        let v = cls(5, &[2], &[0], 3);
        assert_eq!((v.outcome, v.justification.as_str()), (Outcome::TypeD, "Tw.1"));
        assert!(v.witness.is_some());
        let v = cls(4, &[2], &[0], 3);
        assert_eq!(v.outcome, Outcome::PossibleException);
        assert_eq!(v.table_row.as_deref(), Some("R2"));
        let v = cls(4, &[2], &[1], 3);
        assert_eq!(v.outcome, Outcome::PossibleException);
        assert_eq!(v.table_row.as_deref(), Some("R4"));
    }

    #[test]
    fn split_torus_in_dimension_six() {
        // The middle class (2,2,2) of S_6 is not of type D, so the Weyl group
        // argument does not settle this class; it stays on the soft row.
        let v = cls(6, &[1, 1, 1], &[0, 0, 0], 5);
        assert_eq!(v.outcome, Outcome::PossibleException);
        assert_eq!(v.table_row.as_deref(), Some("R6"));
        assert!(v.soft);
        // for q > 5 the split torus bound takes over
        assert_eq!(cls(6, &[1, 1, 1], &[0, 0, 0], 7).justification, "Tw.3");
        // n = 10 with j = 5 goes through the Weyl group
        assert_eq!(cls(10, &[1; 5], &[0; 5], 5).justification, "weyl-j");
    }

    #[test]
    fn x_info_narrows() {
        let s = sig(4, &[2], &[0]);
        let inv = XInfo { theta_inverse: Some(true), ..Default::default() };
        let non = XInfo { theta_inverse: Some(false), ..Default::default() };
        let v = classify(&ClassDescriptor::new(s.clone(), 5, inv).unwrap()).unwrap();
        assert_eq!(v.table_row.as_deref(), Some("R3"));
        let v = classify(&ClassDescriptor::new(s.clone(), 5, non).unwrap()).unwrap();
        assert_eq!(v.outcome, Outcome::TypeD);
        let s6 = sig(6, &[3], &[1]);
        let miss = XInfo::parse("missing").unwrap();
        let v = classify(&ClassDescriptor::new(s6.clone(), 7, miss).unwrap()).unwrap();
        assert_eq!(v.table_row.as_deref(), Some("R5"));
        let v = classify(&ClassDescriptor::new(s6, 7, XInfo::parse("!missing").unwrap()).unwrap()).unwrap();
        assert_eq!(v.outcome, Outcome::TypeD);
        assert!(ClassDescriptor::new(sig(2, &[1], &[0]), 3, XInfo::default()).is_err());
    }

    #[test]
    fn sweep_small_rows() {
        let r = table1_sweep(5, 13, 1).unwrap();
        let has = |n, q| r.exceptions.iter().any(|e| e.cell.n == n && e.cell.q == q && e.cell.sig.lambda_is_ones());
        assert!(has(3, 7) && has(3, 13));
        let r = table1_sweep(4, 9, 1).unwrap();
        assert!(r.exceptions.iter().any(|e| e.verdict.table_row.as_deref() == Some("R8") && e.cell.q == 7));
        assert!(r.exceptions.iter().any(|e| e.verdict.table_row.as_deref() == Some("R9")));
        let r = table1_sweep(6, 13, 1).unwrap();
        assert!(r.exceptions.iter().any(|e| e.verdict.table_row.as_deref() == Some("R5") && e.cell.n == 6));
    }

    #[test]
    fn golden_table() {
        let r = table1_sweep(8, 13, 0).unwrap();
        assert!(r.missing.is_empty(), "missing {:?}", r.missing);
        assert!(r.extra.is_empty(), "extra {:?}", r.extra);
        // certified soft cells come only from the refinements on the soft rows
        for e in &r.soft_certified {
            assert!(["r2e0", "weyl-j", "Tw.3"].contains(&e.verdict.justification.as_str()), "{}", e.cell);
        }
    }

    #[test]
    fn shipped_json_matches_builtin() {
        let t = load_table(include_str!("../table1.json")).unwrap();
        assert_eq!(t, table1_transcription());
    }

    #[test]
    fn perturbed_table_is_caught() {
        let mut t = table1_transcription();
        t.retain(|r| r.id != "R7");
        let r = table1_sweep_against(4, 13, &t, 1).unwrap();
        assert!(r.extra.iter().any(|c| c.n == 3 && c.q == 7));
        let mut t = table1_transcription();
        t[1].q = QCond::In(vec![3, 7, 11]);
        let r = table1_sweep_against(4, 13, &t, 1).unwrap();
        assert!(r.missing.iter().any(|c| c.n == 4 && c.q == 11));
    }

    #[test]
    fn sweep_deterministic() {
        let a = serde_json::to_string(&table1_sweep(8, 13, 1).unwrap()).unwrap();
        let b = serde_json::to_string(&table1_sweep(8, 13, 8).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn torus_criteria_back_the_torus_tags() {
        for c in sweep_cells(8, 13).unwrap() {
            let v = classify_branch(&c.sig, c.q, c.branch).unwrap();
            if v.redirect.is_none() && ["Tw.1", "Tw.2", "Tw.3", "Tw.4", "Tw.5"].contains(&v.justification.as_str()) {
                assert!(v.witness.is_some(), "{c} {}", v.justification);
            }
        }
    }

    #[test]
    fn rank_one_is_left_open() {
        let v = cls(2, &[1], &[0], 11);
        assert_eq!(v.outcome, Outcome::PossibleException);
        assert_eq!(v.justification, "rank-one");
        assert!(v.table_row.is_none());
    }

    #[test]
    fn main_theorem() {
        let r = main_theorem_check(5, 7).unwrap();
        assert!(r.holds && r.exceptions.is_empty());
        let r = main_theorem_check(6, 7).unwrap();
        assert!(r.holds);
        assert_eq!(r.exceptions.len(), 1);
        assert_eq!(r.exceptions[0].branch, XBranch::Missing);
        for q in [7, 9] {
            let r = main_theorem_check(8, q).unwrap();
            assert!(r.holds && r.exceptions.is_empty(), "q={q}");
        }
        assert!(main_theorem_check(4, 7).is_err());
    }

    #[test]
    fn monotone_in_q() {
        // once a torus-order criterion certifies a cell, larger q of the same residue mod 4 stay
        // certified; n = 3 is excluded since q = 13 is an exception while q = 9, 11 are not
        let qs = odd_prime_powers(31);
        for n in (4..=8).filter(|&n| n != 3) {
            for (s, _) in conjugacy_reps(n).unwrap() {
                for b in x_branches(&s) {
                    for (i, &q) in qs.iter().enumerate() {
                        let v = classify_branch(&s, q, b).unwrap();
                        if !v.justification.starts_with("Tw.") {
                            continue;
                        }
                        for &q2 in &qs[i + 1..] {
                            if q2 % 4 == q % 4 {
                                assert_eq!(classify_branch(&s, q2, b).unwrap().outcome, Outcome::TypeD, "{s} {q}->{q2}");
                            }
                        }
                    }
                }
            }
        }
    }
}

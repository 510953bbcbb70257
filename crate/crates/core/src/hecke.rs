//! The Kazhdan–Lusztig element of the longest word of a dihedral parabolic,
//! specialized at `q = 1`, and the condition it detects.

use crate::coxeter::{enumerate_dihedral, BondOrder, CoxeterSystem, DihedralWord, Leading};
use crate::error::{Error, Result};
use crate::ir::Representation;
use crate::linalg::{self, identity, residual, CMatrix, CVector};

/// `C_{w_rt}` at `q = 1` as a signed sum of `2m` group elements.
#[derive(Debug, Clone, PartialEq)]
pub struct CellElement {
    pub pair: (usize, usize),
    pub m: u32,
    pub terms: Vec<(i32, DihedralWord)>,
}

/// `w_rt - (r_{m-1} + t_{m-1}) + (r_{m-2} + t_{m-2}) - ... + (-1)^m e`.
pub fn cell_element(m: BondOrder, pair: (usize, usize)) -> Result<CellElement> {
    let words = enumerate_dihedral(m, pair)?;
    let m = m.finite().expect("enumerate_dihedral rejects infinite bonds");
    let sign = |len: usize| if (m as usize - len).is_multiple_of(2) { 1 } else { -1 };
    let mut terms: Vec<(i32, DihedralWord)> = Vec::with_capacity(words.len());
    let longest = *words.last().expect("dihedral groups are nonempty");
    terms.push((1, longest));
    for len in (1..m as usize).rev() {
        for leading in [Leading::R, Leading::T] {
            terms.push((sign(len), DihedralWord { pair, length: len, leading }));
        }
    }
    terms.push((sign(0), DihedralWord::identity(pair)));
    Ok(CellElement { pair, m, terms })
}

impl CellElement {
    pub fn render(&self, labels: &[String]) -> String {
        let mut out = String::new();
        for (i, (s, w)) in self.terms.iter().enumerate() {
            let op = if *s > 0 { "+" } else { "-" };
            if i == 0 {
                if *s < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {op} "));
            }
            out.push_str(&w.render(labels));
        }
        out
    }
}

/// Value of the element on a representation of the pair, given by the
/// matrices of `r` (first of `pair`) and `t`.
pub fn apply(elem: &CellElement, mat_r: &CMatrix, mat_t: &CMatrix, tol: f64) -> Result<CMatrix> {
    let n = mat_r.nrows();
    if mat_r.shape() != (n, n) || mat_t.shape() != (n, n) {
        return Err(Error::Dimension("generator matrices must be square of equal size".into()));
    }
    let id = identity(n);
    for (g, name) in [(mat_r, "r"), (mat_t, "t")] {
        if residual(&(g * g), &id) > tol * linalg::max_abs(g).max(1.0) {
            return Err(Error::NotInvolution(name.into()));
        }
    }
    let mut total = CMatrix::zeros(n, n);
    for (sign, word) in &elem.terms {
        let mut p = id.clone();
        for letter in word.letters() {
            p *= if letter == elem.pair.0 { mat_r } else { mat_t };
        }
        total += p * linalg::real(f64::from(*sign));
    }
    Ok(total)
}

#[derive(Debug, Clone, PartialEq)]
pub enum A1Verdict {
    Pass,
    Violation { pair: (usize, usize), witness: CVector },
}

/// Looks for a nonzero `v` with `r v = t v = -v` on a finite bond.
pub fn check_a1(rep: &Representation, system: &CoxeterSystem, tol: f64) -> A1Verdict {
    for (r, t) in system.pairs() {
        if system.bond(r, t).is_infinite() {
            continue;
        }
        if let Some(witness) = joint_minus_one(rep, r, t, tol).into_iter().next() {
            return A1Verdict::Violation { pair: (r, t), witness };
        }
    }
    A1Verdict::Pass
}

fn joint_minus_one(rep: &Representation, r: usize, t: usize, tol: f64) -> Vec<CVector> {
    let id = identity(rep.dim());
    let stacked = linalg::vstack(&[rep.gen(r) + &id, rep.gen(t) + &id]);
    linalg::null_space(&stacked, tol)
}

/// Both sides of the cell criterion on one pair: whether `C_{w_rt}` acts by
/// zero, and whether the joint `(-1)`-eigenspace is trivial.
pub fn pair_cross_check(
    rep: &Representation,
    system: &CoxeterSystem,
    r: usize,
    t: usize,
    tol: f64,
) -> Result<(bool, bool)> {
    let elem = cell_element(system.bond(r, t), (r, t))?;
    let value = apply(&elem, rep.gen(r), rep.gen(t), tol)?;
    let vanishes = linalg::max_abs(&value) <= tol * 2.0 * f64::from(elem.m) * scale(rep, r, t);
    let a1 = joint_minus_one(rep, r, t, tol).is_empty();
    Ok((vanishes, a1))
}

fn scale(rep: &Representation, r: usize, t: usize) -> f64 {
    let rt = rep.gen(r) * rep.gen(t);
    linalg::max_abs(&rt).max(1.0)
}

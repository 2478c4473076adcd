//! Frobenius functionals: the symbolic Pfaffian of ∂α, a deterministic
//! certificate search, and the orbital rank of a linear form.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lie::LieAlgebra;
use crate::matrix::{Matrix, MatrixQ};
use crate::mvpoly::MultiPoly;
use crate::scalar::Rational;

/// A linear form on a Lie algebra, in the dual basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearForm {
    pub coeffs: Vec<Rational>,
}

impl LinearForm {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        LinearForm { coeffs }
    }

    /// The dual basis vector e_i^* (0-based).
    pub fn dual_basis(dim: usize, i: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); dim];
        coeffs[i] = Rational::one();
        LinearForm { coeffs }
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn apply(&self, v: &[Rational]) -> Rational {
        self.coeffs.iter().zip(v).map(|(a, b)| a * b).sum()
    }
}

/// S(α) with entries S_ij = −α([e_i, e_j]).
pub fn dalpha_matrix(g: &LieAlgebra, alpha: &LinearForm) -> Result<MatrixQ> {
    if alpha.dim() != g.dim() {
        return Err(Error::DimensionMismatch(format!(
            "form of length {} on an algebra of dimension {}",
            alpha.dim(),
            g.dim()
        )));
    }
    Ok(Matrix::from_fn(g.dim(), g.dim(), |i, j| -alpha.apply(&g.bracket_basis(i, j))))
}

/// Pfaffian of S(α) as a polynomial in α_1 … α_dim; zero for odd dim.
pub fn pfaffian_of_dalpha(g: &LieAlgebra) -> MultiPoly {
    let d = g.dim();
    if d % 2 == 1 {
        return MultiPoly::zero(d);
    }
    assert!(d <= 64, "Pfaffian expansion supports dimension up to 64");
    let entry: Vec<Vec<MultiPoly>> = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| {
                    let v = g.bracket_basis(i, j);
                    v.iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .fold(MultiPoly::zero(d), |acc, (k, c)| &acc - &MultiPoly::var(d, k).scale(c))
                })
                .collect()
        })
        .collect();
    let full: u64 = if d == 64 { u64::MAX } else { (1u64 << d) - 1 };
    let mut memo: HashMap<u64, MultiPoly> = HashMap::new();
    pf_rec(full, &entry, d, &mut memo)
}

fn pf_rec(mask: u64, s: &[Vec<MultiPoly>], d: usize, memo: &mut HashMap<u64, MultiPoly>) -> MultiPoly {
    if mask == 0 {
        return MultiPoly::constant(d, Rational::one());
    }
    if let Some(p) = memo.get(&mask) {
        return p.clone();
    }
    let first = mask.trailing_zeros() as usize;
    let rest = mask & !(1u64 << first);
    let mut acc = MultiPoly::zero(d);
    let mut pos = 1usize;
    let mut bits = rest;
    while bits != 0 {
        let j = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        pos += 1;
        if s[first][j].is_zero() {
            continue;
        }
        let sub = pf_rec(rest & !(1u64 << j), s, d, memo);
        if sub.is_zero() {
            continue;
        }
        let term = &s[first][j] * &sub;
        acc = if pos.is_multiple_of(2) { &acc + &term } else { &acc - &term };
    }
    memo.insert(mask, acc.clone());
    acc
}

/// Outcome of the Frobenius decision.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum FrobeniusVerdict {
    /// `certificate` has nonzero Pfaffian `pfaffian_value`.
    Frobenius {
        certificate: LinearForm,
        pfaffian_value: Rational,
    },
    /// The Pfaffian is the zero polynomial (or the dimension is odd).
    NotFrobenius,
}

impl FrobeniusVerdict {
    pub fn is_frobenius(&self) -> bool {
        matches!(self, FrobeniusVerdict::Frobenius { .. })
    }
}

/// Integer vectors of length m with |x|₁ = t, in a fixed order: larger
/// absolute values in earlier coordinates first, positive before negative.
/// For t = 1 this gives e_1, −e_1, e_2, −e_2, ….
fn l1_shell(m: usize, t: u32) -> Vec<Vec<i64>> {
    fn rec(pos: usize, m: usize, left: u32, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if pos == m {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let range: Vec<u32> = if pos == m - 1 { vec![left] } else { (0..=left).rev().collect() };
        for a in range {
            let signs: &[i64] = if a == 0 { &[1] } else { &[1, -1] };
            for &sg in signs {
                cur.push(sg * a as i64);
                rec(pos + 1, m, left - a, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(0, m, t, &mut Vec::with_capacity(m), &mut out);
    out
}

/// Searches integer points of growing L1 norm, restricted to the
/// variables the polynomial uses, for one where `p` does not vanish.
/// Returns `None` only for the zero polynomial.
pub fn nonvanishing_point(p: &MultiPoly) -> Option<Vec<Rational>> {
    if p.is_zero() {
        return None;
    }
    let vars: Vec<usize> = p.variables_used().into_iter().collect();
    let mut point = vec![Rational::zero(); p.nvars()];
    if vars.is_empty() {
        return Some(point);
    }
    for t in 1.. {
        for x in l1_shell(vars.len(), t) {
            for (v, &xi) in vars.iter().zip(&x) {
                point[*v] = Rational::from_integer(xi);
            }
            if !p.eval(&point).is_zero() {
                return Some(point);
            }
        }
    }
    unreachable!("a nonzero polynomial does not vanish on all integer points")
}

/// Decides whether `g` is Frobenius. A positive answer carries a linear
/// form with nonzero Pfaffian; a negative one means the Pfaffian is
/// identically zero.
pub fn frobenius_decide(g: &LieAlgebra) -> FrobeniusVerdict {
    let pf = pfaffian_of_dalpha(g);
    match nonvanishing_point(&pf) {
        None => FrobeniusVerdict::NotFrobenius,
        Some(point) => {
            let pfaffian_value = pf.eval(&point);
            FrobeniusVerdict::Frobenius {
                certificate: LinearForm::new(point),
                pfaffian_value,
            }
        }
    }
}

/// True when ∂α is nondegenerate.
pub fn is_frobenius_functional(g: &LieAlgebra, alpha: &LinearForm) -> Result<bool> {
    if g.dim() % 2 == 1 {
        return Ok(false);
    }
    Ok(dalpha_matrix(g, alpha)?.rank() == g.dim())
}

/// Rank of the orbital map a ↦ −α∘a on span(B), for α a form on ℚⁿ.
pub fn open_orbit_rank(b: &[MatrixQ], alpha: &LinearForm) -> Result<usize> {
    let n = alpha.dim();
    let mut rows = Vec::with_capacity(b.len());
    for m in b {
        if m.rows() != n || m.cols() != n {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} generator for a form on dimension {n}",
                m.rows(),
                m.cols()
            )));
        }
        rows.push(
            (0..n)
                .map(|j| -(0..n).map(|i| &alpha.coeffs[i] * m.get(i, j)).sum::<Rational>())
                .collect::<Vec<_>>(),
        );
    }
    if rows.is_empty() {
        return Ok(0);
    }
    Ok(Matrix::from_rows(rows)?.rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::semidirect_sum;
    use crate::matrix::power_basis;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    #[test]
    fn aff_pfaffian() {
        let aff = semidirect_sum(&[MatrixQ::identity(1)], 1).unwrap();
        let pf = pfaffian_of_dalpha(&aff);
        assert_eq!(pf, -MultiPoly::var(2, 1));
        match frobenius_decide(&aff) {
            FrobeniusVerdict::Frobenius { certificate, pfaffian_value } => {
                assert_eq!(certificate.coeffs, vec![q(0), q(1)]);
                assert_eq!(pfaffian_value, q(-1));
            }
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn shells_start_with_units() {
        assert_eq!(l1_shell(2, 1), vec![vec![1, 0], vec![-1, 0], vec![0, 1], vec![0, -1]]);
        assert_eq!(l1_shell(3, 2).len(), 18);
    }

    #[test]
    fn pfaffian_squared_is_determinant() {
        let mut m0 = MatrixQ::zeros(3, 3);
        m0.set(0, 1, q(1));
        m0.set(1, 2, q(1));
        let g = semidirect_sum(&power_basis(&m0).unwrap(), 3).unwrap();
        let pf = pfaffian_of_dalpha(&g);
        assert!(pf.is_homogeneous(3));
        for a in [[1, 2, 3, 4, 5, 6], [0, -1, 2, 0, 1, 7]] {
            let alpha = LinearForm::new(a.iter().map(|&x| q(x)).collect());
            let v = pf.eval(&alpha.coeffs);
            assert_eq!(&v * &v, dalpha_matrix(&g, &alpha).unwrap().det().unwrap());
        }
        // with the standard basis of V it is ẽ1^* that works, not ẽ3^*
        assert!(is_frobenius_functional(&g, &LinearForm::dual_basis(6, 3)).unwrap());
        assert!(!is_frobenius_functional(&g, &LinearForm::dual_basis(6, 5)).unwrap());
    }

    #[test]
    fn odd_and_degenerate() {
        let g = crate::lie::LieAlgebra::abelian(3);
        assert_eq!(frobenius_decide(&g), FrobeniusVerdict::NotFrobenius);
        // B_3 = span{I, E13, E23}
        let b = vec![MatrixQ::identity(3), MatrixQ::unit(3, 0, 2), MatrixQ::unit(3, 1, 2)];
        let g = semidirect_sum(&b, 3).unwrap();
        assert!(pfaffian_of_dalpha(&g).is_zero());
        for i in 0..3 {
            assert!(open_orbit_rank(&b, &LinearForm::dual_basis(3, i)).unwrap() <= 2);
        }
    }
}

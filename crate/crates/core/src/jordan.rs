//! Exact Jordan forms of nonderogatory rational matrices.
//!
//! Each primary component ker f(M)^e gets a Krylov basis
//! ē_j = M^{k−j} x̄, in which M acts by a companion-type matrix M̃. A second
//! change of basis P with M̃P = PJ then brings the block to its normal form:
//! the binomial lower-triangular P for a real eigenvalue, the linear
//! recurrences for a complex pair. Complex pairs with irrational imaginary
//! part are handled over ℚ(√d), and the result is checked exactly.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{Matrix, MatrixQ, Subspace};
use crate::mvpoly::MultiPoly;
use crate::nonderog::{is_nonderogatory, rotation_part, shift_by_two};
use crate::poly::PolyQ;
use crate::scalar::{is_square_rational, squarefree_split, ExactScalar, Field, QuadExt, Rational, Ring};

/// Which normal form a block takes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum JordanCase {
    /// Real eigenvalue of multiplicity ≥ 2: λI + Σ E_{i,i+1}.
    A,
    /// Simple complex pair: [[r, −s], [s, r]].
    B,
    /// Complex pair of multiplicity ≥ 2: rI + sM_s + M_n.
    C,
    /// Simple real eigenvalue.
    #[serde(rename = "diag")]
    Diag,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Eigenvalue {
    Real { lambda: Rational },
    /// r ± is with s > 0.
    Complex { r: Rational, s_squared: Rational },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JordanBlock {
    pub case: JordanCase,
    pub eigenvalue: Eigenvalue,
    /// Number of rows of the block.
    pub size: usize,
    /// det of the block's P in the Krylov basis.
    pub det_p: ExactScalar,
}

/// J and P over the smallest field that holds them.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "field", rename_all = "lowercase")]
pub enum JordanMatrices {
    Rational { j: MatrixQ, p: MatrixQ },
    /// Entries in ℚ(√d).
    Quadratic { d: Rational, j: Matrix<QuadExt>, p: Matrix<QuadExt> },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct JordanResult {
    /// Always "P^-1 M P = J".
    pub convention: &'static str,
    pub blocks: Vec<JordanBlock>,
    pub matrices: JordanMatrices,
    /// det of the full change of basis P.
    pub det_p: ExactScalar,
}

pub const CONVENTION: &str = "P^-1 M P = J";

impl JordanResult {
    pub fn case_tags(&self) -> Vec<JordanCase> {
        self.blocks.iter().map(|b| b.case).collect()
    }
}

// ---------------------------------------------------------------------------
// Formulas over an arbitrary ring

/// Coefficients of ((X − r)² + s²)^m, constant term first.
pub fn complex_char_coeffs<R: Ring>(r: &R, s: &R, m: usize) -> Vec<R> {
    let one = r.one_like();
    let quad = [r.clone() * r + &(s.clone() * s), -(r.clone() + r), one.clone()];
    let mut acc = vec![one];
    for _ in 0..m {
        let mut next = vec![r.zero_like(); acc.len() + 2];
        for (i, a) in acc.iter().enumerate() {
            for (j, b) in quad.iter().enumerate() {
                next[i + j] = next[i + j].clone() + &(a.clone() * b);
            }
        }
        acc = next;
    }
    acc
}

/// Coefficients of (X − λ)^n, constant term first.
pub fn real_char_coeffs<R: Ring>(lambda: &R, n: usize) -> Vec<R> {
    let lin = [-lambda.clone(), lambda.one_like()];
    let mut acc = vec![lambda.one_like()];
    for _ in 0..n {
        let mut next = vec![lambda.zero_like(); acc.len() + 1];
        for (i, a) in acc.iter().enumerate() {
            for (j, b) in lin.iter().enumerate() {
                next[i + j] = next[i + j].clone() + &(a.clone() * b);
            }
        }
        acc = next;
    }
    acc
}

/// M̃ = Σ E_{j,j+1} − Σ_j D_{n−j} E_{j,1}: the matrix of M in the basis
/// ē_j = M^{n−j} x̄, given the monic characteristic coefficients D.
pub fn krylov_companion<R: Ring>(chi: &[R]) -> Result<Matrix<R>> {
    let n = chi
        .len()
        .checked_sub(1)
        .filter(|&n| n > 0)
        .ok_or_else(|| Error::InvalidArgument("need a polynomial of positive degree".into()))?;
    let z = chi[0].zero_like();
    let one = z.one_like();
    Ok(Matrix::from_fn(n, n, |i, j| {
        if j == 0 {
            -chi[n - 1 - i].clone()
        } else if j == i + 1 {
            one.clone()
        } else {
            z.clone()
        }
    }))
}

/// Binomial coefficients C(a, b) for a, b ≤ n, built by addition.
fn pascal<R: Ring>(n: usize, one: &R) -> Vec<Vec<R>> {
    let mut rows: Vec<Vec<R>> = Vec::with_capacity(n + 1);
    for a in 0..=n {
        let mut row = vec![one.zero_like(); n + 1];
        row[0] = one.clone();
        for b in 1..=a {
            row[b] = rows[a - 1][b - 1].clone() + &rows[a - 1][b];
        }
        rows.push(row);
    }
    rows
}

/// p_{kl} = (−1)^{k−l} λ^{k−l} C(n−l, k−l) for k ≥ l, else 0 (1-based).
/// Solves M̃_λ P = P(λI + Σ E_{i,i+1}); unit lower triangular.
pub fn case_a_p<R: Ring>(n: usize, lambda: &R) -> Matrix<R> {
    let one = lambda.one_like();
    let c = pascal(n, &one);
    let mut pows = vec![one.clone()];
    for i in 1..n {
        pows.push(pows[i - 1].clone() * &(-lambda.clone()));
    }
    Matrix::from_fn(n, n, |k, l| {
        if k < l {
            one.zero_like()
        } else {
            // 0-based: n−l becomes n−1−l
            pows[k - l].clone() * &c[n - 1 - l][k - l]
        }
    })
}

/// λI + Σ E_{i,i+1}.
pub fn case_a_j<R: Ring>(n: usize, lambda: &R) -> Matrix<R> {
    Matrix::from_fn(n, n, |i, j| {
        if i == j {
            lambda.clone()
        } else if j == i + 1 {
            lambda.one_like()
        } else {
            lambda.zero_like()
        }
    })
}

/// rI + sM_s + M_n.
pub fn case_c_j<R: Ring>(n: usize, r: &R, s: &R) -> Result<Matrix<R>> {
    let ms = rotation_part(n)?;
    let mn = shift_by_two(n)?;
    let lift = |q: &Rational| -> R {
        match q.to_i64() {
            Some(k) => r.from_i64_like(k),
            None => unreachable!("M_s and M_n have integer entries"),
        }
    };
    Ok(Matrix::from_fn(n, n, |i, j| {
        let mut v = lift(ms.get(i, j)) * s + &lift(mn.get(i, j));
        if i == j {
            v = v + r;
        }
        v
    }))
}

/// The P of the complex case from the linear recurrences, with first row
/// (p11, p12, 0, …, 0). Solves M̃_z P = P(rI + sM_s + M_n).
pub fn complex_block_p<R: Ring>(n: usize, r: &R, s: &R, p11: &R, p12: &R) -> Result<Matrix<R>> {
    if n == 0 || n % 2 == 1 {
        return Err(Error::InvalidArgument(format!("complex block size {n} must be even and positive")));
    }
    let d = complex_char_coeffs(r, s, n / 2);
    let z = r.zero_like();
    let mut p = vec![vec![z.clone(); n]; n];
    p[0][0] = p11.clone();
    p[0][1] = p12.clone();
    for k in 0..n - 1 {
        // 1-based row k+1 → k+2 uses D_{n,n−(k+1)}
        let dk = &d[n - 1 - k];
        let (a, b) = (p[k][0].clone(), p[k][1].clone());
        p[k + 1][0] = p[0][0].clone() * dk + &(r.clone() * &a) + &(s.clone() * &b);
        p[k + 1][1] = p[0][1].clone() * dk + &(r.clone() * &b) - s.clone() * &a;
        for c in (2..n).step_by(2) {
            let (a, b) = (p[k][c].clone(), p[k][c + 1].clone());
            p[k + 1][c] = p[0][c].clone() * dk + &(r.clone() * &a) + &(s.clone() * &b) + &p[k][c - 2];
            p[k + 1][c + 1] = p[0][c + 1].clone() * dk + &(r.clone() * &b) - s.clone() * &a + &p[k][c - 1];
        }
    }
    Matrix::from_rows(p)
}

fn require_even_4(n: usize) -> Result<()> {
    if n < 4 || n % 2 == 1 {
        return Err(Error::InvalidArgument(format!("q_n needs an even n >= 4, got {n}")));
    }
    Ok(())
}

/// q_4 = 4 and q_n = (−1)^{n/2}(n/2 − 1)^n for even n > 4, as published.
/// Agrees with the determinant only for n = 4, 6, 10; see [`q_n_corrected`].
pub fn q_n(n: usize) -> Result<Rational> {
    require_even_4(n)?;
    if n == 4 {
        return Ok(Rational::from_integer(4));
    }
    let base = Rational::from_integer(n as i64 / 2 - 1).pow(n as i32);
    Ok(if (n / 2) % 2 == 1 { -base } else { base })
}

/// q_n = (−1)^{n/2}·2^{(n/2)(n/2−1)}, which is what the recurrence gives.
pub fn q_n_corrected(n: usize) -> Result<Rational> {
    require_even_4(n)?;
    let m = n / 2;
    let base = Rational::from_integer(2).pow((m * (m - 1)) as i32);
    Ok(if m % 2 == 1 { -base } else { base })
}

/// Variables of the symbolic complex-case computations.
pub const SYMBOLIC_VARS: [&str; 4] = ["r", "s", "p11", "p12"];

fn first_row(fixed: Option<&(Rational, Rational)>) -> (MultiPoly, MultiPoly) {
    match fixed {
        Some((a, b)) => (MultiPoly::constant(4, a.clone()), MultiPoly::constant(4, b.clone())),
        None => (MultiPoly::var(4, 2), MultiPoly::var(4, 3)),
    }
}

/// The complex-case P over ℚ[r, s, p11, p12]. With `fixed`, p11 and p12
/// are those constants instead of variables.
pub fn symbolic_complex_p(n: usize, fixed: Option<&(Rational, Rational)>) -> Result<Matrix<MultiPoly>> {
    let (p11, p12) = first_row(fixed);
    complex_block_p(n, &MultiPoly::var(4, 0), &MultiPoly::var(4, 1), &p11, &p12)
}

/// s^{n²/4}(p11² + p12²)^{n/2} q_n over ℚ[r, s, p11, p12], with the
/// published q_n.
pub fn det_formula(n: usize, fixed: Option<&(Rational, Rational)>) -> Result<MultiPoly> {
    det_formula_with(n, fixed, &q_n(n)?)
}

/// As [`det_formula`] with [`q_n_corrected`].
pub fn det_formula_corrected(n: usize, fixed: Option<&(Rational, Rational)>) -> Result<MultiPoly> {
    det_formula_with(n, fixed, &q_n_corrected(n)?)
}

fn det_formula_with(n: usize, fixed: Option<&(Rational, Rational)>, q: &Rational) -> Result<MultiPoly> {
    let s_pow = MultiPoly::var(4, 1).pow((n * n / 4) as u32);
    let (a, b) = first_row(fixed);
    let norm = &(&a * &a) + &(&b * &b);
    Ok((&s_pow * &norm.pow(n as u32 / 2)).scale(q))
}

/// Determinant of the recurrence P and the published closed formula, at a
/// point.
pub fn det_formula_check(
    n: usize,
    r: &Rational,
    s: &Rational,
    p11: &Rational,
    p12: &Rational,
) -> Result<(Rational, Rational)> {
    let p = complex_block_p(n, r, s, p11, p12)?;
    let formula = s.pow((n * n / 4) as i32) * (p11 * p11 + p12 * p12).pow(n as i32 / 2) * q_n(n)?;
    Ok((p.det()?, formula))
}

// ---------------------------------------------------------------------------
// Jordanization

/// A field that can hold the Jordan data of a given matrix.
trait JordanField: Field {
    fn lift(&self, q: &Rational) -> Self {
        self.from_rational_like(q)
    }
    /// The positive square root of `q` in this field.
    fn sqrt_rational(&self, q: &Rational) -> Result<Self>;
    fn to_exact(&self) -> ExactScalar;
}

impl JordanField for Rational {
    fn sqrt_rational(&self, q: &Rational) -> Result<Self> {
        is_square_rational(q)?.ok_or_else(|| Error::MultipleExtensions(format!("sqrt({q}) is irrational")))
    }
    fn to_exact(&self) -> ExactScalar {
        ExactScalar::Rational(self.clone())
    }
}

impl JordanField for QuadExt {
    fn sqrt_rational(&self, q: &Rational) -> Result<Self> {
        let (k, free) = squarefree_split(q)?;
        let free = Rational::from_bigint(free);
        if free.is_one() {
            return Ok(self.lift(&k));
        }
        if free != self.d {
            return Err(Error::MultipleExtensions(format!("sqrt({}) and sqrt({free})", self.d)));
        }
        QuadExt::new(Rational::zero(), k, self.d.clone())
    }
    fn to_exact(&self) -> ExactScalar {
        ExactScalar::Quad(self.clone()).normalized()
    }
}

/// A primary component with its Krylov basis, before choosing a field.
struct Component {
    eigenvalue: Eigenvalue,
    /// Multiplicity of the irreducible factor.
    mult: usize,
    /// Columns ē_1 … ē_k in standard coordinates.
    krylov: Vec<Vec<Rational>>,
}

impl Component {
    fn size(&self) -> usize {
        self.krylov.len()
    }

    fn case(&self) -> JordanCase {
        match (&self.eigenvalue, self.mult) {
            (Eigenvalue::Real { .. }, 1) => JordanCase::Diag,
            (Eigenvalue::Real { .. }, _) => JordanCase::A,
            (Eigenvalue::Complex { .. }, 1) => JordanCase::B,
            (Eigenvalue::Complex { .. }, _) => JordanCase::C,
        }
    }
}

/// Irreducible factors of χ_M with multiplicities, real roots first by
/// value, then complex pairs by (r, s²).
fn irreducible_factors(m: &MatrixQ) -> Result<Vec<(PolyQ, usize)>> {
    let chi = m.char_poly()?;
    let mut out = Vec::new();
    for (g, mult) in chi.square_free_decomposition()? {
        for f in g.factor_linear_quadratic()? {
            out.push((f, mult as usize));
        }
    }
    out.sort_by(|(f, _), (g, _)| {
        let key = |p: &PolyQ| (p.degree(), p.coeffs().iter().rev().cloned().collect::<Vec<_>>());
        key(f).cmp(&key(g))
    });
    Ok(out)
}

fn eigenvalue_of(f: &PolyQ) -> Eigenvalue {
    match f.degree() {
        Some(1) => Eigenvalue::Real { lambda: -f.coeff(0) },
        _ => {
            // X² + bX + c = (X − r)² + s² with r = −b/2
            let r = -f.coeff(1) * Rational::new(1, 2);
            let s_squared = f.coeff(0) - &r * &r;
            Eigenvalue::Complex { r, s_squared }
        }
    }
}

fn component(m: &MatrixQ, f: &PolyQ, mult: usize) -> Result<Component> {
    let n = m.rows();
    let k = f.degree().unwrap_or(0) * mult;
    let w = m.eval_poly(&f.pow(mult as u32))?.kernel();
    if w.len() != k {
        return Err(Error::Inconsistent(format!(
            "primary component of {f} has dimension {}, expected {k}",
            w.len()
        )));
    }
    // A cyclic vector exists among any basis of the component: the
    // non-cyclic ones form the proper subspace ker f(M)^{mult−1} ∩ W.
    for x in &w {
        let mut chain = vec![x.clone()];
        for _ in 1..k {
            let next = m.mul_vec(chain.last().expect("nonempty"))?;
            chain.push(next);
        }
        if Subspace::span(n, &chain)?.dim() == k {
            chain.reverse();
            return Ok(Component {
                eigenvalue: eigenvalue_of(f),
                mult,
                krylov: chain,
            });
        }
    }
    Err(Error::Derogatory)
}

fn jordanize_in<K: JordanField>(m: &MatrixQ, comps: &[Component], one: &K) -> Result<(Vec<JordanBlock>, Matrix<K>, Matrix<K>)> {
    let n = m.rows();
    let mut blocks = Vec::new();
    let mut j_parts = Vec::new();
    let mut columns: Vec<Vec<K>> = Vec::new();
    for c in comps {
        let k = c.size();
        let (p, j) = match &c.eigenvalue {
            Eigenvalue::Real { lambda } => {
                let l = one.lift(lambda);
                (case_a_p(k, &l), case_a_j(k, &l))
            }
            Eigenvalue::Complex { r, s_squared } => {
                let (r, s) = (one.lift(r), one.sqrt_rational(s_squared)?);
                let zero = one.zero_like();
                let p = complex_block_p(k, &r, &s, one, &zero)?;
                let j = if k == 2 {
                    Matrix::from_rows(vec![vec![r.clone(), -s.clone()], vec![s, r]])?
                } else {
                    case_c_j(k, &r, &s)?
                };
                (p, j)
            }
        };
        let kry = Matrix::from_columns(&c.krylov)?.map(|x| one.lift(x));
        let t = kry.checked_mul(&p)?;
        for col in 0..k {
            columns.push(t.col(col));
        }
        blocks.push(JordanBlock {
            case: c.case(),
            eigenvalue: c.eigenvalue.clone(),
            size: k,
            det_p: p.det()?.to_exact(),
        });
        j_parts.push(j);
    }
    let j = Matrix::block_diag(&j_parts)?;
    let p = Matrix::from_columns(&columns)?;
    let mk = m.map(|x| one.lift(x));
    if p.rows() != n || mk.checked_mul(&p)? != p.checked_mul(&j)? {
        return Err(Error::Inconsistent("Jordan similarity check failed".into()));
    }
    Ok((blocks, j, p))
}

/// Jordan form of a nonderogatory matrix whose characteristic polynomial
/// splits into factors of degree ≤ 2 over ℚ. Fails if the imaginary parts
/// would need two different square roots.
pub fn jordanize(m: &MatrixQ) -> Result<JordanResult> {
    m.require_square()?;
    if !is_nonderogatory(m)? {
        return Err(Error::Derogatory);
    }
    let comps = irreducible_factors(m)?
        .iter()
        .map(|(f, mult)| component(m, f, *mult))
        .collect::<Result<Vec<_>>>()?;
    let mut ext: Option<Rational> = None;
    for c in &comps {
        if let Eigenvalue::Complex { s_squared, .. } = &c.eigenvalue {
            let free = Rational::from_bigint(squarefree_split(s_squared)?.1);
            if free.is_one() {
                continue;
            }
            match &ext {
                None => ext = Some(free),
                Some(d) if *d != free => {
                    return Err(Error::MultipleExtensions(format!("sqrt({d}) and sqrt({free})")));
                }
                _ => {}
            }
        }
    }
    let (blocks, matrices, det_p) = match ext {
        None => {
            let (blocks, j, p) = jordanize_in(m, &comps, &Rational::one())?;
            let det = p.det()?;
            (blocks, JordanMatrices::Rational { j, p }, ExactScalar::Rational(det))
        }
        Some(d) => {
            let one = QuadExt::from_rational(Rational::one(), &d)?;
            let (blocks, j, p) = jordanize_in(m, &comps, &one)?;
            let det = p.det()?.to_exact();
            (blocks, JordanMatrices::Quadratic { d, j, p }, det)
        }
    };
    Ok(JordanResult {
        convention: CONVENTION,
        blocks,
        matrices,
        det_p,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nonderog::{circular_permutation, complex_nilpotent_pair, principal_nilpotent};

    fn q(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    #[test]
    fn companion_is_the_krylov_matrix() {
        // (X − 2)²: M̃ = [[4, 1], [−4, 0]]
        let c = krylov_companion(&real_char_coeffs(&q(2), 2)).unwrap();
        assert_eq!(c, MatrixQ::from_i64(2, 2, &[4, 1, -4, 0]).unwrap());
    }

    #[test]
    fn case_a_similarity() {
        for n in 1..=6 {
            for l in [q(0), q(1), Rational::new(-3, 2)] {
                let mt = krylov_companion(&real_char_coeffs(&l, n)).unwrap();
                let p = case_a_p(n, &l);
                let j = case_a_j(n, &l);
                assert_eq!(mt.checked_mul(&p).unwrap(), p.checked_mul(&j).unwrap(), "n={n} λ={l}");
                assert_eq!(p.det().unwrap(), q(1));
            }
        }
    }

    #[test]
    fn case_c_listing_n4() {
        let p = symbolic_complex_p(4, Some(&(q(1), q(0)))).unwrap();
        let names = &SYMBOLIC_VARS;
        assert_eq!(p.get(1, 0).display_with(names), "-3*r");
        assert_eq!(p.get(1, 1).display_with(names), "-s");
        assert_eq!(p.get(2, 0).display_with(names), "3*r^2 + s^2");
        assert_eq!(p.get(3, 3).display_with(names), "2*r*s");
        let det = p.det_laplace().unwrap();
        assert_eq!(det, MultiPoly::var(4, 1).pow(4).scale(&q(4)));
    }

    #[test]
    fn case_c_similarity_symbolic() {
        for n in (2..=12).step_by(2) {
            let (r, s) = (MultiPoly::var(4, 0), MultiPoly::var(4, 1));
            let p = symbolic_complex_p(n, None).unwrap();
            let mt = krylov_companion(&complex_char_coeffs(&r, &s, n / 2)).unwrap();
            let j = case_c_j(n, &r, &s).unwrap();
            assert_eq!(mt.checked_mul(&p).unwrap(), p.checked_mul(&j).unwrap(), "n={n}");
        }
    }

    #[test]
    fn jordanize_examples() {
        let res = jordanize(&(&principal_nilpotent(4) + &MatrixQ::identity(4).scale(&q(3)))).unwrap();
        assert_eq!(res.case_tags(), vec![JordanCase::A]);
        let res = jordanize(&circular_permutation(4)).unwrap();
        assert_eq!(res.case_tags(), vec![JordanCase::Diag, JordanCase::Diag, JordanCase::B]);
        assert!(matches!(res.matrices, JordanMatrices::Rational { .. }));
        // X² + X + 1: r = −1/2, s = √3/2
        let res = jordanize(&circular_permutation(3)).unwrap();
        assert!(matches!(res.matrices, JordanMatrices::Quadratic { ref d, .. } if *d == q(3)));
        // X⁴ + X³ + X² + X + 1 is irreducible over ℚ
        assert!(matches!(jordanize(&circular_permutation(5)), Err(Error::UnsupportedFactor(_))));
        let res = jordanize(&complex_nilpotent_pair(6).unwrap()).unwrap();
        assert_eq!(res.case_tags(), vec![JordanCase::C]);
        assert!(matches!(res.matrices, JordanMatrices::Rational { .. }));
        assert_eq!(res.blocks[0].det_p, ExactScalar::Rational(q(-64)));
        assert!(matches!(jordanize(&MatrixQ::identity(2)), Err(Error::Derogatory)));
    }

    #[test]
    fn irrational_imaginary_part() {
        // companion matrix of (X² + 2)²
        let chi = PolyQ::from_i64s(&[2, 0, 1]).pow(2);
        let comp = krylov_companion(chi.coeffs()).unwrap();
        let res = jordanize(&comp).unwrap();
        match &res.matrices {
            JordanMatrices::Quadratic { d, .. } => assert_eq!(*d, q(2)),
            other => panic!("{other:?}"),
        }
        // (X² + 2)(X² + 3) needs √2 and √3
        let chi = &PolyQ::from_i64s(&[2, 0, 1]) * &PolyQ::from_i64s(&[3, 0, 1]);
        let comp = krylov_companion(chi.coeffs()).unwrap();
        assert!(matches!(jordanize(&comp), Err(Error::MultipleExtensions(_))));
    }

    #[test]
    fn q_values() {
        assert_eq!(q_n(4).unwrap(), q(4));
        assert_eq!(q_n(6).unwrap(), q(-64));
        assert_eq!(q_n(10).unwrap(), q(-1048576));
        assert!(q_n(5).is_err());
        for n in [4, 6, 10] {
            assert_eq!(q_n(n).unwrap(), q_n_corrected(n).unwrap());
        }
        assert_eq!(q_n(8).unwrap(), q(6561));
        assert_eq!(q_n_corrected(8).unwrap(), q(4096));
    }

    #[test]
    fn corrected_determinant() {
        for n in [4, 6, 8] {
            let det = symbolic_complex_p(n, None).unwrap().det_laplace().unwrap();
            assert_eq!(det, det_formula_corrected(n, None).unwrap(), "n={n}");
        }
    }
}

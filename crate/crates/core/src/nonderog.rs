//! Nonderogatory matrices φ and the algebras G_φ = ℚ[φ] ⋉ ℚⁿ: eigenvalue
//! signatures, decomposition labels, Cartan tests, and the Vandermonde
//! isomorphism for real simple spectra.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::catalog;
use crate::error::{Error, Result};
use crate::lie::{direct_sum, semidirect_sum, LieAlgebra};
use crate::matrix::{centralizer, normalizer_of_span, power_basis, Matrix, MatrixQ, Subspace};
use crate::scalar::Rational;

/// Principal nilpotent M_0 = Σ E_{i,i+1}.
pub fn principal_nilpotent(n: usize) -> MatrixQ {
    let mut m = MatrixQ::zeros(n, n);
    for i in 0..n.saturating_sub(1) {
        m.set(i, i + 1, Rational::one());
    }
    m
}

fn require_even(n: usize) -> Result<()> {
    if n == 0 || n % 2 == 1 {
        return Err(Error::InvalidArgument(format!("size {n} must be even and positive")));
    }
    Ok(())
}

/// M_s: block diagonal with 2×2 blocks [[0, −1], [1, 0]].
pub fn rotation_part(n: usize) -> Result<MatrixQ> {
    require_even(n)?;
    let mut m = MatrixQ::zeros(n, n);
    for b in (0..n).step_by(2) {
        m.set(b, b + 1, Rational::from_integer(-1));
        m.set(b + 1, b, Rational::one());
    }
    Ok(m)
}

/// M_n = Σ E_{j,j+2}.
pub fn shift_by_two(n: usize) -> Result<MatrixQ> {
    require_even(n)?;
    let mut m = MatrixQ::zeros(n, n);
    for j in 0..n - 2 {
        m.set(j, j + 2, Rational::one());
    }
    Ok(m)
}

/// M_{0,1} = M_s + M_n.
pub fn complex_nilpotent_pair(n: usize) -> Result<MatrixQ> {
    Ok(&rotation_part(n)? + &shift_by_two(n)?)
}

/// Circular permutation matrix sending ẽ_j to ẽ_{j+1 mod n}.
pub fn circular_permutation(n: usize) -> MatrixQ {
    let mut m = MatrixQ::zeros(n, n);
    for j in 0..n {
        m.set((j + 1) % n, j, Rational::one());
    }
    m
}

/// min poly = char poly, cross-checked against "the centralizer is
/// n-dimensional and commutative".
pub fn is_nonderogatory(m: &MatrixQ) -> Result<bool> {
    let n = m.require_square()?;
    let by_poly = m.min_poly()? == m.char_poly()?;
    let cent = centralizer(std::slice::from_ref(m))?;
    let by_cent = cent.dim() == n && {
        let b = cent.basis_matrices()?;
        let mut ok = true;
        'outer: for (i, x) in b.iter().enumerate() {
            for y in &b[i + 1..] {
                if !x.commutes_with(y)? {
                    ok = false;
                    break 'outer;
                }
            }
        }
        ok
    };
    if by_poly != by_cent {
        return Err(Error::Inconsistent(format!(
            "minimal polynomial test says {by_poly}, centralizer test says {by_cent}"
        )));
    }
    Ok(by_poly)
}

fn require_nonderogatory(m: &MatrixQ) -> Result<()> {
    if !is_nonderogatory(m)? {
        return Err(Error::Derogatory);
    }
    Ok(())
}

/// Multiplicities of the real eigenvalues and of the complex-conjugate
/// pairs, each sorted in descending order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EigenSignature {
    pub real_blocks: Vec<usize>,
    pub complex_blocks: Vec<usize>,
}

impl EigenSignature {
    pub fn size(&self) -> usize {
        self.real_blocks.iter().sum::<usize>() + 2 * self.complex_blocks.iter().sum::<usize>()
    }
}

pub fn eigen_signature(m: &MatrixQ) -> Result<EigenSignature> {
    require_nonderogatory(m)?;
    let chi = m.char_poly()?;
    let mut real_blocks = Vec::new();
    let mut complex_blocks = Vec::new();
    for (f, mult) in chi.square_free_decomposition()? {
        let deg = f.degree().unwrap_or(0);
        let r = f.count_real_roots()?;
        let c = (deg - r) / 2;
        real_blocks.extend(std::iter::repeat_n(mult as usize, r));
        complex_blocks.extend(std::iter::repeat_n(mult as usize, c));
    }
    real_blocks.sort_unstable_by(|a, b| b.cmp(a));
    complex_blocks.sort_unstable_by(|a, b| b.cmp(a));
    Ok(EigenSignature {
        real_blocks,
        complex_blocks,
    })
}

/// An indecomposable summand: D0(k) (dimension 2k) or D01(2m)
/// (dimension 4m).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Block {
    D0(usize),
    D01(usize),
}

impl Block {
    /// Size of the matrix block it comes from.
    pub fn size(&self) -> usize {
        match *self {
            Block::D0(k) | Block::D01(k) => k,
        }
    }

    fn sort_key(&self) -> (u8, std::cmp::Reverse<usize>) {
        match *self {
            Block::D0(k) => (0, std::cmp::Reverse(k)),
            Block::D01(k) => (1, std::cmp::Reverse(k)),
        }
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Block::D0(1) => write!(f, "aff(R)"),
            Block::D01(2) => write!(f, "aff(C)"),
            Block::D0(k) => write!(f, "D0({k})"),
            Block::D01(k) => write!(f, "D01({k})"),
        }
    }
}

impl FromStr for Block {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidArgument(format!("unknown block {s:?}"));
        match s {
            "aff(R)" => return Ok(Block::D0(1)),
            "aff(C)" => return Ok(Block::D01(2)),
            _ => {}
        }
        let (head, rest) = s.split_once('(').ok_or_else(bad)?;
        let k: usize = rest.strip_suffix(')').ok_or_else(bad)?.parse().map_err(|_| bad())?;
        match head {
            "D0" if k >= 1 => Ok(Block::D0(k)),
            "D01" if k >= 2 && k.is_multiple_of(2) => Ok(Block::D01(k)),
            _ => Err(bad()),
        }
    }
}

/// Direct-sum decomposition of G_φ, blocks in canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClassificationLabel {
    blocks: Vec<Block>,
}

impl ClassificationLabel {
    pub fn new(mut blocks: Vec<Block>) -> Self {
        blocks.sort_by_key(Block::sort_key);
        ClassificationLabel { blocks }
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// Size n of the matrices φ with this label.
    pub fn size(&self) -> usize {
        self.blocks.iter().map(Block::size).sum()
    }

    pub fn is_indecomposable(&self) -> bool {
        self.blocks.len() == 1
    }

    /// Only aff(R) and aff(C) summands, i.e. φ has simple spectrum.
    pub fn is_cartan_type(&self) -> bool {
        self.blocks.iter().all(|b| matches!(b, Block::D0(1) | Block::D01(2)))
    }
}

impl fmt::Display for ClassificationLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.blocks.iter().map(Block::to_string).collect();
        write!(f, "{}", parts.join("+"))
    }
}

impl FromStr for ClassificationLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let blocks = s.split('+').map(str::parse).collect::<Result<Vec<Block>>>()?;
        Ok(ClassificationLabel::new(blocks))
    }
}

impl Serialize for ClassificationLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ClassificationLabel {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl From<&EigenSignature> for ClassificationLabel {
    fn from(sig: &EigenSignature) -> Self {
        let blocks = sig
            .real_blocks
            .iter()
            .map(|&k| Block::D0(k))
            .chain(sig.complex_blocks.iter().map(|&m| Block::D01(2 * m)))
            .collect();
        ClassificationLabel::new(blocks)
    }
}

/// The decomposition of G_φ into D0 and D01 summands.
pub fn classify_g_phi(m: &MatrixQ) -> Result<ClassificationLabel> {
    Ok(ClassificationLabel::from(&eigen_signature(m)?))
}

fn partitions(n: usize, max: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (1..=n.min(max)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Every label of size n, i.e. every isomorphism class of G_φ with φ
/// nonderogatory n×n.
pub fn enumerate_labels(n: usize) -> Vec<ClassificationLabel> {
    let mut out = Vec::new();
    for b in 0..=n / 2 {
        let a = n - 2 * b;
        for real in partitions(a, a) {
            for cplx in partitions(b, b) {
                let blocks = real
                    .iter()
                    .map(|&k| Block::D0(k))
                    .chain(cplx.iter().map(|&m| Block::D01(2 * m)))
                    .collect();
                out.push(ClassificationLabel::new(blocks));
            }
        }
    }
    out
}

/// A nonderogatory matrix with the given label: blocks λI + M_0 and
/// rI + M_{0,1}, with distinct eigenvalues across blocks.
pub fn representative_matrix(label: &ClassificationLabel) -> Result<MatrixQ> {
    let mut parts = Vec::new();
    for (idx, b) in label.blocks().iter().enumerate() {
        let shift = MatrixQ::identity(b.size()).scale(&Rational::from_integer(idx as i64));
        let core = match *b {
            Block::D0(k) => principal_nilpotent(k),
            Block::D01(k) => complex_nilpotent_pair(k)?,
        };
        parts.push(&shift + &core);
    }
    Matrix::block_diag(&parts)
}

/// The direct sum of catalog blocks named by the label.
pub fn label_algebra(label: &ClassificationLabel) -> Result<LieAlgebra> {
    let parts = label
        .blocks()
        .iter()
        .map(|b| match *b {
            Block::D0(k) => catalog::d0(k),
            Block::D01(k) => catalog::d01(k),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(direct_sum(&parts))
}

/// G_φ with basis I, φ, …, φ^{n−1}, ẽ_1, …, ẽ_n.
pub fn g_phi(m: &MatrixQ) -> Result<LieAlgebra> {
    require_nonderogatory(m)?;
    semidirect_sum(&power_basis(m)?, m.rows())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CartanTest {
    pub is_cartan: bool,
    pub via_normalizer: bool,
    pub via_distinct_eigenvalues: bool,
}

/// ℚ[φ] is a Cartan subalgebra of gl(n): tested both as "self-normalizing"
/// and as "χ_φ is squarefree".
pub fn cartan_test(m: &MatrixQ) -> Result<CartanTest> {
    require_nonderogatory(m)?;
    let n = m.rows();
    let basis = power_basis(m)?;
    let span = Subspace::span_matrices(n, &basis)?;
    let via_normalizer = normalizer_of_span(&basis)? == span;
    let via_distinct_eigenvalues = m.char_poly()?.is_squarefree()?;
    if via_normalizer != via_distinct_eigenvalues {
        return Err(Error::Inconsistent(format!(
            "normalizer test says {via_normalizer}, eigenvalue test says {via_distinct_eigenvalues}"
        )));
    }
    Ok(CartanTest {
        is_cartan: via_normalizer,
        via_normalizer,
        via_distinct_eigenvalues,
    })
}

/// Data of the isomorphism aff(ℝ)ⁿ → G_φ for φ = diag(λ).
#[derive(Clone, Debug)]
pub struct Vandermonde {
    /// N_{ij} = λ_i^j.
    pub n_matrix: MatrixQ,
    pub det: Rational,
    /// G_φ with basis φ, φ², …, φⁿ, ẽ_1, …, ẽ_n.
    pub g_phi: LieAlgebra,
    /// aff(ℝ)ⁿ with basis a_1, b_1, a_2, b_2, ….
    pub source: LieAlgebra,
    /// Columns are the images of a_1, b_1, … in the basis of `g_phi`.
    pub psi: MatrixQ,
}

/// (∏ λ_i)·∏_{i<j} (λ_j − λ_i).
pub fn vandermonde_det_formula(lambdas: &[Rational]) -> Rational {
    let mut d: Rational = lambdas.iter().cloned().product();
    for i in 0..lambdas.len() {
        for j in i + 1..lambdas.len() {
            d = d * (&lambdas[j] - &lambdas[i]);
        }
    }
    d
}

pub fn vandermonde_isomorphism(lambdas: &[Rational]) -> Result<Vandermonde> {
    let n = lambdas.len();
    if n == 0 {
        return Err(Error::InvalidArgument("no eigenvalues".into()));
    }
    if lambdas.iter().any(Rational::is_zero) {
        return Err(Error::InvalidArgument("eigenvalues must be nonzero".into()));
    }
    for i in 0..n {
        if lambdas[i + 1..].contains(&lambdas[i]) {
            return Err(Error::InvalidArgument(format!("repeated eigenvalue {}", lambdas[i])));
        }
    }
    let n_matrix = Matrix::from_fn(n, n, |i, j| lambdas[i].pow(j as i32 + 1));
    let det = n_matrix.det()?;
    if det != vandermonde_det_formula(lambdas) {
        return Err(Error::Inconsistent("Vandermonde determinant formula disagrees".into()));
    }
    let phi = MatrixQ::diag(lambdas);
    let mut gens = vec![phi.clone()];
    for _ in 1..n {
        let next = gens.last().unwrap().checked_mul(&phi)?;
        gens.push(next);
    }
    let g = semidirect_sum(&gens, n)?;
    let aff = semidirect_sum(&[MatrixQ::identity(1)], 1)?;
    let source = direct_sum(&vec![aff; n]);
    let mut psi = MatrixQ::zeros(2 * n, 2 * n);
    for i in 0..n {
        let mut e = vec![Rational::zero(); n];
        e[i] = Rational::one();
        let v = n_matrix
            .solve(&e)?
            .ok_or_else(|| Error::Inconsistent("Vandermonde system has no solution".into()))?;
        for (s, x) in v.into_iter().enumerate() {
            psi.set(s, 2 * i, x);
        }
        psi.set(n + i, 2 * i + 1, Rational::one());
    }
    Ok(Vandermonde {
        n_matrix,
        det,
        g_phi: g,
        source,
        psi,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::verify_isomorphism;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    #[test]
    fn shift_powers() {
        let s = [shift_by_two(6).unwrap()];
        assert_eq!(crate::matrix::subalgebra_powers(&s, 2).unwrap().dim(), 1);
        assert_eq!(crate::matrix::subalgebra_powers(&s, 3).unwrap().dim(), 0);
    }

    #[test]
    fn nonderogatory_tests() {
        assert!(is_nonderogatory(&principal_nilpotent(5)).unwrap());
        assert!(!is_nonderogatory(&MatrixQ::identity(2)).unwrap());
        assert!(is_nonderogatory(&complex_nilpotent_pair(4).unwrap()).unwrap());
    }

    #[test]
    fn signatures() {
        let s = eigen_signature(&circular_permutation(5)).unwrap();
        assert_eq!((s.real_blocks, s.complex_blocks), (vec![1], vec![1, 1]));
        let s = eigen_signature(&complex_nilpotent_pair(4).unwrap()).unwrap();
        assert_eq!(s.complex_blocks, vec![2]);
        let s = eigen_signature(&MatrixQ::diag(&[q(1), q(2), q(3)])).unwrap();
        assert_eq!(s.real_blocks, vec![1, 1, 1]);
        assert_eq!(eigen_signature(&MatrixQ::identity(2)), Err(Error::Derogatory));
    }

    #[test]
    fn circular_labels() {
        let l = |n| classify_g_phi(&circular_permutation(n)).unwrap().to_string();
        assert_eq!(l(4), "aff(R)+aff(R)+aff(C)");
        assert_eq!(l(7), "aff(R)+aff(C)+aff(C)+aff(C)");
        let m = &principal_nilpotent(6) + &MatrixQ::identity(6).scale(&q(3));
        let lab = classify_g_phi(&m).unwrap();
        assert_eq!(lab.to_string(), "D0(6)");
        assert!(lab.is_indecomposable());
    }

    #[test]
    fn label_parsing_and_enumeration() {
        let l: ClassificationLabel = "aff(C)+D0(3)+aff(R)".parse().unwrap();
        assert_eq!(l.to_string(), "D0(3)+aff(R)+aff(C)");
        assert!("D01(3)".parse::<ClassificationLabel>().is_err());
        assert_eq!(enumerate_labels(4).len(), 9);
        for n in 1..=8 {
            let cartan = enumerate_labels(n).iter().filter(|l| l.is_cartan_type()).count();
            assert_eq!(cartan, n / 2 + 1);
        }
        for l in enumerate_labels(4) {
            assert_eq!(classify_g_phi(&representative_matrix(&l).unwrap()).unwrap(), l);
        }
    }

    #[test]
    fn cartan() {
        assert!(cartan_test(&MatrixQ::diag(&[q(1), q(2), q(3), q(4)])).unwrap().is_cartan);
        assert!(!cartan_test(&principal_nilpotent(3)).unwrap().is_cartan);
        assert!(!cartan_test(&complex_nilpotent_pair(6).unwrap()).unwrap().is_cartan);
    }

    #[test]
    fn vandermonde() {
        let v = vandermonde_isomorphism(&[q(1), q(2)]).unwrap();
        assert_eq!(v.det, q(2));
        let v = vandermonde_isomorphism(&[q(1), q(2), q(3)]).unwrap();
        assert_eq!(v.det, q(12));
        assert!(verify_isomorphism(&v.psi, &v.source, &v.g_phi).unwrap());
        assert!(vandermonde_isomorphism(&[q(0), q(1)]).is_err());
        assert!(vandermonde_isomorphism(&[q(1), q(1)]).is_err());
    }
}

//! Maximal abelian subalgebras of gl(n) and sl(n): maximality, Kravchuk
//! signatures, nilpotency class, and recognition of the class-2 MANS.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{centralizer, subalgebra_powers, Matrix, MatrixQ, Subspace};
use crate::scalar::Rational;

/// A set of n×n generators, as read from JSON `{"n": 4, "generators": [...]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MatrixSetRepr", into = "MatrixSetRepr")]
pub struct MatrixSet {
    n: usize,
    generators: Vec<MatrixQ>,
}

#[derive(Serialize, Deserialize)]
struct MatrixSetRepr {
    n: usize,
    generators: Vec<MatrixQ>,
}

impl TryFrom<MatrixSetRepr> for MatrixSet {
    type Error = Error;
    fn try_from(r: MatrixSetRepr) -> Result<Self> {
        MatrixSet::new(r.n, r.generators)
    }
}

impl From<MatrixSet> for MatrixSetRepr {
    fn from(s: MatrixSet) -> Self {
        MatrixSetRepr {
            n: s.n,
            generators: s.generators,
        }
    }
}

impl MatrixSet {
    pub fn new(n: usize, generators: Vec<MatrixQ>) -> Result<Self> {
        for (i, g) in generators.iter().enumerate() {
            if g.rows() != n || g.cols() != n {
                return Err(Error::DimensionMismatch(format!(
                    "generator {} is {}x{}, expected {n}x{n}",
                    i + 1,
                    g.rows(),
                    g.cols()
                )));
            }
        }
        Ok(MatrixSet { n, generators })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[MatrixQ] {
        &self.generators
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Ambient {
    Gl,
    Sl,
}

fn size_of(s: &[MatrixQ]) -> Result<usize> {
    let n = s
        .first()
        .ok_or_else(|| Error::InvalidArgument("empty generator set".into()))?
        .require_square()?;
    if s.iter().any(|m| m.rows() != n || m.cols() != n) {
        return Err(Error::DimensionMismatch("generators of different sizes".into()));
    }
    Ok(n)
}

fn require_abelian(s: &[MatrixQ]) -> Result<()> {
    for (i, a) in s.iter().enumerate() {
        for (j, b) in s.iter().enumerate().skip(i + 1) {
            if !a.commutes_with(b)? {
                return Err(Error::NonAbelian(format!("generators {} and {}", i + 1, j + 1)));
            }
        }
    }
    Ok(())
}

/// Traceless n×n matrices, flattened.
pub fn traceless(n: usize) -> Subspace {
    let mut gens = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                gens.push(MatrixQ::unit(n, i, j));
            } else if i + 1 < n {
                gens.push(&MatrixQ::unit(n, i, i) - &MatrixQ::unit(n, n - 1, n - 1));
            }
        }
    }
    Subspace::span_matrices(n, &gens).expect("square generators")
}

/// Whether span(S) equals its own centralizer in the ambient algebra.
pub fn is_masa(s: &[MatrixQ], ambient: Ambient) -> Result<bool> {
    let n = size_of(s)?;
    require_abelian(s)?;
    let span = Subspace::span_matrices(n, s)?;
    let mut cent = centralizer(s)?;
    if ambient == Ambient::Sl {
        let sl = traceless(n);
        if !span.is_subspace_of(&sl) {
            return Err(Error::InvalidArgument("generators are not traceless".into()));
        }
        cent = cent.intersect(&sl)?;
    }
    Ok(cent == span)
}

/// Kravchuk signature (ν, m, μ) of a nilpotent abelian matrix algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KravchukSignature {
    pub nu: usize,
    pub m: usize,
    pub mu: usize,
    pub n: usize,
}

fn require_nilpotent(s: &[MatrixQ], n: usize) -> Result<()> {
    for (i, g) in s.iter().enumerate() {
        if !g.pow(n as u32)?.is_zero() {
            return Err(Error::NotNilpotent(format!("generator {}", i + 1)));
        }
    }
    Ok(())
}

/// Image of span(S) acting on ℚⁿ.
pub fn image(s: &[MatrixQ]) -> Result<Subspace> {
    let n = size_of(s)?;
    let cols: Vec<Vec<Rational>> = s.iter().flat_map(|g| (0..n).map(move |j| g.col(j))).collect();
    Subspace::span(n, &cols)
}

/// Vectors killed by every element of span(S).
pub fn common_kernel(s: &[MatrixQ]) -> Result<Subspace> {
    let n = size_of(s)?;
    let rows: Vec<Vec<Rational>> = s.iter().flat_map(|g| g.to_rows()).collect();
    Subspace::span(n, &Matrix::from_rows(rows)?.kernel())
}

/// ν = n − dim(span(S)·ℚⁿ), μ = dim of the common kernel, m the rest.
pub fn kravchuk_signature(s: &[MatrixQ]) -> Result<KravchukSignature> {
    let n = size_of(s)?;
    require_abelian(s)?;
    require_nilpotent(s, n)?;
    let nu = n - image(s)?.dim();
    let mu = common_kernel(s)?.dim();
    Ok(KravchukSignature {
        nu,
        m: n - nu - mu,
        mu,
        n,
    })
}

/// Smallest p with every p-fold product zero; 1 for the zero algebra.
pub fn nilpotency_class(s: &[MatrixQ]) -> Result<usize> {
    let n = size_of(s)?;
    require_abelian(s)?;
    for p in 1..=n + 1 {
        if subalgebra_powers(s, p)?.dim() == 0 {
            return Ok(p);
        }
    }
    Err(Error::NotNilpotent("products never vanish".into()))
}

/// A_{n,1} = span{E_{1,j} : j = 2..n}.
pub fn canonical_class2(n: usize) -> Vec<MatrixQ> {
    (1..n).map(|j| MatrixQ::unit(n, 0, j)).collect()
}

/// For an (n−1)-dimensional abelian algebra of class 2, returns P with
/// P·span(S)·P⁻¹ = A_{n,1} when the image is a line, `None` otherwise.
pub fn recognize_class2_mans(s: &[MatrixQ]) -> Result<Option<MatrixQ>> {
    let n = size_of(s)?;
    require_abelian(s)?;
    let span = Subspace::span_matrices(n, s)?;
    if span.dim() + 1 != n {
        return Err(Error::InvalidArgument(format!(
            "expected an algebra of dimension {}, got {}",
            n - 1,
            span.dim()
        )));
    }
    let class = nilpotency_class(s)?;
    if class != 2 {
        return Err(Error::InvalidArgument(format!("expected class 2, got class {class}")));
    }
    let img = image(s)?;
    if img.dim() != 1 {
        return Ok(None);
    }
    // Columns: a spanning vector of the image, then standard basis vectors
    // added greedily by lowest index.
    let mut cols = vec![img.basis()[0].clone()];
    for i in 0..n {
        let mut e = vec![Rational::zero(); n];
        e[i] = Rational::one();
        let mut trial = cols.clone();
        trial.push(e);
        if Subspace::span(n, &trial)?.dim() == trial.len() {
            cols = trial;
        }
        if cols.len() == n {
            break;
        }
    }
    let f = Matrix::from_columns(&cols)?;
    let p = f.inverse()?;
    let conj: Vec<MatrixQ> = s.iter().map(|m| m.conjugate(&p)).collect::<Result<_>>()?;
    if Subspace::span_matrices(n, &conj)? != Subspace::span_matrices(n, &canonical_class2(n))? {
        return Err(Error::Inconsistent("conjugated algebra is not A_{n,1}".into()));
    }
    Ok(Some(p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::power_basis;

    #[test]
    fn masa_checks() {
        let e12 = MatrixQ::unit(2, 0, 1);
        assert!(!is_masa(std::slice::from_ref(&e12), Ambient::Gl).unwrap());
        assert!(is_masa(&[MatrixQ::identity(2), e12.clone()], Ambient::Gl).unwrap());
        assert!(is_masa(&[e12], Ambient::Sl).unwrap());
        let bad = [MatrixQ::unit(2, 0, 1), MatrixQ::unit(2, 1, 0)];
        assert!(matches!(is_masa(&bad, Ambient::Gl), Err(Error::NonAbelian(_))));
    }

    #[test]
    fn signatures_and_classes() {
        let a = canonical_class2(4);
        let k = kravchuk_signature(&a).unwrap();
        assert_eq!((k.nu, k.m, k.mu), (3, 0, 1));
        assert_eq!(nilpotency_class(&a).unwrap(), 2);
        assert_eq!(nilpotency_class(&[MatrixQ::zeros(3, 3)]).unwrap(), 1);
        let mut m0 = MatrixQ::zeros(5, 5);
        for i in 0..4 {
            m0.set(i, i + 1, Rational::one());
        }
        let nil: Vec<MatrixQ> = power_basis(&m0).unwrap().into_iter().skip(1).collect();
        assert_eq!(nilpotency_class(&nil).unwrap(), 5);
        assert!(kravchuk_signature(&[MatrixQ::identity(2)]).is_err());
    }

    #[test]
    fn class2_recognition() {
        let a = canonical_class2(4);
        let p = recognize_class2_mans(&a).unwrap().unwrap();
        assert_eq!(p, MatrixQ::identity(4));
        let wide: Vec<MatrixQ> = [(0, 3), (0, 4), (1, 3), (1, 4)]
            .iter()
            .map(|&(i, j)| MatrixQ::unit(5, i, j))
            .collect();
        assert_eq!(recognize_class2_mans(&wide).unwrap(), None);
        assert!(recognize_class2_mans(&a[..2]).is_err());
    }

    #[test]
    fn matrix_set_json() {
        let v = serde_json::json!({"n": 2, "generators": [{"rows": 2, "cols": 2, "entries": [["0","1"],["0","0"]]}]});
        let s: MatrixSet = serde_json::from_value(v).unwrap();
        assert_eq!(s.generators()[0], MatrixQ::unit(2, 0, 1));
        let bad = serde_json::json!({"n": 3, "generators": [{"rows": 2, "cols": 2, "entries": [["0","1"],["0","0"]]}]});
        assert!(serde_json::from_value::<MatrixSet>(bad).is_err());
    }
}

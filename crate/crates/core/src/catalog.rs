//! Named algebras: the blocks D0(n) and D01(n), the families G(n,p),
//! h(n,p), G'(n) and B(n), the MASA lists of sl(3) and sl(4), de Graaf's
//! nilpotent associative algebras of dimension 3, and explicit
//! isomorphisms between them.
//!
//! Matrix units `E_{i,j}` and basis names are 1-based here, as in the
//! printed tables. Every entry built from matrices is compared against its
//! bracket table when one exists.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::frobenius::{frobenius_decide, is_frobenius_functional, LinearForm};
use crate::lie::{direct_sum, semidirect_sum, symmetric_signature, FormSignature, LieAlgebra};
use crate::masa::{is_masa, Ambient};
use crate::matrix::{power_basis, Matrix, MatrixQ, Subspace};
use crate::nonderog::{
    classify_g_phi, complex_nilpotent_pair, is_nonderogatory, principal_nilpotent, ClassificationLabel,
};
use crate::scalar::Rational;

pub type Params = BTreeMap<String, i64>;

/// Largest matrix size accepted by [`build`].
pub const DEFAULT_MAX_N: usize = 10;

fn q(n: i64) -> Rational {
    Rational::from_integer(n)
}

/// E_{i,j}, 1-based.
fn e(n: usize, i: usize, j: usize) -> MatrixQ {
    MatrixQ::unit(n, i - 1, j - 1)
}

/// Σ c·M over the pairs.
fn lin(n: usize, terms: &[(Rational, &MatrixQ)]) -> MatrixQ {
    terms
        .iter()
        .fold(MatrixQ::zeros(n, n), |acc, (c, m)| &acc + &m.scale(c))
}

fn sum(ms: &[MatrixQ]) -> MatrixQ {
    let n = ms[0].rows();
    ms.iter().fold(MatrixQ::zeros(n, n), |acc, m| &acc + m)
}

fn diag(entries: &[i64]) -> MatrixQ {
    MatrixQ::diag(&entries.iter().map(|&x| q(x)).collect::<Vec<_>>())
}

/// A vector of length `dim` with the given 1-based entries.
fn coords(dim: usize, entries: &[(usize, Rational)]) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); dim];
    for (i, c) in entries {
        v[i - 1] += c;
    }
    v
}

fn check_table(name: &str, from_matrices: &LieAlgebra, table: &LieAlgebra) -> Result<()> {
    if from_matrices != table {
        return Err(Error::TableMismatch {
            name: name.to_string(),
            from_matrices: from_matrices.to_string(),
            from_table: table.to_string(),
        });
    }
    Ok(())
}

/// Reverses the standard basis: column j is ẽ_{n+1−j}.
fn reversal(n: usize) -> MatrixQ {
    Matrix::from_fn(n, n, |i, j| if i + j + 1 == n { Rational::one() } else { Rational::zero() })
}

fn conjugate_all(b: &[MatrixQ], q: &MatrixQ) -> Result<Vec<MatrixQ>> {
    let qi = q.inverse()?;
    b.iter().map(|m| qi.checked_mul(m)?.checked_mul(q)).collect()
}

// ---------------------------------------------------------------------------
// Generator sets

/// Powers of M_0 written in the reversed basis ẽ_n, …, ẽ_1 of ℚⁿ.
pub fn d0_generators(n: usize) -> Result<Vec<MatrixQ>> {
    require(n >= 1, "D0 needs n >= 1")?;
    conjugate_all(&power_basis(&principal_nilpotent(n))?, &reversal(n))
}

/// Powers of M_{0,1} = M_s + M_n in the standard basis.
pub fn d01_generators(n: usize) -> Result<Vec<MatrixQ>> {
    require(n >= 2 && n.is_multiple_of(2), "D01 needs an even n >= 2")?;
    power_basis(&complex_nilpotent_pair(n)?)
}

/// 𝔅_{n,p}: M^{j−1} for j ≤ p+1 with M = Σ_{l≤p} E_{l,l+1}, then E_{1,j}.
pub fn g_generators(n: usize, p: usize) -> Result<Vec<MatrixQ>> {
    require(n >= 2 && p >= 1 && p < n, "G needs n >= 2 and 1 <= p <= n-1")?;
    let m = sum(&(1..=p).map(|l| e(n, l, l + 1)).collect::<Vec<_>>());
    let mut out = Vec::with_capacity(n);
    for j in 1..=p + 1 {
        out.push(m.pow(j as u32 - 1)?);
    }
    for j in p + 2..=n {
        out.push(e(n, 1, j));
    }
    Ok(out)
}

/// C_{n,p}: I, E_{1,j} + E_{j,n} for j ≤ p, then E_{1,j}.
pub fn h_generators(n: usize, p: usize) -> Result<Vec<MatrixQ>> {
    require(n >= 3 && p >= 2 && p < n, "h needs n >= 3 and 2 <= p <= n-1")?;
    let mut out = vec![MatrixQ::identity(n)];
    for j in 2..=p {
        out.push(&e(n, 1, j) + &e(n, j, n));
    }
    for j in p + 1..=n {
        out.push(e(n, 1, j));
    }
    Ok(out)
}

/// 𝔅'_{n,n}: I, E_{1,j} + E_{n−j+1,n}.
pub fn g_prime_generators(n: usize) -> Result<Vec<MatrixQ>> {
    require(n >= 3, "G' needs n >= 3")?;
    let mut out = vec![MatrixQ::identity(n)];
    for j in 2..=n {
        out.push(&e(n, 1, j) + &e(n, n - j + 1, n));
    }
    Ok(out)
}

/// 𝔅_n: I, E_{i,n}.
pub fn b_generators(n: usize) -> Result<Vec<MatrixQ>> {
    require(n >= 2, "B needs n >= 2")?;
    let mut out = vec![MatrixQ::identity(n)];
    for i in 1..n {
        out.push(e(n, i, n));
    }
    Ok(out)
}

/// The MASA L_{2,i} of sl(3), without the identity.
pub fn l2_masa(i: usize) -> Result<Vec<MatrixQ>> {
    let n = 3;
    Ok(match i {
        1 => vec![diag(&[1, -1, 0]), diag(&[1, 1, -2])],
        2 => vec![diag(&[1, 1, -2]), &e(n, 1, 2) - &e(n, 2, 1)],
        3 => vec![diag(&[1, 1, -2]), e(n, 1, 2)],
        4 => vec![e(n, 1, 3), e(n, 2, 3)],
        5 => vec![e(n, 1, 2), e(n, 1, 3)],
        6 => vec![&e(n, 1, 2) + &e(n, 2, 3), e(n, 1, 3)],
        _ => return Err(Error::InvalidArgument(format!("L2 index {i} not in 1..=6"))),
    })
}

/// The MASA Y_i of sl(4), without the identity. `eps` is only read for
/// i = 6. For i = 8, `corrected = false` gives the set as originally
/// published, which does not commute.
pub fn y_masa(i: usize, eps: i64, corrected: bool) -> Result<Vec<MatrixQ>> {
    let n = 4;
    let u = |i, j| e(n, i, j);
    let d3 = diag(&[1, 1, 1, -3]);
    let d22 = diag(&[1, 1, -1, -1]);
    Ok(match i {
        1 => vec![u(1, 3), u(1, 4), u(2, 3), u(2, 4)],
        2 => vec![u(1, 2), u(1, 3), u(1, 4)],
        3 => vec![u(1, 4), u(2, 4), u(3, 4)],
        4 => vec![&u(1, 3) + &u(3, 4), u(1, 4), u(2, 4)],
        5 => vec![&u(1, 2) + &u(2, 4), u(1, 3), u(1, 4)],
        6 => {
            require(eps == 1 || eps == -1, "Y6 needs eps = 1 or -1")?;
            vec![
                &u(1, 2) + &u(2, 4),
                &u(1, 3) + &u(3, 4).scale(&q(eps)),
                u(1, 4),
            ]
        }
        7 => vec![sum(&[u(1, 2), u(2, 3), u(3, 4)]), &u(1, 3) + &u(2, 4), u(1, 4)],
        8 if corrected => vec![
            sum(&[u(1, 2), -u(2, 1), u(3, 4), -u(4, 3)]),
            &u(1, 3) + &u(2, 4),
            &u(1, 4) - &u(2, 3),
        ],
        8 => errata::y8_published(),
        9 => vec![d3, u(1, 2), u(1, 3)],
        10 => vec![d3, u(1, 3), u(2, 3)],
        11 => vec![d3, &u(1, 2) + &u(2, 3), u(1, 3)],
        12 => vec![d22, &u(1, 2) - &u(2, 1), &u(3, 4) - &u(4, 3)],
        13 => vec![d22, &u(1, 2) - &u(2, 1), u(3, 4)],
        14 => vec![d22, &u(1, 2) - &u(2, 1), &u(3, 3) - &u(4, 4)],
        15 => vec![d22, u(1, 2), &u(3, 3) - &u(4, 4)],
        16 => vec![d3, diag(&[1, 1, -2, 0]), diag(&[1, -1, 0, 0])],
        17 => vec![d22, u(1, 2), u(3, 4)],
        _ => return Err(Error::InvalidArgument(format!("Y index {i} not in 1..=17"))),
    })
}

fn with_identity(n: usize, rest: Vec<MatrixQ>) -> Vec<MatrixQ> {
    let mut out = vec![MatrixQ::identity(n)];
    out.extend(rest);
    out
}

/// Generators of (⊕ B_i) acting on ⊕ ℚ^{n_i}, block by block.
pub fn sum_generators(parts: &[Vec<MatrixQ>]) -> Result<Vec<MatrixQ>> {
    let sizes: Vec<usize> = parts
        .iter()
        .map(|p| p.first().map(|m| m.rows()).unwrap_or(0))
        .collect();
    let total: usize = sizes.iter().sum();
    let mut out = Vec::new();
    let mut off = 0;
    for (p, &k) in parts.iter().zip(&sizes) {
        for m in p {
            let mut big = MatrixQ::zeros(total, total);
            for i in 0..k {
                for j in 0..k {
                    big.set(off + i, off + j, m.get(i, j).clone());
                }
            }
            out.push(big);
        }
        off += k;
    }
    Ok(out)
}

fn require(ok: bool, msg: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidArgument(msg.to_string()))
    }
}

// ---------------------------------------------------------------------------
// Bracket tables

fn table(dim: usize, entries: Vec<(usize, usize, Vec<(usize, Rational)>)>) -> Result<LieAlgebra> {
    LieAlgebra::from_brackets(dim, entries)
}

fn one(k: usize) -> Vec<(usize, Rational)> {
    vec![(k, Rational::one())]
}

/// [e_1, e_{n+j}] = e_{n+j}.
fn identity_rows(n: usize) -> Vec<(usize, usize, Vec<(usize, Rational)>)> {
    (1..=n).map(|j| (1, n + j, one(n + j))).collect()
}

/// [e_i, e_{n+j}] = e_{n+j+i−1}, zero past e_{2n}.
pub fn d0_table(n: usize) -> Result<LieAlgebra> {
    let mut t = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            if j + i - 1 <= n {
                t.push((i, n + j, one(n + j + i - 1)));
            }
        }
    }
    table(2 * n, t)
}

pub fn aff_c_table() -> Result<LieAlgebra> {
    LieAlgebra::from_int_table(4, &[(1, 3, &[(3, 1)]), (1, 4, &[(4, 1)]), (2, 3, &[(4, 1)]), (2, 4, &[(3, -1)])])
}

/// The eight-dimensional table of D01(4).
pub fn d01_4_table() -> Result<LieAlgebra> {
    LieAlgebra::from_int_table(
        8,
        &[
            (1, 5, &[(5, 1)]),
            (1, 6, &[(6, 1)]),
            (1, 7, &[(7, 1)]),
            (1, 8, &[(8, 1)]),
            (2, 5, &[(6, 1)]),
            (2, 6, &[(5, -1)]),
            (2, 7, &[(5, 1), (8, 1)]),
            (2, 8, &[(6, 1), (7, -1)]),
            (3, 5, &[(5, -1)]),
            (3, 6, &[(6, -1)]),
            (3, 7, &[(6, 2), (7, -1)]),
            (3, 8, &[(5, -2), (8, -1)]),
            (4, 5, &[(6, -1)]),
            (4, 6, &[(5, 1)]),
            (4, 7, &[(5, -3), (8, -1)]),
            (4, 8, &[(6, -3), (7, 1)]),
        ],
    )
}

pub fn g_table(n: usize, p: usize) -> Result<LieAlgebra> {
    let mut t = identity_rows(n);
    for k in 2..=p + 1 {
        for qq in k..=p + 1 {
            t.push((k, n + qq, one(n + qq - k + 1)));
        }
    }
    for qq in p + 2..=n {
        t.push((qq, n + qq, one(n + 1)));
    }
    table(2 * n, t)
}

pub fn h_table(n: usize, p: usize) -> Result<LieAlgebra> {
    let mut t = identity_rows(n);
    for j in 2..=n {
        t.push((j, n + j, one(n + 1)));
    }
    for k in 2..=p {
        t.push((k, 2 * n, one(n + k)));
    }
    table(2 * n, t)
}

pub fn g_prime_table(n: usize) -> Result<LieAlgebra> {
    let mut t = identity_rows(n);
    for j in 2..n {
        t.push((j, n + j, one(n + 1)));
        t.push((j, 2 * n, one(2 * n - j + 1)));
    }
    t.push((n, 2 * n, vec![(n + 1, q(2))]));
    table(2 * n, t)
}

pub fn b_table(n: usize) -> Result<LieAlgebra> {
    let mut t = identity_rows(n);
    for i in 1..n {
        t.push((i + 1, 2 * n, one(n + i)));
    }
    table(2 * n, t)
}

// ---------------------------------------------------------------------------
// Blocks

/// aff(ℝ) = D0(1).
pub fn aff_r() -> Result<LieAlgebra> {
    d0(1)
}

/// aff(ℂ) = D01(2).
pub fn aff_c() -> Result<LieAlgebra> {
    d01(2)
}

/// D0(n) = ℚ[M_0] ⋉ ℚⁿ with basis M_0^{i−1}, then M_0^{j−1}ẽ_n.
pub fn d0(n: usize) -> Result<LieAlgebra> {
    let g = semidirect_sum(&d0_generators(n)?, n)?;
    check_table(&format!("D0({n})"), &g, &d0_table(n)?)?;
    Ok(g)
}

/// D01(n) = ℚ[M_{0,1}] ⋉ ℚⁿ with basis M_{0,1}^{j−1}, then ẽ_1 … ẽ_n.
pub fn d01(n: usize) -> Result<LieAlgebra> {
    let g = semidirect_sum(&d01_generators(n)?, n)?;
    match n {
        2 => check_table("aff(C)", &g, &aff_c_table()?)?,
        4 => check_table("D01(4)", &g, &d01_4_table()?)?,
        _ => {}
    }
    Ok(g)
}

// ---------------------------------------------------------------------------
// Entries

/// A reference to another catalog entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EntryRef {
    pub name: String,
    pub params: Params,
}

impl EntryRef {
    pub fn new(name: &str, params: &[(&str, i64)]) -> Self {
        EntryRef {
            name: name.to_string(),
            params: params.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
        }
    }
}

/// Facts the literature states about an entry. Each is rechecked by
/// [`CatalogEntry::check_facts`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Expected {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub frobenius: Option<bool>,
    /// A Frobenius functional, in the dual basis.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub functional: Option<LinearForm>,
    /// Whether span(generators) is a MASA of gl(n).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub masa: Option<bool>,
    /// For ℚ[M] ⋉ ℚⁿ with M nonderogatory: the decomposition label.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<ClassificationLabel>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nilradical_derived_dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nilradical_class: Option<usize>,
    /// Another entry with literally the same bracket table.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub equals: Option<EntryRef>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CatalogEntry {
    pub name: String,
    pub params: Params,
    /// dim V, the size of the generator matrices.
    pub n: usize,
    /// Basis of the abelian matrix algebra B, when the entry is B ⋉ ℚⁿ.
    pub matrix_generators: Option<Vec<MatrixQ>>,
    pub algebra: LieAlgebra,
    pub expected: Expected,
}

/// Result of rechecking one stated fact.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactCheck {
    pub fact: String,
    pub expected: String,
    pub actual: String,
    pub ok: bool,
}

impl FactCheck {
    fn new(fact: &str, expected: impl ToString, actual: impl ToString) -> Self {
        let (expected, actual) = (expected.to_string(), actual.to_string());
        FactCheck {
            fact: fact.to_string(),
            ok: expected == actual,
            expected,
            actual,
        }
    }
}

/// An element M of span(gens) with ℚ[M] = span(gens), found among the
/// generators and a few fixed integer combinations.
pub fn nonderogatory_element(gens: &[MatrixQ]) -> Result<Option<MatrixQ>> {
    let Some(first) = gens.first() else { return Ok(None) };
    let n = first.require_square()?;
    let span = Subspace::span_matrices(n, gens)?;
    if span.dim() != n {
        return Ok(None);
    }
    let m = gens.len() as i64;
    let weights: Vec<Vec<i64>> = vec![
        (0..m).map(|i| i + 1).collect(),
        (0..m).map(|i| (i + 1) * (i + 1)).collect(),
        (0..m).map(|i| if i % 2 == 0 { i + 1 } else { -(i + 1) }).collect(),
        (0..m).map(|i| 1 << i).collect(),
    ];
    let candidates = gens.iter().cloned().chain(weights.iter().map(|w| {
        let terms: Vec<(Rational, &MatrixQ)> = w.iter().zip(gens).map(|(&c, g)| (q(c), g)).collect();
        lin(n, &terms)
    }));
    for c in candidates {
        if is_nonderogatory(&c)? && Subspace::span_matrices(n, &power_basis(&c)?)? == span {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

impl CatalogEntry {
    fn from_generators(name: &str, params: Params, gens: Vec<MatrixQ>, expected: Expected) -> Result<Self> {
        let n = gens
            .first()
            .ok_or_else(|| Error::InvalidArgument("no generators".into()))?
            .require_square()?;
        let algebra = semidirect_sum(&gens, n)?;
        Ok(CatalogEntry {
            name: name.to_string(),
            params,
            n,
            matrix_generators: Some(gens),
            algebra,
            expected,
        })
    }

    /// `name` followed by its parameters, e.g. `G(n=4,p=1)`.
    pub fn title(&self) -> String {
        if self.params.is_empty() {
            return self.name.clone();
        }
        let ps: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        format!("{}({})", self.name, ps.join(","))
    }

    /// Recomputes every stated fact.
    pub fn check_facts(&self) -> Result<Vec<FactCheck>> {
        let ex = &self.expected;
        let g = &self.algebra;
        let mut out = Vec::new();
        if let Some(f) = ex.frobenius {
            out.push(FactCheck::new("frobenius", f, frobenius_decide(g).is_frobenius()));
        }
        if let Some(alpha) = &ex.functional {
            out.push(FactCheck::new("functional", true, is_frobenius_functional(g, alpha)?));
        }
        if let Some(m) = ex.masa {
            let actual = match &self.matrix_generators {
                Some(gens) => is_masa(gens, Ambient::Gl)?.to_string(),
                None => "no generators".into(),
            };
            out.push(FactCheck::new("masa", m, actual));
        }
        if let Some(label) = &ex.label {
            let actual = match self.matrix_generators.as_deref().map(nonderogatory_element) {
                Some(Ok(Some(m))) => classify_g_phi(&m)?.to_string(),
                Some(Err(e)) => return Err(e),
                _ => "no nonderogatory element".into(),
            };
            out.push(FactCheck::new("label", label, actual));
        }
        if ex.nilradical_derived_dim.is_some() || ex.nilradical_class.is_some() {
            let nil = match g.nilradical()? {
                Some(s) => Some(g.restrict(&s)?),
                None => None,
            };
            if let Some(d) = ex.nilradical_derived_dim {
                let actual = nil.as_ref().map_or("unknown".into(), |h| h.derived_dims()[0].to_string());
                out.push(FactCheck::new("nilradical_derived_dim", d, actual));
            }
            if let Some(c) = ex.nilradical_class {
                let actual = nil
                    .as_ref()
                    .map_or("unknown".into(), |h| h.lower_central_dims().len().to_string());
                out.push(FactCheck::new("nilradical_class", c, actual));
            }
        }
        if let Some(r) = &ex.equals {
            let other = build(&r.name, &r.params)?;
            out.push(FactCheck::new(
                "equals",
                format!("same table as {}", other.title()),
                if other.algebra == *g {
                    format!("same table as {}", other.title())
                } else {
                    "different table".into()
                },
            ));
        }
        Ok(out)
    }
}

/// Description of a buildable family, for listings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyInfo {
    pub name: &'static str,
    pub params: &'static str,
    pub description: &'static str,
}

/// Every family [`build`] understands.
pub fn list() -> Vec<FamilyInfo> {
    let f = |name, params, description| FamilyInfo {
        name,
        params,
        description,
    };
    vec![
        f("aff_R", "", "aff(R), the two-dimensional non-abelian algebra"),
        f("aff_C", "", "aff(C) as a real algebra"),
        f("D0", "n>=1", "R[M_0] x R^n for the principal nilpotent M_0"),
        f("D01", "n even >=2", "R[M_01] x R^n for M_01 = M_s + M_n"),
        f("G", "n>=2, 1<=p<=n-1", "B_{n,p} x R^n, nilradical of class p+1"),
        f("h", "n>=3, 2<=p<=n-1", "C_{n,p} x R^n"),
        f("Gprime", "n>=3", "B'_{n,n} x R^n"),
        f("B", "n>=2", "(R I + span E_{i,n}) x R^n, a MASA without open orbit"),
        f("L2", "i in 1..6", "the MASA L_{2,i} of sl(3) plus the identity"),
        f("Y", "i in 1..17, eps=+-1 (i=6), corrected=0|1 (i=8)", "the MASA Y_i of sl(4) plus the identity"),
        f("sum", "", "G(3,1)+aff(R) via block generators; see dim8_table"),
    ]
}

fn get(params: &Params, key: &str) -> Result<i64> {
    params
        .get(key)
        .copied()
        .ok_or_else(|| Error::InvalidArgument(format!("missing parameter {key}")))
}

fn get_usize(params: &Params, key: &str) -> Result<usize> {
    let v = get(params, key)?;
    usize::try_from(v).map_err(|_| Error::InvalidArgument(format!("parameter {key} = {v} must be nonnegative")))
}

fn functional(dim: usize, index: usize) -> LinearForm {
    LinearForm::dual_basis(dim, index - 1)
}

fn label(s: &str) -> ClassificationLabel {
    s.parse().expect("well-formed label")
}

/// Builds a named entry with the default size ceiling.
pub fn build(name: &str, params: &Params) -> Result<CatalogEntry> {
    build_with_max(name, params, DEFAULT_MAX_N)
}

/// Builds a named entry, rejecting matrix sizes above `max_n`.
pub fn build_with_max(name: &str, params: &Params, max_n: usize) -> Result<CatalogEntry> {
    if let Some(&n) = params.get("n") {
        if n > max_n as i64 {
            return Err(Error::InvalidArgument(format!("n = {n} exceeds the ceiling {max_n}")));
        }
    }
    let ps = params.clone();
    match name {
        "aff_R" | "aff(R)" => build("D0", &[("n".to_string(), 1)].into()),
        "aff_C" | "aff(C)" => build("D01", &[("n".to_string(), 2)].into()),
        "D0" => {
            let n = get_usize(params, "n")?;
            let gens = d0_generators(n)?;
            let entry = CatalogEntry::from_generators(
                "D0",
                ps,
                gens,
                Expected {
                    frobenius: Some(true),
                    functional: Some(functional(2 * n, 2 * n)),
                    masa: Some(true),
                    label: Some(label(&format!("D0({n})"))),
                    nilradical_class: Some(n),
                    ..Default::default()
                },
            )?;
            check_table(&entry.title(), &entry.algebra, &d0_table(n)?)?;
            Ok(entry)
        }
        "D01" => {
            let n = get_usize(params, "n")?;
            let gens = d01_generators(n)?;
            let algebra = d01(n)?;
            let mut entry = CatalogEntry::from_generators(
                "D01",
                ps,
                gens,
                Expected {
                    frobenius: Some(true),
                    functional: Some(functional(2 * n, n + 1)),
                    masa: Some(true),
                    label: Some(label(&format!("D01({n})"))),
                    ..Default::default()
                },
            )?;
            entry.algebra = algebra;
            Ok(entry)
        }
        "G" => {
            let (n, p) = (get_usize(params, "n")?, get_usize(params, "p")?);
            let entry = CatalogEntry::from_generators(
                "G",
                ps,
                g_generators(n, p)?,
                Expected {
                    frobenius: Some(true),
                    functional: Some(functional(2 * n, n + 1)),
                    masa: Some(true),
                    nilradical_derived_dim: Some(p),
                    nilradical_class: Some(p + 1),
                    ..Default::default()
                },
            )?;
            check_table(&entry.title(), &entry.algebra, &g_table(n, p)?)?;
            Ok(entry)
        }
        "h" => {
            let (n, p) = (get_usize(params, "n")?, get_usize(params, "p")?);
            let entry = CatalogEntry::from_generators(
                "h",
                ps,
                h_generators(n, p)?,
                Expected {
                    frobenius: Some(true),
                    functional: Some(functional(2 * n, n + 1)),
                    masa: Some(true),
                    nilradical_derived_dim: Some(p),
                    nilradical_class: Some(3),
                    ..Default::default()
                },
            )?;
            check_table(&entry.title(), &entry.algebra, &h_table(n, p)?)?;
            Ok(entry)
        }
        "Gprime" | "G'" => {
            let n = get_usize(params, "n")?;
            let entry = CatalogEntry::from_generators(
                "Gprime",
                ps,
                g_prime_generators(n)?,
                Expected {
                    frobenius: Some(true),
                    functional: Some(functional(2 * n, n + 1)),
                    masa: Some(true),
                    nilradical_derived_dim: Some(n - 1),
                    ..Default::default()
                },
            )?;
            check_table(&entry.title(), &entry.algebra, &g_prime_table(n)?)?;
            Ok(entry)
        }
        "B" => {
            let n = get_usize(params, "n")?;
            let entry = CatalogEntry::from_generators(
                "B",
                ps,
                b_generators(n)?,
                Expected {
                    frobenius: Some(false),
                    masa: Some(true),
                    ..Default::default()
                },
            )?;
            check_table(&entry.title(), &entry.algebra, &b_table(n)?)?;
            Ok(entry)
        }
        "L2" => {
            let i = get_usize(params, "i")?;
            let gens = with_identity(3, l2_masa(i)?);
            let mut ex = Expected {
                frobenius: Some(i != 4),
                masa: Some(true),
                ..Default::default()
            };
            match i {
                1 => ex.label = Some(label("aff(R)+aff(R)+aff(R)")),
                2 => ex.label = Some(label("aff(R)+aff(C)")),
                3 => ex.label = Some(label("D0(2)+aff(R)")),
                4 => ex.equals = Some(EntryRef::new("B", &[("n", 3)])),
                5 => ex.equals = Some(EntryRef::new("G", &[("n", 3), ("p", 1)])),
                _ => ex.label = Some(label("D0(3)")),
            }
            if i == 6 {
                // ℚ[E12 + E23] with the standard basis of V, not the reversed
                // one used by D0, so no table equality here.
                ex.nilradical_class = Some(3);
            }
            CatalogEntry::from_generators("L2", ps, gens, ex)
        }
        "Y" => {
            let i = get_usize(params, "i")?;
            let eps = params.get("eps").copied().unwrap_or(1);
            let corrected = params.get("corrected").copied().unwrap_or(1) != 0;
            let gens = with_identity(4, y_masa(i, eps, corrected)?);
            let mut ex = Expected {
                masa: Some(true),
                frobenius: Some(!matches!(i, 1 | 3 | 4 | 10)),
                ..Default::default()
            };
            match i {
                2 => ex.equals = Some(EntryRef::new("G", &[("n", 4), ("p", 1)])),
                3 => ex.equals = Some(EntryRef::new("B", &[("n", 4)])),
                5 => ex.equals = Some(EntryRef::new("h", &[("n", 4), ("p", 2)])),
                6 => {
                    ex.functional = Some(functional(8, 5));
                    if eps == 1 {
                        ex.equals = Some(EntryRef::new("h", &[("n", 4), ("p", 3)]));
                    }
                }
                7 => ex.label = Some(label("D0(4)")),
                8 => ex.label = Some(label("D01(4)")),
                11 => ex.label = Some(label("D0(3)+aff(R)")),
                12 => ex.label = Some(label("aff(C)+aff(C)")),
                13 => ex.label = Some(label("D0(2)+aff(C)")),
                14 => ex.label = Some(label("aff(R)+aff(R)+aff(C)")),
                15 => ex.label = Some(label("D0(2)+aff(R)+aff(R)")),
                16 => ex.label = Some(label("aff(R)+aff(R)+aff(R)+aff(R)")),
                17 => ex.label = Some(label("D0(2)+D0(2)")),
                _ => {}
            }
            CatalogEntry::from_generators("Y", ps, gens, ex)
        }
        "sum" => {
            // G(3,1) + aff(R), the only decomposable non-nonderogatory
            // algebra of dimension 8.
            let gens = sum_generators(&[g_generators(3, 1)?, vec![MatrixQ::identity(1)]])?;
            CatalogEntry::from_generators(
                "sum",
                ps,
                gens,
                Expected {
                    frobenius: Some(true),
                    masa: Some(true),
                    ..Default::default()
                },
            )
        }
        _ => Err(Error::UnknownEntry(name.to_string())),
    }
}

fn params(ps: &[(&str, i64)]) -> Params {
    ps.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

/// An entry for the algebra ℚ[M] ⋉ ℚⁿ of the representative matrix of a
/// label, named by the label.
pub fn label_entry(l: &ClassificationLabel) -> Result<CatalogEntry> {
    let m = crate::nonderog::representative_matrix(l)?;
    let gens = power_basis(&m)?;
    CatalogEntry::from_generators(
        &l.to_string(),
        Params::new(),
        gens,
        Expected {
            frobenius: Some(true),
            masa: Some(true),
            label: Some(l.clone()),
            ..Default::default()
        },
    )
}

/// A classification table row: a short label and the entry behind it.
#[derive(Clone, Debug, Serialize)]
pub struct TableRow {
    pub label: String,
    pub entry: CatalogEntry,
}

fn row(label: &str, entry: CatalogEntry) -> TableRow {
    TableRow {
        label: label.to_string(),
        entry,
    }
}

fn label_row(l: &ClassificationLabel) -> Result<TableRow> {
    Ok(row(&l.to_string(), label_entry(l)?))
}

/// The 14 pairwise non-isomorphic 2-solvable Frobenius algebras of
/// dimension 8: nine of the form ℚ[M] ⋉ ℚ⁴ with M nonderogatory, then
/// G(4,1), h(4,2), h(4,3), G'(4) and G(3,1) + aff(R).
pub fn dim8_table() -> Result<Vec<TableRow>> {
    let mut out = crate::nonderog::enumerate_labels(4)
        .iter()
        .map(label_row)
        .collect::<Result<Vec<_>>>()?;
    out.push(row("G(4,1)", build("G", &params(&[("n", 4), ("p", 1)]))?));
    out.push(row("h(4,2)", build("h", &params(&[("n", 4), ("p", 2)]))?));
    out.push(row("h(4,3)", build("h", &params(&[("n", 4), ("p", 3)]))?));
    out.push(row("G'(4,4)", build("Gprime", &params(&[("n", 4)]))?));
    out.push(row("G(3,1)+aff(R)", build("sum", &Params::new())?));
    Ok(out)
}

/// The 2-solvable Frobenius algebras of dimension 2, 4 and 6.
pub fn low_dim_table() -> Result<Vec<TableRow>> {
    let mut out = Vec::new();
    for n in 1..=3 {
        for l in crate::nonderog::enumerate_labels(n) {
            out.push(label_row(&l)?);
        }
    }
    out.push(row("G(3,1)", build("G", &params(&[("n", 3), ("p", 1)]))?));
    Ok(out)
}

// ---------------------------------------------------------------------------
// Witnesses

/// An explicit isomorphism: column k of `psi` is the image of the k-th
/// basis vector of `source`, in the basis of `target`.
#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub name: String,
    pub source_name: String,
    pub target_name: String,
    pub psi: MatrixQ,
    pub source: LieAlgebra,
    pub target: LieAlgebra,
}

impl Witness {
    pub fn verify(&self) -> Result<bool> {
        crate::lie::verify_isomorphism(&self.psi, &self.source, &self.target)
    }
}

/// The permutation swapping e_3 ↔ e_n and e_{n+3} ↔ e_{2n}, from G(n,2) to
/// h(n,2).
pub fn g_to_h_witness(n: usize) -> Result<Witness> {
    let mut perm: Vec<usize> = (0..2 * n).collect();
    perm.swap(2, n - 1);
    perm.swap(n + 2, 2 * n - 1);
    let psi = Matrix::from_fn(2 * n, 2 * n, |i, j| if perm[j] == i { Rational::one() } else { Rational::zero() });
    Ok(Witness {
        name: format!("G({n},2)->h({n},2)"),
        source_name: format!("G({n},2)"),
        target_name: format!("h({n},2)"),
        psi,
        source: build("G", &params(&[("n", n as i64), ("p", 2)]))?.algebra,
        target: build("h", &params(&[("n", n as i64), ("p", 2)]))?.algebra,
    })
}

/// Y(6, −1) → G'(4): images of e_1 … e_4, ẽ_1 … ẽ_4.
pub fn y6_to_g_prime_witness() -> Result<Witness> {
    let one = Rational::one;
    let m1 = || q(-1);
    let images = [
        coords(8, &[(1, one())]),
        coords(8, &[(2, one()), (3, m1())]),
        coords(8, &[(2, m1()), (3, m1())]),
        coords(8, &[(4, m1())]),
        coords(8, &[(5, q(-2))]),
        coords(8, &[(6, m1()), (7, one())]),
        coords(8, &[(6, one()), (7, one())]),
        coords(8, &[(8, one())]),
    ];
    Ok(Witness {
        name: "Y6(-1)->G'(4)".into(),
        source_name: "Y(i=6,eps=-1)".into(),
        target_name: "Gprime(n=4)".into(),
        psi: Matrix::from_columns(&images)?,
        source: build("Y", &params(&[("i", 6), ("eps", -1)]))?.algebra,
        target: build("Gprime", &params(&[("n", 4)]))?.algebra,
    })
}

/// Model algebra for a Y item: a direct sum of catalog blocks.
fn model(parts: &[LieAlgebra]) -> LieAlgebra {
    direct_sum(parts)
}

/// Witness from Y_i to a direct sum, given the images of the model's
/// basis inside Y_i (1-based coordinates over e_1 … e_4, ẽ_1 … ẽ_4).
fn y_witness(i: usize, target_name: &str, target: LieAlgebra, images: Vec<Vec<Rational>>) -> Result<Witness> {
    let phi = Matrix::from_columns(&images)?;
    Ok(Witness {
        name: format!("Y{i}->{target_name}"),
        source_name: format!("Y(i={i})"),
        target_name: target_name.to_string(),
        psi: phi.inverse()?,
        source: build("Y", &params(&[("i", i as i64)]))?.algebra,
        target,
    })
}

fn c(num: i64, den: i64) -> Rational {
    Rational::new(num, den)
}

/// Vector with 1-based coefficients over e_1 … e_4 followed by ẽ_1 … ẽ_4.
fn y(entries: &[(usize, Rational)]) -> Vec<Rational> {
    coords(8, entries)
}

fn tilde(j: usize) -> Vec<Rational> {
    y(&[(4 + j, Rational::one())])
}

/// The basis changes for Y_9 and Y_11 … Y_17.
pub fn y_witnesses() -> Result<Vec<Witness>> {
    let g31 = build("G", &params(&[("n", 3), ("p", 1)]))?.algebra;
    let (ar, ac, d02, d03) = (aff_r()?, aff_c()?, d0(2)?, d0(3)?);
    // (3e1 + e2)/4 and (e1 − e2)/4 split off the last coordinate for
    // e2 = diag(1,1,1,−3).
    let top3 = y(&[(1, c(3, 4)), (2, c(1, 4))]);
    let last = y(&[(1, c(1, 4)), (2, c(-1, 4))]);
    // (e1 ± e2)/2 split ℚ⁴ = ℚ² ⊕ ℚ² for e2 = diag(1,1,−1,−1).
    let first2 = y(&[(1, c(1, 2)), (2, c(1, 2))]);
    let second2 = y(&[(1, c(1, 2)), (2, c(-1, 2))]);
    // (e1 − e2 ± 2e4)/4 for e4 = E33 − E44.
    let third = y(&[(1, c(1, 4)), (2, c(-1, 4)), (4, c(1, 2))]);
    let fourth = y(&[(1, c(1, 4)), (2, c(-1, 4)), (4, c(-1, 2))]);
    let e3 = y(&[(3, Rational::one())]);
    let e4 = y(&[(4, Rational::one())]);
    Ok(vec![
        y_witness(
            9,
            "G(3,1)+aff(R)",
            model(&[g31, ar.clone()]),
            vec![top3.clone(), e3.clone(), e4.clone(), tilde(1), tilde(2), tilde(3), last.clone(), tilde(4)],
        )?,
        y_witness(
            11,
            "D0(3)+aff(R)",
            model(&[d03, ar.clone()]),
            vec![top3, e3.clone(), e4.clone(), tilde(3), tilde(2), tilde(1), last, tilde(4)],
        )?,
        y_witness(
            12,
            "aff(C)+aff(C)",
            model(&[ac.clone(), ac.clone()]),
            vec![
                first2.clone(),
                e3.clone(),
                tilde(2),
                tilde(1),
                second2.clone(),
                e4.clone(),
                tilde(4),
                tilde(3),
            ],
        )?,
        y_witness(
            13,
            "aff(C)+D0(2)",
            model(&[ac.clone(), d02.clone()]),
            vec![
                first2.clone(),
                e3.clone(),
                tilde(2),
                tilde(1),
                second2.clone(),
                e4.clone(),
                tilde(4),
                tilde(3),
            ],
        )?,
        y_witness(
            14,
            "aff(C)+aff(R)+aff(R)",
            model(&[ac, ar.clone(), ar.clone()]),
            vec![
                first2.clone(),
                e3.clone(),
                tilde(2),
                tilde(1),
                third.clone(),
                tilde(3),
                fourth.clone(),
                tilde(4),
            ],
        )?,
        y_witness(
            15,
            "D0(2)+aff(R)+aff(R)",
            model(&[d02.clone(), ar.clone(), ar.clone()]),
            vec![first2.clone(), e3.clone(), tilde(2), tilde(1), third, tilde(3), fourth, tilde(4)],
        )?,
        y_witness(
            16,
            "aff(R)+aff(R)+aff(R)+aff(R)",
            model(&[ar.clone(), ar.clone(), ar.clone(), ar]),
            vec![
                y(&[(1, c(3, 12)), (2, c(1, 12)), (3, c(2, 12)), (4, c(6, 12))]),
                tilde(1),
                y(&[(1, c(3, 12)), (2, c(1, 12)), (3, c(2, 12)), (4, c(-6, 12))]),
                tilde(2),
                y(&[(1, c(3, 12)), (2, c(1, 12)), (3, c(-4, 12))]),
                tilde(3),
                y(&[(1, c(1, 4)), (2, c(-1, 4))]),
                tilde(4),
            ],
        )?,
        y_witness(
            17,
            "D0(2)+D0(2)",
            model(&[d02.clone(), d02]),
            vec![first2, e3, tilde(2), tilde(1), second2, e4, tilde(4), tilde(3)],
        )?,
    ])
}

/// aff(ℂ) → ℚ[φ] ⋉ ℚ² for φ = [[r, −s], [s, r]], s ≠ 0, with X_1 = I,
/// X_2 = (φ − rI)/s, X_3 = pẽ_1 − qẽ_2, X_4 = qẽ_1 + pẽ_2.
pub fn aff_c_witness(r: &Rational, s: &Rational, p: &Rational, qq: &Rational) -> Result<Witness> {
    if s.is_zero() || (p.is_zero() && qq.is_zero()) {
        return Err(Error::InvalidArgument("need s != 0 and (p, q) != 0".into()));
    }
    let phi = Matrix::from_rows(vec![vec![r.clone(), -s], vec![s.clone(), r.clone()]])?;
    let target = semidirect_sum(&[MatrixQ::identity(2), phi], 2)?;
    let z = Rational::zero;
    let cols = vec![
        vec![Rational::one(), z(), z(), z()],
        vec![-(r / s), s.recip()?, z(), z()],
        vec![z(), z(), p.clone(), -qq],
        vec![z(), z(), qq.clone(), p.clone()],
    ];
    Ok(Witness {
        name: format!("aff(C)->G_phi(r={r},s={s})"),
        source_name: "aff(C)".into(),
        target_name: format!("G_phi(r={r},s={s})"),
        psi: Matrix::from_columns(&cols)?,
        source: aff_c()?,
        target,
    })
}

/// Every witness in the catalog.
pub fn witnesses() -> Result<Vec<Witness>> {
    let mut out = Vec::new();
    for n in 3..=6 {
        out.push(g_to_h_witness(n)?);
    }
    out.push(y6_to_g_prime_witness()?);
    out.extend(y_witnesses()?);
    out.push(aff_c_witness(&q(3), &q(2), &q(1), &q(-1))?);
    out.push(aff_c_witness(&c(1, 2), &q(-5), &q(0), &q(2))?);
    Ok(out)
}

// ---------------------------------------------------------------------------
// Nilpotent associative algebras of dimension 3

/// A three-dimensional algebra on (a, b, c) given by its products.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AssocAlgebra {
    pub name: String,
    /// `products[i][j]` is the coordinate vector of x_i x_j.
    pub products: Vec<Vec<Vec<Rational>>>,
}

impl AssocAlgebra {
    fn new(name: &str, nonzero: &[(usize, usize, [i64; 3])]) -> Self {
        let mut products = vec![vec![vec![Rational::zero(); 3]; 3]; 3];
        for &(i, j, v) in nonzero {
            products[i][j] = v.iter().map(|&x| q(x)).collect();
        }
        AssocAlgebra {
            name: name.to_string(),
            products,
        }
    }

    fn mul(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); 3];
        for i in 0..3 {
            for j in 0..3 {
                let k = &x[i] * &y[j];
                if k.is_zero() {
                    continue;
                }
                for (o, p) in out.iter_mut().zip(&self.products[i][j]) {
                    *o += &(&k * p);
                }
            }
        }
        out
    }

    fn basis(i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); 3];
        v[i] = Rational::one();
        v
    }

    pub fn is_commutative(&self) -> bool {
        (0..3).all(|i| (0..3).all(|j| self.products[i][j] == self.products[j][i]))
    }

    pub fn is_associative(&self) -> bool {
        (0..3).all(|i| {
            (0..3).all(|j| {
                (0..3).all(|k| {
                    let (x, y, z) = (Self::basis(i), Self::basis(j), Self::basis(k));
                    self.mul(&self.mul(&x, &y), &z) == self.mul(&x, &self.mul(&y, &z))
                })
            })
        })
    }

    /// Signature of the symmetric form (x, y) ↦ coefficient of c in xy,
    /// for commutative algebras whose square is the line ℚc.
    pub fn square_form(&self) -> Result<Option<FormSignature>> {
        if !self.is_commutative() {
            return Ok(None);
        }
        let square_in_c = (0..3).all(|i| (0..3).all(|j| self.products[i][j][0].is_zero() && self.products[i][j][1].is_zero()));
        let form = Matrix::from_fn(3, 3, |i, j| self.products[i][j][2].clone());
        if !square_in_c || form.is_zero() {
            return Ok(None);
        }
        let (p, n, z) = symmetric_signature(&form)?;
        Ok(Some(FormSignature {
            larger: p.max(n),
            smaller: p.min(n),
            null: z,
        }))
    }

    /// Checks that the matrices (a, b, c) multiply by this table.
    pub fn realized_by(&self, abc: &[MatrixQ]) -> Result<bool> {
        if abc.len() != 3 {
            return Err(Error::InvalidArgument("need three matrices".into()));
        }
        let n = abc[0].require_square()?;
        for i in 0..3 {
            for j in 0..3 {
                let lhs = abc[i].checked_mul(&abc[j])?;
                let terms: Vec<(Rational, &MatrixQ)> =
                    self.products[i][j].iter().cloned().zip(abc.iter()).collect();
                if lhs != lin(n, &terms) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// de Graaf's list, with A_{3,3} and A_{3,4} at the given parameter s.
pub fn degraaf(s: i64) -> Vec<AssocAlgebra> {
    let (a, b) = (0, 1);
    vec![
        AssocAlgebra::new("A3_1", &[]),
        AssocAlgebra::new("A3_2", &[(a, a, [0, 0, 1])]),
        AssocAlgebra::new(&format!("A3_3(s={s})"), &[(a, a, [0, 0, s]), (b, b, [0, 0, 1])]),
        AssocAlgebra::new(
            &format!("A3_4(s={s})"),
            &[(a, a, [0, 0, s]), (b, b, [0, 0, 1]), (a, b, [0, 0, 1])],
        ),
        AssocAlgebra::new("A3_5", &[(a, b, [0, 0, 1]), (b, a, [0, 0, -1])]),
        AssocAlgebra::new("A3_6", &[(a, a, [0, 1, 0]), (a, b, [0, 0, 1]), (b, a, [0, 0, 1])]),
    ]
}

/// Matrix realizations (a, b, c) of the commutative classes inside sl(4),
/// paired with the catalog entry they generate together with I.
pub fn degraaf_realizations() -> Vec<(AssocAlgebra, Vec<MatrixQ>, EntryRef)> {
    let n = 4;
    let u = |i, j| e(n, i, j);
    let list = degraaf(1);
    let a33m = degraaf(-1).swap_remove(2);
    // D0 uses the reversed basis of V, where M_0 acts as its transpose.
    let m0 = principal_nilpotent(4).transpose();
    vec![
        (list[0].clone(), vec![u(1, 2), u(1, 3), u(1, 4)], EntryRef::new("G", &[("n", 4), ("p", 1)])),
        (list[1].clone(), vec![&u(1, 2) + &u(2, 4), u(1, 3), u(1, 4)], EntryRef::new("h", &[("n", 4), ("p", 2)])),
        (
            list[2].clone(),
            vec![&u(1, 2) + &u(2, 4), &u(1, 3) + &u(3, 4), u(1, 4)],
            EntryRef::new("h", &[("n", 4), ("p", 3)]),
        ),
        (
            a33m,
            vec![
                sum(&[u(1, 2), u(3, 4), -u(1, 3), -u(2, 4)]),
                sum(&[u(1, 2), u(3, 4), u(1, 3), u(2, 4)]),
                u(1, 4).scale(&q(2)),
            ],
            EntryRef::new("Gprime", &[("n", 4)]),
        ),
        (
            list[5].clone(),
            vec![m0.clone(), m0.pow(2).expect("square"), m0.pow(3).expect("square")],
            EntryRef::new("D0", &[("n", 4)]),
        ),
    ]
}

/// Published versions that fail, kept as regression checks.
pub mod errata {
    use super::*;

    /// Y_8 as originally listed; its generators do not commute.
    pub fn y8_published() -> Vec<MatrixQ> {
        let u = |i, j| e(4, i, j);
        vec![
            sum(&[u(1, 2), -u(2, 1), u(2, 4), -u(4, 3)]),
            &u(1, 3) + &u(2, 4),
            u(1, 4),
        ]
    }

    /// The Y_{6,−1} → G'(4) map as printed: e_4 ↦ −2e_4', ẽ_1 ↦ −4ẽ_1',
    /// with ẽ_4 ↦ ẽ_4' for the unspecified image.
    pub fn y6_printed_witness() -> Result<Witness> {
        let mut w = y6_to_g_prime_witness()?;
        let mut psi = w.psi.clone();
        for i in 0..8 {
            psi.set(i, 3, Rational::zero());
            psi.set(i, 4, Rational::zero());
        }
        psi.set(3, 3, q(-2));
        psi.set(4, 4, q(-4));
        w.psi = psi;
        w.name = "Y6(-1)->G'(4), printed".into();
        Ok(w)
    }

    /// Y_16 with e_3' = (3e_1 + e_2 − 4e_3)/4 as printed instead of /12.
    pub fn y16_printed_witness() -> Result<Witness> {
        let ws = y_witnesses()?;
        let w = ws.into_iter().find(|w| w.name.starts_with("Y16")).expect("Y16 witness");
        let mut phi = w.psi.inverse()?;
        let col = y(&[(1, c(3, 4)), (2, c(1, 4)), (3, q(-1))]);
        for (i, v) in col.into_iter().enumerate() {
            phi.set(i, 4, v);
        }
        Ok(Witness {
            name: "Y16->aff(R)^4, printed".into(),
            psi: phi.inverse()?,
            ..w
        })
    }

    /// Y_14 with E33 − E34 as printed in the set description.
    pub fn y14_printed() -> Vec<MatrixQ> {
        let mut gens = y_masa(14, 1, true).expect("Y14");
        gens[2] = &e(4, 3, 3) - &e(4, 3, 4);
        gens
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ps(p: &[(&str, i64)]) -> Params {
        params(p)
    }

    #[test]
    fn blocks_match_tables() {
        for n in 1..=5 {
            d0(n).unwrap();
        }
        d01(2).unwrap();
        d01(4).unwrap();
        assert_eq!(aff_r().unwrap().dim(), 2);
        let g = d01(4).unwrap();
        assert_eq!(g.bracket_basis(1, 6), coords(8, &[(5, q(1)), (8, q(1))]));
    }

    #[test]
    fn families_build() {
        for n in 2..=5 {
            for p in 1..n {
                build("G", &ps(&[("n", n), ("p", p)])).unwrap();
            }
        }
        for n in 3..=5 {
            for p in 2..n {
                build("h", &ps(&[("n", n), ("p", p)])).unwrap();
            }
            build("Gprime", &ps(&[("n", n)])).unwrap();
            build("B", &ps(&[("n", n)])).unwrap();
        }
        assert!(matches!(build("nope", &Params::new()), Err(Error::UnknownEntry(_))));
        assert!(build("G", &ps(&[("n", 4), ("p", 4)])).is_err());
        assert!(build("D0", &ps(&[("n", 11)])).is_err());
    }

    #[test]
    fn stated_facts_hold_small() {
        for (name, p) in [
            ("G", ps(&[("n", 3), ("p", 2)])),
            ("h", ps(&[("n", 4), ("p", 3)])),
            ("Gprime", ps(&[("n", 4)])),
            ("B", ps(&[("n", 3)])),
            ("D0", ps(&[("n", 3)])),
            ("D01", ps(&[("n", 4)])),
        ] {
            let entry = build(name, &p).unwrap();
            for f in entry.check_facts().unwrap() {
                assert!(f.ok, "{}: {f:?}", entry.title());
            }
        }
    }

    #[test]
    fn y_list() {
        for i in 1..=17 {
            let mut p = ps(&[("i", i)]);
            if i == 6 {
                for eps in [1, -1] {
                    p.insert("eps".into(), eps);
                    let entry = build("Y", &p).unwrap();
                    for f in entry.check_facts().unwrap() {
                        assert!(f.ok, "{}: {f:?}", entry.title());
                    }
                }
                continue;
            }
            let entry = build("Y", &p).unwrap();
            for f in entry.check_facts().unwrap() {
                assert!(f.ok, "{}: {f:?}", entry.title());
            }
        }
        let bad = build("Y", &ps(&[("i", 8), ("corrected", 0)]));
        assert!(matches!(bad, Err(Error::NonAbelian(_))), "{bad:?}");
    }

    #[test]
    fn l2_list() {
        for i in 1..=6 {
            let entry = build("L2", &ps(&[("i", i)])).unwrap();
            for f in entry.check_facts().unwrap() {
                assert!(f.ok, "{}: {f:?}", entry.title());
            }
        }
    }

    #[test]
    fn all_witnesses_verify() {
        for w in witnesses().unwrap() {
            assert!(w.verify().unwrap(), "{}", w.name);
        }
        assert!(!errata::y6_printed_witness().unwrap().verify().unwrap());
        assert!(!errata::y16_printed_witness().unwrap().verify().unwrap());
    }

    #[test]
    fn degraaf_algebras() {
        let l = degraaf(1);
        assert!(l.iter().all(AssocAlgebra::is_associative));
        assert!(!l[3].is_commutative());
        assert!(!l[4].is_commutative());
        let pos = degraaf(1)[2].square_form().unwrap().unwrap();
        let neg = degraaf(-1)[2].square_form().unwrap().unwrap();
        assert_eq!((pos.larger, pos.smaller), (2, 0));
        assert_eq!((neg.larger, neg.smaller), (1, 1));
        for (alg, mats, target) in degraaf_realizations() {
            assert!(alg.realized_by(&mats).unwrap(), "{}", alg.name);
            let entry = build(&target.name, &target.params).unwrap();
            let span = Subspace::span_matrices(4, entry.matrix_generators.as_ref().unwrap()).unwrap();
            let mut ours = mats.clone();
            ours.push(MatrixQ::identity(4));
            assert_eq!(Subspace::span_matrices(4, &ours).unwrap(), span, "{}", alg.name);
        }
    }

    #[test]
    fn tampered_table_fails_jacobi() {
        let mut t = Vec::new();
        for i in 1..=3 {
            for j in 1..=3 {
                if j + i - 1 <= 3 {
                    let c = if (i, j) == (1, 2) { q(-1) } else { q(1) };
                    t.push((i, 3 + j, vec![(3 + j + i - 1, c)]));
                }
            }
        }
        assert!(matches!(LieAlgebra::from_brackets(6, t), Err(Error::Jacobi(..))));
    }

    #[test]
    fn tables_have_expected_sizes() {
        assert_eq!(dim8_table().unwrap().len(), 14);
        assert_eq!(low_dim_table().unwrap().len(), 9);
    }
}

//! Lie algebras given by structure constants.
//!
//! Indices are 0-based inside the crate. The JSON form and error messages
//! use 1-based indices (`e1`, `e2`, …).

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{dense_to_sparse, Echelon, Matrix, MatrixQ, SparseRow, Subspace};
use crate::scalar::Rational;

type Terms = Vec<(usize, Rational)>;

/// Where an algebra came from. Only split algebras `B ⋉ V` (and direct sums
/// of them) carry enough data to compute a nilradical.
#[derive(Clone, Debug)]
pub enum Provenance {
    Table,
    /// Built by [`semidirect_sum`] from these generators, acting on ℚⁿ.
    Split { generators: Vec<MatrixQ> },
    DirectSum(Vec<LieAlgebra>),
}

/// Finite-dimensional Lie algebra over ℚ with basis `e_0 … e_{dim-1}`.
/// Brackets are stored for `i < j` only; missing pairs bracket to zero.
#[derive(Clone)]
pub struct LieAlgebra {
    dim: usize,
    names: Vec<String>,
    brackets: BTreeMap<(usize, usize), Terms>,
    provenance: Provenance,
}

impl PartialEq for LieAlgebra {
    fn eq(&self, o: &Self) -> bool {
        self.dim == o.dim && self.brackets == o.brackets
    }
}

impl Eq for LieAlgebra {}

fn default_names(dim: usize) -> Vec<String> {
    (1..=dim).map(|i| format!("e{i}")).collect()
}

impl LieAlgebra {
    /// Builds an algebra from 1-based bracket entries `(i, j, [(k, c)])`
    /// meaning `[e_i, e_j] = Σ c·e_k`. Entries with `i > j` are stored
    /// negated; repeated pairs add up. Fails if the Jacobi identity does.
    pub fn from_brackets<I>(dim: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, Vec<(usize, Rational)>)>,
    {
        let mut acc: BTreeMap<(usize, usize), Vec<Rational>> = BTreeMap::new();
        for (i, j, terms) in entries {
            let in_range = |x: usize| x >= 1 && x <= dim;
            if !in_range(i) || !in_range(j) || terms.iter().any(|(k, _)| !in_range(*k)) {
                return Err(Error::InvalidArgument(format!(
                    "bracket index out of range 1..={dim} in [e{i}, e{j}]"
                )));
            }
            if i == j {
                if terms.iter().any(|(_, c)| !c.is_zero()) {
                    return Err(Error::InvalidArgument(format!("[e{i}, e{i}] must vanish")));
                }
                continue;
            }
            let (a, b, sign) = if i < j { (i - 1, j - 1, 1) } else { (j - 1, i - 1, -1) };
            let v = acc.entry((a, b)).or_insert_with(|| vec![Rational::zero(); dim]);
            for (k, c) in terms {
                if sign > 0 {
                    v[k - 1] += &c;
                } else {
                    v[k - 1] -= &c;
                }
            }
        }
        LieAlgebra::from_dense(dim, acc, Provenance::Table)
    }

    /// Shorthand for tables with integer coefficients.
    pub fn from_int_table(dim: usize, table: &[(usize, usize, &[(usize, i64)])]) -> Result<Self> {
        LieAlgebra::from_brackets(
            dim,
            table.iter().map(|(i, j, ts)| {
                (*i, *j, ts.iter().map(|&(k, c)| (k, Rational::from_integer(c))).collect())
            }),
        )
    }

    fn from_dense(
        dim: usize,
        dense: BTreeMap<(usize, usize), Vec<Rational>>,
        provenance: Provenance,
    ) -> Result<Self> {
        let brackets = dense
            .into_iter()
            .filter_map(|(key, v)| {
                let t: Terms = v
                    .into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .collect();
                (!t.is_empty()).then_some((key, t))
            })
            .collect();
        let g = LieAlgebra {
            dim,
            names: default_names(dim),
            brackets,
            provenance,
        };
        g.check_jacobi()?;
        Ok(g)
    }

    pub fn abelian(dim: usize) -> Self {
        LieAlgebra {
            dim,
            names: default_names(dim),
            brackets: BTreeMap::new(),
            provenance: Provenance::Table,
        }
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "{} names for dimension {}",
                names.len(),
                self.dim
            )));
        }
        self.names = names;
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// Nonzero brackets `(i, j) ↦ [(k, c)]`, 0-based, `i < j`.
    pub fn brackets(&self) -> &BTreeMap<(usize, usize), Terms> {
        &self.brackets
    }

    pub fn is_abelian(&self) -> bool {
        self.brackets.is_empty()
    }

    /// `[e_i, e_j]` as a dense vector (0-based).
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim];
        let (key, neg) = if i <= j { ((i, j), false) } else { ((j, i), true) };
        if let Some(ts) = self.brackets.get(&key) {
            for (k, c) in ts {
                v[*k] = if neg { -c } else { c.clone() };
            }
        }
        v
    }

    /// Bilinear extension of the bracket.
    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        assert_eq!(x.len(), self.dim, "vector length");
        assert_eq!(y.len(), self.dim, "vector length");
        let mut out = vec![Rational::zero(); self.dim];
        for (&(i, j), ts) in &self.brackets {
            let c = &x[i] * &y[j] - &x[j] * &y[i];
            if c.is_zero() {
                continue;
            }
            for (k, t) in ts {
                out[*k] += &(&c * t);
            }
        }
        out
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim];
        v[i] = Rational::one();
        v
    }

    /// Reports the first failing triple, 1-based.
    pub fn check_jacobi(&self) -> Result<()> {
        let d = self.dim;
        for i in 0..d {
            for j in i + 1..d {
                for k in j + 1..d {
                    let ei = self.basis_vector(i);
                    let ej = self.basis_vector(j);
                    let ek = self.basis_vector(k);
                    let mut s = self.bracket(&ei, &self.bracket_basis(j, k));
                    let t = self.bracket(&ej, &self.bracket_basis(k, i));
                    let u = self.bracket(&ek, &self.bracket_basis(i, j));
                    for ((a, b), c) in s.iter_mut().zip(&t).zip(&u) {
                        *a += b;
                        *a += c;
                    }
                    if s.iter().any(|x| !x.is_zero()) {
                        return Err(Error::Jacobi(i + 1, j + 1, k + 1));
                    }
                }
            }
        }
        Ok(())
    }

    /// Matrix of `ad x`; column j is `[x, e_j]`.
    pub fn ad(&self, x: &[Rational]) -> MatrixQ {
        let cols: Vec<Vec<Rational>> = (0..self.dim)
            .map(|j| self.bracket(x, &self.basis_vector(j)))
            .collect();
        Matrix::from_columns(&cols).unwrap_or_else(|_| MatrixQ::zeros(0, 0))
    }

    /// K(x, y) = tr(ad x · ad y) in the basis.
    pub fn killing_form(&self) -> MatrixQ {
        let ads: Vec<MatrixQ> = (0..self.dim).map(|i| self.ad(&self.basis_vector(i))).collect();
        Matrix::from_fn(self.dim, self.dim, |i, j| {
            (0..self.dim)
                .map(|k| (0..self.dim).map(|l| ads[i].get(k, l) * ads[j].get(l, k)).sum::<Rational>())
                .sum()
        })
    }

    /// span{[a, b] : a ∈ A, b ∈ B}.
    pub fn bracket_spaces(&self, a: &Subspace, b: &Subspace) -> Result<Subspace> {
        if a.ambient_dim() != self.dim || b.ambient_dim() != self.dim {
            return Err(Error::DimensionMismatch("subspace of another algebra".into()));
        }
        let mut e = Echelon::new(self.dim);
        for x in a.basis() {
            for y in b.basis() {
                e.insert(dense_to_sparse(&self.bracket(x, y)));
            }
        }
        Ok(Subspace::from_echelon(&e))
    }

    /// Derived series D¹ = [g,g], D^{k+1} = [D^k, D^k], up to the first
    /// repeat.
    pub fn derived_series(&self) -> Vec<Subspace> {
        let mut out = Vec::new();
        let mut cur = Subspace::full(self.dim);
        loop {
            let next = self.bracket_spaces(&cur, &cur).expect("own subspaces");
            let done = next == cur;
            if !done || out.is_empty() {
                out.push(next.clone());
            }
            if done || next.dim() == 0 {
                break;
            }
            cur = next;
        }
        out
    }

    /// Lower central series C² = [g,g], C^{k+1} = [g, C^k], up to the first
    /// repeat.
    pub fn lower_central_series(&self) -> Vec<Subspace> {
        let full = Subspace::full(self.dim);
        let mut out = Vec::new();
        let mut cur = full.clone();
        loop {
            let next = self.bracket_spaces(&full, &cur).expect("own subspaces");
            let done = next == cur;
            if !done || out.is_empty() {
                out.push(next.clone());
            }
            if done || next.dim() == 0 {
                break;
            }
            cur = next;
        }
        out
    }

    pub fn derived_dims(&self) -> Vec<usize> {
        self.derived_series().iter().map(Subspace::dim).collect()
    }

    pub fn lower_central_dims(&self) -> Vec<usize> {
        self.lower_central_series().iter().map(Subspace::dim).collect()
    }

    /// [g,g] is abelian.
    pub fn is_two_solvable(&self) -> bool {
        let d = self.derived_series();
        d.len() < 2 || d[1].dim() == 0 || d[0].dim() == 0
    }

    pub fn is_nilpotent(&self) -> bool {
        self.lower_central_series().last().is_some_and(|s| s.dim() == 0)
    }

    pub fn center(&self) -> Subspace {
        // x is central iff Σ_i x_i c_{ij}^k = 0 for all j, k.
        let mut e = Echelon::new(self.dim);
        for j in 0..self.dim {
            let cols: Vec<Vec<Rational>> = (0..self.dim).map(|i| self.bracket_basis(i, j)).collect();
            for k in 0..self.dim {
                let row: SparseRow = (0..self.dim)
                    .filter(|&i| !cols[i][k].is_zero())
                    .map(|i| (i, cols[i][k].clone()))
                    .collect();
                e.insert(row);
            }
        }
        Subspace::span(self.dim, &e.kernel()).expect("kernel vectors have the right length")
    }

    /// The subalgebra spanned by `sub`, in the echelon basis of `sub`.
    pub fn restrict(&self, sub: &Subspace) -> Result<LieAlgebra> {
        if sub.ambient_dim() != self.dim {
            return Err(Error::DimensionMismatch("subspace of another algebra".into()));
        }
        let b = sub.basis();
        let r = b.len();
        let mut dense = BTreeMap::new();
        for i in 0..r {
            for j in i + 1..r {
                let v = self.bracket(&b[i], &b[j]);
                let c = sub
                    .coordinates(&v)
                    .ok_or_else(|| Error::NotClosed(format!("bracket of basis vectors {} and {}", i + 1, j + 1)))?;
                dense.insert((i, j), c);
            }
        }
        LieAlgebra::from_dense(r, dense, Provenance::Table)
    }

    /// Der(g) as a subspace of gl(dim), matrices flattened row-major:
    /// entry (a, b) of D is the e_a-coefficient of D e_b.
    pub fn derivation_algebra(&self) -> Subspace {
        let d = self.dim;
        let idx = |a: usize, b: usize| a * d + b;
        let mut e = Echelon::new(d * d);
        let table: Vec<Vec<Vec<Rational>>> = (0..d)
            .map(|i| (0..d).map(|j| self.bracket_basis(i, j)).collect())
            .collect();
        for i in 0..d {
            for j in i + 1..d {
                // D[e_i,e_j] − [D e_i, e_j] − [e_i, D e_j] = 0, component m
                for m in 0..d {
                    let mut row = SparseRow::new();
                    let mut add = |u: usize, c: &Rational| {
                        if c.is_zero() {
                            return;
                        }
                        let ent = row.entry(u).or_insert_with(Rational::zero);
                        *ent += c;
                    };
                    for (k, c) in table[i][j].iter().enumerate() {
                        add(idx(m, k), c);
                    }
                    for a in 0..d {
                        add(idx(a, i), &-&table[a][j][m]);
                        add(idx(a, j), &-&table[i][a][m]);
                    }
                    row.retain(|_, v| !v.is_zero());
                    e.insert(row);
                }
            }
        }
        Subspace::span(d * d, &e.kernel()).expect("kernel vectors have the right length")
    }

    /// Nilradical for split algebras and direct sums of them; `None` when
    /// the provenance does not allow it.
    pub fn nilradical(&self) -> Result<Option<Subspace>> {
        match &self.provenance {
            Provenance::Table => Ok(None),
            Provenance::Split { generators } => {
                let n = self.dim - generators.len();
                nilradical_split(generators, n).map(Some)
            }
            Provenance::DirectSum(parts) => {
                let mut vecs = Vec::new();
                let mut offset = 0;
                for p in parts {
                    let Some(s) = p.nilradical()? else { return Ok(None) };
                    for v in s.basis() {
                        let mut w = vec![Rational::zero(); self.dim];
                        w[offset..offset + p.dim].clone_from_slice(v);
                        vecs.push(w);
                    }
                    offset += p.dim;
                }
                Subspace::span(self.dim, &vecs).map(Some)
            }
        }
    }

    /// Basis of Nil(B) as matrices acting on one space, block diagonal for
    /// direct sums.
    fn nil_associative(&self) -> Result<Option<(usize, Vec<MatrixQ>)>> {
        match &self.provenance {
            Provenance::Table => Ok(None),
            Provenance::Split { generators } => {
                let n = self.dim - generators.len();
                let coords = nil_coordinates(generators, n)?;
                Ok(Some((n, coords.iter().map(|x| combine(generators, x, n)).collect())))
            }
            Provenance::DirectSum(parts) => {
                let mut pieces = Vec::new();
                for p in parts {
                    match p.nil_associative()? {
                        Some(x) => pieces.push(x),
                        None => return Ok(None),
                    }
                }
                let total: usize = pieces.iter().map(|(n, _)| n).sum();
                let mut out = Vec::new();
                let mut off = 0;
                for (n, mats) in pieces {
                    for m in mats {
                        let mut big = MatrixQ::zeros(total, total);
                        for i in 0..n {
                            for j in 0..n {
                                big.set(off + i, off + j, m.get(i, j).clone());
                            }
                        }
                        out.push(big);
                    }
                    off += n;
                }
                Ok(Some((total, out)))
            }
        }
    }
}

fn combine(gens: &[MatrixQ], x: &[Rational], n: usize) -> MatrixQ {
    let mut m = MatrixQ::zeros(n, n);
    for (g, c) in gens.iter().zip(x) {
        if !c.is_zero() {
            m = &m + &g.scale(c);
        }
    }
    m
}

fn check_generators(b: &[MatrixQ], n: usize) -> Result<()> {
    for m in b {
        if m.rows() != n || m.cols() != n {
            return Err(Error::DimensionMismatch(format!(
                "generator is {}x{}, expected {n}x{n}",
                m.rows(),
                m.cols()
            )));
        }
    }
    for (i, x) in b.iter().enumerate() {
        for (j, y) in b.iter().enumerate().skip(i + 1) {
            if !x.commutes_with(y)? {
                return Err(Error::NonAbelian(format!("generators {} and {}", i + 1, j + 1)));
            }
        }
    }
    if Subspace::span_matrices(n, b)?.dim() != b.len() {
        return Err(Error::InvalidArgument("generators are linearly dependent".into()));
    }
    Ok(())
}

/// B ⋉ ℚⁿ for a basis B of an abelian matrix subalgebra of gl(n): basis
/// `B_1 … B_m, ẽ_1 … ẽ_n`, `[B_i, ẽ_j] = B_i ẽ_j`, all other brackets zero.
pub fn semidirect_sum(b: &[MatrixQ], n: usize) -> Result<LieAlgebra> {
    check_generators(b, n)?;
    let m = b.len();
    let dim = m + n;
    let mut dense = BTreeMap::new();
    for (i, g) in b.iter().enumerate() {
        for j in 0..n {
            let mut v = vec![Rational::zero(); dim];
            for k in 0..n {
                v[m + k] = g.get(k, j).clone();
            }
            dense.insert((i, m + j), v);
        }
    }
    LieAlgebra::from_dense(
        dim,
        dense,
        Provenance::Split {
            generators: b.to_vec(),
        },
    )
}

/// Same as [`semidirect_sum`] but with the columns of `q` as the basis of
/// ℚⁿ, so the generators act through `q⁻¹ B_i q`.
pub fn semidirect_sum_in_basis(b: &[MatrixQ], q: &MatrixQ) -> Result<LieAlgebra> {
    let n = q.require_square()?;
    let qi = q.inverse()?;
    let conj: Vec<MatrixQ> = b
        .iter()
        .map(|m| qi.checked_mul(m)?.checked_mul(q))
        .collect::<Result<_>>()?;
    semidirect_sum(&conj, n)
}

/// Block sum with concatenated bases.
pub fn direct_sum(gs: &[LieAlgebra]) -> LieAlgebra {
    let dim: usize = gs.iter().map(|g| g.dim).sum();
    let mut brackets = BTreeMap::new();
    let mut names = Vec::new();
    let mut off = 0;
    for g in gs {
        for (&(i, j), ts) in &g.brackets {
            brackets.insert(
                (i + off, j + off),
                ts.iter().map(|(k, c)| (k + off, c.clone())).collect(),
            );
        }
        names.extend(g.names.iter().cloned());
        off += g.dim;
    }
    let names = if names.iter().collect::<std::collections::BTreeSet<_>>().len() == dim {
        names
    } else {
        default_names(dim)
    };
    LieAlgebra {
        dim,
        names,
        brackets,
        provenance: Provenance::DirectSum(gs.to_vec()),
    }
}

/// Coordinates (in the basis B) of a basis of Nil(span B), the nilpotent
/// elements of span B.
///
/// With A the unital associative algebra generated by B (commutative), an
/// element b of span B is nilpotent iff tr(b·c) = 0 for all c in A.
pub fn nil_coordinates(b: &[MatrixQ], n: usize) -> Result<Vec<Vec<Rational>>> {
    check_generators(b, n)?;
    let mut algebra = Subspace::span_matrices(n, &[MatrixQ::identity(n)])?.sum(&Subspace::span_matrices(n, b)?)?;
    loop {
        let basis = algebra.basis_matrices()?;
        let mut prods = basis.clone();
        for x in &basis {
            for y in b {
                prods.push(x.checked_mul(y)?);
            }
        }
        let next = Subspace::span_matrices(n, &prods)?;
        if next.dim() == algebra.dim() {
            break;
        }
        algebra = next;
    }
    let mut e = Echelon::new(b.len());
    for c in algebra.basis_matrices()? {
        let row: Vec<Rational> = b
            .iter()
            .map(|g| g.checked_mul(&c).and_then(|p| p.trace()))
            .collect::<Result<_>>()?;
        e.insert(dense_to_sparse(&row));
    }
    let coords = e.kernel();
    for x in &coords {
        if !combine(b, x, n).pow(n as u32)?.is_zero() {
            return Err(Error::Inconsistent("trace-form radical contains a non-nilpotent element".into()));
        }
    }
    Ok(coords)
}

/// Nil(B) ⊕ ℚⁿ inside `semidirect_sum(b, n)`.
pub fn nilradical_split(b: &[MatrixQ], n: usize) -> Result<Subspace> {
    let m = b.len();
    let mut vecs: Vec<Vec<Rational>> = nil_coordinates(b, n)?
        .into_iter()
        .map(|mut x| {
            x.resize(m + n, Rational::zero());
            x
        })
        .collect();
    for j in 0..n {
        let mut v = vec![Rational::zero(); m + n];
        v[m + j] = Rational::one();
        vecs.push(v);
    }
    Subspace::span(m + n, &vecs)
}

/// Checks that ψ (column k = image of the k-th basis vector of `g1`, in
/// the basis of `g2`) is an invertible bracket-preserving map.
pub fn verify_isomorphism(psi: &MatrixQ, g1: &LieAlgebra, g2: &LieAlgebra) -> Result<bool> {
    if psi.rows() != g2.dim || psi.cols() != g1.dim {
        return Err(Error::DimensionMismatch(format!(
            "map is {}x{}, algebras have dimensions {} and {}",
            psi.rows(),
            psi.cols(),
            g1.dim,
            g2.dim
        )));
    }
    if g1.dim != g2.dim || psi.rank() != g1.dim {
        return Ok(false);
    }
    let cols: Vec<Vec<Rational>> = (0..g1.dim).map(|j| psi.col(j)).collect();
    for i in 0..g1.dim {
        for j in i + 1..g1.dim {
            let lhs = psi.mul_vec(&g1.bracket_basis(i, j))?;
            let rhs = g2.bracket(&cols[i], &cols[j]);
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Signature of a symmetric rational form, sorted so that `larger ≥ smaller`
/// (a form and its negative give the same record).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FormSignature {
    pub larger: usize,
    pub smaller: usize,
    pub null: usize,
}

/// Inertia of a symmetric matrix by symmetric Gaussian elimination.
pub fn symmetric_signature(m: &MatrixQ) -> Result<(usize, usize, usize)> {
    let n = m.require_square()?;
    if *m != m.transpose() {
        return Err(Error::InvalidArgument("form is not symmetric".into()));
    }
    let mut a = m.clone();
    let (mut pos, mut neg) = (0, 0);
    let mut active: Vec<usize> = (0..n).collect();
    while !active.is_empty() {
        let pivot = active.iter().copied().find(|&i| !a.get(i, i).is_zero());
        let p = match pivot {
            Some(p) => p,
            None => {
                let pair = active.iter().flat_map(|&i| active.iter().map(move |&j| (i, j))).find(|&(i, j)| i != j && !a.get(i, j).is_zero());
                let Some((i, j)) = pair else { break };
                // e_i ← e_i + e_j makes the (i,i) entry 2·a_ij ≠ 0
                for k in 0..n {
                    let v = a.get(i, k) + a.get(j, k);
                    a.set(i, k, v);
                }
                for k in 0..n {
                    let v = a.get(k, i) + a.get(k, j);
                    a.set(k, i, v);
                }
                i
            }
        };
        let d = a.get(p, p).clone();
        if d.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        active.retain(|&x| x != p);
        for &i in &active {
            let f = a.get(i, p) / &d;
            if f.is_zero() {
                continue;
            }
            for &j in &active {
                let v = a.get(i, j) - &(&f * a.get(p, j));
                a.set(i, j, v);
            }
        }
    }
    Ok((pos, neg, n - pos - neg))
}

/// Invariants of the nilradical of a split algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NilradicalInvariants {
    pub dim: usize,
    /// Dimensions of C², C³, … of the nilradical.
    pub lcs_dims: Vec<usize>,
    pub class: usize,
    pub derived_dim: usize,
    pub center_dim: usize,
    /// When the associative algebra Nil(B) has one-dimensional square, the
    /// signature of the product form Nil(B) × Nil(B) → Nil(B)².
    pub square_form: Option<FormSignature>,
}

/// (positive, negative, null) index counts of the Killing form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KillingSignature {
    pub positive: usize,
    pub negative: usize,
    pub null: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fingerprint {
    pub dim: usize,
    pub derived_dims: Vec<usize>,
    pub center_dim: usize,
    pub derivation_dim: usize,
    /// Inertia of the Killing form. Separates aff(C) summands from pairs of
    /// aff(R) summands, which the other entries do not.
    pub killing: KillingSignature,
    /// `None` when the algebra was not built as a split semidirect sum.
    pub nilradical: Option<NilradicalInvariants>,
}

impl Fingerprint {
    /// The same record without the derivation count, the nilradical
    /// center, and both form signatures.
    pub fn base(&self) -> Fingerprint {
        let mut f = self.clone();
        f.derivation_dim = 0;
        f.killing = KillingSignature {
            positive: 0,
            negative: 0,
            null: 0,
        };
        if let Some(n) = f.nilradical.as_mut() {
            n.square_form = None;
            n.center_dim = 0;
        }
        f
    }
}

fn square_form(n: usize, nil: &[MatrixQ]) -> Result<Option<FormSignature>> {
    if nil.is_empty() {
        return Ok(None);
    }
    let mut prods = Vec::new();
    for x in nil {
        for y in nil {
            prods.push(x.checked_mul(y)?);
        }
    }
    let sq = Subspace::span_matrices(n, &prods)?;
    if sq.dim() != 1 {
        return Ok(None);
    }
    let k = nil.len();
    let mut form = MatrixQ::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            let c = sq
                .coordinates(&prods[i * k + j].flatten())
                .ok_or_else(|| Error::Inconsistent("product outside the square".into()))?;
            form.set(i, j, c[0].clone());
        }
    }
    let (p, q, z) = symmetric_signature(&form)?;
    Ok(Some(FormSignature {
        larger: p.max(q),
        smaller: p.min(q),
        null: z,
    }))
}

/// Invariant record of `g`. With `split`, `g` must equal
/// `semidirect_sum(B, n)` and the nilradical is taken from there.
pub fn fingerprint(g: &LieAlgebra, split: Option<(&[MatrixQ], usize)>) -> Result<Fingerprint> {
    let owned;
    let src = match split {
        Some((b, n)) => {
            owned = semidirect_sum(b, n)?;
            if owned != *g {
                return Err(Error::InvalidArgument(
                    "algebra is not the semidirect sum of the given generators".into(),
                ));
            }
            &owned
        }
        None => g,
    };
    let nilradical = match src.nilradical()? {
        None => None,
        Some(sub) => {
            let nil = src.restrict(&sub)?;
            let lcs = nil.lower_central_dims();
            let sf = match src.nil_associative()? {
                Some((n, mats)) => square_form(n, &mats)?,
                None => None,
            };
            Some(NilradicalInvariants {
                dim: nil.dim,
                class: lcs.len(),
                derived_dim: nil.derived_dims()[0],
                center_dim: nil.center().dim(),
                lcs_dims: lcs,
                square_form: sf,
            })
        }
    };
    let (positive, negative, null) = symmetric_signature(&g.killing_form())?;
    Ok(Fingerprint {
        killing: KillingSignature {
            positive,
            negative,
            null,
        },
        dim: g.dim,
        derived_dims: g.derived_dims(),
        center_dim: g.center().dim(),
        derivation_dim: g.derivation_algebra().dim(),
        nilradical,
    })
}

impl fmt::Display for LieAlgebra {
    /// One nonzero bracket per line, e.g. `[e1, e3] = e3 - 2*e4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.brackets.is_empty() {
            return write!(f, "abelian of dimension {}", self.dim);
        }
        let mut first = true;
        for (&(i, j), ts) in &self.brackets {
            if !first {
                writeln!(f)?;
            }
            first = false;
            write!(f, "[{}, {}] = ", self.names[i], self.names[j])?;
            for (idx, (k, c)) in ts.iter().enumerate() {
                let neg = c.is_negative();
                let abs = c.abs();
                match (idx, neg) {
                    (0, true) => write!(f, "-")?,
                    (0, false) => {}
                    (_, true) => write!(f, " - ")?,
                    (_, false) => write!(f, " + ")?,
                }
                if abs.is_one() {
                    write!(f, "{}", self.names[*k])?;
                } else {
                    write!(f, "{abs}*{}", self.names[*k])?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieAlgebra(dim {}):\n{self}", self.dim)
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    k: usize,
    c: Rational,
}

#[derive(Serialize, Deserialize)]
struct BracketRepr {
    i: usize,
    j: usize,
    terms: Vec<TermRepr>,
}

#[derive(Serialize, Deserialize)]
struct LieRepr {
    dim: usize,
    #[serde(default)]
    basis: Option<Vec<String>>,
    brackets: Vec<BracketRepr>,
}

impl Serialize for LieAlgebra {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        LieRepr {
            dim: self.dim,
            basis: Some(self.names.clone()),
            brackets: self
                .brackets
                .iter()
                .map(|(&(i, j), ts)| BracketRepr {
                    i: i + 1,
                    j: j + 1,
                    terms: ts.iter().map(|(k, c)| TermRepr { k: k + 1, c: c.clone() }).collect(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LieAlgebra {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = LieRepr::deserialize(d)?;
        let g = LieAlgebra::from_brackets(
            r.dim,
            r.brackets
                .into_iter()
                .map(|b| (b.i, b.j, b.terms.into_iter().map(|t| (t.k, t.c)).collect())),
        )
        .map_err(serde::de::Error::custom)?;
        match r.basis {
            Some(names) => g.with_names(names).map_err(serde::de::Error::custom),
            None => Ok(g),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    fn m0(n: usize) -> MatrixQ {
        let mut m = MatrixQ::zeros(n, n);
        for i in 0..n - 1 {
            m.set(i, i + 1, q(1));
        }
        m
    }

    fn d0(n: usize) -> LieAlgebra {
        semidirect_sum(&crate::matrix::power_basis(&m0(n)).unwrap(), n).unwrap()
    }

    #[test]
    fn aff_and_jacobi() {
        let aff = LieAlgebra::from_int_table(2, &[(1, 2, &[(2, 1)])]).unwrap();
        assert_eq!(aff, semidirect_sum(&[MatrixQ::identity(1)], 1).unwrap());
        assert_eq!(aff.bracket_basis(1, 0), vec![q(0), q(-1)]);
        // [e1,e2]=e3, [e1,e3]=e1 breaks Jacobi
        let bad = LieAlgebra::from_int_table(3, &[(1, 2, &[(3, 1)]), (1, 3, &[(1, 1)])]);
        assert!(matches!(bad, Err(Error::Jacobi(1, 2, 3))));
        assert!(LieAlgebra::abelian(3).check_jacobi().is_ok());
    }

    #[test]
    fn series_of_d0() {
        let g = d0(3);
        assert_eq!(g.derived_dims(), vec![3, 0]);
        assert!(g.is_two_solvable());
        assert_eq!(LieAlgebra::abelian(4).derived_dims(), vec![0]);
        assert_eq!(g.center().dim(), 0);
        let nil = g.nilradical().unwrap().unwrap();
        assert_eq!(nil.dim(), 5);
        let n = g.restrict(&nil).unwrap();
        assert!(n.is_nilpotent());
        assert_eq!(n.lower_central_dims(), vec![2, 1, 0]);
    }

    #[test]
    fn derivations_of_d0() {
        assert_eq!(d0(2).derivation_algebra().dim(), 5);
        assert_eq!(d0(3).derivation_algebra().dim(), 8);
    }

    #[test]
    fn isomorphism_checks() {
        let g = d0(3);
        assert!(verify_isomorphism(&MatrixQ::identity(6), &g, &g).unwrap());
        let mut swap = MatrixQ::identity(6);
        swap.set(0, 0, q(0));
        swap.set(1, 1, q(0));
        swap.set(0, 1, q(1));
        swap.set(1, 0, q(1));
        assert!(!verify_isomorphism(&swap, &g, &g).unwrap());
        assert!(verify_isomorphism(&MatrixQ::identity(5), &g, &g).is_err());
    }

    #[test]
    fn direct_sums_and_fingerprints() {
        let aff = semidirect_sum(&[MatrixQ::identity(1)], 1).unwrap();
        let two = direct_sum(&[aff.clone(), aff.clone()]);
        assert_eq!(two.dim(), 4);
        let f = fingerprint(&two, None).unwrap();
        assert_eq!(f.derived_dims, vec![2, 0]);
        let nil = f.nilradical.unwrap();
        assert_eq!(nil.dim, 2);
        assert_eq!(nil.lcs_dims, vec![0]);
        let table = LieAlgebra::from_int_table(2, &[(1, 2, &[(2, 1)])]).unwrap();
        assert!(fingerprint(&table, None).unwrap().nilradical.is_none());
        assert!(fingerprint(&table, Some((&[MatrixQ::identity(1)], 1))).unwrap().nilradical.is_some());
    }

    #[test]
    fn signatures() {
        let m = MatrixQ::from_i64(3, 3, &[0, 1, 0, 1, 0, 0, 0, 0, 0]).unwrap();
        assert_eq!(symmetric_signature(&m).unwrap(), (1, 1, 1));
        let m = MatrixQ::from_i64(2, 2, &[2, 1, 1, 2]).unwrap();
        assert_eq!(symmetric_signature(&m).unwrap(), (2, 0, 0));
    }

    #[test]
    fn json_round_trip() {
        let g = d0(2);
        let v = serde_json::to_value(&g).unwrap();
        assert_eq!(v["brackets"][0], serde_json::json!({"i": 1, "j": 3, "terms": [{"k": 3, "c": "1"}]}));
        let back: LieAlgebra = serde_json::from_value(v).unwrap();
        assert_eq!(back, g);
        let bad = serde_json::json!({"dim": 2, "brackets": [{"i": 1, "j": 3, "terms": []}]});
        assert!(serde_json::from_value::<LieAlgebra>(bad).is_err());
    }
}

//! Univariate polynomials over ℚ.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Rational;

/// Polynomial with rational coefficients in ascending degree. The zero
/// polynomial has no coefficients; otherwise the last one is nonzero.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PolyRepr", into = "PolyRepr")]
pub struct PolyQ {
    coeffs: Vec<Rational>,
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    coeffs: Vec<Rational>,
}

impl TryFrom<PolyRepr> for PolyQ {
    type Error = Error;
    fn try_from(r: PolyRepr) -> Result<Self> {
        Ok(PolyQ::new(r.coeffs))
    }
}

impl From<PolyQ> for PolyRepr {
    fn from(p: PolyQ) -> Self {
        PolyRepr { coeffs: p.coeffs }
    }
}

impl PolyQ {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        PolyQ { coeffs }
    }

    pub fn from_i64s(cs: &[i64]) -> Self {
        PolyQ::new(cs.iter().map(|&c| Rational::from_integer(c)).collect())
    }

    pub fn zero() -> Self {
        PolyQ { coeffs: vec![] }
    }

    pub fn one() -> Self {
        PolyQ::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        PolyQ::new(vec![c])
    }

    /// The indeterminate X.
    pub fn x() -> Self {
        PolyQ::from_i64s(&[0, 1])
    }

    /// X − a.
    pub fn linear(a: &Rational) -> Self {
        PolyQ::new(vec![-a, Rational::one()])
    }

    /// c·X^k.
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut v = vec![Rational::zero(); k + 1];
        v[k] = c;
        PolyQ::new(v)
    }

    /// (X − r)² + s², given s².
    pub fn complex_pair(r: &Rational, s2: &Rational) -> Self {
        PolyQ::new(vec![r * r + s2, -(r + r), Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of X^k (zero past the degree).
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        PolyQ::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Divides by the leading coefficient; the zero polynomial stays zero.
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.lead().recip().expect("nonzero lead");
        self.scale(&l)
    }

    pub fn derivative(&self) -> Self {
        PolyQ::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from_integer(k as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = PolyQ::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn divmod(&self, q: &PolyQ) -> Result<(PolyQ, PolyQ)> {
        let dq = q.degree().ok_or(Error::ZeroPolynomial("divmod"))?;
        let lq = q.lead().recip()?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dq {
            return Ok((PolyQ::zero(), self.clone()));
        }
        let mut quot = vec![Rational::zero(); rem.len() - dq];
        for k in (dq..rem.len()).rev() {
            let c = &rem[k] * &lq;
            if c.is_zero() {
                continue;
            }
            for (j, qc) in q.coeffs.iter().enumerate() {
                let t = &c * qc;
                rem[k - dq + j] -= &t;
            }
            quot[k - dq] = c;
        }
        rem.truncate(dq);
        Ok((PolyQ::new(quot), PolyQ::new(rem)))
    }

    /// Exact quotient; errors if `q` does not divide `self`.
    pub fn div_exact(&self, q: &PolyQ) -> Result<PolyQ> {
        let (a, r) = self.divmod(q)?;
        if !r.is_zero() {
            return Err(Error::InvalidArgument(format!("{q} does not divide {self}")));
        }
        Ok(a)
    }

    pub fn divides(&self, other: &PolyQ) -> Result<bool> {
        Ok(other.divmod(self)?.1.is_zero())
    }

    /// Monic gcd by the Euclidean algorithm.
    pub fn gcd(&self, other: &PolyQ) -> Result<PolyQ> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::ZeroPolynomial("gcd"));
        }
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.divmod(&b)?.1;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    pub fn is_squarefree(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial("is_squarefree"));
        }
        Ok(self.gcd(&self.derivative())?.degree() == Some(0))
    }

    /// Yun's algorithm. Returns `(f_i, i)` with each `f_i` monic, squarefree
    /// and of positive degree, multiplicities strictly increasing, and
    /// `self = lead · ∏ f_i^i`.
    pub fn square_free_decomposition(&self) -> Result<Vec<(PolyQ, u32)>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial("square_free_decomposition"));
        }
        let f = self.monic();
        let mut out = Vec::new();
        if f.degree() == Some(0) {
            return Ok(out);
        }
        let df = f.derivative();
        let a0 = f.gcd(&df)?;
        let mut b = f.div_exact(&a0)?;
        let c = df.div_exact(&a0)?;
        let mut d = &c - &b.derivative();
        let mut i = 1u32;
        while b.degree() != Some(0) {
            let a = b.gcd(&d)?;
            let nb = b.div_exact(&a)?;
            let nc = d.div_exact(&a)?;
            d = &nc - &nb.derivative();
            if a.degree() != Some(0) {
                out.push((a, i));
            }
            b = nb;
            i += 1;
        }
        Ok(out)
    }

    /// Number of distinct real roots, by a Sturm chain read at ±∞.
    pub fn count_real_roots(&self) -> Result<usize> {
        if !self.is_squarefree()? {
            return Err(Error::NotSquarefree(self.to_string()));
        }
        let mut chain = vec![self.clone(), self.derivative()];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero() {
                chain.pop();
                break;
            }
            let r = chain[n - 2].divmod(&chain[n - 1])?.1;
            chain.push(-r);
        }
        let changes = |signs: Vec<i32>| {
            let nz: Vec<i32> = signs.into_iter().filter(|&s| s != 0).collect();
            nz.windows(2).filter(|w| w[0] != w[1]).count()
        };
        let at_pos: Vec<i32> = chain.iter().map(|p| p.lead().signum()).collect();
        let at_neg: Vec<i32> = chain
            .iter()
            .map(|p| {
                let s = p.lead().signum();
                if p.degree().unwrap_or(0) % 2 == 1 {
                    -s
                } else {
                    s
                }
            })
            .collect();
        Ok(changes(at_neg) - changes(at_pos))
    }

    /// Integer polynomial with the same roots and coprime coefficients,
    /// positive leading coefficient.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return vec![];
        }
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let sign = if ints.last().unwrap().is_negative() { -1 } else { 1 };
        for c in ints.iter_mut() {
            *c = &*c / &g * sign;
        }
        ints
    }

    /// Distinct rational roots, ascending.
    pub fn rational_roots(&self) -> Result<Vec<Rational>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial("rational_roots"));
        }
        let mut roots = Vec::new();
        let mut ints = self.primitive_integer();
        let zero_mult = ints.iter().take_while(|c| c.is_zero()).count();
        if zero_mult > 0 {
            roots.push(Rational::zero());
            ints.drain(..zero_mult);
        }
        if ints.len() > 1 {
            let ps = divisors(&ints[0]);
            let qs = divisors(ints.last().unwrap());
            let trimmed = PolyQ::new(ints.iter().cloned().map(Rational::from_bigint).collect());
            let mut cand = Vec::new();
            for p in &ps {
                for q in &qs {
                    let r = Rational::from_bigints(p.clone(), q.clone())?;
                    cand.push(r.clone());
                    cand.push(-r);
                }
            }
            cand.sort();
            cand.dedup();
            for c in cand {
                if trimmed.eval(&c).is_zero() {
                    roots.push(c);
                }
            }
        }
        roots.sort();
        Ok(roots)
    }

    /// Splits a squarefree polynomial into monic irreducible factors of
    /// degree 1 and 2. Any factor that is irreducible of higher degree is
    /// reported as unsupported.
    pub fn factor_linear_quadratic(&self) -> Result<Vec<PolyQ>> {
        if !self.is_squarefree()? {
            return Err(Error::NotSquarefree(self.to_string()));
        }
        let mut rest = self.monic();
        let mut out = Vec::new();
        for r in self.rational_roots()? {
            let l = PolyQ::linear(&r);
            rest = rest.div_exact(&l)?;
            out.push(l);
        }
        while rest.degree().unwrap_or(0) > 2 {
            match find_quadratic_factor(&rest)? {
                Some(q) => {
                    rest = rest.div_exact(&q)?;
                    out.push(q);
                }
                None => return Err(Error::UnsupportedFactor(rest.to_string())),
            }
        }
        if rest.degree() == Some(2) {
            out.push(rest);
        }
        Ok(out)
    }
}

/// Positive divisors of |n|; n = 0 yields just 1, which is all the callers
/// need once zero roots have been stripped.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut m = n.abs();
    if m.is_zero() {
        return vec![BigInt::one()];
    }
    let mut primes: Vec<(BigInt, u32)> = Vec::new();
    let mut f = BigInt::from(2u32);
    while &f * &f <= m {
        let mut e = 0;
        while (&m % &f).is_zero() {
            m /= &f;
            e += 1;
        }
        if e > 0 {
            primes.push((f.clone(), e));
        }
        f += 1u32;
    }
    if !m.is_one() {
        primes.push((m, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in primes {
        let mut next = Vec::new();
        for d in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    divs
}

/// Kronecker's method restricted to degree 2: a quadratic integer factor g
/// must have g(t) dividing f(t) at t = −1, 0, 1. Assumes no rational roots.
fn find_quadratic_factor(f: &PolyQ) -> Result<Option<PolyQ>> {
    let ints = f.primitive_integer();
    let fz = PolyQ::new(ints.iter().cloned().map(Rational::from_bigint).collect());
    let pts = [-1i64, 0, 1];
    let vals: Vec<BigInt> = pts
        .iter()
        .map(|&t| {
            let v = fz.eval(&Rational::from_integer(t));
            v.numer().clone()
        })
        .collect();
    let signed = |n: &BigInt| -> Vec<BigInt> {
        divisors(n)
            .into_iter()
            .flat_map(|d| [d.clone(), -d])
            .collect()
    };
    let dm = signed(&vals[0]);
    let d0 = signed(&vals[1]);
    let dp = signed(&vals[2]);
    for gm in &dm {
        for g0 in &d0 {
            for gp in &dp {
                // g = aX² + bX + c through (−1,gm), (0,g0), (1,gp)
                let c = g0.clone();
                let two_a: BigInt = gp + gm - &c * 2;
                let two_b: BigInt = gp - gm;
                if two_a.is_zero() || two_a.is_odd() || two_b.is_odd() {
                    continue;
                }
                let a: BigInt = two_a / 2;
                if a.is_negative() {
                    continue;
                }
                let b: BigInt = two_b / 2;
                let g = PolyQ::new(vec![
                    Rational::from_bigint(c),
                    Rational::from_bigint(b),
                    Rational::from_bigint(a),
                ]);
                if fz.divmod(&g)?.1.is_zero() {
                    return Ok(Some(g.monic()));
                }
            }
        }
    }
    Ok(None)
}

impl fmt::Display for PolyQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let show_coeff = k == 0 || !abs.is_one();
            if show_coeff {
                write!(f, "{abs}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "{}X", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}X^{k}", if show_coeff { "*" } else { "" })?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PolyQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyQ({self})")
    }
}

impl<'b> Add<&'b PolyQ> for &PolyQ {
    type Output = PolyQ;
    fn add(self, rhs: &'b PolyQ) -> PolyQ {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        PolyQ::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<'b> Sub<&'b PolyQ> for &PolyQ {
    type Output = PolyQ;
    fn sub(self, rhs: &'b PolyQ) -> PolyQ {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        PolyQ::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<'b> Mul<&'b PolyQ> for &PolyQ {
    type Output = PolyQ;
    fn mul(self, rhs: &'b PolyQ) -> PolyQ {
        if self.is_zero() || rhs.is_zero() {
            return PolyQ::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let t = a * b;
                out[i + j] += &t;
            }
        }
        PolyQ::new(out)
    }
}

impl Add for PolyQ {
    type Output = PolyQ;
    fn add(self, rhs: PolyQ) -> PolyQ {
        &self + &rhs
    }
}

impl Sub for PolyQ {
    type Output = PolyQ;
    fn sub(self, rhs: PolyQ) -> PolyQ {
        &self - &rhs
    }
}

impl Mul for PolyQ {
    type Output = PolyQ;
    fn mul(self, rhs: PolyQ) -> PolyQ {
        &self * &rhs
    }
}

impl Neg for PolyQ {
    type Output = PolyQ;
    fn neg(self) -> PolyQ {
        PolyQ::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> PolyQ {
        PolyQ::from_i64s(cs)
    }

    #[test]
    fn arithmetic() {
        assert_eq!(&p(&[-1, 1]) * &p(&[1, 1]), p(&[-1, 0, 1]));
        let (q, r) = p(&[-1, 0, 1]).divmod(&p(&[-1, 1])).unwrap();
        assert_eq!((q, r), (p(&[1, 1]), PolyQ::zero()));
        let pair = PolyQ::complex_pair(&Rational::zero(), &Rational::one());
        assert_eq!(pair, p(&[1, 0, 1]));
        assert!(p(&[1]).divmod(&PolyQ::zero()).is_err());
    }

    #[test]
    fn gcds() {
        assert_eq!(p(&[-1, 0, 1]).gcd(&p(&[-1, 1])).unwrap(), p(&[-1, 1]));
        assert_eq!(p(&[1, 0, 1]).gcd(&p(&[-1, 0, 1])).unwrap(), PolyQ::one());
        let a = &p(&[-2, 1]).pow(3) * &p(&[1, 1]);
        let b = &p(&[-2, 1]) * &p(&[1, 1]).pow(2);
        assert_eq!(a.gcd(&b).unwrap(), &p(&[-2, 1]) * &p(&[1, 1]));
        assert!(PolyQ::zero().gcd(&PolyQ::zero()).is_err());
    }

    #[test]
    fn yun() {
        let f = &p(&[-1, 1]).pow(2) * &p(&[2, 1]);
        assert_eq!(
            f.square_free_decomposition().unwrap(),
            vec![(p(&[2, 1]), 1), (p(&[-1, 1]), 2)]
        );
        assert_eq!(
            p(&[1, 0, 1]).pow(2).square_free_decomposition().unwrap(),
            vec![(p(&[1, 0, 1]), 2)]
        );
        assert_eq!(
            PolyQ::monomial(Rational::one(), 5).square_free_decomposition().unwrap(),
            vec![(PolyQ::x(), 5)]
        );
    }

    #[test]
    fn sturm() {
        assert_eq!(p(&[1, 0, 1]).count_real_roots().unwrap(), 0);
        assert_eq!(p(&[-2, 0, 1]).count_real_roots().unwrap(), 2);
        assert_eq!(p(&[-1, 0, 0, 0, 0, 0, 0, 1]).count_real_roots().unwrap(), 1);
        assert!(matches!(
            p(&[1, 2, 1]).count_real_roots(),
            Err(Error::NotSquarefree(_))
        ));
    }

    #[test]
    fn rational_root_search() {
        let f = &(&p(&[-1, 2]) * &p(&[3, 1])) * &p(&[0, 1]);
        assert_eq!(
            f.rational_roots().unwrap(),
            vec![Rational::from_integer(-3), Rational::zero(), Rational::new(1, 2)]
        );
    }

    #[test]
    fn linear_quadratic_factors() {
        // X^4 - 1 = (X-1)(X+1)(X^2+1)
        let fs = p(&[-1, 0, 0, 0, 1]).factor_linear_quadratic().unwrap();
        assert_eq!(fs, vec![p(&[1, 1]), p(&[-1, 1]), p(&[1, 0, 1])]);
        // (X^2+1)(X^2+2X+5)
        let g = &p(&[1, 0, 1]) * &p(&[5, 2, 1]);
        let mut fs = g.factor_linear_quadratic().unwrap();
        fs.sort_by_key(|f| f.to_string());
        assert_eq!(fs.len(), 2);
        assert!(fs.contains(&p(&[1, 0, 1])) && fs.contains(&p(&[5, 2, 1])));
        // X^4+X^3+X^2+X+1 is irreducible of degree 4
        assert!(matches!(
            p(&[1, 1, 1, 1, 1]).factor_linear_quadratic(),
            Err(Error::UnsupportedFactor(_))
        ));
    }

    #[test]
    fn display_and_json() {
        assert_eq!(p(&[-1, 0, 1]).to_string(), "X^2 - 1");
        assert_eq!(p(&[0, -2, 3]).to_string(), "3*X^2 - 2*X");
        let v = serde_json::to_value(p(&[-1, 0, 1])).unwrap();
        assert_eq!(v, serde_json::json!({"coeffs": ["-1", "0", "1"]}));
        let back: PolyQ = serde_json::from_value(serde_json::json!({"coeffs": ["1", "0"]})).unwrap();
        assert_eq!(back, p(&[1]));
    }
}

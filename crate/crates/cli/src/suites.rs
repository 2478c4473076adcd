//! The checks behind `verify-paper`. Everything here is deterministic:
//! conjugators come from a fixed integer pattern, not an RNG.

use std::collections::BTreeMap;

use anyhow::{bail, ensure, Context, Result};
use frobenius::catalog::{self, build_with_max, dim8_table, errata, low_dim_table, CatalogEntry, Params};
use frobenius::jordan::{
    case_a_j, case_a_p, case_c_j, complex_char_coeffs, det_formula, det_formula_corrected, jordanize,
    krylov_companion, q_n, q_n_corrected, real_char_coeffs, symbolic_complex_p, JordanMatrices, SYMBOLIC_VARS,
};
use frobenius::lie::fingerprint;
use frobenius::masa::{canonical_class2, is_masa, kravchuk_signature, recognize_class2_mans, Ambient};
use frobenius::matrix::{normalizer_of_span, power_basis};
use frobenius::nonderog::{
    cartan_test, circular_permutation, classify_g_phi, complex_nilpotent_pair, enumerate_labels, label_algebra,
    principal_nilpotent, representative_matrix, vandermonde_det_formula, vandermonde_isomorphism,
};
use frobenius::{frobenius_decide, semidirect_sum, verify_isomorphism, Error, MatrixQ, MultiPoly, Rational, Subspace};

use crate::report::{Check, Outcome};

pub const SUITES: [&str; 4] = ["jordan", "classify", "masa", "catalog"];

pub fn checks(suite: &str, max_n: usize) -> Result<Vec<Check>> {
    Ok(match suite {
        "jordan" => jordan(),
        "classify" => classify(),
        "masa" => masa(max_n),
        "catalog" => catalog_checks(max_n),
        "all" => SUITES.iter().flat_map(|s| checks(s, max_n).unwrap()).collect(),
        other => bail!("unknown suite {other:?}; expected one of jordan, classify, masa, catalog, all"),
    })
}

fn q(n: i64) -> Rational {
    Rational::from_integer(n)
}

fn pass(detail: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome::Pass(detail.into()))
}

/// A fixed invertible integer matrix: unit lower times unit upper.
pub fn fixed_conjugator(n: usize, seed: usize) -> MatrixQ {
    let entry = |i: usize, j: usize, k: usize| q(((i * 7 + j * 3 + seed * 5 + k) % 5) as i64 - 2);
    let l = MatrixQ::from_fn(n, n, |i, j| if i == j { q(1) } else if i > j { entry(i, j, 0) } else { q(0) });
    let u = MatrixQ::from_fn(n, n, |i, j| if i == j { q(1) } else if i < j { entry(i, j, 1) } else { q(0) });
    l.checked_mul(&u).expect("square factors")
}

// ---------------------------------------------------------------------------

fn jordan() -> Vec<Check> {
    let mut out = Vec::new();
    for n in 2..=8usize {
        out.push(Check::new(
            format!("jordan.caseA.n={n}"),
            format!("closed-form P solves M~P = PJ with det P = 1 (n={n})"),
            move || {
                for l in [q(0), q(1), Rational::new(-3, 2), q(5)] {
                    let mt = krylov_companion(&real_char_coeffs(&l, n))?;
                    let (p, j) = (case_a_p(n, &l), case_a_j(n, &l));
                    ensure!(mt.checked_mul(&p)? == p.checked_mul(&j)?, "similarity fails at lambda = {l}");
                    ensure!(p.det()? == q(1), "det P != 1 at lambda = {l}");
                }
                pass("lambda = 0, 1, -3/2, 5")
            },
        ));
    }
    for n in (2..=10usize).step_by(2) {
        out.push(Check::new(
            format!("jordan.caseC.similarity.n={n}"),
            format!("recurrence P solves M~P = PJ over Q[r,s,p11,p12] (n={n})"),
            move || {
                let (r, s) = (MultiPoly::var(4, 0), MultiPoly::var(4, 1));
                let p = symbolic_complex_p(n, None)?;
                let mt = krylov_companion(&complex_char_coeffs(&r, &s, n / 2))?;
                let j = case_c_j(n, &r, &s)?;
                ensure!(mt.checked_mul(&p)? == p.checked_mul(&j)?, "similarity fails");
                pass("")
            },
        ));
    }
    for (n, c) in [(4usize, 4i64), (6, -64), (10, -1048576)] {
        out.push(Check::new(
            format!("jordan.caseC.det.n={n}"),
            format!("det P = {c}*s^{} for p11 = 1, p1j = 0", n * n / 4),
            move || {
                let det = symbolic_complex_p(n, Some(&(q(1), q(0))))?.det_laplace()?;
                let want = MultiPoly::var(4, 1).pow((n * n / 4) as u32).scale(&q(c));
                ensure!(det == want, "det P = {}", det.display_with(&SYMBOLIC_VARS));
                pass(det.display_with(&SYMBOLIC_VARS))
            },
        ));
    }
    out.push(Check::new("jordan.caseC.n=10.entries", "p21, p31 and p10,10 of the n=10 listing", || {
        let p = symbolic_complex_p(10, Some(&(q(1), q(0))))?;
        let show = |i: usize, j: usize| p.get(i, j).display_with(&SYMBOLIC_VARS);
        ensure!(show(1, 0) == "-9*r", "p21 = {}", show(1, 0));
        ensure!(show(2, 0) == "36*r^2 + 4*s^2", "p31 = {}", show(2, 0));
        let (r, s) = (MultiPoly::var(4, 0), MultiPoly::var(4, 1));
        let want = &(&(&r.pow(4) * &s).scale(&q(-5)) + &(&r.pow(2) * &s.pow(3)).scale(&q(10))) - &s.pow(5);
        ensure!(*p.get(9, 9) == want, "p10,10 = {}", show(9, 9));
        pass(show(9, 9))
    }));
    for n in [4usize, 6, 8, 10, 12] {
        out.push(Check::new(
            format!("jordan.detformula.corrected.n={n}"),
            format!("det P = s^(n^2/4) (p11^2+p12^2)^(n/2) (-1)^(n/2) 2^((n/2)(n/2-1)) (n={n})"),
            move || {
                for ch in [(q(1), q(0)), (q(2), q(-1))] {
                    let det = symbolic_complex_p(n, Some(&ch))?.det_laplace()?;
                    ensure!(det == det_formula_corrected(n, Some(&ch))?, "mismatch at (p11,p12) = ({},{})", ch.0, ch.1);
                }
                pass(format!("q_n = {}", q_n_corrected(n)?))
            },
        ));
    }
    for n in [4usize, 6, 10] {
        out.push(Check::new(
            format!("jordan.detformula.published.n={n}"),
            format!("published q_n = (-1)^(n/2) (n/2-1)^n agrees with the exact det (n={n})"),
            move || {
                let ch = (q(2), q(-1));
                let det = symbolic_complex_p(n, Some(&ch))?.det_laplace()?;
                ensure!(det == det_formula(n, Some(&ch))?, "published formula disagrees");
                pass(format!("q_n = {}", q_n(n)?))
            },
        ));
    }
    out.push(Check::new(
        "jordan.detformula.published.n=8.erratum",
        "published q_8 = 6561 is wrong; the exact det has q_8 = 4096",
        || {
            let det = symbolic_complex_p(8, Some(&(q(1), q(0))))?.det_laplace()?;
            ensure!(det != det_formula(8, Some(&(q(1), q(0))))?, "published formula unexpectedly holds");
            ensure!(det == det_formula_corrected(8, Some(&(q(1), q(0))))?, "corrected formula fails");
            pass(det.display_with(&SYMBOLIC_VARS))
        },
    ));
    out.push(Check::new("jordan.jordanize.examples", "exact Jordanization of sample matrices", || {
        let cases = [
            ("M0(4) + 3I", &principal_nilpotent(4) + &MatrixQ::identity(4).scale(&q(3))),
            ("circular(3)", circular_permutation(3)),
            ("circular(4)", circular_permutation(4)),
            ("M01(6)", complex_nilpotent_pair(6)?),
        ];
        let mut tags = Vec::new();
        for (name, m) in cases {
            let res = jordanize(&m).with_context(|| name.to_string())?;
            let ok = match &res.matrices {
                JordanMatrices::Rational { j, p } => m.checked_mul(p)? == p.checked_mul(j)?,
                JordanMatrices::Quadratic { d, j, p } => m.to_quad(d)?.checked_mul(p)? == p.checked_mul(j)?,
            };
            ensure!(ok, "{name}: MP != PJ");
            tags.push(format!("{name}: {:?}", res.case_tags()));
        }
        pass(tags.join("; "))
    }));
    out
}

// ---------------------------------------------------------------------------

fn classify() -> Vec<Check> {
    let mut out = Vec::new();
    let circular = [
        (2usize, "aff(R)+aff(R)"),
        (3, "aff(R)+aff(C)"),
        (4, "aff(R)+aff(R)+aff(C)"),
        (5, "aff(R)+aff(C)+aff(C)"),
        (7, "aff(R)+aff(C)+aff(C)+aff(C)"),
    ];
    for (n, want) in circular {
        out.push(Check::new(
            format!("classify.circular.n={n}"),
            format!("circular permutation of size {n} gives {want}"),
            move || {
                let got = classify_g_phi(&circular_permutation(n))?.to_string();
                ensure!(got == want, "got {got}");
                pass(got)
            },
        ));
    }
    for n in 1..=8usize {
        out.push(Check::new(
            format!("classify.cartan.count.n={n}"),
            format!("exactly {} Cartan-type labels of size {n}", n / 2 + 1),
            move || {
                let c = enumerate_labels(n).iter().filter(|l| l.is_cartan_type()).count();
                ensure!(c == n / 2 + 1, "{c} labels");
                pass(c.to_string())
            },
        ));
    }
    for n in 3..=5usize {
        out.push(Check::new(
            format!("classify.conjugation.n={n}"),
            format!("every label of size {n} survives conjugation and both Cartan criteria agree"),
            move || {
                let labels = enumerate_labels(n);
                for (k, l) in labels.iter().enumerate() {
                    let m = representative_matrix(l)?.conjugate(&fixed_conjugator(n, k))?;
                    let got = classify_g_phi(&m)?;
                    ensure!(&got == l, "{l} classified as {got} after conjugation");
                    let t = cartan_test(&m)?;
                    ensure!(t.is_cartan == l.is_cartan_type(), "{l}: Cartan test says {}", t.is_cartan);
                }
                pass(format!("{} labels", labels.len()))
            },
        ));
    }
    out.push(Check::new(
        "classify.fingerprints",
        "G_phi of a representative matches the direct sum of its blocks (n <= 4)",
        || {
            let mut count = 0;
            for n in 1..=4 {
                for l in enumerate_labels(n) {
                    let m = representative_matrix(&l)?;
                    let a = fingerprint(&semidirect_sum(&power_basis(&m)?, n)?, None)?;
                    ensure!(a == fingerprint(&label_algebra(&l)?, None)?, "{l}");
                    count += 1;
                }
            }
            pass(format!("{count} labels"))
        },
    ));
    for n in 2..=4usize {
        out.push(Check::new(
            format!("classify.vandermonde.n={n}"),
            format!("det N = prod(l_i) prod(l_j - l_i) and psi is an isomorphism (n={n})"),
            move || {
                let ls: Vec<Rational> = (1..=n as i64).map(|k| Rational::new(k * k - 3, k)).collect();
                let v = vandermonde_isomorphism(&ls)?;
                ensure!(v.n_matrix.det()? == vandermonde_det_formula(&ls), "determinant formula fails");
                ensure!(verify_isomorphism(&v.psi, &v.source, &v.g_phi)?, "psi is not an isomorphism");
                pass(format!("det = {}", v.det))
            },
        ));
    }
    for n in 2..=6usize {
        out.push(Check::new(
            format!("classify.derivations.D0.n={n}"),
            format!("dim Der D0({n}) = {} and dim N(R[M0]) = {}", 3 * n - 1, 2 * n - 1),
            move || {
                let der = catalog::d0(n)?.derivation_algebra().dim();
                ensure!(der == 3 * n - 1, "dim Der = {der}");
                let norm = normalizer_of_span(&power_basis(&principal_nilpotent(n))?)?.dim();
                ensure!(norm == 2 * n - 1, "normalizer dim = {norm}");
                pass("")
            },
        ));
    }
    out.push(Check::new("classify.derivations.D01.n=4", "dim N(R[M01]) = 6 in gl(4)", || {
        let norm = normalizer_of_span(&power_basis(&complex_nilpotent_pair(4)?)?)?.dim();
        ensure!(norm == 6, "normalizer dim = {norm}");
        pass("")
    }));
    out
}

// ---------------------------------------------------------------------------

fn params(ps: &[(&str, i64)]) -> Params {
    ps.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

/// A catalog entry, or a skip when its size is above the ceiling.
fn sized_entry(name: &str, ps: &[(&str, i64)], max_n: usize) -> Result<std::result::Result<CatalogEntry, Outcome>> {
    if let Some((_, n)) = ps.iter().find(|(k, _)| *k == "n") {
        if *n as usize > max_n {
            return Ok(Err(Outcome::Skip(format!("n = {n} above FROBENIUS_MAX_N = {max_n}"))));
        }
    }
    Ok(Ok(build_with_max(name, &params(ps), max_n)?))
}

fn facts_check(id: String, name: &'static str, ps: Vec<(&'static str, i64)>, max_n: usize) -> Check {
    let title = format!(
        "{name}({}) stated facts hold",
        ps.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(",")
    );
    Check::new(id, title, move || {
        let e = match sized_entry(name, &ps, max_n)? {
            Ok(e) => e,
            Err(skip) => return Ok(skip),
        };
        let facts = e.check_facts()?;
        let bad: Vec<String> = facts
            .iter()
            .filter(|f| !f.ok)
            .map(|f| format!("{}: expected {}, got {}", f.fact, f.expected, f.actual))
            .collect();
        ensure!(bad.is_empty(), "{}", bad.join("; "));
        pass(facts.iter().map(|f| format!("{}={}", f.fact, f.actual)).collect::<Vec<_>>().join(", "))
    })
}

fn masa(max_n: usize) -> Vec<Check> {
    let mut out = Vec::new();
    for n in 3..=8usize {
        out.push(Check::new(
            format!("masa.kravchuk.n={n}"),
            format!("A_({n},1) has Kravchuk signature ({}, 0, 1)", n - 1),
            move || {
                let k = kravchuk_signature(&canonical_class2(n))?;
                ensure!((k.nu, k.m, k.mu) == (n - 1, 0, 1), "signature {k:?}");
                pass("")
            },
        ));
    }
    for n in 3..=6usize {
        out.push(Check::new(
            format!("masa.class2.recognize.n={n}"),
            format!("conjugates of A_({n},1) are recognized and conjugated back"),
            move || {
                let canon = Subspace::span_matrices(n, &canonical_class2(n))?;
                for seed in 0..4 {
                    let p = fixed_conjugator(n, seed);
                    let conj: Vec<MatrixQ> =
                        canonical_class2(n).iter().map(|a| a.conjugate(&p)).collect::<frobenius::Result<_>>()?;
                    let back = recognize_class2_mans(&conj)?.context("not recognized")?;
                    let mapped: Vec<MatrixQ> = conj.iter().map(|a| a.conjugate(&back)).collect::<frobenius::Result<_>>()?;
                    ensure!(Subspace::span_matrices(n, &mapped)? == canon, "conjugator {seed} does not map back");
                }
                pass("4 conjugators")
            },
        ));
    }
    out.push(Check::new(
        "masa.class2.reject",
        "a class-2 algebra with 2-dimensional image is not recognized",
        || {
            // E_{i,4}, E_{i,5} for i = 1, 2 span an abelian class-2 algebra with image span(e1, e2)
            let mats: Vec<MatrixQ> = [(0, 3), (0, 4), (1, 3), (1, 4)].iter().map(|&(i, j)| MatrixQ::unit(5, i, j)).collect();
            ensure!(recognize_class2_mans(&mats)?.is_none(), "recognized");
            pass("")
        },
    ));
    out.push(Check::new(
        "masa.frobenius-implies-masa",
        "every Frobenius catalog entry built from matrices is a MASA in gl(n)",
        move || {
            let mut count = 0;
            for e in matrix_entries(max_n)? {
                let gens = e.matrix_generators.as_ref().expect("matrix entry");
                if frobenius_decide(&e.algebra).is_frobenius() {
                    ensure!(is_masa(gens, Ambient::Gl)?, "{} is Frobenius but not a MASA", e.title());
                    count += 1;
                }
            }
            pass(format!("{count} entries"))
        },
    ));
    for n in [3i64, 4] {
        out.push(facts_check(format!("masa.B.n={n}"), "B", vec![("n", n)], max_n));
    }
    for i in 1..=6 {
        out.push(facts_check(format!("masa.L2.i={i}"), "L2", vec![("i", i)], max_n));
    }
    for i in 1..=17 {
        out.push(facts_check(format!("masa.Y.i={i:02}"), "Y", vec![("i", i)], max_n));
    }
    out.push(facts_check("masa.Y.i=06.eps=-1".into(), "Y", vec![("i", 6), ("eps", -1)], max_n));
    out
}

fn matrix_entries(max_n: usize) -> Result<Vec<CatalogEntry>> {
    let mut out = Vec::new();
    let mut add = |name: &str, ps: &[(&str, i64)]| -> Result<()> {
        if let Ok(e) = sized_entry(name, ps, max_n)? {
            out.push(e);
        }
        Ok(())
    };
    for n in 2..=6 {
        for p in 1..n {
            add("G", &[("n", n), ("p", p)])?;
        }
    }
    for n in 3..=6 {
        for p in 2..n {
            add("h", &[("n", n), ("p", p)])?;
        }
        add("Gprime", &[("n", n)])?;
        add("B", &[("n", n)])?;
    }
    for n in 1..=6 {
        add("D0", &[("n", n)])?;
    }
    for n in [2, 4, 6] {
        add("D01", &[("n", n)])?;
    }
    for i in 1..=6 {
        add("L2", &[("i", i)])?;
    }
    for i in 1..=17 {
        add("Y", &[("i", i)])?;
    }
    add("Y", &[("i", 6), ("eps", -1)])?;
    Ok(out)
}

// ---------------------------------------------------------------------------

fn catalog_checks(max_n: usize) -> Vec<Check> {
    let mut out = Vec::new();
    for n in 3..=6i64 {
        for p in 1..n {
            out.push(facts_check(format!("catalog.G.n={n}.p={p}"), "G", vec![("n", n), ("p", p)], max_n));
        }
        for p in 2..n {
            out.push(facts_check(format!("catalog.h.n={n}.p={p}"), "h", vec![("n", n), ("p", p)], max_n));
        }
        out.push(facts_check(format!("catalog.Gprime.n={n}"), "Gprime", vec![("n", n)], max_n));
    }
    for n in 1..=8i64 {
        out.push(facts_check(format!("catalog.D0.n={n}"), "D0", vec![("n", n)], max_n));
    }
    for n in [2i64, 4, 6] {
        out.push(facts_check(format!("catalog.D01.n={n}"), "D01", vec![("n", n)], max_n));
    }
    out.push(Check::new(
        "catalog.lowdim.counts",
        "1, 3 and 5 Frobenius algebras in dimensions 2, 4 and 6, pairwise distinct",
        || {
            let mut by_dim: BTreeMap<usize, Vec<_>> = BTreeMap::new();
            for row in low_dim_table()? {
                ensure!(frobenius_decide(&row.entry.algebra).is_frobenius(), "{} is not Frobenius", row.label);
                let fp = fingerprint(&row.entry.algebra, None)?;
                by_dim.entry(row.entry.algebra.dim()).or_default().push((row.label, fp));
            }
            let counts: Vec<_> = by_dim.iter().map(|(d, v)| (*d, v.len())).collect();
            ensure!(counts == [(2, 1), (4, 3), (6, 5)], "counts {counts:?}");
            for rows in by_dim.values() {
                for (i, a) in rows.iter().enumerate() {
                    for b in &rows[i + 1..] {
                        ensure!(a.1 != b.1, "{} and {} share a fingerprint", a.0, b.0);
                    }
                }
            }
            pass(format!("{counts:?}"))
        },
    ));
    out.push(Check::new("dim8.count=14", "14 Frobenius 2-solvable algebras of dimension 8", || {
        let rows = dim8_table()?;
        ensure!(rows.len() == 14, "{} rows", rows.len());
        for row in &rows {
            ensure!(frobenius_decide(&row.entry.algebra).is_frobenius(), "{} is not Frobenius", row.label);
            for f in row.entry.check_facts()? {
                ensure!(f.ok, "{}: {} expected {}, got {}", row.label, f.fact, f.expected, f.actual);
            }
        }
        pass("")
    }));
    out.push(Check::new("dim8.distinct", "the 14 dimension-8 fingerprints are pairwise distinct", || {
        let rows = dim8_table()?;
        let fps = rows
            .iter()
            .map(|r| Ok((r.label.as_str(), fingerprint(&r.entry.algebra, None)?)))
            .collect::<Result<Vec<_>>>()?;
        for (i, a) in fps.iter().enumerate() {
            for b in &fps[i + 1..] {
                ensure!(a.1 != b.1, "{} and {} share a fingerprint", a.0, b.0);
            }
        }
        pass("")
    }));
    match catalog::witnesses() {
        Ok(ws) => {
            for w in ws {
                let id = format!("catalog.witness.{}", w.name);
                let desc = format!("explicit isomorphism {} -> {}", w.source_name, w.target_name);
                out.push(Check::new(id, desc, move || {
                    ensure!(w.verify()?, "map is not a Lie algebra isomorphism");
                    pass("")
                }));
            }
        }
        Err(e) => {
            let msg = e.to_string();
            out.push(Check::new("catalog.witness", "isomorphism witnesses build", move || bail!("{msg}")));
        }
    }
    out.push(Check::new("catalog.errata.y6", "the printed Y6(-1) -> G'(4,4) map is not an isomorphism", || {
        ensure!(!errata::y6_printed_witness()?.verify()?, "printed map verifies");
        pass("")
    }));
    out.push(Check::new("catalog.errata.y16", "the printed Y16 -> aff(R)^4 map (divisor 4) is not an isomorphism", || {
        ensure!(!errata::y16_printed_witness()?.verify()?, "printed map verifies");
        pass("")
    }));
    out.push(Check::new("catalog.errata.y8", "published Y8 does not commute; corrected Y8 gives D01(4)", move || {
        let published = build_with_max("Y", &params(&[("i", 8), ("corrected", 0)]), max_n);
        ensure!(matches!(published, Err(Error::NonAbelian(_))), "published Y8: {:?}", published.map(|e| e.title()));
        let y8 = build_with_max("Y", &params(&[("i", 8)]), max_n)?;
        let label = classify_g_phi(&catalog::nonderogatory_element(y8.matrix_generators.as_deref().unwrap_or(&[]))?.context("no nonderogatory element")?)?;
        ensure!(label.to_string() == "D01(4)", "corrected Y8 classifies as {label}");
        pass("")
    }));
    out.push(Check::new("catalog.degraaf", "3-dimensional nilpotent associative algebras and their realizations", || {
        let mut n = 0;
        for (a, mats, target) in catalog::degraaf_realizations() {
            ensure!(a.is_associative(), "{} is not associative", a.name);
            ensure!(a.realized_by(&mats)?, "{} realization fails", a.name);
            let entry = catalog::build(&target.name, &target.params)?;
            let mut with_identity = mats.clone();
            with_identity.push(MatrixQ::identity(4));
            let span = Subspace::span_matrices(4, &with_identity)?;
            ensure!(
                Some(span) == entry.matrix_generators.as_deref().map(|g| Subspace::span_matrices(4, g)).transpose()?,
                "{} with I does not span {}",
                a.name,
                entry.title()
            );
            n += 1;
        }
        let noncomm: Vec<String> = catalog::degraaf(1).into_iter().filter(|a| !a.is_commutative()).map(|a| a.name).collect();
        pass(format!("{n} realizations; non-commutative: {}", noncomm.join(", ")))
    }));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conjugators_are_invertible() {
        for n in 1..=8 {
            for seed in 0..6 {
                assert_eq!(fixed_conjugator(n, seed).det().unwrap(), q(1));
            }
        }
    }

    #[test]
    fn ids_are_unique() {
        let all = checks("all", 10).unwrap();
        let mut ids: Vec<_> = all.iter().map(|c| c.id.clone()).collect();
        ids.sort();
        let before = ids.len();
        ids.dedup();
        assert_eq!(ids.len(), before);
    }
}

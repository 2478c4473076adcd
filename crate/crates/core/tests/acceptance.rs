//! The fourteen acceptance criteria, in order. Each prints one line; the
//! test fails if any criterion does.

use std::collections::BTreeMap;
use std::io::Write;

use frobenius::catalog::{self, build, dim8_table, low_dim_table, witnesses, Params};
use frobenius::frobenius::{frobenius_decide, is_frobenius_functional, pfaffian_of_dalpha, dalpha_matrix, LinearForm};
use frobenius::jordan::{
    case_a_j, case_a_p, det_formula, krylov_companion, real_char_coeffs, symbolic_complex_p,
    SYMBOLIC_VARS,
};
use frobenius::lie::{fingerprint, semidirect_sum, verify_isomorphism, Fingerprint, LieAlgebra};
use frobenius::masa::{canonical_class2, is_masa, kravchuk_signature, recognize_class2_mans, Ambient};
use frobenius::matrix::{normalizer_of_span, power_basis, Subspace};
use frobenius::nonderog::{
    cartan_test, circular_permutation, classify_g_phi, complex_nilpotent_pair, enumerate_labels, is_nonderogatory,
    principal_nilpotent, representative_matrix, vandermonde_det_formula, vandermonde_isomorphism, ClassificationLabel,
};
use frobenius::{Error, MatrixQ, MultiPoly, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

trait OrFail<T> {
    fn or_fail(self, what: &str) -> Result<T, String>;
}

impl<T> OrFail<T> for frobenius::Result<T> {
    fn or_fail(self, what: &str) -> Result<T, String> {
        self.map_err(|e| format!("{what}: {e}"))
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn q(n: i64) -> Rational {
    Rational::from_integer(n)
}

fn params(ps: &[(&str, i64)]) -> Params {
    ps.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

fn entry(name: &str, ps: &[(&str, i64)]) -> Result<catalog::CatalogEntry, String> {
    build(name, &params(ps)).or_fail(name)
}

fn random_matrix(rng: &mut ChaCha8Rng, n: usize, bound: i64) -> MatrixQ {
    MatrixQ::from_fn(n, n, |_, _| q(rng.gen_range(-bound..=bound)))
}

fn random_invertible(rng: &mut ChaCha8Rng, n: usize) -> MatrixQ {
    loop {
        let p = random_matrix(rng, n, 2);
        if p.is_invertible().unwrap() {
            return p;
        }
    }
}

fn random_nonderogatory(rng: &mut ChaCha8Rng, n: usize) -> MatrixQ {
    loop {
        let m = random_matrix(rng, n, 3);
        if is_nonderogatory(&m).unwrap() {
            return m;
        }
    }
}

/// P M P⁻¹ for a random integer P.
fn random_conjugate(rng: &mut ChaCha8Rng, m: &MatrixQ) -> MatrixQ {
    let p = random_invertible(rng, m.rows());
    m.conjugate(&p).unwrap()
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let num = rng.gen_range(-9i64..=9);
        if num != 0 {
            return Rational::new(num, rng.gen_range(1i64..=5));
        }
    }
}

// ---------------------------------------------------------------------------

fn case_a() -> Check {
    let mut count = 0;
    for n in 2..=8 {
        for l in [q(0), q(1), Rational::new(-3, 2)] {
            let mt = krylov_companion(&real_char_coeffs(&l, n)).or_fail("companion")?;
            let p = case_a_p(n, &l);
            let j = case_a_j(n, &l);
            ensure(mt.checked_mul(&p).unwrap() == p.checked_mul(&j).unwrap(), || {
                format!("M~P != PJ for n={n}, lambda={l}")
            })?;
            let det = p.det().or_fail("det")?;
            ensure(det == q(1), || format!("det P = {det} for n={n}, lambda={l}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} (n, lambda) pairs"))
}

fn case_c_determinants() -> Check {
    let s = MultiPoly::var(4, 1);
    let unit = (q(1), q(0));
    let mut problems = Vec::new();
    for (n, c) in [(4usize, 4i64), (6, -64), (10, -1048576)] {
        let det = symbolic_complex_p(n, Some(&unit)).or_fail("P")?.det_laplace().or_fail("det")?;
        let want = s.pow((n * n / 4) as u32).scale(&q(c));
        if det != want {
            problems.push(format!("n={n}: det {} != {}", det.display_with(&SYMBOLIC_VARS), want.display_with(&SYMBOLIC_VARS)));
        }
    }
    let choices = [(q(1), q(0)), (q(2), q(-1))];
    for n in [4usize, 6, 8, 10] {
        for ch in &choices {
            let det = symbolic_complex_p(n, Some(ch)).or_fail("P")?.det_laplace().or_fail("det")?;
            let formula = det_formula(n, Some(ch)).or_fail("formula")?;
            if det != formula {
                problems.push(format!(
                    "n={n}, (p11,p12)=({},{}): det {} but formula {}",
                    ch.0,
                    ch.1,
                    det.display_with(&SYMBOLIC_VARS),
                    formula.display_with(&SYMBOLIC_VARS)
                ));
            }
        }
    }
    if problems.is_empty() {
        Ok("4s^4, -64s^9, -1048576s^25; general formula at n=4,6,8,10".into())
    } else {
        Err(problems.join("; "))
    }
}

fn case_c_spot_checks() -> Check {
    let p = symbolic_complex_p(10, Some(&(q(1), q(0)))).or_fail("P")?;
    let (r, s) = (MultiPoly::var(4, 0), MultiPoly::var(4, 1));
    let r2 = &r * &r;
    let s2 = &s * &s;
    let want = [
        ((1, 0), r.scale(&q(-9))),
        ((2, 0), (&r2.scale(&q(9)) + &s2).scale(&q(4))),
        ((9, 9), -(&s * &(&(&r2 * &r2).scale(&q(5)) - &(&(&r2 * &s2).scale(&q(10)) - &(&s2 * &s2))))),
    ];
    for ((i, j), w) in want {
        ensure(*p.get(i, j) == w, || {
            format!(
                "p[{},{}] = {} but expected {}",
                i + 1,
                j + 1,
                p.get(i, j).display_with(&SYMBOLIC_VARS),
                w.display_with(&SYMBOLIC_VARS)
            )
        })?;
    }
    Ok("p21, p31, p10,10".into())
}

fn circular_permutations() -> Check {
    let cases = [
        (2, "aff(R)+aff(R)"),
        (3, "aff(R)+aff(C)"),
        (4, "aff(R)+aff(R)+aff(C)"),
        (5, "aff(R)+aff(C)+aff(C)"),
        (7, "aff(R)+aff(C)+aff(C)+aff(C)"),
    ];
    for (n, want) in cases {
        let got = classify_g_phi(&circular_permutation(n)).or_fail("classify")?;
        let want: ClassificationLabel = want.parse().or_fail("label")?;
        ensure(got == want, || format!("n={n}: {got} != {want}"))?;
    }
    Ok("n = 2, 3, 4, 5, 7".into())
}

fn derivations() -> Check {
    for n in 2..=6usize {
        let g = catalog::d0(n).or_fail("D0")?;
        let der = g.derivation_algebra().dim();
        ensure(der == 3 * n - 1, || format!("dim Der(D0({n})) = {der}"))?;
        let norm = normalizer_of_span(&power_basis(&principal_nilpotent(n)).or_fail("powers")?)
            .or_fail("normalizer")?
            .dim();
        ensure(norm == 2 * n - 1, || format!("normalizer of R[M0], n={n}: {norm}"))?;
    }
    let m01 = complex_nilpotent_pair(4).or_fail("M01")?;
    let norm = normalizer_of_span(&power_basis(&m01).or_fail("powers")?).or_fail("normalizer")?.dim();
    ensure(norm == 6, || format!("normalizer of R[M01] in gl(4): {norm}"))?;
    Ok("Der 5, 8, 11, 14, 17; normalizers 3, 5, 7, 9, 11 and 6".into())
}

fn frobenius_verdicts() -> Check {
    let mut yes = 0;
    let mut no = 0;
    let mut check_yes = |name: &str, g: &LieAlgebra, index: usize| -> Result<(), String> {
        let alpha = LinearForm::dual_basis(g.dim(), index - 1);
        ensure(is_frobenius_functional(g, &alpha).or_fail(name)?, || {
            format!("{name}: e{index}* is not a Frobenius functional")
        })?;
        match frobenius_decide(g) {
            frobenius::FrobeniusVerdict::Frobenius { certificate, pfaffian_value } => {
                ensure(!pfaffian_value.is_zero(), || format!("{name}: zero certificate value"))?;
                ensure(is_frobenius_functional(g, &certificate).or_fail(name)?, || {
                    format!("{name}: certificate is degenerate")
                })?;
            }
            v => return Err(format!("{name}: {v:?}")),
        }
        yes += 1;
        Ok(())
    };
    for n in 2..=5 {
        for p in 1..n {
            let e = entry("G", &[("n", n), ("p", p)])?;
            check_yes(&e.title(), &e.algebra, n as usize + 1)?;
        }
    }
    for n in 1..=8 {
        let e = entry("D0", &[("n", n)])?;
        check_yes(&e.title(), &e.algebra, 2 * n as usize)?;
    }
    for n in [4, 6] {
        let e = entry("D01", &[("n", n)])?;
        check_yes(&e.title(), &e.algebra, n as usize + 1)?;
    }
    for n in [4i64, 5] {
        for p in 2..n {
            let e = entry("h", &[("n", n), ("p", p)])?;
            check_yes(&e.title(), &e.algebra, n as usize + 1)?;
        }
        let e = entry("Gprime", &[("n", n)])?;
        check_yes(&e.title(), &e.algebra, n as usize + 1)?;
    }
    let negatives = [
        entry("B", &[("n", 3)])?,
        entry("B", &[("n", 4)])?,
        entry("L2", &[("i", 4)])?,
        entry("Y", &[("i", 3)])?,
        entry("Y", &[("i", 4)])?,
        entry("Y", &[("i", 10)])?,
    ];
    for e in &negatives {
        ensure(pfaffian_of_dalpha(&e.algebra).is_zero(), || format!("{}: Pfaffian is not zero", e.title()))?;
        ensure(!frobenius_decide(&e.algebra).is_frobenius(), || format!("{} decided Frobenius", e.title()))?;
        no += 1;
    }
    Ok(format!("{yes} Frobenius with certificates, {no} with Pfaffian identically zero"))
}

/// Every catalog entry with matrix generators, across all families.
fn all_matrix_entries() -> Result<Vec<catalog::CatalogEntry>, String> {
    let mut out = Vec::new();
    for n in 2..=6 {
        for p in 1..n {
            out.push(entry("G", &[("n", n), ("p", p)])?);
        }
    }
    for n in 3..=6 {
        for p in 2..n {
            out.push(entry("h", &[("n", n), ("p", p)])?);
        }
        out.push(entry("Gprime", &[("n", n)])?);
        out.push(entry("B", &[("n", n)])?);
    }
    for n in 1..=6 {
        out.push(entry("D0", &[("n", n)])?);
    }
    for n in [2, 4, 6] {
        out.push(entry("D01", &[("n", n)])?);
    }
    for i in 1..=6 {
        out.push(entry("L2", &[("i", i)])?);
    }
    for i in 1..=17 {
        out.push(entry("Y", &[("i", i)])?);
    }
    out.push(entry("Y", &[("i", 6), ("eps", -1)])?);
    out.extend(dim8_table().or_fail("dim8")?.into_iter().map(|r| r.entry));
    out.extend(low_dim_table().or_fail("low dim")?.into_iter().map(|r| r.entry));
    Ok(out)
}

fn masa_direction() -> Check {
    let mut count = 0;
    for e in all_matrix_entries()? {
        let gens = e.matrix_generators.as_ref().expect("matrix entry");
        if frobenius_decide(&e.algebra).is_frobenius() {
            ensure(is_masa(gens, Ambient::Gl).or_fail(&e.title())?, || format!("{} is Frobenius but not a MASA", e.title()))?;
            count += 1;
        }
    }
    Ok(format!("{count} Frobenius entries, all MASAs"))
}

fn class2_mans() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut count = 0;
    for n in 3..=6usize {
        let canon = Subspace::span_matrices(n, &canonical_class2(n)).unwrap();
        for _ in 0..20 {
            let p = random_invertible(&mut rng, n);
            let conj: Vec<MatrixQ> = canonical_class2(n).iter().map(|a| a.conjugate(&p).unwrap()).collect();
            let k = kravchuk_signature(&conj).or_fail("kravchuk")?;
            ensure((k.nu, k.m, k.mu) == (n - 1, 0, 1), || format!("n={n}: signature {k:?}"))?;
            let back = recognize_class2_mans(&conj).or_fail("recognize")?.ok_or("not recognized")?;
            let mapped: Vec<MatrixQ> = conj.iter().map(|a| a.conjugate(&back).unwrap()).collect();
            ensure(Subspace::span_matrices(n, &mapped).unwrap() == canon, || format!("n={n}: not conjugated back"))?;
            count += 1;
        }
    }
    Ok(format!("{count} random conjugates, n = 3..6"))
}

fn isomorphism_witnesses() -> Check {
    let ws = witnesses().or_fail("witnesses")?;
    for w in &ws {
        ensure(w.verify().or_fail(&w.name)?, || format!("{} does not verify", w.name))?;
    }
    let names: Vec<&str> = ws.iter().map(|w| w.name.as_str()).collect();
    for needed in ["G(3,2)->h(3,2)", "G(6,2)->h(6,2)", "Y6(-1)->G'(4)", "Y9->", "Y11->", "Y12->", "Y17->D0(2)+D0(2)"] {
        ensure(names.iter().any(|n| n.starts_with(needed)), || format!("missing witness {needed}"))?;
    }
    for i in 11..=17 {
        ensure(names.iter().any(|n| n.starts_with(&format!("Y{i}->"))), || format!("missing witness Y{i}"))?;
    }
    Ok(format!("{} witnesses", ws.len()))
}

fn tables() -> Check {
    let low = low_dim_table().or_fail("low dim")?;
    let mut by_dim: BTreeMap<usize, Vec<Fingerprint>> = BTreeMap::new();
    for row in &low {
        ensure(frobenius_decide(&row.entry.algebra).is_frobenius(), || format!("{} not Frobenius", row.label))?;
        for f in row.entry.check_facts().or_fail(&row.label)? {
            ensure(f.ok, || format!("{}: {f:?}", row.label))?;
        }
        by_dim
            .entry(row.entry.algebra.dim())
            .or_default()
            .push(fingerprint(&row.entry.algebra, None).or_fail("fingerprint")?);
    }
    let counts: Vec<(usize, usize)> = by_dim.iter().map(|(d, v)| (*d, v.len())).collect();
    ensure(counts == vec![(2, 1), (4, 3), (6, 5)], || format!("low-dimensional counts {counts:?}"))?;
    for (d, fps) in &by_dim {
        for i in 0..fps.len() {
            for j in i + 1..fps.len() {
                ensure(fps[i] != fps[j], || format!("dimension {d}: entries {i} and {j} share a fingerprint"))?;
            }
        }
    }
    let dim8 = dim8_table().or_fail("dim8")?;
    ensure(dim8.len() == 14, || format!("dim-8 count {}", dim8.len()))?;
    for row in &dim8 {
        ensure(frobenius_decide(&row.entry.algebra).is_frobenius(), || format!("{} not Frobenius", row.label))?;
        for f in row.entry.check_facts().or_fail(&row.label)? {
            ensure(f.ok, || format!("{}: {f:?}", row.label))?;
        }
    }
    let published = build("Y", &params(&[("i", 8), ("corrected", 0)]));
    ensure(matches!(published, Err(Error::NonAbelian(_))), || format!("published Y8: {published:?}"))?;
    let y8 = entry("Y", &[("i", 8)])?;
    let facts = y8.check_facts().or_fail("Y8")?;
    let label = facts.iter().find(|f| f.fact == "label").ok_or("Y8 has no label fact")?;
    ensure(label.ok && label.actual == "D01(4)", || format!("corrected Y8: {label:?}"))?;
    Ok("dims 2/4/6 have 1/3/5 algebras; dim 8 has 14; Y8 published rejected, corrected gives D01(4)".into())
}

fn fingerprints() -> Check {
    let oracle: BTreeMap<String, Fingerprint> =
        serde_json::from_str(include_str!("data/dim8_fingerprints.json")).map_err(|e| e.to_string())?;
    let rows = dim8_table().or_fail("dim8")?;
    let mut fps = Vec::new();
    for row in &rows {
        let fp = fingerprint(&row.entry.algebra, None).or_fail(&row.label)?;
        let want = oracle.get(&row.label).ok_or_else(|| format!("{} missing from oracle", row.label))?;
        ensure(&fp == want, || format!("{}: fingerprint differs from oracle", row.label))?;
        fps.push((row.label.clone(), fp));
    }
    let mut base_ties = 0;
    for i in 0..fps.len() {
        for j in i + 1..fps.len() {
            ensure(fps[i].1 != fps[j].1, || format!("{} and {} share a fingerprint", fps[i].0, fps[j].0))?;
            if fps[i].1.base() == fps[j].1.base() {
                base_ties += 1;
            }
        }
    }
    Ok(format!("14 distinct, matches oracle ({base_ties} pairs tied on the base vector)"))
}

fn cartan() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let reps: Vec<MatrixQ> = enumerate_labels(4).iter().map(|l| representative_matrix(l).unwrap()).collect();
    let (mut cartan, mut other) = (0, 0);
    for k in 0..50 {
        let m = if k % 2 == 0 {
            random_nonderogatory(&mut rng, 4)
        } else {
            random_conjugate(&mut rng, &reps[k / 2 % reps.len()])
        };
        let t = cartan_test(&m).or_fail("cartan test")?;
        if t.is_cartan {
            cartan += 1;
        } else {
            other += 1;
        }
    }
    for n in 1..=8usize {
        let count = enumerate_labels(n).iter().filter(|l| l.is_cartan_type()).count();
        ensure(count == n / 2 + 1, || format!("n={n}: {count} Cartan labels"))?;
    }
    Ok(format!("50 matrices agree ({cartan} Cartan, {other} not); counts n/2+1 for n <= 8"))
}

fn vandermonde() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..20 {
        let n = rng.gen_range(1..=6);
        let mut ls: Vec<Rational> = Vec::new();
        while ls.len() < n {
            let x = random_rational(&mut rng);
            if !ls.contains(&x) {
                ls.push(x);
            }
        }
        let v = vandermonde_isomorphism(&ls).or_fail("vandermonde")?;
        ensure(v.n_matrix.det().unwrap() == vandermonde_det_formula(&ls), || format!("{ls:?}"))?;
    }
    let v = vandermonde_isomorphism(&[q(1), q(2), q(3)]).or_fail("vandermonde")?;
    ensure(verify_isomorphism(&v.psi, &v.source, &v.g_phi).or_fail("verify")?, || "psi fails for (1,2,3)".into())?;
    Ok("20 random tuples; psi verifies for n=3".into())
}

fn property_suites() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..100 {
        let n = rng.gen_range(1..=6);
        let m = random_matrix(&mut rng, n, 4);
        let chi = m.char_poly().or_fail("chi")?;
        ensure(m.eval_poly(&chi).unwrap().is_zero(), || format!("Cayley-Hamilton fails for {m}"))?;
        let mu = m.min_poly().or_fail("min poly")?;
        ensure(mu.divides(&chi).unwrap(), || format!("min poly does not divide chi for {m}"))?;
    }
    let mut algebras: Vec<LieAlgebra> = all_matrix_entries()?.into_iter().map(|e| e.algebra).collect();
    while algebras.len() < 100 {
        let n = rng.gen_range(1..=4);
        let m = random_matrix(&mut rng, n, 3);
        algebras.push(semidirect_sum(&power_basis(&m).unwrap(), n).or_fail("random split")?);
    }
    for g in &algebras {
        g.check_jacobi().or_fail("Jacobi")?;
    }
    let even: Vec<&LieAlgebra> = algebras.iter().filter(|g| g.dim() % 2 == 0 && g.dim() <= 10).collect();
    let mut pf_cache: BTreeMap<usize, MultiPoly> = BTreeMap::new();
    for k in 0..100 {
        let idx = k % even.len();
        let g = even[idx];
        let pf = pf_cache.entry(idx).or_insert_with(|| pfaffian_of_dalpha(g));
        let alpha = LinearForm::new((0..g.dim()).map(|_| q(rng.gen_range(-3..=3))).collect());
        let v = pf.eval(&alpha.coeffs);
        let det = dalpha_matrix(g, &alpha).unwrap().det().unwrap();
        ensure(&v * &v == det, || format!("Pf^2 != det on algebra {idx}"))?;
    }
    let reps: Vec<MatrixQ> = (1..=5)
        .flat_map(enumerate_labels)
        .map(|l| representative_matrix(&l).unwrap())
        .collect();
    for k in 0..100 {
        let m = if k % 2 == 0 {
            reps[k / 2 % reps.len()].clone()
        } else {
            let n = rng.gen_range(2..=5);
            random_nonderogatory(&mut rng, n)
        };
        let conj = random_conjugate(&mut rng, &m);
        let (a, b) = (classify_g_phi(&m).or_fail("classify")?, classify_g_phi(&conj).or_fail("classify")?);
        ensure(a == b, || format!("{a} vs {b} after conjugation"))?;
    }
    Ok(format!(
        "Cayley-Hamilton, min|chi, Jacobi on {} algebras, Pf^2 = det, conjugation invariance",
        algebras.len()
    ))
}

#[test]
fn acceptance_criteria() {
    let criteria: [(&str, fn() -> Check); 14] = [
        ("Jordan case A closed-form P", case_a),
        ("Jordan case C determinants", case_c_determinants),
        ("Jordan case C coefficients for n=10", case_c_spot_checks),
        ("circular permutations classify", circular_permutations),
        ("derivation and normalizer dimensions", derivations),
        ("Frobenius verdicts with certificates", frobenius_verdicts),
        ("Frobenius entries are MASAs", masa_direction),
        ("class-2 MANS recognition", class2_mans),
        ("isomorphism witnesses verify", isomorphism_witnesses),
        ("classification tables in dimension <= 8", tables),
        ("fingerprints separate the 14 dim-8 algebras", fingerprints),
        ("Cartan criteria agree", cartan),
        ("Vandermonde isomorphism", vandermonde),
        ("randomized property suites", property_suites),
    ];
    let mut failed = Vec::new();
    let stdout = std::io::stdout();
    writeln!(stdout.lock()).unwrap();
    for (i, (desc, f)) in criteria.iter().enumerate() {
        let line = match f() {
            Ok(detail) => format!("[PASS] {:>2}. {desc}: {detail}", i + 1),
            Err(why) => {
                failed.push(i + 1);
                format!("[FAIL] {:>2}. {desc}: {why}", i + 1)
            }
        };
        // written past the test harness capture so that every run shows it
        writeln!(stdout.lock(), "{line}").unwrap();
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

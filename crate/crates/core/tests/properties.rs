use frobenius::frobenius::dalpha_matrix;
use frobenius::jordan::{jordanize, JordanMatrices};
use frobenius::lie::fingerprint;
use frobenius::matrix::{centralizer, power_basis};
use frobenius::nonderog::{classify_g_phi, eigen_signature, enumerate_labels, is_nonderogatory, label_algebra, representative_matrix};
use frobenius::{
    direct_sum, pfaffian_of_dalpha, semidirect_sum, LieAlgebra, LinearForm, MatrixQ, PolyQ, QuadExt, Rational, Subspace,
};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=9).prop_map(|(n, d)| Rational::new(n, d))
}

fn square(n: usize, bound: i64) -> impl Strategy<Value = MatrixQ> {
    prop::collection::vec(-bound..=bound, n * n).prop_map(move |v| MatrixQ::from_i64(n, n, &v).unwrap())
}

fn any_square(max: usize) -> impl Strategy<Value = MatrixQ> {
    (1..=max).prop_flat_map(|n| square(n, 3))
}

/// An invertible integer matrix: unit lower times unit upper triangular.
fn unimodular(n: usize) -> impl Strategy<Value = MatrixQ> {
    (square(n, 2), square(n, 2)).prop_map(move |(a, b)| {
        let l = MatrixQ::from_fn(n, n, |i, j| if i == j { Rational::one() } else if i > j { a.get(i, j).clone() } else { Rational::zero() });
        let u = MatrixQ::from_fn(n, n, |i, j| if i == j { Rational::one() } else if i < j { b.get(i, j).clone() } else { Rational::zero() });
        l.checked_mul(&u).unwrap()
    })
}

fn poly(max_deg: usize) -> impl Strategy<Value = PolyQ> {
    prop::collection::vec(-6i64..=6, 1..=max_deg + 1).prop_map(|c| PolyQ::from_i64s(&c))
}

fn quad(d: i64) -> impl Strategy<Value = QuadExt> {
    (rational(), rational()).prop_map(move |(a, b)| QuadExt::new(a, b, Rational::from_integer(d)).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rationals_are_canonical(n in -1000i64..1000, d in 1i64..1000, k in 1i64..50) {
        let r = Rational::new(n * k, d * k);
        prop_assert_eq!(&r, &Rational::new(n, d));
        let g = num_integer::gcd(r.numer().clone(), r.denom().clone());
        prop_assert!(g == 1.into());
        prop_assert!(r.denom() >= &1.into());
        prop_assert_eq!(r.to_string().parse::<Rational>().unwrap(), r);
    }

    #[test]
    fn quadext_division_inverts_multiplication(x in quad(3), y in quad(3)) {
        prop_assume!(!y.norm().is_zero());
        let p = x.checked_mul(&y).unwrap();
        prop_assert_eq!(p.checked_div(&y).unwrap(), x);
    }

    #[test]
    fn quadext_rejects_mixed_fields(x in quad(2), y in quad(3)) {
        prop_assert!(x.checked_add(&y).is_err());
        prop_assert!(x.checked_mul(&y).is_err());
    }

    #[test]
    fn square_free_decomposition_reconstructs(p in poly(4), q in poly(3)) {
        let f = &p * &q.pow(2);
        prop_assume!(f.degree().unwrap_or(0) > 0);
        let mut prod = PolyQ::constant(f.lead());
        for (g, e) in f.square_free_decomposition().unwrap() {
            prop_assert!(g.is_squarefree().unwrap());
            prod = &prod * &g.pow(e);
        }
        prop_assert_eq!(prod, f);
    }

    #[test]
    fn gcd_divides_both(p in poly(5), q in poly(5)) {
        prop_assume!(!p.is_zero() || !q.is_zero());
        let g = p.gcd(&q).unwrap();
        prop_assert!(g.divides(&p).unwrap());
        prop_assert!(g.divides(&q).unwrap());
    }

    #[test]
    fn real_root_count_has_degree_parity(p in poly(7)) {
        prop_assume!(p.degree().unwrap_or(0) > 0 && p.is_squarefree().unwrap());
        let deg = p.degree().unwrap();
        let r = p.count_real_roots().unwrap();
        prop_assert!(r <= deg);
        prop_assert_eq!(r % 2, deg % 2);
    }

    #[test]
    fn cayley_hamilton_and_minimal_polynomial(m in any_square(6)) {
        let chi = m.char_poly().unwrap();
        prop_assert!(m.eval_poly(&chi).unwrap().is_zero());
        let mu = m.min_poly().unwrap();
        prop_assert!(m.eval_poly(&mu).unwrap().is_zero());
        prop_assert!(mu.divides(&chi).unwrap());
    }

    #[test]
    fn conjugation_preserves_char_poly(m in square(4, 3), p in unimodular(4)) {
        let c = m.conjugate(&p).unwrap();
        prop_assert_eq!(c.char_poly().unwrap(), m.char_poly().unwrap());
    }

    #[test]
    fn centralizer_contains_identity_and_inputs(m in any_square(5)) {
        let n = m.rows();
        let c = centralizer(std::slice::from_ref(&m)).unwrap();
        prop_assert!(c.contains_matrix(&MatrixQ::identity(n)));
        prop_assert!(c.contains_matrix(&m));
        prop_assert!(c.dim() >= n);
        // nonderogatory iff the centralizer is the (n-dimensional) polynomial algebra
        let poly_span = Subspace::span_matrices(n, &power_basis(&m).unwrap()).unwrap();
        prop_assert_eq!(is_nonderogatory(&m).unwrap(), c.dim() == n);
        prop_assert_eq!(c.dim() == n, c == poly_span);
    }

    #[test]
    fn membership_matches_rank_jump(
        vs in prop::collection::vec(prop::collection::vec(-3i64..=3, 5), 1..5),
        w in prop::collection::vec(-3i64..=3, 5),
    ) {
        let to_q = |v: &Vec<i64>| v.iter().map(|&x| Rational::from_integer(x)).collect::<Vec<_>>();
        let vecs: Vec<Vec<Rational>> = vs.iter().map(to_q).collect();
        let s = Subspace::span(5, &vecs).unwrap();
        let mut more = vecs.clone();
        more.push(to_q(&w));
        let t = Subspace::span(5, &more).unwrap();
        prop_assert_eq!(s.contains(&to_q(&w)), t.dim() == s.dim());
    }

    #[test]
    fn classification_is_conjugation_invariant(k in 0usize..1000, p in unimodular(5)) {
        let labels: Vec<_> = (1..=5).flat_map(enumerate_labels).filter(|l| l.size() == 5).collect();
        let l = &labels[k % labels.len()];
        let m = representative_matrix(l).unwrap();
        prop_assert_eq!(&classify_g_phi(&m.conjugate(&p).unwrap()).unwrap(), l);
    }

    #[test]
    fn jordanize_is_an_exact_similarity(m in square(4, 3)) {
        prop_assume!(is_nonderogatory(&m).unwrap());
        let Ok(res) = jordanize(&m) else {
            // an irreducible cubic or quartic factor, or two distinct square roots
            return Ok(());
        };
        let sig = eigen_signature(&m).unwrap();
        let total: usize = res.blocks.iter().map(|b| b.size).sum();
        prop_assert_eq!(total, 4);
        prop_assert_eq!(total, sig.size());
        match res.matrices {
            JordanMatrices::Rational { j, p } => {
                prop_assert_eq!(m.checked_mul(&p).unwrap(), p.checked_mul(&j).unwrap());
            }
            JordanMatrices::Quadratic { d, j, p } => {
                let mq = m.to_quad(&d).unwrap();
                prop_assert_eq!(mq.checked_mul(&p).unwrap(), p.checked_mul(&j).unwrap());
            }
        }
    }

    #[test]
    fn abelian_splits_are_two_solvable(m in any_square(4)) {
        let g = semidirect_sum(&power_basis(&m).unwrap(), m.rows()).unwrap();
        g.check_jacobi().unwrap();
        prop_assert!(g.is_two_solvable());
    }

    #[test]
    fn pfaffian_squares_to_determinant(
        k in 0usize..1000,
        alpha in prop::collection::vec(-4i64..=4, 8),
    ) {
        let labels: Vec<_> = (1..=4).flat_map(enumerate_labels).collect();
        let g = label_algebra(&labels[k % labels.len()]).unwrap();
        let alpha = LinearForm::new(alpha[..g.dim()].iter().map(|&x| Rational::from_integer(x)).collect());
        let pf = pfaffian_of_dalpha(&g).eval(&alpha.coeffs);
        prop_assert_eq!(&pf * &pf, dalpha_matrix(&g, &alpha).unwrap().det().unwrap());
    }

    #[test]
    fn derived_dims_add_under_direct_sum(a in 0usize..1000, b in 0usize..1000) {
        let labels: Vec<_> = (1..=3).flat_map(enumerate_labels).collect();
        let g = label_algebra(&labels[a % labels.len()]).unwrap();
        let h = label_algebra(&labels[b % labels.len()]).unwrap();
        let s = direct_sum(&[g.clone(), h.clone()]);
        let (dg, dh, ds) = (g.derived_dims(), h.derived_dims(), s.derived_dims());
        for i in 0..ds.len() {
            let at = |v: &Vec<usize>| *v.get(i).unwrap_or(v.last().unwrap());
            prop_assert_eq!(ds[i], at(&dg) + at(&dh));
        }
    }
}

/// For each label up to size 4, the algebra of a representative matrix and
/// the direct sum of its blocks share a fingerprint.
#[test]
fn classification_agrees_with_fingerprints() {
    for n in 1..=4 {
        for l in enumerate_labels(n) {
            let m = representative_matrix(&l).unwrap();
            let from_matrix: LieAlgebra = semidirect_sum(&power_basis(&m).unwrap(), n).unwrap();
            let from_blocks = label_algebra(&l).unwrap();
            assert_eq!(
                fingerprint(&from_matrix, None).unwrap(),
                fingerprint(&from_blocks, None).unwrap(),
                "{l}"
            );
        }
    }
}

use biquot::algebras::{FreeGc, Generator, Mono};
use biquot::dg::Dga;
use biquot::graded::{binomial, compose, koszul_parity, koszul_sign, permute, shuffles, Lin};
use biquot::input::{parse_polynomial, show_polynomial};
use biquot::scalar::{Field, Fp, Q};
use biquot::tor::{bar_tor, compare_ranks, koszul_tor, PolyPresentation, TorProblem};
use proptest::prelude::*;

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

fn perms_and_degrees() -> impl Strategy<Value = (Vec<usize>, Vec<usize>, Vec<i32>)> {
    (0usize..=5).prop_flat_map(|n| {
        (
            permutation(n),
            permutation(n),
            prop::collection::vec(0i32..=3, n),
        )
    })
}

fn small_q() -> impl Strategy<Value = Q> {
    (-50i64..=50, 1i64..=12).prop_map(|(a, b)| Q::new(a, b))
}

proptest! {
    #[test]
    fn koszul_sign_is_multiplicative((sigma, tau, degs) in perms_and_degrees()) {
        let both = koszul_parity(&compose(&sigma, &tau), &degs);
        let split = koszul_parity(&sigma, &permute(&tau, &degs)) ^ koszul_parity(&tau, &degs);
        prop_assert_eq!(both, split);
        let s: Q = koszul_sign(&tau, &degs).unwrap();
        prop_assert_eq!(s, Q::sign(koszul_parity(&tau, &degs)));
    }

    #[test]
    fn shuffle_count_is_binomial(p in 0usize..=5, q in 0usize..=5) {
        let all = shuffles(p, q);
        prop_assert_eq!(all.len() as u64, binomial((p + q) as u64, p as u64));
        for s in &all {
            prop_assert!(s[..p].windows(2).all(|w| w[0] < w[1]));
            prop_assert!(s[p..].windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn rationals_form_a_field(a in small_q(), b in small_q(), c in small_q()) {
        prop_assert_eq!((a.clone() + b.clone()) * c.clone(), a.clone() * c.clone() + b.clone() * c.clone());
        prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
        prop_assert_eq!(a.clone() - a.clone(), Q::zero());
        if let Some(i) = a.inv() {
            prop_assert_eq!(i * a, Q::one());
        } else {
            prop_assert!(a.is_zero());
        }
    }

    #[test]
    fn residues_form_a_field(a in -1000i64..1000, b in -1000i64..1000) {
        let (x, y) = (Fp::<7>::new(a), Fp::<7>::new(b));
        prop_assert_eq!(x * y, Fp::<7>::new(a * b));
        prop_assert_eq!(x + y, Fp::<7>::new(a + b));
        if a.rem_euclid(7) != 0 {
            prop_assert_eq!(x.inv().unwrap() * x, Fp::<7>::one());
        }
    }

    #[test]
    fn products_of_big_rationals_stay_exact(a in any::<i64>(), b in any::<i64>()) {
        let (x, y) = (Q::from_i64(a), Q::from_i64(b));
        let p = x.clone() * y.clone();
        if b != 0 {
            prop_assert_eq!(p * y.inv().unwrap(), x);
        }
    }
}

fn gens() -> Vec<Generator> {
    vec![
        Generator::new("t1", 2),
        Generator::new("t2", 2),
        Generator::new("u", 4),
    ]
}

fn polynomial() -> impl Strategy<Value = Lin<Mono, Q>> {
    prop::collection::vec((prop::collection::vec(0u32..=3, 3), -20i64..=20), 0..6).prop_map(
        |terms| {
            let mut p = Lin::zero();
            for (m, c) in terms {
                p.add_term(m, Q::from_i64(c));
            }
            p
        },
    )
}

proptest! {
    #[test]
    fn polynomial_strings_round_trip(p in polynomial()) {
        let a = FreeGc::<Q>::new(gens());
        let text = show_polynomial(&a, &p);
        let back = parse_polynomial::<Q>(&text, &gens()).unwrap();
        prop_assert_eq!(back, p, "{}", text);
    }
}

/// A homogeneous element of `alg` in degree `n` with the given coefficients.
fn homogeneous(alg: &FreeGc<Q>, n: i32, coeffs: &[i64], offset: usize) -> Lin<Mono, Q> {
    let mut p = Lin::zero();
    for (m, c) in alg
        .basis(n)
        .into_iter()
        .zip(coeffs.iter().cycle().skip(offset))
    {
        p.add_term(m, Q::from_i64(*c));
    }
    p
}

#[derive(Debug, Clone)]
struct Diagram {
    base: Vec<i32>,
    left: Vec<i32>,
    right: Vec<i32>,
    coeffs: Vec<i64>,
}

fn diagram() -> impl Strategy<Value = Diagram> {
    (
        prop::collection::vec(prop::sample::select(vec![2, 4]), 1..=2),
        prop::collection::vec(prop::sample::select(vec![2, 4]), 0..=2),
        prop::collection::vec(Just(2), 0..=1),
        prop::collection::vec(-2i64..=2, 1..8),
    )
        .prop_map(|(base, left, right, coeffs)| Diagram {
            base,
            left,
            right,
            coeffs,
        })
}

fn presentation(prefix: &str, degrees: &[i32]) -> PolyPresentation {
    let names: Vec<String> = (0..degrees.len())
        .map(|i| format!("{prefix}{}", i + 1))
        .collect();
    let gens: Vec<(&str, i32)> = names
        .iter()
        .map(String::as_str)
        .zip(degrees.iter().copied())
        .collect();
    PolyPresentation::new(prefix, &gens)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// The bar and Koszul complexes compute the same bigraded ranks on random
    /// polynomial diagrams.
    #[test]
    fn bar_and_koszul_agree(d in diagram()) {
        let (b, l, r) = (presentation("x", &d.base), presentation("t", &d.left), presentation("s", &d.right));
        let (la, ra): (FreeGc<Q>, FreeGc<Q>) = (l.algebra(), r.algebra());
        let f_left: Vec<_> = d.base.iter().enumerate().map(|(i, n)| homogeneous(&la, *n, &d.coeffs, i)).collect();
        let f_right: Vec<_> = d.base.iter().enumerate().map(|(i, n)| homogeneous(&ra, *n, &d.coeffs, i + 1)).collect();
        let problem = TorProblem::new(&b, &l, &r, f_left, f_right).unwrap();
        let bar = bar_tor(&problem, 8).unwrap();
        let koszul = koszul_tor(&problem, 8).unwrap();
        prop_assert_eq!(compare_ranks(&bar, &koszul), Ok(()));
        prop_assert!(bar.euler_consistent() && koszul.euler_consistent());
        prop_assert!(bar.is_graded_commutative());
    }
}

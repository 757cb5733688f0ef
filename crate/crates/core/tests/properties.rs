use proptest::prelude::*;

use walshdj_core::boolfn::tt;
use walshdj_core::djsim::{dj_distribution, dj_evolve_exact, dj_sample, dj_trace};
use walshdj_core::fngen;
use walshdj_core::spectral::{walsh_spectrum, SpectrumClass};
use walshdj_core::BooleanFunction;

fn function(max_n: usize) -> impl Strategy<Value = BooleanFunction> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(0u8..=1, 1 << n)
            .prop_map(move |bits| BooleanFunction::from_bits(n, &bits).unwrap())
    })
}

fn function_with_mask(max_n: usize) -> impl Strategy<Value = (BooleanFunction, u64)> {
    function(max_n).prop_flat_map(|f| {
        let len = 1u64 << f.n();
        (Just(f), 0..len)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn bits_roundtrip(f in function(8)) {
        prop_assert_eq!(BooleanFunction::from_bits(f.n(), &f.to_bits()).unwrap(), f.clone());
        prop_assert_eq!(tt::parse(&tt::render(&f)).unwrap(), f);
    }

    #[test]
    fn complement_weight(f in function(8)) {
        prop_assert_eq!(f.weight() + (!&f).weight(), 1 << f.n());
    }

    #[test]
    fn anf_involution(f in function(8)) {
        prop_assert_eq!(f.to_anf().to_function(), f.clone());
        let coeffs = f.to_anf();
        let degree = coeffs.monomials().iter().map(|m| m.count_ones() as usize).max().unwrap_or(0);
        prop_assert_eq!(f.degree(), degree);
    }

    #[test]
    fn evaluations_are_counted(f in function(6), k in 0usize..40) {
        for i in 0..k {
            f.evaluate(i as u64 % (1 << f.n())).unwrap();
        }
        prop_assert_eq!(f.query_count(), k as u64);
    }

    #[test]
    fn spectrum_identities(f in function(10)) {
        let s = walsh_spectrum(&f);
        let len = 1i64 << f.n();
        prop_assert!(s.satisfies_parseval());
        prop_assert!(s.values().iter().all(|v| v % 2 == 0));
        prop_assert_eq!(s.get(0), len - 2 * f.weight() as i64);
        prop_assert_eq!(f.is_balanced(), s.get(0) == 0);
        let neg: Vec<i64> = walsh_spectrum(&!&f).values().to_vec();
        prop_assert!(neg.iter().zip(s.values()).all(|(a, b)| *a == -b));
        prop_assert_eq!(s.nonlinearity(), (len as u64 / 2) - s.max_abs() / 2);
    }

    #[test]
    fn quarter_weight(f in function(10)) {
        let s = walsh_spectrum(&f);
        let len = 1u64 << f.n();
        if f.n() >= 2 {
            prop_assert_eq!(f.weight() == len / 4, s.get(0) == (len / 2) as i64);
            prop_assert_eq!(f.weight() == 3 * len / 4, s.get(0) == -((len / 2) as i64));
        }
    }

    #[test]
    fn shift((f, omega) in function_with_mask(9)) {
        let s = walsh_spectrum(&f);
        let g = walsh_spectrum(&f.xor_linear(omega).unwrap());
        for u in 0..1u64 << f.n() {
            prop_assert_eq!(g.get(u), s.get(u ^ omega));
        }
    }

    #[test]
    fn circuit_amplitudes((f, z) in function_with_mask(8)) {
        let s = walsh_spectrum(&f);
        let exact = dj_evolve_exact(&f).unwrap();
        prop_assert_eq!(exact.numerators(), s.values());
        let trace = dj_trace(&f).unwrap();
        let scale = (1u64 << f.n()) as f64;
        for state in &trace {
            prop_assert!((state.norm_sqr() - 1.0).abs() < 1e-12);
        }
        let psi2 = trace[2].amplitudes();
        let mag = scale.sqrt().recip();
        prop_assert!(psi2.iter().all(|a| (a.abs() - mag).abs() < 1e-12));
        prop_assert!((trace[3].amplitudes()[z as usize] - s.get(z) as f64 / scale).abs() < 1e-12);

        let d = dj_distribution(&f).unwrap();
        prop_assert_eq!(d.total_weight(), d.denominator());
        prop_assert_eq!(d.weight(z) == 0, s.get(z) == 0);
    }

    #[test]
    fn samples_are_seed_determined(f in function(8), seed in any::<u64>()) {
        let d = dj_distribution(&f).unwrap();
        let a = dj_sample(&d, seed, 64);
        prop_assert_eq!(&a, &dj_sample(&d, seed, 64));
        prop_assert!(a.iter().all(|&z| d.weight(z) > 0));
    }

    #[test]
    fn metric((f, g, h) in (3usize..=6).prop_flat_map(|n| {
        let t = || proptest::collection::vec(0u8..=1, 1 << n)
            .prop_map(move |b| BooleanFunction::from_bits(n, &b).unwrap());
        (t(), t(), t())
    })) {
        prop_assert_eq!(f.distance(&g).unwrap(), g.distance(&f).unwrap());
        prop_assert_eq!(f.distance(&g).unwrap() == 0, f == g);
        prop_assert!(f.distance(&h).unwrap() <= f.distance(&g).unwrap() + g.distance(&h).unwrap());
    }

    #[test]
    fn generated_classes(seed in any::<u64>(), half in 1usize..=4) {
        let mut rng = walshdj_core::rng::seeded(seed);
        let bent = fngen::random_bent_mm(2 * half, &mut rng).unwrap();
        prop_assert_eq!(walsh_spectrum(&bent).classify(), SpectrumClass::Bent);
        if half >= 2 {
            let n = 2 * half - 1;
            let p = fngen::random_plateaued(n, &mut rng).unwrap();
            let s = walsh_spectrum(&p);
            prop_assert_eq!(s.classify(), SpectrumClass::Plateaued(n.div_ceil(2) as u32));
            prop_assert_eq!(s.support_size(), 1 << (n - 1));
        }
    }

    #[test]
    fn plateaued_probabilities(seed in any::<u64>(), n in prop::sample::select(vec![3usize, 5, 7, 9])) {
        let f = fngen::random_plateaued(n, &mut walshdj_core::rng::seeded(seed)).unwrap();
        let d = dj_distribution(&f).unwrap();
        let k = n.div_ceil(2);
        let support = d.support();
        prop_assert_eq!(support.len(), 1 << (2 * n - 2 * k));
        prop_assert!(support.iter().all(|&z| d.weight(z) == 1 << (2 * k)));
    }
}

#[test]
fn linear_functions_pairwise_at_half_distance() {
    for n in 1..=4 {
        let ls: Vec<_> = (0..1u64 << n)
            .map(|w| fngen::linear(n, w).unwrap())
            .collect();
        for (i, a) in ls.iter().enumerate() {
            assert!(a.degree() <= 1);
            for b in &ls[i + 1..] {
                assert_eq!(a.distance(b).unwrap(), 1 << (n - 1));
            }
        }
    }
    for n in 1..=8 {
        let monomial = BooleanFunction::from_fn(n, |x| x == (1 << n) - 1).unwrap();
        assert_eq!(monomial.degree(), n);
    }
}

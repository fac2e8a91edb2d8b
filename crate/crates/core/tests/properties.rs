use proptest::prelude::*;

use qfft::io::{read_state, write_state};
use qfft::number_theory::{
    coprime_factors, gcd, mod_inverse, radix_decode, radix_encode, CenteredResidue, CrtBasis,
};
use qfft::phase_space::{direct_with_stats, fast_with_stats};
use qfft::reference_dft::{dft_direct, random_state};
use qfft::{OpStats, PhaseSpaceKind, Plan};

fn radix_shape() -> impl Strategy<Value = (i64, u32)> {
    prop_oneof![
        Just((3, 2)),
        Just((3, 3)),
        Just((3, 4)),
        Just((5, 2)),
        Just((5, 3)),
        Just((7, 2)),
        Just((9, 2)),
        Just((11, 2)),
    ]
}

fn coprime_set() -> impl Strategy<Value = Vec<i64>> {
    prop_oneof![
        Just(vec![3, 5]),
        Just(vec![5, 3]),
        Just(vec![3, 7]),
        Just(vec![5, 9]),
        Just(vec![9, 7]),
        Just(vec![3, 5, 7]),
        Just(vec![7, 3, 5]),
        Just(vec![5, 7, 11]),
        Just(vec![3, 11, 13]),
    ]
}

fn odd_modulus() -> impl Strategy<Value = i64> {
    (1i64..500).prop_map(|k| 2 * k + 1)
}

proptest! {
    #[test]
    fn centered_values_stay_in_period(m in odd_modulus(), x in -100_000i64..100_000) {
        let r = CenteredResidue::new(x, m).unwrap();
        let half = (m - 1) / 2;
        prop_assert!((-half..=half).contains(&r.value()));
        prop_assert_eq!((r.value() - x).rem_euclid(m), 0);
    }

    #[test]
    fn inverse_is_inverse(m in odd_modulus(), x in 1i64..10_000) {
        prop_assume!(gcd(x, m) == 1);
        let inv = mod_inverse(x, m).unwrap();
        prop_assert!((0..m).contains(&inv));
        prop_assert_eq!((x * inv).rem_euclid(m), 1 % m);
    }

    #[test]
    fn radix_round_trip((d, n) in radix_shape(), x in any::<i64>()) {
        let dim = d.pow(n);
        let j = CenteredResidue::new(x % dim, dim).unwrap();
        let digits = radix_encode(j, d, n).unwrap();
        prop_assert!(digits.digits().iter().all(|&v| v.abs() <= (d - 1) / 2));
        prop_assert_eq!(radix_decode(&digits).unwrap(), j);
    }

    #[test]
    fn crt_is_a_ring_isomorphism(factors in coprime_set(), x in any::<i32>(), y in any::<i32>()) {
        let basis = CrtBasis::new(&factors).unwrap();
        let dim = basis.dim();
        let j = CenteredResidue::new(x as i64, dim).unwrap();
        let k = CenteredResidue::new(y as i64, dim).unwrap();
        let (ej, ek) = (basis.encode(j).unwrap(), basis.encode(k).unwrap());
        let sum = basis.encode(j.add(&k).unwrap()).unwrap();
        let prod = basis.encode(j.mul(&k).unwrap()).unwrap();
        for v in 0..factors.len() {
            prop_assert_eq!(sum[v], ej[v].add(&ek[v]).unwrap());
            prop_assert_eq!(prod[v], ej[v].mul(&ek[v]).unwrap());
        }
        let values: Vec<i64> = ej.iter().map(|r| r.value()).collect();
        prop_assert_eq!(basis.decode(&values).unwrap(), j);
    }

    #[test]
    fn hat_map_relations(factors in coprime_set(), x in any::<i32>()) {
        let basis = CrtBasis::new(&factors).unwrap();
        let j = CenteredResidue::new(x as i64, basis.dim()).unwrap();
        let plain = basis.encode(j).unwrap();
        let hat = basis.encode_hat(j).unwrap();
        for (v, &f) in factors.iter().enumerate() {
            prop_assert_eq!((hat[v].value() - plain[v].value() * basis.b()[v]).rem_euclid(f), 0);
            prop_assert_eq!((plain[v].value() - hat[v].value() * basis.a()[v]).rem_euclid(f), 0);
        }
        let values: Vec<i64> = hat.iter().map(|r| r.value()).collect();
        prop_assert_eq!(basis.decode_hat(&values).unwrap(), j);
    }

    #[test]
    fn prime_power_split_is_coprime(k in 1i64..2000) {
        let dim = 2 * k + 1;
        let f = coprime_factors(dim).unwrap();
        prop_assert_eq!(f.iter().product::<i64>(), dim);
        for a in 0..f.len() {
            for b in a + 1..f.len() {
                prop_assert_eq!(gcd(f[a], f[b]), 1);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn radix_matches_direct((d, n) in radix_shape(), seed in any::<u64>()) {
        let plan = Plan::radix(d, n).unwrap();
        let s = random_state(plan.dim(), seed).unwrap();
        let fast = plan.forward(&s).unwrap();
        prop_assert!(fast.distance(&dft_direct(&s)).unwrap() <= 1e-10 * (plan.dim() as f64).sqrt());
        prop_assert!(plan.inverse(&fast).unwrap().distance(&s).unwrap() <= 1e-12);
    }

    #[test]
    fn pfa_matches_direct(factors in coprime_set(), seed in any::<u64>()) {
        let plan = Plan::prime_factor(&factors).unwrap();
        let s = random_state(plan.dim(), seed).unwrap();
        let fast = plan.forward(&s).unwrap();
        prop_assert!(fast.distance(&dft_direct(&s)).unwrap() <= 1e-10 * (plan.dim() as f64).sqrt());
        prop_assert!(plan.inverse(&fast).unwrap().distance(&s).unwrap() <= 1e-12);
    }

    #[test]
    fn transforms_are_linear(factors in coprime_set(), s1 in any::<u64>(), s2 in any::<u64>(), c in -3.0f64..3.0) {
        let plan = Plan::prime_factor(&factors).unwrap();
        let a = random_state(plan.dim(), s1).unwrap();
        let b = random_state(plan.dim(), s2).unwrap();
        let mix = qfft::StateVector::new(
            a.amplitudes().iter().zip(b.amplitudes()).map(|(x, y)| x + y * c).collect(),
        ).unwrap();
        let fa = plan.forward(&a).unwrap();
        let fb = plan.forward(&b).unwrap();
        let fm = plan.forward(&mix).unwrap();
        let err = fm.amplitudes().iter().zip(fa.amplitudes().iter().zip(fb.amplitudes()))
            .map(|(m, (x, y))| (m - (x + y * c)).norm())
            .fold(0.0, f64::max);
        prop_assert!(err <= 1e-12);
    }

    #[test]
    fn phase_space_fast_matches_direct(factors in coprime_set(), seed in any::<u64>()) {
        let plan = Plan::prime_factor(&factors).unwrap();
        let s = random_state(plan.dim(), seed).unwrap();
        let tol = 1e-9 * (plan.dim() as f64).sqrt();
        for kind in [PhaseSpaceKind::Weyl, PhaseSpaceKind::Wigner] {
            let direct = direct_with_stats(kind, &s, &mut OpStats::default()).unwrap();
            let fast = fast_with_stats(kind, &s, &plan, &mut OpStats::default()).unwrap();
            prop_assert!(fast.max_abs_diff(&direct).unwrap() <= tol);
        }
    }

    #[test]
    fn state_csv_round_trip(k in 1usize..60, seed in any::<u64>()) {
        let s = random_state(2 * k + 1, seed).unwrap();
        let mut buf = Vec::new();
        write_state(&mut buf, &s).unwrap();
        prop_assert_eq!(read_state(&buf[..], Some(2 * k + 1)).unwrap(), s);
    }
}

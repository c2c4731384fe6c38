use horadam_core::horadam::{binet_context, binet_eval, generate_window, HoradamParams};
use horadam_core::rings::{adjoin_primitive_root, adjoin_quadratic, Matrix, RingDescriptor, RingElement};
use horadam_core::symalg::{reduced_norm3, regular_det, SymbolAlgebra};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rings() -> Vec<RingDescriptor> {
    let z13 = RingDescriptor::mod_prime(13).unwrap();
    let z5 = RingDescriptor::mod_prime(5).unwrap();
    let gf25 = adjoin_primitive_root(&z5, 3).unwrap().0;
    let q_zeta = adjoin_primitive_root(&RingDescriptor::Rationals, 3).unwrap().0;
    let tower = adjoin_quadratic(&q_zeta, &BigInt::from(5)).unwrap().0;
    let series = RingDescriptor::series(z13.clone(), 6).unwrap();
    vec![RingDescriptor::Integers, RingDescriptor::Rationals, z13, gf25, q_zeta, tower, series]
}

fn sample(ring: &RingDescriptor, rng: &mut ChaCha8Rng) -> RingElement {
    RingElement::new(ring.clone(), ring.sample(rng, 9)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(seed in any::<u64>(), which in 0usize..7) {
        let ring = &rings()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (x, y, z) = (sample(ring, &mut rng), sample(ring, &mut rng), sample(ring, &mut rng));
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&x - &x, RingElement::zero(ring));
        prop_assert_eq!(&x * &RingElement::one(ring), x.clone());
        if ring.is_field() && !x.is_zero() {
            prop_assert!((&x * &x.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn text_round_trip(seed in any::<u64>(), which in 0usize..7) {
        let ring = &rings()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = sample(ring, &mut rng);
        prop_assert_eq!(RingElement::parse(ring, &x.to_string()).unwrap(), x);
    }

    #[test]
    fn rationals_normalize(n in -1000i64..1000, d in 1i64..1000, k in 1i64..50) {
        let q = RingDescriptor::Rationals;
        let a = RingElement::from_rational(&q, &BigRational::new(BigInt::from(n), BigInt::from(d))).unwrap();
        let b = RingElement::from_rational(&q, &BigRational::new(BigInt::from(n * k), BigInt::from(d * k))).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(a.to_string(), b.to_string());
    }

    #[test]
    fn det_is_multiplicative_over_z13(a in prop::collection::vec(0i64..13, 16), b in prop::collection::vec(0i64..13, 16)) {
        let z13 = RingDescriptor::mod_prime(13).unwrap();
        let ma = Matrix::from_i64(z13.clone(), 4, 4, &a).unwrap();
        let mb = Matrix::from_i64(z13.clone(), 4, 4, &b).unwrap();
        let lhs = ma.mul(&mb).unwrap().det().unwrap();
        prop_assert_eq!(lhs, z13.mul(&ma.det().unwrap(), &mb.det().unwrap()));
    }

    #[test]
    fn symbol_algebra_laws(seed in any::<u64>(), a in 1i64..7, b in 1i64..7) {
        let alg = SymbolAlgebra::cyclotomic(&RingDescriptor::mod_prime(7).unwrap(), 3, a, b).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (x, y, z) = (alg.sample(&mut rng, 0), alg.sample(&mut rng, 0), alg.sample(&mut rng, 0));
        prop_assert_eq!(x.mul(&y).unwrap().mul(&z).unwrap(), x.mul(&y.mul(&z).unwrap()).unwrap());
        prop_assert_eq!(x.mul(&y.add(&z).unwrap()).unwrap(), x.mul(&y).unwrap().add(&x.mul(&z).unwrap()).unwrap());
        prop_assert_eq!(x.mul(&alg.one()).unwrap(), x.clone());
        let nx = reduced_norm3(&x).unwrap();
        prop_assert_eq!(regular_det(&x).unwrap(), nx.pow(3));
        prop_assert_eq!(reduced_norm3(&x.mul(&y).unwrap()).unwrap(), &nx * &reduced_norm3(&y).unwrap());
    }

    #[test]
    fn recurrence_and_binet(a0 in -5i64..6, a1 in -5i64..6, p in 1i64..5, q in 1i64..5, k in -6i64..30) {
        let params = HoradamParams::new(a0, a1, p, q).unwrap();
        let win = generate_window(&params, k - 1, k + 1).unwrap();
        let lhs = win.at(k + 1).clone();
        let rhs = win.at(k) * BigRational::from_integer(p.into()) + win.at(k - 1) * BigRational::from_integer(q.into());
        prop_assert_eq!(lhs, rhs);
        let ctx = binet_context(&params).unwrap();
        let b = binet_eval(&ctx, k).unwrap();
        prop_assert_eq!(b, RingElement::from_rational(ctx.ring(), win.at(k)).unwrap());
    }
}

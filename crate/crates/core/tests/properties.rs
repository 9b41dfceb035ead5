use blockforge::blocks::BlockSystem;
use blockforge::linalg::Field;
use blockforge::numtheory::prime_divisors;
use blockforge::{CharacterTable, ClassTable, Cyclotomic, Perm, PermGroup, ReductionContext};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

const ORDERS: [u32; 8] = [1, 3, 4, 5, 6, 7, 8, 12];

fn cyclo(n: u32, coeffs: &[i64]) -> Cyclotomic {
    Cyclotomic::from_terms(
        n,
        coeffs
            .iter()
            .enumerate()
            .map(|(k, &c)| (k as i64, BigRational::from_integer(BigInt::from(c)))),
    )
}

fn arb_cyclo() -> impl Strategy<Value = Cyclotomic> {
    arb_cyclo_in(ORDERS.to_vec())
}

fn arb_cyclo_in(orders: Vec<u32>) -> impl Strategy<Value = Cyclotomic> {
    prop::sample::select(orders).prop_flat_map(|n| {
        prop::collection::vec(-6i64..=6, n as usize).prop_map(move |c| cyclo(n, &c))
    })
}

fn arb_perm(degree: usize) -> impl Strategy<Value = Perm> {
    Just((0..degree).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Perm::from_images(v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reduction_is_a_ring_homomorphism(
        a in arb_cyclo_in(vec![1, 3, 4, 6, 8, 12]),
        b in arb_cyclo_in(vec![1, 3, 4, 6, 8, 12]),
        pi in 0usize..4,
    ) {
        let p = [5u64, 7, 11, 13][pi];
        let ctx = ReductionContext::new(p, 24).unwrap();
        let f = ctx.field();
        let (ra, rb) = (ctx.reduce(&a).unwrap(), ctx.reduce(&b).unwrap());
        prop_assert_eq!(ctx.reduce(&(&a + &b)).unwrap(), f.add(ra, rb));
        prop_assert_eq!(ctx.reduce(&(&a * &b)).unwrap(), f.mul(ra, rb));
        prop_assert_eq!(ctx.reduce(&Cyclotomic::one()).unwrap(), f.one());
    }

    #[test]
    fn change_order_round_trips(a in arb_cyclo(), mult in 1u32..5) {
        let n = a.order();
        let up = a.change_order(n * mult).unwrap();
        prop_assert_eq!(&up, &a);
        prop_assert_eq!(up.change_order(n).unwrap(), a);
    }

    #[test]
    fn integer_combinations_of_roots_are_integral(a in arb_cyclo(), b in arb_cyclo()) {
        prop_assert!(a.is_integral());
        prop_assert!((&a * &b).is_integral());
        prop_assert!(a.complex_conjugate().is_integral());
        let half = Cyclotomic::zeta_power(a.order().max(3), 1).scale(&BigRational::new(1.into(), 2.into()));
        prop_assert!(!half.is_integral());
    }

    #[test]
    fn permutation_group_laws(a in arb_perm(6), b in arb_perm(6), c in arb_perm(6)) {
        prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
        prop_assert!(a.compose(&a.inverse()).is_identity());
        prop_assert_eq!(a.conjugate_by(&b).order(), a.order());
        let g = PermGroup::from_generators(6, vec![a.clone(), b.clone()]).unwrap();
        prop_assert_eq!(720 % g.order(), 0);
        let ct = ClassTable::new(g.clone());
        prop_assert_eq!(ct.classes().iter().map(|c| c.size).sum::<u64>(), g.order());
        for (i, cl) in ct.classes().iter().enumerate() {
            prop_assert_eq!(cl.size * ct.centralizer_order(i), g.order());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_small_groups_satisfy_table_and_block_invariants(a in arb_perm(5), b in arb_perm(5)) {
        let g = PermGroup::from_generators(5, vec![a, b]).unwrap();
        let tbl = CharacterTable::compute(g.clone()).unwrap();
        tbl.validate().unwrap();
        prop_assert_eq!(tbl.degrees().iter().map(|d| d * d).sum::<u64>(), g.order());
        for p in prime_divisors(g.order()) {
            let sys = BlockSystem::new(&tbl, p).unwrap();
            sys.check_idempotents(&tbl).unwrap();
            sys.check_partition(&tbl).unwrap();
            let total: usize = sys.blocks().iter().map(|b| b.size()).sum();
            prop_assert_eq!(total, tbl.len());
            for (i, blk) in sys.blocks().iter().enumerate() {
                prop_assert_eq!(blk.class_set.len(), blk.size());
                sys.defect_group(&tbl, i).unwrap();
            }
        }
    }
}

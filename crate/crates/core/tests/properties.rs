use num_bigint::BigUint;
use proptest::prelude::*;

use ncycle::constructions::{eval_lambda, LambdaSpec, LambdaVariant};
use ncycle::criteria::monomial_ncycle;
use ncycle::{exhaustive_verdict, make_field, Elem, FieldCtx, PermMap, SparsePoly};

const FIELDS: &[(u32, u32)] = &[(2, 1), (2, 4), (2, 6), (3, 2), (3, 3), (5, 2), (7, 1), (7, 2), (11, 1)];

fn field_strategy() -> impl Strategy<Value = FieldCtx> {
    prop::sample::select(FIELDS).prop_map(|(p, n)| make_field(p, n, None).unwrap())
}

fn elem(ctx: &FieldCtx, raw: u64) -> Elem {
    Elem((raw % ctx.order()) as u32)
}

/// A field together with a random permutation table of it.
fn perm_strategy() -> impl Strategy<Value = (FieldCtx, Vec<u32>)> {
    field_strategy().prop_flat_map(|ctx| {
        let table: Vec<u32> = (0..ctx.size() as u32).collect();
        (Just(ctx), Just(table).prop_shuffle())
    })
}

proptest! {
    #[test]
    fn field_axioms(ctx in field_strategy(), a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let (a, b, c) = (elem(&ctx, a), elem(&ctx, b), elem(&ctx, c));
        prop_assert_eq!(ctx.mul(a, ctx.add(b, c)), ctx.add(ctx.mul(a, b), ctx.mul(a, c)));
        prop_assert_eq!(ctx.add(ctx.sub(a, b), b), a);
        if !a.is_zero() {
            prop_assert_eq!(ctx.mul(a, ctx.inv(a).unwrap()), Elem::ONE);
        }
        prop_assert_eq!(ctx.pow(a, ctx.order()), a);
    }

    #[test]
    fn trace_is_additive_and_lands_in_the_prime_field(ctx in field_strategy(), a in any::<u64>(), b in any::<u64>()) {
        let (a, b) = (elem(&ctx, a), elem(&ctx, b));
        let tr = |x| ctx.trace(x, 1).unwrap();
        prop_assert_eq!(tr(ctx.add(a, b)), ctx.add(tr(a), tr(b)));
        prop_assert!(ctx.in_subfield(tr(a), 1).unwrap());
    }

    #[test]
    fn order_annihilates_and_powers_compose((ctx, table) in perm_strategy(), a in 0i64..20, b in 0i64..20) {
        let f = PermMap::from_table(&ctx, table).unwrap();
        let report = f.cycle_structure();
        let order = u64::try_from(&report.order).unwrap() as i64;
        prop_assert!(f.functional_power(order).is_identity());
        prop_assert_eq!(f.functional_power(a).compose(&f.functional_power(b)).unwrap(), f.functional_power(a + b));
        prop_assert!(f.invert().compose(&f).unwrap().is_identity());
        prop_assert_eq!(f.functional_power(-1), f.invert());
        let moved: u64 = report.cycle_type.iter().map(|(len, count)| len * count).sum();
        prop_assert_eq!(moved, ctx.order());
    }

    #[test]
    fn oracle_matches_cycle_structure((ctx, table) in perm_strategy(), n in 1u64..13) {
        let f = PermMap::from_table(&ctx, table).unwrap();
        let v = exhaustive_verdict(&ctx, &f, &[n]).unwrap();
        let order = f.cycle_structure().order;
        prop_assert!(v.bijective);
        prop_assert_eq!(v.order.as_ref(), Some(&order));
        prop_assert_eq!(v.is_ncycle_at[&n], (BigUint::from(n) % &order) == BigUint::from(0u32));
        prop_assert_eq!(v.is_ncycle_at[&n], f.is_ncycle(n));
    }

    #[test]
    fn monomial_lemma_matches_exhaustion(ctx in field_strategy(), d in 1u64..1000, n in 1u64..8) {
        let qm1 = ctx.order() - 1;
        let f = SparsePoly::monomial(&ctx, Elem::ONE, d);
        match monomial_ncycle(&BigUint::from(d), qm1, n) {
            Ok(holds) => {
                let perm = PermMap::from_fn(&ctx, &f).unwrap();
                prop_assert_eq!(holds, perm.is_ncycle(n));
            }
            Err(_) => prop_assert!(PermMap::from_fn(&ctx, &f).is_err() || qm1 == 1),
        }
    }

    #[test]
    fn lambda1_scales_by_subfield_powers(
        (p, sd, m) in prop::sample::select(&[(2u32, 1u32, 4u32), (2, 2, 3), (3, 1, 3), (5, 1, 2), (7, 1, 2)][..]),
        n in 1u32..5,
        a in any::<u64>(),
        x in any::<u64>(),
    ) {
        let ctx = make_field(p, sd * m, None).unwrap();
        let spec = LambdaSpec::new(LambdaVariant::Lambda1, n, sd);
        let sub = ctx.subfield_members(sd).unwrap();
        let a = sub[(a % sub.len() as u64) as usize];
        let x = elem(&ctx, x);
        let lhs = eval_lambda(&ctx, &spec, ctx.mul(a, x)).unwrap();
        let rhs = ctx.mul(ctx.pow(a, n as u64), eval_lambda(&ctx, &spec, x).unwrap());
        prop_assert_eq!(lhs, rhs);
        prop_assert!(ctx.in_subfield(eval_lambda(&ctx, &spec, x).unwrap(), sd).unwrap());
    }

    #[test]
    fn poly_display_round_trips(ctx in field_strategy(), terms in prop::collection::vec((any::<u64>(), 0u64..200), 0..6)) {
        let f = SparsePoly::new(&ctx, terms.iter().map(|&(c, e)| (elem(&ctx, c), BigUint::from(e))));
        let g = SparsePoly::parse(&ctx, &f.to_string(), None).unwrap();
        for x in ctx.elements() {
            prop_assert_eq!(f.eval(&ctx, x).unwrap(), g.eval(&ctx, x).unwrap());
        }
    }
}

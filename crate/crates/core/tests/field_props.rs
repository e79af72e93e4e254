mod common;

use proptest::prelude::*;
use unitquad::field::{ArithOp, FieldCtx, FieldElement};

use common::odd_prime_powers;

fn field_and_elements() -> impl Strategy<Value = (FieldCtx, u32, u32, u32)> {
    prop::sample::select(vec![
        (3u64, 1u32),
        (5, 1),
        (7, 1),
        (3, 2),
        (5, 2),
        (3, 3),
        (7, 2),
        (3, 4),
        (11, 2),
    ])
    .prop_flat_map(|(p, n)| {
        let ctx = FieldCtx::new(p, n).unwrap();
        let q = ctx.order();
        (Just(ctx), 0..q, 0..q, 0..q)
    })
}

proptest! {
    #[test]
    fn field_axioms((ctx, a, b, c) in field_and_elements()) {
        let (a, b, c) = (ctx.element(a as u64).unwrap(), ctx.element(b as u64).unwrap(), ctx.element(c as u64).unwrap());
        prop_assert_eq!(ctx.add(a, b), ctx.add(b, a));
        prop_assert_eq!(ctx.mul(a, b), ctx.mul(b, a));
        prop_assert_eq!(ctx.mul(ctx.mul(a, b), c), ctx.mul(a, ctx.mul(b, c)));
        prop_assert_eq!(ctx.add(ctx.add(a, b), c), ctx.add(a, ctx.add(b, c)));
        prop_assert_eq!(ctx.mul(a, ctx.add(b, c)), ctx.add(ctx.mul(a, b), ctx.mul(a, c)));
        prop_assert_eq!(ctx.add(ctx.sub(a, b), b), a);
        prop_assert_eq!(ctx.arith(ArithOp::Add, a, ctx.neg(a)).unwrap(), FieldElement::ZERO);
        if !a.is_zero() {
            prop_assert_eq!(ctx.mul(a, ctx.inv(a).unwrap()), FieldElement::ONE);
        }
    }

    #[test]
    fn trace_is_additive((ctx, a, b, _c) in field_and_elements()) {
        let (a, b) = (ctx.element(a as u64).unwrap(), ctx.element(b as u64).unwrap());
        prop_assert_eq!(ctx.abs_trace(ctx.add(a, b)), (ctx.abs_trace(a) + ctx.abs_trace(b)) % ctx.p());
    }

    #[test]
    fn square_roots_square_back((ctx, a, _b, _c) in field_and_elements()) {
        let a = ctx.element(a as u64).unwrap();
        let s = ctx.square(a);
        let roots = ctx.square_roots(s);
        prop_assert!(roots.contains(&a));
        prop_assert_eq!(roots.len(), if a.is_zero() { 1 } else { 2 });
    }
}

#[test]
fn character_sums_to_zero() {
    for q in odd_prime_powers(3, 81) {
        let ctx = FieldCtx::from_order(q).unwrap();
        let sum: i64 = ctx
            .elements()
            .map(|x| ctx.quadratic_character(x) as i64)
            .sum();
        assert_eq!(sum, 0, "q={q}");
    }
}

#[test]
fn character_is_multiplicative() {
    for q in odd_prime_powers(3, 49) {
        let ctx = FieldCtx::from_order(q).unwrap();
        let chi: Vec<i8> = ctx.elements().map(|x| ctx.quadratic_character(x)).collect();
        for x in ctx.elements().skip(1) {
            for y in ctx.elements().skip(1) {
                let xy = ctx.mul(x, y);
                assert_eq!(
                    chi[xy.code() as usize],
                    chi[x.code() as usize] * chi[y.code() as usize],
                    "q={q} x={x} y={y}"
                );
            }
        }
    }
}

#[test]
fn half_of_nonzero_elements_are_squares() {
    for q in odd_prime_powers(3, 81) {
        let ctx = FieldCtx::from_order(q).unwrap();
        let mut squares: Vec<u32> = ctx
            .elements()
            .skip(1)
            .map(|x| ctx.square(x).code())
            .collect();
        squares.sort_unstable();
        squares.dedup();
        assert_eq!(squares.len() as u64, (q - 1) / 2);
        let by_char = ctx
            .elements()
            .filter(|&x| ctx.quadratic_character(x) == 1)
            .count();
        assert_eq!(by_char as u64, (q - 1) / 2);
    }
}

#[test]
fn trace_is_linear_and_surjective() {
    for q in odd_prime_powers(3, 81) {
        let ctx = FieldCtx::from_order(q).unwrap();
        let p = ctx.p();
        let tr: Vec<u32> = ctx.elements().map(|x| ctx.abs_trace(x)).collect();
        let mut fibre = vec![0u32; p as usize];
        for x in ctx.elements() {
            fibre[tr[x.code() as usize] as usize] += 1;
            for y in ctx.elements() {
                assert_eq!(
                    tr[ctx.add(x, y).code() as usize],
                    (tr[x.code() as usize] + tr[y.code() as usize]) % p
                );
            }
            for k in 0..p {
                let kx = ctx.mul(ctx.from_int(k as i64), x);
                assert_eq!(tr[kx.code() as usize], k * tr[x.code() as usize] % p);
            }
        }
        // every fibre of a surjective F_p-linear map has q/p elements
        assert!(
            fibre.iter().all(|&f| f == ctx.order() / p),
            "q={q}: {fibre:?}"
        );
    }
}

#[test]
fn moduli_are_deterministic() {
    for q in odd_prime_powers(3, 81) {
        assert_eq!(
            FieldCtx::from_order(q).unwrap(),
            FieldCtx::from_order(q).unwrap()
        );
    }
}

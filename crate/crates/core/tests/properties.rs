use proptest::prelude::*;

use kappa::algebra::{Block, Ctx, GaussRat, Poly, Rat};
use kappa::frontend::expr::{parse, parse_poly};
use kappa::realizations::catalog;
use kappa::star::StarProduct;

const DIM: usize = 2;
const ORDER: usize = 3;

fn ctx() -> Ctx {
    Ctx::new(DIM, ORDER).unwrap()
}

fn coeff() -> impl Strategy<Value = GaussRat> {
    (-4i64..=4, 1i64..=3, -2i64..=2).prop_map(|(n, d, im)| GaussRat::new(Rat::new(n, d), Rat::int(im)))
}

// exponents for a0 a1 x0 x1 d0 d1
fn term() -> impl Strategy<Value = (GaussRat, [u32; 6])> {
    (coeff(), prop::array::uniform6(0u32..=2))
}

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(term(), 0..5).prop_map(|terms| {
        let ctx = ctx();
        let blocks = [Block::A, Block::A, Block::X, Block::X, Block::D, Block::D];
        terms.into_iter().fold(Poly::zero(ctx), |acc, (c, es)| {
            let m = es.iter().enumerate().fold(Poly::constant(ctx, c), |m, (j, &e)| {
                &m * &Poly::var(ctx, blocks[j], j % 2).pow(e)
            });
            &acc + &m
        })
    })
}

fn x_poly() -> impl Strategy<Value = Poly> {
    poly().prop_map(|p| p.zero_block(Block::D).zero_block(Block::A))
}

proptest! {
    #[test]
    fn ring_axioms(p in poly(), q in poly(), r in poly()) {
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert!((&p - &p).is_zero());
        prop_assert_eq!(&p * &Poly::one(ctx()), p.clone());
    }

    #[test]
    fn truncation_is_a_ring_map(p in poly(), q in poly()) {
        let lo = ctx().with_order(1);
        prop_assert_eq!((&p * &q).with_order(1), &p.with_order(1) * &q.with_order(1));
        prop_assert_eq!(p.with_order(1).ctx(), lo);
    }

    #[test]
    fn derivative_is_a_derivation(p in poly(), q in poly(), v in 0usize..2) {
        let x = Block::X.var(v);
        prop_assert_eq!((&p * &q).derivative(x), &(&p.derivative(x) * &q) + &(&p * &q.derivative(x)));
    }

    #[test]
    fn print_parse_round_trip(p in poly()) {
        let printed = p.to_string();
        let back = parse_poly(ctx(), &printed).unwrap();
        prop_assert_eq!(back.to_string(), printed);
        prop_assert_eq!(back, p);
    }

    #[test]
    fn parser_never_panics(s in "[-+*/^()., 0-9aixdkqvtwep]{0,40}") {
        let _ = parse(&s);
        let _ = parse_poly(ctx(), &s);
    }

    #[test]
    fn star_with_one_and_zero_a(f in x_poly(), g in x_poly()) {
        let sp = StarProduct::new(&catalog("natural", ctx()).unwrap());
        let one = Poly::one(ctx());
        prop_assert_eq!(sp.star(&f, &one), f.clone());
        prop_assert_eq!(sp.star(&one, &f), f.clone());
        prop_assert_eq!(sp.star(&f, &g).zero_block(Block::A), &f * &g);
    }
}

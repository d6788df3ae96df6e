//! Randomized invariants: grammar round-trips, the module axiom, descent
//! soundness across central characters, and straightening confluence.

use num::traits::Zero;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use hv_core::algebra::{bracket_gen, generators_up_to, Generator};
use hv_core::expr::{format_uea, format_vector, parse_element};
use hv_core::modules::{
    act, act_lie, act_uea, basis_enumerate, defect, make_psi, BasisIndex, CentralCharacter,
    ModuleSpec, ModuleVector,
};
use hv_core::partitions::{stats, Partition, Pseudopartition};
use hv_core::rational::{rat, ratio, Rational};
use hv_core::solver::descend;
use hv_core::uea::{multiply, normal_form, normal_form_with, Strategy as PairChoice, UEAElement, Word};

fn arb_generator(max_index: i64) -> impl Strategy<Value = Generator> {
    prop_oneof![
        (-max_index..=max_index).prop_map(Generator::L),
        (-max_index..=max_index).prop_map(Generator::I),
        (1u8..=3).prop_map(Generator::Z),
    ]
}

fn arb_rational() -> impl Strategy<Value = Rational> {
    ((-20i64..=20).prop_filter("nonzero", |n| *n != 0), 1i64..=6)
        .prop_map(|(n, d)| ratio(n, d))
}

fn arb_word() -> impl Strategy<Value = Word> {
    prop::collection::vec(arb_generator(4), 0..5).prop_map(Word)
}

fn arb_index() -> impl Strategy<Value = BasisIndex> {
    (
        prop::collection::vec(0u32..=3, 0..4),
        prop::collection::vec(1u32..=3, 0..3),
        prop::collection::vec(0u32..=2, 4),
    )
        .prop_map(|(lam, mu, t)| BasisIndex {
            t: [t[0], t[1], t[2], t[3]],
            lambda: Pseudopartition::from_parts(&lam),
            mu: Partition::from_parts(&mu),
        })
}

fn universal() -> ModuleSpec {
    ModuleSpec::universal(make_psi(rat(2), rat(3), rat(5))).unwrap()
}

fn arb_vector() -> impl Strategy<Value = ModuleVector> {
    prop::collection::vec((arb_index(), arb_rational()), 0..4).prop_map(|terms| {
        let mut v = ModuleVector::zero(universal());
        for (idx, c) in terms {
            v.add_term(idx, c);
        }
        v
    })
}

proptest! {
    #[test]
    fn vector_formatting_round_trips(v in arb_vector()) {
        let spec = universal();
        let printed = format_vector(&v);
        let back = parse_element(&printed, Some(&spec))
            .unwrap()
            .into_vector(&spec)
            .unwrap();
        prop_assert_eq!(back, v);
    }

    #[test]
    fn uea_formatting_round_trips(w in arb_word()) {
        let u = normal_form(&w);
        let printed = format_uea(&u);
        let back = parse_element(&printed, None).unwrap().to_uea().unwrap();
        prop_assert_eq!(back, u);
    }

    #[test]
    fn straightening_is_confluent(w in arb_word()) {
        prop_assert_eq!(
            normal_form_with(&w, PairChoice::LeftmostFirst),
            normal_form_with(&w, PairChoice::RightmostFirst)
        );
    }

    #[test]
    fn stats_are_additive(a in prop::collection::vec(0u32..=5, 0..6),
                          b in prop::collection::vec(0u32..=5, 0..6)) {
        let pa = Pseudopartition::from_parts(&a);
        let pb = Pseudopartition::from_parts(&b);
        let joined = pa.concat(&pb);
        prop_assert_eq!(stats(&joined).size, stats(&pa).size + stats(&pb).size);
        prop_assert_eq!(stats(&joined).parts, stats(&pa).parts + stats(&pb).parts);
    }

    #[test]
    fn act_uea_is_multiplicative(wa in arb_word(), wb in arb_word(), idx in arb_index()) {
        let spec = universal();
        let v = ModuleVector::basis(spec.clone(), idx);
        let a = normal_form(&wa);
        let b = normal_form(&wb);
        let lhs = act_uea(&multiply(&a, &b), &v);
        let rhs = act_uea(&a, &act_uea(&b, &v));
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn module_axiom_on_random_vectors() {
    // act(g, act(h, v)) - act(h, act(g, v)) = act([g, h], v) for generator
    // pairs with |index| <= 4 and 50 random vectors of degree <= 3
    let spec = universal();
    let basis = basis_enumerate(&spec, 3, 2, 1);
    let mut rng = StdRng::seed_from_u64(0xa51);
    let mut vectors = Vec::new();
    for _ in 0..50 {
        let mut v = ModuleVector::zero(spec.clone());
        for _ in 0..rng.gen_range(1..=3) {
            let idx = basis[rng.gen_range(0..basis.len())].clone();
            let n = loop {
                let n = rng.gen_range(-9i64..=9);
                if n != 0 {
                    break n;
                }
            };
            v.add_term(idx, ratio(n, rng.gen_range(1i64..=4)));
        }
        vectors.push(v);
    }
    let gens = generators_up_to(4);
    for _ in 0..60 {
        let g = gens[rng.gen_range(0..gens.len())];
        let h = gens[rng.gen_range(0..gens.len())];
        let v = &vectors[rng.gen_range(0..vectors.len())];
        let lhs = &act(g, &act(h, v)) - &act(h, &act(g, v));
        let rhs = act_lie(&bracket_gen(g, h), v);
        assert_eq!(lhs, rhs, "module axiom fails at ({g}, {h})");
    }
}

#[test]
fn descent_reaches_the_cyclic_vector_across_characters() {
    let mut rng = StdRng::seed_from_u64(1729);
    let xis: [[i64; 4]; 4] = [[1, 1, 1, 1], [0, 0, 0, 0], [7, 0, 0, 0], [-3, 2, 0, 5]];
    let psis = [
        (rat(2), rat(3), rat(5)),
        (rat(0), rat(0), rat(5)),
        (rat(1), rat(0), ratio(-7, 3)),
    ];
    for (l1, l2, i1) in psis {
        for xi in xis {
            let psi = make_psi(l1.clone(), l2.clone(), i1.clone());
            let spec =
                ModuleSpec::reduced(psi, CentralCharacter::new(xi.map(rat))).unwrap();
            let basis = basis_enumerate(&spec, 4, 4, 0);
            for _ in 0..10 {
                let mut v = ModuleVector::zero(spec.clone());
                for _ in 0..rng.gen_range(1..=5) {
                    let idx = basis[rng.gen_range(0..basis.len())].clone();
                    let n = loop {
                        let n = rng.gen_range(-9i64..=9);
                        if n != 0 {
                            break n;
                        }
                    };
                    v.add_term(idx, ratio(n, rng.gen_range(1i64..=4)));
                }
                if v.is_zero() {
                    continue;
                }
                let (trace, scalar) = descend(&v).unwrap_or_else(|e| {
                    panic!("descent stuck for xi={xi:?}: {e}")
                });
                assert!(!scalar.is_zero());
                let mut replay = v.clone();
                for &op in trace.iter() {
                    replay = defect(op, &replay);
                }
                assert_eq!(replay.as_cyclic_multiple(), Some(scalar));
            }
        }
    }
}

#[test]
fn uea_scalars_act_as_scalars() {
    let spec = universal();
    let v = ModuleVector::basis(
        spec,
        BasisIndex {
            lambda: Pseudopartition::from_parts(&[0, 2]),
            ..BasisIndex::default()
        },
    );
    let u = UEAElement::scalar(ratio(-3, 7));
    assert_eq!(act_uea(&u, &v), v.scaled(&ratio(-3, 7)));
}

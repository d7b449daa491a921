//! Property suite for the group calculus: closure of compose/invert,
//! functoriality of the piecewise-linear realization, the group axioms in
//! canonical PL form, the slope law, the pattern-of-squares conditions,
//! the refinement tree discipline, and the reduction to the classical
//! Thompson groups at integer bases.

mod common;

use betafull::{
    commutator, compose, random_table, BetaContext, BetaTable, MarkedWord, PlFunction,
};
use common::{ctx, sofic_example_specs, Rng};
use num_rational::BigRational;

fn rational(c: &BetaContext, num: i64, den: i64) -> betafull::BetaNumber {
    c.from_rat(BigRational::new(num.into(), den.into()))
}

#[test]
fn closure_under_compose_and_invert_500_pairs_per_context() {
    for spec in sofic_example_specs() {
        let c = ctx(spec);
        let mut rng = Rng::new(0xC105);
        for round in 0..500u64 {
            let t1 = random_table(&c, rng.next_u64(), 2 + (round % 4) as usize).unwrap();
            let t2 = random_table(&c, rng.next_u64(), 2 + (round % 3) as usize).unwrap();
            let composed = compose(&t1, &t2).unwrap();
            composed.validate().unwrap();
            t1.invert().validate().unwrap();
        }
    }
}

#[test]
fn composition_cancels_against_inverses() {
    for spec in sofic_example_specs() {
        let c = ctx(spec);
        let mut rng = Rng::new(0xCA9CE1);
        for _ in 0..25u64 {
            let t1 = random_table(&c, rng.next_u64(), 3).unwrap();
            let t2 = random_table(&c, rng.next_u64(), 3).unwrap();
            let composed = compose(&t1, &t2).unwrap();
            let back = compose(&composed, &t2.invert()).unwrap();
            assert_eq!(
                back.to_pl(),
                t1.to_pl(),
                "{spec}: (t1 t2) t2^-1 != t1 in canonical form"
            );
        }
    }
}

#[test]
fn realization_is_functorial_200_pairs() {
    for spec in sofic_example_specs() {
        let c = ctx(spec);
        let mut rng = Rng::new(0xF0C7);
        for _ in 0..50 {
            let t1 = random_table(&c, rng.next_u64(), 3).unwrap();
            let t2 = random_table(&c, rng.next_u64(), 3).unwrap();
            let lhs = compose(&t1, &t2).unwrap().to_pl();
            let rhs = t1.to_pl().compose(&t2.to_pl()).unwrap();
            assert_eq!(lhs, rhs, "{spec}: table and PL composition disagree");
        }
    }
}

#[test]
fn group_axioms_in_canonical_form() {
    for spec in sofic_example_specs() {
        let c = ctx(spec);
        let id = PlFunction::identity(&c);
        let mut rng = Rng::new(0xA47);
        for _ in 0..25 {
            let f = random_table(&c, rng.next_u64(), 3).unwrap().to_pl();
            let g = random_table(&c, rng.next_u64(), 3).unwrap().to_pl();
            let h = random_table(&c, rng.next_u64(), 2).unwrap().to_pl();
            // Associativity, identity, and inverse laws, all exact.
            assert_eq!(
                f.compose(&g).unwrap().compose(&h).unwrap(),
                f.compose(&g.compose(&h).unwrap()).unwrap(),
                "{spec}: associativity failed"
            );
            assert_eq!(f.compose(&id).unwrap(), f);
            assert_eq!(id.compose(&f).unwrap(), f);
            assert!(f.compose(&f.invert()).unwrap().is_identity());
            assert!(f.invert().compose(&f).unwrap().is_identity());
        }
    }
}

#[test]
fn slope_law_and_pattern_of_squares() {
    for spec in sofic_example_specs() {
        let c = ctx(spec);
        let mut rng = Rng::new(0x510);
        for _ in 0..20 {
            let t = random_table(&c, rng.next_u64(), 4).unwrap();
            // Row level: image width / domain width = beta^(|bottom|-|top|).
            for row in t.rows() {
                let dw = &row.bottom.r().clone() - row.bottom.l();
                let iw = &row.top.r().clone() - row.top.l();
                let expected = c.beta_pow(
                    row.bottom.word().len() as i64 - row.top.word().len() as i64,
                );
                assert_eq!(iw.div(&dw).unwrap(), expected, "{spec}: slope law failed");
            }
            // Canonical PL level: domains chain across [0, 1), images tile
            // [0, 1), and each (domain, image) pair scales by beta^k.
            let f = t.to_pl();
            let mut cursor = c.zero();
            let mut images = Vec::new();
            for s in f.segments() {
                assert_eq!(s.x0, cursor, "{spec}: domain gap");
                let width = &s.x1 - &s.x0;
                let image_end = s.image_end(&c);
                let iw = &image_end - &s.y0;
                assert_eq!(
                    iw.div(&width).unwrap(),
                    c.beta_pow(s.slope_exp),
                    "{spec}: rectangle is not beta-adic"
                );
                images.push((s.y0.clone(), image_end));
                cursor = s.x1.clone();
            }
            assert_eq!(cursor, c.one());
            images.sort_by(|a, b| a.0.cmp(&b.0));
            let mut cursor = c.zero();
            for (lo, hi) in images {
                assert_eq!(lo, cursor, "{spec}: image gap");
                cursor = hi;
            }
            assert_eq!(cursor, c.one());
        }
    }
}

#[test]
fn commutators_are_realized_consistently() {
    for spec in sofic_example_specs() {
        let c = ctx(spec);
        let mut rng = Rng::new(0xC0);
        for _ in 0..10 {
            let t1 = random_table(&c, rng.next_u64(), 3).unwrap();
            let t2 = random_table(&c, rng.next_u64(), 3).unwrap();
            let direct = commutator(&t1, &t2).unwrap().to_pl();
            let (f, g) = (t1.to_pl(), t2.to_pl());
            let via_pl = f
                .compose(&g)
                .unwrap()
                .compose(&f.invert())
                .unwrap()
                .compose(&g.invert())
                .unwrap();
            assert_eq!(direct, via_pl, "{spec}: commutator mismatch");
            assert!(commutator(&t1, &t1).unwrap().to_pl().is_identity());
        }
    }
}

/// Marked words form a tree: refinement children tile the parent, and any
/// two cells of the full depth-4 forest are nested or disjoint.
#[test]
fn refinement_forest_discipline() {
    for spec in sofic_example_specs() {
        let c = ctx(spec);
        let sys = c.sofic_system().unwrap();
        let mut layer: Vec<MarkedWord> = (1..=sys.dimension())
            .map(|i| MarkedWord::new(c.empty_word(), i).unwrap())
            .collect();
        let mut forest = layer.clone();
        for _ in 0..4 {
            let mut next = Vec::new();
            for cell in &layer {
                let children = cell.refine();
                let mut cursor = cell.l().clone();
                for child in &children {
                    assert_eq!(child.l(), &cursor, "{spec}: child gap under {cell}");
                    cursor = child.r().clone();
                }
                assert_eq!(&cursor, cell.r(), "{spec}: children under-tile {cell}");
                next.extend(children);
            }
            forest.extend(next.iter().cloned());
            layer = next;
        }
        for (i, a) in forest.iter().enumerate() {
            for b in forest.iter().skip(i + 1) {
                let disjoint = a.r() <= b.l() || b.r() <= a.l();
                let a_in_b = b.l() <= a.l() && a.r() <= b.r();
                let b_in_a = a.l() <= b.l() && b.r() <= a.r();
                assert!(
                    disjoint || a_in_b || b_in_a,
                    "{spec}: cells {a} and {b} overlap improperly"
                );
            }
        }
    }
}

/// At integer bases the marks are trivial and the calculus is the
/// classical one: the half-swap and the standard V_2 generator act as the
/// known dyadic maps.
#[test]
fn thompson_reduction_at_integer_bases() {
    let c = ctx("digits=2");
    let sys = c.sofic_system().unwrap();
    assert_eq!(sys.dimension(), 1);

    let marked = |w: &str| MarkedWord::new(c.word_from_str(w).unwrap(), 1).unwrap();
    let row = |top: &str, bottom: &str| betafull::TableRow {
        top: marked(top),
        bottom: marked(bottom),
    };
    let swap = BetaTable::try_new(c.clone(), vec![row("1", "0"), row("0", "1")]).unwrap();
    let f = swap.to_pl();
    for (x, expected) in [
        ((0, 1), (1, 2)),
        ((1, 4), (3, 4)),
        ((1, 2), (0, 1)),
        ((3, 4), (1, 4)),
    ] {
        assert_eq!(
            f.eval(&rational(&c, x.0, x.1)).unwrap(),
            rational(&c, expected.0, expected.1)
        );
    }
    assert!(f.compose(&f).unwrap().is_identity());

    // x_0 of Thompson's group: 00->0, 01->10, 1->11.
    let a = BetaTable::try_new(
        c.clone(),
        vec![row("0", "0,0"), row("1,0", "0,1"), row("1,1", "1")],
    )
    .unwrap();
    let f = a.to_pl();
    for (x, expected) in [
        ((0, 1), (0, 1)),
        ((1, 8), (1, 4)),
        ((1, 4), (1, 2)),
        ((3, 8), (5, 8)),
        ((1, 2), (3, 4)),
        ((3, 4), (7, 8)),
    ] {
        assert_eq!(
            f.eval(&rational(&c, x.0, x.1)).unwrap(),
            rational(&c, expected.0, expected.1),
            "generator value at {}/{}",
            x.0,
            x.1
        );
    }

    // Dyadic breakpoints for 100 seeded random elements.
    let mut rng = Rng::new(44);
    for _ in 0..100 {
        let t = random_table(&c, rng.next_u64(), 4).unwrap();
        for s in t.to_pl().segments() {
            for v in [&s.x0, &s.x1, &s.y0] {
                let r = v.as_rational().expect("integer base values are rational");
                let den = r.denom();
                assert_eq!(
                    den & (den - 1u8),
                    0u8.into(),
                    "breakpoint denominator {den} is not a power of two"
                );
            }
        }
    }
}

/// A four-atom presentation over a reducible characteristic polynomial:
/// the calculus must behave identically there.
#[test]
fn four_atom_reducible_context_calculus() {
    let c = ctx("digits=3,3,0,(2)");
    let sys = c.sofic_system().unwrap();
    assert_eq!(sys.dimension(), 4);
    let id = betafull::BetaTable::identity(&c).unwrap();
    assert!(id.to_pl().is_identity());
    let mut rng = Rng::new(0xABCD);
    for _ in 0..20 {
        let t1 = random_table(&c, rng.next_u64(), 5).unwrap();
        let t2 = random_table(&c, rng.next_u64(), 4).unwrap();
        t1.validate().unwrap();
        let composed = compose(&t1, &t2).unwrap();
        composed.validate().unwrap();
        assert_eq!(composed.to_pl(), t1.to_pl().compose(&t2.to_pl()).unwrap());
        assert!(compose(&t1, &t1.invert()).unwrap().to_pl().is_identity());
    }
}

#[test]
fn pl_json_round_trips_byte_identically() {
    for spec in sofic_example_specs() {
        let c = ctx(spec);
        let t = random_table(&c, 99, 4).unwrap();
        let table_json = t.to_json_string();
        let reparsed = BetaTable::from_json_str(&table_json).unwrap();
        assert_eq!(reparsed.to_json_string(), table_json);
        assert_eq!(reparsed.to_pl(), t.to_pl());
    }
}

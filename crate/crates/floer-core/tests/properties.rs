use floer_core::arc_engine::{braid_diagram, build_cell_complex, minimal_position, Mode};
use floer_core::braid_core::{closure_component_count, markov_stabilize, parse_braid, print_braid, BraidWord};
use floer_core::domain_counter::{Domain, DomainContext};
use floer_core::floer_complex::{domain_weights, enumerate_generators};
use floer_core::ring::{Monomial, RingElement};
use floer_core::Quarters;
use proptest::prelude::*;

fn braid(max_strands: usize, max_len: usize) -> impl Strategy<Value = BraidWord> {
    (2..=max_strands).prop_flat_map(move |k| {
        let letter = (1..k as i32, any::<bool>()).prop_map(|(i, neg)| if neg { -i } else { i });
        prop::collection::vec(letter, 0..=max_len).prop_map(move |l| BraidWord::new(k, l).unwrap())
    })
}

fn mode() -> impl Strategy<Value = Mode> {
    prop_oneof![Just(Mode::Capped), Just(Mode::HalfArc)]
}

fn cycles(k: usize, letters: &[i32]) -> usize {
    let mut p: Vec<usize> = (0..k).collect();
    for &l in letters {
        let i = l.unsigned_abs() as usize;
        p.swap(i - 1, i);
    }
    let mut seen = vec![false; k];
    (0..k)
        .filter(|&s| {
            let fresh = !seen[s];
            let mut t = s;
            while !seen[t] {
                seen[t] = true;
                t = p[t];
            }
            fresh
        })
        .count()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn print_then_parse_is_identity(b in braid(5, 12)) {
        prop_assert_eq!(parse_braid(&print_braid(&b), b.strands).unwrap(), b);
    }

    #[test]
    fn components_ignore_signs(b in braid(5, 12), flips in prop::collection::vec(any::<bool>(), 12)) {
        let flipped: Vec<i32> = b.letters.iter().zip(&flips).map(|(&l, &f)| if f { -l } else { l }).collect();
        let c = BraidWord::new(b.strands, flipped).unwrap();
        prop_assert_eq!(closure_component_count(&b), cycles(b.strands, &b.letters));
        prop_assert_eq!(closure_component_count(&c), closure_component_count(&b));
    }

    #[test]
    fn stabilization_keeps_components(b in braid(4, 10), sign in prop_oneof![Just(1), Just(-1)]) {
        let s = markov_stabilize(&b, sign);
        prop_assert_eq!(s.strands, b.strands + 1);
        prop_assert_eq!(closure_component_count(&s), closure_component_count(&b));
    }

    #[test]
    fn minimal_position_is_idempotent(b in braid(3, 6), m in mode()) {
        let d = braid_diagram(m, &b).unwrap();
        prop_assert_eq!(minimal_position(&d).unwrap(), d);
    }

    #[test]
    fn compiled_disk_has_euler_characteristic_one(b in braid(3, 6), m in mode()) {
        let cx = build_cell_complex(&braid_diagram(m, &b).unwrap()).unwrap();
        prop_assert_eq!(cx.euler_characteristic(), 1);
    }

    #[test]
    fn euler_measure_is_additive(b in braid(3, 5), m in mode(), seed in any::<u64>()) {
        let cx = build_cell_complex(&braid_diagram(m, &b).unwrap()).unwrap();
        let ctx = DomainContext::new(&cx);
        let n = cx.face_count();
        let w1: Vec<i64> = (0..n).map(|i| ((seed >> (i % 60)) & 3) as i64 - 1).collect();
        let w2: Vec<i64> = (0..n).map(|i| ((seed.rotate_left(17) >> (i % 60)) & 3) as i64 - 1).collect();
        let sum: Vec<i64> = w1.iter().zip(&w2).map(|(a, b)| a + b).collect();
        prop_assert_eq!(ctx.euler_measure(&sum), ctx.euler_measure(&w1) + ctx.euler_measure(&w2));
        prop_assert_eq!(ctx.shape_index(&sum), ctx.shape_index(&w1) + ctx.shape_index(&w2));
    }

    /// Index adds along composable domains, so gradings are well defined.
    #[test]
    fn index_is_additive_under_concatenation(b in braid(3, 5), m in mode(), picks in (0usize..1000, 0usize..1000, 0usize..1000)) {
        let cx = build_cell_complex(&braid_diagram(m, &b).unwrap()).unwrap();
        let ctx = DomainContext::new(&cx);
        let g = enumerate_generators(&cx);
        let (a, bb, c) = (&g[picks.0 % g.len()], &g[picks.1 % g.len()], &g[picks.2 % g.len()]);
        let dom = |x: &floer_core::floer_complex::Generator, y: &floer_core::floer_complex::Generator| {
            domain_weights(&cx, x, y).map(|w| Domain { from: x.clone(), to: y.clone(), weights: w })
        };
        if let (Some(ab), Some(bc), Some(ac)) = (dom(a, bb), dom(bb, c), dom(a, c)) {
            let w: Vec<i64> = ab.weights.iter().zip(&bc.weights).map(|(x, y)| x + y).collect();
            prop_assert_eq!(&w, &ac.weights);
            if let (Ok(i1), Ok(i2), Ok(i3)) = (ctx.index(&ab), ctx.index(&bc), ctx.index(&ac)) {
                prop_assert_eq!(i1 + i2, i3);
            }
        }
    }

    #[test]
    fn ring_addition_is_characteristic_two(terms in prop::collection::vec((0i64..6, -2i64..3), 0..8)) {
        let mut x = RingElement::zero();
        for (h, c) in &terms {
            x.add_monomial(Monomial::new(*h, vec![*c]));
        }
        prop_assert!(x.add(&x).is_zero());
        prop_assert_eq!(x.add(&RingElement::zero()), x);
    }
}

#[test]
fn quarters_display_half_integers() {
    assert_eq!(Quarters(2).to_f64(), 0.5);
    assert_eq!(Quarters::from_int(-1).to_f64(), -1.0);
}

use proptest::prelude::*;

use sqfree::factorize::{factor, power_divides, uniqueness_check, Outcome, Scheme};
use sqfree::families::poly::fx;
use sqfree::families::{Family, LeveledVector, ShiftedNumerical};
use sqfree::predicates::{is_atom, is_prime, is_radical, is_squarefree};
use sqfree::submonoid::{
    atom_transfer_report, check_transfer, closure_checks, squarefree_transfer_report,
    SubmonoidContext, Transfer,
};
use sqfree::{Element, Monoid, Norm};

fn balls() -> Vec<(Monoid, Vec<Element>)> {
    let ms = [
        (Monoid::free(2), 5),
        (Monoid::shifted(3, &[0]).unwrap(), 14),
        (Monoid::shifted(4, &[0, 2]).unwrap(), 14),
        (
            Monoid::submonoid(2, &[&[2, 0], &[1, 1], &[0, 2]]).unwrap(),
            6,
        ),
        (Monoid::bpq(1, 2, 4).unwrap(), 6),
        (Monoid::bpq(1, 1, 4).unwrap(), 5),
        (Monoid::gf2_gf4(3), 2),
    ];
    ms.into_iter()
        .map(|(m, b)| {
            let e = m.enumerate(b).unwrap();
            (m, e)
        })
        .collect()
}

fn pick(es: &[Element], i: usize) -> &Element {
    &es[i % es.len()]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn composition_is_commutative_and_cancellative(f in 0usize..7, i in 0usize..500, j in 0usize..500, k in 0usize..500) {
        let bs = balls();
        let (m, es) = &bs[f];
        let (a, b, c) = (pick(es, i), pick(es, j), pick(es, k));
        prop_assert_eq!(m.compose(a, b).unwrap(), m.compose(b, a).unwrap());
        let ab_c = m.compose(&m.compose(a, b).unwrap(), c).unwrap();
        let a_bc = m.compose(a, &m.compose(b, c).unwrap()).unwrap();
        prop_assert_eq!(ab_c, a_bc);
        let ac = m.compose(a, c).unwrap();
        let bc = m.compose(b, c).unwrap();
        prop_assert_eq!(ac == bc, a == b);
        prop_assert_eq!(m.compose(a, &m.identity()).unwrap(), a.clone());
    }

    #[test]
    fn divisibility_is_a_preorder(f in 0usize..7, i in 0usize..500, j in 0usize..500, k in 0usize..500) {
        let bs = balls();
        let (m, es) = &bs[f];
        let (a, b, c) = (pick(es, i), pick(es, j), pick(es, k));
        prop_assert!(m.is_divisor(a, a).unwrap());
        if m.is_divisor(a, b).unwrap() && m.is_divisor(b, c).unwrap() {
            prop_assert!(m.is_divisor(a, c).unwrap());
        }
        let both = m.is_divisor(a, b).unwrap() && m.is_divisor(b, a).unwrap();
        prop_assert_eq!(both, m.are_associates(a, b).unwrap());
        // The quotient witness recomposes.
        if let Some(q) = m.quotient(a, b).unwrap() {
            prop_assert_eq!(m.compose(a, &q).unwrap(), b.clone());
        }
        prop_assert!(m.norm(&m.compose(a, b).unwrap()).unwrap() >= m.norm(a).unwrap().max(m.norm(b).unwrap()));
    }

    #[test]
    fn relative_primality_passes_to_divisors(f in 0usize..4, i in 0usize..500, j in 0usize..500) {
        let bs = balls();
        let (m, es) = &bs[f];
        let (a, b) = (pick(es, i), pick(es, j));
        if m.rpr(a, b).unwrap().kind == sqfree::VerdictKind::Proven {
            for d in m.divisors(a).unwrap() {
                for e in m.divisors(b).unwrap() {
                    prop_assert!(!m.rpr(&d, &e).unwrap().fails(), "{} {}", d, e);
                }
            }
        }
    }

    #[test]
    fn divisors_of_products(f in 0usize..4, i in 0usize..500, j in 0usize..500) {
        let bs = balls();
        let (m, es) = &bs[f];
        let (a, b) = (pick(es, i), pick(es, j));
        let ab = m.compose(a, b).unwrap();
        let whole = m.divisors(&ab).unwrap();
        let mut products = Vec::new();
        for d in m.divisors(a).unwrap() {
            for e in m.divisors(b).unwrap() {
                let de = m.compose(&d, &e).unwrap();
                prop_assert!(whole.contains(&de));
                products.push(de);
            }
        }
        if f == 0 {
            for w in &whole {
                prop_assert!(products.contains(w));
            }
        }
    }

    #[test]
    fn refutation_witnesses_reproduce(f in 0usize..7, i in 0usize..500) {
        let bs = balls();
        let (m, es) = &bs[f];
        let a = pick(es, i);
        let sf = is_squarefree(m, a).unwrap();
        if sf.fails() && sf.witness.len() == 2 {
            let (b, c) = (&sf.witness[0], &sf.witness[1]);
            prop_assert_eq!(m.compose(&m.pow(b, 2).unwrap(), c).unwrap(), a.clone());
            prop_assert!(!m.unit(b).unwrap());
        }
        let at = is_atom(m, a).unwrap();
        if at.fails() && at.witness.len() == 2 {
            let (b, c) = (&at.witness[0], &at.witness[1]);
            prop_assert_eq!(m.compose(b, c).unwrap(), a.clone());
            prop_assert!(!m.unit(b).unwrap() && !m.unit(c).unwrap());
        }
        if f < 4 {
            let pr = is_prime(m, a, 8).unwrap();
            if pr.fails() && pr.witness.len() == 2 {
                let (b, c) = (&pr.witness[0], &pr.witness[1]);
                let bc = m.compose(b, c).unwrap();
                let split = m.compose(b, c).unwrap() == *a && !m.unit(b).unwrap() && !m.unit(c).unwrap();
                let fails = m.is_divisor(a, &bc).unwrap() && !m.is_divisor(a, b).unwrap() && !m.is_divisor(a, c).unwrap();
                prop_assert!(split || fails);
            }
            let ra = is_radical(m, a, 8).unwrap();
            if ra.fails() {
                let b = &ra.witness[0];
                let n = ra.exponent.unwrap();
                prop_assert!(m.is_divisor(a, &m.pow(b, n).unwrap()).unwrap());
                prop_assert!(!m.is_divisor(a, b).unwrap());
            }
        }
    }

    #[test]
    fn squarefree_elements_split_into_coprime_squarefree_parts(f in 0usize..4, i in 0usize..500) {
        let bs = balls();
        let (m, es) = &bs[f];
        let a = pick(es, i);
        if is_squarefree(m, a).unwrap().holds() {
            for b in m.divisors(a).unwrap() {
                let c = m.quotient(&b, a).unwrap().unwrap();
                prop_assert!(is_squarefree(m, &b).unwrap().holds());
                prop_assert!(!m.rpr(&b, &c).unwrap().fails(), "{} = {} * {}", a, b, c);
            }
        }
    }

    #[test]
    fn bpq_rewriting_is_a_homomorphism(
        p in 1u64..3, q in 1u64..3,
        la in 1u32..3, lb in 1u32..3,
        xa in prop::collection::vec(0u64..3, 4), xb in prop::collection::vec(0u64..3, 4),
        ya in 0u64..3, yb in 0u64..3,
        up in 0u32..2,
    ) {
        let m = Monoid::bpq(p, q, 4).unwrap();
        let Family::Bpq(f) = m.family() else { unreachable!() };
        let mk = |l: u32, x: &[u64], y: u64| {
            let mut x = x.to_vec();
            for v in x.iter_mut().skip(l as usize) { *v = 0; }
            f.canonical(LeveledVector { level: l, x, y })
        };
        let (a, b) = (mk(la, &xa, ya), mk(lb, &xb, yb));
        let ab = m.compose(&Element::Leveled(a.clone()), &Element::Leveled(b.clone())).unwrap();
        let Element::Leveled(ab) = ab else { unreachable!() };
        let level = a.level.max(b.level).max(ab.level) + up;
        let na = f.level_vector(&a, level).unwrap();
        let nb = f.level_vector(&b, level).unwrap();
        let nab = f.level_vector(&ab, level).unwrap();
        let sum: Vec<u64> = na.iter().zip(&nb).map(|(x, y)| x + y).collect();
        prop_assert_eq!(nab, sum);
        // Canonical forms are minimal: lowering again changes nothing.
        prop_assert_eq!(f.canonical(ab.clone()), ab);
    }

    #[test]
    fn bpq_divisibility_matches_quotient_search(i in 0usize..500, j in 0usize..500, q in 1u64..3) {
        let m = Monoid::bpq(1, q, 3).unwrap();
        let es = m.enumerate(5).unwrap();
        let (a, b) = (pick(&es, i), pick(&es, j));
        let nb = m.norm(b).unwrap();
        let oracle = m
            .enumerate(nb)
            .unwrap()
            .iter()
            .any(|c| m.compose(a, c).unwrap() == *b);
        prop_assert_eq!(m.divides(a, b).unwrap().holds(), oracle, "{} | {}", a, b);
    }

    #[test]
    fn poly_products_stay_in_the_subring(
        f0 in 0u32..2, g0 in 0u32..2,
        f in prop::collection::vec(0u32..4, 0..4), g in prop::collection::vec(0u32..4, 0..4),
    ) {
        let m = Monoid::gf2_gf4(8);
        let Family::Poly(t) = m.family() else { unreachable!() };
        let mut fc = vec![f0]; fc.extend(f);
        let mut gc = vec![g0]; gc.extend(g);
        prop_assume!(fc.iter().any(|&c| c != 0) && gc.iter().any(|&c| c != 0));
        prop_assume!(t.contains(&fc) && t.contains(&gc));
        let prod = fx::mul(t.field(), &fc, &gc);
        prop_assert!(t.contains(&prod));
        prop_assert_eq!(prod[0], t.field().mul(fc[0], gc[0]));
        let composed = m.compose(&t.element(fc), &t.element(gc)).unwrap();
        prop_assert!(m.check(&composed).is_ok());
    }

    #[test]
    fn shifted_validation_matches_closure(threshold in 1u64..10, mask in 0u32..512) {
        let extras: Vec<u64> = (1..threshold).filter(|e| mask >> e & 1 == 1).collect();
        let carrier = |v: u64| v == 0 || v >= threshold || extras.contains(&v);
        // Sums reaching the threshold are always in the carrier.
        let closed = extras.iter().all(|&x| extras.iter().all(|&y| carrier(x + y)));
        prop_assert_eq!(ShiftedNumerical::new(threshold, extras.clone()).is_ok(), closed);
    }

    #[test]
    fn enumeration_is_prefix_consistent(f in 0usize..7, b1 in 0u64..5, extra in 0u64..3) {
        let bs = balls();
        let m = &bs[f].0;
        // The polynomial ring is truncated at degree 3.
        let top = if f == 6 { (b1 + extra).min(3) } else { b1 + extra };
        let small = m.enumerate(b1.min(top)).unwrap();
        let large = m.enumerate(top).unwrap();
        prop_assert_eq!(&large[..small.len()], &small[..]);
    }
}

fn free_or_shifted() -> Vec<(Monoid, Vec<Element>)> {
    vec![
        (Monoid::free(2), Monoid::free(2).enumerate(6).unwrap()),
        (Monoid::free(3), Monoid::free(3).enumerate(4).unwrap()),
        (
            Monoid::shifted(3, &[0]).unwrap(),
            Monoid::shifted(3, &[0]).unwrap().enumerate(12).unwrap(),
        ),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn free_square_free_iff_trivial_square_part(i in 0usize..500, r in 0usize..2) {
        let bs = free_or_shifted();
        let (m, es) = &bs[r];
        let a = pick(es, i);
        let Outcome::Found(f) = factor(m, a, Scheme::Vi).unwrap() else { panic!("no (vi) for {a}") };
        prop_assert_eq!(is_squarefree(m, a).unwrap().holds(), f.parts[0] == m.identity());
    }

    #[test]
    fn extraction_power_condition_moves_to_the_cofactor(i in 0usize..500, r in 0usize..3) {
        let bs = free_or_shifted();
        let (m, es) = &bs[r];
        let a = pick(es, i);
        if let Outcome::Found(f) = factor(m, a, Scheme::V).unwrap() {
            let (b, c) = (&f.parts[0], &f.parts[1]);
            let fa = power_divides(m, a, c).unwrap();
            let fb = power_divides(m, b, c).unwrap();
            prop_assert!(matches!(fa, Some(Some(_))));
            prop_assert_eq!(fa.is_some_and(|x| x.is_some()), fb.is_some_and(|x| x.is_some()));
        }
    }

    #[test]
    fn condition_suites_agree(
        gens in prop::collection::vec(prop::collection::vec(0u64..4, 2), 1..4),
    ) {
        prop_assume!(gens.iter().all(|g| g.iter().any(|&x| x > 0)));
        let ctx = SubmonoidContext::with_bounds(2, gens, 5, 15).unwrap();
        let a = atom_transfer_report(&ctx);
        let s = squarefree_transfer_report(&ctx);
        prop_assert!(a.passed(), "{:?}", a.verdicts);
        prop_assert!(s.passed(), "{:?}", s.verdicts);
        // A refuted atom suite forces a refuted square-free suite.
        if a.refuted() > 0 {
            prop_assert!(s.refuted() > 0);
        }
        let t11 = check_transfer(&ctx, Transfer::AtomsSquarefree);
        let t12 = check_transfer(&ctx, Transfer::SquarefreeSquarefree);
        if t12.holds() {
            prop_assert!(!t11.fails());
        }
        prop_assert!(closure_checks(&ctx).divisor_forms_agree());
    }
}

/// Knuth's MMIX linear congruential generator, seeded with 2024.
struct Lcg(u64);

impl Lcg {
    fn next(&mut self) -> u64 {
        self.0 = self
            .0
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        self.0 >> 33
    }
}

#[test]
fn pseudo_random_elements_factor_uniquely() {
    let m = Monoid::free(3);
    let mut rng = Lcg(2024);
    for _ in 0..200 {
        let v: Vec<u64> = (0..3).map(|_| rng.next() % 7).collect();
        let a = Element::vector(v);
        for scheme in [Scheme::Iii, Scheme::Iv, Scheme::Vi] {
            let r = uniqueness_check(&m, &a, scheme, 8 as Norm).unwrap();
            assert!(r.holds(), "{a} ({scheme}): {}", r.summary());
        }
    }
}

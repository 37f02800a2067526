//! Property tests for the algebraic laws the engine is built on.

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

use cuspline_core::gl::{
    big_m_star, filter_by_support, m_star, FormalSum, FormalSumGG, Segment, StandardGL,
};
use cuspline_core::jantzen::{
    assoc_check, filter_mu_terms, mu_glue, psi_glue, tempered_glued, x_project,
    DecompositionInput, Side,
};
use cuspline_core::lines::{
    is_regular_partition, CuspidalSymbol, LinePoint, LineSet, PointMultiset,
};
use cuspline_core::params::{
    contragredient_family, mu_star_standard, s_gl_standard, ClassicalStandard, MuTerm,
};
use cuspline_core::rat::{rat, rat_int};
use cuspline_core::sample::{
    demo_registry, demo_sigma, gen_family, gen_generic, gen_partition,
};
use cuspline_core::unitarity::{is_unitarizable_generic, preservation_check, GenericParam};

fn arb_symbol() -> impl Strategy<Value = CuspidalSymbol> {
    prop::sample::select(demo_registry().symbols())
}

fn arb_point() -> impl Strategy<Value = LinePoint> {
    (arb_symbol(), -6i64..6, 1i64..3).prop_map(|(s, n, d)| LinePoint::new(s, rat(n, d)))
}

fn arb_segment() -> impl Strategy<Value = Segment> {
    (arb_symbol(), -3i64..3, 0i64..3).prop_map(|(s, off, len)| {
        let b = s.alpha() + rat_int(off);
        Segment::new(s, b, b + rat_int(len)).expect("grid segment")
    })
}

fn arb_standard(max_factors: usize) -> impl Strategy<Value = StandardGL> {
    prop::collection::vec(arb_segment(), 0..=max_factors).prop_map(StandardGL::from_factors)
}

type Triple = (StandardGL, StandardGL, StandardGL);

fn expand_left(sum: &FormalSumGG) -> FormalSum<Triple> {
    let mut out = FormalSum::zero();
    for ((l, r), m) in sum.iter() {
        for ((a, b), n) in m_star(l).iter() {
            out.add_term((a.clone(), b.clone(), r.clone()), m * n);
        }
    }
    out
}

fn expand_right(sum: &FormalSumGG) -> FormalSum<Triple> {
    let mut out = FormalSum::zero();
    for ((l, r), m) in sum.iter() {
        for ((a, b), n) in m_star(r).iter() {
            out.add_term((l.clone(), a.clone(), b.clone()), m * n);
        }
    }
    out
}

proptest! {
    #[test]
    fn contragredient_point_is_involutive(p in arb_point()) {
        prop_assert_eq!(p.contragredient().contragredient(), p);
    }

    #[test]
    fn same_line_is_an_equivalence(a in arb_point(), b in arb_point(), c in arb_point()) {
        prop_assert!(a.same_line(&a));
        prop_assert_eq!(a.same_line(&b), b.same_line(&a));
        if a.same_line(&b) && b.same_line(&c) {
            prop_assert!(a.same_line(&c));
        }
    }

    #[test]
    fn regular_partition_is_symmetric(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let reg = demo_registry();
        let (x1, x2) = gen_partition(&mut rng, &reg.symbols());
        let support = PointMultiset::new();
        prop_assert_eq!(
            is_regular_partition(&x1, &x2, &support).unwrap(),
            is_regular_partition(&x2, &x1, &support).unwrap()
        );
    }

    #[test]
    fn m_star_is_coassociative(beta in arb_standard(3)) {
        let sum = m_star(&beta);
        prop_assert_eq!(expand_left(&sum), expand_right(&sum));
    }

    #[test]
    fn m_star_counit(beta in arb_standard(3)) {
        let sum = m_star(&beta);
        let left_unit = sum.filter(|(l, _)| l.is_unit());
        prop_assert_eq!(left_unit.num_terms(), 1);
        prop_assert_eq!(
            left_unit.multiplicity(&(StandardGL::unit(), beta.canonical())),
            1
        );
        let right_unit = sum.filter(|(_, r)| r.is_unit());
        prop_assert_eq!(
            right_unit.multiplicity(&(beta.canonical(), StandardGL::unit())),
            1
        );
    }

    #[test]
    fn big_m_star_is_multiplicative(a in arb_standard(2), b in arb_standard(2)) {
        let direct = big_m_star(&a.concat(&b));
        let product = big_m_star(&a)
            .product(&big_m_star(&b), |(l1, r1), (l2, r2)| {
                Ok((l1.concat(l2).canonical(), r1.concat(r2).canonical()))
            })
            .unwrap();
        prop_assert_eq!(direct, product);
    }

    #[test]
    fn comultiplication_term_counts(beta in arb_standard(3)) {
        // merging preserves total multiplicity: m* has prod (card_i + 1)
        // raw terms, M* has prod (card_i + 1)(card_i + 2)/2
        let m_total: u64 = beta.factors().iter().map(|s| s.card() + 1).product();
        prop_assert_eq!(m_star(&beta).total(), m_total);
        let big_total: u64 = beta
            .factors()
            .iter()
            .map(|s| (s.card() + 1) * (s.card() + 2) / 2)
            .product();
        prop_assert_eq!(big_m_star(&beta).total(), big_total);
    }

    #[test]
    fn projection_commutes_with_the_glued_display(seed in any::<u64>()) {
        use cuspline_core::jantzen::glued_langlands_rows;
        let mut rng = StdRng::seed_from_u64(seed);
        let reg = demo_registry();
        let sigma = demo_sigma();
        let fam = gen_family(&mut rng, &reg.symbols(), &sigma, 3);
        let (x1, x2) = gen_partition(&mut rng, &reg.symbols());
        let input = DecompositionInput::new(fam.clone(), x1.clone(), x2).unwrap();
        let projected = x_project(&input, Side::X1);
        // filtering the glued rows to the part matches the part's own rows
        let filtered: Vec<_> = glued_langlands_rows(&fam)
            .into_iter()
            .filter_map(|(exp, rows)| {
                let kept: Vec<_> = rows
                    .into_iter()
                    .filter(|s| x1.contains_symbol(s.cusp()))
                    .collect();
                (!kept.is_empty()).then_some((exp, kept))
            })
            .collect();
        prop_assert_eq!(filtered, glued_langlands_rows(&projected));
    }

    #[test]
    fn m_star_ignores_factor_order(beta in arb_standard(3)) {
        let mut rev = beta.factors().to_vec();
        rev.reverse();
        prop_assert_eq!(m_star(&beta), m_star(&StandardGL::from_factors(rev)));
    }

    #[test]
    fn support_filter_is_idempotent(beta in arb_standard(3), seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let reg = demo_registry();
        let (x1, x2) = gen_partition(&mut rng, &reg.symbols());
        let sum = big_m_star(&beta);
        let once = filter_by_support(&sum, &x1, &x2);
        prop_assert_eq!(filter_by_support(&once, &x1, &x2), once);
    }

    #[test]
    fn family_round_trip(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let reg = demo_registry();
        let sigma = demo_sigma();
        let fam = gen_family(&mut rng, &reg.symbols(), &sigma, 3);
        let (x1, x2) = gen_partition(&mut rng, &reg.symbols());
        let input = DecompositionInput::new(fam.clone(), x1.clone(), x2.clone()).unwrap();
        let g1 = x_project(&input, Side::X1);
        let g2 = x_project(&input, Side::X2);
        let glued = psi_glue(&sigma, &[(x1, g1.clone()), (x2, g2.clone())]).unwrap();
        prop_assert_eq!(&glued, &fam);
        // degrees add with the shared rank counted once
        prop_assert_eq!(glued.degree() + sigma.rank, g1.degree() + g2.degree());
        // contragredient commutes with projection and gluing
        let cf = contragredient_family(&fam).unwrap();
        let c1 = contragredient_family(&g1).unwrap();
        let c2 = contragredient_family(&g2).unwrap();
        let (y1, y2) = (input.part(Side::X1).clone(), input.part(Side::X2).clone());
        prop_assert_eq!(
            contragredient_family(&psi_glue(&sigma, &[(y1.clone(), g1), (y2.clone(), g2)]).unwrap()).unwrap(),
            psi_glue(&sigma, &[(y1, c1), (y2, c2)]).unwrap()
        );
        // temperedness is the conjunction of the per-line flags
        let flags = tempered_glued(&fam);
        let flags_c = tempered_glued(&cf);
        prop_assert_eq!(flags.tempered, flags_c.tempered);
        let per_line_tempered = fam.params().all(|p| p.is_tempered());
        prop_assert_eq!(flags.tempered, per_line_tempered);
    }

    #[test]
    fn three_part_associativity(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let reg = demo_registry();
        let sigma = demo_sigma();
        let fam = gen_family(&mut rng, &reg.symbols(), &sigma, 3);
        // split all lines in three
        let symbols = reg.symbols();
        let (x1, rest) = gen_partition(&mut rng, &symbols);
        let rest_syms: Vec<CuspidalSymbol> = rest.symbols().cloned().collect();
        let (x2, x3) = gen_partition(&mut rng, &rest_syms);
        prop_assert!(assoc_check(&fam, &x1, &x2, &x3).unwrap());
    }

    #[test]
    fn mu_filter_closed_form_randomized(seed in any::<u64>()) {
        // closed form against the direct filtered computation
        let mut rng = StdRng::seed_from_u64(seed);
        let reg = demo_registry();
        let sigma = demo_sigma();
        let rho0 = reg.get("rho0").unwrap();
        let ups = reg.get("ups").unwrap();
        let x1 = LineSet::closure_of([rho0.clone()]);
        let x2 = LineSet::closure_of([ups.clone()]);
        let beta = cuspline_core::sample::gen_standard(&mut rng, &[rho0], 2);
        let gamma_gl = cuspline_core::sample::gen_standard(&mut rng, &[ups.clone(), ups.partner()], 2);
        let gamma = ClassicalStandard::new(gamma_gl.clone(), sigma.clone());
        let closed =
            cuspline_core::jantzen::mu_filter_left_standard(&beta, &gamma, &x1, &x2).unwrap();
        let direct = filter_mu_terms(
            &mu_star_standard(&beta.concat(&gamma_gl), &sigma),
            &x1,
            None,
        );
        prop_assert_eq!(closed, direct);
    }

    #[test]
    fn s_gl_of_glued_product(seed in any::<u64>()) {
        // the filtered Jacquet sum of a two-line product keeps one side's
        // s_GL terms over the other side's label
        let mut rng = StdRng::seed_from_u64(seed);
        let reg = demo_registry();
        let sigma = demo_sigma();
        let rho0 = reg.get("rho0").unwrap();
        let rho_h = reg.get("rhoH").unwrap();
        let x1 = LineSet::closure_of([rho0.clone()]);
        let x2 = LineSet::closure_of([rho_h.clone()]);
        let b1 = cuspline_core::sample::gen_standard(&mut rng, &[rho0], 2);
        let b2 = cuspline_core::sample::gen_standard(&mut rng, &[rho_h], 2);
        let lhs = filter_mu_terms(
            &mu_star_standard(&b1.concat(&b2), &sigma),
            &x1,
            Some(&x2),
        );
        let rhs: FormalSum<MuTerm> = s_gl_standard(&b1, &sigma)
            .map(|(tau, s)| (tau.clone(), ClassicalStandard::new(b2.clone(), s.clone())));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn mu_glue_agrees_with_direct_product(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let reg = demo_registry();
        let sigma = demo_sigma();
        let rho0 = reg.get("rho0").unwrap();
        let rho_h = reg.get("rhoH").unwrap();
        let b1 = cuspline_core::sample::gen_standard(&mut rng, &[rho0], 2);
        let b2 = cuspline_core::sample::gen_standard(&mut rng, &[rho_h], 2);
        let glued = mu_glue(
            &mu_star_standard(&b1, &sigma),
            &mu_star_standard(&b2, &sigma),
        )
        .unwrap();
        prop_assert_eq!(glued, mu_star_standard(&b1.concat(&b2), &sigma));
    }

    #[test]
    fn preservation_randomized(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let reg = demo_registry();
        let sigma = demo_sigma();
        let p = gen_generic(&mut rng, &reg.symbols(), &sigma, 3, 0.7);
        prop_assert!(preservation_check(&p).unwrap());
    }

    #[test]
    fn s_gl_is_the_trivial_right_part_of_mu_star(beta in arb_standard(3)) {
        // the terms of the Jacquet sum whose classical side is bare sigma
        // are exactly the s_GL terms
        let sigma = demo_sigma();
        let extreme: FormalSum<(StandardGL, cuspline_core::params::SigmaSupport)> =
            mu_star_standard(&beta, &sigma)
                .filter(|(_, cs)| cs.gl.is_unit())
                .map(|(l, cs)| (l.clone(), cs.sigma.clone()));
        prop_assert_eq!(extreme, s_gl_standard(&beta, &sigma));
    }

    #[test]
    fn decision_branches_are_exclusive(seg in arb_segment()) {
        // every centered base falls in exactly one clause family
        use cuspline_core::unitarity::half_red;
        let base = seg.centered();
        let window = !base.cusp().is_self_dual() || half_red(&base).unwrap();
        let barbasch = base.cusp().is_self_dual() && !half_red(&base).unwrap_or(true);
        prop_assert_ne!(window, barbasch);
    }

    #[test]
    fn transfer_commutes_with_layer_forgetting(seed in any::<u64>()) {
        use cuspline_core::sample::gen_langlands;
        use cuspline_core::transfer::{
            transfer_ds, transfer_langlands, transfer_tempered, LinePairContext,
        };
        let mut rng = StdRng::seed_from_u64(seed);
        let reg = demo_registry();
        let s1 = cuspline_core::params::SigmaSupport::new("s1", 0);
        let s2 = cuspline_core::params::SigmaSupport::new("s2", 1);
        let ctx = LinePairContext::new(
            (reg.get("rhoH").unwrap(), s1.clone()),
            (reg.get("rhoHb").unwrap(), s2),
        )
        .unwrap();
        let p = gen_langlands(&mut rng, ctx.src_line(), &s1);
        let moved = transfer_langlands(&ctx, &p).unwrap();
        prop_assert_eq!(
            moved.tempered(),
            &transfer_tempered(&ctx, p.tempered()).unwrap()
        );
        prop_assert_eq!(
            moved.tempered().ds(),
            &transfer_ds(&ctx, p.tempered().ds()).unwrap()
        );
        // reducibility predicates read only alpha and spans
        use cuspline_core::unitarity::{delta_tau_reducible, half_red};
        let base = Segment::new(ctx.src_line().clone(), rat(-1, 2), rat(1, 2)).unwrap();
        let moved_base = Segment::new(ctx.dst_line().clone(), rat(-1, 2), rat(1, 2)).unwrap();
        prop_assert_eq!(half_red(&base).unwrap(), half_red(&moved_base).unwrap());
        prop_assert_eq!(
            delta_tau_reducible(&base, p.tempered()).unwrap(),
            delta_tau_reducible(&moved_base, moved.tempered()).unwrap()
        );
    }

    #[test]
    fn generic_decision_ignores_pair_swap(seed in any::<u64>()) {
        // exponent-level contragredient: moving every delta onto the
        // partner symbol preserves the decision
        let mut rng = StdRng::seed_from_u64(seed);
        let reg = demo_registry();
        let sigma = demo_sigma();
        let p = gen_generic(&mut rng, &reg.symbols(), &sigma, 3, 0.7);
        let swapped: Vec<Segment> = p
            .deltas()
            .iter()
            .map(|d| Segment::new(d.cusp().partner(), d.b(), d.e()).unwrap())
            .collect();
        let layers = p.tempered_layers().cloned().collect();
        let q = GenericParam::new(swapped, layers, sigma).unwrap();
        prop_assert_eq!(
            is_unitarizable_generic(&p).unwrap().0,
            is_unitarizable_generic(&q).unwrap().0
        );
    }
}

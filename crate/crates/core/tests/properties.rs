//! Property tests for the relation-algebra laws and corpus sweeps for the
//! structural theorems that the unit tests only touch on fixed examples.

use proptest::prelude::*;
use sgap_core::corpus::{corpus, random_relation};
use sgap_core::green::{co_green_quasiorders, green_relations};
use sgap_core::kernels::{
    coequivalence_kernel, cotransitive_kernel, fine_apartness, is_cotransitive_raw,
};
use sgap_core::relations::{
    apartness_complement, apartness_complement_in, classify_relation, product_apartness,
    subset_checks, FiniteRelation, FiniteSetoid, FiniteSubset,
};
use sgap_core::semigroup::{
    classify_compatibility, co_congruence_kernel, congruence_closure, eta, is_regular_semigroup,
    morphism_checks, quotient, regularity, Morphism,
};

fn relation_from_bits(n: usize, bits: &[bool]) -> FiniteRelation {
    let pairs: Vec<(usize, usize)> = bits
        .iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .map(|(i, _)| (i / n, i % n))
        .collect();
    FiniteRelation::from_pairs(n, &pairs).unwrap()
}

prop_compose! {
    fn arb_triple(max_n: usize)
        (n in 1..=max_n)
        (n in Just(n),
         a in proptest::collection::vec(any::<bool>(), n * n),
         b in proptest::collection::vec(any::<bool>(), n * n),
         c in proptest::collection::vec(any::<bool>(), n * n))
    -> (FiniteRelation, FiniteRelation, FiniteRelation) {
        (
            relation_from_bits(n, &a),
            relation_from_bits(n, &b),
            relation_from_bits(n, &c),
        )
    }
}

prop_compose! {
    /// A setoid from a random partition (labels), with denial or empty
    /// apartness.
    fn arb_setoid(max_n: usize)
        (n in 1..=max_n)
        (n in Just(n),
         labels in proptest::collection::vec(0..max_n, n),
         denial in any::<bool>())
    -> FiniteSetoid {
        let mut pairs = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if labels[i] == labels[j] {
                    pairs.push((i, j));
                }
            }
        }
        let eq = FiniteRelation::from_pairs(n, &pairs).unwrap();
        if denial {
            FiniteSetoid::denial(eq).unwrap()
        } else {
            FiniteSetoid::with_empty_apartness(eq).unwrap()
        }
    }
}

fn relation_as_subset(rel: &FiniteRelation) -> FiniteSubset {
    let n = rel.carrier();
    let members: Vec<usize> = rel.pairs().iter().map(|&(x, y)| x * n + y).collect();
    FiniteSubset::from_members(n * n, &members).unwrap()
}

proptest! {
    #[test]
    fn filled_product_inverse_law((a, b, _) in arb_triple(5)) {
        prop_assert_eq!(
            a.filled_product(&b).unwrap().inverse(),
            b.inverse().filled_product(&a.inverse()).unwrap()
        );
    }

    #[test]
    fn filled_product_associates((a, b, c) in arb_triple(5)) {
        prop_assert_eq!(
            a.filled_product(&b.filled_product(&c).unwrap()).unwrap(),
            a.filled_product(&b).unwrap().filled_product(&c).unwrap()
        );
    }

    #[test]
    fn complement_filled_product_is_composition_complement((a, b, _) in arb_triple(5)) {
        prop_assert_eq!(
            a.complement().filled_product(&b.complement()).unwrap(),
            a.compose(&b).unwrap().complement()
        );
    }

    #[test]
    fn cotransitivity_is_filled_self_inclusion((a, _, _) in arb_triple(5)) {
        prop_assert_eq!(
            is_cotransitive_raw(&a),
            a.is_subset_of(&a.filled_product(&a).unwrap())
        );
    }

    #[test]
    fn kernel_is_a_kernel_operator((a, b, _) in arb_triple(5)) {
        let ka = cotransitive_kernel(&a);
        prop_assert!(ka.kernel.is_subset_of(&a));
        prop_assert!(is_cotransitive_raw(&ka.kernel));
        prop_assert!(ka.fixpoint_step <= a.carrier() + 2);
        prop_assert_eq!(cotransitive_kernel(&ka.kernel).kernel, ka.kernel.clone());
        let bigger = a.union(&b).unwrap();
        prop_assert!(ka.kernel.is_subset_of(&cotransitive_kernel(&bigger).kernel));
    }

    #[test]
    fn transitive_closure_is_a_closure_operator((a, b, _) in arb_triple(5)) {
        let ta = a.transitive_closure();
        let ctx = FiniteSetoid::discrete(a.carrier());
        prop_assert!(classify_relation(&ta, &ctx).unwrap().transitive);
        prop_assert!(a.is_subset_of(&ta));
        prop_assert_eq!(ta.transitive_closure(), ta.clone());
        prop_assert!(ta.is_subset_of(&a.union(&b).unwrap().transitive_closure()));
    }

    #[test]
    fn double_apartness_complement_fixes_the_apartness(ctx in arb_setoid(4)) {
        // The apartness, seen as a subset of the square, equals its double
        // apartness complement.
        let sq = product_apartness(&ctx, &ctx);
        let once = apartness_complement(ctx.apt(), &sq).unwrap();
        let twice = apartness_complement(&once, &sq).unwrap();
        prop_assert_eq!(&twice, ctx.apt());
    }

    #[test]
    fn co_quasiorders_match_both_complements((a, _, _) in arb_triple(4), denial in any::<bool>()) {
        let n = a.carrier();
        let ctx = if denial {
            FiniteSetoid::discrete(n)
        } else {
            FiniteSetoid::with_empty_apartness(FiniteRelation::identity(n)).unwrap()
        };
        // Carve a co-quasiorder out of the random relation.
        let kappa = cotransitive_kernel(&a.intersection(ctx.apt()).unwrap()).kernel;
        let report = classify_relation(&kappa, &ctx).unwrap();
        prop_assert!(report.co_quasiorder);
        // Negation and apartness complement agree on co-quasiorders.
        prop_assert_eq!(
            kappa.complement(),
            apartness_complement_in(&kappa, &ctx).unwrap()
        );
        // Every co-quasiorder is a strongly extensional subset of the square.
        let square = ctx.square();
        prop_assert!(
            subset_checks(&relation_as_subset(&kappa), &square)
                .unwrap()
                .strongly_extensional
        );
    }

    #[test]
    fn coequivalence_kernel_flags((a, _, _) in arb_triple(4)) {
        let ctx = FiniteSetoid::discrete(a.carrier());
        let q = coequivalence_kernel(&a, &ctx).unwrap();
        let report = classify_relation(&q, &ctx).unwrap();
        prop_assert!(report.coequivalence);
        prop_assert!(q.is_subset_of(&a));
    }

    #[test]
    fn fine_apartness_is_fine(ctx in arb_setoid(4)) {
        let fine = fine_apartness(ctx.eq()).unwrap();
        let report = sgap_core::relations::classify_apartness(&fine, ctx.eq()).unwrap();
        prop_assert_eq!(report.fine, Some(true));
        prop_assert_eq!(report.tight, Some(true));
        // Any valid apartness for this equality sits inside the fine one.
        prop_assert!(ctx.apt().is_subset_of(&fine));
    }
}

fn corpus_sample(max_n: usize, limit: usize) -> Vec<&'static sgap_core::corpus::CorpusMember> {
    corpus()
        .with_max_carrier(max_n)
        .enumerate()
        .filter(|(i, _)| i % 29 == 0)
        .map(|(_, m)| m)
        .take(limit)
        .collect()
}

#[test]
fn congruence_closure_fixpoint_characterises_congruences() {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
    for m in corpus_sample(3, 40) {
        for _ in 0..20 {
            let rel = random_relation(m.sg.carrier(), &mut rng);
            let closed = congruence_closure(&rel, &m.sg).unwrap();
            let is_congruence = classify_compatibility(&rel, &m.sg).unwrap().congruence;
            assert_eq!(closed == rel, is_congruence, "on {}", m.name);
            assert!(classify_compatibility(&closed, &m.sg).unwrap().congruence);
        }
    }
}

#[test]
fn kernels_preserve_co_compatibility() {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
    let mut premise_hits = 0usize;
    for m in corpus_sample(3, 40) {
        for _ in 0..20 {
            let rel = random_relation(m.sg.carrier(), &mut rng);
            // The eta filter always produces a two-sided co-compatible
            // relation, giving the premise a guaranteed supply.
            let filtered = eta(&rel, &m.sg).unwrap();
            let base = classify_compatibility(&filtered, &m.sg).unwrap();
            assert!(
                base.left_co_compatible && base.right_co_compatible,
                "on {}",
                m.name
            );
            for candidate in [rel, filtered] {
                let flags = classify_compatibility(&candidate, &m.sg).unwrap();
                if !(flags.left_co_compatible && flags.right_co_compatible) {
                    continue;
                }
                premise_hits += 1;
                let c = cotransitive_kernel(&candidate).kernel;
                let flags_c = classify_compatibility(&c, &m.sg).unwrap();
                assert!(flags_c.left_co_compatible && flags_c.right_co_compatible);
                let q = coequivalence_kernel(&candidate, m.sg.setoid()).unwrap();
                let flags_q = classify_compatibility(&q, &m.sg).unwrap();
                assert!(flags_q.left_co_compatible && flags_q.right_co_compatible);
            }
        }
    }
    assert!(
        premise_hits > 100,
        "premise fired only {premise_hits} times"
    );
}

#[test]
fn eta_filter_laws() {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
    for m in corpus_sample(3, 40) {
        let s = &m.sg;
        let apt = s.setoid().apt().clone();
        // The apartness is a co-compatible co-quasiorder, hence a fixpoint.
        assert_eq!(eta(&apt, s).unwrap(), apt, "on {}", m.name);
        for _ in 0..15 {
            let a = random_relation(s.carrier(), &mut rng);
            let b = a.union(&random_relation(s.carrier(), &mut rng)).unwrap();
            let ea = eta(&a, s).unwrap();
            assert!(ea.is_subset_of(&a), "on {}", m.name);
            assert!(ea.is_subset_of(&eta(&b, s).unwrap()), "on {}", m.name);
        }
    }
}

#[test]
fn zeta_is_the_greatest_co_congruence_fixpoint() {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(29);
    for m in corpus_sample(3, 30) {
        let apt = m.sg.setoid().apt().clone();
        assert_eq!(
            co_congruence_kernel(&apt, &m.sg).unwrap(),
            apt,
            "on {}",
            m.name
        );
        for _ in 0..10 {
            let rel = random_relation(m.sg.carrier(), &mut rng);
            let zeta = co_congruence_kernel(&rel, &m.sg).unwrap();
            assert!(classify_compatibility(&zeta, &m.sg).unwrap().co_congruence);
            assert!(zeta.is_subset_of(&rel));
            assert_eq!(co_congruence_kernel(&zeta, &m.sg).unwrap(), zeta);
        }
    }
}

#[test]
fn principal_ideals_are_closed() {
    for m in corpus_sample(4, 60) {
        let s = &m.sg;
        let n = s.carrier();
        for b in 0..n {
            let mut left = Vec::new();
            let mut right = Vec::new();
            let mut two_sided = Vec::new();
            for si in 0..n {
                left.push(s.mul(si, b));
                right.push(s.mul(b, si));
                for ti in 0..n {
                    two_sided.push(s.mul(s.mul(si, b), ti));
                }
            }
            left.push(b);
            right.push(b);
            two_sided.extend_from_slice(&left);
            two_sided.extend_from_slice(&right);
            for members in [&left, &right, &two_sided] {
                let set = FiniteSubset::from_members(n, members).unwrap();
                let report = subset_checks(&set, s.setoid()).unwrap();
                assert!(report.closed, "principal ideal not closed on {}", m.name);
            }
        }
    }
}

#[test]
fn apart_from_square_membership_matches_inverse_probes() {
    // On regular members: a in ~E(S) iff a # axa (x in V(a^2)) iff a # a^2.
    for m in &corpus().members {
        if !is_regular_semigroup(&m.sg) {
            continue;
        }
        let s = &m.sg;
        let idempotents = sgap_core::semigroup::idempotents_and_c(s).idempotents;
        let not_e = sgap_core::relations::subset_apartness_complement(&idempotents, s.setoid());
        for a in 0..s.carrier() {
            let a2 = s.mul(a, a);
            let reg = regularity(s, a2).unwrap();
            if !reg.regular {
                continue;
            }
            for x in reg.inverses.members() {
                let axa = s.mul(s.mul(a, x), a);
                assert_eq!(not_e.contains(a), s.apt_holds(a, axa), "on {}", m.name);
                assert_eq!(not_e.contains(a), s.apt_holds(a, a2), "on {}", m.name);
            }
        }
    }
}

#[test]
fn induced_factor_maps_classify_by_cokernel_bounds() {
    // theta: S/ker f -> T is strongly extensional iff cker f is inside the
    // chosen co-congruence, and apartness injective iff conversely.
    let z = |k: usize| {
        sgap_core::document::generate_family(&format!("cyclic:{k}"))
            .unwrap()
            .to_semigroup()
            .unwrap()
    };
    for (big, small) in [(4usize, 2usize), (6, 3), (6, 2)] {
        let s = z(big);
        let t = z(small);
        let map: Vec<usize> = (0..big).map(|x| x % small).collect();
        let f = Morphism::new(s.clone(), t.clone(), map.clone()).unwrap();
        let checks = morphism_checks(&f);
        let zeta_full = co_congruence_kernel(&checks.cker, &s).unwrap();
        for zeta in [FiniteRelation::empty(big), zeta_full] {
            let q = quotient(&s, &checks.ker, &zeta).unwrap().semigroup;
            let theta = Morphism::new(q, t.clone(), map.clone()).unwrap();
            let theta_checks = morphism_checks(&theta);
            assert_eq!(
                theta_checks.strongly_extensional,
                checks.cker.is_subset_of(&zeta)
            );
            assert_eq!(
                theta_checks.apartness_injective,
                zeta.is_subset_of(&checks.cker)
            );
            assert!(theta_checks.injective);
        }
    }
}

#[test]
fn green_co_quasiorders_are_strongly_extensional_square_subsets() {
    for m in corpus_sample(3, 25) {
        let q = co_green_quasiorders(&m.sg);
        let square = m.sg.setoid().square();
        for rel in [&q.succ_l, &q.succ_r, &q.succ_j] {
            assert!(
                subset_checks(&relation_as_subset(rel), &square)
                    .unwrap()
                    .strongly_extensional,
                "on {}",
                m.name
            );
        }
    }
}

#[test]
fn regularity_is_a_d_class_property() {
    for spec in ["fulltransform:2", "fulltransform:3"] {
        let s = sgap_core::document::generate_family(spec)
            .unwrap()
            .to_semigroup()
            .unwrap();
        let g = green_relations(&s);
        let n = s.carrier();
        let regular: Vec<bool> = (0..n).map(|a| regularity(&s, a).unwrap().regular).collect();
        for a in 0..n {
            for b in 0..n {
                if g.d.contains(a, b) {
                    assert_eq!(regular[a], regular[b], "{spec}");
                }
            }
        }
        // In a regular D-class every L-class and every R-class holds an
        // idempotent.
        for (a, &is_reg) in regular.iter().enumerate() {
            if !is_reg {
                continue;
            }
            let l_has = (0..n).any(|e| g.l.contains(a, e) && s.is_idempotent(e));
            let r_has = (0..n).any(|e| g.r.contains(a, e) && s.is_idempotent(e));
            assert!(l_has && r_has, "{spec}");
        }
    }
}

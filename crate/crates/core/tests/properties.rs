mod common;

use std::sync::Arc;

use proptest::prelude::*;

use common::*;
use concentra::catalg::{
    check_closed, induced_action, is_normal_subconcentration, quotient_concentration, restrict, semidirect_category,
    sub_classes, CatAction, SubcategoryData,
};
use concentra::category::{compose_functors, FinCategory, Functor, MorphismId, ObjectId};
use concentra::concentration::{
    check_concentration, check_concentration_with, is_concentration, set_partitions, CheckOptions,
    MorphismPartition, Verdict,
};
use concentra::dirlim::{
    build_s_g, check_semidirect_decomposition, equivariant_direct_limit, subgroup_subcategory, DirectedPoset,
    GroupDiagram, PosetAction,
};
use concentra::groupoid::{
    codiscrete_cover, sample_theta, theta_change_functor, theta_concentration, theta_isomorphism, torsor_groupoid,
    vertex_group,
};
use concentra::lifting::{
    check_2_lifting, check_multivalued_fibration, check_surjective_on_morphisms, concentrating_functor,
    pullback_concentration,
};
use concentra::monoid::{
    are_isomorphic, concentration_monoid, concentration_monoid_sampled, find_isomorphism, induced_hom,
    quotient_by_normal_submonoid, semidirect_monoid, FinMonoid,
};

fn groups() -> Vec<FinMonoid> {
    let mut out: Vec<FinMonoid> = (1..=12).map(FinMonoid::cyclic).collect();
    out.push(FinMonoid::klein());
    out.push(FinMonoid::symmetric(3));
    out.push(FinMonoid::direct_product(&FinMonoid::cyclic(2), &FinMonoid::cyclic(4)));
    out.push(FinMonoid::direct_product(&FinMonoid::symmetric(3), &FinMonoid::cyclic(2)));
    out
}

fn arb_group() -> impl Strategy<Value = FinMonoid> {
    let gs = groups();
    (0..gs.len()).prop_map(move |i| gs[i].clone())
}

fn arb_monoid() -> impl Strategy<Value = FinMonoid> {
    prop_oneof![
        arb_group(),
        (1usize..=3)
            .prop_flat_map(|k| (Just(k), prop::collection::vec(prop::collection::vec(0..k, k), 1..=2)))
            .prop_map(|(k, gens)| transformation_monoid(k, &gens)),
    ]
}

fn arb_colored() -> impl Strategy<Value = FinCategory> {
    let small: Vec<FinMonoid> = vec![
        FinMonoid::trivial(),
        FinMonoid::cyclic(2),
        FinMonoid::cyclic(3),
        FinMonoid::klein(),
    ];
    (
        0..small.len(),
        1usize..=3,
        prop::collection::vec((0usize..3, 0usize..3), 0..4),
        prop::collection::vec(0usize..3, 0..3),
    )
        .prop_map(move |(g, n, strict, loops)| colored_category(&small[g], n, &strict, &loops))
}

fn arb_category() -> impl Strategy<Value = FinCategory> {
    let fixed: Vec<FinCategory> = small_categories().into_iter().map(|(_, c)| c).collect();
    prop_oneof![
        (0..fixed.len()).prop_map(move |i| fixed[i].clone()),
        arb_colored(),
        arb_monoid().prop_map(|m| FinCategory::one_object(&m)),
    ]
}

fn arb_partitioned() -> impl Strategy<Value = (FinCategory, Vec<usize>)> {
    arb_category()
        .prop_filter("keep brute force cheap", |c| c.num_morphisms() <= 16)
        .prop_flat_map(|c| {
            let n = c.num_morphisms();
            (Just(c), prop::collection::vec(0..n.clamp(1, 4), n))
        })
        .prop_map(|(c, keys)| {
            let canon = MorphismPartition::from_class_of(&keys).class_map().to_vec();
            (c, canon)
        })
}

/// One of the fixture concentrations.
fn arb_concentrated() -> impl Strategy<Value = (Arc<FinCategory>, MorphismPartition)> {
    let cat = catalog();
    (0..cat.len()).prop_map(move |i| (cat[i].1.clone(), cat[i].2.clone()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn one_object_categories_validate(m in arb_monoid()) {
        let c = FinCategory::one_object(&m);
        prop_assert!(c.validate().ok());
        prop_assert_eq!(c.num_morphisms(), m.size());
    }

    #[test]
    fn compose_is_defined_exactly_on_matching_endpoints(c in arb_category()) {
        prop_assert!(c.validate().ok());
        for f in c.morphisms() {
            for g in c.morphisms() {
                prop_assert_eq!(c.compose(f, g).is_some(), c.src(f) == c.tgt(g));
                if let Some(fg) = c.compose(f, g) {
                    prop_assert_eq!(c.src(fg), c.src(g));
                    prop_assert_eq!(c.tgt(fg), c.tgt(f));
                }
            }
        }
    }

    #[test]
    fn composed_automorphisms_are_functors(n in 2usize..=12, u in 1usize..12, v in 1usize..12) {
        // multiplication by a unit of Z/n is an automorphism of its one-object category
        let g = FinMonoid::cyclic(n);
        let c = Arc::new(FinCategory::one_object(&g));
        prop_assume!(gcd(u % n, n) == 1 && gcd(v % n, n) == 1);
        let mul = |k: usize| Functor::new(c.clone(), c.clone(), vec![ObjectId(0)], (0..n).map(|x| MorphismId(x * k % n)).collect()).unwrap();
        let (f, h) = (mul(u % n), mul(v % n));
        prop_assert!(f.check().ok() && h.check().ok());
        let fh = compose_functors(&f, &h).unwrap();
        prop_assert!(fh.check().ok());
        prop_assert_eq!(fh, mul(u * v % n));
        let inv = f.strong_inverse().expect("automorphism");
        prop_assert!(compose_functors(&f, &inv).unwrap().is_identity());
        prop_assert!(compose_functors(&inv, &f).unwrap().is_identity());
    }

    #[test]
    fn axiom_checker_matches_brute_force((c, cls) in arb_partitioned()) {
        let part = MorphismPartition::from_class_of(&cls);
        let report = check_concentration(&c, &part, 3).unwrap();
        prop_assert_eq!(report.is_concentration(), brute_is_concentration(&c, &cls));
        prop_assert_eq!(is_concentration(&c, &part), brute_is_concentration(&c, &cls));
        prop_assert_eq!(report.is_n_concentration(2), brute_products(&c, &cls).is_some());
        let three = report.identity.holds() && report.composition.holds() && brute_n_existence(&c, &cls, 3);
        prop_assert_eq!(report.is_n_concentration(3), three);
    }

    #[test]
    fn higher_existence_implies_lower((c, cls) in arb_partitioned()) {
        let part = MorphismPartition::from_class_of(&cls);
        let report = check_concentration(&c, &part, 4).unwrap();
        for k in 2..4 {
            if report.existence(k + 1).unwrap().holds() {
                prop_assert!(report.existence(k).unwrap().holds());
            }
        }
    }

    #[test]
    fn sampled_representatives_give_the_same_table((cat, part) in arb_concentrated(), seed in any::<u64>()) {
        let fixed = concentration_monoid(&cat, &part).unwrap().monoid;
        let sampled = concentration_monoid_sampled(&cat, &part, seed).unwrap();
        prop_assert_eq!(fixed.rows(), sampled.rows());
    }

    #[test]
    fn isomorphism_search_finds_relabelings(g in arb_group(), seed in any::<u64>()) {
        use rand::{seq::SliceRandom, SeedableRng};
        let n = g.size();
        let mut p: Vec<usize> = (0..n).collect();
        p.shuffle(&mut rand::rngs::StdRng::seed_from_u64(seed));
        // relabel: element p[x] of h is x of g
        let mut inv = vec![0; n];
        for (x, &px) in p.iter().enumerate() {
            inv[px] = x;
        }
        let h = FinMonoid::from_fn((0..n).map(|i| i.to_string()).collect(), |a, b| p[g.mul(inv[a], inv[b])]).unwrap();
        let iso = find_isomorphism(&g, &h).unwrap().expect("relabeling is an isomorphism");
        prop_assert!(g.is_isomorphism(&h, &iso));
        if n <= 8 {
            for other in groups().into_iter().filter(|o| o.size() == n) {
                prop_assert_eq!(are_isomorphic(&g, &other).unwrap(), brute_isomorphic(&g, &other));
            }
        }
    }

    #[test]
    fn induced_homs_are_functorial((cat, part) in arb_concentrated(), k in 0usize..64) {
        let conc = concentrating_functor(&cat, &part).unwrap();
        let m = &conc.monoid;
        prop_assume!(m.is_group());
        // conjugation by some element, as an endofunctor of the one-object category
        let x = k % m.size();
        let xi = m.inverse(x).unwrap();
        let target = conc.target.clone();
        let conj = Functor::new(
            target.clone(),
            target.clone(),
            vec![ObjectId(0)],
            (0..m.size()).map(|y| MorphismId(m.mul(m.mul(x, y), xi))).collect(),
        )
        .unwrap();
        prop_assert!(conj.check().ok());
        let d = MorphismPartition::discrete(&target);
        let whole = compose_functors(&conj, &conc.functor).unwrap();
        let h1 = induced_hom(&conc.functor, &part, &d).unwrap();
        let h2 = induced_hom(&conj, &d, &d).unwrap();
        let composite = induced_hom(&whole, &part, &d).unwrap();
        let chained = h1.then(&h2).unwrap();
        prop_assert_eq!(chained.map(), composite.map());
        prop_assert!(h1.is_bijective());
    }

    #[test]
    fn theta_monoid_is_the_vertex_group(g in arb_group(), n in 1usize..=4, seed in any::<u64>(), base in 0usize..4) {
        let gpd = Arc::new(torsor_groupoid(&g, n).unwrap());
        let base = ObjectId(base % n);
        let theta = sample_theta(&gpd, base, seed).unwrap();
        let part = theta_concentration(&gpd, &theta).unwrap();
        let m = concentration_monoid(&gpd, &part).unwrap().monoid;
        prop_assert!(m.is_group());
        prop_assert!(are_isomorphic(&m, &g).unwrap());
        let phi = theta_isomorphism(&gpd, &theta).unwrap();
        prop_assert!(phi.is_bijective());
        prop_assert!(are_isomorphic(&vertex_group(&gpd, base).unwrap().0, &g).unwrap());
        let sigma = sample_theta(&gpd, ObjectId(0), seed.wrapping_add(1)).unwrap();
        let rho = gpd.hom(base, ObjectId(0))[0];
        let change = theta_change_functor(&gpd, &theta, &sigma, rho).unwrap();
        let sigma_part = theta_concentration(&gpd, &sigma).unwrap();
        prop_assert!(concentra::concentration::is_concentration_isomorphism(&change, &part, &sigma_part).unwrap());
    }

    #[test]
    fn semidirect_of_cyclic_groups(n in 2usize..=7, m in 1usize..=4, u in 1usize..7) {
        // φ(1) = multiplication by u, which needs u^m ≡ 1 and u a unit
        let u = u % n;
        prop_assume!(gcd(u, n) == 1 && (0..m).fold(1, |acc, _| acc * u % n) == 1 % n);
        let zn = FinMonoid::cyclic(n);
        let zm = FinMonoid::cyclic(m);
        let maps: Vec<Vec<usize>> = (0..m)
            .map(|k| {
                let uk = (0..k).fold(1, |acc, _| acc * u % n);
                (0..n).map(|x| x * uk % n).collect()
            })
            .collect();
        let action = CatAction::from_monoid_action(&zn, &zm, &maps).unwrap();
        let dc = MorphismPartition::discrete(action.fiber());
        let dd = MorphismPartition::discrete(action.base());
        let (sd, part) = semidirect_category(&action, &dc, &dd).unwrap();
        let got = concentration_monoid(&sd.category, &part).unwrap().monoid;
        let phi = induced_action(&action, &dc, &dd).unwrap();
        let expected = semidirect_monoid(&zn, &zm, &phi).unwrap();
        prop_assert!(are_isomorphic(&got, &expected).unwrap());
        // the explicit class map (α, f) ↦ (class α, class f) is an isomorphism
        let classes = part.classes();
        let explicit: Vec<usize> = classes
            .iter()
            .map(|c| {
                let (_, a, f) = sd.triples[c[0].0];
                dc.class_of(a) * m + dd.class_of(f)
            })
            .collect();
        prop_assert!(got.is_isomorphism(&expected, &explicit));
    }

    #[test]
    fn cyclic_chain_limits(steps in prop::collection::vec(1usize..=3, 1..=3), acting in 1usize..=3) {
        // Z/n₀ → Z/n₁ → …, with n_{i+1} = n_i · k_i and x ↦ k_i x
        let mut sizes = vec![2usize];
        for &k in &steps {
            sizes.push(sizes.last().unwrap() * k);
        }
        prop_assume!(sizes.last().unwrap() * acting <= 64);
        let labels: Vec<String> = (0..sizes.len()).map(|i| format!("p{i}")).collect();
        let pairs: Vec<(usize, usize)> = (1..sizes.len()).map(|i| (i - 1, i)).collect();
        let poset = DirectedPoset::from_relations(labels, &pairs).unwrap();
        let registry: Vec<Arc<FinMonoid>> = sizes.iter().map(|&n| Arc::new(FinMonoid::cyclic(n))).collect();
        let mut maps = Vec::new();
        for a in 0..sizes.len() {
            for b in a + 1..sizes.len() {
                let k = sizes[b] / sizes[a];
                maps.push(((a, b), (0..sizes[a]).map(|x| x * k).collect()));
            }
        }
        let diagram = GroupDiagram::new(poset, registry, (0..sizes.len()).collect(), &maps).unwrap();
        let g = Arc::new(FinMonoid::cyclic(acting));
        let action = PosetAction::trivial(diagram.poset(), g.clone());
        let lim = equivariant_direct_limit(&diagram, &action).unwrap();
        let expected = FinMonoid::direct_product(&diagram.classical_limit(), &g);
        prop_assert!(are_isomorphic(&lim, &expected).unwrap());
        let dec = check_semidirect_decomposition(&diagram, &action).unwrap();
        prop_assert!(dec.holds());
        let sg = build_s_g(&diagram, &action).unwrap();
        let sub = subgroup_subcategory(&sg, &[0]);
        prop_assert!(check_closed(&sg.category, &sg.partition, &sub).unwrap());
        let p = diagram.poset();
        for a in 0..p.len() {
            for b in 0..p.len() {
                for x in 0..diagram.group(a).size() {
                    for y in 0..diagram.group(b).size() {
                        let answers: Vec<bool> = p.upper_bounds(a, b).into_iter().map(|c| diagram.agree_at(a, x, b, y, c)).collect();
                        prop_assert!(answers.windows(2).all(|w| w[0] == w[1]));
                    }
                }
            }
        }
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[test]
fn three_concentrations_are_concentrations() {
    let mut checked = 0;
    for (name, c) in small_categories().into_iter().filter(|(_, c)| c.num_morphisms() <= 6) {
        for rgs in set_partitions(c.num_morphisms()) {
            let part = MorphismPartition::from_class_of(&rgs);
            let r = check_concentration(&c, &part, 3).unwrap();
            if r.is_n_concentration(3) {
                assert!(r.is_concentration(), "{name}: {}", part.describe(&c));
            }
            checked += 1;
        }
    }
    assert!(checked > 1000);
}

#[test]
fn class_level_and_witness_level_associativity_agree() {
    for (name, c) in small_categories().into_iter().filter(|(_, c)| c.num_morphisms() <= 8) {
        for rgs in set_partitions(c.num_morphisms()) {
            let part = MorphismPartition::from_class_of(&rgs);
            let r = check_concentration_with(&c, &part, 2, CheckOptions { exhaustive: true }).unwrap();
            if r.associativity != Verdict::NotEvaluated {
                assert_eq!(
                    r.associativity.holds(),
                    r.exhaustive_associativity.as_ref().unwrap().holds(),
                    "{name}: {}",
                    part.describe(&c)
                );
            }
        }
    }
}

#[test]
fn pullback_along_concentrating_functor_recovers_the_structure() {
    for (name, cat, part) in catalog() {
        let conc = concentrating_functor(&cat, &part).unwrap();
        let discrete = MorphismPartition::discrete(&conc.target);
        assert_eq!(pullback_concentration(&conc.functor, &discrete).unwrap(), part, "{name}");
        assert!(induced_hom(&conc.functor, &part, &discrete).unwrap().is_bijective(), "{name}");
    }
}

#[test]
fn groupoid_concentrations_give_groups() {
    let gpds = [
        torsor_groupoid(&FinMonoid::cyclic(2), 2).unwrap(),
        torsor_groupoid(&FinMonoid::cyclic(3), 1).unwrap(),
        torsor_groupoid(&FinMonoid::trivial(), 3).unwrap(),
        FinCategory::one_object(&FinMonoid::klein()),
    ];
    for g in gpds {
        assert!(g.is_groupoid());
        for rgs in set_partitions(g.num_morphisms()) {
            let part = MorphismPartition::from_class_of(&rgs);
            if is_concentration(&g, &part) {
                assert!(concentration_monoid(&g, &part).unwrap().monoid.is_group());
            }
        }
    }
}

#[test]
fn surjective_fibrations_are_two_lifting() {
    let cats: Vec<Arc<FinCategory>> = small_categories()
        .into_iter()
        .filter(|(_, c)| c.num_morphisms() <= 5)
        .map(|(_, c)| Arc::new(c))
        .collect();
    let mut seen = 0;
    for s in &cats {
        for t in &cats {
            for f in all_functors(s, t) {
                let premise = check_surjective_on_morphisms(&f).holds() && check_multivalued_fibration(&f).unwrap().holds();
                if premise {
                    assert!(check_2_lifting(&f).unwrap().holds());
                    seen += 1;
                }
            }
        }
    }
    assert!(seen > 10);
}

#[test]
fn codiscrete_covers() {
    for g in groups().into_iter().filter(|g| g.size() <= 8) {
        let cover = codiscrete_cover(&g).unwrap();
        assert!(cover.cover.is_equivalent_to_trivial());
        assert!(check_surjective_on_morphisms(&cover.projection).holds());
        assert!(check_multivalued_fibration(&cover.projection).unwrap().holds());
        assert!(check_2_lifting(&cover.projection).unwrap().holds());
        let m = concentration_monoid(&cover.cover, &cover.partition).unwrap().monoid;
        assert!(are_isomorphic(&m, &g).unwrap());
    }
}

/// Normal sub-concentrations of one-object categories of groups, from every
/// normal subgroup.
#[test]
fn substructures_and_quotients_match_the_monoid_side() {
    let mut cases: Vec<(Arc<FinCategory>, MorphismPartition, SubcategoryData)> = Vec::new();
    for g in groups().into_iter().filter(|g| g.size() <= 8) {
        let bg = Arc::new(FinCategory::one_object(&g));
        let d = MorphismPartition::discrete(&bg);
        for x in 0..g.size() {
            let mut sub = vec![g.identity()];
            let mut y = x;
            while !sub.contains(&y) {
                sub.push(y);
                y = g.mul(y, x);
            }
            cases.push((bg.clone(), d.clone(), SubcategoryData::new([ObjectId(0)], sub.into_iter().map(MorphismId))));
        }
    }
    let e1 = Arc::new(concentra::fixtures::e1());
    let a = concentra::fixtures::e1_partition(&e1, 'a');
    cases.push((e1.clone(), a.clone(), SubcategoryData::from_labels(&e1, &["D"], &["0_D", "2_D"]).unwrap()));
    cases.push((e1.clone(), a, SubcategoryData::from_labels(&e1, &["D"], &["0_D"]).unwrap()));
    let mut normal = 0;
    for (cat, part, sub) in cases {
        assert!(check_closed(&cat, &part, &sub).unwrap());
        let (s, restricted) = restrict(&cat, &part, &sub).unwrap();
        assert!(induced_hom(&s.inclusion, &restricted, &part).unwrap().is_injective());
        if is_normal_subconcentration(&cat, &part, &sub).unwrap().holds() {
            normal += 1;
            let q = quotient_concentration(&cat, &part, &sub).unwrap();
            assert!(part.refines(&q));
            let m = concentration_monoid(&cat, &part).unwrap().monoid;
            let direct = quotient_by_normal_submonoid(&m, &sub_classes(&part, &sub)).unwrap().monoid;
            let got = concentration_monoid(&cat, &q).unwrap().monoid;
            assert!(are_isomorphic(&got, &direct).unwrap());
        }
    }
    assert!(normal > 10);
}

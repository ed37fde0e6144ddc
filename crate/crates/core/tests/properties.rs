use proptest::prelude::*;

use burghelea::bar::{boundary_cbar, boundary_cprime, phi_g, phi_g_inv, psi, psi_inv};
use burghelea::chain::{q, Tuple};
use burghelea::dehn::{min_l1_filling, presets as cx, FillingMode};
use burghelea::group::presets;
use burghelea::hochschild::{hochschild_boundary, split_by_class};
use burghelea::homotopy::{boundary_e, translate_chain, Transfer};
use burghelea::metric::{conjugacy_class, find_conjugator, CentralizerModel};
use burghelea::norms::{NormFamily, NormKind};
use burghelea::sample::{rng, ElementPool};
use burghelea::{Chain, ChainKind, GroupChain, GroupModel, WordMetric};

fn models() -> Vec<GroupModel> {
    vec![
        presets::cyclic(4),
        presets::symmetric3(),
        presets::dihedral4(),
        presets::free(2),
        presets::free_abelian(2),
        burghelea::parse_group(r#"{"type":"product","factors":[{"type":"free","rank":1},{"type":"finite_perm","degree":3,"generators":[[1,0,2],[0,2,1]]}]}"#)
            .unwrap(),
    ]
}

fn random_chain(pool: &ElementPool, seed: u64, kind: ChainKind, arity: usize, terms: usize) -> GroupChain {
    let mut r = rng(seed);
    let degree = if kind == ChainKind::BarPrime { arity } else { arity - 1 };
    let mut c = Chain::zero(kind, degree);
    for i in 0..terms {
        let t: Tuple = pool.tuple(&mut r, arity);
        c.add_term(t, q(i as i64 % 3 - 1 + 2 * (i as i64 % 2)));
    }
    c
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn group_axioms(m in 0usize..6, seed in any::<u64>()) {
        let model = &models()[m];
        let pool = ElementPool::new(model, 3).unwrap();
        let mut r = rng(seed);
        let t = pool.tuple(&mut r, 3);
        let (a, b, c) = (&t[0], &t[1], &t[2]);
        prop_assert_eq!(model.mul(&model.mul(a, b), c), model.mul(a, &model.mul(b, c)));
        prop_assert_eq!(model.mul(a, &model.identity()), a.clone());
        prop_assert_eq!(model.mul(&model.identity(), a), a.clone());
        prop_assert!(model.is_identity(&model.mul(a, &model.inv(a))));
        let metric = WordMetric::new(model);
        prop_assert_eq!(metric.length(a), metric.length(&model.inv(a)));
        prop_assert!(metric.length(&model.mul(a, b)) <= metric.length(a) + metric.length(b));
        let text = model.format_element(a);
        prop_assert_eq!(model.parse_element(&text).unwrap(), a.clone());
    }

    #[test]
    fn classes_constant_on_conjugates(m in 0usize..6, seed in any::<u64>()) {
        let model = &models()[m];
        let pool = ElementPool::new(model, 3).unwrap();
        let mut r = rng(seed);
        let t = pool.tuple(&mut r, 2);
        let g = model.conjugate(&t[0], &t[1]);
        let cls = conjugacy_class(model, &t[0]);
        prop_assert_eq!(&conjugacy_class(model, &g), &cls);
        let metric = WordMetric::new(model);
        prop_assert!(metric.length(&cls.rep) <= metric.length(&t[0]));
        if let Ok(c) = find_conjugator(model, &t[0], &g, 4) {
            prop_assert_eq!(model.conjugate(&t[0], &c.r), g);
            prop_assert!(c.length <= metric.length(&t[1]));
        }
    }

    #[test]
    fn boundaries_square_to_zero(m in 0usize..6, seed in any::<u64>(), n in 1usize..5) {
        let model = &models()[m];
        let pool = ElementPool::new(model, 2).unwrap();
        let h = random_chain(&pool, seed, ChainKind::Hochschild, n + 1, 4);
        prop_assert!(hochschild_boundary(model, &hochschild_boundary(model, &h).unwrap()).unwrap().is_zero());
        let e = random_chain(&pool, seed, ChainKind::E, n + 1, 4);
        prop_assert!(boundary_e(&boundary_e(&e).unwrap()).unwrap().is_zero());
        let p = random_chain(&pool, seed, ChainKind::BarPrime, n + 1, 4);
        prop_assert!(boundary_cprime(model, &boundary_cprime(model, &p).unwrap()).unwrap().is_zero());
        let c = psi(model, &p).unwrap();
        prop_assert!(boundary_cbar(model, &boundary_cbar(model, &c).unwrap()).unwrap().is_zero());
        prop_assert_eq!(psi_inv(model, &c).unwrap(), p);
    }

    #[test]
    fn splitting_commutes_with_b(m in 0usize..6, seed in any::<u64>(), n in 1usize..4) {
        let model = &models()[m];
        let pool = ElementPool::new(model, 2).unwrap();
        let c = random_chain(&pool, seed, ChainKind::Hochschild, n + 1, 6);
        let parts = split_by_class(model, &c);
        let mut total = Chain::zero(ChainKind::Hochschild, n - 1);
        for (x, part) in &parts {
            let b = hochschild_boundary(model, part).unwrap();
            for (t, _) in b.terms() {
                prop_assert_eq!(&conjugacy_class(model, &model.product(t)), x);
            }
            total.add_assign_unchecked(&b, &q(1));
        }
        prop_assert_eq!(total, hochschild_boundary(model, &c).unwrap());
    }

    #[test]
    fn phi_round_trip(m in 0usize..6, seed in any::<u64>(), n in 0usize..4) {
        let model = &models()[m];
        let pool = ElementPool::new(model, 2).unwrap();
        let mut r = rng(seed);
        let h = pool.draw(&mut r);
        let z = CentralizerModel::new(model, &h);
        let zs: Vec<_> = pool.elements().iter().filter(|g| z.contains(g)).cloned().collect();
        let t: Tuple = (0..n).map(|i| zs[(seed as usize).wrapping_add(i * 7) % zs.len()].clone()).collect();
        let c = Chain::generator(ChainKind::BarPrime, t);
        let x = phi_g(model, &h, &c).unwrap();
        for (u, _) in x.terms() {
            prop_assert_eq!(model.product(u), h.clone());
        }
        prop_assert_eq!(phi_g_inv(model, &h, &x).unwrap(), c);
    }

    #[test]
    fn transfer_maps(m in 0usize..6, seed in any::<u64>(), n in 0usize..3) {
        let model = &models()[m];
        let pool = ElementPool::new(model, 2).unwrap();
        let mut r = rng(seed);
        let h = pool.draw(&mut r);
        let tr = Transfer::new(model, &h);
        let t = pool.tuple(&mut r, n + 1);
        let c = Chain::generator(ChainKind::E, t.clone());
        let p = tr.p_e(&c).unwrap();
        prop_assert_eq!(tr.p_e(&tr.i_e(&p).unwrap()).unwrap(), p.clone());
        let z = CentralizerModel::new(model, &h);
        if let Some(a) = pool.elements().iter().find(|g| z.contains(g) && !model.is_identity(g)) {
            let shifted = translate_chain(model, a, &c);
            prop_assert_eq!(tr.p_e(&shifted).unwrap(), translate_chain(model, a, &p));
            prop_assert_eq!(tr.theta(&shifted).unwrap(), tr.theta(&c).unwrap());
        }
        prop_assert!(tr.homotopy_defect(&c).unwrap().is_zero());
    }

    #[test]
    fn norm_laws(m in 0usize..6, seed in any::<u64>(), k in 0u32..4) {
        let model = &models()[m];
        let pool = ElementPool::new(model, 3).unwrap();
        for kind in [NormKind::HochschildTensor, NormKind::RdChain] {
            let nf = NormFamily::new(model, kind);
            let c = random_chain(&pool, seed, ChainKind::BarEquivariant, 3, 4);
            let d = random_chain(&pool, seed ^ 1, ChainKind::BarEquivariant, 3, 4);
            prop_assert!(nf.norm(&c, k) <= nf.norm(&c, k + 1) || kind == NormKind::RdChain);
            prop_assert!(nf.norm(&c.add(&d).unwrap(), k) <= nf.norm(&c, k) + nf.norm(&d, k));
            prop_assert_eq!(nf.norm(&c.scale(&q(-3)), k), q(3) * nf.norm(&c, k));
        }
    }

    #[test]
    fn lp_lower_bounds_integer_fillings(which in 0usize..4, coeffs in proptest::collection::vec(-1i64..=1, 8)) {
        let x = [cx::triangle(), cx::tetrahedron(), cx::octahedron(), cx::fan(5)][which].clone();
        let top = x.count(2);
        let a: Vec<_> = (0..top).map(|i| q(coeffs[i % coeffs.len()])).collect();
        let filling = x.chain_from_coeffs(2, &a);
        let b = x.boundary(&filling).unwrap();
        let lp = min_l1_filling(&x, &b, FillingMode::RationalLp, 0).unwrap();
        prop_assert!(lp.value <= filling.mass());
        prop_assert_eq!(x.boundary(&lp.witness).unwrap(), b.clone());
        prop_assert_eq!(lp.witness.mass(), lp.value.clone());
        let oracle = min_l1_filling(&x, &b, FillingMode::IntegerOracle, 8).unwrap();
        prop_assert!(lp.value <= oracle.value);
    }
}

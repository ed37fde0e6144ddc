//! Frozen example values, one test per operation.

use burghelea::bar::{boundary_cbar, boundary_cprime, localize_by_composition, localize_to_equivariant, phi_g, phi_g_inv, psi, psi_inv};
use burghelea::chain::{chain_from_json, chain_to_json, q, support_diameter, DiamRule};
use burghelea::dehn::{dehn_function, min_l1_filling, presets as cx, DehnOptions, FillingMode};
use burghelea::filling::{filling_estimate_check, FillingConfig, FillStatus};
use burghelea::group::presets;
use burghelea::hochschild::{hochschild_boundary, homology_ranks, split_by_class};
use burghelea::homotopy::{boundary_e, Transfer};
use burghelea::metric::{centralizer, conjugacy_class, find_conjugator};
use burghelea::norms::{NormFamily, NormKind};
use burghelea::{parse_group, Chain, ChainKind, CosetSection, Error, GroupChain, GroupElement, GroupModel, Localization, WordMetric};

fn el(m: &GroupModel, s: &str) -> GroupElement {
    m.parse_element(s).unwrap()
}

fn tup(m: &GroupModel, parts: &[&str]) -> Vec<GroupElement> {
    parts.iter().map(|s| el(m, s)).collect()
}

fn gen(kind: ChainKind, t: Vec<GroupElement>) -> GroupChain {
    Chain::generator(kind, t)
}

fn chain(kind: ChainKind, degree: usize, terms: Vec<(Vec<GroupElement>, i64)>) -> GroupChain {
    Chain::from_terms(kind, degree, terms.into_iter().map(|(t, x)| (t, q(x)))).unwrap()
}

#[test]
fn group_arithmetic() {
    let f2 = presets::free(2);
    assert_eq!(f2.mul(&el(&f2, "a"), &el(&f2, "A")), f2.identity());
    assert_eq!(f2.inv(&el(&f2, "ab")), el(&f2, "BA"));
    let z2 = presets::free_abelian(2);
    assert_eq!(z2.mul(&el(&z2, "(2,1)"), &el(&z2, "(-1,3)")), el(&z2, "(1,4)"));
    assert_eq!(z2.inv(&el(&z2, "(2,1)")), el(&z2, "(-2,-1)"));
    let z4 = presets::cyclic(4);
    assert_eq!(z4.mul(&el(&z4, "3"), &el(&z4, "2")), el(&z4, "1"));
    assert_eq!(z4.inv(&el(&z4, "3")), el(&z4, "1"));
}

#[test]
fn descriptors() {
    let f2 = parse_group(r#"{"type":"free","rank":2}"#).unwrap();
    assert_eq!(f2.generators().len(), 4);
    let z2 = parse_group(r#"{"type":"free_abelian","rank":2}"#).unwrap();
    assert_eq!(z2.generators().len(), 4);
    let p = parse_group(r#"{"type":"product","factors":[{"type":"free","rank":2},{"type":"free_abelian","rank":1}]}"#).unwrap();
    assert_eq!(p.generators().len(), 6);
    let s3 = parse_group(r#"{"type":"finite_perm","degree":3,"generators":[[1,0,2],[0,2,1]]}"#).unwrap();
    assert_eq!(s3.order(), Some(6));
    let bad = parse_group(r#"{"type":"finite_table","elements":["e","g","h"],"table":[[0,1,2],[1,2,0],[2,0,1]],"generators":["g"]}"#);
    assert!(matches!(bad, Err(Error::NonSymmetricGenerators(_))));
    let bad = parse_group(r#"{"type":"finite_perm","degree":3,"generators":[[0,0,1]]}"#);
    assert!(matches!(bad, Err(Error::MalformedPermutation(_))));
}

#[test]
fn word_lengths_and_balls() {
    let f2 = presets::free(2);
    let m = WordMetric::new(&f2);
    assert_eq!(m.length(&el(&f2, "abA")), 3);
    assert_eq!(m.ball(1).unwrap().len(), 5);
    assert_eq!(m.ball(2).unwrap().len(), 17);
    let z2 = presets::free_abelian(2);
    assert_eq!(WordMetric::new(&z2).length(&el(&z2, "(2,1)")), 3);
    assert_eq!(WordMetric::new(&z2).ball(1).unwrap().len(), 5);
    let s3 = presets::symmetric3();
    assert_eq!(WordMetric::new(&s3).length(&el(&s3, "[2,1,0]")), 3);
}

#[test]
fn classes_centralizers_sections() {
    let f2 = presets::free(2);
    assert_eq!(conjugacy_class(&f2, &el(&f2, "abA")).rep, el(&f2, "b"));
    let s3 = presets::symmetric3();
    let t = conjugacy_class(&s3, &el(&s3, "[2,1,0]"));
    assert_eq!(t, conjugacy_class(&s3, &el(&s3, "[1,0,2]")));
    let z = centralizer(&s3, &el(&s3, "[1,0,2]"));
    assert_eq!(z.elements_within(3).unwrap().len(), 2);
    let za2 = centralizer(&f2, &el(&f2, "aa"));
    for g in WordMetric::new(&f2).ball(4).unwrap() {
        let in_a = match &g {
            GroupElement::Word(w) => w.iter().all(|&l| l.abs() == 1),
            _ => false,
        };
        assert_eq!(za2.contains(&g), in_a);
    }
    let cs = CosetSection::new(&f2, &el(&f2, "a"));
    assert_eq!(cs.section(&el(&f2, "aaab")).unwrap(), el(&f2, "b"));
    assert_eq!(cs.project(&el(&f2, "aaab")).unwrap(), el(&f2, "aaa"));
    assert_eq!(cs.section(&el(&f2, "aa")).unwrap(), f2.identity());
    let z2 = presets::free_abelian(2);
    let cs = CosetSection::new(&z2, &el(&z2, "(1,0)"));
    assert_eq!(cs.section(&el(&z2, "(3,-2)")).unwrap(), z2.identity());
}

#[test]
fn conjugators() {
    let f2 = presets::free(2);
    let c = find_conjugator(&f2, &el(&f2, "b"), &el(&f2, "abA"), 3).unwrap();
    assert_eq!((c.r, c.length), (el(&f2, "A"), 1));
    let s3 = presets::symmetric3();
    // (12) reaches (13) through one generator but (23) needs a 3-cycle.
    let c = find_conjugator(&s3, &el(&s3, "[1,0,2]"), &el(&s3, "[2,1,0]"), 3).unwrap();
    assert_eq!(c.length, 1);
    let c = find_conjugator(&s3, &el(&s3, "[1,0,2]"), &el(&s3, "[0,2,1]"), 3).unwrap();
    assert_eq!(c.length, 2);
    let z2 = presets::free_abelian(2);
    assert_eq!(find_conjugator(&z2, &el(&z2, "(1,1)"), &el(&z2, "(1,1)"), 2).unwrap().length, 0);
    assert!(matches!(
        find_conjugator(&f2, &el(&f2, "a"), &el(&f2, "b"), 2),
        Err(Error::NotConjugate(..))
    ));
}

#[test]
fn chains_and_diameters() {
    let f2 = presets::free(2);
    let c = gen(ChainKind::Hochschild, tup(&f2, &["a", "b"]));
    assert!(c.add(&c.scale(&q(-1))).unwrap().is_zero());
    assert!(c.scale(&q(0)).is_zero());
    let d = gen(ChainKind::Hochschild, tup(&f2, &["b", "a"]));
    assert_eq!(c.add(&d).unwrap().len(), 2);
    let e = gen(ChainKind::E, tup(&f2, &["a"]));
    assert!(matches!(c.add(&e), Err(Error::KindMismatch { .. })));
    let m = WordMetric::new(&f2);
    let x = chain(ChainKind::E, 2, vec![(tup(&f2, &["e", "a", "ab"]), 1)]);
    assert_eq!(support_diameter(&x, &m, DiamRule::MaxPairwise)[0].1, 2);
    let y = gen(ChainKind::E, tup(&f2, &["e", "abb"]));
    assert_eq!(support_diameter(&y, &m, DiamRule::MaxPairwise)[0].1, 3);
    let json = chain_to_json(&f2, &x);
    assert_eq!(chain_from_json(&f2, ChainKind::E, 2, &json).unwrap(), x);
}

#[test]
fn hochschild_examples() {
    let s3 = presets::symmetric3();
    let (s, t) = (el(&s3, "[1,0,2]"), el(&s3, "[0,2,1]"));
    let b = hochschild_boundary(&s3, &gen(ChainKind::Hochschild, vec![s.clone(), t.clone()])).unwrap();
    let want = chain(ChainKind::Hochschild, 0, vec![(vec![s3.mul(&s, &t)], 1), (vec![s3.mul(&t, &s)], -1)]);
    assert_eq!(b, want);
    let z4 = presets::cyclic(4);
    let ab = hochschild_boundary(&z4, &gen(ChainKind::Hochschild, tup(&z4, &["1", "2"]))).unwrap();
    assert!(ab.is_zero());
    let e3 = gen(ChainKind::Hochschild, vec![s3.identity(); 3]);
    assert_eq!(hochschild_boundary(&s3, &e3).unwrap(), gen(ChainKind::Hochschild, vec![s3.identity(); 2]));

    let split = split_by_class(&s3, &gen(ChainKind::Hochschild, vec![s.clone(), t.clone()]));
    assert_eq!(split.len(), 1);
    assert_eq!(split.keys().next().unwrap(), &conjugacy_class(&s3, &s3.mul(&s, &t)));
    let two = chain(ChainKind::Hochschild, 0, vec![(vec![s.clone()], 1), (vec![s3.identity()], 1)]);
    assert_eq!(split_by_class(&s3, &two).len(), 2);
}

#[test]
fn homology_oracles() {
    let ranks = |m: &GroupModel, n| -> Vec<usize> { homology_ranks(m, n, None).unwrap().iter().map(|r| r.betti).collect() };
    assert_eq!(ranks(&presets::cyclic(2), 2), [2, 0, 0]);
    assert_eq!(ranks(&presets::cyclic(4), 1), [4, 0]);
    let s3 = presets::symmetric3();
    let x = conjugacy_class(&s3, &el(&s3, "[1,0,2]"));
    let r: Vec<usize> = homology_ranks(&s3, 1, Some(&x)).unwrap().iter().map(|r| r.betti).collect();
    assert_eq!(r, [1, 0]);
}

#[test]
fn pi_and_iota() {
    let s3 = presets::symmetric3();
    let h = el(&s3, "[1,0,2]");
    let loc = Localization::new(&s3, &h);
    // (13)(123) is a transposition.
    let t = tup(&s3, &["[2,1,0]", "[1,2,0]"]);
    assert_eq!(conjugacy_class(&s3, &s3.product(&t)), conjugacy_class(&s3, &h));
    let out = loc.pi_tuple(&t).unwrap();
    let z = centralizer(&s3, &h);
    assert!(out.iter().all(|g| z.contains(g)));
    assert_eq!(s3.product(&out), h);
    assert_eq!(loc.pi_tuple(&[el(&s3, "[2,1,0]")]).unwrap(), vec![h.clone()]);
    let hc = gen(ChainKind::Hochschild, vec![h.clone()]);
    assert_eq!(loc.iota_h(&hc).unwrap(), hc);
    assert!(loc.iota_h(&Chain::zero(ChainKind::Hochschild, 1)).unwrap().is_zero());
    let f2 = presets::free(2);
    let bad = gen(ChainKind::Hochschild, tup(&f2, &["b", "Ba"]));
    assert!(matches!(Localization::new(&f2, &el(&f2, "a")).iota_h(&bad), Err(Error::OutsideCentralizer(_))));
}

#[test]
fn bar_examples() {
    let f2 = presets::free(2);
    let g = el(&f2, "ab");
    let d1 = boundary_cprime(&f2, &gen(ChainKind::BarPrime, vec![g.clone()])).unwrap();
    assert!(d1.is_zero());
    let d2 = boundary_cprime(&f2, &gen(ChainKind::BarPrime, vec![g.clone(), f2.inv(&g)])).unwrap();
    let want = chain(ChainKind::BarPrime, 1, vec![(vec![f2.inv(&g)], 1), (vec![f2.identity()], -1), (vec![g.clone()], 1)]);
    assert_eq!(d2, want);

    let e = f2.identity();
    let (a, b) = (el(&f2, "a"), el(&f2, "b"));
    assert!(boundary_cbar(&f2, &gen(ChainKind::BarEquivariant, vec![e.clone(), a.clone()])).unwrap().is_zero());
    let d = boundary_cbar(&f2, &gen(ChainKind::BarEquivariant, vec![e.clone(), a.clone(), b.clone()])).unwrap();
    let want = chain(
        ChainKind::BarEquivariant,
        1,
        vec![(vec![e.clone(), el(&f2, "Ab")], 1), (vec![e.clone(), b.clone()], -1), (vec![e.clone(), a.clone()], 1)],
    );
    assert_eq!(d, want);

    let p = psi(&f2, &gen(ChainKind::BarPrime, vec![a.clone(), b.clone()])).unwrap();
    assert_eq!(p, gen(ChainKind::BarEquivariant, tup(&f2, &["e", "a", "ab"])));
    assert_eq!(psi_inv(&f2, &p).unwrap(), gen(ChainKind::BarPrime, vec![a.clone(), b.clone()]));

    let z2 = presets::free_abelian(2);
    let g = el(&z2, "(1,0)");
    let x = phi_g(&z2, &g, &gen(ChainKind::BarPrime, vec![el(&z2, "(0,1)")])).unwrap();
    assert_eq!(x, gen(ChainKind::Hochschild, tup(&z2, &["(1,-1)", "(0,1)"])));
    assert_eq!(phi_g_inv(&z2, &g, &x).unwrap(), gen(ChainKind::BarPrime, vec![el(&z2, "(0,1)")]));
    assert_eq!(
        phi_g(&z2, &g, &gen(ChainKind::BarPrime, vec![])).unwrap(),
        gen(ChainKind::Hochschild, vec![g.clone()])
    );
}

#[test]
fn localization_examples() {
    let z2 = presets::free_abelian(2);
    let h = el(&z2, "(1,1)");
    let loc = Localization::new(&z2, &h);
    let t = tup(&z2, &["(2,0)", "(0,1)", "(-1,0)"]);
    let out = localize_to_equivariant(&loc, &gen(ChainKind::Hochschild, t)).unwrap();
    assert_eq!(out, gen(ChainKind::BarEquivariant, tup(&z2, &["(0,0)", "(0,1)", "(-1,1)"])));
    let point = localize_to_equivariant(&loc, &gen(ChainKind::Hochschild, vec![h.clone()])).unwrap();
    assert_eq!(point, gen(ChainKind::BarEquivariant, vec![z2.identity()]));

    let s3 = presets::symmetric3();
    let loc = Localization::new(&s3, &el(&s3, "[1,0,2]"));
    let x = conjugacy_class(&s3, loc.h());
    for t in burghelea::HochschildComplex::new(&s3, Some(x)).basis(2).unwrap() {
        let c = gen(ChainKind::Hochschild, t);
        assert_eq!(localize_to_equivariant(&loc, &c).unwrap(), localize_by_composition(&loc, &c).unwrap());
    }
}

#[test]
fn e_complex_examples() {
    let f2 = presets::free(2);
    let (a, b) = (el(&f2, "a"), el(&f2, "b"));
    let d = boundary_e(&gen(ChainKind::E, vec![a.clone(), b.clone()])).unwrap();
    assert_eq!(d, chain(ChainKind::E, 0, vec![(vec![b.clone()], 1), (vec![a.clone()], -1)]));
    assert!(boundary_e(&gen(ChainKind::E, vec![a.clone(), a.clone()])).unwrap().is_zero());

    let tr = Transfer::new(&f2, &a);
    let p = tr.p_e(&gen(ChainKind::E, tup(&f2, &["aaab", "a"]))).unwrap();
    assert_eq!(p, gen(ChainKind::E, tup(&f2, &["aaa", "a"])));
    let d0 = tr.d(&gen(ChainKind::E, tup(&f2, &["aaab"]))).unwrap();
    assert_eq!(d0, gen(ChainKind::E, tup(&f2, &["aaa", "aaab"])));
    let d0 = tr.d(&gen(ChainKind::E, tup(&f2, &["aa"]))).unwrap();
    assert_eq!(d0, gen(ChainKind::E, tup(&f2, &["aa", "aa"])));

    let th = tr.theta(&gen(ChainKind::E, vec![b.clone()])).unwrap();
    assert_eq!(th, gen(ChainKind::Hochschild, vec![f2.conjugate(&a, &b)]));
    let t = tup(&f2, &["ab", "b"]);
    let shifted: Vec<_> = t.iter().map(|g| f2.mul(&el(&f2, "aa"), g)).collect();
    assert_eq!(tr.theta_tuple(&t), tr.theta_tuple(&shifted));
}

#[test]
fn norm_examples() {
    let f2 = presets::free(2);
    let ga = NormFamily::new(&f2, NormKind::GroupAlgebra);
    for k in 0..4 {
        assert_eq!(ga.norm(&gen(ChainKind::GroupRing, vec![f2.identity()]), k), q(1));
        assert_eq!(ga.norm(&gen(ChainKind::GroupRing, tup(&f2, &["abA"])), k), q(4i64.pow(k)));
    }
    let rd = NormFamily::new(&f2, NormKind::RdChain);
    let c = gen(ChainKind::BarEquivariant, tup(&f2, &["e", "abb"]));
    assert_eq!(rd.norm(&c, 2), q(9));
    let (n, dn) = rd.rd_chain_seminorm_pair(&c, 2).unwrap();
    assert_eq!((n, dn), (q(9), q(0)));
    let zero = Chain::zero(ChainKind::BarEquivariant, 1);
    assert_eq!(rd.rd_chain_seminorm_pair(&zero, 3).unwrap(), (q(0), q(0)));
}

#[test]
fn dehn_examples() {
    let tri = cx::triangle();
    let cycle = tri.boundary(&tri.chain_from_coeffs(2, &[q(1)])).unwrap();
    assert_eq!(min_l1_filling(&tri, &cycle, FillingMode::RationalLp, 0).unwrap().value, q(1));
    let zero = Chain::zero(ChainKind::Simplicial, 1);
    assert_eq!(min_l1_filling(&tri, &zero, FillingMode::RationalLp, 0).unwrap().value, q(0));
    let oct = cx::octahedron();
    let ring: Vec<_> = (1..=4).map(|i| {
        let (a, b) = (i, 1 + i % 4);
        (oct.simplex_index(&[a.min(b), a.max(b)]).unwrap(), if a < b { 1 } else { -1 })
    }).collect();
    let mut coeffs = vec![q(0); oct.count(1)];
    for (i, s) in ring {
        coeffs[i] = q(s);
    }
    let equator = oct.chain_from_coeffs(1, &coeffs);
    for mode in [FillingMode::RationalLp, FillingMode::IntegerOracle] {
        assert_eq!(min_l1_filling(&oct, &equator, mode, 8).unwrap().value, q(4));
    }
    let tet = dehn_function(&cx::tetrahedron(), 1, 3, &DehnOptions::default()).unwrap();
    assert_eq!(tet.rows[0].value, q(0));
    assert!(tet.rows[3].value >= q(1));
    let fan = cx::fan(6);
    let rim = fan.boundary(&fan.chain_from_coeffs(2, &vec![q(1); 6])).unwrap();
    assert_eq!(min_l1_filling(&fan, &rim, FillingMode::RationalLp, 0).unwrap().value, q(6));
}

#[test]
fn filling_examples() {
    let z2 = presets::free_abelian(2);
    let cfg = FillingConfig {
        degree: 1,
        radius: 2,
        k: 0,
        p_grid: vec![0, 1, 2],
        samples: 8,
        seed: 5,
    };
    let rep = filling_estimate_check(&z2, &cfg).unwrap();
    for row in &rep.rows {
        if row.status == FillStatus::Zero {
            assert!(row.ratio_values.iter().all(|r| r.as_ref().is_some_and(|x| *x == q(0))));
        }
        if let (Some(f), Some(k)) = (&row.fill_value, &row.known_value) {
            assert!(f <= k);
        }
    }
}

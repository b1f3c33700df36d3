//! Kac modules against hand-derived and published identities.

use std::collections::BTreeMap;

use proptest::prelude::*;
use superkac::algebra::{check_super_relations, GeneratorLabel as G, RootDatum, SuperAlgebra, SuperAlgebraSpec};
use superkac::evenrep::{build_even_irrep, weyl_dimension};
use superkac::exactmath::{rat, ParamPoly, PolyMatrix, Rational};
use superkac::kacmod::{
    character, even_character, induce, kac_typicality, singular_vectors, KacModule, RaisingSet, Typicality,
};

fn module(spec: SuperAlgebraSpec, a: &[i64]) -> (SuperAlgebra, KacModule) {
    let alg = SuperAlgebra::new(spec).unwrap();
    let l = build_even_irrep(&alg, a).unwrap();
    let k = induce(&alg, &l).unwrap();
    (alg, k)
}

fn top(k: &KacModule) -> BTreeMap<usize, ParamPoly> {
    BTreeMap::from([(0, ParamPoly::one(&k.rep.params))])
}

fn act(k: &KacModule, word: &[G], v: &BTreeMap<usize, ParamPoly>) -> BTreeMap<usize, ParamPoly> {
    word.iter().rev().fold(v.clone(), |acc, l| k.rep.matrix(*l).unwrap().apply(&acc))
}

#[test]
fn root_counts() {
    let d = RootDatum::new(SuperAlgebraSpec::sl(3, 2).unwrap());
    assert_eq!(d.num_odd(), 6);
    assert_eq!(d.even_rank(), 3);
    for spec in [SuperAlgebraSpec::sl(2, 1).unwrap(), SuperAlgebraSpec::gl(2, 3).unwrap()] {
        let d = RootDatum::new(spec);
        assert_eq!(d.num_odd(), spec.m * spec.n);
        for i in 1..=d.num_odd() {
            let beta: Vec<Rational> = d.odd_root_weight(i).iter().map(|x| rat(*x, 1)).collect();
            assert_eq!(d.bilinear_form(&beta, &beta), rat(0, 1), "odd roots are isotropic");
        }
    }
}

#[test]
fn weyl_dimensions() {
    let sl21 = RootDatum::new(SuperAlgebraSpec::sl(2, 1).unwrap());
    let sl31 = RootDatum::new(SuperAlgebraSpec::sl(3, 1).unwrap());
    assert_eq!(weyl_dimension(&sl21, &[5]).unwrap(), 6.into());
    assert_eq!(weyl_dimension(&sl31, &[1, 0]).unwrap(), 3.into());
    assert_eq!(weyl_dimension(&sl31, &[1, 1]).unwrap(), 8.into());
    assert_eq!(weyl_dimension(&sl31, &[0, 0]).unwrap(), 1.into());
    let alg = SuperAlgebra::new(SuperAlgebraSpec::sl(3, 1).unwrap()).unwrap();
    assert_eq!(build_even_irrep(&alg, &[1, 1]).unwrap().dim(), 8);
}

/// `e f^n Lambda = n (a - n + 1) f^(n-1) Lambda` on the sl(2) factor.
#[test]
fn sl2_lowering_ladder() {
    for a in 0..=4i64 {
        let (_, k) = module(SuperAlgebraSpec::sl(2, 1).unwrap(), &[a]);
        let mut prev = top(&k);
        for n in 1..=a {
            let cur = act(&k, &[G::F(1)], &prev);
            let lhs = act(&k, &[G::E(1)], &cur);
            let rhs: BTreeMap<usize, ParamPoly> =
                prev.iter().map(|(i, p)| (*i, p.scale(&rat(n * (a - n + 1), 1)))).collect();
            assert_eq!(lhs, rhs, "a={a} n={n}");
            prev = cur;
        }
        assert!(act(&k, &[G::F(1)], &prev).is_empty(), "f^(a+1) Lambda = 0 in L");
    }
}

#[test]
fn odd_pair_acts_by_b() {
    for (spec, a) in [(SuperAlgebraSpec::sl(2, 1).unwrap(), vec![0]), (SuperAlgebraSpec::sl(3, 1).unwrap(), vec![1, 0])]
    {
        let (_, k) = module(spec, &a);
        let b = ParamPoly::var(&k.rep.params, "b").unwrap();
        assert_eq!(act(&k, &[G::U(1), G::V(1)], &top(&k)), BTreeMap::from([(0, b)]));
        for j in 1..=k.num_odd {
            assert!(act(&k, &[G::U(j)], &top(&k)).is_empty());
        }
    }
}

/// `omega = (a f v - (a+1) v f) Lambda` is annihilated by `e` for every b.
#[test]
fn even_highest_weight_omega() {
    for a in 1..=3i64 {
        let (_, k) = module(SuperAlgebraSpec::sl(2, 1).unwrap(), &[a]);
        let fv = act(&k, &[G::F(1), G::V(1)], &top(&k));
        let vf = act(&k, &[G::V(1), G::F(1)], &top(&k));
        let mut omega = BTreeMap::new();
        for (i, p) in fv
            .iter()
            .map(|(i, p)| (*i, p.scale(&rat(a, 1))))
            .chain(vf.iter().map(|(i, p)| (*i, p.scale(&rat(-(a + 1), 1)))))
        {
            let e: &mut ParamPoly = omega.entry(i).or_insert_with(|| ParamPoly::zero(&k.rep.params));
            *e = &*e + &p;
        }
        omega.retain(|_, p| !p.is_zero());
        assert!(!omega.is_empty());
        assert!(act(&k, &[G::E(1)], &omega).is_empty(), "a={a}");
        // It spans the even-only singular space of its weight at any b.
        let w = k.rep.basis[*omega.keys().next().unwrap()].weight.clone();
        let found: Vec<_> = singular_vectors(&k, &rat(5, 7), RaisingSet::EvenOnly)
            .unwrap()
            .into_iter()
            .filter(|s| s.weight == w)
            .collect();
        assert_eq!(found.len(), 1);
        let coeffs: BTreeMap<usize, Rational> = found[0].coefficients.iter().cloned().collect();
        assert_eq!(coeffs.keys().collect::<Vec<_>>(), omega.keys().collect::<Vec<_>>());
        let (i0, c0) = coeffs.iter().next().unwrap();
        let scale = omega[i0].constant_value().unwrap() / c0;
        for (i, c) in &coeffs {
            assert_eq!(omega[i].constant_value().unwrap(), c * &scale);
        }
    }
}

#[test]
fn dimensions_and_layers() {
    let (_, k) = module(SuperAlgebraSpec::sl(2, 1).unwrap(), &[0]);
    assert_eq!(k.dim(), 4);
    let y = k.rep.matrix(G::Y).unwrap();
    let one = ParamPoly::one(&k.rep.params);
    let diag: Vec<ParamPoly> = (0..4).map(|i| y.get(i, i)).collect();
    assert_eq!(diag, vec![k.y0.clone(), &k.y0 - &one, &k.y0 - &one, &(&k.y0 - &one) - &one]);
    assert_eq!(module(SuperAlgebraSpec::sl(2, 1).unwrap(), &[1]).1.dim(), 8);
    let (_, k) = module(SuperAlgebraSpec::sl(3, 1).unwrap(), &[0, 0]);
    let mut layers = [0; 4];
    for b in &k.rep.basis {
        layers[b.layer()] += 1;
    }
    assert_eq!(layers, [1, 3, 3, 1]);
}

/// Weight multiplicities are those of `prod (1 + e^-beta) ch L`.
#[test]
fn character_factorizes() {
    for (spec, a) in [
        (SuperAlgebraSpec::sl(2, 1).unwrap(), vec![2]),
        (SuperAlgebraSpec::sl(3, 1).unwrap(), vec![1, 0]),
        (SuperAlgebraSpec::gl(2, 3).unwrap(), vec![1, 0, 1]),
    ] {
        let alg = SuperAlgebra::new(spec).unwrap();
        let l = build_even_irrep(&alg, &a).unwrap();
        let k = induce(&alg, &l).unwrap();
        let mut expect = even_character(&l);
        for i in 1..=alg.datum.num_odd() {
            let beta = alg.datum.odd_root_weight(i);
            let mut next = expect.clone();
            for (w, m) in &expect {
                let shifted: Vec<i64> = w.iter().zip(&beta).map(|(x, y)| x - y).collect();
                *next.entry(shifted).or_insert(0) += m;
            }
            expect = next;
        }
        assert_eq!(character(&k), expect, "{spec}");
    }
}

#[test]
fn sl21_atypicality_points() {
    for a in 0..=2i64 {
        let (alg, k) = module(SuperAlgebraSpec::sl(2, 1).unwrap(), &[a]);
        let t = kac_typicality(&alg, &k).unwrap();
        let mut want = vec![rat(-a - 1, 1), rat(0, 1)];
        want.sort();
        assert_eq!(t.factor_roots, want);
        assert_eq!(t.s_roots, want);
        assert_eq!(t.classify(&rat(5, 7)).unwrap(), Typicality::Typical);
        assert_eq!(t.classify(&rat(0, 1)).unwrap(), Typicality::Atypical(vec![1]));
        if a == 1 {
            let s = t.s.substitute(&BTreeMap::from([("b".into(), rat(5, 7))])).unwrap();
            assert!(!s.is_zero());
        }
    }
}

/// `Lambda - beta_i` is atypical of type i whenever `Lambda` is.
#[test]
fn secondary_weight_stays_atypical() {
    for (spec, a) in [(SuperAlgebraSpec::sl(2, 1).unwrap(), vec![1]), (SuperAlgebraSpec::sl(3, 1).unwrap(), vec![1, 0])]
    {
        let (alg, k) = module(spec, &a);
        let d = &alg.datum;
        let t = kac_typicality(&alg, &k).unwrap();
        for root in &t.factor_roots {
            let Typicality::Atypical(types) = t.classify(root).unwrap() else { panic!("root is atypical") };
            let bind = BTreeMap::from([("b".to_string(), root.clone())]);
            let lambda: Vec<Rational> = d
                .highest_weight(&a, &k.rep.params)
                .unwrap()
                .iter()
                .map(|p| p.substitute(&bind).unwrap().constant_value().unwrap())
                .collect();
            for i in types {
                let beta: Vec<Rational> = d.odd_root_weight(i).iter().map(|x| rat(*x, 1)).collect();
                let shifted: Vec<Rational> =
                    lambda.iter().zip(d.rho()).zip(&beta).map(|((l, r), b)| l + r - b).collect();
                assert_eq!(d.bilinear_form(&shifted, &beta), rat(0, 1));
            }
        }
    }
}

#[test]
fn zeroed_u_is_reported() {
    let (alg, mut k) = module(SuperAlgebraSpec::sl(2, 1).unwrap(), &[1]);
    let dim = k.dim();
    let space = k.rep.params.clone();
    k.rep.matrices.insert(G::U(1), PolyMatrix::zeros(&space, dim, dim));
    let r = check_super_relations(&k.rep, &alg.constants).unwrap();
    assert!(!r.passed);
    assert!(r.checks.iter().any(|c| !c.passed && c.name == "[u1, v1]"));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn relations_at_rational_b(p in -20i64..=20, q in 1i64..=9, gl in any::<bool>()) {
        let spec = if gl { SuperAlgebraSpec::gl(2, 1).unwrap() } else { SuperAlgebraSpec::sl(2, 1).unwrap() };
        let (alg, k) = module(spec, &[1]);
        let mut bind = BTreeMap::from([("b".to_string(), rat(p, q))]);
        if gl {
            bind.insert("c".into(), rat(q, 3));
        }
        let rep = k.rep.substitute(&bind).unwrap();
        prop_assert!(check_super_relations(&rep, &alg.constants).unwrap().passed);
    }
}

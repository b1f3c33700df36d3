//! Replications, twists, their invariants and the Heisenberg action.

use std::collections::BTreeMap;

use superkac::algebra::{GeneratorLabel as G, SuperAlgebra, SuperAlgebraSpec};
use superkac::evenrep::build_even_irrep;
use superkac::exactmath::{rat, ParamPoly, PolyMatrix, Rational};
use superkac::heisenberg::{build_heisenberg, phi_map, rho_family};
use superkac::kacmod::{induce, KacModule};
use superkac::matryoshka::{
    jordan_minpoly_profile, odd_derivative, replicate, replicate_unchecked, rescale_conjugation_check,
    self_extension_iso_decision, twist, upsilon_extract, CartanElement, IsoWitness, ReplicationSpec, TwistSpec,
};

fn module(spec: SuperAlgebraSpec, a: &[i64]) -> (SuperAlgebra, KacModule) {
    let alg = SuperAlgebra::new(spec).unwrap();
    let l = build_even_irrep(&alg, a).unwrap();
    let k = induce(&alg, &l).unwrap();
    (alg, k)
}

fn quartet() -> (SuperAlgebra, KacModule) {
    module(SuperAlgebraSpec::sl(2, 1).unwrap(), &[0])
}

fn y_only() -> CartanElement {
    vec![(G::Y, rat(1, 1))]
}

fn at(b: Rational) -> BTreeMap<String, Rational> {
    BTreeMap::from([("b".to_string(), b)])
}

#[test]
fn single_copy_is_the_module() {
    let (alg, k) = quartet();
    let d = odd_derivative(&k, &alg.constants).unwrap();
    let r = replicate(&k, &d, &ReplicationSpec::uniform(1).unwrap()).unwrap();
    assert_eq!(r.rep.matrices, k.rep.matrices);
}

#[test]
fn doubling_block_layout() {
    let (alg, k) = module(SuperAlgebraSpec::sl(2, 1).unwrap(), &[1]);
    let d = odd_derivative(&k, &alg.constants).unwrap();
    let r = replicate(&k, &d, &ReplicationSpec::uniform(2).unwrap()).unwrap();
    let space = &k.rep.params;
    assert_eq!(r.block(G::Y, 0, 1).unwrap(), PolyMatrix::identity(space, k.dim()));
    for j in 1..=k.num_odd {
        assert_eq!(r.block(G::U(j), 0, 1).unwrap(), d.matrices[&G::U(j)].embed(space).unwrap());
        assert!(r.block(G::V(j), 0, 1).unwrap().is_zero());
    }
    for l in [G::H(1), G::E(1), G::F(1)] {
        assert!(r.block(l, 0, 1).unwrap().is_zero());
    }
    for l in k.rep.matrices.keys() {
        assert!(r.block(*l, 1, 0).unwrap().is_zero());
    }
}

#[test]
fn derivative_is_b_free_and_normalized() {
    let (alg, k) = quartet();
    let d = odd_derivative(&k, &alg.constants).unwrap();
    for m in d.matrices.values() {
        assert!(m.is_parameter_free());
    }
    // u1 (v1 Lambda) = b Lambda differentiates to u'1 (v1 Lambda) = k Lambda.
    let v1_top = k.rep.matrix(G::V(1)).unwrap().apply(&BTreeMap::from([(0, ParamPoly::one(&k.rep.params))]));
    let u1p = d.matrices[&G::U(1)].embed(&k.rep.params).unwrap();
    assert_eq!(u1p.apply(&v1_top), BTreeMap::from([(0, ParamPoly::constant(&k.rep.params, d.k.clone()))]));
}

#[test]
fn derivative_identity_at_typical_and_atypical_b() {
    let (alg, k) = quartet();
    let d = odd_derivative(&k, &alg.constants).unwrap();
    for b in [rat(0, 1), rat(-1, 1), rat(5, 7)] {
        for i in 1..=k.num_odd {
            let up = d.matrices[&G::U(i)].to_rational().unwrap();
            for j in 1..=k.num_odd {
                let v = k.rep.matrix(G::V(j)).unwrap().substitute(&at(b.clone())).unwrap().to_rational().unwrap();
                let anti = up.mul(&v);
                let anti2 = v.mul(&up);
                for r in 0..k.dim() {
                    for c in 0..k.dim() {
                        let x = anti.get(r, c) + anti2.get(r, c);
                        let want = if i == j && r == c { d.k.clone() } else { rat(0, 1) };
                        assert_eq!(x, want, "b={b} i={i} j={j} ({r},{c})");
                    }
                }
            }
        }
    }
}

#[test]
fn rescaling_conjugations() {
    let (alg, k) = quartet();
    let d = odd_derivative(&k, &alg.constants).unwrap();
    for l in [rat(1, 1), rat(2, 1), rat(-3, 5)] {
        assert!(rescale_conjugation_check(&k, &d, &l).unwrap().passed, "lambda = {l}");
    }
}

#[test]
fn minimal_polynomial_profiles() {
    let (alg, k) = quartet();
    let d = odd_derivative(&k, &alg.constants).unwrap();
    let base = jordan_minpoly_profile(&k.rep, &y_only(), &at(rat(5, 7))).unwrap();
    assert!(base.values().all(|d| *d == 1));
    let r3 = replicate(&k, &d, &ReplicationSpec::new(3, vec![rat(1, 1), rat(1, 1)]).unwrap()).unwrap();
    let p3 = jordan_minpoly_profile(&r3.rep, &y_only(), &at(rat(5, 7))).unwrap();
    assert_eq!(p3.keys().collect::<Vec<_>>(), base.keys().collect::<Vec<_>>());
    assert!(p3.values().all(|d| *d == 3));
    let split = replicate_unchecked(&k, &d, &[rat(0, 1)]).unwrap();
    let p = jordan_minpoly_profile(&split.rep, &y_only(), &at(rat(5, 7))).unwrap();
    assert!(p.values().all(|d| *d == 1), "a zero coupling splits the extension");
}

#[test]
fn central_twist_on_gl() {
    let (alg, k) = module(SuperAlgebraSpec::gl(2, 1).unwrap(), &[0]);
    let r = twist(&k, &alg.constants, &TwistSpec::new(2, rat(0, 1), rat(1, 1)).unwrap()).unwrap();
    assert_eq!(r.block(G::Z0, 0, 1).unwrap(), PolyMatrix::identity(&k.rep.params, k.dim()));
    for l in k.rep.matrices.keys().filter(|l| **l != G::Z0) {
        assert!(r.block(*l, 0, 1).unwrap().is_zero(), "{l}");
    }
    assert!(TwistSpec::new(2, rat(0, 1), rat(0, 1)).is_err());
    let (sl_alg, sl_k) = quartet();
    assert!(twist(&sl_k, &sl_alg.constants, &TwistSpec::new(2, rat(0, 1), rat(1, 1)).unwrap()).is_err());
}

#[test]
fn upsilon_reads_the_direction() {
    let (alg, k) = module(SuperAlgebraSpec::gl(2, 1).unwrap(), &[1]);
    let d = odd_derivative(&k, &alg.constants).unwrap();
    let doubled = replicate(&k, &d, &ReplicationSpec::uniform(2).unwrap()).unwrap();
    let ups = upsilon_extract(&doubled).unwrap();
    assert!(ups.annihilates_h_double_prime());
    assert_eq!(ups.prime_part(), (rat(1, 1), rat(0, 1)));
    for nu in [(rat(1, 1), rat(2, 1)), (rat(-3, 5), rat(0, 1)), (rat(0, 1), rat(4, 1))] {
        let r = twist(&k, &alg.constants, &TwistSpec::new(2, nu.0.clone(), nu.1.clone()).unwrap()).unwrap();
        let ups = upsilon_extract(&r).unwrap();
        assert!(ups.annihilates_h_double_prime());
        assert_eq!(ups.prime_part(), nu);
    }
}

#[test]
fn isomorphism_decisions() {
    let (alg, k) = module(SuperAlgebraSpec::gl(2, 1).unwrap(), &[0]);
    let bind = BTreeMap::from([("b".to_string(), rat(5, 7)), ("c".to_string(), rat(0, 1))]);
    let nu = (rat(1, 1), rat(-1, 2));
    let same = self_extension_iso_decision(&k, &alg.constants, &nu, &nu, 2, &bind).unwrap();
    assert!(same.isomorphic);
    assert_eq!(
        same.witness,
        IsoWitness::Conjugation { scale: rat(1, 1), q_diagonal: vec![rat(1, 1), rat(1, 1)], verified: true }
    );
    let double = (rat(2, 1), rat(-1, 1));
    let dec = self_extension_iso_decision(&k, &alg.constants, &double, &nu, 3, &bind).unwrap();
    assert!(dec.isomorphic);
    assert!(matches!(dec.witness, IsoWitness::Conjugation { verified: true, .. }));
    for n in [2, 3] {
        let dec =
            self_extension_iso_decision(&k, &alg.constants, &(rat(1, 1), rat(0, 1)), &(rat(0, 1), rat(1, 1)), n, &bind)
                .unwrap();
        assert!(!dec.isomorphic);
        let IsoWitness::MinimalPolynomial { degree_nu, degree_mu, .. } = dec.witness else { panic!("witness") };
        // h kills nu, so it is semisimple on the nu-twist and a full Jordan block on the mu-twist.
        assert_eq!((degree_nu, degree_mu), (1, n));
    }
    let dec =
        self_extension_iso_decision(&k, &alg.constants, &(rat(1, 1), rat(0, 1)), &(rat(0, 1), rat(1, 1)), 1, &bind)
            .unwrap();
    assert_eq!(dec.witness, IsoWitness::TrivialLength { verified: true });
}

#[test]
fn heisenberg_brackets() {
    for spec in [SuperAlgebraSpec::sl(2, 1).unwrap(), SuperAlgebraSpec::gl(2, 1).unwrap()] {
        let alg = SuperAlgebra::new(spec).unwrap();
        let h = build_heisenberg(&alg).unwrap();
        let k = alg.constants.k().unwrap();
        assert!(h.constants.check_super_jacobi().passed);
        assert!(h.check_two_step_nilpotent().passed);
        for i in 1..=alg.datum.num_odd() {
            for j in 1..=alg.datum.num_odd() {
                assert!(h.constants.bracket(G::U(i), G::U(j)).is_empty());
            }
        }
        let uv = h.constants.bracket(G::U(1), G::V(1));
        assert_eq!(uv.get(&G::Y), Some(&k));
        assert!(uv.keys().all(|l| matches!(l, G::Y | G::Z0)), "{spec}: {uv:?}");
        // Odd brackets and y are supertraceless while str(z0) = m - n, so no z0 term.
        assert!(!uv.contains_key(&G::Z0));
    }
}

#[test]
fn rho_family_endpoints() {
    let (alg, k) = module(SuperAlgebraSpec::gl(2, 1).unwrap(), &[1]);
    let spec = TwistSpec::new(3, rat(1, 1), rat(2, 1)).unwrap();
    let rho = rho_family(&k, &alg, &spec).unwrap();
    let tw = twist(&k, &alg.constants, &spec).unwrap();
    let zero = BTreeMap::from([("t".to_string(), rat(0, 1))]);
    let one = BTreeMap::from([("t".to_string(), rat(1, 1))]);
    for (l, m) in &rho.rep.matrices {
        assert!(m.degree_in("t").unwrap() <= 1);
        let at_one = m.substitute(&one).unwrap();
        assert_eq!(at_one, tw.rep.matrix(*l).unwrap().embed(m.space()).unwrap(), "{l} at t = 1");
        let at_zero = m.substitute(&zero).unwrap();
        for p in 0..3 {
            for q in 0..3 {
                let d = k.dim();
                let idx: Vec<usize> = (p * d..(p + 1) * d).collect();
                let jdx: Vec<usize> = (q * d..(q + 1) * d).collect();
                let block = at_zero.submatrix(&idx, &jdx);
                assert_eq!(block.is_zero(), p != q || k.rep.matrix(*l).unwrap().is_zero(), "{l} ({p},{q}) at t = 0");
            }
        }
    }
    let h = build_heisenberg(&alg).unwrap();
    let phi = phi_map(&rho, &h).unwrap();
    assert_eq!(phi.rep.dim(), (1 << alg.datum.num_odd()) * 3 * 2);
}

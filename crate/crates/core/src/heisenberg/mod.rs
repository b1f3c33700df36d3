//! The superalgebra `H = g_-1 + h' + g_1` whose only nonzero brackets are
//! `[a_-, a_+] = iota'([a_-, a_+])`, with `iota'` the projection of the even
//! part onto its centre `h'` along the derived subalgebra. `H` acts on a
//! twisted Kac module through the t-derivative of the family `rho_t`.

use std::collections::BTreeMap;

use crate::algebra::{check_super_relations, Expansion, GeneratorLabel, StructureConstants, SuperAlgebra};
use crate::error::{Error, Result};
use crate::evenrep::EvenModule;
use crate::exactmath::{row_reduce, ParamPoly, PolyMatrix, Rational};
use crate::kacmod::induce_generic;
use crate::kacmod::KacModule;
use crate::matryoshka::{twist_family, ReplicatedModule, TwistSpec};
use crate::report::{CheckResult, Locator, VerificationReport};
use crate::representation::{BasisInfo, Representation};

#[derive(Clone, Debug)]
pub struct HeisenbergSpec {
    pub constants: StructureConstants,
}

impl HeisenbergSpec {
    /// The basis of `h'`: `y`, and `z0` for `gl`.
    pub fn center(&self) -> Vec<GeneratorLabel> {
        self.constants.even_labels()
    }

    /// `[[x, y], z] = 0` for all generators.
    pub fn check_two_step_nilpotent(&self) -> CheckResult {
        let labels = self.constants.labels();
        for &a in labels {
            for &b in labels {
                let ab = self.constants.bracket(a, b);
                for &c in labels {
                    let e = self
                        .constants
                        .bracket_expansion(&ab, &Expansion::from([(c, Rational::from_integer(1.into()))]));
                    if !e.is_empty() {
                        return CheckResult::fail("two-step nilpotent").with_locator(Locator {
                            generators: vec![a.to_string(), b.to_string(), c.to_string()],
                            ..Default::default()
                        });
                    }
                }
            }
        }
        CheckResult::pass("two-step nilpotent")
    }
}

/// Keeps the `y`/`z0` part of an even expansion; `h_i`, `e`, `f` span the
/// derived subalgebra of the even part.
pub fn iota_prime(e: &Expansion) -> Expansion {
    e.iter()
        .filter(|(l, _)| matches!(l, GeneratorLabel::Y | GeneratorLabel::Z0))
        .map(|(l, c)| (*l, c.clone()))
        .collect()
}

pub fn build_heisenberg(alg: &SuperAlgebra) -> Result<HeisenbergSpec> {
    let sc = &alg.constants;
    let mut labels: Vec<GeneratorLabel> =
        sc.labels().iter().copied().filter(|l| matches!(l, GeneratorLabel::Y | GeneratorLabel::Z0)).collect();
    labels.extend(sc.odd_raising());
    labels.extend(sc.odd_lowering());
    let mut table = BTreeMap::new();
    for &u in &sc.odd_raising() {
        for &v in &sc.odd_lowering() {
            let e = iota_prime(&sc.bracket(u, v));
            table.insert((u, v), e.clone());
            table.insert((v, u), e);
        }
    }
    Ok(HeisenbergSpec { constants: StructureConstants::from_table(labels, table)? })
}

/// `rho_t`: the twist with its block superdiagonal scaled by `t`.
pub fn rho_family(k: &KacModule, alg: &SuperAlgebra, spec: &TwistSpec) -> Result<ReplicatedModule> {
    twist_family(k, &alg.constants, spec)
}

/// Generators of `H` acting on the twisted module.
#[derive(Clone, Debug)]
pub struct HModule {
    pub blocks: usize,
    pub block_dim: usize,
    pub rep: Representation,
}

fn t_derivative(m: &PolyMatrix) -> Result<PolyMatrix> {
    let space = m.space().clone();
    m.coefficient("t", 1)?.embed(&space)
}

fn check_affine(rho: &ReplicatedModule) -> Result<()> {
    for (l, m) in &rho.rep.matrices {
        let d = m.degree_in("t")?;
        if d > 1 {
            return Err(Error::Structural(format!("rho_t({l}) has degree {d} in t")));
        }
    }
    Ok(())
}

/// `phi(a_-) = rho_0(a_-)`, `phi(a_+) = rho'(a_+)`, `phi(h) = rho'(h)`.
pub fn phi_map(rho: &ReplicatedModule, h: &HeisenbergSpec) -> Result<HModule> {
    check_affine(rho)?;
    let t0 = BTreeMap::from([("t".to_string(), Rational::from_integer(0.into()))]);
    let mut matrices = BTreeMap::new();
    for &l in h.constants.labels() {
        let m = rho.rep.matrix(l)?;
        let phi = match l {
            GeneratorLabel::V(_) => m.substitute(&t0)?,
            _ => t_derivative(m)?,
        };
        matrices.insert(l, phi);
    }
    Ok(HModule {
        blocks: rho.blocks,
        block_dim: rho.block_dim,
        rep: Representation { params: rho.rep.params.clone(), matrices, basis: rho.rep.basis.clone() },
    })
}

fn zero_check(name: &str, m: &PolyMatrix, gens: Vec<String>) -> CheckResult {
    match m.first_nonzero() {
        None => CheckResult::pass(name),
        Some((r, c, p)) => CheckResult::fail(name)
            .with_locator(Locator { generators: gens, entry: Some((r, c)), ..Default::default() })
            .with_residual(p.to_string()),
    }
}

/// Super-relations of `phi` against the `H` table, with the individual
/// bracket families reported separately.
pub fn check_phi_representation(phi: &HModule, h: &HeisenbergSpec) -> Result<VerificationReport> {
    let mut report = VerificationReport::new();
    let labels = h.constants.labels();
    let m = |l: GeneratorLabel| phi.rep.matrix(l);
    let lowering = h.constants.odd_lowering();
    let upper: Vec<GeneratorLabel> = labels.iter().copied().filter(|l| !matches!(l, GeneratorLabel::V(_))).collect();
    let mut family = |name: &str, pairs: Vec<(GeneratorLabel, GeneratorLabel)>| -> Result<()> {
        let mut result = CheckResult::pass(name);
        for (a, b) in pairs {
            let br = m(a)?.supercommutator(m(b)?, a.is_odd() && b.is_odd())?;
            let c = zero_check(name, &br, vec![a.to_string(), b.to_string()]);
            if !c.passed {
                result = c;
                break;
            }
        }
        report.push(result);
        Ok(())
    };
    let pairs = |xs: &[GeneratorLabel], ys: &[GeneratorLabel]| -> Vec<(GeneratorLabel, GeneratorLabel)> {
        xs.iter().flat_map(|a| ys.iter().map(move |b| (*a, *b))).collect()
    };
    family("[phi(a-), phi(b-)] = 0", pairs(&lowering, &lowering))?;
    family("[phi(a), phi(b)] = 0 on g1 + h'", pairs(&upper, &upper))?;
    family("[phi(h), phi(a-)] = 0", pairs(&h.center(), &lowering))?;
    let mut mixed = CheckResult::pass("[phi(a-), phi(a+)] = phi(iota'[a-, a+])");
    'outer: for &v in &lowering {
        for &u in &h.constants.odd_raising() {
            let mut res = m(v)?.supercommutator(m(u)?, true)?;
            for (l, c) in h.constants.bracket(v, u) {
                res = res.try_sub(&m(l)?.scale(&c))?;
            }
            let c = zero_check("[phi(a-), phi(a+)] = phi(iota'[a-, a+])", &res, vec![v.to_string(), u.to_string()]);
            if !c.passed {
                mixed = c;
                break 'outer;
            }
        }
    }
    report.push(mixed);
    report.extend(check_super_relations(&phi.rep, &h.constants)?);
    Ok(report)
}

/// `[rho_t(a), rho'(b)] + [rho'(a), rho_t(b)] = rho'([a, b])` as a polynomial
/// identity in `t`, for every pair of generators of `g`.
pub fn check_mixed_identity(rho: &ReplicatedModule, sc: &StructureConstants) -> Result<VerificationReport> {
    check_affine(rho)?;
    let deriv: BTreeMap<GeneratorLabel, PolyMatrix> =
        rho.rep.matrices.iter().map(|(l, m)| Ok((*l, t_derivative(m)?))).collect::<Result<_>>()?;
    let mut report = VerificationReport::new();
    let mut result = CheckResult::pass("mixed derivative identity");
    let labels = sc.labels();
    'outer: for (i, &a) in labels.iter().enumerate() {
        for &b in &labels[i..] {
            let odd = a.is_odd() && b.is_odd();
            let ra = rho.rep.matrix(a)?;
            let rb = rho.rep.matrix(b)?;
            let mut res = ra.supercommutator(&deriv[&b], odd)?.try_add(&deriv[&a].supercommutator(rb, odd)?)?;
            for (l, c) in sc.bracket(a, b) {
                res = res.try_sub(&deriv[&l].scale(&c))?;
            }
            let c = zero_check("mixed derivative identity", &res, vec![a.to_string(), b.to_string()]);
            if !c.passed {
                result = c;
                break 'outer;
            }
        }
    }
    report.push(result.with_detail(format!("{} generators", labels.len())));
    let mut derived = CheckResult::pass("rho' vanishes on the derived even subalgebra");
    for (l, d) in &deriv {
        if matches!(l, GeneratorLabel::H(_) | GeneratorLabel::E(_) | GeneratorLabel::F(_)) && !d.is_zero() {
            derived = zero_check("rho' vanishes on the derived even subalgebra", d, vec![l.to_string()]);
            break;
        }
    }
    report.push(derived);
    Ok(report)
}

/// Builds `K_H(L', n, nu)` directly by inducing over `H` from
/// `L' (x) J_n(nu)`, where `h'` acts on `L'` by zero.
pub fn induce_kh(h: &HeisenbergSpec, alg: &SuperAlgebra, l: &EvenModule, spec: &TwistSpec) -> Result<Representation> {
    let space = l.params.with("t")?;
    let (n, dl) = (spec.n(), l.dim());
    let shift = |coef: &Rational| {
        let mut s = PolyMatrix::zeros(&space, n * dl, n * dl);
        for p in 0..n - 1 {
            for w in 0..dl {
                s.set(p * dl + w, (p + 1) * dl + w, ParamPoly::constant(&space, coef.clone()));
            }
        }
        s
    };
    let (nu_y, nu_z) = spec.nu();
    let mut matrices = BTreeMap::from([(GeneratorLabel::Y, shift(nu_y))]);
    if h.constants.contains(GeneratorLabel::Z0) {
        matrices.insert(GeneratorLabel::Z0, shift(nu_z));
    }
    let basis = (0..n)
        .flat_map(|p| {
            l.weights.iter().enumerate().map(move |(w, wt)| BasisInfo {
                block: p,
                odd_subset: Vec::new(),
                even_index: w,
                weight: wt.clone(),
            })
        })
        .collect();
    let even = Representation { params: space, matrices, basis };
    let p = alg.datum.num_odd();
    let odd_weights: Vec<Vec<i64>> =
        (1..=p).map(|j| alg.datum.odd_root_weight(j).iter().map(|x| -x).collect()).collect();
    induce_generic(&h.constants, &even, &odd_weights)
}

/// Compares `phi` with the directly induced `K_H` and checks the structural
/// facts behind the identification.
pub fn compare_with_kh(
    phi: &HModule,
    h: &HeisenbergSpec,
    alg: &SuperAlgebra,
    l: &EvenModule,
    spec: &TwistSpec,
) -> Result<VerificationReport> {
    let mut report = VerificationReport::new();
    let p = alg.datum.num_odd();
    let (n, dl) = (spec.n(), l.dim());
    let big_d = phi.block_dim;
    let expected_dim = (1usize << p) * n * dl;
    report.push(
        CheckResult::from_bool("dimension = 2^P n dim L", phi.rep.dim() == expected_dim && big_d == (1 << p) * dl)
            .with_detail(format!("{} vs {expected_dim}", phi.rep.dim())),
    );
    if phi.rep.dim() != expected_dim {
        return Ok(report);
    }
    let kh = induce_kh(h, alg, l, spec)?.embed(&phi.rep.params)?;
    // phi index p*D + s*dL + w  <->  K_H index s*(n dL) + p*dL + w
    let perm: Vec<usize> = (0..expected_dim)
        .map(|i| {
            let (blk, rest) = (i / big_d, i % big_d);
            let (s, w) = (rest / dl, rest % dl);
            s * n * dl + blk * dl + w
        })
        .collect();
    let weights_match = (0..expected_dim).all(|i| phi.rep.basis[i].weight == kh.basis[perm[i]].weight);
    report.push(CheckResult::from_bool("characters of phi and K_H agree", weights_match));
    for &label in h.constants.labels() {
        let res = phi.rep.matrix(label)?.permute(&perm).try_sub(kh.matrix(label)?)?;
        report.push(zero_check(&format!("phi({label}) = K_H({label})"), &res, vec![label.to_string()]));
    }
    let generating: Vec<usize> = (0..n).flat_map(|blk| (0..dl).map(move |w| blk * big_d + w)).collect();
    let mut kills = CheckResult::pass("phi(a+) annihilates L' (x) J_n");
    for u in h.constants.odd_raising() {
        let m = phi.rep.matrix(u)?;
        if let Some(&c) = generating.iter().find(|&&c| (0..m.rows()).any(|r| m.entry(r, c).is_some())) {
            kills = CheckResult::fail("phi(a+) annihilates L' (x) J_n").with_locator(Locator {
                generators: vec![u.to_string()],
                entry: Some((0, c)),
                ..Default::default()
            });
            break;
        }
    }
    report.push(kills);
    let mut shift_ok = true;
    for (label, coef) in [(GeneratorLabel::Y, &spec.nu().0), (GeneratorLabel::Z0, &spec.nu().1)] {
        let Ok(m) = phi.rep.matrix(label) else { continue };
        for blk in 0..n {
            for w in 0..dl {
                let col = blk * big_d + w;
                let mut expect = BTreeMap::new();
                if blk > 0 && !num_traits::Zero::is_zero(coef) {
                    expect.insert((blk - 1) * big_d + w, ParamPoly::constant(&phi.rep.params, coef.clone()));
                }
                let got: BTreeMap<usize, ParamPoly> =
                    (0..m.rows()).filter_map(|r| m.entry(r, col).map(|p| (r, p.clone()))).collect();
                shift_ok &= got == expect;
            }
        }
    }
    report.push(CheckResult::from_bool("h' shifts J_n layers by nu and acts trivially within L'", shift_ok));
    let bindings: BTreeMap<String, Rational> =
        phi.rep.params.names().iter().map(|n| (n.clone(), Rational::from_integer(0.into()))).collect();
    let mut columns: Vec<Vec<Rational>> = Vec::new();
    let vmats: Vec<crate::exactmath::QMatrix> = (1..=p)
        .map(|j| phi.rep.matrix(GeneratorLabel::V(j))?.substitute(&bindings)?.to_rational())
        .collect::<Result<_>>()?;
    for mask in 0u64..(1 << p) {
        for &g in &generating {
            let mut v = vec![Rational::from_integer(0.into()); expected_dim];
            v[g] = Rational::from_integer(1.into());
            for j in (1..=p).rev() {
                if mask >> (j - 1) & 1 == 1 {
                    v = vmats[j - 1].mul_vec(&v);
                }
            }
            columns.push(v);
        }
    }
    let rank = row_reduce(&crate::exactmath::QMatrix::from_columns(expected_dim, &columns)).rank;
    report.push(
        CheckResult::from_bool("free g-1 generation from L' (x) J_n", rank == expected_dim)
            .with_detail(format!("wedge rank {rank} of {expected_dim}")),
    );
    Ok(report)
}

use std::collections::BTreeMap;

use num_traits::Zero;

use super::{
    jordan_minpoly_profile, odd_derivative, replicate, rescale_conjugation_check, twist, upsilon_extract,
    CartanElement, ReplicatedModule, ReplicationSpec, TwistSpec,
};
use crate::algebra::{check_super_relations, GeneratorLabel, StructureConstants};
use crate::error::Result;
use crate::exactmath::{format_rational, Rational};
use crate::kacmod::{check_degree_profile, KacModule};
use crate::report::{CheckResult, Locator, VerificationReport};

fn binding_locator(bindings: &BTreeMap<String, Rational>) -> BTreeMap<String, String> {
    bindings.iter().map(|(k, v)| (k.clone(), format_rational(v))).collect()
}

/// Every diagonal block equals the base module.
fn check_diagonal_blocks(r: &ReplicatedModule, k: &KacModule) -> Result<CheckResult> {
    for (label, m) in &k.rep.matrices {
        let m = m.embed(&r.rep.params)?;
        for p in 0..r.blocks {
            if r.block(*label, p, p)? != m {
                return Ok(CheckResult::fail("diagonal blocks = base module").with_locator(Locator {
                    generators: vec![label.to_string()],
                    entry: Some((p, p)),
                    ..Default::default()
                }));
            }
        }
    }
    Ok(CheckResult::pass("diagonal blocks = base module").with_detail(format!("{} blocks", r.blocks)))
}

/// The minimal polynomial of `y` on each generalized weight space has degree
/// `expected`, with the parameters bound as given.
fn check_profile(r: &ReplicatedModule, bindings: &BTreeMap<String, Rational>, expected: usize) -> Result<CheckResult> {
    let h: CartanElement = vec![(GeneratorLabel::Y, Rational::from_integer(1.into()))];
    let profile = jordan_minpoly_profile(&r.rep, &h, bindings)?;
    let name = format!("minpoly degree of y = {expected} on every weight space");
    Ok(match profile.iter().find(|(_, d)| **d != expected) {
        None => CheckResult::pass(name).with_detail(format!("{} weight spaces", profile.len())),
        Some((w, d)) => CheckResult::fail(name)
            .with_detail(format!("weight {w:?} has degree {d}"))
            .with_locator(Locator { generators: vec!["y".into()], entry: None, bindings: binding_locator(bindings) }),
    })
}

/// Relations, degree profile, diagonal blocks, the `y` minimal polynomial
/// profile, nesting of the leading blocks, and the rescaling conjugation.
pub fn verify_replication(
    k: &KacModule,
    sc: &StructureConstants,
    spec: &ReplicationSpec,
    bindings: &BTreeMap<String, Rational>,
) -> Result<(ReplicatedModule, VerificationReport)> {
    let d = odd_derivative(k, sc)?;
    let r = replicate(k, &d, spec)?;
    let mut report = VerificationReport::new();
    report.extend(check_super_relations(&r.rep, sc)?);
    report.extend(check_degree_profile(&r.rep)?);
    report.push(check_diagonal_blocks(&r, k)?);
    report.push(check_profile(&r, bindings, spec.n_copies())?);
    if spec.n_copies() > 2 {
        let lambdas = &spec.lambdas()[..spec.n_copies() - 2];
        let inner = replicate(k, &d, &ReplicationSpec::new(spec.n_copies() - 1, lambdas.to_vec())?)?;
        let idx: Vec<usize> = (0..inner.rep.dim()).collect();
        let nested = r.rep.matrices.iter().all(|(l, m)| inner.rep.matrices.get(l) == Some(&m.submatrix(&idx, &idx)));
        report.push(CheckResult::from_bool("leading blocks = (N-1)-fold replication", nested));
    }
    for lambda in spec.lambdas() {
        report.extend(rescale_conjugation_check(k, &d, lambda)?);
    }
    Ok((r, report))
}

/// Relations, degree profile, diagonal blocks and the `y` profile for a
/// twist; for two blocks also `Upsilon` vanishing on `h''` and nonzero.
pub fn verify_twist(
    k: &KacModule,
    sc: &StructureConstants,
    spec: &TwistSpec,
    bindings: &BTreeMap<String, Rational>,
) -> Result<(ReplicatedModule, VerificationReport)> {
    let r = twist(k, sc, spec)?;
    let mut report = VerificationReport::new();
    report.extend(check_super_relations(&r.rep, sc)?);
    report.extend(check_degree_profile(&r.rep)?);
    report.push(check_diagonal_blocks(&r, k)?);
    if !spec.nu().0.is_zero() {
        report.push(check_profile(&r, bindings, spec.n())?);
    }
    if spec.n() == 2 {
        let ups = upsilon_extract(&r)?;
        let (py, pz) = ups.prime_part();
        report.push(
            CheckResult::from_bool("Upsilon vanishes on h''", ups.annihilates_h_double_prime()).with_detail(format!(
                "Upsilon(y) = {}, Upsilon(z0) = {}",
                format_rational(&py),
                format_rational(&pz)
            )),
        );
        report.push(CheckResult::from_bool("Upsilon is nonzero", !(py.is_zero() && pz.is_zero())));
    }
    Ok((r, report))
}

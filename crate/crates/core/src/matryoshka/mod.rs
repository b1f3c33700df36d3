//! Self-extensions of Kac modules obtained by differentiating the odd
//! raising matrices in the hypercharge eigenvalue, their N-fold nested
//! replications, the `J_n(nu)` twists, and invariants that tell them apart.

mod invariants;
mod verify;

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::algebra::{GeneratorLabel, StructureConstants};
use crate::error::{Error, Result};
use crate::exactmath::{format_rational, ParamPoly, PolyMatrix, Rational};
use crate::kacmod::KacModule;
use crate::report::{CheckResult, Locator, VerificationReport};
use crate::representation::{BasisInfo, Representation};

pub use invariants::{
    jordan_minpoly_profile, minpoly_degree_on, self_extension_iso_decision, upsilon_extract, CartanElement,
    CartanFunctional, IsoDecision, IsoWitness,
};
pub use verify::{verify_replication, verify_twist};

/// `u'_i = d u_i / d y0 = k * (coefficient of b in u_i)`.
#[derive(Clone, Debug)]
pub struct DerivedOddGenerators {
    pub k: Rational,
    pub matrices: BTreeMap<GeneratorLabel, PolyMatrix>,
}

pub fn odd_derivative(k: &KacModule, sc: &StructureConstants) -> Result<DerivedOddGenerators> {
    let kk = sc.k()?;
    let mut matrices = BTreeMap::new();
    for j in 1..=k.num_odd {
        let u = k.rep.matrix(GeneratorLabel::U(j))?;
        let deg = u.degree_in("b")?;
        if deg > 1 {
            return Err(Error::Structural(format!("u{j} has degree {deg} in b")));
        }
        matrices.insert(GeneratorLabel::U(j), u.coefficient("b", 1)?.scale(&kk));
    }
    Ok(DerivedOddGenerators { k: kk, matrices })
}

fn matrix_check(name: String, residual: &PolyMatrix, gens: Vec<String>) -> CheckResult {
    match residual.first_nonzero() {
        None => CheckResult::pass(name),
        Some((r, c, p)) => CheckResult::fail(name)
            .with_locator(Locator { generators: gens, entry: Some((r, c)), ..Default::default() })
            .with_residual(p.to_string()),
    }
}

/// Checks `{u'_i, v_j} = k delta_ij I`, `{u'_i, u'_j} = 0` and
/// `{u'_i, u_j} + {u_i, u'_j} = 0` (the b-derivative of `{u_i, u_j} = 0`).
///
/// `{u'_i, u_j}` alone is not zero in general and is not asserted.
pub fn check_heisenberg_identity(k: &KacModule, d: &DerivedOddGenerators) -> Result<VerificationReport> {
    let space = &k.rep.params;
    let dim = k.dim();
    let mut report = VerificationReport::new();
    let up = |j: usize| -> Result<PolyMatrix> {
        d.matrices
            .get(&GeneratorLabel::U(j))
            .map(|m| m.embed(space))
            .transpose()?
            .ok_or_else(|| Error::Precondition(format!("no derivative for u{j}")))
    };
    let kid = PolyMatrix::scalar(space, dim, &ParamPoly::constant(space, d.k.clone()));
    let zero = PolyMatrix::zeros(space, dim, dim);
    for i in 1..=k.num_odd {
        let ui_p = up(i)?;
        let ui = k.rep.matrix(GeneratorLabel::U(i))?;
        for j in 1..=k.num_odd {
            let vj = k.rep.matrix(GeneratorLabel::V(j))?;
            let expect = if i == j { &kid } else { &zero };
            let res = ui_p.supercommutator(vj, true)?.try_sub(expect)?;
            report.push(matrix_check(
                format!("{{u'{i}, v{j}}} = k*delta*I"),
                &res,
                vec![format!("u'{i}"), format!("v{j}")],
            ));
            let uj_p = up(j)?;
            let uj = k.rep.matrix(GeneratorLabel::U(j))?;
            let res = ui_p.supercommutator(&uj_p, true)?;
            report.push(matrix_check(format!("{{u'{i}, u'{j}}} = 0"), &res, vec![format!("u'{i}"), format!("u'{j}")]));
            let res = ui_p.supercommutator(uj, true)?.try_add(&ui.supercommutator(&uj_p, true)?)?;
            report.push(matrix_check(
                format!("{{u'{i}, u{j}}} + {{u{i}, u'{j}}} = 0"),
                &res,
                vec![format!("u'{i}"), format!("u{j}")],
            ));
        }
    }
    Ok(report)
}

/// `N` copies with nonzero coupling constants `lambda_1..lambda_{N-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReplicationSpec {
    n_copies: usize,
    lambdas: Vec<Rational>,
}

impl ReplicationSpec {
    pub fn new(n_copies: usize, lambdas: Vec<Rational>) -> Result<Self> {
        if n_copies == 0 {
            return Err(Error::Precondition("N must be at least 1".into()));
        }
        if lambdas.len() != n_copies - 1 {
            return Err(Error::Precondition(format!(
                "N = {n_copies} needs {} lambdas, got {}",
                n_copies - 1,
                lambdas.len()
            )));
        }
        if let Some(i) = lambdas.iter().position(Zero::is_zero) {
            return Err(Error::ZeroLambda { index: i + 1 });
        }
        Ok(Self { n_copies, lambdas })
    }

    /// All couplings equal to 1.
    pub fn uniform(n_copies: usize) -> Result<Self> {
        Self::new(n_copies, vec![Rational::one(); n_copies.saturating_sub(1)])
    }

    pub fn n_copies(&self) -> usize {
        self.n_copies
    }

    pub fn lambdas(&self) -> &[Rational] {
        &self.lambdas
    }
}

/// `J_n(nu)` with `nu` given by its values on `y` and `z0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistSpec {
    n: usize,
    nu: (Rational, Rational),
}

impl TwistSpec {
    pub fn new(n: usize, nu_y: Rational, nu_z: Rational) -> Result<Self> {
        if n == 0 {
            return Err(Error::Precondition("twist length n must be at least 1".into()));
        }
        if nu_y.is_zero() && nu_z.is_zero() {
            return Err(Error::ZeroNu);
        }
        Ok(Self { n, nu: (nu_y, nu_z) })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nu(&self) -> &(Rational, Rational) {
        &self.nu
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BlockStructure {
    Replication { lambdas: Vec<Rational> },
    Twist { nu: (Rational, Rational) },
}

/// Block upper-triangular module: `blocks` copies of a base module of
/// dimension `block_dim`, coupled on the first block superdiagonal.
#[derive(Clone, Debug)]
pub struct ReplicatedModule {
    pub blocks: usize,
    pub block_dim: usize,
    pub structure: BlockStructure,
    pub rep: Representation,
}

impl ReplicatedModule {
    /// The `(p, q)` block of a generator matrix.
    pub fn block(&self, label: GeneratorLabel, p: usize, q: usize) -> Result<PolyMatrix> {
        let d = self.block_dim;
        let idx: Vec<usize> = (p * d..(p + 1) * d).collect();
        let jdx: Vec<usize> = (q * d..(q + 1) * d).collect();
        Ok(self.rep.matrix(label)?.submatrix(&idx, &jdx))
    }
}

/// Block-diagonal copies of `base` plus `scales[p] * coupling[label]` in
/// block `(p, p+1)`.
fn assemble(
    base: &Representation,
    coupling: &BTreeMap<GeneratorLabel, PolyMatrix>,
    scales: &[ParamPoly],
) -> Result<Representation> {
    let blocks = scales.len() + 1;
    let d = base.dim();
    let space = scales.first().map(|s| s.space().clone()).unwrap_or_else(|| base.params.clone());
    let mut matrices = BTreeMap::new();
    for (label, m) in &base.matrices {
        let m = m.embed(&space)?;
        let mut big = PolyMatrix::zeros(&space, blocks * d, blocks * d);
        for p in 0..blocks {
            big.add_block(p * d, p * d, &m);
        }
        if let Some(c) = coupling.get(label) {
            let c = c.embed(&space)?;
            for (p, s) in scales.iter().enumerate() {
                big.add_block(p * d, (p + 1) * d, &c.scale_poly(s)?);
            }
        }
        matrices.insert(*label, big);
    }
    let basis = (0..blocks).flat_map(|p| base.basis.iter().map(move |b| BasisInfo { block: p, ..b.clone() })).collect();
    Ok(Representation { params: space, matrices, basis })
}

fn replication_coupling(k: &KacModule, d: &DerivedOddGenerators) -> BTreeMap<GeneratorLabel, PolyMatrix> {
    let space = &k.rep.params;
    let mut coupling: BTreeMap<GeneratorLabel, PolyMatrix> =
        d.matrices.iter().map(|(l, m)| (*l, m.embed(space).expect("parameter-free"))).collect();
    coupling.insert(GeneratorLabel::Y, PolyMatrix::identity(space, k.dim()));
    coupling
}

/// The N-fold replication: `Y` gets `lambda_p I` and `u_j` gets
/// `lambda_p u'_j` on the block superdiagonal.
pub fn replicate(k: &KacModule, d: &DerivedOddGenerators, spec: &ReplicationSpec) -> Result<ReplicatedModule> {
    replicate_unchecked(k, d, spec.lambdas())
}

/// [`replicate`] without the nonzero-coupling check, so that split
/// extensions can be built to exercise invariants.
#[doc(hidden)]
pub fn replicate_unchecked(k: &KacModule, d: &DerivedOddGenerators, lambdas: &[Rational]) -> Result<ReplicatedModule> {
    let space = &k.rep.params;
    let scales: Vec<ParamPoly> = lambdas.iter().map(|l| ParamPoly::constant(space, l.clone())).collect();
    let rep = assemble(&k.rep, &replication_coupling(k, d), &scales)?;
    Ok(ReplicatedModule {
        blocks: lambdas.len() + 1,
        block_dim: k.dim(),
        structure: BlockStructure::Replication { lambdas: lambdas.to_vec() },
        rep,
    })
}

/// `nu_y * k * d/db + nu_z * d/dc` applied to every generator matrix.
pub fn twist_coupling(
    k: &KacModule,
    sc: &StructureConstants,
    nu: &(Rational, Rational),
) -> Result<BTreeMap<GeneratorLabel, PolyMatrix>> {
    let has_c = k.rep.params.index_of("c").is_some();
    if !nu.1.is_zero() && !has_c {
        return Err(Error::Precondition(format!("{} has no central direction z0; nu_z must be 0", k.spec)));
    }
    let kk = sc.k()?;
    let mut out = BTreeMap::new();
    for (l, m) in &k.rep.matrices {
        let mut c = m.derivative("b")?.scale(&(&nu.0 * &kk));
        if has_c {
            c = c.try_add(&m.derivative("c")?.scale(&nu.1))?;
        }
        if !c.is_zero() {
            out.insert(*l, c);
        }
    }
    Ok(out)
}

/// `K(L) (x) J_n(nu)`: every block superdiagonal holds the directional
/// derivative of the generator matrices along `nu`.
pub fn twist(k: &KacModule, sc: &StructureConstants, spec: &TwistSpec) -> Result<ReplicatedModule> {
    let coupling = twist_coupling(k, sc, spec.nu())?;
    let scales = vec![ParamPoly::one(&k.rep.params); spec.n() - 1];
    let rep = assemble(&k.rep, &coupling, &scales)?;
    Ok(ReplicatedModule {
        blocks: spec.n(),
        block_dim: k.dim(),
        structure: BlockStructure::Twist { nu: spec.nu().clone() },
        rep,
    })
}

/// The twist with its superdiagonal scaled by a formal parameter `t`.
pub fn twist_family(k: &KacModule, sc: &StructureConstants, spec: &TwistSpec) -> Result<ReplicatedModule> {
    let coupling = twist_coupling(k, sc, spec.nu())?;
    let space = k.rep.params.with("t")?;
    let t = ParamPoly::var(&space, "t")?;
    let rep = assemble(&k.rep, &coupling, &vec![t; spec.n() - 1])?;
    Ok(ReplicatedModule {
        blocks: spec.n(),
        block_dim: k.dim(),
        structure: BlockStructure::Twist { nu: spec.nu().clone() },
        rep,
    })
}

/// Checks `Q R_1(X) Q^{-1} = R_lambda(X)` for every generator, with
/// `Q = diag(lambda I, I)` and `R_lambda` the doubled module.
pub fn rescale_conjugation_check(
    k: &KacModule,
    d: &DerivedOddGenerators,
    lambda: &Rational,
) -> Result<VerificationReport> {
    if lambda.is_zero() {
        return Err(Error::ZeroLambda { index: 1 });
    }
    let r1 = replicate(k, d, &ReplicationSpec::new(2, vec![Rational::one()])?)?;
    let rl = replicate(k, d, &ReplicationSpec::new(2, vec![lambda.clone()])?)?;
    let dim = k.dim();
    let mut report = VerificationReport::new();
    for (label, m) in &r1.rep.matrices {
        // Q M Q^{-1} scales entry (r, c) by q_r / q_c.
        let q = |i: usize| if i < dim { lambda.clone() } else { Rational::one() };
        let mut conj = PolyMatrix::zeros(m.space(), m.rows(), m.cols());
        for (r, c, p) in m.entries() {
            conj.set(r, c, p.scale(&(q(r) / q(c))));
        }
        let res = conj.try_sub(rl.rep.matrix(*label)?)?;
        report.push(matrix_check(
            format!("Q {label}(1) Q^-1 = {label}({})", format_rational(lambda)),
            &res,
            vec![label.to_string()],
        ));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{SuperAlgebra, SuperAlgebraSpec};
    use crate::exactmath::rat;
    use crate::kacmod::build_kac_module;

    #[test]
    fn zero_lambda_rejected() {
        assert!(matches!(ReplicationSpec::new(3, vec![rat(1, 1), rat(0, 1)]), Err(Error::ZeroLambda { index: 2 })));
        assert!(ReplicationSpec::new(2, vec![]).is_err());
        assert!(matches!(TwistSpec::new(2, rat(0, 1), rat(0, 1)), Err(Error::ZeroNu)));
    }

    #[test]
    fn derivative_on_quartet() {
        let alg = SuperAlgebra::new(SuperAlgebraSpec::sl(2, 1).unwrap()).unwrap();
        let k = build_kac_module(&alg, &[0]).unwrap();
        let d = odd_derivative(&k, &alg.constants).unwrap();
        // u1 (v1 x L) = b L, so u'1 (v1 x L) = k L.
        let u1p = &d.matrices[&GeneratorLabel::U(1)];
        assert_eq!(u1p.get(0, 1).constant_value(), Some(rat(-1, 2)));
        assert!(check_heisenberg_identity(&k, &d).unwrap().passed);
    }

    #[test]
    fn unit_replication_equals_y_twist() {
        let alg = SuperAlgebra::new(SuperAlgebraSpec::sl(2, 1).unwrap()).unwrap();
        let k = build_kac_module(&alg, &[1]).unwrap();
        let d = odd_derivative(&k, &alg.constants).unwrap();
        let r = replicate(&k, &d, &ReplicationSpec::uniform(3).unwrap()).unwrap();
        let t = twist(&k, &alg.constants, &TwistSpec::new(3, rat(1, 1), rat(0, 1)).unwrap()).unwrap();
        assert_eq!(r.rep.matrices, t.rep.matrices);
    }
}

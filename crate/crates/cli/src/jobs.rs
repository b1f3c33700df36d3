//! Executes one [`JobConfig`] and collects its report and artifact.

use std::collections::BTreeMap;

use serde::Serialize;
use superkac::algebra::{check_super_relations, SuperAlgebra};
use superkac::evenrep::{build_even_irrep, EvenModule};
use superkac::exactmath::{format_rational, Rational};
use superkac::export::{
    poly_to_json, to_json_string, Construction, Conventions, ModuleJson, RepresentationJson, StructureConstantsJson,
};
use superkac::heisenberg::{
    build_heisenberg, check_mixed_identity, check_phi_representation, compare_with_kh, phi_map, rho_family,
};
use superkac::kacmod::{
    check_degree_profile, check_typicality, check_y_spectrum, induce, kac_typicality, KacModule, Typicality,
};
use superkac::matryoshka::{
    check_heisenberg_identity, odd_derivative, self_extension_iso_decision, verify_replication, verify_twist,
    IsoWitness, ReplicatedModule, ReplicationSpec, TwistSpec,
};
use superkac::report::{CheckResult, VerificationReport};
use superkac::representation::Representation;
use superkac::{Error, Result};

use crate::config::{Action, ExportWhat, JobConfig};

/// The result of one job: a report and, for most actions, a JSON artifact.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub title: String,
    pub report: VerificationReport,
    pub artifact: Option<String>,
}

struct Context {
    alg: SuperAlgebra,
    even: EvenModule,
    kac: KacModule,
    bindings: BTreeMap<String, Rational>,
}

impl Context {
    fn new(job: &JobConfig) -> Result<Self> {
        let bindings = job.bindings()?;
        let alg = SuperAlgebra::new(job.algebra)?;
        let even = build_even_irrep(&alg, &job.labels)?;
        let kac = induce(&alg, &even)?;
        Ok(Self { alg, even, kac, bindings })
    }

    /// Bindings for checks that need numbers: symbolic parameters are set to 0.
    fn numeric_bindings(&self) -> BTreeMap<String, Rational> {
        let mut out = self.bindings.clone();
        for name in self.kac.rep.params.names() {
            out.entry(name.clone()).or_insert_with(|| Rational::from_integer(0.into()));
        }
        out
    }

    fn module_json(&self, construction: Construction, rep: &Representation) -> Result<String> {
        let rep = if self.bindings.is_empty() { rep.clone() } else { rep.substitute(&self.bindings)? };
        let json = ModuleJson {
            algebra: self.alg.spec(),
            even_labels: self.kac.labels.clone(),
            y0: poly_to_json(&self.kac.y0.substitute(&self.bindings)?),
            construction,
            conventions: Conventions::default(),
            module: RepresentationJson::from_rep(&rep),
        };
        to_json_string(&json)
    }
}

fn blocks_of(r: &ReplicatedModule, nu: Option<&(Rational, Rational)>, lambdas: Option<&[Rational]>) -> Construction {
    let fmt = |x: &Rational| format_rational(x);
    match (nu, lambdas) {
        (_, Some(ls)) => Construction::Replication {
            blocks: r.blocks,
            block_dim: r.block_dim,
            lambdas: ls.iter().map(fmt).collect(),
        },
        (Some(nu), None) => {
            Construction::Twist { blocks: r.blocks, block_dim: r.block_dim, nu: (fmt(&nu.0), fmt(&nu.1)) }
        }
        (None, None) => Construction::Kac,
    }
}

fn kac_report(ctx: &Context) -> Result<VerificationReport> {
    let sc = &ctx.alg.constants;
    let mut report = VerificationReport::new();
    report.extend(sc.self_check());
    report.push(sc.check_hypercharge());
    report.extend(check_super_relations(&ctx.kac.rep, sc)?);
    report.extend(check_degree_profile(&ctx.kac.rep)?);
    report.extend(check_y_spectrum(&ctx.kac)?);
    let d = odd_derivative(&ctx.kac, sc)?;
    report.extend(check_heisenberg_identity(&ctx.kac, &d)?);
    Ok(report)
}

#[derive(Serialize)]
struct TypicalityJson {
    algebra: superkac::algebra::SuperAlgebraSpec,
    even_labels: Vec<i64>,
    s: superkac::export::PolyJson,
    factors: Vec<superkac::export::PolyJson>,
    s_roots: Vec<String>,
    factor_roots: Vec<String>,
    constant: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    classification: Option<Typicality>,
    report: VerificationReport,
}

fn typicality(ctx: &Context) -> Result<Outcome> {
    let t = kac_typicality(&ctx.alg, &ctx.kac)?;
    let report = check_typicality(&ctx.alg, &ctx.kac)?;
    let classification = ctx.bindings.get("b").map(|b| t.classify(b)).transpose()?;
    let json = TypicalityJson {
        algebra: ctx.alg.spec(),
        even_labels: ctx.kac.labels.clone(),
        s: poly_to_json(&t.s),
        factors: t.factors.iter().map(poly_to_json).collect(),
        s_roots: t.s_roots.iter().map(format_rational).collect(),
        factor_roots: t.factor_roots.iter().map(format_rational).collect(),
        constant: t.constant.as_ref().map(format_rational),
        classification,
        report: report.clone(),
    };
    Ok(Outcome { title: String::new(), report, artifact: Some(to_json_string(&json)?) })
}

fn replicate(ctx: &Context, job: &JobConfig) -> Result<Outcome> {
    let n = job.n_copies.ok_or_else(|| Error::Precondition("replicate needs N".into()))?;
    let spec = match job.lambda_values()? {
        Some(ls) => ReplicationSpec::new(n, ls)?,
        None => ReplicationSpec::uniform(n)?,
    };
    let sc = &ctx.alg.constants;
    let mut report = VerificationReport::new();
    let artifact = if n == 1 {
        report.extend(check_super_relations(&ctx.kac.rep, sc)?);
        ctx.module_json(Construction::Kac, &ctx.kac.rep)?
    } else {
        let (r, checks) = verify_replication(&ctx.kac, sc, &spec, &ctx.numeric_bindings())?;
        report.extend(checks);
        ctx.module_json(blocks_of(&r, None, Some(spec.lambdas())), &r.rep)?
    };
    Ok(Outcome { title: String::new(), report, artifact: Some(artifact) })
}

fn twist(ctx: &Context, job: &JobConfig) -> Result<Outcome> {
    let nu = job.nu_value()?.ok_or_else(|| Error::Precondition("twist needs nu".into()))?;
    let n = job.n_twist.unwrap_or(2);
    let spec = TwistSpec::new(n, nu.0.clone(), nu.1.clone())?;
    let sc = &ctx.alg.constants;
    let (r, mut report) = verify_twist(&ctx.kac, sc, &spec, &ctx.numeric_bindings())?;
    if let Some(mu) = job.mu_value()? {
        let decision = self_extension_iso_decision(&ctx.kac, sc, &nu, &mu, n, &ctx.numeric_bindings())?;
        let verdict = if decision.isomorphic { "isomorphic" } else { "not isomorphic" };
        report.push(match &decision.witness {
            IsoWitness::Conjugation { scale, verified, .. } => {
                CheckResult::from_bool(format!("iso decision: {verdict}"), *verified)
                    .with_detail(format!("conjugation witness, nu = {} * mu", format_rational(scale)))
            }
            IsoWitness::TrivialLength { verified } => {
                CheckResult::from_bool(format!("iso decision: {verdict}"), *verified)
                    .with_detail("length-1 twist equals the Kac module")
            }
            IsoWitness::MinimalPolynomial { h, weight, degree_nu, degree_mu } => {
                CheckResult::from_bool(format!("iso decision: {verdict}"), degree_nu != degree_mu).with_detail(format!(
                    "h = {} y + {} z0 on weight {weight:?}: minpoly degrees {degree_nu} vs {degree_mu}",
                    format_rational(&h.0),
                    format_rational(&h.1)
                ))
            }
        });
    }
    let artifact = ctx.module_json(blocks_of(&r, Some(&nu), None), &r.rep)?;
    Ok(Outcome { title: String::new(), report, artifact: Some(artifact) })
}

fn heisenberg(ctx: &Context, job: &JobConfig) -> Result<Outcome> {
    let one = Rational::from_integer(1.into());
    let nu = job.nu_value()?.unwrap_or((one, Rational::from_integer(0.into())));
    let n = job.n_twist.unwrap_or(2);
    let spec = TwistSpec::new(n, nu.0.clone(), nu.1.clone())?;
    let h = build_heisenberg(&ctx.alg)?;
    let rho = rho_family(&ctx.kac, &ctx.alg, &spec)?;
    let phi = phi_map(&rho, &h)?;
    let mut report = VerificationReport::new();
    report.push(h.check_two_step_nilpotent());
    report.extend(check_phi_representation(&phi, &h)?);
    report.extend(check_mixed_identity(&rho, &ctx.alg.constants)?);
    report.extend(compare_with_kh(&phi, &h, &ctx.alg, &ctx.even, &spec)?);
    let fmt = |x: &Rational| format_rational(x);
    let construction =
        Construction::HeisenbergPhi { blocks: phi.blocks, block_dim: phi.block_dim, nu: (fmt(&nu.0), fmt(&nu.1)) };
    let artifact = ctx.module_json(construction, &phi.rep)?;
    Ok(Outcome { title: String::new(), report, artifact: Some(artifact) })
}

/// Exports that need only the algebra, not a module.
fn export_algebra(job: &JobConfig, what: ExportWhat) -> Result<Outcome> {
    let alg = SuperAlgebra::new(job.algebra)?;
    let mut report = VerificationReport::new();
    let artifact = if what == ExportWhat::Constants {
        report.extend(alg.constants.self_check());
        to_json_string(&StructureConstantsJson::from_constants(Some(alg.spec()), &alg.constants))?
    } else {
        let rep = superkac::algebra::fundamental_rep(&alg.datum);
        report.extend(check_super_relations(&rep, &alg.constants)?);
        to_json_string(&RepresentationJson::from_rep(&rep))?
    };
    Ok(Outcome { title: String::new(), report, artifact: Some(artifact) })
}

/// Re-verifies an exported module against freshly built structure constants.
fn verify_input(job: &JobConfig) -> Result<Outcome> {
    let path = job.input.as_ref().expect("checked by caller");
    let module: ModuleJson = superkac::export::import_json(path)?;
    if module.algebra != job.algebra {
        return Err(Error::Precondition(format!("input module is for {}, job names {}", module.algebra, job.algebra)));
    }
    let alg = SuperAlgebra::new(module.algebra)?;
    let rep = module.module.to_rep()?;
    let mut report = VerificationReport::new();
    if matches!(module.construction, Construction::HeisenbergPhi { .. }) {
        let h = build_heisenberg(&alg)?;
        report.extend(check_super_relations(&rep, &h.constants)?);
    } else {
        report.extend(check_super_relations(&rep, &alg.constants)?);
        if rep.params.index_of("b").is_some() {
            report.extend(check_degree_profile(&rep)?);
        }
    }
    Ok(Outcome { title: String::new(), report, artifact: None })
}

pub fn title(job: &JobConfig) -> String {
    let mut t = format!("{:?} {} a={:?}", job.action, job.algebra, job.labels).to_lowercase();
    if let Ok(b) = job.bindings() {
        for (k, v) in b {
            t.push_str(&format!(" {k}={}", format_rational(&v)));
        }
    }
    if let Some(n) = job.n_copies {
        t.push_str(&format!(" N={n}"));
    }
    if let Some(n) = job.n_twist {
        t.push_str(&format!(" n={n}"));
    }
    t
}

pub fn execute(job: &JobConfig) -> Result<Outcome> {
    let what = job.what.unwrap_or_default();
    let mut outcome = if job.action == Action::Verify && job.input.is_some() {
        verify_input(job)?
    } else if job.action == Action::Export && what != ExportWhat::Module {
        export_algebra(job, what)?
    } else {
        let ctx = Context::new(job)?;
        match job.action {
            Action::Build => {
                let mut report = VerificationReport::new();
                report.extend(check_y_spectrum(&ctx.kac)?);
                let artifact = ctx.module_json(Construction::Kac, &ctx.kac.rep)?;
                Outcome { title: String::new(), report, artifact: Some(artifact) }
            }
            Action::Verify => {
                let report = kac_report(&ctx)?;
                Outcome { title: String::new(), report, artifact: None }
            }
            Action::Typicality => typicality(&ctx)?,
            Action::Replicate => replicate(&ctx, job)?,
            Action::Twist => twist(&ctx, job)?,
            Action::Heisenberg => heisenberg(&ctx, job)?,
            Action::Export => {
                let artifact = ctx.module_json(Construction::Kac, &ctx.kac.rep)?;
                Outcome { title: String::new(), report: VerificationReport::new(), artifact: Some(artifact) }
            }
        }
    };
    outcome.title = title(job);
    Ok(outcome)
}

/// 0 when every check passed, 1 on a verification failure, 2 on invalid input.
pub fn exit_code(result: &Result<Outcome>) -> i32 {
    match result {
        Ok(o) if o.report.passed => 0,
        Ok(_) | Err(Error::Structural(_)) => 1,
        Err(_) => 2,
    }
}

/// Writes the artifact and report files named by the job.
pub fn write_outputs(job: &JobConfig, outcome: &Outcome) -> Result<()> {
    if let (Some(path), Some(artifact)) = (&job.out, &outcome.artifact) {
        std::fs::write(path, artifact)?;
    }
    if let Some(path) = &job.report {
        std::fs::write(path, to_json_string(&outcome.report)?)?;
    }
    Ok(())
}

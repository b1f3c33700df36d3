//! Acceptance suite: one PASS/FAIL line per criterion, exact checks only.
//! Exits nonzero if any criterion fails.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::Command;

use superkac::algebra::{check_super_relations, GeneratorLabel, SuperAlgebra, SuperAlgebraSpec};
use superkac::evenrep::{build_even_irrep, weyl_dimension};
use superkac::exactmath::{format_rational, rat, ParamPoly, PolyMatrix, Rational};
use superkac::heisenberg::{
    build_heisenberg, check_mixed_identity, check_phi_representation, compare_with_kh, phi_map, rho_family,
};
use superkac::kacmod::{check_degree_profile, check_typicality, induce, KacModule};
use superkac::matryoshka::{
    check_heisenberg_identity, odd_derivative, replicate, self_extension_iso_decision, twist, verify_replication,
    IsoWitness, ReplicationSpec, TwistSpec,
};
use superkac::report::VerificationReport;
use superkac::{Error, Result};

/// Outcome of one criterion: verdict, a one-line summary, and detail lines.
struct Verdict {
    passed: bool,
    summary: String,
    details: Vec<String>,
}

impl Verdict {
    fn new() -> Self {
        Self { passed: true, summary: String::new(), details: Vec::new() }
    }

    fn require(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.passed = false;
            self.details.push(what.into());
        }
    }

    /// Folds in every failing check of a report, tagged with its context.
    fn report(&mut self, context: &str, r: &VerificationReport) {
        for c in r.checks.iter().filter(|c| !c.passed) {
            let mut line = format!("{context}: {}", c.name);
            if let Some(d) = &c.detail {
                line.push_str(&format!(" -- {d}"));
            }
            if let Some(res) = &c.residual {
                line.push_str(&format!(" residual {res}"));
            }
            self.require(false, line);
        }
    }
}

fn sl(m: usize, n: usize) -> SuperAlgebraSpec {
    SuperAlgebraSpec::sl(m, n).expect("valid spec")
}

fn gl(m: usize, n: usize) -> SuperAlgebraSpec {
    SuperAlgebraSpec::gl(m, n).expect("valid spec")
}

/// The desk-scale module suite.
fn test_modules() -> Vec<(SuperAlgebraSpec, Vec<i64>)> {
    vec![
        (sl(2, 1), vec![0]),
        (sl(2, 1), vec![1]),
        (sl(2, 1), vec![2]),
        (sl(3, 1), vec![0, 0]),
        (sl(3, 1), vec![1, 0]),
        (gl(2, 1), vec![0]),
        (gl(2, 1), vec![1]),
    ]
}

fn kac(spec: SuperAlgebraSpec, a: &[i64]) -> Result<(SuperAlgebra, KacModule)> {
    let alg = SuperAlgebra::new(spec)?;
    let l = build_even_irrep(&alg, a)?;
    let k = induce(&alg, &l)?;
    Ok((alg, k))
}

fn tag(spec: &SuperAlgebraSpec, a: &[i64]) -> String {
    format!("{spec} a={a:?}")
}

fn binomial(p: usize, l: usize) -> usize {
    (0..l).fold(1, |acc, i| acc * (p - i) / (i + 1))
}

fn structure_constants() -> Result<Verdict> {
    let mut v = Verdict::new();
    let mut k_sl21 = None;
    for (m, n) in [(2, 1), (3, 1), (2, 3)] {
        for spec in [sl(m, n), gl(m, n)] {
            let alg = SuperAlgebra::new(spec)?;
            let mut r = alg.constants.self_check();
            r.push(alg.constants.check_hypercharge());
            v.report(&spec.to_string(), &r);
            let k = alg.constants.k()?;
            v.require(k != rat(0, 1), format!("{spec}: k = 0"));
            if spec == sl(2, 1) {
                k_sl21 = Some(k);
            }
        }
    }
    let k = k_sl21.expect("sl(2|1) in the list");
    v.require(k == rat(3, 2), format!("sl(2|1): k = {}, expected 3/2", format_rational(&k)));
    v.summary = format!("Jacobi and grading on 6 algebras, sl(2|1) k = {}", format_rational(&k));
    Ok(v)
}

fn kac_relations() -> Result<Verdict> {
    let mut v = Verdict::new();
    for (spec, a) in test_modules() {
        let t = tag(&spec, &a);
        let (alg, k) = kac(spec, &a)?;
        v.report(&t, &check_super_relations(&k.rep, &alg.constants)?);
        let p = alg.datum.num_odd();
        let dim_l: usize = weyl_dimension(&alg.datum, &a)?.to_string().parse().expect("small dimension");
        v.require(k.dim() == (1 << p) * dim_l, format!("{t}: dim {} != 2^{p} * {dim_l}", k.dim()));
        // Y must be diagonal with y0 - l repeated C(P, l) dim L times.
        let y = k.rep.matrix(GeneratorLabel::Y)?;
        let offdiag = y.entries().filter(|(r, c, _)| r != c).count();
        v.require(offdiag == 0, format!("{t}: Y has {offdiag} off-diagonal entries"));
        let mut seen: BTreeMap<usize, usize> = BTreeMap::new();
        for i in 0..k.dim() {
            let d = y.get(i, i);
            match (0..=p).find(|l| d == &k.y0 - &ParamPoly::constant(&k.rep.params, rat(*l as i64, 1))) {
                Some(l) => *seen.entry(l).or_default() += 1,
                None => v.require(false, format!("{t}: Y({i},{i}) = {d} is not y0 - l")),
            }
        }
        for l in 0..=p {
            let got = seen.get(&l).copied().unwrap_or(0);
            let want = binomial(p, l) * dim_l;
            v.require(got == want, format!("{t}: eigenvalue y0 - {l} has multiplicity {got}, expected {want}"));
        }
    }
    v.summary = "7 Kac modules: relations in b, dimensions, Y spectrum".into();
    Ok(v)
}

fn degree_profile() -> Result<Verdict> {
    let mut v = Verdict::new();
    let mut count = 0;
    for (spec, a) in test_modules() {
        let t = tag(&spec, &a);
        let (alg, k) = kac(spec, &a)?;
        let d = odd_derivative(&k, &alg.constants)?;
        let mut reps = vec![k.rep.clone()];
        for lambdas in [vec![rat(1, 1)], vec![rat(1, 1), rat(1, 1)], vec![rat(2, 1), rat(-3, 5)]] {
            reps.push(replicate(&k, &d, &ReplicationSpec::new(lambdas.len() + 1, lambdas)?)?.rep);
        }
        let nu_z = if spec == gl(2, 1) { rat(1, 1) } else { rat(0, 1) };
        reps.push(twist(&k, &alg.constants, &TwistSpec::new(2, rat(1, 1), nu_z)?)?.rep);
        for rep in &reps {
            v.report(&t, &check_degree_profile(rep)?);
            count += 1;
        }
        // A b-quadratic u must be caught.
        let mut broken = k.rep.clone();
        let b = ParamPoly::var(&k.rep.params, "b")?;
        let u1 = broken.matrices.get_mut(&GeneratorLabel::U(1)).expect("u1");
        *u1 = u1.scale_poly(&b)?;
        v.require(!check_degree_profile(&broken)?.passed, format!("{t}: b * u1 not flagged"));
    }
    v.summary = format!("{count} modules, corrupted controls rejected");
    Ok(v)
}

fn typicality() -> Result<Verdict> {
    let mut v = Verdict::new();
    let mut checks = 0;
    for (spec, a) in test_modules() {
        let (alg, k) = kac(spec, &a)?;
        let r = check_typicality(&alg, &k)?;
        checks += r.checks.len();
        v.report(&tag(&spec, &a), &r);
    }
    v.summary = format!("{checks} checks over 7 modules");
    Ok(v)
}

fn derivative_identity() -> Result<Verdict> {
    let mut v = Verdict::new();
    for (spec, a) in test_modules() {
        let (alg, k) = kac(spec, &a)?;
        let d = odd_derivative(&k, &alg.constants)?;
        v.report(&tag(&spec, &a), &check_heisenberg_identity(&k, &d)?);
    }
    v.summary = "{u'_i, v_j} = k delta_ij I on 7 modules".into();
    Ok(v)
}

/// `Q R_(1,..,1)(X) Q^-1 = R_lambda(X)` with `Q = diag(q_p I)` and
/// `q_p = lambda_{p+1} * ... * lambda_{N-1}`.
fn conjugation_identity(
    unit: &superkac::representation::Representation,
    r: &superkac::representation::Representation,
    lambdas: &[Rational],
    block_dim: usize,
) -> Result<bool> {
    let blocks = lambdas.len() + 1;
    let q: Vec<Rational> = (0..blocks).map(|p| lambdas[p..].iter().fold(rat(1, 1), |acc, l| acc * l)).collect();
    for (label, m) in &unit.matrices {
        let mut conj = PolyMatrix::zeros(m.space(), m.rows(), m.cols());
        for (row, col, p) in m.entries() {
            conj.set(row, col, p.scale(&(&q[row / block_dim] / &q[col / block_dim])));
        }
        if &conj != r.matrix(*label)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn matryoshka() -> Result<Verdict> {
    let mut v = Verdict::new();
    let bindings = BTreeMap::from([("b".to_string(), rat(5, 7)), ("c".to_string(), rat(0, 1))]);
    for (spec, a) in test_modules() {
        let t = tag(&spec, &a);
        let (alg, k) = kac(spec, &a)?;
        let mut bind = bindings.clone();
        if k.rep.params.index_of("c").is_none() {
            bind.remove("c");
        }
        let d = odd_derivative(&k, &alg.constants)?;
        for lambdas in [vec![rat(1, 1)], vec![rat(1, 1), rat(1, 1)], vec![rat(2, 1), rat(-3, 5)]] {
            let n = lambdas.len() + 1;
            let rs = ReplicationSpec::new(n, lambdas.clone())?;
            let (r, report) = verify_replication(&k, &alg.constants, &rs, &bind)?;
            v.report(&format!("{t} N={n}"), &report);
            let unit = replicate(&k, &d, &ReplicationSpec::uniform(n)?)?;
            v.require(
                conjugation_identity(&unit.rep, &r.rep, &lambdas, k.dim())?,
                format!("{t} N={n}: rescaling conjugation fails"),
            );
        }
    }
    v.summary = "7 modules x lambda in {(1), (1,1), (2,-3/5)}".into();
    Ok(v)
}

fn iso_lemma() -> Result<Verdict> {
    let mut v = Verdict::new();
    let n = 2;
    let bindings = BTreeMap::from([("b".to_string(), rat(5, 7)), ("c".to_string(), rat(0, 1))]);
    let mut degrees = Vec::new();
    for a in [vec![0], vec![1]] {
        let t = tag(&gl(2, 1), &a);
        let (alg, k) = kac(gl(2, 1), &a)?;
        let nu = (rat(1, 1), rat(0, 1));
        let mu = (rat(0, 1), rat(1, 1));
        let dec = self_extension_iso_decision(&k, &alg.constants, &nu, &mu, n, &bindings)?;
        v.require(!dec.isomorphic, format!("{t}: nu=(1,0) vs mu=(0,1) judged isomorphic"));
        match dec.witness {
            IsoWitness::MinimalPolynomial { degree_nu, degree_mu, .. } => {
                let diff = degree_nu.abs_diff(degree_mu);
                degrees.push(format!("{degree_nu} vs {degree_mu}"));
                v.require(
                    diff == n,
                    format!("{t}: minpoly degrees {degree_nu} vs {degree_mu} differ by {diff}, expected {n}"),
                );
            }
            w => v.require(false, format!("{t}: unexpected witness {w:?}")),
        }
        let twice = (rat(2, 1), rat(0, 1));
        let dec = self_extension_iso_decision(&k, &alg.constants, &nu, &twice, n, &bindings)?;
        let verified = matches!(dec.witness, IsoWitness::Conjugation { verified: true, .. });
        v.require(dec.isomorphic && verified, format!("{t}: nu vs 2nu not shown isomorphic"));
    }
    v.summary = format!("gl(2|1) n=2, minpoly degrees {}", degrees.join(", "));
    Ok(v)
}

fn heisenberg() -> Result<Verdict> {
    let mut v = Verdict::new();
    let cases = [
        (sl(2, 1), vec![1], (rat(1, 1), rat(0, 1)), 2),
        (sl(2, 1), vec![0], (rat(-2, 3), rat(0, 1)), 3),
        (gl(2, 1), vec![1], (rat(1, 1), rat(2, 1)), 3),
        (sl(3, 1), vec![1, 0], (rat(1, 1), rat(0, 1)), 2),
    ];
    for (spec, a, nu, n) in cases {
        let t = format!("{} n={n}", tag(&spec, &a));
        let alg = SuperAlgebra::new(spec)?;
        let l = build_even_irrep(&alg, &a)?;
        let k = induce(&alg, &l)?;
        let h = build_heisenberg(&alg)?;
        let ts = TwistSpec::new(n, nu.0.clone(), nu.1.clone())?;
        let rho = rho_family(&k, &alg, &ts)?;
        for (label, m) in &rho.rep.matrices {
            let deg = m.degree_in("t")?;
            v.require(deg <= 1, format!("{t}: rho_t({label}) has degree {deg} in t"));
        }
        let phi = phi_map(&rho, &h)?;
        v.report(&t, &check_phi_representation(&phi, &h)?);
        v.report(&t, &check_mixed_identity(&rho, &alg.constants)?);
        v.report(&t, &compare_with_kh(&phi, &h, &alg, &l, &ts)?);
    }
    v.summary = "rho_t affine, phi brackets, phi = K_H on 4 cases".into();
    Ok(v)
}

fn binary() -> PathBuf {
    PathBuf::from(env!("CARGO_BIN_EXE_superkac"))
}

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(binary()).args(args).output().expect("run superkac");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stderr).into_owned())
}

fn negative_controls() -> Result<Verdict> {
    let mut v = Verdict::new();
    for flavor in ["sl", "gl"] {
        let (code, err) = run(&["build", "--algebra", flavor, "--m", "2", "--n", "2"]);
        v.require(code == 2, format!("{flavor}(2|2) via flags exits {code}"));
        v.require(err.contains(&format!("{flavor}(2|2) is excluded")), format!("{flavor}(2|2) message: {err}"));
    }
    let dir = tempfile::tempdir()?;
    let cfg = dir.path().join("bad.json");
    std::fs::write(&cfg, r#"{"action":"build","algebra":{"flavor":"sl","m":2,"n":2},"labels":[0]}"#)?;
    let (code, _) = run(&["run", "--config", cfg.to_str().expect("utf-8 path")]);
    v.require(code == 2, format!("sl(2|2) config exits {code}"));

    v.require(
        matches!(ReplicationSpec::new(3, vec![rat(1, 1), rat(0, 1)]), Err(Error::ZeroLambda { index: 2 })),
        "lambda = 0 accepted by ReplicationSpec",
    );
    let (code, _) =
        run(&["replicate", "--algebra", "sl", "--m", "2", "--n", "1", "--labels", "0", "--N", "2", "--lambdas", "0"]);
    v.require(code == 2, format!("lambda = 0 via CLI exits {code}"));

    let alg = SuperAlgebra::new(sl(3, 1))?;
    v.require(matches!(build_even_irrep(&alg, &[1, -1]), Err(Error::NonDominant(_))), "a = (1,-1) accepted");
    let (code, _) = run(&["build", "--algebra", "sl", "--m", "2", "--n", "1", "--labels", "-1"]);
    v.require(code == 2, format!("a = -1 via CLI exits {code}"));
    v.summary = "sl/gl(2|2), lambda = 0, non-dominant labels".into();
    Ok(v)
}

fn read_dir_sorted(dir: &Path) -> Result<BTreeMap<String, Vec<u8>>> {
    let mut out = BTreeMap::new();
    for entry in std::fs::read_dir(dir)? {
        let entry = entry?;
        out.insert(entry.file_name().to_string_lossy().into_owned(), std::fs::read(entry.path())?);
    }
    Ok(out)
}

fn determinism() -> Result<Verdict> {
    let mut v = Verdict::new();
    let config = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs/test_matrix.json");
    let config = config.to_str().expect("utf-8 path");
    let mut runs = Vec::new();
    for _ in 0..2 {
        let dir = tempfile::tempdir()?;
        let (code, _) = run(&["run", "--config", config, "--out-dir", dir.path().to_str().expect("utf-8 path")]);
        v.require(code == 0 || code == 1, format!("suite run exits {code}"));
        runs.push(read_dir_sorted(dir.path())?);
    }
    let (a, b) = (&runs[0], &runs[1]);
    v.require(!a.is_empty(), "no artifacts written");
    v.require(a.keys().eq(b.keys()), "artifact file sets differ");
    for (name, bytes) in a {
        v.require(b.get(name) == Some(bytes), format!("{name} differs between runs"));
    }
    v.summary = format!("{} files byte-identical across two runs", a.len());
    Ok(v)
}

fn main() {
    let criteria: [(&str, fn() -> Result<Verdict>); 10] = [
        ("structure constants", structure_constants),
        ("Kac module relations", kac_relations),
        ("degree profile", degree_profile),
        ("typicality", typicality),
        ("derivative identity", derivative_identity),
        ("matryoshka replication", matryoshka),
        ("twist isomorphism lemma", iso_lemma),
        ("Heisenberg action", heisenberg),
        ("negative controls", negative_controls),
        ("determinism", determinism),
    ];
    let mut failures = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let v = f().unwrap_or_else(|e| Verdict {
            passed: false,
            summary: "error".into(),
            details: vec![format!("unexpected error: {e}")],
        });
        println!("{} {:>2} {name}: {}", if v.passed { "PASS" } else { "FAIL" }, i + 1, v.summary);
        for d in &v.details {
            println!("        {d}");
        }
        failures += usize::from(!v.passed);
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}

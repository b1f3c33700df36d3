use super::KacModule;
use crate::algebra::GeneratorLabel;
use crate::error::Result;
use crate::exactmath::{rat, ParamPoly};
use crate::report::{CheckResult, Locator, VerificationReport};
use crate::representation::Representation;

/// `deg_b(u) <= 1`, `deg_b(y) <= 1` and every other generator b-free.
pub fn check_degree_profile(rep: &Representation) -> Result<VerificationReport> {
    let mut report = VerificationReport::new();
    for (label, m) in &rep.matrices {
        let deg = m.degree_in("b")?;
        let bound = match label {
            GeneratorLabel::U(_) | GeneratorLabel::Y => 1,
            _ => 0,
        };
        report.push(
            CheckResult::from_bool(format!("deg_b({label}) <= {bound}"), deg <= bound)
                .with_detail(format!("degree {deg}")),
        );
    }
    Ok(report)
}

/// `Y` is diagonal with entry `y0 - layer` on every basis vector, and the
/// layers have binomial sizes `C(P, l) * dim L`.
pub fn check_y_spectrum(k: &KacModule) -> Result<VerificationReport> {
    let mut report = VerificationReport::new();
    let y = k.rep.matrix(GeneratorLabel::Y)?;
    let space = &k.rep.params;
    let mut spectrum = CheckResult::pass("Y = y0 - layer");
    for (r, c, p) in y.entries() {
        let expect = if r == c {
            &k.y0 - &ParamPoly::constant(space, rat(k.rep.basis[r].layer() as i64, 1))
        } else {
            ParamPoly::zero(space)
        };
        if *p != expect {
            spectrum = CheckResult::fail("Y = y0 - layer")
                .with_locator(Locator { generators: vec!["y".into()], entry: Some((r, c)), ..Default::default() })
                .with_residual((p - &expect).to_string());
            break;
        }
    }
    if spectrum.passed && !k.y0.is_zero() && (0..k.dim()).any(|i| y.entry(i, i).is_none()) {
        spectrum = CheckResult::fail("Y = y0 - layer").with_detail("missing diagonal entry");
    }
    report.push(spectrum);
    let mut sizes = vec![0usize; k.num_odd + 1];
    for b in &k.rep.basis {
        sizes[b.layer()] += 1;
    }
    let binom = |p: usize, l: usize| (0..l).fold(1usize, |acc, i| acc * (p - i) / (i + 1));
    let ok = sizes.iter().enumerate().all(|(l, s)| *s == binom(k.num_odd, l) * k.even_dim);
    report.push(CheckResult::from_bool("binomial layer sizes", ok).with_detail(format!("{sizes:?}")));
    report.push(
        CheckResult::from_bool("dimension = 2^P dim L", k.dim() == (1usize << k.num_odd) * k.even_dim)
            .with_detail(format!("{} = 2^{} * {}", k.dim(), k.num_odd, k.even_dim)),
    );
    Ok(report)
}

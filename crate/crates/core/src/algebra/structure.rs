use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rayon::prelude::*;

use super::labels::GeneratorLabel;
use crate::error::{Error, Result};
use crate::exactmath::{format_rational, QMatrix, Rational, SpanSolver};
use crate::report::{CheckResult, Locator, VerificationReport};
use crate::representation::Representation;

/// A linear combination of generators.
pub type Expansion = BTreeMap<GeneratorLabel, Rational>;

fn add_scaled(acc: &mut Expansion, e: &Expansion, k: &Rational) {
    for (l, c) in e {
        let entry = acc.entry(*l).or_insert_with(Rational::zero);
        *entry += c * k;
        if entry.is_zero() {
            acc.remove(l);
        }
    }
}

pub fn format_expansion(e: &Expansion) -> String {
    if e.is_empty() {
        return "0".into();
    }
    e.iter().map(|(l, c)| format!("{}*{l}", format_rational(c))).collect::<Vec<_>>().join(" + ")
}

/// Super-bracket table `[a, b] = sum_c C^c_ab c` on a labelled basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureConstants {
    labels: Vec<GeneratorLabel>,
    table: BTreeMap<(GeneratorLabel, GeneratorLabel), Expansion>,
}

impl StructureConstants {
    /// Reads the constants off a faithful matrix representation by expanding
    /// every super-commutator in the span of the generator matrices.
    pub fn from_representation(rep: &Representation) -> Result<Self> {
        let labels: Vec<GeneratorLabel> = rep.matrices.keys().copied().collect();
        let flat = |l: &GeneratorLabel| -> Result<Vec<Rational>> {
            let q = rep.matrices[l].to_rational()?;
            Ok((0..q.rows()).flat_map(|r| q.row(r).to_vec()).collect())
        };
        let columns = labels.iter().map(flat).collect::<Result<Vec<_>>>()?;
        let solver = SpanSolver::new(QMatrix::from_columns(rep.dim() * rep.dim(), &columns))
            .map_err(|_| Error::Structural("generator matrices are linearly dependent".into()))?;
        let pairs: Vec<(GeneratorLabel, GeneratorLabel)> =
            labels.iter().flat_map(|a| labels.iter().map(move |b| (*a, *b))).collect();
        let table = pairs
            .par_iter()
            .map(|&(a, b)| {
                let br = rep.matrices[&a].supercommutator(&rep.matrices[&b], a.is_odd() && b.is_odd())?;
                let q = br.to_rational()?;
                let target: Vec<Rational> = (0..q.rows()).flat_map(|r| q.row(r).to_vec()).collect();
                let coords = solver
                    .solve(&target)?
                    .ok_or_else(|| Error::Structural(format!("[{a}, {b}] leaves the span of the generators")))?;
                let exp: Expansion =
                    labels.iter().zip(coords).filter(|(_, c)| !c.is_zero()).map(|(l, c)| (*l, c)).collect();
                Ok(((a, b), exp))
            })
            .collect::<Result<BTreeMap<_, _>>>()?;
        Ok(Self { labels, table })
    }

    /// Builds constants from an explicit table; missing pairs are zero.
    pub fn from_table(
        labels: Vec<GeneratorLabel>,
        table: BTreeMap<(GeneratorLabel, GeneratorLabel), Expansion>,
    ) -> Result<Self> {
        for ((a, b), e) in &table {
            for l in [a, b].into_iter().chain(e.keys()) {
                if !labels.contains(l) {
                    return Err(Error::Precondition(format!("label {l} used in the table but not declared")));
                }
            }
        }
        let table = table.into_iter().filter(|(_, e)| e.values().any(|c| !c.is_zero())).collect();
        Ok(Self { labels, table })
    }

    pub fn labels(&self) -> &[GeneratorLabel] {
        &self.labels
    }

    pub fn contains(&self, l: GeneratorLabel) -> bool {
        self.labels.contains(&l)
    }

    pub fn bracket(&self, a: GeneratorLabel, b: GeneratorLabel) -> Expansion {
        self.table.get(&(a, b)).cloned().unwrap_or_default()
    }

    /// Bilinear extension of the bracket.
    pub fn bracket_expansion(&self, x: &Expansion, y: &Expansion) -> Expansion {
        let mut out = Expansion::new();
        for (a, ca) in x {
            for (b, cb) in y {
                if let Some(e) = self.table.get(&(*a, *b)) {
                    add_scaled(&mut out, e, &(ca * cb));
                }
            }
        }
        out
    }

    /// The odd bracket constant `k`, the `y`-coefficient of `{u_1, v_1}`.
    pub fn k(&self) -> Result<Rational> {
        let k = self.bracket(GeneratorLabel::U(1), GeneratorLabel::V(1)).remove(&GeneratorLabel::Y).unwrap_or_default();
        if k.is_zero() {
            return Err(Error::Structural("{u1, v1} has no hypercharge component".into()));
        }
        Ok(k)
    }

    pub fn odd_raising(&self) -> Vec<GeneratorLabel> {
        self.labels.iter().copied().filter(|l| matches!(l, GeneratorLabel::U(_))).collect()
    }

    pub fn odd_lowering(&self) -> Vec<GeneratorLabel> {
        self.labels.iter().copied().filter(|l| matches!(l, GeneratorLabel::V(_))).collect()
    }

    pub fn even_labels(&self) -> Vec<GeneratorLabel> {
        self.labels.iter().copied().filter(|l| !l.is_odd()).collect()
    }

    /// `[a, b] = -(-1)^{|a||b|} [b, a]` for every pair.
    pub fn check_super_antisymmetry(&self) -> CheckResult {
        for &a in &self.labels {
            for &b in &self.labels {
                let sign = if a.is_odd() && b.is_odd() { Rational::one() } else { -Rational::one() };
                let mut lhs = self.bracket(a, b);
                add_scaled(&mut lhs, &self.bracket(b, a), &-sign);
                if !lhs.is_empty() {
                    return CheckResult::fail("super-antisymmetry")
                        .with_locator(Locator { generators: vec![a.to_string(), b.to_string()], ..Default::default() })
                        .with_residual(format_expansion(&lhs));
                }
            }
        }
        CheckResult::pass("super-antisymmetry")
    }

    /// `[a,[b,c]] = [[a,b],c] + (-1)^{|a||b|} [b,[a,c]]` for every triple.
    pub fn check_super_jacobi(&self) -> CheckResult {
        let single = |l: GeneratorLabel| Expansion::from([(l, Rational::one())]);
        let failure = self.labels.par_iter().find_map_first(|&a| {
            for &b in &self.labels {
                let ab = self.bracket(a, b);
                let sign = if a.is_odd() && b.is_odd() { -Rational::one() } else { Rational::one() };
                for &c in &self.labels {
                    let mut res = self.bracket_expansion(&single(a), &self.bracket(b, c));
                    add_scaled(&mut res, &self.bracket_expansion(&ab, &single(c)), &-Rational::one());
                    add_scaled(&mut res, &self.bracket_expansion(&single(b), &self.bracket(a, c)), &-sign.clone());
                    if !res.is_empty() {
                        return Some((a, b, c, res));
                    }
                }
            }
            None
        });
        let n = self.labels.len();
        match failure {
            None => CheckResult::pass("super-Jacobi").with_detail(format!("{} triples", n * n * n)),
            Some((a, b, c, res)) => CheckResult::fail("super-Jacobi")
                .with_locator(Locator {
                    generators: vec![a.to_string(), b.to_string(), c.to_string()],
                    ..Default::default()
                })
                .with_residual(format_expansion(&res)),
        }
    }

    /// Brackets respect parity and the `Z`-degree (+1 on `U`, -1 on `V`).
    pub fn check_grading(&self) -> CheckResult {
        for ((a, b), e) in &self.table {
            for l in e.keys() {
                if l.is_odd() != (a.is_odd() != b.is_odd()) || l.y_grade() != a.y_grade() + b.y_grade() {
                    return CheckResult::fail("Z-grading")
                        .with_locator(Locator { generators: vec![a.to_string(), b.to_string()], ..Default::default() })
                        .with_residual(format_expansion(e));
                }
            }
        }
        CheckResult::pass("Z-grading")
    }

    /// `ad y` is +1 on `U`, -1 on `V` and 0 on even generators.
    pub fn check_hypercharge(&self) -> CheckResult {
        if !self.contains(GeneratorLabel::Y) {
            return CheckResult::fail("hypercharge grading").with_detail("no y generator");
        }
        for &l in &self.labels {
            let expect: Expansion = match l.y_grade() {
                0 => Expansion::new(),
                g => Expansion::from([(l, Rational::from_integer(g.into()))]),
            };
            let got = self.bracket(GeneratorLabel::Y, l);
            if got != expect {
                return CheckResult::fail("hypercharge grading")
                    .with_locator(Locator { generators: vec!["y".into(), l.to_string()], ..Default::default() })
                    .with_residual(format_expansion(&got));
            }
        }
        CheckResult::pass("hypercharge grading")
    }

    pub fn self_check(&self) -> VerificationReport {
        let mut r = VerificationReport::new();
        r.push(self.check_super_antisymmetry());
        r.push(self.check_grading());
        r.push(self.check_super_jacobi());
        r
    }
}

/// Verifies `[rho(a), rho(b)] = rho([a, b])` for every unordered pair of
/// generators; ordered pairs follow by super-antisymmetry of both sides.
pub fn check_super_relations(rep: &Representation, sc: &StructureConstants) -> Result<VerificationReport> {
    check_super_relations_on(rep, sc, sc.labels())
}

/// [`check_super_relations`] restricted to pairs drawn from `labels`.
pub fn check_super_relations_on(
    rep: &Representation,
    sc: &StructureConstants,
    labels: &[GeneratorLabel],
) -> Result<VerificationReport> {
    rep.validate()?;
    for l in labels {
        rep.matrix(*l)?;
    }
    let pairs: Vec<(GeneratorLabel, GeneratorLabel)> =
        labels.iter().enumerate().flat_map(|(i, a)| labels[i..].iter().map(move |b| (*a, *b))).collect();
    let failures = pairs
        .par_iter()
        .map(|&(a, b)| -> Result<Option<CheckResult>> {
            let lhs = rep.matrices[&a].supercommutator(&rep.matrices[&b], a.is_odd() && b.is_odd())?;
            let mut residual = lhs;
            for (l, c) in sc.bracket(a, b) {
                residual = residual.try_sub(&rep.matrix(l)?.scale(&c))?;
            }
            Ok(residual.first_nonzero().map(|(r, col, p)| {
                CheckResult::fail(format!("[{a}, {b}]"))
                    .with_locator(Locator {
                        generators: vec![a.to_string(), b.to_string()],
                        entry: Some((r, col)),
                        ..Default::default()
                    })
                    .with_residual(p.to_string())
            }))
        })
        .collect::<Result<Vec<_>>>()?;
    let failures: Vec<CheckResult> = failures.into_iter().flatten().collect();
    let mut report = VerificationReport::new();
    let summary = CheckResult::from_bool("super-relations", failures.is_empty()).with_detail(format!(
        "{} generator pairs, {} violated, dimension {}",
        pairs.len(),
        failures.len(),
        rep.dim()
    ));
    report.push(summary);
    for f in failures {
        report.push(f);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{fundamental_rep, RootDatum, SuperAlgebraSpec};
    use crate::exactmath::rat;

    #[test]
    fn sl21_constants() {
        let d = RootDatum::new(SuperAlgebraSpec::sl(2, 1).unwrap());
        let sc = StructureConstants::from_representation(&fundamental_rep(&d)).unwrap();
        // {u1, v1} = E22 + E33 = -1/2 h1 - 1/2 y
        assert_eq!(
            sc.bracket(GeneratorLabel::U(1), GeneratorLabel::V(1)),
            Expansion::from([(GeneratorLabel::H(1), rat(-1, 2)), (GeneratorLabel::Y, rat(-1, 2))])
        );
        assert_eq!(sc.k().unwrap(), rat(-1, 2));
        assert!(sc.self_check().passed);
        assert!(sc.check_hypercharge().passed);
    }

    #[test]
    fn fundamental_satisfies_its_own_relations() {
        let d = RootDatum::new(SuperAlgebraSpec::gl(1, 2).unwrap());
        let rep = fundamental_rep(&d);
        let sc = StructureConstants::from_representation(&rep).unwrap();
        assert!(check_super_relations(&rep, &sc).unwrap().passed);
    }

    #[test]
    fn broken_matrix_is_located() {
        let d = RootDatum::new(SuperAlgebraSpec::sl(2, 1).unwrap());
        let mut rep = fundamental_rep(&d);
        let sc = StructureConstants::from_representation(&rep).unwrap();
        let e = rep.matrices.get_mut(&GeneratorLabel::E(1)).unwrap();
        *e = e.scale(&rat(2, 1));
        let report = check_super_relations(&rep, &sc).unwrap();
        assert!(!report.passed);
        assert!(report.checks.iter().any(|c| c.name == "[e1, f1]" && c.residual.is_some()));
    }
}

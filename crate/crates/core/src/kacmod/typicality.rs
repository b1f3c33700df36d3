use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use super::KacModule;
use crate::algebra::{GeneratorLabel, SuperAlgebra};
use crate::error::{Error, Result};
use crate::evenrep::EvenModule;
use crate::exactmath::{format_rational, rational_roots, row_reduce, ParamPoly, QMatrix, Rational};
use crate::report::{CheckResult, Locator, VerificationReport};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Typicality {
    Typical,
    /// The 1-based odd root indices whose factor vanishes.
    Atypical(Vec<usize>),
}

/// The scalar `s(b)` by which `u_1..u_P v_1..v_P` acts on the highest
/// weight vector, against the product of `<Lambda + rho | beta_i>`.
#[derive(Clone, Debug)]
pub struct TypicalityReport {
    pub s: ParamPoly,
    pub factors: Vec<ParamPoly>,
    /// Rational roots of `s(b)` with multiplicity, ascending.
    pub s_roots: Vec<Rational>,
    pub factor_roots: Vec<Rational>,
    /// Root multisets coincide and `s(b)` has no irrational part.
    pub roots_match: bool,
    /// `c` with `s = c * prod(factors)`, when such a constant exists.
    pub constant: Option<Rational>,
}

impl TypicalityReport {
    pub fn classify(&self, b: &Rational) -> Result<Typicality> {
        let bind = BTreeMap::from([("b".to_string(), b.clone())]);
        let mut vanishing = Vec::new();
        for (i, f) in self.factors.iter().enumerate() {
            let v = f.substitute(&bind)?;
            if v.is_zero() {
                vanishing.push(i + 1);
            } else if !v.is_constant() {
                return Err(Error::Structural(format!("factor {f} depends on more than b")));
            }
        }
        Ok(if vanishing.is_empty() { Typicality::Typical } else { Typicality::Atypical(vanishing) })
    }
}

fn product(space: &crate::exactmath::ParamSpace, ps: &[ParamPoly]) -> ParamPoly {
    ps.iter().fold(ParamPoly::one(space), |acc, p| &acc * p)
}

pub fn kac_typicality(alg: &SuperAlgebra, k: &KacModule) -> Result<TypicalityReport> {
    let space = k.rep.params.clone();
    let p = k.num_odd;
    let mut v = BTreeMap::from([(0usize, ParamPoly::one(&space))]);
    for j in (1..=p).rev() {
        v = k.rep.matrix(GeneratorLabel::V(j))?.apply(&v);
    }
    for i in (1..=p).rev() {
        v = k.rep.matrix(GeneratorLabel::U(i))?.apply(&v);
    }
    let s = v.remove(&0).unwrap_or_else(|| ParamPoly::zero(&space));
    if v.values().any(|x| !x.is_zero()) {
        return Err(Error::Structural("u..u v..v does not return to the highest weight line".into()));
    }
    if s.is_zero() {
        return Err(Error::Structural("s(b) vanishes identically".into()));
    }
    let factors = alg.datum.typicality_factors(&k.labels, &space)?;
    let prod = product(&space, &factors);
    let s_split = rational_roots(&s.to_univariate("b")?)?;
    let f_split = rational_roots(&prod.to_univariate("b")?)?;
    let roots_match = s_split.multiset() == f_split.multiset() && s_split.cofactor.len() == 1;
    let constant = {
        let sc = s.to_univariate("b")?;
        let pc = prod.to_univariate("b")?;
        let c = sc.last().expect("nonzero") / pc.last().expect("nonzero");
        (s == prod.scale(&c)).then_some(c)
    };
    Ok(TypicalityReport {
        s,
        factors,
        s_roots: s_split.multiset(),
        factor_roots: f_split.multiset(),
        roots_match,
        constant,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RaisingSet {
    EvenOnly,
    EvenAndOdd,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularVector {
    pub weight: Vec<i64>,
    pub layer: usize,
    /// Nonzero coordinates in the module basis.
    pub coefficients: Vec<(usize, Rational)>,
}

/// Vectors annihilated by the simple even raising generators (and by every
/// odd raising generator in [`RaisingSet::EvenAndOdd`]), per weight space,
/// at `b = b_value`. Raising generators never involve `c`, which is set to 0.
pub fn singular_vectors(k: &KacModule, b_value: &Rational, raising: RaisingSet) -> Result<Vec<SingularVector>> {
    let mut bind = BTreeMap::from([("b".to_string(), b_value.clone())]);
    if k.rep.params.index_of("c").is_some() {
        bind.insert("c".into(), Rational::zero());
    }
    let mut ops: Vec<QMatrix> = Vec::new();
    for i in 1..=k.spec.even_rank() {
        ops.push(k.rep.matrix(GeneratorLabel::E(i))?.substitute(&bind)?.to_rational()?);
    }
    if raising == RaisingSet::EvenAndOdd {
        for j in 1..=k.num_odd {
            ops.push(k.rep.matrix(GeneratorLabel::U(j))?.substitute(&bind)?.to_rational()?);
        }
    }
    let mut out = Vec::new();
    for (weight, cols) in k.rep.weight_spaces() {
        let blocks: Vec<QMatrix> = ops.iter().map(|op| op.select_columns(&cols)).collect();
        let refs: Vec<&QMatrix> = blocks.iter().collect();
        let stacked = if refs.is_empty() { QMatrix::zeros(0, cols.len()) } else { QMatrix::stack(&refs) };
        for null in row_reduce(&stacked).nullspace {
            if !stacked.mul_vec(&null).iter().all(Zero::is_zero) {
                return Err(Error::Structural("nullspace vector is not annihilated".into()));
            }
            let coefficients = cols.iter().zip(null).filter(|(_, c)| !c.is_zero()).map(|(i, c)| (*i, c)).collect();
            out.push(SingularVector { weight: weight.clone(), layer: k.rep.basis[cols[0]].layer(), coefficients });
        }
    }
    Ok(out)
}

fn describe(found: &[SingularVector]) -> String {
    let parts: Vec<String> = found.iter().map(|s| format!("{:?} (layer {})", s.weight, s.layer)).collect();
    format!("found at {}", parts.join(", "))
}

/// Compares the root multisets of `s(b)` and of the factor product, then at
/// every atypical root looks for a singular vector at `Lambda - beta_i` for
/// each vanishing factor `i`, and at the generic value `b = 5/7` checks that
/// the highest weight vector is the only singular vector.
pub fn check_typicality(alg: &SuperAlgebra, k: &KacModule) -> Result<VerificationReport> {
    let t = kac_typicality(alg, k)?;
    let fmt = |rs: &[Rational]| rs.iter().map(format_rational).collect::<Vec<_>>().join(", ");
    let mut report = VerificationReport::new();
    report.push(
        CheckResult::from_bool("roots of s(b) = roots of prod <Lambda+rho|beta_i>", t.roots_match)
            .with_detail(format!("s: [{}], factors: [{}]", fmt(&t.s_roots), fmt(&t.factor_roots))),
    );
    report.push(match &t.constant {
        Some(c) => CheckResult::pass("s(b) = const * prod").with_detail(format!("const = {}", format_rational(c))),
        None => CheckResult::fail("s(b) = const * prod").with_residual(t.s.to_string()),
    });
    let mut roots = t.factor_roots.clone();
    roots.dedup();
    for root in &roots {
        let Typicality::Atypical(types) = t.classify(root)? else {
            return Err(Error::Structural(format!("root {} leaves every factor nonzero", format_rational(root))));
        };
        let found = singular_vectors(k, root, RaisingSet::EvenAndOdd)?;
        for i in types {
            let target: Vec<i64> = alg.datum.odd_root_weight(i).iter().map(|x| -x).collect();
            let name = format!("b = {}: singular vector at Lambda - beta_{i}", format_rational(root));
            let ok = found.iter().any(|s| s.weight == target);
            let check = CheckResult::from_bool(name, ok).with_detail(describe(&found));
            report.push(if ok {
                check
            } else {
                check.with_locator(Locator {
                    generators: vec![format!("u1..u{}", k.num_odd)],
                    entry: None,
                    bindings: BTreeMap::from([
                        ("a".to_string(), format!("{:?}", k.labels)),
                        ("b".to_string(), format_rational(root)),
                    ]),
                })
            });
        }
    }
    let generic = Rational::new(5.into(), 7.into());
    let found = singular_vectors(k, &generic, RaisingSet::EvenAndOdd)?;
    let only_top = found.len() == 1 && found[0].weight.iter().all(|x| *x == 0);
    report.push(
        CheckResult::from_bool(
            "b = 5/7: only Lambda is singular",
            only_top && t.classify(&generic)? == Typicality::Typical,
        )
        .with_detail(describe(&found)),
    );
    Ok(report)
}

/// Weight multiplicities of the Kac module.
pub fn character(k: &KacModule) -> BTreeMap<Vec<i64>, usize> {
    k.rep.weight_spaces().into_iter().map(|(w, v)| (w, v.len())).collect()
}

/// Weight multiplicities of an even module.
pub fn even_character(l: &EvenModule) -> BTreeMap<Vec<i64>, usize> {
    let mut out = BTreeMap::new();
    for w in &l.weights {
        *out.entry(w.clone()).or_insert(0) += 1;
    }
    out
}

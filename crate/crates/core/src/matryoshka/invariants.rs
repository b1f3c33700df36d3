use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::{twist, ReplicatedModule, TwistSpec};
use crate::algebra::{GeneratorLabel, StructureConstants};
use crate::error::{Error, Result};
use crate::exactmath::{rat, PolyMatrix, QMatrix, Rational};
use crate::kacmod::KacModule;
use crate::representation::Representation;

/// A Cartan element `sum c_l * l` over `h_i`, `y`, `z0`.
pub type CartanElement = Vec<(GeneratorLabel, Rational)>;

/// A functional on the Cartan subalgebra, by its values on the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanFunctional {
    pub values: BTreeMap<GeneratorLabel, Rational>,
}

impl CartanFunctional {
    pub fn value(&self, label: GeneratorLabel) -> Rational {
        self.values.get(&label).cloned().unwrap_or_else(Rational::zero)
    }

    /// Vanishes on every `h_i`.
    pub fn annihilates_h_double_prime(&self) -> bool {
        self.values.iter().all(|(l, v)| !matches!(l, GeneratorLabel::H(_)) || v.is_zero())
    }

    /// Values on `(y, z0)`.
    pub fn prime_part(&self) -> (Rational, Rational) {
        (self.value(GeneratorLabel::Y), self.value(GeneratorLabel::Z0))
    }
}

/// For a two-block self-extension, reads `mu` from the action
/// `h v' = lambda(h) v' + mu(h) v` on the top weight space, where `v` is the
/// highest weight vector of the submodule (block 0) and `v'` its copy in
/// block 1.
pub fn upsilon_extract(r: &ReplicatedModule) -> Result<CartanFunctional> {
    if r.blocks != 2 {
        return Err(Error::Precondition(format!("Upsilon needs a 2-block extension, got {} blocks", r.blocks)));
    }
    let top: Vec<usize> =
        r.rep.basis.iter().enumerate().filter(|(_, b)| b.weight.iter().all(|x| *x == 0)).map(|(i, _)| i).collect();
    if top.len() != 2 {
        return Err(Error::Structural(format!("top weight space has dimension {}, expected 2", top.len())));
    }
    let (v, vp) = (top[0], top[1]);
    let mut values = BTreeMap::new();
    for (label, m) in &r.rep.matrices {
        if !label.is_cartan() {
            continue;
        }
        if m.get(v, v) != m.get(vp, vp) || m.entry(vp, v).is_some() {
            return Err(Error::Structural(format!(
                "{label} is not upper triangular with equal diagonal on the top space"
            )));
        }
        let mu = m.get(v, vp);
        let mu = mu
            .constant_value()
            .ok_or_else(|| Error::Structural(format!("Upsilon value {mu} on {label} depends on parameters")))?;
        values.insert(*label, mu);
    }
    Ok(CartanFunctional { values })
}

fn cartan_matrix(rep: &Representation, h: &CartanElement, bindings: &BTreeMap<String, Rational>) -> Result<QMatrix> {
    let mut acc = PolyMatrix::zeros(&rep.params, rep.dim(), rep.dim());
    for (l, c) in h {
        if !l.is_cartan() {
            return Err(Error::Precondition(format!("{l} is not a Cartan generator")));
        }
        acc = acc.try_add(&rep.matrix(*l)?.scale(c))?;
    }
    acc.substitute(bindings)?.to_rational()
}

fn nilpotency(a: &QMatrix) -> Result<usize> {
    let n = a.rows();
    let lambda = a.trace() / rat(n as i64, 1);
    let nil = a.scale_identity_sub(&lambda);
    let mut power = nil.clone();
    for deg in 1..=n {
        if power.is_zero() {
            return Ok(deg);
        }
        power = power.mul(&nil);
    }
    Err(Error::Structural("Cartan element has several eigenvalues on one generalized weight space".into()))
}

fn restricted(a: &QMatrix, idx: &[usize]) -> Result<QMatrix> {
    for &c in idx {
        for r in 0..a.rows() {
            if !idx.contains(&r) && !a.get(r, c).is_zero() {
                return Err(Error::Structural("Cartan element does not preserve a weight space".into()));
            }
        }
    }
    Ok(QMatrix::from_rows(idx.iter().map(|&r| idx.iter().map(|&c| a.get(r, c).clone()).collect()).collect()))
}

/// Degree of the minimal polynomial of `h` on one generalized weight space,
/// after substituting `bindings` for the parameters.
pub fn minpoly_degree_on(
    rep: &Representation,
    h: &CartanElement,
    bindings: &BTreeMap<String, Rational>,
    weight: &[i64],
) -> Result<usize> {
    let spaces = rep.weight_spaces();
    let idx = spaces.get(weight).ok_or_else(|| Error::Precondition(format!("weight {weight:?} does not occur")))?;
    nilpotency(&restricted(&cartan_matrix(rep, h, bindings)?, idx)?)
}

/// [`minpoly_degree_on`] for every weight of the module.
pub fn jordan_minpoly_profile(
    rep: &Representation,
    h: &CartanElement,
    bindings: &BTreeMap<String, Rational>,
) -> Result<BTreeMap<Vec<i64>, usize>> {
    let a = cartan_matrix(rep, h, bindings)?;
    rep.weight_spaces().into_iter().map(|(w, idx)| Ok((w, nilpotency(&restricted(&a, &idx)?)?))).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoWitness {
    /// `nu = scale * mu`; conjugating by `Q = diag(q_p I)` over the blocks
    /// carries the `mu`-twist onto the `nu`-twist.
    Conjugation { scale: Rational, q_diagonal: Vec<Rational>, verified: bool },
    /// `h = h_y y + h_z z0` with `nu(h) = 0 != mu(h)` and the minimal
    /// polynomial degrees of `h` on the top weight space of each twist.
    MinimalPolynomial { h: (Rational, Rational), weight: Vec<i64>, degree_nu: usize, degree_mu: usize },
    /// `J_1(nu)` is the trivial module for every `nu`, so both twists equal
    /// the Kac module itself.
    TrivialLength { verified: bool },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoDecision {
    pub isomorphic: bool,
    pub witness: IsoWitness,
}

/// Decides `K(L; n; nu) = K(L; n; mu)` by proportionality of `nu` and `mu`
/// and produces a witness either way.
pub fn self_extension_iso_decision(
    k: &KacModule,
    sc: &StructureConstants,
    nu: &(Rational, Rational),
    mu: &(Rational, Rational),
    n: usize,
    bindings: &BTreeMap<String, Rational>,
) -> Result<IsoDecision> {
    let rn = twist(k, sc, &TwistSpec::new(n, nu.0.clone(), nu.1.clone())?)?;
    let rm = twist(k, sc, &TwistSpec::new(n, mu.0.clone(), mu.1.clone())?)?;
    if n == 1 {
        return Ok(IsoDecision { isomorphic: true, witness: IsoWitness::TrivialLength { verified: rn.rep == rm.rep } });
    }
    let cross = &nu.0 * &mu.1 - &nu.1 * &mu.0;
    if cross.is_zero() {
        let scale = if mu.0.is_zero() { &nu.1 / &mu.1 } else { &nu.0 / &mu.0 };
        let d = k.dim();
        let q_diagonal: Vec<Rational> =
            (0..n).map(|p| (0..n - 1 - p).fold(Rational::one(), |acc, _| acc * &scale)).collect();
        let q = |i: usize| &q_diagonal[i / d];
        let mut verified = true;
        for (label, m) in &rm.rep.matrices {
            let mut conj = PolyMatrix::zeros(m.space(), m.rows(), m.cols());
            for (r, c, p) in m.entries() {
                conj.set(r, c, p.scale(&(q(r) / q(c))));
            }
            verified &= &conj == rn.rep.matrix(*label)?;
        }
        return Ok(IsoDecision { isomorphic: true, witness: IsoWitness::Conjugation { scale, q_diagonal, verified } });
    }
    let h = (-nu.1.clone(), nu.0.clone());
    let mut element: CartanElement = vec![(GeneratorLabel::Y, h.0.clone())];
    if !h.1.is_zero() {
        element.push((GeneratorLabel::Z0, h.1.clone()));
    }
    let weight = vec![0; k.rep.basis[0].weight.len()];
    let degree_nu = minpoly_degree_on(&rn.rep, &element, bindings, &weight)?;
    let degree_mu = minpoly_degree_on(&rm.rep, &element, bindings, &weight)?;
    Ok(IsoDecision { isomorphic: false, witness: IsoWitness::MinimalPolynomial { h, weight, degree_nu, degree_mu } })
}

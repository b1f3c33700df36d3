use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::rational::{format_rational, Rational};
use crate::error::{Error, Result};

/// An ordered list of declared formal parameters (`b`, `c`, `t`, ...).
///
/// Two polynomials may only be combined when their spaces are equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ParamSpace {
    names: Arc<[String]>,
}

impl fmt::Debug for ParamSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.names.iter()).finish()
    }
}

impl ParamSpace {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() || !n.chars().all(|c| c.is_alphanumeric() || c == '_') {
                return Err(Error::Parse(format!("invalid parameter name `{n}`")));
            }
            if names[..i].contains(n) {
                return Err(Error::Parse(format!("parameter `{n}` declared twice")));
            }
        }
        Ok(Self { names: names.into() })
    }

    pub fn empty() -> Self {
        Self { names: Arc::from(Vec::new()) }
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    fn require(&self, name: &str) -> Result<usize> {
        self.index_of(name).ok_or_else(|| Error::UndeclaredParam(name.to_string()))
    }

    /// This space with `name` appended (unchanged if already declared).
    pub fn with(&self, name: &str) -> Result<Self> {
        if self.index_of(name).is_some() {
            return Ok(self.clone());
        }
        let mut v = self.names.to_vec();
        v.push(name.to_string());
        Self::new(v)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::ParamMismatch { left: self.names.to_vec(), right: other.names.to_vec() })
        }
    }
}

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Terms map an exponent vector (one entry per declared parameter) to a
/// nonzero coefficient.
#[derive(Clone, PartialEq, Eq)]
pub struct ParamPoly {
    space: ParamSpace,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl ParamPoly {
    pub fn zero(space: &ParamSpace) -> Self {
        Self { space: space.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(space: &ParamSpace, c: Rational) -> Self {
        let mut p = Self::zero(space);
        if !c.is_zero() {
            p.terms.insert(vec![0; space.len()], c);
        }
        p
    }

    pub fn one(space: &ParamSpace) -> Self {
        Self::constant(space, Rational::one())
    }

    /// The polynomial consisting of the single parameter `name`.
    pub fn var(space: &ParamSpace, name: &str) -> Result<Self> {
        let i = space.require(name)?;
        let mut e = vec![0; space.len()];
        e[i] = 1;
        let mut p = Self::zero(space);
        p.terms.insert(e, Rational::one());
        Ok(p)
    }

    /// Builds from `(exponents, coefficient)` pairs, merging duplicates.
    pub fn from_terms<I>(space: &ParamSpace, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, Rational)>,
    {
        let mut p = Self::zero(space);
        for (e, c) in terms {
            if e.len() != space.len() {
                return Err(Error::Dimension(format!(
                    "exponent vector of length {} for {} parameters",
                    e.len(),
                    space.len()
                )));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, e: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn space(&self) -> &ParamSpace {
        &self.space
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Zero degree in every parameter.
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    /// The value of a parameter-free polynomial.
    pub fn constant_value(&self) -> Option<Rational> {
        if !self.is_constant() {
            return None;
        }
        Some(self.terms.values().next().cloned().unwrap_or_else(Rational::zero))
    }

    /// Exact degree in `name`; the zero polynomial has degree 0.
    pub fn degree_in(&self, name: &str) -> Result<u32> {
        let i = self.space.require(name)?;
        Ok(self.terms.keys().map(|e| e[i]).max().unwrap_or(0))
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.space.check(&other.space)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.space.check(&other.space)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.space.check(&other.space)?;
        let mut out = Self::zero(&self.space);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        Ok(out)
    }

    /// In-place `self += other`.
    pub fn try_add_assign(&mut self, other: &Self) -> Result<()> {
        self.space.check(&other.space)?;
        for (e, c) in &other.terms {
            self.add_term(e.clone(), c.clone());
        }
        Ok(())
    }

    pub fn scale(&self, k: &Rational) -> Self {
        if k.is_zero() {
            return Self::zero(&self.space);
        }
        Self { space: self.space.clone(), terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect() }
    }

    /// Partial or total evaluation. Unbound parameters stay symbolic; the
    /// parameter space is unchanged.
    pub fn substitute(&self, bindings: &BTreeMap<String, Rational>) -> Result<Self> {
        let idx: Vec<(usize, &Rational)> =
            bindings.iter().map(|(k, v)| Ok((self.space.require(k)?, v))).collect::<Result<_>>()?;
        let mut out = Self::zero(&self.space);
        for (e, c) in &self.terms {
            let mut e = e.clone();
            let mut c = c.clone();
            for &(i, v) in &idx {
                if e[i] > 0 {
                    c *= num_traits::pow(v.clone(), e[i] as usize);
                    e[i] = 0;
                }
            }
            out.add_term(e, c);
        }
        Ok(out)
    }

    /// Formal partial derivative.
    pub fn derivative(&self, name: &str) -> Result<Self> {
        let i = self.space.require(name)?;
        let mut out = Self::zero(&self.space);
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut e2 = e.clone();
                e2[i] -= 1;
                out.add_term(e2, c * Rational::from_integer(e[i].into()));
            }
        }
        Ok(out)
    }

    /// The coefficient of `name^k`, as a polynomial free of `name`.
    pub fn coefficient(&self, name: &str, k: u32) -> Result<Self> {
        let i = self.space.require(name)?;
        let mut out = Self::zero(&self.space);
        for (e, c) in &self.terms {
            if e[i] == k {
                let mut e2 = e.clone();
                e2[i] = 0;
                out.add_term(e2, c.clone());
            }
        }
        Ok(out)
    }

    /// Re-expresses this polynomial over a larger space containing every
    /// parameter of the current one.
    pub fn embed(&self, target: &ParamSpace) -> Result<Self> {
        if &self.space == target {
            return Ok(self.clone());
        }
        let map: Vec<usize> = self.space.names().iter().map(|n| target.require(n)).collect::<Result<_>>()?;
        let mut out = Self::zero(target);
        for (e, c) in &self.terms {
            let mut e2 = vec![0; target.len()];
            for (k, &x) in e.iter().enumerate() {
                e2[map[k]] = x;
            }
            out.add_term(e2, c.clone());
        }
        Ok(out)
    }

    /// Dense coefficient list `[c0, c1, ...]` of a polynomial involving at
    /// most the parameter `name`.
    pub fn to_univariate(&self, name: &str) -> Result<Vec<Rational>> {
        let i = self.space.require(name)?;
        let deg = self.degree_in(name)? as usize;
        let mut out = vec![Rational::zero(); deg + 1];
        for (e, c) in &self.terms {
            if e.iter().enumerate().any(|(k, &x)| k != i && x != 0) {
                return Err(Error::Precondition(format!("polynomial {self} involves parameters other than `{name}`")));
            }
            out[e[i] as usize] = c.clone();
        }
        while out.len() > 1 && out.last().is_some_and(Zero::is_zero) {
            out.pop();
        }
        Ok(out)
    }

    /// Monomial key in the exchange format: `"1"` for the constant term,
    /// otherwise `name^exp` factors joined by `.`, zero exponents omitted.
    pub fn monomial_key(space: &ParamSpace, e: &[u32]) -> String {
        let parts: Vec<String> =
            e.iter().enumerate().filter(|(_, &x)| x > 0).map(|(i, x)| format!("{}^{}", space.names()[i], x)).collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join(".")
        }
    }

    /// Inverse of [`ParamPoly::monomial_key`]. Zero exponents such as
    /// `c^0` are accepted.
    pub fn parse_monomial_key(space: &ParamSpace, key: &str) -> Result<Vec<u32>> {
        let mut e = vec![0; space.len()];
        if key.trim() == "1" {
            return Ok(e);
        }
        for part in key.split('.') {
            let (name, exp) =
                part.split_once('^').ok_or_else(|| Error::Parse(format!("bad monomial factor `{part}` in `{key}`")))?;
            let i = space.require(name.trim())?;
            let x: u32 = exp.trim().parse().map_err(|_| Error::Parse(format!("bad exponent in `{key}`")))?;
            e[i] += x;
        }
        Ok(e)
    }
}

impl fmt::Debug for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest degree first reads naturally
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let key = Self::monomial_key(&self.space, e).replace('.', "*");
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if k == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if key == "1" {
                write!(f, "{}", format_rational(&mag))?;
            } else if mag.is_one() {
                write!(f, "{key}")?;
            } else {
                write!(f, "{}*{key}", format_rational(&mag))?;
            }
        }
        Ok(())
    }
}

// Operator forms panic on mismatched parameter spaces, like shape errors in
// array libraries. Use the `try_*` methods when the spaces are not known to agree.

impl Add for &ParamPoly {
    type Output = ParamPoly;
    fn add(self, rhs: Self) -> ParamPoly {
        self.try_add(rhs).expect("ParamPoly add")
    }
}

impl Sub for &ParamPoly {
    type Output = ParamPoly;
    fn sub(self, rhs: Self) -> ParamPoly {
        self.try_sub(rhs).expect("ParamPoly sub")
    }
}

impl Mul for &ParamPoly {
    type Output = ParamPoly;
    fn mul(self, rhs: Self) -> ParamPoly {
        self.try_mul(rhs).expect("ParamPoly mul")
    }
}

impl Neg for &ParamPoly {
    type Output = ParamPoly;
    fn neg(self) -> ParamPoly {
        ParamPoly { space: self.space.clone(), terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }
}

//! Rational root extraction for univariate polynomials over Q.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rational::Rational;
use crate::error::{Error, Result};

/// Rational roots with multiplicities, plus the cofactor left after dividing
/// them out (ascending coefficients).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSplit {
    pub roots: Vec<(Rational, usize)>,
    pub cofactor: Vec<Rational>,
}

impl RootSplit {
    /// Roots repeated according to multiplicity, ascending.
    pub fn multiset(&self) -> Vec<Rational> {
        self.roots.iter().flat_map(|(r, m)| std::iter::repeat_n(r.clone(), *m)).collect()
    }
}

fn eval(p: &[Rational], x: &Rational) -> Rational {
    p.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
}

/// Divides by `(x - r)`, assuming `r` is a root.
fn deflate(p: &[Rational], r: &Rational) -> Vec<Rational> {
    let n = p.len() - 1;
    let mut q = vec![Rational::zero(); n];
    let mut carry = Rational::zero();
    for i in (0..n).rev() {
        carry = &p[i + 1] + carry * r;
        q[i] = carry.clone();
    }
    q
}

fn divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let n = n.abs().to_u64().ok_or_else(|| Error::Precondition("coefficient too large for root search".into()))?;
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    Ok(out)
}

/// Finds every rational root of `coeffs[0] + coeffs[1] x + ...` by the
/// rational root test. The zero polynomial is rejected.
pub fn rational_roots(coeffs: &[Rational]) -> Result<RootSplit> {
    let mut p: Vec<Rational> = coeffs.to_vec();
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    if p.is_empty() {
        return Err(Error::Precondition("the zero polynomial has no finite root set".into()));
    }
    let mut roots = Vec::new();
    let zero_mult = p.iter().take_while(|c| c.is_zero()).count();
    if zero_mult > 0 {
        p.drain(..zero_mult);
        roots.push((Rational::zero(), zero_mult));
    }
    if p.len() > 1 {
        let lcm = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = p.iter().map(|c| (c * Rational::from_integer(lcm.clone())).to_integer()).collect();
        let lead = divisors(ints.last().unwrap())?;
        let tail = divisors(&ints[0])?;
        let mut candidates: Vec<Rational> = Vec::new();
        for num in &tail {
            for den in &lead {
                for s in [1, -1] {
                    let r = Rational::new(num * s, den.clone());
                    if !candidates.contains(&r) {
                        candidates.push(r);
                    }
                }
            }
        }
        candidates.sort();
        for r in candidates {
            let mut mult = 0;
            while p.len() > 1 && eval(&p, &r).is_zero() {
                p = deflate(&p, &r);
                mult += 1;
            }
            if mult > 0 {
                roots.push((r, mult));
            }
        }
    }
    roots.sort();
    Ok(RootSplit { roots, cofactor: p })
}

//! Sparse multivariate polynomials over ℚ.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::rational::Rational;
use crate::error::{Error, Result};

/// Terms keyed by exponent vector; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct MPoly {
    vars: Vec<String>,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl MPoly {
    pub fn zero(vars: &[&str]) -> Self {
        MPoly {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &[&str], c: Rational) -> Self {
        let mut p = MPoly::zero(vars);
        p.add_term(vec![0; vars.len()], c);
        p
    }

    /// The `i`-th variable as a polynomial.
    pub fn var(vars: &[&str], i: usize) -> Self {
        assert!(i < vars.len(), "variable index out of range");
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        let mut p = MPoly::zero(vars);
        p.add_term(e, Rational::one());
        p
    }

    /// All variables of `vars`, in order.
    pub fn vars_of(vars: &[&str]) -> Vec<MPoly> {
        (0..vars.len()).map(|i| MPoly::var(vars, i)).collect()
    }

    pub fn var_names(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: Rational) {
        assert_eq!(exps.len(), self.vars.len(), "exponent vector length");
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exps).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    fn check_compatible(&self, other: &MPoly) {
        assert_eq!(self.vars, other.vars, "polynomials over different variables");
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        self.check_compatible(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> MPoly {
        let mut out = MPoly { vars: self.vars.clone(), terms: BTreeMap::new() };
        if c.is_zero() {
            return out;
        }
        for (e, v) in &self.terms {
            out.terms.insert(e.clone(), v * c);
        }
        out
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        self.check_compatible(other);
        let mut out = MPoly { vars: self.vars.clone(), terms: BTreeMap::new() };
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> MPoly {
        let names: Vec<&str> = self.vars.iter().map(String::as_str).collect();
        (0..k).fold(MPoly::constant(&names, Rational::one()), |acc, _| acc.mul(self))
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.vars.len() {
            return Err(Error::Dimension(format!(
                "expected {} values, got {}",
                self.vars.len(),
                point.len()
            )));
        }
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t *= num_traits::pow(x.clone(), k as usize);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Weight of each monomial under `weights`.
    pub fn monomial_weights(&self, weights: &[i64]) -> Vec<i64> {
        assert_eq!(weights.len(), self.vars.len(), "weight vector length");
        self.terms
            .keys()
            .map(|e| e.iter().zip(weights).map(|(&k, &w)| k as i64 * w).sum())
            .collect()
    }

    /// The common monomial weight, if there is one (`None` for zero).
    pub fn homogeneous_weight(&self, weights: &[i64]) -> Option<i64> {
        let ws = self.monomial_weights(weights);
        let first = *ws.first()?;
        ws.iter().all(|&w| w == first).then_some(first)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly({self})")
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            match (n, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mono: Vec<String> = e
                .iter()
                .zip(&self.vars)
                .filter(|(&k, _)| k > 0)
                .map(|(&k, v)| if k == 1 { v.clone() } else { format!("{v}^{k}") })
                .collect();
            if mono.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else if a.denom() == &BigInt::one() {
                write!(f, "{a}*{}", mono.join("*"))?;
            } else {
                write!(f, "({a})*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rational::{int, rat};

    const V: [&str; 3] = ["x", "y", "z"];

    #[test]
    fn arithmetic_and_eval() {
        let [x, y, z] = <[MPoly; 3]>::try_from(MPoly::vars_of(&V)).unwrap();
        let p = x.add(&y).pow(2).sub(&z.scale(&rat(1, 2)));
        assert_eq!(p.num_terms(), 4);
        assert_eq!(p.eval(&[int(1), int(2), int(4)]).unwrap(), int(7));
        let cancel = x.sub(&x);
        assert!(cancel.is_zero());
        assert!(p.eval(&[int(1)]).is_err());
    }

    #[test]
    fn weights() {
        let vars = ["u2", "u4", "u6"];
        let [u2, u4, u6] = <[MPoly; 3]>::try_from(MPoly::vars_of(&vars)).unwrap();
        let w = [2, 4, 6];
        assert_eq!(u2.mul(&u4).add(&u6).homogeneous_weight(&w), Some(6));
        assert_eq!(u2.add(&u4).homogeneous_weight(&w), None);
    }
}

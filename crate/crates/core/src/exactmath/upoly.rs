//! Dense univariate polynomials over ℚ, resultants and discriminants.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::matrix::{bareiss_det, IMat};
use super::rational::{common_denominator, Rational};
use crate::error::{Error, Result};

/// Coefficients lowest degree first; the leading coefficient is nonzero
/// unless the polynomial is zero (empty vector).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UPoly {
    coeffs: Vec<Rational>,
}

impl UPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        UPoly::new(c.iter().map(|&x| Rational::from_integer(x.into())).collect())
    }

    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        UPoly::new(vec![c])
    }

    pub fn x() -> Self {
        UPoly::monomial(Rational::one(), 1)
    }

    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut v = vec![Rational::zero(); k + 1];
        v[k] = c;
        UPoly::new(v)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        UPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    pub fn scale(&self, c: &Rational) -> Self {
        UPoly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => UPoly::zero(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(UPoly::one(), |acc, _| &acc * self)
    }

    /// Division with remainder; panics on a zero divisor.
    pub fn div_rem(&self, d: &UPoly) -> (UPoly, UPoly) {
        let dd = d.degree().expect("polynomial division by zero");
        let lc = d.leading().unwrap().clone();
        let mut r = self.coeffs.clone();
        let mut q = vec![Rational::zero(); self.coeffs.len().saturating_sub(dd)];
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let f = r.last().unwrap() / &lc;
            for (i, c) in d.coeffs.iter().enumerate() {
                let v = &f * c;
                r[k + i] -= v;
            }
            q[k] = f;
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        (UPoly::new(q), UPoly::new(r))
    }

    /// Exact quotient; panics if the division leaves a remainder.
    pub fn exact_div(&self, d: &UPoly) -> UPoly {
        let (q, r) = self.div_rem(d);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Multiplicity of the root `x = 0`; `None` for the zero polynomial.
    pub fn order_at_zero(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Divide by `xᵏ`; the low coefficients must vanish.
    pub fn shift_down(&self, k: usize) -> UPoly {
        assert!(self.coeffs.iter().take(k).all(Zero::is_zero), "not divisible by x^k");
        UPoly::new(self.coeffs.iter().skip(k).cloned().collect())
    }

    /// Largest `m` such that `f^m` divides `self` (`f` non-constant).
    pub fn multiplicity_of(&self, f: &UPoly) -> usize {
        assert!(f.degree().unwrap_or(0) >= 1, "multiplicity of a constant");
        if self.is_zero() {
            return usize::MAX;
        }
        let mut m = 0;
        let mut p = self.clone();
        loop {
            let (q, r) = p.div_rem(f);
            if !r.is_zero() {
                return m;
            }
            p = q;
            m += 1;
        }
    }

    /// Integer coefficient vector `c·self` with `c` the common denominator.
    pub fn to_integer_coeffs(&self) -> (Vec<BigInt>, BigInt) {
        let d = common_denominator(&self.coeffs);
        let dq = Rational::from_integer(d.clone());
        (
            self.coeffs.iter().map(|x| (x * &dq).to_integer()).collect(),
            d,
        )
    }
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UPoly({self})")
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = k == 0 || !a.is_one();
            if show_coeff {
                if a.is_integer() {
                    write!(f, "{a}")?;
                } else {
                    write!(f, "({a})")?;
                }
            }
            match k {
                0 => {}
                1 => write!(f, "{}x", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}x^{k}", if show_coeff { "*" } else { "" })?,
            }
        }
        Ok(())
    }
}

impl Add for &UPoly {
    type Output = UPoly;
    fn add(self, rhs: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &UPoly {
    type Output = UPoly;
    fn sub(self, rhs: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &UPoly {
    type Output = UPoly;
    fn mul(self, rhs: &UPoly) -> UPoly {
        if self.is_zero() || rhs.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UPoly::new(out)
    }
}

impl Neg for &UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        UPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for UPoly {
            type Output = UPoly;
            fn $f(self, rhs: UPoly) -> UPoly {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Sylvester matrix of `p`, `q` read with formal degrees `dp`, `dq`
/// (coefficients above the actual degree are taken as zero).
pub fn sylvester_matrix(p: &UPoly, dp: usize, q: &UPoly, dq: usize) -> Vec<Vec<Rational>> {
    let n = dp + dq;
    let mut rows = Vec::with_capacity(n);
    for i in 0..dq {
        let mut row = vec![Rational::zero(); n];
        for k in 0..=dp {
            row[i + k] = p.coeff(dp - k);
        }
        rows.push(row);
    }
    for i in 0..dp {
        let mut row = vec![Rational::zero(); n];
        for k in 0..=dq {
            row[i + k] = q.coeff(dq - k);
        }
        rows.push(row);
    }
    rows
}

/// Resultant with formal degrees: the Sylvester determinant, computed by
/// clearing each polynomial's denominators and running Bareiss over ℤ.
pub fn resultant_formal(p: &UPoly, dp: usize, q: &UPoly, dq: usize) -> Rational {
    assert!(p.degree().is_none_or(|d| d <= dp), "formal degree too small");
    assert!(q.degree().is_none_or(|d| d <= dq), "formal degree too small");
    if dp == 0 && dq == 0 {
        return Rational::one();
    }
    let (_, sp) = p.to_integer_coeffs();
    let (_, sq) = q.to_integer_coeffs();
    let pi = p.scale(&Rational::from_integer(sp.clone()));
    let qi = q.scale(&Rational::from_integer(sq.clone()));
    let rows: Vec<Vec<BigInt>> = sylvester_matrix(&pi, dp, &qi, dq)
        .into_iter()
        .map(|r| r.into_iter().map(|x| x.to_integer()).collect())
        .collect();
    let det = bareiss_det(rows);
    // Res(sp·p, sq·q) = sp^dq · sq^dp · Res(p, q)
    Rational::new(det, num_traits::pow(sp, dq) * num_traits::pow(sq, dp))
}

/// `Res(p, q)` with the convention `Res(x − a, x − b) = b − a`.
pub fn resultant(p: &UPoly, q: &UPoly) -> Result<Rational> {
    match (p.degree(), q.degree()) {
        (Some(dp), Some(dq)) => Ok(resultant_formal(p, dp, q, dq)),
        _ => Err(Error::UndefinedResultant("zero input polynomial".into())),
    }
}

/// Independent route: Euclidean recursion
/// `Res(p, q) = (−1)^{mn} · lc(q)^{m−k} · Res(q, p mod q)`.
pub fn resultant_euclid(p: &UPoly, q: &UPoly) -> Result<Rational> {
    let (Some(m), Some(n)) = (p.degree(), q.degree()) else {
        return Err(Error::UndefinedResultant("zero input polynomial".into()));
    };
    if n == 0 {
        return Ok(num_traits::pow(q.coeff(0), m));
    }
    if m == 0 {
        return Ok(num_traits::pow(p.coeff(0), n));
    }
    let r = p.div_rem(q).1;
    let Some(k) = r.degree() else {
        return Ok(Rational::zero());
    };
    let sign = if (m * n) % 2 == 1 { -Rational::one() } else { Rational::one() };
    let lc = q.leading().unwrap().clone();
    Ok(sign * num_traits::pow(lc, m - k) * resultant_euclid(q, &r)?)
}

/// `(−1)^{d(d−1)/2} · Res(p, p′) / lc(p)` with `d = deg p`.
pub fn discriminant(p: &UPoly) -> Result<Rational> {
    let d = p.degree().ok_or(Error::ConstantDiscriminant)?;
    if d == 0 {
        return Err(Error::ConstantDiscriminant);
    }
    discriminant_formal(p, d)
}

/// Discriminant of `p` regarded as a polynomial of formal degree `d`; a
/// vanishing top coefficient contributes `disc_d = a_{d−1}² · disc_{d−1}`.
pub fn discriminant_formal(p: &UPoly, d: usize) -> Result<Rational> {
    assert!(p.degree().is_none_or(|e| e <= d), "formal degree too small");
    if d == 0 {
        return Err(Error::ConstantDiscriminant);
    }
    if d == 1 {
        return Ok(Rational::one());
    }
    let lc = p.coeff(d);
    if lc.is_zero() {
        let sub = p.coeff(d - 1);
        return Ok(&sub * &sub * discriminant_formal(p, d - 1)?);
    }
    let res = resultant_formal(p, d, &p.derivative(), d - 1);
    let sign = if (d * (d - 1) / 2) % 2 == 1 { -Rational::one() } else { Rational::one() };
    Ok(sign * res / lc)
}

/// Same discriminant through the Euclidean resultant.
pub fn discriminant_euclid(p: &UPoly) -> Result<Rational> {
    let d = p.degree().ok_or(Error::ConstantDiscriminant)?;
    if d == 0 {
        return Err(Error::ConstantDiscriminant);
    }
    let res = resultant_euclid(p, &p.derivative())?;
    let sign = if (d * (d - 1) / 2) % 2 == 1 { -Rational::one() } else { Rational::one() };
    Ok(sign * res / p.leading().unwrap())
}

/// Yun's algorithm: `p = lc · ∏ fᵢ^{mᵢ}` with monic, squarefree, pairwise
/// coprime `fᵢ`, sorted by multiplicity.
pub fn squarefree_decomposition(p: &UPoly) -> Vec<(UPoly, usize)> {
    assert!(!p.is_zero(), "squarefree decomposition of zero");
    if p.degree() == Some(0) {
        return Vec::new();
    }
    let f = p.monic();
    let fp = f.derivative();
    let a0 = f.gcd(&fp);
    let mut b = f.exact_div(&a0);
    let mut c = fp.exact_div(&a0);
    let mut d = &c - &b.derivative();
    let mut out = Vec::new();
    let mut i = 1;
    loop {
        let a = b.gcd(&d);
        if a.degree() != Some(0) {
            out.push((a.clone(), i));
        }
        b = b.exact_div(&a);
        if b.degree() == Some(0) {
            break;
        }
        c = d.exact_div(&a);
        d = &c - &b.derivative();
        i += 1;
    }
    out
}

/// `Res(p, q)` packaged as an integer matrix determinant (for tests and
/// the modular cross-check).
pub fn sylvester_integer_matrix(p: &UPoly, q: &UPoly) -> Option<IMat> {
    let (dp, dq) = (p.degree()?, q.degree()?);
    let rows = sylvester_matrix(p, dp, q, dq)
        .into_iter()
        .map(|r| r.into_iter().map(|x| if x.is_integer() { Some(x.to_integer()) } else { None }).collect::<Option<Vec<_>>>())
        .collect::<Option<Vec<_>>>()?;
    IMat::from_rows(rows).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rational::int;

    fn p(c: &[i64]) -> UPoly {
        UPoly::from_ints(c)
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(p(&[-1, 0, 1]).gcd(&p(&[-1, 1])), p(&[-1, 1]));
        assert_eq!(p(&[4, 2]).gcd(&UPoly::zero()), p(&[2, 1]));
        assert_eq!(UPoly::zero().gcd(&UPoly::zero()), UPoly::zero());
        let f = p(&[27, 0, 0, 54, 0, 0, 27, 4]);
        assert_eq!(f.gcd(&f.derivative()), UPoly::one());
    }

    #[test]
    fn resultant_examples() {
        assert_eq!(resultant(&p(&[-1, 1]), &p(&[-2, 1])).unwrap(), int(-1));
        assert_eq!(resultant(&p(&[-2, 1]), &p(&[-1, 1])).unwrap(), int(1));
        assert_eq!(resultant(&p(&[1, 0, 1]), &p(&[1, 0, 1])).unwrap(), int(0));
        // frozen from an independent 5x5 Sylvester evaluation
        assert_eq!(resultant(&p(&[-2, 0, 1]), &p(&[0, -1, 0, 1])).unwrap(), int(-2));
        assert!(resultant(&UPoly::zero(), &p(&[1, 1])).is_err());
    }

    #[test]
    fn resultant_routes_agree() {
        let a = p(&[3, -1, 4, 1, -5]);
        let b = p(&[9, 2, -6, 5]);
        assert_eq!(resultant(&a, &b).unwrap(), resultant_euclid(&a, &b).unwrap());
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(discriminant(&p(&[-1, 0, 1])).unwrap(), int(4));
        assert_eq!(discriminant(&p(&[2, -3, 0, 1])).unwrap(), int(0));
        let rep = &p(&[-1, 1]).pow(2) * &p(&[-2, 1]);
        assert_eq!(discriminant(&rep).unwrap(), int(0));
        assert!(discriminant(&p(&[5])).is_err());
        // x³ + Ax + B → −4A³ − 27B²
        assert_eq!(discriminant(&p(&[1, 2, 0, 1])).unwrap(), int(-4 * 8 - 27));
    }

    #[test]
    fn formal_discriminant_drops_leading_zero() {
        // b5² · disc₅ when the degree-6 coefficient vanishes
        let q = p(&[1, -2, 3, 0, 1, 2]);
        let lhs = discriminant_formal(&q, 6).unwrap();
        let rhs = int(4) * discriminant(&q).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn squarefree_examples() {
        let f = &p(&[-1, 1]).pow(2) * &p(&[3, 1]);
        assert_eq!(squarefree_decomposition(&f), vec![(p(&[3, 1]), 1), (p(&[-1, 1]), 2)]);
        let g = p(&[2, 0, 3]);
        assert_eq!(squarefree_decomposition(&g), vec![(g.monic(), 1)]);
        assert_eq!(squarefree_decomposition(&p(&[0, 0, 0, 0, 0, 1])), vec![(p(&[0, 1]), 5)]);
    }

    #[test]
    fn display() {
        assert_eq!(p(&[1, 0, -3, 4]).to_string(), "4*x^3 - 3*x^2 + 1");
        assert_eq!(p(&[0, 1]).to_string(), "x");
        assert_eq!(UPoly::zero().to_string(), "0");
    }
}

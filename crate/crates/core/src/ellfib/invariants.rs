use num_traits::Zero;

use super::params::{build_model, FamilyParams};
use crate::error::{Error, Result};
use crate::exactmath::upoly::{discriminant_euclid, discriminant_formal, resultant_formal};
use crate::exactmath::{Rational, UPoly};

/// `d₈₄(1, 1, 1, 1, 1, 1, 1)`; the normalization constant is 1.
pub const D84_REFERENCE: &str = "9917532888584159232";

/// `(g₂/x³, g₃/x⁴) = (a0x² + a4x + a8, a2x³ + a6x² + a10x + a14)`.
pub fn depressed_factors(a: &FamilyParams) -> (UPoly, UPoly) {
    (
        UPoly::new(vec![a.a8().clone(), a.a4().clone(), a.a0().clone()]),
        UPoly::new(vec![a.a14().clone(), a.a10().clone(), a.a6().clone(), a.a2().clone()]),
    )
}

/// Resultant of the depressed factors as a 5×5 Sylvester determinant with
/// formal degrees 2 and 3.
pub fn resultant_r(a: &FamilyParams) -> Result<Rational> {
    let (p, q) = depressed_factors(a);
    if p.is_zero() || q.is_zero() {
        return Err(Error::UndefinedResultant("zero depressed polynomial".into()));
    }
    Ok(resultant_formal(&p, 2, &q, 3))
}

/// Formal degree-7 discriminant of `Δ/x⁸`.
pub fn disc_depressed(a: &FamilyParams) -> Result<Rational> {
    let m = build_model(a)?;
    let reduced = m.discriminant().shift_down(8);
    discriminant_formal(&reduced, 7)
}

/// `disc_x(Δ/x⁸) / r(a)³`.
pub fn disc84(a: &FamilyParams) -> Result<Rational> {
    let r = resultant_r(a)?;
    if r.is_zero() {
        return Err(Error::ResultantLocus);
    }
    Ok(disc_depressed(a)? / num_traits::pow(r, 3))
}

/// Same quantity through Euclidean resultants; only defined where `Δ/x⁸`
/// and the depressed `g₂` have their full degrees.
pub fn disc84_euclid(a: &FamilyParams) -> Result<Rational> {
    let (p, q) = depressed_factors(a);
    let reduced = build_model(a)?.discriminant().shift_down(8);
    if p.degree() != Some(2) || q.degree() != Some(3) || reduced.degree() != Some(7) {
        return Err(Error::Precondition("leading coefficients must be nonzero".into()));
    }
    let r = crate::exactmath::upoly::resultant_euclid(&p, &q)?;
    if r.is_zero() {
        return Err(Error::ResultantLocus);
    }
    Ok(discriminant_euclid(&reduced)? / num_traits::pow(r, 3))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::parse_rational;
    use crate::exactmath::rational::{int, rat};

    #[test]
    fn fixtures() {
        let a = FamilyParams::from_ints([1, 0, 0, 0, 0, 0, 1]);
        assert_eq!(resultant_r(&a).unwrap(), int(1));
        assert_eq!(disc_depressed(&a).unwrap(), parse_rational("-1306859240540270592").unwrap());
        let ones = FamilyParams::from_ints([1; 7]);
        assert_eq!(resultant_r(&ones).unwrap(), int(1));
        assert_eq!(disc84(&ones).unwrap(), parse_rational(D84_REFERENCE).unwrap());
        let b = FamilyParams::new([int(2), int(-1), int(3), rat(1, 2), int(5), int(-7), int(11)]);
        assert_eq!(resultant_r(&b).unwrap(), int(1953));
        assert_eq!(disc84(&b).unwrap(), parse_rational("-9216944869389360477677944704").unwrap());
        assert_eq!(disc84_euclid(&b).unwrap(), disc84(&b).unwrap());
    }

    #[test]
    fn resultant_locus() {
        // common depressed root x = 1
        let a = FamilyParams::from_ints([1, 1, 1, -2, -2, 2, -1]);
        assert_eq!(resultant_r(&a).unwrap(), int(0));
        assert_eq!(disc84(&a), Err(Error::ResultantLocus));
    }
}

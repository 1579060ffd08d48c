use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::{Rational, UPoly};

/// Weights of `(a0, a2, a4, a6, a8, a10, a14)`.
pub const WEIGHTS: [u32; 7] = [0, 2, 4, 6, 8, 10, 14];

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FamilyParams {
    #[serde(with = "crate::exactmath::rational::vec")]
    a: Vec<Rational>,
}

impl FamilyParams {
    pub fn new(a: [Rational; 7]) -> Self {
        FamilyParams { a: a.to_vec() }
    }

    pub fn from_ints(a: [i64; 7]) -> Self {
        FamilyParams::new(a.map(|x| Rational::from_integer(x.into())))
    }

    /// Validates the length after deserialization.
    pub fn from_vec(a: Vec<Rational>) -> Result<Self> {
        if a.len() != 7 {
            return Err(Error::Dimension(format!("expected 7 parameters, got {}", a.len())));
        }
        Ok(FamilyParams { a })
    }

    pub fn values(&self) -> &[Rational] {
        &self.a
    }

    pub fn a0(&self) -> &Rational { &self.a[0] }
    pub fn a2(&self) -> &Rational { &self.a[1] }
    pub fn a4(&self) -> &Rational { &self.a[2] }
    pub fn a6(&self) -> &Rational { &self.a[3] }
    pub fn a8(&self) -> &Rational { &self.a[4] }
    pub fn a10(&self) -> &Rational { &self.a[5] }
    pub fn a14(&self) -> &Rational { &self.a[6] }

    pub fn is_zero(&self) -> bool {
        self.a.iter().all(Zero::is_zero)
    }

    /// `a ↦ (λᵏ aₖ)`.
    pub fn scale(&self, lambda: &Rational) -> Result<FamilyParams> {
        if lambda.is_zero() {
            return Err(Error::Precondition("scaling factor must be nonzero".into()));
        }
        Ok(FamilyParams {
            a: self
                .a
                .iter()
                .zip(WEIGHTS)
                .map(|(x, w)| x * num_traits::pow(lambda.clone(), w as usize))
                .collect(),
        })
    }

    pub fn with(&self, index: usize, value: Rational) -> FamilyParams {
        let mut a = self.a.clone();
        a[index] = value;
        FamilyParams { a }
    }
}

impl std::fmt::Display for FamilyParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.a.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeierstrassModel {
    pub g2: UPoly,
    pub g3: UPoly,
}

impl WeierstrassModel {
    /// `Δ = 4g₂³ + 27g₃²`.
    pub fn discriminant(&self) -> UPoly {
        let four = UPoly::from_ints(&[4]);
        let tw7 = UPoly::from_ints(&[27]);
        &(&four * &self.g2.pow(3)) + &(&tw7 * &self.g3.pow(2))
    }
}

/// `g₂ = a0x⁵ + a4x⁴ + a8x³`, `g₃ = a2x⁷ + a6x⁶ + a10x⁵ + a14x⁴`.
pub fn build_model(a: &FamilyParams) -> Result<WeierstrassModel> {
    if a.is_zero() {
        return Err(Error::ZeroParams);
    }
    let z = Rational::zero;
    let g2 = UPoly::new(vec![z(), z(), z(), a.a8().clone(), a.a4().clone(), a.a0().clone()]);
    let g3 = UPoly::new(vec![
        z(), z(), z(), z(),
        a.a14().clone(), a.a10().clone(), a.a6().clone(), a.a2().clone(),
    ]);
    Ok(WeierstrassModel { g2, g3 })
}

/// Coefficients of the quotient-surface equation:
/// `(a0x³ + a4x² + a8x, a2x⁴ + a6x³ + a10x² + a14x)`.
pub fn quotient_sigma(a: &FamilyParams) -> (UPoly, UPoly) {
    let z = Rational::zero;
    (
        UPoly::new(vec![z(), a.a8().clone(), a.a4().clone(), a.a0().clone()]),
        UPoly::new(vec![z(), a.a14().clone(), a.a10().clone(), a.a6().clone(), a.a2().clone()]),
    )
}

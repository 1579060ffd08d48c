//! Weighted-homogeneous bookkeeping: the scaling action, canonical forms,
//! the Humbert polynomial, Hilbert counts and reflection-group degree data.

use num_traits::Zero;
use serde::Serialize;

use crate::ellfib::FamilyParams;
use crate::error::{Error, Result};
use crate::exactmath::rational::rat;
use crate::exactmath::{MPoly, Rational};
use crate::report::CheckReport;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightSystem {
    pub names: Vec<&'static str>,
    pub weights: Vec<i64>,
}

impl WeightSystem {
    /// `(a0, a2, a4, a6, a8, a10, a14)` with weights `(0, 2, …, 14)`.
    pub fn a_system() -> Self {
        WeightSystem {
            names: vec!["a0", "a2", "a4", "a6", "a8", "a10", "a14"],
            weights: vec![0, 2, 4, 6, 8, 10, 14],
        }
    }

    pub fn u_system() -> Self {
        WeightSystem {
            names: vec!["u2", "u4", "u6", "u8", "u10", "u14"],
            weights: vec![2, 4, 6, 8, 10, 14],
        }
    }

    pub fn t_system() -> Self {
        WeightSystem {
            names: vec!["t4", "t6", "t10", "t12", "t18"],
            weights: vec![4, 6, 10, 12, 18],
        }
    }

    pub fn by_name(name: &str) -> Result<Self> {
        match name {
            "a" => Ok(WeightSystem::a_system()),
            "u" => Ok(WeightSystem::u_system()),
            "t" => Ok(WeightSystem::t_system()),
            other => Err(Error::UnknownName(other.to_string())),
        }
    }

    pub fn total_weight(&self) -> i64 {
        self.weights.iter().sum()
    }
}

/// A polynomial together with the weights of its variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedPoly {
    pub poly: MPoly,
    pub system: WeightSystem,
}

/// The common monomial weight, if any.
pub fn is_weighted_homogeneous(p: &WeightedPoly) -> Option<i64> {
    p.poly.homogeneous_weight(&p.system.weights)
}

/// `(a0, λ²a2, λ⁴a4, …, λ¹⁴a14)`.
pub fn scale_action(a: &FamilyParams, lambda: &Rational) -> Result<FamilyParams> {
    a.scale(lambda)
}

/// `(a2/a0, a4, a6, a0·a8, a0·a10, a0²·a14)`.
pub fn canonical_u(a: &FamilyParams) -> Result<[Rational; 6]> {
    let a0 = a.a0();
    if a0.is_zero() {
        return Err(Error::Precondition("a0 = 0: use canonical_t".into()));
    }
    Ok([
        a.a2() / a0,
        a.a4().clone(),
        a.a6().clone(),
        a0 * a.a8(),
        a0 * a.a10(),
        a0 * a0 * a.a14(),
    ])
}

/// `(a4, a6, a2·a8, a2·a10, a2²·a14)` on `a0 = 0`, `a2 ≠ 0`.
pub fn canonical_t(a: &FamilyParams) -> Result<[Rational; 5]> {
    if !a.a0().is_zero() || a.a2().is_zero() {
        return Err(Error::Precondition("canonical_t needs a0 = 0 and a2 != 0".into()));
    }
    let a2 = a.a2();
    Ok([a.a4().clone(), a.a6().clone(), a2 * a.a8(), a2 * a.a10(), a2 * a2 * a.a14()])
}

/// Parameter vector `(1, u2, u4, u6, u8, u10, u14)`.
pub fn params_from_u(u: &[Rational; 6]) -> FamilyParams {
    FamilyParams::new([
        Rational::from_integer(1.into()),
        u[0].clone(),
        u[1].clone(),
        u[2].clone(),
        u[3].clone(),
        u[4].clone(),
        u[5].clone(),
    ])
}

/// `(a10·a2 + a4³/27 − a6²/4)² + (1/27)·a4·(a4·a6 + 6·a2·a8)²`.
pub fn humbert_m(a: &FamilyParams) -> Rational {
    let first = a.a10() * a.a2() + a.a4() * a.a4() * a.a4() / rat(27, 1) - a.a6() * a.a6() / rat(4, 1);
    let inner = a.a4() * a.a6() + rat(6, 1) * a.a2() * a.a8();
    &first * &first + a.a4() * &inner * &inner / rat(27, 1)
}

/// The same polynomial in the `a`-system variables.
pub fn humbert_poly() -> WeightedPoly {
    let ws = WeightSystem::a_system();
    let v = MPoly::vars_of(&ws.names);
    let c = |r: Rational| MPoly::constant(&ws.names, r);
    let (a2, a4, a6, a8, a10) = (&v[1], &v[2], &v[3], &v[4], &v[5]);
    let first = a10
        .mul(a2)
        .add(&a4.pow(3).mul(&c(rat(1, 27))))
        .sub(&a6.pow(2).mul(&c(rat(1, 4))));
    let inner = a4.mul(a6).add(&a2.mul(a8).mul(&c(rat(6, 1))));
    let poly = first.pow(2).add(&a4.mul(&inner.pow(2)).mul(&c(rat(1, 27))));
    WeightedPoly { poly, system: ws }
}

/// Number of monomials of weight exactly `k`.
pub fn hilbert_count(ws: &WeightSystem, k: usize) -> u64 {
    let mut dp = vec![0u64; k + 1];
    dp[0] = 1;
    for &w in &ws.weights {
        assert!(w > 0, "Hilbert counts need positive weights");
        let w = w as usize;
        for n in w..=k {
            dp[n] += dp[n - w];
        }
    }
    dp[k]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReflectionGroupRecord {
    pub shephard_todd: u32,
    pub rank: usize,
    pub degrees: Vec<i64>,
    pub order2_reflections: i64,
    pub kappa: i64,
    pub modular_weights: Vec<i64>,
    /// Weight of the form whose `κ`-multiple counts the reflections.
    pub reflection_weight: i64,
}

pub fn reflection_groups() -> Vec<ReflectionGroupRecord> {
    let rec = |st, degrees: &[i64], refl, kappa, weights: &[i64], rw| ReflectionGroupRecord {
        shephard_todd: st,
        rank: degrees.len(),
        degrees: degrees.to_vec(),
        order2_reflections: refl,
        kappa,
        modular_weights: weights.to_vec(),
        reflection_weight: rw,
    };
    vec![
        rec(34, &[6, 12, 18, 24, 30, 42], 126, 3, &[2, 4, 6, 8, 10, 14], 42),
        rec(33, &[4, 6, 10, 12, 18], 45, 1, &[4, 6, 10, 12, 18], 45),
        rec(31, &[8, 12, 20, 24], 60, 2, &[4, 6, 10, 12], 30),
        rec(23, &[2, 6, 10], 15, 1, &[2, 6, 10], 15),
    ]
}

/// Weight of `d₈₄`, of `u₁₄`, and of the form `s₇` with `s₇² = u₁₄`.
pub const WEIGHT_D84: i64 = 84;
pub const WEIGHT_U14: i64 = 14;
pub const WEIGHT_S7: i64 = 7;
pub const WEIGHT_S42: i64 = 42;
pub const WEIGHT_DELTA_U: i64 = 98;
pub const WEIGHT_S49: i64 = 49;

pub fn numerology_check() -> CheckReport {
    let mut r = CheckReport::new();
    for g in reflection_groups() {
        let scaled: Vec<i64> = g.modular_weights.iter().map(|w| g.kappa * w).collect();
        r.assert(
            format!("ST{} degrees = kappa * weights", g.shephard_todd),
            scaled == g.degrees && g.degrees.len() == g.rank,
            format!("{} x {:?} = {:?}", g.kappa, g.modular_weights, g.degrees),
        );
        let sum: i64 = g.degrees.iter().map(|d| d - 1).sum();
        r.assert(
            format!("ST{} reflections = sum(d - 1)", g.shephard_todd),
            sum == g.order2_reflections,
            format!("{sum} vs {}", g.order2_reflections),
        );
        r.assert(
            format!("ST{} reflections = kappa * weight", g.shephard_todd),
            g.kappa * g.reflection_weight == g.order2_reflections,
            format!("{} = {} x {}", g.order2_reflections, g.reflection_weight, g.kappa),
        );
    }
    let st34 = &reflection_groups()[0];
    let u = WeightSystem::u_system();
    let tripled: Vec<i64> = u.weights.iter().map(|w| 3 * w).collect();
    r.assert("3 x u-weights = ST34 degrees", tripled == st34.degrees, format!("{tripled:?}"));
    r.assert("98 = 14 + 84", WEIGHT_U14 + WEIGHT_D84 == WEIGHT_DELTA_U, "weights of u14 and d84");
    r.assert("44 = sum of u-weights", u.total_weight() == 44, format!("sum = {}", u.total_weight()));
    r.assert("49 = 7 + 42", WEIGHT_S7 + WEIGHT_S42 == WEIGHT_S49, "weights of s7 and s42");
    r.assert("2 x 49 = 98", 2 * WEIGHT_S49 == WEIGHT_DELTA_U, "s49 squared");
    r.assert("2 x 7 = 14", 2 * WEIGHT_S7 == WEIGHT_U14, "s7 squared is u14");
    r.assert("126 = 3 x 42", st34.order2_reflections == st34.kappa * WEIGHT_S42, "ST34 reflections");
    r.assert("2(5 + 44) = 98", 2 * (5 + u.total_weight()) == WEIGHT_DELTA_U, "canonical-bundle degree");
    r.assert("7 - 2 = 5", (WeightSystem::a_system().weights.len() as i64) - 2 == 5, "projective dimension");
    r.assert("d84 weight derived from r and disc", 168 - 3 * 28 == WEIGHT_D84, "disc weight 168, r weight 28");
    r
}

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Serialize, Serializer};

use super::kodaira::{classify_orders, KodairaType, ORD_INFINITE};
use super::params::{build_model, FamilyParams, WeierstrassModel};
use crate::error::{Error, Result};
use crate::exactmath::{squarefree_decomposition, UPoly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Place {
    Zero,
    Infinity,
    /// Monic squarefree factor of `Δ` prime to `x`; its roots all carry the
    /// same vanishing orders.
    Factor(UPoly),
}

impl std::fmt::Display for Place {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Place::Zero => write!(f, "0"),
            Place::Infinity => write!(f, "inf"),
            Place::Factor(p) => write!(f, "{p}"),
        }
    }
}

impl Serialize for Place {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

fn ser_ord<S: Serializer>(o: &u32, s: S) -> std::result::Result<S::Ok, S::Error> {
    if *o == ORD_INFINITE {
        s.serialize_none()
    } else {
        s.serialize_u32(*o)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberReport {
    pub place: Place,
    #[serde(serialize_with = "ser_ord")]
    pub ord_g2: u32,
    #[serde(serialize_with = "ser_ord")]
    pub ord_g3: u32,
    #[serde(serialize_with = "ser_ord")]
    pub ord_delta: u32,
    #[serde(rename = "type")]
    pub kodaira: KodairaType,
    pub count: u32,
    pub euler: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberConfiguration {
    pub fibers: Vec<FiberReport>,
    pub total_euler: u32,
}

impl FiberConfiguration {
    /// Number of geometric fibers of each type.
    pub fn type_counts(&self) -> BTreeMap<KodairaType, u32> {
        let mut m = BTreeMap::new();
        for f in &self.fibers {
            *m.entry(f.kodaira).or_insert(0) += f.count;
        }
        m
    }

    /// `"III* + IV* + 7 I1"` style summary, largest Euler number first.
    pub fn describe(&self) -> String {
        let mut parts: Vec<(KodairaType, u32)> = self.type_counts().into_iter().collect();
        parts.sort_by_key(|(t, _)| std::cmp::Reverse((t.euler(), *t)));
        parts
            .iter()
            .map(|(t, c)| if *c == 1 { t.to_string() } else { format!("{c} {t}") })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

fn ord(p: &UPoly, f: &UPoly) -> u32 {
    if p.is_zero() {
        ORD_INFINITE
    } else {
        p.multiplicity_of(f) as u32
    }
}

fn deficiency(p: &UPoly, bound: usize) -> u32 {
    match p.degree() {
        None => ORD_INFINITE,
        Some(d) => (bound - d) as u32,
    }
}

/// Orders and type at one place; `I0` marks a smooth fiber.
pub fn classify_place(m: &WeierstrassModel, place: &Place) -> Result<FiberReport> {
    let delta = m.discriminant();
    if delta.is_zero() {
        return Err(Error::NotK3("discriminant vanishes identically".into()));
    }
    let (o2, o3, od, count) = match place {
        Place::Infinity => (deficiency(&m.g2, 8), deficiency(&m.g3, 12), deficiency(&delta, 24), 1),
        Place::Zero => {
            let x = UPoly::x();
            (ord(&m.g2, &x), ord(&m.g3, &x), ord(&delta, &x), 1)
        }
        Place::Factor(f) => (ord(&m.g2, f), ord(&m.g3, f), ord(&delta, f), f.degree().unwrap_or(0) as u32),
    };
    let label = place.to_string();
    let kodaira = classify_orders(o2, o3, od, &label)?;
    Ok(FiberReport {
        place: place.clone(),
        ord_g2: o2,
        ord_g3: o3,
        ord_delta: od,
        kodaira,
        count,
        euler: kodaira.euler(),
    })
}

/// Split `pieces` along the squarefree strata of `p`.
fn refine(pieces: Vec<UPoly>, p: &UPoly) -> Vec<UPoly> {
    if p.is_zero() || p.degree() == Some(0) {
        return pieces;
    }
    let strata = squarefree_decomposition(p);
    let mut out = Vec::new();
    for mut piece in pieces {
        for (h, _) in &strata {
            let g = piece.gcd(h);
            if g.degree().unwrap_or(0) > 0 {
                piece = piece.exact_div(&g);
                out.push(g);
            }
        }
        if piece.degree().unwrap_or(0) > 0 {
            out.push(piece.monic());
        }
    }
    out
}

/// Finite places away from `0` where `Δ` vanishes, each with constant
/// vanishing orders of `g₂`, `g₃` and `Δ`.
pub fn finite_places(m: &WeierstrassModel) -> Vec<UPoly> {
    let delta = m.discriminant();
    let k = delta.order_at_zero().unwrap_or(0);
    let rest = delta.shift_down(k);
    let mut pieces: Vec<UPoly> = squarefree_decomposition(&rest).into_iter().map(|(f, _)| f).collect();
    pieces = refine(pieces, &m.g2);
    pieces = refine(pieces, &m.g3);
    pieces
}

/// Every singular fiber: the places `0` and `∞` plus the factors of `Δ`.
pub fn classify_all(a: &FamilyParams) -> Result<FiberConfiguration> {
    if a.a0().is_zero() && a.a2().is_zero() {
        return Err(Error::NotK3("a0 = a2 = 0: the surface degenerates to a rational surface".into()));
    }
    let m = build_model(a)?;
    let mut places = vec![Place::Zero, Place::Infinity];
    places.extend(finite_places(&m).into_iter().map(Place::Factor));
    let mut fibers = Vec::new();
    for p in &places {
        let r = classify_place(&m, p)?;
        if r.kodaira != KodairaType::I(0) {
            fibers.push(r);
        }
    }
    let total_euler = fibers.iter().map(|f| f.euler * f.count).sum();
    Ok(FiberConfiguration { fibers, total_euler })
}

/// `a0 ≠ 0` or `a2 ≠ 0`, every fiber minimal, Euler numbers summing to 24.
pub fn is_k3(a: &FamilyParams) -> bool {
    !a.is_zero() && matches!(classify_all(a), Ok(c) if c.total_euler == 24)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(c: &FiberConfiguration) -> Vec<(String, u32)> {
        c.type_counts().into_iter().map(|(t, n)| (t.to_string(), n)).collect()
    }

    #[test]
    fn reference_point() {
        let a = FamilyParams::from_ints([1; 7]);
        let c = classify_all(&a).unwrap();
        assert_eq!(c.total_euler, 24);
        assert_eq!(c.describe(), "III* + IV* + 7 I1");
        assert!(is_k3(&a));
    }

    #[test]
    fn degenerate_points() {
        let rational = FamilyParams::from_ints([0, 0, 1, 0, 0, 0, 0]);
        assert!(matches!(classify_all(&rational), Err(Error::NotK3(_))));
        assert!(!is_k3(&rational));
        // double Δ-root at x = 1
        let i2 = FamilyParams::from_ints([1, 1, 7, 2, -11, -15, 14]);
        let c = classify_all(&i2).unwrap();
        assert_eq!(kinds(&c), vec![("I1".into(), 5), ("I2".into(), 1), ("IV*".into(), 1), ("III*".into(), 1)]);
    }

    #[test]
    fn infinity_orders() {
        let m = build_model(&FamilyParams::from_ints([0, 1, 1, 1, 1, 1, 1])).unwrap();
        let r = classify_place(&m, &Place::Infinity).unwrap();
        assert_eq!((r.ord_g2, r.ord_g3, r.ord_delta), (4, 5, 10));
        assert_eq!(r.kodaira, KodairaType::IIStar);
    }
}

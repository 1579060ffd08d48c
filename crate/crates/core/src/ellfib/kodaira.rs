use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Vanishing order of the zero polynomial.
pub const ORD_INFINITE: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KodairaType {
    I(u32),
    II,
    III,
    IV,
    IStar(u32),
    IVStar,
    IIIStar,
    IIStar,
}

impl KodairaType {
    pub fn euler(&self) -> u32 {
        match self {
            KodairaType::I(n) => *n,
            KodairaType::II => 2,
            KodairaType::III => 3,
            KodairaType::IV => 4,
            KodairaType::IStar(n) => n + 6,
            KodairaType::IVStar => 8,
            KodairaType::IIIStar => 9,
            KodairaType::IIStar => 10,
        }
    }
}

impl fmt::Display for KodairaType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KodairaType::I(n) => write!(f, "I{n}"),
            KodairaType::II => write!(f, "II"),
            KodairaType::III => write!(f, "III"),
            KodairaType::IV => write!(f, "IV"),
            KodairaType::IStar(n) => write!(f, "I{n}*"),
            KodairaType::IVStar => write!(f, "IV*"),
            KodairaType::IIIStar => write!(f, "III*"),
            KodairaType::IIStar => write!(f, "II*"),
        }
    }
}

impl Serialize for KodairaType {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Fiber type from `(ord g₂, ord g₃, ord Δ)` in characteristic 0.
/// `I0` means a smooth fiber; `place` names the fiber in errors.
pub fn classify_orders(o2: u32, o3: u32, od: u32, place: &str) -> Result<KodairaType> {
    if o2 >= 4 && o3 >= 6 {
        return Err(Error::NonMinimal(place.to_string()));
    }
    if o2 == 0 || o3 == 0 {
        return Ok(KodairaType::I(od));
    }
    let t = match od {
        2 => KodairaType::II,
        3 => KodairaType::III,
        4 => KodairaType::IV,
        6 => KodairaType::IStar(0),
        n if o2 == 2 && o3 == 3 && n > 6 && n != ORD_INFINITE => KodairaType::IStar(n - 6),
        8 => KodairaType::IVStar,
        9 => KodairaType::IIIStar,
        10 => KodairaType::IIStar,
        _ => {
            return Err(Error::Precondition(format!(
                "inconsistent vanishing orders ({o2}, {o3}, {od}) at {place}"
            )))
        }
    };
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table() {
        let c = |a, b, d| classify_orders(a, b, d, "t").unwrap();
        assert_eq!(c(3, 4, 8), KodairaType::IVStar);
        assert_eq!(c(3, 5, 9), KodairaType::IIIStar);
        assert_eq!(c(4, 5, 10), KodairaType::IIStar);
        assert_eq!(c(0, 0, 1), KodairaType::I(1));
        assert_eq!(c(0, 0, 2), KodairaType::I(2));
        assert_eq!(c(1, 1, 2), KodairaType::II);
        assert_eq!(c(1, 2, 3), KodairaType::III);
        assert_eq!(c(2, 2, 4), KodairaType::IV);
        assert_eq!(c(2, 3, 6), KodairaType::IStar(0));
        assert_eq!(c(2, 3, 9), KodairaType::IStar(3));
        assert_eq!(c(3, 3, 6), KodairaType::IStar(0));
        assert_eq!(c(ORD_INFINITE, 4, 8), KodairaType::IVStar);
        assert!(matches!(classify_orders(4, 6, 12, "0"), Err(Error::NonMinimal(_))));
        for (t, e) in [(KodairaType::IStar(2), 8), (KodairaType::IIIStar, 9), (KodairaType::I(7), 7)] {
            assert_eq!(t.euler(), e);
        }
        assert_eq!(KodairaType::IStar(0).to_string(), "I0*");
    }
}

//! Named lattices of the catalog.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exactmath::IMat;
use crate::lattice::{direct_sum, make_named, Lattice};

pub const CATALOG_NAMES: [&str; 16] = [
    "A0", "A1", "A2", "A3", "A1'", "M0", "M1", "M2", "M3", "B0", "B1", "B1'", "B2", "B3", "LK3", "M",
];

fn named(name: &str, twist: i64) -> Lattice {
    make_named(name, twist).expect("builtin name")
}

fn explicit(rows: &[Vec<i64>]) -> Lattice {
    Lattice::from_i64(rows).expect("builtin Gram")
}

fn build(name: &str) -> Lattice {
    let u = named("U", 1);
    let u2 = named("U", 2);
    let l = match name {
        "A0" => direct_sum(&[&u, &u, &named("A2", -1), &named("A1", -1)]),
        "A1" => direct_sum(&[&u, &u, &named("A2", -1)]),
        "A2" => direct_sum(&[&u, &u, &named("A1", -1)]),
        "A3" => direct_sum(&[&u, &explicit(&[vec![2, 1], vec![1, -2]])]),
        "A1'" => direct_sum(&[&u, &u, &named("A1", -1), &named("A1", -1)]),
        "M0" | "M" => direct_sum(&[&u, &named("E7", -1), &named("E6", -1)]),
        "M1" => direct_sum(&[&u, &named("E8", -1), &named("E6", -1)]),
        "M2" => direct_sum(&[&u, &named("E8", -1), &named("E7", -1)]),
        "M3" => direct_sum(&[&explicit(&[vec![-2, -1], vec![-1, 2]]), &named("E8", -1), &named("E8", -1)]),
        "B0" => direct_sum(&[&u2, &u2, &explicit(&[vec![-2, 0, 1], vec![0, -2, 1], vec![1, 1, -4]])]),
        "B1" => direct_sum(&[&u2, &u2, &named("A2", -2)]),
        "B1'" => direct_sum(&[&u2, &u2, &named("A1", -1), &named("A1", -1)]),
        "B2" => direct_sum(&[&u2, &u2, &named("A1", -2)]),
        "B3" => direct_sum(&[&u2, &explicit(&[vec![4, 2], vec![2, -4]])]),
        "LK3" => direct_sum(&[&u, &u, &u, &named("E8", -1), &named("E8", -1)]),
        _ => unreachable!("not a catalog name"),
    };
    l.with_label(name)
}

/// Accepts `A1p`/`B1p` for the primed names and `A` for `A0`.
pub fn canonical_name(name: &str) -> Result<&'static str> {
    let key = match name {
        "A" => "A0",
        "A1p" => "A1'",
        "B1p" => "B1'",
        other => other,
    };
    CATALOG_NAMES
        .iter()
        .copied()
        .find(|n| *n == key)
        .ok_or_else(|| Error::UnknownName(name.to_string()))
}

/// The exact Gram matrix of a catalog entry.
pub fn catalog(name: &str) -> Result<Lattice> {
    Ok(build(canonical_name(name)?))
}

/// All entries; checks read from this so a single entry can be perturbed.
#[derive(Clone, Debug)]
pub struct Catalog {
    entries: BTreeMap<&'static str, Lattice>,
    tampered: Option<&'static str>,
}

impl Catalog {
    pub fn standard() -> Self {
        Catalog {
            entries: CATALOG_NAMES.iter().map(|&n| (n, build(n))).collect(),
            tampered: None,
        }
    }

    pub fn get(&self, name: &str) -> Result<&Lattice> {
        Ok(&self.entries[canonical_name(name)?])
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.entries.keys().copied()
    }

    pub fn tampered(&self) -> Option<&'static str> {
        self.tampered
    }

    /// Negative control: add 2 to the first diagonal Gram entry whose
    /// cofactor is nonzero, so the determinant changes.
    pub fn tamper(&mut self, name: &str) -> Result<()> {
        let key = canonical_name(name)?;
        let l = &self.entries[key];
        let det = l.det();
        let mut g: IMat = l.gram().clone();
        let n = g.rows();
        let i = (0..n)
            .find(|&i| {
                let mut h = g.clone();
                h[(i, i)] += BigInt::from(2);
                h.det() != det
            })
            .unwrap_or(0);
        g[(i, i)] += BigInt::from(2);
        self.entries.insert(key, Lattice::new(g)?.with_label(key));
        self.tampered = Some(key);
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_dimensions() {
        for (name, rank, det) in [
            ("A0", 7, -6),
            ("A3", 4, 5),
            ("B0", 7, -192),
            ("LK3", 22, -1),
            ("M", 15, 6),
            ("M3", 18, -5),
        ] {
            let l = catalog(name).unwrap();
            assert_eq!((l.rank(), l.det()), (rank, BigInt::from(det)), "{name}");
        }
        assert!(catalog("Z9").is_err());
        assert_eq!(catalog("B1p").unwrap().label(), Some("B1'"));
    }

    #[test]
    fn tamper_changes_one_entry() {
        let mut c = Catalog::standard();
        c.tamper("A0").unwrap();
        assert_ne!(c.get("A0").unwrap().gram(), catalog("A0").unwrap().gram());
        assert_eq!(c.get("B0").unwrap().gram(), catalog("B0").unwrap().gram());
    }

    #[test]
    fn tamper_changes_every_determinant() {
        for name in CATALOG_NAMES {
            let mut c = Catalog::standard();
            c.tamper(name).unwrap();
            assert_eq!(c.tampered(), Some(name));
            assert_ne!(c.get(name).unwrap().det(), catalog(name).unwrap().det(), "{name}");
        }
    }
}

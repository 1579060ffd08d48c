//! Discriminant groups, discriminant forms and genus fingerprints.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::{Lattice, Signature};
use crate::error::{Error, Result};
use crate::exactmath::normal_form::{rational_row_basis, smith_normal_form};
use crate::exactmath::rational::{common_denominator, reduce_mod};
use crate::exactmath::{QMat, Rational};

/// Largest group for which the full multiset of form values is listed.
const Q_MULTISET_CAP: u64 = 100_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiscGroup {
    /// Nontrivial invariant factors `d₁ | d₂ | …`, each `> 1`.
    #[serde(serialize_with = "ser_ints")]
    pub invariant_factors: Vec<BigInt>,
    /// Generator `gᵢ` has order `dᵢ`; coordinates in the lattice basis.
    #[serde(serialize_with = "ser_qvecs")]
    pub generators: Vec<Vec<Rational>>,
    /// `q(gᵢ)` in `[0, 2)` for even lattices, in `[0, 1)` for odd ones.
    #[serde(with = "crate::exactmath::rational::vec")]
    pub qvalues: Vec<Rational>,
    /// `b(gᵢ, gⱼ)` in `[0, 1)`.
    #[serde(serialize_with = "ser_qvecs")]
    pub pairings: Vec<Vec<Rational>>,
    pub even: bool,
}

fn ser_ints<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| match x.to_i64() {
        Some(i) => serde_json::Value::from(i),
        None => serde_json::Value::from(x.to_string()),
    }))
}

fn ser_qvecs<S: serde::Serializer>(v: &[Vec<Rational>], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()))
}

impl DiscGroup {
    pub fn order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }

    /// Prime-power decomposition of the group, sorted ascending
    /// (`ℤ/6` gives `[2, 3]`).
    pub fn elementary_divisors(&self) -> Vec<BigInt> {
        let mut out: Vec<BigInt> = self.invariant_factors.iter().flat_map(prime_powers).collect();
        out.sort();
        out
    }

    /// Modulus for form values: 2 for even lattices, 1 for odd ones.
    pub fn q_modulus(&self) -> Rational {
        Rational::from_integer(BigInt::from(if self.even { 2 } else { 1 }))
    }

    /// Form values over all group elements, sorted; `None` above the cap.
    pub fn q_multiset(&self, gram: &QMat) -> Option<Vec<Rational>> {
        let order = self.order().to_u64()?;
        if order > Q_MULTISET_CAP {
            return None;
        }
        let n = gram.rows();
        let m = self.q_modulus();
        let factors: Vec<u64> = self.invariant_factors.iter().map(|d| d.to_u64().unwrap()).collect();
        let mut out = Vec::with_capacity(order as usize);
        let mut coeffs = vec![0u64; factors.len()];
        loop {
            let mut v = vec![Rational::zero(); n];
            for (g, &c) in self.generators.iter().zip(&coeffs) {
                if c != 0 {
                    let cq = Rational::from_integer(BigInt::from(c));
                    for k in 0..n {
                        v[k] += &g[k] * &cq;
                    }
                }
            }
            out.push(reduce_mod(&quad(gram, &v), &m));
            // odometer
            let mut k = 0;
            loop {
                if k == factors.len() {
                    out.sort();
                    return Some(out);
                }
                coeffs[k] += 1;
                if coeffs[k] < factors[k] {
                    break;
                }
                coeffs[k] = 0;
                k += 1;
            }
        }
    }
}

fn bilinear(g: &QMat, x: &[Rational], y: &[Rational]) -> Rational {
    let n = g.rows();
    let mut acc = Rational::zero();
    for i in 0..n {
        if x[i].is_zero() {
            continue;
        }
        for j in 0..n {
            if !y[j].is_zero() {
                acc += &x[i] * &g[(i, j)] * &y[j];
            }
        }
    }
    acc
}

fn quad(g: &QMat, x: &[Rational]) -> Rational {
    bilinear(g, x, x)
}

/// Generators are columns of `V` divided by the invariant factors, where
/// `D = U·G·V` is the Smith form of the Gram matrix.
pub fn disc_group(l: &Lattice) -> Result<DiscGroup> {
    let g = l.gram();
    if l.det().is_zero() {
        return Err(Error::Degenerate);
    }
    let snf = smith_normal_form(g);
    let gq = g.to_qmat();
    let even = l.is_even();
    let mut invariant_factors = Vec::new();
    let mut generators = Vec::new();
    for (i, d) in snf.diagonal().into_iter().enumerate() {
        if d.is_one() {
            continue;
        }
        let col = snf.v.col(i);
        generators.push(col.into_iter().map(|x| Rational::new(x, d.clone())).collect::<Vec<_>>());
        invariant_factors.push(d);
    }
    let qm = Rational::from_integer(BigInt::from(if even { 2 } else { 1 }));
    let one = Rational::one();
    let qvalues = generators.iter().map(|x| reduce_mod(&quad(&gq, x), &qm)).collect();
    let pairings = generators
        .iter()
        .map(|x| generators.iter().map(|y| reduce_mod(&bilinear(&gq, x, y), &one)).collect())
        .collect();
    Ok(DiscGroup { invariant_factors, generators, qvalues, pairings, even })
}

/// True iff every `gens[i]` lies in the dual lattice with order exactly
/// `orders[i]` modulo the lattice, and the classes generate the whole group.
pub fn verify_disc_generators(l: &Lattice, gens: &[Vec<Rational>], orders: &[u64]) -> bool {
    let n = l.rank();
    if gens.len() != orders.len() || gens.iter().any(|g| g.len() != n) {
        return false;
    }
    let det = l.det();
    if det.is_zero() {
        return false;
    }
    let gq = l.gram().to_qmat();
    for (g, &ord) in gens.iter().zip(orders) {
        // dual membership: pairing with each basis vector is integral
        let dual = (0..n).all(|j| {
            let s: Rational = (0..n).map(|i| &g[i] * &gq[(i, j)]).sum();
            s.is_integer()
        });
        if !dual || common_denominator(g) != BigInt::from(ord) {
            return false;
        }
    }
    // |⟨gens⟩ + L : L| = 1 / covolume of the enlarged lattice
    let mut rows: Vec<Vec<Rational>> = gens.to_vec();
    for i in 0..n {
        let mut e = vec![Rational::zero(); n];
        e[i] = Rational::one();
        rows.push(e);
    }
    let basis = rational_row_basis(&rows, n);
    if basis.len() != n {
        return false;
    }
    let covol = QMat::from_rows(basis).expect("square").det().abs();
    covol.recip() == Rational::from_integer(det.abs())
}

/// Isometry-invariant data; unequal fingerprints certify non-isometry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenusFingerprint {
    pub rank: usize,
    pub signature: Signature,
    pub even: bool,
    #[serde(serialize_with = "ser_ints")]
    pub abs_det: Vec<BigInt>,
    #[serde(serialize_with = "ser_ints")]
    pub invariant_factors: Vec<BigInt>,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "ser_opt_q")]
    pub q_multiset: Option<Vec<Rational>>,
}

fn ser_opt_q<S: serde::Serializer>(v: &Option<Vec<Rational>>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.collect_seq(v.iter().map(|x| x.to_string())),
        None => s.serialize_none(),
    }
}

impl GenusFingerprint {
    /// First differing component, for reporting.
    pub fn difference(&self, other: &GenusFingerprint) -> Option<String> {
        if self.rank != other.rank {
            return Some(format!("rank {} vs {}", self.rank, other.rank));
        }
        if self.signature != other.signature {
            return Some(format!(
                "signature {:?} vs {:?}",
                self.signature.as_array(),
                other.signature.as_array()
            ));
        }
        if self.even != other.even {
            return Some("parity differs".into());
        }
        if self.abs_det != other.abs_det {
            return Some(format!("|det| {} vs {}", self.abs_det[0], other.abs_det[0]));
        }
        if self.invariant_factors != other.invariant_factors {
            return Some(format!(
                "invariant factors {:?} vs {:?}",
                self.invariant_factors, other.invariant_factors
            ));
        }
        if self.q_multiset != other.q_multiset {
            return Some("discriminant-form value multisets differ".into());
        }
        None
    }
}

pub fn genus_invariants(l: &Lattice) -> Result<GenusFingerprint> {
    let dg = disc_group(l)?;
    let q_multiset = dg.q_multiset(&l.gram().to_qmat());
    Ok(GenusFingerprint {
        rank: l.rank(),
        signature: l.signature(),
        even: l.is_even(),
        abs_det: vec![l.det().abs()],
        invariant_factors: dg.invariant_factors,
        q_multiset,
    })
}

/// Trial division into prime powers.
pub fn prime_powers(n: &BigInt) -> Vec<BigInt> {
    let mut m = n.abs();
    let mut out = Vec::new();
    let mut p = BigInt::from(2);
    while &p * &p <= m {
        let mut q = BigInt::one();
        while (&m % &p).is_zero() {
            m /= &p;
            q *= &p;
        }
        if !q.is_one() {
            out.push(q);
        }
        p += 1;
    }
    if m > BigInt::one() {
        out.push(m);
    }
    out
}

/// Order of a rational vector modulo `ℤⁿ`.
pub fn class_order(v: &[Rational]) -> BigInt {
    v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rational::{int, rat};
    use crate::lattice::{direct_sum, make_named};

    fn a0() -> Lattice {
        let u = make_named("U", 1).unwrap();
        direct_sum(&[&u, &u, &make_named("A2", -1).unwrap(), &make_named("A1", -1).unwrap()])
    }

    #[test]
    fn disc_of_a0() {
        let dg = disc_group(&a0()).unwrap();
        assert_eq!(dg.invariant_factors, vec![BigInt::from(6)]);
        assert_eq!(dg.order(), BigInt::from(6));
        assert_eq!(dg.elementary_divisors(), vec![BigInt::from(2), BigInt::from(3)]);
        for (g, d) in dg.generators.iter().zip(&dg.invariant_factors) {
            assert_eq!(&class_order(g), d);
        }
    }

    #[test]
    fn disc_of_a2_minus_one() {
        let dg = disc_group(&make_named("A2", -1).unwrap()).unwrap();
        assert_eq!(dg.invariant_factors, vec![BigInt::from(3)]);
        // −2/3 mod 2
        assert_eq!(dg.qvalues, vec![rat(4, 3)]);
    }

    #[test]
    fn unimodular_is_trivial() {
        let dg = disc_group(&make_named("U", 1).unwrap()).unwrap();
        assert!(dg.invariant_factors.is_empty());
        assert!(verify_disc_generators(&make_named("U", 1).unwrap(), &[], &[]));
    }

    #[test]
    fn generator_verification() {
        let l = a0();
        let z = int(0);
        let y1 = vec![z.clone(), z.clone(), z.clone(), z.clone(), rat(1, 3), rat(2, 3), z.clone()];
        let y2 = vec![z.clone(), z.clone(), z.clone(), z.clone(), rat(2, 3), rat(1, 3), z.clone()];
        let y3 = vec![z.clone(), z.clone(), z.clone(), z.clone(), z.clone(), z.clone(), rat(1, 2)];
        assert!(verify_disc_generators(&l, &[y1.clone(), y2.clone(), y3.clone()], &[3, 3, 2]));
        assert!(!verify_disc_generators(&l, std::slice::from_ref(&y1), &[3]));
        assert!(!verify_disc_generators(&l, &[y3], &[3]));
    }

    #[test]
    fn fingerprint_detects_det() {
        let a = make_named("A1", -1).unwrap();
        let b = make_named("A1", -2).unwrap();
        let fa = genus_invariants(&a).unwrap();
        let fb = genus_invariants(&b).unwrap();
        assert!(fa.difference(&fb).unwrap().contains("|det|"));
        assert_eq!(fa.difference(&fa), None);
    }
}

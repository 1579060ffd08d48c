//! Integral lattices given by symmetric Gram matrices.

mod disc;
mod isometry;
mod span;

pub use disc::{class_order, disc_group, prime_powers, genus_invariants, verify_disc_generators, DiscGroup, GenusFingerprint};
pub use isometry::{find_isometry, verify_isometry, IsometryOutcome, DEFAULT_BUDGET};
pub use span::{gram_of_vectors, intersect_with_subspace, SpanInAmbient};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::{IMat, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "LatticeJson", into = "LatticeJson")]
pub struct Lattice {
    gram: IMat,
    label: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct LatticeJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
    gram: IMat,
}

impl TryFrom<LatticeJson> for Lattice {
    type Error = Error;
    fn try_from(j: LatticeJson) -> Result<Self> {
        let l = Lattice::new(j.gram)?;
        Ok(match j.label {
            Some(s) => l.with_label(s),
            None => l,
        })
    }
}

impl From<Lattice> for LatticeJson {
    fn from(l: Lattice) -> Self {
        LatticeJson { label: l.label, gram: l.gram }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Signature {
    pub fn as_array(&self) -> [usize; 3] {
        [self.positive, self.negative, self.zero]
    }

    pub fn is_definite(&self) -> bool {
        self.zero == 0 && (self.positive == 0 || self.negative == 0)
    }
}

impl Lattice {
    /// Fails unless `gram` is square and symmetric.
    pub fn new(gram: IMat) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::Dimension(format!(
                "Gram matrix is {}x{}",
                gram.rows(),
                gram.cols()
            )));
        }
        if !gram.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        Ok(Lattice { gram, label: None })
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        if rows.iter().any(|row| row.len() != r) {
            return Err(Error::Dimension("Gram matrix is not square".into()));
        }
        Lattice::new(IMat::from_i64(rows))
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn gram(&self) -> &IMat {
        &self.gram
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn det(&self) -> BigInt {
        self.gram.det()
    }

    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| (&self.gram[(i, i)] % 2u32).is_zero())
    }

    /// Entrywise scaling `Λ(k)`.
    pub fn twist(&self, k: i64) -> Result<Lattice> {
        if k == 0 {
            return Err(Error::ZeroTwist);
        }
        Ok(Lattice { gram: self.gram.scaled(&BigInt::from(k)), label: None })
    }

    pub fn signature(&self) -> Signature {
        signature_of(&self.gram)
    }

    /// Inner product of two coordinate vectors.
    pub fn dot(&self, x: &[BigInt], y: &[BigInt]) -> BigInt {
        self.gram.mul_vec(y).iter().zip(x).map(|(a, b)| a * b).sum()
    }

    pub fn dot_q(&self, x: &[Rational], y: &[Rational]) -> Rational {
        let n = self.rank();
        let mut acc = Rational::zero();
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if !y[j].is_zero() && !self.gram[(i, j)].is_zero() {
                    acc += &x[i] * &y[j] * Rational::from_integer(self.gram[(i, j)].clone());
                }
            }
        }
        acc
    }
}

/// Congruence diagonalization over ℚ; a zero pivot with a nonzero
/// off-diagonal entry is fixed by `eᵢ ← eᵢ + eⱼ`.
pub fn signature_of(gram: &IMat) -> Signature {
    let n = gram.rows();
    let mut a: Vec<Vec<Rational>> = (0..n)
        .map(|i| (0..n).map(|j| Rational::from_integer(gram[(i, j)].clone())).collect())
        .collect();
    let mut sig = Signature { positive: 0, negative: 0, zero: 0 };
    while !a.is_empty() {
        let m = a.len();
        let piv = match (0..m).find(|&i| !a[i][i].is_zero()) {
            Some(i) => i,
            None => match (0..m).flat_map(|i| (0..m).map(move |j| (i, j))).find(|&(i, j)| !a[i][j].is_zero()) {
                None => {
                    sig.zero += m;
                    break;
                }
                Some((i, j)) => {
                    for k in 0..m {
                        let v = a[j][k].clone();
                        a[i][k] += v;
                    }
                    for k in 0..m {
                        let v = a[k][j].clone();
                        a[k][i] += v;
                    }
                    i
                }
            },
        };
        a.swap(0, piv);
        for row in a.iter_mut() {
            row.swap(0, piv);
        }
        let p = a[0][0].clone();
        if p.is_positive() {
            sig.positive += 1;
        } else {
            sig.negative += 1;
        }
        let rest: Vec<Vec<Rational>> = (1..m)
            .map(|i| {
                (1..m)
                    .map(|j| &a[i][j] - &a[i][0] * &a[0][j] / &p)
                    .collect()
            })
            .collect();
        a = rest;
    }
    sig
}

/// Root-lattice and hyperbolic-plane Gram matrices (norm +2 roots),
/// scaled by `twist`. Names: `U`, `A<n>`, `D<n>`, `E6`, `E7`, `E8`, with an
/// optional underscore (`A_2`).
pub fn make_named(name: &str, twist: i64) -> Result<Lattice> {
    if twist == 0 {
        return Err(Error::ZeroTwist);
    }
    let key: String = name.chars().filter(|c| *c != '_').collect();
    let unknown = || Error::UnknownName(name.to_string());
    let gram = if key == "U" {
        IMat::from_i64(&[vec![0, 1], vec![1, 0]])
    } else {
        let (kind, n) = key.split_at(1);
        let n: usize = n.parse().map_err(|_| unknown())?;
        let edges: Vec<(usize, usize)> = match (kind, n) {
            ("A", n) if n >= 1 => (1..n).map(|i| (i - 1, i)).collect(),
            ("D", n) if n >= 4 => {
                let mut e: Vec<_> = (1..n - 1).map(|i| (i - 1, i)).collect();
                e.push((n - 3, n - 1));
                e
            }
            ("E", 6..=8) => {
                // chain 1..n−1, node n attached to node 3
                let mut e: Vec<_> = (1..n - 1).map(|i| (i - 1, i)).collect();
                e.push((2, n - 1));
                e
            }
            _ => return Err(unknown()),
        };
        dynkin_gram(n, &edges)
    };
    let l = Lattice::new(gram.scaled(&BigInt::from(twist)))?;
    let label = if twist == 1 { key } else { format!("{key}({twist})") };
    Ok(l.with_label(label))
}

/// Gram `2·I − adjacency` for a simply-laced diagram on nodes `0..n`.
pub fn dynkin_gram(n: usize, edges: &[(usize, usize)]) -> IMat {
    let mut g = IMat::zeros(n, n);
    for i in 0..n {
        g[(i, i)] = BigInt::from(2);
    }
    for &(i, j) in edges {
        g[(i, j)] = BigInt::from(-1);
        g[(j, i)] = BigInt::from(-1);
    }
    g
}

pub fn direct_sum(parts: &[&Lattice]) -> Lattice {
    let grams: Vec<&IMat> = parts.iter().map(|l| &l.gram).collect();
    Lattice { gram: IMat::block_diag(&grams), label: None }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_lattices() {
        assert_eq!(make_named("U", 1).unwrap().gram(), &IMat::from_i64(&[vec![0, 1], vec![1, 0]]));
        assert_eq!(
            make_named("A_2", -1).unwrap().gram(),
            &IMat::from_i64(&[vec![-2, 1], vec![1, -2]])
        );
        assert_eq!(make_named("A1", -2).unwrap().gram(), &IMat::from_i64(&[vec![-4]]));
        assert!(make_named("F4", 1).is_err());
        assert!(make_named("U", 0).is_err());
        assert_eq!(make_named("E8", 1).unwrap().det(), BigInt::from(1));
        assert_eq!(make_named("E7", 1).unwrap().det(), BigInt::from(2));
        assert_eq!(make_named("E6", 1).unwrap().det(), BigInt::from(3));
        assert_eq!(make_named("D4", 1).unwrap().det(), BigInt::from(4));
    }

    #[test]
    fn signatures() {
        let u = make_named("U", 1).unwrap();
        assert_eq!(u.signature().as_array(), [1, 1, 0]);
        let e8 = make_named("E8", -1).unwrap();
        let lk3 = direct_sum(&[&u, &u, &u, &e8, &e8]);
        assert_eq!(lk3.signature().as_array(), [3, 19, 0]);
        assert_eq!(lk3.det(), BigInt::from(-1));
        let z = Lattice::from_i64(&[vec![0, 0], vec![0, 0]]).unwrap();
        assert_eq!(z.signature().as_array(), [0, 0, 2]);
        let odd = Lattice::from_i64(&[vec![1]]).unwrap();
        assert!(!odd.is_even());
    }

    #[test]
    fn rejects_bad_gram() {
        assert_eq!(
            Lattice::new(IMat::from_i64(&[vec![0, 1], vec![2, 0]])),
            Err(Error::NotSymmetric)
        );
        assert!(Lattice::new(IMat::from_i64(&[vec![0, 1]])).is_err());
    }

    #[test]
    fn json_roundtrip() {
        let l = make_named("A2", -1).unwrap();
        let s = serde_json::to_string(&l).unwrap();
        assert_eq!(s, r#"{"label":"A2(-1)","gram":[[-2,1],[1,-2]]}"#);
        let back: Lattice = serde_json::from_str(&s).unwrap();
        assert_eq!(back, l);
        assert!(serde_json::from_str::<Lattice>(r#"{"gram":[[0,1],[2,0]]}"#).is_err());
    }
}

//! Coordinates on `L_K3 = U³ ⊕ E8(−1)²` and the named vectors used in the
//! transcendental-lattice computation.

use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::exactmath::{IMat, Rational};
use crate::lattice::Lattice;

pub const K3_RANK: usize = 22;

/// Labels in basis order.
pub const LABELS: [&str; K3_RANK] = [
    "e1", "f1", "e2", "f2", "e3", "f3", "p1", "p2", "p3", "p4", "p5", "p6", "p7", "p8", "q1", "q2",
    "q3", "q4", "q5", "q6", "q7", "q8",
];

pub fn e(j: usize) -> usize {
    assert!((1..=3).contains(&j));
    2 * (j - 1)
}

pub fn f(j: usize) -> usize {
    e(j) + 1
}

pub fn p(j: usize) -> usize {
    assert!((1..=8).contains(&j));
    5 + j
}

pub fn q(j: usize) -> usize {
    assert!((1..=8).contains(&j));
    13 + j
}

/// The K3 lattice with both `E8(−1)` copies wired by one edge list on labels
/// `1..=8`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct K3Basis {
    edges: Vec<(usize, usize)>,
    adj: [[bool; 9]; 9],
}

impl K3Basis {
    pub fn new(edges: &[(usize, usize)]) -> Self {
        let mut adj = [[false; 9]; 9];
        let mut norm: Vec<(usize, usize)> = edges.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
        norm.sort();
        for &(a, b) in &norm {
            adj[a][b] = true;
            adj[b][a] = true;
        }
        K3Basis { edges: norm, adj }
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.adj[a][b]
    }

    /// Gram entry between basis vectors `i` and `j`.
    pub fn entry(&self, i: usize, j: usize) -> i64 {
        if i < 6 || j < 6 {
            return i64::from(i < 6 && j < 6 && i / 2 == j / 2 && i != j);
        }
        let (bi, bj) = ((i - 6) / 8, (j - 6) / 8);
        if bi != bj {
            return 0;
        }
        let (li, lj) = ((i - 6) % 8 + 1, (j - 6) % 8 + 1);
        if li == lj {
            -2
        } else {
            i64::from(self.adj[li][lj])
        }
    }

    pub fn lattice(&self) -> Lattice {
        let rows: Vec<Vec<i64>> = (0..K3_RANK)
            .map(|i| (0..K3_RANK).map(|j| self.entry(i, j)).collect())
            .collect();
        Lattice::from_i64(&rows).expect("symmetric").with_label("LK3")
    }

    pub fn dot(&self, x: &AmbientVector, y: &AmbientVector) -> Rational {
        let mut acc = Rational::zero();
        for (i, a) in x.nonzero() {
            for (j, b) in y.nonzero() {
                let g = self.entry(i, j);
                if g != 0 {
                    acc += a * b * Rational::from_integer(g.into());
                }
            }
        }
        acc
    }

    pub fn gram(&self, vs: &[AmbientVector]) -> Vec<Vec<Rational>> {
        vs.iter().map(|x| vs.iter().map(|y| self.dot(x, y)).collect()).collect()
    }

    /// Integer Gram; panics on non-integral input.
    pub fn gram_int(&self, vs: &[AmbientVector]) -> IMat {
        let rows = self
            .gram(vs)
            .into_iter()
            .map(|r| r.into_iter().map(|x| {
                assert!(x.is_integer(), "non-integral inner product");
                x.to_integer()
            }).collect())
            .collect();
        IMat::from_rows(rows).expect("square")
    }
}

/// Exact rational coordinates in the fixed 22-element basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AmbientVector {
    coords: Vec<Rational>,
}

impl AmbientVector {
    pub fn zero() -> Self {
        AmbientVector { coords: vec![Rational::zero(); K3_RANK] }
    }

    pub fn unit(i: usize) -> Self {
        let mut v = AmbientVector::zero();
        v.coords[i] = Rational::from_integer(1.into());
        v
    }

    pub fn from_coords(coords: Vec<Rational>) -> Self {
        assert_eq!(coords.len(), K3_RANK);
        AmbientVector { coords }
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn nonzero(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.coords.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    pub fn scale(&self, k: &Rational) -> Self {
        AmbientVector { coords: self.coords.iter().map(|c| c * k).collect() }
    }

    pub fn times(&self, k: i64) -> Self {
        self.scale(&Rational::from_integer(k.into()))
    }

    pub fn half(&self) -> Self {
        self.scale(&Rational::new(1.into(), 2.into()))
    }

    pub fn to_integer(&self) -> Option<Vec<BigInt>> {
        self.coords
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    /// `"2e1 + 2f1 - p5 - q5 + p7 + q7"` style rendering.
    pub fn describe(&self) -> String {
        let mut out = String::new();
        for (i, c) in self.nonzero() {
            let neg = c < &Rational::zero();
            let a = if neg { -c.clone() } else { c.clone() };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if a != Rational::from_integer(1.into()) {
                out.push_str(&a.to_string());
            }
            out.push_str(LABELS[i]);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl Add for &AmbientVector {
    type Output = AmbientVector;
    fn add(self, o: &AmbientVector) -> AmbientVector {
        AmbientVector { coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &AmbientVector {
    type Output = AmbientVector;
    fn sub(self, o: &AmbientVector) -> AmbientVector {
        AmbientVector { coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &AmbientVector {
    type Output = AmbientVector;
    fn neg(self) -> AmbientVector {
        self.times(-1)
    }
}

/// Sum of unit vectors with integer coefficients.
pub fn combo(terms: &[(i64, usize)]) -> AmbientVector {
    let mut v = AmbientVector::zero();
    for &(k, i) in terms {
        v.coords[i] += Rational::from_integer(k.into());
    }
    v
}

/// `νⱼ = pⱼ + qⱼ`.
pub fn nu(j: usize) -> AmbientVector {
    combo(&[(1, p(j)), (1, q(j))])
}

/// `λ₁ = −ν₅ + ν₇ + 2(e₁ + f₁)`.
pub fn lambda1() -> AmbientVector {
    &(&nu(7) - &nu(5)) + &combo(&[(2, e(1)), (2, f(1))])
}

/// `μ₁ = −ν₄`.
pub fn mu1() -> AmbientVector {
    -&nu(4)
}

/// `λ₂ = ν₇ + ν₈ + 2(e₁ + e₂ + e₃ + f₃)`.
pub fn lambda2() -> AmbientVector {
    &(&nu(7) + &nu(8)) + &combo(&[(2, e(1)), (2, e(2)), (2, e(3)), (2, f(3))])
}

/// `μ₂ = ν₆`.
pub fn mu2() -> AmbientVector {
    nu(6)
}

/// `⟨λ₁, μ₁, λ₂, μ₂, p₁, q₁, ν₂⟩`.
pub fn transcendental_vectors() -> Vec<AmbientVector> {
    vec![lambda1(), mu1(), lambda2(), mu2(), AmbientVector::unit(p(1)), AmbientVector::unit(q(1)), nu(2)]
}

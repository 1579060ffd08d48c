//! Sublattices of an ambient lattice given by integer coordinate vectors.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::Lattice;
use crate::error::{Error, Result};
use crate::exactmath::normal_form::{integer_kernel, left_kernel, rank, rational_row_basis, smith_normal_form};
use crate::exactmath::rational::common_denominator;
use crate::exactmath::{IMat, QMat, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanInAmbient {
    ambient: Lattice,
    /// One basis vector per row, in ambient coordinates.
    basis: IMat,
}

impl SpanInAmbient {
    /// Fails on wrong vector length or linear dependence.
    pub fn new(ambient: Lattice, vectors: Vec<Vec<BigInt>>) -> Result<Self> {
        let n = ambient.rank();
        if vectors.iter().any(|v| v.len() != n) {
            return Err(Error::Dimension(format!("vectors must have length {n}")));
        }
        let basis = if vectors.is_empty() { IMat::zeros(0, n) } else { IMat::from_rows(vectors)? };
        if basis.rows() > 0 && rank(&basis) != basis.rows() {
            return Err(Error::Dependent);
        }
        Ok(SpanInAmbient { ambient, basis })
    }

    pub fn ambient(&self) -> &Lattice {
        &self.ambient
    }

    pub fn basis(&self) -> &IMat {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    /// `B · G · Bᵀ`.
    pub fn gram(&self) -> IMat {
        let bg = self.basis.mul_checked(self.ambient.gram()).expect("dimensions");
        bg.mul_checked(&self.basis.transpose()).expect("dimensions")
    }

    pub fn lattice(&self) -> Lattice {
        Lattice::new(self.gram()).expect("Gram of a span is symmetric")
    }

    /// Saturated sublattice of vectors orthogonal to the whole span.
    pub fn orth_complement(&self) -> SpanInAmbient {
        let n = self.ambient.rank();
        let k = if self.rank() == 0 {
            IMat::identity(n)
        } else {
            integer_kernel(&self.basis.mul_checked(self.ambient.gram()).expect("dimensions"))
        };
        SpanInAmbient { ambient: self.ambient.clone(), basis: k }
    }

    /// Torsion-free quotient: every Smith invariant factor of the basis is 1.
    pub fn is_primitive(&self) -> bool {
        if self.rank() == 0 {
            return true;
        }
        smith_normal_form(&self.basis)
            .diagonal()
            .iter()
            .all(|d| d.is_one())
    }
}

/// Pairwise ambient inner products of rational coordinate vectors.
pub fn gram_of_vectors(ambient: &Lattice, vectors: &[Vec<Rational>]) -> QMat {
    let rows = vectors
        .iter()
        .map(|x| vectors.iter().map(|y| ambient.dot_q(x, y)).collect())
        .collect();
    QMat::from_rows(rows).expect("square")
}

/// HNF basis of `ℤ-span(gens) ∩ ℚ-span(subspace)`.
pub fn intersect_with_subspace(gens: &[Vec<Rational>], subspace: &[Vec<Rational>]) -> Result<Vec<Vec<Rational>>> {
    let Some(dim) = gens.first().map(Vec::len) else {
        return Ok(Vec::new());
    };
    if gens.iter().chain(subspace).any(|v| v.len() != dim) {
        return Err(Error::Dimension("vectors of unequal length".into()));
    }
    let basis = rational_row_basis(gens, dim);
    // columns of `normals` span the standard-dot complement of the subspace
    let normals = if subspace.is_empty() {
        IMat::identity(dim)
    } else {
        integer_kernel(&clear_denominators(subspace)?).transpose()
    };
    if normals.cols() == 0 {
        return Ok(basis);
    }
    let bq = QMat::from_rows(basis.clone())?;
    let prod = bq.mul_checked(&normals.to_qmat())?;
    let rows = prod.to_rows();
    let m = clear_denominators(&rows)?;
    let k = left_kernel(&m);
    if k.rows() == 0 {
        return Ok(Vec::new());
    }
    let combos: Vec<Vec<Rational>> = (0..k.rows())
        .map(|i| {
            (0..dim)
                .map(|j| {
                    (0..basis.len())
                        .filter(|&t| !k[(i, t)].is_zero())
                        .map(|t| Rational::from_integer(k[(i, t)].clone()) * &basis[t][j])
                        .sum()
                })
                .collect()
        })
        .collect();
    Ok(rational_row_basis(&combos, dim))
}

fn clear_denominators(rows: &[Vec<Rational>]) -> Result<IMat> {
    let d = Rational::from_integer(common_denominator(rows.iter().flatten()));
    IMat::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|x| (x * &d).to_integer()).collect())
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rational::{int, rat};
    use crate::lattice::{direct_sum, make_named};

    fn v(x: &[i64]) -> Vec<BigInt> {
        x.iter().map(|&a| BigInt::from(a)).collect()
    }

    #[test]
    fn complement_in_two_planes() {
        let u = make_named("U", 1).unwrap();
        let uu = direct_sum(&[&u, &u]);
        let s = SpanInAmbient::new(uu, vec![v(&[1, 0, 0, 0]), v(&[0, 1, 0, 0])]).unwrap();
        let c = s.orth_complement();
        assert_eq!(c.basis(), &IMat::from_i64(&[vec![0, 0, 1, 0], vec![0, 0, 0, 1]]));
        assert_eq!(c.gram(), *u.gram());
    }

    #[test]
    fn primitivity() {
        let u = make_named("U", 1).unwrap();
        assert!(!SpanInAmbient::new(u.clone(), vec![v(&[2, 0])]).unwrap().is_primitive());
        assert!(SpanInAmbient::new(u.clone(), vec![v(&[1, 3])]).unwrap().is_primitive());
        assert_eq!(SpanInAmbient::new(u, vec![v(&[1, 1]), v(&[2, 2])]), Err(Error::Dependent));
    }

    #[test]
    fn complement_of_e7_in_e8() {
        let e8 = make_named("E8", -1).unwrap();
        let s = SpanInAmbient::new(e8, (0..7).map(|i| {
            let mut x = vec![0; 8];
            x[if i < 6 { i } else { 7 }] = 1;
            v(&x)
        }).collect()).unwrap();
        let c = s.orth_complement();
        assert_eq!(c.rank(), 1);
        assert_eq!(c.gram(), IMat::from_i64(&[vec![-2]]));
    }

    #[test]
    fn intersections() {
        let gens = vec![vec![int(1), int(0)], vec![int(0), int(1)]];
        let line = vec![vec![int(1), int(1)]];
        assert_eq!(intersect_with_subspace(&gens, &line).unwrap(), vec![vec![int(1), int(1)]]);
        let gens = vec![vec![rat(1, 2), int(0)], vec![int(0), int(1)]];
        let axis = vec![vec![int(3), int(0)]];
        assert_eq!(intersect_with_subspace(&gens, &axis).unwrap(), vec![vec![rat(1, 2), int(0)]]);
    }

    #[test]
    fn rational_gram() {
        let u = make_named("U", 1).unwrap();
        let g = gram_of_vectors(&u, &[vec![rat(1, 2), int(1)]]);
        assert_eq!(g[(0, 0)], int(1));
    }
}

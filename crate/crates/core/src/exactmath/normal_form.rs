//! Smith and Hermite normal forms over ℤ, integer kernels, and row-lattice
//! bases for rational generators.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IMat;
use super::rational::{common_denominator, Rational};

/// `d = u · m · v` with `u`, `v` unimodular and `d` diagonal,
/// `d₁ | d₂ | …`, all `dᵢ ≥ 0`.
#[derive(Clone, Debug)]
pub struct Snf {
    pub u: IMat,
    pub d: IMat,
    pub v: IMat,
}

impl Snf {
    /// Diagonal entries `d[i][i]` for `i < min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d[(i, i)].clone())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

/// Extended gcd with `g ≥ 0`: returns `(g, s, t)` such that `s·a + t·b = g`.
pub fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

pub fn smith_normal_form(m: &IMat) -> Snf {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut u = IMat::identity(rows);
    let mut v = IMat::identity(cols);
    let mut t = 0;
    while t < rows.min(cols) {
        // pivot: smallest nonzero |entry| in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[(i, j)].is_zero()
                    && best.is_none_or(|(bi, bj)| a[(i, j)].abs() < a[(bi, bj)].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap_rows(t, pi);
        u.swap_rows(t, pi);
        a.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            // clear column t below the pivot with gcd row operations
            for i in t + 1..rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let (p, q) = (a[(t, t)].clone(), a[(i, t)].clone());
                if q.is_multiple_of(&p) {
                    let k = -(&q / &p);
                    a.add_row_multiple(i, t, &k);
                    u.add_row_multiple(i, t, &k);
                } else {
                    let (g, s, tt) = ext_gcd(&p, &q);
                    let (pg, qg) = (&p / &g, &q / &g);
                    a.combine_rows(t, i, &s, &tt, &-&qg, &pg);
                    u.combine_rows(t, i, &s, &tt, &-&qg, &pg);
                }
            }
            // clear row t right of the pivot with gcd column operations
            for j in t + 1..cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let (p, q) = (a[(t, t)].clone(), a[(t, j)].clone());
                if q.is_multiple_of(&p) {
                    let k = -(&q / &p);
                    a.add_col_multiple(j, t, &k);
                    v.add_col_multiple(j, t, &k);
                } else {
                    let (g, s, tt) = ext_gcd(&p, &q);
                    let (pg, qg) = (&p / &g, &q / &g);
                    a.combine_cols(t, j, &s, &tt, &-&qg, &pg);
                    v.combine_cols(t, j, &s, &tt, &-&qg, &pg);
                }
            }
            let col_clear = (t + 1..rows).all(|i| a[(i, t)].is_zero());
            if !col_clear {
                continue;
            }
            // divisibility: fold any offending row into row t and redo
            let p = a[(t, t)].clone();
            let bad = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !a[(i, j)].is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    a.add_row_multiple(t, i, &BigInt::one());
                    u.add_row_multiple(t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    Snf { u, d: a, v }
}

/// `h = t · m` with `t` unimodular and `h` in row Hermite normal form:
/// echelon, positive pivots, entries above a pivot reduced into `[0, pivot)`,
/// zero rows last.
#[derive(Clone, Debug)]
pub struct Hnf {
    pub h: IMat,
    pub t: IMat,
    pub rank: usize,
}

impl Hnf {
    pub fn nonzero_rows(&self) -> IMat {
        self.h.select_rows(&(0..self.rank).collect::<Vec<_>>())
    }

    pub fn pivots(&self) -> Vec<usize> {
        (0..self.rank)
            .map(|i| {
                (0..self.h.cols())
                    .find(|&j| !self.h[(i, j)].is_zero())
                    .expect("nonzero row")
            })
            .collect()
    }
}

pub fn hermite_normal_form(m: &IMat) -> Hnf {
    let (rows, cols) = (m.rows(), m.cols());
    let mut h = m.clone();
    let mut t = IMat::identity(rows);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(first) = (r..rows).find(|&i| !h[(i, c)].is_zero()) else {
            continue;
        };
        h.swap_rows(r, first);
        t.swap_rows(r, first);
        for i in r + 1..rows {
            if h[(i, c)].is_zero() {
                continue;
            }
            let (p, q) = (h[(r, c)].clone(), h[(i, c)].clone());
            let (g, s, tt) = ext_gcd(&p, &q);
            let (pg, qg) = (&p / &g, &q / &g);
            h.combine_rows(r, i, &s, &tt, &-&qg, &pg);
            t.combine_rows(r, i, &s, &tt, &-&qg, &pg);
        }
        if h[(r, c)].is_negative() {
            h.negate_row(r);
            t.negate_row(r);
        }
        let p = h[(r, c)].clone();
        for i in 0..r {
            let k = -h[(i, c)].div_floor(&p);
            h.add_row_multiple(i, r, &k);
            t.add_row_multiple(i, r, &k);
        }
        r += 1;
    }
    Hnf { h, t, rank: r }
}

/// Rows form a ℤ-basis of `{x ∈ ℤⁿ : m·x = 0}` (saturated), in HNF.
pub fn integer_kernel(m: &IMat) -> IMat {
    let n = m.cols();
    if m.rows() == 0 {
        return IMat::identity(n);
    }
    let hnf = hermite_normal_form(&m.transpose());
    let idx: Vec<usize> = (hnf.rank..n).collect();
    let raw = hnf.t.select_rows(&idx);
    hermite_normal_form(&raw).nonzero_rows()
}

/// Rows form a ℤ-basis of `{x : x·m = 0}`.
pub fn left_kernel(m: &IMat) -> IMat {
    integer_kernel(&m.transpose())
}

/// HNF ℤ-basis of the lattice spanned by rational row vectors.
pub fn rational_row_basis(rows: &[Vec<Rational>], dim: usize) -> Vec<Vec<Rational>> {
    if rows.is_empty() {
        return Vec::new();
    }
    let den = common_denominator(rows.iter().flatten());
    let dq = Rational::from_integer(den.clone());
    let ints: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            assert_eq!(r.len(), dim, "vector length mismatch");
            r.iter().map(|x| (x * &dq).to_integer()).collect()
        })
        .collect();
    let hnf = hermite_normal_form(&IMat::from_rows(ints).expect("rectangular"));
    (0..hnf.rank)
        .map(|i| {
            hnf.h
                .row(i)
                .iter()
                .map(|x| Rational::new(x.clone(), den.clone()))
                .collect()
        })
        .collect()
}

pub fn rank(m: &IMat) -> usize {
    hermite_normal_form(m).rank
}

#[cfg(test)]
mod tests {
    use super::*;

    fn invariants(m: &IMat) -> Vec<i64> {
        let s = smith_normal_form(m);
        s.diagonal().iter().map(|x| x.try_into().unwrap()).collect()
    }

    fn check_snf(m: &IMat) {
        let s = smith_normal_form(m);
        assert_eq!(&(&s.u * m) * &s.v, s.d);
        assert_eq!(s.u.det().abs(), BigInt::one());
        assert_eq!(s.v.det().abs(), BigInt::one());
        let diag = s.diagonal();
        for w in diag.windows(2) {
            if !w[0].is_zero() {
                assert!(w[1].is_multiple_of(&w[0]));
            } else {
                assert!(w[1].is_zero());
            }
        }
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    assert!(s.d[(i, j)].is_zero());
                }
            }
        }
    }

    #[test]
    fn snf_examples() {
        assert_eq!(invariants(&IMat::from_i64(&[vec![2, 0], vec![0, -2]])), vec![2, 2]);
        assert_eq!(invariants(&IMat::from_i64(&[vec![-2, 1], vec![1, -2]])), vec![1, 3]);
        assert_eq!(invariants(&IMat::identity(4)), vec![1, 1, 1, 1]);
        let m = IMat::from_i64(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        assert_eq!(invariants(&m), vec![2, 6, 12]);
        check_snf(&m);
        check_snf(&IMat::from_i64(&[vec![0, 0, 3], vec![0, 4, 0]]));
    }

    #[test]
    fn hnf_examples() {
        let h = hermite_normal_form(&IMat::from_i64(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(h.h, IMat::from_i64(&[vec![2, 0], vec![0, 3]]));
        let h = hermite_normal_form(&IMat::from_i64(&[vec![1, 2], vec![1, 2]]));
        assert_eq!(h.h, IMat::from_i64(&[vec![1, 2], vec![0, 0]]));
        assert_eq!(h.rank, 1);
        let m = IMat::from_i64(&[vec![2, 0], vec![3, 0]]);
        let h = hermite_normal_form(&m);
        assert_eq!(h.h, IMat::from_i64(&[vec![1, 0], vec![0, 0]]));
        assert_eq!(&h.t * &m, h.h);
        assert_eq!(h.t.det().abs(), BigInt::one());
    }

    #[test]
    fn kernel_is_saturated() {
        // x + 2y + 3z = 0
        let k = integer_kernel(&IMat::from_i64(&[vec![2, 4, 6]]));
        assert_eq!(k.rows(), 2);
        for i in 0..2 {
            let r = k.row(i);
            assert!((&r[0] + &r[1] * BigInt::from(2) + &r[2] * BigInt::from(3)).is_zero());
        }
        // saturated: the 2x3 basis has trivial SNF torsion
        let s = smith_normal_form(&k);
        assert!(s.diagonal().iter().all(|d| d.is_one()));
    }
}

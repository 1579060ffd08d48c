//! Isometry certification and a budgeted witness search.
//!
//! A witness is a unimodular `P` with `Pᵀ·G1·P = G2`; its columns are
//! vectors of the first lattice whose Gram matrix is `G2`.

use std::collections::HashMap;

use itertools::Itertools;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{genus_invariants, signature_of, Lattice};
use crate::error::{Error, Result};
use crate::exactmath::normal_form::{hermite_normal_form, integer_kernel};
use crate::exactmath::{IMat, Rational};

pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// Largest coordinate height tried when looking for isotropic vectors.
const MAX_ISOTROPIC_HEIGHT: i128 = 3;
/// Largest support of the sparse isotropic candidates.
const MAX_SPARSE_SUPPORT: usize = 3;
/// Dense isotropic enumeration is skipped above this rank.
const MAX_DENSE_RANK: usize = 8;
/// Hyperbolic splittings of the second lattice tried per level.
const SPLIT_ATTEMPTS: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsometryOutcome {
    Found(IMat),
    /// Certified by an invariant mismatch.
    NotIsometric(String),
    Unknown(String),
}

impl IsometryOutcome {
    pub fn witness(&self) -> Option<&IMat> {
        match self {
            IsometryOutcome::Found(p) => Some(p),
            _ => None,
        }
    }
}

/// True iff `Pᵀ·G1·P = G2` and `|det P| = 1`.
pub fn verify_isometry(g1: &IMat, g2: &IMat, p: &IMat) -> Result<bool> {
    let n = g1.rows();
    for (name, m) in [("G1", g1), ("G2", g2), ("P", p)] {
        if m.rows() != n || m.cols() != n {
            return Err(Error::Dimension(format!("{name} is {}x{}, expected {n}x{n}", m.rows(), m.cols())));
        }
    }
    Ok(p.det().abs().is_one() && g1.congruent(p)? == *g2)
}

/// Semi-decision procedure: `NotIsometric` only on an invariant mismatch,
/// `Unknown` when the node budget runs out or the strategies give up.
pub fn find_isometry(g1: &IMat, g2: &IMat, budget: u64) -> Result<IsometryOutcome> {
    let l1 = Lattice::new(g1.clone())?;
    let l2 = Lattice::new(g2.clone())?;
    if l1.det().is_zero() || l2.det().is_zero() {
        return Err(Error::Degenerate);
    }
    if l1.rank() != l2.rank() {
        return Ok(IsometryOutcome::NotIsometric(format!("rank {} vs {}", l1.rank(), l2.rank())));
    }
    if g1 == g2 {
        return Ok(IsometryOutcome::Found(IMat::identity(l1.rank())));
    }
    let f1 = genus_invariants(&l1)?;
    let f2 = genus_invariants(&l2)?;
    if let Some(why) = f1.difference(&f2) {
        return Ok(IsometryOutcome::NotIsometric(why));
    }
    let mut s = Search { left: budget };
    let out = match s.find(g1, g2) {
        Some(p) => {
            if verify_isometry(g1, g2, &p)? {
                IsometryOutcome::Found(p)
            } else {
                IsometryOutcome::Unknown("internal: candidate witness failed verification".into())
            }
        }
        None if s.left == 0 => IsometryOutcome::Unknown(format!("budget of {budget} nodes exhausted")),
        None => IsometryOutcome::Unknown("search strategies exhausted without a witness".into()),
    };
    Ok(out)
}

type M = Vec<Vec<i128>>;

fn to_small(m: &IMat) -> Option<M> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(|x| x.to_i128()).collect())
        .collect()
}

fn from_cols(cols: &[Vec<i128>], n: usize) -> IMat {
    let mut p = IMat::zeros(n, cols.len());
    for (j, c) in cols.iter().enumerate() {
        for i in 0..n {
            p[(i, j)] = BigInt::from(c[i]);
        }
    }
    p
}

fn mul_vec(g: &M, v: &[i128]) -> Vec<i128> {
    g.iter().map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

fn dot(a: &[i128], b: &[i128]) -> i128 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

struct Search {
    left: u64,
}

impl Search {
    fn tick(&mut self, n: u64) -> bool {
        if self.left < n {
            self.left = 0;
            false
        } else {
            self.left -= n;
            true
        }
    }

    fn find(&mut self, g1: &IMat, g2: &IMat) -> Option<IMat> {
        let n = g1.rows();
        if g1 == g2 {
            return Some(IMat::identity(n));
        }
        let c1 = g1.content();
        if c1 != g2.content() {
            return None;
        }
        if !c1.is_one() {
            let r1 = divide(g1, &c1);
            let r2 = divide(g2, &c1);
            return self.find(&r1, &r2);
        }
        let (a, b) = (to_small(g1)?, to_small(g2)?);
        let (r1, h1) = reduce(&a);
        let (r2, h2) = reduce(&b);
        let (h1, h2) = (small_to_imat(&h1), small_to_imat(&h2));
        let (r1, r2) = (small_to_imat(&r1), small_to_imat(&r2));
        let inner = if h1 == h2 { IMat::identity(n) } else { self.find_reduced(&h1, &h2)? };
        let r2inv = r2.unimodular_inverse()?;
        Some(&(&r1 * &inner) * &r2inv)
    }

    fn find_reduced(&mut self, g1: &IMat, g2: &IMat) -> Option<IMat> {
        let sig = signature_of(g1);
        if sig != signature_of(g2) {
            return None;
        }
        let (a, b) = (to_small(g1)?, to_small(g2)?);
        if sig.is_definite() {
            let neg = sig.positive == 0;
            let flip = |m: &M| -> M {
                if neg {
                    m.iter().map(|r| r.iter().map(|x| -x).collect()).collect()
                } else {
                    m.clone()
                }
            };
            return self.definite(&flip(&a), &flip(&b));
        }
        if is_even(&a) {
            if let Some(p) = self.split_and_recurse(g1, g2, &a, &b) {
                return Some(p);
            }
        }
        self.boxed(&a, &b)
    }

    /// `L1 = U ⊕ C1`, `L2 = U ⊕ C2`, then `C1 ≅ C2` recursively. The
    /// complements need not be isometric, so several splits of `L2` are tried.
    fn split_and_recurse(&mut self, g1: &IMat, g2: &IMat, a: &M, b: &M) -> Option<IMat> {
        let (q1, c1) = self.split_hyperbolic(g1, a, 0)?;
        for attempt in 0..SPLIT_ATTEMPTS {
            let (q2, c2) = self.split_hyperbolic(g2, b, attempt)?;
            if let Some(r) = self.find(&c1, &c2) {
                let mut mid = IMat::identity(g1.rows());
                for i in 0..r.rows() {
                    for j in 0..r.cols() {
                        mid[(i + 2, j + 2)] = r[(i, j)].clone();
                    }
                }
                let q2inv = q2.unimodular_inverse()?;
                return Some(&(&q1 * &mid) * &q2inv);
            }
            if self.left == 0 {
                return None;
            }
        }
        None
    }

    /// Basis change `Q` (columns `e, f, c₁, …`) with `Qᵀ·G·Q = U ⊕ G_C`.
    fn split_hyperbolic(&mut self, g: &IMat, a: &M, skip: usize) -> Option<(IMat, IMat)> {
        let n = a.len();
        let e = self.isotropic_unit(a, skip)?;
        let ge = mul_vec(a, &e);
        let mut f = unit_solution(&ge)?;
        let half = dot(&f, &mul_vec(a, &f)) / 2;
        for i in 0..n {
            f[i] -= half * e[i];
        }
        let gf = mul_vec(a, &f);
        debug_assert_eq!(dot(&f, &gf), 0);
        debug_assert_eq!(dot(&e, &gf), 1);
        let constraints = from_cols(&[ge, gf], n).transpose();
        let k = integer_kernel(&constraints);
        let mut q = IMat::zeros(n, n);
        for i in 0..n {
            q[(i, 0)] = BigInt::from(e[i]);
            q[(i, 1)] = BigInt::from(f[i]);
            for j in 0..k.rows() {
                q[(i, j + 2)] = k[(j, i)].clone();
            }
        }
        if k.rows() != n - 2 || !q.det().abs().is_one() {
            return None;
        }
        let gc = k.mul_checked(g).ok()?.mul_checked(&k.transpose()).ok()?;
        Some((q, gc))
    }

    /// Primitive `e` with `e² = 0` and `gcd(G·e) = 1`: sparse supports
    /// first, then dense vectors of small height. The first `skip` hits are passed over.
    fn isotropic_unit(&mut self, a: &M, skip: usize) -> Option<Vec<i128>> {
        let n = a.len();
        let mut skip = skip;
        let good = |x: &[i128]| {
            let gx = mul_vec(a, x);
            dot(x, &gx) == 0 && gx.iter().fold(0i128, |g, v| g.gcd(v)) == 1
        };
        for support in 1..=MAX_SPARSE_SUPPORT.min(n) {
            for idx in (0..n).combinations(support) {
                let mut coef = vec![1i128; support];
                loop {
                    if !self.tick(1) {
                        return None;
                    }
                    let mut x = vec![0i128; n];
                    for (k, &i) in idx.iter().enumerate() {
                        x[i] = coef[k];
                    }
                    if good(&x) {
                        if skip == 0 {
                            return Some(x);
                        }
                        skip -= 1;
                    }
                    if !next_coefficients(&mut coef, MAX_ISOTROPIC_HEIGHT) {
                        break;
                    }
                }
            }
        }
        if n > MAX_DENSE_RANK {
            return None;
        }
        for h in 1..=MAX_ISOTROPIC_HEIGHT {
            let mut x = vec![-h; n];
            loop {
                if !self.tick(1) {
                    return None;
                }
                let height = x.iter().map(|v| v.abs()).max().unwrap();
                let lead_pos = x.iter().find(|v| **v != 0).is_some_and(|v| *v > 0);
                if height == h && lead_pos {
                    let gx = mul_vec(a, &x);
                    if dot(&x, &gx) == 0 && gx.iter().fold(0i128, |g, v| g.gcd(v)) == 1 {
                        if skip == 0 {
                            return Some(x);
                        }
                        skip -= 1;
                    }
                }
                if !odometer(&mut x, h) {
                    break;
                }
            }
        }
        None
    }

    /// LLL-reduces both sides, splits them into orthogonal components when
    /// possible, then runs [`Self::definite_reduced`] per component pair.
    fn definite(&mut self, a: &M, b: &M) -> Option<IMat> {
        let (ra, la) = lll(a);
        let (rb, lb) = lll(b);
        let inner = if la == lb { IMat::identity(a.len()) } else { self.definite_split(&la, &lb)? };
        let rb_inv = small_to_imat(&rb).unimodular_inverse()?;
        Some(&(&small_to_imat(&ra) * &inner) * &rb_inv)
    }

    fn definite_split(&mut self, a: &M, b: &M) -> Option<IMat> {
        let (qa, pa) = self.components(a)?;
        let (qb, pb) = self.components(b)?;
        if pa.len() == 1 && pb.len() == 1 {
            return self.definite_reduced(a, b);
        }
        if pa.len() != pb.len() {
            return None;
        }
        let key = |c: &Component| (c.gram.len(), small_to_imat(&c.gram).det(), c.indecomposables);
        let mut used = vec![false; pa.len()];
        let mut blocks: Vec<Option<(usize, IMat)>> = vec![None; pb.len()];
        if !self.match_components(&pa, &pb, 0, &mut used, &mut blocks, &key) {
            return None;
        }
        let n = a.len();
        let offsets = |parts: &[Component]| -> Vec<usize> {
            parts.iter().scan(0, |acc, c| {
                let o = *acc;
                *acc += c.gram.len();
                Some(o)
            }).collect()
        };
        let (oa, ob) = (offsets(&pa), offsets(&pb));
        let mut x = IMat::zeros(n, n);
        for (j, blk) in blocks.iter().enumerate() {
            let (i, p) = blk.as_ref()?;
            for r in 0..p.rows() {
                for c in 0..p.cols() {
                    x[(oa[*i] + r, ob[j] + c)] = p[(r, c)].clone();
                }
            }
        }
        Some(&(&qa * &x) * &qb.unimodular_inverse()?)
    }

    fn match_components<K: PartialEq>(
        &mut self,
        pa: &[Component],
        pb: &[Component],
        j: usize,
        used: &mut [bool],
        blocks: &mut [Option<(usize, IMat)>],
        key: &impl Fn(&Component) -> K,
    ) -> bool {
        if j == pb.len() {
            return true;
        }
        for i in 0..pa.len() {
            if used[i] || key(&pa[i]) != key(&pb[j]) {
                continue;
            }
            let p = if pa[i].gram == pb[j].gram {
                Some(IMat::identity(pa[i].gram.len()))
            } else {
                self.definite_reduced(&pa[i].gram, &pb[j].gram)
            };
            if let Some(p) = p {
                used[i] = true;
                blocks[j] = Some((i, p));
                if self.match_components(pa, pb, j + 1, used, blocks, key) {
                    return true;
                }
                used[i] = false;
            }
            if self.left == 0 {
                return false;
            }
        }
        false
    }

    /// Orthogonal decomposition of a positive definite lattice from the
    /// non-orthogonality graph of its short indecomposable vectors.
    /// Returns `Q` with `QᵀGQ` block diagonal and the blocks, LLL-reduced.
    fn components(&mut self, a: &M) -> Option<(IMat, Vec<Component>)> {
        let n = a.len();
        let whole = || (IMat::identity(n), vec![Component { gram: a.clone(), indecomposables: 0 }]);
        let max_norm = (0..n).map(|i| a[i][i]).max().unwrap_or(0);
        let mut vs = Ldl::new(a).vectors_up_to(max_norm, self)?;
        if vs.len() > MAX_DECOMPOSITION_VECTORS {
            return Some(whole());
        }
        vs.retain(|v| v.iter().find(|x| **x != 0).is_some_and(|x| *x > 0));
        let imgs: Vec<Vec<i128>> = vs.iter().map(|v| mul_vec(a, v)).collect();
        let norms: Vec<i128> = vs.iter().zip(&imgs).map(|(v, g)| dot(v, g)).collect();
        self.tick((vs.len() * vs.len() / ASSIGN_WORK_PER_TICK as usize) as u64 + 1).then_some(())?;
        // v = x + y with x ⟂ y iff some shorter x has x·v = x·x (up to sign).
        let indec: Vec<usize> = (0..vs.len())
            .filter(|&k| {
                !(0..vs.len()).any(|l| norms[l] < norms[k] && dot(&vs[l], &imgs[k]).abs() == norms[l])
            })
            .collect();
        let mut parent: Vec<usize> = (0..indec.len()).collect();
        fn root(p: &mut [usize], mut i: usize) -> usize {
            while p[i] != i {
                p[i] = p[p[i]];
                i = p[i];
            }
            i
        }
        for x in 0..indec.len() {
            for y in x + 1..indec.len() {
                if dot(&vs[indec[x]], &imgs[indec[y]]) != 0 {
                    let (rx, ry) = (root(&mut parent, x), root(&mut parent, y));
                    parent[rx] = ry;
                }
            }
        }
        let roots: Vec<usize> = (0..indec.len()).map(|x| root(&mut parent, x)).collect();
        let groups = (0..indec.len()).into_group_map_by(|&x| roots[x]);
        if groups.len() < 2 {
            return Some(whole());
        }
        let mut cols: Vec<Vec<i128>> = Vec::with_capacity(n);
        let mut parts = Vec::new();
        for members in groups.values().sorted_by_key(|m| m[0]) {
            let rows: Vec<Vec<BigInt>> =
                members.iter().map(|&x| vs[indec[x]].iter().map(|c| BigInt::from(*c)).collect()).collect();
            let basis = hermite_normal_form(&IMat::from_rows(rows).ok()?).nonzero_rows();
            let start = cols.len();
            for r in 0..basis.rows() {
                cols.push(basis.row(r).iter().map(|c| c.to_i128()).collect::<Option<Vec<_>>>()?);
            }
            let gram: M = (start..cols.len())
                .map(|i| (start..cols.len()).map(|j| dot(&cols[i], &mul_vec(a, &cols[j]))).collect())
                .collect();
            let (r, reduced) = lll(&gram);
            for (k, col) in mul_small(&transpose_small(&cols[start..].to_vec()), &r).into_iter().enumerate() {
                cols[start + k] = col;
            }
            parts.push(Component { gram: reduced, indecomposables: members.len() });
        }
        if cols.len() != n {
            return Some(whole());
        }
        let q = from_cols(&cols, n);
        if !q.det().abs().is_one() {
            return Some(whole());
        }
        Some((q, parts))
    }

    /// Complete short-vector backtracking for positive definite Gram matrices.
    /// Candidates are enumerated against the side with the shorter basis.
    fn definite_reduced(&mut self, a: &M, b: &M) -> Option<IMat> {
        let trace = |m: &M| (0..m.len()).map(|i| m[i][i]).sum::<i128>();
        if trace(b) > trace(a) {
            return self.definite_core(b, a)?.unimodular_inverse();
        }
        self.definite_core(a, b)
    }

    fn definite_core(&mut self, a: &M, b: &M) -> Option<IMat> {
        let n = a.len();
        let ldl = Ldl::new(a);
        let mut cache: HashMap<i128, Vec<Vec<i128>>> = HashMap::new();
        let mut cands = Vec::with_capacity(n);
        for i in 0..n {
            let norm = b[i][i];
            if let std::collections::hash_map::Entry::Vacant(e) = cache.entry(norm) {
                let vs = ldl.vectors_of_norm(norm, self)?;
                e.insert(vs);
            }
            cands.push(cache[&norm].clone());
        }
        self.assign(a, b, &cands)
    }

    /// Bounded-box fallback with growing box size.
    fn boxed(&mut self, a: &M, b: &M) -> Option<IMat> {
        let n = a.len();
        for bound in 1..=4i128 {
            let mut cands: Vec<Vec<Vec<i128>>> = vec![Vec::new(); n];
            let mut x = vec![-bound; n];
            loop {
                if !self.tick(1) {
                    return None;
                }
                let gx = mul_vec(a, &x);
                let q = dot(&x, &gx);
                for i in 0..n {
                    if b[i][i] == q && x.iter().any(|v| *v != 0) {
                        cands[i].push(x.clone());
                    }
                }
                if !odometer(&mut x, bound) {
                    break;
                }
            }
            if let Some(p) = self.assign(a, b, &cands) {
                return Some(p);
            }
            if self.left == 0 {
                return None;
            }
        }
        None
    }

    /// Depth-first choice of columns matching all prescribed inner products.
    /// After each placement the open columns are filtered against it and the
    /// column with the fewest remaining candidates is filled next.
    fn assign(&mut self, a: &M, b: &M, cands: &[Vec<Vec<i128>>]) -> Option<IMat> {
        let n = a.len();
        let open: Vec<(usize, Vec<Cand>)> = cands
            .iter()
            .enumerate()
            .map(|(i, vs)| (i, vs.iter().map(|v| Cand { gv: mul_vec(a, v), v: v.clone() }).collect()))
            .collect();
        let mut chosen: Vec<Option<Vec<i128>>> = vec![None; n];
        if self.place(b, open, &mut chosen) {
            let cols: Vec<Vec<i128>> = chosen.into_iter().map(Option::unwrap).collect();
            Some(from_cols(&cols, n))
        } else {
            None
        }
    }

    fn place(&mut self, b: &M, mut open: Vec<(usize, Vec<Cand>)>, chosen: &mut Vec<Option<Vec<i128>>>) -> bool {
        if open.is_empty() {
            let cols: Vec<Vec<i128>> = chosen.iter().map(|c| c.clone().unwrap()).collect();
            return from_cols(&cols, cols.len()).det().abs().is_one();
        }
        let pick = (0..open.len()).min_by_key(|&k| open[k].1.len()).unwrap();
        let (col, list) = open.swap_remove(pick);
        for c in &list {
            let work = open.iter().map(|(_, l)| l.len() as u64).sum::<u64>();
            if !self.tick(1 + work / ASSIGN_WORK_PER_TICK) {
                return false;
            }
            let mut next = Vec::with_capacity(open.len());
            let mut dead = false;
            for (j, l) in &open {
                let kept: Vec<Cand> = l.iter().filter(|u| dot(&u.v, &c.gv) == b[col][*j]).cloned().collect();
                if kept.is_empty() {
                    dead = true;
                    break;
                }
                next.push((*j, kept));
            }
            if dead {
                continue;
            }
            chosen[col] = Some(c.v.clone());
            if self.place(b, next, chosen) {
                return true;
            }
            if self.left == 0 {
                return false;
            }
        }
        chosen[col] = None;
        false
    }
}

/// Orthogonal summand: LLL-reduced Gram matrix and its count of short
/// indecomposable vectors up to sign.
struct Component {
    gram: M,
    indecomposables: usize,
}

/// Decomposition is skipped when more short vectors than this exist.
const MAX_DECOMPOSITION_VECTORS: usize = 20_000;

/// Columns of `m` (given as rows of `cols`) times `r`, returned as columns.
fn mul_small(m: &M, r: &M) -> Vec<Vec<i128>> {
    let (rows, k) = (m.len(), r.len());
    (0..k).map(|j| (0..rows).map(|i| (0..k).map(|l| m[i][l] * r[l][j]).sum()).collect()).collect()
}

fn transpose_small(cols: &M) -> M {
    let n = cols.first().map_or(0, Vec::len);
    (0..n).map(|i| cols.iter().map(|c| c[i]).collect()).collect()
}

/// Candidate column `v` with its image `G·v`.
#[derive(Clone)]
struct Cand {
    v: Vec<i128>,
    gv: Vec<i128>,
}

/// Filtering this many candidates costs one budget node.
const ASSIGN_WORK_PER_TICK: u64 = 64;

fn small_to_imat(m: &M) -> IMat {
    let n = m.len();
    let mut out = IMat::zeros(n, m.first().map_or(0, Vec::len));
    for (i, row) in m.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            out[(i, j)] = BigInt::from(*x);
        }
    }
    out
}

/// Maximum number of improving sweeps in [`reduce`].
const REDUCE_SWEEPS: usize = 500;

/// Greedy basis reduction: apply `bᵢ ← bᵢ ± bⱼ` while `Σ|gₖₗ|` decreases.
/// Returns `(R, RᵀGR)` with `R` unimodular.
fn reduce(g: &M) -> (M, M) {
    let n = g.len();
    let mut g = g.clone();
    let mut r: M = (0..n).map(|i| (0..n).map(|j| (i == j) as i128).collect()).collect();
    for _ in 0..REDUCE_SWEEPS {
        let mut improved = false;
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                for s in [1i128, -1] {
                    // row/column i change; the diagonal entry counts once
                    let new_ii = g[i][i] + 2 * s * g[i][j] + g[j][j];
                    let mut delta = new_ii.abs() - g[i][i].abs();
                    for k in 0..n {
                        if k != i {
                            let nk = g[i][k] + s * g[j][k];
                            delta += 2 * (nk.abs() - g[i][k].abs());
                        }
                    }
                    if delta < 0 {
                        for k in 0..n {
                            if k != i {
                                let nk = g[i][k] + s * g[j][k];
                                g[i][k] = nk;
                                g[k][i] = nk;
                            }
                        }
                        g[i][i] = new_ii;
                        for row in r.iter_mut() {
                            row[i] += s * row[j];
                        }
                        improved = true;
                    }
                }
            }
        }
        if !improved {
            break;
        }
    }
    (r, g)
}

/// Lovász constant `δ = 99/100` as numerator and denominator.
const LLL_DELTA: (i64, i64) = (99, 100);

/// Integral LLL reduction of a positive definite Gram matrix: `(R, RᵀGR)`.
/// Gram–Schmidt data is kept as the integers `dᵢ` (leading minors) and
/// `λₖⱼ = dⱼ·μₖⱼ`, so no rounding error can occur.
fn lll(g: &M) -> (M, M) {
    let n = g.len();
    let orig = g.clone();
    let mut h = identity_small(n);
    let mut g = g.clone();
    if n < 2 {
        return (h, g);
    }
    let big = |x: i128| BigInt::from(x);
    // 1-based d: d[0] = 1, d[i] = det of the leading i×i minor.
    let mut d = vec![BigInt::zero(); n + 1];
    let mut lam = vec![vec![BigInt::zero(); n]; n];
    d[0] = BigInt::one();
    d[1] = big(g[0][0]);
    let (p, q) = (BigInt::from(LLL_DELTA.0), BigInt::from(LLL_DELTA.1));
    let mut k = 1;
    let mut kmax = 0;
    while k < n {
        if k > kmax {
            kmax = k;
            for j in 0..=k {
                let mut u = big(g[k][j]);
                for i in 0..j {
                    u = (&d[i + 1] * &u - &lam[k][i] * &lam[j][i]) / &d[i];
                }
                if j < k {
                    lam[k][j] = u;
                } else {
                    d[k + 1] = u;
                }
            }
            if !d[k + 1].is_positive() {
                return (identity_small(n), orig);
            }
        }
        loop {
            size_reduce(k, k - 1, &mut g, &mut h, &d, &mut lam);
            let lhs = &q * &d[k + 1] * &d[k - 1];
            let rhs = &p * &d[k] * &d[k] - &q * &lam[k][k - 1] * &lam[k][k - 1];
            if lhs >= rhs {
                break;
            }
            swap_basis(k, kmax, &mut g, &mut h, &mut d, &mut lam);
            k = (k - 1).max(1);
        }
        for l in (0..k.saturating_sub(1)).rev() {
            size_reduce(k, l, &mut g, &mut h, &d, &mut lam);
        }
        k += 1;
    }
    (h, g)
}

fn identity_small(n: usize) -> M {
    (0..n).map(|i| (0..n).map(|j| i128::from(i == j)).collect()).collect()
}

/// `b_k ← b_k − round(μₖₗ)·b_l`.
fn size_reduce(k: usize, l: usize, g: &mut M, h: &mut M, d: &[BigInt], lam: &mut [Vec<BigInt>]) {
    let dl = &d[l + 1];
    let two_lam: BigInt = &lam[k][l] * 2;
    if two_lam.abs() <= *dl {
        return;
    }
    let r = (two_lam + dl).div_floor(&(dl * 2));
    let qi = r.to_i128().expect("bounded");
    let n = g.len();
    for row in h.iter_mut() {
        row[k] -= qi * row[l];
    }
    for row in g.iter_mut() {
        row[k] -= qi * row[l];
    }
    for i in 0..n {
        g[k][i] -= qi * g[l][i];
    }
    lam[k][l] -= &r * dl;
    for i in 0..l {
        let t = &r * &lam[l][i];
        lam[k][i] -= t;
    }
}

fn swap_basis(k: usize, kmax: usize, g: &mut M, h: &mut M, d: &mut [BigInt], lam: &mut [Vec<BigInt>]) {
    for row in h.iter_mut() {
        row.swap(k, k - 1);
    }
    g.swap(k, k - 1);
    for row in g.iter_mut() {
        row.swap(k, k - 1);
    }
    for j in 0..k - 1 {
        let t = lam[k][j].clone();
        lam[k][j] = std::mem::replace(&mut lam[k - 1][j], t);
    }
    let l = lam[k][k - 1].clone();
    let b = (&d[k - 1] * &d[k + 1] + &l * &l) / &d[k];
    for i in k + 1..=kmax {
        let t = lam[i][k].clone();
        lam[i][k] = (&d[k + 1] * &lam[i][k - 1] - &l * &t) / &d[k];
        lam[i][k - 1] = (&b * &t + &l * &lam[i][k]) / &d[k + 1];
    }
    d[k] = b;
}

fn divide(g: &IMat, c: &BigInt) -> IMat {
    let mut out = g.clone();
    for i in 0..g.rows() {
        for j in 0..g.cols() {
            out[(i, j)] = &g[(i, j)] / c;
        }
    }
    out
}

fn is_even(a: &M) -> bool {
    (0..a.len()).all(|i| a[i][i] % 2 == 0)
}

/// Next nonzero coefficient vector in `[-h, h] ∖ {0}` with a positive first entry.
fn next_coefficients(c: &mut [i128], h: i128) -> bool {
    for (k, v) in c.iter_mut().enumerate().rev() {
        let lo = if k == 0 { 1 } else { -h };
        let mut next = *v + 1;
        if next == 0 {
            next = 1;
        }
        if next <= h {
            *v = next;
            return true;
        }
        *v = lo;
        if k == 0 {
            return false;
        }
    }
    false
}

/// Advance through `[-h, h]ⁿ`; false after the last vector.
fn odometer(x: &mut [i128], h: i128) -> bool {
    for v in x.iter_mut() {
        if *v < h {
            *v += 1;
            return true;
        }
        *v = -h;
    }
    false
}

/// Some `f` with `f·w = 1` when `gcd(w) = 1`.
fn unit_solution(w: &[i128]) -> Option<Vec<i128>> {
    let mut g = 0i128;
    let mut f = vec![0i128; w.len()];
    for (i, &wi) in w.iter().enumerate() {
        let e = g.extended_gcd(&wi);
        for c in f.iter_mut() {
            *c *= e.x;
        }
        f[i] = e.y;
        g = e.gcd;
    }
    match g {
        1 => Some(f),
        -1 => Some(f.into_iter().map(|c| -c).collect()),
        _ => None,
    }
}

/// `xᵀGx = Σ dᵢ (xᵢ + Σ_{j>i} mᵢⱼ xⱼ)²` over ℚ.
struct Ldl {
    d: Vec<Rational>,
    m: Vec<Vec<Rational>>,
}

impl Ldl {
    fn new(a: &M) -> Self {
        let n = a.len();
        let mut d = vec![Rational::zero(); n];
        let mut m = vec![vec![Rational::zero(); n]; n];
        for i in 0..n {
            for j in i..n {
                let mut t = Rational::from_integer(BigInt::from(a[i][j]));
                for k in 0..i {
                    t -= &m[k][i] * &d[k] * &m[k][j];
                }
                if j == i {
                    d[i] = t;
                    m[i][i] = Rational::one();
                } else {
                    m[i][j] = t / &d[i];
                }
            }
        }
        Ldl { d, m }
    }

    /// All `x` with `xᵀGx = norm`; `None` if the budget runs out.
    fn vectors_of_norm(&self, norm: i128, s: &mut Search) -> Option<Vec<Vec<i128>>> {
        let n = self.d.len();
        let mut out = Vec::new();
        let mut x = vec![0i128; n];
        let target = Rational::from_integer(BigInt::from(norm));
        if !self.descend(n, &mut x, target, true, s, &mut out) {
            return None;
        }
        Some(out)
    }

    /// All nonzero `x` with `xᵀGx ≤ norm`.
    fn vectors_up_to(&self, norm: i128, s: &mut Search) -> Option<Vec<Vec<i128>>> {
        let n = self.d.len();
        let mut out = Vec::new();
        let mut x = vec![0i128; n];
        let target = Rational::from_integer(BigInt::from(norm));
        if !self.descend(n, &mut x, target, false, s, &mut out) {
            return None;
        }
        Some(out)
    }

    fn descend(
        &self,
        level: usize,
        x: &mut Vec<i128>,
        rem: Rational,
        exact: bool,
        s: &mut Search,
        out: &mut Vec<Vec<i128>>,
    ) -> bool {
        if level == 0 {
            if (!exact || rem.is_zero()) && x.iter().any(|v| *v != 0) {
                out.push(x.clone());
            }
            return true;
        }
        let i = level - 1;
        let n = x.len();
        let mut c = Rational::zero();
        for j in i + 1..n {
            c -= &self.m[i][j] * Rational::from_integer(BigInt::from(x[j]));
        }
        let r = (&rem / &self.d[i]).floor().to_integer();
        let sq = r.sqrt().to_i128().expect("bounded");
        let lo = c.floor().to_integer().to_i128().expect("bounded") - sq - 1;
        let hi = c.ceil().to_integer().to_i128().expect("bounded") + sq + 1;
        for v in lo..=hi {
            let diff = Rational::from_integer(BigInt::from(v)) - &c;
            let used = &self.d[i] * &diff * &diff;
            if used > rem {
                continue;
            }
            if !s.tick(1) {
                return false;
            }
            x[i] = v;
            if !self.descend(i, x, &rem - used, exact, s, out) {
                return false;
            }
        }
        x[i] = 0;
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{direct_sum, make_named};

    fn m(rows: &[Vec<i64>]) -> IMat {
        IMat::from_i64(rows)
    }

    #[test]
    fn identity_fast_path() {
        let g = m(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(find_isometry(&g, &g, 10).unwrap(), IsometryOutcome::Found(IMat::identity(2)));
    }

    #[test]
    fn definite_witness() {
        let g1 = m(&[vec![-2, -2, 1], vec![-2, -4, 1], vec![1, 1, -2]]);
        let g2 = m(&[vec![-2, 1, 0], vec![1, -2, 0], vec![0, 0, -2]]);
        let p = find_isometry(&g1, &g2, DEFAULT_BUDGET).unwrap();
        let p = p.witness().expect("witness").clone();
        assert!(verify_isometry(&g1, &g2, &p).unwrap());
    }

    #[test]
    fn determinant_mismatch() {
        let out = find_isometry(&m(&[vec![-2]]), &m(&[vec![-4]]), DEFAULT_BUDGET).unwrap();
        assert!(matches!(out, IsometryOutcome::NotIsometric(_)));
    }

    #[test]
    fn parity_mismatch() {
        let u = m(&[vec![0, 1], vec![1, 0]]);
        let odd = m(&[vec![-1, 0], vec![0, 1]]);
        assert!(matches!(find_isometry(&u, &odd, DEFAULT_BUDGET).unwrap(), IsometryOutcome::NotIsometric(_)));
        assert!(!verify_isometry(&u, &odd, &IMat::identity(2)).unwrap());
    }

    #[test]
    fn u2_block_completion() {
        let g1 = m(&[vec![0, 2], vec![2, -4]]);
        let g2 = m(&[vec![0, 2], vec![2, 0]]);
        let p = m(&[vec![1, 1], vec![0, 1]]);
        assert!(verify_isometry(&g1, &g2, &p).unwrap());
        assert!(find_isometry(&g1, &g2, DEFAULT_BUDGET).unwrap().witness().is_some());
    }

    #[test]
    fn indefinite_split() {
        let u = make_named("U", 1).unwrap();
        let a2 = make_named("A2", -1).unwrap();
        let a1 = make_named("A1", -1).unwrap();
        let l = direct_sum(&[&u, &u, &a2, &a1]);
        // scramble by a unimodular change of basis
        let mut p = IMat::identity(7);
        for (i, j, k) in [(0, 3, 2), (4, 1, -1), (6, 2, 3), (2, 5, 1), (1, 6, -2)] {
            p.add_col_multiple(j, i, &BigInt::from(k));
        }
        let g2 = l.gram().congruent(&p).unwrap();
        let out = find_isometry(l.gram(), &g2, DEFAULT_BUDGET).unwrap();
        let w = out.witness().expect("witness");
        assert!(verify_isometry(l.gram(), &g2, w).unwrap());
    }

    #[test]
    fn e8_roots() {
        let e8 = make_named("E8", 1).unwrap();
        let a = to_small(e8.gram()).unwrap();
        let mut s = Search { left: DEFAULT_BUDGET };
        assert_eq!(Ldl::new(&a).vectors_of_norm(2, &mut s).unwrap().len(), 240);
    }

    fn scramble(g: &IMat, moves: &[(usize, usize, i64)]) -> IMat {
        let mut p = IMat::identity(g.rows());
        for &(i, j, k) in moves {
            p.add_col_multiple(j, i, &BigInt::from(k));
        }
        g.congruent(&p).unwrap()
    }

    #[test]
    fn lll_is_a_congruence() {
        let e7 = make_named("E7", 1).unwrap();
        let g = scramble(e7.gram(), &[(0, 3, 2), (4, 1, -3), (6, 2, 3), (2, 5, 1), (1, 6, -2), (3, 4, 4)]);
        let a = to_small(&g).unwrap();
        let (r, red) = lll(&a);
        let r = small_to_imat(&r);
        assert!(r.det().abs().is_one());
        assert_eq!(g.congruent(&r).unwrap(), small_to_imat(&red));
        assert!((0..7).all(|i| red[i][i] == 2));
    }

    #[test]
    fn orthogonal_components() {
        let e7 = make_named("E7", 1).unwrap();
        let e6 = make_named("E6", 1).unwrap();
        let l = direct_sum(&[&e7, &e6]);
        let g = scramble(l.gram(), &[(0, 9, 1), (12, 3, -1), (5, 10, 2), (8, 1, 1), (2, 11, -1)]);
        let mut s = Search { left: DEFAULT_BUDGET };
        let (q, parts) = s.components(&lll(&to_small(&g).unwrap()).1).unwrap();
        assert!(q.det().abs().is_one());
        let mut sizes: Vec<_> = parts.iter().map(|c| (c.gram.len(), c.indecomposables)).collect();
        sizes.sort();
        assert_eq!(sizes, vec![(6, 36), (7, 63)]);
        let out = find_isometry(l.gram(), &g, DEFAULT_BUDGET).unwrap();
        assert!(verify_isometry(l.gram(), &g, out.witness().expect("witness")).unwrap());
    }

    #[test]
    fn split_retries_other_complements() {
        let u = make_named("U", 1).unwrap();
        let e8 = make_named("E8", -1).unwrap();
        let l = direct_sum(&[&u, &e8, &e8]);
        let g = scramble(l.gram(), &[(0, 5, 1), (1, 12, -1), (2, 0, 1), (9, 14, 2), (17, 3, -1), (6, 1, 1)]);
        let out = find_isometry(l.gram(), &g, DEFAULT_BUDGET).unwrap();
        assert!(verify_isometry(l.gram(), &g, out.witness().expect("witness")).unwrap());
    }
}

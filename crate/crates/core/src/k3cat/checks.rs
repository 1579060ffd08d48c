//! Verification routines over the catalog and the K3 coordinates.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::basis::{self, e, f, nu, p, q, AmbientVector, K3Basis, K3_RANK};
use super::catalog::Catalog;
use super::labeling::TRANSCENDENTAL_GRAM;
use crate::error::Result;
use crate::exactmath::rational::rat;
use crate::exactmath::{IMat, QMat, Rational};
use crate::lattice::{
    class_order, disc_group, find_isometry, genus_invariants, intersect_with_subspace, verify_disc_generators,
    verify_isometry, IsometryOutcome, Lattice, SpanInAmbient, DEFAULT_BUDGET,
};
use crate::report::CheckReport;

fn unit(i: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); K3_RANK];
    v[i] = BigInt::from(1);
    v
}

fn int_vec(v: &AmbientVector) -> Vec<BigInt> {
    v.to_integer().expect("integral vector")
}

fn compact(m: &IMat) -> String {
    serde_json::to_string(m).expect("serializable")
}

/// Search for a witness and record it; the witness is re-verified.
fn assert_isometric(r: &mut CheckReport, name: &str, g1: &IMat, g2: &IMat) -> Option<IMat> {
    match find_isometry(g1, g2, DEFAULT_BUDGET) {
        Ok(IsometryOutcome::Found(w)) => {
            let ok = verify_isometry(g1, g2, &w).unwrap_or(false);
            r.assert(name, ok, format!("witness P = {}", compact(&w)));
            ok.then_some(w)
        }
        Ok(IsometryOutcome::NotIsometric(why)) => {
            r.assert(name, false, format!("not isometric: {why}"));
            None
        }
        Ok(IsometryOutcome::Unknown(why)) => {
            r.assert(name, false, format!("no witness: {why}"));
            None
        }
        Err(e) => {
            r.assert(name, false, e.to_string());
            None
        }
    }
}

fn eq_report<T: PartialEq + std::fmt::Debug>(r: &mut CheckReport, name: &str, got: T, want: T) -> bool {
    let detail = format!("got {got:?}, expected {want:?}");
    r.assert(name, got == want, detail)
}

/// `U ⊕ E7(−1) ⊕ E6(−1)`: `{e₁, f₁}`, the `p`-diagram without node 7, the
/// `q`-diagram without nodes 6 and 7.
pub fn embed_m0(b: &K3Basis) -> SpanInAmbient {
    let mut vs = vec![unit(e(1)), unit(f(1))];
    vs.extend([1, 2, 3, 4, 5, 6, 8].iter().map(|&j| unit(p(j))));
    vs.extend([1, 2, 3, 4, 5, 8].iter().map(|&j| unit(q(j))));
    SpanInAmbient::new(b.lattice(), vs).expect("independent unit vectors")
}

/// Explicit copies of `A0, A1, A2, A3, A1'` inside the K3 lattice.
pub fn embed_a_j(b: &K3Basis, name: &str) -> Result<SpanInAmbient> {
    let ints = |v: AmbientVector| int_vec(&v);
    let plane2 = vec![unit(e(2)), unit(f(2))];
    let mut vs = plane2.clone();
    let planes = [unit(e(3)), unit(f(3))];
    match super::catalog::canonical_name(name)? {
        "A0" => vs.extend(planes.iter().cloned().chain([unit(p(1)), unit(p(2)), unit(q(1))])),
        "A1" => vs.extend(planes.iter().cloned().chain([unit(p(1)), unit(p(2))])),
        "A2" => vs.extend(planes.iter().cloned().chain([unit(p(1))])),
        "A1'" => vs.extend(planes.iter().cloned().chain([unit(p(1)), unit(q(1))])),
        "A3" => {
            vs.push(ints(basis::combo(&[(1, e(3)), (1, f(3))])));
            vs.push(ints(basis::combo(&[(1, f(3)), (1, p(1))])));
        }
        other => return Err(crate::error::Error::UnknownName(other.to_string())),
    }
    SpanInAmbient::new(b.lattice(), vs)
}

/// Signature and determinant of every catalog entry.
const PINNED: [(&str, [usize; 3], i64); 16] = [
    ("A0", [2, 5, 0], -6),
    ("A1", [2, 4, 0], 3),
    ("A2", [2, 3, 0], -2),
    ("A3", [2, 2, 0], 5),
    ("A1'", [2, 4, 0], 4),
    ("M0", [1, 14, 0], 6),
    ("M1", [1, 15, 0], -3),
    ("M2", [1, 16, 0], 2),
    ("M3", [1, 17, 0], -5),
    ("B0", [2, 5, 0], -192),
    ("B1", [2, 4, 0], 192),
    ("B1'", [2, 4, 0], 64),
    ("B2", [2, 3, 0], -64),
    ("B3", [2, 2, 0], 80),
    ("LK3", [3, 19, 0], -1),
    ("M", [1, 14, 0], 6),
];

/// Signatures, parity, determinants and the `A_j` / `M_j` complement pairing.
pub fn catalog_check(cat: &Catalog, b: &K3Basis) -> Result<CheckReport> {
    let mut r = CheckReport::new();
    for (j, name) in ["A0", "A1", "A2", "A3"].iter().enumerate() {
        let l = cat.get(name)?;
        eq_report(&mut r, &format!("signature {name}"), l.signature().as_array(), [2, 5 - j, 0]);
    }
    for (j, name) in ["M0", "M1", "M2", "M3"].iter().enumerate() {
        let l = cat.get(name)?;
        eq_report(&mut r, &format!("signature {name}"), l.signature().as_array(), [1, 14 + j, 0]);
    }
    for (name, sig, det) in PINNED {
        let l = cat.get(name)?;
        eq_report(&mut r, &format!("{name} signature and det"), (l.signature().as_array(), l.det()), (sig, BigInt::from(det)));
    }
    eq_report(&mut r, "|det A0|", cat.get("A0")?.det().abs(), BigInt::from(6));
    let lk3 = cat.get("LK3")?;
    eq_report(&mut r, "LK3 |det|", lk3.det().abs(), BigInt::from(1));
    eq_report(&mut r, "LK3 signature", lk3.signature().as_array(), [3, 19, 0]);
    eq_report(&mut r, "LK3 matches labeled coordinates", lk3.gram(), b.lattice().gram());
    for name in cat.names() {
        let l = cat.get(name)?;
        r.assert(format!("{name} even"), l.is_even(), format!("Gram diagonal of {name}"));
        match disc_group(l) {
            Ok(dg) => eq_report(&mut r, &format!("{name} |det| = group order"), dg.order(), l.det().abs()),
            Err(e) => r.assert(format!("{name} nondegenerate"), false, e.to_string()),
        };
    }
    eq_report(&mut r, "|M0^/M0|", disc_group(cat.get("M0")?)?.order(), BigInt::from(6));
    for (a, m) in [("A0", "M0"), ("A1", "M1"), ("A2", "M2"), ("A3", "M3"), ("A1'", "M0")] {
        let span = embed_a_j(b, a)?;
        eq_report(&mut r, &format!("embedded {a} Gram"), &span.gram(), cat.get(a)?.gram());
        r.assert(format!("embedded {a} primitive"), span.is_primitive(), "Smith factors of the coordinate matrix");
        if a == "A1'" {
            // rank 6 with |det| 4: the complement is not one of the M_j
            let c = span.orth_complement();
            eq_report(&mut r, "A1' complement |det|", c.lattice().det().abs(), BigInt::from(4));
            continue;
        }
        let c = span.orth_complement().lattice();
        let fc = genus_invariants(&c)?;
        let fm = genus_invariants(cat.get(m)?)?;
        let detail = fc.difference(&fm).unwrap_or_else(|| "fingerprints agree".into());
        r.assert(format!("complement of {a} has the fingerprint of {m}"), fc == fm, detail);
    }
    Ok(r)
}

/// Outcome of the `M₀` embedding and its orthogonal complement.
#[derive(Clone, Debug)]
pub struct ComplementCheck {
    pub report: CheckReport,
    pub complement_gram: IMat,
    pub witness: Option<IMat>,
}

pub fn complement_check(cat: &Catalog, b: &K3Basis) -> Result<ComplementCheck> {
    let mut r = CheckReport::new();
    let m0 = embed_m0(b);
    let g = m0.gram();
    assert_isometric(&mut r, "embedded M0 ≅ catalog M", &g, cat.get("M")?.gram());
    r.assert("M0 primitive", m0.is_primitive(), "Smith factors of the 15x22 coordinate matrix");
    let comp = m0.orth_complement();
    let cg = comp.gram();
    eq_report(&mut r, "complement rank", comp.rank(), 7);
    eq_report(&mut r, "|det M0|", g.det().abs(), BigInt::from(6));
    eq_report(&mut r, "|det complement|", cg.det().abs(), BigInt::from(6));
    let witness = assert_isometric(&mut r, "complement ≅ A0", &cg, cat.get("A0")?.gram());
    Ok(ComplementCheck { report: r, complement_gram: cg, witness })
}

/// Generators `y₁ = α₁/3 + 2α₂/3`, `y₂ = 2α₁/3 + α₂/3`, `y₃ = α₃/2` of the
/// discriminant group of `A0` in the basis `(e₁, f₁, e₂, f₂, α₁, α₂, α₃)`.
pub fn disc_generators() -> [Vec<Rational>; 3] {
    let z = || rat(0, 1);
    let mk = |a: Rational, b: Rational, c: Rational| vec![z(), z(), z(), z(), a, b, c];
    [
        mk(rat(1, 3), rat(2, 3), z()),
        mk(rat(2, 3), rat(1, 3), z()),
        mk(z(), z(), rat(1, 2)),
    ]
}

pub fn disc_generators_check(cat: &Catalog) -> Result<CheckReport> {
    let mut r = CheckReport::new();
    let a = cat.get("A0")?;
    let [y1, y2, y3] = disc_generators();
    let dg = disc_group(a)?;
    eq_report(&mut r, "|A^/A|", dg.order(), BigInt::from(6));
    eq_report(&mut r, "elementary divisors", dg.elementary_divisors(), vec![BigInt::from(2), BigInt::from(3)]);
    for (name, y, ord) in [("y1", &y1, 3u64), ("y2", &y2, 3), ("y3", &y3, 2)] {
        r.assert(
            format!("order of {name}"),
            class_order(y) == BigInt::from(ord) && in_dual(a, y),
            format!("{name} in the dual lattice with order {ord}"),
        );
    }
    let sum: Vec<Rational> = y1.iter().zip(&y2).map(|(x, y)| x + y).collect();
    r.assert("y1 + y2 in A", sum.iter().all(|x| x.is_integer()), "integral coordinates");
    r.assert(
        "y1, y2, y3 generate",
        verify_disc_generators(a, &[y1.clone(), y2, y3.clone()], &[3, 3, 2]),
        "subgroup index 1",
    );
    r.assert("y1 alone misses the 2-part", !verify_disc_generators(a, &[y1], &[3]), "proper subgroup");
    Ok(r)
}

fn in_dual(l: &Lattice, y: &[Rational]) -> bool {
    let n = l.rank();
    let g = l.gram().to_qmat();
    (0..n).all(|j| (0..n).map(|i| &y[i] * &g[(i, j)]).sum::<Rational>().is_integer())
}

fn span_of(b: &K3Basis, vs: &[AmbientVector]) -> Result<SpanInAmbient> {
    SpanInAmbient::new(b.lattice(), vs.iter().map(int_vec).collect())
}

pub fn verify_transcendental_lattice(cat: &Catalog, b: &K3Basis) -> Result<CheckReport> {
    let mut r = CheckReport::new();
    let vs = basis::transcendental_vectors();
    let g = b.gram_int(&vs);
    let want = IMat::from_i64(&TRANSCENDENTAL_GRAM.iter().map(|row| row.to_vec()).collect::<Vec<_>>());
    eq_report(&mut r, "Gram of <l1,m1,l2,m2,p1,q1,n2>", &g, &want);
    assert_isometric(&mut r, "span ≅ B0", &g, cat.get("B0")?.gram());
    let u2u2 = IMat::from_i64(&[vec![0, 2, 0, 0], vec![2, 0, 0, 0], vec![0, 0, 0, 2], vec![0, 0, 2, 0]]);
    assert_isometric(&mut r, "<l1,m1,l2,m2> ≅ U(2)+U(2)", &b.gram_int(&vs[..4]), &u2u2);
    r.assert("span primitive in LK3", span_of(b, &vs)?.is_primitive(), "Smith factors of the 7x22 coordinate matrix");
    let head = &vs[..4];
    let sub = |extra: Vec<AmbientVector>| -> Vec<AmbientVector> { head.iter().cloned().chain(extra).collect() };
    for (label, target, extra) in [
        ("<l,m,n1,n2> ≅ B1", "B1", vec![nu(1), nu(2)]),
        ("<l,m,n1> ≅ B2", "B2", vec![nu(1)]),
        ("<l,m,p1,q1> ≅ B1'", "B1'", vec![AmbientVector::unit(p(1)), AmbientVector::unit(q(1))]),
    ] {
        let span = sub(extra);
        assert_isometric(&mut r, label, &b.gram_int(&span), cat.get(target)?.gram());
        r.assert(format!("{target} span primitive"), span_of(b, &span)?.is_primitive(), "Smith factors");
    }
    Ok(r)
}

fn qmat(rows: &[[Rational; 3]]) -> QMat {
    QMat::from_rows(rows.iter().map(|r| r.to_vec()).collect()).expect("square")
}

pub fn nikulin_check(cat: &Catalog, b: &K3Basis) -> Result<CheckReport> {
    let mut r = CheckReport::new();
    let gens = [nu(1).half(), AmbientVector::unit(q(1)), nu(2).half()];
    let g = QMat::from_rows(b.gram(&gens))?;
    let printed = qmat(&[
        [rat(-1, 1), rat(-1, 1), rat(1, 2)],
        [rat(-1, 1), rat(-2, 1), rat(1, 2)],
        [rat(1, 2), rat(1, 2), rat(-1, 1)],
    ]);
    eq_report(&mut r, "Gram of <n1/2, q1, n2/2>", &g, &printed);
    let doubled = g.scaled(&rat(2, 1)).to_imat();
    let want = IMat::from_i64(&[vec![-2, -2, 1], vec![-2, -4, 1], vec![1, 1, -2]]);
    eq_report(&mut r, "doubled Gram", doubled.as_ref(), Some(&want));
    let block = IMat::from_i64(&[vec![-2, 1, 0], vec![1, -2, 0], vec![0, 0, -2]]);
    let a0 = cat.get("A0")?;
    eq_report(&mut r, "target is the A2(-1)+A1(-1) block of A0", &a0.gram().select_rows(&[4, 5, 6]).select_cols(&[4, 5, 6]), &block);
    assert_isometric(&mut r, "doubled Gram ≅ A2(-1)+A1(-1)", &want, &block);
    let lm = QMat::from_rows(b.gram(&[basis::lambda1().half(), basis::mu1().half()]))?;
    eq_report(
        &mut r,
        "Gram of <l1/2, m1/2>",
        lm,
        QMat::from_rows(vec![vec![rat(0, 1), rat(1, 2)], vec![rat(1, 2), rat(-1, 1)]])?,
    );

    // generic intersection with the rational span of the transcendental vectors
    let subspace: Vec<Vec<Rational>> = basis::transcendental_vectors().iter().map(|v| v.coords().to_vec()).collect();
    let halves: Vec<Vec<Rational>> = (1..=8).map(|j| nu(j).half().coords().to_vec()).collect();
    let units: Vec<Vec<Rational>> = (0..K3_RANK).map(|i| AmbientVector::unit(i).coords().to_vec()).collect();
    let literal_gens: Vec<Vec<Rational>> = units[..6].iter().chain(&halves).cloned().collect();
    let literal_rank = intersect_with_subspace(&literal_gens, &subspace)?.len();
    let gens: Vec<Vec<Rational>> = units.iter().chain(&halves).cloned().collect();
    let lam = intersect_with_subspace(&gens, &subspace)?;
    eq_report(&mut r, "intersection rank", lam.len(), 7);
    let lam_vecs: Vec<AmbientVector> = lam.into_iter().map(AmbientVector::from_coords).collect();
    let twisted = QMat::from_rows(b.gram(&lam_vecs))?.scaled(&rat(2, 1));
    match twisted.to_imat() {
        Some(t) => {
            let l = Lattice::new(t.clone())?;
            let fl = genus_invariants(&l)?;
            let fa = genus_invariants(a0)?;
            let detail = match fl.difference(&fa) {
                None => format!("fingerprints agree (intersection with U^3 + <n_j/2> alone has rank {literal_rank})"),
                Some(d) => d,
            };
            r.assert("twisted intersection has the fingerprint of A0", fl == fa, detail);
            assert_isometric(&mut r, "twisted intersection ≅ A0", &t, a0.gram());
        }
        None => {
            r.assert("twisted intersection integral", false, "non-integral Gram after doubling");
        }
    }
    Ok(r)
}

pub fn verify_b_vs_a_twists(cat: &Catalog) -> Result<CheckReport> {
    let mut r = CheckReport::new();
    for j in ["1", "2", "3"] {
        let a2 = cat.get(&format!("A{j}"))?.twist(2)?;
        let bj = cat.get(&format!("B{j}"))?;
        assert_isometric(&mut r, &format!("B{j} ≅ A{j}(2)"), bj.gram(), a2.gram());
    }
    let b0 = cat.get("B0")?;
    let a02 = cat.get("A0")?.twist(2)?;
    eq_report(&mut r, "|det B0|", b0.det().abs(), BigInt::from(192));
    eq_report(&mut r, "|det A0(2)|", a02.det().abs(), BigInt::from(768));
    let out = find_isometry(b0.gram(), a02.gram(), DEFAULT_BUDGET)?;
    let certified = matches!(&out, IsometryOutcome::NotIsometric(_));
    r.assert("B0 not isometric to A0(2)", certified, format!("{out:?}"));
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::k3cat::derive_e8_labeling;

    fn setup() -> (Catalog, K3Basis) {
        (Catalog::standard(), derive_e8_labeling().unwrap().basis())
    }

    #[test]
    fn m0_embedding_gram_matches_catalog() {
        let (cat, b) = setup();
        assert_eq!(&embed_m0(&b).gram(), cat.get("M").unwrap().gram());
    }

    #[test]
    fn catalog_and_disc_generators() {
        let (cat, b) = setup();
        let r = catalog_check(&cat, &b).unwrap();
        assert!(r.passed(), "{}", r.summary());
        let r = disc_generators_check(&cat).unwrap();
        assert!(r.passed(), "{}", r.summary());
    }

    #[test]
    fn complement_of_m0() {
        let (cat, b) = setup();
        let c = complement_check(&cat, &b).unwrap();
        assert!(c.report.passed(), "{}", c.report.summary());
    }

    #[test]
    fn transcendental_lattice() {
        let (cat, b) = setup();
        let r = verify_transcendental_lattice(&cat, &b).unwrap();
        assert!(r.passed(), "{}", r.summary());
        let r = nikulin_check(&cat, &b).unwrap();
        assert!(r.passed(), "{}", r.summary());
    }

    #[test]
    fn twists() {
        let r = verify_b_vs_a_twists(&Catalog::standard()).unwrap();
        assert!(r.passed(), "{}", r.summary());
    }
}

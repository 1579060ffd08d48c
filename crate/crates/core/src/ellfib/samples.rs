use std::str::FromStr;

use num_traits::Zero;
use rand::Rng;

use super::invariants::{disc84, resultant_r};
use super::params::{build_model, FamilyParams};
use crate::error::Error;
use crate::exactmath::{squarefree_decomposition, Rational, UPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SampleKind {
    Generic,
    TypeII,
    TypeI2,
    A0Zero,
    A14Zero,
}

impl SampleKind {
    pub const ALL: [SampleKind; 5] =
        [SampleKind::Generic, SampleKind::TypeII, SampleKind::TypeI2, SampleKind::A0Zero, SampleKind::A14Zero];

    pub fn name(&self) -> &'static str {
        match self {
            SampleKind::Generic => "generic",
            SampleKind::TypeII => "type-II",
            SampleKind::TypeI2 => "type-I2",
            SampleKind::A0Zero => "a0-zero",
            SampleKind::A14Zero => "a14-zero",
        }
    }
}

impl FromStr for SampleKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        SampleKind::ALL
            .iter()
            .copied()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse(format!("unknown sample kind {s:?}")))
    }
}

/// Nonzero `p/q` with `|p| ≤ 12`, `1 ≤ q ≤ 3`.
pub fn random_rational<R: Rng>(rng: &mut R) -> Rational {
    loop {
        let p: i64 = rng.gen_range(-12..=12);
        if p != 0 {
            let q: i64 = rng.gen_range(1..=3);
            return Rational::new(p.into(), q.into());
        }
    }
}

fn raw<R: Rng>(rng: &mut R) -> [Rational; 7] {
    std::array::from_fn(|_| random_rational(rng))
}

/// `rest` is squarefree with no root at `0` or at a root of `special`.
fn squarefree_away(rest: &UPoly, special: &UPoly) -> bool {
    let sf = squarefree_decomposition(rest);
    sf.iter().all(|(_, m)| *m == 1)
        && !rest.coeff(0).is_zero()
        && rest.gcd(special).degree() == Some(0)
}

fn reduced_delta(a: &FamilyParams, x_power: usize, special: &UPoly, mult: u32) -> Option<UPoly> {
    let d = build_model(a).ok()?.discriminant();
    if d.order_at_zero()? != x_power {
        return None;
    }
    let mut rest = d.shift_down(x_power);
    for _ in 0..mult {
        let (q, r) = rest.div_rem(special);
        if !r.is_zero() {
            return None;
        }
        rest = q;
    }
    Some(rest)
}

fn x_minus_one() -> UPoly {
    UPoly::from_ints(&[-1, 1])
}

fn construct<R: Rng>(kind: SampleKind, rng: &mut R) -> FamilyParams {
    let mut v = raw(rng);
    match kind {
        SampleKind::Generic => {}
        SampleKind::TypeII => {
            // common depressed root x = 1
            v[4] = -(&v[0] + &v[2]);
            v[6] = -(&v[1] + &v[3] + &v[5]);
        }
        SampleKind::TypeI2 => {
            // g₂(1) = −3, g₃(1) = 2, g₂′(1) = s = −g₃′(1)
            let s = Rational::from_integer(rng.gen_range(-6i64..=6).into());
            let three = Rational::from_integer(3.into());
            v[2] = &s + Rational::from_integer(9.into()) - Rational::from_integer(2.into()) * &v[0];
            v[4] = -&three - &v[0] - &v[2];
            let big_a = Rational::from_integer(2.into()) - &v[1] - &v[3];
            let big_b = -&s - Rational::from_integer(7.into()) * &v[1] - Rational::from_integer(6.into()) * &v[3];
            v[5] = &big_b - Rational::from_integer(4.into()) * &big_a;
            v[6] = Rational::from_integer(5.into()) * &big_a - &big_b;
        }
        SampleKind::A0Zero => v[0] = Rational::zero(),
        SampleKind::A14Zero => v[6] = Rational::zero(),
    }
    FamilyParams::new(v)
}

/// Open conditions that keep the sample off deeper strata.
fn side_conditions(kind: SampleKind, a: &FamilyParams) -> bool {
    let x = UPoly::x();
    let nonzero = |idx: &[usize]| idx.iter().all(|&i| !a.values()[i].is_zero());
    match kind {
        SampleKind::Generic => {
            nonzero(&[0, 6])
                && resultant_r(a).is_ok_and(|r| !r.is_zero())
                && disc84(a).is_ok_and(|d| !d.is_zero())
        }
        SampleKind::TypeII => {
            let Some(rest) = reduced_delta(a, 8, &x_minus_one(), 2) else { return false };
            let m = build_model(a).expect("nonzero");
            nonzero(&[0, 1, 4, 6])
                && m.g3.multiplicity_of(&x_minus_one()) == 1
                && squarefree_away(&rest, &(&x * &x_minus_one()))
        }
        SampleKind::TypeI2 => {
            let Some(rest) = reduced_delta(a, 8, &x_minus_one(), 2) else { return false };
            nonzero(&[0, 4, 6]) && squarefree_away(&rest, &(&x * &x_minus_one()))
        }
        SampleKind::A0Zero => {
            let Some(rest) = reduced_delta(a, 8, &x, 0) else { return false };
            nonzero(&[1, 2, 4, 6]) && squarefree_away(&rest, &x)
        }
        SampleKind::A14Zero => {
            let Some(rest) = reduced_delta(a, 9, &x, 0) else { return false };
            nonzero(&[0, 4, 5]) && squarefree_away(&rest, &x)
        }
    }
}

/// A rational parameter vector on the requested locus, redrawn until the
/// open side conditions hold.
pub fn degenerate_sample<R: Rng>(kind: SampleKind, rng: &mut R) -> FamilyParams {
    for _ in 0..10_000 {
        let a = construct(kind, rng);
        if side_conditions(kind, &a) {
            return a;
        }
    }
    panic!("no {} sample found in 10000 draws", kind.name());
}

/// A generic parameter vector.
pub fn random_params<R: Rng>(rng: &mut R) -> FamilyParams {
    degenerate_sample(SampleKind::Generic, rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ellfib::classify_all;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn samples_lie_on_their_loci() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let want = [
            (SampleKind::Generic, "III* + IV* + 7 I1"),
            (SampleKind::TypeII, "III* + IV* + II + 5 I1"),
            (SampleKind::TypeI2, "III* + IV* + I2 + 5 I1"),
            (SampleKind::A0Zero, "II* + IV* + 6 I1"),
            (SampleKind::A14Zero, "2 III* + 6 I1"),
        ];
        for (kind, desc) in want {
            let a = degenerate_sample(kind, &mut rng);
            let c = classify_all(&a).unwrap();
            assert_eq!(c.describe(), desc, "{} at {a}", kind.name());
            assert_eq!(c.total_euler, 24);
        }
        let a = degenerate_sample(SampleKind::TypeII, &mut rng);
        assert!(resultant_r(&a).unwrap().is_zero());
    }

    #[test]
    fn kind_names() {
        for k in SampleKind::ALL {
            assert_eq!(k.name().parse::<SampleKind>().unwrap(), k);
        }
        assert!("type-III".parse::<SampleKind>().is_err());
    }
}

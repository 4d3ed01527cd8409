use num_integer::Integer;
use num_traits::One;
use serde::Serialize;

use crate::arith::gcd;
use crate::divisibility::{pair_verdict, PairKind};
use crate::error::{Error, Result};
use crate::exact::ExactInt;
use crate::smith::pow;
use crate::structure::OrderedSet;

/// The set `{1, u, v, uvw}` with `(u, v) = 1`, `u, v >= 2`, `w > 1`.
///
/// Such a set is gcd closed, `G(uvw) = {u, v}` and `[u, v] = uv < uvw`, so it
/// never satisfies condition G. Its quotient `(S)^{-1}(S^b)` is integral iff
/// `Δ_1 | Δ_b` where `Δ_b = (uvw)^b - u^b - v^b + 1`, and `(S)^{-1}[S^b]` is
/// integral iff additionally `Δ_1 | Γ_b` with `Γ_b = u^b v^b (w^b - 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FamilyInstance {
    pub u: u64,
    pub v: u64,
    pub w: u64,
}

impl FamilyInstance {
    pub fn new(u: u64, v: u64, w: u64) -> Result<Self> {
        if u < 2 || v < 2 {
            return Err(Error::InvalidFamily(format!("u = {u} and v = {v} must both be at least 2")));
        }
        if u == v || gcd(u, v) != 1 {
            return Err(Error::InvalidFamily(format!("u = {u} and v = {v} must be coprime")));
        }
        if w < 2 {
            return Err(Error::InvalidFamily(format!("w = {w} must exceed 1")));
        }
        u.checked_mul(v)
            .and_then(|uv| uv.checked_mul(w))
            .ok_or_else(|| Error::Overflow(format!("uvw for ({u}, {v}, {w})")))?;
        Ok(FamilyInstance { u, v, w })
    }

    pub fn top(&self) -> u64 {
        self.u * self.v * self.w
    }

    pub fn set(&self) -> OrderedSet {
        OrderedSet::new(&[1, self.u, self.v, self.top()]).expect("family elements are distinct")
    }

    /// `(uvw)^b - u^b - v^b + 1`
    pub fn delta(&self, b: u32) -> ExactInt {
        pow(self.top(), b) - pow(self.u, b) - pow(self.v, b) + ExactInt::one()
    }

    /// `u^b v^b (w^b - 1)`
    pub fn gamma(&self, b: u32) -> ExactInt {
        pow(self.u, b) * pow(self.v, b) * (pow(self.w, b) - ExactInt::one())
    }

    /// `(S) | (S^b)` by the `Δ` criterion.
    pub fn gcd_divides(&self, b: u32) -> bool {
        self.delta(b).is_multiple_of(&self.delta(1))
    }

    /// `(S) | [S^b]` by the `Δ`/`Γ` criterion.
    pub fn lcm_divides(&self, b: u32) -> bool {
        let d1 = self.delta(1);
        self.delta(b).is_multiple_of(&d1) && self.gamma(b).is_multiple_of(&d1)
    }

    /// The same verdicts from the generic matrix quotient.
    pub fn matrix_verdicts(&self, b: u32) -> Result<(bool, bool)> {
        let set = self.set();
        let g = pair_verdict(set.elements(), 1, b, PairKind::GcdGcd)?.divides();
        let l = pair_verdict(set.elements(), 1, b, PairKind::GcdLcm)?.divides();
        Ok((g == Some(true), l == Some(true)))
    }
}

/// A family member certified for exponent `b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyWitness {
    pub instance: FamilyInstance,
    pub b: u32,
    /// Verdict from the closed-form `Δ`/`Γ` criterion.
    pub criterion: bool,
    /// Verdict from the generic quotient `B A^{-1}`.
    pub quotient: bool,
}

impl FamilyWitness {
    pub fn verified(&self) -> bool {
        self.criterion && self.quotient
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum WitnessCase {
    NoWitness { b: u32 },
    Witness(FamilyWitness),
}

impl WitnessCase {
    pub fn witness(&self) -> Option<&FamilyWitness> {
        match self {
            WitnessCase::Witness(w) => Some(w),
            WitnessCase::NoWitness { .. } => None,
        }
    }
}

fn known(u: u64, v: u64, w: u64) -> FamilyInstance {
    FamilyInstance::new(u, v, w).expect("fixed parameters are valid")
}

/// Witness for `(S) | (S^b)` on a set failing condition G, chosen by the
/// residue of `b`: even `b >= 4` uses (2,3,2), `b ≡ 1 (mod 6)` uses (3,4,4),
/// `b ≡ 3 (mod 6)` uses (3,4,2), `b ≡ 5 (mod 6)` uses (2,5,2). None for `b = 2`.
pub fn gcd_side_witness(b: u32) -> Result<WitnessCase> {
    let instance = match b {
        0 => return Err(Error::HypothesisViolated("b must be positive".into())),
        2 => return Ok(WitnessCase::NoWitness { b }),
        _ if b % 2 == 0 => known(2, 3, 2),
        _ => match b % 6 {
            1 => known(3, 4, 4),
            3 => known(3, 4, 2),
            _ => known(2, 5, 2),
        },
    };
    let (quotient, _) = instance.matrix_verdicts(b)?;
    Ok(WitnessCase::Witness(FamilyWitness { instance, b, criterion: instance.gcd_divides(b), quotient }))
}

/// Witness for `(S) | [S^b]` on a set failing condition G. Exists for even
/// `b >= 4` via (2,3,2) and for `b ≡ 3 (mod 6)` via (3,4,2); no witness is
/// claimed for other `b`.
pub fn lcm_side_witness(b: u32) -> Result<WitnessCase> {
    let instance = match b {
        0 => return Err(Error::HypothesisViolated("b must be positive".into())),
        _ if b % 2 == 0 && b >= 4 => known(2, 3, 2),
        _ if b % 6 == 3 => known(3, 4, 2),
        _ => return Ok(WitnessCase::NoWitness { b }),
    };
    let (_, quotient) = instance.matrix_verdicts(b)?;
    Ok(WitnessCase::Witness(FamilyWitness { instance, b, criterion: instance.lcm_divides(b), quotient }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::analyze;
    use num_bigint::BigInt;

    #[test]
    fn construction_rules() {
        assert!(FamilyInstance::new(2, 3, 2).is_ok());
        assert!(FamilyInstance::new(2, 4, 2).is_err());
        assert!(FamilyInstance::new(2, 3, 1).is_err());
        assert!(FamilyInstance::new(1, 3, 2).is_err());
        assert!(FamilyInstance::new(u64::MAX, 3, 2).is_err());
    }

    #[test]
    fn family_sets_fail_condition_g() {
        for (u, v, w) in [(2, 3, 2), (3, 4, 4), (3, 4, 2), (2, 5, 2), (5, 7, 3)] {
            let r = analyze(&known(u, v, w).set());
            assert!(r.gcd_closed);
            assert_eq!(r.max_gtd, 2);
            assert!(!r.condition_g);
        }
    }

    #[test]
    fn delta_examples() {
        assert_eq!(known(2, 3, 2).delta(1), BigInt::from(8));
        assert_eq!(known(3, 4, 4).delta(1), BigInt::from(42));
        assert_eq!(known(2, 3, 2).delta(4), BigInt::from(20640));
        assert_eq!(known(3, 4, 2).delta(1), BigInt::from(18));
        assert_eq!(known(2, 5, 2).delta(1), BigInt::from(14));
    }

    #[test]
    fn gamma_examples() {
        assert_eq!(known(2, 3, 2).gamma(1), BigInt::from(6));
        assert_eq!(known(3, 4, 2).gamma(3), BigInt::from(12096));
    }

    #[test]
    fn divisibility_examples() {
        assert!(known(2, 3, 2).gcd_divides(4));
        assert!(!known(2, 3, 2).gcd_divides(2));
        assert!(known(3, 4, 2).lcm_divides(3));
    }

    #[test]
    fn witness_examples() {
        let w = gcd_side_witness(7).unwrap();
        let w = w.witness().unwrap();
        assert_eq!(w.instance, known(3, 4, 4));
        assert!(w.verified());
        assert_eq!(gcd_side_witness(2).unwrap(), WitnessCase::NoWitness { b: 2 });
        let w = gcd_side_witness(9).unwrap();
        assert_eq!(w.witness().unwrap().instance, known(3, 4, 2));
        assert!(w.witness().unwrap().verified());
        assert_eq!(lcm_side_witness(5).unwrap(), WitnessCase::NoWitness { b: 5 });
        assert_eq!(lcm_side_witness(1).unwrap(), WitnessCase::NoWitness { b: 1 });
        assert!(lcm_side_witness(3).unwrap().witness().unwrap().verified());
    }

    #[test]
    fn criterion_matches_matrix_quotient_on_grid() {
        for u in 2..=7u64 {
            for v in 2..=7u64 {
                if u == v || gcd(u, v) != 1 {
                    continue;
                }
                for w in 2..=5u64 {
                    let inst = known(u, v, w);
                    for b in 1..=12 {
                        let (g, l) = inst.matrix_verdicts(b).unwrap();
                        assert_eq!(inst.gcd_divides(b), g, "{inst:?} b = {b}");
                        assert_eq!(inst.lcm_divides(b), l, "{inst:?} b = {b}");
                    }
                }
            }
        }
    }
}

//! Divisibility of power GCD/LCM matrices in `M_n(Z)`.
//!
//! `A | B` is decided through the right quotient `Q = B A^{-1}`: `A` divides
//! `B` iff `Q` is an integer matrix. For the symmetric matrices built here the
//! left quotient `A^{-1} B = Q^T` carries the same verdict; debug builds assert
//! this on every call.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::arith::{gcd, lcm};
use crate::error::{Error, Result};
use crate::exact::{exact_inverse, fraction_free_right_solve, int_divides, integrality_check, ExactRational, Integrality, Matrix};
use crate::smith::{pow, power_matrix_of, PowerKind};
use crate::structure::{analyze, is_gcd_closed, sub_poset_condition_g, OrderedSet, StructureReport};

/// Which power matrices are compared: divisor kind, then dividend kind.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum PairKind {
    /// `(S^a) | (S^b)`
    #[serde(rename = "gcd-gcd")]
    GcdGcd,
    /// `(S^a) | [S^b]`
    #[serde(rename = "gcd-lcm")]
    GcdLcm,
    /// `[S^a] | [S^b]`
    #[serde(rename = "lcm-lcm")]
    LcmLcm,
}

impl PairKind {
    pub const ALL: [PairKind; 3] = [PairKind::GcdGcd, PairKind::GcdLcm, PairKind::LcmLcm];

    pub fn divisor_kind(self) -> PowerKind {
        match self {
            PairKind::GcdGcd | PairKind::GcdLcm => PowerKind::Gcd,
            PairKind::LcmLcm => PowerKind::Lcm,
        }
    }

    pub fn dividend_kind(self) -> PowerKind {
        match self {
            PairKind::GcdGcd => PowerKind::Gcd,
            PairKind::GcdLcm | PairKind::LcmLcm => PowerKind::Lcm,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            PairKind::GcdGcd => "gcd-gcd",
            PairKind::GcdLcm => "gcd-lcm",
            PairKind::LcmLcm => "lcm-lcm",
        }
    }
}

impl fmt::Display for PairKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PairKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gcd-gcd" => Ok(PairKind::GcdGcd),
            "gcd-lcm" => Ok(PairKind::GcdLcm),
            "lcm-lcm" => Ok(PairKind::LcmLcm),
            other => Err(Error::Parse(other.to_string())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub row: usize,
    pub col: usize,
    pub value: ExactRational,
}

/// Outcome of the quotient test for one matrix pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// `B A^{-1}`, integral.
    Quotient(Matrix),
    /// First non-integral entry of `B A^{-1}` in row-major order.
    Witness(Witness),
    /// `A` is singular; the quotient method says nothing.
    Inapplicable { det: BigInt },
}

/// Right quotient `B A^{-1}` and its integrality.
pub fn divides(a: &Matrix, b: &Matrix) -> Result<Certificate> {
    let q = right_quotient(a, b)?;
    Ok(match integrality_check(&q) {
        Integrality::Integral => Certificate::Quotient(q),
        Integrality::NonIntegral { row, col, value } => Certificate::Witness(Witness { row, col, value }),
    })
}

/// `B A^{-1}` exactly. Integer inputs are solved fraction-free; others go
/// through the rational inverse. `SingularDivisor` if `A` is singular.
///
/// Debug builds also confirm, for symmetric inputs, that the left quotient
/// `A^{-1} B` is the transpose, so the two notions of divisibility agree.
pub fn right_quotient(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    let n = a.dim();
    if n != b.dim() {
        return Err(Error::DimensionMismatch(n, b.dim()));
    }
    let symmetric = cfg!(debug_assertions) && a.is_symmetric() && b.is_symmetric();
    if let (Some(ai), Some(bi)) = (a.to_integer_rows(), b.to_integer_rows()) {
        let (d, num) = fraction_free_right_solve(&ai, &bi).ok_or(Error::SingularDivisor { det: BigInt::zero() })?;
        if symmetric {
            // A N^T = d B
            let holds = (0..n).all(|i| {
                (0..n).all(|j| (0..n).map(|k| &ai[i][k] * &num[j][k]).sum::<BigInt>() == &d * &bi[i][j])
            });
            assert!(holds, "left and right quotients disagree");
        }
        return Ok(Matrix::from_fn(n, |i, j| BigRational::new(num[i][j].clone(), d.clone())));
    }
    let inv = exact_inverse(a).map_err(|e| match e {
        Error::Singular { det } => Error::SingularDivisor { det },
        other => other,
    })?;
    let q = b * &inv;
    if symmetric {
        let left = &inv * b;
        assert_eq!(left, q.transpose(), "left and right quotients disagree");
    }
    Ok(q)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisibilityVerdict {
    pub pair: PairKind,
    pub a: u32,
    pub b: u32,
    pub certificate: Certificate,
}

impl DivisibilityVerdict {
    /// `None` when the divisor matrix is singular.
    pub fn divides(&self) -> Option<bool> {
        match self.certificate {
            Certificate::Quotient(_) => Some(true),
            Certificate::Witness(_) => Some(false),
            Certificate::Inapplicable { .. } => None,
        }
    }

    pub fn quotient(&self) -> Option<&Matrix> {
        match &self.certificate {
            Certificate::Quotient(q) => Some(q),
            _ => None,
        }
    }

    pub fn witness(&self) -> Option<&Witness> {
        match &self.certificate {
            Certificate::Witness(w) => Some(w),
            _ => None,
        }
    }

    /// `{pair, a, b, divides, quotient?, witness?}`; entries are strings.
    pub fn to_json(&self) -> serde_json::Value {
        let mut v = serde_json::json!({
            "pair": self.pair.as_str(),
            "a": self.a,
            "b": self.b,
            "divides": self.divides(),
        });
        match &self.certificate {
            Certificate::Quotient(q) => v["quotient"] = serde_json::json!(q.to_string_rows()),
            Certificate::Witness(w) => {
                v["witness"] = serde_json::json!({ "row": w.row, "col": w.col, "value": w.value.to_string() })
            }
            Certificate::Inapplicable { det } => v["singular_divisor_det"] = serde_json::json!(det.to_string()),
        }
        v
    }
}

/// Quotient test for one pair kind on the values in the given order.
pub fn pair_verdict(values: &[u64], a: u32, b: u32, pair: PairKind) -> Result<DivisibilityVerdict> {
    let divisor = power_matrix_of(values, a, pair.divisor_kind());
    let dividend = power_matrix_of(values, b, pair.dividend_kind());
    let certificate = match divides(&divisor, &dividend) {
        Ok(c) => c,
        Err(Error::SingularDivisor { det }) => Certificate::Inapplicable { det },
        Err(e) => return Err(e),
    };
    Ok(DivisibilityVerdict { pair, a, b, certificate })
}

/// All three pair kinds, in [`PairKind::ALL`] order.
pub fn all_verdicts(values: &[u64], a: u32, b: u32) -> Result<[DivisibilityVerdict; 3]> {
    let [p, q, r] = PairKind::ALL;
    Ok([pair_verdict(values, a, b, p)?, pair_verdict(values, a, b, q)?, pair_verdict(values, a, b, r)?])
}

#[derive(Clone, Debug)]
pub struct TheoremReport {
    pub structure: StructureReport,
    pub a: u32,
    pub b: u32,
    pub a_divides_b: bool,
    /// gcd closed, `max_gtd <= 2`, condition G, `a | b`.
    pub preconditions_met: bool,
    pub verdicts: [DivisibilityVerdict; 3],
}

impl TheoremReport {
    pub fn all_divide(&self) -> bool {
        self.verdicts.iter().all(|v| v.divides() == Some(true))
    }

    /// Preconditions hold but some relation failed. Never expected.
    pub fn violation(&self) -> bool {
        self.preconditions_met && !self.all_divide()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "structure": self.structure,
            "a": self.a,
            "b": self.b,
            "a_divides_b": self.a_divides_b,
            "preconditions_met": self.preconditions_met,
            "verdicts": self.verdicts.iter().map(DivisibilityVerdict::to_json).collect::<Vec<_>>(),
            "theorem_violation": self.violation(),
        })
    }
}

/// Checks whether `S` meets the hypotheses for `(S^a)|(S^b)`, `(S^a)|[S^b]` and
/// `[S^a]|[S^b]`, then runs all three quotient tests regardless.
pub fn verify_main_theorem(set: &OrderedSet, a: u32, b: u32) -> Result<TheoremReport> {
    if a == 0 || b == 0 {
        return Err(Error::HypothesisViolated("exponents must be positive".into()));
    }
    let structure = analyze(set);
    let a_divides_b = b % a == 0;
    let preconditions_met = structure.gcd_closed && structure.max_gtd <= 2 && structure.condition_g && a_divides_b;
    let verdicts = all_verdicts(set.elements(), a, b)?;
    Ok(TheoremReport { structure, a, b, a_divides_b, preconditions_met, verdicts })
}

fn hypothesis(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::HypothesisViolated(what.to_string()))
    }
}

fn lcm_pow(x: u64, y: u64, e: u32) -> BigInt {
    pow(lcm(x, y).expect("lcm of set elements overflows u64"), e)
}

fn gcd_pow(x: u64, y: u64, e: u32) -> BigInt {
    pow(gcd(x, y), e)
}

/// Per-claim flags for elements with a single greatest-type divisor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SingleGtdFlags {
    /// `x^a - y^a | (x,z)^b - (y,z)^b`
    pub gcd_difference: bool,
    /// `x^a - y^a | [x,z]^b - [y,z]^b`
    pub lcm_difference: bool,
    /// `r^a (y^a - x^a) | y^a [z,x]^b - x^a [z,y]^b`, when `r` is given.
    pub weighted: Option<bool>,
}

impl SingleGtdFlags {
    pub fn all(&self) -> bool {
        self.gcd_difference && self.lcm_difference && self.weighted.unwrap_or(true)
    }
}

/// Divisibility claims for `x` with `G_S(x) = {y}`, gcd-closed `S`, `a | b`.
pub fn lemma_divisibility_single(
    set: &OrderedSet,
    x: u64,
    y: u64,
    z: u64,
    a: u32,
    b: u32,
    r: Option<u64>,
) -> Result<SingleGtdFlags> {
    hypothesis(a > 0 && b % a == 0, "a must divide b")?;
    for v in [x, y, z].into_iter().chain(r) {
        if !set.contains(v) {
            return Err(Error::ElementNotInSet(v));
        }
    }
    hypothesis(is_gcd_closed(set), "S must be gcd closed")?;
    let report = analyze(set);
    hypothesis(report.gtds(x) == [y], "G_S(x) must equal {y}")?;
    if let Some(r) = r {
        hypothesis(x % r == 0, "r must divide x")?;
    }

    let base = pow(x, a) - pow(y, a);
    let gcd_difference = int_divides(&base, &(gcd_pow(x, z, b) - gcd_pow(y, z, b)));
    let lcm_difference = int_divides(&base, &(lcm_pow(x, z, b) - lcm_pow(y, z, b)));
    let weighted = r.map(|r| {
        let d = pow(r, a) * (pow(y, a) - pow(x, a));
        let n = pow(y, a) * lcm_pow(z, x, b) - pow(x, a) * lcm_pow(z, y, b);
        int_divides(&d, &n)
    });
    Ok(SingleGtdFlags { gcd_difference, lcm_difference, weighted })
}

/// Per-claim flags for elements with two greatest-type divisors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DoubleGtdFlags {
    /// `x^a+y3^a-y1^a-y2^a | (z,x)^b+(z,y3)^b-(z,y1)^b-(z,y2)^b`
    pub gcd_combination: bool,
    /// `x^a+y3^a-y1^a-y2^a | [z,x]^b+[z,y3]^b-[z,y1]^b-[z,y2]^b`
    pub lcm_combination: bool,
    /// `r^a(x^a+y3^a-y1^a-y2^a) | x^a[z,y3]^b+y3^a[z,x]^b-y1^a[z,y2]^b-y2^a[z,y1]^b`
    pub weighted: Option<bool>,
}

impl DoubleGtdFlags {
    pub fn all(&self) -> bool {
        self.gcd_combination && self.lcm_combination && self.weighted.unwrap_or(true)
    }
}

/// Divisibility claims for `x` with `G_S(x) = {y1, y2}`, `y3 = (y1, y2)`.
///
/// Hypotheses: `a | b`; `S` gcd closed with `max |G_S| = 2`; `|G_S(x)| = 2`;
/// `x` satisfies condition G in `S`; `{u in S : (x,z) | u | x}` satisfies
/// condition G; `z in S`; `r in S` with `r | x` when given.
pub fn lemma_divisibility_double(
    set: &OrderedSet,
    x: u64,
    z: u64,
    a: u32,
    b: u32,
    r: Option<u64>,
) -> Result<DoubleGtdFlags> {
    hypothesis(a > 0 && b % a == 0, "a must divide b")?;
    for v in [x, z].into_iter().chain(r) {
        if !set.contains(v) {
            return Err(Error::ElementNotInSet(v));
        }
    }
    hypothesis(is_gcd_closed(set), "S must be gcd closed")?;
    let report = analyze(set);
    hypothesis(report.max_gtd == 2, "max |G_S(x)| must be 2")?;
    let &[y1, y2] = report.gtds(x) else {
        return Err(Error::HypothesisViolated("|G_S(x)| must be 2".into()));
    };
    hypothesis(report.element_satisfies_g(x), "x must satisfy condition G")?;
    hypothesis(sub_poset_condition_g(set, gcd(x, z), x)?, "{u : (x,z) | u | x} must satisfy condition G")?;
    if let Some(r) = r {
        hypothesis(x % r == 0, "r must divide x")?;
    }
    let y3 = gcd(y1, y2);

    let base = pow(x, a) + pow(y3, a) - pow(y1, a) - pow(y2, a);
    let gcd_comb = gcd_pow(z, x, b) + gcd_pow(z, y3, b) - gcd_pow(z, y1, b) - gcd_pow(z, y2, b);
    let lcm_comb = lcm_pow(z, x, b) + lcm_pow(z, y3, b) - lcm_pow(z, y1, b) - lcm_pow(z, y2, b);
    let weighted = r.map(|r| {
        let n = pow(x, a) * lcm_pow(z, y3, b) + pow(y3, a) * lcm_pow(z, x, b)
            - pow(y1, a) * lcm_pow(z, y2, b)
            - pow(y2, a) * lcm_pow(z, y1, b);
        int_divides(&(pow(r, a) * &base), &n)
    });
    Ok(DoubleGtdFlags {
        gcd_combination: int_divides(&base, &gcd_comb),
        lcm_combination: int_divides(&base, &lcm_comb),
        weighted,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeelReport {
    /// Verdicts on `S`, in [`PairKind::ALL`] order.
    pub full: [bool; 3],
    /// Verdicts on `S` without its maximum.
    pub peeled: [bool; 3],
    pub biconditional_holds: bool,
    /// Last row and last column of each quotient are integral.
    pub boundary_integral: [bool; 3],
}

impl PeelReport {
    pub fn passed(&self) -> bool {
        self.biconditional_holds && self.boundary_integral.iter().all(|&b| b)
    }
}

/// Quotient on the full set vs. on the set without its maximum, plus
/// integrality of the last row and column of each full quotient.
pub fn peel_equivalence_check(set: &OrderedSet, a: u32, b: u32) -> Result<PeelReport> {
    hypothesis(a > 0 && b % a == 0, "a must divide b")?;
    hypothesis(set.len() >= 2, "|S| must be at least 2")?;
    let report = analyze(set);
    hypothesis(report.gcd_closed, "S must be gcd closed")?;
    hypothesis(report.max_gtd <= 2, "max |G_S(x)| must be at most 2")?;
    hypothesis(report.condition_g, "S must satisfy condition G")?;
    let peeled_set = set.without_max().expect("|S| >= 2");

    let n = set.len();
    let quotients = raw_quotients(set.elements(), a, b)?;
    let peeled_quotients = raw_quotients(peeled_set.elements(), a, b)?;
    let mut full = [false; 3];
    let mut peeled = [false; 3];
    let mut boundary_integral = [false; 3];
    for k in 0..3 {
        full[k] = integrality_check(&quotients[k]).is_integral();
        peeled[k] = integrality_check(&peeled_quotients[k]).is_integral();
        let q = &quotients[k];
        boundary_integral[k] = (0..n).all(|i| q.get(i, n - 1).is_integer() && q.get(n - 1, i).is_integer());
    }
    Ok(PeelReport { full, peeled, biconditional_holds: full == peeled, boundary_integral })
}

/// `(S^b)(S^a)^{-1}`, `[S^b](S^a)^{-1}`, `[S^b][S^a]^{-1}`.
fn raw_quotients(values: &[u64], a: u32, b: u32) -> Result<[Matrix; 3]> {
    let gcd_a = power_matrix_of(values, a, PowerKind::Gcd);
    let lcm_a = power_matrix_of(values, a, PowerKind::Lcm);
    let lcm_b = power_matrix_of(values, b, PowerKind::Lcm);
    Ok([
        right_quotient(&gcd_a, &power_matrix_of(values, b, PowerKind::Gcd))?,
        right_quotient(&gcd_a, &lcm_b)?,
        right_quotient(&lcm_a, &lcm_b)?,
    ])
}

/// Whether reordering the set by `sigma` leaves all three verdicts unchanged.
/// The permuted quotient must also be the conjugate of the original by the
/// permutation whenever it is integral.
pub fn permutation_invariance_check(set: &OrderedSet, a: u32, b: u32, sigma: &[usize]) -> Result<bool> {
    let n = set.len();
    let mut seen = vec![false; n];
    if sigma.len() != n || !sigma.iter().all(|&i| i < n && !std::mem::replace(&mut seen[i], true)) {
        return Err(Error::InvalidPermutation(n));
    }
    let permuted: Vec<u64> = sigma.iter().map(|&i| set.elements()[i]).collect();
    let base = all_verdicts(set.elements(), a, b)?;
    let moved = all_verdicts(&permuted, a, b)?;
    Ok(base.iter().zip(&moved).all(|(p, q)| {
        p.divides() == q.divides()
            && match (p.quotient(), q.quotient()) {
                (Some(qp), Some(qq)) => &qp.permuted(sigma) == qq,
                _ => true,
            }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    fn s(v: &[u64]) -> OrderedSet {
        OrderedSet::new(v).unwrap()
    }

    fn rat(n: i64, d: i64) -> ExactRational {
        ExactRational::new(n.into(), d.into())
    }

    #[test]
    fn divides_examples() {
        let a = power_matrix_of(&[1, 2], 1, PowerKind::Gcd);
        let b = power_matrix_of(&[1, 2], 2, PowerKind::Gcd);
        assert_eq!(
            divides(&a, &b).unwrap(),
            Certificate::Quotient(Matrix::from_i64_rows(&[&[1, 0], &[-2, 3]]).unwrap())
        );

        let a = power_matrix_of(&[1, 2], 2, PowerKind::Gcd);
        let b = power_matrix_of(&[1, 2], 3, PowerKind::Gcd);
        assert_eq!(divides(&a, &b).unwrap(), Certificate::Witness(Witness { row: 1, col: 0, value: rat(-4, 3) }));

        let v = pair_verdict(&[1, 3, 5, 45], 1, 5, PairKind::LcmLcm).unwrap();
        let q = v.quotient().unwrap();
        assert_eq!(q.row(0), &[int(8387101), int(-2795440), int(-1677396), int(186360)]);
    }

    #[test]
    fn divides_errors() {
        let a = Matrix::identity(2);
        let b = Matrix::identity(3);
        assert_eq!(divides(&a, &b), Err(Error::DimensionMismatch(2, 3)));
        let singular = Matrix::from_i64_rows(&[&[1, 2], &[2, 4]]).unwrap();
        assert_eq!(divides(&singular, &a), Err(Error::SingularDivisor { det: BigInt::zero() }));
    }

    #[test]
    fn singular_lcm_divisor_is_inapplicable() {
        // gcd closed, nine elements, singular LCM matrix
        let set = s(&[1, 2, 3, 4, 5, 6, 10, 45, 180]);
        assert!(is_gcd_closed(&set));
        let v = pair_verdict(set.elements(), 1, 2, PairKind::LcmLcm).unwrap();
        assert_eq!(v.certificate, Certificate::Inapplicable { det: BigInt::zero() });
        assert_eq!(v.divides(), None);
        assert_eq!(v.to_json()["divides"], serde_json::Value::Null);
        let r = verify_main_theorem(&set, 1, 2).unwrap();
        assert!(!r.preconditions_met && !r.violation());
    }

    #[test]
    fn verdict_json_schema() {
        let v = pair_verdict(&[1, 2], 2, 3, PairKind::GcdGcd).unwrap();
        let j = v.to_json();
        assert_eq!(j["pair"], "gcd-gcd");
        assert_eq!(j["divides"], false);
        assert_eq!(j["witness"], serde_json::json!({"row": 1, "col": 0, "value": "-4/3"}));
        assert!(j.get("quotient").is_none());

        let v = pair_verdict(&[1, 2], 1, 2, PairKind::GcdGcd).unwrap();
        let j = v.to_json();
        assert_eq!(j["quotient"], serde_json::json!([["1", "0"], ["-2", "3"]]));
        let rows: Vec<Vec<String>> = serde_json::from_value(j["quotient"].clone()).unwrap();
        assert_eq!(&Matrix::from_string_rows(&rows).unwrap(), v.quotient().unwrap());
    }

    #[test]
    fn verify_examples() {
        let r = verify_main_theorem(&s(&[1, 2, 3, 6]), 1, 2).unwrap();
        assert!(r.preconditions_met && r.all_divide() && !r.violation());

        let r = verify_main_theorem(&s(&[1, 2, 4, 8]), 2, 6).unwrap();
        assert!(r.preconditions_met && r.all_divide());

        let r = verify_main_theorem(&s(&[1, 2, 3, 12]), 1, 2).unwrap();
        assert!(!r.preconditions_met);
        assert_eq!(r.verdicts[0].divides(), Some(false));
        // first non-integral entry in row-major order
        let w = r.verdicts[0].witness().unwrap();
        assert_eq!((w.row, w.col, w.value.clone()), (3, 0, rat(21, 2)));
    }

    #[test]
    fn verify_reports_a_not_dividing_b() {
        let r = verify_main_theorem(&s(&[1, 2]), 2, 3).unwrap();
        assert!(!r.a_divides_b && !r.preconditions_met);
        assert_eq!(r.verdicts[0].witness().unwrap().value.denom(), &BigInt::from(3));
    }

    #[test]
    fn single_gtd_examples() {
        let f = lemma_divisibility_single(&s(&[1, 2, 4]), 4, 2, 2, 1, 2, None).unwrap();
        assert!(f.gcd_difference && f.lcm_difference && f.weighted.is_none());
        let f = lemma_divisibility_single(&s(&[1, 2, 4]), 4, 2, 4, 2, 4, Some(2)).unwrap();
        assert!(f.all() && f.weighted == Some(true));
        // x | z: lcm differences vanish
        let f = lemma_divisibility_single(&s(&[1, 2, 4, 8]), 4, 2, 8, 1, 3, Some(1)).unwrap();
        assert!(f.lcm_difference);
    }

    #[test]
    fn single_gtd_hypotheses() {
        let set = s(&[1, 2, 4]);
        assert!(matches!(lemma_divisibility_single(&set, 4, 1, 2, 1, 2, None), Err(Error::HypothesisViolated(_))));
        assert!(matches!(lemma_divisibility_single(&set, 4, 2, 2, 2, 3, None), Err(Error::HypothesisViolated(_))));
        assert_eq!(lemma_divisibility_single(&set, 4, 2, 3, 1, 2, None), Err(Error::ElementNotInSet(3)));
    }

    #[test]
    fn double_gtd_examples() {
        let set = s(&[1, 2, 3, 6]);
        let f = lemma_divisibility_double(&set, 6, 2, 1, 2, Some(1)).unwrap();
        assert!(f.all());
        let f = lemma_divisibility_double(&set, 6, 6, 1, 3, Some(2)).unwrap();
        assert!(f.lcm_combination && f.all());
        assert_eq!(lemma_divisibility_double(&set, 6, 4, 1, 2, None), Err(Error::ElementNotInSet(4)));
    }

    #[test]
    fn double_gtd_requires_condition_g_at_x() {
        // sub-poset {2, 12} is a chain, but 12 fails condition G in S
        let set = s(&[1, 2, 3, 12]);
        assert!(matches!(lemma_divisibility_double(&set, 12, 2, 1, 1, None), Err(Error::HypothesisViolated(_))));
    }

    #[test]
    fn peel_examples() {
        let r = peel_equivalence_check(&s(&[1, 2, 3, 6]), 1, 3).unwrap();
        assert_eq!(r.full, [true; 3]);
        assert!(r.passed());
        let r = peel_equivalence_check(&s(&[1, 2, 4]), 1, 2).unwrap();
        assert!(r.passed() && r.full == [true; 3]);
        let r = peel_equivalence_check(&s(&[1, 2]), 2, 4).unwrap();
        assert_eq!(r.peeled, [true; 3]);
        assert!(r.passed());
        assert!(peel_equivalence_check(&s(&[1, 3, 5, 45]), 1, 5).is_err());
    }

    #[test]
    fn permutation_examples() {
        let set = s(&[1, 2, 3, 6]);
        assert!(permutation_invariance_check(&set, 1, 2, &[0, 1, 2, 3]).unwrap());
        assert!(permutation_invariance_check(&set, 1, 2, &[3, 2, 1, 0]).unwrap());
        assert!(permutation_invariance_check(&s(&[1, 2]), 2, 3, &[1, 0]).unwrap());
        assert_eq!(permutation_invariance_check(&set, 1, 2, &[0, 0, 1, 2]), Err(Error::InvalidPermutation(4)));
        assert_eq!(permutation_invariance_check(&set, 1, 2, &[0, 1]), Err(Error::InvalidPermutation(4)));
    }
}

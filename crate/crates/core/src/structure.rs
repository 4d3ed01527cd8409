//! Sets of positive integers viewed as sub-posets of the divisibility lattice.
//!
//! Everything here works on [`OrderedSet`], which keeps its elements strictly
//! ascending (`x_1 < ... < x_n`). Matrix indices elsewhere in the crate are
//! positions in that ordering.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::arith::{divisors, gcd, lcm};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrderedSet {
    elements: Vec<u64>,
}

impl OrderedSet {
    /// Validates and sorts. Rejects empty input, zero and duplicates.
    pub fn new(values: &[u64]) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptySet);
        }
        let mut elements = values.to_vec();
        elements.sort_unstable();
        if elements[0] == 0 {
            return Err(Error::NonPositiveElement(0));
        }
        if let Some(w) = elements.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateElement(w[0]));
        }
        Ok(OrderedSet { elements })
    }

    /// Caller guarantees strictly ascending positive input.
    pub(crate) fn from_sorted_unchecked(elements: Vec<u64>) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]) && elements.first().is_some_and(|&x| x > 0));
        OrderedSet { elements }
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn max(&self) -> u64 {
        *self.elements.last().expect("sets are nonempty")
    }

    pub fn contains(&self, x: u64) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn index_of(&self, x: u64) -> Option<usize> {
        self.elements.binary_search(&x).ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.elements.iter().copied()
    }

    /// The set with its largest element removed, or `None` for a singleton.
    pub fn without_max(&self) -> Option<OrderedSet> {
        (self.len() > 1).then(|| OrderedSet { elements: self.elements[..self.len() - 1].to_vec() })
    }

    /// `{u in S : lo | u | hi}` as a set in its own right.
    pub fn interval(&self, lo: u64, hi: u64) -> OrderedSet {
        OrderedSet { elements: self.iter().filter(|&u| u % lo == 0 && hi % u == 0).collect() }
    }
}

/// Normalizes raw (possibly non-positive) input into an [`OrderedSet`].
pub fn normalize_set(values: &[i128]) -> Result<OrderedSet> {
    if values.is_empty() {
        return Err(Error::EmptySet);
    }
    let mut out = Vec::with_capacity(values.len());
    for &v in values {
        if v <= 0 {
            return Err(Error::NonPositiveElement(v));
        }
        out.push(u64::try_from(v).map_err(|_| Error::Overflow(format!("element {v}")))?);
    }
    OrderedSet::new(&out)
}

impl FromStr for OrderedSet {
    type Err = Error;

    /// Parses `"1,3,5,45"`; whitespace around items is ignored.
    fn from_str(s: &str) -> Result<Self> {
        let values = s
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<i128>().map_err(|_| Error::Parse(t.to_string())))
            .collect::<Result<Vec<_>>>()?;
        normalize_set(&values)
    }
}

impl fmt::Display for OrderedSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elements.iter().map(u64::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl Serialize for OrderedSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.elements.serialize(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GcdWitness {
    pub x: u64,
    pub y: u64,
    pub gcd: u64,
}

/// Lexicographically smallest pair whose gcd is missing from `set`.
pub fn gcd_closure_violation(set: &OrderedSet) -> Option<GcdWitness> {
    let xs = set.elements();
    for (i, &x) in xs.iter().enumerate() {
        for &y in &xs[i + 1..] {
            let g = gcd(x, y);
            if !set.contains(g) {
                return Some(GcdWitness { x, y, gcd: g });
            }
        }
    }
    None
}

pub fn is_gcd_closed(set: &OrderedSet) -> bool {
    gcd_closure_violation(set).is_none()
}

/// Smallest gcd-closed superset.
pub fn gcd_closure(set: &OrderedSet) -> OrderedSet {
    let mut elements = set.elements().to_vec();
    loop {
        let mut fresh: Vec<u64> = Vec::new();
        for (i, &x) in elements.iter().enumerate() {
            for &y in &elements[i + 1..] {
                let g = gcd(x, y);
                if elements.binary_search(&g).is_err() {
                    fresh.push(g);
                }
            }
        }
        if fresh.is_empty() {
            return OrderedSet { elements };
        }
        elements.extend(fresh);
        elements.sort_unstable();
        elements.dedup();
    }
}

pub fn is_factor_closed(set: &OrderedSet) -> bool {
    set.iter().all(|x| divisors(x).into_iter().all(|d| set.contains(d)))
}

pub fn is_divisor_chain(set: &OrderedSet) -> bool {
    set.elements().windows(2).all(|w| w[1] % w[0] == 0)
}

/// `G_S(x)`: the elements `d < x` of `S` dividing `x` with no element of `S`
/// strictly between them in the divisibility order. Ascending.
pub fn greatest_type_divisors(set: &OrderedSet, x: u64) -> Result<Vec<u64>> {
    if !set.contains(x) {
        return Err(Error::ElementNotInSet(x));
    }
    Ok(gtds_unchecked(set.elements(), x))
}

fn gtds_unchecked(xs: &[u64], x: u64) -> Vec<u64> {
    let below: Vec<u64> = xs.iter().copied().filter(|&d| d < x && x % d == 0).collect();
    below
        .iter()
        .copied()
        .filter(|&d| !below.iter().any(|&y| y != d && y % d == 0))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ConditionGFailure {
    /// `[y1, y2] != x`.
    LcmMismatch { lcm: u64 },
    /// `(y1, y2)` is not a greatest-type divisor of both `y1` and `y2`.
    GcdNotCommonGtd { gcd: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionGViolation {
    pub element: u64,
    pub y1: u64,
    pub y2: u64,
    pub reason: ConditionGFailure,
}

/// Checks condition G at `x` given the full gtd map of the set. Returns the
/// first failing pair in lexicographic order.
fn condition_g_at(gtd_map: &BTreeMap<u64, Vec<u64>>, x: u64) -> Option<ConditionGViolation> {
    let g = &gtd_map[&x];
    for (i, &y1) in g.iter().enumerate() {
        for &y2 in &g[i + 1..] {
            // lcm of two divisors of x never exceeds x
            let l = lcm(y1, y2).expect("lcm of divisors of x fits");
            if l != x {
                return Some(ConditionGViolation { element: x, y1, y2, reason: ConditionGFailure::LcmMismatch { lcm: l } });
            }
            let d = gcd(y1, y2);
            let in_both = gtd_map.get(&y1).is_some_and(|v| v.contains(&d)) && gtd_map.get(&y2).is_some_and(|v| v.contains(&d));
            if !in_both {
                return Some(ConditionGViolation { element: x, y1, y2, reason: ConditionGFailure::GcdNotCommonGtd { gcd: d } });
            }
        }
    }
    None
}

pub fn gtd_map(set: &OrderedSet) -> BTreeMap<u64, Vec<u64>> {
    set.iter().map(|x| (x, gtds_unchecked(set.elements(), x))).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub set: OrderedSet,
    pub gcd_closed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gcd_violation: Option<GcdWitness>,
    pub factor_closed: bool,
    pub divisor_chain: bool,
    pub gtd_map: BTreeMap<u64, Vec<u64>>,
    pub max_gtd: usize,
    #[serde(rename = "condition_G")]
    pub condition_g: bool,
    /// One entry per element failing condition G.
    pub violations: Vec<ConditionGViolation>,
}

impl StructureReport {
    /// Whether `x` on its own satisfies condition G.
    pub fn element_satisfies_g(&self, x: u64) -> bool {
        !self.violations.iter().any(|v| v.element == x)
    }

    pub fn gtds(&self, x: u64) -> &[u64] {
        self.gtd_map.get(&x).map(Vec::as_slice).unwrap_or(&[])
    }
}

pub fn analyze(set: &OrderedSet) -> StructureReport {
    let gcd_violation = gcd_closure_violation(set);
    let map = gtd_map(set);
    let max_gtd = map.values().map(Vec::len).max().unwrap_or(0);
    let violations: Vec<_> = set.iter().filter_map(|x| condition_g_at(&map, x)).collect();
    StructureReport {
        set: set.clone(),
        gcd_closed: gcd_violation.is_none(),
        gcd_violation,
        factor_closed: is_factor_closed(set),
        divisor_chain: is_divisor_chain(set),
        gtd_map: map,
        max_gtd,
        condition_g: violations.is_empty(),
        violations,
    }
}

pub fn satisfies_condition_g(set: &OrderedSet) -> bool {
    let map = gtd_map(set);
    set.iter().all(|x| condition_g_at(&map, x).is_none())
}

/// Condition G evaluated on `{u in S : lo | u | hi}` as a set of its own.
pub fn sub_poset_condition_g(set: &OrderedSet, lo: u64, hi: u64) -> Result<bool> {
    for v in [lo, hi] {
        if !set.contains(v) {
            return Err(Error::ElementNotInSet(v));
        }
    }
    if hi % lo != 0 {
        return Err(Error::NotDivisible { lo, hi });
    }
    Ok(satisfies_condition_g(&set.interval(lo, hi)))
}

/// Join property of greatest-type divisors: for gcd-closed `S` with
/// `max |G_S| = 2`, `x` with `|G_S(x)| = 2` satisfying condition G in `S`,
/// `y in G_S(x)`, and `z | x`, `z != x`, `z ∤ y` such that
/// `{u in S : z | u | x, u != z}` satisfies condition G, we get `[y, z] = x`.
///
/// Returns `None` when a hypothesis fails, otherwise whether the conclusion
/// holds. Without the requirement that `x` itself satisfies condition G the
/// conclusion can fail: `S = {1,2,3,12}`, `x = 12`, `y = 3`, `z = 2`.
pub fn gtd_join_check(set: &OrderedSet, x: u64, y: u64, z: u64) -> Result<Option<bool>> {
    for v in [x, y, z] {
        if !set.contains(v) {
            return Err(Error::ElementNotInSet(v));
        }
    }
    let report = analyze(set);
    let g = report.gtds(x);
    let hypotheses = report.gcd_closed
        && report.max_gtd == 2
        && g.len() == 2
        && g.contains(&y)
        && report.element_satisfies_g(x)
        && x % z == 0
        && z != x
        && y % z != 0;
    if !hypotheses {
        return Ok(None);
    }
    let rest = OrderedSet { elements: set.iter().filter(|&u| u != z && u % z == 0 && x % u == 0).collect() };
    if !satisfies_condition_g(&rest) {
        return Ok(None);
    }
    Ok(Some(lcm(y, z) == Some(x)))
}

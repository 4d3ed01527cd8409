use rayon::prelude::*;
use serde::Serialize;

use crate::arith::gcd;
use crate::divisibility::{pair_verdict, PairKind};
use crate::error::{Error, Result};
use crate::structure::{analyze, OrderedSet};

/// Filter on `max_x |G_S(x)|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GtdFilter {
    Exactly(usize),
    AtMost(usize),
}

impl GtdFilter {
    fn accepts(self, max_gtd: usize) -> bool {
        match self {
            GtdFilter::Exactly(n) => max_gtd == n,
            GtdFilter::AtMost(n) => max_gtd <= n,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchParams {
    pub min_size: usize,
    pub max_size: usize,
    pub max_element: u64,
    pub exponents: Vec<(u32, u32)>,
    pub max_gtd: Option<GtdFilter>,
    pub condition_g: Option<bool>,
    pub pairs: Vec<PairKind>,
    /// Report every verdict, not only those where divisibility holds.
    pub include_misses: bool,
}

impl Default for SearchParams {
    fn default() -> Self {
        SearchParams {
            min_size: 1,
            max_size: 5,
            max_element: 60,
            exponents: vec![(1, 2)],
            max_gtd: None,
            condition_g: None,
            pairs: PairKind::ALL.to_vec(),
            include_misses: false,
        }
    }
}

impl SearchParams {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::HypothesisViolated(m.to_string()));
        if self.min_size == 0 || self.max_size < self.min_size {
            return bad("size bounds must satisfy 1 <= min <= max");
        }
        if self.max_element == 0 {
            return bad("max_element must be positive");
        }
        if self.exponents.is_empty() || self.exponents.iter().any(|&(a, b)| a == 0 || b == 0) {
            return bad("exponent pairs must be nonempty and positive");
        }
        if self.pairs.is_empty() {
            return bad("at least one pair kind is required");
        }
        Ok(())
    }

    fn accepts(&self, max_gtd: usize, condition_g: bool) -> bool {
        self.max_gtd.is_none_or(|f| f.accepts(max_gtd)) && self.condition_g.is_none_or(|c| c == condition_g)
    }
}

/// Every gcd-closed subset of `{1..=max_element}` with size in `min..=max`,
/// by size and then lexicographically.
///
/// Sets are grown in ascending order; a new element is admissible iff its gcd
/// with each chosen element is already chosen. Every prefix of a sorted
/// gcd-closed set is itself gcd closed, so this yields exactly the gcd-closed
/// sets.
pub struct GcdClosedSets {
    max_element: u64,
    size: usize,
    max_size: usize,
    current: Vec<u64>,
    next_candidate: u64,
}

impl GcdClosedSets {
    pub fn new(min_size: usize, max_size: usize, max_element: u64) -> Self {
        GcdClosedSets { max_element, size: min_size.max(1), max_size, current: Vec::new(), next_candidate: 1 }
    }

    fn admissible(&self, c: u64) -> bool {
        self.current.iter().all(|&y| self.current.binary_search(&gcd(y, c)).is_ok())
    }
}

impl Iterator for GcdClosedSets {
    type Item = OrderedSet;

    fn next(&mut self) -> Option<OrderedSet> {
        while self.size <= self.max_size {
            if self.current.len() == self.size {
                let out = OrderedSet::from_sorted_unchecked(self.current.clone());
                self.next_candidate = self.current.pop().expect("size >= 1") + 1;
                return Some(out);
            }
            let remaining = (self.size - self.current.len()) as u64;
            let last_start = self.max_element.saturating_sub(remaining - 1);
            let found = (self.next_candidate..=last_start).find(|&c| self.admissible(c));
            match found {
                Some(c) => {
                    self.current.push(c);
                    self.next_candidate = c + 1;
                }
                None => match self.current.pop() {
                    Some(last) => self.next_candidate = last + 1,
                    None => {
                        self.size += 1;
                        self.next_candidate = 1;
                    }
                },
            }
        }
        None
    }
}

/// Gcd-closed candidates passing the structural filters of `params`.
pub fn enumerate_gcd_closed(params: &SearchParams) -> impl Iterator<Item = OrderedSet> + '_ {
    GcdClosedSets::new(params.min_size, params.max_size, params.max_element).filter(move |s| {
        let r = analyze(s);
        params.accepts(r.max_gtd, r.condition_g)
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FindingStructure {
    pub max_gtd: usize,
    #[serde(rename = "condition_G")]
    pub condition_g: bool,
}

/// One JSON line of search output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Finding {
    pub set: OrderedSet,
    pub a: u32,
    pub b: u32,
    pub pair: PairKind,
    /// `null` when the divisor matrix is singular.
    pub divides: Option<bool>,
    pub structure: FindingStructure,
}

fn evaluate(set: &OrderedSet, params: &SearchParams) -> Result<Vec<Finding>> {
    let report = analyze(set);
    let structure = FindingStructure { max_gtd: report.max_gtd, condition_g: report.condition_g };
    let xs = set.elements();
    let mut out = Vec::new();
    for &(a, b) in &params.exponents {
        for &pair in &params.pairs {
            let divides = pair_verdict(xs, a, b, pair)?.divides();
            if params.include_misses || divides == Some(true) {
                out.push(Finding { set: set.clone(), a, b, pair, divides, structure: structure.clone() });
            }
        }
    }
    Ok(out)
}

/// Runs the requested quotient tests on every candidate. Candidates are
/// evaluated in parallel; output order is canonical (size, elements, a, b,
/// pair) regardless of scheduling.
pub fn search(params: &SearchParams) -> Result<Vec<Finding>> {
    params.validate()?;
    let candidates: Vec<OrderedSet> = enumerate_gcd_closed(params).collect();
    let nested = candidates.par_iter().map(|s| evaluate(s, params)).collect::<Result<Vec<_>>>()?;
    let mut findings: Vec<Finding> = nested.into_iter().flatten().collect();
    findings.sort_by(|x, y| {
        (x.set.len(), x.set.elements(), x.a, x.b, x.pair).cmp(&(y.set.len(), y.set.elements(), y.a, y.b, y.pair))
    });
    Ok(findings)
}

//! Formula-versus-enumeration sweeps for one `(A, N)` instance.

use std::fmt;

use crate::arith::{chain_tally, divisors, power, Natural, SignedNatural};
use crate::cyclecount::{strings_of_order_recursive, CycleCounter};
use crate::enumerate::{classify_all, epicycle_construction_check, Classification};
use crate::error::Result;
use crate::sumcount::max_sum;

/// Outcome of one named check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub comparisons: usize,
    pub failure: Option<String>,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => write!(f, "PASS {} ({} comparisons)", self.name, self.comparisons),
            Some(why) => write!(f, "FAIL {}: {}", self.name, why),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub alphabet: u64,
    pub length: u64,
    pub checks: Vec<CheckOutcome>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(CheckOutcome::passed)
    }
}

/// Collects comparisons for one check, keeping the first disagreement.
struct Check {
    name: &'static str,
    comparisons: usize,
    failure: Option<String>,
}

impl Check {
    fn new(name: &'static str) -> Self {
        Check { name, comparisons: 0, failure: None }
    }

    fn compare<T: PartialEq + fmt::Display>(&mut self, what: impl FnOnce() -> String, expected: T, found: Result<T>) {
        self.comparisons += 1;
        if self.failure.is_some() {
            return;
        }
        match found {
            Ok(v) if v == expected => {}
            Ok(v) => self.failure = Some(format!("{}: expected {}, got {}", what(), expected, v)),
            Err(e) => self.failure = Some(format!("{}: {}", what(), e)),
        }
    }

    fn finish(self) -> CheckOutcome {
        CheckOutcome { name: self.name, comparisons: self.comparisons, failure: self.failure }
    }
}

/// Runs every check for `S(A, N)`. Fails only if the instance is malformed
/// or exceeds `budget`; disagreements are reported as failed checks.
pub fn run(alphabet: u64, length: u64, budget: u64, counter: &CycleCounter) -> Result<VerifyReport> {
    let census = classify_all(alphabet, length, budget)?;
    let epicycles_ok = epicycle_construction_check(alphabet, length, budget)?;
    let ds = divisors(length)?;
    let top = max_sum(alphabet, length) as u64;

    let mut checks = Vec::new();

    let mut c = Check::new("enumeration covers all strings");
    c.compare(|| "total".into(), power(alphabet, length), Ok(Natural::from(census.total_strings())));
    checks.push(c.finish());

    let mut c = Check::new("strings = order x cycles in every cell");
    for (&(m, n), cell) in &census.cells {
        c.compare(|| format!("M={m} n={n}"), cell.cycles * n, Ok(cell.strings));
    }
    checks.push(c.finish());

    checks.push(cells_against_closed_form(&census, &ds, top, counter));

    let mut c = Check::new("closed form vs recursion");
    for m in 0..=top {
        let recursive = strings_of_order_recursive(alphabet, length, m);
        let full = counter.strings_of_order_full(alphabet, length, m);
        match recursive {
            Ok(r) => c.compare(|| format!("M={m}"), r, full),
            Err(e) => c.compare(|| format!("M={m} (recursion)"), Natural::default(), Err(e)),
        }
    }
    checks.push(c.finish());

    let mut c = Check::new("order totals vs enumeration");
    let by_order = census.by_order();
    for &n in &ds {
        let seen = by_order.get(&n).map_or(0, |cell| cell.strings);
        c.compare(|| format!("n={n}"), Natural::from(seen), counter.strings_of_order_total(alphabet, n));
    }
    checks.push(c.finish());

    let mut c = Check::new("chain tally vs coefficient");
    for &k in &ds {
        let tally = chain_tally(k).map(|t| t.delta);
        match tally {
            Ok(delta) => c.compare(|| format!("K={k}"), delta, counter.coefficient(k).map(SignedNatural::from)),
            Err(e) => c.compare(|| format!("K={k}"), SignedNatural::default(), Err(e)),
        }
    }
    checks.push(c.finish());

    let mut c = Check::new("epicycles are repeated proper cycles");
    c.comparisons = 1;
    if !epicycles_ok {
        c.failure = Some("construction does not match enumeration".into());
    }
    checks.push(c.finish());

    Ok(VerifyReport { alphabet, length, checks })
}

fn cells_against_closed_form(census: &Classification, ds: &[u64], top: u64, counter: &CycleCounter) -> CheckOutcome {
    let (a, len) = (census.alphabet, census.length);
    let mut c = Check::new("enumeration vs closed form");
    for m in 0..=top {
        for &n in ds {
            let cell = census.cell(m, n);
            let formula = counter.strings_of_order(a, len, m, n);
            c.compare(|| format!("strings M={m} n={n}"), Natural::from(cell.strings), formula.clone());
            c.compare(|| format!("cycles M={m} n={n}"), Natural::from(cell.cycles), formula.map(|s| s / n));
        }
    }
    c.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::q_coefficient;
    use crate::enumerate::DEFAULT_BUDGET;
    use crate::error::Error;

    #[test]
    fn clean_instances_pass() {
        let counter = CycleCounter::default();
        for (a, n) in [(3, 6), (2, 1), (1, 1), (4, 4), (2, 12)] {
            let report = run(a, n, DEFAULT_BUDGET, &counter).unwrap();
            assert!(report.all_passed(), "{report:?}");
            assert_eq!(report.checks.len(), 7);
        }
    }

    #[test]
    fn budget_is_enforced() {
        let err = run(4, 20, DEFAULT_BUDGET, &CycleCounter::default()).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
    }

    #[test]
    fn wrong_coefficient_is_caught() {
        fn off_by_one(nu: u64) -> Result<i8> {
            Ok(q_coefficient(nu)? + 1)
        }
        let report = run(3, 6, DEFAULT_BUDGET, &CycleCounter::with_coefficient(off_by_one)).unwrap();
        assert!(!report.all_passed());
        let failed: Vec<_> = report.checks.iter().filter(|c| !c.passed()).map(|c| c.name).collect();
        assert!(failed.contains(&"enumeration vs closed form"));
        assert!(failed.contains(&"chain tally vs coefficient"));
        assert!(failed.contains(&"closed form vs recursion"));
    }

    #[test]
    fn outcome_lines() {
        let ok = CheckOutcome { name: "x", comparisons: 3, failure: None };
        assert_eq!(ok.to_string(), "PASS x (3 comparisons)");
        let bad = CheckOutcome { name: "x", comparisons: 3, failure: Some("boom".into()) };
        assert_eq!(bad.to_string(), "FAIL x: boom");
    }
}

//! Brute-force ground truth: explicit strings, the cyclic shift, orbit orders
//! and exhaustive classification of `S(A, N)` by digit sum and order.

use std::collections::{BTreeMap, HashMap, HashSet};

use rayon::prelude::*;

use crate::arith::{divisors, power, Natural};
use crate::error::{require_positive, Error, Result};

/// Default cap on the number of strings an exhaustive pass may visit.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// A string `<a_1, ..., a_N>` over `{0, ..., A-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StringWord {
    symbols: Vec<u32>,
    alphabet: u32,
}

impl StringWord {
    pub fn new(symbols: Vec<u32>, alphabet: u32) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::EmptyWord);
        }
        if let Some(&symbol) = symbols.iter().find(|&&s| s >= alphabet) {
            return Err(Error::SymbolOutOfRange { symbol, alphabet });
        }
        Ok(StringWord { symbols, alphabet })
    }

    pub fn symbols(&self) -> &[u32] {
        &self.symbols
    }

    pub fn alphabet(&self) -> u32 {
        self.alphabet
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn digit_sum(&self) -> u64 {
        self.symbols.iter().map(|&s| u64::from(s)).sum()
    }

    /// `<a_N, a_1, ..., a_{N-1}>`.
    pub fn shift(&self) -> StringWord {
        let mut symbols = self.symbols.clone();
        symbols.rotate_right(1);
        StringWord { symbols, alphabet: self.alphabet }
    }

    /// Number of distinct strings in the orbit of this word.
    pub fn word_order(&self) -> usize {
        let ds = divisors(self.len() as u64).expect("word is non-empty");
        rotation_order(&self.symbols, &ds)
    }

    /// Lexicographically least rotation.
    pub fn canonical_rotation(&self) -> StringWord {
        let mut symbols = self.symbols.clone();
        symbols.rotate_left(least_rotation(&self.symbols));
        StringWord { symbols, alphabet: self.alphabet }
    }

    pub fn orbit(&self) -> Orbit {
        Orbit {
            representative: self.canonical_rotation(),
            order: self.word_order(),
            sum: self.digit_sum(),
        }
    }
}

/// A cycle, identified by its least rotation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Orbit {
    pub representative: StringWord,
    pub order: usize,
    pub sum: u64,
}

/// Smallest `d` among `divisors` (ascending, divisors of the length) such that
/// rotating by `d` fixes the word.
fn rotation_order(symbols: &[u32], divisors: &[u64]) -> usize {
    let n = symbols.len();
    for &d in divisors {
        let d = d as usize;
        if (0..n - d).all(|i| symbols[i] == symbols[i + d]) {
            return d;
        }
    }
    n
}

/// Start index of the lexicographically least rotation (two-pointer scan).
pub fn least_rotation(symbols: &[u32]) -> usize {
    let n = symbols.len();
    let (mut i, mut j, mut k) = (0usize, 1usize, 0usize);
    while i < n && j < n && k < n {
        let a = symbols[(i + k) % n];
        let b = symbols[(j + k) % n];
        if a == b {
            k += 1;
            continue;
        }
        if a > b {
            i += k + 1;
        } else {
            j += k + 1;
        }
        if i == j {
            j += 1;
        }
        k = 0;
    }
    i.min(j)
}

/// If the word is its own least rotation, returns its order.
///
/// Prenecklace scan: `p` tracks the period of the longest Lyndon prefix; the
/// word is a necklace iff the scan never sees a descent and `p` divides the
/// length, and then `p` is the smallest period.
pub fn necklace_order(symbols: &[u32]) -> Option<usize> {
    let n = symbols.len();
    let mut p = 1;
    for j in 1..n {
        match symbols[j - p].cmp(&symbols[j]) {
            std::cmp::Ordering::Less => p = j + 1,
            std::cmp::Ordering::Greater => return None,
            std::cmp::Ordering::Equal => {}
        }
    }
    (n % p == 0).then_some(p)
}

fn check_budget(alphabet: u64, length: u64, budget: u64) -> Result<()> {
    require_positive(alphabet, "alphabet")?;
    require_positive(length, "length")?;
    let requested = power(alphabet, length);
    if requested > Natural::from(budget) || alphabet > u64::from(u32::MAX) {
        return Err(Error::BudgetExceeded { requested, limit: budget });
    }
    Ok(())
}

/// All words of the given shape, in odometer order.
pub fn words(alphabet: u32, length: usize) -> impl Iterator<Item = StringWord> {
    let mut current = (alphabet > 0 && length > 0).then(|| vec![0u32; length]);
    std::iter::from_fn(move || {
        let word = current.as_ref()?.clone();
        if !advance(current.as_mut().unwrap(), alphabet) {
            current = None;
        }
        Some(StringWord { symbols: word, alphabet })
    })
}

/// Steps an odometer; false once it wraps around.
fn advance(digits: &mut [u32], alphabet: u32) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < alphabet {
            return true;
        }
        *d = 0;
    }
    false
}

/// Number of cycles and strings in one `(sum, order)` cell.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Cell {
    pub cycles: u64,
    pub strings: u64,
}

/// Exhaustive census of `S(A, N)` keyed by `(digit sum, order)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub alphabet: u64,
    pub length: u64,
    pub cells: BTreeMap<(u64, u64), Cell>,
}

impl Classification {
    pub fn cell(&self, sum: u64, order: u64) -> Cell {
        self.cells.get(&(sum, order)).copied().unwrap_or_default()
    }

    pub fn total_strings(&self) -> u64 {
        self.cells.values().map(|c| c.strings).sum()
    }

    /// Cycle and string counts per order, summed over all digit sums.
    pub fn by_order(&self) -> BTreeMap<u64, Cell> {
        let mut out: BTreeMap<u64, Cell> = BTreeMap::new();
        for (&(_, order), c) in &self.cells {
            let e = out.entry(order).or_default();
            e.cycles += c.cycles;
            e.strings += c.strings;
        }
        out
    }
}

/// Visits every string of length `N` and tallies it by digit sum and order.
///
/// Strings are counted per cell by their own order; cycles are counted once,
/// at the string that is its own least rotation. Work is split by prefix and
/// merged; memory is proportional to the number of cells.
pub fn classify_all(alphabet: u64, length: u64, budget: u64) -> Result<Classification> {
    check_budget(alphabet, length, budget)?;
    let a = alphabet as u32;
    let n = length as usize;
    let ds = divisors(length)?;
    let order_slot: HashMap<u64, usize> = ds.iter().enumerate().map(|(i, &d)| (d, i)).collect();
    let sums = n * (a as usize - 1) + 1;
    let slots = sums * ds.len();

    // Enough prefixes to keep every worker busy.
    let mut prefix_len = 0usize;
    let mut prefixes = 1u64;
    while prefix_len < n && prefixes < 256 {
        prefix_len += 1;
        prefixes *= alphabet;
    }

    let tally = (0..prefixes)
        .into_par_iter()
        .fold(
            || vec![Cell::default(); slots],
            |mut acc, code| {
                let mut word = vec![0u32; n];
                let mut c = code;
                for slot in word[..prefix_len].iter_mut().rev() {
                    *slot = (c % alphabet) as u32;
                    c /= alphabet;
                }
                loop {
                    let sum: usize = word.iter().map(|&s| s as usize).sum();
                    let order = rotation_order(&word, &ds);
                    acc[sum * ds.len() + order_slot[&(order as u64)]].strings += 1;
                    if let Some(p) = necklace_order(&word) {
                        acc[sum * ds.len() + order_slot[&(p as u64)]].cycles += 1;
                    }
                    if !advance(&mut word[prefix_len..], a) {
                        break;
                    }
                }
                acc
            },
        )
        .reduce(
            || vec![Cell::default(); slots],
            |mut x, y| {
                for (l, r) in x.iter_mut().zip(y) {
                    l.cycles += r.cycles;
                    l.strings += r.strings;
                }
                x
            },
        );

    let mut cells = BTreeMap::new();
    for (slot, cell) in tally.into_iter().enumerate() {
        if cell.strings > 0 || cell.cycles > 0 {
            cells.insert(((slot / ds.len()) as u64, ds[slot % ds.len()]), cell);
        }
    }
    Ok(Classification { alphabet, length, cells })
}

/// Checks directly that every epicycle of order `n` is made of `N / n` copies
/// of a word on a proper cycle of length `n`, and that every such proper
/// cycle lifts to exactly one epicycle.
pub fn epicycle_construction_check(alphabet: u64, length: u64, budget: u64) -> Result<bool> {
    check_budget(alphabet, length, budget)?;
    let a = alphabet as u32;
    let n = length as usize;

    let mut found: HashMap<usize, HashSet<Vec<u32>>> = HashMap::new();
    for w in words(a, n) {
        if w.canonical_rotation() != w {
            continue;
        }
        let order = w.word_order();
        if order == n {
            continue;
        }
        let root = StringWord::new(w.symbols[..order].to_vec(), a)?;
        if root.word_order() != order || repeat(&root.symbols, n / order) != w.symbols {
            return Ok(false);
        }
        found.entry(order).or_default().insert(w.symbols);
    }

    for d in divisors(length)? {
        let d = d as usize;
        if d == n {
            continue;
        }
        let mut lifted = HashSet::new();
        let mut proper = 0usize;
        for w in words(a, d) {
            if w.word_order() != d || w.canonical_rotation() != w {
                continue;
            }
            proper += 1;
            let lift = StringWord::new(repeat(&w.symbols, n / d), a)?;
            if lift.word_order() != d {
                return Ok(false);
            }
            lifted.insert(lift.canonical_rotation().symbols);
        }
        let expected = found.remove(&d).unwrap_or_default();
        if lifted.len() != proper || lifted != expected {
            return Ok(false);
        }
    }
    Ok(found.is_empty())
}

fn repeat(symbols: &[u32], times: usize) -> Vec<u32> {
    symbols.repeat(times)
}

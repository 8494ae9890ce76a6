//! Primitive hyperbolic classes of PSL(2,Z) as aperiodic cyclic words in the
//! parabolic generators L = [[1,1],[0,1]] and R = [[1,0],[1,1]].
//!
//! A word of length ℓ containing both letters has trace ≥ ℓ + 1, so all classes
//! of trace ≤ T are words of length ≤ T − 1. Traces only grow when a letter is
//! appended, which lets the search prune on the prefix trace.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const GENERATOR_CONVENTION: &str = "L=[[1,1],[0,1]],R=[[1,0],[1,1]]";
pub const CACHE_VERSION: u32 = 1;
pub const MODULAR_GROUP: &str = "modular";
/// Default ceiling on the number of enumerated classes.
pub const DEFAULT_CAPACITY: usize = 50_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    L,
    R,
}

impl Letter {
    fn matrix(self) -> Mat {
        match self {
            Letter::L => [[1, 1], [0, 1]],
            Letter::R => [[1, 0], [1, 1]],
        }
    }
}

/// A finite word over {L, R}.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(pub Vec<Letter>);

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            f.write_str(match l {
                Letter::L => "L",
                Letter::R => "R",
            })?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                'L' | 'l' => Ok(Letter::L),
                'R' | 'r' => Ok(Letter::R),
                other => Err(Error::Domain(format!(
                    "invalid letter {other:?} in word {s:?}"
                ))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}

impl Word {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Lexicographically least rotation.
    pub fn canonical(&self) -> Word {
        let n = self.0.len();
        if n == 0 {
            return self.clone();
        }
        let best = (0..n)
            .min_by(|&a, &b| {
                (0..n)
                    .map(|i| self.0[(a + i) % n])
                    .cmp((0..n).map(|i| self.0[(b + i) % n]))
            })
            .unwrap_or(0);
        Word((0..n).map(|i| self.0[(best + i) % n]).collect())
    }

    /// True when the word is not a proper power of a shorter word.
    pub fn is_aperiodic(&self) -> bool {
        let n = self.0.len();
        (1..n)
            .filter(|d| n % d == 0)
            .all(|d| (d..n).any(|i| self.0[i] != self.0[i - d]))
    }

    fn has_both_letters(&self) -> bool {
        self.0.contains(&Letter::L) && self.0.contains(&Letter::R)
    }

    /// Integer product of the generator matrices along the word.
    pub fn matrix(&self) -> Result<Mat> {
        self.0
            .iter()
            .try_fold(IDENTITY, |acc, l| mat_mul(&acc, &l.matrix()))
    }
}

pub type Mat = [[i128; 2]; 2];
const IDENTITY: Mat = [[1, 0], [0, 1]];

pub fn mat_mul(a: &Mat, b: &Mat) -> Result<Mat> {
    let entry = |i: usize, j: usize| -> Result<i128> {
        a[i][0]
            .checked_mul(b[0][j])
            .and_then(|x| a[i][1].checked_mul(b[1][j]).and_then(|y| x.checked_add(y)))
            .ok_or_else(|| Error::Overflow("2x2 word product".to_string()))
    };
    Ok([[entry(0, 0)?, entry(0, 1)?], [entry(1, 0)?, entry(1, 1)?]])
}

pub fn trace(m: &Mat) -> Result<i128> {
    m[0][0]
        .checked_add(m[1][1])
        .ok_or_else(|| Error::Overflow("trace".to_string()))
}

/// Norm p = ((t + √(t²−4))/2)² of a hyperbolic class of trace t.
pub fn norm_from_trace(t: u64) -> f64 {
    let t = t as f64;
    let root = ((t - 2.0) * (t + 2.0)).sqrt();
    let half = 0.5 * (t + root);
    half * half
}

/// Length log p = 2 arccosh(t/2).
pub fn length_from_trace(t: u64) -> f64 {
    2.0 * (0.5 * t as f64).acosh()
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeodesicClass {
    pub word: Word,
    pub trace: u64,
    pub norm: f64,
    pub length: f64,
}

/// Canonical class of a primitive word containing both letters.
pub fn class_from_word(word: &Word) -> Result<GeodesicClass> {
    if !word.has_both_letters() {
        return Err(Error::SingleLetter(word.to_string()));
    }
    if !word.is_aperiodic() {
        return Err(Error::NonPrimitive(word.to_string()));
    }
    let canonical = word.canonical();
    let t = trace(&canonical.matrix()?)?;
    let t = u64::try_from(t).map_err(|_| Error::Overflow(format!("trace of {word}")))?;
    Ok(GeodesicClass {
        word: canonical,
        trace: t,
        norm: norm_from_trace(t),
        length: length_from_trace(t),
    })
}

/// Aperiodic binary necklaces of the given length containing both letters.
pub fn necklace_count(length: u32) -> u64 {
    if length < 2 {
        return 0;
    }
    let n = length as u64;
    let total: i128 = (1..=n)
        .filter(|d| n % d == 0)
        .map(|d| mobius(d) as i128 * (1i128 << (n / d)))
        .sum();
    (total / n as i128) as u64
}

fn mobius(mut n: u64) -> i32 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

#[derive(Debug, Clone, PartialEq)]
pub struct LengthSpectrum {
    /// Sorted by (trace, word).
    pub classes: Vec<GeodesicClass>,
    pub max_trace: u32,
    pub group_label: String,
}

impl LengthSpectrum {
    /// Number of classes with trace t.
    pub fn multiplicity(&self, t: u64) -> usize {
        let lo = self.classes.partition_point(|c| c.trace < t);
        let hi = self.classes.partition_point(|c| c.trace <= t);
        hi - lo
    }

    pub fn shells(&self) -> ShellTable {
        let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
        for c in &self.classes {
            *counts.entry(c.trace).or_default() += 1;
        }
        ShellTable::from_counts(MODULAR_GROUP, self.max_trace, &counts)
    }
}

/// Enumerate every primitive class with trace ≤ max_trace.
pub fn enumerate(max_trace: u32) -> Result<LengthSpectrum> {
    enumerate_with_capacity(max_trace, DEFAULT_CAPACITY)
}

pub fn enumerate_with_capacity(max_trace: u32, capacity: usize) -> Result<LengthSpectrum> {
    if max_trace < 3 {
        return Err(Error::Domain(format!(
            "max_trace must be >= 3, got {max_trace}"
        )));
    }
    let limit = max_trace as i128;
    let max_len = (max_trace - 1) as usize;
    // Lyndon words start with L and end with R; branch on the leading run L^a R.
    let mut classes: Vec<GeodesicClass> = (1..max_len)
        .into_par_iter()
        .map(|a| {
            let mut out = Vec::new();
            let mut word = vec![Letter::L; a];
            word.push(Letter::R);
            let mut m = IDENTITY;
            for &l in &word {
                m = mat_mul(&m, &l.matrix())?;
            }
            if trace(&m)? <= limit {
                search(&mut word, m, a + 1, max_len, limit, capacity, &mut out)?;
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    if classes.len() > capacity {
        return Err(Error::Capacity { limit: capacity });
    }
    classes.par_sort_unstable_by(|x, y| x.trace.cmp(&y.trace).then_with(|| x.word.cmp(&y.word)));
    Ok(LengthSpectrum {
        classes,
        max_trace,
        group_label: MODULAR_GROUP.to_string(),
    })
}

/// Prenecklace extension (Fredricksen–Kessler–Maiorana) with trace pruning.
/// `period` is the length of the longest Lyndon prefix period of `word`.
fn search(
    word: &mut Vec<Letter>,
    m: Mat,
    period: usize,
    max_len: usize,
    limit: i128,
    capacity: usize,
    out: &mut Vec<GeodesicClass>,
) -> Result<()> {
    let n = word.len();
    if n == period {
        let t = trace(&m)?;
        if t <= limit {
            let t = t as u64;
            out.push(GeodesicClass {
                word: Word(word.clone()),
                trace: t,
                norm: norm_from_trace(t),
                length: length_from_trace(t),
            });
            if out.len() > capacity {
                return Err(Error::Capacity { limit: capacity });
            }
        }
    }
    if n == max_len {
        return Ok(());
    }
    let forced = word[n - period];
    for l in [forced, Letter::R] {
        let next = mat_mul(&m, &l.matrix())?;
        // the trace of any extension dominates the trace of its prefix
        if trace(&next)? > limit {
            continue;
        }
        let p = if l == forced { period } else { n + 1 };
        word.push(l);
        let r = search(word, next, p, max_len, limit, capacity, out);
        word.pop();
        r?;
        if forced == Letter::R {
            break;
        }
    }
    Ok(())
}

/// Per-trace class counts, the only data the Euler products consume.
#[derive(Debug, Clone, PartialEq)]
pub struct ShellTable {
    pub group: String,
    pub max_trace: u32,
    pub shells: Vec<Shell>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Shell {
    pub trace: u64,
    pub count: u64,
    pub length: f64,
    pub norm: f64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheMetadata {
    pub group: String,
    pub max_trace: u32,
    pub generator_convention: String,
    pub version: u32,
}

impl CacheMetadata {
    pub fn modular(max_trace: u32) -> Self {
        CacheMetadata {
            group: MODULAR_GROUP.to_string(),
            max_trace,
            generator_convention: GENERATOR_CONVENTION.to_string(),
            version: CACHE_VERSION,
        }
    }
}

impl ShellTable {
    /// One row per trace 3..=max_trace, zero counts included.
    pub fn from_counts(group: &str, max_trace: u32, counts: &BTreeMap<u64, u64>) -> Self {
        let shells = (3..=max_trace as u64)
            .map(|t| Shell {
                trace: t,
                count: counts.get(&t).copied().unwrap_or(0),
                length: length_from_trace(t),
                norm: norm_from_trace(t),
            })
            .collect();
        ShellTable {
            group: group.to_string(),
            max_trace,
            shells,
        }
    }

    pub fn class_count(&self) -> u64 {
        self.shells.iter().map(|s| s.count).sum()
    }

    /// Restriction to traces ≤ max_trace.
    pub fn truncated(&self, max_trace: u32) -> ShellTable {
        ShellTable {
            group: self.group.clone(),
            max_trace: max_trace.min(self.max_trace),
            shells: self
                .shells
                .iter()
                .filter(|s| s.trace <= max_trace as u64)
                .copied()
                .collect(),
        }
    }

    pub fn metadata(&self) -> CacheMetadata {
        CacheMetadata {
            group: self.group.clone(),
            max_trace: self.max_trace,
            generator_convention: GENERATOR_CONVENTION.to_string(),
            version: CACHE_VERSION,
        }
    }

    /// Rows `trace,count,length,norm`, optionally preceded by that header line.
    pub fn write_csv<W: std::io::Write>(&self, w: W, header: bool) -> Result<()> {
        let mut wr = csv::WriterBuilder::new().has_headers(header).from_writer(w);
        for s in &self.shells {
            wr.serialize(s).map_err(|e| Error::Cache(e.to_string()))?;
        }
        wr.flush().map_err(|e| Error::Cache(e.to_string()))
    }

    /// Writes `path` (CSV) and `path.json` (metadata).
    pub fn save(&self, path: &Path) -> Result<()> {
        let file = fs::File::create(path).map_err(|e| Error::Cache(e.to_string()))?;
        self.write_csv(file, true)?;
        let meta = serde_json::to_string_pretty(&self.metadata())
            .map_err(|e| Error::Cache(e.to_string()))?;
        fs::write(metadata_path(path), meta).map_err(|e| Error::Cache(e.to_string()))
    }

    /// Reads a cache back; `None` when absent or when metadata differs from `expected`.
    pub fn load(path: &Path, expected: &CacheMetadata) -> Result<Option<ShellTable>> {
        let meta_path = metadata_path(path);
        if !path.exists() || !meta_path.exists() {
            return Ok(None);
        }
        let text = fs::read_to_string(&meta_path).map_err(|e| Error::Cache(e.to_string()))?;
        let meta: CacheMetadata = match serde_json::from_str(&text) {
            Ok(m) => m,
            Err(_) => return Ok(None),
        };
        if &meta != expected {
            return Ok(None);
        }
        let mut rd = csv::Reader::from_path(path).map_err(|e| Error::Cache(e.to_string()))?;
        let shells = rd
            .deserialize()
            .collect::<std::result::Result<Vec<Shell>, _>>()
            .map_err(|e| Error::Cache(e.to_string()))?;
        let expected_rows = expected.max_trace.saturating_sub(2) as usize;
        if shells.len() != expected_rows || shells.iter().zip(3u64..).any(|(s, t)| s.trace != t) {
            return Err(Error::Cache(format!(
                "{} does not hold one row per trace 3..={}",
                path.display(),
                expected.max_trace
            )));
        }
        Ok(Some(ShellTable {
            group: meta.group,
            max_trace: meta.max_trace,
            shells,
        }))
    }
}

pub fn metadata_path(path: &Path) -> std::path::PathBuf {
    let mut os = path.as_os_str().to_owned();
    os.push(".json");
    os.into()
}

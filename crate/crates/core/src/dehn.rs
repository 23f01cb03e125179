//! Cyclic presentations `⟨a₁, …, a_l | a₁ⁿ a₂ⁿ ⋯ a_lⁿ, n ∈ T⟩`, their
//! small-cancellation certificates and Dehn's algorithm.
//!
//! Letters are nonzero `i32`: `k` is `a_k` and `-k` its inverse.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intsets::{GodelSet, PeriodicSet};

pub type Word = Vec<i32>;

/// The exponent set `T`.
#[derive(Clone, Debug)]
pub enum ExponentSet {
    Periodic(PeriodicSet),
    Godel(GodelSet),
}

impl ExponentSet {
    pub fn contains(&self, n: i64) -> Result<bool> {
        match self {
            ExponentSet::Periodic(s) => Ok(s.contains(n)),
            ExponentSet::Godel(g) => g.contains(n),
        }
    }

    /// Largest `|n|` whose membership is decided.
    pub fn decided_up_to(&self) -> i64 {
        match self {
            ExponentSet::Periodic(_) => i64::MAX,
            ExponentSet::Godel(g) => g.decided_up_to(),
        }
    }
}

/// JSON form: `{"modulus": n, "residues": [...]}` for a periodic set, or
/// `{"kind": "godel", "S": [...], "known_digits": d, "include_zero": true}`.
/// Without `known_digits` the digit set is finite.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct ExponentSetFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residues: Option<Vec<i64>>,
    #[serde(default, rename = "S", alias = "digits", skip_serializing_if = "Option::is_none")]
    pub digits: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub known_digits: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub include_zero: Option<bool>,
}

impl ExponentSetFile {
    pub fn build(&self) -> Result<ExponentSet> {
        match self.kind.as_deref().unwrap_or("periodic") {
            "periodic" => {
                let modulus = self.modulus.ok_or_else(|| Error::Parse("periodic set needs `modulus`".into()))?;
                if modulus == 0 {
                    return Err(Error::Invalid("modulus must be at least 1".into()));
                }
                let residues = self.residues.clone().unwrap_or_default();
                Ok(ExponentSet::Periodic(PeriodicSet::from_residues(modulus, residues)))
            }
            "godel" => {
                let digits = self.digits.clone().ok_or_else(|| Error::Parse("godel set needs `S`".into()))?;
                let g = match self.known_digits {
                    Some(k) => GodelSet::from_window(digits, k)?,
                    None => GodelSet::finite(digits),
                };
                Ok(ExponentSet::Godel(g.with_zero(self.include_zero.unwrap_or(true))))
            }
            other => Err(Error::Parse(format!("unknown set kind `{other}`"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CyclicPresentation {
    l: usize,
    t: ExponentSet,
}

impl CyclicPresentation {
    pub fn new(l: usize, t: ExponentSet) -> Result<Self> {
        if l < 3 {
            return Err(Error::Precondition(format!("cycle length {l} is below 3")));
        }
        if l > i32::MAX as usize {
            return Err(Error::Invalid("cycle length too large".into()));
        }
        Ok(CyclicPresentation { l, t })
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn exponents(&self) -> &ExponentSet {
        &self.t
    }

    /// Largest `m` with `l ≥ 2m + 1`.
    pub fn target_class(&self) -> usize {
        (self.l - 1) / 2
    }

    /// `a₁ⁿ ⋯ a_lⁿ`, whether or not `n ∈ T`.
    pub fn power_word(&self, n: i64) -> Word {
        let sign = n.signum() as i32;
        (1..=self.l as i32).flat_map(|k| std::iter::repeat(k * sign).take(n.unsigned_abs() as usize)).collect()
    }

    /// The relator for `n`, if `n ∈ T` and `n ≠ 0`.
    pub fn relator(&self, n: i64) -> Result<Option<Word>> {
        if n != 0 && self.t.contains(n)? {
            Ok(Some(self.power_word(n)))
        } else {
            Ok(None)
        }
    }

    /// Nonzero exponents in `[-max_abs, max_abs] ∩ T`.
    pub fn exponents_in_window(&self, max_abs: i64) -> Result<Vec<i64>> {
        if max_abs > self.t.decided_up_to() {
            return Err(Error::WindowInsufficient { needed: max_abs, available: self.t.decided_up_to() });
        }
        let mut out = Vec::new();
        for n in -max_abs..=max_abs {
            if n != 0 && self.t.contains(n)? {
                out.push(n);
            }
        }
        Ok(out)
    }

    /// Exponent bound for relators that can matter to a word of length `len`:
    /// more than half of `a₁ⁿ ⋯ a_lⁿ` must fit, so `l|n| < 2·len`.
    pub fn window_for_length(&self, len: usize) -> i64 {
        (2 * len).div_ceil(self.l).saturating_sub(1) as i64
    }
}

impl fmt::Display for CyclicPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<a1..a{} | a1^n ... a{}^n, n in T>", self.l, self.l)
    }
}

pub fn invert(w: &[i32]) -> Word {
    w.iter().rev().map(|&x| -x).collect()
}

pub fn free_reduce(w: &[i32]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &x in w {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

pub fn is_freely_reduced(w: &[i32]) -> bool {
    w.windows(2).all(|p| p[0] != -p[1])
}

/// Parses `a1 a2^-1 a3^2`; `A3` is accepted for `a3^-1`.
pub fn parse_word(l: usize, s: &str) -> Result<Word> {
    let mut out = Vec::new();
    for tok in s.split_whitespace() {
        let (base, exp) = match tok.split_once('^') {
            Some((b, e)) => (b, e.parse::<i64>().map_err(|_| Error::Parse(format!("bad exponent in `{tok}`")))?),
            None => (tok, 1),
        };
        let (sign, idx) = if let Some(i) = base.strip_prefix('a') {
            (1, i)
        } else if let Some(i) = base.strip_prefix('A') {
            (-1, i)
        } else {
            return Err(Error::Parse(format!("unknown letter `{tok}`")));
        };
        let k: usize = idx.parse().map_err(|_| Error::Parse(format!("bad generator index in `{tok}`")))?;
        if k == 0 || k > l {
            return Err(Error::Parse(format!("generator a{k} outside a1..a{l}")));
        }
        let letter = sign * k as i32 * exp.signum() as i32;
        out.extend(std::iter::repeat(letter).take(exp.unsigned_abs() as usize));
    }
    Ok(out)
}

/// Run-length form: `a1^2 a2^-1`.
pub fn format_word(w: &[i32]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    let mut parts = Vec::new();
    let mut i = 0;
    while i < w.len() {
        let mut j = i;
        while j < w.len() && w[j] == w[i] {
            j += 1;
        }
        let e = (j - i) as i64 * w[i].signum() as i64;
        let k = w[i].abs();
        parts.push(if e == 1 { format!("a{k}") } else { format!("a{k}^{e}") });
        i = j;
    }
    parts.join(" ")
}

#[derive(Clone, Debug, Serialize)]
pub struct Piece {
    pub word: String,
    pub length: usize,
    pub exponents: (i64, i64),
    pub ratio: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SmallCancellationReport {
    pub m: usize,
    pub window: i64,
    pub relators: usize,
    pub longest_piece: usize,
    pub shortest_relator: usize,
    /// Largest `|p| / min(|r|, |r′|)` over pieces `p` of relators `r, r′`.
    pub ratio: f64,
    pub worst: Option<Piece>,
    pub holds: bool,
    /// The certificate covers exponents in the window only.
    pub window_certified: bool,
}

/// Longest common subword of the cyclic words `u` and `v` starting at
/// different places when `u` and `v` are the same relator; capped below the
/// shorter length.
fn longest_piece(u: &[i32], v: &[i32], same: bool) -> (usize, usize) {
    let (a, b) = (u.len(), v.len());
    let cap = a.min(b) - 1;
    let uu: Vec<i32> = u.iter().chain(u).copied().collect();
    let vv: Vec<i32> = v.iter().chain(v).copied().collect();
    let mut next = vec![0usize; 2 * b + 1];
    let mut best = (0, 0);
    for i in (0..2 * a).rev() {
        let mut cur = vec![0usize; 2 * b + 1];
        for j in (0..2 * b).rev() {
            if uu[i] == vv[j] {
                cur[j] = (1 + next[j + 1]).min(cap);
                if i < a && j < b && !(same && i == j) && cur[j] > best.0 {
                    best = (cur[j], i);
                }
            }
        }
        next = cur;
    }
    best
}

/// Checks `C′(1/m)` on the relators with `|n| ≤ window`, comparing every
/// pair of cyclic relators and inverses (each with itself at other offsets).
pub fn small_cancellation_check(pres: &CyclicPresentation, m: usize, window: i64) -> Result<SmallCancellationReport> {
    if m == 0 {
        return Err(Error::Invalid("m must be positive".into()));
    }
    let ns = pres.exponents_in_window(window)?;
    if ns.is_empty() {
        return Err(Error::Precondition(format!("no relators with |n| <= {window}")));
    }
    let mut words: Vec<(i64, Word)> = Vec::new();
    for &n in &ns {
        let r = pres.power_word(n);
        words.push((n, invert(&r)));
        words.push((n, r));
    }
    let mut worst: Option<Piece> = None;
    let mut longest = 0;
    for i in 0..words.len() {
        for k in i..words.len() {
            let (u, v) = (&words[i].1, &words[k].1);
            let (len, at) = longest_piece(u, v, i == k);
            longest = longest.max(len);
            let ratio = len as f64 / u.len().min(v.len()) as f64;
            if worst.as_ref().is_none_or(|p| ratio > p.ratio) {
                let piece: Word = (0..len).map(|t| u[(at + t) % u.len()]).collect();
                worst = Some(Piece { word: format_word(&piece), length: len, exponents: (words[i].0, words[k].0), ratio });
            }
        }
    }
    let ratio = worst.as_ref().map_or(0.0, |p| p.ratio);
    Ok(SmallCancellationReport {
        m,
        window,
        relators: ns.len(),
        longest_piece: longest,
        shortest_relator: words.iter().map(|w| w.1.len()).min().unwrap_or(0),
        ratio,
        worst,
        holds: ratio * (m as f64) < 1.0,
        window_certified: true,
    })
}

/// Cyclic permutations of relators and inverses, bucketed by first letter.
struct Rotations {
    words: Vec<Word>,
    by_first: HashMap<i32, Vec<(usize, usize)>>,
}

impl Rotations {
    fn new(pres: &CyclicPresentation, window: i64) -> Result<Self> {
        let mut words = Vec::new();
        for n in pres.exponents_in_window(window)? {
            let r = pres.power_word(n);
            words.push(invert(&r));
            words.push(r);
        }
        let mut by_first: HashMap<i32, Vec<(usize, usize)>> = HashMap::new();
        for (i, w) in words.iter().enumerate() {
            for s in 0..w.len() {
                by_first.entry(w[s]).or_default().push((i, s));
            }
        }
        Ok(Rotations { words, by_first })
    }

    /// First subword of `w` that is more than half of a rotation, replaced by
    /// the inverse of the rest of that rotation.
    fn step(&self, w: &[i32]) -> Option<Word> {
        for i in 0..w.len() {
            let Some(cands) = self.by_first.get(&w[i]) else { continue };
            for &(r, s) in cands {
                let rel = &self.words[r];
                let n = rel.len();
                if 2 * (w.len() - i) <= n {
                    continue;
                }
                let mut k = 0;
                while k < n && i + k < w.len() && w[i + k] == rel[(s + k) % n] {
                    k += 1;
                }
                if 2 * k > n {
                    let rest: Word = (k..n).map(|t| rel[(s + t) % n]).collect();
                    let mut out = w[..i].to_vec();
                    out.extend(invert(&rest));
                    out.extend_from_slice(&w[i + k..]);
                    return Some(free_reduce(&out));
                }
            }
        }
        None
    }
}

/// Dehn's algorithm.  Relators up to the length bound of the input are
/// needed; a Gödel-windowed `T` that does not decide them is an error.
pub fn dehn_reduce(pres: &CyclicPresentation, word: &[i32]) -> Result<Word> {
    if let Some(&x) = word.iter().find(|&&x| x == 0 || x.unsigned_abs() as usize > pres.l) {
        return Err(Error::Invalid(format!("letter {x} outside a1..a{}", pres.l)));
    }
    let mut w = free_reduce(word);
    if w.is_empty() {
        return Ok(w);
    }
    let rot = Rotations::new(pres, pres.window_for_length(w.len()))?;
    while let Some(next) = rot.step(&w) {
        debug_assert!(next.len() < w.len());
        w = next;
    }
    Ok(w)
}

/// Sound and complete for presentations satisfying `C′(1/6)`.
pub fn is_identity(pres: &CyclicPresentation, word: &[i32]) -> Result<bool> {
    Ok(dehn_reduce(pres, word)?.is_empty())
}

//! Generators for the discrete sets and labels built from labeled binary
//! trees: `Λ₁`, `pΛ₁`, `Λ(L)` for level labels and general tree labels,
//! `Λ_I(L)`, the growing-run label `τ₁τ₂τ₃⋯` and the `Γ` family.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::adic::SignedWord;
use crate::decision::{expansion_type, Expansion};
use crate::error::{Error, Result};

/// A finite set `C` of distinct odd integers labelling right edges.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct DigitSet {
    digits: Vec<i64>,
}

impl DigitSet {
    pub fn new(digits: &[i64]) -> Result<Self> {
        if digits.is_empty() {
            return Err(Error::EmptyDigitSet);
        }
        let mut v = digits.to_vec();
        if let Some(&d) = v.iter().find(|&&d| d % 2 == 0) {
            return Err(Error::EvenDigit(d));
        }
        v.sort_unstable();
        if let Some(w) = v.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateDigit(w[0]));
        }
        Ok(DigitSet { digits: v })
    }

    /// Digits in ascending order.
    pub fn digits(&self) -> &[i64] {
        &self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn max_abs(&self) -> i64 {
        self.digits.iter().map(|d| d.abs()).max().unwrap_or(0)
    }

    /// `{0} ∪ C`, ascending.
    pub fn with_zero(&self) -> Vec<i64> {
        let mut v = self.digits.clone();
        v.push(0);
        v.sort_unstable();
        v
    }
}

impl FromStr for DigitSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        DigitSet::new(&parse_int_list(s)?)
    }
}

impl fmt::Display for DigitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.digits.iter().map(|d| d.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

pub(crate) fn parse_int_list(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<i64>()
                .map_err(|e| Error::Parse(format!("bad integer {t:?}: {e}")))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DigitSetReport {
    pub digits: Vec<i64>,
    pub residues_mod4: Vec<i64>,
    /// Both odd classes 1 and 3 mod 4 occur.
    pub covers_both_classes: bool,
}

/// Checks oddness and distinctness and reports residues mod 4.
pub fn validate_digit_set(digits: &[i64]) -> Result<DigitSetReport> {
    let set = DigitSet::new(digits)?;
    let residues_mod4: Vec<i64> = set.digits().iter().map(|d| d.rem_euclid(4)).collect();
    let covers_both_classes = residues_mod4.contains(&1) && residues_mod4.contains(&3);
    Ok(DigitSetReport {
        digits: set.digits,
        residues_mod4,
        covers_both_classes,
    })
}

/// Choice of the non-forced digits of a `Γ` label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FreeChoice {
    C0,
    C1,
    /// `c₀, c₁, c₀, …` over the free positions in order.
    Alternate,
}

impl FromStr for FreeChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "c0" => Ok(FreeChoice::C0),
            "c1" => Ok(FreeChoice::C1),
            "alternate" => Ok(FreeChoice::Alternate),
            other => Err(Error::Parse(format!(
                "free choice must be c0, c1 or alternate, got {other:?}"
            ))),
        }
    }
}

/// A level label `A = a₁a₂a₃⋯`: every right edge at level `k` carries `a_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LevelLabel {
    Periodic(SignedWord),
    /// `p·τ₁τ₂τ₃⋯` with `τ_n = 1^n (-1)^{n+1}`.
    GrowingRuns {
        p: i64,
    },
    Gamma {
        r: u32,
        free: FreeChoice,
    },
}

impl LevelLabel {
    pub fn periodic(word: SignedWord) -> Result<Self> {
        check_odd_digits(&word)?;
        Ok(LevelLabel::Periodic(word))
    }

    pub fn growing_runs(p: i64) -> Result<Self> {
        check_odd(p)?;
        Ok(LevelLabel::GrowingRuns { p })
    }

    pub fn gamma(r: u32, free: FreeChoice) -> Result<Self> {
        gamma_c1(r)?;
        Ok(LevelLabel::Gamma { r, free })
    }

    /// `(p)^∞`, the label of `pΛ₁`.
    pub fn constant(p: i64) -> Result<Self> {
        check_odd(p)?;
        LevelLabel::periodic(SignedWord::from_digits(vec![], vec![p])?)
    }

    /// First `n` digits.
    pub fn prefix(&self, n: usize) -> Vec<i64> {
        match self {
            LevelLabel::Periodic(w) => w.prefix(n),
            LevelLabel::GrowingRuns { p } => growing_runs(*p, n),
            LevelLabel::Gamma { r, free } => gamma_digits(*r, *free, n),
        }
    }

    /// The label as an exact eventually periodic word, when it is one.
    pub fn as_periodic(&self) -> Option<SignedWord> {
        match self {
            LevelLabel::Periodic(w) => Some(w.clone()),
            LevelLabel::GrowingRuns { .. } => None,
            LevelLabel::Gamma { r, free } => {
                // two blocks of r+1 contain an even number of free positions
                let len = 2 * (*r as usize + 1);
                SignedWord::from_digits(vec![], gamma_digits(*r, *free, len)).ok()
            }
        }
    }
}

impl fmt::Display for LevelLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LevelLabel::Periodic(w) => f.write_str(&w.to_literal()),
            LevelLabel::GrowingRuns { p } => write!(f, "thm47 p={p}"),
            LevelLabel::Gamma { r, free } => {
                let free = match free {
                    FreeChoice::C0 => "c0",
                    FreeChoice::C1 => "c1",
                    FreeChoice::Alternate => "alternate",
                };
                write!(f, "gamma r={r} free={free}")
            }
        }
    }
}

fn check_odd(p: i64) -> Result<()> {
    if p % 2 == 0 {
        Err(Error::NotOdd(p))
    } else {
        Ok(())
    }
}

fn check_odd_digits(word: &SignedWord) -> Result<()> {
    match word.used_digits().into_iter().find(|d| d % 2 == 0) {
        Some(d) => Err(Error::EvenDigit(d)),
        None => Ok(()),
    }
}

/// Longest label prefix produced in one call.
const MAX_PREFIX: usize = 1 << 24;

/// First `n` digits of `p·τ₁τ₂τ₃⋯`.
pub fn thm47_label(p: i64, n: usize) -> Result<Vec<i64>> {
    check_odd(p)?;
    if n == 0 || n > MAX_PREFIX {
        return Err(Error::Param(format!("depth must be in 1..={MAX_PREFIX}")));
    }
    Ok(growing_runs(p, n))
}

fn growing_runs(p: i64, n: usize) -> Vec<i64> {
    let mut out = Vec::with_capacity(n);
    let mut block = 1;
    while out.len() < n {
        out.extend(std::iter::repeat_n(p, block));
        out.extend(std::iter::repeat_n(-p, block + 1));
        block += 1;
    }
    out.truncate(n);
    out
}

/// 1-based start of block `τ_n` in `τ₁τ₂⋯`.
pub fn growing_runs_block_start(n: usize) -> usize {
    // blocks 1..n-1 have total length Σ (2j+1) = (n-1)(n+1)
    (n - 1) * (n + 1) + 1
}

/// `c₁ = 3(1 + 4 + ⋯ + 4^r) = 4^{r+1} - 1`.
pub fn gamma_c1(r: u32) -> Result<i64> {
    if r < 1 {
        return Err(Error::Param("r must be at least 1".into()));
    }
    4i64.checked_pow(r + 1)
        .map(|x| x - 1)
        .ok_or(Error::Overflow("gamma c1"))
}

pub const GAMMA_C0: i64 = 1;

/// Whether 1-based position `k` is forced to `c₁`: `k ≡ 1 (mod r+1)`.
pub fn gamma_forced(r: u32, k: usize) -> bool {
    (k - 1).is_multiple_of(r as usize + 1)
}

fn gamma_digits(r: u32, free: FreeChoice, n: usize) -> Vec<i64> {
    let c1 = gamma_c1(r).expect("validated");
    let mut free_seen = 0usize;
    (1..=n)
        .map(|k| {
            if gamma_forced(r, k) {
                return c1;
            }
            free_seen += 1;
            match free {
                FreeChoice::C0 => GAMMA_C0,
                FreeChoice::C1 => c1,
                FreeChoice::Alternate if free_seen % 2 == 1 => GAMMA_C0,
                FreeChoice::Alternate => c1,
            }
        })
        .collect()
}

/// First `n` digits of the `Γ` label with parameter `r`.
pub fn gamma_label(r: u32, free: FreeChoice, n: usize) -> Result<Vec<i64>> {
    gamma_c1(r)?;
    if n > MAX_PREFIX {
        return Err(Error::Param(format!("depth must be at most {MAX_PREFIX}")));
    }
    Ok(gamma_digits(r, free, n))
}

/// The expansion digits of -1 in every `Γ` label: `c₁` at the forced
/// positions, 0 elsewhere. As a word this is `(c₁ 0^r)^∞`, and
/// `Σ_n c₁ 4^{n(r+1)} = c₁ / (1 - 4^{r+1}) = -1` in the 4-adic integers.
pub fn gamma_witness(r: u32) -> Result<SignedWord> {
    let c1 = gamma_c1(r)?;
    let mut period = vec![0; r as usize + 1];
    period[0] = c1;
    SignedWord::from_digits(vec![], period)
}

/// A depth-`n` prefix of a general tree label. Level `j` lists the
/// `2^{j-1}` right-edge labels `a_{j,1}, a_{j,3}, …, a_{j,2^j-1}`; left edges
/// carry 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneralLabelPrefix {
    levels: Vec<Vec<i64>>,
}

impl GeneralLabelPrefix {
    pub fn new(levels: Vec<Vec<i64>>) -> Result<Self> {
        if levels.len() > 24 {
            return Err(Error::Label(
                "general label prefixes are limited to depth 24".into(),
            ));
        }
        for (j, level) in levels.iter().enumerate() {
            if level.len() != 1 << j {
                return Err(Error::Label(format!(
                    "level {} must hold {} digits, found {}",
                    j + 1,
                    1usize << j,
                    level.len()
                )));
            }
            if let Some(&d) = level.iter().find(|&&d| d % 2 == 0) {
                return Err(Error::EvenDigit(d));
            }
        }
        Ok(GeneralLabelPrefix { levels })
    }

    /// Uses the same digit on every right edge of a level.
    pub fn from_level_label(label: &LevelLabel, depth: usize) -> Result<Self> {
        let digits = label.prefix(depth);
        GeneralLabelPrefix::new(
            digits
                .iter()
                .enumerate()
                .map(|(j, &d)| vec![d; 1 << j])
                .collect(),
        )
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    pub fn levels(&self) -> &[Vec<i64>] {
        &self.levels
    }

    /// Label of the right edge leaving the node reached after `j` steps
    /// whose edge index is `k` (1-based, `k_0 = 1` at the root).
    pub fn right_label(&self, j: usize, k: usize) -> i64 {
        self.levels[j][k - 1]
    }
}

/// A named discrete set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Selector {
    /// `Λ₁`.
    Canonical,
    /// `pΛ₁`, by integer scaling.
    Scaled(i64),
    Label(LevelLabel),
}

impl Selector {
    /// The level label whose `Λ` this set is, when it has one.
    pub fn label(&self) -> Result<LevelLabel> {
        match self {
            Selector::Canonical => LevelLabel::constant(1),
            Selector::Scaled(p) => LevelLabel::constant(*p),
            Selector::Label(l) => Ok(l.clone()),
        }
    }
}

impl fmt::Display for Selector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Selector::Canonical => write!(f, "canonical"),
            Selector::Scaled(p) => write!(f, "scaled p={p}"),
            Selector::Label(l) => write!(f, "label {l}"),
        }
    }
}

/// All `Σ_{k≤n} 4^{k-1} ω_k` with `ω_k ∈ {0, a_k}`, ascending.
pub fn enumerate_level(label: &[i64], n: usize) -> Result<BTreeSet<i64>> {
    if n > label.len() {
        return Err(Error::Label(format!(
            "label prefix has {} digits, depth {n} requested",
            label.len()
        )));
    }
    if n > 30 {
        return Err(Error::Param("enumeration depth is limited to 30".into()));
    }
    let mut sums = vec![0i64];
    let mut weight = 1i64;
    for &a in &label[..n] {
        let step = a
            .checked_mul(weight)
            .ok_or(Error::Overflow("enumeration"))?;
        let mut next = Vec::with_capacity(sums.len() * 2);
        for &s in &sums {
            next.push(s);
            next.push(s.checked_add(step).ok_or(Error::Overflow("enumeration"))?);
        }
        sums = next;
        weight = weight
            .checked_mul(4)
            .ok_or(Error::Overflow("enumeration"))?;
    }
    Ok(sums.into_iter().collect())
}

/// The depth-`n` elements of the selected set.
pub fn enumerate_lambda(selector: &Selector, n: usize) -> Result<BTreeSet<i64>> {
    match selector {
        Selector::Canonical => enumerate_level(&vec![1; n], n),
        Selector::Scaled(p) => enumerate_level(&vec![1; n], n)?
            .into_iter()
            .map(|x| x.checked_mul(*p).ok_or(Error::Overflow("scaling")))
            .collect(),
        Selector::Label(l) => enumerate_level(&l.prefix(n), n),
    }
}

/// Depth-`n` elements of `Λ(L)` for a general tree label, following paths
/// whose edge indices satisfy `k_{j+1} ∈ {2k_j - 1, 2k_j}`.
pub fn enumerate_general(label: &GeneralLabelPrefix, n: usize) -> Result<BTreeSet<i64>> {
    if n > label.depth() {
        return Err(Error::Label(format!(
            "label prefix has depth {}, depth {n} requested",
            label.depth()
        )));
    }
    // (sum, edge index of the last step, 1 at the root)
    let mut frontier = vec![(0i64, 1usize)];
    let mut weight = 1i64;
    for j in 0..n {
        let mut next = Vec::with_capacity(frontier.len() * 2);
        for &(s, k) in &frontier {
            let a = label.right_label(j, k);
            let step = a
                .checked_mul(weight)
                .ok_or(Error::Overflow("enumeration"))?;
            next.push((
                s.checked_add(step).ok_or(Error::Overflow("enumeration"))?,
                2 * k - 1,
            ));
            next.push((s, 2 * k));
        }
        frontier = next;
        weight = weight
            .checked_mul(4)
            .ok_or(Error::Overflow("enumeration"))?;
    }
    Ok(frontier.into_iter().map(|(s, _)| s).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Member {
    pub lambda: i64,
    pub expansion: Expansion,
}

/// Every `λ ∈ [-M, M]` in `Λ_I` of an eventually periodic level label,
/// with its (finite or infinite) expansion.
pub fn lambda_i_members(label: &SignedWord, bound: i64) -> Result<Vec<Member>> {
    if bound < 0 {
        return Err(Error::Param("bound must be nonnegative".into()));
    }
    let mut out = Vec::new();
    for lambda in -bound..=bound {
        let expansion = expansion_type(label, lambda)?;
        if !matches!(expansion, Expansion::NotMember { .. }) {
            out.push(Member { lambda, expansion });
        }
    }
    Ok(out)
}

/// Parses a level label: a word literal such as `(3)` or `-5(5,-5)`, or a
/// rule such as `thm47 p=5` or `gamma r=2 free=c0`.
pub fn parse_label(text: &str) -> Result<LevelLabel> {
    let t = text.trim();
    if let Some(rule) = t.strip_prefix("rule:") {
        return parse_rule(rule);
    }
    if t.starts_with("thm47") || t.starts_with("gamma") {
        return parse_rule(t);
    }
    LevelLabel::periodic(SignedWord::parse_inferred(t)?)
}

fn parse_rule(text: &str) -> Result<LevelLabel> {
    let mut parts = text.split_whitespace();
    let kind = parts
        .next()
        .ok_or_else(|| Error::Label("empty rule".into()))?;
    let mut p = None;
    let mut r = None;
    let mut free = FreeChoice::C0;
    for kv in parts {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| Error::Label(format!("expected key=value, got {kv:?}")))?;
        let int = || {
            v.parse::<i64>()
                .map_err(|e| Error::Label(format!("{k}: {e}")))
        };
        match k {
            "p" => p = Some(int()?),
            "r" => {
                r = Some(
                    u32::try_from(int()?).map_err(|_| Error::Label("r must be positive".into()))?,
                )
            }
            "free" => free = v.parse()?,
            other => return Err(Error::Label(format!("unknown rule key {other:?}"))),
        }
    }
    match kind {
        "thm47" => {
            LevelLabel::growing_runs(p.ok_or_else(|| Error::Label("thm47 needs p=".into()))?)
        }
        "gamma" => LevelLabel::gamma(
            r.ok_or_else(|| Error::Label("gamma needs r=".into()))?,
            free,
        ),
        other => Err(Error::Label(format!("unknown rule {other:?}"))),
    }
}

/// Parses the line-oriented label file format:
///
/// ```text
/// alphabet: 3, 15
/// preperiod: 1
/// period: 0
/// ```
///
/// or a single `rule: thm47 p=5` / `rule: gamma r=2 free=alternate` line.
/// Indices refer to the alphabet as written. Blank lines and `#` comments
/// are ignored.
pub fn parse_label_file(text: &str) -> Result<LevelLabel> {
    let mut alphabet = None;
    let mut pre = None;
    let mut period = None;
    let mut rule = None;
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once(':')
            .ok_or_else(|| Error::Label(format!("expected `key: value`, got {line:?}")))?;
        let slot = match key.trim() {
            "alphabet" => &mut alphabet,
            "preperiod" => &mut pre,
            "period" => &mut period,
            "rule" => &mut rule,
            other => return Err(Error::Label(format!("unknown key {other:?}"))),
        };
        if slot.replace(value.trim().to_string()).is_some() {
            return Err(Error::Label(format!("duplicate key {:?}", key.trim())));
        }
    }
    if let Some(rule) = rule {
        if alphabet.is_some() || pre.is_some() || period.is_some() {
            return Err(Error::Label(
                "a rule cannot be combined with explicit digits".into(),
            ));
        }
        return parse_rule(&rule);
    }
    let alphabet =
        parse_int_list(&alphabet.ok_or_else(|| Error::Label("missing alphabet".into()))?)?;
    let indices = |s: Option<String>| -> Result<Vec<usize>> {
        parse_int_list(&s.unwrap_or_default())?
            .into_iter()
            .map(|i| usize::try_from(i).map_err(|_| Error::Label(format!("negative index {i}"))))
            .collect()
    };
    let pre = indices(pre)?;
    let period = indices(Some(
        period.ok_or_else(|| Error::Label("missing period".into()))?,
    ))?;
    LevelLabel::periodic(SignedWord::from_indices(&alphabet, &pre, &period)?)
}

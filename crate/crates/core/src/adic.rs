//! Exact arithmetic on eventually periodic words of the symbolic space
//! `Σ_m^∞`, read as m-adic integers `i_1 + m i_2 + m^2 i_3 + ...`.
//!
//! Every integer has exactly one such expansion: nonnegative integers end in
//! `0^∞`, negative ones in `(m-1)^∞`. Sums, negation, integer multiples and
//! quotients by integers coprime to `m` of eventually periodic words are
//! again eventually periodic, which is what makes the decision procedures in
//! [`crate::decision`] finite.
//!
//! Words print as `<preperiod>(<period>)`, for example `21(0)` for 6 in base
//! 4 and `(3)` for -1. Alphabets containing a digit >= 10 or a negative digit
//! use comma separated digits: `-3,0(3,15)`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::periodic::{transduce, Periodic};

/// The base used throughout the spectral modules.
pub const QUATERNARY: u64 = 4;

/// An eventually periodic word over `{0, .., base-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EpWord {
    base: u64,
    digits: Periodic<u64>,
}

impl EpWord {
    pub fn new(base: u64, pre: Vec<u64>, period: Vec<u64>) -> Result<Self> {
        check_base(base)?;
        if period.is_empty() {
            return Err(Error::EmptyPeriod);
        }
        if let Some(&digit) = pre.iter().chain(&period).find(|&&d| d >= base) {
            return Err(Error::DigitOutOfRange { digit, base });
        }
        Ok(EpWord {
            base,
            digits: Periodic::new(pre, period),
        })
    }

    /// `0^∞`.
    pub fn zero(base: u64) -> Result<Self> {
        EpWord::new(base, vec![], vec![0])
    }

    fn from_parts(base: u64, (pre, period): (Vec<u64>, Vec<u64>)) -> Self {
        EpWord {
            base,
            digits: Periodic::new(pre, period),
        }
    }

    pub fn base(&self) -> u64 {
        self.base
    }

    pub fn preperiod(&self) -> &[u64] {
        self.digits.pre()
    }

    pub fn period(&self) -> &[u64] {
        self.digits.period()
    }

    /// Digit at 0-based index `i`, i.e. 1-based position `i + 1`.
    pub fn digit(&self, i: usize) -> u64 {
        *self.digits.get(i)
    }

    pub fn prefix(&self, n: usize) -> Vec<u64> {
        self.digits.prefix(n)
    }

    pub fn is_zero(&self) -> bool {
        self.preperiod().is_empty() && self.period() == [0]
    }

    /// Whether the stored form is canonical. Always true for values built
    /// through this module; exposed for closure checks.
    pub fn is_canonical(&self) -> bool {
        !self.period().is_empty()
            && self
                .preperiod()
                .iter()
                .chain(self.period())
                .all(|&d| d < self.base)
            && Periodic::new(self.preperiod().to_vec(), self.period().to_vec()) == self.digits
    }

    /// The base-`base` expansion of an integer.
    pub fn from_integer(lambda: &BigInt, base: u64) -> Result<Self> {
        check_base(base)?;
        let m = BigInt::from(base);
        let terminal = if lambda.is_negative() {
            -BigInt::one()
        } else {
            BigInt::zero()
        };
        let mut pre = Vec::new();
        let mut rest = lambda.clone();
        while rest != terminal {
            let (q, r) = rest.div_mod_floor(&m);
            pre.push(r.to_u64().expect("remainder below base"));
            rest = q;
        }
        let tail = if lambda.is_negative() { base - 1 } else { 0 };
        EpWord::new(base, pre, vec![tail])
    }

    pub fn from_i64(lambda: i64, base: u64) -> Result<Self> {
        EpWord::from_integer(&BigInt::from(lambda), base)
    }

    /// The integer whose expansion this is, if the word ends in `0^∞` or
    /// `(m-1)^∞`.
    pub fn to_integer(&self) -> Option<BigInt> {
        let tail = match self.period() {
            [0] => false,
            [d] if *d == self.base - 1 => true,
            _ => return None,
        };
        let m = BigInt::from(self.base);
        let mut value = BigInt::zero();
        let mut weight = BigInt::one();
        for &d in self.preperiod() {
            value += &weight * d;
            weight *= &m;
        }
        if tail {
            value -= weight;
        }
        Some(value)
    }

    fn check_same_base(&self, other: &EpWord) -> Result<()> {
        if self.base != other.base {
            Err(Error::AlphabetMismatch(self.base, other.base))
        } else {
            Ok(())
        }
    }

    /// Digitwise sum with carries `k_n ∈ {0,1}`.
    ///
    /// Both operands are first rewritten with a common preperiod and period
    /// length. The carry entering each period block is 0 or 1, so the carry
    /// sequence at block boundaries repeats within three blocks; this is the
    /// three-case analysis (block sum below, equal to, or above `m^L - 1`).
    pub fn add(&self, other: &EpWord) -> Result<EpWord> {
        self.check_same_base(other)?;
        let pre_len = self.preperiod().len().max(other.preperiod().len());
        let per_len = num_integer::lcm(self.period().len(), other.period().len());
        let (ap, aq) = self.digits.aligned(pre_len, per_len);
        let (bp, bq) = other.digits.aligned(pre_len, per_len);
        let pre: Vec<(u64, u64)> = ap.into_iter().zip(bp).collect();
        let per: Vec<(u64, u64)> = aq.into_iter().zip(bq).collect();
        let m = self.base as u128;
        let out = transduce(&pre, &per, 0u128, |&carry, &(x, y)| {
            let s = x as u128 + y as u128 + carry;
            ((s % m) as u64, s / m)
        });
        Ok(EpWord::from_parts(self.base, out))
    }

    /// Additive inverse: `0^{n-1} (m - i_n) (m-1-i_{n+1}) ...` where `i_n` is
    /// the first nonzero digit; `-0^∞ = 0^∞`.
    pub fn neg(&self) -> EpWord {
        if self.is_zero() {
            return self.clone();
        }
        let m = self.base;
        // one unrolled period guarantees the first nonzero digit lies in `pre`
        let mut pre: Vec<u64> = self
            .preperiod()
            .iter()
            .chain(self.period())
            .copied()
            .collect();
        let first = pre.iter().position(|&d| d != 0).expect("nonzero word");
        pre[first] = m - pre[first];
        for d in &mut pre[first + 1..] {
            *d = m - 1 - *d;
        }
        let period = self.period().iter().map(|&d| m - 1 - d).collect();
        EpWord::from_parts(m, (pre, period))
    }

    pub fn sub(&self, other: &EpWord) -> Result<EpWord> {
        self.add(&other.neg())
    }

    /// The integer multiple `a · w`, computed by the carry recurrence
    /// `x_n = a i_n + k_{n-1} - m k_n`. Negative multiples go through
    /// negation.
    pub fn scalar_mul(&self, a: i64) -> EpWord {
        if a == 0 {
            return EpWord::from_parts(self.base, (vec![], vec![0]));
        }
        let k = a.unsigned_abs() as u128;
        let m = self.base as u128;
        let out = transduce(self.preperiod(), self.period(), 0u128, |&carry, &d| {
            let s = k * d as u128 + carry;
            ((s % m) as u64, s / m)
        });
        let product = EpWord::from_parts(self.base, out);
        if a < 0 {
            product.neg()
        } else {
            product
        }
    }

    /// The unique `j` with `a · j = self`, for `gcd(a, m) = 1`.
    ///
    /// Digits come from `a j_n + k_{n-1} = m k_n + i_n` with carry
    /// `k_n ∈ {0, .., |a|-1}`; the carry at block boundaries is therefore
    /// periodic with period at most `|a|` blocks.
    pub fn div_by_coprime(&self, a: i64) -> Result<EpWord> {
        let m = self.base;
        if a == 0 {
            return Err(Error::Zero("divisor"));
        }
        let k = a.unsigned_abs() as u128;
        let inv = mod_inverse((k % m as u128) as u64, m).ok_or(Error::NotCoprime {
            divisor: a,
            base: m,
        })?;
        let mm = m as u128;
        let out = transduce(self.preperiod(), self.period(), 0u128, |&carry, &d| {
            let target = (d as u128 + mm - carry % mm) % mm;
            let j = target * inv as u128 % mm;
            let next = (k * j + carry - d as u128) / mm;
            (j as u64, next)
        });
        let quotient = EpWord::from_parts(m, out);
        Ok(if a < 0 { quotient.neg() } else { quotient })
    }

    /// 0-based index of the first differing digit, `None` when equal.
    pub fn first_difference(&self, other: &EpWord) -> Result<Option<usize>> {
        self.check_same_base(other)?;
        let horizon = self.digits.horizon(&other.digits);
        Ok((0..horizon).find(|&i| self.digit(i) != other.digit(i)))
    }

    /// `ρ(i, j) = m^{-n}` with `n` the first differing position (1-based);
    /// 0 for equal words.
    pub fn rho(&self, other: &EpWord) -> Result<BigRational> {
        Ok(match self.first_difference(other)? {
            None => BigRational::zero(),
            Some(i) => BigRational::new(
                BigInt::one(),
                num_traits::pow(BigInt::from(self.base), i + 1),
            ),
        })
    }

    /// Regroups blocks of `s` digits into single digits over base `m^s`:
    /// `σ_k = Σ_{i=1}^{s} m^{i-1} i_{(k-1)s+i}`.
    pub fn block_recode(&self, s: usize) -> Result<EpWord> {
        if s == 0 {
            return Err(Error::Param("block size must be positive".into()));
        }
        let big = checked_pow(self.base, s).ok_or(Error::Overflow("recoded base"))?;
        let pre_len = self.preperiod().len().div_ceil(s) * s;
        let per_len = num_integer::lcm(self.period().len(), s);
        let (pre, per) = self.digits.aligned(pre_len, per_len);
        let group = |v: &[u64]| -> Vec<u64> {
            v.chunks(s)
                .map(|c| c.iter().rev().fold(0u64, |acc, &d| acc * self.base + d))
                .collect()
        };
        EpWord::new(big, group(&pre), group(&per))
    }

    /// Inverse of [`EpWord::block_recode`]: splits each digit over
    /// `small_base^s` into `s` digits over `small_base`.
    pub fn block_decode(&self, s: usize, small_base: u64) -> Result<EpWord> {
        check_base(small_base)?;
        if s == 0 {
            return Err(Error::Param("block size must be positive".into()));
        }
        if checked_pow(small_base, s) != Some(self.base) {
            return Err(Error::Param(format!(
                "base {} is not {}^{}",
                self.base, small_base, s
            )));
        }
        let split = |v: &[u64]| -> Vec<u64> {
            v.iter()
                .flat_map(|&d| {
                    let mut d = d;
                    (0..s).map(move |_| {
                        let r = d % small_base;
                        d /= small_base;
                        r
                    })
                })
                .collect()
        };
        EpWord::new(small_base, split(self.preperiod()), split(self.period()))
    }

    pub fn parse(text: &str, base: u64) -> Result<EpWord> {
        check_base(base)?;
        let (pre, per) = split_word(text)?;
        let commas = base > 10 || text.contains(',');
        let conv = |v: Vec<i64>| -> Result<Vec<u64>> {
            v.into_iter()
                .map(|d| {
                    u64::try_from(d)
                        .ok()
                        .filter(|&u| u < base)
                        .ok_or(Error::DigitOutOfRange {
                            digit: d.unsigned_abs(),
                            base,
                        })
                })
                .collect()
        };
        EpWord::new(
            base,
            conv(parse_digits(pre, commas)?)?,
            conv(parse_digits(per, commas)?)?,
        )
    }
}

impl fmt::Display for EpWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let commas = self.base > 10;
        write_word(f, self.preperiod(), self.period(), commas)
    }
}

/// An eventually periodic word over an explicit finite set of integers that
/// always contains 0, such as `{-p, 0, p}` or `{0} ∪ C`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedWord {
    alphabet: Vec<i64>,
    digits: Periodic<i64>,
}

impl SignedWord {
    /// Builds a word from digit values. `alphabet` is sorted and 0 is added
    /// when missing; repeated alphabet entries are rejected.
    pub fn new(alphabet: &[i64], pre: Vec<i64>, period: Vec<i64>) -> Result<Self> {
        let alphabet = normalize_alphabet(alphabet)?;
        if period.is_empty() {
            return Err(Error::EmptyPeriod);
        }
        if let Some(&d) = pre
            .iter()
            .chain(&period)
            .find(|d| alphabet.binary_search(d).is_err())
        {
            return Err(Error::NotInAlphabet(d));
        }
        Ok(SignedWord {
            alphabet,
            digits: Periodic::new(pre, period),
        })
    }

    /// Builds a word from indices into `alphabet` as given (unsorted).
    pub fn from_indices(alphabet: &[i64], pre: &[usize], period: &[usize]) -> Result<Self> {
        let pick = |ix: &[usize]| -> Result<Vec<i64>> {
            ix.iter()
                .map(|&i| {
                    alphabet
                        .get(i)
                        .copied()
                        .ok_or_else(|| Error::Parse(format!("index {i} outside alphabet")))
                })
                .collect()
        };
        SignedWord::new(alphabet, pick(pre)?, pick(period)?)
    }

    /// Word over the alphabet `{0} ∪ {digits used}`.
    pub fn from_digits(pre: Vec<i64>, period: Vec<i64>) -> Result<Self> {
        let mut alphabet: Vec<i64> = pre.iter().chain(&period).copied().collect();
        alphabet.push(0);
        alphabet.sort_unstable();
        alphabet.dedup();
        SignedWord::new(&alphabet, pre, period)
    }

    pub fn alphabet(&self) -> &[i64] {
        &self.alphabet
    }

    pub fn preperiod(&self) -> &[i64] {
        self.digits.pre()
    }

    pub fn period(&self) -> &[i64] {
        self.digits.period()
    }

    /// Digit at 0-based index `i`.
    pub fn digit(&self, i: usize) -> i64 {
        *self.digits.get(i)
    }

    pub fn prefix(&self, n: usize) -> Vec<i64> {
        self.digits.prefix(n)
    }

    /// Digits that actually occur in the word.
    pub fn used_digits(&self) -> Vec<i64> {
        let mut v: Vec<i64> = self
            .preperiod()
            .iter()
            .chain(self.period())
            .copied()
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Divides every digit by `p`; all digits must be multiples of `p`.
    pub fn divide_digits(&self, p: i64) -> Result<SignedWord> {
        if p == 0 {
            return Err(Error::Zero("digit divisor"));
        }
        if let Some(&d) = self.alphabet.iter().find(|&&d| d % p != 0) {
            return Err(Error::Param(format!("{d} is not a multiple of {p}")));
        }
        let alphabet: Vec<i64> = self.alphabet.iter().map(|d| d / p).collect();
        let digits = self.digits.map(|d| d / p);
        SignedWord::new(&alphabet, digits.pre().to_vec(), digits.period().to_vec())
    }

    /// Parses `<pre>(<period>)` against a declared alphabet.
    pub fn parse(text: &str, alphabet: &[i64]) -> Result<SignedWord> {
        let (pre, per) = split_word(text)?;
        let commas = text.contains(',') || needs_commas(alphabet);
        SignedWord::new(
            alphabet,
            parse_digits(pre, commas)?,
            parse_digits(per, commas)?,
        )
    }

    /// Parses a word whose alphabet is inferred from its digits. Digits are
    /// always comma separated here, so `(15)` is the constant word 15.
    pub fn parse_inferred(text: &str) -> Result<SignedWord> {
        let (pre, per) = split_word(text)?;
        SignedWord::from_digits(parse_digits(pre, true)?, parse_digits(per, true)?)
    }
}

impl SignedWord {
    /// Comma separated form, always readable by [`SignedWord::parse_inferred`].
    pub fn to_literal(&self) -> String {
        struct Lit<'a>(&'a SignedWord);
        impl fmt::Display for Lit<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write_word(f, self.0.preperiod(), self.0.period(), true)
            }
        }
        Lit(self).to_string()
    }
}

impl fmt::Display for SignedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_word(
            f,
            self.preperiod(),
            self.period(),
            needs_commas(&self.alphabet),
        )
    }
}

fn needs_commas(alphabet: &[i64]) -> bool {
    alphabet.iter().any(|&d| !(0..10).contains(&d))
}

fn normalize_alphabet(alphabet: &[i64]) -> Result<Vec<i64>> {
    let mut v = alphabet.to_vec();
    v.sort_unstable();
    if let Some(w) = v.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::DuplicateDigit(w[0]));
    }
    if let Err(pos) = v.binary_search(&0) {
        v.insert(pos, 0);
    }
    Ok(v)
}

fn check_base(base: u64) -> Result<()> {
    if base < 2 {
        Err(Error::BadBase(base))
    } else {
        Ok(())
    }
}

fn checked_pow(base: u64, s: usize) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..s {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let (a, m) = (a as i128, m as i128);
    let e = a.extended_gcd(&m);
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(m) as u64)
}

fn split_word(text: &str) -> Result<(&str, &str)> {
    let t = text.trim();
    let open = t
        .find('(')
        .ok_or_else(|| Error::Parse(format!("missing '(' in {t:?}")))?;
    let inner = t[open + 1..]
        .strip_suffix(')')
        .ok_or_else(|| Error::Parse(format!("word must end with ')': {t:?}")))?;
    if inner.contains(['(', ')']) {
        return Err(Error::Parse(format!("nested parentheses in {t:?}")));
    }
    Ok((&t[..open], inner))
}

fn parse_digits(part: &str, commas: bool) -> Result<Vec<i64>> {
    let part = part.trim().trim_end_matches(',');
    if part.is_empty() {
        return Ok(vec![]);
    }
    if commas {
        part.split(',')
            .map(|s| {
                s.trim()
                    .parse::<i64>()
                    .map_err(|e| Error::Parse(format!("bad digit {s:?}: {e}")))
            })
            .collect()
    } else {
        part.chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| {
                c.to_digit(10)
                    .map(i64::from)
                    .ok_or_else(|| Error::Parse(format!("bad digit {c:?}")))
            })
            .collect()
    }
}

fn write_word<T: fmt::Display>(
    f: &mut fmt::Formatter<'_>,
    pre: &[T],
    period: &[T],
    commas: bool,
) -> fmt::Result {
    let sep = if commas { "," } else { "" };
    let join = |v: &[T]| {
        v.iter()
            .map(|d| d.to_string())
            .collect::<Vec<_>>()
            .join(sep)
    };
    write!(f, "{}({})", join(pre), join(period))
}

/// Digit `n >= 1` of the base-4 expansion of `lambda`:
/// `⌊λ/4^{n-1}⌋ - 4⌊λ/4^n⌋`. Depends only on `λ mod 4^n`.
pub fn digit_at(lambda: &BigInt, n: usize) -> Result<u64> {
    if n == 0 {
        return Err(Error::ZeroPosition);
    }
    let four = BigInt::from(QUATERNARY);
    let lo = num_traits::pow(four.clone(), n - 1);
    let hi = &lo * &four;
    let d = lambda.div_floor(&lo) - &four * lambda.div_floor(&hi);
    Ok(d.to_u64().expect("digit in 0..4"))
}

/// First `n` base-4 digits of `Σ_k 4^{k-1} Π(λ_k)`.
///
/// Only `λ_1..λ_n` matter: the k-th term `4^{k-1} Π(λ_k)` starts with
/// `k-1` zeros, so it cannot change digits before position `k`. Digit `t`
/// is read from the integer `d_t = Σ_{k<=t} Σ_{j<=t+1-k} 4^{j+k-2} i_j^{(k)}`
/// with `i_j^{(k)}` the j-th digit of `λ_k`.
pub fn series_prefix(lambdas: &[i64], n: usize) -> Result<Vec<u64>> {
    let big: Vec<BigInt> = lambdas.iter().take(n).map(|&l| BigInt::from(l)).collect();
    let term = |k: usize| big.get(k).cloned().unwrap_or_default();
    // digits[k][j] = digit j+1 of λ_{k+1}
    let digits: Vec<Vec<u64>> = (0..n)
        .map(|k| {
            let l = term(k);
            (1..=n - k).map(|j| digit_at(&l, j)).collect::<Result<_>>()
        })
        .collect::<Result<_>>()?;
    let four = BigInt::from(QUATERNARY);
    let mut out = Vec::with_capacity(n);
    for t in 1..=n {
        let mut d = BigInt::zero();
        for k in 1..=t {
            for j in 1..=t + 1 - k {
                d += num_traits::pow(four.clone(), j + k - 2) * digits[k - 1][j - 1];
            }
        }
        out.push(digit_at(&d, t)?);
    }
    Ok(out)
}

fn check_omega(p: i64, omega: &SignedWord) -> Result<()> {
    if p % 2 == 0 {
        return Err(Error::NotOdd(p));
    }
    if let Some(&d) = omega
        .alphabet()
        .iter()
        .find(|&&d| d != 0 && d != p && d != -p)
    {
        return Err(Error::NotInAlphabet(d));
    }
    Ok(())
}

/// First `n` digits of `h_p(ω) = Σ_k Π(4^{k-1} ω_k)` for `ω ∈ {-p,0,p}^∞`.
pub fn hp_prefix(p: i64, omega: &SignedWord, n: usize) -> Result<Vec<u64>> {
    check_omega(p, omega)?;
    series_prefix(&omega.prefix(n), n)
}

/// The exact base-4 word `Σ_k Π(4^{k-1} ω_k)` of an eventually periodic
/// signed digit word.
///
/// Grouping the series by digit value gives `Σ_d d · I_d`, where `I_d` is the
/// 0/1 word marking the positions holding `d`; every piece is an eventually
/// periodic word so the result is exact.
pub fn signed_series(omega: &SignedWord) -> EpWord {
    let mut acc = EpWord::from_parts(QUATERNARY, (vec![], vec![0]));
    for &d in omega.used_digits().iter().filter(|&&d| d != 0) {
        let mark = |v: &[i64]| v.iter().map(|&x| u64::from(x == d)).collect::<Vec<_>>();
        let indicator =
            EpWord::from_parts(QUATERNARY, (mark(omega.preperiod()), mark(omega.period())));
        acc = acc.add(&indicator.scalar_mul(d)).expect("same base");
    }
    acc
}

/// `h_p(ω)` as an exact word; see [`signed_series`].
pub fn hp_word(p: i64, omega: &SignedWord) -> Result<EpWord> {
    check_omega(p, omega)?;
    Ok(signed_series(omega))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> EpWord {
        EpWord::parse(s, 4).unwrap()
    }

    fn int(x: i64) -> EpWord {
        EpWord::from_i64(x, 4).unwrap()
    }

    #[test]
    fn integer_expansions() {
        assert_eq!(int(-1), w("(3)"));
        assert_eq!(int(0), w("(0)"));
        assert_eq!(int(6), w("21(0)"));
        assert_eq!(int(-4), w("0(3)"));
        assert_eq!(int(6).to_string(), "21(0)");
    }

    #[test]
    fn to_integer_cases() {
        assert_eq!(w("(3)").to_integer(), Some(BigInt::from(-1)));
        assert_eq!(w("21(0)").to_integer(), Some(BigInt::from(6)));
        assert_eq!(w("(30)").to_integer(), None);
        assert_eq!(w("12(3)").to_integer(), Some(BigInt::from(1 + 4 * 2 - 16)));
    }

    #[test]
    fn digit_formula() {
        let m1 = BigInt::from(-1);
        for k in 1..20 {
            assert_eq!(digit_at(&m1, k).unwrap(), 3);
        }
        assert_eq!(digit_at(&BigInt::from(6), 1).unwrap(), 2);
        assert_eq!(digit_at(&BigInt::from(6), 2).unwrap(), 1);
        assert_eq!(digit_at(&BigInt::from(21), 3).unwrap(), 1);
        assert_eq!(digit_at(&BigInt::from(21), 0), Err(Error::ZeroPosition));
    }

    #[test]
    fn digit_formula_depends_on_residue_only() {
        let base = BigInt::from(-123457);
        for n in 1..8usize {
            let shifted = &base + num_traits::pow(BigInt::from(4), n) * 37;
            for k in 1..=n {
                assert_eq!(digit_at(&base, k).unwrap(), digit_at(&shifted, k).unwrap());
            }
        }
    }

    #[test]
    fn worked_sum_prefix() {
        // only the first four digits of the operands are fixed
        let s = w("2130(0)").add(&w("3211(0)")).unwrap();
        assert_eq!(s.prefix(4), vec![1, 0, 1, 2]);
    }

    #[test]
    fn worked_difference_prefix() {
        let d = w("2130(0)").sub(&w("3211(0)")).unwrap();
        assert_eq!(d.prefix(4), vec![3, 2, 1, 3]);
    }

    #[test]
    fn worked_product_and_quotient() {
        assert_eq!(w("3(2)").scalar_mul(3), w("1(0)"));
        assert_eq!(w("1(0)").div_by_coprime(3).unwrap(), w("3(2)"));
        assert_eq!(w("1(0)").div_by_coprime(5).unwrap(), w("1(30)"));
        assert_eq!(w("1(30)").scalar_mul(5), w("1(0)"));
    }

    #[test]
    fn quotient_of_zero() {
        for a in [1, 3, 5, 7, -9, 15] {
            assert!(w("(0)").div_by_coprime(a).unwrap().is_zero());
        }
    }

    #[test]
    fn division_rejects_non_units() {
        assert_eq!(
            w("1(0)").div_by_coprime(6),
            Err(Error::NotCoprime {
                divisor: 6,
                base: 4
            })
        );
        assert_eq!(w("1(0)").div_by_coprime(0), Err(Error::Zero("divisor")));
        // base 10 admits 3 but not 5
        let ten = EpWord::from_i64(1, 10).unwrap();
        assert!(ten.div_by_coprime(3).is_ok());
        assert!(ten.div_by_coprime(5).is_err());
    }

    #[test]
    fn negation_cases() {
        assert_eq!(w("1(0)").neg(), w("(3)"));
        assert_eq!(w("(0)").neg(), w("(0)"));
        assert_eq!(w("0(3)").neg(), w("01(0)"));
        assert_eq!(w("0(12)").neg(), int(0).sub(&w("0(12)")).unwrap());
    }

    #[test]
    fn powers_of_base_shift() {
        let x = w("12(301)");
        assert_eq!(x.scalar_mul(4), w("012(301)"));
        assert_eq!(x.scalar_mul(64), w("00012(301)"));
        assert_eq!(x.scalar_mul(-1), x.neg());
        assert!(x.scalar_mul(0).is_zero());
    }

    #[test]
    fn rho_values() {
        assert_eq!(
            w("(3)").rho(&w("3(0)")).unwrap(),
            BigRational::new(1.into(), 16.into())
        );
        assert!(w("1(23)").rho(&w("12(32)")).unwrap().is_zero());
        assert!(w("(3)").rho(&EpWord::zero(5).unwrap()).is_err());
    }

    #[test]
    fn recode_examples() {
        let r = w("1230(0)").block_recode(2).unwrap();
        assert_eq!(r.base(), 16);
        assert_eq!(r.prefix(4), vec![9, 3, 0, 0]);
        assert_eq!(r.to_string(), "9,3(0)");
        assert_eq!(w("12(3)").block_recode(1).unwrap(), w("12(3)"));
        let back = r.block_decode(2, 4).unwrap();
        assert_eq!(back, w("1230(0)"));
    }

    #[test]
    fn series_examples() {
        assert_eq!(series_prefix(&[1; 5], 5).unwrap(), vec![1; 5]);
        assert_eq!(series_prefix(&[-1, 0, 0, 0], 4).unwrap(), vec![3; 4]);
    }

    #[test]
    fn hp_examples() {
        let three = SignedWord::parse("3(0)", &[-3, 0, 3]).unwrap();
        assert_eq!(hp_prefix(3, &three, 6).unwrap(), vec![3, 0, 0, 0, 0, 0]);
        let ones = SignedWord::parse("(1)", &[-1, 0, 1]).unwrap();
        assert_eq!(hp_prefix(1, &ones, 6).unwrap(), vec![1; 6]);
        let neg = SignedWord::parse("(-3)", &[-3, 0, 3]).unwrap();
        assert_eq!(hp_prefix(3, &neg, 6).unwrap(), vec![1, 0, 0, 0, 0, 0]);
        assert_eq!(hp_word(3, &neg).unwrap(), w("1(0)"));
        assert_eq!(hp_prefix(4, &neg, 3), Err(Error::NotOdd(4)));
        assert!(hp_prefix(5, &neg, 3).is_err());
    }

    #[test]
    fn text_format() {
        let s = SignedWord::parse("-3,0(3,15)", &[-3, 0, 3, 15]).unwrap();
        assert_eq!(s.preperiod(), &[-3, 0]);
        assert_eq!(s.period(), &[3, 15]);
        assert_eq!(s.to_string(), "-3,0(3,15)");
        assert_eq!(SignedWord::parse("(15)", &[15]).unwrap().period(), &[15]);
        assert!(SignedWord::parse("(5)", &[3]).is_err());
        assert!(EpWord::parse("(4)", 4).is_err());
        assert!(EpWord::parse("12", 4).is_err());
        assert!(EpWord::parse("1(2", 4).is_err());
        assert_eq!(
            EpWord::parse("10,11(0)", 16).unwrap().to_string(),
            "10,11(0)"
        );
        assert_eq!(SignedWord::parse_inferred("(15)").unwrap().period(), &[15]);
    }

    #[test]
    fn from_indices_uses_given_order() {
        let s = SignedWord::from_indices(&[3, 15], &[1], &[0]).unwrap();
        assert_eq!(s.to_string(), "15(3)");
        assert!(SignedWord::from_indices(&[3, 15], &[2], &[0]).is_err());
    }
}

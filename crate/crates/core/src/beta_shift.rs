//! The symbolic layer of a beta-shift: greedy expansions, the supremum
//! sequence, admissible words, successors, interval endpoints, weights of
//! follower projections, and the SFT/sofic classification.
//!
//! Two digit streams of the base live here and they differ exactly when
//! the expansion of 1 terminates:
//!
//! * the *greedy* digits of 1 (finite for a shift of finite type), which
//!   drive the remainder sequence `beta_n` and the classification, and
//! * the *quasi-greedy* supremum sequence `xi_beta` (always infinite),
//!   which governs admissibility and the weight recursion.
//!
//! For a finite greedy expansion `xi_1 .. xi_k` the quasi-greedy stream is
//! the periodic word `(xi_1 .. xi_{k-1} (xi_k - 1))^inf`; otherwise the two
//! streams agree.

use crate::error::{Error, Result};
use crate::number_core::{BetaContext, BetaNumber, ContextRepr};
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;

/// Classification of the shift, with minimal indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum ShiftClass {
    /// The expansion of 1 is finite with k digits.
    #[serde(rename = "sft")]
    Sft { k: usize },
    /// The expansion of 1 is ultimately periodic: the remainder after
    /// `k_beta + 1` digits first repeats the remainder after `l` digits.
    #[serde(rename = "sofic")]
    Sofic { l: usize, k_beta: usize },
    /// No termination or exact repeat within the inspected depth.
    #[serde(rename = "unknown")]
    NotSoficUpTo { depth: usize },
}

impl ShiftClass {
    pub fn is_sofic_or_sft(&self) -> bool {
        !matches!(self, ShiftClass::NotSoficUpTo { .. })
    }
}

impl fmt::Display for ShiftClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ShiftClass::Sft { k } => write!(f, "SFT(k={k})"),
            ShiftClass::Sofic { l, k_beta } => write!(f, "sofic(l={l}, k_beta={k_beta})"),
            ShiftClass::NotSoficUpTo { depth } => write!(f, "not sofic up to depth {depth}"),
        }
    }
}

/// A finite prefix of a digit sequence together with its eventual period,
/// when one is known exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DigitSeq {
    pub prefix: Vec<u32>,
    /// `(preperiod length, period block)` of the full infinite sequence.
    pub eventual_period: Option<(usize, Vec<u32>)>,
}

/// An admissible finite word over the alphabet of a context.
///
/// Admissibility is checked at construction; every `Word` in circulation
/// satisfies the shift-domination condition.
#[derive(Clone)]
pub struct Word {
    ctx: BetaContext,
    letters: Vec<u32>,
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for l in &self.letters {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
            first = false;
        }
        Ok(())
    }
}

impl PartialEq for Word {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.same_context(&other.ctx) && self.letters == other.letters
    }
}
impl Eq for Word {}

impl BetaContext {
    /// Greedy digit of the expansion of 1 at position `i` (1-indexed).
    pub(crate) fn d_digit(&self, i: usize) -> u32 {
        debug_assert!(i >= 1);
        match self.repr() {
            ContextRepr::Integer { m } => {
                if i == 1 {
                    *m
                } else {
                    0
                }
            }
            ContextRepr::Rational { value, orbit } => {
                let mut orbit = orbit.lock().expect("orbit lock");
                while orbit.digits.len() < i {
                    let r = orbit.remainders.last().expect("seeded with r_0").clone();
                    let scaled = value * &r;
                    let d = scaled.floor().to_integer().to_u32().expect("digit fits u32");
                    orbit
                        .remainders
                        .push(&scaled - crate::poly::rat_int(d as i64));
                    orbit.digits.push(d);
                }
                orbit.digits[i - 1]
            }
            ContextRepr::Algebraic(alg) => {
                let l = alg.preperiod.len();
                if i <= l {
                    alg.preperiod[i - 1]
                } else if alg.period.is_empty() {
                    0
                } else {
                    alg.period[(i - 1 - l) % alg.period.len()]
                }
            }
        }
    }

    /// Quasi-greedy digit at position `i` (1-indexed).
    pub(crate) fn qg_digit(&self, i: usize) -> u32 {
        debug_assert!(i >= 1);
        match self.repr() {
            ContextRepr::Integer { m } => m - 1,
            ContextRepr::Rational { .. } => self.d_digit(i),
            ContextRepr::Algebraic(alg) => {
                if !alg.period.is_empty() {
                    return self.d_digit(i);
                }
                let k = alg.preperiod.len();
                let pos = (i - 1) % k;
                if pos == k - 1 {
                    alg.preperiod[pos] - 1
                } else {
                    alg.preperiod[pos]
                }
            }
        }
    }

    /// The greedy remainder `beta_n`: `beta_0 = 1` and
    /// `beta_{n+1} = beta * beta_n - xi_{n+1}` with greedy digits, i.e.
    /// `beta^n - xi_1 beta^{n-1} - ... - xi_n`.
    pub fn beta_n(&self, n: usize) -> BetaNumber {
        self.cached_d_remainder(n, |i| self.d_digit(i))
    }

    /// The quasi-greedy remainder: same recursion along `xi_beta`.
    pub(crate) fn qg_remainder(&self, n: usize) -> BetaNumber {
        self.cached_qg_remainder(n, |i| self.qg_digit(i))
    }

    /// First `n` digits of the greedy expansion of `x` in base beta.
    ///
    /// The exact identity `x = sum d_i beta^-i + r_n beta^-n` holds with
    /// `0 <= r_n <= 1`; `r_n = 1` (and a leading digit of N) can occur only
    /// for `x = 1` at an integer base.
    pub fn beta_expand(&self, x: &BetaNumber, n: usize) -> Result<Vec<u32>> {
        if !self.same_context(x.context()) {
            return Err(Error::ContextMismatch);
        }
        if n == 0 {
            return Err(Error::OutOfRange("expansion length must be >= 1".into()));
        }
        if x.sign() < 0 || x.compare(&self.one())? == Ordering::Greater {
            return Err(Error::OutOfRange("x must lie in [0, 1]".into()));
        }
        let beta = self.beta();
        let mut digits = Vec::with_capacity(n);
        let mut rem = x.clone();
        for _ in 0..n {
            let scaled = &beta * &rem;
            let d = scaled.floor();
            let d = d.to_u32().ok_or_else(|| {
                Error::InternalInvariantViolation("greedy digit out of u32 range".into())
            })?;
            digits.push(d);
            rem = &scaled - &self.from_int(d as i64);
        }
        Ok(digits)
    }

    /// First `n` digits of the quasi-greedy supremum sequence `xi_beta`.
    pub fn xi_beta(&self, n: usize) -> Vec<u32> {
        (1..=n).map(|i| self.qg_digit(i)).collect()
    }

    /// `xi_beta` prefix together with its eventual period when the context
    /// knows one.
    pub fn xi_description(&self, n: usize) -> DigitSeq {
        let prefix = self.xi_beta(n);
        let eventual_period = match self.repr() {
            ContextRepr::Integer { m } => Some((0, vec![m - 1])),
            ContextRepr::Rational { .. } => None,
            ContextRepr::Algebraic(alg) => {
                if alg.period.is_empty() {
                    let mut block = alg.preperiod.clone();
                    let last = block.last_mut().expect("nonempty digits");
                    *last -= 1;
                    Some((0, block))
                } else {
                    Some((alg.preperiod.len(), alg.period.clone()))
                }
            }
        };
        DigitSeq {
            prefix,
            eventual_period,
        }
    }

    /// Does every shifted suffix stay lexicographically below `xi_beta`?
    pub fn is_admissible(&self, letters: &[u32]) -> Result<bool> {
        let n = self.alphabet();
        for &l in letters {
            if l >= n {
                return Err(Error::LetterOutOfRange {
                    letter: l,
                    alphabet: n,
                });
            }
        }
        Ok(self.admissible_unchecked(letters))
    }

    fn admissible_unchecked(&self, letters: &[u32]) -> bool {
        for start in 0..letters.len() {
            for (offset, &l) in letters[start..].iter().enumerate() {
                let bound = self.qg_digit(offset + 1);
                match l.cmp(&bound) {
                    Ordering::Greater => return false,
                    Ordering::Less => break,
                    Ordering::Equal => {}
                }
            }
        }
        true
    }

    /// Build an admissible word, rejecting bad letters or domination
    /// failures.
    pub fn word(&self, letters: &[u32]) -> Result<Word> {
        if self.is_admissible(letters)? {
            Ok(Word {
                ctx: self.clone(),
                letters: letters.to_vec(),
            })
        } else {
            Err(Error::NotAdmissible(format!(
                "{:?} exceeds xi_beta under some shift",
                letters
            )))
        }
    }

    pub fn empty_word(&self) -> Word {
        Word {
            ctx: self.clone(),
            letters: Vec::new(),
        }
    }

    /// Parse a comma-separated word such as `"1,0,1"`; empty string means
    /// the empty word.
    pub fn word_from_str(&self, s: &str) -> Result<Word> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(self.empty_word());
        }
        let letters = s
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad letter {tok:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        self.word(&letters)
    }

    pub(crate) fn word_unchecked(&self, letters: Vec<u32>) -> Word {
        debug_assert!(self.admissible_unchecked(&letters));
        Word {
            ctx: self.clone(),
            letters,
        }
    }

    /// All admissible words of length `n` in lexicographic order.
    ///
    /// The walk keeps, per prefix, the set of suffix lengths that match a
    /// prefix of `xi_beta`; a letter is allowed iff it stays below the next
    /// quasi-greedy digit along every such match.
    pub fn enumerate_words(&self, n: usize) -> Vec<Word> {
        let mut out = Vec::new();
        let mut letters: Vec<u32> = Vec::with_capacity(n);
        // Match-set of the empty word: only the trivial match.
        let mut stack: Vec<Vec<usize>> = vec![vec![0]];
        self.enumerate_rec(n, &mut letters, &mut stack, &mut out);
        out
    }

    fn enumerate_rec(
        &self,
        n: usize,
        letters: &mut Vec<u32>,
        stack: &mut Vec<Vec<usize>>,
        out: &mut Vec<Word>,
    ) {
        if letters.len() == n {
            out.push(Word {
                ctx: self.clone(),
                letters: letters.clone(),
            });
            return;
        }
        let matches = stack.last().expect("match set per prefix").clone();
        let max_letter = matches
            .iter()
            .map(|&j| self.qg_digit(j + 1))
            .min()
            .expect("match set never empty");
        for c in 0..=max_letter {
            let mut next: Vec<usize> = matches
                .iter()
                .filter(|&&j| self.qg_digit(j + 1) == c)
                .map(|&j| j + 1)
                .collect();
            next.push(0);
            letters.push(c);
            stack.push(next);
            self.enumerate_rec(n, letters, stack, out);
            stack.pop();
            letters.pop();
        }
    }

    /// Scan the greedy remainders with exact tests: the first zero gives
    /// a shift of finite type, the first exact repeat a sofic shift.
    pub fn classify_shift(&self, depth: usize) -> ShiftClass {
        let beta = self.beta();
        let mut seen: Vec<BetaNumber> = Vec::new();
        let mut current = self.one();
        for n in 1..=depth {
            current = &(&beta * &current) - &self.from_int(self.d_digit(n) as i64);
            if current.is_zero() {
                return ShiftClass::Sft { k: n };
            }
            for (l, prev) in seen.iter().enumerate() {
                if prev == &current {
                    return ShiftClass::Sofic {
                        l: l + 1,
                        k_beta: n - 1,
                    };
                }
            }
            seen.push(current.clone());
        }
        ShiftClass::NotSoficUpTo { depth }
    }

    /// True when the expansion of 1 provably never becomes periodic.
    ///
    /// For a non-integer rational base p/q in lowest terms the n-th greedy
    /// remainder has reduced denominator exactly q^n, so remainders never
    /// repeat. The first few denominators are checked as a running sanity
    /// test of that argument.
    pub fn certified_never_periodic(&self) -> bool {
        match self.repr() {
            ContextRepr::Rational { value, .. } => {
                let q = value.denom().clone();
                for n in 1..=4usize {
                    self.d_digit(n);
                    let ContextRepr::Rational { orbit, .. } = self.repr() else {
                        unreachable!()
                    };
                    let orbit = orbit.lock().expect("orbit lock");
                    if orbit.remainders[n].denom() != &q.pow(n as u32) {
                        return false;
                    }
                }
                true
            }
            _ => false,
        }
    }
}

impl Word {
    pub fn context(&self) -> &BetaContext {
        &self.ctx
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The word extended by one letter, if still admissible.
    pub fn extended(&self, letter: u32) -> Result<Word> {
        let mut letters = self.letters.clone();
        letters.push(letter);
        self.ctx.word(&letters)
    }

    /// Lexicographically least admissible word of the same length strictly
    /// above this one; `None` when the word is maximal.
    ///
    /// Scans positions right to left for the first admissible increase and
    /// pads with zeros, which are always admissible continuations.
    pub fn successor(&self) -> Option<Word> {
        let n = self.letters.len();
        let alphabet = self.ctx.alphabet();
        for j in (1..=n).rev() {
            for c in (self.letters[j - 1] + 1)..alphabet {
                let mut cand: Vec<u32> = self.letters[..j - 1].to_vec();
                cand.push(c);
                if self.ctx.admissible_unchecked(&cand) {
                    cand.resize(cand.len() + (n - j), 0);
                    return Some(self.ctx.word_unchecked(cand));
                }
            }
        }
        None
    }

    /// Left endpoint `sum_i w_i beta^-i` of the word's cylinder interval.
    pub fn l_value(&self) -> BetaNumber {
        let beta_inv = self.ctx.beta_pow(-1);
        let mut acc = self.ctx.zero();
        for &l in self.letters.iter().rev() {
            acc = &(&acc + &self.ctx.from_int(l as i64)) * &beta_inv;
        }
        acc
    }

    /// Right endpoint: the left endpoint of the successor, or 1 for the
    /// maximal word.
    pub fn r_value(&self) -> BetaNumber {
        match self.successor() {
            Some(next) => next.l_value(),
            None => self.ctx.one(),
        }
    }

    /// Weight of the follower projection of this word: the unique
    /// KMS-state value of `a_w`.
    ///
    /// Peeling leading blocks that are forced to the identity reduces the
    /// word to its longest suffix matching a quasi-greedy prefix, whose
    /// weight is the corresponding quasi-greedy remainder. Equivalently
    /// `beta^|w| * (r(w) - l(w))`.
    pub fn kms_value(&self) -> BetaNumber {
        let n = self.letters.len();
        for j in (0..=n).rev() {
            if (0..j).all(|i| self.letters[n - j + i] == self.ctx.qg_digit(i + 1)) {
                return self.ctx.qg_remainder(j);
            }
        }
        unreachable!("the empty suffix always matches")
    }

    /// The canonical index j with `a_w = a_{xi_1 .. xi_j}`: the least
    /// j >= 0 whose greedy remainder equals the weight of this word.
    pub fn follower_index(&self) -> usize {
        let value = self.kms_value();
        let bound = self.letters.len() + classification_bound(&self.ctx) + 1;
        for j in 0..=bound {
            if self.ctx.beta_n(j) == value {
                return j;
            }
        }
        unreachable!("kms value always matches a greedy remainder")
    }

    /// Do this word and `other` admit exactly the same continuations?
    pub fn follower_equal(&self, other: &Word) -> Result<bool> {
        if !self.ctx.same_context(&other.ctx) {
            return Err(Error::ContextMismatch);
        }
        Ok(self.kms_value() == other.kms_value())
    }
}

/// How far the classification scan can need to look for digit-defined
/// contexts; used only to bound canonical-index searches.
fn classification_bound(ctx: &BetaContext) -> usize {
    match ctx.repr() {
        ContextRepr::Integer { .. } => 2,
        ContextRepr::Rational { .. } => 2,
        ContextRepr::Algebraic(alg) => alg.preperiod.len() + alg.period.len() + 2,
    }
}

//! Exact arithmetic for the base field of a beta-shift.
//!
//! A [`BetaContext`] pins down a real base `beta > 1` in one of three ways:
//! an integer (the full shift), an exact rational, or the root of the monic
//! integer polynomial determined by a digit expansion of 1. Every quantity
//! downstream (interval endpoints, weights, slopes) is a [`BetaNumber`]:
//! an element of Q(beta) with decidable comparison.
//!
//! The characteristic polynomial is not assumed irreducible. Zero tests go
//! through a gcd against its squarefree part plus a Sturm count on the
//! isolating interval; signs of nonzero values come from interval
//! refinement. Both are exact.

use crate::error::{Error, Result};
use crate::poly::{count_roots_in, rat_int, rat_sign, sturm_chain, QPoly, Rat};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock, RwLock};

/// How many bisection steps a sign determination may take before we assume
/// a bug. Each step halves the enclosure, so this allows widths below
/// 2^-4096: unreachable for honest nonzero inputs at sane sizes.
const MAX_REFINE_STEPS: usize = 4096;

pub(crate) enum ContextRepr {
    /// beta = m in Z, the full m-shift.
    Integer { m: u32 },
    /// beta = p/q in lowest terms, q > 1.
    Rational { value: Rat, orbit: Mutex<RationalOrbit> },
    /// beta is the unique root > 1 of `char_poly`.
    Algebraic(AlgebraicCtx),
}

pub(crate) struct AlgebraicCtx {
    /// Normalized digits of the expansion of 1: preperiod then period
    /// (empty period = finite expansion).
    pub preperiod: Vec<u32>,
    pub period: Vec<u32>,
    pub char_poly: QPoly,
    /// Squarefree part of `char_poly` (primitive integer coefficients).
    pub sqfree: QPoly,
    /// Sturm chain of `sqfree`.
    pub sturm: Vec<QPoly>,
    /// Interval (lo, hi] holding exactly one root of the squarefree part.
    /// Readers may narrow it; all published values stay valid enclosures.
    pub enclosure: RwLock<(Rat, Rat)>,
}

/// Greedy orbit of 1 for a rational base: digits and exact remainders,
/// grown on demand. `remainders[n]` is the remainder after n digits.
pub(crate) struct RationalOrbit {
    pub digits: Vec<u32>,
    pub remainders: Vec<Rat>,
}

pub(crate) struct ContextInner {
    spec: String,
    alphabet: u32,
    pub(crate) repr: ContextRepr,
    /// Lazily built sofic presentation; see `sofic_graph`.
    pub(crate) sofic_cache: OnceLock<Result<Arc<crate::sofic_graph::SoficSystem>>>,
    /// Memoized powers of beta and digit remainders. The entries are bare
    /// representations (context-free) to avoid reference cycles.
    caches: NumberCaches,
}

#[derive(Default)]
struct NumberCaches {
    beta_pows: Mutex<Vec<NumRepr>>,
    beta_neg_pows: Mutex<Vec<NumRepr>>,
    d_remainders: Mutex<Vec<NumRepr>>,
    qg_remainders: Mutex<Vec<NumRepr>>,
}

/// A validated base for beta-expansion arithmetic.
///
/// Cheap to clone (shared handle); values are immutable after construction
/// and safe to use from several threads.
#[derive(Clone)]
pub struct BetaContext {
    inner: Arc<ContextInner>,
}

impl fmt::Debug for BetaContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BetaContext({})", self.inner.spec)
    }
}

impl PartialEq for BetaContext {
    fn eq(&self, other: &Self) -> bool {
        self.same_context(other)
    }
}
impl Eq for BetaContext {}

enum ParsedSpec {
    Digits { pre: Vec<u32>, per: Vec<u32> },
    Rational { num: BigInt, den: BigInt },
}

fn parse_digit_list(s: &str, what: &str) -> Result<Vec<u32>> {
    if s.is_empty() {
        return Err(Error::Parse(format!("empty {what} digit list")));
    }
    s.split(',')
        .map(|tok| {
            tok.parse::<u32>()
                .map_err(|_| Error::Parse(format!("bad digit {tok:?} in {what}")))
        })
        .collect()
}

fn parse_spec(spec: &str) -> Result<ParsedSpec> {
    let spec = spec.trim();
    if let Some(body) = spec.strip_prefix("digits=") {
        if let Some(idx) = body.find(",(") {
            let pre = &body[..idx];
            let rest = &body[idx + 2..];
            let per = rest
                .strip_suffix(')')
                .ok_or_else(|| Error::Parse("unterminated period group".into()))?;
            if per.contains('(') || per.contains(')') || pre.contains('(') {
                return Err(Error::Parse("stray parenthesis in digit spec".into()));
            }
            Ok(ParsedSpec::Digits {
                pre: parse_digit_list(pre, "preperiod")?,
                per: parse_digit_list(per, "period")?,
            })
        } else {
            if body.contains('(') || body.contains(')') {
                return Err(Error::Parse("stray parenthesis in digit spec".into()));
            }
            Ok(ParsedSpec::Digits {
                pre: parse_digit_list(body, "digit")?,
                per: Vec::new(),
            })
        }
    } else if let Some(body) = spec.strip_prefix("rational=") {
        let (p, q) = body
            .split_once('/')
            .ok_or_else(|| Error::Parse("rational spec needs the form p/q".into()))?;
        let num = p
            .parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("bad numerator {p:?}")))?;
        let den = q
            .parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("bad denominator {q:?}")))?;
        if den.is_zero() {
            return Err(Error::Parse("zero denominator".into()));
        }
        if num.is_negative() || den.is_negative() {
            return Err(Error::Parse("rational spec must be positive".into()));
        }
        Ok(ParsedSpec::Rational { num, den })
    } else {
        Err(Error::Parse(
            "expected `digits=...` or `rational=p/q`".into(),
        ))
    }
}

/// Reduce a (preperiod, period) pair to canonical form: minimal period,
/// minimal preperiod, trailing zeros trimmed in the finite case.
fn normalize_digits(mut pre: Vec<u32>, mut per: Vec<u32>) -> Result<(Vec<u32>, Vec<u32>)> {
    if per.iter().all(|&d| d == 0) {
        per.clear();
    }
    if !per.is_empty() {
        // Minimal divisor period.
        let m = per.len();
        for d in 1..m {
            if m.is_multiple_of(d) && per.chunks(d).all(|c| c == &per[..d]) {
                per.truncate(d);
                break;
            }
        }
        // Absorb matching preperiod tail into the cycle.
        while let (Some(&a), Some(&b)) = (pre.last(), per.last()) {
            if a != b {
                break;
            }
            pre.pop();
            per.rotate_right(1);
        }
        if pre.is_empty() {
            return Err(Error::NotParryAdmissible(
                "a greedy expansion of 1 is never purely periodic".into(),
            ));
        }
    } else {
        while pre.last() == Some(&0) {
            pre.pop();
        }
    }
    if pre.is_empty() {
        return Err(Error::BetaOutOfRange("all digits are zero".into()));
    }
    Ok((pre, per))
}

fn canonical_digit_spec(pre: &[u32], per: &[u32]) -> String {
    let join = |v: &[u32]| {
        v.iter()
            .map(|d| d.to_string())
            .collect::<Vec<_>>()
            .join(",")
    };
    if per.is_empty() {
        format!("digits={}", join(pre))
    } else {
        format!("digits={},({})", join(pre), join(per))
    }
}

impl BetaContext {
    /// Build a context from a beta-spec string.
    ///
    /// Grammar: `digits=<d>(,<d>)*` for a finite expansion,
    /// `digits=<d>(,<d>)*,(<d>(,<d>)*)` with the parenthesized block
    /// repeating forever, or `rational=<p>/<q>`.
    pub fn new(spec: &str) -> Result<BetaContext> {
        match parse_spec(spec)? {
            ParsedSpec::Digits { pre, per } => {
                let (pre, per) = normalize_digits(pre, per)?;
                if per.is_empty() && pre.len() == 1 {
                    let m = pre[0];
                    if m < 2 {
                        return Err(Error::BetaOutOfRange(format!(
                            "digits={m} means beta = {m} <= 1"
                        )));
                    }
                    return Ok(Self::integer_context(m));
                }
                Self::algebraic_context(pre, per)
            }
            ParsedSpec::Rational { num, den } => {
                let value = Rat::new(num, den);
                if value <= Rat::one() {
                    return Err(Error::BetaOutOfRange(format!("beta = {value} <= 1")));
                }
                if value.is_integer() {
                    let m = value.to_integer().to_u32().ok_or_else(|| {
                        Error::OutOfRange("integer beta too large".into())
                    })?;
                    return Ok(Self::integer_context(m));
                }
                let alphabet = value.ceil().to_integer().to_u32().ok_or_else(|| {
                    Error::OutOfRange("beta too large for a finite alphabet".into())
                })?;
                let spec = format!("rational={}/{}", value.numer(), value.denom());
                Ok(BetaContext {
                    inner: Arc::new(ContextInner {
                        spec,
                        alphabet,
                        repr: ContextRepr::Rational {
                            value,
                            orbit: Mutex::new(RationalOrbit {
                                digits: Vec::new(),
                                remainders: vec![Rat::one()],
                            }),
                        },
                        sofic_cache: OnceLock::new(),
                        caches: NumberCaches::default(),
                    }),
                })
            }
        }
    }

    fn integer_context(m: u32) -> BetaContext {
        BetaContext {
            inner: Arc::new(ContextInner {
                spec: format!("digits={m}"),
                alphabet: m,
                repr: ContextRepr::Integer { m },
                sofic_cache: OnceLock::new(),
                caches: NumberCaches::default(),
            }),
        }
    }

    fn algebraic_context(pre: Vec<u32>, per: Vec<u32>) -> Result<BetaContext> {
        let xi1 = pre[0];
        if xi1 == 0 {
            return Err(Error::BetaOutOfRange(
                "first digit 0 forces beta <= 1".into(),
            ));
        }
        if pre.iter().chain(per.iter()).any(|&d| d > xi1) {
            return Err(Error::NotParryAdmissible(
                "a digit exceeds the first digit, violating shift domination".into(),
            ));
        }

        // Finite case: beta^k = xi_1 beta^{k-1} + ... + xi_k.
        // Periodic case: the degree-(l+m) identity equating the remainder
        // after one full period with the remainder after the preperiod.
        let char_poly = if per.is_empty() {
            let k = pre.len();
            let mut coeffs = vec![Rat::zero(); k + 1];
            coeffs[k] = Rat::one();
            for (i, &d) in pre.iter().enumerate() {
                coeffs[k - 1 - i] = -rat_int(d as i64);
            }
            QPoly::new(coeffs)
        } else {
            let l = pre.len();
            let big_k = l + per.len();
            let digits: Vec<u32> = pre.iter().chain(per.iter()).copied().collect();
            let mut coeffs = vec![Rat::zero(); big_k + 1];
            coeffs[big_k] = Rat::one();
            for (i, &d) in digits.iter().enumerate() {
                coeffs[big_k - 1 - i] -= rat_int(d as i64);
            }
            coeffs[l] -= Rat::one();
            for (i, &d) in pre.iter().enumerate() {
                coeffs[l - 1 - i] += rat_int(d as i64);
            }
            QPoly::new(coeffs)
        };

        let sqfree = char_poly.squarefree_part().primitive();
        let sturm = sturm_chain(&sqfree);
        let lo = rat_int(xi1 as i64);
        let hi = rat_int(xi1 as i64 + 1);
        if count_roots_in(&sturm, &lo, &hi) != 1 {
            return Err(Error::NotParryAdmissible(
                "digits admit no isolated root in (N-1, N]".into(),
            ));
        }

        let alphabet = xi1 + 1;
        let spec = canonical_digit_spec(&pre, &per);
        let ctx = BetaContext {
            inner: Arc::new(ContextInner {
                spec,
                alphabet,
                repr: ContextRepr::Algebraic(AlgebraicCtx {
                    preperiod: pre.clone(),
                    period: per.clone(),
                    char_poly,
                    sqfree,
                    sturm,
                    enclosure: RwLock::new((lo, hi)),
                }),
                sofic_cache: OnceLock::new(),
                caches: NumberCaches::default(),
            }),
        };
        ctx.validate_round_trip(&pre, &per)?;
        Ok(ctx)
    }

    /// Greedy re-expansion of 1 must reproduce the input digits: over the
    /// whole expansion (plus a zero remainder) in the finite case, over the
    /// preperiod and two periods (plus an exactly repeating remainder) in
    /// the periodic case.
    fn validate_round_trip(&self, pre: &[u32], per: &[u32]) -> Result<()> {
        let beta = self.beta();
        let steps = if per.is_empty() {
            pre.len()
        } else {
            pre.len() + 2 * per.len()
        };
        let expect = |i: usize| -> u32 {
            if i < pre.len() {
                pre[i]
            } else {
                per[(i - pre.len()) % per.len()]
            }
        };
        let mut rem = self.one();
        let mut at_preperiod = None;
        for i in 0..steps {
            let scaled = &beta * &rem;
            let digit = scaled.floor();
            let wanted = expect(i);
            if digit != BigInt::from(wanted) {
                return Err(Error::NotParryAdmissible(format!(
                    "greedy expansion of 1 gives digit {digit} at position {}, spec says {wanted}",
                    i + 1
                )));
            }
            rem = &scaled - &self.from_int(wanted as i64);
            if !per.is_empty() && i + 1 == pre.len() + per.len() {
                at_preperiod = Some(rem.clone());
            }
        }
        if per.is_empty() {
            if !rem.is_zero() {
                return Err(Error::NotParryAdmissible(
                    "expansion of 1 does not terminate where the spec says".into(),
                ));
            }
        } else {
            // Compare the remainder after one period against the remainder
            // after the preperiod; equality certifies eternal periodicity.
            let mut rem_l = self.one();
            for i in 0..pre.len() {
                rem_l = &(&beta * &rem_l) - &self.from_int(expect(i) as i64);
            }
            let rem_lp = at_preperiod.expect("periodic validation recorded a remainder");
            if rem_l.compare(&rem_lp)? != Ordering::Equal {
                return Err(Error::NotParryAdmissible(
                    "expansion of 1 is not periodic with the stated period".into(),
                ));
            }
        }
        Ok(())
    }

    /// Canonical beta-spec string; equal strings mean equal contexts.
    pub fn spec(&self) -> &str {
        &self.inner.spec
    }

    /// Alphabet size N, with N-1 < beta <= N.
    pub fn alphabet(&self) -> u32 {
        self.inner.alphabet
    }

    pub fn same_context(&self, other: &BetaContext) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.spec == other.inner.spec
    }

    pub(crate) fn repr(&self) -> &ContextRepr {
        &self.inner.repr
    }

    pub(crate) fn sofic_cache(&self) -> &OnceLock<Result<Arc<crate::sofic_graph::SoficSystem>>> {
        &self.inner.sofic_cache
    }

    pub fn zero(&self) -> BetaNumber {
        self.from_rat(Rat::zero())
    }

    pub fn one(&self) -> BetaNumber {
        self.from_rat(Rat::one())
    }

    pub fn from_int(&self, n: i64) -> BetaNumber {
        self.from_rat(rat_int(n))
    }

    pub fn from_rat(&self, r: Rat) -> BetaNumber {
        let repr = match &self.inner.repr {
            ContextRepr::Algebraic(_) => NumRepr::Poly(QPoly::constant(r)),
            _ => NumRepr::Rat(r),
        };
        BetaNumber {
            ctx: self.clone(),
            repr,
        }
    }

    /// The base itself as a number.
    pub fn beta(&self) -> BetaNumber {
        match &self.inner.repr {
            ContextRepr::Integer { m } => self.from_rat(rat_int(*m as i64)),
            ContextRepr::Rational { value, .. } => self.from_rat(value.clone()),
            ContextRepr::Algebraic(_) => BetaNumber {
                ctx: self.clone(),
                repr: NumRepr::Poly(QPoly::from_int_coeffs(&[0, 1])),
            },
        }
    }

    fn wrap(&self, repr: NumRepr) -> BetaNumber {
        BetaNumber {
            ctx: self.clone(),
            repr,
        }
    }

    /// beta^k for any integer k (negative powers included); memoized.
    pub fn beta_pow(&self, k: i64) -> BetaNumber {
        if k >= 0 {
            let mut cache = self.inner.caches.beta_pows.lock().expect("pow cache");
            if cache.is_empty() {
                cache.push(self.one().repr);
            }
            while (cache.len() as i64) <= k {
                let last = self.wrap(cache.last().expect("nonempty").clone());
                cache.push((&last * &self.beta()).repr);
            }
            self.wrap(cache[k as usize].clone())
        } else {
            let mut cache = self
                .inner
                .caches
                .beta_neg_pows
                .lock()
                .expect("pow cache");
            if cache.is_empty() {
                cache.push(self.one().repr);
                cache.push(self.beta().inv().expect("beta > 1 is invertible").repr);
            }
            while (cache.len() as i64) <= -k {
                let last = self.wrap(cache.last().expect("nonempty").clone());
                let inv = self.wrap(cache[1].clone());
                cache.push((&last * &inv).repr);
            }
            self.wrap(cache[(-k) as usize].clone())
        }
    }

    /// Greedy remainder beta_n, memoized; `digit` supplies the greedy
    /// digit stream (1-indexed).
    pub(crate) fn cached_d_remainder(
        &self,
        n: usize,
        digit: impl Fn(usize) -> u32,
    ) -> BetaNumber {
        self.cached_remainder(&self.inner.caches.d_remainders, n, digit)
    }

    /// Quasi-greedy remainder, memoized.
    pub(crate) fn cached_qg_remainder(
        &self,
        n: usize,
        digit: impl Fn(usize) -> u32,
    ) -> BetaNumber {
        self.cached_remainder(&self.inner.caches.qg_remainders, n, digit)
    }

    fn cached_remainder(
        &self,
        cache: &Mutex<Vec<NumRepr>>,
        n: usize,
        digit: impl Fn(usize) -> u32,
    ) -> BetaNumber {
        let mut cache = cache.lock().expect("remainder cache");
        if cache.is_empty() {
            cache.push(self.one().repr);
        }
        while cache.len() <= n {
            let i = cache.len();
            let prev = self.wrap(cache.last().expect("nonempty").clone());
            let next = &(&self.beta() * &prev) - &self.from_int(digit(i) as i64);
            cache.push(next.repr);
        }
        self.wrap(cache[n].clone())
    }

    fn reduce(&self, p: QPoly) -> QPoly {
        match &self.inner.repr {
            ContextRepr::Algebraic(alg) => {
                if p.degree() < alg.char_poly.degree() {
                    p
                } else {
                    p.rem(&alg.char_poly)
                }
            }
            _ => unreachable!("polynomial representation outside an algebraic context"),
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) enum NumRepr {
    Rat(Rat),
    /// Rational-coefficient polynomial in beta, reduced mod the
    /// characteristic polynomial. Equal values may have distinct
    /// representatives when the characteristic polynomial is reducible;
    /// comparisons account for that.
    Poly(QPoly),
}

/// An exact element of Q(beta).
#[derive(Clone)]
pub struct BetaNumber {
    ctx: BetaContext,
    repr: NumRepr,
}

impl BetaNumber {
    pub fn context(&self) -> &BetaContext {
        &self.ctx
    }

    /// Coefficients of the stored polynomial representative, ascending
    /// (a plain fraction is a length-1 list).
    pub fn poly_coeffs(&self) -> Vec<Rat> {
        match &self.repr {
            NumRepr::Rat(r) => vec![r.clone()],
            NumRepr::Poly(p) => {
                if p.is_zero() {
                    vec![Rat::zero()]
                } else {
                    p.coeffs().to_vec()
                }
            }
        }
    }

    /// Exact rational value, if this number is rational *by representation*.
    pub fn as_rational(&self) -> Option<&Rat> {
        match &self.repr {
            NumRepr::Rat(r) => Some(r),
            NumRepr::Poly(_) => None,
        }
    }

    fn assert_same_ctx(&self, other: &BetaNumber) {
        assert!(
            self.ctx.same_context(&other.ctx),
            "beta numbers from different contexts"
        );
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            NumRepr::Rat(r) => r.is_zero(),
            NumRepr::Poly(p) => {
                if p.is_zero() {
                    return true;
                }
                if p.degree() == Some(0) {
                    return false;
                }
                let ContextRepr::Algebraic(alg) = self.ctx.repr() else {
                    unreachable!()
                };
                zero_certificate(p, alg)
            }
        }
    }

    /// Sign of the value: -1, 0 or +1. Exact.
    ///
    /// A few rounds of interval evaluation settle most nonzero values
    /// straight from the cached enclosure; only then is the (more
    /// expensive) zero certificate consulted, after which refinement is
    /// guaranteed to terminate.
    pub fn sign(&self) -> i8 {
        match &self.repr {
            NumRepr::Rat(r) => rat_sign(r),
            NumRepr::Poly(p) => {
                if p.is_zero() {
                    return 0;
                }
                if p.degree() == Some(0) {
                    return rat_sign(&p.coeff(0));
                }
                let ContextRepr::Algebraic(alg) = self.ctx.repr() else {
                    unreachable!()
                };
                let (mut lo, mut hi) = alg.enclosure.read().expect("enclosure lock").clone();
                for step in 0..MAX_REFINE_STEPS {
                    let (elo, ehi) = p.eval_interval(&lo, &hi);
                    let s = if rat_sign(&elo) > 0 {
                        1
                    } else if rat_sign(&ehi) < 0 {
                        -1
                    } else {
                        0
                    };
                    if s != 0 {
                        let mut cache = alg.enclosure.write().expect("enclosure lock");
                        if &hi - &lo < &cache.1 - &cache.0 {
                            *cache = (lo, hi);
                        }
                        return s;
                    }
                    if step == 3 && zero_certificate(p, alg) {
                        return 0;
                    }
                    let mid = (&lo + &hi) / rat_int(2);
                    if count_roots_in(&alg.sturm, &lo, &mid) == 1 {
                        hi = mid;
                    } else {
                        lo = mid;
                    }
                }
                panic!("sign determination did not converge; nonzero test is unsound")
            }
        }
    }

    /// Total order on real values. Errors if the operands live in
    /// different contexts.
    pub fn compare(&self, other: &BetaNumber) -> Result<Ordering> {
        if !self.ctx.same_context(&other.ctx) {
            return Err(Error::ContextMismatch);
        }
        let diff = self - other;
        Ok(match diff.sign() {
            -1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        })
    }

    /// Largest integer <= value.
    pub fn floor(&self) -> BigInt {
        match &self.repr {
            NumRepr::Rat(r) => r.floor().to_integer(),
            NumRepr::Poly(p) => {
                let ContextRepr::Algebraic(alg) = self.ctx.repr() else {
                    unreachable!()
                };
                let (mut lo, mut hi) = alg.enclosure.read().expect("enclosure lock").clone();
                let mut value_bounds = p.eval_interval(&lo, &hi);
                for _ in 0..MAX_REFINE_STEPS {
                    if &value_bounds.1 - &value_bounds.0 < Rat::one() {
                        break;
                    }
                    let mid = (&lo + &hi) / rat_int(2);
                    if count_roots_in(&alg.sturm, &lo, &mid) == 1 {
                        hi = mid;
                    } else {
                        lo = mid;
                    }
                    value_bounds = p.eval_interval(&lo, &hi);
                }
                let mut cand = value_bounds.0.floor().to_integer();
                // Settle the boundary exactly: floor = max { c : value - c >= 0 }.
                loop {
                    let next: BigInt = &cand + 1;
                    if (self - &self.ctx.from_rat(Rat::from_integer(next.clone()))).sign() >= 0 {
                        cand = next;
                    } else {
                        break;
                    }
                }
                while (self - &self.ctx.from_rat(Rat::from_integer(cand.clone()))).sign() < 0 {
                    cand -= 1;
                }
                cand
            }
        }
    }

    /// Multiplicative inverse. The characteristic polynomial may be
    /// reducible, so the representative is first made coprime to a factor
    /// that still vanishes at beta (gcd refinement only, no factorization).
    pub fn inv(&self) -> Result<BetaNumber> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match &self.repr {
            NumRepr::Rat(r) => Ok(self.ctx.from_rat(r.recip())),
            NumRepr::Poly(p) => {
                let ContextRepr::Algebraic(alg) = self.ctx.repr() else {
                    unreachable!()
                };
                let mut modulus = alg.char_poly.clone();
                loop {
                    let g = p.gcd(&modulus);
                    if g.degree() == Some(0) {
                        break;
                    }
                    // g divides our nonzero representative, so g(beta) != 0
                    // and the cofactor still vanishes at beta.
                    modulus = modulus.div_exact(&g);
                    debug_assert!(modulus.degree().map(|d| d >= 1).unwrap_or(false));
                }
                let (g, u, _) = p.ext_gcd(&modulus);
                debug_assert_eq!(g.degree(), Some(0));
                let scale = Rat::one() / g.coeff(0);
                Ok(BetaNumber {
                    ctx: self.ctx.clone(),
                    repr: NumRepr::Poly(self.ctx.reduce(u.scale(&scale))),
                })
            }
        }
    }

    pub fn div(&self, other: &BetaNumber) -> Result<BetaNumber> {
        self.assert_same_ctx(other);
        Ok(self * &other.inv()?)
    }

    /// Correctly rounded decimal string with `places` digits after the
    /// point (round half up).
    pub fn to_decimal(&self, places: usize) -> String {
        let scale = Rat::from_integer(BigInt::from(10u32).pow(places as u32));
        let shifted = self * &self.ctx.from_rat(scale);
        let half = self.ctx.from_rat(Rat::new(BigInt::one(), BigInt::from(2)));
        let n = (&shifted + &half).floor();
        let neg = n.is_negative();
        let digits = n.magnitude().to_string();
        let digits = if digits.len() <= places {
            format!("{}{}", "0".repeat(places + 1 - digits.len()), digits)
        } else {
            digits
        };
        let (int_part, frac_part) = digits.split_at(digits.len() - places);
        let sign = if neg { "-" } else { "" };
        if places == 0 {
            format!("{sign}{int_part}")
        } else {
            format!("{sign}{int_part}.{frac_part}")
        }
    }
}

impl fmt::Debug for BetaNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BetaNumber({self})")
    }
}

impl fmt::Display for BetaNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            NumRepr::Rat(r) => write!(f, "{r}"),
            NumRepr::Poly(p) => {
                if p.is_zero() {
                    return write!(f, "0");
                }
                let mut first = true;
                for (i, c) in p.coeffs().iter().enumerate().rev() {
                    if c.is_zero() {
                        continue;
                    }
                    let mag = c.abs();
                    if first {
                        if c.is_negative() {
                            write!(f, "-")?;
                        }
                        first = false;
                    } else if c.is_negative() {
                        write!(f, " - ")?;
                    } else {
                        write!(f, " + ")?;
                    }
                    let unit_coeff = mag.is_one() && i > 0;
                    if !unit_coeff {
                        write!(f, "{mag}")?;
                    }
                    match i {
                        0 => {}
                        1 => {
                            if !unit_coeff {
                                write!(f, "*")?;
                            }
                            write!(f, "b")?;
                        }
                        _ => {
                            if !unit_coeff {
                                write!(f, "*")?;
                            }
                            write!(f, "b^{i}")?;
                        }
                    }
                }
                Ok(())
            }
        }
    }
}

/// `q(beta) = 0` decided without factoring: `q` shares a root with the
/// squarefree part inside the isolating interval iff their gcd does.
fn zero_certificate(p: &QPoly, alg: &AlgebraicCtx) -> bool {
    let g = p.gcd(&alg.sqfree);
    match g.degree() {
        None | Some(0) => false,
        _ => {
            let chain = sturm_chain(&g);
            let (lo, hi) = alg.enclosure.read().expect("enclosure lock").clone();
            count_roots_in(&chain, &lo, &hi) >= 1
        }
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $reduce:literal, |$a:ident, $b:ident| $rat:expr, |$pa:ident, $pb:ident| $poly:expr) => {
        impl std::ops::$trait<&BetaNumber> for &BetaNumber {
            type Output = BetaNumber;
            fn $method(self, rhs: &BetaNumber) -> BetaNumber {
                self.assert_same_ctx(rhs);
                let repr = match (&self.repr, &rhs.repr) {
                    (NumRepr::Rat($a), NumRepr::Rat($b)) => NumRepr::Rat($rat),
                    (NumRepr::Poly($pa), NumRepr::Poly($pb)) => {
                        // Addition and subtraction stay below the field
                        // degree; only products need reducing.
                        let out = $poly;
                        if $reduce {
                            NumRepr::Poly(self.ctx.reduce(out))
                        } else {
                            NumRepr::Poly(out)
                        }
                    }
                    _ => unreachable!("mixed representations inside one context"),
                };
                BetaNumber {
                    ctx: self.ctx.clone(),
                    repr,
                }
            }
        }
    };
}

binop!(Add, add, false, |a, b| a + b, |pa, pb| pa.add(pb));
binop!(Sub, sub, false, |a, b| a - b, |pa, pb| pa.sub(pb));
binop!(Mul, mul, true, |a, b| a * b, |pa, pb| pa.mul(pb));

impl std::ops::Neg for &BetaNumber {
    type Output = BetaNumber;
    fn neg(self) -> BetaNumber {
        let repr = match &self.repr {
            NumRepr::Rat(r) => NumRepr::Rat(-r.clone()),
            NumRepr::Poly(p) => NumRepr::Poly(p.neg()),
        };
        BetaNumber {
            ctx: self.ctx.clone(),
            repr,
        }
    }
}

impl PartialEq for BetaNumber {
    fn eq(&self, other: &Self) -> bool {
        self.compare(other) == Ok(Ordering::Equal)
    }
}
impl Eq for BetaNumber {}

impl PartialOrd for BetaNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Total order on values; panics on a context mismatch (use
/// [`BetaNumber::compare`] for the fallible form).
impl Ord for BetaNumber {
    fn cmp(&self, other: &Self) -> Ordering {
        self.compare(other).expect("context mismatch in Ord")
    }
}

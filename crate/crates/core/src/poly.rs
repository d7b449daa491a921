//! Dense univariate polynomials over the rationals, with just enough
//! machinery for root counting: Euclidean division, gcd, squarefree parts,
//! Sturm chains and sign-variation counts on half-open intervals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::cmp::Ordering;

pub(crate) type Rat = BigRational;

pub(crate) fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub(crate) fn rat_sign(r: &Rat) -> i8 {
    match r.cmp(&Rat::zero()) {
        Ordering::Less => -1,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    }
}

/// Coefficients ascending by degree, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct QPoly {
    coeffs: Vec<Rat>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rat) -> Self {
        Self::new(vec![c])
    }

    pub fn from_int_coeffs(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat_int(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn leading(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add(&self, other: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + other.coeff(i));
        }
        QPoly::new(out)
    }

    pub fn sub(&self, other: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) - other.coeff(i));
        }
        QPoly::new(out)
    }

    pub fn neg(&self) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }

    pub fn mul(&self, other: &QPoly) -> QPoly {
        if self.is_zero() || other.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly::new(out)
    }

    pub fn scale(&self, s: &Rat) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Euclidean division; panics if `div` is zero.
    pub fn div_rem(&self, div: &QPoly) -> (QPoly, QPoly) {
        assert!(!div.is_zero(), "division by the zero polynomial");
        let dd = div.degree().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (QPoly::zero(), QPoly::new(rem));
        }
        let lead_inv = Rat::one() / div.leading();
        let mut quot = vec![Rat::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let q = rem[i].clone() * &lead_inv;
            if q.is_zero() {
                continue;
            }
            quot[i - dd] = q.clone();
            for (j, c) in div.coeffs.iter().enumerate() {
                rem[i - dd + j] -= &q * c;
            }
        }
        (QPoly::new(quot), QPoly::new(rem))
    }

    pub fn rem(&self, div: &QPoly) -> QPoly {
        self.div_rem(div).1
    }

    /// Exact quotient; panics if the division leaves a remainder.
    pub fn div_exact(&self, div: &QPoly) -> QPoly {
        let (q, r) = self.div_rem(div);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn derivative(&self) -> QPoly {
        if self.coeffs.len() <= 1 {
            return QPoly::zero();
        }
        QPoly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * rat_int(i as i64 + 1))
                .collect(),
        )
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &QPoly) -> QPoly {
        let mut a = self.clone().primitive();
        let mut b = other.clone().primitive();
        while !b.is_zero() {
            let r = a.rem(&b).primitive();
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            let inv = Rat::one() / a.leading();
            a.scale(&inv)
        }
    }

    /// Extended gcd: returns (g, u, v) with u*self + v*other = g, g monic.
    pub fn ext_gcd(&self, other: &QPoly) -> (QPoly, QPoly, QPoly) {
        let mut r0 = self.clone();
        let mut r1 = other.clone();
        let mut u0 = QPoly::constant(Rat::one());
        let mut u1 = QPoly::zero();
        let mut v0 = QPoly::zero();
        let mut v1 = QPoly::constant(Rat::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let u = u0.sub(&q.mul(&u1));
            let v = v0.sub(&q.mul(&v1));
            r0 = r1;
            r1 = r;
            u0 = u1;
            u1 = u;
            v0 = v1;
            v1 = v;
        }
        if r0.is_zero() {
            return (r0, u0, v0);
        }
        let inv = Rat::one() / r0.leading();
        (r0.scale(&inv), u0.scale(&inv), v0.scale(&inv))
    }

    /// Rescale by a positive rational so the coefficients become coprime
    /// integers. Preserves signs everywhere, which is all Sturm counting
    /// needs.
    pub fn primitive(self) -> QPoly {
        if self.is_zero() {
            return self;
        }
        let mut denom_lcm = BigInt::one();
        for c in &self.coeffs {
            denom_lcm = num_integer::lcm(denom_lcm, c.denom().clone());
        }
        let mut nums: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * &denom_lcm / c.denom())
            .collect();
        let mut g = BigInt::zero();
        for n in &nums {
            g = num_integer::gcd(g, n.clone());
        }
        if !g.is_zero() && !g.is_one() {
            for n in &mut nums {
                *n = &*n / &g;
            }
        }
        QPoly::new(nums.into_iter().map(Rat::from_integer).collect())
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Exact interval extension by Horner: returns (lo, hi) enclosing
    /// {p(t) : t in [xlo, xhi]}.
    pub fn eval_interval(&self, xlo: &Rat, xhi: &Rat) -> (Rat, Rat) {
        let mut lo = Rat::zero();
        let mut hi = Rat::zero();
        for c in self.coeffs.iter().rev() {
            let cands = [&lo * xlo, &lo * xhi, &hi * xlo, &hi * xhi];
            let mut nlo = cands[0].clone();
            let mut nhi = cands[0].clone();
            for v in &cands[1..] {
                if *v < nlo {
                    nlo = v.clone();
                }
                if *v > nhi {
                    nhi = v.clone();
                }
            }
            lo = nlo + c;
            hi = nhi + c;
        }
        (lo, hi)
    }

    /// `self / gcd(self, self')`: same roots, all simple.
    pub fn squarefree_part(&self) -> QPoly {
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) || g.is_zero() {
            let inv = Rat::one() / self.leading();
            self.scale(&inv)
        } else {
            self.div_exact(&g)
        }
    }
}

/// Sturm chain of a squarefree polynomial, each member primitive.
pub(crate) fn sturm_chain(p: &QPoly) -> Vec<QPoly> {
    let mut chain = Vec::new();
    let p0 = p.clone().primitive();
    if p0.is_zero() {
        return chain;
    }
    chain.push(p0.clone());
    let mut prev = p0;
    let mut cur = p.derivative().primitive();
    while !cur.is_zero() {
        chain.push(cur.clone());
        let r = prev.rem(&cur).neg().primitive();
        prev = cur;
        cur = r;
    }
    chain
}

fn sign_variations_at(chain: &[QPoly], x: &Rat) -> usize {
    let mut count = 0;
    let mut last = 0i8;
    for p in chain {
        let s = rat_sign(&p.eval(x));
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Number of distinct real roots in the half-open interval (a, b].
pub(crate) fn count_roots_in(chain: &[QPoly], a: &Rat, b: &Rat) -> usize {
    debug_assert!(a < b);
    let va = sign_variations_at(chain, a);
    let vb = sign_variations_at(chain, b);
    va.saturating_sub(vb)
}

//! Shared helpers for the integration suites: a deterministic generator
//! and brute-force oracles kept independent of the library's own search
//! paths. Not every suite uses every helper.
#![allow(dead_code)]

use betafull::BetaContext;

/// SplitMix64; deterministic across platforms, good enough for seeded
/// property tests.
pub struct Rng(u64);

impl Rng {
    pub fn new(seed: u64) -> Rng {
        Rng(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, n: u64) -> u64 {
        self.next_u64() % n
    }

    pub fn range_i64(&mut self, lo: i64, hi: i64) -> i64 {
        lo + self.below((hi - lo + 1) as u64) as i64
    }
}

pub fn ctx(spec: &str) -> BetaContext {
    BetaContext::new(spec).expect("example context builds")
}

/// The example contexts exercised throughout the suites.
pub fn example_specs() -> Vec<&'static str> {
    vec!["digits=1,1", "digits=3,(2)", "digits=2", "rational=3/2"]
}

pub fn sofic_example_specs() -> Vec<&'static str> {
    vec!["digits=1,1", "digits=3,(2)", "digits=2", "digits=3"]
}

/// Every length-n string over the alphabet, filtered by the library's
/// admissibility test one letter list at a time (no search shortcuts).
pub fn brute_force_words(context: &BetaContext, n: usize) -> Vec<Vec<u32>> {
    let alphabet = context.alphabet();
    let mut out = Vec::new();
    let mut current = vec![0u32; n];
    loop {
        if context
            .is_admissible(&current)
            .expect("letters are in range")
        {
            out.push(current.clone());
        }
        // Odometer step.
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if current[i] + 1 < alphabet {
                current[i] += 1;
                for c in current.iter_mut().skip(i + 1) {
                    *c = 0;
                }
                break;
            }
        }
    }
}

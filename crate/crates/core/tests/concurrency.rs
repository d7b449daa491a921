//! The stated sharing contract: contexts and values are immutable and
//! safe to use from several threads; the isolating interval only ever
//! narrows, so concurrent readers always see a valid enclosure.

mod common;

use betafull::{matrices, random_table, BetaContext};
use common::ctx;
use std::sync::Arc;
use std::thread;

#[test]
fn one_context_shared_across_threads() {
    let c = Arc::new(ctx("digits=3,(2)"));
    let handles: Vec<_> = (0..8u64)
        .map(|t| {
            let c = Arc::clone(&c);
            thread::spawn(move || {
                // Interleave sign refinements, digit machinery, the cached
                // presentation, and table arithmetic.
                for i in 0..40u64 {
                    let k = (t * 40 + i) as i64 % 13 + 1;
                    let v = &c.beta_pow(-k) - &c.beta_pow(-k - 1);
                    assert_eq!(v.sign(), 1);
                    let w = c.enumerate_words(3);
                    assert_eq!(w.len(), 56);
                    let m = matrices(&c).unwrap();
                    assert_eq!(m.det_one_minus, -2);
                    let table = random_table(&c, t * 1000 + i, 3).unwrap();
                    table.validate().unwrap();
                }
                c.beta().to_decimal(30)
            })
        })
        .collect();
    let decimals: Vec<String> = handles
        .into_iter()
        .map(|h| h.join().expect("worker thread"))
        .collect();
    for d in &decimals {
        assert_eq!(d, &decimals[0]);
    }
    assert_eq!(decimals[0], "3.732050807568877293527446341506");
}

#[test]
fn separately_built_equal_contexts_interoperate() {
    let a = BetaContext::new("digits=1,1").unwrap();
    let b = BetaContext::new("digits=1,1").unwrap();
    let x = a.beta();
    let y = b.beta();
    assert_eq!(&x - &y, a.zero());
    assert_eq!(
        x.compare(&y).unwrap(),
        std::cmp::Ordering::Equal
    );
}

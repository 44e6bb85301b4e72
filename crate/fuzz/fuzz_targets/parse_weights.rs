#![no_main]

use libfuzzer_sys::fuzz_target;
use zerosum_lab::weights::{check_theorem1_hypothesis, WeightFamily};

// line 1: the exponent, line 2: the family grammar
fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let (first, rest) = match s.split_once('\n') {
        Some(pair) => pair,
        None => return,
    };
    let Ok(n) = first.trim().parse::<u64>() else { return };
    if !(2..=4096).contains(&n) {
        return;
    }
    let Ok(family) = rest.parse::<WeightFamily>() else { return };
    let Ok(w) = family.resolve(n) else { return };

    assert!(!w.is_empty());
    assert_eq!(w.modulus(), n);
    let vals = w.values();
    assert!(vals.windows(2).all(|p| p[0] < p[1]), "sorted and distinct");
    assert!(vals[0] >= 1 && *vals.last().unwrap() <= n, "range [1, n]");

    for p in [2u64, 3, 5] {
        let rep = check_theorem1_hypothesis(&w, p);
        if rep.holds {
            assert!(w.len() as u64 <= p - 1);
        }
    }
});

#![no_main]

use libfuzzer_sys::fuzz_target;
use zerosum_lab::engine::is_zero_sum_free;
use zerosum_lab::{GroupSpec, Sequence, WeightSet};

// line 1: the group spec, line 2: the sequence grammar
fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let (first, rest) = match s.split_once('\n') {
        Some(pair) => pair,
        None => return,
    };
    let Ok(group) = first.parse::<GroupSpec>() else { return };
    if group.order() > 4096 {
        return;
    }
    let Ok(seq) = Sequence::parse(&group, rest) else { return };

    let canon = seq.canonical_form();
    assert!(canon.windows(2).all(|p| p[0] <= p[1]));
    assert_eq!(canon.len(), seq.len());

    // display form reparses to the same multiset
    let again = Sequence::parse(&group, &seq.to_string()).unwrap();
    assert_eq!(again.canonical_form(), canon);

    if seq.len() <= 128 {
        let one = WeightSet::new(&[1], group.exponent()).unwrap();
        let free = is_zero_sum_free(&group, &one, &seq).unwrap();
        if seq.contains_zero() {
            assert!(!free, "zero absorption");
        }
    }
});

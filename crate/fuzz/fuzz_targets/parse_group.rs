#![no_main]

use libfuzzer_sys::fuzz_target;
use zerosum_lab::GroupSpec;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let Ok(g) = s.parse::<GroupSpec>() else { return };
    let _ = g.davenport_classical();
    let _ = g.is_p_group();
    let _ = g.invariant_factors();

    // index round trip at both ends of the range
    for i in [0, g.order() - 1] {
        let e = g.element_of_index(i).unwrap();
        assert_eq!(g.index(&e).unwrap(), i);
    }

    // display output reparses to the same spec
    let again: GroupSpec = g.to_string().parse().unwrap();
    assert_eq!(again, g);
});

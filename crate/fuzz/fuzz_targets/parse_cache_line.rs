#![no_main]

use libfuzzer_sys::fuzz_target;
use zerosum_cli::cache::parse_cache_line;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let Ok(entry) = parse_cache_line(s) else { return };
    // accepted entries survive a serialize/parse round trip
    let line = serde_json::to_string(&entry).unwrap();
    let again = parse_cache_line(&line).unwrap();
    assert_eq!(entry, again);
});

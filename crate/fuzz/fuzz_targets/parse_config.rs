#![no_main]
use libfuzzer_sys::fuzz_target;

use slidecube::format::{parse_config, write_config};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(config) = parse_config(text) else {
        return;
    };
    let again = parse_config(&write_config(&config)).expect("written configuration parses");
    assert_eq!(config, again);
    if config.len() <= 64 {
        // may refuse huge bounding boxes, must not panic
        let _ = config.outer_boundary();
        let _ = config.is_connected();
    }
});

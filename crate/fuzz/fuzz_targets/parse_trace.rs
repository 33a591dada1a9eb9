#![no_main]
use libfuzzer_sys::fuzz_target;

use slidecube::format::{parse_trace, write_trace};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(file) = parse_trace(text) {
        let again = parse_trace(&write_trace(file.dim, &file.moves)).expect("written trace parses");
        assert_eq!(file, again);
        for m in &file.moves {
            // accepted moves have well-formed shapes, so their reverses do too
            m.reversed()
                .check_shape()
                .expect("reverse of a parsed move");
        }
    }
});

//! Input is a `.cfg` document, a line `---`, then a `.trace` document.
#![no_main]
use libfuzzer_sys::fuzz_target;

use slidecube::format::{parse_config, parse_trace};
use slidecube::kinematics::{reverse_trace, validate_trace};
use slidecube::Trace;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Some((cfg, trace)) = text.split_once("\n---\n") else {
        return;
    };
    let (Ok(initial), Ok(file)) = (parse_config(cfg), parse_trace(trace)) else {
        return;
    };
    if file.dim != initial.dim() || initial.len() > 64 || file.moves.len() > 256 {
        return;
    }
    let trace = Trace::new(initial, file.moves);
    if let Ok(end) = validate_trace(&trace) {
        let back = reverse_trace(&trace, &end).expect("replayed trace reverses");
        assert_eq!(
            validate_trace(&back).expect("reverse replays"),
            trace.initial
        );
    }
});

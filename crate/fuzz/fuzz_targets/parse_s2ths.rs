#![no_main]
use libfuzzer_sys::fuzz_target;
use rbsep::io::{emit_s2ths, parse_s2ths};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(inst) = parse_s2ths(text) {
        let again = parse_s2ths(&emit_s2ths(&inst)).expect("emitted description parses");
        assert_eq!(again, inst);
    }
});

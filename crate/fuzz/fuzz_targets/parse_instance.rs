#![no_main]
use libfuzzer_sys::fuzz_target;
use rbsep::io::{emit_instance, parse_instance};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(inst) = parse_instance(text) {
        let emitted = emit_instance(&inst);
        let again = parse_instance(&emitted).expect("emitted instance parses");
        assert_eq!(again, inst);
        assert_eq!(emit_instance(&again), emitted);
    }
});

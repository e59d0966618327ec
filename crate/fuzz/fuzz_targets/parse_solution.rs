#![no_main]
use libfuzzer_sys::fuzz_target;
use rbsep::io::{emit_solution, parse_solution};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(lines) = parse_solution(text) {
        let again = parse_solution(&emit_solution(&lines, "fuzz")).expect("emitted solution parses");
        assert_eq!(again, lines);
    }
});

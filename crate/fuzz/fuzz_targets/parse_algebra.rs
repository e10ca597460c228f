#![no_main]

use libfuzzer_sys::fuzz_target;
use monogen_core::fuzzing;

fuzz_target!(|data: &[u8]| fuzzing::algebra_file(data));

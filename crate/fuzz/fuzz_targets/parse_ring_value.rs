#![no_main]

use libfuzzer_sys::fuzz_target;
use monogen_core::fuzzing;

fuzz_target!(|data: &[u8]| fuzzing::ring_value(data));

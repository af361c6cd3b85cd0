#![no_main]

use klein_core::incidence::{census_type, dual, IncidenceJson, IncidenceStructure};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(j) = serde_json::from_slice::<IncidenceJson>(data) else { return };
    let Ok(s) = IncidenceStructure::from_json(&j) else { return };
    assert_eq!(IncidenceStructure::from_json(&s.to_json()).unwrap(), s);
    let _ = census_type(&dual(&s));
});

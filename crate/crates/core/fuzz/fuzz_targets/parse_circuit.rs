#![no_main]

use libfuzzer_sys::fuzz_target;
use qaks_core::Circuit;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(circuit) = Circuit::parse(text) {
        let again = Circuit::parse(&circuit.to_text()).expect("printed circuit parses");
        assert_eq!(again, circuit);
        if circuit.n_qubits() <= 4 {
            let u = circuit.unitary().expect("small circuit synthesizes");
            assert!(u.unitarity_deviation() < 1e-9);
        }
    }
});

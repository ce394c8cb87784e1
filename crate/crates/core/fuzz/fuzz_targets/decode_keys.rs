#![no_main]

use cbabc::tsp::decode_keys;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let keys: Vec<f64> = data.chunks_exact(8).map(|c| f64::from_le_bytes(c.try_into().unwrap())).collect();
    if let Ok(order) = decode_keys(&keys) {
        let mut seen = vec![false; keys.len()];
        for &city in &order {
            assert!(!seen[city]);
            seen[city] = true;
        }
        assert!(order.windows(2).all(|w| keys[w[0]] <= keys[w[1]]));
    }
});

//! Deterministic digests for reproducibility metadata.

use serde::Serialize;
use sha2::{Digest, Sha256};

/// SHA-256 over the canonical JSON serialization of `value`, hex encoded.
///
/// All map-like structures in this crate serialize from `BTreeMap`s, so the
/// byte stream (and hence the digest) is deterministic.
pub fn digest_of<T: Serialize>(value: &T) -> String {
    let bytes = serde_json::to_vec(value).expect("serializable value");
    let mut hasher = Sha256::new();
    hasher.update(&bytes);
    let out = hasher.finalize();
    let mut s = String::with_capacity(64);
    for b in out {
        s.push_str(&format!("{b:02x}"));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stable_and_input_sensitive() {
        let a = digest_of(&("x", 1.0_f64));
        let b = digest_of(&("x", 1.0_f64));
        let c = digest_of(&("x", 2.0_f64));
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert_eq!(a.len(), 64);
    }
}

//! File formats: Matrix Market matrices, edge lists, CSV helpers and run
//! manifests.

mod edgelist;
mod manifest;
mod mtx;

pub use edgelist::{parse_edge_list, read_edge_list, write_edge_list, EdgeList};
pub use manifest::{InputDigest, RunManifest};
pub use mtx::{parse_matrix_market, read_matrix_market, write_matrix_market};

use sha2::{Digest, Sha256};

/// Float text with 17 significant digits.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

/// 64-bit content hash: the first 8 bytes of SHA-256, as 16 hex digits.
pub fn digest64(bytes: &[u8]) -> String {
    let d = Sha256::digest(bytes);
    d[..8].iter().map(|b| format!("{b:02x}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_round_trip() {
        for x in [0.1, 1.0 / 3.0, 2.0f64.sqrt(), 1e-300, -7.25, 0.0] {
            let s = fmt_float(x);
            assert_eq!(s.parse::<f64>().unwrap(), x);
        }
        assert_eq!(fmt_float(0.25), "2.5000000000000000e-1");
    }

    #[test]
    fn digest_is_stable() {
        assert_eq!(digest64(b""), "e3b0c44298fc1c14");
        assert_ne!(digest64(b"a"), digest64(b"b"));
    }
}

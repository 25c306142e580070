//! Seedable deterministic random source.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;
use sha2::{Digest, Sha256};

/// Identifier recorded in certificates. Root streams are
/// `ChaCha20Rng::seed_from_u64(seed)`; substreams are ChaCha20 keyed by
/// `SHA-256("monad-slice/substream" || seed_le || label)`.
pub const ALGORITHM_ID: &str = "chacha20+sha256-substreams";

#[derive(Debug, Clone)]
pub struct SeededRng {
    inner: ChaCha20Rng,
}

impl SeededRng {
    pub fn from_seed(seed: u64) -> Self {
        Self { inner: ChaCha20Rng::seed_from_u64(seed) }
    }

    /// An independent stream determined by `(master, label)` alone.
    pub fn substream(master: u64, label: &str) -> Self {
        let mut h = Sha256::new();
        h.update(b"monad-slice/substream");
        h.update(master.to_le_bytes());
        h.update(label.as_bytes());
        let digest = h.finalize();
        let mut key = [0u8; 32];
        key.copy_from_slice(&digest[..32]);
        Self { inner: ChaCha20Rng::from_seed(key) }
    }

    pub fn algorithm_id(&self) -> &'static str {
        ALGORITHM_ID
    }
}

impl RngCore for SeededRng {
    fn next_u32(&mut self) -> u32 {
        self.inner.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    fn fill_bytes(&mut self, dest: &mut [u8]) {
        self.inner.fill_bytes(dest)
    }

    fn try_fill_bytes(&mut self, dest: &mut [u8]) -> Result<(), rand::Error> {
        self.inner.try_fill_bytes(dest)
    }
}

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// A `(master, stream)` pair naming one reproducible random stream.
///
/// Streams sharing a master seed are independent ChaCha streams of the same
/// key, so the `k` ensemble runs of one ECG invocation never overlap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RngSeed {
    pub master: u64,
    pub stream: u64,
}

impl RngSeed {
    pub const fn new(master: u64, stream: u64) -> Self {
        RngSeed { master, stream }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.master);
        rng.set_stream(self.stream);
        rng
    }
}

impl From<u64> for RngSeed {
    fn from(master: u64) -> Self {
        RngSeed::new(master, 0)
    }
}

/// Derives a fresh master seed for the `index`-th repetition of an
/// experiment (SplitMix64 finalizer).
pub fn derive_master(master: u64, index: u64) -> u64 {
    let mut z = master
        .wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

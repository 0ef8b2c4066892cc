//! Counter-based random streams.
//!
//! Every draw is a pure function of (stream seed, counter), and every
//! stream seed is a pure function of (master seed, stream name). Trials
//! can therefore be generated in any order, on any thread, or in a
//! different process, and still agree bit for bit with a sequential run.
//! Each station consumes only its own stream, which is what makes the
//! per-station randomness locally generated.

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 output function.
fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// The named randomness consumers of a protocol run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stream {
    /// σ-sequence generation at the source.
    Source,
    /// Apparatus randomness at station 1.
    Station1,
    /// Apparatus randomness at station 2.
    Station2,
}

impl Stream {
    fn tag(self) -> u64 {
        match self {
            Stream::Source => 0x736f_7572_6365, // "source"
            Stream::Station1 => 0x7374_6174_3161, // "stat1a"
            Stream::Station2 => 0x7374_6174_3262, // "stat2b"
        }
    }
}

/// Seed of one named stream under a master seed.
pub fn stream_seed(master: u64, stream: Stream) -> u64 {
    mix(master ^ mix(stream.tag()))
}

/// Independent sub-seed for a derived experiment (scan point, Bell leg,
/// batch entry, ...).
pub fn derive_seed(master: u64, salt: u64) -> u64 {
    mix(master.wrapping_add(mix(salt ^ GOLDEN)))
}

/// The `counter`-th word of the stream seeded by `seed`.
pub fn stream_u64(seed: u64, counter: u64) -> u64 {
    mix(seed
        .wrapping_add(counter.wrapping_mul(GOLDEN))
        .wrapping_add(GOLDEN))
}

/// The `counter`-th uniform draw in `[0, 1)` (53-bit resolution).
pub fn unit_draw(seed: u64, counter: u64) -> f64 {
    (stream_u64(seed, counter) >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

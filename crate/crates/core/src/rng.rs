//! Counter-based random streams for reproducible parallel simulation.
//!
//! Every stream is a pure function of `(root seed, stream id, substream id)`,
//! so a sweep can hand one independent stream to each grid point and each
//! worker chunk without any coordination. Results are then invariant to the
//! degree of parallelism: the stream a chunk consumes depends only on its
//! index, never on which thread happens to run it.
//!
//! The generator itself is a 64-bit Weyl counter pushed through the
//! SplitMix64 finalizer — a counter-based construction with good diffusion,
//! plenty for Monte Carlo work (not cryptographic).

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

#[inline]
fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// One independent random stream.
#[derive(Debug, Clone)]
pub struct Stream {
    key: u64,
    counter: u64,
    cached_normal: Option<f64>,
}

impl Stream {
    /// Stream derived from a root seed alone.
    pub fn from_seed(seed: u64) -> Self {
        Self::derive(seed, 0, 0)
    }

    /// Stream for `(root seed, stream id, substream id)`. Distinct index
    /// pairs yield statistically independent streams.
    pub fn derive(seed: u64, stream: u64, substream: u64) -> Self {
        let mut key = mix(seed.wrapping_add(GOLDEN));
        key = mix(key ^ stream.wrapping_mul(0xD6E8_FEB8_6659_FD93));
        key = mix(key ^ substream.wrapping_mul(0xA5A5_B9FE_4D7C_35E7));
        Stream {
            key,
            counter: 0,
            cached_normal: None,
        }
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.counter = self.counter.wrapping_add(1);
        mix(self.key ^ self.counter.wrapping_mul(GOLDEN))
    }

    /// Uniform in the open interval (0, 1); never returns 0 or 1, so it is
    /// safe under `ln`.
    #[inline]
    pub fn next_f64(&mut self) -> f64 {
        const DEN: f64 = (1u64 << 53) as f64;
        (((self.next_u64() >> 11) as f64) + 0.5) / DEN
    }

    /// Unit-mean exponential variate.
    #[inline]
    pub fn next_exp(&mut self) -> f64 {
        -self.next_f64().ln()
    }

    /// Standard normal variate (Box–Muller; the second value of each pair is
    /// cached inside the stream).
    #[inline]
    pub fn next_normal(&mut self) -> f64 {
        if let Some(v) = self.cached_normal.take() {
            return v;
        }
        let r = (-2.0 * self.next_f64().ln()).sqrt();
        let theta = 2.0 * std::f64::consts::PI * self.next_f64();
        let (s, c) = theta.sin_cos();
        self.cached_normal = Some(r * s);
        r * c
    }
}

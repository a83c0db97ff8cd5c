//! Small shared helpers: a deterministic RNG, the Fibonacci sequence, and
//! JSON plumbing for arbitrary-precision integers.

use num_bigint::BigInt;

/// Serde adapters writing `BigInt` as plain JSON numbers of any size
/// (serde_json is built with `arbitrary_precision`).
pub mod serde_big {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};
    use std::str::FromStr;

    pub fn serialize<S: Serializer>(v: &BigInt, ser: S) -> Result<S::Ok, S::Error> {
        let n = serde_json::Number::from_string_unchecked(v.to_string());
        n.serialize(ser)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<BigInt, D::Error> {
        let n = serde_json::Number::deserialize(de)?;
        BigInt::from_str(&n.to_string()).map_err(serde::de::Error::custom)
    }

    pub mod vec {
        use num_bigint::BigInt;
        use serde::ser::SerializeSeq;
        use serde::{Deserialize, Deserializer, Serializer};
        use std::str::FromStr;

        pub fn serialize<S: Serializer>(v: &[BigInt], ser: S) -> Result<S::Ok, S::Error> {
            let mut seq = ser.serialize_seq(Some(v.len()))?;
            for item in v {
                let n = serde_json::Number::from_string_unchecked(item.to_string());
                seq.serialize_element(&n)?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Vec<BigInt>, D::Error> {
            let nums = Vec::<serde_json::Number>::deserialize(de)?;
            nums.iter()
                .map(|n| BigInt::from_str(&n.to_string()).map_err(serde::de::Error::custom))
                .collect()
        }
    }
}

/// SplitMix64. Used for every randomized sweep in the crate so that a seed
/// fully determines the output, independent of external crate versions.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, n)`.
    pub fn next_below(&mut self, n: u64) -> u64 {
        assert!(n > 0);
        // Rejection sampling keeps the distribution exactly uniform.
        let zone = u64::MAX - (u64::MAX % n);
        loop {
            let v = self.next_u64();
            if v < zone {
                return v % n;
            }
        }
    }

    /// Uniform in `[lo, hi]` (inclusive).
    pub fn next_range(&mut self, lo: i64, hi: i64) -> i64 {
        assert!(lo <= hi);
        lo + self.next_below((hi - lo + 1) as u64) as i64
    }

    /// Uniform in `[0, 1)`.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }
}

/// Fibonacci numbers with `fib(0) = fib(1) = 1`, the indexing used by the
/// rank vectors of the golden-ratio Bratteli diagram: 1, 1, 2, 3, 5, 8, …
pub fn fib(n: usize) -> BigInt {
    let (mut a, mut b) = (BigInt::from(1), BigInt::from(1));
    for _ in 0..n {
        let next = &a + &b;
        a = b;
        b = next;
    }
    a
}

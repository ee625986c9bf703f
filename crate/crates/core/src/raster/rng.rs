use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson, StandardNormal};

const FNV_OFFSET: u64 = 14695981039346656037;
const FNV_PRIME: u64 = 1099511628211;

fn fnv1a(bytes: &[u8]) -> u64 {
    bytes.iter().fold(FNV_OFFSET, |h, &b| (h ^ b as u64).wrapping_mul(FNV_PRIME))
}

/// FNV-1a (64-bit) of `"{global_seed}|{image_id}|{kind}|{severity}"`.
pub fn derive_seed(global_seed: u64, image_id: &str, kind: &str, severity: u32) -> u64 {
    fnv1a(format!("{global_seed}|{image_id}|{kind}|{severity}").as_bytes())
}

/// Seeded stream backed by ChaCha8, whose output is fixed by its
/// reference algorithm and therefore identical on every platform.
#[derive(Clone, Debug)]
pub struct RngStream {
    seed: u64,
    inner: ChaCha8Rng,
}

impl RngStream {
    pub fn from_seed(seed: u64) -> Self {
        Self { seed, inner: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn for_lineage(global_seed: u64, image_id: &str, kind: &str, severity: u32) -> Self {
        Self::from_seed(derive_seed(global_seed, image_id, kind, severity))
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Independent child stream, e.g. one per generated layer.
    pub fn fork(&mut self, label: &str) -> RngStream {
        let salt = fnv1a(label.as_bytes());
        RngStream::from_seed(self.inner.next_u64() ^ salt)
    }

    /// Uniform in `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        self.inner.random::<f64>()
    }

    pub fn uniform_range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    /// Uniform integer in `[0, n)`.
    pub fn below(&mut self, n: usize) -> usize {
        self.inner.random_range(0..n)
    }

    /// Uniform integer in `[lo, hi)`.
    pub fn int_range(&mut self, lo: i64, hi: i64) -> i64 {
        self.inner.random_range(lo..hi)
    }

    pub fn normal(&mut self, mean: f64, std: f64) -> f64 {
        let z: f64 = StandardNormal.sample(&mut self.inner);
        mean + std * z
    }

    pub fn poisson(&mut self, lambda: f64) -> f64 {
        if lambda <= 0.0 {
            return 0.0;
        }
        Poisson::new(lambda).map(|d| d.sample(&mut self.inner)).unwrap_or(lambda)
    }
}

impl RngCore for RngStream {
    fn next_u32(&mut self) -> u32 {
        self.inner.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.inner.fill_bytes(dst)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fnv_reference_vectors() {
        assert_eq!(fnv1a(b""), 0xcbf29ce484222325);
        assert_eq!(fnv1a(b"a"), 0xaf63dc4c8601ec8c);
        assert_eq!(fnv1a(b"foobar"), 0x85944171f73967e8);
    }

    #[test]
    fn derive_seed_hashes_the_joined_lineage() {
        assert_eq!(derive_seed(42, "P0001", "fog", 3), fnv1a(b"42|P0001|fog|3"));
        assert_eq!(derive_seed(42, "P0001", "fog", 3), derive_seed(42, "P0001", "fog", 3));
        // empty image id is a legal input
        assert_eq!(derive_seed(0, "", "snow", 1), fnv1a(b"0||snow|1"));
    }

    #[test]
    fn severity_changes_the_seed() {
        for id in ["P0000", "P0001", "P0706", "P2802", ""] {
            let seeds: std::collections::HashSet<u64> = (1..=5).map(|s| derive_seed(7, id, "gaussian_noise", s)).collect();
            assert_eq!(seeds.len(), 5);
        }
    }

    #[test]
    fn same_lineage_same_sequence() {
        let mut a = RngStream::for_lineage(1, "img", "shot_noise", 2);
        let mut b = RngStream::for_lineage(1, "img", "shot_noise", 2);
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
        let mut c = RngStream::for_lineage(1, "img", "shot_noise", 3);
        assert_ne!(a.next_u64(), c.next_u64());
    }

    #[test]
    fn chacha_stream_is_pinned() {
        // guards against a silent change of generator
        let mut r = RngStream::from_seed(0);
        let first = r.next_u64();
        let mut again = ChaCha8Rng::seed_from_u64(0);
        assert_eq!(first, again.next_u64());
    }

    #[test]
    fn distributions_stay_in_range() {
        let mut r = RngStream::from_seed(9);
        for _ in 0..1000 {
            let u = r.uniform();
            assert!((0.0..1.0).contains(&u));
            assert!(r.below(7) < 7);
            assert!(r.poisson(3.0) >= 0.0);
            let k = r.int_range(-3, 3);
            assert!((-3..3).contains(&k));
        }
        assert_eq!(r.poisson(0.0), 0.0);
    }
}

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Independent ChaCha8 stream `stream` of the generator seeded with `seed`.
/// Each Monte Carlo batch or trial draws from its own stream, so results do
/// not depend on how work is scheduled.
pub fn substream(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

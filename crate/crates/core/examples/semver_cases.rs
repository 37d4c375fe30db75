//! Prints random `[range, version]` pairs, one JSON array per line, for
//! `tests/data/semver_expect.js` to label.

use pacopt::testkit::{random_range_text, random_release};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() {
    let count: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(15_000);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5e3e);
    let tags = ["alpha", "rc.1", "0", "beta.2", "alpha.7"];
    for _ in 0..count {
        let range = random_range_text(&mut rng);
        let mut version = random_release(&mut rng).to_string();
        if rng.gen_bool(0.3) {
            version = format!("{version}-{}", tags[rng.gen_range(0..tags.len())]);
        }
        println!("{}", serde_json::json!([range, version]));
    }
}

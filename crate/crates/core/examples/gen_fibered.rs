//! Prints a random fibered system as a `.ags` file.
//!
//! Usage: `cargo run -p alexlin-core --example gen_fibered -- SEED N DIM`

use alexlin_core::fibered::random_fibered;
use alexlin_core::sysfile::{RepBlock, RingSpec, SystemFile};
use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let args: Vec<u64> = std::env::args()
        .skip(1)
        .map(|a| a.parse().expect("integer argument"))
        .collect();
    let [seed, n, dim] = args[..] else {
        eprintln!("usage: gen_fibered SEED N DIM");
        std::process::exit(2);
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let fs = random_fibered(&mut rng, n as usize, dim as usize, 4, 200);
    let entries: Vec<Vec<i64>> = fs
        .representation
        .images()
        .iter()
        .map(|m| {
            m.entries()
                .iter()
                .map(|e| e.coefficient(&[0]).to_i64().expect("small entry"))
                .collect()
        })
        .collect();
    let block = RepBlock::from_row_major("gamma", None, dim as usize, &entries);
    let file = SystemFile {
        system: fs.system,
        ring: RingSpec::Integers,
        parameters: Vec::new(),
        reps: vec![block],
    };
    println!("# fibered: fiber rank {n}, seed {seed}");
    print!("{}", file.to_text());
}

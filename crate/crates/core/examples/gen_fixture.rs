//! Regenerate `data/random_tuples.json`:
//! `cargo run -p qwalk-core --example gen_fixture > crates/core/data/random_tuples.json`

use qwalk_core::verify::{random_tuples, FIXTURE_LEN, FIXTURE_SEED};

fn main() {
    let tuples = random_tuples(FIXTURE_SEED, FIXTURE_LEN);
    println!("{}", serde_json::to_string_pretty(&tuples).expect("tuples serialize"));
}

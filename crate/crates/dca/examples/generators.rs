//! Draws seeded members of each function class and confirms the classifier
//! accepts them. The same (seed, class) always gives the same member.

use dca::classify::{check_fn, FnClass};
use dca::lab::{generate_function, GenConfig};

fn main() {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1);
    let cfg = GenConfig::new(3);
    for class in FnClass::ALL {
        match generate_function(class, &cfg, seed) {
            Ok(f) => println!(
                "{:<12} {:>3} points  window {}  member: {}",
                class.to_string(),
                f.dom_size(),
                f.window(),
                check_fn(&f, class).holds
            ),
            Err(e) => println!("{:<12} no generator: {e}", class.to_string()),
        }
    }
}

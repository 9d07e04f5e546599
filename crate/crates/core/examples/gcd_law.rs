//! Which chord cycles are reconfigurable, next to gcd(n-1, m-1).

use trigrid::grid::{generate, Instance};
use trigrid::oracle::{is_reconfigurable_bruteforce, Budget};

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 { a } else { gcd(b, a % b) }
}

fn main() -> trigrid::Result<()> {
    println!("n m gcd reconfigurable");
    for n in 2..=6 {
        for m in 1..n {
            let g = generate(&Instance::ChordCycle { n, m })?;
            println!("{n} {m} {} {}", gcd(n - 1, m - 1), is_reconfigurable_bruteforce(&g, Budget::default())?);
        }
    }
    Ok(())
}

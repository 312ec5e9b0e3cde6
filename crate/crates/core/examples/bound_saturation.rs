//! Exhaustive search for the largest scattered subspace of F_{q^n}^r.

use rmlab::linset::{linear_set, max_scattered_rank_search};

fn main() -> rmlab::Result<()> {
    for (r, n, q) in [(2, 2, 2), (2, 3, 2), (3, 2, 2), (2, 2, 3)] {
        let rep = max_scattered_rank_search(q, n, r, 1 << 24)?;
        let levels: Vec<String> = rep.levels.iter().map(|l| format!("k={}: {}", l.k, l.examined)).collect();
        println!(
            "V({r}, {q}^{n}): maximum scattered rank {} (rn/2 = {}); examined {}",
            rep.k,
            r * n as usize / 2,
            levels.join(", ")
        );
        println!("  witness has {} points", linear_set(&rep.witness, 1 << 24)?.size);
    }
    Ok(())
}

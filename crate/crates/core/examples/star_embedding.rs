//! Stars K_{1,a-1}, with the order reached against the smallest one possible.

use nofil::constructions::{embed_star, star};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let top: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(20);
    for a in 2..=top {
        let e = embed_star(a)?;
        println!(
            "a={a:>2}  STS({:>3})  bound {:>3}  {:<8} centre {:<6} {}",
            e.v,
            star::star_lower_bound(a),
            e.minimality.to_string(),
            e.centre,
            e.method
        );
        for r in &e.repairs {
            println!("        {r}");
        }
    }
    Ok(())
}

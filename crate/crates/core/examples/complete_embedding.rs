//! K_a embedded at 3a (odd a) or 3a+1 (even a).

use nofil::constructions::embed_complete;
use nofil::design::verify_embedding;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for a in 3..=9 {
        let cert = embed_complete(a)?;
        let report = verify_embedding(&cert)?;
        println!("K_{a}: STS({}) counts {} {}", cert.ts.v(), cert.counts(), report.summary());
    }
    Ok(())
}

//! Writes a certificate, reads it back and verifies it, then breaks it.

use nofil::constructions::embed_star;
use nofil::design::io::{parse_certificate, write_certificate};
use nofil::design::{verify_embedding, Role};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cert = embed_star(5)?.cert;
    let text = write_certificate(&cert);
    print!("{}", text.lines().take(6).map(|l| format!("{l}\n")).collect::<String>());
    let back = parse_certificate(&text)?;
    println!("round trip: {}", verify_embedding(&back)?.summary());

    // An available vertex marked unplayable no longer matches the graph.
    let x = back.partition.available()[0];
    let mut broken = back.clone();
    broken.partition = back.partition.with_role(x, Role::Unplayable);
    match verify_embedding(&broken) {
        Ok(r) => println!("after moving {}: {}", back.ts.label(x), r.summary()),
        Err(e) => println!("after moving {}: rejected, {e}", back.ts.label(x)),
    }
    Ok(())
}

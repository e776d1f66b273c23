use nofil::skolem::{self, SequenceKind};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for kind in SequenceKind::ALL {
        let d = if kind.has_defect() { 2 } else { 1 };
        let found: Vec<u32> = (1..=12).filter(|&t| skolem::exists(kind, t, d)).collect();
        println!("{} (d={d}) exists for t in {found:?}", kind.name());
    }
    let s = skolem::generate(SequenceKind::Hooked, 7, 1, 0)?;
    println!("hooked, t=7: {:?}", (1..=7).map(|r| s.pair(r).unwrap()).collect::<Vec<_>>());
    let s = skolem::special_skolem(9)?;
    println!("skolem with (1,2), t=9: {:?}", (1..=9).map(|r| s.pair(r).unwrap()).collect::<Vec<_>>());
    Ok(())
}

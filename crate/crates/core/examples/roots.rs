//! Root data of a McKay graph and the framed roots below `v`.
use mckay_chambers::{instance, Kind};

fn main() -> mckay_chambers::Result<()> {
    let l = instance(Kind::D, 4, 2)?;
    let rd = l.root_data.report();
    println!("D4: {} positive roots, Coxeter number {}, degrees {:?}", rd.positive_roots.len(), rd.h, rd.degrees);
    println!("delta = {:?}", rd.delta);
    let roots = l.roots_below_v()?;
    println!("{} framed positive roots below v = {}", roots.len(), l.v());
    for r in roots.iter().take(8) {
        println!("  {r}");
    }
    Ok(())
}

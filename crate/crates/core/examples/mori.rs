//! Movable cone and nef cones of the chambers in F, with wall contraction types.
use mckay_chambers::mori::{models_isomorphic, mori_chamber_report};
use mckay_chambers::arrangement::{c_minus_witness, c_plus_witness};
use mckay_chambers::{instance, Arrangement, EnumOptions, Kind};

fn main() -> mckay_chambers::Result<()> {
    let arr = Arrangement::new(&instance(Kind::A, 2, 2)?);
    let rep = mori_chamber_report(&arr, EnumOptions::default())?;
    println!("movable cone generators: {:?}", rep.movable_cone.generators.iter().map(|g| &g.0).collect::<Vec<_>>());
    for m in &rep.chambers {
        let gens: Vec<_> = m.generators.iter().map(|g| &g.0).collect();
        let walls: Vec<String> = m.walls.iter().map(|w| format!("{}:{:?}", w.normal, w.contraction)).collect();
        println!("{:?} nef {:?}\n    {}", m.ample_model_tag, gens, walls.join("  "));
    }
    let l = &arr.lattice;
    println!("C- vs C+: {:?}", models_isomorphic(&arr, &c_minus_witness(l), &c_plus_witness(l))?);
    Ok(())
}

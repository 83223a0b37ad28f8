//! Type A coordinates in which the interior walls become x_0 = x_i + ... + x_j.
use mckay_chambers::mori::{aw_coordinates, aw_interior_walls, aw_transform};
use mckay_chambers::{instance, Arrangement, Kind, StabilityParameter};

fn main() -> mckay_chambers::Result<()> {
    let l = instance(Kind::A, 2, 2)?;
    let arr = Arrangement::new(&l);
    println!("interior walls: {:?}", aw_interior_walls(&l)?);
    for h in &arr.hyperplanes {
        println!("{h} -> {:?}", aw_transform(&l, &h.normal)?);
    }
    let theta = StabilityParameter::from_finite_ints(&l, &[3, 1, 1])?;
    println!("{theta} has coordinates {:?}", aw_coordinates(&l, &theta)?);
    Ok(())
}

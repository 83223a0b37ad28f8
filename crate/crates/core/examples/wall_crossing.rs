//! Local models and the semismallness audit on every wall of F for A1 n=3.
use mckay_chambers::decomposition::DecompOptions;
use mckay_chambers::walls::{pick_generic_wall_point, semismall_audit, wall_info};
use mckay_chambers::{instance, Arrangement, Kind};

fn main() -> mckay_chambers::Result<()> {
    let arr = Arrangement::new(&instance(Kind::A, 1, 3)?);
    for h in &arr.hyperplanes {
        let Ok(t0) = pick_generic_wall_point(&arr, h) else { continue };
        if !t0.in_closed_f(&arr.lattice) {
            continue;
        }
        let rep = semismall_audit(&arr, &t0, DecompOptions::default())?;
        println!("{h} {:?} passes={}", wall_info(h).wall_class, rep.passes);
        for s in &rep.strata {
            println!("    codim {:>2} fibre {:?} {:?}", s.codim, s.fibre_dim, s.model.model_label);
        }
        if let Some(u) = rep.unstable_locus {
            println!("    unstable locus codim {:?} >= {}", u.codim, u.bound);
        }
    }
    Ok(())
}

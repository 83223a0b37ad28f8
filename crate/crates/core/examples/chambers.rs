//! Chambers inside F: enumeration against the closed formula, plus the slice picture for A2.
use mckay_chambers::arrangement::{count_chambers_formula, slice_polygons, total_chambers_formula};
use mckay_chambers::{instance, Arrangement, EnumOptions, Kind};

fn main() -> mckay_chambers::Result<()> {
    for (kind, rank, n) in [(Kind::A, 1, 4), (Kind::A, 2, 4), (Kind::A, 3, 3), (Kind::D, 4, 2)] {
        let l = instance(kind, rank, n)?;
        let arr = Arrangement::new(&l);
        let found = arr.enumerate_chambers_in_f(EnumOptions::default())?.len();
        println!(
            "{kind}{rank} n={n}: {found} chambers in F (formula {}), {} in total, {} walls",
            count_chambers_formula(&l)?,
            total_chambers_formula(&l)?,
            arr.len()
        );
    }

    let arr = Arrangement::new(&instance(Kind::A, 2, 4)?);
    for p in slice_polygons(&arr, EnumOptions::default())? {
        let label = p.label.as_deref().unwrap_or("-");
        println!("{:>4} facets={} unbounded={} {:?}", label, p.facet_count, p.unbounded, p.vertices_approx);
    }
    Ok(())
}

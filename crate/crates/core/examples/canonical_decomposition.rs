//! Canonical decompositions and representation types at a few parameters.
use mckay_chambers::decomposition::{
    canonical_decomposition, classify_parameter, representation_types, DecompOptions, ParameterClass,
};
use mckay_chambers::{instance, Arrangement, Kind, StabilityParameter};

fn main() -> mckay_chambers::Result<()> {
    let l = instance(Kind::A, 2, 3)?;
    let arr = Arrangement::new(&l);
    let opts = DecompOptions::default();
    for x in [[0, 0, 0], [1, 0, 0], [0, 1, 1], [2, -1, 0], [1, 1, 1]] {
        let theta = StabilityParameter::from_finite_ints(&l, &x)?;
        let cd = canonical_decomposition(&l, &l.v(), &theta, opts)?;
        let parts: Vec<String> = cd.summands.iter().map(|s| s.to_string()).collect();
        let class = match classify_parameter(&arr, &theta) {
            ParameterClass::GenericSmooth => "generic".to_string(),
            ParameterClass::SmoothNotGeneric(hs) => format!("smooth, walls: {}", hs.len()),
            ParameterClass::NonGeneric(hs) => format!("walls: {}", hs.len()),
        };
        println!("{theta} ({class}): v = {}  (sum of p = {})", parts.join(" + "), cd.p_total);
        for tau in representation_types(&l, &l.v(), &theta, opts)? {
            let t: Vec<String> = tau.parts.iter().map(|p| format!("{}x{}", p.mult, p.root)).collect();
            println!("    stratum dim {:>2}: {}", tau.stratum_dim, t.join(", "));
        }
    }
    Ok(())
}

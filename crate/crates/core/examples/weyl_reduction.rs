//! Moving a random generic parameter into F and checking the linearisation is unchanged.
use mckay_chambers::mori::linearisation_l;
use mckay_chambers::weyl::{group_order, reduce_to_f};
use mckay_chambers::{instance, Arrangement, Kind, StabilityParameter};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> mckay_chambers::Result<()> {
    let l = instance(Kind::A, 3, 3)?;
    let arr = Arrangement::new(&l);
    println!("|W| = {}", group_order(&l));
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..5 {
        let x: Vec<i64> = (0..=l.rank()).map(|_| rng.gen_range(-20..=20)).collect();
        let theta = StabilityParameter::from_finite_ints(&l, &x)?;
        if !arr.zero_set(&theta).is_empty() {
            continue;
        }
        let (w, tf) = reduce_to_f(&l, &theta)?;
        let word: Vec<String> = w.word.iter().map(|g| g.to_string()).collect();
        println!("{theta} -> {tf} via [{}]", word.join(" "));
        assert_eq!(linearisation_l(&l, &theta)?, linearisation_l(&l, &tf)?);
    }
    Ok(())
}

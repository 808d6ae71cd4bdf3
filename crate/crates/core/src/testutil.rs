use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::family::{ElementId, SetFamily};
use crate::set::ElementSet;

/// `{{1,2},{3},{2,3,4}}`; dense index = id - 1.
pub fn running_example() -> SetFamily {
    SetFamily::from_id_sets(vec![vec![1, 2], vec![3], vec![2, 3, 4]]).unwrap()
}

pub fn set_of(family: &SetFamily, ids: &[ElementId]) -> ElementSet {
    family.set_from_names(ids).unwrap()
}

pub fn ids(family: &SetFamily, sets: &[ElementSet]) -> Vec<Vec<ElementId>> {
    sets.iter().map(|s| family.names_of(s)).collect()
}

/// Random family with at most `max_universe` ids, 1..=`max_sets` sets of size 1..=`max_size`.
pub fn random_family(seed: u64, max_universe: u32, max_sets: usize, max_size: usize) -> SetFamily {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.random_range(1..=max_sets);
    let sets: Vec<Vec<ElementId>> = (0..n)
        .map(|_| {
            let k = rng.random_range(1..=max_size);
            (0..k).map(|_| rng.random_range(1..=max_universe)).collect()
        })
        .collect();
    SetFamily::from_id_sets(sets).unwrap()
}

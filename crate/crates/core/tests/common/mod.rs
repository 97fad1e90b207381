#![allow(dead_code)]

use jacobi_zak::{band_edges, UnitCell};
use rand::Rng;

/// Generic cell with `a in [0.5, 2]`, `b in [-1, 1]`.
pub fn random_cell<R: Rng>(rng: &mut R, p: usize) -> UnitCell {
    let a = (0..p).map(|_| rng.gen_range(0.5..2.0)).collect();
    let b = (0..p).map(|_| rng.gen_range(-1.0..1.0)).collect();
    UnitCell::new(a, b).unwrap()
}

/// Mirror-symmetric cell: palindromic `b` and `a_1..a_{p-1}`.
pub fn random_symmetric_cell<R: Rng>(rng: &mut R, p: usize) -> UnitCell {
    let mut b = vec![0.0; p];
    for i in 0..p.div_ceil(2) {
        let x = rng.gen_range(-1.0..1.0);
        b[i] = x;
        b[p - 1 - i] = x;
    }
    let mut a = vec![0.0; p];
    for i in 0..(p - 1).div_ceil(2) {
        let x = rng.gen_range(0.5..2.0);
        a[i] = x;
        a[p - 2 - i] = x;
    }
    a[p - 1] = rng.gen_range(0.5..2.0);
    UnitCell::new(a, b).unwrap()
}

/// 1-based indices of bands whose adjacent gaps are all at least `min_gap`.
pub fn separated_bands(cell: &UnitCell, min_gap: f64) -> Vec<usize> {
    let bands = band_edges(cell).unwrap();
    (0..bands.len())
        .filter(|&i| {
            let below = i == 0 || bands[i].lambda_min - bands[i - 1].lambda_max >= min_gap;
            let above =
                i + 1 == bands.len() || bands[i + 1].lambda_min - bands[i].lambda_max >= min_gap;
            below && above
        })
        .map(|i| i + 1)
        .collect()
}

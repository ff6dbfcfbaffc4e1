use super::LatticeVector;
use crate::poly::IntPoly;

/// Rank over Q(x) of the matrix whose columns are `vectors`, by
/// fraction-free Gaussian elimination.
pub fn rank_of(vectors: &[LatticeVector]) -> usize {
    let mut rows: Vec<Vec<IntPoly>> = vectors.iter().map(|v| v.entries().to_vec()).collect();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for row in rows.iter_mut().skip(rank + 1) {
            if row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            let updated: Vec<IntPoly> = row
                .iter()
                .zip(&pivot)
                .map(|(a, b)| &(a * &pivot[col]) - &(b * &factor))
                .collect();
            *row = primitive(updated);
        }
        rank += 1;
    }
    rank
}

/// Divides a row by the integer content of its entries.
fn primitive(row: Vec<IntPoly>) -> Vec<IntPoly> {
    let v = LatticeVector::new(row);
    let c = v.content();
    if c.is_zero() || c == num_bigint::BigInt::from(1) {
        return v.into_entries();
    }
    v.entries().iter().map(|e| e.div_exact_int(&c)).collect()
}

use num_traits::Zero;

//! Jacobi numbers over `N ∪ {-inf}` and the order bound
//! `sum_i (o_i - low o_i)` of a toric difference variety.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::ExtNat;
use crate::syzygy::MonomialMap;

/// Square matrix with entries in `N ∪ {-inf}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct ExtNatMatrix {
    rows: Vec<Vec<ExtNat>>,
}

impl ExtNatMatrix {
    pub fn new(rows: Vec<Vec<ExtNat>>) -> Result<Self> {
        let n = rows.len();
        if let Some((row, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
            return Err(Error::NotSquare { rows: n, row, len: r.len() });
        }
        Ok(ExtNatMatrix { rows })
    }

    pub fn from_u64s(rows: &[&[u64]]) -> Result<Self> {
        Self::new(rows.iter().map(|r| r.iter().map(|&v| ExtNat::Fin(v)).collect()).collect())
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<ExtNat>] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> ExtNat {
        self.rows[i][j]
    }
}

impl<'de> Deserialize<'de> for ExtNatMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<ExtNat>>::deserialize(d)?;
        ExtNatMatrix::new(rows).map_err(serde::de::Error::custom)
    }
}

/// Whether the finite entries admit a perfect matching (Kuhn's algorithm).
fn has_finite_matching(m: &ExtNatMatrix) -> bool {
    fn augment(m: &ExtNatMatrix, i: usize, seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
        for j in 0..m.size() {
            if m.get(i, j).is_finite() && !seen[j] {
                seen[j] = true;
                if owner[j].is_none_or(|k| augment(m, k, seen, owner)) {
                    owner[j] = Some(i);
                    return true;
                }
            }
        }
        false
    }
    let n = m.size();
    let mut owner = vec![None; n];
    (0..n).all(|i| augment(m, i, &mut vec![false; n], &mut owner))
}

/// Minimum-cost assignment (Hungarian method with potentials); returns the
/// column assigned to each row.
fn min_cost_assignment(cost: &[Vec<i128>]) -> Vec<usize> {
    let n = cost.len();
    let inf = i128::MAX / 4;
    let (mut u, mut v) = (vec![0i128; n + 1], vec![0i128; n + 1]);
    let mut p = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0;
        let mut minv = vec![inf; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = inf;
            let mut j1 = 0;
            for j in 1..=n {
                if !used[j] {
                    let cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                    if cur < minv[j] {
                        minv[j] = cur;
                        way[j] = j0;
                    }
                    if minv[j] < delta {
                        delta = minv[j];
                        j1 = j;
                    }
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut assign = vec![0; n];
    for j in 1..=n {
        if p[j] > 0 {
            assign[p[j] - 1] = j - 1;
        }
    }
    assign
}

/// Maximal diagonal sum `max_σ sum_i m_{i σ(i)}`; `-inf` when every
/// permutation meets a `-inf` entry. The empty matrix has Jacobi number 0.
pub fn jacobi_number(m: &ExtNatMatrix) -> ExtNat {
    let n = m.size();
    if !has_finite_matching(m) {
        return ExtNat::NegInf;
    }
    let max = m.rows.iter().flatten().filter_map(|e| e.finite()).max().unwrap_or(0) as i128;
    // any -inf entry costs more than every finite assignment together
    let penalty = (max + 1) * (n as i128 + 1);
    let cost: Vec<Vec<i128>> = m
        .rows
        .iter()
        .map(|r| r.iter().map(|e| e.finite().map_or(max + penalty, |w| max - w as i128)).collect())
        .collect();
    let assign = min_cost_assignment(&cost);
    assign.iter().enumerate().fold(ExtNat::Fin(0), |acc, (i, &j)| acc + m.get(i, j))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RowOrders {
    pub o: u64,
    pub o_low: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrderBoundReport {
    pub rows: Vec<RowOrders>,
    pub bound: u64,
}

/// Per-row `o_i = max deg`, `low o_i = min lowdeg` (with `lowdeg(0) = 0`) of
/// the `n x m` exponent matrix, and `bound = sum_i (o_i - low o_i)`.
pub fn order_bound(u: &MonomialMap) -> Result<OrderBoundReport> {
    let a = u.matrix();
    let mut rows = Vec::with_capacity(a.nrows());
    for i in 0..a.nrows() {
        let row = a.row(i);
        let o = row.entries().iter().filter_map(|e| e.degree()).max().ok_or(Error::ZeroRow(i))? as u64;
        let o_low = row.entries().iter().map(|e| e.lowdeg()).min().unwrap_or(0);
        rows.push(RowOrders { o, o_low });
    }
    let bound = rows.iter().map(|r| r.o - r.o_low).sum();
    Ok(OrderBoundReport { rows, bound })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{LatticeVector, PolyMatrix};

    const NEG: ExtNat = ExtNat::NegInf;

    #[test]
    fn jacobi_examples() {
        assert_eq!(jacobi_number(&ExtNatMatrix::from_u64s(&[&[1, 2], &[3, 4]]).unwrap()), ExtNat::Fin(5));
        let m = ExtNatMatrix::new(vec![vec![NEG, ExtNat::Fin(2)], vec![ExtNat::Fin(3), NEG]]).unwrap();
        assert_eq!(jacobi_number(&m), ExtNat::Fin(5));
        assert_eq!(jacobi_number(&ExtNatMatrix::from_u64s(&[&[0, 0], &[0, 0]]).unwrap()), ExtNat::Fin(0));
        let m = ExtNatMatrix::new(vec![vec![NEG, ExtNat::Fin(2)], vec![NEG, ExtNat::Fin(1)]]).unwrap();
        assert_eq!(jacobi_number(&m), NEG);
        assert_eq!(jacobi_number(&ExtNatMatrix::new(vec![]).unwrap()), ExtNat::Fin(0));
    }

    #[test]
    fn non_square_rejected() {
        assert!(matches!(
            ExtNatMatrix::from_u64s(&[&[1, 2], &[3]]),
            Err(Error::NotSquare { rows: 2, row: 1, len: 1 })
        ));
    }

    #[test]
    fn order_bound_examples() {
        let a = PolyMatrix::parse_rows(&[&["2", "x-1", "0", "0"], &["0", "0", "2", "x-1"]]).unwrap();
        let r = order_bound(&MonomialMap::from_matrix(&a)).unwrap();
        assert_eq!(r.rows, vec![RowOrders { o: 1, o_low: 0 }; 2]);
        assert_eq!(r.bound, 2);

        let id = MonomialMap::new(3, (0..3).map(|i| LatticeVector::unit(3, i)).collect()).unwrap();
        assert_eq!(order_bound(&id).unwrap().bound, 0);

        let u = MonomialMap::new(1, vec![LatticeVector::parse(&["x^2"]).unwrap(), LatticeVector::parse(&["x"]).unwrap()]).unwrap();
        let r = order_bound(&u).unwrap();
        assert_eq!(r.rows, vec![RowOrders { o: 2, o_low: 1 }]);
        assert_eq!(r.bound, 1);
    }

    #[test]
    fn zero_row_rejected() {
        let a = PolyMatrix::parse_rows(&[&["1", "x"], &["0", "0"]]).unwrap();
        assert!(matches!(order_bound(&MonomialMap::from_matrix(&a)), Err(Error::ZeroRow(1))));
    }
}

//! Exact phase-one simplex for systems `A x >= 1, x >= 0`.

use alloc::vec;
use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Result of [`feasibility`]: a feasible point, or Farkas multipliers
/// `y >= 0` with `y^T A <= 0` and `sum y > 0`.
pub(crate) enum Feasibility {
    Feasible(Vec<BigRational>),
    Infeasible(Vec<BigRational>),
}

/// Minimises the sum of artificials for `A x - s + t = 1` with Bland's rule.
pub(crate) fn feasibility(a: &[Vec<BigRational>], nvars: usize) -> Feasibility {
    let m = a.len();
    let ncols = nvars + 2 * m;
    let rhs = ncols;
    // columns: x (nvars) | surplus s (m) | artificial t (m) | rhs
    let mut tab: Vec<Vec<BigRational>> = (0..m)
        .map(|i| {
            let mut row = vec![BigRational::zero(); ncols + 1];
            row[..nvars].clone_from_slice(&a[i][..nvars]);
            row[nvars + i] = -BigRational::one();
            row[nvars + m + i] = BigRational::one();
            row[rhs] = BigRational::one();
            row
        })
        .collect();
    let mut basis: Vec<usize> = (0..m).map(|i| nvars + m + i).collect();
    let cost = |j: usize| -> BigRational {
        if j >= nvars + m {
            BigRational::one()
        } else {
            BigRational::zero()
        }
    };
    let reduced = |tab: &Vec<Vec<BigRational>>, basis: &Vec<usize>, j: usize| -> BigRational {
        let mut r = cost(j);
        for (i, &bi) in basis.iter().enumerate() {
            if bi >= nvars + m && !tab[i][j].is_zero() {
                r -= &tab[i][j];
            }
        }
        r
    };
    loop {
        let entering = (0..ncols).find(|&j| !basis.contains(&j) && reduced(&tab, &basis, j).is_negative());
        let Some(j) = entering else { break };
        let mut leave: Option<(usize, BigRational)> = None;
        for i in 0..m {
            if tab[i][j].is_positive() {
                let ratio = &tab[i][rhs] / &tab[i][j];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let (r, _) = leave.expect("phase one objective is bounded below");
        let piv = tab[r][j].clone();
        for v in tab[r].iter_mut() {
            *v /= &piv;
        }
        let prow = tab[r].clone();
        for (i, row) in tab.iter_mut().enumerate() {
            if i == r || row[j].is_zero() {
                continue;
            }
            let f = row[j].clone();
            for (v, p) in row.iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *v -= &f * p;
                }
            }
        }
        basis[r] = j;
    }
    let objective: BigRational = basis
        .iter()
        .enumerate()
        .filter(|&(_, &b)| b >= nvars + m)
        .map(|(i, _)| tab[i][rhs].clone())
        .fold(BigRational::zero(), |acc, v| acc + v);
    if objective.is_zero() {
        let mut x = vec![BigRational::zero(); nvars];
        for (i, &b) in basis.iter().enumerate() {
            if b < nvars {
                x[b] = tab[i][rhs].clone();
            }
        }
        Feasibility::Feasible(x)
    } else {
        let y = (0..m)
            .map(|i| BigRational::one() - reduced(&tab, &basis, nvars + m + i))
            .collect();
        Feasibility::Infeasible(y)
    }
}

//! Dense linear systems over F_p by Gauss-Jordan elimination.

use super::modulus::Modulus;

/// Solution set of `A x = b`: a particular solution (free variables set to
/// zero) plus a basis of the null space of `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSolution {
    pub particular: Vec<u64>,
    pub nullspace: Vec<Vec<u64>>,
}

/// Solves `rows · x = rhs`. Returns `None` when the system is inconsistent.
pub fn solve_affine(
    modulus: Modulus,
    n_unknowns: usize,
    rows: &[Vec<u64>],
    rhs: &[u64],
) -> Option<AffineSolution> {
    assert_eq!(rows.len(), rhs.len());
    let m = modulus;
    let mut aug: Vec<Vec<u64>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, &b)| {
            assert_eq!(r.len(), n_unknowns);
            let mut row: Vec<u64> = r.iter().map(|&x| m.reduce(x)).collect();
            row.push(m.reduce(b));
            row
        })
        .collect();

    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..n_unknowns {
        let Some(sel) = (rank..aug.len()).find(|&r| aug[r][col] != 0) else {
            continue;
        };
        aug.swap(rank, sel);
        let inv = m.inv(aug[rank][col]).expect("pivot is nonzero");
        for x in aug[rank].iter_mut() {
            *x = m.mul(*x, inv);
        }
        let pivot_row = aug[rank].clone();
        for (r, row) in aug.iter_mut().enumerate() {
            if r != rank && row[col] != 0 {
                let f = row[col];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = m.sub(*x, m.mul(f, y));
                }
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == aug.len() {
            break;
        }
    }

    if aug[rank..].iter().any(|row| row[n_unknowns] != 0) {
        return None;
    }

    let mut particular = vec![0; n_unknowns];
    for (r, &c) in pivots.iter().enumerate() {
        particular[c] = aug[r][n_unknowns];
    }

    let nullspace = (0..n_unknowns)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![0; n_unknowns];
            v[free] = 1;
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = m.neg(aug[r][free]);
            }
            v
        })
        .collect();

    Some(AffineSolution {
        particular,
        nullspace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn apply(m: Modulus, rows: &[Vec<u64>], x: &[u64]) -> Vec<u64> {
        rows.iter()
            .map(|r| {
                r.iter()
                    .zip(x)
                    .fold(0, |acc, (&a, &b)| m.add(acc, m.mul(a, b)))
            })
            .collect()
    }

    #[test]
    fn unique_solution() {
        let m = Modulus::new(7).unwrap();
        let rows = vec![vec![2, 1], vec![1, 3]];
        let sol = solve_affine(m, 2, &rows, &[5, 4]).unwrap();
        assert!(sol.nullspace.is_empty());
        assert_eq!(apply(m, &rows, &sol.particular), vec![5, 4]);
    }

    #[test]
    fn inconsistent_system() {
        let m = Modulus::new(3).unwrap();
        let rows = vec![vec![1, 1], vec![2, 2]];
        assert_eq!(solve_affine(m, 2, &rows, &[1, 1]), None);
    }

    #[test]
    fn nullspace_vectors_are_kernel_elements() {
        let m = Modulus::new(5).unwrap();
        let rows = vec![vec![1, 2, 3, 4], vec![2, 4, 1, 0]];
        let sol = solve_affine(m, 4, &rows, &[1, 2]).unwrap();
        assert_eq!(apply(m, &rows, &sol.particular), vec![1, 2]);
        assert_eq!(sol.nullspace.len(), 2);
        for v in &sol.nullspace {
            assert_eq!(apply(m, &rows, v), vec![0, 0]);
        }
    }

    #[test]
    fn empty_system() {
        let m = Modulus::new(2).unwrap();
        let sol = solve_affine(m, 2, &[], &[]).unwrap();
        assert_eq!(sol.particular, vec![0, 0]);
        assert_eq!(sol.nullspace.len(), 2);
    }
}

//! Exact Gaussian elimination over the rationals.

use crate::rational::Rat;
use num_traits::Zero;

pub enum Solve {
    /// A vector satisfying the pivot-row subsystem. For over-determined
    /// systems the caller verifies the remaining equations.
    Candidate(Vec<Rat>),
    /// Fewer independent rows than unknowns.
    RankDeficient,
}

/// Row-reduce the augmented system [rows | rhs]. Rows are consumed in order,
/// so the candidate is deterministic.
pub fn solve(rows: &[Vec<Rat>], rhs: &[Rat]) -> Solve {
    assert_eq!(rows.len(), rhs.len());
    let ncols = rows.first().map_or(0, Vec::len);
    let mut aug: Vec<Vec<Rat>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut row = r.clone();
            row.push(b.clone());
            row
        })
        .collect();

    let mut pivot_rows: Vec<usize> = Vec::new();
    let mut next_row = 0usize;
    for col in 0..ncols {
        let Some(p) = (next_row..aug.len()).find(|&r| !aug[r][col].is_zero()) else {
            return Solve::RankDeficient;
        };
        aug.swap(next_row, p);
        let inv = aug[next_row][col].clone().recip();
        for c in col..=ncols {
            aug[next_row][c] = &aug[next_row][c] * &inv;
        }
        for r in 0..aug.len() {
            if r != next_row && !aug[r][col].is_zero() {
                let factor = aug[r][col].clone();
                for c in col..=ncols {
                    let delta = &factor * &aug[next_row][c];
                    aug[r][c] = &aug[r][c] - &delta;
                }
            }
        }
        pivot_rows.push(next_row);
        next_row += 1;
    }

    let x = (0..ncols).map(|i| aug[pivot_rows[i]][ncols].clone()).collect();
    Solve::Candidate(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn solves_a_square_system() {
        let rows = vec![vec![rat(2), rat(1)], vec![rat(1), rat(3)]];
        let rhs = vec![rat(5), rat(10)];
        match solve(&rows, &rhs) {
            Solve::Candidate(x) => assert_eq!(x, vec![rat(1), rat(3)]),
            _ => panic!("expected solution"),
        }
    }

    #[test]
    fn detects_rank_deficiency() {
        let rows = vec![vec![rat(1), rat(2)], vec![rat(2), rat(4)]];
        let rhs = vec![rat(1), rat(2)];
        assert!(matches!(solve(&rows, &rhs), Solve::RankDeficient));
    }

    #[test]
    fn overdetermined_candidate_comes_from_pivot_rows() {
        let rows = vec![vec![rat(1)], vec![rat(1)]];
        let rhs = vec![rat(7), rat(8)]; // inconsistent: candidate is from row 0
        match solve(&rows, &rhs) {
            Solve::Candidate(x) => assert_eq!(x, vec![rat(7)]),
            _ => panic!("expected candidate"),
        }
    }
}

//! Exact maximum-weight perfect matching on a square rational matrix.
//!
//! This is the Kuhn-Munkres (Hungarian) algorithm in its O(n^3)
//! shortest-augmenting-path form, run on negated weights with exact rational
//! potentials. No floating point and no artificial "big M" bound is involved,
//! so the result is the true optimum for arbitrary rational weights.

use crate::error::{Error, Result};
use crate::model::Rational;

/// Square matrix of rational weights; `weight(i, j)` is the value of
/// assigning row `i` (an agent) to column `j` (a house).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightMatrix {
    weights: Vec<Vec<Rational>>,
}

impl WeightMatrix {
    pub fn new(weights: Vec<Vec<Rational>>) -> Result<Self> {
        let n = weights.len();
        if n == 0 {
            return Err(Error::NotSquare {
                agents: 0,
                houses: 0,
            });
        }
        for (row, entries) in weights.iter().enumerate() {
            if entries.len() != n {
                return Err(Error::RaggedMatrix {
                    row,
                    expected: n,
                    got: entries.len(),
                });
            }
        }
        Ok(WeightMatrix { weights })
    }

    pub fn size(&self) -> usize {
        self.weights.len()
    }

    pub fn weight(&self, row: usize, col: usize) -> &Rational {
        &self.weights[row][col]
    }
}

/// A perfect matching: `assignment[i]` is the column matched to row `i`,
/// and `weight` is the exact sum of the matched entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchingResult {
    pub assignment: Vec<usize>,
    pub weight: Rational,
}

/// Computes a maximum-weight perfect matching.
///
/// Deterministic: a given matrix always produces the same assignment. Ties
/// between equally weighted matchings are resolved by the algorithm's fixed
/// scan order, which is all the callers rely on.
pub fn max_weight_perfect_matching(matrix: &WeightMatrix) -> MatchingResult {
    let n = matrix.size();
    // Minimize the negated weights.
    let cost: Vec<Vec<Rational>> = matrix
        .weights
        .iter()
        .map(|row| row.iter().map(|w| -w).collect())
        .collect();

    // 1-based rows/columns with a virtual column 0; matched_row[j] = 0 means
    // column j is free. None stands for an infinite slack.
    let mut row_potential = vec![Rational::zero(); n + 1];
    let mut col_potential = vec![Rational::zero(); n + 1];
    let mut matched_row = vec![0usize; n + 1];
    let mut prev_col = vec![0usize; n + 1];

    for row in 1..=n {
        matched_row[0] = row;
        let mut j0 = 0usize;
        let mut min_slack: Vec<Option<Rational>> = vec![None; n + 1];
        let mut visited = vec![false; n + 1];

        // Grow an alternating tree from `row` until a free column is reached.
        loop {
            visited[j0] = true;
            let i0 = matched_row[j0];
            let mut delta: Option<Rational> = None;
            let mut j1 = 0usize;

            for j in 1..=n {
                if visited[j] {
                    continue;
                }
                let reduced = &cost[i0 - 1][j - 1] - &row_potential[i0] - &col_potential[j];
                if min_slack[j].as_ref().is_none_or(|cur| reduced < *cur) {
                    min_slack[j] = Some(reduced);
                    prev_col[j] = j0;
                }
                if let Some(slack) = &min_slack[j] {
                    if delta.as_ref().is_none_or(|d| slack < d) {
                        delta = Some(slack.clone());
                        j1 = j;
                    }
                }
            }

            let delta = delta.expect("an unvisited column always remains");
            for j in 0..=n {
                if visited[j] {
                    let r = matched_row[j];
                    row_potential[r] += &delta;
                    col_potential[j] -= &delta;
                } else if let Some(slack) = min_slack[j].as_mut() {
                    *slack -= &delta;
                }
            }

            j0 = j1;
            if matched_row[j0] == 0 {
                break;
            }
        }

        // Augment along the recorded path.
        while j0 != 0 {
            let j1 = prev_col[j0];
            matched_row[j0] = matched_row[j1];
            j0 = j1;
        }
    }

    let mut assignment = vec![0usize; n];
    for j in 1..=n {
        assignment[matched_row[j] - 1] = j - 1;
    }
    let weight = assignment
        .iter()
        .enumerate()
        .map(|(i, &j)| matrix.weight(i, j))
        .sum();
    MatchingResult { assignment, weight }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(v: i64) -> Rational {
        Rational::from_integer(v)
    }

    fn matrix(rows: &[&[i64]]) -> WeightMatrix {
        WeightMatrix::new(
            rows.iter()
                .map(|row| row.iter().map(|&v| rat(v)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn resolves_the_cyclic_two_agent_case() {
        // Both matchings weigh 300 vs 400; the optimum swaps the houses.
        let result = max_weight_perfect_matching(&matrix(&[&[200, 200], &[200, 100]]));
        assert_eq!(result.assignment, vec![1, 0]);
        assert_eq!(result.weight, rat(400));
    }

    #[test]
    fn prefers_the_identity_here() {
        // 25 + 100 = 125 beats 75 + 0.
        let result = max_weight_perfect_matching(&matrix(&[&[25, 75], &[0, 100]]));
        assert_eq!(result.assignment, vec![0, 1]);
        assert_eq!(result.weight, rat(125));
    }

    #[test]
    fn diagonal_matrix_matches_identically() {
        let n = 5;
        let rows: Vec<Vec<Rational>> = (0..n)
            .map(|i| (0..n).map(|j| rat((i == j) as i64)).collect())
            .collect();
        let result = max_weight_perfect_matching(&WeightMatrix::new(rows).unwrap());
        assert_eq!(result.assignment, (0..n).collect::<Vec<_>>());
        assert_eq!(result.weight, rat(n as i64));
    }

    #[test]
    fn single_entry() {
        let result = max_weight_perfect_matching(&matrix(&[&[7]]));
        assert_eq!(result.assignment, vec![0]);
        assert_eq!(result.weight, rat(7));
    }

    #[test]
    fn handles_fractional_weights() {
        let w = WeightMatrix::new(vec![
            vec![Rational::new(1, 3), Rational::new(1, 2)],
            vec![Rational::new(1, 4), Rational::new(2, 3)],
        ])
        .unwrap();
        // 1/3 + 2/3 = 1 beats 1/2 + 1/4.
        let result = max_weight_perfect_matching(&w);
        assert_eq!(result.assignment, vec![0, 1]);
        assert_eq!(result.weight, Rational::one());
    }

    #[test]
    fn is_deterministic() {
        let m = matrix(&[&[5, 5, 1], &[5, 5, 1], &[1, 1, 1]]);
        let first = max_weight_perfect_matching(&m);
        for _ in 0..5 {
            assert_eq!(max_weight_perfect_matching(&m), first);
        }
    }

    #[test]
    fn rejects_malformed_matrices() {
        assert!(WeightMatrix::new(vec![]).is_err());
        assert!(WeightMatrix::new(vec![vec![rat(1), rat(2)]]).is_err());
        assert!(WeightMatrix::new(vec![vec![rat(1)], vec![rat(2), rat(3)]]).is_err());
    }
}

//! Prioritized minimization over a finite feasible set.

use num_rational::BigRational;

/// Minimizes objective 0, keeps only its minimizers, then minimizes objective
/// 1 among those, and so on. Returns the surviving argmin set in input order.
///
/// `value(item, i)` is the value of objective `i` for `item`.
pub fn lexicographic_minimize<T, F>(feasible: Vec<T>, objectives: usize, mut value: F) -> Vec<T>
where
    F: FnMut(&T, usize) -> BigRational,
{
    let mut remaining = feasible;
    for i in 0..objectives {
        if remaining.len() <= 1 {
            break;
        }
        let values: Vec<BigRational> = remaining.iter().map(|t| value(t, i)).collect();
        let min = values.iter().min().cloned().expect("non-empty");
        remaining = remaining
            .into_iter()
            .zip(values)
            .filter(|(_, v)| *v == min)
            .map(|(t, _)| t)
            .collect();
    }
    remaining
}

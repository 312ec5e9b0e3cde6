//! Closed-form weight distribution of MRD codes.

use crate::linalg::gaussian_binomial;
use crate::{Error, Result};

fn overflow() -> Error {
    Error::Unsupported("weight formula overflows 128-bit arithmetic".into())
}

/// `A_{d+l}` of an MRD code in F_q^{m×n}, `m ≤ n`, minimum distance `d`:
/// `[m, d+l]_q Σ_{t=0}^{l} (−1)^{t−l} [l+d, l−t]_q q^{C(l−t,2)} (q^{n(t+1)} − 1)`.
pub fn mrd_weight_formula(m: u32, n: u32, q: u32, d: u32, l: u32) -> Result<u128> {
    if m > n || d == 0 || d > m || l > m - d {
        return Err(Error::Condition(format!(
            "need m ≤ n, 1 ≤ d ≤ m and l ≤ m − d; got (m,n,d,l) = ({m},{n},{d},{l})"
        )));
    }
    let qq = q as i128;
    let mut sum: i128 = 0;
    for t in 0..=l {
        let lt = l - t;
        let sign: i128 = if lt.is_multiple_of(2) { 1 } else { -1 };
        let binom = gaussian_binomial(l + d, lt, q as u128) as i128;
        let choose2 = lt * lt.saturating_sub(1) / 2;
        let qpow = qq.checked_pow(choose2).ok_or_else(overflow)?;
        let tail = qq.checked_pow(n * (t + 1)).ok_or_else(overflow)? - 1;
        let term = binom.checked_mul(qpow).and_then(|x| x.checked_mul(tail)).ok_or_else(overflow)?;
        sum = sum.checked_add(sign * term).ok_or_else(overflow)?;
    }
    let lead = gaussian_binomial(m, d + l, q as u128) as i128;
    let total = lead.checked_mul(sum).ok_or_else(overflow)?;
    u128::try_from(total).map_err(|_| Error::Condition("negative weight count".into()))
}

/// Full predicted distribution `(A_0, …, A_{min(m,n)})` of an MRD code.
pub fn mrd_weight_distribution(m: u32, n: u32, q: u32, d: u32) -> Result<Vec<u128>> {
    let (m, n) = (m.min(n), m.max(n));
    let mut counts = vec![0u128; m as usize + 1];
    counts[0] = 1;
    for l in 0..=m - d {
        counts[(d + l) as usize] = mrd_weight_formula(m, n, q, d, l)?;
    }
    Ok(counts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formula_examples() {
        assert_eq!(mrd_weight_formula(3, 3, 2, 2, 0).unwrap(), 49);
        assert_eq!(mrd_weight_formula(3, 3, 2, 2, 1).unwrap(), 14);
        assert_eq!(mrd_weight_formula(1, 3, 2, 1, 0).unwrap(), 7);
        assert!(mrd_weight_formula(3, 2, 2, 1, 0).is_err());
        assert!(mrd_weight_formula(3, 3, 2, 2, 2).is_err());
    }

    #[test]
    fn full_space_is_mrd_with_d_one() {
        // all 2×2 matrices over F_2: 9 of rank one, 6 of rank two
        assert_eq!(mrd_weight_distribution(2, 2, 2, 1).unwrap(), vec![1, 9, 6]);
    }
}

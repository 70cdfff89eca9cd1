//! Small mod-p helpers shared by the series, dynamics, and sampling code.

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut k: u64, m: u64) -> u64 {
    base %= m;
    let mut acc = 1 % m;
    while k > 0 {
        if k & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        k >>= 1;
    }
    acc
}

pub(crate) fn inv_mod_prime(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

/// Determinant of a square matrix over `F_p`, by Gaussian elimination.
pub(crate) fn det_mod_p(matrix: &[Vec<u64>], p: u64) -> u64 {
    let n = matrix.len();
    let mut m: Vec<Vec<u64>> = matrix
        .iter()
        .map(|row| {
            debug_assert_eq!(row.len(), n);
            row.iter().map(|&x| x % p).collect()
        })
        .collect();
    let mut det: u64 = 1;
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| m[r][col] != 0) else {
            return 0;
        };
        if pivot != col {
            m.swap(pivot, col);
            det = p - det; // row swap flips the sign
        }
        let inv = inv_mod_prime(m[col][col], p);
        det = mul_mod(det, m[col][col], p);
        let pivot_row = m[col].clone();
        for row in m.iter_mut().skip(col + 1) {
            if row[col] == 0 {
                continue;
            }
            let factor = mul_mod(row[col], inv, p);
            for (dst, &src) in row.iter_mut().zip(&pivot_row).skip(col) {
                let sub = mul_mod(factor, src, p);
                *dst = (*dst + p - sub) % p;
            }
        }
    }
    det % p
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinants() {
        assert_eq!(det_mod_p(&[vec![1, 2], vec![3, 4]], 5), (5 - 2));
        assert_eq!(det_mod_p(&[vec![1, 2], vec![2, 4]], 5), 0);
        assert_eq!(det_mod_p(&[vec![0, 1], vec![1, 0]], 7), 6);
        let id3: Vec<Vec<u64>> = (0..3)
            .map(|i| (0..3).map(|j| u64::from(i == j)).collect())
            .collect();
        assert_eq!(det_mod_p(&id3, 11), 1);
    }

    #[test]
    fn inverses() {
        for p in [3u64, 5, 7, 11] {
            for a in 1..p {
                assert_eq!(mul_mod(a, inv_mod_prime(a, p), p), 1);
            }
        }
    }
}

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Number of states with no positive turns (vertically symmetric ASMs of
/// size `2n+1`), from the closed product
/// `2^-n prod_{i<n} (2i+1)! (6i+4)! / ((4i+2)! (4i+3)!)`.
pub fn vsasm_count(n: usize) -> BigUint {
    let mut acc = BigRational::one();
    for i in 0..n {
        acc *= BigRational::new(
            factorial(2 * i + 1) * factorial(6 * i + 4),
            factorial(4 * i + 2) * factorial(4 * i + 3),
        );
    }
    acc /= BigRational::from_integer(BigInt::from(2).pow(n as u32));
    assert!(acc.is_integer(), "product formula must be integral");
    acc.to_integer()
        .to_biguint()
        .expect("product formula is positive")
}

/// `C(n, m) * A0_n`, the number of states with exactly `m` positive turns.
pub fn states_with_positive_turns(n: usize, m: usize) -> BigUint {
    binomial(n, m) * vsasm_count(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vsasm_numbers() {
        let known: [u64; 8] = [1, 3, 26, 646, 45885, 9304650, 5382618660, 8878734657276];
        for (i, &k) in known.iter().enumerate() {
            assert_eq!(vsasm_count(i + 1), BigUint::from(k), "n = {}", i + 1);
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigUint::from(10u32));
        assert_eq!(binomial(4, 0), BigUint::one());
        assert_eq!(binomial(3, 4), BigUint::zero());
        assert_eq!(states_with_positive_turns(3, 1), BigUint::from(78u32));
    }
}

use num_bigint::{BigInt, BigUint};

pub fn factorial(n: u64) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

/// `j choose k`, with the convention that it vanishes for `k < 0` or `k > j`.
pub fn binomial(j: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > j {
        return BigInt::from(0);
    }
    BigInt::from(num_integer::binomial(BigUint::from(j), BigUint::from(k as u64)))
}

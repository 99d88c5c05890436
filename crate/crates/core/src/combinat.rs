//! Small exact counting helpers shared by the series and verification code.

use num::{BigInt, One};

/// Binomial coefficient as an exact u128.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Catalan numbers via the convolution recurrence.
pub fn catalan(n: usize) -> u128 {
    let mut c: Vec<u128> = vec![1];
    for m in 1..=n {
        c.push((0..m).map(|i| c[i] * c[m - 1 - i]).sum());
    }
    c[n]
}

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Catalan numbers without a width limit.
pub fn catalan_big(n: usize) -> BigInt {
    let mut c: Vec<BigInt> = vec![BigInt::one()];
    for m in 1..=n {
        c.push((0..m).map(|i| &c[i] * &c[m - 1 - i]).sum());
    }
    c[n].clone()
}

pub fn factorial_big(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

pub fn double_factorial_odd_big(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * (2 * i - 1))
}

/// Odd double factorial `(2n-1)!! = 1 * 3 * ... * (2n-1)`, with the empty
/// product at `n = 0`.
pub fn double_factorial_odd(n: usize) -> u128 {
    (1..=n as u128).map(|i| 2 * i - 1).product()
}

/// All compositions of `n` into exactly `parts` positive parts, ordered.
pub fn compositions_into(n: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if n == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    if n < parts {
        return Vec::new();
    }
    let mut out = Vec::new();
    for first in 1..=(n - parts + 1) {
        for mut rest in compositions_into(n - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// All compositions of `n` into any number of positive parts.
pub fn compositions(n: usize) -> Vec<Vec<usize>> {
    (if n == 0 { 0..=0 } else { 1..=n })
        .flat_map(|k| compositions_into(n, k))
        .collect()
}

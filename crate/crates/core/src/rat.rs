//! Exact rational scalars and the small combinatorial kernels built on them.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub type Rat = num_rational::BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Falling factorial `<c>_p = c (c-1) ... (c-p+1)`, with `<c>_0 = 1`.
pub fn falling(c: &Rat, p: u64) -> Rat {
    let mut acc = Rat::one();
    let mut cur = c.clone();
    for _ in 0..p {
        acc *= &cur;
        cur -= Rat::one();
    }
    acc
}

pub fn factorial(p: u64) -> Rat {
    let mut acc = BigInt::one();
    for k in 2..=p {
        acc *= BigInt::from(k);
    }
    Rat::from_integer(acc)
}

/// Binomial coefficient over the integers; `n` and `k` small.
pub fn binom(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// True iff `c` is a nonnegative integer.
pub fn is_nat(c: &Rat) -> bool {
    c.is_integer() && !c.is_negative()
}

/// `c` as u64 when it is a small nonnegative integer.
pub fn as_nat(c: &Rat) -> Option<u64> {
    if !is_nat(c) {
        return None;
    }
    let (_, digits) = c.to_integer().to_u64_digits();
    match digits.len() {
        0 => Some(0),
        1 => Some(digits[0]),
        _ => None,
    }
}

/// Parse "p", "-p" or "p/q".
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(Rat::new(p, q))
        }
        None => {
            let p: BigInt = s.parse().ok()?;
            Some(Rat::from_integer(p))
        }
    }
}

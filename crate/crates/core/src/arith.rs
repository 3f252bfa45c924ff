//! Exact number-theoretic helpers.

use std::sync::{Mutex, OnceLock};

use rug::{Complete, Integer, Rational};

/// Bernoulli number `B_n` with `B_1 = -1/2`.
pub fn bernoulli(n: usize) -> Rational {
    static CACHE: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(vec![Rational::from(1)]));
    let mut b = cache.lock().expect("bernoulli cache poisoned");
    while b.len() <= n {
        let m = b.len();
        // sum_{k<m} C(m+1, k) B_k + (m+1) B_m = 0
        let mut acc = Rational::new();
        for (k, bk) in b.iter().enumerate() {
            acc += Rational::from(bk * binomial(m as i64 + 1, k as i64));
        }
        b.push(-acc / Integer::from(m + 1));
    }
    b[n].clone()
}

pub fn binomial(n: i64, k: i64) -> Integer {
    if k < 0 || n < 0 || k > n {
        return Integer::new();
    }
    Integer::from(n as u64).binomial(k as u32)
}

/// Generalized binomial `x (x-1) ... (x-k+1) / k!` for rational `x`.
pub fn binomial_rational(x: &Rational, k: i64) -> Rational {
    if k < 0 {
        return Rational::new();
    }
    let mut r = Rational::from(1);
    for i in 0..k {
        r *= Rational::from(x - i);
        r /= i + 1;
    }
    r
}

pub fn factorial(n: u32) -> Integer {
    Integer::factorial(n).complete()
}

/// `n!! = n (n-2) (n-4) ...`, with `0!! = 1!! = 1`.
pub fn double_factorial(n: i64) -> Integer {
    assert!(n >= -1, "double factorial of {n}");
    let mut r = Integer::from(1);
    let mut k = n;
    while k > 1 {
        r *= k;
        k -= 2;
    }
    r
}

/// `sigma_k(n)` for `0 <= n < len` (with `sigma_k(0) = 0`).
pub fn divisor_sums(k: u32, len: usize) -> Vec<Integer> {
    let mut s = vec![Integer::new(); len];
    for d in 1..len {
        let p = Integer::from(Integer::u_pow_u(d as u32, k));
        let mut m = d;
        while m < len {
            s[m] += &p;
            m += d;
        }
    }
    s
}

pub fn divisor_count(n: u64) -> u64 {
    let mut c = 0;
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            c += if d * d == n { 1 } else { 2 };
        }
        d += 1;
    }
    c
}

/// Number of representations of `n` as a sum of four squares, for `0 <= n < len`.
pub fn r4(len: usize) -> Vec<Integer> {
    let s1 = divisor_sums(1, len);
    let mut r = vec![Integer::new(); len];
    if len > 0 {
        r[0] = Integer::from(1);
    }
    for n in 1..len {
        r[n] = Integer::from(&s1[n] * 8);
        if n % 4 == 0 {
            r[n] -= Integer::from(&s1[n / 4] * 32);
        }
    }
    r
}

/// Dimension of the space of level-one modular forms of weight `k`.
pub fn dim_modular(k: i64) -> i64 {
    if k < 0 || k % 2 != 0 || k == 2 {
        return 0;
    }
    if k % 12 == 2 {
        k / 12
    } else {
        k / 12 + 1
    }
}

/// Dimension of the level-one cusp space of weight `k`.
pub fn dim_cusp(k: i64) -> i64 {
    if k < 12 {
        0
    } else {
        dim_modular(k) - 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli(1), Rational::from((-1, 2)));
        assert_eq!(bernoulli(4), Rational::from((-1, 30)));
        assert_eq!(bernoulli(12), Rational::from((-691, 2730)));
        assert_eq!(bernoulli(13), 0);
    }

    #[test]
    fn r4_brute_force() {
        let len = 40;
        let r = r4(len);
        let mut brute = vec![0i64; len];
        for a in -7i64..=7 {
            for b in -7i64..=7 {
                for c in -7i64..=7 {
                    for d in -7i64..=7 {
                        let n = (a * a + b * b + c * c + d * d) as usize;
                        if n < len {
                            brute[n] += 1;
                        }
                    }
                }
            }
        }
        for n in 0..len {
            assert_eq!(r[n], brute[n], "n = {n}");
        }
    }

    #[test]
    fn dims() {
        assert_eq!(dim_cusp(12), 1);
        assert_eq!(dim_cusp(22), 1);
        assert_eq!(dim_cusp(24), 2);
        assert_eq!(dim_modular(14), 1);
        assert_eq!(dim_modular(26), 2);
    }
}

//! Exact Bernoulli numbers and polynomials.

use std::sync::Mutex;
use std::sync::OnceLock;

use num_traits::Zero;

use crate::rational::{int, pow, rat, Rat};

fn binomial(n: usize, k: usize) -> Rat {
    if k > n {
        return int(0);
    }
    let mut acc = Rat::from_integer(1.into());
    for i in 0..k {
        acc *= rat((n - i) as i64, (i + 1) as i64);
    }
    acc
}

/// Bernoulli number B_n (convention B_1 = -1/2).
pub fn bernoulli_number(n: usize) -> Rat {
    static CACHE: OnceLock<Mutex<Vec<Rat>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(vec![int(1)]));
    let mut cache = cache.lock().unwrap();
    while cache.len() <= n {
        let m = cache.len();
        // sum_{j=0}^{m} C(m+1, j) B_j = 0
        let mut s = Rat::zero();
        for (j, b) in cache.iter().enumerate() {
            s += binomial(m + 1, j) * b;
        }
        let bm = -s / binomial(m + 1, m);
        cache.push(bm);
    }
    cache[n].clone()
}

/// Bernoulli polynomial B_n(x) = sum C(n, j) B_j x^{n-j}.
pub fn bernoulli_poly(n: usize, x: &Rat) -> Rat {
    let mut acc = Rat::zero();
    for j in 0..=n {
        acc += binomial(n, j) * bernoulli_number(j) * pow(x, (n - j) as i64);
    }
    acc
}

/// Even Bernoulli polynomial B_{2l}(x).
pub fn bernoulli_even(l: usize, x: &Rat) -> Rat {
    bernoulli_poly(2 * l, x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn b2_is_classical() {
        // B_2(x) = x^2 - x + 1/6
        let x = rat(5, 3);
        assert_eq!(bernoulli_even(1, &x), &x * &x - &x + rat(1, 6));
        assert_eq!(bernoulli_even(1, &int(0)), rat(1, 6));
    }

    #[test]
    fn even_polynomials_have_reflection_symmetry() {
        // B_{2l}(x) = B_{2l}(1 - x)
        for l in 1..=3 {
            for x in [rat(1, 3), rat(-2, 7), int(4)] {
                assert_eq!(bernoulli_even(l, &x), bernoulli_even(l, &(int(1) - &x)));
            }
        }
    }

    #[test]
    fn forward_difference_telescopes() {
        // B_{2l}(x+t) - B_{2l}(x) = 2l * sum_{i=1}^{t} (x+i-1)^{2l-1}
        for l in 1..=3usize {
            for t in 1..=5i64 {
                let x = rat(3, 4);
                let lhs = bernoulli_even(l, &(&x + int(t))) - bernoulli_even(l, &x);
                let mut rhs = Rat::zero();
                for i in 1..=t {
                    rhs += pow(&(&x + int(i - 1)), 2 * l as i64 - 1);
                }
                rhs *= int(2 * l as i64);
                assert_eq!(lhs, rhs, "l={l} t={t}");
            }
        }
    }
}
